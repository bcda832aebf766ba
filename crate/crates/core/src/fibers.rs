//! Fiber enumeration and the survey of syzygy-carrying fibers.
//!
//! The fiber of a multidegree `a` is the set of monomials with the same degree
//! class as `x^a` modulo the lattice; identifying `x^{a - Bu}` with `u` in
//! `Z^2` turns it into the integer points of a planar polytope.  Which fibers
//! carry generators or syzygies is read off the gcd structure of the fiber:
//! a two-point fiber of coprime monomials carries a minimal generator, a
//! three-point hollow triangle (pairwise common variables, no global one)
//! carries a first syzygy, and a four-point primitive quadrangle whose pairs
//! and triples all share variables while the whole fiber does not carries the
//! unique second syzygy.  Fibers with a common variable are exact translates
//! of smaller fibers and carry nothing.

use crate::algebra::{monomial_gcd, AlgebraError, Binomial, ExponentVector};
use crate::lattice::LatticeBasis;
use num::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiberError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("fiber of {multidegree} is unbounded along ({dir1}, {dir2}); the positivity hypothesis fails")]
    UnboundedFiber {
        multidegree: ExponentVector,
        dir1: i64,
        dir2: i64,
    },
    #[error("enumeration exceeded the resource ceiling ({detail})")]
    ResourceLimit { detail: String },
}

/// Ceilings that keep exhaustive enumeration from running away on bad input.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationLimits {
    /// Total monomials a survey or Hilbert computation may visit.
    pub max_monomials: u64,
    /// Area of the integer bounding box scanned for a single fiber.
    pub max_fiber_box: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_monomials: 4_000_000,
            max_fiber_box: 4_000_000,
        }
    }
}

/// Integer points `u` with `a - u1*b1 - u2*b2` nonnegative, sorted, always containing (0,0).
pub fn fiber_points(
    a: &ExponentVector,
    basis: &LatticeBasis,
) -> Result<Vec<(i64, i64)>, FiberError> {
    fiber_points_raw(a, basis.b1(), basis.b2(), &EnumerationLimits::default())
}

/// Same as [`fiber_points`] but without requiring a validated basis, so the
/// unbounded-fiber failure mode of bad lattices is reachable directly.
pub fn fiber_points_raw(
    a: &ExponentVector,
    b1: &ExponentVector,
    b2: &ExponentVector,
    limits: &EnumerationLimits,
) -> Result<Vec<(i64, i64)>, FiberError> {
    let n = a.len();
    for v in [b1, b2] {
        if v.len() != n {
            return Err(AlgebraError::LengthMismatch {
                expected: n,
                found: v.len(),
            }
            .into());
        }
    }
    for (index, &value) in a.entries().iter().enumerate() {
        if value < 0 {
            return Err(AlgebraError::NegativeExponent { index, value }.into());
        }
    }
    // row i contributes the half-plane g_i . u <= a_i with g_i = (b1_i, b2_i)
    let g1 = b1.entries();
    let g2 = b2.entries();
    let c = a.entries();

    // unbounded iff the recession cone {d : g_i . d <= 0 for all i} is nonzero;
    // a nonzero cone contains a rotated constraint normal, so checking those is complete
    for i in 0..n {
        if g1[i] == 0 && g2[i] == 0 {
            continue;
        }
        for d in [(-g2[i], g1[i]), (g2[i], -g1[i])] {
            let recedes =
                (0..n).all(|k| g1[k] as i128 * d.0 as i128 + g2[k] as i128 * d.1 as i128 <= 0);
            if recedes {
                return Err(FiberError::UnboundedFiber {
                    multidegree: a.clone(),
                    dir1: d.0,
                    dir2: d.1,
                });
            }
        }
    }

    // bounded and nonempty (u = 0 works), so every vertex is the intersection of
    // two constraint lines; scan the integer box spanned by the feasible vertices
    let mut found_vertex = false;
    let (mut min1, mut max1, mut min2, mut max2) = (i128::MAX, i128::MIN, i128::MAX, i128::MIN);
    for i in 0..n {
        for j in (i + 1)..n {
            let det = g1[i] as i128 * g2[j] as i128 - g1[j] as i128 * g2[i] as i128;
            if det == 0 {
                continue;
            }
            let mut n1 = c[i] as i128 * g2[j] as i128 - c[j] as i128 * g2[i] as i128;
            let mut n2 = g1[i] as i128 * c[j] as i128 - g1[j] as i128 * c[i] as i128;
            let mut den = det;
            if den < 0 {
                n1 = -n1;
                n2 = -n2;
                den = -den;
            }
            let feasible =
                (0..n).all(|k| g1[k] as i128 * n1 + g2[k] as i128 * n2 <= c[k] as i128 * den);
            if feasible {
                found_vertex = true;
                min1 = min1.min(div_floor(n1, den));
                max1 = max1.max(div_ceil(n1, den));
                min2 = min2.min(div_floor(n2, den));
                max2 = max2.max(div_ceil(n2, den));
            }
        }
    }
    assert!(found_vertex, "bounded nonempty fiber must have a vertex");

    let area = (max1 - min1 + 1) as u128 * (max2 - min2 + 1) as u128;
    if area > limits.max_fiber_box as u128 {
        return Err(FiberError::ResourceLimit {
            detail: format!("fiber bounding box has {area} cells"),
        });
    }
    let mut points = Vec::new();
    for u1 in min1..=max1 {
        for u2 in min2..=max2 {
            let inside = (0..n).all(|k| g1[k] as i128 * u1 + g2[k] as i128 * u2 <= c[k] as i128);
            if inside {
                points.push((u1 as i64, u2 as i64));
            }
        }
    }
    points.sort_unstable();
    Ok(points)
}

fn div_floor(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    let q = a / b;
    if a % b != 0 && a < 0 {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// A fully materialized fiber: points and the corresponding monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub multidegree: ExponentVector,
    pub points: Vec<(i64, i64)>,
    /// Monomials `a - u1*b1 - u2*b2`, parallel to `points`.
    pub monomials: Vec<ExponentVector>,
}

impl Fiber {
    pub fn compute(a: &ExponentVector, basis: &LatticeBasis) -> Result<Fiber, FiberError> {
        let points = fiber_points(a, basis)?;
        let monomials = points
            .iter()
            .map(|&(u1, u2)| &(a - &basis.b1().scaled(u1)) - &basis.b2().scaled(u2))
            .collect();
        Ok(Fiber {
            multidegree: a.clone(),
            points,
            monomials,
        })
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Lexicographically smallest monomial; the same for every member of the class.
    pub fn canonical_representative(&self) -> &ExponentVector {
        self.monomials.iter().min().expect("fiber is nonempty")
    }

    /// Gcd of all fiber monomials; nonzero exactly when the fiber is a translate.
    pub fn content(&self) -> ExponentVector {
        let mut acc = self.monomials[0].clone();
        for m in &self.monomials[1..] {
            acc = monomial_gcd(&acc, m).expect("fiber monomials share a length");
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolytopeClass {
    Point,
    Segment,
    Triangle,
    Quadrangle,
    Other,
}

/// Convex hull of a fiber, classified by vertex count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberPolytope {
    /// Strict hull vertices, counterclockwise from the lexicographically smallest.
    pub vertices: Vec<(i64, i64)>,
    pub class: PolytopeClass,
    /// True when every fiber point is a hull vertex.
    pub primitive: bool,
}

/// Strict convex hull (no collinear interior points), counterclockwise from the
/// lexicographically smallest point.  Monotone chain with exact arithmetic.
pub fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
        (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Computes and classifies the convex hull of the fiber of `a`.
pub fn fiber_polytope(
    a: &ExponentVector,
    basis: &LatticeBasis,
) -> Result<FiberPolytope, FiberError> {
    let points = fiber_points(a, basis)?;
    Ok(classify_points(&points))
}

fn classify_points(points: &[(i64, i64)]) -> FiberPolytope {
    let vertices = convex_hull(points);
    let class = match vertices.len() {
        1 => PolytopeClass::Point,
        2 => PolytopeClass::Segment,
        3 => PolytopeClass::Triangle,
        4 => PolytopeClass::Quadrangle,
        _ => PolytopeClass::Other,
    };
    let primitive = vertices.len() == points.len();
    FiberPolytope {
        vertices,
        class,
        primitive,
    }
}

/// A four-point fiber certified to carry a second syzygy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrangleFiber {
    /// Canonical (lexicographically smallest) member of the class.
    pub representative: ExponentVector,
    /// Hull vertices, counterclockwise from the lexicographically smallest.
    pub vertices: Vec<(i64, i64)>,
    /// Fiber monomials parallel to `vertices`.
    pub monomials: Vec<ExponentVector>,
    pub degree: BigInt,
}

impl QuadrangleFiber {
    /// Binomials of the four edges (adjacent vertex pairs, counterclockwise).
    pub fn edge_binomials(&self) -> Vec<Binomial> {
        (0..4)
            .map(|i| {
                let d = &self.monomials[i] - &self.monomials[(i + 1) % 4];
                crate::algebra::binomial_from_lattice_vector(&d)
                    .expect("adjacent quadrangle vertices are distinct")
            })
            .collect()
    }
}

/// A fiber whose gcd structure does not match the expected generator/syzygy patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberAnomaly {
    pub representative: ExponentVector,
    pub detail: String,
}

/// Everything the degree-wise fiber scan learned up to the cutoff degree.
#[derive(Debug, Clone)]
pub struct FiberSurvey {
    pub max_degree: i64,
    /// Minimal generators (canonical binomials), sorted by degree then terms.
    pub generators: Vec<Binomial>,
    /// Second-syzygy quadrangles, sorted by degree then representative.
    pub quadrangles: Vec<QuadrangleFiber>,
    pub segment_count: usize,
    /// First-syzygy (hollow triangle) fibers seen.
    pub triangle_count: usize,
    /// Primitive content-free quadrangle hulls that fail the syzygy certificate.
    pub non_syzygy_quadrangles: usize,
    /// Distinct fiber classes visited.
    pub fibers_scanned: usize,
    /// Fiber classes per weighted degree `0..=max_degree`: the Hilbert
    /// function of the quotient over the surveyed range.
    pub class_counts: Vec<BigInt>,
    pub anomalies: Vec<FiberAnomaly>,
    pub warnings: Vec<String>,
}

/// All monomial exponent vectors with `w . a = t`, in lexicographic order.
pub fn monomials_of_weighted_degree(w: &[i64], t: i64) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut current = vec![0i64; w.len()];
    fill_monomials(w, t, 0, &mut current, &mut out);
    out
}

fn fill_monomials(
    w: &[i64],
    rem: i64,
    pos: usize,
    current: &mut Vec<i64>,
    out: &mut Vec<ExponentVector>,
) {
    if pos == w.len() {
        if rem == 0 {
            out.push(ExponentVector::signed(current.clone()));
        }
        return;
    }
    if pos == w.len() - 1 {
        if rem >= 0 && rem % w[pos] == 0 {
            current[pos] = rem / w[pos];
            out.push(ExponentVector::signed(current.clone()));
            current[pos] = 0;
        }
        return;
    }
    let mut e = 0;
    while e * w[pos] <= rem {
        current[pos] = e;
        fill_monomials(w, rem - e * w[pos], pos + 1, current, out);
        e += 1;
    }
    current[pos] = 0;
}

/// Scans every fiber of weighted degree at most `max_degree` and classifies the
/// generator- and syzygy-carrying ones.
pub fn enumerate_syzygy_fibers(
    basis: &LatticeBasis,
    max_degree: i64,
    limits: &EnumerationLimits,
) -> Result<FiberSurvey, FiberError> {
    let mut survey = FiberSurvey {
        max_degree,
        generators: Vec::new(),
        quadrangles: Vec::new(),
        segment_count: 0,
        triangle_count: 0,
        non_syzygy_quadrangles: 0,
        fibers_scanned: 0,
        class_counts: vec![num::BigInt::from(0); usize::try_from(max_degree + 1).unwrap_or(0)],
        anomalies: Vec::new(),
        warnings: Vec::new(),
    };
    let mut visited: u64 = 0;
    for t in 0..=max_degree {
        for a in monomials_of_weighted_degree(basis.weights(), t) {
            visited += 1;
            if visited > limits.max_monomials {
                return Err(FiberError::ResourceLimit {
                    detail: format!(
                        "more than {} monomials at degree <= {max_degree}",
                        limits.max_monomials
                    ),
                });
            }
            let fiber = Fiber::compute(&a, basis)?;
            if fiber.canonical_representative() != &a {
                continue; // this class is handled at its canonical representative
            }
            survey.fibers_scanned += 1;
            survey.class_counts[t as usize] += 1;
            classify_fiber(&fiber, t, &mut survey);
        }
    }
    survey.warnings.push(format!(
        "fiber survey complete through weighted degree {max_degree}; higher-degree fibers are not certified"
    ));
    survey
        .generators
        .sort_by_key(|b| (b.plus().entry_sum(), b.clone()));
    survey
        .quadrangles
        .sort_by(|x, y| (&x.degree, &x.representative).cmp(&(&y.degree, &y.representative)));
    Ok(survey)
}

fn classify_fiber(fiber: &Fiber, degree: i64, survey: &mut FiberSurvey) {
    let m = fiber.size();
    if m == 1 {
        return;
    }
    if !fiber.content().is_zero() {
        return; // translate of a smaller fiber: carries no generators or syzygies
    }
    let share = |i: usize, j: usize| {
        !monomial_gcd(&fiber.monomials[i], &fiber.monomials[j])
            .expect("fiber monomials share a length")
            .is_zero()
    };
    let components = sharing_components(m, &share);
    let shape = classify_points(&fiber.points);

    let mut generators_emitted = 0;
    match shape.class {
        PolytopeClass::Segment if shape.primitive => {
            // two coprime monomials in one class: a minimal generator
            let b = Binomial::new(fiber.monomials[0].clone(), fiber.monomials[1].clone())
                .expect("fiber monomials are nonnegative");
            survey.generators.push(b);
            survey.segment_count += 1;
            generators_emitted = 1;
        }
        PolytopeClass::Triangle if shape.primitive => {
            let hollow = share(0, 1) && share(0, 2) && share(1, 2);
            if hollow {
                survey.triangle_count += 1;
            }
        }
        PolytopeClass::Quadrangle if shape.primitive => {
            let all_pairs = (0..4).all(|i| ((i + 1)..4).all(|j| share(i, j)));
            let all_triples = all_pairs
                && (0..4).all(|skip| {
                    let kept: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
                    let g = monomial_gcd(&fiber.monomials[kept[0]], &fiber.monomials[kept[1]])
                        .and_then(|g| monomial_gcd(&g, &fiber.monomials[kept[2]]))
                        .expect("fiber monomials share a length");
                    !g.is_zero()
                });
            if all_triples {
                let vertices = shape.vertices.clone();
                let monomials = vertices
                    .iter()
                    .map(|v| {
                        let idx = fiber
                            .points
                            .iter()
                            .position(|p| p == v)
                            .expect("vertex is a fiber point");
                        fiber.monomials[idx].clone()
                    })
                    .collect();
                survey.quadrangles.push(QuadrangleFiber {
                    representative: fiber.canonical_representative().clone(),
                    vertices,
                    monomials,
                    degree: BigInt::from(degree),
                });
            } else {
                survey.non_syzygy_quadrangles += 1;
                if all_pairs {
                    // all six edges but a missing face leaves an unmodeled 1-cycle
                    survey.anomalies.push(FiberAnomaly {
                        representative: fiber.canonical_representative().clone(),
                        detail: "quadrangle fiber with all pairs sharing but a coprime triple"
                            .into(),
                    });
                }
            }
        }
        _ => {}
    }

    let expected = components.saturating_sub(1);
    if expected != generators_emitted {
        survey.anomalies.push(FiberAnomaly {
            representative: fiber.canonical_representative().clone(),
            detail: format!(
                "fiber carries {expected} minimal generators but the segment rule emitted {generators_emitted}"
            ),
        });
    }
}

/// Connected components of the graph joining monomials that share a variable.
#[allow(clippy::needless_range_loop)]
fn sharing_components(m: usize, share: &dyn Fn(usize, usize) -> bool) -> usize {
    let mut seen = vec![false; m];
    let mut components = 0;
    for start in 0..m {
        if seen[start] {
            continue;
        }
        components += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            for j in 0..m {
                if !seen[j] && share(i, j) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    components
}

/// Default survey cutoff: generous for small inputs, capped to stay responsive.
pub fn default_survey_degree(basis: &LatticeBasis) -> i64 {
    let maxabs = basis
        .b1()
        .entries()
        .iter()
        .chain(basis.b2().entries())
        .map(|e| e.abs())
        .max()
        .unwrap_or(1)
        .max(1);
    (4 * maxabs * basis.n() as i64).clamp(8, 24)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::binomial_from_lattice_vector;

    fn sv(entries: &[i64]) -> ExponentVector {
        ExponentVector::signed(entries.to_vec())
    }

    fn square_example() -> LatticeBasis {
        LatticeBasis::new(sv(&[1, -1, -1, 1]), sv(&[1, -1, 1, -1])).unwrap()
    }

    #[test]
    fn fiber_points_examples() {
        let basis = square_example();
        assert_eq!(
            fiber_points(&sv(&[1, 0, 0, 1]), &basis).unwrap(),
            vec![(0, 0), (1, 0)]
        );
        assert_eq!(
            fiber_points(&sv(&[1, 1, 0, 0]), &basis).unwrap(),
            vec![(0, 0)]
        );
        assert_eq!(
            fiber_points(&ExponentVector::zero(4), &basis).unwrap(),
            vec![(0, 0)]
        );
    }

    #[test]
    fn fiber_points_match_brute_force_box_scan() {
        let basis = square_example();
        for t in 0..=4 {
            for a in monomials_of_weighted_degree(basis.weights(), t) {
                let fast = fiber_points(&a, &basis).unwrap();
                let mut slow = Vec::new();
                for u1 in -10..=10i64 {
                    for u2 in -10..=10i64 {
                        let m = &(&a - &basis.b1().scaled(u1)) - &basis.b2().scaled(u2);
                        if m.is_nonnegative() {
                            slow.push((u1, u2));
                        }
                    }
                }
                assert_eq!(fast, slow, "fiber of {a}");
            }
        }
    }

    #[test]
    fn unbounded_fiber_is_detected() {
        // contains the nonnegative vector (1,1,0,0), so fibers grow without bound
        let bad = LatticeBasis::new_unchecked(sv(&[1, 1, 0, 0]), sv(&[0, 0, 1, -1]), vec![1; 4]);
        let err = fiber_points(&sv(&[1, 1, 1, 1]), &bad).unwrap_err();
        assert!(matches!(err, FiberError::UnboundedFiber { .. }));
    }

    #[test]
    fn hull_of_square_is_ccw_from_lex_min() {
        let hull = convex_hull(&[(0, 0), (1, 1), (1, 0), (0, 1)]);
        assert_eq!(hull, vec![(0, 0), (1, 0), (1, 1), (0, 1)]);
    }

    #[test]
    fn hull_drops_collinear_and_interior_points() {
        assert_eq!(convex_hull(&[(0, 0), (1, 1), (2, 2)]), vec![(0, 0), (2, 2)]);
        let hull = convex_hull(&[(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)]);
        assert_eq!(hull, vec![(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert_eq!(convex_hull(&[(3, 5)]), vec![(3, 5)]);
    }

    #[test]
    fn quadrangle_fiber_polytope() {
        let basis = square_example();
        let poly = fiber_polytope(&sv(&[2, 0, 1, 1]), &basis).unwrap();
        assert_eq!(poly.class, PolytopeClass::Quadrangle);
        assert!(poly.primitive);
        assert_eq!(poly.vertices, vec![(0, 0), (1, 0), (1, 1), (0, 1)]);
    }

    #[test]
    fn triangle_fiber_polytope() {
        let basis = square_example();
        let poly = fiber_polytope(&sv(&[2, 0, 1, 0]), &basis).unwrap();
        assert_eq!(poly.class, PolytopeClass::Triangle);
        assert!(poly.primitive);
    }

    #[test]
    fn content_detects_translated_fibers() {
        let basis = square_example();
        let fiber = Fiber::compute(&sv(&[3, 0, 0, 0]), &basis).unwrap();
        assert_eq!(fiber.size(), 2);
        assert_eq!(fiber.content(), sv(&[1, 0, 0, 0]));
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_weighted_degree(&[1, 1, 1, 1], 2).len(), 10);
        let ms = monomials_of_weighted_degree(&[1, 2], 4);
        assert_eq!(ms, vec![sv(&[0, 2]), sv(&[2, 1]), sv(&[4, 0])]);
    }

    #[test]
    fn survey_of_square_example() {
        let basis = square_example();
        let survey = enumerate_syzygy_fibers(&basis, 4, &EnumerationLimits::default()).unwrap();

        let expected: Vec<Binomial> = [
            sv(&[1, -1, -1, 1]),
            sv(&[1, -1, 1, -1]),
            sv(&[2, -2, 0, 0]),
            sv(&[0, 0, 2, -2]),
        ]
        .iter()
        .map(|v| binomial_from_lattice_vector(v).unwrap())
        .collect();
        let mut expected_sorted = expected.clone();
        expected_sorted.sort_by_key(|b| (b.plus().entry_sum(), b.clone()));
        assert_eq!(survey.generators, expected_sorted);
        assert_eq!(survey.segment_count, 4);
        assert_eq!(survey.triangle_count, 4);
        assert_eq!(survey.quadrangles.len(), 1);
        assert!(survey.anomalies.is_empty());
        assert_eq!(
            survey.class_counts,
            [1, 4, 6, 8, 10].map(num::BigInt::from).to_vec()
        );

        let quad = &survey.quadrangles[0];
        assert_eq!(quad.representative, sv(&[0, 2, 1, 1]));
        assert_eq!(quad.degree, BigInt::from(4));
        for edge in quad.edge_binomials() {
            assert!(
                survey.generators.contains(&edge),
                "edge {edge} missing from generators"
            );
        }
    }

    #[test]
    fn parallelogram_with_coprime_diagonal_is_not_a_syzygy_quadrangle() {
        // the fiber {a^3*c, a*b^2*c, a^2*b*d, b^3*d} is a primitive parallelogram
        // but its diagonal pair is coprime, so it carries no second syzygy
        let basis = square_example();
        let fiber = Fiber::compute(&sv(&[3, 0, 1, 0]), &basis).unwrap();
        assert_eq!(fiber.size(), 4);
        assert!(fiber.content().is_zero());
        let shape = classify_points(&fiber.points);
        assert_eq!(shape.class, PolytopeClass::Quadrangle);
        assert!(shape.primitive);

        let survey = enumerate_syzygy_fibers(&basis, 4, &EnumerationLimits::default()).unwrap();
        assert!(survey.non_syzygy_quadrangles >= 4);
        let rep = sv(&[0, 3, 0, 1]);
        assert!(survey.quadrangles.iter().all(|q| q.representative != rep));
    }

    #[test]
    fn truncated_survey_is_empty_below_generator_degrees() {
        let basis = square_example();
        let survey = enumerate_syzygy_fibers(&basis, 1, &EnumerationLimits::default()).unwrap();
        assert!(survey.generators.is_empty());
        assert!(survey.quadrangles.is_empty());
        assert!(!survey.warnings.is_empty());
    }

    #[test]
    fn canonical_representative_agrees_with_membership() {
        let basis = square_example();
        let mut all = Vec::new();
        for t in 0..=3 {
            all.extend(monomials_of_weighted_degree(basis.weights(), t));
        }
        for a in &all {
            for b in &all {
                let same_rep = Fiber::compute(a, &basis)
                    .unwrap()
                    .canonical_representative()
                    == Fiber::compute(b, &basis)
                        .unwrap()
                        .canonical_representative();
                let related = basis.membership(&(a - b)).is_some();
                assert_eq!(same_rep, related, "classes of {a} and {b}");
            }
        }
    }

    #[test]
    fn resource_limit_guards_survey() {
        let basis = square_example();
        let limits = EnumerationLimits {
            max_monomials: 10,
            max_fiber_box: 4_000_000,
        };
        let err = enumerate_syzygy_fibers(&basis, 4, &limits).unwrap_err();
        assert!(matches!(err, FiberError::ResourceLimit { .. }));
    }

    #[test]
    fn default_degree_is_clamped() {
        let basis = square_example();
        assert_eq!(default_survey_degree(&basis), 16);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn hull_vertices_are_input_points_in_convex_position(
                pts in proptest::collection::vec((-6i64..=6, -6i64..=6), 1..20)
            ) {
                let hull = convex_hull(&pts);
                for v in &hull {
                    prop_assert!(pts.contains(v));
                }
                // every input point lies inside or on the hull: check via signed areas
                if hull.len() >= 3 {
                    for &p in &pts {
                        let inside = (0..hull.len()).all(|i| {
                            let a = hull[i];
                            let b = hull[(i + 1) % hull.len()];
                            (b.0 - a.0) as i128 * (p.1 - a.1) as i128
                                - (b.1 - a.1) as i128 * (p.0 - a.0) as i128
                                >= 0
                        });
                        prop_assert!(inside, "point {:?} outside hull {:?}", p, hull);
                    }
                }
            }

            #[test]
            fn fiber_points_always_include_origin(a in proptest::collection::vec(0i64..=3, 4)) {
                let basis = square_example();
                let a = ExponentVector::monomial(a).unwrap();
                let pts = fiber_points(&a, &basis).unwrap();
                prop_assert!(pts.contains(&(0, 0)));
                // all listed monomials really are nonnegative
                for &(u1, u2) in &pts {
                    let m = &(&a - &basis.b1().scaled(u1)) - &basis.b2().scaled(u2);
                    prop_assert!(m.is_nonnegative());
                }
            }
        }
    }
}
