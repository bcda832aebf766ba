//! Splitting a syzygy quadrangle into eight exponent vectors and building the
//! explicit length-3 free resolution they define.
//!
//! For generators `alpha = x^a' - x^a''` and `beta = x^b' - x^b''` spanning a
//! quadrangle, the split takes pairwise gcds across the four terms
//! (`p, s, t, r`) and the residuals (`u+, u-, v+, v-`), so that
//! `a' = u+ + p + t`, `a'' = u- + r + s`, `b' = v+ + p + s`, `b'' = v- + r + t`.
//! Two further binomials `gamma = x^{u+ + v+ + 2p} - x^{u- + v- + 2r}` and
//! `delta = x^{u+ + v- + 2t} - x^{u- + v+ + 2s}` complete a resolution
//! `0 -> R -> R^4 -> R^4 -> R` whose maps are written down verbatim and whose
//! products are verified to cancel term by term.

use crate::algebra::{monomial_gcd, weighted_degree, AlgebraError, Binomial, ExponentVector};
use num::BigInt;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadrangleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("split failed: {detail}")]
    SplitFailure { detail: String },
    #[error("generator pair shares variable {index}; divide it out before splitting")]
    CommonFactor { index: usize },
    #[error("homogeneity violation: {detail}")]
    HomogeneityViolation { detail: String },
    #[error("resolution product {which} has a nonzero entry at row {row}, column {col}")]
    NonzeroProduct {
        which: &'static str,
        row: usize,
        col: usize,
    },
    #[error("no resolutions to assemble")]
    EmptyDecomposition,
}

/// The eight exponent vectors of a split, plus the four binomials they rebuild.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrangleSplit {
    pub u_plus: ExponentVector,
    pub u_minus: ExponentVector,
    pub v_plus: ExponentVector,
    pub v_minus: ExponentVector,
    pub p: ExponentVector,
    pub r: ExponentVector,
    pub s: ExponentVector,
    pub t: ExponentVector,
    /// The four binomials in canonical sign form.
    pub alpha: Binomial,
    pub beta: Binomial,
    pub gamma: Binomial,
    pub delta: Binomial,
}

impl QuadrangleSplit {
    /// `alpha` with the orientation used by the resolution maps.
    pub fn oriented_alpha(&self) -> (ExponentVector, ExponentVector) {
        (
            &(&self.u_plus + &self.p) + &self.t,
            &(&self.u_minus + &self.r) + &self.s,
        )
    }

    pub fn oriented_beta(&self) -> (ExponentVector, ExponentVector) {
        (
            &(&self.v_plus + &self.p) + &self.s,
            &(&self.v_minus + &self.r) + &self.t,
        )
    }

    pub fn oriented_gamma(&self) -> (ExponentVector, ExponentVector) {
        (
            &(&self.u_plus + &self.v_plus) + &self.p.scaled(2),
            &(&self.u_minus + &self.v_minus) + &self.r.scaled(2),
        )
    }

    pub fn oriented_delta(&self) -> (ExponentVector, ExponentVector) {
        (
            &(&self.u_plus + &self.v_minus) + &self.t.scaled(2),
            &(&self.u_minus + &self.v_plus) + &self.s.scaled(2),
        )
    }
}

/// Splits a pair of canonical binomials; see [`split_quadrangle_oriented`].
pub fn split_quadrangle(
    alpha: &Binomial,
    beta: &Binomial,
) -> Result<QuadrangleSplit, QuadrangleError> {
    split_quadrangle_oriented(alpha.plus(), alpha.minus(), beta.plus(), beta.minus())
}

/// The split with explicit term orientations `alpha = x^{a_plus} - x^{a_minus}`,
/// `beta = x^{b_plus} - x^{b_minus}`.
pub fn split_quadrangle_oriented(
    a_plus: &ExponentVector,
    a_minus: &ExponentVector,
    b_plus: &ExponentVector,
    b_minus: &ExponentVector,
) -> Result<QuadrangleSplit, QuadrangleError> {
    let n = a_plus.len();
    for v in [a_minus, b_plus, b_minus] {
        if v.len() != n {
            return Err(AlgebraError::LengthMismatch {
                expected: n,
                found: v.len(),
            }
            .into());
        }
    }
    if a_plus == a_minus {
        return Err(QuadrangleError::SplitFailure {
            detail: "alpha is the zero binomial".into(),
        });
    }
    if b_plus == b_minus {
        return Err(QuadrangleError::SplitFailure {
            detail: "beta is the zero binomial".into(),
        });
    }
    let four_gcd = monomial_gcd(
        &monomial_gcd(a_plus, a_minus)?,
        &monomial_gcd(b_plus, b_minus)?,
    )?;
    if let Some(index) = four_gcd.entries().iter().position(|&e| e > 0) {
        return Err(QuadrangleError::CommonFactor { index });
    }

    let p = monomial_gcd(a_plus, b_plus)?;
    let s = monomial_gcd(a_minus, b_plus)?;
    let t = monomial_gcd(a_plus, b_minus)?;
    let r = monomial_gcd(a_minus, b_minus)?;

    let residual = |term: &ExponentVector, g1: &ExponentVector, g2: &ExponentVector, name: &str| {
        let res = &(term - g1) - g2;
        if res.is_nonnegative() {
            Ok(res)
        } else {
            Err(QuadrangleError::SplitFailure {
                detail: format!("residual {name} = {res} has a negative entry"),
            })
        }
    };
    let u_plus = residual(a_plus, &p, &t, "u+")?;
    let u_minus = residual(a_minus, &r, &s, "u-")?;
    let v_plus = residual(b_plus, &p, &s, "v+")?;
    let v_minus = residual(b_minus, &r, &t, "v-")?;

    let split = QuadrangleSplit {
        alpha: Binomial::new(a_plus.clone(), a_minus.clone())?,
        beta: Binomial::new(b_plus.clone(), b_minus.clone())?,
        gamma: Binomial::new(
            &(&u_plus + &v_plus) + &p.scaled(2),
            &(&u_minus + &v_minus) + &r.scaled(2),
        )?,
        delta: Binomial::new(
            &(&u_plus + &v_minus) + &t.scaled(2),
            &(&u_minus + &v_plus) + &s.scaled(2),
        )?,
        u_plus,
        u_minus,
        v_plus,
        v_minus,
        p,
        r,
        s,
        t,
    };
    if split.gamma.is_zero() {
        return Err(QuadrangleError::SplitFailure {
            detail: "gamma degenerates to zero".into(),
        });
    }
    if split.delta.is_zero() {
        return Err(QuadrangleError::SplitFailure {
            detail: "delta degenerates to zero".into(),
        });
    }
    Ok(split)
}

/// Finds a split for a certified quadrangle fiber by trying the adjacent edge
/// binomial pairs in counterclockwise order, each in both orientations.
pub fn split_from_fiber(
    fiber: &crate::fibers::QuadrangleFiber,
) -> Result<QuadrangleSplit, QuadrangleError> {
    let edges = fiber.edge_binomials();
    let mut last_err = None;
    for i in 0..4 {
        let e1 = &edges[i];
        let e2 = &edges[(i + 1) % 4];
        for flip1 in [false, true] {
            for flip2 in [false, true] {
                let (ap, am) = if flip1 {
                    (e1.minus(), e1.plus())
                } else {
                    (e1.plus(), e1.minus())
                };
                let (bp, bm) = if flip2 {
                    (e2.minus(), e2.plus())
                } else {
                    (e2.plus(), e2.minus())
                };
                match split_quadrangle_oriented(ap, am, bp, bm) {
                    Ok(split) => return Ok(split),
                    Err(e) => last_err = Some(e),
                }
            }
        }
    }
    Err(QuadrangleError::SplitFailure {
        detail: format!(
            "no orientation of the edge binomials of {} admits a split (last error: {})",
            fiber.representative,
            last_err.map(|e| e.to_string()).unwrap_or_default()
        ),
    })
}

/// A matrix entry `sign * x^exponent`; `sign == 0` encodes a zero entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedMonomial {
    pub sign: i8,
    pub exponent: ExponentVector,
}

impl SignedMonomial {
    fn zero(n: usize) -> Self {
        SignedMonomial {
            sign: 0,
            exponent: ExponentVector::zero(n),
        }
    }

    fn plus(exponent: ExponentVector) -> Self {
        SignedMonomial { sign: 1, exponent }
    }

    fn minus(exponent: ExponentVector) -> Self {
        SignedMonomial { sign: -1, exponent }
    }

    pub fn is_unit(&self) -> bool {
        self.sign != 0 && self.exponent.is_zero()
    }
}

/// Positions of unit entries in the resolution maps; any entry here means the
/// complex is not minimal at that spot.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MinimalityReport {
    pub unit_entries: Vec<(&'static str, usize, usize)>,
}

impl MinimalityReport {
    pub fn is_minimal(&self) -> bool {
        self.unit_entries.is_empty()
    }
}

/// The explicit length-3 resolution attached to a split, with graded data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionData {
    pub n: usize,
    /// Oriented binomial entries of the map `R^4 -> R`: alpha, beta, gamma, delta.
    pub d1: [(ExponentVector, ExponentVector); 4],
    pub d2: [[SignedMonomial; 4]; 4],
    pub d3: [SignedMonomial; 4],
    pub step1_shifts: [BigInt; 4],
    pub step2_shifts: [BigInt; 4],
    pub step3_shift: BigInt,
    /// Multidegree representatives for the four step-1 summands.
    pub step1_witnesses: [ExponentVector; 4],
    pub step2_witnesses: [ExponentVector; 4],
    pub step3_witness: ExponentVector,
    pub minimality: MinimalityReport,
}

/// Assembles the resolution matrices and graded shifts for a split under `w`.
///
/// Checks that all four binomials are homogeneous and that the column degree
/// chains are consistent; the second step-2 degree reading uses `s + deg(gamma)`
/// (the `t`-based reading does not close the chain).
pub fn build_resolution(
    split: &QuadrangleSplit,
    w: &[i64],
) -> Result<ResolutionData, QuadrangleError> {
    let n = split.p.len();
    if w.len() != n {
        return Err(AlgebraError::LengthMismatch {
            expected: n,
            found: w.len(),
        }
        .into());
    }
    let deg = |v: &ExponentVector| weighted_degree(v, w).expect("lengths checked");

    let (alpha_p, alpha_m) = split.oriented_alpha();
    let (beta_p, beta_m) = split.oriented_beta();
    let (gamma_p, gamma_m) = split.oriented_gamma();
    let (delta_p, delta_m) = split.oriented_delta();
    for (name, plus, minus) in [
        ("alpha", &alpha_p, &alpha_m),
        ("beta", &beta_p, &beta_m),
        ("gamma", &gamma_p, &gamma_m),
        ("delta", &delta_p, &delta_m),
    ] {
        if deg(plus) != deg(minus) {
            return Err(QuadrangleError::HomogeneityViolation {
                detail: format!("{name} has term degrees {} and {}", deg(plus), deg(minus)),
            });
        }
        if deg(plus) < BigInt::from(1) {
            return Err(QuadrangleError::HomogeneityViolation {
                detail: format!("{name} has degree {} < 1", deg(plus)),
            });
        }
    }

    let a = deg(&alpha_p);
    let b = deg(&beta_p);
    let c = deg(&gamma_p);
    let d = deg(&delta_p);
    let (dp, dr, ds, dt) = (deg(&split.p), deg(&split.r), deg(&split.s), deg(&split.t));

    // each step-2 column must read the same degree along every nonzero entry
    let chains: [(&str, [BigInt; 3]); 4] = [
        (
            "column 1",
            [
                deg(&split.v_plus) + &dp + &a,
                deg(&split.u_minus) + &dr + &b,
                &dt + &c,
            ],
        ),
        (
            "column 2",
            [
                deg(&split.v_minus) + &dr + &a,
                deg(&split.u_plus) + &dp + &b,
                &ds + &c,
            ],
        ),
        (
            "column 3",
            [
                deg(&split.v_minus) + &dt + &a,
                deg(&split.u_minus) + &ds + &b,
                &dp + &d,
            ],
        ),
        (
            "column 4",
            [
                deg(&split.v_plus) + &ds + &a,
                deg(&split.u_plus) + &dt + &b,
                &dr + &d,
            ],
        ),
    ];
    for (name, [x, y, z]) in &chains {
        if x != y || y != z {
            return Err(QuadrangleError::HomogeneityViolation {
                detail: format!("step-2 {name} degree chain breaks: {x}, {y}, {z}"),
            });
        }
    }
    let top1 = &c + &ds + &dt;
    let top2 = &d + &dp + &dr;
    if top1 != top2 {
        return Err(QuadrangleError::HomogeneityViolation {
            detail: format!("step-3 degree readings disagree: {top1} vs {top2}"),
        });
    }

    let sum = |x: &ExponentVector, y: &ExponentVector| x + y;
    let d2: [[SignedMonomial; 4]; 4] = [
        [
            SignedMonomial::plus(sum(&split.v_plus, &split.p)),
            SignedMonomial::plus(sum(&split.v_minus, &split.r)),
            SignedMonomial::minus(sum(&split.v_minus, &split.t)),
            SignedMonomial::minus(sum(&split.v_plus, &split.s)),
        ],
        [
            SignedMonomial::plus(sum(&split.u_minus, &split.r)),
            SignedMonomial::plus(sum(&split.u_plus, &split.p)),
            SignedMonomial::plus(sum(&split.u_minus, &split.s)),
            SignedMonomial::plus(sum(&split.u_plus, &split.t)),
        ],
        [
            SignedMonomial::minus(split.t.clone()),
            SignedMonomial::minus(split.s.clone()),
            SignedMonomial::zero(n),
            SignedMonomial::zero(n),
        ],
        [
            SignedMonomial::zero(n),
            SignedMonomial::zero(n),
            SignedMonomial::plus(split.p.clone()),
            SignedMonomial::plus(split.r.clone()),
        ],
    ];
    let d3 = [
        SignedMonomial::minus(split.s.clone()),
        SignedMonomial::plus(split.t.clone()),
        SignedMonomial::plus(split.r.clone()),
        SignedMonomial::minus(split.p.clone()),
    ];

    let step2_shifts = [&c + &dt, &c + &ds, &d + &dp, &d + &dr];

    let mut minimality = MinimalityReport::default();
    for (i, row) in d2.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            if entry.is_unit() {
                minimality.unit_entries.push(("d2", i, j));
            }
        }
    }
    for (j, entry) in d3.iter().enumerate() {
        if entry.is_unit() {
            minimality.unit_entries.push(("d3", j, 0));
        }
    }

    Ok(ResolutionData {
        n,
        step1_witnesses: [
            alpha_p.clone(),
            beta_p.clone(),
            gamma_p.clone(),
            delta_p.clone(),
        ],
        step2_witnesses: [
            &gamma_p + &split.t,
            &gamma_p + &split.s,
            &delta_p + &split.p,
            &delta_p + &split.r,
        ],
        step3_witness: &(&gamma_p + &split.s) + &split.t,
        d1: [
            (alpha_p, alpha_m),
            (beta_p, beta_m),
            (gamma_p, gamma_m),
            (delta_p, delta_m),
        ],
        d2,
        d3,
        step1_shifts: [a, b, c, d],
        step2_shifts,
        step3_shift: top1,
        minimality,
    })
}

fn add_term(acc: &mut BTreeMap<ExponentVector, i64>, exponent: ExponentVector, coeff: i64) {
    let entry = acc.entry(exponent).or_insert(0);
    *entry += coeff;
    if *entry == 0 {
        acc.retain(|_, v| *v != 0);
    }
}

/// Multiplies the maps out and checks `d1 * d2 = 0` and `d2 * d3 = 0` exactly.
pub fn verify_exactness_products(res: &ResolutionData) -> Result<(), QuadrangleError> {
    for col in 0..4 {
        let mut acc: BTreeMap<ExponentVector, i64> = BTreeMap::new();
        for row in 0..4 {
            let entry = &res.d2[row][col];
            if entry.sign == 0 {
                continue;
            }
            let (plus, minus) = &res.d1[row];
            add_term(&mut acc, plus + &entry.exponent, entry.sign as i64);
            add_term(&mut acc, minus + &entry.exponent, -(entry.sign as i64));
        }
        if !acc.is_empty() {
            return Err(QuadrangleError::NonzeroProduct {
                which: "d1*d2",
                row: 0,
                col,
            });
        }
    }
    for row in 0..4 {
        let mut acc: BTreeMap<ExponentVector, i64> = BTreeMap::new();
        for k in 0..4 {
            let a = &res.d2[row][k];
            let b = &res.d3[k];
            if a.sign == 0 || b.sign == 0 {
                continue;
            }
            add_term(
                &mut acc,
                &a.exponent + &b.exponent,
                (a.sign * b.sign) as i64,
            );
        }
        if !acc.is_empty() {
            return Err(QuadrangleError::NonzeroProduct {
                which: "d2*d3",
                row,
                col: 0,
            });
        }
    }
    Ok(())
}

/// Sorted multisets of shifts per homological step across several resolutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssembledShifts {
    pub step1: Vec<BigInt>,
    pub step2: Vec<BigInt>,
    pub step3: Vec<BigInt>,
}

impl AssembledShifts {
    pub fn max_step1(&self) -> &BigInt {
        self.step1.last().expect("nonempty by construction")
    }

    pub fn max_step2(&self) -> &BigInt {
        self.step2.last().expect("nonempty by construction")
    }

    pub fn max_step3(&self) -> &BigInt {
        self.step3.last().expect("nonempty by construction")
    }

    pub fn min_step1(&self) -> &BigInt {
        self.step1.first().expect("nonempty by construction")
    }

    pub fn min_step2(&self) -> &BigInt {
        self.step2.first().expect("nonempty by construction")
    }
}

/// Unions the shifts of several quadrangle resolutions (with multiplicity).
pub fn assemble_resolution(
    resolutions: &[ResolutionData],
) -> Result<AssembledShifts, QuadrangleError> {
    if resolutions.is_empty() {
        return Err(QuadrangleError::EmptyDecomposition);
    }
    let mut assembled = AssembledShifts {
        step1: Vec::new(),
        step2: Vec::new(),
        step3: Vec::new(),
    };
    for res in resolutions {
        assembled.step1.extend(res.step1_shifts.iter().cloned());
        assembled.step2.extend(res.step2_shifts.iter().cloned());
        assembled.step3.push(res.step3_shift.clone());
    }
    assembled.step1.sort();
    assembled.step2.sort();
    assembled.step3.sort();
    Ok(assembled)
}
