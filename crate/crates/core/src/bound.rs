//! The degree bound `2 deg <= M1 * M2`, where `M1` and `M2` are the largest
//! step-1 and step-2 shifts of the quadrangle resolution.
//!
//! Three layers: [`BoundReport`] checks the bound for a single degree profile,
//! [`case_gap_expression`] evaluates the gap through the eight case-by-case
//! polynomial forms (one per choice of shifts attaining `M1` and `M2`), and
//! [`full_ideal_bound`] runs the whole pipeline on a lattice basis, from fiber
//! survey to a cross-checked report.

use crate::algebra::{Binomial, ExponentVector};
use crate::fibers::{enumerate_syzygy_fibers, EnumerationLimits, FiberError, FiberSurvey};
use crate::hilbert::{
    degree_by_differences, degree_closed_form, degree_from_numerator, DegreeProfile, HilbertError,
    HilbertNumerator,
};
use crate::lattice::LatticeBasis;
use crate::quadrangle::{
    assemble_resolution, build_resolution, split_from_fiber, verify_exactness_products,
    AssembledShifts, QuadrangleError, QuadrangleSplit, ResolutionData,
};
use crate::symbolic::{profile as sym, SymPoly, Var};
use num::{BigInt, Signed};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("no syzygy quadrangle found up to degree {max_degree}; nothing to bound")]
    EmptyDecomposition { max_degree: i64 },
    #[error("case ({m1:?}, {m2:?}) does not apply: {detail}")]
    CaseMismatch {
        m1: M1Choice,
        m2: M2Choice,
        detail: String,
    },
    #[error("independent degree computations disagree: {detail}")]
    MethodDisagreement { detail: String },
    #[error(transparent)]
    Fiber(#[from] FiberError),
    #[error(transparent)]
    Quadrangle(#[from] QuadrangleError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

/// Which step-1 shift attains `M1` (only the gamma and delta shifts can).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum M1Choice {
    Gamma,
    Delta,
}

impl M1Choice {
    pub const ALL: [M1Choice; 2] = [M1Choice::Gamma, M1Choice::Delta];

    pub fn shift_name(self) -> &'static str {
        match self {
            M1Choice::Gamma => "deg(gamma)",
            M1Choice::Delta => "deg(delta)",
        }
    }

    fn value(self, profile: &DegreeProfile) -> BigInt {
        match self {
            M1Choice::Gamma => profile.c(),
            M1Choice::Delta => profile.d(),
        }
    }

    fn polynomial(self) -> SymPoly {
        match self {
            M1Choice::Gamma => sym::c(),
            M1Choice::Delta => sym::d(),
        }
    }
}

/// Which step-2 shift attains `M2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum M2Choice {
    GammaT,
    GammaS,
    DeltaP,
    DeltaR,
}

impl M2Choice {
    pub const ALL: [M2Choice; 4] = [
        M2Choice::GammaT,
        M2Choice::GammaS,
        M2Choice::DeltaP,
        M2Choice::DeltaR,
    ];

    pub fn shift_name(self) -> &'static str {
        match self {
            M2Choice::GammaT => "deg(gamma) + t",
            M2Choice::GammaS => "deg(gamma) + s",
            M2Choice::DeltaP => "deg(delta) + p",
            M2Choice::DeltaR => "deg(delta) + r",
        }
    }

    fn value(self, profile: &DegreeProfile) -> BigInt {
        let shifts = profile.step2_shifts();
        // step2_shifts order is C+t, C+s, D+p, D+r
        match self {
            M2Choice::GammaT => shifts[0].clone(),
            M2Choice::GammaS => shifts[1].clone(),
            M2Choice::DeltaP => shifts[2].clone(),
            M2Choice::DeltaR => shifts[3].clone(),
        }
    }

    fn polynomial(self) -> SymPoly {
        match self {
            M2Choice::GammaT => &sym::c() + &SymPoly::var(Var::T),
            M2Choice::GammaS => &sym::c() + &SymPoly::var(Var::S),
            M2Choice::DeltaP => &sym::d() + &SymPoly::var(Var::P),
            M2Choice::DeltaR => &sym::d() + &SymPoly::var(Var::R),
        }
    }
}

/// One of the eight cases of the gap analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GapCase {
    pub m1: M1Choice,
    pub m2: M2Choice,
}

impl GapCase {
    pub const ALL: [GapCase; 8] = [
        GapCase {
            m1: M1Choice::Gamma,
            m2: M2Choice::GammaT,
        },
        GapCase {
            m1: M1Choice::Gamma,
            m2: M2Choice::GammaS,
        },
        GapCase {
            m1: M1Choice::Gamma,
            m2: M2Choice::DeltaP,
        },
        GapCase {
            m1: M1Choice::Gamma,
            m2: M2Choice::DeltaR,
        },
        GapCase {
            m1: M1Choice::Delta,
            m2: M2Choice::GammaT,
        },
        GapCase {
            m1: M1Choice::Delta,
            m2: M2Choice::GammaS,
        },
        GapCase {
            m1: M1Choice::Delta,
            m2: M2Choice::DeltaP,
        },
        GapCase {
            m1: M1Choice::Delta,
            m2: M2Choice::DeltaR,
        },
    ];

    pub fn label(&self) -> String {
        format!(
            "M1 = {}, M2 = {}",
            self.m1.shift_name(),
            self.m2.shift_name()
        )
    }

    /// Two of the four corner degrees, rewritten through the homogeneity
    /// relations so that `M1 * M2 - 2 deg` lands in six variables.
    fn eliminations(&self) -> [(Var, SymPoly); 2] {
        use M1Choice::*;
        use M2Choice::*;
        match (self.m1, self.m2) {
            (Delta, GammaT) => [
                (Var::UMinus, sym::eliminate_u_minus()),
                (Var::VPlus, sym::eliminate_v_plus()),
            ],
            (Gamma, DeltaR) => [
                (Var::UPlus, sym::eliminate_u_plus()),
                (Var::VPlus, sym::eliminate_v_plus()),
            ],
            (Gamma, DeltaP) => [
                (Var::UMinus, sym::eliminate_u_minus()),
                (Var::VMinus, sym::eliminate_v_minus()),
            ],
            (Delta, GammaS) => [
                (Var::UPlus, sym::eliminate_u_plus()),
                (Var::VMinus, sym::eliminate_v_minus()),
            ],
            (Delta, DeltaP) => [
                (Var::UMinus, sym::eliminate_u_minus()),
                (Var::VPlus, sym::eliminate_v_plus()),
            ],
            (Gamma, GammaS) => [
                (Var::UPlus, sym::eliminate_u_plus()),
                (Var::VPlus, sym::eliminate_v_plus()),
            ],
            (Gamma, GammaT) => [
                (Var::UMinus, sym::eliminate_u_minus()),
                (Var::VMinus, sym::eliminate_v_minus()),
            ],
            (Delta, DeltaR) => [
                (Var::UPlus, sym::eliminate_u_plus()),
                (Var::VMinus, sym::eliminate_v_minus()),
            ],
        }
    }

    /// The gap `M1 * M2 - 2 deg` of this case as a six-variable polynomial.
    pub fn gap_polynomial(&self) -> SymPoly {
        let product = &self.m1.polynomial() * &self.m2.polynomial();
        let mut gap = &product - &(&sym::degree_closed_form() * 2);
        for (var, replacement) in self.eliminations() {
            gap = gap.substitute(var, &replacement);
        }
        gap
    }
}

/// Evaluates the case's gap polynomial at a profile, first checking that the
/// case actually applies: its chosen shifts must attain the maxima.
pub fn case_gap_expression(profile: &DegreeProfile, case: GapCase) -> Result<BigInt, BoundError> {
    let step1 = profile.step1_shifts();
    let m1_max = step1[2].clone().max(step1[3].clone());
    let m2_max = profile
        .step2_shifts()
        .into_iter()
        .max()
        .expect("four step-2 shifts");
    let m1_val = case.m1.value(profile);
    if m1_val != m1_max {
        return Err(BoundError::CaseMismatch {
            m1: case.m1,
            m2: case.m2,
            detail: format!(
                "{} = {m1_val} but the step-1 maximum is {m1_max}",
                case.m1.shift_name()
            ),
        });
    }
    let m2_val = case.m2.value(profile);
    if m2_val != m2_max {
        return Err(BoundError::CaseMismatch {
            m1: case.m1,
            m2: case.m2,
            detail: format!(
                "{} = {m2_val} but the step-2 maximum is {m2_max}",
                case.m2.shift_name()
            ),
        });
    }
    let value = case.gap_polynomial().eval(&profile.values());
    let direct = &m1_max * &m2_max - degree_closed_form(profile) * BigInt::from(2);
    assert_eq!(
        value, direct,
        "case polynomial must reproduce the direct gap"
    );
    Ok(value)
}

/// The bound data of a single degree profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub profile: DegreeProfile,
    pub degree: BigInt,
    pub m1: BigInt,
    pub m2: BigInt,
    pub m1_min: BigInt,
    pub m2_min: BigInt,
    /// `M1 * M2 - 2 deg`.
    pub gap: BigInt,
    pub holds: bool,
    pub m1_attained: Vec<M1Choice>,
    pub m2_attained: Vec<M2Choice>,
}

impl BoundReport {
    pub fn for_profile(profile: DegreeProfile) -> Self {
        let degree = degree_closed_form(&profile);
        let by_numerator = degree_from_numerator(&HilbertNumerator::from_profile(&profile))
            .expect("profile numerators vanish to order exactly two");
        assert_eq!(
            degree, by_numerator,
            "closed form and numerator routes must agree"
        );

        let step1 = profile.step1_shifts();
        let m1 = step1[2].clone().max(step1[3].clone());
        let m1_min = step1[2].clone().min(step1[3].clone());
        let step2 = profile.step2_shifts();
        let m2 = step2.iter().max().expect("four step-2 shifts").clone();
        let m2_min = step2.iter().min().expect("four step-2 shifts").clone();
        let m1_attained = M1Choice::ALL
            .into_iter()
            .filter(|ch| ch.value(&profile) == m1)
            .collect();
        let m2_attained = M2Choice::ALL
            .into_iter()
            .filter(|ch| ch.value(&profile) == m2)
            .collect();
        let gap = &m1 * &m2 - &degree * BigInt::from(2);
        let holds = !gap.is_negative();
        BoundReport {
            profile,
            degree,
            m1,
            m2,
            m1_min,
            m2_min,
            gap,
            holds,
            m1_attained,
            m2_attained,
        }
    }

    /// All cases that apply to this profile (ties give several).
    pub fn applicable_cases(&self) -> Vec<GapCase> {
        let mut out = Vec::new();
        for &m1 in &self.m1_attained {
            for &m2 in &self.m2_attained {
                out.push(GapCase { m1, m2 });
            }
        }
        out
    }
}

/// Bound reports for every valid profile with free parameters in `0..=max_entry`.
pub fn explore_grid(max_entry: i64) -> Vec<BoundReport> {
    let mut out = Vec::new();
    for u in 0..=max_entry {
        for v in 0..=max_entry {
            for p in 0..=max_entry {
                for r in 0..=max_entry {
                    for s in 0..=max_entry {
                        for t in 0..=max_entry {
                            if let Ok(profile) = DegreeProfile::from_free_i64([u, v, p, r, s, t]) {
                                out.push(BoundReport::for_profile(profile));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// The profile with all four corner degrees `u` and all four block degrees `p`.
pub fn tight_family(u: i64, p: i64) -> Result<BoundReport, HilbertError> {
    let profile = DegreeProfile::from_free_i64([u, u, p, p, p, p])?;
    Ok(BoundReport::for_profile(profile))
}

/// Gap of the `tight_family(u, p)` member: `2u^2 + 2up + 2p^2`.
pub fn tight_family_predicted_gap(u: i64, p: i64) -> BigInt {
    BigInt::from(2 * u * u + 2 * u * p + 2 * p * p)
}

/// True when one certified quadrangle's split binomials are exactly the
/// surveyed minimal generators, with the four expected syzygy triangles and no
/// anomalies; the quadrangle resolution then resolves the whole ideal (as far
/// as the surveyed degree range certifies).
pub fn generates_whole_ideal(survey: &FiberSurvey, splits: &[QuadrangleSplit]) -> bool {
    if survey.quadrangles.len() != 1 || splits.len() != 1 {
        return false;
    }
    if survey.triangle_count != 4 || !survey.anomalies.is_empty() {
        return false;
    }
    let surveyed: BTreeSet<Binomial> = survey.generators.iter().cloned().collect();
    let split = &splits[0];
    let from_split: BTreeSet<Binomial> = [&split.alpha, &split.beta, &split.gamma, &split.delta]
        .into_iter()
        .cloned()
        .collect();
    surveyed == from_split
}

/// Degree and bound data of one syzygy quadrangle of an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrangleReport {
    pub representative: ExponentVector,
    /// Weighted degree of the quadrangle's fiber class.
    pub class_degree: BigInt,
    pub profile: DegreeProfile,
    /// Half the second derivative at 1 of the resolution's Hilbert numerator.
    pub resolution_degree: BigInt,
    /// The closed formula in the split degrees.
    pub formula_degree: BigInt,
    pub m1: BigInt,
    pub m2: BigInt,
    pub gap: BigInt,
    pub holds: bool,
    pub minimal: bool,
}

/// End-to-end report for a lattice basis: survey, per-quadrangle resolutions,
/// assembled shifts, and the degree bound.
#[derive(Debug, Clone)]
pub struct FullIdealReport {
    pub survey: FiberSurvey,
    pub quadrangles: Vec<QuadrangleReport>,
    pub shifts: AssembledShifts,
    pub m1: BigInt,
    pub m2: BigInt,
    /// True when the four binomials of the single quadrangle generate the whole
    /// ideal, certified through the surveyed degree range.
    pub j_equals_full: bool,
    /// Degree of the full ideal by fiber counting; absent under a non-standard
    /// grading, where the count sequence need not stabilize.
    pub ideal_degree: Option<BigInt>,
    pub gap: Option<BigInt>,
    pub holds: bool,
    pub warnings: Vec<String>,
}

/// Runs survey, splits, resolutions, exactness checks, degree computations by
/// all available routes, and the bound check for one lattice basis.
pub fn full_ideal_bound(
    basis: &LatticeBasis,
    max_degree: i64,
    limits: &EnumerationLimits,
) -> Result<FullIdealReport, BoundError> {
    let survey = enumerate_syzygy_fibers(basis, max_degree, limits)?;
    if survey.quadrangles.is_empty() {
        return Err(BoundError::EmptyDecomposition { max_degree });
    }
    let mut warnings = survey.warnings.clone();

    let mut resolutions: Vec<ResolutionData> = Vec::new();
    let mut reports: Vec<QuadrangleReport> = Vec::new();
    let mut splits: Vec<QuadrangleSplit> = Vec::new();
    for quad in &survey.quadrangles {
        let split = split_from_fiber(quad)?;
        let res = build_resolution(&split, basis.weights())?;
        verify_exactness_products(&res)?;
        let profile = DegreeProfile::from_split(&split, basis.weights())?;

        let numerator = HilbertNumerator::from_resolution(&res);
        if numerator != HilbertNumerator::from_profile(&profile) {
            return Err(BoundError::MethodDisagreement {
                detail: format!(
                    "resolution and profile numerators differ for class {}",
                    quad.representative
                ),
            });
        }
        let resolution_degree = degree_from_numerator(&numerator)?;
        let formula_degree = degree_closed_form(&profile);
        if resolution_degree != formula_degree {
            return Err(BoundError::MethodDisagreement {
                detail: format!(
                    "resolution degree {resolution_degree} vs closed formula {formula_degree} for class {}",
                    quad.representative
                ),
            });
        }

        let step1 = profile.step1_shifts();
        let m1 = step1[2].clone().max(step1[3].clone());
        let m2 = profile
            .step2_shifts()
            .into_iter()
            .max()
            .expect("four step-2 shifts");
        let gap = &m1 * &m2 - &formula_degree * BigInt::from(2);
        reports.push(QuadrangleReport {
            representative: quad.representative.clone(),
            class_degree: quad.degree.clone(),
            profile,
            resolution_degree,
            formula_degree,
            holds: !gap.is_negative(),
            m1,
            m2,
            gap,
            minimal: res.minimality.is_minimal(),
        });
        resolutions.push(res);
        splits.push(split);
    }

    let shifts = assemble_resolution(&resolutions)?;
    let m1 = shifts.max_step1().clone();
    let m2 = shifts.max_step2().clone();
    let j_equals_full = generates_whole_ideal(&survey, &splits);

    let standard_grading = basis.weights().iter().all(|&w| w == 1);
    let ideal_degree = if standard_grading {
        let quotient_dim = basis.n() - 2;
        Some(degree_by_differences(&survey.class_counts, quotient_dim)?)
    } else {
        warnings.push(
            "non-standard grading: fiber counts need not stabilize, skipping the counting route"
                .to_string(),
        );
        None
    };

    if j_equals_full {
        let numerator = HilbertNumerator::from_resolution(&resolutions[0]);
        if let Some(counted) = &ideal_degree {
            if counted != &reports[0].formula_degree {
                return Err(BoundError::MethodDisagreement {
                    detail: format!(
                        "fiber counting gives degree {counted}, resolution routes give {}",
                        reports[0].formula_degree
                    ),
                });
            }
            let series = numerator.series_prefix(basis.n(), max_degree)?;
            if series != survey.class_counts {
                return Err(BoundError::MethodDisagreement {
                    detail: "numerator series and fiber counts differ over the surveyed range"
                        .to_string(),
                });
            }
        }
    } else {
        warnings.push(format!(
            "the {} quadrangle resolutions bound subideals; per-quadrangle degrees are upper bounds for the ideal degree",
            reports.len()
        ));
    }

    // headline bound against the certified ideal degree when available,
    // otherwise against every per-quadrangle degree
    let gap = ideal_degree
        .as_ref()
        .map(|d| &m1 * &m2 - d * BigInt::from(2));
    let per_quad_ok = reports.iter().all(|r| r.holds);
    let holds = per_quad_ok && gap.as_ref().is_none_or(|g| !g.is_negative());

    Ok(FullIdealReport {
        survey,
        quadrangles: reports,
        shifts,
        m1,
        m2,
        j_equals_full,
        ideal_degree,
        gap,
        holds,
        warnings,
    })
}
