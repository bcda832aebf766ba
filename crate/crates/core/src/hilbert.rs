//! Degrees by independent routes: brute-force Hilbert counting, the numerator
//! read off a resolution, and a closed formula in the split degrees.

use crate::algebra::{weighted_degree, ExponentVector};
use crate::fibers::{monomials_of_weighted_degree, EnumerationLimits, Fiber, FiberError};
use crate::lattice::LatticeBasis;
use crate::quadrangle::{QuadrangleSplit, ResolutionData};
use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// How many trailing equal values count as a stabilized difference sequence.
pub const STABILIZATION_WINDOW: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("invalid degree profile: {reason}")]
    InvalidProfile { reason: String },
    #[error("numerator does not describe a codimension-2 quotient: {detail}")]
    NotCodimTwo { detail: String },
    #[error("inconsistent numerator: {detail}")]
    InvalidNumerator { detail: String },
    #[error("Hilbert data has not stabilized: {detail}")]
    NotStabilized { detail: String },
    #[error("invalid shift sequence: {reason}")]
    InvalidShifts { reason: String },
    #[error(transparent)]
    Fiber(#[from] FiberError),
}

/// The eight weighted degrees of a quadrangle split, with the homogeneity
/// relations `u- = u+ + t + p - s - r` and `v- = v+ + s + p - t - r` enforced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    u_plus: BigInt,
    u_minus: BigInt,
    v_plus: BigInt,
    v_minus: BigInt,
    p: BigInt,
    r: BigInt,
    s: BigInt,
    t: BigInt,
}

impl DegreeProfile {
    // one argument per block degree; bundling them would just rename the problem
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        u_plus: BigInt,
        u_minus: BigInt,
        v_plus: BigInt,
        v_minus: BigInt,
        p: BigInt,
        r: BigInt,
        s: BigInt,
        t: BigInt,
    ) -> Result<Self, HilbertError> {
        let profile = DegreeProfile {
            u_plus,
            u_minus,
            v_plus,
            v_minus,
            p,
            r,
            s,
            t,
        };
        for (name, value) in profile.named_values() {
            if value.is_negative() {
                return Err(HilbertError::InvalidProfile {
                    reason: format!("{name} = {value} is negative"),
                });
            }
        }
        let expect_u = &profile.u_plus + &profile.t + &profile.p - &profile.s - &profile.r;
        if profile.u_minus != expect_u {
            return Err(HilbertError::InvalidProfile {
                reason: format!(
                    "u- = {} violates homogeneity (expected {expect_u})",
                    profile.u_minus
                ),
            });
        }
        let expect_v = &profile.v_plus + &profile.s + &profile.p - &profile.t - &profile.r;
        if profile.v_minus != expect_v {
            return Err(HilbertError::InvalidProfile {
                reason: format!(
                    "v- = {} violates homogeneity (expected {expect_v})",
                    profile.v_minus
                ),
            });
        }
        for (name, value) in [
            ("alpha", profile.a()),
            ("beta", profile.b()),
            ("gamma", profile.c()),
            ("delta", profile.d()),
        ] {
            if value < BigInt::from(1) {
                return Err(HilbertError::InvalidProfile {
                    reason: format!("deg({name}) = {value} < 1"),
                });
            }
        }
        Ok(profile)
    }

    /// Builds a profile from the six free parameters, deriving `u-` and `v-`.
    pub fn from_free(
        u_plus: BigInt,
        v_plus: BigInt,
        p: BigInt,
        r: BigInt,
        s: BigInt,
        t: BigInt,
    ) -> Result<Self, HilbertError> {
        let u_minus = &u_plus + &t + &p - &s - &r;
        let v_minus = &v_plus + &s + &p - &t - &r;
        Self::new(u_plus, u_minus, v_plus, v_minus, p, r, s, t)
    }

    pub fn from_free_i64(values: [i64; 6]) -> Result<Self, HilbertError> {
        let [u_plus, v_plus, p, r, s, t] = values.map(BigInt::from);
        Self::from_free(u_plus, v_plus, p, r, s, t)
    }

    /// Weighted degrees of the eight vectors of a split.
    pub fn from_split(split: &QuadrangleSplit, w: &[i64]) -> Result<Self, HilbertError> {
        let deg = |v: &ExponentVector| {
            weighted_degree(v, w).map_err(|e| HilbertError::InvalidProfile {
                reason: e.to_string(),
            })
        };
        Self::new(
            deg(&split.u_plus)?,
            deg(&split.u_minus)?,
            deg(&split.v_plus)?,
            deg(&split.v_minus)?,
            deg(&split.p)?,
            deg(&split.r)?,
            deg(&split.s)?,
            deg(&split.t)?,
        )
    }

    fn named_values(&self) -> [(&'static str, &BigInt); 8] {
        [
            ("u+", &self.u_plus),
            ("u-", &self.u_minus),
            ("v+", &self.v_plus),
            ("v-", &self.v_minus),
            ("p", &self.p),
            ("r", &self.r),
            ("s", &self.s),
            ("t", &self.t),
        ]
    }

    /// The eight values in the order `u+, u-, v+, v-, p, r, s, t`.
    pub fn values(&self) -> [BigInt; 8] {
        [
            self.u_plus.clone(),
            self.u_minus.clone(),
            self.v_plus.clone(),
            self.v_minus.clone(),
            self.p.clone(),
            self.r.clone(),
            self.s.clone(),
            self.t.clone(),
        ]
    }

    pub fn a(&self) -> BigInt {
        &self.u_plus + &self.t + &self.p
    }

    pub fn b(&self) -> BigInt {
        &self.v_plus + &self.s + &self.p
    }

    pub fn c(&self) -> BigInt {
        &self.u_plus + &self.v_plus + &self.p + &self.p
    }

    pub fn d(&self) -> BigInt {
        &self.u_plus + &self.v_minus + &self.t + &self.t
    }

    pub fn step1_shifts(&self) -> [BigInt; 4] {
        [self.a(), self.b(), self.c(), self.d()]
    }

    /// Step-2 shifts in the column order `C+t, C+s, D+p, D+r`.
    pub fn step2_shifts(&self) -> [BigInt; 4] {
        [
            self.c() + &self.t,
            self.c() + &self.s,
            self.d() + &self.p,
            self.d() + &self.r,
        ]
    }

    pub fn step3_shift(&self) -> BigInt {
        self.c() + &self.s + &self.t
    }
}

/// A sparse polynomial `sum c_e y^e` with integer shifts as exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertNumerator {
    coeffs: BTreeMap<BigInt, BigInt>,
}

impl HilbertNumerator {
    fn add(&mut self, exp: BigInt, c: i64) {
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    fn from_shifts(step1: &[BigInt], step2: &[BigInt], step3: &[BigInt]) -> Self {
        let mut out = HilbertNumerator {
            coeffs: BTreeMap::new(),
        };
        out.add(BigInt::zero(), 1);
        for d in step1 {
            out.add(d.clone(), -1);
        }
        for d in step2 {
            out.add(d.clone(), 1);
        }
        for d in step3 {
            out.add(d.clone(), -1);
        }
        out
    }

    /// `1 - sum y^{step1} + sum y^{step2} - y^{step3}` for one resolution.
    pub fn from_resolution(res: &ResolutionData) -> Self {
        Self::from_shifts(
            &res.step1_shifts,
            &res.step2_shifts,
            std::slice::from_ref(&res.step3_shift),
        )
    }

    pub fn from_profile(profile: &DegreeProfile) -> Self {
        Self::from_shifts(
            &profile.step1_shifts(),
            &profile.step2_shifts(),
            std::slice::from_ref(&profile.step3_shift()),
        )
    }

    /// Sorted `(exponent, coefficient)` pairs with nonzero coefficients.
    pub fn coefficients(&self) -> Vec<(BigInt, BigInt)> {
        self.coeffs
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect()
    }

    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn derivative_at_one(&self) -> BigInt {
        self.coeffs.iter().map(|(e, c)| e * c).sum()
    }

    pub fn second_derivative_at_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|(e, c)| e * (e - BigInt::from(1)) * c)
            .sum()
    }

    /// Coefficients of `self / (1-y)^denominator_vars` for `y^0..y^t_max`.
    pub fn series_prefix(
        &self,
        denominator_vars: usize,
        t_max: i64,
    ) -> Result<Vec<BigInt>, HilbertError> {
        let len = usize::try_from(t_max + 1).map_err(|_| HilbertError::InvalidShifts {
            reason: format!("negative series length from t_max = {t_max}"),
        })?;
        let mut dense = vec![BigInt::zero(); len];
        for (e, c) in &self.coeffs {
            if e.is_negative() {
                return Err(HilbertError::InvalidNumerator {
                    detail: format!("negative exponent {e}"),
                });
            }
            if let Some(idx) = e.to_usize() {
                if idx < len {
                    dense[idx] += c;
                }
            }
        }
        for _ in 0..denominator_vars {
            for i in 1..len {
                let prev = dense[i - 1].clone();
                dense[i] += prev;
            }
        }
        Ok(dense)
    }
}

/// Extracts the degree as half the second derivative at 1, checking the
/// codimension-2 profile first: the numerator must vanish to order 2 at 1.
pub fn degree_from_numerator(f: &HilbertNumerator) -> Result<BigInt, HilbertError> {
    let v = f.value_at_one();
    if !v.is_zero() {
        return Err(HilbertError::NotCodimTwo {
            detail: format!("f(1) = {v}"),
        });
    }
    let d1 = f.derivative_at_one();
    if !d1.is_zero() {
        return Err(HilbertError::NotCodimTwo {
            detail: format!("f'(1) = {d1}"),
        });
    }
    let d2 = f.second_derivative_at_one();
    if d2.is_negative() {
        return Err(HilbertError::InvalidNumerator {
            detail: format!("f''(1) = {d2} < 0"),
        });
    }
    if (&d2 % BigInt::from(2)) != BigInt::zero() {
        return Err(HilbertError::InvalidNumerator {
            detail: format!("f''(1) = {d2} is odd"),
        });
    }
    Ok(d2 / BigInt::from(2))
}

/// Closed-form degree of the quadrangle ideal:
/// `u+v+ + u+p + v+p + p^2 - pr + u+s + ps + v+t + pt`.
pub fn degree_closed_form(profile: &DegreeProfile) -> BigInt {
    let q = profile;
    &q.u_plus * &q.v_plus + &q.u_plus * &q.p + &q.v_plus * &q.p + &q.p * &q.p - &q.p * &q.r
        + &q.u_plus * &q.s
        + &q.p * &q.s
        + &q.v_plus * &q.t
        + &q.p * &q.t
}

/// Number of distinct fibers of weighted degree `t`, by exhaustive counting.
pub fn hilbert_function_bruteforce(
    basis: &LatticeBasis,
    t: i64,
    limits: &EnumerationLimits,
) -> Result<BigInt, HilbertError> {
    let monomials = monomials_of_weighted_degree(basis.weights(), t);
    if monomials.len() as u64 > limits.max_monomials {
        return Err(FiberError::ResourceLimit {
            detail: format!("{} monomials at degree {t}", monomials.len()),
        }
        .into());
    }
    let mut count = BigInt::zero();
    for a in &monomials {
        let fiber = Fiber::compute(a, basis)?;
        if fiber.canonical_representative() == a {
            count += 1;
        }
    }
    Ok(count)
}

/// The Hilbert function over `t = 0..=t_max`.
pub fn hilbert_function_range(
    basis: &LatticeBasis,
    t_max: i64,
    limits: &EnumerationLimits,
) -> Result<Vec<BigInt>, HilbertError> {
    (0..=t_max)
        .map(|t| hilbert_function_bruteforce(basis, t, limits))
        .collect()
}

/// Degree from Hilbert values of a dimension-`quotient_dim` graded quotient:
/// difference `quotient_dim - 1` times and require a stable tail.
pub fn degree_by_differences(
    values: &[BigInt],
    quotient_dim: usize,
) -> Result<BigInt, HilbertError> {
    if quotient_dim == 0 {
        return Err(HilbertError::InvalidShifts {
            reason: "quotient dimension must be at least 1 for difference extraction".into(),
        });
    }
    let mut seq = values.to_vec();
    for _ in 0..(quotient_dim - 1) {
        if seq.len() < 2 {
            return Err(HilbertError::NotStabilized {
                detail: "too few Hilbert values to difference; raise the degree cutoff".into(),
            });
        }
        seq = seq.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    if seq.len() < STABILIZATION_WINDOW {
        return Err(HilbertError::NotStabilized {
            detail: format!(
                "need {STABILIZATION_WINDOW} trailing values after differencing, have {}; raise the degree cutoff",
                seq.len()
            ),
        });
    }
    let tail = &seq[seq.len() - STABILIZATION_WINDOW..];
    if tail.iter().any(|v| v != &tail[0]) {
        return Err(HilbertError::NotStabilized {
            detail: format!(
                "difference tail {:?} is not constant; raise the degree cutoff",
                tail.iter().map(|v| v.to_string()).collect::<Vec<_>>()
            ),
        });
    }
    Ok(tail[0].clone())
}

/// Degree of a pure resolution with the given strictly increasing positive
/// shifts: `(product of shifts) / (codimension factorial)`.
pub fn pure_degree_formula(shifts: &[BigInt]) -> Result<BigRational, HilbertError> {
    if shifts.is_empty() {
        return Err(HilbertError::InvalidShifts {
            reason: "no shifts given".into(),
        });
    }
    let mut prev: Option<&BigInt> = None;
    for d in shifts {
        if *d <= BigInt::zero() {
            return Err(HilbertError::InvalidShifts {
                reason: format!("shift {d} is not positive"),
            });
        }
        if let Some(p) = prev {
            if d <= p {
                return Err(HilbertError::InvalidShifts {
                    reason: format!("shifts must be strictly increasing, got {p} then {d}"),
                });
            }
        }
        prev = Some(d);
    }
    let mut num = BigInt::from(1);
    for d in shifts {
        num *= d;
    }
    let mut den = BigInt::from(1);
    for k in 1..=shifts.len() {
        den *= BigInt::from(k as i64);
    }
    Ok(BigRational::new(num, den))
}
