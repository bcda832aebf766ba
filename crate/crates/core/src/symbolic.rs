//! Exact polynomials in the eight degree parameters of a quadrangle split.
//!
//! The parameters are the weighted degrees of the eight exponent vectors
//! `u+, u-, v+, v-, p, r, s, t`.  Homogeneity of the four binomials makes two
//! of them redundant, and the degree and gap identities of the theory are
//! polynomial identities modulo those relations; this module provides the
//! small polynomial ring and substitution machinery to verify them exactly.

use num::BigInt;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const NVARS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    UPlus = 0,
    UMinus = 1,
    VPlus = 2,
    VMinus = 3,
    P = 4,
    R = 5,
    S = 6,
    T = 7,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::UPlus,
        Var::UMinus,
        Var::VPlus,
        Var::VMinus,
        Var::P,
        Var::R,
        Var::S,
        Var::T,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Var::UPlus => "u+",
            Var::UMinus => "u-",
            Var::VPlus => "v+",
            Var::VMinus => "v-",
            Var::P => "p",
            Var::R => "r",
            Var::S => "s",
            Var::T => "t",
        }
    }
}

/// A polynomial with big-integer coefficients in the eight split degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    // monomial exponents -> nonzero coefficient
    terms: BTreeMap<[u32; NVARS], BigInt>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: i64) -> Self {
        Self::constant_big(BigInt::from(c))
    }

    pub fn constant_big(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if c != BigInt::from(0) {
            terms.insert([0; NVARS], c);
        }
        SymPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut exp = [0u32; NVARS];
        exp[v as usize] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, BigInt::from(1));
        SymPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; NVARS], &BigInt)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, exp: [u32; NVARS], coeff: BigInt) {
        if coeff == BigInt::from(0) {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                *existing += coeff;
                if *existing == BigInt::from(0) {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coeff);
            }
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = SymPoly::constant(1);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Replaces `v` by `replacement` everywhere.
    pub fn substitute(&self, v: Var, replacement: &SymPoly) -> Self {
        let idx = v as usize;
        let mut out = SymPoly::zero();
        for (exp, coeff) in &self.terms {
            let k = exp[idx];
            let mut rest = *exp;
            rest[idx] = 0;
            let mut base = SymPoly::zero();
            base.insert_term(rest, coeff.clone());
            let contribution = &base * &replacement.pow(k);
            for (e, c) in contribution.terms {
                out.insert_term(e, c);
            }
        }
        out
    }

    /// Evaluates at big-integer values for all eight variables.
    pub fn eval(&self, values: &[BigInt; NVARS]) -> BigInt {
        let mut total = BigInt::from(0);
        for (exp, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    term *= &values[i];
                }
            }
            total += term;
        }
        total
    }
}

impl Add for &SymPoly {
    type Output = SymPoly;

    fn add(self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (exp, coeff) in &other.terms {
            out.insert_term(*exp, coeff.clone());
        }
        out
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;

    fn sub(self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (exp, coeff) in &other.terms {
            out.insert_term(*exp, -coeff.clone());
        }
        out
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;

    fn mul(self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut exp = [0u32; NVARS];
                for i in 0..NVARS {
                    exp[i] = e1[i] + e2[i];
                }
                out.insert_term(exp, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;

    fn neg(self) -> SymPoly {
        &SymPoly::zero() - self
    }
}

impl Mul<i64> for &SymPoly {
    type Output = SymPoly;

    fn mul(self, k: i64) -> SymPoly {
        self * &SymPoly::constant(k)
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, coeff) in self.terms.iter().rev() {
            let mut mono = String::new();
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(Var::ALL[i].name());
                if e > 1 {
                    mono.push_str(&format!("^{e}"));
                }
            }
            let sign = if coeff < &BigInt::from(0) { "-" } else { "+" };
            let mag = coeff.magnitude().to_string();
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Applies the relations as substitutions to both sides, then compares exactly.
pub fn verify_identity(lhs: &SymPoly, rhs: &SymPoly, relations: &[(Var, SymPoly)]) -> bool {
    let mut l = lhs.clone();
    let mut r = rhs.clone();
    for (v, replacement) in relations {
        l = l.substitute(*v, replacement);
        r = r.substitute(*v, replacement);
    }
    l == r
}

/// The standard degree polynomials of a quadrangle split.
pub mod profile {
    use super::{SymPoly, Var};

    fn v(x: Var) -> SymPoly {
        SymPoly::var(x)
    }

    /// deg(alpha) from the positive term: `u+ + t + p`.
    pub fn a() -> SymPoly {
        &(&v(Var::UPlus) + &v(Var::T)) + &v(Var::P)
    }

    /// deg(alpha) from the negative term: `u- + s + r`.
    pub fn a_minus() -> SymPoly {
        &(&v(Var::UMinus) + &v(Var::S)) + &v(Var::R)
    }

    /// deg(beta) from the positive term: `v+ + s + p`.
    pub fn b() -> SymPoly {
        &(&v(Var::VPlus) + &v(Var::S)) + &v(Var::P)
    }

    /// deg(beta) from the negative term: `v- + t + r`.
    pub fn b_minus() -> SymPoly {
        &(&v(Var::VMinus) + &v(Var::T)) + &v(Var::R)
    }

    /// deg(gamma) from the positive term: `u+ + v+ + 2p`.
    pub fn c() -> SymPoly {
        &(&v(Var::UPlus) + &v(Var::VPlus)) + &(&v(Var::P) * 2)
    }

    /// deg(gamma) from the negative term: `u- + v- + 2r`.
    pub fn c_minus() -> SymPoly {
        &(&v(Var::UMinus) + &v(Var::VMinus)) + &(&v(Var::R) * 2)
    }

    /// deg(delta) from the positive term: `u+ + v- + 2t`.
    pub fn d() -> SymPoly {
        &(&v(Var::UPlus) + &v(Var::VMinus)) + &(&v(Var::T) * 2)
    }

    /// deg(delta) from the negative term: `u- + v+ + 2s`.
    pub fn d_minus() -> SymPoly {
        &(&v(Var::UMinus) + &v(Var::VPlus)) + &(&v(Var::S) * 2)
    }

    /// `u-` solved from deg-of-alpha homogeneity: `u+ + t + p - s - r`.
    pub fn eliminate_u_minus() -> SymPoly {
        &(&a() - &v(Var::S)) - &v(Var::R)
    }

    /// `v-` solved from deg-of-beta homogeneity: `v+ + s + p - t - r`.
    pub fn eliminate_v_minus() -> SymPoly {
        &(&b() - &v(Var::T)) - &v(Var::R)
    }

    /// `u+` solved the other way: `u- + s + r - t - p`.
    pub fn eliminate_u_plus() -> SymPoly {
        &(&a_minus() - &v(Var::T)) - &v(Var::P)
    }

    /// `v+` solved the other way: `v- + t + r - s - p`.
    pub fn eliminate_v_plus() -> SymPoly {
        &(&b_minus() - &v(Var::S)) - &v(Var::P)
    }

    /// The homogeneity relations as substitutions eliminating `u-` and `v-`.
    pub fn standard_relations() -> Vec<(Var, SymPoly)> {
        vec![
            (Var::UMinus, eliminate_u_minus()),
            (Var::VMinus, eliminate_v_minus()),
        ]
    }

    /// Closed-form degree of the quadrangle ideal in the free parameters
    /// `u+, v+, p, r, s, t`.
    pub fn degree_closed_form() -> SymPoly {
        let up = v(Var::UPlus);
        let vp = v(Var::VPlus);
        let p = v(Var::P);
        let r = v(Var::R);
        let s = v(Var::S);
        let t = v(Var::T);
        let mut acc = &up * &vp;
        acc = &acc + &(&up * &p);
        acc = &acc + &(&vp * &p);
        acc = &acc + &(&p * &p);
        acc = &acc - &(&p * &r);
        acc = &acc + &(&up * &s);
        acc = &acc + &(&p * &s);
        acc = &acc + &(&vp * &t);
        acc = &acc + &(&p * &t);
        acc
    }

    /// The nine graded shifts of the length-3 resolution with their signs in
    /// the Hilbert numerator: `(shift polynomial, sign)`.
    pub fn signed_shifts() -> Vec<(SymPoly, i64)> {
        let step2 = [
            &c() + &v(Var::T),
            &c() + &v(Var::S),
            &d() + &v(Var::P),
            &d() + &v(Var::R),
        ];
        let mut all = vec![(a(), -1), (b(), -1), (c(), -1), (d(), -1)];
        for sh in step2 {
            all.push((sh, 1));
        }
        all.push((&(&c() + &v(Var::S)) + &v(Var::T), -1));
        all
    }

    /// First derivative of the Hilbert numerator at 1: sum of `sign * shift`.
    pub fn numerator_derivative_at_one() -> SymPoly {
        let mut acc = SymPoly::zero();
        for (sh, sign) in signed_shifts() {
            acc = &acc + &(&sh * sign);
        }
        acc
    }

    /// Second derivative of the Hilbert numerator at 1: sum of `sign * d * (d-1)`.
    pub fn numerator_second_derivative_at_one() -> SymPoly {
        let one = SymPoly::constant(1);
        let mut acc = SymPoly::zero();
        for (sh, sign) in signed_shifts() {
            let term = &sh * &(&sh - &one);
            acc = &acc + &(&term * sign);
        }
        acc
    }
}
