use std::fmt;

use num_traits::One;

use super::{CoeffError, QPoly, Vars, MAX_VARS, Q};

/// Quotient of two polynomials. Only monomial content is cancelled, so
/// equality goes through cross-multiplication.
#[derive(Clone)]
pub struct RatFn {
    num: QPoly,
    den: QPoly,
}

impl RatFn {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(p: QPoly) -> Self {
        let vars = p.vars();
        RatFn { num: p, den: QPoly::one(vars) }
    }

    pub fn zero(vars: Vars) -> Self {
        Self::from_poly(QPoly::zero(vars))
    }

    pub fn one(vars: Vars) -> Self {
        Self::from_poly(QPoly::one(vars))
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn vars(&self) -> Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    // Moves every monomial factor of the denominator into the numerator (as
    // a Laurent factor) and makes the denominator's leading coefficient 1.
    fn reduced(num: QPoly, den: QPoly) -> Self {
        let (den, shift) = den.clear_monomial_content();
        let mut num = num.mul_mono(&shift);
        let mut den = den;
        let lead = den.leading_term().map(|(_, c)| c.clone()).unwrap();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if num.is_zero() {
            den = QPoly::one(den.vars());
        }
        RatFn { num, den }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::reduced(&self.num + &other.num, self.den.clone());
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::reduced(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFn { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::reduced(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<Self, CoeffError> {
        if k >= 0 {
            Ok(Self::reduced(self.num.pow(k as u32), self.den.pow(k as u32)))
        } else {
            self.inv()?.pow(-k)
        }
    }

    /// Equality as rational functions.
    pub fn equals(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// The value as a Laurent polynomial, if the denominator is a monomial.
    pub fn laurent(&self) -> Result<QPoly, CoeffError> {
        if self.den.is_constant() {
            let c = self.den.constant_term();
            return Ok(self.num.scale(&c.recip()));
        }
        // The denominator may still be c*m with a negative-free shift left in.
        if self.den.len() == 1 {
            let (m, c) = self.den.terms().next().unwrap();
            return Ok(self.num.mul_mono(&m.inv()).scale(&c.recip()));
        }
        Err(CoeffError::NotLaurent { denominator: self.den.to_string() })
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_term().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

/// Substitution into rational functions over a single common denominator:
/// each variable `x_i -> n_i/d_i` with exponents in `[lo_i, hi_i]` gives
/// `sum c * prod n_i^(e - lo_i) d_i^(hi_i - e)` over `prod n_i^(-lo_i) d_i^hi_i`
/// (with `lo_i` clamped to at most 0).
pub(super) fn substitute(p: &QPoly, target: Vars, images: &[RatFn]) -> Result<RatFn, CoeffError> {
    let n = p.vars().len();
    if images.len() != n {
        return Err(CoeffError::Modulus(format!(
            "expected {n} substitution images, got {}",
            images.len()
        )));
    }
    for im in images {
        if im.vars() != target {
            return Err(CoeffError::VarMismatch(im.vars(), target));
        }
    }
    if p.is_zero() {
        return Ok(RatFn::zero(target));
    }
    let mut lo = [0i32; MAX_VARS];
    let mut hi = [0i32; MAX_VARS];
    for i in 0..n {
        lo[i] = p.min_degree_in(i).unwrap().min(0);
        hi[i] = p.degree_in(i).unwrap().max(0);
        if lo[i] < 0 && images[i].num.is_zero() {
            return Err(CoeffError::ZeroDenominator);
        }
    }
    // Powers n_i^k and d_i^k for k up to hi - lo.
    let mut num_pows: Vec<Vec<QPoly>> = Vec::with_capacity(n);
    let mut den_pows: Vec<Vec<QPoly>> = Vec::with_capacity(n);
    for i in 0..n {
        let span = (hi[i] - lo[i]) as usize;
        num_pows.push(power_table(&images[i].num, span, target));
        den_pows.push(power_table(&images[i].den, span, target));
    }
    let mut num = QPoly::zero(target);
    for (m, c) in p.terms() {
        let mut term = QPoly::constant(target, c.clone());
        for i in 0..n {
            let e = m.0[i];
            let a = (e - lo[i]) as usize;
            let b = (hi[i] - e) as usize;
            if a > 0 {
                term = &term * &num_pows[i][a];
            }
            if b > 0 {
                term = &term * &den_pows[i][b];
            }
        }
        num.add_assign_ref(&term);
    }
    let mut den = QPoly::one(target);
    for i in 0..n {
        let a = (-lo[i]) as usize;
        if a > 0 {
            den = &den * &num_pows[i][a];
        }
        if hi[i] > 0 {
            den = &den * &den_pows[i][hi[i] as usize];
        }
    }
    RatFn::new(num, den)
}

fn power_table(base: &QPoly, span: usize, vars: Vars) -> Vec<QPoly> {
    let mut out = Vec::with_capacity(span + 1);
    out.push(QPoly::one(vars));
    for k in 1..=span {
        let next = &out[k - 1] * base;
        out.push(next);
    }
    out
}

impl From<QPoly> for RatFn {
    fn from(p: QPoly) -> Self {
        RatFn::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{ZD, ZB};

    fn p(vars: Vars, s: &str) -> QPoly {
        QPoly::parse(vars, s).unwrap()
    }

    #[test]
    fn laurent_cast_examples() {
        let r = RatFn::new(p(ZD, "z^3 + delta"), p(ZD, "z^2")).unwrap();
        assert_eq!(r.laurent().unwrap(), p(ZD, "z + delta*z^-2"));
        let r = RatFn::new(p(ZD, "z + 1"), p(ZD, "z^2 + delta")).unwrap();
        assert!(matches!(r.laurent(), Err(CoeffError::NotLaurent { .. })));
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = RatFn::new(p(ZB, "z^2 - 1"), p(ZB, "z - 1")).unwrap();
        let b = RatFn::from_poly(p(ZB, "z + 1"));
        assert_eq!(a, b);
        assert_ne!(a, RatFn::from_poly(p(ZB, "z")));
    }
}
