//! Exact multivariate (Laurent) polynomials with integer or rational
//! coefficients, rational functions, and reduction modulo a principal ideal.

mod parse;
mod ratfn;

pub use ratfn::RatFn;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number in lowest terms.
pub type Q = BigRational;

pub const MAX_VARS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoeffError {
    #[error("denominator is not a monomial: {denominator}")]
    NotLaurent { denominator: String },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse polynomial `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("invalid modulus: {0}")]
    Modulus(String),
    #[error("variable sets differ: {0:?} vs {1:?}")]
    VarMismatch(Vars, Vars),
}

/// An ordered set of indeterminate names.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vars(pub &'static [&'static str]);

pub const ABZT: Vars = Vars(&["alpha", "beta", "z", "t"]);
pub const AB: Vars = Vars(&["alpha", "beta"]);
pub const ZD: Vars = Vars(&["z", "delta"]);
pub const ZB: Vars = Vars(&["z", "beta"]);
pub const ALPHA: Vars = Vars(&["alpha"]);
pub const BETA: Vars = Vars(&["beta"]);

impl Vars {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &'static str {
        self.0[i]
    }

    /// Looks up a variable by full name or by its one-letter alias
    /// (`a` for alpha, `b` for beta, `d` for delta).
    pub fn index_of(&self, name: &str) -> Option<usize> {
        let full = match name {
            "a" => "alpha",
            "b" => "beta",
            "d" => "delta",
            other => other,
        };
        self.0.iter().position(|v| *v == full)
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Exponent vector. Slots beyond the variable count stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [i32; MAX_VARS]);

impl Mono {
    pub fn one() -> Mono {
        Mono([0; MAX_VARS])
    }

    pub fn from_slice(exps: &[i32]) -> Mono {
        let mut m = [0; MAX_VARS];
        m[..exps.len()].copy_from_slice(exps);
        Mono(m)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Mono(m)
    }

    pub fn inv(&self) -> Mono {
        let mut m = self.0;
        for a in m.iter_mut() {
            *a = -*a;
        }
        Mono(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.0[i]
    }
}

// Graded lexicographic: total degree first, then exponents left to right.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient ring interface shared by the integers, the rationals and
/// the prime field.
pub trait Coef: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Text used by `Display`; negative values start with `-`.
    fn render(&self) -> String;
}

/// Coefficient rings in which every nonzero element is invertible.
pub trait Field: Coef {
    fn inv(&self) -> Option<Self>;
}

impl Coef for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coef for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Field for Q {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse polynomial; negative exponents are allowed (Laurent polynomials).
#[derive(Clone, PartialEq)]
pub struct MPoly<C: Coef> {
    vars: Vars,
    terms: BTreeMap<Mono, C>,
}

pub type ZPoly = MPoly<BigInt>;
pub type QPoly = MPoly<Q>;

impl<C: Coef> MPoly<C> {
    pub fn zero(vars: Vars) -> Self {
        MPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vars, c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Mono::one(), c);
        p
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn from_i64(vars: Vars, v: i64) -> Self {
        Self::constant(vars, C::from_i64(v))
    }

    /// The indeterminate with index `i`.
    pub fn var(vars: Vars, i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Self::monomial(vars, Mono(e), C::one())
    }

    pub fn monomial(vars: Vars, m: Mono, c: C) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, C)>>(vars: Vars, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Mono::one())
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        debug_assert_eq!(self.vars, other.vars);
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        MPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v.mul(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        MPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Largest exponent of variable `i`, or `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn min_degree_in(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.0[i]).min()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Joint degree in the listed variables.
    pub fn degree_in_set(&self, idx: &[usize]) -> Option<i32> {
        self.terms
            .keys()
            .map(|m| idx.iter().map(|&i| m.0[i]).sum())
            .max()
    }

    /// Splits into parts homogeneous in the listed variables, keyed by degree.
    pub fn homogeneous_parts(&self, idx: &[usize]) -> BTreeMap<i32, Self> {
        let mut out: BTreeMap<i32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = idx.iter().map(|&i| m.0[i]).sum();
            out.entry(d)
                .or_insert_with(|| Self::zero(self.vars))
                .add_term(*m, c.clone());
        }
        out
    }

    pub fn map_coeffs<D: Coef>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        MPoly::from_terms(self.vars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Moves the polynomial into another variable set; `map[i]` is the new
    /// slot for old variable `i`, or `None` if that variable must not occur.
    pub fn relabel(&self, vars: Vars, map: &[Option<usize>]) -> Option<Self> {
        let mut out = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut e = [0; MAX_VARS];
            for (i, &x) in m.0.iter().enumerate().take(self.vars.len()) {
                if x == 0 {
                    continue;
                }
                e[map[i]?] += x;
            }
            out.add_term(Mono(e), c.clone());
        }
        Some(out)
    }

    /// Evaluates at a point of a field; `conv` maps coefficients into it.
    /// Returns `None` when a negative power of zero is required.
    pub fn eval_with<F: Field>(&self, point: &[F], conv: impl Fn(&C) -> F) -> Option<F> {
        let mut acc = F::zero();
        let mut inverses: Vec<Option<F>> = Vec::with_capacity(point.len());
        for p in point {
            inverses.push(p.inv());
        }
        for (m, c) in &self.terms {
            let mut v = conv(c);
            for (i, p) in point.iter().enumerate().take(self.vars.len()) {
                let e = m.0[i];
                if e > 0 {
                    v = v.mul(&pow_field(p, e as u64));
                } else if e < 0 {
                    v = v.mul(&pow_field(inverses[i].as_ref()?, (-e) as u64));
                }
            }
            acc = acc.add(&v);
        }
        Some(acc)
    }

    /// Multiplies by the monomial that makes every exponent nonnegative with
    /// at least one zero in each variable; returns the shift applied.
    pub fn clear_monomial_content(&self) -> (Self, Mono) {
        if self.is_zero() {
            return (self.clone(), Mono::one());
        }
        let mut shift = [0; MAX_VARS];
        for (i, s) in shift.iter_mut().enumerate().take(self.vars.len()) {
            *s = -self.min_degree_in(i).unwrap_or(0);
        }
        let shift = Mono(shift);
        (self.mul_mono(&shift), shift)
    }

    pub fn leading_term(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next_back()
    }
}

fn pow_field<F: Field>(base: &F, mut e: u64) -> F {
    let mut result = F::one();
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&b);
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(&b);
        }
    }
    result
}

impl ZPoly {
    pub fn to_q(&self) -> QPoly {
        self.map_coeffs(|c| Q::from_integer(c.clone()))
    }
}

impl QPoly {
    /// Returns the integer polynomial if every coefficient is integral.
    pub fn to_z(&self) -> Option<ZPoly> {
        let mut out = ZPoly::zero(self.vars);
        for (m, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            out.add_term(*m, c.to_integer());
        }
        Some(out)
    }

    pub fn parse(vars: Vars, text: &str) -> Result<QPoly, CoeffError> {
        parse::parse_poly(vars, text)
    }

    /// Substitutes a rational function for every variable.
    pub fn substitute(&self, target: Vars, images: &[RatFn]) -> Result<RatFn, CoeffError> {
        ratfn::substitute(self, target, images)
    }

    /// Substitutes Laurent polynomials for every variable. Negative powers
    /// are only allowed for images that are single terms.
    pub fn substitute_laurent(&self, target: Vars, images: &[QPoly]) -> Result<QPoly, CoeffError> {
        let n = self.vars.len();
        let mut pos_cache: Vec<Vec<QPoly>> = vec![vec![QPoly::one(target)]; n];
        let mut inverses: Vec<Option<QPoly>> = vec![None; n];
        let mut out = QPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = QPoly::constant(target, c.clone());
            for i in 0..n {
                let e = m.0[i];
                if e == 0 {
                    continue;
                }
                let factor = if e > 0 {
                    power_cached(&mut pos_cache[i], &images[i], e as usize)
                } else {
                    if inverses[i].is_none() {
                        inverses[i] = Some(monomial_inverse(&images[i])?);
                    }
                    inverses[i].as_ref().unwrap().pow((-e) as u32)
                };
                term = &term * &factor;
            }
            out.add_assign_ref(&term);
        }
        Ok(out)
    }

    /// The denominator-free form of a polynomial with rational coefficients:
    /// returns `(k, p)` with `k > 0` such that `k * self = p` has coprime
    /// integer coefficients.
    pub fn primitive_integer(&self) -> (Q, ZPoly) {
        use num_integer::Integer;
        let mut lcm = BigInt::from(1);
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let scaled = self.scale(&Q::from_integer(lcm.clone()));
        let mut g = BigInt::from(0);
        for c in scaled.terms.values() {
            g = g.gcd(&c.to_integer());
        }
        if Zero::is_zero(&g) {
            return (Q::from_integer(BigInt::from(1)), ZPoly::zero(self.vars));
        }
        let k = Q::new(lcm, g.clone());
        let z = scaled.map_coeffs(|c| c.to_integer() / &g);
        (k, z)
    }
}

fn power_cached(cache: &mut Vec<QPoly>, base: &QPoly, e: usize) -> QPoly {
    while cache.len() <= e {
        let next = cache.last().unwrap() * base;
        cache.push(next);
    }
    cache[e].clone()
}

fn monomial_inverse(p: &QPoly) -> Result<QPoly, CoeffError> {
    if p.len() != 1 {
        return Err(CoeffError::NotLaurent { denominator: p.to_string() });
    }
    let (m, c) = p.terms.iter().next().unwrap();
    Ok(QPoly::monomial(p.vars, m.inv(), c.inv().expect("nonzero coefficient")))
}

/// Polynomial generating a principal ideal, with a constant leading
/// coefficient in its main variable so that division is exact over Q.
#[derive(Clone, Debug)]
pub struct PrincipalModulus {
    poly: QPoly,
    var: usize,
    degree: i32,
    lead: Q,
}

impl PrincipalModulus {
    pub fn new(poly: QPoly, var: usize) -> Result<Self, CoeffError> {
        let degree = poly
            .degree_in(var)
            .ok_or_else(|| CoeffError::Modulus("zero polynomial".into()))?;
        if degree <= 0 {
            return Err(CoeffError::Modulus("modulus must involve its main variable".into()));
        }
        if poly.min_degree_in(var).unwrap_or(0) < 0 {
            return Err(CoeffError::Modulus("negative power of the main variable".into()));
        }
        let lead_terms: Vec<_> = poly.terms().filter(|(m, _)| m.0[var] == degree).collect();
        if lead_terms.len() != 1 {
            return Err(CoeffError::Modulus(format!(
                "leading coefficient in {} is not constant",
                poly.vars().name(var)
            )));
        }
        let (m, c) = lead_terms[0];
        let mut rest = *m;
        rest.0[var] = 0;
        if !rest.is_one() {
            return Err(CoeffError::Modulus(format!(
                "leading coefficient in {} is not constant",
                poly.vars().name(var)
            )));
        }
        let lead = c.clone();
        Ok(PrincipalModulus { poly, var, degree, lead })
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn leading_coefficient(&self) -> &Q {
        &self.lead
    }

    /// Division with remainder in the main variable. The dividend must not
    /// contain negative powers of the main variable.
    pub fn divrem(&self, p: &QPoly) -> Result<(QPoly, QPoly), CoeffError> {
        if p.vars() != self.poly.vars() {
            return Err(CoeffError::VarMismatch(p.vars(), self.poly.vars()));
        }
        if p.min_degree_in(self.var).unwrap_or(0) < 0 {
            return Err(CoeffError::Modulus(
                "dividend has negative powers of the main variable".into(),
            ));
        }
        let inv_lead = self.lead.recip();
        let mut quo = QPoly::zero(p.vars());
        let mut rem = p.clone();
        loop {
            let d = match rem.degree_in(self.var) {
                Some(d) if d >= self.degree => d,
                _ => break,
            };
            let mut factor = QPoly::zero(p.vars());
            for (m, c) in rem.terms().filter(|(m, _)| m.0[self.var] == d) {
                let mut e = *m;
                e.0[self.var] -= self.degree;
                factor.add_term(e, c * &inv_lead);
            }
            rem = &rem - &(&factor * &self.poly);
            quo.add_assign_ref(&factor);
        }
        Ok((quo, rem))
    }

    /// Canonical representative of a Laurent polynomial modulo the ideal:
    /// degree below the modulus degree in the main variable, no negative
    /// powers of it. Writing the modulus as `c0 + x q` with `c0` a single
    /// term, `x^-1 = -q / c0` in the quotient.
    pub fn remainder_laurent(&self, p: &QPoly) -> Result<QPoly, CoeffError> {
        let low = p.min_degree_in(self.var).unwrap_or(0);
        if low >= 0 {
            return Ok(self.divrem(p)?.1);
        }
        let mut c0 = QPoly::zero(self.poly.vars());
        let mut q = QPoly::zero(self.poly.vars());
        for (m, c) in self.poly.terms() {
            if m.0[self.var] == 0 {
                c0.add_term(*m, c.clone());
            } else {
                let mut e = *m;
                e.0[self.var] -= 1;
                q.add_term(e, c.clone());
            }
        }
        if c0.len() != 1 {
            return Err(CoeffError::Modulus(format!(
                "{} is not a unit modulo the ideal",
                self.poly.vars().name(self.var)
            )));
        }
        let (m0, k0) = c0.terms().next().map(|(m, c)| (*m, c.clone())).unwrap();
        let inv_c0 = QPoly::monomial(self.poly.vars(), m0.inv(), k0.inv().expect("nonzero"));
        let x_inv = -(&q * &inv_c0);
        let x_inv = self.divrem(&x_inv)?.1;
        let k = -low;
        let mut e = [0; MAX_VARS];
        e[self.var] = k;
        let mut acc = self.divrem(&p.mul_mono(&Mono(e)))?.1;
        for _ in 0..k {
            acc = self.divrem(&(&acc * &x_inv))?.1;
        }
        Ok(acc)
    }

    /// Ideal membership in the Laurent ring: monomials are units there, so
    /// any monomial shift is cleared first. Requires that no variable
    /// divides the modulus.
    pub fn divides(&self, p: &QPoly) -> Result<bool, CoeffError> {
        let (shifted, _) = p.clear_monomial_content();
        let (_, r) = self.divrem(&shifted)?;
        Ok(r.is_zero())
    }
}

// Operator sugar on references and owned values.

impl<'a, C: Coef> Add<&'a MPoly<C>> for &'a MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: &'a MPoly<C>) -> MPoly<C> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a, C: Coef> Sub<&'a MPoly<C>> for &'a MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: &'a MPoly<C>) -> MPoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.neg());
        }
        out
    }
}

impl<'a, C: Coef> Mul<&'a MPoly<C>> for &'a MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: &'a MPoly<C>) -> MPoly<C> {
        debug_assert_eq!(self.vars, rhs.vars);
        let mut out = MPoly::zero(self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }
}

impl<C: Coef> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        MPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }
}

impl<C: Coef> Add for MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: MPoly<C>) -> MPoly<C> {
        &self + &rhs
    }
}

impl<C: Coef> Sub for MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: MPoly<C>) -> MPoly<C> {
        &self - &rhs
    }
}

impl<C: Coef> Mul for MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: MPoly<C>) -> MPoly<C> {
        &self * &rhs
    }
}

impl<C: Coef> Neg for MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        -&self
    }
}

impl<C: Coef> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut s = c.render();
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let mut factors = Vec::new();
            for i in 0..self.vars.len() {
                match m.0[i] {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    e => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{s}")?;
            } else if s == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", s, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Coef> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{:?}]({})", self.vars, self)
    }
}

/// JSON-friendly term list: exponents plus numerator and denominator text.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<i32>,
    pub num: String,
    pub den: String,
}

impl QPoly {
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermRecord {
                exponents: m.0[..self.vars.len()].to_vec(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign_of(c: &Q) -> i32 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}
