//! Arithmetic in the prime field of order 2^61 - 1, univariate polynomials
//! over it, and random points on the parameter moduli.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::coeff::{Coef, Field, QPoly, Q};

pub const MODULUS: u64 = (1u64 << 61) - 1;

/// Element of F_p with p = 2^61 - 1, stored reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp(u64);

#[inline]
fn reduce128(x: u128) -> u64 {
    let lo = (x as u64) & MODULUS;
    let hi = (x >> 61) as u64;
    let mut s = lo + (hi & MODULUS) + (hi >> 61);
    while s >= MODULUS {
        s -= MODULUS;
    }
    s
}

#[allow(clippy::should_implement_trait)]
impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    pub fn new(v: u64) -> Fp {
        Fp(v % MODULUS)
    }

    pub fn from_i64(v: i64) -> Fp {
        if v >= 0 {
            Fp::new(v as u64)
        } else {
            Fp::new(v.unsigned_abs()).neg()
        }
    }

    pub fn from_bigint(v: &BigInt) -> Fp {
        let m = BigInt::from(MODULUS);
        let r = v.mod_floor(&m);
        Fp(r.to_u64().unwrap())
    }

    /// Image of a rational number; `None` if p divides the denominator.
    pub fn from_q(v: &Q) -> Option<Fp> {
        let n = Fp::from_bigint(v.numer());
        let d = Fp::from_bigint(v.denom());
        d.inv().map(|di| n.mul(di))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Representative in (-p/2, p/2], for readable output.
    pub fn signed(self) -> i64 {
        if self.0 > MODULUS / 2 {
            -((MODULUS - self.0) as i64)
        } else {
            self.0 as i64
        }
    }

    #[inline]
    pub fn add(self, o: Fp) -> Fp {
        let s = self.0 + o.0;
        Fp(if s >= MODULUS { s - MODULUS } else { s })
    }

    #[inline]
    pub fn sub(self, o: Fp) -> Fp {
        if self.0 >= o.0 {
            Fp(self.0 - o.0)
        } else {
            Fp(self.0 + MODULUS - o.0)
        }
    }

    #[inline]
    pub fn mul(self, o: Fp) -> Fp {
        Fp(reduce128(self.0 as u128 * o.0 as u128))
    }

    #[inline]
    pub fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(MODULUS - self.0)
        }
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut r = Fp::ONE;
        let mut b = self;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(b);
            }
            b = b.mul(b);
            e >>= 1;
        }
        r
    }

    pub fn inv(self) -> Option<Fp> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(MODULUS - 2))
        }
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Fp {
        Fp(rng.random_range(0..MODULUS))
    }

    /// Random element avoiding zero.
    pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Fp {
        Fp(rng.random_range(1..MODULUS))
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fp({})", self.signed())
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

impl Coef for Fp {
    fn zero() -> Self {
        Fp::ZERO
    }
    fn one() -> Self {
        Fp::ONE
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn from_i64(v: i64) -> Self {
        Fp::from_i64(v)
    }
    fn add(&self, o: &Self) -> Self {
        Fp::add(*self, *o)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp::sub(*self, *o)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp::mul(*self, *o)
    }
    fn neg(&self) -> Self {
        Fp::neg(*self)
    }
    fn render(&self) -> String {
        self.signed().to_string()
    }
}

impl Field for Fp {
    fn inv(&self) -> Option<Self> {
        Fp::inv(*self)
    }
}

/// Evaluates a rational polynomial at a point of F_p.
pub fn eval_q(p: &QPoly, point: &[Fp]) -> Option<Fp> {
    if p.terms().any(|(_, c)| Fp::from_q(c).is_none()) {
        return None;
    }
    p.eval_with(point, |c| Fp::from_q(c).unwrap())
}

/// Evaluates an integer polynomial at a point of F_p.
pub fn eval_z(p: &crate::coeff::ZPoly, point: &[Fp]) -> Option<Fp> {
    p.eval_with(point, Fp::from_bigint)
}

/// Dense univariate polynomial over F_p, coefficient `i` of `x^i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpPoly(Vec<Fp>);

impl FpPoly {
    pub fn new(mut c: Vec<Fp>) -> FpPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        FpPoly(c)
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: Fp) -> Fp {
        self.0.iter().rev().fold(Fp::ZERO, |acc, &c| acc.mul(x).add(c))
    }

    fn monic(&self) -> FpPoly {
        match self.0.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = lc.inv().unwrap();
                FpPoly(self.0.iter().map(|c| (*c).mul(inv)).collect())
            }
        }
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.0.len().max(o.0.len());
        let mut c = vec![Fp::ZERO; n];
        for (i, x) in self.0.iter().enumerate() {
            c[i] = c[i].add(*x);
        }
        for (i, x) in o.0.iter().enumerate() {
            c[i] = c[i].sub(*x);
        }
        FpPoly::new(c)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly(vec![]);
        }
        let mut c = vec![Fp::ZERO; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = c[i + j].add((*a).mul(*b));
            }
        }
        FpPoly::new(c)
    }

    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.0[dd].inv().unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (FpPoly(vec![]), self.clone());
        }
        let mut q = vec![Fp::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i].mul(inv);
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c;
            for j in 0..=dd {
                r[i - dd + j] = r[i - dd + j].sub(c.mul(d.0[j]));
            }
        }
        (FpPoly::new(q), FpPoly::new(r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn powmod(&self, mut e: u64, m: &FpPoly) -> FpPoly {
        let mut result = FpPoly(vec![Fp::ONE]).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        result
    }

    /// All distinct roots in F_p (Cantor-Zassenhaus equal-degree splitting).
    pub fn roots<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Fp> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let f = self.monic();
        let x = FpPoly(vec![Fp::ZERO, Fp::ONE]);
        let xp = x.powmod(MODULUS, &f);
        let g = f.gcd(&xp.sub(&x));
        let mut out = Vec::new();
        split_linear(&g, rng, &mut out);
        out.sort();
        out
    }
}

fn split_linear<R: Rng + ?Sized>(g: &FpPoly, rng: &mut R, out: &mut Vec<Fp>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(g.0[0].mul(g.0[1].inv().unwrap()).neg()),
        Some(d) => loop {
            let a = Fp::random(rng);
            let h = FpPoly(vec![a, Fp::ONE]).powmod((MODULUS - 1) / 2, g);
            let h = h.sub(&FpPoly(vec![Fp::ONE]));
            let f = g.gcd(&h);
            let fd = f.degree().unwrap_or(0);
            if fd > 0 && fd < d {
                split_linear(&f, rng, out);
                split_linear(&g.divrem(&f).0, rng, out);
                return;
            }
        },
    }
}

/// Restricts a bivariate polynomial to a univariate one in variable `var`
/// by plugging in values for the others.
pub fn univariate_slice(p: &QPoly, var: usize, others: &[Fp]) -> Option<FpPoly> {
    let deg = p.degree_in(var)?;
    if p.min_degree_in(var)? < 0 {
        return None;
    }
    let mut c = vec![Fp::ZERO; deg as usize + 1];
    for (m, coef) in p.terms() {
        let mut v = Fp::from_q(coef)?;
        for (i, &x) in others.iter().enumerate() {
            if i == var {
                continue;
            }
            let e = m.0[i];
            v = if e >= 0 {
                v.mul(x.pow(e as u64))
            } else {
                v.mul(x.inv()?.pow((-e) as u64))
            };
        }
        let k = m.0[var] as usize;
        c[k] = c[k].add(v);
    }
    Some(FpPoly::new(c))
}

/// Random points on the curve `p = 0`, obtained by fixing every variable
/// except `var` at random and collecting roots in `var`.
pub fn points_on_curve<R: Rng + ?Sized>(
    p: &QPoly,
    var: usize,
    count: usize,
    rng: &mut R,
    avoid: impl Fn(&[Fp]) -> bool,
) -> Vec<Vec<Fp>> {
    let n = p.vars().len();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 10_000 {
        attempts += 1;
        let mut pt: Vec<Fp> = (0..n).map(|_| Fp::random_nonzero(rng)).collect();
        let Some(slice) = univariate_slice(p, var, &pt) else { continue };
        for r in slice.roots(rng) {
            pt[var] = r;
            if !avoid(&pt) && out.len() < count {
                out.push(pt.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn field_basics() {
        let a = Fp::from_i64(-5);
        assert_eq!(a.add(Fp::new(5)), Fp::ZERO);
        let b = Fp::new(123456789);
        assert_eq!(b.mul(b.inv().unwrap()), Fp::ONE);
        assert_eq!(Fp::new(MODULUS - 1).mul(Fp::new(MODULUS - 1)), Fp::ONE);
        assert_eq!(Fp::from_q(&crate::coeff::q(1, 2)).unwrap().mul(Fp::new(2)), Fp::ONE);
    }

    #[test]
    fn finds_planted_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r1 = Fp::new(42);
        let r2 = Fp::from_i64(-17);
        let f = FpPoly::new(vec![r1.neg(), Fp::ONE])
            .mul(&FpPoly::new(vec![r2.neg(), Fp::ONE]))
            .mul(&FpPoly::new(vec![Fp::ONE, Fp::ZERO, Fp::ONE]));
        let roots = f.roots(&mut rng);
        assert!(roots.contains(&r1) && roots.contains(&r2));
        for r in roots {
            assert!(f.eval(r).is_zero());
        }
    }
}
