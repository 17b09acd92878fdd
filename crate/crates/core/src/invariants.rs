//! Parameter families, specialization of raw traces, and the normalized
//! invariants `I_(alpha,beta)` (type I) and `I^(z,delta)` (type II).
//!
//! With `a = -(n-1+e)/2` and `b = (e-n+1)/2` the invariant of the closure
//! of `x in B_n` is `z^a zbar^b T(x)`. For type I this is
//! `z0^a (-t0)^b T~` where `T~ = (alpha beta + 4)^(n-1) T` is a polynomial
//! in Z[alpha, beta]; the powers of `alpha beta + 4` cancel because `a + b = 1 - n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Serialize;

use crate::braid::{BraidWord, ClosureData};
use crate::coeff::{Mono, PrincipalModulus, QPoly, RatFn, Vars, ZPoly, AB, ABZT, ALPHA, BETA, Q, ZB, ZD};
use crate::data;
use crate::engine::{zt_degree, Engine};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
}

impl Family {
    pub fn modulus(self) -> &'static PrincipalModulus {
        match self {
            Family::TypeI => type_i_modulus(),
            Family::TypeII => type_ii_modulus(),
        }
    }

    /// Variables the specialized values live in.
    pub fn vars(self) -> Vars {
        match self {
            Family::TypeI => AB,
            Family::TypeII => ZD,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::TypeI => "I",
            Family::TypeII => "II",
        })
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" | "TYPEI" => Ok(Family::TypeI),
            "II" | "2" | "TYPEII" => Ok(Family::TypeII),
            _ => Err(format!("unknown family `{s}` (expected I or II)")),
        }
    }
}

/// Which single-family value an invariant is specialized to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Spec {
    #[serde(rename = "alpha0")]
    Alpha0,
    #[serde(rename = "beta0")]
    Beta0,
    #[serde(rename = "typeII")]
    TypeII,
}

impl FromStr for Spec {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "alpha0" => Ok(Spec::Alpha0),
            "beta0" => Ok(Spec::Beta0),
            "typeII" | "II" => Ok(Spec::TypeII),
            _ => Err(format!("unknown specialization `{s}` (expected alpha0, beta0 or typeII)")),
        }
    }
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spec::Alpha0 => "alpha0",
            Spec::Beta0 => "beta0",
            Spec::TypeII => "typeII",
        })
    }
}

pub(crate) fn poly(vars: Vars, text: &str) -> QPoly {
    QPoly::parse(vars, text).unwrap_or_else(|e| panic!("built-in polynomial: {e}"))
}

fn ratfn(vars: Vars, num: &str, den: &str) -> RatFn {
    RatFn::new(poly(vars, num), poly(vars, den)).expect("nonzero denominator")
}

pub fn h_poly() -> &'static QPoly {
    static H: OnceLock<QPoly> = OnceLock::new();
    H.get_or_init(|| poly(AB, data::H))
}

pub fn p_poly() -> &'static QPoly {
    static P: OnceLock<QPoly> = OnceLock::new();
    P.get_or_init(|| poly(ZD, data::P))
}

/// `H` with main variable alpha.
pub fn type_i_modulus() -> &'static PrincipalModulus {
    static M: OnceLock<PrincipalModulus> = OnceLock::new();
    M.get_or_init(|| PrincipalModulus::new(h_poly().clone(), 0).expect("H has constant leading coefficient"))
}

/// `P` with main variable delta.
pub fn type_ii_modulus() -> &'static PrincipalModulus {
    static M: OnceLock<PrincipalModulus> = OnceLock::new();
    M.get_or_init(|| PrincipalModulus::new(p_poly().clone(), 1).expect("P is monic in delta"))
}

/// `H(alpha, 0) = 8 alpha^6 + 17 alpha^3 + 8`.
pub fn beta0_modulus() -> &'static PrincipalModulus {
    static M: OnceLock<PrincipalModulus> = OnceLock::new();
    M.get_or_init(|| PrincipalModulus::new(restrict(h_poly(), 1), 0).expect("univariate modulus"))
}

/// `H(0, beta) = 8 beta^6 - 17 beta^3 + 8`.
pub fn alpha0_modulus() -> &'static PrincipalModulus {
    static M: OnceLock<PrincipalModulus> = OnceLock::new();
    M.get_or_init(|| PrincipalModulus::new(restrict(h_poly(), 0), 0).expect("univariate modulus"))
}

pub fn spec_modulus(spec: Spec) -> &'static PrincipalModulus {
    match spec {
        Spec::Alpha0 => alpha0_modulus(),
        Spec::Beta0 => beta0_modulus(),
        Spec::TypeII => type_ii_modulus(),
    }
}

/// Sets variable `zero` (0 = alpha, 1 = beta) of a polynomial in alpha, beta
/// to zero; the result is univariate in the other one.
pub fn restrict(p: &QPoly, zero: usize) -> QPoly {
    let keep = 1 - zero;
    let vars = if keep == 0 { ALPHA } else { BETA };
    QPoly::from_terms(
        vars,
        p.terms().filter(|(m, _)| m.0[zero] == 0).map(|(m, c)| (Mono::from_slice(&[m.0[keep]]), c.clone())),
    )
}

/// The substitution `(alpha, beta) -> (-beta, -alpha)`.
pub fn swap_ab(p: &QPoly) -> QPoly {
    QPoly::from_terms(
        AB,
        p.terms().map(|(m, c)| {
            let (i, j) = (m.0[0], m.0[1]);
            let c = if (i + j) % 2 == 0 { c.clone() } else { -c.clone() };
            (Mono::from_slice(&[j, i]), c)
        }),
    )
}

/// The values of alpha, beta, z, zbar and t for one parameter family, as
/// rational functions in the family's free variables.
#[derive(Clone, Debug)]
pub struct ParameterSet {
    pub family: Family,
    pub vars: Vars,
    pub alpha: RatFn,
    pub beta: RatFn,
    pub z: RatFn,
    pub zbar: RatFn,
    pub t: RatFn,
}

impl ParameterSet {
    /// `z = z0 u`, `zbar = -t0 u`, `t = t0 u` with `z0 = 2 alpha - beta^2`,
    /// `t0 = alpha^2 + 2 beta`, `u = 1/(alpha beta + 4)`.
    pub fn type_i() -> Self {
        ParameterSet {
            family: Family::TypeI,
            vars: AB,
            alpha: RatFn::from_poly(poly(AB, "a")),
            beta: RatFn::from_poly(poly(AB, "b")),
            z: ratfn(AB, "2a - b^2", "a b + 4"),
            zbar: ratfn(AB, "-(a^2 + 2b)", "a b + 4"),
            t: ratfn(AB, "a^2 + 2b", "a b + 4"),
        }
    }

    /// Free variables `z, delta`; `t = alpha z + beta + zbar`.
    pub fn type_ii() -> Self {
        let alpha = ratfn(ZD, "-(z^7 + delta^2)", "z^4 delta");
        let beta = ratfn(ZD, "delta - z^2", "z^3");
        let z = RatFn::from_poly(poly(ZD, "z"));
        let zbar = ratfn(ZD, "-z^4", "delta");
        let t = alpha.mul(&z).add(&beta).add(&zbar);
        ParameterSet { family: Family::TypeII, vars: ZD, alpha, beta, z, zbar, t }
    }

    /// Type II in the coordinates `z, beta` (with `delta = z^2 (beta z + 1)`),
    /// used by the printed obstruction forms.
    pub fn type_ii_zb() -> Self {
        let alpha = ratfn(ZB, "-(z^3 + (b z + 1)^2)", "z^2 (b z + 1)");
        let beta = RatFn::from_poly(poly(ZB, "b"));
        let z = RatFn::from_poly(poly(ZB, "z"));
        let zbar = ratfn(ZB, "-z^2", "b z + 1");
        let t = alpha.mul(&z).add(&beta).add(&zbar);
        ParameterSet { family: Family::TypeII, vars: ZB, alpha, beta, z, zbar, t }
    }

    pub fn of(family: Family) -> Self {
        match family {
            Family::TypeI => Self::type_i(),
            Family::TypeII => Self::type_ii(),
        }
    }

    /// Substitutes into a polynomial in alpha, beta, z, t.
    pub fn substitute(&self, p: &QPoly) -> Result<RatFn> {
        let images = [self.alpha.clone(), self.beta.clone(), self.z.clone(), self.t.clone()];
        Ok(p.substitute(self.vars, &images)?)
    }

    /// `(alpha beta + 1) z^3 + (alpha + beta^2) z^2 + 2 beta z + 1`, which
    /// vanishes identically for type II.
    pub fn cubic_constraint(&self) -> Result<RatFn> {
        self.substitute(&poly(ABZT, "(a b + 1) z^3 + (a + b^2) z^2 + 2 b z + 1"))
    }

    /// `t - (alpha z + beta + zbar)`.
    pub fn multiplicativity_defect(&self) -> RatFn {
        self.t.sub(&self.alpha.mul(&self.z).add(&self.beta).add(&self.zbar))
    }

    /// The printed type II form `t = (2 alpha z - 2 z^2 + beta)/(2 + beta z)`.
    pub fn printed_t(&self) -> Result<RatFn> {
        let num = self.substitute(&poly(ABZT, "2 a z - 2 z^2 + b"))?;
        let den = self.substitute(&poly(ABZT, "2 + b z"))?;
        Ok(num.div(&den)?)
    }
}

fn type_ii_laurent_images() -> &'static [QPoly; 4] {
    static IM: OnceLock<[QPoly; 4]> = OnceLock::new();
    IM.get_or_init(|| {
        let p = ParameterSet::type_ii();
        [p.alpha.laurent(), p.beta.laurent(), p.z.laurent(), p.t.laurent()]
            .map(|r| r.expect("type II parameters are Laurent"))
    })
}

/// Unnormalized trace of a braid with the degree contract checked.
pub fn trace_raw(engine: &mut Engine<ZPoly>, w: &BraidWord) -> Result<ZPoly> {
    let raw = engine.trace_raw(w)?;
    let n = w.strands() as i32;
    if let Some(d) = zt_degree(&raw) {
        if d > n - 1 {
            return Err(Error::Check(format!("trace of [{w}] has (z,t)-degree {d} > {}", n - 1)));
        }
    }
    Ok(raw)
}

/// Type I: `T~ = sum_d (alpha beta + 4)^(n-1-d) (degree-d part at z0, t0)`,
/// an integer polynomial in alpha, beta. Type II: the Laurent value in z, delta.
pub fn specialize_trace(raw: &ZPoly, n: usize, family: Family) -> Result<QPoly> {
    match family {
        Family::TypeI => {
            let top = n as i32 - 1;
            let z0 = poly(AB, "2a - b^2");
            let t0 = poly(AB, "a^2 + 2b");
            let w = poly(AB, "a b + 4");
            let mut groups: BTreeMap<(i32, i32), QPoly> = BTreeMap::new();
            for (m, c) in raw.terms() {
                let (k, l) = (m.0[2], m.0[3]);
                if k + l > top {
                    return Err(Error::Check(format!("(z,t)-degree {} exceeds {top}", k + l)));
                }
                groups
                    .entry((k, l))
                    .or_insert_with(|| QPoly::zero(AB))
                    .add_term(Mono::from_slice(&[m.0[0], m.0[1]]), Q::from_integer(c.clone()));
            }
            let mut out = QPoly::zero(AB);
            for ((k, l), g) in groups {
                let f = &(&z0.pow(k as u32) * &t0.pow(l as u32)) * &w.pow((top - k - l) as u32);
                out.add_assign_ref(&(&g * &f));
            }
            Ok(out)
        }
        Family::TypeII => {
            let r = ParameterSet::type_ii().substitute(&raw.to_q())?;
            let value = r.laurent()?;
            debug_assert_eq!(value, raw.to_q().substitute_laurent(ZD, type_ii_laurent_images())?);
            Ok(value)
        }
    }
}

/// A normalized invariant: the specialized trace plus the exponents of
/// `z0` and `-t0` (respectively `z` and `zbar`).
#[derive(Clone, Debug)]
pub struct InvariantValue {
    pub family: Family,
    pub braid: String,
    pub strands: usize,
    pub closure: ClosureData,
    /// `T~` for type I, the Laurent trace for type II.
    pub t_tilde: QPoly,
    a2: i64,
    b2: i64,
}

fn two_pow(k: i64) -> Q {
    let p = Q::from_integer(BigInt::from(2)).pow(k.unsigned_abs() as i32);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

fn sign(k: i64) -> Q {
    Q::from_integer(BigInt::from(if k.rem_euclid(2) == 0 { 1 } else { -1 }))
}

impl InvariantValue {
    pub fn exp_z0(&self) -> Q {
        Q::new(BigInt::from(self.a2), BigInt::from(2))
    }

    pub fn exp_zbar0(&self) -> Q {
        Q::new(BigInt::from(self.b2), BigInt::from(2))
    }

    /// `(a, b)` when both are integers, i.e. for an odd number of components.
    pub fn integral_exponents(&self) -> Option<(i64, i64)> {
        (self.a2 % 2 == 0 && self.b2 % 2 == 0).then_some((self.a2 / 2, self.b2 / 2))
    }

    /// The full invariant as a rational function (integral exponents only).
    pub fn value(&self) -> Option<RatFn> {
        let (a, b) = self.integral_exponents()?;
        match self.family {
            Family::TypeI => {
                let z0 = RatFn::from_poly(poly(AB, "2a - b^2"));
                let mt0 = RatFn::from_poly(poly(AB, "-(a^2 + 2b)"));
                let f = z0.pow(a as i32).ok()?.mul(&mt0.pow(b as i32).ok()?);
                Some(f.mul(&RatFn::from_poly(self.t_tilde.clone())))
            }
            Family::TypeII => Some(RatFn::from_poly(self.type_ii_laurent()?)),
        }
    }

    /// `I_(alpha, 0) = 2^a (-1)^b alpha^(a+2b) T~(alpha, 0)`.
    pub fn beta0(&self) -> Option<QPoly> {
        let (a, b) = self.integral_exponents().filter(|_| self.family == Family::TypeI)?;
        let c = two_pow(a) * sign(b);
        Some(restrict(&self.t_tilde, 1).scale(&c).mul_mono(&Mono::from_slice(&[(a + 2 * b) as i32])))
    }

    /// `I_(0, beta) = (-1)^a (-2)^b beta^(2a+b) T~(0, beta)`.
    pub fn alpha0(&self) -> Option<QPoly> {
        let (a, b) = self.integral_exponents().filter(|_| self.family == Family::TypeI)?;
        let c = sign(a) * sign(b) * two_pow(b);
        Some(restrict(&self.t_tilde, 0).scale(&c).mul_mono(&Mono::from_slice(&[(2 * a + b) as i32])))
    }

    /// `I^(z, delta) = (-1)^b z^(a+4b) delta^(-b) T`.
    pub fn type_ii_laurent(&self) -> Option<QPoly> {
        let (a, b) = self.integral_exponents().filter(|_| self.family == Family::TypeII)?;
        Some(self.t_tilde.scale(&sign(b)).mul_mono(&Mono::from_slice(&[(a + 4 * b) as i32, -b as i32])))
    }

    pub fn specialized(&self, spec: Spec) -> Option<Specialized> {
        let value = match spec {
            Spec::Alpha0 => self.alpha0()?,
            Spec::Beta0 => self.beta0()?,
            Spec::TypeII => self.type_ii_laurent()?,
        };
        let m = spec_modulus(spec);
        let remainder = m.remainder_laurent(&value).expect("modulus variable is a unit");
        Some(Specialized { spec, value, remainder, modulus: m.poly().clone() })
    }

    pub fn record(&self, spec: Option<Spec>) -> InvariantRecord {
        let specialized = spec.and_then(|s| self.specialized(s)).map(|s| SpecializedRecord {
            variable: s.value.vars().0.join(","),
            coeffs: coeff_map(&s.value),
            remainder: s.remainder.to_string(),
        });
        let modulus = match spec {
            Some(s) if specialized.is_some() => spec_modulus(s).poly().to_string(),
            _ => self.family.modulus().poly().to_string(),
        };
        InvariantRecord {
            family: self.family,
            braid: self.braid.clone(),
            strands: self.strands,
            e: self.closure.exponent_sum,
            components: self.closure.components,
            epsilon: self.closure.epsilon,
            t_tilde: self.t_tilde.to_string(),
            exp_z0: self.exp_z0().to_string(),
            exp_zbar0: self.exp_zbar0().to_string(),
            specialized,
            modulus,
        }
    }
}

/// A specialized invariant with its canonical remainder.
#[derive(Clone, Debug)]
pub struct Specialized {
    pub spec: Spec,
    /// The unreduced representative.
    pub value: QPoly,
    pub remainder: QPoly,
    pub modulus: QPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecializedRecord {
    pub variable: String,
    pub coeffs: BTreeMap<String, String>,
    pub remainder: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantRecord {
    pub family: Family,
    pub braid: String,
    pub strands: usize,
    pub e: i64,
    pub components: usize,
    pub epsilon: u8,
    #[serde(rename = "T_tilde")]
    pub t_tilde: String,
    pub exp_z0: String,
    pub exp_zbar0: String,
    pub specialized: Option<SpecializedRecord>,
    pub modulus: String,
}

/// Exponent (comma-joined for several variables) to coefficient.
fn coeff_map(p: &QPoly) -> BTreeMap<String, String> {
    let n = p.vars().len();
    p.terms()
        .map(|(m, c)| {
            let key: Vec<String> = (0..n).map(|i| m.0[i].to_string()).collect();
            (key.join(","), c.to_string())
        })
        .collect()
}

/// Builds the invariant from a raw trace.
pub fn normalize_invariant(raw: &ZPoly, w: &BraidWord, family: Family) -> Result<InvariantValue> {
    let n = w.strands() as i64;
    let closure = w.closure_components();
    let e = closure.exponent_sum;
    if closure.components == 1 && (e - (n - 1)).rem_euclid(2) != 0 {
        return Err(Error::Check(format!("knot [{w}] with e = {e} on {n} strands breaks permutation parity")));
    }
    let t_tilde = specialize_trace(raw, n as usize, family)?;
    if family == Family::TypeI && t_tilde.to_z().is_none() {
        return Err(Error::Check(format!("T~ of [{w}] has non-integer coefficients")));
    }
    Ok(InvariantValue {
        family,
        braid: w.to_string(),
        strands: n as usize,
        closure,
        t_tilde,
        a2: -(n - 1 + e),
        b2: e - n + 1,
    })
}

pub fn invariant(engine: &mut Engine<ZPoly>, w: &BraidWord, family: Family) -> Result<InvariantValue> {
    let raw = trace_raw(engine, w)?;
    normalize_invariant(&raw, w, family)
}

pub fn invariant_specialized(engine: &mut Engine<ZPoly>, w: &BraidWord, spec: Spec) -> Result<Specialized> {
    let family = if spec == Spec::TypeII { Family::TypeII } else { Family::TypeI };
    let v = invariant(engine, w, family)?;
    v.specialized(spec)
        .ok_or_else(|| Error::Check(format!("[{w}] closes to a link with an even number of components")))
}

#[derive(Clone, Debug, Serialize)]
pub struct CubicalReport {
    pub holds: bool,
    /// Residues mod 3 seen (of `p - q`, of the single exponent, or of
    /// `k - j` for `z^k delta^j`).
    pub residues: Vec<i32>,
    pub violations: Vec<String>,
}

fn residue_report(items: impl Iterator<Item = (i32, String)>, expected: Option<i32>) -> CubicalReport {
    let mut residues = BTreeSet::new();
    let mut seen = Vec::new();
    for (r, text) in items {
        residues.insert(r.rem_euclid(3));
        seen.push((r.rem_euclid(3), text));
    }
    let target = expected.map(|e| e.rem_euclid(3)).or_else(|| residues.iter().next().copied());
    let violations: Vec<String> =
        seen.into_iter().filter(|(r, _)| Some(*r) != target).map(|(_, t)| t).collect();
    CubicalReport { holds: violations.is_empty(), residues: residues.into_iter().collect(), violations }
}

/// Every monomial `alpha^p beta^q` of `T~` has `p - q = e (mod 3)`.
pub fn cubical_t_tilde(v: &InvariantValue) -> CubicalReport {
    let e = v.closure.exponent_sum as i32;
    residue_report(
        v.t_tilde.terms().map(|(m, c)| (m.0[0] - m.0[1], format!("{c}*alpha^{}*beta^{}", m.0[0], m.0[1]))),
        Some(e),
    )
}

/// A univariate Laurent polynomial is supported on one residue class mod 3.
pub fn cubical_univariate(p: &QPoly) -> CubicalReport {
    residue_report(p.terms().map(|(m, c)| (m.0[0], format!("{c}*x^{}", m.0[0]))), None)
}

/// For a Laurent polynomial in z, delta: grouped by delta-power the
/// z-exponents lie in one class mod 3, and grouped by z-power the
/// delta-exponents do. `residues` lists the classes of `k - j`.
pub fn cubical_type_ii(p: &QPoly) -> CubicalReport {
    let mut by_delta: BTreeMap<i32, BTreeSet<i32>> = BTreeMap::new();
    let mut by_z: BTreeMap<i32, BTreeSet<i32>> = BTreeMap::new();
    let mut diffs = BTreeSet::new();
    for (m, _) in p.terms() {
        let (k, j) = (m.0[0], m.0[1]);
        by_delta.entry(j).or_default().insert(k.rem_euclid(3));
        by_z.entry(k).or_default().insert(j.rem_euclid(3));
        diffs.insert((k - j).rem_euclid(3));
    }
    let mut violations = Vec::new();
    for (j, r) in &by_delta {
        if r.len() > 1 {
            violations.push(format!("delta^{j}: z-exponent classes {r:?}"));
        }
    }
    for (k, r) in &by_z {
        if r.len() > 1 {
            violations.push(format!("z^{k}: delta-exponent classes {r:?}"));
        }
    }
    CubicalReport { holds: violations.is_empty(), residues: diffs.into_iter().collect(), violations }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chirality {
    #[serde(rename = "chiral-evidence")]
    ChiralEvidence,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chirality::ChiralEvidence => "chiral-evidence",
            Chirality::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiralityReport {
    pub verdict: Chirality,
    /// `T~(x)(alpha, beta) = T~(x dagger)(-beta, -alpha)` modulo H.
    pub dagger_identity: bool,
    /// `H(alpha, beta) = H(-beta, -alpha)`.
    pub modulus_swap_symmetric: bool,
}

/// Compares the type I invariant of `w` with that of its mirror; by the
/// dagger identity the mirror's invariant is the swapped invariant of `w`.
pub fn chirality_test(engine: &mut Engine<ZPoly>, w: &BraidWord) -> Result<ChiralityReport> {
    let h = type_i_modulus();
    let v = invariant(engine, w, Family::TypeI)?;
    let m = invariant(engine, &w.dagger(), Family::TypeI)?;
    let dagger_identity = h.divides(&(&v.t_tilde - &swap_ab(&m.t_tilde)))?;
    // I(w) - I(w dagger) = z0^a (-t0)^b T~(w) - z0^b (-t0)^a T~(w dagger), a - b = -e,
    // with the unit powers of z0 and t0 divided out.
    let e = v.closure.exponent_sum;
    let z0 = poly(AB, "2a - b^2");
    let mt0 = poly(AB, "-(a^2 + 2b)");
    let k = e.unsigned_abs() as u32;
    let diff = if e <= 0 {
        &(&z0.pow(k) * &v.t_tilde) - &(&mt0.pow(k) * &m.t_tilde)
    } else {
        &(&mt0.pow(k) * &v.t_tilde) - &(&z0.pow(k) * &m.t_tilde)
    };
    let verdict = if h.divides(&diff)? { Chirality::Inconclusive } else { Chirality::ChiralEvidence };
    Ok(ChiralityReport { verdict, dagger_identity, modulus_swap_symmetric: &swap_ab(h_poly()) == h_poly() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Params, Strategy};

    fn engine() -> Engine<ZPoly> {
        Engine::new(Params::symbolic(), Strategy::Canonical)
    }

    fn word(s: &str) -> BraidWord {
        BraidWord::parse(s).unwrap()
    }

    #[test]
    fn specialized_moduli() {
        assert_eq!(beta0_modulus().poly(), &poly(ALPHA, "8a^6 + 17a^3 + 8"));
        assert_eq!(alpha0_modulus().poly(), &poly(BETA, "8b^6 - 17b^3 + 8"));
    }

    #[test]
    fn trefoil_values() {
        let mut e = engine();
        let v = invariant(&mut e, &word("1^3"), Family::TypeI).unwrap();
        assert_eq!(v.t_tilde, poly(AB, "a^3 - b^3 + 5a b + 4"));
        assert_eq!(v.beta0().unwrap(), poly(ALPHA, "-1 - 1/4 a^3"));
        assert_eq!(v.alpha0().unwrap(), poly(BETA, "-8 b^-3 + 2"));
    }

    #[test]
    fn unknot_is_one() {
        let mut e = engine();
        for f in [Family::TypeI, Family::TypeII] {
            let v = invariant(&mut e, &word("1"), f).unwrap();
            assert!(v.value().unwrap().equals(&RatFn::one(f.vars())), "{f}");
        }
    }

    #[test]
    fn canonical_remainder_handles_negative_powers() {
        let m = beta0_modulus();
        let p = poly(ALPHA, "8a^-3 + 10 + a^3");
        let r = m.remainder_laurent(&p).unwrap();
        assert!(r.min_degree_in(0).unwrap() >= 0 && r.degree_in(0).unwrap() < 6);
        // a^3 * (p - r) must lie in the ideal
        let d = (&p - &r).mul_mono(&Mono::from_slice(&[3]));
        assert!(m.divides(&d).unwrap());
    }

    #[test]
    fn swap_fixes_h() {
        assert_eq!(&swap_ab(h_poly()), h_poly());
    }

    #[test]
    fn type_ii_identities() {
        let p = ParameterSet::type_ii();
        assert!(p.cubic_constraint().unwrap().is_zero());
        assert!(p.multiplicativity_defect().is_zero());
        assert!(p.printed_t().unwrap().equals(&p.t));
        assert_eq!(p.t, ratfn(ZD, "-(2z^5 + delta)", "z delta"));
        assert!(ParameterSet::type_i().multiplicativity_defect().is_zero());
    }

    #[test]
    fn chirality_examples() {
        let mut e = engine();
        let r = chirality_test(&mut e, &word("1^3")).unwrap();
        assert_eq!(r.verdict, Chirality::ChiralEvidence);
        assert!(r.dagger_identity && r.modulus_swap_symmetric);
        assert_eq!(chirality_test(&mut e, &word("1 -2 1 -2")).unwrap().verdict, Chirality::Inconclusive);
        assert_eq!(chirality_test(&mut e, &word("1")).unwrap().verdict, Chirality::Inconclusive);
    }
}
