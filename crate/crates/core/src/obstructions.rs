//! The obstruction identities: the 24 CPC couples, the commutativity
//! polynomials L, M, N, the quadratic trace system and `Z = P`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::braid::{BraidWord, Syllable};
use crate::coeff::{Mono, QPoly, RatFn, ZPoly, AB, ABZT, Q, ZB};
use crate::data;
use crate::engine::{relation_elements, Engine, PosWord};
use crate::invariants::{h_poly, p_poly, poly, specialize_trace, type_i_modulus, type_ii_modulus, Family, ParameterSet};
use crate::{Error, Result};

/// `(xi, eps, delta, gamma)` syllables `b3^xi b2^eps . b2^delta b3^gamma`
/// around the middle block, for s = 1..6.
const PATTERNS: [[(usize, i32); 4]; 6] = [
    [(3, 1), (2, 1), (2, 2), (3, 1)],
    [(3, 1), (2, 1), (2, 1), (3, 2)],
    [(3, 1), (2, 2), (2, 1), (3, 2)],
    [(3, 2), (2, 2), (2, 2), (3, 1)],
    [(3, 2), (2, 1), (2, 2), (3, 2)],
    [(3, 2), (2, 2), (2, 1), (3, 1)],
];

/// Middle blocks `P_i = b1^x b3^y`, i = 1..4; the right word uses `b3^y b1^x`.
const BLOCKS: [(i32, i32); 4] = [(1, 1), (2, 1), (1, 2), (2, 2)];

#[derive(Clone, Debug)]
pub struct CpcCouple {
    pub label: (u8, u8),
    pub left: BraidWord,
    pub right: BraidWord,
}

impl CpcCouple {
    pub fn name(&self) -> String {
        format!("{}.{}", self.label.0, self.label.1)
    }
}

pub fn cpc_couples() -> Vec<CpcCouple> {
    let mut out = Vec::with_capacity(24);
    for (s, pat) in PATTERNS.iter().enumerate() {
        for (i, &(x, y)) in BLOCKS.iter().enumerate() {
            let build = |mid: [(usize, i32); 2]| {
                let syl = [pat[0], pat[1], mid[0], mid[1], pat[2], pat[3]];
                BraidWord::new(4, syl.iter().map(|&(g, e)| Syllable::new(g, e))).expect("valid couple word")
            };
            out.push(CpcCouple {
                label: (s as u8 + 1, i as u8 + 1),
                left: build([(1, x), (3, y)]),
                right: build([(3, y), (1, x)]),
            });
        }
    }
    out
}

fn pos_word(w: &BraidWord) -> PosWord {
    PosWord::from_pairs(&w.syllables().iter().map(|s| (s.index as u8, s.exp as u8)).collect::<Vec<_>>())
}

/// A specialized difference with denominators cleared.
#[derive(Clone, Debug, Serialize)]
pub struct CpcReport {
    pub couple: String,
    pub family: Family,
    pub zero: bool,
    pub divisible: bool,
    /// Power of `alpha beta + 4` (type I) or monomial (type II) multiplied in.
    pub cleared_power: String,
    pub degree: Option<i64>,
    pub difference: String,
}

/// Clears the denominators of a raw difference at level 4: type I gives
/// `(alpha beta + 4)^3 D`, type II the Laurent value times the monomial
/// making it a polynomial.
fn cleared(raw: &ZPoly, family: Family) -> Result<(QPoly, String)> {
    let s = specialize_trace(raw, 4, family)?;
    Ok(match family {
        Family::TypeI => (s, "3".to_string()),
        Family::TypeII => {
            let (p, m) = s.clear_monomial_content();
            (p, format!("z^{} delta^{}", m.0[0], m.0[1]))
        }
    })
}

fn report(label: &str, raw: &ZPoly, family: Family) -> Result<(CpcReport, QPoly)> {
    let (d, cleared_power) = cleared(raw, family)?;
    let divisible = family.modulus().divides(&d)?;
    Ok((
        CpcReport {
            couple: label.to_string(),
            family,
            zero: d.is_zero(),
            divisible,
            cleared_power,
            degree: d.total_degree(),
            difference: d.to_string(),
        },
        d,
    ))
}

/// `T(left) - T(right)` under the engine's strategy, specialized and cleared.
pub fn cpc_obstruction(engine: &mut Engine<ZPoly>, c: &CpcCouple, family: Family) -> Result<CpcReport> {
    let raw = &engine.trace_raw(&c.left)? - &engine.trace_raw(&c.right)?;
    Ok(report(&c.name(), &raw, family)?.0)
}

/// The couple difference when the first rewriting step of each word is forced
/// onto its own `b3`-pair next to the middle block: positions (3, 5) on the
/// left word and (0, 2) on the right word. This mimics evaluating the two
/// branches of the pentagon separately.
pub fn cpc_block_order_raw(engine: &mut Engine<ZPoly>, c: &CpcCouple) -> Result<ZPoly> {
    let l = engine.trace_with_first_step(&pos_word(&c.left), 3, 5)?;
    let r = engine.trace_with_first_step(&pos_word(&c.right), 0, 2)?;
    Ok(&l - &r)
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockOrderReport {
    pub couple: String,
    pub family: Family,
    pub zero: bool,
    pub divisible: bool,
    pub difference: String,
    pub printed: Option<String>,
    /// `equal`, `negated`, `other`, or `not-listed`.
    pub relation: String,
}

fn relation(computed: &RatFn, printed: Option<&RatFn>) -> String {
    match printed {
        None => "not-listed",
        Some(p) if computed.equals(p) => "equal",
        Some(p) if computed.equals(&p.neg()) => "negated",
        Some(_) => "other",
    }
    .to_string()
}

fn printed_type_i(label: (u8, u8)) -> Option<QPoly> {
    let (_, f) = data::CPC_TYPE_I.iter().find(|(l, _)| *l == label)?;
    Some(&(&poly(AB, f) * h_poly()) * &poly(AB, data::W))
}

fn printed_type_ii(label: (u8, u8)) -> Option<RatFn> {
    let (_, sign, factors, extra, p, q) = data::CPC_TYPE_II.iter().find(|(l, ..)| *l == label)?;
    let mut num = &poly(ZB, data::Z) * &poly(ZB, extra);
    for &k in *factors {
        num = &num * &poly(ZB, data::b_factor(k));
    }
    let den = &poly(ZB, &format!("z^{p}")) * &poly(ZB, "b z + 1").pow(*q);
    Some(RatFn::new(num.scale(&Q::from_integer((*sign).into())), den).expect("nonzero"))
}

/// A Laurent polynomial in z, delta rewritten in z, beta via `delta = z^2 (beta z + 1)`.
pub fn zd_to_zb(p: &QPoly) -> Result<RatFn> {
    let images = [RatFn::from_poly(poly(ZB, "z")), RatFn::from_poly(poly(ZB, "z^2 (b z + 1)"))];
    Ok(p.substitute(ZB, &images)?)
}

/// Block-order diagnostic for every couple in both families.
pub fn cpc_block_order(engine: &mut Engine<ZPoly>, family: Family) -> Result<Vec<BlockOrderReport>> {
    let mut out = Vec::new();
    for c in cpc_couples() {
        let raw = cpc_block_order_raw(engine, &c)?;
        let (r, d) = report(&c.name(), &raw, family)?;
        let (printed, rel) = match family {
            Family::TypeI => {
                let p = printed_type_i(c.label);
                let rel = relation(&RatFn::from_poly(d.clone()), p.clone().map(RatFn::from_poly).as_ref());
                (p.map(|p| p.to_string()), rel)
            }
            Family::TypeII => {
                let value = specialize_trace(&raw, 4, family)?;
                let p = printed_type_ii(c.label);
                (p.as_ref().map(|p| p.to_string()), relation(&zd_to_zb(&value)?, p.as_ref()))
            }
        };
        out.push(BlockOrderReport {
            couple: r.couple,
            family,
            zero: r.zero,
            divisible: r.divisible,
            difference: r.difference,
            printed,
            relation: rel,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub holds: bool,
}

/// `(5.2) = -alpha (3.2)`, `(6.2) = alpha (1.2)`, `(1.4) = -alpha (1.2)` on
/// cleared type I differences keyed by label.
pub fn cpc_identities(d: &BTreeMap<(u8, u8), QPoly>) -> Vec<IdentityReport> {
    let alpha = poly(AB, "a");
    [((5, 2), -1, (3, 2)), ((6, 2), 1, (1, 2)), ((1, 4), -1, (1, 2))]
        .iter()
        .map(|&(lhs, s, rhs)| {
            let r = (&alpha * &d[&rhs]).scale(&Q::from_integer(s.into()));
            IdentityReport {
                identity: format!("({}.{}) = {}alpha ({}.{})", lhs.0, lhs.1, if s < 0 { "-" } else { "" }, rhs.0, rhs.1),
                holds: d[&lhs] == r,
            }
        })
        .collect()
}

/// Cleared type I differences of all couples, under the engine's strategy or
/// the block-order diagnostic.
pub fn cpc_type_i_differences(engine: &mut Engine<ZPoly>, block_order: bool) -> Result<BTreeMap<(u8, u8), QPoly>> {
    let mut out = BTreeMap::new();
    for c in cpc_couples() {
        let raw = if block_order {
            cpc_block_order_raw(engine, &c)?
        } else {
            &engine.trace_raw(&c.left)? - &engine.trace_raw(&c.right)?
        };
        out.insert(c.label, cleared(&raw, Family::TypeI)?.0);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct LmnReport {
    pub name: String,
    pub family: Family,
    pub computed: String,
    pub printed: String,
    pub exact: bool,
    /// `computed / printed`, when they differ.
    pub ratio: Option<String>,
    /// The cleared value lies in the ideal of the family modulus.
    pub divisible: bool,
}

pub fn lmn_polys() -> [(&'static str, QPoly); 3] {
    [("L", poly(ABZT, data::L)), ("M", poly(ABZT, data::M)), ("N", poly(ABZT, data::N))]
}

/// Substitutes the family's parameters into L, M, N and compares with the
/// printed factored forms as rational functions.
pub fn lmn_identity_check(family: Family) -> Result<Vec<LmnReport>> {
    let mut out = Vec::new();
    for (i, (name, p)) in lmn_polys().into_iter().enumerate() {
        let (computed, printed, divisible) = match family {
            Family::TypeI => {
                let c = ParameterSet::type_i().substitute(&p)?;
                let (_, f) = data::LMN_TYPE_I[i];
                let printed = RatFn::new(&poly(AB, f) * h_poly(), poly(AB, "(a b + 4)^2"))?;
                let divisible = type_i_modulus().divides(c.numer())?;
                (c, printed, divisible)
            }
            Family::TypeII => {
                let c = ParameterSet::type_ii_zb().substitute(&p)?;
                let (_, sign, k, zp, q) = data::LMN_TYPE_II[i];
                let num = (&poly(ZB, data::Z) * &poly(ZB, data::b_factor(k))).scale(&Q::from_integer(sign.into()));
                let den = &poly(ZB, &format!("z^{zp}")) * &poly(ZB, "b z + 1").pow(q);
                let laurent = ParameterSet::type_ii().substitute(&p)?.laurent()?;
                (c, RatFn::new(num, den)?, type_ii_modulus().divides(&laurent)?)
            }
        };
        let exact = computed.equals(&printed);
        let alpha = match family {
            Family::TypeI => ParameterSet::type_i().alpha,
            Family::TypeII => ParameterSet::type_ii_zb().alpha,
        };
        let candidates = [("-alpha", alpha.neg()), ("alpha", alpha)];
        let ratio = (!exact).then(|| identify_ratio(&computed, &printed, &candidates));
        out.push(LmnReport {
            name: name.to_string(),
            family,
            computed: computed.to_string(),
            printed: printed.to_string(),
            exact,
            ratio,
            divisible,
        });
    }
    Ok(out)
}

/// Names `computed / printed` when it is a monomial or one of `candidates`.
/// Rational functions are not gcd-reduced here, so the ratio is recognised
/// by verification rather than by simplification.
pub fn identify_ratio(computed: &RatFn, printed: &RatFn, candidates: &[(&str, RatFn)]) -> String {
    if let Some(m) = monomial_ratio(computed, printed) {
        return m.to_string();
    }
    for (name, c) in candidates {
        if computed.equals(&printed.mul(c)) {
            return name.to_string();
        }
    }
    "not a monomial or a listed factor".to_string()
}

fn monomial_ratio(computed: &RatFn, printed: &RatFn) -> Option<QPoly> {
    let lhs = computed.numer() * printed.denom();
    let rhs = computed.denom() * printed.numer();
    let (ml, cl) = lhs.leading_term()?;
    let (mr, cr) = rhs.leading_term()?;
    let e: [i32; crate::coeff::MAX_VARS] = std::array::from_fn(|i| ml.0[i] - mr.0[i]);
    let m = QPoly::monomial(lhs.vars(), Mono(e), cl / cr);
    (&rhs * &m == lhs).then_some(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceEquations {
    pub eq0: String,
    pub eq1: String,
    /// Each equation equals the printed one exactly.
    pub matches_printed: [bool; 2],
    pub vanish_type_i: [bool; 2],
    pub vanish_type_ii: [bool; 2],
}

/// `T(R0)` and `T(R1)` at level 3. The leading words `b2 b1^2 b2` and
/// `b1 b2 b1^2 b2` are evaluated through their cyclic rotations `b1^2 b2^2`
/// and `b1 b2 b1^3` (the reduction of the leading word itself uses the
/// relation and would return zero identically), so the two equations are
/// exactly the conditions for the functional to be a trace on `K_3`.
pub fn trace_equations_r0r1(engine: &mut Engine<ZPoly>) -> Result<(ZPoly, ZPoly)> {
    let [r0, r1, _] = relation_elements(engine);
    let lead0 = PosWord::from_pairs(&[(2, 1), (1, 2), (2, 1)]);
    let lead1 = PosWord::from_pairs(&[(1, 1), (2, 1), (1, 2), (2, 1)]);
    let mut eqs = Vec::new();
    for (sum, lead, rotated) in [(r0, lead0, vec![(1u8, 2u8), (2, 2)]), (r1, lead1, vec![(1, 1), (2, 1), (1, 3)])] {
        let mut rest = sum.clone();
        let c = sum.coeff(&lead).cloned().ok_or_else(|| Error::Check("relation lacks its leading word".into()))?;
        rest.add_term(lead, -&c);
        let mut v = engine.trace_sum(&rest)?;
        let rot = engine.canon(3, &rotated);
        v = &v + &(&c * &engine.trace_sum(&rot)?);
        eqs.push(v);
    }
    let eq1 = eqs.pop().unwrap();
    let eq0 = eqs.pop().unwrap();
    Ok((eq0, eq1))
}

pub fn trace_equations(engine: &mut Engine<ZPoly>) -> Result<TraceEquations> {
    let (eq0, eq1) = trace_equations_r0r1(engine)?;
    let printed = [poly(ABZT, data::TRACE_EQ0), poly(ABZT, data::TRACE_EQ1)];
    let eqs = [eq0.to_q(), eq1.to_q()];
    let p1 = ParameterSet::type_i();
    let p2 = ParameterSet::type_ii();
    let vanish = |p: &ParameterSet| -> Result<[bool; 2]> {
        Ok([p.substitute(&eqs[0])?.is_zero(), p.substitute(&eqs[1])?.is_zero()])
    };
    Ok(TraceEquations {
        eq0: eq0.to_string(),
        eq1: eq1.to_string(),
        matches_printed: [eqs[0] == printed[0], eqs[1] == printed[1]],
        vanish_type_i: vanish(&p1)?,
        vanish_type_ii: vanish(&p2)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ZpReport {
    pub exact: bool,
    /// `P(z, z^2 (beta z + 1)) / Z` when the two differ.
    pub ratio: Option<String>,
    /// Agreement up to a monomial factor, i.e. equality as elements of the Laurent ring ideal.
    pub same_ideal: bool,
    /// A one-coefficient perturbation of P is detected.
    pub perturbation_detected: bool,
}

fn p_in_zb(p: &QPoly) -> Result<QPoly> {
    let images = [poly(ZB, "z"), poly(ZB, "z^2 (b z + 1)")];
    Ok(p.substitute_laurent(ZB, &images)?)
}

pub fn zp_identity_check() -> Result<ZpReport> {
    let z = poly(ZB, data::Z);
    let sub = p_in_zb(p_poly())?;
    let exact = sub == z;
    let ratio = monomial_ratio(&RatFn::from_poly(sub.clone()), &RatFn::from_poly(z.clone()));
    let same_ideal = ratio.is_some();
    let mut perturbed = p_poly().clone();
    perturbed.add_term(Mono::from_slice(&[9, 4]), Q::from_integer(1.into()));
    let perturbation_detected = p_in_zb(&perturbed)? != z;
    Ok(ZpReport {
        exact,
        ratio: if exact { None } else { ratio.map(|m| m.to_string()) },
        same_ideal,
        perturbation_detected,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TranscriptionCheck {
    pub name: String,
    pub point: String,
    pub value: String,
    pub expected: String,
    pub ok: bool,
}

/// Values of the transcribed data against an independent second reading of
/// the printed polynomials.
pub fn transcription_checks() -> Vec<TranscriptionCheck> {
    use crate::numeric::{eval_q, Fp};
    let mut out = Vec::new();
    let points: [[i64; 4]; 2] = [[1, 1, 1, 1], [2, -1, 1, 0]];
    let expected = [("L", [-22, 52]), ("M", [48, -30]), ("N", [24, -46])];
    for ((name, p), (_, exp)) in lmn_polys().iter().zip(expected) {
        for (pt, e) in points.iter().zip(exp) {
            let v = eval_q(p, &pt.map(Fp::from_i64)).map(|v| v.signed());
            out.push(TranscriptionCheck {
                name: name.to_string(),
                point: format!("{pt:?}"),
                value: format!("{v:?}"),
                expected: e.to_string(),
                ok: v == Some(e),
            });
        }
    }
    // Z at z = beta = 1 against the printed coefficients added one by one.
    let printed: [i64; 20] = [1, 7, 21, 1, 35, 35, 21, 7, 1, 1, 8, 23, 32, 23, 8, -2, 1, -1, -5, -6];
    let z = poly(ZB, data::Z);
    let v = eval_q(&z, &[Fp::ONE, Fp::ONE]).map(|v| v.signed());
    let e: i64 = printed.iter().sum();
    out.push(TranscriptionCheck {
        name: "Z".into(),
        point: "[1, 1]".into(),
        value: format!("{v:?}"),
        expected: e.to_string(),
        ok: v == Some(e) && z.len() == printed.len(),
    });
    let w = poly(AB, data::W);
    out.push(TranscriptionCheck {
        name: "W".into(),
        point: "factored form".into(),
        value: w.to_string(),
        expected: poly(AB, data::W_FACTORED).to_string(),
        ok: w == poly(AB, data::W_FACTORED),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Params, Strategy};

    #[test]
    fn couples_follow_the_schema() {
        let c = cpc_couples();
        assert_eq!(c.len(), 24);
        assert_eq!(c[0].left.to_string(), "3 2 1 3 2^2 3");
        assert_eq!(c[0].right.to_string(), "3 2 3 1 2^2 3");
        let c44 = c.iter().find(|c| c.label == (4, 4)).unwrap();
        assert_eq!(c44.left.to_string(), "3^2 2^2 1^2 3^2 2^2 3");
        assert_eq!(c44.right.to_string(), "3^2 2^2 3^2 1^2 2^2 3");
    }

    #[test]
    fn transcriptions_agree() {
        for t in transcription_checks() {
            assert!(t.ok, "{t:?}");
        }
    }

    #[test]
    fn trace_system_matches() {
        let mut e = Engine::new(Params::symbolic(), Strategy::Canonical);
        let t = trace_equations(&mut e).unwrap();
        assert_eq!(t.matches_printed, [true, true]);
        assert_eq!(t.vanish_type_i, [true, true]);
        assert_eq!(t.vanish_type_ii, [true, true]);
    }

    #[test]
    fn w_times_h_is_divisible() {
        let wh = &poly(AB, data::W) * h_poly();
        assert!(type_i_modulus().divides(&wh).unwrap());
        assert!(!type_i_modulus().divides(&poly(AB, "a")).unwrap());
    }
}
