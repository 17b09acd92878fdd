//! Randomized property checks of the trace over a prime field: Markov
//! moves, conjugation, reversal, the dagger identity and independence of the
//! reduction strategy, each at points of the family's curve.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::BraidWord;
use crate::coeff::RatFn;
use crate::engine::{Engine, Params, Strategy};
use crate::invariants::{h_poly, p_poly, Family, ParameterSet};
use crate::numeric::{eval_q, points_on_curve, Fp};

/// One point on the family's curve with the induced trace parameters.
#[derive(Clone, Debug)]
pub struct FamilyPoint {
    pub family: Family,
    /// `(alpha, beta)` for type I, `(z, delta)` for type II.
    pub coords: Vec<Fp>,
    pub params: Params<Fp>,
    pub zbar: Fp,
}

impl FamilyPoint {
    /// Parameters for the mirror side: `(-beta, -alpha)` with `z` and `zbar`
    /// exchanged.
    pub fn dagger_params(&self) -> Params<Fp> {
        let p = &self.params;
        let (a, b) = (p.beta.neg(), p.alpha.neg());
        let (z, zbar) = (self.zbar, p.z);
        Params::numeric(a, b, z, a.mul(z).add(b).add(zbar))
    }
}

pub fn eval_ratfn(r: &RatFn, pt: &[Fp]) -> Option<Fp> {
    Some(eval_q(r.numer(), pt)?.mul(eval_q(r.denom(), pt)?.inv()?))
}

/// `count` random points of the family: a random beta and a root of H in
/// alpha (type I), or a random z and a root of P in delta (type II).
pub fn family_points(family: Family, count: usize, rng: &mut impl Rng) -> Vec<FamilyPoint> {
    let ps = ParameterSet::of(family);
    let (curve, var) = match family {
        Family::TypeI => (h_poly(), 0),
        Family::TypeII => (p_poly(), 1),
    };
    let eval = |pt: &[Fp]| -> Option<[Fp; 5]> {
        Some([
            eval_ratfn(&ps.alpha, pt)?,
            eval_ratfn(&ps.beta, pt)?,
            eval_ratfn(&ps.z, pt)?,
            eval_ratfn(&ps.t, pt)?,
            eval_ratfn(&ps.zbar, pt)?,
        ])
    };
    points_on_curve(curve, var, count, rng, |pt| eval(pt).is_none())
        .into_iter()
        .map(|coords| {
            let [a, b, z, t, zbar] = eval(&coords).expect("filtered above");
            FamilyPoint { family, coords, params: Params::numeric(a, b, z, t), zbar }
        })
        .collect()
}

/// A random word in `B_n` with letters `±1..±(n-1)` and 1 to `maxlen` letters.
pub fn random_word(rng: &mut impl Rng, n: usize, maxlen: usize) -> BraidWord {
    let len = rng.random_range(1..=maxlen.max(1));
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.random_range(1..n as i32);
            if rng.random_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::with_strands(n, &letters)
}

/// A random positive word in `B_n`.
pub fn random_positive_word(rng: &mut impl Rng, n: usize, maxlen: usize) -> BraidWord {
    let len = rng.random_range(1..=maxlen.max(1));
    let letters: Vec<i32> = (0..len).map(|_| rng.random_range(1..n as i32)).collect();
    BraidWord::with_strands(n, &letters)
}

#[derive(Clone, Debug)]
pub struct PropertyConfig {
    pub levels: Vec<usize>,
    pub words_small: usize,
    /// Words per level for `n = 5` and above.
    pub words_large: usize,
    pub maxlen: usize,
    pub points: usize,
    pub seed: u64,
}

impl Default for PropertyConfig {
    fn default() -> Self {
        PropertyConfig { levels: vec![2, 3, 4, 5], words_small: 500, words_large: 100, maxlen: 12, points: 3, seed: 1 }
    }
}

impl PropertyConfig {
    pub fn words(&self, n: usize) -> usize {
        if n <= 4 {
            self.words_small
        } else {
            self.words_large
        }
    }
}

pub const CHECKS: [&str; 6] = ["markov-positive", "markov-negative", "conjugation", "reversal", "dagger", "strategy"];

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub failures: usize,
    /// Up to five failing words, rendered as letter lists.
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub family: Family,
    pub level: usize,
    pub words: usize,
    pub points: usize,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }
}

struct PointEngines {
    point: FamilyPoint,
    canon: Engine<Fp>,
    random: Engine<Fp>,
    mirror: Engine<Fp>,
}

fn letters(w: &BraidWord) -> String {
    format!("{:?}", w.letters())
}

/// Evaluates the six checks for `w` at one point; `None` for agreement.
fn check_word(e: &mut PointEngines, w: &BraidWord, g: &BraidWord) -> [Option<String>; 6] {
    let n = w.strands();
    let z = e.point.params.z;
    let zbar = e.point.zbar;
    let mut out: [Option<String>; 6] = Default::default();
    let base = match e.canon.trace_raw(w) {
        Ok(v) => v,
        Err(err) => {
            let msg = format!("{}: {err}", letters(w));
            return [0, 1, 2, 3, 4, 5].map(|_| Some(msg.clone()));
        }
    };
    let mut cmp = |i: usize, got: Result<Fp, crate::engine::EngineError>, want: Fp, shown: &BraidWord| {
        out[i] = match got {
            Ok(v) if v == want => None,
            Ok(_) => Some(letters(shown)),
            Err(err) => Some(format!("{}: {err}", letters(shown))),
        };
    };
    let up = w.with_strand_count(n + 1).expect("more strands");
    let stab_pos = up.concat(&BraidWord::with_strands(n + 1, &[n as i32]));
    let stab_neg = up.concat(&BraidWord::with_strands(n + 1, &[-(n as i32)]));
    cmp(0, e.canon.trace_raw(&stab_pos), z.mul(base), &stab_pos);
    cmp(1, e.canon.trace_raw(&stab_neg), zbar.mul(base), &stab_neg);
    let conj = g.concat(w).concat(&g.inverse());
    cmp(2, e.canon.trace_raw(&conj), base, &conj);
    let rev = w.reverse();
    cmp(3, e.canon.trace_raw(&rev), base, &rev);
    let dag = w.dagger();
    cmp(4, e.mirror.trace_raw(&dag), base, &dag);
    cmp(5, e.random.trace_raw(w), base, w);
    out
}

/// Runs the property suite for one family at every configured level.
pub fn property_suite(family: Family, cfg: &PropertyConfig) -> Vec<PropertyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ family_tag(family));
    let points = family_points(family, cfg.points, &mut rng);
    cfg.levels
        .iter()
        .map(|&n| {
            let mut wrng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(1_000_003).wrapping_add(n as u64));
            let words: Vec<(BraidWord, BraidWord)> = (0..cfg.words(n))
                .map(|_| (random_word(&mut wrng, n, cfg.maxlen), random_word(&mut wrng, n, 3)))
                .collect();
            // one worker per point; results merged in point order
            let per_point: Vec<Vec<[Option<String>; 6]>> = points
                .par_iter()
                .enumerate()
                .map(|(i, p)| {
                    let mut e = PointEngines {
                        point: p.clone(),
                        canon: Engine::new(p.params.clone(), Strategy::Canonical),
                        random: Engine::new(p.params.clone(), Strategy::Randomized(cfg.seed ^ (i as u64 + 1) << 32)),
                        mirror: Engine::new(p.dagger_params(), Strategy::Canonical),
                    };
                    words.iter().map(|(w, g)| check_word(&mut e, w, g)).collect()
                })
                .collect();
            let checks = CHECKS
                .iter()
                .enumerate()
                .map(|(c, name)| {
                    let mut failures = 0;
                    let mut witnesses = Vec::new();
                    for k in 0..words.len() {
                        if let Some(wit) = per_point.iter().find_map(|r| r[k][c].clone()) {
                            failures += 1;
                            if witnesses.len() < 5 {
                                witnesses.push(wit);
                            }
                        }
                    }
                    PropertyCheck { name: name.to_string(), failures, witnesses }
                })
                .collect();
            PropertyReport { family, level: n, words: words.len(), points: points.len(), checks }
        })
        .collect()
}

fn family_tag(f: Family) -> u64 {
    match f {
        Family::TypeI => 0x1,
        Family::TypeII => 0x2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_lie_on_the_curves() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [Family::TypeI, Family::TypeII] {
            let pts = family_points(f, 3, &mut rng);
            assert_eq!(pts.len(), 3);
            let curve = if f == Family::TypeI { h_poly() } else { p_poly() };
            for p in pts {
                assert_eq!(eval_q(curve, &p.coords), Some(Fp::ZERO));
                let q = &p.params;
                assert_eq!(q.t, q.alpha.mul(q.z).add(q.beta).add(p.zbar));
            }
        }
    }

    #[test]
    fn level_three_is_consistent() {
        let cfg = PropertyConfig { levels: vec![2, 3], words_small: 60, maxlen: 8, ..Default::default() };
        for f in [Family::TypeI, Family::TypeII] {
            for r in property_suite(f, &cfg) {
                assert!(r.pass(), "{r:?}");
            }
        }
    }
}
