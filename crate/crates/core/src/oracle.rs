//! Small-rank verification by linear algebra: the spanning sets `W_n`, the
//! 21-dimensional regular representation of `K_3` and the relation checks.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::rules::{pattern, Weight, C12, C21, C21_VARIANT};
use crate::engine::{relation_elements, Engine, FormalSum, Params, PosWord, Scalar, Strategy};
use crate::invariants::Family;
use crate::numeric::Fp;
use crate::properties::{family_points, random_positive_word};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SpanningSet {
    pub level: usize,
    pub words: Vec<PosWord>,
}

/// `Z_n = { b_n^i0 b_{n-1}^i1 ... b_{n-p}^ip }` with `i0` in {0,1,2},
/// the other exponents in {1,2} and `p < n`; `Z_0 = {1}`.
fn z_set(n: usize) -> Vec<Vec<(u8, u8)>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i0 in 0..3u8 {
        let head: Vec<(u8, u8)> = if i0 > 0 { vec![(n as u8, i0)] } else { vec![] };
        let mut tails = vec![head];
        out.extend(tails.iter().cloned());
        for p in 1..n {
            let g = (n - p) as u8;
            tails = tails.into_iter().flat_map(|t| (1..=2).map(move |e| [t.clone(), vec![(g, e)]].concat())).collect();
            out.extend(tails.iter().cloned());
        }
    }
    out
}

/// `W_0 = {1}`, `W_{n+1} = W_n ∪ W_n b_{n+1} Z_n ∪ W_n b_{n+1}^2 Z_n`.
pub fn enumerate_w(n: usize) -> SpanningSet {
    let mut words: Vec<Vec<(u8, u8)>> = vec![vec![]];
    for k in 0..n {
        let z = z_set(k);
        let g = (k + 1) as u8;
        let mut next = words.clone();
        for e in 1..=2 {
            for w in &words {
                for tail in &z {
                    let mut s = w.clone();
                    s.push((g, e));
                    s.extend_from_slice(tail);
                    next.push(s);
                }
            }
        }
        words = next;
    }
    let words: Vec<PosWord> = words.iter().map(|s| PosWord::from_pairs(s)).collect();
    debug_assert_eq!(words.iter().collect::<std::collections::HashSet<_>>().len(), words.len());
    SpanningSet { level: n, words }
}

/// Square matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    pub dim: usize,
    pub entries: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    fn zero(dim: usize, zero: &S) -> Self {
        Mat { dim, entries: vec![zero.clone(); dim * dim] }
    }

    fn identity(dim: usize, p: &Params<S>) -> Self {
        let mut m = Self::zero(dim, &p.zero);
        for i in 0..dim {
            m.entries[i * dim + i] = p.one.clone();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, o: &Self, zero: &S) -> Self {
        let d = self.dim;
        let mut out = Self::zero(d, zero);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * d + j].add_assign(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, o: &Self, c: &S) {
        for (x, y) in self.entries.iter_mut().zip(&o.entries) {
            if !y.is_zero() {
                x.add_assign(&c.mul(y));
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn nonzero_entries(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }
}

/// Left-multiplication matrices of `b1`, `b2` on `K_3` in the basis `W_2`.
pub struct RegularRep<S: Scalar> {
    pub params: Params<S>,
    pub basis: Vec<PosWord>,
    pub gens: [Mat<S>; 2],
}

impl<S: Scalar> RegularRep<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn word(&self, syls: &[(u8, u8)]) -> Mat<S> {
        let mut m = Mat::identity(self.dim(), &self.params);
        for &(g, e) in syls {
            for _ in 0..e {
                m = m.mul(&self.gens[g as usize - 1], &self.params.zero);
            }
        }
        m
    }

    pub fn sum(&self, s: &FormalSum<S>) -> Mat<S> {
        let mut m = Mat::zero(self.dim(), &self.params.zero);
        for (w, c) in s.iter() {
            let pairs: Vec<(u8, u8)> = w.syls().iter().map(|s| (s.gen, s.exp)).collect();
            m.add_scaled(&self.word(&pairs), c);
        }
        m
    }

    fn weight(&self, w: Weight) -> S {
        let p = &self.params;
        match w {
            Weight::One => p.one.clone(),
            Weight::Alpha => p.alpha.clone(),
            Weight::MinusAlpha => p.alpha.neg(),
            Weight::Beta => p.beta.clone(),
            Weight::MinusBeta => p.beta.neg(),
        }
    }

    /// `rho(lhs) - sum weight * rho(pattern)` for a mixed-rule table at `l = 1`.
    pub fn mixed_defect(&self, lhs: &[(u8, u8)], table: &[(Weight, &str); 5]) -> Mat<S> {
        let mut m = self.word(lhs);
        for (w, p) in table {
            m.add_scaled(&self.word(&pattern(p, 1)), &self.weight(*w).neg());
        }
        m
    }
}

/// Builds the representation by reducing `b_i w` for each basis word with
/// the engine at level 3.
pub fn build_regular_rep_k3<S: Scalar>(engine: &mut Engine<S>) -> Result<RegularRep<S>> {
    let basis = enumerate_w(2).words;
    let index: HashMap<&PosWord, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let params = engine.params().clone();
    let d = basis.len();
    let mut gens = [Mat::zero(d, &params.zero), Mat::zero(d, &params.zero)];
    for (g, m) in gens.iter_mut().enumerate() {
        for (j, w) in basis.iter().enumerate() {
            let mut seq = vec![(g as u8 + 1, 1u8)];
            seq.extend(w.syls().iter().map(|s| (s.gen, s.exp)));
            let s = engine.canon(3, &seq);
            let s = engine.normalize_level(&s, 3)?;
            for (w2, c) in s.iter() {
                let i = *index
                    .get(w2)
                    .ok_or_else(|| Error::Check(format!("b{} [{w}] reduces to [{w2}] outside the basis", g + 1)))?;
                m.entries[i * d + j].add_assign(c);
            }
        }
    }
    Ok(RegularRep { params, basis, gens })
}

pub fn symbolic_rep() -> Result<RegularRep<crate::coeff::ZPoly>> {
    build_regular_rep_k3(&mut Engine::new(Params::symbolic(), Strategy::Canonical))
}

pub fn numeric_rep(alpha: Fp, beta: Fp) -> Result<RegularRep<Fp>> {
    build_regular_rep_k3(&mut Engine::new(Params::numeric(alpha, beta, Fp::ZERO, Fp::ZERO), Strategy::Canonical))
}

/// Rank over F_p of the flattened images `rho(w)` of the basis words; 21
/// means the representation is faithful on the span of `W_2`.
pub fn image_rank(rep: &RegularRep<Fp>) -> usize {
    let rows: Vec<Vec<Fp>> = rep
        .basis
        .iter()
        .map(|w| rep.word(&w.syls().iter().map(|s| (s.gen, s.exp)).collect::<Vec<_>>()).entries)
        .collect();
    rank(rows)
}

fn rank(mut rows: Vec<Vec<Fp>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].mul(inv);
                let pivot = rows[r].clone();
                for (x, p) in rows[i][c..].iter_mut().zip(&pivot[c..]) {
                    *x = x.sub((*p).mul(f));
                }
            }
        }
        r += 1;
    }
    r
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub name: String,
    pub status: Status,
    pub witnesses: Vec<String>,
}

fn zero_check<S: Scalar>(name: &str, m: &Mat<S>) -> OracleCheck {
    let ok = m.is_zero();
    OracleCheck {
        name: name.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        witnesses: if ok { vec![] } else { vec![format!("{} nonzero entries", m.nonzero_entries())] },
    }
}

/// Relation checks in the representation. Every listed identity must give
/// the zero matrix.
pub fn verify_algebra_relations<S: Scalar>(rep: &RegularRep<S>, engine: &mut Engine<S>) -> Vec<OracleCheck> {
    let p = &rep.params;
    let mut out = Vec::new();
    for g in 1..=2u8 {
        // b^3 - alpha b^2 - beta b - 1
        let mut m = rep.word(&[(g, 3)]);
        m.add_scaled(&rep.word(&[(g, 2)]), &p.alpha.neg());
        m.add_scaled(&rep.word(&[(g, 1)]), &p.beta.neg());
        m.add_scaled(&rep.word(&[]), &p.one.neg());
        out.push(zero_check(&format!("cubic b{g}"), &m));
    }
    let mut braid = rep.word(&[(1, 1), (2, 1), (1, 1)]);
    braid.add_scaled(&rep.word(&[(2, 1), (1, 1), (2, 1)]), &p.one.neg());
    out.push(zero_check("braid relation", &braid));
    let rels = relation_elements(engine);
    for (i, r) in rels.iter().enumerate() {
        out.push(zero_check(&format!("R{i}"), &rep.sum(r)));
    }
    out.push(zero_check("C12 identity", &rep.mixed_defect(&[(2, 1), (1, 2), (2, 2)], &C12)));
    out.push(zero_check("C21 identity", &rep.mixed_defect(&[(2, 2), (1, 2), (2, 1)], &C21)));
    let mut swap = rep.word(&[(2, 1), (1, 2), (2, 1), (1, 1)]);
    swap.add_scaled(&rep.word(&[(1, 1), (2, 1), (1, 2), (2, 1)]), &p.one.neg());
    out.push(zero_check("b2 b1^2 b2 b1 = b1 b2 b1^2 b2", &swap));
    out
}

/// The alternative C21 form must fail at every one of `points` random
/// parameter values; the check passes when it does.
pub fn c21_variant_rejected(points: usize, seed: u64) -> Result<OracleCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failing = 0;
    let mut witnesses = Vec::new();
    for _ in 0..points {
        let (a, b) = (Fp::random_nonzero(&mut rng), Fp::random_nonzero(&mut rng));
        let rep = numeric_rep(a, b)?;
        let m = rep.mixed_defect(&[(2, 2), (1, 2), (2, 1)], &C21_VARIANT);
        if m.is_zero() {
            witnesses.push(format!("variant holds at alpha={a}, beta={b}"));
        } else {
            failing += 1;
        }
    }
    Ok(OracleCheck {
        name: format!("C21 variant fails at {points} random points"),
        status: if failing == points { Status::Pass } else { Status::Fail },
        witnesses,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfluenceReport {
    pub level: usize,
    pub trials: usize,
    pub maxlen: usize,
    pub seed: u64,
    pub disagreements: usize,
    pub witnesses: Vec<String>,
}

/// Canonical against randomized reduction of random positive words in
/// `B_n`, compared at three type I points (so modulo H).
pub fn randomized_confluence_check(n: usize, trials: usize, maxlen: usize, seed: u64) -> ConfluenceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = family_points(Family::TypeI, 3, &mut rng);
    let words: Vec<_> = (0..trials).map(|_| random_positive_word(&mut rng, n, maxlen)).collect();
    let per_point: Vec<Vec<bool>> = points
        .par_iter()
        .map(|pt| {
            let mut canon = Engine::new(pt.params.clone(), Strategy::Canonical);
            words
                .iter()
                .enumerate()
                .map(|(k, w)| {
                    let mut random = Engine::new(pt.params.clone(), Strategy::Randomized(seed ^ (k as u64) << 20));
                    match (canon.trace_raw(w), random.trace_raw(w)) {
                        (Ok(a), Ok(b)) => a == b,
                        _ => false,
                    }
                })
                .collect()
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut disagreements = 0;
    for (k, w) in words.iter().enumerate() {
        if per_point.iter().any(|r| !r[k]) {
            disagreements += 1;
            if witnesses.len() < 5 {
                witnesses.push(format!("{:?}", w.letters()));
            }
        }
    }
    ConfluenceReport { level: n, trials, maxlen, seed, disagreements, witnesses }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub spanning_set_sizes: Vec<(usize, usize)>,
    pub dimension: usize,
    pub rank: usize,
    pub checks: Vec<OracleCheck>,
    pub confluence: Vec<ConfluenceReport>,
}

impl OracleReport {
    /// The representation checks alone.
    pub fn representation_pass(&self) -> bool {
        self.dimension == 21 && self.rank == 21 && self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn all_pass(&self) -> bool {
        self.representation_pass() && self.confluence.iter().all(|c| c.disagreements == 0)
    }
}

pub fn representation_report(seed: u64) -> Result<OracleReport> {
    let mut engine = Engine::new(Params::symbolic(), Strategy::Canonical);
    let rep = build_regular_rep_k3(&mut engine)?;
    let mut checks = verify_algebra_relations(&rep, &mut engine);
    checks.push(c21_variant_rejected(5, seed)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nrep = numeric_rep(Fp::random_nonzero(&mut rng), Fp::random_nonzero(&mut rng))?;
    Ok(OracleReport {
        spanning_set_sizes: (0..=3).map(|n| (n, enumerate_w(n).words.len())).collect(),
        dimension: rep.dim(),
        rank: image_rank(&nrep),
        checks,
        confluence: Vec::new(),
    })
}

/// Representation checks plus confluence runs at levels 3 and 4.
pub fn oracle_report(trials: usize, maxlen: usize, seed: u64) -> Result<OracleReport> {
    let mut r = representation_report(seed)?;
    r.confluence = [3, 4].iter().map(|&n| randomized_confluence_check(n, trials, maxlen, seed)).collect();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spanning_set_sizes() {
        assert_eq!(enumerate_w(0).words.len(), 1);
        let w1: Vec<String> = enumerate_w(1).words.iter().map(|w| w.to_string()).collect();
        assert_eq!(w1.len(), 3);
        assert_eq!(enumerate_w(2).words.len(), 21);
    }

    #[test]
    fn first_column_is_b1() {
        let rep = symbolic_rep().unwrap();
        let b1 = rep.basis.iter().position(|w| *w == PosWord::from_pairs(&[(1, 1)])).unwrap();
        for i in 0..21 {
            let want = if i == b1 { rep.params.one.clone() } else { rep.params.zero.clone() };
            assert_eq!(rep.gens[0].get(i, 0), &want);
        }
    }

    #[test]
    fn representation_checks_pass() {
        let r = representation_report(11).unwrap();
        assert_eq!(r.dimension, 21);
        assert_eq!(r.rank, 21);
        for c in &r.checks {
            assert_eq!(c.status, Status::Pass, "{c:?}");
        }
    }

    #[test]
    fn level_three_confluence() {
        let r = randomized_confluence_check(3, 100, 12, 5);
        assert_eq!(r.disagreements, 0, "{r:?}");
    }
}
