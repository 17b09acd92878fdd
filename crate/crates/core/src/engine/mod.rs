//! Rewriting engine: reduces braid words to scalars in Z[alpha, beta, z, t]
//! (or in any ring the parameters live in) via the cubic relation, the
//! level rules C1/C2/C12/C21 and the Markov step.
//!
//! Strategy. For a word with top generator `h`, the leftmost pair of
//! `h`-syllables is reduced: the infix between them is normalized one level
//! down, which leaves at most one `l = h-1` syllable, and the local rule for
//! `h^e1 l^d h^e2` is applied with the low letters of the infix commuted out.
//! A word with a single `h`-syllable goes through the Markov step.

pub mod rules;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::io::Write;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::coeff::{Mono, ZPoly, ABZT};
use crate::numeric::Fp;
use rules::{pattern, table1_poly, Weight, C12, C21, R0_REST};

/// Minimal ring interface the engine needs from its coefficients.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }
}

impl Scalar for ZPoly {
    fn is_zero(&self) -> bool {
        ZPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add_assign(&mut self, o: &Self) {
        self.add_assign_ref(o);
    }
}

impl Scalar for Fp {
    fn is_zero(&self) -> bool {
        Fp::is_zero(*self)
    }
    fn add(&self, o: &Self) -> Self {
        Fp::add(*self, *o)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp::mul(*self, *o)
    }
    fn neg(&self) -> Self {
        Fp::neg(*self)
    }
}

/// Values of the four indeterminates in the coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Params<S> {
    pub alpha: S,
    pub beta: S,
    pub z: S,
    pub t: S,
    pub one: S,
    pub zero: S,
}

impl Params<ZPoly> {
    /// The free parameters: coefficients in Z[alpha, beta, z, t].
    pub fn symbolic() -> Self {
        Params {
            alpha: ZPoly::var(ABZT, 0),
            beta: ZPoly::var(ABZT, 1),
            z: ZPoly::var(ABZT, 2),
            t: ZPoly::var(ABZT, 3),
            one: ZPoly::one(ABZT),
            zero: ZPoly::zero(ABZT),
        }
    }
}

impl Params<Fp> {
    pub fn numeric(alpha: Fp, beta: Fp, z: Fp, t: Fp) -> Self {
        Params { alpha, beta, z, t, one: Fp::ONE, zero: Fp::ZERO }
    }
}

impl<S: Scalar> Params<S> {
    /// Evaluates a polynomial in alpha, beta with these parameter values.
    pub fn eval_ab(&self, p: &ZPoly) -> S {
        let mut acc = self.zero.clone();
        for (m, c) in p.terms() {
            let mut v = self.int(c);
            for _ in 0..m.exp(0) {
                v = v.mul(&self.alpha);
            }
            for _ in 0..m.exp(1) {
                v = v.mul(&self.beta);
            }
            acc.add_assign(&v);
        }
        acc
    }

    fn int(&self, c: &num_bigint::BigInt) -> S {
        use num_traits::{Signed, ToPrimitive};
        let mut n = c.abs().to_u64().expect("small table coefficient");
        let mut v = self.zero.clone();
        let mut base = self.one.clone();
        while n > 0 {
            if n & 1 == 1 {
                v.add_assign(&base);
            }
            base = base.add(&base);
            n >>= 1;
        }
        if c.is_negative() {
            v.neg()
        } else {
            v
        }
    }
}

/// One syllable `b_gen ^ exp` of a positive word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Syl {
    pub gen: u8,
    pub exp: u8,
}

/// Positive word; canonical words have exponents in {1, 2} and no two
/// adjacent syllables with the same generator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct PosWord(pub Vec<Syl>);

impl PosWord {
    pub fn empty() -> Self {
        PosWord(Vec::new())
    }

    pub fn from_pairs(pairs: &[(u8, u8)]) -> Self {
        PosWord(pairs.iter().map(|&(gen, exp)| Syl { gen, exp }).collect())
    }

    /// Parses the braid text format restricted to positive syllables.
    pub fn parse(text: &str) -> Option<Self> {
        let w = BraidWord::parse(text).ok()?;
        let mut out = Vec::new();
        for s in w.syllables() {
            if s.exp < 0 || s.exp > u8::MAX as i32 || s.index > u8::MAX as usize {
                return None;
            }
            out.push(Syl { gen: s.index as u8, exp: s.exp as u8 });
        }
        Some(PosWord(out))
    }

    pub fn syls(&self) -> &[Syl] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top(&self) -> u8 {
        top(&self.0)
    }

    pub fn count_gen(&self, g: u8) -> usize {
        self.0.iter().filter(|s| s.gen == g).count()
    }

    pub fn letter_len(&self) -> usize {
        self.0.iter().map(|s| s.exp as usize).sum()
    }

    pub fn is_canonical(&self) -> bool {
        self.0.iter().all(|s| s.exp == 1 || s.exp == 2)
            && self.0.windows(2).all(|w| w[0].gen != w[1].gen)
    }

    pub fn reversed(&self) -> Self {
        PosWord(self.0.iter().rev().copied().collect())
    }

    pub fn to_braid(&self, strands: usize) -> BraidWord {
        let syl = self.0.iter().map(|s| crate::braid::Syllable::new(s.gen as usize, s.exp as i32));
        BraidWord::new(strands, syl).expect("strand count covers the word")
    }
}

fn top(w: &[Syl]) -> u8 {
    w.iter().map(|s| s.gen).max().unwrap_or(0)
}

impl fmt::Display for PosWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| if s.exp == 1 { s.gen.to_string() } else { format!("{}^{}", s.gen, s.exp) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Finite linear combination of positive words, in canonical word order.
#[derive(Clone, PartialEq, Debug)]
pub struct FormalSum<S> {
    level: usize,
    terms: BTreeMap<PosWord, S>,
}

impl<S: Scalar> FormalSum<S> {
    pub fn new(level: usize) -> Self {
        FormalSum { level, terms: BTreeMap::new() }
    }

    pub fn single(level: usize, w: PosWord, c: S) -> Self {
        let mut s = Self::new(level);
        s.add_term(w, c);
        s
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn add_term(&mut self, w: PosWord, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                old.add_assign(&c);
                if old.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_sum(&mut self, other: &Self) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        let mut out = Self::new(self.level);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v.mul(c));
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PosWord, &S)> {
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

    pub fn coeff(&self, w: &PosWord) -> Option<&S> {
        self.terms.get(w)
    }

    fn from_acc(level: usize, acc: Acc<S>) -> Self {
        FormalSum { level, terms: acc.0.into_iter().collect() }
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for FormalSum<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*[{w}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// Unordered accumulator used inside the reduction loops.
struct Acc<S>(HashMap<PosWord, S>);

impl<S: Scalar> Acc<S> {
    fn new() -> Self {
        Acc(HashMap::new())
    }

    fn add(&mut self, w: PosWord, c: S) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&w) {
            Some(old) => {
                old.add_assign(&c);
                if old.is_zero() {
                    self.0.remove(&w);
                }
            }
            None => {
                self.0.insert(w, c);
            }
        }
    }

    fn into_sorted(self) -> Vec<(PosWord, S)> {
        let mut v: Vec<_> = self.0.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `b^3 -> alpha b^2 + beta b + 1`
    C0,
    /// `h l h -> l h l`
    C1,
    /// `h l^2 h -> -R0`
    C2,
    C12,
    C21,
    /// far commutation `b_i b_j -> b_j b_i`, `|i - j| > 1`
    Pij,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost pair of top syllables; `h^2 l^2 h^2` via `h * C12`.
    Canonical,
    /// Random pair of adjacent top syllables and a random side for
    /// `h^2 l^2 h^2`, driven by the given seed.
    Randomized(u64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("step budget of {budget} rule applications exhausted while reducing [{word}]")]
    Budget { budget: u64, word: String },
    #[error("reduction loop detected at [{word}]")]
    Loop { word: String },
    #[error("rule {rule:?} does not match [{word}] at syllable {position}")]
    Mismatch { rule: Rule, word: String, position: usize },
    #[error("word [{word}] is not present in the sum")]
    Absent { word: String },
    #[error("word [{word}] has {count} syllables of b{gen}; normalize the level first")]
    NotNormal { word: String, gen: usize, count: usize },
}

pub const DEFAULT_BUDGET: u64 = 1_000_000;

type Terms<S> = Arc<Vec<(PosWord, S)>>;

pub struct Engine<S: Scalar> {
    params: Params<S>,
    r0: Vec<(S, &'static str)>,
    weights: [S; 5],
    pos_pow: Vec<[S; 3]>,
    neg_pow: Vec<[S; 3]>,
    strategy: Strategy,
    rng: ChaCha8Rng,
    norm_memo: HashMap<PosWord, Terms<S>>,
    trace_memo: HashMap<PosWord, S>,
    active: HashSet<(PosWord, bool)>,
    budget: u64,
    steps: u64,
    peak_terms: usize,
    log: Option<Box<dyn Write + Send>>,
}

impl<S: Scalar> Engine<S> {
    pub fn new(params: Params<S>, strategy: Strategy) -> Self {
        let r0 = R0_REST
            .iter()
            .map(|(name, pat)| (params.eval_ab(&table1_poly(name)).neg(), *pat))
            .collect();
        let weights = [
            params.one.clone(),
            params.alpha.clone(),
            params.alpha.neg(),
            params.beta.clone(),
            params.beta.neg(),
        ];
        let (o, z) = (params.one.clone(), params.zero.clone());
        let pos_pow = vec![
            [o.clone(), z.clone(), z.clone()],
            [z.clone(), o.clone(), z.clone()],
            [z.clone(), z.clone(), o.clone()],
        ];
        // b^-1 = b^2 - alpha b - beta
        let neg_pow = vec![
            [o.clone(), z.clone(), z.clone()],
            [params.beta.neg(), params.alpha.neg(), o.clone()],
        ];
        let seed = match strategy {
            Strategy::Canonical => 0,
            Strategy::Randomized(s) => s,
        };
        Engine {
            params,
            r0,
            weights,
            pos_pow,
            neg_pow,
            strategy,
            rng: ChaCha8Rng::seed_from_u64(seed),
            norm_memo: HashMap::new(),
            trace_memo: HashMap::new(),
            active: HashSet::new(),
            budget: DEFAULT_BUDGET,
            steps: 0,
            peak_terms: 0,
            log: None,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Sends one tab-separated line per rule application to `w`.
    pub fn with_log(mut self, w: Box<dyn Write + Send>) -> Self {
        self.log = Some(w);
        self
    }

    pub fn params(&self) -> &Params<S> {
        &self.params
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Rule applications so far; the budget applies to each top-level trace.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Largest intermediate sum produced by a single rewriting step.
    pub fn peak_terms(&self) -> usize {
        self.peak_terms
    }

    pub fn memo_sizes(&self) -> (usize, usize) {
        (self.norm_memo.len(), self.trace_memo.len())
    }

    fn weight(&self, w: Weight) -> &S {
        &self.weights[w as usize]
    }

    fn pos_triple(&mut self, k: usize) -> [S; 3] {
        while self.pos_pow.len() <= k {
            let [c0, c1, c2] = self.pos_pow.last().unwrap().clone();
            // b * (c0 + c1 b + c2 b^2) with b^3 = alpha b^2 + beta b + 1
            let next = [
                c2.clone(),
                c0.add(&c2.mul(&self.params.beta)),
                c1.add(&c2.mul(&self.params.alpha)),
            ];
            self.pos_pow.push(next);
        }
        self.pos_pow[k].clone()
    }

    fn neg_triple(&mut self, k: usize) -> [S; 3] {
        while self.neg_pow.len() <= k {
            let a = self.neg_pow.last().unwrap().clone();
            let b = self.neg_pow[1].clone();
            let mut d = vec![self.params.zero.clone(); 5];
            for i in 0..3 {
                for j in 0..3 {
                    d[i + j].add_assign(&a[i].mul(&b[j]));
                }
            }
            let p3 = self.pos_triple(3);
            let p4 = self.pos_triple(4);
            let mut next = [d[0].clone(), d[1].clone(), d[2].clone()];
            for i in 0..3 {
                next[i].add_assign(&d[3].mul(&p3[i]));
                next[i].add_assign(&d[4].mul(&p4[i]));
            }
            self.neg_pow.push(next);
        }
        self.neg_pow[k].clone()
    }

    /// Appends `b_g^k` to `w`, merging with a trailing `b_g` and expanding
    /// exponents above 2 by the cubic relation.
    fn append_power(&mut self, mut w: Vec<Syl>, g: u8, k: usize, c: S, out: &mut Vec<(Vec<Syl>, S)>) {
        if k == 0 {
            out.push((w, c));
            return;
        }
        let mut total = k;
        if let Some(last) = w.last() {
            if last.gen == g {
                total += last.exp as usize;
                w.pop();
            }
        }
        if total <= 2 {
            w.push(Syl { gen: g, exp: total as u8 });
            out.push((w, c));
            return;
        }
        let tr = self.pos_triple(total);
        for (j, tj) in tr.iter().enumerate() {
            if tj.is_zero() {
                continue;
            }
            let mut base = w.clone();
            if j > 0 {
                base.push(Syl { gen: g, exp: j as u8 });
            }
            out.push((base, c.mul(tj)));
        }
    }

    /// Canonical form of a product of positive syllables, added into `acc`
    /// with weight `coef`.
    fn canon_into(&mut self, syls: &[(u8, u8)], coef: &S, acc: &mut Acc<S>) {
        let mut cur: Vec<(Vec<Syl>, S)> = vec![(Vec::with_capacity(syls.len()), coef.clone())];
        for &(g, e) in syls {
            if e == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(cur.len());
            for (w, c) in cur {
                self.append_power(w, g, e as usize, c, &mut next);
            }
            cur = next;
        }
        for (w, c) in cur {
            acc.add(PosWord(w), c);
        }
    }

    /// Canonical form (adjacent merging and the cubic relation) of a
    /// positive syllable sequence.
    pub fn canon(&mut self, level: usize, syls: &[(u8, u8)]) -> FormalSum<S> {
        let mut acc = Acc::new();
        let one = self.params.one.clone();
        self.canon_into(syls, &one, &mut acc);
        FormalSum::from_acc(level, acc)
    }

    /// Rewrites every negative power with `b^-1 = b^2 - alpha b - beta` and
    /// brings the result to canonical positive words.
    pub fn positivize(&mut self, w: &BraidWord) -> FormalSum<S> {
        let mut cur: Vec<(Vec<Syl>, S)> = vec![(Vec::new(), self.params.one.clone())];
        for s in w.syllables() {
            let g = s.index as u8;
            let k = s.exp.unsigned_abs() as usize;
            let tr = if s.exp > 0 { self.pos_triple(k) } else { self.neg_triple(k) };
            let mut next = Vec::new();
            for (word, c) in cur {
                for (j, tj) in tr.iter().enumerate() {
                    if !tj.is_zero() {
                        self.append_power(word.clone(), g, j, c.mul(tj), &mut next);
                    }
                }
            }
            // merge duplicates to keep the expansion small
            let mut acc = Acc::new();
            for (word, c) in next {
                acc.add(PosWord(word), c);
            }
            cur = acc.into_sorted().into_iter().map(|(p, c)| (p.0, c)).collect();
        }
        let mut out = FormalSum::new(w.strands());
        for (word, c) in cur {
            out.add_term(PosWord(word), c);
        }
        out
    }

    fn log_line(&mut self, rule: &str, w: &[Syl], position: usize) {
        if let Some(out) = self.log.as_mut() {
            let _ = writeln!(out, "{rule}\t{}\t{position}", PosWord(w.to_vec()));
        }
    }

    fn tick(&mut self, w: &[Syl]) -> Result<(), EngineError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(EngineError::Budget { budget: self.budget, word: PosWord(w.to_vec()).to_string() });
        }
        Ok(())
    }

    fn choose_pair(&mut self, pos: &[usize]) -> (usize, usize) {
        match self.strategy {
            Strategy::Canonical => (pos[0], pos[1]),
            Strategy::Randomized(_) => {
                let k = self.rng.random_range(0..pos.len() - 1);
                (pos[k], pos[k + 1])
            }
        }
    }

    /// Right-hand side for `h^e1 l^d h^e2` as (coefficient, syllables).
    fn rule_terms(&mut self, h: u8, e1: u8, d: u8, e2: u8) -> (&'static str, Vec<(S, Vec<(u8, u8)>)>) {
        let l = h - 1;
        if d == 1 {
            let mut s = Vec::new();
            if e1 > 1 {
                s.push((h, e1 - 1));
            }
            s.extend([(l, 1), (h, 1), (l, 1)]);
            if e2 > 1 {
                s.push((h, e2 - 1));
            }
            return ("C1", vec![(self.params.one.clone(), s)]);
        }
        let mixed = |this: &Self, table: &[(Weight, &str); 5], pre: &[(u8, u8)], post: &[(u8, u8)]| {
            table
                .iter()
                .map(|(wt, p)| {
                    let mut s = pre.to_vec();
                    s.extend(pattern(p, l));
                    s.extend_from_slice(post);
                    (this.weight(*wt).clone(), s)
                })
                .collect::<Vec<_>>()
        };
        match (e1, e2) {
            (1, 1) => ("C2", self.r0.iter().map(|(c, p)| (c.clone(), pattern(p, l))).collect()),
            (1, 2) => ("C12", mixed(self, &C12, &[], &[])),
            (2, 1) => ("C21", mixed(self, &C21, &[], &[])),
            _ => {
                let right_first = match self.strategy {
                    Strategy::Canonical => true,
                    Strategy::Randomized(_) => self.rng.random_bool(0.5),
                };
                if right_first {
                    ("C12", mixed(self, &C12, &[(h, 1)], &[]))
                } else {
                    ("C21", mixed(self, &C21, &[], &[(h, 1)]))
                }
            }
        }
    }

    /// One reduction of the `h`-syllables at positions `p0 < p1`, which must
    /// be consecutive among the `h`-syllables of `w`.
    fn step(&mut self, w: &[Syl], h: u8, p0: usize, p1: usize) -> Result<Acc<S>, EngineError> {
        self.tick(w)?;
        let a: Vec<(u8, u8)> = w[..p0].iter().map(|s| (s.gen, s.exp)).collect();
        let b: Vec<(u8, u8)> = w[p1 + 1..].iter().map(|s| (s.gen, s.exp)).collect();
        let (e1, e2) = (w[p0].exp, w[p1].exp);
        let x = &w[p0 + 1..p1];
        let l = h - 1;
        let mut out = Acc::new();
        let one = self.params.one.clone();
        let merged = |a: &[(u8, u8)], mid: &[Syl], b: &[(u8, u8)]| {
            let mut s = a.to_vec();
            s.extend(mid.iter().map(|s| (s.gen, s.exp)));
            s.push((h, e1));
            s.push((h, e2));
            s.extend_from_slice(b);
            s
        };
        if top(x) < l {
            self.log_line("Pij", w, p0);
            let s = merged(&a, x, &b);
            self.canon_into(&s, &one, &mut out);
            return Ok(out);
        }
        let xs = self.normalize_word(&PosWord(x.to_vec()))?;
        for (xw, c) in xs.iter() {
            let xw = xw.syls();
            match xw.iter().position(|s| s.gen == l) {
                None => {
                    let s = merged(&a, xw, &b);
                    self.canon_into(&s, c, &mut out);
                }
                Some(k) => {
                    let (name, terms) = self.rule_terms(h, e1, xw[k].exp, e2);
                    self.log_line(name, w, p0);
                    for (c1, rhs) in terms {
                        let mut s = a.clone();
                        s.extend(xw[..k].iter().map(|s| (s.gen, s.exp)));
                        s.extend(rhs);
                        s.extend(xw[k + 1..].iter().map(|s| (s.gen, s.exp)));
                        s.extend_from_slice(&b);
                        let coef = c.mul(&c1);
                        self.canon_into(&s, &coef, &mut out);
                    }
                }
            }
        }
        self.peak_terms = self.peak_terms.max(out.0.len());
        Ok(out)
    }

    /// Normal form of a canonical positive word: every output word has at
    /// most one syllable of the input's top generator, recursively below.
    pub fn normalize_word(&mut self, w: &PosWord) -> Result<Terms<S>, EngineError> {
        if let Some(r) = self.norm_memo.get(w) {
            return Ok(r.clone());
        }
        let h = w.top();
        let pos: Vec<usize> = w.0.iter().enumerate().filter(|(_, s)| s.gen == h).map(|(i, _)| i).collect();
        if pos.len() <= 1 {
            let r = Arc::new(vec![(w.clone(), self.params.one.clone())]);
            self.norm_memo.insert(w.clone(), r.clone());
            return Ok(r);
        }
        let key = (w.clone(), false);
        if !self.active.insert(key.clone()) {
            return Err(EngineError::Loop { word: w.to_string() });
        }
        let (p0, p1) = self.choose_pair(&pos);
        let st = self.step(&w.0, h, p0, p1)?;
        let mut acc = Acc::new();
        for (w2, c) in st.into_sorted() {
            let sub = self.normalize_word(&w2)?;
            for (w3, c3) in sub.iter() {
                acc.add(w3.clone(), c.mul(c3));
            }
        }
        self.active.remove(&key);
        let r = Arc::new(acc.into_sorted());
        self.norm_memo.insert(w.clone(), r.clone());
        Ok(r)
    }

    /// Markov trace of a canonical positive word.
    pub fn trace_word(&mut self, w: &PosWord) -> Result<S, EngineError> {
        if w.is_empty() {
            return Ok(self.params.one.clone());
        }
        if let Some(v) = self.trace_memo.get(w) {
            return Ok(v.clone());
        }
        let key = (w.clone(), true);
        if !self.active.insert(key.clone()) {
            return Err(EngineError::Loop { word: w.to_string() });
        }
        let h = w.top();
        let pos: Vec<usize> = w.0.iter().enumerate().filter(|(_, s)| s.gen == h).map(|(i, _)| i).collect();
        let mut total = self.params.zero.clone();
        if pos.len() == 1 {
            let k = pos[0];
            self.tick(&w.0)?;
            let factor = if w.0[k].exp == 1 {
                self.log_line("M1", &w.0, k);
                self.params.z.clone()
            } else {
                self.log_line("M2", &w.0, k);
                self.params.t.clone()
            };
            let rest: Vec<(u8, u8)> =
                w.0.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, s)| (s.gen, s.exp)).collect();
            let mut acc = Acc::new();
            self.canon_into(&rest, &factor, &mut acc);
            for (w2, c) in acc.into_sorted() {
                let v = self.trace_word(&w2)?;
                total.add_assign(&c.mul(&v));
            }
        } else {
            let (p0, p1) = self.choose_pair(&pos);
            let st = self.step(&w.0, h, p0, p1)?;
            for (w2, c) in st.into_sorted() {
                let v = self.trace_word(&w2)?;
                total.add_assign(&c.mul(&v));
            }
        }
        self.active.remove(&key);
        self.trace_memo.insert(w.clone(), total.clone());
        Ok(total)
    }

    fn reset_run(&mut self) {
        self.steps = 0;
        self.active.clear();
    }

    pub fn trace_sum(&mut self, s: &FormalSum<S>) -> Result<S, EngineError> {
        self.reset_run();
        let mut total = self.params.zero.clone();
        for (w, c) in s.iter() {
            let v = self.trace_word(w)?;
            total.add_assign(&c.mul(&v));
        }
        Ok(total)
    }

    /// Unnormalized Markov trace of a braid.
    pub fn trace_raw(&mut self, w: &BraidWord) -> Result<S, EngineError> {
        let s = self.positivize(w);
        self.trace_sum(&s)
    }

    /// Trace of a canonical word whose first rewriting step is forced onto
    /// the top-generator syllables at positions `p0 < p1` (consecutive among
    /// the top syllables); the rest follows the strategy.
    pub fn trace_with_first_step(&mut self, w: &PosWord, p0: usize, p1: usize) -> Result<S, EngineError> {
        self.reset_run();
        let h = w.top();
        let pos: Vec<usize> = w.0.iter().enumerate().filter(|(_, s)| s.gen == h).map(|(i, _)| i).collect();
        let k = pos.iter().position(|&p| p == p0);
        if k.is_none() || pos.get(k.unwrap() + 1) != Some(&p1) {
            return Err(EngineError::Mismatch { rule: Rule::C2, word: w.to_string(), position: p0 });
        }
        let st = self.step(&w.0, h, p0, p1)?;
        let mut total = self.params.zero.clone();
        for (w2, c) in st.into_sorted() {
            let v = self.trace_word(&w2)?;
            total.add_assign(&c.mul(&v));
        }
        Ok(total)
    }

    /// Brings every word to at most one syllable of `b_{n-1}`.
    pub fn normalize_level(&mut self, s: &FormalSum<S>, n: usize) -> Result<FormalSum<S>, EngineError> {
        self.reset_run();
        let g = (n as u8).saturating_sub(1);
        let mut out = FormalSum::new(n);
        for (w, c) in s.iter() {
            if g == 0 || w.count_gen(g) <= 1 {
                out.add_term(w.clone(), c.clone());
                continue;
            }
            for (w2, c2) in self.normalize_word(w)?.iter() {
                out.add_term(w2.clone(), c.mul(c2));
            }
        }
        Ok(out)
    }

    /// Replaces `x b_{n-1} y` by `z xy` and `x b_{n-1}^2 y` by `t xy`.
    pub fn markov_step(&mut self, s: &FormalSum<S>, n: usize) -> Result<FormalSum<S>, EngineError> {
        let g = (n as u8).saturating_sub(1);
        let mut out = FormalSum::new(n.saturating_sub(1).max(1));
        for (w, c) in s.iter() {
            let pos: Vec<usize> = w.0.iter().enumerate().filter(|(_, s)| s.gen == g).map(|(i, _)| i).collect();
            match pos.len() {
                0 => out.add_term(w.clone(), c.clone()),
                1 => {
                    let k = pos[0];
                    let factor = match w.0[k].exp {
                        1 => self.params.z.clone(),
                        2 => self.params.t.clone(),
                        _ => {
                            return Err(EngineError::NotNormal { word: w.to_string(), gen: g as usize, count: 1 })
                        }
                    };
                    let rest: Vec<(u8, u8)> =
                        w.0.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, s)| (s.gen, s.exp)).collect();
                    let mut acc = Acc::new();
                    self.canon_into(&rest, &c.mul(&factor), &mut acc);
                    for (w2, c2) in acc.into_sorted() {
                        out.add_term(w2, c2);
                    }
                }
                count => return Err(EngineError::NotNormal { word: w.to_string(), gen: g as usize, count }),
            }
        }
        Ok(out)
    }

    /// The trace computed level by level: normalize, Markov step, repeat.
    pub fn trace_by_levels(&mut self, w: &BraidWord) -> Result<S, EngineError> {
        let mut s = self.positivize(w);
        let mut n = w.strands();
        while n > 1 {
            s = self.normalize_level(&s, n)?;
            s = self.markov_step(&s, n)?;
            n -= 1;
        }
        let mut total = self.params.zero.clone();
        for (word, c) in s.iter() {
            debug_assert!(word.is_empty());
            total.add_assign(c);
        }
        Ok(total)
    }

    /// Applies one named rule to `word` at syllable `position` inside `s`.
    pub fn apply_rule(
        &mut self,
        s: &FormalSum<S>,
        rule: Rule,
        word: &PosWord,
        position: usize,
    ) -> Result<FormalSum<S>, EngineError> {
        let coef = s.coeff(word).cloned().ok_or_else(|| EngineError::Absent { word: word.to_string() })?;
        let syl = word.syls();
        let mismatch = || EngineError::Mismatch { rule, word: word.to_string(), position };
        let get = |i: usize| syl.get(i).map(|s| (s.gen, s.exp));
        let (len, rhs): (usize, Vec<(S, Vec<(u8, u8)>)>) = match rule {
            Rule::C0 => {
                let (g, e) = get(position).ok_or_else(mismatch)?;
                if e < 3 {
                    return Err(mismatch());
                }
                let tr = self.pos_triple(e as usize);
                (1, (0..3).map(|j| (tr[j].clone(), if j == 0 { vec![] } else { vec![(g, j as u8)] })).collect())
            }
            Rule::Pij => {
                let (i, e) = get(position).ok_or_else(mismatch)?;
                let (j, f) = get(position + 1).ok_or_else(mismatch)?;
                if i.abs_diff(j) < 2 {
                    return Err(mismatch());
                }
                (2, vec![(self.params.one.clone(), vec![(j, f), (i, e)])])
            }
            _ => {
                let (h, e1) = get(position).ok_or_else(mismatch)?;
                let (l, d) = get(position + 1).ok_or_else(mismatch)?;
                let (h2, e2) = get(position + 2).ok_or_else(mismatch)?;
                if h != h2 || l + 1 != h {
                    return Err(mismatch());
                }
                let ok = match rule {
                    Rule::C1 => (e1, d, e2) == (1, 1, 1),
                    Rule::C2 => (e1, d, e2) == (1, 2, 1),
                    Rule::C12 => (e1, d, e2) == (1, 2, 2),
                    Rule::C21 => (e1, d, e2) == (2, 2, 1),
                    _ => unreachable!(),
                };
                if !ok {
                    return Err(mismatch());
                }
                (3, self.rule_terms(h, e1, d, e2).1)
            }
        };
        let prefix: Vec<(u8, u8)> = syl[..position].iter().map(|s| (s.gen, s.exp)).collect();
        let suffix: Vec<(u8, u8)> = syl[position + len..].iter().map(|s| (s.gen, s.exp)).collect();
        let mut out = s.clone();
        out.add_term(word.clone(), coef.neg());
        let mut acc = Acc::new();
        for (c1, mid) in rhs {
            let mut seq = prefix.clone();
            seq.extend(mid);
            seq.extend_from_slice(&suffix);
            self.canon_into(&seq, &coef.mul(&c1), &mut acc);
        }
        for (w, c) in acc.into_sorted() {
            out.add_term(w, c);
        }
        Ok(out)
    }
}

/// The relation elements `R0 = h l^2 h + sum`, `R1 = l R0`, `R2 = l R1` at
/// level 3 (letters b1, b2), as formal sums with coefficients in alpha, beta.
pub fn relation_elements<S: Scalar>(engine: &mut Engine<S>) -> [FormalSum<S>; 3] {
    let one = engine.params.one.clone();
    let mut r0 = FormalSum::new(3);
    r0.add_term(PosWord::from_pairs(&[(2, 1), (1, 2), (2, 1)]), one.clone());
    for (c, p) in engine.r0.clone() {
        r0.add_term(PosWord::from_pairs(&pattern(p, 1)), c.neg());
    }
    let left_mul = |engine: &mut Engine<S>, s: &FormalSum<S>| {
        let mut acc = FormalSum::new(3);
        for (w, c) in s.iter() {
            let mut seq = vec![(1u8, 1u8)];
            seq.extend(w.syls().iter().map(|s| (s.gen, s.exp)));
            acc.add_sum(&engine.canon(3, &seq).scaled(c));
        }
        acc
    };
    let r1 = left_mul(engine, &r0);
    let r2 = left_mul(engine, &r1);
    [r0, r1, r2]
}

/// Joint degree in (z, t) of a raw trace.
pub fn zt_degree(p: &ZPoly) -> Option<i32> {
    p.degree_in_set(&[2, 3])
}

/// `alpha^i beta^j z^k t^l` as a raw-trace monomial.
pub fn abzt(c: i64, e: [i32; 4]) -> ZPoly {
    ZPoly::monomial(ABZT, Mono(e), num_bigint::BigInt::from(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> Engine<ZPoly> {
        Engine::new(Params::symbolic(), Strategy::Canonical)
    }

    fn p(s: &str) -> ZPoly {
        crate::coeff::QPoly::parse(ABZT, s).unwrap().to_z().unwrap()
    }

    #[test]
    fn small_traces() {
        let mut e = sym();
        assert_eq!(e.trace_raw(&BraidWord::identity(1)).unwrap(), p("1"));
        assert_eq!(e.trace_raw(&BraidWord::parse("1").unwrap()).unwrap(), p("z"));
        assert_eq!(e.trace_raw(&BraidWord::parse("1^3").unwrap()).unwrap(), p("alpha*t + beta*z + 1"));
        assert_eq!(e.trace_raw(&BraidWord::parse("-1").unwrap()).unwrap(), p("t - alpha*z - beta"));
    }

    #[test]
    fn positivize_inverse() {
        let mut e = sym();
        let s = e.positivize(&BraidWord::parse("-1").unwrap());
        assert_eq!(s.len(), 3);
        assert_eq!(s.coeff(&PosWord::from_pairs(&[(1, 2)])), Some(&p("1")));
        assert_eq!(s.coeff(&PosWord::from_pairs(&[(1, 1)])), Some(&p("-alpha")));
        assert_eq!(s.coeff(&PosWord::empty()), Some(&p("-beta")));
    }

    #[test]
    fn level_route_matches_memo_route() {
        for text in ["1 -2 1 -2", "1^2 2^2 -1 2", "1 2 1 2 1 2^2 1"] {
            let w = BraidWord::parse(text).unwrap();
            let a = sym().trace_raw(&w).unwrap();
            let b = sym().trace_by_levels(&w).unwrap();
            assert_eq!(a, b, "{text}");
        }
    }

    #[test]
    fn apply_rule_examples() {
        let mut e = sym();
        let w = PosWord::from_pairs(&[(2, 1), (1, 1), (2, 1)]);
        let s = FormalSum::single(3, w.clone(), p("1"));
        let r = e.apply_rule(&s, Rule::C1, &w, 0).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r.coeff(&PosWord::from_pairs(&[(1, 1), (2, 1), (1, 1)])).is_some());
        assert!(e.apply_rule(&s, Rule::C2, &w, 0).is_err());

        let w = PosWord::from_pairs(&[(2, 1), (1, 2), (2, 2)]);
        let s = FormalSum::single(3, w.clone(), p("1"));
        let r = e.apply_rule(&s, Rule::C12, &w, 0).unwrap();
        assert_eq!(r.len(), 5);
        assert_eq!(r.coeff(&PosWord::from_pairs(&[(2, 2), (1, 1)])), Some(&p("-beta")));

        let w = PosWord::from_pairs(&[(1, 1), (3, 1)]);
        let s = FormalSum::single(4, w.clone(), p("1"));
        let r = e.apply_rule(&s, Rule::Pij, &w, 0).unwrap();
        assert!(r.coeff(&PosWord::from_pairs(&[(3, 1), (1, 1)])).is_some());
    }

    #[test]
    fn budget_is_enforced() {
        let mut e = sym().with_budget(3);
        let r = e.trace_raw(&BraidWord::parse("1 2 1 2 1 2^2 1").unwrap());
        assert!(matches!(r, Err(EngineError::Budget { .. })));
    }
}
