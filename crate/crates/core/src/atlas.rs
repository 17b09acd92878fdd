//! Bundled knot table (braid representatives and published coefficient rows
//! of `I_(alpha,0)` and `I_(0,beta)` for knots up to eight crossings) and the
//! reproduction runner.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::coeff::{Mono, PrincipalModulus, QPoly, ZPoly, ALPHA, BETA, Q};
use crate::engine::{Engine, Params, Strategy};
use crate::invariants::{
    alpha0_modulus, beta0_modulus, cubical_t_tilde, cubical_type_ii, cubical_univariate, normalize_invariant,
    trace_raw, Family,
};
use crate::{Error, Result};

const ATLAS_JSON: &str = include_str!("../data/atlas.json");

#[derive(Deserialize)]
struct AtlasFile {
    version: u32,
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    name: String,
    braid: String,
    i_alpha: BTreeMap<String, String>,
    i_beta: BTreeMap<String, String>,
    amphicheiral: bool,
}

#[derive(Clone, Debug)]
pub struct AtlasEntry {
    pub name: String,
    pub braid: BraidWord,
    /// Published coefficients of `I_(alpha,0)` by exponent of alpha.
    pub i_alpha: BTreeMap<i32, Q>,
    /// Published coefficients of `I_(0,beta)` by exponent of beta.
    pub i_beta: BTreeMap<i32, Q>,
    pub amphicheiral: bool,
}

impl AtlasEntry {
    pub fn crossings(&self) -> u32 {
        self.name.split('.').next().and_then(|c| c.parse().ok()).unwrap_or(0)
    }

    pub fn published_beta0(&self) -> QPoly {
        row_poly(&self.i_alpha, ALPHA)
    }

    pub fn published_alpha0(&self) -> QPoly {
        row_poly(&self.i_beta, BETA)
    }

    /// Lower bounds for the exponents of the two columns implied by the
    /// normalization: `(e - 3(n-1))/2` for alpha and `-(e + 3(n-1))/2` for beta.
    pub fn exponent_bounds(&self) -> (i64, i64) {
        let e = self.braid.exponent_sum();
        let m = 3 * (self.braid.strands() as i64 - 1);
        ((e - m) / 2, -(e + m) / 2)
    }
}

fn row_poly(row: &BTreeMap<i32, Q>, vars: crate::coeff::Vars) -> QPoly {
    QPoly::from_terms(vars, row.iter().map(|(k, c)| (Mono::from_slice(&[*k]), c.clone())))
}

fn parse_row(name: &str, row: &BTreeMap<String, String>) -> Result<BTreeMap<i32, Q>> {
    let bad = |what: &str| Error::Check(format!("atlas row {name}: bad {what}"));
    let mut out = BTreeMap::new();
    for (k, v) in row {
        let k: i32 = k.parse().map_err(|_| bad("exponent"))?;
        if k % 3 != 0 {
            return Err(bad("exponent (not a multiple of 3)"));
        }
        let v: Q = v.parse().map_err(|_| bad("coefficient"))?;
        out.insert(k, v);
    }
    Ok(out)
}

fn load() -> Result<Vec<AtlasEntry>> {
    let file: AtlasFile =
        serde_json::from_str(ATLAS_JSON).map_err(|e| Error::Check(format!("atlas json: {e}")))?;
    if file.version != 1 {
        return Err(Error::Check(format!("unsupported atlas version {}", file.version)));
    }
    let mut out = Vec::with_capacity(file.entries.len());
    for r in file.entries {
        let braid = BraidWord::parse(&r.braid)?;
        let entry = AtlasEntry {
            i_alpha: parse_row(&r.name, &r.i_alpha)?,
            i_beta: parse_row(&r.name, &r.i_beta)?,
            name: r.name,
            braid,
            amphicheiral: r.amphicheiral,
        };
        let check = anchor_check(&entry);
        if !check.within_bounds {
            return Err(Error::Check(format!(
                "atlas row {}: published exponents below the normalization bound",
                entry.name
            )));
        }
        out.push(entry);
    }
    Ok(out)
}

/// All table rows, loaded and cross-checked once.
pub fn atlas_entries() -> &'static [AtlasEntry] {
    static ENTRIES: OnceLock<Vec<AtlasEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| load().unwrap_or_else(|e| panic!("bundled atlas: {e}")))
}

pub fn entry(name: &str) -> Result<&'static AtlasEntry> {
    atlas_entries().iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// Lowest published exponents against the normalization bounds.
#[derive(Clone, Debug, Serialize)]
pub struct AnchorCheck {
    pub name: String,
    pub bound_alpha: i64,
    pub lowest_alpha: Option<i32>,
    pub bound_beta: i64,
    pub lowest_beta: Option<i32>,
    pub within_bounds: bool,
    /// Both lowest exponents equal their bounds.
    pub exact: bool,
}

pub fn anchor_check(e: &AtlasEntry) -> AnchorCheck {
    let (ba, bb) = e.exponent_bounds();
    let la = e.i_alpha.iter().find(|(_, c)| !num_traits::Zero::is_zero(*c)).map(|(k, _)| *k);
    let lb = e.i_beta.iter().find(|(_, c)| !num_traits::Zero::is_zero(*c)).map(|(k, _)| *k);
    let ok = |l: Option<i32>, b: i64| l.is_none_or(|l| l as i64 >= b);
    let eq = |l: Option<i32>, b: i64| l.is_some_and(|l| l as i64 == b);
    AnchorCheck {
        name: e.name.clone(),
        bound_alpha: ba,
        lowest_alpha: la,
        bound_beta: bb,
        lowest_beta: lb,
        within_bounds: ok(la, ba) && ok(lb, bb),
        exact: eq(la, ba) && eq(lb, bb),
    }
}

/// For an amphicheiral knot `I_(alpha,0)(alpha) = I_(0,beta)(-alpha)`; this
/// compares the two published rows modulo `8 alpha^6 + 17 alpha^3 + 8`.
pub fn amphicheiral_rows_consistent(e: &AtlasEntry) -> bool {
    let swapped = QPoly::from_terms(
        ALPHA,
        e.i_beta.iter().map(|(k, c)| (Mono::from_slice(&[*k]), if k % 2 == 0 { c.clone() } else { -c.clone() })),
    );
    beta0_modulus().divides(&(&e.published_beta0() - &swapped)).unwrap_or(false)
}

#[derive(Clone, Debug, Serialize)]
pub struct ColumnReport {
    pub published: String,
    pub computed: String,
    pub published_remainder: String,
    pub computed_remainder: String,
    /// `computed - published` lies in the ideal of the specialized modulus.
    pub congruent: bool,
    pub syntactic: bool,
    /// Exponents of the computed value lie in one class mod 3.
    pub single_residue_class: bool,
}

fn column(published: QPoly, computed: QPoly, m: &PrincipalModulus) -> Result<ColumnReport> {
    let pr = m.remainder_laurent(&published)?;
    let cr = m.remainder_laurent(&computed)?;
    Ok(ColumnReport {
        congruent: pr == cr,
        syntactic: published == computed,
        single_residue_class: cubical_univariate(&computed).holds,
        published: published.to_string(),
        computed: computed.to_string(),
        published_remainder: pr.to_string(),
        computed_remainder: cr.to_string(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub braid: String,
    pub pass: bool,
    pub beta0: ColumnReport,
    pub alpha0: ColumnReport,
    /// Monomials of `T~` satisfy `p - q = e (mod 3)`.
    pub t_tilde_cubical: bool,
    /// The type II value is a Laurent polynomial in z, delta.
    pub type_ii_laurent: bool,
    pub type_ii_cubical: bool,
    pub amphicheiral: bool,
    /// Published rows consistent with the swap symmetry (amphicheiral rows only).
    pub swap_consistent: Option<bool>,
    #[serde(skip)]
    pub wall_ms: u128,
    pub peak_terms: usize,
}

/// Recomputes one row with a fresh engine.
pub fn reproduce_entry(name: &str, budget: u64) -> Result<EntryReport> {
    reproduce(entry(name)?, budget)
}

fn reproduce(e: &AtlasEntry, budget: u64) -> Result<EntryReport> {
    let start = Instant::now();
    let mut engine: Engine<ZPoly> = Engine::new(Params::symbolic(), Strategy::Canonical).with_budget(budget);
    let raw = trace_raw(&mut engine, &e.braid)?;
    let v1 = normalize_invariant(&raw, &e.braid, Family::TypeI)?;
    let (b0, a0) = match (v1.beta0(), v1.alpha0()) {
        (Some(b), Some(a)) => (b, a),
        _ => return Err(Error::Check(format!("atlas row {} is not a knot", e.name))),
    };
    let beta0 = column(e.published_beta0(), b0, beta0_modulus())?;
    let alpha0 = column(e.published_alpha0(), a0, alpha0_modulus())?;
    let (type_ii_laurent, type_ii_cubical) = match normalize_invariant(&raw, &e.braid, Family::TypeII) {
        Ok(v2) => (true, v2.type_ii_laurent().map(|p| cubical_type_ii(&p).holds).unwrap_or(false)),
        Err(Error::Coeff(crate::coeff::CoeffError::NotLaurent { .. })) => (false, false),
        Err(err) => return Err(err),
    };
    Ok(EntryReport {
        name: e.name.clone(),
        braid: e.braid.to_string(),
        pass: beta0.congruent && alpha0.congruent,
        beta0,
        alpha0,
        t_tilde_cubical: cubical_t_tilde(&v1).holds,
        type_ii_laurent,
        type_ii_cubical,
        amphicheiral: e.amphicheiral,
        swap_consistent: e.amphicheiral.then(|| amphicheiral_rows_consistent(e)),
        wall_ms: start.elapsed().as_millis(),
        peak_terms: engine.peak_terms(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TableSummary {
    pub entries: Vec<EntryReport>,
    pub passed: usize,
    pub total: usize,
    pub all_pass: bool,
    #[serde(skip)]
    pub wall_ms: u128,
}

/// Reproduces the named rows (all rows if `names` is `None`) on `jobs`
/// worker threads; the report is ordered as in the table.
pub fn reproduce_all(names: Option<&[String]>, jobs: usize, budget: u64) -> Result<TableSummary> {
    let start = Instant::now();
    let selected: Vec<&AtlasEntry> = match names {
        None => atlas_entries().iter().collect(),
        Some(ns) => {
            for n in ns {
                entry(n)?;
            }
            atlas_entries().iter().filter(|e| ns.contains(&e.name)).collect()
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Check(format!("thread pool: {e}")))?;
    let results: Vec<Result<EntryReport>> = pool.install(|| selected.par_iter().map(|e| reproduce(e, budget)).collect());
    let entries = results.into_iter().collect::<Result<Vec<_>>>()?;
    let passed = entries.iter().filter(|r| r.pass).count();
    Ok(TableSummary {
        total: entries.len(),
        all_pass: passed == entries.len(),
        passed,
        entries,
        wall_ms: start.elapsed().as_millis(),
    })
}

/// Plain-text rendering in the layout of the published table.
pub fn render_table(s: &TableSummary) -> String {
    let mut out = String::new();
    out.push_str(&format!("{:<6} {:<28} {:<6} {:<40} {:<40}\n", "knot", "braid", "result", "I(alpha,0)", "I(0,beta)"));
    for r in &s.entries {
        let flag = if r.amphicheiral { " A" } else { "" };
        out.push_str(&format!(
            "{:<6} {:<28} {:<6} {:<40} {:<40}{}\n",
            r.name,
            r.braid,
            if r.pass { "PASS" } else { "FAIL" },
            r.beta0.computed,
            r.alpha0.computed,
            flag
        ));
        for (label, c) in [("alpha", &r.beta0), ("beta", &r.alpha0)] {
            if !c.congruent {
                out.push_str(&format!("       {label} column: published {} differs\n", c.published));
            }
        }
    }
    out.push_str(&format!("{}/{} rows pass, {} ms\n", s.passed, s.total, s.wall_ms));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_all_rows() {
        let rows = atlas_entries();
        assert_eq!(rows.len(), 35);
        let e = entry("3.1").unwrap();
        assert_eq!(e.braid.to_string(), "1^3");
        assert_eq!(e.i_alpha[&3], crate::coeff::q(-1, 4));
        assert_eq!(entry("8.19").unwrap().braid.to_string(), "1 2 1 2 1 2^2 1");
        assert!(entry("4.1").unwrap().amphicheiral);
        assert!(entry("9.42").is_err());
    }

    #[test]
    fn trefoil_row_is_syntactic() {
        let r = reproduce_entry("3.1", crate::engine::DEFAULT_BUDGET).unwrap();
        assert!(r.pass && r.beta0.syntactic && r.alpha0.syntactic);
    }

    #[test]
    fn amphicheiral_rows_swap() {
        for e in atlas_entries().iter().filter(|e| e.amphicheiral) {
            assert!(amphicheiral_rows_consistent(e), "{}", e.name);
        }
    }
}
