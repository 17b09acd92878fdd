use std::fs::File;
use std::io::{BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cubic_skein::atlas::{atlas_entries, render_table, reproduce_all};
use cubic_skein::braid::BraidWord;
use cubic_skein::coeff::ZPoly;
use cubic_skein::engine::{Engine, Params, Strategy, DEFAULT_BUDGET};
use cubic_skein::invariants::{invariant, Family, Spec};
use cubic_skein::obstructions as ob;
use cubic_skein::oracle::oracle_report;
use cubic_skein::properties::{property_suite, PropertyConfig};

#[derive(Parser)]
#[command(name = "cubic-skein", version, about = "Link invariants from Markov traces on cubic Hecke algebras")]
struct Cli {
    /// Maximum rule applications per trace.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write one tab-separated line per rule application to this file.
    #[arg(long, global = true)]
    trace_log: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::I => Family::TypeI,
            FamilyArg::II => Family::TypeII,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SpecArg {
    #[value(name = "alpha0")]
    Alpha0,
    #[value(name = "beta0")]
    Beta0,
    None,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Suite {
    Cpc,
    Lmn,
    Traceq,
    Zp,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariant of the closure of a braid word such as "1 -2 1^3".
    Invariant {
        #[arg(long)]
        braid: String,
        /// Number of strands; defaults to one more than the largest generator.
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long, value_enum, default_value = "I")]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "none")]
        spec: SpecArg,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the knot table.
    Table {
        /// Comma-separated row names, e.g. "3.1,4.1".
        #[arg(long, value_delimiter = ',')]
        filter: Option<Vec<String>>,
        #[arg(long, env = "CUBIC_SKEIN_JOBS")]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// The obstruction identities.
    Obstructions {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Restrict the CPC and L, M, N suites to one family.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
    },
    /// Regular representation checks and randomized confluence.
    Oracle {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        maxlen: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Markov, conjugation, reversal, dagger and strategy checks at random points.
    Properties {
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Words per level for n <= 4 (a fifth of this, at least 100, for n = 5).
        #[arg(long, default_value_t = 500)]
        words: usize,
        #[arg(long, default_value_t = 12)]
        maxlen: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Quick run of the oracle, the obstructions and the table up to 7 crossings.
    Selftest {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, env = "CUBIC_SKEIN_JOBS")]
        jobs: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<cubic_skein::Error> for Failure {
    fn from(e: cubic_skein::Error) -> Self {
        match e {
            cubic_skein::Error::Braid(b) => Failure::Usage(b.to_string()),
            cubic_skein::Error::UnknownEntry(n) => Failure::Usage(format!("unknown atlas entry `{n}`")),
            other => Failure::Compute(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn jobs(j: Option<usize>) -> usize {
    j.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn print_json(v: &impl serde::Serialize) {
    let text = serde_json::to_string_pretty(v).expect("serializable report");
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn families(f: Option<FamilyArg>) -> Vec<Family> {
    match f {
        Some(f) => vec![f.into()],
        None => vec![Family::TypeI, Family::TypeII],
    }
}

fn engine(cli: &Cli) -> Result<Engine<ZPoly>, Failure> {
    let mut e = Engine::new(Params::symbolic(), Strategy::Canonical).with_budget(cli.budget);
    if let Some(path) = &cli.trace_log {
        let f = File::create(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        e = e.with_log(Box::new(BufWriter::new(f)));
    }
    Ok(e)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.cmd {
        Cmd::Invariant { braid, strands, family, spec, json } => {
            let w = BraidWord::parse_with_strands(braid, *strands).map_err(|e| Failure::Usage(e.to_string()))?;
            let family: Family = (*family).into();
            let spec = match (spec, family) {
                (SpecArg::None, _) => None,
                (SpecArg::Alpha0, Family::TypeI) => Some(Spec::Alpha0),
                (SpecArg::Beta0, Family::TypeI) => Some(Spec::Beta0),
                _ => return Err(Failure::Usage("alpha0 and beta0 specialize the type I family".into())),
            };
            let mut e = engine(cli)?;
            let v = invariant(&mut e, &w, family)?;
            if *json {
                print_json(&v.record(spec));
            } else {
                match spec {
                    Some(s) => match v.specialized(s) {
                        Some(sp) => println!("{}", sp.value),
                        None => println!("T~ = {}  (link with an even number of components)", v.t_tilde),
                    },
                    None => match family {
                        Family::TypeI => println!("T~ = {}", v.t_tilde),
                        Family::TypeII => match v.type_ii_laurent() {
                            Some(p) => println!("{p}"),
                            None => println!("T = {}", v.t_tilde),
                        },
                    },
                }
            }
            Ok(true)
        }
        Cmd::Table { filter, jobs: j, json } => {
            let s = reproduce_all(filter.as_deref(), jobs(*j), cli.budget)?;
            if *json {
                print_json(&s);
            } else {
                print!("{}", render_table(&s));
            }
            Ok(s.all_pass)
        }
        Cmd::Obstructions { suite, family } => {
            let mut e = engine(cli)?;
            let (report, pass) = obstructions(&mut e, *suite, &families(*family))?;
            print_json(&report);
            Ok(pass)
        }
        Cmd::Oracle { trials, maxlen, seed } => {
            let r = oracle_report(*trials, *maxlen, *seed)?;
            print_json(&r);
            Ok(r.all_pass())
        }
        Cmd::Properties { family, words, maxlen, seed } => {
            let cfg = PropertyConfig {
                words_small: *words,
                words_large: (*words / 5).max(100),
                maxlen: *maxlen,
                seed: *seed,
                ..Default::default()
            };
            let reports: Vec<_> = families(*family).into_iter().flat_map(|f| property_suite(f, &cfg)).collect();
            print_json(&reports);
            Ok(reports.iter().all(|r| r.pass()))
        }
        Cmd::Selftest { trials, jobs: j } => selftest(cli, *trials, jobs(*j)),
    }
}

fn obstructions(e: &mut Engine<ZPoly>, suite: Suite, fams: &[Family]) -> Result<(Value, bool), Failure> {
    let want = |s: Suite| suite == s || suite == Suite::All;
    let mut out = serde_json::Map::new();
    let mut pass = true;
    if want(Suite::Cpc) {
        let mut per = serde_json::Map::new();
        for &f in fams {
            let mut couples = Vec::new();
            for c in ob::cpc_couples() {
                couples.push(ob::cpc_obstruction(e, &c, f)?);
            }
            pass &= couples.iter().all(|c| c.divisible);
            let mut entry = json!({ "couples": couples, "block_order": ob::cpc_block_order(e, f)? });
            if f == Family::TypeI {
                let ids = ob::cpc_identities(&ob::cpc_type_i_differences(e, false)?);
                pass &= ids.iter().all(|i| i.holds);
                entry["identities"] = json!(ids);
                entry["block_order_identities"] = json!(ob::cpc_identities(&ob::cpc_type_i_differences(e, true)?));
            }
            per.insert(f.to_string(), entry);
        }
        out.insert("cpc".into(), Value::Object(per));
    }
    if want(Suite::Lmn) {
        let mut per = serde_json::Map::new();
        for &f in fams {
            let r = ob::lmn_identity_check(f)?;
            pass &= r.iter().all(|x| x.exact);
            per.insert(f.to_string(), json!(r));
        }
        out.insert("lmn".into(), Value::Object(per));
        let t = ob::transcription_checks();
        pass &= t.iter().all(|x| x.ok);
        out.insert("transcription".into(), json!(t));
    }
    if want(Suite::Traceq) {
        let t = ob::trace_equations(e)?;
        pass &= t.matches_printed == [true; 2] && t.vanish_type_i == [true; 2] && t.vanish_type_ii == [true; 2];
        out.insert("traceq".into(), json!(t));
    }
    if want(Suite::Zp) {
        let z = ob::zp_identity_check()?;
        pass &= z.exact && z.perturbation_detected;
        out.insert("zp".into(), json!(z));
    }
    out.insert("pass".into(), json!(pass));
    Ok((Value::Object(out), pass))
}

fn selftest(cli: &Cli, trials: usize, jobs: usize) -> Outcome {
    let mut all = true;
    let mut line = |ok: bool, what: &str| {
        all &= ok;
        println!("[{}] {what}", if ok { "PASS" } else { "FAIL" });
    };
    let o = oracle_report(trials, 12, 1)?;
    line(o.representation_pass(), "oracle: K3 regular representation and relations");
    for c in &o.confluence {
        line(c.disagreements == 0, &format!("oracle: confluence at level {} ({} trials)", c.level, c.trials));
    }
    let mut e = engine(cli)?;
    for s in [Suite::Cpc, Suite::Lmn, Suite::Traceq, Suite::Zp] {
        let name = match s {
            Suite::Cpc => "cpc",
            Suite::Lmn => "lmn",
            Suite::Traceq => "traceq",
            Suite::Zp => "zp",
            Suite::All => unreachable!(),
        };
        let (_, ok) = obstructions(&mut e, s, &[Family::TypeI, Family::TypeII])?;
        line(ok, &format!("obstructions: {name}"));
    }
    let small: Vec<String> = atlas_entries().iter().filter(|r| r.crossings() <= 7).map(|r| r.name.clone()).collect();
    let t = reproduce_all(Some(&small), jobs, cli.budget)?;
    line(t.all_pass, &format!("table up to 7 crossings: {}/{} rows", t.passed, t.total));
    Ok(all)
}
