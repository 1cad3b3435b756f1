//! Command runner behind the `nilhecke` binary.
//!
//! [`run`] never prints; it returns the exit code and the JSON body so that
//! tests can drive it in-process.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilhecke_core::algebra::{
    frobenius_predicate, frobenius_randomized, nilpotency, primitive_spaces, DEFAULT_PRIME,
};
use nilhecke_core::classifier::{classify, DimInfo};
use nilhecke_core::coxsys::{recognize_type, CoxeterMatrix, GeneralPresentation, Word};
use nilhecke_core::diagmod::{growth_certificate, verify, witness_for};
use nilhecke_core::groupmodel::{fc_count, wj0_basis};
use nilhecke_core::signedperm::count_avoiding;
use nilhecke_core::sysfile::{basis_to_json, load_diagram, load_system, SystemSpec};
use nilhecke_core::wordengine::{canonical, enumerate_basis, Budget, Status};
use nilhecke_core::{BasisTable, Error};
use serde_json::{json, Value};

pub mod acceptance;

/// Exit code and streams of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Option<String>,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(name = "nilhecke", version, about = "Nil-Hecke algebras of Coxeter groups")]
struct Cli {
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Longest word enumerated.
    #[arg(long, global = true)]
    budget_max_word_length: Option<usize>,
    /// Largest braid class or group explored.
    #[arg(long, global = true)]
    budget_max_class_size: Option<usize>,
    /// Largest number of basis classes.
    #[arg(long, global = true)]
    budget_max_class_count: Option<usize>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget {
            max_word_length: self.budget_max_word_length.unwrap_or(d.max_word_length),
            max_class_size: self.budget_max_class_size.unwrap_or(d.max_class_size),
            max_class_count: self.budget_max_class_count.unwrap_or(d.max_class_count),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Words,
    Group,
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Finite/infinite verdict with closed-form dimension or witness.
    Classify {
        #[arg(long)]
        system: PathBuf,
    },
    /// Dimension by enumeration.
    Dim {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        backend: Backend,
        /// Run both backends and report each value.
        #[arg(long)]
        crosscheck: bool,
    },
    /// Monomial basis, one record per braid class.
    Basis {
        #[arg(long)]
        system: PathBuf,
    },
    /// Product of two monomials.
    Multiply {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Nilpotency index of the augmentation ideal.
    Nilpotency {
        #[arg(long)]
        system: PathBuf,
    },
    /// Left, right and two-sided primitive spaces.
    Primitives {
        #[arg(long)]
        system: PathBuf,
    },
    /// Frobenius property, by predicate and by randomized Gram determinant.
    Frobenius {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Signed permutations without a bad pair.
    SignedCount {
        #[arg(long)]
        rank: usize,
    },
    /// Fully commutative elements of the Coxeter group.
    FcCount {
        #[arg(long)]
        system: PathBuf,
    },
    /// Check a module diagram against a system.
    VerifyModule {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        module: PathBuf,
        /// Also emit a growth certificate reaching this grade.
        #[arg(long)]
        certificate: Option<usize>,
    },
    /// Run the acceptance suite.
    Regress {
        /// Restrict to these criterion ids.
        #[arg(long)]
        only: Vec<u32>,
    },
}

enum Failure {
    Usage(String),
    Budget(Value, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget(reason) => {
                Failure::Budget(json!({"status": "budget_exceeded", "reason": reason}), String::new())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<(i32, Value), Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: Some(text.trim_end().to_string()),
                    stderr: String::new(),
                },
                _ => Outcome { code: EXIT_USAGE, stdout: None, stderr: text },
            };
        }
    };
    let budget = cli.budget.budget();
    match execute(cli.command, &budget) {
        Ok((code, body)) => Outcome { code, stdout: Some(render(&body)), stderr: String::new() },
        Err(Failure::Usage(msg)) => {
            Outcome { code: EXIT_USAGE, stdout: None, stderr: format!("error: {msg}") }
        }
        Err(Failure::Budget(body, msg)) => {
            Outcome { code: EXIT_BUDGET, stdout: Some(render(&body)), stderr: msg }
        }
    }
}

/// serde_json maps are ordered by key, so this output is canonical.
fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

/// Integers beyond u64 are emitted as decimal strings.
fn big(v: u128) -> Value {
    u64::try_from(v).map(Value::from).unwrap_or_else(|_| json!(v.to_string()))
}

fn system(path: &Path) -> Result<SystemSpec, Failure> {
    Ok(load_system(path)?)
}

fn coxeter(spec: &SystemSpec, what: &str) -> Result<nilhecke_core::NilHeckeParams, Failure> {
    spec.params().cloned().ok_or_else(|| Failure::Usage(format!("{what} needs a Coxeter system")))
}

fn table(pres: &GeneralPresentation, budget: &Budget) -> Result<BasisTable, Failure> {
    Ok(BasisTable::build(pres, budget)?)
}

fn words_json(table: &BasisTable, ids: &[u32]) -> Vec<String> {
    ids.iter().map(|&x| table.word(x).to_string()).collect()
}

fn finite_group(m: &CoxeterMatrix) -> bool {
    m.components()
        .iter()
        .all(|c| matches!(recognize_type(&m.submatrix(c)), Ok(Some((fam, _))) if fam.group_order().is_some()))
}

fn status_json(status: &Status, level_sizes: Vec<usize>) -> Value {
    match status {
        Status::Complete => json!({"status": "complete"}),
        Status::BudgetExceeded { at_length, reason } => json!({
            "status": "budget_exceeded",
            "at_length": at_length,
            "reason": reason,
            "level_sizes": level_sizes,
        }),
    }
}

fn execute(command: Command, budget: &Budget) -> CmdResult {
    match command {
        Command::Classify { system: path } => cmd_classify(&system(&path)?),
        Command::Dim { system: path, backend, crosscheck } => {
            cmd_dim(&system(&path)?, backend, crosscheck, budget)
        }
        Command::Basis { system: path } => {
            let b = enumerate_basis(&system(&path)?.presentation(), budget);
            let body = basis_to_json(&b);
            if b.is_complete() {
                Ok((EXIT_OK, body))
            } else {
                Err(Failure::Budget(body, String::new()))
            }
        }
        Command::Multiply { system: path, left, right } => {
            let pres = system(&path)?.presentation();
            let (l, r) = (Word::parse(&left)?, Word::parse(&right)?);
            let w = l.concat(&r);
            if let Some(&g) = w.as_slice().iter().find(|&&g| g as usize > pres.generators) {
                return Err(Failure::Usage(format!("generator {g} out of range")));
            }
            let result = match canonical(&w, &pres, budget)? {
                None => json!("zero"),
                Some(c) => json!(c.to_string()),
            };
            Ok((EXIT_OK, json!({"result": result})))
        }
        Command::Nilpotency { system: path } => {
            let t = table(&system(&path)?.presentation(), budget)?;
            let n = nilpotency(&t);
            Ok((
                EXIT_OK,
                json!({
                    "dimension": t.dim(),
                    "index": n.index,
                    "max_length": t.max_length(),
                    "top_products_zero": n.top_products_zero,
                    "witness": n.witness.to_string(),
                }),
            ))
        }
        Command::Primitives { system: path } => {
            let t = table(&system(&path)?.presentation(), budget)?;
            let r = primitive_spaces(&t);
            Ok((
                EXIT_OK,
                json!({
                    "left_dim": r.left_dim,
                    "right_dim": r.right_dim,
                    "two_sided_dim": r.two_sided_dim,
                    "left_monomials": words_json(&t, &r.left_monomials),
                    "right_monomials": words_json(&t, &r.right_monomials),
                    "primitive_monomials": words_json(&t, &r.primitive_monomials),
                }),
            ))
        }
        Command::Frobenius { system: path, trials, seed } => {
            let spec = system(&path)?;
            let t = table(&spec.presentation(), budget)?;
            let predicate = spec.params().map(frobenius_predicate).transpose()?;
            let check = frobenius_randomized(&t, trials, DEFAULT_PRIME, seed);
            let right_dim = primitive_spaces(&t).right_dim;
            Ok((
                EXIT_OK,
                json!({
                    "predicate": predicate,
                    "randomized": check.frobenius,
                    "right_primitive_dim": right_dim,
                    "trials": check.trials,
                    "prime": check.prime,
                    "error_bound": check.error_bound,
                }),
            ))
        }
        Command::SignedCount { rank } => {
            if rank == 0 {
                return Err(Failure::Usage("rank must be at least 1".into()));
            }
            let c = count_avoiding(rank);
            Ok((EXIT_OK, json!({"rank": c.rank, "count": c.count.map(big), "formula": big(c.formula)})))
        }
        Command::FcCount { system: path } => {
            let p = coxeter(&system(&path)?, "fc-count")?;
            match fc_count(&p.matrix, budget) {
                Some(c) => Ok((EXIT_OK, json!({"count": c}))),
                None => Err(Failure::Budget(
                    json!({"status": "budget_exceeded"}),
                    "group enumeration exceeded the budget".into(),
                )),
            }
        }
        Command::VerifyModule { system: path, module, certificate } => {
            let pres = system(&path)?.presentation();
            let diagram = load_diagram(&module)?;
            let report = verify(&diagram, &pres)?;
            let mut body = json!({"relations_ok": report.relations_ok, "is_witness": report.is_witness});
            if !report.failures.is_empty() {
                body["failures"] = serde_json::to_value(&report.failures).expect("serializable");
            }
            if let (Some(n), true) = (certificate, report.is_witness) {
                body["certificate"] = json!(growth_certificate(&diagram, &pres, n)?.to_string());
            }
            let code = if report.is_witness { EXIT_OK } else { EXIT_NEGATIVE };
            Ok((code, body))
        }
        Command::Regress { only } => {
            let results = acceptance::run_selected(&only);
            let passed = results.iter().all(|c| c.passed);
            let body = json!({"criteria": results, "passed": passed});
            Ok((if passed { EXIT_OK } else { EXIT_NEGATIVE }, body))
        }
    }
}

fn cmd_classify(spec: &SystemSpec) -> CmdResult {
    let body = match spec {
        SystemSpec::Coxeter(p) => {
            let c = classify(p)?;
            let mut body = json!({"verdict": c.verdict.to_string(), "notes": c.notes});
            if let DimInfo::Exact { value, formula } = &c.dim {
                body["dim"] = big(*value);
                body["formula"] = json!(formula);
            }
            if let Some(w) = c.witness {
                body["witness"] = json!(w);
            }
            body
        }
        SystemSpec::G29 { .. } => match witness_for(&spec.presentation()) {
            Some(w) => json!({"verdict": "infinite", "witness": w, "notes": "verified witness module"}),
            None => json!({"verdict": "unsupported", "notes": "no witness module verifies for this system"}),
        },
    };
    Ok((EXIT_OK, body))
}

fn cmd_dim(spec: &SystemSpec, backend: Backend, crosscheck: bool, budget: &Budget) -> CmdResult {
    let group_ok = spec.params().is_some_and(|p| p.all_d_two());
    let use_group = match backend {
        Backend::Words => false,
        Backend::Group if !group_ok => {
            return Err(Failure::Usage("the group backend needs a Coxeter system with all d_i = 2".into()))
        }
        Backend::Group => true,
        Backend::Auto => group_ok && spec.params().is_some_and(|p| finite_group(&p.matrix)),
    };
    let words = |budget: &Budget| {
        let b = enumerate_basis(&spec.presentation(), budget);
        (b.dimension(), status_json(&b.status, b.level_sizes()))
    };
    let group = |budget: &Budget| {
        let p = spec.params().expect("checked above");
        let e = wj0_basis(&p.matrix, &p.j0(), budget);
        (e.count(), status_json(&e.status, e.level_sizes()))
    };
    let (dim, mut body) = if use_group { group(budget) } else { words(budget) };
    if let Some(d) = dim {
        body["dimension"] = json!(d);
    }
    if crosscheck {
        let (w, _) = if use_group { words(budget) } else { (dim, Value::Null) };
        let (g, _) = if use_group {
            (dim, Value::Null)
        } else if group_ok {
            group(budget)
        } else {
            (None, Value::Null)
        };
        body["words"] = json!(w);
        body["group"] = json!(g);
        body["agree"] = json!(w.is_some() && g.is_some() && w == g);
    }
    if dim.is_some() {
        Ok((EXIT_OK, body))
    } else {
        Err(Failure::Budget(body, "enumeration exceeded the budget".into()))
    }
}
