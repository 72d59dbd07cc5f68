//! Command implementations behind the `leibniz` binary. Each command reads
//! JSON documents, runs the corresponding library routine and produces a
//! deterministic machine-readable report plus a process exit code:
//! 0 = ok, 1 = mathematical failure, 2 = usage or parse error,
//! 3 = undecided (budget or cap exceeded).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::thread;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use leibniz_core::algebra::Algebra;
use leibniz_core::complements::factorization_index;
use leibniz_core::error::Error as CoreError;
use leibniz_core::flags::{
    classify_flag_set, enumerate_flag_datums, flag1_check, flag2_check, FlagDatum,
};
use leibniz_core::json::{AlgebraDoc, DatumDoc, FlagDoc};
use leibniz_core::linalg::Subspace;
use leibniz_core::morphisms::{iso_search, EquivMode, IsoOutcome};
use leibniz_core::products::{
    bicrossed_product, crossed_product, hemisemidirect, twisted_product, unified_product,
    validate_crossed_system, validate_extending_structure, validate_matched_pair, AxiomReport,
    CrossedSystem, MatchedPair,
};
use leibniz_core::{Budget, Shard};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "leibniz",
    about = "Exact construction, validation, enumeration and classification of finite-dimensional Leibniz algebras"
)]
pub struct Cli {
    /// Render a human-readable summary instead of the JSON report.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the defining identity of an algebra document.
    Check(CheckArgs),
    /// Solve for derivation-type spaces.
    Solve(SolveArgs),
    /// Build a product algebra from an extending datum.
    Product(ProductArgs),
    /// Run an axiom system against a datum without building anything.
    Axioms(AxiomsArgs),
    /// Enumerate and classify codimension-one extending structures.
    Flags(FlagsArgs),
    /// Classify the complements of a subalgebra in a factorization.
    Complements(ComplementsArgs),
    /// Search for an isomorphism between two algebras.
    Iso(IsoArgs),
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Algebra JSON document.
    pub file: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SolveKind {
    Der,
    Ader,
    Dder,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub kind: SolveKind,
    /// Include the full element list for enumerative solves.
    #[arg(long)]
    pub list: bool,
    /// Shard enumerations across this many worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ProductKind {
    Unified,
    Crossed,
    Bicrossed,
    Twisted,
    Hemi,
}

#[derive(Args, Debug)]
pub struct ProductArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub kind: ProductKind,
    /// Validate the matching axiom system first; refuse to emit on failure.
    #[arg(long)]
    pub validate: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AxiomKind {
    Unified,
    Crossed,
    Matched,
    Flag1,
    Flag2,
}

#[derive(Args, Debug)]
pub struct AxiomsArgs {
    /// Datum JSON document (extending datum, or flag datum for flag kinds).
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub kind: AxiomKind,
    /// Algebra document, required for flag kinds.
    #[arg(long)]
    pub algebra: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ClassifyMode {
    Equiv,
    Cohom,
}

#[derive(Args, Debug)]
pub struct FlagsArgs {
    pub file: PathBuf,
    /// Also partition the enumerated set by the chosen relation.
    #[arg(long, value_enum)]
    pub classify: Option<ClassifyMode>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
pub struct ComplementsArgs {
    pub file: PathBuf,
    /// Comma-separated basis indices spanning the subalgebra.
    #[arg(long, value_delimiter = ',')]
    pub g: Vec<usize>,
    /// Comma-separated basis indices spanning the fixed complement.
    #[arg(long, value_delimiter = ',')]
    pub h: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct IsoArgs {
    pub file_a: PathBuf,
    pub file_b: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Undecided,
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Deterministic command report: no timestamps, fixed field and entry
/// orders, so identical inputs give byte-identical output.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub status: Status,
    pub result: Value,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => EXIT_OK,
            Status::Fail => EXIT_FAIL,
            Status::Undecided => EXIT_UNDECIDED,
        }
    }

    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            render_pretty(self)
        } else {
            serde_json::to_string_pretty(self).expect("report serialization")
        }
    }
}

fn render_pretty(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", report.command);
    for input in &report.inputs {
        let _ = writeln!(out, "input:   {} ({})", input.path, &input.sha256[..16]);
    }
    let _ = writeln!(out, "status:  {:?}", report.status);
    let _ = writeln!(out, "result:");
    let text = serde_json::to_string_pretty(&report.result).expect("payload serialization");
    for line in text.lines() {
        let _ = writeln!(out, "  {line}");
    }
    out
}

/// Search budget, overridable through the LEIBNIZ_BUDGET variable.
pub fn budget_from_env() -> Budget {
    match std::env::var("LEIBNIZ_BUDGET") {
        Ok(text) => match text.trim().parse::<u64>() {
            Ok(limit) => Budget::with_max_candidates(limit),
            Err(_) => Budget::default(),
        },
        Err(_) => Budget::default(),
    }
}

fn digest(path: &Path) -> anyhow::Result<(InputDigest, String)> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    let hash = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for b in hash {
        let _ = write!(hex, "{b:02x}");
    }
    let text = String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    Ok((
        InputDigest {
            path: path.display().to_string(),
            sha256: hex,
        },
        text,
    ))
}

fn parse_doc<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> anyhow::Result<T> {
    serde_json::from_str(text).map_err(|e| {
        anyhow!(
            "{}: parse error at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        )
    })
}

fn axiom_report_json(report: &AxiomReport) -> Value {
    let entries: Vec<Value> = report
        .entries()
        .iter()
        .map(|r| {
            let mut obj = json!({ "id": r.id, "pass": r.pass });
            if let Some(w) = &r.witness {
                obj["witness"] = json!({
                    "indices": w.indices,
                    "lhs": w.lhs.to_texts(),
                    "rhs": w.rhs.to_texts(),
                });
            }
            obj
        })
        .collect();
    Value::Array(entries)
}

fn core_error(command: &str, inputs: Vec<InputDigest>, err: CoreError) -> anyhow::Result<Report> {
    // Budget and cap overruns are reported as undecided, never as silence.
    match err {
        CoreError::BudgetExceeded { .. } | CoreError::DimensionCapExceeded { .. } => Ok(Report {
            command: command.to_string(),
            inputs,
            status: Status::Undecided,
            result: json!({ "reason": err.to_string() }),
        }),
        other => bail!("{other}"),
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Product(args) => cmd_product(args),
        Command::Axioms(args) => cmd_axioms(args),
        Command::Flags(args) => cmd_flags(args),
        Command::Complements(args) => cmd_complements(args),
        Command::Iso(args) => cmd_iso(args),
    }
}

fn cmd_check(args: &CheckArgs) -> anyhow::Result<Report> {
    let (input, text) = digest(&args.file)?;
    let doc: AlgebraDoc = parse_doc(&args.file, &text)?;
    let algebra = doc.to_algebra_unchecked()?;
    let (status, result) = match algebra.check_leibniz() {
        Ok(()) => (
            Status::Ok,
            json!({
                "leibniz": true,
                "dim": algebra.dim(),
                "lie": algebra.is_lie(),
                "abelian": algebra.is_abelian(),
                "perfect": algebra.is_perfect(),
            }),
        ),
        Err(w) => (
            Status::Fail,
            json!({
                "leibniz": false,
                "witness": {
                    "left": w.left,
                    "middle": w.middle,
                    "right": w.right,
                    "lhs": w.lhs.to_texts(),
                    "rhs": w.rhs.to_texts(),
                },
            }),
        ),
    };
    Ok(Report {
        command: "check".into(),
        inputs: vec![input],
        status,
        result,
    })
}

fn cmd_solve(args: &SolveArgs) -> anyhow::Result<Report> {
    let (input, text) = digest(&args.file)?;
    let doc: AlgebraDoc = parse_doc(&args.file, &text)?;
    let algebra = doc.to_algebra()?;
    let inputs = vec![input];
    let result = match args.kind {
        SolveKind::Der | SolveKind::Ader => {
            let basis = match args.kind {
                SolveKind::Der => algebra.derivations(),
                _ => algebra.anti_derivations(),
            };
            json!({
                "kind": match args.kind { SolveKind::Der => "der", _ => "ader" },
                "dimension": basis.len(),
                "basis": basis
                    .iter()
                    .map(leibniz_core::json::matrix_to_doc)
                    .collect::<Vec<_>>(),
            })
        }
        SolveKind::Dder => {
            let budget = budget_from_env();
            let found = match run_sharded(args.jobs, |shard| {
                algebra.double_derivations(&budget, shard)
            }) {
                Ok(found) => found,
                Err(e) => return core_error("solve", inputs, e),
            };
            let mut payload = json!({
                "kind": "dder",
                "count": found.len(),
            });
            if args.list {
                payload["elements"] = Value::Array(
                    found
                        .iter()
                        .map(|pdd| {
                            json!({
                                "g0": pdd.g0.to_texts(),
                                "D": leibniz_core::json::matrix_to_doc(&pdd.d),
                                "Delta": leibniz_core::json::matrix_to_doc(&pdd.delta),
                            })
                        })
                        .collect(),
                );
            }
            payload
        }
    };
    Ok(Report {
        command: "solve".into(),
        inputs,
        status: Status::Ok,
        result,
    })
}

/// Runs a shardable enumeration on `jobs` threads and concatenates the
/// shards in order, which reproduces the canonical enumeration order.
fn run_sharded<T: Send>(
    jobs: usize,
    f: impl Fn(Option<Shard>) -> Result<Vec<T>, CoreError> + Sync,
) -> Result<Vec<T>, CoreError> {
    let jobs = jobs.max(1);
    if jobs == 1 {
        return f(None);
    }
    let mut pieces: Vec<Result<Vec<T>, CoreError>> = Vec::with_capacity(jobs);
    thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|index| {
                let f = &f;
                scope.spawn(move || f(Some(Shard { index, count: jobs })))
            })
            .collect();
        for handle in handles {
            pieces.push(handle.join().expect("enumeration worker panicked"));
        }
    });
    let mut out = Vec::new();
    for piece in pieces {
        out.extend(piece?);
    }
    Ok(out)
}

fn cmd_product(args: &ProductArgs) -> anyhow::Result<Report> {
    let (input, text) = digest(&args.file)?;
    let doc: DatumDoc = parse_doc(&args.file, &text)?;
    let datum = doc.to_datum()?;
    let inputs = vec![input];

    // Build the product for the requested kind, optionally gating on the
    // matching axiom system.
    let (report, algebra): (Option<AxiomReport>, Option<Algebra>) = match args.kind {
        ProductKind::Unified => {
            let report = args.validate.then(|| validate_extending_structure(&datum));
            if let Some(r) = &report {
                if !r.pass() {
                    (report, None)
                } else {
                    (report, Some(unified_product(&datum)))
                }
            } else {
                (None, Some(unified_product(&datum)))
            }
        }
        ProductKind::Crossed => {
            let cs = CrossedSystem::from_datum(datum.clone())?;
            let report = args.validate.then(|| validate_crossed_system(&cs));
            match &report {
                Some(r) if !r.pass() => (report, None),
                _ => (report, Some(crossed_product(&cs))),
            }
        }
        ProductKind::Bicrossed => {
            let mp = MatchedPair::from_datum(datum.clone())?;
            let report = args.validate.then(|| validate_matched_pair(&mp));
            match &report {
                Some(r) if !r.pass() => (report, None),
                _ => (report, Some(bicrossed_product(&mp))),
            }
        }
        ProductKind::Twisted => {
            if !datum.la().is_zero()
                || !datum.ra().is_zero()
                || !datum.lh().is_zero()
                || !datum.rh().is_zero()
            {
                bail!("twisted products need all four actions trivial");
            }
            let v_alg = Algebra::new(datum.field(), datum.v_dim(), datum.vb().clone())?;
            // twisted_product validates the cocycle conditions itself.
            match twisted_product(datum.g(), &v_alg, datum.f()) {
                Ok(alg) => (None, Some(alg)),
                Err(CoreError::AxiomViolation { .. }) => (None, None),
                Err(e) => return Err(e.into()),
            }
        }
        ProductKind::Hemi => {
            if !datum.ra().is_zero()
                || !datum.lh().is_zero()
                || !datum.rh().is_zero()
                || !datum.f().is_zero()
                || !datum.vb().is_zero()
            {
                bail!("hemisemidirect products use only the right action");
            }
            match hemisemidirect(datum.g(), datum.la()) {
                Ok(alg) => (None, Some(alg)),
                Err(CoreError::AxiomViolation { .. }) => (None, None),
                Err(e) => return Err(e.into()),
            }
        }
    };

    let mut result = json!({});
    if let Some(r) = &report {
        result["axioms"] = axiom_report_json(r);
    }
    let status = match &algebra {
        Some(alg) => {
            result["algebra"] = serde_json::to_value(AlgebraDoc::from_algebra(alg))?;
            Status::Ok
        }
        None => Status::Fail,
    };
    Ok(Report {
        command: "product".into(),
        inputs,
        status,
        result,
    })
}

fn cmd_axioms(args: &AxiomsArgs) -> anyhow::Result<Report> {
    let (input, text) = digest(&args.file)?;
    let mut inputs = vec![input];
    let report = match args.kind {
        AxiomKind::Unified => {
            let doc: DatumDoc = parse_doc(&args.file, &text)?;
            validate_extending_structure(&doc.to_datum()?)
        }
        AxiomKind::Crossed => {
            let doc: DatumDoc = parse_doc(&args.file, &text)?;
            let cs = CrossedSystem::from_datum(doc.to_datum()?)?;
            validate_crossed_system(&cs)
        }
        AxiomKind::Matched => {
            let doc: DatumDoc = parse_doc(&args.file, &text)?;
            let mp = MatchedPair::from_datum(doc.to_datum()?)?;
            validate_matched_pair(&mp)
        }
        AxiomKind::Flag1 | AxiomKind::Flag2 => {
            let algebra_path = args
                .algebra
                .as_ref()
                .ok_or_else(|| anyhow!("flag axioms need --algebra"))?;
            let (alg_input, alg_text) = digest(algebra_path)?;
            inputs.push(alg_input);
            let alg_doc: AlgebraDoc = parse_doc(algebra_path, &alg_text)?;
            let algebra = alg_doc.to_algebra()?;
            let flag_doc: FlagDoc = parse_doc(&args.file, &text)?;
            let fd = flag_doc.to_flag(algebra.field(), algebra.dim())?;
            match (&fd, args.kind) {
                (FlagDatum::First(f1), AxiomKind::Flag1) => flag1_check(&algebra, f1),
                (FlagDatum::Second(f2), AxiomKind::Flag2) => flag2_check(&algebra, f2)?,
                _ => bail!("flag datum kind does not match the requested axiom system"),
            }
        }
    };
    let status = if report.pass() { Status::Ok } else { Status::Fail };
    Ok(Report {
        command: "axioms".into(),
        inputs,
        status,
        result: json!({ "axioms": axiom_report_json(&report) }),
    })
}

fn cmd_flags(args: &FlagsArgs) -> anyhow::Result<Report> {
    let (input, text) = digest(&args.file)?;
    let doc: AlgebraDoc = parse_doc(&args.file, &text)?;
    let algebra = doc.to_algebra()?;
    let inputs = vec![input];
    let budget = budget_from_env();
    let enumerated = run_sharded(args.jobs, |shard| {
        enumerate_flag_datums(&algebra, &budget, shard)
            .map(|(first, second)| vec![(first, second)])
    });
    let pieces = match enumerated {
        Ok(pieces) => pieces,
        Err(e) => return core_error("flags", inputs, e),
    };
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (f, s) in pieces {
        first.extend(f);
        second.extend(s);
    }

    let mut result = json!({
        "f1_count": first.len(),
        "f2_count": second.len(),
    });
    if let Some(mode) = args.classify {
        let mode = match mode {
            ClassifyMode::Equiv => EquivMode::Equiv,
            ClassifyMode::Cohom => EquivMode::Cohom,
        };
        let all: Vec<FlagDatum> = first
            .into_iter()
            .map(FlagDatum::First)
            .chain(second.into_iter().map(FlagDatum::Second))
            .collect();
        let classes = classify_flag_set(&algebra, &all, mode)?;
        result["classify"] = json!({
            "mode": match mode { EquivMode::Equiv => "equiv", EquivMode::Cohom => "cohom" },
            "class_count": classes.len(),
            "classes": classes
                .iter()
                .map(|c| {
                    json!({
                        "size": c.size,
                        "representative": FlagDoc::from_flag(&c.representative),
                    })
                })
                .collect::<Vec<_>>(),
            "conventions": {
                "kind1": leibniz_core::flags::EQUIV_RULE_KIND1,
                "kind2": leibniz_core::flags::EQUIV_RULE_KIND2,
            },
        });
    }
    Ok(Report {
        command: "flags".into(),
        inputs,
        status: Status::Ok,
        result,
    })
}

fn cmd_complements(args: &ComplementsArgs) -> anyhow::Result<Report> {
    let (input, text) = digest(&args.file)?;
    let doc: AlgebraDoc = parse_doc(&args.file, &text)?;
    let algebra = doc.to_algebra()?;
    let inputs = vec![input];
    if args.g.is_empty() || args.h.is_empty() {
        bail!("--g and --h must list basis indices");
    }
    for &i in args.g.iter().chain(&args.h) {
        if i >= algebra.dim() {
            bail!("basis index {i} outside dimension {}", algebra.dim());
        }
    }
    let g_sub = Subspace::coordinate(algebra.field(), algebra.dim(), &args.g);
    let h_sub = Subspace::coordinate(algebra.field(), algebra.dim(), &args.h);
    let budget = budget_from_env();
    let report = match factorization_index(&algebra, &g_sub, &h_sub, &budget) {
        Ok(r) => r,
        Err(e @ CoreError::BudgetExceeded { .. }) => return core_error("complements", inputs, e),
        Err(e @ CoreError::UnsupportedEnumeration) => {
            return core_error("complements", inputs, e)
        }
        Err(e) => return Err(e.into()),
    };
    let result = json!({
        "index": report.index(),
        "deformation_maps": report.deformation_count,
        "classes": report
            .classes
            .iter()
            .map(|c| {
                json!({
                    "size": c.size,
                    "r": leibniz_core::json::matrix_to_doc(&c.representative),
                    "deformed": AlgebraDoc::from_algebra(&c.deformed),
                })
            })
            .collect::<Vec<_>>(),
    });
    Ok(Report {
        command: "complements".into(),
        inputs,
        status: Status::Ok,
        result,
    })
}

fn cmd_iso(args: &IsoArgs) -> anyhow::Result<Report> {
    let (input_a, text_a) = digest(&args.file_a)?;
    let (input_b, text_b) = digest(&args.file_b)?;
    let doc_a: AlgebraDoc = parse_doc(&args.file_a, &text_a)?;
    let doc_b: AlgebraDoc = parse_doc(&args.file_b, &text_b)?;
    let a = doc_a.to_algebra()?;
    let b = doc_b.to_algebra()?;
    let budget = budget_from_env();
    let (status, result) = match iso_search(&a, &b, &budget)? {
        IsoOutcome::Isomorphic(phi) => (
            Status::Ok,
            json!({
                "decision": "isomorphic",
                "isomorphism": leibniz_core::json::matrix_to_doc(&phi),
            }),
        ),
        IsoOutcome::NotIsomorphic => (
            Status::Fail,
            json!({ "decision": "not_isomorphic", "isomorphism": null }),
        ),
        IsoOutcome::Undecided(reason) => (
            Status::Undecided,
            json!({ "decision": "undecided", "reason": reason }),
        ),
    };
    Ok(Report {
        command: "iso".into(),
        inputs: vec![input_a, input_b],
        status,
        result,
    })
}
