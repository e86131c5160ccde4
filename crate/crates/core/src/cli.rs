//! Command-line front end. Every command produces a [`Report`]; the binary
//! only prints it and maps the outcome to an exit status.

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::algebra::coinvariants;
use crate::blob::{BlobError, BlobModel, BlobOptions, Manifold, DEFAULT_BUDGET};
use crate::comparison::{build_phi, h0_comparison, stabilization_study};
use crate::field::{Field, FieldChoice, Fp, Q};
use crate::hochschild::build_hochschild;
use crate::report::{Report, Table};
use crate::specfile::{load, Loaded, SpecError};
use crate::verify::{verify_all, Profile};

#[derive(Debug, Parser)]
#[command(name = "blobcx", version, about = "Blob complexes of 1-manifolds and Hochschild homology over exact fields")]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Algebra spec files.
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Dimensions and homology of the Hochschild complex.
    Hochschild(HochschildArgs),
    /// Assemble a blob complex.
    Blob(BlobArgs),
    /// Acceptance suites.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Comparison map from the Hochschild complex and the stabilization table.
    Compare(CompareArgs),
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCommand {
    /// Parse a spec file or builtin name and check the axioms.
    Validate {
        /// Spec file path or builtin such as `truncated_polynomial 2`.
        #[arg(required = true, num_args = 1..)]
        source: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Run every acceptance item.
    All {
        #[arg(long, default_value = "quick")]
        profile: Profile,
    },
}

#[derive(Debug, Args)]
pub struct Source {
    /// Spec file path or builtin name; the words of a builtin may be separate arguments.
    #[arg(required = true, num_args = 1..)]
    pub source: Vec<String>,
    /// Which declared bimodule to use; the regular bimodule when the file declares none.
    #[arg(long, default_value_t = 0)]
    pub module: usize,
}

#[derive(Debug, Args)]
pub struct HochschildArgs {
    #[command(flatten)]
    pub input: Source,
    /// Homology is reported in degrees below the cap.
    #[arg(long, default_value_t = 4)]
    pub cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ManifoldKind {
    Circle,
    Interval,
}

#[derive(Debug, Args)]
pub struct BlobArgs {
    #[command(flatten)]
    pub input: Source,
    #[arg(long, value_enum, default_value = "circle")]
    pub manifold: ManifoldKind,
    #[arg(long, default_value_t = 3)]
    pub sites: usize,
    /// Highest number of blobs.
    #[arg(long, default_value_t = 3)]
    pub cap: usize,
    /// Put the bimodule at site 0 of a circle.
    #[arg(long)]
    pub marked: bool,
    /// Refuse complexes whose estimated total dimension exceeds this.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Forbid towers of equal blobs.
    #[arg(long)]
    pub no_towers: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: Source,
    #[arg(long, default_value_t = 3)]
    pub sites: usize,
    /// Blob cap; the study covers degrees below it.
    #[arg(long, default_value_t = 3)]
    pub cap: usize,
    /// Site range for the stabilization table, e.g. `2..5`.
    #[arg(long, value_parser = parse_range)]
    pub study: Option<RangeInclusive<usize>>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected MIN..MAX, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let lo: usize = a.trim().parse().map_err(|_| format!("bad lower bound `{a}`"))?;
    let hi: usize = b.trim().parse().map_err(|_| format!("bad upper bound `{b}`"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Spec(#[from] SpecError),
    #[error("refused: {0}")]
    Budget(BlobError),
    #[error("{0}")]
    Failed(String),
}

impl Source {
    pub fn text(&self) -> String {
        self.source.join(" ")
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Spec(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<BlobError> for CliError {
    fn from(e: BlobError) -> Self {
        match e {
            BlobError::Budget { .. } => CliError::Budget(e),
            other => CliError::Failed(other.to_string()),
        }
    }
}

/// Exit status for a finished report.
pub fn exit_code(report: &Report) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}

/// Runs a command with the field chosen by `field`.
pub fn run(command: &Command, field: FieldChoice) -> Result<Report, CliError> {
    let mut report = match field {
        FieldChoice::Rational => run_in::<Q>(command)?,
        FieldChoice::Prime(p) => {
            Fp::set_modulus(p).map_err(|e| CliError::Usage(e.to_string()))?;
            run_in::<Fp>(command)?
        }
    };
    report.set_config("field", field.describe());
    Ok(report)
}

fn run_in<F: Field>(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Algebra(AlgebraCommand::Validate { source }) => algebra_validate::<F>(&source.join(" ")),
        Command::Hochschild(args) => hochschild::<F>(args),
        Command::Blob(args) => blob::<F>(args),
        Command::Verify(VerifyCommand::All { profile }) => Ok(verify_all::<F>(*profile)),
        Command::Compare(args) => compare::<F>(args),
    }
}

fn open<F: Field>(input: &Source, report: &mut Report) -> Result<(Loaded<F>, Arc<crate::algebra::Bimodule<F>>), CliError> {
    let source = input.text();
    let loaded = load::<F>(&source)?;
    let module = if loaded.bimodules.is_empty() && input.module == 0 {
        loaded.module()
    } else {
        loaded.bimodules.get(input.module).cloned().ok_or_else(|| CliError::Usage(format!("no bimodule {} in {source}", input.module)))?
    };
    report.input_digest = Some(loaded.digest.clone());
    report.set_config("source", &source);
    report.set_config("algebra", loaded.algebra.name());
    report.set_config("module", module.name());
    Ok((loaded, module))
}

pub fn algebra_validate<F: Field>(source: &str) -> Result<Report, CliError> {
    let mut report = Report::new();
    let loaded = load::<F>(source)?;
    report.input_digest = Some(loaded.digest.clone());
    report.set_config("source", source);
    report.set_config("algebra", loaded.algebra.name());
    report.absorb("algebra", loaded.algebra.validate());
    for m in &loaded.bimodules {
        report.absorb(&format!("bimodule {}", m.name()), m.validate());
    }
    Ok(report)
}

pub fn hochschild<F: Field>(args: &HochschildArgs) -> Result<Report, CliError> {
    let mut report = Report::new();
    let (loaded, module) = open::<F>(&args.input, &mut report)?;
    report.set_config("cap", args.cap);
    let h = build_hochschild(&loaded.algebra, &module, args.cap);
    report.check("boundary-squared", "hochschild", h.complex.is_valid(), "∂² = 0");
    let hom = h.complex.homology().map_err(|e| CliError::Failed(e.to_string()))?;
    let betti: Vec<usize> = hom.betti.iter().take(args.cap).copied().collect();
    report.info("betti", "hochschild", format!("{betti:?} in degrees 0..{}", args.cap)).with_witness(json!({ "betti": betti }));
    let coinv = coinvariants(&module).dim();
    if let Some(&h0) = betti.first() {
        report.check("hh0-coinvariants", "hochschild-degree-zero", h0 == coinv, format!("HH₀ {h0}, coinvariants {coinv}"));
    }
    report.table(Table {
        name: "hochschild".into(),
        columns: vec!["degree".into(), "dim".into(), "betti".into()],
        rows: (0..args.cap).map(|k| vec![json!(k), json!(h.complex.dim(k)), json!(hom.betti_at(k))]).collect(),
    });
    Ok(report)
}

pub fn blob<F: Field>(args: &BlobArgs) -> Result<Report, CliError> {
    let mut report = Report::new();
    let (loaded, module) = open::<F>(&args.input, &mut report)?;
    if args.sites == 0 || args.cap == 0 {
        return Err(CliError::Usage("--sites and --cap must be at least 1".into()));
    }
    let manifold = match (args.manifold, args.marked) {
        (ManifoldKind::Circle, false) => Manifold::circle(args.sites),
        (ManifoldKind::Circle, true) => Manifold::marked_circle(args.sites),
        (ManifoldKind::Interval, false) => Manifold::interval(args.sites),
        (ManifoldKind::Interval, true) => return Err(CliError::Usage("only circles carry a marked point".into())),
    };
    report.set_config("manifold", &manifold);
    report.set_config("sites", args.sites);
    report.set_config("cap", args.cap);
    report.set_config("towers", !args.no_towers);
    report.set_config("budget", args.budget);
    let options = BlobOptions { cap: args.cap, towers: !args.no_towers, budget: args.budget };
    let model = BlobModel::build(&manifold, loaded.algebra.clone(), args.marked.then(|| module.clone()), options)?;
    let c = model.complex();
    report.check("boundary-squared", "blob-complex", c.is_valid(), "∂² = 0");
    let hom = model.homology()?;
    let skein = model.skein()?;
    report.info("skein", "skein", format!("H₀ dim {}", skein.dim)).with_witness(json!({ "dim": skein.dim }));
    if args.marked {
        let coinv = coinvariants(&module).dim();
        report.check("skein-coinvariants", "skein-coinvariants", skein.dim == coinv, format!("H₀ {}, coinvariants {coinv}", skein.dim));
    }
    let counts = model.config_counts();
    report.table(Table {
        name: format!("blob {manifold}"),
        columns: vec!["degree".into(), "configurations".into(), "dim".into(), "betti".into(), "exact".into()],
        rows: c.degrees().map(|k| vec![json!(k), json!(counts[k]), json!(c.dim(k)), json!(hom.betti_at(k)), json!(hom.exact[k])]).collect(),
    });
    Ok(report)
}

pub fn compare<F: Field>(args: &CompareArgs) -> Result<Report, CliError> {
    let mut report = Report::new();
    let (loaded, module) = open::<F>(&args.input, &mut report)?;
    report.set_config("sites", args.sites);
    report.set_config("cap", args.cap);
    report.set_config("budget", args.budget);
    match build_phi(&loaded.algebra, &module, args.sites, args.cap) {
        Ok(cmp) => {
            let r = cmp.map.verify();
            report.check("phi-chain-map", "comparison", r.passed(), "∂φ₁ = φ₀∂ and ∂φ₂ = φ₁∂ on full bases");
            report.absorb("h0", h0_comparison(&cmp)?);
        }
        Err(e @ (BlobError::NoPreimage(_) | BlobError::IdealViolation(_))) => {
            report.check("phi-chain-map", "comparison", false, e.to_string());
        }
        Err(e) => return Err(e.into()),
    }
    if let Some(range) = &args.study {
        report.set_config("study", format!("{}..{}", range.start(), range.end()));
        let (r, _) = stabilization_study(&loaded.algebra, &module, range.clone(), args.cap.saturating_sub(1), args.budget)?;
        report.absorb("study", r);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..5").unwrap(), 2..=5);
        assert_eq!(parse_range("2..=5").unwrap(), 2..=5);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn arguments_parse() {
        let cli = Cli::try_parse_from(["blobcx", "blob", "truncated_polynomial 2", "--sites", "4", "--marked", "--out", "r.json"]).unwrap();
        assert!(matches!(cli.command, Command::Blob(BlobArgs { sites: 4, marked: true, .. })));
        assert!(cli.out.is_some());
        assert!(Cli::try_parse_from(["blobcx", "verify", "all", "--profile", "slow"]).is_err());
    }
}
