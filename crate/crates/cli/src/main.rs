use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use g2homog::analysis::{self, AnalysisReport, ANALYSES};
use g2homog::catalog::{self, Claim, VerificationReport};
use g2homog::homogeneous::{complex_ranks, InvariantComplex};
use g2homog::liealg::{invariant_dims, irreducible_dims, IsotropyModule, ScanConfig};
use g2homog::octonion::{alignment, derive_alignments, OctonionKind};
use g2homog::stable_forms::classify_report;
use g2homog::{Error, KForm};

const EXIT_USAGE: u8 = 2;
const EXIT_CAP: usize = 125;

#[derive(Parser, Debug)]
#[command(name = "g2homog", version, about = "Stable 3-forms and invariant G2-structures on homogeneous spaces")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for randomized rational sampling
    #[arg(long, global = true, default_value_t = 20_240_611)]
    seed: u64,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Scan resolution (grid points or samples, command dependent)
    #[arg(long, global = true)]
    resolution: Option<usize>,

    /// Include the effective run configuration in the report header
    #[arg(long, global = true)]
    emit_config: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a 3-form on R^7 given as a KForm JSON file ("-" for stdin)
    Classify { file: PathBuf },
    /// List or verify catalog entries
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print (d1, d2, d3) and irreducible dimensions for a case
    Invariants {
        #[arg(long)]
        case: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Option<Vec<i64>>,
    },
    /// Ranks of the invariant complex of a case or of a named 7-dimensional algebra
    ComplexRanks {
        #[arg(long, conflicts_with = "algebra")]
        case: Option<String>,
        /// su2+R4, su2+R4-printed, su2+su2+R or T7
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Option<Vec<i64>>,
    },
    /// Rigidity analyses
    Section5 {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(ANALYSES))]
        analysis: String,
        /// Restrict nearly-parallel to one case
        #[arg(long)]
        case: Option<String>,
    },
    /// Re-derive the octonion-to-form alignment constant
    Alignment,
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        case: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "case")]
        params: Option<Vec<i64>>,
    },
}

#[derive(Serialize)]
struct RunConfig<'a> {
    command: String,
    format: Format,
    seed: u64,
    jobs: Option<usize>,
    resolution: Option<usize>,
    case: Option<&'a str>,
    params: Option<&'a [i64]>,
    input: Option<String>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    catalog_hash: String,
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<RunConfig<'a>>,
    report: Value,
}

/// Command result: JSON report, CSV table, human summary, and failure count.
struct Output {
    report: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    human: String,
    failures: usize,
}

enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownCase(_) | Error::InvalidParams { .. } | Error::Parse(_) | Error::Degree(_) | Error::Dimension(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

fn strings<I: IntoIterator<Item = T>, T: ToString>(xs: I) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn claim_rows(prefix: &str, claims: &[Claim]) -> Vec<Vec<String>> {
    claims
        .iter()
        .map(|c| vec![prefix.to_string(), c.name.clone(), c.expected.to_string(), c.computed.to_string(), c.pass.to_string()])
        .collect()
}

fn claim_header() -> Vec<String> {
    strings(["subject", "claim", "expected", "computed", "pass"])
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn cmd_classify(path: &PathBuf) -> Result<Output, CliError> {
    let text = read_input(path)?;
    let form: KForm = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("malformed form JSON: {e}")))?;
    if form.dim() != 7 || form.degree() != 3 {
        return Err(CliError::Usage(format!("expected a 3-form on R^7, got degree {} in dimension {}", form.degree(), form.dim())));
    }
    let r = classify_report(&form)?;
    Ok(Output {
        report: json!(r),
        header: strings(["class", "detB", "signature_p", "signature_q"]),
        rows: vec![vec![r.class.as_str().to_string(), r.det_b.clone(), r.signature[0].to_string(), r.signature[1].to_string()]],
        human: format!("{} (det B = {}, signature {:?})", r.class.as_str(), r.det_b, r.signature),
        failures: 0,
    })
}

fn cmd_catalog_list() -> Output {
    let list = catalog::list_entries();
    let rows = list
        .iter()
        .map(|e| {
            vec![
                e.id.clone(),
                e.case.clone(),
                e.group.clone(),
                e.subgroup.clone(),
                strings(&e.params).join(" "),
                e.expected.d1.to_string(),
                e.expected.d2.to_string(),
                e.expected.d3.to_string(),
                e.paper_row.clone(),
            ]
        })
        .collect::<Vec<_>>();
    let human = list.iter().map(|e| format!("{:14} {:22} {:28} d3={}", e.id, e.group, e.subgroup, e.expected.d3)).collect::<Vec<_>>().join("\n");
    Output {
        report: json!({ "entries": list }),
        header: strings(["id", "case", "group", "subgroup", "params", "d1", "d2", "d3", "row"]),
        rows,
        human,
        failures: 0,
    }
}

fn scan_config(cli: &Cli) -> ScanConfig {
    let mut cfg = ScanConfig { seed: cli.seed, ..ScanConfig::default() };
    if let Some(r) = cli.resolution {
        cfg.grid = r;
    }
    cfg
}

fn verification_output(results: Vec<(String, Result<VerificationReport, Error>)>) -> Output {
    let mut reports = Vec::new();
    let mut rows = Vec::new();
    let mut human = Vec::new();
    let mut failures = 0;
    for (id, r) in results {
        match r {
            Ok(r) => {
                failures += usize::from(!r.pass);
                rows.extend(claim_rows(&r.id, &r.claims));
                human.push(format!(
                    "{} {:14} (d1,d2,d3)=({},{},{}) irreducible={:?} definite={} indefinite={}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.id,
                    r.dims.d1,
                    r.dims.d2,
                    r.dims.d3,
                    r.irreducible,
                    r.form_types.has_definite,
                    r.form_types.has_indefinite
                ));
                for c in r.claims.iter().filter(|c| !c.pass) {
                    human.push(format!("     {}: expected {}, computed {}", c.name, c.expected, c.computed));
                }
                reports.push(json!(r));
            }
            Err(e) => {
                failures += 1;
                rows.push(vec![id.clone(), "build".into(), "ok".into(), e.to_string(), "false".into()]);
                human.push(format!("FAIL {id:14} error: {e}"));
                reports.push(json!({ "id": id, "error": e.to_string(), "pass": false }));
            }
        }
    }
    let total = reports.len();
    Output {
        report: json!({ "entries": reports, "passed": total - failures, "failed": failures }),
        header: claim_header(),
        rows,
        human: human.join("\n"),
        failures,
    }
}

fn cmd_catalog_verify(cli: &Cli, case: Option<&str>, all: bool, params: Option<&[i64]>) -> Result<Output, CliError> {
    let cfg = scan_config(cli);
    if all {
        let ids: Vec<String> = catalog::catalog().entries.iter().map(|e| e.id.clone()).collect();
        return Ok(verification_output(ids.into_iter().zip(catalog::verify_all(&cfg)).collect()));
    }
    let key = case.ok_or_else(|| CliError::Usage("--case or --all is required".into()))?;
    if let Some(p) = params {
        let entry = catalog::entry_with_params(key, p)?;
        let id = entry.id.clone();
        let r = catalog::build_from_entry(entry).and_then(|b| catalog::verify_entry(&b, &cfg));
        return Ok(verification_output(vec![(id, r)]));
    }
    catalog::find_entry(key)?;
    let entries: Vec<_> = catalog::catalog().entries.iter().filter(|e| e.id == key || e.case == key).cloned().collect();
    use rayon::prelude::*;
    let results = entries
        .into_par_iter()
        .map(|e| (e.id.clone(), catalog::build_from_entry(e).and_then(|b| catalog::verify_entry(&b, &cfg))))
        .collect();
    Ok(verification_output(results))
}

fn cmd_invariants(case: &str, params: Option<&[i64]>) -> Result<Output, CliError> {
    let built = catalog::build_entry(case, params)?;
    let m = &built.module;
    let d = invariant_dims(m);
    let irr = irreducible_dims(m)?;
    Ok(Output {
        report: json!({ "id": built.entry.id, "case": built.entry.case, "params": built.entry.params, "d1": d.d1, "d2": d.d2, "d3": d.d3, "irreducible": irr }),
        header: strings(["id", "params", "d1", "d2", "d3", "irreducible"]),
        rows: vec![vec![
            built.entry.id.clone(),
            strings(&built.entry.params).join(" "),
            d.d1.to_string(),
            d.d2.to_string(),
            d.d3.to_string(),
            strings(&irr).join(" "),
        ]],
        human: format!("{}: (d1,d2,d3) = ({},{},{}), irreducible {:?}", built.entry.id, d.d1, d.d2, d.d3, irr),
        failures: 0,
    })
}

fn named_algebra(name: &str) -> Result<IsotropyModule, CliError> {
    Ok(match name {
        "su2+R4" => analysis::su2_r4_compact()?,
        "su2+R4-printed" => analysis::su2_r4_printed()?,
        "su2+su2+R" => analysis::su2_su2_r()?,
        "T7" => analysis::torus7()?,
        other => return Err(CliError::Usage(format!("unknown algebra {other}; expected su2+R4, su2+R4-printed, su2+su2+R or T7"))),
    })
}

fn cmd_complex_ranks(case: Option<&str>, algebra: Option<&str>, params: Option<&[i64]>) -> Result<Output, CliError> {
    let (label, m) = match (case, algebra) {
        (Some(c), None) => (c.to_string(), catalog::build_entry(c, params)?.module),
        (None, Some(a)) => (a.to_string(), named_algebra(a)?),
        _ => return Err(CliError::Usage("give exactly one of --case or --algebra".into())),
    };
    let c = InvariantComplex::new(&m)?;
    let r = complex_ranks(&c);
    let claims = vec![
        Claim::eq("d^2 = 0", true, c.squares_to_zero()),
        Claim::eq("rank-nullity and d^2 = 0 consistency", true, r.is_consistent()),
    ];
    let failures = claims.iter().filter(|c| !c.pass).count();
    let rows = (0..r.dims.len()).map(|k| strings([k, r.dims[k], r.ranks[k], r.kernels[k]])).collect();
    Ok(Output {
        report: json!({ "subject": label, "dims": r.dims, "ranks": r.ranks, "kernels": r.kernels, "claims": claims }),
        header: strings(["degree", "dim", "rank", "kernel"]),
        rows,
        human: format!("{label}: dims {:?}, ranks {:?}, kernels {:?}", r.dims, r.ranks, r.kernels),
        failures,
    })
}

fn analysis_output(r: AnalysisReport) -> Output {
    let mut human = vec![format!("{}: {}", r.analysis, if r.pass() { "all claims pass" } else { "some claims fail" })];
    if !r.ranks.is_empty() {
        human.push(format!("  dims {:?} ranks {:?} kernels {:?}", r.dims, r.ranks, r.kernels));
    }
    for c in &r.claims {
        human.push(format!("  {} {}: expected {}, computed {}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.expected, c.computed));
    }
    Output {
        header: claim_header(),
        rows: claim_rows(&r.analysis, &r.claims),
        human: human.join("\n"),
        failures: r.failures(),
        report: json!(r),
    }
}

fn cmd_alignment() -> Output {
    let frozen = alignment();
    let mut report = serde_json::Map::new();
    let mut rows = Vec::new();
    let mut failures = 0;
    for (label, kind) in [("compact", OctonionKind::Compact), ("split", OctonionKind::Split)] {
        let found = derive_alignments(kind);
        let matches = found.first() == Some(&frozen);
        failures += usize::from(!matches);
        rows.push(vec![label.to_string(), found.len().to_string(), matches.to_string()]);
        report.insert(label.into(), json!({ "solutions": found.len(), "first": found.first(), "matches_frozen": matches }));
    }
    report.insert("frozen".into(), json!(frozen));
    Output {
        human: format!("frozen alignment perm {:?} signs {:?}; {}", frozen.perm, frozen.signs, if failures == 0 { "re-derived" } else { "MISMATCH" }),
        report: Value::Object(report),
        header: strings(["algebra", "solutions", "matches_frozen"]),
        rows,
        failures,
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Classify { .. } => "classify".into(),
        Command::Catalog { action: CatalogAction::List } => "catalog list".into(),
        Command::Catalog { action: CatalogAction::Verify { .. } } => "catalog verify".into(),
        Command::Invariants { .. } => "invariants".into(),
        Command::ComplexRanks { .. } => "complex-ranks".into(),
        Command::Section5 { analysis, .. } => format!("section5 {analysis}"),
        Command::Alignment => "alignment".into(),
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Classify { file } => cmd_classify(file),
        Command::Catalog { action: CatalogAction::List } => Ok(cmd_catalog_list()),
        Command::Catalog { action: CatalogAction::Verify { case, all, params } } => {
            cmd_catalog_verify(cli, case.as_deref(), *all, params.as_deref())
        }
        Command::Invariants { case, params } => cmd_invariants(case, params.as_deref()),
        Command::ComplexRanks { case, algebra, params } => cmd_complex_ranks(case.as_deref(), algebra.as_deref(), params.as_deref()),
        Command::Section5 { analysis: name, case } => {
            Ok(analysis_output(analysis::run(name, cli.resolution, cli.seed, case.as_deref())?))
        }
        Command::Alignment => Ok(cmd_alignment()),
    }
}

fn run_config(cli: &Cli) -> RunConfig<'_> {
    let (case, params, input) = match &cli.command {
        Command::Classify { file } => (None, None, Some(file.display().to_string())),
        Command::Catalog { action: CatalogAction::Verify { case, params, .. } } => (case.as_deref(), params.as_deref(), None),
        Command::Invariants { case, params } => (Some(case.as_str()), params.as_deref(), None),
        Command::ComplexRanks { case, params, .. } => (case.as_deref(), params.as_deref(), None),
        Command::Section5 { case, .. } => (case.as_deref(), None, None),
        _ => (None, None, None),
    };
    RunConfig { command: command_name(&cli.command), format: cli.format, seed: cli.seed, jobs: cli.jobs, resolution: cli.resolution, case, params, input }
}

fn emit(cli: &Cli, out: &Output) -> io::Result<()> {
    let stdout = io::stdout();
    let mut w = stdout.lock();
    match cli.format {
        Format::Json => {
            let env = Envelope {
                tool: "g2homog",
                version: env!("CARGO_PKG_VERSION"),
                catalog_hash: catalog::catalog_hash(),
                command: command_name(&cli.command),
                config: cli.emit_config.then(|| run_config(cli)),
                report: out.report.clone(),
            };
            serde_json::to_writer_pretty(&mut w, &env)?;
            writeln!(w)
        }
        Format::Csv => {
            if cli.emit_config {
                writeln!(w, "# {}", serde_json::to_string(&run_config(cli))?)?;
            }
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(&out.header)?;
            for r in &out.rows {
                csv.write_record(r)?;
            }
            csv.flush()
        }
        Format::Human => {
            writeln!(w, "g2homog {} (catalog {})", env!("CARGO_PKG_VERSION"), &catalog::catalog_hash()[..12])?;
            if cli.emit_config {
                writeln!(w, "config: {}", serde_json::to_string(&run_config(cli))?)?;
            }
            writeln!(w, "{}", out.human)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(out.failures.min(EXIT_CAP) as u8)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
