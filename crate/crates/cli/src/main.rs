//! `vvsingular`: enumerate tableaux, predict singular values, verify them and report isotypes.
//!
//! Every subcommand writes one JSON document. Exit codes: 0 when every check passes,
//! 1 when a verification or self-test fails, 2 for usage errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use vvsingular::jack::coefficient_c_jack;
use vvsingular::macdonald::coefficient_c_mac;
use vvsingular::singular::{
    predict, predict_outside_hypotheses, tableaux_at_corner, verify_batch_in, FamilyKind, FieldMode, SingularDatum,
    VerificationReport,
};
use vvsingular::specht::SpechtModule;
use vvsingular::suites::{property_suite, Level};
use vvsingular::tableaux::{Cell, Partition, Tableau};

#[derive(Parser, Debug)]
#[command(name = "vvsingular", version, about = "Singular values of vector-valued Jack and Macdonald polynomials")]
struct Cli {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for batch verification.
    #[arg(long, global = true, env = "VVSINGULAR_THREADS")]
    threads: Option<usize>,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Report every elapsed time as 0, so identical runs give identical bytes.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the reverse standard Young tableaux of a shape with their content vectors.
    Rsyt {
        #[arg(long)]
        shape: Partition,
    },
    /// Predicted singular values for the label (m, 0, ..., 0) and tableaux with 1 at a corner.
    Predict {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        shape: Partition,
        #[arg(long)]
        cell: Cell,
        #[arg(long)]
        m: u32,
    },
    /// Construct the polynomial at each predicted value and apply every Dunkl operator.
    Verify(Selection),
    /// Report the isotype of each singular polynomial next to the predicted one.
    Isotype(Selection),
    /// Run the property suites.
    Selftest {
        #[arg(long, default_value = "quick")]
        level: Level,
    },
}

#[derive(Args, Debug)]
struct Selection {
    #[arg(long)]
    family: FamilyKind,
    #[arg(long)]
    shape: Partition,
    /// Tableau as rows of entries, e.g. `3,1;2`.
    #[arg(long, conflicts_with_all = ["cell", "all_tableaux"], required_unless_present = "cell")]
    tableau: Option<Tableau>,
    /// Removable corner holding the entry 1, e.g. `2,1`.
    #[arg(long)]
    cell: Option<Cell>,
    #[arg(long)]
    m: u32,
    /// Use every tableau with 1 at `--cell` instead of the first.
    #[arg(long)]
    all_tableaux: bool,
    #[arg(long, default_value = "exact")]
    field: FieldMode,
}

/// A run that produced a document; `ok = false` maps to exit code 1.
struct Outcome {
    doc: Value,
    ok: bool,
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl std::fmt::Display) -> anyhow::Error {
    UsageError(msg.to_string()).into()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli).and_then(|out| emit(&cli, &out.doc).map(|_| out.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, doc: &Value) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match &cli.command {
        Command::Rsyt { shape } => Ok(rsyt(shape)),
        Command::Predict { family, shape, cell, m } => predict_cmd(*family, shape, *cell, *m),
        Command::Verify(sel) => {
            let reports = verify_selection(sel, cli)?;
            let ok = reports.iter().all(VerificationReport::passed);
            let doc = json!({
                "command": "verify",
                "field": sel.field,
                "seed": cli.seed,
                "passed": ok,
                "reports": reports,
            });
            Ok(Outcome { doc, ok })
        }
        Command::Isotype(sel) => isotype_cmd(sel, cli),
        Command::Selftest { level } => Ok(selftest(*level, cli)),
    }
}

fn rsyt(shape: &Partition) -> Outcome {
    let module = SpechtModule::new(shape);
    let tableaux: Vec<Value> = module
        .tableaux()
        .iter()
        .enumerate()
        .map(|(k, t)| json!({ "index": k + 1, "tableau": t, "contents": t.content_vector() }))
        .collect();
    Outcome {
        doc: json!({ "command": "rsyt", "shape": shape, "dim": module.dim(), "tableaux": tableaux }),
        ok: true,
    }
}

fn predict_cmd(family: FamilyKind, shape: &Partition, cell: Cell, m: u32) -> anyhow::Result<Outcome> {
    let data = predict(family, shape, cell, m).map_err(usage)?;
    let coefficient = match family {
        FamilyKind::Jack => coefficient_c_jack(shape, cell, m).map_err(usage)?.reduced().to_string(),
        FamilyKind::Macdonald => coefficient_c_mac(shape, cell, m).map_err(usage)?.reduced().to_string(),
    };
    let outside: Vec<SingularDatum> = match family {
        FamilyKind::Jack => predict_outside_hypotheses(shape, cell, m).map_err(usage)?,
        FamilyKind::Macdonald => Vec::new(),
    };
    let doc = json!({
        "command": "predict",
        "family": family,
        "shape": shape,
        "cell": cell.to_string(),
        "m": m,
        "coefficient": coefficient,
        "data": data,
        "outside_hypotheses": outside,
    });
    Ok(Outcome { doc, ok: true })
}

/// The (datum, tableau index) pairs named by a selection.
fn cases(sel: &Selection) -> anyhow::Result<Vec<(SingularDatum, usize)>> {
    let module = SpechtModule::new(&sel.shape);
    let (cell, indices) = match (&sel.tableau, sel.cell) {
        (Some(t), _) => {
            let s = module
                .index_of(t)
                .ok_or_else(|| usage(format!("tableau {t} does not have shape {}", sel.shape)))?;
            (t.cell_of(1), vec![s])
        }
        (None, Some(cell)) => {
            let all = tableaux_at_corner(&module, cell);
            let picked = if sel.all_tableaux { all } else { all.into_iter().take(1).collect() };
            (cell, picked)
        }
        (None, None) => return Err(usage("one of --tableau or --cell is required")),
    };
    let data = predict(sel.family, &sel.shape, cell, sel.m).map_err(usage)?;
    Ok(data
        .iter()
        .flat_map(|d| indices.iter().map(move |&s| (d.clone(), s)))
        .collect())
}

fn verify_selection(sel: &Selection, cli: &Cli) -> anyhow::Result<Vec<VerificationReport>> {
    let cases = cases(sel)?;
    let mut reports = verify_batch_in(&cases, cli.seed, sel.field).map_err(usage)?;
    if cli.no_timing {
        for r in &mut reports {
            r.elapsed_ms = 0;
        }
    }
    Ok(reports)
}

#[derive(Serialize)]
struct IsotypeEntry {
    tableau: String,
    m: u32,
    n: i64,
    parameter: String,
    sigma: Option<String>,
    attaching_cell: Option<String>,
    expected_sigma: String,
    expected_cell: String,
    matches: bool,
    error: Option<String>,
}

fn isotype_cmd(sel: &Selection, cli: &Cli) -> anyhow::Result<Outcome> {
    let cases = cases(sel)?;
    let reports = verify_selection(sel, cli)?;
    let mut entries = Vec::new();
    for r in &reports {
        let datum = cases
            .iter()
            .map(|(d, _)| d)
            .find(|d| d.n == r.n)
            .expect("every report comes from a case");
        let expected_sigma = datum.expected_isotype().to_string();
        let expected_cell = datum.attaching_cell().to_string();
        let matches = r.isotype.as_deref() == Some(expected_sigma.as_str())
            && r.attaching_cell.as_deref() == Some(expected_cell.as_str());
        entries.push(IsotypeEntry {
            tableau: r.tableau.clone(),
            m: r.m,
            n: r.n,
            parameter: r.parameter.clone(),
            sigma: r.isotype.clone(),
            attaching_cell: r.attaching_cell.clone(),
            expected_sigma,
            expected_cell,
            matches,
            error: r.error.clone(),
        });
    }
    let ok = entries.iter().all(|e| e.matches);
    let doc = json!({
        "command": "isotype",
        "family": sel.family,
        "shape": sel.shape,
        "field": sel.field,
        "passed": ok,
        "isotypes": entries,
    });
    Ok(Outcome { doc, ok })
}

fn selftest(level: Level, cli: &Cli) -> Outcome {
    let mut checks = property_suite(level, cli.seed);
    if cli.no_timing {
        for c in &mut checks {
            c.elapsed_ms = 0;
        }
    }
    let ok = checks.iter().all(|c| c.passed);
    Outcome {
        doc: json!({ "command": "selftest", "level": level, "seed": cli.seed, "passed": ok, "checks": checks }),
        ok,
    }
}
