//! Batch front end: load documents, run checks and solvers, report.
//!
//! Exit codes are part of the contract: 0 when every requested check holds,
//! 1 when a check fails (the report says where), 2 for malformed input or
//! arguments.  `--report json` output contains every verdict the text form
//! shows, plus the raw structures.

use clap::{Parser, Subcommand, ValueEnum};
use gtcalc_core::io::{self, Document};
use gtcalc_core::scalar::{format_scalar, parse_scalar, Scalar};
use gtcalc_core::{
    check_all, check_b4, check_b5, check_hopf, check_quadraalgebra, check_trialgebra, chi,
    drinfeld_double, equal_braids, ihara_bracket, solve_b4, solve_relations, AxiomCheck,
    BraidWord, CheckReport, GTElement, HGTPair, LieElement, NCSeries,
};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gtcalc", version, about = "Exact checks and solvers for truncated GT calculus")]
struct Cli {
    /// Report style; json output is a superset of the text output.
    #[arg(long, global = true, value_enum, default_value_t = ReportStyle::Text)]
    report: ReportStyle,
    /// Cap on solver truncation degrees.
    #[arg(long, global = true, default_value_t = 5)]
    max_degree: u32,
    /// Echoed into reports for reproducibility of scripted runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportStyle {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the axioms of a structure-constant file.
    Check {
        #[command(subcommand)]
        what: CheckTarget,
    },
    /// Build the Drinfeld double of a Hopf file.
    Double {
        file: PathBuf,
        /// Where to write the doubled Hopf document.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Grothendieck-Teichmuller relations.
    Gt {
        #[command(subcommand)]
        what: GtCommand,
    },
    /// Element-pair relations.
    Hgt {
        #[command(subcommand)]
        what: HgtCommand,
    },
    /// Ihara bracket operations.
    Ihara {
        #[command(subcommand)]
        what: IharaCommand,
    },
    /// Braid word comparison.
    Braid {
        #[command(subcommand)]
        what: BraidCommand,
    },
}

#[derive(Subcommand)]
enum CheckTarget {
    /// Bialgebra, antipode and (co)unit axioms.
    Hopf { file: PathBuf },
    /// Partial-product interchange and compatibility axioms.
    Trialgebra { file: PathBuf },
    /// Two-product, two-coproduct compatibility axioms.
    Quadraalgebra { file: PathBuf },
}

#[derive(Subcommand)]
enum GtCommand {
    /// Test duality, hexagon and pentagon for a stored element.
    Check {
        file: PathBuf,
        /// Re-truncate to this degree before checking.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Solve the relations degree by degree for a given lambda.
    Solve {
        /// Scalar p/q in lowest terms.
        #[arg(long)]
        lambda: String,
        /// Truncation degree to solve up to.
        #[arg(long)]
        degree: u32,
    },
}

#[derive(Subcommand)]
enum HgtCommand {
    /// Test the pair relation g(f) applied twice returns the argument.
    CheckB4 {
        file: PathBuf,
        /// Re-truncate to this degree before checking.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Solve for the partner series of a stored group-like series.
    SolveB4 {
        file: PathBuf,
        /// Truncation degree to solve up to.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Print the comparison series of two group-like series files.
    Chi { phi: PathBuf, psi: PathBuf },
}

#[derive(Subcommand)]
enum IharaCommand {
    /// Print the bracket of two primitive series files.
    Bracket {
        f: PathBuf,
        g: PathBuf,
        /// Re-truncate both inputs to this degree first.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Test whether the bracket of two primitive series vanishes.
    B5 {
        f: PathBuf,
        g: PathBuf,
        /// Use the plain free-Lie bracket instead of the Ihara one.
        #[arg(long)]
        plain_bracket: bool,
    },
}

#[derive(Subcommand)]
enum BraidCommand {
    /// Compare two three-strand words, e.g. "s1 s2 s1i".
    Eq { w1: String, w2: String },
}

/// Everything a run reports; `json` carries `lines` plus raw structures.
struct RunReport {
    pass: bool,
    lines: Vec<String>,
    json: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let echo: Vec<String> = std::env::args().skip(1).collect();
            match cli.report {
                ReportStyle::Text => emit(&report.lines),
                ReportStyle::Json => {
                    let mut top = json!({
                        "command": echo.join(" "),
                        "pass": report.pass,
                        "lines": report.lines,
                    });
                    if let Some(seed) = cli.seed {
                        top["seed"] = json!(seed);
                    }
                    merge(&mut top, report.json);
                    emit(&[serde_json::to_string_pretty(&top).expect("report tree")]);
                }
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Stops on a closed pipe instead of panicking; the exit code still stands.
fn emit(lines: &[String]) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for line in lines {
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}

fn merge(top: &mut Value, extra: Value) {
    if let (Some(dst), Value::Object(src)) = (top.as_object_mut(), extra) {
        for (k, v) in src {
            dst.insert(k, v);
        }
    }
}

fn run(cli: &Cli) -> Result<RunReport, String> {
    match &cli.command {
        Command::Check { what } => match what {
            CheckTarget::Hopf { file } => {
                let data = expect_hopf(load(file)?)?;
                Ok(axiom_report("hopf", &check_hopf(&data)))
            }
            CheckTarget::Trialgebra { file } => {
                let doc = load(file)?;
                let data = match doc {
                    Document::Trialgebra { data, .. } => data,
                    other => return Err(kind_mismatch("trialgebra", &other)),
                };
                Ok(axiom_report("trialgebra", &check_trialgebra(&data)))
            }
            CheckTarget::Quadraalgebra { file } => {
                let doc = load(file)?;
                let data = match doc {
                    Document::Quadraalgebra { data, .. } => data,
                    other => return Err(kind_mismatch("quadraalgebra", &other)),
                };
                Ok(axiom_report("quadraalgebra", &check_quadraalgebra(&data)))
            }
        },
        Command::Double { file, output } => run_double(file, output),
        Command::Gt { what } => match what {
            GtCommand::Check { file, degree } => run_gt_check(file, *degree),
            GtCommand::Solve { lambda, degree } => run_gt_solve(lambda, *degree, cli.max_degree),
        },
        Command::Hgt { what } => match what {
            HgtCommand::CheckB4 { file, degree } => run_check_b4(file, *degree),
            HgtCommand::SolveB4 { file, degree } => run_solve_b4(file, *degree, cli.max_degree),
            HgtCommand::Chi { phi, psi } => run_chi(phi, psi),
        },
        Command::Ihara { what } => match what {
            IharaCommand::Bracket { f, g, degree } => run_ihara_bracket(f, g, *degree),
            IharaCommand::B5 { f, g, plain_bracket } => run_b5(f, g, *plain_bracket),
        },
        Command::Braid { what } => match what {
            BraidCommand::Eq { w1, w2 } => run_braid_eq(w1, w2),
        },
    }
}

fn load(path: &Path) -> Result<Document, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    io::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn kind_mismatch(wanted: &str, got: &Document) -> String {
    format!("expected a {wanted} document, found kind `{}`", got.kind())
}

fn expect_hopf(doc: Document) -> Result<gtcalc_core::HopfData, String> {
    match doc {
        Document::Hopf { data, .. } => Ok(data),
        other => Err(kind_mismatch("hopf", &other)),
    }
}

fn expect_series(doc: Document, role: &str) -> Result<NCSeries, String> {
    match doc {
        Document::Series { data, .. } => Ok(data),
        other => Err(format!("{role}: {}", kind_mismatch("series", &other))),
    }
}

fn retruncated(series: &NCSeries, degree: Option<u32>, what: &str) -> Result<NCSeries, String> {
    match degree {
        None => Ok(series.clone()),
        Some(n) if n <= series.truncation() => Ok(series.truncated(n)),
        Some(n) => Err(format!(
            "{what} is stored at truncation {}; cannot check at degree {n}",
            series.truncation()
        )),
    }
}

fn witness_text(check: &AxiomCheck) -> String {
    let mut s = format!("FAIL {}", check.axiom);
    if let Some(w) = &check.witness {
        s.push_str(&format!(" at indices {w:?}"));
    }
    if let Some(d) = &check.detail {
        s.push_str(&format!(": {d}"));
    }
    s
}

fn axiom_json(check: &AxiomCheck) -> Value {
    json!({
        "axiom": check.axiom,
        "holds": check.holds,
        "witness": check.witness,
        "detail": check.detail,
        "skipped": check.skipped,
    })
}

fn axiom_report(what: &str, report: &CheckReport) -> RunReport {
    let mut lines = Vec::new();
    for check in &report.checks {
        if check.holds {
            lines.push(format!("ok {}", check.axiom));
        } else {
            lines.push(witness_text(check));
        }
    }
    let pass = report.all_hold();
    lines.push(if pass {
        format!("{what}: all axioms hold")
    } else {
        format!("{what}: axioms violated")
    });
    let json = json!({ "checks": report.checks.iter().map(axiom_json).collect::<Vec<_>>() });
    RunReport { pass, lines, json }
}

fn run_double(file: &Path, output: &Path) -> Result<RunReport, String> {
    let doc = load(file)?;
    let name = doc.name().map(str::to_string);
    let data = expect_hopf(doc)?;
    let double = drinfeld_double(&data).map_err(|e| format!("{}: {e}", file.display()))?;
    let dim = double.hopf.dim;
    let out_doc = Document::Hopf {
        name: Some(format!("D({})", name.as_deref().unwrap_or("input"))),
        data: double.hopf,
    };
    let text = io::print(&out_doc);
    std::fs::write(output, &text).map_err(|e| format!("{}: {e}", output.display()))?;
    let payload: Value = serde_json::from_str(&text).expect("printed document");
    Ok(RunReport {
        pass: true,
        lines: vec![format!("wrote {} (dimension {dim})", output.display())],
        json: json!({ "dimension": dim, "output": output.display().to_string(), "double": payload }),
    })
}

fn run_gt_check(file: &Path, degree: Option<u32>) -> Result<RunReport, String> {
    let doc = load(file)?;
    let element = match doc {
        Document::GT { data, .. } => data,
        other => return Err(kind_mismatch("gt-element", &other)),
    };
    let f = retruncated(&element.f, degree, "element")?;
    let element = GTElement::new(element.lambda.clone(), f).map_err(|e| e.to_string())?;
    let reports = check_all(&element);
    let mut lines = Vec::new();
    let mut pass = true;
    for r in &reports {
        if r.holds {
            lines.push(format!("ok {} through degree {}", r.relation, r.truncation));
        } else {
            pass = false;
            lines.push(format!(
                "FAIL {} at degree {}",
                r.relation,
                r.first_failing_degree.expect("failing report has a degree")
            ));
            for line in r.residual_lines() {
                lines.push(format!("    {line}"));
            }
        }
    }
    let json = json!({
        "lambda": format_scalar(&element.lambda),
        "relations": reports
            .iter()
            .map(|r| {
                json!({
                    "relation": r.relation,
                    "holds": r.holds,
                    "first_failing_degree": r.first_failing_degree,
                    "residual": r.residual_lines(),
                })
            })
            .collect::<Vec<_>>(),
    });
    Ok(RunReport { pass, lines, json })
}

fn parse_lambda(text: &str) -> Result<Scalar, String> {
    parse_scalar(text).map_err(|e| format!("--lambda: {e}"))
}

fn check_degree_cap(degree: u32, cap: u32) -> Result<(), String> {
    if degree > cap {
        return Err(format!("--degree {degree} exceeds --max-degree {cap}"));
    }
    Ok(())
}

fn run_gt_solve(lambda: &str, degree: u32, cap: u32) -> Result<RunReport, String> {
    check_degree_cap(degree, cap)?;
    let lambda = parse_lambda(lambda)?;
    let solution = solve_relations(&lambda, degree);
    let mut lines = Vec::new();
    let mut degrees_json = Vec::new();
    for d in &solution.degrees {
        let (line, entry) = match &d.solution {
            None => (format!("degree {}: infeasible", d.degree), json!({ "feasible": false })),
            Some(s) if s.is_unique() => (
                format!("degree {}: unique", d.degree),
                json!({ "feasible": true, "nullspace_dim": 0 }),
            ),
            Some(s) => (
                format!("degree {}: solution space of dimension {}", d.degree, s.nullspace.len()),
                json!({ "feasible": true, "nullspace_dim": s.nullspace.len() }),
            ),
        };
        lines.push(line);
        let mut entry = entry;
        entry["degree"] = json!(d.degree);
        degrees_json.push(entry);
    }
    let pass = solution.element.is_some();
    let element_json = solution.element.as_ref().map(|e| {
        let text = io::print(&Document::GT { name: None, data: e.clone() });
        serde_json::from_str::<Value>(&text).expect("printed document")
    });
    if let Some(e) = &solution.element {
        lines.push("canonical solution:".to_string());
        for line in e.f.report_lines() {
            lines.push(format!("    {line}"));
        }
    } else {
        lines.push("no solution at this truncation".to_string());
    }
    let json = json!({
        "lambda": format_scalar(&solution.lambda),
        "degrees": degrees_json,
        "element": element_json,
    });
    Ok(RunReport { pass, lines, json })
}

fn run_check_b4(file: &Path, degree: Option<u32>) -> Result<RunReport, String> {
    let doc = load(file)?;
    let pair = match doc {
        Document::HGT { data, .. } => data,
        other => return Err(kind_mismatch("hgt-pair", &other)),
    };
    let f = retruncated(&pair.f, degree, "pair")?;
    let g = retruncated(&pair.g, degree, "pair")?;
    let pair = HGTPair::new(f, g).map_err(|e| e.to_string())?;
    let holds = check_b4(&pair);
    let mut lines = Vec::new();
    let mut residual_json = Value::Null;
    if holds {
        lines.push(format!("b4 holds through degree {}", pair.f.truncation()));
    } else {
        // g^{-1} f - f^{-1} g, the two transports that b4 requires to agree.
        let defect = chi(&pair.f, &pair.g)
            .and_then(|a| Ok((a, chi(&pair.g, &pair.f)?)))
            .and_then(|(a, b)| a.checked_sub(&b))
            .map_err(|e| e.to_string())?;
        lines.push("FAIL b4; residual:".to_string());
        for line in defect.report_lines() {
            lines.push(format!("    {line}"));
        }
        residual_json = json!(defect.report_lines());
    }
    Ok(RunReport {
        pass: holds,
        lines,
        json: json!({ "holds": holds, "residual": residual_json }),
    })
}

fn run_solve_b4(file: &Path, degree: Option<u32>, cap: u32) -> Result<RunReport, String> {
    let doc = load(file)?;
    let f = expect_series(doc, "f")?;
    let degree = degree.unwrap_or_else(|| f.truncation().min(cap));
    check_degree_cap(degree, cap)?;
    let f = retruncated(&f, Some(degree), "f")?;
    let solution = solve_b4(&f).map_err(|e| e.to_string())?;
    let unique = solution.unique();
    let equals_f = solution.g.as_ref() == Some(&f);
    let mut lines = Vec::new();
    for d in &solution.degrees {
        match &d.solution {
            None => lines.push(format!("degree {}: infeasible", d.degree)),
            Some(s) if s.is_unique() => lines.push(format!("degree {}: unique", d.degree)),
            Some(s) => lines.push(format!(
                "degree {}: solution space of dimension {}",
                d.degree,
                s.nullspace.len()
            )),
        }
    }
    lines.push(match (unique, equals_f) {
        (true, true) => "unique solution; equals f".to_string(),
        (true, false) => "unique solution; differs from f".to_string(),
        (false, _) => "no unique solution".to_string(),
    });
    let g_json = solution.g.as_ref().map(|g| {
        let text = io::print(&Document::Series { name: None, data: g.clone() });
        serde_json::from_str::<Value>(&text).expect("printed document")
    });
    Ok(RunReport {
        pass: unique,
        lines,
        json: json!({ "unique": unique, "equals_f": equals_f, "g": g_json }),
    })
}

fn run_chi(phi_path: &Path, psi_path: &Path) -> Result<RunReport, String> {
    let phi = expect_series(load(phi_path)?, "phi")?;
    let psi = expect_series(load(psi_path)?, "psi")?;
    let result = chi(&phi, &psi).map_err(|e| e.to_string())?;
    series_output(result)
}

fn run_ihara_bracket(
    f_path: &Path,
    g_path: &Path,
    degree: Option<u32>,
) -> Result<RunReport, String> {
    let (f, g) = load_primitive_pair(f_path, g_path, degree)?;
    let bracket = ihara_bracket(&f, &g).map_err(|e| e.to_string())?;
    series_output(bracket.embed())
}

fn run_b5(f_path: &Path, g_path: &Path, plain: bool) -> Result<RunReport, String> {
    let (f, g) = load_primitive_pair(f_path, g_path, None)?;
    let holds = check_b5(&f, &g, plain).map_err(|e| e.to_string())?;
    let line = if holds { "bracket vanishes" } else { "bracket does not vanish" };
    Ok(RunReport {
        pass: holds,
        lines: vec![line.to_string()],
        json: json!({ "holds": holds, "plain_bracket": plain }),
    })
}

fn load_primitive_pair(
    f_path: &Path,
    g_path: &Path,
    degree: Option<u32>,
) -> Result<(LieElement, LieElement), String> {
    let f = retruncated(&expect_series(load(f_path)?, "f")?, degree, "f")?;
    let g = retruncated(&expect_series(load(g_path)?, "g")?, degree, "g")?;
    let f = LieElement::project(&f).map_err(|e| format!("f: {e}"))?;
    let g = LieElement::project(&g).map_err(|e| format!("g: {e}"))?;
    Ok((f, g))
}

/// Commands whose result is itself a series emit a parseable document.
fn series_output(series: NCSeries) -> Result<RunReport, String> {
    let text = io::print(&Document::Series { name: None, data: series });
    let payload: Value = serde_json::from_str(&text).expect("printed document");
    Ok(RunReport {
        pass: true,
        lines: text.lines().map(str::to_string).collect(),
        json: json!({ "result": payload }),
    })
}

fn run_braid_eq(w1: &str, w2: &str) -> Result<RunReport, String> {
    let a = BraidWord::parse(w1).map_err(|e| format!("first word: {e}"))?;
    let b = BraidWord::parse(w2).map_err(|e| format!("second word: {e}"))?;
    let equal = equal_braids(&a, &b);
    let line = if equal { "equal" } else { "distinct" };
    Ok(RunReport {
        pass: equal,
        lines: vec![format!("{line}: `{}` vs `{}`", a.tokens(), b.tokens())],
        json: json!({ "equal": equal, "reduced": [a.tokens(), b.tokens()] }),
    })
}
