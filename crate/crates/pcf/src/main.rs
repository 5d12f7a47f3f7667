//! `pcf` command-line interface.
//!
//! Exit codes: 0 success, 1 the model or scenario failed validation,
//! 2 usage or IO error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pcf::curves::{self, CurveKind};
use pcf::diagnostics::Diagnostic;
use pcf::report::{self, Format, ReportDocument};
use pcf::service::{self, ServiceConfig};
use pcf::validate::{self, LoadedModel};
use pcf_core::risk::{evaluate, what_if_delta, Ratio, RiskReport};

#[derive(Parser)]
#[command(name = "pcf", version, about = "Probable cost of failure of transport networks under natural hazards")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model file and list every diagnostic.
    Validate { model: PathBuf },
    /// Evaluate a model and write its risk report.
    Analyze {
        model: PathBuf,
        /// Overrides the model's back-period, in years.
        #[arg(long, value_name = "YEARS")]
        back_period: Option<f64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Structured)]
        format: FormatArg,
        /// Output file; standard output if omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Importance factors grouped by component, event type or line.
    Importance {
        model: PathBuf,
        #[arg(long, value_enum)]
        by: By,
    },
    /// Evaluate a scenario against a model and report the change.
    WhatIf {
        model: PathBuf,
        #[arg(long, value_name = "SCENARIO_FILE")]
        scenario: PathBuf,
    },
    /// Emit curve samples as `x,y` CSV.
    PlotData {
        model: PathBuf,
        #[arg(long, value_enum)]
        curve: CurveArg,
        /// `component/event` for fragility and failure, `event/area` for hazard.
        #[arg(long)]
        id: String,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: String,
        #[arg(long, value_name = "PATH")]
        model_dir: Option<PathBuf>,
        /// Directory of static files for the browser client.
        #[arg(long, value_name = "PATH")]
        ui_dir: Option<PathBuf>,
        /// Largest accepted request body, bytes.
        #[arg(long, default_value_t = service::DEFAULT_BODY_LIMIT)]
        body_limit: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Structured,
    Tabular,
}

#[derive(Clone, Copy, ValueEnum)]
enum By {
    Component,
    Event,
    Line,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveArg {
    Fragility,
    Hazard,
    Failure,
}

enum Failure {
    Invalid(Vec<Diagnostic>),
    Usage(String),
}

impl Failure {
    fn io(path: &Path, e: std::io::Error) -> Self {
        Self::Usage(format!("{}: {e}", path.display()))
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::io(path, e))
}

fn print_diagnostics(diags: &[Diagnostic]) {
    for d in diags {
        eprintln!("{d}");
    }
}

fn load(path: &Path, back_period: Option<f64>) -> Result<LoadedModel, Failure> {
    let mut doc = validate::parse_document(&read(path)?).map_err(|d| Failure::Invalid(vec![d]))?;
    if back_period.is_some() {
        doc.analysis.back_period_years = back_period;
    }
    let loaded = validate::build_model(doc).map_err(Failure::Invalid)?;
    print_diagnostics(&loaded.warnings);
    Ok(loaded)
}

fn report_of(loaded: &LoadedModel) -> Result<RiskReport, Failure> {
    evaluate(&loaded.model).map_err(|e| Failure::Invalid(vec![validate::from_core(&e, "")]))
}

fn write_out(out: Option<&Path>, bytes: &[u8]) -> Outcome {
    match out {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Failure::io(p, e)),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Usage(format!("stdout: {e}"))),
    }
}

fn ratio_cell(r: Ratio) -> String {
    match r {
        Ratio::Defined(v) => v.to_string(),
        Ratio::Undefined => "undefined".into(),
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { model } => {
            let bytes = read(&model)?;
            let diags = match validate::parse_document(&bytes) {
                Ok(doc) => validate::build_model(doc).map_or_else(|d| d, |m| m.warnings),
                Err(d) => vec![d],
            };
            let errors = diags.iter().filter(|d| d.is_error()).count();
            if errors > 0 {
                return Err(Failure::Invalid(diags));
            }
            print_diagnostics(&diags);
            println!("{}: valid ({} warning(s))", model.display(), diags.len());
            Ok(())
        }
        Command::Analyze {
            model,
            back_period,
            format,
            out,
        } => {
            let loaded = load(&model, back_period)?;
            let doc = ReportDocument {
                model: loaded.document.metadata.name.clone(),
                currency_label: loaded.document.metadata.currency_label.clone(),
                report: report_of(&loaded)?,
            };
            let format = match format {
                FormatArg::Structured => Format::Structured,
                FormatArg::Tabular => Format::Tabular,
            };
            write_out(out.as_deref(), &report::emit(&doc, format))
        }
        Command::Importance { model, by } => {
            let loaded = load(&model, None)?;
            let r = report_of(&loaded)?;
            let rows: Vec<(&str, f64, Ratio)> = match by {
                By::Component => r
                    .components
                    .iter()
                    .map(|c| (c.component.as_str(), c.probable_cost.total, c.importance))
                    .collect(),
                By::Event => r
                    .events
                    .iter()
                    .map(|e| (e.event_type.as_str(), e.probable_cost.total, e.importance))
                    .collect(),
                By::Line => r.lines.iter().map(|l| (l.line.as_str(), l.probable_cost.total, l.importance)).collect(),
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Failure::Usage(e.to_string());
            w.write_record(["id", "pcf_total", "importance", "importance_display"]).map_err(csv_err)?;
            for (id, pcf, imp) in rows {
                let display = imp.value().map_or_else(|| "undefined".into(), |v| format!("{v:.2}"));
                w.write_record([id.to_owned(), pcf.to_string(), ratio_cell(imp), display]).map_err(csv_err)?;
            }
            write_out(None, &w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?)
        }
        Command::WhatIf { model, scenario } => {
            let loaded = load(&model, None)?;
            let base = report_of(&loaded)?;
            let record = validate::parse_scenario(&read(&scenario)?)
                .map_err(|d| Failure::Invalid(vec![d]))?
                .scenario;
            let variant = validate::scenario_variant(&record, &loaded.model).map_err(Failure::Invalid)?;
            let report = evaluate(&variant).map_err(|e| Failure::Invalid(vec![validate::from_core(&e, "scenario")]))?;
            let delta = what_if_delta(&base, &report).map_err(|e| Failure::Invalid(vec![validate::from_core(&e, "scenario")]))?;
            let result = service::ScenarioResult {
                model_id: loaded.document.metadata.name.clone(),
                scenario: record.name,
                report,
                delta,
            };
            write_out(None, &report::to_json(&result))
        }
        Command::PlotData { model, curve, id } => {
            let loaded = load(&model, None)?;
            let kind = match curve {
                CurveArg::Fragility => CurveKind::Fragility,
                CurveArg::Hazard => CurveKind::Hazard,
                CurveArg::Failure => CurveKind::Failure,
            };
            let data = curves::sample(&loaded.model, kind, &id).map_err(|e| Failure::Usage(e.to_string()))?;
            write_out(None, &curves::to_csv(&data))
        }
        Command::Serve {
            addr,
            model_dir,
            ui_dir,
            body_limit,
        } => {
            let config = ServiceConfig {
                body_limit,
                model_dir,
                ui_dir,
            };
            let rt = tokio::runtime::Runtime::new().map_err(|e| Failure::Usage(e.to_string()))?;
            rt.block_on(service::serve(&addr, config))
                .map_err(|e| Failure::Usage(format!("{addr}: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(diags)) => {
            print_diagnostics(&diags);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
