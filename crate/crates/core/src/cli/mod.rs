//! Command-line front end. `run` is the whole program minus process exit.

mod svg;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{hybrid_policy, ArithSpec, ClaVariant, Family};
use crate::circuit::{from_text, report_with, to_text, Circuit, ResourceReport, TMode};
use crate::resources::{
    adder_formulas, cnot_measure_tradeoff, compare_scenarios, FormulaInputs, ScenarioId,
    TradeoffParams,
};
use crate::sim::verify_arithmetic;
use crate::toffoli::{
    cost_table, expand, measured_row, published_row, DecompKind, ExpansionPolicy,
};
use crate::topology::{builtin_names, clustering_coefficient, cnot_overhead_estimate, cpl, graph_by_name};

pub use svg::{line_chart, Series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qarith", version, about = "Toffoli lowering and resource analysis for reversible arithmetic")]
struct Cli {
    /// Prepend run metadata to the output.
    #[arg(long, global = true)]
    meta: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit an arithmetic circuit at Toffoli level.
    Build {
        #[command(flatten)]
        target: Target,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Lower every Toffoli of a circuit file.
    Decompose {
        /// Circuit text; stdin when absent.
        #[arg(long, short)]
        input: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        lowering: Lowering,
    },
    /// Resource report of a lowered circuit.
    Analyze {
        /// Analyse this circuit file instead of building one.
        #[arg(long, short)]
        input: Option<PathBuf>,
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        lowering: Lowering,
        /// Sweep n from --n-min up to this value.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        /// Closed-form costs instead of counting (controlled adder only).
        #[arg(long)]
        formula: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// KQ of the ripple-carry and carry-lookahead scenarios.
    Compare {
        /// `all` or a comma-separated list of scenario names.
        #[arg(long, default_value = "all")]
        scenarios: String,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 128)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Exhaustive simulation of a lowered arithmetic circuit.
    Verify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        lowering: Lowering,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Physical CNOTs saved per measurement-based uncompute.
    Tradeoff {
        #[arg(long)]
        meas_error: f64,
        #[arg(long)]
        cnot_error: f64,
        /// Physical CNOTs per logical CNOT; derived from --graph when absent.
        #[arg(long)]
        overhead: Option<usize>,
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, default_value_t = 8)]
        saved: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Path length and clustering of device coupling graphs.
    Topology {
        /// Builtin name or `all`.
        #[arg(long, default_value = "all")]
        graph: String,
        /// Comma-separated subset of cpl,cc,overhead.
        #[arg(long, default_value = "cpl,cc,overhead")]
        metrics: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Per-Toffoli costs of each lowering.
    CostTable {
        /// Measure the built fragments instead of printing published values.
        #[arg(long)]
        measured: bool,
        /// Include the rotation-based circuit, which has no published row.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct Target {
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Args)]
struct Lowering {
    #[arg(long)]
    decomp: Option<DecompKind>,
    /// Measurement-based uncomputation for eligible Toffolis.
    #[arg(long)]
    odb: bool,
    /// Depth-10 layout of the zero-ancilla T-depth 3 circuit.
    #[arg(long)]
    legacy: bool,
    /// Multiplier head on the zero-ancilla circuit, rest on four ancillae.
    #[arg(long)]
    hybrid: bool,
    /// Carry-lookahead lowering.
    #[arg(long)]
    variant: Option<ClaVariant>,
    /// Per-region override, `NAME=KIND`.
    #[arg(long = "region", value_name = "NAME=KIND")]
    regions: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// One analysed circuit. Column order is the CSV header.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub n: usize,
    pub family: String,
    pub decomp: String,
    pub depth: usize,
    pub t_depth: usize,
    pub t_count: usize,
    pub cnot: usize,
    pub width: usize,
    pub kq: usize,
    pub kq_t: usize,
}

impl ReportRow {
    pub fn from_report(n: usize, family: &str, decomp: &str, r: &ResourceReport, mode: TMode) -> Self {
        ReportRow {
            n,
            family: family.to_string(),
            decomp: decomp.to_string(),
            depth: r.depth,
            t_depth: r.t_depth(mode),
            t_count: r.t_count,
            cnot: r.cnot_count,
            width: r.width,
            kq: r.kq,
            kq_t: r.kq_t,
        }
    }
}

impl Lowering {
    fn policy(&self) -> anyhow::Result<ExpansionPolicy> {
        let mut p = if self.hybrid {
            hybrid_policy()
        } else if let Some(v) = self.variant {
            v.policy()
        } else {
            let kind = self.decomp.unwrap_or(DecompKind::A4t1);
            if self.odb {
                ExpansionPolicy::odb(kind)
            } else {
                ExpansionPolicy::new(kind)
            }
        };
        if self.legacy {
            p.use_legacy_0at3_depth = true;
        }
        for r in &self.regions {
            let (name, kind) = r
                .split_once('=')
                .ok_or_else(|| anyhow!("region override '{r}' is not NAME=KIND"))?;
            p.per_region.insert(name.to_string(), kind.parse()?);
        }
        Ok(p)
    }

    fn mode(&self) -> TMode {
        if self.variant == Some(ClaVariant::AllSequentialFourAncilla) {
            TMode::Sequential
        } else {
            TMode::Parallel
        }
    }

    fn label(&self) -> String {
        if self.hybrid {
            return "hybrid".into();
        }
        if let Some(v) = self.variant {
            return v.name().into();
        }
        let mut s = self.decomp.unwrap_or(DecompKind::A4t1).name().to_string();
        if self.legacy {
            s.push_str("-legacy");
        }
        if self.odb {
            s.push_str("+odb");
        }
        s
    }
}

impl Target {
    fn spec(&self, lowering: Option<&Lowering>) -> anyhow::Result<ArithSpec> {
        let family = self.family.ok_or_else(|| anyhow!("--family is required"))?;
        let n = self.n.ok_or_else(|| anyhow!("--n is required"))?;
        Ok(self.spec_at(family, n, lowering))
    }

    fn spec_at(&self, family: Family, n: usize, lowering: Option<&Lowering>) -> ArithSpec {
        ArithSpec {
            n,
            family,
            variant: lowering.and_then(|l| l.variant),
        }
    }
}

#[derive(Serialize)]
struct Meta {
    tool: &'static str,
    version: &'static str,
    command: String,
    unix_time: u64,
}

struct Output<'a> {
    out: &'a mut dyn Write,
    meta: Option<Meta>,
}

impl Output<'_> {
    fn rows<T: Serialize>(&mut self, rows: &[T], format: Format) -> anyhow::Result<()> {
        match format {
            Format::Csv => {
                if let Some(m) = &self.meta {
                    writeln!(self.out, "# {} {} {} t={}", m.tool, m.version, m.command, m.unix_time)?;
                }
                let mut w = csv::Writer::from_writer(Vec::new());
                for r in rows {
                    w.serialize(r)?;
                }
                self.out.write_all(&w.into_inner()?)?;
            }
            Format::Json => self.json(&rows)?,
        }
        Ok(())
    }

    fn json<T: Serialize + ?Sized>(&mut self, value: &T) -> anyhow::Result<()> {
        let text = match &self.meta {
            Some(m) => serde_json::to_string_pretty(&serde_json::json!({ "meta": m, "data": value }))?,
            None => serde_json::to_string_pretty(value)?,
        };
        writeln!(self.out, "{text}")?;
        Ok(())
    }

    fn text(&mut self, s: &str) -> anyhow::Result<()> {
        if let Some(m) = &self.meta {
            writeln!(self.out, "# {} {} {} t={}", m.tool, m.version, m.command, m.unix_time)?;
        }
        self.out.write_all(s.as_bytes())?;
        Ok(())
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let to_stderr = e.use_stderr();
            let sink: &mut dyn Write = if to_stderr { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return if to_stderr { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let msg = serde_json::json!({ "error": format!("{e:#}") });
            let _ = writeln!(err, "{msg}");
            EXIT_USAGE
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Build { .. } => "build",
        Command::Decompose { .. } => "decompose",
        Command::Analyze { .. } => "analyze",
        Command::Compare { .. } => "compare",
        Command::Verify { .. } => "verify",
        Command::Tradeoff { .. } => "tradeoff",
        Command::Topology { .. } => "topology",
        Command::CostTable { .. } => "cost-table",
    }
}

fn read_circuit(input: &Option<PathBuf>) -> anyhow::Result<Circuit> {
    let text = match input {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(from_text(&text)?)
}

fn write_text(output: &Option<PathBuf>, o: &mut Output, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => o.text(text),
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<i32> {
    let meta = cli.meta.then(|| Meta {
        tool: "qarith",
        version: env!("CARGO_PKG_VERSION"),
        command: command_name(&cli.command).to_string(),
        unix_time: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    });
    let mut o = Output { out, meta };
    match cli.command {
        Command::Build { target, output } => {
            let (c, _) = target.spec(None)?.build()?;
            write_text(&output, &mut o, &to_text(&c))?;
        }
        Command::Decompose {
            input,
            output,
            lowering,
        } => {
            let c = read_circuit(&input)?;
            let e = expand(&c, &lowering.policy()?)?;
            write_text(&output, &mut o, &to_text(&e))?;
        }
        Command::Analyze {
            input,
            target,
            lowering,
            n_max,
            n_min,
            formula,
            format,
        } => {
            let rows = analyze(input, &target, &lowering, n_min, n_max, formula)?;
            o.rows(&rows, format)?;
        }
        Command::Compare {
            scenarios,
            n_min,
            n_max,
            format,
            svg,
        } => {
            let ids: Vec<ScenarioId> = if scenarios == "all" {
                ScenarioId::ALL.to_vec()
            } else {
                scenarios
                    .split(',')
                    .map(|s| s.trim().parse())
                    .collect::<Result<_, _>>()?
            };
            if n_min < 2 || n_max < n_min {
                bail!("need 2 <= --n-min <= --n-max");
            }
            let ns: Vec<usize> = (n_min..=n_max).collect();
            let cmp = compare_scenarios(&ns, &ids)?;
            match format {
                Format::Csv => {
                    o.rows(&cmp.rows, Format::Csv)?;
                    for x in &cmp.crossovers {
                        writeln!(
                            err,
                            "crossover {} vs {}: n={:.1} (qubits {:.1} vs {:.1})",
                            x.ripple, x.lookahead, x.n, x.ripple_qubits, x.lookahead_qubits
                        )?;
                    }
                }
                Format::Json => o.json(&cmp)?,
            }
            if let Some(path) = svg {
                let series: Vec<Series> = ids
                    .iter()
                    .map(|&id| Series {
                        name: id.name().to_string(),
                        points: cmp
                            .rows
                            .iter()
                            .filter(|r| r.scenario == id)
                            .map(|r| (r.n as f64, r.kq as f64))
                            .collect(),
                    })
                    .collect();
                let chart = line_chart("Adder KQ by scenario", "n (bits)", "KQ = depth x width", &series);
                std::fs::write(&path, chart).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Verify {
            target,
            lowering,
            format,
        } => {
            let spec = target.spec(Some(&lowering))?;
            let verdict = verify_arithmetic(&spec, &lowering.policy()?)?;
            match format {
                Format::Json => o.json(&verdict)?,
                Format::Csv => {
                    let status = if verdict.passed { "PASS" } else { "FAIL" };
                    let line = format!(
                        "{status} {} n={} {} width={} inputs={} histories={}\n",
                        spec.family,
                        spec.n,
                        lowering.label(),
                        verdict.width,
                        verdict.inputs_checked,
                        verdict.histories_checked
                    );
                    o.text(&line)?;
                    for f in verdict.failures.iter().take(10) {
                        writeln!(err, "input {:#b} outcomes {:?} deviation {:.3e}", f.input, f.outcomes, f.deviation)?;
                    }
                }
            }
            if !verdict.passed {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Tradeoff {
            meas_error,
            cnot_error,
            overhead,
            graph,
            saved,
            format,
        } => {
            let overhead = match (overhead, &graph) {
                (Some(v), _) => v,
                (None, Some(g)) => cnot_overhead_estimate(&graph_by_name(g)?)? as usize,
                (None, None) => bail!("give --overhead or --graph"),
            };
            let params = TradeoffParams {
                meas_error,
                cnot_error,
                cnot_overhead: overhead,
                cnots_saved_per_pair: saved,
            };
            let t = cnot_measure_tradeoff(&params)?;
            #[derive(Serialize)]
            struct Row {
                overhead: usize,
                saved: usize,
                physical_cnots_replaced: usize,
                beneficial: bool,
            }
            let row = Row {
                overhead,
                saved,
                physical_cnots_replaced: t.physical_cnots_replaced,
                beneficial: t.beneficial,
            };
            o.rows(&[row], format)?;
        }
        Command::Topology {
            graph,
            metrics,
            format,
        } => {
            let names: Vec<String> = if graph == "all" {
                builtin_names().into_iter().map(String::from).collect()
            } else {
                vec![graph]
            };
            let wanted: Vec<&str> = metrics.split(',').map(str::trim).collect();
            for m in &wanted {
                if !["cpl", "cc", "overhead"].contains(m) {
                    bail!("unknown metric '{m}'");
                }
            }
            #[derive(Serialize)]
            struct Row {
                graph: String,
                nodes: usize,
                edges: usize,
                cpl: Option<f64>,
                cc: Option<f64>,
                overhead: Option<f64>,
            }
            let mut rows = Vec::new();
            for name in names {
                let g = graph_by_name(&name)?;
                let round = |x: f64| (x * 10_000.0).round() / 10_000.0;
                rows.push(Row {
                    graph: g.name.clone(),
                    nodes: g.nodes,
                    edges: g.edges.len(),
                    cpl: wanted.contains(&"cpl").then(|| cpl(&g).map(round)).transpose()?,
                    cc: wanted.contains(&"cc").then(|| round(clustering_coefficient(&g))),
                    overhead: wanted
                        .contains(&"overhead")
                        .then(|| cnot_overhead_estimate(&g))
                        .transpose()?,
                });
            }
            o.rows(&rows, format)?;
        }
        Command::CostTable {
            measured,
            all,
            format,
        } => {
            #[derive(Serialize)]
            struct Row {
                decomp: String,
                depth: usize,
                cnot: usize,
                t_depth: usize,
                t_count: usize,
                ancillae: usize,
                legacy_depth: Option<usize>,
            }
            let rows: Vec<Row> = cost_table()
                .into_iter()
                .filter(|(k, _)| all || published_row(*k).is_some())
                .map(|(k, row)| {
                    let row = if measured { measured_row(k) } else { row };
                    Row {
                        decomp: k.to_string(),
                        depth: row.depth,
                        cnot: row.cnot_c,
                        t_depth: row.t_d,
                        t_count: row.t_c,
                        ancillae: row.ancillae,
                        legacy_depth: row.legacy_depth,
                    }
                })
                .collect();
            o.rows(&rows, format)?;
        }
    }
    Ok(EXIT_OK)
}

fn analyze(
    input: Option<PathBuf>,
    target: &Target,
    lowering: &Lowering,
    n_min: usize,
    n_max: Option<usize>,
    formula: bool,
) -> anyhow::Result<Vec<ReportRow>> {
    let mode = lowering.mode();
    if input.is_some() {
        let c = read_circuit(&input)?;
        let r = report_with(&c, mode);
        return Ok(vec![ReportRow::from_report(0, "file", "as-is", &r, mode)]);
    }
    let family = target.family.ok_or_else(|| anyhow!("--family or --input is required"))?;
    let ns: Vec<usize> = match (target.n, n_max) {
        (Some(n), None) => vec![n],
        (None, Some(m)) => (n_min..=m).collect(),
        (Some(_), Some(_)) => bail!("--n and --n-max are exclusive"),
        (None, None) => bail!("--n or --n-max is required"),
    };
    let label = lowering.label();
    let mut rows = Vec::with_capacity(ns.len());
    for n in ns {
        if formula {
            if family != Family::CtrlRipple {
                bail!("closed forms are implemented for the controlled adder only");
            }
            let kind = lowering.decomp.unwrap_or(DecompKind::A4t1);
            let f = adder_formulas(&FormulaInputs::for_kind(n, kind, lowering.legacy)?)?;
            let t_c = published_row(kind).map_or(0, |r| r.t_c);
            rows.push(ReportRow {
                n,
                family: family.to_string(),
                decomp: format!("{label} (formula)"),
                depth: f.depth,
                t_depth: f.t_depth,
                t_count: t_c * (3 * n + 2),
                cnot: f.cnot,
                width: f.qubits,
                kq: f.depth * f.qubits,
                kq_t: f.t_depth * f.qubits,
            });
            continue;
        }
        let spec = target.spec_at(family, n, Some(lowering));
        let (c, _) = spec.build()?;
        let e = expand(&c, &lowering.policy()?)?;
        let r = report_with(&e, mode);
        rows.push(ReportRow::from_report(n, family.name(), &label, &r, mode));
    }
    Ok(rows)
}
