//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification or observation check
//! fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;

use clap::{Parser, Subcommand, ValueEnum};

use crate::alpha::{alpha_energy, alpha_spectrum, AlphaValue};
use crate::analysis::{self, SweepTable, DEFAULT_TOL};
use crate::closed_forms::{self, ClosedForm, RegularBase, ScalingOp};
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::linalg;
use crate::ops::OpDescriptor;

#[derive(Debug, Parser)]
#[command(
    name = "alpha-energy",
    version,
    about = "A_α spectra and energies of graphs and graph operations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a generated graph as an edge list.
    Gen { family: String },
    /// Apply an operation and print the result as an edge list.
    Op { op: String, source: String },
    /// A_α eigenvalues grouped by multiplicity.
    Spectrum {
        source: String,
        #[arg(long)]
        alpha: String,
        /// Also compute the exact characteristic polynomial and its roots.
        #[arg(long)]
        exact: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// A_α energy of one graph.
    Energy {
        source: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Energies over an α grid (`lo:hi:step` or a comma-separated list).
    Sweep {
        #[arg(required = true)]
        sources: Vec<String>,
        #[arg(long)]
        alphas: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Compare a closed-form spectrum (or energy) with the eigensolver.
    Verify {
        op: String,
        base: String,
        #[arg(long, default_value = "0:0.75:0.25")]
        alphas: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Also compare with exact characteristic-polynomial roots.
        #[arg(long)]
        exact: bool,
    },
    /// Borderenergetic / hyperenergetic verdict against K_n.
    Classify {
        source: String,
        #[arg(long)]
        alpha: String,
        /// Graph sources to test for equal energy.
        #[arg(long, num_args = 1..)]
        peers: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Energies of the reference graph families for α = 0, 0.1, …, 0.9.
    Table1 {
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Check the equienergetic / borderenergetic observations on the table.
    Observations {
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
}

/// Parses `argv`, runs the command, writes to stdout/stderr and returns the
/// exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok((out, status)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            status
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(cmd: Command) -> Result<(String, i32)> {
    let mut out = String::new();
    let mut status = 0;
    match cmd {
        Command::Gen { family } => {
            let (_, g) = parse_graph_source(&family)?;
            out = graph::write_edge_list(&g);
        }
        Command::Op { op, source } => {
            let op: OpDescriptor = op.parse()?;
            let (_, g) = parse_graph_source(&source)?;
            out = graph::write_edge_list(&op.apply(&g)?);
        }
        Command::Spectrum {
            source,
            alpha,
            exact,
            format,
        } => {
            let (id, g) = parse_graph_source(&source)?;
            let a: AlphaValue = alpha.parse()?;
            let spec = alpha_spectrum(&g, &a)?;
            let exact_part = if exact {
                let m = crate::alpha::a_alpha_matrix_exact(&g, &a)?;
                let cp = linalg::charpoly_exact(&m)?;
                let roots = linalg::Spectrum::from_values(linalg::poly_roots_real(&cp)?);
                Some((cp, roots))
            } else {
                None
            };
            match format {
                ReportFormat::Text => {
                    for grp in spec.groups() {
                        let _ = writeln!(
                            out,
                            "{:.10}\t{}",
                            clean_zero(grp.value, 1e-10),
                            grp.multiplicity
                        );
                    }
                    if let Some((cp, roots)) = &exact_part {
                        let _ = writeln!(out, "charpoly: {cp}");
                        for grp in roots.groups() {
                            let _ = writeln!(
                                out,
                                "exact {:.12}\t{}",
                                clean_zero(grp.value, 1e-12),
                                grp.multiplicity
                            );
                        }
                    }
                }
                ReportFormat::Json => {
                    let mut v = serde_json::json!({
                        "graph": {"id": id, "p": g.p(), "q": g.q(), "regular": g.regularity()},
                        "alpha": a.numeric(),
                        "eigenvalues": spec.groups(),
                    });
                    if let Some((cp, roots)) = &exact_part {
                        v["charpoly"] = serde_json::Value::String(cp.to_string());
                        v["exact_eigenvalues"] =
                            serde_json::to_value(roots.groups()).expect("serializes");
                    }
                    out = format!(
                        "{}\n",
                        serde_json::to_string_pretty(&v).expect("serializes")
                    );
                }
            }
        }
        Command::Energy {
            source,
            alpha,
            format,
        } => {
            let (id, g) = parse_graph_source(&source)?;
            let a: AlphaValue = alpha.parse()?;
            let report = alpha_energy(&g, &a)?.with_id(id);
            out = match format {
                ReportFormat::Text => format!("{}\n", format_energy(report.energy)),
                ReportFormat::Json => {
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&report.to_json()).expect("serializes")
                    )
                }
            };
        }
        Command::Sweep {
            sources,
            alphas,
            format,
        } => {
            let alphas = parse_alphas(&alphas)?;
            let entries = sources
                .iter()
                .map(|s| parse_graph_source(s))
                .collect::<Result<Vec<_>>>()?;
            match format {
                TableFormat::Csv => out = SweepTable::compute(&entries, &alphas)?.to_csv(),
                TableFormat::Json => {
                    let mut reports = Vec::new();
                    for (id, g) in &entries {
                        for r in crate::alpha::energy_sweep(g, &alphas)? {
                            reports.push(r.with_id(id.clone()).to_json());
                        }
                    }
                    out = format!(
                        "{}\n",
                        serde_json::to_string_pretty(&reports).expect("serializes")
                    );
                }
            }
        }
        Command::Verify {
            op,
            base,
            alphas,
            tol,
            exact,
        } => {
            let op: OpDescriptor = op.parse()?;
            let (id, g) = parse_graph_source(&base)?;
            let b = RegularBase::new(id, &g)?;
            for a in parse_alphas(&alphas)? {
                let rec = match (ClosedForm::from_op(op), op) {
                    (Some(cf), _) => closed_forms::verify_closed_form(cf, &b, &a, tol, exact)?,
                    (None, OpDescriptor::Shadow(m)) => {
                        closed_forms::verify_scaling_energy(ScalingOp::Shadow(m), &b, &a, tol)?
                    }
                    (None, OpDescriptor::Duplicate(m)) => {
                        closed_forms::verify_scaling_energy(ScalingOp::Duplicate(m), &b, &a, tol)?
                    }
                    (None, OpDescriptor::Line(k)) if k >= 2 => {
                        closed_forms::verify_scaling_energy(ScalingOp::Line(k - 1), &b, &a, tol)?
                    }
                    _ => return Err(Error::ClosedForm(format!("no closed form for {op}"))),
                };
                if !rec.pass {
                    status = 1;
                }
                let _ = writeln!(out, "{}", serde_json::to_string(&rec).expect("serializes"));
            }
        }
        Command::Classify {
            source,
            alpha,
            peers,
            tol,
        } => {
            let (id, g) = parse_graph_source(&source)?;
            let a: AlphaValue = alpha.parse()?;
            let peers = peers
                .iter()
                .flat_map(|p| p.split(';'))
                .filter(|p| !p.is_empty())
                .map(parse_graph_source)
                .collect::<Result<Vec<_>>>()?;
            let res = analysis::classify(&id, &g, &a, &peers, tol)?;
            out = format!(
                "{}\n",
                serde_json::to_string_pretty(&res).expect("serializes")
            );
        }
        Command::Table1 { format } => {
            let table = analysis::table1()?;
            out = match format {
                TableFormat::Csv => table.to_csv(),
                TableFormat::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&table.to_json()).expect("serializes")
                ),
            };
        }
        Command::Observations { tol, format } => {
            let report = analysis::observations_report(tol)?;
            if !report.all_pass() {
                status = 1;
            }
            out = match format {
                ReportFormat::Text => report.to_text(),
                ReportFormat::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report.to_json()).expect("serializes")
                ),
            };
        }
    }
    Ok((out, status))
}

/// Maps values that would print as a signed zero to 0.
fn clean_zero(v: f64, resolution: f64) -> f64 {
    if v.abs() < resolution / 2.0 {
        0.0
    } else {
        v
    }
}

/// Shortest decimal after rounding to 10 places, so 7 prints as `7.0`.
pub fn format_energy(e: f64) -> String {
    let r = (e * 1e10).round() / 1e10 + 0.0;
    format!("{r:?}")
}

/// `C<n>`, `P<n>`, `K<n>`, `K<a>,<b>`, `petersen`, `file:<path>`, or
/// `op:<opdesc>:<source>`. Returns the source string as the graph id.
pub fn parse_graph_source(s: &str) -> Result<(String, Graph)> {
    let s = s.trim();
    let g = if let Some(path) = s.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        graph::read_edge_list(&text)?
    } else if let Some(rest) = s.strip_prefix("op:") {
        let (op, inner) =
            split_op(rest).ok_or_else(|| Error::UnknownOperation(rest.to_string()))?;
        let op: OpDescriptor = op.parse()?;
        op.apply(&parse_graph_source(inner)?.1)?
    } else {
        parse_family(s)?
    };
    Ok((s.to_string(), g))
}

/// Splits `<opdesc>:<source>`, where parametrised operations carry one
/// extra `:<m>` field.
fn split_op(rest: &str) -> Option<(&str, &str)> {
    let (name, tail) = rest.split_once(':')?;
    if matches!(name, "splitting" | "shadow" | "line" | "duplicate") {
        let (arg, src) = tail.split_once(':')?;
        Some((&rest[..name.len() + 1 + arg.len()], src))
    } else {
        Some((name, tail))
    }
}

fn parse_family(s: &str) -> Result<Graph> {
    let unknown = || Error::UnknownFamily(s.to_string());
    if s.eq_ignore_ascii_case("petersen") {
        return Ok(graph::petersen());
    }
    let mut chars = s.chars();
    let head = chars.next().ok_or_else(unknown)?;
    let body = chars.as_str();
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| unknown());
    match head {
        'C' => graph::cycle(num(body)?),
        'P' => graph::path(num(body)?),
        'K' => match body.split_once(',') {
            Some((a, b)) => graph::complete_bipartite(num(a)?, num(b)?),
            None => graph::complete(num(body)?),
        },
        _ => Err(unknown()),
    }
}

/// `lo:hi:step` (inclusive, exact when all three parts are exact) or a
/// comma-separated list.
pub fn parse_alphas(s: &str) -> Result<Vec<AlphaValue>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [lo, hi, step] => {
            let (lo, hi, step): (AlphaValue, AlphaValue, AlphaValue) =
                (lo.parse()?, hi.parse()?, step.parse()?);
            if step.numeric() <= 0.0 {
                return Err(Error::MalformedAlpha(s.to_string()));
            }
            let mut out = Vec::new();
            if let (Some(l), Some(h), Some(d)) = (lo.exact(), hi.exact(), step.exact()) {
                let mut x = l.clone();
                while &x <= h {
                    out.push(AlphaValue::from_rational(x.clone())?);
                    x += d;
                }
            } else {
                let n = ((hi.numeric() - lo.numeric()) / step.numeric() + 1e-9).floor() as usize;
                for k in 0..=n {
                    out.push(AlphaValue::new(
                        (lo.numeric() + k as f64 * step.numeric()).min(1.0),
                    )?);
                }
            }
            if out.is_empty() {
                return Err(Error::MalformedAlpha(s.to_string()));
            }
            Ok(out)
        }
        [_] => s.split(',').map(str::parse).collect(),
        _ => Err(Error::MalformedAlpha(s.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sources() {
        assert_eq!(
            parse_graph_source("C5").unwrap().1,
            graph::cycle(5).unwrap()
        );
        assert_eq!(
            parse_graph_source("K3,3").unwrap().1,
            graph::complete_bipartite(3, 3).unwrap()
        );
        assert_eq!(parse_graph_source("K4").unwrap().1.q(), 6);
        assert_eq!(parse_graph_source("P3").unwrap().1.q(), 2);
        assert_eq!(parse_graph_source("petersen").unwrap().1.q(), 15);
        let g = parse_graph_source("op:splitting:2:C4").unwrap().1;
        assert_eq!((g.p(), g.q()), (12, 20));
        let g = parse_graph_source("op:closed-shadow:op:duplicate:1:C3")
            .unwrap()
            .1;
        assert_eq!(g.p(), 12);
        assert!(matches!(
            parse_graph_source("X7"),
            Err(Error::UnknownFamily(_))
        ));
        assert!(matches!(
            parse_graph_source("op:twist:C4"),
            Err(Error::UnknownOperation(_))
        ));
        assert!(matches!(
            parse_graph_source("file:/no/such/file"),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn alpha_grids() {
        let v: Vec<f64> = parse_alphas("0:0.75:0.25")
            .unwrap()
            .iter()
            .map(AlphaValue::numeric)
            .collect();
        assert_eq!(v, vec![0.0, 0.25, 0.5, 0.75]);
        let v = parse_alphas("0:0.9:0.1").unwrap();
        assert_eq!(v.len(), 10);
        assert!(v.iter().all(|a| a.exact().is_some()));
        assert_eq!(parse_alphas("0.1,1/3").unwrap().len(), 2);
        assert!(parse_alphas("0:1:0").is_err());
        assert!(parse_alphas("a:b").is_err());
    }

    #[test]
    fn energy_formatting() {
        assert_eq!(format_energy(7.000000000001), "7.0");
        assert_eq!(format_energy(13.152982445), "13.152982445");
        assert_eq!(format_energy(-0.0), "0.0");
    }
}
