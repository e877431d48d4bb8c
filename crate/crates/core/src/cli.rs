//! Command-line front end.
//!
//! Every command renders either a plain-text table or a single JSON document.
//! Documents deserialize back into the types they were produced from, and
//! output depends only on the arguments and the input file.
//!
//! Exit codes: 0 on success (including empty results), 1 for usage errors,
//! 2 when the input data violates a constraint.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::branching::{
    canonical_datum, enumerate_admissible, locus, BranchingSequence, SmoothLocus,
};
use crate::cover_algebra::{is_irreducible, l_chi, BranchAssignment, Irreducibility};
use crate::error::Error;
use crate::picard::DivisorClass;
use crate::sing_smooth::{classify, decompose_sing, ClassificationRecord, SingReport};
use crate::sing_stable::{
    aut_bounds, boundary_scan, decompose_sing_bar, AutBoundReport, BoundaryComponent,
    DecompositionReport,
};
use crate::stable_graphs::{
    canonical_graph, enlarge_max, enlarge_type1, enlarge_type2, enumerate_graphs,
    simplify_with_trace, stratum_dimension, AutoGraph, PreGraph, SmoothingStep,
};

#[derive(Parser, Debug)]
#[command(
    name = "cyclic-covers",
    version,
    about = "Cyclic covers of curves and the singular locus of M_g"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Admissible branching data of order `d` in genus `g`.
    Admissible {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        order: u32,
    },
    /// Invariants of one locus; `--datum 4,1` lists `k_1, ..., k_{d-1}`.
    Locus {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        order: u32,
        #[arg(long, value_delimiter = ',')]
        datum: Vec<u32>,
    },
    /// Irreducible components of the singular locus of `M_g`.
    Sing {
        #[arg(long)]
        genus: u32,
    },
    /// Maximal admissible graphs of genus `g` and prime order `d`.
    Graphs {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        order: u32,
    },
    /// Smooth every smoothable node of a graph document.
    Simplify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Enlarge a maximal graph at an `I1` vertex.
    Enlarge {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: EnlargeMode,
        #[arg(long)]
        vertex: u32,
    },
    /// Boundary components of the singular locus of the compactification.
    Boundary {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        dmax: u32,
    },
    /// Interior and boundary components together.
    SingBar {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        dmax: u32,
    },
    /// Automorphism-count bounds.
    Bounds {
        #[arg(long)]
        genus: u32,
    },
    /// Branch assignments of `w^d = f`.
    Cover {
        #[command(subcommand)]
        command: CoverCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoverCommand {
    /// Eigensheaf classes and irreducibility of a branch assignment document.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnlargeMode {
    Type1,
    Type2,
    Max,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusReport {
    pub locus: SmoothLocus,
    /// Present for `g >= 3`.
    pub classification: Option<ClassificationRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplifyReport {
    pub graph: AutoGraph,
    pub trace: Vec<SmoothingStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnlargeReport {
    pub graph: AutoGraph,
    pub dim_before: i64,
    pub dim_after: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub g: u32,
    pub d_max: u32,
    pub components: Vec<BoundaryComponent>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notices: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub d: u32,
    /// `L_chi` for `chi = 0, ..., d - 1`.
    pub eigensheaves: Vec<DivisorClass>,
    pub irreducibility: Irreducibility,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GenusTooSmall { .. } | Error::OrderTooSmall(_) | Error::NotPrime(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Data(e.to_string()),
        }
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Data(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn check_genus(g: u32) -> Result<(), Failure> {
    if g < 2 {
        return Err(Failure::Usage(format!(
            "--genus must be at least 2 (got {g})"
        )));
    }
    Ok(())
}

fn check_order(d: u32) -> Result<(), Failure> {
    if d < 2 {
        return Err(Failure::Usage(format!(
            "--order must be at least 2 (got {d})"
        )));
    }
    Ok(())
}

fn read_document<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Admissible { genus, order } => {
            check_genus(*genus)?;
            check_order(*order)?;
            let loci = enumerate_admissible(*genus, *order)?
                .into_iter()
                .map(|(datum, _)| locus(*genus, &datum))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(match fmt {
                Format::Json => json(&loci),
                Format::Table => loci_table(&loci),
            })
        }
        Command::Locus {
            genus,
            order,
            datum,
        } => {
            check_genus(*genus)?;
            check_order(*order)?;
            let seq = BranchingSequence::new(*order, datum.clone())?;
            let l = locus(*genus, &canonical_datum(&seq))?;
            let classification = if *genus >= 3 && crate::arith::is_prime(*order) {
                Some(classify(&l)?)
            } else {
                None
            };
            let report = LocusReport {
                locus: l,
                classification,
            };
            Ok(match fmt {
                Format::Json => json(&report),
                Format::Table => {
                    let mut s = loci_table(std::slice::from_ref(&report.locus));
                    if let Some(c) = &report.classification {
                        let _ = writeln!(s, "verdict {}", serde_name(&c.verdict));
                        s.push_str(&record_line(c));
                    }
                    s
                }
            })
        }
        Command::Sing { genus } => {
            check_genus(*genus)?;
            let report = decompose_sing(*genus)?;
            Ok(match fmt {
                Format::Json => json(&report),
                Format::Table => sing_table(&report),
            })
        }
        Command::Graphs { genus, order } => {
            check_genus(*genus)?;
            check_order(*order)?;
            let graphs = enumerate_graphs(*genus, *order, |_| true)?;
            Ok(match fmt {
                Format::Json => json(&graphs),
                Format::Table => {
                    let mut s = format!("{} maximal graphs\n", graphs.len());
                    for g in &graphs {
                        let _ = writeln!(s, "  {}", g.as_pregraph());
                    }
                    s
                }
            })
        }
        Command::Simplify { input } => {
            let g: PreGraph = read_document(input)?;
            let (maximal, trace) = simplify_with_trace(&g);
            let graph = AutoGraph::try_from(canonical_graph(&maximal).graph)?;
            let report = SimplifyReport { graph, trace };
            Ok(match fmt {
                Format::Json => json(&report),
                Format::Table => {
                    let mut s = String::new();
                    for step in &report.trace {
                        let _ = writeln!(s, "smooth {:?} into vertex {}", step.edge, step.vertex);
                    }
                    let _ = writeln!(s, "{}", report.graph.as_pregraph());
                    s
                }
            })
        }
        Command::Enlarge {
            input,
            mode,
            vertex,
        } => {
            let g: AutoGraph = read_document(input)?;
            let out = match mode {
                EnlargeMode::Type1 => enlarge_type1(&g, *vertex)?,
                EnlargeMode::Type2 => enlarge_type2(&g, *vertex)?,
                EnlargeMode::Max => enlarge_max(&g, *vertex)?,
            };
            let report = EnlargeReport {
                dim_before: stratum_dimension(&g)?,
                dim_after: stratum_dimension(&out)?,
                graph: AutoGraph::try_from(canonical_graph(&out).graph)?,
            };
            Ok(match fmt {
                Format::Json => json(&report),
                Format::Table => format!(
                    "{}\ndim {} -> {}\n",
                    report.graph.as_pregraph(),
                    report.dim_before,
                    report.dim_after
                ),
            })
        }
        Command::Boundary { genus, dmax } => {
            check_genus(*genus)?;
            check_order(*dmax)?;
            let (components, notices) = boundary_scan(*genus, *dmax)?;
            let report = BoundaryReport {
                g: *genus,
                d_max: *dmax,
                components,
                notices,
            };
            Ok(match fmt {
                Format::Json => json(&report),
                Format::Table => {
                    let mut s = String::new();
                    for n in &report.notices {
                        let _ = writeln!(s, "note: {n}");
                    }
                    s.push_str(&boundary_table(&report.components));
                    s
                }
            })
        }
        Command::SingBar { genus, dmax } => {
            check_genus(*genus)?;
            check_order(*dmax)?;
            let report = decompose_sing_bar(*genus, *dmax)?;
            Ok(match fmt {
                Format::Json => json(&report),
                Format::Table => sing_bar_table(&report),
            })
        }
        Command::Bounds { genus } => {
            check_genus(*genus)?;
            let report = aut_bounds(*genus)?;
            Ok(match fmt {
                Format::Json => json(&report),
                Format::Table => bounds_table(&report),
            })
        }
        Command::Cover {
            command: CoverCommand::Check { input },
        } => {
            let ba: BranchAssignment = read_document(input)?;
            let eigensheaves = (0..ba.d())
                .map(|chi| l_chi(&ba, chi))
                .collect::<Result<Vec<_>, _>>()?;
            let report = CoverReport {
                d: ba.d(),
                eigensheaves,
                irreducibility: is_irreducible(&ba),
            };
            Ok(match fmt {
                Format::Json => json(&report),
                Format::Table => {
                    let mut s = String::new();
                    for (chi, l) in report.eigensheaves.iter().enumerate() {
                        let _ = writeln!(s, "L_{chi} = {l}");
                    }
                    let i = &report.irreducibility;
                    let _ = writeln!(
                        s,
                        "m = {}, {}",
                        i.m,
                        if i.irreducible {
                            "irreducible"
                        } else {
                            "reducible"
                        }
                    );
                    s
                }
            })
        }
    }
}

fn loci_table(loci: &[SmoothLocus]) -> String {
    let mut s = format!(
        "{:<28} {:>3} {:>3} {:>4} {:>6}\n",
        "locus", "h", "k", "dim", "codim"
    );
    for l in loci {
        let _ = writeln!(
            s,
            "{:<28} {:>3} {:>3} {:>4} {:>6}",
            l.label(),
            l.h,
            l.k,
            l.dim,
            l.codim
        );
    }
    s
}

fn serde_name<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        other => format!("{other:?}"),
    }
}

fn record_line(r: &ClassificationRecord) -> String {
    let mut s = format!("  {} dim {}", r.locus.label(), r.locus.dim);
    if let Some(tag) = r.case_tag {
        let _ = write!(s, " {}", serde_name(&tag));
    }
    if let Some(c) = &r.container {
        let _ = write!(s, " in {}", c.describe());
    }
    s.push('\n');
    s
}

fn sing_table(r: &SingReport) -> String {
    let mut s = String::new();
    let sections: [(&str, &[ClassificationRecord]); 4] = [
        ("components", &r.components),
        ("redundant", &r.redundant),
        ("excluded (pseudoreflections)", &r.excluded),
        ("manual review", &r.manual_review),
    ];
    for (title, records) in sections {
        let _ = writeln!(s, "{title}: {}", records.len());
        for rec in records {
            s.push_str(&record_line(rec));
        }
    }
    s
}

fn boundary_table(components: &[BoundaryComponent]) -> String {
    let mut s = format!("boundary components: {}\n", components.len());
    for c in components {
        let _ = write!(
            s,
            "  dim {} codim {} {}",
            c.dim,
            c.codim,
            c.graph.as_pregraph()
        );
        if !c.flags.is_empty() {
            let names: Vec<String> = c.flags.iter().map(serde_name).collect();
            let _ = write!(s, " [{}]", names.join(", "));
        }
        s.push('\n');
    }
    s
}

fn sing_bar_table(r: &DecompositionReport) -> String {
    let mut s = String::new();
    for n in &r.notices {
        let _ = writeln!(s, "note: {n}");
    }
    let _ = writeln!(s, "interior components: {}", r.interior.components.len());
    for rec in &r.interior.components {
        s.push_str(&record_line(rec));
    }
    s.push_str(&boundary_table(&r.boundary));
    let _ = writeln!(s, "warnings: {}", r.warnings.len());
    for w in &r.warnings {
        let _ = writeln!(s, "  {w}");
    }
    s
}

fn bounds_table(r: &AutBoundReport) -> String {
    format!(
        "g = {}\n2^g = {}\n2g 6^g = {}\n84(g-1) = {}\ntail orders {:?}\nspecial exceeds Hurwitz: {}\n",
        r.g,
        r.generic_lower,
        r.special_config,
        r.hurwitz_smooth,
        r.tail_orders,
        r.special_exceeds_hurwitz
    )
}
