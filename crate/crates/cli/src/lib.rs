//! Command-line front end: tables, single-class analysis, regressions.

pub mod acceptance;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use jhp_core::grothendieck::{presentation_of, report_presentation, Built, CategorySource, Options};
use jhp_core::monoid::{cayley_quiver, parse_presentation, Strata};
use jhp_core::nakayama::{KupischSeries, TFClassN};
use jhp_core::regress::{run_regressions, RegressionConfig};
use jhp_core::symgroup::{Orientation, Permutation};
use jhp_core::type_a::{census, table_rows};
use jhp_core::Error;

#[derive(Parser, Debug)]
#[command(name = "jhp-lab", version, about = "Jordan-Hölder checks for exact categories")]
pub struct Cli {
    /// Largest total dimension handed to subobject enumeration.
    #[arg(long, env = "JHP_LAB_BOUND", default_value_t = 8, global = true, hide = true)]
    pub dim_bound: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tables of c-sortable elements, or the census of an orientation.
    Tables {
        #[arg(long, value_enum)]
        which: Which,
        /// Defaults to 1>2<3 for table1 and 1<2>3<4 otherwise.
        #[arg(long)]
        quiver: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Grothendieck monoid report of one class or presentation.
    Analyze {
        #[arg(long, requires = "w", conflicts_with = "spec")]
        quiver: Option<String>,
        #[arg(long, requires = "quiver")]
        w: Option<String>,
        /// Presentation file, or a Kupisch line followed by a class line.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Grade bound for relations and the cancellativity scan.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the truncated Cayley quiver here.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Counterexample regression suite.
    Regress {
        /// Only items whose name starts with this.
        #[arg(long)]
        only: Option<String>,
        /// Replacement loop-algebra presentation.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Table1,
    Table2,
    Census,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Dot,
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Precondition(String),
    Resource(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Resource(_) => 4,
            CliError::Internal(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Precondition(m) | CliError::Resource(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DimensionBoundExceeded { .. } | Error::EnumerationOverflow(_) => CliError::Resource(e.to_string()),
            Error::SingularSystem | Error::NegativeMultiplicity => CliError::Internal(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

/// Sends output to `--out` when given, else to `stdout`.
fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Runs one command; the returned code is the process exit status.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Tables { which, quiver, out, format } => {
            let text = tables(*which, quiver.as_deref(), *format)?;
            emit(&text, out.as_deref(), stdout)?;
            Ok(0)
        }
        Command::Analyze { quiver, w, spec, bound, out, dot, format } => {
            let opts = Options { grade_bound: *bound, dim_bound: cli.dim_bound };
            let (label, built) = match (quiver, w, spec) {
                (Some(q), Some(w), None) => {
                    let src = CategorySource::TypeATorsionFree { w: Permutation::parse(w)?, quiver: Orientation::parse(q)? };
                    (src.label(), presentation_of(&src, &opts)?)
                }
                (None, None, Some(path)) => {
                    let src = source_from_file(path)?;
                    (src.label(), presentation_of(&src, &opts)?)
                }
                _ => return Err(CliError::Precondition("give either --quiver and --w, or --spec".into())),
            };
            let dot_text = || cayley_quiver(&built.presentation, &mut Strata::new(), built.grade_bound);
            if let Some(path) = dot {
                let text = dot_text()?;
                fs::write(path, text).map_err(|e| io_err(path, e))?;
            }
            let text = match format {
                Format::Dot => dot_text()?,
                Format::Json => analyze_json(&label, &built)?,
                Format::Csv => return Err(CliError::Precondition("analyze writes json or dot".into())),
            };
            emit(&text, out.as_deref(), stdout)?;
            Ok(0)
        }
        Command::Regress { only, spec } => {
            let mut cfg = RegressionConfig::default();
            if let Some(path) = spec {
                cfg.loop_presentation = Some(parse_presentation(&read(path)?)?);
            }
            let items = run_regressions(&cfg, only.as_deref());
            if items.is_empty() {
                return Err(CliError::Precondition(format!("no regression item matches {:?}", only.as_deref().unwrap_or(""))));
            }
            let mut text = String::new();
            for item in &items {
                text.push_str(&item.line());
                text.push('\n');
            }
            emit(&text, None, stdout)?;
            Ok(if items.iter().all(|i| i.pass) { 0 } else { 1 })
        }
    }
}

fn analyze_json(label: &str, built: &Built) -> Result<String, CliError> {
    let report = report_presentation(label, built)?;
    let mut s = serde_json::to_string_pretty(&report).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// A presentation file, or a Nakayama class written as
/// `kupisch: 1,2,3` followed by `class: 1:1, 2:2`.
pub fn source_from_file(path: &Path) -> Result<CategorySource, CliError> {
    let text = read(path)?;
    let mut lines = text.lines().map(|l| l.split('#').next().unwrap().trim()).filter(|l| !l.is_empty());
    let first = lines.next().unwrap_or("");
    if first.starts_with("kupisch") {
        let k = KupischSeries::parse(first)?;
        let rest: Vec<&str> = lines.collect();
        let class = rest.join(" ");
        let class = class.strip_prefix("class:").unwrap_or(&class);
        let f = TFClassN::parse(k, class)?;
        let (ok, violations) = f.validate();
        if !ok {
            return Err(CliError::Precondition(format!("not a torsion-free class: {}", violations.join("; "))));
        }
        return Ok(CategorySource::NakayamaTorsionFree(f));
    }
    let presentation = parse_presentation(&text)?;
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(CategorySource::Abstract { label, presentation })
}

pub fn default_quiver(which: Which) -> &'static str {
    match which {
        Which::Table1 => "1>2<3",
        Which::Table2 | Which::Census => "1<2>3<4",
    }
}

pub const TABLE_HEADER: [&str; 6] = ["w", "supp", "inv", "Binv", "#simp", "jhp"];

/// Renders a table or census; table2 keeps only the faithful rows.
pub fn tables(which: Which, quiver: Option<&str>, format: Format) -> Result<String, CliError> {
    let q = Orientation::parse(quiver.unwrap_or(default_quiver(which)))?;
    let internal = |e: Box<dyn std::error::Error>| CliError::Internal(e.to_string());
    match (which, format) {
        (Which::Census, Format::Csv) => {
            let c = census(&q);
            Ok(format!("total,jhp,faithful_jhp\n{},{},{}\n", c.total, c.jhp, c.faithful_jhp))
        }
        (Which::Census, Format::Json) => {
            Ok(serde_json::to_string_pretty(&census(&q)).map_err(|e| internal(e.into()))? + "\n")
        }
        (_, Format::Csv) => {
            let rows = table_rows(&q, which == Which::Table2);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(TABLE_HEADER).map_err(|e| internal(e.into()))?;
            for r in &rows {
                w.write_record(r.cells()).map_err(|e| internal(e.into()))?;
            }
            let bytes = w.into_inner().map_err(|e| internal(e.to_string().into()))?;
            String::from_utf8(bytes).map_err(|e| internal(e.into()))
        }
        (_, Format::Json) => {
            let rows: Vec<serde_json::Map<String, serde_json::Value>> = table_rows(&q, which == Which::Table2)
                .iter()
                .map(|r| TABLE_HEADER.iter().map(|h| h.to_string()).zip(r.cells().map(serde_json::Value::String)).collect())
                .collect();
            Ok(serde_json::to_string_pretty(&rows).map_err(|e| internal(e.into()))? + "\n")
        }
        (_, Format::Dot) => Err(CliError::Precondition("tables write csv or json".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_classes() {
        assert_eq!(CliError::from(Error::DimensionBoundExceeded { dim: 9, bound: 8 }).exit_code(), 4);
        assert_eq!(CliError::from(Error::EnumerationOverflow("x".into())).exit_code(), 4);
        assert_eq!(CliError::from(Error::NotSortable { w: "4231".into(), c: "3142".into() }).exit_code(), 3);
        assert_eq!(CliError::from(Error::Parse("x".into())).exit_code(), 3);
        assert_eq!(CliError::Io("x".into()).exit_code(), 2);
    }

    #[test]
    fn csv_quotes_sets() {
        let t = tables(Which::Table1, None, Format::Csv).unwrap();
        assert_eq!(t.lines().next().unwrap(), "w,supp,inv,Binv,#simp,jhp");
        assert!(t.contains("3412,\"{1,2,3}\",\"{(1,3),(1,4),(2,3),(2,4)}\""));
        assert!(tables(Which::Table1, None, Format::Dot).is_err());
    }

    #[test]
    fn json_tables_match_csv_rows() {
        let j: serde_json::Value = serde_json::from_str(&tables(Which::Table2, None, Format::Json).unwrap()).unwrap();
        assert_eq!(j.as_array().unwrap().len(), 14);
        assert_eq!(j[9]["w"], "45231");
        assert_eq!(j[9]["#simp"], "6");
    }

    #[test]
    fn cli_parses_flags() {
        let cli = Cli::try_parse_from(["jhp-lab", "analyze", "--quiver", "1>2<3", "--w", "3412", "--bound", "6"]).unwrap();
        assert!(matches!(cli.command, Command::Analyze { bound: Some(6), .. }));
        assert!(Cli::try_parse_from(["jhp-lab", "analyze", "--w", "3412"]).is_err());
        assert!(Cli::try_parse_from(["jhp-lab", "tables", "--which", "table3"]).is_err());
    }
}
