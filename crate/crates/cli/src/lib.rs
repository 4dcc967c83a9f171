//! The `fencekit` command line.
//!
//! [`run`] parses arguments, executes one subcommand and reports an exit
//! code: 0 on success, 1 on domain errors (incompatible data, exceeded
//! bounds, failed checks), 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use fencekit_core::format::{rep_from_json, QuiverSpec};
use fencekit_core::hilbert::{self, cauchy_check, gm_table, transfer_check, Route};
use fencekit_core::lr::{gl_dim, lr_coefficient, multi_lr};
use fencekit_core::quiver::exhaustive_stability;
use fencekit_core::schur::kostka;
use fencekit_core::{oracle, BigUint, ComponentLabel, Composition, Error, Limits, Partition, Role};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "fencekit", version, about = "Exact combinatorics for fence quivers")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Littlewood-Richardson coefficient c^F_{D,E}.
    Lr {
        #[arg(long)]
        f: Partition,
        #[arg(long)]
        d: Partition,
        #[arg(long)]
        e: Partition,
    },
    /// Multiplicity of ρ_n^F in ρ_n^{D_1} ⊗ ⋯ ⊗ ρ_n^{D_m}.
    MultiLr {
        #[arg(long)]
        f: Partition,
        /// One factor; repeat for each.
        #[arg(long = "d", required = true)]
        ds: Vec<Partition>,
        #[arg(long)]
        n: usize,
    },
    /// Number of semistandard tableaux of shape F and the given content.
    Kostka {
        #[arg(long)]
        f: Partition,
        #[arg(long, value_delimiter = ',', required = true)]
        content: Vec<u32>,
    },
    /// Dimension of the GL_n module ρ_n^F.
    Dim {
        #[arg(long)]
        f: Partition,
        #[arg(long)]
        n: usize,
    },
    /// Both sides of the GL_n-GL_k decomposition of Mat_{n,k} in one degree.
    Cauchy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Exhaustive King stability of a representation over F_p.
    Stability {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Graded component of the parabolic invariant algebra for a label.
    Component {
        #[arg(long)]
        quiver: PathBuf,
        /// `vertex=parts`, e.g. `h=2,1`; unlisted vertices get the empty diagram.
        #[arg(long = "label")]
        labels: Vec<String>,
        /// Also solve for the invariants directly.
        #[arg(long)]
        oracle: bool,
    },
    /// Section dimensions of the quotient on both sides, levels 0..=nmax.
    GmVerify {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, default_value_t = 3)]
        nmax: u64,
        /// Skip the brute-force invariant column.
        #[arg(long)]
        no_oracle: bool,
    },
    /// Component of C[Mat_{n,m}] computed directly and through C[GL_m].
    Transfer {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        comp_n: Composition,
        #[arg(long)]
        comp_m: Composition,
        #[arg(long)]
        f: Partition,
    },
    /// Invariant dimension by direct linear algebra.
    Oracle {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long = "label")]
        labels: Vec<String>,
        /// Polynomial degree; defaults to the label's head box count.
        #[arg(long)]
        degree: Option<usize>,
    },
}

/// Result of a subcommand: a JSON value and its text rendering, plus whether
/// a check it performed failed.
struct Output {
    json: Value,
    text: String,
    failed: Option<String>,
}

impl Output {
    fn ok(json: Value, text: impl Into<String>) -> Self {
        Output {
            json,
            text: text.into(),
            failed: None,
        }
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => {
            let _ = writeln!(err, "fencekit: {e}");
            return 2;
        }
    };
    match execute(&cli.command, &limits) {
        Ok(output) => {
            let written = match cli.format {
                OutputFormat::Text => writeln!(out, "{}", output.text),
                OutputFormat::Json => writeln!(out, "{}", output.json),
            };
            if written.is_err() {
                return 1;
            }
            match output.failed {
                Some(msg) => {
                    let _ = writeln!(err, "fencekit: {msg}");
                    1
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "fencekit: {e}");
            1
        }
    }
}

fn big(x: &BigUint) -> Value {
    // exact even beyond u64, thanks to arbitrary_precision
    serde_json::from_str(&x.to_string()).expect("integer literal")
}

fn parts(p: &Partition) -> Value {
    json!(p.parts())
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn load_quiver(path: &Path) -> Result<QuiverSpec, Error> {
    QuiverSpec::from_json(&read(path)?)
}

/// Builds a label from `id=parts` arguments.
fn parse_label(spec: &QuiverSpec, args: &[String]) -> Result<ComponentLabel, Error> {
    let mut diagrams = vec![Partition::empty(); spec.quiver.vertex_count()];
    let mut given = vec![false; diagrams.len()];
    for arg in args {
        let (id, shape) = arg
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("label `{arg}` is not of the form vertex=parts")))?;
        let v = spec.quiver.index_of(id.trim())?;
        if std::mem::replace(&mut given[v], true) {
            return Err(Error::Format(format!("vertex `{id}` labelled twice")));
        }
        diagrams[v] = shape.parse()?;
    }
    Ok(ComponentLabel::new(diagrams))
}

fn label_text(spec: &QuiverSpec, label: &ComponentLabel) -> String {
    (0..spec.quiver.vertex_count())
        .map(|v| format!("{}={}", spec.quiver.id(v), label.get(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn label_json(spec: &QuiverSpec, label: &ComponentLabel) -> Value {
    let map: serde_json::Map<String, Value> = (0..spec.quiver.vertex_count())
        .map(|v| (spec.quiver.id(v).to_string(), parts(label.get(v))))
        .collect();
    Value::Object(map)
}

fn execute(command: &Command, limits: &Limits) -> Result<Output, Error> {
    Ok(match command {
        Command::Lr { f, d, e } => {
            let c = lr_coefficient(f, d, e);
            Output::ok(json!({"f": parts(f), "d": parts(d), "e": parts(e), "coefficient": c}), c.to_string())
        }
        Command::MultiLr { f, ds, n } => {
            let m = multi_lr(f, ds, *n);
            let d_json: Vec<Value> = ds.iter().map(parts).collect();
            Output::ok(json!({"f": parts(f), "d": d_json, "n": n, "multiplicity": big(&m)}), m.to_string())
        }
        Command::Kostka { f, content } => {
            let k = kostka(f, content);
            Output::ok(json!({"f": parts(f), "content": content, "kostka": big(&k)}), k.to_string())
        }
        Command::Dim { f, n } => {
            let dim = gl_dim(f, *n);
            Output::ok(json!({"f": parts(f), "n": n, "dimension": big(&dim)}), dim.to_string())
        }
        Command::Cauchy { n, k, degree } => {
            let r = cauchy_check(*n, *k, *degree);
            let op = if r.holds { "==" } else { "!=" };
            let status = if r.holds { "OK" } else { "FAIL" };
            Output {
                json: json!({"n": n, "k": k, "degree": degree, "lhs": big(&r.lhs), "rhs": big(&r.rhs), "holds": r.holds}),
                text: format!("{} {op} {} {status}", r.lhs, r.rhs),
                failed: (!r.holds).then(|| "the two sides differ".to_string()),
            }
        }
        Command::Stability { quiver, rep } => {
            let spec = load_quiver(quiver)?;
            let lin = spec.linearization().ok_or_else(|| {
                Error::Precondition("stability needs trivial compositions with scalar exponents".into())
            })?;
            let rep = rep_from_json(&spec.quiver, &spec.dims, &read(rep)?)?;
            let verdict = exhaustive_stability(&spec.quiver, &spec.dims, &lin, &rep, limits)?;
            let mut text = verdict.name().to_string();
            if let Some(w) = verdict.witness() {
                let dims: Vec<String> = (0..spec.quiver.vertex_count())
                    .map(|v| format!("{}={}", spec.quiver.id(v), w.dims[v]))
                    .collect();
                text.push_str(&format!("\nwitness {} pairing {}", dims.join(" "), w.pairing));
            }
            let json = serde_json::to_value(&verdict).map_err(|e| Error::Format(e.to_string()))?;
            Output::ok(json, text)
        }
        Command::Component { quiver, labels, oracle: with_oracle } => {
            let spec = load_quiver(quiver)?;
            let label = parse_label(&spec, labels)?;
            let comps = spec.parabolic.compositions();
            let dim = hilbert::component_dim(&spec.quiver, &spec.dims, comps, &label, limits)?;
            let mut json = json!({"label": label_json(&spec, &label), "dimension": big(&dim)});
            let mut text = dim.to_string();
            let mut failed = None;
            if *with_oracle {
                let degree = label.box_count(&spec.quiver, Role::Head);
                let brute = oracle::component_dim(&spec.quiver, &spec.dims, comps, &label, degree, limits)?;
                json["oracle"] = big(&brute);
                text = format!("{dim} (oracle {brute})");
                if brute != dim {
                    failed = Some(format!("master sum {dim} differs from oracle {brute}"));
                }
            }
            Output { json, text, failed }
        }
        Command::GmVerify { quiver, nmax, no_oracle } => {
            let spec = load_quiver(quiver)?;
            let rows = gm_table(&spec.quiver, &spec.dims, &spec.parabolic, *nmax, !no_oracle, limits)?;
            let cell = |x: Option<&BigUint>| x.map_or("-".to_string(), BigUint::to_string);
            let mut lines = vec!["N\tlabel\theads\ttails\toracle\tagree".to_string()];
            let mut json_rows = Vec::new();
            for row in &rows {
                let (h, t, o) = (
                    row.dimension(Route::HeadsFirst),
                    row.dimension(Route::TailsFirst),
                    row.dimension(Route::Oracle),
                );
                lines.push(format!(
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    row.level,
                    label_text(&spec, &row.label),
                    cell(h),
                    cell(t),
                    cell(o),
                    row.agree()
                ));
                json_rows.push(json!({
                    "n": row.level,
                    "label": label_json(&spec, &row.label),
                    "heads_dim": h.map(big),
                    "tails_dim": t.map(big),
                    "oracle_dim": o.map(big),
                    "agree": row.agree(),
                }));
            }
            let bad: Vec<String> = rows.iter().filter(|r| !r.agree()).map(|r| r.level.to_string()).collect();
            Output {
                json: Value::Array(json_rows),
                text: lines.join("\n"),
                failed: (!bad.is_empty()).then(|| format!("routes disagree at levels {}", bad.join(", "))),
            }
        }
        Command::Transfer { n, m, comp_n, comp_m, f } => {
            let r = transfer_check(*n, *m, comp_n, comp_m, f)?;
            let op = if r.equal { "==" } else { "!=" };
            let status = if r.equal { "OK" } else { "FAIL" };
            Output {
                json: json!({
                    "n": n, "m": m, "comp_n": comp_n.blocks(), "comp_m": comp_m.blocks(), "f": parts(f),
                    "lhs": big(&r.lhs), "rhs": big(&r.rhs), "equal": r.equal,
                }),
                text: format!("{} {op} {} {status}", r.lhs, r.rhs),
                failed: (!r.equal).then(|| "the two sides differ".to_string()),
            }
        }
        Command::Oracle { quiver, labels, degree } => {
            let spec = load_quiver(quiver)?;
            let label = parse_label(&spec, labels)?;
            let degree = degree.unwrap_or_else(|| label.box_count(&spec.quiver, Role::Head));
            let comps = spec.parabolic.compositions();
            let dim = oracle::component_dim(&spec.quiver, &spec.dims, comps, &label, degree, limits)?;
            Output::ok(
                json!({"label": label_json(&spec, &label), "degree": degree, "dimension": big(&dim)}),
                dim.to_string(),
            )
        }
    })
}
