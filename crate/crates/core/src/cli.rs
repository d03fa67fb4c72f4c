//! The `extalg` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{
    block_ranks, centralizer_in_grade, is_ad_semisimple, verify_axioms, AlgebraElement,
    ExtensionAlgebra, Payload, PowerDepth,
};
use crate::error::{AlgebraError, Result};
use crate::io::{matrix_to_json, parse_element, parse_matrix, render_block_table};
use crate::linalg::{char_poly, is_squarefree, mat_rank, min_poly, RatPolynomial};

#[derive(Parser, Debug)]
#[command(
    name = "extalg",
    version,
    about = "Exact computations in graded extensions of sl(n) by exterior powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the algebra and print its grading.
    Build(Common),
    /// Bracket of two elements.
    Bracket {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        x: XArg,
        #[command(flatten)]
        y: YArg,
    },
    /// Adjoint matrix of an element.
    Ad {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        x: XArg,
    },
    /// Killing matrix in the global basis.
    Killing {
        #[command(flatten)]
        common: Common,
        /// Print the rank instead of the matrix.
        #[arg(long)]
        rank: bool,
        /// Print the characteristic polynomial instead of the matrix.
        #[arg(long)]
        charpoly: bool,
    },
    /// Ranks of the grade blocks of successive powers of ad x.
    BlockRanks {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        x: XArg,
        #[arg(long, conflicts_with = "auto")]
        powers: Option<usize>,
        /// Continue until the rank stabilizes.
        #[arg(long)]
        auto: bool,
    },
    /// Characteristic polynomial of ad x.
    Charpoly {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        x: XArg,
    },
    /// Whether ad x is diagonalizable (squarefree minimal polynomial).
    Semisimple {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        x: XArg,
    },
    /// Basis of the elements of one grade commuting with x.
    Centralizer {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        x: XArg,
        #[arg(long)]
        grade: usize,
    },
    /// Randomized skew-symmetry and Jacobi checks.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to one ordered grade pair, e.g. `0,1`.
        #[arg(long, value_parser = parse_pair)]
        grades: Option<(usize, usize)>,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct XArg {
    /// Element expression, e.g. "e0*e1 + e2*e3".
    #[arg(long, required_unless_present = "x_file", conflicts_with = "x_file")]
    x: Option<String>,
    /// JSON matrix for a grade-zero element.
    #[arg(long)]
    x_file: Option<PathBuf>,
    /// Remove the trace of matrices read from files.
    #[arg(long)]
    project: bool,
}

#[derive(Args, Debug)]
struct YArg {
    #[arg(long, required_unless_present = "y_file", conflicts_with = "y_file")]
    y: Option<String>,
    #[arg(long)]
    y_file: Option<PathBuf>,
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected i,j")?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

fn load_element(
    alg: &ExtensionAlgebra,
    expr: &Option<String>,
    file: &Option<PathBuf>,
    project: bool,
) -> Result<AlgebraElement> {
    match (expr, file) {
        (Some(e), _) => parse_element(e, alg, None),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| AlgebraError::Io(format!("{}: {e}", path.display())))?;
            alg.sl_element(parse_matrix(&text, alg.n(), project)?)
        }
        (None, None) => Err(AlgebraError::InvalidParameters("no element given".into())),
    }
}

fn element_json(x: &AlgebraElement) -> Value {
    match x.payload() {
        Payload::Sl(m) => json!({ "grade": 0, "matrix": matrix_to_json(m.matrix()) }),
        Payload::Form(f) => json!({ "grade": x.grade(), "element": f.to_string() }),
    }
}

fn element_text(x: &AlgebraElement) -> String {
    match x.payload() {
        Payload::Sl(m) => m.matrix().to_string(),
        Payload::Form(f) => f.to_string(),
    }
}

fn poly_json(p: &RatPolynomial) -> Value {
    json!({
        "text": p.to_string(),
        "coefficients": p.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            code: 0,
        }
    }
}

fn execute(command: &Command) -> Result<(Output, &Common)> {
    let common = match command {
        Command::Build(c) => c,
        Command::Bracket { common, .. }
        | Command::Ad { common, .. }
        | Command::Killing { common, .. }
        | Command::BlockRanks { common, .. }
        | Command::Charpoly { common, .. }
        | Command::Semisimple { common, .. }
        | Command::Centralizer { common, .. }
        | Command::Verify { common, .. } => common,
    };
    let alg = ExtensionAlgebra::new(common.k, common.n)?;
    let load_x = |x: &XArg| load_element(&alg, &x.x, &x.x_file, x.project);
    let out = match command {
        Command::Build(_) => {
            let grades: Vec<Value> = (0..alg.grade_count())
                .map(|g| {
                    json!({
                        "grade": g,
                        "label": alg.grade_label(g),
                        "degree": if g == 0 { Value::Null } else { json!(alg.grade_degree(g)) },
                        "dim": alg.grade_dim(g),
                        "offset": alg.offset(g),
                    })
                })
                .collect();
            Output::ok(
                alg.to_string(),
                json!({
                    "k": alg.k(),
                    "n": alg.n(),
                    "dim": alg.dim(),
                    "grades": grades,
                    "contraction_scale": alg.contraction_scale().to_string(),
                }),
            )
        }
        Command::Bracket { x, y, .. } => {
            let xe = load_x(x)?;
            let ye = load_element(&alg, &y.y, &y.y_file, x.project)?;
            let z = alg.bracket(&xe, &ye)?;
            Output::ok(element_text(&z), element_json(&z))
        }
        Command::Ad { x, .. } => {
            let a = alg.ad(&load_x(x)?)?;
            Output::ok(a.matrix().to_string(), matrix_to_json(a.matrix()))
        }
        Command::Killing { rank, charpoly, .. } => {
            let km = alg.killing_matrix()?;
            if !rank && !charpoly {
                Output::ok(km.to_string(), matrix_to_json(&km))
            } else {
                let mut lines = Vec::new();
                let mut obj = serde_json::Map::new();
                if *rank {
                    let r = mat_rank(&km);
                    lines.push(format!("rank {r}"));
                    obj.insert("rank".into(), json!(r));
                }
                if *charpoly {
                    let p = char_poly(&km)?;
                    lines.push(format!("charpoly {p}"));
                    obj.insert("charpoly".into(), poly_json(&p));
                }
                Output::ok(lines.join("\n"), Value::Object(obj))
            }
        }
        Command::BlockRanks {
            x, powers, auto, ..
        } => {
            let depth = match (powers, auto) {
                (_, true) => PowerDepth::Auto,
                (Some(p), false) => PowerDepth::Fixed(*p),
                (None, false) => PowerDepth::Fixed(1),
            };
            if depth == PowerDepth::Fixed(0) {
                return Err(AlgebraError::InvalidParameters(
                    "--powers must be at least 1".into(),
                ));
            }
            let t = block_ranks(&alg.ad(&load_x(x)?)?, depth)?;
            Output::ok(render_block_table(&t).trim_end().to_string(), t.to_json())
        }
        Command::Charpoly { x, .. } => {
            let p = char_poly(alg.ad(&load_x(x)?)?.matrix())?;
            Output::ok(p.to_string(), poly_json(&p))
        }
        Command::Semisimple { x, .. } => {
            let xe = load_x(x)?;
            let mp = min_poly(alg.ad(&xe)?.matrix())?;
            let s = is_squarefree(&mp)?;
            debug_assert_eq!(s, is_ad_semisimple(&alg, &xe)?);
            Output::ok(
                format!("{s}\nminimal polynomial {mp}"),
                json!({ "semisimple": s, "min_poly": poly_json(&mp) }),
            )
        }
        Command::Centralizer { x, grade, .. } => {
            let basis = centralizer_in_grade(&alg, &load_x(x)?, *grade)?;
            let mut text = format!("dim {}", basis.len());
            for b in &basis {
                text.push('\n');
                text.push_str(&element_text(b));
            }
            Output::ok(
                text,
                json!({
                    "grade": grade,
                    "dim": basis.len(),
                    "basis": basis.iter().map(element_json).collect::<Vec<_>>(),
                }),
            )
        }
        Command::Verify {
            samples,
            seed,
            grades,
            ..
        } => {
            let report = verify_axioms(&alg, *samples, *seed, *grades)?;
            let mut lines: Vec<String> = report
                .pairs
                .iter()
                .map(|p| {
                    format!(
                        "grades ({},{}): skew={} symmetric={} jacobi={}",
                        p.grades.0, p.grades.1, p.skew, p.symmetric, p.jacobi
                    )
                })
                .collect();
            lines.push(format!(
                "skew={}, jacobi={}",
                report.skew(),
                report.jacobi()
            ));
            let code = if report.passed() { 0 } else { 1 };
            let mut js =
                serde_json::to_value(&report).map_err(|e| AlgebraError::Io(e.to_string()))?;
            js["skew"] = json!(report.skew());
            js["jacobi"] = json!(report.jacobi());
            Output {
                text: lines.join("\n"),
                json: js,
                code,
            }
        }
    };
    Ok((out, common))
}

fn thread_count() -> Option<usize> {
    let v = std::env::var("EXTALG_THREADS").ok()?;
    let t: usize = v.trim().parse().ok()?;
    Some(t.max(1))
}

/// Runs the command line with explicit output streams and returns the exit
/// code: 0 on success, 1 when a verification fails, 2 on usage or input
/// errors.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{rendered}")
            } else {
                write!(stderr, "{rendered}")
            };
            return code;
        }
    };
    let result = match thread_count() {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cli.command)),
            Err(e) => Err(AlgebraError::Io(e.to_string())),
        },
        None => execute(&cli.command),
    };
    let (out, common) = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let mut body = match common.format {
        Format::Text => out.text,
        Format::Json => out.json.to_string(),
    };
    body.push('\n');
    let written = match &common.out {
        Some(path) => {
            std::fs::write(path, body.as_bytes()).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => stdout.write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    out.code
}

/// Entry point used by the binary.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(
            std::iter::once("extalg").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn build_prints_grading() {
        let (code, out, _) = run_capture(&["build", "--k", "2", "--n", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "dim 21, grades: sl(4), Λ^2\n");
    }

    #[test]
    fn bad_usage_exits_2() {
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["build", "--k", "2"]).0, 2);
        assert_eq!(run_capture(&["build", "--k", "4", "--n", "4"]).0, 2);
        let (code, _, err) = run_capture(&["ad", "--k", "2", "--n", "4", "--x", "e0*"]);
        assert_eq!(code, 2);
        assert!(err.contains("position 3"), "{err}");
    }

    #[test]
    fn pair_parser() {
        assert_eq!(parse_pair("0,1"), Ok((0, 1)));
        assert!(parse_pair("0").is_err());
    }
}
