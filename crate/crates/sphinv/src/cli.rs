//! The `sphinv` command line. [`run`] is the whole program minus process exit.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sphinv_core::{
    coefficients, normalize, parse_const, parse_equation, ConstExpr, Direction, Error, EvalOptions, Extrema, Family,
    FloatInput, InverseQuery, Limits, Ordinate, RecordKind, SearchConfig, SphericalBessel, WBranch,
};

use crate::format::{json_number, significant};
use crate::parallel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "sphinv",
    version,
    about = "Spherical Bessel functions, their real inverses and closed-form solving"
)]
struct Cli {
    /// Output format; csv is accepted by `sample` only.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: OutputFormat,
    /// Significant digits in human output.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    digits: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Row {
    /// Family: Y, J, I or K.
    #[arg(value_parser = parse_family)]
    family: Family,
    /// Order n.
    order: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate f_n(x).
    Eval {
        #[command(flatten)]
        row: Row,
        #[arg(allow_hyphen_values = true)]
        x: f64,
        /// Evaluate f_n'(x) instead.
        #[arg(long)]
        derivative: bool,
        /// One-sided limit to report at a pole.
        #[arg(long, value_enum)]
        direction: Option<Side>,
    },
    /// Print the exact Laurent row of f_n.
    Table {
        #[command(flatten)]
        row: Row,
    },
    /// Print infsupum records m in [from, to].
    Extrema {
        #[command(flatten)]
        row: Row,
        #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        to: i64,
    },
    /// Print inverse_b(f_n)(c0).
    Inverse {
        #[command(flatten)]
        row: Row,
        #[arg(allow_hyphen_values = true)]
        branch: i64,
        /// Target ordinate, a decimal or constant expression.
        #[arg(allow_hyphen_values = true)]
        c0: String,
        #[arg(long, default_value_t = sphinv_core::inverse::DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Solve an equation in closed form.
    Solve {
        equation: String,
        #[arg(long, conflicts_with = "max_abs_x")]
        max_branch: Option<u64>,
        /// Only solutions with |x| <= X.
        #[arg(long)]
        max_abs_x: Option<f64>,
    },
    /// Rank inverse spherical Bessel closed forms for a decimal.
    Recognize {
        #[arg(allow_hyphen_values = true)]
        decimal: String,
        #[arg(long, default_value_t = 3)]
        max_order: u32,
        #[arg(long, default_value_t = 16)]
        max_branch: u64,
        #[arg(long, default_value_t = 100)]
        max_den: u64,
        /// Search rational c0 only.
        #[arg(long)]
        no_multipliers: bool,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        min_margin: f64,
        /// Number of candidates printed.
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
    /// Lambert W on branch 0 or -1.
    Lambert {
        #[arg(allow_hyphen_values = true, value_parser = ["0", "-1"])]
        branch: String,
        #[arg(allow_hyphen_values = true)]
        d0: String,
        /// Compute through inverse_b(k_0) instead of Halley iteration.
        #[arg(long)]
        via_k0: bool,
    },
    /// Emit x,f_n(x) on an even grid.
    Sample {
        #[command(flatten)]
        row: Row,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u64).range(2..=10_000_000))]
        points: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Side {
    Below,
    Above,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
        .map_err(|_| format!("unknown family {:?}; expected Y, J, I or K", s))
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Parse(_) => (EXIT_PARSE, "parse"),
            Error::NotTransformable { .. } | Error::MixedFactors => (EXIT_PARSE, "not_transformable"),
            Error::OutOfRange { .. } => (EXIT_DOMAIN, "out_of_range"),
            Error::Pole { .. } => (EXIT_DOMAIN, "pole"),
            _ => (EXIT_DOMAIN, "domain"),
        };
        let message = match &e {
            Error::NotTransformable { hint: Some(h), .. } if !e.to_string().contains(h.as_str()) => {
                format!("{}\nhint: {}", e, h)
            }
            _ => e.to_string(),
        };
        Failure { code, kind, message }
    }
}

fn parse_failure(input: &str, e: sphinv_core::ParseError) -> Failure {
    Failure {
        code: EXIT_PARSE,
        kind: "parse",
        message: format!("{}\n{}", e, e.caret(input)),
    }
}

fn constant(text: &str) -> Result<ConstExpr, Failure> {
    parse_const(text).map_err(|e| parse_failure(text, e))
}

/// One command's result in every format it supports.
struct Report {
    human: String,
    json: Value,
    csv: Option<String>,
}

/// Run the program on `args` (including the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e);
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e);
                    EXIT_USAGE
                }
            };
        }
    };
    if cli.format == OutputFormat::Csv && !matches!(cli.command, Command::Sample { .. }) {
        let _ = writeln!(err, "error: --format csv is only available for `sample`");
        return EXIT_USAGE;
    }
    let digits = cli.digits as usize;
    match execute(cli.command, digits) {
        Ok(report) => {
            let text = match cli.format {
                OutputFormat::Human => report.human,
                OutputFormat::Json => format!("{}\n", report.json),
                OutputFormat::Csv => report.csv.unwrap_or(report.human),
            };
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            if cli.format == OutputFormat::Json {
                let doc = json!({ "error": { "kind": f.kind, "message": f.message } });
                let _ = writeln!(out, "{}", doc);
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, digits: usize) -> Result<Report, Failure> {
    let fmt = |x: f64| significant(x, digits);
    match command {
        Command::Eval {
            row,
            x,
            derivative,
            direction,
        } => {
            let mut opts = EvalOptions::default();
            if let Some(side) = direction {
                opts = opts.with_pole_direction(match side {
                    Side::Below => Direction::FromBelow,
                    Side::Above => Direction::FromAbove,
                });
            }
            let f = SphericalBessel::new(row.family, row.order);
            let value = if derivative {
                f.derivative(x, &opts)?
            } else {
                f.eval(x, &opts)?
            };
            let name = format!(
                "{}_{}{}",
                row.family.symbol(),
                row.order,
                if derivative { "'" } else { "" }
            );
            Ok(Report {
                human: format!("{}({}) = {}\n", name, x, fmt(value)),
                json: json!({
                    "family": row.family.to_string(),
                    "order": row.order,
                    "derivative": derivative,
                    "x": json_number(x),
                    "value": json_number(value),
                }),
                csv: None,
            })
        }
        Command::Table { row } => {
            let form = coefficients(row.family, row.order);
            let primary = row.family.primary().name();
            let cofactor = row.family.cofactor().map(|f| f.name());
            Ok(Report {
                human: format!("{}_{}(x) = {}\n", row.family.symbol(), row.order, form),
                json: json!({
                    "family": row.family.to_string(),
                    "order": row.order,
                    "primary": primary,
                    "cofactor": cofactor,
                    "p": decimal_strings(&form.pcoeffs),
                    "q": decimal_strings(&form.qcoeffs),
                }),
                csv: None,
            })
        }
        Command::Extrema { row, from, to } => {
            if from > to {
                return Err(Error::InvalidArgument(format!("--from {} exceeds --to {}", from, to)).into());
            }
            let mut ext = Extrema::new(row.family, row.order);
            ext.ensure(ext.needed_for(from.abs().max(to.abs())));
            let mut human = format!("{:>4}  {:>14}  {}\n", "m", "abscissa", "ordinate");
            let mut records = Vec::new();
            for m in from..=to {
                let r = match ext.record(m) {
                    Ok(r) => r,
                    Err(Error::NoSuchExtremum { .. }) => continue,
                    Err(e) => return Err(e.into()),
                };
                let (shown, ordinate) = match r.ordinate {
                    Ordinate::Finite(v) => (fmt(v), json!({ "value": json_number(v) })),
                    Ordinate::Pole { from_below, from_above } => (
                        format!("{} from below, {} from above", fmt(from_below), fmt(from_above)),
                        json!({ "pole": { "from_below": json_number(from_below), "from_above": json_number(from_above) } }),
                    ),
                };
                human.push_str(&format!("{:>4}  {:>14}  {}\n", m, fmt(r.abscissa), shown));
                let kind = match r.kind {
                    RecordKind::Stationary => "stationary",
                    RecordKind::Pole => "pole",
                };
                records.push(json!({
                    "m": m,
                    "abscissa": json_number(r.abscissa),
                    "kind": kind,
                    "ordinate": ordinate,
                }));
            }
            Ok(Report {
                human,
                json: json!({ "family": row.family.to_string(), "order": row.order, "records": records }),
                csv: None,
            })
        }
        Command::Inverse {
            row,
            branch,
            c0,
            tolerance,
        } => {
            let c = constant(&c0)?;
            let q = InverseQuery::new(row.family, row.order, branch, c.value()).with_tolerance(tolerance);
            let x = sphinv_core::inverse(&q)?;
            let tag = format!("inverse_{}({}_{})({})", branch, row.family.symbol(), row.order, c);
            Ok(Report {
                human: format!("{} = {}\n", tag, fmt(x)),
                json: json!({
                    "family": row.family.to_string(),
                    "order": row.order,
                    "branch": branch,
                    "c0": c.to_string(),
                    "c0_value": json_number(c.value()),
                    "x": json_number(x),
                }),
                csv: None,
            })
        }
        Command::Solve {
            equation,
            max_branch,
            max_abs_x,
        } => {
            let limits = match (max_branch, max_abs_x) {
                (_, Some(x)) if x.is_nan() || x <= 0.0 => {
                    return Err(Error::InvalidArgument("--max-abs-x must be positive".into()).into())
                }
                (_, Some(x)) => Limits::MaxAbsX(x),
                (Some(b), None) => Limits::MaxAbsBranch(b),
                (None, None) => Limits::default(),
            };
            let raw = parse_equation(&equation).map_err(|e| parse_failure(&equation, e))?;
            let nf = normalize(&raw)?;
            let set = sphinv_core::solve(&nf, limits)?;
            let mut human = format!("{}  <=>  {}_{}(s) = {}\n", raw, nf.family.symbol(), nf.order, nf.c0);
            if set.solutions.is_empty() {
                human.push_str("no real solutions\n");
            }
            let mut solutions = Vec::new();
            for s in &set.solutions {
                let residual = raw.residual(s.x);
                human.push_str(&format!("x = {} = {}\n", s.tag, fmt(s.x)));
                solutions.push(json!({
                    "branch": s.branch,
                    "tag": s.tag,
                    "x": json_number(s.x),
                    "residual": json_number(residual),
                }));
            }
            match set.zero_root {
                sphinv_core::ZeroRoot::Annihilated => human.push_str("x = 0 also solves the equation\n"),
                sphinv_core::ZeroRoot::Introduced => {
                    human.push_str("x = 0 solves the normal form only and is not a solution\n")
                }
                sphinv_core::ZeroRoot::None => {}
            }
            if set.truncated {
                human.push_str("more solutions lie beyond the search limit\n");
            }
            Ok(Report {
                human,
                json: json!({
                    "equation": raw.to_string(),
                    "family": nf.family.to_string(),
                    "order": nf.order,
                    "c0": nf.c0.to_string(),
                    "c0_value": json_number(nf.c0.value()),
                    "zero_root": set.zero_root.name(),
                    "truncated": set.truncated,
                    "solutions": solutions,
                }),
                csv: None,
            })
        }
        Command::Recognize {
            decimal,
            max_order,
            max_branch,
            max_den,
            no_multipliers,
            min_margin,
            top,
        } => {
            let input = FloatInput::parse(&decimal).map_err(|e| Failure {
                code: EXIT_PARSE,
                kind: "parse",
                message: e.to_string(),
            })?;
            let cfg = SearchConfig {
                max_order,
                max_branch,
                max_den,
                multipliers: !no_multipliers,
                min_margin,
            };
            let ranked = parallel::recognize(&input, &cfg)?;
            let shown = &ranked[..ranked.len().min(top)];
            let mut human = format!("{} ({} significant digits)\n", input.text, input.precision);
            if shown.is_empty() {
                human.push_str("no candidates\n");
            } else {
                human.push_str(&format!(
                    "{:>8} {:>9} {:>8}  {}\n",
                    "margin", "agreement", "entropy", "closed form"
                ));
            }
            let mut candidates = Vec::new();
            for c in shown {
                human.push_str(&format!(
                    "{:>8.3} {:>9.3} {:>8.3}  {} = {}\n",
                    c.margin,
                    c.agreement,
                    c.entropy10,
                    c.tag(),
                    fmt(c.value)
                ));
                candidates.push(json!({
                    "tag": c.tag(),
                    "family": c.family.to_string(),
                    "order": c.order,
                    "branch": c.branch,
                    "c0": c.c0.to_string(),
                    "value": json_number(c.value),
                    "agreement": json_number(c.agreement),
                    "entropy10": json_number(c.entropy10),
                    "margin": json_number(c.margin),
                }));
            }
            Ok(Report {
                human,
                json: json!({
                    "input": input.text,
                    "precision": input.precision,
                    "candidates": candidates,
                }),
                csv: None,
            })
        }
        Command::Lambert { branch, d0, via_k0 } => {
            let b: WBranch = branch.parse()?;
            let d = constant(&d0)?;
            let w = if via_k0 {
                sphinv_core::w_via_k0(b, d.value())?
            } else {
                sphinv_core::lambert_w(b, d.value())?
            };
            let method = if via_k0 { "k0" } else { "halley" };
            Ok(Report {
                human: format!("W_{}({}) = {}\n", b, d, fmt(w)),
                json: json!({
                    "branch": b.index(),
                    "d0": json_number(d.value()),
                    "w": json_number(w),
                    "method": method,
                }),
                csv: None,
            })
        }
        Command::Sample { row, from, to, points } => {
            if !(from.is_finite() && to.is_finite() && from < to) {
                return Err(Error::InvalidArgument("sampling needs finite --from < --to".into()).into());
            }
            let f = SphericalBessel::new(row.family, row.order);
            let opts = EvalOptions::default();
            let mut csv = String::from("x,f\n");
            let mut xs = Vec::with_capacity(points as usize);
            let mut fs = Vec::with_capacity(points as usize);
            let last = (points - 1) as f64;
            for k in 0..points {
                let t = k as f64 / last;
                let x = if k + 1 == points { to } else { from + (to - from) * t };
                let v = f.eval(x, &opts).unwrap_or(f64::NAN);
                csv.push_str(&format!("{},{}\n", x, v));
                xs.push(json_number(x));
                fs.push(if v.is_nan() { Value::Null } else { json_number(v) });
            }
            Ok(Report {
                human: csv.clone(),
                json: json!({ "family": row.family.to_string(), "order": row.order, "x": xs, "f": fs }),
                csv: Some(csv),
            })
        }
    }
}

fn decimal_strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}
