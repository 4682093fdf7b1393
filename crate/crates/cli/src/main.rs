use std::process::ExitCode;

use abelkit::analysis::{self, AbelFunction, RawMap, ScalarFunction};
use abelkit::constants::{self, ConstantSolver};
use abelkit::logseries::{self, DEFAULT_K};
use abelkit::numeric::parse_rational;
use abelkit::orbits::{self, Pair, Reparam};
use abelkit::{builtin_map, parse_map_expr, Error, Integer, MapSpec, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod repro;

#[derive(Parser)]
#[command(name = "abelkit", version, about = "Abel functions of rational maps tangent to the identity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MapArgs {
    /// Registered map: A, B, I, J, CUBIC_PLUS, CUBIC_MINUS, ORACLE, HIGHER(l,+|-)
    #[arg(long)]
    map: Option<String>,
    /// Custom map as an expression in x, e.g. "x/(1+x+x^2)"
    #[arg(long = "map-expr")]
    map_expr: Option<String>,
}

impl MapArgs {
    fn resolve(&self) -> abelkit::Result<MapSpec> {
        match (&self.map, &self.map_expr) {
            (Some(name), None) => builtin_map(name),
            (None, Some(expr)) => parse_map_expr(expr),
            _ => Err(Error::InvalidArgument("give exactly one of --map or --map-expr".into())),
        }
    }
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn sign_arg(s: &str) -> Result<i32, String> {
    match s {
        "+" | "+1" | "1" | "plus" => Ok(1),
        "-" | "-1" | "minus" => Ok(-1),
        _ => Err(format!("sign must be + or -, got `{s}`")),
    }
}

fn seeds_arg(s: &str) -> Result<(Integer, Integer), String> {
    let (a, b) = s.split_once(',').ok_or("seeds look like `1,2`")?;
    let p = |t: &str| t.trim().parse::<Integer>().map_err(|_| format!("bad seed `{t}`"));
    Ok((p(a)?, p(b)?))
}

#[derive(Subcommand)]
enum Command {
    /// Abel constant C(x0) of a map
    Constant {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, value_parser = rational_arg)]
        x0: Rational,
        #[arg(long, default_value_t = 50)]
        digits: u32,
        #[arg(long, default_value_t = DEFAULT_K)]
        k: usize,
        /// Explicit iteration index; skips the retry logic
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Constant of x -> x + 1 +- x^-ell
    ConstantAdditive {
        #[arg(long)]
        ell: u32,
        #[arg(long, value_parser = sign_arg, allow_hyphen_values = true)]
        sign: i32,
        #[arg(long, value_parser = rational_arg)]
        x0: Rational,
        #[arg(long, default_value_t = 50)]
        digits: u32,
        /// Iterate the additive recurrence and invert its w-series instead
        #[arg(long)]
        direct: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Expansion polynomials P_0..P_{k-1}
    Polys {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = DEFAULT_K)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Substitution residual of the expansion
    Residual {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = DEFAULT_K)]
        k: usize,
        /// Defaults to k
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reciprocal (w-side) series of a map or of an additive recurrence
    Recip {
        #[arg(long, conflicts_with_all = ["map_expr", "ell"])]
        map: Option<String>,
        #[arg(long = "map-expr", conflicts_with = "ell")]
        map_expr: Option<String>,
        #[arg(long, requires = "sign")]
        ell: Option<u32>,
        #[arg(long, value_parser = sign_arg, allow_hyphen_values = true)]
        sign: Option<i32>,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exact orbit x_0..x_n
    Orbit {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, value_parser = rational_arg)]
        x0: Rational,
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Raise the length cap (terms double in size each step)
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sum=product (t), u- and v-recurrence sequences
    Sequences {
        #[arg(long, value_enum)]
        family: Family,
        /// t1 for family t; two integers "a,b" for u and v
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Numerator/denominator pattern report for A/B or I/J orbits
    Patterns {
        #[arg(long, value_enum)]
        pair: PairArg,
        /// Starting point of the first orbit (A or I)
        #[arg(long, value_parser = rational_arg)]
        first: Option<Rational>,
        /// Starting point of the second orbit (B or J)
        #[arg(long, value_parser = rational_arg)]
        second: Option<Rational>,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// x -> x/(1+x) applied to a B- or J-orbit, checked against A or I
    Reparam {
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long, value_parser = rational_arg)]
        x0: Rational,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Checks A(x/(1+x)) = B(x)+1 or I(x/(1+x)) = J(x)+1
    Verify {
        #[arg(long, value_enum)]
        identity: PairArg,
        #[arg(long, value_parser = rational_arg)]
        x: Rational,
        #[arg(long, default_value_t = 50)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Convexity and monotonicity of the Abel solution on a grid
    Scan {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Minimum of the Abel solution (or of the map with --raw) in [a, b]
    Minimum {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long)]
        raw: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Inflection point of the Abel solution (or of the map with --raw) in [a, b]
    Inflection {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long)]
        raw: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Abel constants on a uniform grid, as CSV
    Grid {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[arg(long, default_value_t = 20)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Runs the reference tables and values and prints a pass/fail summary
    Repro {
        /// Digits for the long constants
        #[arg(long, default_value_t = 100)]
        digits: u32,
        /// Skip the long constants
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Args)]
struct RangeArgs {
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    a: Rational,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    b: Rational,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    T,
    U,
    V,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairArg {
    #[value(name = "AB")]
    Ab,
    #[value(name = "IJ")]
    Ij,
}

impl From<PairArg> for Pair {
    fn from(p: PairArg) -> Pair {
        match p {
            PairArg::Ab => Pair::AB,
            PairArg::Ij => Pair::IJ,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    #[value(name = "B->A", alias = "BA")]
    BToA,
    #[value(name = "J->I", alias = "JI")]
    JToI,
}

fn json(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn run(cli: Cli) -> abelkit::Result<String> {
    Ok(match cli.command {
        Command::Constant { map, x0, digits, k, n, format } => {
            let map = map.resolve()?;
            let solver = ConstantSolver::new(&map, k)?;
            let est = match n {
                Some(n) => {
                    let mut params = constants::select_parameters(digits, k)?;
                    params.n = n;
                    solver.estimate_with(&x0, params)?
                }
                None => solver.estimate(&x0, digits)?,
            };
            match format {
                Format::Json => json(est.to_json()),
                _ => est.value_string() + "\n",
            }
        }
        Command::ConstantAdditive { ell, sign, x0, digits, direct, format } => {
            let est = if direct {
                constants::estimate_constant_additive_direct(ell, sign, &x0, digits)?
            } else {
                constants::estimate_constant_additive(ell, sign, &x0, digits)?
            };
            match format {
                Format::Json => json(est.to_json()),
                _ => est.value_string() + "\n",
            }
        }
        Command::Polys { map, k, format } => {
            let exp = logseries::derive_expansion(&map.resolve()?, k)?;
            match format {
                Format::Json => json(exp.to_json()),
                _ => exp.render(),
            }
        }
        Command::Residual { map, k, depth, format } => {
            let exp = logseries::derive_expansion(&map.resolve()?, k)?;
            let res = logseries::residual(&exp, depth.unwrap_or(k))?;
            let zero = res.iter().all(|r| r.is_zero());
            match format {
                Format::Json => json(serde_json::json!({
                    "map": exp.map().name(),
                    "k": k,
                    "residual": res.iter().map(|r| r.render()).collect::<Vec<_>>(),
                    "all_zero": zero,
                })),
                _ => {
                    let mut out: String =
                        res.iter().enumerate().map(|(i, r)| format!("n^-{}: {}\n", i + 1, r)).collect();
                    out.push_str(&format!("all zero: {zero}\n"));
                    out
                }
            }
        }
        Command::Recip { map, map_expr, ell, sign, k, format } => {
            let w = match (map, map_expr, ell) {
                (Some(name), None, None) => {
                    logseries::reciprocal(&logseries::derive_expansion(&builtin_map(&name)?, k + 2)?, k)?
                }
                (None, Some(expr), None) => {
                    logseries::reciprocal(&logseries::derive_expansion(&parse_map_expr(&expr)?, k + 2)?, k)?
                }
                (None, None, Some(ell)) => {
                    logseries::additive_wseries(ell, sign.expect("required by clap"), k)?
                }
                _ => return Err(Error::InvalidArgument("give one of --map, --map-expr or --ell/--sign".into())),
            };
            match format {
                Format::Json => json(w.to_json()),
                _ => w.render() + "\n",
            }
        }
        Command::Orbit { map, x0, n, limit, format } => {
            let map = map.resolve()?;
            let orbit = match limit {
                Some(limit) => {
                    if limit > orbits::ORBIT_LIMIT {
                        eprintln!("warning: orbit terms double in size each step");
                    }
                    orbits::orbit_exact_with_limit(&map, &x0, n, limit)?
                }
                None => orbits::orbit_exact(&map, &x0, n)?,
            };
            match format {
                Format::Json => json(orbit.to_json()),
                _ => orbit.to_lines(),
            }
        }
        Command::Sequences { family, seed, n, format } => {
            let bad = |e: String| Error::InvalidArgument(e);
            let terms: Vec<String> = match family {
                Family::T => {
                    let t1 = parse_rational(&seed)?;
                    let t = orbits::t_sequence(&t1, n)?;
                    if format == Format::Json {
                        return Ok(json(orbits::rationals_to_json(&t)));
                    }
                    return Ok(orbits::rationals_to_lines(&t));
                }
                Family::U => {
                    let (a, b) = seeds_arg(&seed).map_err(bad)?;
                    orbits::u_sequence(&a, &b, n)?.iter().map(Integer::to_string).collect()
                }
                Family::V => {
                    let (a, b) = seeds_arg(&seed).map_err(bad)?;
                    orbits::v_sequence(&a, &b, n)?.iter().map(Integer::to_string).collect()
                }
            };
            match format {
                Format::Json => json(serde_json::json!(terms)),
                _ => terms.iter().map(|t| format!("{t}\n")).collect(),
            }
        }
        Command::Patterns { pair, first, second, n, format } => {
            let pair = Pair::from(pair);
            let [(f0, s0), _] = pair.printed_seeds();
            let report = orbits::check_patterns(pair, &first.unwrap_or(f0), &second.unwrap_or(s0), n)?;
            match format {
                Format::Json => json(report.to_json()),
                _ => report.render(),
            }
        }
        Command::Reparam { direction, x0, n, format } => {
            let dir = match direction {
                Direction::BToA => Reparam::BToA,
                Direction::JToI => Reparam::JToI,
            };
            let source = builtin_map(dir.maps().0)?;
            let out = orbits::reparametrize(&orbits::orbit_exact(&source, &x0, n)?, dir)?;
            match format {
                Format::Json => json(out.to_json()),
                _ => out.to_lines(),
            }
        }
        Command::Verify { identity, x, digits, format } => {
            let report = analysis::verify_identity(identity.into(), &x, digits)?;
            match format {
                Format::Json => json(report.to_json()),
                _ => report.render(),
            }
        }
        Command::Scan { map, range, points, digits, format } => {
            let f = AbelFunction::new(&map.resolve()?, digits)?;
            let report = analysis::scan_shape(&f, &range.a, &range.b, points)?;
            match format {
                Format::Json => json(report.to_json()),
                _ => report.render(),
            }
        }
        Command::Minimum { map, range, digits, raw, format } => {
            critical(&map.resolve()?, &range, digits, raw, format, analysis::find_minimum)?
        }
        Command::Inflection { map, range, digits, raw, format } => {
            critical(&map.resolve()?, &range, digits, raw, format, analysis::find_inflection)?
        }
        Command::Grid { map, range, points, digits, format } => {
            let sample = analysis::grid_csv(&map.resolve()?, &range.a, &range.b, points, digits)?;
            match format {
                Format::Json => {
                    let rows: Vec<_> = sample
                        .to_csv()
                        .lines()
                        .skip(1)
                        .map(|l| {
                            let c: Vec<&str> = l.split(',').collect();
                            serde_json::json!({"x": c[0], "value": c[1], "status": c[2], "digits": c[3]})
                        })
                        .collect();
                    json(serde_json::json!({"map": sample.map.name(), "digits": digits, "rows": rows}))
                }
                _ => sample.to_csv(),
            }
        }
        Command::Repro { digits, quick } => {
            let (text, ok) = repro::run(digits, quick);
            if !ok {
                print!("{text}");
                return Err(Error::ValidationFailed { agreed: 0, requested: digits });
            }
            text
        }
    })
}

type Finder = fn(&dyn ScalarFunction, &Rational, &Rational) -> abelkit::Result<analysis::CriticalPointResult>;

fn critical(map: &MapSpec, range: &RangeArgs, digits: u32, raw: bool, format: Format, find: Finder) -> abelkit::Result<String> {
    let r = if raw {
        find(&RawMap::new(map, digits), &range.a, &range.b)?
    } else {
        find(&AbelFunction::new(map, digits)?, &range.a, &range.b)?
    };
    Ok(match format {
        Format::Json => json(r.to_json()),
        _ => r.render(),
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownMap(_) | Error::SyntaxError { .. } | Error::InvalidArgument(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = exit_code(&e);
            if code == 2 {
                eprintln!("\nFor usage, try 'abelkit --help'.");
            }
            ExitCode::from(code)
        }
    }
}
