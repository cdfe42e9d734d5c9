use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rbn_core::chern::ChernCharacter;
use rbn_core::cohomology::{
    blowup_cohomology_oracle, hirzebruch_cohomology, interpolation_h0, LineBundleCohomology,
    OracleConfig, Vanishing,
};
use rbn_core::decide::{decide_wbn, Status};
use rbn_core::goodsums::{delpezzo_decompose, is_good_sum, rounding_sum, GoodSum};
use rbn_core::lattice::{chi_line_bundle, neg_one_curves};
use rbn_core::resolutions::{
    blowup_hirzebruch_resolution, blowup_resolution, builtin_collection, hirzebruch_resolution,
    solve_exponents,
};
use rbn_core::{json as j, DivisorClass, Error, Surface, SurfaceKind};

#[derive(Parser)]
#[command(
    name = "rbn",
    version,
    about = "Cohomology and weak Brill-Noether on rational surfaces"
)]
struct Cli {
    /// Print JSON
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Print plain text
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct SurfaceArg {
    /// F<e>, blp2:k=<k>[:collinear=<i,j,...>], blF<e>:k=<k> or dp<degree>
    #[arg(long)]
    surface: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Line-bundle cohomology h0, h1, h2
    Cohom {
        #[command(flatten)]
        s: SurfaceArg,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Euler characteristic of a line bundle or a character
    Chi {
        #[command(flatten)]
        s: SurfaceArg,
        #[arg(
            long,
            allow_hyphen_values = true,
            required_unless_present = "character"
        )]
        divisor: Option<String>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "divisor")]
        character: Option<String>,
    },
    /// Weak Brill-Noether verdict
    Wbn {
        #[command(flatten)]
        s: SurfaceArg,
        /// r=<int>;c1=<divisor>;chi=<int> or r=<int>;c1=<divisor>;ch2=<rational>
        #[arg(long, allow_hyphen_values = true, required_unless_present = "sweep")]
        character: Option<String>,
        /// CSV of verdicts for every χ = 0 character with c1 coefficients in [-bound, bound]
        #[arg(long, conflicts_with = "character")]
        sweep: bool,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        ranks: Vec<u32>,
        #[arg(long, default_value_t = 4)]
        bound: i64,
    },
    /// Resolution by the builtin exceptional collection
    Resolve {
        #[command(flatten)]
        s: SurfaceArg,
        #[arg(long, allow_hyphen_values = true)]
        character: String,
        /// Solve the linear system instead of using the closed form
        #[arg(long)]
        solve: bool,
        /// Number of collection members on the left of the resolution (with --solve)
        #[arg(long)]
        split: Option<usize>,
    },
    /// Build or check a good direct sum of line bundles
    Goodsum {
        #[command(flatten)]
        s: SurfaceArg,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        c1: Option<String>,
        /// Comma-separated summands to check instead of building a sum
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["rank", "c1"])]
        check: Option<String>,
        /// Reference class N (defaults to -K, L or F by surface)
        #[arg(long = "reference", allow_hyphen_values = true)]
        reference: Option<String>,
    },
    /// Randomized interpolation oracle over a prime field (RBN_ORACLE_PRIME sets the prime)
    Oracle {
        #[command(subcommand)]
        which: OracleCmd,
    },
    /// The (-1)-curves of a del Pezzo surface
    Curves {
        #[command(flatten)]
        s: SurfaceArg,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    H0(OracleArgs),
    Cohom(OracleArgs),
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    s: SurfaceArg,
    #[arg(long, allow_hyphen_values = true)]
    divisor: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    trials: u32,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Text,
    Json,
}

/// Exit 1: the question has no established answer.
const UNKNOWN: u8 = 1;
/// Exit 2: bad input.
const INPUT: u8 = 2;

struct Out {
    text: String,
    json: Value,
    code: u8,
}

impl Out {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            code: 0,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default_json = matches!(
        cli.cmd,
        Cmd::Wbn { sweep: false, .. } | Cmd::Resolve { .. } | Cmd::Goodsum { .. }
    );
    let mode = if cli.json || (default_json && !cli.text) {
        Mode::Json
    } else {
        Mode::Text
    };
    match run(cli.cmd, mode) {
        Ok(out) => {
            let body = match mode {
                Mode::Text => out.text,
                Mode::Json => serde_json::to_string_pretty(&out.json).expect("json"),
            };
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(out.code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::Undecidable(_) => UNKNOWN,
                _ => INPUT,
            })
        }
    }
}

fn surface(s: &SurfaceArg) -> rbn_core::Result<Surface> {
    s.surface.parse()
}

fn oracle_config(seed: u64, trials: u32) -> rbn_core::Result<OracleConfig> {
    let mut cfg = OracleConfig {
        seed,
        trials,
        ..OracleConfig::default()
    };
    if let Ok(p) = std::env::var("RBN_ORACLE_PRIME") {
        cfg.prime = p.trim().parse().map_err(|_| Error::Parse {
            input: p.clone(),
            expected: "RBN_ORACLE_PRIME=<prime>".into(),
        })?;
    }
    Ok(cfg)
}

fn run(cmd: Cmd, mode: Mode) -> rbn_core::Result<Out> {
    match cmd {
        Cmd::Cohom { s, divisor } => {
            let s = surface(&s)?;
            cohom(&DivisorClass::parse(&s, &divisor)?)
        }
        Cmd::Chi {
            s,
            divisor,
            character,
        } => {
            let s = surface(&s)?;
            if let Some(d) = divisor {
                let d = DivisorClass::parse(&s, &d)?;
                let chi = chi_line_bundle(&d);
                return Ok(Out::ok(
                    format!("chi={chi}"),
                    json!({ "divisor": d.to_string(), "chi": j::int(&chi) }),
                ));
            }
            let v = ChernCharacter::parse(&s, character.as_deref().unwrap_or_default())?;
            let mut obj = j::character(&v);
            obj["discriminant"] = j::rational(&v.discriminant());
            obj["slope"] = Value::from(v.slope().to_string());
            Ok(Out::ok(
                format!(
                    "r={} c1={} ch2={} chi={} discriminant={} slope={}",
                    v.rank(),
                    v.c1(),
                    v.ch2(),
                    v.chi(),
                    v.discriminant(),
                    v.slope()
                ),
                obj,
            ))
        }
        Cmd::Wbn {
            s,
            character,
            sweep,
            ranks,
            bound,
        } => {
            let s = surface(&s)?;
            if sweep {
                return wbn_sweep(&s, &ranks, bound, mode);
            }
            let v = ChernCharacter::parse(&s, character.as_deref().unwrap_or_default())?;
            let verdict = decide_wbn(&v)?;
            let code = if verdict.status == Status::Unknown {
                UNKNOWN
            } else {
                0
            };
            Ok(Out {
                text: verdict.to_string(),
                json: verdict.to_json(),
                code,
            })
        }
        Cmd::Resolve {
            s,
            character,
            solve,
            split,
        } => {
            let s = surface(&s)?;
            let v = ChernCharacter::parse(&s, &character)?;
            let report = if solve || split.is_some() {
                let mut coll = builtin_collection(&s)?;
                if let Some(k) = split {
                    coll = coll.with_split(k)?;
                }
                solve_exponents(&v, &coll)?
            } else {
                match s.kind() {
                    SurfaceKind::Hirzebruch { .. } => hirzebruch_resolution(&v)?,
                    SurfaceKind::BlowupHirzebruch { .. } => blowup_hirzebruch_resolution(&v)?,
                    _ => blowup_resolution(&v)?,
                }
            };
            let code = if report.is_feasible() { 0 } else { UNKNOWN };
            let mut text = report.to_string();
            if !report.is_feasible() {
                text.push_str(
                    "\nnote: some exponent is negative, so this is only a virtual resolution",
                );
            }
            for n in &report.notes {
                text.push_str(&format!("\nnote: {n}"));
            }
            Ok(Out {
                text,
                json: report.to_json(),
                code,
            })
        }
        Cmd::Goodsum {
            s,
            rank,
            c1,
            check,
            reference,
        } => {
            let s = surface(&s)?;
            let n = match reference {
                Some(n) => DivisorClass::parse(&s, &n)?,
                None => GoodSum::default_reference(&s),
            };
            if let Some(list) = check {
                let summands = list
                    .split(',')
                    .map(|x| DivisorClass::parse(&s, x))
                    .collect::<rbn_core::Result<Vec<_>>>()?;
                let sum = GoodSum::new(n, summands)?;
                let report = is_good_sum(&sum)?;
                let mut text = format!("{sum}\ngood: {}", report.passes());
                for note in &report.notes {
                    text.push_str(&format!("\nnote: {note}"));
                }
                let json = json!({
                    "sum": sum.to_json(),
                    "good": report.passes(),
                    "no_higher_cohomology": report.no_higher_cohomology.to_string(),
                    "degrees_balanced": report.degrees_balanced,
                    "notes": report.notes,
                });
                let code = if report.passes() { 0 } else { UNKNOWN };
                return Ok(Out { text, json, code });
            }
            let err = |what: &str| Error::Parse {
                input: String::new(),
                expected: what.into(),
            };
            let r = rank.ok_or_else(|| err("--rank <int>"))?;
            let d = DivisorClass::parse(&s, c1.as_deref().ok_or_else(|| err("--c1 <divisor>"))?)?;
            let sum = match s.kind() {
                SurfaceKind::DelPezzo { .. } => delpezzo_decompose(&d, r)?,
                _ => {
                    let v = ChernCharacter::from_chi(r.into(), d, 0.into())?;
                    rounding_sum(&v)?
                }
            };
            let sum = if sum.reference() == &n {
                sum
            } else {
                GoodSum::new(n, sum.summands().to_vec())?
            };
            Ok(Out::ok(sum.to_string(), sum.to_json()))
        }
        Cmd::Oracle { which } => {
            let (a, full) = match which {
                OracleCmd::H0(a) => (a, false),
                OracleCmd::Cohom(a) => (a, true),
            };
            let s = surface(&a.s)?;
            let d = DivisorClass::parse(&s, &a.divisor)?;
            let cfg = oracle_config(a.seed, a.trials)?;
            let meta = json!({ "prime": cfg.prime, "seed": cfg.seed, "trials": cfg.trials });
            if full {
                let v = blowup_cohomology_oracle(&d, &cfg)?;
                let json = json!({ "h0": j::int(&v.h0), "h1": j::int(&v.h1), "h2": j::int(&v.h2), "oracle": meta });
                Ok(Out::ok(v.to_string(), json))
            } else {
                let h0 = interpolation_h0(&d, &cfg)?;
                Ok(Out::ok(
                    h0.to_string(),
                    json!({ "h0": j::int(&h0), "oracle": meta }),
                ))
            }
        }
        Cmd::Curves { s } => {
            let s = surface(&s)?;
            let curves: Vec<String> = neg_one_curves(&s)?
                .iter()
                .map(ToString::to_string)
                .collect();
            Ok(Out::ok(curves.join("\n"), json!(curves)))
        }
    }
}

/// Exact vector on `F_e`; elsewhere whatever the rules determine, `?` for the rest.
fn cohom(d: &DivisorClass) -> rbn_core::Result<Out> {
    if let SurfaceKind::Hirzebruch { .. } = d.surface().kind() {
        let v = hirzebruch_cohomology(d)?;
        let json =
            json!({ "h0": j::int(&v.h0), "h1": j::int(&v.h1), "h2": j::int(&v.h2), "exact": true });
        return Ok(Out::ok(v.to_string(), json));
    }
    let s = d.surface();
    let mut eng = LineBundleCohomology::new(s)?;
    let chi = chi_line_bundle(d);
    let h0 = eng.h0(d)?;
    let h2 = eng.h0(&(DivisorClass::canonical(s) - d.clone()))?;
    let h1 = match (&h0, &h2) {
        (Some(a), Some(b)) => Some(a + b - &chi),
        _ => None,
    };
    let shown = |x: &Option<_>, v: Vanishing| -> (String, Value) {
        match (x, v) {
            (Some(n), _) => (format!("{n}"), j::int(n)),
            (None, Vanishing::Nonzero) => (">0".into(), Value::from(">0")),
            (None, _) => ("?".into(), Value::Null),
        }
    };
    let (t0, j0) = shown(&h0, Vanishing::Unknown);
    let (t1, j1) = shown(&h1, eng.h1(d)?);
    let (t2, j2) = shown(&h2, eng.h2(d)?);
    let exact = h1.is_some();
    let json = json!({ "h0": j0, "h1": j1, "h2": j2, "chi": j::int(&chi), "exact": exact });
    Ok(Out {
        text: format!("h0={t0} h1={t1} h2={t2}"),
        json,
        code: if exact { 0 } else { UNKNOWN },
    })
}

fn wbn_sweep(s: &Surface, ranks: &[u32], bound: i64, mode: Mode) -> rbn_core::Result<Out> {
    let rho = s.picard_rank();
    let width = (2 * bound + 1) as usize;
    let cells = width
        .checked_pow(rho as u32)
        .filter(|&c| c <= 2_000_000)
        .ok_or(Error::Hypothesis(format!(
            "a sweep over {width}^{rho} classes is too large; lower --bound"
        )))?;
    let mut rows = vec!["surface,r,c1,chi,status".to_string()];
    let mut json_rows = Vec::new();
    for &r in ranks {
        for idx in 0..cells {
            let mut rest = idx;
            let coords: Vec<i64> = (0..rho)
                .map(|_| {
                    let c = (rest % width) as i64 - bound;
                    rest /= width;
                    c
                })
                .collect();
            let c1 = DivisorClass::from_ints(s, &coords)?;
            let v = ChernCharacter::from_chi(r.into(), c1.clone(), 0.into())?;
            let status = match decide_wbn(&v) {
                Ok(verdict) => verdict.status.to_string(),
                Err(e) => format!("error: {e}").replace(',', ";"),
            };
            rows.push(format!("{s},{r},{c1},0,{status}"));
            if mode == Mode::Json {
                json_rows.push(json!({ "r": r, "c1": c1.to_string(), "chi": 0, "status": status }));
            }
        }
    }
    Ok(Out::ok(rows.join("\n"), Value::Array(json_rows)))
}
