use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use curvezeta::construct::{
    catalog_json, ckp_plan, instantiate_factors, verify_supersingular_factors, ConstructError,
};
use curvezeta::curves::{parse_curve, point_count, CurveError, CurveSpec};
use curvezeta::eo::{eo_table, golden_tables, render_table, EoError};
use curvezeta::ffield::{Limits, DEFAULT_ENUM_CAP};
use curvezeta::npoly::{enumerate_symmetric, newton_polygon, NewtonPolygon, NpError};
use curvezeta::selftest::run_selftest;
use curvezeta::strata::{
    codim_invariance_check, leaf_examples, render_reports, StrataError, StratumReport,
};
use curvezeta::zeta::{l_polynomial_verified, LPolynomial, ZetaError};

#[derive(Parser)]
#[command(name = "curvezeta", version, about = "Zeta functions and Newton polygons of curves over finite fields")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest number of field elements any single enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP, global = true)]
    cap: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also count N_{g+1}..N_{g+k} and check them against L.
    #[arg(long, default_value_t = 0, global = true)]
    verify_extra: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Point counts N_s.
    Count {
        #[arg(long)]
        curve: String,
        /// Count N_1..N_s (default: N_1..N_g).
        #[arg(long)]
        s: Option<u32>,
    },
    /// L-polynomial from N_1..N_g.
    Zeta {
        #[arg(long)]
        curve: String,
    },
    /// Newton polygon of a curve, an L-polynomial or a slope list.
    Np {
        #[arg(long, conflicts_with_all = ["coeffs", "polygon"])]
        curve: Option<String>,
        /// Comma-separated c_0..c_2g; needs --q.
        #[arg(long, requires = "q", allow_hyphen_values = true)]
        coeffs: Option<String>,
        #[arg(long)]
        q: Option<u64>,
        /// Text form such as "NP{(1/4)^4, (3/4)^4}".
        #[arg(long)]
        polygon: Option<String>,
    },
    /// p-rank, supersingularity and slopes of a curve.
    Classify {
        #[arg(long)]
        curve: String,
    },
    /// Ekedahl-Oort types of length g.
    Eo {
        #[arg(long)]
        g: usize,
    },
    /// Stratum dimensions of Newton polygons.
    Strata {
        #[arg(long, required_unless_present_any = ["example", "polygon"])]
        g: Option<u64>,
        /// Every symmetric polygon of height 2g.
        #[arg(long, requires = "g")]
        all: bool,
        /// Named example (ecidim: the two-slope leaf dimensions).
        #[arg(long)]
        example: Option<String>,
        #[arg(long)]
        polygon: Option<String>,
        /// Check that the codimension of ξ^{+e} is constant for e ≤ this.
        #[arg(long)]
        invariance: Option<u64>,
    },
    /// Supersingular curves from the base-p digits of δ.
    Construct {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        delta: u64,
        /// List the factor curves y^p - y = x f(x).
        #[arg(long)]
        instantiate: bool,
        /// Compute the Newton polygon of every factor.
        #[arg(long)]
        verify: bool,
    },
    /// Known examples with their invariants.
    Catalog,
    /// Recompute every published example.
    Selftest,
}

struct Failure {
    code: &'static str,
    message: String,
    parse: bool,
}

macro_rules! failure_from {
    ($($t:ty => $parse:pat),* $(,)?) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                let code = e.code();
                Failure { code, message: e.to_string(), parse: matches!(code, $parse) }
            }
        }
    )*};
}

failure_from! {
    CurveError => "Parse" | "NotPrimePower",
    ZetaError => "Parse" | "NotPrimePower",
    NpError => "Parse" | "InvalidPolygon",
    EoError => "_never",
    StrataError => "_never",
    ConstructError => "Parse" | "NotPrimePower",
}

fn usage(message: String) -> Failure {
    Failure {
        code: "Usage",
        message,
        parse: true,
    }
}

fn curve(text: &str) -> Result<CurveSpec, Failure> {
    Ok(parse_curve(text)?)
}

fn emit(format: Format, value: &Value, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Text => println!("{text}"),
    }
}

fn slope_list(np: &NewtonPolygon) -> Vec<String> {
    np.slopes().iter().map(|s| s.to_string()).collect()
}

fn zeta_text(l: &LPolynomial) -> String {
    let counts: Vec<String> = l.counts().iter().map(u64::to_string).collect();
    format!(
        "q = {}, g = {}\nN = [{}]\nL(T) = {}",
        l.q(),
        l.genus(),
        counts.join(", "),
        l.display()
    )
}

fn run(cli: Cli) -> Result<(), Failure> {
    let limits = Limits::with_cap(cli.cap);
    let fmt = cli.format;
    match cli.command {
        Command::Count { curve: c, s } => {
            let spec = curve(&c)?;
            let top = s.unwrap_or(spec.genus().max(1) as u32);
            let counts = (1..=top)
                .map(|s| point_count(&spec, s, &limits))
                .collect::<Result<Vec<_>, _>>()?;
            let text = counts
                .iter()
                .enumerate()
                .map(|(i, n)| format!("N_{} = {n}", i + 1))
                .collect::<Vec<_>>()
                .join("\n");
            emit(fmt, &json!({"curve": spec.to_string(), "q": spec.q(), "g": spec.genus(), "N": counts}), text);
        }
        Command::Zeta { curve: c } => {
            let l = l_polynomial_verified(&curve(&c)?, &limits, cli.verify_extra)?;
            emit(fmt, &l.to_json(), zeta_text(&l));
        }
        Command::Np {
            curve: c,
            coeffs,
            q,
            polygon,
        } => {
            let np = match (c, coeffs, polygon) {
                (Some(c), _, _) => {
                    newton_polygon(&l_polynomial_verified(&curve(&c)?, &limits, cli.verify_extra)?)?
                }
                (None, Some(cs), _) => {
                    let q = q.expect("clap enforces --q");
                    let (p, r) = curvezeta::curves::prime_power(q)?;
                    let coeffs = cs
                        .split(',')
                        .map(|t| t.trim().parse().map_err(|_| usage(format!("bad coefficient {t:?}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    newton_polygon(&LPolynomial::from_coeffs(p, r as u32, coeffs)?)?
                }
                (None, None, Some(text)) => text.parse()?,
                _ => return Err(usage("give one of --curve, --coeffs or --polygon".into())),
            };
            let text = format!("{}\n{}", np.text(), np.render_ascii());
            emit(fmt, &np.to_json(), text);
        }
        Command::Classify { curve: c } => {
            let spec = curve(&c)?;
            let l = l_polynomial_verified(&spec, &limits, cli.verify_extra)?;
            let np = newton_polygon(&l)?;
            let value = json!({
                "curve": spec.to_string(),
                "g": spec.genus(),
                "p_rank": np.p_rank(),
                "supersingular": np.is_supersingular(),
                "slopes": slope_list(&np),
                "polygon": np.text(),
            });
            let text = format!(
                "{spec}\ng = {}, p-rank = {}, supersingular = {}\nslopes: {}",
                spec.genus(),
                np.p_rank(),
                np.is_supersingular(),
                np.text()
            );
            emit(fmt, &value, text);
        }
        Command::Eo { g } => {
            let rows = match golden_tables(g) {
                Ok(rows) => rows,
                Err(_) => eo_table(g)?,
            };
            emit(fmt, &json!(rows), render_table(&rows));
        }
        Command::Strata {
            g,
            all,
            example,
            polygon,
            invariance,
        } => {
            let polys: Vec<NewtonPolygon> = match (example.as_deref(), polygon, all) {
                (Some("ecidim"), _, _) => {
                    let rows = leaf_examples();
                    emit(fmt, &json!(rows), render_reports(&rows));
                    return Ok(());
                }
                (Some(other), _, _) => return Err(usage(format!("unknown example {other:?}"))),
                (None, Some(text), _) => vec![text.parse()?],
                (None, None, true) => enumerate_symmetric(g.expect("clap enforces --g"))?,
                (None, None, false) => {
                    let g = g.expect("clap enforces --g");
                    vec![NewtonPolygon::ordinary(g), NewtonPolygon::supersingular(g)]
                }
            };
            if let Some(e_max) = invariance {
                let mut out = Vec::new();
                for xi in &polys {
                    let codims = codim_invariance_check(xi, e_max)?;
                    out.push(json!({"polygon": xi.text(), "codim": codims[0], "e_max": e_max}));
                }
                let text = out
                    .iter()
                    .map(|v| format!("{}: codim {} for e = 0..={e_max}", v["polygon"].as_str().unwrap_or(""), v["codim"]))
                    .collect::<Vec<_>>()
                    .join("\n");
                emit(fmt, &json!(out), text);
                return Ok(());
            }
            let rows: Vec<StratumReport> = polys.iter().map(StratumReport::of).collect();
            emit(fmt, &json!(rows), render_reports(&rows));
        }
        Command::Construct {
            p,
            delta,
            instantiate,
            verify,
        } => {
            let plan = ckp_plan(p, delta)?;
            let mut value = plan.to_json();
            let mut text = vec![format!(
                "p = {p}, δ = {delta}, genus {} from {} factor curves",
                plan.genus_target,
                plan.total_factors()
            )];
            for (i, r) in plan.runs.iter().enumerate() {
                text.push(format!(
                    "run {}: s = {}, r = {}, d = {}, u = {}, {} factors of genus {}",
                    i + 1,
                    r.s,
                    r.r,
                    r.d,
                    r.u,
                    r.factor_count,
                    r.factor_genus
                ));
            }
            if instantiate || verify {
                let factors = instantiate_factors(&plan, &limits)?;
                value["factors"] = json!(factors.iter().map(|f| f.spec.to_string()).collect::<Vec<_>>());
                if verify {
                    let reports = verify_supersingular_factors(&factors, &limits)?;
                    text.extend(reports.iter().map(|r| format!("{}  g = {}  {}", r.curve, r.g, r.polygon)));
                    value["verified"] = json!(reports);
                } else {
                    text.extend(factors.iter().map(|f| f.spec.to_string()));
                }
            }
            emit(fmt, &value, text.join("\n"));
        }
        Command::Catalog => {
            let value: Value = serde_json::from_str(catalog_json()).expect("embedded catalog");
            emit(fmt, &value, serde_json::to_string_pretty(&value).expect("serializable"));
        }
        Command::Selftest => {
            let results = run_selftest(&limits);
            let text = results
                .iter()
                .map(|r| {
                    let mark = if r.passed { "PASS" } else { "FAIL" };
                    match r.detail.as_str() {
                        "" => format!("{mark}  {}", r.name),
                        d => format!("{mark}  {}  ({d})", r.name),
                    }
                })
                .collect::<Vec<_>>()
                .join("\n");
            emit(fmt, &json!(results), text);
            if let Some(bad) = results.iter().find(|r| !r.passed) {
                return Err(Failure {
                    code: "SelftestFailed",
                    message: bad.name.clone(),
                    parse: false,
                });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: {e}");
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error[{}]: {}", f.code, f.message);
            ExitCode::from(if f.parse { 2 } else { 1 })
        }
    }
}
