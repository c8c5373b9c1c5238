//! Command-line front end: normal forms, functors, pairings, tables, and
//! the cross-check suites, with deterministic text or JSON reports.
//!
//! Exit codes: 0 = all checks pass, 1 = mathematical failure, 2 = input
//! error.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::process::ExitCode;
use torsionpair::detpair::{log_det_pairing, pairing_crosscheck_group, zeta_generator_check};
use torsionpair::error::Error;
use torsionpair::functors::{hom_group, tor_zn, HomTarget};
use torsionpair::group::{group_from_presentation, FgGroup};
use torsionpair::jsonio;
use torsionpair::lambda::{kk_group, LambdaFamily};
use torsionpair::matrix::smith_normal_form_full;
use torsionpair::pairing::{
    delta_via_extension, delta_via_qz, pairing_value, ExtensionClass, QZPictureClass,
};
use torsionpair::qz::{QZHom, QZValue};
use torsionpair::spectral::{eta_circle, pairing_crosscheck, rho_relative, FlatLineBundle};
use torsionpair::Result;

#[derive(Parser)]
#[command(
    name = "torsionpair",
    version,
    about = "Exact f.g. abelian group computations and Q/Z torsion pairings \
             with spectral and determinant cross-checks"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed echoed verbatim into the report (reports are otherwise
    /// byte-identical for identical inputs).
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form U*A*V = D of an integer matrix.
    Snf {
        /// Matrix as inline JSON or a path to a JSON file.
        #[arg(long)]
        matrix: String,
    },
    /// Normal form of the cokernel of a relation matrix (rows = relations).
    Group {
        #[arg(long)]
        generators: usize,
        #[arg(long)]
        relations: String,
    },
    /// Hom(G, Z/n) or Hom(G, Q/Z).
    Hom {
        #[arg(long)]
        group: String,
        /// "qz" or a modulus n >= 2.
        #[arg(long)]
        target: String,
    },
    /// Ext(G, Z) in normal form.
    Ext {
        #[arg(long)]
        group: String,
    },
    /// The n-torsion subgroup Tor(Z/n, G) with its inclusion.
    Tor {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        group: String,
    },
    /// Pairing character of an extension class 0 -> Z -> E -> K1 -> 0.
    PairingExt {
        #[arg(long)]
        extension: String,
    },
    /// Pairing character of a Q/Z-coefficient class.
    PairingQz {
        /// {"k0": group, "k1": group, "degree": 0|1,
        ///  "alpha_divisible": [...], "alpha_torsion": ["p/q", ...]}
        #[arg(long)]
        input: String,
    },
    /// Character -> family -> character round trip with compatibility check.
    LambdaRoundtrip {
        #[arg(long)]
        k1: String,
        /// Character values, one "p/q" per torsion generator.
        #[arg(long)]
        delta: String,
        #[arg(long)]
        bound: u64,
    },
    /// Table of coefficient-morphism groups with generator annotations.
    KkTable {
        #[arg(long, default_value_t = 6)]
        max: u64,
        #[arg(long, default_value_t = 0)]
        degree: u8,
    },
    /// Eta invariant of the circle operator twisted by holonomy theta.
    Eta {
        /// Holonomy angle as "p/q" in [0, 1).
        #[arg(long)]
        theta: String,
    },
    /// Relative eta invariant rho(V_theta1, V_theta2) mod 1, certified.
    Rho {
        #[arg(long)]
        theta1: String,
        #[arg(long)]
        theta2: String,
        /// Denominator cap for certification (default: lcm of the inputs).
        #[arg(long)]
        cap: Option<u64>,
        /// Also compare against the extension pairing (needs theta1 = 1/d,
        /// theta2 = 0).
        #[arg(long)]
        crosscheck: bool,
    },
    /// Winding-generator check: the mod-m class pairs to [1/m].
    ZetaCheck {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
    /// Logarithmic determinant pairing of two unitary matrices.
    Detpair {
        /// Complex matrix (rows of [re, im] pairs), inline or file.
        #[arg(long)]
        pi: String,
        #[arg(long)]
        sigma: String,
        #[arg(long, default_value_t = 1024)]
        cap: u64,
    },
    /// All three pipelines on the order-d classes, d = 2..=d_max.
    CrosscheckAll {
        #[arg(long, default_value_t = 12)]
        d_max: u64,
    },
}

/// Inline JSON (starts with '{', '[' or '"') or a file path.
fn read_json_arg(arg: &str) -> Result<Value> {
    let text = match arg.trim_start().chars().next() {
        Some('{') | Some('[') | Some('"') => arg.to_string(),
        _ => std::fs::read_to_string(arg)
            .map_err(|e| Error::Input(format!("cannot read {arg}: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("bad JSON in {arg}: {e}")))
}

struct Report {
    text: Vec<String>,
    json: Value,
    /// false = mathematical failure (exit 1)
    passed: bool,
}

impl Report {
    fn new(text: Vec<String>, json: Value) -> Self {
        Self {
            text,
            json,
            passed: true,
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Residual { .. }
        | Error::IncompatibleFamily(_)
        | Error::InconsistentBonding { .. }
        | Error::NotInPairingKernel(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => {
                    if let Some(seed) = cli.seed {
                        println!("seed: {seed}");
                    }
                    for line in &report.text {
                        println!("{line}");
                    }
                }
                Format::Json => {
                    let mut out = report.json;
                    if let Some(seed) = cli.seed {
                        out["seed"] = json!(seed);
                    }
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&out).expect("valid JSON")
                    );
                }
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn parse_qz(s: &str) -> Result<QZValue> {
    s.parse()
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Snf { matrix } => {
            let a = jsonio::matrix_from_json(&read_json_arg(matrix)?, "matrix")?;
            let s = smith_normal_form_full(&a);
            let text = vec![
                "U:".to_string(),
                s.u.to_string(),
                "D:".to_string(),
                s.d.to_string(),
                "V:".to_string(),
                s.v.to_string(),
            ];
            let json = json!({
                "u": jsonio::matrix_to_json(&s.u),
                "d": jsonio::matrix_to_json(&s.d),
                "v": jsonio::matrix_to_json(&s.v),
            });
            Ok(Report::new(text, json))
        }

        Command::Group {
            generators,
            relations,
        } => {
            if *generators > 4096 {
                return Err(Error::OutOfRange(
                    "this tool targets presentations with at most 4096 generators".into(),
                ));
            }
            let rel = jsonio::matrix_from_json(&read_json_arg(relations)?, "relations")?;
            let (g, proj) = group_from_presentation(*generators, &rel)?;
            let text = vec![
                format!("group: {g}"),
                format!("projection matrix ({generators} generators -> normal form):"),
                proj.matrix().to_string(),
            ];
            let json = json!({
                "group": jsonio::group_to_json(&g),
                "projection": jsonio::hom_to_json(&proj),
            });
            Ok(Report::new(text, json))
        }

        Command::Hom { group, target } => {
            let g = jsonio::group_from_json(&read_json_arg(group)?, "group")?;
            let target = match target.as_str() {
                "qz" | "QZ" | "Q/Z" => HomTarget::QZ,
                n => HomTarget::Cyclic(
                    n.parse::<BigInt>()
                        .map_err(|_| Error::Input(format!("bad hom target {n:?}")))?,
                ),
            };
            let hom = hom_group(&g, target)?;
            let text = vec![format!("hom group: {}", hom.group)];
            let json = json!({ "group": jsonio::group_to_json(&hom.group) });
            Ok(Report::new(text, json))
        }

        Command::Ext { group } => {
            let g = jsonio::group_from_json(&read_json_arg(group)?, "group")?;
            let e = torsionpair::functors::ext_z(&g);
            Ok(Report::new(
                vec![format!("Ext(G, Z) = {e}")],
                json!({ "group": jsonio::group_to_json(&e) }),
            ))
        }

        Command::Tor { n, group } => {
            let g = jsonio::group_from_json(&read_json_arg(group)?, "group")?;
            let (t, incl) = tor_zn(&BigInt::from(*n), &g)?;
            let text = vec![
                format!("Tor(Z/{n}, G) = {t}"),
                "inclusion matrix:".to_string(),
                incl.matrix().to_string(),
            ];
            let json = json!({
                "group": jsonio::group_to_json(&t),
                "inclusion": jsonio::hom_to_json(&incl),
            });
            Ok(Report::new(text, json))
        }

        Command::PairingExt { extension } => {
            let x = jsonio::extension_from_json(&read_json_arg(extension)?, "extension")?;
            let delta = delta_via_extension(&x)?;
            Ok(report_character(&delta))
        }

        Command::PairingQz { input } => {
            let v = read_json_arg(input)?;
            let k0 = jsonio::group_from_json(&v["k0"], "input.k0")?;
            let k1 = jsonio::group_from_json(&v["k1"], "input.k1")?;
            let degree = v["degree"].as_u64().unwrap_or(0) as u8;
            let pair = torsionpair::coeff::KTheoryPair::new(k0, k1);
            let coeff = torsionpair::coeff::k_coeff_qz(&pair, degree)?;
            let empty = Vec::new();
            let divisible: Vec<BigInt> = v["alpha_divisible"]
                .as_array()
                .unwrap_or(&empty)
                .iter()
                .map(|e| {
                    e.as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| Error::Input("alpha_divisible: expected integers".into()))
                })
                .collect::<Result<_>>()?;
            let torsion_values =
                jsonio::qz_values_from_json(&v["alpha_torsion"], "input.alpha_torsion")?;
            let alpha = QZHom::new(coeff.torsion_group.clone(), torsion_values)?;
            let class = QZPictureClass::new(coeff, divisible, alpha)?;
            let delta = delta_via_qz(&class)?;
            Ok(report_character(&delta))
        }

        Command::LambdaRoundtrip { k1, delta, bound } => {
            let k1 = jsonio::group_from_json(&read_json_arg(k1)?, "k1")?;
            let delta = jsonio::delta_from_json(&k1, &read_json_arg(delta)?, "delta")?;
            let (family, lossy) = LambdaFamily::from_delta(&k1, &delta, *bound)?;
            let report = family.check_compatibility();
            let mut text = Vec::new();
            let mut passed = true;
            if lossy {
                text.push(format!(
                    "warning: bound {bound} is not a multiple of the torsion exponent; \
                     the family cannot reconstruct the character"
                ));
            }
            text.push(format!(
                "compatibility: {}",
                if report.ok { "PASS" } else { "FAIL" }
            ));
            if let Some(f) = &report.first_failure {
                text.push(format!("  {f}"));
                passed = false;
            }
            let mut round_trip = Value::Null;
            if report.ok && !lossy {
                let recovered = family.delta()?;
                let ok = recovered == delta;
                text.push(format!("round trip: {}", if ok { "PASS" } else { "FAIL" }));
                round_trip = json!(ok);
                passed &= ok;
            }
            let json = json!({
                "family": jsonio::family_to_json(&family)?,
                "lossy": lossy,
                "compatible": report.ok,
                "round_trip": round_trip,
            });
            Ok(Report { text, json, passed })
        }

        Command::KkTable { max, degree } => {
            if !(1..=500).contains(max) {
                return Err(Error::OutOfRange("table size must be in 1..=500".into()));
            }
            let cell = |g: &FgGroup| -> String {
                if g.is_trivial() {
                    "0".into()
                } else if g.free_rank() == 1 {
                    "Z".into()
                } else {
                    format!("Z/{}", g.invariant_factors()[0])
                }
            };
            let width = 2 + max.to_string().len().max(3);
            let mut text = Vec::new();
            let mut rows_json = Vec::new();
            let header: String = (1..=*max)
                .map(|m| format!("{:>width$}", format!("m={m}")))
                .collect::<Vec<_>>()
                .join(" ");
            text.push(format!("{:>6} {header}", ""));
            for n in 1..=*max {
                let mut cells = Vec::new();
                let mut row_json = Vec::new();
                for m in 1..=*max {
                    let d = kk_group(n, m, *degree)?;
                    cells.push(format!("{:>width$}", cell(&d.group)));
                    row_json.push(json!({
                        "n": n,
                        "m": m,
                        "group": jsonio::group_to_json(&d.group),
                        "generator": d.generator_action.to_string(),
                    }));
                }
                text.push(format!("{:>6} {}", format!("n={n}"), cells.join(" ")));
                rows_json.push(Value::Array(row_json));
            }
            text.push(String::new());
            text.push("generators:".to_string());
            for n in 1..=*max {
                for m in 1..=*max {
                    let d = kk_group(n, m, *degree)?;
                    if !d.group.is_trivial() {
                        text.push(format!("  ({n}, {m}): {}", d.generator_action));
                    }
                }
            }
            Ok(Report::new(
                text,
                json!({ "degree": degree, "table": rows_json }),
            ))
        }

        Command::Eta { theta } => {
            let theta = parse_qz(theta)?;
            let r = eta_circle(&FlatLineBundle::new(theta.clone()))?;
            let text = vec![
                format!("theta      = {theta}"),
                format!("eta        = {:.12}", r.eta),
                format!("kernel dim = {}", r.kernel_dim),
                format!("reduced xi = {:.12}", r.reduced_xi),
            ];
            let json = json!({
                "theta": theta.to_string(),
                "eta": r.eta,
                "kernel_dim": r.kernel_dim,
                "reduced_xi": r.reduced_xi,
            });
            Ok(Report::new(text, json))
        }

        Command::Rho {
            theta1,
            theta2,
            cap,
            crosscheck,
        } => {
            let t1 = parse_qz(theta1)?;
            let t2 = parse_qz(theta2)?;
            let v = FlatLineBundle::new(t1.clone());
            let w = FlatLineBundle::new(t2.clone());
            let rho = rho_relative(&v, &w, *cap)?;
            let mut text = vec![
                format!("rho        = {:.12}", rho.reduced),
                format!(
                    "certified  = {} mod 1 (residual {:.3e})",
                    rho.value, rho.residual
                ),
            ];
            let mut json = json!({
                "theta1": t1.to_string(),
                "theta2": t2.to_string(),
                "rho": rho.reduced,
                "certified": rho.value.to_string(),
                "residual": rho.residual,
            });
            let mut passed = true;
            if *crosscheck {
                use num_traits::{One, ToPrimitive};
                if !t2.is_zero() || !t1.numerator().is_one() {
                    return Err(Error::Input(
                        "--crosscheck needs theta1 = 1/d and theta2 = 0".into(),
                    ));
                }
                let d = t1
                    .denominator()
                    .to_u64()
                    .ok_or_else(|| Error::Input("denominator too large".into()))?;
                let ok = pairing_crosscheck(d)?;
                text.push(format!(
                    "pairing crosscheck (d = {d}): {}",
                    if ok { "PASS" } else { "FAIL" }
                ));
                json["crosscheck"] = json!(ok);
                passed = ok;
            }
            Ok(Report { text, json, passed })
        }

        Command::ZetaCheck { m, n } => {
            if m.checked_mul(*n).is_none_or(|dim| dim > 4096) {
                return Err(Error::OutOfRange(
                    "the winding loop has dimension m * n, capped at 4096 here".into(),
                ));
            }
            let r = zeta_generator_check(*m, *n)?;
            let text = vec![format!(
                "winding generator at (m, n) = ({m}, {n}) pairs to {} (residual {:.3e})",
                r.value, r.numeric_residual
            )];
            let json = json!({
                "m": m,
                "n": n,
                "value": r.value.to_string(),
                "residual": r.numeric_residual,
            });
            Ok(Report::new(text, json))
        }

        Command::Detpair { pi, sigma, cap } => {
            let pi_u = jsonio::cmatrix_from_json(&read_json_arg(pi)?, "pi")?;
            let sigma_u = jsonio::cmatrix_from_json(&read_json_arg(sigma)?, "sigma")?;
            let r = log_det_pairing(&pi_u, &sigma_u, *cap)?;
            let mut text = vec![format!(
                "log-det pairing = {} mod 1 (residual {:.3e})",
                r.value, r.numeric_residual
            )];
            if let Some(b) = r.branch_candidates {
                text.push(format!(
                    "note: determinant on the negative real axis; branch candidates \
                     {:.6} and {:.6} agree mod 1",
                    b[0], b[1]
                ));
            }
            let json = json!({
                "value": r.value.to_string(),
                "residual": r.numeric_residual,
                "branch_candidates": r.branch_candidates,
            });
            Ok(Report::new(text, json))
        }

        Command::CrosscheckAll { d_max } => {
            if !(2..=10_000).contains(d_max) {
                return Err(Error::OutOfRange("--d-max must be in 2..=10000".into()));
            }
            let mut text = Vec::new();
            let mut rows = Vec::new();
            let mut passed = true;
            for d in 2..=*d_max {
                let x = ExtensionClass::mult_by_d(d)?;
                let delta = delta_via_extension(&x)?;
                let ext_value = pairing_value(&delta, &delta.source().generator(0))?;
                let rho = rho_relative(
                    &FlatLineBundle::new(QZValue::new(1.into(), d.into())?),
                    &FlatLineBundle::trivial(),
                    Some(d),
                )?;
                let det = log_det_pairing(
                    &torsionpair::detpair::root_of_unity_matrix(1, d),
                    &torsionpair::detpair::CMatrix::identity(1, 1),
                    d,
                )?;
                let eta_ok = pairing_crosscheck(d)?;
                let det_ok = pairing_crosscheck_group(d)?;
                let ok = ext_value == rho.value && ext_value == det.value && eta_ok && det_ok;
                passed &= ok;
                text.push(format!(
                    "d = {d:>2}: extension {}, eta {}, log-det {} ... {}",
                    ext_value,
                    rho.value,
                    det.value,
                    if ok { "PASS" } else { "FAIL" }
                ));
                rows.push(json!({
                    "d": d,
                    "extension": ext_value.to_string(),
                    "eta": rho.value.to_string(),
                    "log_det": det.value.to_string(),
                    "pass": ok,
                }));
            }
            text.push(format!(
                "crosscheck-all: {}",
                if passed { "PASS" } else { "FAIL" }
            ));
            Ok(Report {
                text,
                json: json!({ "results": rows, "pass": passed }),
                passed,
            })
        }
    }
}

fn report_character(delta: &QZHom) -> Report {
    let mut text = vec![format!("torsion group: {}", delta.source())];
    if delta.source().is_trivial() {
        text.push("character: zero (trivial torsion)".to_string());
    }
    for (i, v) in delta.values().iter().enumerate() {
        let order = delta
            .source()
            .generator_order(i)
            .cloned()
            .unwrap_or_else(|| BigInt::from(0));
        text.push(format!("g{i} (order {order}) |-> {v}"));
    }
    let json = json!({
        "torsion": jsonio::group_to_json(delta.source()),
        "delta": jsonio::qz_values_to_json(delta.values()),
    });
    Report::new(text, json)
}
