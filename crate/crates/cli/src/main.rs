//! Command-line runner: compute the polynomial families, verify the
//! conjectured identities, and compare against the golden data corpus.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use eightvertex::eigen;
use eightvertex::factor::{self, PQFamily};
use eightvertex::golden;
use eightvertex::jsonio;
use eightvertex::numeric;
use eightvertex::qpoly;
use eightvertex::rat;
use eightvertex::report::VerificationReport;
use eightvertex::sos;
use eightvertex::suite::{self, SuiteConfig};
use eightvertex::tau::TauFamily;

#[derive(Parser)]
#[command(
    name = "eightvertex",
    about = "Exact polynomial families of the eight-vertex model at the special coupling point, with a verification suite",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a tau-function family by exact recurrence
    Tau {
        /// Parameter xi as an exact rational, e.g. 1/6
        #[arg(long, default_value = "1/6")]
        xi: String,
        /// Inclusive index range, e.g. -6..12
        #[arg(long, default_value = "0..8", allow_hyphen_values = true)]
        range: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute P_n(x, z) by the PDE descent (optionally the TQ nullspace)
    Qpoly {
        #[arg(long)]
        n: usize,
        /// Derive through the TQ linear system instead of the PDE
        #[arg(long)]
        via_tq: bool,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Extract the p_k, q_k subfactor families
    Factor {
        #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
        k_range: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact ground-state eigenvector of the odd chain
    Eigen {
        #[arg(long = "N")]
        n_sites: usize,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Solid-on-solid family: recurrence, PDE kernels, bridge
    Sos {
        #[arg(long, default_value_t = 10)]
        p_max: i64,
        /// Even indices for the PDE kernel, e.g. 0,2,4
        #[arg(long = "P-list", default_value = "0,2,4")]
        p_list: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Floating-point bridge checks
    Numeric {
        #[arg(long, default_value = "0.05,0.1,0.2")]
        q: String,
        #[arg(long, default_value_t = 0.4)]
        u: f64,
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long = "N", default_value = "3,5,7")]
        n_sites: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run verification suites
    Verify(VerifyArgs),
    /// Regenerate the golden corpus and compare bit-exactly
    Golden {
        /// Write the corpus JSON here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// all | golden | tau | conjA | tq | eigen | conj1..4 | conjE | special | sos | numeric | float
    target: String,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long = "N-max")]
    n_sites_max: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    k_range: Option<String>,
    /// Optional JSON config file; explicit flags win over its entries
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also run the stretch targets (larger n, N = 15)
    #[arg(long)]
    stretch: bool,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("range must look like a..b, got {:?}", s))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad range start {:?}", lo))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad range end {:?}", hi))?;
    if lo > hi {
        return Err(format!("empty range {}..{}", lo, hi));
    }
    Ok((lo, hi))
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|_| format!("bad list entry {:?}", t))
        })
        .collect()
}

fn write_or_print(value: &Value, out: &Option<PathBuf>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("writing {:?}: {}", path, e)),
        None => {
            println!("{}", text);
            Ok(())
        }
    }
}

fn emit_report(
    report: &VerificationReport,
    path: &Option<PathBuf>,
    format: Format,
) -> Result<ExitCode, String> {
    if let Some(p) = path {
        fs::write(p, serde_json::to_string_pretty(&report.to_json()).unwrap())
            .map_err(|e| format!("writing {:?}: {}", p, e))?;
    }
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.to_json()).unwrap()
        ),
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn bitstring(config: u32, n_sites: usize) -> String {
    (0..n_sites)
        .map(|j| if config >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Tau { xi, range, out } => {
            let xi_rat = rat::parse_rat(&xi)?;
            let (lo, hi) = parse_range(&range)?;
            let mut fam = TauFamily::new(xi_rat.clone());
            fam.extend_to(lo.min(0), hi.max(1))
                .map_err(|e| e.to_string())?;
            let entries: Vec<Value> = (lo..=hi)
                .map(|n| {
                    json!({
                        "n": n,
                        "poly": jsonio::unipoly_to_json(fam.get(n).unwrap()),
                    })
                })
                .collect();
            let doc = json!({ "xi": rat::format_rat(&xi_rat), "entries": entries });
            write_or_print(&doc, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Qpoly { n, via_tq, emit } => {
            let p = if via_tq {
                qpoly::compute_p_via_tq(n)
            } else {
                qpoly::compute_p(n)
            }
            .map_err(|e| e.to_string())?;
            let doc = json!({
                "n": n,
                "route": if via_tq { "tq-nullspace" } else { "pde-descent" },
                "poly": jsonio::bipoly_to_json(&p.poly),
                "coeffs": p.coeff_view.iter().map(jsonio::unipoly_to_json).collect::<Vec<_>>(),
            });
            write_or_print(&doc, &emit)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Factor { k_range, out } => {
            let (lo, hi) = parse_range(&k_range)?;
            let mut pq = PQFamily::new();
            let mut p_entries = Vec::new();
            let mut q_entries = Vec::new();
            let mut c_entries = Vec::new();
            for k in lo..=hi {
                let p = pq.p(k).map_err(|e| e.to_string())?;
                p_entries.push(json!({
                    "k": k,
                    "route": format!("{:?}", pq.p_route(k).unwrap()),
                    "poly": jsonio::unipoly_to_json(&p),
                }));
                let q = pq.q(k).map_err(|e| e.to_string())?;
                q_entries.push(json!({ "k": k, "poly": jsonio::unipoly_to_json(&q) }));
                c_entries.push(json!({ "k": k, "value": rat::format_rat(&factor::c_k(k)) }));
            }
            let doc = json!({ "p": p_entries, "q": q_entries, "c": c_entries });
            write_or_print(&doc, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Eigen { n_sites, emit } => {
            let gs = eigen::ground_vector(n_sites).map_err(|e| e.to_string())?;
            let mut comps = serde_json::Map::new();
            let mut orbits = serde_json::Map::new();
            for (orbit, poly) in gs.sector.orbits.iter().zip(&gs.components) {
                let key = bitstring(orbit.rep, n_sites);
                comps.insert(
                    key.clone(),
                    Value::Array(
                        poly.coeffs()
                            .iter()
                            .map(|c| Value::String(rat::format_rat(c)))
                            .collect(),
                    ),
                );
                orbits.insert(key, json!(orbit.size));
            }
            let doc = json!({
                "n_sites": n_sites,
                "site_order": "little-endian (first character = site 1, 0 = up)",
                "components": Value::Object(comps),
                "orbit_sizes": Value::Object(orbits),
                "skipped_samples": gs
                    .skipped_samples
                    .iter()
                    .map(rat::format_rat)
                    .collect::<Vec<_>>(),
            });
            write_or_print(&doc, &emit)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sos { p_max, p_list, out } => {
            let kernels: Vec<i64> = parse_list(&p_list)?;
            let mut fam = sos::SosFamily::new();
            fam.extend_to(p_max).map_err(|e| e.to_string())?;
            let p_entries: Vec<Value> = (0..=p_max)
                .map(|n| json!({ "n": n, "poly": jsonio::unipoly_to_json(fam.get(n).unwrap()) }))
                .collect();
            let mut kernel_entries = Vec::new();
            let mut bridge_entries = Vec::new();
            for &n in &kernels {
                let (p2, caps) = sos::sos_p_kernel(n).map_err(|e| e.to_string())?;
                kernel_entries.push(json!({
                    "n": n,
                    "poly": jsonio::bipoly_to_json(&p2),
                    "degree_caps": [caps.0, caps.1],
                }));
                let scale = sos::sos_bridge_check(fam.get(n).unwrap(), &p2, n)
                    .map_err(|e| e.to_string())?;
                bridge_entries.push(json!({ "n": n, "scale": rat::format_rat(&scale) }));
            }
            let doc = json!({
                "p": p_entries,
                "kernels": kernel_entries,
                "bridge": bridge_entries,
            });
            write_or_print(&doc, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Numeric {
            q,
            u,
            checks,
            n_sites,
            out,
            format,
        } => {
            let nomes: Vec<f64> = parse_list(&q)?;
            let sites: Vec<usize> = parse_list(&n_sites)?;
            let mut cfg = SuiteConfig {
                nome_list: nomes,
                transfer_sites: sites,
                ..SuiteConfig::default()
            };
            match checks.as_str() {
                "all" => {}
                "maps" => {
                    cfg.numeric_tq_n_max = 0;
                    cfg.transfer_sites.clear();
                    cfg.lame_n_max = 0;
                }
                other => return Err(format!("unknown check set {:?}", other)),
            }
            let mut report = suite::verify_numeric_suite(&cfg);
            // a spot check at the requested u as well
            report.run("numeric/requested-point", || {
                let ctx = numeric::EllipticContext::real(cfg.nome_list[0])?;
                numeric::variable_maps(&ctx, Complex64::new(u, 0.0)).map(|_| ())
            });
            emit_report(&report, &out, format)
        }
        Command::Verify(args) => {
            let cfg = build_config(&args)?;
            let report = match args.target.as_str() {
                "all" => suite::verify_all(&cfg),
                "golden" => suite::verify_golden_suite(),
                "tau" => suite::verify_tau_suite(cfg.tau_n_max),
                "conjA" | "conja" => suite::verify_conjecture_a(cfg.conj_a_n_max),
                "tq" => suite::verify_tq_suite(cfg.tq_n_max, cfg.tq_route_n_max),
                "eigen" | "conj1..4" | "conj1-4" => suite::verify_eigen_suite(&cfg.eigen_sites),
                "conjE" | "conje" => suite::verify_conj_e_suite(cfg.k_min, cfg.k_max),
                "special" => suite::verify_special_values(cfg.product_n_max, cfg.asm_n_max),
                "sos" => suite::verify_sos_suite(cfg.sos_p_max, &cfg.sos_kernel_list),
                "numeric" => suite::verify_numeric_suite(&cfg),
                "float" => suite::verify_float_spectrum(&cfg.eigen_sites),
                other => return Err(format!("unknown verify target {:?}", other)),
            };
            emit_report(&report, &args.report, args.format)
        }
        Command::Golden {
            out,
            report,
            format,
        } => {
            if let Some(path) = &out {
                fs::write(path, golden::corpus_canonical_string())
                    .map_err(|e| format!("writing {:?}: {}", path, e))?;
            }
            let rep = golden::verify_golden();
            emit_report(&rep, &report, format)
        }
    }
}

fn build_config(args: &VerifyArgs) -> Result<SuiteConfig, String> {
    let mut cfg = SuiteConfig::default();
    // config file first, explicit flags afterwards (flags win)
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path).map_err(|e| format!("reading {:?}: {}", path, e))?;
        let v: Value =
            serde_json::from_str(&text).map_err(|e| format!("parsing {:?}: {}", path, e))?;
        let obj = v
            .as_object()
            .ok_or_else(|| "config must be a JSON object".to_string())?;
        for (key, val) in obj {
            match key.as_str() {
                "tau_n_max" => cfg.tau_n_max = as_i64(val, key)?,
                "conj_a_n_max" => cfg.conj_a_n_max = as_i64(val, key)? as usize,
                "tq_n_max" => cfg.tq_n_max = as_i64(val, key)? as usize,
                "tq_route_n_max" => cfg.tq_route_n_max = as_i64(val, key)? as usize,
                "eigen_sites" => {
                    cfg.eigen_sites = val
                        .as_array()
                        .ok_or_else(|| format!("{} must be an array", key))?
                        .iter()
                        .map(|x| x.as_u64().map(|u| u as usize))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| format!("{} entries must be integers", key))?;
                }
                "k_min" => cfg.k_min = as_i64(val, key)?,
                "k_max" => cfg.k_max = as_i64(val, key)?,
                "asm_n_max" => cfg.asm_n_max = as_i64(val, key)?,
                "product_n_max" => cfg.product_n_max = as_i64(val, key)?,
                "sos_p_max" => cfg.sos_p_max = as_i64(val, key)?,
                "lame_n_max" => cfg.lame_n_max = as_i64(val, key)? as usize,
                other => return Err(format!("unknown config key {:?}", other)),
            }
        }
    }
    if let Some(n) = args.n_max {
        cfg.tau_n_max = n as i64;
        cfg.conj_a_n_max = n;
        cfg.tq_n_max = n.min(8);
        cfg.tq_route_n_max = n.min(6);
        cfg.sos_p_max = (n as i64).max(1);
        cfg.numeric_tq_n_max = n.min(4);
        let site_cap = 2 * n + 1;
        cfg.eigen_sites.retain(|&s| s <= site_cap);
        cfg.transfer_sites.retain(|&s| s <= site_cap);
        cfg.sos_kernel_list.retain(|&k| k <= 2 * n as i64);
    }
    if let Some(nmax) = args.n_sites_max {
        cfg.eigen_sites = (3..=nmax).step_by(2).collect();
        cfg.transfer_sites = vec![3, 5, 7].into_iter().filter(|&s| s <= nmax).collect();
    }
    if let Some(kr) = &args.k_range {
        let (lo, hi) = parse_range(kr)?;
        cfg.k_min = lo;
        cfg.k_max = hi;
    }
    if args.stretch {
        cfg.conj_a_n_max = cfg.conj_a_n_max.max(40);
        if !cfg.eigen_sites.contains(&15) {
            cfg.eigen_sites.push(15);
        }
    }
    Ok(cfg)
}

fn as_i64(v: &Value, key: &str) -> Result<i64, String> {
    v.as_i64()
        .ok_or_else(|| format!("{} must be an integer", key))
}
