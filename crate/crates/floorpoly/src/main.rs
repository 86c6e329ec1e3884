use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use floorpoly::cache::Cache;
use floorpoly::compute::{ComputeError, Context, MAX_ASSEMBLY_DELTA};
use floorpoly::formats::{NodePolyJson, PolyJson};
use floorpoly::verify;
use floorpoly_core::floor::severi_degree_enum;
use floorpoly_core::seq::TangencySequence;
use serde_json::json;

const EXIT_DOMAIN: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

/// Relative Severi degrees and node polynomials via floor diagrams.
#[derive(Parser)]
#[command(name = "floorpoly", version)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cache directory (default: $FLOORPOLY_CACHE_DIR, else .floorpoly under the user cache root)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache
    #[arg(long, global = true)]
    no_cache: bool,
    /// Lift the default limits on template generation
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Plain,
    Extended,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// polynomial when |beta| >= delta, else enumeration
    Auto,
    Enumerate,
    Polynomial,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// List templates or extended templates of one cogenus
    Templates {
        #[arg(long)]
        cogenus: usize,
        #[arg(long, value_enum, default_value = "plain")]
        kind: Kind,
    },
    /// Relative Severi degree N^delta_{alpha,beta}
    Severi {
        #[arg(long)]
        delta: usize,
        /// comma-separated, e.g. "0,1"; empty for the zero sequence
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        beta: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
    },
    /// The relative node polynomial N_delta
    Nodepoly {
        #[arg(long)]
        delta: usize,
        /// write JSON here and the text form next to it (.txt)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Terms of N_delta of degree >= 3 delta - depth
    Leading {
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Check tables, appendix and enumeration against the computed objects
    Verify {
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: u64,
    },
}

enum Failure {
    Domain(String),
    Mismatch,
    Resource(String),
    Other(String),
}

impl From<ComputeError> for Failure {
    fn from(e: ComputeError) -> Self {
        match e {
            ComputeError::TooLarge { .. } => Failure::Resource(e.to_string()),
            ComputeError::Core(c) => core_failure(c),
            ComputeError::Format(s) => Failure::Other(s),
        }
    }
}

fn core_failure(e: floorpoly_core::Error) -> Failure {
    use floorpoly_core::Error as E;
    match e {
        E::OutOfDomain { .. } | E::Parse(_) | E::ZeroDegree | E::DegreeMismatch { .. } => Failure::Domain(e.to_string()),
        other => Failure::Other(other.to_string()),
    }
}

fn parse_seq(name: &str, s: &str) -> Result<TangencySequence, Failure> {
    s.parse()
        .map_err(|e| Failure::Domain(format!("--{name}: {e}")))
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("documents serialize"));
}

fn cmd_templates(ctx: &Context, json: bool, cogenus: usize, kind: Kind) -> Result<(), Failure> {
    match kind {
        Kind::Plain => {
            let list = ctx.templates(cogenus)?;
            if json {
                print_json(&list);
                return Ok(());
            }
            println!("{:<28} {:>5} {:>3} {:>6} {:<14} {:>5} {:<30} {:>2}", "edges", "delta", "l", "mu", "kappa", "k_min", "P(k)", "s");
            for t in &list {
                let inv = &t.invariants;
                println!(
                    "{:<28} {:>5} {:>3} {:>6} {:<14} {:>5} {:<30} {:>2}",
                    format!("{:?}", t.edges),
                    inv.delta,
                    inv.l,
                    inv.mu,
                    format!("{:?}", inv.kappa),
                    inv.k_min,
                    inv.p_text,
                    inv.s
                );
            }
        }
        Kind::Extended => {
            let list = ctx.ext_templates(cogenus)?;
            if json {
                print_json(&list);
                return Ok(());
            }
            println!("{:<22} {:<14} {:<14} {:>5} {:>3} {:>4} {:<10} {:>5} {:>2}  q", "lambda", "A", "B", "delta", "l", "mu", "kappa", "d_min", "s");
            for e in &list {
                let inv = &e.invariants;
                println!(
                    "{:<22} {:<14} {:<14} {:>5} {:>3} {:>4} {:<10} {:>5} {:>2}  {}",
                    format!("{:?}", e.lambda.edges),
                    format!("{:?}", e.a),
                    format!("{:?}", e.b),
                    inv.delta,
                    inv.l,
                    inv.mu,
                    format!("{:?}", inv.kappa),
                    inv.d_min,
                    inv.s,
                    e.q_text
                );
            }
        }
    }
    Ok(())
}

fn cmd_severi(ctx: &Context, json: bool, delta: usize, alpha: &str, beta: &str, method: Method) -> Result<(), Failure> {
    let (a, b) = (parse_seq("alpha", alpha)?, parse_seq("beta", beta)?);
    if a.weighted() + b.weighted() == 0 {
        return Err(Failure::Domain("degree sum i (alpha_i + beta_i) must be positive".into()));
    }
    let in_domain = b.norm() >= delta as u64;
    let method = match method {
        Method::Auto if in_domain && delta <= MAX_ASSEMBLY_DELTA => Method::Polynomial,
        Method::Auto => Method::Enumerate,
        m => m,
    };
    if matches!(method, Method::Polynomial | Method::Both) && !in_domain {
        return Err(Failure::Domain(format!(
            "the polynomial requires |beta| >= delta, got |beta| = {} < {delta}",
            b.norm()
        )));
    }
    let enumerated = match method {
        Method::Enumerate | Method::Both => Some(severi_degree_enum(delta, &a, &b).map_err(core_failure)?),
        _ => None,
    };
    let polynomial = match method {
        Method::Polynomial | Method::Both => Some(ctx.node_polynomial(delta)?.evaluate(&a, &b).map_err(core_failure)?),
        _ => None,
    };
    let verdict = match (&enumerated, &polynomial) {
        (Some(x), Some(y)) => Some(if x == y { "MATCH" } else { "MISMATCH" }),
        _ => None,
    };
    if json {
        print_json(&json!({
            "delta": delta,
            "alpha": a.as_slice(),
            "beta": b.as_slice(),
            "enumerate": enumerated.as_ref().map(|v| v.to_string()),
            "polynomial": polynomial.as_ref().map(|v| v.to_string()),
            "verdict": verdict,
        }));
    } else {
        match (&enumerated, &polynomial) {
            (Some(x), Some(y)) => {
                println!("enumerate:  {x}");
                println!("polynomial: {y}");
                println!("{}", verdict.unwrap());
            }
            (Some(x), None) | (None, Some(x)) => println!("{x}"),
            (None, None) => unreachable!(),
        }
    }
    if verdict == Some("MISMATCH") {
        return Err(Failure::Mismatch);
    }
    Ok(())
}

fn cmd_nodepoly(ctx: &Context, json: bool, delta: usize, out: Option<PathBuf>) -> Result<(), Failure> {
    let n = ctx.node_polynomial(delta)?;
    let doc = NodePolyJson::new(&n);
    let text = serde_json::to_string_pretty(&doc).expect("documents serialize");
    match out {
        Some(path) => {
            let write = |p: &PathBuf, s: &str| std::fs::write(p, s).map_err(|e| Failure::Other(format!("{}: {e}", p.display())));
            write(&path, &format!("{text}\n"))?;
            write(&path.with_extension("txt"), &format!("{}\n", n.poly))?;
            eprintln!("wrote {} ({} terms)", path.display(), n.poly.len());
        }
        None if json => println!("{text}"),
        None => println!("{}", n.poly),
    }
    Ok(())
}

fn cmd_leading(json: bool, delta: usize, depth: usize) -> Result<(), Failure> {
    if delta > MAX_ASSEMBLY_DELTA {
        return Err(ComputeError::TooLarge {
            what: "leading terms",
            delta,
            max: MAX_ASSEMBLY_DELTA,
        }
        .into());
    }
    let p = floorpoly_core::assembly::leading_terms(delta, depth).map_err(core_failure)?;
    if json {
        print_json(&json!({ "delta": delta, "depth": depth, "poly": PolyJson::from_poly(&p) }));
    } else {
        println!("{p}");
    }
    Ok(())
}

fn cmd_verify(ctx: &Context, json: bool, delta: usize, max_degree: u64) -> Result<(), Failure> {
    let checks = verify::run(ctx, delta, max_degree)?;
    let failed = checks.iter().filter(|c| c.failed()).count();
    if json {
        let rows: Vec<_> = checks
            .iter()
            .map(|c| {
                let (status, note) = match &c.status {
                    verify::Status::Pass => ("pass", None),
                    verify::Status::Flagged(s) => ("flag", Some(s)),
                    verify::Status::Fail(s) => ("fail", Some(s)),
                };
                json!({ "check": c.name, "detail": c.detail, "status": status, "note": note })
            })
            .collect();
        print_json(&json!({ "delta": delta, "max_degree": max_degree, "failed": failed, "checks": rows }));
    } else {
        for c in &checks {
            println!("{c}");
        }
        println!("{} checks, {failed} failed", checks.len());
    }
    if failed > 0 {
        return Err(Failure::Mismatch);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("warning: --jobs ignored: {e}");
        }
    }
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::resolve(cli.cache_dir.as_deref())
    };
    let mut ctx = Context::new(cache);
    ctx.allow_large = cli.allow_large;
    let json = cli.json;
    let result = match cli.command {
        Command::Templates { cogenus, kind } => cmd_templates(&ctx, json, cogenus, kind),
        Command::Severi { delta, alpha, beta, method } => cmd_severi(&ctx, json, delta, &alpha, &beta, method),
        Command::Nodepoly { delta, out } => cmd_nodepoly(&ctx, json, delta, out),
        Command::Leading { delta, depth } => cmd_leading(json, delta, depth),
        Command::Verify { delta, max_degree } => cmd_verify(&ctx, json, delta, max_degree),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Mismatch) => ExitCode::from(EXIT_MISMATCH),
        Err(Failure::Resource(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(EXIT_RESOURCE)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
