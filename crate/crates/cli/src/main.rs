use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use twist_core::characters::{adjudicate_char, adjudication_csv, AffineRootData};
use twist_core::report::{run_suites, RunConfig, Suite};
use twist_core::weyl::{weighted_character_target, weyl_character_target, ChSource};
use twist_core::Error;

#[derive(Parser)]
#[command(name = "twist", version, about = "Exact checks for twisted toroidal Lie algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite and write a JSON report
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        common: Common,
    },
    /// Emit the level-one local Weyl character table and the adjudication report
    Characters {
        #[command(flatten)]
        common: Common,
        /// where ch L(Lambda_0) comes from
        #[arg(long, value_enum, default_value = "product")]
        source: SourceArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Presentation,
    Rp1,
    Garland,
    VertexIdentities,
    CentralAssignments,
    Characters,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Product,
    Freudenthal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Cartan type of g (A or D)
    #[arg(long = "type", default_value = "A")]
    ty: String,
    #[arg(long, default_value_t = 3)]
    rank: usize,
    /// order of the diagram automorphism (default 3 for D4, else 2)
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// exponent box radius for t_2..t_n
    #[arg(long = "box", default_value_t = 1)]
    box_radius: i64,
    /// truncation depth in q_1
    #[arg(long, default_value_t = 6)]
    depth: i64,
    /// cap on the exponents of q_2..q_n
    #[arg(long, default_value_t = 2)]
    pbox: i64,
    /// t_1 exponent range, written `-k..k` or `k`
    #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
    m1: String,
    #[arg(long, value_enum, default_value = "json")]
    emit: Emit,
    /// output file (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// replace an existing output file
    #[arg(long)]
    force: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// Failure classes mapped to exit codes 2 and 3.
enum Failure {
    Config(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnsupportedType(_) | Error::Invalid(_) | Error::NotADivisorOf24(_) => Failure::Config(e.into()),
            _ => Failure::Internal(e.into()),
        }
    }
}

fn parse_m1(s: &str) -> Result<i64, Failure> {
    let bad = || Failure::Config(anyhow::anyhow!("--m1 expects a symmetric range -k..k, got {}", s));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if a != -b || b < 0 {
                return Err(bad());
            }
            Ok(b)
        }
        None => s.trim().parse::<i64>().map(|k| k.abs()).map_err(|_| bad()),
    }
}

fn run_config(c: &Common) -> Result<RunConfig, Failure> {
    let order = c.order.unwrap_or(if c.ty.eq_ignore_ascii_case("D") && c.rank == 4 { 3 } else { 2 });
    let rc = RunConfig {
        ty: c.ty.to_uppercase(),
        rank: c.rank,
        order,
        n: c.n,
        box_radius: c.box_radius,
        depth: c.depth,
        pbox: c.pbox,
        m1: parse_m1(&c.m1)?,
        seed: c.seed,
        jobs: c.jobs.max(1),
    };
    rc.validate()?;
    Ok(rc)
}

fn write_output(c: &Common, body: &str) -> Result<(), Failure> {
    match &c.out {
        None => {
            print!("{}", body);
            Ok(())
        }
        Some(p) => write_file(p, body, c.force),
    }
}

fn write_file(p: &Path, body: &str, force: bool) -> Result<(), Failure> {
    if p.exists() && !force {
        return Err(Failure::Config(anyhow::anyhow!("{} exists; pass --force to overwrite", p.display())));
    }
    std::fs::write(p, body).with_context(|| format!("writing {}", p.display())).map_err(Failure::Internal)
}

fn verify(suite: SuiteArg, c: &Common) -> Result<bool, Failure> {
    let rc = run_config(c)?;
    let suites: Vec<Suite> = match suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Presentation => vec![Suite::Presentation],
        SuiteArg::Rp1 => vec![Suite::Rp1],
        SuiteArg::Garland => vec![Suite::Garland],
        SuiteArg::VertexIdentities => vec![Suite::VertexIdentities],
        SuiteArg::CentralAssignments => vec![Suite::CentralAssignments],
        SuiteArg::Characters => vec![Suite::Characters],
    };
    let rep = run_suites(&suites, &rc)?;
    for s in &rep.suites {
        eprintln!("{}: {}", s.suite.name(), if s.passed { "pass" } else { "FAIL" });
        for n in &s.notes {
            eprintln!("  {}", n);
        }
    }
    if c.emit == Emit::Csv {
        let mut csv = String::from("suite,passed\n");
        for s in &rep.suites {
            csv.push_str(&format!("{},{}\n", s.suite.name(), s.passed));
        }
        write_output(c, &csv)?;
    } else {
        write_output(c, &rep.to_json())?;
    }
    Ok(rep.passed)
}

fn characters(c: &Common, source: SourceArg) -> Result<bool, Failure> {
    let rc = run_config(c)?;
    let cfg = rc.gconfig()?;
    let source = match source {
        SourceArg::Product => ChSource::Product,
        SourceArg::Freudenthal => ChSource::Freudenthal,
    };
    let (q1, mut multi) = weyl_character_target(cfg, rc.n, rc.depth, rc.pbox, source)?;
    if source == ChSource::Freudenthal {
        // keep the finite weights in the emitted table
        multi = weighted_character_target(cfg, rc.n, rc.depth, rc.pbox)?;
    }
    let adj = adjudicate_char(cfg, rc.depth)?;
    eprintln!("verdict: {}", serde_json::to_value(adj.verdict).map_err(|e| Failure::Internal(e.into()))?);
    match c.emit {
        Emit::Csv => {
            write_output(c, &multi.to_csv())?;
            if let Some(p) = &c.out {
                let side = p.with_extension("adjudication.csv");
                write_file(&side, &adjudication_csv(&adj), c.force)?;
            }
        }
        Emit::Json => {
            let data = AffineRootData::new(cfg)?;
            let v = serde_json::json!({
                "schema": twist_core::report::SCHEMA,
                "config": rc,
                "input_hash": rc.content_hash(),
                "affine_cartan": data.affine_cartan(),
                "dual_labels": data.dual_labels(),
                "q1_target": q1.q1_coefficients(),
                "multivariate_target": multi,
                "adjudication": adj,
            });
            let body = serde_json::to_string_pretty(&v).map_err(|e| Failure::Internal(e.into()))? + "\n";
            write_output(c, &body)?;
        }
    }
    // emitting the table succeeds; the verdict is data
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Verify { suite, common } => verify(*suite, common),
        Cmd::Characters { common, source } => characters(common, *source),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Config(e)) => {
            eprintln!("config error: {:#}", e);
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {:#}", e);
            ExitCode::from(3)
        }
    }
}
