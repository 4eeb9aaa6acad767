use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use kk7::ansatz::{AnsatzFamily, AnsatzSpec, PolySystem};
use kk7::expr::Expr;
use kk7::model::PdeCoefficients;
use kk7::solver::{
    solve_scaled, solve_system, SolutionVariety, SolveOptions, DEFAULT_DEGREE_BOUND,
};
use kk7::spectral::{self, GridState, Scheme, SimConfig};
use kk7::verify::{self, ClosedFormSolution, NumericOptions};
use kk7::Error;

// stdout may be a closed pipe (`kk7 catalog | head`)
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

macro_rules! put {
    ($e:expr) => {{
        use std::io::Write as _;
        if write!(std::io::stdout(), "{}", $e).is_err() {
            std::process::exit(0);
        }
    }};
}

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DEGREE_BOUND: u8 = 3;

#[derive(Parser)]
#[command(
    name = "kk7",
    version,
    about = "Exact traveling waves of seventh-order KdV equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SystemArgs {
    /// preset (kk7, lax7, ski7) or seven comma-separated rationals
    #[arg(long, default_value = "kk7")]
    equation: String,
    /// cole-hopf, tanh-coth or sinh-cosh
    #[arg(long)]
    ansatz: String,
    /// fix an unknown, e.g. --fix a=0 (repeatable)
    #[arg(long = "fix", value_name = "NAME=EXPR")]
    fix: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficient-matching system of an ansatz
    Derive {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Solve the system and write the components as JSON
    Solve {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: u32,
        #[arg(long, default_value = "solutions.json")]
        out: PathBuf,
    },
    /// Certify catalog entries symbolically and numerically
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "kk7")]
        equation: String,
        /// decimal digits (default: $KK7_PRECISION or 50)
        #[arg(long)]
        precision: Option<usize>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Continue a hyperbolic entry to its trigonometric partner
    Continue {
        #[arg(long)]
        id: String,
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Integrate a soliton entry and write CSV diagnostics
    Simulate {
        #[arg(long)]
        id: String,
        /// value of the scale parameter (mu, or k for the Cole-Hopf entry)
        #[arg(long, default_value = "1")]
        mu: String,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, default_value_t = 40.0)]
        length: f64,
        #[arg(long, default_value_t = 1e-7)]
        dt: f64,
        #[arg(long = "T", default_value_t = 0.05)]
        t_final: f64,
        #[arg(long, value_enum, default_value_t = SchemeArg::EtdRk4)]
        scheme: SchemeArg,
        #[arg(long, default_value_t = 2.5)]
        dealias: f64,
        /// diagnostics every this many steps (0: only at the ends)
        #[arg(long, default_value_t = 0)]
        every: usize,
        /// pass iff the final max-norm error is below this
        #[arg(long, default_value_t = 1e-6)]
        max_error: f64,
        #[arg(long, default_value = "diagnostics.csv")]
        out: PathBuf,
        /// also dump the final state (x, u)
        #[arg(long)]
        state_out: Option<PathBuf>,
    },
    /// Dump the solution catalog
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    EtdRk4,
    IfRk4,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::DegreeBoundExceeded(_) => EXIT_DEGREE_BOUND,
                Error::Parse(_)
                | Error::UnknownPreset(_)
                | Error::EmptyAnsatz
                | Error::InvalidConfig(_)
                | Error::InvalidGrid(_) => EXIT_USAGE,
                _ => EXIT_FAILED,
            })
        }
    }
}

fn run(cmd: Command) -> kk7::Result<bool> {
    match cmd {
        Command::Derive { system } => {
            let (coeffs, spec) = system.parse()?;
            put!(spec.derive(&coeffs)?);
            Ok(true)
        }
        Command::Solve {
            system,
            degree_bound,
            out,
        } => {
            let (coeffs, spec) = system.parse()?;
            let sys = spec.derive(&coeffs)?;
            let sols = solve(&spec, &sys, degree_bound)?;
            let mut records = Vec::new();
            for (i, v) in sols.iter().enumerate() {
                out!("[{}] {v}", i + 1);
                let sol = verify::from_variety(&spec, v, &format!("s{}", i + 1))?;
                out!("    u(x,t) = {}", sol.expr);
                records.push(variety_json(v, &sol));
            }
            let doc = json!({
                "equation": coeffs.to_string(),
                "ansatz": spec.family.name(),
                "components": records,
            });
            std::fs::write(&out, serde_json::to_string_pretty(&doc).unwrap() + "\n")?;
            out!("wrote {} components to {}", sols.len(), out.display());
            Ok(true)
        }
        Command::Verify {
            id,
            all,
            equation,
            precision,
            samples,
        } => {
            let coeffs: PdeCoefficients = equation.parse()?;
            let opts = NumericOptions {
                samples,
                precision: precision_or_env(precision)?,
                ..NumericOptions::default()
            };
            let entries = if all {
                verify::catalog()
            } else {
                vec![lookup(id.as_deref().unwrap_or_default())?]
            };
            let mut ok = true;
            for sol in &entries {
                let v = verify::certify(sol, &coeffs, &opts)?;
                ok &= v.pass();
                out!("{v}");
            }
            Ok(ok)
        }
        Command::Continue { id, precision } => {
            let sol = lookup(&id)?;
            let cont = verify::periodic_continue(&sol)?;
            out!("{} ({}) -> {}", sol.id, sol.kind, cont.kind);
            out!("u(x,t) = {}", cont.expr);
            for (k, v) in &cont.params {
                out!("  {k} = {v}");
            }
            out!("  {} = {}", cont.speed.0, cont.speed.1);
            for r in &cont.relations {
                out!("  where {r} = 0");
            }
            let mut ok = true;
            if let Some(partner) = sol.partner().and_then(|p| verify::entry(&p)) {
                let same = verify::same_form(&cont, &partner);
                ok &= same;
                out!(
                    "{} matches catalog {}",
                    if same { "PASS" } else { "FAIL" },
                    partner.id
                );
            }
            let opts = NumericOptions {
                precision: precision_or_env(precision)?,
                ..NumericOptions::default()
            };
            let v = verify::certify(&cont, &PdeCoefficients::kk7(), &opts)?;
            ok &= v.pass();
            out!("{v}");
            Ok(ok)
        }
        Command::Simulate {
            id,
            mu,
            n,
            length,
            dt,
            t_final,
            scheme,
            dealias,
            every,
            max_error,
            out,
            state_out,
        } => {
            let sol = lookup(&id)?;
            let mut params = verify::sample_parameters(&sol);
            params.insert(sol.scale.clone(), mu.parse::<Expr>()?);
            if params.contains_key("delta") {
                params.insert("delta".into(), Expr::from(0i64));
            }
            let u = spectral::solution_profile(&sol, &params, length)?;
            let initial = GridState::from_fn(n, length, 0.0, &u)?;
            let mut cfg = SimConfig::new(PdeCoefficients::kk7(), dt, t_final);
            cfg.dealias = dealias;
            cfg.record_every = every;
            cfg.scheme = match scheme {
                SchemeArg::EtdRk4 => Scheme::EtdRk4,
                SchemeArg::IfRk4 => Scheme::IfRk4,
            };
            let r = spectral::integrate(&initial, &cfg, Some(&u))?;
            std::fs::write(&out, spectral::history_csv(&r.history))?;
            if let Some(p) = state_out {
                std::fs::write(p, spectral::state_csv(&r.state))?;
            }
            let (first, last) = (&r.history[0], r.history.last().unwrap());
            let err = last.max_error.unwrap_or(f64::NAN);
            out!("{} steps of {:e} to t = {}", r.steps, r.dt, last.t);
            out!("max-norm error vs exact: {err:.3e}");
            if r.conservative {
                out!(
                    "relative mass drift: {:.3e}",
                    ((last.mass - first.mass) / first.mass).abs()
                );
            } else {
                out!("mass is not conserved by this equation; no drift check");
            }
            out!("wrote {}", out.display());
            let ok = err < max_error;
            out!(
                "{} error below {max_error:e}",
                if ok { "PASS" } else { "FAIL" }
            );
            Ok(ok)
        }
        Command::Catalog { format } => {
            let entries = verify::catalog();
            match format {
                Format::Json => out!("{}", verify::catalog_json(&entries)),
                Format::Text => entries.iter().for_each(|e| out!("{e}")),
            }
            Ok(true)
        }
    }
}

impl SystemArgs {
    fn parse(&self) -> kk7::Result<(PdeCoefficients, AnsatzSpec)> {
        let coeffs: PdeCoefficients = self.equation.parse()?;
        let family: AnsatzFamily = self.ansatz.parse()?;
        let mut spec = AnsatzSpec::new(family);
        for f in &self.fix {
            let (name, value) = f
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("--fix expects NAME=EXPR, got {f:?}")))?;
            let name = name.trim();
            if !spec.all_unknowns().contains(&name) {
                return Err(Error::Parse(format!(
                    "{name} is not an unknown of {family}"
                )));
            }
            spec = spec.with(name, value.parse()?);
        }
        if spec.is_empty() {
            return Err(Error::EmptyAnsatz);
        }
        Ok((coeffs, spec))
    }
}

fn solve(spec: &AnsatzSpec, sys: &PolySystem, bound: u32) -> kk7::Result<Vec<SolutionVariety>> {
    let opts = SolveOptions {
        degree_bound: bound,
    };
    match solve_scaled(sys, spec.scale_symbol(), &spec.weights(), &opts) {
        // fixed values can break the scaling symmetry
        Err(Error::NotHomogeneous(_)) => solve_system(sys, &opts),
        r => r,
    }
}

fn variety_json(v: &SolutionVariety, sol: &ClosedFormSolution) -> serde_json::Value {
    let values: BTreeMap<&String, String> =
        v.values.iter().map(|(k, p)| (k, p.to_string())).collect();
    json!({
        "values": values,
        "free": v.free,
        "relations": v.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "u": sol.expr.to_string(),
    })
}

fn lookup(id: &str) -> kk7::Result<ClosedFormSolution> {
    verify::entry(id).ok_or_else(|| Error::InvalidConfig(format!("no catalog entry {id:?}")))
}

fn precision_or_env(flag: Option<usize>) -> kk7::Result<usize> {
    if let Some(p) = flag {
        return Ok(p);
    }
    match std::env::var("KK7_PRECISION") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("KK7_PRECISION={s:?} is not a digit count"))),
        Err(_) => Ok(50),
    }
}
