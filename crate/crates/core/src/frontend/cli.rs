use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser as ClapParser, Subcommand, ValueEnum};

use crate::conelab::{cone_equivalence_witness_with, lift_cone_map_traced, LiftChoice};
use crate::curvegenus::{decide_cone_equivalence_p3, geometric_genus};
use crate::mapalg::{compose, pushforward};

use super::jobfile::{JobFile, LoadOptions};
use super::render::render_birmap_details;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
}

#[derive(Debug, ClapParser)]
#[command(
    name = "cremona",
    version,
    about = "Exact Cremona equivalences between cones"
)]
struct Cli {
    /// Screen birmaps modulo a prime before symbolic verification: `p,trials`.
    #[arg(long, global = true, value_parser = parse_precheck, value_name = "P,TRIALS")]
    numeric_precheck: Option<(u64, usize)>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the cofactors of a verified birmap.
    Verify { job: PathBuf, name: String },
    /// Compose two birmaps: apply A, then B.
    Compose { job: PathBuf, a: String, b: String },
    /// Push a hypersurface forward along a birmap.
    Push {
        job: PathBuf,
        map: String,
        poly: String,
    },
    /// Lift a birmap of P^(n-1) to P^n fixing [0:...:0:1].
    Lift {
        job: PathBuf,
        map: String,
        /// Base variable whose power multiplies the new variable.
        #[arg(long, default_value_t = 0)]
        pivot: usize,
    },
    /// Build a map sending the cone over C1 to the cone over C2.
    Witness {
        job: PathBuf,
        c1: String,
        c2: String,
        map: String,
        #[arg(long, default_value_t = 0)]
        pivot: usize,
    },
    /// Geometric genus of a plane curve.
    Genus { job: PathBuf, poly: String },
    /// Decide whether two cones in P^3 are Cremona equivalent.
    #[command(name = "decide-p3")]
    DecideP3 {
        job: PathBuf,
        s1: String,
        s2: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_precheck(s: &str) -> Result<(u64, usize), String> {
    let (p, t) = s
        .split_once(',')
        .ok_or_else(|| "expected P,TRIALS".to_string())?;
    let p = p.trim().parse().map_err(|e| format!("prime: {e}"))?;
    let t = t.trim().parse().map_err(|e| format!("trials: {e}"))?;
    Ok((p, t))
}

/// Exit status, standard output and standard error of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// `run_command`: runs one CLI invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(0, text),
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok((code, out)) => Outcome::ok(code, out),
        Err(msg) => Outcome::error(msg),
    }
}

fn load(job: &std::path::Path, cli: &Cli) -> Result<JobFile, String> {
    let opts = LoadOptions {
        precheck: cli.numeric_precheck,
    };
    JobFile::load(job, &opts).map_err(|e| e.to_string())
}

fn execute(cli: &Cli) -> Result<(i32, String), String> {
    let OutputFormat::Text = cli.output;
    let e = |x: &dyn std::fmt::Display| x.to_string();
    let mut out = String::new();
    match &cli.command {
        Command::Verify { job, name } => {
            let job = load(job, cli)?;
            let b = job.birmap(name).map_err(|x| e(&x))?;
            let _ = writeln!(out, "birmap {name}: verified");
            let _ = writeln!(out, "{}", render_birmap_details(b));
        }
        Command::Compose { job, a, b } => {
            let job = load(job, cli)?;
            let fa = job.birmap(a).map_err(|x| e(&x))?;
            let fb = job.birmap(b).map_err(|x| e(&x))?;
            let c = compose(fa, fb).map_err(|x| e(&x))?;
            let _ = writeln!(out, "{}", render_birmap_details(&c));
        }
        Command::Push { job, map, poly } => {
            let job = load(job, cli)?;
            let b = job.birmap(map).map_err(|x| e(&x))?;
            let s = job.poly(poly).map_err(|x| e(&x))?;
            let image = pushforward(b, s).map_err(|x| e(&x))?;
            let _ = writeln!(out, "{image}");
        }
        Command::Lift { job, map, pivot } => {
            let job = load(job, cli)?;
            let b = job.birmap(map).map_err(|x| e(&x))?;
            let choice = pivot_choice(b, *pivot)?;
            let (lift, route) = lift_cone_map_traced(b, &choice).map_err(|x| e(&x))?;
            let _ = writeln!(out, "lift of {map} (pivot x{pivot}, inverse by {route})");
            let _ = writeln!(out, "{}", render_birmap_details(&lift));
        }
        Command::Witness {
            job,
            c1,
            c2,
            map,
            pivot,
        } => {
            let job = load(job, cli)?;
            let b = job.birmap(map).map_err(|x| e(&x))?;
            let p1 = job.curve(c1).map_err(|x| e(&x))?;
            let p2 = job.curve(c2).map_err(|x| e(&x))?;
            let choice = pivot_choice(b, *pivot)?;
            let w = cone_equivalence_witness_with(p1, p2, b, &choice).map_err(|x| e(&x))?;
            let cone = p1.extend_vars(1);
            let image = pushforward(&w, &cone).map_err(|x| e(&x))?;
            let _ = writeln!(out, "{}", render_birmap_details(&w));
            let _ = writeln!(out, "cone: {cone}");
            let _ = writeln!(out, "image: {image}");
        }
        Command::Genus { job, poly } => {
            let job = load(job, cli)?;
            let c = job.curve(poly).map_err(|x| e(&x))?;
            let report = geometric_genus(c).map_err(|x| e(&x))?;
            let _ = writeln!(out, "{report}");
        }
        Command::DecideP3 { job, s1, s2, seed } => {
            let job = load(job, cli)?;
            let a = job.cone(s1).map_err(|x| e(&x))?;
            let b = job.cone(s2).map_err(|x| e(&x))?;
            let d = decide_cone_equivalence_p3(a, b, *seed).map_err(|x| e(&x))?;
            let _ = writeln!(out, "{d}");
            return Ok((if d.equivalent { 0 } else { 1 }, out));
        }
    }
    Ok((0, out))
}

fn pivot_choice(b: &crate::mapalg::BirationalMap, pivot: usize) -> Result<LiftChoice, String> {
    let nvars = b.forward().nvars();
    if pivot >= nvars {
        return Err(format!("pivot x{pivot} out of range for {nvars} variables"));
    }
    Ok(LiftChoice::pivot(pivot, nvars, b.degree()))
}
