//! `doflab`: region geometry, scheme plans and link simulations from the
//! command line.
//!
//! Failures print a single `E:<CODE>:<message>` line on stderr. Exit status
//! is 0 on success, 2 for usage errors and 3 for domain errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use doflab_core::converse::converse_region;
use doflab_core::linksim::{estimate_rates, snr_grid, Cancellation, SimParams};
use doflab_core::rational::{self, Rational};
use doflab_core::region::{delayed_csit_region, no_csit_region, theorem1_region, DofPoint};
use doflab_core::report::{self, QualitySweep};
use doflab_core::scheme::{self, PlanDocument, SchedulePlan};
use doflab_core::{DofError, SystemConfig};

#[derive(Parser, Debug)]
#[command(name = "doflab", version, about = "DoF regions of the two-user MIMO broadcast channel with delayed imperfect CSIT")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Half-planes and vertices of a region.
    Region {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_enum, default_value_t = RegionKind::Proposed)]
        kind: RegionKind,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Vertex list, closed-form corner and diagonal point.
    Corners {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// No-CSIT, proposed and delayed-CSIT regions with subset verdicts.
    Compare {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Integer schedule, decoding slacks and achieved DoF.
    Plan {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        plan: PlanArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Monte Carlo rates, slopes and rank checks for a plan.
    Simulate {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        plan: PlanArgs,
        #[command(flatten)]
        sim: SimArgs,
        /// Writes BASE.csv and BASE.json; stdout otherwise.
        #[arg(long, value_name = "BASE")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Regions for symmetric qualities α1 = α2 = α.
    SweepAlpha {
        #[command(flatten)]
        ant: AntennaArgs,
        /// Comma-separated qualities.
        #[arg(long, default_value = "0,1/2,1")]
        alphas: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Corner points for a list of (α1, α2) pairs.
    SweepPairs {
        #[command(flatten)]
        ant: AntennaArgs,
        /// Comma-separated `α1:α2` pairs.
        #[arg(long, default_value = "1/2:0,1/2:1/4,1/2:1/2,1/2:3/4,1/2:1")]
        pairs: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct AntennaArgs {
    #[arg(long = "M", default_value_t = 2)]
    m: u32,
    #[arg(long = "N1", default_value_t = 1)]
    n1: u32,
    #[arg(long = "N2", default_value_t = 1)]
    n2: u32,
}

#[derive(Args, Debug)]
struct SystemArgs {
    #[arg(long = "M")]
    m: u32,
    #[arg(long = "N1")]
    n1: u32,
    #[arg(long = "N2")]
    n2: u32,
    /// `p/q` or decimal.
    #[arg(long, default_value = "0")]
    alpha1: String,
    #[arg(long, default_value = "0")]
    alpha2: String,
}

#[derive(Args, Debug)]
struct PlanArgs {
    /// Share of phase I in the first two phases; defaults to the corner
    /// weight when one exists, 1/2 otherwise.
    #[arg(long)]
    weight: Option<String>,
    /// Explicit durations `τ1,τ2,τ3` instead of a weight.
    #[arg(long, conflicts_with = "weight")]
    durations: Option<String>,
}

#[derive(Args, Debug)]
struct SimArgs {
    #[arg(long, default_value_t = 30.0)]
    snr_min: f64,
    #[arg(long, default_value_t = 60.0)]
    snr_max: f64,
    #[arg(long, default_value_t = 5.0)]
    snr_step: f64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, env = "DOFLAB_SEED", default_value_t = 2024)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    noise_variance: f64,
    #[arg(long, value_enum, default_value_t = CancellationArg::Noisy)]
    cancellation: CancellationArg,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RegionKind {
    Proposed,
    Converse,
    Achievable,
    NoCsit,
    Delayed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CancellationArg {
    Exact,
    Noisy,
}

struct Failure {
    code: String,
    message: String,
    status: u8,
}

impl From<DofError> for Failure {
    fn from(e: DofError) -> Self {
        let status = if matches!(e, DofError::ParseRational(_)) { 2 } else { 3 };
        Failure {
            code: e.code().to_string(),
            message: e.to_string(),
            status,
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: "USAGE".into(),
        message: message.into(),
        status: 2,
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: "IO".into(),
        message: format!("{}: {e}", path.display()),
        status: 3,
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let line: Vec<&str> = text
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!("E:USAGE:{}", line.join(" ").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("E:{}:{}", f.code, f.message.replace('\n', " "));
            ExitCode::from(f.status)
        }
    }
}

fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Region { sys, kind, out } => {
            let cfg = sys.config()?;
            let region = match kind {
                RegionKind::Proposed => theorem1_region(&cfg),
                RegionKind::Converse => converse_region(&cfg),
                RegionKind::Achievable => scheme::achievable_region(&cfg),
                RegionKind::NoCsit => no_csit_region(&cfg),
                RegionKind::Delayed => delayed_csit_region(&cfg),
            };
            let doc = region.document()?;
            let text = match out.format {
                Format::Json => to_json(&doc),
                Format::Csv => vertices_csv(&doc.vertices),
            };
            emit(&out.out, &text)
        }
        Command::Corners { sys, out } => {
            let doc = report::corners(&sys.config()?)?;
            let text = match out.format {
                Format::Json => to_json(&doc),
                Format::Csv => {
                    let mut s = String::from("kind,d1,d2\n");
                    for v in &doc.vertices {
                        point_row(&mut s, "vertex", v);
                    }
                    if let Some(c) = &doc.corner_point {
                        point_row(&mut s, "corner", c);
                    }
                    point_row(&mut s, "symmetric", &doc.symmetric_point);
                    s
                }
            };
            emit(&out.out, &text)
        }
        Command::Compare { sys, out } => {
            let doc = report::compare(&sys.config()?)?;
            let text = match out.format {
                Format::Json => to_json(&doc),
                Format::Csv => {
                    let mut s = String::from("region,d1,d2\n");
                    for r in &doc.regions {
                        for v in &r.region.vertices {
                            point_row(&mut s, &r.name, v);
                        }
                    }
                    s
                }
            };
            emit(&out.out, &text)
        }
        Command::Plan { sys, plan, out } => {
            let cfg = sys.config()?;
            let (weight, schedule) = plan.resolve(&cfg)?;
            let doc = PlanDocument::new(&cfg, &weight, schedule);
            let text = match out.format {
                Format::Json => to_json(&doc),
                Format::Csv => plan_csv(&doc),
            };
            emit(&out.out, &text)
        }
        Command::Simulate {
            sys,
            plan,
            sim,
            out,
            format,
        } => {
            let cfg = sys.config()?;
            let (_, schedule) = plan.resolve(&cfg)?;
            let params = sim.params()?;
            let report = estimate_rates(&cfg, &schedule, &params)?;
            let csv = report.to_csv();
            let json = to_json(&report.summary());
            match out {
                Some(base) => {
                    write_file(&base.with_extension("csv"), &csv)?;
                    write_file(&base.with_extension("json"), &json)
                }
                None => emit(&None, if format == Format::Csv { &csv } else { &json }),
            }
        }
        Command::SweepAlpha { ant, alphas, out } => {
            let alphas = alphas
                .split(',')
                .map(|a| rational::parse(a).map_err(Failure::from))
                .collect::<CliResult<Vec<Rational>>>()?;
            let sweep = report::sweep_alpha(ant.m, ant.n1, ant.n2, &alphas)?;
            emit(&out.out, &sweep_text(&sweep, out.format))
        }
        Command::SweepPairs { ant, pairs, out } => {
            let pairs = pairs
                .split(',')
                .map(|p| {
                    let (a1, a2) = p
                        .split_once(':')
                        .ok_or_else(|| usage(format!("pair {p:?} is not of the form a1:a2")))?;
                    Ok((rational::parse(a1)?, rational::parse(a2)?))
                })
                .collect::<CliResult<Vec<(Rational, Rational)>>>()?;
            let sweep = report::sweep_pairs(ant.m, ant.n1, ant.n2, &pairs)?;
            emit(&out.out, &sweep_text(&sweep, out.format))
        }
    }
}

impl SystemArgs {
    fn config(&self) -> CliResult<SystemConfig> {
        let a1 = rational::parse(&self.alpha1)?;
        let a2 = rational::parse(&self.alpha2)?;
        Ok(SystemConfig::new(self.m, self.n1, self.n2, a1, a2)?)
    }
}

impl PlanArgs {
    /// Three-phase plan when `N2 < M`, TDMA otherwise.
    fn resolve(&self, cfg: &SystemConfig) -> CliResult<(Rational, SchedulePlan)> {
        let three_phase = cfg.n2 < cfg.m;
        if let Some(d) = &self.durations {
            let taus = d
                .split(',')
                .map(|t| rational::parse(t).map_err(Failure::from))
                .collect::<CliResult<Vec<Rational>>>()?;
            let [t1, t2, t3]: [Rational; 3] = taus
                .try_into()
                .map_err(|_| usage(format!("durations {d:?} need three values")))?;
            let total = &t1 + &t2;
            let weight = if total == rational::int(0) { rational::int(0) } else { &t1 / &total };
            let plan = if three_phase {
                SchedulePlan::from_durations(cfg, t1, t2, t3)?
            } else {
                SchedulePlan::tdma(cfg, t1, t2)?
            };
            return Ok((weight, plan));
        }
        let weight = match &self.weight {
            Some(w) => rational::parse(w)?,
            None if three_phase => scheme::corner_weight(cfg).unwrap_or_else(|| rational::ratio(1, 2)),
            None => rational::ratio(1, 2),
        };
        let plan = if three_phase {
            scheme::plan_schedule(cfg, &weight)?
        } else {
            scheme::plan_tdma(cfg, &weight)?
        };
        Ok((weight, plan))
    }
}

impl SimArgs {
    fn params(&self) -> CliResult<SimParams> {
        let grid = snr_grid(self.snr_min, self.snr_max, self.snr_step)?;
        let mut p = SimParams::new(grid, self.trials, self.seed)?;
        p.noise_variance = self.noise_variance;
        p.cancellation = match self.cancellation {
            CancellationArg::Exact => Cancellation::Exact,
            CancellationArg::Noisy => Cancellation::Noisy,
        };
        p.validate()?;
        Ok(p)
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn point_row(s: &mut String, label: &str, p: &DofPoint) {
    let _ = writeln!(s, "{label},{},{}", rational::format(&p.d1), rational::format(&p.d2));
}

fn vertices_csv(vertices: &[DofPoint]) -> String {
    let mut s = String::from("d1,d2\n");
    for v in vertices {
        let _ = writeln!(s, "{},{}", rational::format(&v.d1), rational::format(&v.d2));
    }
    s
}

fn plan_csv(doc: &PlanDocument) -> String {
    let p = &doc.plan;
    let dof = |f: fn(&DofPoint) -> &Rational| {
        doc.achieved_dof.as_ref().map(|d| rational::format(f(d))).unwrap_or_default()
    };
    format!(
        "weight,tau1,tau2,tau3,s1,s2,slack1,slack2,decodable,d1,d2\n{},{},{},{},{},{},{},{},{},{},{}\n",
        rational::format(&doc.weight),
        p.tau1,
        p.tau2,
        p.tau3,
        p.s1_count,
        p.s2_count,
        doc.slacks.slack1,
        doc.slacks.slack2,
        doc.decodable,
        dof(|d| &d.d1),
        dof(|d| &d.d2),
    )
}

fn sweep_text(sweep: &QualitySweep, format: Format) -> String {
    match format {
        Format::Json => to_json(sweep),
        Format::Csv => {
            let mut s = String::from("alpha1,alpha2,kind,d1,d2\n");
            for q in &sweep.points {
                let label = |kind: &str| format!("{},{},{kind}", rational::format(&q.alpha1), rational::format(&q.alpha2));
                for v in &q.vertices {
                    point_row(&mut s, &label("vertex"), v);
                }
                if let Some(c) = &q.corner_point {
                    point_row(&mut s, &label("corner"), c);
                }
                point_row(&mut s, &label("symmetric"), &q.symmetric_point);
            }
            s
        }
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn emit(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
