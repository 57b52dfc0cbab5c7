//! Subcommand dispatch and the exit-code contract:
//! 0 = success / valid / winnable, 1 = infeasible / counterexample / not
//! winnable / missed, 2 = usage or input error, 3 = budget exceeded.

use crate::format::parse_problem;
use crate::render::render_trace;
use clap::{Parser, Subcommand, ValueEnum};
use motionsynth_core::ast::{parse_controller, print_controller, ControllerAst};
use motionsynth_core::emitter::emit_spec;
use motionsynth_core::oracle::{
    extract_strategy, minimal_l, verify_by_enumeration, winnable, OracleBudget, OracleError,
};
use motionsynth_core::problem::ProblemInstance;
use motionsynth_core::semantics::{run_episode, AdversarySchedule};
use motionsynth_core::solver::{
    solve_from, verify_controller, Budget, Counterexample, SolveOutcome, VerificationVerdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "motionsynth",
    version,
    about = "Compile, solve, and check reactive grid motion-planning problems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ValidateMethod {
    /// Reachable-state search (fast, exhaustive over reachable states).
    Bfs,
    /// Full adversary-schedule enumeration (slow, independent).
    Enumerate,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a problem into a SyGuS specification.
    Compile {
        problem: PathBuf,
        /// Exact number of steps the plan must take.
        #[arg(long)]
        steps: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include explanatory comments in the output.
        #[arg(long)]
        annotate: bool,
    },
    /// Synthesize a controller with the built-in solver.
    Solve {
        problem: PathBuf,
        /// Largest path length to try; defaults to the instance's bound.
        #[arg(long)]
        max_steps: Option<usize>,
        /// Controller AST depth cap.
        #[arg(long, default_value_t = 4)]
        max_depth: u32,
        /// Wall-clock budget per (steps, depth) attempt.
        #[arg(long)]
        budget_seconds: Option<u64>,
        /// Write the winning controller to this file as well.
        #[arg(long)]
        emit_controller: Option<PathBuf>,
        /// Print a key=value work summary.
        #[arg(long)]
        stats: bool,
        /// Skip ahead: first path length to try.
        #[arg(long, default_value_t = 1)]
        start_steps: usize,
    },
    /// Check a controller file against a problem at a fixed path length.
    Validate {
        problem: PathBuf,
        controller: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = ValidateMethod::Bfs)]
        method: ValidateMethod,
    },
    /// Ask the brute-force game oracle whether the robot can force a win.
    Oracle {
        problem: PathBuf,
        /// Query one exact path length.
        #[arg(long, conflicts_with = "max_steps")]
        steps: Option<usize>,
        /// Scan path lengths 0..=N for the smallest winnable one.
        #[arg(long)]
        max_steps: Option<usize>,
        /// Export the winning step-indexed strategy to a file.
        #[arg(long)]
        export_strategy: Option<PathBuf>,
    },
    /// Simulate a controller and render the episode as character grids.
    Trace {
        problem: PathBuf,
        controller: PathBuf,
        #[arg(long)]
        steps: usize,
        /// Adversary: `worst`, `random`, or `file:PATH`.
        #[arg(long, default_value = "worst")]
        adversary: String,
        /// Seed for the random adversary.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Per-attempt wall-clock budget backed by a monotonic clock.
struct WallClockBudget {
    started: Instant,
    attempt_started: Instant,
    limit: Option<Duration>,
}

impl WallClockBudget {
    fn new(limit_seconds: Option<u64>) -> Self {
        let now = Instant::now();
        WallClockBudget {
            started: now,
            attempt_started: now,
            limit: limit_seconds.map(Duration::from_secs),
        }
    }
}

impl Budget for WallClockBudget {
    fn begin_attempt(&mut self) {
        self.attempt_started = Instant::now();
    }

    fn expired(&self) -> bool {
        match self.limit {
            Some(limit) => self.attempt_started.elapsed() > limit,
            None => false,
        }
    }

    fn elapsed_ms(&self) -> u64 {
        self.started.elapsed().as_millis() as u64
    }
}

struct Failure {
    exit: u8,
    message: String,
}

impl Failure {
    fn input(message: String) -> Failure {
        Failure {
            exit: EXIT_INPUT,
            message,
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {}", path.display(), e)))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::input(format!("cannot write {}: {}", path.display(), e)))
}

fn load_problem(path: &Path) -> Result<ProblemInstance, Failure> {
    parse_problem(&read_file(path)?)
        .map_err(|e| Failure::input(format!("{}: {}", path.display(), e)))
}

fn load_controller(path: &Path, p: &ProblemInstance) -> Result<ControllerAst, Failure> {
    parse_controller(&read_file(path)?, p)
        .map_err(|e| Failure::input(format!("{}: {}", path.display(), e)))
}

fn oracle_failure(e: OracleError) -> Failure {
    Failure {
        exit: EXIT_BUDGET,
        message: format!("{}", e),
    }
}

fn format_counterexample(cx: &Counterexample) -> String {
    let mut out = format!("INVALID: {} at step {}\nschedule:\n", cx.cause, cx.step);
    for row in &cx.schedule.moves {
        let line = row
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn parse_schedule_file(
    text: &str,
    p: &ProblemInstance,
    l: usize,
) -> Result<AdversarySchedule, Failure> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() && p.obstacle_count() > 0 {
            continue;
        }
        let row: Result<Vec<usize>, _> = trimmed
            .split_whitespace()
            .map(str::parse::<usize>)
            .collect();
        rows.push(row.map_err(|e| Failure::input(format!("bad schedule entry: {}", e)))?);
    }
    let sched = AdversarySchedule { moves: rows };
    sched
        .check(p, l)
        .map_err(|e| Failure::input(format!("schedule: {}", e)))?;
    Ok(sched)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<u8, Failure> {
    match command {
        Command::Compile {
            problem,
            steps,
            out: out_path,
            annotate,
        } => {
            let p = load_problem(&problem)?;
            let doc =
                emit_spec(&p, steps, annotate).map_err(|e| Failure::input(format!("{}", e)))?;
            match out_path {
                Some(path) => write_file(&path, doc.text())?,
                None => {
                    let _ = out.write_all(doc.text().as_bytes());
                }
            }
            Ok(EXIT_OK)
        }
        Command::Solve {
            problem,
            max_steps,
            max_depth,
            budget_seconds,
            emit_controller,
            stats,
            start_steps,
        } => {
            let p = load_problem(&problem)?;
            let max_steps = max_steps.unwrap_or_else(|| p.default_max_path_length());
            if start_steps < 1 || start_steps > max_steps {
                return Err(Failure::input(format!(
                    "start steps {} outside [1, {}]",
                    start_steps, max_steps
                )));
            }
            let mut budget = WallClockBudget::new(budget_seconds);
            match solve_from(&p, start_steps, max_steps, max_depth, &mut budget) {
                SolveOutcome::Solved(result) => {
                    let text = print_controller(&result.controller, &p);
                    let _ = writeln!(out, "{}", text);
                    if stats {
                        let _ = writeln!(out, "path_length={}", result.path_length);
                        let _ = writeln!(out, "candidates={}", result.stats.candidates);
                        let _ = writeln!(out, "counterexamples={}", result.stats.counterexamples);
                        let _ = writeln!(out, "elapsed_ms={}", result.stats.elapsed_ms);
                    }
                    if let Some(path) = emit_controller {
                        write_file(&path, &(text + "\n"))?;
                    }
                    Ok(EXIT_OK)
                }
                outcome @ SolveOutcome::Infeasible { .. } => {
                    let budget_hit = outcome.budget_expired();
                    if let SolveOutcome::Infeasible { stats: s, .. } = &outcome {
                        if stats {
                            let _ = writeln!(out, "candidates={}", s.candidates);
                            let _ = writeln!(out, "counterexamples={}", s.counterexamples);
                            let _ = writeln!(out, "elapsed_ms={}", s.elapsed_ms);
                        }
                    }
                    if budget_hit {
                        Err(Failure {
                            exit: EXIT_BUDGET,
                            message: format!(
                                "budget expired before exhausting path lengths {}..={} at depth {}",
                                start_steps, max_steps, max_depth
                            ),
                        })
                    } else {
                        Err(Failure {
                            exit: EXIT_NEGATIVE,
                            message: format!(
                                "infeasible: no controller for path lengths {}..={} at depth {}",
                                start_steps, max_steps, max_depth
                            ),
                        })
                    }
                }
            }
        }
        Command::Validate {
            problem,
            controller,
            steps,
            method,
        } => {
            let p = load_problem(&problem)?;
            let c = load_controller(&controller, &p)?;
            let verdict = match method {
                ValidateMethod::Bfs => verify_controller(&p, &c, steps),
                ValidateMethod::Enumerate => {
                    let result = verify_by_enumeration(&p, &c, steps, &OracleBudget::default())
                        .map_err(oracle_failure)?;
                    let _ = writeln!(out, "schedules={}", result.schedules_checked);
                    result.verdict
                }
            };
            match verdict {
                VerificationVerdict::Valid => {
                    let _ = writeln!(out, "VALID");
                    Ok(EXIT_OK)
                }
                VerificationVerdict::Counterexample(cx) => {
                    let _ = out.write_all(format_counterexample(&cx).as_bytes());
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Oracle {
            problem,
            steps,
            max_steps,
            export_strategy,
        } => {
            let p = load_problem(&problem)?;
            let budget = OracleBudget::default();
            let (won, won_at) = match steps {
                Some(l) => {
                    let won = winnable(&p, l, &budget).map_err(oracle_failure)?;
                    let _ = writeln!(out, "winnable l={}: {}", l, if won { "yes" } else { "no" });
                    (won, l)
                }
                None => {
                    let bound = max_steps.unwrap_or_else(|| p.default_max_path_length());
                    match minimal_l(&p, bound, &budget).map_err(oracle_failure)? {
                        Some(l) => {
                            let _ = writeln!(out, "winnable l<={}: yes", bound);
                            let _ = writeln!(out, "minimal l={}", l);
                            (true, l)
                        }
                        None => {
                            let _ = writeln!(out, "winnable l<={}: no", bound);
                            (false, 0)
                        }
                    }
                }
            };
            if let Some(path) = export_strategy {
                if won {
                    let table = extract_strategy(&p, won_at, &budget).map_err(oracle_failure)?;
                    write_file(&path, &table.format(&p))?;
                } else {
                    return Err(Failure::input("no winning strategy to export".to_string()));
                }
            }
            Ok(if won { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Trace {
            problem,
            controller,
            steps,
            adversary,
            seed,
        } => {
            let p = load_problem(&problem)?;
            let c = load_controller(&controller, &p)?;
            let sched = match adversary.as_str() {
                "worst" => match verify_controller(&p, &c, steps) {
                    VerificationVerdict::Counterexample(cx) => cx.schedule,
                    VerificationVerdict::Valid => AdversarySchedule::zeros(&p, steps),
                },
                "random" => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    AdversarySchedule {
                        moves: (0..steps)
                            .map(|_| {
                                p.obstacles
                                    .iter()
                                    .map(|o| rng.gen_range(0..o.primitives.len()))
                                    .collect()
                            })
                            .collect(),
                    }
                }
                other => match other.strip_prefix("file:") {
                    Some(path) => parse_schedule_file(&read_file(Path::new(path))?, &p, steps)?,
                    None => {
                        return Err(Failure::input(format!(
                            "unknown adversary {} (expected worst, random, or file:PATH)",
                            other
                        )))
                    }
                },
            };
            let outcome = run_episode(&p, &c, &sched, steps)
                .map_err(|e| Failure::input(format!("schedule: {}", e)))?;
            let text = render_trace(&outcome, &sched, &p);
            let _ = out.write_all(text.as_bytes());
            Ok(if motionsynth_core::semantics::trace_satisfies(&outcome) {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}

/// Run a parsed invocation; diagnostics go to `err`, results to `out`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.exit
        }
    }
}
