//! Reference execution semantics for the system: clamped move application,
//! swept-cell collision checking over one step, and whole-episode simulation.
//!
//! These functions are the ground truth the emitted specification must agree
//! with, and differential tests hold the two sides together. Two deliberate
//! quirks of the emitted encoding are preserved here:
//!
//! - moves whose net displacement would leave the workspace keep the agent in
//!   place (clamping), and a clamped move is a legal adversary choice;
//! - collision sweeps use raw scalar arithmetic without clamping, so a sweep
//!   cell may lie off the board or wrap across a row boundary.

use crate::ast::{eval_controller, ControllerAst};
use crate::problem::{
    decode_position, encode_position, MotionPrimitive, ProblemInstance, Workspace,
};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Scalar position of every agent: the arguments of the synthesized function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SystemState {
    pub robot: i64,
    pub obstacles: Vec<i64>,
}

impl SystemState {
    /// The initial state of an instance.
    pub fn initial(p: &ProblemInstance) -> SystemState {
        let w = &p.workspace;
        SystemState {
            robot: encode_position(p.robot.initial, w).expect("validated instance"),
            obstacles: p
                .obstacles
                .iter()
                .map(|o| encode_position(o.initial, w).expect("validated instance"))
                .collect(),
        }
    }
}

/// Pack a state into one integer for set membership and memoization.
/// Digits are base `cells`, robot least significant.
pub fn pack_state(s: &SystemState, w: &Workspace) -> u128 {
    let base = w.cells() as u128;
    let mut packed = s.robot as u128;
    let mut mul = base;
    for &o in &s.obstacles {
        packed += o as u128 * mul;
        mul *= base;
    }
    packed
}

/// Inverse of [`pack_state`] for an instance with `n` obstacles.
pub fn unpack_state(packed: u128, n: usize, w: &Workspace) -> SystemState {
    let base = w.cells() as u128;
    let mut rest = packed;
    let robot = (rest % base) as i64;
    rest /= base;
    let mut obstacles = Vec::with_capacity(n);
    for _ in 0..n {
        obstacles.push((rest % base) as i64);
        rest /= base;
    }
    SystemState { robot, obstacles }
}

/// One primitive index per (step, obstacle) pair: `moves[j][i]` is obstacle
/// `i`'s move during step `j+1`. Legality of every index against its
/// obstacle's primitive count is exactly the "allowable" side of the emitted
/// constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdversarySchedule {
    pub moves: Vec<Vec<usize>>,
}

impl AdversarySchedule {
    /// The all-zeros schedule of `l` rows.
    pub fn zeros(p: &ProblemInstance, l: usize) -> AdversarySchedule {
        AdversarySchedule {
            moves: alloc::vec![alloc::vec![0; p.obstacle_count()]; l],
        }
    }

    pub fn steps(&self) -> usize {
        self.moves.len()
    }

    /// Check shape (`l` rows of `n` indices) and index ranges.
    pub fn check(&self, p: &ProblemInstance, l: usize) -> Result<(), ScheduleError> {
        if self.moves.len() != l {
            return Err(ScheduleError(format!(
                "schedule has {} rows, expected {}",
                self.moves.len(),
                l
            )));
        }
        for (j, row) in self.moves.iter().enumerate() {
            if row.len() != p.obstacle_count() {
                return Err(ScheduleError(format!(
                    "schedule row {} has {} entries, expected {}",
                    j,
                    row.len(),
                    p.obstacle_count()
                )));
            }
            for (i, &k) in row.iter().enumerate() {
                let count = p.obstacles[i].primitives.len();
                if k >= count {
                    return Err(ScheduleError(format!(
                        "schedule row {} obstacle {}: move {} outside [0, {})",
                        j, i, k, count
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Malformed or illegal adversary schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleError(pub String);

impl fmt::Display for ScheduleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ScheduleError {}

/// First collision of an episode: during step `step` (1-based transition),
/// with obstacle `obstacle`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Collision {
    pub step: usize,
    pub obstacle: usize,
}

/// Everything a simulated episode produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpisodeOutcome {
    /// Robot positions `r_0..r_l`.
    pub robot_trace: Vec<i64>,
    /// Per-obstacle position lists, each `l+1` long.
    pub obstacle_traces: Vec<Vec<i64>>,
    /// Robot move chosen at each of the `l` steps.
    pub robot_moves: Vec<usize>,
    pub first_collision: Option<Collision>,
    pub reached_target: bool,
}

impl EpisodeOutcome {
    pub fn steps(&self) -> usize {
        self.robot_moves.len()
    }

    /// System state at step `j`.
    pub fn state_at(&self, j: usize) -> SystemState {
        SystemState {
            robot: self.robot_trace[j],
            obstacles: self.obstacle_traces.iter().map(|t| t[j]).collect(),
        }
    }
}

/// Apply a primitive's net displacement with clamping: when the displaced
/// coordinates would leave the workspace the agent stays in place.
pub fn apply_move(pos: i64, prim: &MotionPrimitive, w: &Workspace) -> i64 {
    let c = decode_position(pos, w).expect("position in range");
    let nx = c.x + prim.delta.dx;
    let ny = c.y + prim.delta.dy;
    if nx < 0 || nx >= w.width || ny < 0 || ny >= w.length {
        pos
    } else {
        pos + prim.delta.dy * w.width + prim.delta.dx
    }
}

/// Every scalar an agent may occupy while executing a primitive from `pos`:
/// the current cell, the final cell when the net displacement is nonzero, and
/// each intermediate cell. Raw offset arithmetic, no clamping.
pub fn swept_scalars(pos: i64, prim: &MotionPrimitive, w: &Workspace) -> Vec<i64> {
    let mut out = Vec::with_capacity(prim.sweep_size());
    out.push(pos);
    if !prim.delta.is_zero() {
        out.push(pos + prim.delta.dy * w.width + prim.delta.dx);
    }
    for d in &prim.intermediate {
        out.push(pos + d.dy * w.width + d.dx);
    }
    out
}

/// True iff the two agents' swept cells for this step are disjoint.
pub fn step_no_overlap(
    robot_pos: i64,
    robot_prim: &MotionPrimitive,
    obs_pos: i64,
    obs_prim: &MotionPrimitive,
    w: &Workspace,
) -> bool {
    let a = swept_scalars(robot_pos, robot_prim, w);
    let b = swept_scalars(obs_pos, obs_prim, w);
    a.iter().all(|x| b.iter().all(|y| x != y))
}

/// Advance every agent one step by its selected primitive.
pub fn system_step(
    s: &SystemState,
    robot_move: usize,
    obstacle_moves: &[usize],
    p: &ProblemInstance,
) -> SystemState {
    let w = &p.workspace;
    assert!(robot_move < p.move_count(), "robot move index out of range");
    assert_eq!(obstacle_moves.len(), p.obstacle_count());
    SystemState {
        robot: apply_move(s.robot, &p.robot.primitives[robot_move], w),
        obstacles: s
            .obstacles
            .iter()
            .zip(obstacle_moves)
            .zip(&p.obstacles)
            .map(|((&pos, &k), obs)| {
                assert!(k < obs.primitives.len(), "obstacle move index out of range");
                apply_move(pos, &obs.primitives[k], w)
            })
            .collect(),
    }
}

/// Simulate `l` steps of the closed loop: at each step the controller picks a
/// robot move from the current state and the schedule supplies the obstacle
/// moves. The first collision (scanning steps, then obstacles in order) is
/// recorded, but simulation continues so traces are complete.
pub fn run_episode(
    p: &ProblemInstance,
    c: &ControllerAst,
    sched: &AdversarySchedule,
    l: usize,
) -> Result<EpisodeOutcome, ScheduleError> {
    sched.check(p, l)?;
    let w = &p.workspace;
    let target = encode_position(p.robot.target, w).expect("validated instance");
    let mut state = SystemState::initial(p);
    let mut robot_trace = Vec::with_capacity(l + 1);
    let mut obstacle_traces: Vec<Vec<i64>> = state
        .obstacles
        .iter()
        .map(|&o| {
            let mut t = Vec::with_capacity(l + 1);
            t.push(o);
            t
        })
        .collect();
    robot_trace.push(state.robot);
    let mut robot_moves = Vec::with_capacity(l);
    let mut first_collision = None;
    for (j, row) in sched.moves.iter().enumerate() {
        let k = eval_controller(c, &state, w);
        robot_moves.push(k);
        if first_collision.is_none() {
            for (i, (&obs_pos, obs)) in state.obstacles.iter().zip(&p.obstacles).enumerate() {
                if !step_no_overlap(
                    state.robot,
                    &p.robot.primitives[k],
                    obs_pos,
                    &obs.primitives[row[i]],
                    w,
                ) {
                    first_collision = Some(Collision {
                        step: j + 1,
                        obstacle: i,
                    });
                    break;
                }
            }
        }
        state = system_step(&state, k, row, p);
        robot_trace.push(state.robot);
        for (t, &o) in obstacle_traces.iter_mut().zip(&state.obstacles) {
            t.push(o);
        }
    }
    let reached_target = *robot_trace.last().expect("nonempty trace") == target;
    Ok(EpisodeOutcome {
        robot_trace,
        obstacle_traces,
        robot_moves,
        first_collision,
        reached_target,
    })
}

/// The emitted constraint's success condition: correct final position and no
/// collision anywhere along the trace.
pub fn trace_satisfies(outcome: &EpisodeOutcome) -> bool {
    outcome.reached_target && outcome.first_collision.is_none()
}

/// Line-oriented trace format: one line per time point, then a RESULT line.
pub fn format_outcome(outcome: &EpisodeOutcome, p: &ProblemInstance) -> String {
    let w = &p.workspace;
    let mut out = String::new();
    let l = outcome.steps();
    for j in 0..=l {
        let rc = decode_position(outcome.robot_trace[j], w).expect("trace in range");
        let obstacles = outcome
            .obstacle_traces
            .iter()
            .map(|t| format!("{}", decode_position(t[j], w).expect("trace in range")))
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&format!("{}: robot={} obstacles=[{}]", j, rc, obstacles));
        if j < l {
            out.push_str(&format!(" move={}", outcome.robot_moves[j]));
        }
        out.push('\n');
    }
    out.push_str(&format!("RESULT: {}\n", outcome_result(outcome)));
    out
}

/// The RESULT token: `target`, `missed`, or `collision@j,obstacle=i`.
pub fn outcome_result(outcome: &EpisodeOutcome) -> String {
    match outcome.first_collision {
        Some(c) => format!("collision@{},obstacle={}", c.step, c.obstacle),
        None if outcome.reached_target => "target".into(),
        None => "missed".into(),
    }
}
