//! Independent brute-force authority for the exact-length reachability game:
//! backward induction over (step, system-state) pairs with full observation
//! and step-indexed strategies, plus a schedule-enumeration verifier.
//!
//! Nothing here shares search machinery with the synthesizer, so agreement
//! between the two is a meaningful check. Note the win condition is exact:
//! the robot must stand on the target at step `l` precisely, mirroring the
//! emitted constraint, so winnability is not monotone in `l`.

use crate::ast::ControllerAst;
use crate::problem::{decode_position, encode_position, ProblemInstance};
use crate::semantics::{
    pack_state, run_episode, step_no_overlap, system_step, trace_satisfies, unpack_state,
    AdversarySchedule, SystemState,
};
use crate::solver::{Counterexample, TupleIter, VerificationVerdict, ViolationCause};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Caps on the brute-force searches. Exceeding a cap is a distinct reported
/// outcome, never a silent approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Maximum total (state, step) entries across induction levels.
    pub max_state_steps: u64,
    /// Maximum number of schedules enumerated by the verifier.
    pub max_schedules: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_state_steps: 5_000_000,
            max_schedules: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    StateBudgetExceeded {
        limit: u64,
    },
    ScheduleBudgetExceeded {
        limit: u64,
    },
    /// Strategy extraction requested on an unwinnable instance.
    NotWinnable,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::StateBudgetExceeded { limit } => {
                write!(
                    f,
                    "state-space budget exceeded ({} state-step entries)",
                    limit
                )
            }
            OracleError::ScheduleBudgetExceeded { limit } => {
                write!(f, "schedule budget exceeded ({} schedules)", limit)
            }
            OracleError::NotWinnable => f.write_str("instance is not winnable at this length"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OracleError {}

/// Which states backward induction memoizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateSpace {
    /// Only states reachable from the initial state (default).
    Reachable,
    /// Every syntactically possible state at every step.
    Exhaustive,
}

/// Result of backward induction: per step, the sorted reachable states, a win
/// flag per state, and (below the final step) the least winning robot move.
#[derive(Debug, Clone)]
pub struct WinTable {
    steps: usize,
    levels: Vec<Vec<u128>>,
    win: Vec<Vec<bool>>,
    choice: Vec<Vec<Option<usize>>>,
}

impl WinTable {
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Win flag for a state at a step, when that state was memoized.
    pub fn win(&self, step: usize, state: &SystemState, p: &ProblemInstance) -> Option<bool> {
        let packed = pack_state(state, &p.workspace);
        let idx = self.levels[step].binary_search(&packed).ok()?;
        Some(self.win[step][idx])
    }

    fn initial_win(&self, p: &ProblemInstance) -> bool {
        self.win(0, &SystemState::initial(p), p)
            .expect("initial state is always memoized")
    }

    /// Total memoized (state, step) entries.
    pub fn entries(&self) -> u64 {
        self.levels.iter().map(|level| level.len() as u64).sum()
    }
}

fn forward_levels(
    p: &ProblemInstance,
    l: usize,
    budget: &OracleBudget,
    mode: StateSpace,
) -> Result<Vec<Vec<u128>>, OracleError> {
    let w = &p.workspace;
    let n = p.obstacle_count();
    let budget_err = Err(OracleError::StateBudgetExceeded {
        limit: budget.max_state_steps,
    });
    match mode {
        StateSpace::Exhaustive => {
            let cells = w.cells() as u128;
            let total = cells.checked_pow(n as u32 + 1);
            let per_level = match total {
                Some(t) if t <= budget.max_state_steps as u128 => t,
                _ => return budget_err,
            };
            if per_level * (l as u128 + 1) > budget.max_state_steps as u128 {
                return budget_err;
            }
            let all: Vec<u128> = (0..per_level).collect();
            Ok(vec![all; l + 1])
        }
        StateSpace::Reachable => {
            let mut levels = Vec::with_capacity(l + 1);
            let mut total: u64 = 1;
            levels.push(vec![pack_state(&SystemState::initial(p), w)]);
            for level in 0..l {
                let mut next: Vec<u128> = Vec::new();
                for &packed in &levels[level] {
                    let state = unpack_state(packed, n, w);
                    for k in 0..p.move_count() {
                        for tuple in TupleIter::new(p) {
                            next.push(pack_state(&system_step(&state, k, &tuple, p), w));
                        }
                    }
                }
                next.sort_unstable();
                next.dedup();
                total += next.len() as u64;
                if total > budget.max_state_steps {
                    return budget_err;
                }
                levels.push(next);
            }
            Ok(levels)
        }
    }
}

/// Backward induction over the exact-`l` game. `Win_l(s)` holds when the
/// robot stands on the target; `Win_j(s)` holds when some robot move avoids
/// every obstacle sweep and lands in `Win_{j+1}` for every adversary tuple.
pub fn win_table(
    p: &ProblemInstance,
    l: usize,
    budget: &OracleBudget,
    mode: StateSpace,
) -> Result<WinTable, OracleError> {
    let w = &p.workspace;
    let n = p.obstacle_count();
    let target = encode_position(p.robot.target, w).expect("validated instance");
    let levels = forward_levels(p, l, budget, mode)?;
    let mut win: Vec<Vec<bool>> = levels
        .iter()
        .map(|level| vec![false; level.len()])
        .collect();
    let mut choice: Vec<Vec<Option<usize>>> =
        levels.iter().map(|level| vec![None; level.len()]).collect();
    for (idx, &packed) in levels[l].iter().enumerate() {
        let state = unpack_state(packed, n, w);
        win[l][idx] = state.robot == target;
    }
    for j in (0..l).rev() {
        for idx in 0..levels[j].len() {
            let state = unpack_state(levels[j][idx], n, w);
            'moves: for k in 0..p.move_count() {
                let robot_prim = &p.robot.primitives[k];
                for tuple in TupleIter::new(p) {
                    for (i, (&obs_pos, obs)) in state.obstacles.iter().zip(&p.obstacles).enumerate()
                    {
                        if !step_no_overlap(
                            state.robot,
                            robot_prim,
                            obs_pos,
                            &obs.primitives[tuple[i]],
                            w,
                        ) {
                            continue 'moves;
                        }
                    }
                    let succ = pack_state(&system_step(&state, k, &tuple, p), w);
                    let succ_idx = levels[j + 1]
                        .binary_search(&succ)
                        .expect("successors are memoized");
                    if !win[j + 1][succ_idx] {
                        continue 'moves;
                    }
                }
                win[j][idx] = true;
                choice[j][idx] = Some(k);
                break;
            }
        }
    }
    Ok(WinTable {
        steps: l,
        levels,
        win,
        choice,
    })
}

/// Can the robot force reaching the target at exactly step `l`?
pub fn winnable(p: &ProblemInstance, l: usize, budget: &OracleBudget) -> Result<bool, OracleError> {
    Ok(win_table(p, l, budget, StateSpace::Reachable)?.initial_win(p))
}

/// Smallest winnable `l` in `[0, max_l]`, scanning linearly; exact-length
/// semantics make winnability non-monotone, so no bisection.
pub fn minimal_l(
    p: &ProblemInstance,
    max_l: usize,
    budget: &OracleBudget,
) -> Result<Option<usize>, OracleError> {
    for l in 0..=max_l {
        if winnable(p, l, budget)? {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// A step-indexed strategy: the least winning robot move per winning
/// (step, state) pair.
#[derive(Debug, Clone)]
pub struct StrategyTable {
    steps: usize,
    entries: BTreeMap<(usize, u128), usize>,
}

impl StrategyTable {
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, step: usize, state: &SystemState, p: &ProblemInstance) -> Option<usize> {
        self.entries
            .get(&(step, pack_state(state, &p.workspace)))
            .copied()
    }

    /// Line-per-entry export for inspection.
    pub fn format(&self, p: &ProblemInstance) -> String {
        let w = &p.workspace;
        let n = p.obstacle_count();
        let mut out = String::new();
        for (&(step, packed), &mv) in &self.entries {
            let state = unpack_state(packed, n, w);
            let robot = decode_position(state.robot, w).expect("memoized state in range");
            let obstacles = state
                .obstacles
                .iter()
                .map(|&o| {
                    format!(
                        "{}",
                        decode_position(o, w).expect("memoized state in range")
                    )
                })
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!(
                "step={} robot={} obstacles=[{}] move={}\n",
                step, robot, obstacles, mv
            ));
        }
        out
    }
}

/// Extract the winning strategy for an instance winnable at `l`.
pub fn extract_strategy(
    p: &ProblemInstance,
    l: usize,
    budget: &OracleBudget,
) -> Result<StrategyTable, OracleError> {
    let table = win_table(p, l, budget, StateSpace::Reachable)?;
    if !table.initial_win(p) {
        return Err(OracleError::NotWinnable);
    }
    let mut entries = BTreeMap::new();
    for j in 0..l {
        for (idx, &packed) in table.levels[j].iter().enumerate() {
            if table.win[j][idx] {
                if let Some(mv) = table.choice[j][idx] {
                    entries.insert((j, packed), mv);
                }
            }
        }
    }
    Ok(StrategyTable { steps: l, entries })
}

/// Replay a strategy table against a schedule; panics if the table has no
/// entry for a visited state, which cannot happen for legal schedules from a
/// winning initial state.
pub fn replay_strategy(
    p: &ProblemInstance,
    table: &StrategyTable,
    sched: &AdversarySchedule,
) -> crate::semantics::EpisodeOutcome {
    let l = table.steps();
    sched.check(p, l).expect("legal schedule");
    let w = &p.workspace;
    let target = encode_position(p.robot.target, w).expect("validated instance");
    let mut state = SystemState::initial(p);
    let mut robot_trace = vec![state.robot];
    let mut obstacle_traces: Vec<Vec<i64>> = state.obstacles.iter().map(|&o| vec![o]).collect();
    let mut robot_moves = Vec::with_capacity(l);
    let mut first_collision = None;
    for (j, row) in sched.moves.iter().enumerate() {
        let k = table
            .lookup(j, &state, p)
            .expect("strategy covers all states reached under legal schedules");
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
                    first_collision = Some(crate::semantics::Collision {
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
    crate::semantics::EpisodeOutcome {
        reached_target: *robot_trace.last().unwrap() == target,
        robot_trace,
        obstacle_traces,
        robot_moves,
        first_collision,
    }
}

/// Verdict plus how many schedules the enumeration examined.
#[derive(Debug, Clone)]
pub struct EnumerationVerdict {
    pub verdict: VerificationVerdict,
    pub schedules_checked: u64,
}

/// Verify a controller by enumerating every adversary schedule in
/// lexicographic order and replaying each episode. Independent of
/// [`crate::solver::verify_controller`]; the two must agree on every instance
/// within budget.
pub fn verify_by_enumeration(
    p: &ProblemInstance,
    c: &ControllerAst,
    l: usize,
    budget: &OracleBudget,
) -> Result<EnumerationVerdict, OracleError> {
    let per_step = TupleIter::count(p);
    let total = per_step.checked_pow(l as u32);
    match total {
        Some(t) if t <= budget.max_schedules as u128 => {}
        _ => {
            return Err(OracleError::ScheduleBudgetExceeded {
                limit: budget.max_schedules,
            })
        }
    }
    let bases: Vec<usize> = p.obstacles.iter().map(|o| o.primitives.len()).collect();
    let n = bases.len();
    let mut schedule = AdversarySchedule {
        moves: vec![vec![0; n]; l],
    };
    let mut checked: u64 = 0;
    loop {
        checked += 1;
        let outcome = run_episode(p, c, &schedule, l).expect("generated schedules are legal");
        if !trace_satisfies(&outcome) {
            let (step, cause) = match outcome.first_collision {
                Some(collision) => (
                    collision.step,
                    ViolationCause::Collision {
                        obstacle: collision.obstacle,
                    },
                ),
                None => (l, ViolationCause::WrongFinalPosition),
            };
            return Ok(EnumerationVerdict {
                verdict: VerificationVerdict::Counterexample(Counterexample {
                    schedule,
                    step,
                    cause,
                }),
                schedules_checked: checked,
            });
        }
        // Odometer increment over (step, obstacle) digits, last fastest.
        let mut carried = true;
        'outer: for j in (0..l).rev() {
            for i in (0..n).rev() {
                schedule.moves[j][i] += 1;
                if schedule.moves[j][i] < bases[i] {
                    carried = false;
                    break 'outer;
                }
                schedule.moves[j][i] = 0;
            }
        }
        if carried {
            return Ok(EnumerationVerdict {
                verdict: VerificationVerdict::Valid,
                schedules_checked: checked,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{Coord, Displacement, MotionPrimitive, RobotSpec, Workspace};
    use crate::testutil::{sample_5x7_updown, sample_controller};

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    #[test]
    fn sample_is_winnable_at_six_not_five() {
        let p = sample_5x7_updown();
        assert!(winnable(&p, 6, &budget()).unwrap());
        assert!(!winnable(&p, 5, &budget()).unwrap());
    }

    #[test]
    fn minimal_l_is_six_for_the_sample() {
        let p = sample_5x7_updown();
        assert_eq!(minimal_l(&p, 10, &budget()).unwrap(), Some(6));
    }

    #[test]
    fn trivial_zero_step_win() {
        let p = ProblemInstance {
            workspace: Workspace::new(2, 2),
            robot: RobotSpec {
                initial: Coord::new(0, 1),
                target: Coord::new(0, 1),
                primitives: alloc::vec![MotionPrimitive::of(Displacement::new(0, 0))],
            },
            obstacles: alloc::vec![],
            max_path_length: None,
        };
        assert!(winnable(&p, 0, &budget()).unwrap());
        assert_eq!(minimal_l(&p, 3, &budget()).unwrap(), Some(0));
    }

    #[test]
    fn forced_motion_parity() {
        // Only a right move: two cells right is winnable at exactly 2, and
        // not at 3 because the robot cannot idle.
        let p = ProblemInstance {
            workspace: Workspace::new(5, 1),
            robot: RobotSpec {
                initial: Coord::new(0, 0),
                target: Coord::new(2, 0),
                primitives: alloc::vec![MotionPrimitive::of(Displacement::new(1, 0))],
            },
            obstacles: alloc::vec![],
            max_path_length: None,
        };
        assert_eq!(minimal_l(&p, 5, &budget()).unwrap(), Some(2));
        assert!(!winnable(&p, 3, &budget()).unwrap());
        // With a single primitive the strategy can only pick it.
        let strategy = extract_strategy(&p, 2, &budget()).unwrap();
        assert_eq!(strategy.lookup(0, &SystemState::initial(&p), &p), Some(0));
    }

    #[test]
    fn reachable_and_exhaustive_agree_on_a_small_instance() {
        let p = ProblemInstance {
            workspace: Workspace::new(3, 3),
            robot: RobotSpec {
                initial: Coord::new(0, 0),
                target: Coord::new(2, 2),
                primitives: alloc::vec![
                    MotionPrimitive::of(Displacement::new(1, 0)),
                    MotionPrimitive::of(Displacement::new(0, 1)),
                ],
            },
            obstacles: alloc::vec![crate::problem::ObstacleSpec {
                initial: Coord::new(1, 1),
                primitives: alloc::vec![
                    MotionPrimitive::of(Displacement::new(0, 1)),
                    MotionPrimitive::of(Displacement::new(0, -1)),
                ],
            }],
            max_path_length: None,
        };
        for l in 0..=5 {
            let reachable = win_table(&p, l, &budget(), StateSpace::Reachable)
                .unwrap()
                .initial_win(&p);
            let exhaustive = win_table(&p, l, &budget(), StateSpace::Exhaustive)
                .unwrap()
                .initial_win(&p);
            assert_eq!(reachable, exhaustive, "disagreement at l={}", l);
        }
    }

    #[test]
    fn strategy_first_move_is_right_on_the_sample() {
        let p = sample_5x7_updown();
        let strategy = extract_strategy(&p, 6, &budget()).unwrap();
        assert_eq!(strategy.lookup(0, &SystemState::initial(&p), &p), Some(2));
    }

    #[test]
    fn strategy_on_unwinnable_instance_errors() {
        let p = sample_5x7_updown();
        assert_eq!(
            extract_strategy(&p, 5, &budget()).unwrap_err(),
            OracleError::NotWinnable
        );
    }

    #[test]
    fn strategy_export_lines() {
        let p = sample_5x7_updown();
        let strategy = extract_strategy(&p, 6, &budget()).unwrap();
        let text = strategy.format(&p);
        let first = text.lines().next().unwrap();
        assert_eq!(first, "step=0 robot=(1,1) obstacles=[(2,5),(3,5)] move=2");
        assert_eq!(text.lines().count(), strategy.len());
    }

    #[test]
    fn enumeration_accepts_the_sample_controller_over_all_4096_schedules() {
        let p = sample_5x7_updown();
        let result = verify_by_enumeration(&p, &sample_controller(), 6, &budget()).unwrap();
        assert!(result.verdict.is_valid());
        assert_eq!(result.schedules_checked, 4096);
    }

    #[test]
    fn enumeration_rejects_constant_up_on_the_first_schedule() {
        let p = sample_5x7_updown();
        let result = verify_by_enumeration(&p, &ControllerAst::Move(1), 6, &budget()).unwrap();
        match result.verdict {
            VerificationVerdict::Counterexample(cx) => {
                assert_eq!(cx.cause, ViolationCause::WrongFinalPosition);
            }
            VerificationVerdict::Valid => panic!("constant up cannot be valid"),
        }
        assert_eq!(result.schedules_checked, 1);
    }

    #[test]
    fn enumeration_of_zero_obstacles_checks_one_schedule() {
        let p = ProblemInstance {
            workspace: Workspace::new(3, 1),
            robot: RobotSpec {
                initial: Coord::new(0, 0),
                target: Coord::new(2, 0),
                primitives: alloc::vec![MotionPrimitive::of(Displacement::new(1, 0))],
            },
            obstacles: alloc::vec![],
            max_path_length: None,
        };
        let result = verify_by_enumeration(&p, &ControllerAst::Move(0), 2, &budget()).unwrap();
        assert!(result.verdict.is_valid());
        assert_eq!(result.schedules_checked, 1);
    }

    #[test]
    fn budgets_are_enforced() {
        let p = sample_5x7_updown();
        let tiny = OracleBudget {
            max_state_steps: 10,
            max_schedules: 10,
        };
        assert_eq!(
            winnable(&p, 6, &tiny).unwrap_err(),
            OracleError::StateBudgetExceeded { limit: 10 }
        );
        assert_eq!(
            verify_by_enumeration(&p, &sample_controller(), 6, &tiny).unwrap_err(),
            OracleError::ScheduleBudgetExceeded { limit: 10 }
        );
    }
}
