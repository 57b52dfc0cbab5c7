//! Built-in synthesizer: enumerates grammar-conformant controllers in a
//! canonical order, screens them against a growing pool of counterexample
//! schedules, fully verifies survivors by breadth-first search over reachable
//! system states, and iteratively deepens the path length until a controller
//! exists.
//!
//! Everything here is deterministic: the canonical candidate order is
//! (ascending depth, ascending node count, then lexicographic by grammar
//! production order), verification explores states in insertion order and
//! adversary tuples in lexicographic order, and screening can only skip
//! candidates that some stored schedule genuinely refutes — so the returned
//! controller is always the canonically first fully-valid candidate.

use crate::ast::{
    ast_depth, eval_controller, node_count, well_formed, BoolExpr, ControllerAst, IntExpr, Param,
};
use crate::problem::ProblemInstance;
use crate::semantics::{
    pack_state, run_episode, step_no_overlap, system_step, trace_satisfies, unpack_state,
    AdversarySchedule, SystemState,
};
use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Wall-clock budget for one synthesis attempt, injected by the caller; the
/// core never reads a clock itself.
pub trait Budget {
    /// Called at the start of each (path length, depth) attempt.
    fn begin_attempt(&mut self) {}
    fn expired(&self) -> bool;
    /// Total elapsed milliseconds across the whole solve, for stats.
    fn elapsed_ms(&self) -> u64 {
        0
    }
}

/// No limit, no clock.
#[derive(Debug, Clone, Copy, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn expired(&self) -> bool {
        false
    }
}

/// Work counters for a solve run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Candidates drawn from the enumeration across all path lengths.
    pub candidates: u64,
    /// Counterexample schedules generated by full verification.
    pub counterexamples: u64,
    pub elapsed_ms: u64,
}

/// A successful synthesis: the controller, the path length it wins at, and
/// the work it took. Construction re-verifies the controller.
#[derive(Debug, Clone)]
pub struct SynthesisResult {
    pub controller: ControllerAst,
    pub path_length: usize,
    pub stats: SolveStats,
}

/// Why a candidate controller fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationCause {
    Collision { obstacle: usize },
    WrongFinalPosition,
}

impl fmt::Display for ViolationCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationCause::Collision { obstacle } => {
                write!(f, "collision with obstacle {}", obstacle)
            }
            ViolationCause::WrongFinalPosition => f.write_str("wrong final position"),
        }
    }
}

/// A concrete adversary refutation: replaying `schedule` through
/// `run_episode` reproduces the violation at `step`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub schedule: AdversarySchedule,
    pub step: usize,
    pub cause: ViolationCause,
}

/// Verdict of full verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationVerdict {
    Valid,
    Counterexample(Counterexample),
}

impl VerificationVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, VerificationVerdict::Valid)
    }
}

/// Outcome of one CEGIS attempt at a fixed path length and depth.
#[derive(Debug, Clone)]
pub enum CegisOutcome {
    Solved(ControllerAst),
    /// Every candidate in the depth-bounded stream was refuted.
    ExhaustedCandidates,
    /// The attempt's wall-clock budget ran out first.
    BudgetExpired,
}

/// How one path length ended during iterative deepening.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttemptEnd {
    ExhaustedCandidates,
    BudgetExpired,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AttemptReport {
    pub path_length: usize,
    pub end: AttemptEnd,
}

/// Final outcome of [`solve`].
#[derive(Debug, Clone)]
pub enum SolveOutcome {
    Solved(SynthesisResult),
    /// No controller up to the given bounds; one report per path length
    /// tried. A budget-expired report means infeasibility was not certified.
    Infeasible {
        max_depth: u32,
        attempts: Vec<AttemptReport>,
        stats: SolveStats,
    },
}

impl SolveOutcome {
    pub fn budget_expired(&self) -> bool {
        match self {
            SolveOutcome::Solved(_) => false,
            SolveOutcome::Infeasible { attempts, .. } => {
                attempts.iter().any(|a| a.end == AttemptEnd::BudgetExpired)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Canonical enumeration
// ---------------------------------------------------------------------------

fn param_rank(p: Param) -> usize {
    match p {
        Param::Robot => 0,
        Param::Obstacle(i) => 1 + i,
    }
}

// Production ranks follow the grammar's written order: accessors over the
// parameters (x before y per parameter), then +, then -, then the constants
// ascending from -1.
fn int_rank(e: &IntExpr) -> (usize, i64) {
    match e {
        IntExpr::GetX(p) => (2 * param_rank(*p), 0),
        IntExpr::GetY(p) => (2 * param_rank(*p) + 1, 0),
        IntExpr::Add(..) => (usize::MAX - 3, 0),
        IntExpr::Sub(..) => (usize::MAX - 2, 0),
        IntExpr::Const(c) => (usize::MAX - 1, *c),
    }
}

fn cmp_int(a: &IntExpr, b: &IntExpr) -> Ordering {
    int_rank(a).cmp(&int_rank(b)).then_with(|| match (a, b) {
        (IntExpr::Add(a1, a2), IntExpr::Add(b1, b2))
        | (IntExpr::Sub(a1, a2), IntExpr::Sub(b1, b2)) => {
            cmp_int(a1, b1).then_with(|| cmp_int(a2, b2))
        }
        _ => Ordering::Equal,
    })
}

fn bool_rank(e: &BoolExpr) -> usize {
    match e {
        BoolExpr::And(..) => 0,
        BoolExpr::Or(..) => 1,
        BoolExpr::Not(..) => 2,
        BoolExpr::Le(..) => 3,
        BoolExpr::Eq(..) => 4,
    }
}

fn cmp_bool(a: &BoolExpr, b: &BoolExpr) -> Ordering {
    bool_rank(a).cmp(&bool_rank(b)).then_with(|| match (a, b) {
        (BoolExpr::And(a1, a2), BoolExpr::And(b1, b2))
        | (BoolExpr::Or(a1, a2), BoolExpr::Or(b1, b2)) => {
            cmp_bool(a1, b1).then_with(|| cmp_bool(a2, b2))
        }
        (BoolExpr::Not(a1), BoolExpr::Not(b1)) => cmp_bool(a1, b1),
        (BoolExpr::Le(a1, a2), BoolExpr::Le(b1, b2))
        | (BoolExpr::Eq(a1, a2), BoolExpr::Eq(b1, b2)) => {
            cmp_int(a1, b1).then_with(|| cmp_int(a2, b2))
        }
        _ => Ordering::Equal,
    })
}

fn cmp_start(a: &ControllerAst, b: &ControllerAst) -> Ordering {
    match (a, b) {
        (ControllerAst::Move(x), ControllerAst::Move(y)) => x.cmp(y),
        (ControllerAst::Move(_), ControllerAst::Ite(..)) => Ordering::Less,
        (ControllerAst::Ite(..), ControllerAst::Move(_)) => Ordering::Greater,
        (ControllerAst::Ite(c1, t1, e1), ControllerAst::Ite(c2, t2, e2)) => cmp_bool(c1, c2)
            .then_with(|| cmp_start(t1, t2))
            .then_with(|| cmp_start(e1, e2)),
    }
}

/// The canonical total order on candidates: ascending depth, then ascending
/// node count, then lexicographic by production order.
pub fn canonical_cmp(a: &ControllerAst, b: &ControllerAst) -> Ordering {
    ast_depth(a)
        .cmp(&ast_depth(b))
        .then_with(|| node_count(a).cmp(&node_count(b)))
        .then_with(|| cmp_start(a, b))
}

/// Integer terms grouped by exact depth (index 0 holds depth 2).
fn int_terms_by_depth(p: &ProblemInstance, max_depth: u32) -> Vec<Vec<IntExpr>> {
    let n = p.obstacle_count();
    let d = p.workspace.max_dim();
    let mut by_depth: Vec<Vec<IntExpr>> = Vec::new();
    if max_depth < 2 {
        return by_depth;
    }
    let mut atoms = Vec::new();
    atoms.push(IntExpr::GetX(Param::Robot));
    atoms.push(IntExpr::GetY(Param::Robot));
    for i in 0..n {
        atoms.push(IntExpr::GetX(Param::Obstacle(i)));
        atoms.push(IntExpr::GetY(Param::Obstacle(i)));
    }
    for c in -1..d {
        atoms.push(IntExpr::Const(c));
    }
    by_depth.push(atoms);
    for depth in 3..=max_depth {
        let mut level = Vec::new();
        let child_max = depth - 1;
        for a_depth in 2..=child_max {
            for b_depth in 2..=child_max {
                if a_depth.max(b_depth) != child_max {
                    continue;
                }
                let lhs = &by_depth[(a_depth - 2) as usize];
                let rhs = &by_depth[(b_depth - 2) as usize];
                for a in lhs {
                    for b in rhs {
                        level.push(IntExpr::Add(Box::new(a.clone()), Box::new(b.clone())));
                        level.push(IntExpr::Sub(Box::new(a.clone()), Box::new(b.clone())));
                    }
                }
            }
        }
        by_depth.push(level);
    }
    by_depth
}

/// Boolean terms grouped by exact depth (index 0 holds depth 3).
fn bool_terms_by_depth(ints: &[Vec<IntExpr>], max_depth: u32) -> Vec<Vec<BoolExpr>> {
    let mut by_depth: Vec<Vec<BoolExpr>> = Vec::new();
    for depth in 3..=max_depth {
        let mut level = Vec::new();
        let child_max = depth - 1;
        // Comparisons over integer terms.
        for a_depth in 2..=child_max {
            for b_depth in 2..=child_max {
                if a_depth.max(b_depth) != child_max {
                    continue;
                }
                let lhs = &ints[(a_depth - 2) as usize];
                let rhs = &ints[(b_depth - 2) as usize];
                for a in lhs {
                    for b in rhs {
                        level.push(BoolExpr::Le(Box::new(a.clone()), Box::new(b.clone())));
                        level.push(BoolExpr::Eq(Box::new(a.clone()), Box::new(b.clone())));
                    }
                }
            }
        }
        // Connectives over boolean terms (depth >= 4 only).
        for a_depth in 3..=child_max {
            if a_depth == child_max {
                let inner: Vec<BoolExpr> = by_depth[(a_depth - 3) as usize].clone();
                for a in &inner {
                    level.push(BoolExpr::Not(Box::new(a.clone())));
                }
            }
            for b_depth in 3..=child_max {
                if a_depth.max(b_depth) != child_max {
                    continue;
                }
                let lhs = by_depth[(a_depth - 3) as usize].clone();
                let rhs = by_depth[(b_depth - 3) as usize].clone();
                for a in &lhs {
                    for b in &rhs {
                        level.push(BoolExpr::And(Box::new(a.clone()), Box::new(b.clone())));
                        level.push(BoolExpr::Or(Box::new(a.clone()), Box::new(b.clone())));
                    }
                }
            }
        }
        by_depth.push(level);
    }
    by_depth
}

/// Every well-formed controller of depth at most `max_depth`, exactly once,
/// in canonical order.
pub fn enumerate_candidates(p: &ProblemInstance, max_depth: u32) -> Vec<ControllerAst> {
    let m = p.move_count();
    let mut starts_by_depth: Vec<Vec<ControllerAst>> = vec![Vec::new(); (max_depth + 1) as usize];
    if max_depth >= 1 {
        starts_by_depth[1] = (0..m).map(ControllerAst::Move).collect();
    }
    let ints = int_terms_by_depth(p, max_depth.saturating_sub(2));
    let bools = bool_terms_by_depth(&ints, max_depth.saturating_sub(1));
    for depth in 4..=max_depth {
        let child_max = depth - 1;
        let mut level = Vec::new();
        let conds_le: Vec<&BoolExpr> = (3..=child_max)
            .flat_map(|bd| bools[(bd - 3) as usize].iter())
            .collect();
        let branches: Vec<ControllerAst> = (1..=child_max)
            .flat_map(|sd| starts_by_depth[sd as usize].iter().cloned())
            .collect();
        for cond in conds_le {
            let cd = crate::ast::bool_depth(cond);
            for t in &branches {
                let td = ast_depth(t);
                for e in &branches {
                    let ed = ast_depth(e);
                    if cd.max(td).max(ed) == child_max {
                        level.push(ControllerAst::Ite(
                            Box::new(cond.clone()),
                            Box::new(t.clone()),
                            Box::new(e.clone()),
                        ));
                    }
                }
            }
        }
        starts_by_depth[depth as usize] = level;
    }
    let mut all: Vec<ControllerAst> = starts_by_depth.into_iter().flatten().collect();
    all.sort_by(canonical_cmp);
    #[cfg(debug_assertions)]
    for c in &all {
        let d = ast_depth(c);
        debug_assert!(d != 2 && d != 3, "no complete program can measure 2 or 3");
        debug_assert!(well_formed(c, p).is_ok());
    }
    all
}

// ---------------------------------------------------------------------------
// Full verification by reachable-state search
// ---------------------------------------------------------------------------

/// Iterator over all obstacle move-index tuples in lexicographic order.
pub(crate) struct TupleIter {
    bases: Vec<usize>,
    current: Vec<usize>,
    done: bool,
}

impl TupleIter {
    pub(crate) fn new(p: &ProblemInstance) -> TupleIter {
        TupleIter {
            bases: p.obstacles.iter().map(|o| o.primitives.len()).collect(),
            current: vec![0; p.obstacle_count()],
            done: false,
        }
    }

    pub(crate) fn count(p: &ProblemInstance) -> u128 {
        p.obstacles
            .iter()
            .map(|o| o.primitives.len() as u128)
            .product()
    }
}

impl Iterator for TupleIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let item = self.current.clone();
        // Odometer increment, last obstacle fastest.
        let mut i = self.bases.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.current[i] += 1;
            if self.current[i] < self.bases[i] {
                break;
            }
            self.current[i] = 0;
        }
        Some(item)
    }
}

/// Tuple index under the same lexicographic numbering as [`TupleIter`].
fn tuple_from_index(mut index: u64, p: &ProblemInstance) -> Vec<usize> {
    let mut tuple = vec![0usize; p.obstacle_count()];
    for i in (0..p.obstacle_count()).rev() {
        let base = p.obstacles[i].primitives.len() as u64;
        tuple[i] = (index % base) as usize;
        index /= base;
    }
    tuple
}

struct LevelEntry {
    packed: u128,
    /// Index of the predecessor in the previous level.
    pred: u32,
    /// Lexicographic index of the obstacle tuple taken from the predecessor.
    via_tuple: u64,
}

/// Reconstruct the schedule leading to `levels[level][entry]`, append
/// `extra_tuple` if given, and pad with zero rows up to `l`.
fn reconstruct_schedule(
    p: &ProblemInstance,
    levels: &[Vec<LevelEntry>],
    mut level: usize,
    mut entry: usize,
    extra_tuple: Option<u64>,
    l: usize,
) -> AdversarySchedule {
    let mut rows = Vec::new();
    if let Some(t) = extra_tuple {
        rows.push(tuple_from_index(t, p));
    }
    while level > 0 {
        let e = &levels[level][entry];
        rows.push(tuple_from_index(e.via_tuple, p));
        entry = e.pred as usize;
        level -= 1;
    }
    rows.reverse();
    while rows.len() < l {
        rows.push(vec![0; p.obstacle_count()]);
    }
    AdversarySchedule { moves: rows }
}

/// Exhaustively verify a controller for the exact-`l` game by breadth-first
/// search over reachable system states, branching only on obstacle move
/// tuples. Returns the shortest-step counterexample when one exists.
pub fn verify_controller(p: &ProblemInstance, c: &ControllerAst, l: usize) -> VerificationVerdict {
    let w = &p.workspace;
    let target = crate::problem::encode_position(p.robot.target, w).expect("validated instance");
    let initial = SystemState::initial(p);
    let mut levels: Vec<Vec<LevelEntry>> = Vec::with_capacity(l + 1);
    levels.push(vec![LevelEntry {
        packed: pack_state(&initial, w),
        pred: 0,
        via_tuple: 0,
    }]);
    let n = p.obstacle_count();
    for level in 0..l {
        let mut next: Vec<LevelEntry> = Vec::new();
        let mut seen: BTreeSet<u128> = BTreeSet::new();
        for entry_idx in 0..levels[level].len() {
            let state = unpack_state(levels[level][entry_idx].packed, n, w);
            let k = eval_controller(c, &state, w);
            let robot_prim = &p.robot.primitives[k];
            for (tuple_idx, tuple) in (0u64..).zip(TupleIter::new(p)) {
                for (i, (&obs_pos, obs)) in state.obstacles.iter().zip(&p.obstacles).enumerate() {
                    if !step_no_overlap(
                        state.robot,
                        robot_prim,
                        obs_pos,
                        &obs.primitives[tuple[i]],
                        w,
                    ) {
                        let schedule =
                            reconstruct_schedule(p, &levels, level, entry_idx, Some(tuple_idx), l);
                        return VerificationVerdict::Counterexample(Counterexample {
                            schedule,
                            step: level + 1,
                            cause: ViolationCause::Collision { obstacle: i },
                        });
                    }
                }
                let succ = system_step(&state, k, &tuple, p);
                let packed = pack_state(&succ, w);
                if seen.insert(packed) {
                    next.push(LevelEntry {
                        packed,
                        pred: entry_idx as u32,
                        via_tuple: tuple_idx,
                    });
                }
            }
        }
        levels.push(next);
    }
    for (entry_idx, entry) in levels[l].iter().enumerate() {
        let state = unpack_state(entry.packed, n, w);
        if state.robot != target {
            let schedule = reconstruct_schedule(p, &levels, l, entry_idx, None, l);
            return VerificationVerdict::Counterexample(Counterexample {
                schedule,
                step: l,
                cause: ViolationCause::WrongFinalPosition,
            });
        }
    }
    VerificationVerdict::Valid
}

// ---------------------------------------------------------------------------
// CEGIS and iterative deepening
// ---------------------------------------------------------------------------

fn refuted_by(p: &ProblemInstance, c: &ControllerAst, sched: &AdversarySchedule, l: usize) -> bool {
    let outcome = run_episode(p, c, sched, l).expect("pool schedules are well-shaped");
    !trace_satisfies(&outcome)
}

/// One CEGIS attempt at fixed path length and depth bound: walk candidates in
/// canonical order, screen each against the counterexample pool, fully verify
/// the survivors, and grow the pool from failed verifications. The first
/// fully valid candidate is returned; screening only ever removes genuinely
/// refuted candidates, so the answer equals what verification-only search
/// would return.
pub fn cegis_solve(
    p: &ProblemInstance,
    l: usize,
    max_depth: u32,
    budget: &mut dyn Budget,
    stats: &mut SolveStats,
) -> CegisOutcome {
    budget.begin_attempt();
    let candidates = enumerate_candidates(p, max_depth);
    let mut pool: Vec<AdversarySchedule> = Vec::new();
    for c in &candidates {
        if budget.expired() {
            return CegisOutcome::BudgetExpired;
        }
        stats.candidates += 1;
        if pool.iter().any(|sched| refuted_by(p, c, sched, l)) {
            continue;
        }
        match verify_controller(p, c, l) {
            VerificationVerdict::Valid => return CegisOutcome::Solved(c.clone()),
            VerificationVerdict::Counterexample(cx) => {
                debug_assert!(refuted_by(p, c, &cx.schedule, l));
                stats.counterexamples += 1;
                pool.push(cx.schedule);
            }
        }
    }
    CegisOutcome::ExhaustedCandidates
}

/// Iteratively deepen the path length from `start_steps` to `max_steps`,
/// running one CEGIS attempt per length; the first success fixes the minimal
/// length within the searched range.
pub fn solve_from(
    p: &ProblemInstance,
    start_steps: usize,
    max_steps: usize,
    max_depth: u32,
    budget: &mut dyn Budget,
) -> SolveOutcome {
    let mut stats = SolveStats::default();
    let mut attempts = Vec::new();
    for l in start_steps..=max_steps {
        match cegis_solve(p, l, max_depth, budget, &mut stats) {
            CegisOutcome::Solved(controller) => {
                assert!(
                    verify_controller(p, &controller, l).is_valid(),
                    "returned controller must re-verify"
                );
                stats.elapsed_ms = budget.elapsed_ms();
                return SolveOutcome::Solved(SynthesisResult {
                    controller,
                    path_length: l,
                    stats,
                });
            }
            CegisOutcome::ExhaustedCandidates => attempts.push(AttemptReport {
                path_length: l,
                end: AttemptEnd::ExhaustedCandidates,
            }),
            CegisOutcome::BudgetExpired => attempts.push(AttemptReport {
                path_length: l,
                end: AttemptEnd::BudgetExpired,
            }),
        }
    }
    stats.elapsed_ms = budget.elapsed_ms();
    SolveOutcome::Infeasible {
        max_depth,
        attempts,
        stats,
    }
}

/// Search path lengths `1..=max_steps` for the shortest synthesizable plan.
pub fn solve(
    p: &ProblemInstance,
    max_steps: usize,
    max_depth: u32,
    budget: &mut dyn Budget,
) -> SolveOutcome {
    solve_from(p, 1, max_steps, max_depth, budget)
}
