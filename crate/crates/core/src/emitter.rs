//! Generation of complete SyGuS-IF specifications for a problem instance and
//! path length, plus a small evaluator over the emitted defined functions for
//! differential testing.
//!
//! The target dialect is SyGuS-IF v1 with typed let bindings. Emission is a
//! pure function of `(instance, steps, annotate)`: identical inputs produce
//! byte-identical text. Normative equality for generated documents is the
//! comment- and whitespace-insensitive token stream ([`crate::sexpr::token_eq`]).

use crate::problem::{encode_position, Displacement, MotionPrimitive, ProblemInstance, Workspace};
use crate::sexpr::{self, Sexp};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Which of the two synth-fun dialects to emit.
///
/// Generated documents name the parameters `currPoint`, `o0`, `o1`, ... and
/// list the y accessor before the x accessor; the standalone presentation of
/// the same grammar names them `p-r`, `p-o0`, ... with x first. The two are
/// interchangeable for every solver; only the full-document form is used by
/// [`emit_spec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrammarStyle {
    Standalone,
    Document,
}

/// A complete emitted specification together with the parsed table of its
/// defined functions.
#[derive(Debug, Clone)]
pub struct SygusDocument {
    text: String,
    functions: BTreeMap<String, DefinedFunction>,
}

/// One `define-fun` from the document.
#[derive(Debug, Clone)]
pub struct DefinedFunction {
    pub params: Vec<String>,
    pub body: Sexp,
}

impl SygusDocument {
    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn function(&self, name: &str) -> Option<&DefinedFunction> {
        self.functions.get(name)
    }

    pub fn function_names(&self) -> impl Iterator<Item = &str> {
        self.functions.keys().map(String::as_str)
    }
}

/// Why a specification could not be emitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmitError {
    InvalidInstance(Vec<String>),
    /// `steps = 0` is only meaningful when the robot starts on the target.
    ZeroStepsAwayFromTarget,
    SelfParse(sexpr::ParseError),
}

impl fmt::Display for EmitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmitError::InvalidInstance(violations) => {
                write!(f, "invalid instance: {}", violations.join("; "))
            }
            EmitError::ZeroStepsAwayFromTarget => {
                f.write_str("steps = 0 requires the robot to start on the target")
            }
            EmitError::SelfParse(e) => write!(f, "emitted text failed to parse: {}", e),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EmitError {}

fn scalar_offset(d: Displacement, w: &Workspace) -> i64 {
    d.dy * w.width + d.dx
}

/// Right-nested binary fold: `[a, b, c]` becomes `(op a (op b c))`.
fn fold_right(op: &str, items: &[String]) -> String {
    match items {
        [] => panic!("empty {} fold", op),
        [only] => only.clone(),
        [head, rest @ ..] => format!("({} {} {})", op, head, fold_right(op, rest)),
    }
}

fn get_y_text(w: &Workspace) -> String {
    let mut body = format!("{}", w.length - 1);
    for y in (0..w.length - 1).rev() {
        body = format!("(ite (< currPoint {}) {} {})", w.width * (y + 1), y, body);
    }
    format!("(define-fun get-y ((currPoint Int)) Int \n{})", body)
}

fn get_x_text(w: &Workspace) -> String {
    format!(
        "(define-fun get-x ((currPoint Int)) Int\n\t(- currPoint (* (get-y currPoint) {})))",
        w.width
    )
}

/// The clamp guard for one displacement: out-of-range test per moving axis.
fn clamp_guard(d: Displacement, w: &Workspace) -> String {
    let mut clauses = Vec::new();
    if d.dx != 0 {
        clauses.push(format!("(< (+ (get-x currPoint) {}) 0)", d.dx));
        clauses.push(format!("(>= (+ (get-x currPoint) {}) {})", d.dx, w.width));
    }
    if d.dy != 0 {
        clauses.push(format!("(< (+ (get-y currPoint) {}) 0)", d.dy));
        clauses.push(format!("(>= (+ (get-y currPoint) {}) {})", d.dy, w.length));
    }
    fold_right("or", &clauses)
}

fn move_branch(prim: &MotionPrimitive, w: &Workspace) -> String {
    if prim.delta.is_zero() {
        "currPoint".to_string()
    } else {
        format!(
            "(ite {} currPoint (+ currPoint {}))",
            clamp_guard(prim.delta, w),
            scalar_offset(prim.delta, w)
        )
    }
}

/// A clamped move interpreter: nested ite over move indices, out-of-range
/// indices fall through to the current position.
fn interpret_move_text(name: &str, prims: &[MotionPrimitive], w: &Workspace) -> String {
    let mut body = "currPoint".to_string();
    for (k, prim) in prims.iter().enumerate().rev() {
        let sep = if k + 1 == prims.len() { "\n" } else { " \n" };
        body = format!(
            "(ite (= move {}) {}{}{})",
            k,
            move_branch(prim, w),
            sep,
            body
        );
    }
    format!(
        "(define-fun {} (( currPoint Int ) ( move Int)) Int\n{})",
        name, body
    )
}

fn combination_name(a: usize, b: usize) -> String {
    format!("no-overlap-one-move-combination-{}-{}", a, b)
}

/// Pairwise-disequality helper for sweep sizes `(a, b)`: robot points
/// `p0..p{a-1}`, obstacle points `p{a}..p{a+b-1}`.
fn combination_text(a: usize, b: usize) -> String {
    let params = (0..a + b)
        .map(|i| format!("(p{} Int)", i))
        .collect::<Vec<_>>()
        .join(" ");
    let mut disequalities = Vec::with_capacity(a * b);
    for r in 0..a {
        for o in 0..b {
            disequalities.push(format!("(not (= p{} p{}))", r, a + o));
        }
    }
    format!(
        "(define-fun {} ({}) Bool\n\t{})",
        combination_name(a, b),
        params,
        fold_right("and", &disequalities)
    )
}

/// The emitted sweep of a primitive: the current point plus one raw-offset
/// term per displacement, current and final always listed.
fn sweep_args(var: &str, prim: &MotionPrimitive, w: &Workspace) -> Vec<String> {
    let mut out = Vec::with_capacity(prim.sweep_size());
    out.push(var.to_string());
    let mut push = |d: Displacement| {
        out.push(format!("(+ (+ {} {}) {})", var, d.dx, d.dy * w.width));
    };
    push(prim.delta);
    for &d in &prim.intermediate {
        push(d);
    }
    out
}

fn no_overlaps_text(
    index: usize,
    robot_prims: &[MotionPrimitive],
    obs_prims: &[MotionPrimitive],
    w: &Workspace,
) -> String {
    let mut robot_arms = Vec::new();
    for (k, robot_prim) in robot_prims.iter().enumerate() {
        let robot_args = sweep_args("currPoint", robot_prim, w).join(" ");
        let mut obstacle_chain = "0".to_string();
        for (j, obs_prim) in obs_prims.iter().enumerate().rev() {
            let obs_args = sweep_args("obstacleCurrPoint", obs_prim, w).join(" ");
            let call = format!(
                "(ite ({} {} {}) 1 0)",
                combination_name(robot_prim.sweep_size(), obs_prim.sweep_size()),
                robot_args,
                obs_args
            );
            let sep = if j + 1 == obs_prims.len() {
                " "
            } else {
                "\n\t\t"
            };
            obstacle_chain = format!(
                "(ite (= obstacleMove {}) {}{}{})",
                j, call, sep, obstacle_chain
            );
        }
        robot_arms.push((k, obstacle_chain));
    }
    let mut body = "0".to_string();
    for (k, chain) in robot_arms.into_iter().rev() {
        let sep = if k + 1 == robot_prims.len() {
            " "
        } else {
            "\n\t"
        };
        body = format!("(ite (= move {}) \n\t\t{}{}{})", k, chain, sep, body);
    }
    format!(
        "(define-fun no-overlaps-{} (( currPoint Int ) ( move Int) (obstacleCurrPoint Int) (obstacleMove Int)) Bool\n\t(= 1\n\t{}))",
        index, body
    )
}

fn no_overlaps_one_step_text(n: usize) -> String {
    let mut params = alloc::vec!["(currPoint Int)".to_string(), "(move Int)".to_string()];
    for i in 0..n {
        params.push(format!("(o{}pos Int)", i));
        params.push(format!("(o{}move Int)", i));
    }
    let calls: Vec<String> = (0..n)
        .map(|i| format!("(no-overlaps-{} currPoint move o{}pos o{}move)", i, i, i))
        .collect();
    format!(
        "(define-fun no-overlaps-one-step ({}) Bool\n\t{})",
        params.join(" "),
        fold_right("and", &calls)
    )
}

/// Helper definitions for an instance: coordinate decoders, one clamped move
/// interpreter for the robot and one per obstacle, the disequality helper for
/// each distinct sweep-size pair, per-obstacle overlap checks, and the
/// one-step conjunction across obstacles.
pub fn emit_helpers(p: &ProblemInstance) -> String {
    let w = &p.workspace;
    let mut parts = Vec::new();
    parts.push(get_y_text(w));
    parts.push(get_x_text(w));
    parts.push(interpret_move_text(
        "interpret-move",
        &p.robot.primitives,
        w,
    ));
    for (i, obs) in p.obstacles.iter().enumerate() {
        parts.push(interpret_move_text(
            &format!("interpret-move-obstacle-{}", i),
            &obs.primitives,
            w,
        ));
    }
    if !p.obstacles.is_empty() {
        let mut pairs = BTreeSet::new();
        for robot_prim in &p.robot.primitives {
            for obs in &p.obstacles {
                for obs_prim in &obs.primitives {
                    pairs.insert((robot_prim.sweep_size(), obs_prim.sweep_size()));
                }
            }
        }
        for (a, b) in pairs {
            parts.push(combination_text(a, b));
        }
        for (i, obs) in p.obstacles.iter().enumerate() {
            parts.push(no_overlaps_text(i, &p.robot.primitives, &obs.primitives, w));
        }
        parts.push(no_overlaps_one_step_text(p.obstacles.len()));
    }
    parts.join("\n\n")
}

/// One universally quantified Int variable per (obstacle, step).
pub fn emit_declare_vars(p: &ProblemInstance, steps: usize) -> String {
    let mut out = String::new();
    for i in 0..p.obstacles.len() {
        for j in 0..steps {
            out.push_str(&format!("(declare-var o{}-mov{} Int)\n", i, j));
        }
    }
    out
}

fn move_comment(d: Displacement) -> String {
    match (d.dx, d.dy) {
        (0, 0) => "no move".to_string(),
        (0, 1) => "up".to_string(),
        (1, 0) => "right".to_string(),
        (0, -1) => "down".to_string(),
        (-1, 0) => "left".to_string(),
        (dx, dy) => format!("dx={},dy={}", dx, dy),
    }
}

fn ordinal(i: usize) -> String {
    match i {
        0 => "first".to_string(),
        1 => "second".to_string(),
        2 => "third".to_string(),
        _ => format!("{}th", i + 1),
    }
}

/// The synth-fun for an instance: `n+1` Int parameters, one MoveId production
/// per robot primitive, accessors over every parameter plus binary `+`/`-`
/// and the constants `-1..d-1` in CondInt, and the fixed StartBool shape.
pub fn emit_grammar(p: &ProblemInstance, style: GrammarStyle, annotate: bool) -> String {
    let n = p.obstacles.len();
    let d = p.workspace.max_dim();
    let params: Vec<String> = match style {
        GrammarStyle::Standalone => crate::ast::param_names(n),
        GrammarStyle::Document => {
            let mut v = alloc::vec!["currPoint".to_string()];
            v.extend((0..n).map(|i| format!("o{}", i)));
            v
        }
    };
    let header = params
        .iter()
        .map(|name| format!("({} Int)", name))
        .collect::<Vec<_>>()
        .join(" ");

    let mut move_ids = Vec::new();
    for (k, prim) in p.robot.primitives.iter().enumerate() {
        let comment = if annotate && style == GrammarStyle::Standalone {
            format!(" ;corresponds to {}", move_comment(prim.delta))
        } else {
            String::new()
        };
        move_ids.push(format!("\t\t{}{}", k, comment));
    }

    let mut cond_ints = Vec::new();
    for (pi, name) in params.iter().enumerate() {
        let accessors: [&str; 2] = match style {
            GrammarStyle::Standalone => ["x", "y"],
            GrammarStyle::Document => ["y", "x"],
        };
        for axis in accessors {
            let comment = if annotate {
                match (style, pi) {
                    (GrammarStyle::Document, 0) => format!(" ;{} coord", axis),
                    (GrammarStyle::Standalone, 0) => format!(" ;{} coord of robot", axis),
                    (GrammarStyle::Standalone, 1) => {
                        format!(" ;{} coord of {} obstacle", axis, ordinal(pi - 1))
                    }
                    _ => String::new(),
                }
            } else {
                String::new()
            };
            cond_ints.push(format!("\t\t(get-{} {}){}", axis, name, comment));
        }
    }
    cond_ints.push("\t\t(+ CondInt CondInt)".to_string());
    cond_ints.push("\t\t(- CondInt CondInt)".to_string());
    for c in -1..d {
        let comment = if annotate && style == GrammarStyle::Standalone && c == 0 {
            format!(" ;0-{} are possible coordinates in space", d - 1)
        } else {
            String::new()
        };
        cond_ints.push(format!("\t\t{}{}", c, comment));
    }

    let start_bool = "\t(StartBool Bool ((and StartBool StartBool)\n\t\t(or  StartBool StartBool)\n\t\t(not StartBool)\n\t\t(<=  CondInt CondInt)\n\t\t(=   CondInt CondInt)\n))))";

    let mut out = String::new();
    out.push_str(&format!("(synth-fun move ({}) Int\n", header));
    out.push_str("\t((Start Int (\n\t\tMoveId\n\t\t(ite StartBool Start Start)\n\t))\n");
    out.push_str("\t(MoveId Int (\n");
    out.push_str(&move_ids.join("\n"));
    out.push_str("\n\t))\n");
    out.push_str("\t(CondInt Int (\n");
    out.push_str(&cond_ints.join("\n"));
    out.push_str("\n\t))\n");
    out.push_str(start_bool);
    out
}

/// The per-variable legality disjunction: `(or (= v 0) (= v 1) ...)`,
/// right-nested, degenerating to a bare equality for one primitive.
fn allowable_disjunction(var: &str, count: usize) -> String {
    let alts: Vec<String> = (0..count).map(|k| format!("(= {} {})", var, k)).collect();
    fold_right("or", &alts)
}

fn allowable_text(p: &ProblemInstance, steps: usize) -> String {
    let mut conjuncts = Vec::new();
    for (i, obs) in p.obstacles.iter().enumerate() {
        for j in 0..steps {
            conjuncts.push(allowable_disjunction(
                &format!("o{}-mov{}", i, j),
                obs.primitives.len(),
            ));
        }
    }
    fold_right("and", &conjuncts)
}

/// The `(constraint ...)` form: either every obstacle makes an illegal move,
/// or the robot ends on the target having never overlapped an obstacle sweep.
pub fn emit_constraint(p: &ProblemInstance, steps: usize) -> String {
    let w = &p.workspace;
    let n = p.obstacles.len();
    let initial = encode_position(p.robot.initial, w).expect("validated instance");
    let target = encode_position(p.robot.target, w).expect("validated instance");
    let obstacle_initials: Vec<i64> = p
        .obstacles
        .iter()
        .map(|o| encode_position(o.initial, w).expect("validated instance"))
        .collect();

    if steps == 0 {
        // Degenerate bounded game: no moves, no adversary; the constraint is
        // the final-position equality on the initial cell.
        return format!(
            "(constraint\n\t(let ((pos0 Int {})) (= pos0 {})))",
            initial, target
        );
    }

    // Obstacle position at step j as it appears in calls: literal initials at
    // step 0, let-bound names afterwards.
    let obstacle_arg = |i: usize, j: usize| -> String {
        if j == 0 {
            format!("{}", obstacle_initials[i])
        } else {
            format!("o{}-pos{}", i, j)
        }
    };

    let mut step_checks = Vec::with_capacity(steps);
    for j in 0..steps {
        let mut call = format!("(no-overlaps-one-step pos{} mov{}", j, j);
        for i in 0..n {
            call.push_str(&format!(" {} o{}-mov{}", obstacle_arg(i, j), i, j));
        }
        call.push(')');
        step_checks.push(call);
    }

    let mut body = if n == 0 {
        format!("(= pos{} {})", steps, target)
    } else {
        format!(
            "(and\n\t\t(= pos{} {})\n\t\t{})",
            steps,
            target,
            fold_right("and", &step_checks)
        )
    };

    // Robot chain: pos0 literal, then alternating move choice and position
    // update, innermost first.
    for j in (0..steps).rev() {
        body = format!(
            "(let ((pos{} Int (interpret-move pos{} mov{})))\n{})",
            j + 1,
            j,
            j,
            body
        );
        let mut args = format!("pos{}", j);
        for i in 0..n {
            args.push_str(&format!(" {}", obstacle_arg(i, j)));
        }
        body = format!("(let ((mov{} Int (move {})))\n{})", j, args, body);
    }
    body = format!(" (let ((pos{} Int {}))\n{})", 0, initial, body);

    // Obstacle position chain: one let per step binding every obstacle,
    // wrapped outside the robot chain. Steps l-1..1 innermost to outermost,
    // then the literal initials.
    if n > 0 {
        for j in (1..steps).rev() {
            let binds = (0..n)
                .map(|i| {
                    format!(
                        "(o{}-pos{} Int (interpret-move-obstacle-{} o{}-pos{} o{}-mov{}))",
                        i,
                        j,
                        i,
                        i,
                        j - 1,
                        i,
                        j - 1
                    )
                })
                .collect::<Vec<_>>()
                .join(" ");
            body = format!("(let ( {})\n{})", binds, body);
        }
        let binds = (0..n)
            .map(|i| format!("(o{}-pos0 Int {})", i, obstacle_initials[i]))
            .collect::<Vec<_>>()
            .join(" ");
        body = format!("(let ( {})\n{})", binds, body);
    }

    if n == 0 {
        format!("(constraint\n\t{})", body)
    } else {
        format!(
            "(constraint\n\t(or\n\t\t(not {})\n\n\t{}))",
            allowable_text(p, steps),
            body
        )
    }
}

/// Emit the complete specification and parse it back into a function table.
pub fn emit_spec(
    p: &ProblemInstance,
    steps: usize,
    annotate: bool,
) -> Result<SygusDocument, EmitError> {
    let violations = p.validate();
    if !violations.is_empty() {
        return Err(EmitError::InvalidInstance(violations));
    }
    if steps == 0 && p.robot.initial != p.robot.target {
        return Err(EmitError::ZeroStepsAwayFromTarget);
    }
    let mut text = String::new();
    text.push_str("(set-logic LIA)\n\n\n");
    text.push_str(&emit_helpers(p));
    text.push_str("\n\n\n\n");
    let declare_vars = emit_declare_vars(p, steps);
    if !declare_vars.is_empty() {
        text.push_str(&declare_vars);
        text.push('\n');
    }
    text.push_str(&emit_grammar(p, GrammarStyle::Document, annotate));
    text.push_str(" \n \n ");
    text.push_str(&emit_constraint(p, steps));
    text.push_str("\n\n(check-synth)\n");

    let forms = sexpr::parse_all(&text).map_err(EmitError::SelfParse)?;
    let mut functions = BTreeMap::new();
    for form in &forms {
        if let Some([head, name, params, _sort, body]) = form.as_list().and_then(|items| {
            if items.len() == 5 {
                Some([&items[0], &items[1], &items[2], &items[3], &items[4]])
            } else {
                None
            }
        }) {
            if head.as_sym() != Some("define-fun") {
                continue;
            }
            let name = name.as_sym().expect("emitted function name").to_string();
            let params = params
                .as_list()
                .expect("emitted parameter list")
                .iter()
                .map(|decl| {
                    decl.as_list().expect("emitted parameter")[0]
                        .as_sym()
                        .expect("emitted parameter name")
                        .to_string()
                })
                .collect();
            functions.insert(
                name,
                DefinedFunction {
                    params,
                    body: (*body).clone(),
                },
            );
        }
    }
    Ok(SygusDocument { text, functions })
}

/// A value of the LIA fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Bool(bool),
}

impl Value {
    pub fn as_int(self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(b),
            _ => None,
        }
    }
}

/// Term evaluation failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalError(pub String);

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EvalError {}

fn eval_err<T>(msg: String) -> Result<T, EvalError> {
    Err(EvalError(msg))
}

const MAX_CALL_DEPTH: usize = 64;

fn expect_int(v: Value) -> Result<i64, EvalError> {
    v.as_int()
        .ok_or_else(|| EvalError("expected an Int".to_string()))
}

fn expect_bool(v: Value) -> Result<bool, EvalError> {
    v.as_bool()
        .ok_or_else(|| EvalError("expected a Bool".to_string()))
}

/// Evaluate a term under the document's defined functions and an environment
/// binding free symbols. Supports the emitted LIA fragment: `ite`, `and`,
/// `or`, `not`, comparisons, `+`, `-`, `*`, `let`, literals, and calls to
/// defined functions.
pub fn eval_term(
    doc: &SygusDocument,
    term: &Sexp,
    env: &BTreeMap<String, Value>,
) -> Result<Value, EvalError> {
    eval_term_at(doc, term, env, 0)
}

fn eval_term_at(
    doc: &SygusDocument,
    term: &Sexp,
    env: &BTreeMap<String, Value>,
    depth: usize,
) -> Result<Value, EvalError> {
    if depth > MAX_CALL_DEPTH {
        return eval_err("call depth limit exceeded".to_string());
    }
    match term {
        Sexp::Int(i) => Ok(Value::Int(*i)),
        Sexp::Sym(s) => match s.as_str() {
            "true" => Ok(Value::Bool(true)),
            "false" => Ok(Value::Bool(false)),
            _ => env
                .get(s)
                .copied()
                .ok_or_else(|| EvalError(format!("unbound symbol {}", s))),
        },
        Sexp::List(items) => {
            let head = items
                .first()
                .and_then(Sexp::as_sym)
                .ok_or_else(|| EvalError("application head must be a symbol".to_string()))?;
            let args = &items[1..];
            let int_arg = |k: usize| -> Result<i64, EvalError> {
                expect_int(eval_term_at(doc, &args[k], env, depth)?)
            };
            match head {
                "ite" => {
                    if args.len() != 3 {
                        return eval_err("ite takes three arguments".to_string());
                    }
                    let cond = expect_bool(eval_term_at(doc, &args[0], env, depth)?)?;
                    eval_term_at(doc, &args[if cond { 1 } else { 2 }], env, depth)
                }
                "and" | "or" => {
                    let mut acc = head == "and";
                    for a in args {
                        let v = expect_bool(eval_term_at(doc, a, env, depth)?)?;
                        acc = if head == "and" { acc && v } else { acc || v };
                    }
                    Ok(Value::Bool(acc))
                }
                "not" => {
                    if args.len() != 1 {
                        return eval_err("not takes one argument".to_string());
                    }
                    Ok(Value::Bool(!expect_bool(eval_term_at(
                        doc, &args[0], env, depth,
                    )?)?))
                }
                "<=" | "<" | ">=" | ">" => {
                    if args.len() != 2 {
                        return eval_err(format!("{} takes two arguments", head));
                    }
                    let (a, b) = (int_arg(0)?, int_arg(1)?);
                    Ok(Value::Bool(match head {
                        "<=" => a <= b,
                        "<" => a < b,
                        ">=" => a >= b,
                        _ => a > b,
                    }))
                }
                "=" => {
                    if args.len() != 2 {
                        return eval_err("= takes two arguments".to_string());
                    }
                    let a = eval_term_at(doc, &args[0], env, depth)?;
                    let b = eval_term_at(doc, &args[1], env, depth)?;
                    match (a, b) {
                        (Value::Int(a), Value::Int(b)) => Ok(Value::Bool(a == b)),
                        (Value::Bool(a), Value::Bool(b)) => Ok(Value::Bool(a == b)),
                        _ => eval_err("= arguments have mixed sorts".to_string()),
                    }
                }
                "+" | "*" => {
                    let mut acc = if head == "+" { 0 } else { 1 };
                    for (k, _) in args.iter().enumerate() {
                        let v = int_arg(k)?;
                        acc = if head == "+" { acc + v } else { acc * v };
                    }
                    Ok(Value::Int(acc))
                }
                "-" => match args.len() {
                    1 => Ok(Value::Int(-int_arg(0)?)),
                    2 => Ok(Value::Int(int_arg(0)? - int_arg(1)?)),
                    _ => eval_err("- takes one or two arguments".to_string()),
                },
                "let" => {
                    if args.len() != 2 {
                        return eval_err("let takes bindings and a body".to_string());
                    }
                    let binds = args[0]
                        .as_list()
                        .ok_or_else(|| EvalError("bad let bindings".to_string()))?;
                    let mut inner = env.clone();
                    for bind in binds {
                        match bind.as_list() {
                            // Typed SyGuS v1 binding: (name Type value).
                            Some([name, _sort, value]) => {
                                let name = name
                                    .as_sym()
                                    .ok_or_else(|| EvalError("bad let binding name".to_string()))?;
                                // Bindings in one let are simultaneous: all
                                // values are read under the outer environment.
                                let v = eval_term_at(doc, value, env, depth)?;
                                inner.insert(name.to_string(), v);
                            }
                            _ => return eval_err("bad let binding shape".to_string()),
                        }
                    }
                    eval_term_at(doc, &args[1], &inner, depth)
                }
                name => {
                    let func = doc
                        .function(name)
                        .ok_or_else(|| EvalError(format!("unknown function {}", name)))?;
                    if args.len() != func.params.len() {
                        return eval_err(format!(
                            "{} takes {} arguments, got {}",
                            name,
                            func.params.len(),
                            args.len()
                        ));
                    }
                    let mut call_env = BTreeMap::new();
                    for (param, arg) in func.params.iter().zip(args) {
                        call_env.insert(param.clone(), eval_term_at(doc, arg, env, depth)?);
                    }
                    eval_term_at(doc, &func.body, &call_env, depth + 1)
                }
            }
        }
    }
}

/// Evaluate one of the document's defined functions on integer arguments.
pub fn eval_defined_function(
    doc: &SygusDocument,
    name: &str,
    args: &[i64],
) -> Result<Value, EvalError> {
    let func = doc
        .function(name)
        .ok_or_else(|| EvalError(format!("unknown function {}", name)))?;
    if args.len() != func.params.len() {
        return eval_err(format!(
            "{} takes {} arguments, got {}",
            name,
            func.params.len(),
            args.len()
        ));
    }
    let mut env = BTreeMap::new();
    for (param, &arg) in func.params.iter().zip(args) {
        env.insert(param.clone(), Value::Int(arg));
    }
    eval_term(doc, &func.body, &env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{sample_5x7, sample_5x7_updown};

    fn doc() -> SygusDocument {
        emit_spec(&sample_5x7_updown(), 6, false).unwrap()
    }

    #[test]
    fn helper_fragments_match_hand_written_text() {
        let p = sample_5x7_updown();
        let helpers = emit_helpers(&p);
        assert!(sexpr::token_eq(
            &get_y_text(&p.workspace),
            "(define-fun get-y ((currPoint Int)) Int
             (ite (< currPoint 5) 0 (ite (< currPoint 10) 1 (ite (< currPoint 15) 2
             (ite (< currPoint 20) 3 (ite (< currPoint 25) 4 (ite (< currPoint 30) 5 6)))))))"
        ));
        assert!(helpers.contains("no-overlap-one-move-combination-2-2"));
        assert!(sexpr::token_eq(
            &combination_text(2, 2),
            "(define-fun no-overlap-one-move-combination-2-2 ((p0 Int) (p1 Int) (p2 Int) (p3 Int)) Bool
             (and (not (= p0 p2)) (and (not (= p0 p3)) (and (not (= p1 p2)) (not (= p1 p3))))))"
        ));
    }

    #[test]
    fn one_intermediate_cell_yields_3_2_combination() {
        use crate::problem::Displacement;
        let mut p = sample_5x7_updown();
        p.robot.primitives[2].intermediate = alloc::vec![Displacement::new(1, 1)];
        let helpers = emit_helpers(&p);
        assert!(helpers.contains("no-overlap-one-move-combination-3-2"));
        let text = combination_text(3, 2);
        assert_eq!(
            sexpr::tokens(&text).iter().filter(|t| *t == "not").count(),
            6
        );
    }

    #[test]
    fn single_obstacle_one_step_body_is_bare_call() {
        assert!(sexpr::token_eq(
            &no_overlaps_one_step_text(1),
            "(define-fun no-overlaps-one-step ((currPoint Int) (move Int) (o0pos Int) (o0move Int)) Bool
             (no-overlaps-0 currPoint move o0pos o0move))"
        ));
    }

    #[test]
    fn declare_vars_enumerate_obstacle_steps() {
        let p = sample_5x7_updown();
        let text = emit_declare_vars(&p, 6);
        assert_eq!(text.lines().count(), 12);
        assert!(text.starts_with("(declare-var o0-mov0 Int)\n"));
        assert!(text.ends_with("(declare-var o1-mov5 Int)\n"));
    }

    #[test]
    fn allowable_degenerates_to_bare_equality() {
        assert_eq!(allowable_disjunction("o0-mov0", 1), "(= o0-mov0 0)");
        assert_eq!(
            allowable_disjunction("v", 3),
            "(or (= v 0) (or (= v 1) (= v 2)))"
        );
        // One obstacle with one primitive over one step: the whole legality
        // side is that single equality.
        let mut p = sample_5x7_updown();
        p.obstacles.truncate(1);
        p.obstacles[0].primitives.truncate(1);
        let constraint = emit_constraint(&p, 1);
        assert!(constraint.contains("(not (= o0-mov0 0))"), "{}", constraint);
    }

    #[test]
    fn small_workspace_grammar_instantiation() {
        use crate::problem::{Coord, MotionPrimitive, ObstacleSpec, RobotSpec};
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
            obstacles: alloc::vec![ObstacleSpec {
                initial: Coord::new(1, 1),
                primitives: alloc::vec![MotionPrimitive::of(Displacement::new(0, 1))],
            }],
            max_path_length: None,
        };
        let toks = sexpr::tokens(&emit_grammar(&p, GrammarStyle::Standalone, false));
        let header: Vec<&str> = toks.iter().map(String::as_str).take(14).collect();
        assert_eq!(
            header,
            [
                "(",
                "synth-fun",
                "move",
                "(",
                "(",
                "p-r",
                "Int",
                ")",
                "(",
                "p-o0",
                "Int",
                ")",
                ")",
                "Int"
            ]
        );
        // MoveId productions 0..1 and constants exactly -1..=2.
        for present in ["0", "1", "-1", "2"] {
            assert!(toks.contains(&present.to_string()), "missing {}", present);
        }
        for absent in ["3", "-2", "p-o1"] {
            assert!(!toks.contains(&absent.to_string()), "unexpected {}", absent);
        }
    }

    #[test]
    fn single_row_workspace_decoder_is_constant() {
        use crate::problem::{Coord, MotionPrimitive, RobotSpec};
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
        let doc = emit_spec(&p, 2, false).unwrap();
        assert_eq!(
            eval_defined_function(&doc, "get-y", &[2]).unwrap(),
            Value::Int(0)
        );
        assert_eq!(
            eval_defined_function(&doc, "get-x", &[2]).unwrap(),
            Value::Int(2)
        );
    }

    #[test]
    fn three_primitive_obstacle_widens_its_interpreter_and_legality() {
        let doc = emit_spec(&sample_5x7(), 6, false).unwrap();
        let text = doc.text();
        assert!(text.contains("(or (= o1-mov0 0) (or (= o1-mov0 1) (= o1-mov0 2)))"));
        // Obstacle 1's stay primitive is branch 0, emitted bare.
        let f = doc.function("interpret-move-obstacle-1").unwrap();
        assert_eq!(
            eval_defined_function(&doc, "interpret-move-obstacle-1", &[28, 0])
                .unwrap()
                .as_int(),
            Some(28)
        );
        assert_eq!(f.params.len(), 2);
        // no-overlaps-1 gains a third obstacleMove branch: index 2 is a real
        // check here but falls through to failure in the two-primitive
        // variant.
        let two = emit_spec(&sample_5x7_updown(), 6, false).unwrap();
        let args = [6, 0, 28, 2];
        assert_eq!(
            eval_defined_function(&doc, "no-overlaps-1", &args).unwrap(),
            Value::Bool(true)
        );
        assert_eq!(
            eval_defined_function(&two, "no-overlaps-1", &args).unwrap(),
            Value::Bool(false)
        );
    }

    #[test]
    fn zero_obstacle_constraint_is_bare_let_chain() {
        use crate::problem::{Coord, MotionPrimitive, RobotSpec};
        let p = ProblemInstance {
            workspace: Workspace::new(3, 3),
            robot: RobotSpec {
                initial: Coord::new(0, 0),
                target: Coord::new(2, 0),
                primitives: alloc::vec![
                    MotionPrimitive::of(Displacement::new(1, 0)),
                    MotionPrimitive::of(Displacement::new(0, 1)),
                ],
            },
            obstacles: alloc::vec![],
            max_path_length: None,
        };
        let constraint = emit_constraint(&p, 2);
        assert!(sexpr::token_eq(
            &constraint,
            "(constraint
               (let ((pos0 Int 0))
               (let ((mov0 Int (move pos0)))
               (let ((pos1 Int (interpret-move pos0 mov0)))
               (let ((mov1 Int (move pos1)))
               (let ((pos2 Int (interpret-move pos1 mov1)))
               (= pos2 2)))))))"
        ));
        let doc = emit_spec(&p, 2, false).unwrap();
        assert!(doc.function("no-overlaps-one-step").is_none());
        assert!(!doc.text().contains("declare-var"));
        let grammar = emit_grammar(&p, GrammarStyle::Document, false);
        let toks = sexpr::tokens(&grammar);
        assert_eq!(toks.iter().filter(|t| *t == "get-x").count(), 1);
        assert_eq!(toks.iter().filter(|t| *t == "get-y").count(), 1);
    }

    #[test]
    fn zero_step_spec_requires_start_on_target() {
        let p = sample_5x7_updown();
        assert_eq!(
            emit_spec(&p, 0, false).unwrap_err(),
            EmitError::ZeroStepsAwayFromTarget
        );
        let mut at_target = p.clone();
        at_target.robot.target = at_target.robot.initial;
        let doc = emit_spec(&at_target, 0, false).unwrap();
        assert!(doc
            .text()
            .contains("(constraint\n\t(let ((pos0 Int 6)) (= pos0 6)))"));
    }

    #[test]
    fn document_starts_and_ends_canonically() {
        let doc = doc();
        let forms = sexpr::parse_all(doc.text()).unwrap();
        assert_eq!(forms.first().unwrap().to_string(), "(set-logic LIA)");
        assert_eq!(forms.last().unwrap().to_string(), "(check-synth)");
    }

    #[test]
    fn function_table_is_complete() {
        let doc = doc();
        let names: Vec<&str> = doc.function_names().collect();
        for expected in [
            "get-x",
            "get-y",
            "interpret-move",
            "interpret-move-obstacle-0",
            "interpret-move-obstacle-1",
            "no-overlap-one-move-combination-2-2",
            "no-overlaps-0",
            "no-overlaps-1",
            "no-overlaps-one-step",
        ] {
            assert!(
                names.contains(&expected),
                "{} missing from {:?}",
                expected,
                names
            );
        }
        assert_eq!(names.len(), 9);
    }

    #[test]
    fn emission_is_deterministic() {
        let p = sample_5x7_updown();
        assert_eq!(
            emit_spec(&p, 6, false).unwrap().text(),
            emit_spec(&p, 6, false).unwrap().text()
        );
        assert_eq!(
            emit_spec(&p, 6, true).unwrap().text(),
            emit_spec(&p, 6, true).unwrap().text()
        );
    }

    #[test]
    fn grammar_constants_span_minus_one_to_max_dim() {
        let p = sample_5x7_updown();
        let toks = sexpr::tokens(&emit_grammar(&p, GrammarStyle::Document, false));
        // Constants appear between the productions "(- CondInt CondInt)" and
        // the closing of CondInt; collect integer tokens outside MoveId.
        for c in -1..7 {
            assert!(toks.contains(&c.to_string()), "missing constant {}", c);
        }
        assert!(!toks.contains(&"7".to_string()));
        assert!(!toks.contains(&"-2".to_string()));
    }

    #[test]
    fn eval_defined_functions_match_hand_values() {
        let doc = doc();
        assert_eq!(
            eval_defined_function(&doc, "get-y", &[27]).unwrap(),
            Value::Int(5)
        );
        assert_eq!(
            eval_defined_function(&doc, "get-x", &[27]).unwrap(),
            Value::Int(2)
        );
        assert_eq!(
            eval_defined_function(&doc, "interpret-move", &[6, 2]).unwrap(),
            Value::Int(7)
        );
        assert_eq!(
            eval_defined_function(&doc, "no-overlaps-one-step", &[6, 0, 27, 0, 28, 0]).unwrap(),
            Value::Bool(true)
        );
        // Out-of-range move indices fall through to the current point.
        assert_eq!(
            eval_defined_function(&doc, "interpret-move-obstacle-0", &[27, 9]).unwrap(),
            Value::Int(27)
        );
    }

    #[test]
    fn eval_errors_are_reported() {
        let doc = doc();
        assert!(eval_defined_function(&doc, "no-such-fn", &[1]).is_err());
        assert!(eval_defined_function(&doc, "get-x", &[1, 2]).is_err());
    }

    #[test]
    fn annotations_are_comment_only() {
        let p = sample_5x7_updown();
        let plain = emit_spec(&p, 6, false).unwrap();
        let annotated = emit_spec(&p, 6, true).unwrap();
        assert_ne!(plain.text(), annotated.text());
        assert!(annotated.text().contains(";y coord"));
        assert!(sexpr::token_eq(plain.text(), annotated.text()));
    }
}
