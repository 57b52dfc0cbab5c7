//! Controller abstract syntax: the programs the synthesizer searches over and
//! the solvers exchange. A controller maps the current system state (robot
//! scalar position plus one scalar per obstacle) to a robot move index.
//!
//! The shape is fixed by the synthesis grammar: a controller is either a bare
//! move index or an if-then-else over boolean conditions built from binary
//! and/or, not, `<=`/`=` comparisons of integer terms; integer terms are
//! coordinate accessors on the parameters, binary `+`/`-`, and small constants.

use crate::problem::{decode_position, ProblemInstance, Workspace};
use crate::semantics::SystemState;
use crate::sexpr::{self, Sexp};
use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// A parameter of the synthesized function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    Robot,
    Obstacle(usize),
}

/// Integer-valued condition term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IntExpr {
    GetX(Param),
    GetY(Param),
    Add(Box<IntExpr>, Box<IntExpr>),
    Sub(Box<IntExpr>, Box<IntExpr>),
    Const(i64),
}

/// Boolean condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Not(Box<BoolExpr>),
    Le(Box<IntExpr>, Box<IntExpr>),
    Eq(Box<IntExpr>, Box<IntExpr>),
}

/// A complete controller.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ControllerAst {
    /// Return this robot move index.
    Move(usize),
    Ite(Box<BoolExpr>, Box<ControllerAst>, Box<ControllerAst>),
}

/// Parameter name for the printed dialect: `p-r`, `p-o0`, `p-o1`, ...
pub fn param_name(p: Param) -> String {
    match p {
        Param::Robot => "p-r".to_string(),
        Param::Obstacle(i) => format!("p-o{}", i),
    }
}

/// All parameter names for an instance with `n` obstacles, robot first.
pub fn param_names(n: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(n + 1);
    names.push(param_name(Param::Robot));
    for i in 0..n {
        names.push(param_name(Param::Obstacle(i)));
    }
    names
}

fn param_scalar(p: Param, s: &SystemState) -> i64 {
    match p {
        Param::Robot => s.robot,
        Param::Obstacle(i) => s.obstacles[i],
    }
}

fn eval_int(e: &IntExpr, s: &SystemState, w: &Workspace) -> i64 {
    match e {
        IntExpr::GetX(p) => {
            decode_position(param_scalar(*p, s), w)
                .expect("state scalar in range")
                .x
        }
        IntExpr::GetY(p) => {
            decode_position(param_scalar(*p, s), w)
                .expect("state scalar in range")
                .y
        }
        IntExpr::Add(a, b) => eval_int(a, s, w) + eval_int(b, s, w),
        IntExpr::Sub(a, b) => eval_int(a, s, w) - eval_int(b, s, w),
        IntExpr::Const(c) => *c,
    }
}

fn eval_bool(e: &BoolExpr, s: &SystemState, w: &Workspace) -> bool {
    match e {
        BoolExpr::And(a, b) => eval_bool(a, s, w) && eval_bool(b, s, w),
        BoolExpr::Or(a, b) => eval_bool(a, s, w) || eval_bool(b, s, w),
        BoolExpr::Not(a) => !eval_bool(a, s, w),
        BoolExpr::Le(a, b) => eval_int(a, s, w) <= eval_int(b, s, w),
        BoolExpr::Eq(a, b) => eval_int(a, s, w) == eval_int(b, s, w),
    }
}

/// Evaluate a controller on a system state; total on well-formed input.
pub fn eval_controller(c: &ControllerAst, s: &SystemState, w: &Workspace) -> usize {
    match c {
        ControllerAst::Move(k) => *k,
        ControllerAst::Ite(cond, then, els) => {
            if eval_bool(cond, s, w) {
                eval_controller(then, s, w)
            } else {
                eval_controller(els, s, w)
            }
        }
    }
}

// Depth convention: a bare move index is 1; every production application adds
// one level above its deepest child, with parameters counting as children of
// the accessors. A constant occupies a grammar production of its own, so it
// measures 2 just like an accessor application; this is the convention under
// which no complete conditional program can measure 2 or 3.
pub fn int_depth(e: &IntExpr) -> u32 {
    match e {
        IntExpr::GetX(_) | IntExpr::GetY(_) => 2,
        IntExpr::Add(a, b) | IntExpr::Sub(a, b) => 1 + int_depth(a).max(int_depth(b)),
        IntExpr::Const(_) => 2,
    }
}

pub fn bool_depth(e: &BoolExpr) -> u32 {
    match e {
        BoolExpr::And(a, b) | BoolExpr::Or(a, b) => 1 + bool_depth(a).max(bool_depth(b)),
        BoolExpr::Not(a) => 1 + bool_depth(a),
        BoolExpr::Le(a, b) | BoolExpr::Eq(a, b) => 1 + int_depth(a).max(int_depth(b)),
    }
}

/// AST depth of a controller.
pub fn ast_depth(c: &ControllerAst) -> u32 {
    match c {
        ControllerAst::Move(_) => 1,
        ControllerAst::Ite(cond, then, els) => {
            1 + bool_depth(cond).max(ast_depth(then)).max(ast_depth(els))
        }
    }
}

pub fn int_nodes(e: &IntExpr) -> u64 {
    match e {
        IntExpr::GetX(_) | IntExpr::GetY(_) => 2,
        IntExpr::Add(a, b) | IntExpr::Sub(a, b) => 1 + int_nodes(a) + int_nodes(b),
        IntExpr::Const(_) => 1,
    }
}

pub fn bool_nodes(e: &BoolExpr) -> u64 {
    match e {
        BoolExpr::And(a, b) | BoolExpr::Or(a, b) => 1 + bool_nodes(a) + bool_nodes(b),
        BoolExpr::Not(a) => 1 + bool_nodes(a),
        BoolExpr::Le(a, b) | BoolExpr::Eq(a, b) => 1 + int_nodes(a) + int_nodes(b),
    }
}

/// Node count of a controller, parameters included.
pub fn node_count(c: &ControllerAst) -> u64 {
    match c {
        ControllerAst::Move(_) => 1,
        ControllerAst::Ite(cond, then, els) => {
            1 + bool_nodes(cond) + node_count(then) + node_count(els)
        }
    }
}

/// Well-formedness failure against a particular instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellFormedError(pub String);

impl fmt::Display for WellFormedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for WellFormedError {}

fn check_param(p: Param, n: usize) -> Result<(), WellFormedError> {
    match p {
        Param::Robot => Ok(()),
        Param::Obstacle(i) if i < n => Ok(()),
        Param::Obstacle(i) => Err(WellFormedError(format!(
            "parameter p-o{} undeclared ({} obstacles)",
            i, n
        ))),
    }
}

fn check_int(e: &IntExpr, n: usize, d: i64) -> Result<(), WellFormedError> {
    match e {
        IntExpr::GetX(p) | IntExpr::GetY(p) => check_param(*p, n),
        IntExpr::Add(a, b) | IntExpr::Sub(a, b) => {
            check_int(a, n, d)?;
            check_int(b, n, d)
        }
        IntExpr::Const(c) => {
            if *c >= -1 && *c < d {
                Ok(())
            } else {
                Err(WellFormedError(format!(
                    "constant {} outside [-1, {}]",
                    c,
                    d - 1
                )))
            }
        }
    }
}

fn check_bool(e: &BoolExpr, n: usize, d: i64) -> Result<(), WellFormedError> {
    match e {
        BoolExpr::And(a, b) | BoolExpr::Or(a, b) => {
            check_bool(a, n, d)?;
            check_bool(b, n, d)
        }
        BoolExpr::Not(a) => check_bool(a, n, d),
        BoolExpr::Le(a, b) | BoolExpr::Eq(a, b) => {
            check_int(a, n, d)?;
            check_int(b, n, d)
        }
    }
}

/// Check that a controller stays inside the grammar instantiated for `p`:
/// move indices in `[0, m)`, obstacle references in `[0, n)`, constants in
/// `[-1, d-1]` with `d` the longest workspace dimension.
pub fn well_formed(c: &ControllerAst, p: &ProblemInstance) -> Result<(), WellFormedError> {
    let n = p.obstacle_count();
    let m = p.move_count();
    let d = p.workspace.max_dim();
    fn go(c: &ControllerAst, n: usize, m: usize, d: i64) -> Result<(), WellFormedError> {
        match c {
            ControllerAst::Move(k) => {
                if *k < m {
                    Ok(())
                } else {
                    Err(WellFormedError(format!(
                        "move index {} outside [0, {})",
                        k, m
                    )))
                }
            }
            ControllerAst::Ite(cond, then, els) => {
                check_bool(cond, n, d)?;
                go(then, n, m, d)?;
                go(els, n, m, d)
            }
        }
    }
    go(c, n, m, d)
}

fn int_text(e: &IntExpr) -> String {
    match e {
        IntExpr::GetX(p) => format!("(get-x {})", param_name(*p)),
        IntExpr::GetY(p) => format!("(get-y {})", param_name(*p)),
        IntExpr::Add(a, b) => format!("(+ {} {})", int_text(a), int_text(b)),
        IntExpr::Sub(a, b) => format!("(- {} {})", int_text(a), int_text(b)),
        IntExpr::Const(c) => format!("{}", c),
    }
}

fn bool_text(e: &BoolExpr) -> String {
    match e {
        BoolExpr::And(a, b) => format!("(and {} {})", bool_text(a), bool_text(b)),
        BoolExpr::Or(a, b) => format!("(or {} {})", bool_text(a), bool_text(b)),
        BoolExpr::Not(a) => format!("(not {})", bool_text(a)),
        BoolExpr::Le(a, b) => format!("(<= {} {})", int_text(a), int_text(b)),
        BoolExpr::Eq(a, b) => format!("(= {} {})", int_text(a), int_text(b)),
    }
}

/// Body of a controller as a one-line s-expression.
pub fn controller_body_text(c: &ControllerAst) -> String {
    match c {
        ControllerAst::Move(k) => format!("{}", k),
        ControllerAst::Ite(cond, then, els) => format!(
            "(ite {} {} {})",
            bool_text(cond),
            controller_body_text(then),
            controller_body_text(els)
        ),
    }
}

/// Print a controller as `define-fun` text in the `p-r`/`p-o<i>` dialect.
pub fn print_controller(c: &ControllerAst, p: &ProblemInstance) -> String {
    let params = param_names(p.obstacle_count())
        .iter()
        .map(|name| format!("({} Int)", name))
        .collect::<Vec<_>>()
        .join(" ");
    format!(
        "(define-fun move ({}) Int\n    {})",
        params,
        controller_body_text(c)
    )
}

/// Controller parse failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ControllerParseError {
    Syntax(sexpr::ParseError),
    Shape(String),
}

impl fmt::Display for ControllerParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ControllerParseError::Syntax(e) => write!(f, "syntax error: {}", e),
            ControllerParseError::Shape(msg) => f.write_str(msg),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ControllerParseError {}

fn shape_err<T>(msg: String) -> Result<T, ControllerParseError> {
    Err(ControllerParseError::Shape(msg))
}

struct ControllerReader<'a> {
    params: Vec<String>,
    n: usize,
    m: usize,
    d: i64,
    _p: &'a ProblemInstance,
}

impl<'a> ControllerReader<'a> {
    fn param(&self, name: &str) -> Result<Param, ControllerParseError> {
        if name == "p-r" {
            return Ok(Param::Robot);
        }
        if let Some(rest) = name.strip_prefix("p-o") {
            if let Ok(i) = rest.parse::<usize>() {
                if i < self.n {
                    return Ok(Param::Obstacle(i));
                }
            }
        }
        shape_err(format!(
            "undeclared parameter {} (declared: {})",
            name,
            self.params.join(" ")
        ))
    }

    fn int(&self, e: &Sexp) -> Result<IntExpr, ControllerParseError> {
        match e {
            Sexp::Int(c) => {
                if *c >= -1 && *c < self.d {
                    Ok(IntExpr::Const(*c))
                } else {
                    shape_err(format!("constant {} outside [-1, {}]", c, self.d - 1))
                }
            }
            Sexp::Sym(s) => shape_err(format!("bare symbol {} is not an integer term", s)),
            Sexp::List(items) => {
                let op = items
                    .first()
                    .and_then(Sexp::as_sym)
                    .ok_or_else(|| ControllerParseError::Shape("empty term".to_string()))?;
                match op {
                    "get-x" | "get-y" => {
                        if items.len() != 2 {
                            return shape_err(format!("{} takes one argument", op));
                        }
                        let name = items[1].as_sym().ok_or_else(|| {
                            ControllerParseError::Shape(format!("{} expects a parameter", op))
                        })?;
                        let p = self.param(name)?;
                        Ok(if op == "get-x" {
                            IntExpr::GetX(p)
                        } else {
                            IntExpr::GetY(p)
                        })
                    }
                    "+" | "-" => {
                        if items.len() != 3 {
                            return shape_err(format!("{} takes two arguments", op));
                        }
                        let a = Box::new(self.int(&items[1])?);
                        let b = Box::new(self.int(&items[2])?);
                        Ok(if op == "+" {
                            IntExpr::Add(a, b)
                        } else {
                            IntExpr::Sub(a, b)
                        })
                    }
                    other => shape_err(format!("unknown integer operator {}", other)),
                }
            }
        }
    }

    fn boolean(&self, e: &Sexp) -> Result<BoolExpr, ControllerParseError> {
        let items = match e {
            Sexp::List(items) => items,
            other => return shape_err(format!("expected a condition, got {}", other)),
        };
        let op = items
            .first()
            .and_then(Sexp::as_sym)
            .ok_or_else(|| ControllerParseError::Shape("empty condition".to_string()))?;
        match op {
            "and" | "or" => {
                if items.len() != 3 {
                    return shape_err(format!("{} takes two arguments", op));
                }
                let a = Box::new(self.boolean(&items[1])?);
                let b = Box::new(self.boolean(&items[2])?);
                Ok(if op == "and" {
                    BoolExpr::And(a, b)
                } else {
                    BoolExpr::Or(a, b)
                })
            }
            "not" => {
                if items.len() != 2 {
                    return shape_err("not takes one argument".to_string());
                }
                Ok(BoolExpr::Not(Box::new(self.boolean(&items[1])?)))
            }
            "<=" | "=" => {
                if items.len() != 3 {
                    return shape_err(format!("{} takes two arguments", op));
                }
                let a = Box::new(self.int(&items[1])?);
                let b = Box::new(self.int(&items[2])?);
                Ok(if op == "<=" {
                    BoolExpr::Le(a, b)
                } else {
                    BoolExpr::Eq(a, b)
                })
            }
            other => shape_err(format!("unknown boolean operator {}", other)),
        }
    }

    fn start(&self, e: &Sexp) -> Result<ControllerAst, ControllerParseError> {
        match e {
            Sexp::Int(k) => {
                if *k >= 0 && (*k as usize) < self.m {
                    Ok(ControllerAst::Move(*k as usize))
                } else {
                    shape_err(format!("move index {} outside [0, {})", k, self.m))
                }
            }
            Sexp::List(items) if items.first().and_then(Sexp::as_sym) == Some("ite") => {
                if items.len() != 4 {
                    return shape_err("ite takes three arguments".to_string());
                }
                Ok(ControllerAst::Ite(
                    Box::new(self.boolean(&items[1])?),
                    Box::new(self.start(&items[2])?),
                    Box::new(self.start(&items[3])?),
                ))
            }
            other => shape_err(format!("expected a move index or ite, got {}", other)),
        }
    }
}

/// Parse `define-fun` text back into a controller; inverse of
/// [`print_controller`] on its image. Rejects anything outside the grammar
/// instantiated for `p`.
pub fn parse_controller(
    text: &str,
    p: &ProblemInstance,
) -> Result<ControllerAst, ControllerParseError> {
    let form = sexpr::parse_one(text).map_err(ControllerParseError::Syntax)?;
    let items = match &form {
        Sexp::List(items) => items,
        _ => return shape_err("expected a define-fun form".to_string()),
    };
    if items.first().and_then(Sexp::as_sym) != Some("define-fun") {
        return shape_err("expected a define-fun form".to_string());
    }
    if items.len() != 5 {
        return shape_err("define-fun takes name, parameters, sort, and body".to_string());
    }
    if items[1].as_sym() != Some("move") {
        return shape_err(format!("expected function name move, got {}", items[1]));
    }
    let expected = param_names(p.obstacle_count());
    let decls = items[2]
        .as_list()
        .ok_or_else(|| ControllerParseError::Shape("bad parameter list".to_string()))?;
    let mut declared = Vec::new();
    for decl in decls {
        match decl.as_list() {
            Some([name, sort]) if sort.as_sym() == Some("Int") => {
                declared.push(
                    name.as_sym()
                        .ok_or_else(|| {
                            ControllerParseError::Shape("bad parameter name".to_string())
                        })?
                        .to_string(),
                );
            }
            _ => return shape_err(format!("bad parameter declaration {}", decl)),
        }
    }
    if declared != expected {
        return shape_err(format!(
            "parameters ({}) do not match instance ({})",
            declared.join(" "),
            expected.join(" ")
        ));
    }
    if items[3].as_sym() != Some("Int") {
        return shape_err(format!("expected return sort Int, got {}", items[3]));
    }
    let reader = ControllerReader {
        params: expected,
        n: p.obstacle_count(),
        m: p.move_count(),
        d: p.workspace.max_dim(),
        _p: p,
    };
    reader.start(&items[4])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{Coord, MotionPrimitive, RobotSpec};
    use crate::testutil::{sample_5x7, sample_controller, SAMPLE_CONTROLLER_TEXT};
    use alloc::vec;

    fn state(robot: i64, obstacles: &[i64]) -> SystemState {
        SystemState {
            robot,
            obstacles: obstacles.to_vec(),
        }
    }

    #[test]
    fn evaluates_sample_controller() {
        let w = Workspace::new(5, 7);
        let c = sample_controller();
        assert_eq!(eval_controller(&c, &state(6, &[27, 28]), &w), 2);
        assert_eq!(eval_controller(&c, &state(24, &[27, 28]), &w), 1);
        assert_eq!(
            eval_controller(&ControllerAst::Move(0), &state(30, &[0, 1]), &w),
            0
        );
    }

    #[test]
    fn depth_convention() {
        assert_eq!(ast_depth(&ControllerAst::Move(3)), 1);
        assert_eq!(ast_depth(&sample_controller()), 4);
        // Condition containing an arithmetic node pushes the ite to depth 5.
        let c = ControllerAst::Ite(
            Box::new(BoolExpr::Le(
                Box::new(IntExpr::Add(
                    Box::new(IntExpr::GetX(Param::Robot)),
                    Box::new(IntExpr::Const(1)),
                )),
                Box::new(IntExpr::Const(3)),
            )),
            Box::new(ControllerAst::Move(0)),
            Box::new(ControllerAst::Move(1)),
        );
        assert_eq!(ast_depth(&c), 5);
    }

    #[test]
    fn prints_sample_controller() {
        let p = sample_5x7();
        assert!(sexpr::token_eq(
            &print_controller(&sample_controller(), &p),
            SAMPLE_CONTROLLER_TEXT
        ));
    }

    #[test]
    fn parses_sample_controller_text() {
        let p = sample_5x7();
        assert_eq!(
            parse_controller(SAMPLE_CONTROLLER_TEXT, &p).unwrap(),
            sample_controller()
        );
    }

    #[test]
    fn print_parse_round_trip() {
        let p = sample_5x7();
        let trees = [
            ControllerAst::Move(3),
            sample_controller(),
            ControllerAst::Ite(
                Box::new(BoolExpr::And(
                    Box::new(BoolExpr::Not(Box::new(BoolExpr::Eq(
                        Box::new(IntExpr::GetY(Param::Obstacle(1))),
                        Box::new(IntExpr::Sub(
                            Box::new(IntExpr::GetX(Param::Robot)),
                            Box::new(IntExpr::Const(-1)),
                        )),
                    )))),
                    Box::new(BoolExpr::Or(
                        Box::new(BoolExpr::Le(
                            Box::new(IntExpr::Const(0)),
                            Box::new(IntExpr::GetX(Param::Obstacle(0))),
                        )),
                        Box::new(BoolExpr::Le(
                            Box::new(IntExpr::Const(6)),
                            Box::new(IntExpr::Const(2)),
                        )),
                    )),
                )),
                Box::new(ControllerAst::Ite(
                    Box::new(BoolExpr::Le(
                        Box::new(IntExpr::GetY(Param::Robot)),
                        Box::new(IntExpr::Const(4)),
                    )),
                    Box::new(ControllerAst::Move(0)),
                    Box::new(ControllerAst::Move(4)),
                )),
                Box::new(ControllerAst::Move(2)),
            ),
        ];
        for tree in &trees {
            well_formed(tree, &p).unwrap();
            let printed = print_controller(tree, &p);
            assert_eq!(&parse_controller(&printed, &p).unwrap(), tree);
        }
    }

    #[test]
    fn parses_zero_obstacle_dialect() {
        let p = ProblemInstance {
            workspace: Workspace::new(5, 7),
            robot: RobotSpec {
                initial: Coord::new(0, 0),
                target: Coord::new(0, 1),
                primitives: vec![
                    MotionPrimitive::of(crate::problem::Displacement::new(0, 1)),
                    MotionPrimitive::of(crate::problem::Displacement::new(0, -1)),
                ],
            },
            obstacles: vec![],
            max_path_length: None,
        };
        let c = parse_controller(
            "(define-fun move ((p-r Int)) Int (ite (= (get-y p-r) 0) 1 0))",
            &p,
        )
        .unwrap();
        assert_eq!(ast_depth(&c), 4);
    }

    #[test]
    fn rejects_out_of_grammar_text() {
        let p = sample_5x7();
        // Undeclared parameter.
        let err = parse_controller(
            "(define-fun move ((p-r Int) (p-o0 Int) (p-o1 Int)) Int (ite (<= (get-x p-o5) 3) 2 1))",
            &p,
        )
        .unwrap_err();
        assert!(format!("{}", err).contains("p-o5"), "{}", err);
        // Parameter list must match the instance.
        assert!(parse_controller("(define-fun move ((p-r Int)) Int 0)", &p).is_err());
        // Constant outside [-1, d-1].
        assert!(parse_controller(
            "(define-fun move ((p-r Int) (p-o0 Int) (p-o1 Int)) Int (ite (<= (get-x p-r) 7) 2 1))",
            &p
        )
        .is_err());
        // Unknown operator.
        assert!(parse_controller(
            "(define-fun move ((p-r Int) (p-o0 Int) (p-o1 Int)) Int (ite (< (get-x p-r) 3) 2 1))",
            &p
        )
        .is_err());
        // Move index out of range.
        assert!(parse_controller(
            "(define-fun move ((p-r Int) (p-o0 Int) (p-o1 Int)) Int 5)",
            &p
        )
        .is_err());
        // Arity error.
        assert!(parse_controller(
            "(define-fun move ((p-r Int) (p-o0 Int) (p-o1 Int)) Int (ite (<= (get-x p-r) 3 4) 2 1))",
            &p
        )
        .is_err());
    }

    #[test]
    fn well_formed_rejects_bad_trees() {
        let p = sample_5x7();
        assert!(well_formed(&ControllerAst::Move(5), &p).is_err());
        let bad_const = ControllerAst::Ite(
            Box::new(BoolExpr::Le(
                Box::new(IntExpr::Const(-2)),
                Box::new(IntExpr::Const(0)),
            )),
            Box::new(ControllerAst::Move(0)),
            Box::new(ControllerAst::Move(1)),
        );
        assert!(well_formed(&bad_const, &p).is_err());
        let bad_obstacle = ControllerAst::Ite(
            Box::new(BoolExpr::Le(
                Box::new(IntExpr::GetX(Param::Obstacle(2))),
                Box::new(IntExpr::Const(0)),
            )),
            Box::new(ControllerAst::Move(0)),
            Box::new(ControllerAst::Move(1)),
        );
        assert!(well_formed(&bad_obstacle, &p).is_err());
    }
}
