//! Shared fixtures for unit tests: the 5x7 sample problem in both obstacle
//! variants, and its known hand-written solution controller.

use crate::ast::{BoolExpr, ControllerAst, IntExpr, Param};
use crate::problem::{
    Coord, Displacement, MotionPrimitive, ObstacleSpec, ProblemInstance, RobotSpec, Workspace,
};
use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

pub const STAY: Displacement = Displacement { dx: 0, dy: 0 };
pub const UP: Displacement = Displacement { dx: 0, dy: 1 };
pub const RIGHT: Displacement = Displacement { dx: 1, dy: 0 };
pub const DOWN: Displacement = Displacement { dx: 0, dy: -1 };
pub const LEFT: Displacement = Displacement { dx: -1, dy: 0 };

fn prims(deltas: &[Displacement]) -> Vec<MotionPrimitive> {
    deltas.iter().copied().map(MotionPrimitive::of).collect()
}

/// 5x7 sample: robot (1,1) -> (4,4) with stay/up/right/down/left; obstacle 0
/// at (2,5) with up/down; obstacle 1 at (3,5) with stay/up/down.
pub fn sample_5x7() -> ProblemInstance {
    ProblemInstance {
        workspace: Workspace::new(5, 7),
        robot: RobotSpec {
            initial: Coord::new(1, 1),
            target: Coord::new(4, 4),
            primitives: prims(&[STAY, UP, RIGHT, DOWN, LEFT]),
        },
        obstacles: vec![
            ObstacleSpec {
                initial: Coord::new(2, 5),
                primitives: prims(&[UP, DOWN]),
            },
            ObstacleSpec {
                initial: Coord::new(3, 5),
                primitives: prims(&[STAY, UP, DOWN]),
            },
        ],
        max_path_length: None,
    }
}

/// The variant with obstacle 1 restricted to up/down as well.
pub fn sample_5x7_updown() -> ProblemInstance {
    let mut p = sample_5x7();
    p.obstacles[1].primitives = prims(&[UP, DOWN]);
    p
}

/// `(ite (<= (get-x p-r) 3) 2 1)` — go right until column 3 is cleared, then up.
pub fn sample_controller() -> ControllerAst {
    ControllerAst::Ite(
        Box::new(BoolExpr::Le(
            Box::new(IntExpr::GetX(Param::Robot)),
            Box::new(IntExpr::Const(3)),
        )),
        Box::new(ControllerAst::Move(2)),
        Box::new(ControllerAst::Move(1)),
    )
}

pub const SAMPLE_CONTROLLER_TEXT: &str =
    "(define-fun move ((p-r Int) (p-o0 Int) (p-o1 Int)) Int\n    (ite (<= (get-x p-r) 3) 2 1))";
