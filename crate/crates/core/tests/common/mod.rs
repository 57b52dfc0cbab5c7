//! Shared fixtures for integration tests.
#![allow(dead_code)] // each test binary uses a different subset

use motionsynth_core::ast::{BoolExpr, ControllerAst, IntExpr, Param};
use motionsynth_core::problem::{
    Coord, Displacement, MotionPrimitive, ObstacleSpec, ProblemInstance, RobotSpec, Workspace,
};

pub fn prims(deltas: &[(i64, i64)]) -> Vec<MotionPrimitive> {
    deltas
        .iter()
        .map(|&(dx, dy)| MotionPrimitive::of(Displacement::new(dx, dy)))
        .collect()
}

/// 5x7 sample: robot (1,1) -> (4,4) with stay/up/right/down/left; obstacle 0
/// at (2,5) with up/down; obstacle 1 at (3,5) with stay/up/down.
pub fn sample_5x7() -> ProblemInstance {
    ProblemInstance {
        workspace: Workspace::new(5, 7),
        robot: RobotSpec {
            initial: Coord::new(1, 1),
            target: Coord::new(4, 4),
            primitives: prims(&[(0, 0), (0, 1), (1, 0), (0, -1), (-1, 0)]),
        },
        obstacles: vec![
            ObstacleSpec {
                initial: Coord::new(2, 5),
                primitives: prims(&[(0, 1), (0, -1)]),
            },
            ObstacleSpec {
                initial: Coord::new(3, 5),
                primitives: prims(&[(0, 0), (0, 1), (0, -1)]),
            },
        ],
        max_path_length: None,
    }
}

/// The variant with obstacle 1 restricted to up/down as well.
pub fn sample_5x7_updown() -> ProblemInstance {
    let mut p = sample_5x7();
    p.obstacles[1].primitives = prims(&[(0, 1), (0, -1)]);
    p
}

/// `(ite (<= (get-x p-r) 3) 2 1)`.
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
