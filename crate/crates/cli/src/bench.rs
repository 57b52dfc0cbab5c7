//! Deterministic benchmark-instance generators along the four problem-size
//! axes: controller depth (fixed by construction here), path length, obstacle
//! count, and workspace dimensions.

use motionsynth_core::problem::{
    Coord, Displacement, MotionPrimitive, ObstacleSpec, ProblemInstance, RobotSpec, Workspace,
};
use rand::Rng;

fn cardinal_primitives() -> Vec<MotionPrimitive> {
    [(0, 0), (0, 1), (1, 0), (0, -1), (-1, 0)]
        .iter()
        .map(|&(dx, dy)| MotionPrimitive::of(Displacement::new(dx, dy)))
        .collect()
}

/// A large-workspace benchmark: the robot walks a dogleg of `path_len` steps
/// (right, then up) from (1, 1) while `obstacles` up/down shuttles patrol
/// columns near the right edge. Shuttles never leave their column, so the
/// instance is solvable at depth 4, but the adversary still branches
/// `2^obstacles` ways per step.
pub fn scalability_instance(
    width: i64,
    length: i64,
    obstacles: usize,
    path_len: usize,
) -> ProblemInstance {
    let dy = (path_len / 2) as i64;
    let dx = path_len as i64 - dy;
    assert!(
        1 + dx < width && 1 + dy < length,
        "workspace too small for the path"
    );
    assert!(
        width - 1 - obstacles as i64 > 1 + dx,
        "workspace too narrow to keep shuttles off the path"
    );
    let shuttle = vec![
        MotionPrimitive::of(Displacement::new(0, 1)),
        MotionPrimitive::of(Displacement::new(0, -1)),
    ];
    ProblemInstance {
        workspace: Workspace::new(width, length),
        robot: RobotSpec {
            initial: Coord::new(1, 1),
            target: Coord::new(1 + dx, 1 + dy),
            primitives: cardinal_primitives(),
        },
        obstacles: (0..obstacles)
            .map(|i| ObstacleSpec {
                initial: Coord::new(width - 1 - i as i64, length - 2),
                primitives: shuttle.clone(),
            })
            .collect(),
        max_path_length: Some(path_len),
    }
}

/// Caps for random instance generation.
#[derive(Debug, Clone, Copy)]
pub struct RandomCaps {
    pub max_width: i64,
    pub max_length: i64,
    pub max_obstacles: usize,
    pub max_primitives: usize,
}

impl Default for RandomCaps {
    fn default() -> Self {
        RandomCaps {
            max_width: 4,
            max_length: 4,
            max_obstacles: 1,
            max_primitives: 3,
        }
    }
}

fn random_primitives(
    rng: &mut impl Rng,
    count: usize,
    w: &Workspace,
    allow_intermediate: bool,
) -> Vec<MotionPrimitive> {
    let mut deltas: Vec<Displacement> = Vec::new();
    let mut guard = 0;
    while deltas.len() < count && guard < 100 {
        guard += 1;
        let d = Displacement::new(rng.gen_range(-1..=1), rng.gen_range(-1..=1));
        if d.dx.abs() >= w.width || d.dy.abs() >= w.length || deltas.contains(&d) {
            continue;
        }
        deltas.push(d);
    }
    deltas
        .into_iter()
        .map(|delta| {
            let mut intermediate = Vec::new();
            if allow_intermediate && rng.gen_bool(0.25) {
                let via = Displacement::new(rng.gen_range(-1..=1), rng.gen_range(-1..=1));
                if !via.is_zero()
                    && via != delta
                    && via.dx.abs() < w.width
                    && via.dy.abs() < w.length
                {
                    intermediate.push(via);
                }
            }
            MotionPrimitive {
                delta,
                intermediate,
            }
        })
        .collect()
}

fn random_cell(rng: &mut impl Rng, w: &Workspace) -> Coord {
    Coord::new(rng.gen_range(0..w.width), rng.gen_range(0..w.length))
}

/// A random valid instance within the caps. Deterministic for a fixed RNG
/// state; resamples internally until validation passes.
pub fn random_instance(rng: &mut impl Rng, caps: &RandomCaps) -> ProblemInstance {
    loop {
        let w = Workspace::new(
            rng.gen_range(2..=caps.max_width),
            rng.gen_range(2..=caps.max_length),
        );
        let robot_initial = random_cell(rng, &w);
        let robot_target = random_cell(rng, &w);
        let robot_prim_count = rng.gen_range(1..=caps.max_primitives);
        let robot = RobotSpec {
            initial: robot_initial,
            target: robot_target,
            primitives: random_primitives(rng, robot_prim_count, &w, true),
        };
        let obstacle_count = rng.gen_range(0..=caps.max_obstacles);
        let mut obstacles = Vec::with_capacity(obstacle_count);
        for _ in 0..obstacle_count {
            let initial = random_cell(rng, &w);
            if initial == robot_initial {
                continue;
            }
            let prim_count = rng.gen_range(1..=caps.max_primitives);
            obstacles.push(ObstacleSpec {
                initial,
                primitives: random_primitives(rng, prim_count, &w, false),
            });
        }
        let p = ProblemInstance {
            workspace: w,
            robot,
            obstacles,
            max_path_length: None,
        };
        if p.is_valid() {
            return p;
        }
    }
}
