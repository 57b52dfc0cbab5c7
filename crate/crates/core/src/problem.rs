//! The formal model of a reactive motion-planning problem: a rectangular
//! workspace, one robot with a target cell, and a set of moving obstacles,
//! each agent equipped with an ordered list of motion primitives.
//!
//! Positions are exposed in two forms: `(x, y)` coordinates and the scalar
//! encoding `y * width + x` used throughout the emitted specifications.
//! All values are immutable after construction and safe to share.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A grid cell, `x` column and `y` row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    pub x: i64,
    pub y: i64,
}

impl Coord {
    pub const fn new(x: i64, y: i64) -> Coord {
        Coord { x, y }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A signed cell offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Displacement {
    pub dx: i64,
    pub dy: i64,
}

impl Displacement {
    pub const fn new(dx: i64, dy: i64) -> Displacement {
        Displacement { dx, dy }
    }

    pub const ZERO: Displacement = Displacement { dx: 0, dy: 0 };

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

/// An atomic action: the net displacement it produces plus the intermediate
/// relative cells an agent may sweep through while executing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MotionPrimitive {
    pub delta: Displacement,
    pub intermediate: Vec<Displacement>,
}

impl MotionPrimitive {
    pub fn of(delta: Displacement) -> MotionPrimitive {
        MotionPrimitive {
            delta,
            intermediate: Vec::new(),
        }
    }

    /// Number of cells in the emitted sweep: current and final are always
    /// listed, even when the net displacement is zero.
    pub fn sweep_size(&self) -> usize {
        2 + self.intermediate.len()
    }

    /// True when the two primitives describe the same action: equal net
    /// displacement and equal intermediate sets (order-insensitive).
    fn same_action(&self, other: &MotionPrimitive) -> bool {
        if self.delta != other.delta || self.intermediate.len() != other.intermediate.len() {
            return false;
        }
        let mut a = self.intermediate.clone();
        let mut b = other.intermediate.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

/// Workspace dimensions: `width` columns (x) by `length` rows (y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Workspace {
    pub width: i64,
    pub length: i64,
}

impl Workspace {
    pub const fn new(width: i64, length: i64) -> Workspace {
        Workspace { width, length }
    }

    pub fn cells(&self) -> i64 {
        self.width * self.length
    }

    /// Longest dimension; bounds the constants in the synthesis grammar.
    pub fn max_dim(&self) -> i64 {
        self.width.max(self.length)
    }

    pub fn contains(&self, c: Coord) -> bool {
        c.x >= 0 && c.x < self.width && c.y >= 0 && c.y < self.length
    }
}

/// The robot: initial cell, target cell, and its ordered motion primitives.
/// List order is significant; it fixes move indices `0..m-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobotSpec {
    pub initial: Coord,
    pub target: Coord,
    pub primitives: Vec<MotionPrimitive>,
}

/// One obstacle: initial cell and its ordered motion primitives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstacleSpec {
    pub initial: Coord,
    pub primitives: Vec<MotionPrimitive>,
}

/// A complete problem instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    pub workspace: Workspace,
    pub robot: RobotSpec,
    pub obstacles: Vec<ObstacleSpec>,
    /// Optional upper bound for the path-length search.
    pub max_path_length: Option<usize>,
}

impl ProblemInstance {
    pub fn obstacle_count(&self) -> usize {
        self.obstacles.len()
    }

    /// Number of robot moves, `m`.
    pub fn move_count(&self) -> usize {
        self.robot.primitives.len()
    }

    /// The bound used by the path-length search when none was supplied.
    /// Any shortest plan longer than `width + length` is pathological at the
    /// scale this tool targets.
    pub fn default_max_path_length(&self) -> usize {
        self.max_path_length
            .unwrap_or((self.workspace.width + self.workspace.length) as usize)
    }

    /// All invariant violations, empty when the instance is valid.
    pub fn validate(&self) -> Vec<String> {
        validate_problem(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// Position encode/decode failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositionError {
    CoordOutOfBounds { coord: Coord, workspace: Workspace },
    ScalarOutOfRange { scalar: i64, cells: i64 },
}

impl fmt::Display for PositionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositionError::CoordOutOfBounds { coord, workspace } => write!(
                f,
                "coordinate {} outside {}x{} workspace",
                coord, workspace.width, workspace.length
            ),
            PositionError::ScalarOutOfRange { scalar, cells } => {
                write!(f, "scalar position {} outside [0, {})", scalar, cells)
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PositionError {}

/// Scalar position of a cell: `y * width + x`.
pub fn encode_position(c: Coord, w: &Workspace) -> Result<i64, PositionError> {
    if !w.contains(c) {
        return Err(PositionError::CoordOutOfBounds {
            coord: c,
            workspace: *w,
        });
    }
    Ok(c.y * w.width + c.x)
}

/// Inverse of [`encode_position`].
pub fn decode_position(s: i64, w: &Workspace) -> Result<Coord, PositionError> {
    if s < 0 || s >= w.cells() {
        return Err(PositionError::ScalarOutOfRange {
            scalar: s,
            cells: w.cells(),
        });
    }
    let y = s / w.width;
    Ok(Coord::new(s - y * w.width, y))
}

fn validate_primitives(
    agent: &str,
    primitives: &[MotionPrimitive],
    w: &Workspace,
    out: &mut Vec<String>,
) {
    if primitives.is_empty() {
        out.push(format!("{} has no primitives", agent));
        return;
    }
    for (k, prim) in primitives.iter().enumerate() {
        let mut check_disp = |d: &Displacement, what: &str| {
            if d.dx.abs() >= w.width || d.dy.abs() >= w.length {
                out.push(format!(
                    "{} primitive {}: {} displacement ({},{}) spans the workspace",
                    agent, k, what, d.dx, d.dy
                ));
            }
        };
        check_disp(&prim.delta, "final");
        for d in &prim.intermediate {
            check_disp(d, "intermediate");
        }
        for (i, d) in prim.intermediate.iter().enumerate() {
            if *d == prim.delta {
                out.push(format!(
                    "{} primitive {}: final displacement repeated in intermediate set",
                    agent, k
                ));
            }
            if d.is_zero() {
                out.push(format!(
                    "{} primitive {}: zero displacement in intermediate set",
                    agent, k
                ));
            }
            if prim.intermediate[..i].contains(d) {
                out.push(format!(
                    "{} primitive {}: duplicate intermediate displacement ({},{})",
                    agent, k, d.dx, d.dy
                ));
            }
        }
        for (j, earlier) in primitives.iter().enumerate().take(k) {
            if prim.same_action(earlier) {
                out.push(format!(
                    "{} primitive {} duplicates primitive {}",
                    agent, k, j
                ));
            }
        }
    }
}

/// Collect every invariant violation in the instance; an empty list means the
/// instance is valid.
pub fn validate_problem(p: &ProblemInstance) -> Vec<String> {
    let mut out = Vec::new();
    let w = &p.workspace;
    if w.width < 1 {
        out.push(format!(
            "workspace width must be positive (got {})",
            w.width
        ));
    }
    if w.length < 1 {
        out.push(format!(
            "workspace length must be positive (got {})",
            w.length
        ));
    }
    if !out.is_empty() {
        // Nothing below is meaningful without a real workspace.
        return out;
    }
    if !w.contains(p.robot.initial) {
        out.push(format!("robot initial {} out of bounds", p.robot.initial));
    }
    if !w.contains(p.robot.target) {
        out.push(format!("robot target {} out of bounds", p.robot.target));
    }
    validate_primitives("robot", &p.robot.primitives, w, &mut out);
    for (i, obs) in p.obstacles.iter().enumerate() {
        if !w.contains(obs.initial) {
            out.push(format!(
                "obstacle {} initial {} out of bounds",
                i, obs.initial
            ));
        }
        validate_primitives(&format!("obstacle {}", i), &obs.primitives, w, &mut out);
        // The step-1 collision rule includes both agents' current cells, so a
        // shared start cell would invalidate every controller.
        if obs.initial == p.robot.initial {
            out.push(format!(
                "initial collision: obstacle {} starts at the robot's initial cell {}",
                i, obs.initial
            ));
        }
    }
    if let Some(0) = p.max_path_length {
        out.push("max_path_length must be positive".into());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{sample_5x7, sample_5x7_updown};
    use alloc::vec;

    #[test]
    fn encode_matches_known_cells() {
        let w = Workspace::new(5, 7);
        assert_eq!(encode_position(Coord::new(1, 1), &w).unwrap(), 6);
        assert_eq!(encode_position(Coord::new(2, 5), &w).unwrap(), 27);
        assert_eq!(encode_position(Coord::new(3, 5), &w).unwrap(), 28);
        assert_eq!(encode_position(Coord::new(4, 4), &w).unwrap(), 24);
        assert_eq!(
            encode_position(Coord::new(0, 0), &Workspace::new(9, 2)).unwrap(),
            0
        );
    }

    #[test]
    fn decode_matches_known_cells() {
        let w = Workspace::new(5, 7);
        assert_eq!(decode_position(24, &w).unwrap(), Coord::new(4, 4));
        assert_eq!(decode_position(27, &w).unwrap(), Coord::new(2, 5));
        assert_eq!(decode_position(0, &w).unwrap(), Coord::new(0, 0));
        assert!(decode_position(35, &w).is_err());
        assert!(decode_position(-1, &w).is_err());
        assert!(encode_position(Coord::new(5, 1), &w).is_err());
    }

    #[test]
    fn encode_decode_bijection_small_workspaces() {
        for width in 1..=10 {
            for length in 1..=10 {
                let w = Workspace::new(width, length);
                let mut seen = alloc::collections::BTreeSet::new();
                for y in 0..length {
                    for x in 0..width {
                        let c = Coord::new(x, y);
                        let s = encode_position(c, &w).unwrap();
                        assert!(s >= 0 && s < w.cells());
                        assert!(seen.insert(s), "{} not injective", c);
                        assert_eq!(decode_position(s, &w).unwrap(), c);
                    }
                }
                assert_eq!(seen.len() as i64, w.cells());
            }
        }
    }

    #[test]
    fn sample_instances_are_valid() {
        assert_eq!(sample_5x7().validate(), Vec::<String>::new());
        assert_eq!(sample_5x7_updown().validate(), Vec::<String>::new());
    }

    #[test]
    fn out_of_bounds_target_is_reported() {
        let mut p = sample_5x7();
        p.robot.target = Coord::new(5, 1);
        let violations = p.validate();
        assert_eq!(violations.len(), 1);
        assert!(violations[0].contains("target"), "{:?}", violations);
        assert!(violations[0].contains("out of bounds"));
    }

    #[test]
    fn empty_primitive_list_is_reported() {
        let mut p = sample_5x7();
        p.robot.primitives.clear();
        assert_eq!(p.validate(), vec![String::from("robot has no primitives")]);
    }

    #[test]
    fn initial_collision_is_reported() {
        let mut p = sample_5x7();
        p.obstacles[0].initial = p.robot.initial;
        let violations = p.validate();
        assert_eq!(violations.len(), 1);
        assert!(
            violations[0].starts_with("initial collision"),
            "{:?}",
            violations
        );
    }

    #[test]
    fn duplicate_primitives_are_reported() {
        let mut p = sample_5x7();
        let dup = p.robot.primitives[1].clone();
        p.robot.primitives.push(dup);
        let violations = p.validate();
        assert_eq!(violations.len(), 1);
        assert!(
            violations[0].contains("duplicates primitive 1"),
            "{:?}",
            violations
        );
    }

    #[test]
    fn primitive_shape_violations_are_reported() {
        let mut p = sample_5x7();
        p.robot.primitives[1].intermediate = vec![
            Displacement::ZERO,
            Displacement::new(0, 1),
            Displacement::new(2, 9),
        ];
        let violations = p.validate();
        assert!(violations.iter().any(|v| v.contains("zero displacement")));
        assert!(violations
            .iter()
            .any(|v| v.contains("final displacement repeated")));
        assert!(violations.iter().any(|v| v.contains("spans the workspace")));
    }

    #[test]
    fn zero_obstacle_instance_is_valid() {
        let p = ProblemInstance {
            workspace: Workspace::new(3, 3),
            robot: RobotSpec {
                initial: Coord::new(0, 0),
                target: Coord::new(0, 0),
                primitives: vec![MotionPrimitive::of(Displacement::ZERO)],
            },
            obstacles: vec![],
            max_path_length: None,
        };
        assert!(p.is_valid());
        assert_eq!(p.obstacle_count(), 0);
        assert_eq!(p.default_max_path_length(), 6);
    }
}
