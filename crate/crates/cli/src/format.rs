//! The on-disk problem-description format: a JSON document with coordinate
//! pairs as two-element arrays. `intermediate` may be omitted for primitives
//! that sweep nothing besides their endpoints.

use motionsynth_core::problem::{
    Coord, Displacement, MotionPrimitive, ObstacleSpec, ProblemInstance, RobotSpec, Workspace,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Serialize, Deserialize)]
struct ProblemDoc {
    workspace: WorkspaceDoc,
    robot: RobotDoc,
    #[serde(default)]
    obstacles: Vec<ObstacleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_path_length: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct WorkspaceDoc {
    width: i64,
    length: i64,
}

#[derive(Debug, Serialize, Deserialize)]
struct RobotDoc {
    initial: [i64; 2],
    target: [i64; 2],
    primitives: Vec<PrimitiveDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ObstacleDoc {
    initial: [i64; 2],
    primitives: Vec<PrimitiveDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PrimitiveDoc {
    #[serde(rename = "final")]
    final_: [i64; 2],
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    intermediate: Vec<[i64; 2]>,
}

#[derive(Debug, Error)]
pub enum ProblemFormatError {
    /// Syntax or schema violation; serde reports line and column.
    #[error("problem document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid problem:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
}

fn coord(pair: [i64; 2]) -> Coord {
    Coord::new(pair[0], pair[1])
}

fn displacement(pair: [i64; 2]) -> Displacement {
    Displacement::new(pair[0], pair[1])
}

fn primitive(doc: PrimitiveDoc) -> MotionPrimitive {
    MotionPrimitive {
        delta: displacement(doc.final_),
        intermediate: doc.intermediate.into_iter().map(displacement).collect(),
    }
}

/// Parse and validate a problem document.
pub fn parse_problem(text: &str) -> Result<ProblemInstance, ProblemFormatError> {
    let doc: ProblemDoc = serde_json::from_str(text)?;
    let instance = ProblemInstance {
        workspace: Workspace::new(doc.workspace.width, doc.workspace.length),
        robot: RobotSpec {
            initial: coord(doc.robot.initial),
            target: coord(doc.robot.target),
            primitives: doc.robot.primitives.into_iter().map(primitive).collect(),
        },
        obstacles: doc
            .obstacles
            .into_iter()
            .map(|o| ObstacleSpec {
                initial: coord(o.initial),
                primitives: o.primitives.into_iter().map(primitive).collect(),
            })
            .collect(),
        max_path_length: doc.max_path_length,
    };
    let violations = instance.validate();
    if !violations.is_empty() {
        return Err(ProblemFormatError::Invalid(violations));
    }
    Ok(instance)
}

/// Serialize an instance back into the document format.
pub fn serialize_problem(p: &ProblemInstance) -> String {
    let pair = |c: Coord| [c.x, c.y];
    let dpair = |d: Displacement| [d.dx, d.dy];
    let prim_doc = |prim: &MotionPrimitive| PrimitiveDoc {
        final_: dpair(prim.delta),
        intermediate: prim.intermediate.iter().copied().map(dpair).collect(),
    };
    let doc = ProblemDoc {
        workspace: WorkspaceDoc {
            width: p.workspace.width,
            length: p.workspace.length,
        },
        robot: RobotDoc {
            initial: pair(p.robot.initial),
            target: pair(p.robot.target),
            primitives: p.robot.primitives.iter().map(prim_doc).collect(),
        },
        obstacles: p
            .obstacles
            .iter()
            .map(|o| ObstacleDoc {
                initial: pair(o.initial),
                primitives: o.primitives.iter().map(prim_doc).collect(),
            })
            .collect(),
        max_path_length: p.max_path_length,
    };
    serde_json::to_string_pretty(&doc).expect("document serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "workspace": {"width": 5, "length": 7},
        "robot": {
            "initial": [1, 1],
            "target": [4, 4],
            "primitives": [
                {"final": [0, 0]},
                {"final": [0, 1]},
                {"final": [1, 0]},
                {"final": [0, -1]},
                {"final": [-1, 0]}
            ]
        },
        "obstacles": [
            {"initial": [2, 5], "primitives": [{"final": [0, 1]}, {"final": [0, -1]}]},
            {"initial": [3, 5], "primitives": [{"final": [0, 0]}, {"final": [0, 1]}, {"final": [0, -1]}]}
        ]
    }"#;

    #[test]
    fn parses_the_sample_document() {
        let p = parse_problem(SAMPLE).unwrap();
        assert_eq!(p.workspace, Workspace::new(5, 7));
        assert_eq!(p.robot.initial, Coord::new(1, 1));
        assert_eq!(p.robot.target, Coord::new(4, 4));
        assert_eq!(p.move_count(), 5);
        assert_eq!(p.obstacle_count(), 2);
        assert_eq!(p.obstacles[1].primitives.len(), 3);
        assert_eq!(p.max_path_length, None);
    }

    #[test]
    fn round_trips_structurally() {
        let p = parse_problem(SAMPLE).unwrap();
        let text = serialize_problem(&p);
        assert_eq!(parse_problem(&text).unwrap(), p);
    }

    #[test]
    fn zero_obstacle_document_is_valid() {
        let p = parse_problem(
            r#"{"workspace": {"width": 3, "length": 3},
                "robot": {"initial": [0,0], "target": [0,0], "primitives": [{"final": [0,0]}]},
                "obstacles": []}"#,
        )
        .unwrap();
        assert_eq!(p.obstacle_count(), 0);
    }

    #[test]
    fn intermediate_cells_parse_and_round_trip() {
        let p = parse_problem(
            r#"{"workspace": {"width": 4, "length": 4},
                "robot": {"initial": [0,0], "target": [3,3],
                          "primitives": [{"final": [1,1], "intermediate": [[0,1]]}]},
                "obstacles": []}"#,
        )
        .unwrap();
        assert_eq!(p.robot.primitives[0].intermediate.len(), 1);
        assert_eq!(parse_problem(&serialize_problem(&p)).unwrap(), p);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_problem("{\n  \"workspace\": {,}\n}").unwrap_err();
        let msg = format!("{}", err);
        assert!(msg.contains("line 2"), "{}", msg);
    }

    #[test]
    fn schema_violations_name_the_field() {
        let err = parse_problem(
            r#"{"workspace": {"width": 5, "length": 7},
                "robot": {"target": [4,4], "primitives": [{"final": [0,0]}]}}"#,
        )
        .unwrap_err();
        let msg = format!("{}", err);
        assert!(msg.contains("initial"), "{}", msg);
    }

    #[test]
    fn validation_failures_list_all_violations() {
        let err = parse_problem(
            r#"{"workspace": {"width": 5, "length": 7},
                "robot": {"initial": [1,1], "target": [9,9], "primitives": []},
                "obstacles": [{"initial": [1,1], "primitives": [{"final": [0,1]}]}]}"#,
        )
        .unwrap_err();
        let msg = format!("{}", err);
        assert!(msg.contains("target"), "{}", msg);
        assert!(msg.contains("no primitives"), "{}", msg);
        assert!(msg.contains("initial collision"), "{}", msg);
    }
}
