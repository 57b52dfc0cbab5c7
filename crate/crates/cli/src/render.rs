//! Character-grid rendering of episode traces.

use motionsynth_core::problem::{encode_position, ProblemInstance};
use motionsynth_core::semantics::{
    format_outcome, outcome_result, swept_scalars, AdversarySchedule, EpisodeOutcome,
};

/// Render one grid per time point, row `y = length-1` on top: `R` robot,
/// digits for obstacles, `T` target, `X` the shared cell(s) of the violating
/// step, `.` empty. Header lines carry the positions and the chosen move;
/// the final line is the RESULT.
pub fn render_trace(
    outcome: &EpisodeOutcome,
    sched: &AdversarySchedule,
    p: &ProblemInstance,
) -> String {
    let w = &p.workspace;
    let l = outcome.steps();
    let target = encode_position(p.robot.target, w).expect("validated instance");

    // Cells shared by the colliding pair's sweeps, marked on the arrival grid.
    let mut collision_cells: Vec<i64> = Vec::new();
    let mut collision_step = usize::MAX;
    if let Some(collision) = outcome.first_collision {
        collision_step = collision.step;
        let j = collision.step - 1;
        let robot_sweep = swept_scalars(
            outcome.robot_trace[j],
            &p.robot.primitives[outcome.robot_moves[j]],
            w,
        );
        let obs_sweep = swept_scalars(
            outcome.obstacle_traces[collision.obstacle][j],
            &p.obstacles[collision.obstacle].primitives[sched.moves[j][collision.obstacle]],
            w,
        );
        collision_cells = robot_sweep
            .into_iter()
            .filter(|s| obs_sweep.contains(s) && *s >= 0 && *s < w.cells())
            .collect();
    }

    let header_lines = format_outcome(outcome, p);
    let mut headers = header_lines.lines();
    let mut out = String::new();
    for j in 0..=l {
        out.push_str(headers.next().expect("one header per time point"));
        out.push('\n');
        for y in (0..w.length).rev() {
            for x in 0..w.width {
                let scalar = y * w.width + x;
                let cell = if j == collision_step && collision_cells.contains(&scalar) {
                    'X'
                } else if outcome.robot_trace[j] == scalar {
                    'R'
                } else if let Some(i) = outcome.obstacle_traces.iter().position(|t| t[j] == scalar)
                {
                    char::from_digit((i % 10) as u32, 10).expect("single digit")
                } else if scalar == target {
                    'T'
                } else {
                    '.'
                };
                out.push(cell);
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out.push_str(&format!("RESULT: {}\n", outcome_result(outcome)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_problem;
    use motionsynth_core::ast::parse_controller;
    use motionsynth_core::problem::Coord;
    use motionsynth_core::semantics::run_episode;

    fn sample_updown() -> ProblemInstance {
        parse_problem(
            r#"{"workspace": {"width": 5, "length": 7},
                "robot": {"initial": [1,1], "target": [4,4],
                          "primitives": [{"final": [0,0]}, {"final": [0,1]}, {"final": [1,0]},
                                         {"final": [0,-1]}, {"final": [-1,0]}]},
                "obstacles": [
                  {"initial": [2,5], "primitives": [{"final": [0,1]}, {"final": [0,-1]}]},
                  {"initial": [3,5], "primitives": [{"final": [0,1]}, {"final": [0,-1]}]}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn initial_grid_layout() {
        let p = sample_updown();
        let c = parse_controller(
            "(define-fun move ((p-r Int) (p-o0 Int) (p-o1 Int)) Int (ite (<= (get-x p-r) 3) 2 1))",
            &p,
        )
        .unwrap();
        let sched = AdversarySchedule {
            moves: vec![vec![1, 1]; 6],
        };
        let outcome = run_episode(&p, &c, &sched, 6).unwrap();
        let text = render_trace(&outcome, &sched, &p);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "0: robot=(1,1) obstacles=[(2,5),(3,5)] move=2");
        // Rows top to bottom are y = 6..0.
        assert_eq!(lines[1], ".....");
        assert_eq!(lines[2], "..01.");
        assert_eq!(lines[3], "....T");
        assert_eq!(lines[4], ".....");
        assert_eq!(lines[5], ".....");
        assert_eq!(lines[6], ".R...");
        assert_eq!(lines[7], ".....");
        assert_eq!(text.lines().last().unwrap(), "RESULT: target");
        // The winning final grid shows the robot on the target cell.
        let final_grid: Vec<&str> = lines[lines.len() - 9..lines.len() - 1].to_vec();
        assert!(final_grid.iter().any(|row| row.contains('R')));
        assert!(!text.contains('T') || text.matches('T').count() < 7 * 7);
    }

    #[test]
    fn collision_is_marked_with_x() {
        let mut p = sample_updown();
        p.obstacles[0].initial = Coord::new(1, 3);
        let c = parse_controller(
            "(define-fun move ((p-r Int) (p-o0 Int) (p-o1 Int)) Int 1)",
            &p,
        )
        .unwrap();
        let sched = AdversarySchedule {
            moves: vec![vec![1, 1]; 6],
        };
        let outcome = run_episode(&p, &c, &sched, 6).unwrap();
        let text = render_trace(&outcome, &sched, &p);
        assert!(text.contains('X'), "{}", text);
        assert!(
            text.ends_with("RESULT: collision@1,obstacle=0\n"),
            "{}",
            text
        );
    }

    #[test]
    fn zero_obstacle_grids_have_only_robot_and_target() {
        let p = parse_problem(
            r#"{"workspace": {"width": 3, "length": 2},
                "robot": {"initial": [0,0], "target": [2,0],
                          "primitives": [{"final": [1,0]}]},
                "obstacles": []}"#,
        )
        .unwrap();
        let c = parse_controller("(define-fun move ((p-r Int)) Int 0)", &p).unwrap();
        let sched = AdversarySchedule {
            moves: vec![vec![]; 2],
        };
        let outcome = run_episode(&p, &c, &sched, 2).unwrap();
        let text = render_trace(&outcome, &sched, &p);
        for line in text.lines() {
            if line.len() == 3 && !line.contains(':') {
                assert!(line.chars().all(|ch| "RT.".contains(ch)), "{}", line);
            }
        }
        assert!(text.ends_with("RESULT: target\n"));
    }
}
