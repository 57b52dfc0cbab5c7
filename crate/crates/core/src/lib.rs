//! Core library for compiling reactive motion-planning problems on discrete
//! grids into syntax-guided synthesis (SyGuS) specifications, and for solving
//! those problems directly.
//!
//! The setting is a bounded two-player reachability game: a robot must reach a
//! target cell in exactly `l` steps while adversarial obstacles move each step.
//! Everything the synthesized controller may observe is the current scalar
//! position of every agent.
//!
//! The crate is split along the pipeline:
//!
//! - [`problem`] — the formal model (workspace, motion primitives, agents) and
//!   its validation rules, plus the scalar position encoding.
//! - [`semantics`] — reference execution semantics for one step and for whole
//!   episodes, observationally identical to the functions the emitter writes.
//! - [`ast`] — controller abstract syntax conforming to the synthesis grammar,
//!   with evaluation, depth measurement, printing, and parsing.
//! - [`sexpr`] — the small s-expression layer shared by the emitter and the
//!   controller parser, including token-stream comparison.
//! - [`emitter`] — generation of complete SyGuS-IF specifications and a term
//!   evaluator over the emitted definitions for differential testing.
//! - [`solver`] — the built-in enumerative CEGIS synthesizer with exhaustive
//!   verification by reachable-state search and iterative deepening.
//! - [`oracle`] — independent brute-force authority: backward induction over
//!   the game and schedule-enumeration verification.
//!
//! The crate is `no_std`-compatible (requires `alloc`); enable the default
//! `std` feature for `std::error::Error` impls.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod ast;
pub mod emitter;
pub mod oracle;
pub mod problem;
pub mod semantics;
pub mod sexpr;
pub mod solver;

#[cfg(test)]
pub(crate) mod testutil;

pub use ast::{eval_controller, parse_controller, print_controller, ControllerAst};
pub use problem::{ProblemInstance, Workspace};
pub use semantics::{run_episode, AdversarySchedule, EpisodeOutcome, SystemState};
pub use solver::{solve, SolveOutcome, SynthesisResult, VerificationVerdict};
