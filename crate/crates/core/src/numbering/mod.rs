//! The acceptable numbering `φ`: programs are terms of a small strict
//! functional language, indices are their numeric codes.

pub mod build;
pub mod code;
pub mod construct;
pub mod data;
pub mod eval;
pub mod nat;
pub mod sexpr;
pub mod term;

pub use construct::{
    c_to_w, c_to_w_program, constant, decide_c, enumerate_w, ind, ind_code, krt, ort, ort_member, pad, smn, unind, unpad,
    Decision, IndexError,
};
pub use eval::{eval, run, EvalOutcome};
pub use nat::Nat;
pub use term::{Prim, Term};
