//! Exact ordered Ramsey numbers of small ordered graphs.
//!
//! An ordered graph fixes a linear order on its vertices; containment is
//! order-preserving (a strictly increasing vertex map sending pattern edges
//! to host edges). The ordered Ramsey number `r_<(H1, H2)` is the least `N`
//! such that every red/blue coloring of the ordered complete graph `K_N`
//! contains a red ordered copy of `H1` or a blue ordered copy of `H2`.
//!
//! The crate computes such numbers exactly by encoding "`K_N` admits a
//! coloring avoiding both patterns" into CNF and deciding satisfiability
//! with an embedded CDCL solver, ascending `N` until the first UNSAT. A
//! brute-force backtracking oracle over colorings provides an independent
//! ground truth at tiny scale, and explicit extremal constructions certify
//! the lower bounds that admit closed-form witnesses.

pub mod compute;
pub mod constructions;
pub mod encode;
pub mod model;
pub mod oracle;
pub mod solver;

pub use compute::{compute_ordered_ramsey, reproduce_table1, ComputeOptions, Method, RamseyResult};
pub use encode::{encode_no_mono, read_dimacs, write_dimacs, CnfFormula, EdgeVarMap};
pub use model::{
    catalog, find_monochromatic_copy, Color, EdgeColoring, Embedding, OrderedPattern,
};
pub use oracle::{exists_good_coloring, oracle_ramsey, OracleBudget};
pub use solver::{external_solve, solve, SolveOutcome, SolverConfig, Verdict};
