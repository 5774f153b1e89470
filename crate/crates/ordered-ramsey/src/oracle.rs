//! Brute-force computation of ordered Ramsey numbers at tiny scale, used as
//! the independent ground truth for the SAT pipeline.
//!
//! The search is a depth-first traversal over the edges of `K_N` in
//! lexicographic order, committing each edge to red then blue and pruning
//! any partial coloring whose committed edges already complete a forbidden
//! monochromatic copy.

use thiserror::Error;

use crate::model::{
    edge_rank, find_embedding_with, pair_count, Color, EdgeColoring, OrderedPattern,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("N={n} exceeds the oracle budget of {max} vertices; use the SAT path instead")]
    BeyondBudget { n: usize, max: usize },
}

/// Resource cap for the exhaustive search.
#[derive(Debug, Clone)]
pub struct OracleBudget {
    pub max_vertices: usize,
    /// Optional cap on search-tree nodes (edge-color commitments).
    pub node_limit: Option<u64>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 8, node_limit: None }
    }
}

/// Result of a single good-coloring search at fixed `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringSearch {
    Found(EdgeColoring),
    NoneExists,
    /// Node limit hit before the search completed.
    Exhausted,
}

/// Result of a full Ramsey-number search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleRamsey {
    Exact {
        value: usize,
        /// A verified good coloring on `value - 1` vertices.
        witness: EdgeColoring,
        /// Search-tree nodes over the whole ascent.
        nodes: u64,
    },
    /// Budget exhausted before the first uncolorable `N` was reached.
    Unknown,
}

struct Search<'a> {
    n: usize,
    red: &'a OrderedPattern,
    blue: &'a OrderedPattern,
    colors: Vec<Option<Color>>,
    nodes: u64,
    node_limit: Option<u64>,
}

enum Step {
    Found,
    NoneHere,
    Exhausted,
}

impl Search<'_> {
    /// Does the committed part of the coloring contain a monochromatic copy
    /// of the forbidden pattern for `color`?
    fn completes_forbidden(&self, color: Color) -> bool {
        let pattern = match color {
            Color::Red => self.red,
            Color::Blue => self.blue,
        };
        if pattern.vertex_count() > self.n {
            return false;
        }
        let ok = |u: usize, v: usize| {
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            self.colors[edge_rank(self.n, u, v)] == Some(color)
        };
        find_embedding_with(pattern, self.n, &ok).is_some()
    }

    fn dfs(&mut self, position: usize) -> Step {
        if position == self.colors.len() {
            return Step::Found;
        }
        for color in [Color::Red, Color::Blue] {
            self.nodes += 1;
            if self.node_limit.is_some_and(|limit| self.nodes > limit) {
                return Step::Exhausted;
            }
            self.colors[position] = Some(color);
            if !self.completes_forbidden(color) {
                match self.dfs(position + 1) {
                    Step::NoneHere => {}
                    done => return done,
                }
            }
        }
        self.colors[position] = None;
        Step::NoneHere
    }
}

/// Searches for a coloring of `K_N` with no red copy of `red_pattern` and no
/// blue copy of `blue_pattern`. `NoneExists` is definitive.
pub fn exists_good_coloring(
    red_pattern: &OrderedPattern,
    blue_pattern: &OrderedPattern,
    n: usize,
    budget: &OracleBudget,
) -> Result<ColoringSearch, OracleError> {
    let (outcome, _) = exists_good_coloring_counted(red_pattern, blue_pattern, n, budget)?;
    Ok(outcome)
}

fn exists_good_coloring_counted(
    red_pattern: &OrderedPattern,
    blue_pattern: &OrderedPattern,
    n: usize,
    budget: &OracleBudget,
) -> Result<(ColoringSearch, u64), OracleError> {
    if n > budget.max_vertices {
        return Err(OracleError::BeyondBudget { n, max: budget.max_vertices });
    }
    let mut search = Search {
        n,
        red: red_pattern,
        blue: blue_pattern,
        colors: vec![None; pair_count(n)],
        nodes: 0,
        node_limit: budget.node_limit,
    };
    let outcome = match search.dfs(0) {
        Step::Found => {
            let coloring = EdgeColoring::from_fn(n, |i, j| {
                search.colors[edge_rank(n, i, j)].expect("search filled every edge")
            });
            debug_assert!(crate::model::is_good_coloring(&coloring, red_pattern, blue_pattern));
            ColoringSearch::Found(coloring)
        }
        Step::NoneHere => ColoringSearch::NoneExists,
        Step::Exhausted => ColoringSearch::Exhausted,
    };
    Ok((outcome, search.nodes))
}

/// Smallest `N` such that no good coloring of `K_N` exists, found by
/// ascending from `max(|red|, |blue|)`. Returns [`OracleRamsey::Unknown`]
/// when the budget runs out first.
pub fn oracle_ramsey(
    red_pattern: &OrderedPattern,
    blue_pattern: &OrderedPattern,
    budget: &OracleBudget,
) -> OracleRamsey {
    let start = red_pattern.vertex_count().max(blue_pattern.vertex_count());
    let mut witness = trivial_witness(red_pattern, blue_pattern, start - 1);
    let mut total_nodes = 0u64;
    let mut n = start;
    loop {
        match exists_good_coloring_counted(red_pattern, blue_pattern, n, budget) {
            Err(OracleError::BeyondBudget { .. }) => return OracleRamsey::Unknown,
            Ok((outcome, nodes)) => {
                total_nodes += nodes;
                match outcome {
                    ColoringSearch::Found(coloring) => {
                        witness = coloring;
                        n += 1;
                    }
                    ColoringSearch::NoneExists => {
                        return OracleRamsey::Exact { value: n, witness, nodes: total_nodes }
                    }
                    ColoringSearch::Exhausted => return OracleRamsey::Unknown,
                }
            }
        }
    }
}

/// A good coloring of `K_n` when `n` is smaller than the larger pattern: the
/// larger pattern cannot embed, and a coloring monochromatic in its color
/// leaves no edges at all for the other pattern.
fn trivial_witness(
    red_pattern: &OrderedPattern,
    blue_pattern: &OrderedPattern,
    n: usize,
) -> EdgeColoring {
    let color = if red_pattern.vertex_count() >= blue_pattern.vertex_count() {
        Color::Red
    } else {
        Color::Blue
    };
    let coloring = EdgeColoring::monochromatic(n, color);
    debug_assert!(crate::model::is_good_coloring(&coloring, red_pattern, blue_pattern));
    coloring
}
