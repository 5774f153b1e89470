//! Explicit extremal colorings certifying lower bounds, and SAT-backed
//! search for clique-avoiding colorings.
//!
//! Every builder re-verifies its output with the containment checker before
//! returning it; a construction is never trusted on paper alone.

use thiserror::Error;

use crate::encode::{assignment_to_coloring, encode_no_mono, EncodeError};
use crate::model::{catalog, find_monochromatic_copy, Color, EdgeColoring, OrderedPattern};
use crate::solver::{solve, SolveOutcome, SolverConfig, Verdict};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("clique sizes must be at least 2 (got m={m}, n={n})")]
    CliqueTooSmall { m: usize, n: usize },
    #[error("block-Z coloring contains a {color:?} K_{size}")]
    BadZColoring { color: Color, size: usize },
    #[error("construction failed verification: {color:?} copy of `{pattern}` found")]
    Verification { pattern: String, color: Color },
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error("solver gave up before a verdict")]
    SolverIncomplete,
}

fn assert_avoids(coloring: &EdgeColoring, pattern: &OrderedPattern, color: Color, what: &str) {
    let copy = find_monochromatic_copy(coloring, pattern, color).expect("pattern fits");
    assert!(copy.is_none(), "{what} contains a {color:?} copy of {pattern}");
}

/// The five-vertex coloring whose red edges form the cycle
/// 0-1-2-3-4-0 and whose chords are blue. Neither color contains a
/// triangle, so it witnesses that two-coloring K_5 can avoid monochromatic
/// K_3 — the block-Z coloring for the pendant construction at m = n = 3.
pub fn pentagon() -> EdgeColoring {
    let c = EdgeColoring::from_red_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        .expect("edges in range");
    let k3 = catalog("k3").expect("catalog");
    assert_avoids(&c, &k3, Color::Red, "pentagon");
    assert_avoids(&c, &k3, Color::Blue, "pentagon");
    c
}

/// The K_5 coloring avoiding both colors of the disjoint-interval matching
/// (all edges from the lowest vertex red, plus the edge between the next
/// two; everything else blue).
pub fn build_fig2() -> EdgeColoring {
    // quoted 1-indexed red edges: (1,2),(1,3),(1,4),(1,5),(2,3)
    let c = EdgeColoring::from_red_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)])
        .expect("edges in range");
    let pattern = catalog("k2uk2-a").expect("catalog");
    assert_avoids(&c, &pattern, Color::Red, "fig2 coloring");
    assert_avoids(&c, &pattern, Color::Blue, "fig2 coloring");
    c
}

/// The K_5 coloring avoiding both colors of the nested matching (all edges
/// at the lowest and highest vertices red, the middle triangle blue).
pub fn build_fig5() -> EdgeColoring {
    // 1-indexed: every edge from 1 red, every edge from 5 red, triangle {2,3,4} blue
    let c = EdgeColoring::from_fn(5, |i, j| {
        if i == 0 || j == 4 {
            Color::Red
        } else {
            Color::Blue
        }
    });
    let pattern = catalog("k2uk2-c").expect("catalog");
    assert_avoids(&c, &pattern, Color::Red, "fig5 coloring");
    assert_avoids(&c, &pattern, Color::Blue, "fig5 coloring");
    c
}

/// Inputs to the pendant lower-bound construction: clique sizes `m`, `n` and
/// a coloring of block Z with no red K_m and no blue K_n. The classical
/// Ramsey number `R(m, n)` is implicitly `|Z| + 1`; the construction never
/// consults a Ramsey-number table.
#[derive(Debug, Clone)]
pub struct PendantConstructionSpec {
    m: usize,
    n: usize,
    z_coloring: EdgeColoring,
}

impl PendantConstructionSpec {
    pub fn new(
        m: usize,
        n: usize,
        z_coloring: EdgeColoring,
    ) -> Result<PendantConstructionSpec, ConstructionError> {
        if m < 2 || n < 2 {
            return Err(ConstructionError::CliqueTooSmall { m, n });
        }
        let k_m = catalog(&format!("k{m}")).expect("catalog");
        let k_n = catalog(&format!("k{n}")).expect("catalog");
        if z_coloring.vertex_count() >= m
            && find_monochromatic_copy(&z_coloring, &k_m, Color::Red)
                .expect("size checked")
                .is_some()
        {
            return Err(ConstructionError::BadZColoring { color: Color::Red, size: m });
        }
        if z_coloring.vertex_count() >= n
            && find_monochromatic_copy(&z_coloring, &k_n, Color::Blue)
                .expect("size checked")
                .is_some()
        {
            return Err(ConstructionError::BadZColoring { color: Color::Blue, size: n });
        }
        Ok(PendantConstructionSpec { m, n, z_coloring })
    }
}

/// Builds the lower-bound coloring for the complete-with-pendant theorem on
/// `|Z| + m + n - 1` vertices and verifies it avoids a red `pendant-k<m>`
/// and a blue `pendant-k<n>`.
///
/// Vertex layout in ascending order is `1 < X < Y < Z` with `|X| = m - 1`
/// internally red, `|Y| = n - 1` internally blue, and Z the supplied
/// coloring. Cross edges: Z-X blue, Y-X blue, X-1 red, Z-Y red, Z-1 red,
/// Y-1 blue.
pub fn build_pendant_construction(
    spec: &PendantConstructionSpec,
) -> Result<EdgeColoring, ConstructionError> {
    let (m, n) = (spec.m, spec.n);
    let z_size = spec.z_coloring.vertex_count();
    let total = 1 + (m - 1) + (n - 1) + z_size;

    // block of a vertex: 0 = the pendant vertex, 1 = X, 2 = Y, 3 = Z
    let x_start = 1;
    let y_start = x_start + (m - 1);
    let z_start = y_start + (n - 1);
    let block = |v: usize| -> usize {
        if v == 0 {
            0
        } else if v < y_start {
            1
        } else if v < z_start {
            2
        } else {
            3
        }
    };

    let coloring = EdgeColoring::from_fn(total, |i, j| {
        match (block(i), block(j)) {
            (1, 1) => Color::Red,                              // X internally red
            (2, 2) => Color::Blue,                             // Y internally blue
            (3, 3) => spec.z_coloring.color(i - z_start, j - z_start),
            (0, 1) => Color::Red,                              // X to 1 red
            (0, 2) => Color::Blue,                             // Y to 1 blue
            (0, 3) => Color::Red,                              // Z to 1 red
            (1, 2) => Color::Blue,                             // Y and X blue
            (1, 3) => Color::Blue,                             // Z and X blue
            (2, 3) => Color::Red,                              // Z and Y red
            _ => unreachable!("blocks are ordered"),
        }
    });

    for (size, color) in [(m, Color::Red), (n, Color::Blue)] {
        let pattern = catalog(&format!("pendant-k{size}")).expect("catalog");
        if pattern.vertex_count() <= total
            && find_monochromatic_copy(&coloring, &pattern, color)
                .expect("size checked")
                .is_some()
        {
            return Err(ConstructionError::Verification {
                pattern: pattern.to_string(),
                color,
            });
        }
    }
    Ok(coloring)
}

/// Searches for a coloring of `K_size` with no red K_m and no blue K_n via
/// the SAT pipeline (for complete patterns ordered containment coincides
/// with unordered containment). `None` means no such coloring exists.
pub fn find_extremal_clique_coloring(
    m: usize,
    n: usize,
    size: usize,
    cfg: &SolverConfig,
) -> Result<Option<EdgeColoring>, ConstructionError> {
    if m < 2 || n < 2 {
        return Err(ConstructionError::CliqueTooSmall { m, n });
    }
    // below the smaller clique any monochromatic coloring works; below the
    // larger one, paint everything in the color whose clique cannot fit
    if size < m {
        return Ok(Some(EdgeColoring::monochromatic(size, Color::Red)));
    }
    if size < n {
        return Ok(Some(EdgeColoring::monochromatic(size, Color::Blue)));
    }
    let k_m = catalog(&format!("k{m}")).expect("catalog");
    let k_n = catalog(&format!("k{n}")).expect("catalog");
    let formula = encode_no_mono(&k_m, &k_n, size)?;
    let SolveOutcome { verdict, model, .. } = solve(&formula, cfg);
    match verdict {
        Verdict::Sat => {
            let coloring =
                assignment_to_coloring(size, &model.expect("Sat carries a model"))?;
            assert_avoids(&coloring, &k_m, Color::Red, "extremal clique coloring");
            assert_avoids(&coloring, &k_n, Color::Blue, "extremal clique coloring");
            Ok(Some(coloring))
        }
        Verdict::Unsat => Ok(None),
        Verdict::Unknown => Err(ConstructionError::SolverIncomplete),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::is_good_coloring;

    #[test]
    fn fig2_red_edges_match_the_quoted_construction() {
        let c = build_fig2();
        assert_eq!(c.vertex_count(), 5);
        let red: Vec<(usize, usize)> =
            c.edges().filter(|&(_, col)| col == Color::Red).map(|(e, _)| e).collect();
        assert_eq!(red, vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)]);
    }

    #[test]
    fn fig5_shape() {
        let c = build_fig5();
        assert_eq!(c.vertex_count(), 5);
        for j in 1..5 {
            assert_eq!(c.color(0, j), Color::Red);
            if j < 4 {
                assert_eq!(c.color(j, 4), Color::Red);
            }
        }
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(c.color(i, j), Color::Blue);
        }
    }

    #[test]
    fn figure_colorings_roundtrip_through_text() {
        for c in [build_fig2(), build_fig5()] {
            let text = c.to_string();
            assert_eq!(text.parse::<EdgeColoring>().unwrap(), c);
        }
    }

    #[test]
    fn pendant_construction_at_three_three() {
        let spec = PendantConstructionSpec::new(3, 3, pentagon()).unwrap();
        let c = build_pendant_construction(&spec).unwrap();
        assert_eq!(c.vertex_count(), 10); // |Z| + m + n - 1
        let p = catalog("pendant-k3").unwrap();
        assert!(is_good_coloring(&c, &p, &p));
    }

    #[test]
    fn pendant_construction_degenerate_two_two() {
        // an empty Z block is fine; the result lives on m + n - 1 = 3 vertices
        let empty_z = EdgeColoring::monochromatic(0, Color::Red);
        let spec = PendantConstructionSpec::new(2, 2, empty_z).unwrap();
        let c = build_pendant_construction(&spec).unwrap();
        assert_eq!(c.vertex_count(), 3);
        let p = catalog("pendant-k2").unwrap();
        assert!(is_good_coloring(&c, &p, &p));
    }

    #[test]
    fn pendant_spec_rejects_bad_blocks() {
        assert!(matches!(
            PendantConstructionSpec::new(1, 3, pentagon()),
            Err(ConstructionError::CliqueTooSmall { .. })
        ));
        let all_red = EdgeColoring::monochromatic(5, Color::Red);
        assert!(matches!(
            PendantConstructionSpec::new(3, 3, all_red),
            Err(ConstructionError::BadZColoring { color: Color::Red, size: 3 })
        ));
    }

    #[test]
    fn extremal_triangle_colorings() {
        let cfg = SolverConfig::default();
        let at5 = find_extremal_clique_coloring(3, 3, 5, &cfg).unwrap();
        assert!(at5.is_some());
        let at6 = find_extremal_clique_coloring(3, 3, 6, &cfg).unwrap();
        assert!(at6.is_none());
    }

    #[test]
    fn pendant_construction_with_sat_found_z_for_three_four() {
        // R(3,4) = 9, so an 8-vertex Z exists; the construction lands on
        // K_14 = K_{|Z| + m + n - 1}
        let cfg = SolverConfig::default();
        let z = find_extremal_clique_coloring(3, 4, 8, &cfg).unwrap().expect("R(3,4) = 9");
        let spec = PendantConstructionSpec::new(3, 4, z).unwrap();
        let c = build_pendant_construction(&spec).unwrap();
        assert_eq!(c.vertex_count(), 14);
        let red = catalog("pendant-k3").unwrap();
        let blue = catalog("pendant-k4").unwrap();
        assert!(is_good_coloring(&c, &red, &blue));
    }
}
