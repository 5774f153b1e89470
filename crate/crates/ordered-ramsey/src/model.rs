//! Ordered graphs, two-colorings of ordered complete graphs, and
//! order-preserving monochromatic containment.
//!
//! Vertices are 0-indexed internally. The single-line text formats are
//!
//! ```text
//! n=4; edges=0-2,1-3              (pattern)
//! N=5; RRBR RBB BR B              (coloring, R/B per edge in lexicographic order)
//! ```
//!
//! and are whitespace-insensitive on input.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One of the two edge colors. The CNF encoding maps TRUE to `Red`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    /// The other color.
    pub fn flipped(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Red => write!(f, "R"),
            Color::Blue => write!(f, "B"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("a pattern needs at least one vertex")]
    EmptyPattern,
    #[error("edge ({i}, {j}) is not a valid edge on {n} vertices (need i < j < n)")]
    BadEdge { i: usize, j: usize, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("unknown pattern name `{0}`; valid names: {}", catalog_names())]
    UnknownPattern(String),
    #[error("pattern on {pattern} vertices does not fit in K_{host}")]
    PatternTooLarge { pattern: usize, host: usize },
    #[error("invalid pattern text: {0}")]
    ParsePattern(String),
    #[error("invalid coloring text: {0}")]
    ParseColoring(String),
}

/// Number of unordered pairs on `n` vertices.
pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Lexicographic rank of the edge `(i, j)` with `i < j < n` among all edges
/// of `K_n`: `(0,1) -> 0`, `(0,2) -> 1`, ..., `(n-2,n-1) -> C(n,2)-1`.
pub(crate) fn edge_rank(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Inverse of [`edge_rank`].
pub(crate) fn edge_of_rank(n: usize, rank: usize) -> (usize, usize) {
    debug_assert!(rank < pair_count(n));
    let mut i = 0;
    let mut base = 0;
    while base + (n - 1 - i) <= rank {
        base += n - 1 - i;
        i += 1;
    }
    (i, i + 1 + (rank - base))
}

/// An ordered graph on `n` linearly ordered vertices `0..n`: the pattern we
/// forbid as a monochromatic copy. Isolated vertices are allowed and consume
/// an embedding slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPattern {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl OrderedPattern {
    /// Builds a pattern from an edge list. Edges may be given in either
    /// orientation; they are stored normalized (`i < j`) and sorted.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::EmptyPattern);
        }
        let mut normalized = Vec::new();
        for (a, b) in edges {
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if a == b || j >= n {
                return Err(ModelError::BadEdge { i: a, j: b, n });
            }
            normalized.push((i, j));
        }
        normalized.sort_unstable();
        for w in normalized.windows(2) {
            if w[0] == w[1] {
                return Err(ModelError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        Ok(OrderedPattern { n, edges: normalized })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edges in lexicographic order, each with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Relabels vertex `v` to `n-1-v`, i.e. reads the ordering backwards.
    pub fn reversed(&self) -> OrderedPattern {
        let n = self.n;
        let edges = self.edges.iter().map(|&(i, j)| (n - 1 - j, n - 1 - i));
        OrderedPattern::new(n, edges).expect("relabeling preserves validity")
    }

    /// True when `self` and `other` have equal vertex counts and every edge
    /// of `self` is an edge of `other`.
    pub fn is_edge_subset_of(&self, other: &OrderedPattern) -> bool {
        self.n == other.n && self.edges.iter().all(|e| other.edges.binary_search(e).is_ok())
    }

    /// For each vertex `k`, the earlier endpoints `a < k` with `(a, k)` an edge.
    /// This is the shape the embedding search consumes.
    fn back_edges(&self) -> Vec<Vec<usize>> {
        let mut back = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            back[j].push(i);
        }
        back
    }
}

impl fmt::Display for OrderedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; edges=", self.n)?;
        for (idx, (i, j)) in self.edges.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}-{j}")?;
        }
        Ok(())
    }
}

impl FromStr for OrderedPattern {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, ModelError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = compact
            .strip_prefix("n=")
            .ok_or_else(|| ModelError::ParsePattern(format!("expected `n=<n>; edges=...`, got `{s}`")))?;
        let (n_str, rest) = rest
            .split_once(';')
            .ok_or_else(|| ModelError::ParsePattern("missing `;` after vertex count".into()))?;
        let n: usize = n_str
            .parse()
            .map_err(|_| ModelError::ParsePattern(format!("bad vertex count `{n_str}`")))?;
        let edges_str = rest
            .strip_prefix("edges=")
            .ok_or_else(|| ModelError::ParsePattern("missing `edges=` section".into()))?;
        let mut edges = Vec::new();
        if !edges_str.is_empty() {
            for tok in edges_str.split(',') {
                let (i, j) = tok
                    .split_once('-')
                    .ok_or_else(|| ModelError::ParsePattern(format!("bad edge token `{tok}`")))?;
                let i: usize = i
                    .parse()
                    .map_err(|_| ModelError::ParsePattern(format!("bad endpoint `{i}`")))?;
                let j: usize = j
                    .parse()
                    .map_err(|_| ModelError::ParsePattern(format!("bad endpoint `{j}`")))?;
                edges.push((i, j));
            }
        }
        OrderedPattern::new(n, edges)
    }
}

/// The list shown in catalog errors and `patterns list`.
pub fn catalog_names() -> String {
    "k2uk2-a, k2uk2-b, k2uk2-c, k4e-miss-<a>-<b> (0<=a<b<=3), pan3-a, pan3-b, pan3-c, \
     path3, k<m>, pendant-k<m>"
        .to_string()
}

/// Resolves a pattern identifier to its ordered pattern (0-indexed).
///
/// Fixed names cover the three orderings of the 4-vertex perfect matching
/// (`k2uk2-a/b/c`), the six orderings of the diamond indexed by missing edge
/// (`k4e-miss-a-b`), the three orderings of the 3-pan (`pan3-a/b/c`) and the
/// monotone 3-path (`path3`). `k<m>` is the complete graph on `m` vertices
/// and `pendant-k<m>` the complete graph on `{1..m}` plus the edge `(0, 1)`.
pub fn catalog(name: &str) -> Result<OrderedPattern, ModelError> {
    let p = |n, edges: &[(usize, usize)]| OrderedPattern::new(n, edges.iter().copied());
    match name {
        "k2uk2-a" => return p(4, &[(0, 1), (2, 3)]),
        "k2uk2-b" => return p(4, &[(0, 2), (1, 3)]),
        "k2uk2-c" => return p(4, &[(0, 3), (1, 2)]),
        "pan3-a" => return p(4, &[(0, 3), (1, 2), (1, 3), (2, 3)]),
        "pan3-b" => return p(4, &[(0, 2), (1, 2), (1, 3), (2, 3)]),
        "pan3-c" => return p(4, &[(0, 1), (1, 2), (1, 3), (2, 3)]),
        "path3" => return p(3, &[(0, 1), (1, 2)]),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("k4e-miss-") {
        if let Some((a, b)) = rest.split_once('-') {
            if let (Ok(a), Ok(b)) = (a.parse::<usize>(), b.parse::<usize>()) {
                if a < b && b <= 3 {
                    let edges = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&e| e != (a, b));
                    return OrderedPattern::new(4, edges);
                }
            }
        }
    } else if let Some(rest) = name.strip_prefix("pendant-k") {
        if let Ok(m) = rest.parse::<usize>() {
            if m >= 1 {
                let clique = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j)));
                return OrderedPattern::new(m + 1, std::iter::once((0, 1)).chain(clique));
            }
        }
    } else if let Some(rest) = name.strip_prefix('k') {
        if let Ok(m) = rest.parse::<usize>() {
            if m >= 1 {
                let edges = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j)));
                return OrderedPattern::new(m, edges);
            }
        }
    }
    Err(ModelError::UnknownPattern(name.to_string()))
}

/// Parses either a catalog name or the single-line pattern text format.
pub fn parse_pattern_arg(arg: &str) -> Result<OrderedPattern, ModelError> {
    if arg.trim_start().starts_with("n=") {
        arg.parse()
    } else {
        catalog(arg)
    }
}

/// A total red/blue coloring of the edges of the ordered complete graph `K_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    colors: Vec<Color>,
}

impl EdgeColoring {
    /// All edges in the given color. `n = 0` or `1` yields an empty edge set.
    pub fn monochromatic(n: usize, color: Color) -> EdgeColoring {
        EdgeColoring { n, colors: vec![color; pair_count(n)] }
    }

    /// Builds a coloring by evaluating `f(i, j)` on every edge `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Color) -> EdgeColoring {
        let mut colors = Vec::with_capacity(pair_count(n));
        for i in 0..n {
            for j in i + 1..n {
                colors.push(f(i, j));
            }
        }
        EdgeColoring { n, colors }
    }

    /// Colors the listed edges red and everything else blue.
    pub fn from_red_edges(
        n: usize,
        red: &[(usize, usize)],
    ) -> Result<EdgeColoring, ModelError> {
        let mut c = EdgeColoring::monochromatic(n, Color::Blue);
        for &(a, b) in red {
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if a == b || j >= n {
                return Err(ModelError::BadEdge { i: a, j: b, n });
            }
            c.colors[edge_rank(n, i, j)] = Color::Red;
        }
        Ok(c)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Color of the edge `{i, j}`; panics on `i == j` or out-of-range vertices.
    pub fn color(&self, i: usize, j: usize) -> Color {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        assert!(i < j && j < self.n, "edge ({i}, {j}) out of range for K_{}", self.n);
        self.colors[edge_rank(self.n, i, j)]
    }

    pub fn set_color(&mut self, i: usize, j: usize, color: Color) {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        assert!(i < j && j < self.n, "edge ({i}, {j}) out of range for K_{}", self.n);
        self.colors[edge_rank(self.n, i, j)] = color;
    }

    /// Relabels vertex `v` to `N-1-v`; colors travel with their edges.
    pub fn reversed(&self) -> EdgeColoring {
        let n = self.n;
        EdgeColoring::from_fn(n, |i, j| self.color(n - 1 - j, n - 1 - i))
    }

    /// Swaps red and blue on every edge.
    pub fn color_swapped(&self) -> EdgeColoring {
        EdgeColoring {
            n: self.n,
            colors: self.colors.iter().map(|c| c.flipped()).collect(),
        }
    }

    /// Edges with their colors in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), Color)> + '_ {
        self.colors
            .iter()
            .enumerate()
            .map(|(r, &c)| (edge_of_rank(self.n, r), c))
    }

    pub(crate) fn colors(&self) -> &[Color] {
        &self.colors
    }
}

impl fmt::Display for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={};", self.n)?;
        // one group per first endpoint keeps the line readable
        for i in 0..self.n.saturating_sub(1) {
            write!(f, " ")?;
            for j in i + 1..self.n {
                write!(f, "{}", self.color(i, j))?;
            }
        }
        Ok(())
    }
}

impl FromStr for EdgeColoring {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, ModelError> {
        let trimmed = s.trim_start();
        let rest = trimmed
            .strip_prefix("N=")
            .ok_or_else(|| ModelError::ParseColoring("expected `N=<N>; R/B tokens`".into()))?;
        let (n_str, rest) = rest
            .split_once(';')
            .ok_or_else(|| ModelError::ParseColoring("missing `;` after vertex count".into()))?;
        let n: usize = n_str
            .trim()
            .parse()
            .map_err(|_| ModelError::ParseColoring(format!("bad vertex count `{n_str}`")))?;
        let mut colors = Vec::with_capacity(pair_count(n));
        for ch in rest.chars().filter(|c| !c.is_whitespace()) {
            match ch {
                'R' => colors.push(Color::Red),
                'B' => colors.push(Color::Blue),
                _ => {
                    return Err(ModelError::ParseColoring(format!("unexpected token `{ch}`")))
                }
            }
        }
        if colors.len() != pair_count(n) {
            return Err(ModelError::ParseColoring(format!(
                "expected {} color tokens for N={n}, got {}",
                pair_count(n),
                colors.len()
            )));
        }
        Ok(EdgeColoring { n, colors })
    }
}

/// A strictly increasing map from pattern vertices into host vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding(Vec<usize>);

impl Embedding {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Re-evaluates the embedding: strictly increasing, in range, and every
    /// pattern edge mapped to a host edge of the claimed color.
    pub fn witnesses_copy(
        &self,
        coloring: &EdgeColoring,
        pattern: &OrderedPattern,
        color: Color,
    ) -> bool {
        let phi = &self.0;
        phi.len() == pattern.vertex_count()
            && phi.windows(2).all(|w| w[0] < w[1])
            && phi.iter().all(|&v| v < coloring.vertex_count())
            && pattern
                .edges()
                .iter()
                .all(|&(a, b)| coloring.color(phi[a], phi[b]) == color)
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, v) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Backtracking search for a monotone embedding of `pattern` into a host on
/// `host_n` vertices where `edge_ok(u, v)` accepts each required edge image.
/// Candidates are tried in increasing order, so the first hit is the
/// lexicographically smallest embedding.
pub(crate) fn find_embedding_with(
    pattern: &OrderedPattern,
    host_n: usize,
    edge_ok: &dyn Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let n = pattern.vertex_count();
    if n > host_n {
        return None;
    }
    let back = pattern.back_edges();
    let mut phi: Vec<usize> = Vec::with_capacity(n);

    fn extend(
        phi: &mut Vec<usize>,
        n: usize,
        host_n: usize,
        back: &[Vec<usize>],
        edge_ok: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let k = phi.len();
        if k == n {
            return true;
        }
        let lo = phi.last().map_or(0, |&v| v + 1);
        let hi = host_n - (n - k - 1); // leave room for the remaining vertices
        for v in lo..hi {
            if back[k].iter().all(|&a| edge_ok(phi[a], v)) {
                phi.push(v);
                if extend(phi, n, host_n, back, edge_ok) {
                    return true;
                }
                phi.pop();
            }
        }
        false
    }

    if extend(&mut phi, n, host_n, &back, edge_ok) {
        Some(phi)
    } else {
        None
    }
}

/// Finds the lexicographically smallest monochromatic ordered copy of
/// `pattern` in `coloring`, or `None` when no copy exists. The search is
/// exhaustive over monotone embeddings.
pub fn find_monochromatic_copy(
    coloring: &EdgeColoring,
    pattern: &OrderedPattern,
    color: Color,
) -> Result<Option<Embedding>, ModelError> {
    if pattern.vertex_count() > coloring.vertex_count() {
        return Err(ModelError::PatternTooLarge {
            pattern: pattern.vertex_count(),
            host: coloring.vertex_count(),
        });
    }
    let ok = |u: usize, v: usize| coloring.color(u, v) == color;
    Ok(find_embedding_with(pattern, coloring.vertex_count(), &ok).map(Embedding))
}

/// True when `coloring` has no red copy of `red_pattern` and no blue copy of
/// `blue_pattern` — i.e. it witnesses `r_<(red, blue) > N`.
pub fn is_good_coloring(
    coloring: &EdgeColoring,
    red_pattern: &OrderedPattern,
    blue_pattern: &OrderedPattern,
) -> bool {
    let no_red = red_pattern.vertex_count() > coloring.vertex_count()
        || find_monochromatic_copy(coloring, red_pattern, Color::Red)
            .expect("size checked")
            .is_none();
    let no_blue = blue_pattern.vertex_count() > coloring.vertex_count()
        || find_monochromatic_copy(coloring, blue_pattern, Color::Blue)
            .expect("size checked")
            .is_none();
    no_red && no_blue
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_fig2;
    use itertools::Itertools;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Independent oracle: enumerate all C(N, n) monotone maps directly.
    fn naive_copy(
        coloring: &EdgeColoring,
        pattern: &OrderedPattern,
        color: Color,
    ) -> Option<Vec<usize>> {
        (0..coloring.vertex_count())
            .combinations(pattern.vertex_count())
            .find(|phi| {
                pattern
                    .edges()
                    .iter()
                    .all(|&(a, b)| coloring.color(phi[a], phi[b]) == color)
            })
    }

    fn random_coloring(rng: &mut StdRng, n: usize) -> EdgeColoring {
        EdgeColoring::from_fn(n, |_, _| if rng.gen() { Color::Red } else { Color::Blue })
    }

    #[test]
    fn edge_rank_roundtrip() {
        for n in 1..12 {
            let mut seen = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let r = edge_rank(n, i, j);
                    assert_eq!(edge_of_rank(n, r), (i, j));
                    seen.push(r);
                }
            }
            assert_eq!(seen, (0..pair_count(n)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn catalog_matches_published_orderings() {
        assert_eq!(catalog("k2uk2-a").unwrap().edges(), &[(0, 1), (2, 3)]);
        assert_eq!(catalog("k2uk2-b").unwrap().edges(), &[(0, 2), (1, 3)]);
        assert_eq!(catalog("k2uk2-c").unwrap().edges(), &[(0, 3), (1, 2)]);
        let k4e = catalog("k4e-miss-0-1").unwrap();
        assert_eq!(k4e.vertex_count(), 4);
        assert_eq!(k4e.edges(), &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(catalog("path3").unwrap().edges(), &[(0, 1), (1, 2)]);
        // definition of the complete-with-pendant graph at m=3 coincides with pan3-c
        assert_eq!(catalog("pendant-k3").unwrap(), catalog("pan3-c").unwrap());
        assert_eq!(
            catalog("pendant-k3").unwrap().edges(),
            &[(0, 1), (1, 2), (1, 3), (2, 3)]
        );
        assert_eq!(catalog("k3").unwrap().edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn catalog_rejects_unknown_names() {
        for bad in ["k2uk2-d", "k4e-miss-1-1", "k4e-miss-2-4", "kx", "pendant-k0", "nope"] {
            let err = catalog(bad).unwrap_err();
            assert!(matches!(err, ModelError::UnknownPattern(_)), "{bad}: {err}");
            assert!(err.to_string().contains("k2uk2-a"), "error lists valid names");
        }
    }

    #[test]
    fn pattern_invariants_enforced() {
        assert!(matches!(
            OrderedPattern::new(0, []),
            Err(ModelError::EmptyPattern)
        ));
        assert!(matches!(
            OrderedPattern::new(3, [(0, 3)]),
            Err(ModelError::BadEdge { .. })
        ));
        assert!(matches!(
            OrderedPattern::new(3, [(1, 1)]),
            Err(ModelError::BadEdge { .. })
        ));
        assert!(matches!(
            OrderedPattern::new(3, [(0, 1), (1, 0)]),
            Err(ModelError::DuplicateEdge(0, 1))
        ));
        // orientation is normalized
        let p = OrderedPattern::new(3, [(2, 0)]).unwrap();
        assert_eq!(p.edges(), &[(0, 2)]);
    }

    #[test]
    fn pattern_text_roundtrip() {
        for name in ["k2uk2-b", "k4e-miss-1-2", "pan3-a", "path3", "pendant-k4", "k5"] {
            let p = catalog(name).unwrap();
            let text = p.to_string();
            assert_eq!(text.parse::<OrderedPattern>().unwrap(), p, "{name}: {text}");
        }
        // whitespace-insensitive
        let p: OrderedPattern = " n = 4 ;  edges = 0-2 , 1-3 ".parse().unwrap();
        assert_eq!(p, catalog("k2uk2-b").unwrap());
        // isolated vertices survive the round trip
        let q: OrderedPattern = "n=5; edges=1-3".parse().unwrap();
        assert_eq!(q.vertex_count(), 5);
        assert!("n=3; edgs=0-1".parse::<OrderedPattern>().is_err());
        assert!("n=3; edges=0:1".parse::<OrderedPattern>().is_err());
    }

    #[test]
    fn coloring_text_roundtrip() {
        let fig2 = build_fig2();
        let text = fig2.to_string();
        assert_eq!(text.parse::<EdgeColoring>().unwrap(), fig2);

        let empty = EdgeColoring::monochromatic(1, Color::Red);
        assert_eq!(empty.to_string().parse::<EdgeColoring>().unwrap(), empty);

        assert!("N=3; RR".parse::<EdgeColoring>().is_err()); // wrong count
        assert!("N=3; RRX".parse::<EdgeColoring>().is_err()); // bad token
    }

    #[test]
    fn all_red_k4_contains_k4e_at_identity() {
        let c = EdgeColoring::monochromatic(4, Color::Red);
        let p = catalog("k4e-miss-0-1").unwrap();
        let emb = find_monochromatic_copy(&c, &p, Color::Red).unwrap().unwrap();
        assert_eq!(emb.vertices(), &[0, 1, 2, 3]);
        assert!(emb.witnesses_copy(&c, &p, Color::Red));
    }

    #[test]
    fn fig2_avoids_k2uk2_a_in_both_colors() {
        let c = build_fig2();
        let p = catalog("k2uk2-a").unwrap();
        assert!(find_monochromatic_copy(&c, &p, Color::Red).unwrap().is_none());
        assert!(find_monochromatic_copy(&c, &p, Color::Blue).unwrap().is_none());
    }

    #[test]
    fn lone_edge_hosts_no_path() {
        let c = EdgeColoring::from_red_edges(5, &[(1, 3)]).unwrap();
        let path3 = catalog("path3").unwrap();
        assert!(find_monochromatic_copy(&c, &path3, Color::Red).unwrap().is_none());
    }

    #[test]
    fn pattern_larger_than_host_is_an_error() {
        let c = EdgeColoring::monochromatic(3, Color::Red);
        let p = catalog("k4e-miss-0-1").unwrap();
        assert!(matches!(
            find_monochromatic_copy(&c, &p, Color::Red),
            Err(ModelError::PatternTooLarge { pattern: 4, host: 3 })
        ));
    }

    #[test]
    fn reverse_examples() {
        let b = catalog("k2uk2-b").unwrap();
        assert_eq!(b.reversed(), b); // crossing matching is self-reverse

        let pan_a = catalog("pan3-a").unwrap();
        assert_eq!(
            pan_a.reversed().edges(),
            &[(0, 1), (0, 2), (0, 3), (1, 2)]
        );

        let mono = EdgeColoring::monochromatic(3, Color::Red);
        assert_eq!(mono.reversed(), mono);

        let fig2 = build_fig2();
        assert_eq!(fig2.reversed().reversed(), fig2);
    }

    #[test]
    fn agrees_with_naive_enumeration_on_small_hosts() {
        let mut rng = StdRng::seed_from_u64(0xcafe);
        let patterns: Vec<OrderedPattern> = [
            "k2uk2-a", "k2uk2-b", "k2uk2-c", "path3", "pan3-b", "k4e-miss-1-2", "k3",
        ]
        .iter()
        .map(|n| catalog(n).unwrap())
        .chain([OrderedPattern::new(4, [(1, 3)]).unwrap()]) // isolated vertices
        .collect();

        for n in 2..=6 {
            for _ in 0..60 {
                let c = random_coloring(&mut rng, n);
                for p in &patterns {
                    if p.vertex_count() > n {
                        continue;
                    }
                    for color in [Color::Red, Color::Blue] {
                        let fast = find_monochromatic_copy(&c, p, color).unwrap();
                        let slow = naive_copy(&c, p, color);
                        match (&fast, &slow) {
                            (Some(e), Some(s)) => {
                                // both exist and the fast path is lex-smallest
                                assert_eq!(e.vertices(), s.as_slice());
                                assert!(e.witnesses_copy(&c, p, color));
                            }
                            (None, None) => {}
                            _ => panic!("disagreement on {p} {color:?}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn flip_and_swap_symmetries_hold() {
        let mut rng = StdRng::seed_from_u64(7);
        let patterns: Vec<OrderedPattern> =
            ["k2uk2-a", "k2uk2-c", "path3", "pan3-a", "k4e-miss-0-2"]
                .iter()
                .map(|n| catalog(n).unwrap())
                .collect();
        for _ in 0..200 {
            let n = rng.gen_range(2..7);
            let c = random_coloring(&mut rng, n);
            for p in &patterns {
                if p.vertex_count() > n {
                    continue;
                }
                for color in [Color::Red, Color::Blue] {
                    let here = find_monochromatic_copy(&c, p, color).unwrap().is_some();
                    let flipped =
                        find_monochromatic_copy(&c.reversed(), &p.reversed(), color)
                            .unwrap()
                            .is_some();
                    assert_eq!(here, flipped, "flip symmetry on {p}");
                    let swapped =
                        find_monochromatic_copy(&c.color_swapped(), p, color.flipped())
                            .unwrap()
                            .is_some();
                    assert_eq!(here, swapped, "color-swap symmetry on {p}");
                }
            }
        }
    }

    #[test]
    fn planted_clique_absorbs_every_pattern() {
        // a monochromatic K_m contains every ordered pattern on <= m vertices
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..100 {
            let n = rng.gen_range(4..8);
            let m = rng.gen_range(2..=4.min(n));
            let mut c = random_coloring(&mut rng, n);
            let mut verts: Vec<usize> = (0..n).collect();
            for k in 0..m {
                let pick = rng.gen_range(k..n);
                verts.swap(k, pick);
            }
            for a in 0..m {
                for b in a + 1..m {
                    c.set_color(verts[a], verts[b], Color::Red);
                }
            }
            for name in ["k2uk2-b", "path3", "pan3-c", "k4e-miss-2-3", "k3"] {
                let p = catalog(name).unwrap();
                if p.vertex_count() <= m {
                    assert!(
                        find_monochromatic_copy(&c, &p, Color::Red).unwrap().is_some(),
                        "planted K_{m} must absorb {name}"
                    );
                }
            }
        }
    }
}
