//! Threshold graphs from binary creation strings.
//!
//! A connected threshold graph on `n >= 2` vertices is encoded by a bit
//! string `b1 b2 .. bn` with `b1 = 0` and `bn = 1`: vertex `i` is added
//! isolated when `bi = 0` and dominating (adjacent to every earlier vertex)
//! when `bi = 1`. Vertices are numbered `1..n` in string order, so the string
//! is a canonical identifier for the labelled graph. There are exactly
//! `2^(n-2)` such strings for each order `n`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Rejection reasons for creation strings.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StringError {
    #[error("empty string: a creation string needs at least two bits")]
    EmptyString,
    #[error("illegal character {found:?} at position {position}: only '0' and '1' are allowed")]
    IllegalCharacter { position: usize, found: char },
    #[error("first bit must be 0: the initial vertex has nothing to dominate")]
    FirstBitNotZero,
    #[error("last bit must be 1: a trailing 0 leaves an isolated vertex, so the graph is disconnected")]
    LastBitNotOne,
}

/// A validated creation string. Construction goes through [`parse_string`]
/// (or `str::parse`), so every value of this type satisfies `b1 = 0`,
/// `bn = 1`, `n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThresholdString {
    bits: Vec<u8>,
}

impl ThresholdString {
    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.bits.len()
    }

    /// The bits as 0/1 bytes, in vertex order.
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Builds a string from raw bits. Fails under the same rules as parsing.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self, StringError> {
        if bits.is_empty() {
            return Err(StringError::EmptyString);
        }
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(StringError::IllegalCharacter {
                position: pos + 1,
                found: (b'0' + bits[pos]) as char,
            });
        }
        if bits[0] != 0 {
            return Err(StringError::FirstBitNotZero);
        }
        if *bits.last().unwrap() != 1 {
            return Err(StringError::LastBitNotOne);
        }
        Ok(ThresholdString { bits })
    }
}

impl fmt::Display for ThresholdString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for ThresholdString {
    type Err = StringError;

    fn from_str(s: &str) -> Result<Self, StringError> {
        parse_string(s)
    }
}

/// Validates a creation string. Checks run in order: emptiness, character
/// set, leading bit, trailing bit; the first failure wins (so `"10"` reports
/// the leading bit, not the trailing one).
pub fn parse_string(text: &str) -> Result<ThresholdString, StringError> {
    if text.is_empty() {
        return Err(StringError::EmptyString);
    }
    let mut bits = Vec::with_capacity(text.len());
    for (i, c) in text.chars().enumerate() {
        match c {
            '0' => bits.push(0u8),
            '1' => bits.push(1u8),
            other => {
                return Err(StringError::IllegalCharacter {
                    position: i + 1,
                    found: other,
                })
            }
        }
    }
    ThresholdString::from_bits(bits)
}

/// Maximal-run decomposition of a creation string:
/// `b = 0^{s1} 1^{t1} 0^{s2} 1^{t2} .. 0^{sk} 1^{tk}` with every run length
/// at least 1. Because valid strings start with 0 and end with 1, the runs
/// always pair up and `s_blocks.len() == t_blocks.len() == k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForm {
    pub s_blocks: Vec<usize>,
    pub t_blocks: Vec<usize>,
}

impl BlockForm {
    /// Number of 0/1 block pairs.
    pub fn k(&self) -> usize {
        self.s_blocks.len()
    }

    /// Total number of 0-bits (isolated-insertion vertices).
    pub fn s(&self) -> usize {
        self.s_blocks.iter().sum()
    }

    /// Total number of 1-bits (dominating-insertion vertices).
    pub fn t(&self) -> usize {
        self.t_blocks.iter().sum()
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.s() + self.t()
    }

    /// Prefix sum `S_i = s1 + .. + si`; `S_0 = 0`.
    pub fn s_prefix(&self, i: usize) -> usize {
        self.s_blocks[..i].iter().sum()
    }

    /// Prefix sum `T_i = t1 + .. + ti`; `T_0 = 0`.
    pub fn t_prefix(&self, i: usize) -> usize {
        self.t_blocks[..i].iter().sum()
    }

    /// Cell sizes in vertex order: `s1, t1, s2, t2, ..`. The cells are the
    /// maximal runs; same-run vertices are interchangeable (isolated runs are
    /// independent sets of non-adjacent twins, dominating runs are cliques of
    /// adjacent twins).
    pub fn cell_sizes(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * self.k());
        for i in 0..self.k() {
            out.push(self.s_blocks[i]);
            out.push(self.t_blocks[i]);
        }
        out
    }

    /// Common degree of each cell, in cell order. A vertex of the i-th
    /// isolated run has degree `t - T_{i-1}` (it is dominated by every later
    /// 1-vertex); a vertex of the i-th dominating run has degree
    /// `t + S_i - 1` (its own run is a clique, it dominates everything
    /// earlier, and later 1-vertices dominate it).
    pub fn cell_degrees(&self) -> Vec<usize> {
        let t = self.t();
        let mut out = Vec::with_capacity(2 * self.k());
        for i in 1..=self.k() {
            out.push(t - self.t_prefix(i - 1));
            out.push(t + self.s_prefix(i) - 1);
        }
        out
    }

    /// Reassembles the creation string.
    pub fn to_threshold_string(&self) -> ThresholdString {
        let mut bits = Vec::with_capacity(self.n());
        for i in 0..self.k() {
            bits.extend(std::iter::repeat(0u8).take(self.s_blocks[i]));
            bits.extend(std::iter::repeat(1u8).take(self.t_blocks[i]));
        }
        ThresholdString { bits }
    }
}

// Serialized with the derived quantities included so downstream JSON
// consumers don't have to recompute prefix sums.
impl Serialize for BlockForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let k = self.k();
        let s_prefix: Vec<usize> = (1..=k).map(|i| self.s_prefix(i)).collect();
        let t_prefix: Vec<usize> = (1..=k).map(|i| self.t_prefix(i)).collect();
        let mut st = serializer.serialize_struct("BlockForm", 8)?;
        st.serialize_field("s_blocks", &self.s_blocks)?;
        st.serialize_field("t_blocks", &self.t_blocks)?;
        st.serialize_field("k", &k)?;
        st.serialize_field("s", &self.s())?;
        st.serialize_field("t", &self.t())?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("s_prefix", &s_prefix)?;
        st.serialize_field("t_prefix", &t_prefix)?;
        st.end()
    }
}

/// Decomposes a creation string into maximal runs.
pub fn block_form(ts: &ThresholdString) -> BlockForm {
    let mut s_blocks = Vec::new();
    let mut t_blocks = Vec::new();
    let mut i = 0;
    let bits = ts.bits();
    while i < bits.len() {
        let bit = bits[i];
        let mut j = i;
        while j < bits.len() && bits[j] == bit {
            j += 1;
        }
        if bit == 0 {
            s_blocks.push(j - i);
        } else {
            t_blocks.push(j - i);
        }
        i = j;
    }
    debug_assert_eq!(s_blocks.len(), t_blocks.len());
    BlockForm { s_blocks, t_blocks }
}

/// Dense undirected simple graph. Vertices are 0-based internally; only the
/// DOT export and documentation use the 1-based labels of the string model.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<bool>>,
    degrees: Vec<usize>,
}

impl Graph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn edge_count(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Replays the creation sequence: each 1-bit vertex is joined to everything
/// before it. The result has no self loops, a symmetric adjacency matrix,
/// and minimum degree >= 1 (the final vertex dominates all).
pub fn build_graph(ts: &ThresholdString) -> Graph {
    let n = ts.n();
    let mut adj = vec![vec![false; n]; n];
    for (i, &b) in ts.bits().iter().enumerate() {
        if b == 1 {
            for j in 0..i {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    let degrees = adj.iter().map(|row| row.iter().filter(|&&e| e).count()).collect();
    Graph { n, adj, degrees }
}

/// Identifies a cell by run kind and 1-based block index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellId {
    /// i-th run of 0-bits (`V_{s_i}`).
    Zeros(usize),
    /// i-th run of 1-bits (`V_{t_i}`).
    Ones(usize),
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellId::Zeros(i) => write!(f, "V_s{i}"),
            CellId::Ones(i) => write!(f, "V_t{i}"),
        }
    }
}

/// One row of the cellwise degree table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDegrees {
    pub cell: CellId,
    pub degree: usize,
    pub count: usize,
}

/// Degree table in cell order, driven by the closed forms on [`BlockForm`];
/// every vertex of a cell shares the cell's degree, and the degree sum is
/// even (it is twice the edge count).
pub fn degree_sequence(bf: &BlockForm) -> Vec<CellDegrees> {
    let sizes = bf.cell_sizes();
    let degs = bf.cell_degrees();
    let mut out = Vec::with_capacity(2 * bf.k());
    for i in 0..bf.k() {
        out.push(CellDegrees {
            cell: CellId::Zeros(i + 1),
            degree: degs[2 * i],
            count: sizes[2 * i],
        });
        out.push(CellDegrees {
            cell: CellId::Ones(i + 1),
            degree: degs[2 * i + 1],
            count: sizes[2 * i + 1],
        });
    }
    out
}

/// Per-vertex degrees in string order, expanded from the cell table.
pub fn vertex_degrees(bf: &BlockForm) -> Vec<usize> {
    let mut out = Vec::with_capacity(bf.n());
    for row in degree_sequence(bf) {
        out.extend(std::iter::repeat(row.degree).take(row.count));
    }
    out
}

/// Scans all 4-subsets for an induced C4, P4 or 2K2 — the three forbidden
/// induced subgraphs that characterize threshold graphs. Returns a witness
/// `(vertices, name)` if one exists (it never should for a built graph).
pub fn find_forbidden_induced(g: &Graph) -> Option<([usize; 4], &'static str)> {
    let n = g.n();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    let vs = [a, b, c, d];
                    let mut deg = [0usize; 4];
                    let mut edges = 0;
                    for i in 0..4 {
                        for j in (i + 1)..4 {
                            if g.has_edge(vs[i], vs[j]) {
                                deg[i] += 1;
                                deg[j] += 1;
                                edges += 1;
                            }
                        }
                    }
                    let mut sorted = deg;
                    sorted.sort_unstable();
                    // On 4 vertices: 4 edges with all degrees 2 is C4; 3 edges
                    // with degrees (1,1,2,2) is P4; 2 edges with all degrees 1
                    // is a perfect matching 2K2.
                    if edges == 4 && sorted == [2, 2, 2, 2] {
                        return Some((vs, "C4"));
                    }
                    if edges == 3 && sorted == [1, 1, 2, 2] {
                        return Some((vs, "P4"));
                    }
                    if edges == 2 && sorted == [1, 1, 1, 1] {
                        return Some((vs, "2K2"));
                    }
                }
            }
        }
    }
    None
}

/// Renders the graph in DOT syntax with 1-based vertex labels.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 1..=g.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {} -- {};\n", u + 1, v + 1));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_rejects_bad_inputs() {
        assert_eq!(parse_string(""), Err(StringError::EmptyString));
        assert_eq!(
            parse_string("0121"),
            Err(StringError::IllegalCharacter {
                position: 3,
                found: '2'
            })
        );
        assert_eq!(parse_string("10"), Err(StringError::FirstBitNotZero));
        assert_eq!(parse_string("0110"), Err(StringError::LastBitNotOne));
        assert_eq!(parse_string("0"), Err(StringError::LastBitNotOne));
        assert_eq!(parse_string("1"), Err(StringError::FirstBitNotZero));
    }

    #[test]
    fn parse_accepts_minimal_string() {
        let ts = parse_string("01").unwrap();
        assert_eq!(ts.n(), 2);
        assert_eq!(ts.to_string(), "01");
    }

    #[test]
    fn block_form_of_mixed_string() {
        let ts = parse_string("0011100011").unwrap();
        let bf = block_form(&ts);
        assert_eq!(bf.s_blocks, vec![2, 3]);
        assert_eq!(bf.t_blocks, vec![3, 2]);
        assert_eq!(bf.k(), 2);
        assert_eq!((bf.s(), bf.t(), bf.n()), (5, 5, 10));
        assert_eq!(bf.s_prefix(1), 2);
        assert_eq!(bf.s_prefix(2), 5);
        assert_eq!(bf.t_prefix(1), 3);
        assert_eq!(bf.t_prefix(2), 5);
        assert_eq!(bf.to_threshold_string(), ts);
    }

    #[test]
    fn degree_table_matches_closed_forms() {
        let ts = parse_string("0011100011").unwrap();
        let bf = block_form(&ts);
        let table = degree_sequence(&bf);
        let expect = [
            (CellId::Zeros(1), 5, 2),
            (CellId::Ones(1), 6, 3),
            (CellId::Zeros(2), 2, 3),
            (CellId::Ones(2), 9, 2),
        ];
        assert_eq!(table.len(), expect.len());
        for (row, (cell, degree, count)) in table.iter().zip(expect) {
            assert_eq!((row.cell, row.degree, row.count), (cell, degree, count));
        }
        // The table expands to the degrees of the built graph.
        let g = build_graph(&ts);
        assert_eq!(vertex_degrees(&bf), g.degrees());
        assert_eq!(g.edge_count(), 26);
    }

    #[test]
    fn complete_and_star_shapes() {
        let k4 = build_graph(&parse_string("0111").unwrap());
        assert_eq!(k4.degrees(), &[3, 3, 3, 3]);
        assert_eq!(k4.edge_count(), 6);

        let star = build_graph(&parse_string("0001").unwrap());
        assert_eq!(star.degrees(), &[1, 1, 1, 3]);
    }

    #[test]
    fn built_graphs_avoid_forbidden_subgraphs() {
        for text in ["01", "0101", "0011100011", "010011", "000111"] {
            let g = build_graph(&parse_string(text).unwrap());
            assert_eq!(find_forbidden_induced(&g), None, "string {text}");
        }
    }

    #[test]
    fn forbidden_scan_detects_planted_c4() {
        // A hand-built C4 (not a threshold graph) must be caught.
        let mut adj = vec![vec![false; 4]; 4];
        for &(u, v) in &[(0usize, 1usize), (1, 2), (2, 3), (3, 0)] {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        let degrees = adj.iter().map(|r| r.iter().filter(|&&e| e).count()).collect();
        let g = Graph { n: 4, adj, degrees };
        assert_eq!(find_forbidden_induced(&g), Some(([0, 1, 2, 3], "C4")));
    }

    #[test]
    fn dot_output_lists_vertices_and_edges() {
        let g = build_graph(&parse_string("0101").unwrap());
        let dot = to_dot(&g);
        assert!(dot.starts_with("graph G {"));
        for line in ["  1;", "  4;", "  1 -- 2;", "  1 -- 4;", "  2 -- 4;", "  3 -- 4;"] {
            assert!(dot.contains(line), "missing {line:?} in {dot}");
        }
        assert_eq!(dot.matches(" -- ").count(), 4);
    }

    prop_compose! {
        fn arb_string()(mid in prop::collection::vec(any::<bool>(), 0..9)) -> ThresholdString {
            let mut bits = vec![0u8];
            bits.extend(mid.iter().map(|&b| b as u8));
            bits.push(1);
            ThresholdString::from_bits(bits).unwrap()
        }
    }

    proptest! {
        #[test]
        fn block_form_round_trips(ts in arb_string()) {
            let bf = block_form(&ts);
            prop_assert_eq!(bf.to_threshold_string(), ts.clone());
            prop_assert_eq!(bf.n(), ts.n());
            prop_assert!(bf.s_blocks.iter().all(|&r| r >= 1));
            prop_assert!(bf.t_blocks.iter().all(|&r| r >= 1));
        }

        #[test]
        fn degree_formulas_match_built_graph(ts in arb_string()) {
            let bf = block_form(&ts);
            let g = build_graph(&ts);
            prop_assert_eq!(vertex_degrees(&bf), g.degrees().to_vec());
        }

        #[test]
        fn built_graph_is_threshold(ts in arb_string()) {
            let g = build_graph(&ts);
            prop_assert_eq!(find_forbidden_induced(&g), None);
        }
    }
}
