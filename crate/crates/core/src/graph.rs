//! Graph and profile data model: host graphs, explicit replication graphs,
//! profile canonicalization and the textual exchange formats.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph on `0..vertex_count` used both for the pattern
/// graph H and for explicitly built replication graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostGraph {
    vertex_count: usize,
    /// Normalized edge list: `u < v`, sorted, no duplicates.
    edges: Vec<(usize, usize)>,
}

impl HostGraph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut norm = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Domain(format!("loop at vertex {a}")));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::Dimension(format!(
                    "edge ({a},{b}) exceeds vertex count {vertex_count}"
                )));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        let before = norm.len();
        norm.dedup();
        if norm.len() != before {
            return Err(Error::Domain("duplicate edge".into()));
        }
        Ok(Self {
            vertex_count,
            edges: norm,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    /// Adjacency lists, each sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        Self {
            vertex_count: n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    /// Cycle on n >= 3 vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Dimension(format!("cycle needs >= 3 vertices, got {n}")));
        }
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        edges.sort_unstable();
        Ok(Self {
            vertex_count: n,
            edges,
        })
    }

    /// Edgeless graph on n vertices.
    pub fn anticlique(n: usize) -> Self {
        Self {
            vertex_count: n,
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self {
            vertex_count: n,
            edges,
        }
    }

    /// Subgraph induced by `vertices` (sorted, deduplicated internally);
    /// vertex i of the result corresponds to the i-th listed vertex.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut vs: Vec<usize> = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if let Some(&v) = vs.iter().find(|&&v| v >= self.vertex_count) {
            return Err(Error::Dimension(format!(
                "vertex {v} exceeds vertex count {}",
                self.vertex_count
            )));
        }
        let index_of = |v: usize| vs.binary_search(&v).unwrap();
        let edges = self
            .edges
            .iter()
            .filter(|(u, v)| vs.binary_search(u).is_ok() && vs.binary_search(v).is_ok())
            .map(|&(u, v)| (index_of(u), index_of(v)))
            .collect::<Vec<_>>();
        Ok(Self {
            vertex_count: vs.len(),
            edges,
        })
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut comps = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Parses the edge-list text form: first line `n m`, then `m` lines
    /// `u v` with 0-indexed endpoints. Blank lines and `#` comments are
    /// skipped.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph description".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .ok_or_else(|| Error::Parse("missing vertex count".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
        let m: usize = it
            .next()
            .ok_or_else(|| Error::Parse("missing edge count".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad edge count: {e}")))?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {m} edge lines")))?;
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .ok_or_else(|| Error::Parse("missing edge endpoint".into()))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad endpoint: {e}")))?;
            let v: usize = it
                .next()
                .ok_or_else(|| Error::Parse("missing edge endpoint".into()))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad endpoint: {e}")))?;
            edges.push((u, v));
        }
        Self::new(n, edges)
    }

    /// Inverse of [`HostGraph::parse_text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count, self.edges.len());
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Sequence of replication-clique orders, one per host vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile(Vec<u32>);

impl Profile {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if let Some(pos) = orders.iter().position(|&x| x == 0) {
            return Err(Error::Domain(format!("clique order at position {pos} must be >= 1")));
        }
        Ok(Self(orders))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn orders(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Total number of vertices of the replication graph this profile defines.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.0.clone();
        v.reverse();
        Self(v)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Profile {
    type Err = Error;

    /// Parses the comma-separated text form, e.g. `1,2,2,2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty profile".into()));
        }
        let orders = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad clique order {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders)
    }
}

impl Serialize for Profile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            seq.serialize_element(x)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Profile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Profile;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a sequence of positive clique orders")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Profile, A::Error> {
                let mut orders = Vec::new();
                while let Some(x) = seq.next_element::<u32>()? {
                    orders.push(x);
                }
                Profile::new(orders).map_err(de::Error::custom)
            }
        }
        deserializer.deserialize_seq(V)
    }
}

/// Parses a profile file: one profile per line, `#` comments and blank
/// lines allowed.
pub fn parse_profile_file(text: &str) -> Result<Vec<Profile>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(Profile::from_str)
        .collect()
}

/// Address of a vertex of a replication graph: member `member` of the
/// clique substituted for host vertex `clique`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ReplicationVertex {
    pub clique: usize,
    pub member: usize,
}

/// Deterministic numbering of the vertices of `replicate(h, p)`: clique
/// blocks are consecutive in host order, members in index order.
#[derive(Debug, Clone)]
pub struct ReplicationLayout {
    offsets: Vec<usize>,
    total: usize,
}

impl ReplicationLayout {
    pub fn new(p: &Profile) -> Self {
        let mut offsets = Vec::with_capacity(p.len() + 1);
        let mut acc = 0usize;
        for &x in p.orders() {
            offsets.push(acc);
            acc += x as usize;
        }
        offsets.push(acc);
        Self {
            offsets,
            total: acc,
        }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn clique_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn index(&self, rv: ReplicationVertex) -> usize {
        self.offsets[rv.clique] + rv.member
    }

    pub fn clique_range(&self, clique: usize) -> std::ops::Range<usize> {
        self.offsets[clique]..self.offsets[clique + 1]
    }

    /// Inverse of [`ReplicationLayout::index`].
    pub fn vertex_at(&self, idx: usize) -> ReplicationVertex {
        debug_assert!(idx < self.total);
        // offsets is sorted; find the clique whose block contains idx.
        let clique = match self.offsets.binary_search(&idx) {
            Ok(mut k) => {
                // Skip empty blocks sharing the same offset.
                while self.offsets[k + 1] == idx {
                    k += 1;
                }
                k
            }
            Err(k) => k - 1,
        };
        ReplicationVertex {
            clique,
            member: idx - self.offsets[clique],
        }
    }
}

/// Builds the replication graph of `h` with clique orders `p`: each host
/// vertex becomes a clique, each host edge a complete join between the two
/// cliques. Vertex numbering follows [`ReplicationLayout`].
pub fn replicate(h: &HostGraph, p: &Profile) -> Result<HostGraph> {
    if p.len() != h.vertex_count() {
        return Err(Error::Dimension(format!(
            "profile length {} != vertex count {}",
            p.len(),
            h.vertex_count()
        )));
    }
    let layout = ReplicationLayout::new(p);
    let mut edges = Vec::new();
    for i in 0..h.vertex_count() {
        let r = layout.clique_range(i);
        for a in r.clone() {
            for b in a + 1..r.end {
                edges.push((a, b));
            }
        }
    }
    for &(i, j) in h.edges() {
        for a in layout.clique_range(i) {
            for b in layout.clique_range(j) {
                edges.push((a, b));
            }
        }
    }
    HostGraph::new(layout.total(), edges)
}

/// Lexicographically smaller of `p` and its reverse; the canonical
/// representative of a path profile under reversal.
pub fn canonical_path_profile(p: &Profile) -> Profile {
    let r = p.reversed();
    if r < *p {
        r
    } else {
        p.clone()
    }
}

/// Lexicographic minimum over all rotations of `p` and of its reverse; the
/// canonical representative of a cycle profile under the dihedral group.
pub fn canonical_cycle_profile(p: &Profile) -> Result<Profile> {
    let n = p.len();
    if n < 3 {
        return Err(Error::Dimension(format!(
            "cycle profile needs length >= 3, got {n}"
        )));
    }
    let mut best: Option<Vec<u32>> = None;
    for base in [p.orders().to_vec(), p.reversed().orders().to_vec()] {
        for shift in 0..n {
            let mut rot = Vec::with_capacity(n);
            rot.extend_from_slice(&base[shift..]);
            rot.extend_from_slice(&base[..shift]);
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    Ok(Profile(best.unwrap()))
}

/// A total color assignment on the vertices of some graph, in that graph's
/// vertex numbering (for replication graphs, the deterministic layout).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringAssignment {
    colors: Vec<u32>,
}

impl ColoringAssignment {
    pub fn new(colors: Vec<u32>) -> Self {
        Self { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, idx: usize) -> u32 {
        self.colors[idx]
    }

    /// Color of a replication vertex under the deterministic layout.
    pub fn color_of(&self, layout: &ReplicationLayout, rv: ReplicationVertex) -> u32 {
        self.colors[layout.index(rv)]
    }

    /// Parses the text form: one color id per line in deterministic vertex
    /// numbering; `#` comments and blank lines allowed.
    pub fn parse_text(text: &str) -> Result<Self> {
        let colors = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad color id {l:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { colors })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.colors {
            out.push_str(&format!("{c}\n"));
        }
        out
    }
}

/// True iff `c` is a proper coloring of `g`: total on its vertices and no
/// monochromatic edge.
pub fn validate_coloring(g: &HostGraph, c: &ColoringAssignment) -> Result<bool> {
    if c.len() != g.vertex_count() {
        return Err(Error::Dimension(format!(
            "coloring covers {} vertices, graph has {}",
            c.len(),
            g.vertex_count()
        )));
    }
    Ok(g.edges().iter().all(|&(u, v)| c.color(u) != c.color(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn replicate_two_joined_cliques_is_complete() {
        let g = replicate(&HostGraph::path(2), &Profile::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(g, HostGraph::complete(4));
    }

    #[test]
    fn replicate_all_ones_is_identity() {
        let p3 = HostGraph::path(3);
        let g = replicate(&p3, &Profile::new(vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!(g, p3);
    }

    #[test]
    fn replicate_expands_cliques_and_joins() {
        // {a}, {m1,m2}, {c1,c2,c3}: a-m*, m*-c*, plus in-clique edges.
        let g = replicate(&HostGraph::path(3), &Profile::new(vec![1, 2, 3]).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 6);
        let expect = HostGraph::new(
            6,
            vec![
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
                (3, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn replicate_rejects_length_mismatch() {
        let err = replicate(&HostGraph::path(3), &Profile::new(vec![1, 2]).unwrap());
        assert!(matches!(err, Err(Error::Dimension(_))));
    }

    #[test]
    fn canonical_path_examples() {
        let canon = |v: Vec<u32>| canonical_path_profile(&Profile::new(v).unwrap());
        assert_eq!(canon(vec![3, 2, 2, 2, 1]), Profile::new(vec![1, 2, 2, 2, 3]).unwrap());
        assert_eq!(canon(vec![1, 2, 2, 2, 3]), Profile::new(vec![1, 2, 2, 2, 3]).unwrap());
        // Reverse (3,2,1,1,3) is lex-larger, so this stays as is.
        assert_eq!(canon(vec![3, 1, 1, 2, 3]), Profile::new(vec![3, 1, 1, 2, 3]).unwrap());
    }

    #[test]
    fn canonical_cycle_examples() {
        let canon = |v: Vec<u32>| canonical_cycle_profile(&Profile::new(v).unwrap()).unwrap();
        assert_eq!(canon(vec![2, 1, 2, 1]), Profile::new(vec![1, 2, 1, 2]).unwrap());
        assert_eq!(canon(vec![1, 1, 2, 2]), Profile::new(vec![1, 1, 2, 2]).unwrap());
        assert_eq!(canon(vec![2, 2, 1, 1]), Profile::new(vec![1, 1, 2, 2]).unwrap());
        assert!(canonical_cycle_profile(&Profile::new(vec![1, 2]).unwrap()).is_err());
    }

    #[test]
    fn validate_coloring_examples() {
        let k2 = HostGraph::complete(2);
        assert!(validate_coloring(&k2, &ColoringAssignment::new(vec![0, 1])).unwrap());
        assert!(!validate_coloring(&k2, &ColoringAssignment::new(vec![0, 0])).unwrap());
        assert!(matches!(
            validate_coloring(&k2, &ColoringAssignment::new(vec![0])),
            Err(Error::Dimension(_))
        ));
        // a=1, m=(2,3), c=(1,4,5) on the (1,2,3) replication of a path.
        let g = replicate(&HostGraph::path(3), &Profile::new(vec![1, 2, 3]).unwrap()).unwrap();
        let c = ColoringAssignment::new(vec![1, 2, 3, 1, 4, 5]);
        assert!(validate_coloring(&g, &c).unwrap());
    }

    #[test]
    fn layout_round_trips() {
        let p = Profile::new(vec![1, 3, 2]).unwrap();
        let layout = ReplicationLayout::new(&p);
        assert_eq!(layout.total(), 6);
        for idx in 0..6 {
            assert_eq!(layout.index(layout.vertex_at(idx)), idx);
        }
        assert_eq!(
            layout.vertex_at(2),
            ReplicationVertex { clique: 1, member: 1 }
        );
    }

    #[test]
    fn profile_file_parsing() {
        let text = "# minimal profiles\n1,2,2,2,3\n\n3,1,1,2,3\n";
        let ps = parse_profile_file(text).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0], Profile::new(vec![1, 2, 2, 2, 3]).unwrap());
    }

    #[test]
    fn host_graph_text_round_trip() {
        let g = HostGraph::cycle(5).unwrap();
        assert_eq!(HostGraph::parse_text(&g.to_text()).unwrap(), g);
        assert!(HostGraph::parse_text("2 1\n0 2\n").is_err());
    }

    #[test]
    fn rejects_zero_orders_and_bad_graphs() {
        assert!(Profile::new(vec![1, 0, 2]).is_err());
        assert!("1,0,2".parse::<Profile>().is_err());
        assert!(HostGraph::new(3, vec![(0, 0)]).is_err());
        assert!(HostGraph::new(3, vec![(0, 1), (1, 0)]).is_err());
    }

    fn arb_profile(max_len: usize, max_order: u32) -> impl Strategy<Value = Profile> {
        prop::collection::vec(1..=max_order, 1..=max_len).prop_map(|v| Profile::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn replicate_counts(orders in prop::collection::vec(1u32..=4, 1..=6)) {
            let n = orders.len();
            let p = Profile::new(orders).unwrap();
            let h = HostGraph::path(n);
            let g = replicate(&h, &p).unwrap();
            prop_assert_eq!(g.vertex_count() as u64, p.total());
            let in_clique: u64 = p.orders().iter().map(|&x| (x as u64) * (x as u64 - 1) / 2).sum();
            let joins: u64 = h
                .edges()
                .iter()
                .map(|&(i, j)| p.get(i) as u64 * p.get(j) as u64)
                .sum();
            prop_assert_eq!(g.edge_count() as u64, in_clique + joins);
        }

        #[test]
        fn canonical_path_is_idempotent_and_reversal_invariant(p in arb_profile(8, 5)) {
            let c = canonical_path_profile(&p);
            prop_assert_eq!(&canonical_path_profile(&c), &c);
            prop_assert_eq!(&canonical_path_profile(&p.reversed()), &c);
            prop_assert!(c <= p);
        }

        #[test]
        fn canonical_cycle_is_dihedral_invariant(p in arb_profile(8, 4), shift in 0usize..8, flip in any::<bool>()) {
            prop_assume!(p.len() >= 3);
            let c = canonical_cycle_profile(&p).unwrap();
            prop_assert_eq!(&canonical_cycle_profile(&c).unwrap(), &c);
            let base = if flip { p.reversed() } else { p.clone() };
            let k = shift % base.len();
            let mut rotated = base.orders()[k..].to_vec();
            rotated.extend_from_slice(&base.orders()[..k]);
            let r = Profile::new(rotated).unwrap();
            prop_assert_eq!(&canonical_cycle_profile(&r).unwrap(), &c);
        }

        #[test]
        fn profile_text_round_trip(p in arb_profile(10, 30)) {
            let s = p.to_string();
            prop_assert_eq!(s.parse::<Profile>().unwrap(), p);
        }
    }
}
