//! Stable marked graphs (dual graphs of nodal marked curves) and the
//! boundary pairs `(i, S)` that index two-vertex graphs and boundary divisors.
//!
//! Vertices are stored by index; their ids are opaque strings used only for
//! I/O and for naming merged vertices under contraction. Edges keep stable
//! indices so that edge subsets (contraction sets, failure sets) are
//! unambiguous in the presence of multi-edges and loops. Subgraphs are always
//! induced on a vertex subset.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Upper bound on vertices and markings: subsets are stored as `u64` bitmasks.
pub const MAX_VERTICES: usize = 64;
pub const MAX_MARKINGS: usize = 64;

/// A set of vertex indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    pub fn full(num_vertices: usize) -> Self {
        if num_vertices >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << num_vertices) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, num_vertices: usize) -> Self {
        VertexSet(!self.0 & Self::full(num_vertices).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&v| self.0 & (1 << v) != 0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// A pair `(i, S)` with `S` a subset of the markings `{1..n}`.
///
/// Normalized pairs have `1 ∈ S`; admissible pairs additionally satisfy
/// `#S ≥ 2` when `i = 0` and `#S ≤ n - 2` when `i = g`. The derived order
/// (by `i`, then by `S` as a bitmask with marking `j` at bit `j - 1`) is the
/// canonical order used everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryPair {
    pub i: u32,
    mask: u64,
}

impl BoundaryPair {
    /// Builds `(i, S)` from 1-based marking labels, without normalization.
    pub fn new<I: IntoIterator<Item = usize>>(i: u32, markings: I) -> Self {
        let mut mask = 0u64;
        for j in markings {
            assert!((1..=MAX_MARKINGS).contains(&j), "marking {j} out of range");
            mask |= 1 << (j - 1);
        }
        BoundaryPair { i, mask }
    }

    pub fn from_mask(i: u32, mask: u64) -> Self {
        BoundaryPair { i, mask }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, j: usize) -> bool {
        (1..=MAX_MARKINGS).contains(&j) && self.mask & (1 << (j - 1)) != 0
    }

    pub fn markings(&self) -> Vec<usize> {
        (1..=MAX_MARKINGS).filter(|&j| self.contains(j)).collect()
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// The same boundary divisor seen from the other side: `(g - i, S^c)`.
    pub fn complement(&self, g: u32, n: usize) -> BoundaryPair {
        let all = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
        BoundaryPair {
            i: g.saturating_sub(self.i),
            mask: !self.mask & all,
        }
    }

    /// Rewrites the pair so that `1 ∈ S`. The flag reports whether the sides
    /// were swapped.
    pub fn normalized(&self, g: u32, n: usize) -> (BoundaryPair, bool) {
        if self.contains(1) {
            (*self, false)
        } else {
            (self.complement(g, n), true)
        }
    }

    pub fn is_admissible(&self, g: u32, n: usize) -> bool {
        let all = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
        if self.i > g || !self.contains(1) || self.mask & !all != 0 {
            return false;
        }
        let size = self.size();
        if self.i == g && size + 2 > n {
            return false;
        }
        if self.i == 0 && size < 2 {
            return false;
        }
        true
    }
}

impl fmt::Display for BoundaryPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.markings().iter().map(|j| j.to_string()).collect();
        write!(f, "({},{{{}}})", self.i, s.join(","))
    }
}

pub fn check_gn(g: u32, n: usize) -> Result<()> {
    if n == 0 || n > MAX_MARKINGS || (g == 0 && n < 3) {
        return Err(Error::InvalidGN { g, n });
    }
    Ok(())
}

/// All admissible pairs for `(g, n)` in canonical order.
pub fn admissible_pairs(g: u32, n: usize) -> Result<Vec<BoundaryPair>> {
    check_gn(g, n)?;
    let mut out = Vec::new();
    for i in 0..=g {
        // Subsets containing marking 1, ordered by bitmask.
        for rest in 0..(1u64 << (n - 1)) {
            let p = BoundaryPair::from_mask(i, 1 | (rest << 1));
            if p.is_admissible(g, n) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// `Γ(i, S)`: vertices `v1` (genus `i`, markings in `S`) and `v2`
/// (genus `g - i`, remaining markings) joined by one edge.
pub fn two_vertex_graph(g: u32, n: usize, p: BoundaryPair) -> Result<MarkedGraph> {
    check_gn(g, n)?;
    if !p.is_admissible(g, n) {
        return Err(Error::InadmissiblePair { pair: p, g, n });
    }
    let markings: Vec<usize> = (1..=n).map(|j| if p.contains(j) { 0 } else { 1 }).collect();
    MarkedGraph::from_parts(&[p.i, g - p.i], &[(0, 1)], &markings)
}

/// A connected, stable, `n`-marked graph with genus-weighted vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedGraph {
    ids: Vec<String>,
    genera: Vec<u32>,
    edges: Vec<(usize, usize)>,
    markings: Vec<usize>,
}

impl MarkedGraph {
    /// Builds and validates a graph from vertex ids. `markings[j - 1]` is the
    /// id of the vertex carrying marking `j`.
    pub fn new(
        vertices: Vec<(String, u32)>,
        edges: Vec<(String, String)>,
        markings: Vec<String>,
    ) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (k, (id, _)) in vertices.iter().enumerate() {
            if index.insert(id.clone(), k).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {id:?}")));
            }
        }
        let lookup = |id: &String| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex id {id:?}")))
        };
        let edges = edges
            .iter()
            .map(|(a, b)| Ok(sorted_pair(lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let markings = markings.iter().map(lookup).collect::<Result<Vec<_>>>()?;
        let (ids, genera) = vertices.into_iter().unzip();
        let graph = MarkedGraph {
            ids,
            genera,
            edges,
            markings,
        };
        graph.validate()?;
        Ok(graph)
    }

    /// Builds a graph with ids `v1, v2, ...`; `markings[j - 1]` is the vertex
    /// index (0-based) carrying marking `j`.
    pub fn from_parts(genera: &[u32], edges: &[(usize, usize)], markings: &[usize]) -> Result<Self> {
        let k = genera.len();
        for &(a, b) in edges {
            if a >= k || b >= k {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) out of range")));
            }
        }
        if let Some(v) = markings.iter().find(|&&v| v >= k) {
            return Err(Error::InvalidGraph(format!("marking on missing vertex {v}")));
        }
        let graph = MarkedGraph {
            ids: (1..=k).map(|v| format!("v{v}")).collect(),
            genera: genera.to_vec(),
            edges: edges.iter().map(|&(a, b)| sorted_pair(a, b)).collect(),
            markings: markings.to_vec(),
        };
        graph.validate()?;
        Ok(graph)
    }

    fn validate(&self) -> Result<()> {
        let k = self.genera.len();
        if k == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        if k > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!("more than {MAX_VERTICES} vertices")));
        }
        if self.markings.is_empty() || self.markings.len() > MAX_MARKINGS {
            return Err(Error::InvalidGraph(format!(
                "need between 1 and {MAX_MARKINGS} markings, found {}",
                self.markings.len()
            )));
        }
        if !self.is_connected_on(VertexSet::full(k)) {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        for v in 0..k {
            let special = self.valence(v) + self.markings.iter().filter(|&&m| m == v).count();
            if self.genera[v] == 0 && special < 3 {
                return Err(Error::InvalidGraph(format!(
                    "vertex {} has genus 0 and only {special} special points",
                    self.ids[v]
                )));
            }
        }
        if self.genus() == 0 && self.markings.len() < 3 {
            return Err(Error::InvalidGN { g: 0, n: self.markings.len() });
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Number of markings.
    pub fn n(&self) -> usize {
        self.markings.len()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn vertex_genus(&self, v: usize) -> u32 {
        self.genera[v]
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (a, b) = self.edges[e];
        a == b
    }

    /// Vertex carrying marking `j` (1-based).
    pub fn marking(&self, j: usize) -> usize {
        self.markings[j - 1]
    }

    pub fn markings(&self) -> &[usize] {
        &self.markings
    }

    /// Incident edge count with loops counted twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v && b == v).count()
    }

    /// `Σ g(v) - #V + #E + 1`.
    pub fn genus(&self) -> u32 {
        let sum: i64 = self.genera.iter().map(|&x| i64::from(x)).sum();
        let value = sum - self.num_vertices() as i64 + self.num_edges() as i64 + 1;
        u32::try_from(value).expect("connected graphs have nonnegative genus")
    }

    /// First Betti number of the graph with all loops contracted.
    pub fn loop_free_circuit_rank(&self) -> usize {
        let non_loops = (0..self.num_edges()).filter(|&e| !self.is_loop(e)).count();
        non_loops + 1 - self.num_vertices()
    }

    /// Number of edges joining `set` to its complement.
    pub fn crossing_edges(&self, set: VertexSet) -> usize {
        self.crossing_edge_indices(set).count()
    }

    pub fn crossing_edge_indices(&self, set: VertexSet) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_edges()).filter(move |&e| {
            let (a, b) = self.edges[e];
            set.contains(a) != set.contains(b)
        })
    }

    /// Markings carried by vertices of `set`, as a bitmask.
    pub fn markings_on(&self, set: VertexSet) -> u64 {
        self.markings
            .iter()
            .enumerate()
            .filter(|(_, &v)| set.contains(v))
            .fold(0u64, |acc, (j, _)| acc | (1 << j))
    }

    /// Arithmetic genus of the induced subgraph on a connected vertex set.
    pub fn arithmetic_genus(&self, set: VertexSet) -> u32 {
        let genera: i64 = set.iter().map(|v| i64::from(self.genera[v])).sum();
        let internal = self
            .edges
            .iter()
            .filter(|&&(a, b)| set.contains(a) && set.contains(b))
            .count() as i64;
        u32::try_from(genera + internal - set.len() as i64 + 1).expect("set must be connected")
    }

    /// Whether the induced subgraph on `set` is connected (false when empty).
    pub fn is_connected_on(&self, set: VertexSet) -> bool {
        let Some(start) = set.iter().next() else {
            return false;
        };
        self.component_within(start, set, None) == set
    }

    /// Vertices reachable from `start` inside `set`, optionally ignoring one edge.
    fn component_within(&self, start: usize, set: VertexSet, skip: Option<usize>) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for (e, &(a, b)) in self.edges.iter().enumerate() {
                if Some(e) == skip {
                    continue;
                }
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if set.contains(other) && !seen.contains(other) {
                    seen.insert(other);
                    stack.push(other);
                }
            }
        }
        seen
    }

    /// Contracts every edge in `edge_set`. Non-loops merge their endpoints
    /// (genera add); loops, including edges that became loops through earlier
    /// merges, are removed and add one to the genus. Returns the contracted
    /// graph and the map from old to new vertex indices. A merged vertex takes
    /// the lexicographically smallest id among its constituents.
    pub fn contract(&self, edge_set: &[usize]) -> Result<(MarkedGraph, Vec<usize>)> {
        let k = self.num_vertices();
        let chosen: BTreeSet<usize> = edge_set.iter().copied().collect();
        if let Some(&e) = chosen.iter().find(|&&e| e >= self.num_edges()) {
            return Err(Error::InvalidGraph(format!("edge index {e} out of range")));
        }
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], v: usize) -> usize {
            let mut root = v;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = v;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        let mut extra_genus = vec![0u32; k];
        let mut pending_loops = Vec::new();
        for &e in &chosen {
            let (a, b) = self.edges[e];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                pending_loops.push(a);
            } else {
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                parent[hi] = lo;
            }
        }
        for a in pending_loops {
            let r = find(&mut parent, a);
            extra_genus[r] += 1;
        }
        // New vertices ordered by their smallest original index.
        let mut new_index = vec![usize::MAX; k];
        let mut roots = Vec::new();
        for v in 0..k {
            let r = find(&mut parent, v);
            if new_index[r] == usize::MAX {
                new_index[r] = roots.len();
                roots.push(r);
            }
        }
        let map: Vec<usize> = (0..k).map(|v| new_index[find(&mut parent, v)]).collect();
        let mut ids: Vec<Option<String>> = vec![None; roots.len()];
        let mut genera = vec![0u32; roots.len()];
        for v in 0..k {
            let w = map[v];
            genera[w] += self.genera[v] + extra_genus[v];
            match &ids[w] {
                Some(id) if id.as_str() <= self.ids[v].as_str() => {}
                _ => ids[w] = Some(self.ids[v].clone()),
            }
        }
        let edges = (0..self.num_edges())
            .filter(|e| !chosen.contains(e))
            .map(|e| {
                let (a, b) = self.edges[e];
                sorted_pair(map[a], map[b])
            })
            .collect();
        let graph = MarkedGraph {
            ids: ids.into_iter().map(|id| id.expect("every class has a member")).collect(),
            genera,
            edges,
            markings: self.markings.iter().map(|&v| map[v]).collect(),
        };
        Ok((graph, map))
    }

    /// For a non-loop edge of a rank-0 graph: the boundary pair `(i, S)` of
    /// the side of the edge containing marking 1, and that side's vertices.
    pub fn boundary_pair_of_edge(&self, e: usize) -> Result<(BoundaryPair, VertexSet)> {
        if e >= self.num_edges() {
            return Err(Error::InvalidGraph(format!("edge index {e} out of range")));
        }
        if self.is_loop(e) {
            return Err(Error::LoopEdge(e));
        }
        let rank = self.loop_free_circuit_rank();
        if rank != 0 {
            return Err(Error::NotTreeLike(rank));
        }
        let side = self.component_within(
            self.marking(1),
            VertexSet::full(self.num_vertices()),
            Some(e),
        );
        let pair = BoundaryPair::from_mask(self.arithmetic_genus(side), self.markings_on(side));
        Ok((pair, side))
    }

    /// Vertex sets `Γ0` with both `Γ0` and its complement connected, sorted by
    /// bitmask. Rank-0 graphs use the edge-cut characterization.
    pub fn elementary_subgraphs(&self) -> Vec<VertexSet> {
        if self.loop_free_circuit_rank() == 0 {
            self.elementary_subgraphs_tree()
        } else {
            self.elementary_subgraphs_exhaustive()
        }
    }

    /// General enumerator over all proper nonempty vertex subsets.
    pub fn elementary_subgraphs_exhaustive(&self) -> Vec<VertexSet> {
        let k = self.num_vertices();
        let full = VertexSet::full(k);
        (1..full.bits())
            .map(VertexSet::from_bits)
            .filter(|&s| self.is_connected_on(s) && self.is_connected_on(s.complement(k)))
            .collect()
    }

    /// Rank-0 fast path: the two sides of every non-loop edge.
    pub fn elementary_subgraphs_tree(&self) -> Vec<VertexSet> {
        let k = self.num_vertices();
        let mut out: Vec<VertexSet> = Vec::new();
        for e in 0..self.num_edges() {
            if self.is_loop(e) {
                continue;
            }
            let side = self.component_within(self.edges[e].0, VertexSet::full(k), Some(e));
            out.push(side);
            out.push(side.complement(k));
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn format_set(&self, set: VertexSet) -> String {
        let names: Vec<&str> = set.iter().map(|v| self.ids[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// The loop-free part of a rank-0 graph as a rooted tree.
#[derive(Clone, Debug)]
pub struct RootedTree {
    pub root: usize,
    /// Vertices in preorder; parents come before children.
    pub order: Vec<usize>,
    /// `(parent vertex, connecting edge)`; `None` at the root.
    pub parent: Vec<Option<(usize, usize)>>,
    pub children: Vec<Vec<usize>>,
    /// Each vertex together with its descendants.
    pub subtree: Vec<VertexSet>,
}

impl MarkedGraph {
    pub fn rooted_tree(&self, root: usize) -> Result<RootedTree> {
        let rank = self.loop_free_circuit_rank();
        if rank != 0 {
            return Err(Error::NotTreeLike(rank));
        }
        let k = self.num_vertices();
        if root >= k {
            return Err(Error::InvalidGraph(format!("root {root} out of range")));
        }
        let mut parent = vec![None; k];
        let mut children = vec![Vec::new(); k];
        let mut order = vec![root];
        let mut visited = VertexSet::singleton(root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for (e, &(a, b)) in self.edges.iter().enumerate() {
                if a == b {
                    continue;
                }
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !visited.contains(w) {
                    visited.insert(w);
                    parent[w] = Some((v, e));
                    children[v].push(w);
                    order.push(w);
                }
            }
        }
        let mut subtree = vec![VertexSet::empty(); k];
        for &v in order.iter().rev() {
            let mut s = VertexSet::singleton(v);
            for &c in &children[v] {
                s = VertexSet::from_bits(s.bits() | subtree[c].bits());
            }
            subtree[v] = s;
        }
        Ok(RootedTree {
            root,
            order,
            parent,
            children,
            subtree,
        })
    }
}

fn sorted_pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Generates stable marked graphs of genus `g` with `n` markings, loop-free
/// circuit rank 0 and at most `max_vertices` vertices: every labeled tree
/// shape, genus/loop distribution and marking assignment, with exact
/// relabelings of the same graph removed.
pub fn enumerate_tree_type_graphs(g: u32, n: usize, max_vertices: usize) -> Result<Vec<MarkedGraph>> {
    check_gn(g, n)?;
    let mut out = Vec::new();
    for k in 1..=max_vertices.min(MAX_VERTICES) {
        let mut seen = BTreeSet::new();
        for tree in labeled_trees(k) {
            for weights in compositions(g, 2 * k) {
                let (genera, loops) = weights.split_at(k);
                for markings in assignments(n, k) {
                    if !is_stable_shape(k, &tree, genera, loops, &markings) {
                        continue;
                    }
                    if k <= 6 {
                        let key = canonical_key(k, &tree, genera, loops, &markings);
                        if !seen.insert(key) {
                            continue;
                        }
                    }
                    let mut edges = tree.clone();
                    for (v, &l) in loops.iter().enumerate() {
                        edges.extend(std::iter::repeat_n((v, v), l as usize));
                    }
                    out.push(MarkedGraph::from_parts(genera, &edges, &markings)?);
                }
            }
        }
    }
    Ok(out)
}

fn is_stable_shape(
    k: usize,
    tree: &[(usize, usize)],
    genera: &[u32],
    loops: &[u32],
    markings: &[usize],
) -> bool {
    (0..k).all(|v| {
        if genera[v] > 0 {
            return true;
        }
        let tree_valence = tree.iter().filter(|&&(a, b)| a == v || b == v).count();
        let marks = markings.iter().filter(|&&m| m == v).count();
        tree_valence + 2 * loops[v] as usize + marks >= 3
    })
}

type ShapeKey = (Vec<(u32, u32)>, Vec<(usize, usize)>, Vec<usize>);

fn canonical_key(
    k: usize,
    tree: &[(usize, usize)],
    genera: &[u32],
    loops: &[u32],
    markings: &[usize],
) -> ShapeKey {
    let mut best: Option<ShapeKey> = None;
    for perm in permutations(k) {
        let mut weights = vec![(0, 0); k];
        for v in 0..k {
            weights[perm[v]] = (genera[v], loops[v]);
        }
        let mut edges: Vec<(usize, usize)> = tree
            .iter()
            .map(|&(a, b)| sorted_pair(perm[a], perm[b]))
            .collect();
        edges.sort();
        let marks = markings.iter().map(|&v| perm[v]).collect();
        let key = (weights, edges, marks);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.expect("at least one permutation")
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// All labeled trees on `k` vertices, decoded from Prüfer sequences.
fn labeled_trees(k: usize) -> Vec<Vec<(usize, usize)>> {
    match k {
        0 => Vec::new(),
        1 => vec![Vec::new()],
        2 => vec![vec![(0, 1)]],
        _ => {
            let len = k - 2;
            let total = k.pow(len as u32);
            (0..total)
                .map(|mut code| {
                    let seq: Vec<usize> = (0..len)
                        .map(|_| {
                            let x = code % k;
                            code /= k;
                            x
                        })
                        .collect();
                    prufer_decode(k, &seq)
                })
                .collect()
        }
    }
}

fn prufer_decode(k: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; k];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(k - 1);
    for &x in seq {
        let leaf = (0..k).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push(sorted_pair(leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    edges.push(sorted_pair(rest[0], rest[1]));
    edges
}

/// Ordered ways of writing `total` as a sum of `parts` nonnegative integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All maps `{1..n} → {0..k-1}`.
fn assignments(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..k).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}
