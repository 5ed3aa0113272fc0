//! φ-(semi)stability of degree `g - 1` line bundles and rank 1 torsion-free
//! sheaves, described combinatorially by their multidegrees.
//!
//! A torsion-free sheaf is recorded by the set `Δ` of edges (nodes) where it
//! fails to be locally free and the multidegree of the corresponding line
//! bundle on the partial normalization. Its degree on an induced subgraph
//! `Γ0` is the sum of normalized degrees plus the failure edges internal to
//! `Γ0`, so that `deg_{Γ0} + deg_{Γ0^c} = g - 1 - δ_{Γ0}` with `δ_{Γ0}` the
//! failure edges crossing the cut.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graphs::{MarkedGraph, VertexSet};
use crate::rational::{abs, ceil_int, floor_int, int, is_half_odd, nearest_integer, rat, Rational};
use crate::stability::{GraphParameter, Wall};

/// Degrees of a degree `g - 1` line bundle on each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multidegree {
    graph: MarkedGraph,
    deg: Vec<i64>,
}

impl Multidegree {
    pub fn new(graph: MarkedGraph, deg: Vec<i64>) -> Result<Self> {
        if deg.len() != graph.num_vertices() {
            return Err(Error::LengthMismatch { expected: graph.num_vertices(), found: deg.len() });
        }
        let expected = i64::from(graph.genus()) - 1;
        let found = deg.iter().sum();
        if found != expected {
            return Err(Error::DegreeSumMismatch { expected, found });
        }
        Ok(Multidegree { graph, deg })
    }

    pub fn graph(&self) -> &MarkedGraph {
        &self.graph
    }

    pub fn degrees(&self) -> &[i64] {
        &self.deg
    }

    pub fn to_sheaf(&self) -> TorsionFreeDegree {
        TorsionFreeDegree {
            graph: self.graph.clone(),
            norm_deg: self.deg.clone(),
            failures: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionFreeDegree {
    graph: MarkedGraph,
    norm_deg: Vec<i64>,
    failures: Vec<usize>,
}

impl TorsionFreeDegree {
    /// `failures` are edge indices; duplicates are merged.
    pub fn new(graph: MarkedGraph, norm_deg: Vec<i64>, failures: &[usize]) -> Result<Self> {
        if norm_deg.len() != graph.num_vertices() {
            return Err(Error::LengthMismatch {
                expected: graph.num_vertices(),
                found: norm_deg.len(),
            });
        }
        let failures: Vec<usize> = failures.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(&e) = failures.iter().find(|&&e| e >= graph.num_edges()) {
            return Err(Error::InvalidGraph(format!("failure edge {e} out of range")));
        }
        let expected = i64::from(graph.genus()) - 1;
        let found = norm_deg.iter().sum::<i64>() + failures.len() as i64;
        if found != expected {
            return Err(Error::DegreeSumMismatch { expected, found });
        }
        Ok(TorsionFreeDegree { graph, norm_deg, failures })
    }

    pub fn graph(&self) -> &MarkedGraph {
        &self.graph
    }

    pub fn norm_degrees(&self) -> &[i64] {
        &self.norm_deg
    }

    pub fn failures(&self) -> &[usize] {
        &self.failures
    }

    pub fn is_line_bundle(&self) -> bool {
        self.failures.is_empty()
    }

    /// Degree of the maximal torsion-free quotient of the restriction to the
    /// subcurve with dual graph induced on `set`.
    pub fn partial_degree(&self, set: VertexSet) -> Result<i64> {
        if set.is_empty() {
            return Err(Error::EmptySubset);
        }
        let internal = self
            .failures
            .iter()
            .filter(|&&e| {
                let (a, b) = self.graph.edge(e);
                set.contains(a) && set.contains(b)
            })
            .count() as i64;
        Ok(set.iter().map(|v| self.norm_deg[v]).sum::<i64>() + internal)
    }

    /// `δ_{Γ0}`: failure edges crossing the cut.
    pub fn crossing_failures(&self, set: VertexSet) -> usize {
        self.failures
            .iter()
            .filter(|&&e| {
                let (a, b) = self.graph.edge(e);
                set.contains(a) != set.contains(b)
            })
            .count()
    }
}

impl From<Multidegree> for TorsionFreeDegree {
    fn from(m: Multidegree) -> Self {
        TorsionFreeDegree { graph: m.graph, norm_deg: m.deg, failures: Vec::new() }
    }
}

/// Which subgraphs the stability inequality is tested on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgraphMode {
    /// Only subgraphs with connected complement that are themselves connected.
    Elementary,
    /// Every proper nonempty vertex subset.
    All,
}

fn same_graph(phi: &GraphParameter, sheaf: &TorsionFreeDegree) -> Result<()> {
    if phi.graph() != sheaf.graph() {
        return Err(Error::GraphMismatch("parameter and sheaf live on different graphs".into()));
    }
    Ok(())
}

/// `deg_{Γ0}(F) ≥ φ(Γ0) - #(Γ0 ∩ Γ0^c)/2` (strict: `>`).
fn lower_bound_holds(phi: &GraphParameter, sheaf: &TorsionFreeDegree, set: VertexSet, strict: bool) -> bool {
    let deg = int(sheaf.partial_degree(set).expect("nonempty subset"));
    let bound = phi.sum_over(set) - rat(phi.graph().crossing_edges(set) as i64, 2);
    if strict {
        deg > bound
    } else {
        deg >= bound
    }
}

fn proper_subsets(k: usize) -> impl Iterator<Item = VertexSet> {
    (1..VertexSet::full(k).bits()).map(VertexSet::from_bits)
}

pub fn is_semistable(
    phi: &GraphParameter,
    sheaf: &TorsionFreeDegree,
    strict: bool,
    mode: SubgraphMode,
) -> Result<bool> {
    same_graph(phi, sheaf)?;
    let k = phi.graph().num_vertices();
    let holds = |s| lower_bound_holds(phi, sheaf, s, strict);
    Ok(match mode {
        SubgraphMode::Elementary => phi.graph().elementary_subgraphs().into_iter().all(holds),
        SubgraphMode::All => proper_subsets(k).all(holds),
    })
}

pub fn is_stable(phi: &GraphParameter, sheaf: &TorsionFreeDegree) -> Result<bool> {
    is_semistable(phi, sheaf, true, SubgraphMode::Elementary)
}

/// The two-sided form
/// `|deg_{Γ0} - φ(Γ0) + δ_{Γ0}/2| ≤ (#(Γ0 ∩ Γ0^c) - δ_{Γ0}) / 2` over every
/// proper subset.
pub fn is_semistable_symmetric(phi: &GraphParameter, sheaf: &TorsionFreeDegree, strict: bool) -> Result<bool> {
    same_graph(phi, sheaf)?;
    let graph = phi.graph();
    Ok(proper_subsets(graph.num_vertices()).all(|set| {
        let delta = sheaf.crossing_failures(set) as i64;
        let deg = int(sheaf.partial_degree(set).expect("nonempty subset"));
        let lhs = abs(deg - phi.sum_over(set) + rat(delta, 2));
        let rhs = rat(graph.crossing_edges(set) as i64 - delta, 2);
        if strict {
            lhs < rhs
        } else {
            lhs <= rhs
        }
    }))
}

/// The unique φ-stable multidegree on a rank-0 graph: every descendant
/// subtree receives the integer nearest to its φ-sum.
pub fn stable_multidegree(phi: &GraphParameter) -> Result<Multidegree> {
    let graph = phi.graph();
    let tree = graph.rooted_tree(0)?;
    let k = graph.num_vertices();
    let top = i64::from(graph.genus()) - 1;
    let mut subtree_degree = vec![top; k];
    for v in 0..k {
        let Some((_, e)) = tree.parent[v] else { continue };
        let sum = phi.sum_over(tree.subtree[v]);
        if is_half_odd(sum) {
            let (pair, side) = graph.boundary_pair_of_edge(e)?;
            let plus = if side == tree.subtree[v] { sum } else { int(top) - sum };
            return Err(Error::DegenerateParameter(Wall { pair, lower: floor_int(plus) }));
        }
        subtree_degree[v] = nearest_integer(sum);
    }
    let deg = (0..k)
        .map(|v| {
            tree.children[v]
                .iter()
                .fold(subtree_degree[v], |acc, &c| acc - subtree_degree[c])
        })
        .collect();
    Multidegree::new(graph.clone(), deg)
}

/// Exhaustive search for (semi)stable line-bundle multidegrees. The search
/// box comes from the single-vertex inequalities,
/// `φ(v) - x(v)/2 ≤ deg(v) ≤ φ(v) + x(v)/2` with `x(v)` the non-loop valence,
/// widened by one on each side. Results are sorted lexicographically.
pub fn all_stable_multidegrees_bruteforce(phi: &GraphParameter, strict: bool) -> Vec<Multidegree> {
    let graph = phi.graph();
    let k = graph.num_vertices();
    let top = i64::from(graph.genus()) - 1;
    let ranges: Vec<(i64, i64)> = (0..k)
        .map(|v| {
            let half = rat(graph.crossing_edges(VertexSet::singleton(v)) as i64, 2);
            let value: Rational = phi.value(v);
            (ceil_int(value - half) - 1, floor_int(value + half) + 1)
        })
        .collect();
    let mut out = Vec::new();
    let mut deg = vec![0i64; k];
    fn rec(
        v: usize,
        partial: i64,
        deg: &mut Vec<i64>,
        ranges: &[(i64, i64)],
        top: i64,
        visit: &mut dyn FnMut(&[i64]),
    ) {
        let k = deg.len();
        if v + 1 == k {
            let last = top - partial;
            let (lo, hi) = ranges[v];
            if (lo..=hi).contains(&last) {
                deg[v] = last;
                visit(deg);
            }
            return;
        }
        let (lo, hi) = ranges[v];
        for d in lo..=hi {
            deg[v] = d;
            rec(v + 1, partial + d, deg, ranges, top, visit);
        }
    }
    rec(0, 0, &mut deg, &ranges, top, &mut |candidate: &[i64]| {
        let m = Multidegree { graph: graph.clone(), deg: candidate.to_vec() };
        if is_semistable(phi, &m.to_sheaf(), strict, SubgraphMode::All).expect("same graph") {
            out.push(m);
        }
    });
    out.sort_by(|a, b| a.deg.cmp(&b.deg));
    out
}
