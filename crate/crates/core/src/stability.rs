//! The stability space over moduli of marked curves with loop-free circuit
//! rank 0.
//!
//! A parameter is stored by its two-vertex coordinates: for each admissible
//! pair `(i, S)`, `φ⁺(i, S)` is the value on the `S`-side vertex of `Γ(i, S)`
//! and `φ⁻(i, S) = g - 1 - φ⁺(i, S)` the value on the other vertex. Values on
//! any other rank-0 graph are recovered by [`StabilityParameter::extend_to_graph`].
//!
//! Walls are the loci `φ⁺(i, S) = k + 1/2`. Off the walls, a parameter lies in
//! the stability polytope named by the label `d(i, S)`, the integer nearest
//! to `φ⁺(i, S)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graphs::{admissible_pairs, check_gn, BoundaryPair, MarkedGraph, VertexSet};
use crate::rational::{format_rational, int, is_half_odd, nearest_integer, rat, Rational};

/// Integer coefficients indexed by boundary pairs: twists of polytope labels,
/// and coefficients of the boundary components `C±_{i,S}`.
pub type Twist = BTreeMap<BoundaryPair, i64>;

/// The wall `φ⁺(pair) = lower + 1/2`, separating the polytopes labelled
/// `lower` and `lower + 1` at `pair`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Wall {
    pub pair: BoundaryPair,
    pub lower: i64,
}

impl Wall {
    pub fn value(&self) -> Rational {
        int(self.lower) + rat(1, 2)
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "phi+{} = {} lies on the wall between labels d = {} and d = {}",
            self.pair,
            format_rational(&self.value()),
            self.lower,
            self.lower + 1
        )
    }
}

fn normalize_entry(g: u32, n: usize, p: BoundaryPair) -> Result<(BoundaryPair, bool)> {
    let (q, flipped) = p.normalized(g, n);
    if !q.is_admissible(g, n) {
        return Err(Error::InadmissiblePair { pair: p, g, n });
    }
    Ok((q, flipped))
}

fn check_domain<V>(g: u32, n: usize, map: &BTreeMap<BoundaryPair, V>) -> Result<()> {
    let pairs = admissible_pairs(g, n)?;
    if let Some(p) = pairs.iter().find(|p| !map.contains_key(p)) {
        return Err(Error::InvalidParameter(format!("missing coordinate for {p}")));
    }
    Ok(())
}

/// An element of the stability space, stored by exact coordinates `φ⁺(i, S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityParameter {
    g: u32,
    n: usize,
    coords: BTreeMap<BoundaryPair, Rational>,
}

impl StabilityParameter {
    /// Builds a parameter from `(pair, value)` entries. Entries for pairs with
    /// `1 ∉ S` give the value on the `S` side and are rewritten in terms of
    /// `(g - i, S^c)`. Every admissible pair must receive exactly one value.
    pub fn new<I>(g: u32, n: usize, coords: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BoundaryPair, Rational)>,
    {
        check_gn(g, n)?;
        let top = int(i64::from(g) - 1);
        let mut map = BTreeMap::new();
        for (p, value) in coords {
            let (q, flipped) = normalize_entry(g, n, p)?;
            let value = if flipped { top - value } else { value };
            if map.insert(q, value).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate coordinate for {q}")));
            }
        }
        check_domain(g, n, &map)?;
        Ok(StabilityParameter { g, n, coords: map })
    }

    pub fn from_fn(g: u32, n: usize, mut f: impl FnMut(BoundaryPair) -> Rational) -> Result<Self> {
        let pairs = admissible_pairs(g, n)?;
        Self::new(g, n, pairs.into_iter().map(|p| (p, f(p))))
    }

    /// `φ_d⃗`: `φ⁺(i, S) = d_S = Σ_{j ∈ S} d_j`.
    pub fn from_degrees(g: u32, n: usize, degrees: &[i64]) -> Result<Self> {
        check_degree_vector(g, n, degrees)?;
        Self::from_fn(g, n, |p| int(degree_on(degrees, p)))
    }

    /// The integral point `φ⁺ = d(i, S)` inside the polytope named by `label`.
    pub fn from_label(label: &PolytopeLabel) -> Self {
        StabilityParameter {
            g: label.g,
            n: label.n,
            coords: label.label.iter().map(|(&p, &d)| (p, int(d))).collect(),
        }
    }

    /// Half the degree of the dualizing sheaf: `φ⁺(i, S) = i - 1/2`.
    pub fn canonical(g: u32, n: usize) -> Result<Self> {
        Self::from_fn(g, n, |p| int(i64::from(p.i)) - rat(1, 2))
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &BTreeMap<BoundaryPair, Rational> {
        &self.coords
    }

    /// `φ⁺` at a pair; non-normalized pairs are read from the other side.
    pub fn phi_plus(&self, p: BoundaryPair) -> Option<Rational> {
        let (q, flipped) = p.normalized(self.g, self.n);
        let v = *self.coords.get(&q)?;
        Some(if flipped { self.top() - v } else { v })
    }

    pub fn phi_minus(&self, p: BoundaryPair) -> Option<Rational> {
        self.phi_plus(p).map(|v| self.top() - v)
    }

    fn top(&self) -> Rational {
        int(i64::from(self.g) - 1)
    }

    /// The first wall (in canonical pair order) containing the parameter.
    pub fn first_wall(&self) -> Option<Wall> {
        self.coords.iter().find(|(_, &v)| is_half_odd(v)).map(|(&pair, &v)| Wall {
            pair,
            lower: v.floor().to_integer(),
        })
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.first_wall().is_none()
    }

    pub fn polytope_label(&self) -> Result<PolytopeLabel> {
        if let Some(w) = self.first_wall() {
            return Err(Error::DegenerateParameter(w));
        }
        Ok(PolytopeLabel {
            g: self.g,
            n: self.n,
            label: self.coords.iter().map(|(&p, &v)| (p, nearest_integer(v))).collect(),
        })
    }

    /// Translation `φ⁺ += t`: the action of a twist on parameters.
    pub fn translated(&self, twist: &Twist) -> Result<Self> {
        let mut out = self.clone();
        for (p, &t) in twist {
            let slot = out
                .coords
                .get_mut(p)
                .ok_or(Error::InadmissiblePair { pair: *p, g: self.g, n: self.n })?;
            *slot += int(t);
        }
        Ok(out)
    }

    /// Whether the theta divisor is flat over the base: every label is `i - 1`
    /// or `i`, i.e. the closure of the polytope contains the canonical parameter.
    pub fn is_theta_flat(&self) -> Result<bool> {
        Ok(self.polytope_label()?.is_theta_flat())
    }

    pub fn is_theta_reduced(&self) -> Result<bool> {
        Ok(self.polytope_label()?.is_theta_reduced())
    }

    /// The unique vector on a rank-0 graph compatible with every contraction,
    /// computed from subtree sums with the tree rooted at vertex 0.
    pub fn extend_to_graph(&self, graph: &MarkedGraph) -> Result<GraphParameter> {
        self.extend_to_graph_rooted(graph, 0)
    }

    pub fn extend_to_graph_rooted(&self, graph: &MarkedGraph, root: usize) -> Result<GraphParameter> {
        if graph.genus() != self.g || graph.n() != self.n {
            return Err(Error::GraphMismatch(format!(
                "graph has (g, n) = ({}, {}), parameter has ({}, {})",
                graph.genus(),
                graph.n(),
                self.g,
                self.n
            )));
        }
        let tree = graph.rooted_tree(root)?;
        let k = graph.num_vertices();
        // Prescribed sum over each subtree.
        let mut target = vec![self.top(); k];
        for v in 0..k {
            if let Some((_, e)) = tree.parent[v] {
                let (pair, side) = graph.boundary_pair_of_edge(e)?;
                let plus = self.phi_plus(pair).ok_or(Error::InadmissiblePair {
                    pair,
                    g: self.g,
                    n: self.n,
                })?;
                target[v] = if side == tree.subtree[v] { plus } else { self.top() - plus };
            }
        }
        let values = (0..k)
            .map(|v| {
                tree.children[v]
                    .iter()
                    .fold(target[v], |acc, &c| acc - target[c])
            })
            .collect();
        GraphParameter::new(graph.clone(), values)
    }
}

/// Sum of `degrees` over the markings of `p`.
pub fn degree_on(degrees: &[i64], p: BoundaryPair) -> i64 {
    p.markings().iter().map(|&j| degrees[j - 1]).sum()
}

pub fn check_degree_vector(g: u32, n: usize, degrees: &[i64]) -> Result<()> {
    check_gn(g, n)?;
    if degrees.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: degrees.len() });
    }
    let found: i64 = degrees.iter().sum();
    let expected = i64::from(g) - 1;
    if found != expected {
        return Err(Error::DegreeSumMismatch { expected, found });
    }
    Ok(())
}

/// Names a stability polytope by its integer labels `d(i, S)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolytopeLabel {
    g: u32,
    n: usize,
    label: BTreeMap<BoundaryPair, i64>,
}

impl PolytopeLabel {
    /// Entries for pairs with `1 ∉ S` are rewritten as `(g - i, S^c) ↦ g - 1 - d`.
    pub fn new<I>(g: u32, n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BoundaryPair, i64)>,
    {
        check_gn(g, n)?;
        let mut map = BTreeMap::new();
        for (p, d) in entries {
            let (q, flipped) = normalize_entry(g, n, p)?;
            let d = if flipped { i64::from(g) - 1 - d } else { d };
            if map.insert(q, d).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate label for {q}")));
            }
        }
        check_domain(g, n, &map)?;
        Ok(PolytopeLabel { g, n, label: map })
    }

    /// Labels listed in canonical pair order.
    pub fn from_values(g: u32, n: usize, values: &[i64]) -> Result<Self> {
        let pairs = admissible_pairs(g, n)?;
        if values.len() != pairs.len() {
            return Err(Error::LengthMismatch { expected: pairs.len(), found: values.len() });
        }
        Self::new(g, n, pairs.into_iter().zip(values.iter().copied()))
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: BoundaryPair) -> Option<i64> {
        self.label.get(&p).copied()
    }

    pub fn entries(&self) -> &BTreeMap<BoundaryPair, i64> {
        &self.label
    }

    pub fn is_theta_flat(&self) -> bool {
        self.label.iter().all(|(p, &d)| {
            let i = i64::from(p.i);
            d == i - 1 || d == i
        })
    }

    /// Some polytope adjacent to this one (coordinatewise within one step)
    /// is flat.
    pub fn is_theta_reduced(&self) -> bool {
        self.label.iter().all(|(p, &d)| {
            let i = i64::from(p.i);
            (i - 2..=i + 1).contains(&d)
        })
    }

    /// `d'(i, S) = d(i, S) + t(i, S)`. A positive coefficient is one copy of
    /// `O(C⁻_{i,S})`, which raises the degree on the `S` side by one.
    pub fn twisted(&self, twist: &Twist) -> Result<Self> {
        let mut out = self.clone();
        for (p, &t) in twist {
            let slot = out
                .label
                .get_mut(p)
                .ok_or(Error::InadmissiblePair { pair: *p, g: self.g, n: self.n })?;
            *slot += t;
        }
        Ok(out)
    }
}

/// All `2^m` labels with `d(i, S) ∈ {i - 1, i}` at every admissible pair.
pub fn flat_labels(g: u32, n: usize) -> Result<Vec<PolytopeLabel>> {
    let pairs = admissible_pairs(g, n)?;
    let m = pairs.len();
    if m >= 32 {
        return Err(Error::InvalidParameter(format!("{m} pairs is too many to enumerate")));
    }
    Ok((0..1u64 << m)
        .map(|bits| PolytopeLabel {
            g,
            n,
            label: pairs
                .iter()
                .enumerate()
                .map(|(k, &p)| (p, i64::from(p.i) - 1 + ((bits >> k) & 1) as i64))
                .collect(),
        })
        .collect())
}

/// The unique twist carrying `from` to `to`.
pub fn connecting_twist(from: &PolytopeLabel, to: &PolytopeLabel) -> Result<Twist> {
    if (from.g, from.n) != (to.g, to.n) {
        return Err(Error::BasisMismatch(from.g, from.n, to.g, to.n));
    }
    Ok(from
        .label
        .iter()
        .map(|(&p, &d1)| (p, to.label[&p] - d1))
        .collect())
}

/// A vector on the vertices of one graph summing to `g - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphParameter {
    graph: MarkedGraph,
    values: Vec<Rational>,
}

impl GraphParameter {
    pub fn new(graph: MarkedGraph, values: Vec<Rational>) -> Result<Self> {
        if values.len() != graph.num_vertices() {
            return Err(Error::LengthMismatch {
                expected: graph.num_vertices(),
                found: values.len(),
            });
        }
        let sum: Rational = values.iter().copied().sum();
        let expected = int(i64::from(graph.genus()) - 1);
        if sum != expected {
            return Err(Error::InvalidParameter(format!(
                "values sum to {}, expected g - 1 = {}",
                format_rational(&sum),
                format_rational(&expected)
            )));
        }
        Ok(GraphParameter { graph, values })
    }

    /// `φ_can(v) = deg_v(ω) / 2`.
    pub fn canonical(graph: &MarkedGraph) -> Self {
        let values = (0..graph.num_vertices())
            .map(|v| rat(canonical_degree(graph, v), 2))
            .collect();
        GraphParameter::new(graph.clone(), values).expect("deg(ω) = 2g - 2")
    }

    /// The parameter attached to slope stability with respect to a positive
    /// weight `ample` after twisting by a line bundle of multidegree `twist`:
    /// `(A(v) / deg A) · deg M + deg_v(ω) / 2 - M(v)`.
    pub fn from_slope(graph: &MarkedGraph, ample: &[i64], twist: &[i64]) -> Result<Self> {
        let k = graph.num_vertices();
        for len in [ample.len(), twist.len()] {
            if len != k {
                return Err(Error::LengthMismatch { expected: k, found: len });
            }
        }
        if ample.iter().any(|&a| a <= 0) {
            return Err(Error::NonAmple);
        }
        let total_ample: i64 = ample.iter().sum();
        let total_twist: i64 = twist.iter().sum();
        let values = (0..k)
            .map(|v| {
                rat(ample[v] * total_twist, total_ample) + rat(canonical_degree(graph, v), 2)
                    - int(twist[v])
            })
            .collect();
        GraphParameter::new(graph.clone(), values)
    }

    pub fn graph(&self) -> &MarkedGraph {
        &self.graph
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, v: usize) -> Rational {
        self.values[v]
    }

    pub fn sum_over(&self, set: VertexSet) -> Rational {
        set.iter().map(|v| self.values[v]).sum()
    }

    /// `ℓ(Γ0, d)(φ) = d - Σ_{v ∈ Γ0} φ(v) + #(Γ0 ∩ Γ0^c) / 2`.
    pub fn ell(&self, set: VertexSet, d: i64) -> Result<Rational> {
        let k = self.graph.num_vertices();
        if set.is_empty() || set == VertexSet::full(k) || set.bits() >> k != 0 {
            return Err(Error::EmptyOrFullSubset);
        }
        Ok(int(d) - self.sum_over(set) + rat(self.graph.crossing_edges(set) as i64, 2))
    }

    /// Adds a vertex-wise integer shift, keeping the total if `shift` sums to 0.
    pub fn shifted(&self, shift: &[i64]) -> Result<Self> {
        if shift.len() != self.values.len() {
            return Err(Error::LengthMismatch { expected: self.values.len(), found: shift.len() });
        }
        let values = self.values.iter().zip(shift).map(|(&v, &s)| v + int(s)).collect();
        GraphParameter::new(self.graph.clone(), values)
    }

    /// The compatible parameter on the graph obtained by contracting `edges`.
    pub fn pushforward(&self, edges: &[usize]) -> Result<Self> {
        let (contracted, map) = self.graph.contract(edges)?;
        let mut values = vec![int(0); contracted.num_vertices()];
        for (v, &w) in map.iter().enumerate() {
            values[w] += self.values[v];
        }
        GraphParameter::new(contracted, values)
    }
}

/// `deg_v(ω) = 2 g(v) - 2 + valence(v)` with loops counted twice.
pub fn canonical_degree(graph: &MarkedGraph, v: usize) -> i64 {
    2 * i64::from(graph.vertex_genus(v)) - 2 + graph.valence(v) as i64
}

/// Whether `coarse` is compatible with `fine` under contraction of `edges`:
/// each value of `coarse` equals the sum of `fine` over its preimage.
pub fn check_compatibility(fine: &GraphParameter, edges: &[usize], coarse: &GraphParameter) -> Result<bool> {
    let pushed = fine.pushforward(edges)?;
    let (target, source) = (coarse.graph(), pushed.graph());
    let shape_error = || {
        Error::GraphMismatch(format!(
            "contracted graph does not match the target graph ({} vs {} vertices)",
            source.num_vertices(),
            target.num_vertices()
        ))
    };
    if target.num_vertices() != source.num_vertices()
        || target.num_edges() != source.num_edges()
        || target.n() != source.n()
    {
        return Err(shape_error());
    }
    let mut matches = Vec::with_capacity(source.num_vertices());
    for w in 0..source.num_vertices() {
        let t = target.vertex_index(source.id(w)).ok_or_else(shape_error)?;
        if target.vertex_genus(t) != source.vertex_genus(w) {
            return Err(shape_error());
        }
        matches.push(t);
    }
    for j in 1..=source.n() {
        if matches[source.marking(j)] != target.marking(j) {
            return Err(shape_error());
        }
    }
    Ok((0..source.num_vertices()).all(|w| pushed.value(w) == coarse.value(matches[w])))
}
