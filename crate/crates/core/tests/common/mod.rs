//! Independent oracles and generators shared by the integration tests.
//!
//! Nothing here calls the library routine it is used to check: stability is
//! re-derived from the raw edge list, graph parameters come from solving the
//! compatibility equations by exact elimination, and class coefficients are
//! evaluated term by term from the formulas.

#![allow(dead_code)]

use std::collections::BTreeMap;

use jacwall::rational::{int, rat, Rational};
use jacwall::{admissible_pairs, enumerate_tree_type_graphs, BoundaryPair, MarkedGraph, StabilityParameter};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GN: [(u32, usize); 5] = [(1, 2), (2, 1), (2, 2), (3, 2), (3, 3)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus(g: u32, n: usize) -> Vec<MarkedGraph> {
    enumerate_tree_type_graphs(g, n, 4).expect("valid (g, n)")
}

fn half_odd(q: Rational) -> bool {
    (q * int(2)).is_integer() && !q.is_integer()
}

/// Uniform rational in `[lo, hi]` with denominator at most 10, off the walls.
pub fn off_wall_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    loop {
        let q: i64 = rng.gen_range(1..=10);
        let p = rng.gen_range(lo * q..=hi * q);
        let x = rat(p, q);
        if !half_odd(x) {
            return x;
        }
    }
}

/// A nondegenerate parameter with `φ⁺(i, S)` within 3 of `i`.
pub fn random_parameter(rng: &mut ChaCha8Rng, g: u32, n: usize) -> StabilityParameter {
    StabilityParameter::from_fn(g, n, |p| {
        let i = i64::from(p.i);
        off_wall_rational(rng, i - 3, i + 3)
    })
    .expect("every pair receives a value")
}

/// Degree vectors of length `n` summing to `g - 1` with entries in `[lo, hi]`.
pub fn degree_vectors(g: u32, n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, lo: i64, hi: i64, target: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() + 1 == n {
            let last = target - cur.iter().sum::<i64>();
            if (lo..=hi).contains(&last) {
                cur.push(last);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for d in lo..=hi {
            cur.push(d);
            rec(n, lo, hi, target, cur, out);
            cur.pop();
        }
    }
    rec(n, lo, hi, i64::from(g) - 1, &mut cur, &mut out);
    out
}

pub fn random_degree_vector(rng: &mut ChaCha8Rng, g: u32, n: usize) -> Vec<i64> {
    degree_vectors(g, n, -3, 4).choose(rng).cloned().expect("nonempty")
}

/// `floor(x + 1/2)`, computed on numerator and denominator.
pub fn nearest(x: Rational) -> i64 {
    (2 * x.numer() + x.denom()).div_euclid(2 * x.denom())
}

pub fn c2(m: i64) -> i64 {
    m * (m - 1) / 2
}

pub fn sum_on(d: &[i64], p: BoundaryPair) -> i64 {
    (1..=d.len()).filter(|&j| p.contains(j)).map(|j| d[j - 1]).sum()
}

/// Non-loop edges with exactly one endpoint in `set`.
pub fn cut_size(graph: &MarkedGraph, set: u64) -> i64 {
    graph
        .edges()
        .iter()
        .filter(|&&(a, b)| ((set >> a) & 1) != ((set >> b) & 1))
        .count() as i64
}

/// Definition of (semi)stability checked on every proper nonempty subset.
pub fn oracle_semistable(
    graph: &MarkedGraph,
    phi: &[Rational],
    norm_deg: &[i64],
    failures: &[usize],
    strict: bool,
) -> bool {
    let k = graph.num_vertices();
    (1..(1u64 << k) - 1).all(|set| {
        let inside = |v: usize| (set >> v) & 1 == 1;
        let internal = failures
            .iter()
            .filter(|&&e| {
                let (a, b) = graph.edges()[e];
                inside(a) && inside(b)
            })
            .count() as i64;
        let deg = int((0..k).filter(|&v| inside(v)).map(|v| norm_deg[v]).sum::<i64>() + internal);
        let phi_sum: Rational = (0..k).filter(|&v| inside(v)).map(|v| phi[v]).sum();
        let bound = phi_sum - rat(cut_size(graph, set), 2);
        if strict {
            deg > bound
        } else {
            deg >= bound
        }
    })
}

/// All line-bundle multidegrees passing [`oracle_semistable`], sorted. The
/// search box is `|deg(v) - φ(v)| ≤ valence(v)`, which contains every
/// solution of the singleton inequalities.
pub fn oracle_stable_set(graph: &MarkedGraph, phi: &[Rational], strict: bool) -> Vec<Vec<i64>> {
    let k = graph.num_vertices();
    let top = i64::from(graph.genus()) - 1;
    let ranges: Vec<(i64, i64)> = (0..k)
        .map(|v| {
            let c = cut_size(graph, 1 << v);
            let x = phi[v];
            ((x - int(c)).floor().to_integer(), (x + int(c)).ceil().to_integer())
        })
        .collect();
    let mut out = Vec::new();
    let mut deg = vec![0; k];
    fn rec(
        v: usize,
        deg: &mut Vec<i64>,
        ranges: &[(i64, i64)],
        top: i64,
        check: &dyn Fn(&[i64]) -> bool,
        out: &mut Vec<Vec<i64>>,
    ) {
        let k = deg.len();
        if v + 1 == k {
            deg[v] = top - deg[..v].iter().sum::<i64>();
            if check(deg) {
                out.push(deg.clone());
            }
            return;
        }
        for d in ranges[v].0..=ranges[v].1 {
            deg[v] = d;
            rec(v + 1, deg, ranges, top, check, out);
        }
    }
    let check = |d: &[i64]| oracle_semistable(graph, phi, d, &[], strict);
    rec(0, &mut deg, &ranges, top, &check, &mut out);
    out.sort();
    out
}

/// Vertices reachable from `start` through non-loop edges other than `skip`.
fn side_of(graph: &MarkedGraph, start: usize, skip: usize) -> u64 {
    let mut set = 1u64 << start;
    let mut changed = true;
    while changed {
        changed = false;
        for (e, &(a, b)) in graph.edges().iter().enumerate() {
            if e == skip || a == b {
                continue;
            }
            let (ia, ib) = ((set >> a) & 1 == 1, (set >> b) & 1 == 1);
            if ia != ib {
                set |= (1 << a) | (1 << b);
                changed = true;
            }
        }
    }
    set
}

/// The two-vertex coordinate prescribing the φ-sum over `set`, the side of
/// a separating edge.
pub fn prescribed_sum(graph: &MarkedGraph, phi: &StabilityParameter, set: u64) -> Rational {
    let (g, n) = (phi.g(), phi.n());
    let inside = |v: usize| (set >> v) & 1 == 1;
    let genus: u32 = (0..graph.num_vertices())
        .filter(|&v| inside(v))
        .map(|v| graph.genera()[v])
        .sum::<u32>()
        + graph.edges().iter().filter(|&&(a, b)| a == b && inside(a)).count() as u32;
    let markings: Vec<usize> = (1..=n).filter(|&j| inside(graph.markings()[j - 1])).collect();
    if markings.contains(&1) {
        phi.phi_plus(BoundaryPair::new(genus, markings)).expect("admissible")
    } else {
        let rest: Vec<usize> = (1..=n).filter(|j| !markings.contains(j)).collect();
        int(i64::from(g) - 1) - phi.phi_plus(BoundaryPair::new(g - genus, rest)).expect("admissible")
    }
}

/// Solves the compatibility equations (total `g - 1`; for every separating
/// edge, the sum over one side equals its two-vertex coordinate) by exact
/// Gauss-Jordan elimination. Returns `None` if the system is not uniquely
/// solvable.
pub fn oracle_extension(phi: &StabilityParameter, graph: &MarkedGraph) -> Option<Vec<Rational>> {
    let k = graph.num_vertices();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut total = vec![Rational::one(); k];
    total.push(int(i64::from(phi.g()) - 1));
    rows.push(total);
    for (e, &(a, b)) in graph.edges().iter().enumerate() {
        if a == b {
            continue;
        }
        let set = side_of(graph, a, e);
        let mut row: Vec<Rational> = (0..k).map(|v| int(((set >> v) & 1) as i64)).collect();
        row.push(prescribed_sum(graph, phi, set));
        rows.push(row);
    }
    let mut pivot_row = 0;
    for col in 0..k {
        let found = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, found);
        let lead = rows[pivot_row][col];
        for x in rows[pivot_row].iter_mut() {
            *x /= lead;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col];
                let pivot = rows[pivot_row].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x -= factor * y;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[k..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|v| rows[v][k]).collect())
}

/// Coefficients of `δ_{i,S}` in the pulled-back theta class, evaluated from
/// the formula with the label recomputed by [`nearest`].
pub fn oracle_theta_boundary(phi: &StabilityParameter, d: &[i64]) -> BTreeMap<BoundaryPair, i64> {
    admissible_pairs(phi.g(), phi.n())
        .unwrap()
        .into_iter()
        .map(|p| {
            let i = i64::from(p.i);
            let label = nearest(phi.phi_plus(p).unwrap());
            (p, c2(label - i + 1) - c2(sum_on(d, p) - i + 1))
        })
        .filter(|&(_, c)| c != 0)
        .collect()
}

pub fn to_rational_map(m: &BTreeMap<BoundaryPair, i64>) -> BTreeMap<BoundaryPair, Rational> {
    m.iter().map(|(&p, &c)| (p, int(c))).collect()
}

/// A proper nonempty vertex subset as a bitmask.
pub fn random_proper_subset(rng: &mut ChaCha8Rng, k: usize) -> u64 {
    rng.gen_range(1..(1u64 << k) - 1)
}

/// A random subset of edge indices.
pub fn random_edge_subset(rng: &mut ChaCha8Rng, m: usize) -> Vec<usize> {
    (0..m).filter(|_| rng.gen_bool(0.5)).collect()
}

/// Random norm degrees summing to `g - 1 - #failures`, each within 2 of `φ(v)`.
pub fn random_sheaf(rng: &mut ChaCha8Rng, graph: &MarkedGraph, phi: &[Rational]) -> (Vec<i64>, Vec<usize>) {
    let k = graph.num_vertices();
    let failures: Vec<usize> = (0..graph.num_edges()).filter(|_| rng.gen_bool(0.3)).collect();
    let target = i64::from(graph.genus()) - 1 - failures.len() as i64;
    let mut deg: Vec<i64> = (0..k)
        .map(|v| phi[v].round().to_integer() + rng.gen_range(-2..=2))
        .collect();
    let excess: i64 = deg.iter().sum::<i64>() - target;
    let v = rng.gen_range(0..k);
    deg[v] -= excess;
    (deg, failures)
}

/// Admissible pairs listed from the stability of both sides of the node.
pub fn oracle_pairs(g: u32, n: usize) -> Vec<BoundaryPair> {
    let mut out = Vec::new();
    for i in 0..=g {
        for mask in (1u64..1 << n).filter(|m| m & 1 == 1) {
            let size = mask.count_ones() as usize;
            if (i > 0 || size >= 2) && (g - i > 0 || n - size >= 2) {
                out.push(BoundaryPair::from_mask(i, mask));
            }
        }
    }
    out.sort();
    out
}

/// `δ_{i,S}` coefficients of the stable-pairs class (`mueller = false`) or of
/// the closure class (`mueller = true`), evaluated termwise.
pub fn oracle_comparison_boundary(g: u32, n: usize, d: &[i64], mueller: bool) -> BTreeMap<BoundaryPair, i64> {
    oracle_pairs(g, n)
        .into_iter()
        .map(|p| {
            let i = i64::from(p.i);
            let ds = sum_on(d, p);
            let positive = p.markings().iter().all(|&j| d[j - 1] > 0);
            let c = if mueller && positive { c2((ds - i).abs() + 1) } else { c2(ds - i + 1) };
            (p, -c)
        })
        .filter(|&(_, c)| c != 0)
        .collect()
}

/// `T_d⃗` by direct search.
pub fn oracle_t_set(g: u32, n: usize, d: &[i64]) -> Vec<BoundaryPair> {
    oracle_pairs(g, n)
        .into_iter()
        .filter(|&p| p.markings().iter().all(|&j| d[j - 1] > 0) && sum_on(d, p) < i64::from(p.i))
        .collect()
}

fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("worked example failed: {what}"))
    }
}

fn pairs(list: &[(u32, &[usize], i64)]) -> BTreeMap<BoundaryPair, i64> {
    list.iter().map(|&(i, s, c)| (BoundaryPair::new(i, s.iter().copied()), c)).collect()
}

/// The worked examples: each value is recomputed by an oracle above, compared
/// to the frozen constant, and then compared to the library.
pub fn check_worked_examples() -> Result<(), String> {
    use jacwall::{
        hain_class, mueller_class, mueller_comparison, stable_multidegree, stable_pairs_class, theta_pullback,
        GraphParameter, PolytopeLabel,
    };

    // g = 2, n = 2, d = (3, -2).
    let (g, n, d) = (2, 2, [3, -2]);
    let golden_boundary = pairs(&[(0, &[1, 2], -1), (1, &[1], -3)]);
    let golden_psi = [6, 1];
    let flat = StabilityParameter::from_label(&PolytopeLabel::from_values(g, n, &[0, 1, 1]).map_err(|e| e.to_string())?);
    let from_d = StabilityParameter::from_degrees(g, n, &d).map_err(|e| e.to_string())?;
    ensure(d.iter().map(|&x| c2(x + 1)).collect::<Vec<_>>() == golden_psi, "psi coefficients")?;
    ensure(oracle_theta_boundary(&flat, &d) == golden_boundary, "oracle pullback at the flat label")?;
    ensure(oracle_theta_boundary(&from_d, &d).is_empty(), "oracle pullback at phi_d")?;
    ensure(oracle_comparison_boundary(g, n, &d, false) == golden_boundary, "oracle stable pairs")?;
    ensure(oracle_comparison_boundary(g, n, &d, true) == golden_boundary, "oracle closure class")?;
    ensure(oracle_t_set(g, n, &d).is_empty(), "oracle T-set for (3, -2)")?;

    let golden = DivisorClassSpec { lambda: -1, psi: &golden_psi, irr: (0, 1), boundary: &golden_boundary };
    let lib = |r: jacwall::Result<jacwall::DivisorClass>| r.map_err(|e| e.to_string());
    ensure(golden.matches(&lib(theta_pullback(&flat, &d))?), "library pullback at the flat label")?;
    let bare = DivisorClassSpec { boundary: &BTreeMap::new(), ..golden };
    ensure(bare.matches(&lib(theta_pullback(&from_d, &d))?), "library pullback at phi_d")?;
    ensure(golden.matches(&lib(stable_pairs_class(g, n, &d))?), "library stable pairs")?;
    ensure(golden.matches(&lib(mueller_class(g, n, &d))?), "library closure class")?;
    let hain = DivisorClassSpec { irr: (1, 8), ..golden };
    ensure(hain.matches(&lib(hain_class(g, n, &d))?), "library Hain class")?;

    // g = 3, n = 3, d = (1, 2, -1).
    let (g, n, d) = (3, 3, [1, 2, -1]);
    let golden_t = vec![BoundaryPair::new(2, [1]), BoundaryPair::new(3, [1])];
    let golden_diff = pairs(&[(2, &[1], 1), (3, &[1], 2)]);
    let oracle_t = oracle_t_set(g, n, &d);
    ensure(oracle_t == golden_t, "oracle T-set for (1, 2, -1)")?;
    let oracle_diff: BTreeMap<_, _> = oracle_t.iter().map(|&p| (p, i64::from(p.i) - sum_on(&d, p))).collect();
    ensure(oracle_diff == golden_diff, "oracle difference class")?;
    let cmp = mueller_comparison(g, n, &d).map_err(|e| e.to_string())?;
    ensure(cmp.pairs == golden_t, "library T-set")?;
    ensure(cmp.diff.delta_terms() == &to_rational_map(&golden_diff), "library difference class")?;

    // Path v1 - v2 - v3 of genus-1 vertices, markings 1 -> v1, 2 -> v3.
    let path = MarkedGraph::from_parts(&[1, 1, 1], &[(0, 1), (1, 2)], &[0, 2]).map_err(|e| e.to_string())?;
    let phi = StabilityParameter::from_fn(3, 2, |p| {
        if p == BoundaryPair::new(1, [1]) {
            rat(3, 10)
        } else if p == BoundaryPair::new(2, [1]) {
            rat(11, 10)
        } else {
            rat(1, 3)
        }
    })
    .map_err(|e| e.to_string())?;
    let golden_ext = vec![rat(3, 10), rat(4, 5), rat(9, 10)];
    let golden_deg = vec![vec![0, 1, 1]];
    let ext = oracle_extension(&phi, &path).ok_or("extension system is singular")?;
    ensure(ext == golden_ext, "oracle extension on the path")?;
    ensure(oracle_stable_set(&path, &ext, true) == golden_deg, "oracle stable multidegree on the path")?;
    let lib_ext = phi.extend_to_graph(&path).map_err(|e| e.to_string())?;
    ensure(lib_ext.values() == golden_ext.as_slice(), "library extension on the path")?;
    let lib_deg = stable_multidegree(&lib_ext).map_err(|e| e.to_string())?;
    ensure(lib_deg.degrees() == golden_deg[0].as_slice(), "library stable multidegree on the path")?;

    // Gamma(1, {1}) in genus 2 with phi = (7/10, 3/10).
    let two = jacwall::two_vertex_graph(2, 2, BoundaryPair::new(1, [1])).map_err(|e| e.to_string())?;
    let values = vec![rat(7, 10), rat(3, 10)];
    ensure(oracle_stable_set(&two, &values, true) == vec![vec![1, 0]], "oracle two-vertex multidegree")?;
    let gp = GraphParameter::new(two.clone(), values).map_err(|e| e.to_string())?;
    ensure(stable_multidegree(&gp).map_err(|e| e.to_string())?.degrees() == [1, 0], "library two-vertex multidegree")?;

    // Slope parameter on Gamma(1, {1}) with A = (3, 2), M = (1, 0).
    let slope = GraphParameter::from_slope(&two, &[3, 2], &[1, 0]).map_err(|e| e.to_string())?;
    let by_hand: Vec<Rational> = (0..2)
        .map(|v| rat([3, 2][v], 5) * int(1) + rat(2 * i64::from(two.vertex_genus(v)) - 2 + 1, 2) - int([1, 0][v]))
        .collect();
    ensure(by_hand == vec![rat(1, 10), rat(9, 10)], "slope parameter by hand")?;
    ensure(slope.values() == by_hand.as_slice(), "library slope parameter")?;
    Ok(())
}

#[derive(Clone, Copy)]
struct DivisorClassSpec<'a> {
    lambda: i64,
    psi: &'a [i64],
    irr: (i64, i64),
    boundary: &'a BTreeMap<BoundaryPair, i64>,
}

impl DivisorClassSpec<'_> {
    fn matches(&self, class: &jacwall::DivisorClass) -> bool {
        class.lambda() == int(self.lambda)
            && class.psi_coefficients() == self.psi.iter().map(|&x| int(x)).collect::<Vec<_>>().as_slice()
            && class.delta_irr() == rat(self.irr.0, self.irr.1)
            && class.delta_terms() == &to_rational_map(self.boundary)
    }
}
