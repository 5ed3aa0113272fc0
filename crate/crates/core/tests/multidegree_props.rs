mod common;

use common::{corpus, oracle_semistable, oracle_stable_set, random_parameter, random_sheaf, rng, GN};
use jacwall::rational::rat;
use jacwall::{
    all_stable_multidegrees_bruteforce, is_semistable, is_semistable_symmetric, stable_multidegree, two_vertex_graph,
    Error, GraphParameter, MarkedGraph, Multidegree, SubgraphMode, TorsionFreeDegree,
};
use rand::Rng;

fn degrees(list: &[Multidegree]) -> Vec<Vec<i64>> {
    list.iter().map(|m| m.degrees().to_vec()).collect()
}

#[test]
fn stable_multidegree_is_the_unique_strictly_stable_one() {
    let mut rng = rng(31);
    for (g, n) in GN {
        let graphs = corpus(g, n);
        for _ in 0..2 {
            let phi = random_parameter(&mut rng, g, n);
            for graph in &graphs {
                let ext = phi.extend_to_graph(graph).unwrap();
                let expected = oracle_stable_set(graph, ext.values(), true);
                assert_eq!(expected.len(), 1, "{graph:?}");
                assert_eq!(stable_multidegree(&ext).unwrap().degrees(), expected[0].as_slice());
                assert_eq!(degrees(&all_stable_multidegrees_bruteforce(&ext, true)), expected);
            }
        }
    }
}

#[test]
fn bruteforce_matches_the_oracle_at_the_canonical_parameter() {
    for (g, n) in GN {
        for graph in corpus(g, n) {
            let can = GraphParameter::canonical(&graph);
            for strict in [false, true] {
                assert_eq!(
                    degrees(&all_stable_multidegrees_bruteforce(&can, strict)),
                    oracle_stable_set(&graph, can.values(), strict)
                );
            }
        }
    }
}

#[test]
fn elementary_subgraphs_suffice() {
    let mut rng = rng(32);
    for (g, n) in GN {
        for graph in corpus(g, n) {
            for _ in 0..3 {
                let phi = random_parameter(&mut rng, g, n).extend_to_graph(&graph).unwrap();
                let (deg, failures) = random_sheaf(&mut rng, &graph, phi.values());
                let sheaf = TorsionFreeDegree::new(graph.clone(), deg.clone(), &failures).unwrap();
                for strict in [false, true] {
                    let all = is_semistable(&phi, &sheaf, strict, SubgraphMode::All).unwrap();
                    let elementary = is_semistable(&phi, &sheaf, strict, SubgraphMode::Elementary).unwrap();
                    assert_eq!(all, oracle_semistable(&graph, phi.values(), &deg, &failures, strict));
                    assert_eq!(elementary, all, "{graph:?} {deg:?} {failures:?}");
                    assert_eq!(is_semistable_symmetric(&phi, &sheaf, strict).unwrap(), all);
                }
            }
        }
    }
}

/// Graphs with cycles, where the fast path does not apply.
#[test]
fn elementary_subgraphs_suffice_on_graphs_with_cycles() {
    let mut rng = rng(33);
    let graphs = [
        MarkedGraph::from_parts(&[0, 0, 1], &[(0, 1), (1, 2), (0, 2)], &[0, 1]).unwrap(),
        MarkedGraph::from_parts(&[1, 1], &[(0, 1), (0, 1)], &[0]).unwrap(),
        MarkedGraph::from_parts(&[0, 0, 0, 0], &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)], &[0, 1, 3]).unwrap(),
    ];
    for graph in &graphs {
        let k = graph.num_vertices();
        let top = i64::from(graph.genus()) - 1;
        for _ in 0..200 {
            let mut values: Vec<_> = (0..k).map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=10))).collect();
            let rest: jacwall::Rational = values[..k - 1].iter().sum();
            values[k - 1] = jacwall::rational::int(top) - rest;
            let phi = GraphParameter::new(graph.clone(), values).unwrap();
            let (deg, failures) = random_sheaf(&mut rng, graph, phi.values());
            let sheaf = TorsionFreeDegree::new(graph.clone(), deg, &failures).unwrap();
            for strict in [false, true] {
                let all = is_semistable(&phi, &sheaf, strict, SubgraphMode::All).unwrap();
                assert_eq!(is_semistable(&phi, &sheaf, strict, SubgraphMode::Elementary).unwrap(), all);
                assert_eq!(is_semistable_symmetric(&phi, &sheaf, strict).unwrap(), all);
            }
        }
    }
}

#[test]
fn stability_is_invariant_under_simultaneous_twists() {
    let mut rng = rng(34);
    for (g, n) in GN {
        for graph in corpus(g, n).into_iter().filter(|h| h.num_vertices() >= 2) {
            let k = graph.num_vertices();
            let phi = random_parameter(&mut rng, g, n).extend_to_graph(&graph).unwrap();
            let mut t: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
            t[k - 1] -= t.iter().sum::<i64>();
            let moved = phi.shifted(&t).unwrap();
            let before = degrees(&all_stable_multidegrees_bruteforce(&phi, true));
            let after = degrees(&all_stable_multidegrees_bruteforce(&moved, true));
            let shifted: Vec<Vec<i64>> = before.iter().map(|d| d.iter().zip(&t).map(|(a, b)| a + b).collect()).collect();
            assert_eq!(after, shifted);
        }
    }
}

#[test]
fn canonical_parameter_on_two_vertex_graphs_is_strictly_semistable() {
    for (g, n) in GN {
        for p in jacwall::admissible_pairs(g, n).unwrap() {
            let graph = two_vertex_graph(g, n, p).unwrap();
            let can = GraphParameter::canonical(&graph);
            assert!(all_stable_multidegrees_bruteforce(&can, false).len() >= 2);
            assert!(all_stable_multidegrees_bruteforce(&can, true).is_empty());
            assert!(matches!(stable_multidegree(&can), Err(Error::DegenerateParameter(_))));
        }
    }
}

#[test]
fn pushforward_sheaf_is_semistable_not_stable_at_the_canonical_parameter() {
    for (g, n) in GN {
        for p in jacwall::admissible_pairs(g, n).unwrap() {
            let graph = two_vertex_graph(g, n, p).unwrap();
            let can = GraphParameter::canonical(&graph);
            let (i, rest) = (i64::from(p.i), i64::from(g - p.i));
            let sheaf = TorsionFreeDegree::new(graph.clone(), vec![i - 1, rest - 1], &[0]).unwrap();
            assert!(is_semistable(&can, &sheaf, false, SubgraphMode::All).unwrap());
            assert!(!is_semistable(&can, &sheaf, true, SubgraphMode::All).unwrap());
        }
    }
}
