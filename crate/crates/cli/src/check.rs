//! The `check` sweep: random instances of the library's identities.

use jacwall::rational::{int, rat, Rational};
use jacwall::{
    all_stable_multidegrees_bruteforce, enumerate_tree_type_graphs, hain_class, mueller_class, mueller_comparison,
    stable_multidegree, stable_pairs_class, theta_pullback, wall_crossing, DivisorClass, StabilityParameter,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::{CliError, CliResult, Report};

const GN: [(u32, usize); 5] = [(1, 2), (2, 1), (2, 2), (3, 2), (3, 3)];

pub fn seed_from_env() -> CliResult<u64> {
    match std::env::var("JACWALL_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("JACWALL_SEED={s:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn off_wall(rng: &mut ChaCha8Rng, center: i64) -> Rational {
    loop {
        let q: i64 = rng.gen_range(1..=10);
        let x = rat(rng.gen_range((center - 3) * q..=(center + 3) * q), q);
        if !(x * int(2)).is_integer() || x.is_integer() {
            return x;
        }
    }
}

fn parameter(rng: &mut ChaCha8Rng, g: u32, n: usize) -> StabilityParameter {
    StabilityParameter::from_fn(g, n, |p| off_wall(rng, i64::from(p.i))).expect("complete parameter")
}

fn degrees(rng: &mut ChaCha8Rng, g: u32, n: usize) -> Vec<i64> {
    let mut d: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=4)).collect();
    d[n - 1] = i64::from(g) - 1 - d[..n - 1].iter().sum::<i64>();
    d
}

/// Runs one sample of every check; returns the names of the failed ones.
fn sample(rng: &mut ChaCha8Rng, g: u32, n: usize, graphs: &[jacwall::MarkedGraph]) -> jacwall::Result<Vec<&'static str>> {
    let mut failed = Vec::new();
    let (a, b) = (parameter(rng, g, n), parameter(rng, g, n));
    let d = degrees(rng, g, n);
    if wall_crossing(&a, &b)? != theta_pullback(&b, &d)?.checked_sub(&theta_pullback(&a, &d)?)? {
        failed.push("wall crossing");
    }
    let sp = stable_pairs_class(g, n, &d)?;
    let irr = DivisorClass::new(g, n, int(0), vec![int(0); n], rat(1, 8), [])?;
    if hain_class(g, n, &d)?.checked_sub(&sp)? != irr {
        failed.push("hain identity");
    }
    if d.iter().any(|&x| x < 0) && mueller_class(g, n, &d)?.checked_add(&mueller_comparison(g, n, &d)?.diff)? != sp {
        failed.push("closure class identity");
    }
    if !theta_pullback(&StabilityParameter::from_degrees(g, n, &d)?, &d)?.boundary_is_zero() {
        failed.push("pullback at phi_d");
    }
    let graph = &graphs[rng.gen_range(0..graphs.len())];
    let ext = a.extend_to_graph(graph)?;
    let brute = all_stable_multidegrees_bruteforce(&ext, true);
    if brute.len() != 1 || brute[0] != stable_multidegree(&ext)? {
        failed.push("unique stable multidegree");
    }
    Ok(failed)
}

pub fn run(seed: u64, rounds: usize, json: bool) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut all_ok = true;
    for (g, n) in GN {
        let graphs = enumerate_tree_type_graphs(g, n, 3).expect("valid (g, n)");
        let mut failures: Vec<String> = Vec::new();
        for round in 0..rounds {
            match sample(&mut rng, g, n, &graphs) {
                Ok(names) => failures.extend(names.into_iter().map(|s| format!("round {round}: {s}"))),
                Err(e) => failures.push(format!("round {round}: {e}")),
            }
        }
        all_ok &= failures.is_empty();
        rows.push((g, n, failures));
    }
    let output = if json {
        let list: Vec<_> = rows
            .iter()
            .map(|(g, n, f)| json!({"g": g, "n": n, "rounds": rounds, "pass": f.is_empty(), "failures": f}))
            .collect();
        let mut s = jacwall::json::to_string(&json!({"seed": seed, "results": list}));
        s.push('\n');
        s
    } else {
        let mut s = format!("seed {seed}, {rounds} rounds per (g, n)\n");
        for (g, n, f) in &rows {
            s += &format!("{}  (g, n) = ({g}, {n})\n", if f.is_empty() { "PASS" } else { "FAIL" });
            for line in f {
                s += &format!("      {line}\n");
            }
        }
        s
    };
    Report { output, code: if all_ok { 0 } else { 1 } }
}
