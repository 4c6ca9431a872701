//! Acceptance criteria, one line each. Run with
//! `cargo test -p cnred-core --test acceptance`.
//!
//! Criteria 3 and 8 are known not to hold as stated (see the README); they
//! are still evaluated at full strictness and reported as FAIL. The process
//! fails if any other criterion fails, or if one of those two unexpectedly
//! passes, so the listing stays accurate.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cnred::engine::{run_fixture, run_fixture_with, AnalyzeOptions};
use cnred::fixtures::{self, all_fixtures, figure1_graph};
use cnred::oracle::{cn_soundness_probe, ore_degree, sdr, strong_chromatic_index, strong_coloring};
use cnred::plane::{discharge, euler_charge_audit, euler_characteristic, PlaneGraph};
use cnred::rational::HalfInt;
use cnred::schedule::{reduce_product, reduce_product_with, TermOrder};
use cnred::{naive_expand, BinomialTerm, CapVector};

const KNOWN_UNATTAINABLE: [u32; 2] = [3, 8];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

/// Peak resident set size of this process in bytes, where the platform
/// exposes it.
fn peak_rss() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

fn mib(bytes: Option<u64>) -> String {
    bytes.map_or("n/a".into(), |b| format!("{} MiB", b >> 20))
}

fn within_memory(limit: u64) -> bool {
    peak_rss().is_none_or(|b| b < limit)
}

fn fixture_coefficient(name: &str, want: i64, limit: Duration, mem: u64) -> (bool, String) {
    let start = Instant::now();
    let r = match run_fixture(name) {
        Ok(r) => r,
        Err(e) => return (false, format!("{name}: error {e}")),
    };
    let t = start.elapsed();
    let computed = r.report.claimed_witness_check.as_ref().map(|c| c.computed).unwrap_or(0);
    let ok = computed == want && t < limit && within_memory(mem);
    let overrides: Vec<String> =
        r.overrides.iter().map(|o| format!("e{} {}->{}", o.edge + 1, o.printed, o.recomputed)).collect();
    let detail = format!(
        "{name}: coefficient {computed} (want {want}), {:.2}s, peak {}, {} surviving{}",
        t.as_secs_f64(),
        mib(peak_rss()),
        r.report.all_witness_count,
        if overrides.is_empty() { String::new() } else { format!(", availability overrides {}", overrides.join(" ")) },
    );
    (ok, detail)
}

fn criterion_1() -> Outcome {
    let (ok, d) = fixture_coefficient("five_face_case1", -2, Duration::from_secs(10), 500 << 20);
    outcome(ok, d)
}

fn criterion_2() -> Outcome {
    let (ok, d) = fixture_coefficient("five_face_case2", 1, Duration::from_secs(30), u64::MAX);
    outcome(ok, d)
}

fn criterion_3() -> Outcome {
    let mut all = true;
    let mut parts = Vec::new();
    for (case, want) in (1..=4).zip([-1i64, 2, -1, -2]) {
        let name = format!("h_config_case{case}");
        let f = fixtures::fixture(&name).expect("registered");
        let start = Instant::now();
        let r = run_fixture_with(&f, AnalyzeOptions::default());
        let t = start.elapsed();
        match r {
            Ok(r) => {
                let computed = r.report.claimed_witness_check.as_ref().map(|c| c.computed).unwrap_or(0);
                let audited = r.report.audit.is_some();
                let ok = computed == want
                    && audited
                    && t < Duration::from_secs(15 * 60)
                    && within_memory(8 << 30);
                all &= ok;
                parts.push(format!("case{case} {computed} (want {want}) {:.1}s", t.as_secs_f64()));
            }
            Err(e) => {
                all = false;
                parts.push(format!("case{case} error {e}"));
            }
        }
    }
    outcome(all, format!("{}; peak {}", parts.join(", "), mib(peak_rss())))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let g = figure1_graph();
    let theta = ore_degree(&g).ok();
    let chi = strong_chromatic_index(&g, 13);
    let refuted = strong_coloring(&g, 12).is_none();
    let t = start.elapsed();
    let ok = theta == Some(7) && chi == Some(13) && refuted && t < Duration::from_secs(300);
    outcome(
        ok,
        format!(
            "Ore-degree {theta:?}, strong chromatic index {chi:?}, 12 colors refuted: {refuted}, {:.3}s",
            t.as_secs_f64()
        ),
    )
}

fn random_instance(rng: &mut ChaCha8Rng, max_vars: usize, max_terms: usize, max_cap: u8) -> (Vec<BinomialTerm>, CapVector) {
    let n = rng.gen_range(2..=max_vars);
    let m = rng.gen_range(0..=max_terms);
    let terms = (0..m)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            BinomialTerm::new(a, b).expect("distinct")
        })
        .collect();
    let caps = CapVector::new((0..n).map(|_| rng.gen_range(0..=max_cap)).collect()).expect("small caps");
    (terms, caps)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mismatches = 0;
    let mut monomials = 0;
    for _ in 0..200 {
        let (terms, caps) = random_instance(&mut rng, 6, 12, 5);
        let fast = reduce_product(&terms, &caps).expect("small instance");
        let slow = naive_expand(&terms, caps.len()).and_then(|p| p.restrict(&caps)).expect("small instance");
        monomials += fast.len();
        if fast != slow {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("200 instances, {monomials} monomials compared, {mismatches} mismatches"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut differ = 0;
    for _ in 0..50 {
        let (terms, caps) = random_instance(&mut rng, 8, 20, 6);
        let (g, _) = reduce_product_with(&terms, &caps, TermOrder::Greedy).expect("small instance");
        let (i, _) = reduce_product_with(&terms, &caps, TermOrder::Input).expect("small instance");
        if g != i {
            differ += 1;
        }
    }
    outcome(differ == 0, format!("50 instances, {differ} differ between greedy and input order"))
}

fn criterion_7() -> Outcome {
    let mut all = true;
    let mut parts = Vec::new();
    for f in all_fixtures() {
        let verified = run_fixture(f.name).map(|r| r.report.witness.is_some()).unwrap_or(false);
        if !verified {
            parts.push(format!("{} skipped (no witness)", f.name));
            continue;
        }
        match cn_soundness_probe(&f.config, 100, 7) {
            Ok(r) => {
                all &= r.passed();
                parts.push(format!("{} {}/{}", f.name, r.successes, r.trials));
            }
            Err(e) => {
                all = false;
                parts.push(format!("{} error {e}", f.name));
            }
        }
    }
    outcome(all, parts.join(", "))
}

/// Every rotation system of the Figure 1 graph.
fn figure1_rotation_systems() -> impl Iterator<Item = PlaneGraph> {
    let g = figure1_graph();
    let mut nbrs = vec![Vec::new(); g.num_vertices()];
    for &(u, v) in g.edges() {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    // Cyclic orders: fix the first neighbor, permute the rest.
    let orders: Vec<Vec<Vec<usize>>> = nbrs
        .iter()
        .map(|n| {
            let (first, rest) = n.split_first().expect("no isolated vertices");
            permutations(rest).into_iter().map(|p| std::iter::once(*first).chain(p).collect()).collect()
        })
        .collect();
    let total: usize = orders.iter().map(Vec::len).product();
    (0..total).map(move |mut idx| {
        let rotation = orders
            .iter()
            .map(|o| {
                let pick = o[idx % o.len()].clone();
                idx /= o.len();
                pick
            })
            .collect();
        PlaneGraph::new(rotation).expect("valid rotation system")
    })
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let embeddings = [
        ("K4", fixtures::k4()),
        ("cube", fixtures::cube()),
        ("dodecahedron", fixtures::dodecahedron()),
        ("pentagon", fixtures::pentagon()),
        ("separated triangle", fixtures::separated_triangle()),
        ("square with a 4-vertex", fixtures::square_with_one_4_vertex()),
    ];
    for (name, pg) in &embeddings[..3] {
        let v = euler_charge_audit(pg);
        ok &= v == Ok(-12);
        parts.push(format!("{name} {}", v.map_or_else(|e| e.to_string(), |x| x.to_string())));
    }
    let conserved = embeddings.iter().all(|(_, pg)| {
        discharge(pg).is_ok_and(|l| l.conserved() && l.final_total == HalfInt::from_int(-12))
    });
    ok &= conserved;
    parts.push(format!("discharge conserved on {} embeddings: {conserved}", embeddings.len()));

    let g = figure1_graph();
    let drawn = PlaneGraph::from_drawing(&fixtures::figure1_drawing(), g.edges()).expect("valid rotation");
    match euler_charge_audit(&drawn) {
        Ok(v) => {
            ok &= v == -12;
            parts.push(format!("Figure 1 drawing {v}"));
        }
        Err(_) => {
            ok = false;
            parts.push(format!("Figure 1 drawing: V - E + F = {}", euler_characteristic(&drawn)));
        }
    }
    let mut tried = 0;
    let mut best = i64::MIN;
    for pg in figure1_rotation_systems() {
        tried += 1;
        best = best.max(euler_characteristic(&pg));
    }
    parts.push(format!("Figure 1: best V - E + F over all {tried} rotation systems is {best}, so no plane embedding exists"));
    outcome(ok, parts.join(", "))
}

fn criterion_9() -> Outcome {
    // All set systems of up to 6 subsets of 6 colors, up to the order of the
    // sets (neither Hall's condition nor SDR existence depends on it).
    let table: Vec<Vec<u32>> = (0u64..64).map(|m| (0..6).filter(|c| m >> c & 1 == 1).collect()).collect();
    let mut unions = vec![vec![0u64; 64]; 7];
    let mut sets: Vec<Vec<u32>> = Vec::with_capacity(6);
    let mut checked = 0u64;
    let mut disagreements = 0u64;
    let mut spot_checks = 0u64;

    fn visit(
        depth: usize,
        min_mask: usize,
        hall: bool,
        table: &[Vec<u32>],
        unions: &mut Vec<Vec<u64>>,
        sets: &mut Vec<Vec<u32>>,
        checked: &mut u64,
        disagreements: &mut u64,
        spot_checks: &mut u64,
    ) {
        *checked += 1;
        match sdr(sets) {
            Some(reps) => {
                let mut used = 0u64;
                let valid = reps.len() == sets.len()
                    && reps.iter().zip(sets.iter()).all(|(r, s)| {
                        let fresh = used >> r & 1 == 0;
                        used |= 1 << r;
                        fresh && s.contains(r)
                    });
                if !valid || !hall {
                    *disagreements += 1;
                }
            }
            None => {
                if hall {
                    *disagreements += 1;
                }
            }
        }
        // Cross-check the incremental Hall test against the direct one.
        if *checked % 4099 == 0 {
            *spot_checks += 1;
            if common::hall_holds(sets) != hall {
                *disagreements += 1;
            }
        }
        if depth == 6 {
            return;
        }
        let size = 1usize << depth;
        for mask in min_mask..64 {
            let (lower, upper) = unions.split_at_mut(depth + 1);
            let prev = &lower[depth];
            let next = &mut upper[0];
            let mut ok = hall;
            for s in 0..size {
                next[s] = prev[s];
                let u = prev[s] | mask as u64;
                next[s + size] = u;
                ok &= u.count_ones() as usize >= (s + size).count_ones() as usize;
            }
            sets.push(table[mask].clone());
            visit(depth + 1, mask, ok, table, unions, sets, checked, disagreements, spot_checks);
            sets.pop();
        }
    }

    visit(0, 0, true, &table, &mut unions, &mut sets, &mut checked, &mut disagreements, &mut spot_checks);
    outcome(
        disagreements == 0,
        format!("{checked} set systems, {spot_checks} direct Hall spot checks, {disagreements} disagreements"),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "five-face case 1 certificate", criterion_1),
        (2, "five-face case 2 certificate", criterion_2),
        (3, "h-configuration certificates", criterion_3),
        (4, "tight example", criterion_4),
        (5, "oracle equivalence", criterion_5),
        (6, "order invariance", criterion_6),
        (7, "soundness probes", criterion_7),
        (8, "charge identity", criterion_8),
        (9, "Hall/SDR exhaustive", criterion_9),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let known = KNOWN_UNATTAINABLE.contains(&id);
        let verdict = match (o.passed, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known unattainable)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
            (true, true) => {
                unexpected += 1;
                "PASS (listed as unattainable)"
            }
        };
        println!(
            "criterion {id} [{verdict}] {name}: {} ({:.1}s)",
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria did not match their expected outcome");
        ExitCode::FAILURE
    }
}
