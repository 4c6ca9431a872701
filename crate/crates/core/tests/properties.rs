mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use cnred::configmodel::{
    conflict_terms, derived_conflicts, derived_exceptions, sees, ConfigGraph, Configuration,
    ConflictSpec,
};
use cnred::engine::{check_monomial_with, find_witness};
use cnred::oracle::{
    cn_soundness_probe, list_colorable, sdr, strong_chromatic_index, strong_conflicts,
    ColoredGraph, ListAssignment,
};
use cnred::plane::{
    discharge, euler_charge_audit, faces, separating_cycles, PlaneGraph, Rule,
};
use cnred::rational::HalfInt;
use cnred::schedule::{batch_partition, greedy_order, reduce_product, reduce_product_with, TermOrder};
use cnred::{naive_expand, BinomialTerm, CapVector, ExponentVector};

#[derive(Debug, Clone)]
struct Instance {
    num_vars: usize,
    pairs: Vec<(usize, usize)>,
    caps: Vec<u8>,
}

impl Instance {
    fn terms(&self) -> Vec<BinomialTerm> {
        self.pairs.iter().map(|&(a, b)| BinomialTerm::new(a, b).unwrap()).collect()
    }

    fn caps(&self) -> CapVector {
        CapVector::new(self.caps.clone()).unwrap()
    }
}

fn instance(max_vars: usize, max_terms: usize, max_cap: u8) -> impl Strategy<Value = Instance> {
    (2..=max_vars).prop_flat_map(move |n| {
        let pair = (0..n, 0..n - 1).prop_map(|(a, b)| if b >= a { (a, b + 1) } else { (a, b) });
        (
            Just(n),
            prop::collection::vec(pair, 0..=max_terms),
            prop::collection::vec(0..=max_cap, n),
        )
            .prop_map(|(num_vars, pairs, caps)| Instance { num_vars, pairs, caps })
    })
}

fn as_map(p: &cnred::CappedPolynomial) -> BTreeMap<Vec<u8>, i64> {
    p.iter().map(|(e, c)| (e.as_slice().to_vec(), c)).collect()
}

fn explicit_config(num_edges: usize, pairs: Vec<(usize, usize)>, avail: Vec<u32>) -> Configuration {
    let set: BTreeSet<(usize, usize)> =
        pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
    debug_assert_eq!(avail.len(), num_edges);
    Configuration::new(
        ConfigGraph { num_vertices: 0, vertices: None, edges: vec![], availability: avail },
        ConflictSpec::ExplicitConflicts { pairs: set.into_iter().collect() },
    )
}

fn small_config() -> impl Strategy<Value = Configuration> {
    (2usize..=5).prop_flat_map(|n| {
        let pair = (0..n, 0..n - 1).prop_map(|(a, b)| if b >= a { (a, b + 1) } else { (a, b) });
        (prop::collection::vec(pair, 0..=8), prop::collection::vec(1u32..=5, n))
            .prop_map(move |(pairs, avail)| explicit_config(n, pairs, avail))
    })
}

/// Random connected straight-line drawings on a grid: every vertical edge,
/// the bottom row, and a random choice of other horizontals and diagonals.
fn grid_plane_graph() -> impl Strategy<Value = PlaneGraph> {
    (2usize..=4, 2usize..=4).prop_flat_map(|(rows, cols)| {
        let extra = (rows - 1) * (cols - 1) * 2;
        prop::collection::vec(any::<bool>(), extra).prop_map(move |bits| {
            let id = |r: usize, c: usize| r * cols + c;
            let coords: Vec<(f64, f64)> =
                (0..rows * cols).map(|v| ((v % cols) as f64, (v / cols) as f64)).collect();
            let mut edges = Vec::new();
            for c in 0..cols - 1 {
                edges.push((id(0, c), id(0, c + 1)));
            }
            for r in 0..rows - 1 {
                for c in 0..cols {
                    edges.push((id(r, c), id(r + 1, c)));
                }
            }
            let mut k = 0;
            for r in 1..rows {
                for c in 0..cols - 1 {
                    if bits[k] {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if bits[k + 1] {
                        edges.push((id(r - 1, c), id(r, c + 1)));
                    }
                    k += 2;
                }
            }
            PlaneGraph::from_drawing(&coords, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_matches_brute_force(inst in instance(6, 12, 5)) {
        let p = reduce_product(&inst.terms(), &inst.caps()).unwrap();
        prop_assert_eq!(as_map(&p), common::expand_capped(&inst.pairs, &inst.caps));
    }

    #[test]
    fn naive_expand_matches_brute_force(inst in instance(5, 10, 0)) {
        let p = naive_expand(&inst.terms(), inst.num_vars).unwrap();
        prop_assert_eq!(as_map(&p), common::expand(&inst.pairs, inst.num_vars));
    }

    #[test]
    fn prune_safety(inst in instance(6, 12, 5)) {
        let full = naive_expand(&inst.terms(), inst.num_vars).unwrap();
        let capped = reduce_product(&inst.terms(), &inst.caps()).unwrap();
        prop_assert_eq!(full.restrict(&inst.caps()).unwrap(), capped);
    }

    #[test]
    fn homogeneous_of_degree_term_count(inst in instance(6, 12, 5)) {
        let p = reduce_product(&inst.terms(), &inst.caps()).unwrap();
        for (e, c) in p.iter() {
            prop_assert_eq!(e.total_degree() as usize, inst.pairs.len());
            prop_assert!(c != 0);
            prop_assert!(e.within(&inst.caps()));
        }
    }

    #[test]
    fn order_invariance(inst in instance(6, 14, 6)) {
        let (g, _) = reduce_product_with(&inst.terms(), &inst.caps(), TermOrder::Greedy).unwrap();
        let (i, _) = reduce_product_with(&inst.terms(), &inst.caps(), TermOrder::Input).unwrap();
        prop_assert_eq!(g, i);
    }

    #[test]
    fn swapping_a_factor_negates(inst in instance(5, 8, 4), k in 0usize..8) {
        prop_assume!(!inst.pairs.is_empty());
        let k = k % inst.pairs.len();
        let mut swapped = inst.terms();
        swapped[k] = swapped[k].swapped();
        let a = reduce_product(&inst.terms(), &inst.caps()).unwrap();
        let b = reduce_product(&swapped, &inst.caps()).unwrap();
        let negated: BTreeMap<Vec<u8>, i64> = as_map(&a).into_iter().map(|(e, c)| (e, -c)).collect();
        prop_assert_eq!(as_map(&b), negated);
    }

    #[test]
    fn greedy_order_is_a_permutation(inst in instance(6, 14, 6)) {
        let avail: Vec<u32> = inst.caps.iter().map(|&c| c as u32 + 1).collect();
        let ordered = greedy_order(&inst.terms(), &avail);
        let mut a = inst.terms();
        let mut b = ordered.terms().to_vec();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        let plan = batch_partition(&ordered, &avail);
        let mut next = 0;
        for r in &plan.batches {
            prop_assert_eq!(r.start, next);
            next = r.end;
        }
        prop_assert_eq!(next, ordered.len());
    }

    #[test]
    fn greedy_picks_least_residual(inst in instance(6, 14, 6)) {
        let avail: Vec<u32> = inst.caps.iter().map(|&c| c as u32 + 1).collect();
        let ordered = greedy_order(&inst.terms(), &avail);
        let mut remaining = inst.terms();
        let mut counts = vec![0i64; inst.num_vars];
        for t in ordered.terms() {
            let score = |t: &BinomialTerm| {
                (avail[t.a] as i64 - counts[t.a]).min(avail[t.b] as i64 - counts[t.b])
            };
            let best = remaining.iter().map(score).min().unwrap();
            prop_assert_eq!(score(t), best);
            let pos = remaining.iter().position(|r| r == t).unwrap();
            remaining.remove(pos);
            counts[t.a] += 1;
            counts[t.b] += 1;
        }
    }

    #[test]
    fn tightening_preserves_coefficients(inst in instance(6, 12, 5), pick in any::<prop::sample::Index>()) {
        let avail: Vec<u32> = inst.caps.iter().map(|&c| c as u32 + 1).collect();
        let c = explicit_config(inst.num_vars, inst.pairs.clone(), avail);
        let pairs: Vec<(usize, usize)> =
            conflict_terms(&c).unwrap().iter().map(|t| (t.a, t.b)).collect();
        let full = common::expand(&pairs, inst.num_vars);
        // Probe a surviving monomial when there is one, else an arbitrary vector.
        let target: Vec<u8> = if full.is_empty() {
            inst.caps.clone()
        } else {
            full.keys().nth(pick.index(full.len())).unwrap().clone()
        };
        let tight = check_monomial_with(&c, &target, true).unwrap();
        let loose = check_monomial_with(&c, &target, false).unwrap();
        prop_assert_eq!(tight, loose);
        let within = target.iter().zip(&inst.caps).all(|(e, c)| e <= c);
        let expected = if within { full.get(&target).copied().unwrap_or(0) } else { 0 };
        prop_assert_eq!(tight, expected);
    }

    #[test]
    fn witness_respects_caps_and_degree(c in small_config()) {
        if let Some(w) = find_witness(&c).unwrap() {
            let terms = conflict_terms(&c).unwrap().len();
            prop_assert_eq!(w.exponents.total_degree() as usize, terms);
            for (e, a) in w.exponents.as_slice().iter().zip(&c.graph.availability) {
                prop_assert!((*e as u32) < *a);
            }
            prop_assert!(w.coefficient != 0);
        }
    }

    #[test]
    fn witness_is_monotone_in_availability(c in small_config(), k in 0usize..5) {
        let k = k % c.num_edges();
        let before = find_witness(&c).unwrap().is_some();
        let mut more = c.clone();
        more.graph.availability[k] += 1;
        let after = find_witness(&more).unwrap().is_some();
        prop_assert!(!before || after);
    }

    #[test]
    fn witness_implies_probe_success(c in small_config(), seed in any::<u64>()) {
        if find_witness(&c).unwrap().is_some() {
            let r = cn_soundness_probe(&c, 20, seed).unwrap();
            prop_assert!(r.passed(), "{:?}", r);
        }
    }

    #[test]
    fn list_coloring_matches_brute_force(
        c in small_config(),
        lists in prop::collection::vec(prop::collection::btree_set(0u32..5, 0..=3), 5),
    ) {
        let n = c.num_edges();
        let lists: Vec<Vec<u32>> = lists.into_iter().take(n).map(|s| s.into_iter().collect()).collect();
        let ConflictSpec::ExplicitConflicts { pairs } = &c.conflicts else { unreachable!() };
        let got = list_colorable(pairs, &ListAssignment::new(lists.clone()));
        prop_assert_eq!(got.is_some(), common::list_colorable_brute(pairs, &lists));
        if let Some(col) = got {
            for (i, l) in lists.iter().enumerate() {
                prop_assert!(l.contains(&col[i]));
            }
            for &(a, b) in pairs {
                prop_assert_ne!(col[a], col[b]);
            }
        }
    }

    #[test]
    fn sdr_agrees_with_hall(sets in prop::collection::vec(prop::collection::btree_set(0u32..6, 0..=6), 0..=6)) {
        let sets: Vec<Vec<u32>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let got = sdr(&sets);
        prop_assert_eq!(got.is_some(), common::hall_holds(&sets));
        if let Some(reps) = got {
            let distinct: BTreeSet<u32> = reps.iter().copied().collect();
            prop_assert_eq!(distinct.len(), sets.len());
            for (s, r) in sets.iter().zip(&reps) {
                prop_assert!(s.contains(r));
            }
        }
    }
}

fn small_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2usize..=6).prop_flat_map(|n| {
        let all: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let m = all.len();
        (Just(n), prop::sample::subsequence(all, 0..=m.min(7)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn sees_matches_definition((n, edges) in small_graph()) {
        let g = ConfigGraph { num_vertices: n, vertices: None, edges: edges.clone(), availability: vec![1; edges.len()] };
        let conflicts = derived_conflicts(&g);
        let exceptions = derived_exceptions(&g);
        let m = edges.len();
        prop_assert_eq!(conflicts.len() + exceptions.len(), m * m.saturating_sub(1) / 2);
        for i in 0..m {
            for j in i + 1..m {
                let s = common::sees_brute(&edges, i, j);
                prop_assert_eq!(sees(&g, i, j).unwrap(), s);
                prop_assert_eq!(sees(&g, j, i).unwrap(), s);
                prop_assert_eq!(conflicts.contains(&(i, j)), s);
            }
        }
    }

    #[test]
    fn strong_index_matches_brute_force((n, edges) in small_graph()) {
        let g = ColoredGraph::new(n, edges.clone()).unwrap();
        let conflicts = strong_conflicts(&g);
        let expected = common::chromatic_brute(edges.len(), &conflicts);
        prop_assert_eq!(strong_chromatic_index(&g, edges.len()), Some(expected));
        if expected > 0 {
            prop_assert_eq!(strong_chromatic_index(&g, expected - 1), None);
        }
    }

    #[test]
    fn plane_charge_identities(pg in grid_plane_graph()) {
        let f = faces(&pg).unwrap();
        let handshake: usize = f.iter().map(|f| f.degree()).sum();
        prop_assert_eq!(handshake, 2 * pg.num_edges());
        prop_assert_eq!(euler_charge_audit(&pg).unwrap(), -12);
        let ledger = discharge(&pg).unwrap();
        prop_assert!(ledger.conserved());
        prop_assert_eq!(ledger.final_total, HalfInt::from_int(-12));
        let vertex_sum: HalfInt = ledger.vertex_charges.iter().copied().sum();
        let face_sum: HalfInt = ledger.face_charges.iter().copied().sum();
        prop_assert_eq!(vertex_sum + face_sum, HalfInt::from_int(-12));
        for t in &ledger.transfers {
            let expected = match t.rule {
                Rule::R1 | Rule::R2 => HalfInt::ONE,
                Rule::R3 => HalfInt::HALF,
            };
            prop_assert_eq!(t.amount, expected);
        }
    }

    #[test]
    fn separating_cycles_split_the_vertices(pg in grid_plane_graph(), k in 3usize..=6) {
        for s in separating_cycles(&pg, k).unwrap() {
            prop_assert!(!s.interior.is_empty() && !s.exterior.is_empty());
            prop_assert_eq!(s.cycle.len(), k);
            let mut all: Vec<usize> = s.cycle.iter().chain(&s.interior).chain(&s.exterior).copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..pg.num_vertices()).collect::<Vec<_>>());
            // No edge jumps from one side to the other.
            for &u in &s.interior {
                for &v in &s.exterior {
                    prop_assert!(!pg.has_edge(u, v));
                }
            }
        }
    }
}

#[test]
fn exponent_vectors_order_lexicographically() {
    let a = ExponentVector::new(vec![0, 2]).unwrap();
    let b = ExponentVector::new(vec![1, 0]).unwrap();
    assert!(a < b);
}
