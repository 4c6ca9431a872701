//! Brute-force reference implementations shared by the integration tests.
//! None of these call into the library's algorithms.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Expands `prod (x_a - x_b)` by choosing one side of every factor.
/// Zero coefficients are dropped. Fine up to about 16 factors.
pub fn expand(pairs: &[(usize, usize)], num_vars: usize) -> BTreeMap<Vec<u8>, i64> {
    let mut out: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut e = vec![0u8; num_vars];
        let mut sign = 1i64;
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 0 {
                e[a] += 1;
            } else {
                e[b] += 1;
                sign = -sign;
            }
        }
        *out.entry(e).or_insert(0) += sign;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// [`expand`] restricted to exponents at most `caps`.
pub fn expand_capped(
    pairs: &[(usize, usize)],
    caps: &[u8],
) -> BTreeMap<Vec<u8>, i64> {
    let mut m = expand(pairs, caps.len());
    m.retain(|e, _| e.iter().zip(caps).all(|(x, c)| x <= c));
    m
}

/// Hall's condition checked over every subfamily.
pub fn hall_holds(sets: &[Vec<u32>]) -> bool {
    let n = sets.len();
    (1u32..(1 << n)).all(|sub| {
        let mut union = 0u64;
        for (i, s) in sets.iter().enumerate() {
            if sub >> i & 1 == 1 {
                for &c in s {
                    union |= 1 << c;
                }
            }
        }
        union.count_ones() >= sub.count_ones()
    })
}

/// Tries every assignment of list entries; `conflicts` are index pairs that
/// must receive different colors.
pub fn list_colorable_brute(conflicts: &[(usize, usize)], lists: &[Vec<u32>]) -> bool {
    fn go(i: usize, conflicts: &[(usize, usize)], lists: &[Vec<u32>], chosen: &mut Vec<u32>) -> bool {
        if i == lists.len() {
            return true;
        }
        for &c in &lists[i] {
            let ok = conflicts.iter().all(|&(a, b)| {
                let other = if a == i { b } else if b == i { a } else { return true };
                other >= i || chosen[other] != c
            });
            if ok {
                chosen.push(c);
                if go(i + 1, conflicts, lists, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(0, conflicts, lists, &mut Vec::new())
}

/// Edges `e`, `f` see each other: they share an endpoint or some edge joins
/// an endpoint of one to an endpoint of the other.
pub fn sees_brute(edges: &[(usize, usize)], e: usize, f: usize) -> bool {
    let (a, b) = edges[e];
    let (c, d) = edges[f];
    if a == c || a == d || b == c || b == d {
        return true;
    }
    let adjacent = |x: usize, y: usize| edges.iter().any(|&(p, q)| (p, q) == (x, y) || (p, q) == (y, x));
    [a, b].iter().any(|&x| [c, d].iter().any(|&y| adjacent(x, y)))
}

/// Smallest `k` admitting a proper coloring of the conflict graph, by trying
/// every assignment in increasing `k`. Only for tiny inputs.
pub fn chromatic_brute(n: usize, conflicts: &[(usize, usize)]) -> usize {
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let mut colors = vec![0usize; n];
        loop {
            if conflicts.iter().all(|&(a, b)| colors[a] != colors[b]) {
                return k;
            }
            let mut i = 0;
            while i < n {
                colors[i] += 1;
                if colors[i] < k {
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    n
}

/// Coefficient of `target` in `prod (x_a - x_b)`, multiplying one factor at
/// a time into a map and dropping anything that exceeds the target.
pub fn coefficient_dp(pairs: &[(usize, usize)], target: &[u8]) -> i64 {
    let mut cur: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    cur.insert(vec![0; target.len()], 1);
    for &(a, b) in pairs {
        let mut next: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
        for (e, c) in cur {
            for (v, s) in [(a, c), (b, -c)] {
                if e[v] < target[v] {
                    let mut f = e.clone();
                    f[v] += 1;
                    *next.entry(f).or_insert(0) += s;
                }
            }
        }
        next.retain(|_, c| *c != 0);
        cur = next;
    }
    cur.get(target).copied().unwrap_or(0)
}
