//! Shared brute-force oracles for the integration suites: membership by
//! direct definition chasing, independent of the library's internal routing.

use std::collections::{BTreeSet, HashSet};

pub fn contains(gens: &[Vec<u64>], u: &[u64]) -> bool {
    gens.iter()
        .any(|g| g.iter().zip(u).all(|(a, b)| a <= b))
}

/// u in I^k by peeling one generator and recursing.
pub fn power_member(gens: &[Vec<u64>], k: u64, u: &[u64]) -> bool {
    if k == 0 {
        return true;
    }
    gens.iter().any(|g| {
        g.iter().zip(u).all(|(a, b)| a <= b) && {
            let rest: Vec<u64> = u.iter().zip(g).map(|(a, b)| a - b).collect();
            power_member(gens, k - 1, &rest)
        }
    })
}

/// u in (I : J): u * g in I for every generator g of J.
pub fn colon_member(i: &[Vec<u64>], j: &[Vec<u64>], u: &[u64]) -> bool {
    j.iter().all(|g| {
        let shifted: Vec<u64> = u.iter().zip(g).map(|(a, b)| a + b).collect();
        contains(i, &shifted)
    })
}

/// u in (I : J^infinity): some power of J multiplies u into I. Shifted
/// states are clamped into the generator box of I, so the sequence of
/// frontier sets cycles and the search terminates.
pub fn saturation_member(i: &[Vec<u64>], j: &[Vec<u64>], u: &[u64]) -> bool {
    let n = u.len();
    let mut caps = vec![0u64; n];
    for g in i {
        for (c, &e) in caps.iter_mut().zip(g) {
            *c = (*c).max(e);
        }
    }
    let clamp =
        |v: &[u64]| -> Vec<u64> { v.iter().zip(&caps).map(|(a, c)| *a.min(c)).collect() };
    let mut frontier: BTreeSet<Vec<u64>> = BTreeSet::new();
    frontier.insert(clamp(u));
    let mut seen: HashSet<BTreeSet<Vec<u64>>> = HashSet::new();
    loop {
        if frontier.iter().all(|v| contains(i, v)) {
            return true;
        }
        if !seen.insert(frontier.clone()) {
            return false;
        }
        let mut next = BTreeSet::new();
        for v in &frontier {
            for g in j {
                let shifted: Vec<u64> = v.iter().zip(g).map(|(a, b)| a + b).collect();
                next.insert(clamp(&shifted));
            }
        }
        frontier = next;
    }
}
