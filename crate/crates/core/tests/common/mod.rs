//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the library's stability code.

#![allow(dead_code)]

use reljac_core::curve_model::KodairaType;
use reljac_core::stability::StabilityClass;

/// Every reducible fiber the exhaustive checks run on.
pub fn reducible_fibers() -> Vec<KodairaType> {
    let mut out: Vec<KodairaType> = (2..=6).map(KodairaType::I).collect();
    out.push(KodairaType::III);
    out.push(KodairaType::IV);
    out
}

/// Intersection numbers written out from the fiber pictures.
pub fn intersection_matrix(k: KodairaType) -> Vec<Vec<i64>> {
    match k {
        KodairaType::I(2) | KodairaType::III => vec![vec![0, 2], vec![2, 0]],
        KodairaType::I(n) => {
            let n = n as usize;
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| i64::from(i != j && ((i + 1) % n == j || (j + 1) % n == i)))
                        .collect()
                })
                .collect()
        }
        KodairaType::IV => vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
        other => panic!("{other} is not a reducible fiber"),
    }
}

/// Every `d` with `|d_i| <= bound` and `Σ d_i = 0`, in lexicographic order.
pub fn degree_box(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut d = vec![-bound; n];
    loop {
        if d.iter().sum::<i64>() == 0 {
            out.push(d.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if d[k] < bound {
                d[k] += 1;
                break;
            }
            d[k] = -bound;
        }
    }
}

fn connected(m: &[Vec<i64>], members: &[usize]) -> bool {
    let mut seen = vec![members[0]];
    let mut frontier = vec![members[0]];
    while let Some(i) = frontier.pop() {
        for &j in members {
            if m[i][j] > 0 && !seen.contains(&j) {
                seen.push(j);
                frontier.push(j);
            }
        }
    }
    seen.len() == members.len()
}

/// `χ(L_D) = deg_D(L) - D·D̄ + χ(O_D)` for the maximal subsheaf of a line
/// bundle supported on `D`, with `χ(O_D) = |D| - (intersections inside D)`.
#[allow(clippy::needless_range_loop)]
pub fn sub_chi(m: &[Vec<i64>], d: &[i64], members: &[usize]) -> i64 {
    let n = d.len();
    let inside = |i: usize| members.contains(&i);
    let degree: i64 = members.iter().map(|&i| d[i]).sum();
    let mut boundary = 0;
    let mut internal = 0;
    for i in 0..n {
        for j in 0..n {
            if inside(i) && !inside(j) {
                boundary += m[i][j];
            }
            if inside(i) && inside(j) && i < j {
                internal += m[i][j];
            }
        }
    }
    degree - boundary + members.len() as i64 - internal
}

/// Reference verdict for a degree-0 line bundle. A degree-0 bundle has
/// slope 0 under every polarization, so only the sign of `χ(L_D)` matters.
pub fn reference_verdict(k: KodairaType, d: &[i64], include_disconnected: bool) -> StabilityClass {
    let m = intersection_matrix(k);
    let n = d.len();
    let mut best = i64::MIN;
    for mask in 1..(1u32 << n) - 1 {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if !include_disconnected && !connected(&m, &members) {
            continue;
        }
        best = best.max(sub_chi(&m, d, &members));
    }
    match best.cmp(&0) {
        std::cmp::Ordering::Greater => StabilityClass::Unstable,
        std::cmp::Ordering::Equal => StabilityClass::StrictlySemistable,
        std::cmp::Ordering::Less => StabilityClass::Stable,
    }
}

/// Arcs of an `N`-cycle: a start and a length `1..N`.
pub fn arc_count(n: usize) -> usize {
    let mut arcs = std::collections::BTreeSet::new();
    for start in 0..n {
        for len in 1..n {
            let mut arc: Vec<usize> = (0..len).map(|k| (start + k) % n).collect();
            arc.sort();
            arcs.insert(arc);
        }
    }
    arcs.len()
}
