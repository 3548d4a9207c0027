use crate::curve_model::{FiberGraph, KodairaType};

use super::{MultiDegree, StabilityClass, StabilityError, StabilityVerdict};

/// Classifies a degree-0 line bundle from its multidegree alone.
///
/// Stable exactly when every restriction is trivial. Strictly semistable when
/// every restriction has degree in `{-1, 0, 1}` and, after dropping the zero
/// entries, no two neighbours around the fiber carry the same sign. The three
/// components of a `IV` fiber have no preferred cyclic order, so every order
/// is tried and they must agree.
pub fn classify_by_rule(
    g: &FiberGraph,
    d: &MultiDegree,
) -> Result<StabilityVerdict, StabilityError> {
    if !g.is_reducible() {
        return Err(StabilityError::Irreducible(g.kodaira));
    }
    d.check(g, 0)?;
    let n = g.component_count();
    let orders: Vec<Vec<usize>> = match g.kodaira {
        KodairaType::IV => vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2]],
        _ => vec![(0..n).collect()],
    };
    let mut verdicts = orders.iter().map(|order| rule_in_order(d.as_slice(), order));
    let first = verdicts.next().expect("at least one ordering");
    assert!(
        verdicts.all(|v| v == first),
        "cyclic orderings of {} disagree on {d}",
        g.kodaira
    );
    Ok(StabilityVerdict::bare(first))
}

fn rule_in_order(d: &[i64], order: &[usize]) -> StabilityClass {
    if d.iter().all(|&x| x == 0) {
        return StabilityClass::Stable;
    }
    if d.iter().any(|&x| x.abs() > 1) {
        return StabilityClass::Unstable;
    }
    let signs: Vec<i64> = order.iter().map(|&i| d[i]).filter(|&x| x != 0).collect();
    let k = signs.len();
    let alternating = (0..k).all(|i| signs[i] != signs[(i + 1) % k]);
    if alternating {
        StabilityClass::StrictlySemistable
    } else {
        StabilityClass::Unstable
    }
}
