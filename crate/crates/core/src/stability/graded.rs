use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::curve_model::{FiberGraph, Polarization};

use super::oracle::{classify_sheaf, compare_slopes};
use super::{LocalModel, SheafClass, StabilityClass, StabilityError};

/// A stable Jordan-Hölder factor: a line bundle of the given degree on one
/// component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JhFactor {
    pub component: usize,
    pub degree: i64,
}

/// The graded object `Gr(F)` of a semistable sheaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GradedObject {
    /// A stable sheaf is its own filtration.
    Stable(SheafClass),
    /// Factors of a strictly semistable sheaf, sorted.
    Factors(Vec<JhFactor>),
}

impl GradedObject {
    pub fn is_stable(&self) -> bool {
        matches!(self, GradedObject::Stable(_))
    }

    pub fn s_equivalent(&self, other: &GradedObject) -> bool {
        self == other
    }
}

/// `Gr(F)` under the all-ones polarization.
pub fn graded_object(g: &FiberGraph, class: &SheafClass) -> Result<GradedObject, StabilityError> {
    graded_object_with(g, &g.default_polarization(), class)
}

/// Builds a Jordan-Hölder filtration by repeatedly splitting off the smallest
/// subsheaf of equal slope. Such a subsheaf is stable; what remains is the
/// restriction to the complementary subcurve, again semistable of the same
/// slope.
pub fn graded_object_with(
    g: &FiberGraph,
    pol: &Polarization,
    class: &SheafClass,
) -> Result<GradedObject, StabilityError> {
    let verdict = classify_sheaf(g, pol, class)?;
    match verdict.class {
        StabilityClass::Unstable => Err(StabilityError::Unstable),
        StabilityClass::Stable => Ok(GradedObject::Stable(class.clone())),
        StabilityClass::StrictlySemistable => {
            let model = LocalModel::for_class(g, class)?;
            let mut factors = Vec::new();
            peel(&model, pol, &mut factors)?;
            factors.sort();
            Ok(GradedObject::Factors(factors))
        }
    }
}

fn peel(
    model: &LocalModel,
    pol: &Polarization,
    out: &mut Vec<JhFactor>,
) -> Result<(), StabilityError> {
    let pieces = model.pieces();
    if pieces.len() > 1 {
        for piece in pieces {
            peel(&model.restrict(&piece), pol, out)?;
        }
        return Ok(());
    }
    let support = model.support();
    if let [only] = support {
        // χ(O_P1(d)) = d + 1
        out.push(JhFactor {
            component: *only,
            degree: model.chi() - 1,
        });
        return Ok(());
    }
    let chi = model.chi();
    let h = pol.weight_of(support);
    let mut best: Option<Vec<usize>> = None;
    for d in model.candidate_subcurves(true) {
        match compare_slopes(model.sub_chi(&d), pol.weight_of(&d), chi, h) {
            Ordering::Greater => return Err(StabilityError::Unstable),
            Ordering::Equal => {
                if best.as_ref().is_none_or(|b| d.len() < b.len()) {
                    best = Some(d);
                }
            }
            Ordering::Less => {}
        }
    }
    let Some(sub) = best else {
        return Err(StabilityError::NonComponentFactor(support.to_vec()));
    };
    let [component] = sub[..] else {
        return Err(StabilityError::NonComponentFactor(sub));
    };
    out.push(JhFactor {
        component,
        degree: model.sub_chi(&sub) - 1,
    });
    let rest: Vec<usize> = support.iter().copied().filter(|&i| i != component).collect();
    peel(&model.restrict(&rest), pol, out)
}

/// Whether two semistable classes have isomorphic graded objects.
pub fn s_equivalent(
    g: &FiberGraph,
    pol: &Polarization,
    a: &SheafClass,
    b: &SheafClass,
) -> Result<bool, StabilityError> {
    Ok(graded_object_with(g, pol, a)?.s_equivalent(&graded_object_with(g, pol, b)?))
}
