use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::curve_model::{FiberGraph, Polarization};

use super::{
    LocalModel, MultiDegree, SheafClass, StabilityClass, StabilityError, StabilityVerdict,
};

/// Which subcurves the destabilizer search ranges over.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubcurveMode {
    #[default]
    Connected,
    /// Also test disconnected subcurves.
    All,
}

/// Oracle verdict for a degree-0 line bundle with the given multidegree.
///
/// For every proper connected subcurve `D` the maximal subsheaf `L_D` has
/// `χ = deg_D(L) - D.D̄ + 1` and polarized rank `h_D / h`; the bundle is
/// unstable if some `L_D` has positive slope, strictly semistable if the best
/// one has slope 0, stable otherwise.
pub fn oracle_classify(
    g: &FiberGraph,
    pol: &Polarization,
    d: &MultiDegree,
) -> Result<StabilityVerdict, StabilityError> {
    oracle_classify_with(
        g,
        pol,
        &SheafClass::LineBundle(d.clone()),
        SubcurveMode::Connected,
    )
}

/// Oracle verdict for any sheaf class on a reducible fiber.
pub fn oracle_classify_with(
    g: &FiberGraph,
    pol: &Polarization,
    class: &SheafClass,
    mode: SubcurveMode,
) -> Result<StabilityVerdict, StabilityError> {
    if !g.is_reducible() {
        return Err(StabilityError::Irreducible(g.kodaira));
    }
    pol.check_against(g)?;
    class.validate(g)?;
    let model = LocalModel::for_class(g, class)?;
    let (class, witness) = evaluate(&model, pol, mode);
    let (witness, witness_chi) = match witness {
        Some((indices, chi)) => (Some(g.subcurve(&indices)?), Some(chi)),
        None => (None, None),
    };
    Ok(StabilityVerdict {
        class,
        witness,
        witness_chi,
    })
}

/// Stability of any class on any supported fiber. Every rank-1 torsion-free
/// sheaf on an integral fiber is stable.
pub fn classify_sheaf(
    g: &FiberGraph,
    pol: &Polarization,
    class: &SheafClass,
) -> Result<StabilityVerdict, StabilityError> {
    if g.is_reducible() {
        oracle_classify_with(g, pol, class, SubcurveMode::Connected)
    } else {
        pol.check_against(g)?;
        class.validate(g)?;
        Ok(StabilityVerdict::bare(StabilityClass::Stable))
    }
}

/// Compares `χ_a / h_a` with `χ_b / h_b`.
pub(crate) fn compare_slopes(chi_a: i64, h_a: u64, chi_b: i64, h_b: u64) -> Ordering {
    (chi_a as i128 * h_b as i128).cmp(&(chi_b as i128 * h_a as i128))
}

/// Classifies `model` against the subsheaves on proper subcurves of its
/// support. The witness is the lexicographically first subcurve of maximal `χ`
/// among those whose slope reaches the slope of the whole sheaf.
pub(crate) fn evaluate(
    model: &LocalModel,
    pol: &Polarization,
    mode: SubcurveMode,
) -> (StabilityClass, Option<(Vec<usize>, i64)>) {
    let chi = model.chi();
    let h = pol.weight_of(model.support());
    let mut class = StabilityClass::Stable;
    let mut witness: Option<(Vec<usize>, i64)> = None;
    for d in model.candidate_subcurves(mode == SubcurveMode::Connected) {
        let chi_d = model.sub_chi(&d);
        let ord = compare_slopes(chi_d, pol.weight_of(&d), chi, h);
        match ord {
            Ordering::Less => continue,
            Ordering::Equal => {
                if class == StabilityClass::Stable {
                    class = StabilityClass::StrictlySemistable;
                }
            }
            Ordering::Greater => class = StabilityClass::Unstable,
        }
        if witness.as_ref().is_none_or(|(_, best)| chi_d > *best) {
            witness = Some((d, chi_d));
        }
    }
    (class, witness)
}
