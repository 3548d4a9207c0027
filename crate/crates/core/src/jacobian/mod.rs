//! The Jacobian `M̄(C)` of each fiber and the relative Jacobian of a fibration.
//!
//! [`jacobian_type`] is the classification table. [`derive_classification`]
//! reaches the same answer from the fiber graph alone: it enumerates the
//! stable and strictly semistable multidegrees, counts S-equivalence classes
//! and looks at how the boundary points of `C0` are glued under `φ`.

mod phi;
mod report;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve_model::{CurveError, FiberGraph, KodairaType, SingularityKind};
use crate::stability::{
    enumerate_stratification, graded_object, MultiDegree, Rational, SheafClass, StabilityError,
    StratificationOptions,
};

pub use phi::{
    boundary_points, ep_class, phi_fibers, EpClass, FiberPoint, LocusCoordinate, MapSingularity,
    ModuliPoint, PhiEntry, PhiReport,
};
pub use report::{
    relative_report, DiscriminantSummary, FibrationDescription, FibrationPoint, FibrationReport,
    ReportEntry, SingularLocusNote,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JacobianError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error("the smooth fiber has no rational parametrization of its components")]
    SmoothFiber,
    #[error("fiber {0} is irreducible; this operation needs a reducible fiber")]
    Irreducible(KodairaType),
    #[error("base point q must be a smooth point of the fiber, got {0}")]
    BasePointNotSmooth(String),
    #[error("{point} is not a point of fiber {fiber}")]
    NoSuchPoint { point: String, fiber: KodairaType },
    #[error("sample {point} does not lie on component C{}", component + 1)]
    SampleOffComponent { point: String, component: usize },
    #[error("unexpected moduli structure on {fiber}: {detail}")]
    Inconsistent { fiber: KodairaType, detail: String },
    #[error("base dimension must be at least 1")]
    InvalidBaseDimension,
    #[error("{0}")]
    Parse(String),
}

/// The isomorphism type of `M̄(C)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum JacobianKind {
    SmoothElliptic,
    NodalRational,
    CuspidalRational,
}

/// The group of stable degree-0 line bundles with trivial restrictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StableLocus {
    EllipticCurve,
    Gm,
    Ga,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuliClassification {
    pub kind: JacobianKind,
    pub stable_locus: StableLocus,
    /// Strictly semistable S-equivalence classes in `M̄(C)`.
    pub extra_points: u32,
}

impl ModuliClassification {
    /// All three kinds are integral curves of arithmetic genus 1.
    pub fn arithmetic_genus(&self) -> u32 {
        1
    }

    pub fn is_integral(&self) -> bool {
        true
    }
}

impl fmt::Display for ModuliClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} (stable locus {:?}, {} extra point{})",
            self.kind,
            self.stable_locus,
            self.extra_points,
            if self.extra_points == 1 { "" } else { "s" }
        )
    }
}

/// The Jacobian of a supported fiber.
pub fn jacobian_type(k: KodairaType) -> ModuliClassification {
    use JacobianKind::*;
    use StableLocus::*;
    let (kind, stable_locus, extra_points) = match k {
        KodairaType::Smooth => (SmoothElliptic, EllipticCurve, 0),
        // integral fibers are their own Jacobians
        KodairaType::I(1) => (NodalRational, Gm, 0),
        KodairaType::II => (CuspidalRational, Ga, 0),
        KodairaType::I(_) => (NodalRational, Gm, 1),
        KodairaType::III | KodairaType::IV => (CuspidalRational, Ga, 1),
    };
    ModuliClassification {
        kind,
        stable_locus,
        extra_points,
    }
}

/// Computes the classification from the fiber graph without the table.
///
/// Integral fibers are isomorphic to their Jacobians, so the singularity
/// annotation decides. For reducible fibers the stable stratum of the
/// bound-1 box must be the zero vector alone, the number of extra points is
/// the number of distinct graded objects among the strictly semistable
/// classes, and the gluing of the boundary points of `C0` under `φ`
/// separates node from cusp.
pub fn derive_classification(g: &FiberGraph) -> Result<ModuliClassification, JacobianError> {
    use JacobianKind::*;
    use StableLocus::*;
    if !g.is_reducible() {
        let (kind, stable_locus) = match g.singularity {
            SingularityKind::None => (SmoothElliptic, EllipticCurve),
            SingularityKind::Nodes => (NodalRational, Gm),
            _ => (CuspidalRational, Ga),
        };
        return Ok(ModuliClassification {
            kind,
            stable_locus,
            extra_points: 0,
        });
    }
    let inconsistent = |detail: String| JacobianError::Inconsistent {
        fiber: g.kodaira,
        detail,
    };
    let pol = g.default_polarization();
    let strata = enumerate_stratification(g, &pol, &StratificationOptions::new(1))?;
    let n = g.component_count();
    if strata.oracle_strata.stable != [MultiDegree::zero(n)] {
        return Err(inconsistent(format!(
            "stable stratum {:?}",
            strata.oracle_strata.stable
        )));
    }
    let mut classes = BTreeSet::new();
    for d in &strata.oracle_strata.strictly_semistable {
        let gr = graded_object(g, &SheafClass::LineBundle(d.clone()))?;
        classes.insert(gr);
    }
    let q = FiberPoint::Smooth {
        component: 0,
        t: Rational::from_integer(1),
    };
    let phi = phi_fibers(g, &q, &[])?;
    for entry in &phi.boundary {
        if let ModuliPoint::Extra(gr) = &entry.image {
            classes.insert(gr.clone());
        }
    }
    let (kind, stable_locus) = match phi.singularity {
        MapSingularity::Node => (NodalRational, Gm),
        MapSingularity::Cusp => (CuspidalRational, Ga),
    };
    Ok(ModuliClassification {
        kind,
        stable_locus,
        extra_points: classes.len() as u32,
    })
}
