//! Slope (semi)stability of rank-1 degree-0 sheaves on reducible fibers.
//!
//! Two independent deciders live here. [`classify_by_rule`] applies the
//! multidegree rule for line bundles (all zero is stable; entries in
//! `{-1, 0, 1}` whose nonzero entries alternate around the fiber are strictly
//! semistable). [`oracle_classify`] searches subcurves for a destabilizing
//! subsheaf and compares exact slopes. The stratification harness runs both
//! over a box of multidegrees and reports any disagreement.

mod graded;
mod model;
mod oracle;
mod rule;
mod stratify;

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve_model::{CurveError, FiberGraph, KodairaType, Polarization, Subcurve};

pub use graded::{graded_object, graded_object_with, s_equivalent, GradedObject, JhFactor};
pub use oracle::{classify_sheaf, oracle_classify, oracle_classify_with, SubcurveMode};
pub use rule::classify_by_rule;
pub use stratify::{
    enumerate_stratification, Disagreement, StratificationOptions, StratificationReport,
    VerdictCounts, VerdictLists, DEFAULT_SEARCH_CAP,
};

pub(crate) use model::LocalModel;

/// Exact rationals for slopes and polarized ranks.
pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilityError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("multidegree has {got} entries, fiber has {expected} components")]
    DegreeLength { expected: usize, got: usize },
    #[error("total degree must be {expected}, got {got}")]
    WrongTotal { expected: i64, got: i64 },
    #[error("fiber {0} is irreducible; every rank-1 torsion-free sheaf on it is stable")]
    Irreducible(KodairaType),
    #[error("node {node} does not exist on fiber {fiber}")]
    NoSuchNode { node: usize, fiber: KodairaType },
    #[error("sheaf class {class} is not defined on fiber {fiber}")]
    ClassNotOnFiber { class: String, fiber: KodairaType },
    #[error("rank-0 sheaves are not pure of dimension one")]
    RankZero,
    #[error("sheaf is unstable; it has no Jordan-Hölder filtration in the moduli problem")]
    Unstable,
    #[error("found a stable Jordan-Hölder factor supported on components {0:?}")]
    NonComponentFactor(Vec<usize>),
    #[error("bound must be at least 1")]
    ZeroBound,
    #[error("search space of {required} vectors exceeds the cap of {cap}; raise the cap to at least {required}")]
    SearchSpaceTooLarge { required: u128, cap: u128 },
}

/// Restriction degrees `d_i = deg(L|_{C_i})`, one per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn zero(n: usize) -> Self {
        MultiDegree(vec![0; n])
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// `-1` on `from`, `+1` on `to`, zero elsewhere: the multidegree of `O(p - q)`.
    pub fn unit_move(n: usize, from: usize, to: usize) -> Self {
        let mut d = vec![0; n];
        d[from] -= 1;
        d[to] += 1;
        MultiDegree(d)
    }

    pub(crate) fn check(&self, g: &FiberGraph, total: i64) -> Result<(), StabilityError> {
        if self.len() != g.component_count() {
            return Err(StabilityError::DegreeLength {
                expected: g.component_count(),
                got: self.len(),
            });
        }
        if self.total() != total {
            return Err(StabilityError::WrongTotal {
                expected: total,
                got: self.total(),
            });
        }
        Ok(())
    }
}

impl From<Vec<i64>> for MultiDegree {
    fn from(v: Vec<i64>) -> Self {
        MultiDegree(v)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// Non-nodal singular points carrying a non-locally-free class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularPointKind {
    Cusp,
    Tacnode,
    Triple,
}

/// A rank-1 degree-0 sheaf class on a fiber.
///
/// The non-locally-free variants are pushforwards of line bundles from a
/// partial resolution of one singular point. `degrees` is the multidegree of
/// that line bundle; since the partial resolution has arithmetic genus 0 its
/// total is `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafClass {
    LineBundle(MultiDegree),
    NodalTorsionFree {
        node: usize,
        degrees: MultiDegree,
    },
    SingularPointDual {
        point: SingularPointKind,
        degrees: MultiDegree,
    },
}

impl SheafClass {
    pub fn is_locally_free(&self) -> bool {
        matches!(self, SheafClass::LineBundle(_))
    }

    pub fn degrees(&self) -> &MultiDegree {
        match self {
            SheafClass::LineBundle(d)
            | SheafClass::NodalTorsionFree { degrees: d, .. }
            | SheafClass::SingularPointDual { degrees: d, .. } => d,
        }
    }

    /// Checks that the class makes sense on `g`.
    pub fn validate(&self, g: &FiberGraph) -> Result<(), StabilityError> {
        let mismatch = || StabilityError::ClassNotOnFiber {
            class: self.to_string(),
            fiber: g.kodaira,
        };
        match self {
            SheafClass::LineBundle(d) => d.check(g, 0),
            SheafClass::NodalTorsionFree { node, degrees } => {
                if !matches!(g.kodaira, KodairaType::I(_)) {
                    return Err(mismatch());
                }
                if *node >= g.nodes().len() {
                    return Err(StabilityError::NoSuchNode {
                        node: *node,
                        fiber: g.kodaira,
                    });
                }
                degrees.check(g, -1)
            }
            SheafClass::SingularPointDual { point, degrees } => {
                let ok = matches!(
                    (point, g.kodaira),
                    (SingularPointKind::Cusp, KodairaType::II)
                        | (SingularPointKind::Tacnode, KodairaType::III)
                        | (SingularPointKind::Triple, KodairaType::IV)
                );
                if !ok {
                    return Err(mismatch());
                }
                degrees.check(g, -1)
            }
        }
    }
}

impl fmt::Display for SheafClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SheafClass::LineBundle(d) => write!(f, "L{d}"),
            SheafClass::NodalTorsionFree { node, degrees } => {
                write!(f, "node{node}_*{degrees}")
            }
            SheafClass::SingularPointDual { point, degrees } => {
                write!(f, "{point:?}_*{degrees}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StabilityClass {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl StabilityClass {
    pub fn is_semistable(self) -> bool {
        !matches!(self, StabilityClass::Unstable)
    }
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Outcome of a stability test. The oracle attaches the lexicographically
/// first subcurve of maximal `χ` whenever the class is not stable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub class: StabilityClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Subcurve>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_chi: Option<i64>,
}

impl StabilityVerdict {
    pub(crate) fn bare(class: StabilityClass) -> Self {
        StabilityVerdict {
            class,
            witness: None,
            witness_chi: None,
        }
    }
}

/// Polarized rank, degree and slope read off the Hilbert polynomial
/// `P(n) = h * rank * n + deg + rank * χ(O_C)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub rank: Rational,
    pub degree: Rational,
    pub slope: Rational,
    /// `h`, the total degree of the polarization.
    pub h: u64,
    /// `χ(O_C)` of the ambient fiber.
    pub chi_curve: i64,
}

impl HilbertData {
    pub fn hilbert_polynomial(&self, n: i64) -> Rational {
        Rational::from_integer(self.h as i64) * self.rank * n
            + self.degree
            + self.rank * self.chi_curve
    }
}

/// What [`hilbert_data`] is asked about.
#[derive(Debug, Clone)]
pub enum HilbertTarget<'a> {
    /// A rank-1 class on the whole fiber.
    Class(&'a SheafClass),
    /// The maximal subsheaf of a class supported on a subcurve.
    Restricted {
        class: &'a SheafClass,
        subcurve: &'a Subcurve,
    },
    /// A skyscraper of the given length. Always rejected.
    Skyscraper { length: u32 },
}

pub fn hilbert_data(
    g: &FiberGraph,
    pol: &Polarization,
    target: HilbertTarget<'_>,
) -> Result<HilbertData, StabilityError> {
    pol.check_against(g)?;
    let h = pol.total();
    let (chi, weight) = match target {
        HilbertTarget::Skyscraper { .. } => return Err(StabilityError::RankZero),
        HilbertTarget::Class(class) => {
            class.validate(g)?;
            let model = LocalModel::for_class(g, class)?;
            (model.chi(), h)
        }
        HilbertTarget::Restricted { class, subcurve } => {
            class.validate(g)?;
            g.subcurve(&subcurve.indices)?;
            let model = LocalModel::for_class(g, class)?;
            (
                model.sub_chi(&subcurve.indices),
                pol.weight_of(&subcurve.indices),
            )
        }
    };
    // χ(O_C) = 0, so the polarized degree is χ itself.
    let rank = Rational::new(weight as i64, h as i64);
    let degree = Rational::from_integer(chi);
    Ok(HilbertData {
        rank,
        degree,
        slope: degree / rank,
        h,
        chi_curve: 0,
    })
}

/// `χ(F ⊗ O(nH))` for the maximal subsheaf of `class` on `indices`
/// (the whole support when `indices` is `None`), computed by twisting the
/// multidegree first.
pub fn twisted_euler_characteristic(
    g: &FiberGraph,
    pol: &Polarization,
    class: &SheafClass,
    indices: Option<&[usize]>,
    n: i64,
) -> Result<i64, StabilityError> {
    class.validate(g)?;
    pol.check_against(g)?;
    let mut model = LocalModel::for_class(g, class)?;
    model.twist(pol, n);
    Ok(match indices {
        None => model.chi(),
        Some(d) => model.sub_chi(d),
    })
}
