//! The family `E_p = J_p^* ⊗ O(-q)` and the map `φ: C0 → M̄(C)`.
//!
//! Every component is a projective line with an affine coordinate `t`. On a
//! cycle the two nodes of a component sit at `t = 0` and `t = ∞` (the lower
//! node index at 0); on `III`, `IV` and `II` the singular point sits at
//! `t = ∞`. Removing those points from `C0` leaves `Gm` or `Ga`, and for
//! smooth `p, q ∈ C0` the stable bundle `O(p - q)` is the group difference of
//! their coordinates, which is how stable moduli points are told apart.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curve_model::{FiberGraph, KodairaType, SingularityKind};
use crate::stability::{
    classify_sheaf, graded_object, GradedObject, MultiDegree, Rational, SheafClass,
    SingularPointKind, StabilityClass, StabilityError, StabilityVerdict,
};

use super::JacobianError;

/// A closed point of a fiber.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiberPoint {
    /// A point with affine coordinate `t` on a component.
    Smooth { component: usize, t: Rational },
    /// A node of an `I_N` fiber.
    Node { index: usize },
    /// The cusp of `II`, the tacnode of `III` or the triple point of `IV`.
    Singular,
}

impl fmt::Display for FiberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberPoint::Smooth { component, t } => write!(f, "c{component}:{t}"),
            FiberPoint::Node { index } => write!(f, "node{index}"),
            FiberPoint::Singular => f.write_str("singular"),
        }
    }
}

impl FromStr for FiberPoint {
    type Err = JacobianError;

    /// `c<k>:<t>` (t an integer or `a/b`), `node<k>` or `singular`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || JacobianError::Parse(format!("cannot parse fiber point `{s}`"));
        if s == "singular" {
            return Ok(FiberPoint::Singular);
        }
        if let Some(k) = s.strip_prefix("node") {
            return Ok(FiberPoint::Node {
                index: k.parse().map_err(|_| bad())?,
            });
        }
        let rest = s.strip_prefix('c').ok_or_else(bad)?;
        let (k, t) = rest.split_once(':').ok_or_else(bad)?;
        Ok(FiberPoint::Smooth {
            component: k.parse().map_err(|_| bad())?,
            t: t.parse().map_err(|_| bad())?,
        })
    }
}

/// Position of a stable point inside `M̄(C)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocusCoordinate {
    Multiplicative(Rational),
    Additive(Rational),
    /// The non-locally-free stable point of an integral singular fiber.
    SingularPoint,
}

/// A point of `M̄(C)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuliPoint {
    Stable {
        class: SheafClass,
        coordinate: LocusCoordinate,
    },
    /// A strictly semistable S-equivalence class, identified by its graded
    /// object.
    Extra(GradedObject),
}

impl ModuliPoint {
    pub fn is_stable(&self) -> bool {
        matches!(self, ModuliPoint::Stable { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpClass {
    pub sheaf: SheafClass,
    pub verdict: StabilityVerdict,
    pub point: ModuliPoint,
}

/// Points of `C0` where it meets the rest of the fiber. On irreducible
/// singular fibers these are the branches of the node or the cusp.
pub fn boundary_points(g: &FiberGraph, c0: usize) -> Result<Vec<FiberPoint>, JacobianError> {
    g.check_component(c0)?;
    Ok(match g.singularity {
        SingularityKind::None => Vec::new(),
        SingularityKind::Nodes => g
            .nodes_on(c0)
            .into_iter()
            .map(|node| FiberPoint::Node { index: node.index })
            .collect(),
        SingularityKind::Cusp | SingularityKind::Tangency | SingularityKind::TriplePoint => {
            vec![FiberPoint::Singular]
        }
    })
}

fn singular_kind(g: &FiberGraph) -> Option<SingularPointKind> {
    match g.singularity {
        SingularityKind::Cusp => Some(SingularPointKind::Cusp),
        SingularityKind::Tangency => Some(SingularPointKind::Tacnode),
        SingularityKind::TriplePoint => Some(SingularPointKind::Triple),
        _ => None,
    }
}

/// Checks that `p` is a point of `g`.
fn check_point(g: &FiberGraph, p: &FiberPoint) -> Result<(), JacobianError> {
    let missing = || JacobianError::NoSuchPoint {
        point: p.to_string(),
        fiber: g.kodaira,
    };
    match p {
        FiberPoint::Smooth { component, t } => {
            g.check_component(*component)?;
            // the nodes of a cycle component sit at t = 0 and t = ∞
            if g.singularity == SingularityKind::Nodes && *t == Rational::from_integer(0) {
                return Err(missing());
            }
        }
        FiberPoint::Node { index } => {
            if *index >= g.nodes().len() {
                return Err(missing());
            }
        }
        FiberPoint::Singular => {
            if singular_kind(g).is_none() {
                return Err(missing());
            }
        }
    }
    Ok(())
}

/// The sheaf `E_p` for the base point `q`, its stability and its moduli point.
pub fn ep_class(
    g: &FiberGraph,
    p: &FiberPoint,
    q: &FiberPoint,
) -> Result<EpClass, JacobianError> {
    if g.kodaira == KodairaType::Smooth {
        return Err(JacobianError::SmoothFiber);
    }
    let FiberPoint::Smooth {
        component: c0,
        t: tq,
    } = *q
    else {
        return Err(JacobianError::BasePointNotSmooth(q.to_string()));
    };
    check_point(g, q)?;
    check_point(g, p)?;
    let n = g.component_count();
    let pulled_back = || {
        let mut d = vec![0; n];
        d[c0] = -1;
        MultiDegree(d)
    };
    let sheaf = match p {
        FiberPoint::Smooth { component, .. } => {
            SheafClass::LineBundle(MultiDegree::unit_move(n, c0, *component))
        }
        FiberPoint::Node { index } => SheafClass::NodalTorsionFree {
            node: *index,
            degrees: pulled_back(),
        },
        FiberPoint::Singular => SheafClass::SingularPointDual {
            point: singular_kind(g).expect("checked above"),
            degrees: pulled_back(),
        },
    };
    let verdict = classify_sheaf(g, &g.default_polarization(), &sheaf)?;
    let point = match verdict.class {
        StabilityClass::Unstable => return Err(StabilityError::Unstable.into()),
        StabilityClass::StrictlySemistable => ModuliPoint::Extra(graded_object(g, &sheaf)?),
        StabilityClass::Stable => {
            let coordinate = match p {
                FiberPoint::Smooth { t, .. } => {
                    if g.singularity == SingularityKind::Nodes {
                        LocusCoordinate::Multiplicative(t / tq)
                    } else {
                        LocusCoordinate::Additive(t - tq)
                    }
                }
                _ => LocusCoordinate::SingularPoint,
            };
            ModuliPoint::Stable {
                class: sheaf.clone(),
                coordinate,
            }
        }
    };
    Ok(EpClass {
        sheaf,
        verdict,
        point,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiEntry {
    pub point: FiberPoint,
    pub image: ModuliPoint,
}

/// How `φ` glues the boundary of `C0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapSingularity {
    /// Two boundary points go to the same moduli point.
    Node,
    /// A single boundary point, unibranch image.
    Cusp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    pub fiber: KodairaType,
    pub c0: usize,
    pub samples: Vec<PhiEntry>,
    pub boundary: Vec<PhiEntry>,
    /// Boundary points of `C0` sent to the common strictly semistable point.
    pub identified_points: usize,
    pub singularity: MapSingularity,
    /// Distinct smooth samples have distinct images.
    pub injective_on_smooth: bool,
}

/// Evaluates `φ(p) = [E_p]` on the samples and on the boundary of `C0`.
pub fn phi_fibers(
    g: &FiberGraph,
    q: &FiberPoint,
    samples: &[FiberPoint],
) -> Result<PhiReport, JacobianError> {
    if !g.is_reducible() {
        return Err(JacobianError::Irreducible(g.kodaira));
    }
    let FiberPoint::Smooth { component: c0, .. } = *q else {
        return Err(JacobianError::BasePointNotSmooth(q.to_string()));
    };
    let boundary_pts = boundary_points(g, c0)?;
    for s in samples {
        let on_c0 = match s {
            FiberPoint::Smooth { component, .. } => *component == c0,
            other => boundary_pts.contains(other),
        };
        if !on_c0 {
            return Err(JacobianError::SampleOffComponent {
                point: s.to_string(),
                component: c0,
            });
        }
    }
    let eval = |p: &FiberPoint| -> Result<PhiEntry, JacobianError> {
        Ok(PhiEntry {
            point: p.clone(),
            image: ep_class(g, p, q)?.point,
        })
    };
    let samples: Vec<PhiEntry> = samples.iter().map(eval).collect::<Result<_, _>>()?;
    let boundary: Vec<PhiEntry> = boundary_pts.iter().map(eval).collect::<Result<_, _>>()?;

    let extra = boundary.iter().find_map(|e| match &e.image {
        ModuliPoint::Extra(_) => Some(&e.image),
        _ => None,
    });
    let identified_points = boundary
        .iter()
        .filter(|e| Some(&e.image) == extra)
        .count();
    let singularity = match identified_points {
        2 => MapSingularity::Node,
        1 => MapSingularity::Cusp,
        k => {
            return Err(JacobianError::Inconsistent {
                fiber: g.kodaira,
                detail: format!("{k} boundary points of C{} are identified", c0 + 1),
            })
        }
    };

    let smooth: Vec<&PhiEntry> = samples
        .iter()
        .filter(|e| matches!(e.point, FiberPoint::Smooth { .. }))
        .collect();
    let injective_on_smooth = smooth.iter().enumerate().all(|(i, a)| {
        smooth[i + 1..]
            .iter()
            .all(|b| a.point == b.point || a.image != b.image)
    });

    Ok(PhiReport {
        fiber: g.kodaira,
        c0,
        samples,
        boundary,
        identified_points,
        singularity,
        injective_on_smooth,
    })
}
