//! Supported Kodaira fibers as polarized dual graphs.
//!
//! A fiber is stored as its list of rational components together with the
//! symmetric matrix of pairwise intersection numbers `C_i . C_j`. The nature of
//! the singular points (nodes, a tangency, a common triple point) is kept as an
//! annotation, because it cannot be read off the pairwise numbers alone: an
//! `I2` fiber and a `III` fiber share the matrix `[[0, 2], [2, 0]]`.
//!
//! Component indices are 0-based throughout the crate. Labels follow the
//! usual `C1, ..., CN` naming.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard limit for subset enumeration over components.
pub const MAX_ENUMERABLE_COMPONENTS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("I_N requires N >= 1, got N = {0}")]
    InvalidCycleLength(i64),
    #[error("unrecognized fiber type `{0}` (expected smooth, I<N>, II, III or IV)")]
    UnknownType(String),
    #[error("fiber type `{0}` is not reduced and is unsupported")]
    Unsupported(String),
    #[error("field `{field}`: {message}")]
    InvalidField { field: String, message: String },
    #[error("subcurve must be a nonempty proper subset of the components")]
    ImproperSubcurve,
    #[error("component index {index} out of range for a fiber with {count} components")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("subcurve {0:?} is disconnected")]
    Disconnected(Vec<usize>),
    #[error("polarization has {got} weights, fiber has {expected} components")]
    PolarizationLength { expected: usize, got: usize },
    #[error("polarization weights must be positive")]
    NonPositiveWeight,
    #[error("{0} components exceed the enumeration limit of {MAX_ENUMERABLE_COMPONENTS}")]
    TooManyComponents(usize),
    #[error("{0}")]
    Parse(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// Reduced Kodaira fiber types: smooth, nodal cycles, cusp, tacnode and triple point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    Smooth,
    /// A cycle of `N` rational curves; `I(1)` is the nodal cubic.
    I(u32),
    II,
    III,
    IV,
}

impl KodairaType {
    pub fn cycle(n: i64) -> Result<Self, CurveError> {
        if n < 1 || n > u32::MAX as i64 {
            return Err(CurveError::InvalidCycleLength(n));
        }
        Ok(KodairaType::I(n as u32))
    }

    pub fn component_count(&self) -> usize {
        match self {
            KodairaType::Smooth | KodairaType::II => 1,
            KodairaType::I(n) => *n as usize,
            KodairaType::III => 2,
            KodairaType::IV => 3,
        }
    }

    /// `I(N)` with `N >= 2`, `III` and `IV`.
    pub fn is_reducible(&self) -> bool {
        self.component_count() > 1
    }

    pub fn is_smooth(&self) -> bool {
        matches!(self, KodairaType::Smooth)
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::Smooth => f.write_str("smooth"),
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => f.write_str("II"),
            KodairaType::III => f.write_str("III"),
            KodairaType::IV => f.write_str("IV"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = CurveError;

    /// Accepts the shorthand `smooth`, `I4`, `I_4`, `II`, `III`, `IV`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "smooth" | "Smooth" | "I0" | "I_0" => return Ok(KodairaType::Smooth),
            "II" => return Ok(KodairaType::II),
            "III" => return Ok(KodairaType::III),
            "IV" => return Ok(KodairaType::IV),
            _ => {}
        }
        if t.ends_with('*') || matches!(t, "II*" | "III*" | "IV*") {
            return Err(CurveError::Unsupported(t.to_string()));
        }
        let digits = t
            .strip_prefix("I_")
            .or_else(|| t.strip_prefix('I'))
            .ok_or_else(|| CurveError::UnknownType(t.to_string()))?;
        let n: i64 = digits
            .parse()
            .map_err(|_| CurveError::UnknownType(t.to_string()))?;
        if n == 0 {
            return Ok(KodairaType::Smooth);
        }
        KodairaType::cycle(n)
    }
}

impl Serialize for KodairaType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for KodairaType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// What kind of singularities the fiber has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityKind {
    None,
    /// Ordinary double points: `I_N`, including the self-node of `I_1`.
    Nodes,
    Cusp,
    /// Two components tangent at one point (`III`).
    Tangency,
    /// Three components through a common point (`IV`).
    TriplePoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub index: usize,
    pub label: String,
}

/// A node of an `I_N` fiber, joining `components.0` and `components.1`.
/// For `I_1` both entries are the single component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub index: usize,
    pub components: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberGraph {
    pub kodaira: KodairaType,
    pub components: Vec<Component>,
    pub intersections: Vec<Vec<u32>>,
    pub singularity: SingularityKind,
}

/// Builds the dual graph of a fiber of a supported Kodaira type.
#[allow(clippy::needless_range_loop)]
pub fn build_fiber(kodaira: KodairaType) -> Result<FiberGraph, CurveError> {
    let n = kodaira.component_count();
    if let KodairaType::I(0) = kodaira {
        return Err(CurveError::InvalidCycleLength(0));
    }
    let mut m = vec![vec![0u32; n]; n];
    let singularity = match kodaira {
        KodairaType::Smooth => SingularityKind::None,
        KodairaType::II => SingularityKind::Cusp,
        KodairaType::I(1) => SingularityKind::Nodes,
        KodairaType::I(2) => {
            m[0][1] = 2;
            m[1][0] = 2;
            SingularityKind::Nodes
        }
        KodairaType::I(_) => {
            for i in 0..n {
                let j = (i + 1) % n;
                m[i][j] = 1;
                m[j][i] = 1;
            }
            SingularityKind::Nodes
        }
        KodairaType::III => {
            m[0][1] = 2;
            m[1][0] = 2;
            SingularityKind::Tangency
        }
        KodairaType::IV => {
            for (i, row) in m.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    if i != j {
                        *v = 1;
                    }
                }
            }
            SingularityKind::TriplePoint
        }
    };
    let components = (0..n)
        .map(|index| Component {
            index,
            label: format!("C{}", index + 1),
        })
        .collect();
    Ok(FiberGraph {
        kodaira,
        components,
        intersections: if kodaira.is_smooth() { Vec::new() } else { m },
        singularity,
    })
}

/// A nonempty proper set of components, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subcurve {
    pub indices: Vec<usize>,
    pub connected: bool,
}

impl Subcurve {
    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Either a subcurve or the whole fiber.
#[derive(Debug, Clone, Copy)]
pub enum CurvePart<'a> {
    Full,
    Sub(&'a Subcurve),
}

impl FiberGraph {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_reducible(&self) -> bool {
        self.component_count() > 1
    }

    pub fn intersection(&self, i: usize, j: usize) -> u32 {
        if i == j || self.intersections.is_empty() {
            0
        } else {
            self.intersections[i][j]
        }
    }

    /// Validates and normalizes a set of component indices.
    pub fn subcurve(&self, indices: &[usize]) -> Result<Subcurve, CurveError> {
        let n = self.component_count();
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&i| i >= n) {
            return Err(CurveError::ComponentOutOfRange {
                index: bad,
                count: n,
            });
        }
        if sorted.is_empty() || sorted.len() == n {
            return Err(CurveError::ImproperSubcurve);
        }
        let connected = self.is_connected(&sorted);
        Ok(Subcurve {
            indices: sorted,
            connected,
        })
    }

    /// Whether the given components form a connected configuration.
    pub fn is_connected(&self, indices: &[usize]) -> bool {
        connected_by(indices, |i, j| self.intersection(i, j) > 0)
    }

    /// All nonempty proper subsets whose induced intersection graph is
    /// connected, in lexicographic order of their index lists.
    pub fn proper_connected_subcurves(&self) -> Result<Vec<Subcurve>, CurveError> {
        Ok(self
            .proper_subcurves()?
            .into_iter()
            .filter(|d| d.connected)
            .collect())
    }

    /// All nonempty proper subsets, connected or not, lexicographically.
    pub fn proper_subcurves(&self) -> Result<Vec<Subcurve>, CurveError> {
        let n = self.component_count();
        if n > MAX_ENUMERABLE_COMPONENTS {
            return Err(CurveError::TooManyComponents(n));
        }
        let mut out: Vec<Subcurve> = proper_subsets(n)
            .map(|indices| {
                let connected = self.is_connected(&indices);
                Subcurve { indices, connected }
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// `D . D̄`, the total intersection of `D` with its complement.
    pub fn boundary(&self, d: &Subcurve) -> Result<u32, CurveError> {
        let n = self.component_count();
        if d.is_empty() || d.len() >= n {
            return Err(CurveError::ImproperSubcurve);
        }
        Ok(d.indices
            .iter()
            .flat_map(|&i| (0..n).filter(|j| !d.contains(*j)).map(move |j| (i, j)))
            .map(|(i, j)| self.intersection(i, j))
            .sum())
    }

    /// `χ(O_D)` for a connected subcurve, or `χ(O_C) = 0` for the whole fiber.
    pub fn euler_characteristic(&self, part: CurvePart<'_>) -> Result<i64, CurveError> {
        match part {
            CurvePart::Full => Ok(0),
            CurvePart::Sub(d) => {
                if !self.is_connected(&d.indices) {
                    return Err(CurveError::Disconnected(d.indices.clone()));
                }
                Ok(self.structure_euler(&d.indices))
            }
        }
    }

    /// `#components - #internal intersections`. Valid for subcurves of
    /// arithmetic genus 0 built from pairwise data, connected or not.
    pub(crate) fn structure_euler(&self, indices: &[usize]) -> i64 {
        let mut internal = 0i64;
        for (a, &i) in indices.iter().enumerate() {
            for &j in &indices[a + 1..] {
                internal += self.intersection(i, j) as i64;
            }
        }
        indices.len() as i64 - internal
    }

    /// Nodes of an `I_N` fiber, in index order. Empty for other types.
    pub fn nodes(&self) -> Vec<Node> {
        match self.kodaira {
            KodairaType::I(1) => vec![Node {
                index: 0,
                components: (0, 0),
            }],
            KodairaType::I(2) => (0..2)
                .map(|index| Node {
                    index,
                    components: (0, 1),
                })
                .collect(),
            KodairaType::I(n) => (0..n as usize)
                .map(|index| Node {
                    index,
                    components: (index, (index + 1) % n as usize),
                })
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Nodes lying on component `c`, in index order.
    pub fn nodes_on(&self, c: usize) -> Vec<Node> {
        self.nodes()
            .into_iter()
            .filter(|node| node.components.0 == c || node.components.1 == c)
            .collect()
    }

    pub fn check_component(&self, c: usize) -> Result<(), CurveError> {
        if c >= self.component_count() {
            return Err(CurveError::ComponentOutOfRange {
                index: c,
                count: self.component_count(),
            });
        }
        Ok(())
    }

    pub fn default_polarization(&self) -> Polarization {
        Polarization {
            weights: vec![1; self.component_count()],
        }
    }
}

/// Degrees `h_i > 0` of the ample class on each component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polarization {
    pub weights: Vec<u32>,
}

impl Polarization {
    pub fn new(weights: Vec<u32>) -> Result<Self, CurveError> {
        if weights.contains(&0) {
            return Err(CurveError::NonPositiveWeight);
        }
        Ok(Polarization { weights })
    }

    pub fn from_signed(weights: &[i64]) -> Result<Self, CurveError> {
        if weights.iter().any(|&w| w <= 0 || w > u32::MAX as i64) {
            return Err(CurveError::NonPositiveWeight);
        }
        Ok(Polarization {
            weights: weights.iter().map(|&w| w as u32).collect(),
        })
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum()
    }

    pub fn weight_of(&self, indices: &[usize]) -> u64 {
        indices.iter().map(|&i| self.weights[i] as u64).sum()
    }

    pub fn check_against(&self, g: &FiberGraph) -> Result<(), CurveError> {
        if self.weights.len() != g.component_count() {
            return Err(CurveError::PolarizationLength {
                expected: g.component_count(),
                got: self.weights.len(),
            });
        }
        Ok(())
    }
}

/// On-disk description of a single fiber: `{"type": "I", "n": 4}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSpec {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarization: Option<Vec<i64>>,
}

impl FiberSpec {
    pub fn from_type(k: KodairaType) -> Self {
        match k {
            KodairaType::I(n) => FiberSpec {
                kind: "I".into(),
                n: Some(n as i64),
                polarization: None,
            },
            KodairaType::Smooth => FiberSpec {
                kind: "smooth".into(),
                n: None,
                polarization: None,
            },
            other => FiberSpec {
                kind: other.to_string(),
                n: None,
                polarization: None,
            },
        }
    }

    pub fn kodaira(&self) -> Result<KodairaType, CurveError> {
        match self.kind.as_str() {
            "I" => {
                let n = self.n.ok_or_else(|| CurveError::InvalidField {
                    field: "n".into(),
                    message: "type I requires a cycle length".into(),
                })?;
                KodairaType::cycle(n)
            }
            other => {
                if self.n.is_some() {
                    return Err(CurveError::InvalidField {
                        field: "n".into(),
                        message: format!("type {other} takes no parameter"),
                    });
                }
                other.parse()
            }
        }
    }

    /// Resolves the fiber and its polarization (all ones when absent).
    pub fn resolve(&self) -> Result<(FiberGraph, Polarization), CurveError> {
        let g = build_fiber(self.kodaira()?)?;
        let pol = match &self.polarization {
            Some(w) => {
                let p = Polarization::from_signed(w).map_err(|e| CurveError::InvalidField {
                    field: "polarization".into(),
                    message: e.to_string(),
                })?;
                p.check_against(&g).map_err(|e| CurveError::InvalidField {
                    field: "polarization".into(),
                    message: e.to_string(),
                })?;
                p
            }
            None => g.default_polarization(),
        };
        Ok((g, pol))
    }

    pub fn from_json(text: &str) -> Result<Self, CurveError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            CurveError::Parse(format!(
                "fiber description, field `{}`: {}",
                e.path(),
                e.inner()
            ))
        })
    }

    pub fn from_path(path: &Path) -> Result<Self, CurveError> {
        let text = std::fs::read_to_string(path).map_err(|e| CurveError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text)
    }
}

/// Enumerates all nonempty proper subsets of `0..n` as sorted index lists.
pub(crate) fn proper_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    (1..full).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

/// Connectivity of `indices` under an adjacency predicate.
pub(crate) fn connected_by(indices: &[usize], adjacent: impl Fn(usize, usize) -> bool) -> bool {
    if indices.len() <= 1 {
        return true;
    }
    let mut seen = vec![false; indices.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(a) = stack.pop() {
        for b in 0..indices.len() {
            if !seen[b] && adjacent(indices[a], indices[b]) {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fiber(k: KodairaType) -> FiberGraph {
        build_fiber(k).unwrap()
    }

    #[test]
    fn i2_has_two_nodes_between_its_components() {
        let g = fiber(KodairaType::I(2));
        assert_eq!(g.component_count(), 2);
        assert_eq!(g.intersection(0, 1), 2);
        assert_eq!(g.singularity, SingularityKind::Nodes);
        assert_eq!(g.nodes().len(), 2);
    }

    #[test]
    fn iii_is_a_tangency_with_the_i2_matrix() {
        let g = fiber(KodairaType::III);
        assert_eq!(g.intersections, vec![vec![0, 2], vec![2, 0]]);
        assert_eq!(g.singularity, SingularityKind::Tangency);
        assert!(g.nodes().is_empty());
    }

    #[test]
    fn smooth_fiber_has_empty_matrix() {
        let g = fiber(KodairaType::Smooth);
        assert_eq!(g.component_count(), 1);
        assert!(g.intersections.is_empty());
        assert!(g.proper_connected_subcurves().unwrap().is_empty());
    }

    #[test]
    fn irreducible_types_have_one_component() {
        for k in [KodairaType::Smooth, KodairaType::I(1), KodairaType::II] {
            assert_eq!(fiber(k).component_count(), 1, "{k}");
        }
    }

    #[test]
    fn cycle_matrix_for_large_n() {
        let g = fiber(KodairaType::I(5));
        for i in 0..5 {
            for j in 0..5 {
                let expected = u32::from((i + 1) % 5 == j || (j + 1) % 5 == i);
                assert_eq!(g.intersection(i, j), expected);
            }
        }
    }

    #[test]
    fn rejects_zero_and_negative_cycle_length() {
        assert_eq!(
            KodairaType::cycle(0),
            Err(CurveError::InvalidCycleLength(0))
        );
        assert!(KodairaType::cycle(-3).is_err());
        assert!(build_fiber(KodairaType::I(0)).is_err());
    }

    #[test]
    fn i3_subcurves_are_all_six_arcs() {
        let g = fiber(KodairaType::I(3));
        let subs: Vec<Vec<usize>> = g
            .proper_connected_subcurves()
            .unwrap()
            .into_iter()
            .map(|d| d.indices)
            .collect();
        assert_eq!(
            subs,
            vec![vec![0], vec![0, 1], vec![0, 2], vec![1], vec![1, 2], vec![2]]
        );
    }

    #[test]
    fn i2_subcurves() {
        let g = fiber(KodairaType::I(2));
        assert_eq!(g.proper_connected_subcurves().unwrap().len(), 2);
    }

    #[test]
    fn boundary_examples() {
        let g = fiber(KodairaType::I(4));
        assert_eq!(g.boundary(&g.subcurve(&[0, 1]).unwrap()).unwrap(), 2);
        let g = fiber(KodairaType::III);
        assert_eq!(g.boundary(&g.subcurve(&[0]).unwrap()).unwrap(), 2);
        let g = fiber(KodairaType::IV);
        assert_eq!(g.boundary(&g.subcurve(&[0, 1]).unwrap()).unwrap(), 2);
    }

    #[test]
    fn boundary_rejects_improper_subcurves() {
        let g = fiber(KodairaType::I(3));
        assert_eq!(g.subcurve(&[]), Err(CurveError::ImproperSubcurve));
        assert_eq!(g.subcurve(&[0, 1, 2]), Err(CurveError::ImproperSubcurve));
        let fake = Subcurve {
            indices: vec![],
            connected: true,
        };
        assert_eq!(g.boundary(&fake), Err(CurveError::ImproperSubcurve));
    }

    #[test]
    fn euler_characteristic_examples() {
        let g = fiber(KodairaType::I(5));
        let d = g.subcurve(&[0, 1, 2]).unwrap();
        assert_eq!(g.euler_characteristic(CurvePart::Sub(&d)).unwrap(), 1);
        assert_eq!(g.euler_characteristic(CurvePart::Full).unwrap(), 0);
        let g = fiber(KodairaType::IV);
        let d = g.subcurve(&[0, 1]).unwrap();
        assert_eq!(g.euler_characteristic(CurvePart::Sub(&d)).unwrap(), 1);
    }

    #[test]
    fn euler_characteristic_rejects_disconnected() {
        let g = fiber(KodairaType::I(4));
        let d = g.subcurve(&[0, 2]).unwrap();
        assert!(!d.connected);
        assert_eq!(
            g.euler_characteristic(CurvePart::Sub(&d)),
            Err(CurveError::Disconnected(vec![0, 2]))
        );
    }

    #[test]
    fn stored_full_euler_characteristic_matches_pairwise_count() {
        for k in [
            KodairaType::I(2),
            KodairaType::I(3),
            KodairaType::I(7),
            KodairaType::III,
            KodairaType::IV,
        ] {
            let g = fiber(k);
            let all: Vec<usize> = (0..g.component_count()).collect();
            assert_eq!(g.structure_euler(&all), 0, "{k}");
        }
    }

    #[test]
    fn shorthand_parsing() {
        assert_eq!("I4".parse::<KodairaType>().unwrap(), KodairaType::I(4));
        assert_eq!("I_12".parse::<KodairaType>().unwrap(), KodairaType::I(12));
        assert_eq!("I1".parse::<KodairaType>().unwrap(), KodairaType::I(1));
        assert_eq!("II".parse::<KodairaType>().unwrap(), KodairaType::II);
        assert_eq!("smooth".parse::<KodairaType>().unwrap(), KodairaType::Smooth);
        assert!(matches!(
            "I3*".parse::<KodairaType>(),
            Err(CurveError::Unsupported(_))
        ));
        assert!(matches!(
            "V".parse::<KodairaType>(),
            Err(CurveError::UnknownType(_))
        ));
    }

    #[test]
    fn fiber_spec_json() {
        let spec = FiberSpec::from_json(r#"{"type": "I", "n": 4}"#).unwrap();
        assert_eq!(spec.kodaira().unwrap(), KodairaType::I(4));
        let spec = FiberSpec::from_json(r#"{"type": "III", "polarization": [2, 3]}"#).unwrap();
        let (g, pol) = spec.resolve().unwrap();
        assert_eq!(g.kodaira, KodairaType::III);
        assert_eq!(pol.total(), 5);
    }

    #[test]
    fn fiber_spec_errors_name_the_field() {
        let err = FiberSpec::from_json(r#"{"type": "I", "n": "four"}"#).unwrap_err();
        assert!(err.to_string().contains("`n`"), "{err}");
        let err = FiberSpec::from_json(r#"{"type": "I"}"#)
            .unwrap()
            .kodaira()
            .unwrap_err();
        assert!(err.to_string().contains("`n`"), "{err}");
        let err = FiberSpec::from_json(r#"{"type": "IV", "polarization": [1, 0, 1]}"#)
            .unwrap()
            .resolve()
            .unwrap_err();
        assert!(err.to_string().contains("polarization"), "{err}");
        let err = FiberSpec::from_json(r#"{"type": "IV", "polarization": [1, 1]}"#)
            .unwrap()
            .resolve()
            .unwrap_err();
        assert!(err.to_string().contains("polarization"), "{err}");
    }

    #[test]
    fn json_parse_error_reports_line() {
        let err = FiberSpec::from_json("{\n  \"type\": \"I\",\n  \"n\": \n}").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }
}
