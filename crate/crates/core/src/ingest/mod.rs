//! Weierstrass families `y² = x³ + a(t)x + b(t)` over a one-parameter base,
//! their invariants and the reduction type over each point of the
//! discriminant.

mod poly;

use std::fmt;
use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve_model::{FiberSpec, KodairaType};
use crate::jacobian::{FibrationDescription, FibrationPoint};

pub use poly::{rational, Poly, RootSearchTooLarge, Valuation};

/// Largest coefficient whose divisors are enumerated during the rational
/// root search.
pub const DEFAULT_ROOT_SEARCH_BOUND: u64 = 1_000_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IngestError {
    #[error("the discriminant vanishes identically; every fiber is singular")]
    IsotriviallySingular,
    #[error(
        "model is not minimal at {at} (v(c4) = {v_c4}, v(Δ) = {v_delta}); \
         substitute (a, b) -> (a/u^4, b/u^6) with u = t - t0 to reduce it"
    )]
    NonMinimalModel {
        at: String,
        v_c4: Valuation,
        v_delta: Valuation,
    },
    #[error("reduction at {at} with v(c4) = {v_c4}, v(Δ) = {v_delta} is not one of the supported types")]
    Unsupported {
        at: String,
        v_c4: Valuation,
        v_delta: Valuation,
    },
    #[error("rational root search needs coefficient {coefficient} to be at most {bound} in absolute value")]
    RootSearchTooLarge { coefficient: String, bound: u64 },
    #[error("cannot mix short-form keys (a, b) with long-form keys (a1 ... a6)")]
    MixedForms,
    #[error("model file has no coefficients")]
    EmptyModel,
    #[error("{0}")]
    Parse(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl From<RootSearchTooLarge> for IngestError {
    fn from(e: RootSearchTooLarge) -> Self {
        IngestError::RootSearchTooLarge {
            coefficient: e.coefficient,
            bound: e.bound,
        }
    }
}

/// `y² = x³ + a(t)x + b(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassModel {
    pub a: Poly,
    pub b: Poly,
}

/// Polynomials defining `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongWeierstrass {
    pub a1: Poly,
    pub a2: Poly,
    pub a3: Poly,
    pub a4: Poly,
    pub a6: Poly,
}

impl LongWeierstrass {
    /// The short model with the same `c4` and `c6`: `a = -c4/48`, `b = -c6/864`.
    pub fn to_short(&self) -> WeierstrassModel {
        let k = |n: i64| Poly::constant(rational(n));
        let b2 = &(&self.a1 * &self.a1) + &(&k(4) * &self.a2);
        let b4 = &(&k(2) * &self.a4) + &(&self.a1 * &self.a3);
        let b6 = &(&self.a3 * &self.a3) + &(&k(4) * &self.a6);
        let c4 = &(&b2 * &b2) - &(&k(24) * &b4);
        let c6 = &(&(&k(36) * &(&b2 * &b4)) - &b2.pow(3)) - &(&k(216) * &b6);
        WeierstrassModel {
            a: c4.scale(&BigRational::new((-1).into(), 48.into())),
            b: c6.scale(&BigRational::new((-1).into(), 864.into())),
        }
    }
}

/// `c4`, `c6` and the discriminant of a short model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub c4: Poly,
    pub c6: Poly,
    pub discriminant: Poly,
}

impl Invariants {
    /// `c4³ - c6² = 1728Δ`, checked exactly.
    pub fn satisfies_identity(&self) -> bool {
        &self.c4.pow(3) - &self.c6.pow(2)
            == self.discriminant.scale(&rational(1728))
    }
}

impl WeierstrassModel {
    pub fn new(a: Poly, b: Poly) -> Self {
        WeierstrassModel { a, b }
    }

    pub fn from_integers(a: &[i64], b: &[i64]) -> Self {
        WeierstrassModel::new(Poly::from_integers(a), Poly::from_integers(b))
    }

    /// `(u⁴a, u⁶b)`, isomorphic over the base.
    pub fn twist(&self, u: &BigRational) -> Self {
        let u2 = u * u;
        let u4 = &u2 * &u2;
        WeierstrassModel::new(self.a.scale(&u4), self.b.scale(&(&u4 * &u2)))
    }

    pub fn from_json(text: &str) -> Result<Self, IngestError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ModelFile = serde_path_to_error::deserialize(de).map_err(|e| {
            IngestError::Parse(format!("model file, field `{}`: {}", e.path(), e.inner()))
        })?;
        file.into_model()
    }

    pub fn from_toml(text: &str) -> Result<Self, IngestError> {
        let de = toml::Deserializer::parse(text)
            .map_err(|e| IngestError::Parse(format!("model file: {e}")))?;
        let file: ModelFile = serde_path_to_error::deserialize(de).map_err(|e| {
            IngestError::Parse(format!("model file, field `{}`: {}", e.path(), e.inner()))
        })?;
        file.into_model()
    }

    /// Reads a `.toml` file as TOML and anything else as JSON.
    pub fn from_path(path: &Path) -> Result<Self, IngestError> {
        let text = std::fs::read_to_string(path).map_err(|e| IngestError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        if path.extension().is_some_and(|e| e == "toml") {
            Self::from_toml(&text)
        } else {
            Self::from_json(&text)
        }
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", self.a, self.b)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    a: Option<Poly>,
    b: Option<Poly>,
    a1: Option<Poly>,
    a2: Option<Poly>,
    a3: Option<Poly>,
    a4: Option<Poly>,
    a6: Option<Poly>,
}

impl ModelFile {
    fn into_model(self) -> Result<WeierstrassModel, IngestError> {
        let short = self.a.is_some() || self.b.is_some();
        let long = [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
            .iter()
            .any(|c| c.is_some());
        match (short, long) {
            (true, true) => Err(IngestError::MixedForms),
            (false, false) => Err(IngestError::EmptyModel),
            (true, false) => Ok(WeierstrassModel::new(
                self.a.unwrap_or_default(),
                self.b.unwrap_or_default(),
            )),
            (false, true) => Ok(LongWeierstrass {
                a1: self.a1.unwrap_or_default(),
                a2: self.a2.unwrap_or_default(),
                a3: self.a3.unwrap_or_default(),
                a4: self.a4.unwrap_or_default(),
                a6: self.a6.unwrap_or_default(),
            }
            .to_short()),
        }
    }
}

/// `c4 = -48a`, `c6 = -864b`, `Δ = -16(4a³ + 27b²)`.
pub fn invariants(w: &WeierstrassModel) -> Result<Invariants, IngestError> {
    let c4 = w.a.scale(&rational(-48));
    let c6 = w.b.scale(&rational(-864));
    let discriminant = (&w.a.pow(3).scale(&rational(4)) + &w.b.pow(2).scale(&rational(27)))
        .scale(&rational(-16));
    if discriminant.is_zero() {
        return Err(IngestError::IsotriviallySingular);
    }
    Ok(Invariants {
        c4,
        c6,
        discriminant,
    })
}

/// Order of vanishing of `p` at `t0`.
pub fn valuation(p: &Poly, t0: &BigRational) -> Valuation {
    p.valuation_at(t0)
}

/// Where on the base a reduction was measured.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseLocus {
    Point(BigRational),
    /// Every root of a monic square-free factor; all share one reduction type.
    RootsOf(Poly),
}

impl fmt::Display for BaseLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseLocus::Point(t0) => write!(f, "t={t0}"),
            BaseLocus::RootsOf(p) => write!(f, "roots of {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionData {
    pub t0: BaseLocus,
    pub v_c4: Valuation,
    pub v_delta: Valuation,
}

impl ReductionData {
    pub fn at_point(inv: &Invariants, t0: BigRational) -> Self {
        ReductionData {
            v_c4: inv.c4.valuation_at(&t0),
            v_delta: inv.discriminant.valuation_at(&t0),
            t0: BaseLocus::Point(t0),
        }
    }
}

/// The fiber type over `t0` of a model assumed minimal there.
pub fn classify_reduction(r: &ReductionData) -> Result<KodairaType, IngestError> {
    use Valuation::Finite;
    let (v_c4, v_delta) = (r.v_c4, r.v_delta);
    if v_c4.is_at_least(4) && v_delta.is_at_least(12) {
        return Err(IngestError::NonMinimalModel {
            at: r.t0.to_string(),
            v_c4,
            v_delta,
        });
    }
    let unsupported = || IngestError::Unsupported {
        at: r.t0.to_string(),
        v_c4,
        v_delta,
    };
    let Finite(delta) = v_delta else {
        return Err(unsupported());
    };
    match (v_c4, delta) {
        (_, 0) => Ok(KodairaType::Smooth),
        (Finite(0), n) => Ok(KodairaType::I(n)),
        (_, 2) => Ok(KodairaType::II),
        (Finite(1), 3) => Ok(KodairaType::III),
        (c, 4) if c.is_at_least(2) => Ok(KodairaType::IV),
        _ => Err(unsupported()),
    }
}

/// One group of discriminant points with a common reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScannedPoint {
    pub reduction: ReductionData,
    /// Number of base points in the group.
    pub count: usize,
    pub fiber: Result<KodairaType, IngestError>,
}

impl ScannedPoint {
    pub fn label(&self) -> String {
        self.reduction.t0.to_string()
    }

    fn note(&self) -> String {
        let r = &self.reduction;
        let mut note = format!("v(c4) = {}, v(Δ) = {}", r.v_c4, r.v_delta);
        if self.count > 1 {
            note.push_str(&format!(", {} conjugate points", self.count));
        }
        note
    }

    fn to_fibration_point(&self) -> FibrationPoint {
        let (fiber, note) = match &self.fiber {
            Ok(k) => (FiberSpec::from_type(*k), self.note()),
            Err(e) => (
                FiberSpec {
                    kind: "unsupported".into(),
                    n: None,
                    polarization: None,
                },
                e.to_string(),
            ),
        };
        FibrationPoint {
            label: self.label(),
            fiber,
            note: Some(note),
        }
    }
}

/// Every point of the discriminant in the affine `t`-line, with its
/// reduction.
///
/// Rational roots come first, in increasing order. The remaining roots are
/// grouped by square-free factors of `Δ` and split further by the order of
/// vanishing of `c4`, so every group has a single reduction type.
pub fn scan_points(w: &WeierstrassModel, bound: u64) -> Result<Vec<ScannedPoint>, IngestError> {
    let inv = invariants(w)?;
    let mut rational_points = Vec::new();
    let mut groups = Vec::new();
    for (factor, multiplicity) in inv.discriminant.square_free_decomposition() {
        let mut rest = factor.clone();
        for root in factor.rational_roots(bound)? {
            rest = rest
                .exact_div(&Poly::linear_factor(&root))
                .expect("root of the factor");
            rational_points.push(root);
        }
        if rest.is_constant() {
            continue;
        }
        for (part, v_c4) in split_by_c4_order(&rest, &inv.c4) {
            let reduction = ReductionData {
                t0: BaseLocus::RootsOf(part.clone()),
                v_c4,
                v_delta: Valuation::Finite(multiplicity),
            };
            groups.push(ScannedPoint {
                fiber: classify_reduction(&reduction),
                count: part.degree().unwrap_or(0),
                reduction,
            });
        }
    }
    rational_points.sort();
    let mut out: Vec<ScannedPoint> = rational_points
        .into_iter()
        .map(|t0| {
            let reduction = ReductionData::at_point(&inv, t0);
            ScannedPoint {
                fiber: classify_reduction(&reduction),
                count: 1,
                reduction,
            }
        })
        .collect();
    out.extend(groups);
    Ok(out)
}

/// Splits a square-free `f` into factors on whose roots `c4` vanishes to a
/// fixed order: roots of `gcd(f, c4, c4', …, c4^(k-1))` are exactly those
/// with `v(c4) ≥ k`.
fn split_by_c4_order(f: &Poly, c4: &Poly) -> Vec<(Poly, Valuation)> {
    if c4.is_zero() {
        return vec![(f.monic(), Valuation::Infinite)];
    }
    let mut out = Vec::new();
    let mut current = f.monic();
    let mut derivative = c4.clone();
    let mut k = 0;
    while !current.is_constant() {
        let next = current.gcd(&derivative);
        let exact = current.exact_div(&next).expect("gcd divides");
        if !exact.is_constant() {
            out.push((exact, Valuation::Finite(k)));
        }
        current = next;
        derivative = derivative.derivative();
        k += 1;
    }
    out
}

/// The discriminant locus as a fibration description over a curve.
pub fn scan_discriminant(w: &WeierstrassModel) -> Result<FibrationDescription, IngestError> {
    Ok(describe(&scan_points(w, DEFAULT_ROOT_SEARCH_BOUND)?))
}

pub fn describe(points: &[ScannedPoint]) -> FibrationDescription {
    FibrationDescription {
        base_dim: 1,
        points: points.iter().map(ScannedPoint::to_fibration_point).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn model(a: &[i64], b: &[i64]) -> WeierstrassModel {
        WeierstrassModel::from_integers(a, b)
    }

    fn kinds(w: &WeierstrassModel) -> Vec<(String, Result<KodairaType, IngestError>)> {
        scan_points(w, DEFAULT_ROOT_SEARCH_BOUND)
            .unwrap()
            .into_iter()
            .map(|p| (p.label(), p.fiber))
            .collect()
    }

    #[test]
    fn invariants_examples() {
        let inv = invariants(&model(&[0], &[0, 1])).unwrap();
        assert_eq!(inv.discriminant, Poly::from_integers(&[0, 0, -432]));
        assert!(inv.c4.is_zero());
        assert!(inv.satisfies_identity());
        let inv = invariants(&model(&[0, 1], &[0])).unwrap();
        assert_eq!(inv.discriminant, Poly::from_integers(&[0, 0, 0, -64]));
        assert_eq!(inv.c4, Poly::from_integers(&[0, -48]));
        assert!(inv.satisfies_identity());
        assert_eq!(
            invariants(&model(&[0], &[0])).unwrap_err(),
            IngestError::IsotriviallySingular
        );
    }

    #[test]
    fn decision_table_examples() {
        let at0 = |v_c4, v_delta| ReductionData {
            t0: BaseLocus::Point(rational(0)),
            v_c4,
            v_delta,
        };
        use Valuation::{Finite, Infinite};
        assert_eq!(classify_reduction(&at0(Infinite, Finite(2))).unwrap(), KodairaType::II);
        assert_eq!(classify_reduction(&at0(Finite(1), Finite(3))).unwrap(), KodairaType::III);
        assert_eq!(classify_reduction(&at0(Finite(0), Finite(1))).unwrap(), KodairaType::I(1));
        assert_eq!(classify_reduction(&at0(Finite(2), Finite(4))).unwrap(), KodairaType::IV);
        assert_eq!(classify_reduction(&at0(Finite(3), Finite(0))).unwrap(), KodairaType::Smooth);
        assert!(matches!(
            classify_reduction(&at0(Finite(2), Finite(6))),
            Err(IngestError::Unsupported { .. })
        ));
        assert!(matches!(
            classify_reduction(&at0(Finite(4), Finite(12))),
            Err(IngestError::NonMinimalModel { .. })
        ));
        assert!(matches!(
            classify_reduction(&at0(Finite(1), Finite(4))),
            Err(IngestError::Unsupported { .. })
        ));
    }

    #[test]
    fn scan_examples() {
        assert_eq!(kinds(&model(&[0], &[0, 1])), vec![("t=0".into(), Ok(KodairaType::II))]);
        assert_eq!(kinds(&model(&[0, 1], &[0])), vec![("t=0".into(), Ok(KodairaType::III))]);
        assert_eq!(kinds(&model(&[0], &[0, 0, 1])), vec![("t=0".into(), Ok(KodairaType::IV))]);
        assert_eq!(
            kinds(&model(&[-3], &[2, 1])),
            vec![
                ("t=-4".into(), Ok(KodairaType::I(1))),
                ("t=0".into(), Ok(KodairaType::I(1)))
            ]
        );
        assert!(kinds(&model(&[1], &[1])).is_empty());
    }

    #[test]
    fn irrational_roots_are_grouped_by_factor() {
        // b = t^2 - 2 gives Δ = -432 (t^2 - 2)^2, type II over both roots
        let points = scan_points(&model(&[0], &[-2, 0, 1]), DEFAULT_ROOT_SEARCH_BOUND).unwrap();
        assert_eq!(points.len(), 1);
        assert_eq!(points[0].label(), "roots of t^2 - 2");
        assert_eq!(points[0].count, 2);
        assert_eq!(points[0].fiber, Ok(KodairaType::II));
    }

    #[test]
    fn irrational_iii_and_i1() {
        // a = t^2 - 2, b = a^2: Δ = -16 a^3 (27t^2 - 50)
        let a = Poly::from_integers(&[-2, 0, 1]);
        let b = &a * &a;
        let points = scan_points(&WeierstrassModel::new(a, b), DEFAULT_ROOT_SEARCH_BOUND).unwrap();
        let labels: Vec<_> = points.iter().map(|p| (p.label(), p.fiber.clone())).collect();
        assert_eq!(
            labels,
            vec![
                ("roots of t^2 - (50/27)".into(), Ok(KodairaType::I(1))),
                ("roots of t^2 - 2".into(), Ok(KodairaType::III)),
            ]
        );
    }

    #[test]
    fn c4_order_splits_a_factor() {
        let f = Poly::from_integers(&[6, 0, -5, 0, 1]);
        let c4 = Poly::from_integers(&[-2, 0, 1]).pow(2);
        assert_eq!(
            split_by_c4_order(&f, &c4),
            vec![
                (Poly::from_integers(&[-3, 0, 1]), Valuation::Finite(0)),
                (Poly::from_integers(&[-2, 0, 1]), Valuation::Finite(2)),
            ]
        );
        assert_eq!(
            split_by_c4_order(&f, &Poly::zero()),
            vec![(f.clone(), Valuation::Infinite)]
        );
    }

    #[test]
    fn non_minimal_points_are_reported_per_point() {
        // (t^4, t^6) is a twist of (1, 1) by u = t
        let points = kinds(&model(&[0, 0, 0, 0, 1], &[0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(points.len(), 1);
        assert!(matches!(points[0].1, Err(IngestError::NonMinimalModel { .. })));
        let desc = scan_discriminant(&model(&[0, 0, 0, 0, 1], &[0, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(desc.points[0].fiber.kind, "unsupported");
    }

    #[test]
    fn long_form_keeps_c4_and_c6() {
        // y^2 + y = x^3 - x^2 + t
        let long = LongWeierstrass {
            a1: Poly::zero(),
            a2: Poly::from_integers(&[-1]),
            a3: Poly::from_integers(&[1]),
            a4: Poly::zero(),
            a6: Poly::from_integers(&[0, 1]),
        };
        let short = long.to_short();
        let inv = invariants(&short).unwrap();
        // b2 = -4, b4 = 0, b6 = 1 + 4t: c4 = 16, c6 = 64 - 216(1 + 4t)
        assert_eq!(inv.c4, Poly::from_integers(&[16]));
        assert_eq!(inv.c6, Poly::from_integers(&[-152, -864]));
        assert!(inv.satisfies_identity());
    }

    #[test]
    fn model_files() {
        let w = WeierstrassModel::from_json(r#"{"a": ["0"], "b": ["0", "1"]}"#).unwrap();
        assert_eq!(w, model(&[0], &[0, 1]));
        let w = WeierstrassModel::from_toml("a = [\"-3\"]\nb = [2, \"1\"]\n").unwrap();
        assert_eq!(w, model(&[-3], &[2, 1]));
        let w = WeierstrassModel::from_json(r#"{"a4": ["0", "1"]}"#).unwrap();
        assert_eq!(w, model(&[0, 1], &[0]));
        assert_eq!(
            WeierstrassModel::from_json(r#"{"a": ["1"], "a1": ["1"]}"#).unwrap_err(),
            IngestError::MixedForms
        );
        let err = WeierstrassModel::from_json(r#"{"a": ["1/0x"]}"#).unwrap_err().to_string();
        assert!(err.contains("`a`"), "{err}");
        assert!(WeierstrassModel::from_json(r#"{"c": ["1"]}"#).is_err());
    }

    #[test]
    fn twist_scales_invariants() {
        let w = model(&[-3], &[2, 1]);
        let u = BigRational::new(BigInt::from(2), BigInt::from(3));
        let a = invariants(&w).unwrap();
        let b = invariants(&w.twist(&u)).unwrap();
        let u12 = (0..12).fold(rational(1), |acc, _| acc * &u);
        assert_eq!(b.discriminant, a.discriminant.scale(&u12));
    }
}
