use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::curve_model::{FiberSpec, KodairaType};

use super::{jacobian_type, JacobianError, ModuliClassification};

/// On-disk description of a fibration: singular (or otherwise interesting)
/// base points and their fibers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationDescription {
    pub base_dim: u32,
    pub points: Vec<FibrationPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationPoint {
    pub label: String,
    pub fiber: FiberSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl FibrationDescription {
    pub fn from_json(text: &str) -> Result<Self, JacobianError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            JacobianError::Parse(format!(
                "fibration description, field `{}`: {}",
                e.path(),
                e.inner()
            ))
        })
    }

    pub fn from_path(path: &Path) -> Result<Self, JacobianError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| JacobianError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularLocusNote {
    /// Surfaces: at worst finitely many singular points.
    FinitePoints,
    /// Threefolds: the singular locus has dimension at most 1.
    DimensionAtMostOne,
}

impl fmt::Display for SingularLocusNote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularLocusNote::FinitePoints => "at worst finitely many singular points",
            SingularLocusNote::DimensionAtMostOne => "singular locus of dimension at most 1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber: Option<KodairaType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ModuliClassification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantSummary {
    pub singular_fibers: usize,
    pub reducible_fibers: usize,
    pub unsupported_fibers: usize,
    pub by_type: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationReport {
    pub base_dim: u32,
    pub entries: Vec<ReportEntry>,
    pub discriminant: DiscriminantSummary,
    /// Every classified Jacobian fiber is an integral curve of arithmetic genus 1.
    pub all_integral_genus_one: bool,
    pub has_reducible_fibers: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_locus: Option<SingularLocusNote>,
    pub notes: Vec<String>,
}

impl FibrationReport {
    pub fn has_errors(&self) -> bool {
        self.entries.iter().any(|e| e.error.is_some())
    }
}

/// Classifies the Jacobian fiber over every listed base point.
///
/// Unsupported fibers produce an error entry and do not stop the report.
pub fn relative_report(desc: &FibrationDescription) -> Result<FibrationReport, JacobianError> {
    if desc.base_dim == 0 {
        return Err(JacobianError::InvalidBaseDimension);
    }
    let mut discriminant = DiscriminantSummary::default();
    let mut entries = Vec::with_capacity(desc.points.len());
    for point in &desc.points {
        let entry = match point.fiber.kodaira() {
            Ok(k) => {
                if !k.is_smooth() {
                    discriminant.singular_fibers += 1;
                    *discriminant.by_type.entry(k.to_string()).or_default() += 1;
                }
                if k.is_reducible() {
                    discriminant.reducible_fibers += 1;
                }
                ReportEntry {
                    label: point.label.clone(),
                    fiber: Some(k),
                    classification: Some(jacobian_type(k)),
                    error: None,
                }
            }
            Err(e) => {
                discriminant.singular_fibers += 1;
                discriminant.unsupported_fibers += 1;
                let detail = match &point.note {
                    Some(note) => format!("{e} ({note})"),
                    None => e.to_string(),
                };
                ReportEntry {
                    label: point.label.clone(),
                    fiber: None,
                    classification: None,
                    error: Some(detail),
                }
            }
        };
        entries.push(entry);
    }

    let all_integral_genus_one = entries
        .iter()
        .filter_map(|e| e.classification)
        .all(|c| c.is_integral() && c.arithmetic_genus() == 1);
    let has_reducible_fibers = discriminant.reducible_fibers > 0;
    let singular_locus = match (discriminant.singular_fibers, desc.base_dim) {
        (0, _) => None,
        (_, 1) => Some(SingularLocusNote::FinitePoints),
        (_, 2) => Some(SingularLocusNote::DimensionAtMostOne),
        _ => None,
    };
    let mut notes = Vec::new();
    if all_integral_genus_one {
        notes.push("every Jacobian fiber is an integral curve of arithmetic genus 1".to_string());
    }
    if has_reducible_fibers {
        notes.push(
            "reducible fibers have all but one component contracted to a point; \
             the relative Jacobian is not isomorphic to the original fibration, \
             even when it has a section"
                .to_string(),
        );
    }
    if discriminant.singular_fibers > 0 && desc.base_dim > 2 {
        notes.push(format!(
            "no bound on the singular locus is recorded for base dimension {}",
            desc.base_dim
        ));
    }
    Ok(FibrationReport {
        base_dim: desc.base_dim,
        entries,
        discriminant,
        all_integral_genus_one,
        has_reducible_fibers,
        singular_locus,
        notes,
    })
}

impl fmt::Display for FibrationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|e| e.label.len())
            .max()
            .unwrap_or(5)
            .max(5);
        writeln!(f, "{:<width$}  {:<8}  {:<17}  {:<13}  extra", "point", "fiber", "jacobian", "stable locus")?;
        for e in &self.entries {
            match (&e.fiber, &e.classification, &e.error) {
                (Some(k), Some(c), _) => writeln!(
                    f,
                    "{:<width$}  {:<8}  {:<17}  {:<13}  {}",
                    e.label,
                    k.to_string(),
                    format!("{:?}", c.kind),
                    format!("{:?}", c.stable_locus),
                    c.extra_points
                )?,
                (_, _, Some(err)) => writeln!(f, "{:<width$}  error: {err}", e.label)?,
                _ => writeln!(f, "{:<width$}  -", e.label)?,
            }
        }
        writeln!(
            f,
            "base dimension {}, {} singular fiber(s), {} reducible",
            self.base_dim, self.discriminant.singular_fibers, self.discriminant.reducible_fibers
        )?;
        if let Some(note) = self.singular_locus {
            writeln!(f, "singular locus: {note}")?;
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobian::JacobianKind;

    fn point(label: &str, k: KodairaType) -> FibrationPoint {
        FibrationPoint {
            label: label.into(),
            fiber: FiberSpec::from_type(k),
            note: None,
        }
    }

    #[test]
    fn surface_with_nodal_fibers() {
        let desc = FibrationDescription {
            base_dim: 1,
            points: vec![
                point("s1", KodairaType::I(1)),
                point("s2", KodairaType::I(2)),
                point("s3", KodairaType::Smooth),
            ],
        };
        let r = relative_report(&desc).unwrap();
        let kinds: Vec<JacobianKind> = r
            .entries
            .iter()
            .map(|e| e.classification.unwrap().kind)
            .collect();
        assert_eq!(
            kinds,
            vec![
                JacobianKind::NodalRational,
                JacobianKind::NodalRational,
                JacobianKind::SmoothElliptic
            ]
        );
        assert_eq!(r.singular_locus, Some(SingularLocusNote::FinitePoints));
        assert!(r.has_reducible_fibers);
        assert!(r.all_integral_genus_one);
    }

    #[test]
    fn threefold_note() {
        let desc = FibrationDescription {
            base_dim: 2,
            points: vec![point("D", KodairaType::I(3))],
        };
        let r = relative_report(&desc).unwrap();
        assert_eq!(r.singular_locus, Some(SingularLocusNote::DimensionAtMostOne));
    }

    #[test]
    fn all_smooth_has_no_note() {
        let desc = FibrationDescription {
            base_dim: 1,
            points: vec![point("a", KodairaType::Smooth), point("b", KodairaType::Smooth)],
        };
        let r = relative_report(&desc).unwrap();
        assert!(r
            .entries
            .iter()
            .all(|e| e.classification.unwrap().kind == JacobianKind::SmoothElliptic));
        assert_eq!(r.singular_locus, None);
        assert!(!r.has_reducible_fibers);
    }

    #[test]
    fn unsupported_entry_does_not_stop_the_report() {
        let json = r#"{"base_dim": 1, "points": [
            {"label": "s1", "fiber": {"type": "I0*"}},
            {"label": "s2", "fiber": {"type": "IV"}}
        ]}"#;
        let r = relative_report(&FibrationDescription::from_json(json).unwrap()).unwrap();
        assert!(r.entries[0].error.is_some());
        assert_eq!(
            r.entries[1].classification.unwrap().kind,
            JacobianKind::CuspidalRational
        );
        assert!(r.has_errors());
        assert_eq!(r.discriminant.unsupported_fibers, 1);
    }

    #[test]
    fn zero_base_dimension_is_rejected() {
        let desc = FibrationDescription {
            base_dim: 0,
            points: vec![],
        };
        assert_eq!(
            relative_report(&desc).unwrap_err(),
            JacobianError::InvalidBaseDimension
        );
    }

    #[test]
    fn description_parse_errors_name_the_path() {
        let err = FibrationDescription::from_json(r#"{"base_dim": "one", "points": []}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("base_dim"), "{err}");
    }
}
