//! Plain-text renderings for `--format table`.

use std::fmt::Write;

use reljac_core::ingest::{invariants, ScannedPoint, WeierstrassModel};
use reljac_core::jacobian::{LocusCoordinate, ModuliPoint, PhiEntry, PhiReport};
use reljac_core::stability::{GradedObject, JhFactor, StratificationReport, VerdictCounts};

use crate::commands::{AuditReport, Failure, FiberSummary, GradedOutput, StabilityOutput};

pub fn fiber(s: &FiberSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "fiber {} ({:?})", s.fiber, s.singularity);
    let _ = writeln!(out, "components: {}", s.components.join(" "));
    if !s.intersections.is_empty() {
        let _ = writeln!(out, "intersections:");
        for (label, row) in s.components.iter().zip(&s.intersections) {
            let cells: Vec<String> = row.iter().map(|m| format!("{m:>2}")).collect();
            let _ = writeln!(out, "  {label:>4} {}", cells.join(" "));
        }
    }
    for node in &s.nodes {
        let _ = writeln!(
            out,
            "node{}: C{} - C{}",
            node.index,
            node.components.0 + 1,
            node.components.1 + 1
        );
    }
    if let Some(subs) = &s.subcurves {
        let _ = writeln!(out, "{} proper connected subcurves", subs.len());
        for d in subs {
            let labels: Vec<String> = d.indices.iter().map(|i| format!("C{}", i + 1)).collect();
            let _ = writeln!(
                out,
                "  {{{}}}: boundary {}, euler characteristic {}",
                labels.join(","),
                d.boundary,
                d.euler_characteristic
            );
        }
    }
    out.trim_end().to_string()
}

pub fn stability(s: &StabilityOutput) -> String {
    let mut out = format!("{} on {}: {}", s.sheaf, s.fiber, s.class);
    if let (Some(w), Some(chi)) = (&s.witness, s.witness_chi) {
        let labels: Vec<String> = w.indices.iter().map(|i| format!("C{}", i + 1)).collect();
        let _ = write!(out, "\nwitness {{{}}} with χ = {chi}", labels.join(","));
    }
    if let Some(rule) = s.rule {
        let _ = write!(out, "\nrule: {rule}");
    }
    out
}

fn counts(c: &VerdictCounts) -> String {
    format!(
        "stable {}, strictly semistable {}, unstable {}",
        c.stable, c.strictly_semistable, c.unstable
    )
}

pub fn stratification(r: &StratificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "fiber {} bound {}: {} vectors",
        r.fiber, r.bound, r.vectors_examined
    );
    let _ = writeln!(out, "rule:   {}", counts(&r.rule_counts));
    let _ = writeln!(out, "oracle: {}", counts(&r.oracle_counts));
    let _ = writeln!(out, "disagreements: {}", r.disagreements.len());
    for d in &r.oracle_strata.stable {
        let _ = writeln!(out, "stable {d}");
    }
    for d in &r.oracle_strata.strictly_semistable {
        let _ = writeln!(out, "strictly semistable {d}");
    }
    out.trim_end().to_string()
}

pub fn graded(g: &GradedOutput) -> String {
    match &g.graded {
        GradedObject::Stable(class) => format!("{class} is stable"),
        GradedObject::Factors(f) => format!("Gr({}) = {}", g.sheaf, factors(f)),
    }
}

fn factors(factors: &[JhFactor]) -> String {
    let parts: Vec<String> = factors
        .iter()
        .map(|f| format!("O_C{}({})", f.component + 1, f.degree))
        .collect();
    parts.join(" + ")
}

fn image(e: &PhiEntry) -> String {
    match &e.image {
        ModuliPoint::Stable { class, coordinate } => {
            let at = match coordinate {
                LocusCoordinate::Multiplicative(t) => format!("Gm coordinate {t}"),
                LocusCoordinate::Additive(t) => format!("Ga coordinate {t}"),
                LocusCoordinate::SingularPoint => "singular point".to_string(),
            };
            format!("{} -> stable {class}, {at}", e.point)
        }
        ModuliPoint::Extra(GradedObject::Factors(f)) => {
            format!("{} -> extra point {}", e.point, factors(f))
        }
        ModuliPoint::Extra(GradedObject::Stable(class)) => format!("{} -> {class}", e.point),
    }
}

pub fn phi(r: &PhiReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "fiber {} on C{}", r.fiber, r.c0 + 1);
    for e in r.samples.iter().chain(&r.boundary) {
        let _ = writeln!(out, "  {}", image(e));
    }
    let _ = writeln!(
        out,
        "{} boundary point(s) identified: {:?}; injective on smooth samples: {}",
        r.identified_points, r.singularity, r.injective_on_smooth
    );
    out.trim_end().to_string()
}

pub fn scan(model: &WeierstrassModel, points: &[ScannedPoint]) -> Result<String, Failure> {
    let inv = invariants(model)?;
    let mut out = String::new();
    let _ = writeln!(out, "{model}");
    let _ = writeln!(out, "discriminant: {}", inv.discriminant);
    let _ = writeln!(out, "c4: {}", inv.c4);
    if points.is_empty() {
        let _ = writeln!(out, "no singular fibers over the affine line");
    }
    for p in points {
        let verdict = match &p.fiber {
            Ok(k) => k.to_string(),
            Err(e) => format!("error: {e}"),
        };
        let _ = writeln!(
            out,
            "{}: v(c4) = {}, v(Δ) = {}, points {}: {verdict}",
            p.label(),
            p.reduction.v_c4,
            p.reduction.v_delta,
            p.count
        );
    }
    Ok(out.trim_end().to_string())
}

pub fn audit(r: &AuditReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "fiber {} bound {}: {} vectors, {} disagreements",
        r.fiber, r.bound, r.vectors_examined, r.disagreements
    );
    let _ = writeln!(out, "oracle: {}", counts(&r.oracle_counts));
    let _ = writeln!(
        out,
        "{} polarizations (seed {}): {} changed verdicts",
        r.polarization_samples, r.seed, r.polarization_mismatches
    );
    if let Some(m) = r.disconnected_mismatches {
        let _ = writeln!(out, "disconnected subcurves: {m} changed verdicts");
    }
    for d in &r.examples {
        let _ = writeln!(out, "  {}: rule {} oracle {}", d.degrees, d.rule, d.oracle);
    }
    let _ = write!(out, "{}", if r.passed() { "PASS" } else { "FAIL" });
    out
}
