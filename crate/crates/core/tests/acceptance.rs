//! Acceptance suite: each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{degree_box, reducible_fibers, reference_verdict};
use reljac_core::curve_model::{build_fiber, KodairaType, Polarization};
use reljac_core::ingest::{invariants, scan_discriminant, scan_points, WeierstrassModel, DEFAULT_ROOT_SEARCH_BOUND};
use reljac_core::jacobian::{
    derive_classification, jacobian_type, phi_fibers, relative_report, FiberPoint, JacobianKind,
    ModuliPoint, SingularLocusNote, StableLocus,
};
use reljac_core::stability::{
    classify_by_rule, enumerate_stratification, graded_object, oracle_classify,
    oracle_classify_with, s_equivalent, GradedObject, JhFactor, MultiDegree, Rational,
    SheafClass, StabilityClass, StratificationOptions, SubcurveMode,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const POLARIZATION_SEED: u64 = 0x5eed_2024;
const POLARIZATION_SAMPLES: usize = 100;

fn ensure(condition: bool, failure: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(failure())
    }
}

fn rule_oracle_equivalence() -> Outcome {
    let mut vectors = 0;
    let mut disagreements = Vec::new();
    let mut reference_mismatches = Vec::new();
    for k in reducible_fibers() {
        let g = build_fiber(k).unwrap();
        let pol = g.default_polarization();
        let boxed = degree_box(g.component_count(), 2);
        for d in &boxed {
            let md = MultiDegree(d.clone());
            let rule = classify_by_rule(&g, &md).unwrap().class;
            let oracle = oracle_classify(&g, &pol, &md).unwrap().class;
            if rule != oracle {
                disagreements.push(format!("{k} {md}: rule {rule}, oracle {oracle}"));
            }
            if reference_verdict(k, d, false) != oracle {
                reference_mismatches.push(format!("{k} {md}"));
            }
        }
        let report = enumerate_stratification(&g, &pol, &StratificationOptions::new(2)).unwrap();
        ensure(report.vectors_examined == boxed.len(), || {
            format!("{k}: stratification visited {} of {} vectors", report.vectors_examined, boxed.len())
        })?;
        ensure(report.disagreements.is_empty(), || {
            format!("{k}: stratification reports {} disagreements", report.disagreements.len())
        })?;
        vectors += boxed.len();
    }
    ensure(disagreements.is_empty(), || {
        format!("{} disagreements, first {:?}", disagreements.len(), disagreements.first())
    })?;
    ensure(reference_mismatches.is_empty(), || {
        format!(
            "oracle differs from the reference on {} vectors, first {:?}",
            reference_mismatches.len(),
            reference_mismatches.first()
        )
    })?;
    Ok(format!("{vectors} vectors, 0 disagreements"))
}

fn polarization_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(POLARIZATION_SEED);
    let mut checks = 0usize;
    for k in reducible_fibers() {
        let g = build_fiber(k).unwrap();
        let n = g.component_count();
        let boxed: Vec<MultiDegree> = degree_box(n, 2).into_iter().map(MultiDegree).collect();
        let base: Vec<StabilityClass> = boxed
            .iter()
            .map(|d| oracle_classify(&g, &g.default_polarization(), d).unwrap().class)
            .collect();
        for _ in 0..POLARIZATION_SAMPLES {
            let weights: Vec<u32> = (0..n).map(|_| rng.random_range(1..=10)).collect();
            let pol = Polarization::new(weights.clone()).unwrap();
            for (d, expected) in boxed.iter().zip(&base) {
                let got = oracle_classify(&g, &pol, d).unwrap().class;
                ensure(got == *expected, || {
                    format!("{k} {d} under {weights:?}: {got}, default polarization gives {expected}")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{POLARIZATION_SAMPLES} polarizations, {checks} verdicts identical"))
}

fn stable_locus_is_zero() -> Outcome {
    for k in reducible_fibers() {
        let g = build_fiber(k).unwrap();
        let report = enumerate_stratification(
            &g,
            &g.default_polarization(),
            &StratificationOptions::new(2),
        )
        .unwrap();
        let zero = vec![MultiDegree::zero(g.component_count())];
        ensure(report.oracle_strata.stable == zero, || {
            format!("{k}: oracle stable stratum {:?}", report.oracle_strata.stable)
        })?;
        ensure(report.rule_strata.stable == zero, || {
            format!("{k}: rule stable stratum {:?}", report.rule_strata.stable)
        })?;
    }
    Ok("stable stratum is the zero vector on every fiber".into())
}

fn graded_object_collapse() -> Outcome {
    let mut total = 0;
    for k in reducible_fibers() {
        let g = build_fiber(k).unwrap();
        let pol = g.default_polarization();
        let n = g.component_count();
        let expected = GradedObject::Factors(
            (0..n)
                .map(|component| JhFactor {
                    component,
                    degree: -1,
                })
                .collect(),
        );
        let report = enumerate_stratification(&g, &pol, &StratificationOptions::new(2)).unwrap();
        let semistable = &report.oracle_strata.strictly_semistable;
        ensure(!semistable.is_empty(), || format!("{k}: no strictly semistable vectors"))?;
        let graded: Vec<GradedObject> = semistable
            .iter()
            .map(|d| graded_object(&g, &SheafClass::LineBundle(d.clone())).unwrap())
            .collect();
        for (d, gr) in semistable.iter().zip(&graded) {
            ensure(*gr == expected, || format!("{k} {d}: Gr = {gr:?}"))?;
        }
        for (i, a) in graded.iter().enumerate() {
            for b in &graded[i + 1..] {
                ensure(a.s_equivalent(b), || format!("{k}: {a:?} and {b:?} differ"))?;
            }
        }
        let first = SheafClass::LineBundle(semistable[0].clone());
        for d in semistable {
            let other = SheafClass::LineBundle(d.clone());
            ensure(s_equivalent(&g, &pol, &first, &other).unwrap(), || {
                format!("{k}: {} and {d} are not S-equivalent", semistable[0])
            })?;
        }
        total += semistable.len();
    }
    Ok(format!("{total} strictly semistable vectors share one graded object per fiber"))
}

fn jacobian_table() -> Outcome {
    use JacobianKind::*;
    use StableLocus::*;
    let mut expected = vec![
        (KodairaType::Smooth, SmoothElliptic, EllipticCurve, 0),
        (KodairaType::I(1), NodalRational, Gm, 0),
        (KodairaType::II, CuspidalRational, Ga, 0),
        (KodairaType::III, CuspidalRational, Ga, 1),
        (KodairaType::IV, CuspidalRational, Ga, 1),
    ];
    expected.extend((2..=12).map(|n| (KodairaType::I(n), NodalRational, Gm, 1)));
    for (k, kind, locus, extra) in expected {
        let c = jacobian_type(k);
        ensure((c.kind, c.stable_locus, c.extra_points) == (kind, locus, extra), || {
            format!("{k}: table gives {c}")
        })?;
        ensure(c.is_integral() && c.arithmetic_genus() == 1, || format!("{k}: {c}"))?;
        if k.component_count() <= 8 {
            let derived = derive_classification(&build_fiber(k).unwrap()).unwrap();
            ensure(derived == c, || format!("{k}: derived {derived}, table {c}"))?;
        }
    }
    Ok("Smooth, I1..I12, II, III, IV match; derived route agrees up to 8 components".into())
}

fn phi_family() -> Outcome {
    let q = FiberPoint::Smooth {
        component: 0,
        t: Rational::from_integer(1),
    };
    let samples: Vec<FiberPoint> = [
        Rational::from_integer(1),
        Rational::from_integer(2),
        Rational::from_integer(3),
        Rational::from_integer(-1),
        Rational::new(1, 2),
        Rational::new(-7, 3),
    ]
    .into_iter()
    .map(|t| FiberPoint::Smooth { component: 0, t })
    .collect();
    for k in reducible_fibers() {
        let g = build_fiber(k).unwrap();
        let n = g.component_count();
        let report = phi_fibers(&g, &q, &samples).unwrap();
        let extra = ModuliPoint::Extra(GradedObject::Factors(
            (0..n)
                .map(|component| JhFactor {
                    component,
                    degree: -1,
                })
                .collect(),
        ));
        let expected_boundary = if matches!(k, KodairaType::I(_)) { 2 } else { 1 };
        ensure(report.boundary.len() == expected_boundary, || {
            format!("{k}: {} boundary points", report.boundary.len())
        })?;
        ensure(report.boundary.iter().all(|e| e.image == extra), || {
            format!("{k}: boundary images {:?}", report.boundary)
        })?;
        ensure(report.identified_points == expected_boundary, || {
            format!("{k}: {} identified points", report.identified_points)
        })?;
        for (i, a) in report.samples.iter().enumerate() {
            ensure(a.image.is_stable(), || format!("{k}: {} is not stable", a.point))?;
            for b in &report.samples[i + 1..] {
                ensure(a.image != b.image, || {
                    format!("{k}: {} and {} have the same image", a.point, b.point)
                })?;
            }
        }
        ensure(report.injective_on_smooth, || format!("{k}: not injective"))?;
    }
    Ok(format!(
        "{} smooth samples injective; boundary glued as node on I_N, cusp on III and IV",
        samples.len()
    ))
}

fn ingestion() -> Outcome {
    let start = Instant::now();
    let fixtures = [
        (WeierstrassModel::from_integers(&[0], &[0, 1]), KodairaType::II),
        (WeierstrassModel::from_integers(&[0, 1], &[0]), KodairaType::III),
        (WeierstrassModel::from_integers(&[0], &[0, 0, 1]), KodairaType::IV),
        (WeierstrassModel::from_integers(&[-3], &[2, 1]), KodairaType::I(1)),
    ];
    for (model, expected) in &fixtures {
        let inv = invariants(model).unwrap();
        ensure(inv.satisfies_identity(), || format!("{model}: c4^3 - c6^2 != 1728Δ"))?;
        let points = scan_points(model, DEFAULT_ROOT_SEARCH_BOUND).unwrap();
        let at_zero = points
            .iter()
            .find(|p| p.label() == "t=0")
            .ok_or_else(|| format!("{model}: t=0 not in the discriminant"))?;
        ensure(at_zero.fiber.as_ref() == Ok(expected), || {
            format!("{model}: t=0 gives {:?}, expected {expected}", at_zero.fiber)
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("II, III, IV, I1 at t=0 and the c4/c6/Δ identity hold ({elapsed:.1?})"))
}

fn end_to_end() -> Outcome {
    let desc = scan_discriminant(&WeierstrassModel::from_integers(&[-3], &[2, 1])).unwrap();
    let report = relative_report(&desc).unwrap();
    let labels: Vec<&str> = report.entries.iter().map(|e| e.label.as_str()).collect();
    ensure(labels == ["t=-4", "t=0"], || format!("entries {labels:?}"))?;
    for e in &report.entries {
        let c = e
            .classification
            .ok_or_else(|| format!("{}: {:?}", e.label, e.error))?;
        ensure(
            matches!(
                c.kind,
                JacobianKind::SmoothElliptic
                    | JacobianKind::NodalRational
                    | JacobianKind::CuspidalRational
            ) && c.is_integral()
                && c.arithmetic_genus() == 1,
            || format!("{}: {c}", e.label),
        )?;
    }
    ensure(report.all_integral_genus_one, || "report not integral".into())?;
    ensure(report.singular_locus == Some(SingularLocusNote::FinitePoints), || {
        format!("singular locus note {:?}", report.singular_locus)
    })?;
    Ok("two I1 fibers, integral genus-1 Jacobians, finite singular points".into())
}

fn disconnected_audit() -> Outcome {
    let mut vectors = 0;
    for k in reducible_fibers() {
        let g = build_fiber(k).unwrap();
        let pol = g.default_polarization();
        for d in degree_box(g.component_count(), 2) {
            let class = SheafClass::LineBundle(MultiDegree(d.clone()));
            let connected = oracle_classify_with(&g, &pol, &class, SubcurveMode::Connected).unwrap();
            let all = oracle_classify_with(&g, &pol, &class, SubcurveMode::All).unwrap();
            ensure(connected.class == all.class, || {
                format!("{k} {d:?}: connected {}, all {}", connected.class, all.class)
            })?;
            ensure(
                reference_verdict(k, &d, true) == reference_verdict(k, &d, false),
                || format!("{k} {d:?}: reference verdicts differ"),
            )?;
            vectors += 1;
        }
    }
    Ok(format!("{vectors} vectors, identical verdicts"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("rule/oracle equivalence", rule_oracle_equivalence),
        ("polarization independence", polarization_independence),
        ("stable locus is the zero vector", stable_locus_is_zero),
        ("graded-object collapse", graded_object_collapse),
        ("Jacobian type table", jacobian_table),
        ("phi family", phi_family),
        ("ingestion fixtures", ingestion),
        ("end-to-end report", end_to_end),
        ("disconnected-oracle audit", disconnected_audit),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failures == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
