use std::collections::BTreeSet;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use reljac_core::curve_model::{
    CurveError, CurvePart, FiberGraph, FiberSpec, KodairaType, Node, Polarization,
    SingularityKind, Subcurve,
};
use reljac_core::ingest::{describe, scan_points, IngestError, WeierstrassModel, DEFAULT_ROOT_SEARCH_BOUND};
use reljac_core::jacobian::{
    derive_classification, jacobian_type, phi_fibers, relative_report, FiberPoint,
    FibrationDescription, JacobianError,
};
use reljac_core::stability::{
    classify_by_rule, classify_sheaf, enumerate_stratification, graded_object_with,
    oracle_classify_with, Disagreement, GradedObject, MultiDegree, SheafClass, SingularPointKind,
    StabilityClass, StabilityError, StratificationOptions, SubcurveMode, VerdictCounts,
    VerdictLists,
};

use crate::table;
use crate::{
    AuditArgs, ClassArgs, EnumerateArgs, FiberArgs, Format, JacobianArgs, PhiArgs, ReportArgs,
    ScanArgs,
};

pub const EXIT_AUDIT_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_UNSUPPORTED: u8 = 3;

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

fn curve_code(e: &CurveError) -> u8 {
    match e {
        CurveError::Unsupported(_) => EXIT_UNSUPPORTED,
        _ => EXIT_INVALID,
    }
}

fn stability_code(e: &StabilityError) -> u8 {
    match e {
        StabilityError::Curve(c) => curve_code(c),
        _ => EXIT_INVALID,
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        Failure {
            code: curve_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<StabilityError> for Failure {
    fn from(e: StabilityError) -> Self {
        Failure {
            code: stability_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<JacobianError> for Failure {
    fn from(e: JacobianError) -> Self {
        let code = match &e {
            JacobianError::Curve(c) => curve_code(c),
            JacobianError::Stability(s) => stability_code(s),
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<IngestError> for Failure {
    fn from(e: IngestError) -> Self {
        let code = match &e {
            IngestError::NonMinimalModel { .. } | IngestError::Unsupported { .. } => {
                EXIT_UNSUPPORTED
            }
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CommandResult = Result<Output, Failure>;

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output types serialize")
}

fn emit<T: Serialize>(value: &T, format: Format, render: impl FnOnce(&T) -> String) -> Output {
    let stdout = match format {
        Format::Json => json(value),
        Format::Table => render(value),
    };
    Output { stdout, code: 0 }
}

/// Resolves `--fiber` (an existing file wins over shorthand) and
/// `--polarization`.
pub fn load_fiber(args: &FiberArgs) -> Result<(FiberGraph, Polarization), Failure> {
    let path = Path::new(&args.fiber);
    let spec = if path.is_file() {
        FiberSpec::from_path(path)?
    } else {
        FiberSpec::from_type(args.fiber.parse::<KodairaType>()?)
    };
    let (g, mut pol) = spec.resolve()?;
    if let Some(weights) = &args.polarization {
        pol = Polarization::from_signed(weights)?;
        pol.check_against(&g)?;
    }
    Ok((g, pol))
}

#[derive(Serialize)]
pub struct SubcurveSummary {
    pub indices: Vec<usize>,
    pub boundary: u32,
    pub euler_characteristic: i64,
}

#[derive(Serialize)]
pub struct FiberSummary {
    pub fiber: KodairaType,
    pub components: Vec<String>,
    pub intersections: Vec<Vec<u32>>,
    pub singularity: SingularityKind,
    pub nodes: Vec<Node>,
    pub euler_characteristic: i64,
    /// Proper connected subcurves; omitted when there are too many.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcurves: Option<Vec<SubcurveSummary>>,
}

pub fn classify_fiber(args: &FiberArgs, format: Format) -> CommandResult {
    let (g, _) = load_fiber(args)?;
    let subcurves = match g.proper_connected_subcurves() {
        Ok(list) => Some(
            list.iter()
                .map(|d| {
                    Ok(SubcurveSummary {
                        indices: d.indices.clone(),
                        boundary: g.boundary(d)?,
                        euler_characteristic: g.euler_characteristic(CurvePart::Sub(d))?,
                    })
                })
                .collect::<Result<Vec<_>, CurveError>>()?,
        ),
        Err(CurveError::TooManyComponents(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let summary = FiberSummary {
        fiber: g.kodaira,
        components: g.components.iter().map(|c| c.label.clone()).collect(),
        intersections: g.intersections.clone(),
        singularity: g.singularity,
        nodes: g.nodes(),
        euler_characteristic: g.euler_characteristic(CurvePart::Full)?,
        subcurves,
    };
    Ok(emit(&summary, format, table::fiber))
}

fn sheaf_class(g: &FiberGraph, args: &ClassArgs) -> Result<SheafClass, Failure> {
    let degrees = MultiDegree(args.degrees.clone());
    if let Some(node) = args.node {
        return Ok(SheafClass::NodalTorsionFree { node, degrees });
    }
    if args.singular {
        let point = match g.singularity {
            SingularityKind::Cusp => SingularPointKind::Cusp,
            SingularityKind::Tangency => SingularPointKind::Tacnode,
            SingularityKind::TriplePoint => SingularPointKind::Triple,
            _ => {
                return Err(Failure::invalid(format!(
                    "fiber {} has no cusp, tacnode or triple point",
                    g.kodaira
                )))
            }
        };
        return Ok(SheafClass::SingularPointDual { point, degrees });
    }
    Ok(SheafClass::LineBundle(degrees))
}

fn mode(disconnected: bool) -> SubcurveMode {
    if disconnected {
        SubcurveMode::All
    } else {
        SubcurveMode::Connected
    }
}

#[derive(Serialize)]
pub struct StabilityOutput {
    pub class: StabilityClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Subcurve>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_chi: Option<i64>,
    /// Verdict of the multidegree rule, for line bundles on reducible fibers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<StabilityClass>,
    pub fiber: KodairaType,
    pub sheaf: SheafClass,
    pub polarization: Vec<u32>,
    pub mode: SubcurveMode,
}

pub fn check_stability(args: &ClassArgs, format: Format) -> CommandResult {
    let (g, pol) = load_fiber(&args.fiber)?;
    let class = sheaf_class(&g, args)?;
    let mode = mode(args.disconnected);
    let verdict = if g.is_reducible() {
        oracle_classify_with(&g, &pol, &class, mode)?
    } else {
        classify_sheaf(&g, &pol, &class)?
    };
    let rule = match &class {
        SheafClass::LineBundle(d) if g.is_reducible() => Some(classify_by_rule(&g, d)?.class),
        _ => None,
    };
    let out = StabilityOutput {
        class: verdict.class,
        witness: verdict.witness,
        witness_chi: verdict.witness_chi,
        rule,
        fiber: g.kodaira,
        sheaf: class,
        polarization: pol.weights.clone(),
        mode,
    };
    Ok(emit(&out, format, table::stability))
}

fn stratification_options(bound: u32, cap: Option<u128>, disconnected: bool) -> StratificationOptions {
    let opts = StratificationOptions::new(bound).with_mode(mode(disconnected));
    match cap {
        Some(c) => opts.with_cap(c),
        None => opts,
    }
}

pub fn enumerate(args: &EnumerateArgs, format: Format) -> CommandResult {
    let (g, pol) = load_fiber(&args.fiber)?;
    let opts = stratification_options(args.bound, args.cap, args.disconnected);
    let report = enumerate_stratification(&g, &pol, &opts)?;
    Ok(emit(&report, format, table::stratification))
}

#[derive(Serialize)]
pub struct GradedOutput {
    pub fiber: KodairaType,
    pub sheaf: SheafClass,
    pub graded: GradedObject,
}

pub fn graded(args: &ClassArgs, format: Format) -> CommandResult {
    let (g, pol) = load_fiber(&args.fiber)?;
    let class = sheaf_class(&g, args)?;
    let graded = graded_object_with(&g, &pol, &class)?;
    let out = GradedOutput {
        fiber: g.kodaira,
        sheaf: class,
        graded,
    };
    Ok(emit(&out, format, table::graded))
}

pub fn jacobian(args: &JacobianArgs, format: Format) -> CommandResult {
    let (g, _) = load_fiber(&args.fiber)?;
    let classification = if args.derive {
        derive_classification(&g)?
    } else {
        jacobian_type(g.kodaira)
    };
    Ok(emit(&classification, format, |c| c.to_string()))
}

pub fn phi(args: &PhiArgs, format: Format) -> CommandResult {
    let (g, _) = load_fiber(&args.fiber)?;
    let q: FiberPoint = args.q.parse()?;
    let samples = args
        .samples
        .iter()
        .map(|s| s.parse::<FiberPoint>())
        .collect::<Result<Vec<_>, _>>()?;
    let report = phi_fibers(&g, &q, &samples)?;
    Ok(emit(&report, format, table::phi))
}

pub fn report(args: &ReportArgs, format: Format) -> CommandResult {
    let desc = FibrationDescription::from_path(&args.input)?;
    let report = relative_report(&desc)?;
    for e in &report.entries {
        if let Some(err) = &e.error {
            eprintln!("warning: {}: {err}", e.label);
        }
    }
    let mut out = emit(&report, format, |r| r.to_string().trim_end().to_string());
    if report.has_errors() {
        out.code = EXIT_UNSUPPORTED;
    }
    Ok(out)
}

pub fn ingest_scan(args: &ScanArgs, format: Format) -> CommandResult {
    let model = WeierstrassModel::from_path(&args.model)?;
    let points = scan_points(&model, DEFAULT_ROOT_SEARCH_BOUND)?;
    let desc = describe(&points);
    for p in &points {
        if let Err(e) = &p.fiber {
            eprintln!("warning: {e}");
        }
    }
    let code = if points.iter().any(|p| p.fiber.is_err()) {
        EXIT_UNSUPPORTED
    } else {
        0
    };
    let stdout = match (&args.out, format) {
        (Some(path), _) => {
            let text = serde_json::to_string_pretty(&desc).expect("descriptions serialize");
            std::fs::write(path, text + "\n").map_err(|e| {
                Failure::invalid(format!("cannot write {}: {e}", path.display()))
            })?;
            match format {
                Format::Json => String::new(),
                Format::Table => table::scan(&model, &points)?,
            }
        }
        (None, Format::Json) => json(&desc),
        (None, Format::Table) => table::scan(&model, &points)?,
    };
    Ok(Output { stdout, code })
}

#[derive(Serialize)]
pub struct AuditReport {
    /// Vectors where the rule and the oracle disagree.
    pub disagreements: usize,
    pub fiber: KodairaType,
    pub bound: u32,
    pub polarization: Vec<u32>,
    pub vectors_examined: usize,
    pub rule_counts: VerdictCounts,
    pub oracle_counts: VerdictCounts,
    pub seed: u64,
    pub polarization_samples: u32,
    /// Vector verdicts that change under some sampled polarization.
    pub polarization_mismatches: usize,
    /// Vector verdicts that change when disconnected subcurves are tested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disconnected_mismatches: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<Disagreement>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.disagreements == 0
            && self.polarization_mismatches == 0
            && self.disconnected_mismatches.unwrap_or(0) == 0
    }
}

/// Number of vectors whose verdict differs between two stratifications of
/// the same box.
fn verdict_changes(a: &VerdictLists, b: &VerdictLists) -> usize {
    [
        StabilityClass::Stable,
        StabilityClass::StrictlySemistable,
        StabilityClass::Unstable,
    ]
    .into_iter()
    .map(|c| {
        let other: BTreeSet<&MultiDegree> = b.get(c).iter().collect();
        a.get(c).iter().filter(|d| !other.contains(d)).count()
    })
    .sum()
}

pub fn oracle_audit(args: &AuditArgs, format: Format) -> CommandResult {
    let (g, pol) = load_fiber(&args.fiber)?;
    let opts = stratification_options(args.bound, args.cap, false);
    let base = enumerate_stratification(&g, &pol, &opts)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut polarization_mismatches = 0;
    for _ in 0..args.samples {
        let weights = (0..g.component_count())
            .map(|_| rng.random_range(1..=10u32))
            .collect();
        let sampled = Polarization::new(weights)?;
        let other = enumerate_stratification(&g, &sampled, &opts)?;
        polarization_mismatches += verdict_changes(&base.oracle_strata, &other.oracle_strata);
    }
    let disconnected_mismatches = if args.disconnected {
        let all = enumerate_stratification(&g, &pol, &opts.with_mode(SubcurveMode::All))?;
        Some(verdict_changes(&base.oracle_strata, &all.oracle_strata))
    } else {
        None
    };
    let report = AuditReport {
        disagreements: base.disagreements.len(),
        fiber: g.kodaira,
        bound: args.bound,
        polarization: pol.weights.clone(),
        vectors_examined: base.vectors_examined,
        rule_counts: base.rule_counts.clone(),
        oracle_counts: base.oracle_counts.clone(),
        seed: args.seed,
        polarization_samples: args.samples,
        polarization_mismatches,
        disconnected_mismatches,
        examples: base.disagreements.iter().take(10).cloned().collect(),
    };
    let mut out = emit(&report, format, table::audit);
    if !report.passed() {
        out.code = EXIT_AUDIT_FAILED;
    }
    Ok(out)
}
