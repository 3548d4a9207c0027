use serde::{Deserialize, Serialize};

use crate::curve_model::{FiberGraph, KodairaType, Polarization};

use super::oracle::evaluate;
use super::{
    classify_by_rule, LocalModel, MultiDegree, SheafClass, StabilityClass, StabilityError,
    SubcurveMode,
};

pub const DEFAULT_SEARCH_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratificationOptions {
    pub bound: u32,
    /// Largest admissible box size `(2 * bound + 1)^N`.
    pub cap: u128,
    pub mode: SubcurveMode,
}

impl StratificationOptions {
    pub fn new(bound: u32) -> Self {
        StratificationOptions {
            bound,
            cap: DEFAULT_SEARCH_CAP,
            mode: SubcurveMode::Connected,
        }
    }

    pub fn with_mode(mut self, mode: SubcurveMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub stable: usize,
    pub strictly_semistable: usize,
    pub unstable: usize,
}

impl VerdictCounts {
    fn bump(&mut self, c: StabilityClass) {
        match c {
            StabilityClass::Stable => self.stable += 1,
            StabilityClass::StrictlySemistable => self.strictly_semistable += 1,
            StabilityClass::Unstable => self.unstable += 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictLists {
    pub stable: Vec<MultiDegree>,
    pub strictly_semistable: Vec<MultiDegree>,
    pub unstable: Vec<MultiDegree>,
}

impl VerdictLists {
    fn push(&mut self, c: StabilityClass, d: MultiDegree) {
        match c {
            StabilityClass::Stable => self.stable.push(d),
            StabilityClass::StrictlySemistable => self.strictly_semistable.push(d),
            StabilityClass::Unstable => self.unstable.push(d),
        }
    }

    pub fn get(&self, c: StabilityClass) -> &[MultiDegree] {
        match c {
            StabilityClass::Stable => &self.stable,
            StabilityClass::StrictlySemistable => &self.strictly_semistable,
            StabilityClass::Unstable => &self.unstable,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub degrees: MultiDegree,
    pub rule: StabilityClass,
    pub oracle: StabilityClass,
}

/// Both classifiers over every degree-0 multidegree in a box. Lists are in
/// lexicographic order of the vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratificationReport {
    pub fiber: KodairaType,
    pub bound: u32,
    pub polarization: Vec<u32>,
    pub mode: SubcurveMode,
    pub vectors_examined: usize,
    pub rule_counts: VerdictCounts,
    pub oracle_counts: VerdictCounts,
    pub rule_strata: VerdictLists,
    pub oracle_strata: VerdictLists,
    pub disagreements: Vec<Disagreement>,
}

/// Runs the rule and the oracle over all `d` with `|d_i| <= bound` and
/// `Σ d_i = 0`.
pub fn enumerate_stratification(
    g: &FiberGraph,
    pol: &Polarization,
    opts: &StratificationOptions,
) -> Result<StratificationReport, StabilityError> {
    if opts.bound == 0 {
        return Err(StabilityError::ZeroBound);
    }
    if !g.is_reducible() {
        return Err(StabilityError::Irreducible(g.kodaira));
    }
    pol.check_against(g)?;
    let n = g.component_count();
    let side = 2 * opts.bound as u128 + 1;
    let required = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(side));
    match required {
        Some(r) if r <= opts.cap => {}
        other => {
            return Err(StabilityError::SearchSpaceTooLarge {
                required: other.unwrap_or(u128::MAX),
                cap: opts.cap,
            })
        }
    }

    let mut base = LocalModel::for_class(g, &SheafClass::LineBundle(MultiDegree::zero(n)))?;
    let mut report = StratificationReport {
        fiber: g.kodaira,
        bound: opts.bound,
        polarization: pol.weights.clone(),
        mode: opts.mode,
        vectors_examined: 0,
        rule_counts: VerdictCounts::default(),
        oracle_counts: VerdictCounts::default(),
        rule_strata: VerdictLists::default(),
        oracle_strata: VerdictLists::default(),
        disagreements: Vec::new(),
    };
    for d in BoxVectors::new(n, opts.bound as i64) {
        let degrees = MultiDegree(d);
        let rule = classify_by_rule(g, &degrees)?.class;
        base.set_degrees(degrees.as_slice());
        let (oracle, _) = evaluate(&base, pol, opts.mode);
        report.vectors_examined += 1;
        report.rule_counts.bump(rule);
        report.oracle_counts.bump(oracle);
        if rule != oracle {
            report.disagreements.push(Disagreement {
                degrees: degrees.clone(),
                rule,
                oracle,
            });
        }
        report.rule_strata.push(rule, degrees.clone());
        report.oracle_strata.push(oracle, degrees);
    }
    Ok(report)
}

/// Integer vectors in `[-bound, bound]^n` summing to zero, lexicographically.
struct BoxVectors {
    bound: i64,
    head: Vec<i64>,
    done: bool,
}

impl BoxVectors {
    fn new(n: usize, bound: i64) -> Self {
        BoxVectors {
            bound,
            head: vec![-bound; n.saturating_sub(1)],
            done: n == 0,
        }
    }

    fn advance(&mut self) {
        for slot in self.head.iter_mut().rev() {
            if *slot < self.bound {
                *slot += 1;
                return;
            }
            *slot = -self.bound;
        }
        self.done = true;
    }
}

impl Iterator for BoxVectors {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        while !self.done {
            let last = -self.head.iter().sum::<i64>();
            let candidate = (last.abs() <= self.bound).then(|| {
                let mut v = self.head.clone();
                v.push(last);
                v
            });
            self.advance();
            if candidate.is_some() {
                return candidate;
            }
        }
        None
    }
}
