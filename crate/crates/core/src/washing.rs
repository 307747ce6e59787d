//! The bundled smart-washing-machine controller and its sensor scaling.
//!
//! Two inputs, one output: dirtiness 0-30 (pressure-sensed), saturation
//! time 0-10 minutes (optically sensed via wash-water opacity), wash time
//! 0-15 minutes. Three terms per input, five output terms, the complete
//! 3x3 rule matrix, and the physical output ranges used by paper-mode
//! defuzzification.

use crate::defuzz::{self, DefuzzMode, TermRanges};
use crate::dsl::{ControllerSpec, OutputRanges, VariableDecl};
use crate::error::FuzzyError;
use crate::inference::TermStrengths;
use crate::membership::MembershipFunction;
use crate::rule::{Clause, Connective, Rule};
use crate::variable::{LinguisticVariable, Term, VarRole};

pub const DIRTINESS_MAX: f64 = 30.0;
pub const SATURATION_MAX_MIN: f64 = 10.0;
pub const WASH_TIME_MAX_MIN: f64 = 15.0;

/// Samples used by centroid-mode defuzzification throughout the crate.
pub const CENTROID_SAMPLES: usize = 1001;

fn tri(a: f64, b: f64, c: f64) -> MembershipFunction {
    MembershipFunction::triangular(a, b, c).expect("static breakpoints are monotone")
}

fn term(name: &str, mf: MembershipFunction) -> Term {
    Term {
        name: name.into(),
        membership: mf,
    }
}

/// Builds the bundled controller.
///
/// The input partitions are the unique triangular Ruspini partitions over
/// their universes (degrees sum to one everywhere); output supports match
/// the physical ranges table, with apexes at the support midpoints and
/// shoulders at the universe edges. Saturation keeps `small`/`large`
/// aliases so documents can use either vocabulary.
pub fn build_washing_controller() -> ControllerSpec {
    let dirtiness = LinguisticVariable::new(
        "dirtiness",
        VarRole::Input,
        0.0,
        DIRTINESS_MAX,
        None,
        vec![
            term("low", tri(0.0, 0.0, 15.0)),
            term("medium", tri(0.0, 15.0, 30.0)),
            term("high", tri(15.0, 30.0, 30.0)),
        ],
    )
    .expect("bundled dirtiness variable is well-formed");

    let saturation = LinguisticVariable::new(
        "saturation_time",
        VarRole::Input,
        0.0,
        SATURATION_MAX_MIN,
        Some("min".into()),
        vec![
            term("low", tri(0.0, 0.0, 5.0)),
            term("medium", tri(0.0, 5.0, 10.0)),
            term("high", tri(5.0, 10.0, 10.0)),
        ],
    )
    .expect("bundled saturation variable is well-formed");

    let wash_time = LinguisticVariable::new(
        "wash_time",
        VarRole::Output,
        0.0,
        WASH_TIME_MAX_MIN,
        Some("min".into()),
        vec![
            term("very_low", tri(0.0, 0.0, 4.0)),
            term("low", tri(0.0, 4.0, 8.0)),
            term("medium", tri(4.0, 7.5, 11.0)),
            term("high", tri(7.0, 11.0, 15.0)),
            term("very_high", tri(11.0, 15.0, 15.0)),
        ],
    )
    .expect("bundled wash_time variable is well-formed");

    // The rule matrix, row by saturation level, column by dirtiness level.
    let matrix = [
        (
            "low",
            [("low", "very_low"), ("medium", "low"), ("high", "medium")],
        ),
        (
            "medium",
            [("low", "low"), ("medium", "medium"), ("high", "high")],
        ),
        (
            "high",
            [("low", "medium"), ("medium", "high"), ("high", "very_high")],
        ),
    ];
    let mut rules = Vec::new();
    for (sat_term, row) in matrix {
        for (dirt_term, wash_term) in row {
            rules.push(
                Rule::new(
                    vec![
                        Clause::new("dirtiness", dirt_term),
                        Clause::new("saturation_time", sat_term),
                    ],
                    Connective::And,
                    Clause::new("wash_time", wash_term),
                )
                .expect("bundled rules are non-empty"),
            );
        }
    }

    let mut ranges = TermRanges::new();
    ranges.insert("very_low", 0.0, 4.0);
    ranges.insert("low", 0.0, 8.0);
    ranges.insert("medium", 4.0, 11.0);
    ranges.insert("high", 7.0, 15.0);
    ranges.insert("very_high", 11.0, 15.0);

    ControllerSpec::new(
        "washing_machine",
        vec![
            VariableDecl::plain(dirtiness),
            VariableDecl {
                variable: saturation,
                aliases: vec![
                    ("small".into(), "low".into()),
                    ("large".into(), "high".into()),
                ],
            },
            VariableDecl::plain(wash_time),
        ],
        rules,
        Some(OutputRanges {
            variable: "wash_time".into(),
            ranges,
        }),
    )
}

/// The bundled controller with its spec built once, for evaluation loops.
#[derive(Debug, Clone)]
pub struct WashingController {
    spec: ControllerSpec,
}

impl WashingController {
    pub fn new() -> Self {
        WashingController {
            spec: build_washing_controller(),
        }
    }

    pub fn spec(&self) -> &ControllerSpec {
        &self.spec
    }

    /// End-to-end wash-time decision. Inputs are clamped into their
    /// universes; the bundled rule base covers the whole input rectangle,
    /// so a silent rule base here is an internal invariant violation.
    pub fn wash_time(
        &self,
        dirtiness: f64,
        saturation_minutes: f64,
        mode: DefuzzMode,
    ) -> WashDecision {
        let decision = self
            .spec
            .evaluate(
                &[
                    ("dirtiness".to_string(), dirtiness),
                    ("saturation_time".to_string(), saturation_minutes),
                ],
                mode,
                CENTROID_SAMPLES,
            )
            .expect("bundled controller covers every input pair");
        WashDecision {
            wash_time: decision.value,
            dominant_term: decision.dominant_term,
            fired: decision.fired,
            mode,
        }
    }
}

impl Default for WashingController {
    fn default() -> Self {
        WashingController::new()
    }
}

/// Convenience entry point building the controller per call.
pub fn wash_time(dirtiness: f64, saturation_minutes: f64, mode: DefuzzMode) -> WashDecision {
    WashingController::new().wash_time(dirtiness, saturation_minutes, mode)
}

/// One computed wash-time decision.
#[derive(Debug, Clone, PartialEq)]
pub struct WashDecision {
    /// Minutes within the output universe, unrounded; presentation layers
    /// round for display.
    pub wash_time: f64,
    pub fired: TermStrengths,
    pub dominant_term: String,
    pub mode: DefuzzMode,
}

/// How raw sensor readings scale onto the controller's input universes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorCalibration {
    /// Fraction of the final opacity treated as "saturated", in (0, 1).
    pub opacity_asymptote_fraction: f64,
    /// Pressure counts mapping linearly onto dirtiness 0 and 30.
    pub pressure_min: f64,
    pub pressure_max: f64,
}

impl SensorCalibration {
    pub fn new(
        opacity_asymptote_fraction: f64,
        pressure_min: f64,
        pressure_max: f64,
    ) -> Result<Self, FuzzyError> {
        let cal = SensorCalibration {
            opacity_asymptote_fraction,
            pressure_min,
            pressure_max,
        };
        cal.validate()?;
        Ok(cal)
    }

    pub fn validate(&self) -> Result<(), FuzzyError> {
        let fraction = self.opacity_asymptote_fraction;
        if fraction <= 0.0 || fraction >= 1.0 || !fraction.is_finite() {
            return Err(FuzzyError::Config(format!(
                "opacity asymptote fraction must lie in (0, 1), got {}",
                self.opacity_asymptote_fraction
            )));
        }
        if !self.pressure_min.is_finite()
            || !self.pressure_max.is_finite()
            || self.pressure_min >= self.pressure_max
        {
            return Err(FuzzyError::Config(format!(
                "pressure span [{}, {}] must satisfy min < max",
                self.pressure_min, self.pressure_max
            )));
        }
        Ok(())
    }
}

impl Default for SensorCalibration {
    fn default() -> Self {
        SensorCalibration {
            opacity_asymptote_fraction: 0.95,
            pressure_min: 0.0,
            pressure_max: 1023.0,
        }
    }
}

/// Linear map from pressure counts onto dirtiness 0-30, clamped.
pub fn pressure_to_dirtiness(counts: f64, cal: &SensorCalibration) -> f64 {
    let fraction = (counts - cal.pressure_min) / (cal.pressure_max - cal.pressure_min);
    (fraction * DIRTINESS_MAX).clamp(0.0, DIRTINESS_MAX)
}

/// First time (minutes) at which the opacity series reaches the calibrated
/// fraction of its final value, linearly interpolated between samples.
///
/// A series that never gets opaque (final opacity zero) never saturates and
/// reports the maximal saturation time by convention. The result is clamped
/// to the saturation universe.
pub fn opacity_to_saturation(
    series: &[(f64, f64)],
    cal: &SensorCalibration,
) -> Result<f64, FuzzyError> {
    let crossing = saturation_crossing(series, cal.opacity_asymptote_fraction)?;
    Ok(crossing
        .unwrap_or(SATURATION_MAX_MIN)
        .clamp(0.0, SATURATION_MAX_MIN))
}

/// The raw threshold crossing behind [`opacity_to_saturation`], `None` when
/// the series never reaches `fraction` of its final opacity.
pub fn saturation_crossing(
    series: &[(f64, f64)],
    fraction: f64,
) -> Result<Option<f64>, FuzzyError> {
    if series.is_empty() {
        return Err(FuzzyError::Input("opacity series is empty".into()));
    }
    for pair in series.windows(2) {
        if pair[1].0 <= pair[0].0 {
            return Err(FuzzyError::Input(
                "opacity series times must be strictly increasing".into(),
            ));
        }
    }
    if series.iter().any(|(t, o)| !t.is_finite() || !o.is_finite()) {
        return Err(FuzzyError::Input("opacity series must be finite".into()));
    }

    let final_opacity = series[series.len() - 1].1;
    if final_opacity <= 0.0 {
        return Ok(None);
    }
    let threshold = fraction * final_opacity;
    let mut prev = series[0];
    if prev.1 >= threshold {
        return Ok(Some(prev.0));
    }
    for &(t, o) in &series[1..] {
        if o >= threshold {
            // prev.1 < threshold <= o, so the segment rises through it.
            let fraction_along = (threshold - prev.1) / (o - prev.1);
            return Ok(Some(prev.0 + fraction_along * (t - prev.0)));
        }
        prev = (t, o);
    }
    Ok(None)
}

/// Paper-mode defuzzification against the bundled physical ranges.
pub fn defuzzify_with_bundled_ranges(strengths: &TermStrengths) -> Result<f64, FuzzyError> {
    let spec = build_washing_controller();
    let ranges = spec.output_ranges.expect("bundled spec declares ranges");
    defuzz::defuzzify_paper_range(&ranges.ranges, strengths)
}
