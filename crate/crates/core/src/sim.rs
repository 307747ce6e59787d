//! Desk-scale closed-loop wash-cycle simulation.
//!
//! The plant is first-order dirt release: within a fill, residual dirt
//! decays exponentially while agitating, transferred dirt raises the
//! wash-water opacity linearly, and energy accrues at the agitation power.
//! A cycle is: fill, idle pressure sensing, a short opacity probe, a wash of
//! the controller's chosen duration, then drain/refill/re-measure re-runs
//! while the load is still above the cleanliness threshold.

use std::fmt;

use crate::defuzz::DefuzzMode;
use crate::dsl::ControllerSpec;
use crate::error::FuzzyError;
use crate::washing::{self, SensorCalibration};

/// Physical stand-in for one laundry load.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadProfile {
    /// Dirt inventory on the clothes, 0-30.
    pub initial_dirt: f64,
    /// First-order dirt release rate, per minute of agitation.
    pub dirt_release_rate: f64,
    /// Opacity units added per unit of dirt transferred into the water.
    pub opacity_gain: f64,
    /// Pressure sensor counts reported during the initial idle phase.
    pub pressure_reading: f64,
}

impl LoadProfile {
    pub fn validate(&self) -> Result<(), FuzzyError> {
        if !(0.0..=washing::DIRTINESS_MAX).contains(&self.initial_dirt) {
            return Err(FuzzyError::Config(format!(
                "initial dirt {} must lie in [0, {}]",
                self.initial_dirt,
                washing::DIRTINESS_MAX
            )));
        }
        if self.dirt_release_rate <= 0.0 || !self.dirt_release_rate.is_finite() {
            return Err(FuzzyError::Config(
                "dirt release rate must be positive".into(),
            ));
        }
        if self.opacity_gain <= 0.0 || !self.opacity_gain.is_finite() {
            return Err(FuzzyError::Config("opacity gain must be positive".into()));
        }
        if !self.pressure_reading.is_finite() {
            return Err(FuzzyError::Config("pressure reading must be finite".into()));
        }
        Ok(())
    }
}

/// A lightly-soiled everyday load.
impl Default for LoadProfile {
    fn default() -> Self {
        LoadProfile {
            initial_dirt: 5.0,
            dirt_release_rate: 0.7,
            opacity_gain: 0.03,
            pressure_reading: 1023.0 * 5.0 / 30.0,
        }
    }
}

/// Appliance resource rates and re-run policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceParams {
    /// Residual dirt at or below this counts as clean.
    pub clean_threshold: f64,
    pub max_reruns: u32,
    pub fill_volume_l: f64,
    pub agitation_power_w: f64,
    pub probe_minutes: f64,
    pub probe_dt_minutes: f64,
}

impl Default for ResourceParams {
    fn default() -> Self {
        ResourceParams {
            clean_threshold: 1.0,
            max_reruns: 3,
            fill_volume_l: 40.0,
            agitation_power_w: 500.0,
            probe_minutes: 3.0,
            probe_dt_minutes: 0.05,
        }
    }
}

impl ResourceParams {
    pub fn validate(&self) -> Result<(), FuzzyError> {
        let positive = [
            ("clean threshold", self.clean_threshold),
            ("fill volume", self.fill_volume_l),
            ("agitation power", self.agitation_power_w),
            ("probe duration", self.probe_minutes),
            ("probe step", self.probe_dt_minutes),
        ];
        for (what, value) in positive {
            if value <= 0.0 || !value.is_finite() {
                return Err(FuzzyError::Config(format!(
                    "{what} must be positive, got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// Simulator state, advanced by [`step`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleState {
    pub residual_dirt: f64,
    pub water_opacity: f64,
    pub elapsed_minutes: f64,
    pub water_used_l: f64,
    pub energy_used_wh: f64,
    pub reruns: u32,
}

impl CycleState {
    pub fn new(initial_dirt: f64) -> Self {
        CycleState {
            residual_dirt: initial_dirt,
            water_opacity: 0.0,
            elapsed_minutes: 0.0,
            water_used_l: 0.0,
            energy_used_wh: 0.0,
            reruns: 0,
        }
    }
}

/// One agitation step of `dt_minutes > 0`.
///
/// Dirt decays as `d * exp(-k dt)` (exactly composable across step sizes),
/// the transfer raises opacity by `opacity_gain * transfer` clamped to 1,
/// and energy accrues at the agitation power.
pub fn step(
    state: &CycleState,
    load: &LoadProfile,
    params: &ResourceParams,
    dt_minutes: f64,
) -> CycleState {
    debug_assert!(dt_minutes > 0.0, "step requires dt > 0");
    let remaining = state.residual_dirt * (-load.dirt_release_rate * dt_minutes).exp();
    let transferred = state.residual_dirt - remaining;
    CycleState {
        residual_dirt: remaining,
        water_opacity: (state.water_opacity + load.opacity_gain * transferred).min(1.0),
        elapsed_minutes: state.elapsed_minutes + dt_minutes,
        water_used_l: state.water_used_l,
        energy_used_wh: state.energy_used_wh + params.agitation_power_w * dt_minutes / 60.0,
        reruns: state.reruns,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseKind {
    Fill,
    Probe,
    Wash,
    Drain,
}

impl fmt::Display for PhaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            PhaseKind::Fill => "fill",
            PhaseKind::Probe => "probe",
            PhaseKind::Wash => "wash",
            PhaseKind::Drain => "drain",
        };
        write!(f, "{label}")
    }
}

/// Resource contributions of one phase; report totals are their sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRecord {
    pub kind: PhaseKind,
    pub minutes: f64,
    pub water_l: f64,
    pub energy_wh: f64,
    pub dirt_removed: f64,
    pub opacity_after: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleReport {
    pub phases: Vec<PhaseRecord>,
    pub total_minutes: f64,
    pub total_water_l: f64,
    pub total_energy_wh: f64,
    pub final_dirt: f64,
    pub reruns: u32,
    pub clean: bool,
}

impl CycleReport {
    /// CSV row in the documented column order:
    /// `total_time,total_water,total_energy,final_dirt,reruns`.
    pub fn csv_row(&self) -> String {
        format!(
            "{:.6},{:.6},{:.6},{:.6},{}",
            self.total_minutes,
            self.total_water_l,
            self.total_energy_wh,
            self.final_dirt,
            self.reruns
        )
    }
}

impl fmt::Display for CycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<7} {:>9} {:>9} {:>11} {:>13}",
            "phase", "minutes", "water_l", "energy_wh", "dirt_removed"
        )?;
        for phase in &self.phases {
            writeln!(
                f,
                "{:<7} {:>9.2} {:>9.2} {:>11.2} {:>13.4}",
                phase.kind.to_string(),
                phase.minutes,
                phase.water_l,
                phase.energy_wh,
                phase.dirt_removed
            )?;
        }
        let removed: f64 = self.phases.iter().map(|p| p.dirt_removed).sum();
        writeln!(
            f,
            "{:<7} {:>9.2} {:>9.2} {:>11.2} {:>13.4}",
            "total", self.total_minutes, self.total_water_l, self.total_energy_wh, removed
        )?;
        write!(
            f,
            "final dirt {:.4}, reruns {}, clean {}",
            self.final_dirt,
            self.reruns,
            if self.clean { "yes" } else { "no" }
        )
    }
}

/// Runs the full closed-loop cycle with the given controller deciding each
/// wash duration.
pub fn run_cycle(
    controller: &ControllerSpec,
    load: &LoadProfile,
    cal: &SensorCalibration,
    mode: DefuzzMode,
    params: &ResourceParams,
) -> Result<CycleReport, FuzzyError> {
    let (in0, in1) = simulation_inputs(controller)?;
    let decide = |dirt_in: f64, sat_in: f64| {
        controller
            .evaluate(
                &[(in0.clone(), dirt_in), (in1.clone(), sat_in)],
                mode,
                washing::CENTROID_SAMPLES,
            )
            .map(|d| d.value)
    };
    run_loop(controller, decide, load, cal, params, params.max_reruns)
}

/// A fixed-timer machine running the same mechanics: one fill, the same
/// probe agitation, a wash of exactly `fixed_minutes`, no re-runs.
pub fn run_fixed_cycle(
    controller: &ControllerSpec,
    load: &LoadProfile,
    cal: &SensorCalibration,
    params: &ResourceParams,
    fixed_minutes: f64,
) -> Result<CycleReport, FuzzyError> {
    if fixed_minutes <= 0.0 || !fixed_minutes.is_finite() {
        return Err(FuzzyError::Config(format!(
            "baseline minutes must be positive, got {fixed_minutes}"
        )));
    }
    run_loop(controller, |_, _| Ok(fixed_minutes), load, cal, params, 0)
}

/// FLC cycle vs fixed-timer baseline, with `flc - baseline` deltas.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineComparison {
    pub flc: CycleReport,
    pub baseline: CycleReport,
    pub delta_minutes: f64,
    pub delta_water_l: f64,
    pub delta_energy_wh: f64,
    pub delta_final_dirt: f64,
}

pub fn compare_baseline(
    controller: &ControllerSpec,
    load: &LoadProfile,
    cal: &SensorCalibration,
    mode: DefuzzMode,
    params: &ResourceParams,
    fixed_minutes: f64,
) -> Result<BaselineComparison, FuzzyError> {
    let flc = run_cycle(controller, load, cal, mode, params)?;
    let baseline = run_fixed_cycle(controller, load, cal, params, fixed_minutes)?;
    Ok(BaselineComparison {
        delta_minutes: flc.total_minutes - baseline.total_minutes,
        delta_water_l: flc.total_water_l - baseline.total_water_l,
        delta_energy_wh: flc.total_energy_wh - baseline.total_energy_wh,
        delta_final_dirt: flc.final_dirt - baseline.final_dirt,
        flc,
        baseline,
    })
}

/// The two input variables the simulator drives: the first is scaled from
/// pressure counts, the second from the opacity saturation time.
fn simulation_inputs(controller: &ControllerSpec) -> Result<(String, String), FuzzyError> {
    let inputs: Vec<_> = controller.input_variables().collect();
    if inputs.len() != 2 {
        return Err(FuzzyError::Config(format!(
            "the simulator needs a two-input controller, `{}` declares {}",
            controller.name,
            inputs.len()
        )));
    }
    if controller.output_variable().is_none() {
        return Err(FuzzyError::Config(
            "controller declares no output variable".into(),
        ));
    }
    Ok((
        inputs[0].variable.name().to_string(),
        inputs[1].variable.name().to_string(),
    ))
}

fn run_loop(
    controller: &ControllerSpec,
    mut decide: impl FnMut(f64, f64) -> Result<f64, FuzzyError>,
    load: &LoadProfile,
    cal: &SensorCalibration,
    params: &ResourceParams,
    max_reruns: u32,
) -> Result<CycleReport, FuzzyError> {
    load.validate()?;
    cal.validate()?;
    params.validate()?;
    let inputs: Vec<_> = controller.input_variables().collect();
    let (dirt_lo, dirt_hi) = inputs
        .first()
        .map(|d| d.variable.universe())
        .unwrap_or((0.0, washing::DIRTINESS_MAX));
    let (sat_lo, sat_hi) = inputs
        .get(1)
        .map(|d| d.variable.universe())
        .unwrap_or((0.0, washing::SATURATION_MAX_MIN));

    let mut state = CycleState::new(load.initial_dirt);
    let mut phases: Vec<PhaseRecord> = Vec::new();
    let mut first_fill = true;

    loop {
        // Fresh water in; the fill itself takes no simulated time.
        state.water_used_l += params.fill_volume_l;
        state.water_opacity = 0.0;
        phases.push(PhaseRecord {
            kind: PhaseKind::Fill,
            minutes: 0.0,
            water_l: params.fill_volume_l,
            energy_wh: 0.0,
            dirt_removed: 0.0,
            opacity_after: 0.0,
        });

        // Idle pressure sensing happens before any agitation. The first
        // fill trusts the load's reported counts; re-measures emulate the
        // sensor from the true residual dirt.
        let counts = if first_fill {
            load.pressure_reading
        } else {
            cal.pressure_min
                + (state.residual_dirt / washing::DIRTINESS_MAX)
                    * (cal.pressure_max - cal.pressure_min)
        };
        let fraction =
            ((counts - cal.pressure_min) / (cal.pressure_max - cal.pressure_min)).clamp(0.0, 1.0);
        let dirt_input = dirt_lo + fraction * (dirt_hi - dirt_lo);
        first_fill = false;

        // Opacity probe: short agitation sampled densely enough to place
        // the saturation crossing.
        let before = state;
        let mut series = vec![(0.0, state.water_opacity)];
        let ratio = params.probe_minutes / params.probe_dt_minutes;
        let steps = if (ratio - ratio.round()).abs() < 1e-9 {
            ratio.round() as usize
        } else {
            ratio.ceil() as usize
        }
        .max(1);
        let mut t = 0.0;
        for i in 1..=steps {
            let target = if i == steps {
                params.probe_minutes
            } else {
                i as f64 * params.probe_dt_minutes
            };
            state = step(&state, load, params, target - t);
            t = target;
            series.push((t, state.water_opacity));
        }
        phases.push(PhaseRecord {
            kind: PhaseKind::Probe,
            minutes: t,
            water_l: 0.0,
            energy_wh: state.energy_used_wh - before.energy_used_wh,
            dirt_removed: before.residual_dirt - state.residual_dirt,
            opacity_after: state.water_opacity,
        });
        let crossing = washing::saturation_crossing(&series, cal.opacity_asymptote_fraction)?;
        let sat_input = crossing.unwrap_or(sat_hi).clamp(sat_lo, sat_hi);

        // The wash itself, at the decided duration.
        let minutes = decide(dirt_input, sat_input)?;
        let before = state;
        if minutes > 0.0 {
            state = step(&state, load, params, minutes);
        }
        phases.push(PhaseRecord {
            kind: PhaseKind::Wash,
            minutes,
            water_l: 0.0,
            energy_wh: state.energy_used_wh - before.energy_used_wh,
            dirt_removed: before.residual_dirt - state.residual_dirt,
            opacity_after: state.water_opacity,
        });

        if state.residual_dirt > params.clean_threshold && state.reruns < max_reruns {
            state.reruns += 1;
            phases.push(PhaseRecord {
                kind: PhaseKind::Drain,
                minutes: 0.0,
                water_l: 0.0,
                energy_wh: 0.0,
                dirt_removed: 0.0,
                opacity_after: state.water_opacity,
            });
        } else {
            break;
        }
    }

    Ok(CycleReport {
        total_minutes: phases.iter().map(|p| p.minutes).sum(),
        total_water_l: phases.iter().map(|p| p.water_l).sum(),
        total_energy_wh: phases.iter().map(|p| p.energy_wh).sum(),
        final_dirt: state.residual_dirt,
        reruns: state.reruns,
        clean: state.residual_dirt <= params.clean_threshold,
        phases,
    })
}
