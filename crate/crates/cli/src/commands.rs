//! The five subcommands.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use fuzzctl_core::dsl::{parse_document, validate, ControllerSpec, Diagnostic};
use fuzzctl_core::sim::{compare_baseline, run_cycle, CycleReport, LoadProfile, ResourceParams};
use fuzzctl_core::washing::{self, SensorCalibration};
use fuzzctl_core::{evaluate_rule, Connective, DefuzzMode};

use crate::{CheckArgs, CliError, EvalArgs, ExplainArgs, SimulateArgs, SweepArgs};

const SPEC_ENV: &str = "FUZZCTL_SPEC";

/// Resolves the document to use: positional path, then `--spec`, then
/// `$FUZZCTL_SPEC`, then the bundled washing-machine controller.
fn resolve_source(
    positional: Option<&Path>,
    flag: Option<&Path>,
) -> Result<Option<PathBuf>, CliError> {
    match (positional, flag) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "pass the controller either positionally or with --spec, not both".into(),
        )),
        (Some(path), None) | (None, Some(path)) => Ok(Some(path.to_path_buf())),
        (None, None) => Ok(std::env::var_os(SPEC_ENV).map(PathBuf::from)),
    }
}

/// Loads and parses the selected document, returning its validation
/// diagnostics alongside. The bundled controller loads when no document is
/// selected and carries no diagnostics.
fn load_document(
    positional: Option<&Path>,
    flag: Option<&Path>,
) -> Result<(ControllerSpec, Vec<Diagnostic>), CliError> {
    let Some(path) = resolve_source(positional, flag)? else {
        return Ok((washing::build_washing_controller(), Vec::new()));
    };
    let source = fs::read_to_string(&path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let spec = parse_document(&source).map_err(CliError::Diagnostics)?;
    let diags = validate(&spec);
    Ok((spec, diags))
}

/// Like [`load_document`] but fails on validation errors, for commands that
/// need a usable controller. Warnings pass silently.
fn load_spec(positional: Option<&Path>, flag: Option<&Path>) -> Result<ControllerSpec, CliError> {
    let (spec, diags) = load_document(positional, flag)?;
    if diags.iter().any(Diagnostic::is_error) {
        return Err(CliError::Diagnostics(diags));
    }
    Ok(spec)
}

/// Checks that `--set` covers the declared inputs exactly once each; any
/// mismatch is a usage error with the full expected list.
fn check_assignments(spec: &ControllerSpec, set: &[(String, f64)]) -> Result<(), CliError> {
    let inputs: Vec<&str> = spec.input_variables().map(|d| d.variable.name()).collect();
    let usage = || {
        format!(
            "expected one --set NAME=VALUE per input: {}",
            inputs.join(", ")
        )
    };
    for (name, _) in set {
        if !inputs.iter().any(|i| i.eq_ignore_ascii_case(name)) {
            return Err(CliError::Usage(format!(
                "unknown input `{name}`; {}",
                usage()
            )));
        }
    }
    for input in &inputs {
        let count = set
            .iter()
            .filter(|(name, _)| input.eq_ignore_ascii_case(name))
            .count();
        if count == 0 {
            return Err(CliError::Usage(format!(
                "missing --set for input `{input}`; {}",
                usage()
            )));
        }
        if count > 1 {
            return Err(CliError::Usage(format!(
                "input `{input}` assigned more than once"
            )));
        }
    }
    Ok(())
}

pub fn eval(global_spec: Option<&Path>, args: &EvalArgs) -> Result<(), CliError> {
    let spec = load_spec(args.spec_path.as_deref(), global_spec)?;
    check_assignments(&spec, &args.set)?;
    let decision = spec.evaluate(&args.set, args.mode.into(), washing::CENTROID_SAMPLES)?;

    let output = spec
        .output_variable()
        .expect("validated spec has an output");
    let unit = output.unit().map(|u| format!(" {u}")).unwrap_or_default();
    println!(
        "{} = {:.2}{unit} ({})",
        output.name(),
        decision.value,
        decision.dominant_term
    );
    let width = decision
        .fired
        .strengths
        .iter()
        .map(|(name, _)| name.len())
        .max()
        .unwrap_or(0);
    for (term, strength) in &decision.fired.strengths {
        println!("  {term:<width$}  {strength:.2}");
    }
    Ok(())
}

pub fn explain(global_spec: Option<&Path>, args: &ExplainArgs) -> Result<(), CliError> {
    let spec = load_spec(args.spec_path.as_deref(), global_spec)?;
    check_assignments(&spec, &args.set)?;
    let inputs = spec.fuzzify_inputs(&args.set)?;

    let mut fired = Vec::new();
    for rule in &spec.rules {
        let strength = evaluate_rule(rule, &inputs)?;
        if strength > 0.0 {
            fired.push((rule, strength));
        }
    }
    // Stable sort: ties keep rulebase order.
    fired.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());

    if fired.is_empty() {
        println!("no rules fired");
        return Ok(());
    }
    for (rule, strength) in fired {
        let joiner = match rule.connective {
            Connective::And => " & ",
            Connective::Or => " | ",
        };
        let terms = rule
            .antecedents
            .iter()
            .map(|c| c.term.clone())
            .collect::<Vec<_>>()
            .join(joiner);
        let degrees = rule
            .antecedents
            .iter()
            .map(|c| {
                let degree = inputs
                    .iter()
                    .find(|f| f.variable.eq_ignore_ascii_case(&c.variable))
                    .and_then(|f| f.degree(&c.term))
                    .expect("evaluate_rule resolved this clause");
                format!("{degree:.2}")
            })
            .collect::<Vec<_>>()
            .join(joiner);
        println!(
            "{terms} \u{2192} {} @ {strength:.2} (degrees {degrees})",
            rule.consequent.term
        );
    }
    Ok(())
}

pub fn check(global_spec: Option<&Path>, args: &CheckArgs) -> Result<(), CliError> {
    let (spec, diags) = load_document(args.spec_path.as_deref(), global_spec)?;
    for d in &diags {
        println!("{d}");
    }
    if diags.iter().any(Diagnostic::is_error) {
        return Err(CliError::Input("controller failed validation".into()));
    }
    println!(
        "OK: {} variables, {} rules, {} warnings",
        spec.variables.len(),
        spec.rules.len(),
        diags.len()
    );
    Ok(())
}

pub fn sweep(global_spec: Option<&Path>, args: &SweepArgs) -> Result<(), CliError> {
    let spec = load_spec(args.spec_path.as_deref(), global_spec)?;
    let inputs: Vec<_> = spec.input_variables().collect();
    if inputs.is_empty() {
        return Err(CliError::Input(
            "controller declares no input variables to sweep".into(),
        ));
    }
    let counts: Vec<usize> = match &args.grid {
        Some(grid) => {
            if grid.0.len() != inputs.len() {
                return Err(CliError::Usage(format!(
                    "--grid needs {} dimension(s) for this controller, got {}",
                    inputs.len(),
                    grid.0.len()
                )));
            }
            grid.0.clone()
        }
        None => vec![101; inputs.len()],
    };

    let mut writer: BufWriter<Box<dyn Write>> = match &args.out {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            BufWriter::new(Box::new(file))
        }
        None => BufWriter::new(Box::new(io::stdout().lock())),
    };
    let mode: DefuzzMode = args.mode.into();
    write_surface(&spec, &counts, mode, &mut writer)
        .map_err(|e| CliError::Input(format!("write failed: {e}")))?;
    writer
        .flush()
        .map_err(|e| CliError::Input(format!("write failed: {e}")))?;
    Ok(())
}

/// Row-major sweep: the first declared input is the slowest axis. Inputs
/// print with 6 decimals, matching the output precision.
fn write_surface(
    spec: &ControllerSpec,
    counts: &[usize],
    mode: DefuzzMode,
    writer: &mut impl Write,
) -> io::Result<()> {
    let inputs: Vec<_> = spec.input_variables().collect();
    let output = spec.output_variable().expect("validated spec");
    let header = inputs
        .iter()
        .map(|d| d.variable.name())
        .chain([output.name()])
        .collect::<Vec<_>>()
        .join(",");
    writeln!(writer, "{header}")?;

    let total: usize = counts.iter().product();
    let mut assignments: Vec<(String, f64)> = inputs
        .iter()
        .map(|d| (d.variable.name().to_string(), 0.0))
        .collect();
    for index in 0..total {
        let mut rest = index;
        // Decode the odometer with the last input fastest.
        for (slot, (decl, n)) in assignments.iter_mut().zip(inputs.iter().zip(counts)).rev() {
            let pick = rest % n;
            rest /= n;
            let (lo, hi) = decl.variable.universe();
            slot.1 = lo + (hi - lo) * (pick as f64 / (n - 1) as f64);
        }
        let decision = spec
            .evaluate(&assignments, mode, washing::CENTROID_SAMPLES)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e.to_string()))?;
        let row = assignments
            .iter()
            .map(|(_, x)| format!("{x:.6}"))
            .chain([format!("{:.6}", decision.value)])
            .collect::<Vec<_>>()
            .join(",");
        writeln!(writer, "{row}")?;
    }
    Ok(())
}

pub fn simulate(global_spec: Option<&Path>, args: &SimulateArgs) -> Result<(), CliError> {
    let spec = load_spec(args.spec_path.as_deref(), global_spec)?;

    let cal = SensorCalibration::new(args.opacity_fraction, args.pressure_min, args.pressure_max)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let pressure = args.pressure.unwrap_or_else(|| {
        cal.pressure_min
            + (args.dirt / washing::DIRTINESS_MAX) * (cal.pressure_max - cal.pressure_min)
    });
    let load = LoadProfile {
        initial_dirt: args.dirt,
        dirt_release_rate: args.k,
        opacity_gain: args.opacity_gain,
        pressure_reading: pressure,
    };
    load.validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let params = ResourceParams {
        clean_threshold: args.clean_threshold,
        max_reruns: args.max_reruns,
        fill_volume_l: args.fill_volume,
        agitation_power_w: args.power,
        probe_minutes: args.probe_minutes,
        probe_dt_minutes: args.probe_dt,
    };
    params
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mode: DefuzzMode = args.mode.into();

    match args.baseline {
        None => {
            let report = run_cycle(&spec, &load, &cal, mode, &params)?;
            print_report(&report, args.csv);
        }
        Some(minutes) => {
            if minutes <= 0.0 || !minutes.is_finite() {
                return Err(CliError::Usage(format!(
                    "--baseline minutes must be positive, got {minutes}"
                )));
            }
            let cmp = compare_baseline(&spec, &load, &cal, mode, &params, minutes)?;
            if args.csv {
                println!("{}", cmp.flc.csv_row());
                println!("{}", cmp.baseline.csv_row());
            } else {
                println!("=== fuzzy controller ({mode} mode) ===");
                println!("{}", cmp.flc);
                println!();
                println!("=== fixed timer ({minutes:.2} min) ===");
                println!("{}", cmp.baseline);
                println!();
                println!("=== deltas (fuzzy - fixed) ===");
                println!("time   {:+.2} min", cmp.delta_minutes);
                println!("water  {:+.2} L", cmp.delta_water_l);
                println!("energy {:+.2} Wh", cmp.delta_energy_wh);
                println!("final dirt {:+.4}", cmp.delta_final_dirt);
            }
        }
    }
    Ok(())
}

fn print_report(report: &CycleReport, csv: bool) {
    if csv {
        println!("{}", report.csv_row());
    } else {
        println!("{report}");
    }
}
