//! End-to-end tests of the `ebubble` binary: flag handling, config-file
//! merging, output formats, and exit codes.

use std::process::{Command, Output};

fn ebubble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ebubble"))
        .args(args)
        .env_remove("EBUBBLE_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

/// Pulls the numeric value of a `key,value` CSV line.
fn csv_value(stdout: &str, key: &str) -> f64 {
    stdout
        .lines()
        .find_map(|line| line.strip_prefix(&format!("{key},")))
        .unwrap_or_else(|| panic!("no `{key}` row in:\n{stdout}"))
        .parse()
        .unwrap()
}

#[test]
fn radius_reference_output() {
    let output = ebubble(&[
        "radius",
        "--gamma",
        "4",
        "--gamma-unit",
        "erg_per_cm2",
        "--model",
        "c1",
        "--constants",
        "precise",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = stdout_of(&output);
    let a0 = csv_value(&stdout, "a0_angstrom");
    assert!((a0 - 7.020_181_938_417_76).abs() < 1e-9, "a0 = {a0}");
    // Zero-point and surface terms split the total evenly at equilibrium.
    let zp = csv_value(&stdout, "zero_point_eV");
    let surf = csv_value(&stdout, "surface_eV");
    let total = csv_value(&stdout, "total_eV");
    assert!((zp - surf).abs() < 1e-12 * surf);
    assert!((total - 0.309_233_255_523_943_9).abs() < 1e-9);
}

#[test]
fn radius_with_infinite_well_matches_corrected_estimate() {
    let output = ebubble(&["radius", "--gamma", "0.0004", "--model", "infinite_well"]);
    assert_eq!(output.status.code(), Some(0));
    let a0 = csv_value(&stdout_of(&output), "a0_angstrom");
    assert!((a0 - 18.606_547_890_432_015).abs() < 1e-9, "a0 = {a0}");
}

#[test]
fn paper_rounded_profile_selectable() {
    let output = ebubble(&[
        "radius",
        "--gamma",
        "4",
        "--gamma-unit",
        "erg_per_cm2",
        "--constants",
        "paper_rounded",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let a0 = csv_value(&stdout_of(&output), "a0_angstrom");
    assert!((a0 - 7.106_121_542_359_42).abs() < 1e-9, "a0 = {a0}");
}

#[test]
fn critical_exits_zero_when_routes_agree() {
    let output = ebubble(&["critical", "--gamma", "0.004"]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = stdout_of(&output);
    let gap_p = csv_value(&stdout, "relative_gap_pressure");
    let gap_r = csv_value(&stdout, "relative_gap_radius");
    assert!(gap_p < 1e-8 && gap_r < 1e-8);
    let p_c = csv_value(&stdout, "p_critical_closed_bar");
    assert!((p_c - -60.966_197_021_579_38).abs() < 1e-6);
    // Reference values appear only in labelled comparison footnotes.
    assert!(stdout.contains("# comparison:"));
    assert!(stdout.contains("-1.6 bar"));
}

#[test]
fn missing_gamma_names_the_flag_and_exits_2() {
    let output = ebubble(&["radius"]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("--gamma"), "stderr: {stderr}");
    assert!(stdout_of(&output).is_empty());
}

#[test]
fn validation_reports_every_problem() {
    let output = ebubble(&[
        "radius",
        "--gamma-unit",
        "bar",
        "--model",
        "quantum",
        "--format",
        "yaml",
    ]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = stderr_of(&output);
    let error_lines = stderr.lines().filter(|l| l.starts_with("error:")).count();
    assert_eq!(error_lines, 4, "stderr: {stderr}");
}

#[test]
fn malformed_grid_exits_2() {
    let output = ebubble(&[
        "curve",
        "--radius-min",
        "20",
        "--radius-max",
        "5",
        "--radius-count",
        "10",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("min < max"));
}

#[test]
fn sweep_with_two_gammas_exits_2() {
    let output = ebubble(&["sweep", "--gammas", "0.001,0.002"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("3 distinct"));
}

#[test]
fn estimate_gamma_rejects_nonpositive_spacing() {
    let output = ebubble(&[
        "estimate-gamma",
        "--binding-energy",
        "2.5e-4",
        "--spacing",
        "0",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn estimate_gamma_prints_both_unit_systems() {
    let output = ebubble(&[
        "estimate-gamma",
        "--binding-energy",
        "2.5e-4",
        "--spacing",
        "1",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = stdout_of(&output);
    let cgs = csv_value(&stdout, "gamma_erg_per_cm2");
    let si = csv_value(&stdout, "gamma_N_per_m");
    assert!((cgs - 4.005_441_585).abs() < 1e-9);
    assert!((si - 4.005_441_585e-3).abs() < 1e-12);
}

#[test]
fn unwritable_output_path_exits_4() {
    let output = ebubble(&[
        "radius",
        "--gamma",
        "0.004",
        "--output",
        "/nonexistent_dir_ebubble/out.csv",
    ]);
    assert_eq!(output.status.code(), Some(4));
    assert!(stderr_of(&output).contains("cannot write"));
}

#[test]
fn config_file_supplies_values_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("ebubble.cfg");
    std::fs::write(
        &config,
        "# defaults for this machine\ngamma = 4\ngamma_unit = erg_per_cm2\nmodel = c1\n",
    )
    .unwrap();

    // Values come from the file alone.
    let from_file = Command::new(env!("CARGO_BIN_EXE_ebubble"))
        .args(["radius"])
        .env("EBUBBLE_CONFIG", &config)
        .output()
        .unwrap();
    assert_eq!(from_file.status.code(), Some(0));
    let a0 = csv_value(&stdout_of(&from_file), "a0_angstrom");
    assert!((a0 - 7.020_181_938_417_76).abs() < 1e-9);

    // A flag overrides the file's gamma; the echoed config shows the winner.
    let overridden = Command::new(env!("CARGO_BIN_EXE_ebubble"))
        .args(["radius", "--gamma", "8"])
        .env("EBUBBLE_CONFIG", &config)
        .output()
        .unwrap();
    assert_eq!(overridden.status.code(), Some(0));
    let stdout = stdout_of(&overridden);
    assert!(
        stdout.contains("gamma=8.0000000000000000e0"),
        "echo line: {stdout}"
    );
    let a0_overridden = csv_value(&stdout, "a0_angstrom");
    // gamma x2 shrinks a0 by 2^(1/4).
    assert!((a0_overridden - a0 / 2f64.powf(0.25)).abs() < 1e-6);
}

#[test]
fn broken_config_file_reports_lines_and_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.cfg");
    std::fs::write(&config, "gamma == 0.004\nnot_a_key = 1\n").unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_ebubble"))
        .args(["radius", "--gamma", "0.004"])
        .env("EBUBBLE_CONFIG", &config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = stderr_of(&output);
    assert!(
        stderr.contains("line 1") || stderr.contains("line 2"),
        "{stderr}"
    );
}

#[test]
fn config_echo_appears_exactly_once() {
    for args in [
        vec!["radius", "--gamma", "0.004"],
        vec!["curve"],
        vec!["sweep", "--gammas", "0.001,0.002,0.004"],
    ] {
        let output = ebubble(&args);
        let stdout = stdout_of(&output);
        let echoes = stdout
            .lines()
            .filter(|l| l.starts_with("# config:"))
            .count();
        assert_eq!(echoes, 1, "args {args:?}:\n{stdout}");
    }
}

#[test]
fn curve_default_family_has_six_blocks() {
    let output = ebubble(&["curve"]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = stdout_of(&output);
    let blocks = stdout
        .lines()
        .filter(|l| l.starts_with("# pressure_bar = "))
        .count();
    assert_eq!(blocks, 6);
    // Pressures ascend and straddle the default-family critical value.
    let pressures: Vec<f64> = stdout
        .lines()
        .filter_map(|l| l.strip_prefix("# pressure_bar = "))
        .map(|v| v.parse().unwrap())
        .collect();
    assert!(pressures.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(pressures[0], -2.3);
    assert_eq!(pressures[5], 0.0);
    assert!(
        stdout.contains("radius_angstrom,U_total_eV,U_zp_eV,U_surf_eV,U_pv_eV"),
        "column header missing:\n{stdout}"
    );
}

#[test]
fn curve_json_structure() {
    let output = ebubble(&[
        "curve",
        "--gamma",
        "0.004",
        "--model",
        "c1",
        "--pressure",
        "-10,0",
        "--radius-min",
        "4",
        "--radius-max",
        "20",
        "--radius-count",
        "33",
        "--format",
        "json",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["command"], "curve");
    let curves = value["curves"].as_array().unwrap();
    assert_eq!(curves.len(), 2);
    assert_eq!(curves[0]["pressure_bar"], -10.0);
    assert_eq!(curves[0]["radius_angstrom"].as_array().unwrap().len(), 33);
    assert_eq!(curves[0]["U_total_eV"].as_array().unwrap().len(), 33);
    assert_eq!(value["config"]["model"], "c1");
}

#[test]
fn sweep_emits_exponent_lines() {
    let output = ebubble(&[
        "sweep",
        "--gamma-min",
        "1e-4",
        "--gamma-max",
        "1e-2",
        "--gamma-count",
        "7",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = stdout_of(&output);
    let closed: f64 = stdout
        .lines()
        .find_map(|l| l.strip_prefix("# exponent_closed = "))
        .unwrap()
        .parse()
        .unwrap();
    let numeric: f64 = stdout
        .lines()
        .find_map(|l| l.strip_prefix("# exponent_numeric = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((closed - 1.25).abs() < 1e-10);
    assert!((numeric - 1.25).abs() < 1e-6);
    // One data row per gamma.
    let data_rows = stdout
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("gamma_"))
        .count();
    assert_eq!(data_rows, 7);
}

#[test]
fn custom_model_requires_coefficient() {
    let missing = ebubble(&["radius", "--gamma", "0.004", "--model", "custom"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr_of(&missing).contains("--coefficient"));

    let bad = ebubble(&[
        "radius",
        "--gamma",
        "0.004",
        "--model",
        "custom",
        "--coefficient",
        "-1",
    ]);
    assert_eq!(bad.status.code(), Some(2));

    let good = ebubble(&[
        "radius",
        "--gamma",
        "0.004",
        "--model",
        "custom",
        "--coefficient",
        "4.9348022005446790",
    ]);
    assert_eq!(good.status.code(), Some(0));
    // Matches the built-in infinite-well model.
    let reference = ebubble(&["radius", "--gamma", "0.004", "--model", "infinite_well"]);
    assert_eq!(
        csv_value(&stdout_of(&good), "a0_angstrom"),
        csv_value(&stdout_of(&reference), "a0_angstrom")
    );
}

#[test]
fn output_file_contents_match_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("radius.csv");
    let to_file = ebubble(&[
        "radius",
        "--gamma",
        "0.004",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(to_file.status.code(), Some(0));
    assert!(stdout_of(&to_file).is_empty());
    let file_bytes = std::fs::read_to_string(&path).unwrap();

    let to_stdout = ebubble(&["radius", "--gamma", "0.004"]);
    // Only the echoed output target differs.
    let normalize = |s: &str| s.replace(&format!("output={}", path.display()), "output=-");
    assert_eq!(normalize(&file_bytes), stdout_of(&to_stdout));
}
