use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chiral-vacuum"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn data_rows(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(str::to_string)
        .collect()
}

fn header(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .find(|l| !l.starts_with('#'))
        .unwrap()
        .to_string()
}

#[test]
fn cavity_defaults_reproduce_london_estimate() {
    let out = run(&["cavity", "--thermal.temperature", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 11);
    let total: Vec<&str> = rows[10].split(',').collect();
    assert_eq!(total[0], "total");
    let cols: Vec<String> = header(&out).split(',').map(str::to_string).collect();
    let idx = cols.iter().position(|c| c == "london_T0_meV").unwrap();
    let mev: f64 = total[idx].parse().unwrap();
    assert!(((mev + 0.06) / 0.06).abs() < 0.1, "{mev}");
}

#[test]
fn selectivity_grid_has_123_rows() {
    let out = run(&[
        "selectivity",
        "--sweep.delta_e_mev",
        "-100:5:100",
        "--thermal.temperatures",
        "200,300,400",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 123);
    assert_eq!(header(&out), "delta_e_meV,temperature_K,p_chi");
    assert!(rows.iter().all(|r| r.split(',').count() == 3));
}

#[test]
fn tst_adds_columns() {
    let out = run(&["tst", "--sweep.delta_e_mev", "53", "--thermal.temperatures", "300"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        header(&out),
        "delta_e_meV,temperature_K,p_chi,e_a_eV,delta_omega_eV,p_chi_tst"
    );
    let row: Vec<f64> = data_rows(&out)[0].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(row[2], row[5]);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# half-space run\nmaterial.kappa = 0.4\nsweep.z_points = 3\n").unwrap();
    let path = cfg.to_str().unwrap();
    let file_only = run(&["pasteur", "--config", path]);
    let text = String::from_utf8_lossy(&file_only.stdout).to_string();
    assert!(text.contains("# config: material.kappa = 0.4\n"));
    let flagged = run(&["pasteur", "--config", path, "--material.kappa", "0.2"]);
    let text = String::from_utf8_lossy(&flagged.stdout).to_string();
    assert!(text.contains("# config: material.kappa = 0.2\n"));
    assert_eq!(data_rows(&flagged).len(), 3);
}

#[test]
fn unknown_key_in_file_names_key_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "material.kappa = 0.4\n\nmaterial.kapa = 0.1\n").unwrap();
    let out = run(&["pasteur", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("material.kapa") && err.contains(":3"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["cavity", "--cavity.veff_nm3", "abc"]).status.code(), Some(2));
    assert_eq!(run(&["selectivity", "--thermal.temperatures", "0"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    // a starved quadrature budget is a per-row physics failure
    let out = run(&[
        "pasteur",
        "--material.kappa",
        "0.4",
        "--sweep.z_points",
        "2",
        "--quadrature.max_subdivisions",
        "10",
        "--quadrature.rel_tol",
        "1e-15",
        "--quadrature.abs_tol",
        "1e-300",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("# failed row"));
    assert_eq!(data_rows(&out).len(), 2);
}

#[test]
fn output_is_deterministic_and_thread_independent() {
    let args = ["pasteur", "--material.kappa", "0.4", "--sweep.z_points", "12"];
    let one = bin().args(args).env("CHIRAL_VACUUM_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("CHIRAL_VACUUM_THREADS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let bad = bin().args(args).env("CHIRAL_VACUUM_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn json_and_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("debye.json");
    let out = run(&[
        "debye",
        "--output.format",
        "json",
        "--output.path",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["command"], "debye");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 3);
    let per: f64 = doc["rows"][0][1].as_f64().unwrap();
    assert!(((per.abs() - 0.92) / 0.92).abs() < 0.02);
    assert_eq!(doc["units"][1], "meV");
}

#[test]
fn header_declares_every_unit() {
    for cmd in ["cavity", "debye", "selectivity", "tst"] {
        let out = run(&[cmd]);
        let text = String::from_utf8_lossy(&out.stdout).to_string();
        let units = text.lines().find(|l| l.starts_with("# units: ")).unwrap();
        let n_units = units.trim_start_matches("# units: ").split(',').count();
        assert_eq!(n_units, header(&out).split(',').count(), "{cmd}");
    }
}
