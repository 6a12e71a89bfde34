use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_elastoscat"))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], config: &Path, out: &Path) -> Output {
    bin().args(args).arg("--config").arg(config).arg("--out").arg(out).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const SMALL_INVERSE: &str = r#"mode = "reconstruct"

[media]
omega = 8.0
interior = { lambda = 2.0, mu = 3.0, rho = 1.0 }
exterior = { lambda = 1.0, mu = 1.0, rho = 1.0 }

[geometry]
shape = "peanut"

[inverse]
n = 16
m = 2
max_iter = 3
illuminations = 1
noise_delta = 0.02
"#;

#[test]
fn malformed_toml_reports_the_line() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "bad.toml", "mode = \"reconstruct\"\n[media\nomega = 8.0\n");
    let o = run(&["reconstruct"], &cfg, tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn semantic_errors_name_field_and_line() {
    let tmp = tempfile::tempdir().unwrap();
    let text = SMALL_INVERSE.replace("m = 2", "m = 2\ndecay = 1.5");
    let o = run(&["reconstruct"], &write(tmp.path(), "c.toml", &text), tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("inverse.decay (line 14)"), "{}", stderr(&o));

    let text = SMALL_INVERSE.replace("mu = 1.0", "mu = -1.0");
    let o = run(&["reconstruct"], &write(tmp.path(), "c.toml", &text), tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("media.exterior (line 6)"), "{}", stderr(&o));

    let text = SMALL_INVERSE.replace("n = 16", "n = 16\nsteps = 4");
    let o = run(&["reconstruct"], &write(tmp.path(), "c.toml", &text), tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("steps"), "{}", stderr(&o));
}

#[test]
fn source_outside_the_boundary_is_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(configs().join("verify_peanut_combined.toml"))
        .unwrap()
        .replace("z_i = [0.0, 0.2]", "z_i = [3.0, 0.2]");
    let o = run(&["verify-forward"], &write(tmp.path(), "c.toml", &text), tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("geometry.z_i"), "{}", stderr(&o));
}

#[test]
fn mode_must_match_the_command() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["verify-forward"], &write(tmp.path(), "c.toml", SMALL_INVERSE), tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("mode (line 1)"), "{}", stderr(&o));
}

#[test]
fn radius_collapse_exits_with_three() {
    // the single-illumination apple run loses positivity in iteration 19
    let tmp = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(configs().join("reconstruct_apple_l1.toml"))
        .unwrap()
        .replace("max_iter = 18", "max_iter = 40");
    let o = run(&["reconstruct"], &write(tmp.path(), "c.toml", &text), tmp.path());
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("radius collapsed"));
}

#[test]
fn outputs_carry_the_config_hash() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.toml", SMALL_INVERSE);
    let out = tmp.path().join("out");
    let o = run(&["reconstruct", "--seed", "3"], &cfg, &out);
    assert!(o.status.success(), "{}", stderr(&o));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    let hash = summary["config_sha256"].as_str().unwrap().to_owned();
    assert_eq!(hash.len(), 64);
    assert_eq!(summary["seed"], 3);
    assert_eq!(summary["iterations"], 3);
    let text = std::fs::read_to_string(out.join("summary.json")).unwrap();
    assert!(text.find("\"version\"").unwrap() < text.find("\"config_sha256\"").unwrap());
    assert!(text.find("\"config_sha256\"").unwrap() < text.find("\"mode\"").unwrap());
    for name in ["trajectory.csv", "curves.csv"] {
        let t = std::fs::read_to_string(out.join(name)).unwrap();
        let first = t.lines().next().unwrap();
        assert_eq!(first, format!("# elastoscat {} config-sha256 {hash}", env!("CARGO_PKG_VERSION")));
    }
    let curves = std::fs::read_to_string(out.join("curves.csv")).unwrap();
    assert_eq!(curves.lines().count(), 2 + 256);

    // a different seed is part of the hash
    let out2 = tmp.path().join("out2");
    assert!(run(&["reconstruct", "--seed", "4"], &cfg, &out2).status.success());
    let s2: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out2.join("summary.json")).unwrap()).unwrap();
    assert_ne!(s2["config_sha256"], summary["config_sha256"]);
}

#[test]
fn verify_forward_writes_one_table_per_representation() {
    let tmp = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(configs().join("verify_peanut_combined.toml"))
        .unwrap()
        .replace("n_list = [8, 16, 32, 64]", "n_list = [8, 16]")
        .replace("representations = [\"combined\"]", "representations = [\"combined\", \"direct\"]");
    let out = tmp.path().join("out");
    let o = run(&["verify-forward"], &write(tmp.path(), "c.toml", &text), &out);
    assert!(o.status.success(), "{}", stderr(&o));
    for rep in ["combined", "direct"] {
        let conv = std::fs::read_to_string(out.join(format!("convergence_peanut_{rep}.csv"))).unwrap();
        let lines: Vec<&str> = conv.lines().collect();
        assert!(lines[0].starts_with("# elastoscat "));
        assert_eq!(lines[1], "n,sup_error,reduction");
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("8,") && lines[2].ends_with(','));
        let ff = std::fs::read_to_string(out.join(format!("farfield_peanut_{rep}.csv"))).unwrap();
        // 2 grids x 4 directions x 2 components
        assert_eq!(ff.lines().count(), 2 + 16);
    }
}

#[test]
fn csv_only_output_skips_the_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let text = format!("{SMALL_INVERSE}\n[output]\nformats = [\"csv\"]\n");
    let out = tmp.path().join("out");
    assert!(run(&["reconstruct"], &write(tmp.path(), "c.toml", &text), &out).status.success());
    assert!(out.join("trajectory.csv").exists() && !out.join("summary.json").exists());
}
