//! End-to-end tests of the `perilap` binary: exit statuses, artifact files,
//! and byte-level determinism.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_perilap"))
}

fn write_config(dir: &std::path::Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn constants_mode_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"mode":"constants","ns":[1,2],"ss":[0.25,0.5]}"#,
    );
    let out = bin()
        .args(["constants", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("N,s,c_ns,kappa,sigma,gamma\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn sweep_zero_writes_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "z.json",
        r#"{"mode":"sweep-zero","s":0.25,"m":4,"deltas":[0.25,0.125],"k":2}"#,
    );
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    for (threads, path) in [("1", &out_a), ("4", &out_b)] {
        let st = bin()
            .args([
                "sweep-zero",
                "--config",
                cfg.to_str().unwrap(),
                "--output",
                path.to_str().unwrap(),
            ])
            .env("NSOLVE_THREADS", threads)
            .status()
            .unwrap();
        assert_eq!(st.code(), Some(0));
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "output depends on worker count");
    let text = String::from_utf8(a).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "delta,h,m,s,k,lambda,rescaled,reference,abs_err,rel_err"
    );
    // 2 deltas x (2 eigen rows + 1 solution row)
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn solve_mode_writes_solution_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "s.json",
        r#"{"mode":"solve","s":0.5,"n_int":16,"m":2,"rhs":"one"}"#,
    );
    let out = dir.path().join("u.csv");
    let st = bin()
        .args([
            "solve",
            "--config",
            cfg.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "i,x,u");
    assert_eq!(lines.len(), 16); // 15 free nodes
    // positive solution, symmetric about the midpoint
    let u: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert!(u.iter().all(|&v| v > 0.0));
    for i in 0..u.len() {
        let j = u.len() - 1 - i;
        assert!((u[i] - u[j]).abs() <= 1e-10 * u[i].abs());
    }
}

#[test]
fn bad_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    // unknown key
    let cfg = write_config(dir.path(), "bad.json", r#"{"mode":"eigs","nonsense":1}"#);
    let out = bin()
        .args(["eigs", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonsense"));
    // mode mismatch between CLI and config
    let cfg = write_config(
        dir.path(),
        "m.json",
        r#"{"mode":"constants","ns":[1],"ss":[0.5]}"#,
    );
    let out = bin()
        .args(["solve", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // missing config file
    let out = bin()
        .args(["solve", "--config", "/nonexistent/x.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // missing required field, error names mode and field
    let cfg = write_config(dir.path(), "mf.json", r#"{"mode":"sweep-infty","s":0.25,"ms":[64]}"#);
    let out = bin()
        .args(["sweep-infty", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n_int"));
}

#[test]
fn check_mode_reports_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "chk.json",
        r#"{"mode":"check","s":0.25,"n_int":32,"ms":[8,32,64]}"#,
    );
    let out = bin()
        .args(["check", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "delta,ratio,c_delta,pass");
    assert_eq!(lines.len(), 4);
    for l in &lines[1..] {
        assert!(l.ends_with(",true"), "{l}");
    }
}
