use std::path::PathBuf;
use std::process::{Command, Output};

fn negdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negdim")).args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv(o: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r.records().map(|x| x.unwrap().iter().map(str::to_string).collect()).collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name} in {header:?}"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("negdim-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn table1_exact_column() {
    let o = negdim(&["table1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (h, rows) = csv(&o);
    let c = column(&h, "exact");
    let exact: Vec<String> = rows.iter().map(|r| format!("{:.4}", r[c].parse::<f64>().unwrap())).collect();
    assert!(exact.contains(&"2.2214".to_string()), "{exact:?}");
    assert!(exact.contains(&"6.2832".to_string()), "{exact:?}");
    assert_eq!(*h.last().unwrap(), "abs_tol");
}

#[test]
fn spectral_flow_midpoint() {
    let o = negdim(&["spectral-flow", "--df", "4", "--l", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (h, rows) = csv(&o);
    let (s, d) = (column(&h, "s"), column(&h, "D_plus"));
    let row = rows.iter().find(|r| r[s].parse::<f64>().unwrap() == 1.0).expect("row at s = 1");
    assert!((row[d].parse::<f64>().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn tadpole_pole_exits_2() {
    let o = negdim(&["tadpole", "--dim", "2", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Gamma(n - D/2) = Gamma(0)"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn tadpole_negative_dimension() {
    let o = negdim(&["tadpole", "--dim", "-1.5", "--n", "1", "--m2", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (h, rows) = csv(&o);
    let v: f64 = rows[0][column(&h, "scalar_re")].parse().unwrap();
    assert!(v.is_finite() && v > 0.0);
}

#[test]
fn exit_codes() {
    assert_eq!(negdim(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(negdim(&[]).status.code(), Some(64));
    assert_eq!(negdim(&["tadpole", "--dim", "x", "--n", "1"]).status.code(), Some(65));
    assert_eq!(negdim(&["boxdim", "--trials", "10"]).status.code(), Some(65));
    assert_eq!(negdim(&["cosmo-run", "--params", "/nonexistent/params.json"]).status.code(), Some(74));
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"lamda": 1}"#).unwrap();
    assert_eq!(negdim(&["cosmo-run", "--params", bad.to_str().unwrap()]).status.code(), Some(65));
    assert_eq!(negdim(&["--help"]).status.code(), Some(0));
}

#[test]
fn numbers_have_17_significant_digits() {
    let o = negdim(&["weyl", "--kind", "gauss", "--dim", "-1.5"]);
    let (h, rows) = csv(&o);
    let v = &rows[0][column(&h, "value")];
    let mantissa = v.split('e').next().unwrap().replace(['-', '.'], "");
    assert_eq!(mantissa.len(), 17, "{v}");
}

#[test]
fn out_writes_manifest() {
    let path = scratch("flow.csv");
    let o = negdim(&["spectral-flow", "--df", "4", "--l", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("s,"));
    let mut m = path.as_os_str().to_owned();
    m.push(".manifest.json");
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(PathBuf::from(m)).unwrap()).unwrap();
    assert_eq!(m["command"], "spectral-flow");
    assert_eq!(m["flags"]["df"], "4");
    assert_eq!(m["seed"], 0);
    assert_eq!(m["tolerance"]["rel_tol"], 1e-11);
    assert_eq!(m["output_paths"][0], path.to_str().unwrap());
    assert!(m["timestamp_unix"].as_u64().unwrap() > 0);
}

#[test]
fn boxdim_is_reproducible() {
    let a = negdim(&["boxdim", "--trials", "20000", "--seed", "7"]);
    let b = negdim(&["boxdim", "--trials", "20000", "--seed", "7"]);
    let c = negdim(&["boxdim", "--trials", "20000", "--seed", "8"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let (h, rows) = csv(&a);
    assert_eq!(rows.len(), 9);
    let slope: f64 = rows[0][column(&h, "ln_slope")].parse().unwrap();
    assert!((slope + 1.0).abs() < 0.3, "{slope}");
}

#[test]
fn ndim_solve_bubble() {
    let o = negdim(&["ndim-solve", "--dim", "3", "--powers", "1,1", "--masses2", "0.01,0.02", "--scales2", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["solutions"].as_array().unwrap().len(), 8);
    assert_eq!(v["constraints"].as_array().unwrap().len(), 3);
    let sum = v["sum_of_convergent"].as_f64().unwrap();
    let b = negdim(&["bubble", "--dim", "3", "--q2", "1", "--m1-2", "0.01", "--m2-2", "0.02"]);
    let (h, rows) = csv(&b);
    let oracle: f64 = rows[0][column(&h, "oracle")].parse().unwrap();
    assert!((sum - oracle).abs() < 1e-10 * oracle.abs());
}

#[test]
fn ndim_solve_from_file() {
    let f = scratch("loop.json");
    std::fs::write(&f, r#"{"powers":[1],"masses2":[1],"scales2":[],"dimension":[-1.5,0]}"#).unwrap();
    let o = negdim(&["ndim-solve", "--input", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!v["solutions"].as_array().unwrap().is_empty());
}

#[test]
fn cosmo_run_with_params() {
    let f = scratch("cosmo.json");
    std::fs::write(&f, r#"{"lambda":0.5}"#).unwrap();
    let o = negdim(&["cosmo-run", "--params", f.to_str().unwrap(), "--t-end", "2", "--dt", "0.01", "--every", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (h, rows) = csv(&o);
    let (a, drift) = (column(&h, "a"), column(&h, "constraint_drift"));
    assert!(rows.len() > 5);
    let a: Vec<f64> = rows.iter().map(|r| r[a].parse().unwrap()).collect();
    assert!(a.windows(2).all(|w| w[1] > w[0]));
    assert!(rows.iter().all(|r| r[drift].parse::<f64>().unwrap() < 1e-6));
}

#[test]
fn cosmo_run_unimplemented_coupling() {
    let f = scratch("coupled.json");
    std::fs::write(&f, r#"{"derivative_coupling":0.1}"#).unwrap();
    let o = negdim(&["cosmo-run", "--params", f.to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn gc_check_agrees() {
    let o = negdim(&["gc-check", "--points", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (h, rows) = csv(&o);
    let c = column(&h, "within_1e-6");
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r[c] == "true"));
}

#[test]
fn schwinger_and_multifractal_grids() {
    let o = negdim(&["schwinger", "--dim", "3", "--points", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(csv(&o).1.len(), 5);
    let o = negdim(&["multifractal", "--dt", "4", "--alpha", "-0.5", "--points", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(csv(&o).1.len(), 5);
}
