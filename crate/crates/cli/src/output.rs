//! CSV/JSON emission and the run manifest.

use crate::error::CliError;
use negdim::ToleranceConfig;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

/// 17 significant digits, `.` separator.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Tolerance profile as serialized into manifests and JSON outputs.
#[derive(Debug, Clone, Serialize)]
pub struct ToleranceRecord {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_terms: usize,
    pub quad_points: usize,
    pub eps_reg: f64,
}

impl From<&ToleranceConfig> for ToleranceRecord {
    fn from(t: &ToleranceConfig) -> Self {
        ToleranceRecord {
            abs_tol: t.abs_tol,
            rel_tol: t.rel_tol,
            max_terms: t.max_terms,
            quad_points: t.quad_points,
            eps_reg: t.eps_reg,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub flags: BTreeMap<String, String>,
    pub seed: u64,
    pub tolerance: ToleranceRecord,
    pub output_paths: Vec<String>,
    pub timestamp_unix: u64,
}

/// Rows of strings under a header; two tolerance columns are appended to every row.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn to_csv(&self, tol: &ToleranceConfig) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = self.header.clone();
        header.extend(["rel_tol".to_string(), "abs_tol".to_string()]);
        w.write_record(&header)?;
        for r in &self.rows {
            let mut r = r.clone();
            r.extend([num(tol.rel_tol), num(tol.abs_tol)]);
            w.write_record(&r)?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.into_error()))
    }
}

/// Where a command's artifact goes.
pub struct Sink {
    pub out: Option<PathBuf>,
    pub command: String,
    pub flags: BTreeMap<String, String>,
    pub seed: u64,
    pub tol: ToleranceConfig,
}

impl Sink {
    pub fn csv(&self, table: &Table) -> Result<(), CliError> {
        let bytes = table.to_csv(&self.tol)?;
        self.emit(&bytes)
    }

    pub fn json<T: Serialize>(&self, value: &T) -> Result<(), CliError> {
        let mut bytes = serde_json::to_vec_pretty(value)?;
        bytes.push(b'\n');
        self.emit(&bytes)
    }

    fn emit(&self, bytes: &[u8]) -> Result<(), CliError> {
        match &self.out {
            None => {
                std::io::stdout().write_all(bytes)?;
                Ok(())
            }
            Some(path) => {
                std::fs::write(path, bytes)?;
                let manifest = RunManifest {
                    command: self.command.clone(),
                    flags: self.flags.clone(),
                    seed: self.seed,
                    tolerance: (&self.tol).into(),
                    output_paths: vec![path.display().to_string()],
                    timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
                };
                let mut m = serde_json::to_vec_pretty(&manifest)?;
                m.push(b'\n');
                std::fs::write(manifest_path(path), m)?;
                Ok(())
            }
        }
    }
}

/// `<output>.manifest.json`.
pub fn manifest_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// `--key value` / `--key=value` pairs after the subcommand; bare switches map to "true".
pub fn collect_flags(args: &[String]) -> BTreeMap<String, String> {
    let mut flags = BTreeMap::new();
    let mut i = 0;
    while i < args.len() {
        if let Some(key) = args[i].strip_prefix("--") {
            if let Some((k, v)) = key.split_once('=') {
                flags.insert(k.to_string(), v.to_string());
            } else if i + 1 < args.len() && !is_flag(&args[i + 1]) {
                flags.insert(key.to_string(), args[i + 1].clone());
                i += 1;
            } else {
                flags.insert(key.to_string(), "true".to_string());
            }
        }
        i += 1;
    }
    flags
}

fn is_flag(s: &str) -> bool {
    s.starts_with("--")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(2.0), "2.0000000000000000e0");
        assert_eq!(num(core::f64::consts::PI).parse::<f64>().unwrap(), core::f64::consts::PI);
        assert_eq!(num(-1e-300).parse::<f64>().unwrap(), -1e-300);
    }

    #[test]
    fn flags() {
        let a: Vec<String> = ["--df", "4", "--l=1", "--quadrature", "--dim", "-1.5"].iter().map(|s| s.to_string()).collect();
        let f = collect_flags(&a);
        assert_eq!(f["df"], "4");
        assert_eq!(f["l"], "1");
        assert_eq!(f["quadrature"], "true");
        assert_eq!(f["dim"], "-1.5");
    }

    #[test]
    fn manifest_next_to_output() {
        assert_eq!(manifest_path(Path::new("/tmp/a.csv")), PathBuf::from("/tmp/a.csv.manifest.json"));
    }
}
