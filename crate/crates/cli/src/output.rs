use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex;
use qboson_alcove::fock::Partition;
use serde_json::{Map, Number, Value};

use crate::config::Format;

pub const OUT_DIR_VAR: &str = "QBOSON_OUT_DIR";

/// JSON number with 17 significant digits; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Number::from_str(&format!("{x:.16e}")).map(Value::Number).unwrap_or(Value::Null)
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn complex(z: Complex<f64>) -> Value {
    Value::Array(vec![num(z.re), num(z.im)])
}

pub fn partition(p: &Partition) -> Value {
    Value::Array(p.parts().iter().map(|&x| Value::from(x)).collect())
}

/// Text form used in CSV cells.
pub fn cell(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn partition_cell(p: &Partition) -> String {
    p.parts().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn vector_cell(xs: &[f64]) -> String {
    xs.iter().map(|&x| cell(x)).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// A residual and the tolerance it must not exceed.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.value <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub params: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn check(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        self.checks.push(Check { name: name.into(), value, tolerance });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> Value {
        let mut residuals = Map::new();
        let mut tolerances = Map::new();
        for c in &self.checks {
            residuals.insert(c.name.clone(), num(c.value));
            tolerances.insert(c.name.clone(), num(c.tolerance));
        }
        let mut top = Map::new();
        top.insert("command".into(), Value::from(self.command));
        top.insert("params".into(), self.params.clone());
        top.insert("results".into(), self.results.clone());
        top.insert("residuals".into(), Value::Object(residuals));
        top.insert("tolerances".into(), Value::Object(tolerances));
        top.insert("pass".into(), Value::Bool(self.pass()));
        Value::Object(top)
    }

    pub fn json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn csv_string(table: &Table) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    String::from_utf8(bytes).map_err(io::Error::other)
}

fn csv_path(base: &Path, table: &str, single: bool) -> PathBuf {
    if single {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    base.with_file_name(format!("{stem}_{table}.csv"))
}

/// Writes the report to `output`, to the directory in `QBOSON_OUT_DIR`, or to stdout.
/// Returns the files written.
pub fn emit(report: &Report, format: Format, output: Option<&Path>) -> io::Result<Vec<PathBuf>> {
    let ext = match format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    let target = match output {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os(OUT_DIR_VAR)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(format!("{}.{ext}", report.command))),
    };
    let Some(target) = target else {
        let mut out = io::stdout().lock();
        match format {
            Format::Json => out.write_all(report.json_string().as_bytes())?,
            Format::Csv => {
                for (i, t) in report.tables.iter().enumerate() {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    out.write_all(csv_string(t)?.as_bytes())?;
                }
            }
        }
        return Ok(Vec::new());
    };
    if let Some(dir) = target.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    match format {
        Format::Json => {
            fs::write(&target, report.json_string())?;
            Ok(vec![target])
        }
        Format::Csv => {
            let single = report.tables.len() == 1;
            let mut written = Vec::new();
            for t in &report.tables {
                let path = csv_path(&target, &t.name, single);
                fs::write(&path, csv_string(t)?)?;
                written.push(path);
            }
            Ok(written)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(num(-2.0).to_string(), "-2.0000000000000000e+0");
        assert_eq!(num(f64::NAN), Value::Null);
    }

    #[test]
    fn digits_round_trip() {
        for x in [std::f64::consts::PI, 1e-300, 6.02e23, -0.3] {
            let v: f64 = num(x).as_f64().unwrap();
            assert_eq!(v, x);
        }
    }

    #[test]
    fn nan_fails_a_check() {
        let c = Check { name: "x".into(), value: f64::NAN, tolerance: 1.0 };
        assert!(!c.passed());
    }

    #[test]
    fn csv_has_header() {
        let mut t = Table::new("t", &["a", "b"]);
        t.push(vec!["1".into(), "2 3".into()]);
        assert_eq!(csv_string(&t).unwrap(), "a,b\n1,2 3\n");
    }

    #[test]
    fn csv_names_per_table() {
        let base = Path::new("/tmp/x/gram.csv");
        assert_eq!(csv_path(base, "matrix", false), Path::new("/tmp/x/gram_matrix.csv"));
        assert_eq!(csv_path(base, "matrix", true), base);
    }
}
