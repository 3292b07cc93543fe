//! Output formatting: numbers, JSON, CSV, SVG, run manifests and atomic writes.

pub mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::lattice::ConfigDocument;
use crate::solver::scan::BandTable;

/// Significant digits of every emitted number.
pub const SIGNIFICANT_DIGITS: usize = 12;

pub const BAND_CSV_HEADER: &str =
    "coordinate_eV,s_lower_eV,s_upper_eV,mass_lower_eV,mass_upper_eV,pt_lower_eV,pt_upper_eV,flag";

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits. Non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest text that reads back as `round_sig(x)`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x);
    if r == 0.0 {
        "0".into()
    } else if (1e-4..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(f) = n.as_f64().filter(|_| n.is_f64()) {
                if let Some(r) = serde_json::Number::from_f64(round_sig(f)) {
                    *n = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded, newline terminated.
pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub fn band_csv(table: &BandTable) -> String {
    let mut out = String::with_capacity(64 * (table.rows.len() + 1));
    out.push_str(BAND_CSV_HEADER);
    out.push('\n');
    for r in &table.rows {
        let cells = [
            r.coordinate,
            r.s_lower,
            r.s_upper,
            r.mass_lower,
            r.mass_upper,
            r.pt_lower,
            r.pt_upper,
        ];
        for c in cells {
            out.push_str(&format_number(c));
            out.push(',');
        }
        out.push_str(r.flag.as_str());
        out.push('\n');
    }
    out
}

/// Written next to every output file.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_echo: ConfigDocument,
    pub tool_version: String,
    pub timestamp: String,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, config: ConfigDocument, outputs: Vec<PathBuf>) -> Self {
        Self {
            command: command.into(),
            config_echo: config,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            outputs,
        }
    }
}

/// Manifest path for a primary output file.
pub fn manifest_path(primary: &Path) -> PathBuf {
    let mut name = primary.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    primary.with_file_name(name)
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let mut tmp_name = path.file_name().unwrap_or_default().to_os_string();
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}
