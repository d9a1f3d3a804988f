//! File emission: CSV tables, TOML reports, and the run manifest.
//!
//! All numeric table cells use fixed-decimal formatting with six significant
//! digits; report files serialize at full precision. Emission is
//! deterministic, so identical runs produce byte-identical files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use ferroclimb_core::experiments::{Cell, ScenarioResult};
use ferroclimb_core::sim::Trajectory;

use crate::CliError;

/// Fixed-decimal rendering with the given number of significant digits.
pub fn format_sig(value: f64, sig_digits: u32) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    if value == 0.0 {
        return format!("{:.*}", sig_digits.saturating_sub(1) as usize, 0.0);
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (sig_digits as i32 - 1 - magnitude).max(0) as usize;
    format!("{value:.decimals$}")
}

fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

fn cell_text(cell: &Cell) -> String {
    match cell {
        Cell::Num(value) => format_sig(*value, 6),
        Cell::Text(text) => csv_field(text),
        Cell::Bool(flag) => flag.to_string(),
    }
}

/// Render a scenario table as CSV: header row, one record per sweep point.
pub fn scenario_table_csv(result: &ScenarioResult) -> String {
    let mut out = String::new();
    out.push_str(&result.columns.join(","));
    out.push('\n');
    for row in &result.rows {
        let line: Vec<String> = row.iter().map(cell_text).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct FindingsDocument<'a> {
    schema_version: u32,
    scenario: &'a str,
    all_passed: bool,
    finding: &'a [ferroclimb_core::experiments::Finding],
}

/// Render the findings file for a scenario result.
pub fn findings_toml(result: &ScenarioResult) -> Result<String, CliError> {
    to_toml(&FindingsDocument {
        schema_version: crate::config::SCHEMA_VERSION,
        scenario: result.scenario.name(),
        all_passed: result.all_findings_pass(),
        finding: &result.findings,
    })
}

/// Render trajectory samples as CSV.
pub fn trajectory_csv(trajectory: &Trajectory) -> String {
    let mut out = String::from(
        "time_s,patch,x_m,y_m,heading_rad,speed_mps,battery_soc,payload_kg,contact\n",
    );
    for sample in &trajectory.samples {
        let s = &sample.state;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            format_sig(sample.time, 6),
            s.surface_id,
            format_sig(s.x, 6),
            format_sig(s.y, 6),
            format_sig(s.heading, 6),
            format_sig(s.speed, 6),
            format_sig(s.battery_soc, 6),
            format_sig(s.payload, 6),
            sample.contact.name(),
        ));
    }
    out
}

pub fn to_toml<T: Serialize>(value: &T) -> Result<String, CliError> {
    toml::to_string_pretty(value).map_err(|err| CliError::Render(err.to_string()))
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|byte| format!("{byte:02x}")).collect()
}

#[derive(Serialize)]
pub struct OutputRecord {
    pub path: String,
    pub sha256: String,
}

/// Tracks emitted files so the manifest can list them with checksums.
pub struct OutputSet {
    records: Vec<OutputRecord>,
}

impl OutputSet {
    pub fn new() -> Self {
        Self {
            records: Vec::new(),
        }
    }

    pub fn write(&mut self, path: &Path, contents: &str) -> Result<(), CliError> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent).map_err(|source| CliError::Io {
                    context: format!("creating {}", parent.display()),
                    source,
                })?;
            }
        }
        std::fs::write(path, contents).map_err(|source| CliError::Io {
            context: format!("writing {}", path.display()),
            source,
        })?;
        self.records.push(OutputRecord {
            path: path.display().to_string(),
            sha256: sha256_hex(contents.as_bytes()),
        });
        Ok(())
    }

    /// Write the manifest listing all previously emitted files.
    pub fn write_manifest<C: Serialize>(
        self,
        path: &Path,
        command: &str,
        inputs: &BTreeMap<String, String>,
        resolved: &C,
    ) -> Result<(), CliError> {
        #[derive(Serialize)]
        struct Manifest<'a, C: Serialize> {
            schema_version: u32,
            command: &'a str,
            inputs: &'a BTreeMap<String, String>,
            outputs: &'a [OutputRecord],
            resolved: &'a C,
        }
        let text = to_toml(&Manifest {
            schema_version: crate::config::SCHEMA_VERSION,
            command,
            inputs,
            outputs: &self.records,
            resolved,
        })?;
        std::fs::write(path, text).map_err(|source| CliError::Io {
            context: format!("writing {}", path.display()),
            source,
        })
    }
}

/// Manifest path derived from an output file path (`report.toml` ->
/// `report.manifest.toml`).
pub fn manifest_path_for(out: &Path) -> PathBuf {
    out.with_extension("manifest.toml")
}

/// Checksum an input file for the manifest's input listing.
pub fn input_checksum(path: &Path) -> Result<String, CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        context: format!("reading {}", path.display()),
        source,
    })?;
    Ok(sha256_hex(&bytes))
}
