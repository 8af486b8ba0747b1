//! On-disk formats: design files, run configuration, excitation lists and
//! the run manifest. All of these parse untrusted input and must fail with
//! diagnostics rather than panicking.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constants::{DEFAULT_FREQUENCY, DEFAULT_Z0, RADIUS_FRACTION, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::geometry::{ArrayDesign, Dipole, Excitation};
use crate::optimizer::DeConfig;

/// One element of a design file: feed position in millimeters, length in
/// wavelengths at the file's frequency.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignElement {
    pub position_mm: f64,
    pub length_lambda: f64,
}

/// One excitation entry: linear amplitude and phase in degrees.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExcitationEntry {
    pub amplitude: f64,
    pub phase_deg: f64,
}

/// JSON design document. Wire radius is lambda/200 by convention.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    /// Hz
    pub frequency: f64,
    pub elements: Vec<DesignElement>,
    pub excitations: Vec<ExcitationEntry>,
}

impl DesignFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::from_json(&text)
    }

    /// Validate and convert into an [`ArrayDesign`].
    pub fn to_design(&self) -> Result<ArrayDesign> {
        if self.elements.is_empty() {
            return Err(Error::Geometry("design file has no elements".into()));
        }
        if !(self.frequency.is_finite() && self.frequency > 0.0) {
            return Err(Error::Geometry(format!(
                "frequency must be > 0 Hz, got {}",
                self.frequency
            )));
        }
        let lambda = SPEED_OF_LIGHT / self.frequency;
        let radius = lambda * RADIUS_FRACTION;
        let elements = self
            .elements
            .iter()
            .map(|e| Dipole::new(e.position_mm * 1e-3, e.length_lambda * lambda, radius))
            .collect::<Result<Vec<_>>>()?;
        let excitations = self
            .excitations
            .iter()
            .map(|e| Excitation::new(e.amplitude, e.phase_deg.to_radians()))
            .collect::<Result<Vec<_>>>()?;
        ArrayDesign::new(self.frequency, elements, excitations)
    }

    /// Snapshot an existing design (positions back to millimeters, lengths
    /// back to wavelengths).
    pub fn from_design(design: &ArrayDesign) -> Self {
        let lambda = design.wavelength();
        Self {
            frequency: design.frequency(),
            elements: design
                .elements()
                .iter()
                .map(|el| DesignElement {
                    position_mm: el.position_x * 1e3,
                    length_lambda: el.length / lambda,
                })
                .collect(),
            excitations: design
                .excitations()
                .iter()
                .map(|e| ExcitationEntry {
                    amplitude: e.amplitude(),
                    phase_deg: e.phase().to_degrees(),
                })
                .collect(),
        }
    }
}

/// Run configuration; unknown keys are rejected to catch typos.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Hz
    pub frequency: f64,
    /// Feed-line reference impedance, Ohm.
    pub z0: f64,
    pub de: DeConfig,
    /// Inclusive element-count range for `sweep`.
    pub n_range: [usize; 2],
    pub output_dir: PathBuf,
    /// Azimuth-cut sampling step, degrees.
    pub pattern_step_deg: f64,
    /// Seeds per element count in `sweep`; seeds are `seed, seed+1, ...`.
    pub sweep_seeds: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            frequency: DEFAULT_FREQUENCY,
            z0: DEFAULT_Z0,
            de: DeConfig::default(),
            n_range: [2, 10],
            output_dir: PathBuf::from("out"),
            pattern_step_deg: 0.5,
            sweep_seeds: 3,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.frequency.is_finite() && self.frequency > 0.0) {
            return Err(Error::Config(format!(
                "frequency must be > 0, got {}",
                self.frequency
            )));
        }
        if !(self.z0.is_finite() && self.z0 > 0.0) {
            return Err(Error::Config(format!("z0 must be > 0, got {}", self.z0)));
        }
        if !(self.pattern_step_deg.is_finite() && self.pattern_step_deg > 0.0) {
            return Err(Error::Config(format!(
                "pattern_step_deg must be > 0, got {}",
                self.pattern_step_deg
            )));
        }
        let [lo, hi] = self.n_range;
        if lo < 1 || hi > 16 || lo > hi {
            return Err(Error::Config(format!(
                "n_range [{lo}, {hi}] must satisfy 1 <= lo <= hi <= 16"
            )));
        }
        if self.sweep_seeds == 0 {
            return Err(Error::Config("sweep_seeds must be positive".into()));
        }
        self.de.validate()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Parse an excitation list: one `amplitude phase_deg` pair per line,
/// `#` starts a comment, blank lines skipped. Errors cite the line number.
pub fn parse_excitations(text: &str) -> Result<Vec<Excitation>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let line_no = idx + 1;
        let amp: f64 = parts
            .next()
            .ok_or_else(|| Error::ParseLine {
                line: line_no,
                msg: "missing amplitude".into(),
            })?
            .parse()
            .map_err(|e| Error::ParseLine {
                line: line_no,
                msg: format!("bad amplitude: {e}"),
            })?;
        let phase_deg: f64 = parts
            .next()
            .ok_or_else(|| Error::ParseLine {
                line: line_no,
                msg: "missing phase".into(),
            })?
            .parse()
            .map_err(|e| Error::ParseLine {
                line: line_no,
                msg: format!("bad phase: {e}"),
            })?;
        if let Some(extra) = parts.next() {
            return Err(Error::ParseLine {
                line: line_no,
                msg: format!("unexpected trailing field {extra:?}"),
            });
        }
        out.push(
            Excitation::new(amp, phase_deg.to_radians()).map_err(|e| Error::ParseLine {
                line: line_no,
                msg: e.to_string(),
            })?,
        );
    }
    if out.is_empty() {
        return Err(Error::ParseLine {
            line: 0,
            msg: "no excitation entries found".into(),
        });
    }
    Ok(out)
}

/// Load an excitation file from disk.
pub fn load_excitations(path: &Path) -> Result<Vec<Excitation>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_excitations(&text)
}

/// Audit record written next to every command's outputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    /// SHA-256 of the effective configuration JSON.
    pub config_sha256: String,
    pub seed: u64,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub outputs: Vec<String>,
}

impl Manifest {
    pub fn new(config: &RunConfig, command: &str, outputs: Vec<String>) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(config.to_json().as_bytes());
        Self {
            config_sha256: format!("{:x}", hasher.finalize()),
            seed: config.de.seed,
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            outputs,
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)
                .map_err(|e| Error::io(parent.display().to_string(), e))?;
        }
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text).map_err(|e| Error::io(path.display().to_string(), e))
    }
}
