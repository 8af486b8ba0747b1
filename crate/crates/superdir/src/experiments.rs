//! Scripted reproduction of the headline numbers: the optimized five-element
//! design, the comparison configurations, the per-element input-resistance
//! table and the sweep/pattern CSV exports.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::constants::{floor_db, RADIUS_FRACTION, SPEED_OF_LIGHT};
use crate::em::FarFieldCut;
use crate::error::{Error, Result};
use crate::geometry::{wrap_phase, ArrayDesign, Dipole, Excitation};
use crate::network::{evaluate, ArrayEvaluation, EfficiencyReport};
use crate::optimizer::{ArrayRun, SweepReport};

/// The optimized five-element design: feed positions in millimeters,
/// normalized amplitudes, phases in degrees, lengths in wavelengths.
///
/// Listed with the x-axis oriented so the main beam points along +x
/// (phi = 0); this mirrors the published element order, which keeps every
/// inter-element distance and therefore the whole network picture intact.
pub const OPTIMIZED_POSITIONS_MM: [f64; 5] = [-23.1083, -12.7182, 0.0505, 13.6325, 23.1083];
pub const OPTIMIZED_AMPLITUDES: [f64; 5] = [0.7805, 0.9794, 1.0, 1.0, 0.9821];
pub const OPTIMIZED_PHASES_DEG: [f64; 5] = [-48.95, 159.31, 2.48, -166.94, 46.09];
pub const OPTIMIZED_LENGTHS_LAMBDA: [f64; 5] = [0.481, 0.453, 0.439, 0.444, 0.443];

/// Build the embedded optimized design at the given frequency.
pub fn optimized_design(frequency: f64) -> Result<ArrayDesign> {
    let lambda = SPEED_OF_LIGHT / frequency;
    let radius = lambda * RADIUS_FRACTION;
    let elements = OPTIMIZED_POSITIONS_MM
        .iter()
        .zip(OPTIMIZED_LENGTHS_LAMBDA)
        .map(|(&x_mm, l_lam)| Dipole::new(x_mm * 1e-3, l_lam * lambda, radius))
        .collect::<Result<Vec<_>>>()?;
    let excitations = OPTIMIZED_AMPLITUDES
        .iter()
        .zip(OPTIMIZED_PHASES_DEG)
        .map(|(&a, p)| Excitation::new(a, p.to_radians()))
        .collect::<Result<Vec<_>>>()?;
    ArrayDesign::new(frequency, elements, excitations)
}

/// Scalar summary plus the azimuth cut of the optimized design.
#[derive(Debug, Clone)]
pub struct PaperDesignReport {
    pub evaluation: ArrayEvaluation,
    pub cut: FarFieldCut,
    /// Realized gain at (theta, phi) = (pi/2, 0), dB.
    pub endfire_realized_gain_db: f64,
    pub efficiency: EfficiencyReport,
    /// Driving-point impedances under the design excitation.
    pub active_impedances: Vec<Option<Complex64>>,
    /// Fractional aperture reduction against the half-wavelength-spaced
    /// five-element reference: `1 - aperture / (2 lambda)`.
    pub aperture_reduction: f64,
}

/// Evaluate the embedded design: end-fire scalars plus a `step_deg`-sampled
/// azimuth cut. Deterministic; there is no randomness on this path.
pub fn evaluate_paper_design(frequency: f64, z0: f64, step_deg: f64) -> Result<PaperDesignReport> {
    let design = optimized_design(frequency)?;
    evaluate_design(&design, z0, step_deg)
}

/// Same report for an arbitrary design.
pub fn evaluate_design(
    design: &ArrayDesign,
    z0: f64,
    step_deg: f64,
) -> Result<PaperDesignReport> {
    let evaluation = evaluate(design, z0)?;
    evaluation.impedance().validate()?;
    let cut = evaluation.azimuth_cut(step_deg)?;
    let endfire = evaluation.realized_gain_dbi(std::f64::consts::FRAC_PI_2, 0.0);
    let efficiency = evaluation.efficiency_report();
    let active = evaluation.active_input_impedance()?;
    let lambda = design.wavelength();
    let n = design.len() as f64;
    let reference = (n - 1.0) * 0.5 * lambda;
    let aperture_reduction = 1.0 - design.aperture() / reference;
    Ok(PaperDesignReport {
        evaluation,
        cut,
        endfire_realized_gain_db: endfire,
        efficiency,
        active_impedances: active,
        aperture_reduction,
    })
}

/// Row labels of the comparison table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowLabel {
    /// Optimized positions and currents, all lengths pinned to lambda/2.
    Config1,
    /// Uniform half-wavelength spacing and lengths, optimized currents.
    Config2,
    /// Uniform linear array, in-phase (broadside).
    Ula,
    /// Uniform linear array, conventional end-fire phasing (-k d per step).
    UlaEndfire,
    /// Same aperture, uniform spacing, literature excitation from a file.
    TheoreticalExcitation,
    /// The optimized design itself.
    Optimized,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RowLabel::Config1 => "config1",
            RowLabel::Config2 => "config2",
            RowLabel::Ula => "ULA",
            RowLabel::UlaEndfire => "ULA_endfire",
            RowLabel::TheoreticalExcitation => "theoretical_excitation",
            RowLabel::Optimized => "optimized",
        };
        f.write_str(s)
    }
}

/// One comparison entry: realized gain and total efficiency at the row's
/// evaluation direction (broadside only for the in-phase ULA).
#[derive(Debug, Clone)]
pub struct ComparisonRow {
    pub label: RowLabel,
    pub realized_gain_db: f64,
    pub total_efficiency: f64,
    /// (theta, phi) radians.
    pub direction: (f64, f64),
}

fn row(label: RowLabel, design: &ArrayDesign, z0: f64, phi: f64) -> Result<ComparisonRow> {
    let ev = evaluate(design, z0)?;
    Ok(ComparisonRow {
        label,
        realized_gain_db: ev.realized_gain_dbi(std::f64::consts::FRAC_PI_2, phi),
        total_efficiency: ev.efficiency_report().total_efficiency,
        direction: (std::f64::consts::FRAC_PI_2, phi),
    })
}

/// Build and evaluate the comparison configurations against `optimized`.
/// The literature-excitation row needs externally supplied currents and is
/// skipped when `literature_currents` is `None`.
pub fn compare_configs(
    optimized: &ArrayDesign,
    literature_currents: Option<&[Excitation]>,
    z0: f64,
) -> Result<Vec<ComparisonRow>> {
    let f = optimized.frequency();
    let lambda = optimized.wavelength();
    let radius = lambda * RADIUS_FRACTION;
    let n = optimized.len();
    let k = optimized.wavenumber();
    let endfire = 0.0;
    let broadside = std::f64::consts::FRAC_PI_2;

    let mut rows = Vec::new();

    // #1: same positions and currents, lengths pinned to half a wavelength
    let cfg1_elements = optimized
        .elements()
        .iter()
        .map(|el| Dipole::new(el.position_x, 0.5 * lambda, radius))
        .collect::<Result<Vec<_>>>()?;
    let cfg1 = ArrayDesign::new(f, cfg1_elements, optimized.excitations().to_vec())?;
    rows.push(row(RowLabel::Config1, &cfg1, z0, endfire)?);

    // #2: uniform lambda/2 spacing and lengths, optimized currents
    let cfg2 = ArrayDesign::uniform(f, n, 0.5 * lambda, 0.5 * lambda, optimized.excitations().to_vec())?;
    rows.push(row(RowLabel::Config2, &cfg2, z0, endfire)?);

    // conventional ULA, in phase, evaluated broadside
    let uniform_exc = vec![Excitation::new(1.0, 0.0)?; n];
    let ula = ArrayDesign::uniform(f, n, 0.5 * lambda, 0.5 * lambda, uniform_exc)?;
    rows.push(row(RowLabel::Ula, &ula, z0, broadside)?);

    // the same ULA phased for end-fire, delta = -k d per element
    let ef_exc = ula
        .elements()
        .iter()
        .map(|el| Excitation::new(1.0, wrap_phase(-k * el.position_x)))
        .collect::<Result<Vec<_>>>()?;
    let ula_ef = ula.with_excitations(ef_exc)?;
    rows.push(row(RowLabel::UlaEndfire, &ula_ef, z0, endfire)?);

    // literature excitation over the optimized aperture, uniform spacing
    if let Some(currents) = literature_currents {
        if currents.len() != n {
            return Err(Error::Excitation(format!(
                "literature excitation has {} entries for an {n}-element array",
                currents.len()
            )));
        }
        let spacing = optimized.aperture() / (n as f64 - 1.0);
        let th = ArrayDesign::uniform(f, n, spacing, 0.5 * lambda, currents.to_vec())?;
        rows.push(row(RowLabel::TheoreticalExcitation, &th, z0, endfire)?);
    }

    rows.push(row(RowLabel::Optimized, optimized, z0, endfire)?);
    Ok(rows)
}

/// Per-element real input resistances of the best design per element count,
/// shaped like the published table: rows are element indices, columns N.
#[derive(Debug, Clone)]
pub struct Table1 {
    /// (N, per-element resistances of the best run's design).
    pub columns: Vec<(usize, Vec<f64>)>,
}

pub fn table1_report(sweep: &SweepReport) -> Result<Table1> {
    let mut columns = Vec::with_capacity(sweep.entries.len());
    for entry in &sweep.entries {
        let best = entry.best();
        let act = best.best_evaluation.active_input_impedance()?;
        let res = act
            .iter()
            .map(|z| z.map(|z| z.re).unwrap_or(f64::NAN))
            .collect();
        columns.push((entry.n, res));
    }
    Ok(Table1 { columns })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent.display().to_string(), e))?;
    }
    std::fs::write(path, contents).map_err(|e| Error::io(path.display().to_string(), e))
}

/// `table1.csv`: element_index, N2..N10 (blank cells for absent elements).
pub fn write_table1(path: &Path, table: &Table1) -> Result<()> {
    let mut out = String::from("element_index");
    for (n, _) in &table.columns {
        write!(out, ",N{n}").unwrap();
    }
    out.push('\n');
    let max_rows = table
        .columns
        .iter()
        .map(|(_, v)| v.len())
        .max()
        .unwrap_or(0);
    for idx in 0..max_rows {
        write!(out, "{}", idx + 1).unwrap();
        for (_, values) in &table.columns {
            match values.get(idx) {
                Some(v) if v.is_finite() => write!(out, ",{v:.4}").unwrap(),
                _ => out.push(','),
            }
        }
        out.push('\n');
    }
    write_file(path, &out)
}

/// `table3.csv`: label, realized_gain_db, total_eff_pct, theta_deg, phi_deg.
pub fn write_table3(path: &Path, rows: &[ComparisonRow]) -> Result<()> {
    let mut out = String::from("label,realized_gain_db,total_eff_pct,theta_deg,phi_deg\n");
    for r in rows {
        writeln!(
            out,
            "{},{:.4},{:.4},{:.1},{:.1}",
            r.label,
            floor_db(r.realized_gain_db),
            100.0 * r.total_efficiency,
            r.direction.0.to_degrees(),
            r.direction.1.to_degrees()
        )
        .unwrap();
    }
    write_file(path, &out)
}

/// `fig3_N<k>.csv`: iteration, best_cost.
pub fn write_fig3(path: &Path, run: &ArrayRun) -> Result<()> {
    let mut out = String::from("iteration,best_cost\n");
    for (it, cost) in run.run.history.iter().enumerate() {
        writeln!(out, "{it},{cost:.6e}").unwrap();
    }
    write_file(path, &out)
}

/// `fig4.csv`: N, dRG_db, oRG_db.
pub fn write_fig4(path: &Path, sweep: &SweepReport) -> Result<()> {
    let mut out = String::from("N,dRG_db,oRG_db\n");
    for entry in &sweep.entries {
        writeln!(
            out,
            "{},{:.4},{:.4}",
            entry.n,
            entry.target_db,
            floor_db(entry.best().achieved_rg_db)
        )
        .unwrap();
    }
    write_file(path, &out)
}

/// `fig5.csv`: phi_deg, rg_db over the azimuth cut.
pub fn write_fig5(path: &Path, cut: &FarFieldCut) -> Result<()> {
    let mut out = String::from("phi_deg,rg_db\n");
    for p in cut.points() {
        writeln!(
            out,
            "{:.3},{:.4}",
            p.phi.to_degrees(),
            floor_db(p.realized_gain_dbi)
        )
        .unwrap();
    }
    write_file(path, &out)
}

/// Per-iteration trace of a single optimization: iteration, best_cost,
/// best_oRG_dB.
pub fn write_history(path: &Path, run: &ArrayRun) -> Result<()> {
    let mut out = String::from("iteration,best_cost,best_oRG_dB\n");
    for (it, (cost, rg)) in run.run.history.iter().zip(&run.history_rg_db).enumerate() {
        writeln!(out, "{it},{cost:.6e},{:.4}", floor_db(*rg)).unwrap();
    }
    write_file(path, &out)
}
