//! Command implementations behind the `absep` binary. Each returns the
//! value that the binary prints.

use std::f64::consts::PI;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use absep_core::channels::ChannelKind;
use absep_core::constructors::{
    basis_state, diagonal_state, extreme_point, generate_outside_ball, kappa_family_spectrum,
    pure_state, rank3_psi_state, rank3_seed_state, werner, Frame, Interval, KappaFamilyParams,
    PureStateParams,
};
use absep_core::criteria::{classify, classify_with_band, ClassificationReport};
use absep_core::linalg::binary_entropy;
use absep_core::thresholds::{
    dpc_threshold_result, entropy_to_x, npt_intervals, p_abs_threshold, p_sep_threshold,
    sweep_region, table1, SeparabilityThreshold, SweepMode, ThresholdResult,
};
use absep_core::tol::BOUNDARY_BAND;
use absep_core::DensityMatrix;
use serde::Serialize;

use crate::error::CliError;
use crate::state_file::StateFile;
use crate::sweep::{par_sweep, write_csv};

#[derive(Debug, Serialize)]
pub struct CheckReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(flatten)]
    pub report: ClassificationReport,
}

pub fn check(path: &Path, band: Option<f64>) -> Result<CheckReport, CliError> {
    let file = StateFile::read(path)?;
    let rho = file.to_state()?;
    let band = band.unwrap_or(BOUNDARY_BAND);
    if !(band >= 0.0 && band.is_finite()) {
        return Err(CliError::Parse(format!("--tol must be a finite non-negative number, got {band}")));
    }
    Ok(CheckReport {
        label: file.label,
        report: classify_with_band(&rho, band)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerateKind {
    Extreme,
    OutsideBall,
    KappaFamily,
    Werner,
    Pure,
    Rank3Psi,
}

impl GenerateKind {
    pub fn name(self) -> &'static str {
        match self {
            GenerateKind::Extreme => "extreme",
            GenerateKind::OutsideBall => "outside-ball",
            GenerateKind::KappaFamily => "kappa-family",
            GenerateKind::Werner => "werner",
            GenerateKind::Pure => "pure",
            GenerateKind::Rank3Psi => "rank3-psi",
        }
    }
}

/// Parameters of `generate`. Unset values fall back to the reference
/// values only when `defaults` is set.
#[derive(Debug, Clone, Default)]
pub struct GenerateParams {
    pub seed: Option<u64>,
    pub defaults: bool,
    pub d: Option<usize>,
    pub kappa: Option<f64>,
    pub lambda4: Option<f64>,
    pub q: Option<f64>,
    pub x: Option<f64>,
    pub phi: Option<f64>,
    pub weights: Option<[f64; 3]>,
}

impl GenerateParams {
    fn get<T: Copy>(&self, value: Option<T>, reference: T, flag: &str) -> Result<T, CliError> {
        match value {
            Some(v) => Ok(v),
            None if self.defaults => Ok(reference),
            None => Err(CliError::Parse(format!("missing --{flag} (or pass --defaults)"))),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GenerationSummary {
    pub q_star: f64,
    pub purity: f64,
    pub outside_ball: bool,
    pub absep_window: Vec<Interval>,
}

#[derive(Debug, Serialize)]
pub struct GenerateReport {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generation: Option<GenerationSummary>,
    pub report: ClassificationReport,
}

pub fn generate(kind: GenerateKind, params: &GenerateParams) -> Result<(StateFile, GenerateReport), CliError> {
    let mut seed = None;
    let mut generation = None;
    let rho: DensityMatrix = match kind {
        GenerateKind::Extreme => {
            let d = params.get(params.d, 2, "d")?;
            let s = params.seed.unwrap_or(0);
            seed = Some(s);
            extreme_point(d, Frame::Seed(s))?
        }
        GenerateKind::OutsideBall => {
            let d = params.get(params.d, 2, "d")?;
            let (seed_state, pure) = match d {
                2 => {
                    let [p1, p2, p3] = params.get(params.weights, [0.5, 0.25, 0.25], "p1/--p2/--p3")?;
                    (rank3_seed_state(p1, p2, p3)?, basis_state(2, 3)?)
                }
                3 => (
                    diagonal_state(&[0.4, 0.15, 0.15, 0.15, 0.15, 0.0])?,
                    basis_state(3, 5)?,
                ),
                _ => return Err(CliError::Parse("outside-ball supports --d 2 or --d 3".into())),
            };
            let g = generate_outside_ball(&seed_state, &pure)?;
            generation = Some(GenerationSummary {
                q_star: g.q_star,
                purity: g.purity,
                outside_ball: g.outside_ball,
                absep_window: g.absep_window,
            });
            g.state
        }
        GenerateKind::KappaFamily => {
            let kappa = params.get(params.kappa, 2.5, "kappa")?;
            let lambda4 = params.get(params.lambda4, 0.1, "lambda4")?;
            let member = kappa_family_spectrum(KappaFamilyParams { kappa, lambda4 })?;
            diagonal_state(member.spectrum.values())?
        }
        GenerateKind::Werner => werner(params.get(params.q, 1.0 / 3.0, "q")?)?,
        GenerateKind::Pure | GenerateKind::Rank3Psi => {
            let x = params.get(params.x, PI / 2.0, "x")?;
            let phi = params.get(params.phi, 0.0, "phi")?;
            let p = PureStateParams::new(x, phi)?;
            if kind == GenerateKind::Pure {
                pure_state(p)
            } else {
                rank3_psi_state(p)
            }
        }
    };
    let report = GenerateReport {
        kind: kind.name(),
        seed,
        generation,
        report: classify(&rho)?,
    };
    Ok((StateFile::from_state(&rho, Some(kind.name().to_string())), report))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdChannel {
    Dpc,
    Adc,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateInput {
    X(f64),
    Entropy(f64),
}

impl StateInput {
    fn resolve(self) -> Result<(f64, f64), CliError> {
        Ok(match self {
            StateInput::X(x) => {
                let c = (0.5 * x).cos();
                (x, binary_entropy(c * c))
            }
            StateInput::Entropy(e) => (entropy_to_x(e)?, e),
        })
    }
}

/// Amplitude damping has an absolutely separable window rather than a
/// single threshold.
#[derive(Debug, Serialize)]
pub struct AdcThresholdReport {
    pub input_entanglement: f64,
    pub x: f64,
    pub channel_kind: ChannelKind,
    pub separability: SeparabilityThreshold,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub one_minus_p_sep: Option<f64>,
    /// Ranges of `p` with an NPT output.
    pub npt_intervals: Vec<Interval>,
    /// Ranges of `p` with an absolutely separable output.
    pub absep_intervals: Vec<Interval>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum ThresholdReport {
    Dpc(ThresholdResult),
    Adc(AdcThresholdReport),
}

pub fn threshold(channel: ThresholdChannel, input: StateInput) -> Result<ThresholdReport, CliError> {
    let (x, e) = input.resolve()?;
    Ok(match channel {
        ThresholdChannel::Dpc => {
            let mut r = dpc_threshold_result(x)?;
            r.input_entanglement = e;
            ThresholdReport::Dpc(r)
        }
        ThresholdChannel::Adc => {
            let separability = p_sep_threshold(x, ChannelKind::Adc)?;
            ThresholdReport::Adc(AdcThresholdReport {
                input_entanglement: e,
                x,
                channel_kind: ChannelKind::Adc,
                one_minus_p_sep: separability.crossing().map(|p| 1.0 - p),
                separability,
                npt_intervals: npt_intervals(x, ChannelKind::Adc)?,
                absep_intervals: p_abs_threshold(x, ChannelKind::Adc)?,
            })
        }
    })
}

/// Computes a region map and writes it as CSV. Returns the cell count.
pub fn sweep(mode: SweepMode, res: usize, out: &Path, parallel: bool) -> Result<usize, CliError> {
    let (a1, a2) = mode.default_axes(res)?;
    let grid = if parallel {
        par_sweep(mode, a1, a2)?
    } else {
        sweep_region(mode, a1, a2)?
    };
    let file = File::create(out).map_err(|e| CliError::io(out, e))?;
    write_csv(&grid, BufWriter::new(file))?;
    Ok(grid.cells().len())
}

/// Published reference values `(1−p_sep, 1−p_abs, gap)`.
pub const TABLE1_REFERENCE: [(f64, (f64, f64, f64)); 2] =
    [(0.7715, (0.29133, 0.36114, 0.0698)), (0.33225, (0.21413, 0.426103, 0.21197))];

#[derive(Debug, Serialize)]
pub struct Table1Row {
    #[serde(flatten)]
    pub result: ThresholdResult,
    /// Reference `(1−p_sep, 1−p_abs, gap)`; the maximally entangled row
    /// is only checked for a zero gap.
    pub reference: Option<(f64, f64, f64)>,
    pub deviates: bool,
}

pub fn table1_rows() -> Result<Vec<Table1Row>, CliError> {
    let mut entropies: Vec<f64> = TABLE1_REFERENCE.iter().map(|r| r.0).collect();
    entropies.push(1.0);
    let results = table1(&entropies)?;
    Ok(results
        .into_iter()
        .enumerate()
        .map(|(i, result)| match TABLE1_REFERENCE.get(i) {
            Some(&(_, (sep, abs, gap))) => Table1Row {
                deviates: (result.one_minus_p_sep - sep).abs() > 2e-3
                    || (result.one_minus_p_abs - abs).abs() > 2e-3
                    || (result.gap - gap).abs() > 2e-3,
                result,
                reference: Some((sep, abs, gap)),
            },
            None => Table1Row {
                deviates: result.gap.abs() > 1e-3,
                result,
                reference: None,
            },
        })
        .collect())
}

pub fn format_table1(rows: &[Table1Row]) -> String {
    let mut out = format!(
        "{:>8} {:>10} {:>10} {:>10} {:>10}  {}\n",
        "E", "x", "1-p_sep", "1-p_abs", "gap", "reference"
    );
    for row in rows {
        let r = &row.result;
        let reference = match row.reference {
            Some((s, a, g)) => format!("({s}, {a}, {g})"),
            None => "gap 0".to_string(),
        };
        out += &format!(
            "{:>8} {:>10.6} {:>10.6} {:>10.6} {:>10.6}  {}{}\n",
            r.input_entanglement,
            r.x,
            r.one_minus_p_sep,
            r.one_minus_p_abs,
            r.gap,
            reference,
            if row.deviates { "  DEVIATES" } else { "" }
        );
    }
    out
}
