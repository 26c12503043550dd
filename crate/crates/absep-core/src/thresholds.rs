//! Noise thresholds for two-qubit inputs passed through a local channel
//! pair, region maps over (state parameter, noise parameter), and the
//! closed-form cross-checks.
//!
//! Every threshold is found the same way: a boolean criterion is evaluated
//! on a uniform grid and each change of value is refined by bisection.
//! No single-root assumption is made, so the two-sided amplitude damping
//! window is found as reliably as the one-sided depolarizing threshold.

use alloc::vec::Vec;

use libm::{cos, sin, sqrt};

use crate::channels::{apply_local_product, qubit_channel, ChannelKind};
use crate::constructors::{pure_state, rank3_psi_state, werner, Interval, PureStateParams};
use crate::criteria::{classify, eq1_lhs, entanglement_status, AbsSepClass, EntanglementStatus};
use crate::linalg::{binary_entropy, DensityMatrix};
use crate::tol::BOUNDARY_BAND;
use crate::{Error, Result};

const PI: f64 = core::f64::consts::PI;

/// Grid size used for every threshold scan.
pub const SCAN_GRID: usize = 1000;
/// Width to which each scan edge is bisected.
pub const ROOT_TOL: f64 = 1e-10;
/// Largest accepted axis length of a region sweep.
pub const MAX_AXIS_LEN: usize = 2000;

/// Maximal sub-intervals of `[lo, hi]` on which `pred` holds.
///
/// `pred` is sampled at `grid` evenly spaced points including both ends.
/// Each false/true transition between neighbours is bisected until the
/// bracket is narrower than `tol`; the reported edge is the bracket end on
/// the `true` side, so `pred` holds at every returned endpoint. Runs that
/// reach an end of the range keep that end exactly. Features narrower
/// than the grid spacing can be missed.
pub fn scan_intervals<F>(mut pred: F, lo: f64, hi: f64, grid: usize, tol: f64) -> Result<Vec<Interval>>
where
    F: FnMut(f64) -> Result<bool>,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidParameter {
            name: "range",
            reason: "need finite lo < hi",
        });
    }
    if grid < 2 {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: "need at least two grid points",
        });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            reason: "must be positive",
        });
    }
    let step = (hi - lo) / (grid - 1) as f64;
    let at = |i: usize| if i == grid - 1 { hi } else { lo + step * i as f64 };

    let mut points = Vec::with_capacity(grid);
    let mut flags = Vec::with_capacity(grid);
    for i in 0..grid {
        let t = at(i);
        points.push(t);
        flags.push(pred(t)?);
    }

    let mut out = Vec::new();
    let mut start = if flags[0] { Some(lo) } else { None };
    for i in 1..grid {
        match (flags[i - 1], flags[i]) {
            (false, true) => start = Some(refine(&mut pred, points[i - 1], points[i], false, tol)?),
            (true, false) => {
                let end = refine(&mut pred, points[i - 1], points[i], true, tol)?;
                out.push(Interval {
                    lo: start.take().expect("open run"),
                    hi: end,
                });
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Interval { lo: s, hi });
    }
    Ok(out)
}

/// Bisects a transition between `a` (where `pred` is `va`) and `b`, and
/// returns the bracket end on the `true` side.
fn refine<F>(pred: &mut F, mut a: f64, mut b: f64, va: bool, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<bool>,
{
    while b - a > tol {
        let m = 0.5 * (a + b);
        if pred(m)? == va {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(if va { a } else { b })
}

/// `x ∈ [0, π/2]` with `H₂(cos²(x/2)) = e`.
pub fn entropy_to_x(e: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&e) {
        return Err(Error::OutOfRange {
            name: "entropy",
            value: e,
            domain: "[0, 1]",
        });
    }
    if e == 0.0 {
        return Ok(0.0);
    }
    if e == 1.0 {
        return Ok(PI / 2.0);
    }
    let f = |x: f64| {
        let c = cos(0.5 * x);
        binary_entropy(c * c)
    };
    let (mut a, mut b) = (0.0, PI / 2.0);
    while b - a > ROOT_TOL {
        let m = 0.5 * (a + b);
        if f(m) < e {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

fn check_x(x: f64) -> Result<()> {
    if (0.0..=PI).contains(&x) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "x",
            value: x,
            domain: "[0, pi]",
        })
    }
}

fn check_pair_channel(kind: ChannelKind) -> Result<()> {
    match kind {
        ChannelKind::Dpc | ChannelKind::Adc => Ok(()),
        _ => Err(Error::InvalidParameter {
            name: "channel",
            reason: "thresholds are defined for DPC and ADC",
        }),
    }
}

/// `(Λ_p ⊗ Λ_p)(|ψ(x, 0)⟩⟨ψ(x, 0)|)`.
pub fn local_output(x: f64, p: f64, kind: ChannelKind) -> Result<DensityMatrix> {
    let k = qubit_channel(kind, p)?;
    let psi = pure_state(PureStateParams::new(x, 0.0)?);
    apply_local_product(&psi, &k, &k)
}

fn is_npt(rho: &DensityMatrix) -> Result<bool> {
    Ok(entanglement_status(rho)?.1 == EntanglementStatus::NptEntangled)
}

fn is_absep(rho: &DensityMatrix) -> Result<bool> {
    Ok(eq1_lhs(&rho.spectrum()?, rho.d())? <= BOUNDARY_BAND)
}

/// Where the channel output stops being separable as `p` grows.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SeparabilityThreshold {
    /// Lower end of the entangled range that reaches the noiseless end
    /// `p = 1`.
    Crossing(f64),
    AlwaysSeparable,
    AlwaysEntangled,
}

impl SeparabilityThreshold {
    pub fn crossing(&self) -> Option<f64> {
        match *self {
            SeparabilityThreshold::Crossing(p) => Some(p),
            _ => None,
        }
    }
}

/// Values of `p` at which the output is NPT.
pub fn npt_intervals(x: f64, kind: ChannelKind) -> Result<Vec<Interval>> {
    check_x(x)?;
    check_pair_channel(kind)?;
    scan_intervals(|p| is_npt(&local_output(x, p, kind)?), 0.0, 1.0, SCAN_GRID, ROOT_TOL)
}

/// Separability threshold in the channel parameter.
pub fn p_sep_threshold(x: f64, kind: ChannelKind) -> Result<SeparabilityThreshold> {
    let npt = npt_intervals(x, kind)?;
    Ok(match npt.last() {
        None => SeparabilityThreshold::AlwaysSeparable,
        Some(iv) if iv.lo == 0.0 && iv.hi == 1.0 => SeparabilityThreshold::AlwaysEntangled,
        Some(iv) => SeparabilityThreshold::Crossing(iv.lo),
    })
}

/// Values of `p` at which the output is absolutely separable.
pub fn p_abs_threshold(x: f64, kind: ChannelKind) -> Result<Vec<Interval>> {
    check_x(x)?;
    check_pair_channel(kind)?;
    scan_intervals(|p| is_absep(&local_output(x, p, kind)?), 0.0, 1.0, SCAN_GRID, ROOT_TOL)
}

/// Critical noise levels of one input state.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ThresholdResult {
    /// Entanglement entropy of the input in bits.
    pub input_entanglement: f64,
    pub x: f64,
    pub channel_kind: ChannelKind,
    pub one_minus_p_sep: f64,
    pub one_minus_p_abs: f64,
    /// `one_minus_p_abs − one_minus_p_sep`.
    pub gap: f64,
}

/// Depolarizing thresholds of `|ψ(x, 0)⟩`.
///
/// `p_abs` is the upper end of the absolutely separable range around the
/// fully depolarizing point `p = 1/4`.
pub fn dpc_threshold_result(x: f64) -> Result<ThresholdResult> {
    let p_sep = p_sep_threshold(x, ChannelKind::Dpc)?
        .crossing()
        .ok_or(Error::NoSignChange)?;
    let abs = p_abs_threshold(x, ChannelKind::Dpc)?;
    let p_abs = abs
        .iter()
        .find(|iv| iv.contains(0.25))
        .map(|iv| iv.hi)
        .ok_or(Error::NoSignChange)?;
    let c = cos(0.5 * x);
    let one_minus_p_sep = 1.0 - p_sep;
    let one_minus_p_abs = 1.0 - p_abs;
    Ok(ThresholdResult {
        input_entanglement: binary_entropy(c * c),
        x,
        channel_kind: ChannelKind::Dpc,
        one_minus_p_sep,
        one_minus_p_abs,
        gap: one_minus_p_abs - one_minus_p_sep,
    })
}

/// Depolarizing thresholds for inputs of the given entanglement entropies.
pub fn table1(entanglements: &[f64]) -> Result<Vec<ThresholdResult>> {
    entanglements
        .iter()
        .map(|&e| {
            let mut r = dpc_threshold_result(entropy_to_x(e)?)?;
            r.input_entanglement = e;
            Ok(r)
        })
        .collect()
}

/// Closed form of the depolarizing NPT region:
/// `sin x > 4(1+2p)(1−p)/(4p−1)²`. False at the pole `p = 1/4`.
pub fn dpc_entanglement_curve(x: f64, p: f64) -> bool {
    let den = (4.0 * p - 1.0) * (4.0 * p - 1.0);
    if den == 0.0 {
        return false;
    }
    sin(x) > 4.0 * (1.0 + 2.0 * p) * (1.0 - p) / den
}

/// Closed form of the amplitude-damping separability region,
/// `tan(x/2) ≥ 1/(1−p)`, completed at the edges of the domain.
///
/// The partial transpose has the single candidate negative eigenvalue
/// `p·s·(s(1−p) − c)` with `c = cos(x/2)`, `s = sin(x/2)`, so the output
/// is also separable at `p = 0` (product output) and at `x ∈ {0, π}`
/// (product input). At `p = 1` the channel is the identity.
pub fn adc_separability_condition(x: f64, p: f64) -> bool {
    if p == 0.0 || x == 0.0 || x == PI {
        return true;
    }
    if p >= 1.0 {
        return false;
    }
    let (c, s) = (cos(0.5 * x), sin(0.5 * x));
    s * (1.0 - p) >= c
}

/// Cell label of a region map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum RegionClass {
    Entangled,
    SepOnly,
    AbsSep,
    Undecided,
}

impl RegionClass {
    /// Short CSV label.
    pub fn label(self) -> &'static str {
        match self {
            RegionClass::Entangled => "ENT",
            RegionClass::SepOnly => "SEP",
            RegionClass::AbsSep => "ABS",
            RegionClass::Undecided => "UND",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Some(match s {
            "ENT" => RegionClass::Entangled,
            "SEP" => RegionClass::SepOnly,
            "ABS" => RegionClass::AbsSep,
            "UND" => RegionClass::Undecided,
            _ => return None,
        })
    }
}

impl core::fmt::Display for RegionClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

/// Region label of a state.
pub fn classify_cell(rho: &DensityMatrix) -> Result<RegionClass> {
    let r = classify(rho)?;
    Ok(match (r.entanglement_status, r.absep_class) {
        (EntanglementStatus::NptEntangled, _) => RegionClass::Entangled,
        (_, AbsSepClass::AbsBoundary | AbsSepClass::AbsInterior) => RegionClass::AbsSep,
        (EntanglementStatus::PptSeparableExact, _) => RegionClass::SepOnly,
        (EntanglementStatus::PptUndecided, _) => RegionClass::Undecided,
    })
}

/// A named sample axis.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Axis {
    pub name: &'static str,
    pub values: Vec<f64>,
}

impl Axis {
    /// `n` evenly spaced points from `lo` to `hi` inclusive.
    pub fn linspace(name: &'static str, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(2..=MAX_AXIS_LEN).contains(&n) {
            return Err(Error::OutOfRange {
                name: "resolution",
                value: n as f64,
                domain: "[2, 2000]",
            });
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidParameter {
                name: "range",
                reason: "need finite lo < hi",
            });
        }
        let step = (hi - lo) / (n - 1) as f64;
        let values = (0..n)
            .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
            .collect();
        Ok(Self { name, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Input family and channel of a region map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum SweepMode {
    /// `|ψ(x, 0)⟩` under depolarizing noise; axes `(x, p)`.
    Dpc,
    /// `|ψ(x, 0)⟩` under amplitude damping; axes `(x, p)`.
    Adc,
    /// Werner state under phase damping; axes `(q, p)`.
    WernerPdc,
}

impl SweepMode {
    /// Name and range of the state-parameter axis.
    pub fn state_axis(self) -> (&'static str, f64, f64) {
        match self {
            SweepMode::Dpc | SweepMode::Adc => ("x", 0.0, PI),
            SweepMode::WernerPdc => ("q", 0.0, 1.0),
        }
    }

    /// Default axes with `n` points each.
    pub fn default_axes(self, n: usize) -> Result<(Axis, Axis)> {
        let (name, lo, hi) = self.state_axis();
        Ok((Axis::linspace(name, lo, hi, n)?, Axis::linspace("p", 0.0, 1.0, n)?))
    }

    /// Output state at one grid point.
    pub fn cell_state(self, a1: f64, p: f64) -> Result<DensityMatrix> {
        match self {
            SweepMode::Dpc => local_output(a1, p, ChannelKind::Dpc),
            SweepMode::Adc => local_output(a1, p, ChannelKind::Adc),
            SweepMode::WernerPdc => {
                let k = qubit_channel(ChannelKind::Pdc, p)?;
                apply_local_product(&werner(a1)?, &k, &k)
            }
        }
    }

    pub fn evaluate(self, a1: f64, p: f64) -> Result<RegionClass> {
        classify_cell(&self.cell_state(a1, p)?)
    }
}

/// Class labels over `axis1 × axis2`, row-major with `axis1` outer.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RegionGrid {
    pub axis1: Axis,
    pub axis2: Axis,
    cells: Vec<RegionClass>,
}

impl RegionGrid {
    pub fn from_cells(axis1: Axis, axis2: Axis, cells: Vec<RegionClass>) -> Result<Self> {
        let expected = axis1.len() * axis2.len();
        if cells.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: cells.len(),
            });
        }
        Ok(Self { axis1, axis2, cells })
    }

    pub fn cells(&self) -> &[RegionClass] {
        &self.cells
    }

    pub fn get(&self, i: usize, j: usize) -> RegionClass {
        self.cells[i * self.axis2.len() + j]
    }

    /// `(axis1 value, axis2 value, class)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, RegionClass)> + '_ {
        let n2 = self.axis2.len();
        self.cells
            .iter()
            .enumerate()
            .map(move |(k, &c)| (self.axis1.values[k / n2], self.axis2.values[k % n2], c))
    }

    pub fn count(&self, class: RegionClass) -> usize {
        self.cells.iter().filter(|&&c| c == class).count()
    }
}

fn check_axis(axis: &Axis, lo: f64, hi: f64) -> Result<()> {
    if axis.is_empty() || axis.len() > MAX_AXIS_LEN {
        return Err(Error::OutOfRange {
            name: "resolution",
            value: axis.len() as f64,
            domain: "[1, 2000]",
        });
    }
    for &v in &axis.values {
        if !(lo..=hi).contains(&v) {
            return Err(Error::OutOfRange {
                name: axis.name,
                value: v,
                domain: "parameter domain",
            });
        }
    }
    Ok(())
}

/// Validates the axes of a sweep against the parameter domains.
pub fn check_sweep_axes(mode: SweepMode, axis1: &Axis, axis2: &Axis) -> Result<()> {
    let (_, lo, hi) = mode.state_axis();
    check_axis(axis1, lo, hi)?;
    check_axis(axis2, 0.0, 1.0)
}

/// Sequential region map.
pub fn sweep_region(mode: SweepMode, axis1: Axis, axis2: Axis) -> Result<RegionGrid> {
    check_sweep_axes(mode, &axis1, &axis2)?;
    let mut cells = Vec::with_capacity(axis1.len() * axis2.len());
    for &a in &axis1.values {
        for &p in &axis2.values {
            cells.push(mode.evaluate(a, p)?);
        }
    }
    RegionGrid::from_cells(axis1, axis2, cells)
}

/// Werner thresholds in `q` under phase damping of strength `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct WernerThresholds {
    /// Smallest `q` of the entangled range reaching `q = 1`, if any.
    pub q_sep: Option<f64>,
    /// Largest `q` of the absolutely separable range starting at `q = 0`.
    pub q_abs: f64,
}

pub fn werner_thresholds(p: f64) -> Result<WernerThresholds> {
    let state = |q: f64| SweepMode::WernerPdc.cell_state(q, p);
    let npt = scan_intervals(|q| is_npt(&state(q)?), 0.0, 1.0, SCAN_GRID, ROOT_TOL)?;
    let abs = scan_intervals(|q| is_absep(&state(q)?), 0.0, 1.0, SCAN_GRID, ROOT_TOL)?;
    let q_abs = abs
        .first()
        .filter(|iv| iv.lo == 0.0)
        .map(|iv| iv.hi)
        .ok_or(Error::NoSignChange)?;
    Ok(WernerThresholds {
        q_sep: npt.last().filter(|iv| iv.hi == 1.0).map(|iv| iv.lo),
        q_abs,
    })
}

/// Phase damping applied to the rank-3 mixture of `|ψ(x, φ)⟩`, `|01⟩`
/// and `|10⟩`.
#[derive(Debug, Clone)]
pub struct PdcRank3Report {
    pub rank: usize,
    pub eq1_lhs: f64,
    /// `max |output − input|` over entries.
    pub max_change: f64,
    pub output: DensityMatrix,
}

pub fn pdc_rank3_check(x: f64, phi: f64, p: f64) -> Result<PdcRank3Report> {
    let input = rank3_psi_state(PureStateParams::new(x, phi)?);
    let k = qubit_channel(ChannelKind::Pdc, p)?;
    let output = apply_local_product(&input, &k, &k)?;
    let spectrum = output.spectrum()?;
    Ok(PdcRank3Report {
        rank: spectrum.rank(),
        eq1_lhs: eq1_lhs(&spectrum, 2)?,
        max_change: output.matrix().max_abs_diff(input.matrix()),
        output,
    })
}

/// `(1 + √3)/4`, the depolarizing threshold of a maximally entangled input.
pub fn dpc_maximally_entangled_root() -> f64 {
    0.25 * (1.0 + sqrt(3.0))
}
