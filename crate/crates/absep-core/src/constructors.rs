//! Named states and state families.
//!
//! Besides the standard two-qubit inputs this module builds points on the
//! boundary of the absolutely separable set:
//!
//! - equal mixtures of `2d−1` orthonormal vectors, the lowest-rank
//!   absolutely separable states and extreme points of the set;
//! - mixtures of a non-absolutely-separable rank-`(2d−1)` state with an
//!   orthogonal pure state, which enter the set through its boundary and can
//!   do so outside the maximal ball;
//! - the one-parameter family with fixed `λ₂/λ₄ = κ`, whose members stay on
//!   the boundary under mixing and therefore are not extreme.

use alloc::vec;
use alloc::vec::Vec;

use libm::{cos, sin, sqrt};
use num_complex::Complex64;

use crate::criteria::{eq1_lhs, maximal_ball_purity};
use crate::linalg::{ComplexMatrix, DensityMatrix, Spectrum};
use crate::random::{inner, random_frame, rng_from_seed};
use crate::tol::{BALL_SLACK, BOUNDARY_BAND, EQUAL_WEIGHTS, ORTHONORMALITY};
use crate::{Error, Result};

const TWO_PI: f64 = 2.0 * core::f64::consts::PI;
const PI: f64 = core::f64::consts::PI;

/// Angles of `cos(x/2)|00⟩ + e^{−iφ} sin(x/2)|11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureStateParams {
    x: f64,
    phi: f64,
}

impl PureStateParams {
    pub fn new(x: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&x) {
            return Err(Error::OutOfRange {
                name: "x",
                value: x,
                domain: "[0, pi]",
            });
        }
        if !(0.0..=TWO_PI).contains(&phi) {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
                domain: "[0, 2pi]",
            });
        }
        Ok(Self { x, phi })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn ket(&self) -> Vec<Complex64> {
        let (c, s) = (cos(self.x / 2.0), sin(self.x / 2.0));
        let phase = Complex64::new(cos(self.phi), -sin(self.phi));
        vec![
            Complex64::new(c, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            phase * s,
        ]
    }
}

fn basis_projector(dim: usize, index: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    m[(index, index)] = Complex64::new(1.0, 0.0);
    m
}

pub fn pure_state(p: PureStateParams) -> DensityMatrix {
    DensityMatrix::from_trusted(ComplexMatrix::outer(&p.ket()), 2)
}

/// `|φ⁺⟩ = (|00⟩ + |11⟩)/√2`.
pub fn bell_phi_plus() -> DensityMatrix {
    pure_state(PureStateParams { x: PI / 2.0, phi: 0.0 })
}

/// `q|φ⁺⟩⟨φ⁺| + (1−q) I/4`.
pub fn werner(q: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::OutOfRange {
            name: "q",
            value: q,
            domain: "[0, 1]",
        });
    }
    let bell = bell_phi_plus();
    let noise = ComplexMatrix::identity(4).scale(0.25);
    let m = &bell.matrix().scale(q) + &noise.scale(1.0 - q);
    Ok(DensityMatrix::from_trusted(m, 2))
}

/// Where the orthonormal vectors of an extreme point come from.
#[derive(Debug, Clone)]
pub enum Frame {
    /// Caller-supplied vectors of length `2d`.
    Vectors(Vec<Vec<Complex64>>),
    /// Gram–Schmidt on seeded complex Gaussian vectors.
    Seed(u64),
}

fn frame_defect(frame: &[Vec<Complex64>]) -> f64 {
    let mut worst = 0.0f64;
    for (i, a) in frame.iter().enumerate() {
        for (j, b) in frame.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((inner(a, b) - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Equal mixture of `2d−1` orthonormal vectors in `2 ⊗ d`.
pub fn extreme_point(d: usize, frame: Frame) -> Result<DensityMatrix> {
    if d < 2 || 2 * d > crate::tol::MAX_DIM {
        return Err(Error::OutOfRange {
            name: "d",
            value: d as f64,
            domain: "2 <= d <= 32",
        });
    }
    let n = 2 * d;
    let vectors = match frame {
        Frame::Seed(seed) => random_frame(&mut rng_from_seed(seed), n, n - 1),
        Frame::Vectors(v) => {
            if v.len() != n - 1 {
                return Err(Error::DimensionMismatch {
                    expected: n - 1,
                    found: v.len(),
                });
            }
            if let Some(bad) = v.iter().find(|x| x.len() != n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: bad.len(),
                });
            }
            let deviation = frame_defect(&v);
            if !(deviation <= ORTHONORMALITY) {
                return Err(Error::NotOrthonormal {
                    deviation,
                    tol: ORTHONORMALITY,
                });
            }
            v
        }
    };
    let weight = 1.0 / (n - 1) as f64;
    let mut m = ComplexMatrix::zeros(n, n);
    for v in &vectors {
        m = &m + &ComplexMatrix::outer(v).scale(weight);
    }
    Ok(DensityMatrix::from_trusted(m, d))
}

/// `p₁|00⟩⟨00| + p₂|01⟩⟨01| + p₃|10⟩⟨10|`, a rank-3 two-qubit state with
/// kernel `|11⟩`. Equal weights are rejected because they give the
/// absolutely separable extreme point instead.
pub fn rank3_seed_state(p1: f64, p2: f64, p3: f64) -> Result<DensityMatrix> {
    for (name, p) in [("p1", p1), ("p2", p2), ("p3", p3)] {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::OutOfRange {
                name,
                value: p,
                domain: "(0, 1)",
            });
        }
    }
    let sum = p1 + p2 + p3;
    if (sum - 1.0).abs() > crate::tol::SPECTRUM_SUM {
        return Err(Error::BadSpectrumSum {
            sum,
            tol: crate::tol::SPECTRUM_SUM,
        });
    }
    if (p1 - p2).abs() <= EQUAL_WEIGHTS && (p2 - p3).abs() <= EQUAL_WEIGHTS {
        return Err(Error::InvalidParameter {
            name: "weights",
            reason: "equal weights give an absolutely separable state; at least one must differ",
        });
    }
    Ok(DensityMatrix::from_trusted(
        ComplexMatrix::from_diagonal(&[p1, p2, p3, 0.0]),
        2,
    ))
}

/// Closed interval of a parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }
}

#[derive(Debug, Clone)]
pub struct GenerationResult {
    /// Largest `q` at which `q·seed + (1−q)·pure` meets the boundary.
    pub q_star: f64,
    pub state: DensityMatrix,
    pub purity: f64,
    pub outside_ball: bool,
    /// Every `q` range on which the mixture is absolutely separable.
    pub absep_window: Vec<Interval>,
}

const GENERATION_GRID: usize = 1000;
const GENERATION_TOL: f64 = 1e-10;

/// Scans `q ↦ criterion(q·seed + (1−q)·pure)` on a uniform grid, bisects
/// every sign change and returns the largest root together with the full
/// absolutely separable window.
pub fn generate_outside_ball(seed: &DensityMatrix, pure: &DensityMatrix) -> Result<GenerationResult> {
    let d = seed.d();
    if pure.d() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: pure.d(),
        });
    }
    let overlap = (seed.matrix() * pure.matrix()).trace().re;
    if overlap > 1e-12 {
        return Err(Error::Precondition("pure state is not orthogonal to the seed support"));
    }
    let seed_spec = seed.spectrum()?;
    if seed_spec.rank() != 2 * d - 1 {
        return Err(Error::InvalidParameter {
            name: "seed",
            reason: "seed must have rank 2d-1",
        });
    }
    if eq1_lhs(&seed_spec, d)? <= BOUNDARY_BAND {
        return Err(Error::InvalidParameter {
            name: "seed",
            reason: "seed is already absolutely separable",
        });
    }
    if pure.spectrum()?.rank() != 1 {
        return Err(Error::InvalidParameter {
            name: "pure",
            reason: "second state must be pure",
        });
    }

    let criterion = |q: f64| -> Result<f64> {
        let mix = seed.mix(pure, q)?;
        eq1_lhs(&mix.spectrum()?, d)
    };
    let window = crate::thresholds::scan_intervals(
        |q| criterion(q).map(|f| f <= 0.0),
        0.0,
        1.0,
        GENERATION_GRID,
        GENERATION_TOL,
    )?;
    let q_star = window
        .iter()
        .flat_map(|iv| [iv.lo, iv.hi])
        .filter(|&q| q > 0.0 && q < 1.0)
        .fold(f64::NAN, f64::max);
    if q_star.is_nan() {
        return Err(Error::NoSignChange);
    }
    let state = seed.mix(pure, q_star)?;
    let purity = state.purity();
    Ok(GenerationResult {
        q_star,
        outside_ball: purity > maximal_ball_purity(d) + BALL_SLACK,
        purity,
        state,
        absep_window: window,
    })
}

/// Parameters of the boundary family with `λ₂ = κ·λ₄`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaFamilyParams {
    pub kappa: f64,
    pub lambda4: f64,
}

/// A member of the `κ` family: its spectrum and the parameters it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaMember {
    pub params: KappaFamilyParams,
    pub spectrum: Spectrum,
}

/// `λ₁,₃ = [1 − (1+κ)λ₄ ± 2√κ·λ₄]/2`, `λ₂ = κλ₄`.
///
/// Members satisfy `λ₁ − λ₃ = 2√(λ₂λ₄)` identically. Parameters that would
/// break the ordering `λ₁ ≥ λ₂ ≥ λ₃ ≥ λ₄` are rejected.
pub fn kappa_family_spectrum(p: KappaFamilyParams) -> Result<KappaMember> {
    let KappaFamilyParams { kappa, lambda4 } = p;
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::OutOfRange {
            name: "kappa",
            value: kappa,
            domain: "(0, inf)",
        });
    }
    if !(lambda4 > 0.0 && lambda4 < 1.0) {
        return Err(Error::OutOfRange {
            name: "lambda4",
            value: lambda4,
            domain: "(0, 1)",
        });
    }
    let rest = 1.0 - (1.0 + kappa) * lambda4;
    let split = 2.0 * sqrt(kappa) * lambda4;
    let l = [
        0.5 * (rest + split),
        kappa * lambda4,
        0.5 * (rest - split),
        lambda4,
    ];
    if !(l[0] >= l[1] && l[1] >= l[2] && l[2] >= l[3]) {
        return Err(Error::InvalidParameter {
            name: "kappa/lambda4",
            reason: "family spectrum is not in decreasing order",
        });
    }
    Ok(KappaMember {
        params: p,
        spectrum: Spectrum::new(l.to_vec())?,
    })
}

/// `x·a + (1−x)·b` for two members sharing `κ`; the mixture stays on the
/// boundary.
pub fn kappa_family_mix(a: &KappaMember, b: &KappaMember, x: f64) -> Result<Spectrum> {
    let (ka, kb) = (a.params.kappa, b.params.kappa);
    if (ka - kb).abs() > 1e-12 * ka.max(kb) {
        return Err(Error::InvalidParameter {
            name: "kappa",
            reason: "members have different kappa; the boundary identity is not preserved",
        });
    }
    a.spectrum.mix_aligned(&b.spectrum, x)
}

/// `(|ψ⟩⟨ψ| + |01⟩⟨01| + |10⟩⟨10|)/3`.
pub fn rank3_psi_state(p: PureStateParams) -> DensityMatrix {
    let m = &(&ComplexMatrix::outer(&p.ket()) + &basis_projector(4, 1)) + &basis_projector(4, 2);
    DensityMatrix::from_trusted(m.scale(1.0 / 3.0), 2)
}

/// `|index⟩⟨index|` on `2 ⊗ d`.
pub fn basis_state(d: usize, index: usize) -> Result<DensityMatrix> {
    if d < 2 || index >= 2 * d {
        return Err(Error::OutOfRange {
            name: "index",
            value: index as f64,
            domain: "[0, 2d)",
        });
    }
    Ok(DensityMatrix::from_trusted(basis_projector(2 * d, index), d))
}

/// Diagonal state with the given weights on the computational basis.
pub fn diagonal_state(weights: &[f64]) -> Result<DensityMatrix> {
    if !weights.len().is_multiple_of(2) || weights.len() < 4 {
        return Err(Error::InvalidParameter {
            name: "weights",
            reason: "need 2d weights with d >= 2",
        });
    }
    DensityMatrix::new(ComplexMatrix::from_diagonal(weights), weights.len() / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{classify, is_absolutely_separable, AbsSepClass};

    fn validate(rho: &DensityMatrix) {
        DensityMatrix::new(rho.matrix().clone(), rho.d()).unwrap();
    }

    #[test]
    fn pure_state_examples() {
        let p = pure_state(PureStateParams::new(0.0, 0.0).unwrap());
        assert!(p.matrix().max_abs_diff(&basis_projector(4, 0)) < 1e-16);
        let bell = pure_state(PureStateParams::new(PI / 2.0, 0.0).unwrap());
        assert!((bell.entanglement_entropy().unwrap() - 1.0).abs() < 1e-12);
        assert!(PureStateParams::new(4.0, 0.0).is_err());
        assert!(PureStateParams::new(1.0, -0.1).is_err());
        validate(&bell);
    }

    #[test]
    fn werner_examples() {
        assert!(werner(0.0)
            .unwrap()
            .matrix()
            .max_abs_diff(&ComplexMatrix::identity(4).scale(0.25))
            < 1e-16);
        assert!(werner(1.0).unwrap().matrix().max_abs_diff(bell_phi_plus().matrix()) < 1e-16);
        let w = werner(0.6).unwrap();
        let s = w.spectrum().unwrap();
        let expected = [(1.0 + 1.8) / 4.0, 0.1, 0.1, 0.1];
        for (a, b) in s.values().iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
        let third = werner(1.0 / 3.0).unwrap();
        let r = classify(&third).unwrap();
        assert!(r.eq1_lhs.abs() < 1e-12);
        assert!(r.pt_min_eig.abs() < 1e-12);
        assert!(werner(1.2).is_err());
    }

    #[test]
    fn extreme_point_in_computational_frame() {
        let e = |i: usize| {
            let mut v = vec![Complex64::new(0.0, 0.0); 4];
            v[i] = Complex64::new(1.0, 0.0);
            v
        };
        let rho = extreme_point(2, Frame::Vectors(vec![e(0), e(1), e(2)])).unwrap();
        let third = 1.0 / 3.0;
        assert!(rho
            .matrix()
            .max_abs_diff(&ComplexMatrix::from_diagonal(&[third, third, third, 0.0]))
            < 1e-16);
        assert!(classify(&rho).unwrap().is_extreme_certified);
    }

    #[test]
    fn extreme_points_from_seeds() {
        let a = extreme_point(3, Frame::Seed(1)).unwrap();
        let b = extreme_point(3, Frame::Seed(2)).unwrap();
        assert!((a.purity() - 0.2).abs() < 1e-10);
        assert!(a.matrix().max_abs_diff(b.matrix()) > 1e-3);
        let r = classify(&a).unwrap();
        assert!(r.is_extreme_certified);
        assert_eq!(r.rank, 5);
        validate(&a);
    }

    #[test]
    fn extreme_point_rejects_bad_frames() {
        let v = |a: f64, b: f64| vec![Complex64::new(a, 0.0), Complex64::new(b, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
        let skewed = Frame::Vectors(vec![v(1.0, 0.0), v(0.6, 0.8), v(0.0, 1.0)]);
        assert!(matches!(extreme_point(2, skewed), Err(Error::NotOrthonormal { .. })));
        assert!(matches!(
            extreme_point(2, Frame::Vectors(vec![v(1.0, 0.0)])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rank3_seed_examples() {
        let r1 = rank3_seed_state(0.5, 0.25, 0.25).unwrap();
        assert!((classify(&r1).unwrap().eq1_lhs - 0.25).abs() < 1e-14);
        assert!(rank3_seed_state(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).is_err());
        let r = classify(&rank3_seed_state(0.6, 0.3, 0.1).unwrap()).unwrap();
        assert_eq!(r.rank, 3);
        assert!((r.eq1_lhs - 0.5).abs() < 1e-14);
        assert_eq!(r.absep_class, AbsSepClass::NotAbsSep);
        assert!(rank3_seed_state(0.5, 0.5, 0.0).is_err());
        assert!(rank3_seed_state(0.5, 0.3, 0.3).is_err());
    }

    #[test]
    fn outside_ball_recipe() {
        let seed = rank3_seed_state(0.5, 0.25, 0.25).unwrap();
        let pure = basis_state(2, 3).unwrap();
        let g = generate_outside_ball(&seed, &pure).unwrap();
        assert!((g.q_star - 16.0 / 17.0).abs() < 1e-9, "{}", g.q_star);
        assert!((g.purity - 97.0 / 289.0).abs() < 1e-8);
        assert!(g.outside_ball);
        assert_eq!(classify(&g.state).unwrap().absep_class, AbsSepClass::AbsBoundary);
        assert!(g.absep_window.iter().any(|w| w.contains(0.9)));
        assert!(!g.absep_window.iter().any(|w| w.contains(0.95)));
        // Lower end of the window: 1 − (5/4 + 1/√2) q = 0.
        let lower = 1.0 / (1.25 + core::f64::consts::FRAC_1_SQRT_2);
        assert_eq!(g.absep_window.len(), 1);
        assert!((g.absep_window[0].lo - lower).abs() < 1e-9);
    }

    #[test]
    fn outside_ball_recipe_rejections() {
        let seed = rank3_seed_state(0.5, 0.25, 0.25).unwrap();
        let overlapping = basis_state(2, 0).unwrap();
        assert!(matches!(
            generate_outside_ball(&seed, &overlapping),
            Err(Error::Precondition(_))
        ));
        let absep_seed = extreme_point(2, Frame::Seed(0)).unwrap();
        assert!(generate_outside_ball(&absep_seed, &basis_state(2, 3).unwrap()).is_err());
    }

    #[test]
    fn outside_ball_recipe_two_by_three() {
        let seed = diagonal_state(&[0.4, 0.15, 0.15, 0.15, 0.15, 0.0]).unwrap();
        let pure = basis_state(3, 5).unwrap();
        let g = generate_outside_ball(&seed, &pure).unwrap();
        // Near q = 1 the criterion is 0.25q − 2√(0.15 q(1−q)); root q = 0.6/0.6625.
        assert!((g.q_star - 0.6 / 0.6625).abs() < 1e-9);
        let r = classify(&g.state).unwrap();
        assert!(r.eq1_lhs.abs() <= 1e-9);
        assert!(g.outside_ball);
    }

    #[test]
    fn kappa_examples() {
        let m = kappa_family_spectrum(KappaFamilyParams { kappa: 2.5, lambda4: 0.1 }).unwrap();
        let expected = [0.483114, 0.25, 0.166886, 0.1];
        for (a, b) in m.spectrum.values().iter().zip(expected) {
            assert!((a - b).abs() < 1e-6);
        }
        assert!(eq1_lhs(&m.spectrum, 2).unwrap().abs() < 1e-12);

        let m2 = kappa_family_spectrum(KappaFamilyParams { kappa: 2.5, lambda4: 0.11 }).unwrap();
        assert!(eq1_lhs(&m2.spectrum, 2).unwrap().abs() < 1e-12);

        // λ₃ = 0 < λ₄: ordering violated.
        assert!(kappa_family_spectrum(KappaFamilyParams { kappa: 1.0, lambda4: 0.25 }).is_err());
        assert!(kappa_family_spectrum(KappaFamilyParams { kappa: -1.0, lambda4: 0.1 }).is_err());
    }

    #[test]
    fn kappa_mixtures() {
        let a = kappa_family_spectrum(KappaFamilyParams { kappa: 2.5, lambda4: 0.1 }).unwrap();
        let b = kappa_family_spectrum(KappaFamilyParams { kappa: 2.5, lambda4: 0.11 }).unwrap();
        let mu = kappa_family_mix(&a, &b, 0.5).unwrap();
        assert!(eq1_lhs(&mu, 2).unwrap().abs() < 1e-12);
        assert!(is_absolutely_separable(&mu, 2).unwrap());

        let near_b = kappa_family_mix(&a, &b, 1e-12).unwrap();
        let near_a = kappa_family_mix(&a, &b, 1.0 - 1e-12).unwrap();
        for (x, y) in near_b.values().iter().zip(b.spectrum.values()) {
            assert!((x - y).abs() < 1e-11);
        }
        for (x, y) in near_a.values().iter().zip(a.spectrum.values()) {
            assert!((x - y).abs() < 1e-11);
        }

        let c = kappa_family_spectrum(KappaFamilyParams { kappa: 3.0, lambda4: 0.1 }).unwrap();
        assert!(kappa_family_mix(&a, &c, 0.5).is_err());
        let raw = a.spectrum.mix_aligned(&c.spectrum, 0.5).unwrap();
        assert!(eq1_lhs(&raw, 2).unwrap().abs() > 1e-6);
    }

    #[test]
    fn rank3_psi_examples() {
        for (x, phi) in [(0.0, 0.0), (PI / 2.0, 0.0), (1.3, 2.0), (PI, 5.0)] {
            let rho = rank3_psi_state(PureStateParams::new(x, phi).unwrap());
            let r = classify(&rho).unwrap();
            for (a, b) in r.spectrum.values().iter().zip([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0]) {
                assert!((a - b).abs() < 1e-12);
            }
            assert!(r.is_extreme_certified);
            validate(&rho);
        }
        let third = 1.0 / 3.0;
        let at_zero = rank3_psi_state(PureStateParams::new(0.0, 0.0).unwrap());
        assert!(at_zero
            .matrix()
            .max_abs_diff(&ComplexMatrix::from_diagonal(&[third, third, third, 0.0]))
            < 1e-16);
        let at_half_pi = rank3_psi_state(PureStateParams::new(PI / 2.0, 0.0).unwrap());
        assert!(at_half_pi.matrix().max_abs_diff(at_zero.matrix()) > 0.1);
    }
}
