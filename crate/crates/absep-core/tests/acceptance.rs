//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use absep_core::channels::{
    adc_kraus, channel_from_unitary, dilate_and_trace, dpc_kraus, pdc_kraus, ChannelKind,
};
use absep_core::constructors::{
    basis_state, diagonal_state, extreme_point, generate_outside_ball, kappa_family_mix,
    kappa_family_spectrum, Frame, KappaFamilyParams, KappaMember,
};
use absep_core::criteria::{
    classify, entanglement_status, eq1_lhs, interior_decompose, EntanglementStatus,
};
use absep_core::random::{haar_unitary, rng_from_seed, SeededRng};
use absep_core::thresholds::{
    adc_separability_condition, dpc_entanglement_curve, dpc_maximally_entangled_root,
    local_output, p_abs_threshold, p_sep_threshold, pdc_rank3_check, sweep_region, table1,
    werner_thresholds, Axis, RegionClass, SweepMode,
};
use absep_core::{DensityMatrix, Spectrum};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut SeededRng) -> Outcome>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || {
        format!("{name} = {got:.8}, expected {want:.8} within {tol:e}")
    })
}

fn err(e: absep_core::Error) -> String {
    e.to_string()
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    ensure(elapsed <= limit, || {
        format!("took {elapsed:.2?}, limit {limit:.0?}")
    })?;
    Ok(format!("{detail}; {elapsed:.2?}"))
}

fn boundary_root() -> Outcome {
    timed(Duration::from_secs(1), || {
        let seed = diagonal_state(&[0.5, 0.25, 0.25, 0.0]).map_err(err)?;
        let pure = basis_state(2, 3).map_err(err)?;
        let g = generate_outside_ball(&seed, &pure).map_err(err)?;
        close("q*", g.q_star, 16.0 / 17.0, 1e-9)?;
        let r = classify(&g.state).map_err(err)?;
        close("eq1_lhs", r.eq1_lhs, 0.0, 1e-9)?;
        close("purity", g.purity, 97.0 / 289.0, 1e-9)?;
        ensure(g.outside_ball && g.purity > 1.0 / 3.0, || "state is inside the ball".into())?;
        Ok(format!("q* = {:.12}, purity = {:.6}", g.q_star, g.purity))
    })
}

fn table_rows() -> Outcome {
    timed(Duration::from_secs(5), || {
        let rows = table1(&[0.7715, 0.33225]).map_err(err)?;
        let expected = [(0.29133, 0.36114, 0.0698), (0.21413, 0.426103, 0.21197)];
        let mut detail = Vec::new();
        for (r, (sep, abs, gap)) in rows.iter().zip(expected) {
            close("1-p_sep", r.one_minus_p_sep, sep, 2e-3)?;
            close("1-p_abs", r.one_minus_p_abs, abs, 2e-3)?;
            close("gap", r.gap, gap, 4e-3)?;
            detail.push(format!(
                "E={}: ({:.5}, {:.5}, {:.5})",
                r.input_entanglement, r.one_minus_p_sep, r.one_minus_p_abs, r.gap
            ));
        }
        Ok(detail.join("; "))
    })
}

fn maximally_entangled_coincidence() -> Outcome {
    let x = PI / 2.0;
    let p_sep = p_sep_threshold(x, ChannelKind::Dpc)
        .map_err(err)?
        .crossing()
        .ok_or("no separability crossing")?;
    let abs = p_abs_threshold(x, ChannelKind::Dpc).map_err(err)?;
    let p_abs = abs
        .iter()
        .find(|iv| iv.contains(0.25))
        .ok_or("no absolutely separable window")?
        .hi;
    close("p_sep", p_sep, dpc_maximally_entangled_root(), 1e-4)?;
    close("p_sep - p_abs", p_sep - p_abs, 0.0, 1e-3)?;
    Ok(format!("p_sep = {p_sep:.8}, p_abs = {p_abs:.8}"))
}

/// Cells where `numeric != analytic` must have a neighbour on the other
/// side of the analytic curve.
fn grid_agreement(
    kind: ChannelKind,
    analytic_entangled: impl Fn(f64, f64) -> bool,
) -> Result<usize, String> {
    let n = 200;
    let xs = Axis::linspace("x", 0.0, PI, n).map_err(err)?.values;
    let ps = Axis::linspace("p", 0.0, 1.0, n).map_err(err)?.values;
    let mut analytic = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            analytic[i * n + j] = analytic_entangled(xs[i], ps[j]);
        }
    }
    let mut mismatches = 0;
    for i in 0..n {
        for j in 0..n {
            let rho = local_output(xs[i], ps[j], kind).map_err(err)?;
            let numeric = entanglement_status(&rho).map_err(err)?.1 == EntanglementStatus::NptEntangled;
            if numeric == analytic[i * n + j] {
                continue;
            }
            mismatches += 1;
            let near_curve = (i.saturating_sub(1)..=(i + 1).min(n - 1)).any(|a| {
                (j.saturating_sub(1)..=(j + 1).min(n - 1))
                    .any(|b| analytic[a * n + b] != analytic[i * n + j])
            });
            ensure(near_curve, || {
                format!("{kind:?} mismatch away from the curve at x = {}, p = {}", xs[i], ps[j])
            })?;
        }
    }
    Ok(mismatches)
}

fn analytic_curves() -> Outcome {
    let dpc = grid_agreement(ChannelKind::Dpc, dpc_entanglement_curve)?;
    let adc = grid_agreement(ChannelKind::Adc, |x, p| !adc_separability_condition(x, p))?;
    Ok(format!("200x200 grids; cells on the curve: DPC {dpc}, ADC {adc}"))
}

fn adc_intervals() -> Outcome {
    let at_pi = p_abs_threshold(PI, ChannelKind::Adc).map_err(err)?;
    ensure(at_pi.len() == 1, || format!("x = pi: {at_pi:?}"))?;
    close("x=pi lower", at_pi[0].lo, 0.302, 1e-2)?;
    close("x=pi upper", at_pi[0].hi, 0.6998, 1e-2)?;
    let at_24 = p_abs_threshold(2.4, ChannelKind::Adc).map_err(err)?;
    ensure(at_24.len() == 1, || format!("x = 2.4: {at_24:?}"))?;
    close("x=2.4 lower", at_24[0].lo, 0.414, 1e-2)?;
    close("x=2.4 upper", at_24[0].hi, 0.586, 1e-2)?;
    let sep = p_sep_threshold(2.4, ChannelKind::Adc)
        .map_err(err)?
        .crossing()
        .ok_or("x = 2.4 has no separability crossing")?;
    close("x=2.4 crossing", sep, 0.61, 1e-2)?;
    let at_2 = p_abs_threshold(2.0, ChannelKind::Adc).map_err(err)?;
    ensure(at_2.is_empty(), || format!("x = 2.0: {at_2:?}"))?;
    Ok(format!(
        "pi: [{:.5}, {:.5}]; 2.4: [{:.5}, {:.5}], crossing {:.5}; 2.0: none",
        at_pi[0].lo, at_pi[0].hi, at_24[0].lo, at_24[0].hi, sep
    ))
}

fn werner_boundaries() -> Outcome {
    let w = werner_thresholds(0.0).map_err(err)?;
    let q_sep = w.q_sep.ok_or("noiseless Werner family never entangled")?;
    close("q_sep", q_sep, 1.0 / 3.0, 1e-6)?;
    close("q_abs", w.q_abs, 1.0 / 3.0, 1e-6)?;
    let q = Axis::linspace("q", 0.0, 1.0, 60).map_err(err)?;
    let p = Axis::linspace("p", 0.0, 1.0, 60).map_err(err)?;
    let grid = sweep_region(SweepMode::WernerPdc, q, p).map_err(err)?;
    let band = grid
        .iter()
        .filter(|&(_, p, c)| p > 0.0 && c == RegionClass::SepOnly)
        .count();
    ensure(band > 0, || "no SEP_ONLY cells with p > 0".into())?;
    let noiseless_band = grid
        .iter()
        .filter(|&(_, p, c)| p == 0.0 && c == RegionClass::SepOnly)
        .count();
    ensure(noiseless_band == 0, || format!("{noiseless_band} SEP_ONLY cells at p = 0"))?;
    Ok(format!("q_sep = {q_sep:.9}, q_abs = {:.9}, SEP_ONLY cells = {band}", w.q_abs))
}

fn extreme_points(rng: &mut SeededRng) -> Outcome {
    let mut count = 0;
    for d in [2usize, 3, 4] {
        let target = 1.0 / (2 * d - 1) as f64;
        for seed in 0..50u64 {
            let rho = extreme_point(d, Frame::Seed(1000 * d as u64 + seed)).map_err(err)?;
            let r = classify(&rho).map_err(err)?;
            close("purity", r.purity, target, 1e-10)?;
            close("eq1_lhs", r.eq1_lhs, 0.0, 1e-9)?;
            ensure(r.is_extreme_certified, || format!("d = {d}, seed {seed} not certified"))?;
            count += 1;

            // A rank-(2d-1) spectrum with unequal nonzero values.
            let mut w: Vec<f64> = (0..2 * d - 1).map(|_| 0.05 + rng.random::<f64>()).collect();
            w.push(0.0);
            let sum: f64 = w.iter().sum();
            let s = Spectrum::new(w.iter().map(|v| v / sum).collect()).map_err(err)?;
            let f = eq1_lhs(&s, d).map_err(err)?;
            ensure(f > 1e-9, || format!("unequal rank-{} spectrum passes: {f:e}", 2 * d - 1))?;
        }
    }
    Ok(format!("{count} extreme points certified"))
}

fn kappa_member(rng: &mut SeededRng, kappa: f64) -> KappaMember {
    loop {
        let lambda4 = 0.01 + 0.24 * rng.random::<f64>();
        if let Ok(m) = kappa_family_spectrum(KappaFamilyParams { kappa, lambda4 }) {
            return m;
        }
    }
}

fn family_defect(s: &Spectrum) -> f64 {
    let m = s.values();
    m[0] - m[2] - 2.0 * (m[1] * m[3]).sqrt()
}

fn kappa_family(rng: &mut SeededRng) -> Outcome {
    let mut worst_same = 0.0f64;
    let mut weakest_mixed = f64::INFINITY;
    for _ in 0..100 {
        let kappa = 1.0 + 9.0 * rng.random::<f64>();
        let (a, b) = (kappa_member(rng, kappa), kappa_member(rng, kappa));
        let x = rng.random::<f64>();
        let mix = kappa_family_mix(&a, &b, x).map_err(err)?;
        worst_same = worst_same.max(family_defect(&mix).abs());
    }
    for _ in 0..100 {
        let kappa = 1.0 + 4.0 * rng.random::<f64>();
        let other = kappa * (1.5 + 2.0 * rng.random::<f64>());
        let (a, b) = (kappa_member(rng, kappa), kappa_member(rng, other));
        let x = 0.1 + 0.8 * rng.random::<f64>();
        ensure(kappa_family_mix(&a, &b, x).is_err(), || "mismatched kappa accepted".into())?;
        let mix = a.spectrum.mix_aligned(&b.spectrum, x).map_err(err)?;
        weakest_mixed = weakest_mixed.min(family_defect(&mix).abs());
    }
    ensure(worst_same <= 1e-10, || format!("shared kappa defect {worst_same:e}"))?;
    ensure(weakest_mixed > 1e-6, || format!("mismatched kappa defect only {weakest_mixed:e}"))?;
    Ok(format!("max defect {worst_same:.1e}; min mismatched defect {weakest_mixed:.1e}"))
}

fn random_spectrum(rng: &mut SeededRng, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
    let sum: f64 = w.iter().sum();
    w.into_iter().map(|v| v / sum).collect()
}

/// Pulls a random spectrum toward `I/n` until it is strictly inside the
/// absolutely separable set.
fn interior_spectrum(rng: &mut SeededRng) -> Spectrum {
    let raw = random_spectrum(rng, 4);
    let mut t = rng.random::<f64>();
    loop {
        let s = Spectrum::new(raw.iter().map(|v| t * v + (1.0 - t) * 0.25).collect()).unwrap();
        if eq1_lhs(&s, 2).unwrap() < -1e-6 {
            return s;
        }
        t *= 0.8;
    }
}

fn interior_decompositions(rng: &mut SeededRng) -> Outcome {
    let mut worst_boundary = 0.0f64;
    let mut worst_rebuild = 0.0f64;
    for _ in 0..100 {
        let s = interior_spectrum(rng);
        let dec = interior_decompose(&s, 2).map_err(err)?;
        let l4 = s.values()[3];
        ensure(dec.epsilon > 0.0 && dec.epsilon <= l4, || {
            format!("epsilon {} outside (0, {l4}]", dec.epsilon)
        })?;
        worst_boundary = worst_boundary.max(eq1_lhs(&dec.boundary_spectrum, 2).map_err(err)?.abs());
        let w = 1.0 - 4.0 * dec.epsilon;
        for (l, sigma) in s.values().iter().zip(dec.boundary_spectrum.values()) {
            worst_rebuild = worst_rebuild.max((w * sigma + dec.epsilon - l).abs());
        }
    }
    ensure(worst_boundary <= 1e-9, || format!("boundary defect {worst_boundary:e}"))?;
    ensure(worst_rebuild <= 1e-10, || format!("reconstruction error {worst_rebuild:e}"))?;
    Ok(format!("boundary defect {worst_boundary:.1e}, reconstruction {worst_rebuild:.1e}"))
}

fn random_state(rng: &mut SeededRng, spectrum: &[f64]) -> DensityMatrix {
    let u = haar_unitary(rng, spectrum.len());
    diagonal_state(spectrum).unwrap().conjugate(&u).unwrap()
}

fn interior_state(rng: &mut SeededRng) -> DensityMatrix {
    let s = interior_spectrum(rng);
    random_state(rng, s.values())
}

fn channel_sanity(rng: &mut SeededRng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p = rng.random::<f64>();
        for k in [dpc_kraus(p), adc_kraus(p), pdc_kraus(p)] {
            worst = worst.max(k.map_err(err)?.completeness_defect());
        }
    }
    ensure(worst <= 1e-12, || format!("completeness defect {worst:e}"))?;

    let mut dilation = 0.0f64;
    for _ in 0..50 {
        let u = haar_unitary(rng, 4);
        let spectrum = random_spectrum(rng, 4);
        let rho = random_state(rng, &spectrum);
        let reduced = rho.partial_trace(absep_core::Subsystem::B);
        let k = channel_from_unitary(&u, 2).map_err(err)?;
        let direct = dilate_and_trace(&u, &reduced, 2).map_err(err)?;
        dilation = dilation.max(k.apply(&reduced).map_err(err)?.max_abs_diff(&direct));
    }
    ensure(dilation <= 1e-12, || format!("dilation mismatch {dilation:e}"))?;

    for _ in 0..50 {
        let x = 0.05 + (PI - 0.1) * rng.random::<f64>();
        let phi = 2.0 * PI * rng.random::<f64>();
        let p = 0.05 + 0.9 * rng.random::<f64>();
        let r = pdc_rank3_check(x, phi, p).map_err(err)?;
        ensure(r.rank == 4 && r.eq1_lhs <= 1e-9, || {
            format!("x = {x}, p = {p}: rank {}, eq1_lhs {:e}", r.rank, r.eq1_lhs)
        })?;
    }
    for x in [0.0, PI] {
        for _ in 0..10 {
            let phi = 2.0 * PI * rng.random::<f64>();
            let r = pdc_rank3_check(x, phi, rng.random::<f64>()).map_err(err)?;
            ensure(r.max_change <= 1e-12, || format!("x = {x}: changed by {:e}", r.max_change))?;
        }
    }
    Ok(format!("completeness {worst:.1e}, dilation {dilation:.1e}"))
}

fn is_npt(rho: &DensityMatrix) -> bool {
    entanglement_status(rho).unwrap().1 == EntanglementStatus::NptEntangled
}

fn convexity(rng: &mut SeededRng) -> Outcome {
    for _ in 0..200 {
        let a = interior_state(rng);
        let b = interior_state(rng);
        let x = rng.random::<f64>();
        let mix = a.mix(&b, x).map_err(err)?;
        let f = eq1_lhs(&mix.spectrum().map_err(err)?, 2).map_err(err)?;
        ensure(f <= 1e-9, || format!("mixture leaves the set: {f:e}"))?;
    }

    for _ in 0..20 {
        let rho = interior_state(rng);
        for _ in 0..1000 {
            let u = haar_unitary(rng, 4);
            ensure(!is_npt(&rho.conjugate(&u).map_err(err)?), || {
                "absolutely separable state became NPT".into()
            })?;
        }
    }

    // Diagonal states are separable; these are not absolutely separable.
    let mut witnessed = 0;
    let mut tried = 0;
    while tried < 20 {
        let s = random_spectrum(rng, 4);
        let rho = diagonal_state(&s).map_err(err)?;
        if eq1_lhs(&rho.spectrum().map_err(err)?, 2).map_err(err)? <= 1e-3 {
            continue;
        }
        tried += 1;
        if (0..1000).any(|_| is_npt(&rho.conjugate(&haar_unitary(rng, 4)).unwrap())) {
            witnessed += 1;
        }
    }
    Ok(format!(
        "200 mixtures stay inside; 20x1000 unitaries never entangle; \
         NPT found for {witnessed}/20 separable non-absolutely-separable states (reported)"
    ))
}

fn main() -> ExitCode {
    let mut rng = rng_from_seed(20_240_531);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("boundary root of the mixing recipe", Box::new(|_| boundary_root())),
        ("depolarizing threshold table", Box::new(|_| table_rows())),
        ("maximally entangled coincidence", Box::new(|_| maximally_entangled_coincidence())),
        ("closed-form curves vs partial transpose", Box::new(|_| analytic_curves())),
        ("amplitude damping windows", Box::new(|_| adc_intervals())),
        ("Werner boundaries", Box::new(|_| werner_boundaries())),
        ("extreme points", Box::new(extreme_points)),
        ("kappa family closure", Box::new(kappa_family)),
        ("interior decomposition", Box::new(interior_decompositions)),
        ("channel sanity", Box::new(channel_sanity)),
        ("convexity and unitary invariance", Box::new(convexity)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        match check(&mut rng) {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
