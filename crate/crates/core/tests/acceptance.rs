//! Acceptance gate: one pass/fail line per criterion, nonzero exit on any
//! failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use circle_toa::screen::{
    absorption_probabilities, average_arrival_time, doubling_ladder, pov_elements, reflector,
    screen_projector, survival_operator, zeno_limit_scan, zeno_time, MeasureKind,
};
use circle_toa::spectral::{
    eigendecompose_hermitian, hilbert_schmidt_norm, time_translation_report, Propagator,
    NON_INVARIANCE_DELTA,
};
use circle_toa::{
    build_operator_wwsc, build_symmetric_closed_form, free_hamiltonian, AbsorberMode,
    BasisTruncation, Complex, ComplexMatrix, HermitianOperator, OrderingKernel, Params,
    QuadratureSpec, Regulator, ScreenConfig, State,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn closed_form(n_max: usize, g: f64) -> Result<HermitianOperator<f64>, String> {
    let b = BasisTruncation::new(n_max).map_err(err)?;
    build_symmetric_closed_form(
        &Regulator::constant(g),
        b,
        &Params::natural(),
        &QuadratureSpec::default(),
    )
    .map_err(err)
}

fn packet(n_max: usize) -> Result<State, String> {
    let b = BasisTruncation::new(n_max).map_err(err)?;
    State::gaussian_packet(b, 5.0, 3.0, -PI / 2.0).map_err(err)
}

fn closed_form_fidelity() -> Outcome {
    let zero = closed_form(4, 0.0)?;
    let c = 0.8;
    let shifted = closed_form(4, c)?;
    let cases = [
        ("(1,2)", zero.element(1, 2), Complex::new(0.0, 0.75)),
        ("(3,3)", zero.element(3, 3), Complex::new(PI / 3.0, 0.0)),
        ("(2,0)", zero.element(2, 0), Complex::new(0.0, -0.125)),
        ("(0,0) g=c", shifted.element(0, 0), Complex::new(c, 0.0)),
    ];
    let mut worst = 0.0f64;
    for (name, got, want) in cases {
        let got = got.ok_or(format!("{name} missing"))?;
        let d = (got - want).norm();
        if d.is_nan() || d > 1e-12 {
            return Err(format!("{name}: got {got}, expected {want}"));
        }
        worst = worst.max(d);
    }
    Ok(format!("max deviation {worst:.1e}"))
}

fn quantization_cross_validation() -> Outcome {
    let start = Instant::now();
    let b = BasisTruncation::new(8).map_err(err)?;
    let p = Params::natural();
    let quad = QuadratureSpec::gauss_legendre(4096);
    let mut worst = 0.0f64;
    for g in [0.0, 1.0] {
        let g = Regulator::constant(g);
        let a = build_operator_wwsc(&OrderingKernel::Symmetric, &g, b, &p, &quad).map_err(err)?;
        let c = build_symmetric_closed_form(&g, b, &p, &quad).map_err(err)?;
        worst = worst.max(a.matrix().max_abs_diff(c.matrix()));
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst <= 1e-8 && secs < 60.0,
        format!("max entry difference {worst:.2e}, {secs:.2} s"),
    )
}

fn self_adjoint_hilbert_schmidt() -> Outcome {
    let small = closed_form(64, 0.0)?;
    let large = closed_form(128, 0.0)?;
    let b = BasisTruncation::new(16).map_err(err)?;
    let weyl = build_operator_wwsc(
        &OrderingKernel::Weyl,
        &Regulator::zero(),
        b,
        &Params::natural(),
        &QuadratureSpec::default(),
    )
    .map_err(err)?;
    let raw_residual = [
        closed_form(32, 1.0)?.source_residual(),
        large.source_residual(),
        weyl.source_residual(),
    ]
    .into_iter()
    .fold(0.0f64, f64::max);
    let hs_small = hilbert_schmidt_norm(&small).powi(2);
    let hs_large = hilbert_schmidt_norm(&large).powi(2);
    let growth = (hs_large - hs_small) / hs_small;
    check(
        raw_residual <= 1e-10 && growth < 0.02,
        format!("Hermiticity residual {raw_residual:.1e}; HS^2 {hs_small:.6} -> {hs_large:.6} (+{:.3}%)", growth * 100.0),
    )
}

fn spectral_claims() -> Outcome {
    let mut notes = Vec::new();
    for g in [0.0, 1.0] {
        let d = eigendecompose_hermitian(&closed_form(32, g)?).map_err(err)?;
        let census = d.sign_census(1e-12);
        notes.push(format!("g={g}: +{} -{}", census.positive, census.negative));
        if census.positive == 0 || census.negative == 0 {
            return Err(notes.join("; "));
        }
    }
    let d64 = eigendecompose_hermitian(&closed_form(64, 0.0)?).map_err(err)?;
    let d128 = eigendecompose_hermitian(&closed_form(128, 0.0)?).map_err(err)?;
    let mut same = true;
    for lambda in [0.25, 0.5, 1.0] {
        let a = d64.count_above(lambda).map_err(err)?;
        let b = d128.count_above(lambda).map_err(err)?;
        notes.push(format!("#|tau|>{lambda}: {a} vs {b}"));
        same &= a == b;
    }
    check(same, notes.join("; "))
}

fn time_translation() -> Outcome {
    let op = closed_form(16, 0.0)?;
    let d = eigendecompose_hermitian(&op).map_err(err)?;
    let h = free_hamiltonian(op.basis(), &Params::natural()).map_err(err)?;
    let r = time_translation_report(&d, &h, 1.0, &Params::natural()).map_err(err)?;
    let witnesses = r.non_invariant(NON_INVARIANCE_DELTA).len();
    let min = r.min_max_overlap();
    let dev = r.max_sum_deviation();
    check(
        min <= 0.999 && dev <= 1e-8,
        format!("min max-overlap {min:.4} ({witnesses} witnesses); row-sum deviation {dev:.1e}"),
    )
}

fn zeno_limit() -> Outcome {
    let psi = packet(32)?;
    let p = Params::natural();
    let cfg = ScreenConfig::new((-0.2, 0.2), 1.0, 1, AbsorberMode::Projector).map_err(err)?;
    let e = screen_projector(&cfg, psi.basis()).map_err(err)?;
    let h = free_hamiltonian(psi.basis(), &p).map_err(err)?;
    let scan = zeno_limit_scan(&psi, &e, &h, &p, 1.0, &doubling_ladder(256)).map_err(err)?;
    let last = scan.last().map(|r| r.probability).unwrap_or(f64::NAN);
    let table: Vec<String> = scan
        .rows
        .iter()
        .map(|r| format!("{}:{:.2e}", r.steps, r.probability))
        .collect();
    let onset = scan
        .monotone_onset()
        .map_or("none".to_string(), |n| n.to_string());
    check(
        scan.nonincreasing_from(4) && last < 1e-3,
        format!(
            "P_n = [{}]; nonincreasing from n = {onset}",
            table.join(", ")
        ),
    )
}

fn pov_structure() -> Outcome {
    let psi = packet(16)?;
    let p = Params::natural();
    let b = psi.basis();
    let j_max = 10;
    let cfg = ScreenConfig::new((-0.2, 0.2), 0.1, j_max, AbsorberMode::Projector).map_err(err)?;
    let e = screen_projector(&cfg, b).map_err(err)?;
    let ep = reflector(&e, &cfg, &p).map_err(err)?;
    let h = free_hamiltonian(b, &p).map_err(err)?;
    let prop = Propagator::new(&h, &p).map_err(err)?;
    let rec = absorption_probabilities(&psi, &e, &ep, &h, &cfg, &p).map_err(err)?;
    let f = pov_elements(&e, &ep, &prop, cfg.eta, j_max + 1).map_err(err)?;

    let mut min_eig = f64::INFINITY;
    let mut p_dev = 0.0f64;
    let mut sum = ComplexMatrix::zeros(b.dimension());
    for (j, fj) in f.iter().enumerate() {
        let d = eigendecompose_hermitian(fj).map_err(err)?;
        min_eig = min_eig.min(*d.eigenvalues().last().unwrap());
        p_dev = p_dev.max((fj.expectation(psi.amplitudes()) - rec.probabilities[j]).abs());
        sum = sum.add(fj.matrix());
    }
    let total = sum.add(&survival_operator(&ep, &prop, cfg.eta, j_max + 1));
    let completeness = total.max_abs_diff(&ComplexMatrix::identity(b.dimension()));
    check(
        min_eig >= -1e-9 && p_dev <= 1e-9 && completeness <= 1e-8,
        format!(
            "dim {}: min eigenvalue {min_eig:.1e}, |<F_j> - P_j| {p_dev:.1e}, completeness {completeness:.1e}",
            b.dimension()
        ),
    )
}

fn circle_completeness() -> Outcome {
    let psi = packet(32)?;
    let p = Params::natural();
    let eta = 0.1;
    let period = 2.0 * PI / 5.0;
    let steps = (20.0 * period / eta).ceil() as usize;
    let absorber = AbsorberMode::ComplexPotential {
        v0: 5.0 * p.hbar / eta,
    };
    let cfg = ScreenConfig::new((-0.2, 0.2), eta, steps, absorber).map_err(err)?;
    let e = screen_projector(&cfg, psi.basis()).map_err(err)?;
    let ep = reflector(&e, &cfg, &p).map_err(err)?;
    let h = free_hamiltonian(psi.basis(), &p).map_err(err)?;
    let rec = absorption_probabilities(&psi, &e, &ep, &h, &cfg, &p).map_err(err)?;
    let total = rec.total();
    let (tau, kind) = average_arrival_time(&rec).map_err(err)?;
    let plain = rec.unnormalized_mean();
    let normalized = rec.normalized_mean().map_err(err)?;
    let rel = (plain - normalized).abs() / normalized.abs();
    let reached = if total >= 0.99 {
        String::new()
    } else {
        // how much longer the chain must run to cross the threshold
        let long = ScreenConfig::new(cfg.arc, eta, 5 * steps, cfg.absorber.clone()).map_err(err)?;
        let rec = absorption_probabilities(&psi, &e, &ep, &h, &long, &p).map_err(err)?;
        match rec.cumulative().iter().position(|&c| c >= 0.99) {
            Some(j) => format!(
                "; sum P reaches 0.99 at J = {j} ({:.1} periods)",
                j as f64 * eta / period
            ),
            None => format!(
                "; sum P = {:.5} after {:.0} periods",
                rec.total(),
                5.0 * steps as f64 * eta / period
            ),
        }
    };
    check(
        total >= 0.99 && kind == MeasureKind::Pov && rel <= 0.011,
        format!(
            "J = {steps} ({:.1} periods): sum P = {total:.5}, <tau> = {tau:.4} ({kind}), normalized {normalized:.4}, rel. diff {:.3}%{reached}",
            steps as f64 * eta / period,
            rel * 100.0
        ),
    )
}

fn zeno_time_oracle() -> Outcome {
    let b = BasisTruncation::new(2).map_err(err)?;
    let p = Params::natural();
    let h = free_hamiltonian(b, &p).map_err(err)?;
    let one = Complex::new(1.0, 0.0);
    let psi = State::superposition(b, &[(0, one), (1, one)]).map_err(err)?;
    let tau = zeno_time(&psi, &h, &p).map_err(err)?;
    let eig = zeno_time(&State::basis_state(b, 2).map_err(err)?, &h, &p).map_err(err)?;
    check(
        (tau - 4.0).abs() <= 1e-12 && eig.is_infinite(),
        format!("tau_z = {tau}, eigenstate -> {eig}"),
    )
}

fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix<f64> {
    let mut m = ComplexMatrix::zeros(dim);
    for r in 0..dim {
        m[(r, r)] = Complex::new(rng.gen_range(-1.0..1.0), 0.0);
        for c in r + 1..dim {
            let z = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(r, c)] = z;
            m[(c, r)] = z.conj();
        }
    }
    m
}

fn eigensolver_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut dims = vec![3, 5, 9, 17, 33, 65, 129, 257];
    dims.extend((0..12).map(|_| 2 * rng.gen_range(1..=128) + 1));
    let (mut ortho, mut recon, mut frob) = (0.0f64, 0.0f64, 0.0f64);
    for dim in dims {
        let b = BasisTruncation::from_dimension(dim).map_err(err)?;
        let a = HermitianOperator::new(b, random_hermitian(&mut rng, dim)).map_err(err)?;
        let d = eigendecompose_hermitian(&a).map_err(err)?;
        ortho = ortho.max(d.orthonormality_residual());
        recon = recon.max(d.reconstruction_residual(&a));
        let hs = hilbert_schmidt_norm(&a);
        frob = frob.max((hs - d.spectral_norm_l2()).abs() / hs);
    }
    check(
        ortho <= 1e-9 && recon <= 1e-8 && frob <= 1e-8,
        format!("orthonormality {ortho:.1e}, reconstruction {recon:.1e}, norm identity {frob:.1e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closed-form fidelity", closed_form_fidelity),
        (
            "quantization cross-validation",
            quantization_cross_validation,
        ),
        (
            "self-adjointness and Hilbert-Schmidt tail",
            self_adjoint_hilbert_schmidt,
        ),
        ("sign census and accumulation at zero", spectral_claims),
        ("time-translation non-invariance", time_translation),
        ("Zeno limit", zeno_limit),
        ("POV structure", pov_structure),
        ("circle completeness", circle_completeness),
        ("Zeno time oracle", zeno_time_oracle),
        ("eigensolver contract", eigensolver_contract),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
