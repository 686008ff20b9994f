mod common;

use std::f64::consts::PI;

use circle_toa::screen::{
    absorption_chain, absorption_probabilities, pov_element, pov_elements, reflector,
    screen_projector, survival_operator, total_probability_bound, zeno_limit_scan,
};
use circle_toa::spectral::{eigendecompose_hermitian, Propagator};
use circle_toa::{
    free_hamiltonian, AbsorberMode, BasisTruncation, ComplexMatrix, Params, ScreenConfig, State,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arc() -> impl Strategy<Value = (f64, f64)> {
    // wide enough to hold a grid point of the coarsest basis used below
    (0.8f64..3.0).prop_flat_map(|w| (-PI..PI - w).prop_map(move |a| (a, a + w)))
}

fn absorber() -> impl Strategy<Value = AbsorberMode<f64>> {
    prop_oneof![
        Just(AbsorberMode::Projector),
        (0.5f64..50.0).prop_map(|v0| AbsorberMode::ComplexPotential { v0 }),
    ]
}

struct Setup {
    psi: State,
    cfg: ScreenConfig<f64>,
    p: Params,
}

impl Setup {
    fn new(
        n: usize,
        arc: (f64, f64),
        eta: f64,
        steps: usize,
        absorber: AbsorberMode<f64>,
        packet: (f64, f64, f64),
    ) -> Self {
        let b = BasisTruncation::new(n).unwrap();
        let psi = State::gaussian_packet(b, packet.0, packet.1, packet.2).unwrap();
        let cfg = ScreenConfig::new(arc, eta, steps, absorber)
            .unwrap()
            .with_zeno_override(true);
        Self {
            psi,
            cfg,
            p: Params::natural(),
        }
    }

    fn run(&self) -> circle_toa::Record {
        let b = self.psi.basis();
        let e = screen_projector(&self.cfg, b).unwrap();
        let ep = reflector(&e, &self.cfg, &self.p).unwrap();
        let h = free_hamiltonian(b, &self.p).unwrap();
        absorption_probabilities(&self.psi, &e, &ep, &h, &self.cfg, &self.p).unwrap()
    }
}

#[test]
fn full_circle_absorbs_immediately() {
    let s = Setup::new(
        8,
        (-PI, PI),
        0.3,
        10,
        AbsorberMode::Projector,
        (2.0, 1.0, 0.3),
    );
    let rec = s.run();
    assert!((rec.probabilities[0] - 1.0).abs() < 1e-13);
    assert!(rec.tau_mean.unwrap().abs() < 1e-12);
}

#[test]
fn weak_absorber_can_count_more_than_one() {
    // the screen amplitude mostly survives each weak measurement and is
    // counted again at the next one
    let s = Setup::new(
        8,
        (-0.5, 0.5),
        0.05,
        40,
        AbsorberMode::ComplexPotential { v0: 1.0 },
        (0.0, 0.3, 0.0),
    );
    let rec = s.run();
    assert!(rec.total() > 1.0);
    assert!(rec.total() <= total_probability_bound(&s.cfg, &s.p));
}

#[test]
fn custom_absorber_contraction() {
    let b = BasisTruncation::new(6).unwrap();
    let p = Params::natural();
    let psi = State::gaussian_packet(b, 3.0, 1.0, 1.0).unwrap();
    let half = ComplexMatrix::identity(13).scale_columns(&[0.5; 13]);
    let cfg = ScreenConfig::new((-0.5, 0.5), 0.2, 8, AbsorberMode::Custom(half))
        .unwrap()
        .with_zeno_override(true);
    let e = screen_projector(&cfg, b).unwrap();
    let ep = reflector(&e, &cfg, &p).unwrap();
    let h = free_hamiltonian(b, &p).unwrap();
    let rec = absorption_probabilities(&psi, &e, &ep, &h, &cfg, &p).unwrap();
    for (j, w) in rec.chain_norms.windows(2).enumerate() {
        assert!((w[1] - 0.5 * w[0]).abs() < 1e-13, "step {j}");
    }

    let expanding = ComplexMatrix::identity(13).scale_columns(&[1.1; 13]);
    let cfg = ScreenConfig::new((-0.5, 0.5), 0.2, 8, AbsorberMode::Custom(expanding)).unwrap();
    assert!(reflector(&e, &cfg, &p).is_err());
}

#[test]
fn uniform_chain_matches_general_chain() {
    let s = Setup::new(
        10,
        (-0.3, 0.4),
        0.25,
        12,
        AbsorberMode::Projector,
        (4.0, 2.0, -1.0),
    );
    let rec = s.run();
    let b = s.psi.basis();
    let e = screen_projector(&s.cfg, b).unwrap();
    let ep = reflector(&e, &s.cfg, &s.p).unwrap();
    let prop = Propagator::new(&free_hamiltonian(b, &s.p).unwrap(), &s.p).unwrap();
    let general = absorption_chain(&s.psi, &e, &ep, &prop, &rec.times, 1e-2).unwrap();
    assert_eq!(general.probabilities, rec.probabilities);
}

#[test]
fn single_step_scan_matches_chain() {
    let s = Setup::new(
        12,
        (-0.2, 0.2),
        0.7,
        1,
        AbsorberMode::Projector,
        (5.0, 3.0, -PI / 2.0),
    );
    let rec = s.run();
    let b = s.psi.basis();
    let e = screen_projector(&s.cfg, b).unwrap();
    let h = free_hamiltonian(b, &s.p).unwrap();
    let scan = zeno_limit_scan(&s.psi, &e, &h, &s.p, 0.7, &[1]).unwrap();
    assert!((scan.rows[0].probability - rec.probabilities[1]).abs() < 1e-14);
}

#[test]
fn pov_elements_batch_matches_single() {
    let s = Setup::new(
        6,
        (-0.4, 0.9),
        0.3,
        4,
        AbsorberMode::ComplexPotential { v0: 10.0 },
        (1.0, 1.0, 0.0),
    );
    let b = s.psi.basis();
    let e = screen_projector(&s.cfg, b).unwrap();
    let ep = reflector(&e, &s.cfg, &s.p).unwrap();
    let prop = Propagator::new(&free_hamiltonian(b, &s.p).unwrap(), &s.p).unwrap();
    let batch = pov_elements(&e, &ep, &prop, s.cfg.eta, 5).unwrap();
    for (j, f) in batch.iter().enumerate() {
        let single = pov_element(&e, &ep, &prop, s.cfg.eta, j).unwrap();
        assert!(f.matrix().max_abs_diff(single.matrix()) < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn probability_bounds(
        arc in arc(),
        eta in 0.05f64..1.0,
        absorber in absorber(),
        k in -6.0f64..6.0,
        s in 0.5f64..4.0,
        theta0 in -PI..PI,
    ) {
        let setup = Setup::new(12, arc, eta, 30, absorber, (k, s, theta0));
        let rec = setup.run();
        for &p in &rec.probabilities {
            prop_assert!((0.0..=1.0).contains(&p));
        }
        let bound = total_probability_bound(&setup.cfg, &setup.p);
        prop_assert!(rec.total() <= bound + 1e-9);
        if matches!(setup.cfg.absorber, AbsorberMode::Projector) {
            prop_assert!(rec.total() <= 1.0 + 1e-9);
            prop_assert!((rec.survival - (rec.chain_norms.last().unwrap().powi(2) - rec.probabilities.last().unwrap())).abs() < 1e-9);
        }
        for w in rec.chain_norms.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-12);
        }
    }

    #[test]
    fn pov_expectation_matches_chain(
        arc in arc(),
        eta in 0.05f64..1.0,
        absorber in absorber(),
        k in -6.0f64..6.0,
        seed in any::<u64>(),
    ) {
        let setup = Setup::new(8, arc, eta, 10, absorber, (k, 1.5, 0.0));
        let b = setup.psi.basis();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = State::new(b, common::random_state(&mut rng, b.dimension())).unwrap();
        let e = screen_projector(&setup.cfg, b).unwrap();
        let ep = reflector(&e, &setup.cfg, &setup.p).unwrap();
        let h = free_hamiltonian(b, &setup.p).unwrap();
        let rec = absorption_probabilities(&psi, &e, &ep, &h, &setup.cfg, &setup.p).unwrap();
        let prop = Propagator::new(&h, &setup.p).unwrap();
        for (j, f) in pov_elements(&e, &ep, &prop, eta, 11).unwrap().iter().enumerate() {
            prop_assert!((f.expectation(psi.amplitudes()) - rec.probabilities[j]).abs() <= 1e-9);
            let d = eigendecompose_hermitian(f).unwrap();
            prop_assert!(*d.eigenvalues().last().unwrap() >= -1e-9);
        }
    }

    #[test]
    fn telescoping_completeness(arc in arc(), eta in 0.05f64..1.0, n in 4usize..=16, j_max in 0usize..=10) {
        let setup = Setup::new(n, arc, eta, j_max, AbsorberMode::Projector, (0.0, 1.0, 0.0));
        let b = setup.psi.basis();
        let e = screen_projector(&setup.cfg, b).unwrap();
        let ep = reflector(&e, &setup.cfg, &setup.p).unwrap();
        let prop = Propagator::new(&free_hamiltonian(b, &setup.p).unwrap(), &setup.p).unwrap();
        let mut sum = survival_operator(&ep, &prop, eta, j_max + 1);
        for f in pov_elements(&e, &ep, &prop, eta, j_max + 1).unwrap() {
            sum = sum.add(f.matrix());
        }
        prop_assert!(sum.max_abs_diff(&ComplexMatrix::identity(b.dimension())) <= 1e-8);
    }
}
