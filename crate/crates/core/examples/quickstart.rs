use circle_toa::screen::{absorption_probabilities, reflector, screen_projector};
use circle_toa::spectral::eigendecompose_hermitian;
use circle_toa::{
    build_operator_wwsc, free_hamiltonian, AbsorberMode, BasisTruncation, OrderingKernel, Params,
    QuadratureSpec, Regulator, ScreenConfig, State,
};

fn main() -> circle_toa::Result<()> {
    let basis = BasisTruncation::new(32)?; // k = -32..=32
    let p = Params::natural();

    // Arrival-time operator, symmetric ordering, g = 0.
    let t = build_operator_wwsc(
        &OrderingKernel::Symmetric,
        &Regulator::zero(),
        basis,
        &p,
        &QuadratureSpec::gauss_legendre(4096),
    )?;
    let spec = eigendecompose_hermitian(&t)?;
    println!("largest tau = {}", spec.eigenvalues()[0]);
    println!("#|tau| > 0.5: {}", spec.count_above(0.5)?);

    // Waiting screen on the arc (-0.2, 0.2) with an absorbing potential.
    let psi = State::gaussian_packet(basis, 5.0, 3.0, -std::f64::consts::FRAC_PI_2)?;
    let cfg = ScreenConfig::new(
        (-0.2, 0.2),
        0.1,
        300,
        AbsorberMode::ComplexPotential { v0: 50.0 },
    )?;
    let e = screen_projector(&cfg, basis)?;
    let ep = reflector(&e, &cfg, &p)?;
    let h = free_hamiltonian(basis, &p)?;
    let rec = absorption_probabilities(&psi, &e, &ep, &h, &cfg, &p)?;
    println!(
        "sum P = {}, <tau> = {:?}, {}",
        rec.total(),
        rec.tau_mean,
        rec.mode
    );
    Ok(())
}
