use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use circle_toa::io::{
    fmt_float, read_operator, read_run_record, write_operator, write_run_record, write_spectrum,
    OperatorHeader,
};
use circle_toa::screen::{
    absorption_probabilities, doubling_ladder, reflector, screen_projector, zeno_limit_scan,
    zeno_time, POV_TOLERANCE,
};
use circle_toa::spectral::{eigendecompose_hermitian, hilbert_schmidt_norm};
use circle_toa::{
    build_operator_wwsc, build_symmetric_closed_form, free_hamiltonian, AbsorberMode,
    BasisTruncation, Operator, OrderingKernel, Params, QuadratureScheme, QuadratureSpec, Record,
    Regulator, ScreenConfig, State,
};

use crate::settings::{List, Settings};
use crate::{
    BuildArgs, CliError, CompareArgs, OperatorArgs, PacketArgs, PhysicsArgs, ScreenArgs,
    SpectrumArgs, ZenoArgs,
};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn params(a: &PhysicsArgs, s: &Settings) -> Result<Params, CliError> {
    Ok(Params::new(
        s.pick_or(a.mass, "mass", 1.0)?,
        s.pick_or(a.radius, "radius", 1.0)?,
        s.pick_or(a.hbar, "hbar", 1.0)?,
    )?)
}

/// `const:<c>` or `cos:<a>:<b>`.
pub fn parse_regulator(spec: &str) -> Result<Regulator, CliError> {
    let bad = || {
        usage(format!(
            "unknown regulator {spec:?}; use const:<c> or cos:<a>:<b>"
        ))
    };
    let (tag, rest) = spec.split_once(':').ok_or_else(bad)?;
    match tag {
        "const" => rest.parse().map(Regulator::constant).map_err(|_| bad()),
        "cos" => {
            let (a, b) = rest.split_once(':').ok_or_else(bad)?;
            let a: f64 = a.parse().map_err(|_| bad())?;
            let b: f64 = b.parse().map_err(|_| bad())?;
            Ok(Regulator::custom(spec, move |t: f64| a + b * t.cos()))
        }
        _ => Err(bad()),
    }
}

struct OperatorSetup {
    basis: BasisTruncation,
    g: Regulator,
    quad: QuadratureSpec,
    params: Params,
}

fn operator_setup(
    a: &OperatorArgs,
    s: &Settings,
    default_nodes: usize,
) -> Result<OperatorSetup, CliError> {
    let basis = BasisTruncation::new(s.require(a.nmax, "nmax")?)?;
    let g = parse_regulator(&s.pick_or(a.g.clone(), "g", "const:0".to_string())?)?;
    let scheme_name = s.pick_or(
        a.quadrature.clone(),
        "quadrature",
        "gauss-legendre".to_string(),
    )?;
    let scheme = QuadratureScheme::parse(&scheme_name)
        .ok_or_else(|| usage(format!("unknown quadrature {scheme_name:?}")))?;
    let nodes = s.pick_or(a.nodes, "nodes", default_nodes.max(4 * basis.dimension()))?;
    Ok(OperatorSetup {
        basis,
        g,
        quad: QuadratureSpec::new(scheme, nodes),
        params: params(&a.physics, s)?,
    })
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| usage(format!("cannot create {}: {e}", path.display())))
}

pub fn build(a: &BuildArgs, s: &Settings) -> Result<(), CliError> {
    let setup = operator_setup(&a.op, s, 2048)?;
    let kernel_name = s.pick_or(a.kernel.clone(), "kernel", "symmetric".to_string())?;
    let kernel = OrderingKernel::parse(&kernel_name)
        .ok_or_else(|| usage(format!("unknown kernel {kernel_name:?}")))?;
    let method = s.pick_or(a.method.clone(), "method", "quadrature".to_string())?;
    let op = match method.as_str() {
        "quadrature" => {
            build_operator_wwsc(&kernel, &setup.g, setup.basis, &setup.params, &setup.quad)?
        }
        "closed-form" => {
            if !matches!(kernel, OrderingKernel::Symmetric) {
                return Err(usage(
                    "the closed form exists only for the symmetric kernel",
                ));
            }
            build_symmetric_closed_form(&setup.g, setup.basis, &setup.params, &setup.quad)?
        }
        other => {
            return Err(usage(format!(
                "unknown method {other:?}; use quadrature or closed-form"
            )))
        }
    };
    let out = s.pick_or(a.out.clone(), "out", PathBuf::from("operator.txt"))?;
    let header = OperatorHeader::new(
        setup.basis,
        setup.params,
        kernel.name(),
        setup.g.description(),
    );
    let mut w = create(&out)?;
    write_operator(&mut w, &header, &op)?;
    w.flush()?;
    println!("hermiticity residual {:.3e}", op.source_residual());
    println!(
        "hilbert-schmidt norm {}",
        fmt_float(hilbert_schmidt_norm(&op))
    );
    println!("wrote {} ({} x {})", out.display(), op.dim(), op.dim());
    Ok(())
}

fn load_operator(path: &Path) -> Result<(OperatorHeader<f64>, Operator), CliError> {
    let f = File::open(path).map_err(|e| usage(format!("cannot open {}: {e}", path.display())))?;
    read_operator(BufReader::new(f)).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn spectrum(a: &SpectrumArgs, s: &Settings) -> Result<(), CliError> {
    let path: PathBuf = s.require(a.operator.clone(), "operator")?;
    let (header, op) = load_operator(&path)?;
    let d = eigendecompose_hermitian(&op)?;
    let out = s.pick_or(a.out.clone(), "out", PathBuf::from("spectrum.txt"))?;
    let mut w = create(&out)?;
    write_spectrum(&mut w, &header, d.eigenvalues())?;
    w.flush()?;

    let zero_tol = s.pick_or(a.zero_tol, "zero-tol", 1e-12)?;
    let census = d.sign_census(zero_tol);
    println!(
        "eigenvalues {}: positive {}, negative {}, zero {}",
        d.eigenvalues().len(),
        census.positive,
        census.negative,
        census.zero
    );
    let first = d.eigenvalues().first().copied().unwrap_or(f64::NAN);
    let last = d.eigenvalues().last().copied().unwrap_or(f64::NAN);
    println!("range [{}, {}]", fmt_float(last), fmt_float(first));
    let lambdas = s.pick_or(a.lambda.clone(), "lambda", List(vec![0.25, 0.5, 1.0]))?;
    println!("lambda,count_above");
    for lambda in lambdas.0 {
        println!("{lambda},{}", d.count_above(lambda)?);
    }
    println!(
        "reconstruction residual {:.3e}, orthonormality residual {:.3e}",
        d.reconstruction_residual(&op),
        d.orthonormality_residual()
    );
    if let Some(svg_path) = s.pick(a.svg.clone(), "svg")? {
        let points: Vec<(f64, f64)> = d
            .eigenvalues()
            .iter()
            .enumerate()
            .map(|(k, &t)| ((k + 1) as f64, t))
            .collect();
        let title = format!(
            "spectrum, N = {}, kernel {}, g {}",
            header.basis.n_max(),
            header.kernel,
            header.regulator
        );
        std::fs::write(&svg_path, crate::svg::scatter(&points, &title))?;
    }
    println!("wrote {}", out.display());
    Ok(())
}

struct PacketSetup {
    psi: State,
    arc: (f64, f64),
    params: Params,
    echo: Vec<(String, String)>,
}

fn packet_setup(a: &PacketArgs, s: &Settings) -> Result<PacketSetup, CliError> {
    let n_max = s.pick_or(a.nmax, "nmax", 32)?;
    let k_mean = s.pick_or(a.k_mean, "k-mean", 5.0)?;
    let spread = s.pick_or(a.spread, "spread", 3.0)?;
    let theta0 = s.pick_or(a.theta0, "theta0", -PI / 2.0)?;
    let arc = s.pick_or(a.arc.clone(), "arc", List(vec![-0.2, 0.2]))?;
    let [lo, hi] = arc.0[..] else {
        return Err(usage("--arc takes exactly two angles a,b"));
    };
    let params = params(&a.physics, s)?;
    let psi = State::gaussian_packet(BasisTruncation::new(n_max)?, k_mean, spread, theta0)?;
    let echo = [
        ("nmax", n_max.to_string()),
        ("k-mean", k_mean.to_string()),
        ("spread", spread.to_string()),
        ("theta0", theta0.to_string()),
        ("arc", format!("{lo},{hi}")),
        ("mass", params.mass.to_string()),
        ("radius", params.radius.to_string()),
        ("hbar", params.hbar.to_string()),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    Ok(PacketSetup {
        psi,
        arc: (lo, hi),
        params,
        echo,
    })
}

fn parse_absorber(spec: &str) -> Result<AbsorberMode<f64>, CliError> {
    match spec.split_once(':') {
        None if spec == "projector" => Ok(AbsorberMode::Projector),
        Some(("complex", v0)) => v0
            .parse()
            .map(|v0| AbsorberMode::ComplexPotential { v0 })
            .map_err(|_| usage(format!("bad absorbing potential {v0:?}"))),
        _ => Err(usage(format!(
            "unknown absorber {spec:?}; use projector or complex:<V0>"
        ))),
    }
}

fn emit_record(
    rec: &Record,
    echo: &[(String, String)],
    out: Option<&Path>,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let mut w = create(path)?;
            write_run_record(&mut w, rec, echo)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            write_run_record(&mut stdout.lock(), rec, echo)?;
        }
    }
    Ok(())
}

fn summary(rec: &Record, tau_z: Option<f64>) -> String {
    let tau = rec.tau_mean.map_or("undefined".to_string(), fmt_float);
    let tau_z = tau_z.map_or("n/a".to_string(), fmt_float);
    format!(
        "<tau> = {tau}, sum P = {}, mode = {}, tau_z = {tau_z}",
        fmt_float(rec.total()),
        rec.mode
    )
}

pub fn screen(a: &ScreenArgs, s: &Settings) -> Result<(), CliError> {
    let pov_tol = s.pick_or(a.pov_tol, "pov-tol", POV_TOLERANCE)?;
    let out: Option<PathBuf> = s.pick(a.out.clone(), "out")?;
    let say = |line: String| {
        if out.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    };

    if let Some(replay) = s.pick(a.replay.clone(), "replay")? {
        let rec = match replay.parse::<List<f64>>() {
            Ok(List(p)) => {
                let eta = s.require(a.eta, "eta")?;
                Record::from_probabilities(p, eta, pov_tol)?
            }
            Err(_) => {
                let f =
                    File::open(&replay).map_err(|e| usage(format!("cannot open {replay}: {e}")))?;
                let (t, p) = read_run_record(BufReader::new(f))
                    .map_err(|e| usage(format!("{replay}: {e}")))?;
                Record::from_timed_probabilities(t, p, pov_tol)?
            }
        };
        emit_record(
            &rec,
            &[("replay".to_string(), replay.clone())],
            out.as_deref(),
        )?;
        say(summary(&rec, None));
        return Ok(());
    }

    let setup = packet_setup(&a.packet, s)?;
    let eta = s.pick_or(a.eta, "eta", 0.1)?;
    let steps = s.pick_or(a.steps, "steps", 100)?;
    let absorber =
        parse_absorber(&s.pick_or(a.absorber.clone(), "absorber", "projector".to_string())?)?;
    let mut cfg = ScreenConfig::new(setup.arc, eta, steps, absorber)?
        .with_zeno_override(s.flag(a.zeno_override, "zeno-override")?);
    cfg.pov_tolerance = pov_tol;
    let b = setup.psi.basis();
    let e = screen_projector(&cfg, b)?;
    let ep = reflector(&e, &cfg, &setup.params)?;
    let h = free_hamiltonian(b, &setup.params)?;
    let tau_z = zeno_time(&setup.psi, &h, &setup.params)?;
    let rec = absorption_probabilities(&setup.psi, &e, &ep, &h, &cfg, &setup.params)?;

    let mut echo = setup.echo;
    echo.extend([
        ("eta".to_string(), eta.to_string()),
        ("steps".to_string(), steps.to_string()),
        ("absorber".to_string(), cfg.absorber.name()),
        ("pov-tol".to_string(), pov_tol.to_string()),
        ("zeno-override".to_string(), cfg.override_zeno.to_string()),
        ("tau_z".to_string(), fmt_float(tau_z)),
    ]);
    emit_record(&rec, &echo, out.as_deref())?;
    say(summary(&rec, Some(tau_z)));
    Ok(())
}

pub fn zeno(a: &ZenoArgs, s: &Settings) -> Result<(), CliError> {
    let setup = packet_setup(&a.packet, s)?;
    let time = s.pick_or(a.time, "time", 1.0)?;
    let n_list = match s.pick(a.n_list.clone(), "n-list")? {
        Some(List(v)) => v,
        None => doubling_ladder(s.pick_or(a.ladder, "ladder", 256)?),
    };
    let cfg = ScreenConfig::new(setup.arc, time, 1, AbsorberMode::Projector)?;
    let b = setup.psi.basis();
    let e = screen_projector(&cfg, b)?;
    let h = free_hamiltonian(b, &setup.params)?;
    let scan = zeno_limit_scan(&setup.psi, &e, &h, &setup.params, time, &n_list)?;

    let mut table = String::from("n,step,P_n\n");
    for r in &scan.rows {
        table.push_str(&format!(
            "{},{},{}\n",
            r.steps,
            fmt_float(r.step_length),
            fmt_float(r.probability)
        ));
    }
    match s.pick::<PathBuf>(a.out.clone(), "out")? {
        Some(path) => std::fs::write(&path, &table)?,
        None => print!("{table}"),
    }
    match scan.monotone_onset() {
        Some(n) => println!("verdict: P_n nonincreasing from n = {n}"),
        None => println!("verdict: no nonincreasing tail"),
    }
    Ok(())
}

pub fn compare(a: &CompareArgs, s: &Settings) -> Result<(), CliError> {
    let setup = operator_setup(&a.op, s, 4096)?;
    let tolerance = s.pick_or(a.tolerance, "tolerance", 1e-8)?;
    let quad = build_operator_wwsc(
        &OrderingKernel::Symmetric,
        &setup.g,
        setup.basis,
        &setup.params,
        &setup.quad,
    )?;
    let closed = build_symmetric_closed_form(&setup.g, setup.basis, &setup.params, &setup.quad)?;
    let dim = setup.basis.dimension();
    let (mut worst, mut at) = (0.0f64, (0, 0));
    for r in 0..dim {
        for c in 0..dim {
            let d = (quad.matrix()[(r, c)] - closed.matrix()[(r, c)]).norm();
            if d > worst {
                worst = d;
                at = (setup.basis.momentum(r), setup.basis.momentum(c));
            }
        }
    }
    println!(
        "max |quadrature - closed form| = {worst:.3e} at (j, k) = ({}, {}); {} {} nodes",
        at.0,
        at.1,
        setup.quad.scheme.name(),
        setup.quad.nodes
    );
    if worst > tolerance {
        return Err(CliError::Numeric(format!(
            "difference {worst:.3e} exceeds {tolerance:e}"
        )));
    }
    Ok(())
}
