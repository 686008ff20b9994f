//! Quadrature rules on the circle (-pi, pi] and Fourier coefficients.
//!
//! Integrands met here are periodic but often only piecewise smooth (the
//! classical arrival time jumps at the screen). A rule is therefore built
//! per smooth piece between caller-supplied breakpoints; on each piece the
//! chosen scheme is applied with an equal share of the node budget.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadratureScheme {
    /// Uniform midpoint grid. Spectrally accurate for smooth periodic
    /// integrands over the whole circle; second order on sub-pieces.
    TrapezoidPeriodic,
    /// Gauss-Legendre on each smooth piece.
    GaussLegendre,
}

impl QuadratureScheme {
    pub fn name(&self) -> &'static str {
        match self {
            Self::TrapezoidPeriodic => "trapezoid-periodic",
            Self::GaussLegendre => "gauss-legendre",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "trapezoid-periodic" | "trapezoid" => Some(Self::TrapezoidPeriodic),
            "gauss-legendre" | "gl" => Some(Self::GaussLegendre),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadratureSpec {
    pub scheme: QuadratureScheme,
    pub nodes: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            scheme: QuadratureScheme::GaussLegendre,
            nodes: 2048,
        }
    }
}

impl QuadratureSpec {
    pub fn new(scheme: QuadratureScheme, nodes: usize) -> Self {
        Self { scheme, nodes }
    }

    pub fn gauss_legendre(nodes: usize) -> Self {
        Self::new(QuadratureScheme::GaussLegendre, nodes)
    }

    pub fn trapezoid(nodes: usize) -> Self {
        Self::new(QuadratureScheme::TrapezoidPeriodic, nodes)
    }

    /// Enforces `nodes >= 4 * dimension`.
    pub fn check_anti_aliasing(&self, dimension: usize) -> Result<()> {
        let required = 4 * dimension;
        if self.nodes < required {
            return Err(Error::InvalidQuadrature {
                nodes: self.nodes,
                required,
            });
        }
        Ok(())
    }

    /// Rule on (-pi, pi] split at `breakpoints` (values outside the open
    /// interval and duplicates are ignored).
    pub fn rule<T: Real>(&self, breakpoints: &[T]) -> Rule<T> {
        let pi = T::PI();
        let mut edges: Vec<T> = breakpoints
            .iter()
            .copied()
            .filter(|&b| b > -pi && b < pi)
            .collect();
        edges.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
        edges.dedup();
        edges.insert(0, -pi);
        edges.push(pi);

        let pieces = edges.len() - 1;
        let per_piece = (self.nodes / pieces).max(1);
        let mut rule = Rule {
            nodes: Vec::with_capacity(per_piece * pieces),
            weights: Vec::with_capacity(per_piece * pieces),
        };
        let reference = match self.scheme {
            QuadratureScheme::TrapezoidPeriodic => midpoint_reference::<T>(per_piece),
            QuadratureScheme::GaussLegendre => gauss_legendre_reference::<T>(per_piece),
        };
        let half = T::lit(0.5);
        for w in edges.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mid = (a + b) * half;
            let scale = (b - a) * half;
            for (x, wt) in reference.nodes.iter().zip(&reference.weights) {
                rule.nodes.push(mid + scale * *x);
                rule.weights.push(scale * *wt);
            }
        }
        rule
    }
}

/// Nodes and weights approximating an integral over (-pi, pi].
#[derive(Debug, Clone, PartialEq)]
pub struct Rule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> Rule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |s, (&x, &w)| s + w * f(x))
    }

    pub fn integrate_complex(&self, f: impl Fn(T) -> Complex<T>) -> Complex<T> {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(Complex::new(T::zero(), T::zero()), |s, (&x, &w)| {
                s + f(x) * w
            })
    }

    /// (1/2pi) sum_i w_i f_i e^{-i l x_i} for pre-sampled values `f_i`.
    pub fn fourier_of_samples(&self, samples: &[T], l: i64) -> Complex<T> {
        let lf = T::from_index(l);
        let acc = self
            .nodes
            .iter()
            .zip(&self.weights)
            .zip(samples)
            .fold(Complex::new(T::zero(), T::zero()), |s, ((&x, &w), &f)| {
                s + Complex::from_polar(w * f, -lf * x)
            });
        acc / (T::PI() + T::PI())
    }
}

/// Midpoint rule with `n` cells on [-1, 1].
fn midpoint_reference<T: Real>(n: usize) -> Rule<T> {
    let h = T::lit(2.0) / T::from_usize(n).expect("node count");
    let half = T::lit(0.5);
    Rule {
        nodes: (0..n)
            .map(|m| -T::one() + (T::from_usize(m).expect("index") + half) * h)
            .collect(),
        weights: vec![h; n],
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// three-term recurrence.
pub fn gauss_legendre_reference<T: Real>(n: usize) -> Rule<T> {
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = n as f64;
    // Newton runs in f64 regardless of T; nodes are rounded at the end.
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = T::lit(-x);
        nodes[n - 1 - i] = T::lit(x);
        weights[i] = T::lit(w);
        weights[n - 1 - i] = T::lit(w);
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    Rule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// (1/2pi) ∫_{-pi}^{pi} f(θ) e^{-ilθ} dθ for a smooth periodic `f`.
pub fn fourier_coefficient<T: Real>(
    f: impl Fn(T) -> T,
    l: i64,
    quad: &QuadratureSpec,
) -> Complex<T> {
    fourier_coefficient_piecewise(f, &[], l, quad)
}

/// Same as [`fourier_coefficient`] for an `f` that is smooth between the
/// given breakpoints.
pub fn fourier_coefficient_piecewise<T: Real>(
    f: impl Fn(T) -> T,
    breakpoints: &[T],
    l: i64,
    quad: &QuadratureSpec,
) -> Complex<T> {
    let rule = quad.rule(breakpoints);
    let samples: Vec<T> = rule.nodes.iter().map(|&x| f(x)).collect();
    rule.fourier_of_samples(&samples, l)
}
