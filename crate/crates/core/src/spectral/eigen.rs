//! Dense Hermitian eigensolver.
//!
//! Householder reduction to a complex tridiagonal matrix, a diagonal phase
//! change that makes the subdiagonal real and nonnegative, then implicit QL
//! iterations on the real symmetric tridiagonal matrix. Eigenvectors are
//! accumulated through all three stages.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;

/// Eigenvalues (unsorted) and eigenvector columns of a Hermitian matrix.
///
/// The input is assumed Hermitian; only the Hermitian part is meaningful.
pub fn hermitian_eigen<T: Real>(a: &ComplexMatrix<T>) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    let n = a.dim();
    if n == 0 {
        return Ok((Vec::new(), ComplexMatrix::zeros(0)));
    }
    let (diag, sub, q) = tridiagonalize(a);

    // D with d_0 = 1 and d_{i+1} = d_i e^{i arg(sub_i)}; D† T D is real.
    let mut phases = vec![Complex::new(T::one(), T::zero()); n];
    let mut off = vec![T::zero(); n];
    for i in 0..n - 1 {
        let r = sub[i].norm();
        off[i] = r;
        phases[i + 1] = if r > T::zero() {
            phases[i] * (sub[i] / r)
        } else {
            phases[i]
        };
    }

    let mut values = diag;
    let mut z = vec![T::zero(); n * n];
    for i in 0..n {
        z[i * n + i] = T::one();
    }
    tql2(&mut values, &mut off, &mut z, n)?;

    // V = Q D Z
    let mut qd = q;
    for (c, &ph) in phases.iter().enumerate() {
        qd.scale_column(c, ph);
    }
    let mut v = ComplexMatrix::zeros(n);
    for r in 0..n {
        for l in 0..n {
            let a = qd[(r, l)];
            if a.re == T::zero() && a.im == T::zero() {
                continue;
            }
            let zrow = &z[l * n..(l + 1) * n];
            for (c, &zz) in zrow.iter().enumerate() {
                v[(r, c)] += a * zz;
            }
        }
    }
    Ok((values, v))
}

/// Householder tridiagonalization A = Q T Q†. Returns the real diagonal of
/// T, its (complex) subdiagonal and Q.
fn tridiagonalize<T: Real>(a: &ComplexMatrix<T>) -> (Vec<T>, Vec<Complex<T>>, ComplexMatrix<T>) {
    let n = a.dim();
    let czero = Complex::new(T::zero(), T::zero());
    let two = T::lit(2.0);
    let mut w = a.clone();
    let mut q = ComplexMatrix::identity(n);
    let mut v = vec![czero; n];
    let mut p = vec![czero; n];

    for k in 0..n.saturating_sub(2) {
        let xnorm = (k + 1..n)
            .fold(T::zero(), |s, i| s + w[(i, k)].norm_sqr())
            .sqrt();
        if xnorm == T::zero() {
            continue;
        }
        let x0 = w[(k + 1, k)];
        let phase = if x0.norm() > T::zero() {
            x0 / x0.norm()
        } else {
            Complex::new(T::one(), T::zero())
        };
        let alpha = -phase * xnorm;

        v.iter_mut().for_each(|e| *e = czero);
        for i in k + 1..n {
            v[i] = w[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n)
            .fold(T::zero(), |s, i| s + v[i].norm_sqr())
            .sqrt();
        if vnorm == T::zero() {
            continue;
        }
        for e in &mut v[k + 1..] {
            *e /= vnorm;
        }

        // A <- H A H with H = I - 2 v v†, as A - 2 v w† - 2 w v†,
        // w = A v - (v† A v) v. Rows/columns below k are untouched.
        for i in k..n {
            p[i] = (k + 1..n).fold(czero, |s, l| s + w[(i, l)] * v[l]);
        }
        let kappa = (k + 1..n).fold(T::zero(), |s, i| s + (v[i].conj() * p[i]).re);
        for i in k..n {
            p[i] -= v[i] * kappa;
        }
        for i in k..n {
            for l in k..n {
                let upd = v[i] * p[l].conj() + p[i] * v[l].conj();
                w[(i, l)] -= upd * two;
            }
        }
        w[(k + 1, k)] = alpha;
        w[(k, k + 1)] = alpha.conj();
        for i in k + 2..n {
            w[(i, k)] = czero;
            w[(k, i)] = czero;
        }

        // Q <- Q H
        for r in 0..n {
            let s = (k + 1..n).fold(czero, |s, l| s + q[(r, l)] * v[l]);
            for l in k + 1..n {
                q[(r, l)] -= s * v[l].conj() * two;
            }
        }
    }

    let diag = (0..n).map(|i| w[(i, i)].re).collect();
    let sub = (0..n.saturating_sub(1)).map(|i| w[(i + 1, i)]).collect();
    (diag, sub, q)
}

/// Implicit QL on a symmetric tridiagonal matrix (diagonal `d`, off-diagonal
/// `e` with e[i] coupling i and i+1, e[n-1] = 0). Eigenvectors are
/// accumulated into the row-major `z`.
fn tql2<T: Real>(d: &mut [T], e: &mut [T], z: &mut [T], n: usize) -> Result<()> {
    const MAX_ITER: usize = 64;
    let eps = T::epsilon();
    let mut f = T::zero();
    let mut tst1 = T::zero();
    e[n - 1] = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_ITER {
                    return Err(Error::NoConvergence(MAX_ITER));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (T::lit(2.0) * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let zi = z[k * n + i];
                        let zi1 = z[k * n + i + 1];
                        z[k * n + i + 1] = s * zi + c * zi1;
                        z[k * n + i] = c * zi - s * zi1;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }
    Ok(())
}
