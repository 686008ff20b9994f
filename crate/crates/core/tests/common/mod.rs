#![allow(dead_code)]

use circle_toa::{Complex, ComplexMatrix};
use rand::Rng;

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations on its real
/// symmetric embedding [[Re, -Im], [Im, Re]], whose spectrum is that of the
/// original with every value doubled. Sorted descending.
pub fn jacobi_eigenvalues(a: &ComplexMatrix<f64>) -> Vec<f64> {
    let n = a.dim();
    let m = 2 * n;
    let mut s = vec![vec![0.0; m]; m];
    for r in 0..n {
        for c in 0..n {
            let z = a[(r, c)];
            s[r][c] = z.re;
            s[r + n][c + n] = z.re;
            s[r][c + n] = -z.im;
            s[r + n][c] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| s[i][j] * s[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                if s[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (s[q][q] - s[p][p]) / (2.0 * s[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for row in s.iter_mut() {
                    let (skp, skq) = (row[p], row[q]);
                    row[p] = c * skp - sn * skq;
                    row[q] = sn * skp + c * skq;
                }
                let (head, tail) = s.split_at_mut(q);
                let (rp, rq) = (&mut head[p], &mut tail[0]);
                for (x, y) in rp.iter_mut().zip(rq.iter_mut()) {
                    let (spk, sqk) = (*x, *y);
                    *x = c * spk - sn * sqk;
                    *y = sn * spk + c * sqk;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..m).map(|i| s[i][i]).collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    values.into_iter().step_by(2).collect()
}

pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix<f64> {
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

pub fn random_state<R: Rng>(rng: &mut R, dim: usize) -> Vec<Complex<f64>> {
    let v: Vec<Complex<f64>> = (0..dim)
        .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / n).collect()
}
