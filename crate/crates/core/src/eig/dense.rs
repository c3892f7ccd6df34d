//! Dense symmetric kernels: Cholesky, congruence, Householder tridiagonal
//! reduction. Matrices are row-major `n × n` slices.

use crate::error::{Error, Result};

/// In-place lower Cholesky factor `A = L Lᵀ`; the strict upper triangle is
/// left untouched.
pub fn cholesky(a: &mut [f64], n: usize) -> Result<()> {
    for j in 0..n {
        let mut diag = a[j * n + j];
        for k in 0..j {
            diag -= a[j * n + k] * a[j * n + k];
        }
        if !(diag > 0.0) {
            return Err(Error::Factorization {
                index: j,
                pivot: diag,
            });
        }
        let ljj = diag.sqrt();
        a[j * n + j] = ljj;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / ljj;
        }
    }
    Ok(())
}

/// Replaces each column `x` of `b` by `L⁻¹ x`, with `L` the lower triangle
/// of `l`.
fn forward_solve_columns(l: &[f64], b: &mut [f64], n: usize) {
    for i in 0..n {
        let lii = l[i * n + i];
        let (done, rest) = b.split_at_mut(i * n);
        let row_i = &mut rest[..n];
        for k in 0..i {
            let lik = l[i * n + k];
            if lik != 0.0 {
                let row_k = &done[k * n..k * n + n];
                for (x, y) in row_i.iter_mut().zip(row_k) {
                    *x -= lik * y;
                }
            }
        }
        for x in row_i.iter_mut() {
            *x /= lii;
        }
    }
}

fn transpose_in_place(a: &mut [f64], n: usize) {
    for i in 0..n {
        for j in i + 1..n {
            a.swap(i * n + j, j * n + i);
        }
    }
}

/// `L⁻¹ K L⁻ᵀ` for the Cholesky factor `L` stored in `l`.
pub fn congruence(l: &[f64], k: &[f64], n: usize) -> Vec<f64> {
    let mut y = k.to_vec();
    forward_solve_columns(l, &mut y, n);
    transpose_in_place(&mut y, n);
    forward_solve_columns(l, &mut y, n);
    // Symmetrize away rounding asymmetry.
    for i in 0..n {
        for j in i + 1..n {
            let v = 0.5 * (y[i * n + j] + y[j * n + i]);
            y[i * n + j] = v;
            y[j * n + i] = v;
        }
    }
    y
}

/// Householder reduction of a symmetric matrix to tridiagonal form
/// `(diag, off)`, `off[i]` coupling `i` and `i + 1`. `a` is destroyed.
pub fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[i * n + k].abs()).sum();
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in j + 1..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i * n + j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    for (i, di) in d.iter_mut().enumerate() {
        *di = a[i * n + i];
    }
    // e[i] couples i-1 and i; shift to the (i, i+1) convention.
    let off = if n > 1 { e[1..].to_vec() } else { Vec::new() };
    (d, off)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_of_known_matrix() {
        let mut a = vec![4.0, 12.0, -16.0, 12.0, 37.0, -43.0, -16.0, -43.0, 98.0];
        cholesky(&mut a, 3).unwrap();
        let l = [a[0], a[3], a[4], a[6], a[7], a[8]];
        assert_eq!(l, [2.0, 6.0, 1.0, -8.0, 5.0, 3.0]);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let mut a = vec![1.0, 2.0, 2.0, 1.0];
        assert!(matches!(
            cholesky(&mut a, 2),
            Err(Error::Factorization { index: 1, .. })
        ));
    }

    #[test]
    fn tridiagonalization_preserves_invariants() {
        let n = 6;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = ((i * 7 + j * 3) % 11) as f64 - 5.0 + if i == j { 10.0 } else { 0.0 };
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
        let frob: f64 = a.iter().map(|v| v * v).sum();
        let (d, e) = tridiagonalize(&mut a.clone(), n);
        assert!((d.iter().sum::<f64>() - trace).abs() < 1e-12);
        let f2: f64 = d.iter().map(|v| v * v).sum::<f64>() + 2.0 * e.iter().map(|v| v * v).sum::<f64>();
        assert!((f2 - frob).abs() < 1e-10 * frob);
    }
}
