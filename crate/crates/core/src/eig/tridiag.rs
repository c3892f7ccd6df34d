//! Implicit-shift QL on a symmetric tridiagonal matrix, eigenvalues only.

use crate::error::{Error, Result};

/// Overwrites `diag` with the eigenvalues (unsorted). `off[i]` couples
/// `i` and `i + 1`; it must have length `diag.len() - 1` (or be empty) and
/// is destroyed.
pub fn ql_eigenvalues(
    diag: &mut [f64],
    off: &mut [f64],
    tol: f64,
    max_iterations: usize,
) -> Result<()> {
    let n = diag.len();
    if n <= 1 {
        return Ok(());
    }
    debug_assert_eq!(off.len(), n - 1);
    // Work on a copy padded with a trailing zero so e[m] is always defined.
    let mut e = Vec::with_capacity(n);
    e.extend_from_slice(off);
    e.push(0.0);
    let d = diag;

    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let scale = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= tol * scale || e[m].abs() < f64::MIN_POSITIVE {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iterations == max_iterations {
                return Err(Error::Convergence {
                    index: l,
                    iterations,
                });
            }
            iterations += 1;

            // Wilkinson shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    off.fill(0.0);
    Ok(())
}
