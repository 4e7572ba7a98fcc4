use crate::error::{Error, Result};

/// Number of eigenvalues strictly below `x` (Sturm sequence count).
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let tiny = f64::MIN_POSITIVE.sqrt();
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        if q == 0.0 {
            q = tiny;
        }
        q = diag[i] - x - off[i - 1] * off[i - 1] / q;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `count` algebraically smallest eigenvalues of the symmetric tridiagonal
/// matrix with diagonal `diag` and off-diagonal `off`, ascending, by bisection.
pub fn tridiag_smallest_eigenvalues(diag: &[f64], off: &[f64], count: usize) -> Result<Vec<f64>> {
    let n = diag.len();
    if count > n {
        return Err(Error::invalid(format!(
            "requested {} eigenvalues of a {}x{} matrix",
            count, n, n
        )));
    }
    if off.len() + 1 != n && !(n == 0 && off.is_empty()) {
        return Err(Error::invalid(
            "off-diagonal length must be one less than the diagonal",
        ));
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let r = off.get(i).map_or(0.0, |v| v.abs()) + if i > 0 { off[i - 1].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let pad = 1e-14 * lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    lo -= pad;
    hi += pad;

    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        // the k-th eigenvalue lies in [a, b] with count(a) <= k < count(b)
        let mut a = out
            .last()
            .copied()
            .map_or(lo, |v: f64| v.min(hi) - pad)
            .max(lo);
        let mut b = hi;
        for _ in 0..400 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if count_below(diag, off, mid) > k {
                b = mid;
            } else {
                a = mid;
            }
            if b - a <= 1e-15 * a.abs().max(b.abs()) {
                break;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_by_three_laplacian() {
        let v = tridiag_smallest_eigenvalues(&[2.0; 3], &[-1.0; 2], 3).unwrap();
        let s = 2f64.sqrt();
        for (got, want) in v.iter().zip([2.0 - s, 2.0, 2.0 + s]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_matrix_sorts() {
        let v = tridiag_smallest_eigenvalues(&[3.0, -1.0, 2.0, 0.5], &[0.0; 3], 4).unwrap();
        for (got, want) in v.iter().zip([-1.0, 0.5, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn fifty_point_laplacian() {
        let v = tridiag_smallest_eigenvalues(&[2.0; 50], &[-1.0; 49], 50).unwrap();
        for (k, got) in v.iter().enumerate() {
            let want = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / 51.0).cos();
            assert!((got - want).abs() < 1e-13, "k={} {} {}", k, got, want);
        }
    }

    #[test]
    fn too_many_requested() {
        assert!(tridiag_smallest_eigenvalues(&[1.0], &[], 2).is_err());
    }
}
