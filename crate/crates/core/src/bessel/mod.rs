//! Bessel functions of the first kind and their real zeros.
//!
//! Zeros come from the eigenvalues of truncated symmetric tridiagonal
//! matrices whose spectrum is `±1/j`, followed by Newton refinement.

mod tridiag;

pub use tridiag::tridiag_smallest_eigenvalues;

use crate::error::{Error, Result};

/// `J_ν(x)` for `ν > -1`, `x >= 0`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_pair(nu, x)?.0)
}

/// `J_ν'(x) = (ν/x)J_ν(x) - J_{ν+1}(x)`.
pub fn bessel_j_prime(nu: f64, x: f64) -> Result<f64> {
    let (j, j1) = bessel_pair(nu, x)?;
    if x == 0.0 {
        // J_ν'(0): 1/2 for ν = 1, 0 for ν = 0 or ν > 1
        return Ok(if nu == 1.0 {
            0.5
        } else if nu == 0.0 || nu > 1.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    Ok(nu / x * j - j1)
}

/// `(J_ν(x), J_{ν+1}(x))`.
pub fn bessel_pair(nu: f64, x: f64) -> Result<(f64, f64)> {
    if !(nu > -1.0) || !nu.is_finite() {
        return Err(Error::invalid(format!(
            "Bessel order must satisfy ν > -1, got {}",
            nu
        )));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::invalid(format!(
            "Bessel argument must be finite and nonnegative, got {}",
            x
        )));
    }
    if x == 0.0 {
        return Ok((if nu == 0.0 { 1.0 } else { 0.0 }, 0.0));
    }
    if x * x < 4.0 * (nu + 1.0) || x < 1.0 {
        return Ok((series(nu, x), series(nu + 1.0, x)));
    }
    miller(nu, x)
}

/// Power series; used where its terms decrease from the first.
fn series(nu: f64, x: f64) -> f64 {
    let h = 0.5 * x;
    let lead = (nu * h.ln() - libm::lgamma(nu + 1.0)).exp();
    let q = -h * h;
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 1..500 {
        term *= q / (k as f64 * (nu + k as f64));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// Backward recurrence from far above the turning point, normalized by
/// `(x/2)^α = Σ_k c_k J_{α+2k}(x)` with `c_0 = Γ(α+1)`, `c_k = (α+2k)Γ(α+k)/k!`.
fn miller(nu: f64, x: f64) -> Result<(f64, f64)> {
    let base = nu.floor();
    let alpha = nu - base;
    let shift = base as i64;
    let top = x.max(nu) + 20.0 * x.max(1.0).cbrt() + 60.0;
    let mut n = top.ceil() as i64;
    if n % 2 != 0 {
        n += 1;
    }
    if n > 50_000_000 {
        return Err(Error::Numeric(format!(
            "Bessel recurrence too long for ν={} x={}",
            nu, x
        )));
    }
    // walk k = n, n-1, ..., 0 over orders α + k
    let (mut jp1, mut j) = (0.0f64, 1e-300f64);
    let mut norm = 0.0f64;
    let mut want = (f64::NAN, f64::NAN);
    let coef = |k: i64| -> f64 {
        // c_{k/2} for even k
        let m = (k / 2) as f64;
        if k == 0 {
            libm::tgamma(alpha + 1.0)
        } else {
            (alpha + 2.0 * m) * (libm::lgamma(alpha + m) - libm::lgamma(m + 1.0)).exp()
        }
    };
    let mut k = n;
    loop {
        if k == shift + 1 {
            want.1 = j;
        }
        if k == shift {
            want.0 = j;
        }
        if k % 2 == 0 {
            norm += coef(k) * j;
        }
        if k == 0 {
            break;
        }
        let order = alpha + k as f64;
        let jm1 = 2.0 * order / x * j - jp1;
        jp1 = j;
        j = jm1;
        k -= 1;
        if j.abs() > 1e250 {
            jp1 *= 1e-250;
            j *= 1e-250;
            norm *= 1e-250;
            want.0 *= 1e-250;
            want.1 *= 1e-250;
        }
    }
    let scale = (alpha * (0.5 * x).ln()).exp() / norm;
    if shift < 0 {
        // ν = α - 1: one more step down, J_{α-1} = (2α/x)J_α - J_{α+1}
        let ja = j * scale;
        let ja1 = jp1 * scale;
        return Ok((2.0 * alpha / x * ja - ja1, ja));
    }
    Ok((want.0 * scale, want.1 * scale))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Target {
    Function,
    Derivative,
}

fn truncated_matrix(nu: f64, m: usize, target: Target) -> Vec<f64> {
    (0..m - 1)
        .map(|k| {
            let k = k as f64;
            if target == Target::Derivative && k == 0.0 {
                1.0 / (2.0 * nu * (nu + 1.0)).sqrt()
            } else {
                let a = if target == Target::Derivative {
                    nu + k
                } else {
                    nu + k + 1.0
                };
                1.0 / (2.0 * (a * (a + 1.0)).sqrt())
            }
        })
        .collect()
}

/// Largest magnitude reciprocals `-1/λ` of the `s` smallest eigenvalues,
/// with adaptive truncation size.
fn matrix_zeros(nu: f64, s: usize, target: Target) -> Result<Vec<f64>> {
    let eig = |m: usize| -> Result<Vec<f64>> {
        let off = truncated_matrix(nu, m, target);
        tridiag_smallest_eigenvalues(&vec![0.0; m], &off, s)
    };
    let mut m = 50usize.max(2 * s + 30);
    loop {
        let a = eig(m)?;
        let b = eig(m + 20)?;
        let (x, y) = (a[s - 1], b[s - 1]);
        if (x - y).abs() <= 1e-13 * y.abs() || m >= 2000 {
            if (x - y).abs() > 1e-8 * y.abs() {
                return Err(Error::Numeric(format!(
                    "zero eigenvalues did not settle at truncation {}",
                    m
                )));
            }
            return Ok(b.iter().map(|l| -1.0 / l).collect());
        }
        m = (2 * m).min(2000);
    }
}

/// Truncation size needed grows with ν; start large enough to see the zeros.
fn initial_guesses(nu: f64, s: usize, target: Target) -> Result<Vec<f64>> {
    if nu > 500.0 {
        return large_order_guesses(nu, s, target);
    }
    matrix_zeros(nu, s, target)
}

/// For very large ν the interesting eigenvectors live in a window of width
/// `O(ν^{1/3})` above index 0, so the same matrix with a wider window applies.
fn large_order_guesses(nu: f64, s: usize, target: Target) -> Result<Vec<f64>> {
    let width = (40.0 * nu.cbrt()) as usize + 4 * s + 60;
    let off = truncated_matrix(nu, width, target);
    let a = tridiag_smallest_eigenvalues(&vec![0.0; width], &off, s)?;
    let off2 = truncated_matrix(nu, width * 2, target);
    let b = tridiag_smallest_eigenvalues(&vec![0.0; width * 2], &off2, s)?;
    if (a[s - 1] - b[s - 1]).abs() > 1e-8 * b[s - 1].abs() {
        return Err(Error::Numeric(format!(
            "zero eigenvalues did not settle at truncation {}",
            width * 2
        )));
    }
    Ok(b.iter().map(|l| -1.0 / l).collect())
}

fn newton_function(nu: f64, mut z: f64) -> Result<f64> {
    for _ in 0..50 {
        let (j, j1) = bessel_pair(nu, z)?;
        let dj = nu / z * j - j1;
        let step = j / dj;
        z -= step;
        if step.abs() <= 4.0 * f64::EPSILON * z {
            break;
        }
    }
    Ok(z)
}

fn newton_derivative(nu: f64, mut z: f64) -> Result<f64> {
    for _ in 0..50 {
        let (j, j1) = bessel_pair(nu, z)?;
        let dj = nu / z * j - j1;
        let ddj = -dj / z - (1.0 - nu * nu / (z * z)) * j;
        let step = dj / ddj;
        z -= step;
        if step.abs() <= 4.0 * f64::EPSILON * z {
            break;
        }
    }
    Ok(z)
}

fn check_request(nu: f64, s: usize) -> Result<()> {
    if !(nu > -1.0) || !nu.is_finite() {
        return Err(Error::invalid(format!(
            "order must satisfy ν > -1, got {}",
            nu
        )));
    }
    if s == 0 {
        return Err(Error::invalid("zero count must be positive"));
    }
    Ok(())
}

/// First `s` positive zeros of `J_ν`, ascending.
pub fn bessel_j_zeros(nu: f64, s: usize) -> Result<Vec<f64>> {
    check_request(nu, s)?;
    initial_guesses(nu, s, Target::Function)?
        .into_iter()
        .map(|z| newton_function(nu, z))
        .collect()
}

/// First `s` positive zeros of `J_ν'`, ascending; `x = 0` is never reported.
pub fn bessel_jprime_zeros(nu: f64, s: usize) -> Result<Vec<f64>> {
    check_request(nu, s)?;
    if nu == 0.0 {
        // J_0' = -J_1
        return bessel_j_zeros(1.0, s);
    }
    if nu < 0.0 {
        return Err(Error::Unsupported(format!(
            "derivative zeros for negative order {}",
            nu
        )));
    }
    initial_guesses(nu, s, Target::Derivative)?
        .into_iter()
        .map(|z| newton_derivative(nu, z))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_at_zero_and_first_root() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert!(bessel_j(0.0, 2.404825557695772).unwrap().abs() < 1e-12);
    }

    #[test]
    fn half_order_closed_form() {
        for &x in &[0.3, std::f64::consts::FRAC_PI_2, 5.0, 40.0] {
            let want = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin();
            let got = bessel_j(0.5, x).unwrap();
            assert!(
                (got - want).abs() < 1e-13 * want.abs().max(1e-3),
                "x={} {} {}",
                x,
                got,
                want
            );
        }
    }

    #[test]
    fn known_values() {
        // J_1(1), J_5(10), J_0(30)
        let cases = [
            (1.0, 1.0, 0.44005058574493355),
            (5.0, 10.0, -0.23406152818679365),
            (0.0, 30.0, -0.08636798358104),
        ];
        for (nu, x, want) in cases {
            let got = bessel_j(nu, x).unwrap();
            assert!(
                (got - want).abs() < 1e-12,
                "J_{}({}) = {} vs {}",
                nu,
                x,
                got,
                want
            );
        }
    }

    #[test]
    fn negative_order_matches_series() {
        // J_{-1/2}(x) = sqrt(2/(πx)) cos x
        for &x in &[0.5, 3.0, 12.0] {
            let want = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.cos();
            assert!((bessel_j(-0.5, x).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn zeros_of_j0() {
        let z = bessel_j_zeros(0.0, 2).unwrap();
        assert!((z[0] - 2.404825557695772).abs() < 1e-13);
        assert!((z[1] - 5.520078110286311).abs() < 1e-13);
    }

    #[test]
    fn derivative_zeros_order_one() {
        let z = bessel_jprime_zeros(1.0, 1).unwrap();
        assert!((z[0] - 1.84118378134066).abs() < 1e-12);
    }
}
