//! All complex roots of a polynomial by Aberth–Ehrlich simultaneous
//! iteration, with a cleanup pass for multiple roots.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 500;
pub const ROOT_TOLERANCE: f64 = 1e-12;
const RESTARTS: usize = 8;

/// Horner evaluation, coefficients low-degree first.
pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

/// Rounding-error scale of a Horner evaluation at `z`.
fn eval_noise(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let s = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm());
    s * 4.0 * f64::EPSILON * coeffs.len() as f64
}

fn initial_guesses(coeffs: &[Complex64], rng: &mut ChaCha8Rng, jitter: f64) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    // Fujiwara-type radius: max |c_i / c_n|^{1/(n-i)}
    let radius = (0..n)
        .map(|i| (coeffs[i].norm() / lead).powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            let wobble = 1.0 + jitter * (rng.gen::<f64>() - 0.5);
            Complex64::from_polar(radius * wobble, angle + jitter * rng.gen::<f64>())
        })
        .collect()
}

fn aberth(coeffs: &[Complex64], mut z: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let d = derivative(coeffs);
    let n = z.len();
    for _ in 0..MAX_ITERATIONS {
        let mut done = true;
        for k in 0..n {
            let pz = eval(coeffs, z[k]);
            if pz.norm() <= eval_noise(coeffs, z[k]) {
                continue;
            }
            let ratio = pz / eval(&d, z[k]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !w.is_finite() {
                return None;
            }
            z[k] -= w;
            if w.norm() > ROOT_TOLERANCE * z[k].norm().max(1.0) {
                done = false;
            }
        }
        if done {
            return Some(z);
        }
    }
    None
}

/// Replaces each tight cluster of `m` approximations by one root of
/// multiplicity `m`, located by Newton's method on the `(m-1)`-th
/// derivative, when that lowers the residual.
fn refine_clusters(coeffs: &[Complex64], roots: &mut [Complex64]) {
    let n = roots.len();
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        let members: Vec<usize> = (i..n)
            .filter(|&j| !used[j] && (roots[j] - roots[i]).norm() < 1e-4 * scale)
            .collect();
        if members.len() < 2 {
            continue;
        }
        let m = members.len();
        let mut deriv = coeffs.to_vec();
        for _ in 0..m - 1 {
            deriv = derivative(&deriv);
        }
        let next = derivative(&deriv);
        let mut c: Complex64 = members.iter().map(|&j| roots[j]).sum::<Complex64>() / m as f64;
        for _ in 0..50 {
            let step = eval(&deriv, c) / eval(&next, c);
            if !step.is_finite() {
                break;
            }
            c -= step;
            if step.norm() <= 1e-16 * c.norm().max(1.0) {
                break;
            }
        }
        let old_residual: f64 = members
            .iter()
            .map(|&j| eval(coeffs, roots[j]).norm())
            .fold(0.0, f64::max);
        if c.is_finite() && eval(coeffs, c).norm() <= old_residual {
            for &j in &members {
                roots[j] = c;
                used[j] = true;
            }
        }
    }
}

/// All roots of `Σ c_i z^i` (leading coefficient nonzero), in a
/// deterministic order (by argument, then modulus). Restarts from seeded
/// random perturbations when the iteration stalls.
pub fn polynomial_roots(coeffs: &[Complex64], seed: u64) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 || coeffs[n].norm() == 0.0 {
        return Err(Error::InvalidInput(
            "root finding needs a nonzero leading coefficient".into(),
        ));
    }
    let mut roots = if n == 1 {
        vec![-coeffs[0] / coeffs[1]]
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut found = None;
        for attempt in 0..=RESTARTS {
            let jitter = if attempt == 0 { 0.0 } else { 0.5 };
            let guesses = initial_guesses(coeffs, &mut rng, jitter);
            if let Some(r) = aberth(coeffs, guesses) {
                found = Some(r);
                break;
            }
        }
        let mut r = found.ok_or(Error::RootFindingDiverged {
            iterations: MAX_ITERATIONS * (RESTARTS + 1),
        })?;
        refine_clusters(coeffs, &mut r);
        r
    };
    roots.sort_by(|a, b| {
        (a.arg(), a.norm())
            .partial_cmp(&(b.arg(), b.norm()))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
        let mut p = vec![c(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![c(0.0, 0.0); p.len() + 1];
            for (i, &a) in p.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            p = next;
        }
        p
    }

    fn assert_same_multiset(mut got: Vec<Complex64>, want: &[Complex64], tol: f64) {
        for w in want {
            let (idx, d) = got
                .iter()
                .enumerate()
                .map(|(i, g)| (i, (g - w).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            assert!(d < tol, "root {w} missing, nearest at distance {d}");
            got.remove(idx);
        }
    }

    #[test]
    fn linear_and_quadratic() {
        let r = polynomial_roots(&[c(1.0, 0.0), c(-1.0, 0.0)], 0).unwrap();
        assert!((r[0] - c(1.0, 0.0)).norm() < 1e-15);
        // 2z^2 + z + 1, roots (-1 ± i√7)/4
        let r = polynomial_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)], 0).unwrap();
        let s7 = 7f64.sqrt();
        assert_same_multiset(r, &[c(-0.25, s7 / 4.0), c(-0.25, -s7 / 4.0)], 1e-13);
    }

    #[test]
    fn double_root_is_exact_after_refinement() {
        // 1 + 4z + 4z^2 = (1 + 2z)^2
        let r = polynomial_roots(&[c(1.0, 0.0), c(4.0, 0.0), c(4.0, 0.0)], 0).unwrap();
        for z in r {
            assert!((z - c(-0.5, 0.0)).norm() < 1e-13, "{z}");
        }
    }

    #[test]
    fn unit_circle_roots() {
        let want: Vec<Complex64> = (0..7)
            .map(|k| Complex64::from_polar(3f64.sqrt(), 0.3 + k as f64))
            .collect();
        let r = polynomial_roots(&from_roots(&want), 11).unwrap();
        assert_same_multiset(r, &want, 1e-10);
    }

    #[test]
    fn triple_and_simple_mix() {
        let want = [c(2.0, 1.0), c(2.0, 1.0), c(2.0, 1.0), c(-1.0, 0.5), c(0.0, -3.0)];
        let r = polynomial_roots(&from_roots(&want), 3).unwrap();
        assert_same_multiset(r, &want, 1e-9);
    }

    #[test]
    fn rejects_zero_leading_coefficient() {
        assert!(polynomial_roots(&[c(1.0, 0.0), c(0.0, 0.0)], 0).is_err());
    }
}
