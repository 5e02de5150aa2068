//! Newton's identities and Dickson polynomials of the first kind, over any
//! [`Ring`].
//!
//! Vectors are 1-based in meaning: `e[0]` holds `e_1`, `p[0]` holds `p_1`.
//! Elementary symmetric functions beyond the supplied length are zero.

use crate::error::{Error, Result};
use crate::ring::Ring;

fn sign(j: usize) -> i64 {
    if j % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `p_1..p_m` from `e_1..e_k` by
/// `p_m = Σ_{j<m} (-1)^{j-1} e_j p_{m-j} + (-1)^{m-1} m e_m`.
pub fn power_sums_from_elementary<R: Ring>(ring: &R, e: &[R::El], m_max: usize) -> Vec<R::El> {
    let ej = |j: usize| e.get(j - 1).cloned().unwrap_or_else(|| ring.zero());
    let mut p: Vec<R::El> = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let mut acc = ring.int_scale(&ej(m), sign(m - 1) * m as i64);
        for j in 1..m {
            let t = ring.mul(&ej(j), &p[m - j - 1]);
            acc = ring.add(&acc, &ring.int_scale(&t, sign(j - 1)));
        }
        p.push(acc);
    }
    p
}

/// `e_1..e_m` from `p_1..p_m` by `m e_m = Σ_{j=1}^m (-1)^{j-1} e_{m-j} p_j`.
/// Needs exact division by `1..m` in the ring.
pub fn elementary_from_power_sums<R: Ring>(
    ring: &R,
    p: &[R::El],
    m_max: usize,
) -> Result<Vec<R::El>> {
    if p.len() < m_max {
        return Err(Error::InvalidInput(format!(
            "{} power sums given, {m_max} needed",
            p.len()
        )));
    }
    let mut e: Vec<R::El> = vec![ring.one()];
    for m in 1..=m_max {
        let mut acc = ring.zero();
        for j in 1..=m {
            let t = ring.mul(&e[m - j], &p[j - 1]);
            acc = ring.add(&acc, &ring.int_scale(&t, sign(j - 1)));
        }
        e.push(ring.div_int(&acc, m as i64)?);
    }
    e.remove(0);
    Ok(e)
}

/// Determinant by cofactor expansion along the first row. Only for the
/// small cross-checks.
pub fn determinant<R: Ring>(ring: &R, m: &[Vec<R::El>]) -> R::El {
    let n = m.len();
    match n {
        0 => ring.one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = ring.zero();
            for col in 0..n {
                if ring.is_zero(&m[0][col]) {
                    continue;
                }
                let minor: Vec<Vec<R::El>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let t = ring.mul(&m[0][col], &determinant(ring, &minor));
                acc = ring.add(&acc, &ring.int_scale(&t, sign(col)));
            }
            acc
        }
    }
}

fn check_det_size(m: usize) -> Result<()> {
    if m == 0 || m > 6 {
        return Err(Error::BudgetExceeded {
            requested: m as u128,
            budget: 6,
        });
    }
    Ok(())
}

/// `p_m` as the determinant with first column `i e_i`, entries
/// `e_{i-j+1}` elsewhere (`e_0 = 1`). Sizes up to 6.
pub fn power_sum_by_determinant<R: Ring>(ring: &R, e: &[R::El], m: usize) -> Result<R::El> {
    check_det_size(m)?;
    let ej = |j: i64| match j {
        0 => ring.one(),
        j if j < 0 => ring.zero(),
        j => e.get(j as usize - 1).cloned().unwrap_or_else(|| ring.zero()),
    };
    let mat: Vec<Vec<R::El>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if j == 0 {
                        ring.int_scale(&ej(i as i64 + 1), i as i64 + 1)
                    } else {
                        ej(i as i64 - j as i64 + 1)
                    }
                })
                .collect()
        })
        .collect();
    Ok(determinant(ring, &mat))
}

/// `e_m` as `1/m!` times the determinant with first column `p_i`,
/// entries `p_{i-j+1}` below the superdiagonal and `1, 2, ..., m-1` on it.
pub fn elementary_by_determinant<R: Ring>(ring: &R, p: &[R::El], m: usize) -> Result<R::El> {
    check_det_size(m)?;
    let mat: Vec<Vec<R::El>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if j == i + 1 {
                        ring.from_int(j as i64)
                    } else if j <= i {
                        p[i - j].clone()
                    } else {
                        ring.zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut d = determinant(ring, &mat);
    for k in 2..=m {
        d = ring.div_int(&d, k as i64)?;
    }
    Ok(d)
}

/// Parameters `x_1..x_k, a` of `D_n^{(1)}(x_1, ..., x_k, a)`.
#[derive(Clone, Debug)]
pub struct DicksonParams<E> {
    pub x: Vec<E>,
    pub a: E,
}

impl<E: Clone> DicksonParams<E> {
    pub fn new(x: Vec<E>, a: E) -> Self {
        DicksonParams { x, a }
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }

    /// `x_0 = 1, x_1..x_k, x_{k+1} = a`.
    fn extended<R: Ring<El = E>>(&self, ring: &R) -> Vec<E> {
        let mut v = vec![ring.one()];
        v.extend(self.x.iter().cloned());
        v.push(self.a.clone());
        v
    }
}

/// `D_0..D_{n_max}` from the linear recurrence and its `k+1` initial values.
pub fn dickson_sequence<R: Ring>(
    ring: &R,
    params: &DicksonParams<R::El>,
    n_max: usize,
) -> Vec<R::El> {
    let k = params.k();
    let x = |t: usize| params.x[t - 1].clone();
    let mut d: Vec<R::El> = vec![ring.from_int(k as i64 + 1)];
    for j in 1..=n_max {
        let mut acc = ring.zero();
        let top = j.min(k);
        for t in 1..=top {
            let term = ring.mul(&x(t), &d[j - t]);
            acc = ring.add(&acc, &ring.int_scale(&term, sign(t - 1)));
        }
        if j <= k {
            let tail = ring.int_scale(&x(j), sign(j) * (k as i64 + 1 - j as i64));
            acc = ring.add(&acc, &tail);
        } else {
            let tail = ring.mul(&params.a, &d[j - k - 1]);
            acc = ring.add(&acc, &ring.int_scale(&tail, sign(k)));
        }
        d.push(acc);
    }
    d
}

/// `D_n^{(1)}` by the recurrence.
pub fn dickson_first_kind<R: Ring>(ring: &R, params: &DicksonParams<R::El>, n: usize) -> R::El {
    dickson_sequence(ring, params, n).pop().unwrap()
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// `D_n^{(1)}` by the explicit multinomial sum over
/// `r_1 + 2 r_2 + ... + (k+1) r_{k+1} = n` with coefficient
/// `(-1)^{n - N} n (N-1)! / (r_1! ... r_{k+1}!)`, `N = Σ r_i`.
/// Limited to `k <= 3`, `n <= 12`.
pub fn dickson_waring<R: Ring>(ring: &R, params: &DicksonParams<R::El>, n: usize) -> Result<R::El> {
    let k = params.k();
    if k > 3 || n > 12 {
        return Err(Error::BudgetExceeded {
            requested: (k.max(n)) as u128,
            budget: 12,
        });
    }
    if n == 0 {
        return Err(Error::InvalidInput("Waring's formula needs n >= 1".into()));
    }
    let vars = params.extended(ring);
    let mut acc = ring.zero();
    let mut r = vec![0usize; k + 1];
    // r[i] is the exponent of x_{i+1}; r[0] is determined by the others
    loop {
        let weight: usize = (1..=k).map(|i| (i + 1) * r[i]).sum();
        if weight <= n {
            r[0] = n - weight;
            let big_n: usize = r.iter().sum();
            let denom: i128 = r.iter().map(|&ri| factorial(ri)).product();
            let coeff = n as i128 * factorial(big_n - 1) / denom;
            let mut term = ring.from_int(sign(n - big_n) * coeff as i64);
            for (i, &ri) in r.iter().enumerate() {
                if ri > 0 {
                    term = ring.mul(&term, &ring.pow(&vars[i + 1], ri as u32));
                }
            }
            acc = ring.add(&acc, &term);
        }
        // odometer over r[1..=k]
        let mut i = 1;
        loop {
            if i > k {
                return Ok(acc);
            }
            r[i] += 1;
            if (1..=k).map(|t| (t + 1) * r[t]).sum::<usize>() <= n {
                break;
            }
            r[i] = 0;
            i += 1;
        }
    }
}

/// One coefficient of the generating-series comparison.
#[derive(Clone, Debug)]
pub struct SeriesRow<E> {
    pub n: usize,
    pub series: E,
    pub recurrence: E,
    pub equal: bool,
}

/// Expands `Σ_{i<=k} (k+1-i)(-1)^i x_i z^i / Σ_{i<=k+1} (-1)^i x_i z^i`
/// to order `n_max` and compares with the recurrence values.
pub fn dickson_generating_check<R: Ring>(
    ring: &R,
    params: &DicksonParams<R::El>,
    n_max: usize,
) -> Vec<SeriesRow<R::El>> {
    let k = params.k();
    let vars = params.extended(ring);
    let num: Vec<R::El> = (0..=k)
        .map(|i| ring.int_scale(&vars[i], sign(i) * (k + 1 - i) as i64))
        .collect();
    let den: Vec<R::El> = (0..=k + 1).map(|i| ring.int_scale(&vars[i], sign(i))).collect();
    let mut series: Vec<R::El> = Vec::with_capacity(n_max + 1);
    for m in 0..=n_max {
        let mut s = num.get(m).cloned().unwrap_or_else(|| ring.zero());
        for i in 1..=m.min(k + 1) {
            s = ring.sub(&s, &ring.mul(&den[i], &series[m - i]));
        }
        series.push(s);
    }
    let rec = dickson_sequence(ring, params, n_max);
    series
        .into_iter()
        .zip(rec)
        .enumerate()
        .map(|(n, (s, d))| SeriesRow {
            n,
            equal: ring.eq(&s, &d),
            series: s,
            recurrence: d,
        })
        .collect()
}

/// The classical `D_n(x, a)`: `D_0 = 2`, `D_1 = x`, `D_n = x D_{n-1} - a D_{n-2}`.
pub fn two_var_dickson<R: Ring>(ring: &R, x: &R::El, a: &R::El, n: usize) -> R::El {
    let mut prev = ring.from_int(2);
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..n {
        let next = ring.sub(&ring.mul(x, &cur), &ring.mul(a, &prev));
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Complexes, Integers, Rationals};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn newton_examples() {
        let r = Rationals;
        let p = power_sums_from_elementary(&r, &[q(3, 1)], 4);
        assert_eq!(p, vec![q(3, 1), q(9, 1), q(27, 1), q(81, 1)]);
        let p = power_sums_from_elementary(&r, &[q(2, 1), q(1, 1)], 5);
        assert!(p.iter().all(|v| *v == q(2, 1)));
        let p = power_sums_from_elementary(&r, &[q(0, 1), q(-2, 1)], 4);
        assert_eq!(p, vec![q(0, 1), q(4, 1), q(0, 1), q(8, 1)]);

        let e = elementary_from_power_sums(&r, &[q(2, 1), q(2, 1)], 2).unwrap();
        assert_eq!(e, vec![q(2, 1), q(1, 1)]);
        let e = elementary_from_power_sums(&r, &[q(0, 1), q(4, 1)], 2).unwrap();
        assert_eq!(e, vec![q(0, 1), q(-2, 1)]);
    }

    #[test]
    fn integers_cannot_invert() {
        assert_eq!(
            elementary_from_power_sums(&Integers, &[z(1), z(2)], 2).err(),
            Some(Error::RingLacksDivision { divisor: 2 })
        );
    }

    #[test]
    fn dickson_small_cases() {
        let r = Integers;
        let x = z(7);
        let a = z(3);
        let one = DicksonParams::new(vec![x.clone()], a.clone());
        assert_eq!(dickson_first_kind(&r, &one, 0), z(2));
        assert_eq!(dickson_first_kind(&r, &one, 1), x);
        assert_eq!(dickson_first_kind(&r, &one, 2), z(49 - 6));
        assert_eq!(dickson_waring(&r, &one, 2).unwrap(), z(49 - 6));
        assert_eq!(dickson_waring(&r, &one, 3).unwrap(), z(343 - 63));
        let three = DicksonParams::new(vec![z(2), z(-1), z(5)], z(4));
        assert_eq!(dickson_first_kind(&r, &three, 0), z(4));
        assert_eq!(dickson_first_kind(&r, &three, 1), z(2));
        assert_eq!(dickson_waring(&r, &three, 1).unwrap(), z(2));
        assert!(dickson_waring(&r, &three, 13).is_err());
        let four = DicksonParams::new(vec![z(1); 4], z(1));
        assert!(dickson_waring(&r, &four, 3).is_err());
    }

    #[test]
    fn generating_series_zero_parameters() {
        let rows = dickson_generating_check(&Integers, &DicksonParams::new(vec![z(0)], z(0)), 6);
        assert_eq!(rows[0].series, z(2));
        assert!(rows[1..].iter().all(|r| r.series == z(0) && r.equal));
    }

    #[test]
    fn two_var_functional_equation() {
        let c = Complexes;
        let x = num_complex::Complex64::new(2.5, 0.0);
        let a = num_complex::Complex64::new(1.0, 0.0);
        let d3 = two_var_dickson(&c, &x, &a, 3);
        assert!((d3.re - 8.125).abs() < 1e-12 && d3.im == 0.0);
        for n in 0..12 {
            let p = DicksonParams::new(vec![z(5)], z(-3));
            assert_eq!(
                two_var_dickson(&Integers, &z(5), &z(-3), n),
                dickson_first_kind(&Integers, &p, n)
            );
        }
    }

    #[test]
    fn determinants_agree_with_recursions() {
        let r = Rationals;
        let e = vec![q(3, 2), q(-1, 1), q(2, 3), q(5, 1), q(-7, 4), q(1, 5)];
        let p = power_sums_from_elementary(&r, &e, 6);
        for m in 1..=6 {
            assert_eq!(power_sum_by_determinant(&r, &e, m).unwrap(), p[m - 1]);
            assert_eq!(elementary_by_determinant(&r, &p, m).unwrap(), e[m - 1]);
        }
        assert!(power_sum_by_determinant(&r, &e, 7).is_err());
    }

    fn elementary_of_roots(roots: &[i64]) -> Vec<BigInt> {
        // coefficients of Π (x + β) give e_j
        let mut e = vec![z(1)];
        for &b in roots {
            let mut next = e.clone();
            next.push(z(0));
            for j in 1..next.len() {
                next[j] += &e[j - 1] * b;
            }
            e = next;
        }
        e.remove(0);
        e
    }

    proptest! {
        #[test]
        fn newton_round_trip(v in prop::collection::vec((-20i64..20, 1i64..6), 1..=8)) {
            let r = Rationals;
            let e: Vec<BigRational> = v.iter().map(|&(n, d)| q(n, d)).collect();
            let p = power_sums_from_elementary(&r, &e, e.len());
            prop_assert_eq!(elementary_from_power_sums(&r, &p, e.len()).unwrap(), e);
        }

        #[test]
        fn dickson_is_root_power_sum(roots in prop::collection::vec(-5i64..=5, 2..=4)) {
            let k = roots.len() - 1;
            let e = elementary_of_roots(&roots);
            let params = DicksonParams::new(e[..k].to_vec(), e[k].clone());
            let seq = dickson_sequence(&Integers, &params, 10);
            for (n, d) in seq.iter().enumerate() {
                let direct: BigInt = roots.iter().map(|&b| z(b).pow(n as u32)).sum();
                prop_assert_eq!(d, &direct);
            }
        }

        #[test]
        fn dickson_three_routes(x in prop::collection::vec(-4i64..=4, 1..=3), a in -4i64..=4) {
            let params = DicksonParams::new(x.iter().map(|&v| z(v)).collect(), z(a));
            let rows = dickson_generating_check(&Integers, &params, 10);
            prop_assert!(rows.iter().all(|r| r.equal));
            for n in 1..=10 {
                prop_assert_eq!(
                    dickson_waring(&Integers, &params, n).unwrap(),
                    dickson_first_kind(&Integers, &params, n)
                );
            }
        }
    }
}
