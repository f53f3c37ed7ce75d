//! Representation numbers of `x_1^2 + ... + x_a^2 + 3 y_1^2 + ... + 3 y_b^2`.
//!
//! Three counts are tracked for each target `n`:
//!
//! * `All`: all integer solutions, `N(a,b;n)`;
//! * `Odd`: solutions with every coordinate odd, `N*(a,b;n)`;
//! * `Tilde`: solutions with some odd coordinate,
//!   `Ntilde(a,b;n) = N(a,b;n) - N(a,b;n/4)`.
//!
//! The production path is series convolution of `a + b` one-dimensional
//! theta factors ([`count_vec`], [`count_series`]); a nested-loop lattice
//! enumerator ([`count`]) is kept as an independent oracle for small `n`.
//! Counts of all-odd solutions live on a single residue class:
//! `N*(a,b;m) = 0` unless `m = a + 3b (mod 8)`.

use crate::qseries::QSeries;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Which solutions to count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// All integer solutions.
    All,
    /// Solutions with every coordinate odd.
    Odd,
    /// Solutions with at least one odd coordinate.
    Tilde,
}

/// One representation-count request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountQuery {
    pub a: u32,
    pub b: u32,
    pub n: i64,
    pub variant: Variant,
}

/// Exact count by signed-lattice enumeration.  Exponential in `a + b`; meant
/// for small `n` as an oracle for the convolution path.
pub fn count(q: &CountQuery) -> BigInt {
    if q.n < 0 {
        return BigInt::from(0);
    }
    // Coefficient-3 coordinates first: larger steps prune sooner.
    let mut coeffs: Vec<i64> = vec![3; q.b as usize];
    coeffs.extend(std::iter::repeat_n(1, q.a as usize));
    let value = match q.variant {
        Variant::All => enum_all(&coeffs, q.n),
        Variant::Odd => enum_odd(&coeffs, q.n),
        Variant::Tilde => {
            let all = enum_all(&coeffs, q.n);
            if q.n % 4 == 0 {
                all - enum_all(&coeffs, q.n / 4)
            } else {
                all
            }
        }
    };
    BigInt::from(value)
}

fn enum_all(coeffs: &[i64], budget: i64) -> u128 {
    let Some((&c, rest)) = coeffs.split_first() else {
        return (budget == 0) as u128;
    };
    let mut acc = enum_all(rest, budget);
    let mut x = 1i64;
    while c * x * x <= budget {
        acc += 2 * enum_all(rest, budget - c * x * x);
        x += 1;
    }
    acc
}

fn enum_odd(coeffs: &[i64], budget: i64) -> u128 {
    let Some((&c, rest)) = coeffs.split_first() else {
        return (budget == 0) as u128;
    };
    let mut acc = 0;
    let mut x = 1i64;
    while c * x * x <= budget {
        acc += 2 * enum_odd(rest, budget - c * x * x);
        x += 2;
    }
    acc
}

/// Counts for every target `0 <= n < prec` at once, by convolving the
/// `a + b` theta factors.  Arithmetic is checked `i128`, which is exact for
/// the ranges this crate works in (`a + b <= 12`, `prec` up to `10^5`).
pub fn count_vec(a: u32, b: u32, variant: Variant, prec: usize) -> Vec<i128> {
    assert!(prec >= 1);
    match variant {
        Variant::All => {
            let mut acc = unit_vec(prec);
            let f1 = theta_all(1, prec);
            let f3 = theta_all(3, prec);
            for _ in 0..a {
                acc = convolve(&acc, &f1);
            }
            for _ in 0..b {
                acc = convolve(&acc, &f3);
            }
            acc
        }
        Variant::Odd => {
            let mut acc = unit_vec(prec);
            let f1 = theta_odd(1, prec);
            let f3 = theta_odd(3, prec);
            for _ in 0..a {
                acc = convolve(&acc, &f1);
            }
            for _ in 0..b {
                acc = convolve(&acc, &f3);
            }
            let scale = 1i128 << (a + b);
            for c in &mut acc {
                *c = c.checked_mul(scale).expect("count overflow");
            }
            acc
        }
        Variant::Tilde => {
            let all = count_vec(a, b, Variant::All, prec);
            let mut out = all.clone();
            for i in 0..prec {
                if i % 4 == 0 {
                    out[i] -= all[i / 4];
                }
            }
            out
        }
    }
}

fn unit_vec(prec: usize) -> Vec<i128> {
    let mut v = vec![0i128; prec];
    v[0] = 1;
    v
}

/// Nonzero entries of `1 + 2 sum q^{c m^2}`.
fn theta_all(c: usize, prec: usize) -> Vec<(usize, i128)> {
    let mut f = vec![(0usize, 1i128)];
    let mut m = 1usize;
    while c * m * m < prec {
        f.push((c * m * m, 2));
        m += 1;
    }
    f
}

/// Nonzero entries of `sum over odd x > 0 of q^{c x^2}`.
fn theta_odd(c: usize, prec: usize) -> Vec<(usize, i128)> {
    let mut f = Vec::new();
    let mut x = 1usize;
    while c * x * x < prec {
        f.push((c * x * x, 1));
        x += 2;
    }
    f
}

fn convolve(acc: &[i128], factor: &[(usize, i128)]) -> Vec<i128> {
    let prec = acc.len();
    let mut out = vec![0i128; prec];
    for &(e, c) in factor {
        for i in 0..prec - e {
            if acc[i] != 0 {
                let t = acc[i].checked_mul(c).expect("count overflow");
                out[i + e] = out[i + e].checked_add(t).expect("count overflow");
            }
        }
    }
    out
}

/// The counts as a [`QSeries`], the crate's common series currency.
pub fn count_series(a: u32, b: u32, variant: Variant, prec: usize) -> QSeries {
    QSeries::from_coeffs(
        count_vec(a, b, variant, prec)
            .into_iter()
            .map(|c| BigRational::from(BigInt::from(c)))
            .collect(),
    )
}

/// Number of ways to write `n` as
/// `t_1 + ... + t_a + 3 t_{a+1} + ... + 3 t_{a+b}` with every `t_i` a
/// triangular number `x(x-1)/2`, counting each `t_i` with multiplicity 2
/// (the two integers `x` and `1 - x` produce it).  Equals
/// `count(a, b, 8n + a + 3b, Odd)` under `x -> (2x - 1)^2`.
pub fn triangular_count(a: u32, b: u32, n: i64) -> BigInt {
    if n < 0 {
        return BigInt::from(0);
    }
    let mut coeffs: Vec<i64> = vec![3; b as usize];
    coeffs.extend(std::iter::repeat_n(1, a as usize));
    BigInt::from(enum_tri(&coeffs, n))
}

fn enum_tri(coeffs: &[i64], budget: i64) -> u128 {
    let Some((&c, rest)) = coeffs.split_first() else {
        return (budget == 0) as u128;
    };
    let mut acc = 0;
    let mut x = 1i64;
    loop {
        let t = c * x * (x - 1) / 2;
        if t > budget {
            return acc;
        }
        acc += 2 * enum_tri(rest, budget - t);
        x += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn n_of(a: u32, b: u32, n: i64, v: Variant) -> i128 {
        count(&CountQuery { a, b, n, variant: v })
            .to_i128()
            .unwrap()
    }

    #[test]
    fn frozen_small_counts() {
        assert_eq!(n_of(1, 3, 10, Variant::All), 40);
        assert_eq!(n_of(1, 3, 10, Variant::Odd), 16);
        assert_eq!(n_of(2, 2, 8, Variant::Odd), 16);
        assert_eq!(n_of(4, 0, 4, Variant::All), 24);
        assert_eq!(n_of(4, 0, 1, Variant::All), 8);
        assert_eq!(n_of(4, 0, 4, Variant::Tilde), 16);
    }

    #[test]
    fn zero_target_counts_empty_solution() {
        for (a, b) in [(0, 0), (1, 1), (4, 0), (2, 3)] {
            assert_eq!(n_of(a, b, 0, Variant::All), 1);
            assert_eq!(n_of(a, b, -5, Variant::All), 0);
        }
        // An all-odd solution of 0 needs zero coordinates, so only (0,0) has one.
        assert_eq!(n_of(0, 0, 0, Variant::Odd), 1);
        assert_eq!(n_of(2, 0, 0, Variant::Odd), 0);
    }

    #[test]
    fn two_squares_match_phi_squared() {
        let p2 = crate::qseries::phi_series(40).pow(2);
        for n in 0..40 {
            assert_eq!(
                crate::rat_int(n_of(2, 0, n as i64, Variant::All) as i64),
                p2.coeff(n).clone(),
                "r_2({n})"
            );
        }
    }

    #[test]
    fn series_agrees_with_enumeration() {
        // Depth graded by dimension: the enumerator is exponential in a + b.
        let grid: &[(u32, u32, i64)] = &[
            (0, 2, 300),
            (1, 1, 300),
            (2, 0, 300),
            (1, 3, 150),
            (2, 2, 150),
            (4, 0, 150),
            (3, 3, 60),
            (4, 2, 60),
            (6, 0, 60),
            (5, 3, 24),
            (8, 0, 24),
            (10, 0, 20),
        ];
        for &(a, b, depth) in grid {
            for variant in [Variant::All, Variant::Odd, Variant::Tilde] {
                let vec = count_vec(a, b, variant, depth as usize);
                for n in 0..depth {
                    assert_eq!(
                        vec[n as usize],
                        n_of(a, b, n, variant),
                        "({a},{b}) {variant:?} at n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn odd_counts_live_on_one_residue_class() {
        for &(a, b) in &[(1u32, 1u32), (2, 2), (4, 0), (1, 3), (3, 1), (4, 2)] {
            let r = (a + 3 * b) % 8;
            let vec = count_vec(a, b, Variant::Odd, 200);
            for (m, &c) in vec.iter().enumerate() {
                if m as u32 % 8 != r {
                    assert_eq!(c, 0, "N*({a},{b};{m}) off the residue class");
                }
            }
        }
    }

    #[test]
    fn count_series_wraps_count_vec() {
        let s = count_series(1, 3, Variant::All, 16);
        assert_eq!(s.precision(), 16);
        assert_eq!(s.coeff(10), &crate::rat_int(40));
    }

    #[test]
    fn triangular_bijection() {
        // One triangular number: n = 0, 1, 3, 6, 10 each have exactly one
        // representation, counted with multiplicity 2.
        for n in 0..=12 {
            let direct = triangular_count(1, 0, n);
            let expected: i64 = if [0, 1, 3, 6, 10].contains(&n) { 2 } else { 0 };
            assert_eq!(direct, BigInt::from(expected), "t({n})");
        }
        for &(a, b) in &[(1u32, 1u32), (2, 0), (1, 3), (2, 2)] {
            for n in 0..50i64 {
                let m = 8 * n + a as i64 + 3 * b as i64;
                assert_eq!(
                    triangular_count(a, b, n),
                    count(&CountQuery { a, b, n: m, variant: Variant::Odd }),
                    "bijection fails at ({a},{b}), n={n}"
                );
            }
        }
    }
}
