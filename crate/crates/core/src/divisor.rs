//! Twisted divisor sums
//!
//! ```text
//!     sigma_k(eps, psi; n) = sum_{d | n} eps(n/d) psi(d) d^k
//! ```
//!
//! for a pair of characters with coprime conductors, extended by 0 off the
//! positive integers.  These are the Fourier coefficients of the Eisenstein
//! series in [`crate::eisenstein`].
//!
//! Besides the sums themselves the module carries the identities used to
//! reorganize them: the telescoping shift along powers of 2, the twist
//! identities that move a character from one argument to the other, and the
//! elementary lower bound that keeps the Eisenstein part of a coefficient
//! dominant.

use crate::character::Character;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `sigma_k(eps, psi; x)`, which is 0 unless `x` is a positive integer.
pub fn sigma(k: u32, eps: Character, psi: Character, x: &BigRational) -> BigInt {
    if !x.is_integer() || !x.is_positive() {
        return BigInt::zero();
    }
    let n = x
        .to_integer()
        .to_u64()
        .expect("divisor sum index exceeds u64");
    sigma_u64(k, eps, psi, n)
}

/// `sigma_k(eps, psi; n)` for a positive integer `n`, by divisor enumeration.
pub fn sigma_u64(k: u32, eps: Character, psi: Character, n: u64) -> BigInt {
    assert!(n >= 1, "sigma_u64 needs n >= 1");
    assert!(
        eps.conductor().gcd(&psi.conductor()) == 1,
        "sigma requires characters of coprime conductors"
    );
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let e = n / d;
            let c = eps.eval(e as i64) * psi.eval(d as i64);
            if c != 0 {
                acc += BigInt::from(d).pow(k) * c;
            }
            if e != d {
                let c = eps.eval(d as i64) * psi.eval(e as i64);
                if c != 0 {
                    acc += BigInt::from(e).pow(k) * c;
                }
            }
        }
        d += 1;
    }
    acc
}

/// `sigma_k(eps, psi; n)` from the prime factorization of `n`, via the
/// product of local factors
///
/// ```text
///     sum_{i=0}^{e} eps(p)^{e-i} (psi(p) p^k)^i ,
/// ```
///
/// each evaluated by the geometric closed form, or by direct summation when
/// the geometric ratio is 1.  The factorization is validated.
pub fn sigma_factored(
    k: u32,
    eps: Character,
    psi: Character,
    factorization: &[(u64, u32)],
) -> Result<BigInt> {
    let mut last = 1u64;
    for &(p, e) in factorization {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidFactorization {
                reason: "entry is not prime",
            });
        }
        if p <= last {
            return Err(Error::InvalidFactorization {
                reason: "primes not strictly increasing",
            });
        }
        if e == 0 {
            return Err(Error::InvalidFactorization {
                reason: "zero exponent",
            });
        }
        last = p;
    }
    let mut acc = BigInt::one();
    for &(p, e) in factorization {
        let v = eps.eval(p as i64);
        let u = BigInt::from(psi.eval(p as i64)) * BigInt::from(p).pow(k);
        let local = if v == 0 {
            u.pow(e)
        } else {
            // v in {1, -1}, so v^{e-i} = v^e v^i and the sum is geometric in vu.
            let w = if v == 1 { u } else { -u };
            let sign = if v == -1 && e % 2 == 1 { -1 } else { 1 };
            let series = if w.is_one() {
                BigInt::from(e + 1)
            } else {
                (w.pow(e + 1) - 1) / (w - 1)
            };
            series * sign
        };
        acc *= local;
    }
    Ok(acc)
}

/// Prime factorization of `n >= 1` by trial division, primes ascending.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize needs n >= 1");
    let mut n = n;
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        if (*n).is_multiple_of(p) {
            let mut e = 0;
            while (*n).is_multiple_of(p) {
                *n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5;
    while p * p <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of distinct prime factors.
pub fn omega(n: u64) -> u32 {
    factorize(n).len() as u32
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut p = 5;
    while p * p <= n {
        if n.is_multiple_of(p) || n.is_multiple_of(p + 2) {
            return false;
        }
        p += 6;
    }
    true
}

/// Telescoping shift along powers of 2: for `1 <= r <= e`,
///
/// ```text
///     sigma_k(eps, psi; 2^e) - eps(2)^r sigma_k(eps, psi; 2^{e-r})
///         = sum_{i=0}^{r-1} eps(2)^i (psi(2) 2^k)^{e-i} .
/// ```
pub fn two_shift_identity_check(k: u32, eps: Character, psi: Character, e: u32, r: u32) -> bool {
    assert!(1 <= r && r <= e, "two-shift check needs 1 <= r <= e");
    let eps2 = BigInt::from(eps.eval(2));
    let psi2k = BigInt::from(psi.eval(2)) * BigInt::from(2u64).pow(k);
    let lhs = sigma_u64(k, eps, psi, 1u64 << e)
        - eps2.pow(r) * sigma_u64(k, eps, psi, 1u64 << (e - r));
    let mut rhs = BigInt::zero();
    for i in 0..r {
        rhs += eps2.pow(i) * psi2k.pow(e - i);
    }
    lhs == rhs
}

/// Twist identities moving a character across the two arguments.
///
/// For odd `n`:
///
/// ```text
///     sigma_k(chi_{-4}, chi_1;  n) = chi_{-4}(n) sigma_k(chi_1,  chi_{-4}; n)
///     sigma_k(chi_{-4}, chi_{-3}; n) = chi_{-4}(n) sigma_k(chi_1,  chi_12;  n)
///     sigma_k(chi_12,  chi_1;  n) = chi_{-4}(n) sigma_k(chi_{-3}, chi_{-4}; n)
/// ```
///
/// For `n` coprime to 3:
///
/// ```text
///     sigma_k(chi_{-3}, chi_1;  n) = chi_{-3}(n) sigma_k(chi_1,  chi_{-3}; n)
///     sigma_k(chi_{-3}, chi_{-4}; n) = chi_{-3}(n) sigma_k(chi_1,  chi_12;  n)
/// ```
///
/// Checks whichever group applies to `n`; errors when neither does.
pub fn twist_identity_check(k: u32, n: u64) -> Result<bool> {
    use Character::*;
    let odd = n % 2 == 1;
    let coprime3 = !n.is_multiple_of(3);
    if !odd && !coprime3 {
        return Err(Error::Precondition(
            "twist identities need n odd or n coprime to 3",
        ));
    }
    let mut ok = true;
    if odd {
        let t = BigInt::from(MinusFour.eval(n as i64));
        ok &= sigma_u64(k, MinusFour, One, n) == &t * sigma_u64(k, One, MinusFour, n);
        ok &= sigma_u64(k, MinusFour, MinusThree, n) == &t * sigma_u64(k, One, Twelve, n);
        ok &= sigma_u64(k, Twelve, One, n) == &t * sigma_u64(k, MinusThree, MinusFour, n);
    }
    if coprime3 {
        let t = BigInt::from(MinusThree.eval(n as i64));
        ok &= sigma_u64(k, MinusThree, One, n) == &t * sigma_u64(k, One, MinusThree, n);
        ok &= sigma_u64(k, MinusThree, MinusFour, n) == &t * sigma_u64(k, One, Twelve, n);
    }
    Ok(ok)
}

/// Lower bound `|sigma_k(eps, psi; n)| >= n^k (3/5)^{omega(n)}` for
/// `gcd(n, 6) = 1` and `k >= 1`, checked exactly as
/// `|sigma| 5^omega >= n^k 3^omega`.
pub fn sigma_lower_bound_check(k: u32, eps: Character, psi: Character, n: u64) -> Result<bool> {
    if k == 0 {
        return Err(Error::Precondition("sigma lower bound needs k >= 1"));
    }
    if n.gcd(&6) != 1 {
        return Err(Error::Precondition("sigma lower bound needs gcd(n, 6) = 1"));
    }
    let w = omega(n);
    let lhs = sigma_u64(k, eps, psi, n).abs() * BigInt::from(5u64).pow(w);
    let rhs = BigInt::from(n).pow(k) * BigInt::from(3u64).pow(w);
    Ok(lhs >= rhs)
}

/// `omega(n) <= 1.38402 log n / log log n` for `n >= 3`.
pub fn omega_upper_bound_check(n: u64) -> bool {
    assert!(n >= 3, "omega bound needs n >= 3");
    let ln = (n as f64).ln();
    (omega(n) as f64) <= 1.38402 * ln / ln.ln()
}
