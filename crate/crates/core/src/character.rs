//! The four real primitive Dirichlet characters used throughout this crate,
//! indexed by their fundamental discriminants 1, -3, -4, 12, together with
//! their generalized Bernoulli numbers.
//!
//! Each character is the Kronecker symbol `(D/n)` of its discriminant, which
//! for these conductors reduces to a fixed table on residues.  The principal
//! character of conductor 1 takes the value 1 everywhere, including at 0.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

/// A real primitive Dirichlet character, named by its discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Character {
    /// `chi_1`, conductor 1: identically 1.
    One,
    /// `chi_{-3}`, conductor 3: the quadratic character mod 3.
    MinusThree,
    /// `chi_{-4}`, conductor 4: the quadratic character mod 4.
    MinusFour,
    /// `chi_{12}`, conductor 12: the quadratic character mod 12.
    Twelve,
}

impl Character {
    pub const ALL: [Character; 4] = [
        Character::One,
        Character::MinusThree,
        Character::MinusFour,
        Character::Twelve,
    ];

    /// Fundamental discriminant `D` with `chi = (D/.)`.
    pub fn discriminant(self) -> i64 {
        match self {
            Character::One => 1,
            Character::MinusThree => -3,
            Character::MinusFour => -4,
            Character::Twelve => 12,
        }
    }

    /// Conductor (modulus of periodicity).
    pub fn conductor(self) -> u64 {
        match self {
            Character::One => 1,
            Character::MinusThree => 3,
            Character::MinusFour => 4,
            Character::Twelve => 12,
        }
    }

    /// `chi(n)` in `{-1, 0, 1}`, for any integer `n`.
    pub fn eval(self, n: i64) -> i64 {
        const T3: [i64; 3] = [0, 1, -1];
        const T4: [i64; 4] = [0, 1, 0, -1];
        const T12: [i64; 12] = [0, 1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1];
        match self {
            Character::One => 1,
            Character::MinusThree => T3[n.rem_euclid(3) as usize],
            Character::MinusFour => T4[n.rem_euclid(4) as usize],
            Character::Twelve => T12[n.rem_euclid(12) as usize],
        }
    }

    /// Whether `chi(-1) = 1`.
    pub fn is_even(self) -> bool {
        self.eval(-1) == 1
    }

    /// Pointwise product `chi * other`, defined when the conductors are
    /// coprime (the product is then again one of the four characters).
    pub fn product(self, other: Character) -> Option<Character> {
        use Character::*;
        match (self, other) {
            (One, x) | (x, One) => Some(x),
            (MinusThree, MinusFour) | (MinusFour, MinusThree) => Some(Twelve),
            _ => None,
        }
    }
}

/// Classical Bernoulli number `B_k`, with `B_1 = -1/2`.
pub fn bernoulli(k: u32) -> BigRational {
    bernoulli_through(k).pop().unwrap()
}

/// All of `B_0 .. B_k` in one pass of the recurrence
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
fn bernoulli_through(k: u32) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=k as usize {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from(binom.clone()) * bj;
            binom = binom * (m as i64 + 1 - j as i64) / (j as i64 + 1);
        }
        b.push(-acc / BigRational::from(BigInt::from(m as i64 + 1)));
    }
    b
}

/// Bernoulli polynomial `B_k(x) = sum_j C(k,j) B_j x^{k-j}`.
fn bernoulli_poly(k: u32, x: &BigRational) -> BigRational {
    let bs = bernoulli_through(k);
    let mut xpow = vec![BigRational::one(); k as usize + 1];
    for i in 1..=k as usize {
        xpow[i] = &xpow[i - 1] * x;
    }
    let mut acc = BigRational::zero();
    let mut binom = BigInt::one();
    for j in 0..=k {
        acc += BigRational::from(binom.clone()) * &bs[j as usize] * &xpow[(k - j) as usize];
        binom = binom * (k as i64 - j as i64) / (j as i64 + 1);
    }
    acc
}

static BERNOULLI_CACHE: Mutex<Option<HashMap<(u32, Character), BigRational>>> = Mutex::new(None);

/// Generalized Bernoulli number `B_{k,chi}` for conductor `N`:
///
/// ```text
///     B_{k,chi} = N^{k-1} * sum_{r=1}^{N} chi(r) B_k(r/N)
/// ```
///
/// Only the parity `chi(-1) = (-1)^k` gives a nonzero number; the other
/// parity is rejected with [`Error::ParityMismatch`] rather than silently
/// returning 0, since every caller here divides by the result.
///
/// Values are memoized per `(k, chi)`.
pub fn bernoulli_number(k: u32, chi: Character) -> Result<BigRational> {
    let even_k = k.is_multiple_of(2);
    if chi.is_even() != even_k {
        return Err(Error::ParityMismatch {
            weight: k,
            discriminant: chi.discriminant(),
        });
    }
    {
        let cache = BERNOULLI_CACHE.lock().unwrap();
        if let Some(map) = cache.as_ref() {
            if let Some(v) = map.get(&(k, chi)) {
                return Ok(v.clone());
            }
        }
    }
    let n = chi.conductor() as i64;
    let mut acc = BigRational::zero();
    for r in 1..=n {
        let c = chi.eval(r);
        if c == 0 {
            continue;
        }
        let x = BigRational::new(BigInt::from(r), BigInt::from(n));
        acc += crate::rat_int(c) * bernoulli_poly(k, &x);
    }
    let value = if k == 0 {
        acc / BigRational::from(BigInt::from(n))
    } else {
        BigRational::from(BigInt::from(n).pow(k - 1)) * acc
    };
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    cache
        .get_or_insert_with(HashMap::new)
        .insert((k, chi), value.clone());
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    /// Kronecker symbol (a/n) for arbitrary n, used as an independent oracle
    /// for the residue tables.
    fn kronecker(mut a: i64, mut n: i64) -> i64 {
        if n == 0 {
            return if a == 1 || a == -1 { 1 } else { 0 };
        }
        if a % 2 == 0 && n % 2 == 0 {
            return 0;
        }
        let mut v = 0;
        while n % 2 == 0 {
            n /= 2;
            v += 1;
        }
        let mut k = if v % 2 == 0 {
            1
        } else {
            match a.rem_euclid(8) {
                1 | 7 => 1,
                3 | 5 => -1,
                _ => 0,
            }
        };
        if n < 0 {
            n = -n;
            if a < 0 {
                k = -k;
            }
        }
        loop {
            if a == 0 {
                return if n > 1 { 0 } else { k };
            }
            v = 0;
            while a % 2 == 0 {
                a /= 2;
                v += 1;
            }
            if v % 2 == 1 {
                k *= match n.rem_euclid(8) {
                    1 | 7 => 1,
                    3 | 5 => -1,
                    _ => 0,
                };
            }
            if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
                k = -k;
            }
            let r = a.abs();
            a = n % r;
            n = r;
        }
    }

    #[test]
    fn tables_match_kronecker_symbol() {
        for chi in Character::ALL {
            let d = chi.discriminant();
            for n in -300..=300i64 {
                if chi == Character::One && n == 0 {
                    // (1/0) = 1 agrees with the convention chi_1(0) = 1.
                    assert_eq!(chi.eval(0), 1);
                    continue;
                }
                assert_eq!(
                    chi.eval(n),
                    kronecker(d, n),
                    "chi_{{{d}}}({n}) disagrees with Kronecker symbol"
                );
            }
        }
    }

    #[test]
    fn periodicity() {
        for chi in Character::ALL {
            let c = chi.conductor() as i64;
            for n in -100..=100i64 {
                assert_eq!(chi.eval(n), chi.eval(n + c));
                assert_eq!(chi.eval(n), chi.eval(n - 5 * c));
            }
        }
    }

    #[test]
    fn complete_multiplicativity() {
        // 10^4 pseudo-random pairs per character, fixed seed.
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 2_000_001) as i64 - 1_000_000
        };
        for _ in 0..10_000 {
            let m = next();
            let n = next();
            for chi in Character::ALL {
                assert_eq!(
                    chi.eval(m * n),
                    chi.eval(m) * chi.eval(n),
                    "chi_{{{}}} not multiplicative at ({m}, {n})",
                    chi.discriminant()
                );
            }
        }
    }

    #[test]
    fn twelve_is_product_of_minus_three_and_minus_four() {
        for n in -100..=100i64 {
            assert_eq!(
                Character::Twelve.eval(n),
                Character::MinusThree.eval(n) * Character::MinusFour.eval(n)
            );
        }
    }

    #[test]
    fn parities() {
        assert!(Character::One.is_even());
        assert!(Character::Twelve.is_even());
        assert!(!Character::MinusThree.is_even());
        assert!(!Character::MinusFour.is_even());
    }

    #[test]
    fn products() {
        use Character::*;
        assert_eq!(One.product(MinusThree), Some(MinusThree));
        assert_eq!(Twelve.product(One), Some(Twelve));
        assert_eq!(MinusThree.product(MinusFour), Some(Twelve));
        assert_eq!(MinusFour.product(MinusThree), Some(Twelve));
        assert_eq!(MinusThree.product(Twelve), None);
        assert_eq!(MinusFour.product(MinusFour), None);
    }

    #[test]
    fn classical_bernoulli_table() {
        let expect = [
            (0, rat(1, 1)),
            (1, rat(-1, 2)),
            (2, rat(1, 6)),
            (3, rat(0, 1)),
            (4, rat(-1, 30)),
            (6, rat(1, 42)),
            (8, rat(-1, 30)),
            (10, rat(5, 66)),
            (12, rat(-691, 2730)),
        ];
        for (k, v) in expect {
            assert_eq!(bernoulli(k), v, "B_{k}");
        }
    }

    #[test]
    fn generalized_bernoulli_frozen_values() {
        // Hand-evaluated from the defining sum over one period.
        assert_eq!(bernoulli_number(2, Character::One).unwrap(), rat(1, 6));
        assert_eq!(
            bernoulli_number(1, Character::MinusFour).unwrap(),
            rat(-1, 2)
        );
        assert_eq!(
            bernoulli_number(1, Character::MinusThree).unwrap(),
            rat(-1, 3)
        );
        assert_eq!(bernoulli_number(2, Character::Twelve).unwrap(), rat(4, 1));
        assert_eq!(
            bernoulli_number(3, Character::MinusThree).unwrap(),
            rat(2, 3)
        );
        assert_eq!(
            bernoulli_number(3, Character::MinusFour).unwrap(),
            rat(3, 2)
        );
        // The classical table is the conductor-1 column.
        for k in [2u32, 4, 6, 8, 10, 12] {
            assert_eq!(bernoulli_number(k, Character::One).unwrap(), bernoulli(k));
        }
    }

    #[test]
    fn weight_one_normalization() {
        // -2k / B_{k,chi} at (k, chi) = (1, chi_{-4}) is 4: the sum of two
        // squares multiplier.
        let b = bernoulli_number(1, Character::MinusFour).unwrap();
        assert_eq!(rat(-2, 1) / b, rat(4, 1));
    }

    #[test]
    fn parity_mismatch_is_rejected() {
        assert!(matches!(
            bernoulli_number(2, Character::MinusFour),
            Err(Error::ParityMismatch { .. })
        ));
        assert!(matches!(
            bernoulli_number(1, Character::One),
            Err(Error::ParityMismatch { .. })
        ));
        assert!(matches!(
            bernoulli_number(3, Character::Twelve),
            Err(Error::ParityMismatch { .. })
        ));
    }
}
