//! Dense q-expansions with exact rational coefficients.
//!
//! A [`QSeries`] holds the coefficients of `c_0 + c_1 q + ... + c_{P-1} q^{P-1}`
//! for a fixed working precision `P`; everything at `q^P` and beyond is
//! unknown, not zero.  Binary operations truncate to the smaller precision of
//! the two operands.
//!
//! The module also provides the two theta series of this crate,
//!
//! ```text
//!     phi(z)   = 1 + 2 sum_{m >= 1} q^{m^2}
//!     Psi8(z)  = sum_{m >= 1} q^{8 m(m-1)/2 + 1} = sum over odd x > 0 of q^{x^2}
//! ```
//!
//! and eta-quotient expansion, where `eta(d z) = q^{d/24} prod (1 - q^{d n})`.

use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// A truncated q-expansion with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigRational>,
}

impl QSeries {
    /// The zero series at precision `prec`.
    pub fn zero(prec: usize) -> Self {
        assert!(prec >= 1, "precision must be at least 1");
        QSeries {
            coeffs: vec![BigRational::zero(); prec],
        }
    }

    /// The constant series 1 at precision `prec`.
    pub fn one(prec: usize) -> Self {
        Self::monomial(BigRational::one(), 0, prec)
    }

    /// `c q^e` at precision `prec`.
    pub fn monomial(c: BigRational, e: usize, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if e < prec {
            s.coeffs[e] = c;
        }
        s
    }

    /// Build from the given coefficients; the precision is their count.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "precision must be at least 1");
        QSeries { coeffs }
    }

    /// Working precision: coefficients are known for exponents `< precision()`.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `q^n`; panics when `n` is at or beyond the precision,
    /// where the coefficient is unknown rather than zero.
    pub fn coeff(&self, n: usize) -> &BigRational {
        assert!(
            n < self.coeffs.len(),
            "coefficient {n} beyond precision {}",
            self.coeffs.len()
        );
        &self.coeffs[n]
    }

    /// All known coefficients, exponent-indexed.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Lower the precision to `prec`.
    pub fn truncate(&self, prec: usize) -> Self {
        assert!(1 <= prec && prec <= self.coeffs.len());
        QSeries {
            coeffs: self.coeffs[..prec].to_vec(),
        }
    }

    /// Exponent of the first nonzero known coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &BigRational) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Substitute `q -> q^d`; the precision is preserved, so coefficients of
    /// the source beyond `precision()/d` fall off the end.
    pub fn dilate(&self, d: usize) -> Self {
        assert!(d >= 1, "dilation factor must be at least 1");
        let p = self.coeffs.len();
        let mut out = Self::zero(p);
        for (i, c) in self.coeffs.iter().enumerate() {
            let Some(j) = i.checked_mul(d) else { break };
            if j >= p {
                break;
            }
            out.coeffs[j] = c.clone();
        }
        out
    }

    fn nonzero_count(&self, upto: usize) -> usize {
        self.coeffs[..upto].iter().filter(|c| !c.is_zero()).count()
    }

    /// Cauchy product truncated to the smaller precision.  The sparser
    /// operand drives the outer loop, so products against theta series cost
    /// `O(P sqrt(P))` rather than `O(P^2)`.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let p = self.coeffs.len().min(other.coeffs.len());
        let (outer, inner) = if self.nonzero_count(p) <= other.nonzero_count(p) {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = QSeries::zero(p);
        for (i, ci) in outer.coeffs.iter().enumerate().take(p) {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in inner.coeffs.iter().enumerate().take(p - i) {
                if cj.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += ci * cj;
            }
        }
        out
    }

    /// `self^e` by binary exponentiation; `pow(s, 0)` is the constant 1 at
    /// the precision of `s`, including for the zero series.
    pub fn pow(&self, e: u32) -> QSeries {
        let mut acc = QSeries::one(self.coeffs.len());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn invert(&self) -> Result<QSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::Precondition(
                "cannot invert a series with zero constant term",
            ));
        }
        let p = self.coeffs.len();
        let c0 = self.coeffs[0].recip();
        let mut out = QSeries::zero(p);
        out.coeffs[0] = c0.clone();
        for n in 1..p {
            let mut acc = BigRational::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() && !out.coeffs[n - i].is_zero() {
                    acc += &self.coeffs[i] * &out.coeffs[n - i];
                }
            }
            out.coeffs[n] = -acc * &c0;
        }
        Ok(out)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let p = self.coeffs.len().min(rhs.coeffs.len());
        QSeries {
            coeffs: (0..p).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let p = self.coeffs.len().min(rhs.coeffs.len());
        QSeries {
            coeffs: (0..p).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

/// `phi(z) = 1 + 2 sum q^{m^2}` to precision `prec`.
pub fn phi_series(prec: usize) -> QSeries {
    let mut s = QSeries::one(prec);
    let two = crate::rat_int(2);
    let mut m = 1usize;
    while m * m < prec {
        s.coeffs[m * m] = two.clone();
        m += 1;
    }
    s
}

/// `Psi8(z) = Psi(8z) = sum_{m >= 1} q^{(2m-1)^2}` to precision `prec`.
pub fn psi8_series(prec: usize) -> QSeries {
    let mut s = QSeries::zero(prec);
    let one = BigRational::one();
    let mut x = 1usize;
    while x * x < prec {
        s.coeffs[x * x] = one.clone();
        x += 2;
    }
    s
}

/// A formal product `prod_i eta(d_i z)^{e_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaQuotient {
    /// `(dilation, exponent)` pairs; dilations need not be distinct.
    pub factors: Vec<(u64, i64)>,
}

impl EtaQuotient {
    pub fn new(factors: &[(u64, i64)]) -> Self {
        assert!(
            factors.iter().all(|&(d, _)| d >= 1),
            "eta dilations must be positive"
        );
        EtaQuotient {
            factors: factors.to_vec(),
        }
    }

    /// Leading q-power of the quotient, in units of 1/24.
    pub fn valuation_24(&self) -> i64 {
        self.factors.iter().map(|&(d, e)| d as i64 * e).sum()
    }

    /// Expand as an integral q-series to precision `prec`.
    ///
    /// The prefactor `q^{sum d_i e_i / 24}` must be a non-negative integer
    /// power of `q`; otherwise [`Error::FractionalValuation`] is returned.
    pub fn expand(&self, prec: usize) -> Result<QSeries> {
        let v24 = self.valuation_24();
        if v24 < 0 || v24 % 24 != 0 {
            return Err(Error::FractionalValuation { twentyfourths: v24 });
        }
        let shift = (v24 / 24) as usize;
        if shift >= prec {
            return Ok(QSeries::zero(prec));
        }
        let p = prec - shift;

        // Net exponent per distinct dilation.
        let mut net: std::collections::BTreeMap<u64, i64> = std::collections::BTreeMap::new();
        for &(d, e) in &self.factors {
            *net.entry(d).or_insert(0) += e;
        }
        let mut num = QSeries::one(p);
        let mut den = QSeries::one(p);
        for (&d, &e) in &net {
            if e == 0 {
                continue;
            }
            let unit = euler_product(d as usize, p);
            let powed = unit.pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = num.mul(&powed);
            } else {
                den = den.mul(&powed);
            }
        }
        let unit_part = num.mul(&den.invert().expect("Euler products are units"));

        let mut out = QSeries::zero(prec);
        for i in 0..p {
            out.coeffs[shift + i] = unit_part.coeffs[i].clone();
        }
        Ok(out)
    }
}

/// `prod_{n >= 1} (1 - q^{d n})` to precision `prec`.
fn euler_product(d: usize, prec: usize) -> QSeries {
    let mut s = QSeries::one(prec);
    let mut n = d;
    while n < prec {
        // Multiply by (1 - q^n) in place: c_i -= c_{i-n}, from the top down.
        for i in (n..prec).rev() {
            let t = s.coeffs[i - n].clone();
            if !t.is_zero() {
                s.coeffs[i] -= t;
            }
        }
        n += d;
    }
    s
}

/// Expand `prod eta(d_i z)^{e_i}` given as `(d_i, e_i)` pairs.
pub fn eta_quotient_series(factors: &[(u64, i64)], prec: usize) -> Result<QSeries> {
    EtaQuotient::new(factors).expand(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn small(v: &[i64], prec: usize) -> QSeries {
        let mut s = QSeries::zero(prec);
        for (i, &c) in v.iter().enumerate() {
            if i < prec {
                s.coeffs[i] = rat_int(c);
            }
        }
        s
    }

    #[test]
    fn mul_truncates_to_min_precision() {
        let a = small(&[1, 1, 1, 1, 1, 1], 6);
        let b = small(&[1, 2], 3);
        let c = &a * &b;
        assert_eq!(c.precision(), 3);
        assert_eq!(c.coeffs(), &[rat_int(1), rat_int(3), rat_int(3)]);
        assert_eq!((&a + &b).precision(), 3);
    }

    #[test]
    fn pow_zero_is_one_even_for_zero_series() {
        assert_eq!(QSeries::zero(5).pow(0), QSeries::one(5));
        assert_eq!(phi_series(8).pow(0), QSeries::one(8));
        assert_eq!(QSeries::zero(5).pow(3), QSeries::zero(5));
    }

    #[test]
    fn dilate_identity_and_stretch() {
        let s = small(&[3, 1, 4, 1, 5], 5);
        assert_eq!(s.dilate(1), s);
        let d = s.dilate(2);
        assert_eq!(
            d.coeffs(),
            &[rat_int(3), rat_int(0), rat_int(1), rat_int(0), rat_int(4)]
        );
    }

    #[test]
    fn invert_round_trips() {
        let s = small(&[1, -3, 5, 7, -2, 1, 9], 7);
        let inv = s.invert().unwrap();
        assert_eq!(&s * &inv, QSeries::one(7));
        assert!(QSeries::zero(4).invert().is_err());
    }

    #[test]
    fn phi_squared_counts_two_squares() {
        // Coefficients of phi^2 are r_2(n): 1, 4, 4, 0, 4, 8, 0, 0, 4, ...
        let p2 = phi_series(10).pow(2);
        let expect = [1, 4, 4, 0, 4, 8, 0, 0, 4, 4];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(p2.coeff(n), &rat_int(e), "r_2({n})");
        }
    }

    #[test]
    fn psi8_is_odd_squares() {
        let s = psi8_series(60);
        for n in 0..60usize {
            let is_odd_square = {
                let r = (n as f64).sqrt().round() as usize;
                r * r == n && r % 2 == 1
            };
            assert_eq!(!s.coeff(n).is_zero(), is_odd_square, "exponent {n}");
        }
    }

    #[test]
    fn eta_quotient_identities() {
        // phi(z) = eta^5(2z) / (eta^2(z) eta^2(4z))
        let p = 200;
        let lhs = phi_series(p);
        let rhs = eta_quotient_series(&[(2, 5), (1, -2), (4, -2)], p).unwrap();
        assert_eq!(lhs, rhs);
        // Psi8(z) = eta^2(16z) / eta(8z)
        let lhs = psi8_series(p);
        let rhs = eta_quotient_series(&[(16, 2), (8, -1)], p).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eta_quotient_product_form_matches_pow_dilate() {
        // Psi8^a(z) Psi8^b(3z) = eta^{2a}(16z) eta^{2b}(48z) / (eta^a(8z) eta^b(24z))
        // at (a, b) = (1, 1).
        let p = 200;
        let direct = psi8_series(p).mul(&psi8_series(p).dilate(3));
        let quot =
            eta_quotient_series(&[(16, 2), (48, 2), (8, -1), (24, -1)], p).unwrap();
        assert_eq!(direct, quot);
    }

    #[test]
    fn fractional_valuation_is_rejected() {
        // eta^2(2z)/eta(z) has leading power 3/24: not integral.
        match eta_quotient_series(&[(2, 2), (1, -1)], 10) {
            Err(Error::FractionalValuation { twentyfourths: 3 }) => {}
            other => panic!("expected fractional valuation, got {other:?}"),
        }
        // eta(z)/eta^2(2z) has negative leading power.
        assert!(matches!(
            eta_quotient_series(&[(1, 1), (2, -2)], 10),
            Err(Error::FractionalValuation { .. })
        ));
    }

    #[test]
    fn eta_cancellation_gives_one() {
        let s = eta_quotient_series(&[(3, 2), (3, -2)], 16).unwrap();
        assert_eq!(s, QSeries::one(16));
    }

    #[test]
    fn rational_scale() {
        let s = phi_series(5).scale(&rat(1, 3));
        assert_eq!(s.coeff(1), &rat(2, 3));
    }

    use proptest::prelude::*;

    fn arb_series() -> impl Strategy<Value = QSeries> {
        proptest::collection::vec((-9i64..=9, 1i64..=4), 12).prop_map(|v| {
            QSeries::from_coeffs(v.into_iter().map(|(p, q)| rat(p, q)).collect())
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).mul(&c), a.mul(&(&b * &c)));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &QSeries::one(12), a.clone());
        }

        #[test]
        fn dilation_is_multiplicative(a in arb_series(), d1 in 1usize..4, d2 in 1usize..4) {
            prop_assert_eq!(a.dilate(d1).dilate(d2), a.dilate(d1 * d2));
        }
    }
}
