//! Eisenstein series for the character pairs of this crate.
//!
//! For characters `eps`, `psi` of coprime conductors `L`, `M` with
//! `chi = eps psi` and `chi(-1) = (-1)^k`, the weight-`k` series is
//!
//! ```text
//!     E_k(z; eps, psi) = eps(0) - (2k / B_{k,chi}) sum_{n >= 1} sigma_{k-1}(eps, psi; n) q^n ,
//! ```
//!
//! where `eps(0)` is 1 for the principal character and 0 otherwise.  A
//! dilation `E_k(dz; ...)` replaces `q^n` by `q^{dn}`.  Weight 2 with both
//! characters principal is kept as a formal series with coefficients
//! `-24 sigma_1(n)`; only the differences `E_2(z) - d E_2(dz)` enumerated in
//! [`enumerate_basis`] are modular, but coefficient extraction never needs
//! that fact.

use crate::character::{bernoulli_number, Character};
use crate::divisor::{factorize, sigma_u64};
use crate::qseries::QSeries;
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::Zero;

/// A scaled, dilated Eisenstein series `scale * E_weight(dilation * z; eps, psi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EisTerm {
    pub weight: u32,
    pub eps: Character,
    pub psi: Character,
    pub dilation: u64,
    pub scale: BigRational,
}

impl EisTerm {
    /// Validates weight, coprimality of the conductors, and the parity
    /// condition `eps(-1) psi(-1) = (-1)^weight` (without it the series is
    /// identically zero and useless here).
    pub fn new(
        weight: u32,
        eps: Character,
        psi: Character,
        dilation: u64,
        scale: BigRational,
    ) -> Result<Self> {
        if weight == 0 {
            return Err(Error::Precondition("Eisenstein weight must be >= 1"));
        }
        if dilation == 0 {
            return Err(Error::Precondition("dilation must be >= 1"));
        }
        let Some(chi) = eps.product(psi) else {
            return Err(Error::Precondition(
                "character conductors must be coprime",
            ));
        };
        if chi.is_even() != weight.is_multiple_of(2) {
            return Err(Error::ParityMismatch {
                weight,
                discriminant: chi.discriminant(),
            });
        }
        Ok(EisTerm {
            weight,
            eps,
            psi,
            dilation,
            scale,
        })
    }

    /// `-2k / B_{k,chi}`, the factor in front of the divisor sums.
    pub fn multiplier(&self) -> BigRational {
        eis_multiplier(self.weight, self.eps, self.psi)
    }

    /// Coefficient of `q^n`.
    pub fn coefficient(&self, n: u64) -> BigRational {
        if n == 0 {
            return if self.eps == Character::One {
                self.scale.clone()
            } else {
                BigRational::zero()
            };
        }
        if !n.is_multiple_of(self.dilation) {
            return BigRational::zero();
        }
        let s = sigma_u64(self.weight - 1, self.eps, self.psi, n / self.dilation);
        &self.scale * self.multiplier() * BigRational::from(s)
    }

    /// The q-expansion to precision `prec`.
    pub fn series(&self, prec: usize) -> QSeries {
        let mut coeffs = Vec::with_capacity(prec);
        let mult = &self.scale * self.multiplier();
        coeffs.push(self.coefficient(0));
        for n in 1..prec as u64 {
            if n % self.dilation != 0 {
                coeffs.push(BigRational::zero());
            } else {
                let s = sigma_u64(self.weight - 1, self.eps, self.psi, n / self.dilation);
                coeffs.push(&mult * BigRational::from(s));
            }
        }
        QSeries::from_coeffs(coeffs)
    }
}

/// `-2k / B_{k, eps*psi}`.  Panics when the parity is wrong; [`EisTerm::new`]
/// rules that out for constructed terms.
pub fn eis_multiplier(weight: u32, eps: Character, psi: Character) -> BigRational {
    let chi = eps
        .product(psi)
        .expect("character conductors must be coprime");
    let b = bernoulli_number(weight, chi).expect("parity checked at construction");
    crate::rat_int(-2 * weight as i64) / b
}

/// A finite linear combination of Eisenstein terms of one weight.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EisCombination {
    pub terms: Vec<EisTerm>,
}

impl EisCombination {
    pub fn new(terms: Vec<EisTerm>) -> Self {
        EisCombination { terms }
    }

    pub fn coefficient(&self, n: u64) -> BigRational {
        self.terms
            .iter()
            .map(|t| t.coefficient(n))
            .fold(BigRational::zero(), |acc, c| acc + c)
    }

    pub fn series(&self, prec: usize) -> QSeries {
        let mut acc = QSeries::zero(prec);
        for t in &self.terms {
            acc = &acc + &t.series(prec);
        }
        acc
    }
}

/// A modular-form space, identified by weight, level, and nebentypus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceSignature {
    pub weight: u32,
    pub level: u64,
    pub character: Character,
}

/// The standard basis of the Eisenstein subspace of
/// `M_weight(Gamma_0(level), character)`:
///
/// one series `E_k(dz; eps, psi)` for every factorization
/// `eps psi = character` into characters of coprime conductors `L`, `M` and
/// every `d >= 1` with `L M d | level` - except in weight 2 with principal
/// character, where the combinations `E_2(z) - d E_2(dz)`, `1 < d | level`,
/// replace the non-modular single series.
///
/// Only levels 12 and 48 are wired up, with the weight matching the
/// character parity.
pub fn enumerate_basis(space: &SpaceSignature) -> Result<Vec<EisCombination>> {
    let unsupported = Error::UnsupportedSpace {
        weight: space.weight,
        level: space.level,
        discriminant: space.character.discriminant(),
    };
    if !(space.level == 12 || space.level == 48)
        || space.weight < 2
        || space.character.is_even() != space.weight.is_multiple_of(2)
    {
        return Err(unsupported);
    }
    let one = BigRational::from_integer(1.into());
    let mut basis = Vec::new();
    if space.weight == 2 && space.character == Character::One {
        for d in divisors(space.level) {
            if d == 1 {
                continue;
            }
            basis.push(EisCombination::new(vec![
                EisTerm::new(2, Character::One, Character::One, 1, one.clone())?,
                EisTerm::new(
                    2,
                    Character::One,
                    Character::One,
                    d,
                    -crate::rat_int(d as i64),
                )?,
            ]));
        }
        // Non-principal factorizations of the principal character would join
        // here; none exist among the four characters at these levels.
        return Ok(basis);
    }
    for eps in Character::ALL {
        for psi in Character::ALL {
            if eps.product(psi) != Some(space.character) {
                continue;
            }
            let lm = eps.conductor() * psi.conductor();
            if !space.level.is_multiple_of(lm) {
                continue;
            }
            for d in divisors(space.level / lm) {
                basis.push(EisCombination::new(vec![EisTerm::new(
                    space.weight,
                    eps,
                    psi,
                    d,
                    one.clone(),
                )?]));
            }
        }
    }
    Ok(basis)
}

/// Sturm bound `ceil(weight * [SL_2(Z) : Gamma_0(level)] / 12)`: two forms of
/// this weight and level agreeing on all q-exponents up to the bound are
/// equal.
pub fn sturm_bound(space: &SpaceSignature) -> u64 {
    let mut index = space.level;
    for (p, _) in factorize(space.level) {
        index = index / p * (p + 1);
    }
    (space.weight as u64 * index).div_ceil(12)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counts::{count_vec, Variant};
    use crate::rat;
    use Character::*;

    #[test]
    fn multiplier_frozen_values() {
        assert_eq!(eis_multiplier(2, One, One), rat(-24, 1));
        assert_eq!(eis_multiplier(1, One, MinusFour), rat(4, 1));
        assert_eq!(eis_multiplier(1, MinusFour, One), rat(4, 1));
        assert_eq!(eis_multiplier(2, One, Twelve), rat(-1, 1));
        assert_eq!(eis_multiplier(3, One, MinusThree), rat(-9, 1));
        assert_eq!(eis_multiplier(3, One, MinusFour), rat(-4, 1));
    }

    #[test]
    fn e2_coefficients() {
        let e2 = EisTerm::new(2, One, One, 1, rat(1, 1)).unwrap();
        assert_eq!(e2.coefficient(0), rat(1, 1));
        for n in 1u64..=30 {
            assert_eq!(
                e2.coefficient(n),
                rat(-24, 1) * BigRational::from(sigma_u64(1, One, One, n))
            );
        }
        let s = e2.series(31);
        assert_eq!(s.coeff(1), &rat(-24, 1));
        assert_eq!(s.coeff(6), &rat(-288, 1));
    }

    #[test]
    fn weight_one_two_squares() {
        // 4 E_1(z; chi_1, chi_{-4}) - 3 has coefficient 4 sigma_0(chi_1, chi_{-4}; n)
        // at n >= 1, which is r_2(n): the two-squares count.
        let e1 = EisTerm::new(1, One, MinusFour, 1, rat(1, 1)).unwrap();
        assert_eq!(e1.coefficient(1), rat(4, 1));
        let r2 = count_vec(2, 0, Variant::All, 64);
        for n in 1u64..64 {
            assert_eq!(
                e1.coefficient(n),
                crate::rat_int(r2[n as usize] as i64),
                "r_2({n})"
            );
        }
    }

    #[test]
    fn dilation_support() {
        let t = EisTerm::new(3, One, MinusThree, 6, rat(5, 7)).unwrap();
        let s = t.series(100);
        for n in 0..100usize {
            if n % 6 != 0 {
                assert!(s.coeff(n).is_zero(), "unexpected support at {n}");
            }
        }
        assert!(!s.coeff(6).is_zero());
        // Constant term tracks eps only.
        let t = EisTerm::new(3, MinusThree, One, 2, rat(1, 1)).unwrap();
        assert!(t.coefficient(0).is_zero());
    }

    #[test]
    fn parity_and_argument_validation() {
        assert!(matches!(
            EisTerm::new(2, One, MinusFour, 1, rat(1, 1)),
            Err(Error::ParityMismatch { .. })
        ));
        assert!(matches!(
            EisTerm::new(3, One, One, 1, rat(1, 1)),
            Err(Error::ParityMismatch { .. })
        ));
        assert!(matches!(
            EisTerm::new(2, MinusThree, Twelve, 1, rat(1, 1)),
            Err(Error::Precondition(_))
        ));
        assert!(EisTerm::new(2, MinusThree, MinusFour, 1, rat(1, 1)).is_ok());
    }

    #[test]
    fn sturm_bound_frozen_values() {
        let b = |weight, level| {
            sturm_bound(&SpaceSignature {
                weight,
                level,
                character: One,
            })
        };
        assert_eq!(b(2, 48), 16);
        assert_eq!(b(1, 12), 2);
        assert_eq!(b(2, 768), 256);
        assert_eq!(b(4, 12), 8);
    }

    #[test]
    fn basis_weight_two_principal() {
        let basis = enumerate_basis(&SpaceSignature {
            weight: 2,
            level: 12,
            character: One,
        })
        .unwrap();
        // E_2(z) - d E_2(dz) for d in {2, 3, 4, 6, 12}.
        assert_eq!(basis.len(), 5);
        for (combo, d) in basis.iter().zip([2u64, 3, 4, 6, 12]) {
            assert_eq!(combo.terms.len(), 2);
            assert_eq!(combo.terms[0].dilation, 1);
            assert_eq!(combo.terms[1].dilation, d);
            assert_eq!(combo.terms[1].scale, rat(-(d as i64), 1));
            // The difference is modular; its constant term is 1 - d.
            assert_eq!(combo.coefficient(0), rat(1 - d as i64, 1));
        }
    }

    #[test]
    fn basis_shapes() {
        let count = |weight, level, character| {
            enumerate_basis(&SpaceSignature {
                weight,
                level,
                character,
            })
            .unwrap()
            .len()
        };
        // (chi_1, chi_{-3}) and (chi_{-3}, chi_1) with 3d | 48; the pair
        // (chi_{-4}, chi_12) is excluded, its conductors sharing a factor.
        assert_eq!(count(3, 48, MinusThree), 10);
        assert_eq!(count(3, 12, MinusThree), 6);
        assert_eq!(count(3, 48, MinusFour), 12);
        assert_eq!(count(3, 12, MinusFour), 4);
        assert_eq!(count(2, 48, Twelve), 12);
        assert_eq!(count(2, 12, Twelve), 4);
        assert_eq!(count(4, 48, One), 10);
        assert_eq!(count(2, 48, One), 9);
    }

    #[test]
    fn unsupported_spaces_are_rejected() {
        let err = |weight, level, character| {
            matches!(
                enumerate_basis(&SpaceSignature {
                    weight,
                    level,
                    character,
                }),
                Err(Error::UnsupportedSpace { .. })
            )
        };
        assert!(err(2, 10, One));
        assert!(err(3, 48, One));
        assert!(err(2, 48, MinusThree));
        assert!(err(1, 12, MinusFour));
    }
}
