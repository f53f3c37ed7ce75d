//! Eisenstein components of the representation numbers.
//!
//! For a pair `(a, b)` with `a + b` even and `a + b >= 4`, two generating
//! functions are decomposed:
//!
//! * psi side: `sum_m N*(a,b;m)/2^(a+b) q^m`, a form of level 48 whose
//!   Eisenstein component has coefficients `alpha_m`;
//! * phi side: `sum_m N(a,b;m) q^m`, a form of level 12 whose Eisenstein
//!   component has coefficients `beta_m`.
//!
//! [`build_plan`] emits the explicit Eisenstein combination for either side.
//! The coefficient tables split into four parity cases by `(a mod 2, (a+b)
//! mod 4)`; the case fixes weight and nebentypus.  [`alpha_factored`] computes
//! the same psi-side coefficient by a closed formula in the factorization
//! `m = 2^e2 3^e3 n23` and exists so that the two routes can be checked
//! against each other; it is never defined in terms of the plan.

use crate::character::{bernoulli_number, Character};
use crate::counts::{count_series, Variant};
use crate::divisor::sigma_u64;
use crate::eisenstein::{EisCombination, EisTerm, SpaceSignature};
use crate::qseries::QSeries;
use crate::{ipow, rat, rat_int, Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Which generating function a plan decomposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// All-odd representation numbers, normalized by `2^(a+b)`; level 48.
    Psi,
    /// All-integer representation numbers; level 12.
    Phi,
}

/// Parity class of `(a, b)`, named by `a mod 2` and `(a + b) mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityCase {
    /// `a, b` even, `a + b = 4k`: weight `2k`, principal nebentypus.
    EvenEven0,
    /// `a, b` odd, `a + b = 4k + 2`: weight `2k + 1`, nebentypus `chi_{-3}`.
    OddOdd2,
    /// `a, b` even, `a + b = 4k + 2`: weight `2k + 1`, nebentypus `chi_{-4}`.
    EvenEven2,
    /// `a, b` odd, `a + b = 4k`: weight `2k`, nebentypus `chi_12`.
    OddOdd0,
}

/// The form `x_1^2 + ... + x_a^2 + 3 y_1^2 + ... + 3 y_b^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FormParams {
    a: u32,
    b: u32,
    case: ParityCase,
    k: u32,
}

impl FormParams {
    /// Requires `a + b` even and `a + b >= 4`; smaller even sums have
    /// Eisenstein weight below 2 and are outside the plan tables.
    pub fn new(a: u32, b: u32) -> Result<Self> {
        let s = a + b;
        if !s.is_multiple_of(2) {
            return Err(Error::UnsupportedParams {
                a,
                b,
                reason: "a + b must be even",
            });
        }
        if s < 4 {
            return Err(Error::UnsupportedParams {
                a,
                b,
                reason: "a + b must be at least 4",
            });
        }
        let case = match (a % 2, s % 4) {
            (0, 0) => ParityCase::EvenEven0,
            (1, 2) => ParityCase::OddOdd2,
            (0, 2) => ParityCase::EvenEven2,
            (1, 0) => ParityCase::OddOdd0,
            _ => unreachable!("a + b even forces a, b of equal parity"),
        };
        let k = match case {
            ParityCase::EvenEven0 | ParityCase::OddOdd0 => s / 4,
            ParityCase::OddOdd2 | ParityCase::EvenEven2 => (s - 2) / 4,
        };
        Ok(FormParams { a, b, case, k })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn case(&self) -> ParityCase {
        self.case
    }

    /// `k` with `a + b = 4k` or `a + b = 4k + 2` by case.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Weight of both sides: `(a + b) / 2`.
    pub fn weight(&self) -> u32 {
        (self.a + self.b) / 2
    }

    /// Both generating functions are supported on `m = a + 3b (mod 8)` for
    /// the psi side; this is that residue.
    pub fn residue(&self) -> u32 {
        (self.a + 3 * self.b) % 8
    }

    /// `a + 3b`, the first exponent with a representation on either side.
    pub fn offset(&self) -> u32 {
        self.a + 3 * self.b
    }

    /// Nebentypus of both sides.
    pub fn character(&self) -> Character {
        match self.case {
            ParityCase::EvenEven0 => Character::One,
            ParityCase::OddOdd2 => Character::MinusThree,
            ParityCase::EvenEven2 => Character::MinusFour,
            ParityCase::OddOdd0 => Character::Twelve,
        }
    }

    /// Space the chosen side lives in.
    pub fn space(&self, side: Side) -> SpaceSignature {
        SpaceSignature {
            weight: self.weight(),
            level: match side {
                Side::Psi => 48,
                Side::Phi => 12,
            },
            character: self.character(),
        }
    }
}

/// An explicit Eisenstein combination equal to the Eisenstein component of
/// one side's generating function.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionPlan {
    pub params: FormParams,
    pub side: Side,
    pub space: SpaceSignature,
    pub combination: EisCombination,
}

impl DecompositionPlan {
    /// Eisenstein coefficient at `q^m`.
    pub fn coefficient(&self, m: u64) -> BigRational {
        self.combination.coefficient(m)
    }

    pub fn series(&self, prec: usize) -> QSeries {
        self.combination.series(prec)
    }
}

/// `(-1)^n` as `i64`.
fn neg_one_pow(n: u32) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `cos(pi t / 4)` for even `t`, as an exact rational: `t mod 8` in
/// `{0, 2, 4, 6}` gives `{1, 0, -1, 0}`.
pub fn cos_quarter_turn(t: u32) -> BigRational {
    match t % 8 {
        0 => rat_int(1),
        4 => rat_int(-1),
        2 | 6 => BigRational::zero(),
        _ => panic!("cos(pi t / 4) is irrational for odd t"),
    }
}

/// Builds the explicit Eisenstein combination for one side.
pub fn build_plan(params: &FormParams, side: Side) -> DecompositionPlan {
    let a = params.a;
    let w = params.weight();
    let k = params.k;
    // Rows are (outer coefficient, dilation, inner scale on the second
    // character pair); a row with both pair members scales to (coeff,
    // coeff * inner).
    let mut terms: Vec<EisTerm> = Vec::new();
    let mut push = |scale: BigRational, d: u64, eps: Character, psi: Character| {
        if !scale.is_zero() {
            terms.push(EisTerm::new(w, eps, psi, d, scale).expect("plan term is valid"));
        }
    };
    use Character::*;
    match params.case {
        ParityCase::EvenEven0 => {
            // Pairs ((-3)^(a/2) - 1) E(dz) + (3^2k - (-3)^(a/2)) E(3dz), all
            // on the principal pair.
            let sign = neg_one_pow((a + 3 * params.b) / 4);
            let t = BigRational::from(BigInt::from(-3).pow(a / 2));
            let p2 = BigRational::from(ipow(2, 2 * k));
            let p3 = BigRational::from(ipow(3, 2 * k));
            let low = &t - rat_int(1);
            let high = &p3 - &t;
            let rows: Vec<(BigRational, u64)> = match side {
                Side::Psi => {
                    let d1 = BigRational::from(ipow(2, 4 * k))
                        * (&p2 - rat_int(1))
                        * (&p3 - rat_int(1));
                    vec![
                        (rat_int(sign - 1) / &d1, 4),
                        ((&p2 + rat_int(1 - sign)) / &d1, 8),
                        (-&p2 / &d1, 16),
                    ]
                }
                Side::Phi => {
                    let d2 = (&p2 - rat_int(1)) * (&p3 - rat_int(1));
                    vec![
                        (rat_int(sign) / &d2, 1),
                        (rat_int(-1 - sign) / &d2, 2),
                        (&p2 / &d2, 4),
                    ]
                }
            };
            for (c, d) in rows {
                push(&c * &low, d, One, One);
                push(&c * &high, 3 * d, One, One);
            }
        }
        ParityCase::OddOdd2 => {
            // Pairs E(dz; chi_1, chi_{-3}) + s (-3)^((a-1)/2) E(dz; chi_{-3}, chi_1).
            let sign = neg_one_pow((a + 3 * params.b) / 4);
            let t = BigRational::from(BigInt::from(-3).pow((a - 1) / 2));
            let p2 = BigRational::from(ipow(2, 2 * k + 1));
            let rows: Vec<(BigRational, u64, i64)> = match side {
                Side::Psi => {
                    let d1 = BigRational::from(ipow(2, 4 * k + 2)) * (&p2 + rat_int(1));
                    vec![
                        (rat_int(1 - sign) / &d1, 4, -sign),
                        ((&p2 + rat_int(sign - 1)) / &d1, 8, -1),
                        (rat_int(-1) / (&p2 * (&p2 + rat_int(1))), 16, 1),
                    ]
                }
                Side::Phi => {
                    let d2 = &p2 + rat_int(1);
                    vec![
                        (rat_int(-sign) / &d2, 1, 1),
                        (rat_int(1 + sign) / &d2, 2, -sign),
                        (&p2 / &d2, 4, 1),
                    ]
                }
            };
            for (c, d, s) in rows {
                push(c.clone(), d, One, MinusThree);
                push(&c * rat_int(s) * &t, d, MinusThree, One);
            }
        }
        ParityCase::EvenEven2 => {
            // Pairs E(dz; chi_1, chi_{-4}) + f_d E(dz; chi_{-4}, chi_1).
            let sign = neg_one_pow((a + 3 * params.b - 2) / 4);
            let t = BigRational::from(BigInt::from(-3).pow(a / 2));
            let p2 = BigRational::from(ipow(2, 2 * k));
            let p3 = BigRational::from(ipow(3, 2 * k + 1));
            let low = &t - rat_int(1);
            let high = &p3 + &t;
            let rows: Vec<(BigRational, u64, BigRational)> = match side {
                Side::Psi => {
                    let d3 = BigRational::from(ipow(2, 4 * k + 2)) * (&p3 + rat_int(1));
                    vec![
                        (-&low / &d3, 2, rat_int(sign)),
                        (&low / &d3, 4, rat_int(sign) * &p2),
                        (&high / &d3, 6, rat_int(-sign)),
                        (-&high / &d3, 12, rat_int(-sign) * &p2),
                    ]
                }
                Side::Phi => {
                    let db = &p3 + rat_int(1);
                    vec![
                        (-&low / &db, 1, rat_int(sign) * &p2),
                        (&high / &db, 3, rat_int(-sign) * &p2),
                    ]
                }
            };
            for (c, d, f) in rows {
                push(c.clone(), d, One, MinusFour);
                push(&c * &f, d, MinusFour, One);
            }
        }
        ParityCase::OddOdd0 => {
            // Two families of pairs: (chi_1, chi_12) with (chi_{-3}, chi_{-4}),
            // and (chi_{-4}, chi_{-3}) with (chi_12, chi_1).
            let sign = neg_one_pow((a + 3 * params.b - 2) / 4);
            let t = BigRational::from(BigInt::from(-3).pow((a - 1) / 2));
            let inv4k = rat(1, 1) / BigRational::from(ipow(2, 4 * k));
            match side {
                Side::Psi => {
                    let rows1: [(BigRational, u64, i64); 2] =
                        [(inv4k.clone(), 2, -1), (-&inv4k, 4, 1)];
                    for (c, d, s) in rows1 {
                        push(c.clone(), d, One, Twelve);
                        push(&c * rat_int(s) * &t, d, MinusThree, MinusFour);
                    }
                    let c52 = rat_int(sign) * &inv4k;
                    let c54 = rat_int(sign) / BigRational::from(ipow(2, 2 * k + 1));
                    let rows2: [(BigRational, u64, i64); 2] = [(c52, 2, -1), (c54, 4, 1)];
                    for (c, d, s) in rows2 {
                        push(c.clone(), d, MinusFour, MinusThree);
                        push(&c * rat_int(s) * &t, d, Twelve, One);
                    }
                }
                Side::Phi => {
                    push(rat_int(1), 1, One, Twelve);
                    push(t.clone(), 1, MinusThree, MinusFour);
                    let c5 = rat_int(-sign) * BigRational::from(ipow(2, 2 * k - 1));
                    push(c5.clone(), 1, MinusFour, MinusThree);
                    push(&c5 * &t, 1, Twelve, One);
                }
            }
        }
    }
    DecompositionPlan {
        params: *params,
        side,
        space: params.space(side),
        combination: EisCombination::new(terms),
    }
}

/// Psi-side Eisenstein coefficient `alpha_m` via the plan.
pub fn alpha(params: &FormParams, m: u64) -> BigRational {
    build_plan(params, Side::Psi).coefficient(m)
}

/// Phi-side Eisenstein coefficient `beta_m` via the plan.
pub fn beta(params: &FormParams, m: u64) -> BigRational {
    build_plan(params, Side::Phi).coefficient(m)
}

/// `m = 2^e2 3^e3 n23` with `gcd(n23, 6) = 1`.
pub fn split_two_three(m: u64) -> (u32, u32, u64) {
    assert!(m >= 1, "positive argument required");
    let mut m = m;
    let mut e2 = 0;
    while m.is_multiple_of(2) {
        m /= 2;
        e2 += 1;
    }
    let mut e3 = 0;
    while m.is_multiple_of(3) {
        m /= 3;
        e3 += 1;
    }
    (e2, e3, m)
}

/// Psi-side coefficient `alpha_m` via the closed factored formulas, one per
/// parity case and 2-adic branch.  Requires `m` positive and congruent to
/// `a + 3b (mod 8)`; off that progression `alpha_m = 0` and the factored
/// form does not apply.
pub fn alpha_factored(params: &FormParams, m: u64) -> Result<BigRational> {
    if m == 0 || m % 8 != params.residue() as u64 {
        return Err(Error::Precondition(
            "factored alpha needs m = a + 3b (mod 8), m > 0",
        ));
    }
    let (e2, e3, n23) = split_two_three(m);
    let k = params.k;
    let a = params.a;
    let chi = params.character();
    let w = params.weight();
    let b_norm = bernoulli_number(w, chi).expect("weight matches nebentypus parity");
    let mult = rat_int(-2 * w as i64) / b_norm;
    let wm1 = w - 1;
    let tail = |eps: Character, psi: Character| {
        BigRational::from(
            ipow(2, wm1 * e2) * ipow(3, wm1 * e3) * sigma_u64(wm1, eps, psi, n23),
        )
    };
    let chi3_n23 = Character::MinusThree.eval((n23 % 3) as i64);
    use Character::*;
    let f = match params.case {
        ParityCase::EvenEven0 => {
            debug_assert!(e2 >= 2);
            let t = BigRational::from(BigInt::from(-3).pow(a / 2));
            let p3 = BigRational::from(ipow(3, 2 * k));
            let p3m = BigRational::from(ipow(3, 2 * k - 1));
            let num = (&t * (&p3m - rat_int(1)) + rat_int(2) * &p3m)
                - (&p3 - rat_int(1)) / BigRational::from(ipow(3, (2 * k - 1) * e3));
            let den = BigRational::from(ipow(2, 8 * k - 3))
                * (BigRational::from(ipow(2, 2 * k)) - rat_int(1))
                * (&p3 - rat_int(1))
                * (&p3m - rat_int(1));
            let lead = if e2 == 2 { rat_int(-1) } else { rat_int(1) };
            lead * num / den * tail(One, One)
        }
        ParityCase::OddOdd2 => {
            debug_assert!(e2 >= 2);
            let t = BigRational::from(BigInt::from(-3).pow((a - 1) / 2));
            let p2 = BigRational::from(ipow(2, 2 * k + 1));
            let den = BigRational::from(ipow(2, 8 * k + 1)) * (&p2 + rat_int(1));
            let inv3 = rat(1, 1) / BigRational::from(ipow(3, 2 * k * e3));
            if e2 == 2 {
                (inv3 + &t * rat_int(chi3_n23)) / den * tail(One, MinusThree)
            } else {
                let chi3_m = rat_int(neg_one_pow(e2) * chi3_n23);
                rat_int(neg_one_pow(e2 + 1)) * (inv3 + &t * chi3_m) / den
                    * tail(One, MinusThree)
            }
        }
        ParityCase::EvenEven2 => {
            debug_assert_eq!(e2, 1);
            let t = BigRational::from(BigInt::from(-3).pow(a / 2));
            let p3k = BigRational::from(ipow(3, 2 * k));
            let p3 = BigRational::from(ipow(3, 2 * k + 1));
            let pm3 = rat_int(neg_one_pow(e3));
            let num = pm3 * (-&p3k * (&t + rat_int(2)) - &t)
                + (&p3 + rat_int(1)) / BigRational::from(ipow(3, 2 * k * e3));
            let den = BigRational::from(ipow(2, 6 * k + 1))
                * (&p3k + rat_int(1))
                * (&p3 + rat_int(1));
            num / den * tail(One, MinusFour)
        }
        ParityCase::OddOdd0 => {
            debug_assert_eq!(e2, 1);
            let t = BigRational::from(BigInt::from(-3).pow((a - 1) / 2));
            let inv3 = rat(1, 1) / BigRational::from(ipow(3, (2 * k - 1) * e3));
            let num = inv3 - rat_int(neg_one_pow(e3)) * &t * rat_int(chi3_n23);
            num / BigRational::from(ipow(2, 6 * k - 2)) * tail(One, Twelve)
        }
    };
    Ok(mult * f)
}

/// Cusp remainder of one side to precision `prec`: the generating function
/// minus its Eisenstein component.
pub fn cusp_remainder(params: &FormParams, side: Side, prec: usize) -> QSeries {
    let plan = build_plan(params, side);
    let gen = match side {
        Side::Psi => {
            let odd = count_series(params.a, params.b, Variant::Odd, prec);
            odd.scale(&(rat(1, 1) / BigRational::from(ipow(2, params.a + params.b))))
        }
        Side::Phi => count_series(params.a, params.b, Variant::All, prec),
    };
    &gen - &plan.series(prec)
}

/// True when the factored formula says `alpha_m = 0`: only for `a <= 1`,
/// on explicit residue conditions.
pub fn alpha_vanishes(params: &FormParams, m: u64) -> Result<bool> {
    Ok(alpha_factored(params, m)?.is_zero())
}
