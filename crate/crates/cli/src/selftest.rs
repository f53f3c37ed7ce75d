//! Built-in cross-check suite.  Every check re-derives a quantity by two
//! independent routes (or against a frozen value) and reports one line; the
//! hidden fault hook corrupts one decomposition plan so the suite's ability
//! to fail can itself be tested.

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::Zero;
use trisq::character::bernoulli_number;
use trisq::counts::count_vec;
use trisq::decomposition::{alpha_factored, build_plan, FormParams, Side};
use trisq::divisor::{
    factorize, omega_upper_bound_check, sigma_factored, sigma_lower_bound_check, sigma_u64,
    twist_identity_check, two_shift_identity_check,
};
use trisq::verify::{
    check_eisenstein_relations, check_exact_identity, delta, expected_constant,
    expected_tilde_constant, growth_diagnostic, limit_value, rational_string,
    ExactIdentityClaim, RatioCase, EXACT_MEMBERS, TILDE_MEMBERS,
};
use trisq::{
    count, count_series, enumerate_basis, eta_quotient_series, phi_series, psi8_series, rat,
    rat_int, sturm_bound, triangular_count, Character, CountQuery, EisTerm, SpaceSignature,
    Status, Variant,
};

/// Which decomposition plan the hidden fault hook corrupts, named by the
/// parity of `a` and the residue of `a + b` mod 4.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultCase {
    /// Even exponents, `a + b = 4k`; representative (2, 2)
    Ee0,
    /// Odd exponents, `a + b = 4k + 2`; representative (3, 3)
    Oo2,
    /// Even exponents, `a + b = 4k + 2`; representative (4, 2)
    Ee2,
    /// Odd exponents, `a + b = 4k`; representative (3, 1)
    Oo0,
}

pub struct Config {
    pub precision: usize,
    pub depth: u64,
    pub fault: Option<FaultCase>,
}

type Check = fn(&Config) -> Result<(), String>;

/// Runs every check and returns the rendered output plus overall success.
pub fn run(cfg: &Config) -> (String, bool) {
    let checks: &[(&str, Check)] = &[
        ("characters/tables", check_character_tables),
        ("characters/bernoulli", check_bernoulli),
        ("divisor/factored", check_divisor_factored),
        ("divisor/two-shift", check_two_shift),
        ("divisor/twist", check_twist),
        ("divisor/bounds", check_divisor_bounds),
        ("qseries/eta-quotients", check_eta_quotients),
        ("counts/enumeration", check_counts_enumeration),
        ("counts/triangular", check_triangular),
        ("eisenstein/frozen", check_eisenstein_frozen),
        ("decomposition/ee0", check_decomposition_ee0),
        ("decomposition/oo2", check_decomposition_oo2),
        ("decomposition/ee2", check_decomposition_ee2),
        ("decomposition/oo0", check_decomposition_oo0),
        ("verify/identities", check_identities),
        ("verify/refutations", check_refutations),
        ("verify/relations", check_relations),
        ("verify/limits", check_limits),
        ("verify/growth", check_growth),
    ];
    let mut out = String::new();
    let mut failed = 0usize;
    for (name, check) in checks {
        match check(cfg) {
            Ok(()) => out.push_str(&format!("{name:<24} ok\n")),
            Err(msg) => {
                failed += 1;
                out.push_str(&format!("{name:<24} FAIL: {msg}\n"));
            }
        }
    }
    out.push_str(&format!(
        "self-test: {} passed, {} failed (precision {}, depth {})\n",
        checks.len() - failed,
        failed,
        cfg.precision,
        cfg.depth
    ));
    (out, failed == 0)
}

fn check_character_tables(_cfg: &Config) -> Result<(), String> {
    let chars = [
        Character::One,
        Character::MinusThree,
        Character::MinusFour,
        Character::Twelve,
    ];
    for chi in chars {
        let c = chi.conductor() as i64;
        for n in -120..=120i64 {
            if chi.eval(n + c) != chi.eval(n) {
                return Err(format!(
                    "period failure for discriminant {} at n = {n}",
                    chi.discriminant()
                ));
            }
        }
        for m in -36..=36i64 {
            for n in -36..=36i64 {
                if chi.eval(m * n) != chi.eval(m) * chi.eval(n) {
                    return Err(format!(
                        "multiplicativity failure for discriminant {} at ({m}, {n})",
                        chi.discriminant()
                    ));
                }
            }
        }
    }
    for n in -60..=60i64 {
        let product = Character::MinusThree.eval(n) * Character::MinusFour.eval(n);
        if Character::Twelve.eval(n) != product {
            return Err(format!("conductor-12 product table fails at n = {n}"));
        }
    }
    if Character::MinusThree.product(Character::MinusFour) != Some(Character::Twelve) {
        return Err("product of conductors 3 and 4 should have conductor 12".into());
    }
    if Character::MinusFour.product(Character::Twelve).is_some() {
        return Err("conductors 4 and 12 are not coprime".into());
    }
    Ok(())
}

fn check_bernoulli(_cfg: &Config) -> Result<(), String> {
    let frozen = [
        (2u32, Character::One, rat(1, 6)),
        (4, Character::One, rat(-1, 30)),
        (1, Character::MinusThree, rat(-1, 3)),
        (1, Character::MinusFour, rat(-1, 2)),
        (2, Character::Twelve, rat_int(4)),
        (3, Character::MinusThree, rat(2, 3)),
        (3, Character::MinusFour, rat(3, 2)),
    ];
    for (k, chi, want) in frozen {
        let got = bernoulli_number(k, chi).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!(
                "B_{{{k}, {}}} = {}, expected {}",
                chi.discriminant(),
                rational_string(&got),
                rational_string(&want)
            ));
        }
    }
    Ok(())
}

fn check_divisor_factored(_cfg: &Config) -> Result<(), String> {
    let pairs = [
        (1u32, Character::One, Character::One),
        (2, Character::One, Character::MinusThree),
        (2, Character::One, Character::MinusFour),
        (1, Character::One, Character::Twelve),
        (2, Character::MinusFour, Character::MinusThree),
    ];
    for n in 1..=400u64 {
        let f = factorize(n);
        for &(k, eps, psi) in &pairs {
            let via_factors = sigma_factored(k, eps, psi, &f).map_err(|e| e.to_string())?;
            if via_factors != sigma_u64(k, eps, psi, n) {
                return Err(format!(
                    "twisted divisor sum of weight {k} for ({}, {}) disagrees between routes at n = {n}",
                    eps.discriminant(),
                    psi.discriminant()
                ));
            }
        }
    }
    Ok(())
}

fn check_two_shift(_cfg: &Config) -> Result<(), String> {
    let pairs = [
        (Character::One, Character::One),
        (Character::One, Character::MinusThree),
        (Character::MinusFour, Character::MinusThree),
        (Character::One, Character::Twelve),
    ];
    for &(eps, psi) in &pairs {
        for k in 1..=3u32 {
            for e in 1..=6u32 {
                for r in 1..=e {
                    if !two_shift_identity_check(k, eps, psi, e, r) {
                        return Err(format!(
                            "power-of-two shift identity fails for ({}, {}) at k = {k}, e = {e}, r = {r}",
                            eps.discriminant(),
                            psi.discriminant()
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_twist(_cfg: &Config) -> Result<(), String> {
    for k in 1..=3u32 {
        for n in 1..=150u64 {
            if n % 6 == 0 {
                continue;
            }
            if !twist_identity_check(k, n).map_err(|e| e.to_string())? {
                return Err(format!("character twist identity fails at k = {k}, n = {n}"));
            }
        }
    }
    Ok(())
}

fn check_divisor_bounds(_cfg: &Config) -> Result<(), String> {
    for n in 1..=1500u64 {
        if n % 2 == 0 || n % 3 == 0 {
            continue;
        }
        let combos = [
            (1u32, Character::One, Character::One),
            (2, Character::One, Character::MinusThree),
        ];
        for (k, eps, psi) in combos {
            if !sigma_lower_bound_check(k, eps, psi, n).map_err(|e| e.to_string())? {
                return Err(format!("divisor-sum lower bound fails at n = {n}"));
            }
        }
    }
    for n in 3..=8000u64 {
        if !omega_upper_bound_check(n) {
            return Err(format!("prime-count upper bound fails at n = {n}"));
        }
    }
    Ok(())
}

fn check_eta_quotients(cfg: &Config) -> Result<(), String> {
    let p = cfg.precision.max(16);
    let phi = phi_series(p);
    let phi_eta = eta_quotient_series(&[(2, 5), (1, -2), (4, -2)], p).map_err(|e| e.to_string())?;
    if phi.coeffs() != phi_eta.coeffs() {
        return Err("phi disagrees with eta(2z)^5 / (eta(z)^2 eta(4z)^2)".into());
    }
    let psi8 = psi8_series(p);
    let psi8_eta = eta_quotient_series(&[(16, 2), (8, -1)], p).map_err(|e| e.to_string())?;
    if psi8.coeffs() != psi8_eta.coeffs() {
        return Err("Psi8 disagrees with eta(16z)^2 / eta(8z)".into());
    }
    let quad = psi8.pow(2).mul(&psi8.dilate(3).pow(2));
    let quad_eta = eta_quotient_series(&[(16, 4), (48, 4), (8, -2), (24, -2)], p)
        .map_err(|e| e.to_string())?;
    if quad.coeffs() != quad_eta.coeffs() {
        return Err("Psi8(z)^2 Psi8(3z)^2 disagrees with its eta quotient".into());
    }
    let odd_pair = count_series(1, 1, Variant::Odd, p);
    let scaled = psi8.mul(&psi8.dilate(3)).scale(&rat_int(4));
    if odd_pair.coeffs() != scaled.coeffs() {
        return Err("odd counting series for (1,1) disagrees with 4 Psi8(z) Psi8(3z)".into());
    }
    let all_pair = count_series(2, 0, Variant::All, p);
    if all_pair.coeffs() != phi.pow(2).coeffs() {
        return Err("all-integer counting series for (2,0) disagrees with phi^2".into());
    }
    Ok(())
}

fn check_counts_enumeration(cfg: &Config) -> Result<(), String> {
    let cap = cfg.precision.clamp(16, 96);
    let grid: [(u32, u32, usize, usize); 6] = [
        (2, 0, cap, 5),
        (1, 1, cap, 5),
        (0, 2, cap, 5),
        (2, 2, cap.min(80), 7),
        (3, 1, cap.min(80), 7),
        (4, 2, cap.min(48), 7),
    ];
    for (a, b, hi, step) in grid {
        for variant in [Variant::All, Variant::Odd, Variant::Tilde] {
            let series = count_vec(a, b, variant, hi);
            for n in (0..hi).step_by(step) {
                let direct = count(&CountQuery {
                    a,
                    b,
                    n: n as i64,
                    variant,
                });
                if direct != BigInt::from(series[n]) {
                    return Err(format!(
                        "({a},{b}) {variant:?} count at n = {n}: enumeration {direct}, series {}",
                        series[n]
                    ));
                }
            }
        }
    }
    Ok(())
}

fn check_triangular(_cfg: &Config) -> Result<(), String> {
    for &(a, b) in &[(1u32, 0u32), (1, 1), (2, 0), (1, 3), (2, 2)] {
        for n in 0..=20i64 {
            let m = 8 * n + (a + 3 * b) as i64;
            let direct = triangular_count(a, b, n);
            let via_odd = count(&CountQuery {
                a,
                b,
                n: m,
                variant: Variant::Odd,
            });
            if direct != via_odd {
                return Err(format!("triangular bijection fails at ({a},{b}), n = {n}"));
            }
        }
    }
    Ok(())
}

fn check_eisenstein_frozen(cfg: &Config) -> Result<(), String> {
    let principal = |weight, level| SpaceSignature {
        weight,
        level,
        character: Character::One,
    };
    let sturm = [
        (principal(2, 48), 16u64),
        (principal(1, 12), 2),
        (principal(2, 768), 256),
        (principal(4, 12), 8),
    ];
    for (space, want) in sturm {
        let got = sturm_bound(&space);
        if got != want {
            return Err(format!(
                "Sturm bound for weight {}, level {} is {got}, expected {want}",
                space.weight, space.level
            ));
        }
    }
    let mults = [
        (2u32, Character::One, Character::One, rat_int(-24)),
        (1, Character::One, Character::MinusFour, rat_int(4)),
        (2, Character::One, Character::Twelve, rat_int(-1)),
        (3, Character::One, Character::MinusThree, rat_int(-9)),
        (3, Character::One, Character::MinusFour, rat_int(-4)),
    ];
    for (w, eps, psi, want) in mults {
        let got = trisq::eisenstein::eis_multiplier(w, eps, psi);
        if got != want {
            return Err(format!(
                "divisor-sum multiplier of weight {w} for ({}, {}) is {}",
                eps.discriminant(),
                psi.discriminant(),
                rational_string(&got)
            ));
        }
    }
    let bases = [
        (3u32, 48u64, Character::MinusThree, 10usize),
        (3, 12, Character::MinusThree, 6),
        (2, 48, Character::One, 9),
        (2, 48, Character::Twelve, 12),
    ];
    for (weight, level, character, want) in bases {
        let space = SpaceSignature {
            weight,
            level,
            character,
        };
        let got = enumerate_basis(&space).map_err(|e| e.to_string())?.len();
        if got != want {
            return Err(format!(
                "basis size for weight {weight}, level {level} is {got}, expected {want}"
            ));
        }
    }
    let p = cfg.precision.clamp(16, 128);
    let term = EisTerm::new(1, Character::One, Character::MinusFour, 1, rat_int(1))
        .map_err(|e| e.to_string())?;
    let two_squares = count_series(2, 0, Variant::All, p);
    if term.series(p).coeffs() != two_squares.coeffs() {
        return Err("weight-1 series fails to reproduce the two-squares counts".into());
    }
    Ok(())
}

fn representative(case: FaultCase) -> (u32, u32) {
    match case {
        FaultCase::Ee0 => (2, 2),
        FaultCase::Oo2 => (3, 3),
        FaultCase::Ee2 => (4, 2),
        FaultCase::Oo0 => (3, 1),
    }
}

fn decomposition_case(cfg: &Config, which: FaultCase) -> Result<(), String> {
    let (a, b) = representative(which);
    let params = FormParams::new(a, b).map_err(|e| e.to_string())?;
    let mut psi = build_plan(&params, Side::Psi);
    if cfg.fault == Some(which) {
        // requested corruption: nudge one scale so a check below must trip
        let term = &mut psi.combination.terms[0];
        term.scale = &term.scale + rat(1, 7);
    }
    let phi = build_plan(&params, Side::Phi);
    let offset = params.offset() as u64;
    let depth = cfg.depth.max(4);
    let prec = (offset + 8 * (depth - 1) + 1) as usize;

    let psi_constant = psi.coefficient(0);
    if !psi_constant.is_zero() {
        return Err(format!(
            "normalized odd-side plan has constant term {}",
            rational_string(&psi_constant)
        ));
    }
    if phi.coefficient(0) != rat_int(1) {
        return Err(format!(
            "all-integer-side plan has constant term {}",
            rational_string(&phi.coefficient(0))
        ));
    }

    let series = psi.series(prec);
    let residue = (offset % 8) as usize;
    for m in 1..prec {
        if m % 8 != residue && !series.coeff(m).is_zero() {
            return Err(format!("odd-side plan has support off the progression at q^{m}"));
        }
    }
    for i in 0..depth {
        let m = offset + 8 * i;
        let direct = series.coeff(m as usize);
        let closed = alpha_factored(&params, m).map_err(|e| e.to_string())?;
        if *direct != closed {
            return Err(format!(
                "alpha at m = {m}: plan gives {}, closed form gives {}",
                rational_string(direct),
                rational_string(&closed)
            ));
        }
    }
    Ok(())
}

fn check_decomposition_ee0(cfg: &Config) -> Result<(), String> {
    decomposition_case(cfg, FaultCase::Ee0)
}

fn check_decomposition_oo2(cfg: &Config) -> Result<(), String> {
    decomposition_case(cfg, FaultCase::Oo2)
}

fn check_decomposition_ee2(cfg: &Config) -> Result<(), String> {
    decomposition_case(cfg, FaultCase::Ee2)
}

fn check_decomposition_oo0(cfg: &Config) -> Result<(), String> {
    decomposition_case(cfg, FaultCase::Oo0)
}

fn check_identities(cfg: &Config) -> Result<(), String> {
    let depth = cfg.depth.max(4);
    let verify = |a: u32, b: u32, tilde: bool| -> Result<(), String> {
        let mut claim = ExactIdentityClaim::new(a, b, tilde).map_err(|e| e.to_string())?;
        claim.depth = depth;
        let report = check_exact_identity(&claim).map_err(|e| e.to_string())?;
        if report.status != Status::Verified {
            return Err(format!(
                "membership identity fails for ({a},{b}), tilde = {tilde}: {}",
                report.status
            ));
        }
        let want = if tilde {
            expected_tilde_constant(a, b)
        } else {
            expected_constant(a, b)
        }
        .map_err(|e| e.to_string())?;
        if report.metrics.get("constant") != Some(&rational_string(&want)) {
            return Err(format!(
                "inferred constant for ({a},{b}) is not {}",
                rational_string(&want)
            ));
        }
        Ok(())
    };
    for &(a, b) in EXACT_MEMBERS.iter() {
        verify(a, b, false)?;
    }
    for &(a, b) in TILDE_MEMBERS.iter() {
        verify(a, b, true)?;
    }
    Ok(())
}

fn check_refutations(cfg: &Config) -> Result<(), String> {
    let depth = cfg.depth.max(32);
    for &(a, b) in &[(4u32, 2u32), (2, 2)] {
        let mut claim = ExactIdentityClaim::new(a, b, false).map_err(|e| e.to_string())?;
        claim.depth = depth;
        let report = check_exact_identity(&claim).map_err(|e| e.to_string())?;
        if report.status != Status::Counterexample {
            return Err(format!(
                "expected a counterexample for ({a},{b}), got {}",
                report.status
            ));
        }
        if report.witness.is_none() {
            return Err("counterexample without witness".into());
        }
    }
    Ok(())
}

fn check_relations(cfg: &Config) -> Result<(), String> {
    let depth = cfg.depth.clamp(8, 60);
    for &(a, b) in &[(2u32, 2u32), (3, 3), (4, 2), (3, 1)] {
        let report = check_eisenstein_relations(a, b, depth).map_err(|e| e.to_string())?;
        if !report.passed() {
            return Err(format!("coefficient relations fail for ({a},{b})"));
        }
    }
    Ok(())
}

fn check_limits(_cfg: &Config) -> Result<(), String> {
    let err = |e: trisq::Error| e.to_string();
    let checks = [
        (delta(2, 2, 3).map_err(err)?, rat(12, 13), "2-adic factor (2,2) at valuation 3"),
        (delta(2, 2, 4).map_err(err)?, rat(24, 29), "2-adic factor (2,2) at valuation 4"),
        (limit_value(4, 2, RatioCase::Plain).map_err(err)?, rat(2, 17), "plain limit (4,2)"),
        (limit_value(2, 2, RatioCase::TwoAdic(3)).map_err(err)?, rat(4, 13), "2-adic limit (2,2)"),
        (limit_value(4, 0, RatioCase::Tilde).map_err(err)?, rat_int(1), "four-free limit (4,0)"),
        (limit_value(10, 0, RatioCase::Plain).map_err(err)?, rat(2, 257), "plain limit (10,0)"),
        (expected_constant(1, 1).map_err(err)?, rat(2, 3), "constant (1,1)"),
        (expected_constant(6, 0).map_err(err)?, rat(2, 17), "constant (6,0)"),
        (expected_tilde_constant(2, 2).map_err(err)?, rat(1, 3), "four-free constant (2,2)"),
        (expected_tilde_constant(8, 0).map_err(err)?, rat(1, 36), "four-free constant (8,0)"),
    ];
    for (got, want, label) in checks {
        if got != want {
            return Err(format!(
                "{label} = {}, expected {}",
                rational_string(&got),
                rational_string(&want)
            ));
        }
    }
    Ok(())
}

fn check_growth(_cfg: &Config) -> Result<(), String> {
    let flat = growth_diagnostic(4, 0, 1201).map_err(|e| e.to_string())?;
    if !flat.passed() {
        return Err("growth diagnostic fails for (4,0)".into());
    }
    if flat.metrics.get("degenerate").map(String::as_str) != Some("true") {
        return Err("(4,0) should have identically zero cusp remainders".into());
    }
    let full = growth_diagnostic(4, 2, 1201).map_err(|e| e.to_string())?;
    if !full.passed() {
        return Err("growth diagnostic fails for (4,2)".into());
    }
    if full.metrics.get("degenerate").map(String::as_str) != Some("false") {
        return Err("(4,2) should have nonzero cusp remainders".into());
    }
    let windows: u64 = full
        .metrics
        .get("ladder_windows")
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    if windows < 2 {
        return Err(format!("dominance ladder has {windows} windows, needs at least 2"));
    }
    Ok(())
}
