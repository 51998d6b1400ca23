//! Necessary-condition filters for A_k and B_k being permutation polynomials,
//! the alpha(p) function, and the closed form for a = floor((p^e-1)/k) on
//! sparse digit patterns. Filters report NotApplicable when their stated
//! hypotheses do not hold, so the pipeline never wrongly rejects a k.

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::Serialize;
use thiserror::Error;

use crate::ffield::is_prime;
use crate::modarith::{
    binom_mod_p, digits_base_p, gcd, inv_mod, kparams, neg_one_pow, neg_two_pow, two_pow,
    two_pow_neg, KParams,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FilterError {
    #[error("p = {0} must be an odd prime")]
    NotOddPrime(u64),
    #[error("malformed digit pattern: {0}")]
    BadDigits(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

impl Outcome {
    pub fn failed(self) -> bool {
        self == Outcome::Fail
    }

    fn from_bool(ok: bool) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// alpha(p): smallest positive even u with binom(u, u/2) = (-1)^{u/2} 2^u
/// mod p. Always <= p-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlphaRecord {
    pub p: u64,
    pub alpha: u64,
}

static ALPHA_CACHE: Mutex<BTreeMap<u64, u64>> = Mutex::new(BTreeMap::new());

/// alpha(p) via the binomial form, scanning even u = 2, 4, ... The central
/// binomial is carried incrementally; since u <= p-1 no factor of p ever
/// appears, so all updates stay invertible.
pub fn alpha(p: u64) -> Result<AlphaRecord, FilterError> {
    if p == 2 || !is_prime(p) {
        return Err(FilterError::NotOddPrime(p));
    }
    if let Some(&a) = ALPHA_CACHE.lock().unwrap().get(&p) {
        return Ok(AlphaRecord { p, alpha: a });
    }
    let mut central = 1u64; // binom(2m, m) mod p
    let mut rhs = 1u64; // (-1)^m 2^{2m} mod p
    let mut found = None;
    for m in 1..=(p - 1) / 2 {
        // binom(2m, m) = binom(2m-2, m-1) * (2m-1) * 2 / m
        central = central * ((2 * m - 1) % p) % p * 2 % p
            * inv_mod(m % p, p).expect("m < p") % p;
        rhs = rhs * (p - 4 % p) % p;
        if central == rhs {
            found = Some(2 * m);
            break;
        }
    }
    let a = found.expect("alpha(p) <= p-1 always");
    ALPHA_CACHE.lock().unwrap().insert(p, a);
    Ok(AlphaRecord { p, alpha: a })
}

/// alpha(p) via the double-factorial form: smallest even 2m with
/// (2m-1)!!/(2m)!! = (-1)^m mod p. Independent of `alpha`.
pub fn alpha_double_factorial(p: u64) -> Result<u64, FilterError> {
    if p == 2 || !is_prime(p) {
        return Err(FilterError::NotOddPrime(p));
    }
    let mut ratio = 1u64; // (2m-1)!!/(2m)!! mod p
    let mut sign = 1u64; // (-1)^m mod p
    for m in 1..=(p - 1) / 2 {
        ratio = ratio * ((2 * m - 1) % p) % p * inv_mod(2 * m % p, p).expect("2m < p") % p;
        sign = p - sign;
        if ratio == sign {
            return Ok(2 * m);
        }
    }
    unreachable!("alpha(p) <= p-1 always");
}

/// The double-factorial congruence at m: (2m-1)!!/(2m)!! = (-1)^m mod p.
pub fn double_factorial_congruence_holds(m: u64, p: u64) -> bool {
    let mut ratio = 1u64;
    for i in 1..=m {
        ratio = ratio * ((2 * i - 1) % p) % p * inv_mod(2 * i % p, p).expect("2i < p") % p;
    }
    ratio == neg_one_pow(m, p)
}

/// Necessary binomial conditions for A_k to be a PP, in terms of the
/// quotient parameters a = floor((q-1)/k) and c = floor((q-1)/k'):
/// binom(ka, q-1-ka) = 0 and binom(2c, c) = 0 (mod p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuotientBinomOutcomes {
    pub binom_ka: Outcome,
    pub central_binom_c: Outcome,
}

pub fn check_quotient_binoms(q: u64, p: u64, k: u64) -> QuotientBinomOutcomes {
    if k <= 1 || k > q - 1 || gcd(k, q - 1) != 1 {
        return QuotientBinomOutcomes {
            binom_ka: Outcome::NotApplicable,
            central_binom_c: Outcome::NotApplicable,
        };
    }
    let kp = kparams(k, q).expect("coprime");
    let ka = k * kp.a;
    QuotientBinomOutcomes {
        binom_ka: Outcome::from_bool(binom_mod_p(ka, q - 1 - ka, p) == 0),
        central_binom_c: Outcome::from_bool(binom_mod_p(2 * kp.c, kp.c, p) == 0),
    }
}

/// If A_k is a PP then all base-p digits of k' are 0 or 1.
pub fn check_digits_kprime(q: u64, p: u64, k: u64) -> Outcome {
    if gcd(k, q - 1) != 1 {
        return Outcome::NotApplicable;
    }
    let kp = kparams(k, q).expect("coprime");
    Outcome::from_bool(digits_base_p(kp.kprime, p).iter().all(|&d| d <= 1))
}

/// If q is odd and B_k is a PP then (-2)^{k-1} = 1 mod p.
pub fn check_neg_two_pow_order(p: u64, k: u64) -> Outcome {
    if p == 2 {
        return Outcome::NotApplicable;
    }
    Outcome::from_bool(neg_two_pow(k - 1, p) == 1)
}

/// Per-condition outcomes of the binomial system that k must satisfy when
/// both A_k and B_k are PPs over odd q. Congruences that need a or c even
/// are marked Fail when the parity fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OddKSystemOutcomes {
    pub k_odd: Outcome,
    pub a_even: Outcome,
    pub c_even: Outcome,
    pub two_pow_k: Outcome,
    pub central_binom_a: Outcome,
    pub binom_ka_k: Outcome,
    pub binom_b_half: Outcome,
    pub binom_ckprime: Outcome,
    pub binom_cm1_kprime: Outcome,
}

impl OddKSystemOutcomes {
    fn not_applicable() -> Self {
        OddKSystemOutcomes {
            k_odd: Outcome::NotApplicable,
            a_even: Outcome::NotApplicable,
            c_even: Outcome::NotApplicable,
            two_pow_k: Outcome::NotApplicable,
            central_binom_a: Outcome::NotApplicable,
            binom_ka_k: Outcome::NotApplicable,
            binom_b_half: Outcome::NotApplicable,
            binom_ckprime: Outcome::NotApplicable,
            binom_cm1_kprime: Outcome::NotApplicable,
        }
    }

    pub fn any_failed(&self) -> bool {
        [
            self.k_odd, self.a_even, self.c_even, self.two_pow_k, self.central_binom_a, self.binom_ka_k,
            self.binom_b_half, self.binom_ckprime, self.binom_cm1_kprime,
        ]
        .iter()
        .any(|o| o.failed())
    }
}

pub fn check_odd_k_system(q: u64, p: u64, k: u64) -> OddKSystemOutcomes {
    if p == 2 || k <= 1 || k > q - 1 || gcd(k, q - 1) != 1 {
        return OddKSystemOutcomes::not_applicable();
    }
    let kp = kparams(k, q).expect("coprime");
    let KParams { a, kprime, b, c, .. } = kp;
    let half_q = (q - 1) / 2;

    let k_odd = Outcome::from_bool(k % 2 == 1);
    let a_even = Outcome::from_bool(a % 2 == 0);
    let c_even = Outcome::from_bool(c % 2 == 0);

    // 2^{k-1} = 1
    let two_pow_k = Outcome::from_bool(two_pow(k - 1, p) == 1);

    // binom(a, a/2) = (-1)^{a/2} 2^a
    let central_binom_a = if a % 2 != 0 {
        Outcome::Fail
    } else {
        Outcome::from_bool(
            binom_mod_p(a, a / 2, p) == neg_one_pow(a / 2, p) * two_pow(a, p) % p,
        )
    };

    // binom(a-1, a/2) binom(ka, k) = (-1)^{a/2 - 1} 2^{a-1}
    let binom_ka_k = if a % 2 != 0 {
        Outcome::Fail
    } else {
        let lhs = binom_mod_p(a - 1, a / 2, p) * binom_mod_p(k * a, k, p) % p;
        let rhs = neg_one_pow(a / 2 + 1, p) * two_pow(a - 1, p) % p;
        Outcome::from_bool(lhs == rhs)
    };

    // binom(b, (q-1)/2) = (-1)^{b + (q+1)/2} 2^b
    let binom_b_half = {
        let lhs = binom_mod_p(b, half_q, p);
        let rhs = neg_one_pow(b + q.div_ceil(2), p) * two_pow(b, p) % p;
        Outcome::from_bool(lhs == rhs)
    };

    // binom(q-1-ck', (q-1-ck')/2) = (-1)^{c/2 + (q-1)/2} 2^{-ck'}
    let binom_ckprime = if c % 2 != 0 {
        Outcome::Fail
    } else {
        let m = q - 1 - c * kprime;
        let lhs = binom_mod_p(m, m / 2, p);
        let rhs = neg_one_pow(c / 2 + half_q, p) * two_pow_neg(c * kprime, p) % p;
        Outcome::from_bool(lhs == rhs)
    };

    // (-c+1) binom(q-1-(c-1)k', [q-1-(c-2)k']/2)
    //        = (-1)^{c/2 + (q-1)/2} 2^{-(c-1)k'}
    let binom_cm1_kprime = if c % 2 != 0 {
        Outcome::Fail
    } else {
        let top = q - 1 - (c - 1) * kprime;
        let bottom = (q - 1 - (c - 2) * kprime) / 2;
        let factor = (1 + p - (c % p)) % p; // -c + 1 as a residue
        let lhs = factor * binom_mod_p(top, bottom, p) % p;
        let rhs = neg_one_pow(c / 2 + half_q, p) * two_pow_neg((c - 1) * kprime, p) % p;
        Outcome::from_bool(lhs == rhs)
    };

    OddKSystemOutcomes {
        k_odd,
        a_even,
        c_even,
        two_pow_k,
        central_binom_a,
        binom_ka_k,
        binom_b_half,
        binom_ckprime,
        binom_cm1_kprime,
    }
}

/// If B_k is a PP then all base-p digits of k are <= (p-1)/alpha(p).
pub fn check_digit_bound(q: u64, p: u64, k: u64) -> Outcome {
    if p == 2 || k <= 1 || k > q - 1 {
        return Outcome::NotApplicable;
    }
    let bound = (p - 1) / alpha(p).expect("p odd prime").alpha;
    Outcome::from_bool(digits_base_p(k, p).iter().all(|&d| d <= bound))
}

/// Largest base-p digit a PP exponent k can carry:
/// (p-1) / floor((p-1)/alpha(p)).
pub fn alpha_digit_bound(p: u64) -> Result<u64, FilterError> {
    let a = alpha(p)?.alpha;
    Ok((p - 1) / ((p - 1) / a))
}

/// Digit pattern k = k_0 p^0 + ... + k_{i-1} p^{i-1} + p^i + p^j with
/// 0 < i < j <= e-1, for the closed-form value of floor((p^e-1)/k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseExponent {
    pub p: u64,
    pub e: u32,
    pub i: u32,
    pub j: u32,
    pub low_digits: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FloorClosedForm {
    pub k: u64,
    pub u: u64,
    /// The closed-form value: the alternating geometric form, minus 1 when u
    /// is even.
    pub a_closed: u64,
    /// Direct floor((p^e-1)/k), for reference.
    pub a_direct: u64,
    /// Whether the closeness hypothesis holds:
    /// (p^e-1)/(p^i+p^j) - (p^e-1)/k <= 1.
    pub quotient_gap_small: bool,
    /// Whether the direct floor is even (the closed form's parity
    /// hypothesis).
    pub a_even: bool,
}

impl SparseExponent {
    pub fn new(
        p: u64,
        e: u32,
        i: u32,
        j: u32,
        low_digits: Vec<u64>,
    ) -> Result<SparseExponent, FilterError> {
        if !(0 < i && i < j && j < e) {
            return Err(FilterError::BadDigits(format!(
                "need 0 < i < j <= e-1, got i={i} j={j} e={e}"
            )));
        }
        if low_digits.len() != i as usize {
            return Err(FilterError::BadDigits(format!(
                "need exactly i={} low digits, got {}",
                i,
                low_digits.len()
            )));
        }
        if low_digits.iter().any(|&d| d >= p) {
            return Err(FilterError::BadDigits("digit >= p".into()));
        }
        Ok(SparseExponent {
            p,
            e,
            i,
            j,
            low_digits,
        })
    }

    pub fn k(&self) -> u64 {
        let mut k = 0u64;
        for (t, &d) in self.low_digits.iter().enumerate() {
            k += d * self.p.pow(t as u32);
        }
        k + self.p.pow(self.i) + self.p.pow(self.j)
    }
}

/// Evaluate the closed form for floor((p^e-1)/k) together with its
/// hypothesis report.
pub fn floor_closed_form(input: &SparseExponent) -> FloorClosedForm {
    let p = input.p;
    let (e, i, j) = (input.e as u64, input.i as u64, input.j as u64);
    let k = input.k();
    let u = (e - j) / (j - i);

    // sum_{t=0}^{u} (-1)^t p^{e-j-t(j-i)}
    let mut geo: i64 = 0;
    for t in 0..=u {
        let term = p.pow((e - j - t * (j - i)) as u32) as i64;
        geo += if t % 2 == 0 { term } else { -term };
    }
    let mut a_closed = geo;
    if u % 2 == 0 {
        a_closed -= 1;
    }

    let n = p.pow(e as u32) - 1;
    let a_direct = n / k;
    let d = p.pow(i as u32) + p.pow(j as u32);
    // (n/d) - (n/k) <= 1  <=>  n(k-d) <= dk  (k >= d)
    let quotient_gap_small = (n as u128) * ((k - d) as u128) <= (d as u128) * (k as u128);

    FloorClosedForm {
        k,
        u,
        a_closed: a_closed as u64,
        a_direct,
        quotient_gap_small,
        a_even: a_direct.is_multiple_of(2),
    }
}

/// Binomial identity required when both A_k and B_k are PPs:
/// 2^{-2ck'} = binom(2(q-1)-2ck', q-1-ck')
///           + (-1)^{(q-1)/2 + c/2 + 1} binom(2(q-1)-2ck', (q-1)/2-(c/2-1)k')
///             binom(2c, c+2).
pub fn check_joint_pp_identity(q: u64, p: u64, k: u64) -> Outcome {
    if p == 2 || k <= 1 || k > q - 1 || gcd(k, q - 1) != 1 {
        return Outcome::NotApplicable;
    }
    let kp = kparams(k, q).expect("coprime");
    let (c, kprime) = (kp.c, kp.kprime);
    if c % 2 != 0 {
        return Outcome::NotApplicable;
    }
    let s = 2 * (q - 1) - 2 * c * kprime;
    let lhs = two_pow_neg(2 * c * kprime, p);
    let term1 = binom_mod_p(s, q - 1 - c * kprime, p);
    let sign = neg_one_pow((q - 1) / 2 + c / 2 + 1, p);
    let term2 = sign * binom_mod_p(s, (q - 1) / 2 - (c / 2 - 1) * kprime, p) % p
        * binom_mod_p(2 * c, c + 2, p)
        % p;
    Outcome::from_bool(lhs == (term1 + term2) % p)
}

/// Aggregated per-(q, k) filter outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterReport {
    pub q: u64,
    pub p: u64,
    pub k: u64,
    pub coprime: bool,
    pub quotient_binoms: QuotientBinomOutcomes,
    pub kprime_digits: Outcome,
    pub neg_two_pow_order: Outcome,
    pub odd_k_system: OddKSystemOutcomes,
    pub digit_bound: Outcome,
    pub joint_identity: Outcome,
    pub survives_all: bool,
    /// Set to "gcd" when coprimality fails.
    pub reason: Option<&'static str>,
}

impl FilterReport {
    /// True if some applicable condition necessary for A_k alone failed.
    pub fn a_filter_failed(&self) -> bool {
        self.quotient_binoms.binom_ka.failed()
            || self.quotient_binoms.central_binom_c.failed()
            || self.kprime_digits.failed()
    }

    /// True if some applicable condition necessary for B_k alone failed.
    pub fn b_filter_failed(&self) -> bool {
        self.neg_two_pow_order.failed() || self.odd_k_system.any_failed() || self.digit_bound.failed()
    }
}

/// Run every applicable check for (q, k). `survives_all` is true iff no
/// applicable necessary condition fails (coprimality included).
pub fn filter_pipeline(q: u64, p: u64, k: u64) -> FilterReport {
    let coprime = gcd(k, q - 1) == 1;
    let quotient_binoms = check_quotient_binoms(q, p, k);
    let kprime_digits = if coprime {
        check_digits_kprime(q, p, k)
    } else {
        Outcome::NotApplicable
    };
    let neg_two_pow_order = check_neg_two_pow_order(p, k);
    let odd_k_system = check_odd_k_system(q, p, k);
    let digit_bound = check_digit_bound(q, p, k);
    let joint_identity = check_joint_pp_identity(q, p, k);

    let report = FilterReport {
        q,
        p,
        k,
        coprime,
        quotient_binoms,
        kprime_digits,
        neg_two_pow_order,
        odd_k_system,
        digit_bound,
        joint_identity,
        survives_all: false,
        reason: None,
    };
    let any_fail = report.a_filter_failed() || report.b_filter_failed() || joint_identity.failed();
    FilterReport {
        survives_all: coprime && !any_fail,
        reason: if coprime { None } else { Some("gcd") },
        ..report
    }
}
