//! The polynomials A_k = X^k[(X+1)^k - X^k] and
//! B_k = [(X+1)^{2k} - 1]X^{q-1-k} - 2X^{q-1}, their power sums (direct and
//! closed-form), and permutation tests by brute force and by Hermite's
//! criterion. The brute-force path is the oracle of record.

use serde::Serialize;

use crate::ffield::{FieldContext, FieldElement};
use crate::modarith::{
    binom_mod_p, gcd, neg_one_pow, neg_two_pow, star, two_pow_neg,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PPMethod {
    BruteForce,
    Hermite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PPWitness {
    /// Two distinct inputs with equal images, found by brute force.
    Collision { x: u64, y: u64 },
    /// gcd(k, q-1) > 1, so 0 is not the only root.
    NotCoprime,
    /// Smallest s in [1, q-2] violating the Hermite power-sum condition.
    HermiteViolation { s: u64 },
}

/// Result of a permutation test. When `is_pp` is false the witness is
/// present and independently checkable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PPVerdict {
    pub is_pp: bool,
    pub method: PPMethod,
    pub witness: Option<PPWitness>,
}

impl PPVerdict {
    fn pass(method: PPMethod) -> Self {
        PPVerdict {
            is_pp: true,
            method,
            witness: None,
        }
    }

    fn fail(method: PPMethod, witness: PPWitness) -> Self {
        PPVerdict {
            is_pp: false,
            method,
            witness: Some(witness),
        }
    }
}

/// A_k(x) = x^k[(x+1)^k - x^k].
pub fn eval_a(ctx: &FieldContext, k: u64, x: FieldElement) -> FieldElement {
    debug_assert!((1..ctx.q()).contains(&k));
    let xk = ctx.pow(x, k);
    let x1k = ctx.pow(ctx.add(x, FieldElement::ONE), k);
    ctx.mul(xk, ctx.sub(x1k, xk))
}

/// B_k(x) = [(x+1)^{2k} - 1]x^{q-1-k} - 2x^{q-1}. The k = q-1 case relies on
/// the pow(0, 0) = 1 convention for the degenerate X^0 factor.
pub fn eval_b(ctx: &FieldContext, k: u64, x: FieldElement) -> FieldElement {
    debug_assert!((1..ctx.q()).contains(&k));
    let q = ctx.q();
    let t1 = ctx.sub(
        ctx.pow(ctx.add(x, FieldElement::ONE), 2 * k),
        FieldElement::ONE,
    );
    let t1 = ctx.mul(t1, ctx.pow(x, q - 1 - k));
    let two = ctx.from_residue(2);
    ctx.sub(t1, ctx.mul(two, ctx.pow(x, q - 1)))
}

/// Brute-force permutation test: evaluate at all q elements into a hit array.
pub fn is_pp_bruteforce<F>(ctx: &FieldContext, eval: F) -> PPVerdict
where
    F: Fn(FieldElement) -> FieldElement,
{
    let q = ctx.q() as usize;
    let mut preimage = vec![u32::MAX; q];
    for x in ctx.elements() {
        let fx = eval(x);
        let slot = &mut preimage[fx.index() as usize];
        if *slot != u32::MAX {
            return PPVerdict::fail(
                PPMethod::BruteForce,
                PPWitness::Collision {
                    x: *slot as u64,
                    y: x.index(),
                },
            );
        }
        *slot = x.0;
    }
    PPVerdict::pass(PPMethod::BruteForce)
}

/// Direct power sum Σ_{x in F_q} f(x)^s, returned as a prime-subfield residue.
pub fn powsum_direct<F>(ctx: &FieldContext, eval: F, s: u64) -> u64
where
    F: Fn(FieldElement) -> FieldElement,
{
    assert!((1..ctx.q()).contains(&s), "s out of range [1, q-1]");
    let mut acc = FieldElement::ZERO;
    for x in ctx.elements() {
        acc = ctx.add(acc, ctx.pow(eval(x), s));
    }
    ctx.as_prime_residue(acc)
        .expect("power sums lie in the prime subfield")
}

/// Closed form for Σ A_k(x)^s:
/// (-1)^{s+1} Σ_{i=0}^{s} (-1)^i binom(s,i) binom((ki)*, (2ks)*)  (mod p).
pub fn powsum_a_closed(q: u64, p: u64, k: u64, s: u64) -> u64 {
    let target = star(2 * k * s, q);
    let mut acc = 0u64;
    for i in 0..=s {
        let t = binom_mod_p(s, i, p) * binom_mod_p(star(k * i, q), target, p) % p;
        acc = (acc + neg_one_pow(i, p) * t) % p;
    }
    neg_one_pow(s + 1, p) * acc % p
}

/// Closed form for Σ B_k(x)^s. Even q: Σ binom(s,i) binom((2ki)*, (ks)*).
/// Odd q: -(-2)^s Σ_{0<=j<=i<=s} 2^{-i}(-1)^j binom(s,i) binom(i,j)
/// binom((2kj)*, (ki)*).
pub fn powsum_b_closed(q: u64, p: u64, k: u64, s: u64) -> u64 {
    if p == 2 {
        let target = star(k * s, q);
        let mut acc = 0u64;
        for i in 0..=s {
            acc = (acc + binom_mod_p(s, i, 2) * binom_mod_p(star(2 * k * i, q), target, 2)) % 2;
        }
        return acc;
    }
    let mut acc = 0u64;
    for i in 0..=s {
        let bsi = binom_mod_p(s, i, p);
        if bsi == 0 {
            continue;
        }
        let w = bsi * two_pow_neg(i, p) % p;
        let ki = star(k * i, q);
        let mut inner = 0u64;
        for j in 0..=i {
            let t = binom_mod_p(i, j, p) * binom_mod_p(star(2 * k * j, q), ki, p) % p;
            inner = (inner + neg_one_pow(j, p) * t) % p;
        }
        acc = (acc + w * inner) % p;
    }
    // prefactor -(-2)^s
    (p - 1) * neg_two_pow(s, p) % p * acc % p
}

/// Hermite test for A_k: gcd(k, q-1) = 1 and
/// Σ_i (-1)^i binom(s,i) binom((ki)*, (2ks)*) = 0 for all 1 <= s <= q-2.
pub fn is_pp_a_hermite(q: u64, p: u64, k: u64) -> PPVerdict {
    if gcd(k, q - 1) != 1 {
        return PPVerdict::fail(PPMethod::Hermite, PPWitness::NotCoprime);
    }
    for s in 1..=q.saturating_sub(2) {
        let target = star(2 * k * s, q);
        let mut acc = 0u64;
        for i in 0..=s {
            let t = binom_mod_p(s, i, p) * binom_mod_p(star(k * i, q), target, p) % p;
            acc = (acc + neg_one_pow(i, p) * t) % p;
        }
        if acc != 0 {
            return PPVerdict::fail(PPMethod::Hermite, PPWitness::HermiteViolation { s });
        }
    }
    PPVerdict::pass(PPMethod::Hermite)
}

/// Hermite test for B_k: gcd(k, q-1) = 1 and
/// Σ_i (-1)^i binom(s,i) binom((2ki)*, (ks)*) = (-2)^s for all 1 <= s <= q-2.
/// Vacuous for q = 2.
pub fn is_pp_b_hermite(q: u64, p: u64, k: u64) -> PPVerdict {
    if gcd(k, q - 1) != 1 {
        return PPVerdict::fail(PPMethod::Hermite, PPWitness::NotCoprime);
    }
    for s in 1..=q.saturating_sub(2) {
        let target = star(k * s, q);
        let mut acc = 0u64;
        for i in 0..=s {
            let t = binom_mod_p(s, i, p) * binom_mod_p(star(2 * k * i, q), target, p) % p;
            acc = (acc + neg_one_pow(i, p) * t) % p;
        }
        if acc != neg_two_pow(s, p) {
            return PPVerdict::fail(PPMethod::Hermite, PPWitness::HermiteViolation { s });
        }
    }
    PPVerdict::pass(PPMethod::Hermite)
}

/// True iff k is congruent to a power of p mod q-1 (star-normalized),
/// i.e. k is in the p-cyclotomic coset of 1.
pub fn is_p_power(k: u64, p: u64, q: u64) -> bool {
    crate::modarith::cyclo_coset(1, p, q).contains(&k)
}
