//! Integer-side machinery: star reduction mod q-1, base-p digits, Lucas
//! binomials mod p, cyclotomic cosets and the derived parameters (a, k', b, c).
//!
//! Signs (-1)^x are always taken from the parity of the integer x itself;
//! powers 2^x mod p reduce the exponent mod p-1, and negative exponents go
//! through the modular inverse of 2.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModArithError {
    #[error("gcd(k, q-1) = {0} > 1: k is not invertible mod q-1")]
    NotCoprime(u64),
    #[error("k = {0} out of range [1, {1}]")]
    KOutOfRange(u64, u64),
}

/// Star reduction: 0* = 0; for a > 0, the unique value in [1, q-1]
/// congruent to a mod q-1.
#[inline]
pub fn star(a: u64, q: u64) -> u64 {
    debug_assert!(q >= 2);
    if a == 0 {
        return 0;
    }
    let n = q - 1;
    let r = a % n;
    if r == 0 {
        n
    } else {
        r
    }
}

/// Base-p digits, least significant first. digits(0) = [0].
pub fn digits_base_p(mut n: u64, p: u64) -> Vec<u64> {
    debug_assert!(p >= 2);
    let mut out = Vec::new();
    loop {
        out.push(n % p);
        n /= p;
        if n == 0 {
            break;
        }
    }
    out
}

#[inline]
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    debug_assert!(m >= 1);
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Inverse of a mod m via extended Euclid, when gcd(a, m) = 1.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        let tmp = old_r - qt * r;
        old_r = r;
        r = tmp;
        let tmp = old_s - qt * s;
        old_s = s;
        s = tmp;
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Binomial of single base-p digits (m, n < p), as a residue mod p.
fn binom_digit(m: u64, n: u64, p: u64) -> u64 {
    if n > m {
        return 0;
    }
    let n = n.min(m - n);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 1..=n {
        num = num * ((m - n + i) % p) % p;
        den = den * (i % p) % p;
    }
    num * inv_mod(den, p).expect("den < p! has no p factor") % p
}

/// Binomial coefficient mod p via Lucas' theorem (digit-wise product).
/// Returns 0 when n > m.
pub fn binom_mod_p(mut m: u64, mut n: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || m > 0 {
        let (md, nd) = (m % p, n % p);
        if nd > md {
            return 0;
        }
        acc = acc * binom_digit(md, nd, p) % p;
        if acc == 0 {
            return 0;
        }
        m /= p;
        n /= p;
    }
    acc
}

/// True iff adding n and m in base p produces at least one carry;
/// equivalently binom(m+n, n) = 0 mod p.
pub fn has_carry(mut m: u64, mut n: u64, p: u64) -> bool {
    let mut carry = 0u64;
    while m > 0 || n > 0 {
        if m % p + n % p + carry >= p {
            return true;
        }
        carry = 0;
        m /= p;
        n /= p;
    }
    false
}

/// Orbit of k under multiplication by p mod q-1, star-normalized
/// (q-1 maps to itself, never to 0). Sorted ascending.
pub fn cyclo_coset(k: u64, p: u64, q: u64) -> Vec<u64> {
    debug_assert!((1..q).contains(&k));
    let mut orbit = vec![star(k, q)];
    let mut cur = star(k * p, q);
    while cur != orbit[0] {
        orbit.push(cur);
        cur = star(cur * p, q);
    }
    orbit.sort_unstable();
    orbit
}

/// The derived parameters a = floor((q-1)/k), k'k = 1, bk = -1 (mod q-1),
/// c = floor((q-1)/k'). Defined only when gcd(k, q-1) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KParams {
    pub k: u64,
    pub a: u64,
    pub kprime: u64,
    pub b: u64,
    pub c: u64,
}

pub fn kparams(k: u64, q: u64) -> Result<KParams, ModArithError> {
    let n = q - 1;
    if k < 1 || k > n {
        return Err(ModArithError::KOutOfRange(k, n));
    }
    let g = gcd(k, n);
    if g != 1 {
        return Err(ModArithError::NotCoprime(g));
    }
    let kprime = if n == 1 {
        1
    } else {
        star(inv_mod(k, n).expect("coprime"), q)
    };
    // b = -k' mod q-1, normalized into [1, q-1]
    let b = if kprime == n { n } else { n - kprime };
    Ok(KParams {
        k,
        a: n / k,
        kprime,
        b,
        c: n / kprime,
    })
}

/// Greatest prime factor, with gpf(1) = 1.
pub fn gpf(e: u64) -> u64 {
    debug_assert!(e >= 1);
    let mut n = e;
    let mut best = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            best = d;
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        best = n;
    }
    best
}

// --- characteristic-p sign/power conventions (shared by permpoly, filters) ---

/// (-1)^x mod p, sign from the parity of the integer x.
#[inline]
pub fn neg_one_pow(x: u64, p: u64) -> u64 {
    if x.is_multiple_of(2) {
        1 % p
    } else {
        (p - 1) % p
    }
}

/// 2^x mod p; for odd p the exponent reduces mod p-1 (Fermat).
#[inline]
pub fn two_pow(x: u64, p: u64) -> u64 {
    if p == 2 {
        return if x == 0 { 1 } else { 0 };
    }
    pow_mod(2, x % (p - 1), p)
}

/// 2^{-x} mod p for odd p: inverse of 2 raised to x.
#[inline]
pub fn two_pow_neg(x: u64, p: u64) -> u64 {
    debug_assert!(p > 2);
    let inv2 = inv_mod(2, p).expect("p odd");
    pow_mod(inv2, x % (p - 1), p)
}

/// (-2)^x mod p: integer parity for the sign, Fermat reduction for 2^x.
#[inline]
pub fn neg_two_pow(x: u64, p: u64) -> u64 {
    neg_one_pow(x, p) * two_pow(x, p) % p
}
