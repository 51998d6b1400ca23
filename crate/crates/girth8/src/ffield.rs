//! Exact arithmetic in F_q, q = p^e, with table-backed multiplication.
//!
//! Elements are dense integer indices: the element with coefficient vector
//! (c_0, ..., c_{e-1}) in the power basis of the modulus has index
//! c_0 + c_1 p + ... + c_{e-1} p^{e-1}. Index 0 is the additive identity,
//! index 1 the multiplicative identity. Multiplication, inversion and
//! exponentiation go through log/exp tables over a fixed primitive element.

use thiserror::Error;

/// Hard cap on q for table-backed contexts.
pub const MAX_Q: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("p = {0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be >= 1")]
    BadDegree,
    #[error("q = {0} exceeds the table bound {MAX_Q}")]
    TooLarge(u64),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("element index {0} out of range for q = {1}")]
    BadIndex(u64, u64),
}

/// An element of F_q, identified by its index in [0, q-1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u64 {
        self.0 as u64
    }
}

/// Deterministic description of the field: prime, degree, modulus polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    /// e+1 base-p digits, constant term first; monic of degree e.
    pub modulus: Vec<u64>,
}

/// Immutable field context with log/exp tables. Safe to share across threads.
#[derive(Debug, Clone)]
pub struct FieldContext {
    spec: FieldSpec,
    generator: FieldElement,
    /// log[x] for nonzero x is the discrete log base `generator`, in [0, q-2].
    log: Vec<u32>,
    /// exp[i] = generator^i for i in [0, q-2].
    exp: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

// --- raw polynomial arithmetic over F_p, used only during construction ---

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut mm = m.to_vec();
    poly_trim(&mut mm);
    let dm = mm.len() - 1;
    if dm == 0 {
        // nonzero constant divides everything
        return vec![0];
    }
    let lead_inv = mod_inverse(mm[dm], p).expect("unit leading coefficient");
    let mut r = a.to_vec();
    poly_trim(&mut r);
    while r.len() > dm {
        let dr = r.len() - 1;
        let coef = (r[dr] * lead_inv) % p;
        if coef != 0 {
            let shift = dr - dm;
            for i in 0..=dm {
                let sub = (coef * mm[i]) % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_trim(&mut prod);
    poly_rem(&prod, m, p)
}

fn poly_powmod(base: &[u64], mut n: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while n > 0 {
        if n & 1 == 1 {
            result = poly_mulmod(&result, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        n >>= 1;
    }
    result
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    // extended Euclid on (a mod m, m)
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

/// Irreducibility over F_p: degree-e monic f is irreducible iff it has no
/// irreducible factor of degree <= e/2, i.e. gcd(f, X^{p^i} - X) = 1 for
/// 1 <= i <= e/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    if e == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    for i in 1..=(e / 2) {
        let pi = p.pow(i as u32);
        let xpi = poly_powmod(&x, pi, f, p);
        // xpi - X
        let mut g = xpi;
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + p - 1) % p;
        poly_trim(&mut g);
        let d = poly_gcd(f, &g, p);
        if d.len() > 1 {
            return false;
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut fs = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            fs.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        fs.push(n);
    }
    fs
}

fn index_to_coeffs(mut idx: u64, p: u64, e: u32) -> Vec<u64> {
    let mut v = Vec::with_capacity(e as usize);
    for _ in 0..e {
        v.push(idx % p);
        idx /= p;
    }
    v
}

fn coeffs_to_index(c: &[u64], p: u64, e: u32) -> u64 {
    let mut idx = 0;
    for t in (0..e as usize).rev() {
        idx = idx * p + c.get(t).copied().unwrap_or(0);
    }
    idx
}

impl FieldContext {
    /// Build F_{p^e} deterministically: the modulus is the lexicographically
    /// smallest monic irreducible of degree e over F_p (digits compared from
    /// the constant term upward) and the generator is the nonzero element of
    /// smallest index that is primitive.
    pub fn build(p: u64, e: u32) -> Result<FieldContext, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if e < 1 {
            return Err(FieldError::BadDegree);
        }
        let q_wide = (0..e).fold(1u128, |acc, _| acc.saturating_mul(p as u128));
        if q_wide > MAX_Q as u128 {
            return Err(FieldError::TooLarge(q_wide.min(u64::MAX as u128) as u64));
        }
        let q = q_wide as u64;

        // Lexicographically smallest modulus: lower digits enumerate as a
        // base-p counter, so the scan order is just increasing index.
        let mut modulus = None;
        for m in 0..q {
            let mut digits = index_to_coeffs(m, p, e);
            digits.push(1);
            if is_irreducible(&digits, p) {
                modulus = Some(digits);
                break;
            }
        }
        let modulus = modulus.expect("an irreducible polynomial of every degree exists");
        let spec = FieldSpec { p, e, q, modulus };

        // Raw multiplication through coefficient vectors, used to find the
        // generator and fill the tables.
        let raw_mul = |x: u64, y: u64| -> u64 {
            let a = index_to_coeffs(x, p, e);
            let b = index_to_coeffs(y, p, e);
            let prod = poly_mulmod(&a, &b, &spec.modulus, p);
            coeffs_to_index(&prod, p, e)
        };
        let raw_pow = |mut x: u64, mut n: u64| -> u64 {
            let mut acc = 1u64;
            while n > 0 {
                if n & 1 == 1 {
                    acc = raw_mul(acc, x);
                }
                x = raw_mul(x, x);
                n >>= 1;
            }
            acc
        };

        let order_factors = prime_factors(q - 1);
        let mut generator = None;
        for g in 1..q {
            if order_factors.iter().all(|&r| raw_pow(g, (q - 1) / r) != 1) {
                generator = Some(g);
                break;
            }
        }
        let generator = generator.expect("F_q* is cyclic");

        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur as u32;
            debug_assert_eq!(log[cur as usize], u32::MAX, "generator is primitive");
            log[cur as usize] = i as u32;
            cur = raw_mul(cur, generator);
        }
        debug_assert_eq!(cur, 1);

        Ok(FieldContext {
            spec,
            generator: FieldElement(generator as u32),
            log,
            exp,
        })
    }

    #[inline]
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.spec.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.spec.e
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.spec.q
    }

    #[inline]
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn element(&self, index: u64) -> Result<FieldElement, FieldError> {
        if index < self.spec.q {
            Ok(FieldElement(index as u32))
        } else {
            Err(FieldError::BadIndex(index, self.spec.q))
        }
    }

    /// Embed an integer residue into the prime subfield.
    #[inline]
    pub fn from_residue(&self, r: u64) -> FieldElement {
        FieldElement((r % self.spec.p) as u32)
    }

    /// If x lies in the prime subfield, its residue in [0, p-1].
    #[inline]
    pub fn as_prime_residue(&self, x: FieldElement) -> Option<u64> {
        if x.index() < self.spec.p {
            Some(x.index())
        } else {
            None
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.spec.q as u32).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.spec.p;
        let (mut a, mut b) = (x.index(), y.index());
        let mut out = 0u64;
        let mut scale = 1u64;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        FieldElement(out as u32)
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        let p = self.spec.p;
        let mut a = x.index();
        let mut out = 0u64;
        let mut scale = 1u64;
        while a > 0 {
            out += ((p - a % p) % p) * scale;
            a /= p;
            scale *= p;
        }
        FieldElement(out as u32)
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 || y.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.spec.q - 1;
        let l = (self.log[x.0 as usize] as u64 + self.log[y.0 as usize] as u64) % n;
        FieldElement(self.exp[l as usize])
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        if x.0 == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let n = self.spec.q - 1;
        let l = (n - self.log[x.0 as usize] as u64) % n;
        Ok(FieldElement(self.exp[l as usize]))
    }

    /// x^n with the convention pow(0, 0) = 1; for nonzero x the exponent is
    /// reduced mod q-1.
    #[inline]
    pub fn pow(&self, x: FieldElement, n: u64) -> FieldElement {
        if x.0 == 0 {
            return if n == 0 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            };
        }
        let m = self.spec.q - 1;
        let l = (self.log[x.0 as usize] as u64 * (n % m)) % m;
        FieldElement(self.exp[l as usize])
    }
}
