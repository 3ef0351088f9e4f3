//! Exact modular arithmetic: Fermat and polynomial quotients, Legendre
//! symbols, primitive roots modulo p^2, and exponent reduction.
//!
//! Everything here is computed in u64 with u128 intermediates, so all
//! products are exact for moduli up to 2^64. The validated types cap
//! p below 2^20, which keeps p^2 comfortably inside that contract.

use crate::error::Error;
use serde::Serialize;

/// Largest supported prime (exclusive).
pub const MAX_PRIME: u64 = 1 << 20;

/// Largest supported exponent w (inclusive).
pub const MAX_EXPONENT: u64 = 1 << 20;

/// base^exponent mod modulus, square-and-multiply with u128 intermediates.
pub fn mod_pow(base: u64, mut exponent: u64, modulus: u64) -> u64 {
    debug_assert!(modulus >= 2);
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base as u128) % m;
    while exponent > 0 {
        if exponent & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exponent >>= 1;
    }
    acc as u64
}

/// Modular inverse of `a` mod prime `p` via Fermat's little theorem.
fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    mod_pow(a % p, p - 2, p)
}

/// Legendre symbol (a/p) in {-1, 0, 1} by Euler's criterion.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let e = mod_pow(a, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        debug_assert_eq!(e, p - 1);
        -1
    }
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// true iff 2^(p-1) = 1 (mod p^2).
pub fn is_wieferich(p: u64) -> bool {
    mod_pow(2, p - 1, p * p) == 1
}

/// Prime factors of `n` (without multiplicities), by trial division.
pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `a` modulo `m`, given that it divides `group_order`.
pub fn multiplicative_order(a: u64, m: u64, group_order: u64) -> u64 {
    debug_assert_eq!(mod_pow(a, group_order, m), 1);
    let mut ord = group_order;
    for q in prime_factors(group_order) {
        while ord.is_multiple_of(q) && mod_pow(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    ord
}

/// Smallest primitive root modulo p, lifted to a primitive root modulo p^2.
///
/// The smallest g generating the units mod p already generates the units
/// mod p^2 unless g^(p-1) = 1 (mod p^2); in that case g + p does.
pub fn find_primitive_root_mod_p2(p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    let mut g = 2;
    loop {
        if factors.iter().all(|&q| mod_pow(g, (p - 1) / q, p) != 1) {
            break;
        }
        g += 1;
        assert!(g < p, "no primitive root below p, p cannot be prime");
    }
    let p2 = p * p;
    if mod_pow(g, p - 1, p2) != 1 {
        g
    } else {
        g + p
    }
}

/// Deterministic list of all primes strictly below `limit` (segmented sieve).
pub fn primes_below(limit: u64) -> Vec<u64> {
    if limit <= 2 {
        return Vec::new();
    }
    let root = (limit as f64).sqrt() as usize + 2;
    let mut small = vec![true; root];
    small[0] = false;
    if root > 1 {
        small[1] = false;
    }
    for i in 2..root {
        if small[i] {
            let mut j = i * i;
            while j < root {
                small[j] = false;
                j += i;
            }
        }
    }
    let base: Vec<usize> = (2..root).filter(|&i| small[i]).collect();

    let mut out = Vec::new();
    const SEGMENT: usize = 1 << 18;
    let mut lo = 2usize;
    let limit = limit as usize;
    let mut seg = vec![true; SEGMENT];
    while lo < limit {
        let hi = (lo + SEGMENT).min(limit);
        seg[..hi - lo].fill(true);
        for &q in &base {
            if q * q >= hi {
                break;
            }
            let mut j = (lo.div_ceil(q) * q).max(q * q);
            while j < hi {
                seg[j - lo] = false;
                j += q;
            }
        }
        for i in lo..hi {
            if seg[i - lo] && i >= 2 {
                out.push(i as u64);
            }
        }
        lo = hi;
    }
    out
}

/// A validated odd prime modulus p with cached p^2, a primitive root
/// modulo p^2, and its Wieferich status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OddPrimeModulus {
    p: u64,
    p_squared: u64,
    primitive_root: u64,
    wieferich: bool,
}

impl OddPrimeModulus {
    pub fn new(p: u64) -> Result<Self, Error> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::NotAnOddPrime(p));
        }
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        let g = find_primitive_root_mod_p2(p);
        debug_assert_eq!(multiplicative_order(g, p * p, p * (p - 1)), p * (p - 1));
        Ok(OddPrimeModulus {
            p,
            p_squared: p * p,
            primitive_root: g,
            wieferich: is_wieferich(p),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn p_squared(&self) -> u64 {
        self.p_squared
    }

    pub fn primitive_root(&self) -> u64 {
        self.primitive_root
    }

    pub fn is_wieferich(&self) -> bool {
        self.wieferich
    }
}

/// How the exponent w relates to p; drives both the sequence structure and
/// which admissible-value formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentClass {
    /// p | w: the quotient vanishes identically.
    MultipleOfP,
    /// w = 1.
    One,
    /// even w with 2 <= w < p.
    Even,
    /// odd w with 3 <= w < p.
    OddAtLeast3,
    /// w >= p with p not dividing w; reduces to some w1 < p.
    Large,
}

impl ExponentClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExponentClass::MultipleOfP => "multiple_of_p",
            ExponentClass::One => "one",
            ExponentClass::Even => "even",
            ExponentClass::OddAtLeast3 => "odd_ge3",
            ExponentClass::Large => "large",
        }
    }
}

/// Reduction data for p not dividing w: writing w = w1 + w2(p-1) with
/// 1 <= w1 <= p-1, the quotient for w equals c times the quotient for w1
/// on every unit, where c = w1^(-1) (w1 - w2) mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub w1: u64,
    pub multiplier_c: u64,
}

/// Classify w and compute its reduction data when p does not divide w.
pub fn reduce_exponent(m: &OddPrimeModulus, w: u64) -> (ExponentClass, Option<Reduction>) {
    let p = m.p();
    if w.is_multiple_of(p) {
        return (ExponentClass::MultipleOfP, None);
    }
    let mut w1 = w % (p - 1);
    if w1 == 0 {
        w1 = p - 1;
    }
    let w2 = (w - w1) / (p - 1);
    let diff = (w1 % p + p - w2 % p) % p;
    let c = mod_inv(w1, p) as u128 * diff as u128 % p as u128;
    let reduction = Reduction {
        w1,
        multiplier_c: c as u64,
    };
    let class = if w >= p {
        ExponentClass::Large
    } else if w == 1 {
        ExponentClass::One
    } else if w.is_multiple_of(2) {
        ExponentClass::Even
    } else {
        ExponentClass::OddAtLeast3
    };
    (class, Some(reduction))
}

/// A (p, w) pair with its exponent class and reduction data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientSpec {
    modulus: OddPrimeModulus,
    w: u64,
    class: ExponentClass,
    reduction: Option<Reduction>,
}

impl QuotientSpec {
    pub fn new(modulus: OddPrimeModulus, w: u64) -> Result<Self, Error> {
        if !(1..=MAX_EXPONENT).contains(&w) {
            return Err(Error::InvalidExponent(w));
        }
        let (class, reduction) = reduce_exponent(&modulus, w);
        Ok(QuotientSpec {
            modulus,
            w,
            class,
            reduction,
        })
    }

    /// Convenience constructor validating p as well.
    pub fn from_parts(p: u64, w: u64) -> Result<Self, Error> {
        QuotientSpec::new(OddPrimeModulus::new(p)?, w)
    }

    pub fn modulus(&self) -> &OddPrimeModulus {
        &self.modulus
    }

    pub fn p(&self) -> u64 {
        self.modulus.p()
    }

    pub fn p_squared(&self) -> u64 {
        self.modulus.p_squared()
    }

    pub fn w(&self) -> u64 {
        self.w
    }

    pub fn exponent_class(&self) -> ExponentClass {
        self.class
    }

    pub fn reduction(&self) -> Option<Reduction> {
        self.reduction
    }
}

/// Fermat quotient q_p(u): the representative in [0, p-1] of
/// (u^(p-1) - 1)/p mod p for units, and 0 on multiples of p.
pub fn fermat_quotient(m: &OddPrimeModulus, u: u64) -> u64 {
    let p = m.p();
    if u.is_multiple_of(p) {
        return 0;
    }
    let t = mod_pow(u % m.p_squared(), p - 1, m.p_squared());
    // t = 1 (mod p) by Fermat, so the difference is an exact multiple of p.
    debug_assert_eq!((t - 1) % p, 0);
    ((t - 1) / p) % p
}

/// Polynomial quotient q_{p,w}(u) = (u^w - u^{wp})/p mod p, extended to
/// multiples of p: 0 for w >= 2 and k (for u = kp mod p^2) when w = 1.
pub fn poly_quotient(spec: &QuotientSpec, u: u64) -> u64 {
    let p = spec.p();
    let p2 = spec.p_squared();
    let w = spec.w();
    let u = u % p2;
    if u.is_multiple_of(p) {
        return if w == 1 { (u / p) % p } else { 0 };
    }
    let a = mod_pow(u, w, p2) as i64;
    let b = mod_pow(u, w * p, p2) as i64;
    let diff = a - b; // symmetric lift in (-p^2, p^2)
    assert!(diff % p as i64 == 0, "u^w - u^(wp) must be divisible by p");
    (diff / p as i64).rem_euclid(p as i64) as u64
}

/// H_w(u) = -w q_p(u) mod p on units; the homomorphism the class partition
/// is built from.
pub fn h_w(spec: &QuotientSpec, u: u64) -> Result<u64, Error> {
    let p = spec.p();
    if u.is_multiple_of(p) {
        return Err(Error::NotAUnit { u, p });
    }
    let q = fermat_quotient(spec.modulus(), u);
    let neg = (p - (spec.w() % p) * q % p) % p;
    Ok(neg)
}
