//! Bit-packed polynomials over the two-element field, and the two
//! independent linear-complexity algorithms (Berlekamp-Massey and the
//! gcd-with-x^T-1 method).
//!
//! Coefficients are dense: bit i of the backing [`BitVec`] is the
//! coefficient of x^i. All arithmetic is word-level; multiplication is
//! schoolbook over the set bits of the shorter operand, division and gcd
//! shift whole words. For the degrees this crate works at (p^2 < 2^16 for
//! the shipped experiments) every operation completes in milliseconds.

use crate::bits::BitVec;
use serde::Serialize;

/// Dense polynomial over GF(2). Zero is represented with no set bits.
///
/// Storage is normalized (no capacity beyond the leading term), so derived
/// equality is equality of polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct BitPoly {
    coeffs: BitVec,
}

fn normalized(mut coeffs: BitVec) -> BitPoly {
    coeffs.shrink_to_content();
    BitPoly { coeffs }
}

impl BitPoly {
    pub fn zero() -> Self {
        BitPoly {
            coeffs: BitVec::zeros(0),
        }
    }

    pub fn one() -> Self {
        BitPoly::from_exponents(&[0])
    }

    /// x^n.
    pub fn monomial(n: usize) -> Self {
        BitPoly::from_exponents(&[n])
    }

    /// x^n + 1.
    pub fn x_pow_plus_one(n: usize) -> Self {
        BitPoly::from_exponents(&[0, n])
    }

    /// Polynomial with the given exponents set (duplicates cancel).
    pub fn from_exponents(exponents: &[usize]) -> Self {
        let len = exponents.iter().map(|&e| e + 1).max().unwrap_or(0);
        let mut coeffs = BitVec::zeros(len);
        for &e in exponents {
            let cur = coeffs.get(e);
            coeffs.set(e, !cur);
        }
        normalized(coeffs)
    }

    /// Interpret a bit-vector as coefficients (bit u = coefficient of x^u).
    pub fn from_bits(bits: &BitVec) -> Self {
        normalized(bits.clone())
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.highest_set_bit()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_all_zero()
    }

    pub fn coefficient(&self, i: usize) -> bool {
        i < self.coeffs.len() && self.coeffs.get(i)
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.count_ones()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        self.coeffs.iter_ones().collect()
    }

    /// Value at x = 1, i.e. the parity of the term count.
    pub fn eval_at_one(&self) -> bool {
        self.term_count() % 2 == 1
    }

    /// Coefficient-wise exclusive or.
    pub fn add(&self, other: &BitPoly) -> BitPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = BitVec::zeros(len);
        coeffs.xor_shifted(&self.coeffs, 0);
        coeffs.xor_shifted(&other.coeffs, 0);
        normalized(coeffs)
    }

    /// Carryless product.
    pub fn mul(&self, other: &BitPoly) -> BitPoly {
        let (da, db) = match (self.degree(), other.degree()) {
            (Some(da), Some(db)) => (da, db),
            _ => return BitPoly::zero(),
        };
        // iterate the sparser operand's set bits
        let (walk, base) = if self.term_count() <= other.term_count() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = BitVec::zeros(da + db + 1);
        for e in walk.coeffs.iter_ones() {
            coeffs.xor_shifted(&base.coeffs, e);
        }
        normalized(coeffs)
    }

    /// Quotient and remainder with deg r < deg divisor.
    ///
    /// # Panics
    ///
    /// Panics when dividing by the zero polynomial.
    pub fn divrem(&self, divisor: &BitPoly) -> (BitPoly, BitPoly) {
        let db = divisor.degree().expect("division by zero polynomial");
        let da = match self.degree() {
            Some(da) if da >= db => da,
            _ => return (BitPoly::zero(), self.clone()),
        };
        let mut rem = self.coeffs.clone();
        let mut quot = BitVec::zeros(da - db + 1);
        let mut deg = rem.highest_set_bit();
        while let Some(d) = deg {
            if d < db {
                break;
            }
            let shift = d - db;
            quot.set(shift, true);
            rem.xor_shifted(&divisor.coeffs, shift);
            deg = rem.highest_set_bit();
        }
        (normalized(quot), normalized(rem))
    }

    /// Greatest common divisor by Euclid's algorithm. gcd(a, 0) = a.
    ///
    /// # Panics
    ///
    /// Panics when both inputs are zero.
    pub fn gcd(a: &BitPoly, b: &BitPoly) -> BitPoly {
        assert!(
            !(a.is_zero() && b.is_zero()),
            "gcd of two zero polynomials is undefined"
        );
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a
    }
}

impl std::fmt::Debug for BitPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitPoly({self})")
    }
}

impl std::fmt::Display for BitPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter_ones()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Which algorithm produced a linear-complexity value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LcMethod {
    BerlekampMassey,
    Gcd,
}

/// Linear complexity of a periodic sequence: the least order of a linear
/// recurrence over GF(2), equal to the degree of the minimal polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LcResult {
    pub lc: usize,
    pub minimal_poly_degree: usize,
    pub method: LcMethod,
}

/// Berlekamp-Massey over two full periods of the sequence whose single
/// period is `period`. Feeding 2T bits of a T-periodic sequence always
/// recovers the true linear complexity because L <= T.
pub fn lc_berlekamp_massey(period: &BitVec) -> LcResult {
    let stream = period.repeat(2);
    let l = berlekamp_massey_len(&stream);
    LcResult {
        lc: l,
        minimal_poly_degree: l,
        method: LcMethod::BerlekampMassey,
    }
}

/// Length of the shortest LFSR generating `stream`.
fn berlekamp_massey_len(stream: &BitVec) -> usize {
    let n_total = stream.len();
    // reversed copy so the discrepancy window reads forward
    let rev = BitVec::from_fn(n_total, |j| stream.get(n_total - 1 - j));
    let mut c = BitVec::zeros(n_total + 1);
    let mut b = BitVec::zeros(n_total + 1);
    c.set(0, true);
    b.set(0, true);
    let mut l = 0usize;
    let mut m = 1usize; // steps since the last length change
    for n in 0..n_total {
        // d = c_0 s_n + c_1 s_{n-1} + ... + c_l s_{n-l}
        let d = c.dot_window(&rev, n_total - 1 - n, l + 1);
        if d {
            if 2 * l <= n {
                let t = c.clone();
                c.xor_shifted(&b, m);
                b = t;
                l = n + 1 - l;
                m = 1;
            } else {
                c.xor_shifted(&b, m);
                m += 1;
            }
        } else {
            m += 1;
        }
    }
    l
}

/// Linear complexity via L = T - deg gcd(x^T - 1, s(x)), together with the
/// minimal polynomial M(x) = (x^T - 1)/gcd(x^T - 1, s(x)).
///
/// The all-zero sequence is handled as L = 0 with M = 1 by convention.
pub fn lc_gcd_method(period: &BitVec) -> (LcResult, BitPoly) {
    let t = period.len();
    let s = BitPoly::from_bits(period);
    if s.is_zero() {
        return (
            LcResult {
                lc: 0,
                minimal_poly_degree: 0,
                method: LcMethod::Gcd,
            },
            BitPoly::one(),
        );
    }
    let xt1 = BitPoly::x_pow_plus_one(t);
    let g = BitPoly::gcd(&xt1, &s);
    let (minimal, r) = xt1.divrem(&g);
    debug_assert!(r.is_zero());
    let lc = t - g.degree().unwrap_or(0);
    debug_assert_eq!(minimal.degree(), Some(lc));
    (
        LcResult {
            lc,
            minimal_poly_degree: minimal.degree().unwrap_or(0),
            method: LcMethod::Gcd,
        },
        minimal,
    )
}

/// The factorization x^(p^2) - 1 = (x + 1) * Fp * Fp2 over GF(2), where
/// Fp = 1 + x + ... + x^(p-1) collects the nontrivial p-th roots of unity
/// and Fp2 = 1 + x^p + ... + x^((p-1)p) the primitive p^2-th roots.
pub fn cyclotomic_factors(p: u64) -> (BitPoly, BitPoly, BitPoly) {
    let p = p as usize;
    let f1 = BitPoly::x_pow_plus_one(1);
    let fp = BitPoly::from_exponents(&(0..p).collect::<Vec<_>>());
    let fp2 = BitPoly::from_exponents(&(0..p).map(|k| k * p).collect::<Vec<_>>());
    (f1, fp, fp2)
}

/// Common roots of `s` and x^(p^2) - 1, split by multiplicative order.
///
/// `n0` counts the root 1, `np` the nontrivial p-th roots of unity and
/// `nunits` the primitive p^2-th roots; n0 + np + nunits = p^2 - L for the
/// sequence with generating polynomial `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RootSpectrum {
    pub n0: usize,
    pub np: usize,
    pub nunits: usize,
}

impl RootSpectrum {
    pub fn total(&self) -> usize {
        self.n0 + self.np + self.nunits
    }
}

/// Root spectrum of `s` against the factors of x^(p^2) - 1. The factors
/// are squarefree and pairwise coprime, so each gcd degree counts roots.
pub fn root_spectrum(s: &BitPoly, p: u64) -> RootSpectrum {
    let (f1, fp, fp2) = cyclotomic_factors(p);
    let deg = |f: &BitPoly| -> usize {
        if s.is_zero() {
            f.degree().unwrap_or(0)
        } else {
            BitPoly::gcd(s, f).degree().unwrap_or(0)
        }
    };
    RootSpectrum {
        n0: deg(&f1),
        np: deg(&fp),
        nunits: deg(&fp2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(exps: &[usize]) -> BitPoly {
        BitPoly::from_exponents(exps)
    }

    #[test]
    fn add_examples() {
        let x_plus_1 = poly(&[0, 1]);
        assert!(x_plus_1.add(&x_plus_1).is_zero());
        assert_eq!(poly(&[0, 2]).add(&poly(&[1])), poly(&[0, 1, 2]));
        assert_eq!(poly(&[3, 5]).add(&BitPoly::zero()), poly(&[3, 5]));
    }

    #[test]
    fn mul_examples() {
        let x_plus_1 = poly(&[0, 1]);
        assert_eq!(x_plus_1.mul(&x_plus_1), poly(&[0, 2]));
        assert_eq!(x_plus_1.mul(&poly(&[0, 1, 2])), poly(&[0, 3]));
        assert_eq!(poly(&[2, 7]).mul(&BitPoly::one()), poly(&[2, 7]));
        assert!(poly(&[2, 7]).mul(&BitPoly::zero()).is_zero());
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = poly(&[0, 3]).divrem(&poly(&[0, 1]));
        assert_eq!(q, poly(&[0, 1, 2]));
        assert!(r.is_zero());

        let (q, r) = poly(&[0, 2]).divrem(&poly(&[0, 2]));
        assert_eq!(q, BitPoly::one());
        assert!(r.is_zero());

        let (q, r) = poly(&[1]).divrem(&poly(&[0, 2]));
        assert!(q.is_zero());
        assert_eq!(r, poly(&[1]));
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn divrem_by_zero_panics() {
        let _ = poly(&[1]).divrem(&BitPoly::zero());
    }

    #[test]
    fn gcd_examples() {
        // x^4 + 1 = (x+1)^4 and x^3+x^2+x+1 = (x+1)^3
        assert_eq!(
            BitPoly::gcd(&poly(&[0, 4]), &poly(&[0, 1, 2, 3])),
            poly(&[0, 1, 2, 3])
        );
        assert_eq!(BitPoly::gcd(&poly(&[2, 5]), &BitPoly::zero()), poly(&[2, 5]));
        assert_eq!(BitPoly::gcd(&poly(&[1, 2]), &poly(&[1])), poly(&[1]));
    }

    #[test]
    #[should_panic(expected = "gcd of two zero polynomials")]
    fn gcd_zero_zero_panics() {
        let _ = BitPoly::gcd(&BitPoly::zero(), &BitPoly::zero());
    }

    #[test]
    fn display_ascending() {
        assert_eq!(poly(&[0, 1, 8]).to_string(), "1 + x + x^8");
        assert_eq!(BitPoly::zero().to_string(), "0");
    }

    #[test]
    fn bm_trivial_sequences() {
        let zero = BitVec::zeros(30);
        assert_eq!(lc_berlekamp_massey(&zero).lc, 0);
        let ones = BitVec::from_fn(30, |_| true);
        assert_eq!(lc_berlekamp_massey(&ones).lc, 1);
    }

    #[test]
    fn bm_known_lfsr() {
        // x^4 + x + 1 is primitive: the length-15 m-sequence has LC 4
        let mut state = [true, false, false, false];
        let seq = BitVec::from_fn(15, |_| {
            let out = state[3];
            let fb = state[3] ^ state[0];
            state = [fb, state[0], state[1], state[2]];
            out
        });
        assert_eq!(lc_berlekamp_massey(&seq).lc, 4);
    }

    #[test]
    fn gcd_method_trivial_sequences() {
        // single one at u = 0: s(x) = 1, gcd = 1, L = T
        let mut single = BitVec::zeros(25);
        single.set(0, true);
        let (r, m) = lc_gcd_method(&single);
        assert_eq!(r.lc, 25);
        assert_eq!(m.degree(), Some(25));

        // all ones, T = 4: gcd((x+1)^4, (x+1)^3) = (x+1)^3, L = 1
        let ones = BitVec::from_fn(4, |_| true);
        let (r, m) = lc_gcd_method(&ones);
        assert_eq!(r.lc, 1);
        assert_eq!(m, poly(&[0, 1]));

        let zero = BitVec::zeros(9);
        let (r, m) = lc_gcd_method(&zero);
        assert_eq!(r.lc, 0);
        assert_eq!(m, BitPoly::one());
    }

    #[test]
    fn minimal_polynomial_annihilates() {
        let period = BitVec::from_bit_string("0011010111011100010").unwrap();
        let (r, m) = lc_gcd_method(&period);
        let stream = period.repeat(2);
        let exps = m.exponents();
        for start in 0..stream.len() - r.minimal_poly_degree {
            let parity = exps
                .iter()
                .filter(|&&e| stream.get(start + e))
                .count()
                % 2;
            assert_eq!(parity, 0, "recurrence fails at {start}");
        }
    }

    #[test]
    fn cyclotomic_factor_examples() {
        let (f1, fp, fp2) = cyclotomic_factors(3);
        assert_eq!(f1, poly(&[0, 1]));
        assert_eq!(fp, poly(&[0, 1, 2]));
        assert_eq!(fp2, poly(&[0, 3, 6]));

        let (f1, fp, fp2) = cyclotomic_factors(5);
        assert_eq!(f1.mul(&fp).mul(&fp2), poly(&[0, 25]));
        assert_eq!(fp2.degree(), Some(20));
    }

    #[test]
    fn lc_of_generated_sequences() {
        use crate::numtheory::QuotientSpec;
        use crate::seqgen::generate_f;
        // p=11, w=1: 111 = p^2 - p + 1
        let s = generate_f(&QuotientSpec::from_parts(11, 1).unwrap());
        assert_eq!(lc_berlekamp_massey(s.bits()).lc, 111);
        // p=13, w=2: 156 = p^2 - p
        let s = generate_f(&QuotientSpec::from_parts(13, 2).unwrap());
        assert_eq!(lc_gcd_method(s.bits()).0.lc, 156);
        // p=13, w=2 spectrum (1, 12, 0); p=11, w=2 spectrum (1, 0, 0)
        assert_eq!(
            root_spectrum(&BitPoly::from_bits(s.bits()), 13),
            RootSpectrum { n0: 1, np: 12, nunits: 0 }
        );
        let s = generate_f(&QuotientSpec::from_parts(11, 2).unwrap());
        assert_eq!(
            root_spectrum(&BitPoly::from_bits(s.bits()), 11),
            RootSpectrum { n0: 1, np: 0, nunits: 0 }
        );
    }

    #[test]
    fn spectrum_of_all_ones() {
        let p = 7u64;
        let ones = BitVec::from_fn(49, |_| true);
        let s = BitPoly::from_bits(&ones);
        let spec = root_spectrum(&s, p);
        assert_eq!((spec.n0, spec.np, spec.nunits), (0, 6, 42));
        let (r, _) = lc_gcd_method(&ones);
        assert_eq!(spec.total() + r.lc, 49);
    }

    #[test]
    fn spectrum_of_zero_polynomial() {
        let spec = root_spectrum(&BitPoly::zero(), 5);
        assert_eq!((spec.n0, spec.np, spec.nunits), (1, 4, 20));
    }

    proptest! {
        #[test]
        fn distributive_law(a in proptest::collection::vec(0usize..96, 0..12),
                            b in proptest::collection::vec(0usize..96, 0..12),
                            c in proptest::collection::vec(0usize..96, 0..12)) {
            let (a, b, c) = (poly(&a), poly(&b), poly(&c));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        }

        #[test]
        fn divrem_reconstructs(a in proptest::collection::vec(0usize..96, 0..16),
                               b in proptest::collection::vec(0usize..48, 1..10)) {
            let a = poly(&a);
            let b = poly(&b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a.clone());
            if let Some(dr) = r.degree() {
                prop_assert!(dr < b.degree().unwrap());
            }
        }

        #[test]
        fn gcd_divides_both(a in proptest::collection::vec(0usize..64, 1..10),
                            b in proptest::collection::vec(0usize..64, 1..10)) {
            let a = poly(&a);
            let b = poly(&b);
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = BitPoly::gcd(&a, &b);
            if !a.is_zero() {
                prop_assert!(a.divrem(&g).1.is_zero());
            }
            if !b.is_zero() {
                prop_assert!(b.divrem(&g).1.is_zero());
            }
        }

        #[test]
        fn bm_equals_gcd_method_on_random_periods(bits in proptest::collection::vec(any::<bool>(), 1..200)) {
            let period = BitVec::from_fn(bits.len(), |i| bits[i]);
            let bm = lc_berlekamp_massey(&period);
            let (gc, _) = lc_gcd_method(&period);
            prop_assert_eq!(bm.lc, gc.lc);
        }
    }
}
