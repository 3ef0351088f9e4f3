//! Generation of the p^2-periodic binary sequences: the Legendre-symbol
//! sequence (f_u) and the threshold sequence (e_u), each from the quotient
//! values directly, plus an equivalent class-based construction of (f_u)
//! used as a cross-check oracle.

use crate::bits::BitVec;
use crate::cyclotomy::{CyclotomicPartition, Label};
use crate::numtheory::{legendre, poly_quotient, ExponentClass, QuotientSpec};
use serde::Serialize;

/// Which of the two sequence families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    /// f_u = 0 iff the quotient is zero or a quadratic residue mod p.
    F,
    /// e_u = 0 iff the quotient is below p/2.
    E,
}

impl SequenceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SequenceKind::F => "f",
            SequenceKind::E => "e",
        }
    }
}

/// One period (length p^2) of a generated sequence with its provenance.
#[derive(Clone)]
pub struct BinarySequence {
    bits: BitVec,
    kind: SequenceKind,
    spec: QuotientSpec,
}

impl BinarySequence {
    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn spec(&self) -> &QuotientSpec {
        &self.spec
    }

    /// Period length p^2.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, u: u64) -> bool {
        self.bits.get((u % self.spec.p_squared()) as usize)
    }

    /// Hamming weight of one period.
    pub fn weight(&self) -> usize {
        self.bits.count_ones()
    }

    /// One line of ASCII '0'/'1', u = 0 first.
    pub fn to_bit_string(&self) -> String {
        self.bits.to_bit_string()
    }

    /// Hex export, most significant bit = u = 0.
    pub fn to_hex_string(&self) -> String {
        self.bits.to_hex_string()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.spec.p(),
            "w": self.spec.w(),
            "kind": self.kind.as_str(),
            "bits": self.to_bit_string(),
        })
    }
}

/// The quotient-is-zero-or-residue test shared by both f constructions.
fn f_bit(q: u64, p: u64) -> bool {
    q != 0 && legendre(q, p) == -1
}

/// Generate (f_u) over one period from the quotient definition:
/// f_u = 0 iff q_{p,w}(u) = 0 or q_{p,w}(u) is a quadratic residue mod p.
pub fn generate_f(spec: &QuotientSpec) -> BinarySequence {
    let p = spec.p();
    let bits = BitVec::from_fn(spec.p_squared() as usize, |u| {
        f_bit(poly_quotient(spec, u as u64), p)
    });
    BinarySequence {
        bits,
        kind: SequenceKind::F,
        spec: *spec,
    }
}

/// Generate (e_u) over one period: e_u = 1 iff q_{p,w}(u) >= (p+1)/2.
///
/// The threshold q/p < 1/2 is equivalent to q <= (p-1)/2 for integer q, so
/// no rational arithmetic is involved.
pub fn generate_e(spec: &QuotientSpec) -> BinarySequence {
    let half = (spec.p() - 1) / 2;
    let bits = BitVec::from_fn(spec.p_squared() as usize, |u| {
        poly_quotient(spec, u as u64) > half
    });
    BinarySequence {
        bits,
        kind: SequenceKind::E,
        spec: *spec,
    }
}

/// Generate (f_u) from the class partition instead of per-u quotients.
///
/// Even w puts the ones on the D classes at non-residue levels; odd w >= 3
/// swaps in the character refinement (N at residue levels, Q at
/// non-residue levels); w = 1 additionally sets the positions lp with l a
/// non-residue. Large w uses the parity of w like the in-range cases.
pub fn generate_f_by_classes(part: &CyclotomicPartition) -> BinarySequence {
    let spec = *part.spec();
    let p = spec.p();
    let even_w = spec.w().is_multiple_of(2);
    let w_one = spec.exponent_class() == ExponentClass::One;
    let bits = BitVec::from_fn(spec.p_squared() as usize, |u| {
        match part.label_of(u as u64) {
            Label::PMultiple { k } => w_one && legendre(k as u64, p) == -1,
            Label::Unit { level, residue } => {
                let level_chi = legendre(level as u64, p);
                // for odd w the character of u flips which levels carry ones
                if even_w || residue {
                    level_chi == -1
                } else {
                    level_chi == 1
                }
            }
        }
    });
    BinarySequence {
        bits,
        kind: SequenceKind::F,
        spec,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomy::build_partition;
    use crate::numtheory::OddPrimeModulus;

    fn spec(p: u64, w: u64) -> QuotientSpec {
        QuotientSpec::from_parts(p, w).unwrap()
    }

    #[test]
    fn f_prefix_p5_w2() {
        let s = generate_f(&spec(5, 2));
        assert!(!s.bit(0));
        assert!(!s.bit(1));
        assert!(!s.bit(2)); // q = 1 is a residue
        assert!(s.bit(3)); // q = 2 is a non-residue mod 5
        assert_eq!(s.len(), 25);
    }

    #[test]
    fn f_all_zero_when_p_divides_w() {
        let s = generate_f(&spec(5, 5));
        assert_eq!(s.weight(), 0);
        let s = generate_f(&spec(7, 14));
        assert_eq!(s.weight(), 0);
    }

    #[test]
    fn f_weight_formulas() {
        assert_eq!(generate_f(&spec(5, 2)).weight(), 8); // (p-1)^2/2
        assert_eq!(generate_f(&spec(11, 1)).weight(), 55); // p(p-1)/2
        for (p, w) in [(7u64, 3u64), (11, 4), (13, 9), (17, 2)] {
            let expect = ((p - 1) * (p - 1) / 2) as usize;
            assert_eq!(generate_f(&spec(p, w)).weight(), expect, "p={p} w={w}");
        }
    }

    #[test]
    fn e_examples_p5_w2() {
        let s = generate_e(&spec(5, 2));
        assert!(!s.bit(0)); // q = 0
        assert!(!s.bit(2)); // q = 1 < 5/2
        assert!(s.bit(4)); // q = 3 >= 5/2
    }

    #[test]
    fn class_construction_matches_definition() {
        for (p, w) in [(5u64, 2u64), (7, 3), (11, 1), (13, 6), (17, 5)] {
            let spec = spec(p, w);
            let direct = generate_f(&spec);
            let via_classes = generate_f_by_classes(&build_partition(&spec).unwrap());
            assert_eq!(
                direct.bits(),
                via_classes.bits(),
                "constructions differ for p={p} w={w}"
            );
        }
    }

    #[test]
    fn weight_parity_matches_value_at_one() {
        // even and odd w >= 2 give even weight; w = 1 weight has the parity
        // of (p-1)/2
        for p in [5u64, 7, 11, 13, 19, 23] {
            for w in 1..p {
                let weight = generate_f(&spec(p, w)).weight() as u64;
                if w == 1 {
                    assert_eq!(weight % 2, ((p - 1) / 2) % 2, "p={p} w=1");
                } else {
                    assert_eq!(weight % 2, 0, "p={p} w={w}");
                }
            }
        }
    }

    #[test]
    fn large_w_relates_to_reduced_sequence_on_units() {
        for (p, w) in [(5u64, 9u64), (5, 6), (7, 11), (7, 15), (11, 13), (13, 40)] {
            let m = OddPrimeModulus::new(p).unwrap();
            let big = QuotientSpec::new(m, w).unwrap();
            let red = big.reduction().unwrap();
            let small = QuotientSpec::new(m, red.w1).unwrap();
            let f_big = generate_f(&big);
            let f_small = generate_f(&small);
            let chi_c = legendre(red.multiplier_c, p);
            for u in 0..p * p {
                if u % p == 0 {
                    // w >= p >= 2 forces zero here regardless of w1
                    assert!(!f_big.bit(u), "p={p} w={w} u={u}");
                    continue;
                }
                let q1 = poly_quotient(&small, u);
                match chi_c {
                    0 => assert!(!f_big.bit(u), "p={p} w={w} u={u}"),
                    1 => assert_eq!(f_big.bit(u), f_small.bit(u), "p={p} w={w} u={u}"),
                    _ => {
                        if q1 == 0 {
                            assert_eq!(f_big.bit(u), f_small.bit(u), "p={p} w={w} u={u}");
                        } else {
                            assert_ne!(f_big.bit(u), f_small.bit(u), "p={p} w={w} u={u}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exports_are_consistent() {
        let s = generate_f(&spec(3, 2));
        assert_eq!(s.to_bit_string(), "000011000");
        assert_eq!(s.to_hex_string(), "0c0");
        let j = s.to_json();
        assert_eq!(j["p"], 3);
        assert_eq!(j["w"], 2);
        assert_eq!(j["kind"], "f");
        assert_eq!(j["bits"], "000011000");
    }
}
