//! Crate-wide error type.

/// Errors surfaced by validated constructors and the admissible-value
/// operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The modulus is not an odd prime.
    NotAnOddPrime(u64),
    /// The modulus exceeds the supported range (p < 2^20).
    PrimeTooLarge(u64),
    /// Exponent w outside the accepted range [1, 2^20].
    InvalidExponent(u64),
    /// An operation defined only on units was called with p | u.
    NotAUnit { u: u64, p: u64 },
    /// The cyclotomic partition degenerates when p | w.
    PartitionUndefined { p: u64, w: u64 },
    /// The admissible-value formulas assume 2^(p-1) != 1 (mod p^2).
    WieferichExcluded(u64),
    /// No admissible set is stated for w >= p; reduce first, then measure.
    UnreducedExponent { w: u64, w1: u64, multiplier_c: u64 },
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::NotAnOddPrime(p) => write!(f, "{p} is not an odd prime"),
            Error::PrimeTooLarge(p) => write!(f, "prime {p} exceeds the supported bound 2^20"),
            Error::InvalidExponent(w) => {
                write!(f, "exponent w = {w} outside the accepted range [1, 2^20]")
            }
            Error::NotAUnit { u, p } => write!(f, "{u} is not a unit modulo {p}^2"),
            Error::PartitionUndefined { p, w } => write!(
                f,
                "cyclotomic partition is undefined for p | w (p = {p}, w = {w})"
            ),
            Error::WieferichExcluded(p) => write!(
                f,
                "p = {p} satisfies 2^(p-1) = 1 (mod p^2); the admissible-value \
                 formulas exclude such primes (use empirical measurement instead)"
            ),
            Error::UnreducedExponent { w, w1, multiplier_c } => write!(
                f,
                "no admissible set is stated for w = {w} >= p; it reduces to w1 = {w1} \
                 with multiplier c = {multiplier_c} (measure empirically or predict for w1)"
            ),
        }
    }
}

impl std::error::Error for Error {}
