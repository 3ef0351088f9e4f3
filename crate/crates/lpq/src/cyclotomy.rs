//! Level-set partition of the units modulo p^2 induced by the homomorphism
//! H_w, refined by the quadratic character, plus the class generating
//! polynomials and the multiplicative translation facts used by the
//! linear-complexity arguments.

use crate::error::Error;
use crate::gf2poly::BitPoly;
use crate::numtheory::{h_w, legendre, QuotientSpec};
use serde::Serialize;

/// Label of a residue in [0, p^2): either a multiple of p, or a unit
/// carrying its H_w level and Legendre character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    /// u = kp with 0 <= k < p.
    PMultiple { k: u32 },
    /// A unit with H_w(u) = level and (u/p) = +1 (`residue`) or -1.
    Unit { level: u32, residue: bool },
}

/// Which family of classes to take a generating polynomial over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    /// D_l: all units at level l.
    D,
    /// Q_l: units at level l that are quadratic residues mod p.
    Q,
    /// N_l: units at level l that are non-residues mod p.
    N,
}

/// The partition of [0, p^2) into P and the refined classes Q_l, N_l.
///
/// Stored as a flat label array (O(1) membership) plus sorted member lists
/// per class for iteration and dumping.
#[derive(Debug)]
pub struct CyclotomicPartition {
    spec: QuotientSpec,
    labels: Vec<Label>,
    q_members: Vec<Vec<u64>>,
    n_members: Vec<Vec<u64>>,
    p_members: Vec<u64>,
}

/// Build the partition for a spec with p not dividing w.
///
/// When p | w the homomorphism collapses to 0 and no p-class partition
/// exists, so that case is rejected.
pub fn build_partition(spec: &QuotientSpec) -> Result<CyclotomicPartition, Error> {
    let p = spec.p();
    if spec.w().is_multiple_of(p) {
        return Err(Error::PartitionUndefined { p, w: spec.w() });
    }
    let p2 = spec.p_squared();
    let mut labels = Vec::with_capacity(p2 as usize);
    let mut q_members = vec![Vec::with_capacity((p as usize - 1) / 2); p as usize];
    let mut n_members = vec![Vec::with_capacity((p as usize - 1) / 2); p as usize];
    let mut p_members = Vec::with_capacity(p as usize);
    for u in 0..p2 {
        if u % p == 0 {
            labels.push(Label::PMultiple { k: (u / p) as u32 });
            p_members.push(u);
        } else {
            let level = h_w(spec, u).expect("u is a unit") as u32;
            let residue = legendre(u, p) == 1;
            labels.push(Label::Unit { level, residue });
            if residue {
                q_members[level as usize].push(u);
            } else {
                n_members[level as usize].push(u);
            }
        }
    }
    Ok(CyclotomicPartition {
        spec: *spec,
        labels,
        q_members,
        n_members,
        p_members,
    })
}

impl CyclotomicPartition {
    pub fn spec(&self) -> &QuotientSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p()
    }

    pub fn label_of(&self, u: u64) -> Label {
        self.labels[(u % self.spec.p_squared()) as usize]
    }

    pub fn q_class(&self, l: u64) -> &[u64] {
        &self.q_members[l as usize]
    }

    pub fn n_class(&self, l: u64) -> &[u64] {
        &self.n_members[l as usize]
    }

    /// D_l = Q_l and N_l merged, ascending.
    pub fn d_class(&self, l: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.q_members[l as usize]
            .iter()
            .chain(self.n_members[l as usize].iter())
            .copied()
            .collect();
        v.sort_unstable();
        v
    }

    pub fn p_multiples(&self) -> &[u64] {
        &self.p_members
    }
}

/// Characteristic polynomial of a class: sum of x^u over the members.
///
/// # Panics
///
/// Panics when `l >= p`.
pub fn class_polynomial(part: &CyclotomicPartition, which: ClassKind, l: u64) -> BitPoly {
    assert!(l < part.p(), "class index {l} out of range for p = {}", part.p());
    let members: Vec<usize> = match which {
        ClassKind::D => part.d_class(l).iter().map(|&u| u as usize).collect(),
        ClassKind::Q => part.q_class(l).iter().map(|&u| u as usize).collect(),
        ClassKind::N => part.n_class(l).iter().map(|&u| u as usize).collect(),
    };
    BitPoly::from_exponents(&members)
}

/// Lambda_shift(x) = sum over non-residue levels l of D_{l+shift}(x);
/// at shift 0 this is the generating polynomial of the f-sequence for
/// even w. It always has (p-1)^2/2 terms.
pub fn lambda_polynomial(part: &CyclotomicPartition, shift: u64) -> BitPoly {
    let p = part.p();
    let mut exps = Vec::new();
    for l in 1..p {
        if legendre(l, p) == -1 {
            let target = (l + shift) % p;
            exps.extend(part.d_class(target).iter().map(|&u| u as usize));
        }
    }
    BitPoly::from_exponents(&exps)
}

/// Verdicts for the six multiplicative translation facts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactsReport {
    /// a D_l = D_{l+l'} for a in D_{l'}.
    pub i: bool,
    /// a Q_l = Q_{l+l'} for a in Q_{l'}.
    pub ii: bool,
    /// a N_l = N_{l+l'} for a in Q_{l'}.
    pub iii: bool,
    /// a Q_l = N_{l+l'} for a in N_{l'}.
    pub iv: bool,
    /// a N_l = Q_{l+l'} for a in N_{l'}.
    pub v: bool,
    /// D_l reduces mod p onto {1, ..., p-1}.
    pub vi: bool,
}

impl FactsReport {
    pub fn all_passed(&self) -> bool {
        self.i && self.ii && self.iii && self.iv && self.v && self.vi
    }
}

/// Exhaustive bound for fact checking; larger p sample 8 elements per class.
const EXHAUSTIVE_P: u64 = 31;

/// Check Facts (I)-(VI): multiplicative translation of the classes and the
/// mod-p reduction of each D_l. All multipliers are checked for p <= 31, a
/// fixed sample of 8 per class above that.
pub fn verify_facts(part: &CyclotomicPartition) -> FactsReport {
    let p = part.p();
    let p2 = part.spec().p_squared();
    let mut report = FactsReport {
        i: true,
        ii: true,
        iii: true,
        iv: true,
        v: true,
        vi: true,
    };

    let take = |class: &[u64]| -> Vec<u64> {
        if p <= EXHAUSTIVE_P {
            class.to_vec()
        } else {
            class.iter().take(8).copied().collect()
        }
    };

    for l_prime in 0..p {
        let multipliers: Vec<(u64, bool)> = take(part.q_class(l_prime))
            .into_iter()
            .map(|a| (a, true))
            .chain(take(part.n_class(l_prime)).into_iter().map(|a| (a, false)))
            .collect();
        for (a, a_residue) in multipliers {
            for l in 0..p {
                let target = (l + l_prime) % p;
                // map Q_l and N_l through multiplication by a; the map is a
                // bijection on units, so landing in the right class for
                // every element is set equality
                for &u in part.q_class(l) {
                    match part.label_of(a * u % p2) {
                        Label::Unit { level, residue } => {
                            let ok_level = level as u64 == target;
                            let expect_residue = a_residue;
                            if a_residue {
                                // fact II: a Q_l = Q_{l+l'}
                                report.ii &= ok_level && residue == expect_residue;
                            } else {
                                // fact IV: a Q_l = N_{l+l'}
                                report.iv &= ok_level && !residue;
                            }
                            report.i &= ok_level;
                        }
                        Label::PMultiple { .. } => {
                            report.i = false;
                        }
                    }
                }
                for &u in part.n_class(l) {
                    match part.label_of(a * u % p2) {
                        Label::Unit { level, residue } => {
                            let ok_level = level as u64 == target;
                            if a_residue {
                                // fact III: a N_l = N_{l+l'}
                                report.iii &= ok_level && !residue;
                            } else {
                                // fact V: a N_l = Q_{l+l'}
                                report.v &= ok_level && residue;
                            }
                            report.i &= ok_level;
                        }
                        Label::PMultiple { .. } => {
                            report.i = false;
                        }
                    }
                }
            }
        }
    }

    for l in 0..p {
        let mut seen = vec![false; p as usize];
        for u in part.d_class(l) {
            seen[(u % p) as usize] = true;
        }
        report.vi &= !seen[0] && seen[1..].iter().all(|&s| s);
    }

    report
}
