//! Admissible-value oracles for the linear complexity of (f_u), empirical
//! measurement through both LC algorithms, verification of measurements
//! against the admissible sets, and the scan harness that reproduces the
//! published value tables.

use crate::error::Error;
use crate::gf2poly::{lc_berlekamp_massey, lc_gcd_method, root_spectrum, BitPoly, RootSpectrum};
use crate::numtheory::{
    is_wieferich, mod_pow, primes_below, ExponentClass, QuotientSpec,
};
use crate::seqgen::{generate_e, generate_f, BinarySequence, SequenceKind};
use rayon::prelude::*;
use serde::Serialize;

/// One admissible linear-complexity value together with the closed form it
/// comes from (e.g. "p^2-p" or "(p^2+p)/2-1").
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub value: u64,
    pub formula: &'static str,
}

/// The set of admissible LC values for a (p, w) pair, with the case that
/// produced it. `exact` iff the set is a singleton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcPrediction {
    pub admissible: Vec<Branch>,
    pub case_label: String,
    pub exact: bool,
}

impl LcPrediction {
    fn new(case_label: String, admissible: Vec<Branch>) -> Self {
        let exact = admissible.len() == 1;
        LcPrediction {
            admissible,
            case_label,
            exact,
        }
    }

    pub fn values(&self) -> Vec<u64> {
        self.admissible.iter().map(|b| b.value).collect()
    }

    pub fn contains(&self, lc: u64) -> bool {
        self.admissible.iter().any(|b| b.value == lc)
    }

    /// The branch matching a measured value, if any.
    pub fn branch_for(&self, lc: u64) -> Option<&Branch> {
        self.admissible.iter().find(|b| b.value == lc)
    }
}

fn branch(value: u64, formula: &'static str) -> Branch {
    Branch { value, formula }
}

/// Admissible linear-complexity values of (f_u) for a classified (p, w).
///
/// Requires a non-Wieferich p; refuses w >= p (callers reduce first and
/// measure empirically — no closed set is claimed for the reduced
/// multiplier's effect without measuring).
pub fn predict_lc(spec: &QuotientSpec) -> Result<LcPrediction, Error> {
    let p = spec.p();
    if spec.modulus().is_wieferich() {
        return Err(Error::WieferichExcluded(p));
    }
    let p2 = spec.p_squared();
    match spec.exponent_class() {
        ExponentClass::MultipleOfP => Ok(LcPrediction::new(
            "p|w".to_string(),
            vec![branch(0, "0")],
        )),
        ExponentClass::Large => {
            let r = spec.reduction().expect("large w has reduction data");
            Err(Error::UnreducedExponent {
                w: spec.w(),
                w1: r.w1,
                multiplier_c: r.multiplier_c,
            })
        }
        ExponentClass::Even => {
            if p % 4 == 1 {
                Ok(LcPrediction::new(
                    format!("even w, p = 1 (mod 4), p={p}"),
                    vec![branch(p2 - p, "p^2-p")],
                ))
            } else {
                Ok(LcPrediction::new(
                    format!("even w, p = 3 (mod 4), p={p}"),
                    vec![branch(p2 - 1, "p^2-1")],
                ))
            }
        }
        ExponentClass::OddAtLeast3 => match p % 8 {
            1 => Ok(LcPrediction::new(
                format!("odd w >= 3, p = 1 (mod 8), p={p}"),
                vec![branch(p2 - p, "p^2-p"), branch((p2 - p) / 2, "(p^2-p)/2")],
            )),
            7 => Ok(LcPrediction::new(
                format!("odd w >= 3, p = -1 (mod 8), p={p}"),
                vec![
                    branch(p2 - 1, "p^2-1"),
                    branch((p2 + p) / 2 - 1, "(p^2+p)/2-1"),
                ],
            )),
            5 => Ok(LcPrediction::new(
                format!("odd w >= 3, p = -3 (mod 8), p={p}"),
                vec![branch(p2 - p, "p^2-p")],
            )),
            3 => Ok(LcPrediction::new(
                format!("odd w >= 3, p = 3 (mod 8), p={p}"),
                vec![branch(p2 - 1, "p^2-1")],
            )),
            _ => unreachable!("odd prime mod 8"),
        },
        ExponentClass::One => {
            if p % 4 == 1 {
                Ok(LcPrediction::new(
                    format!("w = 1, p = 1 (mod 4), p={p}"),
                    vec![branch(p2 - p, "p^2-p"), branch((p2 - p) / 2, "(p^2-p)/2")],
                ))
            } else {
                Ok(LcPrediction::new(
                    format!("w = 1, p = 3 (mod 4), p={p}"),
                    vec![
                        branch(p2 - p + 1, "p^2-p+1"),
                        branch((p2 - p) / 2 + 1, "(p^2-p)/2+1"),
                    ],
                ))
            }
        }
    }
}

/// Everything measured and predicted about one sequence.
#[derive(Debug, Clone, Serialize)]
pub struct LcReport {
    pub p: u64,
    pub w: u64,
    pub kind: SequenceKind,
    pub exponent_class: ExponentClass,
    pub wieferich: bool,
    pub prediction: Option<LcPrediction>,
    pub lc_bm: u64,
    pub lc_gcd: u64,
    pub spectrum: RootSpectrum,
    pub weight: u64,
    /// Measured LC lies in the admissible set (absent without a prediction).
    pub in_set: Option<bool>,
    /// The closed form of the admissible value that was attained.
    pub branch: Option<&'static str>,
}

impl LcReport {
    pub fn lc(&self) -> u64 {
        self.lc_bm
    }
}

/// Generate the sequence for (spec, kind), run both LC algorithms, compute
/// the root spectrum and weight, and attach the admissible set when one
/// exists (kind F only; (e_u) has no claimed set and is measured as-is).
pub fn measure_lc(spec: &QuotientSpec, kind: SequenceKind) -> LcReport {
    let seq = match kind {
        SequenceKind::F => generate_f(spec),
        SequenceKind::E => generate_e(spec),
    };
    measure_sequence(&seq)
}

/// Measure an already-generated sequence.
pub fn measure_sequence(seq: &BinarySequence) -> LcReport {
    let spec = seq.spec();
    let bm = lc_berlekamp_massey(seq.bits());
    let (gcd_res, _minimal) = lc_gcd_method(seq.bits());
    let spectrum = root_spectrum(&BitPoly::from_bits(seq.bits()), spec.p());
    debug_assert_eq!(bm.lc, gcd_res.lc, "the two LC routes must agree");
    debug_assert_eq!(
        spectrum.total() + gcd_res.lc,
        (spec.p_squared()) as usize,
        "spectrum must account for p^2 - L roots"
    );
    let prediction = match seq.kind() {
        SequenceKind::F => predict_lc(spec).ok(),
        SequenceKind::E => None,
    };
    let lc = bm.lc as u64;
    let in_set = prediction.as_ref().map(|pr| pr.contains(lc));
    let branch = prediction
        .as_ref()
        .and_then(|pr| pr.branch_for(lc))
        .map(|b| b.formula);
    LcReport {
        p: spec.p(),
        w: spec.w(),
        kind: seq.kind(),
        exponent_class: spec.exponent_class(),
        wieferich: spec.modulus().is_wieferich(),
        prediction,
        lc_bm: lc,
        lc_gcd: gcd_res.lc as u64,
        spectrum,
        weight: seq.weight() as u64,
        in_set,
        branch,
    }
}

/// Measure (f_u) and check the result against the admissible set.
///
/// Fails up front when no prediction applies (Wieferich p, unreduced w);
/// a measured value outside the set comes back as `in_set == Some(false)`,
/// never as an error.
pub fn verify(spec: &QuotientSpec) -> Result<LcReport, Error> {
    predict_lc(spec)?;
    Ok(measure_lc(spec, SequenceKind::F))
}

/// Which exponents a scan covers for each prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WSelector {
    /// even w in [2, p)
    Even,
    /// odd w in [3, p)
    Odd,
    /// w = 1
    One,
    /// all w in [1, p)
    All,
}

impl WSelector {
    fn exponents(&self, p: u64) -> Vec<u64> {
        match self {
            WSelector::Even => (2..p).step_by(2).collect(),
            WSelector::Odd => (3..p).step_by(2).collect(),
            WSelector::One => vec![1],
            WSelector::All => (1..p).collect(),
        }
    }
}

/// A scan row: a full measurement, or an annotated refusal for a prime the
/// admissible-value formulas exclude.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ScanRow {
    Measured(LcReport),
    WieferichSkipped { p: u64, reason: String },
}

impl ScanRow {
    pub fn p(&self) -> u64 {
        match self {
            ScanRow::Measured(r) => r.p,
            ScanRow::WieferichSkipped { p, .. } => *p,
        }
    }

    fn sort_key(&self) -> (u64, u64) {
        match self {
            ScanRow::Measured(r) => (r.p, r.w),
            ScanRow::WieferichSkipped { p, .. } => (*p, 0),
        }
    }
}

/// Count of rows per (p mod 8, attained branch) across a scan.
#[derive(Debug, Clone, Serialize)]
pub struct BranchFrequency {
    pub p_mod_8: u64,
    pub branch: String,
    pub count: usize,
}

/// Result table of a scan, sorted by (p, w) regardless of worker count.
#[derive(Debug, Clone, Serialize)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
    pub summary: Vec<BranchFrequency>,
}

impl ScanTable {
    pub fn reports(&self) -> impl Iterator<Item = &LcReport> {
        self.rows.iter().filter_map(|r| match r {
            ScanRow::Measured(rep) => Some(rep),
            _ => None,
        })
    }

    /// true when every row with a prediction has its measurement in-set.
    pub fn all_in_set(&self) -> bool {
        self.reports().all(|r| r.in_set.unwrap_or(true))
    }

    /// CSV with the fixed schema
    /// `p,w,class,p_mod_8,wieferich,lc,predicted,branch,in_set,weight,n0,np,nunits`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "p,w,class,p_mod_8,wieferich,lc,predicted,branch,in_set,weight,n0,np,nunits\n",
        );
        for row in &self.rows {
            match row {
                ScanRow::Measured(r) => {
                    let predicted = r
                        .prediction
                        .as_ref()
                        .map(|pr| {
                            pr.values()
                                .iter()
                                .map(|v| v.to_string())
                                .collect::<Vec<_>>()
                                .join("|")
                        })
                        .unwrap_or_default();
                    let in_set = r.in_set.map(|b| b.to_string()).unwrap_or_default();
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                        r.p,
                        r.w,
                        r.exponent_class.as_str(),
                        r.p % 8,
                        r.wieferich,
                        r.lc_bm,
                        predicted,
                        r.branch.unwrap_or(""),
                        in_set,
                        r.weight,
                        r.spectrum.n0,
                        r.spectrum.np,
                        r.spectrum.nunits
                    ));
                }
                ScanRow::WieferichSkipped { p, .. } => {
                    out.push_str(&format!("{},,,{},true,,,wieferich-excluded,,,,,\n", p, p % 8));
                }
            }
        }
        out
    }

    /// Markdown table in the layout of the published tables
    /// (p, p mod 8, lc, branch), followed by the branch-frequency summary.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| p | p mod 8 | w | class | lc | predicted | branch | in_set |\n");
        out.push_str("|---|---------|---|-------|----|-----------|--------|--------|\n");
        for row in &self.rows {
            match row {
                ScanRow::Measured(r) => {
                    let predicted = r
                        .prediction
                        .as_ref()
                        .map(|pr| {
                            pr.admissible
                                .iter()
                                .map(|b| format!("{}={}", b.value, b.formula))
                                .collect::<Vec<_>>()
                                .join(" or ")
                        })
                        .unwrap_or_else(|| "-".to_string());
                    let in_set = r
                        .in_set
                        .map(|b| b.to_string())
                        .unwrap_or_else(|| "-".to_string());
                    out.push_str(&format!(
                        "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                        r.p,
                        r.p % 8,
                        r.w,
                        r.exponent_class.as_str(),
                        r.lc_bm,
                        predicted,
                        r.branch.unwrap_or("-"),
                        in_set
                    ));
                }
                ScanRow::WieferichSkipped { p, reason } => {
                    out.push_str(&format!(
                        "| {} | {} | - | - | - | - | wieferich-excluded | - |\n",
                        p,
                        p % 8
                    ));
                    out.push_str(&format!("<!-- {reason} -->\n"));
                }
            }
        }
        out.push_str("\nBranch frequency by p mod 8:\n\n");
        out.push_str("| p mod 8 | branch | count |\n|---------|--------|-------|\n");
        for f in &self.summary {
            out.push_str(&format!("| {} | {} | {} |\n", f.p_mod_8, f.branch, f.count));
        }
        out
    }
}

fn branch_summary(rows: &[ScanRow]) -> Vec<BranchFrequency> {
    let mut counts: std::collections::BTreeMap<(u64, String), usize> = Default::default();
    for row in rows {
        if let ScanRow::Measured(r) = row {
            let label = match (r.in_set, r.branch) {
                (Some(true), Some(b)) => b.to_string(),
                (Some(false), _) => format!("OUT-OF-SET lc={}", r.lc_bm),
                _ => format!("lc={}", r.lc_bm),
            };
            *counts.entry((r.p % 8, label)).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .map(|((p_mod_8, branch), count)| BranchFrequency {
            p_mod_8,
            branch,
            count,
        })
        .collect()
}

/// Measure every selected (p, w) for odd primes p < p_max.
///
/// Wieferich primes are not measured (the formulas exclude them and their
/// periods are enormous); they appear as annotated refusal rows. Jobs are
/// distributed over `jobs` workers (0 = rayon default); results are sorted,
/// so output is schedule-independent.
pub fn scan(p_max: u64, selector: WSelector, kind: SequenceKind, jobs: usize) -> ScanTable {
    let jobs_list: Vec<(u64, Option<u64>)> = primes_below(p_max)
        .into_iter()
        .filter(|&p| p > 2)
        .flat_map(|p| {
            if is_wieferich(p) {
                vec![(p, None)]
            } else {
                selector.exponents(p).into_iter().map(|w| (p, Some(w))).collect()
            }
        })
        .collect();

    let run = || -> Vec<ScanRow> {
        jobs_list
            .par_iter()
            .map(|&(p, w)| match w {
                None => ScanRow::WieferichSkipped {
                    p,
                    reason: format!("2^(p-1) = 1 (mod p^2) for p = {p}; no admissible set"),
                },
                Some(w) => {
                    let spec = QuotientSpec::from_parts(p, w).expect("sieved prime in range");
                    ScanRow::Measured(measure_lc(&spec, kind))
                }
            })
            .collect()
    };

    let mut rows = if jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool")
            .install(run)
    };
    rows.sort_by_key(|r| r.sort_key());
    let summary = branch_summary(&rows);
    ScanTable { rows, summary }
}

/// All Wieferich primes strictly below `limit`.
pub fn wieferich_scan(limit: u64) -> Vec<u64> {
    let mut found: Vec<u64> = primes_below(limit)
        .par_iter()
        .filter(|&&p| p > 2 && mod_pow(2, p - 1, p * p) == 1)
        .copied()
        .collect();
    found.sort_unstable();
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::OddPrimeModulus;

    fn spec(p: u64, w: u64) -> QuotientSpec {
        QuotientSpec::from_parts(p, w).unwrap()
    }

    #[test]
    fn predict_examples() {
        let pr = predict_lc(&spec(13, 4)).unwrap();
        assert_eq!(pr.values(), vec![156]);
        assert!(pr.exact);

        let pr = predict_lc(&spec(23, 3)).unwrap();
        assert_eq!(pr.values(), vec![528, 275]);
        assert!(!pr.exact);

        let pr = predict_lc(&spec(17, 1)).unwrap();
        assert_eq!(pr.values(), vec![272, 136]);

        let pr = predict_lc(&spec(5, 5)).unwrap();
        assert_eq!(pr.values(), vec![0]);
        assert!(pr.exact);
    }

    #[test]
    fn predict_all_mod8_cases() {
        // odd w branches
        assert_eq!(predict_lc(&spec(17, 3)).unwrap().values(), vec![272, 136]); // 1 mod 8
        assert_eq!(predict_lc(&spec(7, 3)).unwrap().values(), vec![48, 27]); // -1 mod 8
        assert_eq!(predict_lc(&spec(13, 3)).unwrap().values(), vec![156]); // -3 mod 8
        assert_eq!(predict_lc(&spec(11, 3)).unwrap().values(), vec![120]); // 3 mod 8
        // w = 1 branches
        assert_eq!(predict_lc(&spec(13, 1)).unwrap().values(), vec![156, 78]);
        assert_eq!(predict_lc(&spec(11, 1)).unwrap().values(), vec![111, 56]);
        // even w branches
        assert_eq!(predict_lc(&spec(13, 2)).unwrap().values(), vec![156]);
        assert_eq!(predict_lc(&spec(11, 2)).unwrap().values(), vec![120]);
    }

    #[test]
    fn predict_refusals() {
        let m = OddPrimeModulus::new(1093).unwrap();
        let s = QuotientSpec::new(m, 2).unwrap();
        assert_eq!(predict_lc(&s).unwrap_err(), Error::WieferichExcluded(1093));

        let err = predict_lc(&spec(5, 6)).unwrap_err();
        assert_eq!(
            err,
            Error::UnreducedExponent {
                w: 6,
                w1: 2,
                multiplier_c: 3
            }
        );
    }

    #[test]
    fn measure_small_cases() {
        let r = measure_lc(&spec(5, 5), SequenceKind::F);
        assert_eq!(r.lc_bm, 0);
        assert_eq!(r.in_set, Some(true));

        let r = measure_lc(&spec(11, 3), SequenceKind::F);
        assert_eq!(r.lc_bm, 120);
        assert_eq!(r.branch, Some("p^2-1"));

        let r = measure_lc(&spec(5, 2), SequenceKind::F);
        assert_eq!(r.lc_bm, 20); // p^2 - p for p = 1 (mod 4)
        assert_eq!(r.lc_gcd, 20);
        assert_eq!(r.in_set, Some(true));
        assert_eq!(r.weight, 8);
    }

    #[test]
    fn measure_e_is_empirical_only() {
        let r = measure_lc(&spec(5, 2), SequenceKind::E);
        assert!(r.prediction.is_none());
        assert!(r.in_set.is_none());
        assert_eq!(r.lc_bm, r.lc_gcd);
    }

    #[test]
    fn verify_examples() {
        let r = verify(&spec(43, 3)).unwrap();
        assert_eq!(r.lc_bm, 1848);
        assert_eq!(r.in_set, Some(true));
        assert_eq!(r.branch, Some("p^2-1"));

        let r = verify(&spec(23, 1)).unwrap();
        assert_eq!(r.lc_bm, 254);
        assert_eq!(r.branch, Some("(p^2-p)/2+1"));

        let r = verify(&spec(13, 6)).unwrap();
        assert_eq!(r.lc_bm, 156);
        assert_eq!(r.branch, Some("p^2-p"));
        assert!(r.prediction.unwrap().exact);
    }

    #[test]
    fn scan_even_small() {
        let table = scan(12, WSelector::Even, SequenceKind::F, 2);
        assert!(table.all_in_set());
        let keys: Vec<(u64, u64)> = table.reports().map(|r| (r.p, r.w)).collect();
        assert_eq!(
            keys,
            vec![(3, 2), (5, 2), (5, 4), (7, 2), (7, 4), (7, 6), (11, 2), (11, 4), (11, 6), (11, 8), (11, 10)]
        );
        for r in table.reports() {
            assert!(r.prediction.as_ref().unwrap().exact);
            assert_eq!(r.in_set, Some(true));
        }
    }

    #[test]
    fn scan_is_deterministic_across_job_counts() {
        let a = scan(30, WSelector::One, SequenceKind::F, 1);
        let b = scan(30, WSelector::One, SequenceKind::F, 4);
        let aj = serde_json::to_string(&a).unwrap();
        let bj = serde_json::to_string(&b).unwrap();
        assert_eq!(aj, bj);
    }

    #[test]
    fn wieferich_scan_examples() {
        assert_eq!(wieferich_scan(1000), Vec::<u64>::new());
        assert_eq!(wieferich_scan(1100), vec![1093]);
    }
}
