//! Command-line surface: one subcommand per experiment, flags only, no
//! configuration files. Identical argv produces byte-identical output.

use crate::analysis::{self, ScanTable, WSelector};
use crate::cyclotomy::{build_partition, verify_facts};
use crate::error::Error;
use crate::gf2poly::{lc_berlekamp_massey, lc_gcd_method, root_spectrum, BitPoly};
use crate::numtheory::{poly_quotient, OddPrimeModulus, QuotientSpec};
use crate::seqgen::{generate_e, generate_f, SequenceKind};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "lpq",
    version,
    about = "Legendre polynomial-quotient sequences and their linear complexity"
)]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    F,
    E,
}

impl KindArg {
    fn to_kind(self) -> SequenceKind {
        match self {
            KindArg::F => SequenceKind::F,
            KindArg::E => SequenceKind::E,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeqFormat {
    Bits,
    Hex,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Bm,
    Gcd,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WArg {
    Even,
    Odd,
    One,
    All,
}

impl WArg {
    fn to_selector(self) -> WSelector {
        match self {
            WArg::Even => WSelector::Even,
            WArg::Odd => WSelector::Odd,
            WArg::One => WSelector::One,
            WArg::All => WSelector::All,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Md,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the polynomial quotient q_{p,w}(u).
    Quotient { p: u64, w: u64, u: u64 },

    /// Emit one period of the selected sequence.
    Generate {
        p: u64,
        w: u64,
        #[arg(long, value_enum, default_value = "f")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "bits")]
        format: SeqFormat,
    },

    /// Measure the linear complexity of one sequence.
    Lc {
        p: u64,
        w: u64,
        #[arg(long, value_enum, default_value = "f")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },

    /// Print the admissible linear-complexity set for (p, w).
    Predict { p: u64, w: u64 },

    /// Measure (f_u) and check the value against the admissible set.
    Verify {
        p: u64,
        w: u64,
        /// Measure empirically even when no admissible set applies
        /// (Wieferich p or w >= p).
        #[arg(long)]
        force: bool,
    },

    /// Measure every selected (p, w) below a prime bound.
    Scan {
        #[arg(long = "max-p")]
        max_p: u64,
        #[arg(long = "w", value_enum)]
        w: WArg,
        #[arg(long, value_enum, default_value = "f")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "md")]
        out: TableFormat,
        /// Worker threads (0 = one per core). Output does not depend on this.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },

    /// List Wieferich primes below a limit.
    Wieferich {
        #[arg(long)]
        limit: u64,
    },

    /// Dump the cyclotomic classes D/Q/N/P and fact verdicts as JSON.
    Partition { p: u64, w: u64 },

    /// Print the root spectrum (n0, np, nunits) of (f_u).
    Spectrum { p: u64, w: u64 },
}

/// Parse argv, execute one subcommand, and return the process exit code:
/// 0 on success, 1 on a verification mismatch, 2 on invalid input.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };

    let mut buf: Vec<u8> = Vec::new();
    let code = match execute(cli.command, &mut buf) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };

    match cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &buf) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            if out.write_all(&buf).is_err() {
                return 2;
            }
        }
    }
    code
}

fn spec_from(p: u64, w: u64) -> Result<QuotientSpec, Error> {
    QuotientSpec::new(OddPrimeModulus::new(p)?, w)
}

fn execute(command: Command, out: &mut Vec<u8>) -> Result<i32, Error> {
    match command {
        Command::Quotient { p, w, u } => {
            let spec = spec_from(p, w)?;
            writeln!(out, "{}", poly_quotient(&spec, u)).unwrap();
            Ok(0)
        }

        Command::Generate { p, w, kind, format } => {
            let spec = spec_from(p, w)?;
            let seq = match kind.to_kind() {
                SequenceKind::F => generate_f(&spec),
                SequenceKind::E => generate_e(&spec),
            };
            match format {
                SeqFormat::Bits => writeln!(out, "{}", seq.to_bit_string()).unwrap(),
                SeqFormat::Hex => writeln!(out, "{}", seq.to_hex_string()).unwrap(),
                SeqFormat::Json => writeln!(out, "{}", seq.to_json()).unwrap(),
            }
            Ok(0)
        }

        Command::Lc { p, w, kind, method } => {
            let spec = spec_from(p, w)?;
            let seq = match kind.to_kind() {
                SequenceKind::F => generate_f(&spec),
                SequenceKind::E => generate_e(&spec),
            };
            writeln!(out, "p = {p}  w = {w}  kind = {}", seq.kind().as_str()).unwrap();
            let lc = match method {
                MethodArg::Bm => {
                    let r = lc_berlekamp_massey(seq.bits());
                    writeln!(out, "lc(bm) = {}", r.lc).unwrap();
                    r.lc
                }
                MethodArg::Gcd => {
                    let (r, _) = lc_gcd_method(seq.bits());
                    writeln!(out, "lc(gcd) = {}", r.lc).unwrap();
                    r.lc
                }
                MethodArg::Both => {
                    let bm = lc_berlekamp_massey(seq.bits());
                    let (gc, _) = lc_gcd_method(seq.bits());
                    writeln!(out, "lc(bm) = {}", bm.lc).unwrap();
                    writeln!(out, "lc(gcd) = {}", gc.lc).unwrap();
                    gc.lc
                }
            };
            writeln!(out, "minimal_poly_degree = {lc}").unwrap();
            let sp = root_spectrum(&BitPoly::from_bits(seq.bits()), p);
            writeln!(out, "spectrum: n0={} np={} nunits={}", sp.n0, sp.np, sp.nunits).unwrap();
            Ok(0)
        }

        Command::Predict { p, w } => {
            let spec = spec_from(p, w)?;
            let pr = analysis::predict_lc(&spec)?;
            writeln!(out, "case: {}", pr.case_label).unwrap();
            let admissible = pr
                .admissible
                .iter()
                .map(|b| format!("{} = {}", b.value, b.formula))
                .collect::<Vec<_>>()
                .join(", ");
            writeln!(out, "admissible: {admissible}").unwrap();
            writeln!(out, "exact: {}", pr.exact).unwrap();
            Ok(0)
        }

        Command::Verify { p, w, force } => {
            let spec = spec_from(p, w)?;
            let report = match analysis::verify(&spec) {
                Ok(report) => report,
                Err(e) if force => {
                    writeln!(out, "note: {e}; measuring empirically").unwrap();
                    analysis::measure_lc(&spec, SequenceKind::F)
                }
                Err(e) => return Err(e),
            };
            write_report(out, &report);
            Ok(if report.in_set == Some(false) { 1 } else { 0 })
        }

        Command::Scan {
            max_p,
            w,
            kind,
            out: format,
            jobs,
        } => {
            let table = analysis::scan(max_p, w.to_selector(), kind.to_kind(), jobs);
            render_table(out, &table, format);
            Ok(if table.all_in_set() { 0 } else { 1 })
        }

        Command::Wieferich { limit } => {
            let primes = analysis::wieferich_scan(limit);
            let line = primes
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(out, "{line}").unwrap();
            Ok(0)
        }

        Command::Partition { p, w } => {
            let spec = spec_from(p, w)?;
            let part = build_partition(&spec)?;
            let facts = verify_facts(&part);
            let d: Vec<Vec<u64>> = (0..p).map(|l| part.d_class(l)).collect();
            let q: Vec<Vec<u64>> = (0..p).map(|l| part.q_class(l).to_vec()).collect();
            let n: Vec<Vec<u64>> = (0..p).map(|l| part.n_class(l).to_vec()).collect();
            let doc = serde_json::json!({
                "p": p,
                "w": w,
                "D": d,
                "Q": q,
                "N": n,
                "P": part.p_multiples(),
                "facts": {
                    "I": facts.i,
                    "II": facts.ii,
                    "III": facts.iii,
                    "IV": facts.iv,
                    "V": facts.v,
                    "VI": facts.vi,
                },
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
            Ok(0)
        }

        Command::Spectrum { p, w } => {
            let spec = spec_from(p, w)?;
            let seq = generate_f(&spec);
            let sp = root_spectrum(&BitPoly::from_bits(seq.bits()), p);
            writeln!(out, "n0={} np={} nunits={}", sp.n0, sp.np, sp.nunits).unwrap();
            Ok(0)
        }
    }
}

fn write_report(out: &mut Vec<u8>, r: &analysis::LcReport) {
    writeln!(
        out,
        "p = {}  w = {}  kind = {}  class = {}  wieferich = {}",
        r.p,
        r.w,
        r.kind.as_str(),
        r.exponent_class.as_str(),
        r.wieferich
    )
    .unwrap();
    match &r.prediction {
        Some(pr) => {
            writeln!(out, "case: {}", pr.case_label).unwrap();
            let admissible = pr
                .admissible
                .iter()
                .map(|b| format!("{} = {}", b.value, b.formula))
                .collect::<Vec<_>>()
                .join(", ");
            writeln!(out, "admissible: {admissible}").unwrap();
        }
        None => writeln!(out, "admissible: (none; empirical measurement)").unwrap(),
    }
    writeln!(out, "lc(bm) = {}", r.lc_bm).unwrap();
    writeln!(out, "lc(gcd) = {}", r.lc_gcd).unwrap();
    writeln!(out, "weight = {}", r.weight).unwrap();
    writeln!(
        out,
        "spectrum: n0={} np={} nunits={}",
        r.spectrum.n0, r.spectrum.np, r.spectrum.nunits
    )
    .unwrap();
    match r.in_set {
        Some(true) => {
            writeln!(out, "in_set = true  branch = {}", r.branch.unwrap_or("-")).unwrap()
        }
        Some(false) => writeln!(out, "in_set = FALSE (measured value outside admissible set)")
            .unwrap(),
        None => writeln!(out, "in_set = n/a").unwrap(),
    }
}

fn render_table(out: &mut Vec<u8>, table: &ScanTable, format: TableFormat) {
    match format {
        TableFormat::Csv => out.extend_from_slice(table.to_csv().as_bytes()),
        TableFormat::Md => out.extend_from_slice(table.to_markdown().as_bytes()),
        TableFormat::Json => {
            out.extend_from_slice(serde_json::to_string_pretty(table).unwrap().as_bytes());
            out.push(b'\n');
        }
    }
}
