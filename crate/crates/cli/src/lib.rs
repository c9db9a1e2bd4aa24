use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use duality_core::complex::FreeComplex;
use duality_core::functors::{ess_iso, llambda_tower, rgamma_tower, tower_report, EssCertificate, EssKind, TowerReport};
use duality_core::koszul::wpr_check;
use duality_core::linalg::ExactRing;
use duality_core::literal::ComplexLiteral;
use duality_core::ring::{Ring, RingSpec};
use duality_core::telescope::TelescopeTower;
use duality_core::verify::{self, canonical_json, render_text, Instance, Mode, Target, Verdict};
use duality_core::{with_ring, Error, Result};

/// Finite-level checks of Greenlees-May duality for telescope complexes.
///
/// Exit codes: 0 verified/certified (for `counterexample`: refutation found),
/// 2 refuted at the checked levels, 3 inconclusive, 1 error.
#[derive(Debug, Parser)]
#[command(name = "gmcheck", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Ring: Z, Z/n, Fp, Q, Fp[t], Q[t], F2[x]/(x^3), algebra:<path>.
    #[arg(long, global = true, default_value = "Z")]
    ring: String,
    /// Comma-separated sequence of ring elements.
    #[arg(long, global = true, value_delimiter = ',')]
    seq: Vec<String>,
    /// JSON complex literal for M (default: the ring in degree 0).
    #[arg(long, global = true)]
    m_complex: Option<PathBuf>,
    /// JSON complex literal for N (default: the ring in degree 0).
    #[arg(long, global = true)]
    n_complex: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 6)]
    jmax: usize,
    #[arg(long, global = true, default_value_t = 4)]
    bound: usize,
    #[arg(long, global = true, value_enum, ignore_case = true, default_value_t = ModeArg::T)]
    mode: ModeArg,
    /// Write the report here (atomically) plus `<out>.timing.json`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pro-zero check of the Koszul homology towers.
    Wpr,
    /// Verify one statement.
    Verify {
        #[arg(value_enum)]
        target: TargetArg,
    },
    /// Reproduce the failure of `T⊗P -> Hom(T, T⊗P)` for one element.
    Counterexample {
        #[arg(long)]
        elem: String,
    },
    /// Ess-iso check of the local cohomology or completion tower of M.
    Tower {
        #[arg(value_enum)]
        which: TowerKind,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    #[value(name = "S")]
    S,
    #[value(name = "T")]
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TargetArg {
    Lemma1,
    Lemma2,
    Lemma4,
    Lemma20,
    Cor79,
    Gm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TowerKind {
    Rgamma,
    Llambda,
}

struct Outcome {
    body: String,
    code: u8,
}

/// Exit code for a verification verdict.
pub fn exit_code(v: Verdict) -> u8 {
    match v {
        Verdict::Verified => 0,
        Verdict::RefutedAtLevels => 2,
        Verdict::Inconclusive => 3,
    }
}

/// Exit code for `counterexample`, where finding the refutation is success.
pub fn counterexample_exit_code(v: Verdict) -> u8 {
    match v {
        Verdict::RefutedAtLevels => 0,
        Verdict::Verified => 2,
        Verdict::Inconclusive => 3,
    }
}

fn parse_seq<R: Ring>(r: &R, items: &[String]) -> Result<Vec<R::Elem>> {
    items.iter().map(|s| r.parse_elem(s.trim())).collect()
}

fn load_complex<R: Ring>(r: &R, path: &Option<PathBuf>) -> Result<FreeComplex<R>> {
    match path {
        Some(p) => ComplexLiteral::load(p)?.to_complex(r),
        None => Ok(FreeComplex::unit(r.clone())),
    }
}

fn reports(reports: &[verify::VerificationReport], format: Format) -> Result<String> {
    match format {
        Format::Json => canonical_json(reports),
        Format::Text => Ok(render_text(reports)),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let v: serde_json::Value = serde_json::from_str(&serde_json::to_string(value)?)?;
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn run_verify<R: ExactRing>(ring: R, c: &Common, target: TargetArg) -> Result<Outcome> {
    let seq = parse_seq(&ring, &c.seq)?;
    let m = load_complex(&ring, &c.m_complex)?;
    let n = load_complex(&ring, &c.n_complex)?;
    let mode = match c.mode {
        ModeArg::S => Mode::S,
        ModeArg::T => Mode::T,
    };
    let inst = Instance::new(ring, seq, m, n, c.jmax, c.bound, mode)?;
    let target = match target {
        TargetArg::Lemma1 => Target::Lemma1,
        TargetArg::Lemma2 => Target::Lemma2,
        TargetArg::Lemma4 => Target::Lemma4,
        TargetArg::Lemma20 => Target::Lemma20,
        TargetArg::Cor79 => Target::Cor79,
        TargetArg::Gm => Target::Gm,
    };
    let rep = verify::verify(&inst, target)?;
    Ok(Outcome { code: exit_code(rep.verdict), body: reports(&[rep], c.format)? })
}

fn run_counterexample<R: ExactRing>(ring: R, c: &Common, elem: &str) -> Result<Outcome> {
    let p = ring.parse_elem(elem.trim())?;
    let rep = verify::reproduce_counterexample(ring, p, c.jmax)?;
    let code = counterexample_exit_code(rep.verdict);
    Ok(Outcome { code, body: reports(&[rep], c.format)? })
}

fn run_wpr<R: ExactRing>(ring: R, c: &Common) -> Result<Outcome> {
    let seq = parse_seq(&ring, &c.seq)?;
    let rep = wpr_check(&ring, &seq, c.jmax as u32, c.bound as u32)?;
    let code = if rep.certified() { 0 } else { 3 };
    let body = match c.format {
        Format::Json => json(&rep)?,
        Format::Text => {
            let mut out = String::new();
            for w in &rep.witnesses {
                out.push_str(&format!("wpr\t{}\n", serde_json::to_string(w)?));
            }
            for f in &rep.failures {
                out.push_str(&format!("wpr\tfailure\t{}\n", serde_json::to_string(f)?));
            }
            out.push_str(&format!("wpr\tverdict\t{}\n", rep.verdict));
            out
        }
    };
    Ok(Outcome { code, body })
}

#[derive(Serialize)]
struct TowerOutput {
    tower: &'static str,
    ring: String,
    source: TowerReport,
    target: TowerReport,
    certificate: EssCertificate,
}

fn run_tower<R: ExactRing>(ring: R, c: &Common, which: TowerKind) -> Result<Outcome> {
    let seq = parse_seq(&ring, &c.seq)?;
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let m = Arc::new(load_complex(&ring, &c.m_complex)?);
    let tel = TelescopeTower::new(ring.clone(), seq, c.jmax)?;
    let (name, map) = match which {
        TowerKind::Rgamma => ("rgamma", rgamma_tower(&m, &tel)?),
        TowerKind::Llambda => ("llambda", llambda_tower(&m, &tel)?),
    };
    let certificate = ess_iso(&map, c.bound);
    let code = if certificate.kind == EssKind::EssIso { 0 } else { 3 };
    let out = TowerOutput {
        tower: name,
        ring: ring.name(),
        source: tower_report(&map.source),
        target: tower_report(&map.target),
        certificate,
    };
    let body = match c.format {
        Format::Json => json(&out)?,
        Format::Text => {
            let mut s = String::new();
            for (tag, t) in [("source", &out.source), ("target", &out.target)] {
                for l in &t.levels {
                    let h: Vec<String> = l.cohomology.iter().map(|(i, h)| format!("H^{i}={h}")).collect();
                    s.push_str(&format!("{name}\t{tag}\tj={}\t{}\n", l.j, h.join(" ")));
                }
            }
            let kind = serde_json::to_value(out.certificate.kind)?;
            s.push_str(&format!("{name}\tverdict\t{}\n", kind.as_str().unwrap_or("?")));
            s
        }
    };
    Ok(Outcome { code, body })
}

fn write_atomic(path: &Path, body: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    let spec = RingSpec::parse(&c.ring)?;
    match &cli.command {
        Command::Wpr => with_ring!(spec, r => run_wpr(r, c)),
        Command::Verify { target } => with_ring!(spec, r => run_verify(r, c, *target)),
        Command::Counterexample { elem } => with_ring!(spec, r => run_counterexample(r, c, elem)),
        Command::Tower { which } => with_ring!(spec, r => run_tower(r, c, *which)),
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return 1;
        }
    }
    let start = Instant::now();
    let outcome = run(&cli).and_then(|o| {
        match &cli.common.out {
            Some(path) => {
                write_atomic(path, &o.body)?;
                let timing = serde_json::json!({ "wall_time_ms": start.elapsed().as_millis() as u64 });
                let mut side = path.clone().into_os_string();
                side.push(".timing.json");
                write_atomic(Path::new(&side), &(serde_json::to_string_pretty(&timing)? + "\n"))?;
            }
            None => print!("{}", o.body),
        }
        Ok(o.code)
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
