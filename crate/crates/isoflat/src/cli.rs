//! Command-line surface.
//!
//! Every command renders into a buffer; nothing reaches stdout or the file
//! system until the whole command has succeeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use isoflat_core::bieberbach::{construct_main_pair, find_translations, is_sunada_isospectral, TranslationSearch};
use isoflat_core::cohomology::{kahler_obstruction, lefschetz_multiplicities};
use isoflat_core::fixtures::construct_family24;
use isoflat_core::flip::{apply_flip, flip_shift, verify_almost_conjugate};
use isoflat_core::search::{is_flip_connected, TableSpec, DEFAULT_BUDGET};
use isoflat_core::{
    BettiTable, BieberbachGroup, BlockOrder, DiagonalRep, FlipSpec, SearchConfig,
};

use crate::bgf;
use crate::output::{Format, Report};
use crate::parallel::{self, WORKERS_ENV};

#[derive(Debug, Parser)]
#[command(name = "isoflat", version, about = "Isospectral flat manifolds of diagonal type")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct RepArgs {
    /// rank of the holonomy group Z_2^k
    #[arg(long)]
    pub k: u32,
    /// multiplicities in bracket order, e.g. 3,1,1,1,0,1,0
    #[arg(long, allow_hyphen_values = false)]
    pub rep: String,
    /// the first entry of --rep is the multiplicity of the trivial character
    #[arg(long)]
    pub with_q0: bool,
}

impl RepArgs {
    fn parse(&self) -> Result<DiagonalRep> {
        Ok(DiagonalRep::parse_display(self.k, &self.rep, self.with_q0)?)
    }
}

#[derive(Debug, Args)]
pub struct WorkerArgs {
    /// worker threads (default: $ISOFLAT_WORKERS or the number of CPUs)
    #[arg(long, env = WORKERS_ENV)]
    pub workers: Option<usize>,
}

impl WorkerArgs {
    fn get(&self) -> Result<usize> {
        match self.workers {
            Some(0) => bail!("--workers must be at least 1"),
            Some(w) => Ok(w),
            None => Ok(parallel::default_workers()),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List families of almost-conjugate representations
    Enumerate {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long, default_value_t = 2)]
        min_family_size: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[command(flatten)]
        workers: WorkerArgs,
        /// keep representations that are not faithful
        #[arg(long)]
        allow_unfaithful: bool,
        /// keep representations containing -Id
        #[arg(long)]
        allow_minus_id: bool,
        /// allow a nonzero multiplicity of the trivial character
        #[arg(long)]
        allow_q0: bool,
        /// maximal number of compositions per dimension
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Invariants of one representation
    Analyze {
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Apply a flip to a representation
    Flip {
        #[command(flatten)]
        rep: RepArgs,
        /// flip pair G1,G2 as index words, e.g. 12,3 (default: the standard pair)
        #[arg(long)]
        pair: Option<String>,
    },
    /// Write the pair of the main construction as two BGF files
    BuildMain {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        /// writes PREFIX-gamma.bgf and PREFIX-gammaprime.bgf
        #[arg(long)]
        out: PathBuf,
    },
    /// Write member j of the 24-dimensional family as a BGF file
    #[command(name = "build-24")]
    Build24 {
        #[arg(long)]
        j: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search translations making a representation torsion-free
    FindTranslations {
        #[command(flatten)]
        rep: RepArgs,
        /// allow any number of half entries per generator and block
        #[arg(long)]
        wide_search: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check two BGF files for torsion-freeness and isospectrality
    Verify {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Reproduce one of the reference tables
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        id: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[command(flatten)]
        workers: WorkerArgs,
    },
    /// Compare primitive-form counts of two representations
    CompareRings {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        rep_a: String,
        #[arg(long)]
        rep_b: String,
        #[arg(long)]
        with_q0: bool,
    },
}

/// Result of a successful command: stdout text and files to write.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub files: Vec<(PathBuf, String)>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(values: &[T], sep: &str) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn bracket(rep: &DiagonalRep) -> String {
    format!("[{}]", join(&rep.to_display(), ","))
}

fn sigma_verdict(a: u64, b: u64) -> String {
    if a == b {
        format!("indistinguishable by P-counts (ΣP = {a})")
    } else {
        format!("not isomorphic (ΣP differs: {a} vs {b})")
    }
}

pub fn execute(command: Command) -> Result<Outcome> {
    let mut out = Outcome::default();
    let s = &mut out.stdout;
    match command {
        Command::Enumerate {
            k,
            n,
            n_max,
            min_family_size,
            format,
            workers,
            allow_unfaithful,
            allow_minus_id,
            allow_q0,
            budget,
        } => {
            let config = SearchConfig {
                require_faithful: !allow_unfaithful,
                forbid_minus_id: !allow_minus_id,
                require_q0_zero: !allow_q0,
                min_family_size,
                workers: workers.get()?,
                budget,
                ..SearchConfig::with_range(k, n, n_max.unwrap_or(n))
            };
            let blocks = parallel::enumerate(&config)?;
            s.push_str(&Report { config, blocks }.render(format)?);
        }
        Command::Tables { id, format, workers } => {
            let spec = TableSpec::get(id)?;
            let config = SearchConfig { workers: workers.get()?, ..spec.config() };
            let blocks = parallel::enumerate(&config)?;
            let report = Report { config, blocks };
            s.push_str(&report.render(format)?);
            if format == Format::Table {
                let mut single = Vec::new();
                for (n, families) in &report.blocks {
                    for (i, f) in families.iter().enumerate() {
                        if !is_flip_connected(f)? {
                            single.push(crate::output::family_label(spec.rank, *n, i + 1));
                        }
                    }
                }
                let _ = writeln!(s);
                if single.is_empty() {
                    let _ = writeln!(s, "every family is connected by single flips");
                } else {
                    let _ = writeln!(s, "not connected by single flips: {}", single.join(" "));
                }
            }
        }
        Command::Analyze { rep } => analyze(s, &rep.parse()?)?,
        Command::Flip { rep, pair } => {
            let rep = rep.parse()?;
            let spec = match pair {
                Some(text) => FlipSpec::parse(rep.rank(), &text)?,
                None => FlipSpec::standard(rep.rank())?,
            };
            let _ = writeln!(s, "pair {spec}");
            match apply_flip(&rep, &spec)? {
                Err(reason) => {
                    let _ = writeln!(s, "{reason}");
                }
                Ok(flipped) => {
                    let _ = writeln!(s, "u = {}", flip_shift(&rep, &spec)?);
                    let _ = writeln!(s, "flipped {}", bracket(&flipped));
                    let _ = writeln!(s, "canonical {}", bracket(&flipped.canonical_form()?));
                    let _ = writeln!(s, "almost conjugate: {}", yes_no(verify_almost_conjugate(&rep, &flipped)?));
                    let _ = writeln!(s, "equivalent: {}", yes_no(rep.are_equivalent(&flipped)));
                }
            }
        }
        Command::BuildMain { k, n, out: prefix } => {
            let (g, gp) = construct_main_pair(k, n)?;
            let name = |suffix: &str| {
                let mut os = prefix.clone().into_os_string();
                os.push(suffix);
                PathBuf::from(os)
            };
            for (path, group) in [(name("-gamma.bgf"), &g), (name("-gammaprime.bgf"), &gp)] {
                let _ = writeln!(s, "wrote {} ({})", path.display(), bracket(&group.rep()));
                out.files.push((path, bgf::write(group)));
            }
        }
        Command::Build24 { j, out: path } => {
            let g = construct_family24(j)?;
            let _ = writeln!(s, "wrote {} ({})", path.display(), bracket(&g.rep()));
            out.files.push((path, bgf::write(&g)));
        }
        Command::FindTranslations { rep, wide_search, out: path } => {
            let rep = rep.parse()?;
            let mode = if wide_search { TranslationSearch::Wide } else { TranslationSearch::Restricted };
            match find_translations(&rep, mode)? {
                Some(g) => {
                    let _ = writeln!(s, "torsion-free translations found");
                    s.push_str(&g.render_columns());
                    let _ = writeln!(s, "wrote {}", path.display());
                    out.files.push((path, bgf::write(&g)));
                }
                None => {
                    let scope = if wide_search { "" } else { " within the restricted search space" };
                    let _ = writeln!(s, "no torsion-free translations exist{scope}");
                }
            }
        }
        Command::Verify { a, b } => verify(s, &a, &b)?,
        Command::CompareRings { k, rep_a, rep_b, with_q0 } => {
            let a = DiagonalRep::parse_display(k, &rep_a, with_q0).context("--rep-a")?;
            let b = DiagonalRep::parse_display(k, &rep_b, with_q0).context("--rep-b")?;
            compare_rings(s, &a, &b)?;
        }
    }
    Ok(out)
}

fn analyze(s: &mut String, rep: &DiagonalRep) -> Result<()> {
    let k = rep.rank();
    let n = rep.dim();
    let table = BettiTable::of(rep);
    let _ = writeln!(s, "rep {} (k = {k}, n = {n}, q0 = {})", bracket(rep), rep.q0());
    let _ = writeln!(s, "terms {}", rep.terms());
    let _ = writeln!(s, "canonical {}", bracket(&rep.canonical_form()?));
    let dims = rep.fixed_dims();
    let fixed: Vec<String> = BlockOrder::Graded
        .characters(k)?
        .into_iter()
        .filter(|f| !f.is_trivial())
        .map(|f| format!("{f}:{}", dims[f.bits() as usize]))
        .collect();
    let _ = writeln!(s, "n_B {}", fixed.join(" "));
    let _ = writeln!(s, "pattern {}", rep.pattern());
    let _ = writeln!(s, "faithful {}", yes_no(rep.is_faithful()));
    let _ = writeln!(s, "contains -Id {}", yes_no(rep.contains_minus_identity()));
    let _ = writeln!(s, "orientable {}", yes_no(rep.is_orientable()));
    let _ = writeln!(s, "kahler class {}", rep.kahler_class());
    if n.is_multiple_of(2) {
        let _ = writeln!(s, "kahler obstruction {}", yes_no(kahler_obstruction(rep)?));
        let lef = lefschetz_multiplicities(&table.betti, n)?;
        let mults: Vec<String> = lef.multiplicities.iter().rev().map(|(d, m)| format!("{d}:{m}")).collect();
        let _ = writeln!(s, "lefschetz {}", mults.join(" "));
    }
    let _ = writeln!(s, "betti {}", join(&table.betti, " "));
    let _ = writeln!(s, "prim {}", join(&table.prim, " "));
    let _ = writeln!(s, "minimal generators {}", table.prim.iter().sum::<u64>());
    Ok(())
}

fn compare_rings(s: &mut String, a: &DiagonalRep, b: &DiagonalRep) -> Result<()> {
    if (a.rank(), a.dim()) != (b.rank(), b.dim()) {
        bail!("representations differ in rank or dimension");
    }
    let ta = BettiTable::of(a);
    let tb = BettiTable::of(b);
    let _ = writeln!(s, "a {}", bracket(a));
    let _ = writeln!(s, "b {}", bracket(b));
    let _ = writeln!(s, "{:>3}  {:>6}  {:>6}  {:>6}  {:>6}", "p", "P(a)", "P(b)", "β(a)", "β(b)");
    for p in 0..ta.betti.len() {
        let _ = writeln!(
            s,
            "{p:>3}  {:>6}  {:>6}  {:>6}  {:>6}",
            ta.prim[p], tb.prim[p], ta.betti[p], tb.betti[p]
        );
    }
    let (sa, sb) = (ta.prim.iter().sum::<u64>(), tb.prim.iter().sum::<u64>());
    let _ = writeln!(s, "verdict: {}", sigma_verdict(sa, sb));
    Ok(())
}

fn describe_group(s: &mut String, name: &str, g: &BieberbachGroup) {
    let _ = writeln!(s, "{name}: {} (k = {}, n = {})", bracket(&g.rep()), g.rank(), g.dim());
    match g.torsion_witness() {
        None => {
            let _ = writeln!(s, "  torsion-free: yes");
        }
        Some(f) => {
            let _ = writeln!(s, "  torsion-free: no (element f{f} has a fixed point)");
        }
    }
    let _ = writeln!(s, "  sunada {}", g.sunada_table());
}

fn verify(s: &mut String, a: &Path, b: &Path) -> Result<()> {
    let ga = bgf::read(a)?;
    let gb = bgf::read(b)?;
    describe_group(s, "a", &ga);
    describe_group(s, "b", &gb);
    let iso = is_sunada_isospectral(&ga, &gb)?;
    let both_free = ga.is_torsion_free() && gb.is_torsion_free();
    let _ = writeln!(s, "sunada tables equal: {}", yes_no(iso));
    let _ = writeln!(s, "isospectral: {}", yes_no(iso && both_free));
    let pa: u64 = BettiTable::of(&ga.rep()).prim.iter().sum();
    let pb: u64 = BettiTable::of(&gb.rep()).prim.iter().sum();
    let _ = writeln!(s, "rings: {}", sigma_verdict(pa, pb));
    Ok(())
}

/// Parses `args`, runs the command and writes all output; returns the exit
/// status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("error: invalid arguments"));
            return 2;
        }
    };
    match execute(cli.command).and_then(commit) {
        Ok(stdout) => {
            print!("{stdout}");
            0
        }
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("error: {msg}");
            1
        }
    }
}

/// Writes the files of `outcome` through temporaries so that a failure
/// leaves no partial file behind.
fn commit(outcome: Outcome) -> Result<String> {
    let mut staged = Vec::new();
    for (path, contents) in &outcome.files {
        let mut tmp = path.clone().into_os_string();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        if let Err(e) = std::fs::write(&tmp, contents) {
            for (t, _) in &staged {
                let _ = std::fs::remove_file(t);
            }
            return Err(e).with_context(|| format!("cannot write {}", path.display()));
        }
        staged.push((tmp, path));
    }
    for (tmp, path) in staged {
        std::fs::rename(&tmp, path).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(outcome.stdout)
}
