//! The flip: a perturbation of the multiplicities that swaps the fixed
//! dimensions of two group elements `g1`, `g2` and keeps all others.
//!
//! With `δ_I = +1` when `χ_I(g1) = -1, χ_I(g2) = 1`, `δ_I = -1` when
//! `χ_I(g1) = 1, χ_I(g2) = -1`, and `δ_I = 0` otherwise, the flip of `ρ` is
//! `Σ (q_I + u δ_I) χ_I` where
//! `u = (Σ_{δ_I = -1} q_I - Σ_{δ_I = +1} q_I) / 2^{k-2}`.

use alloc::vec::Vec;
use core::fmt;

use crate::chargroup::{pairing_is_minus, CharMask};
use crate::diagrep::DiagonalRep;
use crate::error::{Error, Result};

/// The ordered pair of distinct nonzero group elements a flip acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlipSpec {
    g1: CharMask,
    g2: CharMask,
}

impl FlipSpec {
    pub fn new(g1: CharMask, g2: CharMask) -> Result<FlipSpec> {
        if g1.rank() != g2.rank() {
            return Err(Error::usage("flip elements have different ranks"));
        }
        if g1.is_trivial() || g2.is_trivial() || g1 == g2 {
            return Err(Error::usage("flip needs two distinct nonzero group elements"));
        }
        Ok(FlipSpec { g1, g2 })
    }

    /// The default pair `(f_1, f_2)`.
    pub fn standard(rank: u32) -> Result<FlipSpec> {
        if rank < 2 {
            return Err(Error::usage("flip needs rank k >= 2"));
        }
        FlipSpec::new(CharMask::new(rank, 1)?, CharMask::new(rank, 2)?)
    }

    /// Parses `"G1,G2"` where each element is written like a character
    /// (`1`, `12`, `123`, …).
    pub fn parse(rank: u32, text: &str) -> Result<FlipSpec> {
        let (a, b) = text
            .split_once(',')
            .ok_or_else(|| Error::parse(alloc::format!("flip pair {text:?} is not of the form G1,G2")))?;
        FlipSpec::new(CharMask::parse(rank, a.trim())?, CharMask::parse(rank, b.trim())?)
    }

    pub fn g1(&self) -> CharMask {
        self.g1
    }

    pub fn g2(&self) -> CharMask {
        self.g2
    }

    pub fn rank(&self) -> u32 {
        self.g1.rank()
    }

    /// `δ_I` for the character with encoding `bits`.
    pub(crate) fn delta(&self, bits: u32) -> i64 {
        let minus1 = pairing_is_minus(bits, self.g1.bits());
        let minus2 = pairing_is_minus(bits, self.g2.bits());
        match (minus1, minus2) {
            (true, false) => 1,
            (false, true) => -1,
            _ => 0,
        }
    }
}

impl fmt::Display for FlipSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(f{}, f{})", self.g1, self.g2)
    }
}

/// Every unordered flip pair of rank `k` (swapping `g1` and `g2` gives the
/// same flip), `g1 < g2` numerically.
pub fn all_specs(rank: u32) -> Result<Vec<FlipSpec>> {
    let mut out = Vec::new();
    for a in 1..(1u32 << rank) {
        for b in a + 1..(1u32 << rank) {
            out.push(FlipSpec::new(CharMask::new(rank, a)?, CharMask::new(rank, b)?)?);
        }
    }
    Ok(out)
}

/// The flip shift `u = num / 2^log_den`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shift {
    num: i64,
    log_den: u32,
}

impl Shift {
    fn reduced(mut num: i64, mut log_den: u32) -> Shift {
        while log_den > 0 && num % 2 == 0 {
            num /= 2;
            log_den -= 1;
        }
        Shift { num, log_den }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        1i64 << self.log_den
    }

    pub fn is_integer(&self) -> bool {
        self.log_den == 0
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.is_integer().then_some(self.num)
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.denominator())
        }
    }
}

/// Why a flip cannot be carried out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inapplicable {
    NonIntegerShift(Shift),
    NegativeMultiplicity { character: CharMask, value: i64, shift: Shift },
}

impl fmt::Display for Inapplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inapplicable::NonIntegerShift(u) => write!(f, "inapplicable: u = {u}"),
            Inapplicable::NegativeMultiplicity { character, value, shift } => write!(
                f,
                "inapplicable: u = {shift} makes the multiplicity of χ{character} equal {value}"
            ),
        }
    }
}

/// Result of a flip attempt: the flipped representation or the reason it
/// does not exist.
pub type FlipOutcome = core::result::Result<DiagonalRep, Inapplicable>;

fn check_rank(rep: &DiagonalRep, spec: &FlipSpec) -> Result<()> {
    if rep.rank() != spec.rank() {
        return Err(Error::usage(alloc::format!(
            "flip pair of rank {} used with a representation of rank {}",
            spec.rank(),
            rep.rank()
        )));
    }
    Ok(())
}

/// The shift `u` of the flip of `rep` along `spec`.
pub fn flip_shift(rep: &DiagonalRep, spec: &FlipSpec) -> Result<Shift> {
    check_rank(rep, spec)?;
    let mut diff = 0i64;
    for (bits, &q) in rep.multiplicities().iter().enumerate() {
        diff -= spec.delta(bits as u32) * q as i64;
    }
    Ok(Shift::reduced(diff, rep.rank() - 2))
}

/// Applies the flip when `u` is an integer and no multiplicity goes negative.
pub fn apply_flip(rep: &DiagonalRep, spec: &FlipSpec) -> Result<FlipOutcome> {
    let shift = flip_shift(rep, spec)?;
    let Some(u) = shift.as_integer() else {
        return Ok(Err(Inapplicable::NonIntegerShift(shift)));
    };
    let mut mult = Vec::with_capacity(rep.multiplicities().len());
    for (bits, &q) in rep.multiplicities().iter().enumerate() {
        let value = q as i64 + u * spec.delta(bits as u32);
        if value < 0 {
            return Ok(Err(Inapplicable::NegativeMultiplicity {
                character: CharMask::new(rep.rank(), bits as u32)?,
                value,
                shift,
            }));
        }
        mult.push(value as u32);
    }
    Ok(Ok(DiagonalRep::new(rep.rank(), mult)?))
}

/// Almost-conjugacy of two diagonal representations: equal patterns.
pub fn verify_almost_conjugate(a: &DiagonalRep, b: &DiagonalRep) -> Result<bool> {
    if a.rank() != b.rank() || a.dim() != b.dim() {
        return Err(Error::usage(alloc::format!(
            "cannot compare representations with (k, n) = ({}, {}) and ({}, {})",
            a.rank(),
            a.dim(),
            b.rank(),
            b.dim()
        )));
    }
    Ok(a.pattern() == b.pattern())
}
