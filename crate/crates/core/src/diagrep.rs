//! Diagonal integral representations of `Z_2^k`.
//!
//! A representation `ρ = Σ_I q_I χ_I` is stored as its multiplicity vector,
//! indexed by the raw bit encoding of the characters ("numeric order").
//! Text forms use the tables' bracket order `[q_1, q_2, q_3, q_12, …]`
//! (see [`graded_order`]).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chargroup::{
    self, graded_order, lexicographic_order, pairing_is_minus, span_rank, Automorphism, CharMask,
};
use crate::error::{Error, Result};
use crate::{MAX_DIM, MAX_RANK};

/// `ρ = Σ_I q_I χ_I` over all `2^k` characters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalRep {
    rank: u32,
    mult: Vec<u32>,
    dim: u32,
}

impl DiagonalRep {
    /// Builds a representation from multiplicities in numeric character order
    /// (`mult[bits]` is `q` of the character with that encoding).
    pub fn new(rank: u32, mult: Vec<u32>) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::usage(alloc::format!("rank k = {rank} outside 1..={MAX_RANK}")));
        }
        if mult.len() != 1usize << rank {
            return Err(Error::usage(alloc::format!(
                "expected {} multiplicities for k = {rank}, got {}",
                1usize << rank,
                mult.len()
            )));
        }
        let dim: u64 = mult.iter().map(|&q| q as u64).sum();
        if dim == 0 {
            return Err(Error::usage("a representation needs dimension n >= 1"));
        }
        if dim > MAX_DIM as u64 {
            return Err(Error::usage(alloc::format!(
                "dimension n = {dim} exceeds the supported maximum {MAX_DIM}"
            )));
        }
        Ok(DiagonalRep { rank, mult, dim: dim as u32 })
    }

    /// Builds a representation from the bracket form `[q_1, …, q_{1..k}]`
    /// (nonzero characters in graded order) plus `q_∅`.
    pub fn from_display(rank: u32, display: &[u32], q0: u32) -> Result<Self> {
        let order = graded_order(rank)?;
        if display.len() + 1 != order.len() {
            return Err(Error::usage(alloc::format!(
                "expected {} entries for k = {rank}, got {}",
                order.len() - 1,
                display.len()
            )));
        }
        let mut mult = vec![0u32; order.len()];
        mult[0] = q0;
        for (chi, &q) in order[1..].iter().zip(display) {
            mult[chi.bits() as usize] = q;
        }
        DiagonalRep::new(rank, mult)
    }

    /// Builds `Σ q χ` from explicit terms; repeated characters add up.
    pub fn from_terms(rank: u32, terms: &[(CharMask, u32)]) -> Result<Self> {
        let mut mult = vec![0u32; 1usize.checked_shl(rank).unwrap_or(0).max(1)];
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::usage(alloc::format!("rank k = {rank} outside 1..={MAX_RANK}")));
        }
        for &(chi, q) in terms {
            if chi.rank() != rank {
                return Err(Error::usage("character rank differs from representation rank"));
            }
            mult[chi.bits() as usize] += q;
        }
        DiagonalRep::new(rank, mult)
    }

    /// Parses the comma separated bracket form, e.g. `"3,1,1,1,0,1,0"`.
    /// With `with_q0`, the first entry is `q_∅`; otherwise `q_∅ = 0`.
    pub fn parse_display(rank: u32, text: &str, with_q0: bool) -> Result<Self> {
        let body = text.trim().trim_start_matches('[').trim_end_matches(']');
        let mut values = Vec::new();
        for part in body.split(',') {
            let part = part.trim();
            let v = part
                .parse::<u32>()
                .map_err(|_| Error::parse(alloc::format!("malformed multiplicity {part:?}")))?;
            values.push(v);
        }
        let expected = (1usize << rank.min(MAX_RANK)) - 1 + usize::from(with_q0);
        if values.len() != expected {
            return Err(Error::parse(alloc::format!(
                "expected {expected} comma separated multiplicities for k = {rank}, got {}",
                values.len()
            )));
        }
        if with_q0 {
            DiagonalRep::from_display(rank, &values[1..], values[0])
        } else {
            DiagonalRep::from_display(rank, &values, 0)
        }
    }

    #[inline]
    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// The dimension `n = Σ q_I`.
    #[inline]
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Multiplicities in numeric character order.
    #[inline]
    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    pub fn multiplicity(&self, chi: CharMask) -> u32 {
        self.mult[chi.bits() as usize]
    }

    /// `q_∅`, the dimension of the fixed space of the whole group.
    pub fn q0(&self) -> u32 {
        self.mult[0]
    }

    /// Multiplicities of the nonzero characters in bracket (graded) order.
    pub fn to_display(&self) -> Vec<u32> {
        graded_order(self.rank)
            .expect("rank validated")
            .into_iter()
            .skip(1)
            .map(|chi| self.multiplicity(chi))
            .collect()
    }

    /// Characters with positive multiplicity, numeric order.
    pub fn support(&self) -> Vec<CharMask> {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &q)| q > 0)
            .map(|(bits, _)| CharMask::new(self.rank, bits as u32).expect("in range"))
            .collect()
    }

    pub(crate) fn support_bits(&self) -> impl Iterator<Item = u32> + '_ {
        self.mult.iter().enumerate().filter(|(_, &q)| q > 0).map(|(b, _)| b as u32)
    }

    fn check_element(&self, f: CharMask) -> Result<()> {
        if f.rank() != self.rank {
            return Err(Error::usage(alloc::format!(
                "group element of rank {} used with a representation of rank {}",
                f.rank(),
                self.rank
            )));
        }
        Ok(())
    }

    /// `n_B` for `B = ρ(f)`: the number of coordinates fixed by `f`.
    pub fn fixed_dim(&self, f: CharMask) -> Result<u32> {
        self.check_element(f)?;
        Ok(self.fixed_dim_bits(f.bits()))
    }

    pub(crate) fn fixed_dim_bits(&self, f: u32) -> u32 {
        self.mult
            .iter()
            .enumerate()
            .filter(|(j, _)| !pairing_is_minus(*j as u32, f))
            .map(|(_, &q)| q)
            .sum()
    }

    /// `n_B` for every group element, indexed by the element's encoding.
    ///
    /// Uses the Walsh–Hadamard transform: `2 n_B(f) = n + Σ_J q_J χ_J(f)`.
    pub fn fixed_dims(&self) -> Vec<u32> {
        let mut s: Vec<i64> = self.mult.iter().map(|&q| q as i64).collect();
        let len = s.len();
        let mut h = 1;
        while h < len {
            for block in (0..len).step_by(2 * h) {
                for i in block..block + h {
                    let (a, b) = (s[i], s[i + h]);
                    s[i] = a + b;
                    s[i + h] = a - b;
                }
            }
            h *= 2;
        }
        s.into_iter()
            .map(|v| ((self.dim as i64 + v) / 2) as u32)
            .collect()
    }

    /// The histogram `(c_0, …, c_n)` of fixed dimensions over the group.
    pub fn pattern(&self) -> Pattern {
        Pattern::from_fixed_dims(self.dim, &self.fixed_dims())
    }

    /// Whether the supported characters span the full dual group, i.e. `ρ`
    /// is injective.
    pub fn is_faithful(&self) -> bool {
        span_rank(self.support_bits()) == self.rank as usize
    }

    /// Whether `-Id_n` lies in the image, i.e. some element fixes nothing.
    pub fn contains_minus_identity(&self) -> bool {
        self.fixed_dims().iter().skip(1).any(|&d| d == 0)
    }

    /// `det ρ(f_j) = 1` for each generator: `Σ_{I ∋ j} q_I` even for all `j`.
    pub fn is_orientable(&self) -> bool {
        (0..self.rank).all(|j| {
            let total: u32 = self
                .mult
                .iter()
                .enumerate()
                .filter(|(bits, _)| bits >> j & 1 == 1)
                .map(|(_, &q)| q)
                .sum();
            total.is_multiple_of(2)
        })
    }

    /// Sufficient conditions for an invariant Kähler / hyperkähler structure.
    /// `None` only means these conditions fail; see
    /// [`crate::cohomology::kahler_obstruction`] for the actual certificate.
    pub fn kahler_class(&self) -> KahlerClass {
        if self.mult.iter().all(|q| q % 4 == 0) {
            KahlerClass::Hyperkahler
        } else if self.mult.iter().all(|q| q % 2 == 0) {
            KahlerClass::Kahler
        } else {
            KahlerClass::None
        }
    }

    /// The image `φ·ρ` with `q'[φ(I)] = q[I]`.
    pub fn transform(&self, phi: &Automorphism) -> Result<DiagonalRep> {
        if phi.rank() != self.rank {
            return Err(Error::usage("automorphism rank differs from representation rank"));
        }
        let table = phi.image_table();
        let mut mult = vec![0u32; self.mult.len()];
        for (i, &q) in self.mult.iter().enumerate() {
            mult[table[i] as usize] = q;
        }
        Ok(DiagonalRep { rank: self.rank, mult, dim: self.dim })
    }

    /// Cheap equivalence invariant: sorted multiplicities and the pattern.
    pub fn prekey(&self) -> (Vec<u32>, Pattern) {
        let mut sorted = self.mult[1..].to_vec();
        sorted.sort_unstable();
        sorted.insert(0, self.mult[0]);
        (sorted, self.pattern())
    }

    /// The lexicographically largest bracket vector over the `GL(k, 2)` orbit,
    /// returned as a representation. Two representations are equivalent iff
    /// their canonical forms agree.
    pub fn canonical_form(&self) -> Result<DiagonalRep> {
        let order = graded_order(self.rank)?;
        let mut best: Option<Vec<u32>> = None;
        let mut best_mult = self.mult.clone();
        let mut image = vec![0u32; self.mult.len()];
        let mut display = vec![0u32; order.len() - 1];
        for phi in chargroup::automorphisms(self.rank)? {
            let table = phi.image_table();
            for (i, &q) in self.mult.iter().enumerate() {
                image[table[i] as usize] = q;
            }
            for (slot, chi) in display.iter_mut().zip(&order[1..]) {
                *slot = image[chi.bits() as usize];
            }
            if best.as_ref().is_none_or(|b| display > *b) {
                best = Some(display.clone());
                best_mult.copy_from_slice(&image);
            }
        }
        Ok(DiagonalRep { rank: self.rank, mult: best_mult, dim: self.dim })
    }

    /// Searches for `φ` with `q_other[φ(I)] = q_self[I]` by backtracking over
    /// the images of the basis characters. Works for every rank.
    pub fn find_equivalence(&self, other: &DiagonalRep) -> Option<Automorphism> {
        if self.rank != other.rank || self.dim != other.dim || self.mult[0] != other.mult[0] {
            return None;
        }
        let mut a_sorted = self.mult.clone();
        let mut b_sorted = other.mult.clone();
        a_sorted.sort_unstable();
        b_sorted.sort_unstable();
        if a_sorted != b_sorted {
            return None;
        }
        let k = self.rank as usize;
        let size = 1usize << k;
        let mut table = vec![0u32; size];
        let mut used = vec![false; size];
        used[0] = true;
        let mut cols = vec![0u32; k];
        if self.extend_equivalence(other, 0, &mut table, &mut used, &mut cols) {
            Some(Automorphism::from_cols_unchecked(cols))
        } else {
            None
        }
    }

    fn extend_equivalence(
        &self,
        other: &DiagonalRep,
        depth: usize,
        table: &mut [u32],
        used: &mut [bool],
        cols: &mut [u32],
    ) -> bool {
        let k = self.rank as usize;
        if depth == k {
            return true;
        }
        let low = 1usize << depth;
        let want = self.mult[low];
        for v in 1..(1u32 << k) {
            if used[v as usize] || other.mult[v as usize] != want {
                continue;
            }
            // images of the new coset I = low + J, J < low
            let mut ok = true;
            for j in 0..low {
                let img = table[j] ^ v;
                if other.mult[img as usize] != self.mult[low + j] {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for j in 0..low {
                let img = table[j] ^ v;
                table[low + j] = img;
                used[img as usize] = true;
            }
            cols[depth] = v;
            if self.extend_equivalence(other, depth + 1, table, used, cols) {
                return true;
            }
            for j in 0..low {
                used[table[low + j] as usize] = false;
            }
        }
        false
    }

    /// Whether some automorphism of `Z_2^k` carries `self` onto `other`.
    pub fn are_equivalent(&self, other: &DiagonalRep) -> bool {
        self.find_equivalence(other).is_some()
    }

    /// `Σ q χ` notation, e.g. `2χ1 + χ2 + χ12`.
    pub fn terms(&self) -> String {
        let mut out = String::new();
        for chi in graded_order(self.rank).expect("rank validated") {
            let q = self.multiplicity(chi);
            if q == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            if q != 1 {
                out.push_str(&alloc::format!("{q}"));
            }
            out.push_str(&alloc::format!("χ{chi}"));
        }
        out
    }
}

/// Free function form of [`DiagonalRep::are_equivalent`].
pub fn are_equivalent(a: &DiagonalRep, b: &DiagonalRep) -> bool {
    a.are_equivalent(b)
}

impl fmt::Debug for DiagonalRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagonalRep(k={}, q0={}, {})", self.rank, self.mult[0], self)
    }
}

impl fmt::Display for DiagonalRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, q) in self.to_display().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("]")
    }
}

/// Outcome of the multiplicity-parity tests for invariant complex structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KahlerClass {
    None,
    Kahler,
    Hyperkahler,
}

impl fmt::Display for KahlerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KahlerClass::None => "none",
            KahlerClass::Kahler => "kahler",
            KahlerClass::Hyperkahler => "hyperkahler",
        })
    }
}

/// `(c_0, …, c_n)` with `c_s = #{B ∈ F : n_B = s}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    counts: Vec<u32>,
}

impl Pattern {
    pub(crate) fn from_fixed_dims(dim: u32, dims: &[u32]) -> Pattern {
        let mut counts = vec![0u32; dim as usize + 1];
        for &d in dims {
            counts[d as usize] += 1;
        }
        Pattern { counts }
    }

    /// Wraps raw counts; checks `Σ c_s = 2^k` and `c_n >= 1`.
    pub fn from_counts(rank: u32, counts: Vec<u32>) -> Result<Pattern> {
        let total: u64 = counts.iter().map(|&c| c as u64).sum();
        if counts.is_empty() || total != 1u64 << rank || *counts.last().unwrap() == 0 {
            return Err(Error::usage("pattern counts must sum to 2^k with c_n >= 1"));
        }
        Ok(Pattern { counts })
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn dim(&self) -> u32 {
        (self.counts.len() - 1) as u32
    }

    /// `(s, c_s)` for the nonzero entries.
    pub fn nonzero(&self) -> Vec<(u32, u32)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(s, &c)| (s as u32, c))
            .collect()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.nonzero().iter().map(|(s, c)| alloc::format!("c_{s}={c}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Order in which character blocks are laid out along the coordinates
/// `1..n`. Both orders put `χ_∅` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BlockOrder {
    /// `∅, 1, 2, 3, 12, 13, 23, 123` (the bracket order of the tables).
    #[default]
    Graded,
    /// `∅, 1, 12, 123, 13, 2, 23, 3` (index words compared lexicographically).
    Lexicographic,
}

impl BlockOrder {
    pub fn characters(self, rank: u32) -> Result<Vec<CharMask>> {
        match self {
            BlockOrder::Graded => graded_order(rank),
            BlockOrder::Lexicographic => lexicographic_order(rank),
        }
    }
}

/// Assignment of a character to each coordinate `e_1, …, e_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Layout {
    rank: u32,
    coords: Vec<CharMask>,
}

impl Layout {
    /// Lays out `q_I` consecutive coordinates for each `χ_I`, blocks in `order`.
    pub fn from_rep(rep: &DiagonalRep, order: BlockOrder) -> Layout {
        let mut coords = Vec::with_capacity(rep.dim() as usize);
        for chi in order.characters(rep.rank()).expect("rank validated") {
            for _ in 0..rep.multiplicity(chi) {
                coords.push(chi);
            }
        }
        Layout { rank: rep.rank(), coords }
    }

    pub fn from_coordinates(rank: u32, coords: Vec<CharMask>) -> Result<Layout> {
        if coords.is_empty() || coords.len() > MAX_DIM as usize {
            return Err(Error::usage(alloc::format!(
                "layout needs between 1 and {MAX_DIM} coordinates"
            )));
        }
        if coords.iter().any(|c| c.rank() != rank) {
            return Err(Error::usage("coordinate character of the wrong rank"));
        }
        Ok(Layout { rank, coords })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn dim(&self) -> u32 {
        self.coords.len() as u32
    }

    pub fn coordinates(&self) -> &[CharMask] {
        &self.coords
    }

    /// Character of coordinate `j` (0-based).
    pub fn character(&self, j: usize) -> CharMask {
        self.coords[j]
    }

    /// Multiplicity vector obtained by counting coordinates per character.
    pub fn rep(&self) -> DiagonalRep {
        let mut mult = vec![0u32; 1usize << self.rank];
        for c in &self.coords {
            mult[c.bits() as usize] += 1;
        }
        DiagonalRep::new(self.rank, mult).expect("layout is nonempty and bounded")
    }

    /// 0-based index of the first coordinate carrying `chi`.
    pub fn first_coordinate(&self, chi: CharMask) -> Option<usize> {
        self.coords.iter().position(|&c| c == chi)
    }

    /// 0-based indices of all coordinates carrying `chi`.
    pub fn block(&self, chi: CharMask) -> Vec<usize> {
        (0..self.coords.len()).filter(|&j| self.coords[j] == chi).collect()
    }

    /// Bitmask of coordinates fixed by the group element with encoding `f`.
    pub(crate) fn fixed_mask(&self, f: u32) -> u64 {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !pairing_is_minus(c.bits(), f))
            .fold(0u64, |m, (j, _)| m | 1 << j)
    }

    /// Raw character encodings per coordinate.
    pub(crate) fn coordinate_bits(&self) -> Vec<u32> {
        self.coords.iter().map(|c| c.bits()).collect()
    }
}
