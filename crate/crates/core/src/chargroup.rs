//! Characters of `Z_2^k` encoded as `k`-bit masks.
//!
//! Bit `i - 1` of a mask is set when `i` belongs to the index subset
//! `I ⊂ {1..k}`. The same encoding is used for group elements `f_I`, so a
//! [`CharMask`] plays both roles; the pairing between them is
//! [`evaluate`]. Products of characters are symmetric differences, i.e. XOR.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::{MAX_ORBIT_RANK, MAX_RANK};

/// A character `χ_I` (or group element `f_I`) of `Z_2^k`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharMask {
    bits: u32,
    rank: u8,
}

impl CharMask {
    /// Builds a mask, checking `1 <= k <= 16` and `bits < 2^k`.
    pub fn new(rank: u32, bits: u32) -> Result<Self> {
        check_rank(rank)?;
        if bits >> rank != 0 {
            return Err(Error::usage(alloc::format!(
                "mask {bits:#b} does not fit in rank {rank}"
            )));
        }
        Ok(CharMask { bits, rank: rank as u8 })
    }

    /// The trivial character `χ_∅` (equivalently the identity element).
    pub fn trivial(rank: u32) -> Result<Self> {
        CharMask::new(rank, 0)
    }

    /// Builds a mask from 1-based indices, e.g. `[2, 3]` for `χ_23`.
    pub fn from_indices(rank: u32, indices: &[u32]) -> Result<Self> {
        let mut bits = 0u32;
        for &i in indices {
            if i == 0 || i > rank {
                return Err(Error::usage(alloc::format!(
                    "index {i} outside 1..={rank}"
                )));
            }
            bits ^= 1 << (i - 1);
        }
        CharMask::new(rank, bits)
    }

    /// Parses the compact index notation: `"0"` for `∅`, otherwise the digits
    /// of the index set (`"123"`), or comma separated indices when `k > 9`.
    pub fn parse(rank: u32, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s == "∅" {
            return CharMask::trivial(rank);
        }
        let mut indices = Vec::new();
        if s.contains(',') {
            for part in s.split(',') {
                let i = part
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(alloc::format!("bad index {part:?}")))?;
                indices.push(i);
            }
        } else {
            for ch in s.chars() {
                let i = ch
                    .to_digit(10)
                    .ok_or_else(|| Error::parse(alloc::format!("bad index {ch:?} in {s:?}")))?;
                indices.push(i);
            }
        }
        let mut seen = 0u32;
        for &i in &indices {
            if (1..=32).contains(&i) && seen & (1 << (i - 1)) != 0 {
                return Err(Error::parse(alloc::format!("repeated index {i} in {s:?}")));
            }
            if (1..=32).contains(&i) {
                seen |= 1 << (i - 1);
            }
        }
        CharMask::from_indices(rank, &indices)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn rank(self) -> u32 {
        self.rank as u32
    }

    #[inline]
    pub fn is_trivial(self) -> bool {
        self.bits == 0
    }

    /// Size of the index subset.
    #[inline]
    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Sorted 1-based indices of the subset.
    pub fn indices(self) -> Vec<u32> {
        (0..self.rank as u32)
            .filter(|i| self.bits >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    /// Whether `i` (1-based) belongs to the subset.
    #[inline]
    pub fn contains(self, i: u32) -> bool {
        i >= 1 && i <= self.rank as u32 && self.bits >> (i - 1) & 1 == 1
    }
}

impl fmt::Debug for CharMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ{}", self)
    }
}

impl fmt::Display for CharMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return f.write_str("0");
        }
        let sep = if self.rank > 9 { "," } else { "" };
        let mut first = true;
        for i in self.indices() {
            if !first {
                f.write_str(sep)?;
            }
            first = false;
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

fn check_rank(rank: u32) -> Result<()> {
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::usage(alloc::format!(
            "rank k = {rank} outside 1..={MAX_RANK}"
        )));
    }
    Ok(())
}

/// Value of a character on a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl core::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity((self == Sign::Minus) ^ (rhs == Sign::Minus))
    }
}

/// `χ(f) = (-1)^{#(χ ∩ f)}` on raw bit encodings.
#[inline]
pub(crate) fn pairing_is_minus(chi: u32, f: u32) -> bool {
    (chi & f).count_ones() & 1 == 1
}

/// Evaluates the character `chi` on the group element `f`.
pub fn evaluate(chi: CharMask, f: CharMask) -> Result<Sign> {
    if chi.rank != f.rank {
        return Err(Error::usage(alloc::format!(
            "rank mismatch: character of rank {} on element of rank {}",
            chi.rank,
            f.rank
        )));
    }
    Ok(Sign::from_parity(pairing_is_minus(chi.bits, f.bits)))
}

/// Product of characters (symmetric difference of index sets); the empty
/// product is `χ_∅`.
pub fn product<I>(rank: u32, chis: I) -> Result<CharMask>
where
    I: IntoIterator<Item = CharMask>,
{
    let mut acc = CharMask::trivial(rank)?;
    for chi in chis {
        if chi.rank() != rank {
            return Err(Error::usage(alloc::format!(
                "rank mismatch in product: expected {rank}, got {}",
                chi.rank
            )));
        }
        acc.bits ^= chi.bits;
    }
    Ok(acc)
}

/// Characters of `Z_2^k` in the tables' bracket order: `∅` first, then by
/// subset size, each size class lexicographic.
pub fn graded_order(rank: u32) -> Result<Vec<CharMask>> {
    check_rank(rank)?;
    let mut all: Vec<u32> = (0..1u32 << rank).collect();
    all.sort_by(|&a, &b| {
        a.count_ones()
            .cmp(&b.count_ones())
            .then_with(|| index_word(a).cmp(&index_word(b)))
    });
    Ok(all
        .into_iter()
        .map(|bits| CharMask { bits, rank: rank as u8 })
        .collect())
}

/// Characters ordered lexicographically as words of increasing indices:
/// `∅, 1, 12, 123, 13, 2, 23, 3` for `k = 3`.
pub fn lexicographic_order(rank: u32) -> Result<Vec<CharMask>> {
    check_rank(rank)?;
    let mut all: Vec<u32> = (0..1u32 << rank).collect();
    all.sort_by_key(|&a| index_word(a));
    Ok(all
        .into_iter()
        .map(|bits| CharMask { bits, rank: rank as u8 })
        .collect())
}

fn index_word(bits: u32) -> Vec<u32> {
    (0..32).filter(|i| bits >> i & 1 == 1).collect()
}

/// Incremental GF(2) basis used for linear-independence tests.
#[derive(Debug, Clone, Default)]
pub(crate) struct XorBasis {
    // pivots[b] holds a reduced vector whose highest set bit is b
    pivots: [u32; 32],
    len: usize,
}

impl XorBasis {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    fn reduce(&self, mut v: u32) -> u32 {
        while v != 0 {
            let top = 31 - v.leading_zeros();
            let p = self.pivots[top as usize];
            if p == 0 {
                break;
            }
            v ^= p;
        }
        v
    }

    /// Inserts `v`; returns `false` (leaving the basis unchanged) when `v` is
    /// already in the span.
    pub(crate) fn insert(&mut self, v: u32) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let top = 31 - r.leading_zeros();
        self.pivots[top as usize] = r;
        self.len += 1;
        true
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }
}

/// GF(2) rank of a list of raw masks.
pub(crate) fn span_rank<I: IntoIterator<Item = u32>>(vs: I) -> usize {
    let mut basis = XorBasis::new();
    for v in vs {
        basis.insert(v);
    }
    basis.len()
}

/// An element of the circuit set `A_p`: a minimal family of nonzero
/// characters with trivial product.
///
/// Degree-two circuits `{I, I}` are stored once with `doubled` set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    members: Vec<CharMask>,
    doubled: bool,
}

impl Circuit {
    pub fn members(&self) -> &[CharMask] {
        &self.members
    }

    pub fn is_doubled(&self) -> bool {
        self.doubled
    }

    pub fn degree(&self) -> usize {
        if self.doubled {
            2
        } else {
            self.members.len()
        }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut parts: Vec<String> = self.members.iter().map(|m| alloc::format!("{m}")).collect();
        if self.doubled {
            parts.push(parts[0].clone());
        }
        f.write_str(&parts.join(","))?;
        f.write_str("}")
    }
}

/// All degree-`p` circuits among the nonzero characters of `Z_2^k`, in
/// lexicographic order of their (numerically sorted) members.
pub fn circuits(rank: u32, degree: u32) -> Result<Vec<Circuit>> {
    check_rank(rank)?;
    if degree < 2 || degree > rank + 1 {
        return Err(Error::usage(alloc::format!(
            "circuit degree {degree} outside 2..={}",
            rank + 1
        )));
    }
    let top = 1u32 << rank;
    let wrap = |bits: u32| CharMask { bits, rank: rank as u8 };
    if degree == 2 {
        return Ok((1..top)
            .map(|b| Circuit { members: vec![wrap(b)], doubled: true })
            .collect());
    }
    let mut out = Vec::new();
    let nonzero: Vec<u32> = (1..top).collect();
    for_each_circuit_tail(&nonzero, degree as usize, &mut |set| {
        out.push(Circuit {
            members: set.iter().map(|&b| wrap(b)).collect(),
            doubled: false,
        });
    });
    Ok(out)
}

/// Visits every set of `p >= 3` distinct values from `pool` (sorted
/// ascending, nonzero) whose XOR vanishes and whose proper subsets do not.
///
/// The first `p - 1` members of a circuit are independent and the largest
/// member is their XOR, so the search runs over independent prefixes only.
pub(crate) fn for_each_circuit_tail(pool: &[u32], p: usize, visit: &mut dyn FnMut(&[u32])) {
    debug_assert!(p >= 3);
    let mut chosen: Vec<u32> = Vec::with_capacity(p);
    fn rec(
        pool: &[u32],
        start: usize,
        p: usize,
        acc: u32,
        basis: &XorBasis,
        chosen: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if chosen.len() == p - 1 {
            let last = acc;
            let max = *chosen.last().unwrap();
            if last > max && pool.binary_search(&last).is_ok() {
                chosen.push(last);
                visit(chosen);
                chosen.pop();
            }
            return;
        }
        for idx in start..pool.len() {
            let v = pool[idx];
            let mut next = basis.clone();
            if !next.insert(v) {
                continue;
            }
            chosen.push(v);
            rec(pool, idx + 1, p, acc ^ v, &next, chosen, visit);
            chosen.pop();
        }
    }
    rec(pool, 0, p, 0, &XorBasis::new(), &mut chosen, visit);
}

/// An invertible linear map on the character group, given by the images of
/// the basis characters `χ_1, …, χ_k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    cols: Vec<u32>,
}

impl Automorphism {
    pub fn identity(rank: u32) -> Result<Self> {
        check_rank(rank)?;
        Ok(Automorphism { cols: (0..rank).map(|i| 1 << i).collect() })
    }

    /// Builds the map sending `χ_i` to `images[i - 1]`; fails unless the images
    /// are linearly independent.
    pub fn from_images(images: &[CharMask]) -> Result<Self> {
        let rank = images.len() as u32;
        check_rank(rank)?;
        if images.iter().any(|c| c.rank() != rank) {
            return Err(Error::usage("automorphism images must have the map's rank"));
        }
        let cols: Vec<u32> = images.iter().map(|c| c.bits).collect();
        if span_rank(cols.iter().copied()) != cols.len() {
            return Err(Error::usage("automorphism images are linearly dependent"));
        }
        Ok(Automorphism { cols })
    }

    pub(crate) fn from_cols_unchecked(cols: Vec<u32>) -> Self {
        Automorphism { cols }
    }

    pub fn rank(&self) -> u32 {
        self.cols.len() as u32
    }

    #[inline]
    pub(crate) fn apply_bits(&self, mut bits: u32) -> u32 {
        let mut out = 0;
        let mut i = 0;
        while bits != 0 {
            if bits & 1 == 1 {
                out ^= self.cols[i];
            }
            bits >>= 1;
            i += 1;
        }
        out
    }

    pub fn apply(&self, chi: CharMask) -> CharMask {
        debug_assert_eq!(chi.rank(), self.rank());
        CharMask { bits: self.apply_bits(chi.bits), rank: chi.rank }
    }

    /// `table[I] = φ(I)` for every raw mask `I < 2^k`.
    pub(crate) fn image_table(&self) -> Vec<u32> {
        let size = 1usize << self.cols.len();
        let mut table = vec![0u32; size];
        for i in 1..size {
            let low = i.trailing_zeros() as usize;
            table[i] = table[i & (i - 1)] ^ self.cols[low];
        }
        table
    }

    pub fn images(&self) -> Vec<CharMask> {
        let rank = self.cols.len() as u8;
        self.cols.iter().map(|&bits| CharMask { bits, rank }).collect()
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.images()).finish()
    }
}

/// `|GL(k, 2)| = Π_{i<k} (2^k - 2^i)`.
pub fn gl_order(rank: u32) -> u128 {
    let top = 1u128 << rank;
    (0..rank).map(|i| top - (1u128 << i)).product()
}

/// Iterates over all of `GL(k, 2)`, identity first. Only offered for
/// `k <= 5`.
pub fn automorphisms(rank: u32) -> Result<Automorphisms> {
    check_rank(rank)?;
    if rank > MAX_ORBIT_RANK {
        return Err(Error::capability(alloc::format!(
            "exhaustive automorphism iteration is limited to k <= {MAX_ORBIT_RANK} \
             (|GL({rank},2)| = {}); use the pre-filtered pairwise equivalence test instead",
            gl_order(rank)
        )));
    }
    Ok(Automorphisms {
        rank,
        cols: [0; 5],
        spans: [0; 6],
        state: IterState::Fresh,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

/// Iterator returned by [`automorphisms`].
#[derive(Debug, Clone)]
pub struct Automorphisms {
    rank: u32,
    cols: [u32; 5],
    // spans[d]: membership bitmask of span(cols[..d]) (2^k <= 32 points)
    spans: [u64; 6],
    state: IterState,
}

impl Automorphisms {
    fn next_free(&self, depth: usize, from: u32) -> Option<u32> {
        let top = 1u32 << self.rank;
        (from..top).find(|&v| self.spans[depth] >> v & 1 == 0)
    }

    fn extend_span(&mut self, depth: usize) {
        let v = self.cols[depth];
        let span = self.spans[depth];
        let mut shifted = 0u64;
        for w in 0..(1u32 << self.rank) {
            if span >> w & 1 == 1 {
                shifted |= 1 << (w ^ v);
            }
        }
        self.spans[depth + 1] = span | shifted;
    }

    fn fill_from(&mut self, depth: usize) {
        for d in depth..self.rank as usize {
            // a free vector always exists below full rank
            self.cols[d] = self.next_free(d, 1).expect("span is proper");
            self.extend_span(d);
        }
    }
}

impl Iterator for Automorphisms {
    type Item = Automorphism;

    fn next(&mut self) -> Option<Automorphism> {
        let k = self.rank as usize;
        match self.state {
            IterState::Done => return None,
            IterState::Fresh => {
                self.spans[0] = 1;
                self.fill_from(0);
                self.state = IterState::Running;
            }
            IterState::Running => {
                let mut d = k;
                loop {
                    if d == 0 {
                        self.state = IterState::Done;
                        return None;
                    }
                    d -= 1;
                    if let Some(v) = self.next_free(d, self.cols[d] + 1) {
                        self.cols[d] = v;
                        self.extend_span(d);
                        self.fill_from(d + 1);
                        break;
                    }
                }
            }
        }
        Some(Automorphism::from_cols_unchecked(self.cols[..k].to_vec()))
    }
}
