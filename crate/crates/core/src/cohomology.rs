//! The invariant exterior algebra `Λ*_F(Q^n)` of a diagonal representation.
//!
//! Coordinate `e_j` spans a line on which the group acts by a character
//! `ψ_j`; a monomial `e_S` is invariant iff `Π_{j∈S} ψ_j` is trivial. All
//! subspaces handled here are spanned by monomials, so they are stored as
//! monomial sets.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chargroup::{for_each_circuit_tail, span_rank};
use crate::diagrep::{DiagonalRep, Layout};
use crate::error::{Error, Result};

/// Default cap on the number of candidate subsets a basis listing may visit.
pub const DEFAULT_BASIS_BUDGET: u64 = 10_000_000;

/// `e_S` for a subset `S ⊆ {1..n}`, stored as a bitmask (bit `j-1` ⇔ `j ∈ S`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    /// From 1-based coordinate indices.
    pub fn from_indices(indices: &[u32]) -> Result<Monomial> {
        let mut bits = 0u64;
        for &i in indices {
            if i == 0 || i > 64 {
                return Err(Error::usage(alloc::format!("coordinate index {i} outside 1..=64")));
            }
            if bits >> (i - 1) & 1 == 1 {
                return Err(Error::usage(alloc::format!("coordinate {i} repeated")));
            }
            bits |= 1 << (i - 1);
        }
        Ok(Monomial(bits))
    }

    /// Parses `"1278"` (one digit per index) or `"1,2,10"`.
    pub fn parse(text: &str) -> Result<Monomial> {
        let text = text.trim();
        let indices: Vec<u32> = if text.contains(',') {
            text.split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| Error::parse(alloc::format!("bad index {p:?}"))))
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| Error::parse(alloc::format!("bad index {c:?}"))))
                .collect::<Result<_>>()?
        };
        Monomial::from_indices(&indices)
    }

    pub fn from_bits(bits: u64) -> Monomial {
        Monomial(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    /// 1-based indices, increasing.
    pub fn indices(self) -> Vec<u32> {
        (0..64).filter(|j| self.0 >> j & 1 == 1).map(|j| j + 1).collect()
    }

    /// `e_S ∧ e_T` up to sign, or `None` when `S ∩ T ≠ ∅`.
    pub fn wedge(self, other: Monomial) -> Option<Monomial> {
        (self.0 & other.0 == 0).then_some(Monomial(self.0 | other.0))
    }
}

// lexicographic on the increasing index sequence
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        // both index sequences agree below `low`; the one missing `low` is
        // smaller iff it has nothing above `low`
        let lacking = if self.0 & low != 0 { other.0 } else { self.0 };
        let lacking_ends = lacking & !(low | (low - 1)) == 0;
        match (self.0 & low != 0, lacking_ends) {
            (true, true) | (false, false) => Ordering::Greater,
            (true, false) | (false, true) => Ordering::Less,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.indices();
        if idx.is_empty() {
            return f.write_str("1");
        }
        let sep = if idx.iter().all(|&i| i <= 9) { "" } else { "," };
        let parts: Vec<String> = idx.iter().map(|i| alloc::format!("{i}")).collect();
        f.write_str(&parts.join(sep))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{self}")
    }
}

/// A graded family of monomial sets, one per degree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedSpan {
    by_degree: BTreeMap<u32, BTreeSet<Monomial>>,
}

impl GradedSpan {
    pub fn new() -> GradedSpan {
        GradedSpan::default()
    }

    /// A span concentrated in one degree.
    pub fn homogeneous<I: IntoIterator<Item = Monomial>>(monomials: I) -> GradedSpan {
        let mut span = GradedSpan::new();
        for m in monomials {
            span.insert(m);
        }
        span
    }

    pub fn insert(&mut self, m: Monomial) {
        self.by_degree.entry(m.degree()).or_default().insert(m);
    }

    /// Monomials of degree `p` (empty when absent).
    pub fn degree(&self, p: u32) -> Vec<Monomial> {
        self.by_degree.get(&p).map(|s| s.iter().copied().collect()).unwrap_or_default()
    }

    pub fn dim(&self, p: u32) -> usize {
        self.by_degree.get(&p).map_or(0, |s| s.len())
    }

    pub fn total_dim(&self) -> usize {
        self.by_degree.values().map(|s| s.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.by_degree.values().flat_map(|s| s.iter().copied())
    }
}

/// Betti numbers and primitive counts of one representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BettiTable {
    pub betti: Vec<u64>,
    pub prim: Vec<u64>,
}

impl BettiTable {
    pub fn of(rep: &DiagonalRep) -> BettiTable {
        BettiTable { betti: betti_numbers(rep), prim: primitive_counts(rep) }
    }
}

fn binomial_row(n: u32) -> Vec<u64> {
    let mut row = vec![1u64];
    for i in 1..=n as u64 {
        let prev = *row.last().unwrap() as u128;
        row.push((prev * (n as u64 - i + 1) as u128 / i as u128) as u64);
    }
    row
}

/// `β_p = dim Λ^p_F` for `p = 0..=n`, by a dynamic program over character
/// blocks with state (accumulated character, degree).
pub fn betti_numbers(rep: &DiagonalRep) -> Vec<u64> {
    let size = rep.multiplicities().len();
    let n = rep.dim() as usize;
    let mut table = vec![0u64; size * (n + 1)];
    table[0] = 1;
    let mut used = 0usize;
    for (chi, &q) in rep.multiplicities().iter().enumerate() {
        if q == 0 {
            continue;
        }
        let binom = binomial_row(q);
        let mut next = vec![0u64; size * (n + 1)];
        for acc in 0..size {
            for d in 0..=used {
                let count = table[acc * (n + 1) + d];
                if count == 0 {
                    continue;
                }
                for (j, &c) in binom.iter().enumerate() {
                    let target = if j % 2 == 1 { acc ^ chi } else { acc };
                    let slot = &mut next[target * (n + 1) + d + j];
                    *slot = (*slot as u128 + count as u128 * c as u128) as u64;
                }
            }
        }
        used += q as usize;
        table = next;
    }
    table[..=n].to_vec()
}

/// `(P_0, …, P_n)`: `P_0 = 1`, `P_1 = q_∅`, `P_2 = Σ C(q_I, 2)` and for
/// `p >= 3` the sum over degree-`p` circuits of the product of multiplicities.
pub fn primitive_counts(rep: &DiagonalRep) -> Vec<u64> {
    let n = rep.dim() as usize;
    let mult = rep.multiplicities();
    let mut prim = vec![0u64; n + 1];
    prim[0] = 1;
    prim[1] = mult[0] as u64;
    if n >= 2 {
        prim[2] = mult[1..].iter().map(|&q| (q as u64) * (q.saturating_sub(1) as u64) / 2).sum();
    }
    let pool: Vec<u32> = rep.support_bits().filter(|&b| b != 0).collect();
    for p in 3..=(rep.rank() as usize + 1).min(n) {
        let mut total = 0u128;
        for_each_circuit_tail(&pool, p, &mut |set| {
            total += set.iter().map(|&b| mult[b as usize] as u128).product::<u128>();
        });
        prim[p] = total as u64;
    }
    prim
}

/// The seven-term closed form for `P_4` when `k = 3`.
pub fn primitive_count_p4_k3(rep: &DiagonalRep) -> Result<u64> {
    if rep.rank() != 3 {
        return Err(Error::usage("the closed form for P_4 needs k = 3"));
    }
    let q = |bits: usize| rep.multiplicities()[bits] as u64;
    // encodings: 1, 2, 4 = χ1, χ2, χ3; 3 = χ12, 5 = χ13, 6 = χ23, 7 = χ123
    Ok(q(1) * q(2) * q(4) * q(7)
        + q(1) * q(2) * q(5) * q(6)
        + q(1) * q(4) * q(3) * q(6)
        + q(2) * q(4) * q(3) * q(5)
        + q(1) * q(3) * q(5) * q(7)
        + q(2) * q(3) * q(6) * q(7)
        + q(4) * q(5) * q(6) * q(7))
}

/// `Σ_p P_p`, the size of a minimal generating set of `Λ*_F`.
pub fn minimal_generator_count(rep: &DiagonalRep) -> u64 {
    primitive_counts(rep).iter().sum()
}

fn binomial(n: u64, p: u64) -> u128 {
    if p > n {
        return 0;
    }
    let p = p.min(n - p);
    let mut acc = 1u128;
    for i in 0..p {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn check_budget(layout: &Layout, p: u32, budget: u64) -> Result<()> {
    let n = layout.dim() as u64;
    let candidates = binomial(n, p as u64);
    if candidates > budget as u128 {
        return Err(Error::capability(alloc::format!(
            "listing degree-{p} monomials in dimension {n} visits {candidates} subsets, above the budget of {budget}; use the counting functions instead"
        )));
    }
    Ok(())
}

fn for_each_invariant(layout: &Layout, p: u32, visit: &mut dyn FnMut(Monomial, &[u32])) {
    let chars = layout.coordinate_bits();
    let n = chars.len();
    let p = p as usize;
    let mut stack: Vec<usize> = Vec::with_capacity(p);
    let mut picked: Vec<u32> = Vec::with_capacity(p);
    fn rec(
        chars: &[u32],
        start: usize,
        p: usize,
        acc: u32,
        bits: u64,
        stack: &mut Vec<usize>,
        picked: &mut Vec<u32>,
        visit: &mut dyn FnMut(Monomial, &[u32]),
    ) {
        if stack.len() == p {
            if acc == 0 {
                visit(Monomial(bits), picked);
            }
            return;
        }
        let remaining = p - stack.len();
        for j in start..=chars.len() - remaining {
            stack.push(j);
            picked.push(chars[j]);
            rec(chars, j + 1, p, acc ^ chars[j], bits | 1 << j, stack, picked, visit);
            picked.pop();
            stack.pop();
        }
    }
    if p > n {
        return;
    }
    rec(&chars, 0, p, 0, 0, &mut stack, &mut picked, visit);
}

/// All invariant monomials of degree `p`, in lexicographic order.
pub fn invariant_basis(layout: &Layout, p: u32, budget: u64) -> Result<Vec<Monomial>> {
    check_budget(layout, p, budget)?;
    let mut out = Vec::new();
    for_each_invariant(layout, p, &mut |m, _| out.push(m));
    Ok(out)
}

/// Invariant monomials of degree `p` with no proper nonempty invariant
/// factor; their number is `P_p`.
pub fn primitive_basis(layout: &Layout, p: u32, budget: u64) -> Result<Vec<Monomial>> {
    check_budget(layout, p, budget)?;
    let mut out = Vec::new();
    if p == 0 {
        out.push(Monomial::ONE);
        return Ok(out);
    }
    // trivial product and rank p - 1 means the only vanishing subproduct is the whole
    for_each_invariant(layout, p, &mut |m, chars| {
        if span_rank(chars.iter().copied()) == p as usize - 1 {
            out.push(m);
        }
    });
    Ok(out)
}

/// Invariant monomials of every degree, graded.
pub fn invariant_span(layout: &Layout, budget: u64) -> Result<GradedSpan> {
    let mut span = GradedSpan::new();
    for p in 0..=layout.dim() {
        for m in invariant_basis(layout, p, budget)? {
            span.insert(m);
        }
    }
    Ok(span)
}

/// `a ∧ b` for monomial-spanned `a`, `b`: all unions of disjoint pairs.
pub fn wedge_span(a: &GradedSpan, b: &GradedSpan) -> GradedSpan {
    let mut out = GradedSpan::new();
    for x in a.iter() {
        for y in b.iter() {
            if let Some(m) = x.wedge(y) {
                out.insert(m);
            }
        }
    }
    out
}

/// Dimension of the span of products of lower positive degree invariants
/// inside `Λ^p_F`, computed by wedging the invariant bases.
pub fn decomposition_check(layout: &Layout, p: u32, budget: u64) -> Result<usize> {
    let mut decomposable = GradedSpan::new();
    for a in 1..p {
        if 2 * a > p {
            break;
        }
        let left = GradedSpan::homogeneous(invariant_basis(layout, a, budget)?);
        let right = GradedSpan::homogeneous(invariant_basis(layout, p - a, budget)?);
        for m in wedge_span(&left, &right).iter() {
            decomposable.insert(m);
        }
    }
    Ok(decomposable.dim(p))
}

/// Whether invariant 2-forms cannot produce a volume form (`Ω^{n/2} = 0` for
/// every invariant `Ω`): this happens exactly when some `q_I` is odd.
pub fn kahler_obstruction(rep: &DiagonalRep) -> Result<bool> {
    if rep.dim() % 2 == 1 {
        return Err(Error::usage(alloc::format!(
            "the Kähler obstruction needs even dimension, got n = {}",
            rep.dim()
        )));
    }
    Ok(rep.multiplicities().iter().any(|q| q % 2 == 1))
}

/// `sl_2` multiplicities read off the Betti numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lefschetz {
    /// irreducible dimension `d` → multiplicity, zero entries omitted
    pub multiplicities: BTreeMap<u32, u64>,
    /// `(d, m_d)` pairs with `m_d < 0`; nonempty means hard Lefschetz fails
    pub violations: Vec<(u32, i64)>,
}

impl Lefschetz {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `m_{n/2 - p + 1} = β_p - β_{p-2}` for `0 <= p <= n/2`.
pub fn lefschetz_multiplicities(betti: &[u64], n: u32) -> Result<Lefschetz> {
    if n % 2 == 1 {
        return Err(Error::usage(alloc::format!("Lefschetz decomposition needs even n, got {n}")));
    }
    if betti.len() != n as usize + 1 {
        return Err(Error::usage(alloc::format!(
            "expected {} Betti numbers, got {}",
            n + 1,
            betti.len()
        )));
    }
    if (0..betti.len()).any(|p| betti[p] != betti[betti.len() - 1 - p]) {
        return Err(Error::usage("Betti numbers are not symmetric"));
    }
    let half = n / 2;
    let mut multiplicities = BTreeMap::new();
    let mut violations = Vec::new();
    for p in 0..=half {
        let below = if p >= 2 { betti[p as usize - 2] as i64 } else { 0 };
        let m = betti[p as usize] as i64 - below;
        let d = half - p + 1;
        match m.cmp(&0) {
            Ordering::Greater => {
                multiplicities.insert(d, m as u64);
            }
            Ordering::Less => violations.push((d, m)),
            Ordering::Equal => {}
        }
    }
    Ok(Lefschetz { multiplicities, violations })
}

/// Exact rank over `Q` (fraction-free elimination).
pub(crate) fn rational_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let height = rows.len();
    if height == 0 {
        return 0;
    }
    let width = rows[0].len();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..width {
        let Some(pivot) = (rank..height).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..height {
            for c in col + 1..width {
                let v = (&rows[rank][col] * &rows[r][c] - &rows[r][col] * &rows[rank][c]) / &prev;
                rows[r][c] = v;
            }
            rows[r][col] = BigInt::zero();
        }
        prev = rows[rank][col].clone();
        rank += 1;
        if rank == height {
            break;
        }
    }
    rank
}

/// Multiplicities obtained from the ranks of `L = Ω ∧ ·` with
/// `Ω = e_12 + e_34 + …`, which must be invariant (coordinates `2i-1`, `2i`
/// carry equal characters). Exact, limited to `n <= 10`.
pub fn lefschetz_by_rank(layout: &Layout) -> Result<BTreeMap<u32, u64>> {
    let n = layout.dim();
    if n % 2 == 1 || n > 10 {
        return Err(Error::usage(alloc::format!(
            "the explicit Lefschetz check needs even n <= 10, got {n}"
        )));
    }
    let coords = layout.coordinates();
    if (0..n as usize / 2).any(|i| coords[2 * i] != coords[2 * i + 1]) {
        return Err(Error::usage("Ω = e12 + e34 + … is not invariant for this layout"));
    }
    let pairs: Vec<u64> = (0..n / 2).map(|i| 0b11u64 << (2 * i)).collect();
    let mut out = BTreeMap::new();
    for p in 0..=n / 2 {
        let target = invariant_basis(layout, p, DEFAULT_BASIS_BUDGET)?;
        let rank = if p >= 2 {
            let source = invariant_basis(layout, p - 2, DEFAULT_BASIS_BUDGET)?;
            let index: BTreeMap<u64, usize> =
                target.iter().enumerate().map(|(i, m)| (m.bits(), i)).collect();
            // e_{2i-1,2i} ∧ e_S is e_{S ∪ pair} with sign +1: no index of S lies between the pair
            let rows: Vec<Vec<BigInt>> = source
                .iter()
                .map(|s| {
                    let mut row = vec![BigInt::zero(); target.len()];
                    for &pair in &pairs {
                        if s.bits() & pair == 0 {
                            row[index[&(s.bits() | pair)]] += 1;
                        }
                    }
                    row
                })
                .collect();
            rational_rank(rows)
        } else {
            0
        };
        let m = target.len() - rank;
        if m > 0 {
            out.insert(n / 2 - p + 1, m as u64);
        }
    }
    Ok(out)
}
