//! Exhaustive enumeration of almost-conjugate families.
//!
//! Every multiplicity vector of dimension `n` over the allowed characters is
//! visited once (weak compositions, first character outermost). Survivors of
//! the filters are bucketed by pattern and deduplicated up to equivalence.
//! Work can be split on the multiplicity of the first character and the
//! partial results merged in any order; [`Accumulator::finalize`] replaces
//! each class by its canonical form, so the output does not depend on how the
//! work was split.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::chargroup::{pairing_is_minus, XorBasis};
use crate::cohomology::{betti_numbers, primitive_counts};
use crate::diagrep::{DiagonalRep, Pattern};
use crate::error::{Error, Result};
use crate::flip::{all_specs, apply_flip, FlipSpec};
use crate::MAX_ORBIT_RANK;

/// Default cap on the number of compositions one dimension may visit.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub rank: u32,
    pub n_min: u32,
    pub n_max: u32,
    pub require_faithful: bool,
    pub forbid_minus_id: bool,
    pub require_q0_zero: bool,
    pub min_family_size: usize,
    /// worker threads for parallel drivers; the sequential driver ignores it
    pub workers: usize,
    pub budget: u128,
}

impl SearchConfig {
    /// Defaults: faithful, `-Id` excluded, `q_∅ = 0`, families of size >= 2.
    pub fn new(rank: u32, n: u32) -> SearchConfig {
        SearchConfig {
            rank,
            n_min: n,
            n_max: n,
            require_faithful: true,
            forbid_minus_id: true,
            require_q0_zero: true,
            min_family_size: 2,
            workers: 1,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_range(rank: u32, n_min: u32, n_max: u32) -> SearchConfig {
        SearchConfig { n_max, ..SearchConfig::new(rank, n_min) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 || self.rank > MAX_ORBIT_RANK {
            return Err(Error::capability(alloc::format!(
                "enumeration supports 1 <= k <= {MAX_ORBIT_RANK}, got k = {}",
                self.rank
            )));
        }
        if self.n_min == 0 || self.n_min > self.n_max || self.n_max > crate::MAX_DIM {
            return Err(Error::usage(alloc::format!(
                "invalid dimension range {}..={}",
                self.n_min,
                self.n_max
            )));
        }
        if self.min_family_size == 0 {
            return Err(Error::usage("minimum family size must be at least 1"));
        }
        Ok(())
    }

    /// Encodings of the characters multiplicities are distributed over.
    pub fn allowed_characters(&self) -> Vec<u32> {
        let start = u32::from(self.require_q0_zero);
        (start..1 << self.rank).collect()
    }

    pub fn dims(&self) -> core::ops::RangeInclusive<u32> {
        self.n_min..=self.n_max
    }

    /// Errors when dimension `n` would visit more compositions than allowed.
    pub fn check_budget(&self, n: u32) -> Result<u128> {
        let count = composition_count(n, self.allowed_characters().len() as u32);
        if count > self.budget {
            return Err(Error::capability(alloc::format!(
                "k = {}, n = {n} has {count} compositions, above the budget of {}",
                self.rank,
                self.budget
            )));
        }
        Ok(count)
    }
}

/// `C(n + r - 1, r - 1)`, the number of ways to write `n` as an ordered sum
/// of `r` non-negative parts.
pub fn composition_count(n: u32, parts: u32) -> u128 {
    if parts == 0 {
        return u128::from(n == 0);
    }
    let (top, low) = (n as u128 + parts as u128 - 1, (parts - 1).min(n) as u128);
    let mut acc = 1u128;
    for i in 0..low {
        acc = acc * (top - i) / (i + 1);
    }
    acc
}

/// A family member with its invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub rep: DiagonalRep,
    pub prim: Vec<u64>,
    pub betti: Vec<u64>,
}

impl Member {
    pub fn new(rep: DiagonalRep) -> Member {
        Member { prim: primitive_counts(&rep), betti: betti_numbers(&rep), rep }
    }
}

/// Pairwise inequivalent representations sharing one pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub pattern: Pattern,
    pub members: Vec<Member>,
}

impl Family {
    pub fn rank(&self) -> u32 {
        self.members[0].rep.rank()
    }

    pub fn dim(&self) -> u32 {
        self.members[0].rep.dim()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Partial enumeration result: equivalence classes per pattern.
#[derive(Debug, Clone, Default)]
pub struct Accumulator {
    // pattern -> sorted multiplicities -> one representative per class
    buckets: BTreeMap<Pattern, BTreeMap<Vec<u32>, Vec<DiagonalRep>>>,
    visited: u128,
}

impl Accumulator {
    pub fn new() -> Accumulator {
        Accumulator::default()
    }

    /// Adds `rep` unless an equivalent representation is already present.
    pub fn insert(&mut self, rep: DiagonalRep) {
        let pattern = rep.pattern();
        self.insert_with_pattern(rep, pattern);
    }

    fn insert_with_pattern(&mut self, rep: DiagonalRep, pattern: Pattern) {
        let mut key = rep.multiplicities().to_vec();
        key.sort_unstable();
        let classes = self.buckets.entry(pattern).or_default().entry(key).or_default();
        if !classes.iter().any(|c| c.are_equivalent(&rep)) {
            classes.push(rep);
        }
    }

    /// Number of compositions visited to build this accumulator.
    pub fn visited(&self) -> u128 {
        self.visited
    }

    /// Number of equivalence classes collected.
    pub fn class_count(&self) -> usize {
        self.buckets.values().flat_map(|m| m.values()).map(Vec::len).sum()
    }

    /// Folds `other` in; the result does not depend on the merge order up to
    /// the choice of class representatives.
    pub fn merge(&mut self, other: Accumulator) {
        self.visited += other.visited;
        for (pattern, groups) in other.buckets {
            for (_, reps) in groups {
                for rep in reps {
                    self.insert_with_pattern(rep, pattern.clone());
                }
            }
        }
    }

    /// Families with at least `min_size` classes, members in canonical form
    /// sorted descending by bracket vector, families sorted descending by
    /// their first member.
    pub fn finalize(self, min_size: usize) -> Result<Vec<Family>> {
        let mut families = Vec::new();
        for (pattern, groups) in self.buckets {
            let count: usize = groups.values().map(Vec::len).sum();
            if count < min_size {
                continue;
            }
            let mut reps: Vec<DiagonalRep> = Vec::with_capacity(count);
            for rep in groups.into_values().flatten() {
                reps.push(rep.canonical_form()?);
            }
            reps.sort_by_key(|r| core::cmp::Reverse(r.to_display()));
            let members = reps.into_iter().map(Member::new).collect();
            families.push(Family { pattern, members });
        }
        families.sort_by(|a: &Family, b: &Family| {
            b.members[0].rep.to_display().cmp(&a.members[0].rep.to_display())
        });
        Ok(families)
    }
}

struct Walker<'a> {
    cfg: &'a SearchConfig,
    chars: Vec<u32>,
    fixed: Vec<u32>,
    mult: Vec<u32>,
    acc: Accumulator,
}

impl Walker<'_> {
    fn assign(&mut self, idx: usize, value: u32, sign: i64) {
        let chi = self.chars[idx];
        for (f, slot) in self.fixed.iter_mut().enumerate() {
            if !pairing_is_minus(chi, f as u32) {
                *slot = (*slot as i64 + sign * value as i64) as u32;
            }
        }
        self.mult[chi as usize] = if sign > 0 { value } else { 0 };
    }

    fn walk(&mut self, idx: usize, remaining: u32) {
        if idx + 1 == self.chars.len() {
            self.assign(idx, remaining, 1);
            self.leaf();
            self.assign(idx, remaining, -1);
            return;
        }
        for value in (0..=remaining).rev() {
            self.assign(idx, value, 1);
            self.walk(idx + 1, remaining - value);
            self.assign(idx, value, -1);
        }
    }

    fn leaf(&mut self) {
        self.acc.visited += 1;
        if self.cfg.forbid_minus_id && self.fixed[1..].contains(&0) {
            return;
        }
        if self.cfg.require_faithful {
            let mut basis = XorBasis::new();
            for (bits, &q) in self.mult.iter().enumerate() {
                if q > 0 {
                    basis.insert(bits as u32);
                }
            }
            if basis.len() < self.cfg.rank as usize {
                return;
            }
        }
        let rep = DiagonalRep::new(self.cfg.rank, self.mult.clone()).expect("bounded composition");
        let dim = rep.dim();
        let pattern = Pattern::from_fixed_dims(dim, &self.fixed);
        self.acc.insert_with_pattern(rep, pattern);
    }
}

/// Enumerates dimension `n` restricted to compositions whose first allowed
/// character has multiplicity `first` (all of them when `first` is `None`).
pub fn enumerate_slice(cfg: &SearchConfig, n: u32, first: Option<u32>) -> Result<Accumulator> {
    cfg.validate()?;
    let chars = cfg.allowed_characters();
    let mut walker = Walker {
        cfg,
        fixed: vec![0; 1 << cfg.rank],
        mult: vec![0; 1 << cfg.rank],
        chars,
        acc: Accumulator::new(),
    };
    match first {
        None => walker.walk(0, n),
        Some(v) if v <= n => {
            if walker.chars.len() == 1 {
                if v == n {
                    walker.walk(0, n);
                }
            } else {
                walker.assign(0, v, 1);
                walker.walk(1, n - v);
                walker.assign(0, v, -1);
            }
        }
        Some(_) => {}
    }
    Ok(walker.acc)
}

/// All families for every dimension in the configured range, in order of `n`.
pub fn enumerate_families(cfg: &SearchConfig) -> Result<Vec<(u32, Vec<Family>)>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for n in cfg.dims() {
        cfg.check_budget(n)?;
        let acc = enumerate_slice(cfg, n, None)?;
        out.push((n, acc.finalize(cfg.min_family_size)?));
    }
    Ok(out)
}

/// Parameters of the three reference tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableSpec {
    pub id: u32,
    pub rank: u32,
    pub n_min: u32,
    pub n_max: u32,
    pub min_family_size: usize,
}

impl TableSpec {
    pub fn get(id: u32) -> Result<TableSpec> {
        let (rank, n_min, n_max, min_family_size) = match id {
            1 => (3, 7, 11, 2),
            2 => (3, 12, 15, 3),
            3 => (4, 7, 9, 2),
            _ => return Err(Error::usage(alloc::format!("table id {id} is not one of 1, 2, 3"))),
        };
        Ok(TableSpec { id, rank, n_min, n_max, min_family_size })
    }

    pub fn config(&self) -> SearchConfig {
        SearchConfig {
            min_family_size: self.min_family_size,
            ..SearchConfig::with_range(self.rank, self.n_min, self.n_max)
        }
    }
}

/// Sequential reproduction of table `id`.
pub fn reproduce_table(id: u32) -> Result<Vec<(u32, Vec<Family>)>> {
    enumerate_families(&TableSpec::get(id)?.config())
}

/// One ordered member pair of a family and a flip realizing it, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipLink {
    pub from: usize,
    pub to: usize,
    pub spec: Option<FlipSpec>,
}

/// For each ordered member pair `(a, b)`, the first flip pair (numeric
/// order) taking member `a` to a representation equivalent to member `b`.
pub fn flip_coverage(family: &Family) -> Result<Vec<FlipLink>> {
    let rank = family.rank();
    let specs = if rank >= 2 { all_specs(rank)? } else { Vec::new() };
    let mut links = Vec::new();
    for (a, ma) in family.members.iter().enumerate() {
        let images: Vec<(FlipSpec, DiagonalRep)> = specs
            .iter()
            .filter_map(|s| match apply_flip(&ma.rep, s) {
                Ok(Ok(rep)) => Some((*s, rep)),
                _ => None,
            })
            .collect();
        for (b, mb) in family.members.iter().enumerate() {
            if a == b {
                continue;
            }
            let spec = images.iter().find(|(_, img)| img.are_equivalent(&mb.rep)).map(|(s, _)| *s);
            links.push(FlipLink { from: a, to: b, spec });
        }
    }
    Ok(links)
}

/// Whether every ordered member pair is joined by a single flip.
pub fn is_flip_connected(family: &Family) -> Result<bool> {
    Ok(flip_coverage(family)?.iter().all(|l| l.spec.is_some()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flip::verify_almost_conjugate;
    use alloc::collections::BTreeSet;

    fn displays(fams: &[Family]) -> Vec<Vec<Vec<u32>>> {
        fams.iter()
            .map(|f| f.members.iter().map(|m| m.rep.to_display()).collect())
            .collect()
    }

    #[test]
    fn composition_counts() {
        assert_eq!(composition_count(7, 7), 1716);
        assert_eq!(composition_count(0, 3), 1);
        assert_eq!(composition_count(3, 1), 1);
        assert_eq!(composition_count(10, 15), 1_961_256);
        let acc = enumerate_slice(&SearchConfig::new(3, 7), 7, None).unwrap();
        assert_eq!(acc.visited(), 1716);
    }

    #[test]
    fn smallest_table_entry() {
        let out = enumerate_families(&SearchConfig::new(3, 7)).unwrap();
        assert_eq!(out.len(), 1);
        let fams = &out[0].1;
        assert_eq!(displays(fams), [[[3, 1, 1, 1, 0, 1, 0], [2, 2, 2, 1, 0, 0, 0]]]);
        let p4: Vec<u64> = fams[0].members.iter().map(|m| m.prim[4]).collect();
        assert_eq!(p4, [3, 0]);
    }

    #[test]
    fn slices_merge_to_the_whole() {
        let cfg = SearchConfig::new(3, 9);
        let whole = enumerate_slice(&cfg, 9, None).unwrap().finalize(2).unwrap();
        let mut parts: Vec<Accumulator> =
            (0..=9).map(|v| enumerate_slice(&cfg, 9, Some(v)).unwrap()).collect();
        parts.reverse();
        let mut merged = Accumulator::new();
        for p in parts {
            merged.merge(p);
        }
        assert_eq!(merged.visited(), composition_count(9, 7));
        assert_eq!(merged.finalize(2).unwrap(), whole);
        assert_eq!(whole.len(), 5);
    }

    #[test]
    fn class_counts_match_canonical_tally() {
        for n in 3..=8 {
            let cfg = SearchConfig { min_family_size: 1, ..SearchConfig::new(3, n) };
            let fams = enumerate_families(&cfg).unwrap().remove(0).1;
            let from_families: usize = fams.iter().map(Family::len).sum();

            // direct tally over all vectors via canonical forms
            let mut seen = BTreeSet::new();
            let mut stack = vec![(Vec::<u32>::new(), n)];
            while let Some((prefix, left)) = stack.pop() {
                if prefix.len() == 6 {
                    let mut d = prefix.clone();
                    d.push(left);
                    let rep = DiagonalRep::from_display(3, &d, 0).unwrap();
                    if rep.is_faithful() && !rep.contains_minus_identity() {
                        seen.insert(rep.canonical_form().unwrap());
                    }
                    continue;
                }
                for v in 0..=left {
                    let mut p = prefix.clone();
                    p.push(v);
                    stack.push((p, left - v));
                }
            }
            assert_eq!(from_families, seen.len(), "n={n}");
        }
    }

    #[test]
    fn family_invariants() {
        let out = enumerate_families(&SearchConfig::with_range(3, 7, 10)).unwrap();
        let counts: Vec<usize> = out.iter().map(|(_, f)| f.len()).collect();
        assert_eq!(counts, [1, 2, 5, 8]);
        for (_, fams) in &out {
            let patterns: BTreeSet<&Pattern> = fams.iter().map(|f| &f.pattern).collect();
            assert_eq!(patterns.len(), fams.len());
            for fam in fams {
                for (i, a) in fam.members.iter().enumerate() {
                    assert!(a.rep.is_faithful());
                    assert!(!a.rep.contains_minus_identity());
                    assert_eq!(a.rep.q0(), 0);
                    assert_eq!(a.rep.pattern(), fam.pattern);
                    for b in &fam.members[i + 1..] {
                        assert!(verify_almost_conjugate(&a.rep, &b.rep).unwrap());
                        assert!(!a.rep.are_equivalent(&b.rep));
                    }
                }
                assert!(is_flip_connected(fam).unwrap());
            }
        }
    }

    #[test]
    fn configuration_errors() {
        let cfg = SearchConfig::new(6, 10);
        assert!(matches!(enumerate_families(&cfg), Err(Error::Capability(_))));
        let cfg = SearchConfig { budget: 100, ..SearchConfig::new(3, 9) };
        assert!(matches!(enumerate_families(&cfg), Err(Error::Capability(_))));
        assert!(TableSpec::get(4).is_err());
        let cfg = SearchConfig::with_range(3, 9, 8);
        assert!(enumerate_families(&cfg).is_err());
    }

    #[test]
    fn q0_filter_can_be_lifted() {
        let cfg = SearchConfig { require_q0_zero: false, min_family_size: 1, ..SearchConfig::new(2, 3) };
        let fams = enumerate_families(&cfg).unwrap().remove(0).1;
        assert!(fams.iter().flat_map(|f| &f.members).any(|m| m.rep.q0() > 0));
    }
}
