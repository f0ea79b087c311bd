//! Bieberbach groups of diagonal type.
//!
//! Generator `i` acts by `B_i L_{b_i}` with `B_i` diagonal (`B_i e_j = ψ_j(f_i) e_j`,
//! `ψ_j` the character carried by coordinate `j`) and `b_i ∈ {0, ½}^n`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chargroup::{pairing_is_minus, CharMask, Sign};
use crate::diagrep::{BlockOrder, DiagonalRep, Layout, Pattern};
use crate::error::{Error, Result};
use crate::flip::{apply_flip, FlipSpec};

/// `b ∈ {0, ½}^n`, stored as the bitmask of coordinates equal to `½`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfVector {
    bits: u64,
    len: u32,
}

impl HalfVector {
    pub fn zero(len: u32) -> HalfVector {
        HalfVector { bits: 0, len }
    }

    /// `½ Σ e_j` over the given 0-based coordinates.
    pub fn from_coordinates(len: u32, coords: &[usize]) -> Result<HalfVector> {
        let mut v = HalfVector::zero(len);
        for &j in coords {
            if j >= len as usize {
                return Err(Error::usage(alloc::format!("coordinate {} outside 1..={len}", j + 1)));
            }
            v.bits |= 1 << j;
        }
        Ok(v)
    }

    /// From numerators in `{0, 1}`.
    pub fn from_numerators(numerators: &[u8]) -> Result<HalfVector> {
        let mut v = HalfVector::zero(numerators.len() as u32);
        for (j, &x) in numerators.iter().enumerate() {
            match x {
                0 => {}
                1 => v.bits |= 1 << j,
                _ => return Err(Error::usage("translation numerators must be 0 or 1")),
            }
        }
        Ok(v)
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Whether coordinate `j` (0-based) equals `½`.
    pub fn is_half(&self, j: usize) -> bool {
        self.bits >> j & 1 == 1
    }

    pub fn numerators(&self) -> Vec<u8> {
        (0..self.len as usize).map(|j| self.is_half(j) as u8).collect()
    }

    /// Sum reduced mod 1.
    pub fn add(&self, other: &HalfVector) -> HalfVector {
        HalfVector { bits: self.bits ^ other.bits, len: self.len }
    }
}

impl fmt::Debug for HalfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfVector({self})")
    }
}

impl fmt::Display for HalfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len as usize {
            if j > 0 {
                f.write_str(" ")?;
            }
            f.write_str(if self.is_half(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `b_I ≡ Σ_{i∈I} b_i (mod 1)` for every element, indexed by its encoding.
pub fn derive_element_translations(rank: u32, gens: &[HalfVector]) -> Result<Vec<HalfVector>> {
    if gens.len() != rank as usize {
        return Err(Error::usage(alloc::format!(
            "expected {rank} generator translations, got {}",
            gens.len()
        )));
    }
    let len = gens.first().map_or(0, |g| g.len());
    if gens.iter().any(|g| g.len() != len) {
        return Err(Error::usage("generator translations have different lengths"));
    }
    let mut out = vec![HalfVector::zero(len); 1 << rank];
    for bits in 1usize..1 << rank {
        let low = bits.trailing_zeros() as usize;
        out[bits] = out[bits & (bits - 1)].add(&gens[low]);
    }
    Ok(out)
}

/// `Γ = ⟨B_i L_{b_i}, L_λ : λ ∈ Z^n⟩` with diagonal `B_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BieberbachGroup {
    layout: Layout,
    gens: Vec<HalfVector>,
    elements: Vec<HalfVector>,
}

impl BieberbachGroup {
    pub fn new(layout: Layout, gens: Vec<HalfVector>) -> Result<BieberbachGroup> {
        let elements = derive_element_translations(layout.rank(), &gens)?;
        if gens.iter().any(|g| g.len() != layout.dim()) {
            return Err(Error::usage(alloc::format!(
                "translations must have length n = {}",
                layout.dim()
            )));
        }
        Ok(BieberbachGroup { layout, gens, elements })
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn rep(&self) -> DiagonalRep {
        self.layout.rep()
    }

    pub fn rank(&self) -> u32 {
        self.layout.rank()
    }

    pub fn dim(&self) -> u32 {
        self.layout.dim()
    }

    pub fn generator_translations(&self) -> &[HalfVector] {
        &self.gens
    }

    /// The diagonal of `B_i` (`i` 0-based).
    pub fn generator_signs(&self, i: usize) -> Vec<Sign> {
        self.layout
            .coordinates()
            .iter()
            .map(|c| Sign::from_parity(c.bits() >> i & 1 == 1))
            .collect()
    }

    fn check_element(&self, f: CharMask) -> Result<()> {
        if f.rank() != self.rank() {
            return Err(Error::usage("group element of the wrong rank"));
        }
        Ok(())
    }

    pub fn element_translation(&self, f: CharMask) -> Result<HalfVector> {
        self.check_element(f)?;
        Ok(self.elements[f.bits() as usize])
    }

    /// `n_B` for `B = B_f`.
    pub fn fixed_count(&self, f: CharMask) -> Result<u32> {
        self.check_element(f)?;
        Ok(self.layout.fixed_mask(f.bits()).count_ones())
    }

    /// `n_{B,½}`: coordinates fixed by `B_f` on which `b_f` is `½`.
    pub fn half_fixed_count(&self, f: CharMask) -> Result<u32> {
        self.check_element(f)?;
        Ok(self.half_fixed_bits(f.bits()))
    }

    fn half_fixed_bits(&self, f: u32) -> u32 {
        (self.layout.fixed_mask(f) & self.elements[f as usize].bits()).count_ones()
    }

    /// First nonzero element `f` (numeric order) for which no coordinate
    /// fixed by `B_f` carries `½` in `b_f`; such an element has finite order
    /// in `Γ`.
    pub fn torsion_witness(&self) -> Option<CharMask> {
        (1u32..1 << self.rank())
            .find(|&f| self.half_fixed_bits(f) == 0)
            .map(|f| CharMask::new(self.rank(), f).expect("in range"))
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion_witness().is_none()
    }

    /// Histogram of `(n_B, n_{B,½})` over all elements, identity included.
    pub fn sunada_table(&self) -> SunadaTable {
        let mut entries = BTreeMap::new();
        for f in 0u32..1 << self.rank() {
            let s = self.layout.fixed_mask(f).count_ones();
            let t = self.half_fixed_bits(f);
            *entries.entry((s, t)).or_insert(0u32) += 1;
        }
        SunadaTable { dim: self.dim(), entries }
    }

    /// Column notation: one row per coordinate, one column per generator,
    /// `-1` / ` 1` with a `½` mark where the translation is nonzero.
    pub fn render_columns(&self) -> String {
        let k = self.rank() as usize;
        let labels: Vec<String> =
            self.layout.coordinates().iter().map(|c| alloc::format!("χ{c}")).collect();
        let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        out.push_str(&" ".repeat(width));
        for i in 0..k {
            out.push_str(&alloc::format!("  {:<4}", alloc::format!("B{}", i + 1)));
        }
        out.push('\n');
        for (j, label) in labels.iter().enumerate() {
            out.push_str(label);
            out.push_str(&" ".repeat(width - label.chars().count()));
            for i in 0..k {
                let minus = self.layout.character(j).bits() >> i & 1 == 1;
                let half = self.gens[i].is_half(j);
                out.push_str("  ");
                out.push_str(if minus { "-1" } else { " 1" });
                out.push_str(if half { "½ " } else { "  " });
            }
            while out.ends_with(' ') {
                out.pop();
            }
            out.push('\n');
        }
        out
    }
}

/// Sunada numbers `c_{s,t}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SunadaTable {
    dim: u32,
    entries: BTreeMap<(u32, u32), u32>,
}

impl SunadaTable {
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// All nonzero `c_{s,t}`, identity `(n, 0)` included.
    pub fn entries(&self) -> &BTreeMap<(u32, u32), u32> {
        &self.entries
    }

    pub fn get(&self, s: u32, t: u32) -> u32 {
        self.entries.get(&(s, t)).copied().unwrap_or(0)
    }

    /// The entries with the identity element removed.
    pub fn non_identity(&self) -> BTreeMap<(u32, u32), u32> {
        let mut out = self.entries.clone();
        if let Some(c) = out.get_mut(&(self.dim, 0)) {
            *c -= 1;
            if *c == 0 {
                out.remove(&(self.dim, 0));
            }
        }
        out
    }

    /// `c_s = Σ_t c_{s,t}`.
    pub fn marginal(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.dim as usize + 1];
        for (&(s, _), &c) in &self.entries {
            counts[s as usize] += c;
        }
        counts
    }

    pub fn marginal_pattern(&self) -> Pattern {
        let rank = self.entries.values().sum::<u32>().trailing_zeros();
        Pattern::from_counts(rank, self.marginal()).expect("table of a group")
    }
}

impl fmt::Display for SunadaTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // descending s, then t, as the examples list them
        let mut parts: Vec<((u32, u32), u32)> = self.non_identity().into_iter().collect();
        parts.sort_by(|a, b| b.0 .0.cmp(&a.0 .0).then(b.0 .1.cmp(&a.0 .1)));
        let text: Vec<String> =
            parts.iter().map(|((s, t), c)| alloc::format!("c_{{{s},{t}}}={c}")).collect();
        f.write_str(&text.join(" "))
    }
}

/// Sunada isospectrality: equal tables.
pub fn is_sunada_isospectral(a: &BieberbachGroup, b: &BieberbachGroup) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::usage(alloc::format!(
            "groups of dimensions {} and {} cannot be isospectral",
            a.dim(),
            b.dim()
        )));
    }
    Ok(a.sunada_table() == b.sunada_table())
}

fn main_translations(layout: &Layout, k: u32) -> Result<Vec<HalfVector>> {
    let n = layout.dim();
    let first = |text: &str| -> Result<usize> {
        let chi = CharMask::parse(k, text)?;
        layout
            .first_coordinate(chi)
            .ok_or_else(|| Error::usage(alloc::format!("no coordinate carries χ{chi}")))
    };
    let mut gens = vec![
        HalfVector::from_coordinates(n, &[first("2")?])?,
        HalfVector::from_coordinates(n, &[first("23")?, first("3")?])?,
    ];
    let base = first("1")?;
    for m in 3..=k as usize {
        gens.push(HalfVector::from_coordinates(n, &[base + m - 3])?);
    }
    Ok(gens)
}

/// The rep `2^{k-2} χ_1 + Σ_{2∈I, 1∉I} 2 χ_I + q χ_3` with `q = n - 3·2^{k-2}`.
pub fn main_rep(k: u32, n: u32) -> Result<DiagonalRep> {
    if k < 3 {
        return Err(Error::usage(alloc::format!("the construction needs k >= 3, got {k}")));
    }
    let base = 3u64 << (k - 2);
    if (n as u64) < base + 1 {
        return Err(Error::usage(alloc::format!(
            "the construction needs n >= 3·2^(k-2) + 1 = {}, got {n}",
            base + 1
        )));
    }
    let q = n as u64 - base;
    let mut mult = vec![0u32; 1 << k];
    mult[1] = 1 << (k - 2);
    for (bits, slot) in mult.iter_mut().enumerate() {
        if bits & 2 != 0 && bits & 1 == 0 {
            *slot = 2;
        }
    }
    mult[4] += q as u32;
    DiagonalRep::new(k, mult)
}

/// The isospectral pair `(Γ, Γ')` with holonomy `ρ` (see [`main_rep`]) and
/// its flip along `(f_1, f_2)`, blocks in lexicographic order.
pub fn construct_main_pair(k: u32, n: u32) -> Result<(BieberbachGroup, BieberbachGroup)> {
    let rho = main_rep(k, n)?;
    let rho_prime = apply_flip(&rho, &FlipSpec::standard(k)?)?
        .map_err(|why| Error::usage(alloc::format!("{why}")))?;
    let build = |rep: &DiagonalRep| -> Result<BieberbachGroup> {
        let layout = Layout::from_rep(rep, BlockOrder::Lexicographic);
        let gens = main_translations(&layout, k)?;
        BieberbachGroup::new(layout, gens)
    };
    Ok((build(&rho)?, build(&rho_prime)?))
}

/// Search space for [`find_translations`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TranslationSearch {
    /// each generator carries `½` on at most two coordinates of a block
    #[default]
    Restricted,
    Wide,
}

/// Largest rank accepted by [`find_translations`].
pub const MAX_SEARCH_RANK: u32 = 6;

/// Looks for translations making the diagonal group with holonomy `rep`
/// (graded layout) torsion-free. Deterministic; `None` when the search space
/// holds no solution.
///
/// Only the row vectors `v_j = (b_1[j], …, b_k[j])` matter, and within a
/// block only the set of distinct rows modulo the block character. The search
/// covers the nonzero elements: row `v` in block `χ` serves every `f` with
/// `χ(f) = 1` and `⟨v, f⟩` odd.
pub fn find_translations(rep: &DiagonalRep, mode: TranslationSearch) -> Result<Option<BieberbachGroup>> {
    if !rep.is_faithful() {
        return Err(Error::usage("translations are only sought for faithful representations"));
    }
    let k = rep.rank();
    if k > MAX_SEARCH_RANK {
        return Err(Error::capability(alloc::format!(
            "translation search is limited to k <= {MAX_SEARCH_RANK}"
        )));
    }
    let layout = Layout::from_rep(rep, BlockOrder::Graded);
    let blocks: Vec<(u32, u32)> = BlockOrder::Graded
        .characters(k)?
        .into_iter()
        .map(|c| (c.bits(), rep.multiplicity(c)))
        .filter(|&(_, q)| q > 0)
        .collect();
    let mut state = CoverState {
        k,
        mode,
        blocks: &blocks,
        chosen: vec![Vec::new(); blocks.len()],
    };
    if !state.search(0) {
        return Ok(None);
    }
    let n = layout.dim();
    let mut gens = vec![HalfVector::zero(n); k as usize];
    for ((chi, _), rows) in blocks.iter().zip(&state.chosen) {
        let start = layout
            .first_coordinate(CharMask::new(k, *chi)?)
            .expect("block present");
        for (offset, &v) in rows.iter().enumerate() {
            for (i, g) in gens.iter_mut().enumerate() {
                if v >> i & 1 == 1 {
                    g.bits |= 1 << (start + offset);
                }
            }
        }
    }
    let group = BieberbachGroup::new(layout, gens)?;
    debug_assert!(group.is_torsion_free());
    Ok(Some(group))
}

struct CoverState<'a> {
    k: u32,
    mode: TranslationSearch,
    blocks: &'a [(u32, u32)],
    chosen: Vec<Vec<u32>>,
}

impl CoverState<'_> {
    fn covered(&self, f: u32) -> bool {
        self.blocks.iter().zip(&self.chosen).any(|(&(chi, _), rows)| {
            !pairing_is_minus(chi, f) && rows.iter().any(|&v| pairing_is_minus(v, f))
        })
    }

    fn allowed(&self, block: usize, v: u32) -> bool {
        let (chi, q) = self.blocks[block];
        let rows = &self.chosen[block];
        if rows.len() as u32 >= q || rows.iter().any(|&w| w == v || w == v ^ chi) {
            return false;
        }
        match self.mode {
            TranslationSearch::Wide => true,
            TranslationSearch::Restricted => (0..self.k).all(|i| {
                v >> i & 1 == 0 || rows.iter().filter(|&&w| w >> i & 1 == 1).count() < 2
            }),
        }
    }

    fn search(&mut self, from: u32) -> bool {
        let Some(f) = (from.max(1)..1 << self.k).find(|&f| !self.covered(f)) else {
            return true;
        };
        for block in 0..self.blocks.len() {
            let chi = self.blocks[block].0;
            if pairing_is_minus(chi, f) {
                continue;
            }
            for v in 1u32..1 << self.k {
                // rows v and v ^ chi act alike on the elements fixing the block
                if v > v ^ chi || !pairing_is_minus(v, f) || !self.allowed(block, v) {
                    continue;
                }
                self.chosen[block].push(v);
                if self.search(f + 1) {
                    return true;
                }
                self.chosen[block].pop();
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{kahler_obstruction, primitive_counts};
    use proptest::prelude::*;

    fn el(k: u32, s: &str) -> CharMask {
        CharMask::parse(k, s).unwrap()
    }

    #[test]
    fn element_translations() {
        let n = 4;
        let gens = [HalfVector::zero(n), HalfVector::zero(n)];
        let all = derive_element_translations(2, &gens).unwrap();
        assert!(all.iter().all(|v| v.bits() == 0));
        let b1 = HalfVector::from_coordinates(n, &[0, 1]).unwrap();
        let b2 = HalfVector::from_coordinates(n, &[1, 2]).unwrap();
        let all = derive_element_translations(2, &[b1, b2]).unwrap();
        assert_eq!(all[3].numerators(), [1, 0, 1, 0]);
        assert!(derive_element_translations(3, &[b1, b2]).is_err());
    }

    #[test]
    fn pure_point_group_has_torsion() {
        let rep = DiagonalRep::from_display(2, &[1, 1, 1], 0).unwrap();
        let layout = Layout::from_rep(&rep, BlockOrder::Graded);
        let group = BieberbachGroup::new(layout, vec![HalfVector::zero(3); 2]).unwrap();
        assert_eq!(group.torsion_witness(), Some(el(2, "1")));
    }

    #[test]
    fn main_pair_for_k3_n8() {
        let (g, gp) = construct_main_pair(3, 8).unwrap();
        assert_eq!(g.rep().to_display(), [2, 2, 2, 0, 0, 2, 0]);
        assert_eq!(gp.rep().to_display(), [3, 1, 2, 0, 1, 1, 0]);
        // half entries in 1-based rows: b1 on 3, b2 on 5 and 7, b3 on 1
        let rows = |v: &HalfVector| (0..8).filter(|&j| v.is_half(j)).map(|j| j + 1).collect::<Vec<_>>();
        let gens = g.generator_translations();
        assert_eq!((rows(&gens[0]), rows(&gens[1]), rows(&gens[2])), (vec![3], vec![5, 7], vec![1]));
        let gens = gp.generator_translations();
        assert_eq!((rows(&gens[0]), rows(&gens[1]), rows(&gens[2])), (vec![5], vec![6, 7], vec![1]));
        assert!(g.is_torsion_free() && gp.is_torsion_free());
        assert!(is_sunada_isospectral(&g, &gp).unwrap());
        assert_eq!(g.half_fixed_count(el(3, "1")).unwrap(), 1);
        assert_eq!(gp.half_fixed_count(el(3, "2")).unwrap(), 1);
        assert_eq!(g.half_fixed_count(el(3, "3")).unwrap(), 1);
        assert_eq!(g.half_fixed_count(el(3, "0")).unwrap(), 0);
    }

    #[test]
    fn main_pair_small_and_invalid() {
        let (g, gp) = construct_main_pair(3, 7).unwrap();
        assert_eq!(g.rep().to_display(), [2, 2, 1, 0, 0, 2, 0]);
        assert_eq!(gp.rep().to_display(), [3, 1, 1, 0, 1, 1, 0]);
        assert!(g.is_torsion_free() && gp.is_torsion_free());
        assert!(is_sunada_isospectral(&g, &gp).unwrap());
        assert!(construct_main_pair(3, 6).is_err());
        assert!(construct_main_pair(2, 9).is_err());
    }

    #[test]
    fn main_pair_sweep() {
        for k in 3..=5u32 {
            let m = 1u64 << (k - 2);
            let min = 3 * (1u32 << (k - 2)) + 1;
            for n in min..min + 5 {
                let (g, gp) = construct_main_pair(k, n).unwrap();
                assert!(g.is_torsion_free() && gp.is_torsion_free(), "k={k} n={n}");
                assert!(is_sunada_isospectral(&g, &gp).unwrap());
                let p = primitive_counts(&g.rep());
                let pp = primitive_counts(&gp.rep());
                let q = (n - 3 * (1u32 << (k - 2))) as u64;
                assert_eq!(p[4], 16 * m * (m - 1) * (m.saturating_sub(2)) / 24);
                if k >= 4 {
                    assert_eq!(p[5], 16 * q * m * (m - 2) * (m.saturating_sub(4)) / 24);
                    assert!(pp[5] > p[5]);
                }
                assert!(pp[4] > p[4]);
                let top = k as usize + 1;
                assert_eq!(p[top], 0);
                assert!(pp[top] > 0);
                if n % 2 == 0 {
                    assert!(!kahler_obstruction(&g.rep()).unwrap());
                    assert!(kahler_obstruction(&gp.rep()).unwrap());
                }
            }
        }
    }

    #[test]
    fn sunada_table_shape() {
        let (g, _) = construct_main_pair(3, 8).unwrap();
        let table = g.sunada_table();
        assert_eq!(table.entries().values().sum::<u32>(), 8);
        assert_eq!(table.get(8, 0), 1);
        assert_eq!(table.marginal_pattern(), g.rep().pattern());
        assert!(!table.non_identity().contains_key(&(8, 0)));
    }

    #[test]
    fn translation_search() {
        let rep = DiagonalRep::from_display(3, &[2, 2, 2, 0, 0, 2, 0], 0).unwrap();
        let group = find_translations(&rep, TranslationSearch::Restricted).unwrap().unwrap();
        assert!(group.is_torsion_free());
        assert_eq!(group.rep(), rep);

        let line = DiagonalRep::from_display(1, &[2], 0).unwrap();
        assert!(find_translations(&line, TranslationSearch::Wide).unwrap().is_none());

        let trivial = DiagonalRep::from_display(2, &[0, 0, 0], 3).unwrap();
        assert!(find_translations(&trivial, TranslationSearch::Restricted).is_err());
    }

    #[test]
    fn translation_search_is_exhaustive_for_k1_n2() {
        // every choice of b_1 fails because -Id fixes nothing
        let rep = DiagonalRep::from_display(1, &[2], 0).unwrap();
        for bits in 0u64..4 {
            let layout = Layout::from_rep(&rep, BlockOrder::Graded);
            let b = HalfVector { bits, len: 2 };
            assert!(!BieberbachGroup::new(layout, vec![b]).unwrap().is_torsion_free());
        }
    }

    #[test]
    fn column_rendering() {
        let (g, _) = construct_main_pair(3, 8).unwrap();
        let text = g.render_columns();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 9);
        assert!(lines[1].starts_with("χ1 "));
        assert!(lines[1].contains("-1  "));
        assert!(lines[3].contains('½'));
    }

    // exhaustive oracle: does any assignment of translations give a torsion-free group?
    fn brute_exists(rep: &DiagonalRep) -> bool {
        let layout = Layout::from_rep(rep, BlockOrder::Graded);
        let n = layout.dim();
        let k = rep.rank();
        let total_bits = n * k;
        (0u64..1 << total_bits).any(|code| {
            let gens: Vec<HalfVector> = (0..k)
                .map(|i| HalfVector { bits: code >> (i * n) & ((1 << n) - 1), len: n })
                .collect();
            BieberbachGroup::new(layout.clone(), gens).unwrap().is_torsion_free()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn wide_search_is_complete(k in 1u32..=2, mult in proptest::collection::vec(0u32..=3, 4)) {
            let mult: Vec<u32> = mult.into_iter().take(1 << k).collect();
            let n: u32 = mult.iter().sum();
            prop_assume!(n >= 1 && n * k <= 14);
            let rep = DiagonalRep::new(k, mult).unwrap();
            prop_assume!(rep.is_faithful());
            let found = find_translations(&rep, TranslationSearch::Wide).unwrap();
            prop_assert_eq!(found.is_some(), brute_exists(&rep));
            if let Some(g) = found {
                prop_assert!(g.is_torsion_free());
                prop_assert_eq!(g.rep(), rep);
            }
        }

        #[test]
        fn translations_are_additive(k in 1u32..=4, seeds in proptest::collection::vec(any::<u64>(), 4), a in any::<u32>(), b in any::<u32>()) {
            let n = 10;
            let gens: Vec<HalfVector> = seeds.iter().take(k as usize)
                .map(|&s| HalfVector { bits: s & 0x3ff, len: n }).collect();
            let all = derive_element_translations(k, &gens).unwrap();
            let mask = (1u32 << k) - 1;
            let (a, b) = ((a & mask) as usize, (b & mask) as usize);
            prop_assert_eq!(all[a ^ b], all[a].add(&all[b]));
            prop_assert_eq!(all[0].bits(), 0);
        }

        #[test]
        fn torsion_free_groups_fix_a_coordinate(k in 1u32..=3, mult in proptest::collection::vec(0u32..=2, 8), code in any::<u64>()) {
            let mult: Vec<u32> = mult.into_iter().take(1 << k).collect();
            let n: u32 = mult.iter().sum();
            prop_assume!(n >= 1);
            let rep = DiagonalRep::new(k, mult).unwrap();
            let layout = Layout::from_rep(&rep, BlockOrder::Graded);
            let gens: Vec<HalfVector> = (0..k)
                .map(|i| HalfVector { bits: (code >> (i * 16)) & ((1u64 << n) - 1), len: n })
                .collect();
            let group = BieberbachGroup::new(layout, gens).unwrap();
            prop_assert_eq!(group.sunada_table().marginal_pattern(), rep.pattern());
            if group.is_torsion_free() {
                prop_assert!(rep.fixed_dims().iter().all(|&d| d >= 1));
            }
        }
    }
}
