//! Explicit groups used as reference examples.

use alloc::vec;
use alloc::vec::Vec;

use crate::bieberbach::{BieberbachGroup, HalfVector};
use crate::chargroup::CharMask;
use crate::diagrep::{BlockOrder, DiagonalRep, Layout};
use crate::error::{Error, Result};

/// Bracket vectors `[q_1, q_2, q_3, q_12, q_13, q_23, q_123]` of the eight
/// 24-dimensional representations of `Z_2^3`.
pub const FAMILY24: [[u32; 7]; 8] = [
    [10, 6, 3, 2, 1, 1, 1],
    [10, 6, 2, 2, 2, 2, 0],
    [10, 5, 4, 3, 0, 1, 1],
    [10, 4, 4, 4, 0, 2, 0],
    [9, 7, 4, 2, 1, 1, 0],
    [9, 6, 5, 3, 0, 1, 0],
    [8, 8, 4, 2, 2, 0, 0],
    [8, 6, 6, 4, 0, 0, 0],
];

pub fn family24_rep(j: usize) -> Result<DiagonalRep> {
    if !(1..=8).contains(&j) {
        return Err(Error::usage(alloc::format!("family member j = {j} outside 1..=8")));
    }
    DiagonalRep::from_display(3, &FAMILY24[j - 1], 0)
}

/// Group `j` (1-based) of the 24-dimensional family: graded layout, and on
/// the first coordinate of each block the translation rows
/// `χ1: b3`, `χ2: b3`, `χ3: b1 + b2`, `χ12: b1`; all other entries zero.
pub fn construct_family24(j: usize) -> Result<BieberbachGroup> {
    let rep = family24_rep(j)?;
    let layout = Layout::from_rep(&rep, BlockOrder::Graded);
    let first = |s: &str| -> Result<usize> {
        layout
            .first_coordinate(CharMask::parse(3, s)?)
            .ok_or_else(|| Error::usage("missing block"))
    };
    let n = layout.dim();
    let b1 = HalfVector::from_coordinates(n, &[first("3")?, first("12")?])?;
    let b2 = HalfVector::from_coordinates(n, &[first("3")?])?;
    let b3 = HalfVector::from_coordinates(n, &[first("1")?, first("2")?])?;
    BieberbachGroup::new(layout, vec![b1, b2, b3])
}

/// The 7-dimensional pair with holonomy `Z_2^4`:
/// `ρ = 2χ1 + χ2 + χ3 + χ4 + χ23 + χ24` and
/// `ρ' = 2χ1 + χ2 + χ3 + χ4 + χ12 + χ234`, graded layout, both with
/// `b1 = ½(e3 + e5)`, `b2 = ½(e4 + e5)`, `b3 = ½(e1 + e5)`, `b4 = ½e6`.
pub fn dim7_pair() -> (BieberbachGroup, BieberbachGroup) {
    let build = |display: [u32; 15]| {
        let rep = DiagonalRep::from_display(4, &display, 0).expect("valid fixture");
        let layout = Layout::from_rep(&rep, BlockOrder::Graded);
        let rows: [&[usize]; 4] = [&[2, 4], &[3, 4], &[0, 4], &[5]];
        let gens: Vec<HalfVector> = rows
            .iter()
            .map(|r| HalfVector::from_coordinates(7, r).expect("in range"))
            .collect();
        BieberbachGroup::new(layout, gens).expect("valid fixture")
    };
    // graded order for k = 4: 1 2 3 4 12 13 14 23 24 34 123 124 134 234 1234
    (
        build([2, 1, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0]),
        build([2, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0]),
    )
}

/// The 8-dimensional pair from the main construction with `k = 3`.
pub fn dim8_pair() -> (BieberbachGroup, BieberbachGroup) {
    crate::bieberbach::construct_main_pair(3, 8).expect("valid parameters")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bieberbach::is_sunada_isospectral;
    use crate::cohomology::{
        betti_numbers, invariant_basis, kahler_obstruction, minimal_generator_count,
        primitive_basis, primitive_counts, DEFAULT_BASIS_BUDGET,
    };
    use alloc::collections::BTreeMap;
    use alloc::string::String;

    fn show(ms: &[crate::cohomology::Monomial]) -> Vec<String> {
        ms.iter().map(|m| alloc::format!("{m}")).collect()
    }

    #[test]
    fn dim7_layout_and_invariants() {
        let (g, gp) = dim7_pair();
        let chars = |grp: &BieberbachGroup| {
            grp.layout().coordinates().iter().map(|c| alloc::format!("{c}")).collect::<Vec<_>>()
        };
        assert_eq!(chars(&g), ["1", "1", "2", "3", "4", "23", "24"]);
        assert_eq!(chars(&gp), ["1", "1", "2", "3", "4", "12", "234"]);
        assert!(g.is_torsion_free() && gp.is_torsion_free());
        assert!(is_sunada_isospectral(&g, &gp).unwrap());
        let b = DEFAULT_BASIS_BUDGET;
        assert_eq!(show(&invariant_basis(g.layout(), 3, b).unwrap()), ["346", "357"]);
        assert_eq!(show(&invariant_basis(gp.layout(), 3, b).unwrap()), ["136", "236"]);
        assert_eq!(show(&primitive_basis(gp.layout(), 5, b).unwrap()), ["14567", "24567"]);
        assert!(primitive_basis(g.layout(), 5, b).unwrap().is_empty());
        assert_eq!(betti_numbers(&g.rep()), [1, 0, 1, 2, 1, 2, 1, 0]);
        assert_eq!(betti_numbers(&gp.rep()), [1, 0, 1, 2, 1, 2, 1, 0]);
        assert_eq!(minimal_generator_count(&g.rep()), 5);
        assert_eq!(minimal_generator_count(&gp.rep()), 7);
    }

    #[test]
    fn dim7_sunada_numbers() {
        let (g, _) = dim7_pair();
        let expected: BTreeMap<(u32, u32), u32> =
            [((5, 1), 1), ((5, 2), 2), ((4, 2), 2), ((4, 1), 2), ((3, 1), 2), ((3, 2), 1), ((2, 1), 4), ((1, 1), 1)]
                .into_iter()
                .collect();
        assert_eq!(g.sunada_table().non_identity(), expected);
    }

    #[test]
    fn family24() {
        let reference = construct_family24(1).unwrap();
        for j in 1..=8 {
            let g = construct_family24(j).unwrap();
            assert!(g.is_torsion_free(), "j={j}");
            assert_eq!(g.rep().pattern(), reference.rep().pattern());
            assert!(is_sunada_isospectral(&g, &reference).unwrap());
            let p = primitive_counts(&g.rep());
            assert_eq!((p[2], p[3]), (64, 192));
            let even = FAMILY24[j - 1].iter().all(|q| q % 2 == 0);
            assert_eq!(kahler_obstruction(&g.rep()).unwrap(), !even);
        }
        let p4: Vec<u64> = (1..=8).map(|j| primitive_counts(&family24_rep(j).unwrap())[4]).collect();
        assert_eq!(p4, [371, 368, 335, 320, 191, 135, 128, 0]);
        let expected: BTreeMap<(u32, u32), u32> =
            [((4, 1), 1), ((6, 1), 1), ((8, 1), 1), ((10, 1), 1), ((12, 1), 1), ((14, 1), 1), ((18, 2), 1)]
                .into_iter()
                .collect();
        assert_eq!(reference.sunada_table().non_identity(), expected);
        let rho8 = family24_rep(8).unwrap();
        let names = ["1", "2", "3", "12", "13", "23", "123"];
        let dims: Vec<u32> =
            names.iter().map(|s| rho8.fixed_dim(CharMask::parse(3, s).unwrap()).unwrap()).collect();
        assert_eq!(dims, [12, 14, 18, 10, 6, 8, 4]);
        assert!(construct_family24(0).is_err() && construct_family24(9).is_err());
    }

    #[test]
    fn family24_translation_entries() {
        let g = construct_family24(1).unwrap();
        let row = |s: &str| g.layout().first_coordinate(CharMask::parse(3, s).unwrap()).unwrap();
        let b12 = g.element_translation(CharMask::parse(3, "12").unwrap()).unwrap();
        assert!(b12.is_half(row("12")));
        assert!(!b12.is_half(row("3")));
    }
}
