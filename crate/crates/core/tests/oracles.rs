use isoflat_core::bieberbach::{construct_main_pair, is_sunada_isospectral};
use isoflat_core::cohomology::{betti_numbers, kahler_obstruction, primitive_counts};
use isoflat_core::flip::{apply_flip, FlipSpec};
use isoflat_core::search::{enumerate_families, SearchConfig};
use isoflat_core::{Automorphism, CharMask, DiagonalRep};
use proptest::prelude::*;

/// Characters of the coordinates, blocks in numeric order.
fn coordinate_chars(rep: &DiagonalRep) -> Vec<u32> {
    rep.multiplicities()
        .iter()
        .enumerate()
        .flat_map(|(bits, &q)| std::iter::repeat_n(bits as u32, q as usize))
        .collect()
}

/// Invariant monomials per degree, by walking every subset of coordinates.
fn brute_betti(rep: &DiagonalRep) -> Vec<u64> {
    let chars = coordinate_chars(rep);
    let n = chars.len();
    let mut out = vec![0u64; n + 1];
    for subset in 0u32..1 << n {
        let acc = (0..n).filter(|j| subset >> j & 1 == 1).fold(0, |a, j| a ^ chars[j]);
        if acc == 0 {
            out[subset.count_ones() as usize] += 1;
        }
    }
    out
}

/// Invariant monomials with no proper nonempty invariant factor.
fn brute_prim(rep: &DiagonalRep) -> Vec<u64> {
    let chars = coordinate_chars(rep);
    let n = chars.len();
    let xor = |s: u32| (0..n).filter(|j| s >> j & 1 == 1).fold(0, |a, j| a ^ chars[j]);
    let mut out = vec![0u64; n + 1];
    out[0] = 1;
    for subset in 1u32..1 << n {
        if xor(subset) != 0 {
            continue;
        }
        let mut sub = (subset - 1) & subset;
        let mut primitive = true;
        while sub != 0 {
            if xor(sub) == 0 {
                primitive = false;
                break;
            }
            sub = (sub - 1) & subset;
        }
        if primitive {
            out[subset.count_ones() as usize] += 1;
        }
    }
    out
}

fn pairs_up(chars: &mut Vec<u32>) -> bool {
    let Some(first) = chars.pop() else { return true };
    for i in 0..chars.len() {
        if chars[i] == first {
            let other = chars.remove(i);
            let ok = pairs_up(chars);
            chars.insert(i, other);
            if ok {
                chars.push(first);
                return true;
            }
        }
    }
    chars.push(first);
    false
}

fn arb_rep(max_n: u32) -> impl Strategy<Value = DiagonalRep> {
    (1u32..=4).prop_flat_map(move |k| {
        proptest::collection::vec(0u32..=3, 1usize << k).prop_filter_map("size", move |mult| {
            let n: u32 = mult.iter().sum();
            (1..=max_n).contains(&n).then(|| DiagonalRep::new(k, mult).unwrap())
        })
    })
}

fn arb_automorphism(k: u32) -> impl Strategy<Value = Automorphism> {
    proptest::collection::vec(1u32..1 << k, k as usize).prop_filter_map("invertible", move |imgs| {
        let imgs: Vec<CharMask> = imgs.into_iter().map(|b| CharMask::new(k, b).unwrap()).collect();
        Automorphism::from_images(&imgs).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn betti_matches_subset_count(rep in arb_rep(12)) {
        prop_assert_eq!(betti_numbers(&rep), brute_betti(&rep));
    }

    #[test]
    fn primitive_counts_match_subset_search(rep in arb_rep(11)) {
        prop_assert_eq!(primitive_counts(&rep), brute_prim(&rep));
    }

    #[test]
    fn betti_sum_and_euler_characteristic(rep in arb_rep(20)) {
        let b = betti_numbers(&rep);
        if rep.is_faithful() {
            prop_assert_eq!(b.iter().sum::<u64>(), 1u64 << (rep.dim() - rep.rank()));
        }
        if rep.fixed_dims().iter().all(|&d| d >= 1) {
            let alt: i64 = b.iter().enumerate().map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
            prop_assert_eq!(alt, 0);
        }
        if rep.is_orientable() {
            let mut rev = b.clone();
            rev.reverse();
            prop_assert_eq!(rev, b);
        }
    }

    #[test]
    fn kahler_parity_matches_pairing(rep in arb_rep(12)) {
        prop_assume!(rep.dim() % 2 == 0);
        let mut chars = coordinate_chars(&rep);
        prop_assert_eq!(kahler_obstruction(&rep).unwrap(), !pairs_up(&mut chars));
    }

    #[test]
    fn invariants_are_class_functions((rep, phi) in (2u32..=4).prop_flat_map(|k| {
        let mult = proptest::collection::vec(0u32..=3, 1usize << k);
        (mult.prop_filter_map("nonempty", move |m| DiagonalRep::new(k, m).ok()), arb_automorphism(k))
    })) {
        let image = rep.transform(&phi).unwrap();
        prop_assert_eq!(image.pattern(), rep.pattern());
        prop_assert_eq!(betti_numbers(&image), betti_numbers(&rep));
        prop_assert_eq!(primitive_counts(&image), primitive_counts(&rep));
        prop_assert!(image.are_equivalent(&rep));
        prop_assert_eq!(image.canonical_form().unwrap(), rep.canonical_form().unwrap());
    }
}

#[test]
fn main_pair_is_isospectral_for_small_parameters() {
    for (k, n) in [(3, 7), (3, 10), (4, 13), (4, 16)] {
        let (g, gp) = construct_main_pair(k, n).unwrap();
        assert!(g.is_torsion_free() && gp.is_torsion_free());
        assert!(is_sunada_isospectral(&g, &gp).unwrap());
        assert!(!g.rep().are_equivalent(&gp.rep()));
    }
}

#[test]
fn enumerated_families_are_almost_conjugate_and_inequivalent() {
    let cfg = SearchConfig::with_range(3, 7, 12);
    for (n, families) in enumerate_families(&cfg).unwrap() {
        let mut patterns = std::collections::BTreeSet::new();
        for f in &families {
            assert!(patterns.insert(f.pattern.clone()), "n = {n}");
            for (i, a) in f.members.iter().enumerate() {
                assert!(a.rep.is_faithful() && !a.rep.contains_minus_identity() && a.rep.q0() == 0);
                for b in &f.members[i + 1..] {
                    assert_eq!(a.rep.pattern(), b.rep.pattern());
                    assert!(!a.rep.are_equivalent(&b.rep));
                }
            }
        }
    }
}

#[test]
fn standard_flip_of_the_dim8_rep() {
    let rep = DiagonalRep::from_display(3, &[2, 2, 2, 0, 0, 2, 0], 0).unwrap();
    let flipped = apply_flip(&rep, &FlipSpec::standard(3).unwrap()).unwrap().unwrap();
    assert_eq!(flipped.to_display(), [3, 1, 2, 0, 1, 1, 0]);
    assert_eq!(primitive_counts(&rep).iter().sum::<u64>(), 13);
    assert_eq!(primitive_counts(&flipped).iter().sum::<u64>(), 16);
}
