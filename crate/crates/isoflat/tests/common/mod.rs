#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use isoflat_core::{DiagonalRep, Family};

/// One row of a golden table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub q: Vec<u32>,
    pub prims: Vec<u64>,
}

/// `n -> family id -> rows`, as transcribed in `tests/golden/table<id>.txt`.
pub type Golden = BTreeMap<u32, BTreeMap<u32, Vec<Row>>>;

pub fn golden_path(id: u32) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/table{id}.txt"))
}

pub fn load_golden(id: u32) -> Golden {
    let text = std::fs::read_to_string(golden_path(id)).expect("golden file");
    let mut out = Golden::new();
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()) {
        let cols: Vec<&str> = line.split_whitespace().collect();
        let n: u32 = cols[0].parse().unwrap();
        let fam: u32 = cols[1].parse().unwrap();
        let q = cols[2].split(',').map(|v| v.parse().unwrap()).collect();
        let prims = cols[3..].iter().map(|v| v.parse().unwrap()).collect();
        out.entry(n).or_default().entry(fam).or_default().push(Row { q, prims });
    }
    out
}

/// P columns printed in the tables: `P_4 .. P_{k+1}`.
pub fn printed_prims(k: u32, prim: &[u64]) -> Vec<u64> {
    (4..=k as usize + 1).map(|p| prim[p]).collect()
}

/// Families as sorted row lists, families sorted too.
pub fn normalize(mut fams: Vec<Vec<Row>>) -> Vec<Vec<Row>> {
    for f in &mut fams {
        f.sort_by(|a, b| b.q.cmp(&a.q));
    }
    fams.sort_by(|a, b| b[0].q.cmp(&a[0].q));
    fams
}

pub fn computed_rows(k: u32, families: &[Family]) -> Vec<Vec<Row>> {
    families
        .iter()
        .map(|f| {
            f.members
                .iter()
                .map(|m| Row { q: m.rep.to_display(), prims: printed_prims(k, &m.prim) })
                .collect()
        })
        .collect()
}

/// Exact comparison of one dimension block; `Err` carries the first mismatch.
pub fn compare_exact(k: u32, n: u32, golden: &BTreeMap<u32, Vec<Row>>, families: &[Family]) -> Result<(), String> {
    let want = normalize(golden.values().cloned().collect());
    let got = normalize(computed_rows(k, families));
    if want.len() != got.len() {
        return Err(format!("n = {n}: {} families expected, {} computed", want.len(), got.len()));
    }
    for (w, g) in want.iter().zip(&got) {
        if w != g {
            return Err(format!("n = {n}: expected family {w:?}, computed {g:?}"));
        }
    }
    Ok(())
}

/// Comparison up to equivalence: every printed family matches one computed
/// family member-for-member (equivalent reps, equal P columns).
pub fn compare_equivalence(k: u32, n: u32, golden: &BTreeMap<u32, Vec<Row>>, families: &[Family]) -> Result<(), String> {
    if golden.len() != families.len() {
        return Err(format!("n = {n}: {} families expected, {} computed", golden.len(), families.len()));
    }
    let mut used = vec![false; families.len()];
    for (id, rows) in golden {
        let reps: Vec<DiagonalRep> =
            rows.iter().map(|r| DiagonalRep::from_display(k, &r.q, 0).unwrap()).collect();
        let found = families.iter().enumerate().position(|(i, f)| {
            !used[i]
                && f.len() == rows.len()
                && rows.iter().zip(&reps).all(|(row, rep)| {
                    f.members.iter().any(|m| {
                        m.rep.are_equivalent(rep) && printed_prims(k, &m.prim) == row.prims
                    })
                })
        });
        match found {
            Some(i) => used[i] = true,
            None => return Err(format!("n = {n}: printed family {id} has no computed match")),
        }
    }
    Ok(())
}

/// Printed P cells that disagree with the counts computed from the printed
/// representations of the same rows.
pub struct Misprint {
    pub table: u32,
    pub n: u32,
    pub family: u32,
    /// index into the printed P columns (`0` is `P_4`)
    pub column: usize,
    /// per member, in printed order
    pub printed: [u64; 2],
    pub computed: [u64; 2],
}

pub const KNOWN_MISPRINTS: &[Misprint] =
    &[Misprint { table: 3, n: 9, family: 7, column: 1, printed: [4, 4], computed: [0, 0] }];

/// The golden table with [`KNOWN_MISPRINTS`] replaced by computed values.
pub fn corrected_golden(id: u32) -> Golden {
    let mut g = load_golden(id);
    for m in KNOWN_MISPRINTS.iter().filter(|m| m.table == id) {
        let rows = g.get_mut(&m.n).and_then(|f| f.get_mut(&m.family)).expect("misprint location");
        for (i, row) in rows.iter_mut().enumerate() {
            assert_eq!(row.prims[m.column], m.printed[i], "misprint list out of date");
            row.prims[m.column] = m.computed[i];
        }
    }
    g
}
