//! Human table, CSV and JSON renderings of enumeration results.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use isoflat_core::{DiagonalRep, Family, Member, Pattern, SearchConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

/// Enumeration results for one rank, one entry per dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub config: SearchConfig,
    pub blocks: Vec<(u32, Vec<Family>)>,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Table => Ok(table(self)),
            Format::Csv => csv(self),
            Format::Json => json(self),
        }
    }
}

pub fn family_label(k: u32, n: u32, id: usize) -> String {
    format!("F^{{{k},{n}}}_{id}")
}

fn join<T: ToString>(values: &[T], sep: &str) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

/// P columns shown in tables: `P_4 .. P_{k+1}`.
fn table_prims(k: u32, m: &Member) -> Vec<u64> {
    (4..=k as usize + 1).map(|p| m.prim.get(p).copied().unwrap_or(0)).collect()
}

pub fn table(report: &Report) -> String {
    let k = report.config.rank;
    let mut out = String::new();
    let p_head: Vec<String> = (4..=k + 1).map(|p| format!("P_{p}")).collect();
    let _ = writeln!(out, "k = {k}");
    for (n, families) in &report.blocks {
        let _ = writeln!(out);
        let _ = writeln!(out, "n = {n}: {} families", families.len());
        if families.is_empty() {
            continue;
        }
        let labels: Vec<String> =
            (1..=families.len()).map(|i| family_label(k, *n, i)).collect();
        let rows: Vec<Vec<String>> = families
            .iter()
            .flat_map(|f| f.members.iter())
            .map(|m| {
                let mut row = vec![format!("[{}]", join(&m.rep.to_display(), ","))];
                row.extend(table_prims(k, m).iter().map(u64::to_string));
                row
            })
            .collect();
        let lw = labels.iter().map(String::len).max().unwrap_or(0).max(6);
        let mut widths = vec!["q".len(); 1 + p_head.len()];
        for (i, h) in p_head.iter().enumerate() {
            widths[i + 1] = h.len();
        }
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut line = format!("{:<lw$}  {:<w$}", "family", "q", w = widths[0]);
        for (h, w) in p_head.iter().zip(&widths[1..]) {
            let _ = write!(line, "  {h:>w$}");
        }
        let _ = writeln!(out, "{line}");
        let mut rows = rows.into_iter();
        for (label, family) in labels.iter().zip(families) {
            for (i, row) in rows.by_ref().take(family.len()).enumerate() {
                let name = if i == 0 { label.as_str() } else { "" };
                let mut line = format!("{name:<lw$}  {:<w$}", row[0], w = widths[0]);
                for (cell, w) in row[1..].iter().zip(&widths[1..]) {
                    let _ = write!(line, "  {cell:>w$}");
                }
                let _ = writeln!(out, "{}", line.trim_end());
            }
        }
    }
    out
}

pub fn csv(report: &Report) -> Result<String> {
    let k = report.config.rank;
    let mut w = ::csv::Writer::from_writer(Vec::new());
    let mut header = vec!["k".to_string(), "n".into(), "family".into(), "q".into()];
    header.extend((2..=k + 1).map(|p| format!("P_{p}")));
    header.push("betti".into());
    w.write_record(&header)?;
    for (n, families) in &report.blocks {
        for (id, family) in families.iter().enumerate() {
            for m in &family.members {
                let mut rec =
                    vec![k.to_string(), n.to_string(), (id + 1).to_string(), join(&m.rep.to_display(), ",")];
                rec.extend((2..=k as usize + 1).map(|p| m.prim.get(p).copied().unwrap_or(0).to_string()));
                rec.push(join(&m.betti, " "));
                w.write_record(&rec)?;
            }
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonFilters {
    pub require_faithful: bool,
    pub forbid_minus_id: bool,
    pub require_q0_zero: bool,
    pub min_family_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonMember {
    /// Multiplicities in bracket order, `q_∅` excluded.
    pub q: Vec<u32>,
    pub q0: u32,
    pub prim: Vec<u64>,
    pub betti: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonFamily {
    pub pattern: Vec<u32>,
    pub members: Vec<JsonMember>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonBlock {
    pub k: u32,
    pub n: u32,
    pub filters: JsonFilters,
    pub families: Vec<JsonFamily>,
}

fn to_json_block(cfg: &SearchConfig, n: u32, families: &[Family]) -> JsonBlock {
    JsonBlock {
        k: cfg.rank,
        n,
        filters: JsonFilters {
            require_faithful: cfg.require_faithful,
            forbid_minus_id: cfg.forbid_minus_id,
            require_q0_zero: cfg.require_q0_zero,
            min_family_size: cfg.min_family_size,
        },
        families: families
            .iter()
            .map(|f| JsonFamily {
                pattern: f.pattern.counts().to_vec(),
                members: f
                    .members
                    .iter()
                    .map(|m| JsonMember {
                        q: m.rep.to_display(),
                        q0: m.rep.q0(),
                        prim: m.prim.clone(),
                        betti: m.betti.clone(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// One JSON document per dimension, one per line.
pub fn json(report: &Report) -> Result<String> {
    let mut out = String::new();
    for (n, families) in &report.blocks {
        out.push_str(&serde_json::to_string(&to_json_block(&report.config, *n, families))?);
        out.push('\n');
    }
    Ok(out)
}

fn family_from_json(k: u32, f: JsonFamily) -> Result<Family> {
    let pattern = Pattern::from_counts(k, f.pattern)?;
    let mut members = Vec::with_capacity(f.members.len());
    for m in f.members {
        let rep = DiagonalRep::from_display(k, &m.q, m.q0)?;
        if rep.dim() != pattern.dim() {
            bail!("member dimension {} does not match its pattern", rep.dim());
        }
        members.push(Member { rep, prim: m.prim, betti: m.betti });
    }
    Ok(Family { pattern, members })
}

/// Parses the output of [`json`] back into families per dimension.
pub fn parse_json(text: &str) -> Result<Vec<(u32, Vec<Family>)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let block: JsonBlock =
            serde_json::from_str(line).with_context(|| format!("JSON line {}", i + 1))?;
        let families = block
            .families
            .into_iter()
            .map(|f| family_from_json(block.k, f))
            .collect::<Result<Vec<_>>>()?;
        out.push((block.n, families));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use isoflat_core::search::enumerate_families;

    fn sample() -> Report {
        let config = SearchConfig::with_range(3, 7, 8);
        let blocks = enumerate_families(&config).unwrap();
        Report { config, blocks }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let text = json(&r).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(parse_json(&text).unwrap(), r.blocks);
    }

    #[test]
    fn csv_shape() {
        let text = csv(&sample()).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("k,n,family,q,P_2,P_3,P_4,betti"));
        assert_eq!(lines.count(), 2 + 4);
        assert!(text.contains("3,7,1,\"3,1,1,1,0,1,0\","));
    }

    #[test]
    fn table_shape() {
        let text = table(&sample());
        assert!(text.contains("n = 7: 1 families"));
        assert!(text.contains("F^{3,7}_1"));
        assert!(text.contains("[3,1,1,1,0,1,0]"));
    }

    #[test]
    fn rejects_bad_json() {
        assert!(parse_json("{\"k\":3}").is_err());
        let bad = r#"{"k":3,"n":7,"filters":{"require_faithful":true,"forbid_minus_id":true,"require_q0_zero":true,"min_family_size":2},"families":[{"pattern":[0,0,0,0,0,0,0,7],"members":[]}]}"#;
        assert!(parse_json(bad).is_err());
    }
}
