//! The BGF text format for Bieberbach groups of diagonal type.
//!
//! ```text
//! BGF1
//! k=<int> n=<int>
//! B1 <n entries, each + or ->
//! b1 <n entries, each 0 or 1>
//! ...
//! Bk ...
//! bk ...
//! # optional trailing comment lines
//! ```
//!
//! Entries are separated by single spaces. `b<i>` lists the numerators of the
//! halves of the translation of generator `i`.

use std::path::Path;

use isoflat_core::{BieberbachGroup, CharMask, HalfVector, Layout, Sign, MAX_DIM, MAX_RANK};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BgfError {
    #[error("BGF line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("BGF: {0}")]
    Group(#[from] isoflat_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn syntax(line: usize, message: impl Into<String>) -> BgfError {
    BgfError::Syntax { line, message: message.into() }
}

pub fn write(group: &BieberbachGroup) -> String {
    let mut out = String::from("BGF1\n");
    out.push_str(&format!("k={} n={}\n", group.rank(), group.dim()));
    for i in 0..group.rank() as usize {
        let signs: Vec<&str> = group
            .generator_signs(i)
            .iter()
            .map(|s| if *s == Sign::Minus { "-" } else { "+" })
            .collect();
        out.push_str(&format!("B{} {}\n", i + 1, signs.join(" ")));
        out.push_str(&format!("b{} {}\n", i + 1, group.generator_translations()[i]));
    }
    out.push_str(&format!("# holonomy {}\n", group.rep().terms()));
    out
}

fn entries<'a>(line_no: usize, line: &'a str, tag: &str, n: usize) -> Result<Vec<&'a str>, BgfError> {
    let rest = line
        .strip_prefix(tag)
        .and_then(|r| r.strip_prefix(' '))
        .ok_or_else(|| syntax(line_no, format!("expected a line starting with `{tag} `")))?;
    let parts: Vec<&str> = rest.split(' ').collect();
    if parts.len() != n {
        return Err(syntax(line_no, format!("expected {n} entries after `{tag}`, found {}", parts.len())));
    }
    Ok(parts)
}

fn parse_header(line_no: usize, line: &str) -> Result<(u32, u32), BgfError> {
    let bad = || syntax(line_no, "expected `k=<int> n=<int>`");
    let (k_part, n_part) = line.split_once(' ').ok_or_else(bad)?;
    let k: u32 = k_part.strip_prefix("k=").ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let n: u32 = n_part.strip_prefix("n=").ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if k == 0 || k > MAX_RANK {
        return Err(syntax(line_no, format!("k must lie in 1..={MAX_RANK}")));
    }
    if n == 0 || n > MAX_DIM {
        return Err(syntax(line_no, format!("n must lie in 1..={MAX_DIM}")));
    }
    Ok((k, n))
}

pub fn parse(text: &str) -> Result<BieberbachGroup, BgfError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let lines: Vec<&str> = body.split('\n').collect();
    if lines.first() != Some(&"BGF1") {
        return Err(syntax(1, "expected `BGF1`"));
    }
    let header = lines.get(1).ok_or_else(|| syntax(2, "missing `k=<int> n=<int>` line"))?;
    let (k, n) = parse_header(2, header)?;
    let needed = 2 + 2 * k as usize;
    if lines.len() < needed {
        return Err(syntax(lines.len() + 1, "file ends before all generators are given"));
    }
    let mut chars = vec![0u32; n as usize];
    let mut gens = Vec::with_capacity(k as usize);
    for i in 0..k as usize {
        let sign_no = 3 + 2 * i;
        let signs = entries(sign_no, lines[sign_no - 1], &format!("B{}", i + 1), n as usize)?;
        for (j, s) in signs.iter().enumerate() {
            match *s {
                "+" => {}
                "-" => chars[j] |= 1 << i,
                other => return Err(syntax(sign_no, format!("sign entry `{other}` is not + or -"))),
            }
        }
        let half_no = sign_no + 1;
        let halves = entries(half_no, lines[half_no - 1], &format!("b{}", i + 1), n as usize)?;
        let mut numerators = Vec::with_capacity(n as usize);
        for h in halves {
            numerators.push(match h {
                "0" => 0,
                "1" => 1,
                other => return Err(syntax(half_no, format!("translation entry `{other}` is not 0 or 1"))),
            });
        }
        gens.push(HalfVector::from_numerators(&numerators)?);
    }
    for (idx, line) in lines.iter().enumerate().skip(needed) {
        if !line.starts_with('#') {
            return Err(syntax(idx + 1, "only `#` comment lines may follow the generators"));
        }
    }
    let coords = chars
        .into_iter()
        .map(|bits| CharMask::new(k, bits))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BieberbachGroup::new(Layout::from_coordinates(k, coords)?, gens)?)
}

pub fn read(path: &Path) -> Result<BieberbachGroup, BgfError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| BgfError::Io { path: path.display().to_string(), source })?;
    parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use isoflat_core::bieberbach::construct_main_pair;

    #[test]
    fn round_trip_main_pair() {
        let (g, gp) = construct_main_pair(3, 8).unwrap();
        for group in [g, gp] {
            let text = write(&group);
            let back = parse(&text).unwrap();
            assert_eq!(back, group);
        }
    }

    #[test]
    fn exact_text() {
        let (g, _) = construct_main_pair(3, 7).unwrap();
        let text = write(&g);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "BGF1");
        assert_eq!(lines[1], "k=3 n=7");
        assert_eq!(lines[2], "B1 - - + + + + +");
        assert!(lines[7].starts_with("b3 "));
        assert!(lines[8].starts_with('#'));
    }

    #[test]
    fn rejects_malformed_input() {
        let good = "BGF1\nk=1 n=2\nB1 - +\nb1 0 1\n";
        assert!(parse(good).is_ok());
        assert!(parse("BGF2\nk=1 n=2\nB1 - +\nb1 0 1\n").is_err());
        assert!(parse("BGF1\nk=1 n=2\nB1 - +\nb1 0 2\n").is_err());
        assert!(parse("BGF1\nk=1 n=2\nB1 -  +\nb1 0 1\n").is_err());
        assert!(parse("BGF1\nk=1 n=2\nB1 - + +\nb1 0 1\n").is_err());
        assert!(parse("BGF1\nk=1 n=2\nB1 - +\n").is_err());
        assert!(parse("BGF1\nk=1 n=2\nB1 - +\nb1 0 1\nextra\n").is_err());
        assert!(parse("BGF1\nk=1 n=2\nB1 - +\nb1 0 1\n\n").is_err());
        assert!(parse("BGF1\nk=1 n=2\nB1 - +\nb1 0 1\n# fine\n# also fine\n").is_ok());
        assert!(parse("BGF1\nk=0 n=2\n").is_err());
        assert!(parse("BGF1\nn=2 k=1\nB1 - +\nb1 0 1\n").is_err());
    }
}
