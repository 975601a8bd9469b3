//! Line-oriented text formats for posets and skew diagrams.
//!
//! ```text
//! poset
//! n 4
//! covers
//! 1 2
//! 1 3
//! 2 4
//! 3 4
//! embedding
//! 1 0 0
//! 2 -1 1
//! 3 1 1
//! 4 0 2
//! regions
//! min: 1 max: 4
//! ```
//!
//! ```text
//! skew
//! rows 2 2
//! 1 2
//! 1 2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::error::{GreeneError, Result};
use crate::poset::{build_poset, parse_rational, PlanarEmbedding, Poset, Region, SkewDiagram};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetFile {
    pub poset: Poset,
    pub embedding: Option<PlanarEmbedding>,
    pub regions: Option<Vec<Region>>,
}

impl PosetFile {
    pub fn bare(poset: Poset) -> Self {
        PosetFile {
            poset,
            embedding: None,
            regions: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputFile {
    Poset(PosetFile),
    Skew(SkewDiagram),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(line: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| {
        GreeneError::parse(line, format!("expected a non-negative integer, got {s:?}"))
    })
}

fn parse_list(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split(',').map(|t| parse_usize(line, t.trim())).collect()
}

/// Detects the header and parses either format.
pub fn parse_input(text: &str) -> Result<InputFile> {
    match content_lines(text).next() {
        Some((_, "poset")) => Ok(InputFile::Poset(parse_poset_file(text)?)),
        Some((_, "skew")) => Ok(InputFile::Skew(parse_skew_file(text)?)),
        Some((line, other)) => Err(GreeneError::parse(
            line,
            format!("expected header `poset` or `skew`, got {other:?}"),
        )),
        None => Err(GreeneError::parse(1, "empty input")),
    }
}

#[derive(PartialEq)]
enum Section {
    Header,
    Covers,
    Embedding,
    Regions,
}

pub fn parse_poset_file(text: &str) -> Result<PosetFile> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "poset")) => {}
        Some((line, _)) => return Err(GreeneError::parse(line, "expected header `poset`")),
        None => return Err(GreeneError::parse(1, "empty input")),
    }
    let mut n = None;
    let mut covers = Vec::new();
    let mut coords = Vec::new();
    let mut regions: Option<Vec<Region>> = None;
    let mut embedding_seen = false;
    let mut section = Section::Header;
    for (line, l) in lines {
        match l {
            "covers" => {
                section = Section::Covers;
                continue;
            }
            "embedding" => {
                section = Section::Embedding;
                embedding_seen = true;
                continue;
            }
            "regions" => {
                section = Section::Regions;
                regions.get_or_insert_with(Vec::new);
                continue;
            }
            _ => {}
        }
        let words: Vec<&str> = l.split_whitespace().collect();
        match section {
            Section::Header => match words.as_slice() {
                ["n", v] if n.is_none() => n = Some(parse_usize(line, v)?),
                _ => return Err(GreeneError::parse(line, format!("unexpected line {l:?}"))),
            },
            Section::Covers => match words.as_slice() {
                [i, j] => covers.push((parse_usize(line, i)?, parse_usize(line, j)?)),
                _ => return Err(GreeneError::parse(line, "a cover line is `i j`")),
            },
            Section::Embedding => match words.as_slice() {
                [v, x, y] => {
                    let v = parse_usize(line, v)?;
                    let bad = || GreeneError::parse(line, "coordinates are integers or p/q");
                    let x = parse_rational(x).ok_or_else(bad)?;
                    let y = parse_rational(y).ok_or_else(bad)?;
                    coords.push((v, (x, y)));
                }
                _ => return Err(GreeneError::parse(line, "an embedding line is `v x y`")),
            },
            Section::Regions => {
                let bad = || GreeneError::parse(line, "a region line is `min: i,.. max: j,..`");
                let rest = l.strip_prefix("min:").ok_or_else(bad)?;
                let (mins, maxs) = rest.split_once("max:").ok_or_else(bad)?;
                let region = Region::from_extrema(
                    parse_list(line, mins.trim())?,
                    parse_list(line, maxs.trim())?,
                );
                regions.as_mut().unwrap().push(region);
            }
        }
    }
    let n = n.ok_or_else(|| GreeneError::parse(1, "missing `n <int>` line"))?;
    let poset = build_poset(n, &covers)?;
    if let Some(rs) = &regions {
        for r in rs {
            if let Some(&v) = r.min.iter().chain(&r.max).find(|&&v| v == 0 || v > n) {
                return Err(GreeneError::OutOfRange(v, n));
            }
        }
    }
    let embedding = embedding_seen.then(|| PlanarEmbedding::new(coords));
    Ok(PosetFile {
        poset,
        embedding,
        regions,
    })
}

pub fn serialize_poset_file(f: &PosetFile) -> String {
    let mut s = String::new();
    let p = &f.poset;
    writeln!(s, "poset\nn {}\ncovers", p.n()).unwrap();
    for (i, j) in p.covers() {
        writeln!(s, "{i} {j}").unwrap();
    }
    if let Some(e) = &f.embedding {
        s.push_str("embedding\n");
        for (v, (x, y)) in e.iter() {
            writeln!(s, "{v} {x} {y}").unwrap();
        }
    }
    if let Some(rs) = &f.regions {
        s.push_str("regions\n");
        for r in rs {
            let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            writeln!(s, "min: {} max: {}", join(&r.min), join(&r.max)).unwrap();
        }
    }
    s
}

/// Several poset records in one text, each starting with `poset`.
pub fn parse_poset_records(text: &str) -> Result<Vec<PosetFile>> {
    let mut chunks: Vec<(usize, String)> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        if line.trim() == "poset" {
            chunks.push((k, String::new()));
        }
        match chunks.last_mut() {
            Some((_, c)) => {
                c.push_str(line);
                c.push('\n');
            }
            None if line.trim().is_empty() || line.trim().starts_with('#') => {}
            None => return Err(GreeneError::parse(k + 1, "expected header `poset`")),
        }
    }
    chunks
        .into_iter()
        .map(|(offset, c)| {
            parse_poset_file(&c).map_err(|e| match e {
                GreeneError::Parse { line, msg } => GreeneError::Parse {
                    line: line + offset,
                    msg,
                },
                other => other,
            })
        })
        .collect()
}

pub fn parse_skew_file(text: &str) -> Result<SkewDiagram> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "skew")) => {}
        Some((line, _)) => return Err(GreeneError::parse(line, "expected header `skew`")),
        None => return Err(GreeneError::parse(1, "empty input")),
    }
    let (line, l) = lines
        .next()
        .ok_or_else(|| GreeneError::parse(2, "missing `rows <r> <c>` line"))?;
    let words: Vec<&str> = l.split_whitespace().collect();
    let (r, c) = match words.as_slice() {
        ["rows", r, c] => (parse_usize(line, r)?, parse_usize(line, c)?),
        _ => return Err(GreeneError::parse(line, "expected `rows <r> <c>`")),
    };
    let mut rows = Vec::with_capacity(r);
    for (line, l) in lines {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words.as_slice() {
            [a, b] => rows.push((parse_usize(line, a)?, parse_usize(line, b)?)),
            _ => return Err(GreeneError::parse(line, "a row line is `a b`")),
        }
    }
    if rows.len() != r {
        return Err(GreeneError::InvalidSkew(format!(
            "header announces {r} rows, found {}",
            rows.len()
        )));
    }
    SkewDiagram::new(c, rows)
}

pub fn serialize_skew_file(d: &SkewDiagram) -> String {
    let mut s = format!("skew\nrows {} {}\n", d.rows(), d.cols());
    for (a, b) in d.intervals() {
        writeln!(s, "{a} {b}").unwrap();
    }
    s
}
