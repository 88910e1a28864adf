//! Line-oriented space and map files.
//!
//! ```text
//! # comments run to the end of the line
//! points: r1 r2 r3 r4
//! classes: [r1] [r3] [r2 r4]
//! subset: r1 r2
//! ```
//!
//! or, for a topology given directly, `opens: [] [r1] [r2 r4] [*]`, where
//! `[*]` is the whole universe and `[]` the empty set. Map files name their
//! spaces (paths relative to the map file) and list one arrow per point:
//!
//! ```text
//! from: ex3_5_u.space
//! to: ex3_5_v.space
//! map: r1->s2 r2->s2 r3->s3 r4->s4
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use nanotop_core::{
    build_nano_topology, make_explicit_space, make_map, FiniteMap, NanoError, NanoSpace, Partition,
    PointSet, SetFamily, Universe,
};

use crate::error::CliError;

/// A `key: value` line and where it came from.
struct Field<'a> {
    line: usize,
    value: &'a str,
}

fn parse_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        message: message.into(),
    }
}

fn fields<'a>(text: &'a str, allowed: &[&str]) -> Result<HashMap<&'a str, Field<'a>>, CliError> {
    let mut out: HashMap<&str, Field<'_>> = HashMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| parse_error(line, format!("expected `key: value`, got `{content}`")))?;
        let key = key.trim();
        if !allowed.contains(&key) {
            return Err(parse_error(
                line,
                format!(
                    "unknown key `{key}` (expected one of {})",
                    allowed.join(", ")
                ),
            ));
        }
        if let Some(previous) = out.get(key) {
            return Err(parse_error(
                line,
                format!("`{key}` already given on line {}", previous.line),
            ));
        }
        out.insert(
            key,
            Field {
                line,
                value: value.trim(),
            },
        );
    }
    Ok(out)
}

/// Splits `[a b] [] [*]` into bracketed groups.
fn blocks<'a>(field: &Field<'a>) -> Result<Vec<Vec<&'a str>>, CliError> {
    let mut out = Vec::new();
    let mut rest = field.value;
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('[')
            .ok_or_else(|| parse_error(field.line, format!("expected `[` at `{rest}`")))?;
        let close = inner
            .find(']')
            .ok_or_else(|| parse_error(field.line, "unclosed `[`"))?;
        let body = &inner[..close];
        if body.contains('[') {
            return Err(parse_error(field.line, "nested `[`"));
        }
        out.push(body.split_whitespace().collect());
        rest = inner[close + 1..].trim_start();
    }
    Ok(out)
}

fn resolve(universe: &Universe, labels: &[&str], line: usize) -> Result<PointSet, CliError> {
    if labels == ["*"] {
        return Ok(universe.full_set());
    }
    universe
        .set_from_labels(labels)
        .map_err(|e| CliError::at(line, e))
}

fn required<'a, 'b>(
    fields: &'b HashMap<&str, Field<'a>>,
    key: &str,
) -> Result<&'b Field<'a>, CliError> {
    fields
        .get(key)
        .ok_or_else(|| parse_error(0, format!("missing `{key}:` line")))
}

/// Parses a space file into a space (with provenance when given by classes and subset).
pub fn parse_space_file(text: &str) -> Result<NanoSpace, CliError> {
    let fields = fields(text, &["points", "classes", "subset", "opens"])?;
    let points = required(&fields, "points")?;
    let universe =
        Universe::new(points.value.split_whitespace()).map_err(|e| CliError::at(points.line, e))?;

    let nano = fields.contains_key("classes") || fields.contains_key("subset");
    match (nano, fields.get("opens")) {
        (true, Some(opens)) => Err(parse_error(
            opens.line,
            "give either `classes:` and `subset:` or `opens:`, not both",
        )),
        (false, None) => Err(parse_error(
            points.line,
            "missing `classes:`/`subset:` or `opens:`",
        )),
        (true, None) => {
            let classes = required(&fields, "classes")?;
            let subset = required(&fields, "subset")?;
            let sets = blocks(classes)?
                .iter()
                .map(|b| resolve(&universe, b, classes.line))
                .collect::<Result<Vec<_>, _>>()?;
            let partition =
                Partition::new(&universe, &sets).map_err(|e| CliError::at(classes.line, e))?;
            let subset_labels: Vec<&str> = match subset.value.strip_prefix('[') {
                Some(_) => {
                    let mut b = blocks(subset)?;
                    if b.len() != 1 {
                        return Err(parse_error(subset.line, "expected a single subset"));
                    }
                    b.remove(0)
                }
                None => subset.value.split_whitespace().collect(),
            };
            let m = resolve(&universe, &subset_labels, subset.line)?;
            build_nano_topology(&partition, &m).map_err(|e| CliError::at(subset.line, e))
        }
        (false, Some(opens)) => {
            let sets = blocks(opens)?
                .iter()
                .map(|b| resolve(&universe, b, opens.line))
                .collect::<Result<Vec<_>, _>>()?;
            let family =
                SetFamily::new(&universe, sets).map_err(|e| CliError::at(opens.line, e))?;
            make_explicit_space(&universe, &family).map_err(|e| CliError::at(opens.line, e))
        }
    }
}

fn bracket(set: &PointSet) -> String {
    if set.is_full() && !set.is_empty() {
        "[*]".to_string()
    } else {
        format!("[{}]", set.labels().join(" "))
    }
}

/// Canonical text form; parsing it gives back an identical space.
pub fn format_space(space: &NanoSpace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "points: {}", space.universe().labels().join(" "));
    match space.provenance() {
        Some(p) => {
            let classes: Vec<_> = p
                .partition
                .blocks()
                .map(|b| format!("[{}]", b.labels().join(" ")))
                .collect();
            let _ = writeln!(out, "classes: {}", classes.join(" "));
            let _ = writeln!(out, "subset: {}", p.subset.labels().join(" "));
        }
        None => {
            let opens: Vec<_> = space.opens().members().map(|s| bracket(&s)).collect();
            let _ = writeln!(out, "opens: {}", opens.join(" "));
        }
    }
    out
}

/// A map file before its spaces are loaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapFile {
    pub from: String,
    pub to: String,
    pub arrows: Vec<(String, String)>,
    /// Line of the `map:` entry, for error reporting.
    pub map_line: usize,
}

pub fn parse_map_header(text: &str) -> Result<MapFile, CliError> {
    let fields = fields(text, &["from", "to", "map"])?;
    let (from, to, map) = (
        required(&fields, "from")?,
        required(&fields, "to")?,
        required(&fields, "map")?,
    );
    let arrows = map
        .value
        .split_whitespace()
        .map(|a| {
            a.split_once("->")
                .filter(|(x, y)| !x.is_empty() && !y.is_empty())
                .map(|(x, y)| (x.to_string(), y.to_string()))
                .ok_or_else(|| {
                    parse_error(map.line, format!("expected `source->target`, got `{a}`"))
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MapFile {
        from: from.value.to_string(),
        to: to.value.to_string(),
        arrows,
        map_line: map.line,
    })
}

/// Validates a map file's arrows against already-parsed spaces.
pub fn parse_map_file(
    text: &str,
    domain: &NanoSpace,
    codomain: &NanoSpace,
) -> Result<FiniteMap, CliError> {
    let header = parse_map_header(text)?;
    build_map(&header, domain, codomain)
}

fn build_map(
    header: &MapFile,
    domain: &NanoSpace,
    codomain: &NanoSpace,
) -> Result<FiniteMap, CliError> {
    make_map(domain.universe(), codomain.universe(), &header.arrows).map_err(|e| match e {
        NanoError::UnmappedPoint(p) => parse_error(
            header.map_line,
            format!("map is not total: no arrow for `{p}`"),
        ),
        other => CliError::at(header.map_line, other),
    })
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_space(path: &Path) -> Result<NanoSpace, CliError> {
    parse_space_file(&read_file(path)?).map_err(|e| e.in_file(path))
}

/// A map file with both of its spaces loaded.
pub struct LoadedMap {
    pub domain: NanoSpace,
    pub codomain: NanoSpace,
    pub map: FiniteMap,
    pub paths: [PathBuf; 2],
}

pub fn load_map(path: &Path) -> Result<LoadedMap, CliError> {
    let text = read_file(path)?;
    let header = parse_map_header(&text).map_err(|e| e.in_file(path))?;
    let dir = path.parent().unwrap_or(Path::new(""));
    let (from, to) = (dir.join(&header.from), dir.join(&header.to));
    let (domain, codomain) = (load_space(&from)?, load_space(&to)?);
    let map = build_map(&header, &domain, &codomain).map_err(|e| e.in_file(path))?;
    Ok(LoadedMap {
        domain,
        codomain,
        map,
        paths: [from, to],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nanotop_core::{enumerate_family, FamilyKind};

    const EX: &str = "points: r1 r2 r3 r4\nclasses: [r1] [r3] [r2 r4]\nsubset: r1 r2\n";

    fn line_of(e: CliError) -> usize {
        match e {
            CliError::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn nano_file() {
        let s = parse_space_file(EX).unwrap();
        assert_eq!(s.opens().len(), 5);
        assert_eq!(enumerate_family(&s, FamilyKind::NsalphaOpen).len(), 7);
        let bracketed =
            parse_space_file("points: r1 r2 r3 r4\nclasses: [r1] [r3] [r2 r4]\nsubset: [r1 r2]")
                .unwrap();
        assert_eq!(bracketed, s);
    }

    #[test]
    fn explicit_file() {
        let s = parse_space_file("# one point\npoints: a\nopens: [] [*]\n").unwrap();
        assert!(s.is_explicit());
        assert_eq!(s.opens().len(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            line_of(parse_space_file("points: a b\nclasses: [a]\nsubset: a").unwrap_err()),
            2
        );
        assert_eq!(
            line_of(parse_space_file("points: a b\nclasses: [a] [b]\nsubset: c").unwrap_err()),
            3
        );
        assert_eq!(
            line_of(parse_space_file("points: a b\nopens: [] [a] [b]").unwrap_err()),
            2
        );
        assert_eq!(
            line_of(
                parse_space_file("points: a\nopens: [] [*]\nclasses: [a]\nsubset: a").unwrap_err()
            ),
            2
        );
        assert_eq!(line_of(parse_space_file("points: a\n").unwrap_err()), 1);
        assert_eq!(
            line_of(parse_space_file("points: a\nopens: [a").unwrap_err()),
            2
        );
        assert_eq!(
            line_of(parse_space_file("\npoints: a\nfoo: b").unwrap_err()),
            3
        );
        assert_eq!(
            line_of(parse_space_file("points: a\npoints: a").unwrap_err()),
            2
        );
    }

    #[test]
    fn canonical_form() {
        let s = parse_space_file(EX).unwrap();
        assert_eq!(format_space(&s), EX);
        let e = parse_space_file("points: a b\nopens: [*] [a] []").unwrap();
        assert_eq!(format_space(&e), "points: a b\nopens: [] [a] [*]\n");
    }

    #[test]
    fn map_files() {
        let u = parse_space_file(EX).unwrap();
        let text = "from: u.space\nto: u.space\nmap: r1->r1 r2->r2 r3->r3 r4->r4";
        assert_eq!(
            parse_map_file(text, &u, &u).unwrap(),
            FiniteMap::identity(u.universe())
        );
        let partial = "from: u.space\nto: u.space\nmap: r1->r1 r2->r2 r3->r3";
        let err = parse_map_file(partial, &u, &u).unwrap_err();
        assert!(err.to_string().contains("not total"), "{err}");
        let unknown = "from: u.space\nto: u.space\nmap: r1->x r2->r2 r3->r3 r4->r4";
        assert_eq!(line_of(parse_map_file(unknown, &u, &u).unwrap_err()), 3);
        assert!(parse_map_header("from: a\nto: b\nmap: r1-r2").is_err());
    }
}
