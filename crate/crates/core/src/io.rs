//! Rack table files and group spec files.
//!
//! Rack tables come as JSON, `{"size": n, "table": [[...], ...]}` with
//! `table[x][y] = x ▷ y`, or as text: a `RACK n` or `QUANDLE n` header
//! followed by `n` rows of `n` integers. Group specs are text: a `PERM n`
//! header, one generator per line in cycle notation, and optional
//! `REP <generator> centralizer` / `REP <generator> <generator>...` lines
//! naming coset-rack representatives. `#` starts a comment.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_GROUP_CAP};
use crate::perm::Permutation;
use crate::rack::{CosetRackSpec, CosetRep, FiniteRack};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RackJson {
    size: usize,
    table: Vec<Vec<i64>>,
}

/// Parses either format, dispatching on the first non-blank character.
pub fn parse_rack(text: &str) -> Result<FiniteRack> {
    if text.trim_start().starts_with('{') {
        parse_rack_json(text)
    } else {
        parse_rack_text(text)
    }
}

pub fn parse_rack_json(text: &str) -> Result<FiniteRack> {
    let raw: RackJson = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    let n = raw.size;
    if raw.table.len() != n {
        return Err(Error::MalformedGrid(format!(
            "size is {n} but the table has {} rows",
            raw.table.len()
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for (x, row) in raw.table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedGrid(format!(
                "row {x} has {} entries, expected {n}",
                row.len()
            )));
        }
        let mut out = Vec::with_capacity(n);
        for (y, &v) in row.iter().enumerate() {
            if v < 0 || v as u64 >= n as u64 {
                let (line, col) = json_entry_position(text, x, y).unwrap_or((1, 1));
                return Err(Error::parse(
                    line,
                    col,
                    format!("table[{x}][{y}] = {v} is out of range 0..{n}"),
                ));
            }
            out.push(v as usize);
        }
        rows.push(out);
    }
    FiniteRack::validate(rows)
}

/// Line and column (1-based) of the `(row, col)` number inside `"table"`.
fn json_entry_position(text: &str, row: usize, col: usize) -> Option<(usize, usize)> {
    let start = text.find("\"table\"")? + "\"table\"".len();
    let (mut line, mut column) = (1, 1);
    for c in text[..start].chars() {
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    let (mut depth, mut r, mut k) = (0usize, 0usize, 0usize);
    let mut in_number = false;
    for c in text[start..].chars() {
        let number_char =
            c.is_ascii_digit() || c == '-' || c == '+' || c == '.' || c == 'e' || c == 'E';
        if depth == 2 && number_char && !in_number {
            if r == row && k == col {
                return Some((line, column));
            }
            in_number = true;
        } else if !number_char && in_number {
            in_number = false;
            k += 1;
        }
        match c {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth == 1 {
                    r += 1;
                    k = 0;
                }
                if depth == 0 {
                    return None;
                }
            }
            _ => {}
        }
        if c == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    None
}

pub fn parse_rack_text(text: &str) -> Result<FiniteRack> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty input, expected `RACK n` or `QUANDLE n`"))?;
    let mut words = header.split_whitespace();
    let kind = words.next().unwrap_or_default();
    let want_quandle = match kind {
        "RACK" => false,
        "QUANDLE" => true,
        _ => {
            return Err(Error::parse(
                hline,
                1,
                format!("expected `RACK n` or `QUANDLE n`, found {kind:?}"),
            ));
        }
    };
    let n: usize = match (words.next().map(str::parse), words.next()) {
        (Some(Ok(n)), None) => n,
        _ => {
            return Err(Error::parse(
                hline,
                kind.len() + 2,
                "expected a single size after the header keyword",
            ))
        }
    };
    let mut rows = Vec::with_capacity(n);
    for (lno, line) in lines {
        if rows.len() == n {
            return Err(Error::parse(lno, 1, format!("more than {n} rows")));
        }
        let mut row = Vec::with_capacity(n);
        for (col, token) in tokens(line) {
            let v: usize = token.parse().map_err(|_| {
                Error::parse(lno, col, format!("expected an integer, found {token:?}"))
            })?;
            if v >= n {
                return Err(Error::parse(
                    lno,
                    col,
                    format!("entry {v} is out of range 0..{n}"),
                ));
            }
            row.push(v);
        }
        if row.len() != n {
            return Err(Error::parse(
                lno,
                1,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::MalformedGrid(format!(
            "expected {n} rows, found {}",
            rows.len()
        )));
    }
    let rack = FiniteRack::validate(rows)?;
    if want_quandle {
        if let Some(x) = (0..n).find(|&x| rack.op(x, x) != x) {
            return Err(Error::NotAQuandle(x));
        }
    }
    Ok(rack)
}

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        (!l.trim().is_empty()).then_some((i + 1, l))
    })
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

pub fn emit_rack_json(rack: &FiniteRack) -> String {
    let rows: Vec<String> = rack
        .rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(usize::to_string).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!(
        "{{\"size\":{},\"table\":[{}]}}\n",
        rack.size(),
        rows.join(",")
    )
}

pub fn emit_rack_text(rack: &FiniteRack) -> String {
    let mut out = format!(
        "{} {}\n",
        if rack.is_quandle() { "QUANDLE" } else { "RACK" },
        rack.size()
    );
    for r in rack.rows() {
        let cells: Vec<String> = r.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Subgroup choice for a coset-rack representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepSubgroup {
    /// The full centralizer of `s`.
    Centralizer,
    /// Generated by the listed generators.
    Generated(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    /// `(generator position of s, H_s)`.
    pub reps: Vec<(usize, RepSubgroup)>,
}

impl GroupSpec {
    pub fn group(&self, cap: usize) -> Result<PermGroup> {
        PermGroup::generate(self.degree, self.generators.clone(), cap)
    }

    /// The coset-rack input described by the `REP` lines; with no `REP`
    /// lines every generator is a representative with its full centralizer.
    pub fn coset_spec(&self, cap: usize) -> Result<CosetRackSpec> {
        let group = self.group(cap)?;
        let reps: Vec<(usize, RepSubgroup)> = if self.reps.is_empty() {
            (0..self.generators.len())
                .map(|g| (g, RepSubgroup::Centralizer))
                .collect()
        } else {
            self.reps.clone()
        };
        let reps = reps
            .iter()
            .map(|(g, h)| {
                let s = group.generator_index(*g);
                let subgroup = match h {
                    RepSubgroup::Centralizer => group.centralizer(s),
                    RepSubgroup::Generated(gens) => {
                        let idx: Vec<usize> =
                            gens.iter().map(|&k| group.generator_index(k)).collect();
                        group.subgroup(&idx)
                    }
                };
                CosetRep { s, subgroup }
            })
            .collect();
        CosetRackSpec::from_subgroups(group, reps)
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty input, expected `PERM n`"))?;
    let mut words = header.split_whitespace();
    let degree: usize = match (words.next(), words.next().map(str::parse), words.next()) {
        (Some("PERM"), Some(Ok(n)), None) => n,
        _ => return Err(Error::parse(hline, 1, "expected `PERM n`")),
    };
    let mut generators = Vec::new();
    let mut rep_lines = Vec::new();
    for (lno, line) in lines {
        let trimmed = line.trim();
        if let Some(rest) = trimmed.strip_prefix("REP") {
            rep_lines.push((lno, line, rest));
        } else {
            if !rep_lines.is_empty() {
                return Err(Error::parse(lno, 1, "generators must precede REP lines"));
            }
            let col = line.len() - line.trim_start().len() + 1;
            let p = Permutation::from_cycles(degree, trimmed)
                .map_err(|e| Error::parse(lno, col, e.to_string()))?;
            generators.push(p);
        }
    }
    if generators.is_empty() {
        return Err(Error::parse(hline, 1, "no generators given"));
    }
    let mut reps = Vec::new();
    for (lno, line, _) in rep_lines {
        let toks = tokens(line);
        let index = |(col, tok): (usize, &str)| -> Result<usize> {
            match tok.parse::<usize>() {
                Ok(k) if k < generators.len() => Ok(k),
                _ => Err(Error::parse(
                    lno,
                    col,
                    format!(
                        "expected a generator index below {}, found {tok:?}",
                        generators.len()
                    ),
                )),
            }
        };
        let Some(&s_tok) = toks.get(1) else {
            return Err(Error::parse(lno, 1, "REP needs a generator index"));
        };
        let s = index(s_tok)?;
        let subgroup = match toks.get(2) {
            Some((_, "centralizer")) if toks.len() == 3 => RepSubgroup::Centralizer,
            _ => {
                RepSubgroup::Generated(toks[2..].iter().map(|&t| index(t)).collect::<Result<_>>()?)
            }
        };
        reps.push((s, subgroup));
    }
    Ok(GroupSpec {
        degree,
        generators,
        reps,
    })
}

pub fn emit_group_spec(spec: &GroupSpec) -> String {
    let mut out = format!("PERM {}\n", spec.degree);
    for g in &spec.generators {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    for (s, h) in &spec.reps {
        match h {
            RepSubgroup::Centralizer => out.push_str(&format!("REP {s} centralizer\n")),
            RepSubgroup::Generated(gens) => {
                let g: Vec<String> = gens.iter().map(usize::to_string).collect();
                out.push_str(&format!("REP {s} {}\n", g.join(" ")).replace("  \n", "\n"));
            }
        }
    }
    out
}

/// Convenience for the common case: build the coset rack of a spec file.
pub fn coset_spec_from_text(text: &str) -> Result<CosetRackSpec> {
    parse_group_spec(text)?.coset_spec(DEFAULT_GROUP_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_dihedral3() {
        let r = parse_rack(r#"{"size":3,"table":[[0,2,1],[2,1,0],[1,0,2]]}"#).unwrap();
        assert_eq!(r, FiniteRack::dihedral(3));
        assert!(r.is_quandle());
    }

    #[test]
    fn json_out_of_range_has_position() {
        let text = "{\"size\": 3,\n \"table\": [[0,2,1],\n  [2,7,0],\n  [1,0,2]]}";
        match parse_rack(text) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (3, 6)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_syntax_error() {
        assert!(matches!(
            parse_rack("{\"size\": 3,"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_rack(r#"{"size":2,"table":[[0,1]]}"#),
            Err(Error::MalformedGrid(_))
        ));
    }

    #[test]
    fn text_format() {
        let r = parse_rack("RACK 2\n1 0\n1 0\n").unwrap();
        assert_eq!(r, FiniteRack::cyclic(2));
        assert!(matches!(
            parse_rack("QUANDLE 2\n1 0\n1 0\n"),
            Err(Error::NotAQuandle(0))
        ));
        match parse_rack("QUANDLE 3\n0 2 1\n2 1 0\n1 0 9\n") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (4, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_rack("SET 3"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn round_trips() {
        for r in [
            FiniteRack::trivial(3),
            FiniteRack::dihedral(5),
            FiniteRack::cyclic(4),
            FiniteRack::product(&FiniteRack::cyclic(2), &FiniteRack::dihedral(3)),
        ] {
            assert_eq!(parse_rack(&emit_rack_json(&r)).unwrap(), r);
            assert_eq!(parse_rack(&emit_rack_text(&r)).unwrap(), r);
        }
    }

    #[test]
    fn group_specs() {
        let spec = parse_group_spec("PERM 3\n(0 1)\n(0 1 2)\nREP 0 centralizer\n").unwrap();
        assert_eq!(spec.generators.len(), 2);
        assert_eq!(spec.reps, vec![(0, RepSubgroup::Centralizer)]);
        assert_eq!(parse_group_spec(&emit_group_spec(&spec)).unwrap(), spec);
        let cs = spec.coset_spec(DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(cs.group.order(), 6);
        assert!(cs.is_quandle);
        match parse_group_spec("PERM 3\n(0 5)\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        let spec = parse_group_spec("PERM 4 # cyclic\n(0 1 2 3)\nREP 0\n").unwrap();
        assert_eq!(spec.reps, vec![(0, RepSubgroup::Generated(vec![]))]);
        assert!(!spec.coset_spec(DEFAULT_GROUP_CAP).unwrap().is_quandle);
    }
}
