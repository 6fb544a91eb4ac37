//! Text formats.
//!
//! Graphs (PACE `.gr`):
//!
//! ```text
//! c optional comment lines
//! p tw <num-vertices> <num-edges>
//! <u> <v>            one line per edge, vertices 1-indexed
//! ```
//!
//! Tree decompositions (PACE `.td`):
//!
//! ```text
//! s td <num-bags> <max-bag-size> <num-vertices>
//! b <bag-id> <v1> <v2> ...
//! <i> <j>            one line per tree edge, bag ids 1-indexed
//! ```
//!
//! Multipartite witnesses: one colour class per line, vertices separated by
//! whitespace, each vertex a comma separated element list. A `;` also ends a
//! class, so `1,2 1,3; 1,4 1,5` is two classes on one line.

use std::io::{self, Write};

use thiserror::Error;

use crate::graph::Graph;
use crate::setsys::{self, KSet};
use crate::treedec::TreeDecomposition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line")]
    MissingHeader,
    #[error("expected {expected} {what}, found {found}")]
    Count { what: &'static str, expected: usize, found: usize },
    #[error("input is not valid UTF-8")]
    Utf8,
}

/// Largest vertex or bag count a parser accepts.
pub const MAX_PARSE_ITEMS: usize = 1 << 22;
/// Largest `bags * vertices` product for a parsed decomposition (bitset bits).
pub const MAX_TD_BITS: usize = 1 << 28;

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// Content lines with their 1-based line numbers; `c` comments and blanks dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, toks)),
        }
    })
}

fn number(line: usize, tok: &str) -> Result<usize, FormatError> {
    tok.parse::<usize>().map_err(|_| syntax(line, format!("expected a number, found {tok:?}")))
}

/// 1-indexed vertex id in `1..=n`, returned 0-indexed.
fn vertex(line: usize, tok: &str, n: usize) -> Result<usize, FormatError> {
    let v = number(line, tok)?;
    if v == 0 || v > n {
        return Err(syntax(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

pub fn write_graph<W: Write>(g: &Graph, sink: &mut W) -> io::Result<()> {
    writeln!(sink, "p tw {} {}", g.order(), g.size())?;
    for (u, v) in g.edges() {
        writeln!(sink, "{} {}", u + 1, v + 1)?;
    }
    Ok(())
}

pub fn graph_to_string(g: &Graph) -> String {
    let mut out = Vec::new();
    write_graph(g, &mut out).expect("writing to memory");
    String::from_utf8(out).expect("ascii")
}

/// Parses a `.gr` file. Self loops, duplicate edges and a wrong edge count are errors.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    if header.len() != 4 || header[0] != "p" || header[1] != "tw" {
        return Err(syntax(hl, "expected `p tw <vertices> <edges>`"));
    }
    let n = number(hl, header[2])?;
    let m = number(hl, header[3])?;
    if n > MAX_PARSE_ITEMS || m > MAX_PARSE_ITEMS {
        return Err(syntax(hl, "graph too large"));
    }
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut edges = Vec::new();
    for (ln, toks) in lines {
        if toks.len() != 2 {
            return Err(syntax(ln, "expected `<u> <v>`"));
        }
        let u = vertex(ln, toks[0], n)?;
        let v = vertex(ln, toks[1], n)?;
        if u == v {
            return Err(syntax(ln, format!("self loop at {}", u + 1)));
        }
        edges.push((ln, u, v));
        if edges.len() > m {
            return Err(FormatError::Count { what: "edges", expected: m, found: edges.len() });
        }
    }
    if edges.len() != m {
        return Err(FormatError::Count { what: "edges", expected: m, found: edges.len() });
    }
    adj.resize(n, Vec::new());
    for &(_, u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let g = Graph::from_adjacency_unchecked(adj);
    if g.size() != m {
        // Only duplicates can shrink the count; report the first one.
        let mut seen = std::collections::HashSet::new();
        for &(ln, u, v) in &edges {
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(syntax(ln, format!("duplicate edge {} {}", u + 1, v + 1)));
            }
        }
    }
    Ok(g)
}

pub fn write_td<W: Write>(td: &TreeDecomposition, sink: &mut W) -> io::Result<()> {
    writeln!(sink, "s td {} {} {}", td.num_bags(), td.max_bag_size(), td.num_vertices())?;
    for (i, bag) in td.bags().iter().enumerate() {
        write!(sink, "b {}", i + 1)?;
        for v in bag.ones() {
            write!(sink, " {}", v + 1)?;
        }
        writeln!(sink)?;
    }
    for &(a, b) in td.edges() {
        writeln!(sink, "{} {}", a + 1, b + 1)?;
    }
    Ok(())
}

pub fn td_to_string(td: &TreeDecomposition) -> String {
    let mut out = Vec::new();
    write_td(td, &mut out).expect("writing to memory");
    String::from_utf8(out).expect("ascii")
}

/// Parses a `.td` file. Every bag id must appear exactly once and the declared
/// maximum bag size must match. Tree shape is left to the validator.
pub fn parse_td(text: &str) -> Result<TreeDecomposition, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return Err(syntax(hl, "expected `s td <bags> <max-bag-size> <vertices>`"));
    }
    let num_bags = number(hl, header[2])?;
    let declared_max = number(hl, header[3])?;
    let n = number(hl, header[4])?;
    if n > MAX_PARSE_ITEMS || num_bags > MAX_PARSE_ITEMS || num_bags.saturating_mul(n.max(1)) > MAX_TD_BITS {
        return Err(syntax(hl, "decomposition too large"));
    }
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (ln, toks) in lines {
        if toks[0] == "b" {
            if toks.len() < 2 {
                return Err(syntax(ln, "bag line without id"));
            }
            let id = number(ln, toks[1])?;
            if id == 0 || id > num_bags {
                return Err(syntax(ln, format!("bag id {id} outside 1..={num_bags}")));
            }
            if bags.len() < id {
                bags.resize(id, None);
            }
            if bags[id - 1].is_some() {
                return Err(syntax(ln, format!("bag {id} declared twice")));
            }
            let members = toks[2..].iter().map(|t| vertex(ln, t, n)).collect::<Result<Vec<_>, _>>()?;
            bags[id - 1] = Some(members);
        } else {
            if toks.len() != 2 {
                return Err(syntax(ln, "expected `<bag> <bag>`"));
            }
            let a = vertex(ln, toks[0], num_bags)?;
            let b = vertex(ln, toks[1], num_bags)?;
            edges.push((a, b));
        }
    }
    if bags.len() != num_bags || bags.iter().any(Option::is_none) {
        let found = bags.iter().filter(|b| b.is_some()).count();
        return Err(FormatError::Count { what: "bags", expected: num_bags, found });
    }
    let mut td = TreeDecomposition::new(n);
    for members in bags.into_iter().flatten() {
        td.add_bag(members);
    }
    for (a, b) in edges {
        td.add_edge(a, b);
    }
    if td.max_bag_size() != declared_max {
        return Err(FormatError::Count {
            what: "as the maximum bag size",
            expected: declared_max,
            found: td.max_bag_size(),
        });
    }
    Ok(td)
}

pub fn write_witness<W: Write>(classes: &[Vec<KSet>], sink: &mut W) -> io::Result<()> {
    for (i, class) in classes.iter().enumerate() {
        let line: Vec<String> =
            class.iter().map(|s| s.elements().map(|e| e.to_string()).collect::<Vec<_>>().join(",")).collect();
        let end = if i + 1 < classes.len() { ";" } else { "" };
        writeln!(sink, "{}{}", line.join(" "), end)?;
    }
    Ok(())
}

pub fn witness_to_string(classes: &[Vec<KSet>]) -> String {
    let mut out = Vec::new();
    write_witness(classes, &mut out).expect("writing to memory");
    String::from_utf8(out).expect("ascii")
}

/// Parses witness classes over the ground set `[ground]`. Lines starting with
/// `#` are comments. Arity is not checked here.
pub fn parse_witness(text: &str, ground: u32) -> Result<Vec<Vec<KSet>>, FormatError> {
    let mut classes = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for segment in line.split(';') {
            let toks: Vec<&str> = segment.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let class = toks
                .iter()
                .map(|t| {
                    let elements = setsys::parse_elements(t).map_err(|e| syntax(i + 1, e.to_string()))?;
                    KSet::new(ground, &elements).map_err(|e| syntax(i + 1, e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            classes.push(class);
        }
    }
    Ok(classes)
}

/// Byte-level entry points; the fuzz targets call these.
pub fn parse_graph_bytes(data: &[u8]) -> Result<Graph, FormatError> {
    parse_graph(std::str::from_utf8(data).map_err(|_| FormatError::Utf8)?)
}

pub fn parse_td_bytes(data: &[u8]) -> Result<TreeDecomposition, FormatError> {
    parse_td(std::str::from_utf8(data).map_err(|_| FormatError::Utf8)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_text_is_bit_exact() {
        let g = Graph::path(3);
        assert_eq!(graph_to_string(&g), "p tw 3 2\n1 2\n2 3\n");
        assert_eq!(parse_graph("c hi\np tw 3 2\nc mid\n1 2\n\n2 3\n").unwrap(), g);
    }

    #[test]
    fn graph_errors() {
        assert_eq!(parse_graph(""), Err(FormatError::MissingHeader));
        assert!(matches!(parse_graph("p td 3 1\n1 2\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse_graph("p tw 3 1\n1 4\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_graph("p tw 3 1\n2 2\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_graph("p tw 3 2\n1 2\n"), Err(FormatError::Count { .. })));
        assert!(matches!(parse_graph("p tw 3 1\n1 2\n2 3\n"), Err(FormatError::Count { .. })));
        assert!(matches!(parse_graph("p tw 3 2\n1 2\n2 1\n"), Err(FormatError::Syntax { line: 3, .. })));
        assert!(matches!(parse_graph("p tw 3 1\n1 x\n"), Err(FormatError::Syntax { .. })));
        assert_eq!(parse_graph_bytes(&[0xff]), Err(FormatError::Utf8));
    }

    #[test]
    fn td_text_is_bit_exact() {
        let mut td = TreeDecomposition::new(3);
        td.add_bag([0, 1]);
        td.add_bag([1, 2]);
        td.add_edge(0, 1);
        let text = td_to_string(&td);
        assert_eq!(text, "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
        assert_eq!(parse_td(&text).unwrap(), td);
    }

    #[test]
    fn td_errors() {
        assert!(matches!(parse_td("s td 2 2 3\nb 1 1 2\n"), Err(FormatError::Count { .. })));
        assert!(matches!(parse_td("s td 1 2 3\nb 1 1 2\nb 1 2 3\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_td("s td 1 3 3\nb 1 1 2\n"), Err(FormatError::Count { .. })));
        assert!(matches!(parse_td("s td 1 1 3\nb 1 4\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_td("s td 1 1 3\nb 1 1\n1 2\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_td("s td 1 1 3\nb\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_td("p tw 1 0\n"), Err(FormatError::Syntax { .. })));
        assert!(matches!(parse_td("s td 99999999 1 99999999\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse_graph("p tw 99999999999 0\n"), Err(FormatError::Syntax { .. })));
    }

    #[test]
    fn witness_text() {
        let a = KSet::new(5, &[1, 2]).unwrap();
        let b = KSet::new(5, &[1, 3]).unwrap();
        let c = KSet::new(5, &[2, 3]).unwrap();
        let classes = vec![vec![a, b], vec![c]];
        let text = witness_to_string(&classes);
        assert_eq!(text, "1,2 1,3;\n2,3\n");
        assert_eq!(parse_witness(&text, 5).unwrap(), classes);
        assert_eq!(parse_witness("# c\n1,2 1,3; 2,3\n", 5).unwrap(), classes);
        assert!(parse_witness("1,6\n", 5).is_err());
        assert!(parse_witness("1,,2\n", 5).is_err());
    }
}
