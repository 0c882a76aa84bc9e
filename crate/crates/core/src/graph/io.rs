//! graph6, edge-list and DOT conversions.
//!
//! graph6 follows the nauty encoding: the vertex count in the usual 1-, 4-
//! or 8-byte form, then the upper triangle of the adjacency matrix in
//! column order (`(0,1), (0,2), (1,2), (0,3), …`), packed six bits per
//! byte, most significant first, each byte offset by 63.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        out.push(126 as char);
        out.push(126 as char);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(((acc << (6 - nbits)) + 63) as char);
    }
    out
}

pub fn from_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("invalid graph6 byte in {line:?}")));
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, body) = match bytes {
        [] => return Err(Error::Parse("empty graph6 string".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Parse("truncated graph6 size".into()));
            }
            let n = rest[..6].iter().fold(0, |acc, &b| (acc << 6) | val(b));
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Parse("truncated graph6 size".into()));
            }
            let n = rest[..3].iter().fold(0, |acc, &b| (acc << 6) | val(b));
            (n, &rest[3..])
        }
        [b, rest @ ..] => (val(*b), rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if body.len() != need {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {need} for n={n}",
            body.len()
        )));
    }
    let mut g = Graph::try_new(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (val(body[k / 6]) >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Parses `"n m"` followed by `m` lines `"u v"`. Blank lines and lines
/// starting with `#` are skipped.
pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing edge-list header".into()))?;
    let [n, m] = parse_pair(header)?;
    let mut g = Graph::try_new(n)?;
    let mut count = 0;
    for line in lines {
        let [u, v] = parse_pair(line)?;
        g.try_add_edge(u, v)?;
        count += 1;
    }
    if count != m {
        return Err(Error::Parse(format!("header announces {m} edges, found {count}")));
    }
    Ok(g)
}

fn parse_pair(line: &str) -> Result<[usize; 2]> {
    let mut it = line.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
    });
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok([a?, b?]),
        _ => Err(Error::Parse(format!("expected two integers, got {line:?}"))),
    }
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use proptest::prelude::*;

    #[test]
    fn known_graph6_strings() {
        // nauty reference encodings
        assert_eq!(to_graph6(&cycle(5)), "Dhc");
        assert_eq!(to_graph6(&complete(4)), "C~");
        assert_eq!(to_graph6(&petersen()), "IheA@GUAo");
        assert_eq!(to_graph6(&Graph::new(0)), "?");
        assert_eq!(to_graph6(&Graph::new(1)), "@");
    }

    #[test]
    fn header_and_errors() {
        assert_eq!(from_graph6(">>graph6<<Dhc\n").unwrap(), cycle(5));
        assert!(from_graph6("").is_err());
        assert!(from_graph6("Dh").is_err());
        assert!(from_graph6("D h").is_err());
    }

    #[test]
    fn large_size_prefix() {
        let g = cycle(70);
        let s = to_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn edge_list_parsing() {
        let g = from_edge_list("# c4\n4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g, cycle(4));
        assert!(from_edge_list("3 2\n0 1\n").is_err());
        assert!(from_edge_list("3 1\n0 0\n").is_err());
        assert!(from_edge_list("3 1\n0 7\n").is_err());
        assert_eq!(from_edge_list(&to_edge_list(&petersen())).unwrap(), petersen());
    }

    #[test]
    fn dot_lists_every_edge() {
        let dot = to_dot(&cycle(3));
        assert!(dot.starts_with("graph G {"));
        assert_eq!(dot.matches(" -- ").count(), 3);
    }

    proptest! {
        #[test]
        fn graph6_roundtrip(n in 0usize..80, edges in proptest::collection::vec((0usize..80, 0usize..80), 0..200)) {
            let mut g = Graph::new(n);
            for (u, v) in edges {
                if u < n && v < n && u != v {
                    g.add_edge(u, v);
                }
            }
            let s = to_graph6(&g);
            prop_assert_eq!(from_graph6(&s).unwrap(), g);
        }
    }
}
