//! Text formats: the standard graph6 line format and a plain edge-list
//! format used for fixtures.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by
//! column, x(0,1), x(0,2), x(1,2), x(0,3), ..., six bits per byte with an
//! offset of 63. Encoding and decoding round-trip bit-exactly.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

/// Encode the vertex count header. Single byte for n <= 62, otherwise the
/// '~' long form (we never need more than 64).
fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n as u32 {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ascii")
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let bytes = s.trim_end().as_bytes();
    if bytes.is_empty() {
        return Err(Error::Invalid("empty graph6 string".into()));
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(Error::Invalid("graph6 '~~' sizes are not supported".into()));
        }
        if bytes.len() < 4 {
            return Err(Error::Invalid("truncated graph6 size".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            if !(63..=126).contains(&b) {
                return Err(Error::Invalid(format!("bad graph6 size byte {b}")));
            }
            n = n << 6 | (b - 63) as usize;
        }
        (n, 4)
    } else {
        let b = bytes[0];
        if !(63..=126).contains(&b) {
            return Err(Error::Invalid(format!("bad graph6 size byte {b}")));
        }
        ((b - 63) as usize, 1)
    };
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            what: "vertex count",
            got: n,
            limit: MAX_VERTICES,
        });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if bytes.len() - pos < need {
        return Err(Error::Invalid(format!(
            "graph6 body too short: need {need} bytes, have {}",
            bytes.len() - pos
        )));
    }
    let mut edges = Vec::new();
    let mut acc = 0u8;
    let mut have = 0;
    for j in 1..n as u32 {
        for i in 0..j {
            if have == 0 {
                let b = bytes[pos];
                pos += 1;
                if !(63..=126).contains(&b) {
                    return Err(Error::Invalid(format!("bad graph6 body byte {b}")));
                }
                acc = b - 63;
                have = 6;
            }
            if acc >> (have - 1) & 1 == 1 {
                edges.push((i, j));
            }
            have -= 1;
        }
    }
    if pos != bytes.len() {
        return Err(Error::Invalid("trailing bytes after graph6 body".into()));
    }
    Graph::from_edges(n, &edges)
}

/// Plain fixture format: first line "n m", then m lines "u v", 1-based.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate();
    let (first_no, first) = loop {
        match lines.next() {
            Some((i, l)) if !l.trim().is_empty() => break (i + 1, l),
            Some(_) => continue,
            None => {
                return Err(Error::Parse {
                    line: 1,
                    msg: "missing header line".into(),
                })
            }
        }
    };
    let mut it = first.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse {
            line: first_no,
            msg: "expected vertex count".into(),
        })?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse {
            line: first_no,
            msg: "expected edge count".into(),
        })?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line: first_no,
            msg: "trailing tokens after header".into(),
        });
    }
    let mut edges = Vec::with_capacity(m);
    for (i, line) in lines {
        let line_no = i + 1;
        let l = line.trim();
        if l.is_empty() {
            continue;
        }
        let mut it = l.split_whitespace();
        let parse = |t: Option<&str>| -> Result<u32> {
            t.and_then(|t| t.parse::<u32>().ok())
                .filter(|&v| v >= 1 && v as usize <= n)
                .ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: format!("expected 1-based vertex in 1..={n}"),
                })
        };
        let u = parse(it.next())?;
        let v = parse(it.next())?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                msg: "trailing tokens after edge".into(),
            });
        }
        edges.push((u - 1, v - 1));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: first_no,
            msg: format!("header promises {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, &edges)
}

pub fn format_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    #[test]
    fn graph6_known_strings() {
        // hand-applied format definition
        assert_eq!(to_graph6(&Graph::complete(2).unwrap()), "A_");
        assert_eq!(to_graph6(&Graph::complete(3).unwrap()), "Bw");
        assert_eq!(from_graph6("A_").unwrap(), Graph::complete(2).unwrap());
        assert_eq!(from_graph6("Bw").unwrap(), Graph::complete(3).unwrap());
    }

    #[test]
    fn graph6_round_trip_small() {
        for g in [
            Graph::empty(0).unwrap(),
            Graph::empty(1).unwrap(),
            Graph::path(5).unwrap(),
            Graph::cycle(6).unwrap(),
            Graph::complete(7).unwrap(),
        ] {
            assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }

    #[test]
    fn graph6_long_size_form() {
        let g = Graph::cycle(63).unwrap();
        let s = to_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(from_graph6(&s).unwrap(), g);
        let g64 = Graph::complete(64).unwrap();
        assert_eq!(from_graph6(&to_graph6(&g64)).unwrap(), g64);
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("B").is_err()); // body too short
        assert!(from_graph6("Bw!").is_err()); // trailing bytes
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let text = format_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let err = parse_edge_list("3 1\n1 4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_edge_list("3 2\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn whiskered_triangle_round_trips() {
        let k3 = Graph::complete(3).unwrap();
        let w = k3.add_whiskers(VertexSet::from_vertices(&[0, 2])).unwrap();
        assert_eq!(from_graph6(&to_graph6(&w)).unwrap(), w);
    }
}
