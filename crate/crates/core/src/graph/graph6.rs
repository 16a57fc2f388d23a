//! graph6 encoding (McKay's format for simple undirected graphs).
//!
//! Layout: `N(n)` followed by the upper triangle of the adjacency matrix read
//! column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed six bits per
//! byte, big-endian within the group, each group offset by 63.

use super::{Graph, GraphError};

const HEADER: &str = ">>graph6<<";
const MAX_N: usize = 68_719_476_735;

fn err(msg: impl Into<String>) -> GraphError {
    GraphError::Graph6(msg.into())
}

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn decode_n(bytes: &[u8]) -> Result<(usize, usize), GraphError> {
    let sextet = |b: u8| -> Result<usize, GraphError> {
        if (63..=126).contains(&b) {
            Ok((b - 63) as usize)
        } else {
            Err(err(format!("byte {b} outside the printable graph6 range")))
        }
    };
    match bytes {
        [] => Err(err("empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(err("truncated 8-byte vertex count"));
            }
            let mut n = 0;
            for &b in &rest[..6] {
                n = (n << 6) | sextet(b)?;
            }
            Ok((n, 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err("truncated 4-byte vertex count"));
            }
            let mut n = 0;
            for &b in &rest[..3] {
                n = (n << 6) | sextet(b)?;
            }
            Ok((n, 4))
        }
        [b, ..] => Ok((sextet(*b)?, 1)),
    }
}

/// Parses one graph6 line. An optional `>>graph6<<` header and trailing
/// whitespace are accepted.
pub fn decode(s: &str) -> Result<Graph, GraphError> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    if s.starts_with(':') || s.starts_with('&') {
        return Err(err("sparse6/digraph6 input is not graph6"));
    }
    let bytes = s.as_bytes();
    let (n, offset) = decode_n(bytes)?;
    if n > MAX_N {
        return Err(err("vertex count too large"));
    }
    let body = &bytes[offset..];
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(err(format!(
            "expected {expected} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6];
            if !(63..=126).contains(&byte) {
                return Err(err(format!(
                    "byte {byte} outside the printable graph6 range"
                )));
            }
            if ((byte - 63) >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    // padding bits must be zero
    if bits % 6 != 0 {
        let last = body[expected - 1] - 63;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(err("nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Parses every nonblank line of a graph6 file.
pub fn decode_all(text: &str) -> Result<Vec<Graph>, GraphError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(decode)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use proptest::prelude::*;

    #[test]
    fn known_encodings() {
        // reference strings from the format description and nauty's geng
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(encode(&Graph::empty(1)), "@");
        assert_eq!(encode(&complete(2).unwrap()), "A_");
        assert_eq!(encode(&path(3).unwrap()), "Bg");
        assert_eq!(encode(&complete(3).unwrap()), "Bw");
        assert_eq!(encode(&complete(4).unwrap()), "C~");
        // edges 02 04 13 34
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(encode(&petersen()), "IheA@GUAo");
    }

    #[test]
    fn large_vertex_count_prefix() {
        let g = Graph::empty(63);
        let s = encode(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 63, 63 + 63]);
        assert_eq!(decode(&s).unwrap().n(), 63);
    }

    #[test]
    fn rejects_garbage() {
        assert!(decode("").is_err());
        assert!(decode("Bw~").is_err());
        assert!(decode("B").is_err());
        // P3 "Bg" with a padding bit set
        assert!(decode("Bh").is_err());
        assert!(decode(":Fa@x^").is_err());
    }

    #[test]
    fn header_and_lines() {
        let gs = decode_all(">>graph6<<Bw\n\nA_\n").unwrap();
        assert_eq!(gs, vec![complete(3).unwrap(), complete(2).unwrap()]);
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..80, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g = random_gnp(n, p, seed);
            prop_assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
    }
}
