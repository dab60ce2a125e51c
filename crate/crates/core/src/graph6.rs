//! graph6 codec restricted to the single-byte size field (`n ≤ 62`).
//!
//! Layout: byte 0 is `n + 63`; the upper-triangle bits `x(i, j)`, `i < j`,
//! follow in column order (`j` ascending, then `i` ascending), packed
//! big-endian into 6-bit groups, zero-padded, each group offset by 63.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed graph6 token: {0}")]
    MalformedToken(String),
}

fn malformed(reason: impl Into<String>) -> Graph6Error {
    Graph6Error::MalformedToken(reason.into())
}

/// Number of 6-bit body characters for a graph on `n` vertices.
fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(token: &str) -> Result<Graph, Graph6Error> {
    let bytes = token.trim_end_matches(['\n', '\r']).as_bytes();
    let (&head, body) = bytes
        .split_first()
        .ok_or_else(|| malformed("empty token"))?;
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(malformed(format!("byte {b:#04x} outside 63..=126")));
    }
    let n = (head - 63) as usize;
    if n > MAX_VERTICES {
        return Err(malformed("multi-byte size field is not supported"));
    }
    if body.len() != body_len(n) {
        return Err(malformed(format!(
            "expected {} body bytes for n = {n}, found {}",
            body_len(n),
            body.len()
        )));
    }

    let mut rows = vec![0u64; n];
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let last = body[bit / 6] - 63;
        if last & ((1u8 << (6 - bit % 6)) - 1) != 0 {
            return Err(malformed("nonzero padding bits"));
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
