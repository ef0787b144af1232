//! The graph6 text format: a size header followed by the upper triangle of
//! the adjacency matrix, column by column, six bits per printable byte.

use thiserror::Error;

pub const HEADER: &str = ">>graph6<<";
/// Largest vertex count exported.
pub const MAX_VERTICES: u64 = 1 << 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("{0} vertices is too many for graph6 export (limit {MAX_VERTICES})")]
    TooLargeForFormat(u64),
    #[error("malformed graph6: {0}")]
    Malformed(String),
}

fn push_size(out: &mut Vec<u8>, n: u64) {
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

/// Encodes the graph on `0..n` whose adjacency is `adjacent(i, j)` for `i < j`.
pub fn encode(n: u64, header: bool, adjacent: impl Fn(usize, usize) -> bool) -> Result<String, Graph6Error> {
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLargeForFormat(n));
    }
    let mut out = Vec::new();
    if header {
        out.extend_from_slice(HEADER.as_bytes());
    }
    push_size(&mut out, n);
    let n = n as usize;
    let mut byte = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            byte = (byte << 1) | adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(byte + 63);
                byte = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((byte << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Decodes into bitset adjacency rows.
pub fn decode(text: &str) -> Result<Vec<Vec<u64>>, Graph6Error> {
    let bytes = text.trim_end().strip_prefix(HEADER).unwrap_or(text.trim_end()).as_bytes();
    let bad = |msg: &str| Graph6Error::Malformed(msg.to_string());
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let six = |slice: &[u8]| slice.iter().fold(0u64, |acc, &b| (acc << 6) | (b - 63) as u64);
    let (n, body) = match bytes {
        [] => return Err(bad("empty input")),
        [126, 126, rest @ ..] if rest.len() >= 6 => (six(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 => (six(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(bad("truncated size")),
        [b, rest @ ..] => ((b - 63) as u64, rest),
    };
    let n = n as usize;
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(bad(&format!("expected {} data bytes for {n} vertices, found {}", bits.div_ceil(6), body.len())));
    }
    let words = n.div_ceil(64);
    let mut rows = vec![vec![0u64; words]; n];
    let mut index = 0;
    for j in 1..n {
        for i in 0..j {
            let b = body[index / 6] - 63;
            if (b >> (5 - index % 6)) & 1 == 1 {
                rows[i][j >> 6] |= 1 << (j & 63);
                rows[j][i >> 6] |= 1 << (i & 63);
            }
            index += 1;
        }
    }
    Ok(rows)
}
