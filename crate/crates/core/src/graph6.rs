//! graph6 encoding of undirected graphs.
//!
//! The header encodes `n`; the body is the upper triangle read column by
//! column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed into 6-bit groups
//! offset by 63. Only the one-byte and four-byte headers are decoded.

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::Graph;

const MAX_N: u64 = 68_719_476_735;
const SHORT_MAX: usize = 62;
const MEDIUM_MAX: usize = 258_047;

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= SHORT_MAX {
        out.push(n as u8 + 63);
    } else if n <= MEDIUM_MAX {
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

/// Encodes `g` as graph6 bytes (no trailing newline).
pub fn encode_graph6(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    if n as u64 > MAX_N {
        return Err(Error::Size(format!("{n} vertices cannot be written as graph6")));
    }
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_size(&mut out, n);
    let (mut acc, mut filled) = (0u8, 0);
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
    Ok(out)
}

/// Convenience wrapper returning the encoding as a `String`.
pub fn to_graph6_string(g: &Graph) -> String {
    String::from_utf8(encode_graph6(g).expect("desk-scale graph")).expect("graph6 is ASCII")
}

fn sixbits(s: &[u8], at: usize) -> Result<usize> {
    match s.get(at) {
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
        Some(&b) => Err(Error::parse(at, format!("byte {b:#04x} outside graph6 range"))),
        None => Err(Error::parse(at, "unexpected end of input")),
    }
}

/// Decodes one graph6 record. An optional `>>graph6<<` prefix and a single
/// trailing newline are accepted.
pub fn decode_graph6(input: &[u8]) -> Result<Graph> {
    let mut s = input;
    if let Some(rest) = s.strip_suffix(b"\n") {
        s = rest;
    }
    let base = if s.starts_with(b">>graph6<<") { 10 } else { 0 };
    let s = &s[base..];
    let at = |i: usize| i + base;
    let first = *s.first().ok_or_else(|| Error::parse(at(0), "empty input"))?;
    let (n, mut pos) = match first {
        63..=125 => ((first - 63) as usize, 1),
        126 => {
            if s.get(1) == Some(&126) {
                return Err(Error::parse(at(1), "eight-byte size header is not supported"));
            }
            let mut n = 0;
            for i in 1..4 {
                n = n << 6 | sixbits(s, i).map_err(|e| shift(e, base))?;
            }
            (n, 4)
        }
        _ => return Err(Error::parse(at(0), format!("byte {first:#04x} is not a size header"))),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let body_len = bits.div_ceil(6);
    if s.len() != pos + body_len {
        return Err(Error::parse(
            at(s.len().min(pos + body_len)),
            format!("expected {body_len} body bytes for n = {n}, found {}", s.len() - pos),
        ));
    }
    let mut adj = BitMatrix::zeros(n, n);
    let (mut i, mut j) = (0usize, 1usize);
    let mut consumed = 0;
    while consumed < bits {
        let chunk = sixbits(s, pos).map_err(|e| shift(e, base))?;
        for b in (0..6).rev() {
            if consumed == bits {
                if chunk & ((1 << (b + 1)) - 1) != 0 {
                    return Err(Error::parse(at(pos), "nonzero padding bits"));
                }
                break;
            }
            if chunk >> b & 1 == 1 {
                adj.set(i, j, true);
                adj.set(j, i, true);
            }
            consumed += 1;
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
        pos += 1;
    }
    Ok(Graph::from_adjacency_unchecked(adj))
}

fn shift(e: Error, base: usize) -> Error {
    match e {
        Error::Parse { offset, message } => Error::Parse {
            offset: offset + base,
            message,
        },
        other => other,
    }
}

/// Decodes every non-empty line of a graph6 file.
pub fn decode_graph6_lines(text: &[u8]) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    let mut offset = 0;
    for line in text.split(|&b| b == b'\n') {
        let trimmed = line.strip_suffix(b"\r").unwrap_or(line);
        if !trimmed.is_empty() {
            graphs.push(decode_graph6(trimmed).map_err(|e| shift(e, offset))?);
        }
        offset += line.len() + 1;
    }
    Ok(graphs)
}
