//! graph6 text codec, short form only (n <= 62, one byte of order).

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, DEFAULT_OBJECT_CAP};

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, msg: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        msg: msg.into(),
    }
}

/// Parses a one-line graph6 string under the default object cap.
pub fn parse_graph6(text: &str) -> Result<SimpleGraph> {
    parse_graph6_with_cap(text, DEFAULT_OBJECT_CAP)
}

/// Parses a one-line graph6 string; rejects graphs whose object count
/// (n + m) exceeds `cap`.
pub fn parse_graph6_with_cap(text: &str, cap: u32) -> Result<SimpleGraph> {
    let mut s = text.trim_end_matches(['\n', '\r']);
    let mut base = 0usize;
    if let Some(rest) = s.strip_prefix(HEADER) {
        s = rest;
        base = HEADER.len();
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(err(base, "empty graph6 string"));
    }
    if bytes[0] == 126 {
        return Err(err(
            base,
            "multi-byte order form (n > 62) is not supported",
        ));
    }
    if !(63..=125).contains(&bytes[0]) {
        return Err(err(base, format!("invalid order byte {}", bytes[0])));
    }
    let n = (bytes[0] - 63) as u32;
    let bit_count = (n as usize) * (n as usize).saturating_sub(1) / 2;
    let body_len = bit_count.div_ceil(6);
    if bytes.len() != 1 + body_len {
        return Err(err(
            base + bytes.len().min(1 + body_len),
            format!(
                "expected {} data bytes for n = {n}, found {}",
                body_len,
                bytes.len() - 1
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + bit / 6];
            if !(63..=126).contains(&byte) {
                return Err(err(base + 1 + bit / 6, format!("invalid data byte {byte}")));
            }
            let val = byte - 63;
            if (val >> (5 - bit % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
            if bit == bit_count {
                break 'outer;
            }
        }
    }
    // Remaining padding bits must be zero.
    while bit < body_len * 6 {
        let byte = bytes[1 + bit / 6];
        if !(63..=126).contains(&byte) {
            return Err(err(base + 1 + bit / 6, format!("invalid data byte {byte}")));
        }
        if ((byte - 63) >> (5 - bit % 6)) & 1 == 1 {
            return Err(err(base + 1 + bit / 6, "nonzero padding bit"));
        }
        bit += 1;
    }
    let g = SimpleGraph::new(n, edges)?;
    if g.objects() > cap {
        return Err(Error::CapExceeded {
            objects: g.objects() as usize,
            cap,
        });
    }
    Ok(g)
}

/// Encodes a graph in the short graph6 form.
pub fn to_graph6(g: &SimpleGraph) -> String {
    let n = g.n();
    let mut out = vec![(n as u8) + 63];
    let bit_count = (n as usize) * (n as usize).saturating_sub(1) / 2;
    let mut bits = vec![0u8; bit_count.div_ceil(6) * 6];
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                bits[bit] = 1;
            }
            bit += 1;
        }
    }
    for chunk in bits.chunks(6) {
        let mut val = 0u8;
        for (pos, &b) in chunk.iter().enumerate() {
            val |= b << (5 - pos);
        }
        out.push(val + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Reads graphs from graph6 line format: one graph per line, blank lines and
/// `#`-prefixed comment lines skipped.
pub fn read_graph6_lines(text: &str, cap: u32) -> Result<Vec<SimpleGraph>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_graph6_with_cap(line, cap)?);
    }
    Ok(out)
}
