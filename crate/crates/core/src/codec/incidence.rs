//! Compressed incidence stream: `n` and `m` as self-delimiting headers,
//! then both endpoints of every edge as fixed-width indices.
//!
//! A header for `x >= 1` is `ceil(log2 x)` one bits, a zero, then `x - 1` in
//! `ceil(log2 x)` bits. Endpoints are 0-based, `ceil(log2 n)` bits each,
//! edges in lexicographic order. Vertex columns are implied by `n`.

use super::{BitReader, BitWriter, CodecError};
use crate::graph::{Graph, Vertex};
use crate::sums::ceil_log2_u64;

fn write_header(w: &mut BitWriter, x: u64) {
    let k = ceil_log2_u64(x) as u32;
    w.push_repeated(true, k as usize);
    w.push_bit(false);
    w.push_bits(x - 1, k);
}

fn read_header(r: &mut BitReader<'_>) -> Result<u64, CodecError> {
    let mut k = 0u32;
    loop {
        match r.read_bit() {
            Some(true) => k += 1,
            Some(false) => break,
            None => return Err(CodecError::Truncated),
        }
        if k > 63 {
            return Err(CodecError::Malformed("header longer than 63 bits".into()));
        }
    }
    let v = r.read_bits(k).ok_or(CodecError::Truncated)?;
    let x = v + 1;
    if ceil_log2_u64(x) != u64::from(k) {
        return Err(CodecError::Malformed(format!("non-canonical header for {x}")));
    }
    Ok(x)
}

pub fn serialize_incidence(g: &Graph) -> Result<Vec<u8>, CodecError> {
    if g.m() == 0 {
        return Err(CodecError::NoEdges);
    }
    let n = g.n() as u64;
    let width = ceil_log2_u64(n) as u32;
    let mut w = BitWriter::new();
    write_header(&mut w, n);
    write_header(&mut w, g.m() as u64);
    for (u, v) in g.edges() {
        w.push_bits(u64::from(u - 1), width);
        w.push_bits(u64::from(v - 1), width);
    }
    Ok(w.finish())
}

/// Unpadded length: `(2m + 2) ceil(log2 n) + 2 ceil(log2 m) + 2`.
pub fn incidence_bit_length(n: usize, m: usize) -> u64 {
    let ln = ceil_log2_u64(n as u64);
    (2 * m as u64 + 2) * ln + 2 * ceil_log2_u64(m as u64) + 2
}

pub fn parse_incidence(bytes: &[u8]) -> Result<Graph, CodecError> {
    let mut r = BitReader::new(bytes);
    let n = read_header(&mut r)?;
    let m = read_header(&mut r)?;
    let width = ceil_log2_u64(n) as u32;
    if (2 * m).saturating_mul(u64::from(width)) > r.remaining() as u64 {
        return Err(CodecError::Truncated);
    }
    let mut edges = Vec::with_capacity(m as usize);
    let mut previous: Option<(u64, u64)> = None;
    for _ in 0..m {
        let u = r.read_bits(width).ok_or(CodecError::Truncated)?;
        let w = r.read_bits(width).ok_or(CodecError::Truncated)?;
        for index in [u, w] {
            if index >= n {
                return Err(CodecError::IndexOutOfRange { index, n });
            }
        }
        if u >= w || previous.is_some_and(|p| p >= (u, w)) {
            return Err(CodecError::Malformed("edges must be sorted pairs u < w".into()));
        }
        previous = Some((u, w));
        edges.push((u as Vertex + 1, w as Vertex + 1));
    }
    if !r.only_padding_left() {
        return Err(CodecError::TrailingData);
    }
    Ok(Graph::new(n as usize, edges)?)
}
