//! graph6 codec: the printable-ASCII interchange format for small graphs,
//! one graph per line.
//!
//! The header encodes the order (one byte `63 + n` for `n <= 62`, otherwise
//! `'~'` followed by three bytes carrying 18 bits). The payload packs the
//! upper-triangle adjacency bits in column order, six bits per byte offset
//! by 63, padded with zero bits.

use crate::error::Graph6Error;
use crate::graph::{Graph, MAX_VERTICES};

const OFFSET: u8 = 63;
const LONG_HEADER: u8 = 126; // '~'

fn payload_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Encodes a graph as a graph6 line (without the trailing newline).
pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(OFFSET + n as u8);
    } else {
        out.push(LONG_HEADER);
        out.push(OFFSET + ((n >> 12) & 0x3f) as u8);
        out.push(OFFSET + ((n >> 6) & 0x3f) as u8);
        out.push(OFFSET + (n & 0x3f) as u8);
    }
    let mut group = 0u8;
    let mut filled = 0;
    for col in 1..n {
        for row in 0..col {
            group = group << 1 | u8::from(g.has_edge(row, col));
            filled += 1;
            if filled == 6 {
                out.push(OFFSET + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(OFFSET + (group << (6 - filled)));
    }
    debug_assert_eq!(out.len(), payload_len(n) + if n <= 62 { 1 } else { 4 });
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decodes one graph6 line. The line must be exactly one encoded graph, no
/// trailing newline.
pub fn decode(line: &str) -> Result<Graph, Graph6Error> {
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (column, &b) in bytes.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte { column, byte: b });
        }
    }
    let (n, payload) = if bytes[0] == LONG_HEADER {
        if bytes.len() < 4 {
            return Err(Graph6Error::Truncated {
                expected: 4,
                found: bytes.len(),
            });
        }
        let n = (usize::from(bytes[1] - OFFSET) << 12)
            | (usize::from(bytes[2] - OFFSET) << 6)
            | usize::from(bytes[3] - OFFSET);
        (n, &bytes[4..])
    } else {
        (usize::from(bytes[0] - OFFSET), &bytes[1..])
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(Graph6Error::UnsupportedOrder(n));
    }
    let expected = payload_len(n);
    if payload.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingData {
            expected,
            found: payload.len(),
        });
    }

    let mut edges = Vec::new();
    let mut idx = 0usize;
    let total_bits = n * (n - 1) / 2;
    for col in 1..n {
        for row in 0..col {
            let byte = payload[idx / 6] - OFFSET;
            let bit = byte >> (5 - idx % 6) & 1;
            if bit == 1 {
                edges.push((row, col));
            }
            idx += 1;
        }
    }
    // Padding bits in the final byte must be zero for the encoding to be
    // canonical; reject anything else so round-trips stay byte-exact.
    if total_bits % 6 != 0 {
        let last = payload[expected - 1] - OFFSET;
        let pad = 6 - total_bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::Padding);
        }
    }
    Graph::from_edges(n, &edges).map_err(|_| Graph6Error::UnsupportedOrder(n))
}
