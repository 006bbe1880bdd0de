//! graph6: printable encoding of undirected graphs. A size header (one byte
//! `63 + n` for `n ≤ 62`, else `~` plus three bytes) is followed by the upper
//! triangle in column-major order, `(0,1), (0,2), (1,2), (0,3), …`, packed six
//! bits per byte, most significant first, each byte offset by 63.

use super::Graph;
use crate::error::{Error, Result};

const MAX_ORDER: usize = 258_047;

pub fn graph6_write(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        assert!(n <= MAX_ORDER, "order {n} too large for graph6");
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|b| 63 + b as u8));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decodes one graph6 string. An optional `>>graph6<<` prefix and trailing
/// whitespace are accepted.
pub fn graph6_read(text: &str) -> Result<Graph> {
    let text = text.trim_end();
    let (base, body) = match text.strip_prefix(">>graph6<<") {
        Some(rest) => (10, rest.as_bytes()),
        None => (0, text.as_bytes()),
    };
    let err = |offset: usize, msg: String| Error::Graph6 { offset: base + offset, msg };
    for (k, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(k, format!("byte {b:#04x} outside 63..=126")));
        }
    }
    let first = *body.first().ok_or_else(|| err(0, "empty input".into()))?;
    let (n, pos) = if first < 126 {
        ((first - 63) as usize, 1)
    } else {
        if body.get(1) == Some(&126) {
            return Err(err(1, "orders above 258047 are not supported".into()));
        }
        if body.len() < 4 {
            return Err(err(body.len(), "truncated size header".into()));
        }
        let n = body[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, 4)
    };

    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    let have = body.len() - pos;
    if have != need {
        return Err(err(body.len().min(pos + need), format!("expected {need} data bytes for order {n}, got {have}")));
    }
    let data = &body[pos..];
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    if let Some(k) = (pairs..need * 6).find(|&k| bit(k)) {
        return Err(err(pos + k / 6, "nonzero padding bits".into()));
    }
    Ok(g)
}

/// One graph per non-empty line. Errors carry the 1-based line number in the message.
pub fn graph6_read_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| {
            graph6_read(l.trim()).map_err(|e| match e {
                Error::Graph6 { offset, msg } => Error::Graph6 { offset, msg: format!("line {}: {msg}", k + 1) },
                other => other,
            })
        })
        .collect()
}
