//! Edge-list text: a header line `n m`, then `m` lines `i j` with 0-based vertices.
//! Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn edge_list_read(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header \"n m\"".into() })?;
    let [n, m] = two_ints(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let [i, j] = two_ints(line, text)?;
        if i >= n || j >= n || i == j {
            return Err(Error::Parse { line, msg: format!("invalid edge ({i}, {j}) for order {n}") });
        }
        edges.push((i, j));
    }
    if edges.len() != m {
        return Err(Error::Parse { line, msg: format!("header declares {m} edges, found {}", edges.len()) });
    }
    let g = Graph::from_edges(n, &edges)?;
    if g.edge_count() != m {
        return Err(Error::Parse { line, msg: "duplicate edges".into() });
    }
    Ok(g)
}

pub fn edge_list_write(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (i, j) in g.edges() {
        let _ = writeln!(s, "{i} {j}");
    }
    s
}

fn two_ints(line: usize, text: &str) -> Result<[usize; 2]> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let parse = |t: &str| t.parse::<usize>().map_err(|_| Error::Parse { line, msg: format!("bad integer {t:?}") });
    match toks.as_slice() {
        [a, b] => Ok([parse(a)?, parse(b)?]),
        _ => Err(Error::Parse { line, msg: format!("expected two integers, got {text:?}") }),
    }
}
