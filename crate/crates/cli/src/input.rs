//! Graph input: a graph6 string, a file of graph6 lines, or an edge-list file.

use std::path::Path;

use lambda3_core::graphs::{edge_list_read, graph6_read, graph6_read_lines, Graph};
use lambda3_core::Result;

/// An existing file is read and sniffed; anything else is parsed as one graph6 string.
pub fn read_graphs(arg: &str) -> std::result::Result<Vec<Graph>, String> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        parse_file(&text).map_err(|e| format!("{arg}: {e}"))
    } else {
        graph6_read(arg).map(|g| vec![g]).map_err(|e| format!("{arg:?} is neither a file nor graph6: {e}"))
    }
}

/// Edge lists open with an `n m` header of two integers; graph6 never contains spaces.
fn parse_file(text: &str) -> Result<Vec<Graph>> {
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
    let is_edge_list = first.is_some_and(|l| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        toks.len() == 2 && toks.iter().all(|t| t.parse::<usize>().is_ok())
    });
    if is_edge_list {
        edge_list_read(text).map(|g| vec![g])
    } else {
        graph6_read_lines(text)
    }
}
