//! Input loading and witness files.
//!
//! Digraph inputs are either a path to an edge-list file (`u v` per line,
//! `#` comments, optional `# n=<count>`), a path to a file holding a
//! canonical tree encoding, or the canonical encoding itself given inline.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use treecsp_core::digraph::{parse_canonical, parse_edge_list, Digraph, TreeDigraph};
use treecsp_core::indicator::{OpsWitness, PolymorphismWitness, SetWitness};

#[derive(Debug)]
pub enum InputError {
    Io(io::Error),
    Unparseable { spec: String, detail: String },
    NotATree(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io(e) => write!(f, "io error: {e}"),
            InputError::Unparseable { spec, detail } => {
                write!(
                    f,
                    "cannot read {spec:?} as an edge list or canonical encoding: {detail}"
                )
            }
            InputError::NotATree(detail) => write!(f, "input is not a tree: {detail}"),
        }
    }
}

impl From<io::Error> for InputError {
    fn from(e: io::Error) -> InputError {
        InputError::Io(e)
    }
}

fn parse_text(spec: &str, text: &str) -> Result<Digraph, InputError> {
    let trimmed = text.trim();
    if trimmed.starts_with(['C', 'B', '[']) {
        return parse_canonical(trimmed)
            .map(|(tree, _)| tree.into_digraph())
            .map_err(|e| InputError::Unparseable {
                spec: spec.into(),
                detail: e.to_string(),
            });
    }
    parse_edge_list(text).map_err(|e| InputError::Unparseable {
        spec: spec.into(),
        detail: e.to_string(),
    })
}

/// Loads a digraph from a file path or an inline canonical encoding.
pub fn load_digraph(spec: &str) -> Result<Digraph, InputError> {
    if Path::new(spec).exists() {
        let text = fs::read_to_string(spec)?;
        return parse_text(spec, &text);
    }
    parse_text(spec, spec)
}

/// Loads a tree, rejecting non-tree digraphs.
pub fn load_tree(spec: &str) -> Result<TreeDigraph, InputError> {
    let graph = load_digraph(spec)?;
    TreeDigraph::new(graph).map_err(|e| InputError::NotATree(e.to_string()))
}

fn write_ops_witness(out: &mut dyn Write, w: &OpsWitness) -> io::Result<()> {
    for (sym_idx, table) in w.tables.iter().enumerate() {
        for (tuple, value) in w.entries(sym_idx) {
            let args: Vec<String> = tuple.iter().map(usize::to_string).collect();
            writeln!(out, "{}({}) = {}", table.symbol, args.join(","), value)?;
        }
    }
    Ok(())
}

fn write_set_witness(out: &mut dyn Write, w: &SetWitness) -> io::Result<()> {
    // one line per subset, elements ascending; the operation takes any
    // argument tuple with that set of values
    for &(mask, value) in &w.entries {
        let mut members = Vec::new();
        let mut m = mask;
        while m != 0 {
            members.push((m.trailing_zeros() as usize).to_string());
            m &= m - 1;
        }
        writeln!(out, "s({}) = {}", members.join(","), value)?;
    }
    Ok(())
}

/// Writes a witness as text, one `f(a1,…,ak) = b` line per tuple (or per
/// argument set for totally symmetric witnesses), in deterministic order.
pub fn write_witness(path: &Path, witness: &PolymorphismWitness) -> io::Result<()> {
    let file = fs::File::create(path)?;
    let mut out = io::BufWriter::new(file);
    match witness {
        PolymorphismWitness::Operations(ops) => write_ops_witness(&mut out, ops)?,
        PolymorphismWitness::SetFunction(set) => write_set_witness(&mut out, set)?,
    }
    out.flush()
}
