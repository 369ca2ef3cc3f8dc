//! Hasse diagram export.

use std::fmt::Write;

use serde::Serialize;

use crate::canonical::{MinimalKind, MinimalKindTag};
use crate::lattice::ExtensionLattice;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphNode {
    pub index: usize,
    pub dim: usize,
    pub basis: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub kind: MinimalKindTag,
    /// Position of the crucial ideal in the sorted maximal ideals of `from`.
    pub crucial_ideal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Graph {
    pub bottom: usize,
    pub top: usize,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

impl Graph {
    pub fn new(lat: &ExtensionLattice, kinds: &[MinimalKind]) -> Self {
        let nodes = lat
            .nodes()
            .iter()
            .enumerate()
            .map(|(index, n)| GraphNode {
                index,
                dim: n.dim(),
                basis: n.space().rows().to_vec(),
            })
            .collect();
        let edges = lat
            .cover_edges()
            .iter()
            .zip(kinds)
            .map(|(&(from, to), k)| GraphEdge {
                from,
                to,
                kind: k.tag,
                crucial_ideal: lat.nodes()[from]
                    .spectrum()
                    .position(&k.conductor)
                    .expect("crucial ideal is maximal"),
            })
            .collect();
        Graph {
            bottom: lat.bottom(),
            top: lat.top(),
            nodes,
            edges,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graphs serialize") + "\n"
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph interval {\n  rankdir=BT;\n  node [shape=box];\n");
        for n in &self.nodes {
            let basis: Vec<String> = n
                .basis
                .iter()
                .map(|r| {
                    let cells: Vec<String> = r.iter().map(u32::to_string).collect();
                    format!("({})", cells.join(","))
                })
                .collect();
            let _ = writeln!(
                out,
                "  n{} [label=\"{}: dim {}\\n{}\"];",
                n.index,
                n.index,
                n.dim,
                basis.join("\\n")
            );
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{}{}\"];",
                e.from,
                e.to,
                e.kind.letter(),
                e.crucial_ideal
            );
        }
        out.push_str("}\n");
        out
    }
}
