//! Directed cover graphs and their DOT / JSON exports.

use std::collections::BTreeSet;
use std::fmt::{self, Display, Write as _};

use serde::Serialize;

/// A covering pair, oriented from the smaller element to the larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge<T> {
    pub lower: T,
    pub upper: T,
}

impl<T> Edge<T> {
    pub fn new(lower: T, upper: T) -> Self {
        Edge { lower, upper }
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Edge<U> {
        Edge {
            lower: f(&self.lower),
            upper: f(&self.upper),
        }
    }
}

impl<T: Ord + Clone> Edge<T> {
    /// The underlying unordered pair, as (min, max).
    pub fn unordered(&self) -> (T, T) {
        if self.lower <= self.upper {
            (self.lower.clone(), self.upper.clone())
        } else {
            (self.upper.clone(), self.lower.clone())
        }
    }
}

/// Elements plus covering relations of a finite poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDiagram<T> {
    pub nodes: Vec<T>,
    pub edges: Vec<Edge<T>>,
}

#[derive(Serialize)]
struct JsonDiagram {
    nodes: Vec<String>,
    edges: Vec<[String; 2]>,
}

impl<T: Ord + Clone> HasseDiagram<T> {
    /// Sorts nodes and edges so exports are deterministic.
    pub fn new(
        nodes: impl IntoIterator<Item = T>,
        edges: impl IntoIterator<Item = Edge<T>>,
    ) -> Self {
        let nodes: BTreeSet<T> = nodes.into_iter().collect();
        let edges: BTreeSet<Edge<T>> = edges.into_iter().collect();
        HasseDiagram {
            nodes: nodes.into_iter().collect(),
            edges: edges.into_iter().collect(),
        }
    }

    pub fn edge_set(&self) -> BTreeSet<Edge<T>> {
        self.edges.iter().cloned().collect()
    }

    pub fn undirected_edge_set(&self) -> BTreeSet<(T, T)> {
        self.edges.iter().map(Edge::unordered).collect()
    }
}

impl<T: Display> HasseDiagram<T> {
    /// Directed graph, `lower -> upper`.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        for n in &self.nodes {
            writeln!(out, "  \"{n}\";").unwrap();
        }
        for e in &self.edges {
            writeln!(out, "  \"{}\" -> \"{}\";", e.lower, e.upper).unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// `{"nodes": [...], "edges": [[lower, upper], ...]}`.
    pub fn to_json(&self) -> String {
        let diagram = JsonDiagram {
            nodes: self.nodes.iter().map(ToString::to_string).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| [e.lower.to_string(), e.upper.to_string()])
                .collect(),
        };
        serde_json::to_string_pretty(&diagram).expect("diagram serializes")
    }
}

impl<T: Display> Display for Edge<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} < {}", self.lower, self.upper)
    }
}
