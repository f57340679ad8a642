//! Device coupling graphs and their path-length and clustering metrics.

use std::collections::{BTreeSet, VecDeque};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const BUILTIN: [(&str, &str); 6] = [
    ("grid_4x5", include_str!("../../data/graphs/grid_4x5.txt")),
    ("grid_7x8", include_str!("../../data/graphs/grid_7x8.txt")),
    ("tokyo", include_str!("../../data/graphs/tokyo.txt")),
    ("rochester", include_str!("../../data/graphs/rochester.txt")),
    ("sycamore", include_str!("../../data/graphs/sycamore.txt")),
    ("hummingbird", include_str!("../../data/graphs/hummingbird.txt")),
];

/// Directory whose `<name>.txt` files replace the embedded adjacency lists.
pub const GRAPH_DIR_VAR: &str = "QARITH_GRAPH_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviceGraph {
    pub name: String,
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl DeviceGraph {
    /// Builds a simple undirected graph; edges are normalised to `(low, high)`.
    pub fn new(name: &str, nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u == v || u >= nodes || v >= nodes {
                return Err(Error::InvalidParam(format!("bad edge {u}-{v} in {name}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidParam(format!("duplicate edge {u}-{v} in {name}")));
            }
        }
        Ok(DeviceGraph {
            name: name.to_string(),
            nodes,
            edges: seen.into_iter().collect(),
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        DeviceGraph::new(&format!("k{n}"), n, &edges).expect("complete graph is simple")
    }

    /// Reads the `n m` header followed by `m` lines of `u v`.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let pair = |(line, l): (usize, &str)| -> Result<(usize, usize)> {
            let nums: Vec<usize> = l
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse {
                    line,
                    msg: format!("{e}"),
                })?;
            match nums[..] {
                [a, b] => Ok((a, b)),
                _ => Err(Error::Parse {
                    line,
                    msg: "expected two integers".into(),
                }),
            }
        };
        let header = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let (nodes, m) = pair(header)?;
        let edges = lines.map(pair).collect::<Result<Vec<_>>>()?;
        if edges.len() != m {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header promises {m} edges, found {}", edges.len()),
            });
        }
        DeviceGraph::new(name, nodes, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.nodes, self.edges.len());
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    fn distances_from(adj: &[Vec<usize>], src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; adj.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// The six shipped devices, honouring `QARITH_GRAPH_DIR` overrides.
pub fn builtin_graphs() -> Result<Vec<DeviceGraph>> {
    BUILTIN.iter().map(|(name, _)| graph_by_name(name)).collect()
}

pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

/// Looks up a shipped device by name (case-insensitive, `-` or `_`).
pub fn graph_by_name(name: &str) -> Result<DeviceGraph> {
    let key = name.to_ascii_lowercase().replace('-', "_");
    let (name, embedded) = BUILTIN
        .iter()
        .find(|(n, _)| *n == key)
        .ok_or_else(|| Error::UnknownName(format!("graph '{name}'")))?;
    if let Ok(dir) = std::env::var(GRAPH_DIR_VAR) {
        let path = Path::new(&dir).join(format!("{name}.txt"));
        if let Ok(text) = std::fs::read_to_string(&path) {
            return DeviceGraph::parse(name, &text);
        }
    }
    DeviceGraph::parse(name, embedded)
}

/// Mean shortest-path length over unordered pairs of distinct nodes.
pub fn cpl(g: &DeviceGraph) -> Result<f64> {
    if g.nodes < 2 {
        return Err(Error::InvalidParam("path length needs at least two nodes".into()));
    }
    let adj = g.adjacency();
    let mut total = 0usize;
    for src in 0..g.nodes {
        for d in DeviceGraph::distances_from(&adj, src).into_iter().skip(src + 1) {
            total += d.ok_or(Error::Disconnected)?;
        }
    }
    let pairs = g.nodes * (g.nodes - 1) / 2;
    Ok(total as f64 / pairs as f64)
}

/// Mean local clustering coefficient; nodes of degree below two count as 0.
pub fn clustering_coefficient(g: &DeviceGraph) -> f64 {
    if g.nodes == 0 {
        return 0.0;
    }
    let adj = g.adjacency();
    let edges: BTreeSet<(usize, usize)> = g.edges.iter().copied().collect();
    let linked = |a: usize, b: usize| edges.contains(&(a.min(b), a.max(b)));
    let sum: f64 = adj
        .iter()
        .map(|nb| {
            let k = nb.len();
            if k < 2 {
                return 0.0;
            }
            let mut tri = 0;
            for i in 0..k {
                for j in i + 1..k {
                    tri += linked(nb[i], nb[j]) as usize;
                }
            }
            tri as f64 / (k * (k - 1) / 2) as f64
        })
        .sum();
    sum / g.nodes as f64
}

/// Physical CNOTs per logical CNOT, taken as the path length rounded to the
/// nearest integer.
pub fn cnot_overhead_estimate(g: &DeviceGraph) -> Result<f64> {
    Ok(cpl(g)?.round())
}
