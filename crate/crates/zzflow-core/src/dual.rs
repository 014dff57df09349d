//! The directed dual graph of the triangulation, a.k.a. the move graph.
//!
//! Nodes are integer flows (equivalently maximal cliques); there is an
//! edge `(a, b, i)` when the plus move at `i` carries flow `a` to flow `b`
//! and the move's offset sequence is free of zeroes. The graph embeds in
//! `Z^{n-2}` with every edge a unit step along the axis of its move.

use std::collections::HashMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bitset::BitSet;
use crate::cliques::{clique_to_flow, enumerate_cliques};
use crate::error::{Error, Result};
use crate::flows::{base_flow, enumerate_flows, flow_move, flow_offsets, IntegerFlow, MoveSign};
use crate::graph::ZigzagGraph;

/// How to construct the dual graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualMethod {
    /// Scan flows and apply elementary moves, keeping zero-free offsets.
    Flows,
    /// Enumerate maximal cliques, join those sharing all but one route,
    /// and orient each join by the elementary move between their flows.
    Cliques,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DualEdge {
    pub from: usize,
    pub to: usize,
    pub move_index: usize,
}

/// Directed dual graph; nodes are indexed by canonical flow order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    n: usize,
    nodes: Vec<IntegerFlow>,
    edges: Vec<DualEdge>,
    coords: Option<Vec<Vec<i64>>>,
}

impl DualGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[IntegerFlow] {
        &self.nodes
    }

    pub fn edges(&self) -> &[DualEdge] {
        &self.edges
    }

    /// Coordinates assigned by [`DualGraph::embed`], if any.
    pub fn coords(&self) -> Option<&[Vec<i64>]> {
        self.coords.as_deref()
    }

    pub fn node_index(&self, flow: &IntegerFlow) -> Option<usize> {
        self.nodes.binary_search(flow).ok()
    }

    /// Out-degree and in-degree of every node.
    pub fn degree_stats(&self) -> Vec<(usize, usize)> {
        let mut stats = vec![(0, 0); self.nodes.len()];
        for e in &self.edges {
            stats[e.from].0 += 1;
            stats[e.to].1 += 1;
        }
        stats
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            neighbors[e.from].push(e.to);
            neighbors[e.to].push(e.from);
        }
        while let Some(k) = stack.pop() {
            for &o in &neighbors[k] {
                if !seen[o] {
                    seen[o] = true;
                    stack.push(o);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Assigns grid coordinates by walking from the all-slack base flow at
    /// the origin; the move at `i` steps along axis `i - 2`.
    ///
    /// Any contradiction between two walks to the same node, any repeated
    /// coordinate, and any unreachable node is a consistency fault.
    pub fn embed(&self) -> Result<DualGraph> {
        let dims = self.n - 2;
        let start = self
            .node_index(&base_flow(self.n))
            .ok_or_else(|| Error::Inconsistency("base flow is not a node".into()))?;
        let mut neighbors: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            neighbors[e.from].push((e.to, e.move_index, 1));
            neighbors[e.to].push((e.from, e.move_index, -1));
        }
        let mut coords: Vec<Option<Vec<i64>>> = vec![None; self.nodes.len()];
        coords[start] = Some(vec![0; dims]);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            let here = coords[k].clone().expect("queued nodes have coordinates");
            for &(o, mv, dir) in &neighbors[k] {
                let mut cand = here.clone();
                cand[mv - 2] += dir;
                match &coords[o] {
                    None => {
                        coords[o] = Some(cand);
                        queue.push_back(o);
                    }
                    Some(existing) => {
                        if *existing != cand {
                            return Err(Error::Inconsistency(format!(
                                "two walks disagree on the coordinate of {}",
                                self.nodes[o]
                            )));
                        }
                    }
                }
            }
        }
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut done = Vec::with_capacity(self.nodes.len());
        for (k, c) in coords.into_iter().enumerate() {
            let c = c.ok_or_else(|| {
                Error::Inconsistency(format!("node {} unreachable from the base flow", self.nodes[k]))
            })?;
            if let Some(prev) = seen.insert(c.clone(), k) {
                return Err(Error::Inconsistency(format!(
                    "nodes {} and {} share a coordinate",
                    self.nodes[prev], self.nodes[k]
                )));
            }
            done.push(c);
        }
        Ok(DualGraph {
            n: self.n,
            nodes: self.nodes.clone(),
            edges: self.edges.clone(),
            coords: Some(done),
        })
    }

    /// DOT rendering; node labels show the flow and, when embedded, its
    /// coordinate.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("digraph dual{} {{\n", self.n));
        for (k, f) in self.nodes.iter().enumerate() {
            let label = match self.coords.as_ref() {
                Some(cs) => format!(
                    "{f} @({})",
                    cs[k].iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
                ),
                None => f.to_string(),
            };
            s.push_str(&format!("  n{k} [label=\"{label}\"];\n"));
        }
        for e in &self.edges {
            s.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"];\n",
                e.from, e.to, e.move_index
            ));
        }
        s.push_str("}\n");
        s
    }
}

impl Serialize for DualGraph {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct NodeView<'a> {
            flow: &'a IntegerFlow,
            coord: Option<&'a Vec<i64>>,
        }
        let nodes: Vec<NodeView> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(k, f)| NodeView {
                flow: f,
                coord: self.coords.as_ref().map(|cs| &cs[k]),
            })
            .collect();
        let mut st = ser.serialize_struct("DualGraph", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("nodes", &nodes)?;
        st.serialize_field("edges", &self.edges)?;
        st.end()
    }
}

/// Builds the dual graph by the chosen method.
pub fn build_dual(n: usize, method: DualMethod) -> Result<DualGraph> {
    match method {
        DualMethod::Flows => build_from_flows(n),
        DualMethod::Cliques => build_from_cliques(n),
    }
}

fn build_from_flows(n: usize) -> Result<DualGraph> {
    let nodes = enumerate_flows(n)?;
    let mut edges = Vec::new();
    for (a, flow) in nodes.iter().enumerate() {
        for i in 2..n {
            let Some(moved) = flow_move(flow, i, MoveSign::Plus)? else {
                continue;
            };
            if flow_offsets(flow, i)?.has_zero() {
                continue;
            }
            let b = nodes
                .binary_search(&moved)
                .map_err(|_| Error::Inconsistency("move left the flow set".into()))?;
            edges.push(DualEdge {
                from: a,
                to: b,
                move_index: i,
            });
        }
    }
    edges.sort();
    Ok(DualGraph {
        n,
        nodes,
        edges,
        coords: None,
    })
}

fn build_from_cliques(n: usize) -> Result<DualGraph> {
    let g = ZigzagGraph::new(n)?;
    let routes = g.enumerate_routes();
    let route_index: HashMap<_, _> = routes.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
    let cliques = enumerate_cliques(n)?;
    let members: Vec<BitSet> = cliques
        .iter()
        .map(|c| {
            let mut b = BitSet::new(routes.len());
            for r in c.routes() {
                b.set(route_index[r]);
            }
            b
        })
        .collect();
    let flows: Vec<IntegerFlow> = cliques
        .iter()
        .map(clique_to_flow)
        .collect::<Result<_>>()?;

    // Reindex nodes into canonical flow order.
    let mut order: Vec<usize> = (0..flows.len()).collect();
    order.sort_by(|&a, &b| flows[a].cmp(&flows[b]));
    let mut rank = vec![0usize; flows.len()];
    for (pos, &k) in order.iter().enumerate() {
        rank[k] = pos;
    }
    let nodes: Vec<IntegerFlow> = order.iter().map(|&k| flows[k].clone()).collect();
    if nodes.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Inconsistency(
            "two distinct maximal cliques carry the same flow".into(),
        ));
    }

    let mut edges = Vec::new();
    for a in 0..cliques.len() {
        for b in a + 1..cliques.len() {
            if members[a].intersection_count(&members[b]) != n {
                continue;
            }
            let (fa, fb) = (&flows[a], &flows[b]);
            let mut oriented = None;
            for i in 2..n {
                if flow_move(fa, i, MoveSign::Plus)?.as_ref() == Some(fb) {
                    oriented = Some((rank[a], rank[b], i));
                    break;
                }
                if flow_move(fb, i, MoveSign::Plus)?.as_ref() == Some(fa) {
                    oriented = Some((rank[b], rank[a], i));
                    break;
                }
            }
            let Some((from, to, move_index)) = oriented else {
                return Err(Error::Inconsistency(format!(
                    "adjacent cliques carry flows {fa} and {fb}, which differ by no elementary move"
                )));
            };
            edges.push(DualEdge {
                from,
                to,
                move_index,
            });
        }
    }
    edges.sort();
    Ok(DualGraph {
        n,
        nodes,
        edges,
        coords: None,
    })
}

/// Closed-form embedding coordinate of a flow: axis `k` (for the move at
/// `k + 2`) carries the partial sum of nonslack flow up to `y_{k+2}`.
/// Every plus move raises exactly its own axis by one, so this is the
/// potential the walked embedding must reproduce.
pub fn potential_coords(flow: &IntegerFlow) -> Vec<i64> {
    let n = flow.n();
    let mut acc = 0i64;
    (2..n)
        .map(|i| {
            acc += flow.y(i) as i64;
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flow(n: usize, x: &[u32], y: &[u32]) -> IntegerFlow {
        IntegerFlow::new(n, x.to_vec(), y.to_vec()).unwrap()
    }

    #[test]
    fn worked_example_dual() {
        let dual = build_dual(4, DualMethod::Flows).unwrap();
        assert_eq!(dual.nodes().len(), 5);
        assert_eq!(dual.edges().len(), 5);
        let idx = |x: &[u32], y: &[u32]| dual.node_index(&flow(4, x, y)).unwrap();
        let a = idx(&[0, 1, 2], &[0, 0, 0, 0]);
        let b = idx(&[0, 1, 1], &[0, 0, 0, 1]);
        let c = idx(&[0, 1, 0], &[0, 0, 0, 2]);
        let d = idx(&[0, 0, 1], &[0, 0, 1, 0]);
        let e = idx(&[0, 0, 0], &[0, 0, 1, 1]);
        let mut expect = vec![
            DualEdge { from: a, to: b, move_index: 3 },
            DualEdge { from: b, to: c, move_index: 3 },
            DualEdge { from: b, to: d, move_index: 2 },
            DualEdge { from: c, to: e, move_index: 2 },
            DualEdge { from: d, to: e, move_index: 3 },
        ];
        expect.sort();
        assert_eq!(dual.edges(), expect);
    }

    #[test]
    fn methods_agree_small() {
        for n in 3..=5 {
            let via_flows = build_dual(n, DualMethod::Flows).unwrap();
            let via_cliques = build_dual(n, DualMethod::Cliques).unwrap();
            assert_eq!(via_flows.nodes(), via_cliques.nodes(), "n={n}");
            assert_eq!(via_flows.edges(), via_cliques.edges(), "n={n}");
        }
    }

    #[test]
    fn worked_example_embedding() {
        let dual = build_dual(4, DualMethod::Flows).unwrap().embed().unwrap();
        let coord = |x: &[u32], y: &[u32]| {
            let k = dual.node_index(&flow(4, x, y)).unwrap();
            dual.coords().unwrap()[k].clone()
        };
        assert_eq!(coord(&[0, 1, 2], &[0, 0, 0, 0]), [0, 0]);
        assert_eq!(coord(&[0, 1, 1], &[0, 0, 0, 1]), [0, 1]);
        assert_eq!(coord(&[0, 1, 0], &[0, 0, 0, 2]), [0, 2]);
        assert_eq!(coord(&[0, 0, 1], &[0, 0, 1, 0]), [1, 1]);
        assert_eq!(coord(&[0, 0, 0], &[0, 0, 1, 1]), [1, 2]);
    }

    #[test]
    fn embedding_matches_potential() {
        for n in 3..=6 {
            let dual = build_dual(n, DualMethod::Flows).unwrap().embed().unwrap();
            for (k, f) in dual.nodes().iter().enumerate() {
                assert_eq!(dual.coords().unwrap()[k], potential_coords(f), "n={n} {f}");
            }
        }
    }

    #[test]
    fn degree_stats_worked_example() {
        let dual = build_dual(4, DualMethod::Flows).unwrap();
        let stats = dual.degree_stats();
        let at = |x: &[u32], y: &[u32]| stats[dual.node_index(&flow(4, x, y)).unwrap()];
        assert_eq!(at(&[0, 1, 2], &[0, 0, 0, 0]), (1, 0)); // base
        assert_eq!(at(&[0, 1, 1], &[0, 0, 0, 1]), (2, 1));
        assert_eq!(at(&[0, 1, 0], &[0, 0, 0, 2]), (1, 1));
        assert_eq!(at(&[0, 0, 1], &[0, 0, 1, 0]), (1, 1));
        assert_eq!(at(&[0, 0, 0], &[0, 0, 1, 1]), (0, 2));
        let total: usize = stats.iter().map(|s| s.0).sum();
        assert_eq!(total, dual.edges().len());
    }

    #[test]
    fn five_vertex_dual_size() {
        let dual = build_dual(5, DualMethod::Flows).unwrap();
        assert_eq!(dual.nodes().len(), 16);
        assert_eq!(dual.edges().len(), 24);
        assert!(dual.is_connected());
    }

    #[test]
    fn dot_and_json_exports() {
        let dual = build_dual(4, DualMethod::Flows).unwrap().embed().unwrap();
        let dot = dual.to_dot();
        assert!(dot.contains("digraph dual4 {"));
        assert!(dot.contains("@(0,0)"));
        assert!(dot.contains("[label=\"3\"]"));
        let json = serde_json::to_string(&dual).unwrap();
        assert!(json.starts_with(r#"{"n":4,"nodes":[{"flow":{"n":4,"x":[0,0,0]"#));
        assert!(json.contains(r#""coord":[1,2]"#));
        assert!(json.contains(r#""edges":[{"from":"#));
    }
}
