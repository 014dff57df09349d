//! Coherent route sets and the maximal cliques of the coherence graph.
//!
//! Two routes conflict at a common inner vertex when their framed prefix
//! and suffix orders point in strictly opposite directions there; a pair
//! is coherent when no common inner vertex is conflicted. Maximal sets of
//! pairwise coherent routes all have size `n + 1` and are the maximal
//! simplices of the framed triangulation of the flow polytope; each one
//! carries an integer flow (by counting route prefixes through every
//! edge) and a grove (by recording the full incidence shape).

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::flows::IntegerFlow;
use crate::graph::{compare_prefixes, compare_suffixes, EdgeId, Route, ZigzagGraph};
use crate::groves::{Grove, Tree};

/// Checks that `route` is a valid source-to-sink route for size `n`.
fn check_route(n: usize, route: &Route) -> Result<()> {
    Route::new(n, route.edges().to_vec()).map(|_| ())
}

/// Whether two routes are coherent on the graph with `n` vertices.
pub fn coherent(n: usize, a: &Route, b: &Route) -> Result<bool> {
    ZigzagGraph::new(n)?;
    check_route(n, a)?;
    check_route(n, b)?;
    Ok(coherent_unchecked(n, a, b))
}

fn coherent_unchecked(n: usize, a: &Route, b: &Route) -> bool {
    for v in 2..n {
        let (Some(pa), Some(pb)) = (a.prefix_at(n, v), b.prefix_at(n, v)) else {
            continue;
        };
        let (Some(sa), Some(sb)) = (a.suffix_at(n, v), b.suffix_at(n, v)) else {
            continue;
        };
        let pc = compare_prefixes(pa, pb);
        let sc = compare_suffixes(sa, sb);
        let conflict = matches!(
            (pc, sc),
            (Ordering::Less, Ordering::Greater) | (Ordering::Greater, Ordering::Less)
        );
        if conflict {
            return false;
        }
    }
    true
}

/// A set of routes on one graph, kept sorted in canonical route order.
///
/// The type itself only guarantees a well-formed set; coherence and
/// maximality are properties of where the clique came from. That is
/// deliberate: route sets built from other framings pass through the same
/// type on their way to a flow.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawClique")]
pub struct Clique {
    n: usize,
    routes: Vec<Route>,
}

#[derive(Deserialize)]
struct RawClique {
    n: usize,
    routes: Vec<String>,
}

impl TryFrom<RawClique> for Clique {
    type Error = Error;
    fn try_from(raw: RawClique) -> Result<Self> {
        let routes = raw
            .routes
            .iter()
            .map(|s| Route::parse(raw.n, s))
            .collect::<Result<Vec<_>>>()?;
        Clique::new(raw.n, routes)
    }
}

impl Clique {
    pub fn new(n: usize, mut routes: Vec<Route>) -> Result<Self> {
        ZigzagGraph::new(n)?;
        for r in &routes {
            check_route(n, r)?;
        }
        routes.sort();
        let before = routes.len();
        routes.dedup();
        if routes.len() != before {
            return Err(Error::MalformedClique("duplicate route".into()));
        }
        if routes.is_empty() {
            return Err(Error::MalformedClique("empty route set".into()));
        }
        Ok(Clique { n, routes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.routes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.routes.is_empty()
    }

    pub fn routes(&self) -> &[Route] {
        &self.routes
    }

    pub fn contains(&self, r: &Route) -> bool {
        self.routes.binary_search(r).is_ok()
    }
}

impl std::fmt::Display for Clique {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, r) in self.routes.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// All maximal cliques of the coherence graph, in canonical order.
///
/// Uses Bron-Kerbosch with pivoting over bitset adjacency. Every maximal
/// clique must come out with exactly `n + 1` routes; anything else is
/// reported as a consistency fault rather than returned.
pub fn enumerate_cliques(n: usize) -> Result<Vec<Clique>> {
    let g = ZigzagGraph::new(n)?;
    let routes = g.enumerate_routes();
    let m = routes.len();
    let mut adj: Vec<BitSet> = vec![BitSet::new(m); m];
    for a in 0..m {
        for b in a + 1..m {
            if coherent_unchecked(n, &routes[a], &routes[b]) {
                adj[a].set(b);
                adj[b].set(a);
            }
        }
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut p = BitSet::new(m);
    for v in 0..m {
        p.set(v);
    }
    bron_kerbosch(&adj, &mut Vec::new(), p, BitSet::new(m), &mut found);
    found.sort();
    let mut cliques = Vec::with_capacity(found.len());
    for members in found {
        if members.len() != n + 1 {
            return Err(Error::Inconsistency(format!(
                "maximal clique of size {} (expected {}) on n={n}",
                members.len(),
                n + 1
            )));
        }
        let picked = members.iter().map(|&k| routes[k].clone()).collect();
        cliques.push(Clique::new(n, picked)?);
    }
    Ok(cliques)
}

fn bron_kerbosch(
    adj: &[BitSet],
    current: &mut Vec<usize>,
    mut p: BitSet,
    mut x: BitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        let mut clique = current.clone();
        clique.sort_unstable();
        out.push(clique);
        return;
    }
    let pivot = p
        .or(&x)
        .iter_ones()
        .max_by_key(|&u| adj[u].intersection_count(&p))
        .expect("p or x is nonempty");
    let candidates: Vec<usize> = p.minus(&adj[pivot]).iter_ones().collect();
    for v in candidates {
        current.push(v);
        bron_kerbosch(adj, current, p.and(&adj[v]), x.and(&adj[v]), out);
        current.pop();
        p.clear(v);
        x.set(v);
    }
}

/// Whether two maximal cliques share all but one route each.
pub fn clique_adjacent(a: &Clique, b: &Clique) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::InvalidArgument(format!(
            "cliques live on different graphs: n={} vs n={}",
            a.n(),
            b.n()
        )));
    }
    let shared = a.routes().iter().filter(|r| b.contains(r)).count();
    Ok(shared == a.n())
}

/// The integer flow carried by a clique.
///
/// The flow on an edge out of inner vertex `i` is the number of distinct
/// route prefixes the clique pushes along that edge, minus one. This
/// counts prefixes as raw paths and never consults the framing, so it
/// applies to simplices of any framed triangulation of this polytope.
pub fn clique_to_flow(clique: &Clique) -> Result<IntegerFlow> {
    let n = clique.n();
    let mut x = vec![0u32; n - 1];
    let mut y = vec![0u32; n];
    for i in 2..n {
        for e in [EdgeId::Slack(i), EdgeId::Nonslack(i)] {
            let mut prefixes: Vec<&[EdgeId]> = Vec::new();
            for r in clique.routes() {
                let (Some(p), Some(s)) = (r.prefix_at(n, i), r.suffix_at(n, i)) else {
                    continue;
                };
                if s.first() == Some(&e) {
                    prefixes.push(p);
                }
            }
            prefixes.sort();
            prefixes.dedup();
            if prefixes.is_empty() {
                return Err(Error::MalformedClique(format!(
                    "no route of the clique uses edge {e}"
                )));
            }
            let count = prefixes.len() as u32 - 1;
            match e {
                EdgeId::Slack(_) => x[i - 1] = count,
                EdgeId::Nonslack(_) => y[i] = count,
            }
        }
    }
    IntegerFlow::new(n, x, y)
        .map_err(|e| Error::MalformedClique(format!("prefix counts are not conservative: {e}")))
}

/// The grove carried by a clique of the length-reverse-length framing.
///
/// At each inner vertex the distinct arriving prefixes, in framed order,
/// are the left vertices; which of the two continuations each prefix uses
/// must carve them into a bottom slack segment and a top nonslack segment
/// sharing exactly one vertex.
pub fn clique_to_grove(clique: &Clique) -> Result<Grove> {
    let n = clique.n();
    let mut trees = Vec::with_capacity(n - 2);
    for i in 2..n {
        let mut prefixes: Vec<&[EdgeId]> = clique
            .routes()
            .iter()
            .filter_map(|r| r.prefix_at(n, i))
            .collect();
        prefixes.sort();
        prefixes.dedup();
        prefixes.sort_by(|a, b| compare_prefixes(a, b));
        let p = prefixes.len();
        if p == 0 {
            return Err(Error::MalformedClique(format!(
                "no route of the clique passes through vertex {i}"
            )));
        }
        let mut via_slack = vec![false; p];
        let mut via_nonslack = vec![false; p];
        for r in clique.routes() {
            let (Some(pref), Some(suf)) = (r.prefix_at(n, i), r.suffix_at(n, i)) else {
                continue;
            };
            let at = prefixes
                .iter()
                .position(|q| *q == pref)
                .expect("prefix was collected above");
            match suf.first() {
                Some(EdgeId::Slack(_)) => via_slack[at] = true,
                Some(EdgeId::Nonslack(_)) => via_nonslack[at] = true,
                None => unreachable!("suffix at an inner vertex is nonempty"),
            }
        }
        let d1 = via_slack.iter().filter(|&&b| b).count();
        let d2 = via_nonslack.iter().filter(|&&b| b).count();
        let bottom_is_slack = via_slack[..d1].iter().all(|&b| b);
        let top_is_nonslack = via_nonslack[p - d2..].iter().all(|&b| b);
        if d1 == 0
            || d2 == 0
            || d1 + d2 != p + 1
            || !bottom_is_slack
            || !top_is_nonslack
        {
            return Err(Error::MalformedClique(format!(
                "continuations at vertex {i} do not form a noncrossing tree"
            )));
        }
        trees.push(Tree { p, d1, d2 });
    }
    Grove::new(n, trees)
        .map_err(|e| Error::MalformedClique(format!("incidence shapes are not linked: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::{base_flow, enumerate_flows};

    fn route(n: usize, s: &str) -> Route {
        Route::parse(n, s).unwrap()
    }

    fn clique(n: usize, routes: &[&str]) -> Clique {
        Clique::new(n, routes.iter().map(|s| route(n, s)).collect()).unwrap()
    }

    fn clique_a() -> Clique {
        clique(4, &["x1x2x3", "y0x2x3", "y1x3", "x1x2y3", "x1y2"])
    }

    #[test]
    fn coherence_examples() {
        let a = route(4, "x1x2x3");
        let b = route(4, "y0x2y3");
        assert!(!coherent(4, &a, &b).unwrap());
        assert!(coherent(4, &a, &a).unwrap());
        // No common inner vertex means no conflict.
        assert!(coherent(4, &route(4, "y1x3"), &route(4, "x1y2")).unwrap());
        // Routes of the wrong size are rejected.
        assert!(coherent(5, &a, &b).is_err());
    }

    #[test]
    fn smallest_graph_has_two_cliques() {
        let cliques = enumerate_cliques(3).unwrap();
        assert_eq!(cliques.len(), 2);
        assert_eq!(cliques[0], clique(3, &["x1x2", "x1y2", "y0x2", "y1"]));
        assert_eq!(cliques[1], clique(3, &["x1y2", "y0x2", "y0y2", "y1"]));
    }

    #[test]
    fn worked_example_cliques() {
        let cliques = enumerate_cliques(4).unwrap();
        assert_eq!(cliques.len(), 5);
        assert!(cliques.contains(&clique_a()));
        for c in &cliques {
            assert_eq!(c.len(), 5);
            assert!(c.contains(&route(4, "y1x3")), "{c}");
            assert!(c.contains(&route(4, "x1y2")), "{c}");
        }
    }

    #[test]
    fn clique_counts_match_flow_counts() {
        for n in 3..=7 {
            let cliques = enumerate_cliques(n).unwrap();
            let flows = enumerate_flows(n).unwrap();
            assert_eq!(cliques.len(), flows.len(), "n={n}");
            // clique_to_flow is a bijection onto the flow set.
            let mut images: Vec<IntegerFlow> = cliques
                .iter()
                .map(|c| clique_to_flow(c).unwrap())
                .collect();
            images.sort();
            assert_eq!(images, flows, "n={n}");
        }
    }

    #[test]
    fn adjacency_examples() {
        let cliques = enumerate_cliques(4).unwrap();
        let a = clique_a();
        let b = clique(4, &["x1x2y3", "x1y2", "y0x2x3", "y0x2y3", "y1x3"]);
        let e = clique(4, &["x1y2", "y0x2y3", "y0y2", "y1x3", "y1y3"]);
        assert!(cliques.contains(&b) && cliques.contains(&e));
        assert!(clique_adjacent(&a, &b).unwrap());
        assert!(!clique_adjacent(&a, &a).unwrap());
        assert!(!clique_adjacent(&a, &e).unwrap());
        let n3 = enumerate_cliques(3).unwrap();
        assert!(clique_adjacent(&a, &n3[0]).is_err());
    }

    #[test]
    fn flows_of_the_worked_example() {
        let a = clique_a();
        assert_eq!(clique_to_flow(&a).unwrap(), base_flow(4));
        let b = clique(4, &["x1x2y3", "x1y2", "y0x2x3", "y0x2y3", "y1x3"]);
        assert_eq!(
            clique_to_flow(&b).unwrap(),
            IntegerFlow::new(4, vec![0, 1, 1], vec![0, 0, 0, 1]).unwrap()
        );
    }

    #[test]
    fn groves_of_the_worked_example() {
        let a = clique_a();
        let expected = Grove::new(4, vec![Tree::from((2, 2, 1)), Tree::from((3, 3, 1))]).unwrap();
        assert_eq!(clique_to_grove(&a).unwrap(), expected);
        let b = clique(4, &["x1x2y3", "x1y2", "y0x2x3", "y0x2y3", "y1x3"]);
        let expected = Grove::new(4, vec![Tree::from((2, 2, 1)), Tree::from((3, 2, 2))]).unwrap();
        assert_eq!(clique_to_grove(&b).unwrap(), expected);
    }

    #[test]
    fn grove_and_flow_views_agree() {
        use crate::groves::flow_from_grove;
        for n in 3..=6 {
            for c in enumerate_cliques(n).unwrap() {
                let via_grove = flow_from_grove(&clique_to_grove(&c).unwrap()).unwrap();
                assert_eq!(via_grove, clique_to_flow(&c).unwrap(), "n={n} clique={c}");
            }
        }
    }

    #[test]
    fn malformed_cliques_are_rejected() {
        let lonely = clique(4, &["x1x2x3"]);
        assert!(matches!(
            clique_to_flow(&lonely),
            Err(Error::MalformedClique(_))
        ));
        assert!(matches!(
            clique_to_grove(&lonely),
            Err(Error::MalformedClique(_))
        ));
        let dup = Clique::new(4, vec![route(4, "x1y2"), route(4, "x1y2")]);
        assert!(matches!(dup, Err(Error::MalformedClique(_))));
    }

    #[test]
    fn serde_uses_sorted_route_strings() {
        let a = clique_a();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"n":4,"routes":["x1x2x3","x1x2y3","x1y2","y0x2x3","y1x3"]}"#
        );
        let back: Clique = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<Clique>(r#"{"n":4,"routes":["x1x2"]}"#).is_err());
    }
}
