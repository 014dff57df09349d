//! Alternating permutations, their swap statistic, and the two
//! permutation-valued views of a flow.
//!
//! An alternating permutation cuts a chain of routes out of the planar
//! drawing of the graph: its inverse feeds regions one at a time into a
//! below-the-path set, and each region set carves the route separating
//! below from above. The chain is a maximal clique of the planar framing
//! (not the length-reverse-length one), and its flow is the bijection
//! image of the permutation. Separately, a flow inserts `3..=n` into a
//! circular word, whose descent count is the other statistic.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::cliques::Clique;
use crate::error::{Error, Result};
use crate::flows::IntegerFlow;
use crate::graph::{edge_endpoints, EdgeId, Route, ZigzagGraph, MIN_N};

/// A permutation of `1..=n` rising and falling alternately, ascent first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlternatingPerm {
    word: Vec<usize>,
}

impl AlternatingPerm {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v < 1 || v > n || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        for k in 0..n.saturating_sub(1) {
            let ascending = k % 2 == 0;
            if ascending != (word[k] < word[k + 1]) {
                return Err(Error::InvalidArgument(format!(
                    "not alternating at position {}",
                    k + 1
                )));
            }
        }
        Ok(AlternatingPerm { word })
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Inverse permutation: entry `j` is the position of value `j + 1`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.word.len()];
        for (pos, &v) in self.word.iter().enumerate() {
            inv[v - 1] = pos + 1;
        }
        inv
    }
}

/// Digits run together when they fit, comma-separated otherwise.
pub fn word_string(word: &[usize]) -> String {
    let parts: Vec<String> = word.iter().map(|v| v.to_string()).collect();
    if word.iter().all(|&v| v <= 9) {
        parts.concat()
    } else {
        parts.join(",")
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, word: &[usize]) -> fmt::Result {
    write!(f, "{}", word_string(word))
}

impl fmt::Display for AlternatingPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.word)
    }
}

/// All alternating permutations of `1..=n` in lexicographic order.
pub fn alternating_perms(n: usize) -> Result<Vec<AlternatingPerm>> {
    if n < MIN_N {
        return Err(Error::InvalidGraphSize(n));
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    extend_alternating(n, &mut word, &mut used, &mut out);
    Ok(out)
}

fn extend_alternating(
    n: usize,
    word: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<AlternatingPerm>,
) {
    if word.len() == n {
        out.push(AlternatingPerm { word: word.clone() });
        return;
    }
    for v in 1..=n {
        if used[v] {
            continue;
        }
        if let Some(&last) = word.last() {
            let ascending = word.len() % 2 == 1;
            if ascending != (last < v) {
                continue;
            }
        }
        used[v] = true;
        word.push(v);
        extend_alternating(n, word, used, out);
        word.pop();
        used[v] = false;
    }
}

/// Number of positions where the inverse jumps by more than one.
pub fn swap_stat(alpha: &AlternatingPerm) -> usize {
    let beta = alpha.inverse();
    beta.windows(2).filter(|w| w[0] + 1 < w[1]).count()
}

/// The route separating the regions in `below` from the rest.
///
/// The planar drawing has `n` bounded regions left to right: the bigon of
/// `y_0` and `x_1`, the triangles under or over each longer nonslack edge,
/// and the bigon of `x_{n-1}` and `y_{n-1}`. Odd regions sit below the
/// slack line, even ones above. An edge is cut iff the faces on its two
/// sides land on different sides of the path; `None` when the cut edges
/// fail to form a single route.
pub fn route_from_region_set(n: usize, below: &BTreeSet<usize>) -> Result<Option<Route>> {
    ZigzagGraph::new(n)?;
    if let Some(&r) = below.iter().find(|&&r| r < 1 || r > n) {
        return Err(Error::InvalidArgument(format!(
            "region {r} out of range 1..={n}"
        )));
    }
    let mut used: Vec<EdgeId> = Vec::new();
    for j in 1..=n {
        let outer_is_below = j % 2 == 1;
        if below.contains(&j) != outer_is_below {
            used.push(EdgeId::Nonslack(j - 1));
        }
    }
    for j in 1..n {
        if below.contains(&j) != below.contains(&(j + 1)) {
            used.push(EdgeId::Slack(j));
        }
    }
    let mut at = 1;
    let mut path = Vec::new();
    while at != n {
        let mut outs = used
            .iter()
            .copied()
            .filter(|&e| edge_endpoints(n, e).expect("edges are in range").0 == at);
        let Some(e) = outs.next() else {
            return Ok(None);
        };
        if outs.next().is_some() {
            return Ok(None);
        }
        path.push(e);
        at = edge_endpoints(n, e).expect("edges are in range").1;
    }
    if path.len() != used.len() {
        return Ok(None);
    }
    Ok(Some(Route::new(n, path).expect("cut edges chain up")))
}

/// The route chain of an alternating permutation: region sets grow along
/// the inverse permutation, starting from the empty set (the lowest
/// route) and ending with everything (the highest).
pub fn alt_perm_route_chain(alpha: &AlternatingPerm) -> Result<Vec<Route>> {
    let n = alpha.n();
    let beta = alpha.inverse();
    let mut below = BTreeSet::new();
    let mut chain = Vec::with_capacity(n + 1);
    loop {
        let route = route_from_region_set(n, &below)?.ok_or_else(|| {
            Error::Inconsistency(format!(
                "region set {below:?} of alternating permutation {alpha} cuts no route"
            ))
        })?;
        chain.push(route);
        if chain.len() == n + 1 {
            return Ok(chain);
        }
        below.insert(beta[chain.len() - 1]);
    }
}

/// The planar-framing clique of an alternating permutation.
pub fn alt_perm_to_clique(alpha: &AlternatingPerm) -> Result<Clique> {
    let chain = alt_perm_route_chain(alpha)?;
    Clique::new(alpha.n(), chain).map_err(|e| {
        Error::Inconsistency(format!(
            "route chain of alternating permutation {alpha} is not a clique: {e}"
        ))
    })
}

/// A cyclic word on `0..=n` stored with the 0 first; reading after the 0
/// gives a permutation of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicPerm {
    circle: Vec<usize>,
}

impl CyclicPerm {
    /// The permutation read after the leading 0.
    pub fn word(&self) -> &[usize] {
        &self.circle[1..]
    }
}

impl fmt::Display for CyclicPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.word())
    }
}

impl Serialize for CyclicPerm {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// Builds the cyclic permutation of a flow by circular insertion.
///
/// After reindexing nonslack edges up by one, value `j` lands `y_j`
/// positions past `j - 1` around the circle `0, 1, 2, ...` built so far.
pub fn flow_to_cyclic(flow: &IntegerFlow) -> CyclicPerm {
    let n = flow.n();
    let mut circle = vec![0, 1, 2];
    for j in 3..=n {
        let shift = flow.y(j - 1) as usize;
        let pos = circle
            .iter()
            .position(|&v| v == j - 1)
            .expect("smaller values are already placed");
        let idx = (pos + 1 + shift) % circle.len();
        if idx == 0 {
            circle.push(j);
        } else {
            circle.insert(idx, j);
        }
    }
    CyclicPerm { circle }
}

/// Descents of the word read after the 0.
pub fn des_stat(pi: &CyclicPerm) -> usize {
    pi.word().windows(2).filter(|w| w[0] > w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::clique_to_flow;
    use crate::flows::{base_flow, enumerate_flows};
    use crate::hstar::{distribution, ehrhart::hstar_ehrhart};

    fn perm(word: &[usize]) -> AlternatingPerm {
        AlternatingPerm::new(word.to_vec()).unwrap()
    }

    #[test]
    fn alternating_enumeration_small() {
        let small: Vec<String> = alternating_perms(3)
            .unwrap()
            .iter()
            .map(|a| a.to_string())
            .collect();
        assert_eq!(small, ["132", "231"]);
        let four: Vec<String> = alternating_perms(4)
            .unwrap()
            .iter()
            .map(|a| a.to_string())
            .collect();
        assert_eq!(four, ["1324", "1423", "2314", "2413", "3412"]);
        assert!(AlternatingPerm::new(vec![1, 2, 3]).is_err());
        assert!(AlternatingPerm::new(vec![1, 3, 3]).is_err());
    }

    #[test]
    fn alternating_counts_match_flow_counts() {
        let expected = [2, 5, 16, 61, 272, 1385];
        for (k, n) in (3..=8).enumerate() {
            assert_eq!(alternating_perms(n).unwrap().len(), expected[k], "n={n}");
        }
    }

    #[test]
    fn sixteen_five_letter_words() {
        let words: Vec<String> = alternating_perms(5)
            .unwrap()
            .iter()
            .map(|a| a.to_string())
            .collect();
        assert_eq!(
            words,
            [
                "13254", "14253", "14352", "15243", "15342", "23154", "24153", "24351",
                "25143", "25341", "34152", "34251", "35142", "35241", "45132", "45231",
            ]
        );
    }

    #[test]
    fn inverse_and_swap_examples() {
        let a = perm(&[4, 5, 2, 3, 1]);
        assert_eq!(a.inverse(), [5, 3, 4, 1, 2]);
        assert_eq!(swap_stat(&a), 0);
        assert_eq!(swap_stat(&perm(&[1, 3, 2, 5, 4])), 2);
        assert_eq!(swap_stat(&perm(&[3, 4, 2, 5, 1])), 1);
    }

    #[test]
    fn swap_distribution_matches_hstar() {
        for n in 3..=6 {
            let dist = distribution(alternating_perms(n).unwrap().iter().map(swap_stat));
            assert_eq!(dist, hstar_ehrhart(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn region_cuts() {
        let route = |s: Option<Route>| s.unwrap().to_string();
        let set = |rs: &[usize]| rs.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(route(route_from_region_set(5, &set(&[])).unwrap()), "y0y2y4");
        assert_eq!(
            route(route_from_region_set(5, &set(&[3, 4, 5])).unwrap()),
            "y0x2y3"
        );
        assert_eq!(route_from_region_set(5, &set(&[4])).unwrap(), None);
        assert!(route_from_region_set(5, &set(&[6])).is_err());
    }

    #[test]
    fn worked_route_chain() {
        let chain = alt_perm_route_chain(&perm(&[4, 5, 2, 3, 1])).unwrap();
        let words: Vec<String> = chain.iter().map(|r| r.to_string()).collect();
        assert_eq!(
            words,
            ["y0y2y4", "y0y2x4", "y0x2x3x4", "y0x2y3", "x1x2y3", "y1y3"]
        );
        let clique = alt_perm_to_clique(&perm(&[4, 5, 2, 3, 1])).unwrap();
        assert_eq!(
            clique_to_flow(&clique).unwrap(),
            IntegerFlow::new(5, vec![0, 1, 0, 1], vec![0, 0, 0, 2, 0]).unwrap()
        );
    }

    #[test]
    fn smallest_chains() {
        let c1 = alt_perm_route_chain(&perm(&[1, 3, 2])).unwrap();
        let w1: Vec<String> = c1.iter().map(|r| r.to_string()).collect();
        assert_eq!(w1, ["y0y2", "x1y2", "x1x2", "y1"]);
        let c2 = alt_perm_route_chain(&perm(&[2, 3, 1])).unwrap();
        let w2: Vec<String> = c2.iter().map(|r| r.to_string()).collect();
        assert_eq!(w2, ["y0y2", "y0x2", "x1x2", "y1"]);
    }

    #[test]
    fn perm_flows_hit_every_flow_once() {
        for n in 3..=6 {
            let mut images: Vec<IntegerFlow> = alternating_perms(n)
                .unwrap()
                .iter()
                .map(|a| clique_to_flow(&alt_perm_to_clique(a).unwrap()).unwrap())
                .collect();
            images.sort();
            assert_eq!(images, enumerate_flows(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn cyclic_insertion_examples() {
        let pi = flow_to_cyclic(&base_flow(5));
        assert_eq!(pi.to_string(), "12345");
        assert_eq!(des_stat(&pi), 0);
        let f = IntegerFlow::new(5, vec![0, 1, 0, 1], vec![0, 0, 0, 2, 0]).unwrap();
        let pi = flow_to_cyclic(&f);
        assert_eq!(pi.to_string(), "14523");
        assert_eq!(des_stat(&pi), 1);
        let f = IntegerFlow::new(5, vec![0, 0, 0, 0], vec![0, 0, 1, 1, 2]).unwrap();
        let pi = flow_to_cyclic(&f);
        assert_eq!(pi.to_string(), "53142");
        assert_eq!(des_stat(&pi), 3);
        let f = IntegerFlow::new(5, vec![0, 0, 0, 1], vec![0, 0, 1, 1, 1]).unwrap();
        let pi = flow_to_cyclic(&f);
        assert_eq!(pi.to_string(), "31425");
        assert_eq!(des_stat(&pi), 2);
        assert_eq!(serde_json::to_string(&pi).unwrap(), "\"31425\"");
    }

    #[test]
    fn des_distribution_matches_hstar() {
        for n in 3..=6 {
            let dist = distribution(
                enumerate_flows(n)
                    .unwrap()
                    .iter()
                    .map(|f| des_stat(&flow_to_cyclic(f))),
            );
            assert_eq!(dist, hstar_ehrhart(n).unwrap(), "n={n}");
        }
    }
}
