//! Groves: tuples of noncrossing bipartite trees, one per inner vertex.
//!
//! The tree at inner vertex `i` has left vertices `l_1 .. l_p` (the route
//! prefixes arriving at `i`, bottom to top in framed order) and two right
//! vertices (the continuations, `r_1` along `x_i` below `r_2` along
//! `y_i`). Noncrossing forces the shape: `r_1` takes the bottom segment
//! `l_1 ..= l_{d1}`, `r_2` the top segment `l_{d1} ..= l_p`, overlapping
//! in the single both-adjacent vertex `l_{d1}`. A triple `(p, d1, d2)`
//! with `d1 + d2 = p + 1` records everything.
//!
//! The left side of tree `i` splits into a bottom group fed through
//! `y_{i-2}` and a top group fed through `x_{i-1}`, so consecutive trees
//! are linked: the group sizes equal the right degrees two and one steps
//! earlier. That linkage is the grove invariant, and it makes groves
//! equivalent to integer flows by `d1_i = x_i + 1`, `d2_i = y_i + 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flows::{IntegerFlow, MoveSign};
use crate::graph::MIN_N;
use crate::offsets::{Offset, OffsetSeq};

/// One noncrossing bipartite tree, stored as `(p, d1, d2)`.
///
/// `p` counts left vertices; `d1` and `d2` are the degrees of the slack
/// and nonslack right vertices. Validity (`d1 + d2 = p + 1`, both
/// positive, and the cross-tree linkage) is enforced by [`Grove::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "(usize, usize, usize)", from = "(usize, usize, usize)")]
pub struct Tree {
    pub p: usize,
    pub d1: usize,
    pub d2: usize,
}

impl From<Tree> for (usize, usize, usize) {
    fn from(t: Tree) -> Self {
        (t.p, t.d1, t.d2)
    }
}

impl From<(usize, usize, usize)> for Tree {
    fn from((p, d1, d2): (usize, usize, usize)) -> Self {
        Tree { p, d1, d2 }
    }
}

/// A validated grove: trees for inner vertices `2 ..= n-1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGrove")]
pub struct Grove {
    n: usize,
    trees: Vec<Tree>,
}

#[derive(Deserialize)]
struct RawGrove {
    n: usize,
    trees: Vec<Tree>,
}

impl TryFrom<RawGrove> for Grove {
    type Error = Error;
    fn try_from(raw: RawGrove) -> Result<Self> {
        Grove::new(raw.n, raw.trees)
    }
}

impl Grove {
    pub fn new(n: usize, trees: Vec<Tree>) -> Result<Self> {
        if n < MIN_N {
            return Err(Error::InvalidGraphSize(n));
        }
        if trees.len() != n - 2 {
            return Err(Error::MalformedGrove(format!(
                "expected {} trees, got {}",
                n - 2,
                trees.len()
            )));
        }
        let grove = Grove { n, trees };
        for i in 2..n {
            let t = grove.tree(i);
            if t.d1 == 0 || t.d2 == 0 || t.d1 + t.d2 != t.p + 1 {
                return Err(Error::MalformedGrove(format!(
                    "tree {i} = ({},{},{}) is not a noncrossing tree shape",
                    t.p, t.d1, t.d2
                )));
            }
            let expect_p = grove.bottom_group(i) + grove.top_group(i);
            if t.p != expect_p {
                return Err(Error::MalformedGrove(format!(
                    "tree {i} has {} left vertices but its feeders supply {expect_p}",
                    t.p
                )));
            }
        }
        Ok(grove)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Tree at inner vertex `i`, `2 <= i <= n-1`.
    pub fn tree(&self, i: usize) -> Tree {
        assert!((2..self.n).contains(&i), "tree {i} out of range for n={}", self.n);
        self.trees[i - 2]
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    /// Size of tree `i`'s bottom left group, the prefixes fed through the
    /// nonslack edge two vertices back.
    pub fn bottom_group(&self, i: usize) -> usize {
        if i >= 4 {
            self.tree(i - 2).d2
        } else {
            1
        }
    }

    /// Size of tree `i`'s top left group, fed through the slack edge.
    pub fn top_group(&self, i: usize) -> usize {
        if i >= 3 {
            self.tree(i - 1).d1
        } else {
            1
        }
    }
}

impl fmt::Display for Grove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, t) in self.trees.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{},{},{}]", t.p, t.d1, t.d2)?;
        }
        write!(f, "]")
    }
}

/// The grove matching a flow: `d1_i = x_i + 1`, `d2_i = y_i + 1`.
pub fn grove_from_flow(flow: &IntegerFlow) -> Grove {
    let n = flow.n();
    let trees = (2..n)
        .map(|i| {
            let x = flow.x(i) as usize;
            let y = flow.y(i) as usize;
            Tree {
                p: x + y + 1,
                d1: x + 1,
                d2: y + 1,
            }
        })
        .collect();
    Grove::new(n, trees).expect("flow conservation is the grove invariant")
}

/// The flow matching a grove, inverse to [`grove_from_flow`].
pub fn flow_from_grove(grove: &Grove) -> Result<IntegerFlow> {
    let n = grove.n();
    let mut x = vec![0u32; n - 1];
    let mut y = vec![0u32; n];
    for i in 2..n {
        let t = grove.tree(i);
        x[i - 1] = (t.d1 - 1) as u32;
        y[i] = (t.d2 - 1) as u32;
    }
    IntegerFlow::new(n, x, y)
        .map_err(|e| Error::MalformedGrove(format!("grove does not define a flow: {e}")))
}

/// All groves, in canonical order (lexicographic on the tree triples).
pub fn enumerate_groves(n: usize) -> Result<Vec<Grove>> {
    if n < MIN_N {
        return Err(Error::InvalidGraphSize(n));
    }
    let mut out = Vec::new();
    let mut trees: Vec<Tree> = Vec::with_capacity(n - 2);
    extend_grove(n, &mut trees, &mut out);
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}

fn extend_grove(n: usize, trees: &mut Vec<Tree>, out: &mut Vec<Grove>) {
    let i = trees.len() + 2;
    if i == n {
        out.push(Grove {
            n,
            trees: trees.clone(),
        });
        return;
    }
    // Group sizes of tree i depend only on trees already chosen.
    let bottom = if i >= 4 { trees[i - 4].d2 } else { 1 };
    let top = if i >= 3 { trees[i - 3].d1 } else { 1 };
    let p = bottom + top;
    for d1 in 1..=p {
        trees.push(Tree {
            p,
            d1,
            d2: p + 1 - d1,
        });
        extend_grove(n, trees, out);
        trees.pop();
    }
}

/// Which right vertex of a tree an edge hangs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RightVertex {
    /// The slack continuation `x_i`, adjacent to the bottom left segment.
    R1,
    /// The nonslack continuation `y_i`, adjacent to the top left segment.
    R2,
}

/// Result of tracking a tree edge toward the sink.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrackOutcome {
    Success,
    /// Tracking halted: the edge landed on the both-adjacent left vertex
    /// of this tree, where the continuation is ambiguous.
    Failure { tree: usize },
}

/// Tracks the tree edge of rank `rank` (counted from the bottom, starting
/// at 1) at the given right vertex of tree `i`.
///
/// Crossing to the next tree, an edge arriving through the slack edge
/// lands in the top group at height `rank`, and an edge arriving through
/// the nonslack edge lands in the bottom group at height `rank`. Landing
/// anywhere except the both-adjacent vertex determines a unique next edge;
/// walking off the right end of the graph is success.
pub fn track_edge(grove: &Grove, i: usize, side: RightVertex, rank: usize) -> Result<TrackOutcome> {
    let n = grove.n();
    if i < 2 || i > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "tree index {i} out of range 2..={} for n={n}",
            n - 1
        )));
    }
    let limit = match side {
        RightVertex::R1 => grove.tree(i).d1,
        RightVertex::R2 => grove.tree(i).d2,
    };
    if rank == 0 || rank > limit {
        return Err(Error::InvalidArgument(format!(
            "edge rank {rank} out of range 1..={limit} at tree {i}"
        )));
    }
    let mut j = i;
    let mut side = side;
    let mut rank = rank;
    loop {
        let target = match side {
            RightVertex::R1 => j + 1,
            RightVertex::R2 => j + 2,
        };
        if target > n - 1 {
            return Ok(TrackOutcome::Success);
        }
        let t = grove.tree(target);
        let q = match side {
            RightVertex::R1 => grove.bottom_group(target) + rank,
            RightVertex::R2 => rank,
        };
        debug_assert!(q >= 1 && q <= t.p);
        if q == t.d1 {
            return Ok(TrackOutcome::Failure { tree: target });
        }
        if q < t.d1 {
            side = RightVertex::R1;
            rank = q;
        } else {
            side = RightVertex::R2;
            rank = q - t.d1 + 1;
        }
        j = target;
    }
}

/// Tracks the top edge at the slack right vertex of tree `i`, the edge an
/// elementary move at `i` would reroute.
pub fn track_top_r1(grove: &Grove, i: usize) -> Result<TrackOutcome> {
    let n = grove.n();
    if i < 2 || i > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "tree index {i} out of range 2..={} for n={n}",
            n - 1
        )));
    }
    track_edge(grove, i, RightVertex::R1, grove.tree(i).d1)
}

/// Offset sequence read off the grove: the signed distance from each
/// landing height to the both-adjacent vertex, while tracking the top
/// slack edge of tree `i`. Agrees with the flow-side offset sequence.
pub fn grove_offsets(grove: &Grove, i: usize) -> Result<OffsetSeq> {
    let n = grove.n();
    if i < 2 || i > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "tree index {i} out of range 2..={} for n={n}",
            n - 1
        )));
    }
    if i == n - 1 {
        return Ok(OffsetSeq::new(Vec::new()));
    }
    let mut entries = Vec::with_capacity(n - 1 - i);
    // First hop: the top slack edge of tree i lands atop tree i+1.
    let mut t = i + 1;
    let mut q = grove.bottom_group(t) + grove.tree(i).d1;
    loop {
        let tree = grove.tree(t);
        let z = q as i64 - tree.d1 as i64;
        entries.push(Offset::Int(z));
        if z == 0 {
            entries.extend(std::iter::repeat_n(Offset::Int(0), n - 1 - t));
            break;
        }
        if z < 0 {
            if t == n - 1 {
                break;
            }
            // Continue along the slack right vertex at height q.
            q += grove.bottom_group(t + 1);
            t += 1;
        } else {
            if t + 1 <= n - 1 {
                entries.push(Offset::Bypass);
            }
            if t + 2 > n - 1 {
                break;
            }
            // Continue along the nonslack right vertex; its edges land in
            // the bottom group of the tree two steps ahead.
            q = (z + 1) as usize;
            t += 2;
        }
    }
    debug_assert_eq!(entries.len(), n - 1 - i);
    Ok(OffsetSeq::new(entries))
}

/// Applies the elementary move at position `i` to a grove.
///
/// The plus move shifts the both-adjacent vertex of tree `i` down by one,
/// and compensates in the next two trees so the group linkage survives;
/// mirrored for minus. `None` when a required degree is already 1.
pub fn grove_move(grove: &Grove, i: usize, sign: MoveSign) -> Result<Option<Grove>> {
    let n = grove.n();
    if i < 2 || i > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "move position {i} out of range 2..={} for n={n}",
            n - 1
        )));
    }
    let mut trees = grove.trees().to_vec();
    let at = |k: usize| k - 2;
    match sign {
        MoveSign::Plus => {
            if grove.tree(i).d1 < 2 || (i + 1 <= n - 1 && grove.tree(i + 1).d2 < 2) {
                return Ok(None);
            }
            let t = &mut trees[at(i)];
            t.d1 -= 1;
            t.d2 += 1;
            if i + 1 <= n - 1 {
                let t = &mut trees[at(i + 1)];
                t.p -= 1;
                t.d2 -= 1;
            }
            if i + 2 <= n - 1 {
                let t = &mut trees[at(i + 2)];
                t.p += 1;
                t.d1 += 1;
            }
        }
        MoveSign::Minus => {
            if grove.tree(i).d2 < 2 || (i + 2 <= n - 1 && grove.tree(i + 2).d1 < 2) {
                return Ok(None);
            }
            let t = &mut trees[at(i)];
            t.d1 += 1;
            t.d2 -= 1;
            if i + 1 <= n - 1 {
                let t = &mut trees[at(i + 1)];
                t.p += 1;
                t.d2 += 1;
            }
            if i + 2 <= n - 1 {
                let t = &mut trees[at(i + 2)];
                t.p -= 1;
                t.d1 -= 1;
            }
        }
    }
    let moved = Grove::new(n, trees)
        .map_err(|e| Error::Inconsistency(format!("elementary move broke the grove invariant: {e}")))?;
    Ok(Some(moved))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::{base_flow, enumerate_flows, flow_move};

    fn grove(n: usize, trees: &[(usize, usize, usize)]) -> Grove {
        Grove::new(n, trees.iter().copied().map(Tree::from).collect()).unwrap()
    }

    #[test]
    fn grove_from_flow_examples() {
        let a = grove_from_flow(&base_flow(4));
        assert_eq!(a, grove(4, &[(2, 2, 1), (3, 3, 1)]));
        let base5 = grove_from_flow(&base_flow(5));
        assert_eq!(base5, grove(5, &[(2, 2, 1), (3, 3, 1), (4, 4, 1)]));
        let f = IntegerFlow::new(5, vec![0, 1, 0, 1], vec![0, 0, 0, 2, 0]).unwrap();
        assert_eq!(grove_from_flow(&f), grove(5, &[(2, 2, 1), (3, 1, 3), (2, 2, 1)]));
    }

    #[test]
    fn grove_flow_roundtrip_exhaustive() {
        for n in 3..=6 {
            for f in enumerate_flows(n).unwrap() {
                let g = grove_from_flow(&f);
                assert_eq!(flow_from_grove(&g).unwrap(), f);
            }
            for g in enumerate_groves(n).unwrap() {
                let f = flow_from_grove(&g).unwrap();
                assert_eq!(grove_from_flow(&f), g);
            }
        }
    }

    #[test]
    fn malformed_groves_rejected() {
        // Left count out of step with the feeders.
        assert!(Grove::new(4, vec![Tree::from((2, 2, 1)), Tree::from((4, 3, 2))]).is_err());
        // Not a tree shape.
        assert!(Grove::new(4, vec![Tree::from((2, 2, 2)), Tree::from((3, 3, 1))]).is_err());
        assert!(Grove::new(4, vec![Tree::from((2, 2, 1))]).is_err());
        assert!(Grove::new(3, vec![Tree::from((2, 3, 0))]).is_err());
    }

    #[test]
    fn enumeration_matches_flow_count() {
        for n in 3..=7 {
            let groves = enumerate_groves(n).unwrap();
            let flows = enumerate_flows(n).unwrap();
            assert_eq!(groves.len(), flows.len(), "n={n}");
            // The arithmetic bijection hits every enumerated grove.
            let mut images: Vec<Grove> = flows.iter().map(grove_from_flow).collect();
            images.sort();
            assert_eq!(images, groves);
        }
    }

    #[test]
    fn worked_example_moves() {
        let a = grove(4, &[(2, 2, 1), (3, 3, 1)]);
        let b = grove(4, &[(2, 2, 1), (3, 2, 2)]);
        let d = grove(4, &[(2, 1, 2), (2, 2, 1)]);
        assert_eq!(grove_move(&a, 3, MoveSign::Plus).unwrap(), Some(b.clone()));
        assert_eq!(grove_move(&b, 2, MoveSign::Plus).unwrap(), Some(d.clone()));
        assert_eq!(grove_move(&b, 2, MoveSign::Minus).unwrap(), None);
        assert_eq!(grove_move(&b, 3, MoveSign::Minus).unwrap(), Some(a.clone()));
        assert!(grove_move(&a, 1, MoveSign::Plus).is_err());
    }

    #[test]
    fn moves_commute_with_the_flow_bijection() {
        for n in 3..=6 {
            for f in enumerate_flows(n).unwrap() {
                let g = grove_from_flow(&f);
                for i in 2..n {
                    for sign in [MoveSign::Plus, MoveSign::Minus] {
                        let via_flow = flow_move(&f, i, sign).unwrap();
                        let via_grove = grove_move(&g, i, sign).unwrap();
                        assert_eq!(
                            via_flow,
                            via_grove.map(|gg| flow_from_grove(&gg).unwrap()),
                            "n={n} i={i} sign={sign:?} flow={f}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn tracking_examples() {
        let a = grove(4, &[(2, 2, 1), (3, 3, 1)]);
        let b = grove(4, &[(2, 2, 1), (3, 2, 2)]);
        assert_eq!(track_top_r1(&a, 2).unwrap(), TrackOutcome::Failure { tree: 3 });
        assert_eq!(track_top_r1(&b, 2).unwrap(), TrackOutcome::Success);
        // The last position tracks straight into the sink.
        assert_eq!(track_top_r1(&a, 3).unwrap(), TrackOutcome::Success);
        assert_eq!(track_top_r1(&b, 3).unwrap(), TrackOutcome::Success);
        assert!(track_top_r1(&a, 4).is_err());
        assert!(track_edge(&a, 2, RightVertex::R1, 3).is_err());
    }

    #[test]
    fn offsets_examples() {
        let a = grove(4, &[(2, 2, 1), (3, 3, 1)]);
        let b = grove(4, &[(2, 2, 1), (3, 2, 2)]);
        assert_eq!(grove_offsets(&a, 3).unwrap().to_string(), "[]");
        assert_eq!(grove_offsets(&a, 2).unwrap().to_string(), "[0]");
        assert_eq!(grove_offsets(&b, 2).unwrap().to_string(), "[1]");
    }

    #[test]
    fn offsets_match_flow_offsets_exhaustively() {
        use crate::flows::flow_offsets;
        for n in 3..=7 {
            for f in enumerate_flows(n).unwrap() {
                let g = grove_from_flow(&f);
                for i in 2..n {
                    assert_eq!(
                        grove_offsets(&g, i).unwrap(),
                        flow_offsets(&f, i).unwrap(),
                        "n={n} i={i} flow={f}"
                    );
                }
            }
        }
    }

    #[test]
    fn tracking_succeeds_iff_offsets_nonzero() {
        for n in 3..=7 {
            for g in enumerate_groves(n).unwrap() {
                for i in 2..n {
                    let offsets = grove_offsets(&g, i).unwrap();
                    let outcome = track_top_r1(&g, i).unwrap();
                    assert_eq!(
                        outcome == TrackOutcome::Success,
                        !offsets.has_zero(),
                        "n={n} i={i} grove={g}"
                    );
                }
            }
        }
    }

    #[test]
    fn serde_roundtrip() {
        let b = grove(4, &[(2, 2, 1), (3, 2, 2)]);
        let json = serde_json::to_string(&b).unwrap();
        assert_eq!(json, r#"{"n":4,"trees":[[2,2,1],[3,2,2]]}"#);
        let back: Grove = serde_json::from_str(&json).unwrap();
        assert_eq!(back, b);
        assert!(serde_json::from_str::<Grove>(r#"{"n":4,"trees":[[2,2,1],[4,3,2]]}"#).is_err());
    }
}
