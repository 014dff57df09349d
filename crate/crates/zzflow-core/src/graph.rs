//! The contracted zigzag graph and its framed route orders.
//!
//! Vertices are `1..=n`. There are `n-1` slack edges `x_i: i -> i+1` and
//! `n` nonslack edges: `y_0: 1 -> 2`, `y_i: i -> i+2` for `1 <= i <= n-2`,
//! and `y_{n-1}: n-1 -> n`. Every vertex other than the sink has a slack
//! and a nonslack way forward, so maximal paths (routes) branch at every
//! step; the source additionally carries the parallel pair `x_1, y_0`.
//!
//! The length-reverse-length framing orders the edges meeting each inner
//! vertex: incoming `y_{i-2}` before `x_{i-1}`, outgoing `x_i` before
//! `y_i`. Those local orders extend to total orders on route prefixes and
//! suffixes, compared where the paths part ways.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Smallest graph the constructions are defined for.
pub const MIN_N: usize = 3;

/// An edge label on the contracted zigzag graph.
///
/// `Slack(i)` is `x_i` (valid for `1 <= i <= n-1`), `Nonslack(i)` is `y_i`
/// (valid for `0 <= i <= n-1`). The derived order sorts all `x` edges
/// before all `y` edges; within a kind it sorts by index. At any single
/// vertex this agrees with label order, which is what route enumeration
/// and canonical clique forms rely on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeId {
    Slack(usize),
    Nonslack(usize),
}

impl EdgeId {
    pub fn index(self) -> usize {
        match self {
            EdgeId::Slack(i) | EdgeId::Nonslack(i) => i,
        }
    }

    pub fn is_slack(self) -> bool {
        matches!(self, EdgeId::Slack(_))
    }

    /// Parses a single label such as `x2` or `y0`.
    pub fn parse(s: &str) -> Result<EdgeId> {
        let rest = &s[1..];
        let idx: usize = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad edge label {s:?}")))?;
        match s.as_bytes().first() {
            Some(b'x') => Ok(EdgeId::Slack(idx)),
            Some(b'y') => Ok(EdgeId::Nonslack(idx)),
            _ => Err(Error::Parse(format!("bad edge label {s:?}"))),
        }
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeId::Slack(i) => write!(f, "x{i}"),
            EdgeId::Nonslack(i) => write!(f, "y{i}"),
        }
    }
}

impl Serialize for EdgeId {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// The contracted zigzag graph on vertices `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZigzagGraph {
    n: usize,
}

impl ZigzagGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n < MIN_N {
            return Err(Error::InvalidGraphSize(n));
        }
        Ok(ZigzagGraph { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges, `2n - 1`.
    pub fn edge_count(&self) -> usize {
        2 * self.n - 1
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        match e {
            EdgeId::Slack(i) => (1..self.n).contains(&i),
            EdgeId::Nonslack(i) => i < self.n,
        }
    }

    /// All edges, slack first, each kind by ascending index.
    pub fn edges(&self) -> Vec<EdgeId> {
        let slack = (1..self.n).map(EdgeId::Slack);
        let nonslack = (0..self.n).map(EdgeId::Nonslack);
        slack.chain(nonslack).collect()
    }

    /// Tail and head of an edge.
    pub fn endpoints(&self, e: EdgeId) -> Result<(usize, usize)> {
        if !self.contains(e) {
            return Err(Error::InvalidEdge {
                edge: e.to_string(),
                n: self.n,
            });
        }
        Ok(match e {
            EdgeId::Slack(i) => (i, i + 1),
            EdgeId::Nonslack(0) => (1, 2),
            // y_{n-1} lands on the sink instead of overshooting it.
            EdgeId::Nonslack(i) if i == self.n - 1 => (self.n - 1, self.n),
            EdgeId::Nonslack(i) => (i, i + 2),
        })
    }

    /// Edges leaving `v`, in the order route enumeration explores them.
    pub fn out_edges(&self, v: usize) -> Vec<EdgeId> {
        if v == 1 {
            vec![EdgeId::Slack(1), EdgeId::Nonslack(0), EdgeId::Nonslack(1)]
        } else if v < self.n {
            vec![EdgeId::Slack(v), EdgeId::Nonslack(v)]
        } else {
            Vec::new()
        }
    }

    /// Edges entering `v`.
    pub fn in_edges(&self, v: usize) -> Vec<EdgeId> {
        if v == 2 {
            vec![EdgeId::Nonslack(0), EdgeId::Slack(1)]
        } else if v > 2 && v < self.n {
            vec![EdgeId::Nonslack(v - 2), EdgeId::Slack(v - 1)]
        } else if v == self.n {
            vec![
                EdgeId::Nonslack(self.n - 2),
                EdgeId::Slack(self.n - 1),
                EdgeId::Nonslack(self.n - 1),
            ]
        } else {
            Vec::new()
        }
    }

    /// Every source-to-sink route, in canonical (label-lexicographic) order.
    pub fn enumerate_routes(&self) -> Vec<Route> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.routes_from(1, &mut stack, &mut out);
        out
    }

    fn routes_from(&self, v: usize, stack: &mut Vec<EdgeId>, out: &mut Vec<Route>) {
        if v == self.n {
            out.push(Route {
                edges: stack.clone(),
            });
            return;
        }
        for e in self.out_edges(v) {
            let (_, head) = self.endpoints(e).expect("out_edges yields valid edges");
            stack.push(e);
            self.routes_from(head, stack, out);
            stack.pop();
        }
    }

    /// DOT rendering of the graph itself.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("digraph zigzag{} {{\n", self.n));
        s.push_str("  rankdir=LR;\n");
        for v in 1..=self.n {
            s.push_str(&format!("  {v};\n"));
        }
        for e in self.edges() {
            let (t, h) = self.endpoints(e).expect("own edges are valid");
            s.push_str(&format!("  {t} -> {h} [label=\"{e}\"];\n"));
        }
        s.push_str("}\n");
        s
    }
}

/// Convenience wrapper over [`ZigzagGraph::endpoints`].
pub fn edge_endpoints(n: usize, e: EdgeId) -> Result<(usize, usize)> {
    ZigzagGraph::new(n)?.endpoints(e)
}

/// A source-to-sink route, stored as its edge sequence.
///
/// Identity, ordering and hashing all go through the edge sequence, which
/// for routes of a fixed graph coincides with label-lexicographic order on
/// the text form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Route {
    edges: Vec<EdgeId>,
}

impl Route {
    /// Validates that `edges` chains from vertex 1 to vertex `n`.
    pub fn new(n: usize, edges: Vec<EdgeId>) -> Result<Self> {
        let g = ZigzagGraph::new(n)?;
        if edges.is_empty() {
            return Err(Error::InvalidRoute("empty edge sequence".into()));
        }
        let mut at = 1usize;
        for &e in &edges {
            let (tail, head) = g.endpoints(e)?;
            if tail != at {
                return Err(Error::InvalidRoute(format!(
                    "edge {e} leaves vertex {tail}, expected {at}"
                )));
            }
            at = head;
        }
        if at != n {
            return Err(Error::InvalidRoute(format!(
                "route stops at vertex {at}, not the sink {n}"
            )));
        }
        Ok(Route { edges })
    }

    /// Parses the text form, e.g. `y0x2y3`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let start = pos;
            pos += 1;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            edges.push(EdgeId::parse(&s[start..pos])?);
        }
        Route::new(n, edges)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Vertices visited, in order, for the graph with `n` vertices.
    pub fn vertices(&self, n: usize) -> Vec<usize> {
        let g = ZigzagGraph { n };
        let mut vs = vec![1];
        for &e in &self.edges {
            vs.push(g.endpoints(e).expect("validated route").1);
        }
        vs
    }

    /// Edges up to and including arrival at `v`, if the route visits `v`.
    /// Vertex 1 yields the empty prefix.
    pub fn prefix_at(&self, n: usize, v: usize) -> Option<&[EdgeId]> {
        if v == 1 {
            return Some(&self.edges[..0]);
        }
        let g = ZigzagGraph { n };
        for (k, &e) in self.edges.iter().enumerate() {
            if g.endpoints(e).expect("validated route").1 == v {
                return Some(&self.edges[..=k]);
            }
        }
        None
    }

    /// Edges from departure at `v` onward, if the route visits `v`.
    pub fn suffix_at(&self, n: usize, v: usize) -> Option<&[EdgeId]> {
        if v == 1 {
            return Some(&self.edges[..]);
        }
        let g = ZigzagGraph { n };
        for (k, &e) in self.edges.iter().enumerate() {
            if g.endpoints(e).expect("validated route").1 == v {
                return Some(&self.edges[k + 1..]);
            }
        }
        None
    }

    /// Whether the route visits `v` strictly between source and sink.
    pub fn visits_inner(&self, n: usize, v: usize) -> bool {
        v > 1 && v < n && self.prefix_at(n, v).is_some()
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl Serialize for Route {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// Which framed order a comparison refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    /// Paths from the source to a common inner vertex.
    Prefix,
    /// Paths from a common inner vertex to the sink.
    Suffix,
}

/// Compares two prefixes ending at the same vertex.
///
/// Distinct prefixes are compared at the last vertex where their arrival
/// edges differ: the one arriving on the nonslack edge is smaller. The
/// caller guarantees both slices are valid paths into one vertex.
pub fn compare_prefixes(a: &[EdgeId], b: &[EdgeId]) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let mut k = 0;
    while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[b.len() - 1 - k] {
        k += 1;
    }
    debug_assert!(
        k < a.len() && k < b.len(),
        "distinct same-endpoint prefixes cannot nest"
    );
    let ea = a[a.len() - 1 - k];
    let eb = b[b.len() - 1 - k];
    // Two distinct edges into one inner vertex are one slack, one nonslack.
    match (ea, eb) {
        (EdgeId::Nonslack(_), EdgeId::Slack(_)) => Ordering::Less,
        (EdgeId::Slack(_), EdgeId::Nonslack(_)) => Ordering::Greater,
        _ => unreachable!("parallel same-kind edges into an inner vertex"),
    }
}

/// Compares two suffixes starting at the same vertex.
///
/// Distinct suffixes are compared at the first vertex where their
/// departure edges differ: the one leaving on the slack edge is smaller.
pub fn compare_suffixes(a: &[EdgeId], b: &[EdgeId]) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let mut k = 0;
    while k < a.len() && k < b.len() && a[k] == b[k] {
        k += 1;
    }
    debug_assert!(
        k < a.len() && k < b.len(),
        "distinct same-start suffixes cannot nest"
    );
    match (a[k], b[k]) {
        (EdgeId::Slack(_), EdgeId::Nonslack(_)) => Ordering::Less,
        (EdgeId::Nonslack(_), EdgeId::Slack(_)) => Ordering::Greater,
        _ => unreachable!("parallel same-kind edges out of an inner vertex"),
    }
}

/// Compares two framed paths at inner vertex `i`, validating the inputs.
///
/// For `PathKind::Prefix` both arguments must run from the source to `i`;
/// for `PathKind::Suffix`, from `i` to the sink.
pub fn framed_compare(
    n: usize,
    i: usize,
    kind: PathKind,
    a: &[EdgeId],
    b: &[EdgeId],
) -> Result<Ordering> {
    let g = ZigzagGraph::new(n)?;
    if i < 2 || i > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "vertex {i} is not inner for n={n}"
        )));
    }
    let (want_start, want_end) = match kind {
        PathKind::Prefix => (1, i),
        PathKind::Suffix => (i, n),
    };
    for path in [a, b] {
        let mut at = want_start;
        for &e in path {
            let (tail, head) = g.endpoints(e)?;
            if tail != at {
                return Err(Error::InvalidArgument(format!(
                    "path {} is not incident to vertex {i} as a {kind:?}",
                    render_path(path)
                )));
            }
            at = head;
        }
        if at != want_end {
            return Err(Error::InvalidArgument(format!(
                "path {} does not end at vertex {want_end}",
                render_path(path)
            )));
        }
    }
    Ok(match kind {
        PathKind::Prefix => compare_prefixes(a, b),
        PathKind::Suffix => compare_suffixes(a, b),
    })
}

fn render_path(p: &[EdgeId]) -> String {
    if p.is_empty() {
        return "(empty)".into();
    }
    p.iter().map(|e| e.to_string()).collect()
}

/// Route count by a transfer recurrence over vertex positions, used as an
/// independent cross-check of [`ZigzagGraph::enumerate_routes`].
///
/// Let `a(v)` count paths from `v` to the sink. Interior vertices see one
/// step edge and one skip edge, the two final vertices see parallel pairs:
/// `a(n) = 1`, `a(n-1) = 2`, `a(v) = a(v+1) + a(v+2)`, and the source
/// additionally has its parallel pair, `a(1) = 2 a(2) + a(3)`.
pub fn route_count_transfer_matrix(n: usize) -> u64 {
    assert!(n >= MIN_N);
    // (cur, succ) = (a(v), a(v+1)), starting at v = n-1.
    let mut cur = 2u64;
    let mut succ = 1u64;
    for _ in (2..n - 1).rev() {
        let prev = cur + succ;
        succ = cur;
        cur = prev;
    }
    2 * cur + succ
}
