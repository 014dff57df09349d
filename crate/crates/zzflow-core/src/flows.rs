//! Integer flows on the contracted zigzag graph.
//!
//! A flow here is a nonnegative integer assignment to the edges that
//! routes one fresh unit out of every inner vertex into the sink, with
//! nothing entering from outside: the source's three outgoing edges all
//! carry zero. Conservation at inner vertex `i` reads
//! `x_{i-1} + y_{i-2} + 1 = x_i + y_i` (with `y_0` standing in at `i = 2`).
//!
//! These flows are the lattice points the rest of the crate revolves
//! around: they biject with groves and with the maximal simplices of the
//! framed triangulation, and elementary moves connect them into a grid
//! graph.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::offsets::{Offset, OffsetSeq};

/// Direction of an elementary move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveSign {
    Plus,
    Minus,
}

/// A valid integer flow; construction enforces the invariants.
///
/// `x` holds `x_1 ..= x_{n-1}`, `y` holds `y_0 ..= y_{n-1}`. Flows of one
/// graph are totally ordered lexicographically by the concatenated
/// `(x, y)` vector; since the `y` side is determined by the `x` side this
/// is simply lex order on `x`, and it is the canonical enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFlow")]
pub struct IntegerFlow {
    n: usize,
    x: Vec<u32>,
    y: Vec<u32>,
}

#[derive(Deserialize)]
struct RawFlow {
    n: usize,
    x: Vec<u32>,
    y: Vec<u32>,
}

impl TryFrom<RawFlow> for IntegerFlow {
    type Error = Error;
    fn try_from(raw: RawFlow) -> Result<Self> {
        IntegerFlow::new(raw.n, raw.x, raw.y)
    }
}

impl IntegerFlow {
    pub fn new(n: usize, x: Vec<u32>, y: Vec<u32>) -> Result<Self> {
        if n < crate::graph::MIN_N {
            return Err(Error::InvalidGraphSize(n));
        }
        if x.len() != n - 1 || y.len() != n {
            return Err(Error::MalformedFlow(format!(
                "expected {} slack and {} nonslack values, got {} and {}",
                n - 1,
                n,
                x.len(),
                y.len()
            )));
        }
        if x[0] != 0 || y[0] != 0 || y[1] != 0 {
            return Err(Error::MalformedFlow(
                "edges out of the source must carry zero flow".into(),
            ));
        }
        let flow = IntegerFlow { n, x, y };
        for i in 2..n {
            let inflow = flow.x(i - 1) + flow.y(i - 2) + 1;
            let outflow = flow.x(i) + flow.y(i);
            if inflow != outflow {
                return Err(Error::MalformedFlow(format!(
                    "conservation fails at vertex {i}: {inflow} in, {outflow} out"
                )));
            }
        }
        Ok(flow)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Flow on `x_i`, `1 <= i <= n-1`.
    pub fn x(&self, i: usize) -> u32 {
        assert!((1..self.n).contains(&i), "x_{i} out of range for n={}", self.n);
        self.x[i - 1]
    }

    /// Flow on `y_i`, `0 <= i <= n-1`.
    pub fn y(&self, i: usize) -> u32 {
        assert!(i < self.n, "y_{i} out of range for n={}", self.n);
        self.y[i]
    }

    pub fn xs(&self) -> &[u32] {
        &self.x
    }

    pub fn ys(&self) -> &[u32] {
        &self.y
    }
}

impl fmt::Display for IntegerFlow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "x=[{}] y=[{}]", join(&self.x), join(&self.y))
    }
}

/// The flow sending everything down the slack spine: `x_i = i - 1`, `y = 0`.
pub fn base_flow(n: usize) -> IntegerFlow {
    let x = (0..n as u32 - 1).collect();
    let y = vec![0; n];
    IntegerFlow::new(n, x, y).expect("base flow is conservative")
}

/// All integer flows, in canonical (lexicographic) order.
pub fn enumerate_flows(n: usize) -> Result<Vec<IntegerFlow>> {
    if n < crate::graph::MIN_N {
        return Err(Error::InvalidGraphSize(n));
    }
    let mut x = vec![0u32; n - 1];
    let mut y = vec![0u32; n];
    let mut out = Vec::new();
    split_at(2, &mut x, &mut y, n, &mut out);
    Ok(out)
}

fn split_at(i: usize, x: &mut Vec<u32>, y: &mut Vec<u32>, n: usize, out: &mut Vec<IntegerFlow>) {
    if i == n {
        let flow = IntegerFlow::new(n, x.clone(), y.clone()).expect("splits conserve flow");
        out.push(flow);
        return;
    }
    let s = x[i - 2] + y[i - 2] + 1;
    for xi in 0..=s {
        x[i - 1] = xi;
        y[i] = s - xi;
        split_at(i + 1, x, y, n, out);
    }
    x[i - 1] = 0;
    y[i] = 0;
}

/// Applies the elementary move at position `i` (`2 <= i <= n-1`).
///
/// The plus move drains one unit from `x_i` and, when those edges exist,
/// from `y_{i+1}`, returning it through `y_i` and `x_{i+2}`; terms whose
/// edge falls off the graph near the sink are simply dropped. `None`
/// means a required edge carries no flow, so the move does not apply.
pub fn flow_move(flow: &IntegerFlow, i: usize, sign: MoveSign) -> Result<Option<IntegerFlow>> {
    let n = flow.n();
    if i < 2 || i > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "move position {i} out of range 2..={} for n={n}",
            n - 1
        )));
    }
    let mut x = flow.xs().to_vec();
    let mut y = flow.ys().to_vec();
    match sign {
        MoveSign::Plus => {
            if flow.x(i) == 0 || (i + 1 <= n - 1 && flow.y(i + 1) == 0) {
                return Ok(None);
            }
            x[i - 1] -= 1;
            y[i] += 1;
            if i + 1 <= n - 1 {
                y[i + 1] -= 1;
            }
            if i + 2 <= n - 1 {
                x[i + 2 - 1] += 1;
            }
        }
        MoveSign::Minus => {
            if flow.y(i) == 0 || (i + 2 <= n - 1 && flow.x(i + 2) == 0) {
                return Ok(None);
            }
            y[i] -= 1;
            x[i - 1] += 1;
            if i + 1 <= n - 1 {
                y[i + 1] += 1;
            }
            if i + 2 <= n - 1 {
                x[i + 2 - 1] -= 1;
            }
        }
    }
    let moved = IntegerFlow::new(n, x, y)
        .map_err(|e| Error::Inconsistency(format!("elementary move broke conservation: {e}")))?;
    Ok(Some(moved))
}

/// Offset sequence for the plus move at `i`, read directly off the flow.
///
/// Starting from `z_{i+1} = y_{i+1}`, a negative entry keeps absorbing the
/// next nonslack value, a positive entry bypasses one position and pays
/// the slack value two ahead, and a zero freezes the rest of the sequence
/// at zero.
pub fn flow_offsets(flow: &IntegerFlow, i: usize) -> Result<OffsetSeq> {
    let n = flow.n();
    if i < 2 || i > n - 1 {
        return Err(Error::InvalidArgument(format!(
            "offset position {i} out of range 2..={} for n={n}",
            n - 1
        )));
    }
    if i == n - 1 {
        return Ok(OffsetSeq::new(Vec::new()));
    }
    let mut entries = Vec::with_capacity(n - 1 - i);
    let mut z = flow.y(i + 1) as i64;
    entries.push(Offset::Int(z));
    let mut j = i + 1;
    loop {
        if z == 0 {
            entries.extend(std::iter::repeat_n(Offset::Int(0), n - 1 - j));
            break;
        }
        if z < 0 {
            if j == n - 1 {
                break;
            }
            z += flow.y(j + 1) as i64;
            entries.push(Offset::Int(z));
            j += 1;
        } else {
            if j + 1 <= n - 1 {
                entries.push(Offset::Bypass);
            }
            if j + 2 <= n - 1 {
                z -= flow.x(j + 2) as i64;
                entries.push(Offset::Int(z));
                j += 2;
            } else {
                break;
            }
        }
    }
    debug_assert_eq!(entries.len(), n - 1 - i);
    Ok(OffsetSeq::new(entries))
}

/// Counts flows with source input `source` and an extra `inner_inc` units
/// appearing at every inner vertex, by dynamic programming over the cut
/// profile `(x_{i-1}, y_{i-2}, y_{i-1})`.
///
/// `(0, 1)` counts the flows of [`enumerate_flows`]; `(t, 0)` counts the
/// lattice points of the `t`-th dilate of the flow polytope.
pub fn cut_transfer_count(n: usize, source: u32, inner_inc: u32) -> BigUint {
    assert!(n >= crate::graph::MIN_N);
    let mut states: HashMap<(u32, u32, u32), BigUint> = HashMap::new();
    for x1 in 0..=source {
        for y0 in 0..=source - x1 {
            let y1 = source - x1 - y0;
            states.insert((x1, y0, y1), BigUint::from(1u32));
        }
    }
    for _i in 2..n {
        let mut next: HashMap<(u32, u32, u32), BigUint> = HashMap::new();
        for ((a, b, c), cnt) in &states {
            let s = a + b + inner_inc;
            for u in 0..=s {
                let entry = next.entry((u, *c, s - u)).or_insert_with(BigUint::zero);
                *entry += cnt;
            }
        }
        states = next;
    }
    states.values().sum()
}

/// Flow cardinality by the cut-profile recurrence, independent of the
/// explicit enumeration.
pub fn flow_count_transfer_matrix(n: usize) -> BigUint {
    cut_transfer_count(n, 0, 1)
}
