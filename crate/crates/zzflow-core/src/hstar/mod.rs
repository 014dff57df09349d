//! The h* polynomial of the flow polytope and the statistics that match it.
//!
//! The same coefficient vector arises five ways: from the Ehrhart counts,
//! as the swap distribution over alternating permutations, as the descent
//! distribution over cyclic permutations of flows, as the out- or
//! in-degree distribution of the dual graph, and as the h-vector of a
//! shelling order. The verification suite pits these against each other.

pub mod ehrhart;
pub mod perms;
pub mod shelling;
pub mod table1;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dual::{build_dual, DualMethod};
use crate::error::Result;
use crate::flows::enumerate_flows;

/// Coefficient vector, constant term first, trailing zeroes trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial(Vec<u64>);

impl Polynomial {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Polynomial(coeffs)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Counts how often each value occurs; slot `k` holds the count of `k`.
pub fn distribution(values: impl IntoIterator<Item = usize>) -> Polynomial {
    let mut counts: Vec<u64> = Vec::new();
    for v in values {
        if v >= counts.len() {
            counts.resize(v + 1, 0);
        }
        counts[v] += 1;
    }
    Polynomial::new(counts)
}

/// The ways this crate can produce the h* coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HStarMethod {
    /// Alternating sums of dilate lattice counts.
    Ehrhart,
    /// Swap statistic over alternating permutations.
    Swap,
    /// Descent statistic over cyclic permutations of flows.
    Des,
    /// Out-degrees in the dual graph.
    Sz,
    /// In-degrees in the dual graph.
    Zs,
    /// h-vector of the coordinate-sum shelling order.
    ShellingForward,
    /// h-vector of the reversed order.
    ShellingReverse,
}

pub fn hstar(n: usize, method: HStarMethod) -> Result<Polynomial> {
    match method {
        HStarMethod::Ehrhart => ehrhart::hstar_ehrhart(n),
        HStarMethod::Swap => {
            let perms = perms::alternating_perms(n)?;
            Ok(distribution(perms.iter().map(perms::swap_stat)))
        }
        HStarMethod::Des => {
            let flows = enumerate_flows(n)?;
            Ok(distribution(
                flows
                    .iter()
                    .map(|f| perms::des_stat(&perms::flow_to_cyclic(f))),
            ))
        }
        HStarMethod::Sz => {
            let dual = build_dual(n, DualMethod::Flows)?;
            Ok(distribution(dual.degree_stats().into_iter().map(|d| d.0)))
        }
        HStarMethod::Zs => {
            let dual = build_dual(n, DualMethod::Flows)?;
            Ok(distribution(dual.degree_stats().into_iter().map(|d| d.1)))
        }
        HStarMethod::ShellingForward => {
            Ok(shelling::shelling_report(n, shelling::ShellingOrder::Forward)?.h)
        }
        HStarMethod::ShellingReverse => {
            Ok(shelling::shelling_report(n, shelling::ShellingOrder::Reverse)?.h)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_basics() {
        let p = Polynomial::new(vec![1, 7, 7, 1, 0, 0]);
        assert_eq!(p.coeffs(), [1, 7, 7, 1]);
        assert_eq!(p.to_string(), "1,7,7,1");
        assert_eq!(p.sum(), 16);
        assert_eq!(Polynomial::new(vec![]).coeffs(), [0]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,7,7,1]");
    }

    #[test]
    fn distribution_counts_values() {
        let d = distribution([0, 1, 1, 1, 3]);
        assert_eq!(d.coeffs(), [1, 3, 0, 1]);
    }

    #[test]
    fn all_methods_agree_at_n5() {
        let expect = Polynomial::new(vec![1, 7, 7, 1]);
        for method in [
            HStarMethod::Ehrhart,
            HStarMethod::Swap,
            HStarMethod::Des,
            HStarMethod::Sz,
            HStarMethod::Zs,
            HStarMethod::ShellingForward,
            HStarMethod::ShellingReverse,
        ] {
            assert_eq!(hstar(5, method).unwrap(), expect, "{method:?}");
        }
    }
}
