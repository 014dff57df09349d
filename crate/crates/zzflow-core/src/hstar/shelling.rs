//! Candidate shelling orders for the triangulation.
//!
//! Simplices are ordered by their embedding coordinates: ascending
//! coordinate sum with lexicographic ties (forward), or that order
//! reversed. For each simplex, `s` counts the distinct facet-sized
//! intersections with earlier simplices; the order is a shelling when
//! every nonempty earlier intersection sits inside one of those facets.
//! The `s`-distribution is then the h-vector.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::cliques::{clique_to_flow, enumerate_cliques};
use crate::dual::potential_coords;
use crate::error::Result;
use crate::flows::IntegerFlow;
use crate::graph::ZigzagGraph;
use crate::hstar::{distribution, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShellingOrder {
    Forward,
    Reverse,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShellingEntry {
    pub flow: IntegerFlow,
    /// Distinct facet-sized intersections with earlier simplices.
    pub s: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShellingReport {
    pub n: usize,
    pub is_shelling: bool,
    /// First offending pair, if any.
    pub violation: Option<String>,
    /// Simplices in scan order.
    pub entries: Vec<ShellingEntry>,
    /// Distribution of `s`.
    pub h: Polynomial,
}

pub fn shelling_report(n: usize, order: ShellingOrder) -> Result<ShellingReport> {
    let g = ZigzagGraph::new(n)?;
    let routes = g.enumerate_routes();
    let route_index: std::collections::HashMap<_, _> = routes
        .iter()
        .enumerate()
        .map(|(k, r)| (r.clone(), k))
        .collect();
    let cliques = enumerate_cliques(n)?;
    let flows: Vec<IntegerFlow> = cliques.iter().map(clique_to_flow).collect::<Result<_>>()?;
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

    let mut scan: Vec<usize> = (0..cliques.len()).collect();
    scan.sort_by_key(|&k| {
        let c = potential_coords(&flows[k]);
        (c.iter().sum::<i64>(), c)
    });
    if order == ShellingOrder::Reverse {
        scan.reverse();
    }

    let mut is_shelling = true;
    let mut violation = None;
    let mut entries = Vec::with_capacity(scan.len());
    for (pos, &k) in scan.iter().enumerate() {
        let mut facets: Vec<BitSet> = Vec::new();
        for &j in &scan[..pos] {
            let inter = members[k].and(&members[j]);
            if inter.count() == n && !facets.contains(&inter) {
                facets.push(inter);
            }
        }
        for &j in &scan[..pos] {
            let inter = members[k].and(&members[j]);
            if inter.is_empty() || facets.iter().any(|f| inter.is_subset_of(f)) {
                continue;
            }
            is_shelling = false;
            if violation.is_none() {
                violation = Some(format!(
                    "simplex of {} meets simplex of {} outside every shared facet",
                    flows[k], flows[j]
                ));
            }
        }
        entries.push(ShellingEntry {
            flow: flows[k].clone(),
            s: facets.len(),
        });
    }
    let h = distribution(entries.iter().map(|e| e.s));
    Ok(ShellingReport {
        n,
        is_shelling,
        violation,
        entries,
        h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hstar::ehrhart::hstar_ehrhart;

    #[test]
    fn worked_example_forward() {
        let report = shelling_report(4, ShellingOrder::Forward).unwrap();
        assert!(report.is_shelling);
        let xs: Vec<&[u32]> = report.entries.iter().map(|e| e.flow.xs()).collect();
        assert_eq!(
            xs,
            [
                &[0, 1, 2][..],
                &[0, 1, 1][..],
                &[0, 1, 0][..],
                &[0, 0, 1][..],
                &[0, 0, 0][..]
            ]
        );
        let ss: Vec<usize> = report.entries.iter().map(|e| e.s).collect();
        assert_eq!(ss, [0, 1, 1, 1, 2]);
        assert_eq!(report.h.coeffs(), [1, 3, 1]);
    }

    #[test]
    fn worked_example_reverse() {
        let report = shelling_report(4, ShellingOrder::Reverse).unwrap();
        assert!(report.is_shelling);
        let ss: Vec<usize> = report.entries.iter().map(|e| e.s).collect();
        assert_eq!(ss, [0, 1, 1, 2, 1]);
        assert_eq!(report.h.coeffs(), [1, 3, 1]);
    }

    #[test]
    fn both_orders_shell_and_match_hstar() {
        for n in 3..=6 {
            let expect = hstar_ehrhart(n).unwrap();
            for order in [ShellingOrder::Forward, ShellingOrder::Reverse] {
                let report = shelling_report(n, order).unwrap();
                assert!(report.is_shelling, "n={n} {order:?}: {:?}", report.violation);
                assert_eq!(report.h, expect, "n={n} {order:?}");
            }
        }
    }
}
