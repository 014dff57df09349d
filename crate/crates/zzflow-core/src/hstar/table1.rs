//! One row per alternating permutation: every object in the bijection
//! chain and every statistic, ready for CSV or JSON export.
//!
//! The columns do not repeat one number four ways; swap, sz, zs, and des
//! belong to different objects in the same row and only their
//! distributions over the whole table coincide.

use serde::Serialize;

use crate::cliques::clique_to_flow;
use crate::dual::{build_dual, DualMethod};
use crate::error::{Error, Result};
use crate::hstar::perms::{
    alt_perm_to_clique, alternating_perms, des_stat, flow_to_cyclic, swap_stat, word_string,
};

#[derive(Debug, Clone, Serialize)]
pub struct TableRecord {
    pub alt_perm: String,
    pub inverse: String,
    pub x: Vec<u32>,
    pub y: Vec<u32>,
    pub cyclic_perm: String,
    pub swap: usize,
    pub sz: usize,
    pub zs: usize,
    pub des: usize,
}

/// Full statistics table, rows in lexicographic permutation order.
pub fn statistics_table(n: usize) -> Result<Vec<TableRecord>> {
    let dual = build_dual(n, DualMethod::Flows)?;
    let stats = dual.degree_stats();
    alternating_perms(n)?
        .iter()
        .map(|alpha| {
            let flow = clique_to_flow(&alt_perm_to_clique(alpha)?)?;
            let node = dual.node_index(&flow).ok_or_else(|| {
                Error::Inconsistency(format!("flow of {alpha} is not a dual graph node"))
            })?;
            let pi = flow_to_cyclic(&flow);
            Ok(TableRecord {
                alt_perm: alpha.to_string(),
                inverse: word_string(&alpha.inverse()),
                x: flow.xs().to_vec(),
                y: flow.ys().to_vec(),
                cyclic_perm: pi.to_string(),
                swap: swap_stat(alpha),
                sz: stats[node].0,
                zs: stats[node].1,
                des: des_stat(&pi),
            })
        })
        .collect()
}

pub fn table_csv(records: &[TableRecord]) -> String {
    let join = |v: &[u32]| {
        v.iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "alt_perm",
        "inverse",
        "x",
        "y",
        "cyclic_perm",
        "swap",
        "sz",
        "zs",
        "des",
    ])
    .expect("writing to a buffer");
    for r in records {
        w.write_record([
            r.alt_perm.as_str(),
            r.inverse.as_str(),
            &join(&r.x),
            &join(&r.y),
            r.cyclic_perm.as_str(),
            &r.swap.to_string(),
            &r.sz.to_string(),
            &r.zs.to_string(),
            &r.des.to_string(),
        ])
        .expect("writing to a buffer");
    }
    String::from_utf8(w.into_inner().expect("flushing a buffer")).expect("csv output is utf-8")
}
