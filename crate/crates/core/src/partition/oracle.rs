//! Unpruned enumeration of every labelled k-partition.
//!
//! Deliberately naive: each of the `k^|S|` label assignments is materialized
//! and valued from scratch with [`Valuation::value`]. Used to cross-check the
//! branch-and-bound solvers.

use crate::error::{Error, Result};
use crate::model::{GoodSet, Valuation};
use crate::partition::canonical_labels;
use crate::scalar::Scalar;

/// Everything the solvers compute, found by brute force.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForce<S> {
    pub mms: S,
    pub minimax: S,
    pub leximin_vector: Vec<S>,
    /// Among partitions with the leximin vector, the one with the smallest
    /// canonical label string.
    pub leximin_parts: Vec<GoodSet>,
}

/// Enumerates all `k^|goods|` assignments; refuses when that exceeds `limit`.
pub fn brute_force<S: Scalar>(
    v: &Valuation<S>,
    goods: GoodSet,
    k: usize,
    limit: u64,
) -> Result<BruteForce<S>> {
    if k == 0 {
        return Err(Error::ZeroParts);
    }
    let items: Vec<usize> = goods.iter().collect();
    let count = (k as u64).checked_pow(items.len() as u32);
    match count {
        Some(c) if c <= limit => {}
        _ => return Err(Error::BudgetExhausted { max_nodes: limit }),
    }

    let mut labels = vec![0usize; items.len()];
    let mut best: Option<(S, S, Vec<S>, Vec<usize>, Vec<GoodSet>)> = None;
    loop {
        let mut parts = vec![GoodSet::EMPTY; k];
        for (i, &g) in items.iter().enumerate() {
            parts[labels[i]].insert(g);
        }
        let mut values: Vec<S> = parts.iter().map(|p| v.value(*p)).collect();
        values.sort();
        let low = values[0].clone();
        let high = values[k - 1].clone();
        let rgs = canonical_labels(&parts, goods);
        best = Some(match best {
            None => (low, high, values, rgs, parts),
            Some((mms, minimax, lex, lex_rgs, lex_parts)) => {
                let mms = if low > mms { low } else { mms };
                let minimax = if high < minimax { high } else { minimax };
                let better = values > lex || (values == lex && rgs < lex_rgs);
                if better {
                    (mms, minimax, values, rgs, parts)
                } else {
                    (mms, minimax, lex, lex_rgs, lex_parts)
                }
            }
        });

        // odometer
        let mut i = 0;
        loop {
            if i == labels.len() {
                let (mms, minimax, leximin_vector, _, mut leximin_parts) =
                    best.expect("at least one assignment");
                crate::partition::sort_canonical(&mut leximin_parts);
                return Ok(BruteForce {
                    mms,
                    minimax,
                    leximin_vector,
                    leximin_parts,
                });
            }
            labels[i] += 1;
            if labels[i] < k {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
    }
}
