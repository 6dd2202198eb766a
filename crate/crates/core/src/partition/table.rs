//! Maximin and minimax values for every subset at once.
//!
//! `best_j(X) = max over T ∋ min(X), T ⊆ X of min(v(T), best_{j-1}(X \ T))`,
//! and the same with max/min swapped for minimax. One level costs `3^m / 2`
//! steps, which beats per-query search when a caller needs many subsets of
//! the same goods (the implication harness and exhaustive searches).

use crate::error::{Error, Result};
use crate::model::{GoodSet, Instance, Valuation, MAX_TABLE_GOODS};
use crate::partition::{PartitionResult, ShareOracle};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Objective {
    Maximin,
    Minimax,
}

/// Per-level tables for one valuation over all subsets of `0..m`.
#[derive(Debug, Clone)]
pub struct ShareTable<S> {
    m: usize,
    max_parts: usize,
    /// `maximin[j-1][X]`, `minimax[j-1][X]` for `j` parts.
    maximin: Vec<Vec<S>>,
    minimax: Vec<Vec<S>>,
    /// Part containing the lowest good of `X` in an optimal split.
    maximin_choice: Vec<Vec<u32>>,
    minimax_choice: Vec<Vec<u32>>,
}

impl<S: Scalar> ShareTable<S> {
    pub fn build(v: &Valuation<S>, max_parts: usize) -> Result<Self> {
        let m = v.goods();
        if m > MAX_TABLE_GOODS {
            return Err(Error::TooManyGoods {
                m,
                limit: MAX_TABLE_GOODS,
            });
        }
        if max_parts == 0 {
            return Err(Error::ZeroParts);
        }
        let size = 1usize << m;
        let base: Vec<S> = (0..size as u64).map(|b| v.value(GoodSet::from_bits(b))).collect();
        let identity: Vec<u32> = (0..size as u32).collect();
        let (maximin, maximin_choice) =
            levels(&base, &identity, max_parts, Objective::Maximin);
        let (minimax, minimax_choice) =
            levels(&base, &identity, max_parts, Objective::Minimax);
        Ok(ShareTable {
            m,
            max_parts,
            maximin,
            minimax,
            maximin_choice,
            minimax_choice,
        })
    }

    pub fn max_parts(&self) -> usize {
        self.max_parts
    }

    fn check(&self, goods: GoodSet, k: usize) -> Result<()> {
        if k == 0 {
            return Err(Error::ZeroParts);
        }
        if k > self.max_parts {
            return Err(Error::Unsupported(format!(
                "table built for at most {} parts, asked for {k}",
                self.max_parts
            )));
        }
        if let Some(good) = goods.difference(GoodSet::full(self.m)).first() {
            return Err(Error::GoodOutOfRange { good, m: self.m });
        }
        Ok(())
    }

    pub fn mms(&self, goods: GoodSet, k: usize) -> Result<&S> {
        self.check(goods, k)?;
        Ok(&self.maximin[k - 1][goods.bits() as usize])
    }

    pub fn minimax(&self, goods: GoodSet, k: usize) -> Result<&S> {
        self.check(goods, k)?;
        Ok(&self.minimax[k - 1][goods.bits() as usize])
    }

    fn parts(&self, choice: &[Vec<u32>], goods: GoodSet, k: usize) -> Vec<GoodSet> {
        let mut parts = Vec::with_capacity(k);
        let mut left = goods.bits() as u32;
        for j in (1..=k).rev() {
            let part = choice[j - 1][left as usize];
            parts.push(GoodSet::from_bits(part as u64));
            left &= !part;
        }
        parts
    }

    pub fn mms_partition(&self, v: &Valuation<S>, goods: GoodSet, k: usize) -> Result<PartitionResult<S>> {
        self.check(goods, k)?;
        Ok(PartitionResult::from_parts(v, self.parts(&self.maximin_choice, goods, k)))
    }

    pub fn minimax_partition(
        &self,
        v: &Valuation<S>,
        goods: GoodSet,
        k: usize,
    ) -> Result<PartitionResult<S>> {
        self.check(goods, k)?;
        Ok(PartitionResult::from_parts(v, self.parts(&self.minimax_choice, goods, k)))
    }
}

fn levels<S: Scalar>(
    base: &[S],
    identity: &[u32],
    max_parts: usize,
    objective: Objective,
) -> (Vec<Vec<S>>, Vec<Vec<u32>>) {
    let size = base.len();
    let mut values = vec![base.to_vec()];
    let mut choices = vec![identity.to_vec()];
    for _ in 2..=max_parts {
        let prev = values.last().expect("level 1 present");
        let mut level = Vec::with_capacity(size);
        let mut choice = Vec::with_capacity(size);
        for x in 0..size {
            if x == 0 {
                level.push(S::zero());
                choice.push(0);
                continue;
            }
            let low = x & x.wrapping_neg();
            let rest = x & !low;
            let mut best: Option<&S> = None;
            let mut best_part = 0u32;
            // T = low | sub, for every sub ⊆ rest; ascending so ties keep the smallest T.
            let mut sub = 0usize;
            loop {
                let t = low | sub;
                let own = &base[t];
                let other = &prev[x & !t];
                let split = match objective {
                    Objective::Maximin => own.min(other),
                    Objective::Minimax => own.max(other),
                };
                let improves = match (best, objective) {
                    (None, _) => true,
                    (Some(b), Objective::Maximin) => split > b,
                    (Some(b), Objective::Minimax) => split < b,
                };
                if improves {
                    best = Some(split);
                    best_part = t as u32;
                }
                if sub == rest {
                    break;
                }
                sub = (sub.wrapping_sub(rest)) & rest;
            }
            level.push(best.expect("non-empty set").clone());
            choice.push(best_part);
        }
        values.push(level);
        choices.push(choice);
    }
    (values, choices)
}

/// [`ShareOracle`] backed by one [`ShareTable`] per agent.
#[derive(Debug, Clone)]
pub struct TableOracle<S> {
    tables: Vec<ShareTable<S>>,
}

impl<S: Scalar> TableOracle<S> {
    /// Tables for every agent, up to `max_parts` parts (typically `n`).
    pub fn build(inst: &Instance<S>, max_parts: usize) -> Result<Self> {
        let tables = inst
            .valuations()
            .iter()
            .map(|v| ShareTable::build(v, max_parts))
            .collect::<Result<Vec<_>>>()?;
        Ok(TableOracle { tables })
    }

    pub fn table(&self, agent: usize) -> &ShareTable<S> {
        &self.tables[agent]
    }
}

impl<S: Scalar> ShareOracle<S> for TableOracle<S> {
    fn maximin(
        &self,
        inst: &Instance<S>,
        agent: usize,
        goods: GoodSet,
        k: usize,
    ) -> Result<PartitionResult<S>> {
        self.tables[agent].mms_partition(inst.valuation(agent), goods, k)
    }

    fn minimax(
        &self,
        inst: &Instance<S>,
        agent: usize,
        goods: GoodSet,
        k: usize,
    ) -> Result<PartitionResult<S>> {
        self.tables[agent].minimax_partition(inst.valuation(agent), goods, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::oracle::brute_force;
    use crate::ratio;

    #[test]
    fn agrees_with_brute_force_on_every_subset() {
        let v = Valuation::additive(vec![
            ratio(1, 1),
            ratio(2, 5),
            ratio(2, 5),
            ratio(1, 10),
            ratio(3, 7),
            ratio(0, 1),
        ])
        .unwrap();
        let table = ShareTable::build(&v, 3).unwrap();
        for goods in GoodSet::full(6).subsets() {
            for k in 1..=3 {
                let b = brute_force(&v, goods, k, 1 << 20).unwrap();
                assert_eq!(table.mms(goods, k).unwrap(), &b.mms, "{goods} k={k}");
                assert_eq!(table.minimax(goods, k).unwrap(), &b.minimax, "{goods} k={k}");
                let p = table.mms_partition(&v, goods, k).unwrap();
                assert!(p.is_consistent(&v, goods));
                assert_eq!(p.min_value(), b.mms);
                assert_eq!(p.parts.len(), k);
                let q = table.minimax_partition(&v, goods, k).unwrap();
                assert_eq!(q.max_value(), b.minimax);
            }
        }
    }

    #[test]
    fn rejects_too_many_parts() {
        let v = Valuation::additive(vec![1i64, 2]).unwrap();
        let table = ShareTable::build(&v, 2).unwrap();
        assert!(table.mms(GoodSet::full(2), 3).is_err());
        assert!(table.mms(GoodSet::full(2), 0).is_err());
    }
}
