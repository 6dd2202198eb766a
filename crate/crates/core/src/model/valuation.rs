use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::goods::{GoodSet, MAX_GOODS};
use crate::scalar::Scalar;

/// Largest good count accepted for explicit set-function tables.
pub const MAX_TABLE_GOODS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValuationKind<S> {
    /// One value per good; `v(S)` is the sum.
    Additive(Vec<S>),
    /// `2^m` entries indexed by the bitmask of the subset.
    Table(Vec<S>),
}

/// Membership flags for the valuation classes the checkers care about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValuationClass {
    pub additive: bool,
    pub binary_additive: bool,
    pub subadditive: bool,
    pub submodular: bool,
    pub monotone: bool,
    pub strictly_increasing: bool,
}

/// A normalized, monotone valuation over `m` goods.
#[derive(Debug)]
pub struct Valuation<S> {
    m: usize,
    kind: ValuationKind<S>,
    class: OnceLock<ValuationClass>,
}

impl<S: Clone> Clone for Valuation<S> {
    fn clone(&self) -> Self {
        Valuation {
            m: self.m,
            kind: self.kind.clone(),
            class: self.class.clone(),
        }
    }
}

impl<S: PartialEq> PartialEq for Valuation<S> {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.kind == other.kind
    }
}

impl<S: Scalar> Valuation<S> {
    pub fn additive(values: Vec<S>) -> Result<Self> {
        if values.len() > MAX_GOODS {
            return Err(Error::TooManyGoods {
                m: values.len(),
                limit: MAX_GOODS,
            });
        }
        if let Some(j) = values.iter().position(|v| *v < S::zero()) {
            return Err(Error::InvalidValuation(format!(
                "good {} has negative value {}",
                j + 1,
                values[j]
            )));
        }
        Ok(Valuation {
            m: values.len(),
            kind: ValuationKind::Additive(values),
            class: OnceLock::new(),
        })
    }

    /// Builds a set-function valuation from its full table, indexed by subset
    /// bitmask. Rejects tables that are not normalized or not monotone.
    pub fn table(m: usize, entries: Vec<S>) -> Result<Self> {
        if m > MAX_TABLE_GOODS {
            return Err(Error::TooManyGoods {
                m,
                limit: MAX_TABLE_GOODS,
            });
        }
        if entries.len() != 1 << m {
            return Err(Error::InvalidValuation(format!(
                "table for {m} goods needs {} entries, got {}",
                1usize << m,
                entries.len()
            )));
        }
        if !entries[0].is_zero() {
            return Err(Error::InvalidValuation(format!(
                "v(empty set) must be 0, got {}",
                entries[0]
            )));
        }
        for mask in 0..entries.len() {
            for good in 0..m {
                let bit = 1 << good;
                if mask & bit == 0 && entries[mask | bit] < entries[mask] {
                    return Err(Error::InvalidValuation(format!(
                        "not monotone: v({}) < v({})",
                        GoodSet::from_bits((mask | bit) as u64),
                        GoodSet::from_bits(mask as u64)
                    )));
                }
            }
        }
        Ok(Valuation {
            m,
            kind: ValuationKind::Table(entries),
            class: OnceLock::new(),
        })
    }

    /// Tabulates `f` over every subset of `0..m`.
    pub fn table_from_fn(m: usize, f: impl Fn(GoodSet) -> S) -> Result<Self> {
        if m > MAX_TABLE_GOODS {
            return Err(Error::TooManyGoods {
                m,
                limit: MAX_TABLE_GOODS,
            });
        }
        let entries = (0..1u64 << m).map(|bits| f(GoodSet::from_bits(bits))).collect();
        Self::table(m, entries)
    }

    pub fn goods(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> &ValuationKind<S> {
        &self.kind
    }

    pub fn is_additive_kind(&self) -> bool {
        matches!(self.kind, ValuationKind::Additive(_))
    }

    /// `v(S)`. Panics if `set` reaches outside `0..m`; use [`Valuation::try_value`]
    /// for untrusted input.
    pub fn value(&self, set: GoodSet) -> S {
        debug_assert!(set.is_subset(GoodSet::full(self.m)));
        match &self.kind {
            ValuationKind::Additive(values) => set
                .iter()
                .fold(S::zero(), |acc, g| acc + values[g].clone()),
            ValuationKind::Table(entries) => entries[set.bits() as usize].clone(),
        }
    }

    pub fn try_value(&self, set: GoodSet) -> Result<S> {
        if let Some(good) = set.difference(GoodSet::full(self.m)).first() {
            return Err(Error::GoodOutOfRange { good, m: self.m });
        }
        Ok(self.value(set))
    }

    /// `v({good})`
    pub fn good_value(&self, good: usize) -> S {
        match &self.kind {
            ValuationKind::Additive(values) => values[good].clone(),
            ValuationKind::Table(entries) => entries[1 << good].clone(),
        }
    }

    /// `v(base ∪ extra)` given `v(base)` and, for additive kinds, `v(extra)`.
    /// Lets the search code extend part values in constant time.
    pub(crate) fn union_value(
        &self,
        base: GoodSet,
        base_value: &S,
        extra: GoodSet,
        extra_value: &S,
    ) -> S {
        match &self.kind {
            ValuationKind::Additive(_) => base_value.clone() + extra_value.clone(),
            ValuationKind::Table(entries) => entries[base.union(extra).bits() as usize].clone(),
        }
    }

    /// Whether `v(S)` is the sum of singleton values. Cheaper than
    /// [`Valuation::class`] on tables, which also decides subadditivity.
    pub fn is_additive(&self) -> bool {
        if let Some(c) = self.class.get() {
            return c.additive;
        }
        match &self.kind {
            ValuationKind::Additive(_) => true,
            ValuationKind::Table(t) => (1..t.len()).all(|mask| {
                let low = mask & mask.wrapping_neg();
                t[mask] == t[low].clone() + t[mask & !low].clone()
            }),
        }
    }

    /// Class flags, computed once on first use.
    pub fn class(&self) -> ValuationClass {
        *self.class.get_or_init(|| self.compute_class())
    }

    fn compute_class(&self) -> ValuationClass {
        match &self.kind {
            ValuationKind::Additive(values) => {
                let binary = values.iter().all(|v| v.is_zero() || v.is_one());
                ValuationClass {
                    additive: true,
                    binary_additive: binary,
                    subadditive: true,
                    submodular: true,
                    monotone: true,
                    strictly_increasing: values.iter().all(|v| *v > S::zero()),
                }
            }
            ValuationKind::Table(entries) => classify_table(self.m, entries),
        }
    }
}

fn classify_table<S: Scalar>(m: usize, t: &[S]) -> ValuationClass {
    let size = 1usize << m;
    let mut monotone = true;
    let mut strictly_increasing = true;
    let mut submodular = true;
    let mut additive = true;
    for mask in 0..size {
        for e in 0..m {
            let be = 1 << e;
            if mask & be != 0 {
                continue;
            }
            let gain = t[mask | be].clone() - t[mask].clone();
            if gain < S::zero() {
                monotone = false;
            }
            if gain <= S::zero() {
                strictly_increasing = false;
            }
            if gain != t[be] {
                additive = false;
            }
            if submodular {
                // Local characterization: marginal of e shrinks when any f is added.
                for f in (e + 1)..m {
                    let bf = 1 << f;
                    if mask & bf != 0 {
                        continue;
                    }
                    let gain_after = t[mask | be | bf].clone() - t[mask | bf].clone();
                    if gain_after > gain {
                        submodular = false;
                        break;
                    }
                }
            }
        }
    }
    // Subadditivity over disjoint pairs suffices for monotone functions:
    // v(S ∪ T) = v(S ∪ (T \ S)) and v(T \ S) <= v(T).
    let subadditive = submodular || (monotone && subadditive_disjoint(size, t));
    let binary_additive =
        additive && (0..m).all(|e| t[1 << e].is_zero() || t[1 << e].is_one());
    ValuationClass {
        additive,
        binary_additive,
        subadditive,
        submodular: submodular && monotone,
        monotone,
        strictly_increasing,
    }
}

fn subadditive_disjoint<S: Scalar>(size: usize, t: &[S]) -> bool {
    let full = size - 1;
    for union in 1..size {
        // Split `union` into S (containing its lowest bit) and T = union \ S.
        let low = union & union.wrapping_neg();
        let rest = union & !low;
        let mut sub = rest;
        loop {
            let s = sub | low;
            let t_part = union & !s;
            if t_part != 0 && t[union] > t[s].clone() + t[t_part].clone() {
                return false;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        debug_assert!(union <= full);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn table2(single1: i64, single2: i64, pair: i64) -> Valuation<Rational> {
        Valuation::table(
            2,
            vec![r(0, 1), r(single1, 1), r(single2, 1), r(pair, 1)],
        )
        .unwrap()
    }

    #[test]
    fn value_of_additive_sums_goods() {
        let v = Valuation::additive(vec![
            r(1, 1),
            r(2, 5),
            r(2, 5),
            r(2, 5),
            r(1, 10),
            r(1, 10),
            r(1, 10),
            r(1, 10),
        ])
        .unwrap();
        assert_eq!(v.value(GoodSet::from_labels([5, 6, 7, 8])), r(2, 5));
        assert_eq!(v.value(GoodSet::EMPTY), r(0, 1));
        let unit = Valuation::additive(vec![r(1, 1); 3]).unwrap();
        assert_eq!(unit.value(GoodSet::from_labels([1, 2, 3])), r(3, 1));
    }

    #[test]
    fn try_value_rejects_out_of_range() {
        let v = Valuation::additive(vec![r(1, 1); 2]).unwrap();
        assert_eq!(
            v.try_value(GoodSet::from_labels([3])),
            Err(Error::GoodOutOfRange { good: 2, m: 2 })
        );
    }

    #[test]
    fn binary_vector_is_binary_additive_and_submodular() {
        let c = Valuation::additive(vec![r(1, 1), r(1, 1), r(0, 1)]).unwrap().class();
        assert!(c.binary_additive && c.submodular && c.subadditive);
        assert!(!c.strictly_increasing);
    }

    #[test]
    fn coverage_pair_is_submodular_not_strict() {
        let c = table2(1, 1, 1).class();
        assert!(c.submodular && c.subadditive && c.monotone);
        assert!(!c.strictly_increasing && !c.additive);
    }

    #[test]
    fn superadditive_pair_is_not_subadditive() {
        let c = table2(1, 1, 3).class();
        assert!(!c.subadditive && !c.submodular);
        assert!(c.strictly_increasing);
    }

    #[test]
    fn additive_table_detected() {
        let c = table2(1, 2, 3).class();
        assert!(c.additive && !c.binary_additive && c.submodular);
        assert!(table2(1, 1, 2).class().binary_additive);
    }

    #[test]
    fn non_monotone_and_unnormalized_tables_rejected() {
        assert!(Valuation::table(2, vec![r(0, 1), r(2, 1), r(1, 1), r(1, 1)]).is_err());
        assert!(Valuation::table(1, vec![r(1, 1), r(2, 1)]).is_err());
        assert!(Valuation::table(2, vec![r(0, 1); 3]).is_err());
    }

    #[test]
    fn negative_additive_rejected() {
        assert!(Valuation::additive(vec![r(-1, 2)]).is_err());
    }

    #[test]
    fn table_limit() {
        assert!(matches!(
            Valuation::<i64>::table_from_fn(17, |s| s.len() as i64),
            Err(Error::TooManyGoods { .. })
        ));
    }

    #[test]
    fn xos_is_subadditive_but_not_submodular() {
        // max of two additive functions over 3 goods
        let w = [[1i64, 1, 0], [0, 0, 1]];
        let v = Valuation::table_from_fn(3, |s| {
            w.iter().map(|row| s.iter().map(|g| row[g]).sum::<i64>()).max().unwrap()
        })
        .unwrap();
        let c = v.class();
        assert!(c.subadditive);
        assert!(!c.submodular);
    }

    #[test]
    fn quick_additivity_matches_class() {
        for (a, b, ab) in [(1, 2, 3), (1, 2, 2), (1, 1, 1), (0, 0, 0), (2, 1, 4)] {
            let fresh = table2(a, b, ab);
            let flagged = table2(a, b, ab);
            let _ = flagged.class();
            assert_eq!(fresh.is_additive(), flagged.class().additive, "{a} {b} {ab}");
            assert_eq!(flagged.is_additive(), flagged.class().additive);
        }
    }
}
