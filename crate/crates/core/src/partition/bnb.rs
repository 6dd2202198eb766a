//! Branch-and-bound over k-partitions.
//!
//! Goods are placed one at a time into parts. In the value-ordered searches
//! goods go in decreasing singleton value and only one currently-empty part is
//! tried per good, since empty parts are interchangeable. Bounds use
//! monotonicity (a part never ends above `v(part ∪ rest)` nor below its
//! current value) and, for additive valuations, the fixed total.

use std::cmp::Ordering;

use crate::error::Result;
use crate::model::{GoodSet, Valuation};
use crate::partition::NodeCounter;
use crate::scalar::Scalar;

#[derive(Clone)]
struct Part<S> {
    set: GoodSet,
    value: S,
}

struct Ctx<'a, S: Scalar> {
    v: &'a Valuation<S>,
    k: usize,
    additive: bool,
    order: Vec<usize>,
    single: Vec<S>,
    /// Goods `order[t..]`, and their value.
    rest: Vec<GoodSet>,
    rest_value: Vec<S>,
    total: S,
    counter: &'a NodeCounter,
}

impl<'a, S: Scalar> Ctx<'a, S> {
    fn new(
        v: &'a Valuation<S>,
        goods: GoodSet,
        k: usize,
        by_value: bool,
        counter: &'a NodeCounter,
    ) -> Self {
        let mut order: Vec<usize> = goods.iter().collect();
        if by_value {
            order.sort_by(|&a, &b| v.good_value(b).cmp(&v.good_value(a)).then(a.cmp(&b)));
        }
        let single = order.iter().map(|&g| v.good_value(g)).collect();
        let mut rest = vec![GoodSet::EMPTY; order.len() + 1];
        for t in (0..order.len()).rev() {
            rest[t] = rest[t + 1].with(order[t]);
        }
        let rest_value = rest.iter().map(|r| v.value(*r)).collect();
        Ctx {
            v,
            k,
            additive: v.is_additive_kind(),
            order,
            single,
            rest,
            rest_value,
            total: v.value(goods),
            counter,
        }
    }

    fn len(&self) -> usize {
        self.order.len()
    }

    fn empty_parts(&self) -> Vec<Part<S>> {
        vec![
            Part {
                set: GoodSet::EMPTY,
                value: S::zero()
            };
            self.k
        ]
    }

    fn add(&self, part: &Part<S>, t: usize) -> Part<S> {
        let g = self.order[t];
        Part {
            set: part.set.with(g),
            value: self
                .v
                .union_value(part.set, &part.value, GoodSet::singleton(g), &self.single[t]),
        }
    }

    /// Largest value `part` can still reach.
    fn ceiling(&self, part: &Part<S>, t: usize) -> S {
        self.v
            .union_value(part.set, &part.value, self.rest[t], &self.rest_value[t])
    }

    /// Part indices in ascending current value, skipping all but the first
    /// empty part.
    fn branch_order(&self, parts: &[Part<S>]) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.k).collect();
        idx.sort_by(|&a, &b| parts[a].value.cmp(&parts[b].value));
        let mut seen_empty = false;
        idx.retain(|&p| {
            if parts[p].set.is_empty() {
                if seen_empty {
                    return false;
                }
                seen_empty = true;
            }
            true
        });
        idx
    }

    fn sets(parts: &[Part<S>]) -> Vec<GoodSet> {
        parts.iter().map(|p| p.set).collect()
    }
}

fn sorted_values<S: Scalar>(parts: &[Part<S>]) -> Vec<S> {
    let mut values: Vec<S> = parts.iter().map(|p| p.value.clone()).collect();
    values.sort();
    values
}

fn min_value<S: Scalar>(parts: &[Part<S>]) -> S {
    parts.iter().map(|p| &p.value).min().cloned().unwrap_or_else(S::zero)
}

fn max_value<S: Scalar>(parts: &[Part<S>]) -> S {
    parts.iter().map(|p| &p.value).max().cloned().unwrap_or_else(S::zero)
}

/// Greedy start: each good into the currently poorest part.
fn greedy_fill<S: Scalar>(ctx: &Ctx<'_, S>) -> Vec<Part<S>> {
    let mut parts = ctx.empty_parts();
    for t in 0..ctx.len() {
        let p = (0..ctx.k)
            .min_by(|&a, &b| parts[a].value.cmp(&parts[b].value).then(a.cmp(&b)))
            .expect("k >= 1");
        parts[p] = ctx.add(&parts[p], t);
    }
    parts
}

/// For additive valuations: can every part below `floor` be lifted to at
/// least `floor` (strictly above it when `strict`) with the remaining value?
fn additive_can_lift<S: Scalar>(parts: &[Part<S>], rest_value: &S, floor: &S, strict: bool) -> bool {
    let mut needed = S::zero();
    let mut short = false;
    for p in parts {
        let below = if strict { p.value <= *floor } else { p.value < *floor };
        if below {
            short = true;
            needed = needed + (floor.clone() - p.value.clone());
        }
    }
    if !short {
        return true;
    }
    if strict {
        *rest_value > needed
    } else {
        *rest_value >= needed
    }
}

// ---------------------------------------------------------------- maximin

struct Maximin<'a, S: Scalar> {
    ctx: Ctx<'a, S>,
    best: S,
    best_parts: Vec<GoodSet>,
}

impl<S: Scalar> Maximin<'_, S> {
    fn proven_optimal(&self) -> bool {
        self.ctx.additive && self.best.times(self.ctx.k) >= self.ctx.total
    }

    fn search(&mut self, t: usize, parts: &mut Vec<Part<S>>) -> Result<bool> {
        self.ctx.counter.tick()?;
        if t == self.ctx.len() {
            let value = min_value(parts);
            if value > self.best {
                self.best = value;
                self.best_parts = Ctx::sets(parts);
                return Ok(self.proven_optimal());
            }
            return Ok(false);
        }
        let ceiling = parts
            .iter()
            .map(|p| self.ctx.ceiling(p, t))
            .min()
            .expect("k >= 1");
        if ceiling <= self.best {
            return Ok(false);
        }
        if self.ctx.additive
            && !additive_can_lift(parts, &self.ctx.rest_value[t], &self.best, true)
        {
            return Ok(false);
        }
        for p in self.ctx.branch_order(parts) {
            let saved = parts[p].clone();
            parts[p] = self.ctx.add(&saved, t);
            let done = self.search(t + 1, parts)?;
            parts[p] = saved;
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

pub(super) fn maximin<S: Scalar>(
    v: &Valuation<S>,
    goods: GoodSet,
    k: usize,
    counter: &NodeCounter,
) -> Result<Vec<GoodSet>> {
    let ctx = Ctx::new(v, goods, k, true, counter);
    let start = greedy_fill(&ctx);
    let mut state = Maximin {
        best: min_value(&start),
        best_parts: Ctx::sets(&start),
        ctx,
    };
    if !state.proven_optimal() {
        let mut parts = state.ctx.empty_parts();
        state.search(0, &mut parts)?;
    }
    Ok(state.best_parts)
}

// ---------------------------------------------------------------- leximin

struct Leximin<'a, S: Scalar> {
    ctx: Ctx<'a, S>,
    best: Vec<S>,
}

impl<S: Scalar> Leximin<'_, S> {
    fn search(&mut self, t: usize, parts: &mut Vec<Part<S>>) -> Result<()> {
        self.ctx.counter.tick()?;
        if t == self.ctx.len() {
            let values = sorted_values(parts);
            if values > self.best {
                self.best = values;
            }
            return Ok(());
        }
        let mut ceilings: Vec<S> = parts.iter().map(|p| self.ctx.ceiling(p, t)).collect();
        ceilings.sort();
        if ceilings <= self.best {
            return Ok(());
        }
        if self.ctx.additive
            && !additive_can_lift(parts, &self.ctx.rest_value[t], &self.best[0], false)
        {
            return Ok(());
        }
        for p in self.ctx.branch_order(parts) {
            let saved = parts[p].clone();
            parts[p] = self.ctx.add(&saved, t);
            self.search(t + 1, parts)?;
            parts[p] = saved;
        }
        Ok(())
    }
}

/// The lexicographically largest sorted value vector over k-partitions.
pub(super) fn leximin_vector<S: Scalar>(
    v: &Valuation<S>,
    goods: GoodSet,
    k: usize,
    counter: &NodeCounter,
) -> Result<Vec<S>> {
    let ctx = Ctx::new(v, goods, k, true, counter);
    let start = greedy_fill(&ctx);
    let mut state = Leximin {
        best: sorted_values(&start),
        ctx,
    };
    let mut parts = state.ctx.empty_parts();
    state.search(0, &mut parts)?;
    Ok(state.best)
}

struct Canonical<'a, S: Scalar> {
    ctx: Ctx<'a, S>,
    target: &'a [S],
}

fn dominated<S: Scalar>(lower: &[S], upper: &[S]) -> bool {
    lower.iter().zip(upper).all(|(a, b)| a <= b)
}

impl<S: Scalar> Canonical<'_, S> {
    fn search(&self, t: usize, used: usize, parts: &mut Vec<Part<S>>) -> Result<bool> {
        self.ctx.counter.tick()?;
        if t == self.ctx.len() {
            return Ok(sorted_values(parts).as_slice() == self.target);
        }
        if !dominated(&sorted_values(parts), self.target) {
            return Ok(false);
        }
        let mut ceilings: Vec<S> = parts.iter().map(|p| self.ctx.ceiling(p, t)).collect();
        ceilings.sort();
        if !dominated(self.target, &ceilings) {
            return Ok(false);
        }
        for label in 0..(used + 1).min(self.ctx.k) {
            let saved = parts[label].clone();
            parts[label] = self.ctx.add(&saved, t);
            if self.search(t + 1, used.max(label + 1), parts)? {
                return Ok(true);
            }
            parts[label] = saved;
        }
        Ok(false)
    }
}

/// The partition with sorted vector `target` whose part labels, read over the
/// goods in ascending index order, form the smallest restricted-growth string.
pub(super) fn first_with_vector<S: Scalar>(
    v: &Valuation<S>,
    goods: GoodSet,
    k: usize,
    target: &[S],
    counter: &NodeCounter,
) -> Result<Vec<GoodSet>> {
    let state = Canonical {
        ctx: Ctx::new(v, goods, k, false, counter),
        target,
    };
    let mut parts = state.ctx.empty_parts();
    let found = state.search(0, 0, &mut parts)?;
    assert!(found, "target vector must be attainable");
    Ok(Ctx::sets(&parts))
}

// ---------------------------------------------------------------- minimax

struct Minimax<'a, S: Scalar> {
    ctx: Ctx<'a, S>,
    best: S,
    best_parts: Vec<GoodSet>,
    floor: S,
}

impl<S: Scalar> Minimax<'_, S> {
    fn proven_optimal(&self) -> bool {
        if self.best <= self.floor {
            return true;
        }
        self.ctx.additive && self.best.times(self.ctx.k) <= self.ctx.total
    }

    fn search(&mut self, t: usize, parts: &mut Vec<Part<S>>) -> Result<bool> {
        self.ctx.counter.tick()?;
        if t == self.ctx.len() {
            let value = max_value(parts);
            if value < self.best {
                self.best = value;
                self.best_parts = Ctx::sets(parts);
                return Ok(self.proven_optimal());
            }
            return Ok(false);
        }
        let mut floor = max_value(parts);
        let cheapest = parts
            .iter()
            .map(|p| self.ctx.add(p, t).value)
            .min()
            .expect("k >= 1");
        if cheapest > floor {
            floor = cheapest;
        }
        if floor >= self.best {
            return Ok(false);
        }
        for p in self.ctx.branch_order(parts) {
            let saved = parts[p].clone();
            parts[p] = self.ctx.add(&saved, t);
            let done = self.search(t + 1, parts)?;
            parts[p] = saved;
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

pub(super) fn minimax<S: Scalar>(
    v: &Valuation<S>,
    goods: GoodSet,
    k: usize,
    counter: &NodeCounter,
) -> Result<Vec<GoodSet>> {
    let ctx = Ctx::new(v, goods, k, true, counter);
    let mut start = ctx.empty_parts();
    for t in 0..ctx.len() {
        let p = (0..k)
            .map(|p| (ctx.add(&start[p], t).value, p))
            .min_by(|a, b| match a.0.cmp(&b.0) {
                Ordering::Equal => a.1.cmp(&b.1),
                o => o,
            })
            .expect("k >= 1")
            .1;
        start[p] = ctx.add(&start[p], t);
    }
    let floor = ctx.single.iter().max().cloned().unwrap_or_else(S::zero);
    let mut state = Minimax {
        best: max_value(&start),
        best_parts: Ctx::sets(&start),
        floor,
        ctx,
    };
    if !state.proven_optimal() {
        let mut parts = state.ctx.empty_parts();
        state.search(0, &mut parts)?;
    }
    Ok(state.best_parts)
}
