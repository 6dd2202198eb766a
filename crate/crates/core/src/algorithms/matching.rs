//! Maximum-weight bipartite matching with exact weights.
//!
//! The optimum value comes from the Hungarian method on negated weights.
//! Among optimal matchings the lexicographically smallest list of
//! `(row, column)` pairs is chosen greedily: each row in turn takes the
//! lowest column that still admits an optimal completion.

use crate::scalar::Scalar;

/// Minimum-cost assignment of every row of `cost` (rows <= columns).
/// Returns the optimal cost.
fn hungarian<S: Scalar>(cost: &[Vec<S>]) -> S {
    let n = cost.len();
    if n == 0 {
        return S::zero();
    }
    let m = cost[0].len();
    debug_assert!(n <= m);
    // 1-based arrays; row 0 and column 0 are sentinels.
    let mut u = vec![S::zero(); n + 1];
    let mut v = vec![S::zero(); m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<S>> = vec![None; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<S> = None;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1].clone() - u[i0].clone() - v[j].clone();
                if minv[j].as_ref().is_none_or(|mv| cur < *mv) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().expect("just set");
                if delta.as_ref().is_none_or(|d| mj < d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("a free column remains while rows <= columns");
            for j in 0..=m {
                if used[j] {
                    u[p[j]] = u[p[j]].clone() + delta.clone();
                    v[j] = v[j].clone() - delta.clone();
                } else if let Some(mv) = minv[j].as_mut() {
                    *mv = mv.clone() - delta.clone();
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=m)
        .filter(|&j| p[j] != 0)
        .fold(S::zero(), |acc, j| acc + cost[p[j] - 1][j - 1].clone())
}

/// Largest total weight over matchings that use only `rows` and `cols`.
fn optimum<S: Scalar>(weights: &[Vec<S>], rows: &[usize], cols: &[usize]) -> S {
    if rows.is_empty() || cols.is_empty() {
        return S::zero();
    }
    // Non-positive weights behave like absent edges; an assignment may use
    // them at no gain.
    let w = |r: usize, c: usize| {
        let x = weights[r][c].clone();
        if x > S::zero() { x } else { S::zero() }
    };
    let cost: Vec<Vec<S>> = if rows.len() <= cols.len() {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| S::zero() - w(r, c)).collect())
            .collect()
    } else {
        cols.iter()
            .map(|&c| rows.iter().map(|&r| S::zero() - w(r, c)).collect())
            .collect()
    };
    S::zero() - hungarian(&cost)
}

/// A maximum-weight matching of the `rows x cols` weight matrix, as
/// `(row, column)` pairs in row order. Edges of weight zero (or less) are
/// never used; ties go to the lexicographically smallest pair list.
pub fn max_weight_matching<S: Scalar>(weights: &[Vec<S>]) -> Vec<(usize, usize)> {
    let rows = weights.len();
    let cols = weights.first().map_or(0, |r| r.len());
    let mut free_rows: Vec<usize> = (0..rows).collect();
    let mut free_cols: Vec<usize> = (0..cols).collect();
    let mut target = optimum(weights, &free_rows, &free_cols);
    let mut matching = Vec::new();
    for r in 0..rows {
        free_rows.retain(|&x| x != r);
        for k in 0..free_cols.len() {
            let c = free_cols[k];
            let w = &weights[r][c];
            if *w <= S::zero() {
                continue;
            }
            let mut rest = free_cols.clone();
            rest.remove(k);
            if w.clone() + optimum(weights, &free_rows, &rest) == target {
                matching.push((r, c));
                target = target - w.clone();
                free_cols = rest;
                break;
            }
        }
    }
    matching
}

/// Total weight of `matching`.
pub fn matching_weight<S: Scalar>(weights: &[Vec<S>], matching: &[(usize, usize)]) -> S {
    matching
        .iter()
        .fold(S::zero(), |acc, &(r, c)| acc + weights[r][c].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Best weight over every partial injection, by enumeration.
    fn brute_best(weights: &[Vec<i64>]) -> i64 {
        fn go(weights: &[Vec<i64>], r: usize, used: u32) -> i64 {
            if r == weights.len() {
                return 0;
            }
            let mut best = go(weights, r + 1, used);
            for c in 0..weights[r].len() {
                if used >> c & 1 == 0 && weights[r][c] > 0 {
                    best = best.max(weights[r][c] + go(weights, r + 1, used | 1 << c));
                }
            }
            best
        }
        go(weights, 0, 0)
    }

    #[test]
    fn two_by_two() {
        let w = vec![vec![100i64, 1], vec![1, 100]];
        let m = max_weight_matching(&w);
        assert_eq!(m, vec![(0, 0), (1, 1)]);
        assert_eq!(matching_weight(&w, &m), 200);
    }

    #[test]
    fn zero_weights_give_nothing() {
        assert!(max_weight_matching(&[vec![0i64, 0], vec![0, 0]]).is_empty());
        assert!(max_weight_matching::<i64>(&[]).is_empty());
    }

    #[test]
    fn single_edge() {
        assert_eq!(max_weight_matching(&[vec![5i64]]), vec![(0, 0)]);
    }

    #[test]
    fn lexicographic_among_optima() {
        // {(0,0),(1,1)} and {(0,1),(1,0)} both weigh 2
        assert_eq!(max_weight_matching(&[vec![1i64, 1], vec![1, 1]]), vec![(0, 0), (1, 1)]);
        // row 0 stays unmatched only if that is forced
        assert_eq!(max_weight_matching(&[vec![1i64], vec![2]]), vec![(1, 0)]);
    }

    proptest! {
        #[test]
        fn matches_enumeration(rows in 1usize..5, cols in 1usize..6, seed in prop::collection::vec(0i64..6, 30)) {
            let w: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| seed[(r * cols + c) % seed.len()] - 1).collect()).collect();
            let m = max_weight_matching(&w);
            prop_assert_eq!(matching_weight(&w, &m), brute_best(&w));
            let mut seen_cols: Vec<usize> = m.iter().map(|p| p.1).collect();
            seen_cols.sort();
            seen_cols.dedup();
            prop_assert_eq!(seen_cols.len(), m.len());
            prop_assert!(m.iter().all(|&(r, c)| w[r][c] > 0));
            prop_assert!(m.windows(2).all(|p| p[0].0 < p[1].0));
        }
    }
}
