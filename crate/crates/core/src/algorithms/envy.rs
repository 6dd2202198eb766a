//! Envy graphs and envy-cycle elimination.

use serde::Serialize;

use crate::model::json::one_based;
use crate::model::{Allocation, Instance};
use crate::scalar::Scalar;

/// Edge `i -> j` iff `v_i(A_i) < v_i(A_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvyGraph {
    envies: Vec<Vec<bool>>,
}

impl EnvyGraph {
    pub fn agents(&self) -> usize {
        self.envies.len()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.envies[from][to]
    }

    /// Edges in `(from, to)` order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.agents();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.envies[i][j])
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.envies.iter().flatten().filter(|&&e| e).count()
    }

    /// Agents nobody envies, ascending.
    pub fn unenvied(&self) -> Vec<usize> {
        let n = self.agents();
        (0..n).filter(|&j| (0..n).all(|i| !self.envies[i][j])).collect()
    }

    /// The first cycle met by depth-first search from the lowest-index node,
    /// successors in ascending order. `[i_1, ..., i_t]` means `i_1` envies
    /// `i_2`, ..., `i_t` envies `i_1`.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.agents();
        // 0 = unvisited, 1 = on the stack, 2 = done
        let mut state = vec![0u8; n];
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            state[root] = 1;
            stack.push((root, 0));
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if *next == n {
                    state[node] = 2;
                    stack.pop();
                    continue;
                }
                let to = *next;
                *next += 1;
                if !self.envies[node][to] {
                    continue;
                }
                match state[to] {
                    0 => {
                        state[to] = 1;
                        stack.push((to, 0));
                    }
                    1 => {
                        let start = stack.iter().position(|&(v, _)| v == to).expect("on stack");
                        return Some(stack[start..].iter().map(|&(v, _)| v).collect());
                    }
                    _ => {}
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }
}

pub fn build_envy_graph<S: Scalar>(inst: &Instance<S>, alloc: &Allocation) -> EnvyGraph {
    let n = inst.agents();
    let envies = (0..n)
        .map(|i| {
            let own = inst.value(i, alloc.bundle(i));
            (0..n)
                .map(|j| j != i && own < inst.value(i, alloc.bundle(j)))
                .collect()
        })
        .collect();
    EnvyGraph { envies }
}

/// One application of the rotation: each agent on the cycle takes the
/// bundle of the agent she envies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rotation {
    #[serde(serialize_with = "one_based::many")]
    pub cycle: Vec<usize>,
}

impl Rotation {
    /// Applies the rotation to anything indexed by agent.
    pub fn apply<T: Clone>(&self, per_agent: &mut [T]) {
        let moved: Vec<T> = self
            .cycle
            .iter()
            .enumerate()
            .map(|(k, _)| per_agent[self.cycle[(k + 1) % self.cycle.len()]].clone())
            .collect();
        for (&agent, item) in self.cycle.iter().zip(moved) {
            per_agent[agent] = item;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Elimination {
    pub allocation: Allocation,
    pub rotations: Vec<Rotation>,
}

/// Rotates bundles along envy cycles until the envy graph is acyclic.
pub fn eliminate_envy_cycles<S: Scalar>(inst: &Instance<S>, alloc: &Allocation) -> Elimination {
    let mut allocation = alloc.clone();
    let mut rotations = Vec::new();
    while let Some(cycle) = build_envy_graph(inst, &allocation).find_cycle() {
        let rotation = Rotation { cycle };
        rotation.apply(&mut allocation.bundles);
        rotations.push(rotation);
    }
    Elimination {
        allocation,
        rotations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::catalog;
    use crate::ratio;

    #[test]
    fn crossed_pair_mutual_envy_is_swapped() {
        let entry = catalog::crossed_pair(100);
        let swapped = &entry.allocations[0];
        let g = build_envy_graph(&entry.instance, swapped);
        assert_eq!(g.edges(), vec![(0, 1), (1, 0)]);
        assert_eq!(g.find_cycle(), Some(vec![0, 1]));
        let out = eliminate_envy_cycles(&entry.instance, swapped);
        assert_eq!(out.allocation, entry.allocations[1]);
        assert_eq!(out.rotations.len(), 1);
        assert_eq!(build_envy_graph(&entry.instance, &out.allocation).edge_count(), 0);
    }

    #[test]
    fn acyclic_input_is_unchanged() {
        let entry = catalog::crossed_pair(100);
        let out = eliminate_envy_cycles(&entry.instance, &entry.allocations[1]);
        assert_eq!(out.allocation, entry.allocations[1]);
        assert!(out.rotations.is_empty());
    }

    #[test]
    fn three_cycle_rotates_once() {
        // agent i holds good i, prefers good i + 1 (mod 3), ignores the third
        let inst = Instance::additive(vec![
            vec![ratio(1, 1), ratio(2, 1), ratio(0, 1)],
            vec![ratio(0, 1), ratio(1, 1), ratio(2, 1)],
            vec![ratio(2, 1), ratio(0, 1), ratio(1, 1)],
        ])
        .unwrap();
        let alloc = Allocation::from_labels([[1], [2], [3]], 3).unwrap();
        let before: Vec<_> = (0..3).map(|i| inst.value(i, alloc.bundle(i))).collect();
        assert_eq!(build_envy_graph(&inst, &alloc).edges(), vec![(0, 1), (1, 2), (2, 0)]);
        let out = eliminate_envy_cycles(&inst, &alloc);
        assert_eq!(out.rotations, vec![Rotation { cycle: vec![0, 1, 2] }]);
        assert!(build_envy_graph(&inst, &out.allocation).is_acyclic());
        for i in 0..3 {
            assert!(inst.value(i, out.allocation.bundle(i)) > before[i]);
        }
    }

    #[test]
    fn rotation_json_is_one_based() {
        let r = Rotation { cycle: vec![0, 2] };
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"cycle":[1,3]}"#);
    }
}
