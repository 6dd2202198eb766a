//! Leximin allocation for agents sharing one valuation.

use crate::error::Result;
use crate::model::{Allocation, GoodSet, Valuation};
use crate::partition::{leximin_partition, SearchBudget};
use crate::scalar::Scalar;

/// The leximin `n`-partition of all goods under `v`, part `i` (canonical
/// order, empty parts last) going to agent `i`.
pub fn allocate_identical_leximin<S: Scalar>(v: &Valuation<S>, n: usize, budget: SearchBudget) -> Result<Allocation> {
    let goods = GoodSet::full(v.goods());
    let partition = leximin_partition(v, goods, n, budget)?;
    Allocation::new(partition.parts, v.goods())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fairness::{check, Notion};
    use crate::harness::catalog;
    use crate::model::Instance;
    use crate::partition::SolverOracle;
    use crate::ratio;

    fn passes<S: Scalar>(inst: &Instance<S>, alloc: &Allocation, notion: Notion) -> bool {
        check(inst, alloc, notion, &S::one(), &SolverOracle::default()).unwrap().satisfied
    }

    #[test]
    fn unit_values_three_agents_five_goods() {
        let v = crate::Valuation::additive(vec![ratio(1, 1); 5]).unwrap();
        let alloc = allocate_identical_leximin(&v, 3, SearchBudget::default()).unwrap();
        let mut sizes: Vec<usize> = alloc.bundles.iter().map(|b| b.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2]);
        let inst = Instance::identical(v, 3).unwrap();
        assert!(passes(&inst, &alloc, Notion::Mma1));
    }

    #[test]
    fn no_goods_gives_empty_bundles() {
        let v = crate::Valuation::additive(vec![]).unwrap();
        let alloc = allocate_identical_leximin(&v, 3, SearchBudget::default()).unwrap();
        assert_eq!(alloc.bundles, vec![GoodSet::EMPTY; 3]);
        let inst = Instance::identical(v, 3).unwrap();
        assert!(passes(&inst, &alloc, Notion::Mma1));
    }

    #[test]
    fn binary_fixture_four_agents() {
        let inst = catalog::ef1_floor_instance(3);
        let v = inst.valuation(0).clone();
        let alloc = allocate_identical_leximin(&v, 4, SearchBudget::default()).unwrap();
        let mut values: Vec<_> = alloc.bundles.iter().map(|b| v.value(*b)).collect();
        values.sort();
        assert_eq!(values, vec![ratio(3, 1), ratio(3, 1), ratio(3, 1), ratio(4, 1)]);
    }
}
