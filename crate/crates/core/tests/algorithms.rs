//! Invariants of the allocation procedures on seeded random instances.

use fairdiv::algorithms::{
    allocate_identical_leximin, allocate_matching, allocate_three_agents, build_envy_graph, eliminate_envy_cycles,
};
use fairdiv::fairness::{check, Notion};
use fairdiv::harness::generate::random_allocation;
use fairdiv::harness::{generate_instance, TrialConfig, ValuationFamily};
use fairdiv::partition::SolverOracle;
use fairdiv::{ratio, GoodSet, Instance, Rational, SearchBudget};

fn satisfied(inst: &Instance, alloc: &fairdiv::Allocation, notion: Notion, alpha: Rational) -> bool {
    check(inst, alloc, notion, &alpha, &SolverOracle::default()).unwrap().satisfied
}

#[test]
fn matching_rounds_keep_their_invariants() {
    for family in ValuationFamily::ALL {
        let cfg = TrialConfig::new(family, (1, 4), (0, 10), 41, 60);
        for t in 0..cfg.trials {
            let inst = generate_instance(&cfg, t);
            let run = allocate_matching(&inst);
            let a = &run.allocation;
            a.validate(&inst).unwrap();
            assert!(run.rounds.len() <= inst.goods(), "{family} {t}");
            for round in &run.rounds {
                assert!(!round.unenvied.is_empty());
                assert!(!round.matching.is_empty());
                for &(agent, good) in &round.matching {
                    assert!(round.unenvied.contains(&agent));
                    assert!(round.remaining.contains(&good));
                }
            }
            assert!(build_envy_graph(&inst, a).is_acyclic());
            // the two inequalities behind the guarantee, read off the trace
            for j in 0..inst.agents() {
                if a.bundle(j).len() < 2 {
                    continue;
                }
                let e = run.last_goods[j].expect("non-empty bundle has a last good");
                assert!(a.bundle(j).contains(e));
                for i in (0..inst.agents()).filter(|&i| i != j) {
                    let own = inst.value(i, a.bundle(i));
                    assert!(own >= inst.value(i, a.bundle(j).without(e)), "{family} {t}: {i} vs {j}");
                    assert!(own >= inst.value(i, GoodSet::singleton(e)), "{family} {t}: {i} vs {j}");
                }
            }
        }
    }
}

#[test]
fn guarantee_class_is_delivered() {
    for family in [ValuationFamily::Additive, ValuationFamily::BinaryAdditive, ValuationFamily::SubmodularTable] {
        let cfg = TrialConfig::new(family, (2, 4), (1, 9), 43, 60);
        for t in 0..cfg.trials {
            let inst = generate_instance(&cfg, t);
            let run = allocate_matching(&inst);
            let a = &run.allocation;
            let (notion, alpha) = run.guarantee.target();
            assert!(satisfied(&inst, a, notion, alpha), "{family} {t}: {:?}", run.guarantee);
        }
    }
}

#[test]
fn envy_cycle_elimination_only_helps() {
    let cfg = TrialConfig::new(ValuationFamily::Additive, (2, 5), (1, 10), 47, 200);
    for t in 0..cfg.trials {
        let inst = generate_instance(&cfg, t);
        let mut rng = cfg.rng(t + (1 << 32));
        let start = random_allocation(&mut rng, inst.agents(), inst.goods());
        let out = eliminate_envy_cycles(&inst, &start);
        assert!(build_envy_graph(&inst, &out.allocation).is_acyclic());
        for i in 0..inst.agents() {
            assert!(inst.value(i, out.allocation.bundle(i)) >= inst.value(i, start.bundle(i)));
        }
        // replaying the rotations one at a time, edges strictly decrease
        let mut bundles = start.bundles.clone();
        let mut edges = build_envy_graph(&inst, &start).edge_count();
        for r in &out.rotations {
            r.apply(&mut bundles);
            let now = build_envy_graph(&inst, &fairdiv::Allocation { bundles: bundles.clone() }).edge_count();
            assert!(now < edges);
            edges = now;
        }
    }
}

#[test]
fn divide_and_choose_is_mma1() {
    let cfg = TrialConfig::new(ValuationFamily::Additive, (3, 3), (0, 9), 53, 150);
    for t in 0..cfg.trials {
        let inst = generate_instance(&cfg, t);
        let out = allocate_three_agents(&inst, SearchBudget::default()).unwrap();
        assert!(satisfied(&inst, &out.allocation, Notion::Mma1, ratio(1, 1)), "trial {t}: {:?}", out.case);
        assert!(out.cut.contains(&out.allocation.bundle(2)));
    }
}

#[test]
fn identical_leximin_is_mma1_for_submodular() {
    let cfg = TrialConfig::new(ValuationFamily::SubmodularTable, (1, 1), (0, 10), 59, 40);
    for t in 0..cfg.trials {
        let v = generate_instance(&cfg, t).valuation(0).clone();
        let n = 2 + t % 3;
        let alloc = allocate_identical_leximin(&v, n, SearchBudget::default()).unwrap();
        let inst = Instance::identical(v, n).unwrap();
        assert!(satisfied(&inst, &alloc, Notion::Mma1, ratio(1, 1)), "trial {t}");
    }
}

#[test]
fn identical_leximin_is_mmax_for_strictly_increasing() {
    let cfg = TrialConfig::new(ValuationFamily::StrictlyIncreasingSubadditiveTable, (1, 1), (0, 10), 61, 40);
    for t in 0..cfg.trials {
        let v = generate_instance(&cfg, t).valuation(0).clone();
        let n = 2 + t % 3;
        let alloc = allocate_identical_leximin(&v, n, SearchBudget::default()).unwrap();
        let inst = Instance::identical(v, n).unwrap();
        assert!(satisfied(&inst, &alloc, Notion::Mmax, ratio(1, 1)), "trial {t}");
    }
}
