use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use fairdiv::algorithms::{allocate_identical_leximin, allocate_matching, allocate_three_agents};
use fairdiv::fairness::check;
use fairdiv::harness::verify::{claim, verify_claims};
use fairdiv::harness::{catalog, claims, generate_instance, verify_claim, verify_egalitarian_bounds, TrialConfig};
use fairdiv::model::{parse_allocation, parse_instance, serialize_allocation, serialize_instance};
use fairdiv::partition::{
    exhaustive_allocation_search, leximin_partition, minimax_partition, mms_value, Requirement, SolverOracle,
};
use fairdiv::{Allocation, GoodSet, Instance, Notion, SearchBudget};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Algo, CheckArgs, Command, ExamplesArgs, GenArgs, PartitionArgs, SearchArgs, SolveArgs, VerifyArgs};

pub struct Outcome {
    pub value: Value,
    /// Printed verbatim, ignoring `--json`.
    pub raw: Option<String>,
    /// Exit 0 when true, 1 otherwise.
    pub positive: bool,
}

impl Outcome {
    fn new(value: Value, positive: bool) -> Self {
        Outcome {
            value,
            raw: None,
            positive,
        }
    }
}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<fairdiv::Error>() {
        Some(fairdiv::Error::BudgetExhausted { .. }) => 3,
        _ => 2,
    }
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Solve(a) => solve(a),
        Command::Check(a) => check_allocation(a),
        Command::Mms(a) => partition(a, Solver::Mms),
        Command::Leximin(a) => partition(a, Solver::Leximin),
        Command::Minimax(a) => partition(a, Solver::Minimax),
        Command::Search(a) => search(a),
        Command::Gen(a) => generate(a),
        Command::Verify(a) => verify(a),
        Command::Examples(a) => examples(a),
    }
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn budget(max_nodes: Option<u64>) -> SearchBudget {
    max_nodes.map_or_else(SearchBudget::default, SearchBudget::new)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_allocation(path: &Path, inst: &Instance) -> Result<Allocation> {
    let alloc = parse_allocation(&read(path)?, inst.goods()).with_context(|| format!("in {}", path.display()))?;
    alloc.validate(inst).with_context(|| format!("in {}", path.display()))?;
    Ok(alloc)
}

fn guarantee(notion: Notion, alpha: &str) -> Value {
    json!({ "notion": notion, "alpha": alpha })
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Matching => "matching",
        Algo::ThreeAgents => "three-agents",
        Algo::IdenticalLeximin => "identical-leximin",
    }
}

fn solve(a: &SolveArgs) -> Result<Outcome> {
    let inst = load_instance(&a.instance)?;
    // fields after the allocation, in output order
    let mut extra = serde_json::Map::new();
    extra.insert("algorithm".into(), json!(algo_name(a.algo)));
    let alloc = match a.algo {
        Algo::Matching => {
            let run = allocate_matching(&inst);
            let (notion, alpha) = run.guarantee.target::<fairdiv::Rational>();
            let mut g = guarantee(notion, &alpha.to_string());
            g["class"] = to_value(&run.guarantee);
            extra.insert("guarantee".into(), g);
            if a.trace {
                let full = to_value(&run);
                extra.insert("trace".into(), json!({ "rounds": full["rounds"], "last_goods": full["last_goods"] }));
            }
            run.allocation
        }
        Algo::ThreeAgents => {
            let r = allocate_three_agents(&inst, budget(a.max_nodes))?;
            extra.insert("guarantee".into(), guarantee(Notion::Mma1, "1"));
            extra.insert("case".into(), to_value(&r.case));
            if a.trace {
                extra.insert("trace".into(), json!({ "cut": r.cut }));
            }
            r.allocation
        }
        Algo::IdenticalLeximin => {
            let v = inst.valuation(0);
            if inst.valuations().iter().any(|w| w != v) {
                bail!("identical-leximin needs every agent to share one valuation");
            }
            let c = v.class();
            let g = if c.subadditive && c.strictly_increasing {
                guarantee(Notion::Mmax, "1")
            } else if c.submodular {
                guarantee(Notion::Mma1, "1")
            } else {
                Value::Null
            };
            extra.insert("guarantee".into(), g);
            allocate_identical_leximin(v, inst.agents(), budget(a.max_nodes))?
        }
    };
    let values: Vec<String> = (0..inst.agents()).map(|i| inst.value(i, alloc.bundle(i)).to_string()).collect();
    let mut doc = serde_json::Map::new();
    doc.insert("allocation".into(), to_value(&alloc));
    doc.insert("values".into(), to_value(&values));
    doc.extend(extra);
    Ok(Outcome::new(Value::Object(doc), true))
}

fn check_allocation(a: &CheckArgs) -> Result<Outcome> {
    let inst = load_instance(&a.instance)?;
    let alloc = load_allocation(&a.allocation, &inst)?;
    let report = check(&inst, &alloc, a.notion, &a.alpha, &SolverOracle::new(budget(a.max_nodes)))?;
    Ok(Outcome::new(to_value(&report), report.satisfied))
}

#[derive(Clone, Copy)]
enum Solver {
    Mms,
    Leximin,
    Minimax,
}

fn partition(a: &PartitionArgs, solver: Solver) -> Result<Outcome> {
    let inst = load_instance(&a.instance)?;
    if a.agent == 0 || a.agent > inst.agents() {
        bail!("agent {} out of range 1..={}", a.agent, inst.agents());
    }
    let goods = if a.goods.is_empty() {
        inst.all_goods()
    } else {
        let mut set = GoodSet::EMPTY;
        for &g in &a.goods {
            if g == 0 || g > inst.goods() {
                bail!("good {g} out of range 1..={}", inst.goods());
            }
            if set.contains(g - 1) {
                bail!("good {g} listed twice");
            }
            set.insert(g - 1);
        }
        set
    };
    let v = inst.valuation(a.agent - 1);
    let b = budget(a.max_nodes);
    let (value, parts) = match solver {
        Solver::Mms => {
            let (value, parts) = mms_value(v, goods, a.k, b)?;
            (Some(value), parts)
        }
        Solver::Leximin => (None, leximin_partition(v, goods, a.k, b)?),
        Solver::Minimax => {
            let (value, parts) = minimax_partition(v, goods, a.k, b)?;
            (Some(value), parts)
        }
    };
    let mut doc = json!({ "agent": a.agent, "k": a.k, "goods": goods });
    if let Some(value) = value {
        doc["value"] = Value::String(value.to_string());
    }
    doc["partition"] = to_value(&parts);
    Ok(Outcome::new(doc, true))
}

fn search(a: &SearchArgs) -> Result<Outcome> {
    let inst = load_instance(&a.instance)?;
    let (requirement, label) = match (&a.notion, &a.min_value) {
        (Some(notion), _) => (
            Requirement::Notion {
                notion: *notion,
                alpha: a.alpha.clone(),
            },
            json!({ "notion": notion, "alpha": a.alpha.to_string() }),
        ),
        (None, Some(t)) => (Requirement::MinValue(t.clone()), json!({ "min_value": t.to_string() })),
        (None, None) => unreachable!("clap requires a target"),
    };
    let b = budget(a.max_nodes);
    let outcome = exhaustive_allocation_search(&inst, &requirement, &SolverOracle::new(b), b)?;
    let mut doc = json!({ "requirement": label });
    for (k, v) in to_value(&outcome).as_object().expect("struct").iter() {
        doc[k] = v.clone();
    }
    Ok(Outcome::new(doc, outcome.exists))
}

fn generate(a: &GenArgs) -> Result<Outcome> {
    let cfg = TrialConfig::new(a.family, (a.agents, a.agents), (a.goods, a.goods), a.seed, a.index + 1);
    let inst = generate_instance(&cfg, a.index);
    Ok(Outcome {
        value: to_value(&inst),
        raw: Some(serialize_instance(&inst)),
        positive: true,
    })
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    if a.list {
        let list: Vec<Value> = claims()
            .iter()
            .map(|c| json!({ "id": c.id, "statement": c.statement, "expectation": c.expectation }))
            .collect();
        return Ok(Outcome::new(Value::Array(list), true));
    }
    let (Some(id), Some(seed)) = (a.claim.as_deref(), a.seed) else {
        bail!("--claim and --seed are required");
    };
    match id {
        "all" => {
            let report = verify_claims(&claims(), seed, a.trials)?;
            Ok(Outcome::new(to_value(&report), report.all_as_expected))
        }
        "egalitarian-bounds" => {
            let report = verify_egalitarian_bounds(3)?;
            Ok(Outcome::new(to_value(&report), report.holds))
        }
        _ => {
            let c = claim(id).ok_or_else(|| anyhow!("unknown claim {id:?}; see `verify --list`"))?;
            let report = verify_claim(&c, seed, a.trials)?;
            Ok(Outcome::new(to_value(&report), report.as_expected))
        }
    }
}

fn examples(a: &ExamplesArgs) -> Result<Outcome> {
    let entries = match &a.id {
        Some(id) => vec![catalog::entry(id).ok_or_else(|| anyhow!("unknown fixture {id:?}"))?],
        None => catalog::fixture_instances(),
    };
    if let Some(dir) = &a.dump {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let mut written = Vec::new();
        for e in &entries {
            let mut files = vec![(format!("{}.json", e.id), serialize_instance(&e.instance))];
            for (k, alloc) in e.allocations.iter().enumerate() {
                files.push((format!("{}.alloc{}.json", e.id, k + 1), serialize_allocation(alloc)));
            }
            for (name, text) in files {
                let path = dir.join(&name);
                fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
                written.push(path.display().to_string());
            }
        }
        return Ok(Outcome::new(json!({ "written": written }), true));
    }
    if a.reproduce {
        let mut all = Vec::new();
        for e in &entries {
            all.extend(catalog::reproduce(e, a.slow, budget(a.max_nodes))?);
        }
        let passed = all.iter().all(|r| r.passed);
        return Ok(Outcome::new(json!({ "all_passed": passed, "checks": all }), passed));
    }
    if a.id.is_some() {
        return Ok(Outcome::new(to_value(&entries[0]), true));
    }
    let list: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "description": e.description,
                "agents": e.instance.agents(),
                "goods": e.instance.goods(),
                "allocations": e.allocations.len(),
            })
        })
        .collect();
    Ok(Outcome::new(Value::Array(list), true))
}
