use serde::{Serialize, Serializer};

use crate::fairness::Notion;
use crate::model::json::scalar_text;
use crate::partition::PartitionResult;
use crate::scalar::Scalar;

fn one_based<Ser: Serializer>(index: &usize, s: Ser) -> Result<Ser::Ok, Ser::Error> {
    s.serialize_u64(*index as u64 + 1)
}

fn one_based_opt<Ser: Serializer>(index: &Option<usize>, s: Ser) -> Result<Ser::Ok, Ser::Error> {
    match index {
        Some(i) => s.serialize_some(&(*i as u64 + 1)),
        None => s.serialize_none(),
    }
}

/// Evidence attached to a verdict. Agent and good indices are 0-based in
/// memory and 1-based in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness<S: Scalar> {
    /// `own < alpha * v_i(A_j \ removed)`. For EF1 `removed` is the good whose
    /// removal hurts the envied bundle most, and envy still remains.
    Envy {
        #[serde(serialize_with = "one_based")]
        envied: usize,
        #[serde(serialize_with = "one_based_opt")]
        removed: Option<usize>,
        #[serde(serialize_with = "scalar_text::one")]
        envied_value: S,
    },
    /// `n * own < alpha * v_i(M)`
    Proportional {
        #[serde(serialize_with = "scalar_text::one")]
        own_value: S,
        #[serde(serialize_with = "scalar_text::one")]
        total_value: S,
        agents: usize,
    },
    /// A partition every part of which beats `own / alpha`: of `M` into `n`
    /// parts (MMS), or of `A_{-i}` minus `removed` into `n - 1` parts
    /// (MMA family). For MMA1 `removed` is the good leaving the smallest
    /// residual share.
    Share {
        #[serde(serialize_with = "one_based_opt")]
        removed: Option<usize>,
        partition: PartitionResult<S>,
    },
    /// EEF: a split of `A_{-i}` among the others that the agent envies in no part.
    Reallocation { partition: PartitionResult<S> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct AgentVerdict<S: Scalar> {
    #[serde(serialize_with = "one_based")]
    pub agent: usize,
    pub satisfied: bool,
    #[serde(serialize_with = "scalar_text::one")]
    pub own_value: S,
    pub witness: Option<Witness<S>>,
}

impl<S: Scalar> AgentVerdict<S> {
    pub(crate) fn satisfied(agent: usize, own_value: S) -> Self {
        AgentVerdict {
            agent,
            satisfied: true,
            own_value,
            witness: None,
        }
    }

    pub(crate) fn violate(&mut self, witness: Witness<S>) {
        self.satisfied = false;
        self.witness = Some(witness);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct FairnessReport<S: Scalar> {
    pub notion: Notion,
    #[serde(serialize_with = "scalar_text::one")]
    pub alpha: S,
    /// Conjunction of the per-agent verdicts.
    pub satisfied: bool,
    pub agents: Vec<AgentVerdict<S>>,
}

impl<S: Scalar> FairnessReport<S> {
    pub(crate) fn new(notion: Notion, alpha: S, agents: Vec<AgentVerdict<S>>) -> Self {
        FairnessReport {
            notion,
            alpha,
            satisfied: agents.iter().all(|a| a.satisfied),
            agents,
        }
    }

    pub fn agent(&self, agent: usize) -> &AgentVerdict<S> {
        &self.agents[agent]
    }

    pub fn violators(&self) -> impl Iterator<Item = usize> + '_ {
        self.agents.iter().filter(|a| !a.satisfied).map(|a| a.agent)
    }
}
