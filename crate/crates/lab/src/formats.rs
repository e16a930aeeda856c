//! JSON file formats.
//!
//! Instances: `{"n", "edges", "thresholds" | "types"}` with types as
//! `[num, den]` pairs. Weighted instances add `"weights"` (parallel to
//! `"edges"`) and `"self_loops"` (`[node, weight]` pairs); their thresholds may
//! be negative. Formulas: `{"variant", "n", "clauses"}` with literals `±(i+1)`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use threshold_core::dynamics::{weighted_types_to_thresholds, WeightedGraph};
use threshold_core::expansions::NodeRole;
use threshold_core::graph::types_to_thresholds;
use threshold_core::reductions::{Formula, GadgetInstance, Variant};
use threshold_core::{ActionProfile, Graph, Rational, ThresholdDist, TypeDist};

use crate::error::{LabError, LabResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub types: Option<Vec<[i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_loops: Option<Vec<[i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_map: Option<Vec<String>>,
}

/// A parsed instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loaded {
    pub graph: Graph,
    pub thresholds: Option<Vec<i64>>,
    pub types: Option<TypeDist>,
    /// `None` for unweighted files.
    pub weights: Option<Vec<(usize, usize, i64)>>,
    pub self_loops: Vec<(usize, i64)>,
}

fn invalid(msg: impl Into<String>) -> LabError {
    LabError::Invalid(msg.into())
}

impl InstanceFile {
    pub fn parse(self) -> LabResult<Loaded> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let graph = Graph::new(self.n, &edges)?;
        if self.thresholds.is_some() && self.types.is_some() {
            return Err(invalid("give either thresholds or types, not both"));
        }
        let types = match self.types {
            Some(pairs) => {
                let pairs: Vec<(i64, i64)> = pairs.iter().map(|&[a, b]| (a, b)).collect();
                Some(TypeDist::from_pairs(&pairs)?)
            }
            None => None,
        };
        let weights = match self.weights {
            Some(w) if w.len() != edges.len() => {
                return Err(invalid(format!(
                    "{} weights for {} edges",
                    w.len(),
                    edges.len()
                )))
            }
            Some(w) => Some(edges.iter().zip(w).map(|(&(u, v), w)| (u, v, w)).collect()),
            None => None,
        };
        let self_loops = self
            .self_loops
            .unwrap_or_default()
            .into_iter()
            .map(|[i, w]| {
                usize::try_from(i)
                    .map(|i| (i, w))
                    .map_err(|_| invalid(format!("bad loop node {i}")))
            })
            .collect::<LabResult<Vec<_>>>()?;
        Ok(Loaded {
            graph,
            thresholds: self.thresholds,
            types,
            weights,
            self_loops,
        })
    }
}

impl Loaded {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some() || !self.self_loops.is_empty()
    }

    /// Thresholds of an unweighted instance, from types if needed.
    pub fn threshold_dist(&self) -> LabResult<ThresholdDist> {
        if self.is_weighted() {
            return Err(invalid(
                "weighted instance where an unweighted one is needed",
            ));
        }
        match (&self.thresholds, &self.types) {
            (Some(k), _) => {
                let k = k
                    .iter()
                    .map(|&x| {
                        u32::try_from(x).map_err(|_| invalid(format!("threshold {x} is negative")))
                    })
                    .collect::<LabResult<Vec<_>>>()?;
                if k.len() != self.n() {
                    return Err(threshold_core::Error::LengthMismatch {
                        expected: self.n(),
                        found: k.len(),
                    }
                    .into());
                }
                Ok(ThresholdDist::new(k))
            }
            (None, Some(q)) => Ok(types_to_thresholds(&self.graph, q)?),
            (None, None) => Err(invalid("instance has neither thresholds nor types")),
        }
    }

    /// Weighted view; unweighted files get unit weights.
    pub fn weighted(&self) -> LabResult<WeightedGraph> {
        let edges: Vec<(usize, usize, i64)> = match &self.weights {
            Some(w) => w.clone(),
            None => self.graph.edges().iter().map(|&(u, v)| (u, v, 1)).collect(),
        };
        let placeholder = vec![0; self.n()];
        let w = WeightedGraph::from_parts(self.n(), &edges, &self.self_loops, placeholder)?;
        let k = match (&self.thresholds, &self.types) {
            (Some(k), _) => k.clone(),
            (None, Some(q)) => weighted_types_to_thresholds(&w, q)?,
            (None, None) => return Err(invalid("instance has neither thresholds nor types")),
        };
        Ok(w.with_thresholds(k)?)
    }
}

pub fn read_instance(path: &Path) -> LabResult<Loaded> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str::<InstanceFile>(&text)?.parse()
}

pub fn instance_file(g: &Graph, k: &ThresholdDist, node_map: Option<&[NodeRole]>) -> InstanceFile {
    InstanceFile {
        n: g.n(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        thresholds: Some(k.as_slice().iter().map(|&x| i64::from(x)).collect()),
        types: None,
        weights: None,
        self_loops: None,
        node_map: node_map.map(|m| m.iter().map(ToString::to_string).collect()),
    }
}

pub fn weighted_file(w: &WeightedGraph, node_map: Option<&[NodeRole]>) -> InstanceFile {
    let loops: Vec<[i64; 2]> = w
        .loop_weights()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| [i as i64, x])
        .collect();
    InstanceFile {
        n: w.n(),
        edges: w.graph().edges().iter().map(|&(u, v)| [u, v]).collect(),
        thresholds: Some(w.thresholds().to_vec()),
        types: None,
        weights: Some(w.edge_weights().to_vec()),
        self_loops: (!loops.is_empty()).then_some(loops),
        node_map: node_map.map(|m| m.iter().map(ToString::to_string).collect()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormulaFile {
    pub variant: String,
    pub n: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl FormulaFile {
    pub fn parse(&self) -> LabResult<Formula> {
        Ok(Formula::from_signed(
            Variant::parse(&self.variant)?,
            self.n,
            &self.clauses,
        )?)
    }

    pub fn from_formula(f: &Formula) -> Self {
        Self {
            variant: f.variant().name().to_owned(),
            n: f.num_vars(),
            clauses: f.signed_clauses(),
        }
    }
}

pub fn read_formula(path: &Path) -> LabResult<Formula> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str::<FormulaFile>(&text)?.parse()
}

/// Gadget output: the instance plus one label per node.
#[derive(Debug, Clone, Serialize)]
pub struct GadgetFile {
    #[serde(flatten)]
    pub instance: InstanceFile,
    pub labels: Vec<String>,
}

impl From<&GadgetInstance> for GadgetFile {
    fn from(g: &GadgetInstance) -> Self {
        Self {
            instance: instance_file(&g.instance.graph, &g.instance.thresholds, None),
            labels: g.labels.iter().map(ToString::to_string).collect(),
        }
    }
}

pub fn rational(r: Rational) -> [i64; 2] {
    [*r.numer(), *r.denom()]
}

pub fn profile(a: &ActionProfile) -> String {
    a.to_string()
}

pub fn parse_profile(s: &str, n: usize) -> LabResult<ActionProfile> {
    let a: ActionProfile = s.parse()?;
    if a.len() != n {
        return Err(threshold_core::Error::LengthMismatch {
            expected: n,
            found: a.len(),
        }
        .into());
    }
    Ok(a)
}
