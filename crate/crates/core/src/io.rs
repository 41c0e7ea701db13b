//! JSON instance and target files.
//!
//! ```json
//! {"type":"kcycle","lengths":[7,7,9,13]}
//! {"type":"kpath","lengths":[7,5,4,4],"st_edge":true}
//! {"type":"general","n":5,"edges":[[0,1],[1,2]],"ordering":[0,1,2,3,4]}
//! {"type":"rn3dm","w":[1,3,4,4]}
//! {"type":"evenodd","c":[13,9,7,7]}
//! ```
//!
//! Schedules serialise as
//! `{"sources":[{"v":0,"release":0}],"calls":[{"round":1,"caller":0,"callee":1}]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    build_k_cycle, build_k_path, Graph, GraphError, KCycleSpec, KPathSpec, Round, Vertex,
};
use crate::reductions::{EvenOddInstance, ReductionError, Rn3dmInstance};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Instance {
    Kcycle {
        lengths: Vec<u32>,
    },
    Kpath {
        lengths: Vec<u32>,
        #[serde(default)]
        st_edge: bool,
    },
    General {
        n: usize,
        edges: Vec<(Vertex, Vertex)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ordering: Option<Vec<Vertex>>,
    },
    Rn3dm {
        w: Vec<u32>,
    },
    Evenodd {
        c: Vec<u32>,
    },
}

/// A loaded instance with its family structure checked.
#[derive(Debug, Clone)]
pub enum Loaded {
    KCycle(KCycleSpec),
    KPath(KPathSpec),
    General {
        graph: Graph,
        ordering: Option<Vec<Vertex>>,
    },
    Rn3dm(Rn3dmInstance),
    EvenOdd(EvenOddInstance),
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instances always serialise")
    }

    pub fn family(&self) -> &'static str {
        match self {
            Instance::Kcycle { .. } => "kcycle",
            Instance::Kpath { .. } => "kpath",
            Instance::General { .. } => "general",
            Instance::Rn3dm { .. } => "rn3dm",
            Instance::Evenodd { .. } => "evenodd",
        }
    }

    pub fn load(&self) -> Result<Loaded, IoError> {
        Ok(match self {
            Instance::Kcycle { lengths } => Loaded::KCycle(KCycleSpec::new(lengths.clone())?),
            Instance::Kpath { lengths, st_edge } => {
                Loaded::KPath(KPathSpec::new(lengths.clone(), *st_edge)?)
            }
            Instance::General { n, edges, ordering } => {
                let graph = Graph::new(*n, edges.iter().copied())?;
                graph.ensure_connected()?;
                if let Some(ord) = ordering {
                    crate::graph::ordering_positions(&graph, ord)?;
                }
                Loaded::General {
                    graph,
                    ordering: ordering.clone(),
                }
            }
            Instance::Rn3dm { w } => Loaded::Rn3dm(Rn3dmInstance::new(w.clone())?),
            Instance::Evenodd { c } => Loaded::EvenOdd(EvenOddInstance::new(c.clone())?),
        })
    }

    pub fn from_kcycle(spec: &KCycleSpec) -> Self {
        Instance::Kcycle {
            lengths: spec.lengths().to_vec(),
        }
    }

    pub fn from_kpath(spec: &KPathSpec) -> Self {
        Instance::Kpath {
            lengths: spec.lengths().to_vec(),
            st_edge: spec.st_edge(),
        }
    }

    pub fn from_graph(g: &Graph, ordering: Option<Vec<Vertex>>) -> Self {
        Instance::General {
            n: g.n(),
            edges: g.edges().to_vec(),
            ordering,
        }
    }
}

impl Loaded {
    /// The broadcast graph, for graph families.
    pub fn graph(&self) -> Option<Graph> {
        match self {
            Loaded::KCycle(spec) => Some(build_k_cycle(spec).graph),
            Loaded::KPath(spec) => Some(build_k_path(spec).graph),
            Loaded::General { graph, .. } => Some(graph.clone()),
            Loaded::Rn3dm(_) | Loaded::EvenOdd(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Target {
    pub target: Round,
}
