//! Edge-weighting schemes that turn an unweighted graph into a weighted
//! tour-search instance: unit weights, seeded random integers, scaled
//! resistance distance, and scaled inverse resistance distance
//! ("conductivity distance"). Scaled values round up unless already
//! integral.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{is_connected, EdgeId, Graph};
use crate::resistance::{resistance_matrix, ResistanceMatrix};

/// Scheme selector, as written on the command line or in a bench config.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeTag {
    Unit,
    Random,
    Resistance,
    Conductivity,
}

impl SchemeTag {
    pub const ALL: [SchemeTag; 4] = [
        SchemeTag::Unit,
        SchemeTag::Random,
        SchemeTag::Resistance,
        SchemeTag::Conductivity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SchemeTag::Unit => "unit",
            SchemeTag::Random => "random",
            SchemeTag::Resistance => "resistance",
            SchemeTag::Conductivity => "conductivity",
        }
    }

    /// Resolves the tag into a concrete scheme; `seed` is only consumed by
    /// the random scheme.
    pub fn to_scheme(self, seed: u64, scale: u64) -> Scheme {
        let kind = match self {
            SchemeTag::Unit => SchemeKind::Unit,
            SchemeTag::Random => SchemeKind::Random { seed },
            SchemeTag::Resistance => SchemeKind::Resistance,
            SchemeTag::Conductivity => SchemeKind::Conductivity,
        };
        Scheme { kind, scale }
    }
}

impl std::str::FromStr for SchemeTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "unit" => Ok(SchemeTag::Unit),
            "random" => Ok(SchemeTag::Random),
            "resistance" => Ok(SchemeTag::Resistance),
            "conductivity" => Ok(SchemeTag::Conductivity),
            other => Err(format!(
                "unknown scheme `{other}` (expected unit|random|resistance|conductivity)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeKind {
    /// Every edge weighs 1.
    Unit,
    /// Independent uniform integers in `[1, scale]`, drawn in normalized
    /// edge order from a seeded splitmix64 stream.
    Random { seed: u64 },
    /// `ceil(scale * omega)` per edge.
    Resistance,
    /// `ceil(scale / omega)` per edge.
    Conductivity,
}

/// A weighting scheme together with its scale factor (default 100).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scheme {
    pub kind: SchemeKind,
    pub scale: u64,
}

impl Scheme {
    pub const DEFAULT_SCALE: u64 = 100;

    pub fn unit() -> Self {
        SchemeTag::Unit.to_scheme(0, Self::DEFAULT_SCALE)
    }

    pub fn random(seed: u64) -> Self {
        SchemeTag::Random.to_scheme(seed, Self::DEFAULT_SCALE)
    }

    pub fn resistance() -> Self {
        SchemeTag::Resistance.to_scheme(0, Self::DEFAULT_SCALE)
    }

    pub fn conductivity() -> Self {
        SchemeTag::Conductivity.to_scheme(0, Self::DEFAULT_SCALE)
    }

    pub fn with_scale(mut self, scale: u64) -> Self {
        assert!(scale >= 1, "scale must be a positive integer");
        self.scale = scale;
        self
    }

    pub fn tag(&self) -> SchemeTag {
        match self.kind {
            SchemeKind::Unit => SchemeTag::Unit,
            SchemeKind::Random { .. } => SchemeTag::Random,
            SchemeKind::Resistance => SchemeTag::Resistance,
            SchemeKind::Conductivity => SchemeTag::Conductivity,
        }
    }

    fn needs_resistance(&self) -> bool {
        matches!(
            self.kind,
            SchemeKind::Resistance | SchemeKind::Conductivity
        )
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("scheme requires a connected graph (resistance is infinite across components)")]
    Disconnected,
    #[error("instance needs at least 3 vertices, got {n}")]
    InstanceTooSmall { n: usize },
    #[error("resistance matrix order {got} does not match graph order {want}")]
    OrderMismatch { got: usize, want: usize },
    #[error("edge {0:?} has no weight")]
    MissingWeight(EdgeId),
    #[error("weight given for non-edge {0:?}")]
    UnknownEdge(EdgeId),
    #[error("weight for edge {0:?} must be >= 1")]
    NonPositiveWeight(EdgeId),
}

/// A graph with strictly positive integer edge weights: the tour-search
/// instance produced by a scheme or imported from a file.
#[derive(Clone, Debug)]
pub struct WeightedInstance {
    graph: Graph,
    weights: BTreeMap<EdgeId, u64>,
    scheme: Option<Scheme>,
    omega_source: Option<Arc<ResistanceMatrix>>,
}

impl WeightedInstance {
    /// Wraps explicit weights, enforcing exactly one weight >= 1 per edge.
    pub fn from_weights(
        graph: Graph,
        weights: BTreeMap<EdgeId, u64>,
    ) -> Result<Self, WeightError> {
        for (e, &w) in &weights {
            if !graph.has_edge(e.u(), e.v()) {
                return Err(WeightError::UnknownEdge(*e));
            }
            if w == 0 {
                return Err(WeightError::NonPositiveWeight(*e));
            }
        }
        if let Some(missing) = graph.edges().iter().find(|e| !weights.contains_key(e)) {
            return Err(WeightError::MissingWeight(*missing));
        }
        Ok(WeightedInstance {
            graph,
            weights,
            scheme: None,
            omega_source: None,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Weight of a graph edge. Panics for non-edges; every edge has a weight
    /// by construction.
    pub fn weight(&self, e: EdgeId) -> u64 {
        self.weights[&e]
    }

    pub fn weight_between(&self, a: usize, b: usize) -> Option<u64> {
        if a == b || !self.graph.has_edge(a, b) {
            return None;
        }
        Some(self.weights[&EdgeId::new(a, b)])
    }

    /// `(edge, weight)` pairs in normalized edge order.
    pub fn weights(&self) -> impl Iterator<Item = (EdgeId, u64)> + '_ {
        self.weights.iter().map(|(e, w)| (*e, *w))
    }

    /// Largest edge weight; feeds the big-M completion.
    pub fn max_weight(&self) -> u64 {
        self.weights.values().copied().max().unwrap_or(0)
    }

    pub fn scheme(&self) -> Option<&Scheme> {
        self.scheme.as_ref()
    }

    /// The resistance matrix the weights were derived from, when a scheme
    /// needed one. Shared, so a benchmark can reuse one matrix across both
    /// resistance-based schemes.
    pub fn omega_source(&self) -> Option<&Arc<ResistanceMatrix>> {
        self.omega_source.as_ref()
    }

    /// Total weight of a cyclic vertex sequence, or `None` if any
    /// consecutive pair is not an edge.
    pub fn tour_weight(&self, cycle: &[usize]) -> Option<u64> {
        if cycle.len() < 3 {
            return None;
        }
        let mut total = 0u64;
        for i in 0..cycle.len() {
            let a = cycle[i];
            let b = cycle[(i + 1) % cycle.len()];
            total += self.weight_between(a, b)?;
        }
        Some(total)
    }
}

/// One splitmix64 step: returns `(output, next_state)`.
pub fn prng_next(state: u64) -> (u64, u64) {
    let next = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = next;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    (z ^ (z >> 31), next)
}

/// Seeded splitmix64 stream.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        let (value, state) = prng_next(self.state);
        self.state = state;
        value
    }
}

/// Maps a raw draw to a weight in `[1, scale]`.
pub fn weight_from_draw(value: u64, scale: u64) -> u64 {
    1 + value % scale
}

// Scaled resistance values are real numbers that may land on an integer up
// to rounding noise from the O(n^3) factorization; values within this
// distance of an integer count as "already integral" and are not rounded up.
const INTEGRALITY_EPS: f64 = 1e-6;

fn ceil_unless_integral(value: f64) -> u64 {
    debug_assert!(value > 0.0 && value.is_finite());
    let nearest = value.round();
    let snapped = if (value - nearest).abs() <= INTEGRALITY_EPS {
        nearest
    } else {
        value.ceil()
    };
    snapped as u64
}

/// Applies a weighting scheme, computing the resistance matrix internally
/// when the scheme needs one.
pub fn apply_scheme(g: &Graph, scheme: &Scheme) -> Result<WeightedInstance, WeightError> {
    if scheme.needs_resistance() {
        if !is_connected(g) {
            return Err(WeightError::Disconnected);
        }
        let r = resistance_matrix(g).expect("connected graph has finite resistances");
        return apply_scheme_with_resistance(g, scheme, Arc::new(r));
    }
    build_instance(g, scheme, None)
}

/// Applies a scheme against a precomputed resistance matrix so callers can
/// share one matrix across the resistance and conductivity schemes.
pub fn apply_scheme_with_resistance(
    g: &Graph,
    scheme: &Scheme,
    r: Arc<ResistanceMatrix>,
) -> Result<WeightedInstance, WeightError> {
    if r.order() != g.order() {
        return Err(WeightError::OrderMismatch {
            got: r.order(),
            want: g.order(),
        });
    }
    if scheme.needs_resistance() && r.num_components() != 1 {
        return Err(WeightError::Disconnected);
    }
    build_instance(g, scheme, Some(r))
}

fn build_instance(
    g: &Graph,
    scheme: &Scheme,
    r: Option<Arc<ResistanceMatrix>>,
) -> Result<WeightedInstance, WeightError> {
    let n = g.order();
    if n < 3 {
        return Err(WeightError::InstanceTooSmall { n });
    }

    let mut weights = BTreeMap::new();
    match scheme.kind {
        SchemeKind::Unit => {
            for e in g.edges() {
                weights.insert(*e, 1);
            }
        }
        SchemeKind::Random { seed } => {
            // Edges iterate in normalized sorted order, so the draw sequence
            // is independent of insertion order.
            let mut rng = SplitMix64::new(seed);
            for e in g.edges() {
                weights.insert(*e, weight_from_draw(rng.next_u64(), scheme.scale));
            }
        }
        SchemeKind::Resistance | SchemeKind::Conductivity => {
            let r = r.as_ref().expect("resistance matrix prepared by caller");
            let scale = scheme.scale as f64;
            for e in g.edges() {
                let omega = r
                    .get(e.u(), e.v())
                    .expect("edge endpoints share a component");
                // Omega > 0 for distinct vertices of a simple graph.
                assert!(omega > 0.0, "zero resistance on edge {e:?}");
                let scaled = match scheme.kind {
                    SchemeKind::Resistance => scale * omega,
                    SchemeKind::Conductivity => scale / omega,
                    _ => unreachable!(),
                };
                let w = ceil_unless_integral(scaled);
                assert!(w >= 1, "scheme produced zero weight on edge {e:?}");
                weights.insert(*e, w);
            }
        }
    }

    Ok(WeightedInstance {
        graph: g.clone(),
        weights,
        scheme: Some(*scheme),
        omega_source: r,
    })
}
