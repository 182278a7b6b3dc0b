//! Distance k-domination on simple undirected graphs.
//!
//! A set `S` k-dominates `G` when every vertex is within `k` hops of `S`;
//! `γ_k(G)` is the size of a smallest such set. This crate computes `γ_k`
//! exactly at desk scale ([`solver`]), evaluates the lower bounds in terms
//! of diameter, radius and girth alongside the classical upper bounds
//! ([`bounds`]), builds the graphs and constructions those bounds rest on
//! ([`constructions`]), and checks all of it on random graphs ([`fuzz`]).

pub mod bitset;
pub mod bounds;
pub mod constructions;
pub mod edgelist;
pub mod fuzz;
pub mod graph;
pub mod solver;

pub use bitset::VertexSet;
pub use bounds::{BoundsReport, ProductBoundReport, Verdict};
pub use constructions::{DirectProduct, OutsiderWitness, ProductVertex, SpanningTreeResult};
pub use fuzz::{FuzzConfig, FuzzReport};
pub use graph::{Distance, Graph, GraphError, Metrics, Vertex, INFINITY};
pub use solver::{Budget, Certificate, Method, Status};

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "kdom/1";
