//! Statistical toolkit for directed metaphor-mapping networks.
//!
//! The crate ingests an edge-list corpus of word transfers between thematic
//! categories and derives the full battery of analyses used to characterise
//! such networks: degree statistics against Erdős–Rényi and configuration
//! null models, motif significance, edge-multiplicity persistence,
//! structural-role clustering with ties-in-proximity enumeration, discrete
//! Ricci curvature, and comparison with external word embeddings.

pub mod clustering;
pub mod curvature;
pub mod degree_stats;
pub mod embedding;
pub mod graph;
pub mod hist;
pub mod ingest;
pub mod motifs;
pub mod null_models;
pub mod persistence;
pub mod report;
pub mod stats;
pub mod transport;

pub use graph::{CategoryId, DirectedGraph, DirectedMultigraph};
pub use ingest::{Corpus, MetaphorRecord};
