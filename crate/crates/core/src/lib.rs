pub mod corpus;
pub mod error;
pub mod language;
pub mod scoring;
pub mod stats;
pub mod vectors;
pub mod bow;
pub mod coverage;
pub mod agreement;
pub mod combine;
pub mod synthetic;
pub mod cli;
