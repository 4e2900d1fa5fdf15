pub mod agent;
pub mod argumentation;
pub mod config;
pub mod dataset;
pub mod dispute;
pub mod error;
pub mod experiment;
pub mod explain;
pub mod seed;
