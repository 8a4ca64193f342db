//! Circuit partitioning and network-operation scheduling for distributed
//! quantum computing over a star topology.

pub mod circuit;
pub mod netmap;
pub mod partition;
pub mod render;
pub mod scheduler;
