pub mod chem;
pub mod criteria;
pub mod graph;
pub mod ingest;
pub mod linkography;
pub mod session;
pub mod text;
