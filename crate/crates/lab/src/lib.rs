pub mod canon;
pub mod experiment;
pub mod fixtures;
pub mod generate;
pub mod plant;
