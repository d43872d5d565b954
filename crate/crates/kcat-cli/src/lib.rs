pub mod corpus;
pub mod formats;
pub mod report;
pub mod runner;
