pub mod corpus;
pub mod forest;
pub mod a1;
pub mod a2;
pub mod bench;
pub mod cli;
pub mod oracle;
pub mod search;
pub mod syntax;
pub mod units;
