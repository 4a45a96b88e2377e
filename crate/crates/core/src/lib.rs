pub mod andre;
pub mod cli;
pub mod cyclo;
pub mod field;
pub mod gf;
pub mod hahn;
pub mod polygon;
pub mod proof;
pub mod rational;
pub mod valuation;
