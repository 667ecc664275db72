//! Exact real solving of bivariate polynomial systems.

pub mod poly;
pub mod ring;
pub mod subres;
pub mod uniroot;
pub mod interval;
pub mod algnum;
pub mod bivsolve;
pub mod apps;
pub mod cli;
