pub mod copula;
pub mod dependence;
pub mod empirical;
pub mod measures;
pub mod quad;
pub mod tables;
