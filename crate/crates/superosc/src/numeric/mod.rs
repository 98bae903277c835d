//! Numerical building blocks shared by every module.

pub mod mp;
pub mod quad;
pub mod search;
pub mod sum;
