#![allow(dead_code)]

pub mod census_oracle;
pub mod mom_oracle;
pub mod mpfr_oracle;
pub mod slope_oracle;
