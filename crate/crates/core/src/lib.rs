//! Exact and capped-precision arithmetic for heights, formal groups and
//! explicit height-gap constants.

pub mod exact;
pub mod padic;
pub mod series;
pub mod curve;
pub mod formal;
pub mod height;
pub mod canonical;
pub mod gap;
