//! Basic hypergeometric series and the summation templates built on them.

mod phi;
mod series;
mod templates;

pub use phi::{gauss_check, gauss_sides, phi65_check, phi65_sides, phi_series, phi_terms, PhiSeriesSpec};
pub use series::QRatioSeries;
pub use templates::{
    t1_lhs, t1_rhs, t1_series, t2_lhs, t2_rhs, t2_series, t2s_lhs, t2s_rhs, t2s_series, T1Params, T2Params,
};
