//! Special functions and Gaussian quadrature.

mod faddeeva;
mod quadrature;

pub use faddeeva::{erfcx, faddeeva};
pub(crate) use faddeeva::gaussian_pole_average;
pub use quadrature::{
    cached_rule, doppler_average, doppler_average_adaptive, Averaged, AveragingSettings,
    QuadratureRule,
};

pub use num_complex::Complex64;
