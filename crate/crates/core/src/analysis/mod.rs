//! Width extraction, fitting, and numeric-versus-analytic comparisons.

mod decay;
mod estimate;
mod fit;
pub mod lm;
mod maps;

pub use decay::{compare_decay, DecayComparison, DEFAULT_BASELINE_WINDOW};
pub use estimate::{estimate_params_from_eit, EstimateOptions, ParamEstimate};
pub use fit::{
    edge_baseline, fit_exp_decay, fit_exp_decay_data, fit_lorentzian, fit_lorentzian_with,
    fwhm_halfmax, numeric_fwhm, profile_distance, ExpDecayFit, LorentzianFit, Sense,
};
pub use maps::{
    analytic_width, compare_widths, exact_profile, fwhm_diff_map, linewidth_ratio_curves,
    numeric_width, DiffMap, ProfileKind, RatioCurve, WidthComparison,
};
