//! Explicit objects built from the theory: the L¹ failure of M_α, the
//! blow-up family forcing p₋ > 1, and bump-sum exponents separating the
//! K₀-type conditions.

pub mod blowup;
pub mod catalog;
pub mod l1;

pub use blowup::{
    beta_identity, beta_k, blowup_modular_growth, build_blowup, default_blowup_exponent, BlowupFamily,
    BlowupLevel, GrowthReport, GrowthRow, InvariantCheck,
};
pub use catalog::{
    build_ex61, build_ex62, build_ex63, build_ex64, build_l1_spec, ex61_divergence_check, ex61_k0alpha_scan,
    ex61_scan_family, hm_counter, random_intervals, two_sided_ratio, witness_family, witness_growth,
    Ex61Divergence, Ex61Row, ExampleName, ExampleSpec, HmCounter, K0AlphaScan, TwoSided, WitnessNorm,
    WitnessReport, WitnessRow, WitnessSeq,
};
pub use l1::{build_l1_failure, regression_slope, L1Failure};
