//! The parameterized static evaluation. A score is the dot product of a
//! position's [`FeatureVector`] with the signed [`EvalParams`] weights.

mod features;
mod params;

pub use features::{evaluate, evaluate_relative, extract_features, FeatureVector};
pub use params::{
    param_max, EvalParams, Param, ParamsError, MATERIAL_COUNT, MATERIAL_MAX, PARAM_COUNT, PARAM_NAMES,
    PARAM_SIGNS, POSITIONAL_MAX,
};
