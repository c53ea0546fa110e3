//! Tori and root data over local fields, depth-zero characters and
//! parameters, and the archimedean norm identity.

pub mod archimedean;
pub mod catalog;
mod root;
mod tame;
mod torus;

pub use tame::{depth_zero_classes, inertial_classes_at, stabilization_levels, InertialLevel};
pub use torus::{
    depth_zero_inertial_params, kottwitz_quotient, prime_to_p_part, special_fiber_points, verify_depth_zero_match,
    weakly_unramified_chars, weakly_unramified_ways, DepthZeroReport, GradedPiece, TorusDatum, Verdict,
};
pub use root::{
    center_dual, center_to_torus_map, depth_zero_center_classes, depth_zero_center_pieces, weil_model,
    wild_coinvariant_center, CenterClasses, CenterToTorus, RootDatumGamma, WeilModel,
};
pub use archimedean::{archimedean_norm_check, ArchimedeanCharDatum, ArchimedeanReport, ARCH_TOL};
