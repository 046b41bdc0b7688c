//! Graph-series calculus: splitting, substitution, composition and the
//! operator series built from them.

pub mod checks;
pub mod series;
pub mod split;
pub mod substitute;

pub use checks::{
    assoc_check, compose_bilinear, d_gamma, loi_recursion_check, orbit_check, single_slot_orbit_example, AssocReport,
    LoiOrientation, LoiReport, LoiVerdict, OrbitReport, OrbitViolation, Side, ASSOC_CAP, LOI_CAP,
};
pub use series::{
    berezin_near, berezin_series, bt_coefficients, bt_two_pointed, compose, invert_series, is_left_inverse,
    star_coefficient, BtCoefficient, OperatorSeries, BT_CAP, STAR_CAP,
};
pub use split::{fuse, fuse_sum, partition_split, split_sum, split_with, SplitOrder};
pub use substitute::{substitute_graph, substitute_slot, Attach};
