//! Fourier-Mukai images of theta indices under the three kinds of toric
//! birational maps: change of weights on a fixed fan, and the two
//! directions of a divisorial contraction.

pub mod case1;
pub mod check;
pub mod case2;
pub mod case3;
pub mod raster;

pub use case1::{
    fm_case1, fm_line_bundle_case1, poset_embedding_report, pullback_case1, pushforward_case1, FFReport, Violation,
    ViolationKind,
};
pub use check::{contractibility_check_2d, ContractibilityReport, Direction, RasterDisagreement};
pub use case2::{
    ext_case2, extra_threshold, fm_case2, fm_line_bundle_case2, Case2Certificate, Case2Ext, Case2Image, CechTerm,
};
pub use case3::{
    canonical_i0, ext_case3, fm3_region, fm3_region_with, fm_line_bundle_case3, gamma_char, s1_threshold, Case3Certificate,
    Case3Ext, Case3Failure, Case3Reason, Case3Region,
};
pub use raster::{
    raster_contractible_2d, raster_region_2d, rasterize_all, Nowhere, Bitmap, Difference, PixelGrid, PlanarRegion, RasterReport, Topology,
};

pub(crate) use case3::for_each_multi_index;
