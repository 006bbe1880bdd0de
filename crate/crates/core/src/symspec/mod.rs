//! Dense symmetric linear algebra: spectra, orthonormal rank-2 frames, their
//! projections, and the trace functional `tr(AQ)`.

mod eigen;
mod frame;
mod matrix;

pub use eigen::{eigen_spectrum, eigenvalues, Eigen, Spectrum};
pub use frame::{kyfan_pair_min, trace_product, Projection, RankTwoFrame};
pub use matrix::{EntryClass, LoadedMatrix, SymMatrix, Violation};

use crate::error::Result;

pub fn frame_from_columns(raw: &[[f64; 2]]) -> Result<RankTwoFrame> {
    RankTwoFrame::from_columns(raw)
}

pub fn projection_of(frame: &RankTwoFrame) -> Projection {
    Projection::of(frame)
}
