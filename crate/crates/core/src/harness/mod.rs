//! Experiment runner: contract verification, scaling studies and the
//! distinguishing experiment.

mod distinguish;
mod oracles;
mod scaling;
mod verify;

pub use distinguish::{distinguishing_experiment, BfsStrategy, DistinguishReport, Strategy};
pub use oracles::{build_oracle, Algorithm, AnyOracle, Params};
pub use scaling::{least_squares, scaling_study, ScalingReport, ScalingRow};
pub use verify::{run_verification, write_reports_csv, VerificationReport};

use std::io::Write;

use serde::Serialize;

use crate::error::Result;

/// Writes any serializable rows as CSV with a header row.
pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
