//! Classical Alexander–Conway machinery: the non-quantum reference pipeline.
//!
//! Wirtinger presentation → Fox calculus → multivariable Alexander
//! polynomial, normalized to the Conway function ∇_L with the recursive
//! skein oracle as the sign anchor.

pub mod fox;
pub mod laurent;
pub mod nabla;
pub mod skein;

pub use fox::{fox_alexander, wirtinger, FoxError, WirtingerPresentation};
pub use laurent::{i_power, z_at, LaurentPoly};
pub use nabla::{evaluate_nabla, normalize_conway, Nabla, NablaError};
pub use skein::{conway, SkeinError};

use crate::diagram::{DiagramError, SlicedDiagram};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlexError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Fox(#[from] FoxError),
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Nabla(#[from] NablaError),
}

/// Full pipeline: closed diagram → normalized Conway function.
pub fn nabla_of_diagram(d: &SlicedDiagram) -> Result<Nabla, AlexError> {
    let info = d.trace_closed()?;
    let delta = fox_alexander(&wirtinger(&info)?)?;
    let cw = conway(&info)?;
    Ok(normalize_conway(&delta, &cw)?)
}
