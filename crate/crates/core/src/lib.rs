pub mod error;
pub mod experiments;
pub mod jets;
pub mod maps;
pub mod sincdiff;
pub mod summation;

pub use error::{Error, Result};
pub use experiments::{ErrorReport, Formula, FunctionId, TestFunction};
pub use jets::{ArithOp, ElemFn, Jet, MAX_ORDER};
pub use maps::{p_jet, MapId, MapSpec};
pub use sincdiff::{basis_term_derivs, select_params, Approximant, DecayProfile, Node, SincParams};
pub use summation::CompensatedSum;
