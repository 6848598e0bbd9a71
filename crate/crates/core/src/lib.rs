pub mod algebra;
pub mod banach;
pub mod drazin;
pub mod error;
pub mod exact;
pub mod fredholm;
pub mod geometry;
pub mod json;
pub mod linalg;
pub mod linmap;
pub mod module;
pub mod probes;
pub mod random;
pub mod tol;
pub mod verify;

pub use algebra::{AlgebraElement, AlgebraShape};
pub use error::{Error, Result};
pub use linalg::{CMat, Margin, Subspace, C64};
pub use linmap::AdjointableMap;
pub use module::{K0Class, ModuleAmbient, ModuleVector, Submodule};
pub use tol::{set_tolerances, tolerances, Tolerances};
