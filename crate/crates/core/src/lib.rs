//! Exact symbolic engine for stationary KdV Schrödinger operators: hierarchy
//! construction, spectral curves via differential resultants, factorization
//! over the curve, global parametrization, and verified hyperexponential
//! solutions.

pub mod error;
pub mod symbol;
pub mod rat;
pub mod mpoly;
pub mod gcd;
pub mod ratfun;
pub mod upoly;
pub mod matrix;
pub mod ctx;
pub mod fields;
pub mod diffpoly;
pub mod diffop;
pub mod hierarchy;
pub mod spectral;
pub mod paramsolve;
pub mod parse;
pub mod families;

pub use error::{Error, Result};
pub use rat::Rat;
pub use symbol::{Symbol, VarSet};
pub use mpoly::MPoly;
pub use ratfun::RatFun;
pub use matrix::SymMatrix;
pub use ctx::{DiffCtx, Scalar};
pub use fields::{FieldElem, FieldTower, Generator};
pub use diffpoly::DiffPoly;
pub use diffop::DiffOp;
pub use hierarchy::HierarchyCache;
pub use spectral::{CurveFactors, CurvePoly, LevelResult, Potential, SpecializedFactor};
pub use paramsolve::{HyperexpSolution, Parametrization};
