//! Numeric geometry of the compact real form, evaluated in a frame at the
//! base point where every invariant tensor has constant coefficients.

pub mod frame;
pub mod hessian;
pub mod map_i;
pub mod perturb;
pub mod qform;
pub mod sampling;
pub mod suites;
pub mod quadrature;
pub mod transport;

pub use frame::{BasisLabel, CVector, MVector, RealFormFrame};
pub use quadrature::GaussLegendre;
pub use transport::{r_operator, HatTransport};
pub use hessian::{classify, complex_hessian, BracketReason, BracketWitness, HessianClass, HessianEvaluator};
pub use map_i::{p_bound, p_matrix, p_pairing, s_pairs, x_tilde, MapI};
pub use perturb::{adjoint_perturb, Perturbed};
pub use qform::{k_search, q_form, q_terms, KSearch, QConfig, QTerms};
pub use suites::{identity_suite, CheckResult, Report, Suite};
pub use sampling::{dichotomy, q_sample, DichotomyReport, QSampleReport};
