//! Root-system combinatorics and compact real-form geometry for index
//! estimates of geodesics on flag manifolds `G/P`.

pub mod error;
pub mod geometry;
pub mod index_comb;
pub mod parabolic;
pub mod chevalley;
pub mod rootsys;
pub mod surd;

pub use error::{GeometryError, IndexError, RootSystemError};
pub use rootsys::{Family, Rational, RootId, RootSystem, RootVector};
pub use chevalley::{ChevalleyData, ComplexElement, Scalar};
pub use surd::Surd;
pub use parabolic::{PaintedDiagram, ParabolicSplit};
