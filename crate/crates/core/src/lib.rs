//! Exact-arithmetic toolkit for set partitions without singleton blocks:
//! counting triangles, horizontal generating polynomials, certified real
//! roots and interlacing, peak statistics, Samuelson root bounds, ordinary
//! generating functions with fixed-k asymptotics, and prime congruences —
//! all cross-validated against an exhaustive enumeration oracle.

pub mod bounds;
pub mod cache;
pub mod error;
pub mod lambert;
pub mod modular;
pub mod numeric;
pub mod ogf;
pub mod oracle;
pub mod peaks;
pub mod poly;
pub mod real_roots;
pub mod triangles;

pub use error::{Error, Result};
pub use numeric::Ratio;
pub use poly::IntPoly;
pub use triangles::{Count, Tables, TriangleKind, TriangleTable};
