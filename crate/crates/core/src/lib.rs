//! Exact enumeration of well-rounded vector configurations, realizability
//! by linear programming, and the Voronoi complex of `GL_N(Z)`.

pub mod complex;
pub mod cone;
pub mod enumerate;
pub mod equiv;
pub mod error;
pub mod forms;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod realize;
pub mod reproduce;

pub use error::{Error, Result};
pub use forms::*;
pub use linalg::{QMat, Rat};
