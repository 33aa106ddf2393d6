//! Forms, vector configurations and the basic lattice operations on them.

pub mod config;
pub mod form;
pub mod lll;
pub mod minvec;
pub mod perfection;
pub mod watson;

pub use config::{apply, normalize_vector, VectorConfiguration};
pub use form::{Definiteness, QuadraticForm};
pub use lll::{lll_form, lll_reduce};
pub use minvec::{minimal_vectors, short_vectors};
pub use perfection::{
    barycenter_matrix, characteristic_determinants, is_perfect, perfection_data, perfection_rank, sym_dim, sym_vec,
    BarycenterMatrix, CharacteristicDeterminants, PerfectionData,
};
pub use watson::{watson_identity_check, SublatticeCode, WatsonReport};
