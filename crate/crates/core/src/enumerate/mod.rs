//! Enumeration of perfect forms and of well-rounded configurations by
//! perfection rank.

pub mod classes;
pub mod codes;
pub mod hermite;
pub mod perfect;
pub mod primitive;
pub mod rank_n;
pub mod rank_plus;

pub use classes::{sort_canonical, ClassStore};
pub use codes::{codes_prime, count_codes_prime, enumerate_codes_prime};
pub use hermite::index_bound;
pub use perfect::{enumerate_perfect_forms, PerfectForm};
pub use primitive::is_primitive_class;
pub use rank_n::{enumerate_rank_n, RankNClass, RankNOptions};
pub use rank_plus::{enumerate_rank_plus, extend_layer, RankPlusOptions};
