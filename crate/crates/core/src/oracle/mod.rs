//! Independent checks of the main pipeline on small instances.

mod abelian;
mod brute;
mod crosscheck;

pub use abelian::{abelian_count_mod, abelian_reidemeister_count, ReidemeisterCount};
pub use brute::{
    brute_force_twisted_classes, class_equation_holds, conjugacy_classes, FiniteTwistedSetup, DEFAULT_MAX_ORDER,
};
pub use crosscheck::spectrum_crosscheck;
