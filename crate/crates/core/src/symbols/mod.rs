//! Symbol evaluators: tame, Contou-Carrère, higher symbols via Steinberg
//! expansion, commutator pairings of finite central extensions, and the
//! Toeplitz determinant model.

mod cc;
mod cocycle;
pub mod groups;
mod higher;
mod steinberg;
mod tame;
mod toeplitz;

pub use cc::{cc_from_decompositions, cc_symbol};
pub use cocycle::{cocycle_commutator, Cocycle2};
pub use groups::FiniteGroup;
pub use higher::{higher_cc_symbol, higher_tame_symbol};
pub use steinberg::{steinberg_expand, ElementaryKind, SymbolArg, SymbolTerm};
pub use tame::tame_symbol;
pub use toeplitz::{toeplitz_joint_torsion, toeplitz_static_window, TOEPLITZ_ORIENTATION};
