//! Exact graded character rings of finite groups.
//!
//! The crate builds character tables of small groups with values in cyclotomic
//! integers, computes the gamma filtration and the saturated filtration of the
//! character ring as integer lattices, and implements restriction, induction
//! and multiplicative norms, including norms of virtual characters along
//! normal subgroups of prime index.

pub mod chartab;
pub mod cyclotomic;
pub mod error;
pub mod filtration;
pub mod group;
pub mod gset;
pub mod saturation;
pub mod transfer;
pub mod vchar;
pub mod zlattice;

pub use chartab::{character_table, CharacterTable};
pub use cyclotomic::{cyclotomic_polynomial, CycInt, CycPoly};
pub use error::{Error, Result};
pub use filtration::{gamma_filtration, GammaFiltration};
pub use group::{build_catalog_group, parse_group_spec, ConjClassData, FiniteGroup, GroupSpec, Subgroup};
pub use gset::{tambara_axiom_suite, BundleContext, EquivBundle, FiniteGSet, GSetMap, TambaraReport};
pub use saturation::{
    is_saturated, saturated_filtration, stable_element_subring, SaturatedFiltration, StableElementReport,
};
pub use transfer::{mackey_check, subgroup_table, Inclusion, MackeyOutcome, PrimeIndexNorm, VeeElement};
pub use vchar::VirtualCharacter;
pub use zlattice::{AbelianInvariants, IntLattice, QuotientPresentation};
