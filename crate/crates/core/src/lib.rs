//! Crystals for finite-type root data, the crystal commutor, and a
//! combinatorial Satake category, with executable verifiers for the
//! categorical axioms (pentagon, commutor symmetry, cactus, functor
//! compatibility).

pub mod binfty;
pub mod cartan;
pub mod crystal;
pub mod error;
pub mod verify;
pub mod extint;
pub mod involutions;
pub mod satake;
pub mod tableaux;
pub mod tensor;

pub use binfty::BInftyGraph;
pub use cartan::{DominantWeight, Family, RootDatum, Weight};
pub use crystal::{component_isomorphism, disjoint_union, Crystal, CrystalBuilder, TensorShape};
pub use error::{Error, Result};
pub use involutions::{crystal_commutor, decompose_canonical, sigma_star, sigma_xi, verify_cactus, verify_symmetry, xi, xi_componentwise, CanonicalDecomposition, CommutorTable};
pub use verify::{check_crystal_iso, Counterexample, Verdict};
pub use extint::ExtInt;
pub use satake::{alpha1, alpha2, commutor_objects, multiplicity_set, phi, phi_morphism, tensor3_objects, tensor_objects, verify_assoc_compat, verify_commutor_compat, verify_pentagon, AlphaTable, Label, MultiplicityElement, MultiplicityId, SatakeMorphism, SatakeObject};
pub use tableaux::{enumerate_ssyt, lr_oracle, partition_from_weight, ssyt_crystal, Tableau};
pub use tensor::{tensor2, tensor_n, tensor_n_right_nested};
