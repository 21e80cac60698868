//! Closed-support homology of configuration spaces of 2-complexes with a
//! single 0-cell, in particular of punctured surfaces.
//!
//! Elements of ℋₙ(U₁) = H^cl_n(conf_n(U₁)) for a wedge of circles U₁ live in
//! [`shuffle`]; [`complex`] builds the cellular chain complexes and the
//! quotient ℋₙ(U) = ℋₙ(U₁)/𝒦ₙ.

pub mod certificates;
pub mod complex;
pub mod degeneracy;
pub mod error;
pub mod graded;
pub mod magnus;
pub mod shuffle;
pub mod surfaces;

pub use complex::{
    build_bar_complex, build_bar_complex_with, closed_surface_complex, closed_surface_homology, filtration_ranks, fn_map,
    hn_presentation, homology_cl, kernel_k, BarBasisElt, BarOptions, CellComplex, ChainComplexZ, HnPresentation,
    TwoComplexPresentation,
};
pub use degeneracy::{degeneracy, degeneracy_on_quotient, iterated_degeneracy};
pub use error::{ConfError, Result};
pub use graded::{ad_check, bracket, johnson_a, mu, mu_insert, scfg_image, sn_quotient_membership, TensorElt};
pub use magnus::{icfg_kernel, magnus_expand, FreeGroupWord, TruncAlgElt};
pub use shuffle::{delta_of_word, BasisIndex, EdgeAlphabet, HBasisElt, HElement, HSeries};
pub use surfaces::{act_endomorphism, delta_zeta, many_punctures_check, zeta_word, EndoSpec, SurfaceSpec};
