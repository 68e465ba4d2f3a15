//! Decision procedures for uniform S-properties of finite commutative rings
//! and finite modules.
//!
//! Rings and modules are explicit operation tables. Every decision procedure
//! returns a [`CheckReport`] (or a certificate type) whose witnesses can be
//! replayed against the same tables.

mod budget;
mod error;
pub mod finring;
pub mod ideal;
pub mod modcat;
pub mod regflat;
mod report;
pub mod uniformity;

pub use budget::Budget;
pub use error::{AlgError, Result};
pub use finring::{
    find_ring_isomorphism, idempotents, is_regular_set, mulclose, polyquot, ring_product, zmod,
    Elem, MulSet, Poly, PolyQuotient, RingTable,
};
pub use ideal::{
    all_ideals, ideal_combine, principal_ideal, quotient_ring, spectrum, Combine, Ideal,
    QuotientRing, SpectrumReport,
};
pub use modcat::{
    all_submodules, free_module, module_ideal, quotient_module, submodule, syzygy, tor1, QuotientModule,
    direct_sum, find_module_isomorphism, hom_enumerate, hom_parts, minimal_generators,
    module_cyclic, module_from_ring, presentation, tensor, tor, tor1_cyclic_oracle, DirectSum,
    HomParts, ModuleHom, ModuleTable, Presentation, Submodule, TensorProduct,
};
pub use report::{CheckReport, Named, Value};
pub use regflat::{
    check_local_flat, check_local_vnr, check_localized_vnr, cyclic_tors, idempotent_s_generation,
    is_flat, is_u_s_flat, is_u_s_vnr, is_vnr, localize_module, localize_ring,
    tensor_sequence_check, IdempotentGenerationReport, LocalizationResult, LocalizedModule,
    VnrCertificate,
};
pub use uniformity::{
    check_short_u_s_exact, check_u_s_exact, classify_hom, compose_s_finite, is_s_torsion,
    is_s_torsionfree, is_u_s_torsion, kills_module, max_u_s_torsion_submodule, replay_s_finite,
    s_finite_witness, SequenceCandidate,
};
