//! Flatness, localization and von Neumann regularity, plain and uniform.

mod flat;
mod localize;
mod vnr;

pub use flat::{check_local_flat, cyclic_tors, is_flat, is_u_s_flat, tensor_sequence_check};
pub use localize::{localize_module, localize_ring, LocalizationResult, LocalizedModule};
pub use vnr::{
    check_local_vnr, check_localized_vnr, idempotent_s_generation, is_u_s_vnr, is_vnr,
    IdempotentGenerationReport, VnrCertificate,
};
