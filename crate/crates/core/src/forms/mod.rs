//! Symmetric and hermitian forms, Witt-class decisions with certificates.

pub mod decide;
pub mod hyperbolic;
pub mod hermitian;
pub mod symmetric;
pub mod verdict;

pub use decide::{
    norm_form_diag, s_d_trace_form, s_k_trace_form, scalar_extension, witt_equal_q,
    witt_equal_quadfield, witt_equal_skewhermitian_d, witt_zero_alternating_k,
    witt_zero_hermitian_d, witt_zero_hermitian_k, witt_zero_q, witt_zero_quadfield,
    witt_zero_skewhermitian_d, witt_zero_skewhermitian_k,
};
pub use hermitian::{d_column_rank, d_right_kernel, DMat, HermDForm, HermKForm, KMat};
pub use symmetric::SymmetricForm;
pub use verdict::{InvariantRecord, NonZeroWitness, WittVerdict, ZeroCertificate};
