//! Exact computations with the Lambda algebra, the Dyer-Lashof-Lie algebra and
//! the `d2` differential of the renormalized Goodwillie spectral sequence of a
//! free simplicial restricted Lie algebra on one generator, over `F_p`.

pub mod combination;
pub mod dll;
pub mod e1;
pub mod error;
pub mod fp;
pub mod gss;
pub mod json;
pub mod lambda;
pub mod matrix;
pub mod parse;

pub use combination::Combination;
pub use dll::{
    cu_basis, dll_adem_expand_pair, dll_normalize, excess, is_cu, DllAlgebra, DllElement,
    DllGenerator, DllSequence,
};
pub use e1::{check_scope, e1_basis, e1_basis_upto, e1_dimension, E1Class, E1Element};
pub use error::{Error, Result};
pub use fp::{binom_mod_p, stable_binom, Fp, PrimeContext};
pub use gss::{
    choose_shift, d2_matrix, d2_quadratic, derive_dll_adem, e3_page, einf_row0_basis,
    shift_operator, Check, CheckReport, D2Matrix, DerivedRelation, GoodwillieSs, PageCell,
    PageReport, ShiftChoice, Survivors, Sweep, UniversalExpansion,
};
pub use lambda::{
    adem_expand_pair, admissible_basis, is_admissible, multiply, normalize, straighten_leftmost,
    straighten_with, LambdaAlgebra, LambdaElement, LambdaGenerator, LambdaMonomial,
};
pub use matrix::FpMatrix;
pub use parse::{parse_element, Parsed};
