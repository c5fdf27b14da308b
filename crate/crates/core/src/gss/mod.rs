//! The d2 differential of the renormalized spectral sequence and the checks built on it.

mod lin;
mod page;
mod quadratic;
mod shift;
mod verify;

pub use lin::{GoodwillieSs, UniversalExpansion};
pub use page::{d2_matrix, e3_page, einf_row0_basis, D2Matrix, PageCell, PageReport, Survivors};
pub use quadratic::d2_quadratic;
pub use shift::{choose_shift, shift_operator, ShiftChoice};
pub use verify::{derive_dll_adem, DerivedRelation};
pub use verify::{Check, CheckReport, Sweep};
