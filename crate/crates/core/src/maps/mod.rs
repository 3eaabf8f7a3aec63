//! Coefficient maps between function classes: Carathéodory data, the
//! Libera–Zlotkiewicz parametrization, coefficients of the normalized function
//! and of its inverse, the closed form of `H_{3,1}(f⁻¹)` and the majorant ϑ.

mod caratheodory;
mod ozaki;
mod sample;
mod theta;

pub use caratheodory::{lz_expand, lz_expand_generic, CaratheodorySeq, Conjugate, LZParams};
pub use ozaki::{
    caratheodory_to_ozaki, caratheodory_to_ozaki_exp, h31_inverse_closed_form, h31_via_pipeline,
    inverse_coefficients_closed_form,
};
pub use sample::{
    pythagorean_unit, sample_caratheodory, sample_lz_params, seq_from_atoms, SampleRecord,
};
pub use theta::{
    h31_parametrized, theta_at, theta_dominates_h31, theta_nested_text, theta_poly, Dominance,
    DominanceReport,
};
