//! Lax operators, the M-operator, integrals of motion and the maps between
//! the three models.

mod element;
mod integrals;
mod models;
mod operators;
mod trig;

pub use element::{compact_defect, compact_part, LaxElement, LaxMatrix};
pub use integrals::{
    integral_counts, integrals, torus_sign_action, IntegralCounts, IntegralEntry, IntegralFunction,
};
pub use models::{
    cs_moment_residual, model3_inverse, model3_map, spectral_lax_cs, spectral_lax_model3, ModelII,
    ModelIIIData,
};
pub use operators::{
    ad_exp_u, eta, eta_lax, lax_residual, lax_tilde, m_lax, m_operator, model1_lax, s_lax,
    spectral_lax_intro, spectral_lax_model1, t_lax,
};
pub use trig::trig_identity_residuals;
