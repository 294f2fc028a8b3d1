//! The set `O(ρ)`, the image-radius lemma and the constructive
//! Bloch-Landau search.

pub mod attain;
pub mod lemma;
pub mod oset;
pub mod search;

pub use attain::{attain, coverage_report, sample_oset, Attained, CoverageReport, NewtonConfig};
pub use lemma::{
    fourth_root_residual, fourth_root_series, fourth_root_series_to, g_series, lemma_chain, parseval_mean, rho_lemma,
    LemmaChain, ParsevalCheck, RhoReport,
};
pub use oset::{in_oset, inscribed_disc_check, oset_slice_curve, DiscCheck, OSet};
pub use search::{bl_search, SearchChecks, SearchConfig, SearchReport};
