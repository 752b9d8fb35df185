//! Exact power series for the Artin-Hasse exponential and its reduction
//! modulo a prime, Laguerre polynomials of degree `p - 1` with a series
//! parameter, and a harness that checks the identities relating them.

pub mod bivariate;
pub mod error;
pub mod identities;
pub mod laguerre;
pub mod rings;
pub mod series;
pub mod special;
pub mod stirling;

pub use bivariate::{
    bivar_from_sum, defect_series, support_multiple_of_p, BivarSeries, SupportCheck,
};
pub use error::{Error, Result};
pub use identities::{
    coefficient_grid, verify_all, verify_eq2, verify_eq3, verify_lemma_ss, verify_prop_coeffs,
    verify_prop_ep, verify_prop_xp, verify_remark_p2, verify_weak_fe, CoeffCell, Identity, Status,
    VerificationReport, VerifyInputs, WeakFeSeries, Witness,
};
pub use laguerre::{laguerre_pm1, poly_binomial, ParamPoly};
pub use rings::{
    p_adic_valuation, rational, reduce_rational_mod_p, residue_inverse, BigRational, CoeffRing,
    Prime, PrimeField, Rationals, Residue, Valuation,
};
pub use series::{ModPSeries, RationalSeries, TruncSeries};
pub use special::{
    artin_hasse_oracle, artin_hasse_rational, ep_lower_series, ep_series, f_series, g_series,
    g_series_via_quotient, s_series, t_series, NamedSeriesSet,
};
pub use stirling::{closed_form_coefficient, stirling_first, StirlingTable};
