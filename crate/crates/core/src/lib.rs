//! Smale-type mean value quantities for complex polynomials, and a
//! machine-checked certificate that the minimal maximal critical ratio
//! over degree-7 members of the normalized class equals 1/7.
//!
//! The crate has two independent pillars:
//!
//! * an exact one — sparse trigonometric polynomials over big rationals
//!   ([`trig`]), the certificate identity g = J₁+…+J₅ and the full
//!   h-chain ([`certificate`]), with equality cases decided in Q(√3)
//!   ([`exact`]);
//! * a numerical one — root finding and critical-ratio metrics
//!   ([`poly`], [`metrics`]) plus a symmetry-reduced global scan of the
//!   5-torus ([`optimizer`]).
//!
//! Each side cross-checks the other: every symbolic quantity is compared
//! against quadrature of its defining integral before the exact identity
//! check runs, and the scan corroborates the certified minimum.

pub mod boxpoly;
pub mod certificate;
pub mod exact;
pub mod metrics;
pub mod optimizer;
pub mod poly;
pub mod trig;

pub use boxpoly::{box_quadratic_min, substitute_box, BoxDomain, BoxPoly};
pub use certificate::{
    build_g, build_j, build_lemma_integrands, build_s_squared, oracle_crosscheck, sample_prop1,
    verify_certificate, verify_equality_cases, verify_identity_id1, verify_lemma1,
    CertificateReport, IndexSets,
};
pub use exact::{ExactPoly, ExtComplex, QuadExt};
pub use metrics::{
    critical_set, dubinin_check, extremal_g1, extremal_g1_exact, extremal_g23,
    extremal_g23_exact, integral_ratio, metrics, random_in_class, CriticalSet, MetricsReport,
};
pub use optimizer::{
    conjecture_sample_check, grid_scan, objective, refine, refine_scan, ScanResult,
};
pub use poly::{ComplexPolynomial, PolyError, RootSet};
pub use trig::{ComplexTrig, Monomial, TrigError, TrigPoly};
