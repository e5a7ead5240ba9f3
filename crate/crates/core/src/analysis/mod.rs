//! Degree verdicts for surface groups: admissible automorphism data,
//! witnesses, and certificates.

mod surface;
mod verdict;
mod witness;

pub use surface::{
    admissibility, admissibility_failure, bigcondition_equivalence, block_swap, omega, orientable_witness,
    relator_image_sign, sample_admissible, sample_nonadmissible, transvection, Admissibility, Sign, SurfaceSpec,
};
pub use verdict::{
    analyze_sample, check_automorphism, rinf_degree, rinf_degree_with_table, sample_plan, solvability_quotient_check,
    verify_check, verify_verdict, Certificate, CertificateKind, CheckReport, DegreeDeterminant, DegreeOptions, Lattice,
    RinfVerdict, Route, SampleRecord, SampleStats, SurfaceLie, SCHEMA_VERSION,
};
pub use witness::{
    dominance_margin, matrix_a, matrix_l, nonorientable_charpoly_formula, nonorientable_matrix, nonorientable_witness,
    product_criterion, product_spectrum_at_one, NonorientableWitness, EXPLICIT_PRODUCT_DEGREE,
};
