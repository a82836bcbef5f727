//! Exact computer algebra for degree-truncated Grothendieck-Teichmuller
//! calculus and finite-dimensional Hopf-algebra verification.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere.  Truncated objects carry their truncation degree
//! explicitly and mixing truncations is an error.

pub mod alphabet;
pub mod braid;
pub mod catalog;
pub mod exec;
pub mod freegroup;
pub mod gtrel;
pub mod hgt;
pub mod hopf;
pub mod ihara;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod quotient;
pub mod scalar;
pub mod series;
pub mod trialgebra;

pub use alphabet::{Alphabet, Monomial};
pub use braid::{burau, equal_braids, gt_automorphism_word, BraidWord, Laurent, LaurentMatrix};
pub use freegroup::FreeWord;
pub use gtrel::{
    check_all, check_duality, check_grouplike, check_hexagon, check_pentagon,
    element_with_degree_part, gt_compose, solve_relations, DegreeSolution, GTElement, GTError,
    GTSolution, RelationReport,
};
pub use hgt::{
    check_b1, check_b3, check_b4, chi, compose, is_involution, project_first, solve_b4,
    B4Solution, ComposeOutcome, HGTCombination, HGTError, HGTPair, SeriesCombination,
};
pub use hopf::{
    check_bialgebra, check_coquasitriangular, check_hopf, check_quasitriangular, check_selfdual,
    check_triangular, drinfeld_double, dual_hopf, solve_antipode, AxiomCheck, CheckReport,
    DrinfeldDouble, HopfData, HopfError, RMatrix, Tensor3,
};
pub use ihara::{
    check_b5, check_b5_evaluated, evaluate_on_g, ihara_bracket, kirillov_bracket, IharaError,
    MetrizedLieAlgebra, PolyFunction,
};
pub use io::{parse, print, Document, IoError};
pub use lie::{lie_dimensions, lyndon_words, LieElement, LieError};
pub use quotient::{QuotientAlgebra, QuotientError};
pub use scalar::{format_scalar, parse_scalar, Scalar};
pub use series::{commutator, NCSeries, SeriesError};
pub use trialgebra::{
    check_biquasitriangular, check_quadraalgebra, check_trialgebra, eckmann_hilton, CoquasiForm,
    EckmannHiltonReport, QuadraalgebraData, TrialgebraData, TrialgebraError,
};
