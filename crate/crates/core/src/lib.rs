//! Exact synthesis of single-qubit unitaries over the Clifford-cyclotomic
//! gate sets `⟨H₀, S, U_z(π/n)⟩`.
//!
//! All arithmetic is exact: matrix entries live in `Z[ζ_{2n}, 1/2]` with
//! arbitrary-precision coefficients.
//!
//! ```
//! use cyclosynth::{GateSequence, Synthesizer};
//!
//! let syn = Synthesizer::new(4).unwrap();
//! let u = GateSequence::parse("H W H W^3 S", 4).unwrap().eval(syn.ctx()).unwrap();
//! let form = syn.canonical_form(&u).unwrap();
//! let circuit = syn.to_circuit(&form);
//! assert_eq!(circuit.eval(syn.ctx()).unwrap(), u);
//! assert_eq!(circuit.cost(), syn.tcount(&u).unwrap());
//! ```

pub mod arith;
pub mod cyclo;
pub mod error;
pub mod rings;
pub mod ringsynth;
pub mod so3;
pub mod su2;
pub mod synth;

pub use cyclo::{cyclotomic_poly, Context, CycInt, DivisionKit, Valuation, VALUATION_SUPPORTED};
pub use error::{Error, Result};
pub use rings::{mu, q_of, BetaConstant, RealRingElem, RingElem};
pub use ringsynth::{
    base_case_column, complete_unitary, diag_one, fn_census, modulus_one_non_root, phase_condition,
    reduce_column_step, synthesize_ring, verify_finite_lemma, z_rotation_classify, Census,
    ColumnRn, FiniteLemmaReport, PhaseCondition, RingSynthesis,
};
pub use so3::{bloch, rotation_generator, CliffordRot, CliffordTable, Rotation};
pub use su2::{equal_up_to_phase, eval_sequence, Axis, Gate, GateSequence, UnitaryRn};
pub use synth::{CanonicalForm, CosetEntry, Membership, Stage, Synthesizer};
