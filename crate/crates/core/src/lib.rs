//! Exact-rational toolkit for Solovay and quasi-Solovay reducibility
//! between left-c.e. reals.
//!
//! Everything is built on arbitrary-precision rationals: bit-level
//! encodings (complementary-pair dyadics, interleaving, repetition codes),
//! left-c.e. reals as stage sequences with exactly known fixture limits,
//! finite prefix-free machines with exact truncated halting probabilities,
//! reduction witnesses with an exact inequality checker and a small
//! algebra (reflexivity, composition, join, scaling), interval-cover test
//! levels with exact measure-bound verdicts, and certified translations
//! between witnesses and Lipschitz/Hölder-continuous piecewise curves.
//!
//! Irrational quantities (ℓ-th roots, crossover abscissae) are never
//! floated; they are carried as shrinking rational enclosures, and every
//! certified verdict reduces to an exact rational comparison. Comparisons
//! that fail to separate within the refinement cap are reported as
//! undecided instead of guessed.

pub mod bits;
pub mod curve;
pub mod error;
pub mod files;
pub mod interval;
pub mod machine;
pub mod rational;
pub mod real;
pub mod sample;
pub mod witness;

pub use bits::{
    dprime_check, dprime_round_up, interleave_decode, interleave_encode, periodic_expansion,
    repetition_encode, to_binary_expansion, BitSource, BitString,
};
pub use curve::{
    build_hoelder_polyline, build_lipschitz, certify_modulus, extract_witness, smooth_hoelder,
    Extraction, LeftCut, ModulusClaim, PiecewiseCurve, RegionSpec, Segment,
};
pub use error::{Error, Result};
pub use interval::{root_enclosure, RationalInterval, REFINE_CAP};
pub use machine::{Behavior, PrefixFreeMachine, Program};
pub use rational::Rational;
pub use real::{GapSchedule, LeftCEReal, RealName, DEFAULT_COERCE_BITS};
pub use sample::Sampler;
pub use witness::{
    check_witness, compose, h1_witness, index_function, join, ml_bound_dominated, ml_test_level,
    reflexive_witness, repetition_real, scale_witness, turing_via_qs, witness_from_sequences,
    witness_from_stage_pair, CheckReport, CheckStatus, Eval, MlTestLevel, QSWitness,
    WitnessFunction,
};
