//! Exact computations with Brauer classes of `k(t)` for `k = Q` or `F_q`:
//! ramification divisors, equality and distinguishing tests, candidate
//! enumeration over finite fields, and explicit Kummer covers.
//!
//! ```
//! use brauerkt::{parse_class, Rationals};
//!
//! let a = parse_class("(5, t)", &Rationals, 2).unwrap();
//! let d = a.ramification_divisor().unwrap();
//! assert_eq!(d.len(), 2);
//! assert!(d.reciprocity_check().unwrap());
//! ```

pub mod base;
pub mod brauer;
pub mod covers;
pub mod distinguish;
pub mod error;
pub mod factor;
pub mod field;
pub mod hilbert;
pub mod integer;
pub mod point;
pub mod poly;
pub mod ratfunc;
pub mod residue;
pub mod syntax;

pub use base::BaseField;
pub use brauer::{
    classes_equal, equality_certificate, BrauerClass, ConstantClass, EqualityCertificate, RamificationDivisor, Symbol,
    TwistSequence,
};
pub use covers::{
    make_unramified_cover, pullback_class, splitting_witness, verify_splitting_witness, witness_for_class,
    KummerCoverDatum, Reparametrization, SplittingWitness, UnramifiedCover, VerificationScope, WitnessReport,
};
pub use distinguish::{
    compare_ramification_fields, distinguish, enumerate_candidates, uniqueness_report, CandidateSet, FieldComparison,
    Outcome, Side, SplittingCertificate, Verdict, DEFAULT_SWEEP,
};
pub use error::{Error, Result};
pub use factor::{factor_finite, factor_rational, Factorization};
pub use field::{Field, FiniteField, FqElem, Rationals};
pub use hilbert::{hilbert_symbol, ramified_places, relevant_places, Place};
pub use point::ClosedPoint;
pub use poly::Poly;
pub use ratfunc::RationalFunction;
pub use residue::{nf_is_pth_power, nf_norm, same_cyclic_extension, ResidueClass, ResidueElement};
pub use syntax::{parse_class, parse_element, parse_function, ClassExpression};

pub type RationalPoly = Poly<Rationals>;
pub type FqPoly = Poly<FiniteField>;
pub type NumberFieldElement = ResidueElement<Rationals>;
pub type PrimePowerFactorization = Factorization<Rationals>;
pub type QClass = BrauerClass<Rationals>;
pub type FqClass = BrauerClass<FiniteField>;
pub type BrauerClassKt<K> = BrauerClass<K>;
pub type SymbolKt<K> = Symbol<K>;
