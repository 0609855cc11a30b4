//! Telling classes apart by finite splitting data, and the candidate set of
//! classes a finite-field class cannot be told apart from.

use itertools::Itertools;
use num_bigint::BigInt;

use crate::base::BaseField;
use crate::brauer::{
    equality_certificate, BrauerClass, ConstantClass, EqualityCertificate, RamificationDivisor, Symbol, TwistSequence,
};
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Rationals};
use crate::hilbert::{quadratic_field_splits, squarefree_discriminants, Place};
use crate::point::ClosedPoint;
use crate::poly::Poly;
use crate::ratfunc::RationalFunction;
use crate::residue::{same_cyclic_extension, ResidueClass, ResidueElement};

/// Default number of rational points examined by [`distinguish`].
pub const DEFAULT_SWEEP: usize = 200;

/// Quadratic fields `Q(sqrt d)` tried per specialization point.
const QUADRATIC_SEARCH: usize = 4000;

/// Residues of two classes at one point and whether they cut out the same field.
#[derive(Clone, Debug)]
pub struct FieldComparison<F: Field> {
    pub point: ClosedPoint<F>,
    pub left: ResidueClass<F>,
    pub right: ResidueClass<F>,
    pub same_field: bool,
}

/// Compares the residue fields of `a` and `b` at every point where either ramifies.
pub fn compare_ramification_fields<K: BaseField>(
    a: &BrauerClass<K>,
    b: &BrauerClass<K>,
) -> Result<Vec<FieldComparison<K>>> {
    if a.field() != b.field() || a.torsion() != b.torsion() {
        return Err(Error::Mismatch("classes differ in base or torsion".into()));
    }
    let da = a.ramification_divisor()?;
    let db = b.ramification_divisor()?;
    let points: Vec<ClosedPoint<K>> = da.support().chain(db.support()).cloned().sorted().dedup().collect();
    points
        .into_iter()
        .map(|x| {
            let left = a.residue_at(&x)?;
            let right = b.residue_at(&x)?;
            let same_field = same_cyclic_extension(&left, &right)?;
            Ok(FieldComparison {
                point: x,
                left,
                right,
                same_field,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Why two specializations are not equivalent: some finite extension of `k`
/// splits exactly one of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplittingCertificate {
    /// `k` itself splits the class on `split` and not the other.
    BaseFieldSplitsOne { split: Side },
    /// `Q(sqrt d)` splits the class on `split` and not the other.
    QuadraticField { d: BigInt, split: Side },
}

#[derive(Clone, Debug)]
pub enum Outcome<F: Field> {
    Equal(EqualityCertificate<F>),
    DistinguishedByRamificationField {
        point: ClosedPoint<F>,
        left: ResidueClass<F>,
        right: ResidueClass<F>,
    },
    DistinguishedBySpecialization {
        at: F::Elem,
        left: ConstantClass<F>,
        right: ConstantClass<F>,
        certificate: SplittingCertificate,
    },
    /// No test separated the classes. This is not a claim of equivalence.
    CandidateEquivalent,
}

impl<F: Field> Outcome<F> {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Equal(_) => "Equal",
            Outcome::DistinguishedByRamificationField { .. } => "DistinguishedByRamificationField",
            Outcome::DistinguishedBySpecialization { .. } => "DistinguishedBySpecialization",
            Outcome::CandidateEquivalent => "CandidateEquivalent",
        }
    }

    pub fn is_distinguished(&self) -> bool {
        matches!(
            self,
            Outcome::DistinguishedByRamificationField { .. } | Outcome::DistinguishedBySpecialization { .. }
        )
    }
}

#[derive(Clone, Debug)]
pub struct Verdict<F: Field> {
    pub outcome: Outcome<F>,
    /// The tests applied, in order.
    pub narrative: Vec<String>,
}

fn places_text(places: &[Place]) -> String {
    if places.is_empty() {
        "trivial".into()
    } else {
        format!("ramified at {{{}}}", places.iter().join(", "))
    }
}

/// Certifies that two constant classes are split by different finite extensions.
fn separate<K: BaseField>(left: &ConstantClass<K>, right: &ConstantClass<K>) -> Result<Option<SplittingCertificate>> {
    let sl = left.ramified_places()?;
    let sr = right.ramified_places()?;
    match (sl.is_empty(), sr.is_empty()) {
        (true, false) => return Ok(Some(SplittingCertificate::BaseFieldSplitsOne { split: Side::Left })),
        (false, true) => return Ok(Some(SplittingCertificate::BaseFieldSplitsOne { split: Side::Right })),
        (true, true) => return Ok(None),
        _ => {}
    }
    if sl == sr {
        return Ok(None);
    }
    for d in squarefree_discriminants().take(QUADRATIC_SEARCH) {
        match (quadratic_field_splits(&d, &sl), quadratic_field_splits(&d, &sr)) {
            (true, false) => return Ok(Some(SplittingCertificate::QuadraticField { d, split: Side::Left })),
            (false, true) => return Ok(Some(SplittingCertificate::QuadraticField { d, split: Side::Right })),
            _ => {}
        }
    }
    Ok(None)
}

/// Decides equality, then looks for a residue field mismatch, then for a
/// rational point where the specializations are provably inequivalent.
pub fn distinguish<K: BaseField>(a: &BrauerClass<K>, b: &BrauerClass<K>, sweep: usize) -> Result<Verdict<K>> {
    let mut narrative = Vec::new();
    let field = a.field().clone();
    let cert = equality_certificate(a, b)?;
    if cert.is_equal() {
        narrative.push("classes are equal in Br(k(t))".into());
        return Ok(Verdict {
            outcome: Outcome::Equal(cert),
            narrative,
        });
    }
    narrative.push("classes are not equal".into());

    let table = compare_ramification_fields(a, b)?;
    narrative.push(format!("compared residue fields at {} point(s)", table.len()));
    if let Some(row) = table.into_iter().find(|r| !r.same_field) {
        narrative.push(format!(
            "residue fields differ at {}: {} vs {}",
            row.point,
            row.left.describe(),
            row.right.describe()
        ));
        return Ok(Verdict {
            outcome: Outcome::DistinguishedByRamificationField {
                point: row.point,
                left: row.left,
                right: row.right,
            },
            narrative,
        });
    }
    narrative.push("residue fields agree at every point".into());

    if field.order().is_some() {
        narrative.push("every specialization is trivial over a finite field; nothing further to test".into());
        return Ok(Verdict {
            outcome: Outcome::CandidateEquivalent,
            narrative,
        });
    }

    let da = a.ramification_divisor()?;
    let db = b.ramification_divisor()?;
    let mut tried = 0;
    for c in field.sweep().take(sweep) {
        let x = ClosedPoint::rational(&field, &c);
        if da.contains(&x) || db.contains(&x) || !a.is_symbol_regular_at(&x) || !b.is_symbol_regular_at(&x) {
            continue;
        }
        tried += 1;
        let left = a.specialize(&x)?;
        let right = b.specialize(&x)?;
        if let Some(certificate) = separate(&left, &right)? {
            narrative.push(format!(
                "specialized at t = {}: {} is {}, {} is {}",
                field.display(&c),
                left,
                places_text(&left.ramified_places()?),
                right,
                places_text(&right.ramified_places()?)
            ));
            narrative.push(match &certificate {
                SplittingCertificate::BaseFieldSplitsOne { split } => {
                    format!("k splits the {} specialization only", side_name(*split))
                }
                SplittingCertificate::QuadraticField { d, split } => format!(
                    "Q(√{d}) splits the {} specialization only",
                    side_name(*split)
                ),
            });
            return Ok(Verdict {
                outcome: Outcome::DistinguishedBySpecialization {
                    at: c,
                    left,
                    right,
                    certificate,
                },
                narrative,
            });
        }
    }
    narrative.push(format!(
        "no certified separation at {tried} symbol-regular point(s) among the first {sweep}"
    ));
    Ok(Verdict {
        outcome: Outcome::CandidateEquivalent,
        narrative,
    })
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Left => "first",
        Side::Right => "second",
    }
}

/// The classes over `F_q(t)` with the same ramification support and residue
/// fields as a given class, one per admissible twist sequence.
///
/// Exponents in a twist sequence are read against the fixed generator of
/// `F_q^*` through the norm. Whether distinct twists are inequivalent is not
/// decided here; the set is an upper bound.
#[derive(Clone, Debug)]
pub struct CandidateSet<F: Field> {
    pub support: Vec<ClosedPoint<F>>,
    pub input: TwistSequence<F>,
    /// `(p - 1)^r` with `r` the support size.
    pub bound: u64,
    pub twists: Vec<TwistSequence<F>>,
    pub classes: Vec<BrauerClass<F>>,
}

impl<F: Field> CandidateSet<F> {
    pub fn len(&self) -> usize {
        self.classes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Enumerates the candidate set of a class over `F_q(t)`.
pub fn enumerate_candidates(a: &BrauerClass<FiniteField>) -> Result<CandidateSet<FiniteField>> {
    let field = a.field().clone();
    let p = a.torsion();
    let divisor = a.ramification_divisor()?;
    let input = divisor
        .twist_sequence()
        .ok_or_else(|| Error::Internal("finite field residues carry exponents".into()))?;
    let support: Vec<ClosedPoint<FiniteField>> = divisor.support().cloned().collect();
    let r = support.len();
    let bound = ((p - 1) as u64).pow(r as u32);
    let mut twists = Vec::new();
    let mut classes = Vec::new();
    for tuple in exponent_tuples(r, p) {
        let residues = support
            .iter()
            .zip(&tuple)
            .map(|(x, &e)| residue_with_exponent(&field, x, e, p))
            .collect::<Result<Vec<_>>>()?;
        let target = RamificationDivisor::from_entries(&field, p, residues)?;
        if !target.reciprocity_check()? {
            continue;
        }
        let twist = TwistSequence {
            exponents: support.iter().cloned().zip(tuple.iter().copied()).collect(),
        };
        let class = realize(&field, p, &twist)?;
        let got = class.ramification_divisor()?;
        if got.first_difference(&target)?.is_some() {
            return Err(Error::Internal(format!("realization of {twist} has the wrong divisor")));
        }
        twists.push(twist);
        classes.push(class);
    }
    Ok(CandidateSet {
        support,
        input,
        bound,
        twists,
        classes,
    })
}

/// All tuples in `{1, ..., p-1}^r`, in lexicographic order.
fn exponent_tuples(r: usize, p: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    (0..r).map(|_| 1..p).multi_cartesian_product().collect()
}

/// Some element of `kappa(x)` whose class has exponent `e`.
fn residue_with_exponent(
    field: &FiniteField,
    x: &ClosedPoint<FiniteField>,
    e: u32,
    p: u32,
) -> Result<ResidueClass<FiniteField>> {
    let modulus = x.residue_modulus(field);
    let d = modulus.deg();
    // elements of kappa(x) by code, skipping zero
    let q = field.q() as u64;
    let total = (q as u128).pow(d as u32).min(1 << 20) as u64;
    for code in 1..total {
        let mut coeffs = Vec::with_capacity(d);
        let mut c = code;
        for _ in 0..d {
            coeffs.push(crate::field::FqElem((c % q) as u32));
            c /= q;
        }
        let v = ResidueElement::new(modulus.clone(), Poly::new(field, coeffs));
        if field.class_exponent(&v, p) == Some(e % p) {
            return ResidueClass::new(x.clone(), v, p);
        }
    }
    Err(Error::Internal(format!("no residue of exponent {e} at {x}")))
}

fn fq_const(field: &FiniteField, c: crate::field::FqElem) -> RationalFunction<FiniteField> {
    RationalFunction::constant(field, c)
}

/// A class with the prescribed residue exponents at the points of `twist`.
///
/// At a finite point `pi` of degree `d` prime to `p` the symbol `(g^k, pi)`
/// has residue exponent `d k` at `pi`. When `p | d` an auxiliary point `rho`
/// is used: `(rho, pi)` has exponent `log Res(pi, rho)` at `pi`, and
/// `(c, rho)` cancels what it leaves at `rho`. Infinity is fixed by reciprocity.
fn realize(field: &FiniteField, p: u32, twist: &TwistSequence<FiniteField>) -> Result<BrauerClass<FiniteField>> {
    let mut symbols = Vec::new();
    let mut used: Vec<Poly<FiniteField>> = twist
        .exponents
        .iter()
        .filter_map(|(x, _)| match x {
            ClosedPoint::Finite(pi) => Some(pi.clone()),
            ClosedPoint::Infinity => None,
        })
        .collect();
    for (x, e) in &twist.exponents {
        let ClosedPoint::Finite(pi) = x else { continue };
        let d = pi.deg() as u32;
        if !d.is_multiple_of(p) {
            let k = (*e as u64 * inverse_mod(d % p, p) as u64) % p as u64;
            symbols.push(Symbol::new(fq_const(field, field.exp(k)), pi.clone().into())?);
            continue;
        }
        let rho = auxiliary_point(field, p, pi, *e, &used)?;
        used.push(rho.clone());
        let at_rho = rho.resultant(pi);
        let l = field
            .log(at_rho)
            .ok_or_else(|| Error::Internal("auxiliary point meets the support".into()))?;
        let k = (l as u64 % p as u64) * inverse_mod(rho.deg() as u32 % p, p) as u64 % p as u64;
        symbols.push(Symbol::new(rho.clone().into(), pi.clone().into())?);
        symbols.push(Symbol::new(fq_const(field, field.exp(k)), rho.into())?);
    }
    BrauerClass::new(field, p, symbols)
}

/// A monic irreducible `rho` of degree prime to `p`, outside `used`, with
/// `log Res(pi, rho) = e (mod p)`.
fn auxiliary_point(
    field: &FiniteField,
    p: u32,
    pi: &Poly<FiniteField>,
    e: u32,
    used: &[Poly<FiniteField>],
) -> Result<Poly<FiniteField>> {
    let q = field.q() as u64;
    for deg in (1u32..=6).filter(|d| d % p != 0) {
        let count = q.checked_pow(deg).unwrap_or(u64::MAX).min(1 << 18);
        for code in 0..count {
            let mut coeffs = Vec::with_capacity(deg as usize + 1);
            let mut c = code;
            for _ in 0..deg {
                coeffs.push(crate::field::FqElem((c % q) as u32));
                c /= q;
            }
            coeffs.push(field.one());
            let rho = Poly::new(field, coeffs);
            if used.contains(&rho) {
                continue;
            }
            let res = pi.resultant(&rho);
            let Some(l) = field.log(res) else { continue };
            if l % p != e % p {
                continue;
            }
            if deg > 1 && !crate::base::BaseField::factor(field, &rho).is_irreducible() {
                continue;
            }
            return Ok(rho);
        }
    }
    Err(Error::Internal(format!("no auxiliary point found for {pi}")))
}

fn inverse_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|x| (a as u64 * *x as u64) % p as u64 == 1).expect("a is a unit mod p")
}

/// Outcome of comparing a class over `Q(t)` against a list of others.
#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub verdicts: Vec<(BrauerClass<Rationals>, Verdict<Rationals>)>,
    /// Every unequal comparison class was distinguished.
    pub all_separated: bool,
    pub note: &'static str,
}

/// Runs [`distinguish`] against each comparison class. Only the supplied
/// list is checked.
pub fn uniqueness_report(
    a: &BrauerClass<Rationals>,
    comparisons: &[BrauerClass<Rationals>],
    sweep: usize,
) -> Result<UniquenessReport> {
    if a.torsion() != 2 {
        return Err(Error::Scope("uniqueness reports need p = 2".into()));
    }
    let mut verdicts = Vec::new();
    let mut all_separated = true;
    for b in comparisons {
        let v = distinguish(a, b, sweep)?;
        if matches!(v.outcome, Outcome::CandidateEquivalent) {
            all_separated = false;
        }
        verdicts.push((b.clone(), v));
    }
    Ok(UniquenessReport {
        verdicts,
        all_separated,
        note: "only the listed classes are checked",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::classes_equal;

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_ints(&Rationals, c)
    }

    fn sym(a: &[i64], b: &[i64]) -> Symbol<Rationals> {
        Symbol::new(q(a).into(), q(b).into()).unwrap()
    }

    fn class(symbols: Vec<Symbol<Rationals>>) -> BrauerClass<Rationals> {
        BrauerClass::new(&Rationals, 2, symbols).unwrap()
    }

    #[test]
    fn field_comparisons() {
        let t = [0, 1];
        let rows = compare_ramification_fields(&class(vec![sym(&[-1], &t)]), &class(vec![sym(&[-2], &t)])).unwrap();
        assert!(!rows[0].same_field);
        assert_eq!(rows[0].point.to_string(), "(t)");
        assert_eq!(rows[0].left.describe(), "Q(i)");
        assert_eq!(rows[0].right.describe(), "Q(√-2)");
        let rows = compare_ramification_fields(&class(vec![sym(&[-1], &t)]), &class(vec![sym(&[-4], &t)])).unwrap();
        assert!(rows.iter().all(|r| r.same_field));
    }

    #[test]
    fn verdict_examples() {
        let t = [0, 1];
        let v = distinguish(&class(vec![sym(&[-1], &t)]), &class(vec![sym(&[-2], &t)]), DEFAULT_SWEEP).unwrap();
        match v.outcome {
            Outcome::DistinguishedByRamificationField { point, .. } => assert_eq!(point.to_string(), "(t)"),
            other => panic!("unexpected {}", other.name()),
        }
        let v = distinguish(&class(vec![sym(&[5], &t)]), &class(vec![sym(&[5], &[0, 2])]), DEFAULT_SWEEP).unwrap();
        match &v.outcome {
            Outcome::DistinguishedBySpecialization { at, left, right, certificate } => {
                assert_eq!(*at, Rationals.from_i64(1));
                assert_eq!(left.to_string(), "(5, 1)");
                assert_eq!(right.to_string(), "(5, 2)");
                assert_eq!(*certificate, SplittingCertificate::BaseFieldSplitsOne { split: Side::Left });
            }
            other => panic!("unexpected {}", other.name()),
        }
        let a = class(vec![sym(&[3], &[1, 1]), sym(&[0, 1], &[-2, 0, 1])]);
        assert!(matches!(distinguish(&a, &a, DEFAULT_SWEEP).unwrap().outcome, Outcome::Equal(_)));
    }

    #[test]
    fn quadratic_certificate_when_both_specializations_ramify() {
        // specializations ramified at {inf, 2} and {2, 3}
        let a = class(vec![sym(&[-1], &[-1]), sym(&[0, 1], &[1, 0, 1])]);
        let b = class(vec![sym(&[-1], &[3]), sym(&[0, 1], &[1, 0, 1])]);
        let v = distinguish(&a, &b, DEFAULT_SWEEP).unwrap();
        match &v.outcome {
            Outcome::DistinguishedBySpecialization { certificate: SplittingCertificate::QuadraticField { d, split }, .. } => {
                let sl = vec![Place::Infinity, Place::Prime(2.into())];
                let sr = vec![Place::Prime(2.into()), Place::Prime(3.into())];
                let (yes, no) = if *split == Side::Left { (sl, sr) } else { (sr, sl) };
                assert!(quadratic_field_splits(d, &yes) && !quadratic_field_splits(d, &no));
            }
            other => panic!("unexpected {}: {:?}", other.name(), v.narrative),
        }
    }

    #[test]
    fn uniqueness_examples() {
        let a = class(vec![sym(&[5], &[0, 1])]);
        let perturbed = a.add(&class(vec![sym(&[5], &[0, 2]), sym(&[5], &[0, 1])])).unwrap();
        let with_split = a.add(&class(vec![sym(&[1], &[0, 1])])).unwrap();
        let report = uniqueness_report(&a, &[perturbed, a.clone(), with_split], DEFAULT_SWEEP).unwrap();
        assert!(report.all_separated);
        assert!(report.verdicts[0].1.outcome.is_distinguished());
        assert!(matches!(report.verdicts[1].1.outcome, Outcome::Equal(_)));
        assert!(matches!(report.verdicts[2].1.outcome, Outcome::Equal(_)));
    }

    fn fq_class(q: u32, p: u32, symbols: &[(&[i64], &[i64])]) -> BrauerClass<FiniteField> {
        let f = FiniteField::new(q).unwrap();
        let symbols = symbols
            .iter()
            .map(|(a, b)| Symbol::new(Poly::from_ints(&f, a).into(), Poly::from_ints(&f, b).into()).unwrap())
            .collect();
        BrauerClass::new(&f, p, symbols).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let a = fq_class(7, 3, &[(&[3], &[0, 1])]);
        let set = enumerate_candidates(&a).unwrap();
        assert_eq!(set.bound, 4);
        let tuples: Vec<String> = set.twists.iter().map(|t| t.to_string()).collect();
        assert_eq!(tuples, ["(1, 2)", "(2, 1)"]);
        assert_eq!(set.input.to_string(), "(1, 2)");
        assert!(set.classes.iter().any(|c| classes_equal(c, &a).unwrap()));

        let z = fq_class(7, 3, &[(&[3], &[5])]);
        let set = enumerate_candidates(&z).unwrap();
        assert_eq!(set.len(), 1);
        assert!(set.classes[0].is_empty());

        let a = fq_class(7, 2, &[(&[3], &[0, 1])]);
        let set = enumerate_candidates(&a).unwrap();
        assert_eq!(set.len(), 1);
        assert!(classes_equal(&set.classes[0], &a).unwrap());
    }

    #[test]
    fn enumeration_with_degree_divisible_by_p() {
        // t^3 - 2 is irreducible over F_7 (2 is not a cube), so p = 3 divides its degree
        let a = fq_class(7, 3, &[(&[0, 1], &[-2, 0, 0, 1])]);
        let d = a.ramification_divisor().unwrap();
        assert!(d.len() >= 2);
        let set = enumerate_candidates(&a).unwrap();
        assert!(set.len() as u64 <= set.bound);
        assert!(set.classes.iter().any(|c| classes_equal(c, &a).unwrap()));
    }

    #[test]
    fn finite_field_distinguish() {
        let a = fq_class(7, 3, &[(&[3], &[0, 1])]);
        let b = fq_class(7, 3, &[(&[2], &[0, 1])]);
        let v = distinguish(&a, &b, DEFAULT_SWEEP).unwrap();
        assert!(matches!(v.outcome, Outcome::CandidateEquivalent));
    }
}
