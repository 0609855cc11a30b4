//! Kummer covers of the line: splitting witnesses for symbols and covers
//! that kill the ramification of a class.

use std::fmt;

use crate::base::BaseField;
use crate::brauer::{classes_equal, regular_point, BrauerClass, RamificationDivisor, Symbol};
use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::field::Field;
use crate::point::ClosedPoint;
use crate::poly::Poly;
use crate::ratfunc::RationalFunction;

/// A substitution `t = r(s)` identifying the function field of a cover with `k(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reparametrization<F: Field> {
    substitution: RationalFunction<F>,
}

impl<F: Field> Reparametrization<F> {
    pub fn new(substitution: RationalFunction<F>) -> Result<Self> {
        if substitution.is_constant() {
            return Err(Error::Precondition("substitution must be nonconstant".into()));
        }
        Ok(Reparametrization { substitution })
    }

    pub fn substitution(&self) -> &RationalFunction<F> {
        &self.substitution
    }
}

impl<F: Field> fmt::Display for Reparametrization<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t = {}", self.substitution.display_with("s"))
    }
}

/// The cover `T^m = g` of the `t`-line together with its fiber over `t = x`.
#[derive(Clone, Debug)]
pub struct KummerCoverDatum<F: Field> {
    pub degree: u32,
    pub defining: RationalFunction<F>,
    pub basepoint: F::Elem,
    /// Factorization of `T^m - g(x)`.
    pub fiber: Factorization<F>,
    /// Whether the fiber has a `k`-rational point.
    pub pointed: bool,
}

impl<K: BaseField> KummerCoverDatum<K> {
    pub fn new(degree: u32, defining: RationalFunction<K>, basepoint: K::Elem) -> Result<Self> {
        let field = defining.field().clone();
        if degree < 2 || (degree as u64).is_multiple_of(field.characteristic().max(1)) && field.characteristic() != 0 {
            return Err(Error::Precondition(format!(
                "cover degree {degree} must be at least 2 and prime to the characteristic"
            )));
        }
        if defining.is_zero() {
            return Err(Error::ZeroInput("cover defining function"));
        }
        let value = defining.eval(&basepoint).ok_or_else(|| {
            Error::Precondition(format!(
                "defining function {defining} has a pole at the basepoint {}",
                field.display(&basepoint)
            ))
        })?;
        let fiber_poly = &Poly::monomial(&field, field.one(), degree as usize)
            - &Poly::constant(&field, value);
        let fiber = field.factor(&fiber_poly);
        let pointed = fiber.linear_factors().next().is_some();
        Ok(KummerCoverDatum {
            degree,
            defining,
            basepoint,
            fiber,
            pointed,
        })
    }

    /// The fiber polynomial written out as a product, in the variable `T`.
    pub fn fiber_display(&self) -> String {
        let field = self.defining.field();
        let mut parts = Vec::new();
        if !field.is_one(&self.fiber.unit) {
            parts.push(field.display(&self.fiber.unit).to_string());
        }
        for (g, e) in &self.fiber.factors {
            let base = format!("({})", g.display_with("T"));
            parts.push(if *e == 1 { base } else { format!("{base}^{e}") });
        }
        parts.join("*")
    }
}

/// A cover `s^p = -tau/a` splitting the symbol `(a, tau)`, `tau` a uniformizer
/// at `t = c`, with a rational parametrization of the cover when `tau` has
/// degree one.
#[derive(Clone, Debug)]
pub struct SplittingWitness<F: Field> {
    pub symbol: Symbol<F>,
    pub point: F::Elem,
    pub torsion: u32,
    pub cover: KummerCoverDatum<F>,
    pub reparametrization: Option<Reparametrization<F>>,
}

/// Builds the splitting cover for `(a, tau)` ramified at `t = c`: `a` must be
/// a nonzero constant and `tau` must vanish to order one at `c`.
pub fn splitting_witness<K: BaseField>(sym: &Symbol<K>, torsion: u32, c: &K::Elem) -> Result<SplittingWitness<K>> {
    let field = sym.left.field().clone();
    field.check_torsion(torsion)?;
    let a = sym.left.as_constant().ok_or_else(|| {
        Error::Precondition(format!("left entry {} is not a constant", sym.left))
    })?;
    let tau = &sym.right;
    let x = ClosedPoint::rational(&field, c);
    let v = x.valuation(tau)?;
    if v != 1 {
        return Err(Error::Precondition(format!(
            "right entry {tau} has valuation {v} at {x}, expected a uniformizer"
        )));
    }
    let inv_a = field.inv(&a).expect("nonzero constant");
    let g = tau.scale(&field.neg(&inv_a));
    let cover = KummerCoverDatum::new(torsion, g, c.clone())?;
    let reparametrization = mobius_inverse(tau, &a, torsion)?;
    Ok(SplittingWitness {
        symbol: sym.clone(),
        point: c.clone(),
        torsion,
        cover,
        reparametrization,
    })
}

/// Solves `tau(t) = -a s^p` for `t` when `tau` is a degree-one function.
fn mobius_inverse<K: BaseField>(tau: &RationalFunction<K>, a: &K::Elem, p: u32) -> Result<Option<Reparametrization<K>>> {
    let (num, den) = (tau.num(), tau.den());
    if num.deg() > 1 || den.deg() > 1 {
        return Ok(None);
    }
    let field = tau.field();
    // tau = (alpha t + beta) / (gamma t + delta)
    let (alpha, beta) = (num.coeff(1), num.coeff(0));
    let (gamma, delta) = (den.coeff(1), den.coeff(0));
    let target = Poly::monomial(field, field.neg(a), p as usize);
    let top = &target.scale(&delta) - &Poly::constant(field, beta);
    let bottom = &Poly::constant(field, alpha) - &target.scale(&gamma);
    Reparametrization::new(RationalFunction::new(top, bottom)?).map(Some)
}

/// The splitting witness for the part of `class` ramified at `t = c`: the
/// symbol `(r, t - c)` with `r` the residue of `class` there.
pub fn witness_for_class<K: BaseField>(class: &BrauerClass<K>, c: &K::Elem) -> Result<SplittingWitness<K>> {
    let field = class.field();
    let x = ClosedPoint::rational(field, c);
    let r = class.residue_at(&x)?;
    if r.is_trivial() {
        return Err(Error::Precondition(format!("{class} is unramified at {x}")));
    }
    let a = r.value().as_constant().expect("rational point residue");
    let tau = RationalFunction::from_poly(Poly::linear_root(field, c));
    splitting_witness(&Symbol::new(RationalFunction::constant(field, a), tau)?, class.torsion(), c)
}

/// Pulls every entry back along `t = r(s)`.
pub fn pullback_class<K: BaseField>(c: &BrauerClass<K>, r: &Reparametrization<K>) -> BrauerClass<K> {
    c.pullback(&r.substitution)
}

/// How much of a witness could be recomputed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerificationScope {
    /// The cover is rational: residues and specializations were recomputed on it.
    Full,
    /// Only the valuation and fiber certificates were checked.
    CertificatesOnly,
}

/// Outcome of [`verify_splitting_witness`].
#[derive(Clone, Debug)]
pub struct WitnessReport<F: Field> {
    pub scope: VerificationScope,
    /// `g` recomputed from the symbol matches, `v_x(g) = 1`, and the fiber is pointed.
    pub certificates_hold: bool,
    /// The residue of the class at `x` is the residue of the witnessed symbol.
    pub residue_matches: bool,
    /// `class - symbol` is unramified at `x`.
    pub complement_unramified: bool,
    /// The class equals the witnessed symbol.
    pub bare_symbol: bool,
    /// Points of the cover lying over `x`, with the pulled-back residues there trivial.
    pub points_above: Vec<ClosedPoint<F>>,
    pub residues_above_killed: Option<bool>,
    pub pulled_back: Option<BrauerClass<F>>,
    pub pulled_back_divisor: Option<RamificationDivisor<F>>,
    /// Empty divisor and trivial specialization.
    pub pullback_is_zero: Option<bool>,
    pub verified: bool,
    pub notes: Vec<String>,
}

/// Checks a splitting witness against a class over `k(t)`.
pub fn verify_splitting_witness<K: BaseField>(class: &BrauerClass<K>, w: &SplittingWitness<K>) -> Result<WitnessReport<K>> {
    let field = class.field();
    if w.torsion != class.torsion() || w.symbol.left.field() != field {
        return Err(Error::Mismatch("witness and class differ in base or torsion".into()));
    }
    let mut notes = Vec::new();
    let x = ClosedPoint::rational(field, &w.point);
    let recomputed = splitting_witness(&w.symbol, w.torsion, &w.point);
    let certificates_hold = match &recomputed {
        Ok(r) => r.cover.defining == w.cover.defining && w.cover.pointed && w.cover.degree == w.torsion,
        Err(e) => {
            notes.push(format!("witness symbol rejected: {e}"));
            false
        }
    };
    let sym_class = BrauerClass::new(field, w.torsion, vec![w.symbol.clone()])?;
    let residue = class.residue_at(&x)?;
    let sym_residue = sym_class.residue_at(&x)?;
    let residue_matches = residue.same_class(&sym_residue)?;
    let complement_unramified = class.sub(&sym_class)?.residue_at(&x)?.is_trivial();
    let bare_symbol = classes_equal(class, &sym_class)?;

    let mut report = WitnessReport {
        scope: VerificationScope::CertificatesOnly,
        certificates_hold,
        residue_matches,
        complement_unramified,
        bare_symbol,
        points_above: Vec::new(),
        residues_above_killed: None,
        pulled_back: None,
        pulled_back_divisor: None,
        pullback_is_zero: None,
        verified: false,
        notes,
    };

    let Some(r) = &w.reparametrization else {
        report
            .notes
            .push("cover is not parametrized; only valuation and fiber certificates were checked".into());
        report.verified = certificates_hold;
        return Ok(report);
    };
    report.scope = VerificationScope::Full;
    let pulled = pullback_class(class, r);
    let shifted = r
        .substitution()
        .sub(&RationalFunction::constant(field, w.point.clone()));
    let above: Vec<ClosedPoint<K>> = ClosedPoint::support_of(&shifted)
        .into_iter()
        .filter(|y| y.valuation(&shifted).map(|v| v > 0).unwrap_or(false))
        .collect();
    let mut killed = true;
    for y in &above {
        if !pulled.residue_at(y)?.is_trivial() {
            killed = false;
            report.notes.push(format!("residue survives at {}", y.display_with("s")));
        }
    }
    let divisor = pulled.ramification_divisor()?;
    let pullback_is_zero = if divisor.is_empty() {
        match regular_point(&[&pulled], &[], 10_000) {
            Some(s0) => pulled.specialize_at(&s0)?.is_trivial()?,
            None => field.order().is_some(),
        }
    } else {
        false
    };
    if bare_symbol && !pullback_is_zero {
        report.notes.push("pullback of the bare symbol is not zero".into());
    }
    report.points_above = above;
    report.residues_above_killed = Some(killed);
    report.pulled_back = Some(pulled);
    report.pulled_back_divisor = Some(divisor);
    report.pullback_is_zero = Some(pullback_is_zero);
    report.verified = certificates_hold && killed && (!bare_symbol || pullback_is_zero);
    Ok(report)
}

/// A cover `T^m = f * f(x)^(m-1)` ramified to order one over every point of
/// the ramification locus `D` of a class, with a rational point over `x`.
#[derive(Clone, Debug)]
pub struct UnramifiedCover<F: Field> {
    pub f: RationalFunction<F>,
    /// The only pole of `f`.
    pub pole_point: ClosedPoint<F>,
    /// Order of the pole of `f` at `pole_point`.
    pub pole_order: u32,
    pub f_at_x: F::Elem,
    pub cover: KummerCoverDatum<F>,
    /// `v_d` of the defining function for each `d` in `D`.
    pub valuations: Vec<(ClosedPoint<F>, i64)>,
    pub certified: bool,
}

/// Constructs the cover for `class` with basepoint `t = x` and pole at `b`
/// (default: infinity, or the first rational point off `D` when infinity
/// lies in `D`).
pub fn make_unramified_cover<K: BaseField>(
    class: &BrauerClass<K>,
    x: &K::Elem,
    b: Option<&ClosedPoint<K>>,
) -> Result<UnramifiedCover<K>> {
    let field = class.field();
    let m = class.torsion();
    let divisor = class.ramification_divisor()?;
    let xp = ClosedPoint::rational(field, x);
    if divisor.contains(&xp) {
        return Err(Error::Precondition(format!("basepoint {xp} lies in the ramification locus")));
    }
    let pole_point = match b {
        Some(b) => {
            if divisor.contains(b) {
                return Err(Error::Precondition(format!("pole {b} lies in the ramification locus")));
            }
            if *b == xp {
                return Err(Error::Precondition("pole and basepoint coincide".into()));
            }
            if b.degree() != 1 {
                return Err(Error::Precondition(format!("pole {b} must be a rational point")));
            }
            b.clone()
        }
        None if !divisor.contains(&ClosedPoint::Infinity) => ClosedPoint::Infinity,
        None => field
            .sweep()
            .map(|c| ClosedPoint::rational(field, &c))
            .find(|p| *p != xp && !divisor.contains(p))
            .ok_or_else(|| Error::Precondition("no rational point available for the pole".into()))?,
    };
    let g = divisor
        .support()
        .filter_map(|p| match p {
            ClosedPoint::Finite(pi) => Some(pi.clone()),
            ClosedPoint::Infinity => None,
        })
        .fold(Poly::one(field), |acc, pi| &acc * &pi);
    let (f, pole_order) = match &pole_point {
        ClosedPoint::Infinity => (RationalFunction::from_poly(g.clone()), g.deg() as u32),
        ClosedPoint::Finite(rho) => {
            let n = g.deg() + usize::from(divisor.contains(&ClosedPoint::Infinity));
            (RationalFunction::new(g.clone(), rho.pow(n as u32))?, n as u32)
        }
    };
    let f_at_x = f
        .eval(x)
        .filter(|v| !field.is_zero(v))
        .ok_or_else(|| Error::Internal("f vanishes at the basepoint".into()))?;
    let defining = f.scale(&field.pow(&f_at_x, (m - 1) as u64));
    let cover = KummerCoverDatum::new(m, defining, x.clone())?;
    let valuations = divisor
        .support()
        .map(|d| Ok((d.clone(), d.valuation(&cover.defining)?)))
        .collect::<Result<Vec<_>>>()?;
    let certified = valuations.iter().all(|(_, v)| *v == 1) && cover.pointed;
    Ok(UnramifiedCover {
        f,
        pole_point,
        pole_order,
        f_at_x,
        cover,
        valuations,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use proptest::prelude::*;

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_ints(&Rationals, c)
    }

    fn rp(c: &[i64]) -> RationalFunction<Rationals> {
        RationalFunction::from_poly(q(c))
    }

    fn sym(a: &[i64], b: &[i64]) -> Symbol<Rationals> {
        Symbol::new(rp(a), rp(b)).unwrap()
    }

    fn class(symbols: Vec<Symbol<Rationals>>) -> BrauerClass<Rationals> {
        BrauerClass::new(&Rationals, 2, symbols).unwrap()
    }

    fn zero() -> num_rational::BigRational {
        Rationals.from_i64(0)
    }

    #[test]
    fn witness_for_five_t() {
        let w = splitting_witness(&sym(&[5], &[0, 1]), 2, &zero()).unwrap();
        assert_eq!(w.cover.defining.to_string(), "-1/5*t");
        assert_eq!(w.reparametrization.as_ref().unwrap().to_string(), "t = -5*s^2");
        assert!(w.cover.pointed);
        let pulled = pullback_class(&class(vec![sym(&[5], &[0, 1])]), w.reparametrization.as_ref().unwrap());
        assert_eq!(pulled.display_with("s").to_string(), "(5, -5*s^2)");
        let report = verify_splitting_witness(&class(vec![sym(&[5], &[0, 1])]), &w).unwrap();
        assert!(report.verified);
        assert!(report.bare_symbol);
        assert_eq!(report.pullback_is_zero, Some(true));
    }

    #[test]
    fn witness_for_minus_one_t() {
        let w = splitting_witness(&sym(&[-1], &[0, 1]), 2, &zero()).unwrap();
        assert_eq!(w.cover.defining.to_string(), "t");
        let r = w.reparametrization.as_ref().unwrap();
        assert_eq!(r.to_string(), "t = s^2");
        let report = verify_splitting_witness(&class(vec![sym(&[-1], &[0, 1])]), &w).unwrap();
        assert!(report.verified);
    }

    #[test]
    fn witness_rejects_unramified_symbol() {
        assert!(matches!(
            splitting_witness(&sym(&[2], &[3]), 2, &zero()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn pullback_examples() {
        let r = Reparametrization::new(rp(&[1, 1])).unwrap();
        let c = class(vec![sym(&[0, 1], &[-1, 1])]);
        assert_eq!(pullback_class(&c, &r).display_with("s").to_string(), "(s + 1, s)");
        let k = class(vec![sym(&[-1], &[-1])]);
        assert_eq!(pullback_class(&k, &r).to_string(), "(-1, -1)");
    }

    #[test]
    fn partial_witness_leaves_other_ramification() {
        // (-1, t^2 + 1) would be zero: -1 is a square in Q(i)
        let c = class(vec![sym(&[5], &[0, 1]), sym(&[-1], &[-2, 0, 1])]);
        let w = witness_for_class(&c, &zero()).unwrap();
        let report = verify_splitting_witness(&c, &w).unwrap();
        assert!(report.verified);
        assert!(!report.bare_symbol);
        assert_eq!(report.residues_above_killed, Some(true));
        assert!(!report.pulled_back_divisor.as_ref().unwrap().is_empty());
    }

    #[test]
    fn zero_class_is_trivially_verified() {
        let w = splitting_witness(&sym(&[5], &[0, 1]), 2, &zero()).unwrap();
        let report = verify_splitting_witness(&class(vec![]), &w).unwrap();
        assert!(report.verified);
    }

    #[test]
    fn unramified_cover_examples() {
        // (-1, t(t - 1)) ramifies at (t) and (t - 1) only
        let c = class(vec![sym(&[-1], &[0, -1, 1])]);
        let u = make_unramified_cover(&c, &Rationals.from_i64(2), None).unwrap();
        assert!(u.pole_point.is_infinity());
        assert_eq!(u.f.to_string(), "t^2 - t");
        assert_eq!(u.cover.defining.to_string(), "2*t^2 - 2*t");
        assert!(u.certified);
        assert_eq!(u.cover.fiber_display(), "(T - 2)*(T + 2)");

        // (-1, t) ramifies at (t) and at infinity
        let c = class(vec![sym(&[-1], &[0, 1])]);
        let u = make_unramified_cover(&c, &Rationals.from_i64(1), None).unwrap();
        assert!(u.certified);
        assert!(!u.pole_point.is_infinity());
        assert!(make_unramified_cover(&c, &Rationals.from_i64(0), None).is_err());
        assert!(make_unramified_cover(&c, &Rationals.from_i64(1), Some(&ClosedPoint::Infinity)).is_err());
    }

    #[test]
    fn finite_field_witness_for_cubes() {
        let f7 = FiniteField::new(7).unwrap();
        let s = Symbol::new(RationalFunction::from_i64(&f7, 3), RationalFunction::t(&f7)).unwrap();
        let c = BrauerClass::new(&f7, 3, vec![s.clone()]).unwrap();
        let w = splitting_witness(&s, 3, &f7.from_i64(0)).unwrap();
        let report = verify_splitting_witness(&c, &w).unwrap();
        assert!(report.verified);
        assert_eq!(report.pullback_is_zero, Some(true));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn affine_pullback_moves_the_divisor(
            a in proptest::collection::vec(-5i64..=5, 1..=3),
            b in proptest::collection::vec(-5i64..=5, 1..=3),
            alpha in prop_oneof![-3i64..=-1, 1i64..=3],
            beta in -3i64..=3,
        ) {
            let (pa, pb) = (q(&a), q(&b));
            prop_assume!(!pa.is_zero() && !pb.is_zero());
            let c = class(vec![Symbol::new(pa.into(), pb.into()).unwrap()]);
            let r = Reparametrization::new(rp(&[beta, alpha])).unwrap();
            let pulled = pullback_class(&c, &r);
            let d = c.ramification_divisor().unwrap();
            let e = pulled.ramification_divisor().unwrap();
            prop_assert_eq!(d.len(), e.len());
            // t = alpha s + beta sends the point (pi(t)) to (pi(alpha s + beta))
            for (x, res) in d.entries() {
                let y = match x {
                    ClosedPoint::Infinity => ClosedPoint::Infinity,
                    ClosedPoint::Finite(pi) => ClosedPoint::Finite(pi.compose(r.substitution().num()).monic()),
                };
                let other = e.get(&y);
                prop_assert!(other.is_some());
                let lhs = res.value().norm().unwrap();
                let rhs = other.unwrap().value().norm().unwrap();
                prop_assert!(crate::field::is_rational_square(&(lhs * rhs)));
            }
        }

        #[test]
        fn pullback_preserves_constants(a in -30i64..30, b in -30i64..30, alpha in 1i64..4, beta in -3i64..3) {
            prop_assume!(a != 0 && b != 0);
            let c = class(vec![sym(&[a], &[b])]);
            let r = Reparametrization::new(rp(&[beta, 0, alpha])).unwrap();
            let pulled = pullback_class(&c, &r);
            prop_assert!(pulled.ramification_divisor().unwrap().is_empty());
            let x = Rationals.from_i64(1);
            prop_assert_eq!(
                pulled.specialize_at(&x).unwrap().ramified_places().unwrap(),
                c.specialize_at(&x).unwrap().ramified_places().unwrap()
            );
        }
    }
}
