//! Brauer classes of `k(t)` presented as sums of symbols.

use std::collections::BTreeMap;
use std::fmt;

use crate::base::BaseField;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert::Place;
use crate::point::ClosedPoint;
use crate::ratfunc::RationalFunction;
use crate::residue::{ResidueClass, ResidueElement};

/// The symbol algebra `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol<F: Field> {
    pub left: RationalFunction<F>,
    pub right: RationalFunction<F>,
}

impl<F: Field> Symbol<F> {
    pub fn new(left: RationalFunction<F>, right: RationalFunction<F>) -> Result<Self> {
        if left.is_zero() || right.is_zero() {
            return Err(Error::ZeroInput("symbol entry"));
        }
        Ok(Symbol { left, right })
    }

    pub fn is_constant(&self) -> bool {
        self.left.is_constant() && self.right.is_constant()
    }

    pub fn display_with<'a>(&'a self, var: &'a str) -> SymbolDisplay<'a, F> {
        SymbolDisplay { s: self, var }
    }

    fn sort_key(&self) -> (String, String) {
        (self.left.to_string(), self.right.to_string())
    }
}

pub struct SymbolDisplay<'a, F: Field> {
    s: &'a Symbol<F>,
    var: &'a str,
}

impl<F: Field> fmt::Display for SymbolDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            self.s.left.display_with(self.var),
            self.s.right.display_with(self.var)
        )
    }
}

impl<F: Field> fmt::Display for Symbol<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("t").fmt(f)
    }
}

/// A class in `Br(k(t))[p]` as a formal sum of symbols.
///
/// There is deliberately no `PartialEq`: two presentations of the same class
/// can look entirely different. Use [`classes_equal`].
#[derive(Clone, Debug)]
pub struct BrauerClass<F: Field> {
    field: F,
    torsion: u32,
    symbols: Vec<Symbol<F>>,
}

impl<F: Field> BrauerClass<F> {
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn torsion(&self) -> u32 {
        self.torsion
    }
    pub fn symbols(&self) -> &[Symbol<F>] {
        &self.symbols
    }
    /// Whether the presentation has no symbols (which implies the zero class).
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn display_with<'a>(&'a self, var: &'a str) -> ClassDisplay<'a, F> {
        ClassDisplay { c: self, var }
    }
}

impl<K: BaseField> BrauerClass<K> {
    pub fn new(field: &K, torsion: u32, symbols: Vec<Symbol<K>>) -> Result<Self> {
        field.check_torsion(torsion)?;
        for s in &symbols {
            if s.left.field() != field || s.right.field() != field {
                return Err(Error::Mismatch("symbol entry over a different field".into()));
            }
            if s.left.is_zero() || s.right.is_zero() {
                return Err(Error::ZeroInput("symbol entry"));
            }
        }
        Ok(BrauerClass {
            field: field.clone(),
            torsion,
            symbols,
        })
    }

    pub fn zero(field: &K, torsion: u32) -> Result<Self> {
        Self::new(field, torsion, Vec::new())
    }

    /// The single symbol `(a, b)`.
    pub fn symbol(field: &K, torsion: u32, a: RationalFunction<K>, b: RationalFunction<K>) -> Result<Self> {
        Self::new(field, torsion, vec![Symbol::new(a, b)?])
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.torsion != other.torsion {
            return Err(Error::Mismatch(format!(
                "classes over {} (p = {}) and {} (p = {})",
                self.field.label(),
                self.torsion,
                other.field.label(),
                other.torsion
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut symbols = self.symbols.clone();
        symbols.extend(other.symbols.iter().cloned());
        Ok(BrauerClass {
            field: self.field.clone(),
            torsion: self.torsion,
            symbols,
        })
    }

    /// Additive inverse, using `-(a, b) = (1/a, b)`.
    pub fn negate(&self) -> Self {
        if self.torsion == 2 {
            return self.clone();
        }
        let symbols = self
            .symbols
            .iter()
            .map(|s| Symbol {
                left: s.left.inv().expect("entries are nonzero"),
                right: s.right.clone(),
            })
            .collect();
        BrauerClass {
            field: self.field.clone(),
            torsion: self.torsion,
            symbols,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negate())
    }

    /// A tidier presentation of the same class for reports: drops symbols
    /// with a `p`-th power constant entry or of the form `(x, -x)`, orders
    /// entries and symbols, and cancels repeated pairs when `p = 2`.
    pub fn normal_form(&self) -> Self {
        let field = &self.field;
        let p = self.torsion;
        let split_constant = |f: &RationalFunction<K>| {
            f.as_constant()
                .map(|c| field.is_pth_power_in_base(&c, p).unwrap_or(false))
                .unwrap_or(false)
        };
        let mut kept: Vec<Symbol<K>> = Vec::new();
        for s in &self.symbols {
            if split_constant(&s.left) || split_constant(&s.right) || s.right == s.left.neg() {
                continue;
            }
            let mut s = s.clone();
            if p == 2 && s.right.sort_key_str() < s.left.sort_key_str() {
                std::mem::swap(&mut s.left, &mut s.right);
            }
            kept.push(s);
        }
        kept.sort_by_key(|s| s.sort_key());
        if p == 2 {
            let mut out: Vec<Symbol<K>> = Vec::new();
            for s in kept {
                if out.last() == Some(&s) {
                    out.pop();
                } else {
                    out.push(s);
                }
            }
            kept = out;
        }
        BrauerClass {
            field: self.field.clone(),
            torsion: p,
            symbols: kept,
        }
    }

    /// Closed points where some entry has a zero or pole, and infinity.
    pub fn candidate_points(&self) -> Vec<ClosedPoint<K>> {
        let mut pts = vec![ClosedPoint::Infinity];
        for s in &self.symbols {
            for f in [&s.left, &s.right] {
                pts.extend(ClosedPoint::support_of(f));
            }
        }
        pts.sort();
        pts.dedup();
        pts
    }

    /// The residue `ram_x` of the class, computed symbol by symbol with the
    /// tame symbol `(-1)^(v(a) v(b)) a^v(b) / b^v(a)` reduced at `x`.
    pub fn residue_at(&self, x: &ClosedPoint<K>) -> Result<ResidueClass<K>> {
        let modulus = x.residue_modulus(&self.field);
        let mut acc = ResidueElement::one(modulus);
        for s in &self.symbols {
            let (va, ua) = x.unit_part(&s.left)?;
            let (vb, ub) = x.unit_part(&s.right)?;
            let mut term = ua
                .pow(vb)
                .and_then(|a| Some(a.mul(&ub.pow(-va)?)))
                .ok_or_else(|| Error::Internal("unit part reduced to zero".into()))?;
            if (va * vb) % 2 != 0 {
                term = term.neg();
            }
            acc = acc.mul(&term);
        }
        ResidueClass::new(x.clone(), acc, self.torsion)
    }

    pub fn ramification_divisor(&self) -> Result<RamificationDivisor<K>> {
        let mut entries = BTreeMap::new();
        for x in self.candidate_points() {
            let r = self.residue_at(&x)?;
            if !r.is_trivial() {
                entries.insert(x, r);
            }
        }
        Ok(RamificationDivisor {
            field: self.field.clone(),
            torsion: self.torsion,
            entries,
        })
    }

    /// Whether every entry is a unit at `x`.
    pub fn is_symbol_regular_at(&self, x: &ClosedPoint<K>) -> bool {
        self.symbols.iter().all(|s| {
            [&s.left, &s.right]
                .iter()
                .all(|f| x.valuation(f).map(|v| v == 0).unwrap_or(false))
        })
    }

    /// The constant class obtained by evaluating every entry at the rational
    /// point `x`; requires all entries to be units there.
    pub fn specialize(&self, x: &ClosedPoint<K>) -> Result<ConstantClass<K>> {
        if x.degree() != 1 {
            return Err(Error::Precondition(format!(
                "specialization needs a rational point, got {x}"
            )));
        }
        let mut out = Vec::with_capacity(self.symbols.len());
        for s in &self.symbols {
            let mut pair = Vec::with_capacity(2);
            for f in [&s.left, &s.right] {
                let (v, u) = x.unit_part(f)?;
                if v != 0 {
                    return Err(Error::NotSymbolRegular {
                        point: x.to_string(),
                        detail: format!("{f} has valuation {v}"),
                    });
                }
                pair.push(u.as_constant().expect("rational residue field"));
            }
            let b = pair.pop().unwrap();
            let a = pair.pop().unwrap();
            out.push((a, b));
        }
        ConstantClass::new(&self.field, self.torsion, out)
    }

    /// Specialization at `t = c`.
    pub fn specialize_at(&self, c: &K::Elem) -> Result<ConstantClass<K>> {
        self.specialize(&ClosedPoint::rational(&self.field, c))
    }

    /// Substitutes `t = r(s)` into every entry.
    pub fn pullback(&self, r: &RationalFunction<K>) -> Self {
        let symbols = self
            .symbols
            .iter()
            .map(|s| Symbol {
                left: s.left.compose(r),
                right: s.right.compose(r),
            })
            .collect();
        BrauerClass {
            field: self.field.clone(),
            torsion: self.torsion,
            symbols,
        }
    }
}

impl<F: Field> RationalFunction<F> {
    fn sort_key_str(&self) -> String {
        self.to_string()
    }
}

pub struct ClassDisplay<'a, F: Field> {
    c: &'a BrauerClass<F>,
    var: &'a str,
}

impl<F: Field> fmt::Display for ClassDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.symbols.is_empty() {
            return f.write_str("0");
        }
        for (i, s) in self.c.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", s.display_with(self.var))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for BrauerClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("t").fmt(f)
    }
}

/// Nontrivial residues of a class, keyed by closed point.
#[derive(Clone, Debug)]
pub struct RamificationDivisor<F: Field> {
    field: F,
    torsion: u32,
    entries: BTreeMap<ClosedPoint<F>, ResidueClass<F>>,
}

impl<F: Field> RamificationDivisor<F> {
    pub fn entries(&self) -> &BTreeMap<ClosedPoint<F>, ResidueClass<F>> {
        &self.entries
    }
    pub fn support(&self) -> impl Iterator<Item = &ClosedPoint<F>> {
        self.entries.keys()
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn get(&self, x: &ClosedPoint<F>) -> Option<&ResidueClass<F>> {
        self.entries.get(x)
    }
    pub fn torsion(&self) -> u32 {
        self.torsion
    }
    pub fn contains(&self, x: &ClosedPoint<F>) -> bool {
        self.entries.contains_key(x)
    }
}

impl<K: BaseField> RamificationDivisor<K> {
    /// A divisor from explicit data; trivial entries are dropped.
    pub fn from_entries(field: &K, torsion: u32, residues: Vec<ResidueClass<K>>) -> Result<Self> {
        field.check_torsion(torsion)?;
        let mut entries = BTreeMap::new();
        for r in residues {
            if r.torsion() != torsion {
                return Err(Error::Mismatch("residue torsion".into()));
            }
            if r.is_trivial() {
                continue;
            }
            if entries.insert(r.point().clone(), r).is_some() {
                return Err(Error::Precondition("repeated point in divisor".into()));
            }
        }
        Ok(RamificationDivisor {
            field: field.clone(),
            torsion,
            entries,
        })
    }

    /// The reciprocity law: the product of the norms of all residues is a
    /// `p`-th power in `k`.
    pub fn reciprocity_check(&self) -> Result<bool> {
        let f = &self.field;
        let mut prod = f.one();
        for r in self.entries.values() {
            prod = f.mul(&prod, &r.value().norm()?);
        }
        f.is_pth_power_in_base(&prod, self.torsion)
    }

    /// The first point where the two divisors carry different classes.
    pub fn first_difference(&self, other: &Self) -> Result<Option<ClosedPoint<K>>> {
        let mut pts: Vec<&ClosedPoint<K>> = self.support().chain(other.support()).collect();
        pts.sort();
        pts.dedup();
        for x in pts {
            match (self.get(x), other.get(x)) {
                (Some(a), Some(b)) if a.same_class(b)? => {}
                _ => return Ok(Some(x.clone())),
            }
        }
        Ok(None)
    }

    /// Exponent data of every entry, where the backend provides exponents.
    pub fn twist_sequence(&self) -> Option<TwistSequence<K>> {
        let exponents = self
            .entries
            .iter()
            .map(|(x, r)| r.exponent().map(|e| (x.clone(), e)))
            .collect::<Option<Vec<_>>>()?;
        Some(TwistSequence { exponents })
    }
}

/// Residue exponents `i_j` attached to the points of a ramification support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistSequence<F: Field> {
    pub exponents: Vec<(ClosedPoint<F>, u32)>,
}

impl<F: Field> fmt::Display for TwistSequence<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (_, e)) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// A sum of symbols with entries in the base field `k`.
#[derive(Clone, Debug)]
pub struct ConstantClass<F: Field> {
    field: F,
    torsion: u32,
    symbols: Vec<(F::Elem, F::Elem)>,
}

impl<K: BaseField> ConstantClass<K> {
    pub fn new(field: &K, torsion: u32, symbols: Vec<(K::Elem, K::Elem)>) -> Result<Self> {
        field.check_torsion(torsion)?;
        if symbols.iter().any(|(a, b)| field.is_zero(a) || field.is_zero(b)) {
            return Err(Error::ZeroInput("constant symbol entry"));
        }
        Ok(ConstantClass {
            field: field.clone(),
            torsion,
            symbols,
        })
    }

    pub fn symbols(&self) -> &[(K::Elem, K::Elem)] {
        &self.symbols
    }
    pub fn torsion(&self) -> u32 {
        self.torsion
    }

    /// Places with nonzero local invariant (always empty over `F_q`).
    pub fn ramified_places(&self) -> Result<Vec<Place>> {
        self.field.constant_ramification(&self.symbols, self.torsion)
    }

    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.ramified_places()?.is_empty())
    }
}

impl<F: Field> fmt::Display for ConstantClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return f.write_str("0");
        }
        for (i, (a, b)) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({}, {})", self.field.display(a), self.field.display(b))?;
        }
        Ok(())
    }
}

/// Whether a constant class vanishes in `Br(k)`.
pub fn constant_is_trivial<K: BaseField>(g: &ConstantClass<K>) -> Result<bool> {
    g.is_trivial()
}

/// The first rational point in sweep order, outside `avoid`, at which every
/// class is symbol-regular. Looks at no more than `limit` points.
pub fn regular_point<K: BaseField>(
    classes: &[&BrauerClass<K>],
    avoid: &[&ClosedPoint<K>],
    limit: usize,
) -> Option<K::Elem> {
    let field = classes.first()?.field().clone();
    field.sweep().take(limit).find(|c| {
        let x = ClosedPoint::rational(&field, c);
        !avoid.contains(&&x) && classes.iter().all(|a| a.is_symbol_regular_at(&x))
    })
}

/// Points examined when looking for a symbol-regular specialization.
const REGULAR_SEARCH: usize = 10_000;

/// Evidence for the answer of [`classes_equal`].
#[derive(Clone, Debug)]
pub enum EqualityCertificate<F: Field> {
    /// The residues at `point` differ, so the classes differ.
    ResidueMismatch {
        point: ClosedPoint<F>,
        left: ResidueClass<F>,
        right: ResidueClass<F>,
    },
    /// Residues agree everywhere and `Br(k) = 0`, so the classes are equal.
    ResiduesAgree,
    /// Residues agree; the difference is the constant class obtained by
    /// specializing `a - b` at `t = at`.
    ConstantDifference {
        at: F::Elem,
        difference: ConstantClass<F>,
        ramified: Vec<Place>,
    },
}

impl<F: Field> EqualityCertificate<F> {
    pub fn is_equal(&self) -> bool {
        match self {
            EqualityCertificate::ResidueMismatch { .. } => false,
            EqualityCertificate::ResiduesAgree => true,
            EqualityCertificate::ConstantDifference { ramified, .. } => ramified.is_empty(),
        }
    }
}

/// Decides `a = b` in `Br(k(t))` and says why.
pub fn equality_certificate<K: BaseField>(a: &BrauerClass<K>, b: &BrauerClass<K>) -> Result<EqualityCertificate<K>> {
    a.check_compatible(b)?;
    let da = a.ramification_divisor()?;
    let db = b.ramification_divisor()?;
    if let Some(point) = da.first_difference(&db)? {
        return Ok(EqualityCertificate::ResidueMismatch {
            left: a.residue_at(&point)?,
            right: b.residue_at(&point)?,
            point,
        });
    }
    let field = a.field();
    // Br(F_q) = 0
    if field.order().is_some() {
        return Ok(EqualityCertificate::ResiduesAgree);
    }
    let diff = a.sub(b)?;
    let at = regular_point(&[&diff], &[], REGULAR_SEARCH).ok_or_else(|| {
        Error::Internal("no symbol-regular rational point found".into())
    })?;
    let difference = diff.specialize_at(&at)?;
    let ramified = difference.ramified_places()?;
    Ok(EqualityCertificate::ConstantDifference {
        at,
        difference,
        ramified,
    })
}

/// Exact equality in `Br(k(t))`.
pub fn classes_equal<K: BaseField>(a: &BrauerClass<K>, b: &BrauerClass<K>) -> Result<bool> {
    Ok(equality_certificate(a, b)?.is_equal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};
    use crate::poly::Poly;
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

    fn pt(c: &[i64]) -> ClosedPoint<Rationals> {
        ClosedPoint::Finite(q(c))
    }

    fn residue_const(r: &ResidueClass<Rationals>) -> i64 {
        use num_traits::ToPrimitive;
        r.value().as_constant().unwrap().to_integer().to_i64().unwrap()
    }

    #[test]
    fn residue_examples() {
        let c = class(vec![sym(&[5], &[0, 1])]);
        let r = c.residue_at(&pt(&[0, 1])).unwrap();
        assert_eq!(residue_const(&r), 5);
        assert!(!r.is_trivial());

        let c = class(vec![sym(&[0, 1], &[0, 1])]);
        assert_eq!(residue_const(&c.residue_at(&pt(&[0, 1])).unwrap()), -1);

        let c = class(vec![sym(&[0, 1], &[-2, 0, 1])]);
        let r = c.residue_at(&pt(&[-2, 0, 1])).unwrap();
        assert_eq!(r.value().rep(), &q(&[0, 1]));
        assert!(!r.is_trivial());
    }

    #[test]
    fn divisor_examples() {
        let d = class(vec![sym(&[5], &[0, 1])]).ramification_divisor().unwrap();
        let pts: Vec<String> = d.support().map(|x| x.to_string()).collect();
        assert_eq!(pts, ["(t)", "∞"]);
        assert_eq!(residue_const(d.get(&ClosedPoint::Infinity).unwrap()), 5);
        assert!(d.reciprocity_check().unwrap());

        assert!(class(vec![sym(&[-1], &[-1])]).ramification_divisor().unwrap().is_empty());

        let d = class(vec![sym(&[0, 1], &[-2, 0, 1])]).ramification_divisor().unwrap();
        let pts: Vec<String> = d.support().map(|x| x.to_string()).collect();
        assert_eq!(pts, ["(t)", "(t^2 - 2)"]);
        assert_eq!(residue_const(d.get(&pt(&[0, 1])).unwrap()), -2);
        assert!(d.reciprocity_check().unwrap());
    }

    #[test]
    fn lone_residue_violates_reciprocity() {
        let r = ResidueClass::new(
            pt(&[0, 1]),
            ResidueElement::constant(q(&[0, 1]), Rationals.from_i64(3)),
            2,
        )
        .unwrap();
        let d = RamificationDivisor::from_entries(&Rationals, 2, vec![r]).unwrap();
        assert!(!d.reciprocity_check().unwrap());
    }

    #[test]
    fn specialization_examples() {
        let c = class(vec![sym(&[5], &[1, 0, 1])]);
        let s = c.specialize_at(&Rationals.from_i64(1)).unwrap();
        assert_eq!(s.to_string(), "(5, 2)");
        let c = class(vec![sym(&[0, 1], &[-1, 1])]);
        assert_eq!(c.specialize_at(&Rationals.from_i64(3)).unwrap().to_string(), "(3, 2)");
        assert!(matches!(
            c.specialize_at(&Rationals.from_i64(1)),
            Err(Error::NotSymbolRegular { .. })
        ));
    }

    #[test]
    fn constant_triviality() {
        let cc = |a: i64, b: i64| {
            ConstantClass::new(&Rationals, 2, vec![(Rationals.from_i64(a), Rationals.from_i64(b))]).unwrap()
        };
        assert!(constant_is_trivial(&cc(1, 7)).unwrap());
        assert!(!constant_is_trivial(&cc(-1, -1)).unwrap());
        assert!(constant_is_trivial(&cc(2, -1)).unwrap());
        let f7 = FiniteField::new(7).unwrap();
        let g = ConstantClass::new(&f7, 3, vec![(f7.from_i64(3), f7.from_i64(5))]).unwrap();
        assert!(constant_is_trivial(&g).unwrap());
        assert!(ConstantClass::new(&Rationals, 3, vec![]).is_err());
    }

    #[test]
    fn equality_examples() {
        let a = class(vec![sym(&[-1, 1], &[0, 1]), sym(&[5], &[1, 0, 1])]);
        assert!(classes_equal(&a, &a.clone()).unwrap());
        let doubled = class(vec![sym(&[0, 1], &[-1]), sym(&[0, 1], &[-1])]);
        assert!(classes_equal(&doubled, &class(vec![])).unwrap());
        let x = class(vec![sym(&[5], &[0, 1])]);
        let y = class(vec![sym(&[5], &[0, 2])]);
        let cert = equality_certificate(&x, &y).unwrap();
        assert!(!cert.is_equal());
        assert!(matches!(cert, EqualityCertificate::ConstantDifference { .. }));
    }

    #[test]
    fn finite_field_equality_needs_only_residues() {
        let f7 = FiniteField::new(7).unwrap();
        let t = RationalFunction::t(&f7);
        let c = |a: i64| RationalFunction::from_i64(&f7, a);
        let a = BrauerClass::symbol(&f7, 3, c(3), t.clone()).unwrap();
        // (3, t) + (3, t) + (3, t) = (27, t) = (6, t) = 0 since 6 = 3^3 in F_7
        let triple = a.add(&a).unwrap().add(&a).unwrap();
        assert!(classes_equal(&triple, &BrauerClass::zero(&f7, 3).unwrap()).unwrap());
        assert!(!classes_equal(&a, &a.add(&a).unwrap()).unwrap());
        assert!(BrauerClass::symbol(&f7, 5, c(3), t).is_err());
    }

    #[test]
    fn normal_form_is_a_presentation_of_the_same_class() {
        let a = class(vec![
            sym(&[0, 1], &[-1]),
            sym(&[4], &[0, 1]),
            sym(&[-1], &[0, 1]),
            sym(&[0, -1], &[0, 1]),
        ]);
        let n = a.normal_form();
        assert_eq!(n.to_string(), "0");
        assert!(classes_equal(&a, &n).unwrap());
    }

    fn arb_qpoly(max_deg: usize, height: i64) -> impl Strategy<Value = Poly<Rationals>> {
        proptest::collection::vec(-height..=height, 1..=max_deg + 1)
            .prop_map(|c| q(&c))
            .prop_filter("nonzero", |p| !p.is_zero())
    }

    fn arb_qfun() -> impl Strategy<Value = RationalFunction<Rationals>> {
        (arb_qpoly(2, 6), arb_qpoly(1, 4))
            .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
    }

    fn arb_qclass(max_symbols: usize) -> impl Strategy<Value = BrauerClass<Rationals>> {
        proptest::collection::vec((arb_qfun(), arb_qfun()), 0..=max_symbols).prop_map(|v| {
            class(v.into_iter().map(|(a, b)| Symbol::new(a, b).unwrap()).collect())
        })
    }

    fn arb_fq_class(q: u32, p: u32) -> impl Strategy<Value = BrauerClass<FiniteField>> {
        let coeffs = proptest::collection::vec(0i64..q as i64, 1..=4);
        proptest::collection::vec((coeffs.clone(), coeffs), 1..=3).prop_filter_map("nonzero", move |v| {
            let f = FiniteField::new(q).unwrap();
            let mut symbols = Vec::new();
            for (a, b) in v {
                let a = Poly::from_ints(&f, &a);
                let b = Poly::from_ints(&f, &b);
                symbols.push(Symbol::new(a.into(), b.into()).ok()?);
            }
            BrauerClass::new(&f, p, symbols).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn reciprocity_over_q(c in arb_qclass(2)) {
            prop_assert!(c.ramification_divisor().unwrap().reciprocity_check().unwrap());
        }

        #[test]
        fn reciprocity_over_f7_cubes(c in arb_fq_class(7, 3)) {
            prop_assert!(c.ramification_divisor().unwrap().reciprocity_check().unwrap());
        }

        #[test]
        fn reciprocity_over_f9_squares(c in arb_fq_class(9, 2)) {
            prop_assert!(c.ramification_divisor().unwrap().reciprocity_check().unwrap());
        }

        #[test]
        fn residues_are_bilinear(a in arb_qfun(), b1 in arb_qfun(), b2 in arb_qfun()) {
            let joint = class(vec![Symbol::new(a.clone(), b1.mul(&b2)).unwrap()]);
            let split = class(vec![Symbol::new(a.clone(), b1).unwrap(), Symbol::new(a, b2).unwrap()]);
            for x in joint.candidate_points().into_iter().chain(split.candidate_points()) {
                let r1 = joint.residue_at(&x).unwrap();
                let r2 = split.residue_at(&x).unwrap();
                prop_assert!(r1.same_class(&r2).unwrap(), "at {}", x);
            }
        }

        #[test]
        fn steinberg_relation(a in arb_qfun()) {
            let one = RationalFunction::from_i64(&Rationals, 1);
            let b = one.sub(&a);
            prop_assume!(!b.is_zero());
            let c = class(vec![Symbol::new(a, b).unwrap()]);
            prop_assert!(c.ramification_divisor().unwrap().is_empty());
            let mut found = 0;
            for x in Rationals.sweep().take(200) {
                let pt = ClosedPoint::rational(&Rationals, &x);
                if c.is_symbol_regular_at(&pt) {
                    prop_assert!(c.specialize(&pt).unwrap().is_trivial().unwrap());
                    found += 1;
                    if found == 5 {
                        break;
                    }
                }
            }
            prop_assert_eq!(found, 5);
        }

        #[test]
        fn adding_a_doubled_symbol_is_invisible(c in arb_qclass(2), s in (arb_qfun(), arb_qfun())) {
            let s = class(vec![Symbol::new(s.0, s.1).unwrap()]);
            let bigger = c.add(&s).unwrap().add(&s).unwrap();
            prop_assert!(classes_equal(&c, &bigger).unwrap());
            prop_assert!(classes_equal(&bigger, &c).unwrap());
        }

        #[test]
        fn specialization_matches_entrywise_hilbert_symbols(c in arb_qclass(2), x in -20i64..20) {
            let x = Rationals.from_i64(x);
            let pt = ClosedPoint::rational(&Rationals, &x);
            prop_assume!(c.is_symbol_regular_at(&pt));
            let spec = c.specialize(&pt).unwrap();
            let values: Vec<_> = c
                .symbols()
                .iter()
                .map(|s| (s.left.eval(&x).unwrap(), s.right.eval(&x).unwrap()))
                .collect();
            let places = crate::hilbert::relevant_places(values.iter().flat_map(|(a, b)| [a, b]));
            let expected: Vec<Place> = places
                .into_iter()
                .filter(|v| {
                    values
                        .iter()
                        .map(|(a, b)| crate::hilbert::hilbert_symbol(a, b, v))
                        .product::<i8>()
                        == -1
                })
                .collect();
            prop_assert_eq!(spec.ramified_places().unwrap(), expected);
        }
    }
}
