//! Residue fields `k[t]/(pi)` and Kummer classes in them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::base::BaseField;
use crate::error::{Error, Result};
use crate::factor::factor_rational;
use crate::field::{is_rational_square, Field, Rationals};
use crate::point::ClosedPoint;
use crate::poly::{interpolate, Poly};

/// Element of `k[t]/(modulus)`, `modulus` monic irreducible; the
/// representative is always reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueElement<F: Field> {
    modulus: Poly<F>,
    rep: Poly<F>,
}

impl<F: Field> ResidueElement<F> {
    pub fn new(modulus: Poly<F>, rep: Poly<F>) -> Self {
        let rep = rep.rem(&modulus);
        ResidueElement { modulus, rep }
    }

    pub fn constant(modulus: Poly<F>, c: F::Elem) -> Self {
        let rep = Poly::constant(modulus.field(), c);
        Self::new(modulus, rep)
    }

    pub fn one(modulus: Poly<F>) -> Self {
        let f = modulus.field().clone();
        Self::constant(modulus, f.one())
    }

    pub fn field(&self) -> &F {
        self.modulus.field()
    }
    pub fn modulus(&self) -> &Poly<F> {
        &self.modulus
    }
    pub fn rep(&self) -> &Poly<F> {
        &self.rep
    }
    /// Degree of the residue field over `k`.
    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    /// The value as an element of `k`, when the representative is constant.
    pub fn as_constant(&self) -> Option<F::Elem> {
        self.rep.is_constant().then(|| self.rep.coeff(0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.modulus.clone(), &self.rep * &other.rep)
    }

    pub fn inv(&self) -> Option<Self> {
        let r = self.rep.inv_mod(&self.modulus)?;
        Some(Self::new(self.modulus.clone(), r))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.modulus.clone(), -&self.rep)
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = num_bigint::BigUint::from(e.unsigned_abs());
        let rep = base.rep.pow_mod(&e, &self.modulus);
        Some(Self::new(self.modulus.clone(), rep))
    }

    /// Norm to `k`, `Res(modulus, rep)`; multiplicative.
    pub fn norm(&self) -> Result<F::Elem> {
        if self.is_zero() {
            return Err(Error::ZeroInput("norm of zero"));
        }
        Ok(self.modulus.resultant(&self.rep))
    }
}

impl<F: Field> fmt::Display for ResidueElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// Norm of a number field element to `Q`.
pub fn nf_norm(e: &ResidueElement<Rationals>) -> Result<BigRational> {
    e.norm()
}

/// Whether `e` is a `p`-th power in its residue field.
pub fn nf_is_pth_power<K: BaseField>(e: &ResidueElement<K>, p: u32) -> Result<bool> {
    e.field().is_pth_power(e, p)
}

/// Maximum number of shifts tried before giving up on a squarefree norm.
const MAX_SHIFTS: i64 = 64;

/// Square test in `Q[t]/(pi)`: with `R_s(X) = Res_t(pi(t), (X - s t)^2 - e(t))`
/// squarefree, `e` is a square iff `R_s` is reducible over `Q`.
pub(crate) fn nf_is_square(e: &ResidueElement<Rationals>) -> Result<bool> {
    if e.is_zero() {
        return Err(Error::ZeroInput("square test of zero"));
    }
    let pi = e.modulus();
    let d = pi.deg();
    if d == 1 {
        let c = e.rep().coeff(0);
        return Ok(is_rational_square(&c));
    }
    let q = &Rationals;
    for k in 0..MAX_SHIFTS {
        let s = if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 };
        let shift = Poly::monomial(q, q.from_i64(s), 1);
        let points: Vec<(BigRational, BigRational)> = (0..=2 * d as i64)
            .map(|x| {
                let x = q.from_i64(x);
                let lin = &Poly::constant(q, x.clone()) - &shift;
                let g = &(&lin * &lin) - e.rep();
                (x, pi.resultant(&g))
            })
            .collect();
        let r = interpolate(q, &points);
        if r.is_squarefree() {
            return Ok(factor_rational(&r).factors.len() > 1);
        }
    }
    Err(Error::Internal(format!(
        "no squarefree norm found for {} mod {}",
        e.rep(),
        pi
    )))
}

/// A Kummer class in `kappa(x)^* / (kappa(x)^*)^p` attached to a closed point.
#[derive(Clone, Debug)]
pub struct ResidueClass<F: Field> {
    point: ClosedPoint<F>,
    value: ResidueElement<F>,
    torsion: u32,
    trivial: bool,
    exponent: Option<u32>,
}

impl<K: BaseField> ResidueClass<K> {
    /// Canonicalizes the representative and decides triviality.
    pub fn new(point: ClosedPoint<K>, value: ResidueElement<K>, torsion: u32) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::ZeroInput("residue value"));
        }
        let field = value.field().clone();
        if value.modulus() != &point.residue_modulus(&field) {
            return Err(Error::Mismatch(format!(
                "residue value lives modulo {}, point is {}",
                value.modulus(),
                point
            )));
        }
        let trivial = field.is_pth_power(&value, torsion)?;
        let exponent = field.class_exponent(&value, torsion);
        let value = field.canonical_residue(value, torsion);
        Ok(ResidueClass {
            point,
            value,
            torsion,
            trivial,
            exponent,
        })
    }

    pub fn point(&self) -> &ClosedPoint<K> {
        &self.point
    }
    pub fn value(&self) -> &ResidueElement<K> {
        &self.value
    }
    pub fn torsion(&self) -> u32 {
        self.torsion
    }
    pub fn is_trivial(&self) -> bool {
        self.trivial
    }
    /// Over `F_q`: the class as an exponent mod `p` of the fixed generator,
    /// read through the norm to `F_q`.
    pub fn exponent(&self) -> Option<u32> {
        self.exponent
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.point != other.point || self.torsion != other.torsion {
            return Err(Error::Mismatch(format!(
                "residue classes at {} (p = {}) and {} (p = {})",
                self.point, self.torsion, other.point, other.torsion
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Self::new(
            self.point.clone(),
            self.value.mul(&other.value),
            self.torsion,
        )
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let v = self
            .value
            .pow(e)
            .ok_or(Error::ZeroInput("residue value"))?;
        Self::new(self.point.clone(), v, self.torsion)
    }

    /// Equality in `kappa(x)^* / (kappa(x)^*)^p`.
    pub fn same_class(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        if let (Some(a), Some(b)) = (self.exponent, other.exponent) {
            return Ok(a == b);
        }
        let ratio = self
            .value
            .div(&other.value)
            .ok_or(Error::ZeroInput("residue value"))?;
        self.value.field().is_pth_power(&ratio, self.torsion)
    }

    /// Human description of the residue field and the Kummer extension.
    pub fn describe(&self) -> String {
        self.value
            .field()
            .describe_extension(&self.value, self.torsion, self.trivial)
    }
}

/// Whether the two classes cut out the same degree-`p` cyclic extension of
/// `kappa(x)`, i.e. `r2 = r1^i` modulo `p`-th powers for some `1 <= i < p`.
/// Two trivial classes both give the split extension.
pub fn same_cyclic_extension<K: BaseField>(r1: &ResidueClass<K>, r2: &ResidueClass<K>) -> Result<bool> {
    r1.check_compatible(r2)?;
    match (r1.is_trivial(), r2.is_trivial()) {
        (true, true) => return Ok(true),
        (true, false) | (false, true) => return Ok(false),
        _ => {}
    }
    for i in 1..r1.torsion() as i64 {
        if r1.pow(i)?.same_class(r2)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Label `Q(sqrt d)` (or `Q(i)`) for a squarefree integer `d`.
pub(crate) fn quadratic_label(d: &BigInt) -> String {
    if *d == BigInt::from(-1) {
        "Q(i)".to_string()
    } else {
        format!("Q(√{d})")
    }
}
