//! Rational functions in one variable.

use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// `num / den` in lowest terms with `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroInput("denominator"));
        }
        let field = den.field().clone();
        if num.is_zero() {
            return Ok(Self::from_poly(Poly::zero(&field)));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.lc();
        let inv = field.inv(&lc).expect("leading coefficient is nonzero");
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        let den = Poly::one(p.field());
        RationalFunction { num: p, den }
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    pub fn from_i64(field: &F, c: i64) -> Self {
        Self::constant(field, field.from_i64(c))
    }

    /// The coordinate function `t`.
    pub fn t(field: &F) -> Self {
        Self::from_poly(Poly::x(field))
    }

    pub fn field(&self) -> &F {
        self.num.field()
    }
    pub fn num(&self) -> &Poly<F> {
        &self.num
    }
    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if this function is constant.
    pub fn as_constant(&self) -> Option<F::Elem> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den).expect("nonzero denominator")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput("inverse of zero"));
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::Precondition("exponent too large".into()))?;
        Ok(RationalFunction {
            num: base.num.pow(n),
            den: base.den.pow(n),
        })
    }

    /// Value at `t = c`, `None` at a pole.
    pub fn eval(&self, c: &F::Elem) -> Option<F::Elem> {
        let f = self.field();
        f.div(&self.num.eval(c), &self.den.eval(c))
    }

    /// Value at infinity, `None` at a pole.
    pub fn value_at_infinity(&self) -> Option<F::Elem> {
        let f = self.field();
        if self.is_zero() {
            return Some(f.zero());
        }
        match self.num.deg().cmp(&self.den.deg()) {
            std::cmp::Ordering::Less => Some(f.zero()),
            std::cmp::Ordering::Equal => f.div(&self.num.lc(), &self.den.lc()),
            std::cmp::Ordering::Greater => None,
        }
    }

    /// `self(s)` with `s` another rational function. `s` must be nonconstant.
    pub fn compose(&self, s: &Self) -> Self {
        let (a, b) = (&s.num, &s.den);
        let n = self.num.deg();
        let m = self.den.deg();
        let top = homogenize(&self.num, a, b, n);
        let bottom = homogenize(&self.den, a, b, m);
        let (top, bottom) = if m >= n {
            (&top * &b.pow((m - n) as u32), bottom)
        } else {
            (top, &bottom * &b.pow((n - m) as u32))
        };
        Self::new(top, bottom).expect("substitution is nonconstant")
    }

    pub fn display_with<'a>(&'a self, var: &'a str) -> RatDisplay<'a, F> {
        RatDisplay { f: self, var }
    }
}

/// `sum c_i a^i b^(n-i)`.
fn homogenize<F: Field>(p: &Poly<F>, a: &Poly<F>, b: &Poly<F>, n: usize) -> Poly<F> {
    let field = p.field();
    let mut out = Poly::zero(field);
    for (i, c) in p.coeffs().iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        let term = &a.pow(i as u32) * &b.pow((n - i) as u32);
        out = &out + &term.scale(c);
    }
    out
}

impl<F: Field> From<Poly<F>> for RationalFunction<F> {
    fn from(p: Poly<F>) -> Self {
        Self::from_poly(p)
    }
}

pub struct RatDisplay<'a, F: Field> {
    f: &'a RationalFunction<F>,
    var: &'a str,
}

impl<F: Field> fmt::Display for RatDisplay<'_, F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = (&self.f.num, &self.f.den);
        if den.is_one() {
            write!(out, "{}", num.display_with(self.var))
        } else {
            write!(
                out,
                "({})/({})",
                num.display_with(self.var),
                den.display_with(self.var)
            )
        }
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("t").fmt(f)
    }
}
