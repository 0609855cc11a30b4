//! Closed points of the projective line.

use std::cmp::Ordering;
use std::fmt;

use crate::base::BaseField;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::ratfunc::RationalFunction;
use crate::residue::ResidueElement;

/// A closed point of `P^1`: a monic irreducible polynomial, or infinity
/// (uniformizer `1/t`). Infinity sorts after every finite point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClosedPoint<F: Field> {
    Finite(Poly<F>),
    Infinity,
}

impl<F: Field> ClosedPoint<F> {
    /// The rational point `t = c`.
    pub fn rational(field: &F, c: &F::Elem) -> Self {
        ClosedPoint::Finite(Poly::linear_root(field, c))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ClosedPoint::Infinity)
    }

    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Finite(p) => p.deg(),
            ClosedPoint::Infinity => 1,
        }
    }

    /// The coordinate of a finite rational point.
    pub fn coordinate(&self) -> Option<F::Elem> {
        match self {
            ClosedPoint::Finite(p) if p.deg() == 1 => Some(p.field().neg(&p.coeff(0))),
            _ => None,
        }
    }

    /// Defining polynomial of the residue field; `t` stands in for `k` at infinity.
    pub fn residue_modulus(&self, field: &F) -> Poly<F> {
        match self {
            ClosedPoint::Finite(p) => p.clone(),
            ClosedPoint::Infinity => Poly::x(field),
        }
    }

    /// Order of vanishing of a nonzero function.
    pub fn valuation(&self, h: &RationalFunction<F>) -> Result<i64> {
        if h.is_zero() {
            return Err(Error::ZeroInput("valuation of zero"));
        }
        Ok(match self {
            ClosedPoint::Finite(p) => {
                poly_valuation(h.num(), p) as i64 - poly_valuation(h.den(), p) as i64
            }
            ClosedPoint::Infinity => h.den().deg() as i64 - h.num().deg() as i64,
        })
    }

    /// Reduction of `h * pi^(-v(h))` into the residue field, with `pi` the
    /// uniformizer. Also returns `v(h)`.
    pub fn unit_part(&self, h: &RationalFunction<F>) -> Result<(i64, ResidueElement<F>)> {
        let field = h.field();
        let v = self.valuation(h)?;
        let modulus = self.residue_modulus(field);
        let value = match self {
            ClosedPoint::Finite(p) => {
                let num = strip(h.num(), p);
                let den = strip(h.den(), p);
                let n = ResidueElement::new(modulus.clone(), num);
                let d = ResidueElement::new(modulus, den);
                n.div(&d).expect("stripped denominator is a unit")
            }
            ClosedPoint::Infinity => {
                let c = field
                    .div(&h.num().lc(), &h.den().lc())
                    .expect("nonzero leading coefficient");
                ResidueElement::constant(modulus, c)
            }
        };
        Ok((v, value))
    }

    pub fn display_with<'a>(&'a self, var: &'a str) -> PointDisplay<'a, F> {
        PointDisplay { p: self, var }
    }
}

impl<K: BaseField> ClosedPoint<K> {
    /// Checked constructor from a monic irreducible polynomial.
    pub fn finite(pi: Poly<K>) -> Result<Self> {
        if pi.degree().unwrap_or(0) == 0 || !pi.is_monic() {
            return Err(Error::Precondition(format!(
                "closed point must be a monic nonconstant polynomial, got {pi}"
            )));
        }
        let fac = pi.field().factor(&pi);
        if !fac.is_irreducible() {
            return Err(Error::Precondition(format!("{pi} is not irreducible")));
        }
        Ok(ClosedPoint::Finite(pi))
    }

    /// All closed points where `h` has a zero or pole, infinity included
    /// when relevant, in canonical order.
    pub fn support_of(h: &RationalFunction<K>) -> Vec<Self> {
        let field = h.field();
        let mut out: Vec<Self> = Vec::new();
        for p in [h.num(), h.den()] {
            if p.deg() > 0 {
                out.extend(
                    field
                        .factor(p)
                        .factors
                        .into_iter()
                        .map(|(g, _)| ClosedPoint::Finite(g)),
                );
            }
        }
        if h.num().deg() != h.den().deg() {
            out.push(ClosedPoint::Infinity);
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Multiplicity of the monic irreducible `p` in `f` (nonzero).
pub fn poly_valuation<F: Field>(f: &Poly<F>, p: &Poly<F>) -> u32 {
    let mut g = f.clone();
    let mut v = 0;
    while !g.is_zero() {
        let (q, r) = g.div_rem(p);
        if !r.is_zero() {
            break;
        }
        g = q;
        v += 1;
    }
    v
}

fn strip<F: Field>(f: &Poly<F>, p: &Poly<F>) -> Poly<F> {
    let mut g = f.clone();
    loop {
        let (q, r) = g.div_rem(p);
        if !r.is_zero() {
            return g;
        }
        g = q;
    }
}

impl<F: Field> Ord for ClosedPoint<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ClosedPoint::Finite(a), ClosedPoint::Finite(b)) => a.cmp(b),
            (ClosedPoint::Finite(_), ClosedPoint::Infinity) => Ordering::Less,
            (ClosedPoint::Infinity, ClosedPoint::Finite(_)) => Ordering::Greater,
            (ClosedPoint::Infinity, ClosedPoint::Infinity) => Ordering::Equal,
        }
    }
}

impl<F: Field> PartialOrd for ClosedPoint<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct PointDisplay<'a, F: Field> {
    p: &'a ClosedPoint<F>,
    var: &'a str,
}

impl<F: Field> fmt::Display for PointDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.p {
            ClosedPoint::Finite(p) => write!(f, "({})", p.display_with(self.var)),
            ClosedPoint::Infinity => f.write_str("∞"),
        }
    }
}

impl<F: Field> fmt::Display for ClosedPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("t").fmt(f)
    }
}
