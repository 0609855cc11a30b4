//! The two supported base fields, `Q` and `F_q`, behind one trait.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::{factor_finite, factor_rational, Factorization};
use crate::field::{is_rational_square, Field, FiniteField, FqElem, Rationals};
use crate::hilbert::{self, Place};
use crate::integer::{is_prime_u64, squarefree_part};
use crate::poly::Poly;
use crate::residue::{self, quadratic_label, ResidueElement};

/// A base field `k` for `Br(k(t))`.
pub trait BaseField: Field {
    /// Short name such as `Q` or `F_7`.
    fn label(&self) -> String;

    /// Factorization into monic irreducibles. `f` nonzero.
    fn factor(&self, f: &Poly<Self>) -> Factorization<Self>;

    /// Rejects torsion orders outside the supported range.
    fn check_torsion(&self, p: u32) -> Result<()>;

    /// Whether a nonzero element of `k` is a `p`-th power.
    fn is_pth_power_in_base(&self, a: &Self::Elem, p: u32) -> Result<bool>;

    /// Whether a nonzero residue field element is a `p`-th power.
    fn is_pth_power(&self, e: &ResidueElement<Self>, p: u32) -> Result<bool>;

    /// Class of a residue as an exponent mod `p`, where the backend has one.
    fn class_exponent(&self, _e: &ResidueElement<Self>, _p: u32) -> Option<u32> {
        None
    }

    /// A representative of the same class chosen for readable output.
    fn canonical_residue(&self, e: ResidueElement<Self>, p: u32) -> ResidueElement<Self>;

    /// Places where a sum of constant symbols has nonzero local invariant.
    /// Empty whenever the constant Brauer group vanishes.
    fn constant_ramification(&self, symbols: &[(Self::Elem, Self::Elem)], p: u32) -> Result<Vec<Place>>;

    /// Rational points `t = c` in sweep order (small height first).
    fn sweep(&self) -> Box<dyn Iterator<Item = Self::Elem>>;

    /// Image of a rational literal, `None` when the denominator vanishes in `k`.
    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem>;

    /// The element spelled `z` in expressions, for fields that have one.
    fn named_generator(&self) -> Option<Self::Elem> {
        None
    }

    /// Human description of `kappa(x)` and the extension cut out by a residue.
    fn describe_extension(&self, e: &ResidueElement<Self>, p: u32, trivial: bool) -> String;
}

impl BaseField for Rationals {
    fn label(&self) -> String {
        "Q".into()
    }

    fn factor(&self, f: &Poly<Self>) -> Factorization<Self> {
        factor_rational(f)
    }

    fn check_torsion(&self, p: u32) -> Result<()> {
        if p == 2 {
            Ok(())
        } else {
            Err(Error::Scope(format!(
                "over Q only 2-torsion is supported (got p = {p})"
            )))
        }
    }

    fn is_pth_power_in_base(&self, a: &BigRational, p: u32) -> Result<bool> {
        self.check_torsion(p)?;
        if a.is_zero() {
            return Err(Error::ZeroInput("square test of zero"));
        }
        Ok(is_rational_square(a))
    }

    fn is_pth_power(&self, e: &ResidueElement<Self>, p: u32) -> Result<bool> {
        self.check_torsion(p)?;
        residue::nf_is_square(e)
    }

    fn canonical_residue(&self, e: ResidueElement<Self>, _p: u32) -> ResidueElement<Self> {
        match e.as_constant() {
            Some(c) if e.degree() == 1 => {
                let s = BigRational::from_integer(squarefree_part(&c));
                ResidueElement::constant(e.modulus().clone(), s)
            }
            _ => e,
        }
    }

    fn constant_ramification(&self, symbols: &[(BigRational, BigRational)], p: u32) -> Result<Vec<Place>> {
        self.check_torsion(p)?;
        if symbols.iter().any(|(a, b)| a.is_zero() || b.is_zero()) {
            return Err(Error::ZeroInput("constant symbol entry"));
        }
        Ok(hilbert::ramified_places(symbols))
    }

    fn sweep(&self) -> Box<dyn Iterator<Item = BigRational>> {
        Box::new(
            std::iter::once(0i64)
                .chain((1i64..).flat_map(|n| [n, -n]))
                .map(|n| BigRational::from_integer(BigInt::from(n))),
        )
    }

    fn from_rational(&self, r: &BigRational) -> Option<BigRational> {
        Some(r.clone())
    }

    fn describe_extension(&self, e: &ResidueElement<Self>, _p: u32, trivial: bool) -> String {
        let pi = e.modulus();
        let base = match pi.deg() {
            1 => "Q".to_string(),
            2 => {
                let (c, b, a) = (pi.coeff(0), pi.coeff(1), pi.coeff(2));
                let disc = &b * &b - BigRational::from_integer(4.into()) * a * c;
                quadratic_label(&squarefree_part(&disc))
            }
            _ => format!("Q[t]/({pi})"),
        };
        if trivial {
            return format!("{base} (split)");
        }
        match (pi.deg(), e.as_constant()) {
            (1, Some(c)) => quadratic_label(&squarefree_part(&c)),
            _ => format!("{base}(√({e}))"),
        }
    }
}

impl FiniteField {
    fn residue_log(&self, e: &ResidueElement<Self>) -> Result<u32> {
        let n = e.norm()?;
        self.log(n)
            .ok_or_else(|| Error::Internal("norm of a unit vanished".into()))
    }
}

impl BaseField for FiniteField {
    fn label(&self) -> String {
        format!("F_{}", self.q())
    }

    fn factor(&self, f: &Poly<Self>) -> Factorization<Self> {
        factor_finite(f)
    }

    fn check_torsion(&self, p: u32) -> Result<()> {
        if !is_prime_u64(p as u64) {
            return Err(Error::Scope(format!("torsion {p} is not prime")));
        }
        if p == self.p() || !(self.q() - 1).is_multiple_of(p) {
            return Err(Error::Scope(format!(
                "torsion {p} must divide q - 1 = {} over {}",
                self.q() - 1,
                self.label()
            )));
        }
        Ok(())
    }

    fn is_pth_power_in_base(&self, a: &FqElem, p: u32) -> Result<bool> {
        self.check_torsion(p)?;
        let l = self.log(*a).ok_or(Error::ZeroInput("power test of zero"))?;
        Ok(l % p == 0)
    }

    /// `e^((q^d - 1)/p) = N(e)^((q - 1)/p)`, so only the norm matters.
    fn is_pth_power(&self, e: &ResidueElement<Self>, p: u32) -> Result<bool> {
        self.check_torsion(p)?;
        Ok(self.residue_log(e)? % p == 0)
    }

    fn class_exponent(&self, e: &ResidueElement<Self>, p: u32) -> Option<u32> {
        self.residue_log(e).ok().map(|l| l % p)
    }

    fn canonical_residue(&self, e: ResidueElement<Self>, p: u32) -> ResidueElement<Self> {
        if e.degree() != 1 {
            return e;
        }
        match self.class_exponent(&e, p) {
            Some(k) => ResidueElement::constant(e.modulus().clone(), self.exp(k as u64)),
            None => e,
        }
    }

    fn constant_ramification(&self, symbols: &[(FqElem, FqElem)], p: u32) -> Result<Vec<Place>> {
        self.check_torsion(p)?;
        if symbols.iter().any(|(a, b)| a.0 == 0 || b.0 == 0) {
            return Err(Error::ZeroInput("constant symbol entry"));
        }
        Ok(Vec::new())
    }

    fn sweep(&self) -> Box<dyn Iterator<Item = FqElem>> {
        Box::new(self.elements())
    }

    fn from_rational(&self, r: &BigRational) -> Option<FqElem> {
        let p = BigInt::from(self.p());
        let d = r.denom().mod_floor(&p);
        if d.is_zero() {
            return None;
        }
        self.div(&self.from_bigint(r.numer()), &self.from_bigint(&d))
    }

    fn named_generator(&self) -> Option<FqElem> {
        self.z()
    }

    fn describe_extension(&self, e: &ResidueElement<Self>, p: u32, trivial: bool) -> String {
        let d = e.degree() as u32;
        let kappa = field_name(self.q(), d);
        if trivial {
            format!("{kappa} (split)")
        } else {
            format!("{} over {kappa}", field_name(self.q(), d * p))
        }
    }
}

fn field_name(q: u32, d: u32) -> String {
    if d == 1 {
        format!("F_{q}")
    } else {
        match (q as u64).checked_pow(d).filter(|n| n.to_u32().is_some()) {
            Some(n) => format!("F_{n}"),
            None => format!("F_{q}^{d}"),
        }
    }
}
