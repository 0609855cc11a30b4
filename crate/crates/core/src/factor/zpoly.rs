//! Integer polynomials (`Vec<BigInt>`, lowest degree first) for the
//! multi-modular stages of factorization over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{FiniteField, FqElem, Rationals};
use crate::poly::Poly;

pub type ZPoly = Vec<BigInt>;

pub fn trim(a: &mut ZPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn deg(a: &ZPoly) -> usize {
    a.len().saturating_sub(1)
}

pub fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &ZPoly) -> ZPoly {
    let mut c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    if a.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

pub fn mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

pub fn add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

pub fn scale(a: &ZPoly, c: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

/// Coefficients reduced into `[0, m)`.
pub fn reduce(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|x| x.mod_floor(m)).collect();
    trim(&mut out);
    out
}

/// Coefficients reduced into `(-m/2, m/2]`.
pub fn symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut out: ZPoly = a
        .iter()
        .map(|x| {
            let r = x.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Exact division over `Z`; `None` when `b` does not divide `a` in `Z[x]`.
pub fn div_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.len().checked_sub(1)?;
    let lb = &b[db];
    let mut r = a.clone();
    if r.len() <= db {
        return r.is_empty().then(Vec::new);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let top = &r[i + db];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i + j] -= &c * bc;
        }
        q[i] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Squared Euclidean norm.
pub fn norm2_sq(a: &ZPoly) -> BigInt {
    a.iter().map(|c| c * c).sum()
}

/// Clears denominators of a rational polynomial and returns the primitive part.
pub fn from_rational(f: &Poly<Rationals>) -> ZPoly {
    let l = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let z: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    primitive(&z)
}

pub fn to_rational(a: &ZPoly) -> Poly<Rationals> {
    Poly::new(
        &Rationals,
        a.iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    )
}

pub fn to_fp(a: &ZPoly, field: &FiniteField) -> Poly<FiniteField> {
    let p = BigInt::from(field.p());
    Poly::new(
        field,
        a.iter()
            .map(|c| FqElem(c.mod_floor(&p).to_u32().expect("small prime")))
            .collect(),
    )
}

pub fn from_fp(a: &Poly<FiniteField>) -> ZPoly {
    a.coeffs().iter().map(|c| BigInt::from(c.0)).collect()
}
