//! Dense univariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::field::Field;

/// A polynomial with coefficients stored lowest degree first.
///
/// The representation is canonical: no trailing zero coefficients, and the
/// zero polynomial has an empty coefficient vector.
#[derive(Clone)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: &F, coeffs: Vec<F::Elem>) -> Self {
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn from_ints(field: &F, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &F) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The variable itself.
    pub fn x(field: &F) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `c * x^n`.
    pub fn monomial(field: &F, c: F::Elem, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[n] = c;
        Self::new(field, coeffs)
    }

    /// `x - c`.
    pub fn linear_root(field: &F, c: &F::Elem) -> Self {
        Self::new(field, vec![field.neg(c), field.one()])
    }

    fn trim(&mut self) {
        while let Some(c) = self.coeffs.last() {
            if self.field.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> F::Elem {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(
            &self.field,
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    /// Monic associate; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.field.inv(&self.lc()) {
            Some(inv) if !self.is_one() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
                .collect(),
        )
    }

    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(&self.field, coeffs)
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let inv_lc = f.inv(&d.lc()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + dd], &inv_lc);
            if !f.is_zero(&c) {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = f.sub(&r[i + j], &f.mul(&c, dc));
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor, with `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match f.inv(&r0.lc()) {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(m);
            if e.bit(i) {
                acc = (&acc * &base).rem(m);
            }
        }
        acc
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Self::zero(f), |acc, c| {
            &(&acc * other) + &Self::constant(f, c.clone())
        })
    }

    /// Resultant `Res(self, other)` by the Euclidean remainder sequence.
    ///
    /// Uses the convention `Res(f, c) = c^deg f` for a constant `c`, so
    /// `Res(f, 1) = 1`; a zero argument gives 0.
    pub fn resultant(&self, other: &Self) -> F::Elem {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return f.zero();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = f.one();
        loop {
            let m = a.deg();
            let n = b.deg();
            if n == 0 {
                return f.mul(&acc, &f.pow(&b.lc(), m as u64));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return f.zero();
            }
            // Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
            let mut factor = f.pow(&b.lc(), (m - r.deg()) as u64);
            if (m * n) % 2 == 1 {
                factor = f.neg(&factor);
            }
            acc = f.mul(&acc, &factor);
            a = b;
            b = r;
        }
    }

    pub fn is_squarefree(&self) -> bool {
        if self.deg() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
    /// `self = prod g_i^i`, each `g_i` squarefree, monic and nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        self.monic().squarefree_into(1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        out
    }

    fn squarefree_into(&self, mult: u32, out: &mut Vec<(Self, u32)>) {
        if self.deg() == 0 {
            return;
        }
        let f = &self.field;
        let p = f.characteristic();
        let d = self.derivative();
        let mut c = self.gcd(&d);
        let mut w = self.div_exact(&c).expect("gcd divides");
        let mut i = 1u32;
        // Yun-style loop; in characteristic p, factors with multiplicity
        // divisible by p survive in c and are handled by a p-th root.
        while w.deg() > 0 {
            let y = w.gcd(&c);
            let z = w.div_exact(&y).expect("gcd divides");
            if z.deg() > 0 {
                push_merge(out, z, i * mult);
            }
            i += 1;
            w = y;
            c = c.div_exact(&w).expect("gcd divides");
        }
        if c.deg() > 0 {
            debug_assert!(p > 0, "characteristic zero leaves no residue");
            let root = c.pth_root_poly();
            root.squarefree_into(mult * p as u32, out);
        }
    }

    /// For `g(x) = h(x^p)` in characteristic p, returns the polynomial
    /// whose p-th power is `g`.
    fn pth_root_poly(&self) -> Self {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|c| f.pth_root(c))
            .collect();
        Self::new(f, coeffs)
    }

    pub fn display_with<'a>(&'a self, var: &'a str) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, var }
    }
}

fn push_merge<F: Field>(out: &mut Vec<(Poly<F>, u32)>, g: Poly<F>, m: u32) {
    if let Some(entry) = out.iter_mut().find(|(_, mm)| *mm == m) {
        entry.0 = &entry.0 * &g;
    } else {
        out.push((g, m));
    }
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Hash for Poly<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Ordered by degree, then lexicographically on coefficients from the top.
impl<F: Field> Ord for Poly<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            self.coeffs
                .iter()
                .rev()
                .cmp(other.coeffs.iter().rev())
        })
    }
}
impl<F: Field> PartialOrd for Poly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            f,
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => f.add(a, b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Field> $tr<&Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: &Poly<F>) -> Poly<F> {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.display_with("t"))
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("t").fmt(f)
    }
}

pub struct PolyDisplay<'a, F: Field> {
    poly: &'a Poly<F>,
    var: &'a str,
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        let f = &p.field;
        if p.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, c) in p.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let (neg, mag) = if f.is_negative(c) {
                (true, f.neg(c))
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(out, "-")?;
                }
            } else if neg {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            first = false;
            let unit = f.is_one(&mag);
            let wrap = f.needs_parens(&mag);
            match i {
                0 => {
                    if wrap {
                        write!(out, "({})", f.display(&mag))?
                    } else {
                        write!(out, "{}", f.display(&mag))?
                    }
                }
                _ => {
                    if !unit {
                        if wrap {
                            write!(out, "({})*", f.display(&mag))?;
                        } else {
                            write!(out, "{}*", f.display(&mag))?;
                        }
                    }
                    if i == 1 {
                        write!(out, "{}", self.var)?;
                    } else {
                        write!(out, "{}^{}", self.var, i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Interpolating polynomial through `(x_i, y_i)` (distinct `x_i`).
pub fn interpolate<F: Field>(field: &F, points: &[(F::Elem, F::Elem)]) -> Poly<F> {
    let mut acc = Poly::zero(field);
    for (i, (xi, yi)) in points.iter().enumerate() {
        if field.is_zero(yi) {
            continue;
        }
        let mut basis = Poly::one(field);
        let mut denom = field.one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::linear_root(field, xj);
                denom = field.mul(&denom, &field.sub(xi, xj));
            }
        }
        let c = field
            .div(yi, &denom)
            .expect("interpolation nodes are distinct");
        acc = &acc + &basis.scale(&c);
    }
    acc
}

/// Bit length helper for exponents built from field orders.
pub fn biguint_pow(base: u64, exp: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    let b = BigUint::from(base);
    for _ in 0..exp {
        acc *= &b;
    }
    if acc.is_zero() {
        BigUint::from(1u32)
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Rationals};

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_ints(&Rationals, c)
    }

    #[test]
    fn gcd_examples() {
        // (t^2 - 1, t - 1) -> t - 1
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[-1, 1])), q(&[-1, 1]));
        // (f, 0) -> monic f
        assert_eq!(q(&[4, 2]).gcd(&Poly::zero(&Rationals)), q(&[2, 1]));
        // (t^2 + 1, t^2 - 1) -> 1
        assert_eq!(q(&[1, 0, 1]).gcd(&q(&[-1, 0, 1])), q(&[1]));
        assert!(Poly::zero(&Rationals).gcd(&Poly::zero(&Rationals)).is_zero());
    }

    #[test]
    fn resultant_examples() {
        let r = |n: i64| Rationals.from_i64(n);
        // Res(t^2 - 2, t) = -2
        assert_eq!(q(&[-2, 0, 1]).resultant(&q(&[0, 1])), r(-2));
        // Res(f, 1) = 1
        assert_eq!(q(&[3, 5, 7]).resultant(&q(&[1])), r(1));
        // Res(t - a, g) = g(a)
        let g = q(&[5, -3, 0, 2]);
        assert_eq!(q(&[-4, 1]).resultant(&g), g.eval(&r(4)));
        // Res(t^2 + 1, t - 1) = (i - 1)(-i - 1) = 2
        assert_eq!(q(&[1, 0, 1]).resultant(&q(&[-1, 1])), r(2));
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        // independent route: Sylvester matrix determinant by fraction-free elimination
        let f = q(&[3, -1, 0, 2]);
        let g = q(&[-5, 4, 1]);
        assert_eq!(f.resultant(&g), sylvester_det(&f, &g));
        let f = q(&[1, 1, 1, 1, 1]);
        let g = q(&[2, 0, -3]);
        assert_eq!(f.resultant(&g), sylvester_det(&f, &g));
    }

    fn sylvester_det(f: &Poly<Rationals>, g: &Poly<Rationals>) -> num_rational::BigRational {
        let m = f.deg();
        let n = g.deg();
        let size = m + n;
        let mut mat = vec![vec![Rationals.zero(); size]; size];
        for row in 0..n {
            for (j, c) in f.coeffs().iter().rev().enumerate() {
                mat[row][row + j] = c.clone();
            }
        }
        for row in 0..m {
            for (j, c) in g.coeffs().iter().rev().enumerate() {
                mat[n + row][row + j] = c.clone();
            }
        }
        let mut det = Rationals.one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return Rationals.zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            det *= mat[col][col].clone();
            for r in col + 1..size {
                let factor = &mat[r][col] / &mat[col][col];
                for c in col..size {
                    let v = &factor * &mat[col][c];
                    mat[r][c] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = q(&[7, -3, 0, 5, 1]);
        let b = q(&[2, 0, 3]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(&(&qq * &b) + &r, a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn squarefree_decomposition_char_zero() {
        let a = q(&[-1, 1]);
        let b = q(&[2, 0, 1]);
        let f = &(&a * &a) * &(&(&b * &b) * &b);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(a, 2), (b, 3)]);
    }

    #[test]
    fn squarefree_decomposition_char_p() {
        let f3 = FiniteField::new(3).unwrap();
        // (t + 1)^3 (t + 2) = t^4 + ...; multiplicity 3 needs the p-th root step
        let a = Poly::from_ints(&f3, &[1, 1]);
        let b = Poly::from_ints(&f3, &[2, 1]);
        let f = &a.pow(3) * &b;
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(b.clone(), 1), (a.clone(), 3)]);
        let g = &a.pow(6) * &b.pow(2);
        assert_eq!(g.squarefree_decomposition(), vec![(b, 2), (a, 6)]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(&[-2, 0, 1]).to_string(), "t^2 - 2");
        assert_eq!(q(&[0, 3]).to_string(), "3*t");
        assert_eq!(q(&[1, -1]).to_string(), "-t + 1");
        let half = Poly::new(
            &Rationals,
            vec![Rationals.zero(), num_rational::BigRational::new((-1).into(), 2.into())],
        );
        assert_eq!(half.to_string(), "-1/2*t");
        assert_eq!(Poly::zero(&Rationals).to_string(), "0");
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = q(&[3, -1, 4, 1]);
        let pts: Vec<_> = (0..4)
            .map(|i| {
                let x = Rationals.from_i64(i);
                let y = f.eval(&x);
                (x, y)
            })
            .collect();
        assert_eq!(interpolate(&Rationals, &pts), f);
    }
}
