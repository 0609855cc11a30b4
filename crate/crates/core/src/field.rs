//! Coefficient fields.
//!
//! Polynomials, rational functions and residue fields are generic over a
//! [`Field`] context. The context is a cheap handle (a zero-sized marker for
//! `Q`, a shared table for `F_q`) that carries everything needed to do
//! arithmetic on its elements, so element types stay plain values.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arithmetic context for a commutative field.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Hash {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under the canonical ring map `Z -> K`.
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// Inverse of the Frobenius `a -> a^p`. Only meaningful in positive characteristic.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem;
    fn write_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result;
    /// Whether `a` must be parenthesised when printed as a coefficient.
    fn needs_parens(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Ordered fields print negatives with a leading sign.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    fn powi(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ia| self.pow(&ia, e.unsigned_abs()))
        }
    }

    fn display<'a>(&'a self, a: &'a Self::Elem) -> ElemDisplay<'a, Self> {
        ElemDisplay { field: self, elem: a }
    }
}

pub struct ElemDisplay<'a, F: Field> {
    field: &'a F,
    elem: &'a F::Elem,
}

impl<F: Field> fmt::Display for ElemDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.field.write_elem(self.elem, f)
    }
}

/// The rational numbers, with exact `BigRational` elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn pth_root(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn write_elem(&self, a: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if a.denom().is_one() {
            write!(f, "{}", a.numer())
        } else {
            write!(f, "{}/{}", a.numer(), a.denom())
        }
    }
    fn needs_parens(&self, _a: &BigRational) -> bool {
        false
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
}

/// Element of a finite field, encoded as the integer `sum c_i p^i` where
/// `c_i` are the coordinates in the power basis of the defining polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub u32);

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

struct GfTables {
    q: u32,
    p: u32,
    k: u32,
    /// Monic defining polynomial over F_p, lowest degree first (length k+1).
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field `F_q`, `q = p^k`, with log/antilog tables relative to a
/// fixed primitive element.
#[derive(Clone)]
pub struct FiniteField {
    tables: Arc<GfTables>,
    seed: u64,
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        Self::with_seed(q, 0)
    }

    /// Field with a seed for the randomized splitting step of factorization.
    /// The seed never changes results, only the path taken to them.
    pub fn with_seed(q: u32, seed: u64) -> Result<Self> {
        if !(2..=MAX_FIELD_ORDER).contains(&q) {
            return Err(Error::Scope(format!(
                "field order {q} outside 2..={MAX_FIELD_ORDER}"
            )));
        }
        let p = smallest_prime_factor(q);
        let mut k = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            k += 1;
        }
        if r != 1 {
            return Err(Error::Scope(format!("{q} is not a prime power")));
        }
        Ok(FiniteField {
            tables: Arc::new(GfTables::build(q, p, k)),
            seed,
        })
    }

    pub fn q(&self) -> u32 {
        self.tables.q
    }
    pub fn p(&self) -> u32 {
        self.tables.p
    }
    pub fn degree(&self) -> u32 {
        self.tables.k
    }
    pub fn seed(&self) -> u64 {
        self.seed
    }
    pub fn defining_polynomial(&self) -> &[u32] {
        &self.tables.modulus
    }

    /// The fixed primitive element all discrete logarithms refer to.
    pub fn generator(&self) -> FqElem {
        FqElem(self.tables.exp[1 % self.tables.exp.len()])
    }

    /// Root of the defining polynomial (the element printed as `z`); `None` for prime fields.
    pub fn z(&self) -> Option<FqElem> {
        (self.tables.k > 1).then_some(FqElem(self.tables.p))
    }

    /// Discrete logarithm to the base [`generator`](Self::generator).
    pub fn log(&self, a: FqElem) -> Option<u32> {
        (a.0 != 0).then(|| self.tables.log[a.0 as usize])
    }

    pub fn exp(&self, e: u64) -> FqElem {
        let n = (self.tables.q - 1) as u64;
        FqElem(self.tables.exp[(e % n) as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.tables.q).map(FqElem)
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let t = &self.tables;
        let mut d = Vec::with_capacity(t.k as usize);
        let mut x = a;
        for _ in 0..t.k {
            d.push(x % t.p);
            x /= t.p;
        }
        d
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.tables.q)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.tables.q == other.tables.q
    }
}
impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tables.q.hash(state);
    }
}

impl Field for FiniteField {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem(0)
    }
    fn one(&self) -> FqElem {
        FqElem(1)
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.0 == 0
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let t = &self.tables;
        if t.k == 1 {
            return FqElem((a.0 + b.0) % t.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..t.k {
            out += ((x % t.p + y % t.p) % t.p) * place;
            x /= t.p;
            y /= t.p;
            place *= t.p;
        }
        FqElem(out)
    }
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let t = &self.tables;
        if a.0 == 0 || b.0 == 0 {
            return FqElem(0);
        }
        if t.k == 1 {
            return FqElem(((a.0 as u64 * b.0 as u64) % t.p as u64) as u32);
        }
        let n = t.q - 1;
        let e = (t.log[a.0 as usize] + t.log[b.0 as usize]) % n;
        FqElem(t.exp[e as usize])
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        let t = &self.tables;
        if t.k == 1 {
            return FqElem((t.p - a.0) % t.p);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        for _ in 0..t.k {
            out += ((t.p - x % t.p) % t.p) * place;
            x /= t.p;
            place *= t.p;
        }
        FqElem(out)
    }
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        let t = &self.tables;
        if a.0 == 0 {
            return None;
        }
        let n = t.q - 1;
        let e = (n - t.log[a.0 as usize] % n) % n;
        Some(FqElem(t.exp[e as usize]))
    }
    fn from_bigint(&self, n: &BigInt) -> FqElem {
        let p = BigInt::from(self.tables.p);
        FqElem(n.mod_floor(&p).to_u32().expect("residue fits in u32"))
    }
    fn characteristic(&self) -> u64 {
        self.tables.p as u64
    }
    fn order(&self) -> Option<u64> {
        Some(self.tables.q as u64)
    }
    fn pth_root(&self, a: &FqElem) -> FqElem {
        // a^(q/p) inverts the Frobenius on F_q
        self.pow(a, (self.tables.q / self.tables.p) as u64)
    }
    fn write_elem(&self, a: &FqElem, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.tables;
        if t.k == 1 || a.0 < t.p {
            return write!(f, "{}", a.0);
        }
        let digits = self.digits(a.0);
        let mut first = true;
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "z")?,
                (1, c) => write!(f, "{c}*z")?,
                (i, 1) => write!(f, "z^{i}")?,
                (i, c) => write!(f, "{c}*z^{i}")?,
            }
        }
        Ok(())
    }
    fn needs_parens(&self, a: &FqElem) -> bool {
        self.tables.k > 1 && self.digits(a.0).iter().filter(|&&c| c != 0).count() > 1
    }
}

fn smallest_prime_factor(n: u32) -> u32 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

fn distinct_prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomial helpers over F_p used only while building tables.
mod fp_dense {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv_lc = inv(m[dm], p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = (*r.last().unwrap() as u64 * inv_lc as u64 % p as u64) as u32;
            for (i, &mi) in m.iter().enumerate() {
                let sub = (c as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
        rem(&prod, m, p)
    }

    pub fn powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out: Vec<u32> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }
}

impl GfTables {
    fn build(q: u32, p: u32, k: u32) -> Self {
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            find_irreducible(p, k)
        };
        let n = q - 1;
        let order_primes = distinct_prime_factors(n);
        let encode = |v: &[u32]| -> u32 {
            v.iter().rev().fold(0u32, |acc, &c| acc * p + c)
        };
        let decode = |mut x: u32| -> Vec<u32> {
            let mut d = Vec::new();
            for _ in 0..k {
                d.push(x % p);
                x /= p;
            }
            fp_dense::trim(&mut d);
            d
        };
        let mulmod = |a: &[u32], b: &[u32]| -> Vec<u32> {
            if k == 1 {
                let v = (a.first().copied().unwrap_or(0) as u64
                    * b.first().copied().unwrap_or(0) as u64
                    % p as u64) as u32;
                if v == 0 {
                    Vec::new()
                } else {
                    vec![v]
                }
            } else {
                fp_dense::mulmod(a, b, &modulus, p)
            }
        };
        let powmod = |a: &[u32], mut e: u64| -> Vec<u32> {
            let mut base = a.to_vec();
            let mut acc = vec![1u32];
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base);
                }
                base = mulmod(&base, &base);
                e >>= 1;
            }
            acc
        };
        let mut gen = None;
        for cand in 1..q {
            let g = decode(cand);
            if order_primes
                .iter()
                .all(|&r| powmod(&g, (n / r) as u64) != vec![1])
            {
                gen = Some(g);
                break;
            }
        }
        let g = gen.expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        for i in 0..n {
            let e = encode(&cur);
            exp[i as usize] = e;
            log[e as usize] = i;
            cur = mulmod(&cur, &g);
        }
        GfTables {
            q,
            p,
            k,
            modulus,
            exp,
            log,
        }
    }
}

/// First monic irreducible of degree `k` over F_p in lexicographic order.
fn find_irreducible(p: u32, k: u32) -> Vec<u32> {
    let total = (p as u64).pow(k);
    for tail in 0..total {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut x = tail;
        for _ in 0..k {
            f.push((x % p as u64) as u32);
            x /= p as u64;
        }
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        // no factor of degree d <= k/2  <=>  gcd(x^(p^d) - x, f) = 1 for all such d
        let mut ok = true;
        let xpoly = vec![0, 1];
        let mut h = xpoly.clone();
        for _ in 1..=k / 2 {
            h = fp_dense::powmod(&h, p as u64, &f, p);
            let g = fp_dense::gcd(&f, &fp_dense::sub(&h, &xpoly, p), p);
            if g.len() > 1 {
                ok = false;
                break;
            }
        }
        if ok {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Whether `n` is a square of a rational number.
pub fn is_rational_square(r: &BigRational) -> bool {
    if r.is_negative() {
        return false;
    }
    is_integer_square(r.numer()) && is_integer_square(r.denom())
}

pub fn is_integer_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &(&s * &s) == n
}
