//! Integer helpers: primality, factorization, squarefree parts, Legendre symbols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_LIMIT: u64 = 10_000;

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    is_probable_prime(&BigInt::from(n))
}

/// Miller–Rabin with the first 20 prime bases; deterministic below 3.3e24.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    const BASES: [u32; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    for &b in &BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'outer: for &b in &BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs. `n` nonzero.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > m {
            break;
        }
        let mut e = 0;
        while (&m % &bd).is_zero() {
            m /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let mut rest = Vec::new();
        split_large(m, &mut rest);
        rest.sort();
        for p in rest {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out
}

fn split_large(m: BigInt, out: &mut Vec<BigInt>) {
    if m.is_one() {
        return;
    }
    if is_probable_prime(&m) {
        out.push(m);
        return;
    }
    let mut c = 1u32;
    loop {
        if let Some(d) = pollard_brent(&m, c) {
            split_large(d.clone(), out);
            split_large(&m / &d, out);
            return;
        }
        c += 1;
    }
}

fn pollard_brent(n: &BigInt, c: u32) -> Option<BigInt> {
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut x = BigInt::from(2);
    let mut y = x.clone();
    let mut d = BigInt::one();
    let mut steps = 0u64;
    while d.is_one() {
        x = f(&x);
        y = f(&f(&y));
        d = (&x - &y).abs().gcd(n);
        steps += 1;
        if steps > 2_000_000 {
            return None;
        }
    }
    (d != *n).then_some(d)
}

/// Distinct primes dividing the numerator or denominator of `r`.
pub fn rational_primes(r: &BigRational) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::new();
    for part in [r.numer(), r.denom()] {
        if !part.is_zero() {
            out.extend(factor(part).into_iter().map(|(p, _)| p));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The squarefree integer `s` with `r = s * (square)`; `r` nonzero.
pub fn squarefree_part(r: &BigRational) -> BigInt {
    let n = r.numer() * r.denom();
    let mut s = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    for (p, e) in factor(&n) {
        if e % 2 == 1 {
            s *= p;
        }
    }
    s
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut m = n.clone();
    let mut v = 0;
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

/// Legendre symbol `(a | p)` for an odd prime `p`, by Euler's criterion.
pub fn legendre(a: &BigInt, p: &BigInt) -> i8 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) / 2u32;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Primes in increasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime_u64(n))
}

pub fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}
