//! Local invariants of quaternion algebras over `Q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::integer::{factor, legendre, rational_primes, valuation};

/// A place of `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(BigInt),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("∞"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// An integer in the same square class as `r`.
fn integral(r: &BigRational) -> BigInt {
    r.numer() * r.denom()
}

/// Splits `n = l^v * u` with `l` not dividing `u`.
fn split(n: &BigInt, l: &BigInt) -> (u32, BigInt) {
    let v = valuation(n, l);
    (v, n / l.pow(v))
}

/// `(u - 1)/2 mod 2` for odd `u`.
fn eps(u: &BigInt) -> u32 {
    let r = u.mod_floor(&BigInt::from(4));
    if r == BigInt::from(3) {
        1
    } else {
        0
    }
}

/// `(u^2 - 1)/8 mod 2` for odd `u`.
fn omega(u: &BigInt) -> u32 {
    let r = u.mod_floor(&BigInt::from(8));
    if r == BigInt::from(3) || r == BigInt::from(5) {
        1
    } else {
        0
    }
}

/// The Hilbert symbol `(a, b)_v` as `1` or `-1`. `a`, `b` nonzero.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: &Place) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    let (a, b) = (integral(a), integral(b));
    match v {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(l) if *l == BigInt::from(2) => {
            let (alpha, u) = split(&a, l);
            let (beta, w) = split(&b, l);
            let e = eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u);
            if e.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        Place::Prime(l) => {
            let (alpha, u) = split(&a, l);
            let (beta, w) = split(&b, l);
            let mut s: i8 = if (alpha * beta) % 2 == 1 && eps(l) == 1 {
                -1
            } else {
                1
            };
            if beta % 2 == 1 {
                s *= legendre(&u, l);
            }
            if alpha % 2 == 1 {
                s *= legendre(&w, l);
            }
            s
        }
    }
}

/// `{inf, 2}` together with every prime dividing a numerator or denominator.
pub fn relevant_places<'a>(entries: impl IntoIterator<Item = &'a BigRational>) -> Vec<Place> {
    let mut out = vec![Place::Infinity, Place::Prime(BigInt::from(2))];
    for r in entries {
        out.extend(rational_primes(r).into_iter().map(Place::Prime));
    }
    out.sort();
    out.dedup();
    out
}

/// Places where the sum of quaternion symbols is nonzero. Always of even size.
pub fn ramified_places(symbols: &[(BigRational, BigRational)]) -> Vec<Place> {
    let places = relevant_places(symbols.iter().flat_map(|(a, b)| [a, b]));
    places
        .into_iter()
        .filter(|v| {
            symbols
                .iter()
                .map(|(a, b)| hilbert_symbol(a, b, v))
                .product::<i8>()
                == -1
        })
        .collect()
}

/// Whether the nonzero rational `d` is a square in the completion at `v`.
pub fn is_local_square(d: &BigRational, v: &Place) -> bool {
    let n = integral(d);
    match v {
        Place::Infinity => n.is_positive(),
        Place::Prime(l) => {
            let (e, u) = split(&n, l);
            if e % 2 == 1 {
                return false;
            }
            if *l == BigInt::from(2) {
                u.mod_floor(&BigInt::from(8)).is_one()
            } else {
                legendre(&u, l) == 1
            }
        }
    }
}

/// Whether `Q(sqrt d)` splits the quaternion class ramified exactly at `places`.
pub fn quadratic_field_splits(d: &BigInt, places: &[Place]) -> bool {
    let d = BigRational::from_integer(d.clone());
    places.iter().all(|v| !is_local_square(&d, v))
}

/// Squarefree integers other than 1, ordered by absolute value, positive first.
pub fn squarefree_discriminants() -> impl Iterator<Item = BigInt> {
    (1i64..)
        .flat_map(|n| [n, -n])
        .filter(|&n| n != 1)
        .filter(|&n| {
            n == -1
                || factor(&BigInt::from(n))
                    .iter()
                    .all(|(_, e)| *e == 1)
        })
        .map(BigInt::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn prime(p: i64) -> Place {
        Place::Prime(BigInt::from(p))
    }

    /// Whether `a x^2 + b y^2 = z^2` has a primitive solution modulo `m`
    /// (`a`, `b` squarefree integers), which decides the local symbol for
    /// `m = l^3` at odd `l` and `m = 2^6` at 2.
    fn brute_force(a: i64, b: i64, l: i64) -> i8 {
        let m = if l == 2 { 64 } else { l * l * l };
        let mut any_root = vec![false; m as usize];
        let mut unit_root = vec![false; m as usize];
        for z in 0..m {
            let s = (z * z % m) as usize;
            any_root[s] = true;
            if z % l != 0 {
                unit_root[s] = true;
            }
        }
        for x in 0..m {
            for y in 0..m {
                let lhs = (a * x * x + b * y * y).rem_euclid(m) as usize;
                let primitive_xy = x % l != 0 || y % l != 0;
                if (primitive_xy && any_root[lhs]) || unit_root[lhs] {
                    return 1;
                }
            }
        }
        -1
    }

    #[test]
    fn documented_values() {
        assert_eq!(hilbert_symbol(&r(-1), &r(-1), &Place::Infinity), -1);
        assert_eq!(hilbert_symbol(&r(-1), &r(-1), &prime(2)), -1);
        assert_eq!(hilbert_symbol(&r(2), &r(7), &prime(7)), 1);
        assert_eq!(hilbert_symbol(&r(5), &r(2), &prime(5)), -1);
    }

    #[test]
    fn agrees_with_brute_force() {
        let vals = [-15i64, -10, -7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 14, 15];
        for l in [2i64, 3, 5, 7] {
            for &a in &vals {
                for &b in &vals {
                    assert_eq!(
                        hilbert_symbol(&r(a), &r(b), &prime(l)),
                        brute_force(a, b, l),
                        "({a}, {b}) at {l}"
                    );
                }
            }
        }
    }

    #[test]
    fn minus_one_minus_one_ramification() {
        assert_eq!(ramified_places(&[(r(-1), r(-1))]), vec![Place::Infinity, prime(2)]);
        assert!(ramified_places(&[(r(2), r(-1))]).is_empty());
        assert!(ramified_places(&[(r(1), r(7))]).is_empty());
    }

    #[test]
    fn local_squares() {
        assert!(is_local_square(&r(17), &prime(2)));
        assert!(!is_local_square(&r(5), &prime(2)));
        assert!(is_local_square(&r(2), &prime(7)));
        assert!(!is_local_square(&r(3), &prime(7)));
        assert!(!is_local_square(&r(-1), &Place::Infinity));
        // Q(i) splits (-1, 3)? (-1,3) ramifies at 2 and 3, where -1 is not a square
        let places = ramified_places(&[(r(-1), r(3))]);
        assert!(quadratic_field_splits(&BigInt::from(-1), &places));
    }

    proptest! {
        #[test]
        fn product_formula(a in -2000i64..2000, b in -2000i64..2000, c in 1i64..50, d in 1i64..50) {
            prop_assume!(a != 0 && b != 0);
            let x = BigRational::new(BigInt::from(a), BigInt::from(c));
            let y = BigRational::new(BigInt::from(b), BigInt::from(d));
            let places = relevant_places([&x, &y]);
            let prod: i8 = places.iter().map(|v| hilbert_symbol(&x, &y, v)).product();
            prop_assert_eq!(prod, 1);
        }

        #[test]
        fn symmetric_and_bilinear(a in 1i64..300, b in 1i64..300, c in 1i64..300, sa in any::<bool>(), sb in any::<bool>()) {
            let a = r(if sa { -a } else { a });
            let b = r(if sb { -b } else { b });
            let c = r(c);
            for v in relevant_places([&a, &b, &c]) {
                prop_assert_eq!(hilbert_symbol(&a, &b, &v), hilbert_symbol(&b, &a, &v));
                prop_assert_eq!(
                    hilbert_symbol(&a, &(&b * &c), &v),
                    hilbert_symbol(&a, &b, &v) * hilbert_symbol(&a, &c, &v)
                );
            }
        }
    }
}
