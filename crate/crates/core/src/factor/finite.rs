//! Cantor–Zassenhaus factorization over finite fields.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Factorization;
use crate::field::{FiniteField, FqElem};
use crate::poly::{biguint_pow, Poly};

/// Complete factorization of a nonzero polynomial over `F_q`.
pub fn factor_finite(f: &Poly<FiniteField>) -> Factorization<FiniteField> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let field = f.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(field.seed());
    let mut out = Factorization {
        unit: f.lc(),
        factors: Vec::new(),
    };
    for (g, m) in f.monic().squarefree_decomposition() {
        for (part, d) in distinct_degree(&g) {
            for h in equal_degree(&part, d, &mut rng) {
                out.factors.push((h, m));
            }
        }
    }
    out.normalize();
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &Poly<FiniteField>) -> Vec<(Poly<FiniteField>, usize)> {
    let field = f.field();
    let q = BigUint::from(field.q());
    let x = Poly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&q, &rest);
        let g = (&h - &x).gcd(&rest);
        if g.deg() > 0 {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

/// Splits a squarefree monic product of irreducibles of degree `d`.
fn equal_degree(f: &Poly<FiniteField>, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly<FiniteField>> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field.q();
    loop {
        let a = Poly::new(
            field,
            (0..n).map(|_| FqElem(rng.gen_range(0..q))).collect(),
        );
        if a.deg() == 0 {
            continue;
        }
        let b = if q % 2 == 1 {
            let e = (biguint_pow(q as u64, d) - BigUint::one()) >> 1;
            &a.pow_mod(&e, f) - &Poly::one(field)
        } else {
            // absolute trace to F_2: sum of a^(2^i), i < k*d
            let bits = field.degree() as usize * d;
            let two = BigUint::from(2u32);
            let mut term = a.rem(f);
            let mut acc = term.clone();
            for _ in 1..bits {
                term = term.pow_mod(&two, f);
                acc = &acc + &term;
            }
            acc
        };
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(q: u32, c: &[i64]) -> Poly<FiniteField> {
        Poly::from_ints(&FiniteField::new(q).unwrap(), c)
    }

    #[test]
    fn irreducible_over_f3() {
        // t^2 + 1 has no root in {0, 1, 2}
        let f = fp(3, &[1, 0, 1]);
        assert!(factor_finite(&f).is_irreducible());
    }

    #[test]
    fn cubic_splits_over_f3() {
        // t^3 - t = t (t - 1) (t + 1)
        let f = fp(3, &[0, -1, 0, 1]);
        let fac = factor_finite(&f);
        let got: Vec<_> = fac.factors.iter().map(|(g, m)| (g.clone(), *m)).collect();
        assert_eq!(
            got,
            vec![(fp(3, &[0, 1]), 1), (fp(3, &[1, 1]), 1), (fp(3, &[2, 1]), 1)]
        );
    }

    #[test]
    fn quadratic_splits_over_f7() {
        // t^2 - 2 = (t - 3)(t - 4) since 3^2 = 2 in F_7
        let f = fp(7, &[-2, 0, 1]);
        let fac = factor_finite(&f);
        let got: Vec<_> = fac.factors.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(got, vec![fp(7, &[-4, 1]), fp(7, &[-3, 1])]);
    }

    #[test]
    fn product_round_trip_with_multiplicities() {
        for q in [2u32, 3, 4, 7, 9, 13] {
            let field = FiniteField::new(q).unwrap();
            let f = Poly::new(
                &field,
                [3u32, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5]
                    .iter()
                    .map(|&c| FqElem(c % q))
                    .collect(),
            );
            if f.is_zero() {
                continue;
            }
            let g = &f * &(&f * &Poly::x(&field));
            let fac = factor_finite(&g);
            assert_eq!(fac.product(&field), g, "q = {q}");
            for (h, _) in &fac.factors {
                assert!(h.is_monic());
            }
        }
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducible quadratics over F_q is (q^2 - q)/2
        for q in [2u32, 3, 5, 4] {
            let field = FiniteField::new(q).unwrap();
            let mut count = 0;
            for a in 0..q {
                for b in 0..q {
                    let f = Poly::new(&field, vec![FqElem(a), FqElem(b), FqElem(1)]);
                    if factor_finite(&f).is_irreducible() {
                        count += 1;
                    }
                }
            }
            assert_eq!(count, (q * q - q) / 2, "q = {q}");
        }
    }
}
