//! Factorization over `Q`: squarefree decomposition, factorization modulo a
//! good prime, multifactor Hensel lifting and subset recombination.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::finite::factor_finite;
use super::zpoly::{self, ZPoly};
use super::Factorization;
use crate::field::{FiniteField, Field, Rationals};
use crate::integer::primes;
use crate::poly::Poly;

/// Number of good primes tried when looking for the fewest modular factors.
const PRIME_CANDIDATES: usize = 6;

/// Complete factorization of a nonzero polynomial over `Q` into a rational
/// unit times monic irreducibles.
pub fn factor_rational(f: &Poly<Rationals>) -> Factorization<Rationals> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut out = Factorization {
        unit: f.lc(),
        factors: Vec::new(),
    };
    for (g, m) in f.monic().squarefree_decomposition() {
        for h in factor_squarefree(&g) {
            out.factors.push((h, m));
        }
    }
    out.normalize();
    out
}

fn factor_squarefree(g: &Poly<Rationals>) -> Vec<Poly<Rationals>> {
    if g.deg() <= 1 {
        return vec![g.monic()];
    }
    let z = zpoly::from_rational(g);
    zassenhaus(&z)
        .iter()
        .map(|h| zpoly::to_rational(h).monic())
        .collect()
}

/// Irreducible factors over `Z` of a primitive squarefree polynomial.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = zpoly::deg(f);
    if n <= 1 {
        return vec![f.clone()];
    }
    // a root at 0 is cheap to peel off and keeps the modular image honest
    if f[0].is_zero() {
        let rest = f[1..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(zassenhaus(&rest));
        return out;
    }
    let lc = f.last().unwrap().clone();
    let Some((field, modular)) = choose_prime(f, &lc) else {
        unreachable!("a squarefree polynomial has only finitely many bad primes")
    };
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let p = BigInt::from(field.p());
    // factor coefficients of lc * g for g | f are bounded by |lc| 2^n ||f||_2
    let norm = zpoly::norm2_sq(f).sqrt() + 1u32;
    let bound = lc.abs() * (BigInt::one() << n) * norm * 2u32;
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let lifted = multi_lift(f, &modular, &field, k);
    recombine(f, lifted, &pk)
}

/// Picks among the first few good primes the one with the fewest factors.
fn choose_prime(f: &ZPoly, lc: &BigInt) -> Option<(FiniteField, Vec<Poly<FiniteField>>)> {
    let mut best: Option<(FiniteField, Vec<Poly<FiniteField>>)> = None;
    let mut tried = 0;
    for p in primes().skip(1).take_while(|&p| p < 65_536) {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let field = FiniteField::new(p as u32).expect("prime field");
        let fp = zpoly::to_fp(f, &field);
        if !fp.is_squarefree() {
            continue;
        }
        let facs: Vec<_> = factor_finite(&fp)
            .factors
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        tried += 1;
        let better = best.as_ref().is_none_or(|(_, b)| facs.len() < b.len());
        if better {
            let done = facs.len() == 1;
            best = Some((field, facs));
            if done {
                break;
            }
        }
        if tried >= PRIME_CANDIDATES {
            break;
        }
    }
    best
}

/// Lifts `f = lc * prod g_i (mod p)` to monic factors modulo `p^k`.
fn multi_lift(f: &ZPoly, factors: &[Poly<FiniteField>], field: &FiniteField, k: u32) -> Vec<ZPoly> {
    let p = BigInt::from(field.p());
    let pk = p.pow(k);
    if factors.len() == 1 {
        let lc = f.last().unwrap();
        let inv = lc
            .modinv(&pk)
            .expect("leading coefficient is a unit mod p");
        return vec![zpoly::reduce(&zpoly::scale(f, &inv), &pk)];
    }
    let g = &factors[0];
    let h = factors[1..]
        .iter()
        .fold(Poly::one(field), |acc, x| &acc * x);
    let (gl, hl) = hensel_lift(f, g, &h, field, k);
    let mut out = vec![gl];
    out.extend(multi_lift(&hl, &factors[1..], field, k));
    out
}

/// Two-factor linear Hensel lifting. Input `f = lc * g * h (mod p)` with `g`, `h`
/// monic and coprime mod p. Returns `(G, H)` with `G` monic, `f = G * H (mod p^k)`.
fn hensel_lift(
    f: &ZPoly,
    g: &Poly<FiniteField>,
    h: &Poly<FiniteField>,
    field: &FiniteField,
    k: u32,
) -> (ZPoly, ZPoly) {
    let p = BigInt::from(field.p());
    let lc_p = field.from_bigint(f.last().unwrap());
    let h0 = h.scale(&lc_p);
    // s*g + t*h0 = 1 over F_p
    let (one, s, t) = g.ext_gcd(&h0);
    debug_assert!(one.is_one(), "modular factors must be coprime");
    let mut big_g = zpoly::from_fp(g);
    let mut big_h = zpoly::from_fp(&h0);
    let mut pj = p.clone();
    for _ in 1..k {
        let err = zpoly::sub(f, &zpoly::mul(&big_g, &big_h));
        let e: ZPoly = err
            .iter()
            .map(|c| {
                debug_assert!((c % &pj).is_zero());
                c / &pj
            })
            .collect();
        let e = zpoly::to_fp(&e, field);
        let (quo, dg) = (&e * &t).div_rem(g);
        let dh = &(&e * &s) + &(&quo * &h0);
        let next = &pj * &p;
        big_g = zpoly::reduce(&zpoly::add(&big_g, &zpoly::scale(&zpoly::from_fp(&dg), &pj)), &next);
        big_h = zpoly::reduce(&zpoly::add(&big_h, &zpoly::scale(&zpoly::from_fp(&dh), &pj)), &next);
        pj = next;
    }
    (big_g, big_h)
}

/// Zassenhaus subset recombination of the lifted factors.
fn recombine(f: &ZPoly, mut lifted: Vec<ZPoly>, pk: &BigInt) -> Vec<ZPoly> {
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in (0..lifted.len()).combinations(size) {
            let lc = rest.last().unwrap().clone();
            // constant-term screen before the full product
            let c0 = subset
                .iter()
                .fold(lc.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(pk));
            let c0 = symmetric_scalar(&c0, pk);
            if !c0.is_zero() && !(&lc * &rest[0]).is_multiple_of(&c0) {
                continue;
            }
            let prod = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| zpoly::reduce(&zpoly::mul(&acc, &lifted[i]), pk));
            let cand = zpoly::primitive(&zpoly::symmetric(&prod, pk));
            if let Some(q) = zpoly::div_exact(&rest, &cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if zpoly::deg(&rest) > 0 {
        out.push(zpoly::primitive(&rest));
    }
    out
}

fn symmetric_scalar(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if r > m / 2 {
        r - m
    } else {
        r
    }
}
