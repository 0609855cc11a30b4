//! Polynomial factorization over `F_q` and `Q`.

mod finite;
mod rational;
pub(crate) mod zpoly;

pub use finite::factor_finite;
pub use rational::factor_rational;

use crate::field::Field;
use crate::poly::Poly;

/// `unit * prod factor^multiplicity`, factors monic irreducible, pairwise
/// coprime and sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(Poly<F>, u32)>,
}

impl<F: Field> Factorization<F> {
    /// Multiplies everything back together.
    pub fn product(&self, field: &F) -> Poly<F> {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit.clone()), |acc, (g, m)| {
                &acc * &g.pow(*m)
            })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Irreducible factors of degree 1.
    pub fn linear_factors(&self) -> impl Iterator<Item = &Poly<F>> {
        self.factors
            .iter()
            .filter(|(g, _)| g.deg() == 1)
            .map(|(g, _)| g)
    }

    fn normalize(&mut self) {
        self.factors.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    }
}
