use std::collections::BTreeSet;
use std::fmt;

use super::poly::{default_names, GF2Poly, Monomial};
use crate::error::{Error, Result};

/// An element of `R ⊗ R` for a polynomial ring `R` over GF(2), stored as a
/// set of monomial pairs `u ⊗ v`. No Koszul signs appear in characteristic 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    arity: usize,
    support: BTreeSet<(Monomial, Monomial)>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement {
            arity,
            support: BTreeSet::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::pure(Monomial::one(arity), Monomial::one(arity))
    }

    pub fn pure(u: Monomial, v: Monomial) -> Self {
        let arity = u.arity();
        let mut support = BTreeSet::new();
        support.insert((u, v));
        TensorElement { arity, support }
    }

    /// `1 ⊗ g + g ⊗ 1` for the `i`-th generator.
    pub fn zero_divisor(arity: usize, i: usize) -> Self {
        let mut t = Self::zero(arity);
        t.toggle(Monomial::one(arity), Monomial::var(arity, i));
        t.toggle(Monomial::var(arity, i), Monomial::one(arity));
        t
    }

    /// `p ⊗ 1`.
    pub fn left(p: &GF2Poly) -> Self {
        let mut t = Self::zero(p.arity());
        for m in p.terms() {
            t.toggle(m.clone(), Monomial::one(p.arity()));
        }
        t
    }

    /// `1 ⊗ p`.
    pub fn right(p: &GF2Poly) -> Self {
        let mut t = Self::zero(p.arity());
        for m in p.terms() {
            t.toggle(Monomial::one(p.arity()), m.clone());
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &(Monomial, Monomial)> {
        self.support.iter()
    }

    pub fn contains(&self, u: &Monomial, v: &Monomial) -> bool {
        self.support.contains(&(u.clone(), v.clone()))
    }

    pub fn toggle(&mut self, u: Monomial, v: Monomial) {
        let key = (u, v);
        if !self.support.remove(&key) {
            self.support.insert(key);
        }
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_arity(other)?;
        Ok(TensorElement {
            arity: self.arity,
            support: self
                .support
                .symmetric_difference(&other.support)
                .cloned()
                .collect(),
        })
    }

    fn check_arity(&self, other: &TensorElement) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    /// `(u ⊗ v)(u' ⊗ v') = uu' ⊗ vv'`, accumulated mod 2.
    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_arity(other)?;
        let mut out = TensorElement::zero(self.arity);
        for (a, b) in &self.support {
            for (c, d) in &other.support {
                out.toggle(a.mul(c), b.mul(d));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> TensorElement {
        let mut out = TensorElement::one(self.arity);
        for _ in 0..e {
            out = out.mul(self).expect("same arity");
        }
        out
    }

    /// Image under the multiplication map `u ⊗ v ↦ uv` in the polynomial ring.
    pub fn multiply_out(&self) -> GF2Poly {
        GF2Poly::from_monomials(self.arity, self.support.iter().map(|(u, v)| u.mul(v)))
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.support.iter().collect();
        terms.sort_by(|(a, b), (c, d)| {
            (a.degree() + b.degree())
                .cmp(&(c.degree() + d.degree()))
                .then_with(|| a.cmp(c))
                .then_with(|| b.cmp(d))
                .reverse()
        });
        terms
            .into_iter()
            .map(|(u, v)| format!("{} ⊗ {}", u.render(names), v.render(names)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names("y", self.arity)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(e: u8) -> Monomial {
        Monomial::var_pow(1, 0, e)
    }

    #[test]
    fn square_of_zero_divisor_drops_middle_term() {
        let a = TensorElement::zero_divisor(1, 0);
        let mut expected = TensorElement::zero(1);
        expected.toggle(x(0), x(2));
        expected.toggle(x(2), x(0));
        assert_eq!(a.pow(2), expected);
    }

    #[test]
    fn cube_of_zero_divisor() {
        let a = TensorElement::zero_divisor(1, 0);
        let mut expected = TensorElement::zero(1);
        expected.toggle(x(1), x(2));
        expected.toggle(x(2), x(1));
        expected.toggle(x(0), x(3));
        expected.toggle(x(3), x(0));
        assert_eq!(a.pow(3), expected);
    }

    #[test]
    fn times_empty_is_empty() {
        let a = TensorElement::zero_divisor(2, 1);
        assert!(a.mul(&TensorElement::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn zero_divisor_multiplies_out_to_zero() {
        assert!(TensorElement::zero_divisor(3, 2).multiply_out().is_zero());
    }

    #[test]
    fn rendering() {
        let a = TensorElement::zero_divisor(1, 0);
        assert_eq!(a.render(&["x".to_string()]), "x ⊗ 1 + 1 ⊗ x");
    }
}
