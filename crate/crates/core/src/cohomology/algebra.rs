use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{EchelonBasis, GF2Poly, GF2Vector, Monomial, TensorElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// A finite-dimensional graded-commutative GF(2) algebra given by a monomial
/// basis (grouped by degree, unit first) and the action of each generator on
/// that basis.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    generators: Vec<Generator>,
    basis: Vec<Monomial>,
    degrees: Vec<usize>,
    /// Degree `d` occupies `offsets[d]..offsets[d + 1]`.
    offsets: Vec<usize>,
    /// `actions[g][b]` = `g · e_b`.
    actions: Vec<Vec<GF2Vector>>,
    index: HashMap<Monomial, usize>,
}

impl GradedAlgebra {
    pub fn new(
        generators: Vec<Generator>,
        basis: Vec<Monomial>,
        actions: Vec<Vec<GF2Vector>>,
    ) -> Result<Self> {
        let weights: Vec<usize> = generators.iter().map(|g| g.degree).collect();
        if basis.first().is_none_or(|m| !m.is_one()) {
            return Err(Error::InvalidInput("algebra basis must start with the unit".into()));
        }
        if actions.len() != generators.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generator actions for {} generators",
                actions.len(),
                generators.len()
            )));
        }
        let degrees: Vec<usize> = basis.iter().map(|m| m.weighted_degree(&weights)).collect();
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput("algebra basis is not sorted by degree".into()));
        }
        let top = *degrees.last().expect("nonempty");
        let mut offsets = vec![0; top + 2];
        for &d in &degrees {
            offsets[d + 1] += 1;
        }
        for d in 1..offsets.len() {
            offsets[d] += offsets[d - 1];
        }
        let dim = basis.len();
        for a in &actions {
            if a.len() != dim || a.iter().any(|v| v.len() != dim) {
                return Err(Error::DimensionMismatch("generator action has wrong shape".into()));
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(GradedAlgebra {
            generators,
            basis,
            degrees,
            offsets,
            actions,
            index,
        })
    }

    /// `Z₂`, the cohomology of a point.
    pub fn point() -> Self {
        Self::new(Vec::new(), vec![Monomial::one(0)], Vec::new()).expect("well-formed")
    }

    /// `Z₂[x]/(x^{height+1})` with `|x| = degree`.
    pub fn truncated(name: &str, degree: usize, height: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("generator degree must be positive".into()));
        }
        let basis: Vec<Monomial> = (0..=height)
            .map(|e| Monomial::from_exponents(vec![e as u8]))
            .collect();
        let action = (0..=height)
            .map(|e| {
                if e < height {
                    GF2Vector::unit(height + 1, e + 1)
                } else {
                    GF2Vector::zeros(height + 1)
                }
            })
            .collect();
        Self::new(
            vec![Generator {
                name: name.to_string(),
                degree,
            }],
            basis,
            vec![action],
        )
    }

    /// `A ⊗ B` with the generators of `A` listed first.
    pub fn tensor(&self, other: &GradedAlgebra) -> Result<GradedAlgebra> {
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        let mut pairs: Vec<(usize, usize)> = (0..self.dim())
            .flat_map(|a| (0..other.dim()).map(move |b| (a, b)))
            .collect();
        let joined = |&(a, b): &(usize, usize)| {
            let mut e = self.basis[a].exponents().to_vec();
            e.extend_from_slice(other.basis[b].exponents());
            Monomial::from_exponents(e)
        };
        pairs.sort_by(|p, q| {
            (self.degrees[p.0] + other.degrees[p.1])
                .cmp(&(self.degrees[q.0] + other.degrees[q.1]))
                .then_with(|| joined(p).cmp(&joined(q)))
        });
        let pos: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let dim = pairs.len();
        let mut actions = Vec::new();
        for g in 0..self.generators.len() {
            actions.push(
                pairs
                    .iter()
                    .map(|&(a, b)| {
                        let mut v = GF2Vector::zeros(dim);
                        for a2 in self.actions[g][a].iter_ones() {
                            v.flip(pos[&(a2, b)]);
                        }
                        v
                    })
                    .collect(),
            );
        }
        for g in 0..other.generators.len() {
            actions.push(
                pairs
                    .iter()
                    .map(|&(a, b)| {
                        let mut v = GF2Vector::zeros(dim);
                        for b2 in other.actions[g][b].iter_ones() {
                            v.flip(pos[&(a, b2)]);
                        }
                        v
                    })
                    .collect(),
            );
        }
        let basis = pairs.iter().map(joined).collect();
        GradedAlgebra::new(generators, basis, actions)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn degree_of(&self, b: usize) -> usize {
        self.degrees[b]
    }

    pub fn top_degree(&self) -> usize {
        self.offsets.len() - 2
    }

    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        if d + 1 >= self.offsets.len() {
            return self.dim()..self.dim();
        }
        self.offsets[d]..self.offsets[d + 1]
    }

    /// Dimension of each homogeneous piece, degrees `0..=top`.
    pub fn betti(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|d| self.degree_range(d).len()).collect()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn unit(&self) -> GF2Vector {
        GF2Vector::unit(self.dim(), 0)
    }

    pub fn basis_vector(&self, b: usize) -> GF2Vector {
        GF2Vector::unit(self.dim(), b)
    }

    pub fn action(&self, g: usize) -> &[GF2Vector] {
        &self.actions[g]
    }

    pub fn act(&self, g: usize, v: &GF2Vector) -> GF2Vector {
        let mut out = GF2Vector::zeros(self.dim());
        for b in v.iter_ones() {
            out.xor_assign(&self.actions[g][b]);
        }
        out
    }

    pub fn act_monomial(&self, m: &Monomial, v: &GF2Vector) -> GF2Vector {
        let mut out = v.clone();
        for (g, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                if out.is_zero() {
                    return out;
                }
                out = self.act(g, &out);
            }
        }
        out
    }

    /// Image of a monomial in the generators.
    pub fn eval_monomial(&self, m: &Monomial) -> GF2Vector {
        self.act_monomial(m, &self.unit())
    }

    /// Image of a polynomial in the generators.
    pub fn eval(&self, p: &GF2Poly) -> Result<GF2Vector> {
        if p.arity() != self.generators.len() {
            return Err(Error::ArityMismatch {
                left: p.arity(),
                right: self.generators.len(),
            });
        }
        let mut out = GF2Vector::zeros(self.dim());
        for m in p.terms() {
            out.xor_assign(&self.eval_monomial(m));
        }
        Ok(out)
    }

    pub fn generator_vector(&self, g: usize) -> GF2Vector {
        self.act(g, &self.unit())
    }

    pub fn multiply(&self, x: &GF2Vector, y: &GF2Vector) -> GF2Vector {
        let mut out = GF2Vector::zeros(self.dim());
        for a in x.iter_ones() {
            out.xor_assign(&self.act_monomial(&self.basis[a], y));
        }
        out
    }

    pub fn multiply_basis(&self, a: usize, b: usize) -> GF2Vector {
        self.act_monomial(&self.basis[a], &self.basis_vector(b))
    }

    /// The polynomial whose terms are the basis monomials in the support of `v`.
    pub fn to_poly(&self, v: &GF2Vector) -> GF2Poly {
        GF2Poly::from_monomials(
            self.generators.len(),
            v.iter_ones().map(|b| self.basis[b].clone()),
        )
    }

    pub fn render(&self, v: &GF2Vector) -> String {
        self.to_poly(v).render(&self.generator_names())
    }

    /// Products of positive-degree elements: the largest `ℓ` with `(A₊)^ℓ ≠ 0`.
    pub fn cup_length(&self) -> usize {
        let mut current: Vec<GF2Vector> = (1..self.dim()).map(|b| self.basis_vector(b)).collect();
        let mut length = 0;
        while !current.is_empty() {
            length += 1;
            let mut next = EchelonBasis::new(self.dim());
            for v in &current {
                for g in 0..self.generators.len() {
                    next.insert(self.act(g, v));
                }
            }
            current = next.rows().to_vec();
        }
        length
    }
}

/// An element of `A ⊗ A` stored densely as a `dim × dim` bit matrix: bit
/// `(a, b)` is the coefficient of `e_a ⊗ e_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorSquare {
    dim: usize,
    rows: Vec<GF2Vector>,
}

impl TensorSquare {
    pub fn zero(dim: usize) -> Self {
        TensorSquare {
            dim,
            rows: vec![GF2Vector::zeros(dim); dim],
        }
    }

    pub fn pure(dim: usize, a: usize, b: usize) -> Self {
        let mut t = Self::zero(dim);
        t.rows[a].set(b, true);
        t
    }

    pub fn unit(alg: &GradedAlgebra) -> Self {
        Self::pure(alg.dim(), 0, 0)
    }

    /// `1 ⊗ g + g ⊗ 1`.
    pub fn zero_divisor(alg: &GradedAlgebra, g: usize) -> Self {
        Self::unit(alg).mul_zero_divisor(alg, g)
    }

    /// `1 ⊗ x + x ⊗ 1`.
    pub fn zero_divisor_of(alg: &GradedAlgebra, x: &GF2Vector) -> Self {
        let mut t = Self::zero(alg.dim());
        for b in x.iter_ones() {
            t.toggle(0, b);
            t.toggle(b, 0);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        self.rows[a].get(b)
    }

    pub fn toggle(&mut self, a: usize, b: usize) {
        self.rows[a].flip(b);
    }

    pub fn add_assign(&mut self, other: &TensorSquare) {
        for (r, o) in self.rows.iter_mut().zip(&other.rows) {
            r.xor_assign(o);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn term_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones()).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, r)| r.iter_ones().map(move |b| (a, b)))
    }

    /// `(g ⊗ 1) · self`.
    pub fn mul_left(&self, alg: &GradedAlgebra, g: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, row) in self.rows.iter().enumerate() {
            if row.is_zero() {
                continue;
            }
            for a2 in alg.action(g)[a].iter_ones() {
                out.rows[a2].xor_assign(row);
            }
        }
        out
    }

    /// `(1 ⊗ g) · self`.
    pub fn mul_right(&self, alg: &GradedAlgebra, g: usize) -> Self {
        TensorSquare {
            dim: self.dim,
            rows: self.rows.iter().map(|r| alg.act(g, r)).collect(),
        }
    }

    /// `(1 ⊗ g + g ⊗ 1) · self`.
    pub fn mul_zero_divisor(&self, alg: &GradedAlgebra, g: usize) -> Self {
        let mut out = self.mul_left(alg, g);
        out.add_assign(&self.mul_right(alg, g));
        out
    }

    /// General product in `A ⊗ A`.
    pub fn mul(&self, alg: &GradedAlgebra, other: &TensorSquare) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, b) in self.terms() {
            for (c, d) in other.terms() {
                let left = alg.multiply_basis(a, c);
                if left.is_zero() {
                    continue;
                }
                let right = alg.multiply_basis(b, d);
                if right.is_zero() {
                    continue;
                }
                for l in left.iter_ones() {
                    out.rows[l].xor_assign(&right);
                }
            }
        }
        out
    }

    /// Image under the cup product `A ⊗ A → A`.
    pub fn multiply_out(&self, alg: &GradedAlgebra) -> GF2Vector {
        let mut out = GF2Vector::zeros(self.dim);
        for (a, b) in self.terms() {
            out.xor_assign(&alg.multiply_basis(a, b));
        }
        out
    }

    pub fn flatten(&self) -> GF2Vector {
        let mut v = GF2Vector::zeros(self.dim * self.dim);
        for (a, b) in self.terms() {
            v.set(a * self.dim + b, true);
        }
        v
    }

    pub fn unflatten(dim: usize, v: &GF2Vector) -> Self {
        let mut t = Self::zero(dim);
        for i in v.iter_ones() {
            t.rows[i / dim].set(i % dim, true);
        }
        t
    }

    /// The same element written with basis monomials on both legs.
    pub fn to_tensor_element(&self, alg: &GradedAlgebra) -> TensorElement {
        let mut t = TensorElement::zero(alg.generators().len());
        for (a, b) in self.terms() {
            t.toggle(alg.basis()[a].clone(), alg.basis()[b].clone());
        }
        t
    }

    pub fn render(&self, alg: &GradedAlgebra) -> String {
        self.to_tensor_element(alg).render(&alg.generator_names())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_ring() {
        let a = GradedAlgebra::truncated("x", 1, 3).unwrap();
        assert_eq!(a.betti(), vec![1, 1, 1, 1]);
        let x = a.generator_vector(0);
        let x3 = a.multiply(&x, &a.multiply(&x, &x));
        assert!(!x3.is_zero());
        assert!(a.multiply(&x, &x3).is_zero());
        assert_eq!(a.cup_length(), 3);
    }

    #[test]
    fn tensor_dimensions() {
        let a = GradedAlgebra::truncated("a", 2, 2).unwrap();
        let b = GradedAlgebra::truncated("b", 3, 1).unwrap();
        let t = a.tensor(&b).unwrap();
        assert_eq!(t.dim(), 6);
        assert_eq!(t.betti(), vec![1, 0, 1, 1, 1, 1, 0, 1]);
        assert_eq!(t.cup_length(), 3);
    }

    #[test]
    fn zero_divisor_square_in_truncated_ring() {
        let a = GradedAlgebra::truncated("x", 1, 2).unwrap();
        let z = TensorSquare::zero_divisor(&a, 0);
        assert!(z.multiply_out(&a).is_zero());
        let z3 = z.mul_zero_divisor(&a, 0).mul_zero_divisor(&a, 0);
        assert_eq!(z3.render(&a), "x^2 ⊗ x + x ⊗ x^2");
        assert!(z3.mul_zero_divisor(&a, 0).is_zero());
        assert_eq!(z.mul(&a, &z).mul(&a, &z), z3);
    }

    #[test]
    fn flatten_round_trip() {
        let a = GradedAlgebra::truncated("x", 1, 4).unwrap();
        let z = TensorSquare::zero_divisor(&a, 0).mul_zero_divisor(&a, 0);
        assert_eq!(TensorSquare::unflatten(a.dim(), &z.flatten()), z);
    }
}
