use serde::{Deserialize, Serialize};

use super::algebra::{Generator, GradedAlgebra};
use crate::charfun::BottMatrix;
use crate::error::{Error, Result};
use crate::gf2::{default_names, GF2Poly, GF2Vector, Monomial};
use crate::polytope::block_offsets;

/// The relations `Γ_j = y_j · ∏_k (y_j + Σ_{ℓ<j} β y_ℓ)` of a Bott ring with
/// the standard-monomial normal form they induce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottRelations {
    bott: BottMatrix,
    gammas: Vec<GF2Poly>,
    /// `Γ_j` minus its leading term `y_j^{n_j+1}`.
    tails: Vec<GF2Poly>,
    /// Test-only corruption: an extra relation `y_j^{n_j}`.
    injected: Option<usize>,
}

/// `y_j + Σ_{ℓ<j} β^j_{ℓ r} y_ℓ`, the image of the `r`-th non-last facet of block `j`.
pub fn linear_form(b: &BottMatrix, j: usize, r: usize) -> GF2Poly {
    let m = b.blocks();
    let mut p = GF2Poly::var(m, j);
    for l in 0..j {
        if b.beta(j, l).get(r) {
            p.toggle(Monomial::var(m, l));
        }
    }
    p
}

/// The degree-one class of facet `facet` (0-based, product layout) in terms of
/// `y_1..y_m`: the last facet of block `j` is `y_j` itself.
pub fn substitute_x(b: &BottMatrix, facet: usize) -> Result<GF2Poly> {
    let offsets = block_offsets(b.dims());
    let facet_count = *offsets.last().expect("nonempty");
    if facet >= facet_count {
        return Err(Error::UnknownFacet {
            index: facet,
            facet_count,
        });
    }
    let j = offsets.iter().rposition(|&o| o <= facet).expect("offset 0");
    let r = facet - offsets[j];
    if r == b.dims()[j] {
        Ok(GF2Poly::var(b.blocks(), j))
    } else {
        Ok(linear_form(b, j, r))
    }
}

impl BottRelations {
    pub fn new(b: &BottMatrix) -> Self {
        let m = b.blocks();
        let mut gammas = Vec::with_capacity(m);
        let mut tails = Vec::with_capacity(m);
        for (j, &nj) in b.dims().iter().enumerate() {
            let mut g = GF2Poly::var(m, j);
            for r in 0..nj {
                g = g.mul(&linear_form(b, j, r)).expect("same arity");
            }
            let mut tail = g.clone();
            tail.toggle(Monomial::var_pow(m, j, (nj + 1) as u8));
            debug_assert!(tail.terms().all(|t| t.exponents()[j] <= nj as u8));
            gammas.push(g);
            tails.push(tail);
        }
        BottRelations {
            bott: b.clone(),
            gammas,
            tails,
            injected: None,
        }
    }

    /// Adds the false relation `y_j^{n_j} = 0`; used to check that the
    /// verification sweeps catch a corrupted ring.
    #[doc(hidden)]
    pub fn with_injected_fault(mut self, j: usize) -> Self {
        self.injected = Some(j.min(self.dims().len().saturating_sub(1)));
        self
    }

    pub fn bott(&self) -> &BottMatrix {
        &self.bott
    }

    pub fn dims(&self) -> &[usize] {
        self.bott.dims()
    }

    pub fn gammas(&self) -> &[GF2Poly] {
        &self.gammas
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        m.exponents()
            .iter()
            .zip(self.dims())
            .all(|(&e, &n)| e as usize <= n)
    }

    /// `{y^a : a_j ≤ n_j}` in increasing monomial order.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        let dims = self.dims();
        let mut out = vec![Monomial::one(dims.len())];
        for (j, &nj) in dims.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..=nj).map(move |e| {
                        let mut ex = m.exponents().to_vec();
                        ex[j] = e as u8;
                        Monomial::from_exponents(ex)
                    })
                })
                .collect();
        }
        out.sort();
        out
    }

    /// Reduces onto standard monomials by rewriting `y_j^{n_j+1}` as the tail
    /// of `Γ_j`, always at the largest non-standard term.
    pub fn normal_form(&self, p: &GF2Poly) -> Result<GF2Poly> {
        let m = self.dims().len();
        if p.arity() != m {
            return Err(Error::ArityMismatch {
                left: p.arity(),
                right: m,
            });
        }
        let mut p = p.clone();
        loop {
            let Some(bad) = p.terms().rev().find(|t| !self.is_standard(t)).cloned() else {
                if let Some(j) = self.injected {
                    let n = self.dims()[j] as u8;
                    let killed: Vec<Monomial> =
                        p.terms().filter(|t| t.exponents()[j] >= n).cloned().collect();
                    for t in killed {
                        p.toggle(t);
                    }
                }
                return Ok(p);
            };
            let j = (0..m)
                .rev()
                .find(|&j| bad.exponents()[j] as usize > self.dims()[j])
                .expect("non-standard");
            let lead = Monomial::var_pow(m, j, (self.dims()[j] + 1) as u8);
            let q = lead.quotient_of(&bad);
            p.toggle(bad);
            p.add_assign(&self.tails[j].mul_monomial(&q));
        }
    }

    pub fn algebra(&self) -> GradedAlgebra {
        let m = self.dims().len();
        let basis = self.standard_monomials();
        let dim = basis.len();
        let index: std::collections::HashMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let actions = (0..m)
            .map(|j| {
                basis
                    .iter()
                    .map(|b| {
                        let prod = GF2Poly::monomial(b.mul(&Monomial::var(m, j)));
                        let nf = self.normal_form(&prod).expect("same arity");
                        let mut v = GF2Vector::zeros(dim);
                        for t in nf.terms() {
                            v.set(index[t], true);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let generators = default_names("y", m)
            .into_iter()
            .map(|name| Generator { name, degree: 1 })
            .collect();
        GradedAlgebra::new(generators, basis, actions).expect("standard monomials are graded")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopMonomialWitness {
    /// Normal form of `y_1^{n_1} ⋯ y_m^{n_m}`.
    pub top_class: String,
    pub top_nonzero: bool,
    /// Whether each `y_j^{n_j}` is nonzero.
    pub powers_nonzero: Vec<bool>,
}

impl TopMonomialWitness {
    pub fn holds(&self) -> bool {
        self.top_nonzero && self.powers_nonzero.iter().all(|&b| b)
    }
}

pub fn verify_top_monomial(rel: &BottRelations) -> TopMonomialWitness {
    let dims = rel.dims();
    let m = dims.len();
    let top = Monomial::from_exponents(dims.iter().map(|&n| n as u8).collect());
    let nf = rel.normal_form(&GF2Poly::monomial(top)).expect("same arity");
    let powers_nonzero = dims
        .iter()
        .enumerate()
        .map(|(j, &n)| {
            !rel.normal_form(&GF2Poly::monomial(Monomial::var_pow(m, j, n as u8)))
                .expect("same arity")
                .is_zero()
        })
        .collect();
    TopMonomialWitness {
        top_class: nf.render(&default_names("y", m)),
        top_nonzero: !nf.is_zero(),
        powers_nonzero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(m: usize) -> Vec<String> {
        default_names("y", m)
    }

    fn klein() -> BottMatrix {
        BottMatrix::diagonal(&[1, 1])
            .unwrap()
            .with_beta(1, 0, GF2Vector::parse("1").unwrap())
            .unwrap()
    }

    #[test]
    fn projective_relation() {
        let rel = BottRelations::new(&BottMatrix::diagonal(&[4]).unwrap());
        assert_eq!(rel.gammas()[0].render(&names(1)), "y1^5");
        let p = GF2Poly::parse("y1^5 + y1^2", &names(1)).unwrap();
        assert_eq!(rel.normal_form(&p).unwrap().render(&names(1)), "y1^2");
    }

    #[test]
    fn klein_relation_and_normal_form() {
        let rel = BottRelations::new(&klein());
        assert_eq!(rel.gammas()[1].render(&names(2)), "y2^2 + y1*y2");
        let y2sq = GF2Poly::parse("y2^2", &names(2)).unwrap();
        assert_eq!(rel.normal_form(&y2sq).unwrap().render(&names(2)), "y1*y2");
        let torus = BottRelations::new(&BottMatrix::diagonal(&[1, 1]).unwrap());
        assert_eq!(torus.gammas()[1].render(&names(2)), "y2^2");
    }

    #[test]
    fn substitution() {
        let b = klein();
        assert_eq!(substitute_x(&b, 0).unwrap().render(&names(2)), "y1");
        assert_eq!(substitute_x(&b, 1).unwrap().render(&names(2)), "y1");
        assert_eq!(substitute_x(&b, 2).unwrap().render(&names(2)), "y2 + y1");
        assert_eq!(substitute_x(&b, 3).unwrap().render(&names(2)), "y2");
        assert!(substitute_x(&b, 4).is_err());
    }

    #[test]
    fn foreign_arity_rejected() {
        let rel = BottRelations::new(&klein());
        assert!(rel.normal_form(&GF2Poly::var(3, 0)).is_err());
    }

    #[test]
    fn standard_count_and_top_class() {
        let rel = BottRelations::new(&BottMatrix::diagonal(&[3, 2, 1]).unwrap());
        assert_eq!(rel.standard_monomials().len(), 24);
        let w = verify_top_monomial(&rel);
        assert!(w.holds());
        let k = verify_top_monomial(&BottRelations::new(&klein()));
        assert_eq!(k.top_class, "y1*y2");
    }

    #[test]
    fn algebra_matches_normal_form() {
        let b = BottMatrix::from_code(&[2, 2], 0b11).unwrap();
        let rel = BottRelations::new(&b);
        let alg = rel.algebra();
        assert_eq!(alg.betti(), vec![1, 2, 3, 2, 1]);
        for d in 0..6u8 {
            for e in 0..6u8 {
                let mono = Monomial::from_exponents(vec![d, e]);
                let nf = rel.normal_form(&GF2Poly::monomial(mono.clone())).unwrap();
                assert_eq!(alg.to_poly(&alg.eval_monomial(&mono)), nf);
            }
        }
    }
}
