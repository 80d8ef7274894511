use std::collections::HashMap;

use super::algebra::{Generator, GradedAlgebra};
use crate::charfun::{require_valid, CharacteristicFunction};
use crate::error::{Error, Result};
use crate::gf2::{solve, EchelonBasis, GF2Poly, GF2Vector, Monomial};
use crate::polytope::SimplePolytope;

/// `Z₂[x_F]/(I_SR + J_λ)` after eliminating the facets of one vertex through
/// the linear relations.
#[derive(Clone, Debug)]
pub struct SmallCoverPresentation {
    pub algebra: GradedAlgebra,
    /// Facets whose variables were eliminated (the first vertex).
    pub eliminated: Vec<usize>,
    /// Facets kept as generators, in generator order.
    pub variables: Vec<usize>,
    /// Degree-one class of every facet in the kept variables.
    pub facet_classes: Vec<GF2Poly>,
    /// Stanley–Reisner generators after substitution.
    pub relations: Vec<GF2Poly>,
}

pub fn facet_name(f: usize) -> String {
    format!("x{}", f + 1)
}

pub fn build(p: &SimplePolytope, lambda: &CharacteristicFunction) -> Result<SmallCoverPresentation> {
    require_valid(p, lambda)?;
    let eliminated = p.vertices()[0].clone();
    let variables: Vec<usize> = (0..p.facet_count())
        .filter(|f| eliminated.binary_search(f).is_err())
        .collect();
    let k = variables.len();
    let vertex_columns: Vec<GF2Vector> = eliminated.iter().map(|&f| lambda.vector(f).clone()).collect();

    // Σ_F λ(F) x_F = 0, so the eliminated classes are M⁻¹ Σ_{G kept} λ(G) x_G.
    let mut facet_classes = vec![GF2Poly::zero(k); p.facet_count()];
    for (gi, &g) in variables.iter().enumerate() {
        facet_classes[g] = GF2Poly::var(k, gi);
        let coeffs = solve(&vertex_columns, lambda.vector(g))?
            .expect("vertex vectors form a basis");
        for t in coeffs.iter_ones() {
            facet_classes[eliminated[t]].toggle(Monomial::var(k, gi));
        }
    }

    let mut relations = Vec::new();
    for t in p.minimal_non_faces() {
        let mut g = GF2Poly::one(k);
        for &f in &t {
            g = g.mul(&facet_classes[f])?;
        }
        if !g.is_zero() {
            relations.push(g);
        }
    }

    let algebra = quotient_algebra(k, &relations, p.dim())?;
    let algebra = rename(algebra, variables.iter().map(|&f| facet_name(f)).collect())?;
    Ok(SmallCoverPresentation {
        algebra,
        eliminated,
        variables,
        facet_classes,
        relations,
    })
}

fn rename(alg: GradedAlgebra, names: Vec<String>) -> Result<GradedAlgebra> {
    let generators = alg
        .generators()
        .iter()
        .zip(names)
        .map(|(g, name)| Generator {
            name,
            degree: g.degree,
        })
        .collect();
    let actions = (0..alg.generators().len())
        .map(|g| alg.action(g).to_vec())
        .collect();
    GradedAlgebra::new(generators, alg.basis().to_vec(), actions)
}

/// Graded quotient of `Z₂[x_1..x_k]` (all of degree one) by homogeneous
/// relations, built degree by degree: degree `d` is spanned by `x_i · b` for
/// basis monomials `b` of degree `d-1`, modulo commutativity and the
/// relations of degree `d`. Fails if anything survives above `max_degree`.
#[allow(clippy::needless_range_loop)]
pub fn quotient_algebra(k: usize, relations: &[GF2Poly], max_degree: usize) -> Result<GradedAlgebra> {
    let mut basis_by_degree: Vec<Vec<Monomial>> = vec![vec![Monomial::one(k)]];
    // actions_by_degree[d][i][b] = x_i · (b-th basis element of degree d), over degree d+1
    let mut actions_by_degree: Vec<Vec<Vec<GF2Vector>>> = Vec::new();

    for d in 1.. {
        let prev = &basis_by_degree[d - 1];
        let mut columns: Vec<(Monomial, usize, usize)> = (0..k)
            .flat_map(|i| {
                prev.iter()
                    .enumerate()
                    .map(move |(bi, b)| (b.mul(&Monomial::var(k, i)), i, bi))
            })
            .collect();
        columns.sort();
        let width = columns.len();
        let col_of: HashMap<(usize, usize), usize> = columns
            .iter()
            .enumerate()
            .map(|(c, &(_, i, bi))| ((i, bi), c))
            .collect();
        let mut echelon = EchelonBasis::new(width);

        if d >= 2 {
            let acts = &actions_by_degree[d - 2];
            for b in 0..basis_by_degree[d - 2].len() {
                for i in 0..k {
                    for j in i + 1..k {
                        let mut row = GF2Vector::zeros(width);
                        for b1 in acts[j][b].iter_ones() {
                            row.flip(col_of[&(i, b1)]);
                        }
                        for b2 in acts[i][b].iter_ones() {
                            row.flip(col_of[&(j, b2)]);
                        }
                        echelon.insert(row);
                    }
                }
            }
        }

        for g in relations.iter().filter(|g| g.degree() == Some(d)) {
            let mut row = GF2Vector::zeros(width);
            for w in g.terms() {
                let i = (0..k).rev().find(|&i| w.exponents()[i] > 0).expect("positive degree");
                let u = Monomial::var(k, i).quotient_of(w);
                for b1 in eval_in(&actions_by_degree, &u).iter_ones() {
                    row.flip(col_of[&(i, b1)]);
                }
            }
            echelon.insert(row);
        }

        let free = echelon.free_columns();
        if free.is_empty() {
            // x_i · (degree d-1) is zero for every i
            actions_by_degree.push(vec![vec![GF2Vector::zeros(0); prev.len()]; k]);
            break;
        }
        if d > max_degree {
            return Err(Error::ReductionFailed(format!(
                "quotient has nonzero classes in degree {d}, above {max_degree}"
            )));
        }
        let position: HashMap<usize, usize> = free.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let basis: Vec<Monomial> = free.iter().map(|&c| columns[c].0.clone()).collect();
        debug_assert!(basis.windows(2).all(|w| w[0] < w[1]));
        let acts: Vec<Vec<GF2Vector>> = (0..k)
            .map(|i| {
                (0..prev.len())
                    .map(|bi| {
                        let mut v = GF2Vector::unit(width, col_of[&(i, bi)]);
                        echelon.reduce(&mut v);
                        let mut out = GF2Vector::zeros(free.len());
                        for c in v.iter_ones() {
                            out.set(position[&c], true);
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        actions_by_degree.push(acts);
        basis_by_degree.push(basis);
    }

    let offsets: Vec<usize> = basis_by_degree
        .iter()
        .scan(0, |acc, b| {
            let o = *acc;
            *acc += b.len();
            Some(o)
        })
        .collect();
    let dim: usize = basis_by_degree.iter().map(|b| b.len()).sum();
    let actions = (0..k)
        .map(|i| {
            basis_by_degree
                .iter()
                .enumerate()
                .flat_map(|(d, level)| {
                    let offsets = &offsets;
                    let actions_by_degree = &actions_by_degree;
                    (0..level.len()).map(move |bi| {
                        let mut v = GF2Vector::zeros(dim);
                        if d + 1 < offsets.len() {
                            for c in actions_by_degree[d][i][bi].iter_ones() {
                                v.set(offsets[d + 1] + c, true);
                            }
                        }
                        v
                    })
                })
                .collect()
        })
        .collect();
    let generators = (0..k)
        .map(|i| Generator {
            name: format!("x{}", i + 1),
            degree: 1,
        })
        .collect();
    GradedAlgebra::new(generators, basis_by_degree.concat(), actions)
}

/// Reduced image of a monomial using the actions of all lower degrees.
fn eval_in(actions_by_degree: &[Vec<Vec<GF2Vector>>], u: &Monomial) -> GF2Vector {
    let mut v = GF2Vector::unit(1, 0);
    let mut d = 0;
    for (i, &e) in u.exponents().iter().enumerate() {
        for _ in 0..e {
            let mut next = GF2Vector::zeros(actions_by_degree[d][i].first().map_or(0, |c| c.len()));
            for b in v.iter_ones() {
                next.xor_assign(&actions_by_degree[d][i][b]);
            }
            v = next;
            d += 1;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfun::{from_bott, BottMatrix};
    use crate::gf2::default_names;

    #[test]
    fn truncated_by_single_relation() {
        let x4 = GF2Poly::monomial(Monomial::var_pow(1, 0, 4));
        let alg = quotient_algebra(1, &[x4], 3).unwrap();
        assert_eq!(alg.betti(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn exterior_pair() {
        let names = default_names("x", 2);
        let rels = ["x1^2", "x2^2"].map(|s| GF2Poly::parse(s, &names).unwrap());
        let alg = quotient_algebra(2, &rels, 2).unwrap();
        assert_eq!(alg.betti(), vec![1, 2, 1]);
    }

    #[test]
    fn relation_above_bound_fails() {
        assert!(quotient_algebra(1, &[], 4).is_err());
    }

    #[test]
    fn klein_bottle_betti() {
        let sq = SimplePolytope::polygon(4).unwrap();
        let lambda = CharacteristicFunction::from_bitstrings(&["10", "01", "10", "11"]).unwrap();
        let pres = build(&sq, &lambda).unwrap();
        assert_eq!(pres.algebra.betti(), vec![1, 2, 1]);
    }

    #[test]
    fn projective_space_betti() {
        for n in 1..6 {
            let s = SimplePolytope::simplex(n).unwrap();
            let lambda = from_bott(&BottMatrix::diagonal(&[n]).unwrap());
            let pres = build(&s, &lambda).unwrap();
            assert_eq!(pres.algebra.betti(), vec![1; n + 1]);
            assert_eq!(pres.algebra.cup_length(), n);
        }
    }

    #[test]
    fn hexagon_betti() {
        let hex = SimplePolytope::polygon(6).unwrap();
        let lambda =
            CharacteristicFunction::from_bitstrings(&["10", "01", "10", "01", "10", "01"]).unwrap();
        assert_eq!(build(&hex, &lambda).unwrap().algebra.betti(), vec![1, 4, 1]);
    }

    #[test]
    fn invalid_function_rejected() {
        let tri = SimplePolytope::simplex(2).unwrap();
        let lambda = CharacteristicFunction::from_bitstrings(&["10", "10", "01"]).unwrap();
        assert!(matches!(
            build(&tri, &lambda),
            Err(Error::InvalidCharacteristic { .. })
        ));
    }
}
