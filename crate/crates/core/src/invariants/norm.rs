use crate::cohomology::{GradedAlgebra, RingPresentation};
use crate::error::{Error, Result};
use crate::gf2::{EchelonBasis, GF2Vector};

/// Exact cup-length of the norm subring `N = span{x⊗y + y⊗x}` of `A ⊗ A`:
/// the largest `k` with `(N⁺)^k ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormExact {
    pub value: usize,
    /// Dimension of `(N⁺)^j`, `j = 1..=value`.
    pub power_dims: Vec<usize>,
}

fn product_table(alg: &GradedAlgebra) -> Vec<Vec<GF2Vector>> {
    (0..alg.dim())
        .map(|a| (0..alg.dim()).map(|b| alg.multiply_basis(a, b)).collect())
        .collect()
}

/// `(e_a⊗e_b + e_b⊗e_a) · t` on flattened tensors.
fn norm_times(table: &[Vec<GF2Vector>], dim: usize, a: usize, b: usize, t: &GF2Vector) -> GF2Vector {
    let mut out = GF2Vector::zeros(dim * dim);
    for idx in t.iter_ones() {
        let (c, d) = (idx / dim, idx % dim);
        for (x, y) in [(a, b), (b, a)] {
            let left = &table[x][c];
            if left.is_zero() {
                continue;
            }
            let right = &table[y][d];
            for l in left.iter_ones() {
                for r in right.iter_ones() {
                    out.flip(l * dim + r);
                }
            }
        }
    }
    out
}

pub fn norm_cl_exact(ring: &RingPresentation, budget: usize) -> Result<NormExact> {
    let alg = ring.algebra();
    let dim = alg.dim();
    if dim > budget {
        return Err(Error::BudgetExceeded {
            dimension: dim,
            budget,
        });
    }
    let table = product_table(alg);
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|a| (a + 1..dim).map(move |b| (a, b)))
        .collect();
    let unit = {
        let mut v = GF2Vector::zeros(dim * dim);
        v.set(0, true);
        v
    };
    let mut level: Vec<GF2Vector> = Vec::new();
    let mut echelon = EchelonBasis::new(dim * dim);
    for &(a, b) in &pairs {
        let n = norm_times(&table, dim, a, b, &unit);
        if echelon.insert(n.clone()) {
            level.push(n);
        }
    }
    let mut power_dims = Vec::new();
    while !level.is_empty() {
        power_dims.push(level.len());
        let mut echelon = EchelonBasis::new(dim * dim);
        let mut next = Vec::new();
        for t in &level {
            for &(a, b) in &pairs {
                let w = norm_times(&table, dim, a, b, t);
                if echelon.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        level = next;
    }
    Ok(NormExact {
        value: power_dims.len(),
        power_dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{point_ring, projective_ring, sphere_ring};
    use crate::invariants::zcl_exact;

    #[test]
    fn small_values() {
        assert_eq!(norm_cl_exact(&point_ring(), 12).unwrap().value, 0);
        assert_eq!(norm_cl_exact(&sphere_ring(3).unwrap(), 12).unwrap().value, 1);
        for n in 1..8 {
            let r = projective_ring(n).unwrap();
            let norm = norm_cl_exact(&r, 12).unwrap().value;
            assert!(norm <= zcl_exact(&r, 12).unwrap().value);
        }
        assert_eq!(norm_cl_exact(&projective_ring(2).unwrap(), 12).unwrap().value, 3);
    }
}
