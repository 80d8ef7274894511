use serde::{Deserialize, Serialize};

use crate::cohomology::{GradedAlgebra, RingPresentation, TensorSquare};
use crate::error::{Error, Result};
use crate::gf2::{EchelonBasis, GF2Poly, Monomial, TensorElement};

/// `⌈log₂(n+1)⌉`: the unique `r` with `n ≤ 2^r - 1 < 2n`.
pub fn power_exponent(n: usize) -> u32 {
    (usize::BITS - n.leading_zeros()).max(1)
}

/// `2^r - 1` for the `r` of [`power_exponent`].
pub fn odd_power_length(n: usize) -> usize {
    (1usize << power_exponent(n)) - 1
}

/// The product `∏_j (1⊗y_j + y_j⊗1)^{d_j}` with `d_j = 2^{r_j} - 1`, reduced
/// in `H* ⊗ H*` of a Bott ring.
#[derive(Clone, Debug)]
pub struct ZclCertificate {
    /// `d_j` for each generator.
    pub exponents: Vec<usize>,
    /// Unreduced factors `(1⊗y_j + y_j⊗1)^{d_j}`.
    pub factors: Vec<TensorElement>,
    pub product: TensorSquare,
    /// Whether `∏ y_j^{d_j-n_j} ⊗ ∏ y_j^{n_j}` appears in the reduced product.
    pub marked_term_survives: bool,
}

impl ZclCertificate {
    pub fn length(&self) -> usize {
        self.exponents.iter().sum()
    }

    /// Recomputes everything from scratch: every factor multiplies out to
    /// zero, the reduced product matches, and it is nonzero.
    pub fn verify(&self, ring: &RingPresentation) -> Result<bool> {
        let alg = ring.algebra();
        for f in &self.factors {
            if !ring.reduce(&f.multiply_out())?.is_zero() {
                return Ok(false);
            }
        }
        let mut product = TensorSquare::unit(alg);
        for f in &self.factors {
            product = product.mul(alg, &reduce_tensor(alg, f)?);
        }
        Ok(product == self.product && !product.is_zero())
    }

    pub fn summary(&self, ring: &RingPresentation) -> String {
        let names = ring.generator_names();
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .map(|(j, d)| format!("(1⊗{0} + {0}⊗1)^{d}", names[j]))
            .collect();
        format!(
            "{} ≠ 0 ({} terms after reduction)",
            factors.join("·"),
            self.product.term_count()
        )
    }
}

/// Writes an unreduced tensor of polynomials in the ring's basis.
pub fn reduce_tensor(alg: &GradedAlgebra, t: &TensorElement) -> Result<TensorSquare> {
    let mut out = TensorSquare::zero(alg.dim());
    for (u, v) in t.terms() {
        let left = alg.eval(&GF2Poly::monomial(u.clone()))?;
        if left.is_zero() {
            continue;
        }
        let right = alg.eval(&GF2Poly::monomial(v.clone()))?;
        for a in left.iter_ones() {
            for b in right.iter_ones() {
                out.toggle(a, b);
            }
        }
    }
    Ok(out)
}

pub fn zcl_certificate_bott(ring: &RingPresentation) -> Result<ZclCertificate> {
    let rel = ring
        .bott_relations()
        .ok_or_else(|| Error::Unsupported(format!("{} is not a Bott ring", ring.label())))?;
    let alg = ring.algebra();
    let dims = rel.dims();
    let m = dims.len();
    let exponents: Vec<usize> = dims.iter().map(|&n| odd_power_length(n)).collect();
    let factors: Vec<TensorElement> = exponents
        .iter()
        .enumerate()
        .map(|(j, &d)| TensorElement::zero_divisor(m, j).pow(d))
        .collect();
    let mut product = TensorSquare::unit(alg);
    for (j, &d) in exponents.iter().enumerate() {
        for _ in 0..d {
            product = product.mul_zero_divisor(alg, j);
        }
    }
    let left = Monomial::from_exponents(
        dims.iter()
            .zip(&exponents)
            .map(|(&n, &d)| (d - n) as u8)
            .collect(),
    );
    let right = Monomial::from_exponents(dims.iter().map(|&n| n as u8).collect());
    let marked_term_survives = match (alg.index_of(&left), alg.index_of(&right)) {
        (Some(a), Some(b)) => product.get(a, b),
        _ => false,
    };
    Ok(ZclCertificate {
        exponents,
        factors,
        product,
        marked_term_survives,
    })
}

/// A nonzero product of `k` zero-divisors found by the ideal-power chain:
/// `(1⊗g_{i_1} + g_{i_1}⊗1)(e_a ⊗ e_b)` followed by `1⊗g_i + g_i⊗1` for the
/// remaining generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZclWitness {
    pub seed: (usize, usize),
    pub generators: Vec<usize>,
}

impl ZclWitness {
    pub fn length(&self) -> usize {
        self.generators.len()
    }

    pub fn factors(&self, alg: &GradedAlgebra) -> Vec<TensorSquare> {
        let mut out = Vec::new();
        if let Some((&first, rest)) = self.generators.split_first() {
            let seed = TensorSquare::pure(alg.dim(), self.seed.0, self.seed.1);
            out.push(seed.mul_zero_divisor(alg, first));
            out.extend(rest.iter().map(|&g| TensorSquare::zero_divisor(alg, g)));
        }
        out
    }

    pub fn product(&self, alg: &GradedAlgebra) -> TensorSquare {
        let mut p = TensorSquare::unit(alg);
        for f in self.factors(alg) {
            p = p.mul(alg, &f);
        }
        p
    }

    /// Every factor is a zero-divisor and the product is nonzero.
    pub fn verify(&self, alg: &GradedAlgebra) -> bool {
        let factors = self.factors(alg);
        factors.iter().all(|f| f.multiply_out(alg).is_zero())
            && (factors.is_empty() || !self.product(alg).is_zero())
    }

    pub fn render(&self, alg: &GradedAlgebra) -> String {
        let factors = self.factors(alg);
        if factors.is_empty() {
            return "1".into();
        }
        factors
            .iter()
            .map(|f| format!("({})", f.render(alg)))
            .collect::<Vec<_>>()
            .join("·")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZclExact {
    pub value: usize,
    pub witness: ZclWitness,
    /// Dimension of each kernel power `K^j`, `j = 0..=value`.
    pub power_dims: Vec<usize>,
}

/// Exact zero-divisor cup-length: the largest `k` with `K^k ≠ 0`, where `K`
/// is the kernel of the cup product, generated by `1⊗g + g⊗1`, and
/// `K^{j+1} = Σ_g (1⊗g + g⊗1) K^j`.
pub fn zcl_exact(ring: &RingPresentation, budget: usize) -> Result<ZclExact> {
    let alg = ring.algebra();
    let dim = alg.dim();
    if dim > budget {
        return Err(Error::BudgetExceeded {
            dimension: dim,
            budget,
        });
    }
    let gens = alg.generators().len();
    let mut level: Vec<(TensorSquare, (usize, usize), Vec<usize>)> = (0..dim)
        .flat_map(|a| (0..dim).map(move |b| (a, b)))
        .map(|(a, b)| (TensorSquare::pure(dim, a, b), (a, b), Vec::new()))
        .collect();
    let mut power_dims = vec![dim * dim];
    let mut best = level[0].clone();
    loop {
        let mut echelon = EchelonBasis::new(dim * dim);
        let mut next = Vec::new();
        for (t, seed, path) in &level {
            for g in 0..gens {
                let w = t.mul_zero_divisor(alg, g);
                if echelon.insert(w.flatten()) {
                    let mut p = path.clone();
                    p.push(g);
                    next.push((w, *seed, p));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        power_dims.push(next.len());
        best = next[0].clone();
        level = next;
    }
    Ok(ZclExact {
        value: power_dims.len() - 1,
        witness: ZclWitness {
            seed: best.1,
            generators: best.2,
        },
        power_dims,
    })
}

/// Greedy lower bound: multiply by any `1⊗g + g⊗1` that keeps the product
/// nonzero, starting from `1 ⊗ 1`.
pub fn zcl_greedy(alg: &GradedAlgebra) -> ZclWitness {
    let mut product = TensorSquare::unit(alg);
    let mut generators = Vec::new();
    'outer: loop {
        for g in 0..alg.generators().len() {
            let next = product.mul_zero_divisor(alg, g);
            if !next.is_zero() {
                product = next;
                generators.push(g);
                continue 'outer;
            }
        }
        break;
    }
    ZclWitness {
        seed: (0, 0),
        generators,
    }
}
