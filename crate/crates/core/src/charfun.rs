//! Characteristic functions: validation, the Bott-matrix normal form over
//! products of simplices, and reduction of an arbitrary function to it.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{apply_columns, invert_columns, rank_gf2, GF2Vector};
use crate::polytope::{block_offsets, PolytopeFamily, SimplePolytope};

/// Facet-indexed vectors in `Z₂ⁿ`; the multiplicative `±1` convention maps
/// `-1` to bit 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacteristicFunction {
    dim: usize,
    vectors: Vec<GF2Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// Facet sets of the vertices whose matrix is singular.
    pub failing_vertices: Vec<Vec<usize>>,
}

impl CharacteristicFunction {
    pub fn new(vectors: Vec<GF2Vector>) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::InvalidInput("characteristic function has no vectors".into()));
        };
        let dim = first.len();
        if let Some((i, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "vector for F{} has length {}, expected {dim}",
                i + 1,
                v.len()
            )));
        }
        Ok(CharacteristicFunction { dim, vectors })
    }

    /// Parses bitstrings, leftmost character = coordinate 1.
    pub fn from_bitstrings<S: AsRef<str>>(bits: &[S]) -> Result<Self> {
        let vectors = bits
            .iter()
            .map(|s| GF2Vector::parse(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vectors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[GF2Vector] {
        &self.vectors
    }

    pub fn vector(&self, facet: usize) -> &GF2Vector {
        &self.vectors[facet]
    }

    pub fn to_bitstrings(&self) -> Vec<String> {
        self.vectors.iter().map(|v| v.to_bitstring()).collect()
    }

    /// Applies a linear map (given by columns) to every vector.
    pub fn transform(&self, columns: &[GF2Vector]) -> CharacteristicFunction {
        CharacteristicFunction {
            dim: self.dim,
            vectors: self
                .vectors
                .iter()
                .map(|v| apply_columns(columns, v, self.dim))
                .collect(),
        }
    }

    /// Reorders facets: facet `i` of the result carries the vector of facet `order[i]`.
    pub fn reorder(&self, order: &[usize]) -> CharacteristicFunction {
        CharacteristicFunction {
            dim: self.dim,
            vectors: order.iter().map(|&i| self.vectors[i].clone()).collect(),
        }
    }

    /// Whether the vectors on the given facets form a basis of `Z₂ⁿ`.
    pub fn is_basis_on(&self, facets: &[usize]) -> bool {
        facets.len() == self.dim
            && (rank_gf2(
                &facets
                    .iter()
                    .map(|&f| self.vectors[f].clone())
                    .collect::<Vec<_>>(),
            ) == Ok(self.dim))
    }
}

fn check_shape(p: &SimplePolytope, lambda: &CharacteristicFunction) -> Result<()> {
    if lambda.len() != p.facet_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} characteristic vectors for {} facets",
            lambda.len(),
            p.facet_count()
        )));
    }
    if lambda.dim() != p.dim() {
        return Err(Error::DimensionMismatch(format!(
            "characteristic vectors have length {}, polytope has dimension {}",
            lambda.dim(),
            p.dim()
        )));
    }
    Ok(())
}

pub fn validate(p: &SimplePolytope, lambda: &CharacteristicFunction) -> Result<ValidationReport> {
    check_shape(p, lambda)?;
    let failing_vertices: Vec<Vec<usize>> = p
        .vertices()
        .iter()
        .filter(|v| !lambda.is_basis_on(v))
        .cloned()
        .collect();
    Ok(ValidationReport {
        valid: failing_vertices.is_empty(),
        failing_vertices,
    })
}

/// Like [`validate`] but turns an invalid function into an error.
pub fn require_valid(p: &SimplePolytope, lambda: &CharacteristicFunction) -> Result<()> {
    let report = validate(p, lambda)?;
    if report.valid {
        Ok(())
    } else {
        Err(Error::InvalidCharacteristic {
            failing_vertices: report.failing_vertices,
        })
    }
}

/// Unipotent lower-triangular block matrix over `Z₂`. Diagonal blocks are the
/// all-ones vectors; the block below the diagonal in row `k`, column `j`
/// (`j < k`, 0-based) is a vector of length `dims[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BottMatrix {
    dims: Vec<usize>,
    beta: BTreeMap<(usize, usize), GF2Vector>,
}

impl BottMatrix {
    /// The block-diagonal matrix (all `β` zero).
    pub fn diagonal(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "Bott matrix needs positive block sizes, got {dims:?}"
            )));
        }
        let mut beta = BTreeMap::new();
        for (k, &nk) in dims.iter().enumerate() {
            for j in 0..k {
                beta.insert((k, j), GF2Vector::zeros(nk));
            }
        }
        Ok(BottMatrix {
            dims: dims.to_vec(),
            beta,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn blocks(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `β` in block row `k`, column `j`, `j < k`.
    pub fn beta(&self, k: usize, j: usize) -> &GF2Vector {
        &self.beta[&(k, j)]
    }

    pub fn set_beta(&mut self, k: usize, j: usize, v: GF2Vector) -> Result<()> {
        if j >= k || k >= self.dims.len() {
            return Err(Error::InvalidInput(format!(
                "β block ({}, {}) is not strictly below the diagonal of a {}-block matrix",
                k + 1,
                j + 1,
                self.dims.len()
            )));
        }
        if v.len() != self.dims[k] {
            return Err(Error::DimensionMismatch(format!(
                "β block ({}, {}) needs length {}, got {}",
                k + 1,
                j + 1,
                self.dims[k],
                v.len()
            )));
        }
        self.beta.insert((k, j), v);
        Ok(())
    }

    pub fn with_beta(mut self, k: usize, j: usize, v: GF2Vector) -> Result<Self> {
        self.set_beta(k, j, v)?;
        Ok(self)
    }

    /// Number of free bits in the `β` blocks.
    pub fn free_bits(dims: &[usize]) -> usize {
        dims.iter().enumerate().map(|(k, &n)| k * n).sum()
    }

    /// The matrix whose `β` bits, read in block order, are the low bits of `code`.
    pub fn from_code(dims: &[usize], code: u64) -> Result<Self> {
        let mut b = Self::diagonal(dims)?;
        let mut bit = 0;
        for (k, &nk) in dims.iter().enumerate() {
            for j in 0..k {
                let v = b.beta.get_mut(&(k, j)).expect("allocated");
                for i in 0..nk {
                    v.set(i, code >> bit & 1 == 1);
                    bit += 1;
                }
            }
        }
        Ok(b)
    }

    /// Every Bott matrix with the given block sizes.
    pub fn enumerate(dims: &[usize]) -> Result<impl Iterator<Item = BottMatrix>> {
        let bits = Self::free_bits(dims);
        if bits > 32 {
            return Err(Error::Unsupported(format!(
                "{bits} free β bits is too many to enumerate"
            )));
        }
        let dims = dims.to_vec();
        Self::diagonal(&dims)?;
        Ok((0..1u64 << bits).map(move |c| Self::from_code(&dims, c).expect("dims checked")))
    }

    pub fn random<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> Result<Self> {
        let bits = Self::free_bits(dims);
        let mut b = Self::diagonal(dims)?;
        if bits > 0 {
            let mut bit = 0;
            for (k, &nk) in dims.iter().enumerate() {
                for j in 0..k {
                    let v = b.beta.get_mut(&(k, j)).expect("allocated");
                    for i in 0..nk {
                        v.set(i, rng.gen());
                        bit += 1;
                    }
                }
            }
            debug_assert_eq!(bit, bits);
        }
        Ok(b)
    }

    /// Iterates `((k, j), β)` with `j < k`, 0-based.
    pub fn betas(&self) -> impl Iterator<Item = (&(usize, usize), &GF2Vector)> {
        self.beta.iter()
    }
}

/// Assembles the characteristic function on `Δ^{n_1} × … × Δ^{n_m}`: block
/// `j`'s first `n_j` facets get consecutive standard basis vectors and its
/// last facet gets column `j` of the Bott matrix.
pub fn from_bott(b: &BottMatrix) -> CharacteristicFunction {
    let dims = b.dims();
    let n = b.total_dim();
    let coord: Vec<usize> = coordinate_offsets(dims);
    let mut vectors = Vec::with_capacity(n + dims.len());
    for (j, &nj) in dims.iter().enumerate() {
        for r in 0..nj {
            vectors.push(GF2Vector::unit(n, coord[j] + r));
        }
        let mut alpha = GF2Vector::zeros(n);
        for r in 0..nj {
            alpha.set(coord[j] + r, true);
        }
        for (k, &ck) in coord.iter().enumerate().take(dims.len()).skip(j + 1) {
            for i in b.beta(k, j).iter_ones() {
                alpha.set(ck + i, true);
            }
        }
        vectors.push(alpha);
    }
    CharacteristicFunction { dim: n, vectors }
}

/// Coordinate offsets: block `j` owns coordinates `c[j]..c[j+1]`.
pub fn coordinate_offsets(dims: &[usize]) -> Vec<usize> {
    let mut c = vec![0];
    for &d in dims {
        c.push(c.last().unwrap() + d);
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottReduction {
    /// Bott matrix in the permuted block order.
    pub bott: BottMatrix,
    /// New block `t` is original block `permutation[t]`.
    pub permutation: Vec<usize>,
    /// Columns of the change of basis applied to every characteristic vector.
    pub basis_change: Vec<GF2Vector>,
}

impl BottReduction {
    /// Facet order realizing the block permutation: new facet `i` is
    /// original facet `order[i]`.
    pub fn facet_order(&self, original_dims: &[usize]) -> Vec<usize> {
        let offsets = block_offsets(original_dims);
        self.permutation
            .iter()
            .flat_map(|&b| offsets[b]..offsets[b + 1])
            .collect()
    }

    /// `λ` after the basis change and block permutation; equals
    /// `from_bott(&self.bott)` for the function that was reduced.
    pub fn apply(&self, original_dims: &[usize], lambda: &CharacteristicFunction) -> CharacteristicFunction {
        lambda
            .transform(&self.basis_change)
            .reorder(&self.facet_order(original_dims))
    }
}

/// Finds a block order and basis change bringing `λ` on a product of
/// simplices into Bott form. Block permutations are tried in lexicographic
/// order, identity first.
pub fn reduce_to_bott(p: &SimplePolytope, lambda: &CharacteristicFunction) -> Result<BottReduction> {
    let dims = match p.family() {
        PolytopeFamily::ProductOfSimplices { dims } => dims.clone(),
        _ => {
            return Err(Error::Unsupported(
                "Bott reduction needs a product of simplices".into(),
            ))
        }
    };
    require_valid(p, lambda)?;
    let m = dims.len();
    if m > 10 {
        return Err(Error::Unsupported(format!(
            "block permutation search is limited to 10 blocks, got {m}"
        )));
    }
    let offsets = block_offsets(&dims);
    let n = p.dim();
    for perm in (0..m).permutations(m) {
        let new_dims: Vec<usize> = perm.iter().map(|&b| dims[b]).collect();
        let coord = coordinate_offsets(&new_dims);
        let e_columns: Vec<GF2Vector> = perm
            .iter()
            .flat_map(|&b| (offsets[b]..offsets[b + 1] - 1).map(|f| lambda.vector(f).clone()))
            .collect();
        let Some(basis_change) = invert_columns(&e_columns)? else {
            continue;
        };
        let mut bott = BottMatrix::diagonal(&new_dims)?;
        let mut ok = true;
        'blocks: for (t, &b) in perm.iter().enumerate() {
            let alpha = apply_columns(&basis_change, lambda.vector(offsets[b + 1] - 1), n);
            for s in 0..m {
                let slice: Vec<bool> = (coord[s]..coord[s + 1]).map(|i| alpha.get(i)).collect();
                if s < t && slice.iter().any(|&x| x) || s == t && !slice.iter().all(|&x| x) {
                    ok = false;
                    break 'blocks;
                }
                if s > t {
                    bott.set_beta(s, t, GF2Vector::from_bools(&slice))?;
                }
            }
        }
        if ok {
            return Ok(BottReduction {
                bott,
                permutation: perm,
                basis_change,
            });
        }
    }
    Err(Error::ReductionFailed(format!(
        "no block order of {dims:?} gives a lower-triangular form"
    )))
}

/// A random valid characteristic function.
///
/// Products of simplices: a random Bott matrix transported by a random basis
/// change, with facets shuffled inside each block. Polygons: a random proper
/// colouring of the edge cycle by the three nonzero vectors of `Z₂²`.
/// Explicit polytopes: rejection sampling (`None` after `attempts` misses).
pub fn random_valid<R: Rng + ?Sized>(
    p: &SimplePolytope,
    rng: &mut R,
    attempts: usize,
) -> Result<Option<CharacteristicFunction>> {
    match p.family() {
        PolytopeFamily::ProductOfSimplices { dims } => {
            let b = BottMatrix::random(dims, rng)?;
            let base = from_bott(&b);
            let change = random_invertible(p.dim(), rng);
            let offsets = block_offsets(dims);
            let mut order = Vec::new();
            for j in 0..dims.len() {
                let mut block: Vec<usize> = (offsets[j]..offsets[j + 1]).collect();
                block.shuffle(rng);
                order.extend(block);
            }
            Ok(Some(base.transform(&change).reorder(&order)))
        }
        PolytopeFamily::Polygon { edges } => {
            let k = *edges;
            let colours = ["10", "01", "11"];
            loop {
                let mut c = vec![rng.gen_range(0..3usize)];
                for i in 1..k {
                    let prev = c[i - 1];
                    let next = (prev + rng.gen_range(1..3)) % 3;
                    c.push(next);
                }
                if c[k - 1] != c[0] {
                    let bits: Vec<&str> = c.iter().map(|&i| colours[i]).collect();
                    return CharacteristicFunction::from_bitstrings(&bits).map(Some);
                }
            }
        }
        PolytopeFamily::Explicit => {
            for _ in 0..attempts {
                let vectors = (0..p.facet_count())
                    .map(|_| {
                        let bits: Vec<bool> = (0..p.dim()).map(|_| rng.gen()).collect();
                        GF2Vector::from_bools(&bits)
                    })
                    .collect();
                let lambda = CharacteristicFunction::new(vectors)?;
                if validate(p, &lambda)?.valid {
                    return Ok(Some(lambda));
                }
            }
            Ok(None)
        }
    }
}

/// A uniformly random element of `GL_n(Z₂)` as columns.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<GF2Vector> {
    loop {
        let cols: Vec<GF2Vector> = (0..n)
            .map(|_| {
                let bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
                GF2Vector::from_bools(&bits)
            })
            .collect();
        if rank_gf2(&cols) == Ok(n) {
            return cols;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cf(bits: &[&str]) -> CharacteristicFunction {
        CharacteristicFunction::from_bitstrings(bits).unwrap()
    }

    #[test]
    fn square_from_example_is_valid() {
        let sq = SimplePolytope::polygon(4).unwrap();
        let r = validate(&sq, &cf(&["10", "01", "10", "11"])).unwrap();
        assert!(r.valid);
    }

    #[test]
    fn repeated_vector_at_vertex_fails() {
        let tri = SimplePolytope::simplex(2).unwrap();
        let r = validate(&tri, &cf(&["10", "10", "01"])).unwrap();
        assert!(!r.valid);
        assert_eq!(r.failing_vertices, vec![vec![0, 1]]);
    }

    #[test]
    fn standard_simplex_function_is_valid() {
        for n in 1..7 {
            let s = SimplePolytope::simplex(n).unwrap();
            let b = BottMatrix::diagonal(&[n]).unwrap();
            let lambda = from_bott(&b);
            let mut expected: Vec<GF2Vector> = (0..n).map(|i| GF2Vector::unit(n, i)).collect();
            expected.push(GF2Vector::ones(n));
            assert_eq!(lambda.vectors(), &expected[..]);
            assert!(validate(&s, &lambda).unwrap().valid);
        }
    }

    #[test]
    fn shape_errors() {
        let sq = SimplePolytope::polygon(4).unwrap();
        assert!(matches!(
            validate(&sq, &cf(&["10", "01", "10"])),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            validate(&sq, &cf(&["100", "010", "100", "110"])),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(CharacteristicFunction::from_bitstrings(&["10", "1"]).is_err());
    }

    #[test]
    fn klein_bottle_layout() {
        let b = BottMatrix::diagonal(&[1, 1])
            .unwrap()
            .with_beta(1, 0, GF2Vector::parse("1").unwrap())
            .unwrap();
        assert_eq!(from_bott(&b), cf(&["10", "11", "01", "01"]));
        let torus = BottMatrix::diagonal(&[1, 1]).unwrap();
        assert_eq!(from_bott(&torus), cf(&["10", "10", "01", "01"]));
    }

    #[test]
    fn round_trip_is_identity() {
        for dims in [vec![1, 1], vec![2, 1], vec![1, 2, 1], vec![2, 2]] {
            let p = SimplePolytope::product_of_simplices(&dims).unwrap();
            for b in BottMatrix::enumerate(&dims).unwrap() {
                let lambda = from_bott(&b);
                assert!(validate(&p, &lambda).unwrap().valid);
                let red = reduce_to_bott(&p, &lambda).unwrap();
                assert_eq!(red.permutation, (0..dims.len()).collect::<Vec<_>>());
                assert_eq!(red.bott, b);
            }
        }
    }

    #[test]
    fn upper_triangular_klein_needs_transposition() {
        // β sits above the diagonal: block 2's last facet carries (1,1)
        let p = SimplePolytope::product_of_simplices(&[1, 1]).unwrap();
        let lambda = cf(&["10", "10", "01", "11"]);
        let red = reduce_to_bott(&p, &lambda).unwrap();
        assert_eq!(red.permutation, vec![1, 0]);
        assert_eq!(red.apply(&[1, 1], &lambda), from_bott(&red.bott));
        assert!(red.bott.beta(1, 0).get(0));
    }

    #[test]
    fn swapped_torus_coordinates_reduce_with_identity() {
        let p = SimplePolytope::product_of_simplices(&[1, 1]).unwrap();
        let lambda = cf(&["01", "01", "10", "10"]);
        let red = reduce_to_bott(&p, &lambda).unwrap();
        assert_eq!(red.permutation, vec![0, 1]);
        assert_eq!(red.bott, BottMatrix::diagonal(&[1, 1]).unwrap());
    }

    #[test]
    fn every_valid_square_function_reduces() {
        let p = SimplePolytope::product_of_simplices(&[1, 1]).unwrap();
        let all = ["01", "10", "11"];
        let mut valid = 0;
        for code in 0..81usize {
            let bits: Vec<&str> = (0..4).map(|i| all[code / 3usize.pow(i) % 3]).collect();
            let lambda = cf(&bits);
            if !validate(&p, &lambda).unwrap().valid {
                continue;
            }
            valid += 1;
            let red = reduce_to_bott(&p, &lambda).unwrap();
            assert_eq!(red.apply(&[1, 1], &lambda), from_bott(&red.bott));
        }
        assert_eq!(valid, 18);
    }

    #[test]
    fn random_functions_are_valid_and_reduce() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dims in [vec![1, 2], vec![2, 1, 1], vec![3, 2], vec![1, 1, 1, 1]] {
            let p = SimplePolytope::product_of_simplices(&dims).unwrap();
            for _ in 0..20 {
                let lambda = random_valid(&p, &mut rng, 0).unwrap().unwrap();
                assert!(validate(&p, &lambda).unwrap().valid);
                let red = reduce_to_bott(&p, &lambda).unwrap();
                assert_eq!(red.apply(&dims, &lambda), from_bott(&red.bott));
            }
        }
        for k in 3..10 {
            let p = SimplePolytope::polygon(k).unwrap();
            let lambda = random_valid(&p, &mut rng, 0).unwrap().unwrap();
            assert!(validate(&p, &lambda).unwrap().valid);
        }
    }

    #[test]
    fn reduction_rejects_other_families() {
        let hex = SimplePolytope::polygon(6).unwrap();
        let lambda = cf(&["10", "01", "10", "01", "10", "01"]);
        assert!(matches!(reduce_to_bott(&hex, &lambda), Err(Error::Unsupported(_))));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(BottMatrix::free_bits(&[3, 3, 3]), 9);
        assert_eq!(BottMatrix::enumerate(&[2, 1, 3]).unwrap().count(), 1 << 7);
    }
}
