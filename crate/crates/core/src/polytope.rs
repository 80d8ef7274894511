//! Combinatorial simple polytopes described by vertex–facet incidence.
//!
//! A vertex is recorded as the set of the `n` facets that meet there; every
//! other face is recovered as a connected set of vertices sharing a common set
//! of facets. Facet and vertex indices are 0-based throughout the library and
//! rendered as `F1, F2, …` in human-facing output.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PolytopeFamily {
    ProductOfSimplices { dims: Vec<usize> },
    Polygon { edges: usize },
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePolytope {
    dim: usize,
    facet_count: usize,
    vertices: Vec<Vec<usize>>,
    family: PolytopeFamily,
}

/// Face counts `f[i]` = number of `i`-dimensional faces, `i = 0..n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<u128>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVector(pub Vec<u128>);

impl HVector {
    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn total(&self) -> u128 {
        self.0.iter().sum()
    }
}

impl SimplePolytope {
    /// `Δ^{n_1} × … × Δ^{n_m}`. Block `j` owns the consecutive facets
    /// `F^j_1 … F^j_{n_j+1}`; a vertex omits exactly one facet from every block.
    pub fn product_of_simplices(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidInput(
                "product of simplices needs at least one factor".into(),
            ));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::InvalidInput(format!(
                "simplex dimension at position {pos} must be positive"
            )));
        }
        let dim: usize = dims.iter().sum();
        let offsets = block_offsets(dims);
        let facet_count = offsets[dims.len()];
        let mut vertices = Vec::new();
        let mut omitted = vec![0usize; dims.len()];
        loop {
            let mut v = Vec::with_capacity(dim);
            for (j, &nj) in dims.iter().enumerate() {
                v.extend((0..=nj).filter(|&r| r != omitted[j]).map(|r| offsets[j] + r));
            }
            vertices.push(v);
            // odometer over the omitted facet of each block, last block fastest
            let mut j = dims.len();
            loop {
                if j == 0 {
                    return Ok(SimplePolytope {
                        dim,
                        facet_count,
                        vertices,
                        family: PolytopeFamily::ProductOfSimplices {
                            dims: dims.to_vec(),
                        },
                    });
                }
                j -= 1;
                omitted[j] += 1;
                if omitted[j] <= dims[j] {
                    break;
                }
                omitted[j] = 0;
            }
        }
    }

    /// The `k`-gon: edge `F_i` meets `F_{i+1}` at vertex `i` (indices mod `k`).
    pub fn polygon(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidInput(format!(
                "a polygon needs at least 3 edges, got {k}"
            )));
        }
        let vertices = (0..k)
            .map(|i| {
                let mut v = vec![i, (i + 1) % k];
                v.sort_unstable();
                v
            })
            .collect();
        Ok(SimplePolytope {
            dim: 2,
            facet_count: k,
            vertices,
            family: PolytopeFamily::Polygon { edges: k },
        })
    }

    /// The simplex `Δ^n`.
    pub fn simplex(n: usize) -> Result<Self> {
        Self::product_of_simplices(&[n])
    }

    /// A simple polytope given directly by its vertex–facet incidence.
    pub fn explicit(dim: usize, facet_count: usize, vertices: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("polytope dimension must be positive".into()));
        }
        let mut seen_facets = vec![false; facet_count];
        let mut seen_vertices = HashSet::new();
        let mut normalized = Vec::with_capacity(vertices.len());
        for (vi, v) in vertices.into_iter().enumerate() {
            let set: BTreeSet<usize> = v.iter().copied().collect();
            if set.len() != v.len() || v.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "vertex {vi} must list exactly {dim} distinct facets, got {v:?}"
                )));
            }
            for &f in &set {
                if f >= facet_count {
                    return Err(Error::UnknownFacet {
                        index: f,
                        facet_count,
                    });
                }
                seen_facets[f] = true;
            }
            let sorted: Vec<usize> = set.into_iter().collect();
            if !seen_vertices.insert(sorted.clone()) {
                return Err(Error::InvalidInput(format!("duplicate vertex {sorted:?}")));
            }
            normalized.push(sorted);
        }
        if let Some(f) = seen_facets.iter().position(|&s| !s) {
            return Err(Error::InvalidInput(format!(
                "facet F{} contains no vertex",
                f + 1
            )));
        }
        let p = SimplePolytope {
            dim,
            facet_count,
            vertices: normalized,
            family: PolytopeFamily::Explicit,
        };
        for vi in 0..p.vertices.len() {
            let deg = p.vertex_neighbors(vi).count();
            if deg != dim {
                return Err(Error::InvalidInput(format!(
                    "vertex {:?} has {deg} incident edges; a simple {dim}-polytope needs {dim}",
                    p.vertices[vi]
                )));
            }
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.facet_count
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn family(&self) -> &PolytopeFamily {
        &self.family
    }

    pub fn product_dims(&self) -> Option<&[usize]> {
        match &self.family {
            PolytopeFamily::ProductOfSimplices { dims } => Some(dims),
            _ => None,
        }
    }

    fn check_facet(&self, f: usize) -> Result<()> {
        if f >= self.facet_count {
            return Err(Error::UnknownFacet {
                index: f,
                facet_count: self.facet_count,
            });
        }
        Ok(())
    }

    /// Vertices adjacent to vertex `vi` along an edge (sharing `n-1` facets).
    pub fn vertex_neighbors(&self, vi: usize) -> impl Iterator<Item = usize> + '_ {
        let v = &self.vertices[vi];
        self.vertices
            .iter()
            .enumerate()
            .filter(move |(wi, w)| *wi != vi && shared(v, w) + 1 == self.dim)
            .map(|(wi, _)| wi)
    }

    pub fn vertices_on(&self, facets: &[usize]) -> Vec<usize> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| facets.iter().all(|f| v.binary_search(f).is_ok()))
            .map(|(i, _)| i)
            .collect()
    }

    /// Connected components (as sorted vertex-index lists) of the set of
    /// vertices lying on every facet in `facets`.
    pub fn faces_meeting(&self, facets: &[usize]) -> Result<Vec<Vec<usize>>> {
        for &f in facets {
            self.check_facet(f)?;
        }
        let on = self.vertices_on(facets);
        let inside: HashSet<usize> = on.iter().copied().collect();
        let mut done = HashSet::new();
        let mut components = Vec::new();
        for &start in &on {
            if done.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            done.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for w in self.vertex_neighbors(v) {
                    if inside.contains(&w) && done.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        Ok(components)
    }

    /// Facets `G ≠ F` with `G ∩ F ≠ ∅`.
    pub fn neighbor_facets(&self, f: usize) -> Result<Vec<usize>> {
        self.check_facet(f)?;
        let mut out = BTreeSet::new();
        for v in &self.vertices {
            if v.binary_search(&f).is_ok() {
                out.extend(v.iter().copied().filter(|&g| g != f));
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Facets that are `(n-1)`-simplices: a simple `(n-1)`-polytope with
    /// exactly `n` vertices is a simplex.
    pub fn simplex_facets(&self) -> Vec<usize> {
        (0..self.facet_count)
            .filter(|&f| self.vertices_on(&[f]).len() == self.dim)
            .collect()
    }

    pub fn is_face(&self, facets: &[usize]) -> bool {
        self.vertices
            .iter()
            .any(|v| facets.iter().all(|f| v.binary_search(f).is_ok()))
    }

    /// Minimal sets of facets with empty common intersection (the generators
    /// of the Stanley–Reisner ideal).
    pub fn minimal_non_faces(&self) -> Vec<Vec<usize>> {
        if let PolytopeFamily::ProductOfSimplices { dims } = &self.family {
            let offsets = block_offsets(dims);
            return (0..dims.len())
                .map(|j| (offsets[j]..offsets[j + 1]).collect())
                .collect();
        }
        self.enumerate_minimal_non_faces()
    }

    pub(crate) fn enumerate_minimal_non_faces(&self) -> Vec<Vec<usize>> {
        let faces = self.all_faces();
        let mut out = Vec::new();
        for s in &faces {
            let start = s.last().map_or(0, |&l| l + 1);
            for f in start..self.facet_count {
                let mut t = s.clone();
                t.push(f);
                if faces.contains(&t) {
                    continue;
                }
                let minimal = (0..t.len()).all(|skip| {
                    let sub: Vec<usize> = t
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, &x)| x)
                        .collect();
                    faces.contains(&sub)
                });
                if minimal {
                    out.push(t);
                }
            }
        }
        out.sort();
        out
    }

    /// Every facet set (sorted) contained in some vertex, including the empty set.
    fn all_faces(&self) -> HashSet<Vec<usize>> {
        let mut faces = HashSet::new();
        for v in &self.vertices {
            for mask in 0u64..(1u64 << v.len()) {
                let s: Vec<usize> = v
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &f)| f)
                    .collect();
                faces.insert(s);
            }
        }
        faces
    }

    pub fn f_vector(&self) -> FVector {
        match &self.family {
            PolytopeFamily::ProductOfSimplices { dims } => product_f_vector(dims),
            PolytopeFamily::Polygon { edges } => FVector(vec![*edges as u128, *edges as u128]),
            PolytopeFamily::Explicit => self.enumerate_f_vector(),
        }
    }

    /// Face counts by direct enumeration of facet subsets at each vertex,
    /// counting connected components of each common intersection.
    pub(crate) fn enumerate_f_vector(&self) -> FVector {
        let n = self.dim;
        let mut f = vec![0u128; n];
        let mut by_set = HashSet::new();
        for v in &self.vertices {
            for mask in 1u64..(1u64 << n) {
                let s: Vec<usize> = v
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                by_set.insert(s);
            }
        }
        for s in by_set {
            let comps = self
                .faces_meeting(&s)
                .expect("facet indices come from vertices")
                .len();
            f[n - s.len()] += comps as u128;
        }
        FVector(f)
    }

    /// `Σ_i c_i (t-1)^{n-i} = Σ_i h_i t^{n-i}` where `c_i` counts faces of
    /// codimension `i` (`c_0 = 1`).
    pub fn h_vector(&self) -> HVector {
        h_from_f(&self.f_vector(), self.dim)
    }
}

pub fn h_from_f(f: &FVector, dim: usize) -> HVector {
    let n = dim;
    let codim = |i: usize| -> i128 {
        if i == 0 {
            1
        } else {
            f.0[n - i] as i128
        }
    };
    let h = (0..=n)
        .map(|k| {
            let s: i128 = (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial((n - i) as u64, (k - i) as u64) as i128 * codim(i)
                })
                .sum();
            u128::try_from(s).expect("h-vector entries of a simple polytope are non-negative")
        })
        .collect();
    HVector(h)
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `𝓝`-style offsets: block `j` owns facets `offsets[j]..offsets[j+1]`.
pub fn block_offsets(dims: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for &d in dims {
        acc += d + 1;
        offsets.push(acc);
    }
    offsets
}

fn product_f_vector(dims: &[usize]) -> FVector {
    // face polynomial of Δ^k: Σ_d C(k+1, d+1) t^d, including the top face
    let mut poly = vec![1u128];
    for &k in dims {
        let factor: Vec<u128> = (0..=k)
            .map(|d| binomial(k as u64 + 1, d as u64 + 1))
            .collect();
        let mut next = vec![0u128; poly.len() + factor.len() - 1];
        for (i, a) in poly.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        poly = next;
    }
    let n: usize = dims.iter().sum();
    poly.truncate(n);
    FVector(poly)
}

fn shared(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_counts() {
        let p = SimplePolytope::product_of_simplices(&[2]).unwrap();
        assert_eq!((p.dim(), p.facet_count(), p.vertex_count()), (2, 3, 3));
    }

    #[test]
    fn square_counts() {
        let p = SimplePolytope::product_of_simplices(&[1, 1]).unwrap();
        assert_eq!((p.facet_count(), p.vertex_count()), (4, 4));
    }

    #[test]
    fn large_product_counts() {
        let p = SimplePolytope::product_of_simplices(&[16, 8]).unwrap();
        assert_eq!((p.dim(), p.facet_count(), p.vertex_count()), (24, 26, 153));
    }

    #[test]
    fn rejects_degenerate_products() {
        assert!(SimplePolytope::product_of_simplices(&[]).is_err());
        assert!(SimplePolytope::product_of_simplices(&[2, 0]).is_err());
    }

    #[test]
    fn polygons() {
        let hex = SimplePolytope::polygon(6).unwrap();
        assert_eq!((hex.facet_count(), hex.vertex_count()), (6, 6));
        assert!(SimplePolytope::polygon(2).is_err());
    }

    #[test]
    fn square_two_ways_has_same_incidence() {
        // product layout: block 1 = {F0, F1}, block 2 = {F2, F3}; in the
        // 4-gon the opposite pairs are {F0, F2} and {F1, F3}
        let a = SimplePolytope::product_of_simplices(&[1, 1]).unwrap();
        let b = SimplePolytope::polygon(4).unwrap();
        let relabel = [0, 2, 1, 3];
        let mut va: Vec<Vec<usize>> = a
            .vertices()
            .iter()
            .map(|v| {
                let mut w: Vec<usize> = v.iter().map(|&f| relabel[f]).collect();
                w.sort_unstable();
                w
            })
            .collect();
        let mut vb = b.vertices().to_vec();
        va.sort();
        vb.sort();
        assert_eq!(va, vb);
    }

    #[test]
    fn faces_meeting_examples() {
        let sq = SimplePolytope::polygon(4).unwrap();
        assert!(sq.faces_meeting(&[0, 2]).unwrap().is_empty());
        let adj = sq.faces_meeting(&[0, 1]).unwrap();
        assert_eq!(adj.len(), 1);
        assert_eq!(adj[0].len(), 1);
        let hex = SimplePolytope::polygon(6).unwrap();
        let edge = hex.faces_meeting(&[0]).unwrap();
        assert_eq!(edge.len(), 1);
        assert_eq!(edge[0].len(), 2);
        assert!(matches!(
            hex.faces_meeting(&[9]),
            Err(Error::UnknownFacet { index: 9, .. })
        ));
    }

    #[test]
    fn full_vertex_facet_set_is_that_vertex() {
        let p = SimplePolytope::product_of_simplices(&[2, 1, 1]).unwrap();
        for (vi, v) in p.vertices().iter().enumerate() {
            assert_eq!(p.faces_meeting(v).unwrap(), vec![vec![vi]]);
        }
    }

    #[test]
    fn h_vector_examples() {
        let sq = SimplePolytope::polygon(4).unwrap();
        assert_eq!(sq.h_vector(), HVector(vec![1, 2, 1]));
        let hex = SimplePolytope::polygon(6).unwrap();
        assert_eq!(hex.h_vector(), HVector(vec![1, 4, 1]));
        for n in 1..8 {
            let s = SimplePolytope::simplex(n).unwrap();
            assert_eq!(s.h_vector(), HVector(vec![1; n + 1]));
        }
    }

    #[test]
    fn simplex_facet_detection() {
        let s = SimplePolytope::simplex(4).unwrap();
        assert_eq!(s.simplex_facets(), (0..5).collect::<Vec<_>>());
        let hex = SimplePolytope::polygon(6).unwrap();
        assert_eq!(hex.simplex_facets(), (0..6).collect::<Vec<_>>());
        let p = SimplePolytope::product_of_simplices(&[2, 2]).unwrap();
        assert!(p.simplex_facets().is_empty());
    }

    #[test]
    fn product_h_vector_is_convolution_of_ones() {
        let cases: &[&[usize]] = &[&[1], &[1, 1], &[2, 3], &[1, 2, 3], &[4, 1, 1], &[3, 3, 3]];
        for dims in cases {
            let p = SimplePolytope::product_of_simplices(dims).unwrap();
            let mut conv = vec![1u128];
            for &k in dims.iter() {
                let mut next = vec![0u128; conv.len() + k];
                for (i, a) in conv.iter().enumerate() {
                    for j in 0..=k {
                        next[i + j] += a;
                    }
                }
                conv = next;
            }
            let h = p.h_vector();
            assert_eq!(h.0, conv, "dims {dims:?}");
            assert!(h.is_palindromic());
            assert_eq!(h.total(), p.vertex_count() as u128);
        }
    }

    #[test]
    fn family_f_vector_matches_enumeration() {
        for dims in [&[1usize, 1][..], &[2, 1], &[3, 2], &[1, 1, 1, 1], &[2, 2, 1]] {
            let p = SimplePolytope::product_of_simplices(dims).unwrap();
            assert_eq!(p.f_vector(), p.enumerate_f_vector(), "dims {dims:?}");
        }
        for k in 3..10 {
            let p = SimplePolytope::polygon(k).unwrap();
            assert_eq!(p.f_vector(), p.enumerate_f_vector());
        }
    }

    #[test]
    fn family_non_faces_match_enumeration() {
        for dims in [&[1usize, 1][..], &[2, 1], &[1, 2, 1]] {
            let p = SimplePolytope::product_of_simplices(dims).unwrap();
            assert_eq!(p.minimal_non_faces(), p.enumerate_minimal_non_faces());
        }
        let tri = SimplePolytope::polygon(3).unwrap();
        assert_eq!(tri.minimal_non_faces(), vec![vec![0, 1, 2]]);
        let sq = SimplePolytope::polygon(4).unwrap();
        assert_eq!(sq.minimal_non_faces(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn explicit_validation() {
        // triangle given explicitly
        let t = SimplePolytope::explicit(2, 3, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        assert_eq!(t.h_vector(), HVector(vec![1, 1, 1]));
        assert!(SimplePolytope::explicit(2, 3, vec![vec![0, 1, 2]]).is_err());
        assert!(SimplePolytope::explicit(2, 4, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).is_err());
        assert!(SimplePolytope::explicit(2, 3, vec![vec![0, 5]]).is_err());
        // a vertex with a single edge is not simple
        assert!(SimplePolytope::explicit(2, 3, vec![vec![0, 1], vec![1, 2]]).is_err());
    }
}
