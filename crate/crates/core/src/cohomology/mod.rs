//! Mod-2 cohomology rings of small covers, Bott towers, spheres and Dold
//! manifolds of real torus type.
//!
//! Every ring is materialized as a [`GradedAlgebra`]: a monomial basis grouped
//! by degree together with the action of each generator. Bott rings use the
//! standard-monomial normal form; arbitrary `(P, λ)` pairs use degree-by-degree
//! elimination.

mod algebra;
mod bott;
mod small_cover;

pub use algebra::{Generator, GradedAlgebra, TensorSquare};
pub use bott::{linear_form, substitute_x, verify_top_monomial, BottRelations, TopMonomialWitness};
pub use small_cover::{facet_name, quotient_algebra, SmallCoverPresentation};

use serde::{Deserialize, Serialize};

use crate::charfun::{BottMatrix, CharacteristicFunction};
use crate::error::{Error, Result};
use crate::gf2::{rank_gf2, GF2Poly, GF2Vector};
use crate::polytope::{PolytopeFamily, SimplePolytope};

#[derive(Clone, Debug)]
pub enum RingKind {
    Point,
    Projective { n: usize },
    Sphere { n: usize },
    Bott { bott: BottMatrix },
    SmallCover {
        polytope: SimplePolytope,
        lambda: CharacteristicFunction,
    },
    Dold { base: Box<RingKind>, p: Vec<usize> },
}

impl RingKind {
    pub fn label(&self) -> String {
        match self {
            RingKind::Point => "point".into(),
            RingKind::Projective { n } => format!("RP^{n}"),
            RingKind::Sphere { n } => format!("S^{n}"),
            RingKind::Bott { bott } => format!("Bott tower {:?}", bott.dims()),
            RingKind::SmallCover { polytope, .. } => match polytope.family() {
                PolytopeFamily::ProductOfSimplices { dims } => {
                    format!("small cover over simplex product {dims:?}")
                }
                PolytopeFamily::Polygon { edges } => format!("small cover over {edges}-gon"),
                PolytopeFamily::Explicit => format!(
                    "small cover over explicit {}-polytope with {} facets",
                    polytope.dim(),
                    polytope.facet_count()
                ),
            },
            RingKind::Dold { base, p } => format!("D({}; {p:?})", base.label()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RingPresentation {
    kind: RingKind,
    algebra: GradedAlgebra,
    relations: Vec<String>,
    bott: Option<BottRelations>,
    notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBasis {
    /// Basis monomials in canonical text, one list per degree.
    pub degrees: Vec<Vec<String>>,
    pub betti: Vec<usize>,
}

impl RingPresentation {
    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn relations(&self) -> &[String] {
        &self.relations
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn generators(&self) -> &[Generator] {
        self.algebra.generators()
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.algebra.generator_names()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn top_degree(&self) -> usize {
        self.algebra.top_degree()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.algebra.betti()
    }

    pub fn label(&self) -> String {
        self.kind.label()
    }

    pub fn bott_relations(&self) -> Option<&BottRelations> {
        self.bott.as_ref()
    }

    /// Standard-monomial normal form; only Bott rings carry one.
    pub fn normal_form(&self, p: &GF2Poly) -> Result<GF2Poly> {
        match &self.bott {
            Some(rel) => rel.normal_form(p),
            None => Err(Error::Unsupported(format!(
                "normal form is defined for Bott rings, not {}",
                self.label()
            ))),
        }
    }

    /// Reduces a polynomial in the generators to a basis combination.
    pub fn reduce(&self, p: &GF2Poly) -> Result<GF2Poly> {
        Ok(self.algebra.to_poly(&self.algebra.eval(p)?))
    }

    pub fn graded_basis(&self) -> GradedBasis {
        let names = self.generator_names();
        let degrees = (0..=self.top_degree())
            .map(|d| {
                self.algebra
                    .degree_range(d)
                    .map(|b| self.algebra.basis()[b].render(&names))
                    .collect()
            })
            .collect();
        GradedBasis {
            degrees,
            betti: self.betti(),
        }
    }
}

pub fn point_ring() -> RingPresentation {
    RingPresentation {
        kind: RingKind::Point,
        algebra: GradedAlgebra::point(),
        relations: Vec::new(),
        bott: None,
        notes: Vec::new(),
    }
}

/// `Z₂[x]/(x^{n+1})`.
pub fn projective_ring(n: usize) -> Result<RingPresentation> {
    if n < 1 {
        return Err(Error::InvalidInput("projective space needs n ≥ 1".into()));
    }
    Ok(RingPresentation {
        kind: RingKind::Projective { n },
        algebra: GradedAlgebra::truncated("x", 1, n)?,
        relations: vec![format!("x^{}", n + 1)],
        bott: None,
        notes: Vec::new(),
    })
}

/// `Z₂[s]/(s²)` with `|s| = n`.
pub fn sphere_ring(n: usize) -> Result<RingPresentation> {
    if n < 1 {
        return Err(Error::InvalidInput("sphere needs n ≥ 1".into()));
    }
    Ok(RingPresentation {
        kind: RingKind::Sphere { n },
        algebra: GradedAlgebra::truncated("s", n, 1)?,
        relations: vec!["s^2".into()],
        bott: None,
        notes: Vec::new(),
    })
}

/// `Z₂[y_1..y_m]/(Γ_1..Γ_m)`.
pub fn bott_ring(b: &BottMatrix) -> RingPresentation {
    let rel = BottRelations::new(b);
    let algebra = rel.algebra();
    let names = algebra.generator_names();
    let relations = rel.gammas().iter().map(|g| g.render(&names)).collect();
    RingPresentation {
        kind: RingKind::Bott { bott: b.clone() },
        algebra,
        relations,
        bott: Some(rel),
        notes: Vec::new(),
    }
}

/// `Z₂[x_F]/(I_SR + J_λ)`, with the facets of the first vertex eliminated.
pub fn small_cover_ring(p: &SimplePolytope, lambda: &CharacteristicFunction) -> Result<RingPresentation> {
    let pres = small_cover::build(p, lambda)?;
    let names = pres.algebra.generator_names();
    let mut relations: Vec<String> = pres
        .eliminated
        .iter()
        .map(|&f| format!("{} = {}", facet_name(f), pres.facet_classes[f].render(&names)))
        .collect();
    relations.extend(pres.relations.iter().map(|g| g.render(&names)));
    let mut notes = Vec::new();
    if matches!(p.family(), PolytopeFamily::Explicit) {
        notes.push("explicit polytope assumed retractable".to_string());
    }
    Ok(RingPresentation {
        kind: RingKind::SmallCover {
            polytope: p.clone(),
            lambda: lambda.clone(),
        },
        algebra: pres.algebra,
        relations,
        bott: None,
        notes,
    })
}

/// `Z₂[a]/(a^{p_1+1}) ⊗ Λ[a_2..a_r] ⊗ H*(M)` with `|a| = 1`, `|a_i| = p_i`.
pub fn dold_ring(base: &RingPresentation, p: &[usize]) -> Result<RingPresentation> {
    if p.is_empty() {
        return Err(Error::InvalidInput("Dold manifold needs at least one sphere".into()));
    }
    if p.contains(&0) {
        return Err(Error::InvalidInput(format!("sphere dimensions must be positive, got {p:?}")));
    }
    if p.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput(format!(
            "sphere dimensions must be non-decreasing, got {p:?}"
        )));
    }
    if matches!(base.kind(), RingKind::Dold { .. }) {
        return Err(Error::Unsupported("iterated Dold constructions are not supported".into()));
    }
    let mut algebra = GradedAlgebra::truncated("a", 1, p[0])?;
    let mut relations = vec![format!("a^{}", p[0] + 1)];
    for (i, &pi) in p.iter().enumerate().skip(1) {
        let name = format!("a{}", i + 1);
        algebra = algebra.tensor(&GradedAlgebra::truncated(&name, pi, 1)?)?;
        relations.push(format!("{name}^2"));
    }
    let algebra = algebra.tensor(base.algebra())?;
    relations.extend(base.relations().iter().cloned());
    Ok(RingPresentation {
        kind: RingKind::Dold {
            base: Box::new(base.kind().clone()),
            p: p.to_vec(),
        },
        algebra,
        relations,
        bott: None,
        notes: base.notes().to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingDegree {
    pub degree: usize,
    pub dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingReport {
    pub top_degree: usize,
    pub degrees: Vec<PairingDegree>,
    pub nondegenerate: bool,
}

/// Rank of `H^d × H^{top-d} → H^top` in every degree.
pub fn poincare_pairing(ring: &RingPresentation) -> Result<PairingReport> {
    let alg = ring.algebra();
    let top = alg.top_degree();
    let top_range = alg.degree_range(top);
    if top_range.len() != 1 {
        return Err(Error::Unsupported(format!(
            "{} has {} classes in top degree; no fundamental class",
            ring.label(),
            top_range.len()
        )));
    }
    let fundamental = top_range.start;
    let mut degrees = Vec::new();
    for d in 0..=top {
        let rows: Vec<GF2Vector> = alg
            .degree_range(d)
            .map(|a| {
                let bits: Vec<bool> = alg
                    .degree_range(top - d)
                    .map(|b| alg.multiply_basis(a, b).get(fundamental))
                    .collect();
                GF2Vector::from_bools(&bits)
            })
            .collect();
        let rank = if rows.is_empty() { 0 } else { rank_gf2(&rows)? };
        degrees.push(PairingDegree {
            degree: d,
            dim: alg.degree_range(d).len(),
            rank,
        });
    }
    let nondegenerate = degrees
        .iter()
        .all(|p| p.rank == p.dim && p.dim == alg.degree_range(top - p.degree).len());
    Ok(PairingReport {
        top_degree: top,
        degrees,
        nondegenerate,
    })
}
