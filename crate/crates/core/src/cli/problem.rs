//! The JSON problem document read by every subcommand.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::{ManifoldDescription, ManifoldKind};
use crate::charfun::{BottMatrix, CharacteristicFunction};
use crate::error::{Error, Result};
use crate::gf2::GF2Vector;
use crate::polytope::SimplePolytope;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub polytope: PolytopeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<CharacteristicSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dold: Option<DoldSpec>,
    #[serde(default)]
    pub flags: Flags,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PolytopeSpec {
    ProductOfSimplices { dims: Vec<usize> },
    Polygon { edges: usize },
    Simplex { n: usize },
    Explicit {
        n: usize,
        facet_count: usize,
        /// Each vertex as the 0-based indices of its `n` facets.
        vertices: Vec<Vec<usize>>,
    },
    /// The round sphere; takes no characteristic function.
    Sphere { n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum CharacteristicSpec {
    /// One bitstring per facet, leftmost bit = coordinate 1.
    FacetVectors { vectors: Vec<String> },
    /// Keys `"k,j"` with `k > j` (0-based blocks); missing entries are zero.
    BottMatrix {
        dims: Vec<usize>,
        #[serde(default)]
        beta: BTreeMap<String, String>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoldSpec {
    pub p: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub fixed_set_connected: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn polytope(&self) -> Result<Option<SimplePolytope>> {
        Ok(Some(match &self.polytope {
            PolytopeSpec::ProductOfSimplices { dims } => SimplePolytope::product_of_simplices(dims)?,
            PolytopeSpec::Polygon { edges } => SimplePolytope::polygon(*edges)?,
            PolytopeSpec::Simplex { n } => SimplePolytope::simplex(*n)?,
            PolytopeSpec::Explicit {
                n,
                facet_count,
                vertices,
            } => SimplePolytope::explicit(*n, *facet_count, vertices.clone())?,
            PolytopeSpec::Sphere { .. } => return Ok(None),
        }))
    }

    /// The manifold, before the characteristic function is validated.
    fn kind(&self) -> Result<ManifoldKind> {
        if let PolytopeSpec::Sphere { n } = self.polytope {
            if self.characteristic.is_some() {
                return Err(Error::InvalidInput("a sphere takes no characteristic function".into()));
            }
            return Ok(ManifoldKind::Sphere { n });
        }
        let polytope = self.polytope()?.expect("not a sphere");
        match &self.characteristic {
            None => Err(Error::Parse("missing \"characteristic\"".into())),
            Some(CharacteristicSpec::FacetVectors { vectors }) => {
                let lambda = CharacteristicFunction::from_bitstrings(vectors)?;
                if lambda.len() != polytope.facet_count() || lambda.dim() != polytope.dim() {
                    return Err(Error::DimensionMismatch(format!(
                        "{} vectors of length {} for a {}-polytope with {} facets",
                        lambda.len(),
                        lambda.dim(),
                        polytope.dim(),
                        polytope.facet_count()
                    )));
                }
                Ok(ManifoldKind::SmallCover { polytope, lambda })
            }
            Some(CharacteristicSpec::BottMatrix { dims, beta }) => {
                if polytope.product_dims() != Some(dims.as_slice()) {
                    return Err(Error::DimensionMismatch(format!(
                        "Bott matrix blocks {dims:?} do not match the polytope"
                    )));
                }
                let mut bott = BottMatrix::diagonal(dims)?;
                for (key, bits) in beta {
                    let (k, j) = key
                        .split_once(',')
                        .and_then(|(k, j)| Some((k.trim().parse().ok()?, j.trim().parse().ok()?)))
                        .ok_or_else(|| Error::Parse(format!("β key {key:?} is not \"k,j\"")))?;
                    bott.set_beta(k, j, GF2Vector::parse(bits)?)?;
                }
                Ok(ManifoldKind::Bott { bott })
            }
        }
    }

    /// Polytope and characteristic function, for commands that validate.
    pub fn pair(&self) -> Result<Option<(SimplePolytope, CharacteristicFunction)>> {
        Ok(match self.kind()? {
            ManifoldKind::SmallCover { polytope, lambda } => Some((polytope, lambda)),
            ManifoldKind::Bott { bott } => Some((
                SimplePolytope::product_of_simplices(bott.dims())?,
                crate::charfun::from_bott(&bott),
            )),
            ManifoldKind::Sphere { .. } => None,
        })
    }

    pub fn manifold(&self, involution: Option<&str>, assume_connected: bool) -> Result<ManifoldDescription> {
        let mut m = match self.kind()? {
            ManifoldKind::SmallCover { polytope, lambda } => ManifoldDescription::small_cover(polytope, lambda)?,
            ManifoldKind::Bott { bott } => ManifoldDescription::bott(bott),
            ManifoldKind::Sphere { n } => ManifoldDescription::sphere(n)?,
        };
        if let Some(bits) = involution.or(self.involution.as_deref()) {
            m = m.with_involution(GF2Vector::parse(bits)?)?;
        }
        if assume_connected || self.flags.fixed_set_connected {
            m = m.assume_fixed_set_connected();
        }
        Ok(m)
    }

    pub fn dold_p(&self) -> Option<&[usize]> {
        self.dold.as_ref().map(|d| d.p.as_slice())
    }
}
