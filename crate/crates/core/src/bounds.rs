//! Interval bounds for LS-category, topological complexity, symmetric
//! topological complexity and equivariant category.
//!
//! Each rule proposes a lower or an upper value together with a witness; a
//! [`BoundReport`] keeps every proposal and takes the max of the lower ones
//! and the min of the upper ones.

use serde::{Deserialize, Serialize};

use crate::charfun::{from_bott, reduce_to_bott, require_valid, BottMatrix, CharacteristicFunction};
use crate::cohomology::{
    bott_ring, dold_ring, small_cover_ring, sphere_ring, RingPresentation,
};
use crate::error::{Error, Result};
use crate::gf2::{rank_gf2, GF2Vector};
use crate::invariants::{
    cup_length, exact_budget_from_env, norm_cup_length, odd_power_length, zcl_certificate_bott,
    zcl_exact, zcl_rp, IntervalValue,
};
use crate::polytope::SimplePolytope;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifoldKind {
    SmallCover {
        polytope: SimplePolytope,
        lambda: CharacteristicFunction,
    },
    Bott { bott: BottMatrix },
    Sphere { n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldDescription {
    pub kind: ManifoldKind,
    /// Generator `g` of the `Z₂` subgroup acting by `t_i ↦ g_i t_i`.
    pub involution: Option<GF2Vector>,
    /// User-asserted: the fixed set of the involution is path-connected.
    pub fixed_set_connected: bool,
}

impl ManifoldDescription {
    pub fn small_cover(polytope: SimplePolytope, lambda: CharacteristicFunction) -> Result<Self> {
        require_valid(&polytope, &lambda)?;
        Ok(Self::from_kind(ManifoldKind::SmallCover { polytope, lambda }))
    }

    pub fn bott(bott: BottMatrix) -> Self {
        Self::from_kind(ManifoldKind::Bott { bott })
    }

    pub fn sphere(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("sphere dimension must be positive".into()));
        }
        Ok(Self::from_kind(ManifoldKind::Sphere { n }))
    }

    fn from_kind(kind: ManifoldKind) -> Self {
        ManifoldDescription {
            kind,
            involution: None,
            fixed_set_connected: false,
        }
    }

    pub fn with_involution(mut self, g: GF2Vector) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::InvalidInput("involution vector must be nonzero".into()));
        }
        if g.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "involution has {} bits, manifold has dimension {}",
                g.len(),
                self.dim()
            )));
        }
        self.involution = Some(g);
        Ok(self)
    }

    pub fn assume_fixed_set_connected(mut self) -> Self {
        self.fixed_set_connected = true;
        self
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            ManifoldKind::SmallCover { polytope, .. } => polytope.dim(),
            ManifoldKind::Bott { bott } => bott.total_dim(),
            ManifoldKind::Sphere { n } => *n,
        }
    }

    pub fn is_small_cover(&self) -> bool {
        !matches!(self.kind, ManifoldKind::Sphere { .. })
    }

    /// Polytope and characteristic function; Bott towers live over products
    /// of simplices.
    pub fn polytope_pair(&self) -> Result<Option<(SimplePolytope, CharacteristicFunction)>> {
        Ok(match &self.kind {
            ManifoldKind::SmallCover { polytope, lambda } => Some((polytope.clone(), lambda.clone())),
            ManifoldKind::Bott { bott } => Some((
                SimplePolytope::product_of_simplices(bott.dims())?,
                from_bott(bott),
            )),
            ManifoldKind::Sphere { .. } => None,
        })
    }

    /// The Bott matrix of the manifold, if it is (or reduces to) a Bott tower.
    pub fn bott_form(&self) -> Result<Option<BottMatrix>> {
        match &self.kind {
            ManifoldKind::Bott { bott } => Ok(Some(bott.clone())),
            ManifoldKind::SmallCover { polytope, lambda } if polytope.product_dims().is_some() => {
                Ok(Some(reduce_to_bott(polytope, lambda)?.bott))
            }
            _ => Ok(None),
        }
    }

    /// Rank of the cohomology, without building the ring.
    pub fn total_betti(&self) -> usize {
        match &self.kind {
            ManifoldKind::SmallCover { polytope, .. } => polytope.vertex_count(),
            ManifoldKind::Bott { bott } => bott.dims().iter().map(|n| n + 1).product(),
            ManifoldKind::Sphere { .. } => 2,
        }
    }

    pub fn ring(&self) -> Result<RingPresentation> {
        match &self.kind {
            ManifoldKind::SmallCover { polytope, lambda } => small_cover_ring(polytope, lambda),
            ManifoldKind::Bott { bott } => Ok(bott_ring(bott)),
            ManifoldKind::Sphere { n } => sphere_ring(*n),
        }
    }

    /// The ring best suited to certificates: the Bott presentation when one exists.
    pub fn certificate_ring(&self) -> Result<RingPresentation> {
        match self.bott_form()? {
            Some(b) => Ok(bott_ring(&b)),
            None => self.ring(),
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            ManifoldKind::SmallCover { polytope, .. } => {
                format!("small cover of dimension {}", polytope.dim())
            }
            ManifoldKind::Bott { bott } => format!("Bott tower {:?}", bott.dims()),
            ManifoldKind::Sphere { n } => format!("S^{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Cat,
    Tc,
    TcS,
    CatEq,
}

impl Invariant {
    pub fn symbol(self) -> &'static str {
        match self {
            Invariant::Cat => "cat",
            Invariant::Tc => "TC",
            Invariant::TcS => "TC_S",
            Invariant::CatEq => "cat_eq",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub side: Side,
    pub value: usize,
    /// Short role name of the rule.
    pub rule: String,
    /// The inequality the rule applies.
    pub statement: String,
    pub witness: String,
    /// Whether this certificate attains the reported end of the interval.
    pub binding: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub invariant: Invariant,
    pub interval: IntervalValue,
    pub certificates: Vec<Certificate>,
    /// Hypotheses taken on trust from the caller.
    pub assumed: Vec<String>,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn lo(&self) -> usize {
        self.interval.lo
    }

    pub fn hi(&self) -> usize {
        self.interval.hi
    }

    pub fn render_row(&self) -> String {
        format!("{} ∈ [{},{}]", self.invariant.symbol(), self.lo(), self.hi())
    }
}

/// Collects rule proposals for one invariant.
#[derive(Clone, Debug)]
pub struct ReportBuilder {
    invariant: Invariant,
    certificates: Vec<Certificate>,
    assumed: Vec<String>,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(invariant: Invariant) -> Self {
        ReportBuilder {
            invariant,
            certificates: Vec::new(),
            assumed: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn lower(&mut self, value: usize, rule: &str, statement: &str, witness: impl Into<String>) -> &mut Self {
        self.push(Side::Lower, value, rule, statement, witness.into())
    }

    pub fn upper(&mut self, value: usize, rule: &str, statement: &str, witness: impl Into<String>) -> &mut Self {
        self.push(Side::Upper, value, rule, statement, witness.into())
    }

    fn push(&mut self, side: Side, value: usize, rule: &str, statement: &str, witness: String) -> &mut Self {
        self.certificates.push(Certificate {
            side,
            value,
            rule: rule.into(),
            statement: statement.into(),
            witness,
            binding: false,
        });
        self
    }

    pub fn assume(&mut self, hypothesis: impl Into<String>) -> &mut Self {
        self.assumed.push(hypothesis.into());
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn build(mut self) -> Result<BoundReport> {
        let best = |side: Side, better: fn(usize, usize) -> bool, certs: &[Certificate]| {
            certs
                .iter()
                .enumerate()
                .filter(|(_, c)| c.side == side)
                .fold(None, |acc: Option<(usize, usize)>, (i, c)| match acc {
                    Some((_, v)) if !better(c.value, v) => acc,
                    _ => Some((i, c.value)),
                })
        };
        let lo = best(Side::Lower, |a, b| a > b, &self.certificates);
        let hi = best(Side::Upper, |a, b| a < b, &self.certificates);
        let (Some((li, lo)), Some((hi_i, hi))) = (lo, hi) else {
            return Err(Error::InvalidInput(format!(
                "{} report needs a certificate on each side",
                self.invariant.symbol()
            )));
        };
        if lo > hi {
            return Err(Error::InvalidInput(format!(
                "{} certificates contradict: lower {lo} ({}) above upper {hi} ({})",
                self.invariant.symbol(),
                self.certificates[li].rule,
                self.certificates[hi_i].rule
            )));
        }
        for c in &mut self.certificates {
            c.binding = match c.side {
                Side::Lower => c.value == lo,
                Side::Upper => c.value == hi,
            };
        }
        let interval = IntervalValue::new(
            lo,
            hi,
            self.certificates[li].rule.clone(),
            self.certificates[hi_i].rule.clone(),
        )?;
        Ok(BoundReport {
            invariant: self.invariant,
            interval,
            certificates: self.certificates,
            assumed: self.assumed,
            notes: self.notes,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundsOptions {
    /// Largest ring dimension handed to the exhaustive zcl search.
    pub exact_budget: usize,
    /// Skip exhaustive searches even within budget.
    pub certificate_only: bool,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        BoundsOptions {
            exact_budget: exact_budget_from_env(),
            certificate_only: false,
        }
    }
}

impl BoundsOptions {
    fn exact_allowed(&self, dim: usize) -> bool {
        !self.certificate_only && dim <= self.exact_budget
    }
}

const FIXED_SET_FLAG: &str = "fixed set of the involution is path-connected";

pub fn cat_bounds(m: &ManifoldDescription) -> Result<BoundReport> {
    let n = m.dim();
    let mut b = ReportBuilder::new(Invariant::Cat);
    match &m.kind {
        ManifoldKind::Sphere { n } => {
            b.lower(2, "non-contractible", "cat(X) ≥ 2 for X not contractible", format!("S^{n}"))
                .upper(2, "two hemispheres", "cat(Sⁿ) ≤ 2", "open cover by two discs");
        }
        _ => {
            let ring = m.certificate_ring()?;
            let cl = cup_length(&ring);
            b.lower(cl + 1, "cup-length", "cat(X) ≥ cl(X) + 1", format!("cl = {cl} in {}", ring.label()))
                .lower(
                    n + 1,
                    "small cover category",
                    "cat(M) = n + 1 for a small cover over a simple polytope",
                    "product of the facet classes at a vertex is the top class",
                )
                .upper(n + 1, "dimension", "cat(X) ≤ dim X + 1", format!("dim = {n}"));
        }
    }
    b.build()
}

/// Largest-known lower bound for `zcl(M)` with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZclLower {
    pub value: usize,
    pub rule: String,
    pub witness: String,
}

/// `λ` restricted to the facets meeting the simplex facet `f` is invertible.
fn neighbor_matrix_invertible(p: &SimplePolytope, lambda: &CharacteristicFunction, f: usize) -> Result<bool> {
    let neighbors = p.neighbor_facets(f)?;
    if neighbors.len() != p.dim() {
        return Ok(false);
    }
    let rows: Vec<GF2Vector> = neighbors.iter().map(|&g| lambda.vector(g).clone()).collect();
    Ok(rank_gf2(&rows)? == p.dim())
}

/// Simplex facets of `P`, and one whose neighbours carry an invertible `λ`.
fn simplex_facet_data(m: &ManifoldDescription) -> Result<(Vec<usize>, Option<usize>)> {
    let Some((p, lambda)) = m.polytope_pair()? else {
        return Ok((Vec::new(), None));
    };
    let simplex = p.simplex_facets();
    let mut invertible = None;
    for &f in &simplex {
        if neighbor_matrix_invertible(&p, &lambda, f)? {
            invertible = Some(f);
            break;
        }
    }
    Ok((simplex, invertible))
}

/// Every lower bound on `zcl(M)` the engine knows, one per applicable rule.
pub fn zcl_lower_bounds(m: &ManifoldDescription, opts: &BoundsOptions) -> Result<Vec<ZclLower>> {
    let n = m.dim();
    let mut out = Vec::new();
    if let ManifoldKind::Sphere { n } = m.kind {
        out.push(ZclLower {
            value: 1,
            rule: "sphere zero-divisor".into(),
            witness: format!("1⊗s + s⊗1 ≠ 0 in H*(S^{n})^{{⊗2}}"),
        });
        return Ok(out);
    }
    if let Some(bott) = m.bott_form()? {
        let ring = bott_ring(&bott);
        let cert = zcl_certificate_bott(&ring)?;
        if !cert.product.is_zero() {
            out.push(ZclLower {
                value: cert.length(),
                rule: "odd binomial power certificate".into(),
                witness: cert.summary(&ring),
            });
        }
    }
    let (simplex, invertible) = simplex_facet_data(m)?;
    if n >= 2 && !simplex.is_empty() {
        let z = zcl_rp(n - 1, opts.exact_budget)?;
        out.push(ZclLower {
            value: z.lo,
            rule: "simplex facet".into(),
            witness: format!(
                "facet F{} is a simplex; zcl(RP^{}) ≥ {} ({})",
                simplex[0] + 1,
                n - 1,
                z.lo,
                z.lo_source
            ),
        });
    }
    if let Some(f) = invertible {
        let z = zcl_rp(n, opts.exact_budget)?;
        out.push(ZclLower {
            value: z.lo,
            rule: "projective connected summand".into(),
            witness: format!(
                "facets meeting simplex facet F{} carry an invertible λ; zcl(RP^{n}) ≥ {} ({})",
                f + 1,
                z.lo,
                z.lo_source
            ),
        });
    }
    if opts.exact_allowed(m.total_betti()) {
        let ring = m.ring()?;
        let e = zcl_exact(&ring, opts.exact_budget)?;
        out.push(ZclLower {
            value: e.value,
            rule: "exhaustive zero-divisor search".into(),
            witness: e.witness.render(ring.algebra()),
        });
    }
    Ok(out)
}

pub fn best_zcl_lower(m: &ManifoldDescription, opts: &BoundsOptions) -> Result<ZclLower> {
    Ok(zcl_lower_bounds(m, opts)?
        .into_iter()
        .fold(
            ZclLower {
                value: 0,
                rule: "trivial".into(),
                witness: "empty product".into(),
            },
            |best, z| if z.value > best.value { z } else { best },
        ))
}

/// Number of odd `n_j > 1` among the simplex factors.
fn odd_factor_count(dims: &[usize]) -> usize {
    dims.iter().filter(|&&d| d > 1 && d % 2 == 1).count()
}

pub fn tc_bounds(m: &ManifoldDescription, opts: &BoundsOptions) -> Result<BoundReport> {
    let n = m.dim();
    let cat = cat_bounds(m)?;
    let mut b = ReportBuilder::new(Invariant::Tc);
    b.lower(
        cat.lo(),
        "category",
        "TC(X) ≥ cat(X)",
        format!("cat ≥ {}", cat.lo()),
    )
    .upper(
        2 * cat.hi() - 1,
        "category square",
        "TC(X) ≤ 2·cat(X) − 1",
        format!("cat ≤ {}", cat.hi()),
    );
    for z in zcl_lower_bounds(m, opts)? {
        let statement = match z.rule.as_str() {
            "simplex facet" => "TC(M) ≥ zcl(RP^{n−1}) + 1 when P has a simplex facet",
            "projective connected summand" => {
                "TC(M) ≥ zcl(RPⁿ) + 1 when the facets around a simplex facet carry an invertible λ"
            }
            "odd binomial power certificate" => "TC(M) ≥ Σ 2^{r_j} − (m − 1)",
            _ => "TC(X) ≥ zcl(X) + 1",
        };
        b.lower(z.value + 1, &z.rule, statement, z.witness);
    }
    if m.is_small_cover() {
        b.upper(2 * n + 1, "dimension", "TC(X) ≤ 2·dim X + 1", format!("dim = {n}"));
    }
    let dims = match &m.kind {
        ManifoldKind::Bott { bott } => Some(bott.dims().to_vec()),
        ManifoldKind::SmallCover { polytope, .. } => polytope.product_dims().map(<[usize]>::to_vec),
        ManifoldKind::Sphere { .. } => None,
    };
    if let Some(dims) = dims {
        let k = odd_factor_count(&dims);
        if k > 0 {
            b.upper(
                2 * n - k + 1,
                "odd simplex factors",
                "TC(M) ≤ 2n − k + 1 with k factors Δ^{n_j}, n_j > 1 odd",
                format!("k = {k} for dims {dims:?}"),
            );
        }
    }
    b.build()
}

/// `TCˢ ≥ max(TC, cl(N) + 2)` and `TCˢ ≤ 2·dim + 1`.
pub fn symm_tc_bounds(m: &ManifoldDescription, opts: &BoundsOptions) -> Result<BoundReport> {
    let n = m.dim();
    let tc = tc_bounds(m, opts)?;
    let ring = m.certificate_ring()?;
    let norm = norm_cup_length(&ring, opts.exact_budget, opts.certificate_only)?;
    let mut b = ReportBuilder::new(Invariant::TcS);
    b.lower(tc.lo(), "TC", "TCˢ(X) ≥ TC(X)", tc.interval.lo_source.clone())
        .lower(
            norm.lo + 2,
            "norm subring",
            "TCˢ(X) ≥ cl(N_X) + 2",
            format!("cl(N) ≥ {} ({})", norm.lo, norm.lo_source),
        )
        .upper(2 * n + 1, "dimension", "TCˢ(X) ≤ 2·dim X + 1", format!("dim = {n}"));
    let (_, invertible) = simplex_facet_data(m)?;
    if let (Some(f), true) = (invertible, n.is_power_of_two()) {
        b.lower(
            2 * n + 1,
            "projective summand, n = 2^s",
            "TCˢ(M) = 2n + 1 when n = 2^s and the facets around a simplex facet carry an invertible λ",
            format!("simplex facet F{}, n = {n}", f + 1),
        );
    }
    b.build()
}

pub fn eq_cat_bounds(m: &ManifoldDescription) -> Result<BoundReport> {
    let g = m
        .involution
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("equivariant category needs an involution".into()))?;
    if g.is_zero() {
        return Err(Error::InvalidInput("involution vector must be nonzero".into()));
    }
    let Some((p, lambda)) = m.polytope_pair()? else {
        return Err(Error::Unsupported("equivariant category is computed for small covers only".into()));
    };
    let n = p.dim();
    let cat = cat_bounds(m)?;
    let mut b = ReportBuilder::new(Invariant::CatEq);
    b.lower(cat.lo(), "category", "cat_G(X) ≥ cat(X)", format!("cat ≥ {}", cat.lo()))
        .upper(
            p.vertex_count(),
            "fixed points",
            "cat_G(M) ≤ #M^{Z₂ⁿ} = number of vertices",
            format!("{} vertices", p.vertex_count()),
        );
    if m.fixed_set_connected {
        b.assume(FIXED_SET_FLAG)
            .lower(
                n + 1,
                "connected fixed set",
                "cat_⟨τ⟩(M) = n + 1 when M^⟨τ⟩ is path-connected",
                "asserted by caller",
            )
            .upper(
                n + 1,
                "connected fixed set",
                "cat_⟨τ⟩(M) = n + 1 when M^⟨τ⟩ is path-connected",
                "asserted by caller",
            );
        return b.build();
    }
    let g_facets: Vec<usize> = (0..p.facet_count()).filter(|&f| lambda.vector(f) == g).collect();
    if n == 2 {
        let g_vertices: Vec<Vec<usize>> = g_facets.iter().map(|&f| p.vertices_on(&[f])).collect();
        let disjoint = g_vertices
            .iter()
            .enumerate()
            .all(|(i, a)| g_vertices[i + 1..].iter().all(|c| a.iter().all(|v| !c.contains(v))));
        if disjoint {
            let covered: usize = g_vertices.iter().map(Vec::len).sum();
            let isolated = p.vertex_count() - covered;
            b.lower(
                2 * g_facets.len() + isolated,
                "fixed circles",
                "cat_G(M) ≥ cat(∪ M_F ∪ M^{Z₂ⁿ})",
                format!(
                    "{} disjoint circles over edges {} and {isolated} isolated fixed points",
                    g_facets.len(),
                    g_facets.iter().map(|f| format!("F{}", f + 1)).collect::<Vec<_>>().join(",")
                ),
            );
        } else {
            b.note("characteristic circles with λ(F) = g meet; the union bound is not evaluated");
        }
    } else {
        b.note("the union of characteristic submanifolds is not evaluated above dimension 2");
    }
    b.build()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoldBounds {
    pub cat: BoundReport,
    pub tc: BoundReport,
    pub tcs: BoundReport,
}

/// `D(M; p) = (S^{p_1} × ⋯ × S^{p_r} × M)/Z₂`, the antipodal map on every
/// sphere paired with the involution on `M`.
pub fn dold_bounds(m: &ManifoldDescription, p: &[usize], opts: &BoundsOptions) -> Result<DoldBounds> {
    let base = m.ring()?;
    let ring = dold_ring(&base, p)?;
    let n = m.dim();
    let (p1, r) = (p[0], p.len());
    let dim_d = n + p.iter().sum::<usize>();
    // cat_⟨τ⟩(M) when known
    let eq_cat = match &m.kind {
        ManifoldKind::Sphere { n } if *n >= 2 => Some((2, "reflection fixing a great sphere")),
        ManifoldKind::Sphere { .. } => None,
        _ if m.fixed_set_connected => Some((n + 1, FIXED_SET_FLAG)),
        _ => None,
    };

    let cl_m = cup_length(&base);
    let mut cat = ReportBuilder::new(Invariant::Cat);
    cat.lower(
        cl_m + p1 + r,
        "Dold cup-length",
        "cat(D(M; p)) ≥ cl(M) + p₁ + r",
        format!("cl(M) = {cl_m}, p₁ = {p1}, r = {r}"),
    )
    .upper(dim_d + 1, "dimension", "cat(X) ≤ dim X + 1", format!("dim D = {dim_d}"));
    if let Some((c, why)) = eq_cat {
        if m.fixed_set_connected && m.is_small_cover() {
            cat.assume(FIXED_SET_FLAG);
        }
        cat.upper(
            c + p1 + r - 1,
            "equivariant category of the base",
            "cat(D(M; p)) ≤ cat_⟨τ⟩(M) + p₁ + r − 1",
            format!("cat_⟨τ⟩(M) = {c}: {why}"),
        );
    }
    let cat = cat.build()?;

    let zm = best_zcl_lower(m, opts)?;
    let zp = zcl_rp(p1, opts.exact_budget)?;
    let mut tc = ReportBuilder::new(Invariant::Tc);
    tc.lower(
        zm.value + zp.lo + r,
        "Dold zero-divisors",
        "TC(D(M; p)) ≥ zcl(M) + zcl(RP^{p₁}) + r",
        format!("zcl(M) ≥ {} ({}), zcl(RP^{p1}) ≥ {}", zm.value, zm.rule, zp.lo),
    )
    .lower(cat.lo(), "category", "TC(X) ≥ cat(X)", format!("cat ≥ {}", cat.lo()))
    .upper(2 * dim_d + 1, "dimension", "TC(X) ≤ 2·dim X + 1", format!("dim D = {dim_d}"))
    .upper(2 * cat.hi() - 1, "category square", "TC(X) ≤ 2·cat(X) − 1", format!("cat ≤ {}", cat.hi()));
    if opts.exact_allowed(ring.dim()) {
        let e = zcl_exact(&ring, opts.exact_budget)?;
        tc.lower(
            e.value + 1,
            "exhaustive zero-divisor search",
            "TC(X) ≥ zcl(X) + 1",
            e.witness.render(ring.algebra()),
        );
    }
    if let Some((c, why)) = eq_cat {
        if m.fixed_set_connected && m.is_small_cover() {
            tc.assume(FIXED_SET_FLAG);
        }
        tc.upper(
            2 * (c + p1 + r) - 1,
            "equivariant category of the base",
            "TC(D(M; p)) ≤ 2(cat_⟨τ⟩(M) + p₁ + r) − 1",
            format!("cat_⟨τ⟩(M) = {c}: {why}"),
        );
    }
    let tc = tc.build()?;

    let norm = norm_cup_length(&ring, opts.exact_budget, opts.certificate_only)?;
    let mut tcs = ReportBuilder::new(Invariant::TcS);
    tcs.lower(tc.lo(), "TC", "TCˢ(X) ≥ TC(X)", tc.interval.lo_source.clone())
        .lower(
            norm.lo + 2,
            "norm subring",
            "TCˢ(X) ≥ cl(N_X) + 2",
            format!("cl(N) ≥ {} ({})", norm.lo, norm.lo_source),
        )
        .upper(2 * dim_d + 1, "dimension", "TCˢ(X) ≤ 2·dim X + 1", format!("dim D = {dim_d}"));
    if r > 1 {
        tcs.note("only the generic symmetric bounds are applied for r > 1");
    }
    let tcs = tcs.build()?;
    Ok(DoldBounds { cat, tc, tcs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyBound {
    pub family: String,
    pub statement: String,
    pub interval: IntervalValue,
}

/// Closed-form TC intervals for Bott towers whose simplex dimensions fall in
/// a special family.
pub fn special_family_bounds(dims: &[usize]) -> Vec<FamilyBound> {
    let m = dims.len();
    let n: usize = dims.iter().sum();
    if m == 0 || dims.contains(&0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let push = |out: &mut Vec<FamilyBound>, family: &str, statement: &str, lo: usize, hi: usize| {
        if let Ok(interval) = IntervalValue::new(lo, hi, family, family) {
            out.push(FamilyBound {
                family: family.into(),
                statement: statement.into(),
                interval,
            });
        }
    };
    if dims.iter().all(|d| d.is_power_of_two()) {
        push(
            &mut out,
            "powers of two",
            "n_j = 2^{r_j − 1}: 2n − m + 1 ≤ TC ≤ 2n + 1",
            2 * n - m + 1,
            2 * n + 1,
        );
    }
    let k = odd_factor_count(dims);
    if k > 0 {
        let lo: usize = dims.iter().map(|&d| odd_power_length(d) + 1).sum::<usize>() - m + 1;
        push(
            &mut out,
            "odd factors",
            "Σ 2^{r_j} − m + 1 ≤ TC ≤ 2n − k + 1",
            lo,
            2 * n - k + 1,
        );
    }
    if dims.iter().all(|&d| d >= 3 && (d - 1).is_power_of_two()) {
        push(
            &mut out,
            "one above a power of two",
            "n_j = 2^{r_j} + 1: 2n − 3m + 1 ≤ TC ≤ 2n − m + 1",
            2 * n - 3 * m + 1,
            2 * n - m + 1,
        );
    }
    out
}

/// Every report that applies to `m`.
pub fn all_bounds(m: &ManifoldDescription, opts: &BoundsOptions) -> Result<Vec<BoundReport>> {
    let mut out = vec![cat_bounds(m)?, tc_bounds(m, opts)?, symm_tc_bounds(m, opts)?];
    if m.involution.is_some() {
        out.push(eq_cat_bounds(m)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfun::from_bott;

    fn opts() -> BoundsOptions {
        BoundsOptions {
            exact_budget: 12,
            certificate_only: false,
        }
    }

    fn bott(dims: &[usize]) -> ManifoldDescription {
        ManifoldDescription::bott(BottMatrix::diagonal(dims).unwrap())
    }

    fn klein() -> ManifoldDescription {
        ManifoldDescription::small_cover(
            SimplePolytope::polygon(4).unwrap(),
            CharacteristicFunction::from_bitstrings(&["10", "01", "10", "11"]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn category_examples() {
        let c = cat_bounds(&bott(&[16, 8])).unwrap();
        assert_eq!((c.lo(), c.hi()), (25, 25));
        let k = cat_bounds(&klein()).unwrap();
        assert_eq!((k.lo(), k.hi()), (3, 3));
        let s = cat_bounds(&ManifoldDescription::sphere(5).unwrap()).unwrap();
        assert_eq!((s.lo(), s.hi()), (2, 2));
    }

    #[test]
    fn tc_table() {
        for (dims, lo, hi) in [
            ([16, 8], 47, 49),
            ([16, 9], 47, 50),
            ([17, 8], 47, 50),
            ([17, 9], 47, 51),
        ] {
            let r = tc_bounds(&bott(&dims), &opts()).unwrap();
            assert_eq!((r.lo(), r.hi()), (lo, hi), "{dims:?}");
            assert_eq!(r.render_row(), format!("TC ∈ [{lo},{hi}]"));
        }
    }

    #[test]
    fn symmetric_tc() {
        let r = symm_tc_bounds(&bott(&[16, 8]), &opts()).unwrap();
        assert_eq!((r.lo(), r.hi()), (48, 49));
        for n in [2, 4, 8] {
            let rp = ManifoldDescription::small_cover(
                SimplePolytope::simplex(n).unwrap(),
                from_bott(&BottMatrix::diagonal(&[n]).unwrap()),
            )
            .unwrap();
            let r = symm_tc_bounds(&rp, &opts()).unwrap();
            assert_eq!((r.lo(), r.hi()), (2 * n + 1, 2 * n + 1));
        }
        let s = symm_tc_bounds(&ManifoldDescription::sphere(3).unwrap(), &opts()).unwrap();
        assert!(s.lo() >= 2 && s.hi() == 7);
    }

    #[test]
    fn equivariant_examples() {
        let k = klein().with_involution(GF2Vector::parse("10").unwrap()).unwrap();
        let r = eq_cat_bounds(&k).unwrap();
        assert_eq!((r.lo(), r.hi()), (4, 4));
        for m in 2..=5 {
            let bits: Vec<&str> = (0..2 * m).map(|i| if i % 2 == 0 { "10" } else { "01" }).collect();
            let d = ManifoldDescription::small_cover(
                SimplePolytope::polygon(2 * m).unwrap(),
                CharacteristicFunction::from_bitstrings(&bits).unwrap(),
            )
            .unwrap()
            .with_involution(GF2Vector::parse("10").unwrap())
            .unwrap();
            let r = eq_cat_bounds(&d).unwrap();
            assert_eq!((r.lo(), r.hi()), (2 * m, 2 * m));
        }
        let flagged = bott(&[2, 1])
            .with_involution(GF2Vector::parse("100").unwrap())
            .unwrap()
            .assume_fixed_set_connected();
        let r = eq_cat_bounds(&flagged).unwrap();
        assert_eq!((r.lo(), r.hi()), (4, 4));
        assert_eq!(r.assumed.len(), 1);
        assert!(klein().with_involution(GF2Vector::parse("00").unwrap()).is_err());
    }

    #[test]
    fn dold_examples() {
        for (n, lo, hi) in [(2, 7, 9), (4, 11, 13)] {
            let rp = ManifoldDescription::small_cover(
                SimplePolytope::simplex(n).unwrap(),
                from_bott(&BottMatrix::diagonal(&[n]).unwrap()),
            )
            .unwrap();
            let d = dold_bounds(&rp, &[2], &opts()).unwrap();
            assert_eq!((d.tc.lo(), d.tc.hi()), (lo, hi), "n = {n}");
            assert!(d.tcs.lo() >= d.tc.lo());
            let flagged = dold_bounds(&rp.clone().assume_fixed_set_connected(), &[2], &opts()).unwrap();
            assert_eq!((flagged.cat.lo(), flagged.cat.hi()), (n + 3, n + 3));
        }
        assert!(dold_bounds(&bott(&[1]), &[3, 2], &opts()).is_err());
    }

    #[test]
    fn special_families() {
        let f = special_family_bounds(&[2, 2]);
        assert_eq!(f[0].interval.lo, 7);
        let f = special_family_bounds(&[3, 3]);
        let g = f.iter().find(|b| b.family == "one above a power of two").unwrap();
        assert_eq!((g.interval.lo, g.interval.hi), (7, 11));
        let f = special_family_bounds(&[5]);
        let g = f.iter().find(|b| b.family == "one above a power of two").unwrap();
        assert_eq!((g.interval.lo, g.interval.hi), (8, 10));
        for dims in [[2, 2], [3, 3], [4, 3], [5, 1]] {
            let tc = tc_bounds(&bott(&dims), &opts()).unwrap();
            for fb in special_family_bounds(&dims) {
                assert!(fb.interval.lo <= tc.lo() && tc.hi() <= fb.interval.hi, "{dims:?} {}", fb.family);
            }
        }
    }

    #[test]
    fn builder_requires_both_sides() {
        let mut b = ReportBuilder::new(Invariant::Cat);
        b.lower(2, "x", "y", "z");
        assert!(b.build().is_err());
        let mut b = ReportBuilder::new(Invariant::Cat);
        b.lower(3, "x", "y", "z").upper(2, "x", "y", "z");
        assert!(b.build().is_err());
    }
}
