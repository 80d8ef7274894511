//! Sweeps that recheck the library against itself: the top-monomial lemma,
//! Betti numbers against h-vectors, Poincaré duality, zcl certificates,
//! binomial parity, normal forms and the category/TC sandwich.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{cat_bounds, symm_tc_bounds, tc_bounds, BoundsOptions, ManifoldDescription};
use crate::charfun::{random_valid, BottMatrix};
use crate::cohomology::{
    bott_ring, poincare_pairing, small_cover_ring, verify_top_monomial, BottRelations, RingPresentation,
};
use crate::error::Result;
use crate::gf2::{binom_odd, GF2Poly, Monomial};
use crate::invariants::{odd_power_length, zcl_certificate_bott, zcl_exact};
use crate::polytope::SimplePolytope;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Lemma,
    Betti,
    Duality,
    Certificate,
    Binom,
    NormalForm,
    Sandwich,
    Presentation,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Lemma,
        Suite::Betti,
        Suite::Duality,
        Suite::Certificate,
        Suite::Binom,
        Suite::NormalForm,
        Suite::Sandwich,
        Suite::Presentation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma => "lemma",
            Suite::Betti => "betti",
            Suite::Duality => "duality",
            Suite::Certificate => "certificate",
            Suite::Binom => "binom",
            Suite::NormalForm => "normal_form",
            Suite::Sandwich => "sandwich",
            Suite::Presentation => "presentation",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        let s = s.replace('-', "_");
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Largest number of Bott blocks swept.
    pub max_m: usize,
    /// Largest simplex dimension swept.
    pub max_n: usize,
    pub random_cases: usize,
    /// Vertex cap `Π(n_j + 1)` for sampled products of simplices.
    pub max_vertices: usize,
    pub polynomials_per_ring: usize,
    pub exact_budget: usize,
    /// Corrupt one relation before the lemma sweep.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            max_m: 3,
            max_n: 3,
            random_cases: 50,
            max_vertices: 256,
            polynomials_per_ring: 1000,
            exact_budget: 12,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            cases: 0,
            failures: 0,
            first_counterexample: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn render(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status} {:<12} {} cases, {} failures",
            self.suite.name(),
            self.cases,
            self.failures
        );
        if let Some(c) = &self.first_counterexample {
            line.push_str(&format!("\n     first counterexample: {c}"));
        }
        line
    }
}

/// All tuples of length `1..=max_m` with entries in `1..=max_n`.
pub fn dims_tuples(max_m: usize, max_n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_m {
        layer = layer
            .into_iter()
            .flat_map(|t| {
                (1..=max_n).map(move |n| {
                    let mut t = t.clone();
                    t.push(n);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `y_j^{n_j} ≠ 0` and `∏ y_j^{n_j} ≠ 0` for every Bott matrix in range.
pub fn lemma_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Lemma);
    for dims in dims_tuples(cfg.max_m, cfg.max_n) {
        for b in BottMatrix::enumerate(&dims)? {
            let mut rel = BottRelations::new(&b);
            if cfg.inject_fault {
                rel = rel.with_injected_fault(dims.len() - 1);
            }
            let w = verify_top_monomial(&rel);
            report.check(w.holds(), || {
                format!(
                    "dims {dims:?}, β {:?}: top class {:?}, powers nonzero {:?}",
                    b.betas().map(|(k, v)| (*k, v.to_bitstring())).collect::<Vec<_>>(),
                    w.top_class,
                    w.powers_nonzero
                )
            });
        }
    }
    Ok(report)
}

/// Seeded sample of small covers: random products of simplices plus every
/// polygon with at most 12 edges.
pub fn sample_small_covers(cfg: &VerifyConfig) -> Result<Vec<(SimplePolytope, crate::charfun::CharacteristicFunction)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    while out.len() < cfg.random_cases {
        let m = rng.gen_range(1..=cfg.max_m.max(1));
        let dims: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=cfg.max_n.max(1))).collect();
        if dims.iter().map(|n| n + 1).product::<usize>() > cfg.max_vertices {
            continue;
        }
        let p = SimplePolytope::product_of_simplices(&dims)?;
        if let Some(lambda) = random_valid(&p, &mut rng, 1)? {
            out.push((p, lambda));
        }
    }
    for k in 3..=12 {
        let p = SimplePolytope::polygon(k)?;
        if let Some(lambda) = random_valid(&p, &mut rng, 1)? {
            out.push((p, lambda));
        }
    }
    Ok(out)
}

pub fn betti_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Betti);
    for (p, lambda) in sample_small_covers(cfg)? {
        let ring = small_cover_ring(&p, &lambda)?;
        let betti: Vec<u128> = ring.betti().iter().map(|&b| b as u128).collect();
        let h = p.h_vector();
        report.check(betti == h.0, || {
            format!("{}: betti {betti:?} vs h-vector {:?}", ring.label(), h.0)
        });
    }
    Ok(report)
}

pub fn duality_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Duality);
    for (p, lambda) in sample_small_covers(cfg)? {
        let ring = small_cover_ring(&p, &lambda)?;
        let pairing = poincare_pairing(&ring)?;
        report.check(pairing.nondegenerate, || format!("{}: degenerate pairing", ring.label()));
    }
    for dims in dims_tuples(cfg.max_m.min(2), cfg.max_n) {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ dims.len() as u64);
        let ring = bott_ring(&BottMatrix::random(&dims, &mut rng)?);
        let pairing = poincare_pairing(&ring)?;
        report.check(pairing.nondegenerate, || format!("{}: degenerate pairing", ring.label()));
    }
    Ok(report)
}

/// Certificate length matches `Σ(2^{r_j} − 1)`, every certificate
/// re-verifies, the exact oracle dominates it, and `TC.lo` meets the closed
/// formula.
pub fn certificate_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Certificate);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let opts = BoundsOptions {
        exact_budget: cfg.exact_budget,
        certificate_only: false,
    };
    for dims in dims_tuples(cfg.max_m, cfg.max_n.max(4)) {
        if dims.iter().map(|n| n + 1).product::<usize>() > 1000 {
            continue;
        }
        let formula: usize = dims.iter().map(|&n| odd_power_length(n)).sum();
        let bott = BottMatrix::random(&dims, &mut rng)?;
        let ring = bott_ring(&bott);
        if ring.dim() > 64 {
            // too large to multiply out here: check the exponent window only
            for &n in &dims {
                let d = odd_power_length(n);
                report.check(n <= d && d < 2 * n && (d + 1).is_power_of_two(), || {
                    format!("n = {n}: exponent {d} outside [n, 2n)")
                });
            }
            continue;
        }
        let cert = zcl_certificate_bott(&ring)?;
        report.check(cert.length() == formula, || {
            format!("dims {dims:?}: certificate length {} vs formula {formula}", cert.length())
        });
        report.check(cert.verify(&ring)? && cert.marked_term_survives, || {
            format!("dims {dims:?}: certificate does not re-verify")
        });
        if ring.dim() <= cfg.exact_budget {
            let e = zcl_exact(&ring, cfg.exact_budget)?;
            report.check(e.value >= cert.length() && e.witness.verify(ring.algebra()), || {
                format!("dims {dims:?}: exact {} below certificate {}", e.value, cert.length())
            });
        }
        let m = dims.len();
        let closed = dims.iter().map(|&n| odd_power_length(n) + 1).sum::<usize>() - (m - 1);
        let tc = tc_bounds(&ManifoldDescription::bott(bott.clone()), &opts)?;
        report.check(tc.lo() >= closed, || {
            format!("dims {dims:?}: TC.lo {} below Σ2^r − (m−1) = {closed}", tc.lo())
        });
    }
    Ok(report)
}

/// Lucas parity against Pascal's triangle mod 2.
pub fn binom_suite(max_k: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Binom);
    let mut row = vec![true];
    for k in 0..=max_k {
        for (i, &pascal) in row.iter().enumerate() {
            let lucas = binom_odd(k, i as u64).expect("i ≤ k");
            report.check(lucas == pascal, || format!("C({k},{i}) parity"));
        }
        let mut next = vec![true; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] ^ row[i];
        }
        row = next;
    }
    report
}

pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, arity: usize, max_exp: u8, terms: usize) -> GF2Poly {
    let monomials = (0..terms)
        .map(|_| Monomial::from_exponents((0..arity).map(|_| rng.gen_range(0..=max_exp)).collect()))
        .collect::<Vec<_>>();
    GF2Poly::from_monomials(arity, monomials)
}

/// `nf(nf(p)) = nf(p)` and `nf(pq) = nf(nf(p)·nf(q))`.
pub fn normal_form_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::NormalForm);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let rings: Vec<RingPresentation> = [vec![4], vec![2, 2], vec![1, 2, 1], vec![3, 1]]
        .iter()
        .map(|dims| BottMatrix::random(dims, &mut rng).map(|b| bott_ring(&b)))
        .collect::<Result<_>>()?;
    for ring in &rings {
        let m = ring.generators().len();
        let max_exp = ring.top_degree() as u8 + 1;
        for _ in 0..cfg.polynomials_per_ring {
            let p = random_poly(&mut rng, m, max_exp, 4);
            let q = random_poly(&mut rng, m, max_exp, 4);
            let np = ring.normal_form(&p)?;
            let nq = ring.normal_form(&q)?;
            report.check(ring.normal_form(&np)? == np, || {
                format!("{}: nf not idempotent on {}", ring.label(), p.render(&ring.generator_names()))
            });
            let lhs = ring.normal_form(&p.mul(&q)?)?;
            let rhs = ring.normal_form(&np.mul(&nq)?)?;
            report.check(lhs == rhs, || {
                let names = ring.generator_names();
                format!("{}: nf not multiplicative on {} · {}", ring.label(), p.render(&names), q.render(&names))
            });
            report.check(ring.algebra().to_poly(&ring.algebra().eval(&p)?) == np, || {
                format!("{}: algebra disagrees with nf", ring.label())
            });
        }
    }
    Ok(report)
}

/// `cat ≤ TC ≤ 2cat − 1` is consistent with the reported intervals, and
/// `TC ≤ TCˢ ≤ 2·dim + 1`.
pub fn sandwich_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Sandwich);
    let opts = BoundsOptions {
        exact_budget: cfg.exact_budget,
        certificate_only: false,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut manifolds: Vec<ManifoldDescription> = dims_tuples(cfg.max_m.min(2), cfg.max_n)
        .into_iter()
        .map(|dims| BottMatrix::random(&dims, &mut rng).map(ManifoldDescription::bott))
        .collect::<Result<_>>()?;
    for (p, lambda) in sample_small_covers(&VerifyConfig {
        random_cases: cfg.random_cases.min(10),
        ..cfg.clone()
    })? {
        manifolds.push(ManifoldDescription::small_cover(p, lambda)?);
    }
    for n in 1..=5 {
        manifolds.push(ManifoldDescription::sphere(n)?);
    }
    for m in &manifolds {
        let cat = cat_bounds(m)?;
        let tc = tc_bounds(m, &opts)?;
        let tcs = symm_tc_bounds(m, &opts)?;
        report.check(tc.interval.intersects(cat.lo(), 2 * cat.hi() - 1), || {
            format!("{}: TC {} outside [{}, {}]", m.label(), tc.render_row(), cat.lo(), 2 * cat.hi() - 1)
        });
        report.check(tcs.lo() >= tc.lo() && tcs.hi() <= 2 * m.dim() + 1, || {
            format!("{}: {} against {}", m.label(), tcs.render_row(), tc.render_row())
        });
    }
    Ok(report)
}

/// The Bott presentation and the Stanley–Reisner presentation of the same
/// manifold have equal graded dimensions, for every Bott matrix in range and
/// after re-reducing the facet form to Bott form.
pub fn presentation_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Presentation);
    for dims in dims_tuples(cfg.max_m, cfg.max_n) {
        let p = SimplePolytope::product_of_simplices(&dims)?;
        for b in BottMatrix::enumerate(&dims)? {
            let bott = bott_ring(&b).betti();
            let lambda = crate::charfun::from_bott(&b);
            let facet = small_cover_ring(&p, &lambda)?.betti();
            let reduced = bott_ring(&crate::charfun::reduce_to_bott(&p, &lambda)?.bott).betti();
            report.check(bott == facet && bott == reduced, || {
                format!("dims {dims:?}: bott {bott:?}, facet {facet:?}, reduced {reduced:?}")
            });
        }
    }
    Ok(report)
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    match suite {
        Suite::Lemma => lemma_suite(cfg),
        Suite::Betti => betti_suite(cfg),
        Suite::Duality => duality_suite(cfg),
        Suite::Certificate => certificate_suite(cfg),
        Suite::Binom => Ok(binom_suite(64)),
        Suite::NormalForm => normal_form_suite(cfg),
        Suite::Sandwich => sandwich_suite(cfg),
        Suite::Presentation => presentation_suite(cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyConfig {
        VerifyConfig {
            max_m: 2,
            max_n: 2,
            random_cases: 5,
            polynomials_per_ring: 50,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn suites_pass_on_small_scope() {
        for s in Suite::ALL {
            let r = run_suite(s, &quick()).unwrap();
            assert!(r.passed(), "{}", r.render());
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn injected_fault_is_caught() {
        let r = lemma_suite(&VerifyConfig {
            inject_fault: true,
            ..quick()
        })
        .unwrap();
        assert!(!r.passed());
        assert!(r.first_counterexample.is_some());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("normal-form"), Some(Suite::NormalForm));
    }
}
