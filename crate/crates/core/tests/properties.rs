use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use smallcover::bounds::{
    cat_bounds, special_family_bounds, symm_tc_bounds, tc_bounds, BoundReport, BoundsOptions, Invariant,
    ManifoldDescription, ReportBuilder,
};
use smallcover::charfun::{random_valid, reduce_to_bott, validate, BottMatrix};
use smallcover::cohomology::{bott_ring, poincare_pairing, small_cover_ring};
use smallcover::gf2::{binom_odd, rank_gf2, EchelonBasis, GF2Poly, GF2Vector, Monomial};
use smallcover::invariants::{odd_power_length, zcl_certificate_bott};
use smallcover::polytope::SimplePolytope;

fn dims_strategy(max_m: usize, max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=max_n, 1..=max_m)
}

fn bott_strategy(max_m: usize, max_n: usize) -> impl Strategy<Value = BottMatrix> {
    (dims_strategy(max_m, max_n), any::<u64>()).prop_map(|(dims, seed)| {
        BottMatrix::random(&dims, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
    })
}

fn poly_strategy(arity: usize, max_exp: u8) -> impl Strategy<Value = GF2Poly> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, arity), 0..5)
        .prop_map(move |ms| GF2Poly::from_monomials(arity, ms.into_iter().map(Monomial::from_exponents)))
}

fn certificate_opts() -> BoundsOptions {
    BoundsOptions {
        exact_budget: 12,
        certificate_only: true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binomial_parity_matches_factorial_count(k in 0u64..200, i in 0u64..200) {
        prop_assume!(i <= k);
        // Legendre: C(k, i) is odd iff no carries when adding i and k - i in base 2
        let carries = (i & (k - i)) != 0;
        prop_assert_eq!(binom_odd(k, i).unwrap(), !carries);
    }

    #[test]
    fn echelon_rank_agrees(rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 9), 0..12)) {
        let rows: Vec<GF2Vector> = rows.iter().map(|r| GF2Vector::from_bools(r)).collect();
        let mut e = EchelonBasis::new(9);
        for r in &rows {
            e.insert(r.clone());
        }
        prop_assert_eq!(e.rank(), rank_gf2(&rows).unwrap());
        for r in &rows {
            prop_assert!(e.contains(r));
        }
    }

    #[test]
    fn polynomial_ring_laws(p in poly_strategy(3, 3), q in poly_strategy(3, 3), r in poly_strategy(3, 3)) {
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
        let mut qr = q.clone();
        qr.add_assign(&r);
        let mut expanded = p.mul(&q).unwrap();
        expanded.add_assign(&p.mul(&r).unwrap());
        prop_assert_eq!(p.mul(&qr).unwrap(), expanded);
    }

    #[test]
    fn normal_form_is_a_ring_map(b in bott_strategy(3, 3), seed in any::<u64>()) {
        let ring = bott_ring(&b);
        let m = b.blocks();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let max = ring.top_degree() as u8 + 1;
        let p = smallcover::cli::verify::random_poly(&mut rng, m, max, 4);
        let q = smallcover::cli::verify::random_poly(&mut rng, m, max, 4);
        let np = ring.normal_form(&p).unwrap();
        let nq = ring.normal_form(&q).unwrap();
        prop_assert_eq!(ring.normal_form(&np).unwrap(), np.clone());
        prop_assert_eq!(
            ring.normal_form(&p.mul(&q).unwrap()).unwrap(),
            ring.normal_form(&np.mul(&nq).unwrap()).unwrap()
        );
        let mut sum = p.clone();
        sum.add_assign(&q);
        let mut nsum = np.clone();
        nsum.add_assign(&nq);
        prop_assert_eq!(ring.normal_form(&sum).unwrap(), nsum);
    }

    #[test]
    fn betti_is_h_vector(dims in dims_strategy(3, 3), seed in any::<u64>()) {
        let p = SimplePolytope::product_of_simplices(&dims).unwrap();
        let lambda = random_valid(&p, &mut ChaCha8Rng::seed_from_u64(seed), 1).unwrap().unwrap();
        prop_assert!(validate(&p, &lambda).unwrap().valid);
        let ring = small_cover_ring(&p, &lambda).unwrap();
        let h = p.h_vector();
        prop_assert!(h.is_palindromic());
        prop_assert_eq!(h.total(), p.vertex_count() as u128);
        prop_assert_eq!(ring.betti().iter().map(|&b| b as u128).collect::<Vec<_>>(), h.0);
        prop_assert!(poincare_pairing(&ring).unwrap().nondegenerate);
        let reduced = reduce_to_bott(&p, &lambda).unwrap();
        prop_assert_eq!(bott_ring(&reduced.bott).betti(), ring.betti());
        prop_assert_eq!(reduced.apply(&dims, &lambda), smallcover::charfun::from_bott(&reduced.bott));
    }

    #[test]
    fn polygon_betti(k in 3usize..=14, seed in any::<u64>()) {
        let p = SimplePolytope::polygon(k).unwrap();
        let lambda = random_valid(&p, &mut ChaCha8Rng::seed_from_u64(seed), 1).unwrap().unwrap();
        let ring = small_cover_ring(&p, &lambda).unwrap();
        prop_assert_eq!(ring.betti(), vec![1, k - 2, 1]);
    }

    #[test]
    fn certificate_matches_closed_form(b in bott_strategy(3, 4)) {
        let ring = bott_ring(&b);
        let cert = zcl_certificate_bott(&ring).unwrap();
        let formula: usize = b.dims().iter().map(|&n| odd_power_length(n)).sum();
        prop_assert_eq!(cert.length(), formula);
        prop_assert!(cert.verify(&ring).unwrap());
        prop_assert!(cert.marked_term_survives);
        let m = b.blocks();
        let closed = b.dims().iter().map(|&n| odd_power_length(n) + 1).sum::<usize>() - (m - 1);
        let tc = tc_bounds(&ManifoldDescription::bott(b.clone()), &certificate_opts()).unwrap();
        prop_assert!(tc.lo() >= closed);
    }

    #[test]
    fn reports_are_consistent(b in bott_strategy(2, 4)) {
        let d = ManifoldDescription::bott(b);
        let opts = BoundsOptions { exact_budget: 12, certificate_only: false };
        let cat = cat_bounds(&d).unwrap();
        let tc = tc_bounds(&d, &opts).unwrap();
        let tcs = symm_tc_bounds(&d, &opts).unwrap();
        prop_assert_eq!((cat.lo(), cat.hi()), (d.dim() + 1, d.dim() + 1));
        prop_assert!(tc.interval.intersects(cat.lo(), 2 * cat.hi() - 1));
        prop_assert!(tcs.lo() >= tc.lo());
        prop_assert!(tcs.hi() <= 2 * d.dim() + 1);
        for r in [&cat, &tc, &tcs] {
            let json = serde_json::to_string(r).unwrap();
            let back: BoundReport = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(&back, r);
        }
    }

    #[test]
    fn extra_certificates_never_loosen(
        lowers in prop::collection::vec(0usize..50, 1..6),
        uppers in prop::collection::vec(50usize..100, 1..6),
        extra in 0usize..100,
        lower_side in any::<bool>(),
    ) {
        let build = |with_extra: bool| {
            let mut b = ReportBuilder::new(Invariant::Tc);
            for &l in &lowers {
                b.lower(l, "l", "s", "w");
            }
            for &u in &uppers {
                b.upper(u, "u", "s", "w");
            }
            if with_extra {
                if lower_side {
                    b.lower(extra, "x", "s", "w");
                } else {
                    b.upper(extra, "x", "s", "w");
                }
            }
            b.build()
        };
        let base = build(false).unwrap();
        if let Ok(more) = build(true) {
            prop_assert!(more.lo() >= base.lo());
            prop_assert!(more.hi() <= base.hi());
        }
    }

    #[test]
    fn special_families_contain_tc(dims in dims_strategy(2, 9)) {
        let tc = tc_bounds(&ManifoldDescription::bott(BottMatrix::diagonal(&dims).unwrap()), &certificate_opts()).unwrap();
        for f in special_family_bounds(&dims) {
            prop_assert!(f.interval.lo <= tc.lo() && tc.hi() <= f.interval.hi, "{}: {:?} vs {}", f.family, f.interval, tc.render_row());
        }
    }
}

#[test]
fn powers_of_two_reproduce_closed_form() {
    for dims in [vec![1], vec![2], vec![4], vec![8], vec![1, 1], vec![2, 2], vec![4, 2, 1], vec![8, 4]] {
        let n: usize = dims.iter().sum();
        let m = dims.len();
        let tc = tc_bounds(&ManifoldDescription::bott(BottMatrix::diagonal(&dims).unwrap()), &certificate_opts()).unwrap();
        assert_eq!(tc.lo(), 2 * n - m + 1, "{dims:?}");
    }
}
