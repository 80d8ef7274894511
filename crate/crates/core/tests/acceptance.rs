//! Acceptance run: one PASS/FAIL line per criterion.

use std::io::Write;
use std::time::{Duration, Instant};

use smallcover::bounds::{cat_bounds, dold_bounds, eq_cat_bounds, symm_tc_bounds, tc_bounds, BoundsOptions, ManifoldDescription};
use smallcover::charfun::{from_bott, BottMatrix, CharacteristicFunction};
use smallcover::cli::verify::{run_suite, Suite, VerifyConfig};
use smallcover::cli::{run, EXIT_OK};
use smallcover::cohomology::{bott_ring, projective_ring, TensorSquare};
use smallcover::gf2::GF2Vector;
use smallcover::invariants::{zcl_certificate_bott, zcl_exact};
use smallcover::polytope::SimplePolytope;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("smallcover").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned() + &String::from_utf8_lossy(&err))
}

fn write_spec(dir: &tempfile::TempDir, name: &str, json: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, json).expect("temp file");
    path.to_string_lossy().into_owned()
}

fn opts() -> BoundsOptions {
    BoundsOptions {
        exact_budget: 12,
        certificate_only: false,
    }
}

fn suite(s: Suite, cfg: &VerifyConfig) -> Result<String, String> {
    let r = run_suite(s, cfg).map_err(|e| e.to_string())?;
    ensure(r.passed() && r.cases > 0, r.render())?;
    Ok(format!("{} {} cases", s.name(), r.cases))
}

fn rp_description(n: usize) -> ManifoldDescription {
    ManifoldDescription::small_cover(
        SimplePolytope::simplex(n).unwrap(),
        from_bott(&BottMatrix::diagonal(&[n]).unwrap()),
    )
    .unwrap()
}

fn tc_table() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for (dims, lo, hi) in [
        ([16, 8], 47, 49),
        ([16, 9], 47, 50),
        ([17, 8], 47, 50),
        ([17, 9], 47, 51),
    ] {
        let json = format!(
            r#"{{"polytope":{{"type":"product_of_simplices","dims":{dims:?}}},
                "characteristic":{{"type":"bott_matrix","dims":{dims:?}}}}}"#
        );
        let path = write_spec(&dir, &format!("bott_{}_{}.json", dims[0], dims[1]), &json);
        let start = Instant::now();
        let (code, out) = cli(&["bounds", "--invariant", "tc", &path]);
        let elapsed = start.elapsed();
        let row = format!("TC ∈ [{lo},{hi}]");
        ensure(code == EXIT_OK && out.contains(&row), format!("{dims:?}: expected {row}, got\n{out}"))?;
        ensure(elapsed < Duration::from_secs(10), format!("{dims:?} took {elapsed:?}"))?;
        let r = tc_bounds(&ManifoldDescription::bott(BottMatrix::diagonal(&dims).unwrap()), &opts())
            .map_err(|e| e.to_string())?;
        ensure((r.lo(), r.hi()) == (lo, hi), format!("{dims:?}: library gives {}", r.render_row()))?;
        rows.push(format!("{dims:?} {row}"));
    }
    Ok(rows.join("; "))
}

fn klein_and_polygons() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = write_spec(
        &dir,
        "klein.json",
        r#"{"polytope":{"type":"polygon","edges":4},
            "characteristic":{"type":"facet_vectors","vectors":["10","01","10","11"]}}"#,
    );
    let (code, out) = cli(&["validate", &path]);
    ensure(code == EXIT_OK && out.trim() == "valid", format!("validate: {out}"))?;
    let (code, out) = cli(&["betti", &path]);
    ensure(code == EXIT_OK && out.trim() == "1 2 1", format!("betti: {out}"))?;
    let klein = ManifoldDescription::small_cover(
        SimplePolytope::polygon(4).unwrap(),
        CharacteristicFunction::from_bitstrings(&["10", "01", "10", "11"]).unwrap(),
    )
    .unwrap();
    let cat = cat_bounds(&klein).map_err(|e| e.to_string())?;
    ensure((cat.lo(), cat.hi()) == (3, 3), format!("cat {}", cat.render_row()))?;
    let eq = eq_cat_bounds(&klein.with_involution(GF2Vector::parse("10").unwrap()).unwrap())
        .map_err(|e| e.to_string())?;
    ensure((eq.lo(), eq.hi()) == (4, 4), format!("eq_cat {}", eq.render_row()))?;
    for m in 2..=5 {
        let bits: Vec<&str> = (0..2 * m).map(|i| if i % 2 == 0 { "10" } else { "01" }).collect();
        let d = ManifoldDescription::small_cover(
            SimplePolytope::polygon(2 * m).unwrap(),
            CharacteristicFunction::from_bitstrings(&bits).unwrap(),
        )
        .and_then(|d| d.with_involution(GF2Vector::parse("10").unwrap()))
        .map_err(|e| e.to_string())?;
        let r = eq_cat_bounds(&d).map_err(|e| e.to_string())?;
        ensure((r.lo(), r.hi()) == (2 * m, 2 * m), format!("{}-gon: {}", 2 * m, r.render_row()))?;
    }
    Ok("Klein valid, betti 1 2 1, cat 3, eq_cat [4,4]; 2m-gons m=2..5 exact 2m".into())
}

fn exact_zcl() -> Outcome {
    let rp1 = zcl_exact(&projective_ring(1).unwrap(), 12).map_err(|e| e.to_string())?;
    ensure(rp1.value == 1, format!("zcl(RP1) = {}", rp1.value))?;
    let rp2 = projective_ring(2).unwrap();
    let e = zcl_exact(&rp2, 12).map_err(|e| e.to_string())?;
    let alg = rp2.algebra();
    let mut cube = TensorSquare::unit(alg);
    for _ in 0..3 {
        cube = cube.mul_zero_divisor(alg, 0);
    }
    let fourth = cube.mul_zero_divisor(alg, 0);
    ensure(
        e.value == 3 && e.witness.verify(alg) && !cube.is_zero() && fourth.is_zero(),
        format!("zcl(RP2) = {}, 𝔞³ = {}", e.value, cube.render(alg)),
    )?;
    let mut rings = 0;
    for dims in smallcover::cli::verify::dims_tuples(3, 11) {
        if dims.iter().map(|n| n + 1).product::<usize>() > 12 {
            continue;
        }
        for b in BottMatrix::enumerate(&dims).map_err(|e| e.to_string())? {
            let ring = bott_ring(&b);
            let cert = zcl_certificate_bott(&ring).map_err(|e| e.to_string())?;
            let exact = zcl_exact(&ring, 12).map_err(|e| e.to_string())?;
            ensure(
                exact.value >= cert.length() && exact.witness.verify(ring.algebra()),
                format!("dims {dims:?}: exact {} < certificate {}", exact.value, cert.length()),
            )?;
            rings += 1;
        }
    }
    Ok(format!("RP1 = 1, RP2 = 3 (𝔞³ ≠ 0), exact ≥ certificate on {rings} rings"))
}

fn symmetric_tc() -> Outcome {
    for n in [2, 4, 8] {
        let r = symm_tc_bounds(&rp_description(n), &opts()).map_err(|e| e.to_string())?;
        ensure((r.lo(), r.hi()) == (2 * n + 1, 2 * n + 1), format!("n = {n}: {}", r.render_row()))?;
    }
    Ok("TC_S exact 5, 9, 17".into())
}

fn dold() -> Outcome {
    for (n, lo, hi) in [(2, 7, 9), (4, 11, 13)] {
        let d = dold_bounds(&rp_description(n), &[2], &opts()).map_err(|e| e.to_string())?;
        ensure((d.tc.lo(), d.tc.hi()) == (lo, hi), format!("n = {n}: {}", d.tc.render_row()))?;
    }
    Ok("D(RP2; 2) TC ∈ [7,9], D(RP4; 2) TC ∈ [11,13]".into())
}

fn property_suites() -> Outcome {
    let cfg = VerifyConfig::default();
    let mut parts = Vec::new();
    for s in [Suite::Sandwich, Suite::Certificate, Suite::Binom, Suite::NormalForm] {
        parts.push(suite(s, &cfg)?);
    }
    Ok(parts.join(", "))
}

fn main() {
    let sample = VerifyConfig {
        max_m: 4,
        max_n: 7,
        max_vertices: 256,
        ..VerifyConfig::default()
    };
    let criteria: Vec<Criterion> = vec![
        ("TC table for Bott towers", Box::new(tc_table)),
        ("top-monomial sweep", Box::new(|| suite(Suite::Lemma, &VerifyConfig::default()))),
        (
            "Betti = h-vector and Poincaré duality",
            Box::new(move || Ok(format!("{}, {}", suite(Suite::Betti, &sample)?, suite(Suite::Duality, &sample)?))),
        ),
        ("two-presentation agreement", Box::new(|| suite(Suite::Presentation, &VerifyConfig::default()))),
        ("Klein bottle and 2m-gons", Box::new(klein_and_polygons)),
        ("exact zcl oracle", Box::new(exact_zcl)),
        ("symmetric TC of RP^{2^s}", Box::new(symmetric_tc)),
        ("Dold manifold TC", Box::new(dold)),
        ("property suites", Box::new(property_suites)),
    ];
    let mut failed = 0;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => writeln!(out, "PASS {}. {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                writeln!(out, "FAIL {}. {name} ({secs:.2}s): {why}", i + 1)
            }
        }
        .expect("stdout");
    }
    writeln!(out, "{} of {} criteria passed", criteria.len() - failed, criteria.len()).expect("stdout");
    if failed > 0 {
        std::process::exit(1);
    }
}
