//! Command-line front end. Every subcommand except `verify` reads one JSON
//! problem document; see [`ProblemSpec`] for the schema.
//!
//! Exit codes: 0 success, 1 invalid characteristic function (or a failed
//! verification suite), 2 malformed input, 64 unknown command.

mod problem;
pub mod verify;

pub use problem::{CharacteristicSpec, DoldSpec, Flags, Format, Options, PolytopeSpec, ProblemSpec};

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{
    all_bounds, cat_bounds, dold_bounds, eq_cat_bounds, special_family_bounds, symm_tc_bounds, tc_bounds,
    BoundReport, BoundsOptions, FamilyBound, ManifoldDescription, Side,
};
use crate::charfun::validate;
use crate::cohomology::{dold_ring, poincare_pairing, Generator, RingPresentation};
use crate::error::{Error, Result};
use crate::invariants::{
    cup_length, zcl_certificate_bott, zcl_exact, zcl_greedy, zcl_interval, IntervalValue, BUDGET_ENV,
    DEFAULT_EXACT_BUDGET,
};
use verify::{run_suite, Suite, SuiteReport, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "smallcover", version, about = "Cohomology and TC bounds for small covers")]
pub struct Cli {
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Largest ring dimension for exhaustive zcl searches.
    #[arg(long, global = true)]
    pub exact_budget: Option<usize>,
    /// Use certificates only, never the exhaustive search.
    #[arg(long, global = true)]
    pub certificate_only: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// JSON problem file.
    pub spec: PathBuf,
    /// Sphere dimensions of a Dold manifold over the problem, e.g. `2,3`.
    #[arg(long, value_delimiter = ',')]
    pub dold: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvariantChoice {
    Cat,
    Tc,
    Tcs,
    Cateq,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the characteristic function at every vertex.
    Validate(SpecArgs),
    /// Generators, relations and Betti numbers.
    Ring(SpecArgs),
    /// Betti numbers, with the h-vector when there is a polytope.
    Betti(SpecArgs),
    /// Cup-length.
    Cl(SpecArgs),
    /// Zero-divisor cup-length with a witness.
    Zcl(SpecArgs),
    /// Interval bounds with certificate trails.
    Bounds {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "all")]
        invariant: InvariantChoice,
        /// Take the fixed set of the involution to be path-connected.
        #[arg(long)]
        assume_fixed_set_connected: bool,
        /// Involution generator as a bitstring, e.g. `10`.
        #[arg(long)]
        involution: Option<String>,
    },
    /// Dold manifold ring summary and bounds; sphere dimensions from `--dold`
    /// or the problem file.
    Dold {
        #[command(flatten)]
        spec: SpecArgs,
        /// Take the fixed set of the involution to be path-connected.
        #[arg(long)]
        assume_fixed_set_connected: bool,
    },
    /// Run the self-check sweeps.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

struct Context {
    format: Format,
    opts: BoundsOptions,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidCharacteristic { .. } => EXIT_INVALID,
        _ => EXIT_MALFORMED,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => EXIT_MALFORMED,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::InvalidCharacteristic { failing_vertices } = &e {
                let _ = writeln!(err, "failing vertices: {}", render_vertices(failing_vertices));
            }
            exit_code(&e)
        }
    }
}

fn load(path: &PathBuf) -> Result<ProblemSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    ProblemSpec::from_json(&text)
}

fn context(cli: &Cli, spec: Option<&ProblemSpec>) -> Context {
    let env_budget = std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok());
    let exact_budget = cli
        .exact_budget
        .or(env_budget)
        .or_else(|| spec.and_then(|s| s.options.exact_budget))
        .unwrap_or(DEFAULT_EXACT_BUDGET);
    Context {
        format: cli
            .format
            .or_else(|| spec.and_then(|s| s.options.format))
            .unwrap_or_default(),
        opts: BoundsOptions {
            exact_budget,
            certificate_only: cli.certificate_only,
        },
    }
}

fn emit<T: Serialize>(ctx: &Context, out: &mut dyn Write, value: &T, table: impl FnOnce() -> String) -> Result<()> {
    let text = match ctx.format {
        Format::Json => serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?,
        Format::Table => table(),
    };
    writeln!(out, "{}", text.trim_end()).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn render_vertices(vs: &[Vec<usize>]) -> String {
    vs.iter()
        .map(|v| format!("{{{}}}", v.iter().map(|f| format!("F{}", f + 1)).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// The ring a spec describes, or its Dold manifold when sphere dimensions are given.
fn ring_for(spec: &ProblemSpec, dold: Option<&[usize]>) -> Result<(ManifoldDescription, RingPresentation)> {
    let m = spec.manifold(None, false)?;
    let base = m.ring()?;
    let ring = match dold {
        Some(p) => dold_ring(&base, p)?,
        None => base,
    };
    Ok((m, ring))
}

fn dold_arg<'a>(args: &'a SpecArgs, spec: &'a ProblemSpec) -> Option<&'a [usize]> {
    args.dold.as_deref().or(spec.dold_p())
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ValidateOutput {
    pub valid: bool,
    pub failing_vertices: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RingOutput {
    pub label: String,
    pub generators: Vec<Generator>,
    pub relations: Vec<String>,
    pub betti: Vec<usize>,
    /// Basis monomials grouped by degree.
    pub basis: Vec<Vec<String>>,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BettiOutput {
    pub betti: Vec<usize>,
    pub h_vector: Option<Vec<u128>>,
    pub poincare_duality: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClOutput {
    pub cup_length: usize,
    /// A basis monomial with `cup_length` factors.
    pub witness: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ZclOutput {
    pub ring: String,
    pub interval: IntervalValue,
    /// Zero-divisor factors of the witness product, in canonical text.
    pub factors: Vec<String>,
    pub product: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BoundsOutput {
    pub manifold: String,
    pub reports: Vec<BoundReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub special_families: Vec<FamilyBound>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DoldOutput {
    pub ring: String,
    pub p: Vec<usize>,
    pub betti: Vec<usize>,
    pub reports: Vec<BoundReport>,
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Validate(args) => {
            let spec = load(&args.spec)?;
            let ctx = context(cli, Some(&spec));
            let Some((p, lambda)) = spec.pair()? else {
                emit(&ctx, out, &ValidateOutput { valid: true, failing_vertices: vec![] }, || "valid".into())?;
                return Ok(EXIT_OK);
            };
            let report = validate(&p, &lambda)?;
            let o = ValidateOutput {
                valid: report.valid,
                failing_vertices: report.failing_vertices.clone(),
            };
            emit(&ctx, out, &o, || {
                if o.valid {
                    "valid".into()
                } else {
                    format!("invalid at {}", render_vertices(&o.failing_vertices))
                }
            })?;
            Ok(if o.valid { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Ring(args) => {
            let spec = load(&args.spec)?;
            let ctx = context(cli, Some(&spec));
            let (_, ring) = ring_for(&spec, dold_arg(args, &spec))?;
            let alg = ring.algebra();
            let names = ring.generator_names();
            let basis = (0..=ring.top_degree())
                .map(|d| alg.degree_range(d).map(|b| alg.basis()[b].render(&names)).collect())
                .collect();
            let o = RingOutput {
                label: ring.label(),
                generators: ring.generators().to_vec(),
                relations: ring.relations().to_vec(),
                betti: ring.betti(),
                basis,
                notes: ring.notes().to_vec(),
            };
            emit(&ctx, out, &o, || {
                let mut s = format!("ring: {}\ngenerators:", o.label);
                for g in &o.generators {
                    s.push_str(&format!(" {} (deg {})", g.name, g.degree));
                }
                s.push_str("\nrelations:\n");
                for r in &o.relations {
                    s.push_str(&format!("  {r}\n"));
                }
                s.push_str(&format!("betti: {}\n", join(&o.betti)));
                for (d, b) in o.basis.iter().enumerate() {
                    s.push_str(&format!("  H^{d}: {}\n", b.join(", ")));
                }
                for n in &o.notes {
                    s.push_str(&format!("note: {n}\n"));
                }
                s
            })?;
            Ok(EXIT_OK)
        }
        Command::Betti(args) => {
            let spec = load(&args.spec)?;
            let ctx = context(cli, Some(&spec));
            let dold = dold_arg(args, &spec);
            let (_, ring) = ring_for(&spec, dold)?;
            let h_vector = match (dold, spec.polytope()?) {
                (None, Some(p)) => Some(p.h_vector().0),
                _ => None,
            };
            let o = BettiOutput {
                betti: ring.betti(),
                h_vector,
                poincare_duality: poincare_pairing(&ring)?.nondegenerate,
            };
            emit(&ctx, out, &o, || join(&o.betti))?;
            Ok(EXIT_OK)
        }
        Command::Cl(args) => {
            let spec = load(&args.spec)?;
            let ctx = context(cli, Some(&spec));
            let (_, ring) = ring_for(&spec, dold_arg(args, &spec))?;
            let cl = cup_length(&ring);
            let names = ring.generator_names();
            let witness = ring
                .algebra()
                .basis()
                .iter()
                .find(|m| m.exponents().iter().map(|&e| e as usize).sum::<usize>() == cl)
                .map(|m| m.render(&names));
            let o = ClOutput { cup_length: cl, witness };
            emit(&ctx, out, &o, || match &o.witness {
                Some(w) => format!("cl = {} (witness {w})", o.cup_length),
                None => format!("cl = {}", o.cup_length),
            })?;
            Ok(EXIT_OK)
        }
        Command::Zcl(args) => {
            let spec = load(&args.spec)?;
            let ctx = context(cli, Some(&spec));
            let o = zcl_output(&spec, dold_arg(args, &spec), &ctx)?;
            emit(&ctx, out, &o, || {
                let mut s = format!("zcl ∈ [{},{}]  ({} / {})", o.interval.lo, o.interval.hi, o.interval.lo_source, o.interval.hi_source);
                if !o.factors.is_empty() {
                    let factors: Vec<String> = o.factors.iter().map(|f| format!("({f})")).collect();
                    s.push_str(&format!("\nwitness: {}", factors.join(" · ")));
                    s.push_str(&format!("\nproduct: {}", o.product));
                }
                s
            })?;
            Ok(EXIT_OK)
        }
        Command::Bounds {
            spec: args,
            invariant,
            assume_fixed_set_connected,
            involution,
        } => {
            let spec = load(&args.spec)?;
            let ctx = context(cli, Some(&spec));
            let m = spec.manifold(involution.as_deref(), *assume_fixed_set_connected)?;
            if let Some(p) = dold_arg(args, &spec) {
                let d = dold_bounds(&m, p, &ctx.opts)?;
                let reports: Vec<BoundReport> = [d.cat, d.tc, d.tcs]
                    .into_iter()
                    .filter(|r| selected(*invariant, r))
                    .collect();
                let o = BoundsOutput {
                    manifold: format!("D({}; {p:?})", m.label()),
                    reports,
                    special_families: vec![],
                };
                emit(&ctx, out, &o, || render_bounds(&o))?;
                return Ok(EXIT_OK);
            }
            let reports = match invariant {
                InvariantChoice::Cat => vec![cat_bounds(&m)?],
                InvariantChoice::Tc => vec![tc_bounds(&m, &ctx.opts)?],
                InvariantChoice::Tcs => vec![symm_tc_bounds(&m, &ctx.opts)?],
                InvariantChoice::Cateq => vec![eq_cat_bounds(&m)?],
                InvariantChoice::All => all_bounds(&m, &ctx.opts)?,
            };
            let special_families = match (&m.kind, invariant) {
                (crate::bounds::ManifoldKind::Bott { bott }, InvariantChoice::Tc | InvariantChoice::All) => {
                    special_family_bounds(bott.dims())
                }
                _ => vec![],
            };
            let o = BoundsOutput {
                manifold: m.label(),
                reports,
                special_families,
            };
            emit(&ctx, out, &o, || render_bounds(&o))?;
            Ok(EXIT_OK)
        }
        Command::Dold {
            spec: args,
            assume_fixed_set_connected,
        } => {
            let spec = load(&args.spec)?;
            let ctx = context(cli, Some(&spec));
            let p = dold_arg(args, &spec)
                .ok_or_else(|| Error::InvalidInput("no sphere dimensions: pass --dold or set \"dold\"".into()))?
                .to_vec();
            let m = spec.manifold(None, *assume_fixed_set_connected)?;
            let ring = dold_ring(&m.ring()?, &p)?;
            let d = dold_bounds(&m, &p, &ctx.opts)?;
            let o = DoldOutput {
                ring: ring.label(),
                p,
                betti: ring.betti(),
                reports: vec![d.cat, d.tc, d.tcs],
            };
            emit(&ctx, out, &o, || {
                let mut s = format!("ring: {}\nbetti: {}\n", o.ring, join(&o.betti));
                s.push_str(&render_reports(&o.reports));
                s
            })?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            max_m,
            max_n,
            seed,
            cases,
            inject_fault,
        } => {
            let ctx = context(cli, None);
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                suite
                    .split(',')
                    .map(|s| Suite::parse(s.trim()).ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}"))))
                    .collect::<Result<_>>()?
            };
            let cfg = VerifyConfig {
                seed: *seed,
                max_m: *max_m,
                max_n: *max_n,
                random_cases: *cases,
                exact_budget: ctx.opts.exact_budget,
                inject_fault: *inject_fault,
                ..VerifyConfig::default()
            };
            let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, &cfg)).collect::<Result<_>>()?;
            let all_passed = reports.iter().all(SuiteReport::passed);
            emit(&ctx, out, &reports, || {
                reports.iter().map(SuiteReport::render).collect::<Vec<_>>().join("\n")
            })?;
            Ok(if all_passed { EXIT_OK } else { EXIT_INVALID })
        }
    }
}

fn selected(choice: InvariantChoice, r: &BoundReport) -> bool {
    use crate::bounds::Invariant;
    matches!(
        (choice, r.invariant),
        (InvariantChoice::All, _)
            | (InvariantChoice::Cat, Invariant::Cat)
            | (InvariantChoice::Tc, Invariant::Tc)
            | (InvariantChoice::Tcs, Invariant::TcS)
            | (InvariantChoice::Cateq, Invariant::CatEq)
    )
}

fn zcl_output(spec: &ProblemSpec, dold: Option<&[usize]>, ctx: &Context) -> Result<ZclOutput> {
    let m = spec.manifold(None, false)?;
    let ring = match dold {
        Some(p) => dold_ring(&m.ring()?, p)?,
        None => m.certificate_ring()?,
    };
    let alg = ring.algebra();
    let interval = zcl_interval(&ring, ctx.opts.exact_budget, ctx.opts.certificate_only)?;
    let (factors, product) = if interval.is_exact() && !ctx.opts.certificate_only {
        let w = zcl_exact(&ring, ctx.opts.exact_budget)?.witness;
        (
            w.factors(alg).iter().map(|f| f.render(alg)).collect(),
            w.product(alg).render(alg),
        )
    } else if ring.bott_relations().is_some() && interval.lo_source.contains("certificate") {
        let c = zcl_certificate_bott(&ring)?;
        let names = ring.generator_names();
        (
            c.exponents
                .iter()
                .enumerate()
                .map(|(j, d)| format!("(1⊗{0} + {0}⊗1)^{d}", names[j]))
                .collect(),
            format!("nonzero, {} terms", c.product.term_count()),
        )
    } else {
        let w = zcl_greedy(alg);
        (
            w.factors(alg).iter().map(|f| f.render(alg)).collect(),
            w.product(alg).render(alg),
        )
    };
    Ok(ZclOutput {
        ring: ring.label(),
        interval,
        factors,
        product,
    })
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn render_reports(reports: &[BoundReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&r.render_row());
        s.push('\n');
        for c in &r.certificates {
            let mark = if c.binding { '*' } else { ' ' };
            let rel = match c.side {
                Side::Lower => '≥',
                Side::Upper => '≤',
            };
            s.push_str(&format!("  {mark} {rel} {:<3} {}: {}  [{}]\n", c.value, c.rule, c.statement, c.witness));
        }
        for a in &r.assumed {
            s.push_str(&format!("  assumed: {a}\n"));
        }
        for n in &r.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
    }
    s
}

fn render_bounds(o: &BoundsOutput) -> String {
    let mut s = format!("manifold: {}\n", o.manifold);
    s.push_str(&render_reports(&o.reports));
    for f in &o.special_families {
        s.push_str(&format!(
            "family {}: TC ∈ [{},{}]  ({})\n",
            f.family, f.interval.lo, f.interval.hi, f.statement
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("smallcover").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_command_is_usage_error() {
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&[]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn missing_file_is_malformed() {
        assert_eq!(run_args(&["betti", "/nonexistent/spec.json"]).0, EXIT_MALFORMED);
    }

    #[test]
    fn verify_restricted_scope() {
        let (code, out, _) = run_args(&["verify", "--suite", "lemma", "--max-m", "2"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.starts_with("PASS lemma"));
        let (code, out, _) = run_args(&["verify", "--suite", "lemma", "--max-m", "2", "--inject-fault"]);
        assert_eq!(code, EXIT_INVALID);
        assert!(out.contains("first counterexample"));
    }
}
