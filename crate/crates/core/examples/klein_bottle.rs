//! The Klein bottle as a small cover over the square.

use smallcover::bounds::{all_bounds, BoundsOptions, ManifoldDescription};
use smallcover::charfun::{validate, CharacteristicFunction};
use smallcover::gf2::GF2Vector;
use smallcover::polytope::SimplePolytope;

fn main() -> smallcover::Result<()> {
    let square = SimplePolytope::polygon(4)?;
    let lambda = CharacteristicFunction::from_bitstrings(&["10", "01", "10", "11"])?;
    println!("valid: {}", validate(&square, &lambda)?.valid);

    let klein = ManifoldDescription::small_cover(square, lambda)?.with_involution(GF2Vector::parse("10")?)?;
    let ring = klein.ring()?;
    println!("generators: {}", ring.generator_names().join(", "));
    for r in ring.relations() {
        println!("  {r}");
    }
    println!("betti: {:?}", ring.betti());

    for report in all_bounds(&klein, &BoundsOptions::default())? {
        println!("{}", report.render_row());
    }
    Ok(())
}
