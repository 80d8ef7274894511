//! Equivariant category of 2m-gon small covers under a coordinate involution.

use smallcover::bounds::{eq_cat_bounds, ManifoldDescription};
use smallcover::charfun::CharacteristicFunction;
use smallcover::gf2::GF2Vector;
use smallcover::polytope::SimplePolytope;

fn main() -> smallcover::Result<()> {
    for m in 2..=6 {
        let bits: Vec<&str> = (0..2 * m).map(|i| if i % 2 == 0 { "10" } else { "01" }).collect();
        let d = ManifoldDescription::small_cover(
            SimplePolytope::polygon(2 * m)?,
            CharacteristicFunction::from_bitstrings(&bits)?,
        )?
        .with_involution(GF2Vector::parse("10")?)?;
        let plain = eq_cat_bounds(&d)?;
        let assumed = eq_cat_bounds(&d.clone().assume_fixed_set_connected())?;
        println!("{}-gon: {}   with connected fixed set: {} {:?}", 2 * m, plain.render_row(), assumed.render_row(), assumed.assumed);
    }
    Ok(())
}
