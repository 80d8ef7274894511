//! Bounds for Dold manifolds D(RP^n; p) built on top of a small cover.

use smallcover::bounds::{dold_bounds, BoundsOptions, ManifoldDescription};
use smallcover::charfun::{from_bott, BottMatrix};
use smallcover::cohomology::dold_ring;
use smallcover::polytope::SimplePolytope;

fn main() -> smallcover::Result<()> {
    let opts = BoundsOptions::default();
    for (n, p) in [(2, vec![2]), (4, vec![2]), (3, vec![1, 1])] {
        let rp = ManifoldDescription::small_cover(
            SimplePolytope::simplex(n)?,
            from_bott(&BottMatrix::diagonal(&[n])?),
        )?;
        let ring = dold_ring(&rp.ring()?, &p)?;
        let d = dold_bounds(&rp, &p, &opts)?;
        println!("D(RP^{n}; {p:?})  betti {:?}", ring.betti());
        for r in [&d.cat, &d.tc, &d.tcs] {
            println!("    {}", r.render_row());
        }
    }
    Ok(())
}
