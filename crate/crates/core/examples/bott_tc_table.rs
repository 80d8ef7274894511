//! TC intervals for two-stage Bott towers RP^a ⋊ RP^b, with the binding rules.

use smallcover::bounds::{special_family_bounds, tc_bounds, BoundsOptions, ManifoldDescription};
use smallcover::charfun::BottMatrix;

fn main() -> smallcover::Result<()> {
    let opts = BoundsOptions::default();
    for dims in [[16, 8], [16, 9], [17, 8], [17, 9], [5, 3]] {
        let m = ManifoldDescription::bott(BottMatrix::diagonal(&dims)?);
        let tc = tc_bounds(&m, &opts)?;
        println!("{dims:?}  {}", tc.render_row());
        for c in tc.certificates.iter().filter(|c| c.binding) {
            println!("    {:?} {} via {}: {}", c.side, c.value, c.rule, c.statement);
        }
        for f in special_family_bounds(&dims) {
            println!("    family {}: {}", f.family, f.interval.render());
        }
    }
    Ok(())
}
