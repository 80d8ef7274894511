//! Zero-divisor cup-length of RP^n: the binomial window against exhaustive search.

use smallcover::cohomology::projective_ring;
use smallcover::invariants::{zcl_exact, zcl_rp};

fn main() -> smallcover::Result<()> {
    for n in 1..=9 {
        let closed = zcl_rp(n, 0)?;
        let ring = projective_ring(n)?;
        let exact = zcl_exact(&ring, 16)?;
        assert!(exact.witness.verify(ring.algebra()));
        println!(
            "RP^{n}: window {}  exact {}  witness {}",
            closed.render(),
            exact.value,
            exact.witness.render(ring.algebra())
        );
    }
    Ok(())
}
