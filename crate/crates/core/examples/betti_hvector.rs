//! f-vectors, h-vectors and Betti numbers for a few simple polytopes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smallcover::charfun::random_valid;
use smallcover::cohomology::{poincare_pairing, small_cover_ring};
use smallcover::polytope::SimplePolytope;

fn main() -> smallcover::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let polytopes = [
        ("hexagon", SimplePolytope::polygon(6)?),
        ("cube", SimplePolytope::product_of_simplices(&[1, 1, 1])?),
        ("Δ² × Δ²", SimplePolytope::product_of_simplices(&[2, 2])?),
        ("Δ³ × Δ¹", SimplePolytope::product_of_simplices(&[3, 1])?),
    ];
    for (name, p) in polytopes {
        let Some(lambda) = random_valid(&p, &mut rng, 100)? else {
            println!("{name}: no characteristic function found");
            continue;
        };
        let ring = small_cover_ring(&p, &lambda)?;
        println!(
            "{name}: f = {:?}  h = {:?}  betti = {:?}  duality = {}",
            p.f_vector().0,
            p.h_vector().0,
            ring.betti(),
            poincare_pairing(&ring)?.nondegenerate
        );
    }
    Ok(())
}
