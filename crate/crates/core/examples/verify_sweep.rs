//! Run every verification suite at a small size, then show a planted fault being caught.

use smallcover::cli::verify::{run_suite, Suite, VerifyConfig};

fn main() -> smallcover::Result<()> {
    let cfg = VerifyConfig {
        max_m: 2,
        max_n: 3,
        random_cases: 10,
        ..VerifyConfig::default()
    };
    for s in Suite::ALL {
        println!("{}", run_suite(s, &cfg)?.render());
    }
    let faulty = VerifyConfig {
        inject_fault: true,
        ..cfg
    };
    println!("{}", run_suite(Suite::Lemma, &faulty)?.render());
    Ok(())
}
