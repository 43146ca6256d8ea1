//! Multiplicative error of a bounded system and the moment-killing extension.

use multsys::harness::{generate, GeneratorConfig, GeneratorKind};
use multsys::rational::{format, rat, to_f64};
use multsys::systems::{extend_to_multiplicative, moment_table, mult_error, SubsetFamily};

fn main() -> multsys::Result<()> {
    let mut cfg = GeneratorConfig::new(GeneratorKind::PerturbedMultiplicative, 3, 0);
    cfg.eps = rat(1, 8);
    let bumped = generate(&cfg)?;
    for d in 1..=3 {
        println!("perturbed Rademacher, mu_{d} = {}", format(&mult_error(&bumped, d)?));
    }

    let sys = generate(&GeneratorConfig::new(GeneratorKind::RandomStep, 4, 11))?;
    let family = SubsetFamily::up_to(4, 2);
    println!("\nrandom system, mu_2 = {:.6}", to_f64(&mult_error(&sys, 2)?));

    let ext = extend_to_multiplicative(&sys, &family)?;
    println!("extended domain: [0, {})", ext.domain_end());
    for (mask, m) in &moment_table(&ext, &family)?.entries {
        println!("  subset {:?}: moment {}", multsys::mask::indices(*mask), m);
    }
    println!("extended mu_2 = {}", mult_error(&ext, 2)?);
    Ok(())
}
