//! Exact tails of sums of bounded variables against the exponential bound.

use multsys::harness::{azuma_check, azuma_lambdas, generate, GeneratorConfig, GeneratorKind};
use multsys::rational::to_f64;

fn main() -> multsys::Result<()> {
    for kind in [GeneratorKind::Rademacher, GeneratorKind::HaarMartingale, GeneratorKind::RandomStep] {
        let sys = generate(&GeneratorConfig::new(kind, 5, 2))?;
        println!("{kind:?}");
        for lambda in azuma_lambdas(5) {
            let rep = azuma_check(&sys, &lambda, 0.0)?;
            println!("  lambda {:<8.5} tail {:<10.6} bound {:.6}", to_f64(&lambda), rep.lhs, rep.rhs);
        }
    }
    Ok(())
}
