//! Walsh functions, Rademacher chaos and the moment comparison for chaos sums.

use multsys::chaos::{bonami_kiener_check, corollary2_check, max_partial_sum, power, walsh, ChaosSum};
use multsys::extremal::{theorem1_pipeline, Norm, Outer};
use multsys::harness::{generate, GeneratorConfig, GeneratorKind};

fn main() -> multsys::Result<()> {
    for n in [1u64, 3, 6, 7] {
        let w = walsh(n)?;
        println!("w_{n}: power {}, {} pieces, integral {}", power(n), w.piece_count(), w.integral());
    }

    let s = ChaosSum::rademacher(4, vec![(0b0011, 1.0), (0b0101, -0.5), (0b1100, 0.75)], 2)?;
    for p in [3.0, 4.0, 6.0] {
        let rep = bonami_kiener_check(&s, p, 1e-9)?;
        println!("p = {p}: ||S||_p = {:.6} <= {:.6}", rep.norm_p, rep.bound);
    }

    let order: Vec<_> = s.terms().iter().map(|t| t.0).collect();
    let m = max_partial_sum(&s, &order, Norm::P(2.0))?;
    println!("max partial sum: sup {}, mean {}", m.sup_abs(), m.mean());

    // a two-valued independent base built from a random system
    let sys = generate(&GeneratorConfig::new(GeneratorKind::RandomStep, 4, 3))?;
    let base = theorem1_pipeline(&sys, 4)?;
    let terms = vec![(0b0011, vec![1.0]), (0b0110, vec![2.0])];
    let rep = corollary2_check(&base, terms, &Outer::Pow { q: 4.0 }, Norm::P(2.0), 2, &[0b0110, 0b0011], 1e-12)?;
    println!("general base vs Rademacher: {:.6} <= {:.6}", rep.plain.lhs, rep.plain.rhs);
    println!("maximal version:            {:.6} <= {:.6}  (pass {})", rep.maximal.lhs, rep.maximal.rhs, rep.pass);
    Ok(())
}
