//! Cosine sums against their Walsh counterparts.

use multsys::chaos::power;
use multsys::trig::{cos_product_decomposition, corollary_x19_check, corollary_x20_check, inequality_x21_check, TrigPoly, TrigTerm, YoungFn};

fn main() -> multsys::Result<()> {
    let n = 13u64;
    let terms = cos_product_decomposition(n, 0.3)?;
    println!("cos 2pi*{n}(x + 0.3): power {}, {} product terms", power(n), terms.len());
    let x = 0.123;
    let rebuilt: f64 = terms.iter().map(|t| t.eval(x)).sum();
    println!("  direct {:.15}  rebuilt {:.15}", (2.0 * std::f64::consts::PI * 13.0 * (x + 0.3)).cos(), rebuilt);

    let poly = TrigPoly::new(vec![
        TrigTerm { freq: 3, phase: 0.25, coeff: 1.5 },
        TrigTerm { freq: 5, phase: 0.0, coeff: -1.0 },
        TrigTerm { freq: 8, phase: 0.6, coeff: 0.5 },
    ])?;
    for phi in ["pow:2", "pow:4", "exp", "tlog"] {
        let phi: YoungFn = phi.parse()?;
        let r = corollary_x19_check(&poly, &phi, 2, 1e-9)?;
        let m = corollary_x20_check(&poly, &phi, 2, 1e-9)?;
        println!("{phi:>6}: {:.6} <= 2 * {:.6}   maximal {:.6} <= 2 * {:.6}", r.lhs, r.rhs, m.lhs, m.rhs);
    }

    let pure = TrigPoly::new(vec![TrigTerm { freq: 3, phase: 0.0, coeff: 1.0 }, TrigTerm { freq: 6, phase: 0.5, coeff: 2.0 }])?;
    let r = inequality_x21_check(&pure, 4.0, 2, 1e-9)?;
    println!("||P||_4 = {:.6} <= {:.6}", r.lhs, r.bound);
    Ok(())
}
