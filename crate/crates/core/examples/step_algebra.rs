//! Exact step functions on `[0, L)`: construction, arithmetic, norms and JSON.

use multsys::chaos::rademacher;
use multsys::rational::{int, one, rat};
use multsys::stepfn::refine_common;
use multsys::StepFn;

fn main() -> multsys::Result<()> {
    let r1 = rademacher(1)?;
    let r2 = rademacher(2)?;
    let f = StepFn::new(one(), vec![int(0), rat(1, 3), int(1)], vec![int(2), rat(-1, 2)])?;

    let w12 = r1.multiply(&r2)?;
    println!("r1*r2 pieces: {}", w12.piece_count());
    for (a, b, v) in w12.pieces() {
        println!("  [{a}, {b}) -> {v}");
    }

    let g = f.add(&r1)?.scale(&rat(3, 2));
    println!("integral of 3/2 (f + r1) = {}", g.integral());
    println!("||f||_1 = {:.6}  ||f||_4 = {:.6}  ||f||_inf = {}", f.p_norm(1.0)?, f.p_norm(4.0)?, f.sup_abs());
    println!("E|f|^3 = {}", f.abs_moment(3));

    let cp = refine_common(&[&f, &r2])?;
    println!("common partition has {} cells", cp.cell_count());

    // the domain can be any positive rational length
    let long = f.concat(&StepFn::constant(rat(1, 2), int(-1))?);
    println!("concatenated domain [0, {}), mean {}", long.domain_end(), long.mean());

    println!("{}", serde_json::to_string(&r1)?);
    Ok(())
}
