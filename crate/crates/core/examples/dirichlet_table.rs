//! Norms of trigonometric and Walsh Dirichlet kernels of order 2^n.

use multsys::trig::{dirichlet_csv, dirichlet_table, YoungFn};

fn main() -> multsys::Result<()> {
    let rows = dirichlet_table(0..=10, None, 1e-10)?;
    print!("{}", dirichlet_csv(&rows));

    let phi = YoungFn::Pow { p: 4.0 };
    println!("\nwith {phi}:");
    print!("{}", dirichlet_csv(&dirichlet_table(0..=6, Some(&phi), 1e-8)?));
    Ok(())
}
