//! Kazhdan-Lusztig polynomials of `P_5`, checked against the bar-invariance
//! of `C_w`, and cached to disk.
//!
//! ```bash
//! cargo run --release --example kl_polynomials
//! ```

use klcells::klpoly::{bar_invariance_check, c_basis, KlTable};
use klcells::CoxeterSystem;

fn main() -> klcells::Result<()> {
    let sys = CoxeterSystem::polygon(5)?;
    let mut table = KlTable::new(&sys);

    let w = sys.element_from_labels(&[4, 1, 2, 4])?;
    println!("column of {w}:");
    for (y, p) in table.column(&w) {
        if !p.is_zero() && p != klcells::klpoly::PolyQ::one() {
            println!("  P_({y}, {w}) = {p}");
        }
    }
    println!("mu(e, {w}) = {}", table.mu(&sys.identity(), &w));
    println!("C_{w} = {}", c_basis(&mut table, &w));
    println!("bar-invariant: {}", bar_invariance_check(&mut table, &w)?);

    let ball = sys.ball(7)?;
    table.fill(ball.iter());
    let mut nontrivial = 0;
    let mut max_mu = 0;
    for w in ball.iter() {
        for (y, p) in table.column(w) {
            nontrivial += usize::from(p.degree().unwrap_or(0) > 0);
            max_mu = max_mu.max(table.mu(&y, w));
        }
    }
    println!("\nradius 7: {} columns, {nontrivial} polynomials of positive degree, largest mu {max_mu}", ball.len());

    let path = std::env::temp_dir().join("kl-polygon-5.json");
    table.save(&path)?;
    let reloaded = KlTable::load(&sys, &path)?;
    println!("saved {} columns to {}", reloaded.columns_computed(), path.display());
    Ok(())
}
