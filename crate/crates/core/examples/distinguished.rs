//! Distinguished involutions `u^-1 s t u` of `P_5` and the move-B witnesses
//! `mu(w0, w*) = 1`.
//!
//! ```bash
//! cargo run --release --example distinguished
//! ```

use klcells::cells::{classify_left, move_b_instances, mu_witness_move_b};
use klcells::hecke::{a_value, delta, distinguished_involutions};
use klcells::klpoly::KlTable;
use klcells::CoxeterSystem;

fn main() -> klcells::Result<()> {
    let sys = CoxeterSystem::polygon(5)?;
    let mut table = KlTable::new(&sys);

    let ds = distinguished_involutions(&mut table, 6)?;
    println!("{} distinguished involutions of length <= 6", ds.len());
    for z in ds.iter().filter(|z| z.length() <= 4) {
        let p = table.kl_poly(&sys.identity(), z);
        println!(
            "  {:<10} P_(e,z) = {:<6} delta {}  a {}  {}",
            z.to_string(),
            p.to_string(),
            delta(&mut table, z),
            a_value(&mut table, z)?.value,
            classify_left(&sys, z)?
        );
    }

    let insts = move_b_instances(&sys, 2, 1);
    let mut ones = 0;
    for inst in &insts {
        ones += usize::from(mu_witness_move_b(&mut table, inst)? == 1);
    }
    println!("\nmove B: mu(w0, w*) = 1 on {ones} of {} patterns with l(u) <= 2, l(x) <= 1", insts.len());
    if let Some(inst) = insts.iter().find(|i| i.u.len() == 2) {
        let star = sys.reduce(&inst.w_star_word());
        println!("  e.g. w0 = {}, w* = {star}", inst.w0(&sys));
    }
    Ok(())
}
