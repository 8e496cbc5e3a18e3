//! ShortLex normal forms, reduced words and the segment/block structure of
//! elements of `P_5`.
//!
//! ```bash
//! cargo run --example normal_forms
//! ```

use klcells::wordgeom::{decompose, is_line, precell_rep};
use klcells::CoxeterSystem;

fn main() -> klcells::Result<()> {
    let sys = CoxeterSystem::polygon(5)?;

    // s2 commutes with s1 and s3, so these reduce to the same element
    for labels in [vec![2, 1, 4, 1], vec![1, 2, 4, 1], vec![3, 3, 2, 1, 4, 1]] {
        let x = sys.element_from_labels(&labels)?;
        println!("{labels:?} -> {x}");
    }

    let x = sys.element_from_labels(&[4, 1, 2, 4])?;
    let descents: Vec<String> = sys.left_descents(&x).iter().map(|g| g.to_string()).collect();
    println!("\n{x}: length {}, left descents {}", x.length(), descents.join(" "));
    for w in sys.reduced_words(&x)? {
        println!("  reduced word {w}");
    }
    println!("  parts {}", decompose(&sys, &x).to_json());
    let pre = precell_rep(&sys, &x);
    println!("  precell of {} (dimension {})", pre.rep, pre.dimension);

    let line = sys.element_from_labels(&[3, 5, 2, 4])?;
    println!("\n{line} is a line: {}", is_line(&sys, &line));

    let ball = sys.ball(6)?;
    let mut sizes = vec![0; 7];
    for x in ball.iter() {
        sizes[x.length()] += 1;
    }
    println!("\nsphere sizes up to 6: {sizes:?} ({} elements)", ball.len());
    Ok(())
}
