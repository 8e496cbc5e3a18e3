//! Left cells of `P_5`: classification by moves A and B, and a full check of
//! the partition on a ball.
//!
//! ```bash
//! cargo run --release --example cell_partition -- 7
//! ```

use std::collections::BTreeMap;

use klcells::cells::{classify_left_traced, classify_two_sided, verify_partition};
use klcells::klpoly::KlTable;
use klcells::CoxeterSystem;

fn main() -> klcells::Result<()> {
    let radius: usize = std::env::args().nth(1).map_or(6, |s| s.parse().expect("radius"));
    let sys = CoxeterSystem::polygon(5)?;

    for labels in [vec![3, 5, 2], vec![1, 2, 3], vec![1, 2, 4, 1, 2], vec![4, 2, 4, 1, 2, 3, 1]] {
        let x = sys.element_from_labels(&labels)?;
        let (label, trace) = classify_left_traced(&sys, &x)?;
        println!("{x}: {label} ({:?})", classify_two_sided(&sys, &x)?);
        for step in trace.iter().flat_map(|t| &t.steps) {
            println!("    move {:?}: {} -> {}", step.tag, step.before, step.after);
        }
    }

    let mut table = KlTable::new(&sys);
    let report = verify_partition(&mut table, radius)?;
    println!("\nradius {radius}, {} elements", report.elements);
    for c in &report.checks {
        println!("  {:5} {} ({} checked)", if c.passed { "ok" } else { "FAIL" }, c.name, c.checked);
    }
    println!(
        "  {} typeI labels, {} typeII labels, {} two-sided classes",
        report.type_i_labels, report.type_ii_labels, report.two_sided_classes
    );

    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for x in sys.ball(radius)?.iter() {
        *sizes.entry(classify_left_traced(&sys, x)?.0.two_sided() as usize).or_default() += 1;
    }
    println!("  elements per two-sided cell: {:?}", sizes.values().collect::<Vec<_>>());
    Ok(())
}
