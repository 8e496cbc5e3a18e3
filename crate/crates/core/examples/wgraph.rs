//! W-graphs of the left cells of `P_5`: binary trees for type (i), graphs
//! with cycles for type (ii), and the module relations they satisfy.
//!
//! ```bash
//! cargo run --release --example wgraph -- 5 typeII.dot
//! ```

use klcells::cells::CellLabel;
use klcells::klpoly::KlTable;
use klcells::wgraph::{build_wgraph, check_relations, compare, cycle_census, export_dot, is_tree};
use klcells::{CoxeterSystem, Generator};

fn main() -> klcells::Result<()> {
    let mut args = std::env::args().skip(1);
    let depth: usize = args.next().map_or(5, |s| s.parse().expect("depth"));
    let dot = args.next();
    let sys = CoxeterSystem::polygon(5)?;
    let mut table = KlTable::new(&sys);

    let cells = [
        CellLabel::TypeI(Generator(0)),
        CellLabel::TypeII(sys.element_from_labels(&[1, 2])?),
        CellLabel::TypeII(sys.element_from_labels(&[4, 1, 2, 4])?),
    ];
    for label in &cells {
        let g = build_wgraph(&mut table, label, depth)?;
        let r = check_relations(&g);
        println!(
            "{label}: {} vertices {:?}, {} edges, tree {}, cycles {}, relations {} on {} interior vertices",
            g.vertices().len(),
            g.length_profile(),
            g.edges().len(),
            is_tree(&g),
            cycle_census(&g),
            if r.passed() { "hold" } else { "FAIL" },
            r.interior_vertices
        );
    }

    let a = build_wgraph(&mut table, &cells[1], depth)?;
    let b = build_wgraph(&mut table, &CellLabel::TypeII(sys.element_from_labels(&[2, 3])?), depth)?;
    println!("\ntypeII s1s2 vs s2s3: {:?}", compare(&a, &b));

    if let Some(path) = dot {
        std::fs::write(&path, export_dot(&a)?)?;
        println!("wrote {path}");
    }
    Ok(())
}
