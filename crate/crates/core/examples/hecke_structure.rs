//! Structure constants of the Hecke algebra of `P_5`: products in the
//! `T~` and `C` bases, Lusztig's boundedness and a-values.
//!
//! ```bash
//! cargo run --release --example hecke_structure
//! ```

use klcells::hecke::{a_value, bound_n, boundedness_check, convert, f_row, h_row, Basis, HeckeElement};
use klcells::klpoly::KlTable;
use klcells::CoxeterSystem;

fn main() -> klcells::Result<()> {
    let sys = CoxeterSystem::polygon(5)?;
    let mut table = KlTable::new(&sys);
    let s1 = sys.element_from_labels(&[1])?;
    let s1s2 = sys.element_from_labels(&[1, 2])?;

    println!("T~_s1 T~_s1:\n{}", f_row(&sys, &s1, &s1));
    println!("C_s1s2 C_s1s2:\n{}", h_row(&mut table, &s1s2, &s1s2));

    let c = HeckeElement::basis_element(Basis::C, &sys.element_from_labels(&[4, 1, 2, 4])?);
    println!("C_s4s1s2s4 in the T~ basis:\n  {}\n", convert(&mut table, &c, Basis::TTilde));

    let n = bound_n(&sys);
    for k in [n, n - 1] {
        let r = boundedness_check(&sys, 4, k)?;
        println!(
            "v^{k} f_(x,y,z) in Z[v] on the radius-4 ball: {} (lowest exponent {})",
            r.passed, r.min_exponent
        );
    }

    for labels in [vec![], vec![3], vec![3, 5, 2], vec![1, 2], vec![4, 1, 2, 4]] {
        let z = sys.element_from_labels(&labels)?;
        let a = a_value(&mut table, &z)?;
        println!("a({z}) = {} ({:?})", a.value, a.source);
    }
    Ok(())
}
