//! Draws the left cells of `P_5` on the Poincaré disk.
//!
//! ```bash
//! cargo run --release --example tessellation -- 8 cells.svg
//! ```

use std::env;
use std::fs;

use klcells::tessellation::{render_svg, structure_hash, tessellate, Coloring};
use klcells::CoxeterSystem;

fn main() -> klcells::Result<()> {
    let mut args = env::args().skip(1);
    let depth: usize = args.next().map_or(Ok(6), |s| s.parse()).expect("depth");
    let path = args.next().unwrap_or_else(|| "cells.svg".into());

    let sys = CoxeterSystem::polygon(5)?;
    let t = tessellate(&sys, depth)?;
    let svg = render_svg(&t, Coloring::TwoSided);
    fs::write(&path, &svg)?;
    println!("{} chambers -> {path}", t.chambers.len());
    println!("sha256 {}", structure_hash(&svg));
    if t.truncated {
        println!("warning: some chambers are below drawing resolution");
    }
    Ok(())
}
