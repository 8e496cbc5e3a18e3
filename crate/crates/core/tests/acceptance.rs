//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::time::Instant;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use klcells::cells::{classify_left, move_b_instances, mu_witness_move_b, verify_partition, CellLabel};
use klcells::hecke::{a_value, bound_n, boundedness_check, distinguished_involutions, BarCache};
use klcells::klpoly::{
    bar_invariance_check_with, bruhat_le, column_degree_bound, dihedral_mu_oracle, KlTable, PolyQ,
};
use klcells::tessellation::{base_polygon, render_svg, structure_hash, tessellate, Coloring};
use klcells::wgraph::{build_wgraph, check_relations, cycle_census, is_tree, WGraph};
use klcells::{CoxeterSystem, Generator};

type Outcome = Result<String, String>;

fn p5() -> CoxeterSystem {
    CoxeterSystem::polygon(5).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every `C_w` with `l(w) <= 8` in `P_5` is bar-invariant and every `P_{y,w}`
/// obeys the degree bound with constant term 1.
fn kl_oracle() -> Outcome {
    let sys = p5();
    let mut table = KlTable::new(&sys);
    let mut cache = BarCache::new(&sys);
    let ball = sys.ball(8).map_err(|e| e.to_string())?;
    let mut polys = 0;
    for w in ball.iter() {
        let ok = bar_invariance_check_with(&mut table, &mut cache, w).map_err(|e| e.to_string())?;
        ensure(ok, || format!("C_{w} is not bar-invariant"))?;
        let col = table.column(w);
        polys += col.len();
        ensure(column_degree_bound(w, &col), || format!("degree bound fails in column {w}"))?;
    }
    Ok(format!("{} columns, {polys} polynomials", ball.len()))
}

/// `deg P_{e,z} = l(u)` with leading coefficient 1 for `z = u s t u^{-1}`,
/// `l(u) <= 3`, and then `a(z) = l(z) - 2 delta(z) = 2`.
fn distinguished_degree() -> Outcome {
    let sys = p5();
    let mut table = KlTable::new(&sys);
    let zs = distinguished_involutions(&mut table, 8).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for z in zs.iter().filter(|z| z.length() >= 2) {
        let k = (z.length() - 2) / 2;
        let p = table.kl_poly(&sys.identity(), z);
        ensure(p.degree() == Some(k) && p.leading_coeff() == 1, || {
            format!("P_(e,{z}) = {p}, expected degree {k} with leading coefficient 1")
        })?;
        let a = a_value(&mut table, z).map_err(|e| e.to_string())?.value;
        ensure(a == 2 && a == z.length() - 2 * k, || format!("a({z}) = {a}"))?;
        checked += 1;
    }
    ensure(checked > 0, || "no instances".into())?;
    Ok(format!("{checked} involutions"))
}

/// `mu(w0, w*) = 1` for every move-B pattern with `l(u) <= 3`, `l(x) <= 2`.
fn move_b_mu() -> Outcome {
    let sys = p5();
    let mut table = KlTable::new(&sys);
    let insts = move_b_instances(&sys, 3, 2);
    for inst in &insts {
        let mu = mu_witness_move_b(&mut table, inst).map_err(|e| e.to_string())?;
        ensure(mu == 1, || format!("mu = {mu} for {inst:?}"))?;
    }
    let longest = insts.iter().map(|i| i.u.len()).max().unwrap_or(0);
    ensure(longest == 3, || format!("longest u has length {longest}"))?;
    Ok(format!("{} instances", insts.len()))
}

fn boundedness() -> Outcome {
    let sys = p5();
    let n = bound_n(&sys);
    ensure(n == 2, || format!("bound_N(P_5) = {n}"))?;
    let pass = boundedness_check(&sys, 5, n).map_err(|e| e.to_string())?;
    ensure(pass.passed, || format!("N = 2 fails: {:?}", pass.witness))?;
    let fail = boundedness_check(&sys, 5, 1).map_err(|e| e.to_string())?;
    ensure(!fail.passed && fail.witness.is_some(), || "N = 1 passes".into())?;
    let dinf = CoxeterSystem::infinite_dihedral();
    ensure(bound_n(&dinf) == 1, || "bound_N(D_inf) != 1".into())?;
    let d = boundedness_check(&dinf, 8, 1).map_err(|e| e.to_string())?;
    ensure(d.passed, || format!("D_inf fails: {:?}", d.witness))?;
    let w = fail.witness.unwrap();
    Ok(format!(
        "P_5 r=5: N=2 pass, N=1 witness x={:?} y={:?} z={:?}; D_inf r=8 N=1 pass",
        w.x, w.y, w.z
    ))
}

fn partition() -> Outcome {
    let sys = p5();
    let mut table = KlTable::new(&sys);
    let report = verify_partition(&mut table, 8).map_err(|e| e.to_string())?;
    for c in &report.checks {
        ensure(c.passed, || format!("{} failed: {:?}", c.name, c.counterexamples))?;
    }
    ensure(report.type_i_labels == 5, || format!("{} TypeI labels", report.type_i_labels))?;
    ensure(report.two_sided_classes == 3, || format!("{} two-sided classes", report.two_sided_classes))?;
    Ok(format!(
        "{} elements, {} TypeII labels, {} components",
        report.elements, report.type_ii_labels, report.components
    ))
}

fn relations_hold(g: &WGraph) -> Result<usize, String> {
    let r = check_relations(g);
    ensure(r.interior_vertices > 0, || format!("{}: no interior vertices", g.label()))?;
    ensure(r.passed(), || format!("{}: relations fail at {:?}", g.label(), &r.violations[..r.violations.len().min(3)]))?;
    Ok(r.interior_vertices)
}

/// TypeI graphs are binary trees to depth 8. Every TypeII cell whose label
/// lies in the depth-6 truncation has a cycle there; cells that only start
/// near depth 6 are followed two layers past their shortest member.
fn wgraph_shape() -> Outcome {
    let sys = p5();
    let mut table = KlTable::new(&sys);
    let mut interior = 0;
    for i in 0..5 {
        let g = build_wgraph(&mut table, &CellLabel::TypeI(Generator(i)), 8).map_err(|e| e.to_string())?;
        let expected: Vec<usize> = (0..=8).map(|k| if k == 0 { 0 } else { 1 << (k - 1) }).collect();
        ensure(g.length_profile() == expected, || format!("{}: profile {:?}", g.label(), g.length_profile()))?;
        ensure(is_tree(&g) && cycle_census(&g) == 0, || format!("{} is not a tree", g.label()))?;
        interior += relations_hold(&g)?;
    }

    let mut shortest: BTreeMap<CellLabel, usize> = BTreeMap::new();
    for x in sys.ball(6).map_err(|e| e.to_string())?.iter() {
        let l = classify_left(&sys, x).map_err(|e| e.to_string())?;
        if matches!(l, CellLabel::TypeII(_)) {
            shortest.entry(l).or_insert(x.length());
        }
    }
    let (mut at_six, mut deeper, mut min_census) = (0, 0, usize::MAX);
    for (label, &m) in &shortest {
        let CellLabel::TypeII(d) = label else { unreachable!() };
        let depth = if d.length() <= 6 { 6 } else { m + 2 };
        let g = build_wgraph(&mut table, label, depth).map_err(|e| e.to_string())?;
        let c = cycle_census(&g);
        ensure(c >= 1, || format!("{label} at depth {depth} has no cycle"))?;
        interior += relations_hold(&g)?;
        if depth == 6 {
            at_six += 1;
            min_census = min_census.min(c);
        } else {
            deeper += 1;
        }
    }
    ensure(at_six == 20, || format!("{at_six} TypeII labels of length <= 6"))?;
    Ok(format!(
        "5 TypeI trees to depth 8; {at_six} TypeII graphs at depth 6, census >= {min_census}; \
         {deeper} longer-label cells cyclic two layers past their shortest member; \
         relations on {interior} interior vertices"
    ))
}

const GOLDEN_DEPTH_2: &str = "7b270342bf481de010835a693318a46d571876bd5f3f8b53fe91bca36a40fdc1";

fn tessellation_sanity() -> Outcome {
    let sys = p5();
    let base = base_polygon(&sys).map_err(|e| e.to_string())?;
    let worst = base.angles().iter().map(|a| (a - PI / 2.0).abs()).fold(0.0, f64::max);
    ensure(worst < 1e-9, || format!("angle error {worst:e}"))?;
    for d in 0..=6 {
        let t = tessellate(&sys, d).map_err(|e| e.to_string())?;
        let b = sys.ball(d).map_err(|e| e.to_string())?.len();
        ensure(t.chambers.len() == b, || format!("depth {d}: {} chambers, ball {b}", t.chambers.len()))?;
    }
    let hash = |d| -> Result<String, String> {
        Ok(structure_hash(&render_svg(&tessellate(&sys, d).map_err(|e| e.to_string())?, Coloring::TwoSided)))
    };
    let (a, b) = (hash(6)?, hash(6)?);
    ensure(a == b, || "depth-6 hash differs between runs".into())?;
    let golden = hash(2)?;
    ensure(golden == GOLDEN_DEPTH_2, || format!("depth-2 hash {golden}"))?;
    Ok(format!("max angle error {worst:.1e}; counts match to depth 6; hash {}", &a[..16]))
}

fn infinite_dihedral() -> Outcome {
    let sys = CoxeterSystem::infinite_dihedral();
    let mut table = KlTable::new(&sys);
    let ball = sys.ball(8).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for w in ball.iter() {
        for y in ball.iter() {
            let le = bruhat_le(&sys, y, w);
            let p = table.kl_poly(y, w);
            ensure(p == if le { PolyQ::one() } else { PolyQ::zero() }, || format!("P_({y},{w}) = {p}"))?;
            let mu = table.mu(y, w);
            ensure((mu != 0) == (dihedral_mu_oracle(&sys, y, w) != 0), || format!("mu({y},{w}) = {mu}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("1 KL oracle equivalence", kl_oracle),
        ("2 distinguished-involution degree identity", distinguished_degree),
        ("3 move-B mu claim", move_b_mu),
        ("4 boundedness", boundedness),
        ("5 cell partition", partition),
        ("6 W-graph shape", wgraph_shape),
        ("7 infinite dihedral regression", infinite_dihedral),
        ("8 tessellation sanity", tessellation_sanity),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
