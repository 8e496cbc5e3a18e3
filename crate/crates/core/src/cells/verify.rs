use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rayon::prelude::*;
use serde::Serialize;

use super::{classify_left_traced, label_from_tail, CellLabel, TwoSided};
use crate::coxeter::{DescentSet, Element};
use crate::error::Result;
use crate::klpoly::KlTable;
use crate::wordgeom::{is_line, leading_segment};

/// Counterexamples listed per failed sub-check.
const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl SubCheck {
    fn new(name: &'static str, checked: usize, failures: Vec<String>) -> Self {
        SubCheck {
            name,
            passed: failures.is_empty(),
            checked,
            counterexamples: failures.into_iter().take(MAX_COUNTEREXAMPLES).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub radius: usize,
    pub elements: usize,
    pub checks: Vec<SubCheck>,
    pub type_i_labels: usize,
    pub type_ii_labels: usize,
    pub two_sided_classes: usize,
    /// Number of strongly connected components of the `<=_L` step graph.
    pub components: usize,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn show(x: &Element) -> String {
    if x.is_identity() {
        "e".into()
    } else {
        x.to_string()
    }
}

/// Checks the predicted left-cell partition against KL data on a ball.
///
/// The preorder `<=_L` is global, so on a ball only refinement can be checked:
/// every strongly connected component of the step graph restricted to the
/// ball must lie in one predicted cell.
///
/// * (a) classification is total, and the rewriting and tail labels agree;
/// * (b) `R(x)` is constant on each predicted cell;
/// * (c) SCCs of the step graph lie inside predicted cells;
/// * (d) each element is joined to its precell representative by a chain of
///   `mu`-links whose descent sets are mutually incomparable;
/// * (e) `n` `TypeI` labels (once `radius >= 1`) and `min(radius + 1, 3)`
///   two-sided classes occur.
pub fn verify_partition(table: &mut KlTable, radius: usize) -> Result<PartitionReport> {
    let sys = table.system().clone();
    let n = sys.require_hyperbolic_polygon()?;
    let ball = sys.ball(radius)?;
    let elems = ball.elements();
    table.fill(elems.iter());

    // (a)
    let classified: Vec<Result<(CellLabel, Vec<String>)>> = elems
        .par_iter()
        .map(|x| {
            let (label, trace) = classify_left_traced(&sys, x)?;
            let mut bad = Vec::new();
            let tail = label_from_tail(&sys, x)?;
            if tail != label {
                bad.push(format!("{}: rewriting gives {label}, tail gives {tail}", show(x)));
            }
            if let Some(t) = trace {
                if !t.final_form {
                    bad.push(format!("{}: rewriting stuck at {}", show(x), show(&t.end)));
                }
            }
            Ok((label, bad))
        })
        .collect();
    let mut labels = Vec::with_capacity(elems.len());
    let mut fail_a = Vec::new();
    for r in classified {
        let (label, bad) = r?;
        labels.push(label);
        fail_a.extend(bad);
    }

    // (b)
    let mut right: BTreeMap<&CellLabel, (DescentSet, &Element)> = BTreeMap::new();
    let mut fail_b = Vec::new();
    for (x, label) in elems.iter().zip(&labels) {
        let r = sys.right_descents(x);
        match right.get(label) {
            Some((r0, x0)) if *r0 != r => fail_b.push(format!(
                "{label}: R({}) != R({})",
                show(x0),
                show(x)
            )),
            Some(_) => {}
            None => {
                right.insert(label, (r, x));
            }
        }
    }

    // (c)
    let mut graph: DiGraph<usize, ()> = DiGraph::with_capacity(elems.len(), 0);
    let nodes: Vec<_> = (0..elems.len()).map(|i| graph.add_node(i)).collect();
    let left: Vec<DescentSet> = elems.iter().map(|x| sys.left_descents(x)).collect();
    let mut edges = 0;
    for (wi, w) in elems.iter().enumerate() {
        for (y, _) in table.mu_below(w) {
            let yi = ball.position(&y).expect("Bruhat ideal lies in the ball");
            if !left[yi].is_subset(&left[wi]) {
                graph.add_edge(nodes[yi], nodes[wi], ());
                edges += 1;
            }
            if !left[wi].is_subset(&left[yi]) {
                graph.add_edge(nodes[wi], nodes[yi], ());
                edges += 1;
            }
        }
    }
    let sccs = tarjan_scc(&graph);
    let mut fail_c = Vec::new();
    for comp in &sccs {
        let first = &labels[graph[comp[0]]];
        if let Some(other) = comp.iter().find(|&&v| labels[graph[v]] != *first) {
            fail_c.push(format!(
                "component joins {} ({first}) and {} ({})",
                show(&elems[graph[comp[0]]]),
                show(&elems[graph[*other]]),
                labels[graph[*other]]
            ));
        }
    }

    // (d)
    let mut fail_d = Vec::new();
    let mut links = 0;
    for x in elems.iter().filter(|x| !x.is_identity()) {
        let k = if is_line(&sys, x) {
            x.length() - 1
        } else {
            leading_segment(&sys, x).unwrap_or(0)
        };
        let chain: Vec<Element> = (0..=k).map(|i| sys.reduce(&x.letters()[i..])).collect();
        for pair in chain.windows(2) {
            links += 1;
            let (a, b) = (&pair[0], &pair[1]);
            let (la, lb) = (sys.left_descents(a), sys.left_descents(b));
            if table.mu(a, b) == 0 || la.is_subset(&lb) || lb.is_subset(&la) {
                fail_d.push(format!("{}: link {} - {} fails", show(x), show(a), show(b)));
            }
        }
    }

    // (e)
    let distinct: BTreeSet<&CellLabel> = labels.iter().collect();
    let type_i = distinct.iter().filter(|l| matches!(l, CellLabel::TypeI(_))).count();
    let type_ii = distinct.iter().filter(|l| matches!(l, CellLabel::TypeII(_))).count();
    let two_sided: BTreeSet<TwoSided> = labels.iter().map(|l| l.two_sided()).collect();
    let want_i = if radius >= 1 { n } else { 0 };
    let want_two = (radius + 1).min(3);
    let mut fail_e = Vec::new();
    if type_i != want_i {
        fail_e.push(format!("{type_i} TypeI labels, expected {want_i}"));
    }
    if two_sided.len() != want_two {
        fail_e.push(format!("{} two-sided classes, expected {want_two}", two_sided.len()));
    }

    Ok(PartitionReport {
        radius,
        elements: elems.len(),
        checks: vec![
            SubCheck::new("classification", elems.len(), fail_a),
            SubCheck::new("right descents constant", elems.len(), fail_b),
            SubCheck::new("components refine cells", edges, fail_c),
            SubCheck::new("precell chains", links, fail_d),
            SubCheck::new("label counts", 2, fail_e),
        ],
        type_i_labels: type_i,
        type_ii_labels: type_ii,
        two_sided_classes: two_sided.len(),
        components: sccs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;

    #[test]
    fn small_radii() {
        let p5 = CoxeterSystem::polygon(5).unwrap();
        let r0 = verify_partition(&mut KlTable::new(&p5), 0).unwrap();
        assert!(r0.passed(), "{r0:?}");
        assert_eq!((r0.type_i_labels, r0.two_sided_classes), (0, 1));

        let r5 = verify_partition(&mut KlTable::new(&p5), 5).unwrap();
        assert!(r5.passed(), "{r5:?}");
        assert_eq!((r5.type_i_labels, r5.two_sided_classes), (5, 3));

        let p6 = CoxeterSystem::polygon(6).unwrap();
        let r = verify_partition(&mut KlTable::new(&p6), 5).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.type_i_labels, 6);
        assert!(verify_partition(&mut KlTable::new(&CoxeterSystem::infinite_dihedral()), 2).is_err());
    }
}
