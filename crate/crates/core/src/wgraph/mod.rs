//! W-graphs of left cells, truncated by length.
//!
//! Vertices are the cell members of length at most `depth`, labelled by their
//! left descent sets; edges carry `mu`. The module structure is
//!
//! ```text
//! tau_s x = -x                                        if s in I_x
//! tau_s x = q x + v * sum_{y : s in I_y} mu(x, y) y   otherwise
//! ```
//!
//! Columns of vertices with a `mu`-partner just outside the truncation are
//! incomplete, so relations are only checked on interior vertices.

mod export;

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

pub use export::{export, export_dot, export_json, Format};

use crate::cells::{classify_left, CellLabel};
use crate::coxeter::{CoxeterSystem, DescentSet, Element, Generator};
use crate::error::{Error, Result};
use crate::hecke::LaurentPoly;
use crate::klpoly::KlTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub element: Element,
    /// `I_x = L(x)`.
    pub descents: DescentSet,
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WGraph {
    sys: CoxeterSystem,
    label: CellLabel,
    depth: usize,
    vertices: Vec<Vertex>,
    /// `(a, b)` with `a < b`; only pairs with `I_a != I_b` are stored.
    edges: BTreeMap<(usize, usize), i64>,
}

/// Members of a left cell with length at most `depth`, sorted ShortLex.
pub fn cell_members(sys: &CoxeterSystem, label: &CellLabel, depth: usize) -> Result<Vec<Element>> {
    sys.require_hyperbolic_polygon()?;
    match label {
        CellLabel::Unit => Ok(vec![Element::identity()]),
        CellLabel::TypeI(g) => {
            if g.index() >= sys.rank() {
                return Err(Error::InvalidInput(format!("no generator {g}")));
            }
            // Lines ending in g, grown by prepending.
            let mut out = Vec::new();
            let mut layer: Vec<Vec<Generator>> = if depth >= 1 { vec![vec![*g]] } else { Vec::new() };
            while let Some(first) = layer.first() {
                if first.len() > depth {
                    break;
                }
                out.extend(layer.iter().map(|w| sys.reduce(w)));
                let mut next = Vec::new();
                for w in &layer {
                    for h in sys.generators() {
                        if h != w[0] && !sys.commutes(h, w[0]) {
                            let mut v = vec![h];
                            v.extend(w);
                            next.push(v);
                        }
                    }
                }
                layer = next;
            }
            out.sort();
            Ok(out)
        }
        CellLabel::TypeII(d) => {
            if classify_left(sys, d)? != *label {
                return Err(Error::InvalidInput(format!("{d} does not label a left cell")));
            }
            let mut out = Vec::new();
            for x in sys.ball(depth)?.iter() {
                if classify_left(sys, x)? == *label {
                    out.push(x.clone());
                }
            }
            Ok(out)
        }
    }
}

pub fn build_wgraph(table: &mut KlTable, label: &CellLabel, depth: usize) -> Result<WGraph> {
    let sys = table.system().clone();
    let members = cell_members(&sys, label, depth + 1)?;
    let (inside, probe): (Vec<Element>, Vec<Element>) = members.into_iter().partition(|x| x.length() <= depth);
    let index: BTreeMap<&Element, usize> = inside.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let descents: Vec<DescentSet> = inside.iter().map(|x| sys.left_descents(x)).collect();

    let mut edges = BTreeMap::new();
    for (b, w) in inside.iter().enumerate() {
        for (y, m) in table.mu_below(w) {
            if let Some(&a) = index.get(&y) {
                if descents[a] != descents[b] {
                    edges.insert((a.min(b), a.max(b)), m);
                }
            }
        }
    }
    let mut interior = vec![true; inside.len()];
    for z in &probe {
        let iz = sys.left_descents(z);
        for (y, _) in table.mu_below(z) {
            if let Some(&a) = index.get(&y) {
                if descents[a] != iz {
                    interior[a] = false;
                }
            }
        }
    }
    let vertices = inside
        .into_iter()
        .zip(descents)
        .zip(interior)
        .enumerate()
        .map(|(id, ((element, descents), interior))| Vertex {
            id,
            element,
            descents,
            interior,
        })
        .collect();
    Ok(WGraph {
        sys,
        label: label.clone(),
        depth,
        vertices,
        edges,
    })
}

impl WGraph {
    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn label(&self) -> &CellLabel {
        &self.label
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<(usize, usize), i64> {
        &self.edges
    }

    pub fn mu(&self, a: usize, b: usize) -> i64 {
        self.edges.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    }

    /// Number of vertices of each length `0..=depth`.
    pub fn length_profile(&self) -> Vec<usize> {
        let mut out = vec![0; self.depth + 1];
        for v in &self.vertices {
            out[v.element.length()] += 1;
        }
        out
    }

    /// The same graph with the edge `{a, b}` removed; a negative control.
    pub fn without_edge(&self, a: usize, b: usize) -> WGraph {
        let mut g = self.clone();
        g.edges.remove(&(a.min(b), a.max(b)));
        g
    }

    fn neighbours(&self) -> Vec<Vec<(usize, i64)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (&(a, b), &m) in &self.edges {
            adj[a].push((b, m));
            adj[b].push((a, m));
        }
        adj
    }

    /// `tau_s` applied to a sparse vector over the vertices.
    fn apply(&self, adj: &[Vec<(usize, i64)>], s: Generator, x: &BTreeMap<usize, LaurentPoly>) -> BTreeMap<usize, LaurentPoly> {
        let mut out: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
        let mut add = |i: usize, c: &LaurentPoly, factor: i64, shift: i32| {
            out.entry(i).or_default().add_scaled(c, factor, shift);
        };
        for (&i, c) in x {
            if self.vertices[i].descents.contains(&s) {
                add(i, c, -1, 0);
            } else {
                add(i, c, 1, 2);
                for &(j, m) in &adj[i] {
                    if self.vertices[j].descents.contains(&s) {
                        add(j, c, m, 1);
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// `tau_s` as a dense matrix; column `x` is `tau_s x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauMatrix {
    pub generator: Generator,
    pub dim: usize,
    entries: Vec<LaurentPoly>,
}

impl TauMatrix {
    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.dim + col]
    }

    pub fn mul(&self, other: &TauMatrix) -> Vec<LaurentPoly> {
        let n = self.dim;
        let mut out = vec![LaurentPoly::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out[i * n + j].add_product(a, b);
                    }
                }
            }
        }
        out
    }
}

pub fn tau_action(graph: &WGraph, s: Generator) -> TauMatrix {
    let n = graph.vertices.len();
    let adj = graph.neighbours();
    let mut entries = vec![LaurentPoly::zero(); n * n];
    for x in 0..n {
        let mut e = BTreeMap::new();
        e.insert(x, LaurentPoly::one());
        for (row, c) in graph.apply(&adj, s, &e) {
            entries[row * n + x] = c;
        }
    }
    TauMatrix {
        generator: s,
        dim: n,
        entries,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub relation: &'static str,
    pub vertex: usize,
    pub generators: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub interior_vertices: usize,
    pub relations_checked: usize,
    pub violations: Vec<Violation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `(tau_s - q)(tau_s + 1) = 0` and `tau_s tau_t = tau_t tau_s` for
/// commuting `s, t` on every interior column.
pub fn check_relations(graph: &WGraph) -> RelationReport {
    let adj = graph.neighbours();
    let gens: Vec<Generator> = graph.sys.generators().collect();
    let q = LaurentPoly::q();
    let mut checked = 0;
    let mut violations = Vec::new();
    let interior: Vec<usize> = graph.vertices.iter().filter(|v| v.interior).map(|v| v.id).collect();
    for &x in &interior {
        let mut e = BTreeMap::new();
        e.insert(x, LaurentPoly::one());
        let images: Vec<BTreeMap<usize, LaurentPoly>> = gens.iter().map(|&s| graph.apply(&adj, s, &e)).collect();
        for (i, &s) in gens.iter().enumerate() {
            // tau_s^2 - (q - 1) tau_s - q
            let mut lhs = graph.apply(&adj, s, &images[i]);
            for (j, c) in &images[i] {
                let d = &(c * &q) - c;
                lhs.entry(*j).or_default().add_scaled(&d, -1, 0);
            }
            lhs.entry(x).or_default().add_scaled(&q, -1, 0);
            checked += 1;
            if lhs.values().any(|c| !c.is_zero()) {
                violations.push(Violation {
                    relation: "quadratic",
                    vertex: x,
                    generators: (s.index() + 1, s.index() + 1),
                });
            }
            for (j, &t) in gens.iter().enumerate().skip(i + 1) {
                if !graph.sys.commutes(s, t) {
                    continue;
                }
                let st = graph.apply(&adj, s, &images[j]);
                let ts = graph.apply(&adj, t, &images[i]);
                checked += 1;
                if st != ts {
                    violations.push(Violation {
                        relation: "commutation",
                        vertex: x,
                        generators: (s.index() + 1, t.index() + 1),
                    });
                }
            }
        }
    }
    RelationReport {
        interior_vertices: interior.len(),
        relations_checked: checked,
        violations,
    }
}

fn components(graph: &WGraph) -> usize {
    let n = graph.vertices.len();
    let mut uf = UnionFind::<usize>::new(n);
    for &(a, b) in graph.edges.keys() {
        uf.union(a, b);
    }
    let mut roots: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Number of independent cycles: `|E| - |V| + components`.
pub fn cycle_census(graph: &WGraph) -> usize {
    graph.edges.len() + components(graph) - graph.vertices.len()
}

pub fn is_tree(graph: &WGraph) -> bool {
    !graph.vertices.is_empty() && components(graph) == 1 && cycle_census(graph) == 0
}

/// Applies the generator permutation `i -> i + shift mod n` to every vertex.
pub fn relabel_cyclic(graph: &WGraph, shift: usize) -> WGraph {
    let n = graph.sys.rank();
    let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
    let mapped: Vec<Element> = graph.vertices.iter().map(|v| graph.sys.relabel(&v.element, &perm)).collect();
    let mut order: Vec<usize> = (0..mapped.len()).collect();
    order.sort_by(|&a, &b| mapped[a].cmp(&mapped[b]));
    let mut new_id = vec![0; mapped.len()];
    for (new, &old) in order.iter().enumerate() {
        new_id[old] = new;
    }
    let vertices = order
        .iter()
        .enumerate()
        .map(|(id, &old)| Vertex {
            id,
            element: mapped[old].clone(),
            descents: graph.sys.left_descents(&mapped[old]),
            interior: graph.vertices[old].interior,
        })
        .collect();
    let edges = graph
        .edges
        .iter()
        .map(|(&(a, b), &m)| {
            let (x, y) = (new_id[a], new_id[b]);
            ((x.min(y), x.max(y)), m)
        })
        .collect();
    let label = match &graph.label {
        CellLabel::Unit => CellLabel::Unit,
        CellLabel::TypeI(g) => CellLabel::TypeI(Generator(perm[g.index()] as u8)),
        CellLabel::TypeII(d) => CellLabel::TypeII(graph.sys.relabel(d, &perm)),
    };
    WGraph {
        sys: graph.sys.clone(),
        label,
        depth: graph.depth,
        vertices,
        edges,
    }
}

/// Side-by-side invariants of two graphs. Equality of the invariants is
/// evidence for, not proof of, equivalent representations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub profile_a: Vec<usize>,
    pub profile_b: Vec<usize>,
    pub edges_a: usize,
    pub edges_b: usize,
    pub cycles_a: usize,
    pub cycles_b: usize,
    /// A cyclic shift of the generators carrying `a` onto `b` exactly, if any.
    pub cyclic_shift: Option<usize>,
}

pub fn compare(a: &WGraph, b: &WGraph) -> Comparison {
    let n = a.sys.rank();
    let cyclic_shift = (a.sys == b.sys && a.sys.hyperbolic_polygon().is_some())
        .then(|| {
            (0..n).find(|&k| {
                let r = relabel_cyclic(a, k);
                r.vertices.iter().map(|v| &v.element).eq(b.vertices.iter().map(|v| &v.element))
                    && r.edges == b.edges
            })
        })
        .flatten();
    Comparison {
        profile_a: a.length_profile(),
        profile_b: b.length_profile(),
        edges_a: a.edges.len(),
        edges_b: b.edges.len(),
        cycles_a: cycle_census(a),
        cycles_b: cycle_census(b),
        cyclic_shift,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> CoxeterSystem {
        CoxeterSystem::polygon(5).unwrap()
    }

    fn type_i(g: usize) -> CellLabel {
        CellLabel::TypeI(Generator((g - 1) as u8))
    }

    #[test]
    fn type_i_shape() {
        let sys = p5();
        let mut table = KlTable::new(&sys);
        let g = build_wgraph(&mut table, &type_i(1), 3).unwrap();
        assert_eq!(g.vertices().len(), 7);
        assert_eq!(g.length_profile(), vec![0, 1, 2, 4]);
        assert!(is_tree(&g));
        assert_eq!(cycle_census(&g), 0);
        assert_eq!(g.edges().len(), 6);

        let one = build_wgraph(&mut table, &type_i(1), 1).unwrap();
        assert_eq!(one.vertices().len(), 1);
        assert!(one.edges().is_empty());
        assert!(is_tree(&one));
    }

    #[test]
    fn type_ii_has_cycles_and_relations_hold() {
        let sys = p5();
        let mut table = KlTable::new(&sys);
        let label = CellLabel::TypeII(sys.element_from_labels(&[1, 2]).unwrap());
        let g = build_wgraph(&mut table, &label, 4).unwrap();
        assert!(cycle_census(&g) >= 1);
        let g6 = build_wgraph(&mut table, &label, 6).unwrap();
        let report = check_relations(&g6);
        assert!(report.interior_vertices > 0);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn type_i_relations_survive_cut_edges() {
        let sys = p5();
        let mut table = KlTable::new(&sys);
        let g = build_wgraph(&mut table, &type_i(1), 5).unwrap();
        let report = check_relations(&g);
        assert!(report.interior_vertices > 0);
        assert!(report.passed(), "{report:?}");
        // cutting a tree edge leaves two W-graphs, so the relations survive
        let (&(a, b), _) = g.edges().iter().next().unwrap();
        assert!(check_relations(&g.without_edge(a, b)).passed());
    }

    #[test]
    fn zeroed_edge_breaks_type_ii() {
        let sys = p5();
        let mut table = KlTable::new(&sys);
        let label = CellLabel::TypeII(sys.element_from_labels(&[1, 2]).unwrap());
        let g = build_wgraph(&mut table, &label, 6).unwrap();
        let (&(a, b), _) = g.edges().iter().next().unwrap();
        let report = check_relations(&g.without_edge(a, b));
        assert!(!report.passed());
        assert!(report.violations.iter().all(|v| v.relation == "commutation"));
    }

    #[test]
    fn tau_matrix_entries() {
        let sys = p5();
        let mut table = KlTable::new(&sys);
        let g = build_wgraph(&mut table, &type_i(1), 3).unwrap();
        let s1 = Generator(0);
        let tau = tau_action(&g, s1);
        assert_eq!(tau.dim, 7);
        for v in g.vertices() {
            if v.descents.contains(&s1) {
                assert_eq!(*tau.get(v.id, v.id), LaurentPoly::monomial(-1, 0));
            } else {
                assert_eq!(*tau.get(v.id, v.id), LaurentPoly::q());
            }
        }
        // root s1 is joined to s3 s1 and s4 s1, whose descent sets miss s1
        let root = 0;
        assert_eq!(g.vertices()[root].element.word().labels(), vec![1]);
        let s3 = Generator(2);
        let tau3 = tau_action(&g, s3);
        let above = g.vertices().iter().find(|v| v.element.word().labels() == vec![3, 1]).unwrap();
        assert_eq!(*tau3.get(above.id, root), LaurentPoly::v());
        // tau_s^2 = (q - 1) tau_s + q
        let sq = tau.mul(&tau);
        for i in 0..7 {
            for j in 0..7 {
                let mut expected = &tau.get(i, j).shift(2) - tau.get(i, j);
                if i == j {
                    expected += &LaurentPoly::q();
                }
                if g.vertices()[j].interior {
                    assert_eq!(sq[i * 7 + j], expected);
                }
            }
        }
    }

    #[test]
    fn isolated_vertex_diagonal() {
        let sys = p5();
        let mut table = KlTable::new(&sys);
        let g = build_wgraph(&mut table, &CellLabel::Unit, 0).unwrap();
        let tau = tau_action(&g, Generator(0));
        assert_eq!(*tau.get(0, 0), LaurentPoly::q());
    }

    #[test]
    fn cyclic_relabel_maps_type_i_cells() {
        let sys = p5();
        let mut table = KlTable::new(&sys);
        for i in 1..=5 {
            let a = build_wgraph(&mut table, &type_i(i), 5).unwrap();
            let b = build_wgraph(&mut table, &type_i(i % 5 + 1), 5).unwrap();
            let r = relabel_cyclic(&a, 1);
            assert_eq!(r.vertices().iter().map(|v| &v.element).collect::<Vec<_>>(),
                       b.vertices().iter().map(|v| &v.element).collect::<Vec<_>>());
            assert_eq!(r.edges(), b.edges());
            assert_eq!(compare(&a, &b).cyclic_shift, Some(1));
        }
    }
}
