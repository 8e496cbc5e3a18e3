use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{c_in_ttilde, ttilde_lmul_gen, ttilde_mul, ttilde_to_c, LaurentPoly, Terms};
use crate::cells::{classify_left, CellLabel};
use crate::coxeter::{CoxeterSystem, Element, Generator};
use crate::error::{Error, Result};
use crate::klpoly::KlTable;
use crate::wordgeom::is_segment_in_word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstKind {
    /// `T~_x T~_y = sum f_{x,y,z} T~_z`
    F,
    /// `T~_x C_y = sum g_{x,y,z} C_z`
    G,
    /// `C_x C_y = sum h_{x,y,z} C_z`
    H,
}

/// One row `z -> c_{x,y,z}` of structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureRow {
    pub x: Element,
    pub y: Element,
    pub kind: ConstKind,
    pub row: BTreeMap<Element, LaurentPoly>,
}

impl StructureRow {
    pub fn get(&self, z: &Element) -> LaurentPoly {
        self.row.get(z).cloned().unwrap_or_default()
    }

    /// Lowest `v`-exponent over the whole row.
    pub fn min_exponent(&self) -> Option<i32> {
        self.row.values().filter_map(|c| c.min_exponent()).min()
    }
}

impl fmt::Display for StructureRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (z, c) in &self.row {
            let name = if z.is_identity() { "e".to_string() } else { z.to_string() };
            writeln!(f, "{name}: {c}")?;
        }
        Ok(())
    }
}

fn single(x: &Element) -> Terms {
    let mut t = Terms::new();
    t.insert(x.clone(), LaurentPoly::one());
    t
}

pub fn f_row(sys: &CoxeterSystem, x: &Element, y: &Element) -> StructureRow {
    StructureRow {
        x: x.clone(),
        y: y.clone(),
        kind: ConstKind::F,
        row: ttilde_mul(sys, &single(x), &single(y)),
    }
}

pub fn g_row(table: &mut KlTable, x: &Element, y: &Element) -> StructureRow {
    let sys = table.system().clone();
    let cy = c_in_ttilde(table, y);
    let prod = ttilde_mul(&sys, &single(x), &cy);
    StructureRow {
        x: x.clone(),
        y: y.clone(),
        kind: ConstKind::G,
        row: ttilde_to_c(table, prod),
    }
}

pub fn h_row(table: &mut KlTable, x: &Element, y: &Element) -> StructureRow {
    let sys = table.system().clone();
    let cx = c_in_ttilde(table, x);
    let cy = c_in_ttilde(table, y);
    let prod = ttilde_mul(&sys, &cx, &cy);
    StructureRow {
        x: x.clone(),
        y: y.clone(),
        kind: ConstKind::H,
        row: ttilde_to_c(table, prod),
    }
}

/// Size of the largest clique of the commutation graph, i.e. the largest
/// `l(w_0)` of a finite parabolic subgroup.
pub fn bound_n(sys: &CoxeterSystem) -> usize {
    fn grow(sys: &CoxeterSystem, clique: &mut Vec<Generator>, next: usize, best: &mut usize) {
        *best = (*best).max(clique.len());
        for i in next..sys.rank() {
            let g = Generator(i as u8);
            if clique.iter().all(|&c| sys.commutes(c, g)) {
                clique.push(g);
                grow(sys, clique, i + 1, best);
                clique.pop();
            }
        }
    }
    let mut best = 0;
    grow(sys, &mut Vec::new(), 0, &mut best);
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundednessWitness {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundednessReport {
    pub n: usize,
    pub radius: usize,
    pub pairs_checked: usize,
    /// Most negative `v`-exponent seen in any `f_{x,y,z}`.
    pub min_exponent: i32,
    pub passed: bool,
    /// ShortLex-first `(x, y, z)` with `v^N f_{x,y,z}` outside `Z[v]`.
    pub witness: Option<BoundednessWitness>,
}

/// Checks that `v^n f_{x,y,z}` lies in `Z[v]` for all `x, y` in the ball.
pub fn boundedness_check(sys: &CoxeterSystem, radius: usize, n: usize) -> Result<BoundednessReport> {
    let ball = sys.ball(radius)?;
    let elems = ball.elements();
    // For each y: products T~_x T~_y for every x in the ball, x = s * (sx).
    let per_y: Vec<(i32, Option<(usize, usize, Element, LaurentPoly)>)> = elems
        .par_iter()
        .enumerate()
        .map(|(yi, y)| {
            let mut prods: Vec<Terms> = Vec::with_capacity(elems.len());
            let mut min_exp = 0;
            let mut witness = None;
            for (xi, x) in elems.iter().enumerate() {
                let p = if x.is_identity() {
                    single(y)
                } else {
                    let s = x.letters()[0];
                    let rest = ball.position(&sys.lmul_gen(s, x)).expect("ball is suffix closed");
                    ttilde_lmul_gen(sys, s, &prods[rest])
                };
                for (z, c) in &p {
                    let e = c.min_exponent().unwrap_or(0);
                    min_exp = min_exp.min(e);
                    if witness.is_none() && e + (n as i32) < 0 {
                        witness = Some((xi, yi, z.clone(), c.clone()));
                    }
                }
                prods.push(p);
            }
            (min_exp, witness)
        })
        .collect();
    let min_exponent = per_y.iter().map(|p| p.0).min().unwrap_or(0);
    let witness = per_y
        .into_iter()
        .filter_map(|p| p.1)
        .min_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)))
        .map(|(xi, yi, z, c)| BoundednessWitness {
            x: elems[xi].word().labels(),
            y: elems[yi].word().labels(),
            z: z.word().labels(),
            coeff: c.to_string(),
        });
    Ok(BoundednessReport {
        n,
        radius,
        pairs_checked: elems.len() * elems.len(),
        min_exponent,
        passed: witness.is_none(),
        witness,
    })
}

/// `max over pairs of -(lowest v-exponent of h_{x,y,z})`, floored at 0.
pub fn a_lower_bound(table: &mut KlTable, z: &Element, pairs: &[(Element, Element)]) -> usize {
    pairs
        .iter()
        .filter_map(|(x, y)| h_row(table, x, y).get(z).min_exponent())
        .map(|e| (-e).max(0) as usize)
        .max()
        .unwrap_or(0)
}

/// Where an a-value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AValueSource {
    /// Lower bound from a finite sample of `h`-rows.
    SampledLowerBound,
    /// Value fixed by the cell type of `P_n`: 0, 1 or 2.
    ProvedCellValue,
    /// A sampled lower bound that reached the global bound `N`.
    GlobalCap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AValue {
    pub value: usize,
    pub source: AValueSource,
}

/// `a(z)`: exact from the cell type on `P_n`, otherwise a sampled lower bound
/// over pairs from the ball of radius `l(z)`.
pub fn a_value(table: &mut KlTable, z: &Element) -> Result<AValue> {
    let sys = table.system().clone();
    if sys.hyperbolic_polygon().is_some() {
        let value = match classify_left(&sys, z)? {
            CellLabel::Unit => 0,
            CellLabel::TypeI(_) => 1,
            CellLabel::TypeII(_) => 2,
        };
        return Ok(AValue {
            value,
            source: AValueSource::ProvedCellValue,
        });
    }
    let ball = sys.ball(z.length())?;
    let pairs: Vec<(Element, Element)> = ball
        .iter()
        .flat_map(|x| ball.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let value = a_lower_bound(table, z, &pairs);
    let source = if value >= bound_n(&sys) {
        AValueSource::GlobalCap
    } else {
        AValueSource::SampledLowerBound
    };
    Ok(AValue { value, source })
}

/// `deg P_{e,z}`.
pub fn delta(table: &mut KlTable, z: &Element) -> usize {
    table.kl_poly(&Element::identity(), z).degree().unwrap_or(0)
}

/// Every word whose consecutive letters do not commute, of length exactly `k`.
pub(crate) fn lines_of_length(sys: &CoxeterSystem, k: usize) -> Vec<Vec<Generator>> {
    let mut layer: Vec<Vec<Generator>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for w in &layer {
            for g in sys.generators() {
                if w.last().is_none_or(|&h| h != g && !sys.commutes(h, g)) {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    layer
}

/// `{e} ∪ S ∪ { u s t u^{-1} : st = ts, u a segment of u s t u^{-1} }`,
/// restricted to length at most `radius`, sorted ShortLex. Each member is
/// verified to be an involution with `a(z) = l(z) - 2 delta(z)`.
pub fn distinguished_involutions(table: &mut KlTable, radius: usize) -> Result<Vec<Element>> {
    let sys = table.system().clone();
    sys.require_hyperbolic_polygon()?;
    let mut set: BTreeSet<Element> = BTreeSet::new();
    set.insert(Element::identity());
    if radius >= 1 {
        set.extend(sys.generators().map(|g| sys.gen_element(g)));
    }
    let pairs = sys.commuting_pairs();
    let mut k = 0;
    while 2 * k + 2 <= radius {
        for u in lines_of_length(&sys, k) {
            for &(s, t) in &pairs {
                let mut w = u.clone();
                w.extend([s, t]);
                w.extend(u.iter().rev());
                let z = sys.reduce(&w);
                if z.length() == w.len() && (k == 0 || is_segment_in_word(&sys, &w, 0, k)) {
                    set.insert(z);
                }
            }
        }
        k += 1;
    }
    for z in &set {
        if sys.multiply(z, z) != Element::identity() {
            return Err(Error::Verification(format!("{z} is not an involution")));
        }
        let a = a_value(table, z)?.value;
        let d = delta(table, z);
        if a + 2 * d != z.length() {
            return Err(Error::Verification(format!(
                "a({z}) = {a} but l - 2 delta = {} - 2*{d}",
                z.length()
            )));
        }
    }
    Ok(set.into_iter().collect())
}
