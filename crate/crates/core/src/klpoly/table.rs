use std::sync::Arc;

use super::PolyQ;
use crate::coxeter::arena::{Arena, Id};
use crate::coxeter::{CoxeterSystem, Element, Generator};

/// Which left descent of `w` drives the recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pivot {
    /// ShortLex-least left descent (the default).
    #[default]
    Least,
    Greatest,
}

/// `P_{y,w}` for every `y <= w`, sorted by `y` id.
#[derive(Debug, Clone)]
pub(crate) struct Column {
    pub ys: Vec<Id>,
    pub polys: Vec<PolyQ>,
}

impl Column {
    pub fn get(&self, y: Id) -> Option<&PolyQ> {
        self.ys.binary_search(&y).ok().map(|i| &self.polys[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Id, &PolyQ)> {
        self.ys.iter().copied().zip(self.polys.iter())
    }
}

/// Memoized Kazhdan–Lusztig polynomials, stored column by column.
///
/// Computing `P_{-,w}` fills the column of `w` together with the columns it
/// depends on: those of `sw` and of every `z` with `mu(z, sw) != 0`.
#[derive(Debug, Clone)]
pub struct KlTable {
    pub(crate) arena: Arena,
    pivot: Pivot,
    columns: Vec<Option<Arc<Column>>>,
    bar_cap: usize,
}

pub const DEFAULT_BAR_CAP: usize = 12;

impl KlTable {
    pub fn new(sys: &CoxeterSystem) -> Self {
        Self::with_pivot(sys, Pivot::Least)
    }

    pub fn with_pivot(sys: &CoxeterSystem, pivot: Pivot) -> Self {
        KlTable {
            arena: Arena::new(sys.clone()),
            pivot,
            columns: Vec::new(),
            bar_cap: DEFAULT_BAR_CAP,
        }
    }

    pub fn system(&self) -> &CoxeterSystem {
        self.arena.system()
    }

    pub fn pivot(&self) -> Pivot {
        self.pivot
    }

    /// Largest `l(w)` accepted by the bar-invariance oracle.
    pub fn bar_cap(&self) -> usize {
        self.bar_cap
    }

    pub fn set_bar_cap(&mut self, cap: usize) {
        self.bar_cap = cap;
    }

    /// Number of columns computed so far.
    pub fn columns_computed(&self) -> usize {
        self.columns.iter().filter(|c| c.is_some()).count()
    }

    fn pivot_of(&mut self, w: Id) -> Generator {
        let sys = self.arena.system().clone();
        let desc = sys.left_descents(self.arena.get(w));
        match self.pivot {
            Pivot::Least => *desc.iter().next().expect("non-identity has a left descent"),
            Pivot::Greatest => *desc.iter().next_back().expect("non-identity has a left descent"),
        }
    }

    pub(crate) fn cached(&self, w: Id) -> Option<&Arc<Column>> {
        self.columns.get(w as usize).and_then(|c| c.as_ref())
    }

    pub(crate) fn column_id(&mut self, w: Id) -> Arc<Column> {
        if let Some(c) = self.cached(w) {
            return c.clone();
        }
        let col = if self.arena.length(w) == 0 {
            Column {
                ys: vec![w],
                polys: vec![PolyQ::one()],
            }
        } else {
            self.compute(w)
        };
        let col = Arc::new(col);
        if self.columns.len() <= w as usize {
            self.columns.resize(w as usize + 1, None);
        }
        self.columns[w as usize] = Some(col.clone());
        col
    }

    /// `P_{y,w} = q^{1-c} P_{sy,v} + q^c P_{y,v} - sum_z mu(z,v) q^{(l(v)-l(z)+1)/2} P_{y,z}`
    /// with `v = sw`, `c = [sy < y]`, and `z` running over `sz < z`, `z < v`.
    fn compute(&mut self, w: Id) -> Column {
        let s = self.pivot_of(w);
        let v = self.arena.lmul(s, w);
        let cv = self.column_id(v);
        let lv = self.arena.length(v);

        let mut mus: Vec<(Id, i64, usize)> = Vec::new();
        for (z, p) in cv.iter() {
            let lz = self.arena.length(z);
            if lz < lv && (lv - lz) % 2 == 1 {
                let m = p.coeff((lv - lz - 1) / 2);
                if m != 0 && self.arena.is_left_descent(s, z) {
                    mus.push((z, m, (lv - lz).div_ceil(2)));
                }
            }
        }
        let mu_cols: Vec<Arc<Column>> = mus.iter().map(|&(z, _, _)| self.column_id(z)).collect();

        let mut ys: Vec<Id> = cv.ys.clone();
        for &x in &cv.ys {
            let sx = self.arena.lmul(s, x);
            ys.push(sx);
        }
        ys.sort_unstable();
        ys.dedup();

        let mut polys = Vec::with_capacity(ys.len());
        for &y in &ys {
            let sy = self.arena.lmul(s, y);
            let c = self.arena.length(sy) < self.arena.length(y);
            let mut p = PolyQ::zero();
            if let Some(a) = cv.get(sy) {
                p.add_scaled(a, 1, usize::from(!c));
            }
            if let Some(b) = cv.get(y) {
                p.add_scaled(b, 1, usize::from(c));
            }
            for (&(_, m, shift), col) in mus.iter().zip(&mu_cols) {
                if let Some(pyz) = col.get(y) {
                    p.add_scaled(pyz, -m, shift);
                }
            }
            polys.push(p);
        }
        Column { ys, polys }
    }

    /// `P_{y,w}`; zero unless `y <= w`.
    pub fn kl_poly(&mut self, y: &Element, w: &Element) -> PolyQ {
        if y.length() > w.length() {
            return PolyQ::zero();
        }
        let wid = self.arena.intern(w);
        let col = self.column_id(wid);
        match self.arena.lookup(y) {
            Some(yid) => col.get(yid).cloned().unwrap_or_default(),
            None => PolyQ::zero(),
        }
    }

    /// `P_{y,w}` if the column of `w` is already computed.
    pub fn get(&self, y: &Element, w: &Element) -> Option<PolyQ> {
        let col = self.cached(self.arena.lookup(w)?)?;
        Some(
            self.arena
                .lookup(y)
                .and_then(|yid| col.get(yid).cloned())
                .unwrap_or_default(),
        )
    }

    /// `(y, P_{y,w})` for all `y <= w`, sorted ShortLex.
    pub fn column(&mut self, w: &Element) -> Vec<(Element, PolyQ)> {
        let wid = self.arena.intern(w);
        let col = self.column_id(wid);
        let mut out: Vec<(Element, PolyQ)> = col
            .iter()
            .map(|(y, p)| (self.arena.get(y).clone(), p.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Computes the columns of all given elements.
    pub fn fill<'a>(&mut self, ws: impl IntoIterator<Item = &'a Element>) {
        for w in ws {
            let wid = self.arena.intern(w);
            self.column_id(wid);
        }
    }

    /// Symmetrized `mu(y, w)`: the coefficient of `q^{(l(w)-l(y)-1)/2}` in
    /// `P_{y,w}` when `y < w` with odd length gap, and zero otherwise.
    pub fn mu(&mut self, y: &Element, w: &Element) -> i64 {
        let (lo, hi) = if y.length() <= w.length() { (y, w) } else { (w, y) };
        let gap = hi.length() - lo.length();
        if gap % 2 == 0 {
            return 0;
        }
        self.kl_poly(lo, hi).coeff((gap - 1) / 2)
    }

    /// All `z < w` with `mu(z, w) != 0`, sorted ShortLex.
    pub fn mu_below(&mut self, w: &Element) -> Vec<(Element, i64)> {
        let wid = self.arena.intern(w);
        let mut out: Vec<(Element, i64)> = self
            .mu_below_id(wid)
            .into_iter()
            .map(|(z, m)| (self.arena.get(z).clone(), m))
            .collect();
        out.sort();
        out
    }

    pub(crate) fn mu_below_id(&mut self, w: Id) -> Vec<(Id, i64)> {
        let col = self.column_id(w);
        let lw = self.arena.length(w);
        col.iter()
            .filter_map(|(z, p)| {
                let lz = self.arena.length(z);
                if lz < lw && (lw - lz) % 2 == 1 {
                    let m = p.coeff((lw - lz - 1) / 2);
                    (m != 0).then_some((z, m))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Inserts a column verbatim; used when loading a dump.
    pub(crate) fn insert_column(&mut self, w: &Element, entries: Vec<(Element, PolyQ)>) {
        let wid = self.arena.intern(w);
        let mut pairs: Vec<(Id, PolyQ)> = entries.into_iter().map(|(y, p)| (self.arena.intern(&y), p)).collect();
        pairs.sort_by_key(|p| p.0);
        let (ys, polys) = pairs.into_iter().unzip();
        if self.columns.len() <= wid as usize {
            self.columns.resize(wid as usize + 1, None);
        }
        self.columns[wid as usize] = Some(Arc::new(Column { ys, polys }));
    }

    /// Computed columns as `(w, column)`, sorted ShortLex.
    pub fn computed_columns(&self) -> Vec<(Element, Vec<(Element, PolyQ)>)> {
        let mut out: Vec<(Element, Vec<(Element, PolyQ)>)> = self
            .columns
            .iter()
            .enumerate()
            .filter_map(|(w, c)| {
                let c = c.as_ref()?;
                let mut entries: Vec<(Element, PolyQ)> =
                    c.iter().map(|(y, p)| (self.arena.get(y).clone(), p.clone())).collect();
                entries.sort_by(|a, b| a.0.cmp(&b.0));
                Some((self.arena.get(w as Id).clone(), entries))
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}
