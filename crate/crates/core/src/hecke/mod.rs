//! The Hecke algebra over `Z[v, v^{-1}]`, `v = q^{1/2}`, with its standard
//! basis `T`, the normalized basis `T~_w = v^{-l(w)} T_w`, and the
//! Kazhdan–Lusztig basis `C`.

pub(crate) mod laurent;
mod structure;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

pub use laurent::LaurentPoly;
pub use structure::{
    a_lower_bound, a_value, bound_n, boundedness_check, delta, distinguished_involutions, f_row, g_row,
    h_row, AValue, AValueSource, BoundednessReport, BoundednessWitness, ConstKind, StructureRow,
};
pub(crate) use structure::lines_of_length;

use crate::coxeter::{CoxeterSystem, Element, Generator};
use crate::error::{Error, Result};
use crate::klpoly::KlTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    T,
    TTilde,
    C,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::T => "T",
            Basis::TTilde => "Ttilde",
            Basis::C => "C",
        }
    }
}

pub(crate) type Terms = BTreeMap<Element, LaurentPoly>;

/// A finite linear combination of basis elements; zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement {
    basis: Basis,
    terms: Terms,
}

impl HeckeElement {
    pub fn zero(basis: Basis) -> Self {
        HeckeElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The basis vector indexed by `x`.
    pub fn basis_element(basis: Basis, x: &Element) -> Self {
        let mut h = Self::zero(basis);
        h.add_term(x, &LaurentPoly::one());
        h
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Element, LaurentPoly)>) -> Self {
        let mut h = Self::zero(basis);
        for (x, c) in terms {
            h.add_term(&x, &c);
        }
        h
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Terms sorted ShortLex.
    pub fn terms(&self) -> impl Iterator<Item = (&Element, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: &Element) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, x: &Element, c: &LaurentPoly) {
        add_into(&mut self.terms, x, c, 1, 0);
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        let terms = self
            .terms
            .iter()
            .map(|(x, a)| (x.clone(), a * c))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        HeckeElement { basis: self.basis, terms }
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        same_basis(self.basis, other.basis)?;
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HeckeElement) -> Result<HeckeElement> {
        same_basis(self.basis, other.basis)?;
        let mut out = self.clone();
        for (x, c) in &other.terms {
            add_into(&mut out.terms, x, c, -1, 0);
        }
        Ok(out)
    }

    fn require(&self, basis: Basis) -> Result<()> {
        same_basis(basis, self.basis)
    }
}

fn same_basis(expected: Basis, found: Basis) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::BasisMismatch {
            expected: expected.name(),
            found: found.name(),
        })
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(x, c)| format!("({c}){}_{{{x}}}", self.basis.name()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `terms += factor * v^shift * c * B_x`, dropping cancelled terms.
pub(crate) fn add_into(terms: &mut Terms, x: &Element, c: &LaurentPoly, factor: i64, shift: i32) {
    if c.is_zero() || factor == 0 {
        return;
    }
    match terms.get_mut(x) {
        Some(a) => {
            a.add_scaled(c, factor, shift);
            if a.is_zero() {
                terms.remove(x);
            }
        }
        None => {
            let mut a = LaurentPoly::zero();
            a.add_scaled(c, factor, shift);
            terms.insert(x.clone(), a);
        }
    }
}

/// `T~_s * h` for `h` in the `T~` basis:
/// `T~_s T~_y = T~_{sy}` if `sy > y`, else `T~_{sy} + (v - v^{-1}) T~_y`.
pub(crate) fn ttilde_lmul_gen(sys: &CoxeterSystem, s: Generator, h: &Terms) -> Terms {
    let vmv = LaurentPoly::v_minus_inv();
    let mut out = Terms::new();
    for (y, c) in h {
        let sy = sys.lmul_gen(s, y);
        if sy.length() < y.length() {
            add_into(&mut out, y, &(c * &vmv), 1, 0);
        }
        add_into(&mut out, &sy, c, 1, 0);
    }
    out
}

/// Product of two `T~`-basis expansions.
pub(crate) fn ttilde_mul(sys: &CoxeterSystem, a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (x, c) in a {
        let mut r = b.clone();
        for &s in x.letters().iter().rev() {
            r = ttilde_lmul_gen(sys, s, &r);
        }
        for (z, d) in &r {
            add_into(&mut out, z, &(c * d), 1, 0);
        }
    }
    out
}

fn t_to_ttilde(terms: &Terms) -> Terms {
    terms.iter().map(|(x, c)| (x.clone(), c.shift(x.length() as i32))).collect()
}

fn ttilde_to_t(terms: &Terms) -> Terms {
    terms.iter().map(|(x, c)| (x.clone(), c.shift(-(x.length() as i32)))).collect()
}

/// Product in the `T` basis, by iterated generator action.
pub fn t_mul(sys: &CoxeterSystem, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
    a.require(Basis::T)?;
    b.require(Basis::T)?;
    let prod = ttilde_mul(sys, &t_to_ttilde(&a.terms), &t_to_ttilde(&b.terms));
    Ok(HeckeElement {
        basis: Basis::T,
        terms: ttilde_to_t(&prod),
    })
}

/// Memo of `bar(T~_y)` in the `T~` basis.
///
/// `bar(T~_y) = bar(T~_{s1}) ... bar(T~_{sk})` with `bar(T~_s) = T~_s - (v - v^{-1})`.
#[derive(Debug, Clone)]
pub struct BarCache {
    sys: CoxeterSystem,
    memo: HashMap<Element, Arc<Terms>>,
}

impl BarCache {
    pub fn new(sys: &CoxeterSystem) -> Self {
        BarCache {
            sys: sys.clone(),
            memo: HashMap::new(),
        }
    }

    pub(crate) fn bar_ttilde(&mut self, y: &Element) -> Arc<Terms> {
        if let Some(t) = self.memo.get(y) {
            return t.clone();
        }
        let out = if y.is_identity() {
            let mut t = Terms::new();
            t.insert(Element::identity(), LaurentPoly::one());
            t
        } else {
            let s = y.letters()[0];
            let rest = self.bar_ttilde(&self.sys.lmul_gen(s, y));
            let mut t = ttilde_lmul_gen(&self.sys, s, &rest);
            let vmv = LaurentPoly::v_minus_inv();
            for (x, c) in rest.iter() {
                add_into(&mut t, x, &(c * &vmv), -1, 0);
            }
            t
        };
        let out = Arc::new(out);
        self.memo.insert(y.clone(), out.clone());
        out
    }

    /// Bar involution of a `T~`-basis expansion.
    pub(crate) fn bar_terms(&mut self, h: &Terms) -> Terms {
        let mut out = Terms::new();
        for (y, c) in h {
            let cb = c.bar();
            let b = self.bar_ttilde(y);
            for (x, d) in b.iter() {
                add_into(&mut out, x, &(&cb * d), 1, 0);
            }
        }
        out
    }
}

/// The bar involution on a `T`- or `T~`-basis element.
pub fn bar(sys: &CoxeterSystem, a: &HeckeElement) -> Result<HeckeElement> {
    let mut cache = BarCache::new(sys);
    match a.basis {
        Basis::T => Ok(HeckeElement {
            basis: Basis::T,
            terms: ttilde_to_t(&cache.bar_terms(&t_to_ttilde(&a.terms))),
        }),
        Basis::TTilde => Ok(HeckeElement {
            basis: Basis::TTilde,
            terms: cache.bar_terms(&a.terms),
        }),
        Basis::C => Err(Error::BasisMismatch {
            expected: "T",
            found: "C",
        }),
    }
}

/// `C_w` in the `T~` basis: coefficient of `T~_y` is
/// `(-1)^{l(w)-l(y)} v^{l(w)-l(y)} P_{y,w}(v^{-2})`.
pub(crate) fn c_in_ttilde(table: &mut KlTable, w: &Element) -> Terms {
    let lw = w.length() as i32;
    table
        .column(w)
        .into_iter()
        .map(|(y, p)| {
            let d = lw - y.length() as i32;
            let sign = if d % 2 == 0 { 1 } else { -1 };
            let mut c = LaurentPoly::zero();
            for (i, &a) in p.coeffs().iter().enumerate() {
                c.add_monomial(sign * a, d - 2 * i as i32);
            }
            (y, c)
        })
        .collect()
}

/// Expresses `a` in the target basis.
pub fn convert(table: &mut KlTable, a: &HeckeElement, target: Basis) -> HeckeElement {
    let ttilde = match a.basis {
        Basis::TTilde => a.terms.clone(),
        Basis::T => t_to_ttilde(&a.terms),
        Basis::C => {
            let mut out = Terms::new();
            for (w, c) in &a.terms {
                for (y, d) in c_in_ttilde(table, w) {
                    add_into(&mut out, &y, &(c * &d), 1, 0);
                }
            }
            out
        }
    };
    let terms = match target {
        Basis::TTilde => ttilde,
        Basis::T => ttilde_to_t(&ttilde),
        Basis::C => ttilde_to_c(table, ttilde),
    };
    HeckeElement { basis: target, terms }
}

/// Triangular back-substitution: `C_w = T~_w + (lower terms)`.
pub(crate) fn ttilde_to_c(table: &mut KlTable, mut rest: Terms) -> Terms {
    let mut out = Terms::new();
    while let Some((top, c)) = rest.iter().next_back().map(|(x, c)| (x.clone(), c.clone())) {
        for (y, d) in c_in_ttilde(table, &top) {
            add_into(&mut rest, &y, &(&c * &d), -1, 0);
        }
        out.insert(top, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(sys: &CoxeterSystem, labels: &[usize]) -> Element {
        sys.element_from_labels(labels).unwrap()
    }

    fn t(sys: &CoxeterSystem, labels: &[usize]) -> HeckeElement {
        HeckeElement::basis_element(Basis::T, &el(sys, labels))
    }

    fn lp(terms: &[(i64, i32)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms)
    }

    #[test]
    fn quadratic_relation() {
        let sys = CoxeterSystem::polygon(5).unwrap();
        let ts = t(&sys, &[1]);
        let sq = t_mul(&sys, &ts, &ts).unwrap();
        let expected = HeckeElement::from_terms(
            Basis::T,
            [(Element::identity(), lp(&[(1, 2)])), (el(&sys, &[1]), lp(&[(1, 2), (-1, 0)]))],
        );
        assert_eq!(sq, expected);
        assert_eq!(t_mul(&sys, &t(&sys, &[1, 3]), &t(&sys, &[2])).unwrap(), t(&sys, &[1, 3, 2]));
        assert_eq!(t_mul(&sys, &t(&sys, &[]), &ts).unwrap(), ts);
        let c = HeckeElement::basis_element(Basis::C, &Element::identity());
        assert!(matches!(t_mul(&sys, &c, &ts), Err(Error::BasisMismatch { .. })));
    }

    #[test]
    fn bar_examples() {
        let sys = CoxeterSystem::polygon(5).unwrap();
        assert_eq!(bar(&sys, &t(&sys, &[])).unwrap(), t(&sys, &[]));
        let expected = HeckeElement::from_terms(
            Basis::T,
            [(el(&sys, &[1]), lp(&[(1, -2)])), (Element::identity(), lp(&[(1, -2), (-1, 0)]))],
        );
        assert_eq!(bar(&sys, &t(&sys, &[1])).unwrap(), expected);
        let x = t(&sys, &[1, 3]);
        assert_eq!(bar(&sys, &bar(&sys, &x).unwrap()).unwrap(), x);
        // T_s is invertible and bar(T_s) = T_s^{-1}.
        let prod = t_mul(&sys, &t(&sys, &[1]), &bar(&sys, &t(&sys, &[1])).unwrap()).unwrap();
        assert_eq!(prod, t(&sys, &[]));
    }

    #[test]
    fn c_basis_round_trip() {
        let sys = CoxeterSystem::polygon(5).unwrap();
        let mut table = KlTable::new(&sys);
        let w = el(&sys, &[4, 1, 2, 4]);
        let c = HeckeElement::basis_element(Basis::C, &w);
        let tt = convert(&mut table, &c, Basis::TTilde);
        assert_eq!(tt.coeff(&w), LaurentPoly::one());
        assert!(tt.terms().all(|(y, _)| *y == w || y.length() < w.length()));
        assert_eq!(convert(&mut table, &tt, Basis::C), c);
        let tb = convert(&mut table, &c, Basis::T);
        assert_eq!(convert(&mut table, &tb, Basis::C), c);
    }

    fn word(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(1usize..=5, 0..=max_len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn t_mul_is_associative(a in word(4), b in word(4), c in word(4)) {
            let sys = CoxeterSystem::polygon(5).unwrap();
            let (a, b, c) = (t(&sys, &a), t(&sys, &b), t(&sys, &c));
            let left = t_mul(&sys, &t_mul(&sys, &a, &b).unwrap(), &c).unwrap();
            let right = t_mul(&sys, &a, &t_mul(&sys, &b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn bar_is_multiplicative(a in word(3), b in word(3)) {
            let sys = CoxeterSystem::polygon(5).unwrap();
            let (a, b) = (t(&sys, &a), t(&sys, &b));
            let lhs = bar(&sys, &t_mul(&sys, &a, &b).unwrap()).unwrap();
            let rhs = t_mul(&sys, &bar(&sys, &a).unwrap(), &bar(&sys, &b).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
