//! Left, right and two-sided cells of the polygon groups `P_n`, `n >= 5`.
//!
//! There are three kinds of left cells: `{e}`; for each generator `g`, the
//! lines ending in `g`; and one cell for each involution `u^{-1} t t' u`
//! (`t t' = t' t`, `u` a segment or empty). A non-line element is brought to
//! the form `t t' u` by stripping its leading segment and applying the
//! rewrites
//!
//! * A: `t1 t2 t3 x -> t2 t3 x` when `t1 t2` and `t2 t3` commute,
//! * B: `s1 s2 u t1 t2 x -> t1 t2 x` when `s1 s2`, `t1 t2` commute and `u` is
//!   a segment, or `u` is empty and `t1` commutes with neither `s1` nor `s2`,
//!
//! to some reduced word of the current element.

mod verify;
mod witness;

use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

pub use verify::{verify_partition, PartitionReport, SubCheck};
pub use witness::{move_b_instances, mu_witness_move_b, MoveBInstance};

use crate::coxeter::{CoxeterSystem, Element, Generator, Word};
use crate::error::{Error, Result};
use crate::klpoly::KlTable;
use crate::wordgeom::{is_line, is_segment_in_word, precell_rep};

/// Reduced words of elements met during rewriting are enumerated in full;
/// this caps the element length accepted.
const MOVE_WORD_CAP: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellLabel {
    Unit,
    /// Lines ending in the generator.
    TypeI(Generator),
    /// The cell containing the distinguished involution.
    TypeII(Element),
}

impl CellLabel {
    pub fn two_sided(&self) -> TwoSided {
        match self {
            CellLabel::Unit => TwoSided::Unit,
            CellLabel::TypeI(_) => TwoSided::OneDim,
            CellLabel::TypeII(_) => TwoSided::TwoDim,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("label serializes")
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellLabel::Unit => write!(f, "unit"),
            CellLabel::TypeI(g) => write!(f, "typeI g={}", g.index() + 1),
            CellLabel::TypeII(d) => write!(f, "typeII d={:?}", d.word().labels()),
        }
    }
}

impl Serialize for CellLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        match self {
            CellLabel::Unit => map.serialize_entry("cell", "unit")?,
            CellLabel::TypeI(g) => {
                map.serialize_entry("cell", "typeI")?;
                map.serialize_entry("g", &(g.index() + 1))?;
            }
            CellLabel::TypeII(d) => {
                map.serialize_entry("cell", "typeII")?;
                map.serialize_entry("d", &d.word().labels())?;
            }
        }
        map.end()
    }
}

/// Two-sided cells of `P_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwoSided {
    Unit,
    OneDim,
    TwoDim,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MoveTag {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveStep {
    pub tag: MoveTag,
    pub before: Word,
    pub after: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveTrace {
    pub start: Element,
    pub steps: Vec<MoveStep>,
    pub end: Element,
    /// Whether `end` has a reduced word `t t' u` with `t t' = t' t` and `u` a line.
    pub final_form: bool,
}

pub fn move_a(sys: &CoxeterSystem, w: &[Generator]) -> Option<Word> {
    if w.len() < 3 {
        return None;
    }
    let (t1, t2, t3) = (w[0], w[1], w[2]);
    (t1 != t3 && sys.commutes(t1, t2) && sys.commutes(t2, t3)).then(|| Word::new(w[1..].to_vec()))
}

/// Tries `u` of increasing length and returns `t1 t2 x` for the first match.
/// With `u` empty, `t1` must commute with neither `s1` nor `s2`; otherwise some
/// reordering of the prefix is a move-A pattern.
pub fn move_b(sys: &CoxeterSystem, w: &[Generator]) -> Option<Word> {
    if w.len() < 4 || !sys.commutes(w[0], w[1]) {
        return None;
    }
    (0..=w.len() - 4).find_map(|k| {
        let (t1, t2) = (w[2 + k], w[3 + k]);
        let ok = sys.commutes(t1, t2)
            && if k == 0 {
                !sys.commutes(w[0], t1) && !sys.commutes(w[1], t1)
            } else {
                is_segment_in_word(sys, w, 2, 2 + k)
            };
        ok.then(|| Word::new(w[2 + k..].to_vec()))
    })
}

fn reduced_words(sys: &CoxeterSystem, x: &Element) -> Result<Vec<Word>> {
    sys.reduced_words_capped(x, MOVE_WORD_CAP)
}

fn in_final_form(sys: &CoxeterSystem, x: &Element) -> Result<bool> {
    if x.length() < 2 {
        return Ok(false);
    }
    Ok(reduced_words(sys, x)?
        .iter()
        .any(|w| sys.commutes(w[0], w[1]) && w[2..].windows(2).all(|p| !sys.commutes(p[0], p[1]))))
}

/// Applies A, then B, to the reduced words of the current element in
/// lexicographic order until neither applies.
pub fn apply_moves(sys: &CoxeterSystem, x: &Element) -> Result<MoveTrace> {
    let mut current = x.clone();
    let mut steps = Vec::new();
    'outer: loop {
        let words = reduced_words(sys, &current)?;
        for (tag, mv) in [(MoveTag::A, move_a as fn(&CoxeterSystem, &[Generator]) -> Option<Word>), (MoveTag::B, move_b)] {
            for w in &words {
                if let Some(after) = mv(sys, w) {
                    current = sys.reduce(&after);
                    steps.push(MoveStep {
                        tag,
                        before: w.clone(),
                        after,
                    });
                    continue 'outer;
                }
            }
        }
        break;
    }
    let final_form = in_final_form(sys, &current)?;
    Ok(MoveTrace {
        start: x.clone(),
        steps,
        end: current,
        final_form,
    })
}

/// The label read off the top of `x`: peel unique right descents
/// `c_m, .., c_1` until the element is trivial (a line, label `TypeI`) or has
/// two right descents `t, t'` (label `TypeII(c_1..c_m^{-1} t t' c_1..c_m)`).
pub fn label_from_tail(sys: &CoxeterSystem, x: &Element) -> Result<CellLabel> {
    if x.is_identity() {
        return Ok(CellLabel::Unit);
    }
    let mut current = x.clone();
    let mut peeled: Vec<Generator> = Vec::new();
    loop {
        let r = sys.right_descents(&current);
        match r.len() {
            0 => {
                let g = *x.letters().last().expect("non-identity");
                return Ok(CellLabel::TypeI(g));
            }
            1 => {
                let s = *r.iter().next().expect("one descent");
                peeled.push(s);
                current = sys.rmul_gen(&current, s);
            }
            2 => {
                let mut w: Vec<Generator> = peeled.clone();
                w.extend(r.iter().copied());
                w.extend(peeled.iter().rev());
                return Ok(CellLabel::TypeII(sys.reduce(&w)));
            }
            k => {
                return Err(Error::Unsupported(format!(
                    "{x} has {k} right descents; polygon groups have at most 2"
                )))
            }
        }
    }
}

/// Left cell of `x` together with the rewriting trace used to find it.
pub fn classify_left_traced(sys: &CoxeterSystem, x: &Element) -> Result<(CellLabel, Option<MoveTrace>)> {
    sys.require_hyperbolic_polygon()?;
    if x.is_identity() {
        return Ok((CellLabel::Unit, None));
    }
    if is_line(sys, x) {
        return Ok((CellLabel::TypeI(*x.letters().last().expect("non-identity")), None));
    }
    let rep = precell_rep(sys, x).rep;
    let trace = apply_moves(sys, &rep)?;
    let label = label_from_tail(sys, &trace.end)?;
    Ok((label, Some(trace)))
}

pub fn classify_left(sys: &CoxeterSystem, x: &Element) -> Result<CellLabel> {
    Ok(classify_left_traced(sys, x)?.0)
}

pub fn classify_right(sys: &CoxeterSystem, x: &Element) -> Result<CellLabel> {
    classify_left(sys, &sys.invert(x))
}

pub fn classify_two_sided(sys: &CoxeterSystem, x: &Element) -> Result<TwoSided> {
    Ok(classify_left(sys, x)?.two_sided())
}

/// One generating step of `<=_L`: `mu(y, w) != 0` and `L(y)` not inside `L(w)`.
pub fn le_left_step(table: &mut KlTable, y: &Element, w: &Element) -> bool {
    if table.mu(y, w) == 0 {
        return false;
    }
    let sys = table.system();
    !sys.left_descents(y).is_subset(&sys.left_descents(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordgeom::same_precell;

    fn p5() -> CoxeterSystem {
        CoxeterSystem::polygon(5).unwrap()
    }

    fn el(sys: &CoxeterSystem, labels: &[usize]) -> Element {
        sys.element_from_labels(labels).unwrap()
    }

    fn w(sys: &CoxeterSystem, labels: &[usize]) -> Word {
        sys.word(&labels.iter().map(|l| l - 1).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn move_examples() {
        let sys = p5();
        assert_eq!(move_a(&sys, &w(&sys, &[1, 2, 3, 5])), Some(w(&sys, &[2, 3, 5])));
        assert_eq!(move_a(&sys, &w(&sys, &[1, 3, 5, 2])), None);
        assert_eq!(move_a(&sys, &w(&sys, &[1, 2])), None);

        assert_eq!(move_b(&sys, &w(&sys, &[1, 2, 4, 1, 2])), Some(w(&sys, &[1, 2])));
        assert_eq!(move_b(&sys, &w(&sys, &[1, 2, 4, 5])), Some(w(&sys, &[4, 5])));
        assert_eq!(move_b(&sys, &w(&sys, &[1, 3, 5])), None);
        // s4 commutes with s3, so it is not a segment of s1 s2 s4 s2 s3.
        assert_eq!(move_b(&sys, &w(&sys, &[1, 2, 4, 2, 3])), None);
    }

    #[test]
    fn classify_examples() {
        let sys = p5();
        let label = |l: &[usize]| classify_left(&sys, &el(&sys, l)).unwrap();
        let t2 = |l: &[usize]| CellLabel::TypeII(el(&sys, l));
        assert_eq!(label(&[]), CellLabel::Unit);
        assert_eq!(label(&[3, 1]), CellLabel::TypeI(Generator(0)));
        assert_eq!(label(&[1, 2]), t2(&[1, 2]));
        assert_eq!(label(&[1, 2, 3]), t2(&[2, 3]));
        assert_eq!(label(&[3, 1, 2, 4]), t2(&[4, 1, 2, 4]));
        assert_eq!(label(&[4, 1, 2, 4]), t2(&[4, 1, 2, 4]));

        assert_eq!(classify_right(&sys, &el(&sys, &[1, 3])).unwrap(), CellLabel::TypeI(Generator(0)));
        assert_eq!(classify_right(&sys, &el(&sys, &[1, 2])).unwrap(), t2(&[1, 2]));
        assert_eq!(classify_two_sided(&sys, &el(&sys, &[1, 2, 3])).unwrap(), TwoSided::TwoDim);
        assert_eq!(classify_two_sided(&sys, &el(&sys, &[2, 4, 1])).unwrap(), TwoSided::OneDim);
        assert!(classify_left(&CoxeterSystem::infinite_dihedral(), &Element::identity()).is_err());

        assert_eq!(t2(&[4, 1, 2, 4]).to_json(), r#"{"cell":"typeII","d":[4,1,2,4]}"#);
        assert_eq!(CellLabel::TypeI(Generator(0)).to_json(), r#"{"cell":"typeI","g":1}"#);
        assert_eq!(CellLabel::Unit.to_json(), r#"{"cell":"unit"}"#);
        assert_eq!(t2(&[2, 3]).to_string(), "typeII d=[2, 3]");
    }

    /// A word where the canonical form admits no move but another reduced
    /// word does.
    #[test]
    fn moves_use_all_reduced_words() {
        let sys = p5();
        let x = el(&sys, &[1, 2, 5, 2]);
        assert!(move_a(&sys, x.letters()).is_none() && move_b(&sys, x.letters()).is_none());
        let trace = apply_moves(&sys, &x).unwrap();
        assert!(!trace.steps.is_empty());
        assert!(trace.final_form);
    }

    #[test]
    fn moves_agree_with_tail_label() {
        for n in [5, 6] {
            let sys = CoxeterSystem::polygon(n).unwrap();
            for x in sys.ball(7).unwrap().iter() {
                let (label, trace) = classify_left_traced(&sys, x).unwrap();
                assert_eq!(label, label_from_tail(&sys, x).unwrap(), "{x}");
                if let Some(t) = trace {
                    assert!(t.final_form, "{x} stuck at {}", t.end);
                    for step in &t.steps {
                        assert!(step.after.len() < step.before.len());
                    }
                }
                if let CellLabel::TypeII(d) = &label {
                    assert_eq!(sys.multiply(d, d), Element::identity());
                }
                let rep = precell_rep(&sys, x).rep;
                assert!(same_precell(&sys, x, &rep));
                assert_eq!(classify_left(&sys, &rep).unwrap(), label);
                assert_eq!(classify_right(&sys, x).unwrap(), classify_left(&sys, &sys.invert(x)).unwrap());
            }
        }
    }

    #[test]
    fn left_step_examples() {
        let sys = p5();
        let mut table = KlTable::new(&sys);
        assert!(le_left_step(&mut table, &el(&sys, &[1]), &el(&sys, &[3, 1])));
        let x = el(&sys, &[4, 1, 2, 4]);
        assert!(!le_left_step(&mut table, &x, &x));
        assert!(!le_left_step(&mut table, &el(&sys, &[1, 2]), &x));
    }
}
