//! Lines, segments, block decompositions and left precells.
//!
//! A reduced word of a right-angled group is a linear extension of its heap:
//! positions ordered by "comes earlier and does not commute". A *line* has a
//! totally ordered heap. A subword `u` of `w = w0 u w1` is a *segment* when it
//! is a maximal line occupying the same place in every reduced word of `w`.
//! Heap-wise that means:
//!
//! * consecutive letters of `u` do not commute,
//! * every right descent of `w0` fails to commute with the first letter of `u`
//!   and every left descent of `w1` fails to commute with the last letter,
//! * `#R(w0) != 1` and `#L(w1) != 1` (otherwise `u` extends to a longer line).
//!
//! [`segment_by_definition`] checks the definition directly by enumerating
//! reduced words, and is used to validate the fast criterion.

use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Element, Generator, Word};
use crate::error::{Error, Result};

/// True iff `x` has a unique reduced word.
pub fn is_line(sys: &CoxeterSystem, x: &Element) -> bool {
    x.letters().windows(2).all(|p| !sys.commutes(p[0], p[1]))
}

/// Segment test for the range `[i, j)` of an arbitrary reduced word.
pub fn is_segment_in_word(sys: &CoxeterSystem, w: &[Generator], i: usize, j: usize) -> bool {
    if i >= j || j > w.len() {
        return false;
    }
    let u = &w[i..j];
    if u.windows(2).any(|p| sys.commutes(p[0], p[1])) {
        return false;
    }
    let before = sys.right_descents_of(&w[..i]);
    let after = sys.left_descents_of(&w[j..]);
    if before.len() == 1 || after.len() == 1 {
        return false;
    }
    let (first, last) = (u[0], u[u.len() - 1]);
    before.iter().all(|&r| !sys.commutes(r, first)) && after.iter().all(|&l| !sys.commutes(l, last))
}

/// Segment test for the range `[i, j)` of the canonical word of `w`.
pub fn is_segment_at(sys: &CoxeterSystem, w: &Element, i: usize, j: usize) -> Result<bool> {
    if i >= j || j > w.length() {
        return Err(Error::InvalidInput(format!(
            "range [{i}, {j}) is not a nonempty subword of a word of length {}",
            w.length()
        )));
    }
    Ok(is_segment_in_word(sys, w.letters(), i, j))
}

/// The segment definition evaluated by brute force over all reduced words.
///
/// Limited by the reduced-word cap; used as an oracle for [`is_segment_at`].
pub fn segment_by_definition(sys: &CoxeterSystem, w: &Element, i: usize, j: usize) -> Result<bool> {
    if i >= j || j > w.length() {
        return Err(Error::InvalidInput(format!("bad range [{i}, {j})")));
    }
    let words = sys.reduced_words(w)?;
    let canon = w.letters();
    let fixed_everywhere = |a: usize, b: usize| -> bool {
        let u = &canon[a..b];
        if u.windows(2).any(|p| sys.commutes(p[0], p[1])) {
            return false;
        }
        let prefix = sys.reduce(&canon[..a]);
        words
            .iter()
            .all(|rw| &rw[a..b] == u && sys.reduce(&rw[..a]) == prefix)
    };
    if !fixed_everywhere(i, j) {
        return Ok(false);
    }
    for a in 0..=i {
        for b in j..=canon.len() {
            if (a, b) != (i, j) && fixed_everywhere(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All segments of the canonical word of `x`, as disjoint ranges in order.
pub fn segments(sys: &CoxeterSystem, x: &Element) -> Vec<(usize, usize)> {
    let w = x.letters();
    let mut out = Vec::new();
    let mut i = 0;
    while i < w.len() {
        match (i + 1..=w.len()).rev().find(|&j| is_segment_in_word(sys, w, i, j)) {
            Some(j) => {
                out.push((i, j));
                i = j;
            }
            None => i += 1,
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "word", rename_all = "lowercase")]
pub enum Part {
    Segment(Vec<usize>),
    /// A maximal stretch between segments. Where possible its word is chosen
    /// with every pair of consecutive letters commuting.
    Block(Vec<usize>),
}

/// Alternating segment/block decomposition of an element.
///
/// Words are stored as 1-based labels so that the JSON form matches reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub parts: Vec<Part>,
}

impl BlockDecomposition {
    /// Concatenated word (0-based generators); a reduced word of the element.
    pub fn word(&self) -> Word {
        self.parts
            .iter()
            .flat_map(|p| match p {
                Part::Segment(w) | Part::Block(w) => w.iter().map(|&l| Generator((l - 1) as u8)),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Whether every pair of consecutive letters commutes.
pub fn is_commuting_word(sys: &CoxeterSystem, w: &[Generator]) -> bool {
    w.windows(2).all(|p| sys.commutes(p[0], p[1]))
}

/// Lexicographically first reduced word of the heap `letters` whose consecutive
/// letters all commute, if one exists.
pub fn commuting_linearization(sys: &CoxeterSystem, letters: &[Generator]) -> Option<Vec<Generator>> {
    fn go(sys: &CoxeterSystem, rest: &mut Vec<Generator>, out: &mut Vec<Generator>) -> bool {
        if rest.is_empty() {
            return true;
        }
        let mut choices: Vec<(Generator, usize)> = Vec::new();
        for i in 0..rest.len() {
            let a = rest[i];
            let fits = out.last().is_none_or(|&p| sys.commutes(p, a));
            if fits
                && !choices.iter().any(|&(g, _)| g == a)
                && rest[..i].iter().all(|&b| sys.commutes(a, b))
            {
                choices.push((a, i));
            }
        }
        choices.sort();
        for (a, i) in choices {
            rest.remove(i);
            out.push(a);
            if go(sys, rest, out) {
                return true;
            }
            out.pop();
            rest.insert(i, a);
        }
        false
    }
    let mut rest = letters.to_vec();
    let mut out = Vec::with_capacity(letters.len());
    go(sys, &mut rest, &mut out).then_some(out)
}

pub fn decompose(sys: &CoxeterSystem, x: &Element) -> BlockDecomposition {
    let w = x.letters();
    let labels = |s: &[Generator]| s.iter().map(|g| g.index() + 1).collect::<Vec<_>>();
    let mut parts = Vec::new();
    let mut cursor = 0;
    let push_block = |parts: &mut Vec<Part>, piece: &[Generator]| {
        if piece.is_empty() {
            return;
        }
        let word = commuting_linearization(sys, piece).unwrap_or_else(|| piece.to_vec());
        parts.push(Part::Block(labels(&word)));
    };
    for (i, j) in segments(sys, x) {
        push_block(&mut parts, &w[cursor..i]);
        parts.push(Part::Segment(labels(&w[i..j])));
        cursor = j;
    }
    push_block(&mut parts, &w[cursor..]);
    BlockDecomposition { parts }
}

/// A left precell, identified by its unique shortest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Precell {
    pub rep: Element,
    /// `#L(rep)`; zero only for the unit precell.
    pub dimension: usize,
}

/// Length of the leading segment of the canonical word of `x`, if any.
pub fn leading_segment(sys: &CoxeterSystem, x: &Element) -> Option<usize> {
    let w = x.letters();
    (1..=w.len()).rev().find(|&j| is_segment_in_word(sys, w, 0, j))
}

pub fn precell_rep(sys: &CoxeterSystem, x: &Element) -> Precell {
    if x.is_identity() {
        return Precell {
            rep: Element::identity(),
            dimension: 0,
        };
    }
    if is_line(sys, x) {
        let last = *x.letters().last().expect("non-identity");
        return Precell {
            rep: sys.gen_element(last),
            dimension: 1,
        };
    }
    let rep = match leading_segment(sys, x) {
        Some(j) => sys.reduce(&x.letters()[j..]),
        None => x.clone(),
    };
    let dimension = sys.left_descents(&rep).len();
    Precell { rep, dimension }
}

pub fn same_precell(sys: &CoxeterSystem, x: &Element, y: &Element) -> bool {
    precell_rep(sys, x).rep == precell_rep(sys, y).rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> CoxeterSystem {
        CoxeterSystem::polygon(5).unwrap()
    }

    fn el(sys: &CoxeterSystem, labels: &[usize]) -> Element {
        sys.element_from_labels(labels).unwrap()
    }

    #[test]
    fn line_examples() {
        let sys = p5();
        assert!(is_line(&sys, &el(&sys, &[1, 3, 5])));
        assert!(!is_line(&sys, &el(&sys, &[1, 2])));
        for g in 1..=5 {
            assert!(is_line(&sys, &el(&sys, &[g])));
        }
    }

    #[test]
    fn segment_examples() {
        let sys = p5();
        let w = el(&sys, &[4, 1, 2, 4]);
        assert_eq!(w.word().labels(), vec![4, 1, 2, 4]);
        assert!(is_segment_at(&sys, &w, 0, 1).unwrap());
        assert!(is_segment_at(&sys, &w, 3, 4).unwrap());
        assert!(!is_segment_at(&sys, &w, 1, 2).unwrap());

        // trailing s3 of s1s2s3 is not a segment: s1s3s2 splits differently
        let w = el(&sys, &[1, 2, 3]);
        assert!(!is_segment_at(&sys, &w, 2, 3).unwrap());
        assert!(!segment_by_definition(&sys, &w, 2, 3).unwrap());

        let w = el(&sys, &[1, 3]);
        assert!(is_segment_at(&sys, &w, 0, 2).unwrap());
        assert!(!is_segment_at(&sys, &w, 0, 1).unwrap());
        assert!(is_segment_at(&sys, &w, 1, 1).is_err());
        assert!(is_segment_at(&sys, &w, 0, 3).is_err());
    }

    #[test]
    fn s3_is_not_a_segment_of_s3s1s2s4() {
        // s3 commutes with s2, so s2 s3 s1 s4 is another reduced word.
        let sys = p5();
        let w = el(&sys, &[3, 1, 2, 4]);
        let words = sys.reduced_words(&w).unwrap();
        assert!(words.iter().any(|rw| rw.labels()[0] == 2));
        assert_eq!(leading_segment(&sys, &w), None);
    }

    #[test]
    fn decompose_examples() {
        let sys = p5();
        let seg = |v: &[usize]| Part::Segment(v.to_vec());
        let blk = |v: &[usize]| Part::Block(v.to_vec());
        assert_eq!(decompose(&sys, &el(&sys, &[1, 3, 5])).parts, vec![seg(&[1, 3, 5])]);
        assert_eq!(decompose(&sys, &el(&sys, &[1, 2])).parts, vec![blk(&[1, 2])]);
        assert_eq!(
            decompose(&sys, &el(&sys, &[4, 1, 2, 4])).parts,
            vec![seg(&[4]), blk(&[1, 2]), seg(&[4])]
        );
        assert_eq!(
            decompose(&sys, &el(&sys, &[3, 1, 2, 4])).parts,
            vec![blk(&[3, 2, 1]), seg(&[4])]
        );
        assert!(decompose(&sys, &Element::identity()).parts.is_empty());
    }

    #[test]
    fn decomposition_json() {
        let sys = p5();
        let d = decompose(&sys, &el(&sys, &[4, 1, 2, 4]));
        assert_eq!(
            d.to_json(),
            r#"{"parts":[{"kind":"segment","word":[4]},{"kind":"block","word":[1,2]},{"kind":"segment","word":[4]}]}"#
        );
    }

    #[test]
    fn non_commuting_block_exists() {
        // s1 commutes with the whole line s2 s5 s2, so no linearization has
        // all consecutive letters commuting, and there is no segment.
        let sys = p5();
        let w = el(&sys, &[1, 2, 5, 2]);
        let d = decompose(&sys, &w);
        assert_eq!(d.parts, vec![Part::Block(vec![1, 2, 5, 2])]);
        assert!(commuting_linearization(&sys, w.letters()).is_none());
    }

    #[test]
    fn precell_examples() {
        let sys = p5();
        let p = precell_rep(&sys, &el(&sys, &[3, 1]));
        assert_eq!((p.rep.word().labels(), p.dimension), (vec![1], 1));
        let p = precell_rep(&sys, &el(&sys, &[4, 1, 2, 4]));
        assert_eq!((p.rep.word().labels(), p.dimension), (vec![1, 2, 4], 2));
        let p = precell_rep(&sys, &el(&sys, &[3, 1, 2, 4]));
        assert_eq!((p.rep.word().labels(), p.dimension), (vec![2, 3, 1, 4], 2));
        let p = precell_rep(&sys, &Element::identity());
        assert_eq!((p.rep, p.dimension), (Element::identity(), 0));
    }

    #[test]
    fn same_precell_examples() {
        let sys = p5();
        assert!(same_precell(&sys, &el(&sys, &[3, 1]), &el(&sys, &[4, 1])));
        assert!(!same_precell(&sys, &el(&sys, &[1, 2]), &el(&sys, &[1, 2, 4])));
        let x = el(&sys, &[2, 5, 3]);
        assert!(same_precell(&sys, &x, &x));
    }
}
