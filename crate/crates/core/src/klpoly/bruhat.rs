use std::collections::BTreeSet;

use crate::coxeter::{CoxeterSystem, Element};
use crate::error::{Error, Result};

/// Bruhat order by descent recursion: for `s` in `L(w)`,
/// `y <= w` iff `sy <= sw` when `sy < y`, and iff `y <= sw` otherwise.
pub fn bruhat_le(sys: &CoxeterSystem, y: &Element, w: &Element) -> bool {
    let (mut y, mut w) = (y.clone(), w.clone());
    loop {
        if y.is_identity() {
            return true;
        }
        if y.length() >= w.length() {
            return y == w;
        }
        let s = w.letters()[0];
        if sys.is_left_descent(s, &y) {
            y = sys.lmul_gen(s, &y);
        }
        w = sys.lmul_gen(s, &w);
    }
}

/// `{ z : z <= w }`, via the subword property on the canonical word.
pub fn lower_ideal(sys: &CoxeterSystem, w: &Element) -> BTreeSet<Element> {
    let mut ideal: BTreeSet<Element> = BTreeSet::new();
    ideal.insert(Element::identity());
    for &s in w.letters().iter().rev() {
        let shifted: Vec<Element> = ideal.iter().map(|x| sys.lmul_gen(s, x)).collect();
        ideal.extend(shifted);
    }
    ideal
}

/// All `z` with `y <= z <= w`, sorted ShortLex.
pub fn bruhat_interval(sys: &CoxeterSystem, y: &Element, w: &Element) -> Result<Vec<Element>> {
    if !bruhat_le(sys, y, w) {
        return Err(Error::InvalidInput(format!("{y} is not below {w} in the Bruhat order")));
    }
    Ok(lower_ideal(sys, w)
        .into_iter()
        .filter(|z| bruhat_le(sys, y, z))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(sys: &CoxeterSystem, labels: &[usize]) -> Element {
        sys.element_from_labels(labels).unwrap()
    }

    /// Independent oracle: some reduced word of `y` is a subsequence of the
    /// canonical word of `w`.
    fn subword_oracle(sys: &CoxeterSystem, y: &Element, w: &Element) -> bool {
        let is_subseq = |a: &[crate::Generator], b: &[crate::Generator]| {
            let mut it = b.iter();
            a.iter().all(|c| it.any(|d| d == c))
        };
        sys.reduced_words(y)
            .unwrap()
            .iter()
            .any(|rw| is_subseq(rw, w.letters()))
    }

    #[test]
    fn examples() {
        let sys = CoxeterSystem::polygon(5).unwrap();
        let w = el(&sys, &[3, 1, 2]);
        assert!(bruhat_le(&sys, &Element::identity(), &w));
        assert!(bruhat_le(&sys, &el(&sys, &[1]), &w));
        assert!(!bruhat_le(&sys, &el(&sys, &[1, 3]), &el(&sys, &[1, 2])));

        let x = el(&sys, &[1, 2]);
        assert_eq!(bruhat_interval(&sys, &x, &x).unwrap(), vec![x.clone()]);
        let labels = |v: Vec<Element>| v.iter().map(|e| e.word().labels()).collect::<Vec<_>>();
        assert_eq!(
            labels(bruhat_interval(&sys, &Element::identity(), &x).unwrap()),
            vec![vec![], vec![1], vec![2], vec![1, 2]]
        );
        assert_eq!(
            labels(bruhat_interval(&sys, &Element::identity(), &el(&sys, &[1, 3])).unwrap()),
            vec![vec![], vec![1], vec![3], vec![1, 3]]
        );
        assert!(bruhat_interval(&sys, &el(&sys, &[4]), &x).is_err());
    }

    #[test]
    fn agrees_with_subword_oracle() {
        let sys = CoxeterSystem::polygon(5).unwrap();
        let ball = sys.ball(5).unwrap();
        for w in ball.iter().filter(|w| w.length() >= 3) {
            let ideal = lower_ideal(&sys, w);
            for y in ball.iter().filter(|y| y.length() <= w.length()) {
                let expected = subword_oracle(&sys, y, w);
                assert_eq!(bruhat_le(&sys, y, w), expected, "{y} <= {w}");
                assert_eq!(ideal.contains(y), expected);
            }
        }
    }
}
