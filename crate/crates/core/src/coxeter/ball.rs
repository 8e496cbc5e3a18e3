use std::collections::{HashMap, HashSet};

use super::{CoxeterSystem, Element, Generator};
use crate::error::{Error, Result};

/// All elements of length at most `radius`, in ShortLex order, with the BFS
/// tree of the Cayley graph: each non-identity element is its parent times the
/// last letter of its canonical word.
#[derive(Debug, Clone)]
pub struct Ball {
    radius: usize,
    elements: Vec<Element>,
    parents: Vec<Option<(usize, Generator)>>,
    index: HashMap<Element, usize>,
}

impl Ball {
    pub(crate) fn enumerate(sys: &CoxeterSystem, radius: usize, cap: usize) -> Result<Ball> {
        let mut layers: Vec<Vec<Element>> = vec![vec![Element::identity()]];
        let mut total = 1usize;
        for _ in 0..radius {
            let prev = layers.last().expect("nonempty");
            let mut seen: HashSet<Element> = HashSet::new();
            for x in prev {
                let rd = sys.right_descents(x);
                for s in sys.generators() {
                    if rd.contains(&s) {
                        continue;
                    }
                    seen.insert(sys.rmul_gen(x, s));
                }
            }
            total += seen.len();
            if total > cap {
                return Err(Error::Resource(format!(
                    "ball enumeration stopped after {total} elements (cap {cap}) at radius {}",
                    layers.len()
                )));
            }
            let mut next: Vec<Element> = seen.into_iter().collect();
            next.sort();
            if next.is_empty() {
                break;
            }
            layers.push(next);
        }
        let elements: Vec<Element> = layers.into_iter().flatten().collect();
        let index: HashMap<Element, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let parents = elements
            .iter()
            .map(|x| {
                let (&last, prefix) = x.letters().split_last()?;
                // A prefix of a ShortLex-minimal word is ShortLex-minimal.
                let parent = Element::from_canonical(prefix.to_vec());
                Some((index[&parent], last))
            })
            .collect();
        Ok(Ball {
            radius,
            elements,
            parents,
            index,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elements.iter()
    }

    /// Parent index and edge label in the BFS tree; `None` for the identity.
    pub fn parent(&self, i: usize) -> Option<(usize, Generator)> {
        self.parents[i]
    }

    pub fn position(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index.contains_key(x)
    }

    /// Elements of exactly length `k`.
    pub fn sphere(&self, k: usize) -> impl Iterator<Item = &Element> {
        self.elements.iter().filter(move |x| x.length() == k)
    }
}

impl<'a> IntoIterator for &'a Ball {
    type Item = &'a Element;
    type IntoIter = std::slice::Iter<'a, Element>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}
