//! Right-angled Coxeter systems and exact word arithmetic.
//!
//! A right-angled system is determined by its commutation graph: distinct
//! generators either commute (`m(s,t) = 2`) or generate an infinite dihedral
//! subgroup (`m(s,t) = ∞`). Group elements are kept in ShortLex normal form,
//! i.e. the lexicographically least reduced word under generator id order.

pub(crate) mod arena;
mod ball;
mod spec;

pub use ball::Ball;
pub use spec::GroupSpec;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default maximal length accepted by [`CoxeterSystem::reduced_words`].
pub const DEFAULT_REDUCED_WORDS_CAP: usize = 12;

/// Default maximal number of elements produced by [`CoxeterSystem::ball`].
pub const DEFAULT_BALL_CAP: usize = 4_000_000;

/// A simple reflection, indexed from zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator(pub u8);

impl Generator {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 1-based, matching the usual s_1..s_n labelling.
        write!(f, "s{}", self.0 as usize + 1)
    }
}

pub type DescentSet = BTreeSet<Generator>;

/// A finite sequence of generators, not necessarily reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn new(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// 0-based generator indices.
    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|g| g.index()).collect()
    }

    /// 1-based generator labels, the form used in reports and files.
    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|g| g.index() + 1).collect()
    }
}

impl Deref for Word {
    type Target = [Generator];

    fn deref(&self) -> &[Generator] {
        &self.0
    }
}

impl FromIterator<Generator> for Word {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A group element, held as its ShortLex-minimal reduced word.
///
/// Ordering is ShortLex: first by length, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    word: Word,
}

impl Element {
    pub fn identity() -> Self {
        Element { word: Word::empty() }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn letters(&self) -> &[Generator] {
        &self.word.0
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Callers must guarantee the word is already canonical.
    pub(crate) fn from_canonical(letters: Vec<Generator>) -> Self {
        Element { word: Word(letters) }
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.word.0.cmp(&other.word.0))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SystemKind {
    /// Reflection group of a right-angled `n`-gon: generators `i` and `i+1 mod n` commute.
    Polygon(usize),
    General,
}

/// A right-angled Coxeter presentation given by its commutation graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterSystem {
    rank: usize,
    commuting: Vec<bool>,
    kind: SystemKind,
}

impl CoxeterSystem {
    /// The group `P_n`: commuting pairs are exactly the cyclically adjacent ones.
    pub fn polygon(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "polygon group needs n >= 3, got {n}"
            )));
        }
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let mut sys = Self::right_angled(n, &pairs)?;
        sys.kind = SystemKind::Polygon(n);
        Ok(sys)
    }

    /// A general right-angled system; the pair list is symmetrized.
    pub fn right_angled(n: usize, commuting_pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("a Coxeter system needs at least one generator".into()));
        }
        if n > u8::MAX as usize + 1 {
            return Err(Error::InvalidInput(format!("at most 256 generators supported, got {n}")));
        }
        let mut commuting = vec![false; n * n];
        for &(a, b) in commuting_pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!(
                    "commuting pair ({a}, {b}) out of range for {n} generators"
                )));
            }
            if a == b {
                return Err(Error::InvalidInput(format!("reflexive commuting pair ({a}, {a})")));
            }
            commuting[a * n + b] = true;
            commuting[b * n + a] = true;
        }
        Ok(CoxeterSystem {
            rank: n,
            commuting,
            kind: SystemKind::General,
        })
    }

    /// The infinite dihedral group: two generators, no relation between them.
    pub fn infinite_dihedral() -> Self {
        Self::right_angled(2, &[]).expect("valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    /// `Some(n)` when this is `P_n` with `n >= 5`, the hyperbolic polygon groups.
    pub fn hyperbolic_polygon(&self) -> Option<usize> {
        match self.kind {
            SystemKind::Polygon(n) if n >= 5 => Some(n),
            _ => None,
        }
    }

    pub(crate) fn require_hyperbolic_polygon(&self) -> Result<usize> {
        self.hyperbolic_polygon().ok_or_else(|| {
            Error::Unsupported(format!(
                "cell classification is implemented for P_n with n >= 5, got {:?}",
                self.kind
            ))
        })
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        (0..self.rank).map(|i| Generator(i as u8))
    }

    pub fn generator(&self, i: usize) -> Result<Generator> {
        if i < self.rank {
            Ok(Generator(i as u8))
        } else {
            Err(Error::InvalidInput(format!(
                "generator index {i} out of range for {} generators",
                self.rank
            )))
        }
    }

    /// True iff `a != b` and `ab = ba`.
    #[inline]
    pub fn commutes(&self, a: Generator, b: Generator) -> bool {
        self.commuting[a.index() * self.rank + b.index()]
    }

    /// Sorted list of commuting pairs `(a, b)` with `a < b`.
    pub fn commuting_pairs(&self) -> Vec<(Generator, Generator)> {
        let mut out = Vec::new();
        for a in self.generators() {
            for b in self.generators() {
                if a < b && self.commutes(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Builds a word from 0-based indices, validating each letter.
    pub fn word(&self, indices: &[usize]) -> Result<Word> {
        indices.iter().map(|&i| self.generator(i)).collect::<Result<Vec<_>>>().map(Word)
    }

    /// Builds an element from 1-based labels (`s1..sn`), as used in reports.
    pub fn element_from_labels(&self, labels: &[usize]) -> Result<Element> {
        let idx = labels
            .iter()
            .map(|&l| {
                l.checked_sub(1)
                    .ok_or_else(|| Error::InvalidInput("generator labels are 1-based".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.reduce(&self.word(&idx)?))
    }

    /// Builds an element from 0-based indices.
    pub fn element(&self, indices: &[usize]) -> Result<Element> {
        Ok(self.reduce(&self.word(indices)?))
    }

    pub fn identity(&self) -> Element {
        Element::identity()
    }

    pub fn gen_element(&self, g: Generator) -> Element {
        Element::from_canonical(vec![g])
    }

    /// Canonical form of an arbitrary word.
    pub fn reduce(&self, w: &[Generator]) -> Element {
        let mut reduced = Vec::with_capacity(w.len());
        for &s in w {
            self.push_right(&mut reduced, s);
        }
        Element::from_canonical(self.lex_normalize(reduced))
    }

    /// Multiplies a reduced word on the right by `s`, keeping it reduced.
    ///
    /// `ws < w` iff some occurrence of `s` is followed only by letters commuting
    /// with `s`; that occurrence is then deleted.
    fn push_right(&self, w: &mut Vec<Generator>, s: Generator) {
        for j in (0..w.len()).rev() {
            if w[j] == s {
                w.remove(j);
                return;
            }
            if !self.commutes(w[j], s) {
                break;
            }
        }
        w.push(s);
    }

    /// Lexicographically least linear extension of a reduced word's heap.
    ///
    /// Greedy: repeatedly emit the smallest letter that can be commuted to the
    /// front of what remains.
    pub(crate) fn lex_normalize(&self, mut rest: Vec<Generator>) -> Vec<Generator> {
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best: Option<(Generator, usize)> = None;
            for i in 0..rest.len() {
                let a = rest[i];
                if best.is_some_and(|(g, _)| a >= g) {
                    continue;
                }
                if rest[..i].iter().all(|&b| self.commutes(a, b)) {
                    best = Some((a, i));
                }
            }
            let (g, i) = best.expect("a nonempty heap has a minimal letter");
            rest.remove(i);
            out.push(g);
        }
        out
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let mut reduced = x.letters().to_vec();
        for &s in y.letters() {
            self.push_right(&mut reduced, s);
        }
        Element::from_canonical(self.lex_normalize(reduced))
    }

    pub fn invert(&self, x: &Element) -> Element {
        Element::from_canonical(self.lex_normalize(x.word().reversed().0))
    }

    /// `x * s`.
    pub fn rmul_gen(&self, x: &Element, s: Generator) -> Element {
        let mut reduced = x.letters().to_vec();
        self.push_right(&mut reduced, s);
        Element::from_canonical(self.lex_normalize(reduced))
    }

    /// `s * x`.
    pub fn lmul_gen(&self, s: Generator, x: &Element) -> Element {
        let mut letters = x.letters().to_vec();
        match self.left_descent_position(x.letters(), s) {
            Some(i) => {
                letters.remove(i);
            }
            None => letters.insert(0, s),
        }
        Element::from_canonical(self.lex_normalize(letters))
    }

    /// Position of the occurrence of `s` that can be commuted to the front.
    fn left_descent_position(&self, w: &[Generator], s: Generator) -> Option<usize> {
        for (i, &a) in w.iter().enumerate() {
            if a == s {
                return Some(i);
            }
            if !self.commutes(a, s) {
                return None;
            }
        }
        None
    }

    fn right_descent_position(&self, w: &[Generator], s: Generator) -> Option<usize> {
        for i in (0..w.len()).rev() {
            if w[i] == s {
                return Some(i);
            }
            if !self.commutes(w[i], s) {
                return None;
            }
        }
        None
    }

    pub fn is_left_descent(&self, s: Generator, x: &Element) -> bool {
        self.left_descent_position(x.letters(), s).is_some()
    }

    pub fn is_right_descent(&self, x: &Element, s: Generator) -> bool {
        self.right_descent_position(x.letters(), s).is_some()
    }

    /// Left descent set of any reduced word.
    pub(crate) fn left_descents_of(&self, w: &[Generator]) -> DescentSet {
        self.generators()
            .filter(|&s| self.left_descent_position(w, s).is_some())
            .collect()
    }

    pub(crate) fn right_descents_of(&self, w: &[Generator]) -> DescentSet {
        self.generators()
            .filter(|&s| self.right_descent_position(w, s).is_some())
            .collect()
    }

    /// `L(x) = { s : sx < x }`.
    pub fn left_descents(&self, x: &Element) -> DescentSet {
        self.left_descents_of(x.letters())
    }

    /// `R(x) = { s : xs < x }`.
    pub fn right_descents(&self, x: &Element) -> DescentSet {
        self.right_descents_of(x.letters())
    }

    /// True iff the word is reduced.
    pub fn is_reduced(&self, w: &[Generator]) -> bool {
        self.reduce(w).length() == w.len()
    }

    /// All reduced words of `x`, sorted lexicographically.
    pub fn reduced_words(&self, x: &Element) -> Result<Vec<Word>> {
        self.reduced_words_capped(x, DEFAULT_REDUCED_WORDS_CAP)
    }

    pub fn reduced_words_capped(&self, x: &Element, cap: usize) -> Result<Vec<Word>> {
        if x.length() > cap {
            return Err(Error::Resource(format!(
                "reduced_words: length {} exceeds cap {cap}",
                x.length()
            )));
        }
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(x.length());
        self.linear_extensions(x.letters().to_vec(), &mut prefix, &mut out);
        Ok(out)
    }

    /// Every reduced word is a linear extension of the heap of any one of them.
    fn linear_extensions(&self, rest: Vec<Generator>, prefix: &mut Vec<Generator>, out: &mut Vec<Word>) {
        if rest.is_empty() {
            out.push(Word(prefix.clone()));
            return;
        }
        let mut seen: Vec<Generator> = Vec::new();
        let mut choices: Vec<(Generator, usize)> = Vec::new();
        for i in 0..rest.len() {
            let a = rest[i];
            if !seen.contains(&a) && rest[..i].iter().all(|&b| self.commutes(a, b)) {
                choices.push((a, i));
            }
            seen.push(a);
        }
        choices.sort();
        for (a, i) in choices {
            let mut next = rest.clone();
            next.remove(i);
            prefix.push(a);
            self.linear_extensions(next, prefix, out);
            prefix.pop();
        }
    }

    /// All elements of length at most `radius`, sorted ShortLex.
    pub fn ball(&self, radius: usize) -> Result<Ball> {
        Ball::enumerate(self, radius, DEFAULT_BALL_CAP)
    }

    pub fn ball_capped(&self, radius: usize, cap: usize) -> Result<Ball> {
        Ball::enumerate(self, radius, cap)
    }

    /// Applies a permutation of generators (given as images of 0..n).
    pub fn relabel(&self, x: &Element, perm: &[usize]) -> Element {
        let w: Vec<Generator> = x.letters().iter().map(|g| Generator(perm[g.index()] as u8)).collect();
        self.reduce(&w)
    }
}
