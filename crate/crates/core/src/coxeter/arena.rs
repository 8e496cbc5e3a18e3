use std::collections::HashMap;

use super::{CoxeterSystem, Element, Generator};

pub(crate) type Id = u32;

const UNSET: Id = Id::MAX;

/// Interned elements with a lazily filled left-multiplication table.
///
/// Hot loops (KL recursion, structure constants) work on ids so that each
/// product `s * x` is normalized once.
#[derive(Debug, Clone)]
pub(crate) struct Arena {
    sys: CoxeterSystem,
    elems: Vec<Element>,
    index: HashMap<Element, Id>,
    left: Vec<Id>,
}

impl Arena {
    pub fn new(sys: CoxeterSystem) -> Self {
        let mut arena = Arena {
            sys,
            elems: Vec::new(),
            index: HashMap::new(),
            left: Vec::new(),
        };
        arena.intern(&Element::identity());
        arena
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn intern(&mut self, x: &Element) -> Id {
        if let Some(&id) = self.index.get(x) {
            return id;
        }
        let id = self.elems.len() as Id;
        self.elems.push(x.clone());
        self.index.insert(x.clone(), id);
        self.left.extend(std::iter::repeat_n(UNSET, self.sys.rank()));
        id
    }

    pub fn lookup(&self, x: &Element) -> Option<Id> {
        self.index.get(x).copied()
    }

    #[inline]
    pub fn get(&self, id: Id) -> &Element {
        &self.elems[id as usize]
    }

    #[inline]
    pub fn length(&self, id: Id) -> usize {
        self.elems[id as usize].length()
    }

    /// `s * x`.
    pub fn lmul(&mut self, s: Generator, x: Id) -> Id {
        let slot = x as usize * self.sys.rank() + s.index();
        let cached = self.left[slot];
        if cached != UNSET {
            return cached;
        }
        let product = self.sys.lmul_gen(s, &self.elems[x as usize]);
        let id = self.intern(&product);
        self.left[slot] = id;
        self.left[id as usize * self.sys.rank() + s.index()] = x;
        id
    }

    pub fn is_left_descent(&mut self, s: Generator, x: Id) -> bool {
        let sx = self.lmul(s, x);
        self.length(sx) < self.length(x)
    }
}
