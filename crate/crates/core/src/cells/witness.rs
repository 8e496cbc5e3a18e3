use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Element, Generator};
use crate::error::{Error, Result};
use crate::hecke::lines_of_length;
use crate::klpoly::KlTable;
use crate::wordgeom::is_segment_in_word;

/// An occurrence of the move-B pattern `w = s1 s2 u t1 t2 x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveBInstance {
    pub s: (Generator, Generator),
    pub u: Vec<Generator>,
    pub t: (Generator, Generator),
    pub x: Vec<Generator>,
}

impl MoveBInstance {
    pub fn word(&self) -> Vec<Generator> {
        let mut w = vec![self.s.0, self.s.1];
        w.extend(&self.u);
        w.extend([self.t.0, self.t.1]);
        w.extend(&self.x);
        w
    }

    /// `w0 = t1 t2 x`.
    pub fn w0(&self, sys: &CoxeterSystem) -> Element {
        let mut w = vec![self.t.0, self.t.1];
        w.extend(&self.x);
        sys.reduce(&w)
    }

    /// `w* = t1 u^{-1} s1 s2 u t1 t2 x`, as a word.
    pub fn w_star_word(&self) -> Vec<Generator> {
        let mut w = vec![self.t.0];
        w.extend(self.u.iter().rev());
        w.extend(self.word());
        w
    }

    /// Checks the pattern: both pairs commute, `w` is reduced and `u` is a
    /// segment of `w`. With `u` empty, `t1` must commute with neither `s1` nor
    /// `s2`; otherwise the prefix reorders into a move-A pattern.
    pub fn validate(&self, sys: &CoxeterSystem) -> Result<()> {
        let w = self.word();
        let k = self.u.len();
        let ok = self.s.0 != self.s.1
            && self.t.0 != self.t.1
            && sys.commutes(self.s.0, self.s.1)
            && sys.commutes(self.t.0, self.t.1)
            && sys.is_reduced(&w)
            && if k == 0 {
                !sys.commutes(self.s.0, self.t.0) && !sys.commutes(self.s.1, self.t.0)
            } else {
                is_segment_in_word(sys, &w, 2, 2 + k)
            };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{:?} is not a move-B pattern",
                w.iter().map(|g| g.index() + 1).collect::<Vec<_>>()
            )))
        }
    }
}

/// `mu(w0, w*)` from the KL polynomial `P_{w0, w*}`.
pub fn mu_witness_move_b(table: &mut KlTable, inst: &MoveBInstance) -> Result<i64> {
    let sys = table.system().clone();
    inst.validate(&sys)?;
    let star_word = inst.w_star_word();
    let star = sys.reduce(&star_word);
    if star.length() != star_word.len() {
        return Err(Error::Verification(format!("w* = {star} is shorter than its defining word")));
    }
    Ok(table.mu(&inst.w0(&sys), &star))
}

/// All move-B patterns with `l(u) <= max_u` and `l(x) <= max_x`; `x` runs
/// over reduced words with `w` reduced. `s` pairs are taken with `s1 < s2`.
pub fn move_b_instances(sys: &CoxeterSystem, max_u: usize, max_x: usize) -> Vec<MoveBInstance> {
    let mut pairs = Vec::new();
    for (a, b) in sys.commuting_pairs() {
        pairs.push((a, b));
    }
    let mut xs: Vec<Vec<Generator>> = vec![Vec::new()];
    let mut layer: Vec<Vec<Generator>> = vec![Vec::new()];
    for _ in 0..max_x {
        let mut next = Vec::new();
        for w in &layer {
            for g in sys.generators() {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        xs.extend(next.iter().cloned());
        layer = next;
    }
    let mut out = Vec::new();
    for k in 0..=max_u {
        for u in lines_of_length(sys, k) {
            for &s in &pairs {
                for &(a, b) in &pairs {
                    for t in [(a, b), (b, a)] {
                        for x in &xs {
                            let inst = MoveBInstance {
                                s,
                                u: u.clone(),
                                t,
                                x: x.clone(),
                            };
                            if inst.validate(sys).is_ok() {
                                out.push(inst);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(l: usize) -> Generator {
        Generator((l - 1) as u8)
    }

    #[test]
    fn witness_examples() {
        let sys = CoxeterSystem::polygon(5).unwrap();
        let mut table = KlTable::new(&sys);
        let inst = MoveBInstance {
            s: (g(1), g(2)),
            u: vec![g(4)],
            t: (g(1), g(2)),
            x: vec![],
        };
        assert_eq!(mu_witness_move_b(&mut table, &inst).unwrap(), 1);
        let empty_u = MoveBInstance {
            s: (g(1), g(2)),
            u: vec![],
            t: (g(4), g(5)),
            x: vec![],
        };
        assert_eq!(mu_witness_move_b(&mut table, &empty_u).unwrap(), 1);
        let bad = MoveBInstance {
            s: (g(1), g(2)),
            u: vec![g(4)],
            t: (g(2), g(3)),
            x: vec![],
        };
        assert!(mu_witness_move_b(&mut table, &bad).is_err());
    }

    #[test]
    fn small_instances() {
        let sys = CoxeterSystem::polygon(5).unwrap();
        let mut table = KlTable::new(&sys);
        let insts = move_b_instances(&sys, 2, 1);
        assert!(insts.iter().any(|i| i.u.len() == 2));
        for inst in &insts {
            assert_eq!(mu_witness_move_b(&mut table, inst).unwrap(), 1, "{inst:?}");
        }
    }
}
