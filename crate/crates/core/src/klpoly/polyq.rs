use std::fmt;

use smallvec::SmallVec;

use crate::hecke::laurent::{checked_add, checked_mul};
use crate::hecke::LaurentPoly;

/// Integer polynomial in `q`, dense from `q^0`, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: SmallVec<[i64; 4]>,
}

impl PolyQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_coeffs(&[1])
    }

    /// `coeffs[i]` is the coefficient of `q^i`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = PolyQ {
            coeffs: coeffs.iter().copied().collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// `self += factor * q^shift * other`.
    pub fn add_scaled(&mut self, other: &PolyQ, factor: i64, shift: usize) {
        if other.is_zero() || factor == 0 {
            return;
        }
        let need = other.coeffs.len() + shift;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, 0);
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            self.coeffs[i + shift] = checked_add(self.coeffs[i + shift], checked_mul(c, factor));
        }
        self.trim();
    }

    /// Substitutes `q = v^2`.
    pub fn to_laurent(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (i, &c) in self.coeffs.iter().enumerate() {
            p.add_monomial(c, 2 * i as i32);
        }
        p
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let abs = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            }
            first = false;
            match (d, abs) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, a) => write!(f, "{a}q")?,
                (d, 1) => write!(f, "q^{d}")?,
                (d, a) => write!(f, "{a}q^{d}")?,
            }
        }
        Ok(())
    }
}
