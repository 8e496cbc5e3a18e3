use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use smallvec::SmallVec;

#[inline]
pub(crate) fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer coefficient overflow")
}

#[inline]
pub(crate) fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer coefficient overflow")
}

/// Integer Laurent polynomial in `v = q^{1/2}`.
///
/// Stored densely from the lowest nonzero exponent; the first and last stored
/// coefficients are nonzero, and the zero polynomial stores nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: SmallVec<[i64; 6]>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let mut coeffs = SmallVec::new();
        coeffs.push(c);
        LaurentPoly { low: e, coeffs }
    }

    /// `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `q = v^2`.
    pub fn q() -> Self {
        Self::monomial(1, 2)
    }

    /// `v - v^{-1} = q^{1/2} - q^{-1/2}`.
    pub fn v_minus_inv() -> Self {
        Self::from_terms(&[(1, 1), (-1, -1)])
    }

    /// Builds from `(coefficient, exponent)` pairs; repeated exponents add up.
    pub fn from_terms(terms: &[(i64, i32)]) -> Self {
        let mut p = Self::zero();
        for &(c, e) in terms {
            p.add_monomial(c, e);
        }
        p
    }

    /// Coefficients `c_0, c_1, ..` at `v^low, v^{low+1}, ..`.
    pub fn from_dense(low: i32, coeffs: &[i64]) -> Self {
        let mut p = LaurentPoly {
            low,
            coeffs: coeffs.iter().copied().collect(),
        };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exponent(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exponent(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> i64 {
        let i = e - self.low;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    /// Membership in `Z[v]`.
    pub fn is_in_a_plus(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    pub fn add_monomial(&mut self, c: i64, e: i32) {
        if c == 0 {
            return;
        }
        if self.is_zero() {
            *self = Self::monomial(c, e);
            return;
        }
        let high = self.low + self.coeffs.len() as i32 - 1;
        if e < self.low {
            let pad = (self.low - e) as usize;
            let mut coeffs: SmallVec<[i64; 6]> = SmallVec::with_capacity(pad + self.coeffs.len());
            coeffs.push(c);
            coeffs.extend(std::iter::repeat_n(0, pad - 1));
            coeffs.extend_from_slice(&self.coeffs);
            self.coeffs = coeffs;
            self.low = e;
        } else if e > high {
            self.coeffs.extend(std::iter::repeat_n(0, (e - high - 1) as usize));
            self.coeffs.push(c);
        } else {
            let i = (e - self.low) as usize;
            self.coeffs[i] = checked_add(self.coeffs[i], c);
            self.normalize();
        }
    }

    /// `self += factor * a * v^shift`.
    pub fn add_scaled(&mut self, a: &LaurentPoly, factor: i64, shift: i32) {
        if a.is_zero() || factor == 0 {
            return;
        }
        let a_low = a.low + shift;
        let a_high = a_low + a.coeffs.len() as i32 - 1;
        if self.is_zero() {
            self.low = a_low;
            self.coeffs = a.coeffs.iter().map(|&c| checked_mul(c, factor)).collect();
            return;
        }
        let low = self.low.min(a_low);
        let high = (self.low + self.coeffs.len() as i32 - 1).max(a_high);
        if low < self.low || high >= self.low + self.coeffs.len() as i32 {
            let mut coeffs: SmallVec<[i64; 6]> = SmallVec::from_elem(0, (high - low + 1) as usize);
            let off = (self.low - low) as usize;
            coeffs[off..off + self.coeffs.len()].copy_from_slice(&self.coeffs);
            self.coeffs = coeffs;
            self.low = low;
        }
        let off = (a_low - self.low) as usize;
        for (i, &c) in a.coeffs.iter().enumerate() {
            self.coeffs[off + i] = checked_add(self.coeffs[off + i], checked_mul(c, factor));
        }
        self.normalize();
    }

    /// `self += a * b`.
    pub fn add_product(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        for (e, c) in b.terms() {
            self.add_scaled(a, c, e);
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> LaurentPoly {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: i64) -> LaurentPoly {
        let mut out = Self::zero();
        out.add_scaled(self, c, 0);
        out
    }

    /// The ring involution `v -> v^{-1}`.
    pub fn bar(&self) -> LaurentPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let high = self.low + self.coeffs.len() as i32 - 1;
        LaurentPoly {
            low: -high,
            coeffs: self.coeffs.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (e, abs) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "v")?,
                (1, a) => write!(f, "{a}v")?,
                (e, 1) => write!(f, "v^{e}")?,
                (e, a) => write!(f, "{a}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, 1, 0);
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, -1, 0);
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, 1, 0);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled(rhs, -1, 0);
    }
}
