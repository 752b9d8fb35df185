//! Polynomials in a parameter `α` and a variable `X` over F_p, and the
//! generalized Laguerre polynomial of degree `p - 1`,
//!
//! ```text
//! L(α, X) = Σ_{k=0}^{p-1} binom(α - 1, p - 1 - k) (-X)^k / k!
//! ```
//!
//! Everything here is exact. Truncation only enters once `α` is replaced
//! by a power series, in [`ParamPoly::specialize_alpha_series`].

use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{CoeffRing, Prime, PrimeField, Residue};
use crate::series::ModPSeries;

/// An element of `F_p[α, X]`.
///
/// Stored X-major: `by_x[k]` is the coefficient of `X^k`, itself a
/// polynomial in `α` listed by increasing degree. The representation is
/// kept trimmed, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPoly {
    field: PrimeField,
    by_x: Vec<Vec<Residue>>,
}

impl ParamPoly {
    pub fn zero(field: PrimeField) -> Self {
        ParamPoly {
            field,
            by_x: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, c: Residue) -> Self {
        ParamPoly {
            field,
            by_x: vec![vec![c]],
        }
        .normalized()
    }

    pub fn one(field: PrimeField) -> Self {
        Self::constant(field, field.one())
    }

    pub fn alpha(field: PrimeField) -> Self {
        Self::from_terms(field, &[(1, 0, 1)])
    }

    pub fn x(field: PrimeField) -> Self {
        Self::from_terms(field, &[(0, 1, 1)])
    }

    /// Sum of monomials `c α^d X^k` given as `(d, k, c)`.
    pub fn from_terms(field: PrimeField, terms: &[(usize, usize, i64)]) -> Self {
        let mut p = Self::zero(field);
        for &(d, k, c) in terms {
            p.add_term(d, k, field.from_i64(c));
        }
        p.normalized()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    fn add_term(&mut self, d: usize, k: usize, c: Residue) {
        if self.by_x.len() <= k {
            self.by_x.resize(k + 1, Vec::new());
        }
        let row = &mut self.by_x[k];
        if row.len() <= d {
            row.resize(d + 1, self.field.zero());
        }
        row[d] = self.field.add(&row[d], &c);
    }

    fn normalized(mut self) -> Self {
        for row in &mut self.by_x {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.by_x.last().is_some_and(|r| r.is_empty()) {
            self.by_x.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.by_x.is_empty()
    }

    /// Coefficient of `α^d X^k`.
    pub fn coeff(&self, d: usize, k: usize) -> Residue {
        self.by_x
            .get(k)
            .and_then(|row| row.get(d))
            .copied()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Coefficient of `X^k` as a polynomial in `α` (ascending, trimmed).
    pub fn x_coefficient(&self, k: usize) -> &[Residue] {
        self.by_x.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Degree in `X`; `None` for the zero polynomial.
    pub fn x_degree(&self) -> Option<usize> {
        self.by_x.len().checked_sub(1)
    }

    pub fn alpha_degree(&self) -> Option<usize> {
        self.by_x
            .iter()
            .map(Vec::len)
            .max()
            .and_then(|l| l.checked_sub(1))
    }

    /// Nonzero terms as `(d, k, c)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Residue)> + '_ {
        self.by_x.iter().enumerate().flat_map(|(k, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(d, &c)| (d, k, c))
        })
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.field.name(),
                right: other.field.name(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (d, k, c) in other.terms() {
            out.add_term(d, k, c);
        }
        Ok(out.normalized())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.from_i64(-1))
    }

    pub fn scale(&self, c: Residue) -> Self {
        let f = self.field;
        ParamPoly {
            field: f,
            by_x: self
                .by_x
                .iter()
                .map(|row| row.iter().map(|a| f.mul(a, &c)).collect())
                .collect(),
        }
        .normalized()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let f = self.field;
        let mut out = Self::zero(f);
        let rhs: Vec<_> = other.terms().collect();
        for (d1, k1, a) in self.terms() {
            for &(d2, k2, b) in &rhs {
                out.add_term(d1 + d2, k1 + k2, f.mul(&a, &b));
            }
        }
        Ok(out.normalized())
    }

    /// `(α, X) -> (s_α α, s_X X)` with signs `±1`.
    pub fn flip_signs(&self, negate_alpha: bool, negate_x: bool) -> Self {
        let f = self.field;
        let mut out = Self::zero(f);
        for (d, k, c) in self.terms() {
            let odd = (negate_alpha && d % 2 == 1) ^ (negate_x && k % 2 == 1);
            out.add_term(d, k, if odd { c.neg() } else { c });
        }
        out.normalized()
    }

    /// Substitutes `α = a0`, giving an exact polynomial in `X`.
    ///
    /// The returned series has precision one more than the X-degree, so it
    /// carries every coefficient.
    pub fn specialize_alpha_scalar(&self, a0: Residue) -> Result<ModPSeries> {
        if !self.field.contains(&a0) {
            return Err(Error::RingMismatch {
                left: self.field.name(),
                right: format!("F_{}", a0.modulus()),
            });
        }
        let f = self.field;
        let n = self.by_x.len().max(1);
        Ok(ModPSeries::from_fn(f, n, |k| {
            self.x_coefficient(k)
                .iter()
                .rev()
                .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, &a0), c))
        }))
    }

    /// Substitutes `α = A(X)` for a series with `A(0) = 0`, at A's precision.
    pub fn specialize_alpha_series(&self, a: &ModPSeries) -> Result<ModPSeries> {
        let f = self.field;
        if *a.ring() != f {
            return Err(Error::RingMismatch {
                left: f.name(),
                right: a.ring().name(),
            });
        }
        let n = a.precision();
        if n > 0 && !a.coeff(0).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let Some(top) = self.alpha_degree() else {
            return Ok(ModPSeries::zero(f, n));
        };
        // Horner in α: Σ_d A^d P_d(X), with P_d(X) = Σ_k c[d][k] X^k.
        let slice = |d: usize| ModPSeries::from_fn(f, n, |k| self.coeff(d, k));
        let mut acc = slice(top);
        for d in (0..top).rev() {
            acc = acc.mul(a)?.add(&slice(d))?;
        }
        Ok(acc)
    }

    /// Rewrites `X^p -> α^p - α` until the X-degree is below p.
    pub fn reduce_mod_weierstrass(&self) -> Self {
        let f = self.field;
        let p = f.prime().get() as usize;
        let mut out = self.clone();
        let Some(top) = out.x_degree() else {
            return out;
        };
        for k in (p..=top).rev() {
            let row = std::mem::take(&mut out.by_x[k]);
            for (d, c) in row.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                out.add_term(d + p, k - p, c);
                out.add_term(d + 1, k - p, c.neg());
            }
        }
        out.normalized()
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            match d {
                0 => {}
                1 => write!(f, "*a")?,
                _ => write!(f, "*a^{d}")?,
            }
            match k {
                0 => {}
                1 => write!(f, "*X")?,
                _ => write!(f, "*X^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `A (A-1) ... (A-m+1) / m!`, defined for `m < p`.
pub fn poly_binomial(a: &ParamPoly, m: u64) -> Result<ParamPoly> {
    let f = a.field();
    let p = f.prime().get();
    if m >= p {
        return Err(Error::FactorialNotInvertible { m, prime: p });
    }
    let mut acc = ParamPoly::one(f);
    let mut factorial = f.one();
    for i in 0..m {
        let factor = a.sub(&ParamPoly::constant(f, f.from_i64(i as i64)))?;
        acc = acc.mul(&factor)?;
        factorial = f.mul(&factorial, &f.from_i64(i as i64 + 1));
    }
    Ok(acc.scale(f.inv(&factorial)?))
}

/// The Laguerre polynomial of degree `p - 1` over F_p.
pub fn laguerre_pm1(p: Prime) -> ParamPoly {
    let f = PrimeField(p);
    let top = p.get() - 1;
    let alpha_minus_one = ParamPoly::from_terms(f, &[(1, 0, 1), (0, 0, -1)]);
    let mut out = ParamPoly::zero(f);
    let mut inv_factorial = f.one();
    let mut x_power = ParamPoly::one(f);
    for k in 0..=top {
        if k > 0 {
            inv_factorial = f.mul(
                &inv_factorial,
                &f.inv(&f.from_i64(k as i64)).expect("k < p"),
            );
            x_power = x_power.mul(&ParamPoly::x(f)).expect("same field");
        }
        let sign = if k % 2 == 0 { f.one() } else { f.from_i64(-1) };
        let binom = poly_binomial(&alpha_minus_one, top - k).expect("top - k < p");
        let term = binom
            .mul(&x_power)
            .expect("same field")
            .scale(f.mul(&sign, &inv_factorial));
        out = out.add(&term).expect("same field");
    }
    out
}
