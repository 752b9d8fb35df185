//! Unsigned Stirling numbers of the first kind and the closed form they give
//! for the low coefficients of the reduced Artin-Hasse series.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rings::{CoeffRing, Prime, PrimeField, Residue};

/// Triangle `s[n][i]`, `0 <= i <= n <= n_max`, with
/// `y (y+1) ... (y+n-1) = Σ_i s[n][i] y^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    /// Built by `s[n+1][k] = s[n][k-1] + n s[n][k]`.
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for n in 0..n_max {
            let prev = &rows[n];
            let mut next = vec![BigUint::zero(); n + 2];
            for (k, slot) in next.iter_mut().enumerate() {
                if k >= 1 {
                    *slot += &prev[k - 1];
                }
                if k <= n {
                    *slot += &prev[k] * BigUint::from(n);
                }
            }
            rows.push(next);
        }
        StirlingTable { rows }
    }

    /// Built by multiplying out the rising factorials directly.
    pub fn from_rising_factorials(n_max: usize) -> Self {
        let rows = (0..=n_max)
            .map(|n| {
                let mut poly = vec![BigUint::one()];
                for c in 0..n {
                    // poly *= (y + c)
                    let mut next = vec![BigUint::zero(); poly.len() + 1];
                    for (i, a) in poly.iter().enumerate() {
                        next[i + 1] += a;
                        next[i] += a * BigUint::from(c);
                    }
                    poly = next;
                }
                poly
            })
            .collect();
        StirlingTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, i: usize) -> Result<&BigUint> {
        self.rows.get(n).and_then(|row| row.get(i)).ok_or_else(|| {
            Error::IndexOutOfRange(format!("stirling({n}, {i}) with n_max = {}", self.n_max()))
        })
    }

    pub fn row(&self, n: usize) -> Result<&[BigUint]> {
        self.rows
            .get(n)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::IndexOutOfRange(format!("row {n} with n_max = {}", self.n_max())))
    }

    fn get_mod(&self, n: usize, i: usize, field: PrimeField) -> Result<Residue> {
        let v = self.get(n, i)? % BigUint::from(field.prime().get());
        Ok(field.from_i64(v.to_i64().expect("residue fits")))
    }

    /// Checks `Σ_{t=m}^{n} s[n][t] binom(t, m) = s[n+1][m+1]`.
    pub fn check_binomial_identity(&self, n: usize, m: usize) -> Result<bool> {
        if m > n {
            return Err(Error::IndexOutOfRange(format!("m = {m} > n = {n}")));
        }
        let lhs: BigUint = (m..=n)
            .map(|t| Ok(self.get(n, t)? * binomial(BigUint::from(t), BigUint::from(m))))
            .sum::<Result<BigUint>>()?;
        Ok(&lhs == self.get(n + 1, m + 1)?)
    }
}

/// Unsigned Stirling number of the first kind.
pub fn stirling_first(n: usize, i: usize) -> Result<BigUint> {
    if i > n {
        return Err(Error::IndexOutOfRange(format!("stirling({n}, {i})")));
    }
    StirlingTable::new(n).get(n, i).cloned()
}

/// Coefficient `a_{rp+k}` of the reduced Artin-Hasse series from the values
/// `c[j] = c_{jp}`, `0 <= j < p`:
///
/// ```text
/// a_{rp+k} = (-1)^{k+1} Σ_{j=0}^{r} s[p-k][j+1] c_{(r-j)p}
/// ```
///
/// The caller supplies `c` explicitly; with the reduced series in hand,
/// `c_{jp} = a_{jp}` for `j < p - 1` and `c_{(p-1)p} = a_{(p-1)p} + 1`
/// (see [`c_values`]).
pub fn closed_form_coefficient(
    table: &StirlingTable,
    p: Prime,
    r: usize,
    k: usize,
    c: &[Residue],
) -> Result<Residue> {
    p.require_odd()?;
    let pu = p.get() as usize;
    if r >= pu || k >= pu {
        return Err(Error::IndexOutOfRange(format!(
            "r = {r}, k = {k} must be below p = {pu}"
        )));
    }
    if c.len() != pu {
        return Err(Error::IndexOutOfRange(format!(
            "expected {pu} values c_jp, got {}",
            c.len()
        )));
    }
    let field = PrimeField(p);
    if let Some(bad) = c.iter().find(|x| !field.contains(x)) {
        return Err(Error::RingMismatch {
            left: field.name(),
            right: format!("F_{}", bad.modulus()),
        });
    }
    let mut acc = field.zero();
    // s[n][i] = 0 for i > n
    for j in 0..=r.min(pu - k - 1) {
        let s = table.get_mod(pu - k, j + 1, field)?;
        acc = field.add(&acc, &field.mul(&s, &c[r - j]));
    }
    Ok(if k % 2 == 1 { acc } else { field.neg(&acc) })
}

/// The values `c_{jp}`, `0 <= j < p`, read off the coefficients `a_n` of the
/// reduced series (which must reach degree `(p-1)p`). `adjust` controls the
/// `+1` at `j = p - 1`; only `adjust = true` gives the correct formula.
pub fn c_values(a: &[Residue], p: Prime, adjust: bool) -> Result<Vec<Residue>> {
    let pu = p.get() as usize;
    let field = PrimeField(p);
    let needed = (pu - 1) * pu + 1;
    if a.len() < needed {
        return Err(Error::InsufficientPrecision {
            got: a.len(),
            required: needed,
        });
    }
    let mut c: Vec<Residue> = (0..pu).map(|j| a[j * pu]).collect();
    if adjust {
        c[pu - 1] = field.add(&c[pu - 1], &field.one());
    }
    Ok(c)
}
