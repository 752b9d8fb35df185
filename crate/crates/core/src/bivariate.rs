//! Bivariate series over F_p, truncated by total degree.

use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{CoeffRing, PrimeField, Residue};
use crate::series::ModPSeries;

/// Series in `X, Y` known modulo all monomials of total degree `>= D`.
///
/// Coefficients are stored by increasing total degree `t`, and within one
/// total degree by increasing power of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarSeries {
    field: PrimeField,
    total_precision: usize,
    coeffs: Vec<Residue>,
}

#[inline]
fn offset(t: usize) -> usize {
    t * (t + 1) / 2
}

#[inline]
fn index(i: usize, j: usize) -> usize {
    offset(i + j) + i
}

/// Outcome of [`support_multiple_of_p`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportCheck {
    pub holds: bool,
    /// Lexicographically least `(i, j)` with a nonzero coefficient and `p ∤ i + j`.
    pub offender: Option<(usize, usize)>,
    /// Smallest offending total degree, with the least power of `X` there.
    pub first_offending_term: Option<(usize, usize)>,
}

impl BivarSeries {
    pub fn zero(field: PrimeField, total_precision: usize) -> Self {
        BivarSeries {
            field,
            total_precision,
            coeffs: vec![field.zero(); offset(total_precision)],
        }
    }

    pub fn one(field: PrimeField, total_precision: usize) -> Self {
        let mut s = Self::zero(field, total_precision);
        if total_precision > 0 {
            s.coeffs[0] = field.one();
        }
        s
    }

    /// Builds from `(i, j, c)` monomials; terms of total degree `>= D` are dropped.
    pub fn from_terms(
        field: PrimeField,
        total_precision: usize,
        terms: &[(usize, usize, i64)],
    ) -> Self {
        let mut s = Self::zero(field, total_precision);
        for &(i, j, c) in terms {
            if i + j < total_precision {
                let k = index(i, j);
                s.coeffs[k] = field.add(&s.coeffs[k], &field.from_i64(c));
            }
        }
        s
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn total_precision(&self) -> usize {
        self.total_precision
    }

    /// Coefficient of `X^i Y^j`; zero outside the known range.
    pub fn coeff(&self, i: usize, j: usize) -> Residue {
        if i + j < self.total_precision {
            self.coeffs[index(i, j)]
        } else {
            self.field.zero()
        }
    }

    /// Nonzero terms as `(i, j, c)`, by total degree then power of `X`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Residue)> + '_ {
        (0..self.total_precision).flat_map(move |t| {
            (0..=t).filter_map(move |i| {
                let c = self.coeffs[index(i, t - i)];
                (!c.is_zero()).then_some((i, t - i, c))
            })
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
        let d = self.total_precision.min(other.total_precision);
        let n = offset(d);
        let coeffs = (0..n)
            .map(|k| self.field.add(&self.coeffs[k], &other.coeffs[k]))
            .collect();
        Ok(BivarSeries {
            field: self.field,
            total_precision: d,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let d = self.total_precision.min(other.total_precision);
        let n = offset(d);
        let coeffs = (0..n)
            .map(|k| self.field.sub(&self.coeffs[k], &other.coeffs[k]))
            .collect();
        Ok(BivarSeries {
            field: self.field,
            total_precision: d,
            coeffs,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let d = self.total_precision.min(other.total_precision);
        let f = self.field;
        let rhs: Vec<(usize, usize, Residue)> =
            other.terms().filter(|(i, j, _)| i + j < d).collect();
        let mut out = Self::zero(f, d);
        for (i, j, a) in self.terms() {
            let t = i + j;
            if t >= d {
                break;
            }
            for &(k, l, b) in &rhs {
                if t + k + l >= d {
                    break;
                }
                let idx = index(i + k, j + l);
                out.coeffs[idx] = f.add(&out.coeffs[idx], &f.mul(&a, &b));
            }
        }
        Ok(out)
    }

    /// Inverse up to total degree `D`; the constant term must be nonzero.
    pub fn invert(&self) -> Result<Self> {
        let d = self.total_precision;
        let f = self.field;
        if d == 0 {
            return Ok(self.clone());
        }
        let c0_inv = f
            .inv(&self.coeffs[0])
            .map_err(|_| Error::NonUnitConstantTerm)?;
        let higher: Vec<(usize, usize, Residue)> =
            self.terms().filter(|&(i, j, _)| i + j > 0).collect();
        let mut out = Self::zero(f, d);
        out.coeffs[0] = c0_inv;
        for t in 1..d {
            for i in 0..=t {
                let j = t - i;
                let mut acc = f.zero();
                for &(a, b, c) in &higher {
                    if a + b > t {
                        break;
                    }
                    if a <= i && b <= j {
                        acc = f.add(&acc, &f.mul(&c, &out.coeffs[index(i - a, j - b)]));
                    }
                }
                out.coeffs[index(i, j)] = f.neg(&f.mul(&acc, &c0_inv));
            }
        }
        Ok(out)
    }

    /// Swaps the roles of `X` and `Y`.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.field, self.total_precision);
        for (i, j, c) in self.terms() {
            out.coeffs[index(j, i)] = c;
        }
        out
    }
}

impl fmt::Display for BivarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*X^{i}*Y^{j}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(deg {})", self.total_precision)
    }
}

/// Binomial coefficients modulo p for rows `0..rows`, by Pascal's rule.
fn pascal_mod(field: PrimeField, rows: usize) -> Vec<Vec<Residue>> {
    let mut table: Vec<Vec<Residue>> = Vec::with_capacity(rows);
    for n in 0..rows {
        let mut row = vec![field.one(); n + 1];
        for k in 1..n {
            row[k] = field.add(&table[n - 1][k - 1], &table[n - 1][k]);
        }
        table.push(row);
    }
    table
}

/// `f(X + Y)`, truncated at total degree `min(D, precision of f)`.
pub fn bivar_from_sum(f: &ModPSeries, total_precision: usize) -> BivarSeries {
    let field = *f.ring();
    let d = total_precision.min(f.precision());
    let binom = pascal_mod(field, d);
    let mut out = BivarSeries::zero(field, d);
    for (t, row) in binom.iter().enumerate().take(d) {
        let c = f.coeff(t);
        if c.is_zero() {
            continue;
        }
        for (i, b) in row.iter().enumerate().take(t + 1) {
            out.coeffs[index(i, t - i)] = field.mul(&c, b);
        }
    }
    out
}

/// `f(X) g(Y)`, truncated at total degree `min(D, precisions)`.
pub fn bivar_outer(f: &ModPSeries, g: &ModPSeries, total_precision: usize) -> Result<BivarSeries> {
    let field = *f.ring();
    if field != *g.ring() {
        return Err(Error::RingMismatch {
            left: field.name(),
            right: g.ring().name(),
        });
    }
    let d = total_precision.min(f.precision()).min(g.precision());
    let mut out = BivarSeries::zero(field, d);
    for t in 0..d {
        for i in 0..=t {
            out.coeffs[index(i, t - i)] = field.mul(&f.coeff(i), &g.coeff(t - i));
        }
    }
    Ok(out)
}

/// The defect `S(X+Y)^{-1} S(X) S(Y)` of `S` from being a homomorphism.
pub fn defect_series(s: &ModPSeries, total_precision: usize) -> Result<BivarSeries> {
    if s.precision() > 0 && s.coeff(0).is_zero() {
        return Err(Error::NonUnitConstantTerm);
    }
    let sum = bivar_from_sum(s, total_precision).invert()?;
    let product = bivar_outer(s, s, total_precision)?;
    sum.mul(&product)
}

/// Whether every nonzero coefficient sits at a total degree divisible by p.
pub fn support_multiple_of_p(f: &BivarSeries) -> SupportCheck {
    let p = f.field.prime().get() as usize;
    let bad = |i: usize, j: usize| !(i + j).is_multiple_of(p) && !f.coeff(i, j).is_zero();
    let first_offending_term = f
        .terms()
        .map(|(i, j, _)| (i, j))
        .find(|&(i, j)| (i + j) % p != 0);
    let offender = (0..f.total_precision)
        .flat_map(|i| (0..f.total_precision - i).map(move |j| (i, j)))
        .find(|&(i, j)| bad(i, j));
    SupportCheck {
        holds: offender.is_none(),
        offender,
        first_offending_term,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(p: u64, d: usize, terms: &[(usize, usize, i64)]) -> BivarSeries {
        BivarSeries::from_terms(fp(p), d, terms)
    }

    #[test]
    fn product_examples() {
        let a = poly(7, 5, &[(1, 0, 1), (0, 1, 1)]);
        let b = poly(7, 5, &[(1, 0, 1), (0, 1, -1)]);
        assert_eq!(a.mul(&b).unwrap(), poly(7, 5, &[(2, 0, 1), (0, 2, -1)]));
        assert_eq!(a.add(&BivarSeries::zero(fp(7), 5)).unwrap(), a);

        let x_plus_y = poly(5, 10, &[(1, 0, 1), (0, 1, 1)]);
        let mut power = BivarSeries::one(fp(5), 10);
        for _ in 0..5 {
            power = power.mul(&x_plus_y).unwrap();
        }
        assert_eq!(power, poly(5, 10, &[(5, 0, 1), (0, 5, 1)]));
    }

    #[test]
    fn mismatched_fields() {
        let a = BivarSeries::one(fp(3), 4);
        let b = BivarSeries::one(fp(5), 4);
        assert!(matches!(a.mul(&b), Err(Error::RingMismatch { .. })));
        assert!(matches!(a.add(&b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn from_sum_examples() {
        let sq = ModPSeries::from_ints(fp(7), &[0, 0, 1, 0, 0]);
        assert_eq!(
            bivar_from_sum(&sq, 5),
            poly(7, 5, &[(2, 0, 1), (1, 1, 2), (0, 2, 1)])
        );
        let one = ModPSeries::one(fp(7), 5);
        assert_eq!(bivar_from_sum(&one, 5), BivarSeries::one(fp(7), 5));
        // precision caps the total degree
        assert_eq!(bivar_from_sum(&one, 9).total_precision(), 5);
    }

    #[test]
    fn invert_examples() {
        let f = poly(7, 3, &[(0, 0, 1), (1, 0, -1), (0, 1, -1)]);
        let expected = poly(
            7,
            3,
            &[
                (0, 0, 1),
                (1, 0, 1),
                (0, 1, 1),
                (2, 0, 1),
                (1, 1, 2),
                (0, 2, 1),
            ],
        );
        assert_eq!(f.invert().unwrap(), expected);
        assert_eq!(
            BivarSeries::one(fp(3), 4).invert().unwrap(),
            BivarSeries::one(fp(3), 4)
        );
        let bad = poly(3, 4, &[(1, 0, 1)]);
        assert_eq!(bad.invert().unwrap_err(), Error::NonUnitConstantTerm);
    }

    #[test]
    fn support_check_examples() {
        let ok = poly(3, 8, &[(0, 0, 1), (3, 3, 1)]);
        let c = support_multiple_of_p(&ok);
        assert!(c.holds);
        assert_eq!(c.offender, None);

        let x = poly(3, 8, &[(1, 0, 1)]);
        let c = support_multiple_of_p(&x);
        assert!(!c.holds);
        assert_eq!(c.offender, Some((1, 0)));

        // lexicographic order and total-degree order can disagree
        let mixed = poly(3, 8, &[(0, 5, 1), (1, 0, 1)]);
        let c = support_multiple_of_p(&mixed);
        assert_eq!(c.offender, Some((0, 5)));
        assert_eq!(c.first_offending_term, Some((1, 0)));
    }

    #[test]
    fn defect_of_one_is_one() {
        let one = ModPSeries::one(fp(5), 12);
        assert_eq!(
            defect_series(&one, 12).unwrap(),
            BivarSeries::one(fp(5), 12)
        );
        let bad = ModPSeries::from_ints(fp(5), &[0, 1, 0]);
        assert_eq!(
            defect_series(&bad, 3).unwrap_err(),
            Error::NonUnitConstantTerm
        );
    }

    fn any_series(p: u64, n: usize) -> impl Strategy<Value = ModPSeries> {
        prop::collection::vec(0..p as i64, n).prop_map(move |c| ModPSeries::from_ints(fp(p), &c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn from_sum_is_a_ring_homomorphism(
            (f, g) in (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..=16)
                .prop_flat_map(|(p, n)| (any_series(p, n), any_series(p, n)))
        ) {
            let d = f.precision();
            let lhs = bivar_from_sum(&f.mul(&g).unwrap(), d);
            let rhs = bivar_from_sum(&f, d).mul(&bivar_from_sum(&g, d)).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = bivar_from_sum(&f.add(&g).unwrap(), d);
            let rhs = bivar_from_sum(&f, d).add(&bivar_from_sum(&g, d)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn defect_is_symmetric(
            mut s in (prop::sample::select(vec![3u64, 5, 7]), 1usize..=14)
                .prop_flat_map(|(p, n)| any_series(p, n))
        ) {
            let field = *s.ring();
            s.set_coeff(0, field.one()).unwrap();
            let d = defect_series(&s, s.precision()).unwrap();
            prop_assert_eq!(d.transpose(), d);
        }

        #[test]
        fn invert_round_trip(
            mut s in (prop::sample::select(vec![2u64, 3, 5]), 1usize..=12)
                .prop_flat_map(|(p, n)| any_series(p, n)),
            c0 in 1i64..5,
        ) {
            let field = *s.ring();
            s.set_coeff(0, field.from_i64(c0)).unwrap();
            if !s.coeff(0).is_zero() {
                let b = bivar_from_sum(&s, s.precision()).mul(&bivar_outer(&s, &s, s.precision()).unwrap()).unwrap();
                let d = b.total_precision();
                prop_assert_eq!(b.mul(&b.invert().unwrap()).unwrap(), BivarSeries::one(field, d));
            }
        }
    }
}
