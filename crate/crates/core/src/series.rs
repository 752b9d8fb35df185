//! Dense truncated power series.
//!
//! A [`TruncSeries`] of precision `N` is a series known modulo `X^N`: it
//! stores exactly `N` coefficients. Binary operations return a result of
//! the smaller operand precision, so comparing two series never claims
//! more than both of them know.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rings::{
    reduce_rational_mod_p, BigRational, CoeffRing, Prime, PrimeField, Rationals, Residue,
};

#[derive(Clone, Debug)]
pub struct TruncSeries<R: CoeffRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

/// Series over F_p.
pub type ModPSeries = TruncSeries<PrimeField>;
/// Series over Q.
pub type RationalSeries = TruncSeries<Rationals>;

fn ring_check<R: CoeffRing>(a: &R, b: &R) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch {
            left: a.name(),
            right: b.name(),
        })
    }
}

impl<R: CoeffRing> TruncSeries<R> {
    /// Builds a series whose precision is the length of `coeffs`.
    pub fn from_coeffs(ring: R, coeffs: Vec<R::Elem>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| !ring.contains(c)) {
            return Err(Error::RingMismatch {
                left: ring.name(),
                right: format!("{bad:?}"),
            });
        }
        Ok(TruncSeries { ring, coeffs })
    }

    pub fn from_fn(ring: R, precision: usize, mut f: impl FnMut(usize) -> R::Elem) -> Self {
        let coeffs = (0..precision).map(&mut f).collect();
        TruncSeries { ring, coeffs }
    }

    /// Integer coefficients, mapped into the ring.
    pub fn from_ints(ring: R, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| ring.from_i64(c)).collect();
        TruncSeries { ring, coeffs }
    }

    pub fn zero(ring: R, precision: usize) -> Self {
        let z = ring.zero();
        TruncSeries {
            coeffs: vec![z; precision],
            ring,
        }
    }

    pub fn one(ring: R, precision: usize) -> Self {
        Self::monomial(ring.clone(), ring.one(), 0, precision)
    }

    /// `c * X^degree`, which is zero when `degree >= precision`.
    pub fn monomial(ring: R, c: R::Elem, degree: usize, precision: usize) -> Self {
        let mut s = Self::zero(ring, precision);
        if degree < precision {
            s.coeffs[degree] = c;
        }
        s
    }

    /// The series `X`.
    pub fn x(ring: R, precision: usize) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, 1, precision)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `X^n`; zero at and beyond the precision.
    pub fn coeff(&self, n: usize) -> R::Elem {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: R::Elem) -> Result<()> {
        if !self.ring.contains(&c) {
            return Err(Error::RingMismatch {
                left: self.ring.name(),
                right: format!("{c:?}"),
            });
        }
        match self.coeffs.get_mut(n) {
            Some(slot) => {
                *slot = c;
                Ok(())
            }
            None => Err(Error::IndexOutOfRange(format!(
                "degree {n} at precision {}",
                self.coeffs.len()
            ))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    /// Degrees carrying a nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.ring.is_zero(&self.coeffs[i]))
            .collect()
    }

    /// Keeps the first `precision` coefficients (no-op if already shorter).
    pub fn truncate(&self, precision: usize) -> Self {
        let n = precision.min(self.precision());
        TruncSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ring_check(&self.ring, &other.ring)?;
        let n = self.precision().min(other.precision());
        Ok(Self::from_fn(self.ring.clone(), n, |i| {
            self.ring.add(&self.coeffs[i], &other.coeffs[i])
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        ring_check(&self.ring, &other.ring)?;
        let n = self.precision().min(other.precision());
        Ok(Self::from_fn(self.ring.clone(), n, |i| {
            self.ring.sub(&self.coeffs[i], &other.coeffs[i])
        }))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.ring.clone(), self.precision(), |i| {
            self.ring.neg(&self.coeffs[i])
        })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::from_fn(self.ring.clone(), self.precision(), |i| {
            self.ring.mul(c, &self.coeffs[i])
        })
    }

    /// Cauchy product truncated to the smaller precision.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        ring_check(&self.ring, &other.ring)?;
        let n = self.precision().min(other.precision());
        let ring = &self.ring;
        let mut out = vec![ring.zero(); n];
        let rhs_support: Vec<usize> = (0..n)
            .filter(|&j| !ring.is_zero(&other.coeffs[j]))
            .collect();
        for i in 0..n {
            let a = &self.coeffs[i];
            if ring.is_zero(a) {
                continue;
            }
            for &j in &rhs_support {
                if i + j >= n {
                    break;
                }
                let t = ring.mul(a, &other.coeffs[j]);
                out[i + j] = ring.add(&out[i + j], &t);
            }
        }
        Ok(TruncSeries {
            ring: self.ring.clone(),
            coeffs: out,
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.precision());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Multiplicative inverse modulo `X^N`.
    pub fn invert(&self) -> Result<Self> {
        let ring = &self.ring;
        let n = self.precision();
        if n == 0 {
            return Ok(self.clone());
        }
        let c0_inv = ring
            .inv(&self.coeffs[0])
            .map_err(|_| Error::NonUnitConstantTerm)?;
        let support: Vec<usize> = (1..n).filter(|&j| !ring.is_zero(&self.coeffs[j])).collect();
        let mut out: Vec<R::Elem> = Vec::with_capacity(n);
        out.push(c0_inv.clone());
        for k in 1..n {
            let mut acc = ring.zero();
            for &j in &support {
                if j > k {
                    break;
                }
                acc = ring.add(&acc, &ring.mul(&self.coeffs[j], &out[k - j]));
            }
            out.push(ring.neg(&ring.mul(&acc, &c0_inv)));
        }
        Ok(TruncSeries {
            ring: self.ring.clone(),
            coeffs: out,
        })
    }

    /// Composition `self(inner(X))`, with `inner(0) = 0`.
    pub fn substitute(&self, inner: &Self) -> Result<Self> {
        ring_check(&self.ring, &inner.ring)?;
        let n = self.precision().min(inner.precision());
        if n == 0 {
            return Ok(self.truncate(0));
        }
        if !self.ring.is_zero(&inner.coeffs[0]) {
            return Err(Error::NonzeroConstantTerm);
        }
        let inner = inner.truncate(n);
        // Horner: only the first n coefficients of self can contribute.
        let mut acc = Self::zero(self.ring.clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner)?;
            acc.coeffs[0] = self.ring.add(&acc.coeffs[0], &self.coeffs[k]);
        }
        Ok(acc)
    }

    /// `X -> cX`.
    pub fn dilate(&self, c: &R::Elem) -> Self {
        let mut power = self.ring.one();
        let mut out = Vec::with_capacity(self.precision());
        for a in &self.coeffs {
            out.push(self.ring.mul(a, &power));
            power = self.ring.mul(&power, c);
        }
        TruncSeries {
            ring: self.ring.clone(),
            coeffs: out,
        }
    }

    /// `X -> -X`.
    pub fn negate_variable(&self) -> Self {
        Self::from_fn(self.ring.clone(), self.precision(), |i| {
            if i % 2 == 0 {
                self.coeffs[i].clone()
            } else {
                self.ring.neg(&self.coeffs[i])
            }
        })
    }

    /// `X -> X^k` for `k >= 1`, keeping the precision.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1, "inflation exponent must be positive");
        let mut out = Self::zero(self.ring.clone(), self.precision());
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(k) {
                Some(d) if d < out.precision() => out.coeffs[d] = c.clone(),
                _ => break,
            }
        }
        out
    }

    /// Multiplication by `X^k`, keeping the precision.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.precision();
        Self::from_fn(self.ring.clone(), n, |i| {
            if i >= k {
                self.coeffs[i - k].clone()
            } else {
                self.ring.zero()
            }
        })
    }

    /// Keeps the terms whose degree is congruent to `r` modulo `m`.
    pub fn multisect(&self, m: usize, r: usize) -> Self {
        assert!(m >= 1 && r < m, "multisection needs 0 <= r < m");
        Self::from_fn(self.ring.clone(), self.precision(), |i| {
            if i % m == r {
                self.coeffs[i].clone()
            } else {
                self.ring.zero()
            }
        })
    }

    /// Termwise derivative; the result has precision `N - 1`.
    pub fn derivative(&self) -> Self {
        let n = self.precision().saturating_sub(1);
        Self::from_fn(self.ring.clone(), n, |i| {
            self.ring
                .mul(&self.ring.from_i64(i as i64 + 1), &self.coeffs[i + 1])
        })
    }

    /// First degree below the common precision where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Result<Option<usize>> {
        ring_check(&self.ring, &other.ring)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b))
    }

    pub fn map<S: CoeffRing>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> TruncSeries<S> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
            ring,
        }
    }
}

/// Equality up to the common precision; series over different rings are never equal.
impl<R: CoeffRing> PartialEq for TruncSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        matches!(self.first_difference(other), Ok(None))
    }
}

impl<R: CoeffRing> fmt::Display for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*X")?,
                _ => write!(f, "({c})*X^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(X^{})", self.precision())
    }
}

impl TruncSeries<Rationals> {
    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        TruncSeries {
            ring: Rationals,
            coeffs,
        }
    }

    /// `exp(f)` for `f(0) = 0`, from `g' = f' g`.
    pub fn exp(&self) -> Result<Self> {
        let n = self.precision();
        if n == 0 {
            return Ok(self.clone());
        }
        if !self.ring.is_zero(&self.coeffs[0]) {
            return Err(Error::NonzeroConstantTerm);
        }
        // k * f_k, only where nonzero
        let weighted: Vec<(usize, BigRational)> = (1..n)
            .filter(|&k| !self.ring.is_zero(&self.coeffs[k]))
            .map(|k| (k, &self.coeffs[k] * BigInt::from(k)))
            .collect();
        let mut g: Vec<BigRational> = Vec::with_capacity(n);
        g.push(Rationals.one());
        for m in 1..n {
            let mut acc = Rationals.zero();
            for (k, kf) in &weighted {
                if *k > m {
                    break;
                }
                acc += kf * &g[m - k];
            }
            g.push(acc / BigInt::from(m));
        }
        Ok(Self::from_rationals(g))
    }

    /// The `p`-th root with constant term 1, from `p f h' = f' h`.
    pub fn pth_root(&self, p: Prime) -> Result<Self> {
        let n = self.precision();
        if n == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0] != Rationals.one() {
            return Err(Error::ConstantTermNotOne);
        }
        let p = BigInt::from(p.get());
        let support: Vec<usize> = (1..n)
            .filter(|&j| !self.ring.is_zero(&self.coeffs[j]))
            .collect();
        let mut h: Vec<BigRational> = Vec::with_capacity(n);
        h.push(Rationals.one());
        for m in 1..n {
            // m p h_m = sum_{j=1}^{m} (j (1 + p) - m p) f_j h_{m-j}
            let mut acc = Rationals.zero();
            for &j in &support {
                if j > m {
                    break;
                }
                let w = BigInt::from(j) * (&p + 1u32) - BigInt::from(m) * &p;
                acc += &self.coeffs[j] * &h[m - j] * w;
            }
            h.push(acc / (BigInt::from(m) * &p));
        }
        Ok(Self::from_rationals(h))
    }

    /// Coefficientwise reduction; fails on the first non-p-integral coefficient.
    pub fn reduce_mod_p(&self, p: Prime) -> Result<ModPSeries> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|q| reduce_rational_mod_p(q, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncSeries {
            ring: PrimeField(p),
            coeffs,
        })
    }
}

impl TruncSeries<PrimeField> {
    pub fn prime(&self) -> Prime {
        self.ring.prime()
    }

    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        self.coeffs.iter().map(|c: &Residue| c.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::rational;
    use proptest::prelude::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn q_ints(c: &[i64]) -> RationalSeries {
        RationalSeries::from_ints(Rationals, c)
    }

    #[test]
    fn product_examples() {
        let a = q_ints(&[1, 1, 0, 0, 0]);
        let b = q_ints(&[1, -1, 0, 0, 0]);
        assert_eq!(a.mul(&b).unwrap(), q_ints(&[1, 0, -1, 0, 0]));

        let f = q_ints(&[3, 1, 4, 1, 5]);
        assert_eq!(f.add(&RationalSeries::zero(Rationals, 5)).unwrap(), f);

        let g = ModPSeries::from_ints(fp(2), &[1, 1, 0]);
        assert_eq!(
            g.mul(&g).unwrap().residues().collect::<Vec<_>>(),
            vec![1, 0, 1]
        );
    }

    #[test]
    fn precision_is_the_minimum() {
        let a = q_ints(&[1, 2, 3, 4, 5, 6]);
        let b = q_ints(&[1, 1, 1]);
        assert_eq!(a.mul(&b).unwrap().precision(), 3);
        assert_eq!(a.add(&b).unwrap().precision(), 3);
        assert_eq!(a.derivative().precision(), 5);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ModPSeries::one(fp(3), 4);
        let b = ModPSeries::one(fp(5), 4);
        assert!(matches!(a.mul(&b), Err(Error::RingMismatch { .. })));
        assert!(matches!(a.add(&b), Err(Error::RingMismatch { .. })));
        assert!(a != b);
        let stray = vec![
            Residue::one(Prime::new(3).unwrap()),
            Residue::one(Prime::new(5).unwrap()),
        ];
        assert!(ModPSeries::from_coeffs(fp(3), stray).is_err());
    }

    #[test]
    fn geometric_inverse() {
        let f = q_ints(&[1, -1, 0, 0, 0, 0]);
        assert_eq!(f.invert().unwrap(), q_ints(&[1, 1, 1, 1, 1, 1]));
        let c = RationalSeries::monomial(Rationals, rational(3, 7), 0, 4);
        assert_eq!(
            c.invert().unwrap(),
            RationalSeries::monomial(Rationals, rational(7, 3), 0, 4)
        );
        let bad = q_ints(&[0, 1, 1]);
        assert_eq!(bad.invert().unwrap_err(), Error::NonUnitConstantTerm);
        let bad_mod = ModPSeries::from_ints(fp(3), &[3, 1]);
        assert_eq!(bad_mod.invert().unwrap_err(), Error::NonUnitConstantTerm);
    }

    #[test]
    fn substitution_examples() {
        let f = q_ints(&[1, 0, 1, 0, 0]);
        let minus_x = q_ints(&[0, -1, 0, 0, 0]);
        assert_eq!(f.substitute(&minus_x).unwrap(), f);
        let g = q_ints(&[2, -3, 5, 7, 11]);
        assert_eq!(g.substitute(&RationalSeries::x(Rationals, 5)).unwrap(), g);
        assert_eq!(
            g.substitute(&q_ints(&[1, 1, 0])).unwrap_err(),
            Error::NonzeroConstantTerm
        );
        // specialisations agree with the general route
        let h = q_ints(&[0, 0, 3, 0, 0]);
        assert_eq!(g.substitute(&minus_x).unwrap(), g.negate_variable());
        assert_eq!(
            g.substitute(&RationalSeries::monomial(Rationals, Rationals.one(), 2, 5))
                .unwrap(),
            g.inflate(2)
        );
        assert_eq!(
            g.substitute(&RationalSeries::x(Rationals, 5).scale(&rational(3, 1)))
                .unwrap(),
            g.dilate(&rational(3, 1))
        );
        assert_eq!(h.substitute(&minus_x).unwrap(), h);
    }

    #[test]
    fn multisection_examples() {
        let f = q_ints(&[1, 1, 1, 1]);
        assert_eq!(f.multisect(2, 0), q_ints(&[1, 0, 1, 0]));
        assert_eq!(f.multisect(1, 0), f);
    }

    #[test]
    fn exp_examples() {
        let x = RationalSeries::x(Rationals, 5);
        let expected = RationalSeries::from_rationals(vec![
            rational(1, 1),
            rational(1, 1),
            rational(1, 2),
            rational(1, 6),
            rational(1, 24),
        ]);
        assert_eq!(x.exp().unwrap(), expected);
        assert_eq!(
            RationalSeries::zero(Rationals, 4).exp().unwrap(),
            RationalSeries::one(Rationals, 4)
        );
        assert_eq!(
            q_ints(&[1, 1]).exp().unwrap_err(),
            Error::NonzeroConstantTerm
        );
    }

    /// exp(f) as the truncated sum of f^k / k!, independent of the recurrence.
    fn exp_by_powers(f: &RationalSeries) -> RationalSeries {
        let n = f.precision();
        let mut acc = RationalSeries::one(Rationals, n);
        let mut term = RationalSeries::one(Rationals, n);
        for k in 1..n {
            term = term.mul(f).unwrap().scale(&rational(1, k as i64));
            acc = acc.add(&term).unwrap();
        }
        acc
    }

    #[test]
    fn exp_of_x_plus_half_x_squared() {
        let f = RationalSeries::from_rationals(vec![
            rational(0, 1),
            rational(1, 1),
            rational(1, 2),
            rational(0, 1),
        ]);
        let oracle = exp_by_powers(&f);
        // 1 + X + X^2 + (2/3) X^3: the cubic coefficient counts the 4 involutions of 3 points.
        let frozen = RationalSeries::from_rationals(vec![
            rational(1, 1),
            rational(1, 1),
            rational(1, 1),
            rational(2, 3),
        ]);
        assert_eq!(oracle, frozen);
        assert_eq!(f.exp().unwrap(), frozen);
    }

    #[test]
    fn pth_root_examples() {
        let p3 = Prime::new(3).unwrap();
        let cube = q_ints(&[1, 3, 3, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(
            cube.pth_root(p3).unwrap(),
            q_ints(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 0])
        );
        assert_eq!(
            RationalSeries::one(Rationals, 6).pth_root(p3).unwrap(),
            RationalSeries::one(Rationals, 6)
        );
        assert_eq!(
            q_ints(&[2, 1]).pth_root(p3).unwrap_err(),
            Error::ConstantTermNotOne
        );
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(q_ints(&[1, 1, 1]).derivative(), q_ints(&[1, 2]));
        assert!(q_ints(&[5, 0, 0, 0]).derivative().is_zero());
        assert_eq!(q_ints(&[5]).derivative().precision(), 0);
    }

    fn any_residues(p: u64, n: usize) -> impl Strategy<Value = ModPSeries> {
        prop::collection::vec(0..p as i64, n).prop_map(move |c| ModPSeries::from_ints(fp(p), &c))
    }

    fn any_rationals(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RationalSeries> {
        prop::collection::vec((-20i64..20, 1i64..8), n).prop_map(|c| {
            RationalSeries::from_rationals(c.into_iter().map(|(a, b)| rational(a, b)).collect())
        })
    }

    fn any_prime() -> impl Strategy<Value = u64> {
        prop::sample::select(vec![2u64, 3, 5, 7])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms_mod_p((a, b, c) in (any_prime(), 1usize..=64).prop_flat_map(|(p, n)| {
            (any_residues(p, n), any_residues(p, n), any_residues(p, n))
        })) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a.clone());
            prop_assert_eq!(a.mul(&ModPSeries::one(*a.ring(), a.precision())).unwrap(), a);
        }

        #[test]
        fn ring_axioms_rational((a, b, c) in (1usize..=24).prop_flat_map(|n| {
            (any_rationals(n..=n), any_rationals(n..=n), any_rationals(n..=n))
        })) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn multisections_sum_back((f, m) in (any_rationals(1..=40), prop::sample::select(vec![2usize, 3, 5]))) {
            let mut acc = RationalSeries::zero(Rationals, f.precision());
            for r in 0..m {
                acc = acc.add(&f.multisect(m, r)).unwrap();
            }
            prop_assert_eq!(acc, f);
        }

        #[test]
        fn pth_root_round_trip(
            (mut f, p) in (any_rationals(1..=40), prop::sample::select(vec![2u64, 3, 5, 7]))
        ) {
            f.set_coeff(0, Rationals.one()).unwrap();
            let p = Prime::new(p).unwrap();
            let root = f.pth_root(p).unwrap();
            prop_assert_eq!(root.coeff(0), Rationals.one());
            prop_assert_eq!(root.pow(p.get()), f);
        }

        #[test]
        fn composition_is_associative((f, mut g, mut h) in (1usize..=32).prop_flat_map(|n| {
            (any_residues(7, n), any_residues(7, n), any_residues(7, n))
        })) {
            g.set_coeff(0, Residue::zero(Prime::new(7).unwrap())).unwrap();
            h.set_coeff(0, Residue::zero(Prime::new(7).unwrap())).unwrap();
            let left = f.substitute(&g).unwrap().substitute(&h).unwrap();
            let right = f.substitute(&g.substitute(&h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn composition_is_associative_over_q((f, mut g, mut h) in (1usize..=12).prop_flat_map(|n| {
            (any_rationals(n..=n), any_rationals(n..=n), any_rationals(n..=n))
        })) {
            g.set_coeff(0, Rationals.zero()).unwrap();
            h.set_coeff(0, Rationals.zero()).unwrap();
            let left = f.substitute(&g).unwrap().substitute(&h).unwrap();
            let right = f.substitute(&g.substitute(&h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn inverse_round_trip_random_units() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for p in [2u64, 3, 5, 7] {
            for _ in 0..200 {
                let n = rng.gen_range(1..=64);
                let mut c: Vec<i64> = (0..n).map(|_| rng.gen_range(0..p as i64)).collect();
                c[0] = rng.gen_range(1..p as i64);
                let f = ModPSeries::from_ints(fp(p), &c);
                let prod = f.mul(&f.invert().unwrap()).unwrap();
                assert_eq!(prod, ModPSeries::one(fp(p), n));
            }
        }
    }
}
