//! Constructors for the named series: the Artin-Hasse exponential `AH` over
//! Q, its reduction `E_p`, the sparse series `T = Σ_{i≥1} X^{p^i}`, the
//! multisected exponential `e_p`, the Laguerre series `S`, and the
//! p-supported cofactors `G(X^p)` and `F(X^p)` with `S = E_p G(X^p)` and
//! `S F(X^p) = E_p`.
//!
//! `G` and `F` are always stored in their inflated form, as series in `X`
//! supported on multiples of p.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::laguerre::laguerre_pm1;
use crate::rings::{BigRational, CoeffRing, Prime, PrimeField, Rationals, Residue};
use crate::series::{ModPSeries, RationalSeries};

/// Coefficients `u_n` of `AH(X)` from `n u_n = Σ_{i≥0} u_{n-p^i}`.
pub fn artin_hasse_rational(p: Prime, precision: usize) -> RationalSeries {
    let mut u: Vec<BigRational> = Vec::with_capacity(precision);
    for n in 0..precision {
        if n == 0 {
            u.push(Rationals.one());
            continue;
        }
        let mut acc = Rationals.zero();
        let mut step = 1usize;
        while step <= n {
            acc += &u[n - step];
            match step.checked_mul(p.get() as usize) {
                Some(next) => step = next,
                None => break,
            }
        }
        u.push(acc / BigInt::from(n));
    }
    RationalSeries::from_rationals(u)
}

/// `AH(X)` as `exp(Σ_{i≥0} X^{p^i} / p^i)`, independent of the recursion.
pub fn artin_hasse_oracle(p: Prime, precision: usize) -> RationalSeries {
    let mut log = RationalSeries::zero(Rationals, precision);
    let mut step = 1usize;
    let mut denom = BigInt::from(1);
    while step < precision {
        log.set_coeff(step, BigRational::new(BigInt::from(1), denom.clone()))
            .expect("in range");
        denom *= p.get();
        match step.checked_mul(p.get() as usize) {
            Some(next) => step = next,
            None => break,
        }
    }
    log.exp().expect("zero constant term")
}

/// `E_p`, the reduction of `AH` modulo p. Fails only if some `u_n` is not
/// p-integral, which would mean an arithmetic bug.
pub fn ep_series(p: Prime, precision: usize) -> Result<ModPSeries> {
    artin_hasse_rational(p, precision).reduce_mod_p(p)
}

/// `T(X) = Σ_{i≥1} X^{p^i}` over F_p.
pub fn t_series(p: Prime, precision: usize) -> ModPSeries {
    let f = PrimeField(p);
    let mut t = ModPSeries::zero(f, precision);
    for d in p.powers_below(precision) {
        t.set_coeff(d, f.one()).expect("in range");
    }
    t
}

/// `T(X)` over Q.
pub fn t_series_rational(p: Prime, precision: usize) -> RationalSeries {
    let mut t = RationalSeries::zero(Rationals, precision);
    for d in p.powers_below(precision) {
        t.set_coeff(d, Rationals.one()).expect("in range");
    }
    t
}

/// `e_p(X) = Σ_{p | k} X^k / k!` over Q.
pub fn ep_lower_series(p: Prime, precision: usize) -> RationalSeries {
    RationalSeries::x(Rationals, precision)
        .exp()
        .expect("zero constant term")
        .multisect(p.get() as usize, 0)
}

/// `Σ_{k<p} X^k / k!` over F_p, at the given precision.
pub fn truncated_exponential(p: Prime, precision: usize) -> ModPSeries {
    let f = PrimeField(p);
    let mut inv_fact = f.one();
    ModPSeries::from_fn(f, precision, |k| {
        if k == 0 {
            f.one()
        } else if (k as u64) < p.get() {
            inv_fact = f.mul(&inv_fact, &f.inv(&f.from_i64(k as i64)).expect("k < p"));
            inv_fact
        } else {
            f.zero()
        }
    })
}

/// `S(X) = L_{p-1}^{(-T(X))}(X)`.
pub fn s_series(p: Prime, precision: usize) -> ModPSeries {
    laguerre_pm1(p)
        .specialize_alpha_series(&t_series(p, precision).neg())
        .expect("T has zero constant term")
}

/// `G(X^p) = Σ_n (-1)^n a_{np} X^{np}`, read off the coefficients of `E_p`.
pub fn g_from_ep(ep: &ModPSeries) -> Result<ModPSeries> {
    let p = ep.prime().require_odd()?;
    let f = PrimeField(p);
    let pu = p.get() as usize;
    Ok(ModPSeries::from_fn(f, ep.precision(), |i| {
        if i % pu != 0 {
            f.zero()
        } else if (i / pu).is_multiple_of(2) {
            ep.coeff(i)
        } else {
            ep.coeff(i).neg()
        }
    }))
}

pub fn g_series(p: Prime, precision: usize) -> Result<ModPSeries> {
    p.require_odd()?;
    g_from_ep(&ep_series(p, precision)?)
}

/// `G(X^p)` as the quotient `S / E_p`, checked to be supported on multiples of p.
pub fn g_series_via_quotient(p: Prime, precision: usize) -> Result<ModPSeries> {
    p.require_odd()?;
    let ep = ep_series(p, precision)?;
    let g = s_series(p, precision).mul(&ep.invert()?)?;
    check_p_support(&g)?;
    Ok(g)
}

fn check_p_support(s: &ModPSeries) -> Result<()> {
    let p = s.prime().get();
    match s
        .support()
        .into_iter()
        .find(|&d| !(d as u64).is_multiple_of(p))
    {
        Some(degree) => Err(Error::SupportViolation { degree, modulus: p }),
        None => Ok(()),
    }
}

/// `F(X^2) = Σ_n a_{2n+1} X^{2n}`, the odd part of `E_2` shifted down.
pub fn f_from_ep_p2(ep_extended: &ModPSeries, precision: usize) -> ModPSeries {
    let f = *ep_extended.ring();
    ModPSeries::from_fn(f, precision, |i| {
        if i % 2 == 0 {
            ep_extended.coeff(i + 1)
        } else {
            f.zero()
        }
    })
}

/// `F(X^p) = 1 / G(X^p)`; for p = 2 the odd-part construction above.
pub fn f_series(p: Prime, precision: usize) -> Result<ModPSeries> {
    if p.is_odd() {
        g_series(p, precision)?.invert()
    } else {
        Ok(f_from_ep_p2(&ep_series(p, precision + 1)?, precision))
    }
}

/// All named series for one `(p, N)`, built once and then read-only.
#[derive(Clone, Debug)]
pub struct NamedSeriesSet {
    pub prime: Prime,
    pub precision: usize,
    /// `AH(X)` over Q.
    pub ah: RationalSeries,
    pub ep: ModPSeries,
    pub t: ModPSeries,
    /// `e_p(X)` over Q.
    pub e_lower: RationalSeries,
    pub s: ModPSeries,
    /// `G(X^p)`.
    pub g: ModPSeries,
    /// `F(X^p)`.
    pub f: ModPSeries,
}

impl NamedSeriesSet {
    pub fn build(p: Prime, precision: usize) -> Result<Self> {
        // one extra coefficient for the p = 2 construction of F
        let ah_ext = artin_hasse_rational(p, precision + 1);
        let ep_ext = ah_ext.reduce_mod_p(p)?;
        let ep = ep_ext.truncate(precision);
        let (g, f) = if p.is_odd() {
            let g = g_from_ep(&ep)?;
            let f = g.invert()?;
            (g, f)
        } else {
            let f = f_from_ep_p2(&ep_ext, precision);
            (f.invert()?, f)
        };
        Ok(NamedSeriesSet {
            prime: p,
            precision,
            ah: ah_ext.truncate(precision),
            ep,
            t: t_series(p, precision),
            e_lower: ep_lower_series(p, precision),
            s: s_series(p, precision),
            g,
            f,
        })
    }

    /// The coefficients `a_n` as plain residues.
    pub fn a(&self) -> &[Residue] {
        self.ep.coeffs()
    }
}
