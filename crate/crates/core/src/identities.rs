//! One checker per identity, each producing a [`VerificationReport`].
//!
//! Every identity has two layers: a `check_*` function that compares
//! series it is handed, and a `verify_*` function that builds those series
//! from scratch for a given `(p, N)`. Tests and the CLI perturb inputs by
//! calling the `check_*` layer directly.
//!
//! `S` is always built through the Laguerre polynomial and `G` from the
//! coefficients of `E_p`, so checking `S = E_p G(X^p)` never reuses one
//! side to build the other.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bivariate::{defect_series, support_multiple_of_p};
use crate::error::{Error, Result};
use crate::laguerre::laguerre_pm1;
use crate::rings::{p_adic_valuation, CoeffRing, Prime, PrimeField, Residue};
use crate::series::{ModPSeries, TruncSeries};
use crate::special::{
    artin_hasse_rational, ep_lower_series, f_from_ep_p2, g_from_ep, s_series, t_series,
    t_series_rational, truncated_exponential,
};
use crate::stirling::{c_values, closed_form_coefficient, StirlingTable};

/// Largest total degree [`verify_all`] uses for the bivariate checks.
pub const WEAK_FE_MAX_DEGREE: usize = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `S = E_p · Σ (-1)^n a_{np} X^{np}`.
    Eq2,
    /// `S · T · Σ a_{np} X^{np} = X^p E_p`.
    Eq3,
    /// `(Σ a_{sp} X^{sp}) (Σ a_{rp} (-X)^{rp}) T = X^p`.
    PropXp,
    /// `e_p(X) e_p(-X) T ≡ X^p (mod p)`, computed over Q.
    PropEp,
    /// The defect of `E_p` lives in total degrees divisible by p.
    WeakFeEp,
    /// The defect of `S` lives in total degrees divisible by p.
    WeakFeS,
    /// `L^{(α)}(X) L^{(-α)}(-X) ≡ 1 - α^{p-1} (mod X^p - α^p + α)`.
    LemmaSs,
    /// `E_2 = (1 + X + T) Σ a_{2n+1} X^{2n}`.
    RemarkP2,
    /// Closed form for `a_{rp+k}` through Stirling numbers.
    PropCoeffs,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::Eq2,
        Identity::Eq3,
        Identity::PropXp,
        Identity::PropEp,
        Identity::WeakFeEp,
        Identity::WeakFeS,
        Identity::LemmaSs,
        Identity::RemarkP2,
        Identity::PropCoeffs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Eq2 => "eq2",
            Identity::Eq3 => "eq3",
            Identity::PropXp => "prop_xp",
            Identity::PropEp => "prop_ep",
            Identity::WeakFeEp => "weak_fe_ep",
            Identity::WeakFeS => "weak_fe_s",
            Identity::LemmaSs => "lemma_ss",
            Identity::RemarkP2 => "remark_p2",
            Identity::PropCoeffs => "prop_coeffs",
        }
    }

    /// Whether the identity is stated for odd primes only.
    pub fn odd_only(self) -> bool {
        matches!(
            self,
            Identity::Eq2
                | Identity::Eq3
                | Identity::PropXp
                | Identity::PropEp
                | Identity::PropCoeffs
        )
    }

    pub fn applies_to(self, p: Prime) -> bool {
        match self {
            Identity::RemarkP2 => !p.is_odd(),
            other => !other.odd_only() || p.is_odd(),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Skipped,
    InsufficientPrecision,
}

/// The two sides' coefficients at the first mismatch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub term: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: Identity,
    pub prime: u64,
    /// Truncation precision; total degree for bivariate checks; `None` for exact checks.
    pub precision: Option<usize>,
    pub status: Status,
    pub holds: bool,
    /// Total degree for bivariate checks.
    pub first_discrepancy_degree: Option<usize>,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Wall time; kept out of serialized output.
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Result of comparing two sides: `None` when they agree.
pub type Discrepancy = Option<(usize, Witness)>;

impl VerificationReport {
    fn from_discrepancy(
        identity: Identity,
        p: Prime,
        precision: Option<usize>,
        d: Discrepancy,
    ) -> Self {
        let holds = d.is_none();
        let (first_discrepancy_degree, witness) = match d {
            Some((deg, w)) => (Some(deg), Some(w)),
            None => (None, None),
        };
        VerificationReport {
            identity,
            prime: p.get(),
            precision,
            status: if holds { Status::Holds } else { Status::Fails },
            holds,
            first_discrepancy_degree,
            witness,
            note: None,
            elapsed: Duration::ZERO,
        }
    }

    fn not_run(
        identity: Identity,
        p: Prime,
        precision: Option<usize>,
        status: Status,
        note: String,
    ) -> Self {
        VerificationReport {
            identity,
            prime: p.get(),
            precision,
            status,
            holds: false,
            first_discrepancy_degree: None,
            witness: None,
            note: Some(note),
            elapsed: Duration::ZERO,
        }
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

fn x_term(d: usize) -> String {
    format!("X^{d}")
}

/// First coefficient where `lhs` and `rhs` differ, up to the common precision.
pub fn compare<R: CoeffRing>(lhs: &TruncSeries<R>, rhs: &TruncSeries<R>) -> Result<Discrepancy> {
    Ok(lhs.first_difference(rhs)?.map(|d| {
        (
            d,
            Witness {
                term: x_term(d),
                lhs: lhs.coeff(d).to_string(),
                rhs: rhs.coeff(d).to_string(),
            },
        )
    }))
}

fn need_odd(p: Prime) -> Result<()> {
    p.require_odd().map(|_| ())
}

fn need_precision(got: usize, required: usize) -> Result<()> {
    if got < required {
        Err(Error::InsufficientPrecision { got, required })
    } else {
        Ok(())
    }
}

/// `S` against `E_p · G(X^p)` with `G` read off `ep`.
pub fn check_eq2(s: &ModPSeries, ep: &ModPSeries) -> Result<Discrepancy> {
    let g = g_from_ep(ep)?;
    compare(s, &ep.mul(&g)?)
}

/// `S · T · Σ a_{np} X^{np}` against `X^p E_p`.
pub fn check_eq3(s: &ModPSeries, ep: &ModPSeries, t: &ModPSeries) -> Result<Discrepancy> {
    let p = ep.prime();
    need_odd(p)?;
    let pu = p.get() as usize;
    let lhs = s.mul(t)?.mul(&ep.multisect(pu, 0))?;
    compare(&lhs, &ep.shift(pu))
}

/// `A(X) A(-X) T` against `X^p`, where `A` is the p-multisection of `ep`.
pub fn check_prop_xp(ep: &ModPSeries, t: &ModPSeries) -> Result<Discrepancy> {
    let p = ep.prime();
    need_odd(p)?;
    let pu = p.get() as usize;
    let a = ep.multisect(pu, 0);
    let lhs = a.mul(&a.negate_variable())?.mul(t)?;
    let n = lhs.precision();
    let rhs = ModPSeries::monomial(*lhs.ring(), lhs.ring().one(), pu, n);
    compare(&lhs, &rhs)
}

/// `e_p(X) e_p(-X) T` over Q, then reduced; every coefficient must be p-integral.
pub fn check_prop_ep(p: Prime, precision: usize) -> Result<Discrepancy> {
    need_odd(p)?;
    let e = ep_lower_series(p, precision);
    let product = e
        .mul(&e.negate_variable())?
        .mul(&t_series_rational(p, precision))?;
    for (d, q) in product.coeffs().iter().enumerate() {
        if !p_adic_valuation(q, p).is_p_integral() {
            return Err(Error::NotPIntegral {
                value: format!("{q} at degree {d}"),
                prime: p.get(),
            });
        }
    }
    let reduced = product.reduce_mod_p(p)?;
    let f = PrimeField(p);
    compare(
        &reduced,
        &ModPSeries::monomial(f, f.one(), p.get() as usize, precision),
    )
}

/// Builds the defect of `series` to total degree `d` and checks its support.
pub fn check_weak_fe(series: &ModPSeries, total_degree: usize) -> Result<Discrepancy> {
    let defect = defect_series(series, total_degree)?;
    let check = support_multiple_of_p(&defect);
    Ok(check.first_offending_term.map(|(i, j)| {
        (
            i + j,
            Witness {
                term: format!("X^{i}*Y^{j}"),
                lhs: defect.coeff(i, j).to_string(),
                rhs: "0".to_string(),
            },
        )
    }))
}

/// Exact check in `F_p[α, X]`. With `reduce = false` the unreduced product
/// is compared, which has X-degree `2p - 2` and so never matches.
pub fn check_lemma_ss(p: Prime, reduce: bool) -> Result<Discrepancy> {
    let f = PrimeField(p);
    let l = laguerre_pm1(p);
    let mut product = l.mul(&l.flip_signs(true, true))?;
    if reduce {
        product = product.reduce_mod_weierstrass();
    }
    let pu = p.get() as usize;
    let expected = crate::laguerre::ParamPoly::from_terms(f, &[(0, 0, 1), (pu - 1, 0, -1)]);
    let diff = product.sub(&expected)?;
    // report the lowest X-degree, then lowest α-degree, of the difference
    Ok(diff
        .terms()
        .min_by_key(|&(d, k, _)| (k, d))
        .map(|(d, k, _)| {
            (
                k,
                Witness {
                    term: format!("a^{d}*X^{k}"),
                    lhs: product.coeff(d, k).to_string(),
                    rhs: expected.coeff(d, k).to_string(),
                },
            )
        }))
}

/// `E_2 = S · F(X^2)` to precision `N`, plus the step
/// `a_{2n} = a_{2n+1} + Σ_{i≥1} a_{2n+1-2^i}`. `ep_ext` needs `N + 1` coefficients.
pub fn check_remark_p2(ep_ext: &ModPSeries, precision: usize) -> Result<Discrepancy> {
    let p = ep_ext.prime();
    if p.is_odd() {
        return Err(Error::RingMismatch {
            left: "F_2".into(),
            right: format!("F_{p}"),
        });
    }
    need_precision(ep_ext.precision(), precision + 1)?;
    let f = PrimeField(p);
    let ep = ep_ext.truncate(precision);
    let s = s_series(p, precision);
    let product_mismatch = compare(&ep, &s.mul(&f_from_ep_p2(ep_ext, precision))?)?;

    let mut step_mismatch: Discrepancy = None;
    for even in (0..precision).step_by(2) {
        let odd = even + 1;
        let mut rhs = ep_ext.coeff(odd);
        for q in p.powers_below(odd + 1) {
            rhs = f.add(&rhs, &ep_ext.coeff(odd - q));
        }
        let lhs = ep_ext.coeff(even);
        if lhs != rhs {
            step_mismatch = Some((
                even,
                Witness {
                    term: format!("a_{even}"),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                },
            ));
            break;
        }
    }
    Ok(match (product_mismatch, step_mismatch) {
        (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
        (a, b) => a.or(b),
    })
}

/// One cell of the `p × p` table of `a_{rp+k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffCell {
    pub r: usize,
    pub k: usize,
    pub n: usize,
    pub recursion: u64,
    pub closed_form: u64,
    pub matches: bool,
}

/// The closed form against the recursion for all `0 <= r, k < p`.
/// `adjust` selects the `+1` at `c_{(p-1)p}`.
pub fn coefficient_grid(ep: &ModPSeries, adjust: bool) -> Result<Vec<CoeffCell>> {
    let p = ep.prime();
    need_odd(p)?;
    let pu = p.get() as usize;
    need_precision(ep.precision(), pu * pu)?;
    let table = StirlingTable::new(pu);
    let c = c_values(ep.coeffs(), p, adjust)?;
    let mut out = Vec::with_capacity(pu * pu);
    for r in 0..pu {
        for k in 0..pu {
            let n = r * pu + k;
            let closed: Residue = closed_form_coefficient(&table, p, r, k, &c)?;
            let rec = ep.coeff(n);
            out.push(CoeffCell {
                r,
                k,
                n,
                recursion: rec.value(),
                closed_form: closed.value(),
                matches: rec == closed,
            });
        }
    }
    Ok(out)
}

pub fn check_prop_coeffs(ep: &ModPSeries, adjust: bool) -> Result<Discrepancy> {
    let grid = coefficient_grid(ep, adjust)?;
    Ok(grid.into_iter().find(|c| !c.matches).map(|c| {
        (
            c.n,
            Witness {
                term: format!("a_{}", c.n),
                lhs: c.recursion.to_string(),
                rhs: c.closed_form.to_string(),
            },
        )
    }))
}

fn run(
    identity: Identity,
    p: Prime,
    precision: Option<usize>,
    body: impl FnOnce() -> Result<Discrepancy>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let d = body()?;
    Ok(VerificationReport::from_discrepancy(identity, p, precision, d).timed(start))
}

pub fn verify_eq2(p: Prime, precision: usize) -> Result<VerificationReport> {
    need_odd(p)?;
    need_precision(precision, 2 * p.get() as usize)?;
    run(Identity::Eq2, p, Some(precision), || {
        let ep = artin_hasse_rational(p, precision).reduce_mod_p(p)?;
        check_eq2(&s_series(p, precision), &ep)
    })
}

pub fn verify_eq3(p: Prime, precision: usize) -> Result<VerificationReport> {
    need_odd(p)?;
    need_precision(precision, 2 * p.get() as usize)?;
    run(Identity::Eq3, p, Some(precision), || {
        let ep = artin_hasse_rational(p, precision).reduce_mod_p(p)?;
        check_eq3(&s_series(p, precision), &ep, &t_series(p, precision))
    })
}

pub fn verify_prop_xp(p: Prime, precision: usize) -> Result<VerificationReport> {
    need_odd(p)?;
    need_precision(precision, 2 * p.get() as usize)?;
    run(Identity::PropXp, p, Some(precision), || {
        let ep = artin_hasse_rational(p, precision).reduce_mod_p(p)?;
        check_prop_xp(&ep, &t_series(p, precision))
    })
}

pub fn verify_prop_ep(p: Prime, precision: usize) -> Result<VerificationReport> {
    need_odd(p)?;
    need_precision(precision, 2 * p.get() as usize)?;
    run(Identity::PropEp, p, Some(precision), || {
        check_prop_ep(p, precision)
    })
}

/// Which series to feed to the weak functional equation check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeakFeSeries {
    Ep,
    S,
}

pub fn verify_weak_fe(
    which: WeakFeSeries,
    p: Prime,
    total_degree: usize,
) -> Result<VerificationReport> {
    need_precision(total_degree, 2 * p.get() as usize)?;
    let identity = match which {
        WeakFeSeries::Ep => Identity::WeakFeEp,
        WeakFeSeries::S => Identity::WeakFeS,
    };
    run(identity, p, Some(total_degree), || {
        let series = match which {
            WeakFeSeries::Ep => artin_hasse_rational(p, total_degree).reduce_mod_p(p)?,
            WeakFeSeries::S => s_series(p, total_degree),
        };
        check_weak_fe(&series, total_degree)
    })
}

pub fn verify_lemma_ss(p: Prime) -> Result<VerificationReport> {
    run(Identity::LemmaSs, p, None, || check_lemma_ss(p, true))
}

pub fn verify_remark_p2(precision: usize) -> Result<VerificationReport> {
    need_precision(precision, 4)?;
    let p = Prime::new(2)?;
    run(Identity::RemarkP2, p, Some(precision), || {
        let ep_ext = artin_hasse_rational(p, precision + 1).reduce_mod_p(p)?;
        check_remark_p2(&ep_ext, precision)
    })
}

pub fn verify_prop_coeffs(p: Prime) -> Result<VerificationReport> {
    need_odd(p)?;
    let n = (p.get() * p.get()) as usize;
    run(Identity::PropCoeffs, p, Some(n), || {
        let ep = artin_hasse_rational(p, n).reduce_mod_p(p)?;
        check_prop_coeffs(&ep, true)
    })
}

/// Shared inputs for a batch of verifications at one `(p, N)`.
///
/// `ep` carries `max(N + 1, p^2)` coefficients so the p = 2 check and the
/// Stirling table both find what they need. [`VerifyInputs::perturb`] adds
/// one to a single coefficient of `E_p`, which every E_p-based check then
/// sees.
#[derive(Clone, Debug)]
pub struct VerifyInputs {
    pub prime: Prime,
    pub precision: usize,
    pub ep: ModPSeries,
    pub s: ModPSeries,
    pub t: ModPSeries,
}

impl VerifyInputs {
    pub fn build(p: Prime, precision: usize) -> Result<Self> {
        let pu = p.get() as usize;
        let ext = (precision + 1).max(pu * pu);
        Ok(VerifyInputs {
            prime: p,
            precision,
            ep: artin_hasse_rational(p, ext).reduce_mod_p(p)?,
            s: s_series(p, precision),
            t: t_series(p, precision),
        })
    }

    pub fn perturb(&mut self, degree: usize) -> Result<()> {
        let f = PrimeField(self.prime);
        let bumped = f.add(&self.ep.coeff(degree), &f.one());
        self.ep.set_coeff(degree, bumped)
    }

    fn ep_n(&self) -> ModPSeries {
        self.ep.truncate(self.precision)
    }

    /// Total degree used for the bivariate checks.
    pub fn weak_fe_degree(&self) -> usize {
        self.precision.min(WEAK_FE_MAX_DEGREE)
    }

    /// Runs one identity against these inputs.
    pub fn verify(&self, identity: Identity) -> Result<VerificationReport> {
        let p = self.prime;
        let n = self.precision;
        let two_p = 2 * p.get() as usize;
        if identity.odd_only() {
            need_odd(p)?;
        }
        match identity {
            Identity::Eq2 => {
                need_precision(n, two_p)?;
                run(identity, p, Some(n), || check_eq2(&self.s, &self.ep_n()))
            }
            Identity::Eq3 => {
                need_precision(n, two_p)?;
                run(identity, p, Some(n), || {
                    check_eq3(&self.s, &self.ep_n(), &self.t)
                })
            }
            Identity::PropXp => {
                need_precision(n, two_p)?;
                run(identity, p, Some(n), || {
                    check_prop_xp(&self.ep_n(), &self.t)
                })
            }
            Identity::PropEp => verify_prop_ep(p, n),
            Identity::WeakFeEp => {
                let d = self.weak_fe_degree();
                need_precision(d, two_p)?;
                run(identity, p, Some(d), || {
                    check_weak_fe(&self.ep.truncate(d), d)
                })
            }
            Identity::WeakFeS => {
                let d = self.weak_fe_degree();
                need_precision(d, two_p)?;
                run(identity, p, Some(d), || {
                    check_weak_fe(&self.s.truncate(d), d)
                })
            }
            Identity::LemmaSs => verify_lemma_ss(p),
            Identity::RemarkP2 => {
                if p.is_odd() {
                    return Err(Error::RingMismatch {
                        left: "F_2".into(),
                        right: format!("F_{p}"),
                    });
                }
                need_precision(n, 4)?;
                run(identity, p, Some(n), || check_remark_p2(&self.ep, n))
            }
            Identity::PropCoeffs => {
                let sq = (p.get() * p.get()) as usize;
                run(identity, p, Some(sq), || {
                    check_prop_coeffs(&self.ep.truncate(sq), true)
                })
            }
        }
    }

    /// Every identity in [`Identity::ALL`] order; inapplicable ones are
    /// reported as skipped, too-short precision as insufficient.
    pub fn verify_all(&self) -> Result<Vec<VerificationReport>> {
        Identity::ALL
            .into_iter()
            .map(|id| {
                let precision = match id {
                    Identity::LemmaSs => None,
                    Identity::PropCoeffs => Some((self.prime.get() * self.prime.get()) as usize),
                    Identity::WeakFeEp | Identity::WeakFeS => Some(self.weak_fe_degree()),
                    _ => Some(self.precision),
                };
                if !id.applies_to(self.prime) {
                    let why = if id == Identity::RemarkP2 {
                        "p = 2 only"
                    } else {
                        "odd primes only"
                    };
                    return Ok(VerificationReport::not_run(
                        id,
                        self.prime,
                        precision,
                        Status::Skipped,
                        why.into(),
                    ));
                }
                match self.verify(id) {
                    Err(e @ Error::InsufficientPrecision { .. }) => {
                        Ok(VerificationReport::not_run(
                            id,
                            self.prime,
                            precision,
                            Status::InsufficientPrecision,
                            e.to_string(),
                        ))
                    }
                    other => other,
                }
            })
            .collect()
    }
}

/// Runs every applicable identity at `(p, N)`.
pub fn verify_all(p: Prime, precision: usize) -> Result<Vec<VerificationReport>> {
    VerifyInputs::build(p, precision)?.verify_all()
}

/// `Σ_{k<p} X^k / k!` as a weak-functional-equation negative control.
pub fn truncated_exponential_control(p: Prime, total_degree: usize) -> Result<Discrepancy> {
    check_weak_fe(&truncated_exponential(p, total_degree), total_degree)
}
