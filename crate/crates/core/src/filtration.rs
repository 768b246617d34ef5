//! Reduction numbers and the Ratliff-Rush filtration of a monomial ideal.
//!
//! The principal reduction is always `x = t^e` with `e = e(E)`, so on value
//! sets `I^{n+1} = x I^n` reads `(n+1)E = e + nE`. The closure of the `m`-th
//! power is computed two ways: by the shift formula `(rE + (m−r)e) ∩ S` and by
//! the colon union `∪_n ((n+1)mE − n·mE) ∩ S`. For monomial ideals the colon
//! `(J :_R I)` is monomial with value set `(v(J) − v(I)) ∩ S`, which is what
//! lets the second route run on semigroup data alone.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::RelativeIdeal;
use crate::limits;

fn require_integral(ideal: &RelativeIdeal) -> Result<()> {
    if ideal.is_integral() {
        Ok(())
    } else {
        Err(Error::NotIntegral)
    }
}

fn require_proper(ideal: &RelativeIdeal) -> Result<()> {
    require_integral(ideal)?;
    if ideal.contains(0) {
        Err(Error::NotProper)
    } else {
        Ok(())
    }
}

/// Iteration cap for power chains: `c + 2e` steps.
fn safety_cap(ideal: &RelativeIdeal) -> usize {
    (ideal.ambient().conductor() + 2 * ideal.multiplicity()).max(2) as usize
}

/// The powers `0E, 1E, …, rE` of an integral ideal, up to the reduction
/// number `r`. Higher powers are `nE = rE + (n−r)e`.
#[derive(Clone, Debug)]
pub struct Powers {
    ideal: RelativeIdeal,
    powers: Vec<RelativeIdeal>,
}

impl Powers {
    pub fn new(ideal: &RelativeIdeal) -> Result<Self> {
        require_integral(ideal)?;
        let e = ideal.multiplicity();
        let mut powers = vec![RelativeIdeal::whole(Arc::clone(ideal.ambient_arc()))];
        for _ in 0..=safety_cap(ideal) {
            let last = powers.last().unwrap();
            let next = last.add(ideal)?;
            if next == last.shift(e)? {
                return Ok(Self {
                    ideal: ideal.clone(),
                    powers,
                });
            }
            powers.push(next);
        }
        Err(Error::NoStabilization(safety_cap(ideal)))
    }

    pub fn ideal(&self) -> &RelativeIdeal {
        &self.ideal
    }

    pub fn reduction_number(&self) -> usize {
        self.powers.len() - 1
    }

    /// `nE` for any `n`.
    pub fn power(&self, n: usize) -> Result<RelativeIdeal> {
        let r = self.reduction_number();
        if n <= r {
            Ok(self.powers[n].clone())
        } else {
            let steps = i64::try_from(n - r).map_err(|_| Error::Range("power too large".into()))?;
            let by = limits::mul("power shift", steps, self.ideal.multiplicity())?;
            self.powers[r].shift(by)
        }
    }

    /// `(sE + (m−s)e) ∩ S`; equals the Ratliff-Rush closure of `mE` for every
    /// `s ≥ r`.
    pub fn closure_from_power(&self, m: usize, s: usize) -> Result<RelativeIdeal> {
        let e = self.ideal.multiplicity();
        let delta = m as i64 - s as i64;
        self.power(s)?
            .shift(limits::mul("closure shift", delta, e)?)?
            .intersect_ambient()
    }

    /// Ratliff-Rush closure of `mE` via the shift formula.
    pub fn closure(&self, m: usize) -> Result<RelativeIdeal> {
        self.closure_from_power(m, self.reduction_number())
    }
}

/// `min { n : (n+1)E = e(E) + nE }`.
pub fn reduction_number(ideal: &RelativeIdeal) -> Result<usize> {
    Ok(Powers::new(ideal)?.reduction_number())
}

/// Ratliff-Rush closure of `mE` as `(rE + (m−r)e) ∩ S`.
pub fn rr_closure(ideal: &RelativeIdeal, m: usize) -> Result<RelativeIdeal> {
    if m == 0 {
        return Err(Error::Range("power index must be at least 1".into()));
    }
    Powers::new(ideal)?.closure(m)
}

/// Ratliff-Rush closure of `mE` as the stabilized union of the colons
/// `((n+1)·mE − n·mE) ∩ S`.
///
/// The union is final once the power chain of `mE` is stable
/// (`P_{n+1} = P_n + m·e`): from then on every colon is the same set.
pub fn rr_closure_colon(ideal: &RelativeIdeal, m: usize) -> Result<RelativeIdeal> {
    if m == 0 {
        return Err(Error::Range("power index must be at least 1".into()));
    }
    require_integral(ideal)?;
    let base = ideal.scale(m)?;
    let x = base.multiplicity();
    let cap = safety_cap(&base);
    let mut lower = base.clone();
    let mut union: Option<RelativeIdeal> = None;
    for _ in 0..cap {
        let upper = lower.add(&base)?;
        let colon = upper.sub(&lower)?.intersect_ambient()?;
        let grown = match union {
            Some(u) => u.union(&colon)?,
            None => colon,
        };
        let stable = upper == lower.shift(x)?;
        if stable {
            return Ok(grown);
        }
        union = Some(grown);
        lower = upper;
    }
    Err(Error::NoStabilization(cap))
}

/// Asymptotic Ratliff-Rush number: one more than the largest `m < r` whose
/// power is not closed, or 1 when every power is closed.
pub fn h_number(ideal: &RelativeIdeal) -> Result<usize> {
    let powers = Powers::new(ideal)?;
    h_from_powers(&powers)
}

fn h_from_powers(powers: &Powers) -> Result<usize> {
    let r = powers.reduction_number();
    for m in (1..r).rev() {
        if powers.power(m)? != powers.closure(m)? {
            return Ok(m + 1);
        }
    }
    Ok(1)
}

/// `min { m : rE + (m−r)e ⊆ C }` for the conductor ideal `C = c + ℕ`.
pub fn conductor_index_l(ideal: &RelativeIdeal) -> Result<usize> {
    require_proper(ideal)?;
    let powers = Powers::new(ideal)?;
    conductor_index_from_powers(&powers)
}

fn conductor_index_from_powers(powers: &Powers) -> Result<usize> {
    let ideal = powers.ideal();
    let conductor = RelativeIdeal::conductor_ideal(Arc::clone(ideal.ambient_arc()));
    let r = powers.reduction_number();
    let top = powers.power(r)?;
    let e = ideal.multiplicity();
    let cap = (ideal.ambient().conductor() / e.max(1) + 2) as usize + r;
    for m in 0..=cap {
        let shifted = top.shift(limits::mul("conductor index", m as i64 - r as i64, e)?)?;
        if shifted.is_subset(&conductor)? {
            return Ok(m);
        }
    }
    Err(Error::NoStabilization(cap))
}

/// `r ≥ 2` and `(r − 1)·e ≥ c`.
pub fn suff_condition(ideal: &RelativeIdeal) -> Result<bool> {
    let r = reduction_number(ideal)?;
    Ok(suff_from(
        r,
        ideal.multiplicity(),
        ideal.ambient().conductor(),
    ))
}

fn suff_from(r: usize, e: i64, c: i64) -> bool {
    r >= 2 && (r as i64 - 1) * e >= c
}

/// Reduction number of `mE` against the bound `⌈r/m⌉`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PowerBound {
    pub m: usize,
    pub r_of_power: usize,
    pub bound: usize,
    pub ok: bool,
}

pub fn power_reduction_bound_check(ideal: &RelativeIdeal, m: usize) -> Result<PowerBound> {
    if m < 2 {
        return Err(Error::Range(format!(
            "power index must be at least 2, got {m}"
        )));
    }
    let r = reduction_number(ideal)?;
    let r_of_power = reduction_number(&ideal.scale(m)?)?;
    let bound = r.div_ceil(m);
    Ok(PowerBound {
        m,
        r_of_power,
        bound,
        ok: r_of_power <= bound,
    })
}

/// Closure data for one power `mE`.
#[derive(Clone, Debug, Serialize)]
pub struct PowerClosure {
    pub m: usize,
    pub closed: bool,
    pub closure_gens: Vec<i64>,
    #[serde(skip)]
    pub power: RelativeIdeal,
    #[serde(skip)]
    pub closure: RelativeIdeal,
}

/// Everything the filtration knows about one ideal.
#[derive(Clone, Debug, Serialize)]
pub struct RRReport {
    #[serde(skip)]
    pub ideal: RelativeIdeal,
    pub ambient: Vec<i64>,
    pub gens: Vec<i64>,
    pub e: i64,
    pub c: i64,
    pub r: usize,
    pub h: usize,
    pub l: usize,
    #[serde(rename = "prop1")]
    pub prop1_applies: bool,
    #[serde(rename = "suff")]
    pub suff_applies: bool,
    pub powers: Vec<PowerClosure>,
}

impl RRReport {
    pub fn compute(ideal: &RelativeIdeal) -> Result<Self> {
        require_proper(ideal)?;
        let powers = Powers::new(ideal)?;
        let r = powers.reduction_number();
        let e = ideal.multiplicity();
        let c = ideal.ambient().conductor();
        let l = conductor_index_from_powers(&powers)?;
        let mut closures = Vec::new();
        for m in 1..=r.max(1) {
            let power = powers.power(m)?;
            let closure = powers.closure(m)?;
            closures.push(PowerClosure {
                m,
                closed: power == closure,
                closure_gens: closure.gens().to_vec(),
                power,
                closure,
            });
        }
        let h = 1 + closures
            .iter()
            .filter(|pc| !pc.closed)
            .map(|pc| pc.m)
            .max()
            .unwrap_or(0);
        Ok(Self {
            ideal: ideal.clone(),
            ambient: ideal.ambient().gens().to_vec(),
            gens: ideal.gens().to_vec(),
            e,
            c,
            r,
            h,
            l,
            prop1_applies: l < r,
            suff_applies: suff_from(r, e, c),
            powers: closures,
        })
    }

    /// Closed flags for `m = 1, 2, …` as a string of `1`/`0`.
    pub fn closed_flags(&self) -> String {
        self.powers
            .iter()
            .map(|pc| if pc.closed { '1' } else { '0' })
            .collect()
    }

    /// Descriptions of every violated filtration invariant (empty when
    /// consistent).
    pub fn breaches(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.h < 1 || (self.r >= 1 && self.h > self.r) || (self.r <= 1 && self.h != 1) {
            out.push(format!("h={} out of range for r={}", self.h, self.r));
        }
        for pc in &self.powers {
            if pc.m >= self.h && !pc.closed {
                out.push(format!("power {} open although m >= h", pc.m));
            }
            if pc.closure.multiplicity() != pc.m as i64 * self.e {
                out.push(format!("closure of power {} has wrong multiplicity", pc.m));
            }
            if !pc.power.is_subset(&pc.closure).unwrap_or(false) {
                out.push(format!("closure of power {} does not contain it", pc.m));
            }
            if self.l <= pc.m && pc.m < self.r && pc.closed {
                out.push(format!("power {} closed although l <= m < r", pc.m));
            }
        }
        if self.suff_applies && self.h != self.r {
            out.push("sufficient condition holds but h != r".into());
        }
        if self.prop1_applies && self.h != self.r {
            out.push("l < r but h != r".into());
        }
        let ceil = (self.c + self.e - 1).div_euclid(self.e).max(0) as usize;
        if self.l != ceil {
            out.push(format!("l={} differs from ceil(c/e)={}", self.l, ceil));
        }
        out
    }
}
