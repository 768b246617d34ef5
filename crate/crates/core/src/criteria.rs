//! Microinvariants and Cohen-Macaulay criteria for associated graded rings
//! and modules, and the pullback test deciding whether `h = 1`.
//!
//! For `E ⊆ S` with `e = e(E)`, the pullback ring `k + I` has value semigroup
//! `T = {0} ∪ E`, and `J = t^e R` has value set `F = e + S`, an ideal of `T`.
//! `gr_I(R)` is Cohen-Macaulay (equivalently `h = 1`) exactly when the
//! microinvariants of `F` over `T` satisfy `a_i(F) = b_i(F)` for every residue.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::RelativeIdeal;
use crate::semigroup::{AperyTable, NumericalSemigroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MicroKind {
    Semigroup,
    Ideal,
}

/// Parallel `a`/`b` arrays, indexed by residue class modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Microinvariants {
    pub modulus: i64,
    pub apery: AperyTable,
    pub apery_blowup: AperyTable,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub kind: MicroKind,
}

fn a_values(apery: &AperyTable, blowup: &AperyTable) -> Result<Vec<i64>> {
    let n = apery.modulus();
    apery
        .entries()
        .iter()
        .zip(blowup.entries())
        .map(|(&w, &wb)| {
            let diff = w - wb;
            if diff.rem_euclid(n) != 0 || diff < 0 {
                Err(Error::IndivisibleApery { diff, modulus: n })
            } else {
                Ok(diff / n)
            }
        })
        .collect()
}

impl Microinvariants {
    /// `a_i(S)` from the Apéry sets of `S` and `B(S)`; `b_i(S)` is the order
    /// of `ω_i` in the `M`-adic filtration.
    pub fn of_semigroup(s: &NumericalSemigroup) -> Result<Self> {
        let apery = s.apery_table().clone();
        let modulus = apery.modulus();
        let apery_blowup = s.blowup().apery(modulus)?;
        let a = a_values(&apery, &apery_blowup)?;
        let ord = s.order_table(apery.max())?;
        let b = apery
            .entries()
            .iter()
            .map(|&w| ord[w as usize].map(i64::from).ok_or(Error::NotMember(w)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            modulus,
            apery,
            apery_blowup,
            a,
            b,
            kind: MicroKind::Semigroup,
        })
    }

    /// `a_i(E)` from the Apéry sets of `E` and `B(E)`; `b_i(E)` is
    /// `1 + max { l : α_i ∈ lM + E }`.
    pub fn of_ideal(e: &RelativeIdeal) -> Result<Self> {
        let ambient = e.ambient();
        let modulus = ambient.multiplicity();
        let apery = e.apery(modulus)?;
        let apery_blowup = e.blowup()?.apery(modulus)?;
        let a = a_values(&apery, &apery_blowup)?;
        let ord = ideal_order_table(e, apery.max());
        let lo = e.multiplicity();
        let b = apery
            .entries()
            .iter()
            .map(|&alpha| {
                ord[(alpha - lo) as usize]
                    .map(|o| i64::from(o) + 1)
                    .ok_or(Error::NotMember(alpha))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            modulus,
            apery,
            apery_blowup,
            a,
            b,
            kind: MicroKind::Ideal,
        })
    }

    pub fn is_cm(&self) -> bool {
        self.a == self.b
    }
}

/// Order of each `z ∈ [e(E), upto]` in the filtration `E ⊇ M+E ⊇ 2M+E ⊇ …`
/// (`None` off `E`).
fn ideal_order_table(e: &RelativeIdeal, upto: i64) -> Vec<Option<u32>> {
    let lo = e.multiplicity();
    let gens = e.ambient().gens();
    let len = (upto - lo + 1).max(0) as usize;
    let mut ord: Vec<Option<u32>> = vec![None; len];
    for i in 0..len {
        let z = lo + i as i64;
        if !e.contains(z) {
            continue;
        }
        let deeper = gens
            .iter()
            .filter(|&&g| z - g >= lo)
            .filter_map(|&g| ord[(z - g - lo) as usize])
            .max()
            .map_or(0, |o| o + 1);
        ord[i] = Some(deeper);
    }
    ord
}

/// Cohen-Macaulayness of `gr_M(k[[S]])`: `a_i(S) = b_i(S)` for all `i`.
pub fn gr_ring_is_cm(s: &NumericalSemigroup) -> Result<bool> {
    Ok(Microinvariants::of_semigroup(s)?.is_cm())
}

/// Cohen-Macaulayness of `gr_M(I)` as a module: `a_i(E) = b_i(E)` for all `i`.
pub fn gr_module_is_cm(e: &RelativeIdeal) -> Result<bool> {
    Ok(Microinvariants::of_ideal(e)?.is_cm())
}

/// Value-set images of the pullback `U = k + I` and of `J = xR`.
#[derive(Clone, Debug)]
pub struct PullbackData {
    pub t: Arc<NumericalSemigroup>,
    pub f: RelativeIdeal,
    pub micro: Microinvariants,
    pub verdict: bool,
}

/// `T = {0} ∪ E` for a proper integral ideal.
pub fn pullback_semigroup(e: &RelativeIdeal) -> Result<NumericalSemigroup> {
    if !e.is_integral() {
        return Err(Error::NotIntegral);
    }
    if e.contains(0) {
        return Err(Error::NotProper);
    }
    let mut elements = Vec::with_capacity(e.sporadic().len() + 1);
    elements.push(0);
    elements.extend_from_slice(e.sporadic());
    NumericalSemigroup::from_elements(&elements, e.tail())
}

impl PullbackData {
    pub fn new(e: &RelativeIdeal) -> Result<Self> {
        let t = Arc::new(pullback_semigroup(e)?);
        let f = RelativeIdeal::whole(Arc::clone(e.ambient_arc()))
            .shift(e.multiplicity())?
            .with_ambient(Arc::clone(&t))?;
        let micro = Microinvariants::of_ideal(&f)?;
        debug_assert_eq!(micro.modulus, e.multiplicity());
        let verdict = micro.is_cm();
        Ok(Self {
            t,
            f,
            micro,
            verdict,
        })
    }

    pub fn modulus(&self) -> i64 {
        self.micro.modulus
    }
}

/// `h = 1` decided through the microinvariants of `F` over `T`.
pub fn h_is_one(e: &RelativeIdeal) -> Result<bool> {
    Ok(PullbackData::new(e)?.verdict)
}

/// For integrally closed `E`, `h = 1` iff `gr(k[[T]])` is Cohen-Macaulay.
/// Returns `None` when `E` is not integrally closed.
pub fn intclosed_h_one(e: &RelativeIdeal) -> Result<Option<bool>> {
    if e.integral_closure()? != *e {
        return Ok(None);
    }
    Ok(Some(gr_ring_is_cm(&pullback_semigroup(e)?)?))
}
