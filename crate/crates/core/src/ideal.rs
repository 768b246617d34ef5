//! Relative ideals of a numerical semigroup.
//!
//! An ideal is kept in eventually-full canonical form: the finite list of
//! elements below `tail` plus the whole ray `[tail, ∞)`, with `tail` minimal.
//! Two ideals over the same ambient semigroup are equal as sets exactly when
//! their canonical forms coincide. Elements may be negative (differences of
//! ideals, blow-ups).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits;
use crate::notation;
use crate::semigroup::{AperyTable, NumericalSemigroup};

#[derive(Clone, Debug)]
pub struct RelativeIdeal {
    ambient: Arc<NumericalSemigroup>,
    sporadic: Vec<i64>,
    tail: i64,
    gens: Vec<i64>,
}

impl PartialEq for RelativeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.same_ambient(other) && self.tail == other.tail && self.sporadic == other.sporadic
    }
}

impl Eq for RelativeIdeal {}

impl RelativeIdeal {
    /// The ideal `∪ (g + S)` over `g ∈ generators`.
    pub fn new(ambient: impl Into<Arc<NumericalSemigroup>>, generators: &[i64]) -> Result<Self> {
        let ambient = ambient.into();
        let lo = *generators.iter().min().ok_or(Error::EmptyGenerators)?;
        for &g in generators {
            limits::check("ideal generator", g)?;
        }
        let hi = limits::add("ideal window", lo, ambient.conductor())?;
        let s = Arc::clone(&ambient);
        Self::from_window(ambient, lo, hi, |z| {
            generators.iter().any(|&g| s.contains(z - g))
        })
    }

    /// The ambient semigroup viewed as an ideal of itself.
    pub fn whole(ambient: impl Into<Arc<NumericalSemigroup>>) -> Self {
        Self::new(ambient, &[0]).expect("S as an ideal of itself")
    }

    /// The conductor ideal `c + ℕ`.
    pub fn conductor_ideal(ambient: impl Into<Arc<NumericalSemigroup>>) -> Self {
        let ambient = ambient.into();
        let c = ambient.conductor();
        Self::from_window(ambient, c, c, |_| true).expect("conductor ideal")
    }

    /// Canonicalizes the set described by `member` on `[lo, hi)`, with nothing
    /// below `lo` and everything from `hi` on. The set must be closed under
    /// adding ambient elements.
    pub(crate) fn from_window<F>(
        ambient: Arc<NumericalSemigroup>,
        lo: i64,
        hi: i64,
        member: F,
    ) -> Result<Self>
    where
        F: Fn(i64) -> bool,
    {
        limits::check("ideal window start", lo)?;
        limits::check("ideal window end", hi)?;
        let hi = hi.max(lo);
        limits::check("ideal window width", hi - lo)?;
        let bits: Vec<bool> = (lo..hi).map(&member).collect();
        let tail = match bits.iter().rposition(|&b| !b) {
            Some(gap) => lo + gap as i64 + 1,
            None => lo,
        };
        let sporadic: Vec<i64> = (lo..tail).filter(|&z| bits[(z - lo) as usize]).collect();
        let gens = minimal_generators(&ambient, &sporadic, tail);
        Ok(Self {
            ambient,
            sporadic,
            tail,
            gens,
        })
    }

    pub fn ambient(&self) -> &NumericalSemigroup {
        &self.ambient
    }

    pub fn ambient_arc(&self) -> &Arc<NumericalSemigroup> {
        &self.ambient
    }

    /// Elements strictly below [`Self::tail`].
    pub fn sporadic(&self) -> &[i64] {
        &self.sporadic
    }

    /// Least `τ` with `[τ, ∞)` inside the ideal.
    pub fn tail(&self) -> i64 {
        self.tail
    }

    /// Minimal generators `e_1 < … < e_h`.
    pub fn gens(&self) -> &[i64] {
        &self.gens
    }

    /// Smallest element `e(E)`.
    pub fn multiplicity(&self) -> i64 {
        self.gens[0]
    }

    pub fn contains(&self, z: i64) -> bool {
        z >= self.tail || self.sporadic.binary_search(&z).is_ok()
    }

    /// Members in `[lo, hi)`.
    pub fn elements_in(&self, lo: i64, hi: i64) -> impl Iterator<Item = i64> + '_ {
        (lo.max(self.multiplicity())..hi).filter(move |&z| self.contains(z))
    }

    pub fn same_ambient(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient.gens() == other.ambient.gens()
    }

    fn require_same_ambient(&self, other: &Self) -> Result<()> {
        if self.same_ambient(other) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// True when the ideal lies inside its ambient semigroup.
    pub fn is_integral(&self) -> bool {
        self.gens.iter().all(|&g| self.ambient.contains(g))
    }

    /// True when `0` is an element, i.e. the ideal is the whole semigroup
    /// (for integral ideals).
    pub fn is_whole(&self) -> bool {
        self.contains(0) && self.is_integral()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_ambient(other)?;
        let lo = limits::add("ideal sum", self.multiplicity(), other.multiplicity())?;
        let hi = limits::add("ideal sum", self.tail, other.multiplicity())?.min(limits::add(
            "ideal sum",
            other.tail,
            self.multiplicity(),
        )?);
        Self::from_window(Arc::clone(&self.ambient), lo, hi, |z| {
            self.gens.iter().any(|&g| other.contains(z - g))
        })
    }

    /// `n`-fold sum; `0·E` is the ambient semigroup.
    pub fn scale(&self, n: usize) -> Result<Self> {
        let mut acc = Self::whole(Arc::clone(&self.ambient));
        for _ in 0..n {
            acc = acc.add(self)?;
        }
        Ok(acc)
    }

    /// `z + E`.
    pub fn shift(&self, z: i64) -> Result<Self> {
        let tail = limits::add("ideal shift", self.tail, z)?;
        let sporadic = self
            .sporadic
            .iter()
            .map(|&s| limits::add("ideal shift", s, z))
            .collect::<Result<Vec<_>>>()?;
        let gens = self
            .gens
            .iter()
            .map(|&g| limits::add("ideal shift", g, z))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            ambient: Arc::clone(&self.ambient),
            sporadic,
            tail,
            gens,
        })
    }

    /// `E1 − E2 = { z : z + E2 ⊆ E1 }`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_ambient(other)?;
        let lo = self.multiplicity() - other.multiplicity();
        let hi = self.tail - other.multiplicity();
        Self::from_window(Arc::clone(&self.ambient), lo, hi, |z| {
            other.gens.iter().all(|&g| self.contains(z + g))
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.require_same_ambient(other)?;
        let lo = self.multiplicity().max(other.multiplicity());
        let hi = self.tail.max(other.tail);
        Self::from_window(Arc::clone(&self.ambient), lo, hi, |z| {
            self.contains(z) && other.contains(z)
        })
    }

    /// `E ∩ S` for the ambient semigroup `S`.
    pub fn intersect_ambient(&self) -> Result<Self> {
        self.intersect(&Self::whole(Arc::clone(&self.ambient)))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.require_same_ambient(other)?;
        let lo = self.multiplicity().min(other.multiplicity());
        let hi = self.tail.min(other.tail);
        Self::from_window(Arc::clone(&self.ambient), lo, hi, |z| {
            self.contains(z) || other.contains(z)
        })
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.require_same_ambient(other)?;
        Ok(self.gens.iter().all(|&g| other.contains(g)))
    }

    /// `{ s ∈ S : s ≥ e(E) }`.
    pub fn integral_closure(&self) -> Result<Self> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        let e = self.multiplicity();
        let hi = e.max(self.ambient.conductor());
        let s = Arc::clone(&self.ambient);
        Self::from_window(Arc::clone(&self.ambient), e, hi, |z| s.contains(z))
    }

    /// `{e_1 − m, …, e_h − m} + B(S)`, an ideal over the blow-up of the
    /// ambient semigroup.
    pub fn blowup(&self) -> Result<Self> {
        let m = self.ambient.multiplicity();
        let gens: Vec<i64> = self.gens.iter().map(|&g| g - m).collect();
        Self::new(self.ambient.blowup(), &gens)
    }

    pub fn apery(&self, modulus: i64) -> Result<AperyTable> {
        if modulus < 1 {
            return Err(Error::BadModulus(modulus));
        }
        let end = limits::add("ideal apery scan", self.tail, modulus)?;
        AperyTable::from_ascending(modulus, self.sporadic.iter().copied().chain(self.tail..end))
    }

    /// The same element set regarded as an ideal of another semigroup.
    pub fn with_ambient(&self, ambient: impl Into<Arc<NumericalSemigroup>>) -> Result<Self> {
        let ambient = ambient.into();
        for &z in &self.sporadic {
            for &g in ambient.gens() {
                if !self.contains(z + g) {
                    return Err(Error::NotAnIdeal {
                        element: z,
                        generator: g,
                    });
                }
            }
        }
        let gens = minimal_generators(&ambient, &self.sporadic, self.tail);
        Ok(Self {
            ambient,
            sporadic: self.sporadic.clone(),
            tail: self.tail,
            gens,
        })
    }

    /// Elements of `E` below the tail followed by the tail marker.
    pub fn to_set_string(&self, ascii: bool) -> String {
        notation::format_set(&self.sporadic, self.tail, ascii)
    }
}

/// Minimal generators of `sporadic ∪ [tail, ∞)` over `ambient`. Nothing at or
/// above `tail + m` can be a minimal generator.
fn minimal_generators(ambient: &NumericalSemigroup, sporadic: &[i64], tail: i64) -> Vec<i64> {
    let m = ambient.multiplicity();
    let mut gens: Vec<i64> = Vec::new();
    for z in sporadic.iter().copied().chain(tail..tail + m) {
        if !gens.iter().any(|&g| ambient.contains(z - g)) {
            gens.push(z);
        }
    }
    gens
}

impl fmt::Display for RelativeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", notation::join(&self.gens), self.ambient)
    }
}
