//! Brute-force recomputation of the set-level operations on bounded windows.
//!
//! Nothing here goes through [`RelativeIdeal`] arithmetic: semigroups are
//! rebuilt from their generators by a membership scan, ideals from their
//! generators, and sums/differences by double loops. A [`BoundedSet`] is only
//! ever produced when its window is certified, i.e. when every element at or
//! above `end` is known to be in the set.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::RelativeIdeal;
use crate::limits;
use crate::semigroup::{AperyTable, NumericalSemigroup};

/// A set of integers known exactly on `[lo, end)`, empty below `lo`, and (when
/// `cofinal`) containing all of `[end, ∞)`.
#[derive(Clone, Debug)]
pub struct BoundedSet {
    lo: i64,
    end: i64,
    bits: Vec<bool>,
    cofinal: bool,
}

fn too_small(what: &str) -> Error {
    Error::WindowTooSmall(what.to_string())
}

impl BoundedSet {
    fn from_fn(lo: i64, end: i64, member: impl Fn(i64) -> bool) -> Result<Self> {
        limits::check("oracle window", end - lo)?;
        let end = end.max(lo);
        Ok(Self {
            lo,
            end,
            bits: (lo..end).map(member).collect(),
            cofinal: true,
        })
    }

    /// Membership scan of `⟨gens⟩` up to at least `min_end`, extended until
    /// the window ends in a run of `min(gens)` consecutive members.
    pub fn semigroup(gens: &[i64], min_end: i64) -> Result<Self> {
        let step = *gens.iter().min().ok_or(Error::EmptyGenerators)?;
        if step <= 0 {
            return Err(Error::NonPositiveGenerator(step));
        }
        let bound = limits::scan_bound();
        let mut bits = vec![true];
        let mut run = 1i64;
        let mut z = 1i64;
        while z < min_end.max(step) || run < step {
            if z > bound {
                return Err(too_small("no conductor below the scan bound"));
            }
            let member = gens.iter().any(|&g| g <= z && bits[(z - g) as usize]);
            run = if member { run + 1 } else { 0 };
            bits.push(member);
            z += 1;
        }
        Ok(Self {
            lo: 0,
            end: z,
            bits,
            cofinal: true,
        })
    }

    /// `∪ (g + S)` for a certified semigroup window `S`.
    pub fn ideal(semigroup: &BoundedSet, gens: &[i64]) -> Result<Self> {
        let lo = *gens.iter().min().ok_or(Error::EmptyGenerators)?;
        Self::from_fn(lo, lo + semigroup.end, |z| {
            gens.iter().any(|&g| semigroup.contains(z - g))
        })
    }

    pub fn contains(&self, z: i64) -> bool {
        if z < self.lo {
            false
        } else if z >= self.end {
            self.cofinal
        } else {
            self.bits[(z - self.lo) as usize]
        }
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.end)
    }

    fn certified(&self, what: &str) -> Result<()> {
        if self.cofinal {
            Ok(())
        } else {
            Err(too_small(what))
        }
    }

    pub fn min(&self) -> Option<i64> {
        (self.lo..self.end)
            .find(|&z| self.contains(z))
            .or(if self.cofinal { Some(self.end) } else { None })
    }

    fn members(&self) -> impl Iterator<Item = i64> + '_ {
        (self.lo..self.end).filter(move |&z| self.contains(z))
    }

    /// Set equality (both sets are known everywhere).
    pub fn same_set(&self, other: &BoundedSet) -> bool {
        let lo = self.lo.min(other.lo) - 1;
        let hi = self.end.max(other.end) + 1;
        self.cofinal == other.cofinal && (lo..hi).all(|z| self.contains(z) == other.contains(z))
    }

    /// Set equality against a canonical-form ideal.
    pub fn matches(&self, ideal: &RelativeIdeal) -> bool {
        let lo = self.lo.min(ideal.multiplicity()) - 1;
        let hi = self.end.max(ideal.tail()) + 1;
        self.cofinal && (lo..hi).all(|z| self.contains(z) == ideal.contains(z))
    }

    pub fn without(&self, z: i64) -> Self {
        let mut out = self.clone();
        if z >= out.lo && z < out.end {
            out.bits[(z - out.lo) as usize] = false;
        }
        out
    }

    /// Largest non-member plus one.
    pub fn conductor(&self) -> Result<i64> {
        self.certified("conductor")?;
        Ok((self.lo..self.end)
            .rev()
            .find(|&z| !self.contains(z))
            .map_or(self.lo, |z| z + 1))
    }

    pub fn apery(&self, modulus: i64) -> Result<AperyTable> {
        self.certified("apery")?;
        let start = self.min().ok_or_else(|| too_small("empty set"))?;
        AperyTable::from_ascending(
            modulus,
            (start..self.end.max(start) + modulus).filter(|&z| self.contains(z)),
        )
    }
}

pub fn o_sum(a: &BoundedSet, b: &BoundedSet) -> Result<BoundedSet> {
    a.certified("sum")?;
    b.certified("sum")?;
    let (min_a, min_b) = (
        a.min().ok_or_else(|| too_small("empty"))?,
        b.min().ok_or_else(|| too_small("empty"))?,
    );
    let lo = min_a + min_b;
    let end = (a.end + min_b).min(b.end + min_a);
    let mut bits = vec![false; (end - lo).max(0) as usize];
    let bs: Vec<i64> = b.members().collect();
    for x in a.members() {
        for &y in &bs {
            let z = x + y;
            if z >= end {
                break;
            }
            bits[(z - lo) as usize] = true;
        }
    }
    Ok(BoundedSet {
        lo,
        end,
        bits,
        cofinal: true,
    })
}

/// `n`-fold sum, with `0·A = S`.
pub fn o_scale(a: &BoundedSet, n: usize, semigroup: &BoundedSet) -> Result<BoundedSet> {
    let mut acc = semigroup.clone();
    for _ in 0..n {
        acc = o_sum(&acc, a)?;
    }
    Ok(acc)
}

/// `{ z : z + B ⊆ A }`, checking every element of `B` below the point where
/// `A` is full.
pub fn o_diff(a: &BoundedSet, b: &BoundedSet) -> Result<BoundedSet> {
    a.certified("difference")?;
    b.certified("difference")?;
    let min_a = a.min().ok_or_else(|| too_small("empty"))?;
    let min_b = b.min().ok_or_else(|| too_small("empty"))?;
    BoundedSet::from_fn(min_a - min_b, a.end - min_b, |z| {
        (min_b..a.end - z).all(|y| !b.contains(y) || a.contains(z + y))
    })
}

pub fn o_intersect(a: &BoundedSet, b: &BoundedSet) -> Result<BoundedSet> {
    a.certified("intersection")?;
    b.certified("intersection")?;
    BoundedSet::from_fn(a.lo.max(b.lo), a.end.max(b.end), |z| {
        a.contains(z) && b.contains(z)
    })
}

pub fn o_union(a: &BoundedSet, b: &BoundedSet) -> Result<BoundedSet> {
    a.certified("union")?;
    b.certified("union")?;
    BoundedSet::from_fn(a.lo.min(b.lo), a.end.min(b.end), |z| {
        a.contains(z) || b.contains(z)
    })
}

pub fn o_shift(a: &BoundedSet, by: i64) -> BoundedSet {
    BoundedSet {
        lo: a.lo + by,
        end: a.end + by,
        bits: a.bits.clone(),
        cofinal: a.cofinal,
    }
}

/// Ratliff-Rush closure of `mE`: `∪_n ((n+1)·mE − n·mE) ∩ S`, iterated until
/// the union repeats and the power chain satisfies `P_{n+1} = P_n + min(P_1)`.
pub fn o_rr(e: &BoundedSet, semigroup: &BoundedSet, m: usize, cap: usize) -> Result<BoundedSet> {
    let base = o_scale(e, m, semigroup)?;
    let x = base.min().ok_or_else(|| too_small("empty"))?;
    let mut lower = base.clone();
    let mut union: Option<BoundedSet> = None;
    for _ in 0..cap {
        let upper = o_sum(&lower, &base)?;
        let colon = o_intersect(&o_diff(&upper, &lower)?, semigroup)?;
        let grown = match &union {
            Some(u) => o_union(u, &colon)?,
            None => colon,
        };
        let repeated = union.as_ref().is_some_and(|u| u.same_set(&grown));
        let chain_stable = upper.same_set(&o_shift(&lower, x));
        if repeated && chain_stable {
            return Ok(grown);
        }
        union = Some(grown);
        lower = upper;
    }
    Err(Error::NoStabilization(cap))
}

/// `B(E) = ∪_i ((E + (i−1)M) − iM)`, iterated until the union repeats and
/// `iM = m + (i−1)M`.
pub fn o_blowup(e: &BoundedSet, semigroup: &BoundedSet, cap: usize) -> Result<BoundedSet> {
    let maximal = semigroup.without(0);
    let m = maximal.min().ok_or_else(|| too_small("empty"))?;
    let mut lower = semigroup.clone(); // (i-1)M
    let mut union: Option<BoundedSet> = None;
    for _ in 0..cap {
        let upper = o_sum(&lower, &maximal)?; // iM
        let piece = o_diff(&o_sum(e, &lower)?, &upper)?;
        let grown = match &union {
            Some(u) => o_union(u, &piece)?,
            None => piece,
        };
        let repeated = union.as_ref().is_some_and(|u| u.same_set(&grown));
        let chain_stable = upper.same_set(&o_shift(&lower, m));
        if repeated && chain_stable {
            return Ok(grown);
        }
        union = Some(grown);
        lower = upper;
    }
    Err(Error::NoStabilization(cap))
}

/// `B(S) = ∪_l (lM − lM)`, with the same stopping rule as [`o_blowup`].
pub fn o_blowup_semigroup(semigroup: &BoundedSet, cap: usize) -> Result<BoundedSet> {
    let maximal = semigroup.without(0);
    let m = maximal.min().ok_or_else(|| too_small("empty"))?;
    let mut power = maximal.clone();
    let mut union: Option<BoundedSet> = None;
    for _ in 0..cap {
        let piece = o_diff(&power, &power)?;
        let grown = match &union {
            Some(u) => o_union(u, &piece)?,
            None => piece,
        };
        let next = o_sum(&power, &maximal)?;
        let repeated = union.as_ref().is_some_and(|u| u.same_set(&grown));
        if repeated && next.same_set(&o_shift(&power, m)) {
            return Ok(grown);
        }
        union = Some(grown);
        power = next;
    }
    Err(Error::NoStabilization(cap))
}

/// `{ s ∈ S : s ≥ min(E) }`.
pub fn o_integral_closure(e: &BoundedSet, semigroup: &BoundedSet) -> Result<BoundedSet> {
    let lo = e.min().ok_or_else(|| too_small("empty"))?;
    BoundedSet::from_fn(lo, semigroup.end.max(lo), |z| semigroup.contains(z))
}

/// Oracle versions of an instance's ambient semigroup and ideal.
pub fn rebuild(ideal: &RelativeIdeal) -> Result<(BoundedSet, BoundedSet)> {
    let s = BoundedSet::semigroup(ideal.ambient().gens(), 0)?;
    let e = BoundedSet::ideal(&s, ideal.gens())?;
    Ok((s, e))
}

fn cap_for(ideal: &RelativeIdeal) -> usize {
    (ideal.ambient().conductor() + 2 * ideal.multiplicity().max(1) + 4) as usize
}

/// Compares the shift-formula closure, the colon closure and [`o_rr`] for
/// `m = 1, …, r + 1`, plus the ideal blow-up. Returns one line per mismatch.
pub fn cross_check_closures(ideal: &RelativeIdeal) -> Result<Vec<String>> {
    use crate::filtration::{rr_closure_colon, Powers};
    let (s, e) = rebuild(ideal)?;
    let mut out = Vec::new();
    if !e.matches(ideal) {
        out.push(format!("{ideal}: canonical form differs from oracle"));
    }
    let powers = Powers::new(ideal)?;
    let cap = cap_for(ideal);
    for m in 1..=powers.reduction_number() + 1 {
        let shift = powers.closure(m)?;
        let colon = rr_closure_colon(ideal, m)?;
        let brute = o_rr(&e, &s, m, cap)?;
        if shift != colon {
            out.push(format!("{ideal}: m={m} shift closure != colon closure"));
        }
        if !brute.matches(&shift) {
            out.push(format!("{ideal}: m={m} shift closure != oracle closure"));
        }
    }
    let blow = ideal.blowup()?;
    let o_blow_s = BoundedSet::semigroup(blow.ambient().gens(), 0)?;
    let o_blow = o_blowup(&e, &s, cap)?;
    if !o_blow.matches(&blow) {
        out.push(format!("{ideal}: blow-up differs from oracle"));
    }
    if !o_blowup_semigroup(&s, cap)?.same_set(&o_blow_s) {
        out.push(format!(
            "{}: semigroup blow-up differs from oracle",
            ideal.ambient()
        ));
    }
    Ok(out)
}

/// Compares every binary and unary ideal operation on `(a, b)` against the
/// oracle. Returns one line per mismatch.
pub fn cross_check_arith(a: &RelativeIdeal, b: &RelativeIdeal) -> Result<Vec<String>> {
    let s = BoundedSet::semigroup(a.ambient().gens(), 0)?;
    let oa = BoundedSet::ideal(&s, a.gens())?;
    let ob = BoundedSet::ideal(&s, b.gens())?;
    let mut out = Vec::new();
    let mut expect = |name: &str, oracle: &BoundedSet, lib: &RelativeIdeal| {
        if !oracle.matches(lib) {
            out.push(format!("{a} / {b}: {name} differs from oracle"));
        }
    };
    expect("a", &oa, a);
    expect("b", &ob, b);
    expect("a+b", &o_sum(&oa, &ob)?, &a.add(b)?);
    expect("a-b", &o_diff(&oa, &ob)?, &a.sub(b)?);
    expect("b-a", &o_diff(&ob, &oa)?, &b.sub(a)?);
    expect("a∩b", &o_intersect(&oa, &ob)?, &a.intersect(b)?);
    expect("a∪b", &o_union(&oa, &ob)?, &a.union(b)?);
    expect("3a", &o_scale(&oa, 3, &s)?, &a.scale(3)?);
    expect("a-7", &o_shift(&oa, -7), &a.shift(-7)?);
    expect(
        "bar a",
        &o_integral_closure(&oa, &s)?,
        &a.integral_closure()?,
    );
    let c = s.conductor()?;
    expect(
        "conductor",
        &BoundedSet::from_fn(c, c, |_| true)?,
        &RelativeIdeal::conductor_ideal(std::sync::Arc::clone(a.ambient_arc())),
    );
    let subset = (oa.lo.min(ob.lo)..oa.end.max(ob.end)).all(|z| !oa.contains(z) || ob.contains(z));
    if subset != a.is_subset(b)? {
        out.push(format!("{a} / {b}: subset test differs from oracle"));
    }
    let modulus = a.ambient().multiplicity();
    if oa.apery(modulus)? != a.apery(modulus)? {
        out.push(format!("{a}: apery table differs from oracle"));
    }
    if s.conductor()? != a.ambient().conductor() {
        out.push(format!("{}: conductor differs from oracle", a.ambient()));
    }
    Ok(out)
}

/// Bounds for randomly drawn `(S, E)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceBounds {
    pub min_mult: i64,
    pub max_mult: i64,
    /// Semigroup generators are drawn below this value.
    pub max_gen: i64,
    pub max_sgp_gens: usize,
    pub max_ideal_gens: usize,
    /// Ideal generators are drawn from `S ∩ [1, c + ideal_slack)`.
    pub ideal_slack: i64,
}

impl Default for InstanceBounds {
    fn default() -> Self {
        Self {
            min_mult: 3,
            max_mult: 12,
            max_gen: 60,
            max_sgp_gens: 5,
            max_ideal_gens: 4,
            ideal_slack: 40,
        }
    }
}

impl InstanceBounds {
    pub fn validate(&self) -> Result<()> {
        if self.min_mult < 1 || self.min_mult > self.max_mult {
            return Err(Error::Range("need 1 <= min_mult <= max_mult".into()));
        }
        if self.max_gen <= self.max_mult {
            return Err(Error::Range("max_gen must exceed max_mult".into()));
        }
        if self.max_sgp_gens < 1 || self.max_ideal_gens < 1 {
            return Err(Error::Range("generator counts must be positive".into()));
        }
        if self.ideal_slack < 1 {
            return Err(Error::Range("ideal_slack must be positive".into()));
        }
        Ok(())
    }
}

/// Generators of a semigroup and of an ideal inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub sgp: Vec<i64>,
    pub ideal: Vec<i64>,
}

impl Instance {
    pub fn build(&self) -> Result<RelativeIdeal> {
        RelativeIdeal::new(NumericalSemigroup::new(&self.sgp)?, &self.ideal)
    }

    /// A second ideal over the same semigroup, drawn from `seed` and shifted
    /// by at most the multiplicity in either direction, so it need not be
    /// integral.
    pub fn partner(&self, bounds: &InstanceBounds, seed: u64) -> Result<RelativeIdeal> {
        let s = std::sync::Arc::new(NumericalSemigroup::new(&self.sgp)?);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let candidates: Vec<i64> = s
            .elements_in(0, s.conductor() + bounds.ideal_slack)
            .collect();
        let k = rng.gen_range(1..=bounds.max_ideal_gens);
        let gens: Vec<i64> = (0..k)
            .map(|_| *candidates.choose(&mut rng).expect("0 is in S"))
            .collect();
        let m = s.multiplicity();
        RelativeIdeal::new(s, &gens)?.shift(rng.gen_range(-m..=m))
    }
}

fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0, |mut a, &v| {
        let mut b = v;
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    })
}

/// Reproducible stream of instances for a given seed.
pub fn random_instances(bounds: &InstanceBounds, seed: u64, count: usize) -> Result<Vec<Instance>> {
    bounds.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.gen_range(bounds.min_mult..=bounds.max_mult);
        let extra = rng.gen_range(1..=bounds.max_sgp_gens.max(2) - 1);
        let mut sgp = vec![m];
        for _ in 0..extra {
            sgp.push(rng.gen_range(m + 1..bounds.max_gen));
        }
        if m > 1 && gcd_all(&sgp) != 1 {
            continue;
        }
        if m == 1 {
            sgp = vec![1];
        }
        sgp.sort_unstable();
        sgp.dedup();
        let s = NumericalSemigroup::new(&sgp)?;
        let candidates: Vec<i64> = s
            .elements_in(1, s.conductor() + bounds.ideal_slack)
            .collect();
        let k = rng.gen_range(1..=bounds.max_ideal_gens);
        let mut ideal: Vec<i64> = (0..k)
            .map(|_| {
                *candidates
                    .choose(&mut rng)
                    .expect("S has positive elements")
            })
            .collect();
        ideal.sort_unstable();
        ideal.dedup();
        out.push(Instance {
            sgp: s.gens().to_vec(),
            ideal,
        });
    }
    Ok(out)
}
