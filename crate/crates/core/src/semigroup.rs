//! Numerical semigroups: membership, conductor, Apéry sets, blow-up and the
//! order function of the maximal ideal.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits;

/// Per-residue minima of a set of integers with respect to a modulus.
///
/// `entries[i]` is the least element of the underlying set congruent to `i`
/// modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AperyTable {
    modulus: i64,
    entries: Vec<i64>,
}

impl AperyTable {
    /// Builds a table from an ascending element stream. Only the first element
    /// seen in each residue class is kept.
    pub(crate) fn from_ascending<I>(modulus: i64, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = i64>,
    {
        if modulus < 1 {
            return Err(Error::BadModulus(modulus));
        }
        let n = modulus as usize;
        let mut slots: Vec<Option<i64>> = vec![None; n];
        let mut filled = 0;
        for z in elements {
            let slot = &mut slots[z.rem_euclid(modulus) as usize];
            if slot.is_none() {
                *slot = Some(z);
                filled += 1;
                if filled == n {
                    break;
                }
            }
        }
        let entries = slots
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Range(
                "apery scan ended before every residue was hit".into(),
            ))?;
        Ok(Self { modulus, entries })
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    /// Entries indexed by residue class.
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, residue: usize) -> i64 {
        self.entries[residue]
    }

    pub fn max(&self) -> i64 {
        *self.entries.iter().max().expect("modulus >= 1")
    }

    /// Entries sorted ascending (the Apéry *set*).
    pub fn sorted(&self) -> Vec<i64> {
        let mut v = self.entries.clone();
        v.sort_unstable();
        v
    }
}

/// A numerical semigroup, stored through its minimal generators and the
/// membership table below its conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    gens: Vec<i64>,
    conductor: i64,
    small: Vec<i64>,
    member: Vec<bool>,
    apery: AperyTable,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

impl NumericalSemigroup {
    /// The semigroup generated by `generators`. Redundant generators are
    /// dropped.
    pub fn new(generators: &[i64]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(&bad) = generators.iter().find(|&&g| g <= 0) {
            return Err(Error::NonPositiveGenerator(bad));
        }
        let g = generators.iter().fold(0, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(Error::GcdNotOne(g));
        }
        let mut input = generators.to_vec();
        input.sort_unstable();
        input.dedup();
        let smallest = input[0];
        let largest = *input.last().unwrap();
        for &x in &input {
            limits::check("semigroup generator", x)?;
        }

        // The Frobenius number is below smallest * largest.
        let window = limits::mul("semigroup membership window", smallest, largest)? as usize;
        let mut table = vec![false; window + 1];
        table[0] = true;
        for z in 1..=window {
            table[z] = input
                .iter()
                .take_while(|&&g| g as usize <= z)
                .any(|&g| table[z - g as usize]);
        }
        let conductor = table.iter().rposition(|&b| !b).map_or(0, |gap| gap + 1);
        let in_window = |z: i64| z >= conductor as i64 || table[z as usize];

        let gens: Vec<i64> = input
            .iter()
            .copied()
            .filter(|&g| !input.iter().any(|&h| h < g && in_window(g - h)))
            .collect();

        table.truncate(conductor);
        let small: Vec<i64> = (0..conductor as i64)
            .filter(|&z| table[z as usize])
            .collect();
        let conductor = conductor as i64;
        let multiplicity = gens[0];
        let apery = AperyTable::from_ascending(
            multiplicity,
            small
                .iter()
                .copied()
                .chain(conductor..conductor + multiplicity),
        )?;

        Ok(Self {
            gens,
            conductor,
            small,
            member: table,
            apery,
        })
    }

    /// The monoid `elements ∪ [tail_start, ∞)`, provided it is additively
    /// closed. Elements at or above `tail_start` are ignored.
    pub fn from_elements(elements: &[i64], tail_start: i64) -> Result<Self> {
        let tail_start = tail_start.max(0);
        limits::check("semigroup tail", tail_start)?;
        let mut below: Vec<i64> = elements
            .iter()
            .copied()
            .filter(|&z| z < tail_start)
            .collect();
        below.sort_unstable();
        below.dedup();
        if let Some(&neg) = below.first().filter(|&&z| z < 0) {
            return Err(Error::Range(format!("negative element {neg} in a monoid")));
        }
        if tail_start > 0 && below.first() != Some(&0) {
            return Err(Error::MissingZero);
        }
        let mut member = vec![false; tail_start as usize];
        for &z in &below {
            member[z as usize] = true;
        }
        let contains = |z: i64| z >= tail_start || member[z as usize];

        for (i, &a) in below.iter().enumerate().skip(1) {
            for &b in &below[i..] {
                if a + b >= tail_start {
                    break;
                }
                if !contains(a + b) {
                    return Err(Error::NotClosed(a, b));
                }
            }
        }

        let multiplicity = below.get(1).copied().unwrap_or(tail_start).max(1);
        let mut gens: Vec<i64> = Vec::new();
        for z in 1..=tail_start + multiplicity {
            if contains(z) && !gens.iter().any(|&g| contains(z - g)) {
                gens.push(z);
            }
        }
        let sg = Self::new(&gens)?;
        debug_assert!(sg.conductor <= tail_start);
        debug_assert!((0..tail_start).all(|z| sg.contains(z) == contains(z)));
        Ok(sg)
    }

    /// The semigroup ℕ.
    pub fn naturals() -> Self {
        Self::new(&[1]).expect("<1> is a numerical semigroup")
    }

    pub fn contains(&self, z: i64) -> bool {
        if z < 0 {
            false
        } else if z >= self.conductor {
            true
        } else {
            self.member[z as usize]
        }
    }

    /// Minimal generators, ascending.
    pub fn gens(&self) -> &[i64] {
        &self.gens
    }

    pub fn multiplicity(&self) -> i64 {
        self.gens[0]
    }

    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    /// Largest gap, or -1 for ℕ.
    pub fn frobenius(&self) -> i64 {
        self.conductor - 1
    }

    pub fn embedding_dimension(&self) -> usize {
        self.gens.len()
    }

    /// Elements strictly below the conductor (includes 0 unless `S = ℕ`).
    pub fn small_elements(&self) -> &[i64] {
        &self.small
    }

    pub fn gaps(&self) -> Vec<i64> {
        (1..self.conductor).filter(|&z| !self.contains(z)).collect()
    }

    pub fn is_naturals(&self) -> bool {
        self.conductor == 0
    }

    /// Apéry table with respect to the multiplicity.
    pub fn apery_table(&self) -> &AperyTable {
        &self.apery
    }

    /// Apéry table with respect to an arbitrary positive modulus.
    pub fn apery(&self, modulus: i64) -> Result<AperyTable> {
        if modulus < 1 {
            return Err(Error::BadModulus(modulus));
        }
        let end = limits::add("apery scan", self.conductor, modulus)?;
        AperyTable::from_ascending(
            modulus,
            self.small.iter().copied().chain(self.conductor..end),
        )
    }

    /// The blow-up `⟨m, n_2 - m, …, n_ν - m⟩`.
    pub fn blowup(&self) -> Self {
        let m = self.multiplicity();
        let mut gens = vec![m];
        gens.extend(self.gens[1..].iter().map(|&g| g - m));
        Self::new(&gens).expect("blow-up generators keep gcd 1")
    }

    /// Order table on `[0, upto]`: entry `z` is the largest `l` with
    /// `z ∈ lM`, or `None` when `z ∉ S`.
    pub fn order_table(&self, upto: i64) -> Result<Vec<Option<u32>>> {
        limits::check("order scan", upto)?;
        let len = (upto.max(-1) + 1) as usize;
        let mut ord: Vec<Option<u32>> = vec![None; len];
        if len > 0 {
            ord[0] = Some(0);
        }
        for z in 1..len {
            ord[z] = self
                .gens
                .iter()
                .take_while(|&&g| g as usize <= z)
                .filter_map(|&g| ord[z - g as usize])
                .max()
                .map(|o| o + 1);
        }
        Ok(ord)
    }

    /// `max { l : s ∈ lM }`, with `ord(0) = 0`.
    pub fn order(&self, s: i64) -> Result<u32> {
        if !self.contains(s) {
            return Err(Error::NotMember(s));
        }
        Ok(self.order_table(s)?[s as usize].expect("member has an order"))
    }

    /// Members of `S` in `[lo, hi)`.
    pub fn elements_in(&self, lo: i64, hi: i64) -> impl Iterator<Item = i64> + '_ {
        (lo.max(0)..hi).filter(move |&z| self.contains(z))
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_member(gens: &[i64], z: i64) -> bool {
        if z < 0 {
            return false;
        }
        if z == 0 {
            return true;
        }
        gens.iter().any(|&g| g <= z && brute_member(gens, z - g))
    }

    #[test]
    fn six_nine_eleven() {
        let s = NumericalSemigroup::new(&[6, 9, 11]).unwrap();
        assert_eq!(s.gens(), &[6, 9, 11]);
        assert_eq!(s.conductor(), 26);
        assert_eq!(s.frobenius(), 25);
        assert!(!s.contains(25));
        assert_eq!(&s.small_elements()[..9], &[0, 6, 9, 11, 12, 15, 17, 18, 20]);
        for z in -3..80 {
            assert_eq!(s.contains(z), brute_member(&[6, 9, 11], z), "z={z}");
        }
    }

    #[test]
    fn four_five_eleven() {
        let s = NumericalSemigroup::new(&[4, 5, 11]).unwrap();
        assert_eq!(s.gens(), &[4, 5, 11]);
        assert_eq!(s.small_elements(), &[0, 4, 5]);
        assert_eq!(s.conductor(), 8);
    }

    #[test]
    fn naturals_and_redundancy() {
        let n = NumericalSemigroup::new(&[1]).unwrap();
        assert_eq!(n.conductor(), 0);
        assert_eq!(n.frobenius(), -1);
        assert!(n.is_naturals());
        assert_eq!(
            NumericalSemigroup::new(&[2, 3]).unwrap(),
            NumericalSemigroup::new(&[4, 3, 2, 3]).unwrap()
        );
        assert_eq!(NumericalSemigroup::new(&[3, 1, 7]).unwrap(), n);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(NumericalSemigroup::new(&[]), Err(Error::EmptyGenerators));
        assert_eq!(NumericalSemigroup::new(&[4, 6]), Err(Error::GcdNotOne(2)));
        assert_eq!(
            NumericalSemigroup::new(&[0, 3]),
            Err(Error::NonPositiveGenerator(0))
        );
        assert!(matches!(
            NumericalSemigroup::new(&[999_983, 1_000_003]),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn contains_examples() {
        let s = NumericalSemigroup::new(&[4, 5, 7]).unwrap();
        assert!(!s.contains(6));
        assert_eq!(s.conductor(), 7);
        assert!(s.contains(0));
        assert!(!s.contains(-4));
    }

    #[test]
    fn apery_tables() {
        let s = NumericalSemigroup::new(&[6, 9, 11]).unwrap();
        assert_eq!(s.apery(6).unwrap().entries(), &[0, 31, 20, 9, 22, 11]);
        assert_eq!(s.apery_table(), &s.apery(6).unwrap());
        assert_eq!(s.frobenius(), s.apery_table().max() - s.multiplicity());

        let bt = NumericalSemigroup::new(&[2, 9]).unwrap();
        assert_eq!(
            bt.apery(9).unwrap().entries(),
            &[0, 10, 2, 12, 4, 14, 6, 16, 8]
        );

        let n = NumericalSemigroup::naturals();
        assert_eq!(n.apery(5).unwrap().entries(), &[0, 1, 2, 3, 4]);
        assert_eq!(n.apery(0), Err(Error::BadModulus(0)));
    }

    #[test]
    fn blowups() {
        let t = NumericalSemigroup::new(&[9, 11, 15, 17, 21, 23]).unwrap();
        let b = t.blowup();
        assert_eq!(b.gens(), &[2, 9]);
        assert_eq!(b.small_elements(), &[0, 2, 4, 6]);
        assert_eq!(b.conductor(), 8);

        let s = NumericalSemigroup::new(&[6, 9, 11]).unwrap();
        assert_eq!(s.blowup().gens(), &[3, 5]);
        assert!(NumericalSemigroup::naturals().blowup().is_naturals());
    }

    #[test]
    fn from_elements_examples() {
        let mut els = vec![0, 9, 11, 15, 17, 18, 20, 21, 22, 23, 24];
        let t = NumericalSemigroup::from_elements(&els, 26).unwrap();
        assert_eq!(t.gens(), &[9, 11, 15, 17, 21, 23]);

        assert!(NumericalSemigroup::from_elements(&[0], 1)
            .unwrap()
            .is_naturals());

        els.retain(|&z| z != 18);
        assert_eq!(
            NumericalSemigroup::from_elements(&els, 26),
            Err(Error::NotClosed(9, 9))
        );
        assert_eq!(
            NumericalSemigroup::from_elements(&[4, 5], 8),
            Err(Error::MissingZero)
        );
    }

    #[test]
    fn from_elements_round_trip() {
        for gens in [
            &[6, 9, 11][..],
            &[4, 5, 11],
            &[3, 5],
            &[5, 6, 7, 8, 9],
            &[1],
        ] {
            let s = NumericalSemigroup::new(gens).unwrap();
            let back =
                NumericalSemigroup::from_elements(s.small_elements(), s.conductor()).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn orders() {
        let s = NumericalSemigroup::new(&[6, 9, 11]).unwrap();
        assert_eq!(s.order(18).unwrap(), 3);
        assert_eq!(s.order(0).unwrap(), 0);
        assert_eq!(s.order(25), Err(Error::NotMember(25)));
        let s = NumericalSemigroup::new(&[4, 5, 11]).unwrap();
        assert_eq!(s.order(11).unwrap(), 1);
        assert_eq!(s.order(12).unwrap(), 3);
    }
}
