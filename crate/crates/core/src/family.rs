//! The family `S_n = ⟨a, b, d, c_3, …, c_n⟩`, `n ≥ 3`, with
//! `a = 2n`, `b = 4n − 1`, `d = n(2n − 1)`, `c_h = (n + h)(2n − 1) + 1`, and the
//! ideal `E_n = {a, b, c_3, …, c_n} + S_n`. Its reduction number is `n − 1`
//! while `h(E_n) = 1`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::RelativeIdeal;
use crate::semigroup::NumericalSemigroup;

pub const DEFAULT_MAX_N: i64 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub d: i64,
    /// `c_3, …, c_n`.
    pub c: Vec<i64>,
}

impl FamilyMember {
    pub fn new(n: i64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Range(format!(
                "family index must be at least 3, got {n}"
            )));
        }
        Ok(Self {
            n,
            a: 2 * n,
            b: 4 * n - 1,
            d: n * (2 * n - 1),
            c: (3..=n).map(|h| (n + h) * (2 * n - 1) + 1).collect(),
        })
    }

    /// `c_h` for `3 ≤ h ≤ n`.
    pub fn c_h(&self, h: i64) -> i64 {
        self.c[(h - 3) as usize]
    }

    pub fn semigroup_gens(&self) -> Vec<i64> {
        let mut g = vec![self.a, self.b, self.d];
        g.extend(&self.c);
        g
    }

    pub fn ideal_gens(&self) -> Vec<i64> {
        let mut g = vec![self.a, self.b];
        g.extend(&self.c);
        g
    }

    pub fn semigroup(&self) -> Result<NumericalSemigroup> {
        NumericalSemigroup::new(&self.semigroup_gens())
    }

    pub fn ideal(&self) -> Result<RelativeIdeal> {
        RelativeIdeal::new(Arc::new(self.semigroup()?), &self.ideal_gens())
    }

    /// Expected minimal generators of `T_n = {0} ∪ E_n`:
    /// `a, b, c_3, …, c_n, a + d, b + d`.
    pub fn pullback_gens(&self) -> Vec<i64> {
        let mut g = self.ideal_gens();
        g.push(self.a + self.d);
        g.push(self.b + self.d);
        g.sort_unstable();
        g
    }

    /// A generating set of `B(T_n)`: `a, b − a, c_3 − a, …, c_n − a`. It need
    /// not be minimal.
    pub fn blowup_gens(&self) -> Vec<i64> {
        let mut g = vec![self.a, self.b - self.a];
        g.extend(self.c.iter().map(|&c| c - self.a));
        g
    }

    /// `c_h + d = (h − 1)b + (2n + 1 − h)a` for every `h`.
    pub fn relations_hold(&self) -> bool {
        (3..=self.n)
            .all(|h| self.c_h(h) + self.d == (h - 1) * self.b + (2 * self.n + 1 - h) * self.a)
    }

    /// `hb − a ∉ t` for `h = 1, …, n − 1`.
    pub fn hb_minus_a_outside(&self, t: &NumericalSemigroup) -> bool {
        (1..self.n).all(|h| !t.contains(h * self.b - self.a))
    }

    /// The Apéry set of `T_n` with respect to `a`, as listed:
    /// `0, c_n, …, c_3, d + b, d + a, (n−1)b, …, b`.
    pub fn pullback_apery_listing(&self) -> Vec<i64> {
        let mut v = vec![0];
        v.extend(self.c.iter().rev());
        v.push(self.d + self.b);
        v.push(self.d + self.a);
        v.extend((1..self.n).rev().map(|h| h * self.b));
        v
    }
}

/// Members `n_min ..= n_max`, refusing ranges outside `[3, cap]`.
pub fn family_range(n_min: i64, n_max: i64, cap: i64) -> Result<Vec<FamilyMember>> {
    if n_min < 3 || n_min > n_max || n_max > cap {
        return Err(Error::Range(format!(
            "family range must satisfy 3 <= n_min <= n_max <= {cap}, got {n_min}..{n_max}"
        )));
    }
    (n_min..=n_max).map(FamilyMember::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_member() {
        let f = FamilyMember::new(3).unwrap();
        assert_eq!((f.a, f.b, f.d), (6, 11, 15));
        assert_eq!(f.c, vec![31]);
        assert_eq!(f.semigroup().unwrap().gens(), &[6, 11, 15, 31]);
        assert!(f.relations_hold());
    }

    #[test]
    fn embedding_dimension_is_n_plus_one() {
        for n in 3..=8 {
            let f = FamilyMember::new(n).unwrap();
            assert_eq!(f.semigroup().unwrap().embedding_dimension() as i64, n + 1);
        }
    }

    #[test]
    fn range_errors() {
        assert!(FamilyMember::new(2).is_err());
        assert!(family_range(3, 13, DEFAULT_MAX_N).is_err());
        assert!(family_range(5, 4, DEFAULT_MAX_N).is_err());
        assert_eq!(family_range(3, 5, DEFAULT_MAX_N).unwrap().len(), 3);
    }
}
