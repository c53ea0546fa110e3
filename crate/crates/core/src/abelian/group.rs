use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::smith_diagonal;
use crate::error::{Error, Result};

/// A finitely generated abelian group `ℤʳ ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/dₖ` in elementary
/// divisor form: `2 ≤ d₁ | d₂ | … | dₖ`. Equality is structural.
///
/// When a value stands for a group of characters into `ℂ×`, a free factor
/// means a copy of `ℂ×` rather than `ℤ` (see [`dual_group`](super::dual_group)).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(Error::Dimension(format!("elementary divisor {d} < 2")));
            }
            if i > 0 && !d.is_multiple_of(&torsion[i - 1]) {
                return Err(Error::Dimension(format!("{} does not divide {d}", torsion[i - 1])));
            }
        }
        Ok(FinAbGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `ℤ/n`; `n = 0` gives `ℤ`, `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Self {
        Self::from_invariants([BigInt::from(n)]).expect("cyclic group")
    }

    /// Canonical form of `⊕ ℤ/nᵢ` for arbitrary non-negative `nᵢ` (0 meaning `ℤ`).
    pub fn from_invariants<I: IntoIterator<Item = BigInt>>(orders: I) -> Result<Self> {
        let orders: Vec<BigInt> = orders.into_iter().map(|d| d.abs()).collect();
        let free_rank = orders.iter().filter(|d| d.is_zero()).count();
        let finite: Vec<BigInt> = orders.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
        let chain = if finite.iter().all(|d| d.is_one()) {
            Vec::new()
        } else {
            smith_diagonal(&IntMatrix::diagonal(&finite))
        };
        let torsion = chain.into_iter().filter(|d| !d.is_one()).collect();
        Self::new(free_rank, torsion)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Exponent of the torsion subgroup (1 when torsion-free).
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn torsion_subgroup(&self) -> FinAbGroup {
        FinAbGroup { free_rank: 0, torsion: self.torsion.clone() }
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let inv = self
            .torsion
            .iter()
            .chain(&other.torsion)
            .cloned()
            .chain(std::iter::repeat(BigInt::zero()).take(self.free_rank + other.free_rank));
        Self::from_invariants(inv).expect("direct sum")
    }

    /// The `n`-torsion subgroup `G[n]`.
    pub fn n_torsion(&self, n: &BigInt) -> FinAbGroup {
        let n = n.abs();
        let inv = self
            .torsion
            .iter()
            .map(|d| d.gcd(&n))
            .chain(std::iter::repeat(n.clone()).take(if n.is_zero() { 0 } else { self.free_rank }));
        let mut g = Self::from_invariants(inv).expect("n-torsion");
        if n.is_zero() {
            g = self.torsion_subgroup();
        }
        g
    }

    /// Number of cyclic factors in the canonical decomposition.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Cyclic orders in coordinate order: torsion first, then `0` for each free factor.
    pub fn invariants(&self) -> Vec<BigInt> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat(BigInt::zero()).take(self.free_rank));
        v
    }

    /// Divisors as machine integers; `None` if any does not fit.
    pub fn divisors_u64(&self) -> Option<Vec<u64>> {
        self.torsion.iter().map(|d| d.to_u64()).collect()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FinAbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FinAbGroup", 2)?;
        st.serialize_field("rank", &self.free_rank)?;
        match self.divisors_u64() {
            Some(d) => st.serialize_field("divisors", &d)?,
            None => {
                let d: Vec<String> = self.torsion.iter().map(|d| d.to_string()).collect();
                st.serialize_field("divisors", &d)?
            }
        }
        st.end()
    }
}

impl<'de> Deserialize<'de> for FinAbGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rank: usize,
            divisors: Vec<u64>,
        }
        let raw = Raw::deserialize(d)?;
        FinAbGroup::new(raw.rank, raw.divisors.into_iter().map(BigInt::from).collect())
            .map_err(de::Error::custom)
    }
}
