//! Finitely generated abelian groups in invariant-factor form, and graded
//! families of them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeffs::Coeffs;

/// `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_s` with `d_1 | d_2 | ... | d_s` and `d_i >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    /// Build from arbitrary cyclic orders; normalizes to invariant factors.
    pub fn new(rank: usize, cyclic_orders: impl IntoIterator<Item = u64>) -> Self {
        AbelianGroup { rank, torsion: invariant_factors_of(cyclic_orders) }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        AbelianGroup::new(self.rank + other.rank, self.torsion.iter().chain(&other.torsion).copied())
    }

    /// Number of cyclic summands whose order is divisible by `p`.
    pub fn p_rank(&self, p: u64) -> usize {
        self.torsion.iter().filter(|d| *d % p == 0).count()
    }
}

impl AbelianGroup {
    /// Renders the group as a module over `k`: a free summand over a prime
    /// field prints as a power of that field.
    pub fn display_over(&self, k: Coeffs) -> String {
        let base = match k {
            Coeffs::Integers => "ℤ".to_string(),
            Coeffs::Mod(p) => format!("ℤ/{p}"),
        };
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(base),
            r => parts.push(format!("({base})^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("ℤ/{d}")));
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("ℤ/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// Invariant factors of `⊕ Z/n_i` (orders `<= 1` are ignored).
pub fn invariant_factors_of(orders: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for n in orders {
        if n <= 1 {
            continue;
        }
        for (p, q) in prime_powers(n) {
            by_prime.entry(p).or_default().push(q);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable();
        // largest powers go into the last (largest) invariant factors
        let offset = len - powers.len();
        for (i, q) in powers.iter().enumerate() {
            factors[offset + i] *= q;
        }
    }
    factors
}

/// Degree-indexed family of abelian groups. Zero groups are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedAbelianGroup {
    groups: BTreeMap<usize, AbelianGroup>,
}

impl GradedAbelianGroup {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_groups(groups: impl IntoIterator<Item = (usize, AbelianGroup)>) -> Self {
        let mut g = Self::new();
        for (p, a) in groups {
            g.add_summand(p, &a);
        }
        g
    }

    /// Groups with the given Betti numbers and no torsion.
    pub fn from_betti(betti: &[usize]) -> Self {
        Self::from_groups(betti.iter().enumerate().map(|(p, &r)| (p, AbelianGroup::free(r))))
    }

    pub fn get(&self, p: usize) -> AbelianGroup {
        self.groups.get(&p).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, p: usize, g: AbelianGroup) {
        if g.is_zero() {
            self.groups.remove(&p);
        } else {
            self.groups.insert(p, g);
        }
    }

    /// Direct sum with `g` placed in degree `p`.
    pub fn add_summand(&mut self, p: usize, g: &AbelianGroup) {
        if g.is_zero() {
            return;
        }
        let sum = self.get(p).direct_sum(g);
        self.set(p, sum);
    }

    /// Direct sum with `other` shifted up by `shift`.
    pub fn add_shifted(&mut self, other: &GradedAbelianGroup, shift: usize) {
        for (p, g) in other.iter() {
            self.add_summand(p + shift, g);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &AbelianGroup)> {
        self.groups.iter().map(|(p, g)| (*p, g))
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.groups.keys().next_back().copied()
    }

    /// Betti numbers from degree 0 through the top nonzero degree.
    pub fn betti(&self) -> Vec<usize> {
        match self.top_degree() {
            None => Vec::new(),
            Some(top) => (0..=top).map(|p| self.get(p).rank).collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.iter().map(|(p, g)| if p % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) }).sum()
    }

    /// Reduced version: one copy of `Z` removed from degree 0 (if present).
    pub fn reduced(&self) -> GradedAbelianGroup {
        let mut out = self.clone();
        let g0 = out.get(0);
        if g0.rank > 0 {
            out.set(0, AbelianGroup { rank: g0.rank - 1, torsion: g0.torsion });
        }
        out
    }

    /// Dimensions of the mod-`p` (co)homology predicted by universal
    /// coefficients, for groups that are integral cohomology:
    /// `dim H^n(X; Z/p) = rank H^n + t_p(H^n) + t_p(H^{n+1})`.
    pub fn cohomology_mod_p_dims(&self, p: u64) -> GradedAbelianGroup {
        let top = self.top_degree().unwrap_or(0);
        GradedAbelianGroup::from_groups((0..=top).map(|n| {
            let g = self.get(n);
            let next = self.get(n + 1);
            (n, AbelianGroup::free(g.rank + g.p_rank(p) + next.p_rank(p)))
        }))
    }

    /// Integral cohomology from integral homology by universal coefficients:
    /// `H^n = Free(H_n) ⊕ Tors(H_{n-1})`.
    pub fn cohomology_from_homology(homology: &GradedAbelianGroup) -> GradedAbelianGroup {
        let top = homology.top_degree().unwrap_or(0);
        GradedAbelianGroup::from_groups((0..=top + 1).map(|n| {
            let free = homology.get(n).rank;
            let tors = if n == 0 { Vec::new() } else { homology.get(n - 1).torsion };
            (n, AbelianGroup { rank: free, torsion: tors })
        }))
    }
}

impl fmt::Display for GradedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(p, g)| format!("H^{p} = {g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_normalization() {
        assert_eq!(invariant_factors_of([2, 3]), vec![6]);
        assert_eq!(invariant_factors_of([2, 2]), vec![2, 2]);
        assert_eq!(invariant_factors_of([4, 6]), vec![2, 12]);
        assert_eq!(invariant_factors_of([1, 1]), Vec::<u64>::new());
        assert_eq!(invariant_factors_of([12, 18, 4]), vec![2, 12, 36]);
    }

    #[test]
    fn z4_differs_from_z2_squared() {
        assert_ne!(AbelianGroup::new(0, [4]), AbelianGroup::new(0, [2, 2]));
    }

    #[test]
    fn display() {
        assert_eq!(AbelianGroup::new(2, [2]).to_string(), "ℤ^2 ⊕ ℤ/2");
        assert_eq!(AbelianGroup::new(2, []).display_over(Coeffs::Mod(2)), "(ℤ/2)^2");
        assert_eq!(AbelianGroup::new(1, []).display_over(Coeffs::Integers), "ℤ");
        assert_eq!(AbelianGroup::zero().to_string(), "0");
    }

    #[test]
    fn shifted_sums() {
        let mut g = GradedAbelianGroup::new();
        g.add_shifted(&GradedAbelianGroup::from_betti(&[1]), 0);
        g.add_shifted(&GradedAbelianGroup::from_betti(&[0, 1]), 2);
        assert_eq!(g.betti(), vec![1, 0, 0, 1]);
        assert_eq!(g.euler_characteristic(), 0);
    }
}
