//! Compositions of `n` stored as descent bitmasks.
//!
//! A composition `α ⊨ n` is determined by its descent set
//! `D(α) ⊆ {1, …, n-1}`. Descent `i` lives at bit `i - 1`, so the rank
//! function `φ(α) = Σ_{i ∈ D(α)} 2^{i-1}` is the bitmask itself and the
//! derived `Ord` (degree first, then mask) is the `φ` order used for every
//! vector index in the crate.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest degree accepted by statistics-only operations.
pub const MAX_DEGREE: usize = 63;

/// Default cap for operations that touch all `2^{n-1}` compositions of `n`.
pub const DEFAULT_BASIS_DEGREE_CAP: usize = 24;

const HARD_BASIS_DEGREE_CAP: usize = 30;

/// Environment variable that raises [`basis_degree_cap`] for benchmarking.
pub const MAX_DEGREE_ENV: &str = "NCRIBBON_MAX_DEGREE";

/// Cap on the degree of full-basis operations: 24 unless `NCRIBBON_MAX_DEGREE`
/// asks for more (clamped to 30). Read once per process.
pub fn basis_degree_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_DEGREE_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(|v| v.clamp(DEFAULT_BASIS_DEGREE_CAP, HARD_BASIS_DEGREE_CAP))
            .unwrap_or(DEFAULT_BASIS_DEGREE_CAP)
    })
}

pub fn check_basis_degree(n: usize) -> Result<()> {
    let cap = basis_degree_cap();
    if n > cap {
        Err(Error::DegreeCap { degree: n, cap })
    } else {
        Ok(())
    }
}

#[inline]
fn full_mask(n: usize) -> u64 {
    if n <= 1 {
        0
    } else {
        u64::MAX >> (64 - (n - 1))
    }
}

/// Submasks of `mask` in increasing numeric order.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur | !mask).wrapping_add(1) & mask)
        };
        Some(cur)
    })
}

/// Sum of the descent positions encoded in `mask`.
#[inline]
pub fn position_sum(mask: u64) -> u64 {
    let mut m = mask;
    let mut s = 0u64;
    while m != 0 {
        s += u64::from(m.trailing_zeros()) + 1;
        m &= m - 1;
    }
    s
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    degree: u8,
    descents: u64,
}

impl Composition {
    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("empty list of parts".into()));
        }
        if let Some(p) = parts.iter().find(|&&p| p == 0) {
            return Err(Error::InvalidComposition(format!("non-positive part {p}")));
        }
        let n: u64 = parts.iter().map(|&p| u64::from(p)).sum();
        if n as usize > MAX_DEGREE {
            return Err(Error::DegreeCap { degree: n as usize, cap: MAX_DEGREE });
        }
        let mut mask = 0u64;
        let mut acc = 0u64;
        for &p in &parts[..parts.len() - 1] {
            acc += u64::from(p);
            mask |= 1 << (acc - 1);
        }
        Ok(Self { degree: n as u8, descents: mask })
    }

    /// Builds a composition of `n` from its descent bitmask (descent `i` at bit `i-1`).
    pub fn from_descents(n: usize, mask: u64) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidComposition(format!("degree {n} out of range")));
        }
        if mask & !full_mask(n) != 0 {
            return Err(Error::InvalidComposition(format!(
                "descent mask {mask:#b} has positions outside 1..{n}"
            )));
        }
        Ok(Self { degree: n as u8, descents: mask })
    }

    pub fn from_descent_set(n: usize, descents: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = 0u64;
        for i in descents {
            if i == 0 || i >= n {
                return Err(Error::InvalidComposition(format!(
                    "descent {i} outside 1..{}",
                    n.saturating_sub(1)
                )));
            }
            mask |= 1 << (i - 1);
        }
        Self::from_descents(n, mask)
    }

    /// The one-part composition `(n)`.
    pub fn row(n: usize) -> Result<Self> {
        Self::from_descents(n, 0)
    }

    /// The composition `(1^n)`.
    pub fn column(n: usize) -> Result<Self> {
        Self::from_descents(n, full_mask(n))
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// Descent bitmask; equals `rank_phi`.
    #[inline]
    pub fn descents(&self) -> u64 {
        self.descents
    }

    pub fn descent_set(&self) -> Vec<usize> {
        (1..self.degree()).filter(|&i| self.has_descent(i)).collect()
    }

    #[inline]
    pub fn has_descent(&self, i: usize) -> bool {
        i >= 1 && i < self.degree() && self.descents >> (i - 1) & 1 == 1
    }

    /// Number of parts, `l(α)`.
    #[inline]
    pub fn len(&self) -> usize {
        self.descents.count_ones() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len());
        let mut prev = 0u32;
        for i in self.descent_set() {
            out.push(i as u32 - prev);
            prev = i as u32;
        }
        out.push(self.degree as u32 - prev);
        out
    }

    /// `α·β`: parts of `other` appended after the parts of `self`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let n1 = self.sum_degree(other)?;
        let mask = self.descents | (1 << (n1 - 1)) | (other.descents << n1);
        Self::from_descents(n1 + other.degree(), mask)
    }

    /// `α|β`: like `concat` but the last part of `self` merges with the first of `other`.
    pub fn attach(&self, other: &Self) -> Result<Self> {
        let n1 = self.sum_degree(other)?;
        Self::from_descents(n1 + other.degree(), self.descents | (other.descents << n1))
    }

    fn sum_degree(&self, other: &Self) -> Result<usize> {
        let n = self.degree() + other.degree();
        if n > MAX_DEGREE {
            return Err(Error::DegreeCap { degree: n, cap: MAX_DEGREE });
        }
        Ok(self.degree())
    }

    /// `self ≤ coarser` in the refinement order, i.e. `D(coarser) ⊆ D(self)`.
    pub fn refines(&self, coarser: &Self) -> Result<bool> {
        self.same_degree(coarser)?;
        Ok(coarser.descents & !self.descents == 0)
    }

    pub(crate) fn same_degree(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() })
        } else {
            Ok(())
        }
    }

    pub fn reverse(&self) -> Self {
        let n = self.degree();
        let mut mask = 0u64;
        let mut m = self.descents;
        while m != 0 {
            let i = m.trailing_zeros() as usize + 1;
            mask |= 1 << (n - i - 1);
            m &= m - 1;
        }
        Self { degree: self.degree, descents: mask }
    }

    pub fn complement(&self) -> Self {
        Self { degree: self.degree, descents: self.descents ^ full_mask(self.degree()) }
    }

    /// `α' = reverse(α^c)`.
    pub fn conjugate(&self) -> Self {
        self.complement().reverse()
    }

    /// `n(α) = Σ_{i ∈ D(α)} i`.
    pub fn major_index(&self) -> u64 {
        position_sum(self.descents)
    }

    /// `c(α, β) = Σ_{i ∈ D(α) ∩ D(β)} i`.
    pub fn c_stat(&self, other: &Self) -> Result<u64> {
        self.same_degree(other)?;
        Ok(position_sum(self.descents & other.descents))
    }

    pub fn rank_phi(&self) -> u64 {
        self.descents
    }

    pub fn unrank_phi(n: usize, rank: u64) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidComposition(format!("degree {n} out of range")));
        }
        if rank > full_mask(n) {
            return Err(Error::RankOutOfRange { degree: n, rank });
        }
        Ok(Self { degree: n as u8, descents: rank })
    }

    /// All compositions of `n` in `φ` order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = Composition> + Clone> {
        if n == 0 {
            return Err(Error::InvalidComposition("degree 0".into()));
        }
        check_basis_degree(n)?;
        let degree = n as u8;
        Ok((0..=full_mask(n)).map(move |descents| Composition { degree, descents }))
    }

    /// Compositions `β` with `D(α)∖D(γ) ⊆ D(β) ⊆ D(α)`, in `φ` order.
    ///
    /// These index the ribbon support of the `γ`-ribbon Schur function at `α`;
    /// the result has `2^{|D(α) ∩ D(γ)|}` elements.
    pub fn interval(alpha: &Self, gamma: &Self) -> Result<Vec<Self>> {
        alpha.same_degree(gamma)?;
        let free = alpha.descents & gamma.descents;
        let forced = alpha.descents & !gamma.descents;
        Ok(submasks(free)
            .map(|s| Self { degree: alpha.degree, descents: forced | s })
            .collect())
    }

    /// Compact label: `121` when every part is a single digit, `2.10` otherwise.
    pub fn label(&self) -> String {
        let parts = self.parts();
        if parts.iter().all(|&p| p < 10) {
            parts.iter().map(|p| p.to_string()).collect()
        } else {
            self.to_string()
        }
    }

    /// Parses either the dotted form or the compact digit-string label.
    pub fn parse_label(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(['.', ',']) {
            s.parse()
        } else {
            let parts = s
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad composition label {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Self::from_parts(&parts)
        }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.parts();
        for (k, p) in parts.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Accepts `2.4.3.1`, `2,4,3,1` or `(2,4,3,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = body
            .split(['.', ','])
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad composition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(&parts)
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Composition::from_parts(&parts).map_err(serde::de::Error::custom)
    }
}

/// The renumbering `σ_γ` of descent positions attached to a level `γ`.
///
/// `σ_γ` sends the descents of `γ` (sorted) to `1..=k` and the remaining
/// positions (sorted) to `k+1..=n-1`. Under `φ_γ` every `α ≤ γ` has its
/// low `k` bits set, so the compositions refining `γ` occupy a contiguous
/// sub-cube indexed by [`GammaOrdering::restricted_rank`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaOrdering {
    gamma: Composition,
    /// `sigma[i - 1] = σ_γ(i)`.
    sigma: Vec<u8>,
    /// `slots[p] = σ_γ^{-1}(p + 1)`.
    slots: Vec<u8>,
    k: usize,
}

impl GammaOrdering {
    pub fn new(gamma: Composition) -> Self {
        let n = gamma.degree();
        let mut slots: Vec<u8> = (1..n).filter(|&i| gamma.has_descent(i)).map(|i| i as u8).collect();
        let k = slots.len();
        slots.extend((1..n).filter(|&i| !gamma.has_descent(i)).map(|i| i as u8));
        let mut sigma = vec![0u8; n.saturating_sub(1)];
        for (p, &i) in slots.iter().enumerate() {
            sigma[i as usize - 1] = p as u8 + 1;
        }
        Self { gamma, sigma, slots, k }
    }

    /// The ordering for `φ` itself: `σ` is the identity.
    pub fn identity(n: usize) -> Result<Self> {
        Ok(Self::new(Composition::row(n)?))
    }

    pub fn gamma(&self) -> &Composition {
        &self.gamma
    }

    pub fn degree(&self) -> usize {
        self.gamma.degree()
    }

    /// `k = |D(γ)|`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// `σ_γ(i)` for a descent position `1 ≤ i ≤ n-1`.
    pub fn sigma(&self, i: usize) -> usize {
        self.sigma[i - 1] as usize
    }

    /// Descent positions listed by slot: `slots()[p] = σ_γ^{-1}(p+1)`.
    pub fn slots(&self) -> impl Iterator<Item = usize> + '_ {
        self.slots.iter().map(|&i| i as usize)
    }

    pub fn rank_phi_gamma(&self, alpha: &Composition) -> Result<u64> {
        alpha.same_degree(&self.gamma)?;
        let mut r = 0u64;
        let mut m = alpha.descents();
        while m != 0 {
            let i = m.trailing_zeros() as usize + 1;
            r |= 1 << (self.sigma[i - 1] - 1);
            m &= m - 1;
        }
        Ok(r)
    }

    pub fn unrank_phi_gamma(&self, rank: u64) -> Result<Composition> {
        let n = self.degree();
        if rank > full_mask(n) {
            return Err(Error::RankOutOfRange { degree: n, rank });
        }
        let mut mask = 0u64;
        for (p, &i) in self.slots.iter().enumerate() {
            if rank >> p & 1 == 1 {
                mask |= 1 << (i - 1);
            }
        }
        Composition::from_descents(n, mask)
    }

    /// Index of `α ≤ γ` in `{0, …, 2^{n-1-k} - 1}`.
    pub fn restricted_rank(&self, alpha: &Composition) -> Result<u64> {
        if !alpha.refines(&self.gamma)? {
            return Err(Error::NotRefining { alpha: *alpha, gamma: self.gamma });
        }
        Ok(self.rank_phi_gamma(alpha)? >> self.k)
    }

    pub fn unrank_restricted(&self, rank: u64) -> Result<Composition> {
        let free = self.degree().saturating_sub(1) - self.k;
        if rank >> free != 0 {
            return Err(Error::RankOutOfRange { degree: self.degree(), rank });
        }
        self.unrank_phi_gamma((rank << self.k) | ((1u64 << self.k) - 1))
    }

    /// Number of compositions refining `γ`, `2^{n-1-k}`.
    pub fn restricted_len(&self) -> usize {
        1usize << (self.degree().saturating_sub(1) - self.k)
    }

    /// All `α ≤ γ` in restricted `φ_γ` order.
    pub fn members(&self) -> Result<Vec<Composition>> {
        check_basis_degree(self.degree())?;
        (0..self.restricted_len() as u64).map(|r| self.unrank_restricted(r)).collect()
    }
}
