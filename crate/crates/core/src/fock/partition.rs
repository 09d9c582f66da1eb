use std::fmt;

use crate::error::{Error, Result};

/// Weakly decreasing vector of nonnegative parts, zeros kept explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates that the parts are weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Relation { parts, relation: "weakly decreasing parts" });
        }
        Ok(Self(parts))
    }

    /// The empty configuration ∅.
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `0ⁿ`.
    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Self(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of parts `n`, zeros included.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|λ| = λ₁ + … + λₙ`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Largest part, 0 for ∅.
    pub fn first(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// `m_l(λ) = #{j : λⱼ = l}`.
    pub fn multiplicity(&self, l: usize) -> usize {
        self.0.iter().filter(|&&p| p == l).count()
    }

    /// Membership in `Λ_{n,m}` for `n = self.len()`.
    pub fn fits(&self, m: usize) -> bool {
        self.first() <= m
    }

    /// Multiplicities `(l, m_l)` of the distinct parts, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((l, k)) if *l == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Adds one part equal to `l`.
    pub fn with_part(&self, l: usize) -> Self {
        let pos = self.0.iter().position(|&p| p < l).unwrap_or(self.0.len());
        let mut v = self.0.clone();
        v.insert(pos, l);
        Self(v)
    }

    /// Removes one part equal to `l`, if present.
    pub fn without_part(&self, l: usize) -> Option<Self> {
        let pos = self.0.iter().position(|&p| p == l)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Self(v))
    }

    /// `λ + e_j` (0-based `j`) when the result is still a partition within `m`.
    pub fn raised(&self, j: usize, m: usize) -> Option<Self> {
        let p = self.0[j];
        if p >= m || (j > 0 && self.0[j - 1] == p) {
            return None;
        }
        let mut v = self.0.clone();
        v[j] += 1;
        Some(Self(v))
    }

    /// `λ − e_j` (0-based `j`) when the result is still a partition.
    pub fn lowered(&self, j: usize) -> Option<Self> {
        let p = self.0[j];
        if p == 0 || (j + 1 < self.0.len() && self.0[j + 1] == p) {
            return None;
        }
        let mut v = self.0.clone();
        v[j] -= 1;
        Some(Self(v))
    }

    /// Site reversal `l ↦ m − l` applied to every part.
    pub fn reversed(&self, m: usize) -> Self {
        Self(self.0.iter().rev().map(|&p| m - p).collect())
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_and_multiplicities() {
        assert!(Partition::new(vec![1, 2]).is_err());
        let p = Partition::new(vec![3, 3, 1, 0, 0]).unwrap();
        assert_eq!(p.size(), 7);
        assert_eq!(p.multiplicity(3), 2);
        assert_eq!(p.multiplicity(0), 2);
        assert_eq!(p.multiplicity(2), 0);
        assert_eq!(p.multiplicities(), vec![(3, 2), (1, 1), (0, 2)]);
        assert_eq!(p.to_string(), "(3,3,1,0,0)");
        assert_eq!(Partition::empty().to_string(), "∅");
    }

    #[test]
    fn insert_remove_raise_lower() {
        let p = Partition::new(vec![2, 1, 1]).unwrap();
        assert_eq!(p.with_part(1).parts(), &[2, 1, 1, 1]);
        assert_eq!(p.with_part(3).parts(), &[3, 2, 1, 1]);
        assert_eq!(p.without_part(1).unwrap().parts(), &[2, 1]);
        assert!(p.without_part(0).is_none());
        assert_eq!(p.raised(1, 3).unwrap().parts(), &[2, 2, 1]);
        assert!(p.raised(2, 3).is_none());
        assert!(p.raised(0, 2).is_none());
        assert_eq!(p.lowered(2).unwrap().parts(), &[2, 1, 0]);
        assert!(p.lowered(1).is_none());
        assert_eq!(p.reversed(3).parts(), &[2, 2, 1]);
    }
}
