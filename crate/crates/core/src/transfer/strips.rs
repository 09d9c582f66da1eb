//! Horizontal strips and the φ/ψ coefficients attached to them.

use crate::error::{Error, Result};
use crate::fock::Partition;
use crate::scalar::Real;

/// Relations between partitions built from horizontal strips.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StripRelation {
    /// `µ ⪯ λ`: the interleaving chain holds.
    Precede,
    /// `µ ≤ λ`: some `ν` has `µ ⪯ ν ⪯ λ`.
    Le,
    /// `µ ∼₋ λ`: some `ν` lies below both.
    SimMinus,
    /// `µ ∼₊ λ`: some `ν` lies above both.
    SimPlus,
}

/// `µ ⪯ λ`: `µ` has `n` or `n − 1` parts and
/// `λ₁ ≥ µ₁ ≥ λ₂ ≥ µ₂ ≥ … ≥ λₙ ≥ µₙ ≥ 0`.
pub fn precedes(mu: &Partition, lambda: &Partition) -> bool {
    let (l, u) = (lambda.parts(), mu.parts());
    let n = l.len();
    if !(u.len() == n || u.len() + 1 == n) {
        return false;
    }
    u.iter().enumerate().all(|(j, &x)| x <= l[j] && (j + 1 >= n || x >= l[j + 1]))
}

/// Every `µ ⪯ λ` with `λ.len()` parts (`same`) or one part fewer.
pub fn strips_below(lambda: &Partition, same: bool) -> Vec<Partition> {
    let l = lambda.parts();
    let n = l.len();
    if n == 0 && !same {
        return Vec::new();
    }
    let k = if same { n } else { n - 1 };
    let ranges: Vec<(usize, usize)> = (0..k).map(|j| (if j + 1 < n { l[j + 1] } else { 0 }, l[j])).collect();
    product(&ranges)
}

/// Every `µ` with `ν ⪯ µ`, `µ₁ ≤ m`, with `ν.len()` parts (`same`) or one more.
pub fn strips_above(nu: &Partition, m: usize, same: bool) -> Vec<Partition> {
    let v = nu.parts();
    let k = v.len();
    if v.first().is_some_and(|&x| x > m) {
        return Vec::new();
    }
    let len = if same { k } else { k + 1 };
    let ranges: Vec<(usize, usize)> = (0..len)
        .map(|j| {
            let hi = if j == 0 { m } else { v[j - 1] };
            let lo = if j < k { v[j] } else { 0 };
            (lo, hi)
        })
        .collect();
    product(&ranges)
}

fn product(ranges: &[(usize, usize)]) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(ranges.len());
    fn rec(ranges: &[(usize, usize)], cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if cur.len() == ranges.len() {
            out.push(Partition::from_sorted(cur.clone()));
            return;
        }
        let (lo, hi) = ranges[cur.len()];
        for x in (lo..=hi).rev() {
            cur.push(x);
            rec(ranges, cur, out);
            cur.pop();
        }
    }
    rec(ranges, &mut cur, &mut out);
    out
}

/// Evaluates a strip relation `µ R λ`; `m` bounds the intermediate parts.
pub fn relation_holds(kind: StripRelation, mu: &Partition, lambda: &Partition, m: usize) -> bool {
    let below = |p: &Partition| {
        let mut v = strips_below(p, true);
        v.extend(strips_below(p, false));
        v
    };
    match kind {
        StripRelation::Precede => precedes(mu, lambda),
        StripRelation::Le => below(lambda).iter().any(|nu| precedes(mu, nu)),
        StripRelation::SimMinus => below(lambda).iter().any(|nu| precedes(nu, mu)),
        StripRelation::SimPlus => {
            let mut above = strips_above(lambda, m, true);
            above.extend(strips_above(lambda, m, false));
            above.iter().any(|nu| precedes(mu, nu))
        }
    }
}

fn mult_pairs<'a>(lambda: &'a Partition, mu: &'a Partition) -> impl Iterator<Item = (usize, usize)> + 'a {
    let top = lambda.first().max(mu.first());
    let (a, b) = (lambda.clone(), mu.clone());
    (0..=top).map(move |l| (a.multiplicity(l), b.multiplicity(l)))
}

/// `φ_{λ/µ} = Π_{l: m_l(λ) = m_l(µ)+1} (1 − t^{m_l(λ)})`, no relation check.
pub(crate) fn phi<T: Real>(lambda: &Partition, mu: &Partition, t: T) -> T {
    mult_pairs(lambda, mu)
        .filter(|&(a, b)| a == b + 1)
        .fold(T::one(), |acc, (a, _)| acc * (T::one() - t.powi(a as i32)))
}

/// `ψ_{λ/µ} = Π_{l: m_l(λ) = m_l(µ)−1} (1 − t^{m_l(µ)})`, no relation check.
pub(crate) fn psi<T: Real>(lambda: &Partition, mu: &Partition, t: T) -> T {
    mult_pairs(lambda, mu)
        .filter(|&(a, b)| a + 1 == b)
        .fold(T::one(), |acc, (_, b)| acc * (T::one() - t.powi(b as i32)))
}

/// `(φ_{λ/µ}, ψ_{λ/µ})` for `µ ⪯ λ`.
pub fn phi_psi<T: Real>(lambda: &Partition, mu: &Partition, t: T) -> Result<(T, T)> {
    if !precedes(mu, lambda) {
        return Err(Error::Relation { parts: mu.parts().to_vec(), relation: "horizontal strip below lambda" });
    }
    Ok((phi(lambda, mu, t), psi(lambda, mu, t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::enumerate_sector;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn phi_psi_examples() {
        let t: f64 = 0.36;
        let (ph, _) = phi_psi(&p(&[1]), &Partition::empty(), t).unwrap();
        assert!((ph - (1.0 - t)).abs() < 1e-15);
        for n in 1..5 {
            let (ph, _) = phi_psi(&Partition::zeros(n), &Partition::zeros(n - 1), t).unwrap();
            assert!((ph - (1.0 - t.powi(n as i32))).abs() < 1e-15);
        }
        let lam = p(&[2, 1, 1]);
        assert_eq!(phi_psi(&lam, &lam, t).unwrap(), (1.0, 1.0));
        assert!(phi_psi(&p(&[1]), &p(&[2]), t).is_err());
    }

    #[test]
    fn enumerations_match_brute_force() {
        for m in 0..=3 {
            for n in 0..=3 {
                for lam in enumerate_sector(n, m).states() {
                    for (same, k) in [(true, n), (false, n.wrapping_sub(1))] {
                        if k > n {
                            assert!(strips_below(lam, same).is_empty());
                            continue;
                        }
                        let brute: Vec<Partition> =
                            enumerate_sector(k, m).states().iter().filter(|mu| precedes(mu, lam)).cloned().collect();
                        assert_eq!(strips_below(lam, same), brute);
                    }
                    for (same, k) in [(true, n), (false, n + 1)] {
                        let brute: Vec<Partition> =
                            enumerate_sector(k, m).states().iter().filter(|mu| precedes(lam, mu)).cloned().collect();
                        assert_eq!(strips_above(lam, m, same), brute);
                    }
                }
            }
        }
    }

    #[test]
    fn relations() {
        assert!(precedes(&p(&[1, 0]), &p(&[2, 1])));
        assert!(!precedes(&p(&[2, 2]), &p(&[2, 1])));
        assert!(precedes(&p(&[1]), &p(&[2, 1])));
        assert!(!precedes(&p(&[0]), &p(&[2, 1])));
        assert!(relation_holds(StripRelation::Le, &p(&[0]), &p(&[2, 1]), 3));
        assert!(!relation_holds(StripRelation::Le, &p(&[3]), &p(&[2, 1]), 3));
        assert!(relation_holds(StripRelation::SimMinus, &p(&[3, 1]), &p(&[2, 1]), 3));
        assert!(relation_holds(StripRelation::SimPlus, &p(&[3, 0]), &p(&[3, 3]), 3));
        assert!(!relation_holds(StripRelation::SimPlus, &p(&[0, 0]), &p(&[3, 3]), 3));
    }
}
