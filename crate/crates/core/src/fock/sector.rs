use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::partition::Partition;
use crate::params::qfact;
use crate::scalar::Real;

/// `|Λ_{n,m}| = (n+m)!/(n!·m!)`.
pub fn sector_size(n: usize, m: usize) -> usize {
    let k = n.min(m) as u128;
    let top = (n + m) as u128;
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (top - j) / (j + 1);
    }
    usize::try_from(acc).unwrap_or(usize::MAX)
}

/// Ordered basis of the sector `Λ_{n,m}`.
///
/// Partitions are listed in reverse-lexicographic order of their part
/// vectors, largest first, e.g. `(2,2),(2,1),(2,0),(1,1),(1,0),(0,0)`.
/// The level `n = −1` denotes the zero space reached by annihilating the
/// vacuum; it has no basis states.
#[derive(Debug)]
pub struct SectorBasis {
    level: isize,
    m: usize,
    states: Vec<Partition>,
    index: HashMap<Partition, usize>,
}

impl PartialEq for SectorBasis {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.m == other.m
    }
}

impl Eq for SectorBasis {}

impl SectorBasis {
    fn build(level: isize, m: usize) -> Self {
        let mut states = Vec::new();
        if level >= 0 {
            let mut cur = Vec::with_capacity(level as usize);
            fill(level as usize, m, &mut cur, &mut states);
        }
        let index = states.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Self { level, m, states, index }
    }

    /// Shared, cached basis for level `n` (possibly `−1`) on sites `0..=m`.
    pub fn shared(level: isize, m: usize) -> Arc<Self> {
        type Cache = Mutex<HashMap<(isize, usize), Arc<SectorBasis>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let level = level.max(-1);
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(b) = cache.lock().expect("sector cache poisoned").get(&(level, m)) {
            return Arc::clone(b);
        }
        let built = Arc::new(Self::build(level, m));
        let mut guard = cache.lock().expect("sector cache poisoned");
        Arc::clone(guard.entry((level, m)).or_insert(built))
    }

    /// Particle level, `−1` for the zero space.
    pub fn level(&self) -> isize {
        self.level
    }

    /// Particle number `n`; the zero space reports 0.
    pub fn n(&self) -> usize {
        self.level.max(0) as usize
    }

    pub fn is_void(&self) -> bool {
        self.level < 0
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Partition] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &Partition {
        &self.states[i]
    }

    /// Position of `λ` in the basis.
    pub fn index_of(&self, lambda: &Partition) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    /// Neighbouring level `n + d` on the same lattice.
    pub fn shifted(&self, d: isize) -> Arc<Self> {
        Self::shared(self.level + d, self.m)
    }

    /// Weights `δ(λ)` in basis order.
    pub fn weights<T: Real>(&self, t: T) -> Vec<T> {
        self.states.iter().map(|l| weight_delta(l, t)).collect()
    }
}

fn fill(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if cur.len() == n {
        out.push(Partition::from_sorted(cur.clone()));
        return;
    }
    for p in (0..=max).rev() {
        cur.push(p);
        fill(n, p, cur, out);
        cur.pop();
    }
}

/// All partitions of `Λ_{n,m}` in basis order; `n = 0` gives `{∅}`.
pub fn enumerate_sector(n: usize, m: usize) -> Arc<SectorBasis> {
    SectorBasis::shared(n as isize, m)
}

/// `δ(λ) = 1/Π_l [m_l(λ)]!`.
pub fn weight_delta<T: Real>(lambda: &Partition, t: T) -> T {
    lambda.multiplicities().iter().fold(T::one(), |acc, &(_, k)| acc / qfact(t, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sectors() {
        let b = enumerate_sector(2, 2);
        let listed: Vec<Vec<usize>> = b.states().iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(listed, vec![vec![2, 2], vec![2, 1], vec![2, 0], vec![1, 1], vec![1, 0], vec![0, 0]]);
        let v = enumerate_sector(0, 5);
        assert_eq!(v.len(), 1);
        assert!(v.state(0).is_empty());
        assert_eq!(enumerate_sector(3, 2).len(), 10);
        assert_eq!(SectorBasis::shared(-1, 3).len(), 0);
    }

    #[test]
    fn brute_force_count() {
        for n in 0..=4usize {
            for m in 0..=4usize {
                let mut count = 0;
                let total = (m + 1).pow(n as u32);
                for code in 0..total {
                    let mut c = code;
                    let v: Vec<usize> = (0..n).map(|_| {
                        let d = c % (m + 1);
                        c /= m + 1;
                        d
                    }).collect();
                    if v.windows(2).all(|w| w[0] >= w[1]) {
                        count += 1;
                    }
                }
                assert_eq!(enumerate_sector(n, m).len(), count);
                assert_eq!(sector_size(n, m), count);
            }
        }
    }

    #[test]
    fn weights() {
        let t: f64 = 0.36;
        assert_eq!(weight_delta(&Partition::new(vec![1, 0]).unwrap(), t), 1.0);
        assert!((weight_delta(&Partition::zeros(2), t) - 1.0 / (1.0 + t)).abs() < 1e-15);
        let w = weight_delta(&Partition::new(vec![2, 2, 2]).unwrap(), t);
        assert!((w - 1.0 / ((1.0 + t) * (1.0 + t + t * t))).abs() < 1e-15);
    }

    #[test]
    fn index_lookup() {
        let b = enumerate_sector(3, 3);
        for (i, p) in b.states().iter().enumerate() {
            assert_eq!(b.index_of(p), Some(i));
        }
        assert_eq!(b.index_of(&Partition::new(vec![4, 0, 0]).unwrap()), None);
    }
}
