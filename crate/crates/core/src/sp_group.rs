//! Integer symplectic matrices built from transvections, and the seeded
//! generator used by every randomized check. A fixed seed makes all
//! randomized verification reproducible.

use crate::symplectic::SymplecticSpace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

pub const DEFAULT_SEED: u64 = 0x5d2_1ac3;

/// Thin wrapper so call sites do not depend on the rand API surface.
pub struct SeededRng {
    inner: ChaCha12Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            inner: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.inner.gen_range(0..n)
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.inner.gen_range(lo..=hi)
    }
}

/// The symplectic transvection `T_v : x -> x + theta(x, v) v` as an integer
/// matrix (columns are images of basis letters).
pub fn transvection(space: SymplecticSpace, v: &[i64]) -> Vec<Vec<i64>> {
    let n = space.rank();
    assert_eq!(v.len(), n);
    let mut m = vec![vec![0i64; n]; n];
    for j in 0..n {
        m[j][j] = 1;
        // theta(e_j, v)
        let mut th = 0i64;
        for (k, &vk) in v.iter().enumerate() {
            th += space.theta(j as u8, k as u8) * vk;
        }
        for i in 0..n {
            m[i][j] += th * v[i];
        }
    }
    m
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Check `M^T J M = J` for the standard form `J`.
pub fn is_symplectic(space: SymplecticSpace, m: &[Vec<i64>]) -> bool {
    let n = space.rank();
    for p in 0..n {
        for q in 0..n {
            // theta(M e_p, M e_q)
            let mut s = 0i64;
            for i in 0..n {
                if m[i][p] == 0 {
                    continue;
                }
                for j in 0..n {
                    if m[j][q] != 0 {
                        s += m[i][p] * space.theta(i as u8, j as u8) * m[j][q];
                    }
                }
            }
            if s != space.theta(p as u8, q as u8) {
                return false;
            }
        }
    }
    true
}

/// A small fixed generating set: transvections along the basis letters and
/// the sums `a_i + b_i`, `a_i + a_{i+1}`.
pub fn standard_generators(space: SymplecticSpace) -> Vec<Vec<Vec<i64>>> {
    let g = space.genus();
    let n = space.rank();
    let mut gens = Vec::new();
    let e = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    for i in 0..n {
        gens.push(transvection(space, &e(i)));
    }
    for i in 0..g {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v[g + i] = 1;
        gens.push(transvection(space, &v));
        if i + 1 < g {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v[i + 1] = 1;
            gens.push(transvection(space, &v));
        }
    }
    gens
}

/// A product of `len` random transvections along short integer vectors.
pub fn random_symplectic(space: SymplecticSpace, rng: &mut SeededRng, len: usize) -> Vec<Vec<i64>> {
    let n = space.rank();
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..len {
        let mut v = vec![0i64; n];
        // short vectors keep the entries of the product moderate
        for x in v.iter_mut() {
            *x = rng.int_in(-1, 1);
        }
        if v.iter().all(|&x| x == 0) {
            v[rng.below(n)] = 1;
        }
        m = mat_mul(&transvection(space, &v), &m);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transvections_are_symplectic() {
        let h = SymplecticSpace::new(3).unwrap();
        for gen in standard_generators(h) {
            assert!(is_symplectic(h, &gen));
        }
    }

    #[test]
    fn random_products_are_symplectic() {
        let h = SymplecticSpace::new(2).unwrap();
        let mut rng = SeededRng::new(DEFAULT_SEED);
        for _ in 0..20 {
            let m = random_symplectic(h, &mut rng, 6);
            assert!(is_symplectic(h, &m));
        }
    }

    #[test]
    fn reproducible() {
        let h = SymplecticSpace::new(2).unwrap();
        let mut r1 = SeededRng::new(11);
        let mut r2 = SeededRng::new(11);
        assert_eq!(
            random_symplectic(h, &mut r1, 5),
            random_symplectic(h, &mut r2, 5)
        );
    }
}
