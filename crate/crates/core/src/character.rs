//! Virtual characters of `Sp(2g)` as full torus-weight multiplicity maps
//! with a motivic-weight tag, plus the lambda-ring operations and the
//! greedy decomposition into irreducibles.
//!
//! Weight multiplicities of irreducibles come from the Freudenthal
//! recursion; the Weyl dimension product formula is kept alongside as an
//! independent oracle.

use crate::partition::{Partition, PartitionError};
use crate::scalar::{rat_to_i64, Int, Rat};
use crate::symplectic::SymplecticSpace;
use num::One;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CharError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("weight map is not Weyl-invariant at weight {0:?}")]
    NotWeylInvariant(Vec<i64>),
    #[error("operands have different g: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("operands have different motivic weights: {0} vs {1}")]
    MotivicMismatch(i64, i64),
    #[error("negative multiplicity {mult} at dominant weight {weight:?}: input is virtual")]
    Virtual { weight: Vec<i64>, mult: i64 },
    #[error("weight coordinate out of packing range")]
    WeightRange,
}

type Key = u64;

fn pack_weight(w: &[i64]) -> Result<Key, CharError> {
    let mut k = 0u64;
    for (i, &x) in w.iter().enumerate() {
        if !(-120..=120).contains(&x) {
            return Err(CharError::WeightRange);
        }
        k |= (((x + 128) as u64) & 0xff) << (8 * i);
    }
    Ok(k)
}

fn unpack_weight(k: Key, g: usize) -> Vec<i64> {
    (0..g)
        .map(|i| (((k >> (8 * i)) & 0xff) as i64) - 128)
        .collect()
}

fn dominant_rep(w: &[i64]) -> Vec<i64> {
    let mut v: Vec<i64> = w.iter().map(|x| x.abs()).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn is_dominant(w: &[i64]) -> bool {
    w.windows(2).all(|p| p[0] >= p[1]) && w.last().map_or(true, |&x| x >= 0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VirtualCharacter {
    g: usize,
    motivic: i64,
    weights: HashMap<Key, i64>,
}

impl VirtualCharacter {
    pub fn zero(g: usize, motivic: i64) -> Self {
        VirtualCharacter {
            g,
            motivic,
            weights: HashMap::new(),
        }
    }

    /// Build from an explicit weight map, checking Weyl invariance.
    pub fn from_weights(
        g: usize,
        motivic: i64,
        entries: impl IntoIterator<Item = (Vec<i64>, i64)>,
    ) -> Result<Self, CharError> {
        let mut ch = VirtualCharacter::zero(g, motivic);
        for (w, m) in entries {
            assert_eq!(w.len(), g, "weight length != g");
            ch.add_weight(&w, m)?;
        }
        ch.validate()?;
        Ok(ch)
    }

    fn add_weight(&mut self, w: &[i64], m: i64) -> Result<(), CharError> {
        if m == 0 {
            return Ok(());
        }
        let k = pack_weight(w)?;
        let e = self.weights.entry(k).or_insert(0);
        *e += m;
        if *e == 0 {
            self.weights.remove(&k);
        }
        Ok(())
    }

    /// Every multiplicity must agree with its dominant representative.
    pub fn validate(&self) -> Result<(), CharError> {
        for (&k, &m) in &self.weights {
            let w = unpack_weight(k, self.g);
            let d = dominant_rep(&w);
            let dm = self.mult(&d);
            if dm != m {
                return Err(CharError::NotWeylInvariant(w));
            }
        }
        Ok(())
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn motivic_weight(&self) -> i64 {
        self.motivic
    }

    pub fn mult(&self, w: &[i64]) -> i64 {
        pack_weight(w)
            .ok()
            .and_then(|k| self.weights.get(&k).copied())
            .unwrap_or(0)
    }

    /// Virtual dimension: the sum of all multiplicities.
    pub fn dim(&self) -> i64 {
        self.weights.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<i64>, i64)> + '_ {
        self.weights
            .iter()
            .map(|(&k, &m)| (unpack_weight(k, self.g), m))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CharError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (&k, &m) in &other.weights {
            let e = out.weights.entry(k).or_insert(0);
            *e += m;
            if *e == 0 {
                out.weights.remove(&k);
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CharError> {
        self.checked_add(&other.scaled(-1))
    }

    pub fn scaled(&self, c: i64) -> Self {
        if c == 0 {
            return VirtualCharacter::zero(self.g, self.motivic);
        }
        let mut out = self.clone();
        for v in out.weights.values_mut() {
            *v *= c;
        }
        out
    }

    /// Tate twist: the weight map is unchanged, the motivic tag drops by 2r.
    pub fn twist(&self, r: i64) -> Self {
        let mut out = self.clone();
        out.motivic -= 2 * r;
        out
    }

    fn compatible(&self, other: &Self) -> Result<(), CharError> {
        if self.g != other.g {
            return Err(CharError::GenusMismatch(self.g, other.g));
        }
        if self.motivic != other.motivic {
            return Err(CharError::MotivicMismatch(self.motivic, other.motivic));
        }
        Ok(())
    }

    /// Weight-map convolution; motivic tags add.
    pub fn tensor(&self, other: &Self) -> Result<Self, CharError> {
        if self.g != other.g {
            return Err(CharError::GenusMismatch(self.g, other.g));
        }
        let mut out = VirtualCharacter::zero(self.g, self.motivic + other.motivic);
        for (&k1, &m1) in &self.weights {
            let w1 = unpack_weight(k1, self.g);
            for (&k2, &m2) in &other.weights {
                let w2 = unpack_weight(k2, self.g);
                let w: Vec<i64> = w1.iter().zip(&w2).map(|(a, b)| a + b).collect();
                out.add_weight(&w, m1 * m2)?;
            }
        }
        Ok(out)
    }

    /// Adams operation: scale every weight vector by `k`; the motivic tag
    /// multiplies by `k`.
    pub fn adams(&self, k: u32) -> Result<Self, CharError> {
        assert!(k >= 1);
        let mut out = VirtualCharacter::zero(self.g, self.motivic * k as i64);
        for (&key, &m) in &self.weights {
            let w: Vec<i64> = unpack_weight(key, self.g)
                .iter()
                .map(|x| x * k as i64)
                .collect();
            out.add_weight(&w, m)?;
        }
        Ok(out)
    }

    /// Exterior power via the Newton recursion
    /// `k L^k = sum_{i=1}^{k} (-1)^{i-1} L^{k-i} psi^i`.
    pub fn wedge_power(&self, k: u32) -> Result<Self, CharError> {
        let mut lams: Vec<VirtualCharacter> = Vec::with_capacity(k as usize + 1);
        lams.push(trivial(self.g, 0)); // Lambda^0 = 1
        for kk in 1..=k {
            let mut acc = VirtualCharacter::zero(self.g, self.motivic * kk as i64);
            for i in 1..=kk {
                let term = lams[(kk - i) as usize].tensor(&self.adams(i)?)?;
                let term = term.scaled(if i % 2 == 1 { 1 } else { -1 });
                acc = acc.checked_add(&term)?;
            }
            // divide by kk, exactly
            let mut divided = VirtualCharacter::zero(self.g, acc.motivic);
            for (&key, &m) in &acc.weights {
                assert!(m % kk as i64 == 0, "Newton recursion must divide exactly");
                divided.weights.insert(key, m / kk as i64);
            }
            lams.push(divided);
        }
        Ok(lams.pop().unwrap())
    }

    /// Greedy decomposition into irreducibles: repeatedly remove the
    /// lexicographically greatest dominant weight. Errors on virtual input,
    /// reporting the offending weight.
    pub fn decompose(&self) -> Result<Vec<(Partition, i64)>, CharError> {
        let mut remaining = self.clone();
        let mut out: Vec<(Partition, i64)> = Vec::new();
        let mut cache: HashMap<Partition, VirtualCharacter> = HashMap::new();
        while !remaining.is_zero() {
            let top = remaining
                .iter()
                .filter(|(w, _)| is_dominant(w))
                .max_by(|(a, _), (b, _)| a.cmp(b));
            let Some((w, m)) = top else {
                // a nonzero Weyl-invariant map always has a dominant weight
                return Err(CharError::NotWeylInvariant(Vec::new()));
            };
            if m < 0 {
                return Err(CharError::Virtual { weight: w, mult: m });
            }
            let lambda = Partition::from_weight(&w).expect("dominant weight");
            let irr = match cache.get(&lambda) {
                Some(ch) => ch.clone(),
                None => {
                    let ch = irrep_character(&lambda, self.g)?;
                    cache.insert(lambda.clone(), ch.clone());
                    ch
                }
            };
            // align motivic tag for subtraction
            let irr = VirtualCharacter {
                motivic: remaining.motivic,
                ..irr
            };
            remaining = remaining.checked_sub(&irr.scaled(m))?;
            out.push((lambda, m));
        }
        out.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(out)
    }

    /// Multiplicity of the trivial representation.
    pub fn invariant_multiplicity(&self) -> Result<i64, CharError> {
        Ok(self
            .decompose()?
            .iter()
            .find(|(p, _)| p.is_empty())
            .map(|(_, m)| *m)
            .unwrap_or(0))
    }

    /// Multiplicity of the irreducible labelled by `lambda`.
    pub fn isotypic_multiplicity(&self, lambda: &Partition) -> Result<i64, CharError> {
        Ok(self
            .decompose()?
            .iter()
            .find(|(p, _)| p == lambda)
            .map(|(_, m)| *m)
            .unwrap_or(0))
    }

    /// Twist `r` with `H_lambda(r)`: recovered from the motivic tag by
    /// `w = -|lambda| - 2r`. `None` when the parity does not match.
    pub fn twist_of_constituent(&self, lambda: &Partition) -> Option<i64> {
        let s = self.motivic + lambda.size() as i64;
        if s % 2 != 0 {
            return None;
        }
        Some(-s / 2)
    }
}

/// Character of the defining representation `H` (motivic weight -1).
pub fn char_h(space: SymplecticSpace) -> VirtualCharacter {
    let g = space.genus();
    let mut entries = Vec::new();
    for i in 0..g {
        let mut w = vec![0i64; g];
        w[i] = 1;
        entries.push((w.clone(), 1));
        w[i] = -1;
        entries.push((w, 1));
    }
    VirtualCharacter::from_weights(g, -1, entries).expect("H character")
}

/// The trivial character `Q(r)` (dimension 1, motivic weight -2r).
pub fn trivial(g: usize, r: i64) -> VirtualCharacter {
    VirtualCharacter::from_weights(g, -2 * r, [(vec![0i64; g], 1)]).expect("trivial")
}

/// `Lambda^2_0 H = Lambda^2 H / theta_check` (motivic weight -2).
pub fn char_lambda2_0(space: SymplecticSpace) -> VirtualCharacter {
    let h = char_h(space);
    let l2 = h.wedge_power(2).expect("wedge");
    l2.checked_sub(&trivial(space.genus(), 1)).expect("sub")
}

/// `Lambda^3_0 H = (Lambda^3 H)(-1) / theta_check ^ H` (motivic weight -1).
pub fn char_lambda3_0(space: SymplecticSpace) -> VirtualCharacter {
    let h = char_h(space);
    let l3 = h.wedge_power(3).expect("wedge").twist(-1);
    l3.checked_sub(&h).expect("sub")
}

/// `V_box = H_[2,2](-1)` (motivic weight -2).
pub fn char_vboxplus(space: SymplecticSpace) -> VirtualCharacter {
    irrep_character(&Partition::new(vec![2, 2]).unwrap(), space.genus())
        .expect("irrep")
        .twist(-1)
}

fn positive_roots(g: usize) -> Vec<Vec<i64>> {
    let mut roots = Vec::new();
    for i in 0..g {
        for j in (i + 1)..g {
            let mut r = vec![0i64; g];
            r[i] = 1;
            r[j] = -1;
            roots.push(r.clone());
            r[j] = 1;
            roots.push(r);
        }
        let mut r = vec![0i64; g];
        r[i] = 2;
        roots.push(r);
    }
    roots
}

fn rho(g: usize) -> Vec<i64> {
    (0..g).map(|i| (g - i) as i64).collect()
}

fn ip(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Is `nu` a nonnegative integer combination of the simple roots of `C_g`?
fn in_root_cone(nu: &[i64]) -> bool {
    let mut s = 0i64;
    for (k, &x) in nu.iter().enumerate() {
        s += x;
        if k + 1 < nu.len() && s < 0 {
            return false;
        }
    }
    s >= 0 && s % 2 == 0
}

/// Height of `nu` in simple-root coordinates (assumes `in_root_cone`).
fn cone_height(nu: &[i64]) -> i64 {
    let g = nu.len();
    let mut h = 0i64;
    let mut s = 0i64;
    for (k, &x) in nu.iter().enumerate() {
        s += x;
        if k + 1 < g {
            h += s;
        } else {
            h += s / 2;
        }
    }
    h
}

fn dominant_weights_below(lambda: &[i64]) -> Vec<Vec<i64>> {
    let g = lambda.len();
    let total: i64 = lambda.iter().sum();
    let mut out = Vec::new();
    let mut current = vec![0i64; g];
    fn rec(
        pos: usize,
        maxval: i64,
        left: i64,
        lambda: &[i64],
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let g = lambda.len();
        if pos == g {
            let nu: Vec<i64> = lambda
                .iter()
                .zip(current.iter())
                .map(|(a, b)| a - b)
                .collect();
            if in_root_cone(&nu) {
                out.push(current.clone());
            }
            return;
        }
        for v in (0..=maxval.min(left)).rev() {
            current[pos] = v;
            rec(pos + 1, v, left - v, lambda, current, out);
        }
        current[pos] = 0;
    }
    rec(0, lambda[0].max(0), total, lambda, &mut current, &mut out);
    out
}

/// Full torus-weight multiplicity map of the irreducible `H_lambda` by the
/// Freudenthal recursion, expanded over the Weyl group. The motivic tag is
/// `-|lambda|` (the untwisted normalization).
pub fn irrep_character(lambda: &Partition, g: usize) -> Result<VirtualCharacter, CharError> {
    lambda.check_fits(g)?;
    let lam = lambda.to_weight(g);
    let roots = positive_roots(g);
    let rho = rho(g);
    let lam_rho: Vec<i64> = lam.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let lam_rho_norm = ip(&lam_rho, &lam_rho);

    let mut dominants = dominant_weights_below(&lam);
    dominants.sort_by_key(|mu| {
        let nu: Vec<i64> = lam.iter().zip(mu.iter()).map(|(a, b)| a - b).collect();
        cone_height(&nu)
    });

    let mut mults: HashMap<Vec<i64>, i64> = HashMap::new();
    for mu in &dominants {
        if *mu == lam {
            mults.insert(mu.clone(), 1);
            continue;
        }
        let mu_rho: Vec<i64> = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let denom = lam_rho_norm - ip(&mu_rho, &mu_rho);
        assert!(denom > 0, "Freudenthal denominator must be positive");
        let mut num = 0i64;
        let kmax = 2 * lambda.size() as i64 + 2;
        for alpha in &roots {
            for k in 1..=kmax {
                let nu: Vec<i64> = mu.iter().zip(alpha).map(|(m, a)| m + k * a).collect();
                let m = mults.get(&dominant_rep(&nu)).copied().unwrap_or(0);
                if m != 0 {
                    num += m * ip(&nu, alpha);
                }
            }
        }
        num *= 2;
        assert!(num % denom == 0, "Freudenthal division must be exact");
        let m = num / denom;
        if m != 0 {
            mults.insert(mu.clone(), m);
        }
    }

    // expand over the Weyl group
    let mut entries: Vec<(Vec<i64>, i64)> = Vec::new();
    for (mu, m) in &mults {
        for w in weyl_orbit(mu) {
            entries.push((w, *m));
        }
    }
    VirtualCharacter::from_weights(g, -(lambda.size() as i64), entries)
}

/// The Weyl orbit of a dominant weight: distinct permutations with all sign
/// choices on nonzero entries.
fn weyl_orbit(mu: &[i64]) -> Vec<Vec<i64>> {
    let mut perms = Vec::new();
    let mut sorted: Vec<i64> = mu.to_vec();
    sorted.sort_unstable();
    distinct_permutations(&mut sorted, 0, &mut perms);
    let mut out = Vec::new();
    for p in &perms {
        let nz: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
        for mask in 0..(1u32 << nz.len()) {
            let mut v = p.clone();
            for (bit, &i) in nz.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    v[i] = -v[i];
                }
            }
            out.push(v);
        }
    }
    out
}

fn distinct_permutations(v: &mut Vec<i64>, start: usize, out: &mut Vec<Vec<i64>>) {
    if start == v.len() {
        out.push(v.clone());
        return;
    }
    let mut seen = Vec::new();
    for i in start..v.len() {
        if seen.contains(&v[i]) {
            continue;
        }
        seen.push(v[i]);
        v.swap(start, i);
        distinct_permutations(v, start + 1, out);
        v.swap(start, i);
    }
}

/// Weyl dimension product formula for `Sp(2g)`; independent of the
/// Freudenthal route.
pub fn irrep_dimension(lambda: &Partition, g: usize) -> Result<Int, CharError> {
    lambda.check_fits(g)?;
    let lam = lambda.to_weight(g);
    let rho = rho(g);
    let lam_rho: Vec<i64> = lam.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut acc = Rat::one();
    for alpha in positive_roots(g) {
        let num = ip(&lam_rho, &alpha);
        let den = ip(&rho, &alpha);
        acc *= Rat::new(Int::from(num), Int::from(den));
    }
    assert!(acc.denom().is_one(), "Weyl dimension must be an integer");
    Ok(acc.numer().clone())
}

pub fn irrep_dimension_i64(lambda: &Partition, g: usize) -> Result<i64, CharError> {
    let d = irrep_dimension(lambda, g)?;
    Ok(rat_to_i64(&Rat::from_integer(d)).expect("dimension fits i64"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(g: usize) -> SymplecticSpace {
        SymplecticSpace::new(g).unwrap()
    }

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn defining_rep() {
        let ch = irrep_character(&part(&[1]), 3).unwrap();
        assert_eq!(ch.dim(), 6);
        assert_eq!(ch, char_h(sp(3)));
        for i in 0..3 {
            let mut w = vec![0i64; 3];
            w[i] = 1;
            assert_eq!(ch.mult(&w), 1);
            w[i] = -1;
            assert_eq!(ch.mult(&w), 1);
        }
    }

    #[test]
    fn known_dimensions() {
        assert_eq!(irrep_dimension_i64(&part(&[1]), 4).unwrap(), 8);
        assert_eq!(irrep_dimension_i64(&part(&[1, 1]), 4).unwrap(), 27);
        assert_eq!(irrep_dimension_i64(&part(&[1, 1, 1]), 3).unwrap(), 14);
        assert_eq!(irrep_dimension_i64(&part(&[1, 1]), 3).unwrap(), 14);
        assert_eq!(irrep_dimension_i64(&part(&[2, 1]), 3).unwrap(), 64);
        assert_eq!(irrep_dimension_i64(&part(&[2, 2]), 3).unwrap(), 90);
        // 2g^2 - g - 1 for [1,1] across the supported range
        for g in 2..=6usize {
            assert_eq!(
                irrep_dimension_i64(&part(&[1, 1]), g).unwrap(),
                (2 * g * g - g - 1) as i64
            );
        }
    }

    #[test]
    fn freudenthal_matches_weyl_dimension() {
        // all partitions with |lambda| <= 4, g in 2..=6
        let parts: Vec<Vec<u32>> = vec![
            vec![],
            vec![1],
            vec![2],
            vec![1, 1],
            vec![3],
            vec![2, 1],
            vec![1, 1, 1],
            vec![4],
            vec![3, 1],
            vec![2, 2],
            vec![2, 1, 1],
            vec![1, 1, 1, 1],
        ];
        for g in 2..=6usize {
            for p in &parts {
                if p.len() > g {
                    continue;
                }
                let lambda = part(p);
                let ch = irrep_character(&lambda, g).unwrap();
                assert_eq!(
                    Int::from(ch.dim()),
                    irrep_dimension(&lambda, g).unwrap(),
                    "lambda={lambda} g={g}"
                );
            }
        }
    }

    #[test]
    fn lambda_ops_basics() {
        let h = char_h(sp(3));
        // wedge^4 H at g=3: C(6,4) = 15
        assert_eq!(h.wedge_power(4).unwrap().dim(), 15);
        // top exterior power at g=2 is the trivial weight line
        let h2 = char_h(sp(2));
        let top = h2.wedge_power(4).unwrap();
        assert_eq!(top.dim(), 1);
        assert_eq!(top.mult(&[0, 0]), 1);
        // adams doubles weights
        let a2 = h.adams(2).unwrap();
        assert_eq!(a2.dim(), 6);
        assert_eq!(a2.mult(&[2, 0, 0]), 1);
        assert_eq!(a2.mult(&[1, 0, 0]), 0);
        assert_eq!(a2.motivic_weight(), -2);
    }

    #[test]
    fn motivic_tags() {
        let h = char_h(sp(2));
        assert_eq!(h.motivic_weight(), -1);
        assert_eq!(h.tensor(&h).unwrap().motivic_weight(), -2);
        assert_eq!(h.wedge_power(2).unwrap().motivic_weight(), -2);
        assert_eq!(trivial(2, 1).motivic_weight(), -2);
        assert_eq!(char_lambda3_0(sp(3)).motivic_weight(), -1);
        assert_eq!(char_vboxplus(sp(3)).motivic_weight(), -2);
    }

    #[test]
    fn decompose_lambda4_h() {
        // Lambda^4 H: [1^4] + [1^2] + trivial for g >= 4; [1^2] + trivial at
        // g = 3; trivial at g = 2
        let l4 = |g: usize| char_h(sp(g)).wedge_power(4).unwrap();
        let d2 = l4(2).decompose().unwrap();
        assert_eq!(d2, vec![(Partition::trivial(), 1)]);
        let d3 = l4(3).decompose().unwrap();
        assert_eq!(d3, vec![(part(&[1, 1]), 1), (Partition::trivial(), 1)]);
        for g in 4..=5 {
            let d = l4(g).decompose().unwrap();
            assert_eq!(
                d,
                vec![
                    (part(&[1, 1, 1, 1]), 1),
                    (part(&[1, 1]), 1),
                    (Partition::trivial(), 1)
                ]
            );
        }
    }

    #[test]
    fn decompose_rejects_virtual() {
        let g = 2;
        let h = char_h(sp(g));
        let virt = trivial(g, 0).checked_sub(&trivial(g, 0).scaled(2)).unwrap();
        assert!(matches!(virt.decompose(), Err(CharError::Virtual { .. })));
        assert!(h.decompose().is_ok());
    }

    #[test]
    fn unique_lambda20_in_h_tensor_lambda30() {
        for g in 3..=5usize {
            let t = char_h(sp(g)).tensor(&char_lambda3_0(sp(g))).unwrap();
            assert_eq!(t.isotypic_multiplicity(&part(&[1, 1])).unwrap(), 1);
        }
    }

    #[test]
    fn adams_is_ring_homomorphism() {
        use crate::sp_group::SeededRng;
        let mut rng = SeededRng::new(23);
        let g = 3;
        let random_char = |rng: &mut SeededRng| {
            let mut entries = Vec::new();
            for _ in 0..3 {
                let mut w = vec![0i64; g];
                for x in w.iter_mut() {
                    *x = rng.int_in(0, 2);
                }
                w.sort_unstable_by(|a, b| b.cmp(a));
                let m = rng.int_in(-2, 2);
                for o in super::weyl_orbit(&w) {
                    entries.push((o, m));
                }
            }
            VirtualCharacter::from_weights(g, 0, entries).unwrap()
        };
        for _ in 0..5 {
            let x = random_char(&mut rng);
            let y = random_char(&mut rng);
            let z = random_char(&mut rng);
            // commutativity and associativity of tensor
            assert_eq!(x.tensor(&y).unwrap(), y.tensor(&x).unwrap());
            assert_eq!(
                x.tensor(&y).unwrap().tensor(&z).unwrap(),
                x.tensor(&y.tensor(&z).unwrap()).unwrap()
            );
            // psi^k multiplicative
            for k in [2u32, 3] {
                let lhs = x.tensor(&y).unwrap().adams(k).unwrap();
                let rhs = x.adams(k).unwrap().tensor(&y.adams(k).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn reassembly_preserves_dimension() {
        let chi = char_h(sp(3)).wedge_power(3).unwrap();
        let dec = chi.decompose().unwrap();
        let total: i64 = dec
            .iter()
            .map(|(p, m)| m * irrep_dimension_i64(p, 3).unwrap())
            .collect::<Vec<_>>()
            .iter()
            .sum();
        assert_eq!(total, chi.dim());
    }
}
