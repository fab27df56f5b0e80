//! Integral lattices inside the rational tensor spaces, with membership
//! decided by exact Hermite reduction over a localization of `Z`.

use crate::matrix::{hermite_column_basis, solve_in_column_basis};
use crate::scalar::{Int, Rat};
use crate::symplectic::SymplecticSpace;
use crate::tensor::{sorted_words, Symmetry, TensorElement};
use crate::word::Word;
use num::{Integer, One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LatticeError {
    #[error("element does not live in the lattice ambient space: {0}")]
    AmbientMismatch(String),
}

/// A subring of `Q` given by which primes are invertible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CoefficientRing {
    /// `Z` with the listed primes inverted (e.g. `Z[1/2]`).
    Inverting(Vec<u64>),
    /// `Z` localized at the listed primes: every prime outside the list is
    /// inverted (e.g. `Z_(2)`, denominators must be odd).
    LocalAt(Vec<u64>),
}

impl CoefficientRing {
    pub fn integers() -> Self {
        CoefficientRing::Inverting(Vec::new())
    }

    pub fn local_at(primes: &[u64]) -> Self {
        CoefficientRing::LocalAt(primes.to_vec())
    }

    pub fn inverting(primes: &[u64]) -> Self {
        CoefficientRing::Inverting(primes.to_vec())
    }

    pub fn is_unit_prime(&self, p: u64) -> bool {
        match self {
            CoefficientRing::Inverting(s) => s.contains(&p),
            CoefficientRing::LocalAt(s) => !s.contains(&p),
        }
    }

    /// True when the integer `n != 0` is a unit of the ring.
    pub fn is_unit(&self, n: &Int) -> bool {
        let mut n = n.abs();
        if n.is_zero() {
            return false;
        }
        for p in prime_factors(&mut n) {
            if !self.is_unit_prime(p) {
                return false;
            }
        }
        true
    }

    /// A rational is in the ring iff its reduced denominator is a unit.
    pub fn contains_rat(&self, r: &Rat) -> bool {
        self.is_unit(r.denom())
    }

    pub fn describe(&self) -> String {
        match self {
            CoefficientRing::Inverting(s) if s.is_empty() => "Z".to_string(),
            CoefficientRing::Inverting(s) => format!(
                "Z[1/{}]",
                s.iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",1/")
            ),
            CoefficientRing::LocalAt(s) => format!(
                "Z_({})",
                s.iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

fn prime_factors(n: &mut Int) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = Int::from(2u64);
    while (&p * &p) <= *n {
        if n.is_multiple_of(&p) {
            out.push(to_u64(&p));
            while n.is_multiple_of(&p) {
                *n /= &p;
            }
        }
        p += 1;
    }
    if *n > Int::one() {
        out.push(to_u64(n));
    }
    out
}

fn to_u64(n: &Int) -> u64 {
    n.to_string().parse().expect("prime factor exceeds u64")
}

/// A finitely generated lattice in a coordinatized rational space.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub ambient_label: String,
    pub ambient_dim: usize,
    pub ring: CoefficientRing,
    basis: Vec<Vec<Int>>, // Hermite column basis of the integer span
}

impl Lattice {
    /// Build from generators given as integer coordinate vectors.
    pub fn from_integer_generators(
        label: impl Into<String>,
        dim: usize,
        ring: CoefficientRing,
        generators: Vec<Vec<Int>>,
    ) -> Self {
        for g in &generators {
            assert_eq!(g.len(), dim, "generator has wrong length");
        }
        Lattice {
            ambient_label: label.into(),
            ambient_dim: dim,
            ring,
            basis: hermite_column_basis(generators),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Decide whether a rational coordinate vector is an `A`-linear
    /// combination of the generators, `A` being the coefficient ring.
    pub fn contains(&self, x: &[Rat]) -> Result<bool, LatticeError> {
        if x.len() != self.ambient_dim {
            return Err(LatticeError::AmbientMismatch(format!(
                "expected dim {}, got {}",
                self.ambient_dim,
                x.len()
            )));
        }
        match solve_in_column_basis(&self.basis, x) {
            None => Ok(false),
            Some(y) => Ok(y.iter().all(|c| self.ring.contains_rat(c))),
        }
    }
}

/// Coordinates of trivectors: the sorted 3-letter words of `2g` letters.
pub fn trivector_words(space: SymplecticSpace) -> Vec<Word> {
    sorted_words(space.rank(), 3)
}

/// The lattice `Lambda^3 H` over the given ring, in trivector coordinates.
pub fn lambda3_lattice(space: SymplecticSpace, ring: CoefficientRing) -> Lattice {
    let words = trivector_words(space);
    let dim = words.len();
    let generators = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    Lattice::from_integer_generators("Lambda^3 H", dim, ring, generators)
}

/// The lattice `Lambda^3_n H`: `n`-tuples of integral trivectors with equal
/// images in `Lambda^3_0 H`. Coordinates are the concatenation of the `n`
/// trivector coordinate blocks.
pub fn lambda3n_lattice(space: SymplecticSpace, n: usize, ring: CoefficientRing) -> Lattice {
    let words = trivector_words(space);
    let dim = words.len();
    let mut generators: Vec<Vec<Int>> = Vec::new();
    // diagonal generators (w, w, ..., w)
    for i in 0..dim {
        let mut v = vec![Int::zero(); dim * n];
        for s in 0..n {
            v[s * dim + i] = Int::one();
        }
        generators.push(v);
    }
    // class-zero generators theta_check ^ x placed in a single slot
    for l in space.letters() {
        let w = TensorElement::basis_wedge(space, &[l], 1)
            .theta_wedge()
            .expect("wedge");
        let coords = w.to_coords(&words);
        let icoords: Vec<Int> = coords.iter().map(|c| c.numer().clone()).collect();
        debug_assert!(coords.iter().all(|c| c.denom().is_one()));
        for s in 0..n {
            let mut v = vec![Int::zero(); dim * n];
            v[s * dim..(s + 1) * dim].clone_from_slice(&icoords);
            generators.push(v);
        }
    }
    Lattice::from_integer_generators(format!("Lambda^3_{n} H"), dim * n, ring, generators)
}

/// Flatten a tuple of trivectors into `Lambda^3_n H` coordinates.
pub fn tuple_coords(space: SymplecticSpace, tuple: &[TensorElement]) -> Vec<Rat> {
    let words = trivector_words(space);
    let mut out = Vec::with_capacity(words.len() * tuple.len());
    for t in tuple {
        assert_eq!(t.degree(), 3);
        assert_eq!(t.symmetry(), Symmetry::Alternating);
        out.extend(t.to_coords(&words));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};

    fn sp(g: usize) -> SymplecticSpace {
        SymplecticSpace::new(g).unwrap()
    }

    #[test]
    fn ring_units() {
        let z = CoefficientRing::integers();
        assert!(z.is_unit(&Int::one()));
        assert!(!z.is_unit(&Int::from(2)));
        let z2 = CoefficientRing::local_at(&[2]);
        assert!(z2.is_unit(&Int::from(3)));
        assert!(!z2.is_unit(&Int::from(6)));
        assert!(z2.contains_rat(&rat(1, 3)));
        assert!(!z2.contains_rat(&rat(1, 2)));
        let inv2 = CoefficientRing::inverting(&[2]);
        assert!(inv2.is_unit(&Int::from(4)));
        assert!(!inv2.is_unit(&Int::from(3)));
        assert_eq!(z2.describe(), "Z_(2)");
    }

    #[test]
    fn half_wedge_not_in_z2_lattice() {
        // (1/2) a1^a2^a3 with only 2 non-invertible: false
        let h = sp(3);
        let lat = lambda3_lattice(h, CoefficientRing::local_at(&[2]));
        let x = TensorElement::basis_wedge(h, &[0, 1, 2], 0).scale(&rat(1, 2));
        let coords = x.to_coords(&trivector_words(h));
        assert!(!lat.contains(&coords).unwrap());
        // but true when 2 is inverted
        let lat2 = lambda3_lattice(h, CoefficientRing::inverting(&[2]));
        assert!(lat2.contains(&coords).unwrap());
    }

    #[test]
    fn theta_wedge_is_integral() {
        let h = sp(3);
        let lat = lambda3_lattice(h, CoefficientRing::integers());
        let x = TensorElement::basis_wedge(h, &[0], 1)
            .theta_wedge()
            .unwrap();
        let coords = x.to_coords(&trivector_words(h));
        assert!(lat.contains(&coords).unwrap());
    }

    #[test]
    fn split_lift_fails_at_two() {
        // the c-free lift of the class of a1^b1^a2 has denominator
        // g - 1 = 2 and is not integral at 2
        let h = sp(3);
        let lat = lambda3_lattice(h, CoefficientRing::local_at(&[2]));
        let x = TensorElement::basis_wedge(h, &[0, 3, 1], 0);
        let lift = x.split_lambda3().unwrap();
        let coords = lift.to_coords(&trivector_words(h));
        assert!(!lat.contains(&coords).unwrap());
        // over Z[1/2] it becomes integral
        let lat2 = lambda3_lattice(h, CoefficientRing::inverting(&[2]));
        assert!(lat2.contains(&coords).unwrap());
    }

    #[test]
    fn ambient_mismatch_detected() {
        let h = sp(2);
        let lat = lambda3_lattice(h, CoefficientRing::integers());
        assert!(lat.contains(&[rint(1)]).is_err());
    }

    #[test]
    fn tuple_lattice_rank() {
        let h = sp(3);
        // rank of Lambda^3_n: dim Lambda^3_0 + n * 2g
        for n in 1..=3usize {
            let lat = lambda3n_lattice(h, n, CoefficientRing::integers());
            assert_eq!(lat.rank(), 14 + n * 6);
        }
    }
}
