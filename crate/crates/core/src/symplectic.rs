//! The symplectic module `H` of rank `2g` with its standard basis
//! `a_1..a_g, b_1..b_g` and unimodular form `theta(a_i, b_j) = delta_ij`.

use thiserror::Error;

/// Largest genus the engine accepts. Everything is exact linear algebra
/// whose size explodes combinatorially; callers wanting more must raise the
/// bound consciously.
pub const MAX_GENUS: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("genus must satisfy 1 <= g <= {MAX_GENUS}, got {0}")]
    BadGenus(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    g: usize,
}

impl SymplecticSpace {
    pub fn new(g: usize) -> Result<Self, SpaceError> {
        if g == 0 || g > MAX_GENUS {
            return Err(SpaceError::BadGenus(g));
        }
        Ok(SymplecticSpace { g })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn rank(&self) -> usize {
        2 * self.g
    }

    /// Letters are indices `0..2g`: `a_i` is `i-1`, `b_i` is `g+i-1`.
    pub fn letters(&self) -> impl Iterator<Item = u8> {
        0..(2 * self.g as u8)
    }

    pub fn is_a(&self, letter: u8) -> bool {
        (letter as usize) < self.g
    }

    /// `theta(x, y)` on basis letters.
    pub fn theta(&self, x: u8, y: u8) -> i64 {
        let g = self.g as u8;
        if y == x + g {
            1
        } else if x == y + g {
            -1
        } else {
            0
        }
    }

    /// `2g x 2g` matrix of the form in the basis `a_1..a_g, b_1..b_g`.
    pub fn form_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.theta(i as u8, j as u8)).collect())
            .collect()
    }

    /// For letter `x`, the letter `y` with `theta(x, y) != 0`, and the value.
    pub fn pair_of(&self, x: u8) -> (u8, i64) {
        let g = self.g as u8;
        if x < g {
            (x + g, 1)
        } else {
            (x - g, -1)
        }
    }

    pub fn letter_name(&self, letter: u8) -> String {
        let g = self.g as u8;
        if letter < g {
            format!("a{}", letter + 1)
        } else {
            format!("b{}", letter - g + 1)
        }
    }

    pub fn parse_letter(&self, s: &str) -> Option<u8> {
        let (kind, idx) = s.split_at(1);
        let i: usize = idx.parse().ok()?;
        if i == 0 || i > self.g {
            return None;
        }
        match kind {
            "a" => Some((i - 1) as u8),
            "b" => Some((self.g + i - 1) as u8),
            _ => None,
        }
    }

    /// Torus weight of a letter: `+e_i` for `a_i`, `-e_i` for `b_i`.
    pub fn letter_weight(&self, letter: u8) -> Vec<i64> {
        let mut w = vec![0i64; self.g];
        if self.is_a(letter) {
            w[letter as usize] = 1;
        } else {
            w[letter as usize - self.g] = -1;
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_is_standard() {
        let h = SymplecticSpace::new(2).unwrap();
        assert_eq!(h.theta(0, 2), 1); // theta(a1, b1)
        assert_eq!(h.theta(2, 0), -1);
        assert_eq!(h.theta(0, 1), 0);
        assert_eq!(h.theta(0, 3), 0);
        let m = h.form_matrix();
        // antisymmetric and unimodular (block structure)
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m[i][j], -m[j][i]);
            }
        }
    }

    #[test]
    fn names_roundtrip() {
        let h = SymplecticSpace::new(3).unwrap();
        for l in h.letters() {
            assert_eq!(h.parse_letter(&h.letter_name(l)), Some(l));
        }
        assert_eq!(h.parse_letter("c1"), None);
        assert_eq!(h.parse_letter("a4"), None);
    }

    #[test]
    fn genus_bounds() {
        assert!(SymplecticSpace::new(0).is_err());
        assert!(SymplecticSpace::new(7).is_err());
        assert!(SymplecticSpace::new(6).is_ok());
    }
}
