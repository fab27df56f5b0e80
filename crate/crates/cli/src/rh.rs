//! Genus of a prime-order branched quotient and the codimension of the
//! corresponding locus: `h - 1 = (g - 1)/p - (a/2)(1 - 1/p)` and
//! `codim = (3g - 3 + (3/2 - 1/(1 - 1/p)) a)(1 - 1/p)`.

use num::{One, Zero};
use torelli::scalar::{is_integer, rat_to_i64, rint, Rat};

#[derive(Debug, PartialEq)]
pub enum RhError {
    NotPrime(u32),
    GenusTooSmall(u32),
    /// geometrically impossible input: the quotient genus is not a
    /// nonnegative integer
    ImpossibleInput {
        h: Rat,
    },
}

impl std::fmt::Display for RhError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RhError::NotPrime(p) => write!(f, "{p} is not prime"),
            RhError::GenusTooSmall(g) => write!(f, "genus must be >= 2, got {g}"),
            RhError::ImpossibleInput { h } => write!(
                f,
                "rejected: quotient genus {} is not a nonnegative integer",
                torelli::scalar::format_rat(h)
            ),
        }
    }
}

#[derive(Debug, PartialEq)]
pub struct BranchedCover {
    pub g: u32,
    pub p: u32,
    pub branch_points: u32,
    pub quotient_genus: i64,
    pub codim: Rat,
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn branched_cover_genus(g: u32, p: u32, a: u32) -> Result<BranchedCover, RhError> {
    if !is_prime(p) {
        return Err(RhError::NotPrime(p));
    }
    if g < 2 {
        return Err(RhError::GenusTooSmall(g));
    }
    let (gq, pq, aq) = (rint(g as i64), rint(p as i64), rint(a as i64));
    let one = Rat::one();
    // h - 1 = (g-1)/p - (a/2)(1 - 1/p)
    let h = &one + (&gq - &one) / &pq - &aq / rint(2) * (&one - &one / &pq);
    if !is_integer(&h) || h < Rat::zero() {
        return Err(RhError::ImpossibleInput { h });
    }
    // codim = (3g - 3 + (3/2 - 1/(1 - 1/p)) a)(1 - 1/p)
    let one_minus = &one - &one / &pq;
    let codim = (rint(3) * &gq - rint(3)
        + (Rat::new(3.into(), 2.into()) - &one / &one_minus) * &aq)
        * &one_minus;
    Ok(BranchedCover {
        g,
        p,
        branch_points: a,
        quotient_genus: rat_to_i64(&h).expect("checked integral"),
        codim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use torelli::scalar::rat;

    #[test]
    fn hyperelliptic_case() {
        // g=2, p=2, a=6: quotient genus 0, codimension 0
        let r = branched_cover_genus(2, 2, 6).unwrap();
        assert_eq!(r.quotient_genus, 0);
        assert!(r.codim.is_zero());
    }

    #[test]
    fn unramified_triple_cover_bound() {
        // p = 3, a = 0: codim = 2g - 2 whenever h is integral
        for g in [4u32, 7, 10] {
            let r = branched_cover_genus(g, 3, 0).unwrap();
            assert_eq!(r.codim, rint(2 * g as i64 - 2), "g={g}");
        }
    }

    #[test]
    fn double_cover_with_eight_points() {
        let r = branched_cover_genus(3, 2, 8).unwrap();
        assert_eq!(r.quotient_genus, 0);
        assert_eq!(r.codim, rat(1, 1));
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            branched_cover_genus(3, 3, 0),
            Err(RhError::ImpossibleInput { .. })
        ));
        assert_eq!(branched_cover_genus(2, 4, 0), Err(RhError::NotPrime(4)));
        assert_eq!(
            branched_cover_genus(1, 2, 0),
            Err(RhError::GenusTooSmall(1))
        );
    }
}
