//! Exact rational scalars and small parsing/formatting helpers.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(int(num), int(den))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Parse `p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().ok()?;
            let q: Int = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => {
            let p: Int = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// Format as `p` or `p/q`, matching `parse_rat`.
pub fn format_rat(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact conversion to i64; panics if out of range (used where values are
/// known small, e.g. character multiplicities).
pub fn rat_to_i64(r: &Rat) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    let n = r.numer();
    let digits = n.to_string();
    digits.parse::<i64>().ok()
}

/// Strip the gcd of an integer vector and normalize its first nonzero entry
/// to be positive. Returns false if the vector is zero.
pub fn make_primitive(v: &mut [Int]) -> bool {
    let mut g = Int::zero();
    for x in v.iter() {
        g = num::integer::gcd(g, x.abs());
    }
    if g.is_zero() {
        return false;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -(x.clone());
            }
        }
    }
    true
}

/// Clear denominators: returns the integer vector `d * v` for the least
/// common denominator `d`.
pub fn clear_denominators(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_roundtrip() {
        for s in ["3", "-7", "1/2", "-22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert!(parse_rat("1/0").is_none());
        assert_eq!(parse_rat("4/2").unwrap(), rint(2));
    }

    #[test]
    fn primitive_vectors() {
        let mut v = vec![int(-4), int(6), int(-2)];
        assert!(make_primitive(&mut v));
        assert_eq!(v, vec![int(2), int(-3), int(1)]);
        let mut z = vec![Int::zero()];
        assert!(!make_primitive(&mut z));
    }
}
