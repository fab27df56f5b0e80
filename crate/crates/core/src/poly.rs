//! Small multivariate polynomials over the rationals, enough for the
//! section-constraint systems (few variables, degree two).

use crate::scalar::{format_rat, Rat};
use num::{One, Zero};
use std::collections::BTreeMap;

/// Exponent vectors packed one nibble per variable (at most 16 variables,
/// exponents below 16 — far beyond what the constraint systems need).
pub type Monomial = u64;

pub fn mono_one() -> Monomial {
    0
}

pub fn mono_var(i: usize) -> Monomial {
    1u64 << (4 * i)
}

fn mono_exp(m: Monomial, i: usize) -> u32 {
    ((m >> (4 * i)) & 0xf) as u32
}

fn mono_mul(a: Monomial, b: Monomial) -> Monomial {
    // valid while exponents stay below 16, which add_assign asserts
    a + b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= 16);
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(mono_one(), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut p = Poly::zero(nvars);
        p.add_term(mono_var(i), Rat::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.nvars {
            debug_assert!(mono_exp(m, i) < 15, "exponent overflow");
        }
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mono_mul(*m1, *m2), c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, values: &[Rat]) -> Rat {
        assert_eq!(values.len(), self.nvars);
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in values.iter().enumerate() {
                for _ in 0..mono_exp(*m, i) {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute variable `i` by a polynomial.
    pub fn substitute(&self, i: usize, by: &Poly) -> Self {
        assert_eq!(self.nvars, by.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = mono_exp(*m, i);
            let rest = m - ((e as u64) << (4 * i));
            let mut term = Poly::constant(self.nvars, c.clone());
            for _ in 0..e {
                term = term.mul(by);
            }
            for (tm, tc) in &term.terms {
                out.add_term(mono_mul(*tm, rest), tc.clone());
            }
        }
        out
    }

    /// Scaled so the lex-least monomial has coefficient one; canonical
    /// representative for comparison up to nonzero scalars.
    pub fn normalized(&self) -> Self {
        match self.terms.iter().next() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Rat::one() / c;
                self.scale(&inv)
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn to_string_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            if !c.is_one() || *m == 0 {
                factors.push(format_rat(c));
            }
            for i in 0..self.nvars {
                let e = mono_exp(*m, i);
                match e {
                    0 => {}
                    1 => factors.push(name(i)),
                    _ => factors.push(format!("{}^{}", name(i), e)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};

    #[test]
    fn arithmetic() {
        let n = 3;
        let a = Poly::var(n, 0);
        let b = Poly::var(n, 1);
        // (a + b)^2 = a^2 + 2ab + b^2
        let sq = a.add(&b).mul(&a.add(&b));
        let expect = a.mul(&a).add(&a.mul(&b).scale(&rint(2))).add(&b.mul(&b));
        assert_eq!(sq, expect);
        assert_eq!(sq.eval(&[rint(1), rint(2), rint(0)]), rint(9));
    }

    #[test]
    fn substitution_eliminates() {
        // t := a in (a - t) gives 0; in (a^2 - t) gives a^2 - a
        let n = 2; // vars: a=0, t=1
        let a = Poly::var(n, 0);
        let t = Poly::var(n, 1);
        assert!(a.sub(&t).substitute(1, &a).is_zero());
        let p = a.mul(&a).sub(&t).substitute(1, &a);
        assert_eq!(p, a.mul(&a).sub(&a));
    }

    #[test]
    fn normalization() {
        let n = 1;
        let p = Poly::var(n, 0).scale(&rat(-3, 2));
        assert_eq!(p.normalized(), Poly::var(n, 0));
        assert_eq!(p.normalized().to_string_with(&|_| "a1".to_string()), "a1");
    }
}
