//! Sparse exact tensors over `H`: elements of `H^{(x)d}(t)` with plain or
//! alternating symmetry, theta-contractions, wedge calculus, the canonical
//! splittings of the exterior-power sequences, and the primitive part.
//!
//! Alternating elements are stored on strictly increasing letter words; the
//! wedge of basis letters is the sorted word times the sign of the sorting
//! permutation. Tate twists are bookkeeping integers; the motivic weight of
//! a degree-`d` twist-`t` element is `-d - 2t`.

use crate::scalar::{format_rat, parse_rat, rint, Rat};
use crate::symplectic::SymplecticSpace;
use crate::word::{self, Word};
use num::{One, Zero};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    None,
    Alternating,
}

#[derive(Debug, Error, PartialEq)]
pub enum TensorError {
    #[error("contraction indices must satisfy 1 <= i < j <= {degree}, got ({i}, {j})")]
    ContractionIndex { i: usize, j: usize, degree: usize },
    #[error("expected {expected:?} symmetry, got {got:?}")]
    Symmetry { expected: Symmetry, got: Symmetry },
    #[error("expected degree {expected}, got {got}")]
    Degree { expected: usize, got: usize },
    #[error("operands disagree: {0}")]
    Shape(String),
    #[error("splitting requires g >= 2 (division by g - 1)")]
    GenusTooSmallForSplit,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Debug)]
pub struct TensorElement {
    space: SymplecticSpace,
    degree: usize,
    twist: i64,
    symmetry: Symmetry,
    coeffs: HashMap<Word, Rat>,
}

impl TensorElement {
    pub fn zero(space: SymplecticSpace, degree: usize, twist: i64, symmetry: Symmetry) -> Self {
        TensorElement {
            space,
            degree,
            twist,
            symmetry,
            coeffs: HashMap::new(),
        }
    }

    /// Basis tensor `l_1 (x) ... (x) l_d`.
    pub fn basis_tensor(space: SymplecticSpace, letters: &[u8], twist: i64) -> Self {
        let mut t = TensorElement::zero(space, letters.len(), twist, Symmetry::None);
        t.add_term(word::pack(letters), Rat::one());
        t
    }

    /// Basis wedge `l_1 ^ ... ^ l_d` (zero if a letter repeats).
    pub fn basis_wedge(space: SymplecticSpace, letters: &[u8], twist: i64) -> Self {
        let mut t = TensorElement::zero(space, letters.len(), twist, Symmetry::Alternating);
        if let Some((w, sign)) = word::sort_signed(letters) {
            t.add_term(w, rint(sign));
        }
        t
    }

    /// The dual form `theta_check = sum_i a_i ^ b_i`, an element of
    /// `Lambda^2 H(-1)`.
    pub fn theta_check(space: SymplecticSpace) -> Self {
        let g = space.genus() as u8;
        let mut t = TensorElement::zero(space, 2, -1, Symmetry::Alternating);
        for i in 0..g {
            t.add_term(word::pack(&[i, i + g]), Rat::one());
        }
        t
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn motivic_weight(&self) -> i64 {
        -(self.degree as i64) - 2 * self.twist
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: Word) -> Rat {
        self.coeffs.get(&w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        if self.symmetry == Symmetry::Alternating {
            debug_assert!(
                {
                    let ls = word::unpack(w, self.degree);
                    ls.windows(2).all(|p| p[0] < p[1])
                },
                "alternating terms must be stored on strictly increasing words"
            );
        }
        use std::collections::hash_map::Entry;
        match self.coeffs.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), TensorError> {
        if self.space != other.space
            || self.degree != other.degree
            || self.twist != other.twist
            || self.symmetry != other.symmetry
        {
            return Err(TensorError::Shape(format!(
                "(g={}, d={}, t={}, {:?}) vs (g={}, d={}, t={}, {:?})",
                self.space.genus(),
                self.degree,
                self.twist,
                self.symmetry,
                other.space.genus(),
                other.degree,
                other.twist,
                other.symmetry
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(*w, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return TensorElement::zero(self.space, self.degree, self.twist, self.symmetry);
        }
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v *= c;
        }
        out
    }

    /// Replace the twist tag (pure bookkeeping).
    pub fn with_twist(&self, twist: i64) -> Self {
        let mut out = self.clone();
        out.twist = twist;
        out
    }

    /// Contraction `theta_ij` on plain tensors: pairs positions `i < j`
    /// (1-based) through the form and drops them, raising the twist.
    pub fn contract_theta(&self, i: usize, j: usize) -> Result<Self, TensorError> {
        if self.symmetry != Symmetry::None {
            return Err(TensorError::Symmetry {
                expected: Symmetry::None,
                got: self.symmetry,
            });
        }
        if !(1 <= i && i < j && j <= self.degree) {
            return Err(TensorError::ContractionIndex {
                i,
                j,
                degree: self.degree,
            });
        }
        let mut out =
            TensorElement::zero(self.space, self.degree - 2, self.twist + 1, Symmetry::None);
        for (w, c) in &self.coeffs {
            let x = word::letter(*w, i - 1);
            let y = word::letter(*w, j - 1);
            let th = self.space.theta(x, y);
            if th != 0 {
                out.add_term(
                    word::remove_two(*w, self.degree, i - 1, j - 1),
                    c * rint(th),
                );
            }
        }
        Ok(out)
    }

    /// `c : x^y^z -> theta(x,y)z + theta(y,z)x + theta(z,x)y`, from
    /// `Lambda^3 H` to `H(1)` (twist raised by one).
    pub fn c_contract(&self) -> Result<Self, TensorError> {
        if self.symmetry != Symmetry::Alternating {
            return Err(TensorError::Symmetry {
                expected: Symmetry::Alternating,
                got: self.symmetry,
            });
        }
        if self.degree != 3 {
            return Err(TensorError::Degree {
                expected: 3,
                got: self.degree,
            });
        }
        let mut out = TensorElement::zero(self.space, 1, self.twist + 1, Symmetry::Alternating);
        for (w, coeff) in &self.coeffs {
            let x = word::letter(*w, 0);
            let y = word::letter(*w, 1);
            let z = word::letter(*w, 2);
            for (s, t, rest) in [(x, y, z), (y, z, x), (z, x, y)] {
                let th = self.space.theta(s, t);
                if th != 0 {
                    out.add_term(word::pack(&[rest]), coeff * rint(th));
                }
            }
        }
        Ok(out)
    }

    /// `theta` applied to an element of `Lambda^2 H`: the scalar coordinate
    /// in `Q(1)` relative to the generator picked by the form.
    pub fn theta_scalar(&self) -> Result<Rat, TensorError> {
        if self.symmetry != Symmetry::Alternating {
            return Err(TensorError::Symmetry {
                expected: Symmetry::Alternating,
                got: self.symmetry,
            });
        }
        if self.degree != 2 {
            return Err(TensorError::Degree {
                expected: 2,
                got: self.degree,
            });
        }
        let mut s = Rat::zero();
        for (w, c) in &self.coeffs {
            let th = self.space.theta(word::letter(*w, 0), word::letter(*w, 1));
            if th != 0 {
                s += c * rint(th);
            }
        }
        Ok(s)
    }

    /// Wedge of two alternating elements. Twists add.
    pub fn wedge(&self, other: &Self) -> Result<Self, TensorError> {
        for t in [self, other] {
            if t.symmetry != Symmetry::Alternating {
                return Err(TensorError::Symmetry {
                    expected: Symmetry::Alternating,
                    got: t.symmetry,
                });
            }
        }
        if self.space != other.space {
            return Err(TensorError::Shape("different spaces".into()));
        }
        let d = self.degree + other.degree;
        let mut out = TensorElement::zero(
            self.space,
            d,
            self.twist + other.twist,
            Symmetry::Alternating,
        );
        for (w1, c1) in &self.coeffs {
            let mut letters = word::unpack(*w1, self.degree);
            for (w2, c2) in &other.coeffs {
                letters.truncate(self.degree);
                letters.extend(word::unpack(*w2, other.degree));
                if let Some((w, sign)) = word::sort_signed(&letters) {
                    out.add_term(w, c1 * c2 * rint(sign));
                }
            }
        }
        Ok(out)
    }

    /// `theta_check ^ x` for `x` alternating.
    pub fn theta_wedge(&self) -> Result<Self, TensorError> {
        TensorElement::theta_check(self.space).wedge(self)
    }

    /// Canonical splitting of `Lambda^2 H = Q(1) + Lambda^2_0 H`:
    /// returns `(theta(x)/g, x - (theta(x)/g) theta_check)`.
    pub fn split_lambda2(&self) -> Result<(Rat, Self), TensorError> {
        let s = self.theta_scalar()? / rint(self.space.genus() as i64);
        let e = self.sub(
            &TensorElement::theta_check(self.space)
                .with_twist(self.twist)
                .scale(&s),
        )?;
        Ok((s, e))
    }

    /// Canonical splitting of `Lambda^3 H(-1) = H + Lambda^3_0 H` applied to
    /// a lift `u`: returns `u - theta_check ^ (c(u) / (g-1))`, the unique
    /// equivariant lift with vanishing `c`-component. Requires `g >= 2`.
    pub fn split_lambda3(&self) -> Result<Self, TensorError> {
        let g = self.space.genus();
        if g < 2 {
            return Err(TensorError::GenusTooSmallForSplit);
        }
        let c = self.c_contract()?;
        let corr = c
            .scale(&crate::scalar::rat(1, g as i64 - 1))
            .theta_wedge()?;
        self.sub(&corr)
    }

    /// Substitute letters along an integer matrix `m` (columns are images
    /// of the basis letters), i.e. the action of `Sp(2g, Z)` or any integer
    /// endomorphism.
    pub fn apply_matrix(&self, m: &[Vec<i64>]) -> Self {
        let n = self.space.rank();
        assert_eq!(m.len(), n);
        let mut out = TensorElement::zero(self.space, self.degree, self.twist, self.symmetry);
        let columns: Vec<Vec<(u8, i64)>> = (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&i| m[i][j] != 0)
                    .map(|i| (i as u8, m[i][j]))
                    .collect()
            })
            .collect();
        for (w, c) in &self.coeffs {
            let letters = word::unpack(*w, self.degree);
            let mut stack: Vec<(Vec<u8>, i64)> = vec![(Vec::new(), 1)];
            for &l in &letters {
                let mut next = Vec::with_capacity(stack.len() * columns[l as usize].len());
                for (prefix, coeff) in &stack {
                    for &(i, v) in &columns[l as usize] {
                        let mut p = prefix.clone();
                        p.push(i);
                        next.push((p, coeff * v));
                    }
                }
                stack = next;
            }
            for (ls, coeff) in stack {
                match self.symmetry {
                    Symmetry::None => out.add_term(word::pack(&ls), c * rint(coeff)),
                    Symmetry::Alternating => {
                        if let Some((w2, sign)) = word::sort_signed(&ls) {
                            out.add_term(w2, c * rint(coeff * sign));
                        }
                    }
                }
            }
        }
        out
    }

    /// Coordinates with respect to an ordered list of basis words.
    pub fn to_coords(&self, basis: &[Word]) -> Vec<Rat> {
        let index: HashMap<Word, usize> = basis.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let mut v = vec![Rat::zero(); basis.len()];
        for (w, c) in &self.coeffs {
            let i = index
                .get(w)
                .unwrap_or_else(|| panic!("word not in the given basis"));
            v[*i] = c.clone();
        }
        v
    }

    pub fn from_coords(
        space: SymplecticSpace,
        degree: usize,
        twist: i64,
        symmetry: Symmetry,
        basis: &[Word],
        coords: &[Rat],
    ) -> Self {
        let mut t = TensorElement::zero(space, degree, twist, symmetry);
        for (w, c) in basis.iter().zip(coords) {
            t.add_term(*w, c.clone());
        }
        t
    }

    /// Canonical text form: `coeff * a1^b2(twist)` terms joined by ` + `,
    /// `1` for the empty word, terms sorted by word.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return format!("0({})", self.twist);
        }
        let mut terms: Vec<(&Word, &Rat)> = self.coeffs.iter().collect();
        terms.sort_by_key(|(w, _)| **w);
        terms
            .iter()
            .map(|(w, c)| {
                let name = if self.degree == 0 {
                    "1".to_string()
                } else {
                    word::unpack(**w, self.degree)
                        .iter()
                        .map(|l| self.space.letter_name(*l))
                        .collect::<Vec<_>>()
                        .join("^")
                };
                format!("{} * {}({})", format_rat(c), name, self.twist)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn parse(space: SymplecticSpace, symmetry: Symmetry, s: &str) -> Result<Self, TensorError> {
        let bad = |m: &str| TensorError::Parse(m.to_string());
        let mut element: Option<TensorElement> = None;
        for term in s.split(" + ") {
            let term = term.trim();
            if term.is_empty() {
                continue;
            }
            if let Some(rest) = term.strip_prefix("0(") {
                let twist: i64 = rest
                    .strip_suffix(')')
                    .ok_or_else(|| bad("missing )"))?
                    .parse()
                    .map_err(|_| bad("bad twist"))?;
                element.get_or_insert_with(|| TensorElement::zero(space, 0, twist, symmetry));
                continue;
            }
            let (coeff_s, rest) = term.split_once('*').ok_or_else(|| bad("missing *"))?;
            let coeff = parse_rat(coeff_s).ok_or_else(|| bad("bad coefficient"))?;
            let rest = rest.trim();
            let open = rest.rfind('(').ok_or_else(|| bad("missing ("))?;
            let twist: i64 = rest[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| bad("missing )"))?
                .parse()
                .map_err(|_| bad("bad twist"))?;
            let word_s = &rest[..open];
            let letters: Vec<u8> = if word_s == "1" {
                Vec::new()
            } else {
                word_s
                    .split('^')
                    .map(|l| space.parse_letter(l).ok_or_else(|| bad("bad letter")))
                    .collect::<Result<_, _>>()?
            };
            let el = element
                .get_or_insert_with(|| TensorElement::zero(space, letters.len(), twist, symmetry));
            if letters.len() != el.degree || twist != el.twist {
                return Err(bad("mixed degrees or twists"));
            }
            match symmetry {
                Symmetry::None => el.add_term(word::pack(&letters), coeff),
                Symmetry::Alternating => {
                    if let Some((w, sign)) = word::sort_signed(&letters) {
                        el.add_term(w, coeff * rint(sign));
                    }
                }
            }
        }
        element.ok_or_else(|| bad("empty input"))
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self.degree == other.degree
            && self.twist == other.twist
            && self.symmetry == other.symmetry
            && self.coeffs == other.coeffs
    }
}

/// All strictly increasing words of length `d` over `0..n`, in lex order.
pub fn sorted_words(n: usize, d: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(d);
    fn rec(n: usize, d: usize, start: usize, current: &mut Vec<u8>, out: &mut Vec<Word>) {
        if current.len() == d {
            out.push(word::pack(current));
            return;
        }
        for l in start..n {
            current.push(l as u8);
            rec(n, d, l + 1, current, out);
            current.pop();
        }
    }
    rec(n, d, 0, &mut current, &mut out);
    out
}

/// All words of length `d` over `0..n`, in lex order.
pub fn all_words(n: usize, d: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut current = vec![0u8; d];
    fn rec(n: usize, d: usize, pos: usize, current: &mut Vec<u8>, out: &mut Vec<Word>) {
        if pos == d {
            out.push(word::pack(current));
            return;
        }
        for l in 0..n {
            current[pos] = l as u8;
            rec(n, d, pos + 1, current, out);
        }
    }
    rec(n, d, 0, &mut current, &mut out);
    out
}

/// A deterministic basis of `Lambda^3_0 H` realized as the c-free split
/// lifts inside `Lambda^3 H`: split lifts of the sorted trivector words,
/// kept when independent.
pub fn lambda30_basis(space: SymplecticSpace) -> Vec<TensorElement> {
    let words = sorted_words(space.rank(), 3);
    let mut ech = crate::matrix::IntEchelon::new(words.len());
    let mut basis = Vec::new();
    for w in &words {
        let lift = TensorElement::basis_wedge(space, &word::unpack(*w, 3), 0)
            .split_lambda3()
            .expect("g >= 2");
        if lift.is_zero() {
            continue;
        }
        let coords = lift.to_coords(&words);
        if ech.insert(crate::scalar::clear_denominators(&coords)) {
            basis.push(lift);
        }
    }
    basis
}

/// Exact basis of the primitive part `H^(d)`: the joint kernel of all
/// contractions `theta_ij` inside `H^{(x)d}`, computed by rational
/// nullspace. Degree 0 and 1 are the whole space.
pub fn primitive_part(space: SymplecticSpace, d: usize) -> Vec<TensorElement> {
    let n = space.rank();
    let words = all_words(n, d);
    if d < 2 {
        return words
            .iter()
            .map(|w| {
                let mut t = TensorElement::zero(space, d, 0, Symmetry::None);
                t.add_term(*w, Rat::one());
                t
            })
            .collect();
    }
    let index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let small = all_words(n, d - 2);
    let small_index: HashMap<Word, usize> =
        small.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for i in 1..=d {
        for j in (i + 1)..=d {
            let mut block = vec![vec![Rat::zero(); words.len()]; small.len()];
            for (w, &col) in &index {
                let x = word::letter(*w, i - 1);
                let y = word::letter(*w, j - 1);
                let th = space.theta(x, y);
                if th != 0 {
                    let target = word::remove_two(*w, d, i - 1, j - 1);
                    block[small_index[&target]][col] = rint(th);
                }
            }
            rows.extend(block);
        }
    }
    let mat = crate::matrix::QMat::from_rows(rows);
    mat.kernel_basis()
        .into_iter()
        .map(|v| TensorElement::from_coords(space, d, 0, Symmetry::None, &words, &v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn sp(g: usize) -> SymplecticSpace {
        SymplecticSpace::new(g).unwrap()
    }

    fn a(space: SymplecticSpace, i: u8) -> u8 {
        let _ = space;
        i - 1
    }

    fn b(space: SymplecticSpace, i: u8) -> u8 {
        space.genus() as u8 + i - 1
    }

    #[test]
    fn contraction_examples() {
        let h = sp(2);
        // theta_12(a1 (x) b1) = 1 * empty word, twist +1
        let t = TensorElement::basis_tensor(h, &[a(h, 1), b(h, 1)], 0);
        let c = t.contract_theta(1, 2).unwrap();
        assert_eq!(c.degree(), 0);
        assert_eq!(c.twist(), 1);
        assert_eq!(c.coeff(word::pack(&[])), Rat::one());
        // theta_12(a1 (x) a2) = 0
        let t = TensorElement::basis_tensor(h, &[a(h, 1), a(h, 2)], 0);
        assert!(t.contract_theta(1, 2).unwrap().is_zero());
        // index errors
        assert!(t.contract_theta(2, 2).is_err());
        assert!(t.contract_theta(1, 3).is_err());
    }

    #[test]
    fn contraction_three_slots() {
        let h = sp(2);
        // theta_13(a1 (x) a2 (x) b1) = 1 * a2
        let t = TensorElement::basis_tensor(h, &[a(h, 1), a(h, 2), b(h, 1)], 0);
        let c = t.contract_theta(1, 3).unwrap();
        let expect = TensorElement::basis_tensor(h, &[a(h, 2)], 1);
        assert_eq!(c, expect);
    }

    #[test]
    fn disjoint_contractions_commute() {
        // theta_ij then theta_kl equals theta_kl then theta_ij for every
        // disjoint pair, with the indices reindexed by the removals
        use crate::sp_group::SeededRng;
        let h = sp(2);
        let mut rng = SeededRng::new(7);
        // position of `p` after removing positions `q < r` (all 1-based)
        let shift = |p: usize, q: usize, r: usize| p - usize::from(q < p) - usize::from(r < p);
        for d in [4usize, 5] {
            for _ in 0..6 {
                let mut t = TensorElement::zero(h, d, 0, Symmetry::None);
                for _ in 0..10 {
                    let ls: Vec<u8> = (0..d).map(|_| rng.below(4) as u8).collect();
                    t.add_term(word::pack(&ls), rint(rng.int_in(-3, 3)));
                }
                for i in 1..=d {
                    for j in (i + 1)..=d {
                        for k in 1..=d {
                            for l in (k + 1)..=d {
                                if k == i || k == j || l == i || l == j {
                                    continue;
                                }
                                let one = t
                                    .contract_theta(i, j)
                                    .unwrap()
                                    .contract_theta(shift(k, i, j), shift(l, i, j))
                                    .unwrap();
                                let two = t
                                    .contract_theta(k, l)
                                    .unwrap()
                                    .contract_theta(shift(i, k, l), shift(j, k, l))
                                    .unwrap();
                                assert_eq!(one, two, "d={d} ({i},{j}) vs ({k},{l})");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn c_contract_examples() {
        let h = sp(3);
        // c(a1^a2^a3) = 0
        let t = TensorElement::basis_wedge(h, &[a(h, 1), a(h, 2), a(h, 3)], 0);
        assert!(t.c_contract().unwrap().is_zero());
        // c(a1^b1^a2) = a2
        let t = TensorElement::basis_wedge(h, &[a(h, 1), b(h, 1), a(h, 2)], 0);
        let c = t.c_contract().unwrap();
        assert_eq!(c, TensorElement::basis_wedge(h, &[a(h, 2)], 1));
        // errors on wrong shape
        let plain = TensorElement::basis_tensor(h, &[0, 1, 2], 0);
        assert!(plain.c_contract().is_err());
        let deg2 = TensorElement::basis_wedge(h, &[0, 1], 0);
        assert!(deg2.c_contract().is_err());
    }

    #[test]
    fn c_after_theta_wedge_is_g_minus_one() {
        for g in 2..=6 {
            let h = sp(g);
            for l in h.letters() {
                let x = TensorElement::basis_wedge(h, &[l], 0);
                let c = x.theta_wedge().unwrap().c_contract().unwrap();
                assert_eq!(c, x.scale(&rint(g as i64 - 1)).with_twist(0));
            }
        }
    }

    #[test]
    fn split_lambda2_examples() {
        let h = sp(3);
        // theta_check -> (1, 0)
        let (s, e) = TensorElement::theta_check(h).split_lambda2().unwrap();
        assert_eq!(s, Rat::one());
        assert!(e.is_zero());
        // a1^a2 -> (0, a1^a2)
        let x = TensorElement::basis_wedge(h, &[a(h, 1), a(h, 2)], 0);
        let (s, e) = x.split_lambda2().unwrap();
        assert!(s.is_zero());
        assert_eq!(e, x);
        // a1^b1 -> (1/3, a1^b1 - theta_check/3)
        let x = TensorElement::basis_wedge(h, &[a(h, 1), b(h, 1)], 0);
        let (s, e) = x.split_lambda2().unwrap();
        assert_eq!(s, rat(1, 3));
        let expect = x
            .sub(
                &TensorElement::theta_check(h)
                    .with_twist(0)
                    .scale(&rat(1, 3)),
            )
            .unwrap();
        assert_eq!(e, expect);
        // reassembly is the identity
        let back = TensorElement::theta_check(h)
            .with_twist(0)
            .scale(&s)
            .add(&e)
            .unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn split_lambda3_examples() {
        let h = sp(3);
        // a1^a2^a3 is already c-free
        let x = TensorElement::basis_wedge(h, &[a(h, 1), a(h, 2), a(h, 3)], 0);
        assert_eq!(x.split_lambda3().unwrap(), x);
        // a1^b1^a2 -> a1^b1^a2 - (1/2) theta_check^a2
        let x = TensorElement::basis_wedge(h, &[a(h, 1), b(h, 1), a(h, 2)], 0);
        let s = x.split_lambda3().unwrap();
        let corr = TensorElement::basis_wedge(h, &[a(h, 2)], 0)
            .theta_wedge()
            .unwrap()
            .with_twist(0)
            .scale(&rat(1, 2));
        assert_eq!(s, x.sub(&corr).unwrap());
        // on theta_check ^ x the splitting gives zero
        for l in h.letters() {
            let w = TensorElement::basis_wedge(h, &[l], 1)
                .theta_wedge()
                .unwrap();
            assert!(w.split_lambda3().unwrap().is_zero());
        }
        // the result is always c-free
        assert!(s.c_contract().unwrap().is_zero());
        // g = 1 fails
        let h1 = sp(1);
        let y = TensorElement::basis_wedge(h1, &[0], 0)
            .theta_wedge()
            .unwrap();
        assert_eq!(y.split_lambda3(), Err(TensorError::GenusTooSmallForSplit));
    }

    #[test]
    fn lambda30_dimension() {
        // dim Lambda^3_0 H = C(2g,3) - 2g; zero at g = 2
        for g in 2..=4usize {
            let h = sp(g);
            let words = sorted_words(2 * g, 3);
            let mut ech = crate::matrix::IntEchelon::new(words.len());
            for w in &words {
                let t = TensorElement::basis_wedge(h, &word::unpack(*w, 3), 0);
                let s = t.split_lambda3().unwrap();
                let coords = s.to_coords(&words);
                ech.insert(crate::scalar::clear_denominators(&coords));
            }
            let n = 2 * g;
            let expect = n * (n - 1) * (n - 2) / 6 - n;
            assert_eq!(ech.rank(), expect);
        }
    }

    #[test]
    fn primitive_part_dimensions() {
        let h = sp(3);
        assert_eq!(primitive_part(h, 0).len(), 1);
        assert_eq!(primitive_part(h, 1).len(), 6);
        // degree 2: alternating primitives have dim 2g^2 - g - 1 = 14,
        // symmetric primitives dim 2g^2 + g = 21
        let prim = primitive_part(h, 2);
        assert_eq!(prim.len(), 35);
        // intersect with the antisymmetric subspace
        let words = all_words(6, 2);
        let mut rows = Vec::new();
        for p in &prim {
            // antisymmetrize: p - swap(p); p is primitive iff swap(p) is, so
            // the alternating projection of the kernel has the right rank
            let mut v = vec![Rat::zero(); words.len()];
            for (w, c) in p.terms() {
                let x = word::letter(*w, 0);
                let y = word::letter(*w, 1);
                let i = words.iter().position(|u| *u == *w).unwrap();
                let j = words
                    .iter()
                    .position(|u| *u == word::pack(&[y, x]))
                    .unwrap();
                v[i] += c;
                v[j] -= c;
            }
            rows.push(v);
        }
        let rank = crate::matrix::QMat::from_rows(rows).rank();
        assert_eq!(rank, 14);
    }

    #[test]
    fn text_roundtrip() {
        let h = sp(2);
        let x = TensorElement::basis_wedge(h, &[b(h, 1), a(h, 1), a(h, 2)], -1).scale(&rat(-3, 2));
        let s = x.to_text();
        assert_eq!(s, "-3/2 * a1^a2^b1(-1)");
        let y = TensorElement::parse(h, Symmetry::Alternating, &s).unwrap();
        assert_eq!(x, y);
        let zero = TensorElement::zero(h, 0, 2, Symmetry::None);
        assert_eq!(zero.to_text(), "0(2)");
    }

    #[test]
    fn motivic_weight_bookkeeping() {
        let h = sp(2);
        let t = TensorElement::basis_tensor(h, &[0, 1], -1);
        assert_eq!(t.motivic_weight(), 0);
        let c = t.contract_theta(1, 2).unwrap();
        assert_eq!(c.motivic_weight(), c.degree() as i64 * -1 - 2 * c.twist());
    }
}
