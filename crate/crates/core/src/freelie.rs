//! Free Lie algebras on an ordered alphabet, the Lyndon basis, and the
//! graded quotient by the ideal of the symplectic relation
//! `omega = sum_i [a_i, b_i]`.
//!
//! Lie elements are kept on their canonical tensor expansion (the embedding
//! `L(V) < T(V)` by commutators); Lyndon coordinates are recovered on
//! demand by leading-term reduction, which is exact and division-free since
//! the expansion of a Lyndon bracket is unitriangular against lex order.
//! Antisymmetry and Jacobi hold identically by construction.

use crate::character::{self, VirtualCharacter};
use crate::matrix::IntEchelon;
use crate::scalar::{rat_to_i64, Int, Rat};
use crate::symplectic::SymplecticSpace;
use crate::word::{self, Word};
use num::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LieError {
    #[error("letter {0} is outside the alphabet of size {1}")]
    BadLetter(u8, usize),
    #[error("degree {degree} with alphabet {m} exceeds the resource guard")]
    ResourceGuard { m: usize, degree: usize },
    #[error("non-integral multiplicity in a character that must be integral")]
    NonIntegralCharacter,
    #[error(
        "graded characters disagree at degree {0} between the explicit quotient and the recursion"
    )]
    RouteMismatch(usize),
    #[error(transparent)]
    Char(#[from] crate::character::CharError),
}

/// Hard limits for the exact quotient computation. Sizes explode
/// combinatorially; failures must be loud, not silent truncations.
pub fn labute_degree_guard(m: usize, degree: usize) -> Result<(), LieError> {
    let ok = match m {
        0..=4 => degree <= 8,
        5..=6 => degree <= 6,
        _ => degree <= 4,
    };
    if ok {
        Ok(())
    } else {
        Err(LieError::ResourceGuard { m, degree })
    }
}

// ---------------------------------------------------------------------------
// Lyndon words
// ---------------------------------------------------------------------------

/// All Lyndon words of length exactly `n` over `0..m`, lex ordered (Duval).
pub fn lyndon_words(m: usize, n: usize) -> Vec<Vec<u8>> {
    assert!(m >= 1 && n >= 1);
    let mut out = Vec::new();
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == n {
            out.push(w.clone());
        }
        // extend periodically to length n, then increment
        let period = w.len();
        while w.len() < n {
            let c = w[w.len() % period];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last as usize == m - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out
}

pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    for i in 1..w.len() {
        if w[..]
            >= w[i..]
                .iter()
                .chain(w[..i].iter())
                .copied()
                .collect::<Vec<_>>()[..]
        {
            return false;
        }
    }
    true
}

/// Witt count `(1/n) sum_{d|n} mu(d) m^{n/d}`.
pub fn witt_dimension(m: usize, n: usize) -> i64 {
    let mut s: i64 = 0;
    for d in 1..=n {
        if n % d == 0 {
            s += mobius(d) * (m as i64).pow((n / d) as u32);
        }
    }
    assert!(s % n as i64 == 0);
    s / n as i64
}

pub fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketTree {
    Leaf(u8),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn degree(&self) -> usize {
        match self {
            BracketTree::Leaf(_) => 1,
            BracketTree::Node(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn to_string_with(&self, name: &dyn Fn(u8) -> String) -> String {
        match self {
            BracketTree::Leaf(l) => name(*l),
            BracketTree::Node(l, r) => {
                format!("[{},{}]", l.to_string_with(name), r.to_string_with(name))
            }
        }
    }
}

/// Standard factorization: `w = u v` with `v` the longest proper Lyndon
/// suffix; the standard bracketing recurses on it.
pub fn standard_factorization(w: &[u8]) -> (Vec<u8>, Vec<u8>) {
    debug_assert!(w.len() >= 2 && is_lyndon(w));
    for i in 1..w.len() {
        if is_lyndon(&w[i..]) {
            return (w[..i].to_vec(), w[i..].to_vec());
        }
    }
    unreachable!("every Lyndon word of length >= 2 has a proper Lyndon suffix")
}

pub fn standard_bracketing(w: &[u8]) -> BracketTree {
    if w.len() == 1 {
        return BracketTree::Leaf(w[0]);
    }
    let (u, v) = standard_factorization(w);
    BracketTree::Node(
        Box::new(standard_bracketing(&u)),
        Box::new(standard_bracketing(&v)),
    )
}

/// A Lyndon basis bracket: the word together with its standard bracketing.
#[derive(Clone, Debug)]
pub struct HallElement {
    pub word: Vec<u8>,
    pub tree: BracketTree,
}

/// Ordered Lyndon basis of `L_n` over an alphabet of size `m`. The count
/// matches the Witt formula.
pub fn hall_basis(m: usize, n: usize) -> Vec<HallElement> {
    lyndon_words(m, n)
        .into_iter()
        .map(|w| HallElement {
            tree: standard_bracketing(&w),
            word: w,
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Lie elements on their tensor expansion
// ---------------------------------------------------------------------------

pub(crate) type Tensor = HashMap<Word, Rat>;

fn tensor_add(dst: &mut Tensor, src: &Tensor, factor: &Rat) {
    if factor.is_zero() {
        return;
    }
    for (w, c) in src {
        let e = dst.entry(*w).or_insert_with(Rat::zero);
        *e += c * factor;
        if e.is_zero() {
            dst.remove(w);
        }
    }
}

fn tensor_bracket(a: &Tensor, la: usize, b: &Tensor, lb: usize) -> Tensor {
    let mut out = Tensor::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let c = ca * cb;
            let ab = word::concat(*wa, la, *wb);
            let ba = word::concat(*wb, lb, *wa);
            let e = out.entry(ab).or_insert_with(Rat::zero);
            *e += &c;
            if e.is_zero() {
                out.remove(&ab);
            }
            let e = out.entry(ba).or_insert_with(Rat::zero);
            *e -= &c;
            if e.is_zero() {
                out.remove(&ba);
            }
        }
    }
    out
}

/// An exact-rational element of the free Lie algebra on `0..m`, graded by
/// bracket length.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement {
    m: usize,
    parts: BTreeMap<usize, Tensor>,
}

impl LieElement {
    pub fn zero(m: usize) -> Self {
        LieElement {
            m,
            parts: BTreeMap::new(),
        }
    }

    pub fn generator(m: usize, letter: u8) -> Result<Self, LieError> {
        if letter as usize >= m {
            return Err(LieError::BadLetter(letter, m));
        }
        let mut parts = BTreeMap::new();
        parts.insert(1, Tensor::from([(word::pack(&[letter]), Rat::one())]));
        Ok(LieElement { m, parts })
    }

    pub fn alphabet(&self) -> usize {
        self.m
    }

    /// Crate-internal: assemble from tensor parts the caller knows to lie
    /// in the Lie subspace (e.g. derivation images of Lie elements).
    pub(crate) fn from_tensor_parts(m: usize, parts: BTreeMap<usize, Tensor>) -> Self {
        let mut parts = parts;
        parts.retain(|_, t| !t.is_empty());
        LieElement { m, parts }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.keys().copied()
    }

    pub fn homogeneous_part(&self, degree: usize) -> Option<&Tensor> {
        self.parts.get(&degree)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        let mut out = self.clone();
        for (d, t) in &other.parts {
            let dst = out.parts.entry(*d).or_default();
            tensor_add(dst, t, &Rat::one());
            if dst.is_empty() {
                out.parts.remove(d);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LieElement::zero(self.m);
        }
        let mut out = self.clone();
        for t in out.parts.values_mut() {
            for v in t.values_mut() {
                *v *= c;
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn bracket(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        let mut out = LieElement::zero(self.m);
        for (da, ta) in &self.parts {
            for (db, tb) in &other.parts {
                let t = tensor_bracket(ta, *da, tb, *db);
                if !t.is_empty() {
                    let dst = out.parts.entry(da + db).or_default();
                    tensor_add(dst, &t, &Rat::one());
                    if dst.is_empty() {
                        out.parts.remove(&(da + db));
                    }
                }
            }
        }
        out
    }

    /// Letter substitution along an integer matrix (columns are images of
    /// the generators). The tensor expansion transforms verbatim, which is
    /// exactly the induced automorphism of the free Lie algebra.
    pub fn apply_matrix(&self, m: &[Vec<i64>]) -> Self {
        let n = self.m;
        assert_eq!(m.len(), n);
        let mut out_parts: BTreeMap<usize, Tensor> = BTreeMap::new();
        for (deg, tensor) in &self.parts {
            let out = out_parts.entry(*deg).or_default();
            for (&w, c) in tensor {
                let letters = word::unpack(w, *deg);
                let mut stack: Vec<(Word, Rat)> = vec![(0, c.clone())];
                for (pos, &l) in letters.iter().enumerate() {
                    let mut next = Vec::new();
                    for i in 0..n {
                        if m[i][l as usize] == 0 {
                            continue;
                        }
                        for (pw, pc) in &stack {
                            next.push((
                                word::set_letter(*pw, pos, i as u8),
                                pc * crate::scalar::rint(m[i][l as usize]),
                            ));
                        }
                    }
                    stack = next;
                }
                for (nw, nc) in stack {
                    let e = out.entry(nw).or_insert_with(Rat::zero);
                    *e += nc;
                    if e.is_zero() {
                        out.remove(&nw);
                    }
                }
            }
        }
        LieElement::from_tensor_parts(n, out_parts)
    }

    /// The canonical Lyndon-basis coordinates of the degree-`n` part, as
    /// `(word, coefficient)` pairs in lex order. Idempotent by
    /// construction: the result re-expands to exactly this element.
    pub fn lyndon_terms(&self, ctx: &mut LieContext, degree: usize) -> Vec<(Vec<u8>, Rat)> {
        let Some(tensor) = self.parts.get(&degree) else {
            return Vec::new();
        };
        let coords = ctx.to_lyndon(tensor, degree);
        let mut out: Vec<(Vec<u8>, Rat)> = coords
            .into_iter()
            .map(|(w, c)| (word::unpack(w, degree), c))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// Shared caches for one alphabet: Lyndon words per degree and the tensor
/// expansions of their standard bracketings.
pub struct LieContext {
    pub m: usize,
    lyndon: HashMap<usize, Vec<Word>>,
    rho: HashMap<(Word, usize), Tensor>,
}

impl LieContext {
    pub fn new(m: usize) -> Self {
        LieContext {
            m,
            lyndon: HashMap::new(),
            rho: HashMap::new(),
        }
    }

    pub fn lyndon_packed(&mut self, degree: usize) -> &[Word] {
        self.lyndon.entry(degree).or_insert_with(|| {
            lyndon_words(self.m, degree)
                .iter()
                .map(|w| word::pack(w))
                .collect()
        })
    }

    /// Tensor expansion of the standard bracketing of a Lyndon word.
    pub fn rho(&mut self, w: Word, degree: usize) -> Tensor {
        if let Some(t) = self.rho.get(&(w, degree)) {
            return t.clone();
        }
        let t = if degree == 1 {
            Tensor::from([(w, Rat::one())])
        } else {
            let letters = word::unpack(w, degree);
            let (u, v) = standard_factorization(&letters);
            let tu = self.rho(word::pack(&u), u.len());
            let tv = self.rho(word::pack(&v), v.len());
            tensor_bracket(&tu, u.len(), &tv, v.len())
        };
        self.rho.insert((w, degree), t.clone());
        t
    }

    /// Lyndon coordinates by leading-term reduction: the lex-least word of
    /// a homogeneous Lie element is a Lyndon word with coefficient equal to
    /// its basis coefficient.
    pub fn to_lyndon(&mut self, tensor: &Tensor, degree: usize) -> HashMap<Word, Rat> {
        let mut rest = tensor.clone();
        let mut coords = HashMap::new();
        while !rest.is_empty() {
            let lead = *rest.keys().min().unwrap();
            let coeff = rest[&lead].clone();
            let letters = word::unpack(lead, degree);
            assert!(
                is_lyndon(&letters),
                "leading word is not Lyndon: element is not in the Lie subspace"
            );
            let rho = self.rho(lead, degree);
            tensor_add(&mut rest, &rho, &-coeff.clone());
            debug_assert!(!rest.contains_key(&lead));
            coords.insert(lead, coeff);
        }
        coords
    }
}

/// Expand an arbitrary bracket tree into the canonical Lyndon expansion.
pub fn normalize(m: usize, tree: &BracketTree) -> Result<LieElement, LieError> {
    match tree {
        BracketTree::Leaf(l) => LieElement::generator(m, *l),
        BracketTree::Node(a, b) => {
            let ea = normalize(m, a)?;
            let eb = normalize(m, b)?;
            Ok(ea.bracket(&eb))
        }
    }
}

// ---------------------------------------------------------------------------
// The symplectic relation and its ideal
// ---------------------------------------------------------------------------

/// `omega = sum_i [a_i, b_i]`, the image of the dual form in `L_2(H)`.
pub fn omega(space: SymplecticSpace) -> LieElement {
    let g = space.genus() as u8;
    let m = space.rank();
    let mut acc = LieElement::zero(m);
    for i in 0..g {
        let a = LieElement::generator(m, i).unwrap();
        let b = LieElement::generator(m, i + g).unwrap();
        acc = acc.add(&a.bracket(&b));
    }
    acc
}

fn word_weight(space: SymplecticSpace, w: Word, degree: usize) -> Vec<i64> {
    let mut acc = vec![0i64; space.genus()];
    for i in 0..degree {
        let l = word::letter(w, i);
        let lw = space.letter_weight(l);
        for (a, b) in acc.iter_mut().zip(lw) {
            *a += b;
        }
    }
    acc
}

type SparseInt = HashMap<Word, Int>;

fn to_sparse_int(t: &Tensor) -> SparseInt {
    // elements produced by integer brackets are integral already
    t.iter()
        .map(|(w, c)| {
            debug_assert!(c.denom().is_one());
            (*w, c.numer().clone())
        })
        .collect()
}

fn sparse_int_bracket(a: &SparseInt, la: usize, b: &SparseInt, lb: usize) -> SparseInt {
    let mut out = SparseInt::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let c = ca * cb;
            let ab = word::concat(*wa, la, *wb);
            let ba = word::concat(*wb, lb, *wa);
            let e = out.entry(ab).or_insert_with(Int::zero);
            *e += &c;
            if e.is_zero() {
                out.remove(&ab);
            }
            let e = out.entry(ba).or_insert_with(Int::zero);
            *e -= &c;
            if e.is_zero() {
                out.remove(&ba);
            }
        }
    }
    out
}

/// Per-weight-block data of one graded degree of the quotient
/// `L(H) / (omega)`.
struct BlockData {
    lyndon: Vec<Word>, // Lyndon words of this weight, sorted
    ech: IntEchelon,   // ideal rows in Lyndon coordinates of this block
}

pub struct DegreeData {
    pub degree: usize,
    blocks: HashMap<Vec<i64>, BlockData>,
    /// Ideal basis elements kept as tensors for bracketing into higher
    /// degrees; each is weight-homogeneous.
    ideal_tensor: Vec<(Vec<i64>, SparseInt)>,
    pub ideal_rank: usize,
    pub lie_dim: usize,
}

impl DegreeData {
    pub fn quotient_dim(&self) -> usize {
        self.lie_dim - self.ideal_rank
    }

    /// Character of the quotient at this degree (motivic weight = -degree).
    pub fn quotient_character(&self, space: SymplecticSpace) -> VirtualCharacter {
        let entries: Vec<(Vec<i64>, i64)> = self
            .blocks
            .iter()
            .map(|(w, b)| (w.clone(), (b.lyndon.len() - b.ech.rank()) as i64))
            .collect();
        VirtualCharacter::from_weights(space.genus(), -(self.degree as i64), entries)
            .expect("quotient weights are Weyl-invariant")
    }

    /// Reduce a weight-homogeneous element (tensor form) to Lyndon block
    /// coordinates and test ideal membership. Returns `None` if the weight
    /// block is empty.
    fn ideal_contains(&self, ctx: &mut LieContext, weight: &[i64], t: &SparseInt) -> bool {
        let tensor: Tensor = t
            .iter()
            .map(|(w, c)| (*w, Rat::from_integer(c.clone())))
            .collect();
        if tensor.is_empty() {
            return true;
        }
        let Some(block) = self.blocks.get(weight) else {
            return false;
        };
        let coords = ctx.to_lyndon(&tensor, self.degree);
        let dense = dense_int_coords(&coords, &block.lyndon);
        block.ech.contains(&dense)
    }
}

fn dense_int_coords(coords: &HashMap<Word, Rat>, basis: &[Word]) -> Vec<Int> {
    let mut denom = Int::one();
    for c in coords.values() {
        denom = num::integer::lcm(denom, c.denom().clone());
    }
    basis
        .iter()
        .map(|w| {
            coords
                .get(w)
                .map(|c| c.numer() * (&denom / c.denom()))
                .unwrap_or_else(Int::zero)
        })
        .collect()
}

/// The graded pieces of `Gr p = L(H) / (omega)` computed degree by degree:
/// `I_2 = <omega>`, `I_n = sum_k [L_k, I_{n-k}]`, each reduced per torus
/// weight by exact integer elimination.
pub struct Labute {
    pub space: SymplecticSpace,
    pub ctx: LieContext,
    degrees: Vec<DegreeData>, // index d-1 = degree d
}

impl Labute {
    pub fn new(space: SymplecticSpace) -> Self {
        Labute {
            space,
            ctx: LieContext::new(space.rank()),
            degrees: Vec::new(),
        }
    }

    pub fn computed_to(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree_data(&mut self, n: usize) -> Result<&DegreeData, LieError> {
        labute_degree_guard(self.space.rank(), n)?;
        while self.degrees.len() < n {
            let next = self.degrees.len() + 1;
            let data = self.compute_degree(next);
            self.degrees.push(data);
        }
        Ok(&self.degrees[n - 1])
    }

    fn compute_degree(&mut self, n: usize) -> DegreeData {
        let space = self.space;
        let lie_dim = witt_dimension(space.rank(), n) as usize;
        // group the Lyndon basis by weight
        let lyndon: Vec<Word> = self.ctx.lyndon_packed(n).to_vec();
        let mut blocks: HashMap<Vec<i64>, BlockData> = HashMap::new();
        for w in &lyndon {
            let wt = word_weight(space, *w, n);
            blocks
                .entry(wt)
                .or_insert_with(|| BlockData {
                    lyndon: Vec::new(),
                    ech: IntEchelon::new(0),
                })
                .lyndon
                .push(*w);
        }
        for b in blocks.values_mut() {
            b.lyndon.sort_unstable();
            b.ech = IntEchelon::new(b.lyndon.len());
        }

        // spanning set of I_n
        let mut spanning: Vec<(Vec<i64>, SparseInt)> = Vec::new();
        if n == 2 {
            let o = omega(space);
            let t = to_sparse_int(o.homogeneous_part(2).unwrap());
            spanning.push((vec![0i64; space.genus()], t));
        } else if n > 2 {
            for k in 1..=(n - 2) {
                // basis of L_k as integer tensors
                let lk: Vec<(Vec<i64>, SparseInt)> = self
                    .ctx
                    .lyndon_packed(k)
                    .to_vec()
                    .into_iter()
                    .map(|w| {
                        let t = to_sparse_int(&self.ctx.rho(w, k));
                        (word_weight(space, w, k), t)
                    })
                    .collect();
                let im = &self.degrees[n - k - 1].ideal_tensor;
                for (wh, h) in &lk {
                    for (wx, x) in im {
                        let t = sparse_int_bracket(h, k, x, n - k);
                        if !t.is_empty() {
                            let wt: Vec<i64> = wh.iter().zip(wx).map(|(a, b)| a + b).collect();
                            spanning.push((wt, t));
                        }
                    }
                }
            }
        }

        let mut ideal_tensor = Vec::new();
        let mut ideal_rank = 0usize;
        for (wt, t) in spanning {
            let tensor: Tensor = t
                .iter()
                .map(|(w, c)| (*w, Rat::from_integer(c.clone())))
                .collect();
            let coords = self.ctx.to_lyndon(&tensor, n);
            let block = blocks.get_mut(&wt).expect("weight block exists");
            let dense = dense_int_coords(&coords, &block.lyndon);
            if block.ech.insert(dense) {
                ideal_rank += 1;
                ideal_tensor.push((wt, t));
            }
        }

        DegreeData {
            degree: n,
            blocks,
            ideal_tensor,
            ideal_rank,
            lie_dim,
        }
    }

    /// Verify `[L_1, I_n] <= I_{n+1}` by explicit membership (the recursion
    /// builds the sum of all `[L_k, I_{n-k}]`; this is the converse
    /// inclusion making it an ideal).
    pub fn verify_ideal_closure(&mut self, n: usize) -> Result<bool, LieError> {
        self.degree_data(n + 1)?;
        let gens: Vec<(Vec<i64>, SparseInt)> = (0..self.space.rank())
            .map(|l| {
                let w = word::pack(&[l as u8]);
                (
                    word_weight(self.space, w, 1),
                    SparseInt::from([(w, Int::one())]),
                )
            })
            .collect();
        let elements: Vec<(Vec<i64>, SparseInt)> = self.degrees[n - 1].ideal_tensor.clone();
        // split borrows: clone what we need before the mutable ctx borrow
        for (wx, x) in &elements {
            for (wg, g) in &gens {
                let t = sparse_int_bracket(g, 1, x, n);
                if t.is_empty() {
                    continue;
                }
                let wt: Vec<i64> = wg.iter().zip(wx).map(|(a, b)| a + b).collect();
                let (upper, ctx) = (&self.degrees[n], &mut self.ctx);
                if !upper.ideal_contains(ctx, &wt, &t) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Dimension of `Gr_{-n}` of the quotient.
    pub fn graded_dim(&mut self, n: usize) -> Result<usize, LieError> {
        Ok(self.degree_data(n)?.quotient_dim())
    }

    /// Full coordinate description of degree `n`: the Lyndon basis, the
    /// reduced ideal rows in those coordinates, and the complementary
    /// quotient basis (non-pivot Lyndon words).
    pub fn graded_piece(&mut self, n: usize) -> Result<GradedPiece, LieError> {
        self.degree_data(n)?;
        let data = &self.degrees[n - 1];
        let mut lyndon: Vec<Word> = Vec::new();
        for b in data.blocks.values() {
            lyndon.extend(&b.lyndon);
        }
        lyndon.sort_unstable();
        let index: HashMap<Word, usize> = lyndon.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let mut ideal_rows: Vec<Vec<Rat>> = Vec::new();
        let mut pivot_words: Vec<Word> = Vec::new();
        for b in data.blocks.values() {
            for row in b.ech.rows() {
                let mut global = vec![Rat::zero(); lyndon.len()];
                let mut pivot: Option<usize> = None;
                for (j, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        let gj = index[&b.lyndon[j]];
                        global[gj] = Rat::from_integer(v.clone());
                        if pivot.is_none() {
                            pivot = Some(j);
                        }
                    }
                }
                pivot_words.push(b.lyndon[pivot.expect("nonzero row")]);
                ideal_rows.push(global);
            }
        }
        let quotient_basis: Vec<usize> = lyndon
            .iter()
            .enumerate()
            .filter(|(_, w)| !pivot_words.contains(w))
            .map(|(i, _)| i)
            .collect();
        Ok(GradedPiece {
            degree: n,
            lie_dim: data.lie_dim,
            ideal_rank: data.ideal_rank,
            lyndon_words: lyndon.iter().map(|w| word::unpack(*w, n)).collect(),
            ideal_rows,
            quotient_basis,
        })
    }

    /// Character of `Gr_{-n}` via the explicit quotient.
    pub fn graded_character(&mut self, n: usize) -> Result<VirtualCharacter, LieError> {
        let space = self.space;
        Ok(self.degree_data(n)?.quotient_character(space))
    }
}

/// Serializable coordinate data of one graded quotient degree.
pub struct GradedPiece {
    pub degree: usize,
    pub lie_dim: usize,
    pub ideal_rank: usize,
    pub lyndon_words: Vec<Vec<u8>>,
    pub ideal_rows: Vec<Vec<Rat>>,
    pub quotient_basis: Vec<usize>,
}

// ---------------------------------------------------------------------------
// Characters: the Witt/necklace formula and the quotient recursion
// ---------------------------------------------------------------------------

/// Character of `L_n(V)` from the character of `V`:
/// `(1/n) sum_{d|n} mu(d) psi^d(chi)^{n/d}`.
pub fn free_lie_character(chi: &VirtualCharacter, n: usize) -> Result<VirtualCharacter, LieError> {
    assert!(n >= 1);
    let mut acc: Option<VirtualCharacter> = None;
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let p = chi.adams(d as u32)?;
        let mut pow = p.clone();
        for _ in 1..(n / d) {
            pow = pow.tensor(&p)?;
        }
        let term = pow.scaled(mu);
        acc = Some(match acc {
            None => term,
            Some(a) => a.checked_add(&term)?,
        });
    }
    let acc = acc.unwrap();
    // exact division by n
    let mut entries = Vec::new();
    for (w, m) in acc.iter() {
        if m % n as i64 != 0 {
            return Err(LieError::NonIntegralCharacter);
        }
        entries.push((w, m / n as i64));
    }
    Ok(VirtualCharacter::from_weights(
        chi.g(),
        acc.motivic_weight(),
        entries,
    )?)
}

/// Internal character with rational multiplicities, for the logarithm step
/// of the quotient recursion.
#[derive(Clone, Default)]
struct RatChar {
    map: HashMap<Vec<i64>, Rat>,
}

impl RatChar {
    fn from_char(ch: &VirtualCharacter) -> Self {
        let mut map = HashMap::new();
        for (w, m) in ch.iter() {
            map.insert(w, Rat::from_integer(Int::from(m)));
        }
        RatChar { map }
    }

    fn add_scaled(&mut self, other: &RatChar, c: &Rat) {
        for (w, v) in &other.map {
            let e = self.map.entry(w.clone()).or_insert_with(Rat::zero);
            *e += v * c;
            if e.is_zero() {
                self.map.remove(w);
            }
        }
    }

    fn convolve(&self, other: &RatChar) -> RatChar {
        let mut out = RatChar::default();
        for (w1, c1) in &self.map {
            for (w2, c2) in &other.map {
                let w: Vec<i64> = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                let e = out.map.entry(w).or_insert_with(Rat::zero);
                *e += c1 * c2;
            }
        }
        out.map.retain(|_, v| !v.is_zero());
        out
    }

    fn adams(&self, k: i64) -> RatChar {
        let mut out = RatChar::default();
        for (w, c) in &self.map {
            let wk: Vec<i64> = w.iter().map(|x| x * k).collect();
            out.map.insert(wk, c.clone());
        }
        out
    }

    fn scale(&self, c: &Rat) -> RatChar {
        let mut out = self.clone();
        for v in out.map.values_mut() {
            *v *= c;
        }
        out
    }

    fn to_char(&self, g: usize, motivic: i64) -> Result<VirtualCharacter, LieError> {
        let mut entries = Vec::new();
        for (w, c) in &self.map {
            let m = rat_to_i64(c).ok_or(LieError::NonIntegralCharacter)?;
            entries.push((w.clone(), m));
        }
        Ok(VirtualCharacter::from_weights(g, motivic, entries)?)
    }
}

/// Characters of the graded quotient `Gr_{-n}(L(H)/(omega))` for all
/// degrees up to `max`, by the enveloping-algebra recursion
/// `[U_m] = [H][U_{m-1}] - Q(1)[U_{m-2}]` followed by the equivariant
/// logarithm and Moebius inversion. Valid for every `g >= 2`; multiplicity
/// integrality is enforced and is itself a strong consistency check.
pub fn graded_quotient_characters_by_recursion(
    space: SymplecticSpace,
    max: usize,
) -> Result<Vec<VirtualCharacter>, LieError> {
    let g = space.genus();
    let h = RatChar::from_char(&character::char_h(space));
    // U-series
    let mut u: Vec<RatChar> = Vec::with_capacity(max + 1);
    let one = {
        let mut m = RatChar::default();
        m.map.insert(vec![0i64; g], Rat::one());
        m
    };
    u.push(one.clone());
    if max >= 1 {
        u.push(h.clone());
    }
    for m in 2..=max {
        let mut next = u[m - 1].convolve(&h);
        next.add_scaled(&u[m - 2], &-Rat::one());
        u.push(next);
    }
    // logarithm: m U_m = sum_{j=1..m} (j c_j) U_{m-j} with U_0 = 1, so
    // c_m = U_m - (1/m) sum_{j<m} j c_j U_{m-j}
    let mut c: Vec<RatChar> = vec![RatChar::default(); max + 1];
    for m in 1..=max {
        let mut acc = u[m].clone();
        for j in 1..m {
            let term = c[j].convolve(&u[m - j]);
            acc.add_scaled(&term, &-Rat::new(Int::from(j as i64), Int::from(m as i64)));
        }
        c[m] = acc;
    }
    // Moebius inversion: n L_n = sum_{d|n} mu(n/d) psi^{n/d}(d c_d)
    let mut out = Vec::with_capacity(max);
    for n in 1..=max {
        let mut acc = RatChar::default();
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let mu = mobius(n / d);
            if mu == 0 {
                continue;
            }
            let b = c[d].scale(&Rat::from_integer(Int::from(d as i64)));
            let term = b.adams((n / d) as i64);
            acc.add_scaled(&term, &Rat::from_integer(Int::from(mu)));
        }
        let ln = acc.scale(&Rat::new(Int::one(), Int::from(n as i64)));
        out.push(ln.to_char(g, -(n as i64))?);
    }
    Ok(out)
}

/// Character of `Gr_{-n}` of the quotient, computed by the recursion for
/// every supported genus and cross-checked against the explicit Lyndon
/// quotient when one is supplied. A disagreement is a hard failure.
pub fn graded_p_character(
    space: SymplecticSpace,
    n: usize,
    explicit: Option<&mut Labute>,
) -> Result<VirtualCharacter, LieError> {
    let by_recursion = graded_quotient_characters_by_recursion(space, n)?
        .pop()
        .expect("n >= 1");
    if let Some(lab) = explicit {
        let by_quotient = lab.graded_character(n)?;
        if by_quotient != by_recursion {
            return Err(LieError::RouteMismatch(n));
        }
    }
    Ok(by_recursion)
}
