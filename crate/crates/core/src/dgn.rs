//! The two-step graded nilpotent Lie algebras attached to the universal
//! curve with `n` marked points: degree -1 part `Lambda^3_n H`, degree -2
//! part `(Lambda^2_0 H)^n`, bracket assembled from the calibrated
//! projections, the classification of invariant sections of the
//! point-forgetting map, and the integral test that separates the
//! tautological sections from the exceptional genus-3 one.

use crate::johnson::{Calibration, JohnsonError};
use crate::lattice::{lambda3n_lattice, trivector_words, tuple_coords, CoefficientRing};
use crate::poly::Poly;
use crate::scalar::Rat;
use crate::symplectic::SymplecticSpace;
use crate::tensor::{lambda30_basis, sorted_words, Symmetry, TensorElement};
use crate::word;
use num::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DgnError {
    #[error("the two-step algebra needs g >= 3, got {0}")]
    GenusTooSmall(usize),
    #[error("elements belong to different algebras")]
    ShapeMismatch,
    #[error("marked-point index {0} out of range 1..={1}")]
    PointIndex(usize, usize),
    #[error("constraint extraction failed: {0}")]
    Extraction(String),
    #[error("the constraint system does not reduce to the predicted shape: {0}")]
    UnexpectedSystem(String),
    #[error(transparent)]
    Johnson(#[from] JohnsonError),
    #[error(transparent)]
    Tensor(#[from] crate::tensor::TensorError),
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
}

/// Degree -1 element: a class `v` in `Lambda^3_0 H` (kept as its c-free
/// lift) together with one `H`-coordinate per marked point.
#[derive(Clone, Debug, PartialEq)]
pub struct Deg1 {
    pub v: TensorElement,
    pub x: Vec<TensorElement>,
}

/// Degree -2 element: one theta-free `Lambda^2 H` component per point.
#[derive(Clone, Debug, PartialEq)]
pub struct Deg2 {
    pub y: Vec<TensorElement>,
}

impl Deg2 {
    pub fn is_zero(&self) -> bool {
        self.y.iter().all(|t| t.is_zero())
    }
}

pub struct DgnAlgebra {
    space: SymplecticSpace,
    n: usize,
    cal: Arc<Calibration>,
    lifts: Vec<TensorElement>,
}

impl DgnAlgebra {
    /// Materialize the algebra: the `Lambda^3_0 H` basis of c-free lifts
    /// and the calibrated bracket projections.
    pub fn build(space: SymplecticSpace, n: usize) -> Result<Self, DgnError> {
        if space.genus() < 3 {
            return Err(DgnError::GenusTooSmall(space.genus()));
        }
        let cal = Calibration::get(space)?;
        let lifts = lambda30_basis(space);
        Ok(DgnAlgebra {
            space,
            n,
            cal,
            lifts,
        })
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn lambda30_dim(&self) -> usize {
        self.lifts.len()
    }

    pub fn deg1_dim(&self) -> usize {
        self.lifts.len() + self.space.rank() * self.n
    }

    pub fn deg2_dim(&self) -> usize {
        let g = self.space.genus();
        (2 * g * g - g - 1) * self.n
    }

    pub fn zero_deg1(&self) -> Deg1 {
        Deg1 {
            v: TensorElement::zero(self.space, 3, 0, Symmetry::Alternating),
            x: vec![TensorElement::zero(self.space, 1, 0, Symmetry::Alternating); self.n],
        }
    }

    /// Ordered degree -1 basis: the `Lambda^3_0` lifts, then per point the
    /// basis letters.
    pub fn deg1_basis(&self) -> Vec<Deg1> {
        let mut out = Vec::with_capacity(self.deg1_dim());
        for v in &self.lifts {
            let mut e = self.zero_deg1();
            e.v = v.clone();
            out.push(e);
        }
        for j in 0..self.n {
            for l in self.space.letters() {
                let mut e = self.zero_deg1();
                e.x[j] = TensorElement::basis_wedge(self.space, &[l], 0);
                out.push(e);
            }
        }
        out
    }

    /// The bracket `Lambda^2(deg -1) -> deg -2`, one calibrated projection
    /// `p_j = c + d_j + e_j` per point.
    pub fn bracket(&self, w1: &Deg1, w2: &Deg1) -> Result<Deg2, DgnError> {
        if w1.x.len() != self.n || w2.x.len() != self.n {
            return Err(DgnError::ShapeMismatch);
        }
        let c = self.cal.pair_c(&w1.v, &w2.v)?;
        let mut y = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let mut acc = c.clone();
            if !w1.x[j].is_zero() && !w2.v.is_zero() {
                acc = acc.add(&self.cal.pair_d(&w1.x[j], &w2.v)?)?;
            }
            if !w2.x[j].is_zero() && !w1.v.is_zero() {
                acc = acc.sub(&self.cal.pair_d(&w2.x[j], &w1.v)?)?;
            }
            if !w1.x[j].is_zero() && !w2.x[j].is_zero() {
                acc = acc.add(&self.cal.pair_e(&w1.x[j], &w2.x[j])?)?;
            }
            y.push(acc);
        }
        Ok(Deg2 { y })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SectionLabel {
    #[serde(rename = "s_j")]
    Tautological(usize),
    #[serde(rename = "zeta")]
    Zeta,
    #[serde(rename = "other")]
    Other,
}

/// An equivariant degree-preserving linear section candidate of the map
/// forgetting the zeroth point: `H_0`-coefficients `a` and degree -2
/// coefficients `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionCandidate {
    pub a: Vec<Rat>,
    pub t: Vec<Rat>,
    pub label: SectionLabel,
}

impl SectionCandidate {
    fn classify(a: &[Rat]) -> SectionLabel {
        let ones: Vec<usize> = a
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_one())
            .map(|(i, _)| i)
            .collect();
        let zeros = a.iter().filter(|v| v.is_zero()).count();
        if ones.len() == 1 && zeros == a.len() - 1 {
            SectionLabel::Tautological(ones[0] + 1)
        } else if zeros == a.len() {
            SectionLabel::Zeta
        } else {
            SectionLabel::Other
        }
    }
}

/// The constraint polynomials of the section equation, expressed against
/// the projection basis `{c, d_j, e_j, e_ij}`; kept for reporting and
/// reused by the obstruction layer.
pub struct ConstraintSystem {
    pub n: usize,
    pub has_c: bool,
    /// coefficient of `c`
    pub kappa_c: Poly,
    /// coefficients of `d_j`
    pub kappa_d: Vec<Poly>,
    /// coefficients of `e_j`
    pub kappa_e: Vec<Poly>,
    /// coefficients of `e_ij`, `i < j`
    pub kappa_eij: BTreeMap<(usize, usize), Poly>,
}

/// Variables of the constraint ring: `a_1..a_n` then `t_1..t_n`.
fn var_a(n: usize, j: usize) -> Poly {
    Poly::var(2 * n.max(1), j)
}

fn var_t(n: usize, j: usize) -> Poly {
    Poly::var(2 * n.max(1), n + j)
}

/// Evaluate the slot-0 defect of the symbolic section on a spanning pair,
/// as a polynomial combination of fixed `Lambda^2_0 H` vectors. The
/// returned list pairs each distinct coefficient polynomial with its
/// tensor.
struct DefectEvaluator<'c> {
    space: SymplecticSpace,
    n: usize,
    cal: &'c Calibration,
    include_t: bool,
}

impl<'c> DefectEvaluator<'c> {
    /// Basis-map evaluations on the pair: `(c, d_j's, e_j's, e_ij's)`.
    fn basis_values(
        &self,
        alpha: &Deg1,
        beta: &Deg1,
    ) -> Result<
        (
            TensorElement,
            Vec<TensorElement>,
            Vec<TensorElement>,
            BTreeMap<(usize, usize), TensorElement>,
        ),
        DgnError,
    > {
        let n = self.n;
        let c = self.cal.pair_c(&alpha.v, &beta.v)?;
        let mut ds = Vec::with_capacity(n);
        let mut es = Vec::with_capacity(n);
        for j in 0..n {
            let mut d = self.cal.pair_d(&alpha.x[j], &beta.v)?;
            d = d.sub(&self.cal.pair_d(&beta.x[j], &alpha.v)?)?;
            ds.push(d);
            es.push(self.cal.pair_e(&alpha.x[j], &beta.x[j])?);
        }
        let mut eij = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let v = self
                    .cal
                    .pair_e(&alpha.x[i], &beta.x[j])?
                    .sub(&self.cal.pair_e(&beta.x[i], &alpha.x[j])?)?;
                eij.insert((i + 1, j + 1), v);
            }
        }
        Ok((c, ds, es, eij))
    }

    /// The slot-0 defect of `sigma = r o s_a` (and, when `include_t`, the
    /// full degree-preserving section with unknown `t`):
    /// `[s(alpha), s(beta)]_0 - s([alpha, beta])_0`.
    fn defect_as_polys(
        &self,
        alpha: &Deg1,
        beta: &Deg1,
    ) -> Result<Vec<(Poly, TensorElement)>, DgnError> {
        let n = self.n;
        let nv = 2 * n.max(1);
        let mut out: Vec<(Poly, TensorElement)> = Vec::new();
        let (c, ds, es, eij) = self.basis_values(alpha, beta)?;
        // [s(alpha), s(beta)]_0 with x_0 = sum_j a_j x_j:
        //   c(v^v') + sum_j a_j d-parts + sum_{i,j} a_i a_j e(x_i ^ x'_j)
        out.push((Poly::one(nv), c.clone()));
        for j in 0..n {
            out.push((var_a(n, j), ds[j].clone()));
            out.push((var_a(n, j).mul(&var_a(n, j)), es[j].clone()));
        }
        for ((i, j), v) in &eij {
            out.push((var_a(n, i - 1).mul(&var_a(n, j - 1)), v.clone()));
        }
        if self.include_t {
            // - sum_j t_j p_j([alpha, beta]) with p_j = c + d_j + e_j
            for j in 0..n {
                let coeff = var_t(n, j).scale(&-Rat::one());
                let pj = c.add(&ds[j])?.add(&es[j])?;
                out.push((coeff, pj));
            }
        }
        let _ = self.space;
        Ok(out)
    }
}

/// Express the symbolic defect in the projection basis: solves for the
/// coefficient polynomials and verifies the expression on every spanning
/// pair. A failure is a calibration bug, reported loudly.
pub fn constraint_system(
    space: SymplecticSpace,
    n: usize,
    include_t: bool,
) -> Result<ConstraintSystem, DgnError> {
    let alg = DgnAlgebra::build(space, n)?;
    let has_c = space.genus() >= 4;
    let nv = 2 * n.max(1);
    let ev = DefectEvaluator {
        space,
        n,
        cal: &alg.cal,
        include_t,
    };
    let basis = alg.deg1_basis();
    let l2_words = sorted_words(space.rank(), 2);

    // basis maps in a fixed order: c (when present), d_j, e_j, e_ij
    let mut map_names: Vec<String> = Vec::new();
    if has_c {
        map_names.push("c".into());
    }
    for j in 1..=n {
        map_names.push(format!("d_{j}"));
    }
    for j in 1..=n {
        map_names.push(format!("e_{j}"));
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            map_names.push(format!("e_{i}{j}"));
        }
    }
    let k = map_names.len();

    // incremental selection of k independent evaluation rows, then the
    // defect is expressed and verified against every pair
    let mut sel_rows: Vec<Vec<Rat>> = Vec::new();
    let mut sel_rhs: Vec<Vec<(Poly, Rat)>> = Vec::new(); // defect coordinate as polynomial data
    let mut pending: Vec<(Vec<Rat>, Poly)> = Vec::new(); // rows to re-verify once solved

    let mut kappa: Option<Vec<Poly>> = if k == 0 { Some(Vec::new()) } else { None };
    let mut verify_rows: Vec<(Vec<Rat>, Poly)> = Vec::new();

    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let alpha = &basis[i];
            let beta = &basis[j];
            let (c, ds, es, eij) = ev.basis_values(alpha, beta)?;
            let defect = ev.defect_as_polys(alpha, beta)?;
            // per Lambda^2 H coordinate: a row of basis-map values and the
            // defect polynomial at that coordinate
            let mut maps: Vec<Vec<Rat>> = Vec::new();
            if has_c {
                maps.push(c.to_coords(&l2_words));
            }
            for d in &ds {
                maps.push(d.to_coords(&l2_words));
            }
            for e in &es {
                maps.push(e.to_coords(&l2_words));
            }
            for v in eij.values() {
                maps.push(v.to_coords(&l2_words));
            }
            // defect coordinates as polynomials
            let mut defect_coords: Vec<Poly> = vec![Poly::zero(nv); l2_words.len()];
            for (p, t) in &defect {
                for (w, cc) in t.terms() {
                    let idx = l2_words.binary_search(w).expect("sorted Lambda^2 word");
                    defect_coords[idx] = defect_coords[idx].add(&p.scale(cc));
                }
            }
            for (coord, dpoly) in defect_coords.into_iter().enumerate() {
                let row: Vec<Rat> = maps.iter().map(|m| m[coord].clone()).collect();
                if row.iter().all(|x| x.is_zero()) {
                    if !dpoly.is_zero() {
                        return Err(DgnError::Extraction(
                            "defect has a component outside the projection span".into(),
                        ));
                    }
                    continue;
                }
                if kappa.is_none() && sel_rows.len() < k {
                    // accept the row if it increases the rank
                    let mut candidate = sel_rows.clone();
                    candidate.push(row.clone());
                    let m = crate::matrix::QMat::from_rows(candidate.clone());
                    if m.rank() == sel_rows.len() + 1 {
                        sel_rows.push(row.clone());
                        sel_rhs.push(vec![(dpoly.clone(), Rat::one())]);
                        verify_rows.push((row, dpoly));
                        if sel_rows.len() == k {
                            // solve the k x k system for polynomial kappas
                            let m = crate::matrix::QMat::from_rows(sel_rows.clone());
                            let mut kappas: Vec<Poly> = vec![Poly::zero(nv); k];
                            // collect all monomials of the selected rhs
                            let mut monos: Vec<crate::poly::Monomial> = Vec::new();
                            for r in &verify_rows {
                                for (mo, _) in r.1.terms() {
                                    if !monos.contains(mo) {
                                        monos.push(*mo);
                                    }
                                }
                            }
                            for mo in monos {
                                let rhs: Vec<Rat> = verify_rows
                                    .iter()
                                    .map(|(_, p)| {
                                        p.terms()
                                            .find(|(m2, _)| **m2 == mo)
                                            .map(|(_, c)| c.clone())
                                            .unwrap_or_else(Rat::zero)
                                    })
                                    .collect();
                                let sol = m.solve(&rhs).ok_or_else(|| {
                                    DgnError::Extraction("inconsistent selected system".into())
                                })?;
                                for (kk, s) in sol.iter().enumerate() {
                                    kappas[kk].add_term(mo, s.clone());
                                }
                            }
                            kappa = Some(kappas);
                            // re-verify the buffered rows
                            for (row, dpoly) in pending.drain(..) {
                                check_row(&row, &dpoly, kappa.as_ref().unwrap())?;
                            }
                        }
                    } else {
                        pending.push((row, dpoly));
                    }
                } else if let Some(kp) = &kappa {
                    check_row(&row, &dpoly, kp)?;
                } else {
                    pending.push((row, dpoly));
                }
            }
        }
    }
    let Some(kappas) = kappa else {
        // no pairs at all (n = 0 with trivial lifts cannot happen at g>=3)
        // or the evaluation matrix never reached full rank
        return Err(DgnError::Extraction(format!(
            "projection-basis evaluation matrix is rank-deficient (wanted {k})"
        )));
    };
    if !pending.is_empty() {
        for (row, dpoly) in pending.drain(..) {
            check_row(&row, &dpoly, &kappas)?;
        }
    }

    // unpack in the fixed order
    let mut it = kappas.into_iter();
    let kappa_c = if has_c {
        it.next().unwrap()
    } else {
        Poly::zero(nv)
    };
    let kappa_d: Vec<Poly> = (0..n).map(|_| it.next().unwrap()).collect();
    let kappa_e: Vec<Poly> = (0..n).map(|_| it.next().unwrap()).collect();
    let mut kappa_eij = BTreeMap::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            kappa_eij.insert((i, j), it.next().unwrap());
        }
    }
    Ok(ConstraintSystem {
        n,
        has_c,
        kappa_c,
        kappa_d,
        kappa_e,
        kappa_eij,
    })
}

fn check_row(row: &[Rat], dpoly: &Poly, kappas: &[Poly]) -> Result<(), DgnError> {
    let nv = dpoly.nvars();
    let mut acc = Poly::zero(nv);
    for (r, kp) in row.iter().zip(kappas) {
        acc = acc.add(&kp.scale(r));
    }
    if acc.sub(dpoly).is_zero() {
        Ok(())
    } else {
        Err(DgnError::Extraction(
            "expressed defect disagrees with a spanning pair".into(),
        ))
    }
}

/// Classify all equivariant sections: derives the constraint system from
/// the actual bracket tensors, verifies it reduces to the predicted
/// multilinear shape, and enumerates the zero set honestly.
pub fn solve_sections(space: SymplecticSpace, n: usize) -> Result<Vec<SectionCandidate>, DgnError> {
    let sys = constraint_system(space, n, true)?;
    let nv = 2 * n.max(1);

    // collect nonzero constraints
    let mut constraints: Vec<Poly> = Vec::new();
    if sys.has_c {
        constraints.push(sys.kappa_c.clone());
    } else if !sys.kappa_c.is_zero() {
        return Err(DgnError::UnexpectedSystem("c appeared at genus 3".into()));
    }
    constraints.extend(sys.kappa_d.iter().cloned());
    constraints.extend(sys.kappa_e.iter().cloned());
    constraints.extend(sys.kappa_eij.values().cloned());
    constraints.retain(|p| !p.is_zero());

    // step 1: the d-coefficients must read t_j = a_j (up to scalar)
    for j in 0..n {
        let expect = var_a(n, j).sub(&var_t(n, j)).normalized();
        if sys.kappa_d[j].normalized() != expect {
            return Err(DgnError::UnexpectedSystem(format!(
                "d_{} coefficient is not a_{} - t_{}",
                j + 1,
                j + 1,
                j + 1
            )));
        }
    }
    // step 2: substitute t_j := a_j everywhere
    let mut reduced: Vec<Poly> = constraints
        .iter()
        .map(|p| {
            let mut q = p.clone();
            for j in 0..n {
                q = q.substitute(n + j, &var_a(n, j));
            }
            q.normalized()
        })
        .filter(|p| !p.is_zero())
        .collect();
    reduced.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    reduced.dedup();

    // step 3: the reduced system must be exactly
    // { a_i a_j (i<j), a_j^2 - a_j } plus { 1 - sum a_j } when c is present
    let mut expected: Vec<Poly> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            expected.push(var_a(n, i).mul(&var_a(n, j)).normalized());
        }
        expected.push(var_a(n, i).mul(&var_a(n, i)).sub(&var_a(n, i)).normalized());
    }
    if sys.has_c {
        let mut s = Poly::one(nv);
        for j in 0..n {
            s = s.sub(&var_a(n, j));
        }
        expected.push(s.normalized());
    }
    expected.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    expected.dedup();
    if reduced != expected {
        return Err(DgnError::UnexpectedSystem(format!(
            "got {} constraints, wanted {}",
            reduced.len(),
            expected.len()
        )));
    }

    // step 4: a_j^2 = a_j is proved above, so enumerate over {0,1}^n
    let mut out = Vec::new();
    for mask in 0..(1u32 << n) {
        let a: Vec<Rat> = (0..n)
            .map(|j| {
                if mask & (1 << j) != 0 {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        let full: Vec<Rat> = a.iter().chain(a.iter()).cloned().collect();
        let full = if n == 0 {
            vec![Rat::zero(), Rat::zero()]
        } else {
            full
        };
        if reduced.iter().all(|p| p.eval(&full).is_zero()) {
            let label = SectionCandidate::classify(&a);
            out.push(SectionCandidate {
                t: a.clone(),
                a,
                label,
            });
        }
    }
    out.sort_by_key(|c| match c.label {
        SectionLabel::Tautological(j) => j,
        SectionLabel::Zeta => usize::MAX,
        SectionLabel::Other => usize::MAX - 1,
    });
    Ok(out)
}

/// Does the candidate map the integral lattice `Lambda^3_n H` into
/// `Lambda^3_{n+1} H` over the given ring? Decided on a generating set:
/// the diagonal trivector tuples and the per-slot `theta_check ^ x`
/// tuples, each pushed through the section and tested for membership.
pub fn integral_section_check(
    space: SymplecticSpace,
    n: usize,
    candidate: &SectionCandidate,
    ring: CoefficientRing,
) -> Result<bool, DgnError> {
    if space.genus() < 3 {
        return Err(DgnError::GenusTooSmall(space.genus()));
    }
    let target = lambda3n_lattice(space, n + 1, ring);
    let words = trivector_words(space);
    let zero3 = TensorElement::zero(space, 3, 0, Symmetry::Alternating);

    let mut generators: Vec<Vec<TensorElement>> = Vec::new();
    // diagonal tuples
    for w in &words {
        let t = TensorElement::basis_wedge(space, &word::unpack(*w, 3), 0);
        generators.push(vec![t; n.max(1)]);
    }
    if n == 0 {
        // with no marked points the generators are the classes themselves
        // (tuple of length 1 is built below from the lift alone)
        generators.clear();
        for w in &words {
            generators.push(vec![TensorElement::basis_wedge(
                space,
                &word::unpack(*w, 3),
                0,
            )]);
        }
    } else {
        // class-zero slot generators
        for slot in 0..n {
            for l in space.letters() {
                let tw = TensorElement::basis_wedge(space, &[l], 1).theta_wedge()?;
                let mut tuple = vec![zero3.clone(); n];
                tuple[slot] = tw.with_twist(0);
                generators.push(tuple);
            }
        }
    }

    for tuple in &generators {
        // all entries share the class, so any entry gives the common lift
        let lift = tuple[0].split_lambda3()?;
        // u_0 = sum_j a_j u_j + (1 - sum a_j) лift
        let mut u0 = lift.scale(&{
            let mut s = Rat::one();
            for a in &candidate.a {
                s -= a;
            }
            s
        });
        if n > 0 {
            for (a, u) in candidate.a.iter().zip(tuple) {
                u0 = u0.add(&u.scale(a))?;
            }
        }
        let mut image = vec![u0];
        if n > 0 {
            image.extend(tuple.iter().cloned());
        }
        let coords = tuple_coords(space, &image);
        if !target.contains(&coords)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn sp(g: usize) -> SymplecticSpace {
        SymplecticSpace::new(g).unwrap()
    }

    #[test]
    fn build_dimensions() {
        // g=3, n=0: abelian of dimension 14
        let alg = DgnAlgebra::build(sp(3), 0).unwrap();
        assert_eq!(alg.deg1_dim(), 14);
        assert_eq!(alg.deg2_dim(), 0);
        // g=5, n=1: deg -1 is C(10,3) - 10 + 10 = 120; deg -2 is 44
        let alg = DgnAlgebra::build(sp(5), 1).unwrap();
        assert_eq!(alg.deg1_dim(), 120);
        assert_eq!(alg.deg2_dim(), 44);
        assert!(DgnAlgebra::build(sp(2), 0).is_err());
    }

    #[test]
    fn bracket_examples() {
        let alg = DgnAlgebra::build(sp(3), 2).unwrap();
        // [v', v''] = 0 at g = 3 (c vanishes)
        let basis = alg.deg1_basis();
        let b = alg.bracket(&basis[0], &basis[1]).unwrap();
        assert!(b.is_zero());
        // [u_i, u_j] = 0 for i != j
        let ui = &basis[14]; // first letter in slot 1
        let uj = &basis[14 + 6]; // first letter in slot 2
        assert!(alg.bracket(ui, uj).unwrap().is_zero());
        // [u'_j, u''_j] = e(u' ^ u'') in slot j
        let u1 = &basis[14]; // a1 in slot 1
        let u2 = &basis[14 + 3]; // b1 in slot 1
        let br = alg.bracket(u1, u2).unwrap();
        let expect = TensorElement::basis_wedge(sp(3), &[0, 3], 0)
            .split_lambda2()
            .unwrap()
            .1;
        assert_eq!(br.y[0], expect);
        assert!(br.y[1].is_zero());
    }

    #[test]
    fn bracket_is_alternating() {
        let alg = DgnAlgebra::build(sp(3), 1).unwrap();
        let basis = alg.deg1_basis();
        for i in [0usize, 5, 14] {
            for j in [2usize, 14, 19] {
                let bij = alg.bracket(&basis[i], &basis[j]).unwrap();
                let bji = alg.bracket(&basis[j], &basis[i]).unwrap();
                for (x, y) in bij.y.iter().zip(&bji.y) {
                    assert_eq!(*x, y.scale(&rat(-1, 1)));
                }
            }
        }
    }

    #[test]
    fn sections_counts() {
        // g=5: exactly n sections; g=3: n+1 with zeta
        let s = solve_sections(sp(5), 2).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].a, vec![rat(1, 1), rat(0, 1)]);
        assert_eq!(s[1].a, vec![rat(0, 1), rat(1, 1)]);
        assert!(matches!(s[0].label, SectionLabel::Tautological(1)));
        let s = solve_sections(sp(3), 1).unwrap();
        assert_eq!(s.len(), 2);
        assert!(matches!(s[0].label, SectionLabel::Tautological(1)));
        assert!(matches!(s[1].label, SectionLabel::Zeta));
        // n = 0: none at g >= 4, only zeta at g = 3
        assert!(solve_sections(sp(5), 0).unwrap().is_empty());
        let z = solve_sections(sp(3), 0).unwrap();
        assert_eq!(z.len(), 1);
        assert!(matches!(z[0].label, SectionLabel::Zeta));
    }

    #[test]
    fn solutions_are_permutation_equivariant() {
        // permuting marked points permutes the tautological solutions and
        // fixes zeta
        for g in [3usize, 4] {
            let sections = solve_sections(sp(g), 3).unwrap();
            let avecs: Vec<Vec<Rat>> = sections.iter().map(|s| s.a.clone()).collect();
            // the 3-cycle (1 2 3)
            let permuted: Vec<Vec<Rat>> = avecs
                .iter()
                .map(|a| vec![a[2].clone(), a[0].clone(), a[1].clone()])
                .collect();
            for p in &permuted {
                assert!(avecs.contains(p), "g={g}");
            }
            if g == 3 {
                let zeta = avecs
                    .iter()
                    .find(|a| a.iter().all(|x| x.is_zero()))
                    .unwrap();
                assert_eq!(
                    vec![zeta[2].clone(), zeta[0].clone(), zeta[1].clone()],
                    *zeta
                );
            }
        }
    }

    #[test]
    fn sections_rediscover_t_equals_a() {
        for s in solve_sections(sp(4), 2).unwrap() {
            assert_eq!(s.a, s.t);
        }
    }

    #[test]
    fn integral_checks_genus3() {
        let g3 = sp(3);
        let sections = solve_sections(g3, 1).unwrap();
        let zeta = sections
            .iter()
            .find(|s| matches!(s.label, SectionLabel::Zeta))
            .unwrap();
        let s1 = sections
            .iter()
            .find(|s| matches!(s.label, SectionLabel::Tautological(1)))
            .unwrap();
        let ring = CoefficientRing::local_at(&[2]);
        assert!(!integral_section_check(g3, 1, zeta, ring.clone()).unwrap());
        assert!(integral_section_check(g3, 1, s1, ring).unwrap());
        // zeta becomes integral once 2 is inverted
        let inv2 = CoefficientRing::inverting(&[2]);
        assert!(integral_section_check(g3, 1, zeta, inv2).unwrap());
    }

    #[test]
    fn zeta_analogue_fails_at_three_for_genus4() {
        // the a = 0 candidate is not a section at g = 4 (solve_sections
        // rejects it), and its lattice test fails at 3 = g - 1
        let g4 = sp(4);
        let fake = SectionCandidate {
            a: vec![Rat::zero()],
            t: vec![Rat::zero()],
            label: SectionLabel::Zeta,
        };
        let ring = CoefficientRing::local_at(&[3]);
        assert!(!integral_section_check(g4, 1, &fake, ring).unwrap());
        let sections = solve_sections(g4, 1).unwrap();
        assert!(sections.iter().all(|s| !s.a.iter().all(|x| x.is_zero())));
    }

    #[test]
    fn sections_are_actual_sections() {
        // s([x, y]) = [s(x), s(y)] on all basis pairs, exactly
        let space = sp(4);
        let n = 1usize;
        let small = DgnAlgebra::build(space, n).unwrap();
        let big = DgnAlgebra::build(space, n + 1).unwrap();
        for cand in solve_sections(space, n).unwrap() {
            let lift = |w: &Deg1| -> Deg1 {
                let mut x0 = TensorElement::zero(space, 1, 0, Symmetry::Alternating);
                for (aj, xj) in cand.a.iter().zip(&w.x) {
                    x0 = x0.add(&xj.scale(aj)).unwrap();
                }
                let mut x = vec![x0];
                x.extend(w.x.iter().cloned());
                Deg1 { v: w.v.clone(), x }
            };
            let basis = small.deg1_basis();
            for i in 0..basis.len() {
                for j in (i + 1)..basis.len() {
                    let inner = small.bracket(&basis[i], &basis[j]).unwrap();
                    let outer = big.bracket(&lift(&basis[i]), &lift(&basis[j])).unwrap();
                    // s on degree -2: y_0 = sum t_j y_j
                    let mut y0 = TensorElement::zero(space, 2, 0, Symmetry::Alternating);
                    for (tj, yj) in cand.t.iter().zip(&inner.y) {
                        y0 = y0.add(&yj.scale(tj)).unwrap();
                    }
                    assert_eq!(outer.y[0], y0);
                    for s in 0..n {
                        assert_eq!(outer.y[s + 1], inner.y[s]);
                    }
                }
            }
        }
    }
}
