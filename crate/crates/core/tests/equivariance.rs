//! Equivariance of the contraction and splitting maps under products of
//! integer symplectic transvections, on seeded random inputs.

use torelli::scalar::rint;
use torelli::sp_group::{is_symplectic, random_symplectic, SeededRng, DEFAULT_SEED};
use torelli::tensor::{sorted_words, Symmetry, TensorElement};
use torelli::word;
use torelli::SymplecticSpace;

#[test]
fn c_and_e_commute_with_twenty_random_matrices() {
    for g in [2usize, 3] {
        let space = SymplecticSpace::new(g).unwrap();
        let mut rng = SeededRng::new(DEFAULT_SEED ^ g as u64);
        let words3 = sorted_words(space.rank(), 3);
        let words2 = sorted_words(space.rank(), 2);
        for _ in 0..20 {
            let m = random_symplectic(space, &mut rng, 6);
            assert!(is_symplectic(space, &m));
            // random trivector and bivector
            let mut x3 = TensorElement::zero(space, 3, 0, Symmetry::Alternating);
            let mut x2 = TensorElement::zero(space, 2, 0, Symmetry::Alternating);
            for _ in 0..4 {
                x3.add_term(words3[rng.below(words3.len())], rint(rng.int_in(-3, 3)));
                x2.add_term(words2[rng.below(words2.len())], rint(rng.int_in(-3, 3)));
            }
            // c(M x) = M c(x)
            let lhs = x3.apply_matrix(&m).c_contract().unwrap();
            let rhs = x3.c_contract().unwrap().apply_matrix(&m);
            assert_eq!(lhs, rhs);
            // e(M x) = M e(x) for the split projection of the wedge square
            let (s1, e1) = x2.apply_matrix(&m).split_lambda2().unwrap();
            let (s2, e2) = x2.split_lambda2().unwrap();
            assert_eq!(s1, s2, "the scalar part is invariant");
            assert_eq!(e1, e2.apply_matrix(&m));
            // the c-free lift is equivariant as well
            if g >= 2 {
                let lhs = x3.apply_matrix(&m).split_lambda3().unwrap();
                let rhs = x3.split_lambda3().unwrap().apply_matrix(&m);
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn theta_check_is_invariant() {
    let space = SymplecticSpace::new(3).unwrap();
    let mut rng = SeededRng::new(99);
    let theta = TensorElement::theta_check(space);
    for _ in 0..10 {
        let m = random_symplectic(space, &mut rng, 5);
        assert_eq!(theta.apply_matrix(&m), theta);
    }
}

#[test]
fn johnson_derivation_is_equivariant() {
    // delta(M w)(M e_l) = M (delta(w)(e_l)) for symplectic M
    let space = SymplecticSpace::new(2).unwrap();
    let n = space.rank();
    let mut rng = SeededRng::new(7);
    let words3 = sorted_words(n, 3);
    for _ in 0..8 {
        let m = random_symplectic(space, &mut rng, 5);
        let w =
            TensorElement::basis_wedge(space, &word::unpack(words3[rng.below(words3.len())], 3), 0);
        let dw = torelli::johnson::delta_tilde(&w).unwrap();
        let dmw = torelli::johnson::delta_tilde(&w.apply_matrix(&m)).unwrap();
        for l in 0..n {
            // dmw evaluated on the column M e_l, by linearity
            let mut lhs = torelli::LieElement::zero(n);
            for (i, row) in m.iter().enumerate() {
                if row[l] != 0 {
                    lhs = lhs.add(&dmw.value(i as u8).scale(&rint(row[l])));
                }
            }
            let rhs = dw.value(l as u8).apply_matrix(&m);
            assert_eq!(lhs, rhs);
        }
    }
}
