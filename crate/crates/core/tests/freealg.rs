use std::collections::BTreeMap;
use std::sync::Arc;

use nichols_core::braiding::{make_group_braiding, Braiding, DiagonalBraiding, FiniteGroup, MatrixBraiding, PhiKind};
use nichols_core::freealg::{
    adjoint_power, all_permutations, braided_commutator, coassociativity_sides, coproduct, counit, free_multiply,
    matsumoto_section, permutation_length, quantum_shuffle, quantum_symmetrizer, symmetrizer_by_factorization,
    twisted_square_multiply, word_operator, FreeElement, Permutation, TensorSquareElement, Word,
};
use nichols_core::linalg::{SparseMatrix, SparseVec};
use nichols_core::CycNumber;
use proptest::prelude::*;

fn diag(m: u32, e: Vec<Vec<i64>>) -> Arc<Braiding> {
    Arc::new(DiagonalBraiding::new(m, e).unwrap().into())
}

fn a2() -> Arc<Braiding> {
    Arc::new(DiagonalBraiding::type_a(2, 3).into())
}

fn coxeter_s3() -> Arc<Braiding> {
    Arc::new(make_group_braiding(PhiKind::Coxeter, FiniteGroup::symmetric(3)).unwrap().into())
}

fn jordanian() -> Arc<Braiding> {
    let i = |x| CycNumber::from_int(1, x);
    let m = vec![
        vec![i(1), i(1), i(0), i(0)],
        vec![i(0), i(0), i(1), i(1)],
        vec![i(0), i(1), i(0), i(0)],
        vec![i(0), i(0), i(0), i(1)],
    ];
    Arc::new(MatrixBraiding::new(2, m).unwrap().into())
}

fn test_braidings() -> Vec<Arc<Braiding>> {
    vec![a2(), diag(5, vec![vec![1, 2], vec![4, 3]]), coxeter_s3(), jordanian()]
}

fn w(letters: &[u8]) -> Word {
    Word(letters.to_vec())
}

fn one(b: &Arc<Braiding>) -> CycNumber {
    CycNumber::one(b.modulus())
}

fn elem(b: &Arc<Braiding>, letters: &[u8]) -> FreeElement {
    FreeElement::word(b.clone(), w(letters), one(b))
}

/// Scalar of c(u ⊗ v) for diagonal braidings.
fn chi(b: &Braiding, u: &Word, v: &Word) -> CycNumber {
    let t = b.braid_words(u, v);
    assert_eq!(t.len(), 1);
    t.into_values().next().unwrap()
}

#[test]
fn concatenation_product() {
    let b = a2();
    let x1 = FreeElement::generator(b.clone(), 0);
    let x2 = FreeElement::generator(b.clone(), 1);
    assert_eq!(free_multiply(&x1, &x2).unwrap(), elem(&b, &[0, 1]));
    assert_eq!(free_multiply(&FreeElement::one(b.clone()), &x2).unwrap(), x2);
    let s = &x1 + &x2;
    assert_eq!(&s * &x1, &elem(&b, &[0, 0]) + &elem(&b, &[1, 0]));
    let other = FreeElement::generator(coxeter_s3(), 0);
    assert!(free_multiply(&x1, &other).is_err());
}

#[test]
fn twisted_products() {
    let b = diag(7, vec![vec![1, 2], vec![3, 5]]);
    let e = Word::empty();
    let x1x = TensorSquareElement::pure(b.clone(), w(&[0]), e.clone(), one(&b));
    let yx2 = TensorSquareElement::pure(b.clone(), e.clone(), w(&[1]), one(&b));
    assert_eq!(
        twisted_square_multiply(&x1x, &yx2).unwrap(),
        TensorSquareElement::pure(b.clone(), w(&[0]), w(&[1]), one(&b))
    );
    let l = TensorSquareElement::pure(b.clone(), e.clone(), w(&[0]), one(&b));
    let r = TensorSquareElement::pure(b.clone(), w(&[1]), e.clone(), one(&b));
    let q12 = CycNumber::root_of_unity(7, 2);
    assert_eq!(
        twisted_square_multiply(&l, &r).unwrap(),
        TensorSquareElement::pure(b.clone(), w(&[1]), w(&[0]), q12)
    );
    // words of length two on both sides: four scalars
    let l = TensorSquareElement::pure(b.clone(), e.clone(), w(&[0, 1]), one(&b));
    let r = TensorSquareElement::pure(b.clone(), w(&[1, 1]), e.clone(), one(&b));
    let q = |i: i64| CycNumber::root_of_unity(7, i);
    let expected = &(&q(2) * &q(2)) * &(&q(5) * &q(5));
    assert_eq!(
        twisted_square_multiply(&l, &r).unwrap(),
        TensorSquareElement::pure(b, w(&[1, 1]), w(&[0, 1]), expected)
    );
}

#[test]
fn coproduct_low_degrees() {
    for b in test_braidings() {
        let x = FreeElement::generator(b.clone(), 0);
        let mut expected = TensorSquareElement::pure(b.clone(), w(&[0]), Word::empty(), one(&b));
        expected =
            expected.checked_add(&TensorSquareElement::pure(b.clone(), Word::empty(), w(&[0]), one(&b))).unwrap();
        assert_eq!(coproduct(&x), expected);

        // Δ(xy) = 1⊗xy + x⊗y + c(x⊗y) + xy⊗1
        let xy = elem(&b, &[0, 1]);
        let mut exp = TensorSquareElement::pure(b.clone(), Word::empty(), w(&[0, 1]), one(&b));
        exp = exp.checked_add(&TensorSquareElement::pure(b.clone(), w(&[0]), w(&[1]), one(&b))).unwrap();
        exp = exp.checked_add(&TensorSquareElement::pure(b.clone(), w(&[0, 1]), Word::empty(), one(&b))).unwrap();
        for (u, c) in b.braid_words(&w(&[0]), &w(&[1])) {
            exp = exp
                .checked_add(&TensorSquareElement::pure(b.clone(), w(&u.0[..1]), w(&u.0[1..]), c))
                .unwrap();
        }
        assert_eq!(coproduct(&xy), exp);
        assert_eq!(counit(&xy), CycNumber::zero(b.modulus()));
    }
}

#[test]
fn coproduct_components_are_shuffles() {
    for b in test_braidings() {
        let t = b.theta();
        for n in 1..=5usize {
            if t.pow(n as u32) > 250 {
                continue;
            }
            for i in 0..=n {
                let sh = quantum_shuffle(&b, i, n - i).unwrap();
                for word in Word::all(n, t) {
                    let d = coproduct(&elem(&b, &word.0)).bidegree(i, n - i);
                    let col = SparseVec::from_entries(
                        d.terms().iter().map(|((u, v), c)| (u.concat(v).rank(t) as u32, c.clone())),
                    );
                    assert_eq!(&col, sh.column(word.rank(t)), "{} (i={i}, n={n}) {:?}", b.kind_name(), word);
                }
            }
        }
    }
}

#[test]
fn braided_commutator_examples() {
    let b = diag(5, vec![vec![1, 2], vec![4, 0]]);
    let x1 = FreeElement::generator(b.clone(), 0);
    let x2 = FreeElement::generator(b.clone(), 1);
    let q12 = CycNumber::root_of_unity(5, 2);
    let expected = &elem(&b, &[0, 1]) - &elem(&b, &[1, 0]).scale(&q12);
    assert_eq!(braided_commutator(&x1, &x2).unwrap(), expected);
    assert_eq!(adjoint_power(&b, 0, 1, 1).unwrap(), expected);
    assert_eq!(adjoint_power(&b, 0, 0, 1).unwrap(), x2);
    assert!(braided_commutator(&x2, &x2).unwrap().is_zero());
    assert!(adjoint_power(&b, 0, 2, 0).is_err());
}

#[test]
fn adjoint_square_expansion() {
    // (ad x1)^2(x2) = x1x1x2 - q12(1 + q11) x1x2x1 + q11 q12^2 x2x1x1
    let b = a2();
    let q = |i: usize, j: usize| b.as_diagonal().unwrap().q(i, j);
    let one = CycNumber::one(3);
    let mid = &(&q(0, 1) * &(&one + &q(0, 0))) * &CycNumber::from_int(3, -1);
    let last = &q(0, 0) * &(&q(0, 1) * &q(0, 1));
    let expected = &(&elem(&b, &[0, 0, 1]) + &elem(&b, &[0, 1, 0]).scale(&mid)) + &elem(&b, &[1, 0, 0]).scale(&last);
    assert_eq!(adjoint_power(&b, 0, 2, 1).unwrap(), expected);
}

#[test]
fn group_commutator_needs_homogeneous_left() {
    let b = coxeter_s3();
    let mixed = &FreeElement::generator(b.clone(), 0) + &FreeElement::generator(b.clone(), 1);
    assert!(braided_commutator(&mixed, &FreeElement::generator(b.clone(), 2)).is_err());
    // x_(12) x_(23) and x_(13) x_(12) share the degree (12)(23)
    let homog = &elem(&b, &[0, 2]) + &elem(&b, &[1, 0]);
    assert!(braided_commutator(&homog, &FreeElement::generator(b, 2)).is_ok());
}

#[test]
fn matsumoto_examples() {
    assert!(matsumoto_section(&Permutation::identity(4)).is_empty());
    for i in 0..3u8 {
        let mut p = Permutation::identity(4);
        p.0.swap(i as usize, i as usize + 1);
        assert_eq!(matsumoto_section(&p), vec![i as usize + 1]);
    }
    assert_eq!(matsumoto_section(&Permutation(vec![2, 1, 0])), vec![1, 2, 1]);
}

#[test]
fn symmetrizer_examples() {
    for b in test_braidings() {
        let s2 = quantum_symmetrizer(&b, 2).unwrap();
        let c = b.c_matrix();
        let n = b.theta() * b.theta();
        for r in 0..n {
            for col in 0..n {
                let id = CycNumber::from_int(b.modulus(), (r == col) as i64);
                let got = s2.entry(r, col).cloned().unwrap_or_else(|| CycNumber::zero(b.modulus()));
                assert_eq!(got, &id + &c[r][col]);
            }
        }
        assert_eq!(quantum_symmetrizer(&b, 1).unwrap(), SparseMatrix::identity(b.theta(), b.modulus()));
        assert_eq!(quantum_symmetrizer(&b, 0).unwrap(), SparseMatrix::identity(1, b.modulus()));
    }
    let line = diag(7, vec![vec![3]]);
    let q = CycNumber::root_of_unity(7, 3);
    let one = CycNumber::one(7);
    let expected = &(&one + &q) * &(&(&one + &q) + &(&q * &q));
    assert_eq!(quantum_symmetrizer(&line, 3).unwrap().entry(0, 0), Some(&expected));
}

#[test]
fn symmetrizer_factorization() {
    for b in test_braidings() {
        let t = b.theta();
        for n in 0..=5usize {
            if t.pow(n as u32) > 250 {
                continue;
            }
            assert_eq!(quantum_symmetrizer(&b, n).unwrap(), symmetrizer_by_factorization(&b, n).unwrap());
        }
        // 𝔖₃ = (𝔖₂ ⊗ id) 𝔖₂,₁
        let s2 = quantum_symmetrizer(&b, 2).unwrap();
        let cols = (0..t.pow(3))
            .map(|r| {
                let (head, last) = (r / t, (r % t) as u32);
                s2.column(head).map_indices(|i| i * t as u32 + last)
            })
            .collect();
        let s2_id = SparseMatrix::from_columns(t.pow(3), cols);
        let sh = quantum_shuffle(&b, 2, 1).unwrap();
        assert_eq!(s2_id.compose(&sh), quantum_symmetrizer(&b, 3).unwrap());
    }
}

#[test]
fn shuffle_edge_cases() {
    for b in test_braidings() {
        assert_eq!(quantum_shuffle(&b, 1, 1).unwrap(), quantum_symmetrizer(&b, 2).unwrap());
        let n3 = b.theta().pow(3);
        assert_eq!(quantum_shuffle(&b, 0, 3).unwrap(), SparseMatrix::identity(n3, b.modulus()));
    }
    let big = diag(3, vec![vec![1; 4]; 4]);
    assert!(quantum_symmetrizer(&big, 9).is_err());
}

#[test]
fn braid_relations_hold() {
    for b in test_braidings() {
        for n in 3..=5usize {
            if b.theta().pow(n as u32) > 250 {
                continue;
            }
            for i in 1..n - 1 {
                let l = word_operator(&b, &[i, i + 1, i], n).unwrap();
                let r = word_operator(&b, &[i + 1, i, i + 1], n).unwrap();
                assert_eq!(l, r);
            }
        }
    }
}

fn random_element(b: &Arc<Braiding>, seed: &[(u8, u8, u8, u8, i8)]) -> FreeElement {
    let t = b.theta() as u8;
    let mut acc = FreeElement::zero(b.clone());
    for &(a, bb, c, d, k) in seed {
        let word = [a % t, bb % t, c % t, d % t];
        acc = &acc + &elem(b, &word).scale(&CycNumber::from_int(b.modulus(), k as i64));
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coassociativity_and_counit(seed in prop::collection::vec((0u8..3, 0u8..3, 0u8..3, 0u8..3, -3i8..4), 1..4), which in 0usize..4) {
        let b = test_braidings()[which].clone();
        let a = random_element(&b, &seed);
        let (l, r) = coassociativity_sides(&a);
        prop_assert_eq!(l, r);
        // (ε ⊗ id)Δ = id = (id ⊗ ε)Δ
        let d = coproduct(&a);
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for ((u, v), c) in d.terms() {
            if u.is_empty() { left.insert(v.clone(), c.clone()); }
            if v.is_empty() { right.insert(u.clone(), c.clone()); }
        }
        prop_assert_eq!(&left, a.terms());
        prop_assert_eq!(&right, a.terms());
    }

    #[test]
    fn coproduct_is_multiplicative(s1 in prop::collection::vec((0u8..3, 0u8..3, 0u8..3, 0u8..3, -3i8..4), 1..3),
                                   s2 in prop::collection::vec((0u8..3, 0u8..3, 0u8..3, 0u8..3, -3i8..4), 1..3),
                                   which in 0usize..4) {
        let b = test_braidings()[which].clone();
        let x = random_element(&b, &s1).component(4);
        let y = FreeElement::generator(b.clone(), s2[0].0 as usize % b.theta());
        let lhs = coproduct(&(&x * &y));
        let rhs = twisted_square_multiply(&coproduct(&x), &coproduct(&y)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_type_identity(w1 in prop::collection::vec(0u8..2, 1..3), w2 in prop::collection::vec(0u8..2, 1..3),
                            w3 in prop::collection::vec(0u8..2, 1..3), m in 0usize..2) {
        let b = [a2(), diag(5, vec![vec![1, 2], vec![4, 3]])][m].clone();
        let (a1, a2_, a3) = (elem(&b, &w1), elem(&b, &w2), elem(&b, &w3));
        let br = |x: &FreeElement, y: &FreeElement| braided_commutator(x, y).unwrap();
        let chi21 = chi(&b, &Word(w1.clone()), &Word(w2.clone()));
        let chi32 = chi(&b, &Word(w2.clone()), &Word(w3.clone()));
        let lhs = &br(&br(&a1, &a2_), &a3) + &(&a2_ * &br(&a1, &a3)).scale(&chi21);
        let rhs = &br(&a1, &br(&a2_, &a3)) + &(&br(&a1, &a3) * &a2_).scale(&chi32);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matsumoto_is_reduced(idx in 0usize..720) {
        let perms = all_permutations(6);
        let p = &perms[idx];
        let word = matsumoto_section(p);
        prop_assert_eq!(word.len(), permutation_length(p));
        // the product of the transpositions, rightmost applied first, recovers p
        let mut cur: Vec<u8> = (0..6).collect();
        for &i in word.iter().rev() {
            for v in cur.iter_mut() {
                if *v as usize == i - 1 { *v = i as u8; } else if *v as usize == i { *v = (i - 1) as u8; }
            }
        }
        prop_assert_eq!(&cur, &p.0);
    }
}
