use std::time::Instant;

use nichols_core::braiding::DiagonalBraiding;
use nichols_core::freealg::{coproduct, free_multiply, FreeElement, TensorSquareElement, Word};
use nichols_core::nichols::build_nichols_by_derivations;
use nichols_core::typea::{
    b_coefficient, identity_2_2_7, pbw_monomials, root_vector, verify_coproducts, verify_identities, verify_pbw,
    verify_presentation, verify_relation_suite, TypeAContext, TypeAModels, VerificationReport,
};
use nichols_core::{CycNumber, Error};

const CEILING: usize = 24;

fn assert_all_pass(r: &VerificationReport) {
    let failed: Vec<_> = r.failures().collect();
    assert!(failed.is_empty(), "failures: {failed:#?}");
}

/// Type A_2 with q of order 3 and q_12 = zeta_15, so that B-coefficients are nontrivial.
fn twisted_a2() -> TypeAContext {
    let d = DiagonalBraiding::new(15, vec![vec![5, 1], vec![9, 5]]).unwrap();
    TypeAContext::new(d).unwrap()
}

#[test]
fn b_coefficient_identities_up_to_rank_four() {
    for n in 1..=4 {
        for ctx in [TypeAContext::standard(n, 5).unwrap(), TypeAContext::standard(n, 7).unwrap()] {
            let q = ctx.q();
            let b = |i, j, p, r| b_coefficient(&ctx, i, j, p, r).unwrap();
            let pairs = ctx.root_pairs();
            for &(i, j) in &pairs {
                assert_eq!(b(i, j, i, j), q);
                if j <= n {
                    assert_eq!(&b(i, j, j, j + 1) * &b(j, j + 1, i, j), q.inv().unwrap());
                }
                for &(p, r) in &pairs {
                    for s in i + 1..j {
                        assert_eq!(&b(i, s, p, r) * &b(s, j, p, r), b(i, j, p, r));
                    }
                    for t in p + 1..r {
                        assert_eq!(&b(i, j, p, t) * &b(i, j, t, r), b(i, j, p, r));
                    }
                }
            }
        }
    }
}

#[test]
fn b_coefficient_rejects_bad_indices() {
    let ctx = TypeAContext::standard(2, 3).unwrap();
    assert!(matches!(b_coefficient(&ctx, 2, 2, 1, 2), Err(Error::IndexOutOfRange(_))));
    assert!(matches!(b_coefficient(&ctx, 1, 4, 1, 2), Err(Error::IndexOutOfRange(_))));
    assert!(matches!(root_vector(&ctx, 0, 1), Err(Error::IndexOutOfRange(_))));
}

#[test]
fn root_vector_examples() {
    let ctx = twisted_a2();
    let br = ctx.braiding().clone();
    for i in 1..=2 {
        assert_eq!(root_vector(&ctx, i, i + 1).unwrap(), FreeElement::generator(br.clone(), i - 1));
    }
    let one = CycNumber::one(15);
    let x1x2 = FreeElement::word(br.clone(), Word(vec![0, 1]), one.clone());
    let x2x1 = FreeElement::word(br.clone(), Word(vec![1, 0]), one);
    let b = b_coefficient(&ctx, 1, 2, 2, 3).unwrap();
    assert!(!b.is_one());
    let expected = x1x2.checked_sub(&x2x1.scale(&b)).unwrap();
    assert_eq!(root_vector(&ctx, 1, 3).unwrap(), expected);
}

#[test]
fn delta_e13_is_literal_in_tensor_algebra() {
    let ctx = twisted_a2();
    let br = ctx.braiding().clone();
    let e13 = root_vector(&ctx, 1, 3).unwrap();
    let one = FreeElement::one(br.clone());
    let x1 = FreeElement::generator(br.clone(), 0);
    let x2 = FreeElement::generator(br.clone(), 1);
    let f = &CycNumber::one(15) - &ctx.q().inv().unwrap();
    let expected = TensorSquareElement::tensor(&e13, &one)
        .unwrap()
        .checked_add(&TensorSquareElement::tensor(&one, &e13).unwrap())
        .unwrap()
        .checked_add(&TensorSquareElement::tensor(&x1, &x2).unwrap().scale(&f))
        .unwrap();
    assert_eq!(coproduct(&e13), expected);
}

#[test]
fn middle_coefficient_of_delta_e13_to_the_n() {
    for (order, ctx) in [(3u64, twisted_a2()), (5, TypeAContext::standard(2, 5).unwrap())] {
        let e13 = root_vector(&ctx, 1, 3).unwrap().pow(order as u32);
        let d = coproduct(&e13);
        let m = ctx.diagonal().modulus();
        let f = (&CycNumber::one(m) - &ctx.q().inv().unwrap()).pow(order);
        let b = b_coefficient(&ctx, 2, 3, 1, 2).unwrap().pow(order * (order - 1) / 2);
        let got = d.coefficient(&Word(vec![0; order as usize]), &Word(vec![1; order as usize]));
        assert_eq!(got, &f * &b, "N = {order}");
    }
}

fn models(ctx: &TypeAContext) -> TypeAModels {
    TypeAModels::build(ctx, CEILING).unwrap()
}

#[test]
fn suite_rank_two_order_three() {
    let ctx = TypeAContext::standard(2, 3).unwrap();
    let m = models(&ctx);
    assert_eq!(m.nichols.hilbert_series().top_degree(), Some(8));
    let r = verify_relation_suite(&ctx, &m).unwrap();
    assert_all_pass(&r);
    for tag in ["2.1.7", "2.2.400", "2.2.401", "2.2.6", "2.2.42", "2.2.43", "2.2.501", "commutationN", "2.2.3"] {
        assert!(r.with_tag(tag).count() > 0, "no instance of {tag}");
    }
    assert!(r.notes.iter().any(|n| n.contains("N = 3")));
    let c = verify_coproducts(&ctx, &m).unwrap();
    assert_all_pass(&c);
    assert_eq!(c.with_tag("2.2.500").count(), 3);
}

#[test]
fn suite_on_twisted_a2() {
    let ctx = twisted_a2();
    let m = models(&ctx);
    assert_all_pass(&verify_relation_suite(&ctx, &m).unwrap());
    assert_all_pass(&verify_coproducts(&ctx, &m).unwrap());
    assert_all_pass(&verify_pbw(&ctx, &m.nichols).unwrap());
}

#[test]
fn suite_rank_two_order_five() {
    let ctx = TypeAContext::standard(2, 5).unwrap();
    let m = models(&ctx);
    assert_all_pass(&verify_relation_suite(&ctx, &m).unwrap());
    assert_all_pass(&verify_coproducts(&ctx, &m).unwrap());
    let p = verify_pbw(&ctx, &m.nichols).unwrap();
    assert_all_pass(&p);
    assert_eq!(m.nichols.hilbert_series().total_dimension(), Some(125));
}

#[test]
fn suite_rank_three_order_three() {
    let start = Instant::now();
    let ctx = TypeAContext::standard(3, 3).unwrap();
    let m = models(&ctx);
    let r = verify_relation_suite(&ctx, &m).unwrap();
    assert_all_pass(&r);
    for tag in ["2.2.4", "2.2.4bis", "2.2.41", "2.2.7", "brcomm3", "brcomm3-hypotheses", "2.2.40"] {
        assert!(r.with_tag(tag).count() > 0, "no instance of {tag}");
    }
    assert!(r.with_tag("2.2.7").any(|c| c.instance == "i=1, p=2, j=3, r=4" && c.passed));
    assert_eq!(r.with_tag("2.2.6").count(), 4);
    assert_all_pass(&verify_coproducts(&ctx, &m).unwrap());
    let p = verify_pbw(&ctx, &m.nichols).unwrap();
    assert_all_pass(&p);
    assert_eq!(m.nichols.hilbert_series().total_dimension(), Some(729));
    eprintln!("A3, N = 3 suite: {:?}", start.elapsed());
}

#[test]
fn perturbed_coefficient_is_caught() {
    let ctx = TypeAContext::standard(3, 3).unwrap();
    let m = TypeAModels::build(&ctx, 8).unwrap();
    let q = ctx.q();
    let good = &b_coefficient(&ctx, 2, 3, 3, 4).unwrap() * &(&q - &CycNumber::one(3));
    let bad = &good * &q;
    let ok = verify_identities(&m, &[identity_2_2_7(&ctx, 1, 2, 3, 4, &good).unwrap()]).unwrap();
    assert_all_pass(&ok);
    let r = verify_identities(&m, &[identity_2_2_7(&ctx, 1, 2, 3, 4, &bad).unwrap()]).unwrap();
    let fail: Vec<_> = r.failures().collect();
    assert_eq!(fail.len(), 1);
    assert_eq!(fail[0].tag, "2.2.7");
    assert!(fail[0].witness.as_deref().unwrap().contains("degree 4"));
}

#[test]
fn ceiling_skips_with_note() {
    let ctx = TypeAContext::standard(2, 3).unwrap();
    let m = TypeAModels::build(&ctx, 5).unwrap();
    let r = verify_relation_suite(&ctx, &m).unwrap();
    assert_all_pass(&r);
    assert!(r.notes.iter().any(|n| n.starts_with("skipped commutationN")));
    assert!(matches!(verify_pbw(&ctx, &m.nichols), Err(Error::DepthInsufficient { .. })));
}

#[test]
fn pbw_rank_one() {
    for order in 3..=5u32 {
        let ctx = TypeAContext::standard(1, order).unwrap();
        let m = build_nichols_by_derivations(ctx.braiding(), 10).unwrap();
        assert_eq!(m.hilbert_series().coefficients(), vec![1; order as usize]);
        assert_all_pass(&verify_pbw(&ctx, &m).unwrap());
    }
}

#[test]
fn pbw_counts_rank_two() {
    let ctx = TypeAContext::standard(2, 3).unwrap();
    let m = build_nichols_by_derivations(ctx.braiding(), 12).unwrap();
    let r = verify_pbw(&ctx, &m).unwrap();
    assert_all_pass(&r);
    assert_eq!(m.hilbert_series().total_dimension(), Some(27));
    // degree d counts monomials a + 2b + c = d with exponents below 3
    let mut counts = vec![0usize; 9];
    for mono in pbw_monomials(&ctx, 3) {
        counts[mono.degree(&ctx)] += 1;
    }
    assert_eq!(counts, vec![1, 2, 4, 4, 5, 4, 4, 2, 1]);
    assert_eq!(m.hilbert_series().coefficients(), counts);
}

#[test]
fn pbw_monomials_are_products_of_root_vectors() {
    let ctx = TypeAContext::standard(2, 3).unwrap();
    let mono = &pbw_monomials(&ctx, 3)[13]; // exponents (1,1,1)
    assert_eq!(mono.exponents(), &[1, 1, 1]);
    let e = |i, j| root_vector(&ctx, i, j).unwrap();
    let direct = free_multiply(&free_multiply(&e(1, 2), &e(1, 3)).unwrap(), &e(2, 3)).unwrap();
    assert_eq!(mono.element(&ctx).unwrap(), direct);
}

#[test]
fn presentation_examples() {
    for (n, order, total) in [(2, 3, 27u64), (3, 3, 729)] {
        let ctx = TypeAContext::standard(n, order).unwrap();
        let m = build_nichols_by_derivations(ctx.braiding(), ctx.top_degree() + 2).unwrap();
        let r = verify_presentation(&ctx, &m).unwrap();
        assert_all_pass(&r);
        assert_eq!(m.hilbert_series().total_dimension(), Some(total));
    }
}

#[test]
fn presentation_even_order_is_flagged() {
    let ctx = TypeAContext::standard(2, 4).unwrap();
    let m = build_nichols_by_derivations(ctx.braiding(), ctx.top_degree() + 2).unwrap();
    let r = verify_presentation(&ctx, &m).unwrap();
    assert!(r.notes.iter().any(|n| n.contains("even")));
    assert_all_pass(&r);
    assert_eq!(m.hilbert_series().total_dimension(), Some(64));
}
