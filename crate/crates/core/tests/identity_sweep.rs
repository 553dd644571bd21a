//! Heavier sweeps over the identity family and its mod-p program, plus the
//! elementary operator congruences behind the choice of operator.

use num_bigint::BigInt;

use divpow_core::ring::Polynomial;
use divpow_core::{
    lucas_vanishing_check, mod_p_specialize, verify_identity, MatrixMinors,
};

#[test]
fn identity_holds_through_order_eight() {
    for k in 0..=8 {
        let report = verify_identity(k);
        assert!(report.verified, "identity failed at k={k}");
        assert_eq!(report.cleared.term_count(), 0);
        let expected = ((k + 1) * (k + 2) / 2) as usize;
        assert_eq!(report.term_counts, [expected; 3]);
    }
}

#[test]
fn mod_p_program_through_power_bound() {
    // every prime power p^e <= 32
    for p in [2u64, 3, 5, 7] {
        let mut e = 1u32;
        while p.pow(e) <= 32 {
            assert!(
                lucas_vanishing_check(p, e, 32).unwrap(),
                "binomial vanishing failed at p={p} e={e}"
            );
            let report = mod_p_specialize(p, e, 32).unwrap();
            assert!(report.verified, "mod-p specialization failed at p={p} e={e}");
            e += 1;
        }
    }
}

#[test]
fn operator_sends_scaled_minor_powers_to_frobenius_powers() {
    // (1/k!)^3 d^k/du^k d^k/dy^k d^k/dz^k at k = p^e - 1 maps
    // u d2^(p^e-1) d3^(p^e-1) to u^(p^e) mod p, and cyclically
    let scene = MatrixMinors::new();
    for (p, e) in [(2u64, 1u32), (2, 2), (3, 1), (5, 1)] {
        let q = p.pow(e) as u32;
        let op = scene.operator_uyz(q - 1);
        for t in 0..3usize {
            let head = scene.variable(t);
            let input = head
                .try_mul(&scene.minor((t + 1) % 3).pow(q - 1))
                .unwrap()
                .try_mul(&scene.minor((t + 2) % 3).pow(q - 1))
                .unwrap();
            let image = op.apply_to_poly(&input).reduce_mod_p(p).unwrap();
            let expected = head.pow(q).reduce_mod_p(p).unwrap();
            assert_eq!(image, expected, "congruence failed at p={p} e={e} slot {t}");
        }
    }
}

#[test]
fn minor_product_matches_independent_expansion() {
    // a from-scratch expansion routine (flat vectors, sort and merge) used
    // as the oracle for the kernel's multiplication
    let scene = MatrixMinors::new();
    let naive = naive_product(&[scene.minor(0), scene.minor(1), scene.minor(2)]);
    let fast = &(scene.minor(0) * scene.minor(1)) * scene.minor(2);
    let fast_terms: Vec<(Vec<u32>, BigInt)> = fast
        .terms()
        .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
        .collect();
    assert_eq!(fast_terms, naive);
    assert_eq!(
        fast.to_string(),
        "-u^2*v*y*z^2 + u^2*w*y^2*z + u*v^2*x*z^2 - u*w^2*x*y^2 - v^2*w*x^2*z + v*w^2*x^2*y"
    );
    assert_eq!(fast.degree(), 6);
    assert!(fast.term_count() <= 48);
}

/// Expands a product of polynomials without the kernel's term maps:
/// cartesian products into a flat vector, then sort and merge.
fn naive_product(factors: &[&Polynomial]) -> Vec<(Vec<u32>, BigInt)> {
    let nvars = factors[0].vars().len();
    let mut acc: Vec<(Vec<u32>, BigInt)> = vec![(vec![0; nvars], BigInt::from(1))];
    for f in factors {
        let f_terms: Vec<(Vec<u32>, BigInt)> = f
            .terms()
            .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
            .collect();
        let mut next = Vec::with_capacity(acc.len() * f_terms.len());
        for (ea, ca) in &acc {
            for (eb, cb) in &f_terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                next.push((exps, ca * cb));
            }
        }
        acc = next;
    }
    // graded-lex ascending, merging equal monomials and dropping zeros
    acc.sort_by(|(a, _), (b, _)| {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    let mut merged: Vec<(Vec<u32>, BigInt)> = Vec::new();
    for (e, c) in acc {
        match merged.last_mut() {
            Some((le, lc)) if *le == e => *lc += c,
            _ => merged.push((e, c)),
        }
    }
    merged.retain(|(_, c)| *c != BigInt::from(0));
    merged
}

#[test]
fn generation_reproduces_the_identity_family() {
    // applying the u,y,z operator to the top-row cocycle recovers the
    // literal sums on each component, up to the cochain signs
    use divpow_core::{build_identity_sums, generate_identity};
    let scene = MatrixMinors::new();
    for k in 0..=4u32 {
        let generated =
            generate_identity(&scene.syzygy_top_row(), &scene.operator_uyz(k)).unwrap();
        assert!(generated.verified, "generation failed at k={k}");
        let built = build_identity_sums(k);
        assert!(generated.cochain.component(&[0, 1]).sub(&built[2]).is_zero());
        assert!(generated.cochain.component(&[0, 2]).add(&built[1]).is_zero());
        assert!(generated.cochain.component(&[1, 2]).sub(&built[0]).is_zero());
    }
}

#[test]
fn values_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<Polynomial>();
    assert_send_sync::<divpow_core::DividedPowerOp>();
    assert_send_sync::<divpow_core::RationalSum>();
    assert_send_sync::<divpow_core::CechCochain>();
    assert_send_sync::<divpow_core::Syzygy>();
}

#[test]
fn single_variable_basis_inclusion() {
    // over a one-element basis, the degree-0 coboundary is the inclusion
    // of a polynomial into the localization
    use divpow_core::cech::CechCochain;
    use divpow_core::ratfun::{DenomBasis, RationalSum, RationalTerm};
    use divpow_core::VarTable;

    let vars = VarTable::new(["x"]).unwrap();
    let x = Polynomial::variable(&vars, 0);
    let basis = DenomBasis::new(&vars, vec![x.clone()]);
    let r = x.pow(2).try_add(&Polynomial::one(&vars)).unwrap();
    let mut c = CechCochain::zero(&basis, 0).unwrap();
    c.set_component(&[], RationalSum::from_term(RationalTerm::from_polynomial(&basis, r.clone())));
    let d = c.coboundary().unwrap();
    let term = d.component(&[0]).terms().next().unwrap();
    assert_eq!(term.numerator(), &r);
    assert_eq!(term.denom_exponents(), &[0]);
}
