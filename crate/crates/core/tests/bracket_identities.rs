//! Randomized identity suites for the derivation bracket and the
//! logarithmic dependence criterion. Seeds are fixed; every check is an
//! exact symbolic zero test.

use nonvanish_core::forms::{
    der_bracket, dlog, exterior_derivative, log_dependence, wedge, wedge_all, DiffForm,
};
use nonvanish_core::random::{random_homogeneous_poly, random_one_form, random_poly};
use nonvanish_core::ratfun::RationalFunction;
use nonvanish_core::scalar::Field;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q() -> Field {
    Field::rationals()
}

fn permutation_sign(perm: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn random_forms(p: usize, ell: usize, rng: &mut ChaCha8Rng) -> Vec<DiffForm> {
    (0..p).map(|_| random_one_form(&q(), ell, rng)).collect()
}

#[test]
fn bracket_is_alternating_under_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de_0001);
    for _ in 0..15 {
        let p = rng.gen_range(2..=5);
        let ell = rng.gen_range(2..=4);
        let forms = random_forms(p, ell, &mut rng);
        let base = der_bracket(&forms).unwrap();
        for _ in 0..4 {
            let mut perm: Vec<usize> = (0..p).collect();
            perm.shuffle(&mut rng);
            let permuted: Vec<DiffForm> = perm.iter().map(|&i| forms[i].clone()).collect();
            let got = der_bracket(&permuted).unwrap();
            let expected = if permutation_sign(&perm) < 0 {
                base.neg()
            } else {
                base.clone()
            };
            assert_eq!(got, expected);
        }
    }
}

#[test]
fn bracket_split_identity() {
    // For 2 <= j <= p-2 the bracket splits into a leading bracket wedged
    // with the tail plus the signed head wedged with the tail bracket.
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de_0002);
    for _ in 0..12 {
        let p = rng.gen_range(4..=5);
        let ell = rng.gen_range(2..=4);
        let forms = random_forms(p, ell, &mut rng);
        let full = der_bracket(&forms).unwrap();
        for j in 2..=p - 2 {
            let head = der_bracket(&forms[..j]).unwrap();
            let tail = der_bracket(&forms[j..]).unwrap();
            let mut lhs = wedge(&head, &wedge_all(&forms[j..]));
            let head_wedge = wedge_all(&forms[..j]);
            let second = wedge(&head_wedge, &tail);
            lhs = if j % 2 == 0 {
                lhs.add(&second)
            } else {
                lhs.sub(&second)
            };
            assert_eq!(full, lhs, "split at {j} of {p}");
        }
    }
}

#[test]
fn bracket_telescopes_through_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de_0003);
    for _ in 0..15 {
        let p = rng.gen_range(3..=5);
        let ell = rng.gen_range(2..=4);
        let forms = random_forms(p, ell, &mut rng);
        let full = der_bracket(&forms).unwrap();
        let tail = der_bracket(&forms[1..]).unwrap();
        let diff = forms[0].sub(&forms[1]);
        assert_eq!(full, wedge(&diff, &tail).neg());
    }
}

#[test]
fn bracket_product_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de_0004);
    for _ in 0..15 {
        let p = rng.gen_range(2..=5);
        let ell = rng.gen_range(2..=4);
        let forms = random_forms(p, ell, &mut rng);
        let full = der_bracket(&forms).unwrap();
        // Consecutive differences, sign (-1)^(p-1).
        let diffs: Vec<DiffForm> = (0..p - 1)
            .map(|i| forms[i].sub(&forms[i + 1]))
            .collect();
        let mut rhs = if diffs.is_empty() {
            unreachable!("p >= 2")
        } else {
            wedge_all(&diffs)
        };
        if (p - 1) % 2 == 1 {
            rhs = rhs.neg();
        }
        assert_eq!(full, rhs);
        // Differences against the first form, no sign.
        let diffs1: Vec<DiffForm> = (1..p).map(|i| forms[i].sub(&forms[0])).collect();
        assert_eq!(full, wedge_all(&diffs1));
    }
}

#[test]
fn first_factor_wedge_recovers_full_wedge() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de_0005);
    for _ in 0..15 {
        let p = rng.gen_range(2..=5);
        let ell = rng.gen_range(2..=4);
        let forms = random_forms(p, ell, &mut rng);
        let bracket = der_bracket(&forms).unwrap();
        assert_eq!(wedge(&forms[0], &bracket), wedge_all(&forms));
    }
}

#[test]
fn derivative_is_graded_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de_0006);
    for _ in 0..10 {
        let ell = rng.gen_range(2..=3);
        let a = random_one_form(&q(), ell, &mut rng);
        let f = RationalFunction::from_poly(random_poly(&q(), ell, 2, &mut rng));
        let b = DiffForm::from_ratfun(ell, f);
        // d(b ^ a) = db ^ a + (-1)^0 b ^ da for the 0-form b.
        let lhs = exterior_derivative(&wedge(&b, &a));
        let rhs = wedge(&exterior_derivative(&b), &a).add(&wedge(&b, &exterior_derivative(&a)));
        assert_eq!(lhs, rhs);
        // Degree-1 against degree-1: d(a ^ c) = da ^ c - a ^ dc.
        let c = random_one_form(&q(), ell, &mut rng);
        let lhs2 = exterior_derivative(&wedge(&a, &c));
        let rhs2 = wedge(&exterior_derivative(&a), &c).sub(&wedge(&a, &exterior_derivative(&c)));
        assert_eq!(lhs2, rhs2);
    }
}

/// Random same-degree homogeneous families built as combinations of a small
/// basis, so that dependent and independent cases both occur.
#[test]
fn same_degree_bracket_iff_wedge() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de_0007);
    let mut dependent_seen = 0;
    let mut independent_seen = 0;
    for _ in 0..60 {
        let ell = rng.gen_range(3..=4);
        let deg = rng.gen_range(1..=2u32);
        let basis: Vec<_> = (0..2)
            .map(|_| random_homogeneous_poly(&q(), ell, deg, &mut rng))
            .collect();
        let p = rng.gen_range(2..=3);
        let mut fam = Vec::new();
        for _ in 0..p {
            let mut f = nonvanish_core::poly::MultiPoly::zero(q(), ell);
            for b in &basis {
                f = f.add(&b.mul_scalar(&q().integer(rng.gen_range(-3..=3))));
            }
            if f.is_zero() || f.is_constant() {
                f = random_homogeneous_poly(&q(), ell, deg, &mut rng);
            }
            if f.is_zero() || f.is_constant() {
                f = nonvanish_core::poly::MultiPoly::var(q(), ell, 0).pow(deg);
            }
            fam.push(RationalFunction::from_poly(f));
        }
        let dep = log_dependence(&fam).unwrap();
        assert_eq!(dep.bracket_zero, dep.wedge_zero, "family {fam:?}");
        if dep.bracket_zero {
            dependent_seen += 1;
        } else {
            independent_seen += 1;
        }
        // Cross-check the rank verdicts against the symbolic forms.
        let dlogs: Vec<DiffForm> = fam.iter().map(|f| dlog(f).unwrap()).collect();
        assert_eq!(der_bracket(&dlogs).unwrap().is_zero(), dep.bracket_zero);
        assert_eq!(wedge_all(&dlogs).is_zero(), dep.wedge_zero);
    }
    assert!(dependent_seen > 0, "suite never exercised a dependent family");
    assert!(independent_seen > 0, "suite never exercised an independent family");
}

#[test]
fn mixed_degree_equivalence_fails() {
    // Recorded counterexample: (f, f^2) has vanishing wedge but nonzero
    // bracket, because the members have different degrees.
    let f = RationalFunction::from_poly(
        nonvanish_core::parse::parse_poly("x0 + 2*x1", &q(), 2).unwrap(),
    );
    let dep = log_dependence(&[f.clone(), f.mul(&f)]).unwrap();
    assert!(dep.wedge_zero);
    assert!(!dep.bracket_zero);
}

#[test]
fn constant_combination_kills_bracket() {
    // If a nonzero constant combination of the members vanishes, the
    // bracket vanishes.
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de_0008);
    for _ in 0..10 {
        let ell = 3;
        let deg = 2;
        let f1 = random_homogeneous_poly(&q(), ell, deg, &mut rng);
        let f2 = random_homogeneous_poly(&q(), ell, deg, &mut rng);
        if f1.is_zero() || f2.is_zero() {
            continue;
        }
        let f3 = f1.mul_scalar(&q().integer(2)).add(&f2.mul_scalar(&q().integer(-3)));
        if f3.is_zero() || f3.is_constant() || f1.is_constant() || f2.is_constant() {
            continue;
        }
        let fam = vec![
            RationalFunction::from_poly(f1),
            RationalFunction::from_poly(f2),
            RationalFunction::from_poly(f3),
        ];
        let dep = log_dependence(&fam).unwrap();
        assert!(dep.bracket_zero);
    }
}

#[test]
fn multiplicative_relation_kills_bracket() {
    // f1 = g h, f2 = g, f3 = h satisfy f1 f2^-1 f3^-1 = 1.
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de_0009);
    for _ in 0..10 {
        let g = random_poly(&q(), 3, 2, &mut rng);
        let h = random_poly(&q(), 3, 2, &mut rng);
        if g.is_zero() || h.is_zero() || g.is_constant() || h.is_constant() {
            continue;
        }
        let fam = vec![
            RationalFunction::from_poly(g.mul(&h)),
            RationalFunction::from_poly(g),
            RationalFunction::from_poly(h),
        ];
        let dep = log_dependence(&fam).unwrap();
        assert!(dep.bracket_zero);
    }
}
