//! Seeded generators for the randomized verification suites.
//!
//! Coefficients are kept small (integers in [-5, 5]) so that symbolic
//! expression growth stays bounded across the identity suites. All suites
//! fix and record their seeds.

use rand::Rng;

use crate::forms::DiffForm;
use crate::poly::{Monomial, MultiPoly};
use crate::ratfun::RationalFunction;
use crate::scalar::{rat_int, Field, Scalar};
use crate::util::monomials_of_degree;

pub fn random_int_scalar(field: &Field, rng: &mut impl Rng) -> Scalar {
    Scalar::from_rat(field.clone(), rat_int(rng.gen_range(-5..=5)))
}

pub fn random_scalar(field: &Field, rng: &mut impl Rng) -> Scalar {
    let deg = field.degree();
    let coeffs = (0..deg)
        .map(|_| crate::scalar::rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
        .collect();
    Scalar::from_coeffs(field.clone(), coeffs)
}

pub fn random_nonzero_scalar(field: &Field, rng: &mut impl Rng) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random polynomial with a handful of small-integer terms.
pub fn random_poly(field: &Field, nvars: usize, max_degree: u32, rng: &mut impl Rng) -> MultiPoly {
    let mut p = MultiPoly::zero(field.clone(), nvars);
    let nterms = rng.gen_range(1..=4);
    for _ in 0..nterms {
        let exps: Vec<u16> = (0..nvars)
            .map(|_| rng.gen_range(0..=max_degree.min(3)) as u16)
            .collect();
        let m = Monomial(exps);
        if m.total_degree() > max_degree {
            continue;
        }
        let c = random_int_scalar(field, rng);
        p = p.add(&MultiPoly::from_terms(field.clone(), nvars, [(m, c)]));
    }
    p
}

pub fn random_nonzero_poly(
    field: &Field,
    nvars: usize,
    max_degree: u32,
    rng: &mut impl Rng,
) -> MultiPoly {
    loop {
        let p = random_poly(field, nvars, max_degree, rng);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random homogeneous polynomial of exact degree `degree` (possibly zero).
pub fn random_homogeneous_poly(
    field: &Field,
    nvars: usize,
    degree: u32,
    rng: &mut impl Rng,
) -> MultiPoly {
    let terms = monomials_of_degree(nvars, degree)
        .into_iter()
        .map(|e| (Monomial(e), random_int_scalar(field, rng)));
    MultiPoly::from_terms(field.clone(), nvars, terms)
}

pub fn random_nonconstant_homogeneous_poly(
    field: &Field,
    nvars: usize,
    degree: u32,
    rng: &mut impl Rng,
) -> MultiPoly {
    loop {
        let p = random_homogeneous_poly(field, nvars, degree, rng);
        if !p.is_zero() && !p.is_constant() {
            return p;
        }
    }
}

/// Degree <= 1 polynomial with integer coefficients in [-5, 5].
pub fn random_linear_poly(field: &Field, nvars: usize, rng: &mut impl Rng) -> MultiPoly {
    let mut p = MultiPoly::constant(field.clone(), nvars, random_int_scalar(field, rng));
    for i in 0..nvars {
        let c = random_int_scalar(field, rng);
        p = p.add(&MultiPoly::var(field.clone(), nvars, i).mul_scalar(&c));
    }
    p
}

/// One-form with random linear-polynomial coefficients.
pub fn random_one_form(field: &Field, nvars: usize, rng: &mut impl Rng) -> DiffForm {
    let mut form = DiffForm::zero(field.clone(), nvars, 1);
    for i in 0..nvars {
        let coeff = RationalFunction::from_poly(random_linear_poly(field, nvars, rng));
        let term = DiffForm::monomial(field.clone(), nvars, &[i as u8], coeff)
            .expect("strictly increasing singleton index");
        form = form.add(&term);
    }
    form
}
