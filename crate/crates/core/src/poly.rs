//! Sparse multivariate polynomials with exact field coefficients.
//!
//! Exponent vectors are dense fixed-length arrays over at most
//! [`MAX_VARS`] variables; term maps are kept pruned of zero coefficients
//! and ordered graded-lexicographically.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{pole, usage, Result};
use crate::scalar::{Field, Scalar};

pub const MAX_VARS: usize = 16;

/// Exponent vector ordered by total degree, then lexicographically with
/// earlier variables weighing more.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn constant(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                for (a, b) in self.0.iter().zip(&other.0) {
                    if a != b {
                        return a.cmp(b);
                    }
                }
                std::cmp::Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: Field, nvars: usize) -> MultiPoly {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        MultiPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, value: Scalar) -> MultiPoly {
        let mut p = MultiPoly::zero(field, nvars);
        if !value.is_zero() {
            p.terms.insert(Monomial::constant(nvars), value);
        }
        p
    }

    pub fn one(field: Field, nvars: usize) -> MultiPoly {
        let one = field.one();
        MultiPoly::constant(field, nvars, one)
    }

    pub fn var(field: Field, nvars: usize, index: usize) -> MultiPoly {
        assert!(index < nvars, "variable index out of range");
        let mut p = MultiPoly::zero(field.clone(), nvars);
        p.terms.insert(Monomial::var(nvars, index), field.one());
        p
    }

    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> MultiPoly {
        let mut p = MultiPoly::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.total_degree() == 0 && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// The constant value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(self.field.zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_compatible(&self, other: &MultiPoly) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert_eq!(self.field, other.field, "coefficient field mismatch");
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_compatible(other);
        let mut out = MultiPoly::zero(self.field.clone(), self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn mul_scalar(&self, s: &Scalar) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(self.field.clone(), self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.mul(s);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.field.clone(), self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = MultiPoly::zero(self.field.clone(), self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            out.add_term(Monomial(exps), c.mul(&self.field.integer(e as i64)));
        }
        out
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(usage(format!(
                "evaluation point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&point[i].pow(e as u32));
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Common degree of all terms, `None` if inhomogeneous or zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut iter = self.terms.keys();
        let d = iter.next()?.total_degree();
        if iter.all(|m| m.total_degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.leading().map(|(_, c)| c)
    }

    /// Exact quotient `self / divisor`, or `None` if it does not divide.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        self.assert_compatible(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quo = MultiPoly::zero(self.field.clone(), self.nvars);
        let (dm, dc) = divisor.leading().unwrap();
        let dc_inv = dc.inv().unwrap();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            let qm = rm.div(dm)?;
            let qc = rc.mul(&dc_inv);
            let mut t = MultiPoly::zero(self.field.clone(), self.nvars);
            t.terms.insert(qm, qc);
            rem = rem.sub(&t.mul(divisor));
            quo = quo.add(&t);
        }
        Some(quo)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut min = vec![u16::MAX; self.nvars];
        for m in self.terms.keys() {
            for (acc, &e) in min.iter_mut().zip(&m.0) {
                *acc = (*acc).min(e);
            }
        }
        if self.terms.is_empty() {
            return Monomial::constant(self.nvars);
        }
        Monomial(min)
    }

    pub fn div_monomial(&self, m: &Monomial) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field.clone(), self.nvars);
        for (mm, c) in &self.terms {
            out.terms.insert(mm.div(m).expect("monomial divides"), c.clone());
        }
        out
    }

    /// Homogenize to `target_degree` with a fresh variable prepended at
    /// index 0 (existing variables shift up by one).
    pub fn homogenize(&self, target_degree: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field.clone(), self.nvars + 1);
        for (m, c) in &self.terms {
            let deg = m.total_degree();
            assert!(deg <= target_degree, "target degree below term degree");
            let mut exps = Vec::with_capacity(self.nvars + 1);
            exps.push((target_degree - deg) as u16);
            exps.extend_from_slice(&m.0);
            out.terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    /// Apply a linear change of variables: variable i is replaced by the
    /// polynomial `subs[i]` (all over the same field and variable count).
    pub fn substitute(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars);
        let nvars_out = subs.first().map_or(self.nvars, MultiPoly::nvars);
        let mut out = MultiPoly::zero(self.field.clone(), nvars_out);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(self.field.clone(), nvars_out, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&subs[i].pow(e as u32));
                }
            }
            out = out.add(&term);
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Leading (graded-lex greatest) terms first.
        for (m, c) in self.terms.iter().rev() {
            let (sign_negative, mag) = match c.as_rational() {
                Some(r) if r < &num_rational::BigRational::from_integer(0.into()) => {
                    (true, c.neg().to_string())
                }
                Some(_) => (false, c.to_string()),
                None => (false, format!("({c})")),
            };
            if first {
                if sign_negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = m.total_degree() == 0;
            let coeff_is_one = mag == "1";
            if is_const || !coeff_is_one {
                write!(f, "{mag}")?;
            }
            let mut wrote_var = !is_const && !coeff_is_one;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_var {
                    write!(f, "*")?;
                }
                write!(f, "x{i}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote_var = true;
            }
        }
        Ok(())
    }
}

/// Value of a homogeneous-coordinate constraint: evaluation helper shared by
/// base-point checks, with pole reporting for rational functions layered on
/// top.
pub fn eval_or_pole(p: &MultiPoly, point: &[Scalar]) -> Result<Scalar> {
    p.evaluate(point).map_err(|e| pole(e.to_string()))
}
