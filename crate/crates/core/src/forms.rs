//! Alternating differential forms with rational-function coefficients:
//! wedge products, the exterior derivative, logarithmic differentials, the
//! derivation bracket, and the Euler contraction.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{usage, Result};
use crate::matrix::{rank_kernel_det, Matrix};
use crate::ratfun::RationalFunction;
use crate::scalar::{Field, Scalar};

/// Degree-p alternating form; keys are strictly increasing index tuples,
/// values nonzero rational functions. The degree-0 form is a single
/// rational function keyed by the empty tuple.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffForm {
    field: Field,
    nvars: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<u8>, RationalFunction>,
}

impl DiffForm {
    pub fn zero(field: Field, nvars: usize, degree: usize) -> DiffForm {
        DiffForm {
            field,
            nvars,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_ratfun(nvars: usize, value: RationalFunction) -> DiffForm {
        let field = value.field().clone();
        let mut f = DiffForm::zero(field, nvars, 0);
        if !value.is_zero() {
            f.coeffs.insert(Vec::new(), value);
        }
        f
    }

    /// Single term `coeff dx_{i1} ^ ... ^ dx_{ip}`; indices must be strictly
    /// increasing.
    pub fn monomial(
        field: Field,
        nvars: usize,
        indices: &[u8],
        coeff: RationalFunction,
    ) -> Result<DiffForm> {
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(usage("form indices must be strictly increasing"));
        }
        if indices.iter().any(|&i| i as usize >= nvars) {
            return Err(usage("form index exceeds the variable count"));
        }
        let mut f = DiffForm::zero(field, nvars, indices.len());
        if !coeff.is_zero() {
            f.coeffs.insert(indices.to_vec(), coeff);
        }
        Ok(f)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &RationalFunction)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, indices: &[u8]) -> RationalFunction {
        self.coeffs
            .get(indices)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.field.clone(), self.nvars))
    }

    fn add_term(&mut self, indices: Vec<u8>, coeff: RationalFunction) {
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(indices) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_compatible(&self, other: &DiffForm) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
    }

    pub fn add(&self, other: &DiffForm) -> DiffForm {
        self.assert_compatible(other);
        assert_eq!(self.degree, other.degree, "cannot add forms of mixed degree");
        let mut out = self.clone();
        for (t, c) in &other.coeffs {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &DiffForm) -> DiffForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffForm {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, f: &RationalFunction) -> DiffForm {
        let mut out = DiffForm::zero(self.field.clone(), self.nvars, self.degree);
        for (t, c) in &self.coeffs {
            out.add_term(t.clone(), c.mul(f));
        }
        out
    }

    pub fn scale_scalar(&self, s: &Scalar) -> DiffForm {
        self.scale(&RationalFunction::constant(
            self.field.clone(),
            self.nvars,
            s.clone(),
        ))
    }
}

/// Merge two strictly increasing tuples, returning the merged tuple and the
/// permutation sign; `None` when an index repeats.
fn merge_indices(a: &[u8], b: &[u8]) -> Option<(Vec<u8>, i32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining a-part.
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, sign))
}

/// Graded-commutative wedge product.
pub fn wedge(a: &DiffForm, b: &DiffForm) -> DiffForm {
    a.assert_compatible(b);
    let degree = a.degree + b.degree;
    let mut out = DiffForm::zero(a.field.clone(), a.nvars, degree);
    if degree > a.nvars {
        return out;
    }
    for (ta, ca) in &a.coeffs {
        for (tb, cb) in &b.coeffs {
            if let Some((t, sign)) = merge_indices(ta, tb) {
                let c = ca.mul(cb);
                out.add_term(t, if sign < 0 { c.neg() } else { c });
            }
        }
    }
    out
}

pub fn wedge_all(forms: &[DiffForm]) -> DiffForm {
    assert!(!forms.is_empty());
    let mut acc = forms[0].clone();
    for f in &forms[1..] {
        acc = wedge(&acc, f);
    }
    acc
}

/// Exterior derivative.
pub fn exterior_derivative(form: &DiffForm) -> DiffForm {
    let mut out = DiffForm::zero(form.field.clone(), form.nvars, form.degree + 1);
    for (t, c) in &form.coeffs {
        for v in 0..form.nvars {
            let dc = c.partial_derivative(v);
            if dc.is_zero() {
                continue;
            }
            if let Some((merged, sign)) = merge_indices(&[v as u8], t) {
                out.add_term(merged, if sign < 0 { dc.neg() } else { dc });
            }
        }
    }
    out
}

/// df/f as a 1-form; zero input is a usage error.
pub fn dlog(f: &RationalFunction) -> Result<DiffForm> {
    if f.is_zero() {
        return Err(usage("dlog of the zero function"));
    }
    let nvars = f.nvars();
    let mut out = DiffForm::zero(f.field().clone(), nvars, 1);
    // d(p/q)/(p/q) = dp/p - dq/q, computed without squaring denominators.
    for v in 0..nvars {
        let dn = f.num().partial_derivative(v);
        let dd = f.den().partial_derivative(v);
        let mut c = RationalFunction::zero(f.field().clone(), nvars);
        if !dn.is_zero() {
            c = c.add(&RationalFunction::new(dn, f.num().clone())?);
        }
        if !dd.is_zero() {
            c = c.sub(&RationalFunction::new(dd, f.den().clone())?);
        }
        out.add_term(vec![v as u8], c);
    }
    Ok(out)
}

/// The derivation bracket: alternating sum of wedge products, each omitting
/// one factor. Requires at least two 1-forms.
pub fn der_bracket(forms: &[DiffForm]) -> Result<DiffForm> {
    let p = forms.len();
    if p < 2 {
        return Err(usage("derivation bracket needs at least two 1-forms"));
    }
    if forms.iter().any(|f| f.degree() != 1) {
        return Err(usage("derivation bracket takes 1-forms only"));
    }
    let nvars = forms[0].nvars();
    let field = forms[0].field().clone();
    let mut acc = DiffForm::zero(field, nvars, p - 1);
    for k in 0..p {
        let rest: Vec<DiffForm> = forms
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, f)| f.clone())
            .collect();
        let w = if rest.is_empty() {
            unreachable!("p >= 2")
        } else {
            wedge_all(&rest)
        };
        acc = if k % 2 == 0 { acc.add(&w) } else { acc.sub(&w) };
    }
    Ok(acc)
}

/// Interior product with the Euler vector field sum x_i d/dx_i.
pub fn euler_contraction(form: &DiffForm) -> DiffForm {
    let degree = form.degree.saturating_sub(1);
    let mut out = DiffForm::zero(form.field.clone(), form.nvars, degree);
    if form.degree == 0 {
        return out;
    }
    for (t, c) in &form.coeffs {
        for (k, &idx) in t.iter().enumerate() {
            let var = RationalFunction::from_poly(crate::poly::MultiPoly::var(
                form.field.clone(),
                form.nvars,
                idx as usize,
            ));
            let coeff = c.mul(&var);
            let rest: Vec<u8> = t
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, &v)| v)
                .collect();
            out.add_term(rest, if k % 2 == 0 { coeff } else { coeff.neg() });
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct LogDependence {
    pub bracket_zero: bool,
    pub wedge_zero: bool,
    /// Nonzero vector (g_1, .., g_p) with sum zero and sum g_i dlog f_i = 0,
    /// when the bracket vanishes.
    pub witness: Option<Vec<RationalFunction>>,
}

/// Decide vanishing of the derivation bracket and of the plain wedge of
/// dlog f_1, .., dlog f_p by rank tests over the rational-function field.
///
/// The bracket vanishes iff the coefficient matrix of the dlogs, with a row
/// of ones stacked on top, drops rank; the wedge vanishes iff the
/// coefficient matrix alone does.
pub fn log_dependence(fs: &[RationalFunction]) -> Result<LogDependence> {
    let p = fs.len();
    if p < 2 {
        return Err(usage("log dependence needs at least two functions"));
    }
    for f in fs {
        if f.is_zero() {
            return Err(usage("log dependence of the zero function"));
        }
        if f.as_constant().is_some() {
            return Err(usage("log dependence requires nonconstant functions"));
        }
    }
    let nvars = fs[0].nvars();
    let field = fs[0].field().clone();
    let dlogs: Vec<DiffForm> = fs.iter().map(dlog).collect::<Result<_>>()?;
    let coeff_rows: Vec<Vec<RationalFunction>> = (0..nvars)
        .map(|v| dlogs.iter().map(|w| w.coefficient(&[v as u8])).collect())
        .collect();
    let coeff = Matrix::from_rows(coeff_rows.clone());
    let wedge_zero = rank_kernel_det(&coeff)?.rank < p;
    let mut stacked_rows = vec![vec![RationalFunction::one(field.clone(), nvars); p]];
    stacked_rows.extend(coeff_rows);
    let stacked = rank_kernel_det(&Matrix::from_rows(stacked_rows))?;
    let bracket_zero = stacked.rank < p;
    let witness = bracket_zero.then(|| stacked.kernel[0].clone());
    Ok(LogDependence {
        bracket_zero,
        wedge_zero,
        witness,
    })
}

impl fmt::Debug for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.degree == 0 {
            return write!(f, "{}", self.coeffs[&Vec::new()]);
        }
        let mut first = true;
        for (t, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) ")?;
            for (k, idx) in t.iter().enumerate() {
                if k > 0 {
                    write!(f, "^")?;
                }
                write!(f, "dx{idx}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_form, parse_poly, parse_ratfun};

    fn q() -> Field {
        Field::rationals()
    }

    fn rf(s: &str, nvars: usize) -> RationalFunction {
        parse_ratfun(s, &q(), nvars).unwrap()
    }

    #[test]
    fn product_rule_differential() {
        let f = DiffForm::from_ratfun(2, rf("x0*x1", 2));
        let df = exterior_derivative(&f);
        let expected = parse_form("(x1) dx0 + (x0) dx1", &q(), 2).unwrap();
        assert_eq!(df, expected);
    }

    #[test]
    fn d_squared_vanishes() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0008);
        for _ in 0..10 {
            let p = crate::random::random_poly(&q(), 3, 3, &mut rng);
            let d2 = exterior_derivative(&exterior_derivative(&DiffForm::from_ratfun(
                3,
                RationalFunction::from_poly(p),
            )));
            assert!(d2.is_zero());
        }
    }

    #[test]
    fn dlog_is_closed() {
        let f1 = rf("x0^2 + x1^2 - 2*x2^2", 3);
        let w = dlog(&f1).unwrap();
        assert!(exterior_derivative(&w).is_zero());
    }

    #[test]
    fn wedge_antisymmetry() {
        let dx0 = parse_form("dx0", &q(), 2).unwrap();
        let dx1 = parse_form("dx1", &q(), 2).unwrap();
        assert_eq!(wedge(&dx0, &dx1), wedge(&dx1, &dx0).neg());
        let odd = parse_form("(x0) dx0 + (x1 + 1) dx1", &q(), 2).unwrap();
        assert!(wedge(&odd, &odd).is_zero());
    }

    #[test]
    fn dlog_additivity() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0009);
        for _ in 0..10 {
            let f = crate::random::random_nonzero_poly(&q(), 2, 2, &mut rng);
            let g = crate::random::random_nonzero_poly(&q(), 2, 2, &mut rng);
            let prod = RationalFunction::from_poly(f.mul(&g));
            let lhs = dlog(&prod).unwrap();
            let rhs = dlog(&RationalFunction::from_poly(f.clone()))
                .unwrap()
                .add(&dlog(&RationalFunction::from_poly(g.clone())).unwrap());
            assert_eq!(lhs, rhs);
            let ratio = RationalFunction::new(f.clone(), g.clone()).unwrap();
            let diff = dlog(&RationalFunction::from_poly(f))
                .unwrap()
                .sub(&dlog(&RationalFunction::from_poly(g)).unwrap());
            assert_eq!(dlog(&ratio).unwrap(), diff);
        }
    }

    #[test]
    fn bracket_small_cases() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_000a);
        let w1 = crate::random::random_one_form(&q(), 3, &mut rng);
        let w2 = crate::random::random_one_form(&q(), 3, &mut rng);
        let w3 = crate::random::random_one_form(&q(), 3, &mut rng);
        assert_eq!(
            der_bracket(&[w1.clone(), w2.clone()]).unwrap(),
            w2.sub(&w1)
        );
        let b3 = der_bracket(&[w1.clone(), w2.clone(), w3.clone()]).unwrap();
        let expected = wedge(&w2, &w3)
            .sub(&wedge(&w1, &w3))
            .add(&wedge(&w1, &w2));
        assert_eq!(b3, expected);
        assert!(der_bracket(&[w1]).is_err());
    }

    #[test]
    fn euler_contraction_cases() {
        let dx0 = parse_form("dx0", &q(), 2).unwrap();
        let x0 = DiffForm::from_ratfun(2, rf("x0", 2));
        assert_eq!(euler_contraction(&dx0), x0);
        // For homogeneous f of degree d, contraction of df returns d*f.
        let f = parse_poly("x0^2*x1", &q(), 2).unwrap();
        let df = exterior_derivative(&DiffForm::from_ratfun(2, RationalFunction::from_poly(f.clone())));
        let got = euler_contraction(&df);
        let expected = DiffForm::from_ratfun(2, RationalFunction::from_poly(f).mul_scalar(&q().integer(3)));
        assert_eq!(got, expected);
    }

    #[test]
    fn euler_contraction_of_dlog_wedge() {
        // For degree-2 forms F1, F2: contraction of dlogF1 ^ dlogF2 is
        // 2(dlogF2 - dlogF1).
        let f1 = rf("x0^2 + x1^2 - 2*x2^2", 3);
        let f2 = rf("x0^2 + 2*x1^2 - 3*x2^2", 3);
        let w1 = dlog(&f1).unwrap();
        let w2 = dlog(&f2).unwrap();
        let got = euler_contraction(&wedge(&w1, &w2));
        let expected = w2.sub(&w1).scale_scalar(&q().integer(2));
        assert_eq!(got, expected);
    }

    #[test]
    fn pencil_relation_forces_dependence() {
        // 3*F1 - F2 - F3 = 0 for the bundled conic pencil.
        let f1 = rf("x0^2 + x1^2 - 2*x2^2", 3);
        let f2 = rf("x0^2 + 2*x1^2 - 3*x2^2", 3);
        let f3 = rf("2*x0^2 + x1^2 - 3*x2^2", 3);
        let rel = f1.mul_scalar(&q().integer(3)).sub(&f2).sub(&f3);
        assert!(rel.is_zero());

        let dep = log_dependence(&[f1.clone(), f2.clone(), f3.clone()]).unwrap();
        assert!(dep.bracket_zero);
        assert!(dep.wedge_zero);
        let witness = dep.witness.unwrap();
        // Witness satisfies both defining identities.
        let mut sum = RationalFunction::zero(q(), 3);
        let mut combo = DiffForm::zero(q(), 3, 1);
        for (g, f) in witness.iter().zip([&f1, &f2, &f3]) {
            sum = sum.add(g);
            combo = combo.add(&dlog(f).unwrap().scale(g));
        }
        assert!(sum.is_zero());
        assert!(combo.is_zero());

        // The triple wedge and the bracket vanish symbolically too.
        let ws: Vec<DiffForm> = [&f1, &f2, &f3].iter().map(|f| dlog(f).unwrap()).collect();
        assert!(wedge_all(&ws).is_zero());
        assert!(der_bracket(&ws).unwrap().is_zero());
    }

    #[test]
    fn coordinates_are_log_independent() {
        let xs: Vec<RationalFunction> = (0..3).map(|i| rf(&format!("x{i}"), 3)).collect();
        let dep = log_dependence(&xs).unwrap();
        assert!(!dep.bracket_zero);
        assert!(!dep.wedge_zero);
        assert!(dep.witness.is_none());
    }

    #[test]
    fn mixed_degree_pair_separates_bracket_and_wedge() {
        // (f, f^2): wedge vanishes, bracket equals dlog f which does not.
        let f = rf("x0 + x1", 2);
        let f2 = f.mul(&f);
        let dep = log_dependence(&[f.clone(), f2.clone()]).unwrap();
        assert!(dep.wedge_zero);
        assert!(!dep.bracket_zero);
        let bracket = der_bracket(&[dlog(&f).unwrap(), dlog(&f2).unwrap()]).unwrap();
        assert_eq!(bracket, dlog(&f).unwrap());
    }

    #[test]
    fn constant_inputs_rejected() {
        let c = rf("3", 2);
        let x = rf("x0", 2);
        assert!(log_dependence(&[c, x]).is_err());
    }

    #[test]
    fn form_print_round_trip() {
        let f1 = rf("x0^2 + x1^2 - 2*x2^2", 3);
        let w = dlog(&f1).unwrap();
        let s = w.to_string();
        let parsed = parse_form(&s, &q(), 3).unwrap();
        assert_eq!(parsed, w);
        let deg0 = DiffForm::from_ratfun(2, rf("(x0)/(x1)", 2));
        assert_eq!(parse_form(&deg0.to_string(), &q(), 2).unwrap(), deg0);
        assert_eq!(parse_form("0", &q(), 2).unwrap(), DiffForm::zero(q(), 2, 0));
    }
}
