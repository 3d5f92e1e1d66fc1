//! Exact scalars: elements of Q or of a simple extension Q[t]/(m(t)).
//!
//! Extension fields are limited to degree 2 and 3 minimal polynomials;
//! irreducibility is decided by the rational-root/discriminant test, which is
//! complete in those degrees.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{usage, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Coefficient field description: the rationals, or Q[t]/(m(t)) for a monic
/// irreducible m of degree 2 or 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    /// Minimal polynomial coefficients, constant term first, monic.
    Extension { minimal_poly: Vec<Rat> },
}

/// Shared handle to a [`FieldSpec`]; cheap to clone and compare.
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.spec() {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Extension { minimal_poly } => {
                write!(f, "Q[t]/({})", poly_in_t_string(minimal_poly))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub(crate) fn poly_in_t_string(coeffs: &[Rat]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let show_coeff = k == 0 || !mag.is_one();
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        if k > 0 {
            if show_coeff {
                out.push('*');
            }
            out.push('t');
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldSpec::Rationals))
    }

    /// Build Q[t]/(m(t)). Rejects non-monic, degree < 2, degree > 3, and
    /// reducible polynomials.
    pub fn extension(minimal_poly: Vec<Rat>) -> Result<Field> {
        let deg = minimal_poly.len().saturating_sub(1);
        if deg < 2 {
            return Err(usage("minimal polynomial must have degree >= 2"));
        }
        if deg > 3 {
            return Err(usage(
                "extension degree > 3 is not supported (irreducibility test is degree <= 3)",
            ));
        }
        match minimal_poly.last() {
            Some(lead) if lead.is_one() => {}
            _ => return Err(usage("minimal polynomial must be monic")),
        }
        check_irreducible(&minimal_poly)?;
        Ok(Field(Arc::new(FieldSpec::Extension { minimal_poly })))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    /// Dimension of the field as a Q-vector space.
    pub fn degree(&self) -> usize {
        match self.spec() {
            FieldSpec::Rationals => 1,
            FieldSpec::Extension { minimal_poly } => minimal_poly.len() - 1,
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.spec(), FieldSpec::Rationals)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_rat(self.clone(), Rat::zero())
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_rat(self.clone(), Rat::one())
    }

    pub fn integer(&self, n: i64) -> Scalar {
        Scalar::from_rat(self.clone(), rat_int(n))
    }

    pub fn rational(&self, n: i64, d: i64) -> Scalar {
        Scalar::from_rat(self.clone(), rat(n, d))
    }

    /// The class of t, when the field is an extension.
    pub fn generator(&self) -> Result<Scalar> {
        match self.spec() {
            FieldSpec::Rationals => Err(usage("the rationals have no extension generator")),
            FieldSpec::Extension { .. } => {
                let mut coeffs = vec![Rat::zero(); self.degree()];
                coeffs[1] = Rat::one();
                Ok(Scalar {
                    field: self.clone(),
                    coeffs,
                })
            }
        }
    }
}

/// Clear denominators and divide by integer content: primitive integer
/// coefficients with the same roots.
fn primitive_integer_coeffs(coeffs: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for c in &ints {
        gcd = gcd.gcd(c);
    }
    if gcd.is_zero() || gcd.is_one() {
        ints
    } else {
        ints.iter().map(|c| c / &gcd).collect()
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut divs = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            divs.push(d.clone());
            divs.push(&n / &d);
        }
        d += 1;
    }
    divs
}

/// Degree 2: discriminant square test. Degree 3: rational-root test.
fn check_irreducible(coeffs: &[Rat]) -> Result<()> {
    let ints = primitive_integer_coeffs(coeffs);
    let deg = ints.len() - 1;
    if ints[0].is_zero() {
        return Err(usage("minimal polynomial is reducible (root t = 0)"));
    }
    match deg {
        2 => {
            let disc = &ints[1] * &ints[1] - BigInt::from(4) * &ints[2] * &ints[0];
            if is_perfect_square(&disc) {
                return Err(usage("minimal polynomial is reducible (square discriminant)"));
            }
        }
        3 => {
            // A cubic over Q is reducible iff it has a rational root p/q with
            // p | a0 and q | a3.
            let bound = BigInt::from(1_000_000_000_000i64);
            if ints[0].abs() > bound || ints[3].abs() > bound {
                return Err(usage(
                    "rational-root test limit exceeded; use smaller minimal polynomial coefficients",
                ));
            }
            for p in divisors(&ints[0]) {
                for q in divisors(&ints[3]) {
                    for sign in [1i64, -1] {
                        let root = Rat::new(&p * BigInt::from(sign), q.clone());
                        let mut val = Rat::zero();
                        for c in ints.iter().rev() {
                            val = val * &root + Rat::from(c.clone());
                        }
                        if val.is_zero() {
                            return Err(usage(format!(
                                "minimal polynomial is reducible (rational root {root})"
                            )));
                        }
                    }
                }
            }
        }
        _ => unreachable!("degree bounds checked by caller"),
    }
    Ok(())
}

/// An element of the coefficient field, stored as the reduced residue
/// modulo the minimal polynomial (a single rational when the field is Q).
#[derive(Clone)]
pub struct Scalar {
    field: Field,
    /// Length equals `field.degree()`.
    coeffs: Vec<Rat>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.field == other.field {
            return self.coeffs == other.coeffs;
        }
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => panic!("comparing scalars from distinct extension fields"),
        }
    }
}
impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            write!(f, "{r}")
        } else {
            write!(f, "{}", poly_in_t_string(&self.coeffs))
        }
    }
}

impl Scalar {
    pub fn from_rat(field: Field, value: Rat) -> Scalar {
        let mut coeffs = vec![Rat::zero(); field.degree()];
        coeffs[0] = value;
        Scalar { field, coeffs }
    }

    /// Residue from raw t-coefficients (any length; reduced mod m(t)).
    pub fn from_coeffs(field: Field, coeffs: Vec<Rat>) -> Scalar {
        let reduced = reduce_mod(&field, coeffs);
        Scalar {
            field,
            coeffs: reduced,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rat::is_zero)
    }

    /// The rational value, when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(Rat::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_integer())
    }

    pub fn is_nonnegative_integer(&self) -> bool {
        self.as_rational()
            .is_some_and(|r| r.is_integer() && !r.is_negative())
    }

    fn promote(&self, field: &Field) -> Scalar {
        if &self.field == field {
            return self.clone();
        }
        match self.as_rational() {
            Some(r) => Scalar::from_rat(field.clone(), r.clone()),
            None => panic!("cannot mix elements of distinct extension fields"),
        }
    }

    fn join_fields(&self, other: &Scalar) -> Field {
        if self.field == other.field || other.field.is_rationals() {
            self.field.clone()
        } else if self.field.is_rationals() {
            other.field.clone()
        } else {
            panic!("cannot mix elements of distinct extension fields")
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let field = self.join_fields(other);
        let a = self.promote(&field);
        let b = other.promote(&field);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Scalar { field, coeffs }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        let field = self.join_fields(other);
        let a = self.promote(&field);
        let b = other.promote(&field);
        let deg = field.degree();
        if deg == 1 {
            return Scalar::from_rat(field, &a.coeffs[0] * &b.coeffs[0]);
        }
        let mut prod = vec![Rat::zero(); 2 * deg - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] = &prod[i + j] + x * y;
            }
        }
        Scalar::from_coeffs(field, prod)
    }

    pub fn mul_rat(&self, r: &Rat) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self.field.spec() {
            FieldSpec::Rationals => Some(Scalar::from_rat(
                self.field.clone(),
                self.coeffs[0].recip(),
            )),
            FieldSpec::Extension { minimal_poly } => {
                let inv = inverse_mod(&self.coeffs, minimal_poly);
                Some(Scalar::from_coeffs(self.field.clone(), inv))
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

fn reduce_mod(field: &Field, mut coeffs: Vec<Rat>) -> Vec<Rat> {
    let deg = field.degree();
    match field.spec() {
        FieldSpec::Rationals => {
            let mut c = coeffs;
            c.truncate(1);
            if c.is_empty() {
                c.push(Rat::zero());
            }
            c
        }
        FieldSpec::Extension { minimal_poly } => {
            // m monic: t^deg = -(m_0 + m_1 t + ... + m_{deg-1} t^{deg-1})
            while coeffs.len() > deg {
                let top = coeffs.pop().unwrap();
                if !top.is_zero() {
                    let k = coeffs.len() - deg;
                    for i in 0..deg {
                        coeffs[k + i] = &coeffs[k + i] - &top * &minimal_poly[i];
                    }
                }
            }
            coeffs.resize(deg, Rat::zero());
            coeffs
        }
    }
}

/// Extended Euclid in Q[t]: inverse of `a` modulo the irreducible `m`.
fn inverse_mod(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
    fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
        while v.last().is_some_and(Rat::is_zero) {
            v.pop();
        }
        v
    }
    fn divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let mut rem = num.to_vec();
        let dd = den.len() - 1;
        let lead = den.last().unwrap();
        let mut quo = vec![Rat::zero(); num.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / lead;
            quo[k] = c.clone();
            for i in 0..=dd {
                rem[k + i] = &rem[k + i] - &c * &den[i];
            }
            rem = trim(rem);
            if rem.is_empty() {
                break;
            }
        }
        (quo, rem)
    }
    fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + x * y;
            }
        }
        trim(out)
    }
    fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let n = a.len().max(b.len());
        let mut out = vec![Rat::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] = x.clone();
        }
        for (i, y) in b.iter().enumerate() {
            out[i] = &out[i] - y;
        }
        trim(out)
    }

    // Invariant: r0 = s0*a (mod m), r1 = s1*a (mod m).
    let mut r0 = m.to_vec();
    let mut r1 = trim(a.to_vec());
    let mut s0: Vec<Rat> = Vec::new();
    let mut s1 = vec![Rat::one()];
    while !r1.is_empty() && r1.len() > 1 {
        let (q, r) = divmod(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    assert!(
        !r1.is_empty(),
        "element shares a factor with the minimal polynomial"
    );
    // r1 is a nonzero constant c: inverse is s1 / c.
    let c = r1[0].recip();
    s1.iter().map(|x| x * &c).collect()
}
