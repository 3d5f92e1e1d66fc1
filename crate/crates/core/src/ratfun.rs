//! Rational functions as reduced-lightly numerator/denominator pairs.
//!
//! Fractions are not kept gcd-reduced: equality is decided by
//! cross-multiplication, and a cheap normalization (monic denominator,
//! common monomial factor stripped) bounds growth without multivariate gcd.

use std::fmt;

use crate::error::{pole, usage, Result};
use crate::poly::MultiPoly;
use crate::scalar::{Field, Scalar};

#[derive(Clone)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(usage("zero denominator"));
        }
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        Ok(rf)
    }

    pub fn from_poly(num: MultiPoly) -> RationalFunction {
        let den = MultiPoly::one(num.field().clone(), num.nvars());
        RationalFunction { num, den }
    }

    pub fn zero(field: Field, nvars: usize) -> RationalFunction {
        RationalFunction::from_poly(MultiPoly::zero(field, nvars))
    }

    pub fn one(field: Field, nvars: usize) -> RationalFunction {
        RationalFunction::from_poly(MultiPoly::one(field, nvars))
    }

    pub fn constant(field: Field, nvars: usize, value: Scalar) -> RationalFunction {
        RationalFunction::from_poly(MultiPoly::constant(field, nvars, value))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The polynomial value when the denominator is a unit or divides the
    /// numerator exactly.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        if let Some(c) = self.den.constant_value() {
            return Some(self.num.mul_scalar(&c.inv().expect("nonzero denominator")));
        }
        self.num.div_exact(&self.den)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        self.as_poly().and_then(|p| p.constant_value())
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one(self.num.field().clone(), self.num.nvars());
            return;
        }
        // Strip the common monomial factor of numerator and denominator.
        let mn = self.num.monomial_content();
        let md = self.den.monomial_content();
        let common = crate::poly::Monomial(
            mn.0.iter()
                .zip(&md.0)
                .map(|(a, b)| *a.min(b))
                .collect::<Vec<_>>(),
        );
        if common.total_degree() > 0 {
            self.num = self.num.div_monomial(&common);
            self.den = self.den.div_monomial(&common);
        }
        // Monic denominator.
        let lead = self.den.leading_coefficient().expect("nonzero denominator");
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero leading coefficient");
            self.num = self.num.mul_scalar(&inv);
            self.den = self.den.mul_scalar(&inv);
        }
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        rf
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        let mut rf = RationalFunction {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        };
        rf.normalize();
        rf
    }

    pub fn mul_scalar(&self, s: &Scalar) -> RationalFunction {
        let mut rf = RationalFunction {
            num: self.num.mul_scalar(s),
            den: self.den.clone(),
        };
        rf.normalize();
        rf
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if other.is_zero() {
            return Err(usage("division by the zero rational function"));
        }
        let mut rf = RationalFunction {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        };
        rf.normalize();
        Ok(rf)
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        RationalFunction::one(self.field().clone(), self.nvars()).div(self)
    }

    pub fn pow(&self, e: u32) -> RationalFunction {
        let mut acc = RationalFunction::one(self.field().clone(), self.nvars());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// d/dx_i by the quotient rule.
    pub fn partial_derivative(&self, var: usize) -> RationalFunction {
        let num = self
            .num
            .partial_derivative(var)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.partial_derivative(var)));
        let den = self.den.mul(&self.den);
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        rf
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(pole(format!(
                "denominator {} vanishes at the evaluation point",
                self.den
            )));
        }
        let n = self.num.evaluate(point)?;
        Ok(n.div(&d).expect("nonzero denominator value"))
    }

    /// deg(num) - deg(den) when both parts are homogeneous; `None` when the
    /// function is inhomogeneous. Zero input is a usage error.
    pub fn homogeneous_degree(&self) -> Result<Option<i64>> {
        if self.is_zero() {
            return Err(usage("homogeneous degree of the zero function"));
        }
        match (self.num.homogeneous_degree(), self.den.homogeneous_degree()) {
            (Some(a), Some(b)) => Ok(Some(a as i64 - b as i64)),
            _ => Ok(None),
        }
    }
}

impl PartialEq for RationalFunction {
    /// a/b = c/d iff a*d - c*b = 0.
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}
impl Eq for RationalFunction {}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
