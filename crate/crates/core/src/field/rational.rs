//! Canonical rational functions over Q in a fixed list of variables.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{gcd, Poly};
use super::FieldError;

/// Numerator over monic denominator, coprime, with the variable names they live over.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
    vars: Arc<[String]>,
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RationalFunction {}

impl Hash for RationalFunction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl RationalFunction {
    pub fn zero(vars: &Arc<[String]>) -> Self {
        let n = vars.len();
        RationalFunction { num: Poly::zero(n), den: Poly::one(n), vars: vars.clone() }
    }

    pub fn one(vars: &Arc<[String]>) -> Self {
        Self::from_integer(vars, 1)
    }

    pub fn from_integer(vars: &Arc<[String]>, k: i64) -> Self {
        Self::constant(vars, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn constant(vars: &Arc<[String]>, c: BigRational) -> Self {
        let n = vars.len();
        RationalFunction { num: Poly::constant(n, c), den: Poly::one(n), vars: vars.clone() }
    }

    pub fn var(vars: &Arc<[String]>, i: usize) -> Self {
        let n = vars.len();
        RationalFunction { num: Poly::var(n, i), den: Poly::one(n), vars: vars.clone() }
    }

    pub fn from_poly(vars: &Arc<[String]>, p: Poly) -> Self {
        RationalFunction { den: Poly::one(vars.len()), num: p, vars: vars.clone() }
    }

    /// Builds num/den in canonical form.
    pub fn from_parts(vars: &Arc<[String]>, num: Poly, den: Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalized(vars.clone(), num, den))
    }

    fn normalized(vars: Arc<[String]>, num: Poly, den: Poly) -> Self {
        let n = vars.len();
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one(n), vars };
        }
        if let Some(c) = den.constant_value() {
            let num = if c.is_one() { num } else { num.scale(&c.recip()) };
            return RationalFunction { num, den: Poly::one(n), vars };
        }
        let g = gcd(&num, &den);
        let (num, den) =
            if g.is_one() { (num, den) } else { (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides")) };
        let lc = den.leading_coeff();
        if lc.is_one() {
            RationalFunction { num, den, vars }
        } else {
            let inv = lc.recip();
            RationalFunction { num: num.scale(&inv), den: den.scale(&inv), vars }
        }
    }

    /// Makes the denominator monic; the caller guarantees num and den share no factor.
    fn normalized_coprime(vars: Arc<[String]>, num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            return RationalFunction { num, den, vars };
        }
        let inv = lc.recip();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv), vars }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The rational constant, if this element is one.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(&self.vars)
    }

    pub fn one_like(&self) -> Self {
        Self::one(&self.vars)
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.try_inv()?))
    }

    pub fn try_inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::normalized(self.vars.clone(), self.den.clone(), self.num.clone()))
    }

    pub fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let comb = |a: &Poly, b: &Poly| if negate { a.sub(b) } else { a.add(b) };
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalFunction { num: comb(&self.num, &other.num), den: self.den.clone(), vars: self.vars.clone() };
        }
        if self.den == other.den {
            return Self::normalized(self.vars.clone(), comb(&self.num, &other.num), self.den.clone());
        }
        // over lcm(d1, d2); only factors of g = gcd(d1, d2) can cancel afterwards
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = comb(&self.num.mul(&other.den), &other.num.mul(&self.den));
            return Self::normalized_coprime(self.vars.clone(), num, self.den.mul(&other.den));
        }
        let c1 = other.den.div_exact(&g).expect("gcd divides");
        let c2 = self.den.div_exact(&g).expect("gcd divides");
        let num = comb(&self.num.mul(&c1), &other.num.mul(&c2));
        if num.is_zero() {
            return self.zero_like();
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() { (num, g) } else { (num.div_exact(&h).expect("gcd divides"), g.div_exact(&h).expect("gcd divides")) };
        let den = c2.mul(&c1).mul(&g);
        Self::normalized_coprime(self.vars.clone(), num, den)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.zero_like();
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalFunction { num: self.num.mul(&other.num), den: self.den.clone(), vars: self.vars.clone() };
        }
        if let Some(c) = self.as_constant() {
            return RationalFunction { num: other.num.scale(&c), den: other.den.clone(), vars: other.vars.clone() };
        }
        if let Some(c) = other.as_constant() {
            return RationalFunction { num: self.num.scale(&c), den: self.den.clone(), vars: self.vars.clone() };
        }
        // cross-cancel before multiplying to keep the gcd small
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading_coeff();
        let inv = lc.recip();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv), vars: self.vars.clone() }
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone(), vars: self.vars.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return self.zero_like();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone(), vars: self.vars.clone() }
    }

    pub fn pow(&self, k: i64) -> Result<Self, FieldError> {
        let base = if k < 0 { self.try_inv()? } else { self.clone() };
        let mut acc = self.one_like();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul_unchecked(&base);
        }
        Ok(acc)
    }

    fn wrap_den(&self) -> bool {
        let terms = self.den.terms();
        if terms.len() != 1 {
            return true;
        }
        let (e, c) = &terms[0];
        !c.is_one() || e.iter().filter(|&&k| k > 0).count() > 1
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return self.num.fmt_with(&self.vars, f);
        }
        if self.num.terms().len() > 1 {
            write!(f, "(")?;
            self.num.fmt_with(&self.vars, f)?;
            write!(f, ")")?;
        } else {
            self.num.fmt_with(&self.vars, f)?;
        }
        write!(f, "/")?;
        if self.wrap_den() {
            write!(f, "(")?;
            self.den.fmt_with(&self.vars, f)?;
            write!(f, ")")
        } else {
            self.den.fmt_with(&self.vars, f)
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $call:ident) => {
        impl std::ops::$tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                self.$call(rhs).expect("rational function operation")
            }
        }
        impl std::ops::$tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$call(&rhs).expect("rational function operation")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl std::ops::Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(self)
    }
}

impl std::ops::Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(&self)
    }
}
