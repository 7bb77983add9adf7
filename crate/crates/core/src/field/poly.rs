//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept sorted in decreasing graded-lexicographic order with
//! nonzero coefficients, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub type Exps = SmallVec<[u32; 4]>;

/// Graded lexicographic comparison; earlier variables dominate within a degree.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Exps, BigRational)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(SmallVec::from_elem(0, nvars), c)] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e: Exps = SmallVec::from_elem(0, nvars);
        e[i] = 1;
        Poly { nvars, terms: vec![(e, BigRational::one())] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(nvars: usize, mut raw: Vec<(Exps, BigRational)>) -> Self {
        raw.sort_by(|a, b| grlex(&b.0, &a.0));
        let mut terms: Vec<(Exps, BigRational)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            debug_assert_eq!(e.len(), nvars);
            match terms.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => {
                    if let Some((_, lc)) = terms.last() {
                        if lc.is_zero() {
                            terms.pop();
                        }
                    }
                    terms.push((e, c));
                }
            }
        }
        if let Some((_, lc)) = terms.last() {
            if lc.is_zero() {
                terms.pop();
            }
        }
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exps, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && !self.is_zero() && self.terms[0].1.is_one()
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Exps, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(e, _)| e.iter().sum())
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match grlex(ea, eb) {
                Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((eb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(e, c)| (e.clone(), if negate { -c } else { c.clone() })));
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                raw.push((e, ca * cb));
            }
        }
        Poly::from_terms(self.nvars, raw)
    }

    fn mul_term(&self, e: &[u32], c: &BigRational) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(x, k)| (x.iter().zip(e.iter()).map(|(a, b)| a + b).collect(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `v`.
    pub fn partial(&self, v: usize) -> Poly {
        let raw = self
            .terms
            .iter()
            .filter(|(e, _)| e[v] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[v] -= 1;
                (e2, c * BigRational::from_integer(BigInt::from(e[v])))
            })
            .collect();
        Poly::from_terms(self.nvars, raw)
    }

    /// Coefficient of `v^k`, as a polynomial free of `v`.
    pub fn coeff_in(&self, v: usize, k: u32) -> Poly {
        let raw = self
            .terms
            .iter()
            .filter(|(e, _)| e[v] == k)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[v] = 0;
                (e2, c.clone())
            })
            .collect();
        Poly::from_terms(self.nvars, raw)
    }

    fn var_power(&self, v: usize, k: u32) -> Exps {
        let mut e: Exps = SmallVec::from_elem(0, self.nvars);
        e[v] = k;
        e
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (de, dc) = d.leading().cloned()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((re, rc)) = rem.leading().cloned() {
            if re.iter().zip(de.iter()).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exps = re.iter().zip(de.iter()).map(|(a, b)| a - b).collect();
            let qc = rc / &dc;
            rem = rem.sub(&d.mul_term(&qe, &qc));
            quot.push((qe, qc));
        }
        Some(Poly::from_terms(self.nvars, quot))
    }

    fn first_var(&self) -> Option<usize> {
        (0..self.nvars).find(|&v| self.terms.iter().any(|(e, _)| e[v] > 0))
    }

    /// Gcd of the coefficients of `self` viewed as a polynomial in `v`.
    fn content_in(&self, v: usize) -> Poly {
        let mut g = Poly::zero(self.nvars);
        for k in (0..=self.degree_in(v)).rev() {
            let c = self.coeff_in(v, k);
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_in(&self, v: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        // monic as well, so the rational coefficients of a remainder sequence stay small
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides the polynomial").monic()
    }

    /// Pseudo-remainder of `self` by `g` with respect to `v`.
    fn prem_in(&self, g: &Poly, v: usize) -> Poly {
        let dg = g.degree_in(v);
        let lcg = g.coeff_in(v, dg);
        let mut r = self.clone();
        while !r.is_zero() {
            let dr = r.degree_in(v);
            if dr < dg {
                break;
            }
            let lcr = r.coeff_in(v, dr);
            let shift = Poly { nvars: self.nvars, terms: vec![(self.var_power(v, dr - dg), BigRational::one())] };
            r = r.mul(&lcg).sub(&lcr.mul(&shift).mul(g));
        }
        r
    }

    pub fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        struct D<'a>(&'a Poly, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(self.1, f)
            }
        }
        D(self, names).to_string()
    }
}

/// Monic greatest common divisor (primitive remainder sequences, recursive in the variables).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars);
    }
    if a == b {
        return a.monic();
    }
    let v = match (a.first_var(), b.first_var()) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => return Poly::one(a.nvars),
    };
    if a.degree_in(v) == 0 {
        return gcd(a, &b.content_in(v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&a.content_in(v), b);
    }
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let c = gcd(&ca, &cb);
    let mut f = a.div_exact(&ca).expect("content divides");
    let mut g = b.div_exact(&cb).expect("content divides");
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = f.prem_in(&g, v);
        f = g;
        g = if r.is_zero() { r } else { r.primitive_in(v) };
    }
    let p = if f.degree_in(v) == 0 { Poly::one(a.nvars) } else { f.primitive_in(v) };
    c.mul(&p).monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    // x, t
    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn t() -> Poly {
        Poly::var(2, 1)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(2, q(n))
    }

    #[test]
    fn add_cancels_to_zero() {
        let p = x().mul(&t()).add(&c(3));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x - t)(x + 1) and (x - t)(t + 2)
        let f = x().sub(&t());
        let a = f.mul(&x().add(&c(1)));
        let b = f.mul(&t().add(&c(2)));
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = x().mul(&x()).add(&t());
        let b = x().add(&c(1));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = x().mul(&x()).sub(&c(1));
        let b = x().sub(&c(1));
        assert_eq!(a.div_exact(&b).unwrap(), x().add(&c(1)));
        assert!(x().div_exact(&t()).is_none());
    }

    #[test]
    fn partial_derivative() {
        let p = x().mul(&x()).mul(&t());
        assert_eq!(p.partial(0), x().mul(&t()).scale(&q(2)));
    }
}
