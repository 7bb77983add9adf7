//! Differential polynomials K{y₁,…,y_m} in one distinguished derivation.
//!
//! Indeterminates are ∂ⁱy_j, optionally tagged with a tensor slot so that
//! elements of K{Y}⊗K{Y}⊗… are polynomials in disjoint copies of the indeterminates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::field::{DiffField, FieldError, RationalFunction};

use super::DiffAlgError;

/// ∂^order y_var in tensor slot `slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Indet {
    pub slot: u8,
    pub var: u16,
    pub order: u16,
}

impl Indet {
    pub fn new(var: u16, order: u16) -> Self {
        Indet { slot: 0, var, order }
    }

    pub fn in_slot(self, slot: u8) -> Self {
        Indet { slot, ..self }
    }

    pub fn derived(self) -> Self {
        Indet { order: self.order + 1, ..self }
    }
}

pub type Monomial = SmallVec<[(Indet, u32); 4]>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Monomial::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// A finite sum of monomials with coefficients in K; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, RationalFunction>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn constant(c: RationalFunction) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(), c);
        }
        DiffPoly { terms }
    }

    pub fn monomial(m: Monomial, c: RationalFunction) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    pub fn indet(v: Indet, one: RationalFunction) -> Self {
        Self::monomial(SmallVec::from_slice(&[(v, 1)]), one)
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, RationalFunction> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The K-value of a polynomial free of indeterminates.
    pub fn as_constant(&self) -> Option<Option<&RationalFunction>> {
        match self.terms.len() {
            0 => Some(None),
            1 => self.terms.get(&Monomial::new()).map(Some),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &DiffPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, a: &RationalFunction) -> DiffPoly {
        if a.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * a)).collect() }
    }

    pub fn mul(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn indets(&self) -> BTreeSet<Indet> {
        self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| *v)).collect()
    }

    pub fn max_order(&self) -> Option<u16> {
        self.indets().iter().map(|v| v.order).max()
    }

    /// Moves every indeterminate of slot `from` into slot `to`.
    pub fn reslot(&self, f: impl Fn(u8) -> u8) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut mm: Monomial = m.iter().map(|(v, e)| (v.in_slot(f(v.slot)), *e)).collect();
            mm.sort_by_key(|a| a.0);
            // merging equal indeterminates after relabeling
            let merged = mm.iter().fold(Monomial::new(), |acc, &(v, e)| mono_mul(&acc, &SmallVec::from_slice(&[(v, e)])));
            out.add_term(merged, c.clone());
        }
        out
    }

    /// Algebra homomorphism fixing K and sending each indeterminate to `f(indet)`.
    pub fn map_indets<E>(&self, mut f: impl FnMut(Indet) -> Result<DiffPoly, E>) -> Result<DiffPoly, E> {
        let mut powers: BTreeMap<Indet, Vec<DiffPoly>> = BTreeMap::new();
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = DiffPoly::constant(c.clone());
            for &(v, e) in m.iter() {
                if let std::collections::btree_map::Entry::Vacant(e) = powers.entry(v) {
                    let img = f(v)?;
                    e.insert(vec![img]);
                }
                let pw = powers.get_mut(&v).expect("inserted");
                while pw.len() < e as usize {
                    let next = pw.last().expect("nonempty").mul(&pw[0]);
                    pw.push(next);
                }
                acc = acc.mul(&pw[e as usize - 1]);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }
}

/// The ring K{y₁,…,y_m} with its derivation, naming the indeterminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffPolyRing {
    field: DiffField,
    derivation: String,
    names: Arc<[String]>,
}

impl DiffPolyRing {
    pub fn new(field: &DiffField, derivation: &str, names: &[&str]) -> Result<Self, DiffAlgError> {
        if !field.derivation_names().iter().any(|d| d == derivation) {
            return Err(DiffAlgError::UnknownDerivation(derivation.to_string()));
        }
        let mut seen = BTreeSet::new();
        for n in names {
            let ok = !n.is_empty()
                && n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_alphanumeric() || c == '_')
                && !field.vars().iter().any(|v| v == n);
            if !ok || !seen.insert(*n) {
                return Err(DiffAlgError::BadName(n.to_string()));
            }
        }
        Ok(DiffPolyRing { field: field.clone(), derivation: derivation.to_string(), names: names.iter().map(|s| s.to_string()).collect() })
    }

    pub fn field(&self) -> &DiffField {
        &self.field
    }

    pub fn derivation(&self) -> &str {
        &self.derivation
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Result<u16, DiffAlgError> {
        self.names.iter().position(|n| n == name).map(|i| i as u16).ok_or_else(|| DiffAlgError::UnknownIndeterminate(name.to_string()))
    }

    pub fn indet(&self, name: &str, order: u16) -> Result<Indet, DiffAlgError> {
        Ok(Indet::new(self.index(name)?, order))
    }

    /// ∂^order y_name in slot 0.
    pub fn var(&self, name: &str, order: u16) -> Result<DiffPoly, DiffAlgError> {
        Ok(DiffPoly::indet(self.indet(name, order)?, self.field.one()))
    }

    pub fn of(&self, v: Indet) -> DiffPoly {
        DiffPoly::indet(v, self.field.one())
    }

    pub fn constant(&self, c: RationalFunction) -> DiffPoly {
        DiffPoly::constant(c)
    }

    pub fn one(&self) -> DiffPoly {
        DiffPoly::constant(self.field.one())
    }

    pub fn int(&self, k: i64) -> DiffPoly {
        DiffPoly::constant(self.field.int(k))
    }

    fn dk(&self, c: &RationalFunction) -> RationalFunction {
        self.field.derive(c, &self.derivation).expect("derivation checked at construction")
    }

    /// The derivation: Leibniz over monomials, ∂(∂ⁱy) = ∂ⁱ⁺¹y, coefficients differentiated in K.
    pub fn derive(&self, p: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in p.terms() {
            out.add_term(m.clone(), self.dk(c));
            for (idx, &(v, e)) in m.iter().enumerate() {
                let mut rest = m.clone();
                if e == 1 {
                    rest.remove(idx);
                } else {
                    rest[idx].1 = e - 1;
                }
                let dm = mono_mul(&rest, &SmallVec::from_slice(&[(v.derived(), 1)]));
                let coef = if e == 1 { c.clone() } else { c * &self.field.int(e as i64) };
                out.add_term(dm, coef);
            }
        }
        out
    }

    pub fn derive_n(&self, p: &DiffPoly, k: usize) -> DiffPoly {
        (0..k).fold(p.clone(), |acc, _| self.derive(&acc))
    }

    /// Evaluates with ∂ⁱy_j ↦ ∂ⁱ(assignment[y_j]); only slot-0 indeterminates are allowed.
    pub fn substitute(&self, p: &DiffPoly, assignment: &BTreeMap<String, RationalFunction>) -> Result<RationalFunction, DiffAlgError> {
        let mut cache: BTreeMap<(u16, u16), RationalFunction> = BTreeMap::new();
        let mut acc = self.field.zero();
        for (m, c) in p.terms() {
            let mut term = c.clone();
            for &(v, e) in m.iter() {
                if v.slot != 0 {
                    return Err(DiffAlgError::UnknownIndeterminate(self.indet_name(v)));
                }
                if let std::collections::btree_map::Entry::Vacant(e) = cache.entry((v.var, v.order)) {
                    let name = &self.names[v.var as usize];
                    let base = assignment.get(name).ok_or_else(|| DiffAlgError::MissingAssignment(name.clone()))?;
                    if !self.field.owns(base) {
                        return Err(DiffAlgError::FieldMismatch);
                    }
                    let mut val = base.clone();
                    for _ in 0..v.order {
                        val = self.dk(&val);
                    }
                    e.insert(val);
                }
                let val = &cache[&(v.var, v.order)];
                term = &term * &val.pow(e as i64).expect("nonnegative power");
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn indet_name(&self, v: Indet) -> String {
        let mut s = self.names[v.var as usize].clone();
        for _ in 0..v.order {
            s.push('\'');
        }
        if v.slot > 0 {
            s.push_str(&format!("@{}", v.slot));
        }
        s
    }

    pub fn display(&self, p: &DiffPoly) -> String {
        struct D<'a>(&'a DiffPolyRing, &'a DiffPoly);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let (ring, p) = (self.0, self.1);
                if p.is_zero() {
                    return write!(f, "0");
                }
                for (i, (m, c)) in p.terms().iter().rev().enumerate() {
                    let negative = c.to_string().starts_with('-');
                    let c = &if i > 0 && negative { c.neg() } else { c.clone() };
                    if i > 0 {
                        write!(f, "{}", if negative { " - " } else { " + " })?;
                    }
                    let mono: Vec<String> =
                        m.iter().map(|&(v, e)| if e == 1 { ring.indet_name(v) } else { format!("{}^{}", ring.indet_name(v), e) }).collect();
                    let cs = c.to_string();
                    let compound = cs.trim_start_matches('-').contains(['+', '-', '/', ' ']);
                    let cs = if compound { format!("({cs})") } else { cs };
                    match (mono.is_empty(), c.is_one(), cs.as_str()) {
                        (true, _, _) => write!(f, "{cs}")?,
                        (false, true, _) => write!(f, "{}", mono.join("*"))?,
                        (false, false, "-1") => write!(f, "-{}", mono.join("*"))?,
                        (false, false, _) => write!(f, "{cs}*{}", mono.join("*"))?,
                    }
                }
                Ok(())
            }
        }
        D(self, p).to_string()
    }

    /// Parses an expression over the field variables and the ring's indeterminates.
    ///
    /// `y'` and `y''` denote derivatives and `y@1` a tensor slot; division is by K-constants only.
    pub fn parse(&self, text: &str) -> Result<DiffPoly, DiffAlgError> {
        let mut p = PolyParser { src: text, pos: 0, ring: self };
        let v = p.expr()?;
        p.ws();
        if p.pos != text.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

struct PolyParser<'a> {
    src: &'a str,
    pos: usize,
    ring: &'a DiffPolyRing,
}

impl PolyParser<'_> {
    fn err(&self, msg: &str) -> DiffAlgError {
        DiffAlgError::Field(FieldError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<DiffPoly, DiffAlgError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<DiffPoly, DiffAlgError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                match d.as_constant() {
                    Some(Some(c)) => acc = acc.scale(&c.inv()),
                    Some(None) => return Err(DiffAlgError::Field(FieldError::DivisionByZero)),
                    None => {
                        self.pos = at;
                        return Err(self.err("division by a non-constant"));
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<DiffPoly, DiffAlgError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            self.ws();
            let k = self.digits()?;
            let mut acc = self.ring.one();
            for _ in 0..k {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<u32, DiffAlgError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| self.err("expected integer"))
    }

    fn atom(&mut self) -> Result<DiffPoly, DiffAlgError> {
        self.ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let v = self.ring.field.parse(&self.src[start..self.pos])?;
                Ok(DiffPoly::constant(v))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += self.peek().map_or(1, char::len_utf8);
                }
                let name = &self.src[start..self.pos];
                if let Ok(idx) = self.ring.index(name) {
                    let mut order = 0u16;
                    while self.peek() == Some('\'') {
                        self.pos += 1;
                        order += 1;
                    }
                    let mut slot = 0u8;
                    if self.peek() == Some('@') {
                        self.pos += 1;
                        slot = self.digits()? as u8;
                    }
                    Ok(self.ring.of(Indet { slot, var: idx, order }))
                } else {
                    Ok(DiffPoly::constant(self.ring.field.var(name)?))
                }
            }
            _ => Err(self.err("unexpected character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(d: &str) -> DiffPolyRing {
        DiffPolyRing::new(&DiffField::standard(), d, &["y1", "y2"]).unwrap()
    }

    #[test]
    fn derive_shifts_order() {
        let r = ring("dt");
        assert_eq!(r.derive(&r.var("y1", 0).unwrap()), r.var("y1", 1).unwrap());
    }

    #[test]
    fn derive_leibniz() {
        let r = ring("dt");
        let p = r.parse("y1*y2").unwrap();
        assert_eq!(r.derive(&p), r.parse("y1'*y2 + y1*y2'").unwrap());
        let c = r.parse("t^2*x").unwrap();
        assert_eq!(r.derive(&c), r.parse("2*t*x").unwrap());
    }

    #[test]
    fn substitute_examples() {
        let r = ring("dx");
        let k = r.field().clone();
        let mut a = BTreeMap::new();
        a.insert("y1".to_string(), k.parse("t*x").unwrap());
        assert_eq!(r.substitute(&r.var("y1", 1).unwrap(), &a).unwrap(), k.parse("t").unwrap());
        assert_eq!(r.substitute(&r.parse("3/t").unwrap(), &BTreeMap::new()).unwrap(), k.parse("3/t").unwrap());
        a.insert("y1".to_string(), k.parse("x").unwrap());
        a.insert("y2".to_string(), k.zero());
        assert!(r.substitute(&r.parse("y1*y2").unwrap(), &a).unwrap().is_zero());
        assert!(matches!(r.substitute(&r.parse("y2").unwrap(), &BTreeMap::new()), Err(DiffAlgError::MissingAssignment(_))));
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let r = ring("dt");
        let p = r.parse("3*y1''^2*y2@1 - t/2*y1 + 1").unwrap();
        assert_eq!(r.parse(&r.display(&p)).unwrap(), p);
        assert!(r.parse("y1/y2").is_err());
    }

    #[test]
    fn map_indets_is_a_homomorphism() {
        let r = ring("dt");
        let p = r.parse("y1^2 + y1*y2").unwrap();
        let img = p.map_indets(|v| -> Result<_, ()> { Ok(if v.var == 0 { r.parse("y2 + 1").unwrap() } else { r.int(2) }) }).unwrap();
        assert_eq!(img, r.parse("(y2+1)^2 + 2*(y2+1)").unwrap());
    }
}
