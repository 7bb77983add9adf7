//! Truncated differential Hopf algebras, the GLₙ coordinate ring and comodules.
//!
//! Elements of A^{⊗k} are differential polynomials whose indeterminates carry a slot
//! 0..k. Equality is decided modulo the relations: solved-form relations y⁽ᵏ⁾ = value
//! are substituted, derivatives of an inverse generator d with d·g = 1 are rewritten in
//! terms of d, and the remaining powers of d are cleared by multiplying with g.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::diffalg::{DiffAlgError, DiffPoly, DiffPolyRing, Indet};
use crate::field::{DiffField, FieldError, RationalFunction};
use crate::report::AxiomReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("truncation order {max} exhausted: `{what}` needs order {needed}")]
    Truncation { what: String, needed: u16, max: u16 },
    #[error("cannot normalize modulo the relations: {0}")]
    Relation(String),
    #[error("requested order {0} exceeds the algebra's order {1}")]
    OrderTooHigh(u16, u16),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    DiffAlg(#[from] DiffAlgError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A relation of the presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// inv · of = 1, with `of` free of `inv`.
    Localization { inv: u16, of: DiffPoly },
    /// ∂^order y_var = value, with value free of ∂^{≥order} y_var.
    Solved { var: u16, order: u16, value: DiffPoly },
}

/// Values of a structure map on generators and their derivatives up to the truncation order.
type Table = BTreeMap<(u16, u16), DiffPoly>;

#[derive(Clone, Debug)]
pub struct DiffHopfAlgebra {
    ring: DiffPolyRing,
    order: u16,
    relations: Vec<Relation>,
    comult: Table,
    counit: Table,
    coinverse: Table,
    gl_size: Option<usize>,
}

/// Matrix with entries in a tensor power of the Hopf algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HMatrix {
    rows: usize,
    cols: usize,
    data: Vec<DiffPoly>,
}

impl HMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        HMatrix { rows, cols, data: vec![DiffPoly::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> DiffPoly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        HMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &DiffPoly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: DiffPoly) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[DiffPoly] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(&DiffPoly) -> DiffPoly) -> Self {
        HMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<E>(&self, f: impl Fn(&DiffPoly) -> Result<DiffPoly, E>) -> Result<Self, E> {
        Ok(HMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn transpose(&self) -> Self {
        HMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &HMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in HMatrix::mul");
        let mut out = HMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx].add_assign(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &HMatrix) -> Self {
        HMatrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let a = self.get(r / other.rows, c / other.cols);
            if a.is_zero() {
                return DiffPoly::zero();
            }
            a.mul(other.get(r % other.rows, c % other.cols))
        })
    }

    pub fn block2(a: &HMatrix, b: &HMatrix, c: &HMatrix, d: &HMatrix) -> Self {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols, "block shapes");
        HMatrix::from_fn(a.rows + c.rows, a.cols + b.cols, |r, col| {
            let (top, left) = (r < a.rows, col < a.cols);
            match (top, left) {
                (true, true) => a.get(r, col).clone(),
                (true, false) => b.get(r, col - a.cols).clone(),
                (false, true) => c.get(r - a.rows, col).clone(),
                (false, false) => d.get(r - a.rows, col - a.cols).clone(),
            }
        })
    }

    pub fn block_diag(a: &HMatrix, b: &HMatrix) -> Self {
        HMatrix::block2(a, &HMatrix::zeros(a.rows, b.cols), &HMatrix::zeros(b.rows, a.cols), b)
    }

    /// Embeds a K-matrix.
    pub fn from_k(m: &crate::matrix::Matrix) -> Self {
        HMatrix::from_fn(m.rows(), m.cols(), |r, c| DiffPoly::constant(m.get(r, c).clone()))
    }

    /// Σ_k M_ik ⊗ N_kj with the left factor in slot 0 and the right in slot 1.
    pub fn tensor_dot(&self, other: &HMatrix) -> Self {
        let right = other.map(|p| p.reslot(|s| s + 1));
        self.mul(&right)
    }
}

fn binomial(n: u16, k: u16) -> i64 {
    let mut acc: i64 = 1;
    for i in 0..k as i64 {
        acc = acc * (n as i64 - i) / (i + 1);
    }
    acc
}

impl DiffHopfAlgebra {
    /// K{Xᵢⱼ, d}/(d·det X − 1) with the group-law structure maps, truncated at order `p`.
    pub fn gl(field: &DiffField, n: usize, p: u16) -> Result<Self, HopfError> {
        Self::gl_subgroup(field, n, p, &[])
    }

    /// The quotient of the GLₙ ring by solved-form relations `(name, order, value)`.
    pub fn gl_subgroup(field: &DiffField, n: usize, p: u16, solved: &[(&str, u16, &str)]) -> Result<Self, HopfError> {
        if n == 0 {
            return Err(HopfError::Shape("GLₙ needs n ≥ 1".into()));
        }
        let param = field.parameter().ok_or(FieldError::NoParameter)?.to_string();
        let names: Vec<String> = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| if n < 10 { format!("X{i}{j}") } else { format!("X{i}_{j}") }))
            .chain(std::iter::once("d".to_string()))
            .collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let ring = DiffPolyRing::new(field, &param, &refs)?;
        let x = |i: usize, j: usize| ring.of(Indet::new((i * n + j) as u16, 0));
        let d_idx = (n * n) as u16;
        let d = ring.of(Indet::new(d_idx, 0));
        let xm = HMatrix::from_fn(n, n, x);
        let det = determinant(&xm, &ring);
        let adj = adjugate(&xm, &ring);

        let mut comult = Table::new();
        let mut counit = Table::new();
        let mut coinverse = Table::new();
        for i in 0..n {
            for j in 0..n {
                let key = ((i * n + j) as u16, 0);
                let mut s = DiffPoly::zero();
                for k in 0..n {
                    s.add_assign(&x(i, k).mul(&x(k, j).reslot(|_| 1)));
                }
                comult.insert(key, s);
                counit.insert(key, ring.int(i64::from(i == j)));
                coinverse.insert(key, d.mul(adj.get(i, j)));
            }
        }
        comult.insert((d_idx, 0), d.mul(&d.reslot(|_| 1)));
        counit.insert((d_idx, 0), ring.one());
        coinverse.insert((d_idx, 0), det.clone());

        let mut relations = Vec::new();
        for (name, order, value) in solved {
            let var = ring.index(name)?;
            if var == d_idx {
                return Err(HopfError::Relation("the inverse generator cannot be solved for".into()));
            }
            let value = ring.parse(value)?;
            if value.indets().iter().any(|v| v.slot != 0 || (v.var == var && v.order >= *order) || v.var == d_idx) {
                return Err(HopfError::Relation(format!("value for {name} is not in solved form")));
            }
            relations.push(Relation::Solved { var, order: *order, value });
        }
        relations.push(Relation::Localization { inv: d_idx, of: det });
        let mut h = DiffHopfAlgebra { ring, order: p, relations, comult, counit, coinverse, gl_size: Some(n) };
        h.extend_tables();
        Ok(h)
    }

    /// Fills orders 1..=p of every table by formal differentiation of order 0.
    fn extend_tables(&mut self) {
        for table in [&mut self.comult, &mut self.counit, &mut self.coinverse] {
            let base: Vec<(u16, DiffPoly)> = table.iter().filter(|(k, _)| k.1 == 0).map(|(k, v)| (k.0, v.clone())).collect();
            for (var, v) in base {
                let mut cur = v;
                for o in 1..=self.order {
                    cur = self.ring.derive(&cur);
                    table.insert((var, o), cur.clone());
                }
            }
        }
    }

    /// Replaces Δ on one generator (order 0) and re-derives its derivatives; for negative controls.
    pub fn with_corrupted_comult(&self, name: &str, value: &str) -> Result<Self, HopfError> {
        let mut h = self.clone();
        let var = h.ring.index(name)?;
        h.comult.insert((var, 0), h.ring.parse(value)?);
        for o in 1..=h.order {
            h.comult.remove(&(var, o));
        }
        h.extend_tables();
        Ok(h)
    }

    pub fn ring(&self) -> &DiffPolyRing {
        &self.ring
    }

    pub fn field(&self) -> &DiffField {
        self.ring.field()
    }

    pub fn order(&self) -> u16 {
        self.order
    }

    pub fn gl_size(&self) -> Option<usize> {
        self.gl_size
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// The relations as polynomials required to vanish.
    pub fn relation_polys(&self) -> Vec<DiffPoly> {
        self.relations
            .iter()
            .map(|r| match r {
                Relation::Localization { inv, of } => self.ring.of(Indet::new(*inv, 0)).mul(of).sub(&self.ring.one()),
                Relation::Solved { var, order, value } => self.ring.of(Indet::new(*var, *order)).sub(value),
            })
            .collect()
    }

    pub fn generators(&self) -> &[String] {
        self.ring.names()
    }

    pub fn gen(&self, name: &str, order: u16) -> Result<DiffPoly, HopfError> {
        Ok(self.ring.var(name, order)?)
    }

    /// The matrix (Xᵢⱼ) of a GLₙ algebra.
    pub fn generic_matrix(&self) -> Result<HMatrix, HopfError> {
        let n = self.gl_size.ok_or_else(|| HopfError::Shape("not a GLₙ algebra".into()))?;
        Ok(HMatrix::from_fn(n, n, |i, j| self.ring.of(Indet::new((i * n + j) as u16, 0))))
    }

    pub fn inverse_generator(&self) -> Option<DiffPoly> {
        self.relations.iter().find_map(|r| match r {
            Relation::Localization { inv, .. } => Some(self.ring.of(Indet::new(*inv, 0))),
            _ => None,
        })
    }

    pub fn derive(&self, p: &DiffPoly) -> DiffPoly {
        self.ring.derive(p)
    }

    fn lookup(&self, table: &Table, what: &str, v: Indet) -> Result<DiffPoly, HopfError> {
        table.get(&(v.var, v.order)).cloned().ok_or_else(|| HopfError::Truncation {
            what: format!("{what}({})", self.ring.indet_name(v.in_slot(0))),
            needed: v.order,
            max: self.order,
        })
    }

    /// Δ applied in slot `s`: that slot splits into s, s+1 and later slots move up.
    pub fn comult_at(&self, p: &DiffPoly, s: u8) -> Result<DiffPoly, HopfError> {
        p.map_indets(|v| {
            Ok(match v.slot.cmp(&s) {
                std::cmp::Ordering::Less => self.ring.of(v),
                std::cmp::Ordering::Greater => self.ring.of(v.in_slot(v.slot + 1)),
                std::cmp::Ordering::Equal => self.lookup(&self.comult, "Δ", v)?.reslot(|t| t + s),
            })
        })
    }

    /// ε applied in slot `s`; later slots move down.
    pub fn counit_at(&self, p: &DiffPoly, s: u8) -> Result<DiffPoly, HopfError> {
        p.map_indets(|v| {
            Ok(match v.slot.cmp(&s) {
                std::cmp::Ordering::Less => self.ring.of(v),
                std::cmp::Ordering::Greater => self.ring.of(v.in_slot(v.slot - 1)),
                std::cmp::Ordering::Equal => self.lookup(&self.counit, "ε", v)?,
            })
        })
    }

    /// S applied in slot `s`.
    pub fn coinverse_at(&self, p: &DiffPoly, s: u8) -> Result<DiffPoly, HopfError> {
        p.map_indets(|v| Ok(if v.slot == s { self.lookup(&self.coinverse, "S", v)?.reslot(|_| s) } else { self.ring.of(v) }))
    }

    /// Multiplication of slots s and s+1.
    pub fn mult_at(&self, p: &DiffPoly, s: u8) -> DiffPoly {
        p.reslot(|t| if t > s { t - 1 } else { t })
    }

    pub fn comult(&self, p: &DiffPoly) -> Result<DiffPoly, HopfError> {
        self.comult_at(p, 0)
    }

    /// ε as a K-valued map.
    pub fn counit(&self, p: &DiffPoly) -> Result<RationalFunction, HopfError> {
        let c = self.counit_at(p, 0)?;
        match c.as_constant() {
            Some(Some(v)) => Ok(v.clone()),
            Some(None) => Ok(self.field().zero()),
            None => Err(HopfError::Relation("counit value is not a constant".into())),
        }
    }

    pub fn coinverse(&self, p: &DiffPoly) -> Result<DiffPoly, HopfError> {
        self.coinverse_at(p, 0)
    }

    /// Substitutes the solved-form relations until no solved indeterminate remains.
    fn apply_solved(&self, p: &DiffPoly) -> Result<DiffPoly, HopfError> {
        let solved: Vec<(u16, u16, &DiffPoly)> = self
            .relations
            .iter()
            .filter_map(|r| match r {
                Relation::Solved { var, order, value } => Some((*var, *order, value)),
                _ => None,
            })
            .collect();
        if solved.is_empty() {
            return Ok(p.clone());
        }
        let hits = |q: &DiffPoly| q.indets().iter().any(|v| solved.iter().any(|(var, o, _)| v.var == *var && v.order >= *o));
        let mut cur = p.clone();
        let mut rounds = 0;
        while hits(&cur) {
            rounds += 1;
            if rounds > 64 {
                return Err(HopfError::Relation("solved relations do not terminate".into()));
            }
            cur = cur.map_indets(|v| -> Result<DiffPoly, HopfError> {
                for (var, o, value) in &solved {
                    if v.var == *var && v.order >= *o {
                        let val = self.ring.derive_n(value, (v.order - o) as usize);
                        return Ok(val.reslot(|_| v.slot));
                    }
                }
                Ok(self.ring.of(v))
            })?;
        }
        Ok(cur)
    }

    /// Expressions for d⁽ᵏ⁾, k ≤ kmax, as polynomials in d and derivatives of `of` (slot 0).
    fn inverse_derivatives(&self, inv: u16, of: &DiffPoly, kmax: u16) -> Vec<DiffPoly> {
        let d = self.ring.of(Indet::new(inv, 0));
        let mut of_ders = vec![of.clone()];
        for k in 1..=kmax {
            let next = self.ring.derive(&of_ders[k as usize - 1]);
            of_ders.push(next);
        }
        let mut ds = vec![d.clone()];
        for k in 1..=kmax {
            // Σ_j C(k,j) d⁽ʲ⁾ of⁽ᵏ⁻ʲ⁾ = 0, so d⁽ᵏ⁾ = −d Σ_{j<k} C(k,j) d⁽ʲ⁾ of⁽ᵏ⁻ʲ⁾
            let mut s = DiffPoly::zero();
            for j in 0..k {
                let c = self.field().int(binomial(k, j));
                s.add_assign(&ds[j as usize].mul(&of_ders[(k - j) as usize]).scale(&c));
            }
            ds.push(d.mul(&s).neg());
        }
        ds
    }

    /// A representative in which every derivative of an inverse generator is rewritten through d.
    pub fn normalize(&self, p: &DiffPoly) -> Result<DiffPoly, HopfError> {
        let mut cur = self.apply_solved(p)?;
        for rel in &self.relations {
            let Relation::Localization { inv, of } = rel else { continue };
            let of = self.apply_solved(of)?;
            let kmax = cur.indets().iter().filter(|v| v.var == *inv).map(|v| v.order).max().unwrap_or(0);
            if kmax == 0 {
                continue;
            }
            let ds = self.inverse_derivatives(*inv, &of, kmax);
            cur = cur.map_indets(|v| -> Result<DiffPoly, HopfError> {
                if v.var == *inv && v.order > 0 {
                    Ok(ds[v.order as usize].reslot(|_| v.slot))
                } else {
                    Ok(self.ring.of(v))
                }
            })?;
            cur = self.apply_solved(&cur)?;
        }
        Ok(cur)
    }

    /// Decides p = 0 in the tensor power of the algebra.
    pub fn is_zero(&self, p: &DiffPoly) -> Result<bool, HopfError> {
        let mut cur = self.normalize(p)?;
        for rel in &self.relations {
            let Relation::Localization { inv, of } = rel else { continue };
            let of = self.apply_solved(of)?;
            if of.is_zero() {
                return Err(HopfError::Relation("the localized element reduces to zero".into()));
            }
            let slots: BTreeSet<u8> = cur.indets().iter().filter(|v| v.var == *inv).map(|v| v.slot).collect();
            for s in slots {
                cur = self.clear_inverse(&cur, *inv, &of.reslot(|_| s), s);
            }
        }
        Ok(cur.is_zero())
    }

    /// Multiplies by of^M and replaces dʲ by of^{M−j} (d·of = 1) in slot `s`.
    fn clear_inverse(&self, p: &DiffPoly, inv: u16, of: &DiffPoly, s: u8) -> DiffPoly {
        let dv = Indet { slot: s, var: inv, order: 0 };
        let power = |m: &crate::diffalg::Monomial| m.iter().find(|(v, _)| *v == dv).map_or(0, |(_, e)| *e);
        let big_m = p.terms().keys().map(power).max().unwrap_or(0);
        let mut of_pows = vec![self.ring.one()];
        for _ in 0..big_m {
            let next = of_pows.last().expect("nonempty").mul(of);
            of_pows.push(next);
        }
        let mut out = DiffPoly::zero();
        for (m, c) in p.terms() {
            let j = power(m);
            let rest: crate::diffalg::Monomial = m.iter().filter(|(v, _)| *v != dv).copied().collect();
            out.add_assign(&DiffPoly::monomial(rest, c.clone()).mul(&of_pows[(big_m - j) as usize]));
        }
        out
    }

    pub fn equal(&self, a: &DiffPoly, b: &DiffPoly) -> Result<bool, HopfError> {
        self.is_zero(&a.sub(b))
    }

    pub fn display(&self, p: &DiffPoly) -> String {
        self.ring.display(p)
    }

    /// Every generator derivative g⁽ᵏ⁾, k ≤ p.
    fn generator_indets(&self, p: u16) -> Vec<Indet> {
        (0..self.ring.names().len() as u16).flat_map(|v| (0..=p).map(move |o| Indet::new(v, o))).collect()
    }

    /// Checks the Hopf axioms, the relations and ∂-compatibility on generators up to order `p`.
    pub fn check(&self, p: u16) -> Result<Vec<AxiomReport>, HopfError> {
        if p > self.order {
            return Err(HopfError::OrderTooHigh(p, self.order));
        }
        let objs = vec![format!("generators {} to order {p}", self.ring.names().join(","))];
        let mut out = Vec::new();
        let gens = self.generator_indets(p);
        let mut law = |name: &str, f: &dyn Fn(Indet) -> Result<Option<String>, HopfError>| -> Result<(), HopfError> {
            let mut rep = AxiomReport::new(name, objs.clone());
            for &g in &gens {
                if let Some(why) = f(g)? {
                    rep = rep.fail(format!("offending generator {} (order {}): {why}", self.ring.names()[g.var as usize], g.order));
                    break;
                }
            }
            out.push(rep);
            Ok(())
        };
        let show = |a: &DiffPoly, b: &DiffPoly| format!("{} ≠ {}", self.display(a), self.display(b));
        let cmp = |a: DiffPoly, b: DiffPoly| -> Result<Option<String>, HopfError> {
            Ok(if self.equal(&a, &b)? { None } else { Some(show(&a, &b)) })
        };

        law("coassociativity", &|g| {
            let delta = self.comult(&self.ring.of(g))?;
            cmp(self.comult_at(&delta, 0)?, self.comult_at(&delta, 1)?)
        })?;
        law("counit", &|g| {
            let x = self.ring.of(g);
            let delta = self.comult(&x)?;
            if let Some(w) = cmp(self.counit_at(&delta, 1)?, x.clone())? {
                return Ok(Some(format!("(id⊗ε)Δ: {w}")));
            }
            Ok(cmp(self.counit_at(&delta, 0)?, x)?.map(|w| format!("(ε⊗id)Δ: {w}")))
        })?;
        law("antipode", &|g| {
            let x = self.ring.of(g);
            let delta = self.comult(&x)?;
            let unit = DiffPoly::constant(self.counit(&x)?);
            let left = self.mult_at(&self.coinverse_at(&delta, 0)?, 0);
            if let Some(w) = cmp(left, unit.clone())? {
                return Ok(Some(format!("m(S⊗id)Δ: {w}")));
            }
            let right = self.mult_at(&self.coinverse_at(&delta, 1)?, 0);
            Ok(cmp(right, unit)?.map(|w| format!("m(id⊗S)Δ: {w}")))
        })?;
        law("differential-comult", &|g| {
            if g.order >= p {
                return Ok(None);
            }
            let lhs = self.comult(&self.ring.of(g.derived()))?;
            let rhs = self.derive(&self.comult(&self.ring.of(g))?);
            cmp(lhs, rhs)
        })?;
        law("differential-counit", &|g| {
            if g.order >= p {
                return Ok(None);
            }
            let lhs = DiffPoly::constant(self.counit(&self.ring.of(g.derived()))?);
            let rhs = DiffPoly::constant(self.field().dt(&self.counit(&self.ring.of(g))?)?);
            cmp(lhs, rhs)
        })?;
        law("differential-coinverse", &|g| {
            if g.order >= p {
                return Ok(None);
            }
            let lhs = self.coinverse(&self.ring.of(g.derived()))?;
            let rhs = self.derive(&self.coinverse(&self.ring.of(g))?);
            cmp(lhs, rhs)
        })?;

        // relations: stable under ∂ and respected by Δ, ε, S
        let mut rel = AxiomReport::new("relations", objs.clone());
        'outer: for (idx, r) in self.relation_polys().iter().enumerate() {
            let mut cur = r.clone();
            for k in 0..=p {
                if cur.max_order().unwrap_or(0) > p {
                    break;
                }
                let reduced_deriv = self.is_zero(&self.derive(&cur))?;
                let dz = self.is_zero(&self.comult(&cur)?)?;
                let ez = self.counit(&cur)?.is_zero();
                let sz = self.is_zero(&self.coinverse(&cur)?)?;
                if !(reduced_deriv && dz && ez && sz) {
                    let which = [(reduced_deriv, "∂"), (dz, "Δ"), (ez, "ε"), (sz, "S")]
                        .iter()
                        .filter(|(ok, _)| !ok)
                        .map(|(_, n)| *n)
                        .collect::<Vec<_>>()
                        .join(",");
                    rel = rel.fail(format!("relation {idx} differentiated {k} times is not preserved by {which}"));
                    break 'outer;
                }
                if k < p {
                    cur = self.derive(&cur);
                }
            }
        }
        out.push(rel);
        Ok(out)
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &HMatrix, ring: &DiffPolyRing) -> DiffPoly {
    let n = m.rows();
    if n == 0 {
        return ring.one();
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = DiffPoly::zero();
    for j in 0..n {
        let a = m.get(0, j);
        if a.is_zero() {
            continue;
        }
        let minor = HMatrix::from_fn(n - 1, n - 1, |r, c| m.get(r + 1, if c < j { c } else { c + 1 }).clone());
        let term = a.mul(&determinant(&minor, ring));
        if j % 2 == 0 {
            acc.add_assign(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

/// Classical adjoint: X·adj(X) = det(X)·I.
pub fn adjugate(m: &HMatrix, ring: &DiffPolyRing) -> HMatrix {
    let n = m.rows();
    if n == 1 {
        return HMatrix::from_fn(1, 1, |_, _| ring.one());
    }
    HMatrix::from_fn(n, n, |i, j| {
        let minor = HMatrix::from_fn(n - 1, n - 1, |r, c| m.get(if r < j { r } else { r + 1 }, if c < i { c } else { c + 1 }).clone());
        let d = determinant(&minor, ring);
        if (i + j) % 2 == 0 {
            d
        } else {
            d.neg()
        }
    })
}

/// A comodule given by its coaction matrix: ρ(eⱼ) = Σᵢ eᵢ⊗Rᵢⱼ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule {
    pub coaction: HMatrix,
}

impl Comodule {
    pub fn dim(&self) -> usize {
        self.coaction.rows()
    }

    /// The standard representation R = (Xᵢⱼ).
    pub fn standard(h: &DiffHopfAlgebra) -> Result<Self, HopfError> {
        Ok(Comodule { coaction: h.generic_matrix()? })
    }

    pub fn trivial(h: &DiffHopfAlgebra) -> Self {
        Comodule { coaction: HMatrix::from_fn(1, 1, |_, _| h.ring.one()) }
    }

    /// [[R, ∂R], [0, R]].
    pub fn prolong(&self, h: &DiffHopfAlgebra) -> Result<Self, HopfError> {
        let dr = self.coaction.map(|p| h.derive(p));
        if let Some(o) = dr.entries().iter().filter_map(DiffPoly::max_order).max() {
            if o > h.order {
                return Err(HopfError::Truncation { what: "prolonged coaction".into(), needed: o, max: h.order });
            }
        }
        let n = self.dim();
        Ok(Comodule { coaction: HMatrix::block2(&self.coaction, &dr, &HMatrix::zeros(n, n), &self.coaction) })
    }

    pub fn tensor(&self, other: &Comodule) -> Self {
        Comodule { coaction: self.coaction.kron(&other.coaction) }
    }

    /// Coaction S(R)ᵀ on the dual basis.
    pub fn dual(&self, h: &DiffHopfAlgebra) -> Result<Self, HopfError> {
        Ok(Comodule { coaction: self.coaction.try_map(|p| h.coinverse(p))?.transpose() })
    }

    pub fn dsum(&self, other: &Comodule) -> Self {
        Comodule { coaction: HMatrix::block_diag(&self.coaction, &other.coaction) }
    }

    /// Δ(R) = R⊗̇R and ε(R) = I.
    pub fn check(&self, h: &DiffHopfAlgebra) -> Result<Vec<AxiomReport>, HopfError> {
        let n = self.dim();
        let objs = vec![format!("comodule of dim {n}")];
        let mut coassoc = AxiomReport::new("comodule-coassociativity", objs.clone());
        let rr = self.coaction.tensor_dot(&self.coaction);
        'a: for i in 0..n {
            for j in 0..n {
                let lhs = h.comult(self.coaction.get(i, j))?;
                if !h.equal(&lhs, rr.get(i, j))? {
                    coassoc = coassoc.fail(format!("entry ({i}, {j}): {} ≠ {}", h.display(&lhs), h.display(rr.get(i, j))));
                    break 'a;
                }
            }
        }
        let mut counit = AxiomReport::new("comodule-counit", objs);
        'b: for i in 0..n {
            for j in 0..n {
                let e = h.counit(self.coaction.get(i, j))?;
                let want = h.field().int(i64::from(i == j));
                if e != want {
                    counit = counit.fail(format!("entry ({i}, {j}): ε = {e}, expected {want}"));
                    break 'b;
                }
            }
        }
        Ok(vec![coassoc, counit])
    }
}
