//! The matrix-coefficient algebra of a base object and its realization in the GLₙ ring.
//!
//! A coefficient a_V(v⊗u) on a derived object V is stored by its tensor coordinates
//! w = v⊗u in V⊗V*, so sums are bilinear by construction. The realization sends it to
//! Σᵢⱼ wᵢₙ₊ⱼ (R_V)ⱼᵢ = uᵀR_V v, and equality in the algebra is decided there.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diffalg::{DiffPoly, DiffPolyRing, Indet};
use crate::diffmod::{DiffCategory, DiffModule, ModError, ModuleMorphism};
use crate::field::{DiffField, RationalFunction};
use crate::hopf::{determinant, Comodule, DiffHopfAlgebra, HMatrix, HopfError};
use crate::matrix::Matrix;
use crate::report::AxiomReport;
use crate::structmaps::{StructError, StructMaps};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconError {
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Mod(#[from] ModError),
    #[error(transparent)]
    Struct(#[from] StructError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{map} does not intertwine the representations: {detail}")]
    NotIntertwining { map: String, detail: String },
    #[error("group point is not invertible over its algebra")]
    NotInvertible,
    #[error("point algebra differentiates along `{found}`, expected `{expected}`")]
    DerivationMismatch { expected: String, found: String },
    #[error("object dimension {dim} exceeds cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Base,
    Unit,
    Tensor(DerivedObject, DerivedObject),
    Dual(DerivedObject),
    Dsum(DerivedObject, DerivedObject),
    Prolong(DerivedObject),
}

#[derive(Debug, PartialEq, Eq)]
struct ObjInner {
    node: Node,
    expr: String,
    module: DiffModule,
    rep: HMatrix,
    depth: usize,
}

/// An object built from the base by ⊗, *, ⊕ and prolongation, with its system and representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedObject(Arc<ObjInner>);

impl DerivedObject {
    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn expr(&self) -> &str {
        &self.0.expr
    }

    pub fn module(&self) -> &DiffModule {
        &self.0.module
    }

    /// R_V over the Hopf algebra.
    pub fn rep(&self) -> &HMatrix {
        &self.0.rep
    }

    pub fn dim(&self) -> usize {
        self.0.module.dim()
    }

    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// Highest derivative order appearing in R_V.
    pub fn order(&self) -> u16 {
        self.0.rep.entries().iter().filter_map(DiffPoly::max_order).max().unwrap_or(0)
    }
}

impl fmt::Display for DerivedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.expr)
    }
}

/// The symbol a_V(v⊗u).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixCoefficient {
    pub object: DerivedObject,
    pub v: Vec<RationalFunction>,
    pub u: Vec<RationalFunction>,
}

impl MatrixCoefficient {
    pub fn new(object: &DerivedObject, v: Vec<RationalFunction>, u: Vec<RationalFunction>) -> Result<Self, ReconError> {
        if v.len() != object.dim() || u.len() != object.dim() {
            return Err(ReconError::Shape(format!("vectors of length {}, {} on {} of dim {}", v.len(), u.len(), object, object.dim())));
        }
        Ok(MatrixCoefficient { object: object.clone(), v, u })
    }

    /// a_V(eᵢ⊗eʲ).
    pub fn basis(object: &DerivedObject, i: usize, j: usize) -> Self {
        let field_one = object.module().field().one();
        let zero = field_one.zero_like();
        let e = |k: usize| (0..object.dim()).map(|m| if m == k { field_one.clone() } else { zero.clone() }).collect();
        MatrixCoefficient { object: object.clone(), v: e(i), u: e(j) }
    }

    fn tensor(&self) -> Vec<RationalFunction> {
        self.v.iter().flat_map(|a| self.u.iter().map(move |b| a * b)).collect()
    }
}

/// A K-linear combination of coefficients, grouped by object.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<String, (DerivedObject, Vec<RationalFunction>)>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    /// The element with tensor coordinates `w` in V⊗V*.
    pub fn from_tensor(object: &DerivedObject, w: Vec<RationalFunction>) -> Self {
        assert_eq!(w.len(), object.dim() * object.dim(), "tensor coordinates");
        let mut s = FormalSum::zero();
        s.terms.insert(object.expr().to_string(), (object.clone(), w));
        s
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (k, (obj, w)) in &other.terms {
            match out.terms.get_mut(k) {
                Some((_, acc)) => acc.iter_mut().zip(w).for_each(|(a, b)| *a = &*a + b),
                None => {
                    out.terms.insert(k.clone(), (obj.clone(), w.clone()));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &RationalFunction) -> FormalSum {
        let mut out = self.clone();
        for (_, w) in out.terms.values_mut() {
            w.iter_mut().for_each(|a| *a = &*a * c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DerivedObject, &[RationalFunction])> {
        self.terms.values().map(|(o, w)| (o, w.as_slice()))
    }
}

impl From<&MatrixCoefficient> for FormalSum {
    fn from(a: &MatrixCoefficient) -> Self {
        FormalSum::from_tensor(&a.object, a.tensor())
    }
}

/// A structural morphism between derived objects.
#[derive(Clone, Debug)]
pub struct CatalogMap {
    pub name: String,
    pub src: DerivedObject,
    pub dst: DerivedObject,
    pub mat: Matrix,
}

/// A point g with entries in a differential polynomial ring over K (K itself when it has no generators).
#[derive(Clone, Debug)]
pub struct GroupPoint {
    ring: DiffPolyRing,
    g: HMatrix,
    det_inv: DiffPoly,
}

impl GroupPoint {
    pub fn new(ring: &DiffPolyRing, g: HMatrix) -> Result<Self, ReconError> {
        if g.rows() != g.cols() {
            return Err(ReconError::Shape("group point must be square".into()));
        }
        let det = determinant(&g, ring);
        let inv = match det.as_constant() {
            Some(Some(c)) if !c.is_zero() => c.inv(),
            _ => return Err(ReconError::NotInvertible),
        };
        Ok(GroupPoint { ring: ring.clone(), g, det_inv: DiffPoly::constant(inv) })
    }

    /// A K-rational point.
    pub fn over_k(field: &DiffField, g: &Matrix) -> Result<Self, ReconError> {
        let param = field.parameter().ok_or(crate::field::FieldError::NoParameter).map_err(HopfError::from)?;
        let ring = DiffPolyRing::new(field, param, &[]).map_err(HopfError::from)?;
        GroupPoint::new(&ring, HMatrix::from_k(g))
    }

    pub fn ring(&self) -> &DiffPolyRing {
        &self.ring
    }

    pub fn matrix(&self) -> &HMatrix {
        &self.g
    }

    /// Xᵢⱼ⁽ᵏ⁾ ↦ ∂ᵏgᵢⱼ and d⁽ᵏ⁾ ↦ ∂ᵏ det(g)⁻¹.
    pub fn evaluate(&self, h: &DiffHopfAlgebra, p: &DiffPoly) -> Result<DiffPoly, ReconError> {
        let n = self.g.rows();
        p.map_indets(|v| -> Result<DiffPoly, ReconError> {
            let base = if (v.var as usize) < n * n {
                self.g.get(v.var as usize / n, v.var as usize % n).clone()
            } else if Some(v.var as usize) == h.gl_size().map(|m| m * m) {
                self.det_inv.clone()
            } else {
                return Err(ReconError::Shape(format!("cannot evaluate {}", h.ring().indet_name(v))));
            };
            Ok(self.ring.derive_n(&base, v.order as usize))
        })
    }
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    cat: DiffCategory,
    maps: StructMaps,
    h: DiffHopfAlgebra,
    base: DerivedObject,
    unit: DerivedObject,
}

fn one_hot(field: &DiffField, n: usize, k: usize) -> Vec<RationalFunction> {
    (0..n).map(|i| field.int(i64::from(i == k))).collect()
}

fn prolong_coords(field: &DiffField, w: &[RationalFunction]) -> Result<Vec<RationalFunction>, ReconError> {
    let mut out = Vec::with_capacity(2 * w.len());
    for a in w {
        out.push(field.dt(a).map_err(HopfError::from)?);
    }
    out.extend(w.iter().cloned());
    Ok(out)
}

impl Reconstruction {
    /// The standard object of GLₙ carried by `base`, with the Hopf algebra truncated at `p`.
    pub fn new(base: &DiffModule, p: u16) -> Result<Self, ReconError> {
        let h = DiffHopfAlgebra::gl(base.field(), base.dim(), p)?;
        Reconstruction::with_algebra(base, h)
    }

    pub fn with_algebra(base: &DiffModule, h: DiffHopfAlgebra) -> Result<Self, ReconError> {
        if h.gl_size() != Some(base.dim()) {
            return Err(ReconError::Shape("algebra size differs from the base dimension".into()));
        }
        let cat = DiffCategory::parametric(base.field())?;
        let rep = h.generic_matrix()?;
        let base_obj = DerivedObject(Arc::new(ObjInner { node: Node::Base, expr: "X".into(), module: base.clone(), rep, depth: 0 }));
        let unit = DerivedObject(Arc::new(ObjInner {
            node: Node::Unit,
            expr: "𝟙".into(),
            module: cat.unit(),
            rep: Comodule::trivial(&h).coaction,
            depth: 0,
        }));
        Ok(Reconstruction { maps: StructMaps::new(&cat), cat, h, base: base_obj, unit })
    }

    pub fn hopf(&self) -> &DiffHopfAlgebra {
        &self.h
    }

    pub fn category(&self) -> &DiffCategory {
        &self.cat
    }

    pub fn field(&self) -> &DiffField {
        self.cat.field()
    }

    pub fn base(&self) -> DerivedObject {
        self.base.clone()
    }

    pub fn unit(&self) -> DerivedObject {
        self.unit.clone()
    }

    fn make(node: Node, expr: String, module: DiffModule, rep: HMatrix, depth: usize) -> DerivedObject {
        DerivedObject(Arc::new(ObjInner { node, expr, module, rep, depth }))
    }

    pub fn tensor(&self, a: &DerivedObject, b: &DerivedObject) -> Result<DerivedObject, ReconError> {
        let m = self.cat.tensor(a.module(), b.module())?;
        let rep = a.rep().kron(b.rep());
        Ok(Self::make(Node::Tensor(a.clone(), b.clone()), format!("({a}⊗{b})"), m, rep, 1 + a.depth().max(b.depth())))
    }

    pub fn dual(&self, a: &DerivedObject) -> Result<DerivedObject, ReconError> {
        let m = self.cat.dual(a.module())?;
        let rep = Comodule { coaction: a.rep().clone() }.dual(&self.h)?.coaction;
        Ok(Self::make(Node::Dual(a.clone()), format!("{a}*"), m, rep, 1 + a.depth()))
    }

    pub fn dsum(&self, a: &DerivedObject, b: &DerivedObject) -> Result<DerivedObject, ReconError> {
        let m = self.cat.dsum(a.module(), b.module())?;
        let rep = HMatrix::block_diag(a.rep(), b.rep());
        Ok(Self::make(Node::Dsum(a.clone(), b.clone()), format!("({a}⊕{b})"), m, rep, 1 + a.depth().max(b.depth())))
    }

    pub fn prolong(&self, a: &DerivedObject) -> Result<DerivedObject, ReconError> {
        let m = self.cat.prolong(a.module())?;
        let rep = Comodule { coaction: a.rep().clone() }.prolong(&self.h)?.coaction;
        Ok(Self::make(Node::Prolong(a.clone()), format!("{a}⁽¹⁾"), m, rep, 1 + a.depth()))
    }

    /// A seeded random derived object of depth ≤ `depth`, dimension ≤ `max_dim` and order ≤ `max_order`.
    pub fn random_object(&self, rng: &mut ChaCha8Rng, depth: usize, max_dim: usize, max_order: u16) -> Result<DerivedObject, ReconError> {
        for _ in 0..32 {
            let obj = self.random_tree(rng, depth)?;
            if obj.dim() <= max_dim && obj.order() <= max_order {
                return Ok(obj);
            }
        }
        Ok(self.base())
    }

    /// Every derived object of depth ≤ `depth` within the dimension and order bounds, without repeats.
    pub fn enumerate_objects(&self, depth: usize, max_dim: usize, max_order: u16) -> Result<Vec<DerivedObject>, ReconError> {
        let ok = |o: &DerivedObject| o.dim() <= max_dim && o.order() <= max_order;
        let mut all: BTreeMap<String, DerivedObject> = BTreeMap::new();
        let mut frontier = vec![self.base(), self.unit()];
        for o in &frontier {
            all.insert(o.expr().to_string(), o.clone());
        }
        for _ in 0..depth {
            let known: Vec<DerivedObject> = all.values().cloned().collect();
            let mut next = Vec::new();
            for a in &frontier {
                let mut cands = vec![self.dual(a), self.prolong(a)];
                for b in &known {
                    cands.push(self.tensor(a, b));
                    cands.push(self.dsum(a, b));
                    if !frontier.contains(b) {
                        cands.push(self.tensor(b, a));
                        cands.push(self.dsum(b, a));
                    }
                }
                for c in cands {
                    let c = match c {
                        Ok(c) => c,
                        Err(ReconError::Hopf(HopfError::Truncation { .. })) => continue,
                        Err(e) => return Err(e),
                    };
                    if ok(&c) && !all.contains_key(c.expr()) {
                        all.insert(c.expr().to_string(), c.clone());
                        next.push(c);
                    }
                }
            }
            frontier = next;
        }
        Ok(all.into_values().collect())
    }

    fn random_tree(&self, rng: &mut ChaCha8Rng, depth: usize) -> Result<DerivedObject, ReconError> {
        if depth == 0 || rng.gen_bool(0.25) {
            return Ok(if rng.gen_bool(0.1) { self.unit() } else { self.base() });
        }
        match rng.gen_range(0..4) {
            0 => {
                let a = self.random_tree(rng, depth - 1)?;
                let b = self.random_tree(rng, depth - 1)?;
                self.tensor(&a, &b)
            }
            1 => self.dual(&self.random_tree(rng, depth - 1)?),
            2 => {
                let a = self.random_tree(rng, depth - 1)?;
                let b = self.random_tree(rng, depth - 1)?;
                self.dsum(&a, &b)
            }
            _ => self.prolong(&self.random_tree(rng, depth - 1)?),
        }
    }

    /// A seeded random coefficient on `object` with entries of degree ≤ 1.
    pub fn random_coefficient(&self, rng: &mut ChaCha8Rng, object: &DerivedObject) -> MatrixCoefficient {
        let n = object.dim();
        let v = crate::gen::vector(rng, self.field(), n, 1);
        let u = crate::gen::vector(rng, self.field(), n, 1);
        MatrixCoefficient { object: object.clone(), v, u }
    }

    fn realize_tensor(&self, object: &DerivedObject, w: &[RationalFunction]) -> DiffPoly {
        let n = object.dim();
        let mut acc = DiffPoly::zero();
        for i in 0..n {
            for j in 0..n {
                let c = &w[i * n + j];
                if !c.is_zero() {
                    acc.add_assign(&object.rep().get(j, i).scale(c));
                }
            }
        }
        acc
    }

    /// Σ w ↦ uᵀR_V v, extended linearly.
    pub fn realize(&self, s: &FormalSum) -> DiffPoly {
        let mut acc = DiffPoly::zero();
        for (obj, w) in s.terms() {
            acc.add_assign(&self.realize_tensor(obj, w));
        }
        acc
    }

    pub fn realize_coefficient(&self, a: &MatrixCoefficient) -> DiffPoly {
        self.realize(&FormalSum::from(a))
    }

    /// u(v), extended linearly.
    pub fn counit(&self, s: &FormalSum) -> RationalFunction {
        let mut acc = self.field().zero();
        for (obj, w) in s.terms() {
            let n = obj.dim();
            for i in 0..n {
                acc = &acc + &w[i * n + i];
            }
        }
        acc
    }

    /// Σᵢ a_V(vᵢ⊗u) ⊗ a_V(v⊗uᵢ).
    pub fn comult(&self, a: &MatrixCoefficient) -> Vec<(MatrixCoefficient, MatrixCoefficient)> {
        let n = a.object.dim();
        (0..n)
            .map(|i| {
                let e = one_hot(self.field(), n, i);
                (
                    MatrixCoefficient { object: a.object.clone(), v: e.clone(), u: a.u.clone() },
                    MatrixCoefficient { object: a.object.clone(), v: a.v.clone(), u: e },
                )
            })
            .collect()
    }

    /// a_{V*}(u⊗v).
    pub fn coinverse(&self, a: &MatrixCoefficient) -> Result<MatrixCoefficient, ReconError> {
        let dual = self.dual(&a.object)?;
        Ok(MatrixCoefficient { object: dual, v: a.u.clone(), u: a.v.clone() })
    }

    /// a_{V⊗W}((v⊗w)⊗(u⊗t)).
    pub fn mult(&self, a: &MatrixCoefficient, b: &MatrixCoefficient) -> Result<MatrixCoefficient, ReconError> {
        let obj = self.tensor(&a.object, &b.object)?;
        let kron = |x: &[RationalFunction], y: &[RationalFunction]| -> Vec<RationalFunction> {
            x.iter().flat_map(|p| y.iter().map(move |q| p * q)).collect()
        };
        Ok(MatrixCoefficient { object: obj, v: kron(&a.v, &b.v), u: kron(&a.u, &b.u) })
    }

    /// Bilinear extension of `mult` to sums.
    pub fn mult_sums(&self, a: &FormalSum, b: &FormalSum) -> Result<FormalSum, ReconError> {
        let mut out = FormalSum::zero();
        for (oa, wa) in a.terms() {
            for (ob, wb) in b.terms() {
                let obj = self.tensor(oa, ob)?;
                let (n, m) = (oa.dim(), ob.dim());
                let nm = n * m;
                let mut w = vec![self.field().zero(); nm * nm];
                for i in 0..n {
                    for j in 0..n {
                        let x = &wa[i * n + j];
                        if x.is_zero() {
                            continue;
                        }
                        for k in 0..m {
                            for l in 0..m {
                                w[(i * m + k) * nm + (j * m + l)] = x * &wb[k * m + l];
                            }
                        }
                    }
                }
                out = out.add(&FormalSum::from_tensor(&obj, w));
            }
        }
        Ok(out)
    }

    /// S_V(∂⊗w) on V⁽¹⁾⊗(V⁽¹⁾)*, where ∂⊗w has coordinates (∂_t w, w) in (V⊗V*)⁽¹⁾.
    pub fn derive(&self, s: &FormalSum) -> Result<FormalSum, ReconError> {
        let mut out = FormalSum::zero();
        for (obj, w) in s.terms() {
            let n = obj.dim();
            let nn = n * n;
            let hat = prolong_coords(self.field(), w)?;
            let p = self.prolong(obj)?;
            // θ⊗(vᵢ⊗vʲ) ↦ (θ⊗vᵢ)⊗(1⊗vⱼ)*, the same index map as the structural S matrix
            let mut image = vec![self.field().zero(); 4 * nn];
            for th in 0..2 {
                for i in 0..n {
                    for j in 0..n {
                        image[(th * n + i) * (2 * n) + j] = hat[th * nn + i * n + j].clone();
                    }
                }
            }
            out = out.add(&FormalSum::from_tensor(&p, image));
        }
        Ok(out)
    }

    pub fn derive_coefficient(&self, a: &MatrixCoefficient) -> Result<FormalSum, ReconError> {
        self.derive(&FormalSum::from(a))
    }

    fn objs(&self, list: &[&DerivedObject]) -> Vec<String> {
        list.iter().map(|o| format!("{o} (dim {})", o.dim())).collect()
    }

    fn compare(&self, name: &str, objects: Vec<String>, lhs: &DiffPoly, rhs: &DiffPoly) -> Result<AxiomReport, ReconError> {
        let rep = AxiomReport::new(name, objects);
        if lhs == rhs || self.h.equal(lhs, rhs)? {
            Ok(rep)
        } else {
            Ok(rep.fail(format!("{} ≠ {}", self.h.display(lhs), self.h.display(rhs))))
        }
    }

    /// realize(ab) = realize(a)·realize(b).
    pub fn check_multiplicative(&self, a: &MatrixCoefficient, b: &MatrixCoefficient) -> Result<AxiomReport, ReconError> {
        let ab = self.realize_coefficient(&self.mult(a, b)?);
        let prod = self.realize_coefficient(a).mul(&self.realize_coefficient(b));
        self.compare("realize-multiplicative", self.objs(&[&a.object, &b.object]), &ab, &prod)
    }

    /// realize∘∂ = ∂∘realize.
    pub fn check_derive_contract(&self, a: &MatrixCoefficient) -> Result<AxiomReport, ReconError> {
        let lhs = self.realize(&self.derive_coefficient(a)?);
        let rhs = self.h.derive(&self.realize_coefficient(a));
        self.compare("realize-derivation", self.objs(&[&a.object]), &lhs, &rhs)
    }

    /// Δ∘realize = (realize⊗realize)∘Δ.
    pub fn check_comult_contract(&self, a: &MatrixCoefficient) -> Result<AxiomReport, ReconError> {
        let lhs = self.h.comult(&self.realize_coefficient(a))?;
        let mut rhs = DiffPoly::zero();
        for (x, y) in self.comult(a) {
            rhs.add_assign(&self.realize_coefficient(&x).mul(&self.realize_coefficient(&y).reslot(|s| s + 1)));
        }
        self.compare("realize-comult", self.objs(&[&a.object]), &lhs, &rhs)
    }

    /// ε∘realize = counit.
    pub fn check_counit_contract(&self, a: &MatrixCoefficient) -> Result<AxiomReport, ReconError> {
        let lhs = DiffPoly::constant(self.h.counit(&self.realize_coefficient(a))?);
        let rhs = DiffPoly::constant(self.counit(&FormalSum::from(a)));
        self.compare("realize-counit", self.objs(&[&a.object]), &lhs, &rhs)
    }

    /// S∘realize = realize∘coinverse.
    pub fn check_coinverse_contract(&self, a: &MatrixCoefficient) -> Result<AxiomReport, ReconError> {
        let lhs = self.h.coinverse(&self.realize_coefficient(a))?;
        let rhs = self.realize_coefficient(&self.coinverse(a)?);
        self.compare("realize-coinverse", self.objs(&[&a.object]), &lhs, &rhs)
    }

    /// ∂(ab) = ∂(a)·b + a·∂(b), all sides through the coefficient operations.
    pub fn check_product_rule(&self, a: &MatrixCoefficient, b: &MatrixCoefficient) -> Result<AxiomReport, ReconError> {
        let ab = FormalSum::from(&self.mult(a, b)?);
        let lhs = self.realize(&self.derive(&ab)?);
        let (fa, fb) = (FormalSum::from(a), FormalSum::from(b));
        let rhs_sum = self.mult_sums(&self.derive(&fa)?, &fb)?.add(&self.mult_sums(&fa, &self.derive(&fb)?)?);
        let rhs = self.realize(&rhs_sum);
        self.compare("product-rule", self.objs(&[&a.object, &b.object]), &lhs, &rhs)
    }

    /// S(∂(realize a)) = ∂(S(realize a)).
    pub fn check_diffdual(&self, a: &MatrixCoefficient) -> Result<AxiomReport, ReconError> {
        let r = self.realize_coefficient(a);
        let lhs = self.h.coinverse(&self.h.derive(&r))?;
        let rhs = self.h.derive(&self.h.coinverse(&r)?);
        self.compare("diffdual", self.objs(&[&a.object]), &lhs, &rhs)
    }

    /// The pairing ε(∂a) equals ∂_t(u(v)).
    pub fn check_diffeval(&self, a: &MatrixCoefficient) -> Result<AxiomReport, ReconError> {
        let lhs = self.counit(&self.derive_coefficient(a)?);
        let uv = self.counit(&FormalSum::from(a));
        let rhs = self.field().dt(&uv).map_err(HopfError::from)?;
        let rep = AxiomReport::new("diffeval", self.objs(&[&a.object]));
        Ok(if lhs == rhs { rep } else { rep.fail(format!("{lhs} ≠ {rhs}")) })
    }

    /// R_W·f = f·R_V over the Hopf algebra.
    pub fn intertwines(&self, f: &CatalogMap) -> Result<Option<String>, ReconError> {
        let fm = HMatrix::from_k(&f.mat);
        let lhs = f.dst.rep().mul(&fm);
        let rhs = fm.mul(f.src.rep());
        for r in 0..lhs.rows() {
            for c in 0..lhs.cols() {
                if !self.h.equal(lhs.get(r, c), rhs.get(r, c))? {
                    return Ok(Some(format!("entry ({r}, {c}): {} ≠ {}", self.h.display(lhs.get(r, c)), self.h.display(rhs.get(r, c)))));
                }
            }
        }
        Ok(None)
    }

    /// a_V(v⊗fᵀu) = a_W(fv⊗u), after checking that f is a morphism intertwining R_V and R_W.
    pub fn check_relation(&self, f: &CatalogMap, v: &[RationalFunction], u: &[RationalFunction]) -> Result<AxiomReport, ReconError> {
        let m = ModuleMorphism::new(f.src.module(), f.dst.module(), f.mat.clone())?;
        if let Some(d) = m.defect() {
            return Err(ReconError::NotIntertwining { map: f.name.clone(), detail: format!("not a morphism at ({}, {})", d.row, d.col) });
        }
        if let Some(detail) = self.intertwines(f)? {
            return Err(ReconError::NotIntertwining { map: f.name.clone(), detail });
        }
        let vars = f.mat.vars().clone();
        let fv = f.mat.mul(&Matrix::col_vector(&vars, v)).column(0);
        let ftu = f.mat.transpose().mul(&Matrix::col_vector(&vars, u)).column(0);
        let lhs = self.realize_coefficient(&MatrixCoefficient::new(&f.src, v.to_vec(), ftu)?);
        let rhs = self.realize_coefficient(&MatrixCoefficient::new(&f.dst, fv, u.to_vec())?);
        let mut rep = self.compare("relation", self.objs(&[&f.src, &f.dst]), &lhs, &rhs)?;
        rep.axiom = format!("relation {}", f.name);
        Ok(rep)
    }

    /// Structural morphisms among the listed objects, skipping any whose ends exceed `max_dim`.
    pub fn catalog(&self, objects: &[DerivedObject], max_dim: usize) -> Result<Vec<CatalogMap>, ReconError> {
        let mut out = Vec::new();
        let mut push = |name: String, src: DerivedObject, dst: DerivedObject, mat: Matrix| {
            if src.dim() <= max_dim && dst.dim() <= max_dim {
                out.push(CatalogMap { name, src, dst, mat });
            }
        };
        for v in objects {
            let n = v.dim();
            let p = self.prolong(v)?;
            let dual = self.dual(v)?;
            push(format!("i_{v}"), v.clone(), p.clone(), self.cat.inclusion(v.module())?.mat);
            push(format!("φ_{v}"), p.clone(), v.clone(), self.cat.projection(v.module())?.mat);
            let vvd = self.tensor(v, &dual)?;
            push(format!("ev_{v}"), vvd.clone(), self.unit(), self.maps.evaluation_matrix(n));
            if n * n * n * n <= max_dim {
                push(format!("Δ_{v}"), vvd.clone(), self.tensor(&vvd, &vvd)?, self.maps.delta_matrix(n));
            }
            push(format!("D_{v}"), self.dual(&p)?, self.prolong(&dual)?, self.maps.d_matrix(n));
            for w in objects {
                let vw = self.tensor(v, w)?;
                push(format!("ψ_{{{v},{w}}}"), vw.clone(), self.tensor(w, v)?, self.maps.braiding_matrix(n, w.dim()));
                if 2 * n * w.dim() <= max_dim && 4 * n * w.dim() <= 4 * max_dim {
                    let dst = self.tensor(&p, &self.prolong(w)?)?;
                    push(format!("T_{{{v},{w}}}"), self.prolong(&vw)?, dst, self.maps.t_matrix(n, w.dim()));
                }
            }
        }
        Ok(out)
    }

    /// S_V, which is not a morphism when ∂_tA ≠ 0.
    pub fn s_map(&self, v: &DerivedObject) -> Result<CatalogMap, ReconError> {
        let vvd = self.tensor(v, &self.dual(v)?)?;
        let p = self.prolong(v)?;
        let dst = self.tensor(&p, &self.dual(&p)?)?;
        Ok(CatalogMap { name: format!("S_{v}"), src: self.prolong(&vvd)?, dst, mat: self.maps.s_matrix(v.dim()) })
    }

    fn lambda(&self, point: &GroupPoint, obj: &DerivedObject, overrides: &BTreeMap<String, HMatrix>) -> Result<HMatrix, ReconError> {
        if let Some(m) = overrides.get(obj.expr()) {
            return Ok(m.clone());
        }
        obj.rep().try_map(|p| point.evaluate(&self.h, p))
    }

    /// Tensor spreading, equivariance over the catalog, and compatibility with prolongation.
    pub fn check_group_point(&self, point: &GroupPoint, objects: &[DerivedObject]) -> Result<Vec<AxiomReport>, ReconError> {
        self.check_group_point_with(point, objects, &BTreeMap::new())
    }

    /// As `check_group_point`, with λ_V replaced for the objects named in `overrides`.
    pub fn check_group_point_with(
        &self,
        point: &GroupPoint,
        objects: &[DerivedObject],
        overrides: &BTreeMap<String, HMatrix>,
    ) -> Result<Vec<AxiomReport>, ReconError> {
        let param = self.field().parameter().unwrap_or_default();
        if point.ring().derivation() != param {
            return Err(ReconError::DerivationMismatch { expected: param.to_string(), found: point.ring().derivation().to_string() });
        }
        if point.matrix().rows() != self.base.dim() {
            return Err(ReconError::Shape("group point size differs from the base dimension".into()));
        }
        let names: Vec<String> = objects.iter().map(|o| o.expr().to_string()).collect();
        let lam = |o: &DerivedObject| self.lambda(point, o, overrides);
        let differs = |a: &HMatrix, b: &HMatrix| -> Option<String> {
            (0..a.rows())
                .flat_map(|r| (0..a.cols()).map(move |c| (r, c)))
                .find(|&(r, c)| a.get(r, c) != b.get(r, c))
                .map(|(r, c)| format!("entry ({r}, {c}): {} ≠ {}", point.ring().display(a.get(r, c)), point.ring().display(b.get(r, c))))
        };

        let mut spread = AxiomReport::new("tensor-spreading", names.clone());
        'a: for v in objects {
            for w in objects {
                let vw = self.tensor(v, w)?;
                if let Some(d) = differs(&lam(&vw)?, &lam(v)?.kron(&lam(w)?)) {
                    spread = spread.fail(format!("λ_{vw}: {d}"));
                    break 'a;
                }
            }
        }

        let mut equi = AxiomReport::new("equivariance", names.clone());
        for f in self.catalog(objects, 16)? {
            let fm = HMatrix::from_k(&f.mat);
            if let Some(d) = differs(&lam(&f.dst)?.mul(&fm), &fm.mul(&lam(&f.src)?)) {
                equi = equi.fail(format!("{}: {d}", f.name));
                break;
            }
        }

        let mut commute = AxiomReport::new("commute-with-d", names);
        for v in objects {
            let p = self.prolong(v)?;
            let l = lam(v)?;
            let dl = l.map(|e| point.ring().derive(e));
            let expected = HMatrix::block2(&l, &dl, &HMatrix::zeros(l.rows(), l.cols()), &l);
            if let Some(d) = differs(&lam(&p)?, &expected) {
                commute = commute.fail(format!("λ_{p}: {d}"));
                break;
            }
        }
        Ok(vec![spread, equi, commute])
    }

    fn realize_pair(&self, obj: &DerivedObject, w: &[RationalFunction]) -> DiffPoly {
        // element of (V⊗V*)⊗(V⊗V*) realized in A⊗A
        let nn = obj.dim() * obj.dim();
        let mut acc = DiffPoly::zero();
        for a in 0..nn {
            let (vi, vj) = (a / obj.dim(), a % obj.dim());
            let left = obj.rep().get(vj, vi);
            if left.is_zero() {
                continue;
            }
            for b in 0..nn {
                let c = &w[a * nn + b];
                if c.is_zero() {
                    continue;
                }
                let (wi, wj) = (b / obj.dim(), b % obj.dim());
                acc.add_assign(&left.mul(&obj.rep().get(wj, wi).reslot(|s| s + 1)).scale(c));
            }
        }
        acc
    }

    /// Whether the two composites of the comultiplication diagram agree after realization.
    pub fn realized_comult(&self, m: &DiffModule) -> Result<bool, ReconError> {
        let (lhs, rhs) = self.maps.comult_composites(m)?;
        let p = self.prolong(&self.base)?;
        for c in 0..lhs.cols() {
            let (l, r) = (self.realize_pair(&p, &lhs.column(c)), self.realize_pair(&p, &rhs.column(c)));
            if !self.h.equal(&l, &r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the two composites of the duality diagram agree after realization, reading
    /// (M*)⁽¹⁾⊗M⁽¹⁾ as (M*)⁽¹⁾⊗((M*)⁽¹⁾)* through Dᵀ.
    pub fn realized_dual_compat(&self, m: &DiffModule) -> Result<bool, ReconError> {
        let n = m.dim();
        let (lhs, rhs) = self.maps.dual_compat_composites(m)?;
        let w = self.prolong(&self.dual(&self.base)?)?;
        let fix = Matrix::identity(self.field(), 2 * n).kron(&self.maps.d_matrix(n).transpose());
        let (lhs, rhs) = (fix.mul(&lhs), fix.mul(&rhs));
        for c in 0..lhs.cols() {
            let (l, r) = (self.realize_tensor(&w, &lhs.column(c)), self.realize_tensor(&w, &rhs.column(c)));
            if !self.h.equal(&l, &r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Indeterminate of a point ring, for building non-constant group points.
pub fn point_indet(ring: &DiffPolyRing, name: &str) -> Result<DiffPoly, ReconError> {
    Ok(ring.of(Indet::new(ring.index(name).map_err(HopfError::from)?, 0)))
}
