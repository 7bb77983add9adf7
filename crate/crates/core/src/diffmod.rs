//! Parametrized linear systems ∂ₓY = AY, their morphisms, and the prolongation functor.

use std::fmt;

use thiserror::Error;

use crate::field::{DiffField, FieldError, RationalFunction};
use crate::matrix::{Matrix, Mismatch};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModError {
    #[error("modules live over different fields")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not a morphism: entry ({}, {}) has {} on the left and {} on the right", .0.row, .0.col, .0.left, .0.right)]
    NotMorphism(Mismatch),
    #[error("system matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("dimension {0} exceeds the cap {1}")]
    CapExceeded(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// How the prolongation functor acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// M⁽¹⁾ = K[∂]≤1 ⊗ M with system [[A, ∂_tA], [0, A]].
    #[default]
    Parametric,
    /// F(M) = M ⊕ M.
    Trivial,
}

/// Describes the ordered basis of a constructed module in terms of its parents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisTag {
    Base(String),
    Unit,
    /// Basis (1⊗e₁,…,1⊗eₙ, ∂⊗e₁,…,∂⊗eₙ); in trivial mode the two summands of M⊕M.
    Prolong(Box<BasisTag>, Mode),
    /// Kronecker order eᵢ⊗fⱼ at index i·dim(f) + j; carries dim(f).
    Tensor(Box<BasisTag>, Box<BasisTag>, usize),
    Dual(Box<BasisTag>),
    /// Carries the dimension of the first summand.
    Sum(Box<BasisTag>, Box<BasisTag>, usize),
}

impl BasisTag {
    pub fn labels(&self, dim: usize) -> Vec<String> {
        fn go(t: &BasisTag, dim: usize) -> Vec<String> {
            match t {
                BasisTag::Base(name) => (1..=dim).map(|i| format!("{name}{i}")).collect(),
                BasisTag::Unit => vec!["1".into(); dim],
                BasisTag::Prolong(inner, Mode::Parametric) => {
                    let l = go(inner, dim / 2);
                    l.iter().map(|s| format!("1⊗{s}")).chain(l.iter().map(|s| format!("∂⊗{s}"))).collect()
                }
                BasisTag::Prolong(inner, Mode::Trivial) => {
                    let l = go(inner, dim / 2);
                    l.iter().map(|s| format!("({s},0)")).chain(l.iter().map(|s| format!("(0,{s})"))).collect()
                }
                BasisTag::Tensor(a, b, db) => {
                    let la = if *db == 0 { Vec::new() } else { go(a, dim / db) };
                    let lb = go(b, *db);
                    la.iter().flat_map(|x| lb.iter().map(move |y| format!("({x})⊗({y})"))).collect()
                }
                BasisTag::Dual(a) => go(a, dim).into_iter().map(|s| format!("({s})*")).collect(),
                BasisTag::Sum(a, b, da) => {
                    let da = *da;
                    let mut l = go(a, da);
                    l.extend(go(b, dim - da));
                    l
                }
            }
        }
        go(self, dim)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffModule {
    sys: Matrix,
    field: DiffField,
    tag: BasisTag,
}

impl DiffModule {
    pub fn new(field: &DiffField, sys: Matrix, name: &str) -> Result<Self, ModError> {
        Self::tagged(field, sys, BasisTag::Base(name.to_string()))
    }

    pub fn tagged(field: &DiffField, sys: Matrix, tag: BasisTag) -> Result<Self, ModError> {
        if !sys.is_square() {
            return Err(ModError::NotSquare(sys.rows(), sys.cols()));
        }
        if sys.vars() != field.vars() {
            return Err(ModError::FieldMismatch);
        }
        Ok(DiffModule { sys, field: field.clone(), tag })
    }

    pub fn parse(field: &DiffField, rows: &[Vec<&str>], name: &str) -> Result<Self, ModError> {
        Self::new(field, Matrix::parse(field, rows)?, name)
    }

    pub fn dim(&self) -> usize {
        self.sys.rows()
    }

    pub fn sys(&self) -> &Matrix {
        &self.sys
    }

    pub fn field(&self) -> &DiffField {
        &self.field
    }

    pub fn tag(&self) -> &BasisTag {
        &self.tag
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.tag.labels(self.dim())
    }

    pub fn identity(&self) -> ModuleMorphism {
        ModuleMorphism { src: self.clone(), dst: self.clone(), mat: Matrix::identity(&self.field, self.dim()) }
    }
}

impl fmt::Display for DiffModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {} system {}", self.dim(), self.sys)
    }
}

/// A K-linear map between modules; a morphism when ∂ₓF = BF − FA.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMorphism {
    pub src: DiffModule,
    pub dst: DiffModule,
    pub mat: Matrix,
}

impl ModuleMorphism {
    pub fn new(src: &DiffModule, dst: &DiffModule, mat: Matrix) -> Result<Self, ModError> {
        if mat.shape() != (dst.dim(), src.dim()) {
            return Err(ModError::Shape(format!("matrix is {}x{}, expected {}x{}", mat.rows(), mat.cols(), dst.dim(), src.dim())));
        }
        if src.field != dst.field {
            return Err(ModError::FieldMismatch);
        }
        Ok(ModuleMorphism { src: src.clone(), dst: dst.clone(), mat })
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ModuleMorphism) -> Result<ModuleMorphism, ModError> {
        if first.dst.dim() != self.src.dim() {
            return Err(ModError::Shape(format!("cannot compose through dims {} and {}", first.dst.dim(), self.src.dim())));
        }
        Ok(ModuleMorphism { src: first.src.clone(), dst: self.dst.clone(), mat: self.mat.mul(&first.mat) })
    }

    /// First entry where ∂ₓF differs from BF − FA.
    pub fn defect(&self) -> Option<Mismatch> {
        let field = self.src.field();
        let lhs = self.mat.map(|a| field.dx(a));
        let rhs = self.dst.sys.mul(&self.mat).sub(&self.mat.mul(&self.src.sys));
        lhs.first_difference(&rhs)
    }

    pub fn is_morphism(&self) -> bool {
        self.defect().is_none()
    }
}

/// The category of systems over a field with a chosen prolongation mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffCategory {
    field: DiffField,
    mode: Mode,
}

impl DiffCategory {
    pub fn new(field: &DiffField, mode: Mode) -> Result<Self, ModError> {
        if mode == Mode::Parametric && field.parameter().is_none() {
            return Err(FieldError::NoParameter.into());
        }
        Ok(DiffCategory { field: field.clone(), mode })
    }

    pub fn parametric(field: &DiffField) -> Result<Self, ModError> {
        Self::new(field, Mode::Parametric)
    }

    pub fn trivial(field: &DiffField) -> Self {
        DiffCategory { field: field.clone(), mode: Mode::Trivial }
    }

    pub fn field(&self) -> &DiffField {
        &self.field
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    fn own(&self, m: &DiffModule) -> Result<(), ModError> {
        if m.field != self.field {
            Err(ModError::FieldMismatch)
        } else {
            Ok(())
        }
    }

    fn dt_matrix(&self, m: &Matrix) -> Matrix {
        m.map(|a| self.field.dt(a).expect("parametric category has a parameter"))
    }

    /// [[F, ∂_tF], [0, F]] in parametric mode, diag(F, F) in trivial mode.
    pub fn prolong_matrix(&self, f: &Matrix) -> Matrix {
        let z = Matrix::zeros(&self.field, f.rows(), f.cols());
        match self.mode {
            Mode::Parametric => Matrix::block2(f, &self.dt_matrix(f), &z, f),
            Mode::Trivial => Matrix::block2(f, &z.clone(), &z, f),
        }
    }

    pub fn prolong(&self, m: &DiffModule) -> Result<DiffModule, ModError> {
        self.own(m)?;
        Ok(DiffModule {
            sys: self.prolong_matrix(&m.sys),
            field: self.field.clone(),
            tag: BasisTag::Prolong(Box::new(m.tag.clone()), self.mode),
        })
    }

    /// The system diag(A, A) of F(M) = M ⊕ M regardless of mode.
    pub fn trivial_prolong(&self, m: &DiffModule) -> Result<DiffModule, ModError> {
        DiffCategory::trivial(&self.field).prolong(m)
    }

    pub fn prolong_morphism(&self, f: &ModuleMorphism) -> Result<ModuleMorphism, ModError> {
        if let Some(d) = f.defect() {
            return Err(ModError::NotMorphism(d));
        }
        Ok(ModuleMorphism { src: self.prolong(&f.src)?, dst: self.prolong(&f.dst)?, mat: self.prolong_matrix(&f.mat) })
    }

    pub fn unit(&self) -> DiffModule {
        DiffModule { sys: Matrix::zeros(&self.field, 1, 1), field: self.field.clone(), tag: BasisTag::Unit }
    }

    pub fn zero_object(&self) -> DiffModule {
        DiffModule { sys: Matrix::zeros(&self.field, 0, 0), field: self.field.clone(), tag: BasisTag::Base("z".into()) }
    }

    /// A⊗I + I⊗B on the Kronecker basis.
    pub fn tensor(&self, m: &DiffModule, n: &DiffModule) -> Result<DiffModule, ModError> {
        self.own(m)?;
        self.own(n)?;
        let im = Matrix::identity(&self.field, m.dim());
        let in_ = Matrix::identity(&self.field, n.dim());
        let sys = m.sys.kron(&in_).add(&im.kron(&n.sys));
        Ok(DiffModule { sys, field: self.field.clone(), tag: BasisTag::Tensor(Box::new(m.tag.clone()), Box::new(n.tag.clone()), n.dim()) })
    }

    /// −Aᵀ on the dual basis.
    pub fn dual(&self, m: &DiffModule) -> Result<DiffModule, ModError> {
        self.own(m)?;
        Ok(DiffModule { sys: m.sys.transpose().neg(), field: self.field.clone(), tag: BasisTag::Dual(Box::new(m.tag.clone())) })
    }

    pub fn dsum(&self, m: &DiffModule, n: &DiffModule) -> Result<DiffModule, ModError> {
        self.own(m)?;
        self.own(n)?;
        Ok(DiffModule {
            sys: Matrix::block_diag(&m.sys, &n.sys),
            field: self.field.clone(),
            tag: BasisTag::Sum(Box::new(m.tag.clone()), Box::new(n.tag.clone()), m.dim()),
        })
    }

    /// i_M : M → M⁽¹⁾, v ↦ 1⊗v, matrix [I; 0].
    pub fn inclusion(&self, m: &DiffModule) -> Result<ModuleMorphism, ModError> {
        let n = m.dim();
        let mat = Matrix::vstack(&Matrix::identity(&self.field, n), &Matrix::zeros(&self.field, n, n));
        ModuleMorphism::new(m, &self.prolong(m)?, mat)
    }

    /// φ_M : M⁽¹⁾ → M, 1⊗v ↦ 0, ∂⊗v ↦ v, matrix [0 I].
    pub fn projection(&self, m: &DiffModule) -> Result<ModuleMorphism, ModError> {
        let n = m.dim();
        let mat = Matrix::hstack(&Matrix::zeros(&self.field, n, n), &Matrix::identity(&self.field, n));
        ModuleMorphism::new(&self.prolong(m)?, m, mat)
    }

    /// Left inverse of the inclusion, [I 0].
    pub fn inclusion_left_inverse(&self, m: &DiffModule) -> Result<ModuleMorphism, ModError> {
        let n = m.dim();
        let mat = Matrix::hstack(&Matrix::identity(&self.field, n), &Matrix::zeros(&self.field, n, n));
        ModuleMorphism::new(&self.prolong(m)?, m, mat)
    }

    /// The derivation on K induced by F − G, obtained by factoring (F−G)(a) on 𝟙⁽¹⁾
    /// through 𝟙⁽¹⁾/i(𝟙) ≅ 𝟙 on the source side and back through i on the target side.
    pub fn induced_derivation(&self, a: &RationalFunction) -> Result<RationalFunction, ModError> {
        if !self.field.owns(a) {
            return Err(ModError::FieldMismatch);
        }
        let unit = self.unit();
        let fa = self.prolong_matrix(&Matrix::from_rows(&self.field, vec![vec![a.clone()]]));
        let ga = Matrix::identity(&self.field, 2).scale(a);
        let diff = fa.sub(&ga);
        let i = self.inclusion(&unit)?.mat;
        let phi = self.projection(&unit)?.mat;
        let i_inv = self.inclusion_left_inverse(&unit)?.mat;
        // (F−G)(a) kills i(𝟙) and lands in i(𝟙)
        debug_assert!(diff.mul(&i).is_zero());
        debug_assert!(phi.mul(&diff).is_zero());
        // a section of φ picks the representative ∂⊗1 of the quotient
        let section = Matrix::vstack(&Matrix::zeros(&self.field, 1, 1), &Matrix::identity(&self.field, 1));
        let h = diff.mul(&section);
        Ok(i_inv.mul(&h).get(0, 0).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> DiffCategory {
        DiffCategory::parametric(&DiffField::standard()).unwrap()
    }

    fn m(rows: &[Vec<&str>]) -> DiffModule {
        DiffModule::parse(cat().field(), rows, "e").unwrap()
    }

    #[test]
    fn prolong_of_tx() {
        let c = cat();
        let p = c.prolong(&m(&[vec!["t*x"]])).unwrap();
        assert_eq!(p.sys().to_strings(), vec![vec!["x*t", "x"], vec!["0", "x*t"]]);
    }

    #[test]
    fn prolong_of_t_constant_is_block_diagonal() {
        let c = cat();
        let a = m(&[vec!["x", "1"], vec!["0", "x^2"]]);
        let p = c.prolong(&a).unwrap();
        assert_eq!(p.sys(), &Matrix::block_diag(a.sys(), a.sys()));
        let z = m(&[vec!["0", "0"], vec!["0", "0"]]);
        assert!(c.prolong(&z).unwrap().sys().is_zero());
    }

    #[test]
    fn inclusion_and_projection_are_morphisms() {
        let c = cat();
        let a = m(&[vec!["t*x"]]);
        let i = c.inclusion(&a).unwrap();
        let phi = c.projection(&a).unwrap();
        assert!(i.is_morphism() && phi.is_morphism());
        assert!(phi.after(&i).unwrap().mat.is_zero());
        assert_eq!(i.mat.to_strings(), vec![vec!["1"], vec!["0"]]);
    }

    #[test]
    fn non_morphism_detected() {
        let k = DiffField::standard();
        let a = DiffModule::parse(&k, &[vec!["0"]], "e").unwrap();
        let b = DiffModule::parse(&k, &[vec!["1"]], "f").unwrap();
        let f = ModuleMorphism::new(&a, &b, Matrix::from_ints(&k, &[&[1]])).unwrap();
        assert!(!f.is_morphism());
    }

    #[test]
    fn tensor_dual_unit() {
        let c = cat();
        let a = m(&[vec!["x", "t"], vec!["1", "0"]]);
        assert_eq!(c.tensor(&c.unit(), &a).unwrap().sys(), a.sys());
        assert_eq!(c.dual(&c.dual(&a).unwrap()).unwrap().sys(), a.sys());
        let s = c.tensor(&m(&[vec!["x"]]), &m(&[vec!["t^2"]])).unwrap();
        assert_eq!(s.sys().get(0, 0), &c.field().parse("x+t^2").unwrap());
    }

    #[test]
    fn induced_derivation_matches_dt() {
        let c = cat();
        let k = c.field().clone();
        for s in ["t", "t^2", "t*x", "1/(t+1)", "5/7"] {
            let a = k.parse(s).unwrap();
            assert_eq!(c.induced_derivation(&a).unwrap(), k.dt(&a).unwrap(), "{s}");
        }
        let triv = DiffCategory::trivial(&k);
        assert!(triv.induced_derivation(&k.parse("t^2").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn labels() {
        let c = cat();
        let p = c.prolong(&m(&[vec!["0", "0"], vec!["0", "0"]])).unwrap();
        assert_eq!(p.basis_labels(), vec!["1⊗e1", "1⊗e2", "∂⊗e1", "∂⊗e2"]);
    }
}
