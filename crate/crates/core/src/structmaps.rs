//! Structural morphisms ψ, ev, Δ, T, D, S as explicit matrices and the diagram verifier.
//!
//! Prolonged bases are ordered (1⊗e, ∂⊗e); a tensor of prolonged modules uses the
//! Kronecker order, so (θ⊗eᵢ)⊗(η⊗fⱼ) sits at (θ·n + i)·2m + (η·m + j) with θ, η ∈ {0 = 1, 1 = ∂}.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diffmod::{BasisTag, DiffCategory, DiffModule, ModError, ModuleMorphism};
use crate::field::RationalFunction;
use crate::matrix::Matrix;
use crate::report::AxiomReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructError {
    #[error(transparent)]
    Mod(#[from] ModError),
    #[error("axiom `{0}` needs a second module")]
    MissingSecond(String),
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("product dimension {dim} exceeds the cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    MorphismS,
    Leibniz,
    Comult,
    TensorCompat,
    DualCompat,
    Exactness,
    UnitSplitting,
}

impl Axiom {
    pub const ALL: [Axiom; 7] =
        [Axiom::MorphismS, Axiom::Leibniz, Axiom::Comult, Axiom::TensorCompat, Axiom::DualCompat, Axiom::Exactness, Axiom::UnitSplitting];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::MorphismS => "morphismS",
            Axiom::Leibniz => "leibniz",
            Axiom::Comult => "comult",
            Axiom::TensorCompat => "tensor-compat",
            Axiom::DualCompat => "dual-compat",
            Axiom::Exactness => "exactness",
            Axiom::UnitSplitting => "unit-splitting",
        }
    }

    pub fn needs_second(self) -> bool {
        matches!(self, Axiom::Leibniz | Axiom::TensorCompat)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = StructError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Axiom::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| StructError::UnknownAxiom(s.to_string()))
    }
}

/// Short name of a module built from named bases.
pub fn describe(m: &DiffModule) -> String {
    fn go(t: &BasisTag) -> String {
        match t {
            BasisTag::Base(n) => n.clone(),
            BasisTag::Unit => "1".into(),
            BasisTag::Prolong(a, _) => format!("F({})", go(a)),
            BasisTag::Tensor(a, b, _) => format!("({}⊗{})", go(a), go(b)),
            BasisTag::Dual(a) => format!("{}*", go(a)),
            BasisTag::Sum(a, b, _) => format!("({}⊕{})", go(a), go(b)),
        }
    }
    format!("{} (dim {})", go(m.tag()), m.dim())
}

/// Default bound on dim(M)·dim(N) for the tensor-compatibility diagram.
pub const DEFAULT_CAP: usize = 6;

/// Builds the structural maps of one category.
#[derive(Clone, Debug)]
pub struct StructMaps {
    cat: DiffCategory,
}

fn kron_all(ms: &[&Matrix]) -> Matrix {
    let mut it = ms.iter();
    let first = (*it.next().expect("at least one factor")).clone();
    it.fold(first, |acc, m| acc.kron(m))
}

impl StructMaps {
    pub fn new(cat: &DiffCategory) -> Self {
        StructMaps { cat: cat.clone() }
    }

    pub fn category(&self) -> &DiffCategory {
        &self.cat
    }

    fn zeros(&self, r: usize, c: usize) -> Matrix {
        Matrix::zeros(self.cat.field(), r, c)
    }

    fn id(&self, n: usize) -> Matrix {
        Matrix::identity(self.cat.field(), n)
    }

    fn one(&self) -> RationalFunction {
        self.cat.field().one()
    }

    fn morphism(&self, src: &DiffModule, dst: &DiffModule, mat: Matrix) -> Result<ModuleMorphism, StructError> {
        Ok(ModuleMorphism::new(src, dst, mat)?)
    }

    /// Permutation V⊗W → W⊗V for dims n, m.
    pub fn braiding_matrix(&self, n: usize, m: usize) -> Matrix {
        let mut p = self.zeros(n * m, n * m);
        for i in 0..n {
            for j in 0..m {
                p.set(j * n + i, i * m + j, self.one());
            }
        }
        p
    }

    /// ψ_{M,N}: M⊗N → N⊗M.
    pub fn braiding(&self, m: &DiffModule, n: &DiffModule) -> Result<ModuleMorphism, StructError> {
        let mat = self.braiding_matrix(m.dim(), n.dim());
        self.morphism(&self.cat.tensor(m, n)?, &self.cat.tensor(n, m)?, mat)
    }

    pub fn evaluation_matrix(&self, n: usize) -> Matrix {
        let mut e = self.zeros(1, n * n);
        for i in 0..n {
            e.set(0, i * n + i, self.one());
        }
        e
    }

    /// ev_M: M⊗M* → 𝟙.
    pub fn evaluation(&self, m: &DiffModule) -> Result<ModuleMorphism, StructError> {
        let src = self.cat.tensor(m, &self.cat.dual(m)?)?;
        self.morphism(&src, &self.cat.unit(), self.evaluation_matrix(m.dim()))
    }

    /// eᵢ⊗eʲ ↦ Σ_k (e_k⊗eʲ)⊗(eᵢ⊗eᵏ).
    pub fn delta_matrix(&self, n: usize) -> Matrix {
        let nn = n * n;
        let mut d = self.zeros(nn * nn, nn);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    d.set((k * n + j) * nn + (i * n + k), i * n + j, self.one());
                }
            }
        }
        d
    }

    /// Δ_M: M⊗M* → (M⊗M*)⊗(M⊗M*).
    pub fn delta_map(&self, m: &DiffModule) -> Result<ModuleMorphism, StructError> {
        let mm = self.cat.tensor(m, &self.cat.dual(m)?)?;
        let dst = self.cat.tensor(&mm, &mm)?;
        self.morphism(&mm, &dst, self.delta_matrix(m.dim()))
    }

    /// 1⊗(x⊗y) ↦ (1⊗x)⊗(1⊗y), ∂⊗(x⊗y) ↦ (∂⊗x)⊗(1⊗y) + (1⊗x)⊗(∂⊗y).
    pub fn t_matrix(&self, n: usize, m: usize) -> Matrix {
        let nm = n * m;
        let mut t = self.zeros(4 * nm, 2 * nm);
        let idx = |si: usize, i: usize, sj: usize, j: usize| (si * n + i) * (2 * m) + (sj * m + j);
        for i in 0..n {
            for j in 0..m {
                let c = i * m + j;
                t.set(idx(0, i, 0, j), c, self.one());
                t.set(idx(1, i, 0, j), nm + c, self.one());
                t.set(idx(0, i, 1, j), nm + c, self.one());
            }
        }
        t
    }

    /// T_{M,N}: (M⊗N)⁽¹⁾ → M⁽¹⁾⊗N⁽¹⁾.
    pub fn map_t(&self, m: &DiffModule, n: &DiffModule) -> Result<ModuleMorphism, StructError> {
        let src = self.cat.prolong(&self.cat.tensor(m, n)?)?;
        let dst = self.cat.tensor(&self.cat.prolong(m)?, &self.cat.prolong(n)?)?;
        self.morphism(&src, &dst, self.t_matrix(m.dim(), n.dim()))
    }

    /// Exchanges the two blocks: (1⊗vⱼ)* ↦ ∂⊗vʲ and (∂⊗vⱼ)* ↦ 1⊗vʲ.
    pub fn d_matrix(&self, n: usize) -> Matrix {
        let z = self.zeros(n, n);
        Matrix::block2(&z, &self.id(n), &self.id(n), &z)
    }

    /// D_M: (M⁽¹⁾)* → (M*)⁽¹⁾.
    pub fn map_d(&self, m: &DiffModule) -> Result<ModuleMorphism, StructError> {
        let src = self.cat.dual(&self.cat.prolong(m)?)?;
        let dst = self.cat.prolong(&self.cat.dual(m)?)?;
        self.morphism(&src, &dst, self.d_matrix(m.dim()))
    }

    pub fn map_d_inverse(&self, m: &DiffModule) -> Result<ModuleMorphism, StructError> {
        let d = self.map_d(m)?;
        let inv = d.mat.inverse().expect("block swap is invertible");
        self.morphism(&d.dst, &d.src, inv)
    }

    /// The coordinate-identity reading of D, which is a morphism only when ∂_tA = 0.
    pub fn map_d_literal(&self, m: &DiffModule) -> Result<ModuleMorphism, StructError> {
        let src = self.cat.dual(&self.cat.prolong(m)?)?;
        let dst = self.cat.prolong(&self.cat.dual(m)?)?;
        self.morphism(&src, &dst, self.id(2 * m.dim()))
    }

    /// θ⊗(vᵢ⊗vʲ) ↦ (θ⊗vᵢ)⊗(1⊗vⱼ)*.
    pub fn s_matrix(&self, n: usize) -> Matrix {
        let nn = n * n;
        let mut s = self.zeros(4 * nn, 2 * nn);
        for th in 0..2 {
            for i in 0..n {
                for j in 0..n {
                    s.set((th * n + i) * (2 * n) + j, th * nn + i * n + j, self.one());
                }
            }
        }
        s
    }

    /// S_M: (M⊗M*)⁽¹⁾ → M⁽¹⁾⊗(M⁽¹⁾)*.
    pub fn map_s(&self, m: &DiffModule) -> Result<ModuleMorphism, StructError> {
        let src = self.cat.prolong(&self.cat.tensor(m, &self.cat.dual(m)?)?)?;
        let p = self.cat.prolong(m)?;
        let dst = self.cat.tensor(&p, &self.cat.dual(&p)?)?;
        self.morphism(&src, &dst, self.s_matrix(m.dim()))
    }

    /// Left inverse [1 0] of i_𝟙.
    fn i1_inv(&self) -> Matrix {
        Matrix::hstack(&self.id(1), &self.zeros(1, 1))
    }

    pub fn verify(&self, axiom: Axiom, m: &DiffModule, n: Option<&DiffModule>, cap: usize) -> Result<AxiomReport, StructError> {
        let second = || n.ok_or_else(|| StructError::MissingSecond(axiom.name().to_string()));
        match axiom {
            Axiom::MorphismS => self.check_morphism_s(m),
            Axiom::Leibniz => self.check_leibniz(m, second()?),
            Axiom::Comult => self.check_comult(m),
            Axiom::TensorCompat => self.check_tensor_compat(m, second()?, cap),
            Axiom::DualCompat => self.check_dual_compat(m),
            Axiom::Exactness => self.check_exactness(m),
            Axiom::UnitSplitting => self.check_unit_splitting(),
        }
    }

    /// All seven checks; the second module defaults to `m` itself.
    pub fn verify_all(&self, m: &DiffModule, n: Option<&DiffModule>, cap: usize) -> Result<Vec<AxiomReport>, StructError> {
        let n = n.unwrap_or(m);
        Axiom::ALL.iter().map(|&a| self.verify(a, m, Some(n), cap)).collect()
    }

    /// ev_{M⁽¹⁾}∘S_M = i₁⁻¹∘F(ev_M).
    pub fn check_morphism_s(&self, m: &DiffModule) -> Result<AxiomReport, StructError> {
        let s = self.map_s(m)?;
        let ev1 = self.evaluation(&self.cat.prolong(m)?)?;
        let fev = self.cat.prolong_morphism(&self.evaluation(m)?)?;
        let lhs = ev1.mat.mul(&s.mat);
        let rhs = self.i1_inv().mul(&fev.mat);
        Ok(AxiomReport::from_mismatch(Axiom::MorphismS.name(), vec![describe(m)], lhs.first_difference(&rhs)))
    }

    /// T∘i_{M⊗N} = i_M⊗i_N and [id⊗φ_N; φ_M⊗id]∘T = [i_M⊗id; id⊗i_N]∘φ_{M⊗N}.
    pub fn check_leibniz(&self, m: &DiffModule, n: &DiffModule) -> Result<AxiomReport, StructError> {
        let objs = vec![describe(m), describe(n)];
        let t = self.map_t(m, n)?;
        let mn = self.cat.tensor(m, n)?;
        let (im, in_) = (self.cat.inclusion(m)?.mat, self.cat.inclusion(n)?.mat);
        let (pm, pn) = (self.cat.projection(m)?.mat, self.cat.projection(n)?.mat);
        let first = t.mat.mul(&self.cat.inclusion(&mn)?.mat).first_difference(&im.kron(&in_));
        if first.is_some() {
            return Ok(AxiomReport::from_mismatch(Axiom::Leibniz.name(), objs, first).with_detail("inclusion square"));
        }
        let (dm, dn) = (m.dim(), n.dim());
        let top = Matrix::vstack(&self.id(2 * dm).kron(&pn), &pm.kron(&self.id(2 * dn))).mul(&t.mat);
        let bottom = Matrix::vstack(&im.kron(&self.id(dn)), &self.id(dm).kron(&in_)).mul(&self.cat.projection(&mn)?.mat);
        let second = top.first_difference(&bottom);
        let detail = if second.is_some() { "projection square" } else { "both squares" };
        Ok(AxiomReport::from_mismatch(Axiom::Leibniz.name(), objs, second).with_detail(detail))
    }

    /// The two composites of the comultiplication diagram, as maps (M⊗M*)⁽¹⁾ → (M⁽¹⁾⊗(M⁽¹⁾)*)^{⊗2}.
    pub fn comult_composites(&self, m: &DiffModule) -> Result<(Matrix, Matrix), StructError> {
        let n = m.dim();
        let s = self.map_s(m)?.mat;
        let fdelta = self.cat.prolong_morphism(&self.delta_map(m)?)?.mat;
        let t = self.t_matrix(n * n, n * n);
        let lhs = s.kron(&s).mul(&t.mul(&fdelta));
        let rhs = self.delta_matrix(2 * n).mul(&s);
        Ok((lhs, rhs))
    }

    /// (S⊗S)∘T∘F(Δ_M) = Δ_{M⁽¹⁾}∘S_M.
    pub fn check_comult(&self, m: &DiffModule) -> Result<AxiomReport, StructError> {
        let (lhs, rhs) = self.comult_composites(m)?;
        Ok(AxiomReport::from_mismatch(Axiom::Comult.name(), vec![describe(m)], lhs.first_difference(&rhs)))
    }

    /// The two composites of the tensor-compatibility diagram,
    /// as maps (M⊗N⊗(M⊗N)*)⁽¹⁾ → M⁽¹⁾⊗N⁽¹⁾⊗((M⊗N)⁽¹⁾)*.
    pub fn tensor_compat_composites(&self, m: &DiffModule, n: &DiffModule, cap: usize) -> Result<(Matrix, Matrix), StructError> {
        let (dm, dn) = (m.dim(), n.dim());
        if dm * dn > cap {
            return Err(StructError::CapExceeded { dim: dm * dn, cap });
        }
        let mn = self.cat.tensor(m, n)?;
        let t = self.t_matrix(dm, dn);
        // (T⊗id)∘S_{M⊗N}
        let rhs = t.kron(&self.id(2 * dm * dn)).mul(&self.map_s(&mn)?.mat);
        // F(id⊗ψ_{N,M*}⊗id): (M⊗N⊗M*⊗N*)⁽¹⁾ → (M⊗M*⊗N⊗N*)⁽¹⁾
        let mid = kron_all(&[&self.id(dm), &self.braiding_matrix(dn, dm), &self.id(dn)]);
        let fmid = self.cat.prolong_matrix(&mid);
        let t2 = self.t_matrix(dm * dm, dn * dn);
        let ss = self.map_s(m)?.mat.kron(&self.map_s(n)?.mat);
        let beta = kron_all(&[&self.id(2 * dm), &self.braiding_matrix(2 * dm, 2 * dn), &self.id(2 * dn)]);
        let tt = self.id(4 * dm * dn).kron(&t.transpose());
        let lhs = tt.mul(&beta.mul(&ss.mul(&t2.mul(&fmid))));
        Ok((lhs, rhs))
    }

    pub fn check_tensor_compat(&self, m: &DiffModule, n: &DiffModule, cap: usize) -> Result<AxiomReport, StructError> {
        let (lhs, rhs) = self.tensor_compat_composites(m, n, cap)?;
        Ok(AxiomReport::from_mismatch(Axiom::TensorCompat.name(), vec![describe(m), describe(n)], lhs.first_difference(&rhs)))
    }

    /// The two composites of the duality diagram, as maps (M⊗M*)⁽¹⁾ → (M*)⁽¹⁾⊗M⁽¹⁾.
    pub fn dual_compat_composites(&self, m: &DiffModule) -> Result<(Matrix, Matrix), StructError> {
        let n = m.dim();
        let d = self.d_matrix(n);
        let lhs = d.kron(&self.id(2 * n)).mul(&self.braiding_matrix(2 * n, 2 * n).mul(&self.map_s(m)?.mat));
        let fpsi = self.cat.prolong_matrix(&self.braiding_matrix(n, n));
        let sd = self.map_s(&self.cat.dual(m)?)?.mat;
        let rhs = self.id(2 * n).kron(&d.transpose()).mul(&sd.mul(&fpsi));
        Ok((lhs, rhs))
    }

    /// (D⊗id)∘ψ∘S_M = (id⊗Dᵀ)∘S_{M*}∘F(ψ_{M,M*}).
    pub fn check_dual_compat(&self, m: &DiffModule) -> Result<AxiomReport, StructError> {
        let (lhs, rhs) = self.dual_compat_composites(m)?;
        Ok(AxiomReport::from_mismatch(Axiom::DualCompat.name(), vec![describe(m)], lhs.first_difference(&rhs)))
    }

    /// 0 → M → M⁽¹⁾ → M → 0 is an exact sequence of systems.
    pub fn check_exactness(&self, m: &DiffModule) -> Result<AxiomReport, StructError> {
        let n = m.dim();
        let i = self.cat.inclusion(m)?;
        let phi = self.cat.projection(m)?;
        let comp = phi.mat.mul(&i.mat);
        let (ri, rp) = (i.mat.rank(), phi.mat.rank());
        let report = AxiomReport::new(Axiom::Exactness.name(), vec![describe(m)]);
        let detail = format!("rank i = {ri}, rank φ = {rp}, dim = {n}");
        if let Some(d) = i.defect() {
            return Ok(AxiomReport { mismatch: Some(d), ..report }.fail("i is not a morphism"));
        }
        if let Some(d) = phi.defect() {
            return Ok(AxiomReport { mismatch: Some(d), ..report }.fail("φ is not a morphism"));
        }
        if !comp.is_zero() {
            return Ok(report.fail(format!("φ∘i ≠ 0; {detail}")));
        }
        // im i ⊆ ker φ, and rank i + rank φ = 2n forces equality
        if ri != n || rp != n || ri + rp != 2 * n {
            return Ok(report.fail(detail));
        }
        Ok(report.with_detail(detail))
    }

    /// 𝟙⁽¹⁾ ≅ 𝟙⊕𝟙 with i₁⁻¹∘i = id and a⊗1 + b·∂⊗1 ↦ (a, b).
    pub fn check_unit_splitting(&self) -> Result<AxiomReport, StructError> {
        let unit = self.cat.unit();
        let report = AxiomReport::new(Axiom::UnitSplitting.name(), vec![describe(&unit)]);
        let u1 = self.cat.prolong(&unit)?;
        let sum = self.cat.dsum(&unit, &unit)?;
        let split = Matrix::vstack(&self.i1_inv(), &self.cat.projection(&unit)?.mat);
        let iso = ModuleMorphism::new(&u1, &sum, split.clone())?;
        if let Some(d) = iso.defect() {
            return Ok(AxiomReport { mismatch: Some(d), ..report }.fail("splitting is not a morphism"));
        }
        if split.inverse().is_none() {
            return Ok(report.fail("splitting is not invertible"));
        }
        let left = self.i1_inv().mul(&self.cat.inclusion(&unit)?.mat);
        let mm = left.first_difference(&self.id(1));
        if mm.is_some() {
            return Ok(AxiomReport { mismatch: mm, ..report }.fail("i₁⁻¹∘i ≠ id"));
        }
        Ok(report)
    }

    /// ev∘S_M and ev∘(id⊗D⁻¹)∘T_{M,M*} as 1×2n² rows.
    pub fn witness_rows(&self, m: &DiffModule) -> Result<(Matrix, Matrix), StructError> {
        let n = m.dim();
        let ev1 = self.evaluation_matrix(2 * n);
        let s_row = ev1.mul(&self.map_s(m)?.mat);
        let dinv = self.map_d_inverse(m)?.mat;
        let t = self.map_t(m, &self.cat.dual(m)?)?.mat;
        let t_row = ev1.mul(&self.id(2 * n).kron(&dinv)).mul(&t);
        Ok((s_row, t_row))
    }

    /// Values on ∂⊗(vᵢ⊗vⁱ), i = 1..n: (via S, via (id⊗D⁻¹)∘T).
    pub fn witness_values(&self, m: &DiffModule) -> Result<Vec<(RationalFunction, RationalFunction)>, StructError> {
        let n = m.dim();
        let (s, t) = self.witness_rows(m)?;
        Ok((0..n).map(|i| (s.get(0, n * n + i * n + i).clone(), t.get(0, n * n + i * n + i).clone())).collect())
    }

    /// F(f)∘i = i∘f and f∘φ = φ∘F(f).
    pub fn check_naturality_i_phi(&self, f: &ModuleMorphism) -> Result<AxiomReport, StructError> {
        let ff = self.cat.prolong_morphism(f)?;
        let objs = vec![describe(&f.src), describe(&f.dst)];
        let a = ff.mat.mul(&self.cat.inclusion(&f.src)?.mat);
        let b = self.cat.inclusion(&f.dst)?.mat.mul(&f.mat);
        if let Some(mm) = a.first_difference(&b) {
            return Ok(AxiomReport::from_mismatch("naturality-i", objs, Some(mm)));
        }
        let c = f.mat.mul(&self.cat.projection(&f.src)?.mat);
        let d = self.cat.projection(&f.dst)?.mat.mul(&ff.mat);
        Ok(AxiomReport::from_mismatch("naturality-i-phi", objs, c.first_difference(&d)))
    }

    /// T_{X',Y}∘F(f⊗id) = (F(f)⊗id)∘T_{X,Y} and the same in the second argument.
    pub fn check_naturality_t(&self, f: &ModuleMorphism, y: &DiffModule) -> Result<AxiomReport, StructError> {
        let objs = vec![describe(&f.src), describe(&f.dst), describe(y)];
        let (n, n2, m) = (f.src.dim(), f.dst.dim(), y.dim());
        let ff = self.cat.prolong_matrix(&f.mat);
        let left = self.t_matrix(n2, m).mul(&self.cat.prolong_matrix(&f.mat.kron(&self.id(m))));
        let right = ff.kron(&self.id(2 * m)).mul(&self.t_matrix(n, m));
        if let Some(mm) = left.first_difference(&right) {
            return Ok(AxiomReport::from_mismatch("naturality-T", objs, Some(mm)).with_detail("first argument"));
        }
        let left = self.t_matrix(m, n2).mul(&self.cat.prolong_matrix(&self.id(m).kron(&f.mat)));
        let right = self.id(2 * m).kron(&ff).mul(&self.t_matrix(m, n));
        Ok(AxiomReport::from_mismatch("naturality-T", objs, left.first_difference(&right)).with_detail("both arguments"))
    }

    /// D_X∘F(f)ᵀ = F(fᵀ)∘D_Y for f: X → Y.
    pub fn check_naturality_d(&self, f: &ModuleMorphism) -> Result<AxiomReport, StructError> {
        let objs = vec![describe(&f.src), describe(&f.dst)];
        let left = self.d_matrix(f.src.dim()).mul(&self.cat.prolong_matrix(&f.mat).transpose());
        let right = self.cat.prolong_matrix(&f.mat.transpose()).mul(&self.d_matrix(f.dst.dim()));
        Ok(AxiomReport::from_mismatch("naturality-D", objs, left.first_difference(&right)))
    }

    /// (F(f)⊗id)∘S_X∘F(id⊗fᵀ) = (id⊗F(f)ᵀ)∘S_Y∘F(f⊗id) on (X⊗Y*)⁽¹⁾.
    pub fn check_naturality_s(&self, f: &ModuleMorphism) -> Result<AxiomReport, StructError> {
        let objs = vec![describe(&f.src), describe(&f.dst)];
        let (n, m) = (f.src.dim(), f.dst.dim());
        let ff = self.cat.prolong_matrix(&f.mat);
        let left = ff.kron(&self.id(2 * n)).mul(&self.s_matrix(n)).mul(&self.cat.prolong_matrix(&self.id(n).kron(&f.mat.transpose())));
        let right = self.id(2 * m).kron(&ff.transpose()).mul(&self.s_matrix(m)).mul(&self.cat.prolong_matrix(&f.mat.kron(&self.id(m))));
        Ok(AxiomReport::from_mismatch("naturality-S", objs, left.first_difference(&right)))
    }
}
