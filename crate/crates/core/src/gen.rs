//! Seeded random instances for property checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diffmod::{DiffModule, ModError, ModuleMorphism};
use crate::field::{DiffField, RationalFunction};
use crate::matrix::Matrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A polynomial with small integer coefficients and total degree ≤ `deg`.
pub fn poly(rng: &mut ChaCha8Rng, field: &DiffField, deg: u32) -> RationalFunction {
    let vars: Vec<RationalFunction> = field.vars().iter().map(|v| field.var(v).expect("own variable")).collect();
    let mut acc = field.zero();
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let mut m = field.int(rng.gen_range(-3..=3));
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            m = &m * &vars[rng.gen_range(0..vars.len())];
        }
        acc = &acc + &m;
    }
    acc
}

/// Mostly polynomials, occasionally divided by a linear factor.
pub fn element(rng: &mut ChaCha8Rng, field: &DiffField, deg: u32) -> RationalFunction {
    let p = poly(rng, field, deg);
    if rng.gen_bool(0.2) {
        let den = poly(rng, field, 1);
        if !den.is_zero() {
            return &p / &den;
        }
    }
    p
}

pub fn vector(rng: &mut ChaCha8Rng, field: &DiffField, n: usize, deg: u32) -> Vec<RationalFunction> {
    (0..n).map(|_| element(rng, field, deg)).collect()
}

/// A system ∂ₓY = AY with polynomial entries of total degree ≤ `deg`.
pub fn module(rng: &mut ChaCha8Rng, field: &DiffField, dim: usize, deg: u32, name: &str) -> DiffModule {
    let rows = (0..dim).map(|_| (0..dim).map(|_| poly(rng, field, deg)).collect()).collect();
    DiffModule::new(field, Matrix::from_rows(field, rows), name).expect("square system")
}

/// An integer matrix with determinant ±1.
pub fn unimodular(rng: &mut ChaCha8Rng, field: &DiffField, n: usize) -> Matrix {
    let mut p = Matrix::identity(field, n);
    for _ in 0..2 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = field.int(rng.gen_range(-2..=2));
        // row operation r_i += c·r_j
        for col in 0..n {
            let v = p.get(i, col) + &(&c * p.get(j, col));
            p.set(i, col, v);
        }
    }
    p
}

/// A gauge-equivalent copy M → N with N's system (∂ₓP + PA)P⁻¹; P constant when `constant`.
pub fn gauge(rng: &mut ChaCha8Rng, m: &DiffModule, constant: bool, name: &str) -> Result<ModuleMorphism, ModError> {
    let field = m.field();
    let n = m.dim();
    let p = loop {
        let mut p = unimodular(rng, field, n);
        if !constant {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            p.set(i, j, p.get(i, j) + &poly(rng, field, 1));
        }
        if p.inverse().is_some() {
            break p;
        }
    };
    let pinv = p.inverse().expect("checked");
    let b = p.map(|a| field.dx(a)).add(&p.mul(m.sys())).mul(&pinv);
    let target = DiffModule::new(field, b, name)?;
    ModuleMorphism::new(m, &target, p)
}
