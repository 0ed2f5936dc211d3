//! Compact-case constructions: irreducible unitary corepresentations and
//! their F-matrices, the characters f_z, quantum dimensions, the twisted
//! antipode, the states ε₀ and ε₁, the adjoint representation, the family
//! φ_z and the SU_q(2) coefficient calculus.
//!
//! Two sources of data are supported. In the decomposed case the matrix
//! coefficients u^α_ij are elements of a finite-dimensional A, read off the
//! matrix blocks of Â. In the analytic case (SU_q(2)) only the F-matrices are
//! known and everything is evaluated through the orthogonality relations
//! φ(u_ik u_js*) = δ_ij F_sk / d.

use crate::algebra::{Element, Functional, HopfAlgebra};
use crate::blocks::{decompose, intertwiner_dimension};
use crate::dual::{convolve, functional_star};
use crate::error::{AqgError, Result};
use crate::gns::{tomita, GnsSpace};
use crate::quantum::QuantumGroup;
use crate::random::{random_vector, Rng};
use crate::report::Report;
use crate::tensor::{
    c, hermitian_eigen, hermitian_function, identity, inverse, pair, re, residual, residual_vec,
    trace, unitarity_residual, zeros, ComplexMatrix, ResidualAcc, C64, ONE, ZERO,
};

/// Grid used for the f_z identities.
pub const Z_GRID: [(f64, f64); 5] = [(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 0.5), (0.3, -0.7)];

#[derive(Clone, Debug)]
pub struct IrrepBlock {
    pub label: String,
    pub n: usize,
    /// u_ij as elements of A, indexed [i][j]. Empty for analytic data.
    pub coeffs: Vec<Vec<Element>>,
    pub f: ComplexMatrix,
    /// The matching irreducible representation of Â. Empty for analytic data.
    pub dual_images: Vec<ComplexMatrix>,
}

impl IrrepBlock {
    pub fn quantum_dimension(&self) -> f64 {
        trace(&self.f).re
    }

    /// q_α = n_α / d_α.
    pub fn gap(&self) -> f64 {
        self.n as f64 / self.quantum_dimension()
    }

    /// F^z through the principal branch on the positive spectrum.
    pub fn f_power(&self, z: C64) -> ComplexMatrix {
        hermitian_function(&self.f, |v| (z * v.ln()).exp())
    }

    /// f_z(u_ij).
    pub fn f_on_u(&self, z: C64) -> ComplexMatrix {
        self.f_power(z)
    }

    /// f_z(u_ij*) = f_{-z}(u_ji).
    pub fn f_on_u_star(&self, z: C64) -> ComplexMatrix {
        self.f_power(-z).transpose()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Decomposed,
    Analytic { q: f64 },
}

#[derive(Clone, Debug)]
pub struct PeterWeylData {
    pub blocks: Vec<IrrepBlock>,
    pub source: Source,
}

impl PeterWeylData {
    /// Columns u^α_ij in block order, row-major within a block.
    pub fn coefficient_basis(&self) -> Result<ComplexMatrix> {
        let cols: Vec<Element> = self
            .blocks
            .iter()
            .flat_map(|b| b.coeffs.iter().flatten().cloned())
            .collect();
        let dim = cols.first().map(|v| v.len()).ok_or_else(|| {
            AqgError::Invalid("analytic data has no coefficient elements".into())
        })?;
        Ok(crate::tensor::columns(&cols, dim))
    }

    /// The functional on A taking the prescribed values on each u^α_ij.
    pub fn functional_from_values(&self, values: &[ComplexMatrix]) -> Result<Functional> {
        let b = self.coefficient_basis()?;
        let v = Functional::from_iterator(
            b.ncols(),
            values.iter().flat_map(|m| (0..m.nrows()).flat_map(move |i| (0..m.ncols()).map(move |j| m[(i, j)]))),
        );
        Ok(inverse(&b.transpose())? * v)
    }

    /// Values of a functional on every u^α_ij.
    pub fn values_of(&self, w: &Functional) -> Vec<ComplexMatrix> {
        self.blocks
            .iter()
            .map(|b| ComplexMatrix::from_fn(b.n, b.n, |i, j| pair(w, &b.coeffs[i][j])))
            .collect()
    }
}

/// Irreducible unitary corepresentations of a finite-dimensional quantum
/// group from the matrix blocks of its dual: ω(u_ij) = ρ(ω)_ij.
pub fn decompose_corepresentations(q: &QuantumGroup, dual: &QuantumGroup, seed: u64) -> Result<PeterWeylData> {
    let irreps = decompose(dual.algebra(), dual.phi(), seed)?;
    let dim: usize = irreps.iter().map(|b| b.dim * b.dim).sum();
    if dim != q.dim() {
        return Err(AqgError::Singular(format!(
            "block extraction rank failure: Σn² = {dim}, dim A = {}",
            q.dim()
        )));
    }
    let p_inv_t = q.pairing_inv.transpose();
    let alg = q.algebra();
    let mut blocks = Vec::with_capacity(irreps.len());
    for (idx, irrep) in irreps.into_iter().enumerate() {
        let n = irrep.dim;
        let coeffs: Vec<Vec<Element>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let r = Element::from_iterator(q.dim(), irrep.images.iter().map(|m| m[(i, j)]));
                        &p_inv_t * r
                    })
                    .collect()
            })
            .collect();
        // M_sk = (1/n) Σ_i φ(u_ik u_is*) = F_sk / d
        let mut m = zeros(n, n);
        for s in 0..n {
            for k in 0..n {
                let mut acc = ZERO;
                for row in &coeffs {
                    acc += pair(q.phi(), &alg.mul(&row[k], &alg.star(&row[s])));
                }
                m[(s, k)] = acc / re(n as f64);
            }
        }
        let m = (&m + m.adjoint()) * re(0.5);
        let tr_inv = trace(&inverse(&m)?).re;
        let d = (tr_inv / trace(&m).re).sqrt();
        blocks.push(IrrepBlock {
            label: idx.to_string(),
            n,
            coeffs,
            f: m * re(d),
            dual_images: irrep.images,
        });
    }
    Ok(PeterWeylData { blocks, source: Source::Decomposed })
}

pub fn peter_weyl_report(q: &QuantumGroup, data: &PeterWeylData, tol: f64) -> Result<Report> {
    let s = "peter_weyl";
    let alg = q.algebra();
    let h = &q.hopf;
    let mut r = Report::new();
    let total: usize = data.blocks.iter().map(|b| b.n * b.n).sum();
    r.flag(s, "completeness", total == q.dim());
    let mut corep = ResidualAcc::default();
    let mut rows = ResidualAcc::default();
    let mut cols = ResidualAcc::default();
    let mut f_min = f64::INFINITY;
    let mut norm = ResidualAcc::default();
    let mut kac_dims = true;
    for b in &data.blocks {
        let n = b.n;
        for i in 0..n {
            for j in 0..n {
                let mut rhs = zeros(q.dim(), q.dim());
                for k in 0..n {
                    rhs += &b.coeffs[i][k] * b.coeffs[k][j].transpose();
                }
                corep.add_mat(&h.delta(&b.coeffs[i][j]), &rhs);
                let mut row = Element::zeros(q.dim());
                let mut col = Element::zeros(q.dim());
                for k in 0..n {
                    row += alg.mul(&b.coeffs[i][k], &alg.star(&b.coeffs[j][k]));
                    col += alg.mul(&alg.star(&b.coeffs[k][i]), &b.coeffs[k][j]);
                }
                let expected = if i == j { alg.unit.clone() } else { Element::zeros(q.dim()) };
                rows.add(row.as_slice(), expected.as_slice());
                cols.add(col.as_slice(), expected.as_slice());
            }
        }
        let (vals, _) = hermitian_eigen(&b.f);
        f_min = f_min.min(vals[0]);
        norm.add_scalar(trace(&b.f), trace(&inverse(&b.f)?));
        let d = b.quantum_dimension();
        let is_identity = residual(&b.f, &identity(n))? < tol;
        kac_dims &= d >= n as f64 - tol && ((d - n as f64).abs() < tol) == is_identity;
    }
    r.residual(s, "corepresentation", corep.value(), tol);
    r.residual(s, "unitary_rows", rows.value(), tol);
    r.residual(s, "unitary_columns", cols.value(), tol);
    r.floor(s, "f_positive_definite", f_min, 0.0);
    r.residual(s, "f_normalization", norm.value(), tol);
    r.flag(s, "quantum_dimension_bounds", kac_dims);
    let mut inequivalent = true;
    for (a, ba) in data.blocks.iter().enumerate() {
        for bb in data.blocks.iter().skip(a + 1) {
            inequivalent &= intertwiner_dimension(&ba.dual_images, &bb.dual_images) == 0;
        }
    }
    r.flag(s, "pairwise_inequivalent", inequivalent);
    Ok(r)
}

/// φ(u^α_ik u^β_js*) against δ_αβ δ_ij F_sk / d.
pub fn orthogonality_report(q: &QuantumGroup, data: &PeterWeylData, tol: f64) -> Report {
    let s = "orthogonality";
    let alg = q.algebra();
    let mut same = ResidualAcc::default();
    let mut cross = ResidualAcc::default();
    for (a, ba) in data.blocks.iter().enumerate() {
        for (b, bb) in data.blocks.iter().enumerate() {
            let d = ba.quantum_dimension();
            for i in 0..ba.n {
                for k in 0..ba.n {
                    for j in 0..bb.n {
                        for sidx in 0..bb.n {
                            let v = pair(q.phi(), &alg.mul(&ba.coeffs[i][k], &alg.star(&bb.coeffs[j][sidx])));
                            if a == b {
                                let e = if i == j { ba.f[(sidx, k)] / re(d) } else { ZERO };
                                same.add_scalar(v, e);
                            } else {
                                cross.add_scalar(v, ZERO);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut r = Report::new();
    r.residual(s, "same_block", same.value(), tol);
    r.residual(s, "cross_block", cross.value(), tol);
    r
}

/// a ↦ f * a = (ι⊗f)Δ(a).
pub fn left_action(h: &HopfAlgebra, f: &Functional) -> ComplexMatrix {
    let cols: Vec<Element> = h.hopf.comult.iter().map(|d| d * f).collect();
    crate::tensor::columns(&cols, h.dim())
}

/// a ↦ a * g = (g⊗ι)Δ(a).
pub fn right_action(h: &HopfAlgebra, g: &Functional) -> ComplexMatrix {
    let cols: Vec<Element> = h.hopf.comult.iter().map(|d| d.transpose() * g).collect();
    crate::tensor::columns(&cols, h.dim())
}

pub fn f_z(data: &PeterWeylData, z: C64) -> Result<Functional> {
    let values: Vec<ComplexMatrix> = data.blocks.iter().map(|b| b.f_on_u(z)).collect();
    data.functional_from_values(&values)
}

fn grid() -> Vec<C64> {
    Z_GRID.iter().map(|&(x, y)| c(x, y)).collect()
}

pub fn f_z_report(q: &QuantumGroup, data: &PeterWeylData, tol: f64) -> Result<Report> {
    let s = "f_z";
    let h = &q.hopf;
    let alg = q.algebra();
    let n = q.dim();
    let mut r = Report::new();
    let zs = grid();
    let fs: Vec<Functional> = zs.iter().map(|&z| f_z(data, z)).collect::<Result<_>>()?;
    r.residual(s, "f0_is_counit", residual_vec(&fs[0], &h.hopf.counit), tol);

    let mut law = ResidualAcc::default();
    let mut mult = ResidualAcc::default();
    let mut antipode = ResidualAcc::default();
    let mut star = ResidualAcc::default();
    for (a, za) in zs.iter().enumerate() {
        for (b, zb) in zs.iter().enumerate() {
            let lhs = convolve(h, &fs[a], &fs[b]);
            let rhs = f_z(data, za + zb)?;
            law.add(lhs.as_slice(), rhs.as_slice());
        }
        for i in 0..n {
            for j in 0..n {
                mult.add_scalar(pair(&fs[a], &alg.product(i, j)), fs[a][i] * fs[a][j]);
            }
        }
        let fs_s = h.hopf.antipode.transpose() * &fs[a];
        antipode.add(fs_s.as_slice(), f_z(data, -za)?.as_slice());
        star.add(functional_star(h, &fs[a]).as_slice(), f_z(data, -za.conj())?.as_slice());
    }
    r.residual(s, "group_law", law.value(), tol);
    r.residual(s, "multiplicative", mult.value(), tol);
    r.residual(s, "antipode", antipode.value(), tol);
    r.residual(s, "star", star.value(), tol);

    let f1 = f_z(data, ONE)?;
    let fm1 = f_z(data, -ONE)?;
    let twist = left_action(h, &f1) * right_action(h, &f1);
    let mut modular = ResidualAcc::default();
    for i in 0..n {
        for j in 0..n {
            let lhs = pair(q.phi(), &alg.product(i, j));
            let rhs = pair(q.phi(), &alg.mul(&alg.basis(j), &twist.column(i).into_owned()));
            modular.add_scalar(lhs, rhs);
        }
    }
    r.residual(s, "modular_property", modular.value(), tol);
    let s2 = &h.hopf.antipode * &h.hopf.antipode;
    let conj = left_action(h, &fm1) * right_action(h, &f1);
    r.residual(s, "squared_antipode", residual(&conj, &s2)?, tol);

    let f1_counit = residual_vec(&f1, &h.hopf.counit) < tol;
    r.flag(s, "tracial_iff_f1_counit", f1_counit == q.is_kac());
    if q.is_kac() {
        let mut acc = ResidualAcc::default();
        for f in &fs {
            acc.add(f.as_slice(), h.hopf.counit.as_slice());
        }
        r.residual(s, "kac_all_counit", acc.value(), tol);
    }
    Ok(r)
}

/// S̃ = f₁ * S(·).
pub fn twisted_antipode(q: &QuantumGroup, data: &PeterWeylData) -> Result<ComplexMatrix> {
    let f1 = f_z(data, ONE)?;
    Ok(left_action(&q.hopf, &f1) * &q.hopf.hopf.antipode)
}

pub fn twisted_antipode_report(q: &QuantumGroup, st: &ComplexMatrix, tol: f64) -> Result<Report> {
    let s = "twisted_antipode";
    let alg = q.algebra();
    let n = q.dim();
    let mut r = Report::new();
    r.residual(s, "involutive", residual(&(st * st), &identity(n))?, tol);
    let mut acc = ResidualAcc::default();
    for i in 0..n {
        for j in 0..n {
            let lhs = st * alg.product(i, j);
            let rhs = alg.mul(&st.column(j).into_owned(), &st.column(i).into_owned());
            acc.add(lhs.as_slice(), rhs.as_slice());
        }
    }
    r.residual(s, "antimultiplicative", acc.value(), tol);
    if q.is_kac() {
        r.residual(s, "equals_antipode", residual(st, &q.hopf.hopf.antipode)?, tol);
    }
    Ok(r)
}

/// a ↦ ⟨(P∘(ι⊗Ad X)∘Δ_r)(π(a))Λ(1), Λ(1)⟩ with P(x⊗y) = xy.
pub fn conjugation_state(q: &QuantumGroup, gns: &GnsSpace, x: &ComplexMatrix) -> Functional {
    let n = q.dim();
    let alg = q.algebra();
    let xi = gns.lambda(&alg.unit);
    let pis: Vec<ComplexMatrix> = alg.left.iter().map(|l| gns.to_frame(l)).collect();
    let left: Vec<_> = pis.iter().map(|p| p.adjoint() * &xi).collect();
    let right: Vec<_> = pis.iter().map(|p| x * p * x.adjoint() * &xi).collect();
    let m = ComplexMatrix::from_fn(n, n, |p, qq| left[p].dotc(&right[qq]));
    Functional::from_iterator(
        n,
        q.hopf.hopf.comult.iter().map(|d| d.component_mul(&m).sum()),
    )
}

/// P∘(ι⊗Ad X)∘Δ_r applied to π(a), as an operator on H.
pub fn conjugation_operator(q: &QuantumGroup, gns: &GnsSpace, x: &ComplexMatrix, a: &Element) -> ComplexMatrix {
    let n = q.dim();
    let alg = q.algebra();
    let d = q.hopf.delta(a);
    let mut out = zeros(n, n);
    for p in 0..n {
        for qq in 0..n {
            if d[(p, qq)] != ZERO {
                out += gns.to_frame(&alg.left[p]) * x * gns.to_frame(&alg.left[qq]) * x.adjoint() * d[(p, qq)];
            }
        }
    }
    out
}

/// V with VΛ(a) = Λ(S(a)), and ε₀. Requires a tracial Haar state.
pub fn epsilon0(q: &QuantumGroup, gns: &GnsSpace) -> Result<(ComplexMatrix, Functional)> {
    if !q.is_kac() {
        return Err(AqgError::NonTracial);
    }
    let v = &gns.c * &q.hopf.hopf.antipode * &gns.c_inv;
    let e0 = conjugation_state(q, gns, &v);
    Ok((v, e0))
}

/// U with UΛ(a) = Λ(S̃(a)), and ε₁.
pub fn epsilon1(q: &QuantumGroup, gns: &GnsSpace, st: &ComplexMatrix) -> (ComplexMatrix, Functional) {
    let u = &gns.c * st * &gns.c_inv;
    let e1 = conjugation_state(q, gns, &u);
    (u, e1)
}

fn state_checks(
    r: &mut Report,
    s: &str,
    q: &QuantumGroup,
    w: &Functional,
    rng: &mut Rng,
    samples: usize,
    tol: f64,
) {
    let alg = q.algebra();
    r.residual(s, "state_unital", (pair(w, &alg.unit) - ONE).norm(), tol);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let a = random_vector(rng, q.dim());
        let x = alg.mul(&alg.star(&a), &a);
        let v = pair(w, &x);
        let scale = pair(q.phi(), &x).re.max(1e-300);
        worst = worst.max((-v.re / scale).max(0.0)).max(v.im.abs() / scale);
    }
    r.residual(s, "state_positive", worst, tol);
}

fn self_adjoint_unitary(r: &mut Report, s: &str, x: &ComplexMatrix, tol: f64) {
    r.residual(s, "self_adjoint", residual(x, &x.adjoint()).unwrap(), tol);
    r.residual(s, "unitary", unitarity_residual(x), tol);
}

pub fn epsilon0_report(q: &QuantumGroup, gns: &GnsSpace, rng: &mut Rng, tol: f64) -> Result<Report> {
    let s = "epsilon0";
    let (v, e0) = epsilon0(q, gns)?;
    let alg = q.algebra();
    let n = q.dim();
    let mut r = Report::new();
    self_adjoint_unitary(&mut r, s, &v, tol);
    let pis: Vec<ComplexMatrix> = alg.left.iter().map(|l| gns.to_frame(l)).collect();
    let mut acc = ResidualAcc::default();
    for a in 0..n {
        for b in 0..n {
            let lhs = &v * &pis[a] * &v * &pis[b];
            let rhs = &pis[b] * &v * &pis[a] * &v;
            acc.add_mat(&lhs, &rhs);
        }
    }
    r.residual(s, "commutation", acc.value(), tol);
    state_checks(&mut r, s, q, &e0, rng, 100, tol);
    r.residual(s, "matches_counit", residual_vec(&e0, &q.hopf.hopf.counit), tol);
    Ok(r)
}

pub fn epsilon1_report(
    q: &QuantumGroup,
    gns: &GnsSpace,
    data: &PeterWeylData,
    st: &ComplexMatrix,
    rng: &mut Rng,
    tol: f64,
) -> Result<Report> {
    let s = "epsilon1";
    let (u, e1) = epsilon1(q, gns, st);
    let alg = q.algebra();
    let n = q.dim();
    let mut r = Report::new();
    self_adjoint_unitary(&mut r, s, &u, tol);
    // Ad(U)(π(a))Λ(b) = Λ(b S̃(a))
    let mut acc = ResidualAcc::default();
    for a in 0..n {
        let op = &u * gns.to_frame(&alg.left[a]) * u.adjoint();
        let sa = st.column(a).into_owned();
        for b in 0..n {
            let lhs = &op * gns.lambda(&alg.basis(b));
            let rhs = gns.lambda(&alg.mul(&alg.basis(b), &sa));
            acc.add(lhs.as_slice(), rhs.as_slice());
        }
    }
    r.residual(s, "conjugation_formula", acc.value(), tol);
    state_checks(&mut r, s, q, &e1, rng, 100, tol);
    let mut acc = ResidualAcc::default();
    for (b, vals) in data.blocks.iter().zip(data.values_of(&e1)) {
        acc.add_mat(&vals, &(identity(b.n) * re(b.gap())));
    }
    r.residual(s, "coefficient_values", acc.value(), tol);
    let calculus: Vec<ComplexMatrix> = data.blocks.iter().map(epsilon1_coefficients).collect();
    let mut acc = ResidualAcc::default();
    for (x, y) in data.values_of(&e1).iter().zip(&calculus) {
        acc.add_mat(x, y);
    }
    r.residual(s, "matches_coefficient_calculus", acc.value(), tol);
    if data.blocks.iter().all(|b| (b.quantum_dimension() - b.n as f64).abs() < tol) {
        r.residual(s, "matches_counit", residual_vec(&e1, &q.hopf.hopf.counit), tol);
    }
    Ok(r)
}

/// C(e_a) on H: C(a)Λ(b) = Σ Λ(a_i b S̃(a_i')) for Δ(a) = Σ a_i⊗a_i'.
pub fn adjoint_rep(q: &QuantumGroup, gns: &GnsSpace, st: &ComplexMatrix) -> Vec<ComplexMatrix> {
    let alg = q.algebra();
    let n = q.dim();
    let rights: Vec<ComplexMatrix> = (0..n).map(|j| alg.right_matrix(&st.column(j).into_owned())).collect();
    q.hopf
        .hopf
        .comult
        .iter()
        .map(|d| {
            let mut m = zeros(n, n);
            for p in 0..n {
                for qq in 0..n {
                    if d[(p, qq)] != ZERO {
                        m += &alg.left[p] * &rights[qq] * d[(p, qq)];
                    }
                }
            }
            gns.to_frame(&m)
        })
        .collect()
}

pub fn adjoint_rep_report(q: &QuantumGroup, gns: &GnsSpace, st: &ComplexMatrix, tol: f64) -> Result<Report> {
    let s = "adjoint_rep";
    let alg = q.algebra();
    let n = q.dim();
    let images = adjoint_rep(q, gns, st);
    let image = |a: &Element| {
        let mut m = zeros(n, n);
        for (i, x) in images.iter().enumerate() {
            if a[i] != ZERO {
                m += x * a[i];
            }
        }
        m
    };
    let mut r = Report::new();
    r.residual(s, "unital", residual(&image(&alg.unit), &identity(n))?, tol);
    let mut acc = ResidualAcc::default();
    for a in 0..n {
        for b in 0..n {
            acc.add_mat(&image(&alg.product(a, b)), &(&images[a] * &images[b]));
        }
    }
    r.residual(s, "multiplicative", acc.value(), tol);
    let (u, e1) = epsilon1(q, gns, st);
    let mut acc = ResidualAcc::default();
    for (a, img) in images.iter().enumerate() {
        acc.add_mat(img, &conjugation_operator(q, gns, &u, &alg.basis(a)));
    }
    r.residual(s, "matches_conjugation_form", acc.value(), tol);
    let xi = gns.lambda(&alg.unit);
    let vac = Functional::from_iterator(n, images.iter().map(|m| xi.dotc(&(m * &xi))));
    r.residual(s, "vacuum_matches_epsilon1", residual_vec(&vac, &e1), tol);
    Ok(r)
}

/// Exponents (a, b) with φ_z(u_lj) = Σ_k φ(u_lk (f_a * u_jk* * f_b)).
fn phi_z_exponents(z: C64) -> (C64, C64) {
    let i = c(0.0, 1.0);
    (ONE + i * (z - z.conj()), -i * (z + z.conj()))
}

/// φ_z on A, computed inside A from the coefficient elements.
pub fn phi_z(q: &QuantumGroup, data: &PeterWeylData, z: C64) -> Result<Functional> {
    let h = &q.hopf;
    let alg = q.algebra();
    let (ea, eb) = phi_z_exponents(z);
    let twist = left_action(h, &f_z(data, ea)?) * right_action(h, &f_z(data, eb)?);
    let values: Vec<ComplexMatrix> = data
        .blocks
        .iter()
        .map(|b| {
            ComplexMatrix::from_fn(b.n, b.n, |l, j| {
                (0..b.n)
                    .map(|k| {
                        let x = &twist * alg.star(&b.coeffs[j][k]);
                        pair(q.phi(), &alg.mul(&b.coeffs[l][k], &x))
                    })
                    .sum()
            })
        })
        .collect();
    data.functional_from_values(&values)
}

/// Q₀(π(a)) = J π(S(a)*) J in the tracial case, where R = S.
pub fn q0(q: &QuantumGroup, gns: &GnsSpace) -> Result<Vec<ComplexMatrix>> {
    if !q.is_kac() {
        return Err(AqgError::NonTracial);
    }
    let alg = q.algebra();
    let t = tomita(alg, gns);
    let j = &t.j;
    let jc = crate::tensor::conj(j);
    Ok((0..q.dim())
        .map(|a| {
            let x = alg.star(&q.hopf.antipode(&alg.basis(a)));
            let op = gns.to_frame(&alg.left_matrix(&x));
            j * crate::tensor::conj(&op) * &jc
        })
        .collect())
}

pub fn phi_z_report(
    q: &QuantumGroup,
    gns: &GnsSpace,
    data: &PeterWeylData,
    st: &ComplexMatrix,
    tol: f64,
) -> Result<Report> {
    let s = "phi_z";
    let alg = q.algebra();
    let n = q.dim();
    let mut r = Report::new();
    let half = phi_z(q, data, c(0.0, 0.5))?;
    r.residual(s, "phi_i_half_is_counit", residual_vec(&half, &q.hopf.hopf.counit), tol);
    let (u, e1) = epsilon1(q, gns, st);
    r.residual(s, "phi_zero_is_epsilon1", residual_vec(&phi_z(q, data, ZERO)?, &e1), tol);
    let mut acc = ResidualAcc::default();
    for &z in &grid() {
        let direct = data.values_of(&phi_z(q, data, z)?);
        for (b, x) in data.blocks.iter().zip(&direct) {
            acc.add_mat(x, &phi_z_coefficients(b, z));
        }
    }
    r.residual(s, "matches_coefficient_calculus", acc.value(), tol);
    if q.is_kac() {
        let images = q0(q, gns)?;
        let pis: Vec<ComplexMatrix> = alg.left.iter().map(|l| gns.to_frame(l)).collect();
        let mut conj_acc = ResidualAcc::default();
        let mut comm = ResidualAcc::default();
        let mut mult = ResidualAcc::default();
        for a in 0..n {
            conj_acc.add_mat(&images[a], &(&u * &pis[a] * u.adjoint()));
            for b in 0..n {
                comm.add_mat(&(&images[a] * &pis[b]), &(&pis[b] * &images[a]));
                let mut prod = zeros(n, n);
                let ab = alg.product(a, b);
                for (i, x) in images.iter().enumerate() {
                    if ab[i] != ZERO {
                        prod += x * ab[i];
                    }
                }
                mult.add_mat(&prod, &(&images[a] * &images[b]));
            }
        }
        r.residual(s, "q0_matches_conjugation", conj_acc.value(), tol);
        r.residual(s, "q0_in_commutant", comm.value(), tol);
        r.residual(s, "q0_multiplicative", mult.value(), tol);
        // φ_t(π(a)) = ⟨P(π⊙Q₀π)Δ(a)Λ(1), Λ(1)⟩ for real t
        let xi = gns.lambda(&alg.unit);
        let mut acc = ResidualAcc::default();
        for t in [0.3, -1.2] {
            let formula = phi_z(q, data, re(t))?;
            for a in 0..n {
                let d = &q.hopf.hopf.comult[a];
                let mut v = ZERO;
                for p in 0..n {
                    for qq in 0..n {
                        if d[(p, qq)] != ZERO {
                            v += xi.dotc(&(&pis[p] * &images[qq] * &xi)) * d[(p, qq)];
                        }
                    }
                }
                acc.add_scalar(v, formula[a]);
            }
        }
        r.residual(s, "real_t_matches_q0_state", acc.value(), tol);
    }
    Ok(r)
}

/// Linear combination Σ u[i,j] u_ij + Σ u_star[i,j] u_ij* inside one block.
#[derive(Clone, Debug)]
pub struct CoeffCombo {
    pub u: ComplexMatrix,
    pub u_star: ComplexMatrix,
}

impl CoeffCombo {
    pub fn zero(n: usize) -> Self {
        CoeffCombo { u: zeros(n, n), u_star: zeros(n, n) }
    }
}

/// f_z of a coefficient combination.
pub fn f_eval(block: &IrrepBlock, z: C64, x: &CoeffCombo) -> C64 {
    let fu = block.f_on_u(z);
    let fs = block.f_on_u_star(z);
    x.u.component_mul(&fu).sum() + x.u_star.component_mul(&fs).sum()
}

/// φ(u_ik x) for x in the span of the u_js*.
pub fn haar_pair(block: &IrrepBlock, i: usize, k: usize, x: &CoeffCombo) -> C64 {
    assert!(x.u.iter().all(|v| *v == ZERO), "φ(u u) is outside the orthogonality relations");
    let d = block.quantum_dimension();
    (0..block.n).map(|s| x.u_star[(i, s)] * block.f[(s, k)]).sum::<C64>() / re(d)
}

/// S̃(u_ij) = f₁ * u_ji* = Σ_m f₁(u_mi*) u_jm*.
pub fn twisted_antipode_coefficient(block: &IrrepBlock, i: usize, j: usize) -> CoeffCombo {
    let n = block.n;
    let fs = block.f_on_u_star(ONE);
    let mut out = CoeffCombo::zero(n);
    for m in 0..n {
        out.u_star[(j, m)] = fs[(m, i)];
    }
    out
}

/// f_a * u_jk* * f_b = Σ_{m,r} f_b(u_jr*) f_a(u_mk*) u_rm*.
pub fn sandwich_star(block: &IrrepBlock, a: C64, b: C64, j: usize, k: usize) -> CoeffCombo {
    let n = block.n;
    let fa = block.f_on_u_star(a);
    let fb = block.f_on_u_star(b);
    let mut out = CoeffCombo::zero(n);
    for rr in 0..n {
        for m in 0..n {
            out.u_star[(rr, m)] = fb[(j, rr)] * fa[(m, k)];
        }
    }
    out
}

/// ε₁(u_ij) = Σ_k φ(u_ik S̃(u_kj)) through the orthogonality relations.
pub fn epsilon1_coefficients(block: &IrrepBlock) -> ComplexMatrix {
    let n = block.n;
    ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| haar_pair(block, i, k, &twisted_antipode_coefficient(block, k, j)))
            .sum()
    })
}

/// φ_z(u_lj) through the orthogonality relations.
pub fn phi_z_coefficients(block: &IrrepBlock, z: C64) -> ComplexMatrix {
    let n = block.n;
    let (a, b) = phi_z_exponents(z);
    ComplexMatrix::from_fn(n, n, |l, j| {
        (0..n)
            .map(|k| haar_pair(block, l, k, &sandwich_star(block, a, b, j, k)))
            .sum()
    })
}

/// [m]_q = (q^{-m} − q^m)/(q^{-1} − q).
pub fn q_integer(m: usize, q: f64) -> f64 {
    let m = m as i32;
    (q.powi(-m) - q.powi(m)) / (q.powi(-1) - q)
}

fn spin_label(two_l: usize) -> String {
    format!("{}", two_l as f64 / 2.0)
}

/// Analytic Peter–Weyl data of SU_q(2) for spins 0, 1/2, …, max_spin.
pub fn suq2_data(q: f64, max_spin: f64) -> Result<PeterWeylData> {
    if !(q > 0.0 && q < 1.0) {
        return Err(AqgError::Invalid(format!("q must lie in (0, 1), got {q}")));
    }
    let twice = max_spin * 2.0;
    if !(twice >= 0.0 && (twice - twice.round()).abs() < 1e-12) {
        return Err(AqgError::Invalid(format!("max spin must be a half-integer, got {max_spin}")));
    }
    let blocks = (0..=twice.round() as usize)
        .map(|two_l| {
            let n = two_l + 1;
            let f = ComplexMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    re(q.powi(2 * i as i32 - two_l as i32))
                } else {
                    ZERO
                }
            });
            IrrepBlock {
                label: spin_label(two_l),
                n,
                coeffs: Vec::new(),
                f,
                dual_images: Vec::new(),
            }
        })
        .collect();
    Ok(PeterWeylData { blocks, source: Source::Analytic { q } })
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct GapRow {
    pub alpha: String,
    pub n: usize,
    pub d: f64,
    pub q: f64,
}

pub fn coamenability_gap_report(data: &PeterWeylData) -> Vec<GapRow> {
    let mut rows: Vec<GapRow> = data
        .blocks
        .iter()
        .map(|b| GapRow {
            alpha: b.label.clone(),
            n: b.n,
            d: b.quantum_dimension(),
            q: b.gap(),
        })
        .collect();
    rows.sort_by(|a, b| a.n.cmp(&b.n).then(a.d.total_cmp(&b.d)));
    rows
}

/// q_{next}/q for consecutive rows.
pub fn decay_ratios(rows: &[GapRow]) -> Vec<(String, f64)> {
    rows.windows(2)
        .map(|w| (w[0].alpha.clone(), w[1].q / w[0].q))
        .collect()
}

pub fn gap_table_csv(rows: &[GapRow]) -> String {
    let mut out = String::from("alpha,n,d,q\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.alpha, r.n, r.d, r.q));
    }
    out
}

pub fn gap_table_pretty(rows: &[GapRow]) -> String {
    let mut out = format!("{:>8} {:>4} {:>16} {:>14}\n", "alpha", "n", "d", "q");
    for r in rows {
        out.push_str(&format!("{:>8} {:>4} {:>16.10} {:>14.10}\n", r.alpha, r.n, r.d, r.q));
    }
    out
}

/// Checks on analytic SU_q(2) data.
pub fn suq2_report(data: &PeterWeylData, tol: f64) -> Result<Report> {
    let s = "suq2";
    let q = match data.source {
        Source::Analytic { q } => q,
        Source::Decomposed => return Err(AqgError::Invalid("expected analytic SU_q(2) data".into())),
    };
    let mut r = Report::new();
    let mut norm = ResidualAcc::default();
    let mut closed = ResidualAcc::default();
    let mut identity_acc = ResidualAcc::default();
    let mut e1 = ResidualAcc::default();
    let mut half = ResidualAcc::default();
    let mut zero = ResidualAcc::default();
    let mut law = ResidualAcc::default();
    let mut in_range = true;
    for b in &data.blocks {
        let n = b.n;
        let d = b.quantum_dimension();
        norm.add_scalar(trace(&b.f), trace(&inverse(&b.f)?));
        closed.add_scalar(re(d), re(q_integer(n, q)));
        identity_acc.add_scalar(re(b.gap() * q_integer(n, q)), re(n as f64));
        in_range &= b.gap() > 0.0 && b.gap() <= 1.0 + tol;
        let eps1 = epsilon1_coefficients(b);
        e1.add_mat(&eps1, &(identity(n) * re(b.gap())));
        half.add_mat(&phi_z_coefficients(b, c(0.0, 0.5)), &identity(n));
        zero.add_mat(&phi_z_coefficients(b, ZERO), &eps1);
        for &za in &grid() {
            for &zb in &grid() {
                law.add_mat(&(b.f_on_u(za) * b.f_on_u(zb)), &b.f_on_u(za + zb));
            }
        }
    }
    r.residual(s, "trace_normalization", norm.value(), tol);
    r.residual(s, "quantum_dimension_closed_form", closed.value(), tol);
    r.residual(s, "gap_identity", identity_acc.value(), tol);
    r.flag(s, "gap_in_unit_interval", in_range);
    r.residual(s, "epsilon1_values", e1.value(), tol);
    r.residual(s, "phi_i_half_is_counit", half.value(), tol);
    r.residual(s, "phi_zero_is_epsilon1", zero.value(), tol);
    r.residual(s, "f_group_law", law.value(), tol);
    Ok(r)
}

/// Every compact-case suite for a finite-dimensional quantum group.
pub fn compact_report(q: &QuantumGroup, dual: &QuantumGroup, seed: u64, tol: f64) -> Result<Report> {
    let gns = GnsSpace::new(q)?;
    let data = decompose_corepresentations(q, dual, seed)?;
    let st = twisted_antipode(q, &data)?;
    let mut rng = Rng::seeded(seed);
    let mut r = peter_weyl_report(q, &data, tol)?;
    r.extend(orthogonality_report(q, &data, tol));
    r.extend(f_z_report(q, &data, tol)?);
    r.extend(twisted_antipode_report(q, &st, tol)?);
    if q.is_kac() {
        r.extend(epsilon0_report(q, &gns, &mut rng, tol)?);
    }
    r.extend(epsilon1_report(q, &gns, &data, &st, &mut rng, tol)?);
    r.extend(adjoint_rep_report(q, &gns, &st, tol)?);
    r.extend(phi_z_report(q, &gns, &data, &st, tol)?);
    let rows = coamenability_gap_report(&data);
    let mut acc = ResidualAcc::default();
    for row in &rows {
        acc.add_scalar(re(row.q), ONE);
    }
    if q.is_kac() {
        r.residual("coamenability_gap", "kac_gaps_are_one", acc.value(), tol);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::STANDARD;
    use crate::dual::dual_aqg;

    fn load(name: &str) -> (QuantumGroup, QuantumGroup, PeterWeylData) {
        let q = QuantumGroup::from_builtin(name, 1e-9).unwrap();
        let d = dual_aqg(&q).unwrap();
        let data = decompose_corepresentations(&q, &d, 11).unwrap();
        (q, d, data)
    }

    fn dims(data: &PeterWeylData) -> Vec<usize> {
        let mut v: Vec<usize> = data.blocks.iter().map(|b| b.n).collect();
        v.sort();
        v
    }

    #[test]
    fn block_dimensions() {
        assert_eq!(dims(&load("z2").2), vec![1, 1]);
        assert_eq!(dims(&load("s3-function").2), vec![1, 1, 2]);
        assert_eq!(dims(&load("kac-paljutkin").2), vec![1, 1, 1, 1, 2]);
        assert_eq!(dims(&load("s3-group").2), vec![1; 6]);
    }

    #[test]
    fn z2_characters() {
        // the one-dimensional corepresentations of C[Z₂] are the group elements
        let (q, _, data) = load("z2");
        let mut found: Vec<Element> = data.blocks.iter().map(|b| b.coeffs[0][0].clone()).collect();
        found.sort_by(|a, b| a[1].re.total_cmp(&b[1].re));
        assert!(residual_vec(&found[0], &q.algebra().unit) < 1e-10);
        assert!(residual_vec(&found[1], &Element::from_vec(vec![ZERO, ONE])) < 1e-10);
    }

    #[test]
    fn s3_function_orthogonality_is_schur() {
        let (q, _, data) = load("s3-function");
        // φ(u_ik u_js*) = δ_ij δ_ks / n for unitary irreps of S₃
        let alg = q.algebra();
        for b in &data.blocks {
            for i in 0..b.n {
                for k in 0..b.n {
                    for j in 0..b.n {
                        for s in 0..b.n {
                            let v = pair(q.phi(), &alg.mul(&b.coeffs[i][k], &alg.star(&b.coeffs[j][s])));
                            let e = if i == j && k == s { 1.0 / b.n as f64 } else { 0.0 };
                            assert!((v - re(e)).norm() < 1e-10);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn standard_builtins_pass_compact_suites() {
        for name in STANDARD {
            let (q, d, _) = load(name);
            let r = compact_report(&q, &d, 3, 1e-9).unwrap();
            assert!(r.passed(), "{name}\n{r}");
            for row in coamenability_gap_report(&decompose_corepresentations(&q, &d, 5).unwrap()) {
                assert!((row.d - row.n as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn epsilon0_values() {
        let (q, _, _) = load("z2");
        let gns = GnsSpace::new(&q).unwrap();
        let (_, e0) = epsilon0(&q, &gns).unwrap();
        assert!((e0[0] - ONE).norm() < 1e-12 && (e0[1] - ONE).norm() < 1e-12);
        let (q, _, _) = load("s3-function");
        let gns = GnsSpace::new(&q).unwrap();
        let (_, e0) = epsilon0(&q, &gns).unwrap();
        assert!(residual_vec(&e0, &q.hopf.hopf.counit) < 1e-12);
    }

    #[test]
    fn adjoint_rep_abelian_is_trivial() {
        let (q, d, data) = load("z2");
        let gns = GnsSpace::new(&q).unwrap();
        let st = twisted_antipode(&q, &data).unwrap();
        let images = adjoint_rep(&q, &gns, &st);
        assert!(residual(&images[1], &identity(2)).unwrap() < 1e-12);
        assert!(residual(&st, &q.hopf.hopf.antipode).unwrap() < 1e-12);
        let _ = d;
    }

    #[test]
    fn suq2_values() {
        let data = suq2_data(0.5, 2.0).unwrap();
        let rows = coamenability_gap_report(&data);
        assert_eq!(rows[0], GapRow { alpha: "0".into(), n: 1, d: 1.0, q: 1.0 });
        assert!((rows[1].d - 2.5).abs() < 1e-12 && (rows[1].q - 0.8).abs() < 1e-12);
        assert!((rows[2].d - 5.25).abs() < 1e-12);
        let f1 = data.blocks[1].f_on_u(ONE);
        assert!((f1[(0, 0)] - re(2.0)).norm() < 1e-12 && (f1[(1, 1)] - re(0.5)).norm() < 1e-12);
        assert!(suq2_report(&data, 1e-12).unwrap().passed());
        assert!(residual(&epsilon1_coefficients(&data.blocks[1]), &(identity(2) * re(0.8))).unwrap() < 1e-12);
        assert!(residual(&phi_z_coefficients(&data.blocks[1], ZERO), &(identity(2) * re(0.8))).unwrap() < 1e-12);
    }

    #[test]
    fn suq2_phi_z_closed_form() {
        // φ_z(u_lj) = (F^{-b})_lj Tr(F^{1-a}) / d with (a, b) the twisting exponents
        let data = suq2_data(0.3, 1.5).unwrap();
        for b in &data.blocks {
            for &z in &grid() {
                let (ea, eb) = phi_z_exponents(z);
                let expected = b.f_power(-eb) * trace(&b.f_power(ONE - ea)) / re(b.quantum_dimension());
                assert!(residual(&phi_z_coefficients(b, z), &expected).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn suq2_classical_limit_and_decay() {
        let data = suq2_data(0.999, 2.0).unwrap();
        let d = data.blocks[4].quantum_dimension();
        assert!((d - 5.0).abs() < 1e-2);

        let q = 0.5;
        let rows = coamenability_gap_report(&suq2_data(q, 15.5).unwrap());
        let ratios = decay_ratios(&rows);
        for (i, (_, ratio)) in ratios.iter().enumerate() {
            let two_l = i as f64;
            let asymptotic = q * (two_l + 2.0) / (two_l + 1.0);
            if i >= 20 {
                assert!((ratio - asymptotic).abs() < 1e-10);
            }
        }
        for row in rows.iter().take(31) {
            assert!((row.q * q_integer(row.n, q) - row.n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn suq2_rejects_bad_input() {
        assert!(suq2_data(1.0, 1.0).is_err());
        assert!(suq2_data(0.5, 0.3).is_err());
    }

    #[test]
    fn csv_table() {
        let rows = coamenability_gap_report(&suq2_data(0.5, 0.5).unwrap());
        assert_eq!(gap_table_csv(&rows), "alpha,n,d,q\n0,1,1,1\n0.5,2,2.5,0.8\n");
    }

    #[test]
    fn non_tracial_rejected_for_epsilon0() {
        let (q, _, _) = load("z2");
        let mut m = q.modular.clone();
        m.tracial = false;
        let fake = QuantumGroup::from_parts(q.hopf.clone(), m, 1e-9).unwrap();
        let gns = GnsSpace::new(&fake).unwrap();
        assert!(matches!(epsilon0(&fake, &gns), Err(AqgError::NonTracial)));
    }
}
