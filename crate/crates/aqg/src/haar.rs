//! Haar functional and modular data: φ, ψ = φ∘S, δ, μ and ρ.

use crate::algebra::{Algebra, Element, Functional, HopfAlgebra};
use crate::error::{AqgError, Result};
use crate::report::Report;
use crate::tensor::{
    hermitian_eigen, identity, inverse, null_space, pair, residual, residual_vec, zeros,
    ComplexMatrix, ComplexVector, ResidualAcc, C64, ZERO,
};

/// Relative singular-value threshold for the Haar null space.
pub const NULLSPACE_REL: f64 = 1e-10;

/// Left Haar functional normalized by φ(1) = 1, with positivity verified on
/// the Gram matrix G_ij = φ(e_i* e_j).
pub fn compute_haar(h: &HopfAlgebra, tol: f64) -> Result<Functional> {
    let n = h.dim();
    let alg = &h.algebra;
    // row block i: (ι⊗φ)Δ(e_i) − φ(e_i)1 = (D_i − 1·e_iᵀ) φ
    let mut m = zeros(n * n, n);
    for i in 0..n {
        let mut block = h.hopf.comult[i].clone();
        for j in 0..n {
            block[(j, i)] -= alg.unit[j];
        }
        m.rows_mut(i * n, n).copy_from(&block);
    }
    let ns = null_space(&m, NULLSPACE_REL);
    if ns.ncols() != 1 {
        return Err(AqgError::NoHaar(format!(
            "left-invariant functionals form a space of dimension {}",
            ns.ncols()
        )));
    }
    let mut phi = ns.column(0).into_owned();
    let at_one = pair(&phi, &alg.unit);
    if at_one.norm() < 1e-12 {
        return Err(AqgError::NoHaar("invariant functional vanishes at 1".into()));
    }
    phi /= at_one;
    let g = gram(alg, &phi);
    check_positive(&g, tol)?;
    Ok(phi)
}

/// G_ij = φ(e_i* e_j), so ⟨Λ(a), Λ(b)⟩ = φ(b*a) = bᴴ G a.
pub fn gram(alg: &Algebra, phi: &Functional) -> ComplexMatrix {
    let n = alg.n;
    let mut g = zeros(n, n);
    for i in 0..n {
        let row = alg.left_matrix(&alg.star_basis(i)).transpose() * phi;
        for j in 0..n {
            g[(i, j)] = row[j];
        }
    }
    g
}

/// Smallest eigenvalue of the Hermitian part, relative to the largest.
pub fn gram_min_eigenvalue(g: &ComplexMatrix) -> (f64, f64) {
    let (vals, _) = hermitian_eigen(g);
    (vals[0], *vals.last().unwrap())
}

fn check_positive(g: &ComplexMatrix, tol: f64) -> Result<()> {
    let herm = residual(g, &g.adjoint()).unwrap();
    if herm > tol {
        return Err(AqgError::NoHaar(format!(
            "Gram matrix is not Hermitian (residual {herm:.2e})"
        )));
    }
    let (lo, hi) = gram_min_eigenvalue(g);
    if !(lo > NULLSPACE_REL * hi.max(1e-300)) {
        return Err(AqgError::NoHaar(format!(
            "Gram matrix is not positive definite (smallest eigenvalue {lo:.3e})"
        )));
    }
    Ok(())
}

/// ψ = φ∘S.
pub fn right_haar(h: &HopfAlgebra, phi: &Functional) -> Functional {
    h.hopf.antipode.transpose() * phi
}

/// P_ij = φ(e_i e_j).
pub fn pairing_matrix(alg: &Algebra, phi: &Functional) -> ComplexMatrix {
    let n = alg.n;
    let mut p = zeros(n, n);
    for i in 0..n {
        let row = alg.left[i].transpose() * phi;
        for j in 0..n {
            p[(i, j)] = row[j];
        }
    }
    p
}

/// δ from φ(S(e_i)) = φ(e_i δ), and μ from φS(a) = μφ(δa) by least squares.
pub fn compute_delta_mu(h: &HopfAlgebra, phi: &Functional, tol: f64) -> Result<(Element, C64)> {
    let alg = &h.algebra;
    let p = pairing_matrix(alg, phi);
    let rhs = right_haar(h, phi);
    let delta = p
        .clone()
        .lu()
        .solve(&rhs)
        .ok_or_else(|| AqgError::Singular("φ(e_i e_j) is singular".into()))?;
    let y = p.transpose() * &delta;
    let mut num = ZERO;
    let mut den = 0.0;
    for i in 0..alg.n {
        if y[i].norm() > 1e-14 {
            num += y[i].conj() * rhs[i];
            den += y[i].norm_sqr();
        }
    }
    if den == 0.0 {
        return Err(AqgError::Modular("φ(δa) vanishes on every basis element".into()));
    }
    let mut mu = num / den;
    if (mu.norm() - 1.0).abs() > tol {
        return Err(AqgError::Modular(format!("|μ| = {} is not 1", mu.norm())));
    }
    mu /= mu.norm();
    Ok((delta, mu))
}

/// The automorphism ρ with ω(ab) = ω(bρ(a)) for a faithful functional ω,
/// solved columnwise: ρ = P⁻¹Pᵀ with P_ij = ω(e_i e_j).
pub fn compute_rho(alg: &Algebra, omega: &Functional) -> Result<ComplexMatrix> {
    let p = pairing_matrix(alg, omega);
    let pinv = inverse(&p).map_err(|_| AqgError::Singular("ω(e_i e_j) is singular".into()))?;
    Ok(pinv * p.transpose())
}

/// Inverse of an element, if it exists.
pub fn element_inverse(alg: &Algebra, a: &Element) -> Result<Element> {
    alg.left_matrix(a)
        .lu()
        .solve(&alg.unit)
        .ok_or_else(|| AqgError::Singular("element is not invertible".into()))
}

/// Haar and modular data of a quantum group.
#[derive(Clone, Debug)]
pub struct ModularData {
    pub phi: Functional,
    pub psi: Functional,
    pub delta: Element,
    pub delta_inv: Element,
    pub mu: C64,
    pub rho: ComplexMatrix,
    pub tracial: bool,
}

impl ModularData {
    pub fn compute(h: &HopfAlgebra, tol: f64) -> Result<Self> {
        let phi = compute_haar(h, tol)?;
        ModularData::from_haar(h, phi, tol)
    }

    pub fn from_haar(h: &HopfAlgebra, phi: Functional, tol: f64) -> Result<Self> {
        let psi = right_haar(h, &phi);
        let (delta, mu) = compute_delta_mu(h, &phi, tol)?;
        let delta_inv = element_inverse(&h.algebra, &delta)?;
        let rho = compute_rho(&h.algebra, &phi)?;
        let tracial = residual(&rho, &identity(h.dim())).unwrap() < tol;
        Ok(ModularData {
            phi,
            psi,
            delta,
            delta_inv,
            mu,
            rho,
            tracial,
        })
    }
}

/// (ι⊗φ)((1⊗a)Δ(b)) = S((ι⊗φ)(Δ(a)(1⊗b))) over all basis pairs.
pub fn strong_left_invariance_residual(h: &HopfAlgebra, phi: &Functional) -> f64 {
    let alg = &h.algebra;
    let n = h.dim();
    let mut acc = ResidualAcc::default();
    let rights: Vec<ComplexMatrix> = (0..n).map(|b| alg.right_matrix(&alg.basis(b))).collect();
    for a in 0..n {
        for b in 0..n {
            let lhs = &h.hopf.comult[b] * (alg.left[a].transpose() * phi);
            let inner = &h.hopf.comult[a] * (rights[b].transpose() * phi);
            let rhs = h.antipode(&inner);
            acc.add(lhs.as_slice(), rhs.as_slice());
        }
    }
    acc.value()
}

/// Re-substitution checks of every Haar and modular postcondition.
pub fn modular_report(h: &HopfAlgebra, m: &ModularData, tol: f64) -> Report {
    let s = "modular";
    let alg = &h.algebra;
    let n = h.dim();
    let mut r = Report::new();

    let mut left = ResidualAcc::default();
    let mut right = ResidualAcc::default();
    for i in 0..n {
        let d = &h.hopf.comult[i];
        left.add((d * &m.phi).as_slice(), (&alg.unit * m.phi[i]).as_slice());
        right.add((d.transpose() * &m.psi).as_slice(), (&alg.unit * m.psi[i]).as_slice());
    }
    r.residual(s, "haar_left_invariance", left.value(), tol);
    r.residual(s, "haar_normalization", (pair(&m.phi, &alg.unit) - 1.0).norm(), tol);
    r.residual(s, "right_haar_invariance", right.value(), tol);

    let g = gram(alg, &m.phi);
    r.residual(s, "gram_hermitian", residual(&g, &g.adjoint()).unwrap(), tol);
    let (lo, _) = gram_min_eigenvalue(&g);
    r.floor(s, "gram_positive_definite", lo, 0.0);

    let p = pairing_matrix(alg, &m.phi);
    let x = right_haar(h, &m.phi);
    let phi_a_delta = p.clone() * &m.delta;
    let phi_delta_a = p.transpose() * &m.delta;
    r.residual(s, "delta_defining_relation", residual_vec(&phi_a_delta, &x), tol);
    r.residual(s, "mu_relation", residual_vec(&(phi_delta_a * m.mu), &x), tol);
    r.residual(s, "mu_unit_modulus", (m.mu.norm() - 1.0).abs(), tol);

    let dd = h.delta(&m.delta);
    r.residual(s, "delta_group_like", residual(&dd, &(&m.delta * m.delta.transpose())).unwrap(), tol);
    r.residual(s, "delta_counit", (h.counit(&m.delta) - 1.0).norm(), tol);
    r.residual(s, "delta_self_adjoint", residual_vec(&alg.star(&m.delta), &m.delta), tol);
    let sd = alg.mul(&h.antipode(&m.delta), &m.delta);
    r.residual(s, "delta_antipode_inverse", residual_vec(&sd, &alg.unit), tol);
    r.residual(
        s,
        "delta_invertible",
        residual_vec(&alg.mul(&m.delta, &m.delta_inv), &alg.unit),
        tol,
    );

    // φ(e_i e_j) = φ(e_j ρ(e_i)) ⇔ P = (P R)ᵀ
    let pr = (&p * &m.rho).transpose();
    r.residual(s, "rho_modular_relation", residual(&p, &pr).unwrap(), tol);
    let mut inv = ResidualAcc::default();
    let mut mult = ResidualAcc::default();
    for i in 0..n {
        let x = alg.star(&(&m.rho * alg.star_basis(i)));
        inv.add((&m.rho * x).as_slice(), alg.basis(i).as_slice());
        for j in 0..n {
            let lhs = &m.rho * alg.product(i, j);
            let rhs = alg.mul(&m.rho.column(i).into_owned(), &m.rho.column(j).into_owned());
            mult.add(lhs.as_slice(), rhs.as_slice());
        }
    }
    r.residual(s, "rho_star_involution", inv.value(), tol);
    r.residual(s, "rho_multiplicative", mult.value(), tol);
    r.residual(
        s,
        "strong_left_invariance",
        strong_left_invariance_residual(h, &m.phi),
        tol,
    );
    r
}

/// Compares a user-supplied Haar functional with the computed one.
pub fn supplied_haar_residual(computed: &Functional, supplied: &ComplexVector) -> f64 {
    residual_vec(computed, supplied)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::by_name;
    use crate::tensor::{c, re, ONE};

    #[test]
    fn z2_haar_is_point_mass() {
        let q = by_name("z2").unwrap();
        let phi = compute_haar(&q, 1e-9).unwrap();
        assert!(residual_vec(&phi, &ComplexVector::from_vec(vec![ONE, ZERO])) < 1e-14);
        assert!(residual_vec(&right_haar(&q, &phi), &phi) < 1e-14);
        let m = ModularData::from_haar(&q, phi, 1e-9).unwrap();
        assert!(residual_vec(&m.delta, &q.algebra.unit) < 1e-14);
        assert!((m.mu - ONE).norm() < 1e-14);
        assert!(m.tracial);
        assert!(strong_left_invariance_residual(&q, &m.phi) < 1e-12);
    }

    #[test]
    fn s3_function_haar_is_uniform() {
        let q = by_name("s3-function").unwrap();
        let phi = compute_haar(&q, 1e-9).unwrap();
        assert!(residual_vec(&phi, &ComplexVector::from_element(6, re(1.0 / 6.0))) < 1e-14);
        assert!(residual_vec(&right_haar(&q, &phi), &phi) < 1e-14);
        assert!(residual(&gram(&q.algebra, &phi), &(identity(6) * re(1.0 / 6.0))).unwrap() < 1e-14);
        assert!(strong_left_invariance_residual(&q, &phi) < 1e-10);
    }

    #[test]
    fn kac_paljutkin_modular_data() {
        let q = by_name("kac-paljutkin").unwrap();
        let m = ModularData::compute(&q, 1e-9).unwrap();
        let r = modular_report(&q, &m, 1e-10);
        assert!(r.passed(), "{r}");
        assert!(m.tracial);
        assert!(residual(&m.rho, &identity(8)).unwrap() < 1e-9);
        assert!(strong_left_invariance_residual(&q, &m.phi) < 1e-9);
    }

    #[test]
    fn every_builtin_is_kac() {
        for name in crate::builtins::STANDARD {
            let q = by_name(name).unwrap();
            let m = ModularData::compute(&q, 1e-9).unwrap();
            assert!(residual_vec(&m.delta, &q.algebra.unit) < 1e-10, "{name}");
            assert!((m.mu - ONE).norm() < 1e-10, "{name}");
        }
    }

    #[test]
    fn rho_for_non_tracial_functional_is_conjugation() {
        // φ′(x) = Tr(Dx) on M₂, so φ′(ab) = φ′(bρ(a)) with ρ(a) = D a D⁻¹
        let m2 = Algebra::matrix_algebra(2);
        let d = [re(0.25), re(0.75)];
        let mut omega = ComplexVector::zeros(4);
        omega[0] = d[0];
        omega[3] = d[1];
        let rho = compute_rho(&m2, &omega).unwrap();
        let mut expected = zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                expected[(i * 2 + j, i * 2 + j)] = d[i] / d[j];
            }
        }
        assert!(residual(&rho, &expected).unwrap() < 1e-14);
        assert!(residual(&rho, &identity(4)).unwrap() > 0.1);
    }

    #[test]
    fn degenerate_input_has_no_haar() {
        // comultiplication Δ(g) = e⊗e breaks invariance uniqueness
        let mut q = by_name("z2").unwrap();
        q.hopf.comult[1] = zeros(2, 2);
        q.hopf.comult[1][(0, 0)] = ONE;
        assert!(compute_haar(&q, 1e-9).is_err());
    }

    #[test]
    fn non_positive_invariant_functional_is_rejected() {
        // C[Z₂] with the star twisted to g* = −g is not a C*-algebra
        let mut q = by_name("z2").unwrap();
        q.algebra.star[(1, 1)] = c(-1.0, 0.0);
        assert!(matches!(compute_haar(&q, 1e-9), Err(AqgError::NoHaar(_))));
    }
}
