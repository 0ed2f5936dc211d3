//! The dual quantum group Â = {aφ}, the Fourier transform a ↦ â, the
//! double-dual isomorphism and the identities relating A and Â.
//!
//! Â is realized on the coordinate space of A through the basis ê_i = e_iφ,
//! so the Fourier transform is the identity in these coordinates. As
//! covectors on A, ê_j(e_i) = φ(e_i e_j) is column j of the pairing matrix.

use crate::algebra::{Algebra, Element, Functional, HopfAlgebra, HopfStructure};
use crate::blocks::{block_dims, decompose};
use crate::error::{AqgError, Result};
use crate::haar::compute_rho;
use crate::quantum::QuantumGroup;
use crate::random::{random_vector, Rng};
use crate::report::Report;
use crate::tensor::{
    conj_vec, identity, inverse, inverse_condition, pinv, rank, residual, residual_vec,
    ComplexMatrix, ResidualAcc,
};

/// Covector of â: â(x) = φ(xa).
pub fn fourier(q: &QuantumGroup, a: &Element) -> Functional {
    &q.pairing * a
}

pub fn fourier_inv(q: &QuantumGroup, omega: &Functional) -> Element {
    &q.pairing_inv * omega
}

/// Product of functionals: (ω₁ω₂)(x) = (ω₁⊗ω₂)Δ(x).
pub fn convolve(h: &HopfAlgebra, w1: &Functional, w2: &Functional) -> Functional {
    Functional::from_iterator(
        h.dim(),
        h.hopf.comult.iter().map(|d| (w1.transpose() * d * w2)[(0, 0)]),
    )
}

/// ω*(x) = conj(ω(S(x)*)).
pub fn functional_star(h: &HopfAlgebra, w: &Functional) -> Functional {
    h.hopf.antipode.transpose() * (h.algebra.star.adjoint() * conj_vec(w))
}

/// ω∘M for a linear map M given by its matrix.
pub fn compose(w: &Functional, m: &ComplexMatrix) -> Functional {
    m.transpose() * w
}

/// Covector of (ωa)(x) = ω(ax).
pub fn functional_times(alg: &Algebra, w: &Functional, a: &Element) -> Functional {
    compose(w, &alg.left_matrix(a))
}

/// Covector of (aω)(x) = ω(xa).
pub fn times_functional(alg: &Algebra, a: &Element, w: &Functional) -> Functional {
    compose(w, &alg.right_matrix(a))
}

/// Hopf structure of Â in the basis {ê_i}. Δ̂ is solved from
/// ((ω₁⊗1)Δ̂(ω₂))(a⊗b) = (ω₁⊗ω₂)(Δ(a)(1⊗b)).
pub fn dual_hopf(q: &QuantumGroup) -> Result<HopfAlgebra> {
    let h = &q.hopf;
    let alg = q.algebra();
    let n = q.dim();
    let p = &q.pairing;
    let p_inv = &q.pairing_inv;
    let cols: Vec<Functional> = (0..n).map(|i| p.column(i).into_owned()).collect();
    let products: Vec<Vec<Functional>> = (0..n)
        .map(|i| (0..n).map(|j| convolve(h, &cols[i], &cols[j])).collect())
        .collect();

    let left: Vec<ComplexMatrix> = (0..n)
        .map(|i| {
            let mut m = ComplexMatrix::zeros(n, n);
            for j in 0..n {
                m.set_column(j, &(p_inv * &products[i][j]));
            }
            m
        })
        .collect();
    let mut star = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        star.set_column(i, &(p_inv * functional_star(h, &cols[i])));
    }
    let unit = p_inv * &h.hopf.counit;
    let algebra = Algebra::new(left, star, unit)?;

    // A_{(i,r),p} = (ê_i ê_p)(e_r)
    let mut a_sys = ComplexMatrix::zeros(n * n, n);
    for i in 0..n {
        for pp in 0..n {
            for r in 0..n {
                a_sys[(i * n + r, pp)] = products[i][pp][r];
            }
        }
    }
    if rank(&a_sys, 1e-10) < n {
        return Err(AqgError::Singular("dual comultiplication system is degenerate".into()));
    }
    let a_pinv = pinv(&a_sys, 1e-12);
    // rhs[r][s] = Pᵀ Δ(e_r)(1⊗e_s) P, entry (i,j)
    let rhs: Vec<Vec<ComplexMatrix>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|s| {
                    let t = &h.hopf.comult[r] * alg.right_matrix(&alg.basis(s)).transpose();
                    p.transpose() * t * p
                })
                .collect()
        })
        .collect();
    let p_inv_t = p_inv.transpose();
    let comult: Vec<ComplexMatrix> = (0..n)
        .map(|j| {
            let mut b = ComplexMatrix::zeros(n * n, n);
            for i in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        b[(i * n + r, s)] = rhs[r][s][(i, j)];
                    }
                }
            }
            &a_pinv * b * &p_inv_t
        })
        .collect();

    let hopf = HopfStructure {
        comult,
        counit: q.phi().clone(),
        antipode: p_inv * h.hopf.antipode.transpose() * p,
    };
    let labels = h.labels.iter().map(|l| format!("^{l}")).collect();
    HopfAlgebra::new(format!("dual({})", h.name), labels, algebra, hopf)
}

/// The dual as a quantum group, with its own Haar and modular data.
pub fn dual_aqg(q: &QuantumGroup) -> Result<QuantumGroup> {
    QuantumGroup::new(dual_hopf(q)?, q.tol)
}

/// Residuals of the two relations defining Δ̂, evaluated on all basis
/// functionals and elements.
pub fn dual_relation_residuals(q: &QuantumGroup, dual: &HopfAlgebra) -> (f64, f64) {
    let h = &q.hopf;
    let alg = q.algebra();
    let n = q.dim();
    let p = &q.pairing;
    let cols: Vec<Functional> = (0..n).map(|i| p.column(i).into_owned()).collect();
    let rights: Vec<ComplexMatrix> = (0..n).map(|s| alg.right_matrix(&alg.basis(s))).collect();

    // ((ê_i⊗1)Δ̂(ê_j))(e_r⊗e_s) = (ê_i⊗ê_j)(Δ(e_r)(1⊗e_s))
    let mut first = ResidualAcc::default();
    for i in 0..n {
        let left_i = p * &dual.algebra.left[i];
        for j in 0..n {
            let t = &left_i * &dual.hopf.comult[j] * p.transpose();
            for r in 0..n {
                let ci = cols[i].transpose() * &h.hopf.comult[r];
                for s in 0..n {
                    let rhs = (&ci * rights[s].transpose() * &cols[j])[(0, 0)];
                    first.add_scalar(t[(r, s)], rhs);
                }
            }
        }
    }

    // (Δ̂(ê_i)(1⊗ê_j))(e_r⊗e_s) = (ê_i⊗ê_j)((e_r⊗1)Δ(e_s))
    let mut second = ResidualAcc::default();
    for j in 0..n {
        let right_j = p * dual.algebra.right_matrix(&dual.algebra.basis(j));
        for i in 0..n {
            let t = p * &dual.hopf.comult[i] * right_j.transpose();
            for r in 0..n {
                let ci = cols[i].transpose() * &alg.left[r];
                for s in 0..n {
                    let rhs = (&ci * &h.hopf.comult[s] * &cols[j])[(0, 0)];
                    second.add_scalar(t[(r, s)], rhs);
                }
            }
        }
    }
    (first.value(), second.value())
}

/// ψ̂(â) = ε(a), as a covector on the ê-coordinates.
pub fn dual_right_haar(q: &QuantumGroup) -> Functional {
    q.hopf.hopf.counit.clone()
}

fn proportional_residual(x: &Functional, y: &Functional) -> f64 {
    let yy = y.dotc(y);
    if yy.norm() == 0.0 {
        return x.norm();
    }
    let c = y.dotc(x) / yy;
    residual_vec(x, &(y * c))
}

/// Checks on a dual built by [`dual_aqg`].
pub fn dual_report(q: &QuantumGroup, dual: &QuantumGroup) -> Report {
    let s = "dual";
    let tol = q.tol;
    let n = q.dim();
    let h = &q.hopf;
    let mut r = Report::new();
    let (first, second) = dual_relation_residuals(q, &dual.hopf);
    r.residual(s, "comult_relation_left", first, tol);
    r.residual(s, "comult_relation_right", second, tol);

    let psi_hat = dual_right_haar(q);
    let mut acc = ResidualAcc::default();
    for i in 0..n {
        let lhs = dual.hopf.hopf.comult[i].transpose() * &psi_hat;
        let rhs = &dual.algebra().unit * psi_hat[i];
        acc.add(lhs.as_slice(), rhs.as_slice());
    }
    r.residual(s, "psi_hat_right_invariance", acc.value(), tol);
    r.residual(
        s,
        "psi_hat_matches_dual_right_haar",
        proportional_residual(dual.psi(), &psi_hat),
        tol,
    );

    let mut acc = ResidualAcc::default();
    for i in 0..n {
        let w = q.pairing.column(i).into_owned();
        let left = convolve(h, &h.hopf.counit, &w);
        let right = convolve(h, &w, &h.hopf.counit);
        acc.add(left.as_slice(), w.as_slice());
        acc.add(right.as_slice(), w.as_slice());
    }
    r.residual(s, "counit_is_dual_unit", acc.value(), tol);

    let comm = q.algebra().is_commutative(tol);
    let dual_cocomm = dual.hopf.cocommutativity_residual() < tol;
    r.flag(s, "commutative_iff_dual_cocommutative", comm == dual_cocomm);
    let cocomm = h.cocommutativity_residual() < tol;
    let dual_comm = dual.algebra().is_commutative(tol);
    r.flag(s, "cocommutative_iff_dual_commutative", cocomm == dual_comm);
    r
}

/// Matrix of Θ: A → Â̂, Θ(a)(ω) = ω(a), in the ê-basis of the double dual.
pub fn double_dual_iso(q: &QuantumGroup, dual: &QuantumGroup) -> ComplexMatrix {
    &dual.pairing_inv * q.pairing.transpose()
}

/// Residuals of `m` being a Hopf *-algebra map from `src` to `dst`.
pub fn hopf_morphism_report(
    src: &HopfAlgebra,
    dst: &HopfAlgebra,
    m: &ComplexMatrix,
    tol: f64,
    suite: &str,
) -> Report {
    let n = src.dim();
    let images: Vec<Element> = (0..n).map(|i| m.column(i).into_owned()).collect();
    let mut r = Report::new();
    r.floor(suite, "invertible", inverse_condition(m), 1e-12);

    let mut acc = ResidualAcc::default();
    for i in 0..n {
        let li = dst.algebra.left_matrix(&images[i]);
        let lhs = m * &src.algebra.left[i];
        let rhs = li * m;
        acc.add_mat(&lhs, &rhs);
    }
    r.residual(suite, "multiplication", acc.value(), tol);

    let mut acc = ResidualAcc::default();
    for i in 0..n {
        let lhs = m * src.algebra.star_basis(i);
        let rhs = dst.algebra.star(&images[i]);
        acc.add(lhs.as_slice(), rhs.as_slice());
    }
    r.residual(suite, "star", acc.value(), tol);
    r.residual(suite, "unit", residual_vec(&(m * &src.algebra.unit), &dst.algebra.unit), tol);

    let mut acc = ResidualAcc::default();
    for i in 0..n {
        let lhs = m * &src.hopf.comult[i] * m.transpose();
        let rhs = dst.delta(&images[i]);
        acc.add_mat(&lhs, &rhs);
    }
    r.residual(suite, "comultiplication", acc.value(), tol);
    r.residual(
        suite,
        "counit",
        residual_vec(&(m.transpose() * &dst.hopf.counit), &src.hopf.counit),
        tol,
    );
    r.residual(
        suite,
        "antipode",
        residual(&(m * &src.hopf.antipode), &(&dst.hopf.antipode * m)).unwrap(),
        tol,
    );
    r
}

/// Searches for a Hopf *-isomorphism between two commutative quantum groups
/// by matching their minimal idempotents.
pub fn find_commutative_isomorphism(
    h1: &HopfAlgebra,
    h2: &HopfAlgebra,
    tol: f64,
) -> Result<Option<ComplexMatrix>> {
    let n = h1.dim();
    if n != h2.dim() || !h1.algebra.is_commutative(tol) || !h2.algebra.is_commutative(tol) {
        return Ok(None);
    }
    if n > 9 {
        return Err(AqgError::Invalid("isomorphism search limited to dimension 9".into()));
    }
    let idem = |h: &HopfAlgebra| -> Result<Vec<Element>> {
        Ok(decompose(&h.algebra, &h.algebra.regular_trace(), 11)?
            .into_iter()
            .map(|b| b.central)
            .collect())
    };
    let p1 = idem(h1)?;
    let p2 = idem(h2)?;
    let q1 = crate::tensor::columns(&p1, n);
    let q1_inv = inverse(&q1)?;
    let counit1: Vec<bool> = p1.iter().map(|p| h1.counit(p).norm() > 0.5).collect();
    let counit2: Vec<bool> = p2.iter().map(|p| h2.counit(p).norm() > 0.5).collect();

    let mut perm: Vec<usize> = (0..n).collect();
    let mut found = None;
    permute(&mut perm, 0, &mut |sigma| {
        if (0..n).any(|k| counit1[k] != counit2[sigma[k]]) {
            return false;
        }
        let targets: Vec<Element> = sigma.iter().map(|&k| p2[k].clone()).collect();
        let m = crate::tensor::columns(&targets, n) * &q1_inv;
        if hopf_morphism_report(h1, h2, &m, tol, "iso").passed() {
            found = Some(m);
            return true;
        }
        false
    });
    Ok(found)
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == perm.len() {
        return visit(perm);
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if permute(perm, k + 1, visit) {
            return true;
        }
        perm.swap(k, i);
    }
    false
}

/// Block dimensions of the underlying C*-algebra.
pub fn block_structure(q: &QuantumGroup) -> Result<Vec<usize>> {
    Ok(block_dims(&decompose(q.algebra(), q.phi(), 5)?))
}

/// F(â) = S(a*)^, antilinear, on ê-coordinates.
pub fn conjugation_map(q: &QuantumGroup, x: &Element) -> Element {
    &q.hopf.hopf.antipode * q.algebra().star(x)
}

/// ρ̂(â) = (S²(a)δ⁻¹)^ on ê-coordinates.
pub fn dual_rho(q: &QuantumGroup) -> ComplexMatrix {
    let s = &q.hopf.hopf.antipode;
    q.algebra().right_matrix(&q.modular.delta_inv) * s * s
}

/// c with ĉ the unit of Â.
pub fn support_companion(q: &QuantumGroup) -> Element {
    fourier_inv(q, &q.hopf.hopf.counit)
}

/// Residuals of the identities tying A, its Haar data and Â together.
pub fn lemma_suite(q: &QuantumGroup, dual: &HopfAlgebra, tol: f64) -> Result<Report> {
    let s = "lemmas";
    let h = &q.hopf;
    let alg = q.algebra();
    let dalg = &dual.algebra;
    let n = q.dim();
    let p = &q.pairing;
    let sm = &h.hopf.antipode;
    let delta = &q.modular.delta;
    let delta_inv = &q.modular.delta_inv;
    let mu = q.mu();
    let phi = q.phi();
    let rho_inv = inverse(&q.modular.rho)?;
    let mut r = Report::new();

    let mut items = [ResidualAcc::default(), ResidualAcc::default(), ResidualAcc::default(), ResidualAcc::default()];
    for a in 0..n {
        let e = alg.basis(a);
        let a_hat = fourier(q, &e);
        let sa = sm * &e;
        let a_star = alg.star_basis(a);

        let lhs = functional_star(h, &a_hat);
        let rhs = fourier(q, &alg.mul(&alg.star(&sa), delta));
        items[0].add(lhs.as_slice(), rhs.as_slice());

        let lhs = functional_times(alg, &a_hat, delta_inv);
        let rhs = fourier(q, &alg.mul(&e, delta_inv)) * mu;
        items[1].add(lhs.as_slice(), rhs.as_slice());

        let lhs = compose(&fourier(q, &sa), &(&rho_inv * sm));
        let rhs = fourier(q, &alg.mul(&e, delta));
        items[2].add(lhs.as_slice(), rhs.as_slice());

        let lhs = compose(&fourier(q, &(&q.modular.rho * &a_star)), &q.antipode_inv);
        let rhs = fourier(q, &alg.mul(&(sm * &a_star), delta)) / mu;
        items[3].add(lhs.as_slice(), rhs.as_slice());
    }
    let [i1, i2, i3, i4] = items;
    r.residual(s, "dual_star_formula", i1.value(), tol);
    r.residual(s, "delta_inverse_shift", i2.value(), tol);
    r.residual(s, "antipode_rho_twist", i3.value(), tol);
    r.residual(s, "rho_inverse_antipode_twist", i4.value(), tol);

    // dual modular automorphism
    let rho_hat = dual_rho(q);
    let psi_hat = dual_right_haar(q);
    let mut acc = ResidualAcc::default();
    for a in 0..n {
        let ra = rho_hat.column(a).into_owned();
        for b in 0..n {
            let lhs = psi_hat.dot(&dalg.left[a].column(b));
            let rhs = psi_hat.dot(&(&dalg.left[b] * &ra));
            acc.add_scalar(lhs, rhs);
        }
    }
    r.residual(s, "dual_rho_formula", acc.value(), tol);
    let solved = compute_rho(dalg, &psi_hat)?;
    r.residual(s, "dual_rho_solver_agreement", residual(&solved, &rho_hat)?, tol);
    let mut acc = ResidualAcc::default();
    for a in 0..n {
        let x = sm * alg.star_basis(a);
        let lhs = &rho_hat * dalg.star(&x);
        acc.add(lhs.as_slice(), alg.basis(a).as_slice());
    }
    r.residual(s, "dual_rho_star_identity", acc.value(), tol);

    // conjugation map F
    let mut rng = Rng::seeded(0x5eed);
    let mut acc = ResidualAcc::default();
    for _ in 0..4 {
        let x = random_vector(&mut rng, n);
        let y = random_vector(&mut rng, n);
        let lambda = rng.gaussian();
        let lhs = conjugation_map(q, &(&x * lambda + &y));
        let rhs = conjugation_map(q, &x) * lambda.conj() + conjugation_map(q, &y);
        acc.add(lhs.as_slice(), rhs.as_slice());
    }
    r.residual(s, "conjugation_antilinear", acc.value(), tol);
    let images: Vec<Element> = (0..n).map(|a| conjugation_map(q, &alg.basis(a))).collect();
    let mut acc = ResidualAcc::default();
    for a in 0..n {
        for b in 0..n {
            let lhs = conjugation_map(q, &dalg.product(a, b));
            let rhs = dalg.mul(&images[b], &images[a]);
            acc.add(lhs.as_slice(), rhs.as_slice());
        }
    }
    r.residual(s, "conjugation_antimultiplicative", acc.value(), tol);
    let mut acc = ResidualAcc::default();
    for a in 0..n {
        let back = conjugation_map(q, &images[a]);
        acc.add(back.as_slice(), alg.basis(a).as_slice());
    }
    r.residual(s, "conjugation_involutive", acc.value(), tol);

    // â b̂ = Σ φ(q_i) p̂_i for a⊗b = Σ Δ(p_i)(q_i⊗1)
    let t1_inv = inverse(&h.t1_matrix())?;
    let expansion = |col: usize| -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |pp, qq| t1_inv[(pp * n + qq, col)])
    };
    let mut acc = ResidualAcc::default();
    for a in 0..n {
        for b in 0..n {
            let coeffs = expansion(a * n + b) * phi;
            acc.add(coeffs.as_slice(), dalg.product(a, b).as_slice());
        }
    }
    r.residual(s, "dual_product_expansion", acc.value(), tol);

    // support companion
    let c = support_companion(q);
    r.residual(s, "support_companion_unit", residual(&dalg.left_matrix(&c), &identity(n))?, tol);
    let lc_star_t = alg.left_matrix(&alg.star(&c)).transpose();
    let mut acc = ResidualAcc::default();
    for a in 0..n {
        let lhs = &h.hopf.comult[a] * (&lc_star_t * phi);
        acc.add(lhs.as_slice(), alg.basis(a).as_slice());
    }
    r.residual(s, "companion_slice", acc.value(), tol);

    // ((aω)S) b̂ = Σ ω(a_k) b̂_k for Δ(b)(a⊗1) = Σ a_k⊗b_k
    let rights: Vec<ComplexMatrix> = (0..n).map(|a| alg.right_matrix(&alg.basis(a))).collect();
    let mut acc = ResidualAcc::default();
    for a in 0..n {
        let ras = &rights[a] * sm;
        for b in 0..n {
            let b_hat = p.column(b).into_owned();
            let t = &rights[a] * &h.hopf.comult[b];
            for w in 0..n {
                let omega = p.column(w).into_owned();
                let lhs = convolve(h, &compose(&omega, &ras), &b_hat);
                let rhs = p * (t.transpose() * &omega);
                acc.add(lhs.as_slice(), rhs.as_slice());
            }
        }
    }
    r.residual(s, "twisted_module_product", acc.value(), tol);

    // Σ φ(q_i) ŷ_ij⊗x_ij = Σ b̂_k ĉ⊗a_k
    let mut acc = ResidualAcc::default();
    let dual_rights: Vec<ComplexMatrix> = (0..n).map(|c| dalg.right_matrix(&dalg.basis(c))).collect();
    for b in 0..n {
        for cc in 0..n {
            let coeffs = expansion(b * n + cc) * phi;
            let z = h.delta(&coeffs);
            for a in 0..n {
                let x = (&rights[a] * &z).transpose();
                let t = &rights[a] * &h.hopf.comult[b];
                let y = &dual_rights[cc] * t.transpose();
                acc.add_mat(&x, &y);
            }
        }
    }
    r.residual(s, "triple_expansion", acc.value(), tol);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::STANDARD;
    use crate::tensor::{c, ONE, ZERO};

    fn qg(name: &str) -> QuantumGroup {
        QuantumGroup::from_builtin(name, 1e-9).unwrap()
    }

    #[test]
    fn fourier_of_z2_generator() {
        let q = qg("z2");
        let g_hat = fourier(&q, &q.algebra().basis(1));
        assert!((g_hat[0] - ZERO).norm() < 1e-14);
        assert!((g_hat[1] - ONE).norm() < 1e-14);
        let one_hat = fourier(&q, &q.algebra().unit);
        assert!(residual_vec(&one_hat, q.phi()) < 1e-14);
    }

    #[test]
    fn fourier_round_trip() {
        let q = qg("kac-paljutkin");
        let mut rng = Rng::seeded(3);
        let a = random_vector(&mut rng, 8);
        let back = fourier_inv(&q, &fourier(&q, &a));
        assert!(residual_vec(&back, &a) < 1e-10);
    }

    #[test]
    fn duals_pass_all_checks() {
        for name in STANDARD {
            let q = qg(name);
            let d = dual_aqg(&q).unwrap();
            let rep = dual_report(&q, &d);
            assert!(rep.passed(), "{name}\n{rep}");
            let lem = lemma_suite(&q, &d.hopf, 1e-9).unwrap();
            assert!(lem.passed(), "{name}\n{lem}");
        }
    }

    #[test]
    fn double_dual_is_isomorphic() {
        for name in ["z2", "s3-function", "kac-paljutkin"] {
            let q = qg(name);
            let d = dual_aqg(&q).unwrap();
            let dd = dual_aqg(&d).unwrap();
            let theta = double_dual_iso(&q, &d);
            let rep = hopf_morphism_report(&q.hopf, &dd.hopf, &theta, 1e-9, "theta");
            assert!(rep.passed(), "{name}\n{rep}");
            assert!(rep.max_residual() < 1e-10);
        }
    }

    #[test]
    fn pontryagin_duality_for_abelian_groups() {
        let q = qg("z2");
        let d = dual_aqg(&q).unwrap();
        let target = crate::builtins::by_name("z2-function").unwrap();
        let iso = find_commutative_isomorphism(&d.hopf, &target, 1e-9).unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn dual_of_s3_group_is_function_algebra() {
        let q = qg("s3-group");
        let d = dual_aqg(&q).unwrap();
        assert!(d.algebra().is_commutative(1e-9));
        let target = crate::builtins::by_name("s3-function").unwrap();
        let iso = find_commutative_isomorphism(&d.hopf, &target, 1e-9).unwrap();
        assert!(iso.is_some());
        // the non-abelian group algebra is not commutative, so no match the other way
        let group = crate::builtins::by_name("s3-group").unwrap();
        assert!(find_commutative_isomorphism(&d.hopf, &group, 1e-9).unwrap().is_none());
    }

    #[test]
    fn kac_paljutkin_self_dual_blocks() {
        let q = qg("kac-paljutkin");
        let d = dual_aqg(&q).unwrap();
        assert_eq!(d.dim(), 8);
        assert!(d.axioms_report().passed());
        assert_eq!(block_structure(&q).unwrap(), block_structure(&d).unwrap());
    }

    #[test]
    fn conjugation_map_examples() {
        let q = qg("z2");
        let one = q.algebra().unit.clone();
        assert!(residual_vec(&conjugation_map(&q, &one), &one) < 1e-14);
        let g = q.algebra().basis(1);
        assert!(residual_vec(&conjugation_map(&q, &g), &g) < 1e-14);
        let z = conjugation_map(&q, &(&g * c(0.0, 2.0)));
        assert!(residual_vec(&z, &(&g * c(0.0, -2.0))) < 1e-14);
    }

    #[test]
    fn dual_rho_trivial_cases() {
        for name in ["z2", "s3-function"] {
            let q = qg(name);
            assert!(residual(&dual_rho(&q), &identity(q.dim())).unwrap() < 1e-12);
        }
    }

    #[test]
    fn support_companion_is_unit_preimage() {
        for name in ["z2", "s3-function", "kac-paljutkin"] {
            let q = qg(name);
            let d = dual_aqg(&q).unwrap();
            let c = support_companion(&q);
            for a in 0..q.dim() {
                let x = &q.hopf.hopf.antipode * q.algebra().star_basis(a);
                assert!(residual_vec(&d.algebra().mul(&c, &x), &x) < 1e-10);
            }
        }
    }

    #[test]
    fn perturbed_lemmas_detect_fault() {
        let q = qg("z2");
        let mut h = q.hopf.clone();
        h.hopf.comult[1][(0, 1)] += c(1e-3, 0.0);
        let broken = QuantumGroup::from_parts(h, q.modular.clone(), 1e-9).unwrap();
        let d = dual_hopf(&broken).unwrap();
        let lem = lemma_suite(&broken, &d, 1e-9).unwrap();
        assert!(!lem.passed());
    }
}
