//! GNS space of the Haar weight, the regular representations of A and Â,
//! the multiplicative unitary W, Ŵ = ΣW*Σ and the Tomita data.
//!
//! Every operator lives in the orthonormal frame v = CΛ(a), where CᴴC is the
//! Gram matrix, so adjoints are conjugate transposes.

use crate::algebra::{Algebra, Element, HopfAlgebra, Tensor2};
use crate::error::{AqgError, Result};
use crate::quantum::QuantumGroup;
use crate::report::Report;
use crate::tensor::{
    compare_spans, conj, flip, hermitian_eigen, hermitian_function, identity, inverse, kron,
    kron_vec, mul, mul_id_kron_left, re, residual, unitarity_residual, zeros, ComplexMatrix,
    ComplexVector, ResidualAcc, C64, ZERO,
};

#[derive(Clone, Debug)]
pub struct GnsSpace {
    pub n: usize,
    /// G_ij = φ(e_i* e_j) = ⟨Λ(e_j), Λ(e_i)⟩.
    pub gram: ComplexMatrix,
    /// Upper triangular with CᴴC = G.
    pub c: ComplexMatrix,
    pub c_inv: ComplexMatrix,
}

impl GnsSpace {
    pub fn new(q: &QuantumGroup) -> Result<Self> {
        GnsSpace::from_gram(&q.gram)
    }

    /// GNS space of a faithful positive functional on `alg`.
    pub fn from_functional(alg: &Algebra, omega: &crate::algebra::Functional) -> Result<Self> {
        GnsSpace::from_gram(&crate::haar::gram(alg, omega))
    }

    fn from_gram(gram: &ComplexMatrix) -> Result<Self> {
        let g = (gram + gram.adjoint()) * re(0.5);
        let chol = g
            .clone()
            .cholesky()
            .ok_or_else(|| AqgError::NoHaar("Gram matrix is not positive definite".into()))?;
        let c = chol.l().adjoint();
        let c_inv = inverse(&c)?;
        Ok(GnsSpace {
            n: g.nrows(),
            gram: g,
            c,
            c_inv,
        })
    }

    /// Λ(a) in the orthonormal frame.
    pub fn lambda(&self, a: &Element) -> ComplexVector {
        &self.c * a
    }

    /// Operator on coordinates moved into the frame.
    pub fn to_frame(&self, x: &ComplexMatrix) -> ComplexMatrix {
        &self.c * x * &self.c_inv
    }

    pub fn to_frame2(&self, x: &ComplexMatrix) -> ComplexMatrix {
        kron(&self.c, &self.c) * x * kron(&self.c_inv, &self.c_inv)
    }

    /// π(a)Λ(b) = Λ(ab).
    pub fn left_rep(&self, alg: &Algebra, a: &Element) -> ComplexMatrix {
        self.to_frame(&alg.left_matrix(a))
    }

    /// π̂(ω)Λ̂(b̂) = Λ̂(ωb̂), with Λ̂(b̂) = Λ(b) and ω in ê-coordinates.
    pub fn dual_rep(&self, dual: &Algebra, omega: &Element) -> ComplexMatrix {
        self.to_frame(&dual.left_matrix(omega))
    }

    /// (π⊗π)(T) for a two-leg tensor in basis coordinates.
    pub fn tensor_rep(&self, images: &[ComplexMatrix], t: &Tensor2) -> ComplexMatrix {
        let n = self.n;
        let mut out = zeros(n * n, n * n);
        for u in 0..n {
            for v in 0..n {
                if t[(u, v)] != ZERO {
                    out += kron(&images[u], &images[v]) * t[(u, v)];
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct MultiplicativeUnitary {
    pub w: ComplexMatrix,
    pub w_hat: ComplexMatrix,
}

/// W((Λ⊗Λ)(Δ(b)(a⊗1))) = Λ(a)⊗Λ(b), assembled through T₁⁻¹.
pub fn multiplicative_unitary(q: &QuantumGroup, gns: &GnsSpace) -> Result<MultiplicativeUnitary> {
    let n = q.dim();
    let t1_inv = inverse(&q.hopf.t1_matrix())
        .map_err(|_| AqgError::Singular("T1 is not invertible".into()))?;
    let sigma = flip(n, n);
    let w = gns.to_frame2(&(&sigma * t1_inv));
    let w_hat = &sigma * w.adjoint() * &sigma;
    Ok(MultiplicativeUnitary { w, w_hat })
}

/// (X ⊗ I_k) Y for X acting on the first n² coordinates of n²k.
fn apply_first(x: &ComplexMatrix, k: usize, y: &ComplexMatrix) -> ComplexMatrix {
    let m = x.nrows();
    let mut out = zeros(m * k, y.ncols());
    for c in 0..k {
        let rows: Vec<usize> = (0..m).map(|r| r * k + c).collect();
        let sub = y.select_rows(&rows);
        let prod = mul(x, &sub);
        for (i, &r) in rows.iter().enumerate() {
            out.row_mut(r).copy_from(&prod.row(i));
        }
    }
    out
}

/// Swaps tensor legs 2 and 3 of C^n⊗C^n⊗C^n on the rows of y.
fn swap23_rows(n: usize, y: &ComplexMatrix) -> ComplexMatrix {
    let mut out = zeros(y.nrows(), y.ncols());
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                out.row_mut((a * n + c) * n + b).copy_from(&y.row((a * n + b) * n + c));
            }
        }
    }
    out
}

/// residual(W₁₂W₁₃W₂₃, W₂₃W₁₂) without forming three-leg Kronecker products.
pub fn pentagon_residual(w: &ComplexMatrix, n: usize) -> f64 {
    let w23 = kron(&identity(n), w);
    let w12 = |y: &ComplexMatrix| apply_first(w, n, y);
    let w13 = |y: &ComplexMatrix| swap23_rows(n, &w12(&swap23_rows(n, y)));
    let lhs = w12(&w13(&w23));
    let rhs = mul_id_kron_left(n, w, &w12(&identity(n * n * n)));
    residual(&lhs, &rhs).unwrap()
}

/// Slice maps of a two-leg operator, vectorized as columns: (ι⊗ω_kl)(X) when
/// `first_leg`, else (ω_kl⊗ι)(X).
fn slices(x: &ComplexMatrix, n: usize, first_leg: bool) -> ComplexMatrix {
    let mut out = zeros(n * n, n * n);
    for k in 0..n {
        for l in 0..n {
            let col = k * n + l;
            for i in 0..n {
                for j in 0..n {
                    let v = if first_leg {
                        x[(i * n + k, j * n + l)]
                    } else {
                        x[(k * n + i, l * n + j)]
                    };
                    out[(j * n + i, col)] = v;
                }
            }
        }
    }
    out
}

fn vec_columns(ops: &[ComplexMatrix]) -> ComplexMatrix {
    let m = ops[0].len();
    let mut out = zeros(m, ops.len());
    for (j, op) in ops.iter().enumerate() {
        out.set_column(j, &ComplexVector::from_column_slice(op.as_slice()));
    }
    out
}

/// Distance of X from span(first)⊗span(second), relative to ‖X‖.
pub fn tensor_membership_residual(
    x: &ComplexMatrix,
    n: usize,
    first: &[ComplexMatrix],
    second: &[ComplexMatrix],
) -> f64 {
    // R[(i,j),(k,l)] = X[(i,k),(j,l)], columns of R are first-leg operators
    let r = ComplexMatrix::from_fn(n * n, n * n, |row, col| {
        let (i, j) = (row % n, row / n);
        let (k, l) = (col % n, col / n);
        x[(i * n + k, j * n + l)]
    });
    let qa = crate::tensor::column_space(&vec_columns(first), 1e-10);
    let qb = crate::tensor::column_space(&vec_columns(second), 1e-10);
    let proj = &qa * (qa.adjoint() * &r * conj(&qb)) * qb.transpose();
    residual(&proj, &r).unwrap()
}

/// Antilinear S: Λ(a) ↦ Λ(a*), stored as S v = K conj(v), with its polar
/// decomposition S = J∇^{1/2}.
#[derive(Clone, Debug)]
pub struct Tomita {
    pub k: ComplexMatrix,
    /// J v = j conj(v).
    pub j: ComplexMatrix,
    pub nabla: ComplexMatrix,
}

pub fn tomita(alg: &Algebra, gns: &GnsSpace) -> Tomita {
    let k = &gns.c * &alg.star * conj(&gns.c_inv);
    let nabla = conj(&(k.adjoint() * &k));
    let nabla = (&nabla + nabla.adjoint()) * re(0.5);
    let inv_sqrt = hermitian_function(&nabla, |v| re(1.0 / v.sqrt()));
    let j = &k * conj(&inv_sqrt);
    Tomita { k, j, nabla }
}

/// Checks on the regular representations, W, Ŵ and the Tomita data.
pub fn gns_report(q: &QuantumGroup, dual: &HopfAlgebra, tol: f64) -> Result<Report> {
    let s = "gns";
    let n = q.dim();
    let alg = q.algebra();
    let dalg = &dual.algebra;
    let gns = GnsSpace::new(q)?;
    let mut r = Report::new();

    let mut acc = ResidualAcc::default();
    for i in 0..n {
        for j in 0..n {
            let ip = gns.lambda(&alg.basis(j)).dotc(&gns.lambda(&alg.basis(i)));
            let expected = q.phi().dot(&alg.mul(&alg.star_basis(j), &alg.basis(i)));
            acc.add_scalar(ip, expected);
        }
    }
    r.residual(s, "inner_product", acc.value(), tol);

    let pis: Vec<ComplexMatrix> = (0..n).map(|i| gns.to_frame(&alg.left[i])).collect();
    let pi_hats: Vec<ComplexMatrix> = (0..n).map(|i| gns.to_frame(&dalg.left[i])).collect();
    for (name, images, a) in [("pi", &pis, alg), ("pi_hat", &pi_hats, dalg)] {
        let rep = |x: &Element| -> ComplexMatrix {
            let mut out = zeros(n, n);
            for (i, m) in images.iter().enumerate() {
                if x[i] != ZERO {
                    out += m * x[i];
                }
            }
            out
        };
        r.residual(s, &format!("{name}_unital"), residual(&rep(&a.unit), &identity(n))?, tol);
        let mut star = ResidualAcc::default();
        let mut mult = ResidualAcc::default();
        for i in 0..n {
            star.add_mat(&rep(&a.star_basis(i)), &images[i].adjoint());
            for j in 0..n {
                mult.add_mat(&rep(&a.product(i, j)), &(&images[i] * &images[j]));
            }
        }
        r.residual(s, &format!("{name}_star"), star.value(), tol);
        r.residual(s, &format!("{name}_multiplicative"), mult.value(), tol);
        r.floor(
            s,
            &format!("{name}_faithful"),
            crate::tensor::inverse_condition(&(vec_columns(images).adjoint() * vec_columns(images))),
            1e-12,
        );
    }

    let mu = multiplicative_unitary(q, &gns)?;
    r.residual(s, "w_unitary", unitarity_residual(&mu.w), tol);
    let mut acc = ResidualAcc::default();
    let ckc = kron(&gns.c, &gns.c);
    for a in 0..n {
        let ra = alg.right_matrix(&alg.basis(a));
        for b in 0..n {
            let t = &ra * &q.hopf.hopf.comult[b];
            let lhs = &mu.w * (&ckc * crate::algebra::flatten(&t));
            let rhs = kron_vec(&gns.lambda(&alg.basis(a)), &gns.lambda(&alg.basis(b)));
            acc.add(lhs.as_slice(), rhs.as_slice());
        }
    }
    r.residual(s, "w_defining_relation", acc.value(), tol);
    r.residual(s, "pentagon", pentagon_residual(&mu.w, n), tol);

    let mut acc = ResidualAcc::default();
    for a in 0..n {
        let lhs = mu.w.adjoint() * kron(&identity(n), &pis[a]) * &mu.w;
        let rhs = gns.tensor_rep(&pis, &q.hopf.hopf.comult[a]);
        acc.add_mat(&lhs, &rhs);
    }
    r.residual(s, "w_implements_comultiplication", acc.value(), tol);

    r.residual(s, "w_hat_unitary", unitarity_residual(&mu.w_hat), tol);
    r.residual(s, "w_hat_pentagon", pentagon_residual(&mu.w_hat, n), tol);
    let mut acc = ResidualAcc::default();
    for w in 0..n {
        let lhs = mu.w_hat.adjoint() * kron(&identity(n), &pi_hats[w]) * &mu.w_hat;
        let rhs = gns.tensor_rep(&pi_hats, &dual.hopf.comult[w].transpose());
        acc.add_mat(&lhs, &rhs);
    }
    r.residual(s, "w_hat_implements_opposite_dual_comultiplication", acc.value(), tol);

    let left_slices = compare_spans(&slices(&mu.w, n, true), &vec_columns(&pis), 1e-10);
    r.flag(s, "left_slices_span_pi", left_slices.equal());
    let right_slices = compare_spans(&slices(&mu.w, n, false), &vec_columns(&pi_hats), 1e-10);
    r.flag(s, "right_slices_span_pi_hat", right_slices.equal());
    r.residual(
        s,
        "w_in_pi_tensor_pi_hat",
        tensor_membership_residual(&mu.w, n, &pis, &pi_hats),
        tol,
    );

    let t = tomita(alg, &gns);
    let mut acc = ResidualAcc::default();
    let sqrt = hermitian_function(&t.nabla, |v| re(v.sqrt()));
    for a in 0..n {
        let v = &sqrt * gns.lambda(&alg.basis(a));
        let lhs = &t.j * v.map(|z| z.conj());
        let rhs = gns.lambda(&alg.star_basis(a));
        acc.add(lhs.as_slice(), rhs.as_slice());
    }
    r.residual(s, "tomita_polar_relation", acc.value(), tol);
    r.residual(s, "tomita_j_antiunitary", unitarity_residual(&t.j), tol);
    let mut acc = ResidualAcc::default();
    acc.add_mat(&(&t.j * conj(&t.j)), &identity(n));
    r.residual(s, "tomita_j_involutive", acc.value(), tol);
    let (vals, _) = hermitian_eigen(&t.nabla);
    r.floor(s, "tomita_nabla_positive", vals[0], 1e-12);
    let modular_frame = gns.to_frame(&q.modular.rho);
    r.residual(s, "tomita_nabla_matches_rho", residual(&t.nabla, &modular_frame)?, tol);
    if q.is_kac() {
        r.residual(s, "tomita_nabla_trivial", residual(&t.nabla, &identity(n))?, tol);
    }
    Ok(r)
}

/// ⟨π(x) v, w⟩-style vector functional ω_{v,w}(X) = ⟨Xv, w⟩ = wᴴXv.
pub fn vector_functional(x: &ComplexMatrix, v: &ComplexVector, w: &ComplexVector) -> C64 {
    w.dotc(&(x * v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::STANDARD;
    use crate::dual::dual_hopf;
    use crate::random::{random_vector, Rng};

    fn qg(name: &str) -> QuantumGroup {
        QuantumGroup::from_builtin(name, 1e-9).unwrap()
    }

    #[test]
    fn gram_examples() {
        let g = GnsSpace::new(&qg("z2")).unwrap();
        assert!(residual(&g.gram, &identity(2)).unwrap() < 1e-14);
        let g = GnsSpace::new(&qg("s3-function")).unwrap();
        assert!(residual(&g.gram, &(identity(6) * re(1.0 / 6.0))).unwrap() < 1e-14);
    }

    #[test]
    fn z2_w_is_permutation() {
        let q = qg("z2");
        let g = GnsSpace::new(&q).unwrap();
        let w = multiplicative_unitary(&q, &g).unwrap().w;
        // W(Λ(g)⊗Λ(h)) = Λ(h⁻¹g)⊗Λ(h) in the group algebra
        for a in 0..2 {
            for b in 0..2 {
                let col = w.column(a * 2 + b);
                let target = (a ^ b) * 2 + b;
                for k in 0..4 {
                    let expected = if k == target { 1.0 } else { 0.0 };
                    assert!((col[k] - re(expected)).norm() < 1e-14);
                }
            }
        }
        assert!(pentagon_residual(&w, 2) < 1e-15);
    }

    #[test]
    fn pentagon_matches_dense_kronecker_form() {
        let q = qg("z2");
        let g = GnsSpace::new(&q).unwrap();
        let w = multiplicative_unitary(&q, &g).unwrap().w;
        let space = crate::tensor::LegSpace::new(&[2, 2, 2]).unwrap();
        let w12 = crate::tensor::leg_embed(&w, (1, 2), &space).unwrap();
        let w13 = crate::tensor::leg_embed(&w, (1, 3), &space).unwrap();
        let w23 = crate::tensor::leg_embed(&w, (2, 3), &space).unwrap();
        let dense = residual(&(&w12 * &w13 * &w23), &(&w23 * &w12)).unwrap();
        assert!(dense < 1e-15);
        // a non-pentagonal unitary is detected by both forms
        let mut rng = Rng::seeded(9);
        let u = crate::random::random_unitary(&mut rng, 4);
        let u12 = crate::tensor::leg_embed(&u, (1, 2), &space).unwrap();
        let u13 = crate::tensor::leg_embed(&u, (1, 3), &space).unwrap();
        let u23 = crate::tensor::leg_embed(&u, (2, 3), &space).unwrap();
        let dense = residual(&(&u12 * &u13 * &u23), &(&u23 * &u12)).unwrap();
        assert!((dense - pentagon_residual(&u, 2)).abs() < 1e-12);
        assert!(dense > 1e-3);
    }

    #[test]
    fn gns_checks_pass_on_builtins() {
        for name in STANDARD {
            let q = qg(name);
            let d = dual_hopf(&q).unwrap();
            let rep = gns_report(&q, &d, 1e-9).unwrap();
            assert!(rep.passed(), "{name}\n{rep}");
        }
    }

    #[test]
    fn left_rep_adjoint_is_star() {
        let q = qg("kac-paljutkin");
        let g = GnsSpace::new(&q).unwrap();
        let mut rng = Rng::seeded(4);
        let a = random_vector(&mut rng, 8);
        let lhs = g.left_rep(q.algebra(), &a).adjoint();
        let rhs = g.left_rep(q.algebra(), &q.algebra().star(&a));
        assert!(residual(&lhs, &rhs).unwrap() < 1e-10);
    }

    #[test]
    fn tomita_of_non_tracial_state() {
        // ω(x) = Tr(Dx) on M₂ with D = diag(0.8, 0.2)
        let m2 = Algebra::matrix_algebra(2);
        let omega = ComplexVector::from_vec(vec![re(0.8), ZERO, ZERO, re(0.2)]);
        let g = GnsSpace::from_functional(&m2, &omega).unwrap();
        let t = tomita(&m2, &g);
        let rho = crate::haar::compute_rho(&m2, &omega).unwrap();
        assert!(residual(&t.nabla, &g.to_frame(&rho)).unwrap() < 1e-12);
        let (vals, _) = hermitian_eigen(&t.nabla);
        // spectrum {d_i/d_j}
        let expected = [0.25, 1.0, 1.0, 4.0];
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12);
        }
        assert!(unitarity_residual(&t.j) < 1e-12);
    }

    #[test]
    fn tomita_is_trivial_for_kac_type() {
        for name in ["z2", "s3-function", "kac-paljutkin"] {
            let q = qg(name);
            let g = GnsSpace::new(&q).unwrap();
            let t = tomita(q.algebra(), &g);
            assert!(residual(&t.nabla, &identity(q.dim())).unwrap() < 1e-9);
        }
    }
}
