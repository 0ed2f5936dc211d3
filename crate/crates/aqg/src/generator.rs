//! Representations of A, their unitary generators on H⊗K, the map Q from A
//! into functionals on π̂(Â), the induced action on B(K) and its conditional
//! expectation onto the fixed points.
//!
//! Operators on H⊗K use the GNS frame on H and the standard basis on K, with
//! index h·k + κ. For U on H⊗K, `leg_block(i, j)` is the k×k block
//! (ω_{e_j,e_i}⊗ι)(U) and `k_block(r, s)` is the n×n block (ι⊗ω_{e_s,e_r})(U).

use crate::algebra::{Algebra, Element, Functional, HopfAlgebra};
use crate::blocks::decompose;
use crate::error::{AqgError, Result};
use crate::gns::{multiplicative_unitary, GnsSpace};
use crate::quantum::QuantumGroup;
use crate::random::{random_matrix, random_unitary, Rng};
use crate::report::Report;
use crate::tensor::{
    column_space, compare_spans, hermitian_eigen, identity, kron, mul, mul_id_kron_left, mul_id_kron_right, operator_norm,
    pinv, rank, residual, unitarity_residual, zeros, ComplexMatrix, ComplexVector, ResidualAcc,
    ONE, ZERO,
};

/// A *-representation of A on C^k, given by the images of the basis.
#[derive(Clone, Debug)]
pub struct Representation {
    pub k: usize,
    pub images: Vec<ComplexMatrix>,
}

impl Representation {
    pub fn new(images: Vec<ComplexMatrix>) -> Result<Self> {
        let k = images.first().map(|m| m.nrows()).unwrap_or(0);
        if k == 0 || images.iter().any(|m| m.shape() != (k, k)) {
            return Err(AqgError::Shape("representation images must be non-empty k×k".into()));
        }
        Ok(Representation { k, images })
    }

    pub fn image(&self, a: &Element) -> ComplexMatrix {
        let mut out = zeros(self.k, self.k);
        for (i, m) in self.images.iter().enumerate() {
            if a[i] != ZERO {
                out += m * a[i];
            }
        }
        out
    }

    /// The counit as a one-dimensional representation.
    pub fn counit(h: &HopfAlgebra) -> Self {
        let images = h.hopf.counit.iter().map(|&v| ComplexMatrix::from_element(1, 1, v)).collect();
        Representation { k: 1, images }
    }

    /// The regular representation π on H.
    pub fn regular(alg: &Algebra, gns: &GnsSpace) -> Self {
        let images = alg.left.iter().map(|l| gns.to_frame(l)).collect();
        Representation { k: alg.n, images }
    }

    pub fn direct_sum(&self, other: &Representation) -> Self {
        let k = self.k + other.k;
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| {
                let mut m = zeros(k, k);
                m.view_mut((0, 0), (self.k, self.k)).copy_from(a);
                m.view_mut((self.k, self.k), (other.k, other.k)).copy_from(b);
                m
            })
            .collect();
        Representation { k, images }
    }

    /// V φ(·) V*.
    pub fn conjugate(&self, v: &ComplexMatrix) -> Self {
        let images = self.images.iter().map(|m| v * m * v.adjoint()).collect();
        Representation { k: self.k, images }
    }

    pub fn report(&self, alg: &Algebra, tol: f64) -> Report {
        let s = "representation";
        let mut r = Report::new();
        let mut mult = ResidualAcc::default();
        let mut star = ResidualAcc::default();
        for i in 0..alg.n {
            star.add_mat(&self.image(&alg.star_basis(i)), &self.images[i].adjoint());
            for j in 0..alg.n {
                mult.add_mat(&self.image(&alg.product(i, j)), &(&self.images[i] * &self.images[j]));
            }
        }
        r.residual(s, "multiplicative", mult.value(), tol);
        r.residual(s, "star", star.value(), tol);
        r.residual(s, "unital", residual(&self.image(&alg.unit), &identity(self.k)).unwrap(), tol);
        r
    }
}

/// Direct sum of the irreducible blocks with multiplicities drawn from
/// 0..=max_mult (at least one non-zero), conjugated by a random unitary.
pub fn random_representation(q: &QuantumGroup, rng: &mut Rng, max_mult: usize) -> Result<Representation> {
    let blocks = decompose(q.algebra(), q.phi(), rng.below(1 << 30) as u64)?;
    loop {
        let mults: Vec<usize> = blocks.iter().map(|_| rng.below(max_mult + 1)).collect();
        if mults.iter().all(|&m| m == 0) {
            continue;
        }
        let mut rep: Option<Representation> = None;
        for (b, &m) in blocks.iter().zip(&mults) {
            for _ in 0..m {
                let irrep = Representation { k: b.dim, images: b.images.clone() };
                rep = Some(match rep {
                    None => irrep,
                    Some(r) => r.direct_sum(&irrep),
                });
            }
        }
        let rep = rep.expect("at least one block");
        let v = random_unitary(rng, rep.k);
        return Ok(rep.conjugate(&v));
    }
}

/// A unitary on H⊗K.
#[derive(Clone, Debug)]
pub struct Generator {
    pub n: usize,
    pub k: usize,
    pub u: ComplexMatrix,
}

impl Generator {
    pub fn identity(n: usize, k: usize) -> Self {
        Generator { n, k, u: identity(n * k) }
    }

    pub fn leg_block(&self, i: usize, j: usize) -> ComplexMatrix {
        self.u.view((i * self.k, j * self.k), (self.k, self.k)).into_owned()
    }

    pub fn k_block(&self, r: usize, s: usize) -> ComplexMatrix {
        let k = self.k;
        ComplexMatrix::from_fn(self.n, self.n, |i, j| self.u[(i * k + r, j * k + s)])
    }

    /// (ω_{u,v}⊗ι)(U) with ω_{u,v}(X) = ⟨Xu, v⟩.
    pub fn slice(&self, u: &ComplexVector, v: &ComplexVector) -> ComplexMatrix {
        let mut out = zeros(self.k, self.k);
        for i in 0..self.n {
            for j in 0..self.n {
                let c = v[i].conj() * u[j];
                if c != ZERO {
                    out += self.leg_block(i, j) * c;
                }
            }
        }
        out
    }
}

/// Q(a) as a functional on π̂(Â), in ê-coordinates: Q(a)[π̂(ê_b)] = φ(S⁻¹(a)e_b).
pub fn q_formula(q: &QuantumGroup, a: &Element) -> Functional {
    q.pairing.transpose() * (&q.antipode_inv * a)
}

/// Q(a) as the vector functional ω_{Λ(a),Λ(c)} restricted to π̂(Â), with c
/// the support companion.
pub fn q_vector_functional(q: &QuantumGroup, gns: &GnsSpace, dual: &Algebra, a: &Element) -> Functional {
    let c = crate::dual::support_companion(q);
    let u = gns.lambda(a);
    let v = gns.lambda(&c);
    Functional::from_iterator(
        q.dim(),
        (0..q.dim()).map(|b| v.dotc(&(gns.to_frame(&dual.left[b]) * &u))),
    )
}

/// Product of functionals on π̂(Â) induced by Δ̂_op.
pub fn q_product(dual: &HopfAlgebra, w1: &Functional, w2: &Functional) -> Functional {
    Functional::from_iterator(
        dual.dim(),
        dual.hopf.comult.iter().map(|d| (w2.transpose() * d * w1)[(0, 0)]),
    )
}

/// Checks on the map Q.
pub fn q_report(q: &QuantumGroup, dual: &QuantumGroup, gns: &GnsSpace, tol: f64) -> Report {
    let s = "q_map";
    let n = q.dim();
    let alg = q.algebra();
    let mut r = Report::new();
    let formulas: Vec<Functional> = (0..n).map(|a| q_formula(q, &alg.basis(a))).collect();
    let mut acc = ResidualAcc::default();
    for (a, f) in formulas.iter().enumerate() {
        let v = q_vector_functional(q, gns, dual.algebra(), &alg.basis(a));
        acc.add(v.as_slice(), f.as_slice());
    }
    r.residual(s, "vector_functional_form", acc.value(), tol);

    let mut acc = ResidualAcc::default();
    for a1 in 0..n {
        for a2 in 0..n {
            let lhs = q_product(&dual.hopf, &formulas[a1], &formulas[a2]);
            let rhs = q_formula(q, &alg.product(a1, a2));
            acc.add(lhs.as_slice(), rhs.as_slice());
        }
    }
    r.residual(s, "homomorphism", acc.value(), tol);
    let coeffs = crate::tensor::columns(&formulas, n);
    r.floor(s, "injective_full_rank", rank(&coeffs, 1e-10) as f64, n as f64 - 0.5);

    // Θ(x) as a functional on Â: ê_b ↦ ê_b(x), read off the double dual basis
    let theta = crate::dual::double_dual_iso(q, dual);
    let mut acc = ResidualAcc::default();
    for (a, f) in formulas.iter().enumerate() {
        let x = &q.antipode_inv * alg.basis(a);
        let theta_fn = &dual.pairing * (&theta * x);
        acc.add(f.as_slice(), theta_fn.as_slice());
    }
    r.residual(s, "double_dual_form", acc.value(), tol);
    r
}

/// Rejects representations whose images do not span C^k.
fn check_nondegenerate(rep: &Representation) -> Result<()> {
    let k = rep.k;
    let mut m = zeros(k, k * rep.images.len());
    for (i, x) in rep.images.iter().enumerate() {
        m.columns_mut(i * k, k).copy_from(x);
    }
    if rank(&m, 1e-10) < k {
        return Err(AqgError::Degenerate("representation images do not span K".into()));
    }
    Ok(())
}

/// U(Λ(a)⊗φ(b)v) = Σ Λ(a_i)⊗φ(b_i)v for Δ(a)(b⊗1) = Σ b_i⊗a_i, built with
/// b = 1.
pub fn generator_of_rep(q: &QuantumGroup, gns: &GnsSpace, rep: &Representation) -> Result<Generator> {
    check_nondegenerate(rep)?;
    let n = q.dim();
    let k = rep.k;
    let mut coord = zeros(n * k, n * k);
    for a in 0..n {
        let d = &q.hopf.hopf.comult[a];
        for p in 0..n {
            for qq in 0..n {
                let c = d[(p, qq)];
                if c == ZERO {
                    continue;
                }
                let mut view = coord.view_mut((qq * k, a * k), (k, k));
                view += &rep.images[p] * c;
            }
        }
    }
    let u = kron(&gns.c, &identity(k)) * coord * kron(&gns.c_inv, &identity(k));
    Ok(Generator { n, k, u })
}

/// π_U(a) = (Q(a)⊗ι)U, slicing with ω_{Λ(a),Λ(c)}.
pub fn rep_of_generator(q: &QuantumGroup, gns: &GnsSpace, gen: &Generator) -> Representation {
    let c = crate::dual::support_companion(q);
    let v = gns.lambda(&c);
    let images = (0..q.dim())
        .map(|a| gen.slice(&gns.lambda(&q.algebra().basis(a)), &v))
        .collect();
    Representation { k: gen.k, images }
}

fn k_blocks(gen: &Generator) -> Vec<Vec<ComplexMatrix>> {
    (0..gen.k).map(|r| (0..gen.k).map(|s| gen.k_block(r, s)).collect()).collect()
}

/// Σ_t U^{(rt)}⊗U^{(ts)}, the (r, s) block of U₁₃U₂₃.
fn product_block(blocks: &[Vec<ComplexMatrix>], r: usize, s: usize) -> ComplexMatrix {
    let n = blocks[0][0].nrows();
    let mut out = zeros(n * n, n * n);
    for t in 0..blocks.len() {
        out += kron(&blocks[r][t], &blocks[t][s]);
    }
    out
}

/// W X using the sparsity of W, given W*.
fn left_mul(w_adj: &ComplexMatrix, x: &ComplexMatrix) -> ComplexMatrix {
    mul(&x.adjoint(), w_adj).adjoint()
}

/// Ŵ*(1⊗U^{(rs)})Ŵ against Σ_t U^{(rt)}⊗U^{(ts)}, block by block over K.
pub fn corepresentation_residual(w_hat: &ComplexMatrix, gen: &Generator) -> f64 {
    let n = gen.n;
    let blocks = k_blocks(gen);
    let mut acc = ResidualAcc::default();
    for r in 0..gen.k {
        for s in 0..gen.k {
            let y = mul_id_kron_left(n, &blocks[r][s], w_hat);
            let lhs = mul(&y.adjoint(), w_hat).adjoint();
            acc.add_mat(&lhs, &product_block(&blocks, r, s));
        }
    }
    acc.value()
}

/// Ŵ₁₂U₁₃ = U₂₃Ŵ₁₂U₂₃*, with both sides multiplied on the right by U₂₃.
/// The Frobenius residual is unchanged by that unitary factor.
pub fn exchange_residual(w_hat: &ComplexMatrix, gen: &Generator) -> f64 {
    let n = gen.n;
    let blocks = k_blocks(gen);
    let w_adj = w_hat.adjoint();
    let mut acc = ResidualAcc::default();
    for r in 0..gen.k {
        for s in 0..gen.k {
            let lhs = left_mul(&w_adj, &product_block(&blocks, r, s));
            let rhs = mul_id_kron_left(n, &blocks[r][s], w_hat);
            acc.add_mat(&lhs, &rhs);
        }
    }
    acc.value()
}

/// Ŵ₁₂U₁₃ against U₂₃Ŵ₁₂U₂₃* evaluated literally. Cubic in k.
pub fn exchange_residual_direct(w_hat: &ComplexMatrix, gen: &Generator) -> f64 {
    let (n, k) = (gen.n, gen.k);
    let blocks = k_blocks(gen);
    let w_adj = w_hat.adjoint();
    let left: Vec<Vec<ComplexMatrix>> = (0..k)
        .map(|r| (0..k).map(|t| mul_id_kron_left(n, &blocks[r][t], w_hat)).collect())
        .collect();
    let mut acc = ResidualAcc::default();
    for r in 0..k {
        for s in 0..k {
            let lhs = left_mul(&w_adj, &kron(&blocks[r][s], &identity(n)));
            let mut rhs = zeros(n * n, n * n);
            for t in 0..k {
                rhs += mul_id_kron_right(&left[r][t], n, &blocks[s][t].adjoint());
            }
            acc.add_mat(&lhs, &rhs);
        }
    }
    acc.value()
}

/// Checks on a generator built from `rep`.
pub fn generator_report(
    q: &QuantumGroup,
    gns: &GnsSpace,
    dual: &HopfAlgebra,
    rep: &Representation,
    gen: &Generator,
    tol: f64,
) -> Result<Report> {
    let s = "generator";
    let n = q.dim();
    let k = rep.k;
    let alg = q.algebra();
    let mut r = Report::new();

    // defining relation on Λ(e_a)⊗φ(e_b)v for all a, b
    let ck = kron(&gns.c, &identity(k));
    let mut acc = ResidualAcc::default();
    for a in 0..n {
        let lam = gns.lambda(&alg.basis(a));
        let ua = &gen.u * kron(&ComplexMatrix::from_column_slice(n, 1, lam.as_slice()), &identity(k));
        for b in 0..n {
            let lhs = &ua * &rep.images[b];
            let t = alg.right_matrix(&alg.basis(b)) * &q.hopf.hopf.comult[a];
            let mut rhs = zeros(n * k, k);
            for p in 0..n {
                for qq in 0..n {
                    if t[(p, qq)] != ZERO {
                        let mut view = rhs.view_mut((qq * k, 0), (k, k));
                        view += &rep.images[p] * t[(p, qq)];
                    }
                }
            }
            acc.add_mat(&lhs, &(&ck * rhs));
        }
    }
    r.residual(s, "defining_relation", acc.value(), tol);
    r.residual(s, "unitary", unitarity_residual(&gen.u), tol);

    let mu = multiplicative_unitary(q, gns)?;
    r.residual(s, "corepresentation", corepresentation_residual(&mu.w_hat, gen), tol);
    r.residual(s, "exchange_relation", exchange_residual(&mu.w_hat, gen), tol);

    // U(π̂(ê_b)⊗φ(e_a)) = Σ π̂(b̂_k)⊗φ(a_k) for Δ(b)(a⊗1) = Σ a_k⊗b_k
    let pi_hats: Vec<ComplexMatrix> = (0..n).map(|i| gns.to_frame(&dual.algebra.left[i])).collect();
    let u_pi: Vec<ComplexMatrix> =
        pi_hats.iter().map(|p| mul(&gen.u, &kron(p, &identity(k)))).collect();
    let mut acc = ResidualAcc::default();
    for a in 0..n {
        let ra = alg.right_matrix(&alg.basis(a));
        for b in 0..n {
            let lhs = mul_id_kron_right(&u_pi[b], n, &rep.images[a]);
            let t = &ra * &q.hopf.hopf.comult[b];
            let mut rhs = zeros(n * k, n * k);
            for p in 0..n {
                let mut y = zeros(n, n);
                let mut any = false;
                for qq in 0..n {
                    if t[(p, qq)] != ZERO {
                        y += &pi_hats[qq] * t[(p, qq)];
                        any = true;
                    }
                }
                if any {
                    rhs += kron(&y, &rep.images[p]);
                }
            }
            acc.add_mat(&lhs, &rhs);
        }
    }
    r.residual(s, "intertwining", acc.value(), tol);

    // (ω_{Λ(a),Λ(b)}⊗ι)U = φ((ι⊗φ)((1⊗b*)Δ(a)))
    let mut acc = ResidualAcc::default();
    for b in 0..n {
        let lb = alg.left_matrix(&alg.star_basis(b)).transpose();
        let v = gns.lambda(&alg.basis(b));
        for a in 0..n {
            let lhs = gen.slice(&gns.lambda(&alg.basis(a)), &v);
            let x = &q.hopf.hopf.comult[a] * (&lb * q.phi());
            acc.add_mat(&lhs, &rep.image(&x));
        }
    }
    r.residual(s, "slice_formula", acc.value(), tol);

    let back = rep_of_generator(q, gns, gen);
    let mut acc = ResidualAcc::default();
    for a in 0..n {
        acc.add_mat(&back.images[a], &rep.images[a]);
    }
    r.residual(s, "round_trip", acc.value(), tol);
    Ok(r)
}

/// α(x) = U*(1⊗x)U.
pub fn action(gen: &Generator, x: &ComplexMatrix) -> ComplexMatrix {
    gen.u.adjoint() * kron(&identity(gen.n), x) * &gen.u
}

fn unit_matrix(k: usize, r: usize, s: usize) -> ComplexMatrix {
    let mut m = zeros(k, k);
    m[(r, s)] = ONE;
    m
}

/// (ι⊗α)α(x) against Ŵ₁₂*α(x)₂₃Ŵ₁₂ for all matrix units x. Dense in n²k.
pub fn action_property_residual(w_hat: &ComplexMatrix, gen: &Generator) -> f64 {
    let (n, k) = (gen.n, gen.k);
    let w12 = kron(w_hat, &identity(k));
    let mut acc = ResidualAcc::default();
    for r in 0..k {
        for s in 0..k {
            let ax = action(gen, &unit_matrix(k, r, s));
            let rhs = w12.adjoint() * kron(&identity(n), &ax) * &w12;
            let mut lhs = zeros(n * n * k, n * n * k);
            for i in 0..n {
                for j in 0..n {
                    let block = ax.view((i * k, j * k), (k, k)).into_owned();
                    if block.iter().all(|v| *v == ZERO) {
                        continue;
                    }
                    let inner = action(gen, &block);
                    lhs.view_mut((i * n * k, j * n * k), (n * k, n * k)).copy_from(&inner);
                }
            }
            acc.add_mat(&lhs, &rhs);
        }
    }
    acc.value()
}

pub fn action_report(q: &QuantumGroup, gns: &GnsSpace, gen: &Generator, tol: f64) -> Result<Report> {
    let s = "action";
    let (n, k) = (gen.n, gen.k);
    let mut r = Report::new();
    r.residual(s, "unital", residual(&action(gen, &identity(k)), &identity(n * k))?, tol);
    let mut star = ResidualAcc::default();
    let mut mult = ResidualAcc::default();
    let units: Vec<ComplexMatrix> =
        (0..k * k).map(|i| unit_matrix(k, i % k, i / k)).collect();
    let images: Vec<ComplexMatrix> = units.iter().map(|x| action(gen, x)).collect();
    for (x, ax) in units.iter().zip(&images) {
        star.add_mat(&action(gen, &x.adjoint()), &ax.adjoint());
    }
    for r1 in 0..k {
        for c1 in 0..k {
            for c2 in 0..k {
                // E_{r1 c1} E_{c1 c2} = E_{r1 c2}
                let lhs = &images[r1 + c1 * k] * &images[c1 + c2 * k];
                mult.add_mat(&lhs, &images[r1 + c2 * k]);
            }
        }
    }
    r.residual(s, "star", star.value(), tol);
    r.residual(s, "multiplicative", mult.value(), tol);
    let mu = multiplicative_unitary(q, gns)?;
    r.residual(s, "action_property", action_property_residual(&mu.w_hat, gen), tol);
    Ok(r)
}

/// Null space of M through the Hermitian eigenproblem of MᴴM.
fn null_space_normal(m: &ComplexMatrix, rel: f64) -> ComplexMatrix {
    let g = m.adjoint() * m;
    let (vals, vecs) = hermitian_eigen(&g);
    let top = vals.last().copied().unwrap_or(0.0).max(0.0);
    let keep: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] <= rel * top).collect();
    let mut out = zeros(g.nrows(), keep.len());
    for (j, &i) in keep.iter().enumerate() {
        out.set_column(j, &vecs.column(i));
    }
    out
}

/// Basis (as vec columns) of {x ∈ M_k : xB = Bx for every B in `ops`}.
fn commuting_space(ops: &[ComplexMatrix], k: usize) -> ComplexMatrix {
    let span = column_space(
        &crate::tensor::columns(
            &ops.iter().map(|o| ComplexVector::from_column_slice(o.as_slice())).collect::<Vec<_>>(),
            k * k,
        ),
        1e-10,
    );
    let id = identity(k);
    let mut m = zeros(span.ncols() * k * k, k * k);
    for j in 0..span.ncols() {
        let b = ComplexMatrix::from_column_slice(k, k, span.column(j).as_slice());
        let eq = kron(&b.transpose(), &id) - kron(&id, &b);
        m.rows_mut(j * k * k, k * k).copy_from(&eq);
    }
    null_space_normal(&m, 1e-12)
}

/// Fixed points of α. α(x) = 1⊗x is equivalent to x commuting with every
/// leg block of U, which keeps the system at size k².
pub fn fixed_points(gen: &Generator) -> ComplexMatrix {
    let mut blocks = Vec::with_capacity(gen.n * gen.n);
    for i in 0..gen.n {
        for j in 0..gen.n {
            blocks.push(gen.leg_block(i, j));
        }
    }
    commuting_space(&blocks, gen.k)
}

/// φ(A)′ from the representation alone.
pub fn commutant(rep: &Representation) -> ComplexMatrix {
    commuting_space(&rep.images, rep.k)
}

/// The invariant mean on π̂(Â): the normalized Haar state of the dual, as a
/// covector in ê-coordinates.
pub fn invariant_mean(dual: &QuantumGroup) -> Functional {
    let phi = dual.phi();
    let total = phi.dot(&dual.algebra().unit);
    phi / total
}

pub fn invariant_mean_report(dual: &QuantumGroup, m: &Functional, tol: f64) -> Report {
    let s = "invariant_mean";
    let n = dual.dim();
    let alg = dual.algebra();
    let mut r = Report::new();
    // (ι⊗m)Δ̂_op(x) = m(x)1
    let mut acc = ResidualAcc::default();
    for i in 0..n {
        let lhs = dual.hopf.hopf.comult[i].transpose() * m;
        let rhs = &alg.unit * m[i];
        acc.add(lhs.as_slice(), rhs.as_slice());
    }
    r.residual(s, "right_invariance", acc.value(), tol);
    r.residual(s, "normalized", (m.dot(&alg.unit) - ONE).norm(), tol);
    let g = crate::haar::gram(alg, m);
    let (lo, _) = crate::haar::gram_min_eigenvalue(&g);
    r.floor(s, "positive", lo, -tol);
    r
}

/// E with η(E(x)) = m((ι⊗η)α(x)). The mean is applied to operators on H
/// through a density D in π̂(Â) with Tr(Dπ̂(ê_b)) = m(ê_b). With the leg
/// blocks U_[ij], E(x) = Σ_{l,i,j} D_ji U_[li]* x U_[lj].
#[derive(Clone, Debug)]
pub struct ConditionalExpectation {
    pub density: ComplexMatrix,
    left: Vec<ComplexMatrix>,
    right: Vec<ComplexMatrix>,
}

impl ConditionalExpectation {
    pub fn new(gns: &GnsSpace, dual: &Algebra, m: &Functional, gen: &Generator) -> Self {
        let n = dual.n;
        // rows: vec(π̂_b)ᵀ acting on vec(Dᵀ)
        let mut a = zeros(n, n * n);
        for b in 0..n {
            let pb = gns.to_frame(&dual.left[b]);
            for (idx, v) in pb.iter().enumerate() {
                a[(b, idx)] = *v;
            }
        }
        let d_t = pinv(&a, 1e-12) * m;
        let density = ComplexMatrix::from_column_slice(n, n, d_t.as_slice()).transpose();
        let k = gen.k;
        let mut left = Vec::with_capacity(n * n);
        let mut right = Vec::with_capacity(n * n);
        for l in 0..n {
            for j in 0..n {
                let mut g = zeros(k, k);
                for i in 0..n {
                    let c = density[(j, i)];
                    if c != ZERO {
                        g += gen.leg_block(l, i).adjoint() * c;
                    }
                }
                left.push(g);
                right.push(gen.leg_block(l, j));
            }
        }
        ConditionalExpectation { density, left, right }
    }

    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let k = x.nrows();
        let mut out = zeros(k, k);
        for (g, u) in self.left.iter().zip(&self.right) {
            if g.iter().all(|v| *v == ZERO) {
                continue;
            }
            out += g * x * u;
        }
        out
    }

    /// The defining formula, through the full α(x).
    pub fn apply_direct(&self, gen: &Generator, x: &ComplexMatrix) -> ComplexMatrix {
        let ax = action(gen, x);
        let k = gen.k;
        let mut out = zeros(k, k);
        for i in 0..gen.n {
            for j in 0..gen.n {
                let c = self.density[(j, i)];
                if c != ZERO {
                    out += ax.view((i * k, j * k), (k, k)) * c;
                }
            }
        }
        out
    }
}

/// ‖α(y) − 1⊗y‖ computed as ‖(1⊗y)U − U(1⊗y)‖, which is equal for unitary U.
pub fn fixed_point_residual(gen: &Generator, y: &ComplexMatrix) -> f64 {
    let mut acc = ResidualAcc::default();
    for i in 0..gen.n {
        for j in 0..gen.n {
            let b = gen.leg_block(i, j);
            acc.add_mat(&(y * &b), &(&b * y));
        }
    }
    acc.value()
}

pub fn expectation_report(
    gen: &Generator,
    rep: &Representation,
    e: &ConditionalExpectation,
    rng: &mut Rng,
    samples: usize,
    tol: f64,
) -> Report {
    let s = "expectation";
    let k = gen.k;
    let mut r = Report::new();
    let fixed = fixed_points(gen);
    let comm = commutant(rep);
    r.flag(s, "fixed_points_equal_commutant", compare_spans(&fixed, &comm, 1e-9).equal());

    let units: Vec<ComplexMatrix> = (0..k * k).map(|i| unit_matrix(k, i % k, i / k)).collect();
    let range: Vec<ComplexVector> = units
        .iter()
        .map(|x| ComplexVector::from_column_slice(e.apply(x).as_slice()))
        .collect();
    let range = crate::tensor::columns(&range, k * k);
    r.flag(s, "range_is_commutant", compare_spans(&range, &comm, 1e-9).equal());
    r.residual(s, "unital", residual(&e.apply(&identity(k)), &identity(k)).unwrap(), tol);

    let mut idem = ResidualAcc::default();
    let mut fixes = ResidualAcc::default();
    let mut invariant: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    let mut worst_positivity: f64 = 0.0;
    for _ in 0..samples {
        let x = random_matrix(rng, k, k);
        let ex = e.apply(&x);
        idem.add_mat(&e.apply(&ex), &ex);
        invariant = invariant.max(fixed_point_residual(gen, &ex));
        worst_norm = worst_norm.max(operator_norm(&ex) / operator_norm(&x) - 1.0);
        let pos = e.apply(&(x.adjoint() * &x));
        let (vals, _) = hermitian_eigen(&((&pos + pos.adjoint()) * crate::tensor::re(0.5)));
        let scale = operator_norm(&x).powi(2);
        worst_positivity = worst_positivity.max(-vals[0] / scale);
    }
    for j in 0..comm.ncols() {
        let y = ComplexMatrix::from_column_slice(k, k, comm.column(j).as_slice());
        fixes.add_mat(&e.apply(&y), &y);
    }
    r.residual(s, "idempotent", idem.value(), tol);
    r.residual(s, "range_in_fixed_points", invariant, tol);
    r.residual(s, "identity_on_fixed_points", fixes.value(), tol);
    r.residual(s, "contractive", worst_norm.max(0.0), tol);
    r.residual(s, "positive", worst_positivity.max(0.0), tol);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::dual_aqg;
    use crate::random::random_vector;

    struct Setup {
        q: QuantumGroup,
        d: QuantumGroup,
        gns: GnsSpace,
    }

    fn setup(name: &str) -> Setup {
        let q = QuantumGroup::from_builtin(name, 1e-9).unwrap();
        let d = dual_aqg(&q).unwrap();
        let gns = GnsSpace::new(&q).unwrap();
        Setup { q, d, gns }
    }

    #[test]
    fn q_map_checks() {
        for name in ["z2", "s3-function", "kac-paljutkin"] {
            let st = setup(name);
            let rep = q_report(&st.q, &st.d, &st.gns, 1e-9);
            assert!(rep.passed(), "{name}\n{rep}");
        }
    }

    #[test]
    fn q_of_unit_is_haar() {
        let st = setup("kac-paljutkin");
        let f = q_formula(&st.q, &st.q.algebra().unit);
        assert!(crate::tensor::residual_vec(&f, st.q.phi()) < 1e-12);
    }

    #[test]
    fn counit_generator_is_identity() {
        let st = setup("kac-paljutkin");
        let rep = Representation::counit(&st.q.hopf);
        let g = generator_of_rep(&st.q, &st.gns, &rep).unwrap();
        assert!(residual(&g.u, &identity(8)).unwrap() < 1e-12);
    }

    #[test]
    fn regular_generator_is_w_hat() {
        for name in ["z2", "s3-group", "kac-paljutkin"] {
            let st = setup(name);
            let rep = Representation::regular(st.q.algebra(), &st.gns);
            let g = generator_of_rep(&st.q, &st.gns, &rep).unwrap();
            let mu = multiplicative_unitary(&st.q, &st.gns).unwrap();
            assert!(residual(&g.u, &mu.w_hat).unwrap() < 1e-10, "{name}");
        }
    }

    #[test]
    fn w_hat_and_identity_round_trip() {
        let st = setup("kac-paljutkin");
        let mu = multiplicative_unitary(&st.q, &st.gns).unwrap();
        let gen = Generator { n: 8, k: 8, u: mu.w_hat.clone() };
        let rep = rep_of_generator(&st.q, &st.gns, &gen);
        let regular = Representation::regular(st.q.algebra(), &st.gns);
        for a in 0..8 {
            assert!(residual(&rep.images[a], &regular.images[a]).unwrap() < 1e-9);
        }
        let rebuilt = generator_of_rep(&st.q, &st.gns, &rep).unwrap();
        assert!(residual(&rebuilt.u, &mu.w_hat).unwrap() < 1e-9);

        let trivial = rep_of_generator(&st.q, &st.gns, &Generator::identity(8, 1));
        for a in 0..8 {
            let e = st.q.hopf.hopf.counit[a];
            assert!((trivial.images[a][(0, 0)] - e).norm() < 1e-9);
        }
    }

    #[test]
    fn direct_sum_generator_is_block_diagonal() {
        let st = setup("kac-paljutkin");
        let regular = Representation::regular(st.q.algebra(), &st.gns);
        let rep = regular.direct_sum(&Representation::counit(&st.q.hopf));
        let g = generator_of_rep(&st.q, &st.gns, &rep).unwrap();
        let mu = multiplicative_unitary(&st.q, &st.gns).unwrap();
        for r in 0..9 {
            for s in 0..9 {
                let block = g.k_block(r, s);
                let expected = if r < 8 && s < 8 {
                    ComplexMatrix::from_fn(8, 8, |i, j| mu.w_hat[(i * 8 + r, j * 8 + s)])
                } else if r == 8 && s == 8 {
                    identity(8)
                } else {
                    zeros(8, 8)
                };
                assert!((&block - &expected).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn random_representations_generate() {
        let st = setup("kac-paljutkin");
        let mut rng = Rng::seeded(17);
        for _ in 0..3 {
            let rep = random_representation(&st.q, &mut rng, 2).unwrap();
            assert!(rep.report(st.q.algebra(), 1e-9).passed());
            let g = generator_of_rep(&st.q, &st.gns, &rep).unwrap();
            let report = generator_report(&st.q, &st.gns, &st.d.hopf, &rep, &g, 1e-9).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn degenerate_representation_rejected() {
        let st = setup("z2");
        let rep = Representation::new(vec![zeros(2, 2), zeros(2, 2)]).unwrap();
        assert!(matches!(
            generator_of_rep(&st.q, &st.gns, &rep),
            Err(AqgError::Degenerate(_))
        ));
    }

    #[test]
    fn action_and_expectation_on_z2() {
        let st = setup("z2");
        let rep = Representation::regular(st.q.algebra(), &st.gns);
        let g = generator_of_rep(&st.q, &st.gns, &rep).unwrap();
        assert!(action_report(&st.q, &st.gns, &g, 1e-9).unwrap().passed());
        assert_eq!(commutant(&rep).ncols(), 2);
        let m = invariant_mean(&st.d);
        assert!(invariant_mean_report(&st.d, &m, 1e-9).passed());
        // uniform average over the two characters
        assert!((m[0] - crate::tensor::re(0.5)).norm() < 1e-12);
        let e = ConditionalExpectation::new(&st.gns, st.d.algebra(), &m, &g);
        let mut rng = Rng::seeded(2);
        let rep_e = expectation_report(&g, &rep, &e, &mut rng, 100, 1e-9);
        assert!(rep_e.passed(), "{rep_e}");
    }

    #[test]
    fn expectation_on_kac_paljutkin_regular() {
        let st = setup("kac-paljutkin");
        let rep = Representation::regular(st.q.algebra(), &st.gns);
        let g = generator_of_rep(&st.q, &st.gns, &rep).unwrap();
        let m = invariant_mean(&st.d);
        let e = ConditionalExpectation::new(&st.gns, st.d.algebra(), &m, &g);
        let mut rng = Rng::seeded(5);
        let rep_e = expectation_report(&g, &rep, &e, &mut rng, 100, 1e-9);
        assert!(rep_e.passed(), "{rep_e}");
    }

    #[test]
    fn counit_fixed_points_are_scalars() {
        let st = setup("s3-function");
        let rep = Representation::counit(&st.q.hopf);
        let g = generator_of_rep(&st.q, &st.gns, &rep).unwrap();
        assert_eq!(fixed_points(&g).ncols(), 1);
        let m = invariant_mean(&st.d);
        let e = ConditionalExpectation::new(&st.gns, st.d.algebra(), &m, &g);
        let x = ComplexMatrix::from_element(1, 1, crate::tensor::c(2.0, -1.0));
        assert!(residual(&e.apply(&x), &x).unwrap() < 1e-12);
    }

    #[test]
    fn doubled_regular_commutant() {
        let st = setup("z2");
        let regular = Representation::regular(st.q.algebra(), &st.gns);
        let rep = regular.direct_sum(&regular);
        let g = generator_of_rep(&st.q, &st.gns, &rep).unwrap();
        // two characters, each with multiplicity 2
        assert_eq!(commutant(&rep).ncols(), 8);
        assert!(compare_spans(&fixed_points(&g), &commutant(&rep), 1e-8).equal());
        let mut rng = Rng::seeded(8);
        let a = random_vector(&mut rng, 2);
        let back = rep_of_generator(&st.q, &st.gns, &g);
        assert!(residual(&back.image(&a), &rep.image(&a)).unwrap() < 1e-10);
    }

    #[test]
    fn exchange_forms_agree_and_expectation_formulas_agree() {
        let st = setup("kac-paljutkin");
        let mut rng = Rng::seeded(41);
        let rep = random_representation(&st.q, &mut rng, 1).unwrap();
        let g = generator_of_rep(&st.q, &st.gns, &rep).unwrap();
        let mu = multiplicative_unitary(&st.q, &st.gns).unwrap();
        let fast = exchange_residual(&mu.w_hat, &g);
        let direct = exchange_residual_direct(&mu.w_hat, &g);
        assert!(fast < 1e-12 && direct < 1e-12, "{fast} {direct}");

        // a non-corepresentation separates both forms equally
        let mut bad = g.clone();
        bad.u = random_unitary(&mut rng, g.u.nrows());
        let fast = exchange_residual(&mu.w_hat, &bad);
        let direct = exchange_residual_direct(&mu.w_hat, &bad);
        assert!(fast > 1e-3 && (fast - direct).abs() < 1e-9 * fast.max(1.0), "{fast} {direct}");

        let m = invariant_mean(&st.d);
        let e = ConditionalExpectation::new(&st.gns, st.d.algebra(), &m, &g);
        let x = random_matrix(&mut rng, g.k, g.k);
        assert!(residual(&e.apply(&x), &e.apply_direct(&g, &x)).unwrap() < 1e-12);
        assert!(action_report(&st.q, &st.gns, &g, 1e-9).unwrap().passed());
    }
}
