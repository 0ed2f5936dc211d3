//! Finite-dimensional Hopf *-algebras given by structure constants, and the
//! check of their defining axioms.
//!
//! Elements are coordinate vectors in the basis e_0..e_{n-1}. An element of
//! A⊗A is stored as an n×n matrix T with T[(u,v)] the coefficient of e_u⊗e_v,
//! so leg operations become matrix products: (x⊗1)T = L_x T,
//! T(1⊗y) = T R_yᵀ, the flip is Tᵀ.

use crate::error::{AqgError, Result};
use crate::report::Report;
use crate::tensor::{
    basis_vector, conj, conj_vec, identity, inverse_condition, pair, residual, residual_many,
    residual_vec, zeros, ComplexMatrix, ComplexVector, ResidualAcc, C64, ONE, ZERO,
};

pub type Element = ComplexVector;
pub type Functional = ComplexVector;
/// Element of A⊗A, row index = first leg.
pub type Tensor2 = ComplexMatrix;

/// A finite-dimensional *-algebra. `left[i]` is the matrix of left
/// multiplication by e_i, so e_i e_j is column j of `left[i]`. Column i of
/// `star` holds the coordinates of e_i*.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub n: usize,
    pub left: Vec<ComplexMatrix>,
    pub star: ComplexMatrix,
    pub unit: Element,
}

impl Algebra {
    pub fn new(left: Vec<ComplexMatrix>, star: ComplexMatrix, unit: Element) -> Result<Self> {
        let n = unit.len();
        if n == 0 {
            return Err(AqgError::Shape("algebra of dimension 0".into()));
        }
        if left.len() != n || left.iter().any(|l| l.shape() != (n, n)) {
            return Err(AqgError::Shape("multiplication tensor must be n×n×n".into()));
        }
        if star.shape() != (n, n) {
            return Err(AqgError::Shape("star must be n×n".into()));
        }
        Ok(Algebra { n, left, star, unit })
    }

    /// Matrix-unit basis E_{ij} of M_k, ordered i·k + j.
    pub fn matrix_algebra(k: usize) -> Self {
        let n = k * k;
        let mut left = vec![zeros(n, n); n];
        let mut star = zeros(n, n);
        let mut unit = Element::zeros(n);
        for i in 0..k {
            unit[i * k + i] = ONE;
            for j in 0..k {
                star[(j * k + i, i * k + j)] = ONE;
                for l in 0..k {
                    left[i * k + j][(i * k + l, j * k + l)] = ONE;
                }
            }
        }
        Algebra { n, left, star, unit }
    }

    pub fn basis(&self, i: usize) -> Element {
        basis_vector(self.n, i)
    }

    /// e_i e_j.
    pub fn product(&self, i: usize, j: usize) -> Element {
        self.left[i].column(j).into_owned()
    }

    /// Left multiplication matrix L_a.
    pub fn left_matrix(&self, a: &Element) -> ComplexMatrix {
        let mut out = zeros(self.n, self.n);
        for (i, l) in self.left.iter().enumerate() {
            if a[i] != ZERO {
                out += l * a[i];
            }
        }
        out
    }

    /// Right multiplication matrix R_b: column i is e_i b.
    pub fn right_matrix(&self, b: &Element) -> ComplexMatrix {
        let mut out = zeros(self.n, self.n);
        for (i, l) in self.left.iter().enumerate() {
            out.set_column(i, &(l * b));
        }
        out
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        assert_eq!(a.len(), self.n, "element of the wrong algebra");
        assert_eq!(b.len(), self.n, "element of the wrong algebra");
        self.left_matrix(a) * b
    }

    pub fn star(&self, a: &Element) -> Element {
        &self.star * conj_vec(a)
    }

    /// Coordinates of e_i* as a column.
    pub fn star_basis(&self, i: usize) -> Element {
        self.star.column(i).into_owned()
    }

    /// Product in A⊗A.
    pub fn tensor_mul(&self, t: &Tensor2, s: &Tensor2) -> Tensor2 {
        let mut out = zeros(self.n, self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                let x = t[(u, v)];
                if x == ZERO {
                    continue;
                }
                out += (&self.left[u] * s * self.left[v].transpose()) * x;
            }
        }
        out
    }

    /// (*⊗*) on A⊗A.
    pub fn tensor_star(&self, t: &Tensor2) -> Tensor2 {
        &self.star * conj(t) * self.star.transpose()
    }

    pub fn check(&self, tol: f64) -> Report {
        let n = self.n;
        let mut r = Report::new();
        // associativity ⇔ L_{e_i e_j} = L_i L_j
        let mut acc = ResidualAcc::default();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.left_matrix(&self.product(i, j));
                let rhs = &self.left[i] * &self.left[j];
                acc.add_mat(&lhs, &rhs);
            }
        }
        r.residual("axioms", "associativity", acc.value(), tol);

        let lu = self.left_matrix(&self.unit);
        let ru = self.right_matrix(&self.unit);
        let unit_res = residual(&lu, &identity(n))
            .unwrap()
            .max(residual(&ru, &identity(n)).unwrap());
        r.residual("axioms", "unit", unit_res, tol);

        let inv = &self.star * conj(&self.star);
        r.residual("axioms", "star_involutive", residual(&inv, &identity(n)).unwrap(), tol);

        let mut acc = ResidualAcc::default();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.star(&self.product(i, j));
                let rhs = self.mul(&self.star_basis(j), &self.star_basis(i));
                acc.add(lhs.as_slice(), rhs.as_slice());
            }
        }
        r.residual("axioms", "star_antimultiplicative", acc.value(), tol);
        r.residual(
            "axioms",
            "star_unit",
            residual_vec(&self.star(&self.unit), &self.unit),
            tol,
        );
        r
    }

    pub fn is_commutative(&self, tol: f64) -> bool {
        let mut acc = ResidualAcc::default();
        for i in 0..self.n {
            for j in 0..self.n {
                acc.add(self.product(i, j).as_slice(), self.product(j, i).as_slice());
            }
        }
        acc.value() < tol
    }

    /// Basis of the center as columns.
    pub fn center(&self, rel: f64) -> ComplexMatrix {
        let n = self.n;
        let mut m = zeros(n * n, n);
        for i in 0..n {
            // z ↦ e_i z − z e_i
            let mut ri = zeros(n, n);
            for k in 0..n {
                ri.set_column(k, &self.left[k].column(i));
            }
            let block = &self.left[i] - ri;
            m.rows_mut(i * n, n).copy_from(&block);
        }
        crate::tensor::null_space(&m, rel)
    }

    /// The trace of the left regular representation, a faithful positive
    /// functional on any finite-dimensional C*-algebra.
    pub fn regular_trace(&self) -> Functional {
        Functional::from_iterator(self.n, self.left.iter().map(crate::tensor::trace))
    }
}

/// Comultiplication, counit and antipode. `comult[i]` is Δ(e_i) as an n×n
/// tensor; column i of `antipode` is S(e_i).
#[derive(Clone, Debug)]
pub struct HopfStructure {
    pub comult: Vec<Tensor2>,
    pub counit: Functional,
    pub antipode: ComplexMatrix,
}

/// An algebra together with its Hopf structure and basis labels.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    pub name: String,
    pub labels: Vec<String>,
    pub algebra: Algebra,
    pub hopf: HopfStructure,
}

impl HopfAlgebra {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        algebra: Algebra,
        hopf: HopfStructure,
    ) -> Result<Self> {
        let n = algebra.n;
        if labels.len() != n {
            return Err(AqgError::Shape("one basis label per basis element".into()));
        }
        if hopf.comult.len() != n || hopf.comult.iter().any(|d| d.shape() != (n, n)) {
            return Err(AqgError::Shape("comultiplication must be n×n²".into()));
        }
        if hopf.counit.len() != n {
            return Err(AqgError::Shape("counit must have length n".into()));
        }
        if hopf.antipode.shape() != (n, n) {
            return Err(AqgError::Shape("antipode must be n×n".into()));
        }
        Ok(HopfAlgebra {
            name: name.into(),
            labels,
            algebra,
            hopf,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.n
    }

    pub fn delta(&self, a: &Element) -> Tensor2 {
        let n = self.dim();
        let mut out = zeros(n, n);
        for (i, d) in self.hopf.comult.iter().enumerate() {
            if a[i] != ZERO {
                out += d * a[i];
            }
        }
        out
    }

    pub fn antipode(&self, a: &Element) -> Element {
        &self.hopf.antipode * a
    }

    pub fn counit(&self, a: &Element) -> C64 {
        pair(&self.hopf.counit, a)
    }

    /// Coordinate matrix of T₁: a⊗b ↦ Δ(a)(b⊗1), column index a·n + b,
    /// row index = flattened tensor u·n + v.
    pub fn t1_matrix(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = zeros(n * n, n * n);
        for b in 0..n {
            let rb = self.algebra.right_matrix(&self.algebra.basis(b));
            for a in 0..n {
                let t = &rb * &self.hopf.comult[a];
                set_flat_column(&mut out, a * n + b, &t);
            }
        }
        out
    }

    /// Coordinate matrix of T₂: a⊗b ↦ Δ(a)(1⊗b).
    pub fn t2_matrix(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = zeros(n * n, n * n);
        for b in 0..n {
            let rbt = self.algebra.right_matrix(&self.algebra.basis(b)).transpose();
            for a in 0..n {
                let t = &self.hopf.comult[a] * &rbt;
                set_flat_column(&mut out, a * n + b, &t);
            }
        }
        out
    }

    /// (Δ⊗ι)T and (ι⊗Δ)T as flattened n³ vectors.
    fn coassoc_pair(&self, t: &Tensor2) -> (Vec<C64>, Vec<C64>) {
        let n = self.dim();
        let mut left = vec![ZERO; n * n * n];
        let mut right = vec![ZERO; n * n * n];
        for u in 0..n {
            for v in 0..n {
                let x = t[(u, v)];
                if x == ZERO {
                    continue;
                }
                let du = &self.hopf.comult[u];
                let dv = &self.hopf.comult[v];
                for a in 0..n {
                    for b in 0..n {
                        left[(a * n + b) * n + v] += x * du[(a, b)];
                        right[(u * n + a) * n + b] += x * dv[(a, b)];
                    }
                }
            }
        }
        (left, right)
    }

    /// One residual per Hopf axiom; failures are reported, never thrown.
    pub fn check_hopf_axioms(&self, tol: f64) -> Report {
        let n = self.dim();
        let alg = &self.algebra;
        let mut r = alg.check(tol);
        let s = "axioms";

        let mut acc = ResidualAcc::default();
        for i in 0..n {
            let (x, y) = self.coassoc_pair(&self.hopf.comult[i]);
            acc.add(&x, &y);
        }
        r.residual(s, "coassociativity", acc.value(), tol);

        let mut acc = ResidualAcc::default();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.delta(&alg.product(i, j));
                let rhs = alg.tensor_mul(&self.hopf.comult[i], &self.hopf.comult[j]);
                acc.add_mat(&lhs, &rhs);
            }
        }
        r.residual(s, "comult_multiplicative", acc.value(), tol);

        let lhs: Vec<_> = (0..n).map(|i| self.delta(&alg.star_basis(i))).collect();
        let rhs: Vec<_> = (0..n).map(|i| alg.tensor_star(&self.hopf.comult[i])).collect();
        r.residual(s, "comult_star", residual_many(&lhs, &rhs), tol);

        let one_one = &alg.unit * alg.unit.transpose();
        r.residual(s, "comult_unit", residual(&self.delta(&alg.unit), &one_one).unwrap(), tol);

        r.floor(s, "T1_invertible", inverse_condition(&self.t1_matrix()), tol);
        r.floor(s, "T2_invertible", inverse_condition(&self.t2_matrix()), tol);

        let eps = &self.hopf.counit;
        let mut left = ResidualAcc::default();
        let mut right = ResidualAcc::default();
        for i in 0..n {
            let d = &self.hopf.comult[i];
            let e_i = alg.basis(i);
            left.add((d.transpose() * eps).as_slice(), e_i.as_slice());
            right.add((d * eps).as_slice(), e_i.as_slice());
        }
        r.residual(s, "counit_left", left.value(), tol);
        r.residual(s, "counit_right", right.value(), tol);

        // m(S⊗ι)(Δ(a)(1⊗b)) = ε(a)b and m(ι⊗S)((b⊗1)Δ(a)) = ε(a)b
        let s_basis: Vec<Element> = (0..n).map(|u| self.hopf.antipode.column(u).into_owned()).collect();
        let s_left: Vec<ComplexMatrix> = s_basis.iter().map(|x| alg.left_matrix(x)).collect();
        let mut left = ResidualAcc::default();
        let mut right = ResidualAcc::default();
        for a in 0..n {
            let d = &self.hopf.comult[a];
            for b in 0..n {
                let e_b = alg.basis(b);
                let expected = &e_b * eps[a];
                let rbt = alg.right_matrix(&e_b).transpose();
                let t = d * rbt;
                let mut lhs = Element::zeros(n);
                for u in 0..n {
                    for v in 0..n {
                        if t[(u, v)] != ZERO {
                            lhs += s_left[u].column(v) * t[(u, v)];
                        }
                    }
                }
                left.add(lhs.as_slice(), expected.as_slice());
                let t = &alg.left[b] * d;
                let mut lhs = Element::zeros(n);
                for u in 0..n {
                    for v in 0..n {
                        if t[(u, v)] != ZERO {
                            lhs += &alg.left[u] * &s_basis[v] * t[(u, v)];
                        }
                    }
                }
                right.add(lhs.as_slice(), expected.as_slice());
            }
        }
        r.residual(s, "antipode_left", left.value(), tol);
        r.residual(s, "antipode_right", right.value(), tol);

        let mut acc = ResidualAcc::default();
        for i in 0..n {
            let x = alg.star(&self.antipode(&alg.star_basis(i)));
            acc.add(self.antipode(&x).as_slice(), alg.basis(i).as_slice());
        }
        r.residual(s, "antipode_star_involution", acc.value(), tol);

        let mut acc = ResidualAcc::default();
        for i in 0..n {
            for j in 0..n {
                acc.add_scalar(self.counit(&alg.product(i, j)), eps[i] * eps[j]);
            }
            acc.add_scalar(self.counit(&alg.star_basis(i)), eps[i].conj());
        }
        r.residual(s, "counit_star_homomorphism", acc.value(), tol);

        let eps_s = self.hopf.antipode.transpose() * eps;
        r.residual(s, "counit_antipode", residual_vec(&eps_s, eps), tol);

        let st = &self.hopf.antipode;
        let lhs: Vec<_> = self.hopf.comult.iter().map(|d| st * d * st.transpose()).collect();
        let rhs: Vec<_> = (0..n)
            .map(|i| self.delta(&st.column(i).into_owned()).transpose())
            .collect();
        r.residual(s, "antipode_comult", residual_many(&lhs, &rhs), tol);
        r
    }

    pub fn cocommutativity_residual(&self) -> f64 {
        let flipped: Vec<_> = self.hopf.comult.iter().map(|d| d.transpose()).collect();
        residual_many(&self.hopf.comult, &flipped)
    }

    /// Inverse of the antipode.
    pub fn antipode_inverse(&self) -> Result<ComplexMatrix> {
        crate::tensor::inverse(&self.hopf.antipode)
    }
}

/// Writes the flattened tensor `t` (index u·n + v) into column `col`.
pub fn set_flat_column(out: &mut ComplexMatrix, col: usize, t: &Tensor2) {
    let n = t.ncols();
    for u in 0..t.nrows() {
        for v in 0..n {
            out[(u * n + v, col)] = t[(u, v)];
        }
    }
}

/// Inverse of `set_flat_column`.
pub fn unflatten(v: &ComplexVector, rows: usize, cols: usize) -> Tensor2 {
    ComplexMatrix::from_fn(rows, cols, |u, w| v[u * cols + w])
}

pub fn flatten(t: &Tensor2) -> ComplexVector {
    let cols = t.ncols();
    ComplexVector::from_fn(t.nrows() * cols, |k, _| t[(k / cols, k % cols)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn unit_law_and_involution() {
        let q = builtins::kac_paljutkin();
        let alg = &q.algebra;
        let mut rng = crate::random::Rng::seeded(1);
        let a = crate::random::random_vector(&mut rng, 8);
        assert!(residual_vec(&alg.mul(&alg.unit, &a), &a) < 1e-14);
        assert!(residual_vec(&alg.mul(&a, &alg.unit), &a) < 1e-14);
        assert!(residual_vec(&alg.star(&alg.star(&a)), &a) < 1e-14);
    }

    #[test]
    fn group_like_comultiplication() {
        let q = builtins::group_algebra(&builtins::FiniteGroup::cyclic(2)).unwrap();
        let g = q.algebra.basis(1);
        let d = q.delta(&g);
        assert_eq!(d, &g * g.transpose());
    }

    #[test]
    fn matrix_algebra_axioms() {
        let m = Algebra::matrix_algebra(3);
        assert!(m.check(1e-12).passed());
        assert!(!m.is_commutative(1e-9));
        assert_eq!(m.center(1e-10).ncols(), 1);
    }

    #[test]
    fn t_maps_flatten_consistently() {
        let q = builtins::kac_paljutkin();
        let t1 = q.t1_matrix();
        let n = q.dim();
        // column (a,b) of T₁ equals Δ(e_a)(e_b⊗1)
        let a = 5;
        let b = 6;
        let t = q.algebra.right_matrix(&q.algebra.basis(b)) * &q.hopf.comult[a];
        let col = t1.column(a * n + b).into_owned();
        assert_eq!(unflatten(&col, n, n), t);
        assert_eq!(flatten(&t), col);
    }
}
