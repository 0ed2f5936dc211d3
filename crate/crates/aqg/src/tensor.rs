//! Dense complex matrices, tensor legs and the small set of decompositions
//! the rest of the crate needs.
//!
//! Tensor factors are laid out with the leftmost factor slowest: the basis
//! vector e_i ⊗ e_j of C^m ⊗ C^n sits at index i·n + j.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{AqgError, Result};

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn zeros(r: usize, c: usize) -> ComplexMatrix {
    ComplexMatrix::zeros(r, c)
}

pub fn basis_vector(n: usize, i: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(n);
    v[i] = ONE;
    v
}

/// Kronecker product X ⊗ Y.
pub fn kron(x: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
    let (xr, xc) = x.shape();
    let (yr, yc) = y.shape();
    let mut out = zeros(xr * yr, xc * yc);
    for j in 0..xc {
        for i in 0..xr {
            let a = x[(i, j)];
            if a == ZERO {
                continue;
            }
            for q in 0..yc {
                for p in 0..yr {
                    out[(i * yr + p, j * yc + q)] = a * y[(p, q)];
                }
            }
        }
    }
    out
}

pub fn kron_vec(x: &ComplexVector, y: &ComplexVector) -> ComplexVector {
    let mut out = ComplexVector::zeros(x.len() * y.len());
    for i in 0..x.len() {
        for j in 0..y.len() {
            out[i * y.len() + j] = x[i] * y[j];
        }
    }
    out
}

/// Ordered list of tensor-factor dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegSpace {
    pub factor_dims: Vec<usize>,
}

impl LegSpace {
    pub fn new(factor_dims: &[usize]) -> Result<Self> {
        if factor_dims.contains(&0) {
            return Err(AqgError::Shape("tensor factor of dimension 0".into()));
        }
        Ok(LegSpace {
            factor_dims: factor_dims.to_vec(),
        })
    }

    pub fn total(&self) -> usize {
        self.factor_dims.iter().product()
    }

    fn strides(&self) -> Vec<usize> {
        let k = self.factor_dims.len();
        let mut s = vec![1; k];
        for i in (0..k.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.factor_dims[i + 1];
        }
        s
    }
}

/// Places `x` on legs `legs` (1-based, as in X₁₃) and the identity elsewhere.
/// The first tensor factor of `x` goes to `legs.0`, the second to `legs.1`.
pub fn leg_embed(x: &ComplexMatrix, legs: (usize, usize), space: &LegSpace) -> Result<ComplexMatrix> {
    let k = space.factor_dims.len();
    let (a, b) = legs;
    if a == b || a == 0 || b == 0 || a > k || b > k {
        return Err(AqgError::Shape(format!("invalid legs ({a},{b}) for {k} factors")));
    }
    let (a, b) = (a - 1, b - 1);
    let da = space.factor_dims[a];
    let db = space.factor_dims[b];
    if x.nrows() != da * db || x.ncols() != da * db {
        return Err(AqgError::Shape(format!(
            "operator is {}x{}, legs need {}",
            x.nrows(),
            x.ncols(),
            da * db
        )));
    }
    let total = space.total();
    let strides = space.strides();
    let rest_dims: Vec<usize> = (0..k).filter(|&i| i != a && i != b).collect();
    let rest_total: usize = rest_dims.iter().map(|&i| space.factor_dims[i]).product();
    let mut out = zeros(total, total);
    let mut idx = vec![0usize; rest_dims.len()];
    for _ in 0..rest_total {
        let base: usize = rest_dims.iter().zip(&idx).map(|(&d, &v)| v * strides[d]).sum();
        for cj in 0..da * db {
            let (ca, cb) = (cj / db, cj % db);
            let col = base + ca * strides[a] + cb * strides[b];
            for ri in 0..da * db {
                let v = x[(ri, cj)];
                if v == ZERO {
                    continue;
                }
                let (ra, rb) = (ri / db, ri % db);
                out[(base + ra * strides[a] + rb * strides[b], col)] = v;
            }
        }
        for p in (0..idx.len()).rev() {
            idx[p] += 1;
            if idx[p] < space.factor_dims[rest_dims[p]] {
                break;
            }
            idx[p] = 0;
        }
    }
    Ok(out)
}

/// The flip v ⊗ w ↦ w ⊗ v from C^m ⊗ C^n to C^n ⊗ C^m.
pub fn flip(m: usize, n: usize) -> ComplexMatrix {
    let mut out = zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            out[(j * m + i, i * n + j)] = ONE;
        }
    }
    out
}

pub fn frobenius(x: &ComplexMatrix) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn residual_slices(x: &[C64], y: &[C64]) -> f64 {
    let mut d = 0.0;
    let mut nx = 0.0;
    let mut ny = 0.0;
    for (a, b) in x.iter().zip(y) {
        d += (a - b).norm_sqr();
        nx += a.norm_sqr();
        ny += b.norm_sqr();
    }
    d.sqrt() / 1f64.max(nx.sqrt()).max(ny.sqrt())
}

/// ‖X−Y‖_F / max(1, ‖X‖_F, ‖Y‖_F).
pub fn residual(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<f64> {
    if x.shape() != y.shape() {
        return Err(AqgError::Shape(format!(
            "residual of {:?} against {:?}",
            x.shape(),
            y.shape()
        )));
    }
    Ok(residual_slices(x.as_slice(), y.as_slice()))
}

/// Residual between two equally long lists of matrices, treated as one
/// stacked tensor.
pub fn residual_many(xs: &[ComplexMatrix], ys: &[ComplexMatrix]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let mut d = 0.0;
    let mut nx = 0.0;
    let mut ny = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        assert_eq!(x.shape(), y.shape());
        for (a, b) in x.iter().zip(y.iter()) {
            d += (a - b).norm_sqr();
            nx += a.norm_sqr();
            ny += b.norm_sqr();
        }
    }
    d.sqrt() / 1f64.max(nx.sqrt()).max(ny.sqrt())
}

pub fn residual_vec(x: &ComplexVector, y: &ComplexVector) -> f64 {
    assert_eq!(x.len(), y.len());
    residual_slices(x.as_slice(), y.as_slice())
}

/// Accumulates squared differences and norms for residuals evaluated piece by
/// piece, so that large operators never need to be materialized at once.
#[derive(Default, Clone, Copy, Debug)]
pub struct ResidualAcc {
    diff: f64,
    nx: f64,
    ny: f64,
}

impl ResidualAcc {
    pub fn add(&mut self, x: &[C64], y: &[C64]) {
        assert_eq!(x.len(), y.len());
        for (a, b) in x.iter().zip(y) {
            self.diff += (a - b).norm_sqr();
            self.nx += a.norm_sqr();
            self.ny += b.norm_sqr();
        }
    }

    pub fn add_mat(&mut self, x: &ComplexMatrix, y: &ComplexMatrix) {
        assert_eq!(x.shape(), y.shape());
        self.add(x.as_slice(), y.as_slice());
    }

    pub fn add_scalar(&mut self, x: C64, y: C64) {
        self.add(&[x], &[y]);
    }

    pub fn value(&self) -> f64 {
        self.diff.sqrt() / 1f64.max(self.nx.sqrt()).max(self.ny.sqrt())
    }
}

/// Matrix product that skips exact zeros of the right factor. Most operators
/// built from group-like data are permutation-like, so this pays off.
pub fn mul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(a.ncols(), b.nrows(), "matrix product shape mismatch");
    let m = a.nrows();
    let mut out = zeros(m, b.ncols());
    let ad = a.as_slice();
    for j in 0..b.ncols() {
        let col = &mut out.as_mut_slice()[j * m..(j + 1) * m];
        for k in 0..b.nrows() {
            let s = b[(k, j)];
            if s == ZERO {
                continue;
            }
            let acol = &ad[k * m..(k + 1) * m];
            for (o, v) in col.iter_mut().zip(acol) {
                *o += s * v;
            }
        }
    }
    out
}

/// X (I_n ⊗ Y) for Y a k×k matrix, without forming the Kronecker product.
pub fn mul_id_kron_right(x: &ComplexMatrix, n: usize, y: &ComplexMatrix) -> ComplexMatrix {
    let k = y.nrows();
    assert_eq!(x.ncols(), n * k);
    let mut out = zeros(x.nrows(), n * k);
    for blk in 0..n {
        let xs = x.columns(blk * k, k);
        let prod = xs * y;
        out.columns_mut(blk * k, k).copy_from(&prod);
    }
    out
}

/// (I_n ⊗ Y) X for Y a k×k matrix.
pub fn mul_id_kron_left(n: usize, y: &ComplexMatrix, x: &ComplexMatrix) -> ComplexMatrix {
    let k = y.nrows();
    assert_eq!(x.nrows(), n * k);
    let mut out = zeros(n * k, x.ncols());
    for blk in 0..n {
        let xs = x.rows(blk * k, k);
        let prod = y * xs;
        out.rows_mut(blk * k, k).copy_from(&prod);
    }
    out
}

pub fn trace(x: &ComplexMatrix) -> C64 {
    x.diagonal().iter().sum()
}

pub fn vec_of(x: &ComplexMatrix) -> ComplexVector {
    ComplexVector::from_column_slice(x.as_slice())
}

/// Stacks vectors as the columns of a matrix.
pub fn columns(vs: &[ComplexVector], len: usize) -> ComplexMatrix {
    let mut out = zeros(len, vs.len());
    for (j, v) in vs.iter().enumerate() {
        out.set_column(j, v);
    }
    out
}

pub fn singular_values(x: &ComplexMatrix) -> Vec<f64> {
    if x.nrows() == 0 || x.ncols() == 0 {
        return vec![];
    }
    let mut s: Vec<f64> = x.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// σ_min / σ_max, or 0 for an empty or zero matrix.
pub fn inverse_condition(x: &ComplexMatrix) -> f64 {
    let s = singular_values(x);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if hi > 0.0 => {
            if x.nrows() < x.ncols() {
                0.0
            } else {
                lo / hi
            }
        }
        _ => 0.0,
    }
}

/// Numerical rank with the relative threshold σ < rel·σ_max treated as zero.
pub fn rank(x: &ComplexMatrix, rel: f64) -> usize {
    let s = singular_values(x);
    match s.first() {
        Some(&hi) if hi > 0.0 => s.iter().filter(|&&v| v >= rel * hi).count(),
        _ => 0,
    }
}

/// Orthonormal basis of the null space, with σ < rel·σ_max counted as zero.
pub fn null_space(x: &ComplexMatrix, rel: f64) -> ComplexMatrix {
    let cols = x.ncols();
    let mut m = x.clone();
    if m.nrows() < cols {
        let r = m.nrows();
        m = m.insert_rows(r, cols - r, ZERO);
    }
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested V");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let null: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| smax == 0.0 || svd.singular_values[i] < rel * smax)
        .collect();
    let mut out = zeros(cols, null.len());
    for (j, &i) in null.iter().enumerate() {
        let row = vt.row(i);
        for k in 0..cols {
            out[(k, j)] = row[k].conj();
        }
    }
    out
}

/// Orthonormal basis of the column space (rank decided at rel·σ_max).
pub fn column_space(x: &ComplexMatrix, rel: f64) -> ComplexMatrix {
    if x.ncols() == 0 {
        return zeros(x.nrows(), 0);
    }
    let svd = x.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| smax > 0.0 && svd.singular_values[i] >= rel * smax)
        .collect();
    let mut out = zeros(x.nrows(), keep.len());
    for (j, &i) in keep.iter().enumerate() {
        out.set_column(j, &u.column(i));
    }
    out
}

/// Outcome of comparing the spans of two sets of column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanComparison {
    pub rank_a: usize,
    pub rank_b: usize,
    pub rank_joint: usize,
}

impl SpanComparison {
    pub fn equal(&self) -> bool {
        self.rank_a == self.rank_b && self.rank_a == self.rank_joint
    }
}

pub fn compare_spans(a: &ComplexMatrix, b: &ComplexMatrix, rel: f64) -> SpanComparison {
    assert_eq!(a.nrows(), b.nrows());
    let qa = column_space(a, rel);
    let qb = column_space(b, rel);
    let joint = ComplexMatrix::from_fn(a.nrows(), qa.ncols() + qb.ncols(), |i, j| {
        if j < qa.ncols() {
            qa[(i, j)]
        } else {
            qb[(i, j - qa.ncols())]
        }
    });
    SpanComparison {
        rank_a: qa.ncols(),
        rank_b: qb.ncols(),
        rank_joint: rank(&joint, rel),
    }
}

pub fn inverse(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    if x.nrows() != x.ncols() {
        return Err(AqgError::Shape("inverse of a non-square matrix".into()));
    }
    let inv = x
        .clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| AqgError::Singular("matrix is not invertible".into()))?;
    if inv.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(AqgError::Singular("matrix is numerically singular".into()));
    }
    Ok(inv)
}

/// Moore–Penrose pseudo-inverse with relative cutoff.
pub fn pinv(x: &ComplexMatrix, rel: f64) -> ComplexMatrix {
    let svd = x.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    svd.pseudo_inverse(rel * smax.max(f64::MIN_POSITIVE))
        .expect("SVD was computed with U and V")
}

/// Eigen-decomposition of a Hermitian matrix: (ascending eigenvalues, eigenvectors).
pub fn hermitian_eigen(x: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let h = (x + x.adjoint()) * re(0.5);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = zeros(x.nrows(), x.ncols());
    for (j, &i) in order.iter().enumerate() {
        vecs.set_column(j, &eig.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// f(X) for Hermitian X through its eigen-decomposition.
pub fn hermitian_function(x: &ComplexMatrix, f: impl Fn(f64) -> C64) -> ComplexMatrix {
    let (vals, vecs) = hermitian_eigen(x);
    let d = ComplexMatrix::from_diagonal(&ComplexVector::from_iterator(
        vals.len(),
        vals.iter().map(|&v| f(v)),
    ));
    &vecs * d * vecs.adjoint()
}

/// Largest singular value.
pub fn operator_norm(x: &ComplexMatrix) -> f64 {
    singular_values(x).first().copied().unwrap_or(0.0)
}

pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    let n = u.nrows();
    let uu = u.adjoint() * u;
    residual(&uu, &identity(n)).unwrap_or(f64::INFINITY)
}

pub fn conj(x: &ComplexMatrix) -> ComplexMatrix {
    x.map(|v| v.conj())
}

pub fn conj_vec(x: &ComplexVector) -> ComplexVector {
    x.map(|v| v.conj())
}

/// Non-conjugating bilinear pairing Σ ω_k a_k.
pub fn pair(omega: &ComplexVector, a: &ComplexVector) -> C64 {
    omega.iter().zip(a.iter()).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_matrix, random_vector, Rng};

    #[test]
    fn kron_of_identities_is_identity() {
        assert_eq!(kron(&identity(2), &identity(3)), identity(6));
    }

    #[test]
    fn kron_diagonal() {
        let d = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![re(1.0), re(2.0)]));
        let expected = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![
            re(1.0),
            re(1.0),
            re(2.0),
            re(2.0),
        ]));
        assert_eq!(kron(&d, &identity(2)), expected);
    }

    #[test]
    fn kron_acts_on_product_vectors() {
        let mut rng = Rng::seeded(1);
        let x = random_matrix(&mut rng, 2, 2);
        let y = random_matrix(&mut rng, 2, 2);
        let v = random_vector(&mut rng, 2);
        let w = random_vector(&mut rng, 2);
        let lhs = kron(&x, &y) * kron_vec(&v, &w);
        let rhs = kron_vec(&(&x * &v), &(&y * &w));
        assert!(residual_vec(&lhs, &rhs) < 1e-14);
    }

    #[test]
    fn kron_is_associative() {
        let mut rng = Rng::seeded(2);
        let a = random_matrix(&mut rng, 2, 3);
        let b = random_matrix(&mut rng, 3, 2);
        let d = random_matrix(&mut rng, 2, 2);
        let r = residual(&kron(&kron(&a, &b), &d), &kron(&a, &kron(&b, &d))).unwrap();
        assert!(r < 1e-12);
    }

    #[test]
    fn adjacent_leg_embeddings() {
        let mut rng = Rng::seeded(3);
        let x = random_matrix(&mut rng, 6, 6);
        let space = LegSpace::new(&[2, 3, 4]).unwrap();
        let e12 = leg_embed(&x, (1, 2), &space).unwrap();
        assert!(residual(&e12, &kron(&x, &identity(4))).unwrap() < 1e-15);
        let y = random_matrix(&mut rng, 12, 12);
        let e23 = leg_embed(&y, (2, 3), &space).unwrap();
        assert!(residual(&e23, &kron(&identity(2), &y)).unwrap() < 1e-15);
    }

    #[test]
    fn leg_13_matches_permuted_conjugation() {
        let mut rng = Rng::seeded(4);
        let x = random_matrix(&mut rng, 4, 4);
        let space = LegSpace::new(&[2, 2, 2]).unwrap();
        let e13 = leg_embed(&x, (1, 3), &space).unwrap();
        // swap legs 2 and 3, act on (1,2), swap back
        let swap23 = kron(&identity(2), &flip(2, 2));
        let oracle = &swap23 * kron(&x, &identity(2)) * &swap23;
        assert!(residual(&e13, &oracle).unwrap() < 1e-15);
    }

    #[test]
    fn reversed_legs_transpose_factors() {
        let mut rng = Rng::seeded(5);
        let x = random_matrix(&mut rng, 6, 6);
        let space = LegSpace::new(&[2, 3]).unwrap();
        let e21 = leg_embed(&x, (2, 1), &space).unwrap();
        let f = flip(2, 3);
        let oracle = f.transpose() * &x * &f;
        assert!(residual(&e21, &oracle).unwrap() < 1e-15);
    }

    #[test]
    fn leg_composition_agrees_with_direct_construction() {
        let mut rng = Rng::seeded(6);
        let x = random_matrix(&mut rng, 4, 4);
        let y = random_matrix(&mut rng, 4, 4);
        let space = LegSpace::new(&[2, 2, 2]).unwrap();
        let lhs = leg_embed(&x, (1, 2), &space).unwrap() * leg_embed(&y, (2, 3), &space).unwrap();
        let rhs = kron(&x, &identity(2)) * kron(&identity(2), &y);
        assert!(residual(&lhs, &rhs).unwrap() < 1e-12);
    }

    #[test]
    fn leg_embed_rejects_bad_input() {
        let space = LegSpace::new(&[2, 2, 2]).unwrap();
        assert!(leg_embed(&identity(3), (1, 2), &space).is_err());
        assert!(leg_embed(&identity(4), (2, 2), &space).is_err());
        assert!(leg_embed(&identity(4), (1, 4), &space).is_err());
        assert!(LegSpace::new(&[2, 0]).is_err());
    }

    #[test]
    fn flip_examples() {
        assert_eq!(flip(1, 4), identity(4));
        let v = kron_vec(&basis_vector(2, 0), &basis_vector(2, 1));
        let w = kron_vec(&basis_vector(2, 1), &basis_vector(2, 0));
        assert_eq!(flip(2, 2) * v, w);
        assert_eq!(flip(3, 2) * flip(2, 3), identity(6));
        assert!(unitarity_residual(&flip(3, 5)) < 1e-12);
    }

    #[test]
    fn residual_examples() {
        let mut rng = Rng::seeded(7);
        let x = random_matrix(&mut rng, 3, 3);
        assert_eq!(residual(&x, &x).unwrap(), 0.0);
        assert_eq!(residual(&zeros(2, 2), &zeros(2, 2)).unwrap(), 0.0);
        // ‖I−2I‖ = √2, max norm = 2√2
        let r = residual(&identity(2), &(identity(2) * re(2.0))).unwrap();
        assert!((r - 0.5).abs() < 1e-15);
        assert!(residual(&identity(2), &identity(3)).is_err());
    }

    #[test]
    fn skipping_product_matches_dense() {
        let mut rng = Rng::seeded(8);
        let a = random_matrix(&mut rng, 5, 4);
        let mut b = random_matrix(&mut rng, 4, 3);
        b[(1, 1)] = ZERO;
        assert!(residual(&mul(&a, &b), &(&a * &b)).unwrap() < 1e-14);
    }

    #[test]
    fn identity_kron_products() {
        let mut rng = Rng::seeded(9);
        let x = random_matrix(&mut rng, 6, 6);
        let y = random_matrix(&mut rng, 3, 3);
        let full = kron(&identity(2), &y);
        assert!(residual(&mul_id_kron_right(&x, 2, &y), &(&x * &full)).unwrap() < 1e-14);
        assert!(residual(&mul_id_kron_left(2, &y, &x), &(&full * &x)).unwrap() < 1e-14);
    }

    #[test]
    fn null_space_of_wide_matrix() {
        let x = ComplexMatrix::from_row_slice(1, 3, &[re(1.0), re(1.0), re(0.0)]);
        let ns = null_space(&x, 1e-10);
        assert_eq!(ns.ncols(), 2);
        assert!((&x * &ns).norm() < 1e-14);
    }

    #[test]
    fn span_comparison() {
        let a = ComplexMatrix::from_row_slice(3, 2, &[ONE, ZERO, ZERO, ONE, ZERO, ZERO]);
        let b = ComplexMatrix::from_row_slice(3, 2, &[ONE, ONE, ONE, -ONE, ZERO, ZERO]);
        assert!(compare_spans(&a, &b, 1e-10).equal());
        let c = ComplexMatrix::from_row_slice(3, 1, &[ZERO, ZERO, ONE]);
        assert!(!compare_spans(&a, &c, 1e-10).equal());
    }
}
