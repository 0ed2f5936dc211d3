//! Block decomposition of a finite-dimensional C*-algebra: minimal central
//! idempotents, matrix units and the irreducible representations they give.

use crate::algebra::{Algebra, Element, Functional};
use crate::error::{AqgError, Result};
use crate::haar::gram;
use crate::random::{random_vector, Rng};
use crate::tensor::{
    hermitian_eigen, inverse, pair, re, zeros, ComplexMatrix, ComplexVector, C64,
};

/// One matrix block M_d of the algebra.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub dim: usize,
    /// Minimal central idempotent of the block.
    pub central: Element,
    /// Matrix units e_jk, indexed [j][k].
    pub units: Vec<Vec<Element>>,
    /// π(e_i) for each basis element.
    pub images: Vec<ComplexMatrix>,
}

impl Irrep {
    pub fn image(&self, a: &Element) -> ComplexMatrix {
        let mut out = zeros(self.dim, self.dim);
        for (i, m) in self.images.iter().enumerate() {
            if a[i] != crate::tensor::ZERO {
                out += m * a[i];
            }
        }
        out
    }
}

/// Frame in which left multiplications are Hermitian-compatible: with
/// CᴴC = G, the matrix C L_x C⁻¹ is the operator of x on the GNS space of ω.
struct Frame {
    c: ComplexMatrix,
    c_inv: ComplexMatrix,
}

impl Frame {
    fn new(alg: &Algebra, omega: &Functional) -> Result<Self> {
        let g = gram(alg, omega);
        let g = (&g + g.adjoint()) * re(0.5);
        let chol = g
            .cholesky()
            .ok_or_else(|| AqgError::NoHaar("functional is not positive definite".into()))?;
        let c = chol.l().adjoint();
        let c_inv = inverse(&c)?;
        Ok(Frame { c, c_inv })
    }

    fn op(&self, alg: &Algebra, x: &Element) -> ComplexMatrix {
        &self.c * alg.left_matrix(x) * &self.c_inv
    }
}

/// Groups ascending eigenvalues into clusters separated by more than `gap`.
fn clusters(vals: &[f64], gap: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in vals.iter().enumerate() {
        match out.last_mut() {
            Some(last) if (v - vals[*last.last().unwrap()]).abs() <= gap => last.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

fn spectral_projections(h: &ComplexMatrix) -> Vec<ComplexMatrix> {
    let (vals, vecs) = hermitian_eigen(h);
    let scale = vals.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let gap = 1e-7 * scale;
    clusters(&vals, gap)
        .into_iter()
        .map(|idx| {
            let mut q = zeros(h.nrows(), idx.len());
            for (j, &i) in idx.iter().enumerate() {
                q.set_column(j, &vecs.column(i));
            }
            q
        })
        .collect()
}

fn random_self_adjoint(alg: &Algebra, rng: &mut Rng) -> Element {
    let z = random_vector(rng, alg.n);
    &z + alg.star(&z)
}

/// Decomposes `alg` into matrix blocks, using the faithful positive
/// functional `omega` for normalizations. Randomized choices are seeded and
/// retried until the spectral clustering is consistent.
pub fn decompose(alg: &Algebra, omega: &Functional, seed: u64) -> Result<Vec<Irrep>> {
    let frame = Frame::new(alg, omega)?;
    let center = alg.center(1e-10);
    let m = center.ncols();
    let mut rng = Rng::seeded(seed);
    for _attempt in 0..20 {
        let z = &center * random_vector(&mut rng, m);
        let h = &z + alg.star(&z);
        let projs = spectral_projections(&frame.op(alg, &h));
        if projs.len() != m {
            continue;
        }
        let mut out = Vec::with_capacity(m);
        let mut ok = true;
        for q in projs {
            let mult = q.ncols();
            let d = (mult as f64).sqrt().round() as usize;
            if d * d != mult {
                ok = false;
                break;
            }
            let p = &frame.c_inv * (&q * (q.adjoint() * (&frame.c * &alg.unit)));
            match block_units(alg, omega, &frame, &q, &p, d, &mut rng) {
                Some(units) => out.push(irrep_from_units(alg, omega, p, units)),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.sort_by_key(|b| b.dim);
            return Ok(out);
        }
    }
    Err(AqgError::Singular("block decomposition did not stabilize".into()))
}

/// Matrix units of the block with central projection `p`, whose range in the
/// frame is spanned by the orthonormal columns of `q`.
fn block_units(
    alg: &Algebra,
    omega: &Functional,
    frame: &Frame,
    q: &ComplexMatrix,
    p: &Element,
    d: usize,
    rng: &mut Rng,
) -> Option<Vec<Vec<Element>>> {
    if d == 1 {
        return Some(vec![vec![p.clone()]]);
    }
    for _ in 0..10 {
        let x = random_self_adjoint(alg, rng);
        let k = alg.mul(p, &alg.mul(&x, p));
        let hk = q.adjoint() * frame.op(alg, &k) * q;
        let projs = spectral_projections(&hk);
        if projs.len() != d || projs.iter().any(|v| v.ncols() != d) {
            continue;
        }
        let minimal: Vec<Element> = projs
            .iter()
            .map(|v| {
                let bv = q * v;
                &frame.c_inv * (&bv * (bv.adjoint() * (&frame.c * p)))
            })
            .collect();
        let e11 = minimal[0].clone();
        let w11 = pair(omega, &e11);
        let mut row = vec![e11.clone()];
        let mut good = true;
        for ej in minimal.iter().skip(1) {
            let y = random_vector(rng, alg.n);
            let x = alg.mul(&e11, &alg.mul(&y, ej));
            let norm = pair(omega, &alg.mul(&x, &alg.star(&x))) / w11;
            if norm.re <= 1e-12 {
                good = false;
                break;
            }
            row.push(x / C64::new(norm.re.sqrt(), 0.0));
        }
        if !good {
            continue;
        }
        let col: Vec<Element> = row.iter().map(|u| alg.star(u)).collect();
        let units = (0..d)
            .map(|j| (0..d).map(|k| alg.mul(&col[j], &row[k])).collect())
            .collect();
        return Some(units);
    }
    None
}

fn irrep_from_units(alg: &Algebra, omega: &Functional, p: Element, units: Vec<Vec<Element>>) -> Irrep {
    let d = units.len();
    let w11 = pair(omega, &units[0][0]);
    // e_1j a e_k1 = π(a)_jk e_11
    let images = (0..alg.n)
        .map(|i| {
            let mut m = zeros(d, d);
            for j in 0..d {
                let left = alg.mul(&units[0][j], &alg.basis(i));
                for k in 0..d {
                    m[(j, k)] = pair(omega, &alg.mul(&left, &units[k][0])) / w11;
                }
            }
            m
        })
        .collect();
    Irrep {
        dim: d,
        central: p,
        units,
        images,
    }
}

/// Dimensions of the matrix blocks, ascending.
pub fn block_dims(blocks: &[Irrep]) -> Vec<usize> {
    let mut dims: Vec<usize> = blocks.iter().map(|b| b.dim).collect();
    dims.sort();
    dims
}

/// Dimension of the space of intertwiners T with T π₁(e_i) = π₂(e_i) T.
pub fn intertwiner_dimension(p1: &[ComplexMatrix], p2: &[ComplexMatrix]) -> usize {
    let d1 = p1[0].nrows();
    let d2 = p2[0].nrows();
    let mut m = zeros(p1.len() * d2 * d1, d2 * d1);
    // vec(T π₁ − π₂ T) in column-major vec, T is d2×d1
    for (i, (a, b)) in p1.iter().zip(p2).enumerate() {
        let lhs = crate::tensor::kron(&a.transpose(), &crate::tensor::identity(d2))
            - crate::tensor::kron(&crate::tensor::identity(d1), b);
        m.rows_mut(i * d2 * d1, d2 * d1).copy_from(&lhs);
    }
    crate::tensor::null_space(&m, 1e-9).ncols()
}

/// Column vector of all matrix units of all blocks, in block order.
pub fn matrix_unit_basis(blocks: &[Irrep], n: usize) -> ComplexMatrix {
    let mut cols: Vec<ComplexVector> = Vec::new();
    for b in blocks {
        for row in &b.units {
            for u in row {
                cols.push(u.clone());
            }
        }
    }
    crate::tensor::columns(&cols, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::by_name;
    use crate::haar::compute_haar;
    use crate::tensor::{residual, residual_vec, identity};

    fn check_irreps(alg: &Algebra, blocks: &[Irrep]) {
        let mut total = ComplexVector::zeros(alg.n);
        for b in blocks {
            total += &b.central;
            for i in 0..alg.n {
                let img = &b.images[i];
                let star_img = b.image(&alg.star_basis(i));
                assert!(residual(&star_img, &img.adjoint()).unwrap() < 1e-9);
                for j in 0..alg.n {
                    let lhs = b.image(&alg.product(i, j));
                    let rhs = img * &b.images[j];
                    assert!(residual(&lhs, &rhs).unwrap() < 1e-9);
                }
            }
            assert!(residual(&b.image(&alg.unit), &identity(b.dim)).unwrap() < 1e-9);
            for j in 0..b.dim {
                for k in 0..b.dim {
                    let e = b.image(&b.units[j][k]);
                    let mut expected = zeros(b.dim, b.dim);
                    expected[(j, k)] = crate::tensor::ONE;
                    assert!(residual(&e, &expected).unwrap() < 1e-9);
                }
            }
        }
        assert!(residual_vec(&total, &alg.unit) < 1e-9);
        let dims_sq: usize = blocks.iter().map(|b| b.dim * b.dim).sum();
        assert_eq!(dims_sq, alg.n);
    }

    #[test]
    fn kac_paljutkin_blocks() {
        let q = by_name("kac-paljutkin").unwrap();
        let phi = compute_haar(&q, 1e-9).unwrap();
        let blocks = decompose(&q.algebra, &phi, 1).unwrap();
        assert_eq!(block_dims(&blocks), vec![1, 1, 1, 1, 2]);
        check_irreps(&q.algebra, &blocks);
    }

    #[test]
    fn s3_group_algebra_blocks() {
        let q = by_name("s3-group").unwrap();
        let blocks = decompose(&q.algebra, &q.algebra.regular_trace(), 7).unwrap();
        assert_eq!(block_dims(&blocks), vec![1, 1, 2]);
        check_irreps(&q.algebra, &blocks);
        for a in 0..blocks.len() {
            for b in 0..blocks.len() {
                let dim = intertwiner_dimension(&blocks[a].images, &blocks[b].images);
                assert_eq!(dim, usize::from(a == b));
            }
        }
    }

    #[test]
    fn matrix_algebra_is_one_block() {
        let m3 = Algebra::matrix_algebra(3);
        let blocks = decompose(&m3, &m3.regular_trace(), 3).unwrap();
        assert_eq!(block_dims(&blocks), vec![3]);
        check_irreps(&m3, &blocks);
    }

    #[test]
    fn commutative_blocks_are_characters() {
        let q = by_name("z4").unwrap();
        let blocks = decompose(&q.algebra, &q.algebra.regular_trace(), 2).unwrap();
        assert_eq!(block_dims(&blocks), vec![1, 1, 1, 1]);
        check_irreps(&q.algebra, &blocks);
    }
}
