//! Builtin quantum groups: group algebras, function algebras, the
//! Kac–Paljutkin algebra and tensor products.

use crate::algebra::{Algebra, HopfAlgebra, HopfStructure};
use crate::error::{AqgError, Result};
use crate::tensor::{c, identity, kron, kron_vec, re, zeros, ComplexMatrix, ComplexVector, ONE};

/// A finite group given by its multiplication table on {0..order}.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub table: Vec<Vec<usize>>,
    pub labels: Vec<String>,
    pub identity: usize,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(AqgError::NotAGroup("table must be square and non-empty".into()));
        }
        if labels.len() != n {
            return Err(AqgError::NotAGroup("one label per element".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(AqgError::NotAGroup("entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| AqgError::NotAGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(AqgError::NotAGroup("not associative".into()));
                    }
                }
            }
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(AqgError::NotAGroup(format!("element {a} has no inverse")));
            }
        }
        Ok(FiniteGroup {
            table,
            labels,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == self.identity)
            .expect("validated group")
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        FiniteGroup::new(table, labels).expect("cyclic group")
    }

    /// S₃ as permutations of {0,1,2}; composition (στ)(x) = σ(τ(x)).
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let labels = ["e", "(01)", "(12)", "(02)", "(012)", "(021)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| find([s[t[0]], s[t[1]], s[t[2]]]))
                    .collect()
            })
            .collect();
        FiniteGroup::new(table, labels).expect("S3")
    }

    /// Direct product, element (a,b) at index a·|H| + b.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order(), h.order());
        let mut table = vec![vec![0; m * n]; m * n];
        let mut labels = Vec::new();
        for a in 0..m {
            for b in 0..n {
                labels.push(format!("({},{})", g.labels[a], h.labels[b]));
                for a2 in 0..m {
                    for b2 in 0..n {
                        table[a * n + b][a2 * n + b2] = g.mul(a, a2) * n + h.mul(b, b2);
                    }
                }
            }
        }
        FiniteGroup::new(table, labels).expect("product group")
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// C[G]: Δ(g) = g⊗g, ε(g) = 1, S(g) = g⁻¹, g* = g⁻¹.
pub fn group_algebra(g: &FiniteGroup) -> Result<HopfAlgebra> {
    let n = g.order();
    let mut left = vec![zeros(n, n); n];
    let mut star = zeros(n, n);
    let mut antipode = zeros(n, n);
    let mut comult = vec![zeros(n, n); n];
    for a in 0..n {
        for b in 0..n {
            left[a][(g.mul(a, b), b)] = ONE;
        }
        star[(g.inv(a), a)] = ONE;
        antipode[(g.inv(a), a)] = ONE;
        comult[a][(a, a)] = ONE;
    }
    let mut unit = ComplexVector::zeros(n);
    unit[g.identity] = ONE;
    let algebra = Algebra::new(left, star, unit)?;
    let hopf = HopfStructure {
        comult,
        counit: ComplexVector::from_element(n, ONE),
        antipode,
    };
    HopfAlgebra::new("group algebra", g.labels.clone(), algebra, hopf)
}

/// C(G) on the indicator basis δ_g.
pub fn function_algebra(g: &FiniteGroup) -> Result<HopfAlgebra> {
    let n = g.order();
    let mut left = vec![zeros(n, n); n];
    let mut antipode = zeros(n, n);
    let mut comult = vec![zeros(n, n); n];
    for a in 0..n {
        left[a][(a, a)] = ONE;
        antipode[(g.inv(a), a)] = ONE;
        for h in 0..n {
            for k in 0..n {
                if g.mul(h, k) == a {
                    comult[a][(h, k)] = ONE;
                }
            }
        }
    }
    let mut counit = ComplexVector::zeros(n);
    counit[g.identity] = ONE;
    let labels = g.labels.iter().map(|l| format!("d[{l}]")).collect();
    let algebra = Algebra::new(left, identity(n), ComplexVector::from_element(n, ONE))?;
    HopfAlgebra::new(
        "function algebra",
        labels,
        algebra,
        HopfStructure {
            comult,
            counit,
            antipode,
        },
    )
}

/// The 8-dimensional Kac–Paljutkin quantum group on C⁴ ⊕ M₂, basis
/// e1..e4 (minimal projections of C⁴) followed by matrix units a11, a12, a21, a22.
pub fn kac_paljutkin() -> HopfAlgebra {
    let n = 8;
    let e = |k: usize| k - 1;
    let a = |i: usize, j: usize| 4 + 2 * (i - 1) + (j - 1);
    let mut left = vec![zeros(n, n); n];
    for k in 1..=4 {
        left[e(k)][(e(k), e(k))] = ONE;
    }
    for i in 1..=2 {
        for j in 1..=2 {
            for l in 1..=2 {
                left[a(i, j)][(a(i, l), a(j, l))] = ONE;
            }
        }
    }
    let mut star = zeros(n, n);
    for k in 1..=4 {
        star[(e(k), e(k))] = ONE;
    }
    for i in 1..=2 {
        for j in 1..=2 {
            star[(a(j, i), a(i, j))] = ONE;
        }
    }
    let mut unit = ComplexVector::zeros(n);
    for k in 1..=4 {
        unit[e(k)] = ONE;
    }
    unit[a(1, 1)] = ONE;
    unit[a(2, 2)] = ONE;

    let half = re(0.5);
    let ih = c(0.0, 0.5);
    let i1 = c(0.0, 1.0);
    let mut comult = vec![zeros(n, n); n];
    {
        let d = &mut comult[e(1)];
        for k in 1..=4 {
            d[(e(k), e(k))] += ONE;
        }
        for i in 1..=2 {
            for j in 1..=2 {
                d[(a(i, j), a(i, j))] += half;
            }
        }
    }
    {
        let d = &mut comult[e(2)];
        for (x, y) in [(1, 2), (2, 1), (3, 4), (4, 3)] {
            d[(e(x), e(y))] += ONE;
        }
        d[(a(1, 1), a(2, 2))] += half;
        d[(a(2, 2), a(1, 1))] += half;
        d[(a(2, 1), a(1, 2))] += ih;
        d[(a(1, 2), a(2, 1))] -= ih;
    }
    {
        let d = &mut comult[e(3)];
        for (x, y) in [(1, 3), (3, 1), (2, 4), (4, 2)] {
            d[(e(x), e(y))] += ONE;
        }
        d[(a(1, 1), a(2, 2))] += half;
        d[(a(2, 2), a(1, 1))] += half;
        d[(a(2, 1), a(1, 2))] -= ih;
        d[(a(1, 2), a(2, 1))] += ih;
    }
    {
        let d = &mut comult[e(4)];
        for (x, y) in [(1, 4), (4, 1), (2, 3), (3, 2)] {
            d[(e(x), e(y))] += ONE;
        }
        d[(a(1, 1), a(1, 1))] += half;
        d[(a(2, 2), a(2, 2))] += half;
        d[(a(1, 2), a(1, 2))] -= half;
        d[(a(2, 1), a(2, 1))] -= half;
    }
    {
        let d = &mut comult[a(1, 1)];
        for (k, m) in [(1, a(1, 1)), (2, a(2, 2)), (3, a(2, 2)), (4, a(1, 1))] {
            d[(e(k), m)] += ONE;
            d[(m, e(k))] += ONE;
        }
    }
    {
        let d = &mut comult[a(2, 2)];
        for (k, m) in [(1, a(2, 2)), (2, a(1, 1)), (3, a(1, 1)), (4, a(2, 2))] {
            d[(e(k), m)] += ONE;
            d[(m, e(k))] += ONE;
        }
    }
    {
        let d = &mut comult[a(1, 2)];
        d[(e(1), a(1, 2))] += ONE;
        d[(a(1, 2), e(1))] += ONE;
        d[(e(2), a(2, 1))] += i1;
        d[(a(2, 1), e(2))] -= i1;
        d[(e(3), a(2, 1))] -= i1;
        d[(a(2, 1), e(3))] += i1;
        d[(e(4), a(1, 2))] -= ONE;
        d[(a(1, 2), e(4))] -= ONE;
    }
    {
        let d = &mut comult[a(2, 1)];
        d[(e(1), a(2, 1))] += ONE;
        d[(a(2, 1), e(1))] += ONE;
        d[(e(2), a(1, 2))] -= i1;
        d[(a(1, 2), e(2))] += i1;
        d[(e(3), a(1, 2))] += i1;
        d[(a(1, 2), e(3))] -= i1;
        d[(e(4), a(2, 1))] -= ONE;
        d[(a(2, 1), e(4))] -= ONE;
    }
    let mut counit = ComplexVector::zeros(n);
    counit[e(1)] = ONE;
    let mut antipode = zeros(n, n);
    for k in 1..=4 {
        antipode[(e(k), e(k))] = ONE;
    }
    for i in 1..=2 {
        for j in 1..=2 {
            antipode[(a(j, i), a(i, j))] = ONE;
        }
    }
    let labels = ["e1", "e2", "e3", "e4", "a11", "a12", "a21", "a22"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let algebra = Algebra::new(left, star, unit).expect("shapes");
    HopfAlgebra::new(
        "Kac-Paljutkin",
        labels,
        algebra,
        HopfStructure {
            comult,
            counit,
            antipode,
        },
    )
    .expect("shapes")
}

/// The one-dimensional quantum group C.
pub fn trivial() -> HopfAlgebra {
    let one = ComplexMatrix::from_element(1, 1, ONE);
    let algebra = Algebra::new(vec![one.clone()], one.clone(), ComplexVector::from_element(1, ONE))
        .expect("shapes");
    HopfAlgebra::new(
        "trivial",
        vec!["1".into()],
        algebra,
        HopfStructure {
            comult: vec![one.clone()],
            counit: ComplexVector::from_element(1, ONE),
            antipode: one,
        },
    )
    .expect("shapes")
}

/// Q₁⊗Q₂ with basis e_i⊗f_j at index i·n₂ + j and Δ = (ι⊗χ⊗ι)(Δ₁⊗Δ₂).
pub fn tensor_product(q1: &HopfAlgebra, q2: &HopfAlgebra) -> HopfAlgebra {
    let (n1, n2) = (q1.dim(), q2.dim());
    let n = n1 * n2;
    let mut left = Vec::with_capacity(n);
    let mut comult = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n1 {
        for j in 0..n2 {
            left.push(kron(&q1.algebra.left[i], &q2.algebra.left[j]));
            labels.push(format!("{}*{}", q1.labels[i], q2.labels[j]));
            let d1 = &q1.hopf.comult[i];
            let d2 = &q2.hopf.comult[j];
            let mut d = zeros(n, n);
            for a in 0..n1 {
                for b in 0..n1 {
                    let x = d1[(a, b)];
                    if x == crate::tensor::ZERO {
                        continue;
                    }
                    for cc in 0..n2 {
                        for dd in 0..n2 {
                            d[(a * n2 + cc, b * n2 + dd)] += x * d2[(cc, dd)];
                        }
                    }
                }
            }
            comult.push(d);
        }
    }
    let algebra = Algebra::new(
        left,
        kron(&q1.algebra.star, &q2.algebra.star),
        kron_vec(&q1.algebra.unit, &q2.algebra.unit),
    )
    .expect("shapes");
    HopfAlgebra::new(
        format!("{} x {}", q1.name, q2.name),
        labels,
        algebra,
        HopfStructure {
            comult,
            counit: kron_vec(&q1.hopf.counit, &q2.hopf.counit),
            antipode: kron(&q1.hopf.antipode, &q2.hopf.antipode),
        },
    )
    .expect("shapes")
}

/// Builtin by command-line name: z2, z4, s3-group, s3-function,
/// kac-paljutkin, trivial, tensor:<a>,<b>.
pub fn by_name(name: &str) -> Result<HopfAlgebra> {
    if let Some(rest) = name.strip_prefix("tensor:") {
        let (a, b) = rest
            .split_once(',')
            .ok_or_else(|| AqgError::Invalid(format!("expected tensor:<a>,<b>, got {name}")))?;
        let mut q = tensor_product(&by_name(a)?, &by_name(b)?);
        q.name = name.to_string();
        return Ok(q);
    }
    let mut q = match name {
        "z2" => group_algebra(&FiniteGroup::cyclic(2))?,
        "z3" => group_algebra(&FiniteGroup::cyclic(3))?,
        "z4" => group_algebra(&FiniteGroup::cyclic(4))?,
        "s3-group" => group_algebra(&FiniteGroup::symmetric3())?,
        "s3-function" => function_algebra(&FiniteGroup::symmetric3())?,
        "z2-function" => function_algebra(&FiniteGroup::cyclic(2))?,
        "kac-paljutkin" => kac_paljutkin(),
        "trivial" => trivial(),
        _ => return Err(AqgError::Invalid(format!("unknown builtin `{name}`"))),
    };
    q.name = name.to_string();
    Ok(q)
}

/// The six builtins every suite runs on.
pub const STANDARD: [&str; 6] = [
    "z2",
    "z4",
    "s3-group",
    "s3-function",
    "kac-paljutkin",
    "tensor:z2,s3-function",
];
