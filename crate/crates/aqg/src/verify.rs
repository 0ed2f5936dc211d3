//! Named verification suites over a quantum group, and the derived data
//! printed alongside them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::blocks::decompose;
use crate::compact::{coamenability_gap_report, compact_report, decompose_corepresentations, GapRow};
use crate::dual::{block_structure, double_dual_iso, dual_aqg, dual_report, hopf_morphism_report, lemma_suite};
use crate::error::{AqgError, Result};
use crate::generator::{
    action_report, expectation_report, generator_of_rep, generator_report, invariant_mean,
    invariant_mean_report, q_report, random_representation, ConditionalExpectation, Representation,
};
use crate::gns::{gns_report, multiplicative_unitary, GnsSpace};
use crate::quantum::QuantumGroup;
use crate::random::Rng;
use crate::report::Report;
use crate::tensor::{identity, residual, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Lemmas,
    Gns,
    Generator,
    Compact,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["axioms", "lemmas", "gns", "generator", "compact", "all"];
}

impl FromStr for Suite {
    type Err = AqgError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "axioms" => Suite::Axioms,
            "lemmas" => Suite::Lemmas,
            "gns" => Suite::Gns,
            "generator" => Suite::Generator,
            "compact" => Suite::Compact,
            "all" => Suite::All,
            _ => return Err(AqgError::Invalid(format!("unknown suite `{s}`"))),
        })
    }
}

pub fn axioms_suite(q: &QuantumGroup) -> Report {
    let mut r = q.axioms_report();
    r.extend(q.modular_report());
    r
}

pub fn lemmas_suite(q: &QuantumGroup, dual: &QuantumGroup) -> Result<Report> {
    let mut r = dual_report(q, dual);
    r.extend(lemma_suite(q, &dual.hopf, q.tol)?);
    let bidual = dual_aqg(dual)?;
    let theta = double_dual_iso(q, dual);
    r.extend(hopf_morphism_report(&q.hopf, &bidual.hopf, &theta, q.tol, "double_dual"));
    Ok(r)
}

/// Generator checks for the regular, trivial, regular⊕trivial and a seeded
/// random representation, plus the action and expectation suites.
pub fn generator_suite(q: &QuantumGroup, dual: &QuantumGroup, seed: u64) -> Result<Report> {
    let tol = q.tol;
    let n = q.dim();
    let gns = GnsSpace::new(q)?;
    let mu = multiplicative_unitary(q, &gns)?;
    let mut r = q_report(q, dual, &gns, tol);

    let regular = Representation::regular(q.algebra(), &gns);
    let g = generator_of_rep(q, &gns, &regular)?;
    r.extend(generator_report(q, &gns, &dual.hopf, &regular, &g, tol)?.renamed("generator_regular"));
    r.residual("generator_regular", "equals_w_hat", residual(&g.u, &mu.w_hat)?, tol);

    let counit = Representation::counit(&q.hopf);
    let g = generator_of_rep(q, &gns, &counit)?;
    r.extend(generator_report(q, &gns, &dual.hopf, &counit, &g, tol)?.renamed("generator_counit"));
    r.residual("generator_counit", "equals_identity", residual(&g.u, &identity(n))?, tol);

    let sum = regular.direct_sum(&counit);
    let g = generator_of_rep(q, &gns, &sum)?;
    let mut block = crate::tensor::ResidualAcc::default();
    for a in 0..=n {
        for b in 0..=n {
            let expected = if a < n && b < n {
                crate::tensor::ComplexMatrix::from_fn(n, n, |i, j| mu.w_hat[(i * n + a, j * n + b)])
            } else if a == n && b == n {
                identity(n)
            } else {
                crate::tensor::zeros(n, n)
            };
            block.add_mat(&g.k_block(a, b), &expected);
        }
    }
    r.residual("generator_sum", "block_diagonal", block.value(), tol);

    let mut rng = Rng::seeded(seed);
    let random = random_representation(q, &mut rng, 3)?;
    let g = generator_of_rep(q, &gns, &random)?;
    r.extend(random.report(q.algebra(), tol).renamed("random_representation"));
    r.extend(generator_report(q, &gns, &dual.hopf, &random, &g, tol)?.renamed("generator_random"));

    let m = invariant_mean(dual);
    r.extend(invariant_mean_report(dual, &m, tol));
    let e = ConditionalExpectation::new(&gns, dual.algebra(), &m, &g);
    r.extend(expectation_report(&g, &random, &e, &mut rng, 100, tol));

    // the action suite is dense in n²k, so it runs on the largest irreducible block
    let blocks = decompose(q.algebra(), q.phi(), seed)?;
    let largest = blocks.iter().max_by_key(|b| b.dim).expect("at least one block");
    let irrep = Representation::new(largest.images.clone())?;
    let g = generator_of_rep(q, &gns, &irrep)?;
    r.extend(action_report(q, &gns, &g, tol)?);
    Ok(r)
}

pub fn run_suite(q: &QuantumGroup, suite: Suite, seed: u64) -> Result<Report> {
    let needs_dual = suite != Suite::Axioms;
    let dual = if needs_dual { Some(dual_aqg(q)?) } else { None };
    let dual_ref = || dual.as_ref().expect("dual computed");
    let mut r = Report::new();
    if matches!(suite, Suite::Axioms | Suite::All) {
        r.extend(axioms_suite(q));
    }
    if matches!(suite, Suite::Lemmas | Suite::All) {
        r.extend(lemmas_suite(q, dual_ref())?);
    }
    if matches!(suite, Suite::Gns | Suite::All) {
        r.extend(gns_report(q, &dual_ref().hopf, q.tol)?);
    }
    if matches!(suite, Suite::Generator | Suite::All) {
        r.extend(generator_suite(q, dual_ref(), seed)?);
    }
    if matches!(suite, Suite::Compact | Suite::All) {
        r.extend(compact_report(q, dual_ref(), seed, q.tol)?);
    }
    Ok(r)
}

/// Values printed after the checks.
#[derive(Clone, Debug, Serialize)]
pub struct Derived {
    pub name: String,
    pub phi: Vec<[f64; 2]>,
    pub delta: Vec<[f64; 2]>,
    pub mu: [f64; 2],
    pub rho: Vec<Vec<[f64; 2]>>,
    pub tracial: bool,
    pub blocks: Vec<usize>,
    pub gaps: Vec<GapRow>,
}

fn pairs(v: impl Iterator<Item = C64>) -> Vec<[f64; 2]> {
    v.map(|z| [z.re, z.im]).collect()
}

impl Derived {
    pub fn compute(q: &QuantumGroup, seed: u64) -> Result<Self> {
        let dual = dual_aqg(q)?;
        let data = decompose_corepresentations(q, &dual, seed)?;
        let rho = &q.modular.rho;
        Ok(Derived {
            name: q.name().to_string(),
            phi: pairs(q.phi().iter().copied()),
            delta: pairs(q.delta_elt().iter().copied()),
            mu: [q.mu().re, q.mu().im],
            rho: (0..rho.ncols()).map(|i| pairs(rho.column(i).iter().copied())).collect(),
            tracial: q.is_kac(),
            blocks: block_structure(q)?,
            gaps: coamenability_gap_report(&data),
        })
    }
}

fn fmt_vec(v: &[[f64; 2]]) -> String {
    let items: Vec<String> = v
        .iter()
        .map(|p| {
            if p[1] == 0.0 {
                format!("{:.6}", p[0])
            } else {
                format!("{:.6}{:+.6}i", p[0], p[1])
            }
        })
        .collect();
    format!("[{}]", items.join(", "))
}

impl fmt::Display for Derived {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name = {}", self.name)?;
        writeln!(f, "phi = {}", fmt_vec(&self.phi))?;
        writeln!(f, "delta = {}", fmt_vec(&self.delta))?;
        writeln!(f, "mu = {}", fmt_vec(&[self.mu]))?;
        writeln!(f, "tracial = {}", self.tracial)?;
        writeln!(f, "blocks = {:?}", self.blocks)?;
        write!(f, "{}", crate::compact::gap_table_pretty(&self.gaps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for name in Suite::NAMES {
            assert!(name.parse::<Suite>().is_ok());
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn all_suites_pass_on_kac_paljutkin() {
        let q = QuantumGroup::from_builtin("kac-paljutkin", 1e-9).unwrap();
        let r = run_suite(&q, Suite::All, 1).unwrap();
        assert!(r.passed(), "{r}");
        let d = Derived::compute(&q, 1).unwrap();
        assert!(d.tracial);
        assert_eq!(d.blocks, vec![1, 1, 1, 1, 2]);
        assert!(d.to_string().contains("tracial = true"));
    }
}
