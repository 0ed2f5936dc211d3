//! A verified quantum group: Hopf data plus Haar and modular data, with the
//! matrices most constructions need cached.

use crate::algebra::{Algebra, Element, Functional, HopfAlgebra};
use crate::error::{AqgError, Result};
use crate::haar::{gram, modular_report, pairing_matrix, ModularData};
use crate::report::Report;
use crate::tensor::{inverse, ComplexMatrix, C64};

#[derive(Clone, Debug)]
pub struct QuantumGroup {
    pub hopf: HopfAlgebra,
    pub modular: ModularData,
    /// P_ij = φ(e_i e_j).
    pub pairing: ComplexMatrix,
    pub pairing_inv: ComplexMatrix,
    /// G_ij = φ(e_i* e_j).
    pub gram: ComplexMatrix,
    pub antipode_inv: ComplexMatrix,
    pub tol: f64,
}

impl QuantumGroup {
    /// Verifies the axioms, then solves for the Haar and modular data.
    pub fn new(hopf: HopfAlgebra, tol: f64) -> Result<Self> {
        let axioms = hopf.check_hopf_axioms(tol);
        if let Some(c) = axioms.first_failure() {
            return Err(AqgError::AxiomFailure {
                name: c.name.clone(),
                value: c.value,
                tol: c.tol,
            });
        }
        let modular = ModularData::compute(&hopf, tol)?;
        QuantumGroup::from_parts(hopf, modular, tol)
    }

    /// Assembles a quantum group without checking any axiom.
    pub fn from_parts(hopf: HopfAlgebra, modular: ModularData, tol: f64) -> Result<Self> {
        let pairing = pairing_matrix(&hopf.algebra, &modular.phi);
        let pairing_inv = inverse(&pairing)?;
        let gram = gram(&hopf.algebra, &modular.phi);
        let antipode_inv = hopf.antipode_inverse()?;
        Ok(QuantumGroup {
            hopf,
            modular,
            pairing,
            pairing_inv,
            gram,
            antipode_inv,
            tol,
        })
    }

    pub fn from_builtin(name: &str, tol: f64) -> Result<Self> {
        QuantumGroup::new(crate::builtins::by_name(name)?, tol)
    }

    pub fn name(&self) -> &str {
        &self.hopf.name
    }

    pub fn dim(&self) -> usize {
        self.hopf.dim()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.hopf.algebra
    }

    pub fn phi(&self) -> &Functional {
        &self.modular.phi
    }

    pub fn psi(&self) -> &Functional {
        &self.modular.psi
    }

    pub fn delta_elt(&self) -> &Element {
        &self.modular.delta
    }

    pub fn mu(&self) -> C64 {
        self.modular.mu
    }

    pub fn is_kac(&self) -> bool {
        self.modular.tracial
    }

    pub fn axioms_report(&self) -> Report {
        self.hopf.check_hopf_axioms(self.tol)
    }

    pub fn modular_report(&self) -> Report {
        modular_report(&self.hopf, &self.modular, self.tol)
    }
}
