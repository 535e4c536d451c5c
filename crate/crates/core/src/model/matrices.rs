//! Drift and diffusion of the quadrature fluctuations
//! `X = (I_c, J_c, I_m1, J_m1, q1, p1, I_m2, J_m2, q2, p2)`.

use nalgebra::DMatrix;

use crate::gaussian::{DiffusionMatrix, DriftMatrix, Mode, DIM};

use super::{EffectiveParams, Result};

/// Placement of the cavity back-action on the phonon momenta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DriftConvention {
    /// `ṗ_j ∝ J_c`, the coupling generated by the linearised Hamiltonian.
    #[default]
    PhaseQuadrature,
    /// `ṗ_j ∝ I_c`, the literal block layout of the compact drift matrix.
    /// Not derivable from a Hamiltonian; kept for comparison only.
    AmplitudeQuadrature,
}

impl DriftConvention {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "appendix" | "phase" => Some(DriftConvention::PhaseQuadrature),
            "eq9" | "amplitude" => Some(DriftConvention::AmplitudeQuadrature),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DriftConvention::PhaseQuadrature => "appendix",
            DriftConvention::AmplitudeQuadrature => "eq9",
        }
    }
}

const MAGNONS: [Mode; 2] = [Mode::Magnon1, Mode::Magnon2];
const PHONONS: [Mode; 2] = [Mode::Phonon1, Mode::Phonon2];

/// Ring sign `(-1)^j` for subsystem `j = 1, 2`.
fn ring_sign(branch: usize) -> f64 {
    if branch == 0 {
        -1.0
    } else {
        1.0
    }
}

pub fn build_drift(e: &EffectiveParams, convention: DriftConvention) -> Result<DriftMatrix> {
    e.validate()?;
    let mut a = DMatrix::<f64>::zeros(DIM, DIM);
    let (ic, jc) = (0, 1);
    a[(ic, ic)] = -e.kappa_c;
    a[(jc, jc)] = -e.kappa_c;
    a[(ic, jc)] = e.delta_c;
    a[(jc, ic)] = -e.delta_c;

    for j in 0..2 {
        let im = MAGNONS[j].offset();
        let jm = im + 1;
        let q = PHONONS[j].offset();
        let p = q + 1;
        let gm = e.mm_coupling[j];

        a[(im, im)] = -e.kappa_m[j];
        a[(jm, jm)] = -e.kappa_m[j];
        a[(im, jm)] = e.delta_m[j];
        a[(jm, im)] = -e.delta_m[j];
        a[(im, q)] = -gm;
        a[(p, jm)] = gm;

        a[(q, p)] = e.omega_b[j];
        a[(p, q)] = -e.omega_b[j];
        a[(p, p)] = -e.gamma_b[j];

        let g0 = ring_sign(j) * e.om_coupling;
        a[(ic, q)] = g0;
        let column = match convention {
            DriftConvention::PhaseQuadrature => jc,
            DriftConvention::AmplitudeQuadrature => ic,
        };
        a[(p, column)] = -g0;
    }
    Ok(DriftMatrix::new(a).expect("finite by validation"))
}

pub fn build_diffusion(e: &EffectiveParams) -> Result<DiffusionMatrix> {
    e.validate()?;
    let noise = |rate: f64, n: f64| rate * (2.0 * n + 1.0);
    let cavity = noise(e.kappa_c, e.n_c);
    let mut diag = vec![cavity, cavity];
    for j in 0..2 {
        let magnon = noise(e.kappa_m[j], e.n_m[j]);
        diag.extend([magnon, magnon, 0.0, noise(e.gamma_b[j], e.n_b[j])]);
    }
    Ok(DiffusionMatrix::from_diagonal(&diag).expect("non-negative by validation"))
}
