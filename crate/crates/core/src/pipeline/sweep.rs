//! The Hilbert-function sweep: `#monomials(θ) − #monomials(θ − deg f)` against
//! Riemann–Roch `χ(θ)` over a finite sample of the nef monoid.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::LatticeVector;
use crate::ring::GradedRing;
use crate::surface::IntersectionLattice;

/// How coefficient vectors over the generators are bounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    /// Every coefficient at most the bound.
    #[default]
    Box,
    /// Coefficients summing to at most the bound.
    Simplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepMismatch {
    pub degree: LatticeVector,
    pub hilbert: i64,
    pub chi: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOutcome {
    pub checked: usize,
    pub mismatches: Vec<SweepMismatch>,
    pub largest_chi: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at degree {degree}: {message}")]
pub struct SweepError {
    pub degree: LatticeVector,
    pub message: String,
}

/// Distinct classes `Σ c_i g_i` with coefficients bounded as `mode` says.
pub fn sweep_degrees(generators: &[LatticeVector], mode: SweepMode, bound: u32) -> BTreeSet<LatticeVector> {
    let rank = generators.first().map_or(0, LatticeVector::len);
    let mut out = BTreeSet::new();
    let mut coeffs = vec![0u32; generators.len()];
    loop {
        let mut d = LatticeVector::zeros(rank);
        for (g, &c) in generators.iter().zip(&coeffs) {
            if c > 0 {
                d = &d + &g.scale(&BigInt::from(c));
            }
        }
        out.insert(d);
        // Odometer step, skipping coefficient vectors outside the region.
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return out;
            }
            coeffs[i] += 1;
            let ok = match mode {
                SweepMode::Box => coeffs[i] <= bound,
                SweepMode::Simplex => coeffs.iter().sum::<u32>() <= bound,
            };
            if ok {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// Compares both sides at every degree, in parallel; mismatches keep the input order.
pub fn sweep(
    ring: &GradedRing,
    lattice: &IntersectionLattice,
    relation_degree: &LatticeVector,
    degrees: &[LatticeVector],
) -> Result<SweepOutcome, SweepError> {
    let results: Vec<Result<(i64, BigInt), SweepError>> = degrees
        .par_iter()
        .map(|d| {
            let fail = |message: String| SweepError { degree: d.clone(), message };
            let h = ring.hilbert_hypersurface(relation_degree, d).map_err(|e| fail(e.to_string()))?;
            let chi = lattice.euler_characteristic(d).map_err(|e| fail(e.to_string()))?;
            Ok((h, chi))
        })
        .collect();
    let mut mismatches = Vec::new();
    let mut largest_chi = BigInt::from(0);
    for (d, r) in degrees.iter().zip(results) {
        let (hilbert, chi) = r?;
        if chi > largest_chi {
            largest_chi = chi.clone();
        }
        if BigInt::from(hilbert) != chi {
            mismatches.push(SweepMismatch { degree: d.clone(), hilbert, chi });
        }
    }
    Ok(SweepOutcome { checked: degrees.len(), mismatches, largest_chi })
}
