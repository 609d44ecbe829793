use serde::{Deserialize, Serialize};

use crate::var::{companion_matrix, VarEstimate};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityResult {
    /// Eigenvalues of the companion matrix, largest modulus first.
    pub roots: Vec<Root>,
    pub stable: bool,
}

impl StabilityResult {
    pub fn max_modulus(&self) -> f64 {
        self.roots.first().map_or(0.0, |r| r.modulus)
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.modulus).collect()
    }
}

pub fn stability_roots(est: &VarEstimate) -> StabilityResult {
    stability_of(&est.coefs)
}

/// Roots of the companion matrix built from `A_1..A_p`.
pub fn stability_of(coefs: &[nalgebra::DMatrix<f64>]) -> StabilityResult {
    let c = companion_matrix(coefs);
    let mut roots: Vec<Root> = c
        .complex_eigenvalues()
        .iter()
        .map(|z| Root {
            re: z.re,
            im: z.im,
            modulus: z.norm(),
        })
        .collect();
    // descending modulus; within a conjugate pair the negative imaginary part first
    roots.sort_by(|a, b| {
        b.modulus
            .partial_cmp(&a.modulus)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    let stable = roots.iter().all(|r| r.modulus < 1.0);
    StabilityResult { roots, stable }
}
