//! Joint eigenfunctions of a commuting family of triangular operators, built by
//! spectral projection and, independently, by a dense linear solve.

use std::collections::HashMap;

use thiserror::Error;

use crate::fields::Field;
use crate::linalg::left_nullspace;
use crate::polyspace::{Composition, VVPoly};
use crate::specht::ModuleVector;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("spectral vectors of {alpha} ⊗ S{tableau} and {other_alpha} ⊗ S{other_tableau} coincide")]
    SpectralCoincidence {
        alpha: String,
        tableau: usize,
        other_alpha: String,
        other_tableau: usize,
    },
    #[error("eigen-equation {index} fails for the constructed polynomial of {alpha}")]
    EigenCheckFailed { alpha: String, index: usize },
    #[error("leading coefficient of {alpha} is not proportional to the expected tableau vector")]
    LeadingTermMismatch { alpha: String },
    #[error("the joint eigenspace of {alpha} has dimension {dimension}, expected 1")]
    OracleNotUnique { alpha: String, dimension: usize },
    #[error("label {alpha} has {len} entries but N = {n}")]
    BadLabel { alpha: String, len: usize, n: usize },
}

/// A commuting family of degree-preserving operators, triangular for `⊳`.
pub trait EigenFamily<F: Field> {
    fn n(&self) -> usize;
    fn dim(&self) -> usize;
    /// `p * Op_i`.
    fn apply_op(&self, i: usize, p: &VVPoly<F>) -> VVPoly<F>;
    /// Eigenvalues of the label `(alpha, S_s)`.
    fn spectral(&self, alpha: &Composition, s: usize) -> Vec<F>;
    /// Coefficient of `x^alpha` in the eigenfunction of `(alpha, S_s)`.
    fn seed(&self, alpha: &Composition, s: usize) -> ModuleVector<F>;
}

fn check_label<F: Field>(fam: &impl EigenFamily<F>, alpha: &Composition) -> Result<(), ConstructionError> {
    if alpha.n() != fam.n() {
        return Err(ConstructionError::BadLabel {
            alpha: alpha.to_string(),
            len: alpha.n(),
            n: fam.n(),
        });
    }
    Ok(())
}

/// A projection factor `(Op_i - c)/(zeta_i - c)`.
#[derive(Debug, Clone)]
pub struct ProjectionFactor<F> {
    pub index: usize,
    pub value: F,
}

/// Distinct factors needed to isolate `(alpha, S_s)` inside `span{x^gamma ⊗ S' : gamma ⊴ alpha}`.
pub fn projection_factors<F: Field>(
    fam: &impl EigenFamily<F>,
    alpha: &Composition,
    s: usize,
) -> Result<Vec<ProjectionFactor<F>>, ConstructionError> {
    check_label(fam, alpha)?;
    let zeta = fam.spectral(alpha, s);
    let mut factors: Vec<ProjectionFactor<F>> = Vec::new();
    for gamma in alpha.lower_set().iter().rev() {
        for s2 in 0..fam.dim() {
            if gamma == alpha && s2 == s {
                continue;
            }
            let other = fam.spectral(gamma, s2);
            let Some(i) = (0..fam.n()).find(|&i| !zeta[i].approx_eq(&other[i])) else {
                return Err(ConstructionError::SpectralCoincidence {
                    alpha: alpha.to_string(),
                    tableau: s + 1,
                    other_alpha: gamma.to_string(),
                    other_tableau: s2 + 1,
                });
            };
            let value = other[i].clone();
            if !factors.iter().any(|f| f.index == i + 1 && f.value.approx_eq(&value)) {
                factors.push(ProjectionFactor { index: i + 1, value });
            }
        }
    }
    Ok(factors)
}

/// Checks `p * Op_i = zeta_i p` for every `i`.
pub fn check_eigen<F: Field>(
    fam: &impl EigenFamily<F>,
    p: &VVPoly<F>,
    zeta: &[F],
    alpha: &Composition,
) -> Result<(), ConstructionError> {
    for (i, z) in zeta.iter().enumerate() {
        let lhs = fam.apply_op(i + 1, p);
        if !lhs.approx_eq(&p.scale(z)) {
            return Err(ConstructionError::EigenCheckFailed {
                alpha: alpha.to_string(),
                index: i + 1,
            });
        }
    }
    Ok(())
}

/// Applies the projection factors to the seed `x^alpha ⊗ seed` and validates the result.
pub fn construct_by_projection<F: Field>(
    fam: &impl EigenFamily<F>,
    alpha: &Composition,
    s: usize,
) -> Result<VVPoly<F>, ConstructionError> {
    let factors = projection_factors(fam, alpha, s)?;
    let zeta = fam.spectral(alpha, s);
    let mut p = VVPoly::monomial(alpha.clone(), fam.seed(alpha, s));
    for f in &factors {
        let denom = zeta[f.index - 1].clone() - &f.value;
        let inv = denom.try_inv().expect("factor values differ from the target eigenvalue");
        let mut next = fam.apply_op(f.index, &p);
        next.axpy(&-f.value.clone(), &p);
        p = next.scale(&inv);
    }
    check_eigen(fam, &p, &zeta, alpha)?;
    Ok(p)
}

/// Solves the joint eigenproblem densely on `span{x^gamma ⊗ S' : gamma ⊴ alpha}`, then
/// scales so the first nonzero seed entry matches.
pub fn construct_by_linear_solve<F: Field>(
    fam: &impl EigenFamily<F>,
    alpha: &Composition,
    s: usize,
) -> Result<VVPoly<F>, ConstructionError> {
    check_label(fam, alpha)?;
    let zeta = fam.spectral(alpha, s);
    let dim = fam.dim();
    let labels: Vec<Composition> = alpha.lower_set();
    let mut constraint_index: HashMap<(usize, Composition, usize), usize> = HashMap::new();
    let mut images: Vec<Vec<(usize, F)>> = Vec::new();
    for gamma in &labels {
        for k in 0..dim {
            let e = VVPoly::monomial(gamma.clone(), ModuleVector::basis(dim, k));
            let mut entries = Vec::new();
            for (i, z) in zeta.iter().enumerate() {
                let mut img = fam.apply_op(i + 1, &e);
                img.axpy(&-z.clone(), &e);
                for (beta, v) in img.terms() {
                    for (kk, c) in v.coeffs().iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let next = constraint_index.len();
                        let idx = *constraint_index.entry((i, beta.clone(), kk)).or_insert(next);
                        entries.push((idx, c.clone()));
                    }
                }
            }
            images.push(entries);
        }
    }
    let width = constraint_index.len();
    let rows: Vec<Vec<F>> = images
        .into_iter()
        .map(|entries| {
            let mut row = vec![F::zero(); width];
            for (idx, c) in entries {
                row[idx] += &c;
            }
            row
        })
        .collect();
    let ns = left_nullspace(&rows);
    if ns.len() != 1 {
        return Err(ConstructionError::OracleNotUnique {
            alpha: alpha.to_string(),
            dimension: ns.len(),
        });
    }
    let x = &ns[0];
    let mut p = VVPoly::zero(fam.n(), dim);
    for (g, gamma) in labels.iter().enumerate() {
        let v = ModuleVector::from_coeffs(x[g * dim..(g + 1) * dim].to_vec());
        p.add_term(gamma.clone(), &v);
    }
    let seed = fam.seed(alpha, s);
    let (k, target) = seed.first_nonzero().expect("nonzero seed");
    let lead = p
        .coefficient(alpha)
        .map(|v| v.get(k).clone())
        .unwrap_or_else(F::zero);
    let factor = target
        .clone()
        .try_div(&lead)
        .map_err(|_| ConstructionError::LeadingTermMismatch {
            alpha: alpha.to_string(),
        })?;
    Ok(p.scale(&factor))
}

/// Scales `p` so its `x^alpha` coefficient equals `target`; fails if they are not proportional.
pub fn normalize_leading<F: Field>(
    p: &VVPoly<F>,
    alpha: &Composition,
    target: &ModuleVector<F>,
) -> Result<VVPoly<F>, ConstructionError> {
    let mismatch = || ConstructionError::LeadingTermMismatch {
        alpha: alpha.to_string(),
    };
    let lead = p.coefficient(alpha).ok_or_else(mismatch)?;
    let (k, t) = target.first_nonzero().ok_or_else(mismatch)?;
    let factor = t.clone().try_div(lead.get(k)).map_err(|_| mismatch())?;
    if !lead.scale(&factor).approx_eq(target) {
        return Err(mismatch());
    }
    Ok(p.scale(&factor))
}
