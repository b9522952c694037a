//! The irreducible module `V_tau` with its RSYT basis, the actions of the
//! symmetric group and Hecke algebra generators, Jucys-Murphy elements and
//! the invariant forms.
//!
//! All actions are right actions on row vectors: `v * g`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::fields::{Field, FieldError};
use crate::tableaux::{enumerate_rsyt, Partition, Tableau};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpechtError {
    #[error("generator index {index} out of range for N = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("Hecke parameter is not admissible: {0}")]
    BadParameter(FieldError),
}

/// Basis data for `V_tau`, shared by every representation on it.
#[derive(Debug)]
pub struct SpechtModule {
    shape: Partition,
    tableaux: Vec<Tableau>,
    index: HashMap<Vec<i64>, usize>,
    /// `swaps[i - 1][k]`: (c(i) - c(i+1), index of S^(i)) for basis tableau `k`.
    swaps: Vec<Vec<(i64, Option<usize>)>>,
}

impl SpechtModule {
    pub fn new(shape: &Partition) -> Arc<Self> {
        let tableaux = enumerate_rsyt(shape);
        let index: HashMap<Vec<i64>, usize> = tableaux
            .iter()
            .enumerate()
            .map(|(k, t)| (t.content_vector(), k))
            .collect();
        let n = shape.size();
        let swaps = (1..n)
            .map(|i| {
                tableaux
                    .iter()
                    .map(|t| {
                        let b = t.content(i) - t.content(i + 1);
                        let partner = t.swapped(i).map(|s| index[&s.content_vector()]);
                        (b, partner)
                    })
                    .collect()
            })
            .collect();
        Arc::new(SpechtModule {
            shape: shape.clone(),
            tableaux,
            index,
            swaps,
        })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Number of variables `N`.
    pub fn n(&self) -> usize {
        self.shape.size()
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn tableau(&self, k: usize) -> &Tableau {
        &self.tableaux[k]
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.index.get(&t.content_vector()).copied()
    }

    pub fn index_of_contents(&self, contents: &[i64]) -> Option<usize> {
        self.index.get(contents).copied()
    }

    fn check_generator(&self, i: usize) -> Result<(), SpechtError> {
        if i >= 1 && i < self.n() {
            Ok(())
        } else {
            Err(SpechtError::IndexOutOfRange {
                index: i,
                n: self.n(),
            })
        }
    }
}

/// An element of `V_tau`, dense in the RSYT basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleVector<F> {
    coeffs: Vec<F>,
}

impl<F: Field> ModuleVector<F> {
    pub fn zero(dim: usize) -> Self {
        ModuleVector {
            coeffs: vec![F::zero(); dim],
        }
    }

    /// The basis tableau with index `k`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coeffs[k] = F::one();
        v
    }

    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        ModuleVector { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn get(&self, k: usize) -> &F {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F::is_zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        ModuleVector {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect(),
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &F, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += &(b.clone() * c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| a.approx_eq(b))
    }

    /// Index and value of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<(usize, &F)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }
}

/// Generator of a word: `T_i`, or `T_i^{-1}` (equal to `s_i` in the group case).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Forward(usize),
    Inverse(usize),
}

/// Which algebra acts: the symmetric group or the Hecke algebra at parameter `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum Family<F> {
    Group,
    Hecke(F),
}

#[derive(Debug, Clone)]
struct GenEntry<F> {
    diag: F,
    off: Option<(usize, F)>,
}

/// Matrices of the simple generators on `V_tau` for one family.
#[derive(Debug, Clone)]
pub struct Representation<F> {
    module: Arc<SpechtModule>,
    family: Family<F>,
    gens: Vec<Vec<GenEntry<F>>>,
}

impl<F: Field> Representation<F> {
    /// `s_i` acting through the four-case rule.
    pub fn group(module: &Arc<SpechtModule>) -> Self {
        let gens = module
            .swaps
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(b, partner)| match b {
                        1 => GenEntry {
                            diag: F::one(),
                            off: None,
                        },
                        -1 => GenEntry {
                            diag: -F::one(),
                            off: None,
                        },
                        _ => {
                            let binv = F::one().try_div(&F::from_i64(b)).expect("b != 0");
                            let off = if b >= 2 {
                                F::one()
                            } else {
                                F::one() - binv.clone() * &binv
                            };
                            GenEntry {
                                diag: binv,
                                off: Some((partner.expect("case 3/4 has a partner"), off)),
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        Representation {
            module: module.clone(),
            family: Family::Group,
            gens,
        }
    }

    /// `T_i` acting through the four-case rule at parameter `t`.
    pub fn hecke(module: &Arc<SpechtModule>, t: &F) -> Result<Self, SpechtError> {
        let bad = SpechtError::BadParameter;
        t.try_inv().map_err(bad)?;
        let one = F::one();
        let mut gens = Vec::with_capacity(module.swaps.len());
        for row in &module.swaps {
            let mut entries = Vec::with_capacity(row.len());
            for &(b, partner) in row {
                let entry = match b {
                    1 => GenEntry {
                        diag: t.clone(),
                        off: None,
                    },
                    -1 => GenEntry {
                        diag: -one.clone(),
                        off: None,
                    },
                    _ if b >= 2 => {
                        // S^(i) + (t - 1)/(1 - t^{-b}) S
                        let den = one.clone() - t.try_powi(-b).map_err(bad)?;
                        let diag = (t.clone() - &one).try_div(&den).map_err(bad)?;
                        GenEntry {
                            diag,
                            off: Some((partner.expect("case 3 has a partner"), one.clone())),
                        }
                    }
                    _ => {
                        // t (t^{b+1} - 1)(t^{b-1} - 1)/(t^b - 1)^2 S^(i) + t^b (t - 1)/(t^b - 1) S
                        let tb = t.try_powi(b).map_err(bad)?;
                        let den = tb.clone() - &one;
                        let num = t.clone()
                            * (t.try_powi(b + 1).map_err(bad)? - &one)
                            * (t.try_powi(b - 1).map_err(bad)? - &one);
                        let off = num.try_div(&(den.clone() * &den)).map_err(bad)?;
                        let diag = (tb * (t.clone() - &one)).try_div(&den).map_err(bad)?;
                        GenEntry {
                            diag,
                            off: Some((partner.expect("case 4 has a partner"), off)),
                        }
                    }
                };
                entries.push(entry);
            }
            gens.push(entries);
        }
        Ok(Representation {
            module: module.clone(),
            family: Family::Hecke(t.clone()),
            gens,
        })
    }

    pub fn module(&self) -> &Arc<SpechtModule> {
        &self.module
    }

    pub fn family(&self) -> &Family<F> {
        &self.family
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// `v * s_i` or `v * T_i`; `i` is assumed in range.
    pub fn apply(&self, i: usize, v: &ModuleVector<F>) -> ModuleVector<F> {
        let mut out = ModuleVector::zero(v.dim());
        for (k, c) in v.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = &self.gens[i - 1][k];
            out.coeffs[k] += &(c.clone() * &e.diag);
            if let Some((p, off)) = &e.off {
                out.coeffs[*p] += &(c.clone() * off);
            }
        }
        out
    }

    /// `v * T_i^{-1}` via `T_i^{-1} = t^{-1} T_i - (1 - t^{-1})`; `v * s_i` for the group.
    pub fn apply_inverse(&self, i: usize, v: &ModuleVector<F>) -> ModuleVector<F> {
        match &self.family {
            Family::Group => self.apply(i, v),
            Family::Hecke(t) => {
                let tinv = t.try_inv().expect("t invertible");
                let mut out = self.apply(i, v).scale(&tinv);
                out.axpy(&(tinv - &F::one()), v);
                out
            }
        }
    }

    pub fn act_checked(&self, i: usize, v: &ModuleVector<F>) -> Result<ModuleVector<F>, SpechtError> {
        self.module.check_generator(i)?;
        Ok(self.apply(i, v))
    }

    /// Applies a word left to right: `v * g_1 * g_2 * ...`.
    pub fn act_word(&self, word: &[Generator], v: &ModuleVector<F>) -> Result<ModuleVector<F>, SpechtError> {
        let mut out = v.clone();
        for g in word {
            out = match *g {
                Generator::Forward(i) => {
                    self.module.check_generator(i)?;
                    self.apply(i, &out)
                }
                Generator::Inverse(i) => {
                    self.module.check_generator(i)?;
                    self.apply_inverse(i, &out)
                }
            };
        }
        Ok(out)
    }

    /// `v * tau(omega)` with `omega = T_1 T_2 ... T_{N-1}`.
    pub fn apply_omega(&self, v: &ModuleVector<F>) -> ModuleVector<F> {
        (1..self.module.n()).fold(v.clone(), |acc, i| self.apply(i, &acc))
    }

    /// Jucys-Murphy element: `omega_i` for the group, `phi_i` for the Hecke algebra.
    pub fn act_jucys_murphy(&self, i: usize, v: &ModuleVector<F>) -> Result<ModuleVector<F>, SpechtError> {
        let n = self.module.n();
        if i < 1 || i > n {
            return Err(SpechtError::IndexOutOfRange { index: i, n });
        }
        Ok(match &self.family {
            Family::Group => {
                let mut out = ModuleVector::zero(v.dim());
                for j in i + 1..=n {
                    out.add_assign(&self.apply_transposition(i, j, v));
                }
                out
            }
            Family::Hecke(t) => self.phi(i, v, &t.try_inv().expect("t invertible")),
        })
    }

    fn phi(&self, i: usize, v: &ModuleVector<F>, tinv: &F) -> ModuleVector<F> {
        if i == self.module.n() {
            return v.clone();
        }
        let w = self.apply(i, v);
        let w = self.phi(i + 1, &w, tinv);
        self.apply(i, &w).scale(tinv)
    }

    /// `v * (i, j)` through the palindromic word `s_{j-1} ... s_{i+1} s_i s_{i+1} ... s_{j-1}`.
    /// Only meaningful for the group family.
    pub fn apply_transposition(&self, i: usize, j: usize, v: &ModuleVector<F>) -> ModuleVector<F> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let mut out = v.clone();
        for k in (i + 1..j).rev() {
            out = self.apply(k, &out);
        }
        out = self.apply(i, &out);
        for k in i + 1..j {
            out = self.apply(k, &out);
        }
        out
    }

    /// Dense matrix of the transposition `(i, j)`: row `k` is `S_k * (i, j)`.
    pub fn transposition_matrix(&self, i: usize, j: usize) -> ModuleMatrix<F> {
        let d = self.dim();
        ModuleMatrix {
            rows: (0..d)
                .map(|k| self.apply_transposition(i, j, &ModuleVector::basis(d, k)))
                .collect(),
        }
    }

    /// `<S, S>_0` for each basis tableau.
    pub fn form_diagonal(&self) -> Vec<F> {
        self.module
            .tableaux
            .iter()
            .map(|s| {
                let n = s.size();
                let mut acc = F::one();
                for i in 1..=n {
                    for j in i + 1..=n {
                        let d = s.content(j) - s.content(i);
                        if d < 2 {
                            continue;
                        }
                        let factor = match &self.family {
                            Family::Group => {
                                let b = F::from_i64(d * d);
                                F::one() - F::one().try_div(&b).expect("d != 0")
                            }
                            Family::Hecke(t) => {
                                let z = t.try_powi(s.content(i) - s.content(j)).expect("t invertible");
                                u_function(t, &z).expect("z != 1 for d >= 2")
                            }
                        };
                        acc *= &factor;
                    }
                }
                acc
            })
            .collect()
    }

    /// The invariant bilinear form `<v, w>_0`.
    pub fn invariant_form(&self, v: &ModuleVector<F>, w: &ModuleVector<F>) -> F {
        let diag = self.form_diagonal();
        diag.iter()
            .zip(v.coeffs.iter().zip(&w.coeffs))
            .fold(F::zero(), |acc, (d, (a, b))| acc + d.clone() * a * b)
    }
}

/// A linear map on `V_tau` stored by rows; acts on the right.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleMatrix<F> {
    rows: Vec<ModuleVector<F>>,
}

impl<F: Field> ModuleMatrix<F> {
    pub fn rows(&self) -> &[ModuleVector<F>] {
        &self.rows
    }

    /// `v * M`.
    pub fn apply(&self, v: &ModuleVector<F>) -> ModuleVector<F> {
        let mut out = ModuleVector::zero(v.dim());
        for (c, row) in v.coeffs.iter().zip(&self.rows) {
            if !c.is_zero() {
                out.axpy(c, row);
            }
        }
        out
    }
}

/// `u(z) = (t - z)(1 - t z)/(1 - z)^2`.
pub fn u_function<F: Field>(t: &F, z: &F) -> Result<F, FieldError> {
    let one = F::one();
    let den = one.clone() - z;
    ((t.clone() - z) * (one - t.clone() * z)).try_div(&(den.clone() * &den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{random_rational, rational, Rational, RatFunc};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn module(s: &str) -> Arc<SpechtModule> {
        SpechtModule::new(&s.parse().unwrap())
    }

    fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> ModuleVector<Rational> {
        ModuleVector::from_coeffs((0..dim).map(|_| random_rational(rng, 20)).collect())
    }

    fn all_modules(max_n: usize) -> Vec<Arc<SpechtModule>> {
        (2..=max_n)
            .flat_map(Partition::all_of)
            .map(|p| SpechtModule::new(&p))
            .collect()
    }

    #[test]
    fn four_case_group_examples() {
        let m = module("2,1");
        let rep = Representation::<Rational>::group(&m);
        // S1 = contents [1,-1,0], S2 = contents [-1,1,0]
        let s1 = ModuleVector::basis(2, 0);
        let s2 = ModuleVector::basis(2, 1);
        // case 1: entries 2, 3 in the same row of S2
        assert_eq!(rep.apply(2, &s2), s2);
        assert_eq!(
            rep.apply(1, &s1),
            ModuleVector::from_coeffs(vec![rational(1, 2), rational(1, 1)])
        );
        assert_eq!(
            rep.apply(1, &s2),
            ModuleVector::from_coeffs(vec![rational(3, 4), rational(-1, 2)])
        );
        assert!(rep.act_checked(3, &s1).is_err());
        assert!(rep.act_checked(0, &s1).is_err());
    }

    #[test]
    fn four_case_hecke_examples() {
        let m = module("2,1");
        let t = RatFunc::var();
        let rep = Representation::hecke(&m, &t).unwrap();
        let s1 = ModuleVector::<RatFunc>::basis(2, 0);
        let s2 = ModuleVector::<RatFunc>::basis(2, 1);
        // same row: t S; same column: -S
        assert_eq!(rep.apply(2, &s2), s2.scale(&t));
        assert_eq!(rep.apply(2, &s1), s1.scale(&-RatFunc::one()));
        let one = RatFunc::one();
        let expected_diag = (t.clone() - &one)
            .try_div(&(one.clone() - t.try_powi(-2).unwrap()))
            .unwrap();
        assert_eq!(
            rep.apply(1, &s1),
            ModuleVector::from_coeffs(vec![expected_diag, one])
        );
        assert!(Representation::hecke(&m, &RatFunc::zero()).is_err());
    }

    #[test]
    fn braid_and_quadratic_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for m in all_modules(6) {
            let n = m.n();
            let g = Representation::<Rational>::group(&m);
            let t = rational(3, 7);
            let h = Representation::hecke(&m, &t).unwrap();
            for _ in 0..2 {
                let v = random_vector(&mut rng, m.dim());
                for i in 1..n {
                    assert_eq!(g.apply(i, &g.apply(i, &v)), v);
                    // (T_i + 1)(T_i - t) = 0
                    let tv = h.apply(i, &v);
                    let mut lhs = h.apply(i, &tv);
                    lhs.axpy(&(rational(1, 1) - &t), &tv);
                    lhs.axpy(&-t.clone(), &v);
                    assert!(lhs.is_zero());
                    assert_eq!(h.apply_inverse(i, &tv), v);
                    for j in i + 1..n {
                        for rep in [&g, &h] {
                            if j == i + 1 {
                                let l = rep.apply(i, &rep.apply(j, &rep.apply(i, &v)));
                                let r = rep.apply(j, &rep.apply(i, &rep.apply(j, &v)));
                                assert_eq!(l, r);
                            } else {
                                assert_eq!(rep.apply(i, &rep.apply(j, &v)), rep.apply(j, &rep.apply(i, &v)));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn words() {
        let m = module("3,2");
        let g = Representation::<Rational>::group(&m);
        let h = Representation::hecke(&m, &rational(5, 2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = random_vector(&mut rng, m.dim());
        assert_eq!(g.act_word(&[], &v).unwrap(), v);
        let w = [Generator::Forward(1), Generator::Forward(1)];
        assert_eq!(g.act_word(&w, &v).unwrap(), v);
        let w = [Generator::Forward(3), Generator::Inverse(3)];
        assert_eq!(h.act_word(&w, &v).unwrap(), v);
        assert!(h.act_word(&[Generator::Forward(5)], &v).is_err());
    }

    #[test]
    fn jucys_murphy_eigenvalues() {
        let t = rational(2, 5);
        for m in all_modules(6) {
            let g = Representation::<Rational>::group(&m);
            let h = Representation::hecke(&m, &t).unwrap();
            for (k, s) in m.tableaux().iter().enumerate() {
                let v = ModuleVector::basis(m.dim(), k);
                for i in 1..=m.n() {
                    let c = s.content(i);
                    assert_eq!(g.act_jucys_murphy(i, &v).unwrap(), v.scale(&Rational::from_i64(c)));
                    assert_eq!(h.act_jucys_murphy(i, &v).unwrap(), v.scale(&t.try_powi(c).unwrap()));
                }
            }
        }
    }

    #[test]
    fn jucys_murphy_commute_on_random_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let t = rational(-3, 4);
        for m in all_modules(5) {
            let g = Representation::<Rational>::group(&m);
            let h = Representation::hecke(&m, &t).unwrap();
            let v = random_vector(&mut rng, m.dim());
            for i in 1..=m.n() {
                for j in i + 1..=m.n() {
                    for rep in [&g, &h] {
                        let a = rep.act_jucys_murphy(j, &rep.act_jucys_murphy(i, &v).unwrap()).unwrap();
                        let b = rep.act_jucys_murphy(i, &rep.act_jucys_murphy(j, &v).unwrap()).unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn form_examples() {
        let m = module("2,1");
        let g = Representation::<Rational>::group(&m);
        assert_eq!(g.form_diagonal(), vec![rational(1, 1), rational(3, 4)]);
        assert_eq!(
            Representation::<Rational>::group(&module("2")).form_diagonal(),
            vec![rational(1, 1)]
        );
        let t = RatFunc::var();
        let h = Representation::hecke(&m, &t).unwrap();
        let z = t.try_powi(-2).unwrap();
        let one = RatFunc::one();
        let expected = (t.clone() - &z) * (one.clone() - t.try_powi(-1).unwrap());
        let expected = expected
            .try_div(&((one.clone() - &z) * (one - &z)))
            .unwrap();
        assert_eq!(h.form_diagonal()[1], expected);
    }

    #[test]
    fn forms_are_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let t = rational(7, 3);
        for m in all_modules(6) {
            let g = Representation::<Rational>::group(&m);
            let h = Representation::hecke(&m, &t).unwrap();
            let f = random_vector(&mut rng, m.dim());
            let w = random_vector(&mut rng, m.dim());
            for i in 1..m.n() {
                for rep in [&g, &h] {
                    assert_eq!(
                        rep.invariant_form(&rep.apply(i, &f), &w),
                        rep.invariant_form(&f, &rep.apply(i, &w)),
                        "shape {} i={i}",
                        m.shape()
                    );
                }
            }
        }
    }

    #[test]
    fn u_vanishes_at_t_and_inverse() {
        let t = RatFunc::var();
        assert!(u_function(&t, &t).unwrap().is_zero());
        assert!(u_function(&t, &t.try_inv().unwrap()).unwrap().is_zero());
    }
}
