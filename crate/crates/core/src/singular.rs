//! Singular values predicted from the addable cells of `tau_hat`, critical-pair
//! searches, isotypes, and verification by applying every Dunkl operator.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use web_time::Instant;

use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::fields::{rational, Approx, Field, RatFunc, Rational};
use crate::jack::{coefficient_c_jack_from_contents, construct_jack, construct_jack_oracle, JackOperators};
use crate::macdonald::{
    coefficient_c_mac_from_contents, construct_macdonald, construct_macdonald_oracle, MacdonaldOperators,
};
use crate::polyspace::{Composition, VVPoly};
use crate::specht::SpechtModule;
use crate::tableaux::{
    check_corner, edge_profile, tableau_from_contents, tau_hat, Cell, Partition, Tableau, TableauError,
};

/// Relative residual below which a numeric Dunkl image counts as zero.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;
/// Random `u` samples per root of unity in numeric verification.
pub const NUMERIC_SAMPLES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Jack,
    Macdonald,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Jack => "jack",
            FamilyKind::Macdonald => "macdonald",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = SingularError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jack" => Ok(FamilyKind::Jack),
            "macdonald" => Ok(FamilyKind::Macdonald),
            _ => Err(SingularError::UnknownFamily(s.to_string())),
        }
    }
}

/// Arithmetic used by [`verify_singular_in`]. Macdonald data with `g > 1` are always numeric.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    #[default]
    Exact,
    Numeric,
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldMode::Exact => "exact",
            FieldMode::Numeric => "numeric",
        })
    }
}

impl FromStr for FieldMode {
    type Err = SingularError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(FieldMode::Exact),
            "numeric" => Ok(FieldMode::Numeric),
            _ => Err(SingularError::UnknownFieldMode(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularError {
    #[error("unknown field mode {0:?}; expected exact or numeric")]
    UnknownFieldMode(String),
    #[error("unknown family {0:?}: expected \"jack\" or \"macdonald\"")]
    UnknownFamily(String),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error("m must be positive")]
    ZeroDegree,
    #[error("tableau {tableau} does not hold entry 1 at cell ({cell}) of shape {shape}")]
    WrongTableau { tableau: String, cell: Cell, shape: String },
}

/// `exp(2 pi i k / m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RootOfUnity {
    pub k: i64,
    pub m: i64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { k: 0, m: 1 };

    pub fn is_one(&self) -> bool {
        self.k.rem_euclid(self.m) == 0
    }

    /// `omega^a = 1`, decided exactly.
    pub fn pow_is_one(&self, a: i64) -> bool {
        (self.k * a).rem_euclid(self.m) == 0
    }

    pub fn to_approx(&self) -> Approx {
        Approx::root_of_unity(self.k, self.m)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "exp(2πi·{}/{})", self.k, self.m)
        }
    }
}

/// The roots of unity giving distinct points `(omega u^{-n/g}, u^{m/g})`:
/// `omega = 1` when `g = 1`, otherwise `exp(2 pi i k/m)` with `1 <= k < g`, `gcd(k, g) = 1`.
pub fn allowed_roots(m: u32, n: i64) -> Vec<RootOfUnity> {
    let g = (m as i64).gcd(&n);
    if g == 1 {
        return vec![RootOfUnity::ONE];
    }
    (1..g)
        .filter(|k| k.gcd(&g) == 1)
        .map(|k| RootOfUnity { k, m: m as i64 })
        .collect()
}

fn u_power(e: i64) -> String {
    match e {
        0 => "1".to_string(),
        1 => "u".to_string(),
        _ => format!("u^{e}"),
    }
}

/// `(q, t) = (omega u^{-n/g}, u^{m/g})` as text.
pub fn mac_point_string(omega: RootOfUnity, m: u32, n: i64) -> String {
    let g = (m as i64).gcd(&n);
    let q = u_power(-n / g);
    let q = if omega.is_one() { q } else { format!("{omega}{q}") };
    format!("(q,t) = ({q}, {})", u_power(m as i64 / g))
}

/// One predicted singular value for `alpha = (m, 0, ..., 0)` and tableaux with 1 at `cell`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularDatum {
    pub family: FamilyKind,
    pub shape: Partition,
    pub cell: Cell,
    pub m: u32,
    /// Content of the addable cell of `tau_hat`.
    pub z: i64,
    /// `c(1, S)`, the content of `cell`.
    pub c1: i64,
    pub n: i64,
    pub g: i64,
    #[serde(serialize_with = "display_opt", skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Rational>,
    pub omegas: Vec<RootOfUnity>,
    /// `false` for Jack data with `g > 1`, which are zeros of `C` only.
    pub within_hypotheses: bool,
    pub parameter: String,
}

fn display_opt<S: serde::Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

impl SingularDatum {
    /// The attaching cell of content `z` on `tau_hat`.
    pub fn attaching_cell(&self) -> Cell {
        let th = tau_hat(&self.shape, self.cell);
        edge_profile(&th, self.shape.len())
            .cell_with_content(self.z)
            .expect("z is an addable content")
    }

    /// `tau_hat` plus the attaching cell.
    pub fn expected_isotype(&self) -> Partition {
        partition_with(&tau_hat(&self.shape, self.cell), self.attaching_cell())
    }

    /// The exact representative `(u^{-n}, u^m)` in `Q(u)`; only meaningful when `g = 1`.
    pub fn exact_mac_point(&self) -> (RatFunc, RatFunc) {
        let u = RatFunc::var();
        (u.try_powi(-self.n).expect("u invertible"), u.try_powi(self.m as i64).expect("u invertible"))
    }
}

impl fmt::Display for SingularDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} tau={} cell=({}) m={} z={} n={} g={}: {}",
            self.family, self.shape, self.cell, self.m, self.z, self.n, self.g, self.parameter
        )
    }
}

fn partition_with(parts: &[usize], cell: Cell) -> Partition {
    let mut p: Vec<usize> = parts.to_vec();
    if cell.row > p.len() {
        p.resize(cell.row, 0);
    }
    p[cell.row - 1] += 1;
    p.retain(|&x| x > 0);
    Partition::new(p).expect("adding an addable cell keeps a partition")
}

fn all_data(family: FamilyKind, tau: &Partition, cell: Cell, m: u32) -> Result<Vec<SingularDatum>, SingularError> {
    if m == 0 {
        return Err(SingularError::ZeroDegree);
    }
    check_corner(tau, cell)?;
    let c1 = cell.content();
    let edge = edge_profile(&tau_hat(tau, cell), tau.len());
    let mut out = Vec::new();
    for &z in &edge.addable_contents {
        let n = c1 - z;
        if n == 0 {
            continue;
        }
        let g = (m as i64).gcd(&n);
        let datum = match family {
            FamilyKind::Jack => {
                let kappa = rational(-(m as i64), n);
                SingularDatum {
                    family,
                    shape: tau.clone(),
                    cell,
                    m,
                    z,
                    c1,
                    n,
                    g,
                    parameter: format!("κ = {kappa}"),
                    kappa: Some(kappa),
                    omegas: Vec::new(),
                    within_hypotheses: g == 1,
                }
            }
            FamilyKind::Macdonald => {
                let omegas = allowed_roots(m, n);
                let parameter = omegas
                    .iter()
                    .map(|&w| mac_point_string(w, m, n))
                    .collect::<Vec<_>>()
                    .join("; ");
                SingularDatum {
                    family,
                    shape: tau.clone(),
                    cell,
                    m,
                    z,
                    c1,
                    n,
                    g,
                    kappa: None,
                    omegas,
                    within_hypotheses: true,
                    parameter,
                }
            }
        };
        out.push(datum);
    }
    Ok(out)
}

/// Singular values for `(m, 0, ..., 0)` with entry 1 at the removable corner `cell`:
/// one datum per `z` in `Z(tau_hat)` with `n = c(1,S) - z != 0`. Jack data require `gcd(m, n) = 1`.
pub fn predict(family: FamilyKind, tau: &Partition, cell: Cell, m: u32) -> Result<Vec<SingularDatum>, SingularError> {
    Ok(all_data(family, tau, cell, m)?
        .into_iter()
        .filter(|d| d.within_hypotheses)
        .collect())
}

/// Jack zeros of `C_{S,m}` with `gcd(m, n) > 1`, where singularity is not claimed.
pub fn predict_outside_hypotheses(tau: &Partition, cell: Cell, m: u32) -> Result<Vec<SingularDatum>, SingularError> {
    Ok(all_data(FamilyKind::Jack, tau, cell, m)?
        .into_iter()
        .filter(|d| !d.within_hypotheses)
        .collect())
}

/// Indices of the tableaux of `module` holding 1 at `cell`.
pub fn tableaux_at_corner(module: &SpechtModule, cell: Cell) -> Vec<usize> {
    (0..module.dim())
        .filter(|&s| module.tableau(s).cell_of(1) == cell)
        .collect()
}

/// `[(beta, S), (gamma, S')]` with `beta_i - gamma_i = m v_i` and
/// `c(r_beta(i), S) - c(r_gamma(i), S') = n v_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalPair {
    pub beta: Composition,
    pub tableau: usize,
    pub gamma: Composition,
    pub other_tableau: usize,
    pub v: Vec<i64>,
    pub m: u32,
    pub n: i64,
}

fn critical_vector(beta: &Composition, cb: &[i64], gamma: &Composition, cg: &[i64], m: u32, n: i64) -> Option<Vec<i64>> {
    let (rb, rg) = (beta.rank(), gamma.rank());
    let m = m as i64;
    let mut v = Vec::with_capacity(beta.n());
    for i in 0..beta.n() {
        let d = beta.get(i + 1) as i64 - gamma.get(i + 1) as i64;
        if d % m != 0 {
            return None;
        }
        let vi = d / m;
        if cb[rb[i] - 1] - cg[rg[i] - 1] != n * vi {
            return None;
        }
        v.push(vi);
    }
    Some(v)
}

fn search_pairs<'a>(
    module: &SpechtModule,
    alpha: &Composition,
    s: usize,
    m: u32,
    n: i64,
    candidates: impl Iterator<Item = &'a Composition>,
) -> Vec<CriticalPair> {
    let cb = module.tableau(s).content_vector();
    let mut out = Vec::new();
    for gamma in candidates {
        for s2 in 0..module.dim() {
            if gamma == alpha && s2 == s {
                continue;
            }
            let cg = module.tableau(s2).content_vector();
            if let Some(v) = critical_vector(alpha, &cb, gamma, &cg, m, n) {
                out.push(CriticalPair {
                    beta: alpha.clone(),
                    tableau: s,
                    gamma: gamma.clone(),
                    other_tableau: s2,
                    v,
                    m,
                    n,
                });
            }
        }
    }
    out
}

/// Every `(m, n)`-critical pair `[(alpha, S_s), (gamma, S')]` with `gamma ⊴ alpha`,
/// excluding the label itself.
pub fn find_critical_pairs(module: &SpechtModule, alpha: &Composition, s: usize, m: u32, n: i64) -> Vec<CriticalPair> {
    let lower = alpha.lower_set();
    search_pairs(module, alpha, s, m, n, lower.iter())
}

/// Same conditions against every `gamma` of the same degree, ordered or not.
pub fn find_same_degree_coincidences(
    module: &SpechtModule,
    alpha: &Composition,
    s: usize,
    m: u32,
    n: i64,
) -> Vec<CriticalPair> {
    let all = Composition::all_of_degree(alpha.n(), alpha.degree());
    search_pairs(module, alpha, s, m, n, all.iter())
}

/// Pairs `(a, b)` in `|a| <= 2m`, `|b| <= 2|n|` violating
/// `q^a t^b = 1 at (omega u^{-n/g}, u^{m/g})  <=>  (a, b) = (m v, n v)`.
pub fn unit_monomial_counterexamples(m: u32, n: i64, omega: RootOfUnity) -> Vec<(i64, i64)> {
    let m = m as i64;
    let g = m.gcd(&n);
    let mut bad = Vec::new();
    for a in -2 * m..=2 * m {
        for b in -2 * n.abs()..=2 * n.abs() {
            let is_one = a * (-n / g) + b * (m / g) == 0 && omega.pow_is_one(a);
            let on_line = a % m == 0 && b == n * (a / m);
            if is_one != on_line {
                bad.push((a, b));
            }
        }
    }
    bad
}

/// A singular polynomial's isotype: `sigma = tau_hat ∪ cell`, with `tableau` the
/// RSYT of shape `sigma` read off the eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isotype {
    pub sigma: Partition,
    pub cell: Cell,
    pub tableau: Tableau,
    pub contents: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsotypeError {
    #[error("criterion fails at i = {0}: the polynomial is not singular")]
    CriterionFails(usize),
    #[error("the polynomial is not an eigenvector of operator {0}")]
    NotEigen(usize),
    #[error("eigenvalue {0} matches no content in [-N, N]")]
    NoContent(usize),
    #[error("contents {contents:?} match no RSYT of a one-cell extension of {tau_hat:?}")]
    Inconsistent { contents: Vec<i64>, tau_hat: Vec<usize> },
}

/// `lambda` with `image = lambda p`, read at the largest (numeric) or first (exact) coefficient.
fn eigenvalue<F: Field>(p: &VVPoly<F>, image: &VVPoly<F>) -> Option<F> {
    let mut best: Option<(&Composition, usize, f64)> = None;
    for (alpha, v) in p.terms() {
        for (k, c) in v.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let norm = c.to_complex().map_or(1.0, |z| z.norm());
            if best.is_none_or(|(_, _, b)| norm > b) {
                best = Some((alpha, k, norm));
            }
            if F::EXACT {
                break;
            }
        }
        if F::EXACT && best.is_some() {
            break;
        }
    }
    let (alpha, k, _) = best?;
    let num = image.coefficient(alpha).map_or_else(F::zero, |v| v.get(k).clone());
    let lambda = num.try_div(p.coefficient(alpha)?.get(k)).ok()?;
    image.approx_eq(&p.scale(&lambda)).then_some(lambda)
}

fn isotype_from_contents(s: &Tableau, contents: Vec<i64>) -> Result<Isotype, IsotypeError> {
    let th = s.remove_entry_one();
    let inconsistent = || IsotypeError::Inconsistent {
        contents: contents.clone(),
        tau_hat: th.clone(),
    };
    if contents[1..] != s.content_vector()[1..] {
        return Err(inconsistent());
    }
    let cell = edge_profile(&th, s.shape().len())
        .cell_with_content(contents[0])
        .ok_or_else(inconsistent)?;
    let sigma = partition_with(&th, cell);
    if sigma.row_len(cell.row) != s.shape().row_len(cell.row) + 1 {
        return Err(inconsistent());
    }
    let tableau = tableau_from_contents(&sigma, &contents).map_err(|_| inconsistent())?;
    Ok(Isotype {
        sigma,
        cell,
        tableau,
        contents,
    })
}

fn read_contents<F: Field>(lambdas: &[F], n: usize, candidate: impl Fn(i64) -> F) -> Result<Vec<i64>, IsotypeError> {
    let n = n as i64;
    lambdas
        .iter()
        .enumerate()
        .map(|(i, l)| {
            (-n..=n)
                .find(|&c| candidate(c).approx_eq(l))
                .ok_or(IsotypeError::NoContent(i + 1))
        })
        .collect()
}

/// Checks `p xi_i = p phi_i` for all `i` and reads the contents `c(i, S')` off the
/// eigenvalues `t^{c(i, S')}`; `s` is the tableau of the label.
pub fn isotype_macdonald<F: Field>(
    ops: &MacdonaldOperators<F>,
    p: &VVPoly<F>,
    s: &Tableau,
) -> Result<Isotype, IsotypeError> {
    let n = p.n();
    let mut lambdas = Vec::with_capacity(n);
    for i in 1..=n {
        let xi = ops.xi(i, p);
        if !xi.approx_eq(&ops.phi(i, p)) {
            return Err(IsotypeError::CriterionFails(i));
        }
        lambdas.push(eigenvalue(p, &xi).ok_or(IsotypeError::NotEigen(i))?);
    }
    let t = ops.t().clone();
    let contents = read_contents(&lambdas, n, |c| t.try_powi(c).expect("t invertible"))?;
    isotype_from_contents(s, contents)
}

/// Jack analogue: `p U_i = p (1 + kappa omega_i)` with `omega_i = sum_{j > i} (i, j)`
/// acting diagonally, and eigenvalues `1 + kappa c(i, S')`.
pub fn isotype_jack<F: Field>(ops: &JackOperators<F>, p: &VVPoly<F>, s: &Tableau) -> Result<Isotype, IsotypeError> {
    let n = p.n();
    let kappa = ops.kappa().clone();
    let mut lambdas = Vec::with_capacity(n);
    for i in 1..=n {
        let u = ops.cherednik(i, p);
        let mut rhs = p.clone();
        for j in i + 1..=n {
            rhs.axpy(&kappa, &ops.group().transpose(i, j, p));
        }
        if !u.approx_eq(&rhs) {
            return Err(IsotypeError::CriterionFails(i));
        }
        lambdas.push(eigenvalue(p, &u).ok_or(IsotypeError::NotEigen(i))?);
    }
    let contents = read_contents(&lambdas, n, |c| F::one() + kappa.clone() * F::from_i64(c))?;
    isotype_from_contents(s, contents)
}

/// `"0"` for an exact zero, `"nonzero"` otherwise; a float for numeric checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Residual {
    Exact(String),
    Numeric(f64),
}

impl Residual {
    fn exact(zero: bool) -> Self {
        Residual::Exact(if zero { "0" } else { "nonzero" }.to_string())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Exact(s) => s == "0",
            Residual::Numeric(r) => *r <= NUMERIC_TOLERANCE,
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Exact(s) => f.write_str(s),
            Residual::Numeric(r) => write!(f, "{r:.3e}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Singular,
    NotSingular,
    /// Jack data with `gcd(m, n) > 1`: probed, never claimed.
    OutsideHypotheses,
    ConstructionFailed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub family: FamilyKind,
    pub shape: String,
    pub tableau: String,
    pub m: u32,
    pub n: i64,
    pub g: i64,
    pub z: i64,
    pub parameter: String,
    pub constructed_degree_terms: usize,
    pub residual: Residual,
    pub coefficient_vanishes: bool,
    pub isotype: Option<String>,
    pub attaching_cell: Option<String>,
    pub status: Status,
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    fn start(datum: &SingularDatum, tableau: &Tableau, parameter: String) -> Self {
        VerificationReport {
            family: datum.family,
            shape: datum.shape.to_string(),
            tableau: tableau.to_string(),
            m: datum.m,
            n: datum.n,
            g: datum.g,
            z: datum.z,
            parameter,
            constructed_degree_terms: 0,
            residual: Residual::exact(false),
            coefficient_vanishes: false,
            isotype: None,
            attaching_cell: None,
            status: Status::ConstructionFailed,
            error: None,
            elapsed_ms: 0,
        }
    }

    fn set_isotype(&mut self, iso: Result<Isotype, IsotypeError>) {
        match iso {
            Ok(iso) => {
                self.isotype = Some(iso.sigma.to_string());
                self.attaching_cell = Some(iso.cell.to_string());
            }
            Err(e) => self.error = Some(e.to_string()),
        }
    }

    /// Passing means singular with an isotype, or an honest probe outside the hypotheses.
    pub fn passed(&self) -> bool {
        match self.status {
            Status::Singular => self.isotype.is_some(),
            Status::OutsideHypotheses => true,
            _ => false,
        }
    }

    /// Sort key for canonical report order.
    pub fn key(&self) -> (FamilyKind, String, String, u32, i64, String) {
        (
            self.family,
            self.shape.clone(),
            self.tableau.clone(),
            self.m,
            self.n,
            self.parameter.clone(),
        )
    }
}

fn check_tableau(datum: &SingularDatum, module: &SpechtModule, s: usize) -> Result<Tableau, SingularError> {
    let tableau = module.tableau(s).clone();
    if module.shape() != &datum.shape || tableau.cell_of(1) != datum.cell {
        return Err(SingularError::WrongTableau {
            tableau: tableau.to_string(),
            cell: datum.cell,
            shape: datum.shape.to_string(),
        });
    }
    Ok(tableau)
}

fn dunkl_images_zero<F: Field>(p: &VVPoly<F>, d: impl Fn(usize, &VVPoly<F>) -> VVPoly<F>) -> bool {
    (1..=p.n()).all(|i| d(i, p).is_zero())
}

fn relative_residual<F: Field>(p: &VVPoly<F>, d: impl Fn(usize, &VVPoly<F>) -> VVPoly<F>) -> f64 {
    let scale = p.max_norm().max(f64::MIN_POSITIVE);
    (1..=p.n()).map(|i| d(i, p).max_norm() / scale).fold(0.0, f64::max)
}

fn verify_jack(datum: &SingularDatum, module: &Arc<SpechtModule>, s: usize, tableau: &Tableau) -> VerificationReport {
    let clock = Instant::now();
    let mut r = VerificationReport::start(datum, tableau, datum.parameter.clone());
    let kappa = datum.kappa.clone().expect("jack datum carries kappa");
    let contents = tableau.content_vector();
    r.coefficient_vanishes = coefficient_c_jack_from_contents(&contents, datum.m, &kappa).is_ok_and(|c| c.is_zero());
    let ops = JackOperators::new(module, kappa);
    match construct_jack(&ops, &Composition::leading_row(module.n(), datum.m), s) {
        Ok(p) => {
            r.constructed_degree_terms = p.num_terms();
            let zero = dunkl_images_zero(&p, |i, p| ops.dunkl(i, p));
            r.residual = Residual::exact(zero);
            r.status = match (datum.within_hypotheses, zero) {
                (false, _) => Status::OutsideHypotheses,
                (true, true) => Status::Singular,
                (true, false) => Status::NotSingular,
            };
            if zero {
                r.set_isotype(isotype_jack(&ops, &p, tableau));
            }
        }
        Err(e) => r.error = Some(e.to_string()),
    }
    r.elapsed_ms = clock.elapsed().as_millis() as u64;
    r
}

fn verify_mac_exact(datum: &SingularDatum, module: &Arc<SpechtModule>, s: usize, tableau: &Tableau) -> VerificationReport {
    let clock = Instant::now();
    let mut r = VerificationReport::start(datum, tableau, mac_point_string(RootOfUnity::ONE, datum.m, datum.n));
    let (q, t) = datum.exact_mac_point();
    let contents = tableau.content_vector();
    r.coefficient_vanishes = coefficient_c_mac_from_contents(&contents, datum.m, &q, &t).is_ok_and(|c| c.is_zero());
    let built = MacdonaldOperators::new(module, q, t)
        .map_err(|e| e.to_string())
        .and_then(|ops| {
            construct_macdonald(&ops, &Composition::leading_row(module.n(), datum.m), s)
                .map(|p| (ops, p))
                .map_err(|e| e.to_string())
        });
    match built {
        Ok((ops, p)) => {
            r.constructed_degree_terms = p.num_terms();
            let zero = dunkl_images_zero(&p, |i, p| ops.dunkl(i, p));
            r.residual = Residual::exact(zero);
            r.status = if zero { Status::Singular } else { Status::NotSingular };
            if zero {
                r.set_isotype(isotype_macdonald(&ops, &p, tableau));
            }
        }
        Err(e) => r.error = Some(e),
    }
    r.elapsed_ms = clock.elapsed().as_millis() as u64;
    r
}

/// A random `u` off the unit circle.
pub fn random_u<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let radius = rng.gen_range(1.2..1.8);
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(radius, angle)
}

/// `(omega u^{-n/g}, u^{m/g})` as complex numbers.
pub fn numeric_mac_point(omega: RootOfUnity, m: u32, n: i64, u: Complex64) -> (Approx, Approx) {
    let g = (m as i64).gcd(&n);
    let u = Approx(u);
    let q = omega.to_approx() * u.try_powi(-n / g).expect("u nonzero");
    let t = u.try_powi(m as i64 / g).expect("u nonzero");
    (q, t)
}

/// Floating-point projection loses too many digits once `m >= 4`, so this path uses the
/// pivoted dense solve.
fn verify_mac_numeric(
    datum: &SingularDatum,
    module: &Arc<SpechtModule>,
    s: usize,
    tableau: &Tableau,
    omega: RootOfUnity,
    rng: &mut ChaCha8Rng,
) -> VerificationReport {
    let clock = Instant::now();
    let mut r = VerificationReport::start(datum, tableau, mac_point_string(omega, datum.m, datum.n));
    let contents = tableau.content_vector();
    let alpha = Composition::leading_row(module.n(), datum.m);
    let mut worst = 0.0f64;
    let mut vanishes = true;
    for _ in 0..NUMERIC_SAMPLES {
        let (q, t) = numeric_mac_point(omega, datum.m, datum.n, random_u(rng));
        vanishes &= coefficient_c_mac_from_contents(&contents, datum.m, &q, &t).is_ok_and(|c| c.is_zero() || c.0.norm() < NUMERIC_TOLERANCE);
        let built = MacdonaldOperators::new(module, q, t)
            .map_err(|e| e.to_string())
            .and_then(|ops| construct_macdonald_oracle(&ops, &alpha, s).map(|p| (ops, p)).map_err(|e| e.to_string()));
        let (ops, p) = match built {
            Ok(x) => x,
            Err(e) => {
                r.error = Some(e);
                r.elapsed_ms = clock.elapsed().as_millis() as u64;
                return r;
            }
        };
        r.constructed_degree_terms = p.num_terms();
        worst = worst.max(relative_residual(&p, |i, p| ops.dunkl(i, p)));
        if r.isotype.is_none() && r.error.is_none() && worst <= NUMERIC_TOLERANCE {
            r.set_isotype(isotype_macdonald(&ops, &p, tableau));
        }
    }
    r.coefficient_vanishes = vanishes;
    r.residual = Residual::Numeric(worst);
    r.status = if worst <= NUMERIC_TOLERANCE {
        Status::Singular
    } else {
        Status::NotSingular
    };
    r.elapsed_ms = clock.elapsed().as_millis() as u64;
    r
}

fn verify_jack_numeric(datum: &SingularDatum, module: &Arc<SpechtModule>, s: usize, tableau: &Tableau) -> VerificationReport {
    let clock = Instant::now();
    let mut r = VerificationReport::start(datum, tableau, datum.parameter.clone());
    let kappa = Approx::from_rational(datum.kappa.as_ref().expect("jack datum carries kappa"));
    let contents = tableau.content_vector();
    r.coefficient_vanishes = coefficient_c_jack_from_contents(&contents, datum.m, &kappa)
        .is_ok_and(|c| c.0.norm() < NUMERIC_TOLERANCE);
    let ops = JackOperators::new(module, kappa);
    match construct_jack_oracle(&ops, &Composition::leading_row(module.n(), datum.m), s) {
        Ok(p) => {
            r.constructed_degree_terms = p.num_terms();
            let residual = relative_residual(&p, |i, p| ops.dunkl(i, p));
            let zero = residual <= NUMERIC_TOLERANCE;
            r.residual = Residual::Numeric(residual);
            r.status = match (datum.within_hypotheses, zero) {
                (false, _) => Status::OutsideHypotheses,
                (true, true) => Status::Singular,
                (true, false) => Status::NotSingular,
            };
            if zero {
                r.set_isotype(isotype_jack(&ops, &p, tableau));
            }
        }
        Err(e) => r.error = Some(e.to_string()),
    }
    r.elapsed_ms = clock.elapsed().as_millis() as u64;
    r
}

/// Constructs the polynomial of `(m, 0, ..., 0)` with tableau `s` at the datum and applies
/// every Dunkl operator. Jack data use exact rationals; Macdonald data with `g = 1` use
/// `Q(u)` at `(u^{-n}, u^m)`; `g > 1` gives one numeric report per allowed root of unity.
pub fn verify_singular(
    datum: &SingularDatum,
    module: &Arc<SpechtModule>,
    s: usize,
    seed: u64,
) -> Result<Vec<VerificationReport>, SingularError> {
    verify_singular_in(datum, module, s, seed, FieldMode::Exact)
}

/// [`verify_singular`] with a choice of arithmetic. Numeric Jack checks run at the
/// predicted `kappa` in floating point; numeric Macdonald checks sample `u` as for `g > 1`.
pub fn verify_singular_in(
    datum: &SingularDatum,
    module: &Arc<SpechtModule>,
    s: usize,
    seed: u64,
    mode: FieldMode,
) -> Result<Vec<VerificationReport>, SingularError> {
    let tableau = check_tableau(datum, module, s)?;
    Ok(match (datum.family, mode) {
        (FamilyKind::Jack, FieldMode::Exact) => vec![verify_jack(datum, module, s, &tableau)],
        (FamilyKind::Jack, FieldMode::Numeric) => vec![verify_jack_numeric(datum, module, s, &tableau)],
        (FamilyKind::Macdonald, FieldMode::Exact) if datum.g == 1 => {
            vec![verify_mac_exact(datum, module, s, &tableau)]
        }
        (FamilyKind::Macdonald, _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            datum
                .omegas
                .iter()
                .map(|&w| verify_mac_numeric(datum, module, s, &tableau, w, &mut rng))
                .collect()
        }
    })
}

/// Verifies `(datum, tableau index)` cases in parallel; reports come back in canonical order.
pub fn verify_batch(cases: &[(SingularDatum, usize)], seed: u64) -> Result<Vec<VerificationReport>, SingularError> {
    verify_batch_in(cases, seed, FieldMode::Exact)
}

/// [`verify_batch`] with a choice of arithmetic.
pub fn verify_batch_in(
    cases: &[(SingularDatum, usize)],
    seed: u64,
    mode: FieldMode,
) -> Result<Vec<VerificationReport>, SingularError> {
    let nested: Vec<Result<Vec<VerificationReport>, SingularError>> = cases
        .par_iter()
        .enumerate()
        .map(|(k, (datum, s))| {
            let module = SpechtModule::new(&datum.shape);
            verify_singular_in(datum, &module, *s, seed.wrapping_add(k as u64), mode)
        })
        .collect();
    let mut out = Vec::new();
    for r in nested {
        out.extend(r?);
    }
    out.sort_by_key(|r| r.key());
    Ok(out)
}

/// Every `(datum, tableau)` case for partitions of `n_vars`, degrees `1..=max_m`.
pub fn all_cases(family: FamilyKind, n_vars: usize, max_m: u32) -> Vec<(SingularDatum, usize)> {
    let mut out = Vec::new();
    for tau in Partition::all_of(n_vars) {
        let module = SpechtModule::new(&tau);
        for s in 0..module.dim() {
            let cell = module.tableau(s).cell_of(1);
            for m in 1..=max_m {
                for d in predict(family, &tau, cell, m).expect("cell of entry 1 is a corner") {
                    out.push((d, s));
                }
            }
        }
    }
    out
}

/// Result of the off-value control: `D_1` is nonzero and equals `C J_hat` (resp. the
/// normalized `C M_hat`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ControlOutcome {
    pub nonzero: bool,
    pub matches_coefficient: bool,
    pub others_vanish: bool,
}

impl ControlOutcome {
    pub fn passed(&self) -> bool {
        self.nonzero && self.matches_coefficient && self.others_vanish
    }
}

/// Repeats the construction with the parameter moved off the singular value:
/// `kappa + 1/7` for Jack, `(8/7 u^{-n}, u^m)` for Macdonald.
pub fn off_value_control(datum: &SingularDatum, module: &Arc<SpechtModule>, s: usize) -> Result<ControlOutcome, String> {
    check_tableau(datum, module, s).map_err(|e| e.to_string())?;
    let n_vars = module.n();
    let alpha = Composition::leading_row(n_vars, datum.m);
    let hat = Composition::leading_row(n_vars, datum.m - 1);
    let contents = module.tableau(s).content_vector();
    match datum.family {
        FamilyKind::Jack => {
            let kappa = datum.kappa.clone().expect("jack datum carries kappa") + rational(1, 7);
            let ops = JackOperators::new(module, kappa.clone());
            let p = construct_jack(&ops, &alpha, s).map_err(|e| e.to_string())?;
            let ph = construct_jack(&ops, &hat, s).map_err(|e| e.to_string())?;
            let c = coefficient_c_jack_from_contents(&contents, datum.m, &kappa).map_err(|e| e.to_string())?;
            let d1 = ops.dunkl(1, &p);
            Ok(ControlOutcome {
                nonzero: !d1.is_zero(),
                matches_coefficient: d1 == ph.scale(&c),
                others_vanish: (2..=n_vars).all(|i| ops.dunkl(i, &p).is_zero()),
            })
        }
        FamilyKind::Macdonald => {
            let u = RatFunc::var();
            let q = RatFunc::from_rational(&rational(8, 7)) * u.try_powi(-datum.n).expect("u invertible");
            let t = u.try_powi(datum.m as i64).expect("u invertible");
            let ops = MacdonaldOperators::new(module, q.clone(), t.clone()).map_err(|e| e.to_string())?;
            let p = construct_macdonald(&ops, &alpha, s).map_err(|e| e.to_string())?;
            let ph = construct_macdonald(&ops, &hat, s).map_err(|e| e.to_string())?;
            let c = coefficient_c_mac_leading_normalized(&contents, datum.m, &q, &t).map_err(|e| e.to_string())?;
            let d1 = ops.dunkl(1, &p);
            Ok(ControlOutcome {
                nonzero: !d1.is_zero(),
                matches_coefficient: d1 == ph.scale(&c),
                others_vanish: (2..=n_vars).all(|i| ops.dunkl(i, &p).is_zero()),
            })
        }
    }
}

/// The `D_1` eigen-coefficient for polynomials normalized by their leading coefficient:
/// `C_{S,m}(q,t) / (q^{m-1} t^{c(1,S)+N-1})`.
pub fn coefficient_c_mac_leading_normalized<F: Field>(
    contents: &[i64],
    m: u32,
    q: &F,
    t: &F,
) -> Result<F, crate::fields::FieldError> {
    let c = coefficient_c_mac_from_contents(contents, m, q, t)?;
    let mono = q.try_powi(m as i64 - 1)? * t.try_powi(contents[0] + contents.len() as i64 - 1)?;
    c.try_div(&mono)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn single_row_prediction() {
        for n in 2..=6usize {
            let tau = Partition::new(vec![n]).unwrap();
            for m in 1..=6u32 {
                let d = predict(FamilyKind::Jack, &tau, Cell::new(1, n), m).unwrap();
                if (m as i64).gcd(&(n as i64)) == 1 {
                    assert_eq!(d.len(), 1);
                    assert_eq!(d[0].n, n as i64);
                    assert_eq!(d[0].kappa, Some(rational(-(m as i64), n as i64)));
                } else {
                    assert!(d.is_empty());
                    assert_eq!(predict_outside_hypotheses(&tau, Cell::new(1, n), m).unwrap().len(), 1);
                }
            }
        }
    }

    #[test]
    fn jack_example_values() {
        let d = predict(FamilyKind::Jack, &part("5,5,5,4,4,2,2"), Cell::new(3, 5), 1).unwrap();
        let k: Vec<Rational> = d.iter().map(|d| d.kappa.clone().unwrap()).collect();
        assert_eq!(k, vec![rational(1, 3), rational(-1, 5), rational(-1, 9)]);
    }

    #[test]
    fn bad_corner_rejected() {
        assert!(predict(FamilyKind::Jack, &part("2,1"), Cell::new(1, 1), 1).is_err());
        assert!(predict(FamilyKind::Jack, &part("2,1"), Cell::new(1, 2), 0).is_err());
    }

    #[test]
    fn roots_for_m8_n12() {
        let r = allowed_roots(8, -12);
        assert_eq!(r, vec![RootOfUnity { k: 1, m: 8 }, RootOfUnity { k: 3, m: 8 }]);
        assert_eq!(mac_point_string(r[0], 8, -12), "(q,t) = (exp(2πi·1/8)u^3, u^2)");
        let z = r[1].to_approx().0;
        assert!((z - Complex64::from_polar(1.0, 3.0 * std::f64::consts::PI / 4.0)).norm() < 1e-12);
        assert_eq!(allowed_roots(3, 2), vec![RootOfUnity::ONE]);
    }

    #[test]
    fn unit_monomials_on_lattice() {
        for m in 1..=8u32 {
            for n in (-12..=12i64).filter(|&n| n != 0) {
                for w in allowed_roots(m, n) {
                    assert!(unit_monomial_counterexamples(m, n, w).is_empty(), "m={m} n={n} {w}");
                }
            }
        }
        // omega = 1 with g > 1 fails: (m/g, n/g) is a solution off the lattice
        assert!(!unit_monomial_counterexamples(8, -12, RootOfUnity::ONE).is_empty());
    }

    #[test]
    fn critical_pair_example() {
        let module = SpechtModule::new(&part("1,1"));
        let pairs = find_critical_pairs(&module, &Composition::new(&[1, 0]), 0, 1, -1);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].gamma, Composition::new(&[0, 1]));
        assert_eq!(pairs[0].v, vec![1, -1]);
    }

    #[test]
    fn no_critical_pairs_small() {
        for n_vars in 2..=4 {
            for (d, s) in all_cases(FamilyKind::Macdonald, n_vars, 3) {
                let module = SpechtModule::new(&d.shape);
                let alpha = Composition::leading_row(n_vars, d.m);
                assert!(find_critical_pairs(&module, &alpha, s, d.m, d.n).is_empty(), "{d}");
                let hat = Composition::leading_row(n_vars, d.m - 1);
                assert!(find_same_degree_coincidences(&module, &hat, s, d.m, d.n).is_empty(), "{d}");
            }
        }
    }

    #[test]
    fn jack_two_row_example() {
        let module = SpechtModule::new(&part("1,1"));
        let d = predict(FamilyKind::Jack, &part("1,1"), Cell::new(2, 1), 1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kappa, Some(rational(1, 2)));
        let ops = JackOperators::new(&module, rational(1, 2));
        let p = construct_jack(&ops, &Composition::new(&[1, 0]), 0).unwrap();
        let one = crate::specht::ModuleVector::basis(1, 0);
        let expected = VVPoly::monomial(Composition::new(&[1, 0]), one.clone())
            .sub(&VVPoly::monomial(Composition::new(&[0, 1]), one));
        assert_eq!(p, expected);
        let r = verify_singular(&d[0], &module, 0, 0).unwrap();
        assert_eq!(r[0].status, Status::Singular);
        assert_eq!(r[0].isotype.as_deref(), Some("2"));
    }

    #[test]
    fn jack_hook_example() {
        // tau = (2,1), first tableau (contents [1,-1,0]), kappa = -1/3
        let tau = part("2,1");
        let module = SpechtModule::new(&tau);
        let s = 0;
        let cell = module.tableau(s).cell_of(1);
        let d: Vec<_> = predict(FamilyKind::Jack, &tau, cell, 1)
            .unwrap()
            .into_iter()
            .filter(|d| d.kappa == Some(rational(-1, 3)))
            .collect();
        assert_eq!(d.len(), 1);
        let r = verify_singular(&d[0], &module, s, 0).unwrap();
        assert_eq!(r[0].residual, Residual::Exact("0".into()));
        let ops = JackOperators::new(&module, rational(-1, 3));
        let oracle = crate::jack::construct_jack_oracle(&ops, &Composition::new(&[1, 0, 0]), s).unwrap();
        assert!((1..=3).all(|i| ops.dunkl(i, &oracle).is_zero()));
    }

    #[test]
    fn macdonald_two_row_example() {
        let tau = part("1,1");
        let module = SpechtModule::new(&tau);
        let d = predict(FamilyKind::Macdonald, &tau, Cell::new(2, 1), 1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].n, d[0].z), (-2, 1));
        assert_eq!(d[0].parameter, "(q,t) = (u^2, u)");
        let r = verify_singular(&d[0], &module, 0, 0).unwrap();
        assert_eq!(r[0].residual, Residual::Exact("0".into()));
        assert_eq!(r[0].isotype.as_deref(), Some("2"));
        assert_eq!(r[0].attaching_cell.as_deref(), Some("1,2"));
        assert!(r[0].coefficient_vanishes);
    }

    #[test]
    fn numeric_modes_agree_with_exact() {
        for family in [FamilyKind::Jack, FamilyKind::Macdonald] {
            for (shape, cell) in [("2,1", Cell::new(2, 1)), ("3,1", Cell::new(1, 3))] {
                let tau = part(shape);
                let module = SpechtModule::new(&tau);
                for d in predict(family, &tau, cell, 1).unwrap() {
                    for s in tableaux_at_corner(&module, cell) {
                        let exact = verify_singular(&d, &module, s, 3).unwrap();
                        let numeric = verify_singular_in(&d, &module, s, 3, FieldMode::Numeric).unwrap();
                        assert!(matches!(numeric[0].residual, Residual::Numeric(_)));
                        assert_eq!(exact[0].status, numeric[0].status, "{d} S{s}");
                        assert_eq!(exact[0].isotype, numeric[0].isotype, "{d} S{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn numeric_g2_example() {
        // tau = (1,1), m = 2, n = -2: omega = -1
        let tau = part("1,1");
        let module = SpechtModule::new(&tau);
        let d = predict(FamilyKind::Macdonald, &tau, Cell::new(2, 1), 2).unwrap();
        assert_eq!((d[0].n, d[0].g), (-2, 2));
        let r = verify_singular(&d[0], &module, 0, 5).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].residual.is_zero(), "{:?}", r[0]);
        assert_eq!(r[0].isotype.as_deref(), Some("2"));
    }

    #[test]
    fn isotype_large_example() {
        let tau = part("5,5,4,4,4,3,2");
        let d = predict(FamilyKind::Macdonald, &tau, Cell::new(6, 3), 1).unwrap();
        let d5 = d.iter().find(|d| d.z == 5).unwrap();
        assert_eq!(d5.attaching_cell(), Cell::new(1, 6));
        assert_eq!(d5.expected_isotype(), part("6,5,4,4,4,2,2"));
    }

    #[test]
    fn controls_small() {
        for family in [FamilyKind::Jack, FamilyKind::Macdonald] {
            for (d, s) in all_cases(family, 3, 2) {
                let module = SpechtModule::new(&d.shape);
                let c = off_value_control(&d, &module, s).unwrap();
                assert!(c.passed(), "{d} S{s}: {c:?}");
            }
        }
    }

    #[test]
    fn isotype_rejects_non_singular() {
        let tau = part("2,1");
        let module = SpechtModule::new(&tau);
        let ops = JackOperators::new(&module, rational(5, 1009));
        let p = construct_jack(&ops, &Composition::new(&[1, 0, 0]), 0).unwrap();
        assert!(matches!(
            isotype_jack(&ops, &p, module.tableau(0)),
            Err(IsotypeError::CriterionFails(_))
        ));
    }

    #[test]
    fn batch_is_ordered() {
        let cases = all_cases(FamilyKind::Jack, 3, 2);
        let a = verify_batch(&cases, 1).unwrap();
        let mut rev = cases.clone();
        rev.reverse();
        let b = verify_batch(&rev, 1).unwrap();
        let strip = |v: &[VerificationReport]| -> Vec<_> {
            v.iter().map(|r| (r.key(), r.residual.clone(), r.isotype.clone())).collect()
        };
        assert_eq!(strip(&a), strip(&b));
        assert!(a.iter().all(|r| r.passed()));
    }
}
