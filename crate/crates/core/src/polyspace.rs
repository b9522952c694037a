//! Vector-valued polynomials `P ⊗ V_tau`, composition combinatorics and the
//! generator actions on polynomials.
//!
//! Group elements act on the right by `p(x) g = p(x g)`: for `N = 3`,
//! `p(x) s_1 s_2 = p(x_3, x_1, x_2)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::fields::Field;
use crate::specht::{ModuleMatrix, ModuleVector, Representation};

type Parts = SmallVec<[u32; 8]>;

/// An exponent vector `alpha` in `N_0^N`.
///
/// The total order (degree, then `alpha+` lexicographically, then `alpha`
/// lexicographically) extends the `⊳` order on each degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    degree: u32,
    sorted: Parts,
    parts: Parts,
}

impl Composition {
    pub fn new(parts: &[u32]) -> Self {
        let parts: Parts = parts.iter().copied().collect();
        let mut sorted = parts.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        Composition {
            degree: parts.iter().sum(),
            sorted,
            parts,
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(&vec![0; n])
    }

    /// `(m, 0, ..., 0)`.
    pub fn leading_row(n: usize, m: u32) -> Self {
        let mut v = vec![0; n];
        v[0] = m;
        Self::new(&v)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Entry `i`, 1-based.
    pub fn get(&self, i: usize) -> u32 {
        self.parts[i - 1]
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The weakly decreasing rearrangement `alpha+`.
    pub fn sorted(&self) -> Composition {
        Self::new(&self.sorted)
    }

    pub fn is_partition(&self) -> bool {
        self.parts == self.sorted
    }

    /// `r_alpha(i) = #{j <= i : alpha_j >= alpha_i} + #{j > i : alpha_j > alpha_i}`, 1-based.
    pub fn rank(&self) -> Vec<usize> {
        let a = &self.parts;
        (0..a.len())
            .map(|i| {
                a[..=i].iter().filter(|&&x| x >= a[i]).count()
                    + a[i + 1..].iter().filter(|&&x| x > a[i]).count()
            })
            .collect()
    }

    /// `r_alpha(i)` for a single 1-based `i`.
    pub fn rank_of(&self, i: usize) -> usize {
        let a = &self.parts;
        let i = i - 1;
        a[..=i].iter().filter(|&&x| x >= a[i]).count() + a[i + 1..].iter().filter(|&&x| x > a[i]).count()
    }

    /// Weak dominance of equal-length, equal-degree vectors by partial sums.
    fn dominates_weakly(a: &[u32], b: &[u32]) -> bool {
        let (mut sa, mut sb) = (0u64, 0u64);
        for (x, y) in a.iter().zip(b) {
            sa += *x as u64;
            sb += *y as u64;
            if sa < sb {
                return false;
            }
        }
        true
    }

    /// `self ⊲ other`.
    pub fn triangular_less(&self, other: &Composition) -> bool {
        if self.degree != other.degree || self.n() != other.n() {
            return false;
        }
        if self.sorted != other.sorted {
            Self::dominates_weakly(&other.sorted, &self.sorted)
        } else {
            self.parts != other.parts && Self::dominates_weakly(&other.parts, &self.parts)
        }
    }

    /// Exchanges the entries at 1-based positions `i` and `j`.
    pub fn swapped(&self, i: usize, j: usize) -> Composition {
        let mut parts = self.parts.clone();
        parts.swap(i - 1, j - 1);
        Composition {
            degree: self.degree,
            sorted: self.sorted.clone(),
            parts,
        }
    }

    /// Adjacent transpositions `i_1, ..., i_k` that bubble `alpha` into `alpha+`:
    /// `alpha s_{i_1} ... s_{i_k} = alpha+`, each step fixing one inversion.
    pub fn bubble_word(&self) -> Vec<usize> {
        let mut a = self.parts.clone();
        let mut word = Vec::new();
        loop {
            let mut changed = false;
            for i in 0..a.len().saturating_sub(1) {
                if a[i] < a[i + 1] {
                    a.swap(i, i + 1);
                    word.push(i + 1);
                    changed = true;
                }
            }
            if !changed {
                return word;
            }
        }
    }

    /// `#{(i, j) : i < j, alpha_i < alpha_j}`.
    pub fn inversions(&self) -> usize {
        let a = &self.parts;
        (0..a.len())
            .map(|i| a[i + 1..].iter().filter(|&&x| a[i] < x).count())
            .sum()
    }

    /// The affine label map `(b_1, ..., b_N) -> (b_2, ..., b_N, b_1 + 1)`.
    pub fn affine_phi(&self) -> Composition {
        let mut parts: Vec<u32> = self.parts[1..].to_vec();
        parts.push(self.parts[0] + 1);
        Self::new(&parts)
    }

    /// All compositions of `degree` with `n` parts, in increasing total order.
    pub fn all_of_degree(n: usize, degree: u32) -> Vec<Composition> {
        fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if cur.len() + 1 == n {
                cur.push(left);
                out.push(Composition::new(cur));
                cur.pop();
                return;
            }
            for k in 0..=left {
                cur.push(k);
                rec(n, left - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if degree == 0 {
                out.push(Composition::new(&[]));
            }
            return out;
        }
        rec(n, degree, &mut Vec::with_capacity(n), &mut out);
        out.sort();
        out
    }

    /// `{gamma : gamma ⊴ self}` in increasing total order, ending with `self`.
    pub fn lower_set(&self) -> Vec<Composition> {
        Self::all_of_degree(self.n(), self.degree)
            .into_iter()
            .filter(|g| g == self || g.triangular_less(self))
            .collect()
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Composition {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Composition::new(&parts))
    }
}

/// A vector-valued polynomial: finite sum of `x^alpha ⊗ v`.
#[derive(Clone, PartialEq, Debug)]
pub struct VVPoly<F> {
    n: usize,
    dim: usize,
    terms: BTreeMap<Composition, ModuleVector<F>>,
}

impl<F: Field> VVPoly<F> {
    pub fn zero(n: usize, dim: usize) -> Self {
        VVPoly {
            n,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(alpha: Composition, v: ModuleVector<F>) -> Self {
        let mut p = Self::zero(alpha.n(), v.dim());
        p.add_term(alpha, &v);
        p
    }

    /// `1 ⊗ v`.
    pub fn constant(n: usize, v: ModuleVector<F>) -> Self {
        Self::monomial(Composition::zero(n), v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Composition, &ModuleVector<F>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &Composition) -> Option<&ModuleVector<F>> {
        self.terms.get(alpha)
    }

    /// The largest exponent in the total order, with its coefficient.
    pub fn leading(&self) -> Option<(&Composition, &ModuleVector<F>)> {
        self.terms.iter().next_back()
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(Composition::degree).collect();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// `self += x^alpha ⊗ v`, dropping the term if it cancels.
    pub fn add_term(&mut self, alpha: Composition, v: &ModuleVector<F>) {
        if v.is_zero() {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(c) => {
                c.add_assign(v);
                if c.is_zero() {
                    self.terms.remove(&alpha);
                }
            }
            None => {
                self.terms.insert(alpha, v.clone());
            }
        }
    }

    /// `self += c * x^alpha ⊗ v`.
    pub fn add_scaled_term(&mut self, alpha: Composition, c: &F, v: &ModuleVector<F>) {
        if c.is_zero() {
            return;
        }
        self.add_term(alpha, &v.scale(c));
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &F, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (a, v) in &other.terms {
            self.add_term(a.clone(), &v.scale(c));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, v) in &other.terms {
            out.add_term(a.clone(), v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&-F::one(), other);
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.n, self.dim);
        if c.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(a, v)| (a.clone(), v.scale(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    /// Applies a module map to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&ModuleVector<F>) -> ModuleVector<F>) -> Self {
        let mut out = Self::zero(self.n, self.dim);
        for (a, v) in &self.terms {
            out.add_term(a.clone(), &f(v));
        }
        out
    }

    /// Multiplies by `x_i`.
    pub fn mul_var(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n, self.dim);
        for (a, v) in &self.terms {
            let mut e = a.parts.to_vec();
            e[i - 1] += 1;
            out.terms.insert(Composition::new(&e), v.clone());
        }
        out
    }

    /// Removes coefficients below the numeric tolerance relative to `scale` from the terms
    /// free of `x_i`; other terms are left alone.
    pub fn drop_negligible_free_of(&self, i: usize, scale: f64) -> Self {
        let mut out = Self::zero(self.n, self.dim);
        for (a, v) in &self.terms {
            if a.parts[i - 1] != 0 {
                out.add_term(a.clone(), v);
                continue;
            }
            let kept: Vec<F> = v
                .coeffs()
                .iter()
                .map(|c| if c.negligible(scale) { F::zero() } else { c.clone() })
                .collect();
            out.add_term(a.clone(), &ModuleVector::from_coeffs(kept));
        }
        out
    }

    /// Divides by `x_i`; `None` unless every term contains `x_i`.
    pub fn div_var(&self, i: usize) -> Option<Self> {
        let mut out = Self::zero(self.n, self.dim);
        for (a, v) in &self.terms {
            let mut e = a.parts.to_vec();
            if e[i - 1] == 0 {
                return None;
            }
            e[i - 1] -= 1;
            out.terms.insert(Composition::new(&e), v.clone());
        }
        Some(out)
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.n, self.dim);
        for (a, v) in &self.terms {
            let k = a.get(i);
            if k == 0 {
                continue;
            }
            let mut e = a.parts.to_vec();
            e[i - 1] -= 1;
            out.add_scaled_term(Composition::new(&e), &F::from_i64(k as i64), v);
        }
        out
    }

    /// `p(x (i, j))`: exchanges exponents only, leaving coefficients alone.
    pub fn swap_variables(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.n, self.dim);
        for (a, v) in &self.terms {
            out.terms.insert(a.swapped(i, j), v.clone());
        }
        out
    }

    /// `(p - p(x (i, j))) / (x_i - x_j)`, coefficients untouched.
    pub fn divided_difference(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.n, self.dim);
        for (alpha, v) in &self.terms {
            for (e, sign) in divided_difference_monomial(alpha, i, j) {
                if sign > 0 {
                    out.add_term(e, v);
                } else {
                    out.add_term(e, &v.scale(&-F::one()));
                }
            }
        }
        out
    }

    /// `p(x (i, j)) ⊗ v M` for a module matrix `M`.
    pub fn transpose_with(&self, i: usize, j: usize, m: &ModuleMatrix<F>) -> Self {
        let mut out = Self::zero(self.n, self.dim);
        for (a, v) in &self.terms {
            out.add_term(a.swapped(i, j), &m.apply(v));
        }
        out
    }

    /// Largest coefficient modulus, for numeric fields.
    pub fn max_norm(&self) -> f64 {
        self.terms
            .values()
            .flat_map(|v| v.coeffs().iter())
            .filter_map(|c| c.to_complex())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Exact equality for exact fields; relative comparison for numeric ones.
    pub fn approx_eq(&self, other: &Self) -> bool {
        if F::EXACT {
            return self == other;
        }
        let scale = self.max_norm().max(other.max_norm()).max(1.0);
        self.sub(other).max_norm() <= crate::fields::zero_tolerance() * scale
    }

    /// Zero test; for numeric fields, relative to `scale`.
    pub fn negligible(&self, scale: f64) -> bool {
        if F::EXACT {
            return self.is_zero();
        }
        self.max_norm() <= crate::fields::zero_tolerance() * scale.max(f64::MIN_POSITIVE)
    }

    /// Human-readable rendering, highest term first.
    pub fn render(&self, tableau_names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (a, v) in self.terms.iter().rev() {
            for (k, c) in v.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    parts.push(format!("({c}) x^{a} ⊗ {}", tableau_names[k]));
                }
            }
        }
        parts.join(" + ")
    }
}

/// Terms of `(x^alpha - x^{alpha (i,j)}) / (x_i - x_j)` with signs.
fn divided_difference_monomial(alpha: &Composition, i: usize, j: usize) -> Vec<(Composition, i8)> {
    let a = alpha.get(i);
    let b = alpha.get(j);
    if a == b {
        return Vec::new();
    }
    let (lo, d, sign) = if a > b { (b, a - b, 1) } else { (a, b - a, -1) };
    // ±x_i^lo x_j^lo * sum_{k < d} x_i^{d-1-k} x_j^k
    let mut out = Vec::with_capacity(d as usize);
    for k in 0..d {
        let mut e = alpha.parts().to_vec();
        e[i - 1] = lo + d - 1 - k;
        e[j - 1] = lo + k;
        out.push((Composition::new(&e), sign));
    }
    out
}

/// Generator actions on `P ⊗ V_tau` for a Hecke representation.
pub struct HeckePolyAction<'a, F> {
    rep: &'a Representation<F>,
    t: F,
    tinv: F,
}

impl<'a, F: Field> HeckePolyAction<'a, F> {
    pub fn new(rep: &'a Representation<F>) -> Self {
        let t = match rep.family() {
            crate::specht::Family::Hecke(t) => t.clone(),
            crate::specht::Family::Group => panic!("Hecke polynomial action needs a Hecke representation"),
        };
        let tinv = t.try_inv().expect("t invertible");
        HeckePolyAction { rep, t, tinv }
    }

    pub fn rep(&self) -> &Representation<F> {
        self.rep
    }

    pub fn t(&self) -> &F {
        &self.t
    }

    /// `p T_i`: `(1-t) x_{i+1} (p - p s_i)/(x_i - x_{i+1}) ⊗ S + p(x s_i) ⊗ S τ(T_i)`.
    pub fn apply(&self, i: usize, p: &VVPoly<F>) -> VVPoly<F> {
        let one_minus_t = F::one() - &self.t;
        let mut out = VVPoly::zero(p.n, p.dim);
        for (alpha, v) in &p.terms {
            out.add_term(alpha.swapped(i, i + 1), &self.rep.apply(i, v));
            if alpha.get(i) == alpha.get(i + 1) {
                continue;
            }
            let cv = v.scale(&one_minus_t);
            let neg = cv.scale(&-F::one());
            for (mut e, sign) in divided_difference_monomial(alpha, i, i + 1) {
                let mut parts = e.parts.to_vec();
                parts[i] += 1;
                e = Composition::new(&parts);
                out.add_term(e, if sign > 0 { &cv } else { &neg });
            }
        }
        out
    }

    /// `p T_i^{-1} = t^{-1} p T_i - (1 - t^{-1}) p`.
    pub fn apply_inverse(&self, i: usize, p: &VVPoly<F>) -> VVPoly<F> {
        let mut out = self.apply(i, p).scale(&self.tinv);
        out.axpy(&(self.tinv.clone() - &F::one()), p);
        out
    }

    /// `(p ⊗ S) w = p(q x_N, x_1, ..., x_{N-1}) ⊗ S τ(T_1 ... T_{N-1})`.
    pub fn apply_w(&self, p: &VVPoly<F>, q: &F) -> VVPoly<F> {
        let mut out = VVPoly::zero(p.n, p.dim);
        for (alpha, v) in &p.terms {
            let a = alpha.parts();
            let mut e: Vec<u32> = a[1..].to_vec();
            e.push(a[0]);
            let c = q.try_powi(a[0] as i64).expect("nonnegative power");
            out.add_term(Composition::new(&e), &self.rep.apply_omega(v).scale(&c));
        }
        out
    }

    /// The polynomial Jucys-Murphy action: `phi_N = 1`, `p phi_i = t^{-1} ((p T_i) phi_{i+1}) T_i`.
    pub fn apply_phi(&self, i: usize, p: &VVPoly<F>) -> VVPoly<F> {
        if i == p.n {
            return p.clone();
        }
        let w = self.apply(i, p);
        let w = self.apply_phi(i + 1, &w);
        self.apply(i, &w).scale(&self.tinv)
    }
}

/// Transposition actions on `P ⊗ V_tau` for the symmetric group, with cached matrices.
pub struct GroupPolyAction<F> {
    n: usize,
    matrices: Vec<Vec<ModuleMatrix<F>>>,
}

impl<F: Field> GroupPolyAction<F> {
    pub fn new(rep: &Representation<F>) -> Self {
        let n = rep.module().n();
        let matrices = (1..=n)
            .map(|i| (i + 1..=n).map(|j| rep.transposition_matrix(i, j)).collect())
            .collect();
        GroupPolyAction { n, matrices }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `τ((i, j))`.
    pub fn matrix(&self, i: usize, j: usize) -> &ModuleMatrix<F> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        &self.matrices[i - 1][j - i - 1]
    }

    /// `p (i, j) = p(x (i, j)) ⊗ S τ((i, j))`.
    pub fn transpose(&self, i: usize, j: usize, p: &VVPoly<F>) -> VVPoly<F> {
        p.transpose_with(i, j, self.matrix(i, j))
    }
}

/// A random polynomial with up to `terms` monomials of partial degree `<= max_deg`
/// and small rational coefficients.
pub fn random_poly<R: rand::Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    dim: usize,
    max_deg: u32,
    terms: usize,
) -> VVPoly<crate::fields::Rational> {
    let mut p = VVPoly::zero(n, dim);
    for _ in 0..terms {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_deg)).collect();
        let v = ModuleVector::from_coeffs((0..dim).map(|_| crate::fields::random_rational(rng, 9)).collect());
        p.add_term(Composition::new(&e), &v);
    }
    p
}

#[cfg(test)]
pub(crate) mod test_support {
    pub use super::random_poly;
}
