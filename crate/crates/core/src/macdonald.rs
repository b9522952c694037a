//! The `(q, t)` family: Cherednik operators `xi_i`, Dunkl operators, the affine
//! step, nonsymmetric Macdonald polynomials and the coefficient `C_{S,m}(q, t)`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::construct::{construct_by_linear_solve, construct_by_projection, normalize_leading, ConstructionError, EigenFamily};
use crate::fields::{Field, FieldError};
use crate::polyspace::{Composition, HeckePolyAction, VVPoly};
use crate::specht::{u_function, ModuleVector, Representation, SpechtError, SpechtModule};
use crate::tableaux::{check_corner, edge_profile, tau_hat, Cell, Partition, TableauError};

/// Cherednik and Dunkl operators on `P ⊗ V_tau` at fixed `(q, t)`.
pub struct MacdonaldOperators<F> {
    q: F,
    t: F,
    tinv: F,
    rep: Representation<F>,
}

impl<F: Field> MacdonaldOperators<F> {
    pub fn new(module: &Arc<SpechtModule>, q: F, t: F) -> Result<Self, SpechtError> {
        let rep = Representation::hecke(module, &t)?;
        let tinv = t.try_inv().map_err(SpechtError::BadParameter)?;
        Ok(MacdonaldOperators { q, t, tinv, rep })
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn t(&self) -> &F {
        &self.t
    }

    pub fn module(&self) -> &Arc<SpechtModule> {
        self.rep.module()
    }

    pub fn representation(&self) -> &Representation<F> {
        &self.rep
    }

    pub fn hecke(&self) -> HeckePolyAction<'_, F> {
        HeckePolyAction::new(&self.rep)
    }

    fn n_vars(&self) -> usize {
        self.module().n()
    }

    /// `p xi_i` with `xi_i = t^{i-N} T_{i-1}^{-1} ... T_1^{-1} w T_{N-1} ... T_i`.
    pub fn xi(&self, i: usize, p: &VVPoly<F>) -> VVPoly<F> {
        let h = self.hecke();
        let n = self.n_vars();
        let mut out = p.clone();
        for k in (1..i).rev() {
            out = h.apply_inverse(k, &out);
        }
        out = h.apply_w(&out, &self.q);
        for k in (i..n).rev() {
            out = h.apply(k, &out);
        }
        out.scale(&self.t.try_powi(i as i64 - n as i64).expect("t invertible"))
    }

    /// `D_N = (1 - xi_N)/x_N`, `D_i = t^{-1} T_i D_{i+1} T_i`.
    pub fn dunkl(&self, i: usize, p: &VVPoly<F>) -> VVPoly<F> {
        let n = self.n_vars();
        if i == n {
            let mut diff = p.sub(&self.xi(n, p));
            if !F::EXACT {
                diff = diff.drop_negligible_free_of(n, p.max_norm());
            }
            return diff
                .div_var(n)
                .expect("p - p xi_N is divisible by x_N");
        }
        let h = self.hecke();
        let inner = self.dunkl(i + 1, &h.apply(i, p));
        h.apply(i, &inner).scale(&self.tinv)
    }

    /// `p phi_i` through the polynomial Hecke action.
    pub fn phi(&self, i: usize, p: &VVPoly<F>) -> VVPoly<F> {
        self.hecke().apply_phi(i, p)
    }

    /// `(p ⊗ S) w`.
    pub fn w(&self, p: &VVPoly<F>) -> VVPoly<F> {
        self.hecke().apply_w(p, &self.q)
    }

    /// `zeta~_{alpha,S}(i) = q^{alpha_i} t^{c(r_alpha(i), S)}`.
    pub fn spectral_vector(&self, alpha: &Composition, s: usize) -> Vec<F> {
        let contents = self.module().tableau(s).content_vector();
        spectral_vector_mac(alpha, &contents, &self.q, &self.t)
    }

    /// `S τ(R_alpha)` with `R_alpha = (T_{i_1} ... T_{i_k})^{-1}` for the bubble-sort word.
    pub fn leading_vector(&self, alpha: &Composition, s: usize) -> ModuleVector<F> {
        let mut v = ModuleVector::basis(self.rep.dim(), s);
        for &i in alpha.bubble_word().iter().rev() {
            v = self.rep.apply_inverse(i, &v);
        }
        v
    }

    /// `M_{beta Phi, S} = x_N (M_{beta,S} w)`.
    pub fn affine_step(&self, p: &VVPoly<F>) -> VVPoly<F> {
        self.w(p).mul_var(self.n_vars())
    }
}

/// `q^{alpha_i} t^{c(r_alpha(i))}` for a content vector.
pub fn spectral_vector_mac<F: Field>(alpha: &Composition, contents: &[i64], q: &F, t: &F) -> Vec<F> {
    alpha
        .rank()
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            q.try_powi(alpha.parts()[i] as i64).expect("nonnegative power")
                * t.try_powi(contents[r - 1]).expect("t invertible")
        })
        .collect()
}

impl<F: Field> EigenFamily<F> for MacdonaldOperators<F> {
    fn n(&self) -> usize {
        self.n_vars()
    }

    fn dim(&self) -> usize {
        self.rep.dim()
    }

    fn apply_op(&self, i: usize, p: &VVPoly<F>) -> VVPoly<F> {
        self.xi(i, p)
    }

    fn spectral(&self, alpha: &Composition, s: usize) -> Vec<F> {
        self.spectral_vector(alpha, s)
    }

    fn seed(&self, alpha: &Composition, s: usize) -> ModuleVector<F> {
        self.leading_vector(alpha, s)
    }
}

/// `M_{alpha,S}` by spectral projection, scaled so the `x^alpha` coefficient is `S τ(R_alpha)`.
pub fn construct_macdonald<F: Field>(
    ops: &MacdonaldOperators<F>,
    alpha: &Composition,
    s: usize,
) -> Result<VVPoly<F>, ConstructionError> {
    let p = construct_by_projection(ops, alpha, s)?;
    normalize_leading(&p, alpha, &ops.leading_vector(alpha, s))
}

/// `M_{alpha,S}` by a dense solve of the joint eigenproblem.
pub fn construct_macdonald_oracle<F: Field>(
    ops: &MacdonaldOperators<F>,
    alpha: &Composition,
    s: usize,
) -> Result<VVPoly<F>, ConstructionError> {
    let p = construct_by_linear_solve(ops, alpha, s)?;
    normalize_leading(&p, alpha, &ops.leading_vector(alpha, s))
}

/// `1 - q^q_exp t^t_exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QTFactor {
    pub q_exp: i64,
    pub t_exp: i64,
}

impl QTFactor {
    pub fn evaluate<F: Field>(&self, q: &F, t: &F) -> Result<F, FieldError> {
        Ok(F::one() - q.try_powi(self.q_exp)? * t.try_powi(self.t_exp)?)
    }
}

impl fmt::Display for QTFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut mono = String::new();
        if self.q_exp != 0 {
            mono.push_str(&power("q", self.q_exp));
        }
        if self.t_exp != 0 {
            mono.push_str(&power("t", self.t_exp));
        }
        if mono.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "1 - {mono}")
        }
    }
}

fn power(var: &str, e: i64) -> String {
    match e {
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// `C_{S,m}(q, t) = q^a t^b prod(1 - q^m t^e) / prod(1 - q^m t^e')`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QTFactoredCoefficient {
    pub m: u32,
    pub q_power: i64,
    pub t_power: i64,
    pub numerator: Vec<QTFactor>,
    pub denominator: Vec<QTFactor>,
}

impl QTFactoredCoefficient {
    /// Cancels shared factors; both lists sorted by descending `t` exponent.
    pub fn reduced(&self) -> Self {
        let mut num = self.numerator.clone();
        let mut den = Vec::new();
        for d in &self.denominator {
            if let Some(pos) = num.iter().position(|x| x == d) {
                num.remove(pos);
            } else {
                den.push(*d);
            }
        }
        let key = |a: &QTFactor| (std::cmp::Reverse(a.t_exp), std::cmp::Reverse(a.q_exp));
        num.sort_by_key(key);
        den.sort_by_key(key);
        QTFactoredCoefficient {
            numerator: num,
            denominator: den,
            ..self.clone()
        }
    }

    pub fn evaluate<F: Field>(&self, q: &F, t: &F) -> Result<F, FieldError> {
        let mut num = q.try_powi(self.q_power)? * t.try_powi(self.t_power)?;
        for a in &self.numerator {
            num *= &a.evaluate(q, t)?;
        }
        let mut den = F::one();
        for a in &self.denominator {
            den *= &a.evaluate(q, t)?;
        }
        num.try_div(&den)
    }

    /// `t` exponents `e` of the reduced numerator: the zero set is `{q^m t^e = 1}`.
    pub fn zero_exponents(&self) -> Vec<i64> {
        let mut e: Vec<i64> = self
            .reduced()
            .numerator
            .iter()
            .filter(|f| f.t_exp != 0)
            .map(|f| f.t_exp)
            .collect();
        e.sort();
        e.dedup();
        e
    }
}

impl fmt::Display for QTFactoredCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pre = String::new();
        if self.q_power != 0 {
            pre.push_str(&power("q", self.q_power));
        }
        if self.t_power != 0 {
            pre.push_str(&power("t", self.t_power));
        }
        let prod = |fs: &[QTFactor]| fs.iter().map(|a| format!("({a})")).collect::<String>();
        write!(f, "{pre}{}", prod(&self.numerator))?;
        if !self.denominator.is_empty() {
            write!(f, " / ({})", prod(&self.denominator))?;
        }
        Ok(())
    }
}

fn mac_setup(tau: &Partition, cell: Cell) -> Result<(i64, usize, Vec<usize>), TableauError> {
    check_corner(tau, cell)?;
    Ok((cell.content(), tau.len(), tau_hat(tau, cell)))
}

/// Row-by-row form with `g(i) = 1 - q^m t^{c1 - i}`:
/// `q^{m-1} t^{c1+N-1} (1 - q^m t^{c1+l}) prod_i g(th_i - i + 1)/g(th_i - i)`.
pub fn coefficient_c_mac_rows(tau: &Partition, cell: Cell, m: u32) -> Result<QTFactoredCoefficient, TableauError> {
    let (c1, ell, th) = mac_setup(tau, cell)?;
    let m_ = m as i64;
    let g = |i: i64| QTFactor {
        q_exp: m_,
        t_exp: c1 - i,
    };
    let mut numerator = vec![QTFactor {
        q_exp: m_,
        t_exp: c1 + ell as i64,
    }];
    let mut denominator = Vec::new();
    for (k, &t) in th.iter().enumerate() {
        let i = k as i64 + 1;
        numerator.push(g(t as i64 - i + 1));
        denominator.push(g(t as i64 - i));
    }
    Ok(QTFactoredCoefficient {
        m,
        q_power: m_ - 1,
        t_power: c1 + tau.size() as i64 - 1,
        numerator,
        denominator,
    })
}

/// Telescoped form over the row breaks of `tau_hat`, reduced.
pub fn coefficient_c_mac(tau: &Partition, cell: Cell, m: u32) -> Result<QTFactoredCoefficient, TableauError> {
    let (c1, ell, th) = mac_setup(tau, cell)?;
    let seq = edge_profile(&th, ell).row_sequence();
    let m_ = m as i64;
    let mut numerator = vec![QTFactor {
        q_exp: m_,
        t_exp: c1 + ell as i64,
    }];
    let mut denominator = Vec::new();
    for w in seq.windows(2) {
        let t = th[w[0] - 1] as i64;
        numerator.push(QTFactor {
            q_exp: m_,
            t_exp: c1 - (t + 1 - w[0] as i64),
        });
        denominator.push(QTFactor {
            q_exp: m_,
            t_exp: c1 - (t + 1 - w[1] as i64),
        });
    }
    Ok(QTFactoredCoefficient {
        m,
        q_power: m_ - 1,
        t_power: c1 + tau.size() as i64 - 1,
        numerator,
        denominator,
    }
    .reduced())
}

/// `q^{m-1} t^{c_1} (1 - q^m t^{c_1}) prod_{j >= 2} u(q^m t^{c_1 - c_j})` from a content vector.
pub fn coefficient_c_mac_from_contents<F: Field>(contents: &[i64], m: u32, q: &F, t: &F) -> Result<F, FieldError> {
    let c1 = contents[0];
    let qm = q.try_powi(m as i64)?;
    let mut acc = q.try_powi(m as i64 - 1)? * t.try_powi(c1)? * (F::one() - qm.clone() * t.try_powi(c1)?);
    for &cj in &contents[1..] {
        acc *= &u_function(t, &(qm.clone() * t.try_powi(c1 - cj)?))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{random_generic_qt, rational, RatFunc, Rational};
    use crate::polyspace::test_support::random_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(p: &[u32]) -> Composition {
        Composition::new(p)
    }

    fn ops(shape: &str, q: Rational, t: Rational) -> MacdonaldOperators<Rational> {
        MacdonaldOperators::new(&SpechtModule::new(&shape.parse().unwrap()), q, t).unwrap()
    }

    fn generic(rng: &mut ChaCha8Rng) -> (Rational, Rational) {
        random_generic_qt(rng)
    }

    #[test]
    fn xi_on_constants() {
        let (q, t) = (rational(3, 7), rational(-5, 2));
        for shape in ["3", "2,1", "1,1,1", "2,2", "3,1"] {
            let o = ops(shape, q.clone(), t.clone());
            for (s, tab) in o.module().tableaux().iter().enumerate() {
                let p = VVPoly::constant(o.n(), ModuleVector::basis(o.dim(), s));
                for i in 1..=o.n() {
                    assert_eq!(o.xi(i, &p), p.scale(&t.try_powi(tab.content(i)).unwrap()));
                }
                assert!(o.dunkl(o.n(), &p).is_zero());
            }
        }
    }

    #[test]
    fn operators_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for n in 2..=4 {
            for shape in Partition::all_of(n) {
                let (q, t) = generic(&mut rng);
                let o = MacdonaldOperators::new(&SpechtModule::new(&shape), q, t).unwrap();
                let p = random_poly(&mut rng, n, o.dim(), 2, 2);
                for i in 1..=n {
                    for j in i + 1..=n {
                        assert_eq!(o.xi(i, &o.xi(j, &p)), o.xi(j, &o.xi(i, &p)), "{shape} xi {i} {j}");
                        assert_eq!(o.dunkl(i, &o.dunkl(j, &p)), o.dunkl(j, &o.dunkl(i, &p)), "{shape} D {i} {j}");
                    }
                }
            }
        }
    }

    #[test]
    fn projection_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for n in 2..=3 {
            for shape in Partition::all_of(n) {
                let (q, t) = generic(&mut rng);
                let o = MacdonaldOperators::new(&SpechtModule::new(&shape), q, t).unwrap();
                for d in 0..=2 {
                    for alpha in Composition::all_of_degree(n, d) {
                        for s in 0..o.dim() {
                            let a = construct_macdonald(&o, &alpha, s).unwrap();
                            let b = construct_macdonald_oracle(&o, &alpha, s).unwrap();
                            assert_eq!(a, b, "{shape} {alpha} S{s}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn two_variable_example() {
        let (q, t) = (rational(2, 3), rational(5, 7));
        let o = ops("1,1", q, t);
        let m = construct_macdonald(&o, &c(&[1, 0]), 0).unwrap();
        assert_eq!(m.num_terms(), 2);
        assert_eq!(m.coefficient(&c(&[1, 0])), Some(&ModuleVector::basis(1, 0)));
        let z = o.spectral_vector(&c(&[1, 0]), 0);
        for i in 1..=2 {
            assert_eq!(o.xi(i, &m), m.scale(&z[i - 1]));
        }
    }

    #[test]
    fn affine_step_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for shape in Partition::all_of(3) {
            let (q, t) = generic(&mut rng);
            let o = MacdonaldOperators::new(&SpechtModule::new(&shape), q.clone(), t).unwrap();
            for s in 0..o.dim() {
                let zero = construct_macdonald(&o, &c(&[0, 0, 0]), s).unwrap();
                let step = o.affine_step(&zero);
                let expected = VVPoly::monomial(c(&[0, 0, 1]), o.representation().apply_omega(&ModuleVector::basis(o.dim(), s)));
                assert_eq!(step, expected);
                for m in 1..=2u32 {
                    let hat = c(&[m - 1, 0, 0]);
                    let prime = c(&[0, 0, m]);
                    assert_eq!(hat.affine_phi(), prime);
                    let mh = construct_macdonald(&o, &hat, s).unwrap();
                    let mp = construct_macdonald(&o, &prime, s).unwrap();
                    let stepped = o.affine_step(&mh);
                    let (k, v) = mp.leading().map(|(_, v)| v.first_nonzero().unwrap()).unwrap();
                    let scale = v.clone() / stepped.coefficient(&prime).unwrap().get(k).clone();
                    assert_eq!(stepped.scale(&scale), mp);
                    let zh = o.spectral_vector(&hat, s);
                    let mut shifted: Vec<Rational> = zh[1..].to_vec();
                    shifted.push(q.clone() * &zh[0]);
                    assert_eq!(o.spectral_vector(&prime, s), shifted);
                }
            }
        }
    }

    #[test]
    fn coefficient_example_factors() {
        let tau: Partition = "5,5,4,4,4,3,2".parse().unwrap();
        let cf = coefficient_c_mac(&tau, Cell::new(6, 3), 2).unwrap();
        let f = |e| QTFactor { q_exp: 2, t_exp: e };
        assert_eq!(cf.numerator, vec![f(4), f(0), f(-5), f(-8)]);
        assert_eq!(cf.denominator, vec![f(2), f(-2), f(-6)]);
        assert_eq!(cf.q_power, 1);
        assert_eq!(cf.t_power, -3 + 27 - 1);
        let col = coefficient_c_mac(&"1,1".parse().unwrap(), Cell::new(2, 1), 1).unwrap();
        assert_eq!(col.zero_exponents(), vec![-2]);
    }

    #[test]
    fn forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for n in 2..=7 {
            for tau in Partition::all_of(n) {
                let module = SpechtModule::new(&tau);
                for tab in module.tableaux() {
                    let cell = tab.cell_of(1);
                    for m in 1..=3 {
                        let (q, t) = generic(&mut rng);
                        let a = coefficient_c_mac(&tau, cell, m).unwrap().evaluate(&q, &t).unwrap();
                        let b = coefficient_c_mac_rows(&tau, cell, m).unwrap().evaluate(&q, &t).unwrap();
                        let c = coefficient_c_mac_from_contents(&tab.content_vector(), m, &q, &t).unwrap();
                        assert_eq!(a, b);
                        assert_eq!(a, c, "{tau} {tab} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn lowering_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        for n in 2..=3 {
            for tau in Partition::all_of(n) {
                let module = SpechtModule::new(&tau);
                for s in 0..module.dim() {
                    let (q, t) = generic(&mut rng);
                    let o = MacdonaldOperators::new(&module, q.clone(), t.clone()).unwrap();
                    let contents = module.tableau(s).content_vector();
                    for m in 1..=2 {
                        let alpha = Composition::leading_row(n, m);
                        let hat = Composition::leading_row(n, m - 1);
                        let ma = construct_macdonald(&o, &alpha, s).unwrap();
                        let mh = construct_macdonald(&o, &hat, s).unwrap();
                        for i in 2..=n {
                            assert!(o.dunkl(i, &ma).is_zero());
                        }
                        // leading coefficients fixed to S, so the q^a t^b prefactor drops out
                        let cval = coefficient_c_mac_from_contents(&contents, m, &q, &t).unwrap();
                        let monomial = q.try_powi(m as i64 - 1).unwrap()
                            * t.try_powi(contents[0] + n as i64 - 1).unwrap();
                        let expected = cval.try_div(&monomial).unwrap();
                        assert_eq!(o.dunkl(1, &ma), mh.scale(&expected), "{tau} S{s} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn d1_transfer_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        for tau in Partition::all_of(3) {
            let module = SpechtModule::new(&tau);
            for s in 0..module.dim() {
                let (q, t) = generic(&mut rng);
                let o = MacdonaldOperators::new(&module, q.clone(), t.clone()).unwrap();
                let contents = module.tableau(s).content_vector();
                for m in 1..=2u32 {
                    let ma = construct_macdonald(&o, &Composition::leading_row(3, m), s).unwrap();
                    let mp = construct_macdonald(&o, &c(&[0, 0, m]), s).unwrap();
                    let h = o.hecke();
                    let mut rhs = o.dunkl(3, &mp);
                    for k in (1..3).rev() {
                        rhs = h.apply(k, &rhs);
                    }
                    let qm = q.try_powi(m as i64).unwrap();
                    let mut factor = t.try_powi(-2).unwrap();
                    for j in 1..3 {
                        factor *= &u_function(&t, &(qm.clone() * t.try_powi(contents[0] - contents[j]).unwrap())).unwrap();
                    }
                    // both sides are normalized independently, so they agree up to a scalar
                    let lhs = o.dunkl(1, &ma);
                    let rhs = rhs.scale(&factor);
                    let (lead, lv) = lhs.leading().unwrap();
                    let (k, a) = lv.first_nonzero().unwrap();
                    let ratio = a.clone() / rhs.coefficient(lead).unwrap().get(k).clone();
                    assert_eq!(rhs.scale(&ratio), lhs);
                }
            }
        }
    }

    #[test]
    fn dunkl_singular_example() {
        // tau = (1,1), (q, t) = (u^2, u): u(q/t) = 0
        let u = RatFunc::var();
        let o = MacdonaldOperators::new(&SpechtModule::new(&"1,1".parse().unwrap()), u.clone() * &u, u).unwrap();
        let m = construct_macdonald(&o, &c(&[1, 0]), 0).unwrap();
        assert!(!m.is_zero());
        assert!(o.dunkl(1, &m).is_zero());
        assert!(o.dunkl(2, &m).is_zero());
    }
}
