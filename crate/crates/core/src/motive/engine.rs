use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::params::TripleParams;
use crate::error::{Error, Result};
use crate::grchow::integrate::reconcile;
use crate::grchow::{audit_degrees, chern_sym_power_all, class_xi, integrate_factors, Factor, GrClass, GrContext, IntegrationMode};
use crate::grchow::chern::xi_poly;
use crate::ppchow::{geom_series_inverse, homogeneous_part, pp_mul, PPClass};
use crate::symcore::{alternant_integrate_product, duality_pairing, MonomialSymPoly};

/// Evaluates the integrals `int xi_i xi_j c_k(QE) a` for one triple and one
/// class `a`, caching the pieces shared between them.
///
/// In `Both` mode every integral is evaluated by the Schur route and by the
/// alternant oracle, and any disagreement is an error.
pub struct TripleEngine {
    params: TripleParams,
    ctx: GrContext,
    mode: IntegrationMode,
    a: Factor,
    a_degree: i64,
    chern: Vec<(GrClass, MonomialSymPoly)>,
    a_class: OnceLock<Result<GrClass>>,
    a_poly: OnceLock<Result<MonomialSymPoly>>,
    xi_a: Vec<OnceLock<Result<GrClass>>>,
    xi_a_poly: Vec<OnceLock<Result<MonomialSymPoly>>>,
    integrals: AtomicU64,
    oracle_checks: AtomicU64,
}

/// Counters for what an engine evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub integrals: u64,
    pub oracle_checks: u64,
}

impl TripleEngine {
    /// Engine for `a = c_1(V^dual)^s` with `s` the excess dimension.
    pub fn new(params: &TripleParams, mode: IntegrationMode) -> Result<Self> {
        if params.s_excess < 0 {
            return Err(Error::NegativeExcess(params.s_excess));
        }
        Self::build(params, Factor::E1Pow(params.s_excess as u32), params.s_excess, mode)
    }

    /// Engine for an arbitrary homogeneous class `a` of degree `s_excess`.
    pub fn with_class(params: &TripleParams, a: &GrClass, mode: IntegrationMode) -> Result<Self> {
        if a.context() != params.context() {
            return Err(Error::ContextMismatch);
        }
        match a.degree() {
            Some(deg) if deg == params.s_excess => {}
            Some(deg) => {
                return Err(Error::DegreeMismatch {
                    expected: params.s_excess.to_string(),
                    found: deg.to_string(),
                })
            }
            None => return Err(Error::MixedDegree),
        }
        Self::build(params, Factor::Class(a.clone()), params.s_excess, mode)
    }

    fn build(params: &TripleParams, a: Factor, a_degree: i64, mode: IntegrationMode) -> Result<Self> {
        let ctx = params.context();
        let chern = chern_sym_power_all(ctx, params.d)?;
        let slots = ctx.rank_qv() as usize + 1;
        Ok(TripleEngine {
            params: params.clone(),
            ctx,
            mode,
            a,
            a_degree,
            chern,
            a_class: OnceLock::new(),
            a_poly: OnceLock::new(),
            xi_a: (0..slots).map(|_| OnceLock::new()).collect(),
            xi_a_poly: (0..slots).map(|_| OnceLock::new()).collect(),
            integrals: AtomicU64::new(0),
            oracle_checks: AtomicU64::new(0),
        })
    }

    pub fn params(&self) -> &TripleParams {
        &self.params
    }

    pub fn mode(&self) -> IntegrationMode {
        self.mode
    }

    pub fn stats(&self) -> EngineStats {
        EngineStats {
            integrals: self.integrals.load(Ordering::Relaxed),
            oracle_checks: self.oracle_checks.load(Ordering::Relaxed),
        }
    }

    fn a_class(&self) -> Result<&GrClass> {
        self.a_class
            .get_or_init(|| self.a.to_class(self.ctx))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn a_poly(&self) -> Result<&MonomialSymPoly> {
        self.a_poly
            .get_or_init(|| self.a.to_poly(self.ctx))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn xi_a(&self, i: usize) -> Result<&GrClass> {
        self.xi_a[i]
            .get_or_init(|| class_xi(self.ctx, i as i64).mul(self.a_class()?))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn xi_a_poly(&self, i: usize) -> Result<&MonomialSymPoly> {
        self.xi_a_poly[i]
            .get_or_init(|| xi_poly(self.ctx, i as i64)?.mul(self.a_poly()?, Some(self.ctx.oracle_max_exp())))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn chern_in_range(&self, k: i64) -> Option<&(GrClass, MonomialSymPoly)> {
        usize::try_from(k).ok().and_then(|k| self.chern.get(k))
    }

    /// `int xi_i * xi_j * c_k(QE) * a`. Indices outside the nonvanishing
    /// range give zero; the degrees must add up to the dimension regardless.
    pub fn integral(&self, i: i64, j: i64, k: i64) -> Result<BigInt> {
        let total = i + j + k + self.a_degree;
        if total != i64::from(self.ctx.dim()) {
            return Err(Error::Assertion(format!(
                "integrand xi_{i} xi_{j} c_{k} a has degree {total}, expected {} for {}",
                self.ctx.dim(),
                self.params
            )));
        }
        self.integrals.fetch_add(1, Ordering::Relaxed);
        let top = i64::from(self.ctx.rank_qv());
        let Some((c_class, c_poly)) = self.chern_in_range(k) else {
            return Ok(BigInt::zero());
        };
        if !(0..=top).contains(&i) || !(0..=top).contains(&j) {
            return Ok(BigInt::zero());
        }
        let schur = || -> Result<BigInt> {
            let prod = class_xi(self.ctx, j).mul(self.xi_a(i as usize)?)?;
            Ok(duality_pairing(prod.value(), c_class.value(), self.ctx.rect()))
        };
        let oracle = || -> Result<BigInt> {
            let rest = xi_poly(self.ctx, j)?.mul(c_poly, Some(self.ctx.oracle_max_exp()))?;
            alternant_integrate_product(self.xi_a_poly(i as usize)?, &rest, self.ctx.kappa(), self.ctx.n())
        };
        match self.mode {
            IntegrationMode::Schur => schur(),
            IntegrationMode::Oracle => oracle(),
            IntegrationMode::Both => {
                self.oracle_checks.fetch_add(1, Ordering::Relaxed);
                reconcile(schur()?, oracle()?, &|| format!("xi_{i} xi_{j} c_{k} a at {}", self.params))
            }
        }
    }

    /// `b_{p,q} = int xi_{n-kappa-p} xi_{n-kappa-q} c_{rk-n+p+q-1}(QE) a`.
    pub fn b_coeff(&self, p: u32, q: u32) -> Result<BigInt> {
        let top = self.ctx.rank_qv();
        if p > top || q > top {
            return Err(Error::InvalidParams(format!("b index ({p},{q}) outside 0..={top}")));
        }
        let (n, rk) = (i64::from(self.params.n), self.params.rank_qe as i64);
        let (p, q, top) = (i64::from(p), i64::from(q), i64::from(top));
        self.integral(top - p, top - q, rk - n + p + q - 1)
    }

    /// All `b_{p,q}`, `0 <= p, q <= n - kappa`.
    pub fn b_matrix(&self) -> Result<Vec<Vec<BigInt>>> {
        let size = self.ctx.rank_qv() + 1;
        let cells: Vec<(u32, u32)> = (0..size).flat_map(|p| (0..size).map(move |q| (p, q))).collect();
        let values: Vec<BigInt> = cells
            .par_iter()
            .map(|&(p, q)| self.b_coeff(p, q))
            .collect::<Result<_>>()?;
        Ok(values.chunks(size as usize).map(<[BigInt]>::to_vec).collect())
    }

    fn b_poly(&self, b: &[Vec<BigInt>]) -> PPClass {
        let n = self.params.n;
        PPClass::from_terms(
            n,
            b.iter().enumerate().flat_map(|(p, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(q, c)| ((p as u32, q as u32), BigRational::from_integer(c.clone())))
            }),
        )
    }

    /// `T_i(a) = sum_{p+q=i} b_{p,q} H^p (x) H^q`.
    pub fn t_class(&self, i: u32) -> Result<PPClass> {
        let top = self.ctx.rank_qv();
        let mut out = PPClass::zero(self.params.n);
        for p in 0..=top.min(i) {
            let q = i - p;
            if q > top {
                continue;
            }
            out.add_term(p, q, BigRational::from_integer(self.b_coeff(p, q)?));
        }
        Ok(out)
    }

    /// `sum a_i = (sum b_{p,q} H^p (x) H^q) / ((1 + d H(x)1)(1 + d 1(x)H))`.
    pub fn sum_ai(&self) -> Result<PPClass> {
        self.sum_ai_from(&self.b_matrix()?)
    }

    pub fn sum_ai_from(&self, b: &[Vec<BigInt>]) -> Result<PPClass> {
        let series = geom_series_inverse(self.params.d, self.params.n);
        let out = pp_mul(&self.b_poly(b), &series)?;
        if !out.is_integral() {
            return Err(Error::Assertion(format!("sum of a_i has a non-integral coefficient at {}", self.params)));
        }
        Ok(out)
    }

    /// `m = d * sum_{j=kappa-1}^{n-1} (-d)^j int xi_{n-kappa} xi_{j-kappa+1} c_{rk-2-j}(QE) a`,
    /// evaluated term by term through the generic factor integrator.
    pub fn m_direct(&self) -> Result<BigInt> {
        let (n, kappa, rk) = (i64::from(self.params.n), i64::from(self.params.kappa), self.params.rank_qe as i64);
        let minus_d = -BigInt::from(self.params.d);
        let a = self.a_class()?;
        let mut sum = BigInt::zero();
        for j in (kappa - 1)..=(n - 1) {
            let k = rk - 2 - j;
            let xi = [Factor::Xi(n - kappa), Factor::Xi(j - kappa + 1)];
            let term = match self.chern_in_range(k) {
                Some((c, _)) => {
                    let factors = [xi[0].clone(), xi[1].clone(), Factor::Class(c.clone()), Factor::Class(a.clone())];
                    integrate_factors(self.ctx, &factors, IntegrationMode::Schur)?
                }
                None => {
                    let factors = [xi[0].clone(), xi[1].clone(), Factor::Cqe { d: self.params.d, j: k }, Factor::Class(a.clone())];
                    audit_degrees(self.ctx, &factors).map_err(|e| Error::Assertion(format!("{e} at {}", self.params)))?;
                    BigInt::zero()
                }
            };
            sum += minus_d.pow(j as u32) * term;
        }
        Ok(BigInt::from(self.params.d) * sum)
    }

    /// `gamma = sum_j (-d)^j b_{0, n-1-j}`, the coefficient of `1 (x) H^{n-1}` in `a_{n-1}`.
    pub fn gamma_from_b(&self, b: &[Vec<BigInt>]) -> BigInt {
        let (n, kappa) = (self.params.n, self.params.kappa);
        let minus_d = -BigInt::from(self.params.d);
        let top = self.ctx.rank_qv();
        let mut gamma = BigInt::zero();
        for j in (kappa - 1)..=(n - 1) {
            let q = n - 1 - j;
            if q > top {
                continue;
            }
            gamma += minus_d.pow(j) * &b[0][q as usize];
        }
        gamma
    }
}

/// Result of evaluating `m` along every available route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MRoutes {
    pub direct: BigInt,
    pub from_b: BigInt,
    pub from_series: BigInt,
}

impl MRoutes {
    pub fn agreed(&self) -> Result<BigInt> {
        if self.direct != self.from_b || self.direct != self.from_series {
            return Err(Error::Assertion(format!(
                "m routes disagree: direct {}, via b {}, via a_(n-1) {}",
                self.direct, self.from_b, self.from_series
            )));
        }
        Ok(self.direct.clone())
    }
}

/// `m` via the direct sum, via `b`, and via the coefficient of `1 (x) H^{n-1}`
/// in `sum a_i`.
pub fn m_routes(engine: &TripleEngine, b: &[Vec<BigInt>], sum_ai: &PPClass) -> Result<MRoutes> {
    let p = engine.params();
    let d = BigInt::from(p.d);
    let series_gamma = sum_ai.coeff(0, p.n - 1);
    if !series_gamma.is_integer() {
        return Err(Error::Assertion("coefficient of 1 (x) H^(n-1) is not integral".into()));
    }
    Ok(MRoutes {
        direct: engine.m_direct()?,
        from_b: &d * engine.gamma_from_b(b),
        from_series: &d * series_gamma.to_integer(),
    })
}

/// `beta_i = (d/m) * [H^{n-1-i} (x) H^i] a_{n-1}`.
pub fn betas_from(params: &TripleParams, m: &BigInt, sum_ai: &PPClass) -> Result<Vec<BigRational>> {
    if m.is_zero() {
        return Err(Error::ZeroM(params.to_string()));
    }
    let a_top = homogeneous_part(sum_ai, params.n - 1);
    let scale = BigRational::new(BigInt::from(params.d), m.clone());
    let betas: Vec<BigRational> = (0..params.n)
        .map(|i| a_top.coeff(params.n - 1 - i, i) * &scale)
        .collect();
    if betas.iter().zip(betas.iter().rev()).any(|(x, y)| x != y) {
        return Err(Error::Assertion(format!("beta coefficients not palindromic at {params}")));
    }
    Ok(betas)
}

/// `(-1)^(kappa-1) m / d`, asserting divisibility.
pub fn osculating_count(params: &TripleParams, m: &BigInt) -> Result<BigInt> {
    let (q, r) = m.div_rem(&BigInt::from(params.d));
    if !r.is_zero() {
        return Err(Error::Assertion(format!("d does not divide m = {m} at {params}")));
    }
    Ok(if params.kappa % 2 == 1 { q } else { -q })
}

pub(crate) fn check_symmetric(params: &TripleParams, b: &[Vec<BigInt>]) -> Result<()> {
    for (p, row) in b.iter().enumerate() {
        for (q, v) in row.iter().enumerate() {
            if v != &b[q][p] {
                return Err(Error::Assertion(format!("b matrix not symmetric at ({p},{q}) for {params}")));
            }
        }
    }
    Ok(())
}

pub(crate) fn is_positive(x: &BigInt) -> bool {
    x.is_positive()
}
