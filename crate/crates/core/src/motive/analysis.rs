use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::engine::{betas_from, check_symmetric, m_routes, osculating_count, EngineStats, TripleEngine};
use super::params::TripleParams;
use crate::error::{Error, Result};
use crate::grchow::{chern_sym_power, gr_integrate, GrClass, IntegrationMode};
use crate::ppchow::PPClass;

/// Whether a general hypersurface has an osculating plane through every point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionBReport {
    pub params: TripleParams,
    /// `None` when `s_excess < 0`, where `m` is undefined.
    pub m: Option<BigInt>,
    pub holds: bool,
    /// `(-1)^(kappa-1) m / d`.
    pub osculating_count: Option<BigInt>,
    pub elv_sufficient: bool,
    pub intro_bound: bool,
}

/// Everything computed for one triple, with the audits that ran.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleAnalysis {
    pub condition: ConditionBReport,
    pub b_matrix: Option<Vec<Vec<BigInt>>>,
    pub sum_ai: Option<PPClass>,
    pub betas: Option<Vec<BigRational>>,
    pub stats: EngineStats,
}

impl TripleAnalysis {
    pub fn params(&self) -> &TripleParams {
        &self.condition.params
    }
}

/// Computes `b`, `sum a_i`, `m` (three routes), the osculating count and the
/// `beta_i`, asserting every integrality and symmetry property on the way.
/// For negative excess only the dimension data is filled in.
pub fn analyze(params: &TripleParams, mode: IntegrationMode) -> Result<TripleAnalysis> {
    let condition_shell = |m: Option<BigInt>, osc: Option<BigInt>| ConditionBReport {
        params: params.clone(),
        holds: m.as_ref().is_some_and(|m| !m.is_zero()),
        m,
        osculating_count: osc,
        elv_sufficient: params.elv_sufficient(),
        intro_bound: params.intro_bound(),
    };
    if params.s_excess < 0 {
        return Ok(TripleAnalysis {
            condition: condition_shell(None, None),
            b_matrix: None,
            sum_ai: None,
            betas: None,
            stats: EngineStats::default(),
        });
    }
    let engine = TripleEngine::new(params, mode)?;
    let b = engine.b_matrix()?;
    check_symmetric(params, &b)?;
    let sum_ai = engine.sum_ai_from(&b)?;
    if sum_ai.swap() != sum_ai {
        return Err(Error::Assertion(format!("sum of a_i not swap-symmetric at {params}")));
    }
    let m = m_routes(&engine, &b, &sum_ai)?.agreed()?;
    let osc = osculating_count(params, &m)?;
    let betas = if m.is_zero() { None } else { Some(betas_from(params, &m, &sum_ai)?) };
    Ok(TripleAnalysis {
        condition: condition_shell(Some(m), Some(osc)),
        b_matrix: Some(b),
        sum_ai: Some(sum_ai),
        betas,
        stats: engine.stats(),
    })
}

fn engine_for(params: &TripleParams, a: Option<&GrClass>, mode: IntegrationMode) -> Result<TripleEngine> {
    match a {
        Some(a) => TripleEngine::with_class(params, a, mode),
        None => TripleEngine::new(params, mode),
    }
}

/// `b_{p,q}` for the class `a` (default `c_1(V^dual)^s`).
pub fn b_coeff(params: &TripleParams, p: u32, q: u32, a: Option<&GrClass>, mode: IntegrationMode) -> Result<BigInt> {
    engine_for(params, a, mode)?.b_coeff(p, q)
}

pub fn b_matrix(params: &TripleParams, a: Option<&GrClass>, mode: IntegrationMode) -> Result<Vec<Vec<BigInt>>> {
    engine_for(params, a, mode)?.b_matrix()
}

pub fn t_class(params: &TripleParams, a: Option<&GrClass>, i: u32, mode: IntegrationMode) -> Result<PPClass> {
    engine_for(params, a, mode)?.t_class(i)
}

pub fn sum_ai(params: &TripleParams, a: Option<&GrClass>, mode: IntegrationMode) -> Result<PPClass> {
    engine_for(params, a, mode)?.sum_ai()
}

/// `m` for `a = c_1(V^dual)^s`, with all routes asserted equal.
pub fn m_value(params: &TripleParams, mode: IntegrationMode) -> Result<BigInt> {
    m_value_for(params, None, mode)
}

/// `m` for an arbitrary class `a` of degree `s_excess`.
pub fn m_value_for(params: &TripleParams, a: Option<&GrClass>, mode: IntegrationMode) -> Result<BigInt> {
    if params.s_excess < 0 {
        return Err(Error::NegativeExcess(params.s_excess));
    }
    let engine = engine_for(params, a, mode)?;
    let b = engine.b_matrix()?;
    let sum = engine.sum_ai_from(&b)?;
    m_routes(&engine, &b, &sum)?.agreed()
}

/// Condition (B): `s_excess >= 0` and `m != 0`.
pub fn condition_b(params: &TripleParams, mode: IntegrationMode) -> Result<ConditionBReport> {
    Ok(analyze(params, mode)?.condition)
}

pub fn betas(params: &TripleParams, mode: IntegrationMode) -> Result<Vec<BigRational>> {
    let analysis = analyze(params, mode)?;
    match (analysis.betas, analysis.condition.m) {
        (Some(b), _) => Ok(b),
        (None, None) => Err(Error::NegativeExcess(params.s_excess)),
        (None, Some(_)) => Err(Error::ZeroM(params.to_string())),
    }
}

/// Number of `kappa`-planes on a general hypersurface when the Fano variety
/// is expected to be finite: `int c_top(Sym^d V^dual)`.
pub fn plane_count(params: &TripleParams, mode: IntegrationMode) -> Result<BigInt> {
    if params.expected_fano_dim != 0 {
        return Err(Error::NonzeroFanoDimension(params.expected_fano_dim));
    }
    let ctx = params.context();
    let top = chern_sym_power(ctx, params.d, params.rank_qe as i64)?;
    gr_integrate(&top, mode)
}
