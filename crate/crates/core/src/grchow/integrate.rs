use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::chern::{chern_sym_power, class_e, class_e1_pow, class_xi, e1_pow_poly, sym_power_chern_roots, xi_poly};
use super::class::GrClass;
use super::context::GrContext;
use crate::error::{Error, Result};
use crate::symcore::{
    alternant_integrate, alternant_integrate_product, duality_pairing, generator, schur_vector_to_poly,
    GeneratorKind, MonomialSymPoly,
};

/// How an integral over the Grassmannian is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntegrationMode {
    /// Coefficient of the full rectangle in the Schur basis.
    #[default]
    Schur,
    /// Bialternant coefficient extraction in the Chern roots.
    Oracle,
    /// Both, failing on disagreement.
    Both,
}

impl FromStr for IntegrationMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "schur" => Ok(IntegrationMode::Schur),
            "oracle" => Ok(IntegrationMode::Oracle),
            "both" => Ok(IntegrationMode::Both),
            other => Err(format!("unknown integration mode `{other}` (schur|oracle|both)")),
        }
    }
}

impl fmt::Display for IntegrationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntegrationMode::Schur => "schur",
            IntegrationMode::Oracle => "oracle",
            IntegrationMode::Both => "both",
        })
    }
}

fn require_top_degree(ctx: GrContext, degree: Option<i64>) -> Result<()> {
    let dim = i64::from(ctx.dim());
    match degree {
        None => Err(Error::MixedDegree),
        Some(d) if d == dim => Ok(()),
        Some(d) => Err(Error::DegreeMismatch { expected: dim.to_string(), found: d.to_string() }),
    }
}

pub(crate) fn reconcile(schur: BigInt, oracle: BigInt, what: &dyn Fn() -> String) -> Result<BigInt> {
    if schur != oracle {
        return Err(Error::Assertion(format!(
            "Schur integration gave {schur} but the alternant oracle gave {oracle} for {}",
            what()
        )));
    }
    Ok(schur)
}

/// Integral of a top-degree class.
pub fn gr_integrate(x: &GrClass, mode: IntegrationMode) -> Result<BigInt> {
    let ctx = x.context();
    require_top_degree(ctx, x.degree())?;
    let schur = || x.coeff(&ctx.rect().full());
    let oracle = || -> Result<BigInt> {
        let p = schur_vector_to_poly(x.value(), ctx.vars(), Some(ctx.oracle_max_exp()))?;
        alternant_integrate(&p, ctx.kappa(), ctx.n())
    };
    match mode {
        IntegrationMode::Schur => Ok(schur()),
        IntegrationMode::Oracle => oracle(),
        IntegrationMode::Both => reconcile(schur(), oracle()?, &|| x.to_string()),
    }
}

/// A named factor of an integrand, with both its Schur and its monomial form.
#[derive(Clone, Debug)]
pub enum Factor {
    /// `xi_j = c_j(QV)`.
    Xi(i64),
    /// `c_j(V^dual)`.
    E(i64),
    /// `c_j(Sym^d V^dual)`.
    Cqe { d: u32, j: i64 },
    /// `c_1(V^dual)^s`.
    E1Pow(u32),
    Class(GrClass),
}

impl Factor {
    /// Codimension the factor is written in, even when the class vanishes.
    pub fn nominal_degree(&self) -> Option<i64> {
        match self {
            Factor::Xi(j) | Factor::E(j) | Factor::Cqe { j, .. } => Some(*j),
            Factor::E1Pow(s) => Some(i64::from(*s)),
            Factor::Class(c) => c.degree(),
        }
    }

    pub fn to_class(&self, ctx: GrContext) -> Result<GrClass> {
        match self {
            Factor::Xi(j) => Ok(class_xi(ctx, *j)),
            Factor::E(j) => Ok(class_e(ctx, *j)),
            Factor::Cqe { j, .. } if *j < 0 => Ok(GrClass::zero(ctx, *j)),
            Factor::Cqe { d, j } => chern_sym_power(ctx, *d, *j),
            Factor::E1Pow(s) => class_e1_pow(ctx, i64::from(*s)),
            Factor::Class(c) => {
                if c.context() != ctx {
                    return Err(Error::ContextMismatch);
                }
                Ok(c.clone())
            }
        }
    }

    /// Monomial form in the Chern roots, truncated at exponent `n`.
    pub fn to_poly(&self, ctx: GrContext) -> Result<MonomialSymPoly> {
        let v = ctx.vars();
        match self {
            Factor::Xi(j) => xi_poly(ctx, *j),
            Factor::E(j) if *j < 0 => MonomialSymPoly::zero(v),
            Factor::E(j) => generator(GeneratorKind::Elementary, *j, v),
            Factor::Cqe { j, .. } if *j < 0 => MonomialSymPoly::zero(v),
            Factor::Cqe { d, j } => {
                let total = sym_power_chern_roots(v, *d, *j as u32, Some(ctx.oracle_max_exp()))?;
                Ok(total.homogeneous_part(*j as u32))
            }
            Factor::E1Pow(s) => e1_pow_poly(ctx, *s),
            Factor::Class(c) => schur_vector_to_poly(c.value(), v, Some(ctx.oracle_max_exp())),
        }
    }
}

/// Checks that the factors' degrees add up to the dimension.
pub fn audit_degrees(ctx: GrContext, factors: &[Factor]) -> Result<()> {
    let mut total = 0i64;
    for f in factors {
        total += f.nominal_degree().ok_or(Error::MixedDegree)?;
    }
    require_top_degree(ctx, Some(total))
}

/// Integral of the product of `factors`.
///
/// The Schur route multiplies all but the last factor with the LR rule and
/// pairs the result against the last by rectangle duality. The oracle route
/// multiplies monomial forms and reads off the bialternant coefficient.
pub fn integrate_factors(ctx: GrContext, factors: &[Factor], mode: IntegrationMode) -> Result<BigInt> {
    audit_degrees(ctx, factors)?;
    let schur = || -> Result<BigInt> {
        let Some((last, rest)) = factors.split_last() else {
            return Ok(BigInt::zero());
        };
        let mut acc = GrClass::unit(ctx);
        for f in rest {
            acc = acc.mul(&f.to_class(ctx)?)?;
            if acc.is_zero() {
                return Ok(BigInt::zero());
            }
        }
        Ok(duality_pairing(acc.value(), last.to_class(ctx)?.value(), ctx.rect()))
    };
    let oracle = || -> Result<BigInt> {
        let Some((last, rest)) = factors.split_last() else {
            return Ok(BigInt::zero());
        };
        let mut acc = MonomialSymPoly::one(ctx.vars())?;
        for f in rest {
            acc = acc.mul(&f.to_poly(ctx)?, Some(ctx.oracle_max_exp()))?;
        }
        alternant_integrate_product(&acc, &last.to_poly(ctx)?, ctx.kappa(), ctx.n())
    };
    match mode {
        IntegrationMode::Schur => schur(),
        IntegrationMode::Oracle => oracle(),
        IntegrationMode::Both => reconcile(schur()?, oracle()?, &|| format!("{factors:?}")),
    }
}
