use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::class::GrClass;
use super::context::GrContext;
use crate::error::{Error, Result};
use crate::symcore::poly::for_each_composition;
use crate::symcore::{
    generator, schur_expand_within, GeneratorKind, Monomial, MonomialSymPoly, Partition,
};

/// `xi_j = c_j(QV)`, the one-row Schur class `s_(j)`; zero outside `0..=n-kappa`.
pub fn class_xi(ctx: GrContext, j: i64) -> GrClass {
    if j < 0 || j > i64::from(ctx.rank_qv()) {
        return GrClass::zero(ctx, j);
    }
    GrClass::schur(ctx, Partition::row(j as u32))
}

/// `c_j(V^dual) = e_j`, the one-column class `s_(1^j)`; zero outside `0..=kappa+1`.
pub fn class_e(ctx: GrContext, j: i64) -> GrClass {
    if j < 0 || j > i64::from(ctx.rank_v()) {
        return GrClass::zero(ctx, j);
    }
    GrClass::schur(ctx, Partition::column(j as u32))
}

/// `c_1(V^dual)^s`.
pub fn class_e1_pow(ctx: GrContext, s: i64) -> Result<GrClass> {
    if s < 0 {
        return Err(Error::NegativeIndex { what: "power of c_1", value: s });
    }
    GrClass::schur(ctx, Partition::row(1)).pow(s as u32)
}

/// Rank of `Sym^d` of a rank `kappa+1` bundle: `C(d+kappa, kappa)`.
pub fn sym_power_rank(d: u32, kappa: u32) -> u64 {
    binomial(u64::from(d) + u64::from(kappa), u64::from(kappa))
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Total Chern class of `Sym^d V^dual` as a polynomial in the Chern roots
/// `x_0..x_kappa` of `V^dual`: the product of `1 + <a, x>` over all
/// exponent vectors `a` with `|a| = d`.
///
/// Monomials of degree above `max_degree`, or with an exponent above
/// `max_exp`, are dropped as the product is built.
pub fn sym_power_chern_roots(
    vars: usize,
    d: u32,
    max_degree: u32,
    max_exp: Option<u32>,
) -> Result<MonomialSymPoly> {
    if d < 1 {
        return Err(Error::InvalidParams(format!("symmetric power degree must be >= 1, got {d}")));
    }
    let mut roots: Vec<Vec<u32>> = Vec::new();
    for_each_composition(d, vars, &mut |a| roots.push(a.to_vec()));
    let cap = max_exp.unwrap_or(crate::symcore::poly::MAX_EXP);

    let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
    acc.insert(Monomial::from_exponents(&vec![0; vars])?, BigInt::one());

    for root in &roots {
        let mut next: HashMap<Monomial, BigInt> = HashMap::with_capacity(acc.len() * 2);
        for (m, c) in &acc {
            *next.entry(*m).or_default() += c;
            if m.degree(vars) >= max_degree {
                continue;
            }
            for (i, &a) in root.iter().enumerate() {
                if a == 0 || m.exponent(i) >= cap {
                    continue;
                }
                let bumped = m.bump(i);
                *next.entry(bumped).or_default() += c * BigInt::from(a);
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }

    let mut out = MonomialSymPoly::zero(vars)?;
    for (m, c) in acc {
        out.add_term(m, c);
    }
    Ok(out)
}

/// All Chern classes of `Sym^d V^dual` that can be nonzero in the Chow ring,
/// indexed by degree: `c_0 ..= c_{min(rank, dim)}`.
///
/// Returns both the Schur form (truncated to the rectangle) and the
/// monomial form in the Chern roots (truncated at exponent `n`), the latter
/// for the integration oracle.
pub fn chern_sym_power_all(ctx: GrContext, d: u32) -> Result<Vec<(GrClass, MonomialSymPoly)>> {
    let rank = sym_power_rank(d, ctx.kappa());
    let top = rank.min(u64::from(ctx.dim())) as u32;
    let total = sym_power_chern_roots(ctx.vars(), d, top, Some(ctx.oracle_max_exp()))?;
    (0..=top)
        .map(|j| {
            let poly = total.homogeneous_part(j);
            let schur = schur_expand_within(&poly, ctx.rect())?;
            let class = GrClass::homogeneous(ctx, schur, i64::from(j))?;
            Ok((class, poly))
        })
        .collect()
}

/// `c_j(Sym^d V^dual)`; zero for `j` above the rank or the dimension.
pub fn chern_sym_power(ctx: GrContext, d: u32, j: i64) -> Result<GrClass> {
    if j < 0 {
        return Err(Error::NegativeIndex { what: "Chern index", value: j });
    }
    if d < 1 {
        return Err(Error::InvalidParams(format!("symmetric power degree must be >= 1, got {d}")));
    }
    let rank = sym_power_rank(d, ctx.kappa());
    if j as u64 > rank || j > i64::from(ctx.dim()) {
        return Ok(GrClass::zero(ctx, j));
    }
    let total = sym_power_chern_roots(ctx.vars(), d, j as u32, Some(ctx.oracle_max_exp()))?;
    let poly = total.homogeneous_part(j as u32);
    GrClass::homogeneous(ctx, schur_expand_within(&poly, ctx.rect())?, j)
}

/// Monomial form of `xi_j = h_j` in the Chern roots; zero outside `0..=n-kappa`.
pub fn xi_poly(ctx: GrContext, j: i64) -> Result<MonomialSymPoly> {
    if j < 0 || j > i64::from(ctx.rank_qv()) {
        return MonomialSymPoly::zero(ctx.vars());
    }
    generator(GeneratorKind::Complete, j, ctx.vars())
}

/// Monomial form of `c_1(V^dual)^s = e_1^s`, truncated at exponent `n`.
pub fn e1_pow_poly(ctx: GrContext, s: u32) -> Result<MonomialSymPoly> {
    let e1 = generator(GeneratorKind::Elementary, 1, ctx.vars())?;
    e1.pow(s, Some(ctx.oracle_max_exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::schur_expand;

    fn ctx(n: u32, kappa: u32) -> GrContext {
        GrContext::new(n, kappa).unwrap()
    }

    fn s(c: GrContext, parts: &[i64]) -> GrClass {
        GrClass::schur(c, Partition::new(parts).unwrap())
    }

    #[test]
    fn class_xi_examples() {
        let c = ctx(3, 1);
        assert_eq!(class_xi(c, 0), GrClass::unit(c));
        assert_eq!(class_xi(c, 2), s(c, &[2]));
        assert!(class_xi(c, 3).is_zero());
        assert!(class_xi(c, -1).is_zero());
    }

    #[test]
    fn class_e1_pow_examples() {
        let c = ctx(3, 1);
        assert_eq!(class_e1_pow(c, 0).unwrap(), GrClass::unit(c));
        assert_eq!(class_e1_pow(c, 1).unwrap(), s(c, &[1]));
        assert_eq!(class_e1_pow(c, 2).unwrap(), s(c, &[2]).add(&s(c, &[1, 1])).unwrap());
        assert!(class_e1_pow(c, -1).is_err());
    }

    #[test]
    fn chern_of_first_symmetric_power_is_elementary() {
        let c = ctx(4, 2);
        for j in 0..=4 {
            assert_eq!(chern_sym_power(c, 1, j).unwrap(), class_e(c, j), "j = {j}");
        }
    }

    #[test]
    fn chern_sym_power_examples() {
        let c = ctx(3, 1);
        assert_eq!(chern_sym_power(c, 2, 1).unwrap(), s(c, &[1]).scale(&BigInt::from(3)));
        let expected = s(c, &[2])
            .scale(&BigInt::from(11))
            .add(&s(c, &[1, 1]).scale(&BigInt::from(21)))
            .unwrap();
        assert_eq!(chern_sym_power(c, 3, 2).unwrap(), expected);
        // rank of Sym^3 of a rank-2 bundle is 4
        assert!(chern_sym_power(c, 3, 5).unwrap().is_zero());
    }

    #[test]
    fn root_product_matches_hand_expansion() {
        // (1+3a)(1+2a+b)(1+a+2b)(1+3b), degree-2 part 11a^2 + 32ab + 11b^2
        let total = sym_power_chern_roots(2, 3, 4, None).unwrap();
        let deg2 = total.homogeneous_part(2);
        assert_eq!(deg2.coeff_of(&[2, 0]).unwrap(), BigInt::from(11));
        assert_eq!(deg2.coeff_of(&[1, 1]).unwrap(), BigInt::from(32));
        assert_eq!(deg2.coeff_of(&[0, 2]).unwrap(), BigInt::from(11));
        let top = schur_expand(&total.homogeneous_part(4)).unwrap();
        assert_eq!(top.coeff(&Partition::new(&[3, 1]).unwrap()), BigInt::from(18));
        assert_eq!(top.coeff(&Partition::new(&[2, 2]).unwrap()), BigInt::from(27));
    }

    #[test]
    fn all_matches_single() {
        let c = ctx(5, 2);
        let all = chern_sym_power_all(c, 2).unwrap();
        assert_eq!(all.len(), 7);
        for (j, (class, _)) in all.iter().enumerate() {
            assert_eq!(class, &chern_sym_power(c, 2, j as i64).unwrap());
        }
    }
}
