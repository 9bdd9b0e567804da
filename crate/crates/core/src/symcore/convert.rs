//! Conversions between the Schur and monomial bases, and the bialternant
//! integration oracle.
//!
//! Everything here goes through the Vandermonde determinant or through
//! Gelfand-Tsetlin patterns; nothing calls into the Littlewood-Richardson
//! code.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::partition::{partitions_in_box, Partition};
use super::poly::{Monomial, MonomialSymPoly};
use super::schur::{Rect, SchurVector};
use crate::error::{Error, Result};

/// All permutations of `0..v` as (image vector, sign).
fn signed_permutations(v: usize) -> Vec<(Vec<u32>, i32)> {
    fn go(cur: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i as u32);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut perms = Vec::new();
    go(&mut Vec::new(), &mut vec![false; v], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let inversions = (0..v)
                .flat_map(|i| (i + 1..v).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}

/// The monomials `lambda + delta - sigma(delta)` with their signs, where
/// `delta = (v-1, ..., 1, 0)`; entries that would go negative are skipped.
///
/// The coefficient of `s_lambda` in a symmetric `p` is the signed sum of the
/// coefficients of `p` at these monomials (the coefficient of
/// `x^{lambda+delta}` in `p * Vandermonde`).
fn alternant_targets(lambda: &Partition, v: usize) -> Vec<(Monomial, i32)> {
    let shifted: Vec<i64> = (0..v).map(|i| lambda.part(i) as i64 + (v - 1 - i) as i64).collect();
    signed_permutations(v)
        .into_iter()
        .filter_map(|(perm, sign)| {
            let exps: Option<Vec<u32>> = shifted
                .iter()
                .zip(&perm)
                .map(|(&s, &p)| {
                    let delta = (v as i64 - 1) - p as i64;
                    u32::try_from(s - delta).ok()
                })
                .collect();
            let m = Monomial::from_exponents(&exps?).ok()?;
            Some((m, sign))
        })
        .collect()
}

fn alternant_coefficient(p: &MonomialSymPoly, lambda: &Partition) -> BigInt {
    let mut acc = BigInt::zero();
    for (m, sign) in alternant_targets(lambda, p.vars()) {
        if let Some(c) = p.coeff_ref(m) {
            if sign > 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
    }
    acc
}

/// Schur polynomial `s_lambda` in `v` variables, built from Gelfand-Tsetlin
/// patterns (semistandard tableaux).
pub fn schur_to_poly(lambda: &Partition, v: usize) -> Result<MonomialSymPoly> {
    if lambda.len() > v {
        return Err(Error::TooManyRows { partition: lambda.to_string(), vars: v });
    }
    let mut out = MonomialSymPoly::zero(v)?;
    let top: Vec<u32> = (0..v).map(|i| lambda.part(i)).collect();
    let mut exps = vec![0u32; v];
    let mut err = None;
    branch(&top, v, &mut exps, &mut |e| match Monomial::from_exponents(e) {
        Ok(m) => out.add_term(m, BigInt::one()),
        Err(x) => err = Some(x),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

// Strips the variable x_{k-1}: sums over `mu` interlacing `shape`.
fn branch(shape: &[u32], k: usize, exps: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if k == 0 {
        emit(exps);
        return;
    }
    let total: u32 = shape.iter().sum();
    if k == 1 {
        exps[0] = total;
        emit(exps);
        return;
    }
    // mu_i in [shape_{i+1}, shape_i] for i < k-1
    let mut mu = vec![0u32; k - 1];
    fn choose(
        i: usize,
        shape: &[u32],
        mu: &mut Vec<u32>,
        total: u32,
        k: usize,
        exps: &mut Vec<u32>,
        emit: &mut impl FnMut(&[u32]),
    ) {
        if i == mu.len() {
            let sub: u32 = mu.iter().sum();
            exps[k - 1] = total - sub;
            let next = mu.clone();
            branch(&next, k - 1, exps, emit);
            return;
        }
        for m in shape[i + 1]..=shape[i] {
            mu[i] = m;
            choose(i + 1, shape, mu, total, k, exps, emit);
        }
    }
    choose(0, shape, &mut mu, total, k, exps, emit);
}

/// Expansion of a symmetric polynomial in the Schur basis.
pub fn schur_expand(p: &MonomialSymPoly) -> Result<SchurVector> {
    p.ensure_symmetric()?;
    let v = p.vars();
    let mut out = SchurVector::zero();
    for d in p.degrees() {
        for lambda in partitions_in_box(d, v, d) {
            let c = alternant_coefficient(p, &lambda);
            out.add_term(lambda, c);
        }
    }
    Ok(out)
}

/// The part of the Schur expansion inside `rect`.
///
/// Only coefficients of `p` at monomials with every exponent at most
/// `rect.cols + vars - 1` are read, so `p` may already be truncated there.
pub fn schur_expand_within(p: &MonomialSymPoly, rect: Rect) -> Result<SchurVector> {
    p.ensure_symmetric()?;
    let v = p.vars();
    let rows = rect.rows.min(v);
    let mut out = SchurVector::zero();
    for d in p.degrees() {
        for lambda in partitions_in_box(d, rows, rect.cols) {
            let c = alternant_coefficient(p, &lambda);
            out.add_term(lambda, c);
        }
    }
    Ok(out)
}

fn expect_top_degree(p: &MonomialSymPoly, dim: u32) -> Result<()> {
    match p.degrees().as_slice() {
        [] => Ok(()),
        [d] if *d == dim => Ok(()),
        [d] => Err(Error::DegreeMismatch { expected: dim.to_string(), found: d.to_string() }),
        ds => Err(Error::DegreeMismatch { expected: dim.to_string(), found: format!("{ds:?}") }),
    }
}

fn check_grassmannian(kappa: u32, n: u32) -> Result<()> {
    if kappa >= n {
        return Err(Error::InvalidParams(format!("need kappa < n, got kappa={kappa}, n={n}")));
    }
    Ok(())
}

/// Integral over Gr(kappa+1, n+1) of a symmetric polynomial in the
/// `kappa+1` Chern roots of the dual tautological subbundle: the coefficient
/// of `x_0^n x_1^{n-1} ... x_kappa^{n-kappa}` in `p` times the Vandermonde.
pub fn alternant_integrate(p: &MonomialSymPoly, kappa: u32, n: u32) -> Result<BigInt> {
    check_grassmannian(kappa, n)?;
    let v = kappa as usize + 1;
    if p.vars() != v {
        return Err(Error::VariableMismatch { left: v, right: p.vars() });
    }
    p.ensure_symmetric()?;
    expect_top_degree(p, (kappa + 1) * (n - kappa))?;
    let rect = Partition::rectangle(v, n - kappa);
    Ok(alternant_coefficient(p, &rect))
}

/// `alternant_integrate(p * q)` without forming the product: only the
/// coefficients of `p * q` at the handful of target monomials are summed.
pub fn alternant_integrate_product(
    p: &MonomialSymPoly,
    q: &MonomialSymPoly,
    kappa: u32,
    n: u32,
) -> Result<BigInt> {
    check_grassmannian(kappa, n)?;
    let v = kappa as usize + 1;
    for x in [p, q] {
        if x.vars() != v {
            return Err(Error::VariableMismatch { left: v, right: x.vars() });
        }
        x.ensure_symmetric()?;
    }
    let dim = (kappa + 1) * (n - kappa);
    let (dp, dq) = match (p.degrees().as_slice(), q.degrees().as_slice()) {
        ([], _) | (_, []) => return Ok(BigInt::zero()),
        ([a], [b]) => (*a, *b),
        _ => return Err(Error::MixedDegree),
    };
    if dp + dq != dim {
        return Err(Error::DegreeMismatch { expected: dim.to_string(), found: (dp + dq).to_string() });
    }
    let rect = Partition::rectangle(v, n - kappa);
    let (small, large) = if q.term_count() <= p.term_count() { (q, p) } else { (p, q) };
    let mut acc = BigInt::zero();
    for (target, sign) in alternant_targets(&rect, v) {
        let mut part = BigInt::zero();
        for (u, cu) in small.iter() {
            if let Some(rest) = target.checked_sub(u, v) {
                if let Some(cr) = large.coeff_ref(rest) {
                    part += cu * cr;
                }
            }
        }
        if sign > 0 {
            acc += part;
        } else {
            acc -= part;
        }
    }
    Ok(acc)
}

/// Monomial form of a Schur vector in `v` variables; partitions with more
/// than `v` rows vanish there and are skipped.
pub fn schur_vector_to_poly(x: &SchurVector, v: usize, max_exp: Option<u32>) -> Result<MonomialSymPoly> {
    let mut out = MonomialSymPoly::zero(v)?;
    for (lambda, c) in x.iter() {
        if lambda.len() > v {
            continue;
        }
        let mut s = schur_to_poly(lambda, v)?;
        if let Some(e) = max_exp {
            s = s.truncate(e);
        }
        out = out.add(&s.scale(c))?;
    }
    Ok(out)
}
