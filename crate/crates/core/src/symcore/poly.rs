use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;
const SLOT_BITS: u32 = 8;
const SLOT_MASK: u64 = 0xff;
pub const MAX_EXP: u32 = 255;

/// Exponent vector packed one byte per variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u64);

impl Monomial {
    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::VariableCount(exps.len()));
        }
        let mut key = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            if e > MAX_EXP {
                return Err(Error::ExponentOverflow { max: MAX_EXP });
            }
            key |= (e as u64) << (SLOT_BITS * i as u32);
        }
        Ok(Monomial(key))
    }

    #[inline]
    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> (SLOT_BITS * i as u32)) & SLOT_MASK) as u32
    }

    pub fn exponents(self, vars: usize) -> Vec<u32> {
        (0..vars).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    fn max_slot(self, vars: usize) -> u32 {
        (0..vars).map(|i| self.exponent(i)).max().unwrap_or(0)
    }

    pub fn degree(self, vars: usize) -> u32 {
        (0..vars).map(|i| self.exponent(i)).sum()
    }

    /// Exponents sorted into weakly decreasing order.
    pub fn sorted(self, vars: usize) -> Monomial {
        let mut e = self.exponents(vars);
        e.sort_unstable_by(|a, b| b.cmp(a));
        Monomial::from_exponents(&e).expect("re-packing valid exponents")
    }

    /// Adds one to exponent `i`; the caller guarantees it stays below 256.
    #[inline]
    pub(crate) fn bump(self, i: usize) -> Monomial {
        debug_assert!(self.exponent(i) < MAX_EXP);
        Monomial(self.0 + (1u64 << (SLOT_BITS * i as u32)))
    }

    /// `self - other`, or `None` if some slot would go negative.
    #[inline]
    pub fn checked_sub(self, other: Monomial, vars: usize) -> Option<Monomial> {
        for i in 0..vars {
            if self.exponent(i) < other.exponent(i) {
                return None;
            }
        }
        Some(Monomial(self.0 - other.0))
    }
}

/// A polynomial in `vars` variables with integer coefficients in the monomial
/// basis. Operations that need symmetry check it explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSymPoly {
    vars: usize,
    terms: HashMap<Monomial, BigInt>,
}

impl MonomialSymPoly {
    pub fn zero(vars: usize) -> Result<Self> {
        if vars == 0 || vars > MAX_VARS {
            return Err(Error::VariableCount(vars));
        }
        Ok(MonomialSymPoly { vars, terms: HashMap::new() })
    }

    pub fn one(vars: usize) -> Result<Self> {
        let mut p = Self::zero(vars)?;
        p.terms.insert(Monomial(0), BigInt::one());
        Ok(p)
    }

    pub fn constant(vars: usize, c: BigInt) -> Result<Self> {
        let mut p = Self::zero(vars)?;
        p.add_term(Monomial(0), c);
        Ok(p)
    }

    pub fn from_terms<I>(vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(vars)?;
        for (exps, c) in terms {
            if exps.len() != vars {
                return Err(Error::VariableMismatch { left: vars, right: exps.len() });
            }
            p.add_term(Monomial::from_exponents(&exps)?, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn coeff_of(&self, exps: &[u32]) -> Result<BigInt> {
        Ok(self.coeff(Monomial::from_exponents(exps)?))
    }

    pub(crate) fn coeff_ref(&self, m: Monomial) -> Option<&BigInt> {
        self.terms.get(&m)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().map(|m| m.max_slot(self.vars)).max().unwrap_or(0)
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|m| m.degree(self.vars)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> MonomialSymPoly {
        MonomialSymPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(self.vars) == degree)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Drops every monomial with some exponent above `max_exp`.
    pub fn truncate(&self, max_exp: u32) -> MonomialSymPoly {
        MonomialSymPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.max_slot(self.vars) <= max_exp)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Every coefficient equals the coefficient of its sorted exponent vector.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(m, c)| {
            let s = m.sorted(self.vars);
            self.terms.get(&s) == Some(c)
        }) && self.orbit_sizes_match()
    }

    // The sorted-representative check misses a missing permuted term whose
    // sorted form is present; count orbit members to catch it.
    fn orbit_sizes_match(&self) -> bool {
        let mut per_orbit: HashMap<Monomial, usize> = HashMap::new();
        for m in self.terms.keys() {
            *per_orbit.entry(m.sorted(self.vars)).or_default() += 1;
        }
        per_orbit
            .iter()
            .all(|(rep, &count)| count == orbit_size(&rep.exponents(self.vars)))
    }

    pub fn ensure_symmetric(&self) -> Result<()> {
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(Error::NotSymmetric { vars: self.vars })
        }
    }

    /// Applies the variable substitution `x_i -> x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Result<MonomialSymPoly> {
        if perm.len() != self.vars {
            return Err(Error::VariableMismatch { left: self.vars, right: perm.len() });
        }
        let mut out = MonomialSymPoly::zero(self.vars)?;
        for (m, c) in &self.terms {
            let mut e = vec![0; self.vars];
            for (i, &target) in perm.iter().enumerate() {
                e[target] = m.exponent(i);
            }
            out.add_term(Monomial::from_exponents(&e)?, c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &MonomialSymPoly) -> Result<MonomialSymPoly> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> MonomialSymPoly {
        let mut out = MonomialSymPoly { vars: self.vars, terms: HashMap::new() };
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, c)| (*m, c * k)).collect();
        out
    }

    /// Product, dropping monomials with an exponent above `max_exp` when given.
    pub fn mul(&self, other: &MonomialSymPoly, max_exp: Option<u32>) -> Result<MonomialSymPoly> {
        self.same_vars(other)?;
        let (a, b);
        let (lhs, rhs) = match max_exp {
            Some(e) => {
                a = self.truncate(e);
                b = other.truncate(e);
                (&a, &b)
            }
            None => (self, other),
        };
        if lhs.max_exponent() + rhs.max_exponent() > MAX_EXP {
            return Err(Error::ExponentOverflow { max: MAX_EXP });
        }
        let cap = max_exp.unwrap_or(MAX_EXP);
        let vars = self.vars;
        let rhs_terms: Vec<(Monomial, &BigInt)> = rhs.iter().collect();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(lhs.term_count().max(rhs.term_count()));
        for (ma, ca) in lhs.iter() {
            for &(mb, cb) in &rhs_terms {
                let m = Monomial(ma.0 + mb.0);
                if max_exp.is_some() && m.max_slot(vars) > cap {
                    continue;
                }
                *acc.entry(m).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MonomialSymPoly { vars, terms: acc })
    }

    pub fn pow(&self, k: u32, max_exp: Option<u32>) -> Result<MonomialSymPoly> {
        let mut out = MonomialSymPoly::one(self.vars)?;
        for _ in 0..k {
            out = out.mul(self, max_exp)?;
        }
        Ok(out)
    }

    fn same_vars(&self, other: &MonomialSymPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch { left: self.vars, right: other.vars });
        }
        Ok(())
    }
}

fn orbit_size(exps: &[u32]) -> usize {
    let mut fact = vec![1usize; exps.len() + 1];
    for i in 1..fact.len() {
        fact[i] = fact[i - 1] * i;
    }
    let mut counts: HashMap<u32, usize> = HashMap::new();
    for &e in exps {
        *counts.entry(e).or_default() += 1;
    }
    counts.values().fold(fact[exps.len()], |acc, &c| acc / fact[c])
}

impl fmt::Display for MonomialSymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by_key(|m| std::cmp::Reverse(m.exponents(self.vars)));
        for (i, m) in keys.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", self.terms[m])?;
            for (v, e) in m.exponents(self.vars).into_iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{v}")?,
                    _ => write!(f, "*x{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Elementary,
    Complete,
}

/// `e_j` or `h_j` in `vars` variables.
pub fn generator(kind: GeneratorKind, j: i64, vars: usize) -> Result<MonomialSymPoly> {
    if j < 0 {
        return Err(Error::NegativeIndex { what: "generator degree", value: j });
    }
    let j = j as u32;
    let mut out = MonomialSymPoly::zero(vars)?;
    match kind {
        GeneratorKind::Elementary => {
            if j as usize > vars {
                return Ok(out);
            }
            for_each_subset(vars, j as usize, &mut |subset| {
                let mut e = vec![0; vars];
                for &i in subset {
                    e[i] = 1;
                }
                out.add_term(Monomial::from_exponents(&e).expect("0/1 exponents"), BigInt::one());
            });
        }
        GeneratorKind::Complete => {
            if j > MAX_EXP {
                return Err(Error::ExponentOverflow { max: MAX_EXP });
            }
            for_each_composition(j, vars, &mut |e| {
                out.add_term(Monomial::from_exponents(e).expect("bounded exponents"), BigInt::one());
            });
        }
    }
    Ok(out)
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), f);
}

/// Calls `f` on every exponent vector of length `parts` summing to `total`.
pub(crate) fn for_each_composition(total: u32, parts: usize, f: &mut impl FnMut(&[u32])) {
    fn go(rem: u32, slot: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if slot + 1 == cur.len() {
            cur[slot] = rem;
            f(cur);
            return;
        }
        for e in (0..=rem).rev() {
            cur[slot] = e;
            go(rem - e, slot + 1, cur, f);
        }
    }
    if parts == 0 {
        return;
    }
    go(total, 0, &mut vec![0; parts], f);
}
