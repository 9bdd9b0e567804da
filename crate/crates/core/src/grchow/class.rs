use std::fmt;

use num_bigint::BigInt;

use super::context::GrContext;
use crate::error::{Error, Result};
use crate::symcore::{lr_mul, Partition, SchurVector};

/// A Chow class of a Grassmannian in the Schur basis, truncated to the
/// context rectangle.
///
/// `degree` is the bookkeeping degree: it survives truncation to zero, so a
/// product that vanishes still reports the codimension it was built in.
/// `None` marks a mixed-degree class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrClass {
    ctx: GrContext,
    value: SchurVector,
    degree: Option<i64>,
}

impl GrClass {
    /// Wraps `value`, truncating it to the rectangle. The degree is read off
    /// the value; a zero value gets degree 0.
    pub fn from_schur(ctx: GrContext, value: SchurVector) -> Self {
        let value = value.truncate(ctx.rect());
        let degree = if value.is_zero() {
            Some(0)
        } else {
            value.homogeneous_degree().map(i64::from)
        };
        GrClass { ctx, value, degree }
    }

    /// A homogeneous class of the given degree. Fails if `value` has terms
    /// of another weight.
    pub fn homogeneous(ctx: GrContext, value: SchurVector, degree: i64) -> Result<Self> {
        let value = value.truncate(ctx.rect());
        if let Some(bad) = value.degrees().into_iter().find(|&w| i64::from(w) != degree) {
            return Err(Error::DegreeMismatch { expected: degree.to_string(), found: bad.to_string() });
        }
        Ok(GrClass { ctx, value, degree: Some(degree) })
    }

    pub fn zero(ctx: GrContext, degree: i64) -> Self {
        GrClass { ctx, value: SchurVector::zero(), degree: Some(degree) }
    }

    pub fn unit(ctx: GrContext) -> Self {
        GrClass { ctx, value: SchurVector::unit(), degree: Some(0) }
    }

    pub fn schur(ctx: GrContext, lambda: Partition) -> Self {
        let degree = i64::from(lambda.weight());
        GrClass::homogeneous(ctx, SchurVector::basis(lambda), degree).expect("basis class is homogeneous")
    }

    pub fn integer(ctx: GrContext, k: BigInt) -> Self {
        GrClass { ctx, value: SchurVector::unit().scale(&k), degree: Some(0) }
    }

    pub fn context(&self) -> GrContext {
        self.ctx
    }

    pub fn value(&self) -> &SchurVector {
        &self.value
    }

    pub fn degree(&self) -> Option<i64> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn coeff(&self, p: &Partition) -> BigInt {
        self.value.coeff(p)
    }

    fn check_ctx(&self, other: &GrClass) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &GrClass) -> Result<GrClass> {
        self.check_ctx(other)?;
        let degree = match (self.degree, other.degree) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ if self.is_zero() => other.degree,
            _ if other.is_zero() => self.degree,
            _ => None,
        };
        Ok(GrClass { ctx: self.ctx, value: self.value.add(&other.value), degree })
    }

    pub fn scale(&self, k: &BigInt) -> GrClass {
        GrClass { ctx: self.ctx, value: self.value.scale(k), degree: self.degree }
    }

    /// Truncated Schur-basis product.
    pub fn mul(&self, other: &GrClass) -> Result<GrClass> {
        self.check_ctx(other)?;
        let degree = match (self.degree, other.degree) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let value = if self.is_zero() || other.is_zero() {
            SchurVector::zero()
        } else {
            lr_mul(&self.value, &other.value, Some(self.ctx.rect()))
        };
        Ok(GrClass { ctx: self.ctx, value, degree })
    }

    pub fn pow(&self, k: u32) -> Result<GrClass> {
        let mut out = GrClass::unit(self.ctx);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }
}

/// Product of `factors`, all in `ctx`; the empty product is the unit.
pub fn gr_mul(ctx: GrContext, factors: &[GrClass]) -> Result<GrClass> {
    let mut acc = GrClass::unit(ctx);
    for f in factors {
        if f.context() != ctx {
            return Err(Error::ContextMismatch);
        }
        acc = acc.mul(f)?;
    }
    Ok(acc)
}

impl fmt::Display for GrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> GrContext {
        GrContext::new(3, 1).unwrap()
    }

    fn s(parts: &[i64]) -> GrClass {
        GrClass::schur(ctx(), Partition::new(parts).unwrap())
    }

    #[test]
    fn gr_mul_examples() {
        let x = s(&[2, 1]).add(&s(&[1, 1]).scale(&BigInt::from(4))).unwrap();
        assert_eq!(gr_mul(ctx(), &[GrClass::unit(ctx()), x.clone()]).unwrap(), x);
        let z = gr_mul(ctx(), &[s(&[2]), s(&[1, 1])]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), Some(4));
        let sq = gr_mul(ctx(), &[s(&[1]), s(&[1])]).unwrap();
        assert_eq!(sq, s(&[2]).add(&s(&[1, 1])).unwrap());
    }

    #[test]
    fn context_mismatch() {
        let other = GrClass::unit(GrContext::new(4, 1).unwrap());
        assert_eq!(gr_mul(ctx(), std::slice::from_ref(&other)), Err(Error::ContextMismatch));
        assert_eq!(s(&[1]).mul(&other), Err(Error::ContextMismatch));
    }

    #[test]
    fn mixed_degrees_are_tracked() {
        let m = s(&[1]).add(&s(&[2])).unwrap();
        assert_eq!(m.degree(), None);
        assert_eq!(m.mul(&s(&[1])).unwrap().degree(), None);
        let z = GrClass::zero(ctx(), 3).add(&s(&[2])).unwrap();
        assert_eq!(z.degree(), Some(2));
    }

    #[test]
    fn out_of_box_schur_class_is_zero() {
        let c = s(&[3]);
        assert!(c.is_zero());
        assert_eq!(c.degree(), Some(3));
    }
}
