use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::partition::Partition;

/// A `rows x cols` bounding box for Schur indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub rows: usize,
    pub cols: u32,
}

impl Rect {
    pub fn new(rows: usize, cols: u32) -> Self {
        Rect { rows, cols }
    }

    pub fn contains(&self, p: &Partition) -> bool {
        p.fits(self.rows, self.cols)
    }

    pub fn area(&self) -> u32 {
        self.rows as u32 * self.cols
    }

    pub fn full(&self) -> Partition {
        Partition::rectangle(self.rows, self.cols)
    }
}

/// A finitely supported integer combination of Schur functions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchurVector {
    terms: BTreeMap<Partition, BigInt>,
}

impl SchurVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::basis(Partition::empty())
    }

    pub fn basis(p: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, BigInt::one());
        SchurVector { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, BigInt)>>(iter: I) -> Self {
        let mut v = SchurVector::zero();
        for (p, c) in iter {
            v.add_term(p, c);
        }
        v
    }

    pub fn add_term(&mut self, p: Partition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, p: &Partition) -> BigInt {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weight shared by every stored partition, or `None` when empty or mixed.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(Partition::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// Distinct weights present, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ws: Vec<u32> = self.terms.keys().map(Partition::weight).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    pub fn truncate(&self, rect: Rect) -> SchurVector {
        SchurVector {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| rect.contains(p))
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &SchurVector) -> SchurVector {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> SchurVector {
        if k.is_zero() {
            return SchurVector::zero();
        }
        SchurVector {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * k)).collect(),
        }
    }

    pub fn neg(&self) -> SchurVector {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for SchurVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*s{p}")?;
        }
        Ok(())
    }
}

/// Littlewood-Richardson coefficients `c^nu_{lambda,mu}` for all `nu`,
/// keeping only `nu` inside `rect` when one is given.
///
/// Enumerates LR tableaux of shape `nu/lambda` and content `mu`: each label is
/// added as a horizontal strip, and the reverse reading word must stay a
/// lattice word.
pub fn lr_coefficients(
    lambda: &Partition,
    mu: &Partition,
    rect: Option<Rect>,
) -> Vec<(Partition, u64)> {
    // LR coefficients are symmetric; the cheaper enumeration adds fewer boxes
    let (outer, inner) = if mu.weight() <= lambda.weight() {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let max_rows = match rect {
        Some(r) => r.rows,
        None => outer.len() + inner.len(),
    };
    let max_cols = rect.map_or(u32::MAX, |r| r.cols);
    if outer.len() > max_rows || outer.part(0) > max_cols || inner.len() > max_rows {
        return Vec::new();
    }
    let mut shape = vec![0u32; max_rows];
    for (i, &p) in outer.parts().iter().enumerate() {
        shape[i] = p;
    }
    let mut out: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut walker = LrWalker {
        content: inner.parts(),
        max_cols,
        out: &mut out,
    };
    walker.label(0, &mut shape, &vec![0; max_rows]);
    let mut result: Vec<(Partition, u64)> = out
        .into_iter()
        .map(|(s, c)| (Partition::from_sorted(s), c))
        .collect();
    result.sort();
    result
}

struct LrWalker<'a> {
    content: &'a [u32],
    max_cols: u32,
    out: &'a mut HashMap<Vec<u32>, u64>,
}

impl LrWalker<'_> {
    fn label(&mut self, label: usize, shape: &mut Vec<u32>, prev: &[u32]) {
        if label == self.content.len() {
            *self.out.entry(shape.clone()).or_insert(0) += 1;
            return;
        }
        let before = shape.clone();
        let mut counts = vec![0u32; shape.len()];
        self.row(label, 0, self.content[label], 0, 0, shape, &before, prev, &mut counts);
    }

    #[allow(clippy::too_many_arguments)]
    fn row(
        &mut self,
        label: usize,
        r: usize,
        remaining: u32,
        placed: u32,
        prev_above: u32,
        shape: &mut Vec<u32>,
        before: &[u32],
        prev: &[u32],
        counts: &mut Vec<u32>,
    ) {
        if remaining == 0 {
            self.label(label + 1, shape, counts);
            return;
        }
        if r == shape.len() {
            return;
        }
        // label i can only appear from row i downwards
        if r < label {
            self.row(label, r + 1, remaining, placed, prev_above + prev[r], shape, before, prev, counts);
            return;
        }
        let strip_cap = if r == 0 { u32::MAX } else { before[r - 1] - before[r] };
        let col_cap = self.max_cols.saturating_sub(before[r]);
        let lattice_cap = if label == 0 { u32::MAX } else { prev_above.saturating_sub(placed) };
        let cap = remaining.min(strip_cap).min(col_cap).min(lattice_cap);
        for k in (0..=cap).rev() {
            shape[r] = before[r] + k;
            counts[r] = k;
            self.row(
                label,
                r + 1,
                remaining - k,
                placed + k,
                prev_above + prev[r],
                shape,
                before,
                prev,
                counts,
            );
        }
        shape[r] = before[r];
        counts[r] = 0;
    }
}

type MemoKey = (Partition, Partition, Option<Rect>);
type MemoTable = HashMap<MemoKey, Arc<Vec<(Partition, u64)>>>;

/// Thread-safe memo table for LR coefficient lists.
///
/// Lookups take a read lock; a miss computes outside any lock and inserts
/// with `entry().or_insert`, so concurrent misses agree on one value.
#[derive(Default)]
pub struct LrMemo {
    table: RwLock<MemoTable>,
}

impl LrMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, lambda: &Partition, mu: &Partition, rect: Option<Rect>) -> Arc<Vec<(Partition, u64)>> {
        let key = if lambda <= mu {
            (lambda.clone(), mu.clone(), rect)
        } else {
            (mu.clone(), lambda.clone(), rect)
        };
        if let Some(hit) = self.table.read().expect("memo poisoned").get(&key) {
            return hit.clone();
        }
        let computed = Arc::new(lr_coefficients(&key.0, &key.1, rect));
        self.table
            .write()
            .expect("memo poisoned")
            .entry(key)
            .or_insert(computed)
            .clone()
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("memo poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn global_memo() -> &'static LrMemo {
    static MEMO: OnceLock<LrMemo> = OnceLock::new();
    MEMO.get_or_init(LrMemo::new)
}

/// Product in the Schur basis, optionally truncated to a rectangle.
///
/// Truncation commutes with multiplication: partitions outside a rectangle
/// span an ideal of the ring of symmetric functions.
pub fn lr_mul(x: &SchurVector, y: &SchurVector, rect: Option<Rect>) -> SchurVector {
    lr_mul_with(x, y, rect, Some(global_memo()))
}

pub fn lr_mul_with(
    x: &SchurVector,
    y: &SchurVector,
    rect: Option<Rect>,
    memo: Option<&LrMemo>,
) -> SchurVector {
    let mut acc: HashMap<Partition, BigInt> = HashMap::new();
    for (lambda, a) in x.iter() {
        for (mu, b) in y.iter() {
            let ab = a * b;
            let coeffs = match memo {
                Some(m) => m.get(lambda, mu, rect),
                None => Arc::new(lr_coefficients(lambda, mu, rect)),
            };
            for (nu, c) in coeffs.iter() {
                let term = &ab * BigInt::from(*c);
                *acc.entry(nu.clone()).or_default() += term;
            }
        }
    }
    SchurVector::from_terms(acc)
}

/// `sum_lambda x_lambda * y_{complement(lambda)}`: the top-class coefficient of
/// `x * y` in the Chow ring of the Grassmannian with box `rect`.
pub fn duality_pairing(x: &SchurVector, y: &SchurVector, rect: Rect) -> BigInt {
    x.iter()
        .filter_map(|(lambda, a)| {
            let comp = lambda.complement(rect.rows, rect.cols)?;
            let b = y.terms.get(&comp)?;
            Some(a * b)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts).unwrap()
    }

    fn s(parts: &[i64]) -> SchurVector {
        SchurVector::basis(p(parts))
    }

    #[test]
    fn pieri_square_of_one_box() {
        let prod = lr_mul(&s(&[1]), &s(&[1]), None);
        assert_eq!(prod, s(&[2]).add(&s(&[1, 1])));
    }

    #[test]
    fn truncated_products_vanish() {
        let r = Rect::new(2, 2);
        assert!(lr_mul(&s(&[2]), &s(&[1, 1]), Some(r)).is_zero());
        assert!(lr_mul(&s(&[1]), &s(&[2, 2]), Some(r)).is_zero());
        // untruncated the only term is s_(3,1)
        assert_eq!(lr_mul(&s(&[2]), &s(&[1, 1]), None), s(&[3, 1]).add(&s(&[2, 1, 1])));
    }

    #[test]
    fn classic_lr_coefficient() {
        // s21 * s21 = s42 + s411 + s33 + 2 s321 + s3111 + s222 + s2211
        let coeffs = lr_coefficients(&p(&[2, 1]), &p(&[2, 1]), None);
        let c = coeffs.iter().find(|(nu, _)| nu == &p(&[4, 2])).map(|x| x.1);
        assert_eq!(c, Some(1));
        let c = coeffs.iter().find(|(nu, _)| nu == &p(&[3, 2, 1])).map(|x| x.1);
        assert_eq!(c, Some(2));
        let total: u64 = coeffs.iter().map(|x| x.1).sum();
        // (2,1)*(2,1) has 8 terms counted with multiplicity in 3 rows or more
        assert_eq!(total, 8);
    }

    #[test]
    fn h2_squared() {
        let prod = lr_mul(&s(&[2]), &s(&[2]), None);
        assert_eq!(prod, s(&[4]).add(&s(&[3, 1])).add(&s(&[2, 2])));
    }

    #[test]
    fn memo_is_transparent() {
        let memo = LrMemo::new();
        let x = s(&[2, 1]).add(&s(&[1]).scale(&BigInt::from(3)));
        let y = s(&[2]).add(&s(&[1, 1]));
        let r = Some(Rect::new(3, 3));
        let with = lr_mul_with(&x, &y, r, Some(&memo));
        assert!(!memo.is_empty());
        assert_eq!(with, lr_mul_with(&x, &y, r, Some(&memo)));
        assert_eq!(with, lr_mul_with(&x, &y, r, None));
    }

    #[test]
    fn pairing_matches_rectangle_coefficient() {
        let r = Rect::new(2, 2);
        let x = s(&[1]).add(&s(&[2]));
        let y = s(&[2, 1]).add(&s(&[1, 1]));
        let prod = lr_mul(&x, &y, Some(r));
        assert_eq!(duality_pairing(&x, &y, r), prod.coeff(&r.full()));
    }
}
