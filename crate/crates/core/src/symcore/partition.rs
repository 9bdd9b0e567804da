use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Ordering is lexicographic on the parts, which is what the sparse maps in
/// this crate iterate by.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// The empty partition, indexing the unit class.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Validates and canonicalizes `parts`, trimming trailing zeros.
    pub fn new(parts: &[i64]) -> Result<Self> {
        let mut trimmed = parts.to_vec();
        while trimmed.last() == Some(&0) {
            trimmed.pop();
        }
        if trimmed.iter().any(|&p| p < 1) {
            return Err(Error::InvalidPartition {
                parts: parts.to_vec(),
                reason: "non-positive part",
            });
        }
        if trimmed.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition {
                parts: parts.to_vec(),
                reason: "not weakly decreasing",
            });
        }
        if trimmed.iter().any(|&p| p > u32::MAX as i64) {
            return Err(Error::InvalidPartition {
                parts: parts.to_vec(),
                reason: "part too large",
            });
        }
        Ok(Partition(trimmed.into_iter().map(|p| p as u32).collect()))
    }

    /// Builds a partition from parts already known to be canonical.
    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition(parts)
    }

    /// The one-row partition `(j)`; empty for `j = 0`.
    pub fn row(j: u32) -> Self {
        Partition::from_sorted(vec![j])
    }

    /// The one-column partition `(1^j)`.
    pub fn column(j: u32) -> Self {
        Partition(vec![1; j as usize])
    }

    /// The `rows x cols` rectangle.
    pub fn rectangle(rows: usize, cols: u32) -> Self {
        if cols == 0 {
            return Partition::empty();
        }
        Partition(vec![cols; rows])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i`, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn fits(&self, rows: usize, cols: u32) -> bool {
        self.0.len() <= rows && self.part(0) <= cols
    }

    /// Complement inside the `rows x cols` rectangle (rotated by 180 degrees).
    pub fn complement(&self, rows: usize, cols: u32) -> Option<Partition> {
        if !self.fits(rows, cols) {
            return None;
        }
        let parts = (0..rows).map(|i| cols - self.part(rows - 1 - i)).collect();
        Some(Partition::from_sorted(parts))
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
            .collect();
        Partition(parts)
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self> {
        Partition::new(&parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `weight` with at most `rows` rows and parts at most `cols`,
/// in decreasing lexicographic order.
pub fn partitions_in_box(weight: u32, rows: usize, cols: u32) -> Vec<Partition> {
    fn go(rem: u32, max: u32, rows_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        // the remaining rows must be able to absorb `rem`
        if (max as u64) * (rows_left as u64) < rem as u64 {
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            go(rem - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weight, cols, rows, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_partition_examples() {
        assert_eq!(Partition::new(&[2, 2]).unwrap().parts(), &[2, 2]);
        assert_eq!(Partition::new(&[3, 1, 0]).unwrap().parts(), &[3, 1]);
        assert!(matches!(
            Partition::new(&[1, 2]),
            Err(Error::InvalidPartition { .. })
        ));
        assert!(Partition::new(&[2, -1]).is_err());
        assert!(Partition::new(&[0, 1]).is_err());
        assert!(Partition::new(&[0, 0]).unwrap().is_empty());
    }

    #[test]
    fn complement_and_conjugate() {
        let p = Partition::new(&[2, 1]).unwrap();
        assert_eq!(p.complement(2, 2).unwrap().parts(), &[1]);
        assert_eq!(p.complement(2, 3).unwrap().parts(), &[2, 1]);
        assert!(p.complement(1, 3).is_none());
        assert_eq!(Partition::new(&[3, 1]).unwrap().conjugate().parts(), &[2, 1, 1]);
    }

    #[test]
    fn box_enumeration_counts() {
        // Gr(2,4): partitions in a 2x2 box, 6 in total
        let total: usize = (0..=4).map(|w| partitions_in_box(w, 2, 2).len()).sum();
        assert_eq!(total, 6);
        // binomial(13,5) partitions in a 5x8 box
        let total: usize = (0..=40).map(|w| partitions_in_box(w, 5, 8).len()).sum();
        assert_eq!(total, 1287);
    }

    #[test]
    fn serde_rejects_bad_parts() {
        let p: Partition = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(p.parts(), &[3, 1]);
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
