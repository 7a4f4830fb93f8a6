//! Scalar weight abstraction and per-vertex weight maps.

use std::fmt;

use num_traits::{CheckedAdd, CheckedSub, PrimInt, Unsigned};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex weight scalar: an unsigned primitive integer. Balanced-separator
/// comparisons are exact (`2 w(C) <= w(V)` in integer arithmetic), so floats
/// are deliberately not admitted.
pub trait Weight:
    PrimInt + Unsigned + CheckedAdd + CheckedSub + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl Weight for u16 {}
impl Weight for u32 {}
impl Weight for u64 {}
impl Weight for u128 {}
impl Weight for usize {}

/// Nonnegative integer weight per vertex, total over all vertices of the
/// companion graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMap<W: Weight> {
    values: Vec<W>,
}

impl<W: Weight> WeightMap<W> {
    /// A weight per vertex; the caller supplies exactly `g.num_vertices()` entries.
    pub fn new(g: &Graph, values: Vec<W>) -> Result<Self> {
        if values.len() != g.num_vertices() {
            return Err(Error::InvalidInput(format!(
                "weight map has {} entries for a graph on {} vertices",
                values.len(),
                g.num_vertices()
            )));
        }
        Ok(WeightMap { values })
    }

    /// Weight 1 for every vertex, which makes MWIS coincide with MIS.
    pub fn unit(g: &Graph) -> Self {
        WeightMap {
            values: vec![W::one(); g.num_vertices()],
        }
    }

    pub fn get(&self, v: usize) -> W {
        self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[W] {
        &self.values
    }

    /// Checked sum over an index set.
    pub fn sum_over<I: IntoIterator<Item = usize>>(&self, vs: I) -> Result<W> {
        let mut acc = W::zero();
        for v in vs {
            acc = acc
                .checked_add(&self.values[v])
                .ok_or(Error::WeightOverflow)?;
        }
        Ok(acc)
    }

    /// Checked total weight of all vertices.
    pub fn total(&self) -> Result<W> {
        self.sum_over(0..self.values.len())
    }

    /// Restriction of the map to an induced subgraph given by `old_of_new`,
    /// the new-index -> old-index table.
    pub fn restrict(&self, old_of_new: &[usize]) -> Self {
        WeightMap {
            values: old_of_new.iter().map(|&v| self.values[v]).collect(),
        }
    }
}

/// `2a <= b` without forming `b / 2`; `None` signals overflow of `2a`.
pub(crate) fn twice_le<W: Weight>(a: W, b: W) -> Result<bool> {
    match a.checked_add(&a) {
        Some(two_a) => Ok(two_a <= b),
        None => Err(Error::WeightOverflow),
    }
}

/// `2a > b`, the "big component" test.
pub(crate) fn twice_gt<W: Weight>(a: W, b: W) -> Result<bool> {
    Ok(!twice_le(a, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn unit_map_totals_n() {
        let g = Graph::path(5);
        let w: WeightMap<u64> = WeightMap::unit(&g);
        assert_eq!(w.total().unwrap(), 5);
    }

    #[test]
    fn length_mismatch_rejected() {
        let g = Graph::path(3);
        assert!(WeightMap::<u64>::new(&g, vec![1, 2]).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let g = Graph::empty(2);
        let w = WeightMap::<u64>::new(&g, vec![u64::MAX, 1]).unwrap();
        assert!(matches!(w.total(), Err(Error::WeightOverflow)));
    }

    #[test]
    fn half_comparisons_are_exact() {
        // 2*3 <= 7 but 2*4 > 7; no rounding through division.
        assert!(twice_le(3u64, 7).unwrap());
        assert!(twice_gt(4u64, 7).unwrap());
    }
}
