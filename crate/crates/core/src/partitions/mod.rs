//! Plane partitions, 3-dimensional partitions with outgoing legs, and
//! content statistics of their slices.

mod content;
mod legs;
mod plane;

pub use content::{content_table, ContentTable};
pub use legs::{default_window, enumerate_with_legs, in_cylinder, leg_extent, no_legs, LegPartition3D, Legs};
pub use plane::{enumerate_finite, is_order_ideal, Cell, Partition2D, Partition3D};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("{0:?} is not a weakly decreasing list of positive parts")]
    NotAPartition(Vec<u32>),
    #[error("box set is not an order ideal")]
    NotOrderIdeal,
    #[error("window {0} is too small for the requested configurations")]
    WindowTooSmall(u32),
    #[error("leg cylinder cell {0:?} is missing from the window")]
    MissingCylinderCell(Cell),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Parses `λ1,λ2,λ3`, each written as parts joined by `.` (empty or `0`
/// for the empty partition), e.g. `1,0,0` or `2.1,,1`.
pub fn parse_legs(s: &str) -> Result<Legs, PartitionError> {
    let pieces: Vec<&str> = s.split(',').collect();
    let [a, b, c] = pieces[..] else {
        return Err(PartitionError::Parse(s.to_string()));
    };
    Ok([a.parse()?, b.parse()?, c.parse()?])
}

pub fn format_legs(legs: &Legs) -> String {
    format!("{},{},{}", legs[0], legs[1], legs[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashSet};

    /// Number of plane partitions of n from prod (1-q^k)^{-k}, expanded
    /// directly as a power series.
    fn macmahon_counts(n: usize) -> Vec<u64> {
        let mut c = vec![0u64; n + 1];
        c[0] = 1;
        for k in 1..=n {
            for _ in 0..k {
                // multiply by 1/(1-q^k)
                for i in k..=n {
                    c[i] += c[i - k];
                }
            }
        }
        c
    }

    #[test]
    fn counts_match_macmahon_coefficients() {
        let expect = macmahon_counts(7);
        assert_eq!(&expect[1..7], &[1, 3, 6, 13, 24, 48]);
        for n in 0..=7 {
            assert_eq!(enumerate_finite(n).len() as u64, expect[n], "n = {n}");
        }
    }

    #[test]
    fn enumeration_is_sorted_distinct_and_valid() {
        for n in 0..=6 {
            let out = enumerate_finite(n);
            let set: BTreeSet<_> = out.iter().cloned().collect();
            assert_eq!(set.len(), out.len());
            assert!(out.windows(2).all(|w| w[0] < w[1]));
            for p in &out {
                let hs: HashSet<Cell> = p.cells().iter().copied().collect();
                assert!(is_order_ideal(&hs));
                assert_eq!(p.size(), n);
            }
        }
    }

    #[test]
    fn axis_permutations_act_bijectively() {
        let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        for n in 0..=6 {
            let out: BTreeSet<Partition3D> = enumerate_finite(n).into_iter().collect();
            for perm in perms {
                let image: BTreeSet<Partition3D> = out.iter().map(|p| p.permute(perm)).collect();
                assert_eq!(image, out);
            }
        }
    }

    #[test]
    fn content_totals() {
        for n in 0..=6 {
            for p in enumerate_finite(n) {
                assert_eq!(content_table(&p).total(), n as u64);
            }
        }
    }

    #[test]
    fn legs_syntax() {
        let legs = parse_legs("2.1,,1").unwrap();
        assert_eq!(legs[0].parts(), &[2, 1]);
        assert!(legs[1].is_empty());
        assert_eq!(format_legs(&legs), "2.1,0,1");
        assert!(parse_legs("1,0").is_err());
    }
}
