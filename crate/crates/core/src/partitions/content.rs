use std::collections::BTreeMap;

use super::plane::Partition3D;

/// `a[(i, j)]` = number of boxes in the slice `z = j` with content
/// `x - y = i`. Absent keys are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContentTable {
    counts: BTreeMap<(i64, u32), u32>,
}

impl ContentTable {
    pub fn get(&self, i: i64, j: i64) -> i64 {
        if j < 0 {
            return 0;
        }
        self.counts.get(&(i, j as u32)).copied().unwrap_or(0) as i64
    }

    pub fn total(&self) -> u64 {
        self.counts.values().map(|&c| c as u64).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i64, u32), &u32)> {
        self.counts.iter()
    }

    /// `-1/2 * sum_{i, j >= 0} ((a_{i,j} - a_{i+1,j}) - (a_{i,j+1} - a_{i+1,j+1}))^2`.
    pub fn constant_term_formula(&self) -> i64 {
        let Some(&(_, jmax)) = self.counts.keys().max_by_key(|k| k.1) else {
            return 0;
        };
        let imin = self.counts.keys().map(|k| k.0).min().unwrap();
        let imax = self.counts.keys().map(|k| k.0).max().unwrap();
        let mut twice = 0i64;
        for j in 0..=(jmax as i64) {
            for i in (imin - 1)..=imax {
                let d = (self.get(i, j) - self.get(i + 1, j)) - (self.get(i, j + 1) - self.get(i + 1, j + 1));
                twice += d * d;
            }
        }
        debug_assert_eq!(twice % 2, 0);
        -twice / 2
    }
}

pub fn content_table(p: &Partition3D) -> ContentTable {
    let mut counts = BTreeMap::new();
    for c in p.cells() {
        *counts.entry((c[0] as i64 - c[1] as i64, c[2])).or_insert(0) += 1;
    }
    ContentTable { counts }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let one = Partition3D::from_cells([[0, 0, 0]]).unwrap();
        let t = content_table(&one);
        assert_eq!(t.get(0, 0), 1);
        assert_eq!(t.total(), 1);
        assert_eq!(t.constant_term_formula(), -1);

        let row = Partition3D::from_cells([[0, 0, 0], [1, 0, 0]]).unwrap();
        let t = content_table(&row);
        assert_eq!((t.get(0, 0), t.get(1, 0)), (1, 1));

        let col = Partition3D::from_cells([[0, 0, 0], [0, 0, 1]]).unwrap();
        let t = content_table(&col);
        assert_eq!((t.get(0, 0), t.get(0, 1)), (1, 1));
        assert_eq!(content_table(&Partition3D::empty()).constant_term_formula(), 0);
    }
}
