use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PartitionError;

pub type Cell = [u32; 3];

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition2D(Vec<u32>);

impl Partition2D {
    pub fn new(parts: Vec<u32>) -> Result<Partition2D, PartitionError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotAPartition(parts));
        }
        Ok(Partition2D(parts))
    }

    pub fn empty() -> Partition2D {
        Partition2D(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> u32 {
        self.0.len() as u32
    }

    /// Cell `(a, b)` belongs to the diagram when `b < parts[a]`.
    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.0.get(a as usize).is_some_and(|&p| b < p)
    }

    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(a, &p)| (0..p).map(move |b| (a as u32, b)))
    }
}

impl TryFrom<Vec<u32>> for Partition2D {
    type Error = PartitionError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Partition2D::new(v)
    }
}

impl From<Partition2D> for Vec<u32> {
    fn from(p: Partition2D) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for Partition2D {
    type Err = PartitionError;
    /// `"0"` or `""` is empty; otherwise parts joined by `.`, e.g. `"2.1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition2D::empty());
        }
        let parts = s
            .split('.')
            .map(|p| p.parse::<u32>().map_err(|_| PartitionError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Partition2D::new(parts)
    }
}

/// True if every predecessor of every cell is present.
pub fn is_order_ideal(cells: &HashSet<Cell>) -> bool {
    cells.iter().all(|c| {
        (0..3).all(|i| {
            if c[i] == 0 {
                return true;
            }
            let mut p = *c;
            p[i] -= 1;
            cells.contains(&p)
        })
    })
}

/// Finite 3-dimensional partition: a finite order ideal in `N^3`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition3D {
    cells: Vec<Cell>,
}

impl Partition3D {
    pub fn empty() -> Partition3D {
        Partition3D::default()
    }

    pub fn from_cells<I: IntoIterator<Item = Cell>>(it: I) -> Result<Partition3D, PartitionError> {
        let set: BTreeSet<Cell> = it.into_iter().collect();
        let hs: HashSet<Cell> = set.iter().copied().collect();
        if !is_order_ideal(&hs) {
            return Err(PartitionError::NotOrderIdeal);
        }
        Ok(Partition3D { cells: set.into_iter().collect() })
    }

    pub(crate) fn from_sorted_unchecked(cells: Vec<Cell>) -> Partition3D {
        Partition3D { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cells.binary_search(c).is_ok()
    }

    /// Applies an axis permutation: coordinate `i` of the image is
    /// coordinate `perm[i]` of the source.
    pub fn permute(&self, perm: [usize; 3]) -> Partition3D {
        let mut cells: Vec<Cell> = self
            .cells
            .iter()
            .map(|c| [c[perm[0]], c[perm[1]], c[perm[2]]])
            .collect();
        cells.sort();
        Partition3D { cells }
    }

    /// Canonical text: one `x,y,z` triple per line, sorted.
    pub fn to_text(&self) -> String {
        self.cells
            .iter()
            .map(|c| format!("{},{},{}\n", c[0], c[1], c[2]))
            .collect()
    }

    /// Parses triples separated by whitespace or `;`; `#` starts a comment.
    pub fn from_text(s: &str) -> Result<Partition3D, PartitionError> {
        let mut cells = Vec::new();
        for line in s.lines() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split(|c: char| c.is_whitespace() || c == ';') {
                if tok.is_empty() {
                    continue;
                }
                let xs: Vec<u32> = tok
                    .split(',')
                    .map(|x| x.trim().parse::<u32>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| PartitionError::Parse(tok.to_string()))?;
                let [x, y, z] = xs[..] else {
                    return Err(PartitionError::Parse(tok.to_string()));
                };
                cells.push([x, y, z]);
            }
        }
        Partition3D::from_cells(cells)
    }
}

/// All plane partitions with exactly `n` boxes, sorted canonically.
///
/// Reverse search: the parent of a partition removes its lexicographically
/// largest removable box, so each partition is generated exactly once.
pub fn enumerate_finite(n: usize) -> Vec<Partition3D> {
    let mut out = Vec::new();
    let mut cells: BTreeSet<Cell> = BTreeSet::new();
    grow(&mut cells, n, &mut out);
    out.sort();
    out
}

fn removable(cells: &BTreeSet<Cell>, c: &Cell) -> bool {
    (0..3).all(|i| {
        let mut s = *c;
        s[i] += 1;
        !cells.contains(&s)
    })
}

fn addable(cells: &BTreeSet<Cell>, c: &Cell) -> bool {
    !cells.contains(c)
        && (0..3).all(|i| {
            if c[i] == 0 {
                return true;
            }
            let mut p = *c;
            p[i] -= 1;
            cells.contains(&p)
        })
}

fn addable_cells(cells: &BTreeSet<Cell>) -> Vec<Cell> {
    let mut cands: BTreeSet<Cell> = BTreeSet::new();
    cands.insert([0, 0, 0]);
    for c in cells {
        for i in 0..3 {
            let mut s = *c;
            s[i] += 1;
            cands.insert(s);
        }
    }
    cands.into_iter().filter(|c| addable(cells, c)).collect()
}

fn grow(cells: &mut BTreeSet<Cell>, remaining: usize, out: &mut Vec<Partition3D>) {
    if remaining == 0 {
        out.push(Partition3D::from_sorted_unchecked(cells.iter().copied().collect()));
        return;
    }
    for c in addable_cells(cells) {
        cells.insert(c);
        // keep the child only if c is its largest removable box
        let canonical = cells.iter().rev().find(|b| removable(cells, b)) == Some(&c);
        if canonical {
            grow(cells, remaining - 1, out);
        }
        cells.remove(&c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(enumerate_finite(0), vec![Partition3D::empty()]);
        let two = enumerate_finite(2);
        assert_eq!(two.len(), 3);
        for p in &two {
            assert!(p.contains(&[0, 0, 0]));
        }
    }

    #[test]
    fn text_roundtrip() {
        let p = Partition3D::from_cells([[0, 0, 0], [1, 0, 0], [0, 0, 1]]).unwrap();
        assert_eq!(Partition3D::from_text(&p.to_text()).unwrap(), p);
        assert_eq!(Partition3D::from_text("0,0,0; 0,0,1 # column").unwrap().size(), 2);
        assert_eq!(Partition3D::from_text("0,0,1"), Err(PartitionError::NotOrderIdeal));
    }

    #[test]
    fn partition2d_validation() {
        assert!(Partition2D::new(vec![1, 2]).is_err());
        assert!(Partition2D::new(vec![2, 0]).is_err());
        assert_eq!("2.1".parse::<Partition2D>().unwrap().size(), 3);
        assert!("0".parse::<Partition2D>().unwrap().is_empty());
    }
}
