use std::collections::{BTreeSet, HashSet};

use super::plane::{Cell, Partition2D, Partition3D};
use super::PartitionError;

/// The three outgoing leg profiles. Leg `i` runs along axis `i`; its
/// cross-section uses coordinates `((i+1) mod 3, (i+2) mod 3)`.
pub type Legs = [Partition2D; 3];

pub fn no_legs() -> Legs {
    [Partition2D::empty(), Partition2D::empty(), Partition2D::empty()]
}

pub fn in_cylinder(legs: &Legs, c: &Cell) -> bool {
    (0..3).any(|i| legs[i].contains(c[(i + 1) % 3], c[(i + 2) % 3]))
}

/// Largest cross-section extent over all legs.
pub fn leg_extent(legs: &Legs) -> u32 {
    legs.iter().map(|l| l.max_part().max(l.len())).max().unwrap_or(0)
}

/// A 3-dimensional partition with prescribed leg asymptotics.
///
/// Membership: inside `[0, window)^3` a cell is present iff listed in
/// `window_cells`; outside, iff it lies in a leg cylinder.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LegPartition3D {
    legs: Legs,
    window: u32,
    window_cells: Vec<Cell>,
}

impl LegPartition3D {
    pub fn new(legs: Legs, window: u32, cells: impl IntoIterator<Item = Cell>) -> Result<LegPartition3D, PartitionError> {
        if window <= leg_extent(&legs) {
            return Err(PartitionError::WindowTooSmall(window));
        }
        let set: BTreeSet<Cell> = cells.into_iter().collect();
        if set.iter().any(|c| c.iter().any(|&x| x >= window)) {
            return Err(PartitionError::WindowTooSmall(window));
        }
        let p = LegPartition3D { legs, window, window_cells: set.into_iter().collect() };
        p.validate()?;
        Ok(p)
    }

    /// Union of the leg cylinders, cut to the window.
    pub fn minimal(legs: Legs, window: u32) -> Result<LegPartition3D, PartitionError> {
        let mut cells = Vec::new();
        for x in 0..window {
            for y in 0..window {
                for z in 0..window {
                    if in_cylinder(&legs, &[x, y, z]) {
                        cells.push([x, y, z]);
                    }
                }
            }
        }
        LegPartition3D::new(legs, window, cells)
    }

    pub fn from_finite(p: &Partition3D, window: u32) -> Result<LegPartition3D, PartitionError> {
        LegPartition3D::new(no_legs(), window, p.cells().iter().copied())
    }

    pub fn legs(&self) -> &Legs {
        &self.legs
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn window_cells(&self) -> &[Cell] {
        &self.window_cells
    }

    pub fn contains(&self, c: &Cell) -> bool {
        if c.iter().all(|&x| x < self.window) {
            self.window_cells.binary_search(c).is_ok()
        } else {
            in_cylinder(&self.legs, c)
        }
    }

    fn validate(&self) -> Result<(), PartitionError> {
        for c in &self.window_cells {
            for i in 0..3 {
                if c[i] > 0 {
                    let mut p = *c;
                    p[i] -= 1;
                    if !self.contains(&p) {
                        return Err(PartitionError::NotOrderIdeal);
                    }
                }
            }
        }
        let w = self.window;
        for x in 0..w {
            for y in 0..w {
                for z in 0..w {
                    let c = [x, y, z];
                    if in_cylinder(&self.legs, &c) && !self.contains(&c) {
                        return Err(PartitionError::MissingCylinderCell(c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Cells in `[0, n)^3` for `n >= window`.
    fn count_in_box(&self, n: u32) -> i64 {
        assert!(n >= self.window);
        let mut outside: HashSet<Cell> = HashSet::new();
        for (i, leg) in self.legs.iter().enumerate() {
            for (a, b) in leg.cells() {
                for t in 0..n {
                    let mut c = [0; 3];
                    c[i] = t;
                    c[(i + 1) % 3] = a;
                    c[(i + 2) % 3] = b;
                    if c.iter().any(|&x| x >= self.window) && c.iter().all(|&x| x < n) {
                        outside.insert(c);
                    }
                }
            }
        }
        self.window_cells.len() as i64 + outside.len() as i64
    }

    fn volume_at(&self, n: u32) -> i64 {
        let legs: i64 = self.legs.iter().map(|l| l.size() as i64).sum();
        self.count_in_box(n) - n as i64 * legs
    }

    /// Box count after removing the infinite leg cylinders.
    pub fn renormalized_volume(&self) -> i64 {
        let v = self.volume_at(self.window);
        debug_assert_eq!(v, self.volume_at(self.window + 1));
        v
    }

    /// Volume computed with a cut-off box `[0, n)^3`, `n >= window`.
    pub fn volume_with_cutoff(&self, n: u32) -> i64 {
        self.volume_at(n)
    }

    /// Cells of `self` not in the minimal configuration.
    pub fn extra_cells(&self) -> Vec<Cell> {
        self.window_cells
            .iter()
            .filter(|c| !in_cylinder(&self.legs, c))
            .copied()
            .collect()
    }

    /// The same partition described with a larger window.
    pub fn with_window(&self, window: u32) -> Result<LegPartition3D, PartitionError> {
        let mut cells: BTreeSet<Cell> = self.window_cells.iter().copied().collect();
        for x in 0..window {
            for y in 0..window {
                for z in 0..window {
                    let c = [x, y, z];
                    if in_cylinder(&self.legs, &c) {
                        cells.insert(c);
                    }
                }
            }
        }
        LegPartition3D::new(self.legs.clone(), window, cells)
    }
}

/// Default window: `n + leg extent + 2`.
pub fn default_window(legs: &Legs, n: i64) -> u32 {
    (n.max(0) as u32) + leg_extent(legs) + 2
}

/// All legged partitions of renormalized volume exactly `n`.
///
/// With `window = None` the default window is used and grown if the
/// boundary check fires; with an explicit window the check is an error.
pub fn enumerate_with_legs(legs: &Legs, n: i64, window: Option<u32>) -> Result<Vec<LegPartition3D>, PartitionError> {
    let explicit = window.is_some();
    let mut w = window.unwrap_or_else(|| default_window(legs, n));
    loop {
        match enumerate_in_window(legs, n, w) {
            Err(PartitionError::WindowTooSmall(_)) if !explicit => w += 2,
            other => return other,
        }
    }
}

fn enumerate_in_window(legs: &Legs, n: i64, window: u32) -> Result<Vec<LegPartition3D>, PartitionError> {
    let min = LegPartition3D::minimal(legs.clone(), window)?;
    let extra = n - min.renormalized_volume();
    if extra < 0 {
        return Ok(Vec::new());
    }
    let mut search = LegSearch {
        legs,
        window,
        cells: min.window_cells.iter().copied().collect(),
        out: Vec::new(),
    };
    search.grow(extra as usize)?;
    let mut out = search.out;
    out.sort();
    Ok(out)
}

struct LegSearch<'a> {
    legs: &'a Legs,
    window: u32,
    cells: BTreeSet<Cell>,
    out: Vec<LegPartition3D>,
}

impl LegSearch<'_> {
    fn member(&self, c: &Cell) -> bool {
        if c.iter().all(|&x| x < self.window) {
            self.cells.contains(c)
        } else {
            in_cylinder(self.legs, c)
        }
    }

    fn addable(&self) -> Result<Vec<Cell>, PartitionError> {
        let mut cands: BTreeSet<Cell> = BTreeSet::new();
        cands.insert([0, 0, 0]);
        for c in &self.cells {
            for i in 0..3 {
                let mut s = *c;
                s[i] += 1;
                cands.insert(s);
            }
        }
        let mut out = Vec::new();
        for c in cands {
            if self.member(&c) {
                continue;
            }
            let preds_ok = (0..3).all(|i| {
                if c[i] == 0 {
                    return true;
                }
                let mut p = c;
                p[i] -= 1;
                self.member(&p)
            });
            if !preds_ok {
                continue;
            }
            if c.iter().any(|&x| x + 1 >= self.window) {
                return Err(PartitionError::WindowTooSmall(self.window));
            }
            out.push(c);
        }
        Ok(out)
    }

    fn removable_extra(&self, c: &Cell) -> bool {
        !in_cylinder(self.legs, c)
            && (0..3).all(|i| {
                let mut s = *c;
                s[i] += 1;
                !self.member(&s)
            })
    }

    fn grow(&mut self, remaining: usize) -> Result<(), PartitionError> {
        if remaining == 0 {
            self.out.push(LegPartition3D {
                legs: self.legs.clone(),
                window: self.window,
                window_cells: self.cells.iter().copied().collect(),
            });
            return Ok(());
        }
        for c in self.addable()? {
            self.cells.insert(c);
            let top = self.cells.iter().rev().find(|b| self.removable_extra(b)).copied();
            if top == Some(c) {
                self.grow(remaining - 1)?;
            }
            self.cells.remove(&c);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_finite;

    fn one_leg() -> Legs {
        [Partition2D::new(vec![1]).unwrap(), Partition2D::empty(), Partition2D::empty()]
    }

    #[test]
    fn minimal_configuration_has_volume_zero() {
        let out = enumerate_with_legs(&one_leg(), 0, None).unwrap();
        assert_eq!(out.len(), 1);
        let min = LegPartition3D::minimal(one_leg(), out[0].window()).unwrap();
        assert_eq!(out[0], min);
        assert_eq!(min.renormalized_volume(), 0);
    }

    #[test]
    fn one_extra_cell_has_volume_one() {
        let min = LegPartition3D::minimal(one_leg(), 5).unwrap();
        let mut cells = min.window_cells().to_vec();
        cells.push([0, 1, 0]);
        let p = LegPartition3D::new(one_leg(), 5, cells).unwrap();
        assert_eq!(p.renormalized_volume(), 1);
        assert_eq!(p.volume_with_cutoff(9), 1);
    }

    #[test]
    fn finite_volume() {
        let p = Partition3D::from_cells([[0, 0, 0], [1, 0, 0], [2, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let lp = LegPartition3D::from_finite(&p, 4).unwrap();
        assert_eq!(lp.renormalized_volume(), 5);
    }

    #[test]
    fn empty_legs_reduce_to_finite() {
        for k in 0..5 {
            let legged = enumerate_with_legs(&no_legs(), k, None).unwrap();
            let finite = enumerate_finite(k as usize);
            let a: Vec<Vec<Cell>> = legged.iter().map(|p| p.window_cells().to_vec()).collect();
            let b: Vec<Vec<Cell>> = finite.iter().map(|p| p.cells().to_vec()).collect();
            assert_eq!(a, b);
        }
    }

    /// Brute force: all sets of `m` extra cells in a window whose union with
    /// the minimal configuration is an order ideal.
    fn brute_force_count(legs: &Legs, m: usize, window: u32) -> usize {
        let min = LegPartition3D::minimal(legs.clone(), window).unwrap();
        let free: Vec<Cell> = (0..window)
            .flat_map(|x| (0..window).flat_map(move |y| (0..window).map(move |z| [x, y, z])))
            .filter(|c| !in_cylinder(legs, c))
            .collect();
        fn rec(free: &[Cell], start: usize, m: usize, chosen: &mut Vec<Cell>, legs: &Legs, base: &[Cell], w: u32, count: &mut usize) {
            if m == 0 {
                let cells: Vec<Cell> = base.iter().chain(chosen.iter()).copied().collect();
                if LegPartition3D::new(legs.clone(), w, cells).is_ok() {
                    *count += 1;
                }
                return;
            }
            for i in start..free.len() {
                chosen.push(free[i]);
                rec(free, i + 1, m - 1, chosen, legs, base, w, count);
                chosen.pop();
            }
        }
        let mut count = 0;
        rec(&free, 0, m, &mut Vec::new(), legs, min.window_cells(), window, &mut count);
        count
    }

    #[test]
    fn one_leg_counts_match_brute_force() {
        for m in 1..=2usize {
            let expected = brute_force_count(&one_leg(), m, 4);
            let got = enumerate_with_legs(&one_leg(), m as i64, None).unwrap().len();
            assert_eq!(got, expected, "m = {m}");
        }
    }

    #[test]
    fn explicit_small_window_is_detected() {
        assert_eq!(
            enumerate_with_legs(&one_leg(), 3, Some(3)),
            Err(PartitionError::WindowTooSmall(3))
        );
    }

    #[test]
    fn volume_is_cutoff_independent() {
        let legs = [Partition2D::new(vec![1]).unwrap(), Partition2D::new(vec![1]).unwrap(), Partition2D::empty()];
        for n in 0..3 {
            for p in enumerate_with_legs(&legs, n, None).unwrap() {
                assert_eq!(p.renormalized_volume(), n);
                assert_eq!(p.volume_with_cutoff(p.window() + 1), n);
                assert_eq!(p.volume_with_cutoff(p.window() + 3), n);
            }
        }
    }
}
