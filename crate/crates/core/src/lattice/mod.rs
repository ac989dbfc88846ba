//! Chains and cochains on the cubical lattice with cells of edge `2h` centred at every vertex.
//!
//! Coordinates are integers in units of the base step `h`. A lattice with `spacing = s` has
//! vertices at multiples of `s` and cells of edge `2 s h`, so the coarse lattice of a scale pair
//! is the same torus with `spacing = 2`.

mod algebra;
mod element;
mod homology;
mod ops;
mod sample;

pub use algebra::{LatticeAlgebra, Normalization};
pub use element::{CellEntry, ElementFile, LatticeElement};
pub use homology::{degree0_homology_rank, rational_rank};
pub use ops::{pair_sign, position_sign};
pub use sample::{random_sample, sample_polynomial};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{int, LaurentH};

pub type Coords = SmallVec<[i64; 4]>;

/// Whether elements are chains (boundary, degree -1) or cochains (coboundary, degree +1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Chain,
    Cochain,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Chain => "chain",
            Role::Cochain => "cochain",
        }
    }

    pub fn diff_degree(self) -> i32 {
        match self {
            Role::Chain => -1,
            Role::Cochain => 1,
        }
    }
}

/// Inclusive box of vertex coordinates, in base units.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Region {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Region {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        Self { lo, hi }
    }

    /// `[-radius, radius]^dim`
    pub fn cube(dim: usize, radius: i64) -> Self {
        Self { lo: vec![-radius; dim], hi: vec![radius; dim] }
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (l, h))| l <= x && x <= h)
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }

    pub fn intersect(&self, other: &Region) -> Region {
        Region {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| *a.max(b)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    pub fn shifted(&self, axis: usize, by: i64) -> Region {
        let mut r = self.clone();
        r.lo[axis] += by;
        r.hi[axis] += by;
        r
    }

    /// Shrinks by `by` on both sides of every axis.
    pub fn shrunk(&self, by: i64) -> Region {
        Region {
            lo: self.lo.iter().map(|x| x + by).collect(),
            hi: self.hi.iter().map(|x| x - by).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Coordinates reduced modulo `4 N spacing`.
    Periodic,
    /// Finite window; values outside are unknown, never wrapped.
    Window(Region),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// `h` stays symbolic.
    Formal,
    /// `h = 2^-level`.
    Numeric(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub dim: usize,
    /// `N`: the periodic side is `4 N` steps.
    pub period: u32,
    /// Vertex spacing in base units (1 for `L_h`, 2 for `L_{2h}`).
    pub spacing: i64,
    pub mode: Mode,
    pub scale: Scale,
}

impl LatticeSpec {
    pub fn periodic(dim: usize, period: u32) -> Result<Self> {
        Self::new(dim, period, 1, Mode::Periodic, Scale::Formal)
    }

    pub fn window(dim: usize, radius: i64) -> Result<Self> {
        Self::new(dim, 1, 1, Mode::Window(Region::cube(dim, radius)), Scale::Formal)
    }

    pub fn new(dim: usize, period: u32, spacing: i64, mode: Mode, scale: Scale) -> Result<Self> {
        if dim == 0 || dim > 8 {
            return Err(Error::InvalidArgument(format!("dimension must be in 1..=8, got {dim}")));
        }
        if period == 0 || spacing <= 0 {
            return Err(Error::InvalidArgument("period and spacing must be positive".into()));
        }
        if let Mode::Window(r) = &mode {
            if r.lo.len() != dim || r.hi.len() != dim {
                return Err(Error::LengthMismatch { expected: dim, found: r.lo.len().min(r.hi.len()) });
            }
            if r.is_empty() {
                return Err(Error::WindowOverflow("window region is empty".into()));
            }
        }
        Ok(Self { dim, period, spacing, mode, scale })
    }

    pub fn with_scale(&self, scale: Scale) -> Self {
        Self { scale, ..self.clone() }
    }

    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        Self::new(self.dim, self.period, self.spacing, mode, self.scale)
    }

    /// Side of the periodic box in base units.
    pub fn side(&self) -> i64 {
        4 * i64::from(self.period) * self.spacing
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.mode, Mode::Periodic)
    }

    /// The base step `h` as a scalar.
    pub fn h(&self) -> LaurentH {
        match self.scale {
            Scale::Formal => LaurentH::h_power(1),
            Scale::Numeric(level) => LaurentH::h_power(1).evaluate_at_scale(level).into(),
        }
    }

    /// `h^k` as a scalar (negative `k` allowed).
    pub fn h_power(&self, k: i32) -> LaurentH {
        match self.scale {
            Scale::Formal => LaurentH::h_power(k),
            Scale::Numeric(level) => LaurentH::h_power(k).evaluate_at_scale(level).into(),
        }
    }

    /// One lattice step, `spacing · h`.
    pub fn step(&self) -> LaurentH {
        self.h().scale(&int(self.spacing))
    }

    /// `step^k` (negative `k` allowed).
    pub fn step_power(&self, k: i32) -> LaurentH {
        let s = crate::scalar::Rational::from_integer(self.spacing.into());
        self.h_power(k).scale(&num::pow::Pow::pow(s, k))
    }

    /// `1 / (c · step)`
    pub fn inverse_step(&self, c: i64) -> LaurentH {
        self.h_power(-1).scale(&crate::scalar::rat(1, c * self.spacing))
    }

    /// Reduces periodic coordinates into `[0, side)`; window coordinates are returned unchanged.
    pub fn normalize(&self, p: &mut [i64]) {
        if self.is_periodic() {
            let side = self.side();
            for x in p.iter_mut() {
                *x = x.rem_euclid(side);
            }
        }
    }

    pub fn is_vertex(&self, p: &[i64]) -> bool {
        p.len() == self.dim && p.iter().all(|x| x.rem_euclid(self.spacing) == 0)
    }

    /// All vertices of a periodic lattice, or of the window region.
    pub fn vertices(&self) -> Vec<Coords> {
        let (lo, hi): (Vec<i64>, Vec<i64>) = match &self.mode {
            Mode::Periodic => (vec![0; self.dim], vec![self.side() - 1; self.dim]),
            Mode::Window(r) => (r.lo.clone(), r.hi.clone()),
        };
        let s = self.spacing;
        let first: Vec<i64> = lo.iter().map(|l| l + (s - l.rem_euclid(s)) % s).collect();
        let mut out = Vec::new();
        if first.iter().zip(&hi).any(|(f, h)| f > h) {
            return out;
        }
        let mut p: Coords = first.iter().copied().collect();
        loop {
            out.push(p.clone());
            let mut axis = 0;
            loop {
                if axis == self.dim {
                    return out;
                }
                p[axis] += s;
                if p[axis] <= hi[axis] {
                    break;
                }
                p[axis] = first[axis];
                axis += 1;
            }
        }
    }

    /// Every cell of a periodic lattice (or window), ordered by `(center, type)`.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for p in self.vertices() {
            for ty in 0..(1u32 << self.dim) {
                out.push(Cell { center: p.clone(), ty });
            }
        }
        out
    }

    /// Fails unless two specs describe the same lattice.
    pub fn ensure_same(&self, other: &LatticeSpec) -> Result<()> {
        if self != other {
            return Err(Error::LatticeMismatch(format!("{self:?} vs {other:?}")));
        }
        Ok(())
    }
}

/// The cell of type `ty` (bitmask over axes) centred at `center`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub center: Coords,
    pub ty: u32,
}

impl Cell {
    pub fn new(center: &[i64], ty: u32) -> Self {
        Self { center: center.iter().copied().collect(), ty }
    }

    pub fn degree(&self) -> i32 {
        self.ty.count_ones() as i32
    }

    pub fn axes(&self) -> Vec<usize> {
        (0..32).filter(|j| self.ty >> j & 1 == 1).collect()
    }
}

/// Bitmask of the listed axes.
pub fn type_mask(axes: &[usize]) -> u32 {
    axes.iter().fold(0, |m, &a| m | 1 << a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertices_of_coarse_lattice() {
        let spec = LatticeSpec::new(2, 1, 2, Mode::Periodic, Scale::Formal).unwrap();
        let v = spec.vertices();
        assert_eq!(v.len(), 16);
        assert!(v.iter().all(|p| spec.is_vertex(p)));
        let w = LatticeSpec::new(1, 1, 2, Mode::Window(Region::new(vec![-3], vec![3])), Scale::Formal).unwrap();
        let got: Vec<i64> = w.vertices().iter().map(|p| p[0]).collect();
        assert_eq!(got, vec![-2, 0, 2]);
    }

    #[test]
    fn numeric_steps() {
        let spec = LatticeSpec::periodic(1, 1).unwrap().with_scale(Scale::Numeric(3));
        assert_eq!(spec.h().as_constant(), Some(crate::scalar::rat(1, 8)));
        assert_eq!(spec.inverse_step(2).as_constant(), Some(int(4)));
    }
}
