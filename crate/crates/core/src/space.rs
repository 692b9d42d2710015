//! Finite-degree models of `H²_E` and `L²_E` and their direct sums.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Hardy,
    Lebesgue,
}

/// Polynomials `Σ_{deg_lo ≤ k ≤ deg_hi} x_k z^k` with `x_k ∈ ℂ^{fiber_dim}`.
///
/// Coordinates are ordered degree-major, fiber-minor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedSpace {
    pub fiber_dim: usize,
    pub deg_lo: i64,
    pub deg_hi: i64,
    pub kind: SpaceKind,
}

impl TruncatedSpace {
    /// `H²` truncated to degrees `[0, n]`.
    pub fn hardy(fiber_dim: usize, n: usize) -> Self {
        TruncatedSpace { fiber_dim, deg_lo: 0, deg_hi: n as i64, kind: SpaceKind::Hardy }
    }

    /// `L²` truncated to degrees `[-n, n]`.
    pub fn lebesgue(fiber_dim: usize, n: usize) -> Self {
        Self::lebesgue_range(fiber_dim, -(n as i64), n as i64)
    }

    pub fn lebesgue_range(fiber_dim: usize, deg_lo: i64, deg_hi: i64) -> Self {
        assert!(deg_lo <= deg_hi, "empty degree range");
        TruncatedSpace { fiber_dim, deg_lo, deg_hi, kind: SpaceKind::Lebesgue }
    }

    pub fn num_degrees(&self) -> usize {
        (self.deg_hi - self.deg_lo + 1) as usize
    }

    pub fn dim(&self) -> usize {
        self.fiber_dim * self.num_degrees()
    }

    /// Local coordinate of `(degree, fiber)`, if the degree is inside the truncation.
    pub fn index(&self, deg: i64, fiber: usize) -> Option<usize> {
        if deg < self.deg_lo || deg > self.deg_hi || fiber >= self.fiber_dim {
            None
        } else {
            Some((deg - self.deg_lo) as usize * self.fiber_dim + fiber)
        }
    }

    /// `(degree, fiber)` of a local coordinate.
    pub fn coord(&self, idx: usize) -> (i64, usize) {
        (self.deg_lo + (idx / self.fiber_dim) as i64, idx % self.fiber_dim)
    }
}

/// Ordered direct sum of truncated spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceSum {
    pub blocks: Vec<TruncatedSpace>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coord {
    pub block: usize,
    pub deg: i64,
    pub fiber: usize,
}

impl SpaceSum {
    pub fn new(blocks: Vec<TruncatedSpace>) -> Self {
        SpaceSum { blocks }
    }

    pub fn single(s: TruncatedSpace) -> Self {
        SpaceSum { blocks: vec![s] }
    }

    /// `H²_E(n) ⊕ H²_F(n)`
    pub fn hardy_pair(dim_e: usize, dim_f: usize, n: usize) -> Self {
        Self::new(vec![TruncatedSpace::hardy(dim_e, n), TruncatedSpace::hardy(dim_f, n)])
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    pub fn offset(&self, block: usize) -> usize {
        self.blocks[..block].iter().map(|b| b.dim()).sum()
    }

    pub fn index(&self, block: usize, deg: i64, fiber: usize) -> Option<usize> {
        self.blocks[block].index(deg, fiber).map(|i| i + self.offset(block))
    }

    pub fn coords(&self) -> Vec<Coord> {
        let mut out = Vec::with_capacity(self.dim());
        for (b, s) in self.blocks.iter().enumerate() {
            for i in 0..s.dim() {
                let (deg, fiber) = s.coord(i);
                out.push(Coord { block: b, deg, fiber });
            }
        }
        out
    }

    /// Indices whose coordinates satisfy `keep`.
    pub fn select(&self, keep: impl Fn(&Coord) -> bool) -> Vec<usize> {
        self.coords().iter().enumerate().filter(|(_, c)| keep(c)).map(|(i, _)| i).collect()
    }

    /// Indices of coordinates with `|degree| ≤ w` (Hardy blocks: `degree ≤ w`).
    pub fn window_indices(&self, w: i64) -> Vec<usize> {
        self.select(|c| c.deg <= w && c.deg >= -w)
    }

    pub fn max_degree(&self) -> i64 {
        self.blocks.iter().map(|b| b.deg_hi).max().unwrap_or(0)
    }
}
