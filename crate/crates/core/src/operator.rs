//! Truncated operator matrices with per-coordinate exactness flags.
//!
//! A truncated Toeplitz or Hankel matrix is the leading section of the infinite
//! one, so every entry is correct; what truncation loses is the part of an output
//! that falls beyond degree `n`. Each matrix therefore records, per input
//! coordinate, whether the full image of that basis vector lies inside the
//! codomain truncation (`col_exact`), and likewise for the adjoint (`row_exact`).
//! Products, sums and adjoints propagate these flags, so any identity between
//! operators can be checked exactly on the flagged columns.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{cone, czero, to_f64, CMat, Real};
use crate::space::{SpaceKind, SpaceSum, TruncatedSpace};
use crate::subspace::SubspaceBasis;
use crate::symbol::LaurentSymbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Toeplitz,
    Hankel,
    Shift,
    Flip,
    Block,
    Composite,
}

#[derive(Clone, Debug)]
pub struct OperatorMatrix<T: Real> {
    pub domain: SpaceSum,
    pub codomain: SpaceSum,
    pub entries: CMat<T>,
    /// Column `j` is exact when the untruncated image of domain basis vector `j` lies in the codomain truncation.
    pub col_exact: Vec<bool>,
    /// Row `i` is exact when the same holds for the adjoint applied to codomain basis vector `i`.
    pub row_exact: Vec<bool>,
    pub provenance: Provenance,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn new(
        domain: SpaceSum,
        codomain: SpaceSum,
        entries: CMat<T>,
        col_exact: Vec<bool>,
        row_exact: Vec<bool>,
        provenance: Provenance,
    ) -> Self {
        assert_eq!(entries.shape(), (codomain.dim(), domain.dim()), "entries do not match spaces");
        assert_eq!(col_exact.len(), domain.dim());
        assert_eq!(row_exact.len(), codomain.dim());
        OperatorMatrix { domain, codomain, entries, col_exact, row_exact, provenance }
    }

    pub fn zero(domain: SpaceSum, codomain: SpaceSum) -> Self {
        let (c, r) = (domain.dim(), codomain.dim());
        Self::new(domain, codomain, DMatrix::zeros(r, c), vec![true; c], vec![true; r], Provenance::Block)
    }

    pub fn identity(space: SpaceSum) -> Self {
        let d = space.dim();
        Self::new(space.clone(), space, DMatrix::identity(d, d), vec![true; d], vec![true; d], Provenance::Block)
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            entries: self.entries.adjoint(),
            col_exact: self.row_exact.clone(),
            row_exact: self.col_exact.clone(),
            provenance: self.provenance,
        }
    }

    /// `self ∘ rhs`
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.domain.dim() != rhs.codomain.dim() {
            return Err(Error::Shape(format!(
                "compose: left domain has dimension {}, right codomain {}",
                self.domain.dim(),
                rhs.codomain.dim()
            )));
        }
        let entries = &self.entries * &rhs.entries;
        let z = czero::<T>();
        let col_exact = (0..rhs.domain.dim())
            .map(|j| {
                rhs.col_exact[j]
                    && rhs.entries.column(j).iter().enumerate().all(|(k, x)| *x == z || self.col_exact[k])
            })
            .collect();
        let row_exact = (0..self.codomain.dim())
            .map(|i| {
                self.row_exact[i]
                    && self.entries.row(i).iter().enumerate().all(|(k, x)| *x == z || rhs.row_exact[k])
            })
            .collect();
        Ok(OperatorMatrix {
            domain: rhs.domain.clone(),
            codomain: self.codomain.clone(),
            entries,
            col_exact,
            row_exact,
            provenance: Provenance::Composite,
        })
    }

    fn combine(&self, other: &Self, sign: T) -> Result<Self> {
        if self.entries.shape() != other.entries.shape() {
            return Err(Error::Shape("operator sum: shapes differ".into()));
        }
        let and = |a: &[bool], b: &[bool]| a.iter().zip(b).map(|(x, y)| *x && *y).collect::<Vec<_>>();
        Ok(OperatorMatrix {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: &self.entries + &other.entries * crate::scalar::Cx::new(sign, T::zero()),
            col_exact: and(&self.col_exact, &other.col_exact),
            row_exact: and(&self.row_exact, &other.row_exact),
            provenance: Provenance::Composite,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, T::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -T::one())
    }

    /// Block operator from a grid; row `i` shares a codomain, column `j` a domain.
    pub fn block(grid: Vec<Vec<Self>>) -> Result<Self> {
        let nr = grid.len();
        let nc = grid.first().map(|r| r.len()).unwrap_or(0);
        if nr == 0 || nc == 0 || grid.iter().any(|r| r.len() != nc) {
            return Err(Error::Shape("block grid must be rectangular and nonempty".into()));
        }
        for i in 0..nr {
            for j in 0..nc {
                if grid[i][j].codomain != grid[i][0].codomain || grid[i][j].domain != grid[0][j].domain {
                    return Err(Error::Shape(format!("block ({i},{j}) does not match its row/column spaces")));
                }
            }
        }
        let domain = SpaceSum::new(grid[0].iter().flat_map(|o| o.domain.blocks.clone()).collect());
        let codomain = SpaceSum::new(grid.iter().flat_map(|r| r[0].codomain.blocks.clone()).collect());
        let mut entries = DMatrix::zeros(codomain.dim(), domain.dim());
        let mut col_exact = vec![true; domain.dim()];
        let mut row_exact = vec![true; codomain.dim()];
        let mut r0 = 0;
        for row in &grid {
            let mut c0 = 0;
            let h = row[0].codomain.dim();
            for op in row {
                let w = op.domain.dim();
                entries.view_mut((r0, c0), (h, w)).copy_from(&op.entries);
                for j in 0..w {
                    col_exact[c0 + j] &= op.col_exact[j];
                }
                for i in 0..h {
                    row_exact[r0 + i] &= op.row_exact[i];
                }
                c0 += w;
            }
            r0 += h;
        }
        Ok(OperatorMatrix { domain, codomain, entries, col_exact, row_exact, provenance: Provenance::Block })
    }

    pub fn exact_columns(&self) -> Vec<usize> {
        (0..self.col_exact.len()).filter(|&j| self.col_exact[j]).collect()
    }

    /// Entries restricted to the exact columns.
    pub fn compress_domain(&self) -> CMat<T> {
        linalg::select_cols(&self.entries, &self.exact_columns())
    }

    /// Per domain fiber, the top degree of the longest exact run starting at the fiber's first exact degree
    /// (`deg_lo − 1` when no column of that fiber is exact).
    pub fn fiber_windows(&self) -> Vec<i64> {
        let mut out = Vec::new();
        let mut off = 0;
        for s in &self.domain.blocks {
            for f in 0..s.fiber_dim {
                let flags: Vec<bool> = (s.deg_lo..=s.deg_hi)
                    .map(|d| self.col_exact[off + s.index(d, f).unwrap()])
                    .collect();
                let w = match flags.iter().position(|&x| x) {
                    None => s.deg_lo - 1,
                    Some(p) => {
                        let run = flags[p..].iter().take_while(|&&x| x).count();
                        s.deg_lo + (p + run) as i64 - 1
                    }
                };
                out.push(w);
            }
            off += s.dim();
        }
        out
    }

    /// Largest `w` such that every domain coordinate of degree `≤ w` is exact.
    pub fn exact_window(&self) -> i64 {
        let coords = self.domain.coords();
        let lo = self.domain.blocks.iter().map(|b| b.deg_lo).min().unwrap_or(0);
        let first_bad = coords
            .iter()
            .zip(&self.col_exact)
            .filter(|(_, &ok)| !ok)
            .map(|(c, _)| c.deg)
            .min();
        match first_bad {
            None => self.domain.max_degree(),
            Some(d) => (d - 1).max(lo - 1),
        }
    }

    /// Indices of domain coordinates with degree `≤ w`; errors if any of them is not exact.
    pub fn window_columns(&self, w: i64) -> Result<Vec<usize>> {
        let idx = self.domain.select(|c| c.deg <= w);
        if idx.iter().any(|&j| !self.col_exact[j]) {
            return Err(Error::EmptyWindow(format!("degree {w} exceeds the exactness window")));
        }
        Ok(idx)
    }

    /// Row-major JSON-friendly export.
    pub fn export(&self) -> MatrixExport {
        let (r, c) = self.entries.shape();
        let mut re = Vec::with_capacity(r * c);
        let mut im = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                re.push(to_f64(self.entries[(i, j)].re));
                im.push(to_f64(self.entries[(i, j)].im));
            }
        }
        MatrixExport { rows: r, cols: c, re, im }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatrixExport {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

fn col_band<T: Real>(s: &LaurentSymbol<T>, c: usize) -> Option<(i64, i64)> {
    s.column_band(c)
}

/// `h ↦ P[Φh]` on `H²` truncated to degree `n`; block `(j, i)` is `coeff(j − i)`.
pub fn toeplitz_op<T: Real>(s: &LaurentSymbol<T>, n: usize) -> Result<OperatorMatrix<T>> {
    let ni = n as i64;
    if s.band() > ni {
        return Err(Error::TruncationTooSmall { n, band: s.band() });
    }
    let (p, q) = s.shape();
    let dom = TruncatedSpace::hardy(q, n);
    let cod = TruncatedSpace::hardy(p, n);
    let mut m = DMatrix::zeros(cod.dim(), dom.dim());
    for j in 0..=ni {
        for i in 0..=ni {
            if let Some(c) = s.coeff_ref(j - i) {
                m.view_mut(((j as usize) * p, (i as usize) * q), (p, q)).copy_from(c);
            }
        }
    }
    // image of z^i e_c reaches degree i + kmax_c; adjoint image of z^j e_r reaches j − kmin_r
    let col_exact = (0..dom.dim())
        .map(|idx| {
            let (i, c) = dom.coord(idx);
            col_band(s, c).map_or(true, |(_, hi)| i + hi <= ni)
        })
        .collect();
    let row_exact = (0..cod.dim())
        .map(|idx| {
            let (j, r) = cod.coord(idx);
            s.row_band(r).map_or(true, |(lo, _)| j - lo <= ni)
        })
        .collect();
    Ok(OperatorMatrix::new(SpaceSum::single(dom), SpaceSum::single(cod), m, col_exact, row_exact, Provenance::Toeplitz))
}

/// `h ↦ PJ[Φh]` on `H²` truncated to degree `n`; block `(j, i)` is `coeff(−(j + i + 1))`.
///
/// Any `n ≥ 0` is accepted: when `n < −kmin − 1` the matrix is the leading section of
/// the infinite Hankel matrix and the exactness flags mark which columns are complete.
pub fn hankel_op<T: Real>(s: &LaurentSymbol<T>, n: usize) -> Result<OperatorMatrix<T>> {
    let ni = n as i64;
    let (p, q) = s.shape();
    let dom = TruncatedSpace::hardy(q, n);
    let cod = TruncatedSpace::hardy(p, n);
    let mut m = DMatrix::zeros(cod.dim(), dom.dim());
    for j in 0..=ni {
        for i in 0..=ni {
            if let Some(c) = s.coeff_ref(-(j + i + 1)) {
                m.view_mut(((j as usize) * p, (i as usize) * q), (p, q)).copy_from(c);
            }
        }
    }
    // image of z^i e_c reaches degree −kmin_c − 1 − i
    let col_exact = (0..dom.dim())
        .map(|idx| {
            let (i, c) = dom.coord(idx);
            col_band(s, c).map_or(true, |(lo, _)| -lo - 1 - i <= ni)
        })
        .collect();
    let row_exact = (0..cod.dim())
        .map(|idx| {
            let (j, r) = cod.coord(idx);
            s.row_band(r).map_or(true, |(lo, _)| -lo - 1 - j <= ni)
        })
        .collect();
    Ok(OperatorMatrix::new(SpaceSum::single(dom), SpaceSum::single(cod), m, col_exact, row_exact, Provenance::Hankel))
}

/// `H_Φ* = H_{Φ(z̄)*}`
pub fn hankel_adjoint_op<T: Real>(s: &LaurentSymbol<T>, n: usize) -> Result<OperatorMatrix<T>> {
    hankel_op(&s.conj_arg().adjoint(), n)
}

pub struct ShiftOps<T: Real> {
    pub forward: OperatorMatrix<T>,
    pub backward: OperatorMatrix<T>,
    pub flip: OperatorMatrix<T>,
}

fn permutation_like<T: Real>(
    dom: TruncatedSpace,
    cod: TruncatedSpace,
    map: impl Fn(i64) -> Option<i64>,
    provenance: Provenance,
) -> CMat<T> {
    let _ = provenance;
    let mut m = DMatrix::zeros(cod.dim(), dom.dim());
    for d in dom.deg_lo..=dom.deg_hi {
        if let Some(t) = map(d) {
            for f in 0..dom.fiber_dim {
                if let (Some(r), Some(c)) = (cod.index(t, f), dom.index(d, f)) {
                    m[(r, c)] = cone();
                }
            }
        }
    }
    m
}

/// Forward shift, its adjoint, and the flip `J: z^k ↦ z^{−k−1}` on a truncated space.
///
/// On a Hardy truncation `[0, n]` the flip lands in the Lebesgue truncation `[−n−1, n]`;
/// on a Lebesgue truncation it lands in the smallest flip-symmetric range containing it.
pub fn shift_ops<T: Real>(space: TruncatedSpace) -> ShiftOps<T> {
    let fd = space.fiber_dim;
    let (lo, hi) = (space.deg_lo, space.deg_hi);
    let dom = SpaceSum::single(space);
    let fwd_m = permutation_like::<T>(space, space, |d| Some(d + 1), Provenance::Shift);
    let flags = |f: &dyn Fn(i64) -> bool| (0..space.dim()).map(|i| f(space.coord(i).0)).collect::<Vec<_>>();
    let (fwd_col, fwd_row) = match space.kind {
        // T_z: image of z^n is lost; T_z* is exact everywhere
        SpaceKind::Hardy => (flags(&|d| d < hi), flags(&|_| true)),
        SpaceKind::Lebesgue => (flags(&|d| d < hi), flags(&|d| d > lo)),
    };
    let forward = OperatorMatrix::new(dom.clone(), dom.clone(), fwd_m, fwd_col, fwd_row, Provenance::Shift);
    let backward = forward.adjoint();

    let (flo, fhi) = match space.kind {
        SpaceKind::Hardy => (-hi - 1, hi),
        SpaceKind::Lebesgue => (lo.min(-hi - 1), hi.max(-lo - 1)),
    };
    let target = TruncatedSpace::lebesgue_range(fd, flo, fhi);
    let flip_m = permutation_like::<T>(space, target, |d| Some(-d - 1), Provenance::Flip);
    let flip = OperatorMatrix::new(
        dom,
        SpaceSum::single(target),
        flip_m,
        vec![true; space.dim()],
        vec![true; target.dim()],
        Provenance::Flip,
    );
    ShiftOps { forward, backward, flip }
}

fn require_analytic<T: Real>(s: &LaurentSymbol<T>, name: &str) -> Result<()> {
    if s.is_analytic() {
        Ok(())
    } else {
        Err(Error::NotAnalytic(name.to_string()))
    }
}

/// `W_Ψ = [H_C*, T_A*; H_D*, T_B*]` on `H²_E(n) ⊕ H²_F(n)` for `Ψ = [C, D; A, B]`.
pub fn build_w_psi<T: Real>(
    c: &LaurentSymbol<T>,
    d: &LaurentSymbol<T>,
    a: &LaurentSymbol<T>,
    b: &LaurentSymbol<T>,
    n: usize,
) -> Result<OperatorMatrix<T>> {
    require_analytic(a, "A")?;
    require_analytic(b, "B")?;
    check_grid(c, d, a, b)?;
    OperatorMatrix::block(vec![
        vec![hankel_adjoint_op(c, n)?, toeplitz_op(&a.adjoint(), n)?],
        vec![hankel_adjoint_op(d, n)?, toeplitz_op(&b.adjoint(), n)?],
    ])
}

/// `V_Φ = [T_A, T_B; H_C, H_D]` for `Φ = [A, B; C, D]`.
pub fn build_v_phi<T: Real>(
    a: &LaurentSymbol<T>,
    b: &LaurentSymbol<T>,
    c: &LaurentSymbol<T>,
    d: &LaurentSymbol<T>,
    n: usize,
) -> Result<OperatorMatrix<T>> {
    require_analytic(a, "A")?;
    require_analytic(b, "B")?;
    check_grid(a, b, c, d)?;
    OperatorMatrix::block(vec![
        vec![toeplitz_op(a, n)?, toeplitz_op(b, n)?],
        vec![hankel_op(c, n)?, hankel_op(d, n)?],
    ])
}

fn check_grid<T: Real>(
    tl: &LaurentSymbol<T>,
    tr: &LaurentSymbol<T>,
    bl: &LaurentSymbol<T>,
    br: &LaurentSymbol<T>,
) -> Result<()> {
    if tl.rows() != tr.rows() || bl.rows() != br.rows() || tl.cols() != bl.cols() || tr.cols() != br.cols() {
        return Err(Error::Shape("blocks do not form a 2x2 block symbol".into()));
    }
    Ok(())
}

/// `W_Ψ = [H_{Ψ_E}*, T_{Ψ_F}*] : H²_E(n) ⊕ H²_F(n) → H²_K(n)`, where `Ψ_E` is the top
/// `dim_e` rows of `Ψ : K → E ⊕ F` and `Ψ_F` the rest.
pub fn w_psi<T: Real>(psi: &LaurentSymbol<T>, dim_e: usize, n: usize) -> Result<OperatorMatrix<T>> {
    let (pe, pf) = split_rows(psi, dim_e)?;
    require_analytic(&pf, "Psi_F")?;
    OperatorMatrix::block(vec![vec![hankel_adjoint_op(&pe, n)?, toeplitz_op(&pf.adjoint(), n)?]])
}

/// `V_Φ = [T_{Φ_E}; H_{Φ_F}] : H²_K(n) → H²_E(n) ⊕ H²_F(n)`.
pub fn v_phi<T: Real>(phi: &LaurentSymbol<T>, dim_e: usize, n: usize) -> Result<OperatorMatrix<T>> {
    let (pe, pf) = split_rows(phi, dim_e)?;
    require_analytic(&pe, "Phi_E")?;
    OperatorMatrix::block(vec![vec![toeplitz_op(&pe, n)?], vec![hankel_op(&pf, n)?]])
}

/// Split a symbol into its top `dim_e` rows and the remaining rows.
pub fn split_rows<T: Real>(s: &LaurentSymbol<T>, dim_e: usize) -> Result<(LaurentSymbol<T>, LaurentSymbol<T>)> {
    if dim_e == 0 || dim_e >= s.rows() {
        return Err(Error::Shape(format!(
            "cannot split {} rows into E ({dim_e}) and a nonempty F",
            s.rows()
        )));
    }
    Ok((s.row_block(0, dim_e), s.row_block(dim_e, s.rows())))
}

pub struct SvdAnalysis<T: Real> {
    pub norm: T,
    pub singular_values: Vec<T>,
    pub kernel_basis: SubspaceBasis<T>,
    pub range_basis: SubspaceBasis<T>,
    pub is_partial_isometry: bool,
}

/// SVD of the operator compressed to its exact columns.
pub fn svd_analysis<T: Real>(op: &OperatorMatrix<T>, tol: T) -> SvdAnalysis<T> {
    let cols = op.exact_columns();
    let m = linalg::select_cols(&op.entries, &cols);
    let d = linalg::svd(&m);
    let rank = d.s.iter().filter(|&&s| s > tol).count();
    let mut kernel = DMatrix::zeros(op.domain.dim(), cols.len() - rank);
    let null = d.v.columns(rank, cols.len() - rank);
    for (k, &j) in cols.iter().enumerate() {
        kernel.set_row(j, &null.row(k));
    }
    let range = d.u.columns(0, rank).into_owned();
    let is_pi = d.s.iter().all(|&s| s <= tol || (s - T::one()).abs() <= tol);
    let w = op.exact_window();
    SvdAnalysis {
        norm: d.s.first().copied().unwrap_or_else(T::zero),
        singular_values: d.s,
        kernel_basis: SubspaceBasis::from_orthonormal(op.domain.clone(), kernel, w),
        range_basis: SubspaceBasis::from_orthonormal(op.codomain.clone(), range, w),
        is_partial_isometry: is_pi,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Intertwining {
    /// `X V_Φ = V_Φ Y`
    VPhi,
    /// `W_Ψ X = Y* W_Ψ`
    WPsi,
}

/// `S_E ⊕ S_F*` on a two-block Hardy sum.
pub fn x_shift<T: Real>(space: &SpaceSum) -> Result<OperatorMatrix<T>> {
    if space.blocks.len() != 2 {
        return Err(Error::Shape("X = S_E ⊕ S_F* needs a two-block space".into()));
    }
    let e = shift_ops::<T>(space.blocks[0]).forward;
    let f = shift_ops::<T>(space.blocks[1]).backward;
    let ze = OperatorMatrix::zero(f.domain.clone(), e.codomain.clone());
    let zf = OperatorMatrix::zero(e.domain.clone(), f.codomain.clone());
    OperatorMatrix::block(vec![vec![e, ze], vec![zf, f]])
}

/// Forward shift on every block of a sum.
pub fn y_shift<T: Real>(space: &SpaceSum) -> Result<OperatorMatrix<T>> {
    let k = space.blocks.len();
    let mut grid = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            let bi = SpaceSum::single(space.blocks[i]);
            let bj = SpaceSum::single(space.blocks[j]);
            row.push(if i == j { shift_ops::<T>(space.blocks[i]).forward } else { OperatorMatrix::zero(bj, bi) });
        }
        grid.push(row);
    }
    OperatorMatrix::block(grid)
}

/// Spectral norm of an operator identity's defect, restricted to its exact columns.
pub fn defect_norm<T: Real>(d: &OperatorMatrix<T>) -> Result<T> {
    let cols = d.exact_columns();
    if cols.is_empty() {
        return Err(Error::EmptyWindow("no exact columns".into()));
    }
    Ok(linalg::spectral_norm(&linalg::select_cols(&d.entries, &cols)))
}

/// `‖X V_Φ − V_Φ Y‖` or `‖W_Ψ X − Y* W_Ψ‖` on the exact window.
pub fn intertwining_residual<T: Real>(op: &OperatorMatrix<T>, kind: Intertwining) -> Result<T> {
    let d = match kind {
        Intertwining::VPhi => {
            let x = x_shift::<T>(&op.codomain)?;
            let y = y_shift::<T>(&op.domain)?;
            x.compose(op)?.sub(&op.compose(&y)?)?
        }
        Intertwining::WPsi => {
            let x = x_shift::<T>(&op.domain)?;
            let ys = y_shift::<T>(&op.codomain)?.adjoint();
            op.compose(&x)?.sub(&ys.compose(op)?)?
        }
    };
    defect_norm(&d)
}

pub struct NehariBounds<T: Real> {
    /// `(n, ‖V_Φ‖ on the exact window)`
    pub lower: Vec<(usize, T)>,
    /// One sampled sup-norm per candidate.
    pub upper: Vec<T>,
    /// Best upper minus best lower.
    pub gap: T,
}

/// Bracket `inf_{L₁,L₂ ∈ H^∞} ‖[A, B; C − L₁, D − L₂]‖_∞` between truncated norms of `V_Φ`
/// and sampled norms of candidate completions. Without candidates the analytic parts of
/// `C` and `D` are used.
pub fn nehari_bounds<T: Real>(
    a: &LaurentSymbol<T>,
    b: &LaurentSymbol<T>,
    c: &LaurentSymbol<T>,
    d: &LaurentSymbol<T>,
    n_list: &[usize],
    candidates: &[(LaurentSymbol<T>, LaurentSymbol<T>)],
    num_samples: usize,
) -> Result<NehariBounds<T>> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("n_list must be strictly ascending".into()));
    }
    let mut lower = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let v = build_v_phi(a, b, c, d, n)?;
        lower.push((n, linalg::spectral_norm(&v.compress_domain())));
    }
    let default = [(c.analytic_part(), d.analytic_part())];
    let cands: &[(LaurentSymbol<T>, LaurentSymbol<T>)] = if candidates.is_empty() { &default } else { candidates };
    let mut upper = Vec::with_capacity(cands.len());
    for (l1, l2) in cands {
        require_analytic(l1, "L1")?;
        require_analytic(l2, "L2")?;
        let full = LaurentSymbol::block2(a, b, &c.sub(l1)?, &d.sub(l2)?)?;
        let ns = num_samples.max(4 * full.band() as usize + 1).max(64);
        let sup = crate::classify::sample(&full, ns)
            .iter()
            .map(linalg::spectral_norm)
            .fold(T::zero(), |x, y| x.max(y));
        upper.push(sup);
    }
    let lo = lower.iter().map(|p| p.1).fold(T::zero(), |x, y| x.max(y));
    let hi = upper.iter().copied().fold(T::max_value().unwrap_or_else(T::one), |x, y| x.min(y));
    Ok(NehariBounds { lower, upper, gap: hi - lo })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    type S = LaurentSymbol<f64>;

    fn lower_shift(n: usize) -> CMat<f64> {
        DMatrix::from_fn(n + 1, n + 1, |i, j| if i == j + 1 { cx(1.0, 0.0) } else { cx(0.0, 0.0) })
    }

    #[test]
    fn toeplitz_examples() {
        let t = toeplitz_op(&S::scalar_real(1, &[1.0]), 3).unwrap();
        assert_eq!(t.entries, lower_shift(3));
        assert_eq!(t.exact_window(), 2);
        let one = toeplitz_op(&S::scalar_real(0, &[1.0]), 5).unwrap();
        assert_eq!(one.entries, DMatrix::identity(6, 6));
        let tb = toeplitz_op(&S::scalar_real(-1, &[1.0]), 3).unwrap();
        assert_eq!(tb.entries, lower_shift(3).adjoint());
        assert_eq!(tb.exact_window(), 3);
        assert!(matches!(toeplitz_op(&S::scalar_real(4, &[1.0]), 3), Err(Error::TruncationTooSmall { .. })));
    }

    #[test]
    fn hankel_examples() {
        let h = hankel_op(&S::scalar_real(-1, &[1.0]), 3).unwrap();
        let mut e00 = DMatrix::zeros(4, 4);
        e00[(0, 0)] = cx(1.0, 0.0);
        assert_eq!(h.entries, e00);
        assert_eq!(h.exact_window(), 3);
        let an = hankel_op(&S::scalar_real(0, &[1.0, 0.0, 1.0]), 3).unwrap();
        assert_eq!(an.entries, DMatrix::zeros(4, 4));
        let h2 = hankel_op(&S::scalar_real(-2, &[1.0]), 3).unwrap();
        let mut want = DMatrix::zeros(4, 4);
        want[(0, 1)] = cx(1.0, 0.0);
        want[(1, 0)] = cx(1.0, 0.0);
        assert_eq!(h2.entries, want);
    }

    #[test]
    fn hankel_leading_section_flags() {
        // z̄^5 at n = 2: image of z^i is z^{4−i}, inside [0, 2] only for i = 2
        let h = hankel_op(&S::scalar_real(-5, &[1.0]), 2).unwrap();
        assert_eq!(h.col_exact, vec![false, false, true]);
    }

    #[test]
    fn shift_examples() {
        let ops = shift_ops::<f64>(TruncatedSpace::hardy(1, 2));
        assert_eq!(ops.forward.entries, lower_shift(2));
        assert_eq!(ops.forward.exact_window(), 1);
        assert_eq!(ops.backward.exact_window(), 2);
        assert_eq!(ops.flip.codomain.blocks[0].deg_lo, -3);

        let l = TruncatedSpace::lebesgue_range(1, -4, 3);
        let ops = shift_ops::<f64>(l);
        let jj = ops.flip.compose(&ops.flip).unwrap();
        assert!((defect_norm(&jj.sub(&OperatorMatrix::identity(jj.domain.clone())).unwrap()).unwrap()) < 1e-15);
        let lhs = ops.flip.compose(&ops.backward).unwrap();
        let rhs = ops.forward.compose(&ops.flip).unwrap();
        let d = lhs.sub(&rhs).unwrap();
        assert!(d.exact_columns().len() >= 7);
        assert_eq!(defect_norm(&d).unwrap(), 0.0);
    }

    #[test]
    fn w_psi_examples() {
        let z = S::zero(1, 1);
        let w = build_w_psi(&z, &z, &z, &z, 4).unwrap();
        assert_eq!(w.entries.norm(), 0.0);
        let zb = S::scalar_real(-1, &[1.0]);
        let w = build_w_psi(&zb, &z, &z, &z, 3).unwrap();
        let mut want = DMatrix::zeros(8, 8);
        want[(0, 0)] = cx(1.0, 0.0);
        assert_eq!(w.entries, want);
        assert!(matches!(build_w_psi(&z, &z, &zb, &z, 3), Err(Error::NotAnalytic(_))));
    }

    #[test]
    fn v_phi_examples() {
        let r = 1.0 / 3f64.sqrt();
        let phi = S::from_real(3, 1, &[(-1, &[0.0, r, r]), (0, &[r, 0.0, 0.0])]).unwrap();
        let v = v_phi(&phi, 1, 4).unwrap();
        let mut want = DMatrix::zeros(15, 5);
        for i in 0..5 {
            want[(i, i)] = cx(r, 0.0);
        }
        want[(5, 0)] = cx(r, 0.0);
        want[(6, 0)] = cx(r, 0.0);
        assert!((v.entries - want).norm() < 1e-15);

        let a = S::scalar_real(0, &[1.0, 1.0]);
        let z = S::zero(1, 1);
        let v = build_v_phi(&a, &z, &z, &z, 3).unwrap();
        assert_eq!(v.entries.rows(4, 4).norm(), 0.0);
    }

    #[test]
    fn svd_examples() {
        let h = hankel_op(&S::scalar_real(-1, &[1.0]), 8).unwrap();
        let s = svd_analysis(&h, 1e-10);
        assert!((s.norm - 1.0).abs() < 1e-14);
        assert!(s.is_partial_isometry);
        assert_eq!(s.kernel_basis.dim(), 8);

        let t = toeplitz_op(&S::scalar_real(1, &[1.0]), 8).unwrap();
        let full = linalg::singular_values(&t.entries);
        assert_eq!(full.iter().filter(|&&x| x < 1e-12).count(), 1);
        let s = svd_analysis(&t, 1e-10);
        assert!(s.singular_values.iter().all(|&x| (x - 1.0).abs() < 1e-14));

        let z = OperatorMatrix::<f64>::zero(SpaceSum::single(TruncatedSpace::hardy(2, 3)), SpaceSum::single(TruncatedSpace::hardy(1, 3)));
        let s = svd_analysis(&z, 1e-10);
        assert_eq!(s.norm, 0.0);
        assert_eq!(s.kernel_basis.dim(), 8);
    }

    #[test]
    fn nehari_examples() {
        let z = S::zero(1, 1);
        let zb = S::scalar_real(-1, &[1.0]);
        let nb = nehari_bounds(&z, &z, &z, &zb, &[2, 4, 8], &[(z.clone(), z.clone())], 0).unwrap();
        assert!(nb.lower.iter().all(|p| (p.1 - 1.0).abs() < 1e-12));
        assert!((nb.upper[0] - 1.0).abs() < 1e-12);

        let d = S::scalar_real(-1, &[2.0, 0.0, 1.0]);
        let l2 = S::scalar_real(1, &[1.0]);
        let nb = nehari_bounds(&z, &z, &z, &d, &[4, 8], &[(z.clone(), l2)], 0).unwrap();
        assert!((nb.lower[1].1 - 2.0).abs() < 1e-12);
        assert!((nb.upper[0] - 2.0).abs() < 1e-12);
        assert!(nb.gap.abs() < 1e-12);
    }
}
