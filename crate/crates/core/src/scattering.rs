//! Scattering-matrix form of the split system and its cascade along a chain.
//!
//! A cell maps `(y1[k-1], y2[k])` (waves entering the cell) to
//! `(y2[k-1], y1[k])` (waves leaving it). The cumulative matrix `S^(k)` does
//! the same for the segment from the first cell to `k`.

use crate::wave_split::{TransferSequence, TwoByTwoComplex};
use crate::{ComplexScalar, Error, Indexed, Result};

const ZERO: ComplexScalar = ComplexScalar::new(0.0, 0.0);

/// Scattering matrix of one cell plus its forcing term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellScatterData {
    pub s: TwoByTwoComplex,
    pub fbar: (ComplexScalar, ComplexScalar),
}

/// Converts a transfer matrix `T` (with split forcing `fbar`) to scattering form.
pub fn cell_smatrix(t: &TwoByTwoComplex, fbar: ComplexScalar, k: i64) -> Result<CellScatterData> {
    if t.m22.norm() <= 1e-300 {
        return Err(Error::NonInvertibleCell { k });
    }
    let inv = t.m22.inv();
    // Zero entries stay +0 so diagonal chains report R = 0 without a sign.
    let neg_ratio = |a: ComplexScalar| if a == ZERO { ZERO } else { -a * inv };
    let ratio = |a: ComplexScalar| if a == ZERO { ZERO } else { a * inv };
    let s = TwoByTwoComplex::new(neg_ratio(t.m21), inv, t.det() * inv, ratio(t.m12));
    let fbar = if fbar == ZERO {
        (ZERO, ZERO)
    } else {
        (-fbar * inv, -(t.m12 + t.m22) * inv * fbar)
    };
    if !s.is_finite() {
        return Err(Error::NonInvertibleCell { k });
    }
    Ok(CellScatterData { s, fbar })
}

/// Joins the segment matrix `acc` (first cell to `k-1`) with the cell matrix
/// at `k` by eliminating the amplitudes shared at `k-1`.
pub fn cascade(acc: &TwoByTwoComplex, cell: &TwoByTwoComplex, k: i64) -> Result<TwoByTwoComplex> {
    let d = ComplexScalar::new(1.0, 0.0) - acc.m22 * cell.m11;
    if d.norm() < 1e-12 {
        return Err(Error::CascadePole { k });
    }
    let inv = d.inv();
    let through = |a: ComplexScalar, b: ComplexScalar, c: ComplexScalar| {
        if a == ZERO || b == ZERO || c == ZERO {
            ZERO
        } else {
            a * b * c * inv
        }
    };
    Ok(TwoByTwoComplex::new(
        acc.m11 + through(acc.m12, cell.m11, acc.m21),
        acc.m12 * cell.m12 * inv,
        cell.m21 * acc.m21 * inv,
        cell.m22 + through(cell.m21, acc.m22, cell.m12),
    ))
}

/// `S^(k)` for every cell of a chain. The first cell's matrix is the
/// exchange matrix (an empty segment).
#[derive(Debug, Clone, PartialEq)]
pub struct CumulativeScatter {
    pub per_cell: Indexed<TwoByTwoComplex>,
}

impl CumulativeScatter {
    pub fn first_cell(&self) -> i64 {
        self.per_cell.start()
    }

    pub fn last_cell(&self) -> i64 {
        self.per_cell.end()
    }

    /// Matrix of the whole chain.
    pub fn total(&self) -> TwoByTwoComplex {
        self.per_cell[self.per_cell.end()]
    }
}

/// Cascades the homogeneous part of a transfer sequence. Cells run from
/// `first_index - 1` to `last_index`.
pub fn cumulative_scatter(transfers: &TransferSequence) -> Result<CumulativeScatter> {
    let first = transfers.first_index() - 1;
    let mut out = Vec::with_capacity(transfers.len() + 1);
    let mut acc = TwoByTwoComplex::exchange();
    out.push(acc);
    for k in transfers.first_index()..=transfers.last_index() {
        let cell = cell_smatrix(&transfers.matrix(k), ZERO, k)?;
        acc = cascade(&acc, &cell.s, k)?;
        out.push(acc);
    }
    Ok(CumulativeScatter {
        per_cell: Indexed::new(first, out),
    })
}

/// `R = S11`, `T = S21` of the whole-chain matrix.
pub fn extract_rt(total: &TwoByTwoComplex) -> (ComplexScalar, ComplexScalar) {
    (total.m11, total.m21)
}

/// Reflection, transmission and per-cell split and total fields for unit
/// incidence from the left.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterSolution {
    pub r: ComplexScalar,
    pub t: ComplexScalar,
    pub y1: Indexed<ComplexScalar>,
    pub y2: Indexed<ComplexScalar>,
    pub y: Indexed<ComplexScalar>,
}

/// Rebuilds the field from the cumulative matrices:
/// `y2[k] = (R - S11^(k)) / S12^(k)`, `y1[k] = S21^(k) + S22^(k) y2[k]`.
pub fn reconstruct_profile(cums: &CumulativeScatter, r: ComplexScalar) -> Result<ScatterSolution> {
    let start = cums.first_cell();
    let n = cums.per_cell.len();
    let mut y1 = Vec::with_capacity(n);
    let mut y2 = Vec::with_capacity(n);
    for (k, s) in cums.per_cell.iter() {
        if s.m12.norm() == 0.0 || !s.m12.re.is_finite() {
            return Err(Error::ProfileSingular { k });
        }
        let num = r - s.m11;
        let b = if num == ZERO { ZERO } else { num / s.m12 };
        y1.push(s.m21 + s.m22 * b);
        y2.push(b);
    }
    let y = y1.iter().zip(&y2).map(|(a, b)| a + b).collect();
    let (_, t) = extract_rt(&cums.total());
    Ok(ScatterSolution {
        r,
        t,
        y1: Indexed::new(start, y1),
        y2: Indexed::new(start, y2),
        y: Indexed::new(start, y),
    })
}

/// Cascade, extraction and reconstruction in one call.
pub fn scatter(transfers: &TransferSequence) -> Result<ScatterSolution> {
    let cums = cumulative_scatter(transfers)?;
    let (r, _) = extract_rt(&cums.total());
    reconstruct_profile(&cums, r)
}
