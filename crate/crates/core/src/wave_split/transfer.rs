use super::{SplitState, TwoByTwoComplex};
use crate::recurrence::{Branch, RootPairSequence};
use crate::{ComplexScalar, Error, Indexed, Result};

/// How a transfer sequence was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransferVariant {
    /// Root gauge, all four entries kept.
    Exact,
    /// Diagonal of the exact matrix (Riccati-based WKB).
    WkbRiccati,
    /// Diagonal with half-discriminant corrections (direct WKB expansion).
    WkbDirect,
    /// Arbitrary gauge.
    GeneralGauge,
}

impl TransferVariant {
    pub fn is_diagonal(self) -> bool {
        matches!(
            self,
            TransferVariant::WkbRiccati | TransferVariant::WkbDirect
        )
    }
}

/// Transfer matrices `T[k]` and forcing `F[k]` for `k` in `[first, last]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferSequence {
    variant: TransferVariant,
    matrices: Indexed<TwoByTwoComplex>,
    forcing: Indexed<(ComplexScalar, ComplexScalar)>,
}

impl TransferSequence {
    pub(crate) fn from_parts(
        variant: TransferVariant,
        first: i64,
        matrices: Vec<TwoByTwoComplex>,
        forcing: Vec<(ComplexScalar, ComplexScalar)>,
    ) -> Self {
        debug_assert_eq!(matrices.len(), forcing.len());
        TransferSequence {
            variant,
            matrices: Indexed::new(first, matrices),
            forcing: Indexed::new(first, forcing),
        }
    }

    /// Homogeneous sequence from explicit matrices. Diagonal variants must
    /// have exactly zero off-diagonal entries.
    pub fn from_matrices(
        variant: TransferVariant,
        first: i64,
        matrices: Vec<TwoByTwoComplex>,
    ) -> Result<Self> {
        if variant.is_diagonal() {
            if let Some(i) = matrices.iter().position(|m| !m.is_diagonal()) {
                return Err(Error::WindowMismatch(format!(
                    "{variant:?} matrix at cell {} is not diagonal",
                    first + i as i64
                )));
            }
        }
        let zero = ComplexScalar::new(0.0, 0.0);
        let forcing = vec![(zero, zero); matrices.len()];
        Ok(Self::from_parts(variant, first, matrices, forcing))
    }

    pub fn variant(&self) -> TransferVariant {
        self.variant
    }

    pub fn first_index(&self) -> i64 {
        self.matrices.start()
    }

    pub fn last_index(&self) -> i64 {
        self.matrices.end()
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrix(&self, k: i64) -> TwoByTwoComplex {
        self.matrices[k]
    }

    pub fn forcing(&self, k: i64) -> (ComplexScalar, ComplexScalar) {
        self.forcing[k]
    }

    pub fn matrices(&self) -> &Indexed<TwoByTwoComplex> {
        &self.matrices
    }
}

fn root_steps(
    roots: &RootPairSequence,
    variant: TransferVariant,
    mut cell: impl FnMut(i64, ComplexScalar) -> TwoByTwoComplex,
) -> Result<TransferSequence> {
    if roots.len() < 2 {
        return Err(Error::WindowTooSmall { len: roots.len() });
    }
    let first = roots.k_min() + 1;
    let mut mats = Vec::with_capacity(roots.len() - 1);
    for k in first..=roots.k_max() {
        let d = roots.split(k);
        if d.norm() == 0.0 {
            return Err(Error::DegenerateRoots { k });
        }
        mats.push(cell(k, d));
    }
    TransferSequence::from_matrices(variant, first, mats)
}

/// Root-gauge transfer matrices with all four entries.
pub fn transfer_exact(roots: &RootPairSequence) -> Result<TransferSequence> {
    root_steps(roots, TransferVariant::Exact, |k, d| {
        let (p1, p2) = (roots.rho1(k - 1), roots.rho2(k - 1));
        let (c1, c2) = (roots.rho1(k), roots.rho2(k));
        TwoByTwoComplex::new(
            p1 * (p1 - c2) / d,
            p2 * (p2 - c2) / d,
            p1 * (c1 - p1) / d,
            p2 * (c1 - p2) / d,
        )
    })
}

/// WKB factor `rho[k-1] (1 -+ (q[k] - q[k-1]) / (rho1[k] - rho2[k]))`.
fn wkb_factor(
    roots: &RootPairSequence,
    branch: Branch,
    k: i64,
    q: impl Fn(i64) -> ComplexScalar,
) -> ComplexScalar {
    let d = roots.split(k);
    roots.rho(branch, k - 1) * (1.0 + branch.correction_sign() * (q(k) - q(k - 1)) / d)
}

/// Diagonal transfer matrices whose corrections use full root differences.
pub fn transfer_wkb_riccati(roots: &RootPairSequence) -> Result<TransferSequence> {
    root_steps(roots, TransferVariant::WkbRiccati, |k, _| {
        TwoByTwoComplex::diagonal(
            wkb_factor(roots, Branch::First, k, |j| roots.rho1(j)),
            wkb_factor(roots, Branch::Second, k, |j| roots.rho2(j)),
        )
    })
}

/// Diagonal transfer matrices whose corrections use differences of the
/// half-discriminant roots `+-sqrt(f1^2 - 4 f0)/2`.
pub fn transfer_wkb_direct(roots: &RootPairSequence) -> Result<TransferSequence> {
    root_steps(roots, TransferVariant::WkbDirect, |k, _| {
        TwoByTwoComplex::diagonal(
            wkb_factor(roots, Branch::First, k, |j| {
                roots.half_split(Branch::First, j)
            }),
            wkb_factor(roots, Branch::Second, k, |j| {
                roots.half_split(Branch::Second, j)
            }),
        )
    })
}

/// Runs `(y1, y2)[k] = T[k] (y1, y2)[k-1] + F[k]` from `initial` at `k0` to
/// the last transfer index. Diagonal variants advance the two waves as
/// independent scalar recursions.
pub fn propagate(
    transfers: &TransferSequence,
    initial: SplitState,
    k0: i64,
) -> Result<Indexed<SplitState>> {
    let last = transfers.last_index();
    if k0 < last {
        transfers.matrices.require(k0 + 1, last, "transfers")?;
    } else if k0 > last {
        return Err(Error::WindowMismatch(format!(
            "start cell {k0} is past the last transfer {last}"
        )));
    }
    let mut out = Vec::with_capacity((last - k0 + 1) as usize);
    let mut state = initial;
    out.push(state);
    let diagonal = transfers.variant.is_diagonal();
    for k in k0 + 1..=last {
        let m = transfers.matrix(k);
        let (f1, f2) = transfers.forcing(k);
        state = if diagonal {
            SplitState::new(m.m11 * state.y1 + f1, m.m22 * state.y2 + f2)
        } else {
            let (a, b) = m.apply((state.y1, state.y2));
            SplitState::new(a + f1, b + f2)
        };
        out.push(state);
    }
    Ok(Indexed::new(k0, out))
}
