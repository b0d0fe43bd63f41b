use super::{TransferSequence, TransferVariant, TwoByTwoComplex};
use crate::recurrence::{degenerate, CoefficientSequence, RootPairSequence};
use crate::{ComplexScalar, Error, Indexed, Result};

/// The pair of splitting sequences `g1`, `g2` on a common window.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeSequences {
    g1: Indexed<ComplexScalar>,
    g2: Indexed<ComplexScalar>,
}

impl GaugeSequences {
    /// Rejects cells where the split is not unique (`g1 == g2` up to the
    /// degeneracy tolerance).
    pub fn new(start: i64, g1: Vec<ComplexScalar>, g2: Vec<ComplexScalar>) -> Result<Self> {
        if g1.len() != g2.len() {
            return Err(Error::WindowMismatch(format!(
                "g1 has {} entries, g2 has {}",
                g1.len(),
                g2.len()
            )));
        }
        for (i, (a, b)) in g1.iter().zip(&g2).enumerate() {
            if degenerate((a - b).powi(2), -(a + b)) {
                return Err(Error::GaugeCollision {
                    k: start + i as i64,
                });
            }
        }
        Ok(GaugeSequences {
            g1: Indexed::new(start, g1),
            g2: Indexed::new(start, g2),
        })
    }

    /// The root gauge `g1 = rho1`, `g2 = rho2`.
    pub fn from_roots(roots: &RootPairSequence) -> Self {
        GaugeSequences {
            g1: roots.rho1_seq().clone(),
            g2: roots.rho2_seq().clone(),
        }
    }

    pub fn start(&self) -> i64 {
        self.g1.start()
    }

    pub fn end(&self) -> i64 {
        self.g1.end()
    }

    pub fn contains(&self, k: i64) -> bool {
        self.g1.contains(k)
    }

    pub fn g1(&self, k: i64) -> ComplexScalar {
        self.g1[k]
    }

    pub fn g2(&self, k: i64) -> ComplexScalar {
        self.g2[k]
    }

    pub fn g(&self, branch: crate::recurrence::Branch, k: i64) -> ComplexScalar {
        match branch {
            crate::recurrence::Branch::First => self.g1[k],
            crate::recurrence::Branch::Second => self.g2[k],
        }
    }

    pub(crate) fn require(&self, from: i64, to: i64) -> Result<()> {
        self.g1.require(from, to, "gauge")
    }
}

/// Amplitudes of the two split waves at one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitState {
    pub y1: ComplexScalar,
    pub y2: ComplexScalar,
}

impl SplitState {
    pub fn new(y1: ComplexScalar, y2: ComplexScalar) -> Self {
        SplitState { y1, y2 }
    }

    /// `y[k] = y1 + y2`.
    pub fn total(&self) -> ComplexScalar {
        self.y1 + self.y2
    }
}

/// Inverts `y[k] = y1 + y2`, `y[k+1] = g1 y1 + g2 y2`.
pub fn split_from_solution(
    y_k: ComplexScalar,
    y_k1: ComplexScalar,
    g: &GaugeSequences,
    k: i64,
) -> Result<SplitState> {
    g.require(k, k)?;
    let (g1, g2) = (g.g1(k), g.g2(k));
    let d = g1 - g2;
    if degenerate(d * d, -(g1 + g2)) {
        return Err(Error::GaugeCollision { k });
    }
    Ok(SplitState {
        y1: (y_k1 - g2 * y_k) / d,
        y2: (g1 * y_k - y_k1) / d,
    })
}

/// Transfer matrices `T[k]` and forcing terms `F[k]` for an arbitrary gauge.
///
/// `T[k]` uses `f0, f1, f` at `k-1` and the gauge at `k-1` and `k`; it is
/// produced for every `k` where those exist.
pub fn build_transfer_general(
    seq: &CoefficientSequence,
    g: &GaugeSequences,
) -> Result<TransferSequence> {
    let first = seq.k_min().max(g.start()) + 1;
    let last = (seq.k_max() + 1).min(g.end());
    if last < first {
        return Err(Error::WindowMismatch(format!(
            "coefficients [{}, {}] and gauge [{}, {}] share no transfer step",
            seq.k_min(),
            seq.k_max(),
            g.start(),
            g.end()
        )));
    }
    let mut mats = Vec::with_capacity((last - first + 1) as usize);
    let mut forcing = Vec::with_capacity(mats.capacity());
    for k in first..=last {
        let (f0, f1, f) = (seq.f0(k - 1), seq.f1(k - 1), seq.forcing(k - 1));
        let (p1, p2) = (g.g1(k - 1), g.g2(k - 1));
        let (c1, c2) = (g.g1(k), g.g2(k));
        let d = c1 - c2;
        if degenerate(d * d, -(c1 + c2)) {
            return Err(Error::GaugeCollision { k });
        }
        mats.push(TwoByTwoComplex::new(
            -(f0 + p1 * (c2 + f1)) / d,
            -(f0 + p2 * (c2 + f1)) / d,
            (f0 + p1 * (c1 + f1)) / d,
            (f0 + p2 * (c1 + f1)) / d,
        ));
        let fbar = f / d;
        forcing.push((-fbar, fbar));
    }
    Ok(TransferSequence::from_parts(
        TransferVariant::GeneralGauge,
        first,
        mats,
        forcing,
    ))
}
