//! Two-wave splitting of the recurrence and the transfer matrices it induces.
//!
//! `y[k] = y1[k] + y2[k]` and `y[k+1] = g1[k] y1[k] + g2[k] y2[k]` for gauge
//! sequences `g1 != g2`. The recurrence then becomes a first-order system
//! `(y1, y2)[k] = T[k] (y1, y2)[k-1] + F[k]`.

mod gauge;
mod matrix;
mod riccati;
mod transfer;

pub use gauge::{build_transfer_general, split_from_solution, GaugeSequences, SplitState};
pub use matrix::TwoByTwoComplex;
pub use riccati::{quadratic_residual, riccati_approx_roots, riccati_gauge, riccati_residual};
pub use transfer::{
    propagate, transfer_exact, transfer_wkb_direct, transfer_wkb_riccati, TransferSequence,
    TransferVariant,
};
