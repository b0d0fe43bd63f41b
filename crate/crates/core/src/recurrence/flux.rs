use super::SolutionProfile;
use crate::{Error, Indexed, Result};

/// `P[k] = w[k+1] Im(conj(y[k]) y[k+1])` for every `k` with `y[k+1]` present.
///
/// With the coupling weights of a symmetric three-term recurrence as `w`,
/// `P` is constant along any exact solution.
pub fn flux_series(profile: &SolutionProfile, weight: &Indexed<f64>) -> Result<Indexed<f64>> {
    if profile.len() < 2 {
        return Err(Error::WindowTooSmall { len: profile.len() });
    }
    let (from, to) = (profile.start(), profile.end() - 1);
    weight.require(from + 1, to + 1, "flux weight")?;
    Ok(Indexed::from_fn(from, to, |k| {
        weight[k + 1] * (profile[k].conj() * profile[k + 1]).im
    }))
}
