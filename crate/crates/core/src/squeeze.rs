//! Accumulative squeezing: each kick is applied when the angular spread of
//! the previous one reaches its minimum.
//!
//! Near the pole the motion is harmonic and only second moments matter, so the
//! width u = x̄² and momentum spread w = p̄²/P obey a closed recurrence. The
//! Monte Carlo driver repeats the same strategy on a full 3D ensemble.

use serde::{Deserialize, Serialize};

use crate::error::{Result, RotorError};
use crate::quantum2d::Coupling;
use crate::thermal::{evolve, first_minimum, kick_with, sample_cold, sample_ensemble, SpreadMeasure};

/// Second moments at a moment of minimal spread.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentState {
    /// x̄²
    pub u: f64,
    /// p̄²/P
    pub w: f64,
    /// The mixed moment ⟨xp + px⟩ vanishes, so a kick may be applied.
    pub mixed_zero: bool,
}

impl MomentState {
    pub fn new(u: f64, w: f64) -> Result<Self> {
        if !(u > 0.0 && w > 0.0 && u.is_finite() && w.is_finite()) {
            return Err(RotorError::domain(
                "MomentState::new",
                format!("u = {u}, w = {w} must be positive and finite"),
            ));
        }
        Ok(Self {
            u,
            w,
            mixed_zero: true,
        })
    }
}

/// One kick followed by free flight to the next minimum of the width.
/// Returns the new state and the scaled delay Δτ = u/(u + w).
pub fn kick_cycle(state: MomentState, p: f64) -> Result<(MomentState, f64)> {
    if !state.mixed_zero {
        return Err(RotorError::domain(
            "kick_cycle",
            "kick must be applied at minimal spread",
        ));
    }
    if !(p > 0.0 && p.is_finite()) {
        return Err(RotorError::domain("kick_cycle", format!("P = {p} must be positive")));
    }
    let MomentState { u, w, .. } = state;
    let s = u + w;
    let next = MomentState {
        u: u - u * u / s,
        w: w + u,
        mixed_zero: true,
    };
    Ok((next, u / s))
}

/// Conserved quantity u² + 2wu of the continuum limit du/dk = −u²/(u+w),
/// dw/dk = u.
pub fn ode_invariant(u: f64, w: f64) -> Result<f64> {
    if !(u > 0.0 && w > 0.0) {
        return Err(RotorError::domain(
            "ode_invariant",
            format!("u = {u}, w = {w} must be positive"),
        ));
    }
    Ok(u * u + 2.0 * w * u)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqueezeRecord {
    /// Kick number, starting at 1.
    pub k: usize,
    pub u: Option<f64>,
    pub w: Option<f64>,
    /// Delay from kick k to the next minimum; scaled for the moment
    /// recurrence, t' for the Monte Carlo driver.
    pub dtau: f64,
    /// O_k or A_k at that minimum.
    pub spread: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SqueezeTrace {
    /// Kick strength P (recurrence) or P' (Monte Carlo, infinite at zero
    /// temperature).
    pub p: f64,
    pub measure: Option<SpreadMeasure>,
    pub records: Vec<SqueezeRecord>,
}

/// Iterates [`kick_cycle`] from (u0, w0); the scaled delays do not depend on P.
pub fn run_accumulative(u0: f64, w0: f64, kicks: usize) -> Result<SqueezeTrace> {
    if kicks == 0 {
        return Err(RotorError::domain("run_accumulative", "kicks must be at least 1"));
    }
    let mut state = MomentState::new(u0, w0)?;
    let mut records = Vec::with_capacity(kicks);
    for k in 1..=kicks {
        let (next, dtau) = kick_cycle(state, 1.0)?;
        if !(next.u < state.u && next.w > state.w && next.u > 0.0) {
            return Err(RotorError::convergence(
                "run_accumulative",
                format!("monotonicity lost at kick {k}"),
            ));
        }
        state = next;
        records.push(SqueezeRecord {
            k,
            u: Some(state.u),
            w: Some(state.w),
            dtau,
            spread: None,
        });
    }
    Ok(SqueezeTrace {
        p: 1.0,
        measure: None,
        records,
    })
}

/// Monte Carlo accumulative squeezing of a 3D ensemble. `p_prime` = ∞ starts
/// from rest, with delays reported in units of P't'.
pub fn classical_accumulative_3d(
    n_particles: usize,
    p_prime: f64,
    kicks: usize,
    seed: u64,
    coupling: Coupling,
) -> Result<SqueezeTrace> {
    if kicks == 0 {
        return Err(RotorError::domain("classical_accumulative_3d", "kicks must be at least 1"));
    }
    if !(p_prime > 0.0) {
        return Err(RotorError::domain(
            "classical_accumulative_3d",
            format!("P' = {p_prime} must be positive"),
        ));
    }
    let measure = SpreadMeasure::for_coupling(coupling);
    let mut ens = if p_prime.is_infinite() {
        sample_cold(n_particles, seed)?.with_kick_strength(1.0)
    } else {
        sample_ensemble(n_particles, seed)?.with_kick_strength(p_prime)
    };
    let mut records = Vec::with_capacity(kicks);
    for k in 1..=kicks {
        let kicked = kick_with(&ens, coupling);
        let (t, spread) = first_minimum(&kicked, measure)?;
        ens = evolve(&kicked, t)?;
        records.push(SqueezeRecord {
            k,
            u: None,
            w: None,
            dtau: t,
            spread: Some(spread),
        });
    }
    Ok(SqueezeTrace {
        p: p_prime,
        measure: Some(measure),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_evaluated_cycle() {
        let (s, dtau) = kick_cycle(MomentState::new(1.0, 1.0).unwrap(), 3.0).unwrap();
        assert_eq!((s.u, s.w, dtau), (0.5, 2.0, 0.5));
    }

    #[test]
    fn kick_requires_minimal_spread() {
        let mut s = MomentState::new(1.0, 1.0).unwrap();
        s.mixed_zero = false;
        assert!(kick_cycle(s, 1.0).is_err());
    }
}
