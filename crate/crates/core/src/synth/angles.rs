// Copyright 2026 The dynq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Rotation angles for one-hot amplitude loading.

use crate::error::{Error, Result};
use crate::sim::C64;

/// Denominators below this are treated as exhausted mass.
pub const EPS_DEN: f64 = 1e-12;
/// Accepted deviation of `Σ|α|²` from one.
pub const NORM_TOL: f64 = 1e-10;

/// `θ₁ … θ_{N−1}` such that wire `k−1` rotated by `Ry(2θ_k)`, filtered to
/// the first excited wire, leaves amplitude `|α_{k−1}|` on `e_{k−1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleSchedule {
    pub thetas: Vec<f64>,
}

impl AngleSchedule {
    /// `θ_k`, one-based like the construction it drives.
    pub fn theta(&self, k: usize) -> f64 {
        self.thetas[k - 1]
    }

    /// Number of magnitudes the schedule encodes.
    pub fn len(&self) -> usize {
        self.thetas.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Magnitudes recovered through `(∏_{j<k} cos θ_j)·sin θ_k`.
    pub fn reconstruct(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        let mut carry = 1.0;
        for &t in &self.thetas {
            out.push(carry * t.sin());
            carry *= t.cos();
        }
        out.push(carry);
        out
    }
}

pub fn check_norm(norm_sqr: f64) -> Result<()> {
    if (norm_sqr - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(norm_sqr));
    }
    Ok(())
}

/// Angles for nonnegative magnitudes with unit norm.
pub fn angle_schedule(magnitudes: &[f64]) -> Result<AngleSchedule> {
    if magnitudes.is_empty() {
        return Err(Error::InvalidParameter("no magnitudes".into()));
    }
    if let Some(m) = magnitudes.iter().find(|m| m.is_nan() || **m < 0.0 || !m.is_finite()) {
        return Err(Error::InvalidParameter(format!("magnitude {m} is not a nonnegative number")));
    }
    check_norm(magnitudes.iter().map(|m| m * m).sum())?;
    // Remaining mass from index k on, summed from the tail for accuracy.
    let mut tail = vec![0.0; magnitudes.len() + 1];
    for k in (0..magnitudes.len()).rev() {
        tail[k] = tail[k + 1] + magnitudes[k] * magnitudes[k];
    }
    let thetas = (1..magnitudes.len())
        .map(|k| {
            let den = tail[k - 1].sqrt();
            if den < EPS_DEN {
                0.0
            } else {
                magnitudes[k - 1].atan2(tail[k].sqrt())
            }
        })
        .collect();
    Ok(AngleSchedule { thetas })
}

/// `arg α_j ∈ [0, 2π)`, with `arg 0 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSchedule {
    pub phases: Vec<f64>,
}

pub fn phase_schedule(amps: &[C64]) -> PhaseSchedule {
    let tau = std::f64::consts::TAU;
    let phases = amps
        .iter()
        .map(|a| if a.norm() == 0.0 { 0.0 } else { a.arg().rem_euclid(tau) % tau })
        .collect();
    PhaseSchedule { phases }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn basis_magnitudes() {
        let s = angle_schedule(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(s.thetas, vec![FRAC_PI_2, 0.0, 0.0]);
        let s = angle_schedule(&[0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(s.thetas, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn uniform_four() {
        let s = angle_schedule(&[0.5; 4]).unwrap();
        let sines: Vec<f64> = s.thetas.iter().map(|t| t.sin()).collect();
        let want = [0.5, 1.0 / 3f64.sqrt(), 1.0 / 2f64.sqrt()];
        for (a, b) in sines.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
        for m in s.reconstruct() {
            assert!((m - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(angle_schedule(&[0.5, 0.5]), Err(Error::NotNormalized(_))));
        assert!(angle_schedule(&[-1.0, 0.0]).is_err());
    }

    #[test]
    fn phase_of_zero_is_zero() {
        let p = phase_schedule(&[C64::new(0.0, 0.0), C64::new(0.0, -1.0), C64::new(-1.0, 0.0)]);
        assert_eq!(p.phases[0], 0.0);
        assert!((p.phases[1] - 3.0 * FRAC_PI_2).abs() < 1e-12);
        assert!((p.phases[2] - std::f64::consts::PI).abs() < 1e-12);
    }
}
