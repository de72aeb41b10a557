//! Classical kicked-top stroboscopic map on the unit sphere and phase
//! portrait data.

use serde::{Deserialize, Serialize};

/// A point on the unit sphere of normalized angular momentum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalState {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
}

impl ClassicalState {
    /// Normalize on intake; portrait initial conditions are commonly given
    /// unnormalized.
    pub fn new(jx: f64, jy: f64, jz: f64) -> Self {
        let mut s = ClassicalState { jx, jy, jz };
        s.renormalize();
        s
    }

    pub fn norm(&self) -> f64 {
        (self.jx * self.jx + self.jy * self.jy + self.jz * self.jz).sqrt()
    }

    fn renormalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            self.jx /= n;
            self.jy /= n;
            self.jz /= n;
        }
    }
}

/// One stroboscopic step: rotation by α about x followed by the twist of
/// strength τ about z, component by component, then renormalization.
pub fn step(state: ClassicalState, alpha: f64, tau: f64) -> ClassicalState {
    let (sa, ca) = alpha.sin_cos();
    let rotated_z = state.jy * sa + state.jz * ca;
    let rotated_y = state.jy * ca - state.jz * sa;
    let (st, ct) = (tau * rotated_z).sin_cos();
    let mut next = ClassicalState {
        jx: state.jx * ct - rotated_y * st,
        jy: state.jx * st + rotated_y * ct,
        jz: rotated_z,
    };
    next.renormalize();
    next
}

/// One trajectory's (Jx, Jz) samples, one point per step.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Trajectory {
    pub initial: ClassicalState,
    pub points: Vec<(f64, f64)>,
}

/// Iterate each initial condition `n_steps` times and record the (Jx, Jz)
/// slice of phase space after every step.
pub fn phase_portrait(
    initial_conditions: &[ClassicalState],
    alpha: f64,
    tau: f64,
    n_steps: usize,
) -> Vec<Trajectory> {
    initial_conditions
        .iter()
        .map(|&ic| {
            let mut state = ClassicalState::new(ic.jx, ic.jy, ic.jz);
            let mut points = Vec::with_capacity(n_steps);
            for _ in 0..n_steps {
                state = step(state, alpha, tau);
                points.push((state.jx, state.jz));
            }
            Trajectory { initial: ic, points }
        })
        .collect()
}

/// Finite-difference estimate of the local divergence rate: the mean log
/// separation growth per step of two nearby trajectories.
pub fn divergence_rate(
    start: ClassicalState,
    alpha: f64,
    tau: f64,
    n_steps: usize,
    separation: f64,
) -> f64 {
    let mut a = start;
    let mut b = ClassicalState::new(start.jx + separation, start.jy, start.jz);
    let d0 = dist(a, b);
    let mut log_sum = 0.0;
    for _ in 0..n_steps {
        a = step(a, alpha, tau);
        b = step(b, alpha, tau);
        let d = dist(a, b);
        log_sum += (d / d0).ln();
        // renormalize the separation to stay in the linear regime
        let scale = d0 / d;
        b = ClassicalState::new(
            a.jx + (b.jx - a.jx) * scale,
            a.jy + (b.jy - a.jy) * scale,
            a.jz + (b.jz - a.jz) * scale,
        );
    }
    log_sum / n_steps as f64
}

fn dist(a: ClassicalState, b: ClassicalState) -> f64 {
    let dx = a.jx - b.jx;
    let dy = a.jy - b.jy;
    let dz = a.jz - b.jz;
    (dx * dx + dy * dy + dz * dz).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn zero_parameters_fix_every_state() {
        let s = ClassicalState::new(0.3, -0.5, 0.81);
        let next = step(s, 0.0, 0.0);
        assert!((next.jx - s.jx).abs() < 1e-15);
        assert!((next.jy - s.jy).abs() < 1e-15);
        assert!((next.jz - s.jz).abs() < 1e-15);
    }

    #[test]
    fn quarter_turn_sends_z_to_minus_y() {
        // substituting (0,0,1) into the component equations by hand:
        // rotated_z = 0, rotated_y = −1, no twist applied
        let next = step(ClassicalState::new(0.0, 0.0, 1.0), FRAC_PI_2, 0.0);
        assert!(next.jx.abs() < 1e-15);
        assert!((next.jy + 1.0).abs() < 1e-15);
        assert!(next.jz.abs() < 1e-15);
    }

    #[test]
    fn twist_free_map_is_rotation_about_x() {
        let alpha: f64 = 1.234;
        let (sa, ca) = alpha.sin_cos();
        let s = ClassicalState::new(0.2, 0.9, -0.4);
        let next = step(s, alpha, 0.0);
        let expect = (s.jx, s.jy * ca - s.jz * sa, s.jy * sa + s.jz * ca);
        assert!((next.jx - expect.0).abs() < 1e-12);
        assert!((next.jy - expect.1).abs() < 1e-12);
        assert!((next.jz - expect.2).abs() < 1e-12);
    }

    #[test]
    fn rotation_invariant_is_conserved_without_twist() {
        // pure rotation about x keeps Jx fixed: trajectories are circles
        let mut s = ClassicalState::new(0.6, 0.5, 0.1);
        let jx0 = s.jx;
        for _ in 0..500 {
            s = step(s, 1.7, 0.0);
            assert!((s.jx - jx0).abs() < 1e-12);
        }
    }

    #[test]
    fn norm_is_preserved_over_many_steps() {
        let mut s = ClassicalState::new(-1.0, -3.0, -3.0);
        for _ in 0..10_000 {
            s = step(s, 1.7, 2.0);
            assert!((s.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn portrait_is_deterministic_and_normalizes_intake() {
        let ics = [
            ClassicalState::new(-1.0, -3.0, -3.0),
            ClassicalState::new(0.0, -2.0, 2.0),
        ];
        let a = phase_portrait(&ics, 1.7, 1.0, 200);
        let b = phase_portrait(&ics, 1.7, 1.0, 200);
        assert_eq!(a.len(), 2);
        assert_eq!(a[0].points, b[0].points);
        for t in &a {
            for (jx, jz) in &t.points {
                assert!(jx.abs() <= 1.0 + 1e-12 && jz.abs() <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn chaotic_parameters_separate_nearby_trajectories() {
        let rate = divergence_rate(ClassicalState::new(0.1, 0.7, -0.3), 1.7, 10.0, 50, 1e-9);
        assert!(rate > 0.1, "divergence rate {rate} not positive");
        // weak twist stays nearly regular by comparison
        let tame = divergence_rate(ClassicalState::new(0.1, 0.7, -0.3), 1.7, 0.05, 50, 1e-9);
        assert!(tame < rate / 2.0, "regular rate {tame} vs chaotic {rate}");
    }
}
