//! Fixed-step fourth-order Runge-Kutta integration of the Lorenz system
//!
//! ```text
//! x' = a (y - x)
//! y' = c x - x z - y
//! z' = x y - b z
//! ```
//!
//! with `(a, b, c) = (10, 8/3, 28)`. Every arithmetic operation is written out
//! in a fixed order with no fused multiply-add, so trajectories are
//! bit-reproducible.

use crate::error::{Error, Result};

pub const SIGMA: f64 = 10.0;
pub const BETA: f64 = 8.0 / 3.0;
pub const RHO: f64 = 28.0;

/// A point of the Lorenz trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorenzState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl LorenzState {
    pub const ORIGIN: LorenzState = LorenzState::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[inline(always)]
    fn offset(self, scale: f64, d: Derivative) -> Self {
        Self::new(self.x + scale * d.dx, self.y + scale * d.dy, self.z + scale * d.dz)
    }
}

/// Time derivative of a [`LorenzState`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub dx: f64,
    pub dy: f64,
    pub dz: f64,
}

/// Integrator configuration. The control parameters are the constants
/// [`SIGMA`], [`BETA`] and [`RHO`]; only the step length varies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    h: f64,
}

impl SolverConfig {
    /// Accepts step lengths in `(0, 1]`.
    pub fn new(h: f64) -> Result<Self> {
        if h.is_finite() && h > 0.0 && h <= 1.0 {
            Ok(Self { h })
        } else {
            Err(Error::InvalidKey(format!("step length h = {h} outside (0, 1]")))
        }
    }

    /// Bypasses range validation. Only for probing integrator edge cases
    /// such as `h = 0` or deliberately divergent steps.
    pub fn unchecked(h: f64) -> Self {
        Self { h }
    }

    pub fn h(&self) -> f64 {
        self.h
    }
}

#[inline(always)]
pub fn lorenz_derivative(s: LorenzState) -> Derivative {
    Derivative {
        dx: SIGMA * (s.y - s.x),
        dy: RHO * s.x - s.x * s.z - s.y,
        dz: s.x * s.y - BETA * s.z,
    }
}

#[inline(always)]
fn rk4_raw(s: LorenzState, h: f64) -> LorenzState {
    let half = h / 2.0;
    let k1 = lorenz_derivative(s);
    let k2 = lorenz_derivative(s.offset(half, k1));
    let k3 = lorenz_derivative(s.offset(half, k2));
    let k4 = lorenz_derivative(s.offset(h, k3));
    let sixth = h / 6.0;
    LorenzState::new(
        s.x + sixth * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
        s.y + sixth * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy),
        s.z + sixth * (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz),
    )
}

/// One classical RK4 step. Fails with [`Error::Divergence`] (step 0) when the
/// result is not finite.
pub fn rk4_step(s: LorenzState, cfg: SolverConfig) -> Result<LorenzState> {
    let next = rk4_raw(s, cfg.h);
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::Divergence { step: 0, block: None })
    }
}

/// `n` successive RK4 steps. A divergence reports the zero-based index of the
/// failing step.
pub fn iterate(mut s: LorenzState, cfg: SolverConfig, n: usize) -> Result<LorenzState> {
    for step in 0..n {
        s = rk4_raw(s, cfg.h);
        if !s.is_finite() {
            return Err(Error::Divergence { step, block: None });
        }
    }
    Ok(s)
}
