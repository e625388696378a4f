//! Method-of-lines integration of `∂_t u = (G * u) Δu + α u²` for radial data.
//!
//! Time stepping is the two-stage strong-stability-preserving Runge–Kutta
//! scheme (Heun). Each stage is a forward-Euler step, and forward Euler keeps
//! `u ≥ 0` while `dt · max(G*u) · 3/Δr² ≤ 1`, so the default CFL factor
//! keeps the discrete flow positive up to rounding.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::potential::newton_potential_into;
use crate::radial::{integrate_values, laplacian_into, power_integral, RadialField, RadialGrid};

/// Relative floor of the initial-data builders at `r_max`.
pub const INITIAL_FLOOR: f64 = 1e-14;
/// Negative values above `-CLAMP_TOLERANCE · max(u)` are clamped to zero.
pub const CLAMP_TOLERANCE: f64 = 1e-12;
/// `u(r_max) / max(u)` beyond which the truncation is no longer inert.
pub const TRUNCATION_TOLERANCE: f64 = 1e-8;
/// Growth of `max(u)` over its initial value that counts as blowup.
pub const BLOWUP_FACTOR: f64 = 1e12;
pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;
/// Largest admissible CFL factor; [`step`] checks `dt` against it.
pub const MAX_CFL: f64 = 0.5;

const REACTION_EPS: f64 = 1e-300;

/// Radial, non-increasing initial data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialData {
    Zero,
    /// `A exp(-r²/σ²)`.
    Gaussian {
        amplitude: f64,
        sigma: f64,
    },
    /// `A (1 - tanh(4(r - R)/width)) / 2`.
    SmoothedBall {
        amplitude: f64,
        radius: f64,
        width: f64,
    },
    /// `A (1 + r²)^{-s}`, tapered by a Gaussian past `r_max / 2`.
    PowerTail {
        amplitude: f64,
        s: f64,
    },
}

impl Default for InitialData {
    fn default() -> Self {
        InitialData::Gaussian {
            amplitude: 1.0,
            sigma: 1.0,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive, got {v}")))
    }
}

/// Samples `kind` on `grid`, floored at `1e-14·A` so the field stays strictly
/// positive out to `r_max`.
pub fn make_initial_data(kind: &InitialData, grid: RadialGrid) -> Result<RadialField> {
    let (amplitude, profile): (f64, Box<dyn Fn(f64) -> f64>) = match *kind {
        InitialData::Zero => return Ok(RadialField::zeros(grid)),
        InitialData::Gaussian { amplitude, sigma } => {
            positive("amplitude", amplitude)?;
            positive("sigma", sigma)?;
            (amplitude, Box::new(move |r| (-(r / sigma).powi(2)).exp()))
        }
        InitialData::SmoothedBall {
            amplitude,
            radius,
            width,
        } => {
            positive("amplitude", amplitude)?;
            positive("radius", radius)?;
            positive("width", width)?;
            (
                amplitude,
                Box::new(move |r| 0.5 * (1.0 - (4.0 * (r - radius) / width).tanh())),
            )
        }
        InitialData::PowerTail { amplitude, s } => {
            positive("amplitude", amplitude)?;
            // ∫ r² (1 + r²)^{-s} dr converges only for s > 3/2.
            if !(s > 1.5 && s.is_finite()) {
                return Err(invalid(format!(
                    "power tail exponent must exceed 3/2 for finite mass, got {s}"
                )));
            }
            let knee = 0.5 * grid.r_max();
            let taper_width = 0.1 * grid.r_max();
            (
                amplitude,
                Box::new(move |r| {
                    let taper = if r <= knee {
                        1.0
                    } else {
                        (-((r - knee) / taper_width).powi(2)).exp()
                    };
                    (1.0 + r * r).powf(-s) * taper
                }),
            )
        }
    };
    let floor = INITIAL_FLOOR * amplitude;
    Ok(RadialField::from_fn(grid, |r| {
        (amplitude * profile(r)).max(floor)
    }))
}

/// `(G * u) Δu + α u²`.
pub fn rhs_model(u: &RadialField, alpha: f64) -> RadialField {
    let mut work = Workspace::new(u.values().len());
    let mut out = vec![0.0; u.values().len()];
    work.rhs(u.grid(), u.values(), alpha, &mut out);
    RadialField::from_raw(*u.grid(), out)
}

struct Workspace {
    potential: Vec<f64>,
    laplacian: Vec<f64>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Self {
            potential: vec![0.0; n],
            laplacian: vec![0.0; n],
        }
    }

    fn rhs(&mut self, grid: &RadialGrid, u: &[f64], alpha: f64, out: &mut [f64]) {
        newton_potential_into(grid, u, &mut self.potential);
        laplacian_into(grid, u, &mut self.laplacian);
        for i in 0..u.len() {
            out[i] = self.potential[i] * self.laplacian[i] + alpha * u[i] * u[i];
        }
    }
}

/// Largest stable step for a CFL factor: the smaller of the diffusion bound
/// `cfl Δr² / max(G*u)` and the reaction bound `cfl / (α max u)`.
pub fn stable_dt(u: &RadialField, alpha: f64, cfl: f64) -> f64 {
    let mut phi = vec![0.0; u.values().len()];
    newton_potential_into(u.grid(), u.values(), &mut phi);
    dt_limit(u.grid(), &phi, u.max(), alpha, cfl)
}

fn dt_limit(grid: &RadialGrid, phi: &[f64], max_u: f64, alpha: f64, cfl: f64) -> f64 {
    let h = grid.spacing();
    let max_phi = phi.iter().copied().fold(0.0, f64::max);
    let diffusion = if max_phi > 0.0 {
        cfl * h * h / max_phi
    } else {
        f64::INFINITY
    };
    let reaction = cfl / (alpha * max_u.max(0.0) + REACTION_EPS);
    diffusion.min(reaction)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub field: RadialField,
    /// Nodes whose tiny negative undershoot was clamped to zero.
    pub clamped: usize,
}

/// One SSP-RK2 step.
///
/// `dt` must respect the stability bound at the largest admissible CFL
/// factor. A non-finite result is reported as [`Error::BlowupDetected`] with
/// `time = NaN`; [`Evolution`] fills in the actual time.
pub fn step(u: &RadialField, alpha: f64, dt: f64) -> Result<StepOutcome> {
    let n = u.values().len();
    let mut work = Workspace::new(n);
    let mut k = vec![0.0; n];
    let mut stage = vec![0.0; n];
    let mut next = vec![0.0; n];
    let clamped = rk2(
        &mut work,
        u.grid(),
        u.values(),
        alpha,
        dt,
        Some(MAX_CFL),
        &mut k,
        &mut stage,
        &mut next,
    )?;
    Ok(StepOutcome {
        field: RadialField::from_raw(*u.grid(), next),
        clamped,
    })
}

#[allow(clippy::too_many_arguments)]
fn rk2(
    work: &mut Workspace,
    grid: &RadialGrid,
    u: &[f64],
    alpha: f64,
    dt: f64,
    cfl_check: Option<f64>,
    k: &mut [f64],
    stage: &mut [f64],
    next: &mut [f64],
) -> Result<usize> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(invalid(format!("time step must be positive, got {dt}")));
    }
    let max_u = u.iter().copied().fold(0.0, f64::max);
    work.rhs(grid, u, alpha, k);
    if let Some(cfl) = cfl_check {
        let limit = dt_limit(grid, &work.potential, max_u, alpha, cfl);
        if dt > limit * (1.0 + 1e-12) {
            return Err(Error::StepSize { dt, limit });
        }
    }
    for i in 0..u.len() {
        stage[i] = u[i] + dt * k[i];
    }
    work.rhs(grid, stage, alpha, k);
    for i in 0..u.len() {
        next[i] = 0.5 * u[i] + 0.5 * (stage[i] + dt * k[i]);
    }
    if next.iter().any(|v| !v.is_finite()) {
        return Err(Error::BlowupDetected { time: f64::NAN });
    }
    let scale = next.iter().copied().fold(0.0, f64::max).max(max_u);
    let mut clamped = 0;
    for v in next.iter_mut() {
        if *v < 0.0 {
            if *v < -CLAMP_TOLERANCE * scale {
                return Err(Error::NegativeUndershoot {
                    value: *v,
                    max_u: scale,
                });
            }
            *v = 0.0;
            clamped += 1;
        }
    }
    Ok(clamped)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionConfig {
    pub alpha: f64,
    pub t_end: f64,
    pub cfl: f64,
    pub grid: RadialGrid,
    /// Exponents whose `L^p` norms are recorded.
    pub diag_ps: Vec<f64>,
    /// Spacing of recorded diagnostics in time.
    pub record_interval: f64,
    pub max_steps: u64,
}

impl EvolutionConfig {
    pub fn new(alpha: f64, t_end: f64, cfl: f64, grid: RadialGrid) -> Result<Self> {
        let config = Self {
            alpha,
            t_end,
            cfl,
            grid,
            diag_ps: Vec::new(),
            record_interval: t_end / 100.0,
            max_steps: DEFAULT_MAX_STEPS,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_diag_ps(mut self, ps: impl IntoIterator<Item = f64>) -> Self {
        self.diag_ps = ps.into_iter().collect();
        self
    }

    pub fn with_record_interval(mut self, interval: f64) -> Self {
        self.record_interval = interval;
        self
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(invalid(format!(
                "alpha must be non-negative, got {}",
                self.alpha
            )));
        }
        positive("t_end", self.t_end)?;
        if !(self.cfl > 0.0 && self.cfl <= MAX_CFL) {
            return Err(invalid(format!(
                "cfl must lie in (0, 1/2], got {}",
                self.cfl
            )));
        }
        positive("record_interval", self.record_interval)?;
        if let Some(p) = self.diag_ps.iter().find(|p| !(**p > 0.0 && p.is_finite())) {
            return Err(invalid(format!(
                "diagnostic exponent must be positive, got {p}"
            )));
        }
        Ok(())
    }
}

/// Diagnostics recorded along a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvolutionSeries {
    pub times: Vec<f64>,
    /// `∫u`.
    pub mass: Vec<f64>,
    /// `∫u²`.
    pub l2sq: Vec<f64>,
    /// Trapezoid accumulation of `∫₀ᵗ ∫u² ds`, updated every step.
    pub accumulated_l2: Vec<f64>,
    pub max_u: Vec<f64>,
    /// `(p, ‖u(t)‖_p)` per tracked exponent.
    pub lp_norms: Vec<(f64, Vec<f64>)>,
    pub steps: u64,
    pub clamped: u64,
    pub node_steps: u64,
    pub blowup_time: Option<f64>,
}

impl EvolutionSeries {
    fn new(ps: &[f64]) -> Self {
        Self {
            times: Vec::new(),
            mass: Vec::new(),
            l2sq: Vec::new(),
            accumulated_l2: Vec::new(),
            max_u: Vec::new(),
            lp_norms: ps.iter().map(|&p| (p, Vec::new())).collect(),
            steps: 0,
            clamped: 0,
            node_steps: 0,
            blowup_time: None,
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Recorded `‖u(t)‖_p` for a tracked exponent.
    pub fn lp(&self, p: f64) -> Option<&[f64]> {
        self.lp_norms
            .iter()
            .find(|(q, _)| (q - p).abs() <= 1e-12 * p.abs().max(1.0))
            .map(|(_, v)| v.as_slice())
    }

    /// Fraction of node updates that needed clamping.
    pub fn clamp_fraction(&self) -> f64 {
        if self.node_steps == 0 {
            0.0
        } else {
            self.clamped as f64 / self.node_steps as f64
        }
    }

    pub fn csv_header(&self) -> String {
        let mut cols = vec![
            "t".to_string(),
            "mass".into(),
            "l2sq".into(),
            "accumulated_l2".into(),
            "max_u".into(),
        ];
        cols.extend(self.lp_norms.iter().map(|(p, _)| format!("lp_{p}")));
        cols.join(",")
    }

    /// Columns `t, mass, l2sq, accumulated_l2, max_u, lp_<p>...`.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "{}", self.csv_header())?;
        for k in 0..self.times.len() {
            write!(
                w,
                "{},{},{},{},{}",
                self.times[k], self.mass[k], self.l2sq[k], self.accumulated_l2[k], self.max_u[k]
            )?;
            for (_, norms) in &self.lp_norms {
                write!(w, ",{}", norms[k])?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Explicit time integration with diagnostics.
pub struct Evolution {
    config: EvolutionConfig,
    u: Vec<f64>,
    t: f64,
    initial_max: f64,
    acc_l2: f64,
    l2_now: f64,
    series: EvolutionSeries,
    work: Workspace,
    k: Vec<f64>,
    stage: Vec<f64>,
    next: Vec<f64>,
}

impl Evolution {
    pub fn new(u0: &RadialField, config: EvolutionConfig) -> Result<Self> {
        config.validate()?;
        if *u0.grid() != config.grid {
            return Err(invalid(
                "initial data and configuration use different grids",
            ));
        }
        u0.require_nonnegative("u0")?;
        let n = config.grid.len();
        let u = u0.values().to_vec();
        let initial_max = u0.max();
        let l2_now = power_integral(&config.grid, &u, 2.0);
        let series = EvolutionSeries::new(&config.diag_ps);
        let mut evo = Self {
            config,
            u,
            t: 0.0,
            initial_max,
            acc_l2: 0.0,
            l2_now,
            series,
            work: Workspace::new(n),
            k: vec![0.0; n],
            stage: vec![0.0; n],
            next: vec![0.0; n],
        };
        evo.record();
        Ok(evo)
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn state(&self) -> RadialField {
        RadialField::from_raw(self.config.grid, self.u.clone())
    }

    pub fn series(&self) -> &EvolutionSeries {
        &self.series
    }

    pub fn into_series(self) -> EvolutionSeries {
        self.series
    }

    pub fn config(&self) -> &EvolutionConfig {
        &self.config
    }

    /// Appends the current diagnostics to the series.
    pub fn record(&mut self) {
        let grid = &self.config.grid;
        let s = &mut self.series;
        s.times.push(self.t);
        s.mass.push(integrate_values(grid, &self.u));
        s.l2sq.push(self.l2_now);
        s.accumulated_l2.push(self.acc_l2);
        s.max_u.push(self.u.iter().copied().fold(0.0, f64::max));
        for (p, norms) in s.lp_norms.iter_mut() {
            norms.push(power_integral(grid, &self.u, *p).powf(1.0 / *p));
        }
    }

    /// Steps until `t_target` without recording.
    pub fn advance_to(&mut self, t_target: f64) -> Result<()> {
        let grid = self.config.grid;
        let alpha = self.config.alpha;
        while self.t < t_target {
            if self.series.steps >= self.config.max_steps {
                return Err(Error::ResourceGuard(format!(
                    "step count reached {} before t = {t_target}",
                    self.config.max_steps
                )));
            }
            let max_u = self.u.iter().copied().fold(0.0, f64::max);
            if max_u == 0.0 {
                // Zero is a fixed point.
                self.t = t_target;
                break;
            }
            newton_potential_into(&grid, &self.u, &mut self.work.potential);
            let limit = dt_limit(&grid, &self.work.potential, max_u, alpha, self.config.cfl);
            let remaining = t_target - self.t;
            let dt = if remaining <= limit * (1.0 + 1e-9) {
                remaining
            } else {
                limit
            };
            let outcome = rk2(
                &mut self.work,
                &grid,
                &self.u,
                alpha,
                dt,
                None,
                &mut self.k,
                &mut self.stage,
                &mut self.next,
            );
            let clamped = match outcome {
                Ok(c) => c,
                Err(Error::BlowupDetected { .. }) => return Err(self.blowup(self.t + dt)),
                Err(e) => return Err(e),
            };
            std::mem::swap(&mut self.u, &mut self.next);
            self.t = if dt == remaining {
                t_target
            } else {
                self.t + dt
            };

            let l2_next = power_integral(&grid, &self.u, 2.0);
            self.acc_l2 += 0.5 * dt * (self.l2_now + l2_next);
            self.l2_now = l2_next;
            self.series.steps += 1;
            self.series.clamped += clamped as u64;
            self.series.node_steps += self.u.len() as u64;

            let new_max = self.u.iter().copied().fold(0.0, f64::max);
            if new_max > BLOWUP_FACTOR * self.initial_max {
                return Err(self.blowup(self.t));
            }
            let edge = self.u[self.u.len() - 1];
            if edge > TRUNCATION_TOLERANCE * new_max {
                return Err(Error::TruncationViolated {
                    ratio: edge / new_max,
                });
            }
        }
        Ok(())
    }

    fn blowup(&mut self, time: f64) -> Error {
        self.series.blowup_time = Some(time);
        Error::BlowupDetected { time }
    }

    /// Integrates to `t_end`, recording every `record_interval`.
    pub fn run(&mut self) -> Result<()> {
        let t_end = self.config.t_end;
        let interval = self.config.record_interval;
        let mut k = 1u64;
        loop {
            let target = (k as f64 * interval).min(t_end);
            self.advance_to(target)?;
            self.record();
            if target >= t_end {
                return Ok(());
            }
            k += 1;
        }
    }
}

/// Runs `u0` to `config.t_end`.
pub fn evolve(u0: &RadialField, config: EvolutionConfig) -> Result<EvolutionSeries> {
    let mut evo = Evolution::new(u0, config)?;
    evo.run()?;
    Ok(evo.into_series())
}

/// `max_t |∫u(t) + (1-α) ∫₀ᵗ∫u² - ∫u₀| / ∫u₀`.
pub fn conservation_residual(series: &EvolutionSeries, alpha: f64) -> f64 {
    let Some(&mass0) = series.mass.first() else {
        return 0.0;
    };
    if mass0 == 0.0 {
        return 0.0;
    }
    series
        .mass
        .iter()
        .zip(&series.accumulated_l2)
        .map(|(m, acc)| (m + (1.0 - alpha) * acc - mass0).abs() / mass0)
        .fold(0.0, f64::max)
}

/// `max_t (‖u(t)‖_p - ‖u₀‖_p) / ‖u₀‖_p`; non-positive for a non-increasing
/// norm.
pub fn monotonicity_report(series: &EvolutionSeries, p: f64) -> Result<f64> {
    let norms = series
        .lp(p)
        .ok_or_else(|| invalid(format!("exponent {p} is not tracked")))?;
    let Some(&first) = norms.first() else {
        return Ok(0.0);
    };
    if first == 0.0 {
        return Ok(0.0);
    }
    Ok(norms
        .iter()
        .map(|v| (v - first) / first)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Largest relative increase between consecutive records.
pub fn max_successive_uptick(series: &EvolutionSeries, p: f64) -> Result<f64> {
    let norms = series
        .lp(p)
        .ok_or_else(|| invalid(format!("exponent {p} is not tracked")))?;
    Ok(norms
        .windows(2)
        .filter(|w| w[0] > 0.0)
        .map(|w| (w[1] - w[0]) / w[0])
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{integrate_radial, make_grid};

    fn gaussian(grid: RadialGrid) -> RadialField {
        make_initial_data(
            &InitialData::Gaussian {
                amplitude: 1.0,
                sigma: 1.0,
            },
            grid,
        )
        .unwrap()
    }

    #[test]
    fn initial_data_shapes() {
        let grid = make_grid(8.0, 512).unwrap();
        let g = gaussian(grid);
        assert!(g.values().windows(2).all(|w| w[1] <= w[0]));
        assert!((g.values()[10] - (-grid.node(10).powi(2)).exp()).abs() < 1e-15);
        assert!(g.min() >= INITIAL_FLOOR);

        let ball = make_initial_data(
            &InitialData::SmoothedBall {
                amplitude: 1.0,
                radius: 1.0,
                width: 0.1,
            },
            grid,
        )
        .unwrap();
        for (r, v) in grid.nodes().zip(ball.values()) {
            if r < 0.9 {
                assert!((v - 1.0).abs() < 1e-3);
            }
        }
        assert!(ball.values().windows(2).all(|w| w[1] <= w[0]));

        let tail = make_initial_data(
            &InitialData::PowerTail {
                amplitude: 2.0,
                s: 2.0,
            },
            grid,
        )
        .unwrap();
        assert!(tail.values().windows(2).all(|w| w[1] <= w[0]));
        assert!(tail.min() > 0.0);
        assert!(tail.values()[511] <= TRUNCATION_TOLERANCE * tail.max());

        assert!(make_initial_data(
            &InitialData::PowerTail {
                amplitude: 1.0,
                s: 1.5
            },
            grid
        )
        .is_err());
        assert!(make_initial_data(
            &InitialData::Gaussian {
                amplitude: -1.0,
                sigma: 1.0
            },
            grid
        )
        .is_err());
        assert!(make_initial_data(&InitialData::Zero, grid)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn rhs_of_zero_is_zero() {
        let grid = make_grid(4.0, 64).unwrap();
        let z = RadialField::zeros(grid);
        assert!(rhs_model(&z, 0.7).is_zero());
        let s = step(&z, 0.7, 1e-3).unwrap();
        assert!(s.field.is_zero());
    }

    #[test]
    fn rhs_first_moment_matches_conservation() {
        let grid = make_grid(10.0, 2048).unwrap();
        let u = gaussian(grid);
        let l2 = integrate_radial(&u.map(|v| v * v));
        for alpha in [0.0, 0.5, 1.0] {
            let m = integrate_radial(&rhs_model(&u, alpha));
            assert!((m - (alpha - 1.0) * l2).abs() < 1e-3 * l2, "{alpha}: {m}");
        }
    }

    #[test]
    fn step_is_second_order() {
        let grid = make_grid(8.0, 128).unwrap();
        let u = gaussian(grid);
        let diff = |dt: f64| {
            let full = step(&u, 0.5, dt).unwrap().field;
            let half = step(&step(&u, 0.5, dt / 2.0).unwrap().field, 0.5, dt / 2.0)
                .unwrap()
                .field;
            full.values()
                .iter()
                .zip(half.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        };
        let dt = 0.2 * stable_dt(&u, 0.5, MAX_CFL);
        let (d1, d2) = (diff(dt), diff(dt / 2.0));
        let order = (d1 / d2).log2();
        assert!(order > 2.7 && order < 3.3, "local order {order}");
    }

    #[test]
    fn step_rejects_unstable_dt() {
        let grid = make_grid(8.0, 128).unwrap();
        let u = gaussian(grid);
        let limit = stable_dt(&u, 0.5, MAX_CFL);
        assert!(matches!(
            step(&u, 0.5, 2.0 * limit),
            Err(Error::StepSize { .. })
        ));
    }

    #[test]
    fn mass_decreases_without_reaction() {
        let grid = make_grid(8.0, 256).unwrap();
        let u = gaussian(grid);
        let dt = stable_dt(&u, 0.0, 0.25);
        let next = step(&u, 0.0, dt).unwrap().field;
        assert!(integrate_radial(&next) < integrate_radial(&u));
    }

    #[test]
    fn zero_solution_diagnostics() {
        let grid = make_grid(4.0, 64).unwrap();
        let config = EvolutionConfig::new(0.0, 0.1, 0.25, grid)
            .unwrap()
            .with_diag_ps([1.5]);
        let series = evolve(&RadialField::zeros(grid), config).unwrap();
        assert!(series.mass.iter().all(|&m| m == 0.0));
        assert_eq!(conservation_residual(&series, 0.0), 0.0);
        assert_eq!(monotonicity_report(&series, 1.5).unwrap(), 0.0);
        assert!(monotonicity_report(&series, 2.0).is_err());
    }

    #[test]
    fn config_validation() {
        let grid = make_grid(4.0, 64).unwrap();
        assert!(EvolutionConfig::new(0.5, 0.0, 0.25, grid).is_err());
        assert!(EvolutionConfig::new(0.5, 1.0, 0.6, grid).is_err());
        assert!(EvolutionConfig::new(-0.5, 1.0, 0.25, grid).is_err());
    }

    #[test]
    fn csv_layout() {
        let grid = make_grid(6.0, 128).unwrap();
        let config = EvolutionConfig::new(0.5, 0.02, 0.25, grid)
            .unwrap()
            .with_diag_ps([1.5, 2.0])
            .with_record_interval(0.01);
        let series = evolve(&gaussian(grid), config).unwrap();
        let mut buf = Vec::new();
        series.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "t,mass,l2sq,accumulated_l2,max_u,lp_1.5,lp_2"
        );
        assert_eq!(lines.count(), 3);
        assert_eq!(series.times, vec![0.0, 0.01, 0.02]);
    }

    #[test]
    fn blowup_is_signalled() {
        // Large data with a strong reaction term concentrate quickly.
        let grid = make_grid(6.0, 128).unwrap();
        let u0 = make_initial_data(
            &InitialData::Gaussian {
                amplitude: 50.0,
                sigma: 1.0,
            },
            grid,
        )
        .unwrap();
        let config = EvolutionConfig::new(40.0, 10.0, 0.25, grid).unwrap();
        let mut evo = Evolution::new(&u0, config).unwrap();
        match evo.run() {
            Err(Error::BlowupDetected { time }) => {
                assert!(time > 0.0 && time < 10.0);
                assert_eq!(evo.series().blowup_time, Some(time));
            }
            other => panic!("expected blowup, got {other:?}"),
        }
    }
}
