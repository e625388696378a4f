//! Cell-centered 3D tensor grids for the matrix-kernel functional.
//!
//! `(b * g)(v)` is the lattice sum `Σ_y b̄(v - y) g(y) h³` with `b̄` the
//! cell-averaged kernel near the singularity and point values elsewhere.
//! The sum is an exact linear convolution on the lattice and is evaluated
//! with zero-padded FFTs of length `2n` per axis.

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

use crate::error::Result;
use crate::kernels::{lattice_weight, Mat3, MatrixKernel};

/// Nodes `-W + (i + 1/2) h`, `h = 2W / n`, on each axis of `[-W, W]³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorGrid {
    pub half_width: f64,
    pub n: usize,
}

impl TensorGrid {
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + (i as f64 + 0.5) * self.spacing()
    }

    pub fn node_count(&self) -> usize {
        self.n * self.n * self.n
    }

    #[inline]
    pub fn index(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.n + b) * self.n + c
    }

    /// Samples `f(|y|)` at every node.
    pub fn sample_radial(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let n = self.n;
        let mut out = Vec::with_capacity(self.node_count());
        for a in 0..n {
            let x = self.coord(a);
            for b in 0..n {
                let y = self.coord(b);
                for c in 0..n {
                    let z = self.coord(c);
                    out.push(f((x * x + y * y + z * z).sqrt()));
                }
            }
        }
        out
    }

    pub fn integrate(&self, values: &[f64]) -> f64 {
        let h = self.spacing();
        values.iter().sum::<f64>() * h * h * h
    }

    /// Fourth-order central differences along `axis`; values outside the
    /// box are zero.
    pub fn gradient(&self, f: &[f64], axis: usize) -> Vec<f64> {
        let n = self.n as i64;
        let h = self.spacing();
        let at = |a: i64, b: i64, c: i64| -> f64 {
            if a < 0 || b < 0 || c < 0 || a >= n || b >= n || c >= n {
                0.0
            } else {
                f[self.index(a as usize, b as usize, c as usize)]
            }
        };
        let mut out = vec![0.0; f.len()];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let shift = |s: i64| match axis {
                        0 => at(a + s, b, c),
                        1 => at(a, b + s, c),
                        _ => at(a, b, c + s),
                    };
                    let d = (-shift(2) + 8.0 * shift(1) - 8.0 * shift(-1) + shift(-2)) / (12.0 * h);
                    out[self.index(a as usize, b as usize, c as usize)] = d;
                }
            }
        }
        out
    }
}

struct Fft3 {
    m: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Fft3 {
    fn new(m: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            m,
            forward: planner.plan_fft_forward(m),
            inverse: planner.plan_fft_inverse(m),
        }
    }

    fn run(&self, data: &mut [Complex<f64>], inverse: bool) {
        let m = self.m;
        let fft = if inverse {
            &self.inverse
        } else {
            &self.forward
        };
        let mut scratch = vec![Complex::default(); fft.get_inplace_scratch_len()];
        // Contiguous axis: all lines at once.
        fft.process_with_scratch(data, &mut scratch);
        let mut line = vec![Complex::default(); m];
        for stride in [m, m * m] {
            for base in 0..m * m {
                // `base` enumerates the m² lines orthogonal to the axis.
                let start = if stride == m {
                    (base / m) * m * m + base % m
                } else {
                    base
                };
                for (k, v) in line.iter_mut().enumerate() {
                    *v = data[start + k * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (k, v) in line.iter().enumerate() {
                    data[start + k * stride] = *v;
                }
            }
        }
        if inverse {
            let norm = 1.0 / (m * m * m) as f64;
            for v in data.iter_mut() {
                *v *= norm;
            }
        }
    }
}

/// `Σ_v Σ_{ij} (b^{ij} * g)(v) ∂_i w(v) ∂_j w(v) h³` on `grid`.
pub(crate) fn kernel_contraction(
    k: &dyn MatrixKernel,
    grid: &TensorGrid,
    g: &[f64],
    w: &[f64],
) -> Result<f64> {
    let n = grid.n;
    let m = 2 * n;
    let h = grid.spacing();
    let fft = Fft3::new(m);
    let pad = |a: usize, b: usize, c: usize| (a * m + b) * m + c;

    let mut g_hat = vec![Complex::default(); m * m * m];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                g_hat[pad(a, b, c)] = Complex::new(g[grid.index(a, b, c)], 0.0);
            }
        }
    }
    fft.run(&mut g_hat, false);

    let grads: Vec<Vec<f64>> = (0..3).map(|axis| grid.gradient(w, axis)).collect();

    // Kernel weights on the padded lattice; offsets t ≥ n wrap to t - m.
    let offset = |t: usize| if t < n { t as i64 } else { t as i64 - m as i64 };
    let mut weights: Vec<Mat3> = Vec::with_capacity(m * m * m);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                weights.push(lattice_weight(k, [offset(a), offset(b), offset(c)], h)?);
            }
        }
    }

    let mut contraction = vec![0.0; grid.node_count()];
    let mut buf = vec![Complex::default(); m * m * m];
    for i in 0..3 {
        for j in i..3 {
            for (slot, wgt) in buf.iter_mut().zip(&weights) {
                *slot = Complex::new(wgt[i][j], 0.0);
            }
            fft.run(&mut buf, false);
            for (x, y) in buf.iter_mut().zip(&g_hat) {
                *x *= *y;
            }
            fft.run(&mut buf, true);
            let sym = if i == j { 1.0 } else { 2.0 };
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let idx = grid.index(a, b, c);
                        let conv = buf[pad(a, b, c)].re * h * h * h;
                        contraction[idx] += sym * conv * grads[i][idx] * grads[j][idx];
                    }
                }
            }
        }
    }
    Ok(grid.integrate(&contraction))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::CoulombKernel;

    #[test]
    fn fft_round_trip() {
        let m = 6;
        let fft = Fft3::new(m);
        let orig: Vec<Complex<f64>> = (0..m * m * m)
            .map(|i| Complex::new((i as f64 * 0.37).sin(), 0.0))
            .collect();
        let mut data = orig.clone();
        fft.run(&mut data, false);
        fft.run(&mut data, true);
        for (a, b) in data.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn fft_convolution_matches_direct_sum() {
        let grid = TensorGrid {
            half_width: 2.0,
            n: 6,
        };
        let g = grid.sample_radial(|r| (-r * r).exp());
        let w = grid.sample_radial(|r| (-0.5 * r * r).exp() * (1.0 + 0.1 * r));
        let fast = kernel_contraction(&CoulombKernel, &grid, &g, &w).unwrap();

        let n = grid.n;
        let h = grid.spacing();
        let grads: Vec<Vec<f64>> = (0..3).map(|axis| grid.gradient(&w, axis)).collect();
        let mut direct = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut conv: Mat3 = [[0.0; 3]; 3];
                    for a2 in 0..n {
                        for b2 in 0..n {
                            for c2 in 0..n {
                                let off = [
                                    a as i64 - a2 as i64,
                                    b as i64 - b2 as i64,
                                    c as i64 - c2 as i64,
                                ];
                                let wgt = lattice_weight(&CoulombKernel, off, h).unwrap();
                                let gv = g[grid.index(a2, b2, c2)] * h * h * h;
                                crate::kernels::add_assign(&mut conv, &wgt, gv);
                            }
                        }
                    }
                    let idx = grid.index(a, b, c);
                    for i in 0..3 {
                        for j in 0..3 {
                            direct += conv[i][j] * grads[i][idx] * grads[j][idx];
                        }
                    }
                }
            }
        }
        direct *= h * h * h;
        assert!(
            (fast - direct).abs() <= 1e-12 * direct.abs(),
            "{fast} {direct}"
        );
    }

    #[test]
    fn fourth_order_gradient_is_exact_for_cubics() {
        let grid = TensorGrid {
            half_width: 1.0,
            n: 10,
        };
        let mut f = vec![0.0; grid.node_count()];
        for a in 0..10 {
            for b in 0..10 {
                for c in 0..10 {
                    f[grid.index(a, b, c)] = grid.coord(b).powi(3);
                }
            }
        }
        let d = grid.gradient(&f, 1);
        for a in 0..10 {
            for b in 2..8 {
                let y = grid.coord(b);
                assert!((d[grid.index(a, b, 4)] - 3.0 * y * y).abs() < 1e-12);
            }
        }
    }
}
