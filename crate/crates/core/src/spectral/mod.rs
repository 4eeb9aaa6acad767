//! Periodic pseudo-spectral integration of the seventh-order equation.
//!
//! The state is kept in Fourier space. The u_7x term is linear with symbol
//! i·k⁷ and is integrated exactly (ETDRK4 or an integrating factor); the seven
//! nonlinear terms are formed on a zero-padded grid and truncated back.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::Arc;

use rustfft::num_complex::Complex64 as C;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::model::{self, PdeCoefficients, T, X};
use crate::verify::ClosedFormSolution;

/// Forward transform, Σ x_j e^{−2πijk/n}.
pub fn dft(values: &[C]) -> Result<Vec<C>> {
    check_len(values.len())?;
    let mut buf = values.to_vec();
    FftPlanner::new()
        .plan_fft_forward(buf.len())
        .process(&mut buf);
    Ok(buf)
}

/// Inverse transform including the 1/n factor.
pub fn idft(spectrum: &[C]) -> Result<Vec<C>> {
    check_len(spectrum.len())?;
    let n = spectrum.len() as f64;
    let mut buf = spectrum.to_vec();
    FftPlanner::new()
        .plan_fft_inverse(buf.len())
        .process(&mut buf);
    buf.iter_mut().for_each(|z| *z /= n);
    Ok(buf)
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidGrid(format!(
            "length {n} is not a power of two"
        )));
    }
    Ok(())
}

/// Samples of u at x_j = jL/n.
#[derive(Clone, Debug, PartialEq)]
pub struct GridState {
    pub n: usize,
    pub length: f64,
    pub values: Vec<f64>,
    pub time: f64,
}

impl GridState {
    pub fn new(length: f64, values: Vec<f64>, time: f64) -> Result<Self> {
        let n = values.len();
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n = {n} must be a power of two and at least 16"
            )));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidGrid(format!("domain length {length}")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid("non-finite sample".into()));
        }
        Ok(Self {
            n,
            length,
            values,
            time,
        })
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| j as f64 * self.length / self.n as f64)
            .collect()
    }

    /// Samples of f(x_j, time).
    pub fn from_fn(
        n: usize,
        length: f64,
        time: f64,
        f: impl Fn(f64, f64) -> Result<f64>,
    ) -> Result<Self> {
        let values = (0..n)
            .map(|j| f(j as f64 * length / n as f64, time))
            .collect::<Result<Vec<_>>>()?;
        Self::new(length, values, time)
    }
}

/// A real-valued closed form as a function of (x, t).
pub fn closed_form(
    u: &Expr,
    params: &BTreeMap<String, Expr>,
) -> Result<impl Fn(f64, f64) -> Result<f64>> {
    let u = crate::expr::substitute(u, params)?;
    Ok(move |x: f64, t: f64| {
        let mut env = BTreeMap::new();
        env.insert(X.to_string(), C::new(x, 0.0));
        env.insert(T.to_string(), C::new(t, 0.0));
        let z = u.eval_complex(&env)?;
        if z.im.abs() > 1e-12 * (1.0 + z.re.abs()) {
            return Err(Error::InvalidConfig(format!(
                "closed form is complex at x = {x}"
            )));
        }
        Ok(z.re)
    })
}

/// Lattice sum of a localized profile over the period L: the profile plus
/// `copies` translates on each side, each measured from the far-field value.
/// Sampling the free-space soliton directly leaves a kink of size ~e^{-L/2}
/// at the seam, which high derivatives amplify.
pub fn periodize<F>(f: F, length: f64, copies: i32) -> impl Fn(f64, f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    move |x: f64, t: f64| {
        let far =
            0.5 * (f(-3.0 * length * copies as f64, t)? + f(3.0 * length * copies as f64, t)?);
        let mut acc = f(x, t)?;
        for m in (-copies..=copies).filter(|&m| m != 0) {
            acc += f(x + m as f64 * length, t)? - far;
        }
        Ok(acc)
    }
}

/// u(x, t) on the periodic grid.
pub type Profile = Box<dyn Fn(f64, f64) -> Result<f64>>;

/// A closed form centered at L/2 and periodized, ready to sample or to use
/// as the reference in `diagnostics`.
pub fn centered_profile(u: &Expr, params: &BTreeMap<String, Expr>, length: f64) -> Result<Profile> {
    let f = closed_form(u, params)?;
    Ok(Box::new(periodize(
        move |x, t| f(x - length / 2.0, t),
        length,
        2,
    )))
}

/// Centered profile of a catalog entry. Singular entries have no smooth
/// periodic initial data and are refused.
pub fn solution_profile(
    sol: &ClosedFormSolution,
    params: &BTreeMap<String, Expr>,
    length: f64,
) -> Result<Profile> {
    if sol.kind.is_singular() {
        return Err(Error::InvalidConfig(format!(
            "{} is {} and cannot be simulated",
            sol.id, sol.kind
        )));
    }
    centered_profile(&sol.expr, params, length)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    EtdRk4,
    IfRk4,
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "etd-rk4" => Ok(Scheme::EtdRk4),
            "if-rk4" => Ok(Scheme::IfRk4),
            _ => Err(Error::InvalidConfig(format!("unknown scheme {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub coefficients: PdeCoefficients,
    pub dt: f64,
    pub t_final: f64,
    /// padded grid size over n
    pub dealias: f64,
    pub scheme: Scheme,
    /// record diagnostics every this many steps (0: only at the ends)
    pub record_every: usize,
    /// how many times dt may be halved after an overflow
    pub retries: u32,
}

impl SimConfig {
    pub fn new(coefficients: PdeCoefficients, dt: f64, t_final: f64) -> Self {
        Self {
            coefficients,
            dt,
            t_final,
            dealias: 2.5,
            scheme: Scheme::EtdRk4,
            record_every: 0,
            retries: 2,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "dt = {} must be positive",
                self.dt
            )));
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "T = {} must be non-negative",
                self.t_final
            )));
        }
        if self.dealias.is_nan() || self.dealias < 2.5 {
            return Err(Error::InvalidConfig(format!(
                "dealiasing ratio {} below 5/2",
                self.dealias
            )));
        }
        Ok(())
    }
}

/// Transforms and work buffers for one (n, L, padding) combination.
struct Spectral {
    n: usize,
    m: usize,
    /// i·k_j, zero at the Nyquist mode
    ik: Vec<C>,
    coeffs: [f64; 7],
    fwd_n: Arc<dyn Fft<f64>>,
    inv_n: Arc<dyn Fft<f64>>,
    fwd_m: Arc<dyn Fft<f64>>,
    inv_m: Arc<dyn Fft<f64>>,
    scratch: Vec<C>,
    pad: [Vec<C>; 3],
}

impl Spectral {
    fn new(n: usize, length: f64, ratio: f64, coeffs: &PdeCoefficients) -> Result<Self> {
        let mut m = (ratio * n as f64).ceil() as usize;
        m += m % 2;
        let mut planner = FftPlanner::new();
        let ik = (0..n)
            .map(|j| {
                let k = if j < n / 2 {
                    j as f64
                } else if j == n / 2 {
                    0.0
                } else {
                    j as f64 - n as f64
                };
                C::new(0.0, 2.0 * PI * k / length)
            })
            .collect();
        let mut c = [0.0; 7];
        for (dst, src) in c.iter_mut().zip(&coeffs.a) {
            let (re, im) = src.to_f64();
            if im != 0.0 {
                return Err(Error::InvalidConfig("complex PDE coefficients".into()));
            }
            *dst = re;
        }
        let fwd_m = planner.plan_fft_forward(m);
        let len = fwd_m.get_inplace_scratch_len().max(m);
        Ok(Self {
            n,
            m,
            ik,
            coeffs: c,
            fwd_n: planner.plan_fft_forward(n),
            inv_n: planner.plan_fft_inverse(n),
            fwd_m,
            inv_m: planner.plan_fft_inverse(m),
            scratch: vec![C::new(0.0, 0.0); len],
            pad: [
                vec![C::new(0.0, 0.0); m],
                vec![C::new(0.0, 0.0); m],
                vec![C::new(0.0, 0.0); m],
            ],
        })
    }

    /// Linear symbol of −u_7x: −(ik)⁷ = i·k⁷.
    fn linear(&self) -> Vec<C> {
        self.ik.iter().map(|z| -z.powi(7)).collect()
    }

    fn to_spectrum(&self, values: &[f64]) -> Vec<C> {
        let mut buf: Vec<C> = values.iter().map(|&v| C::new(v, 0.0)).collect();
        self.fwd_n.process(&mut buf);
        buf
    }

    fn to_values(&self, spec: &[C]) -> Vec<f64> {
        let mut buf = spec.to_vec();
        self.inv_n.process(&mut buf);
        buf.iter().map(|z| z.re / self.n as f64).collect()
    }

    /// Physical values of two real derivatives ∂^p u and ∂^q u on the padded
    /// grid, packed as the real and imaginary parts of one transform.
    fn padded_pair(&mut self, v: &[C], p: i32, q: i32, slot: usize) {
        let (n, m) = (self.n, self.m);
        let buf = &mut self.pad[slot];
        buf.iter_mut().for_each(|z| *z = C::new(0.0, 0.0));
        let i = C::new(0.0, 1.0);
        for (j, (&vj, &k)) in v.iter().zip(&self.ik).enumerate() {
            if j == n / 2 {
                continue;
            }
            let z = vj * (k.powi(p) + i * k.powi(q));
            let dst = if j < n / 2 { j } else { m - (n - j) };
            buf[dst] = z;
        }
        self.inv_m.process_with_scratch(
            buf,
            &mut self.scratch[..self.inv_m.get_inplace_scratch_len()],
        );
    }

    /// Fourier coefficients of minus the nonlinear terms.
    fn nonlinear(&mut self, v: &[C]) -> Vec<C> {
        let (n, m) = (self.n, self.m);
        self.padded_pair(v, 0, 1, 0);
        self.padded_pair(v, 2, 3, 1);
        self.padded_pair(v, 4, 5, 2);
        let [a1, a2, a3, a4, a5, a6, a7] = self.coeffs;
        // the transform sums without 1/n; spectra carry n, so divide by n
        let s = 1.0 / n as f64;
        let mut prod: Vec<C> = (0..m)
            .map(|j| {
                let (u, ux) = (self.pad[0][j].re * s, self.pad[0][j].im * s);
                let (u2, u3) = (self.pad[1][j].re * s, self.pad[1][j].im * s);
                let (u4, u5) = (self.pad[2][j].re * s, self.pad[2][j].im * s);
                let f = a1 * u * u * u * ux
                    + a2 * ux * ux * ux
                    + a3 * u * ux * u2
                    + a4 * u * u * u3
                    + a5 * u2 * u3
                    + a6 * ux * u4
                    + a7 * u * u5;
                C::new(-f, 0.0)
            })
            .collect();
        self.fwd_m.process_with_scratch(
            &mut prod,
            &mut self.scratch[..self.fwd_m.get_inplace_scratch_len()],
        );
        // back to the n-mode convention: coefficients scale with the grid size
        let r = n as f64 / m as f64;
        (0..n)
            .map(|j| {
                if j == n / 2 {
                    C::new(0.0, 0.0)
                } else if j < n / 2 {
                    prod[j] * r
                } else {
                    prod[m - (n - j)] * r
                }
            })
            .collect()
    }
}

/// Time derivative of the nonlinear part at `state`; the u_7x term is left
/// to the integrator.
pub fn rhs_eval(state: &GridState, config: &SimConfig) -> Result<Vec<f64>> {
    config.validate()?;
    let mut sp = Spectral::new(state.n, state.length, config.dealias, &config.coefficients)?;
    let v = sp.to_spectrum(&state.values);
    let nl = sp.nonlinear(&v);
    let out = sp.to_values(&nl);
    if out.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite {
            step: 0,
            time: state.time,
        });
    }
    Ok(out)
}

/// −u_7x at `state`, the linear part of the right-hand side.
pub fn linear_eval(state: &GridState) -> Result<Vec<f64>> {
    let sp = Spectral::new(state.n, state.length, 2.5, &PdeCoefficients::zero())?;
    let v = sp.to_spectrum(&state.values);
    let l = sp.linear();
    let lv: Vec<C> = v.iter().zip(&l).map(|(a, b)| a * b).collect();
    Ok(sp.to_values(&lv))
}

/// Mean of f over points on a circle of radius 1 around each z, used for the
/// ETDRK4 coefficients (avoids cancellation for small |z|).
fn contour_mean(z: C, f: impl Fn(C) -> C) -> C {
    const M: usize = 32;
    let mut acc = C::new(0.0, 0.0);
    for j in 0..M {
        let r = C::from_polar(1.0, 2.0 * PI * (j as f64 + 0.5) / M as f64);
        acc += f(z + r);
    }
    acc / M as f64
}

/// Per-mode weights of the Cox-Matthews ETDRK4 step.
struct EtdWeights {
    q: C,
    f1: C,
    f2: C,
    f3: C,
}

impl EtdWeights {
    fn new(z: C, h: f64) -> Self {
        Self {
            q: h * contour_mean(z, |w| ((w / 2.0).exp() - 1.0) / w),
            f1: h * contour_mean(z, |w| {
                (-4.0 - w + w.exp() * (4.0 - 3.0 * w + w * w)) / w.powi(3)
            }),
            f2: h * contour_mean(z, |w| (2.0 + w + w.exp() * (-2.0 + w)) / w.powi(3)),
            f3: h * contour_mean(z, |w| {
                (-4.0 - 3.0 * w - w * w + w.exp() * (4.0 - w)) / w.powi(3)
            }),
        }
    }
}

struct Stepper {
    scheme: Scheme,
    h: f64,
    e: Vec<C>,
    e2: Vec<C>,
    w: Vec<EtdWeights>,
}

impl Stepper {
    fn new(scheme: Scheme, lin: &[C], h: f64) -> Self {
        let e = lin.iter().map(|l| (l * h).exp()).collect();
        let e2 = lin.iter().map(|l| (l * h / 2.0).exp()).collect();
        let w = match scheme {
            Scheme::EtdRk4 => lin.iter().map(|l| EtdWeights::new(l * h, h)).collect(),
            Scheme::IfRk4 => Vec::new(),
        };
        Self {
            scheme,
            h,
            e,
            e2,
            w,
        }
    }

    fn step(&self, sp: &mut Spectral, v: &[C]) -> Vec<C> {
        let n = v.len();
        let (e, e2) = (&self.e, &self.e2);
        let nv = sp.nonlinear(v);
        match self.scheme {
            Scheme::EtdRk4 => {
                let w = &self.w;
                let a: Vec<C> = (0..n).map(|j| e2[j] * v[j] + w[j].q * nv[j]).collect();
                let na = sp.nonlinear(&a);
                let b: Vec<C> = (0..n).map(|j| e2[j] * v[j] + w[j].q * na[j]).collect();
                let nb = sp.nonlinear(&b);
                let c: Vec<C> = (0..n)
                    .map(|j| e2[j] * a[j] + w[j].q * (2.0 * nb[j] - nv[j]))
                    .collect();
                let nc = sp.nonlinear(&c);
                (0..n)
                    .map(|j| {
                        e[j] * v[j]
                            + w[j].f1 * nv[j]
                            + 2.0 * w[j].f2 * (na[j] + nb[j])
                            + w[j].f3 * nc[j]
                    })
                    .collect()
            }
            Scheme::IfRk4 => {
                let h = self.h;
                let a: Vec<C> = (0..n).map(|j| e2[j] * (v[j] + h / 2.0 * nv[j])).collect();
                let na = sp.nonlinear(&a);
                let b: Vec<C> = (0..n).map(|j| e2[j] * v[j] + h / 2.0 * na[j]).collect();
                let nb = sp.nonlinear(&b);
                let c: Vec<C> = (0..n).map(|j| e[j] * v[j] + h * e2[j] * nb[j]).collect();
                let nc = sp.nonlinear(&c);
                (0..n)
                    .map(|j| {
                        e[j] * v[j]
                            + h / 6.0 * (e[j] * nv[j] + 2.0 * e2[j] * (na[j] + nb[j]) + nc[j])
                    })
                    .collect()
            }
        }
    }
}

/// One row of the diagnostics time series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub t: f64,
    pub mass: f64,
    pub l2: f64,
    pub max_error: Option<f64>,
}

/// Mass (L/n)·Σu, L² norm and, given a reference u(x, t), the max-norm
/// error.
pub fn diagnostics(
    state: &GridState,
    reference: Option<&dyn Fn(f64, f64) -> Result<f64>>,
) -> Result<Diagnostics> {
    let h = state.length / state.n as f64;
    let mass = h * state.values.iter().sum::<f64>();
    let l2 = (h * state.values.iter().map(|v| v * v).sum::<f64>()).sqrt();
    let max_error = match reference {
        None => None,
        Some(f) => {
            let mut m = 0.0f64;
            for (x, v) in state.grid().into_iter().zip(&state.values) {
                m = m.max((v - f(x, state.time)?).abs());
            }
            Some(m)
        }
    };
    Ok(Diagnostics {
        t: state.time,
        mass,
        l2,
        max_error,
    })
}

#[derive(Clone, Debug)]
pub struct SimResult {
    pub state: GridState,
    pub history: Vec<Diagnostics>,
    /// the step actually used (after any halving)
    pub dt: f64,
    pub steps: usize,
    /// whether the coefficients admit a flux, so that mass is a conserved
    /// quantity of the PDE (not a measured claim)
    pub conservative: bool,
}

fn run(
    initial: &GridState,
    config: &SimConfig,
    dt: f64,
    reference: Option<&dyn Fn(f64, f64) -> Result<f64>>,
) -> Result<SimResult> {
    let mut sp = Spectral::new(
        initial.n,
        initial.length,
        config.dealias,
        &config.coefficients,
    )?;
    let steps = (config.t_final / dt).round() as usize;
    let h = if steps == 0 {
        0.0
    } else {
        config.t_final / steps as f64
    };
    let stepper = Stepper::new(config.scheme, &sp.linear(), h);
    let mut v = sp.to_spectrum(&initial.values);
    let mut history = vec![diagnostics(initial, reference)?];
    let bound = 1e6 * (1.0 + initial.values.iter().fold(0.0f64, |a, b| a.max(b.abs())));
    let snapshot = |sp: &Spectral, v: &[C], k: usize| -> Result<GridState> {
        let values = sp.to_values(v);
        let time = initial.time + k as f64 * h;
        if values.iter().any(|x| !x.is_finite() || x.abs() > bound) {
            return Err(Error::NonFinite { step: k, time });
        }
        Ok(GridState {
            n: initial.n,
            length: initial.length,
            values,
            time,
        })
    };
    for k in 1..=steps {
        v = stepper.step(&mut sp, &v);
        let check = k % 256 == 0 || k == steps;
        let record = config.record_every > 0 && k % config.record_every == 0;
        if check && v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                step: k,
                time: initial.time + k as f64 * h,
            });
        }
        if record && k != steps {
            history.push(diagnostics(&snapshot(&sp, &v, k)?, reference)?);
        }
    }
    let state = snapshot(&sp, &v, steps)?;
    if steps > 0 {
        history.push(diagnostics(&state, reference)?);
    }
    Ok(SimResult {
        state,
        history,
        dt: h,
        steps,
        conservative: model::flux_decompose(&config.coefficients).is_some(),
    })
}

/// Advance `initial` to time T. On overflow the step is halved up to
/// `config.retries` times before the failure is reported.
pub fn integrate(
    initial: &GridState,
    config: &SimConfig,
    reference: Option<&dyn Fn(f64, f64) -> Result<f64>>,
) -> Result<SimResult> {
    config.validate()?;
    let mut dt = config.dt;
    let mut attempt = 0;
    loop {
        match run(initial, config, dt, reference) {
            Err(Error::NonFinite { .. }) if attempt < config.retries => {
                attempt += 1;
                dt /= 2.0;
            }
            r => return r,
        }
    }
}

/// Diagnostics as CSV with columns t, mass, l2, max_error.
pub fn history_csv(history: &[Diagnostics]) -> String {
    let mut s = String::from("t,mass,l2,max_error\n");
    for d in history {
        let e = d.max_error.map(|e| format!("{e:.17e}")).unwrap_or_default();
        let _ = writeln!(s, "{:.17e},{:.17e},{:.17e},{e}", d.t, d.mass, d.l2);
    }
    s
}

/// Final state as CSV with columns x, u.
pub fn state_csv(state: &GridState) -> String {
    let mut s = String::from("x,u\n");
    for (x, u) in state.grid().into_iter().zip(&state.values) {
        let _ = writeln!(s, "{x:.17e},{u:.17e}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_pair() {
        let x: Vec<C> = (0..256)
            .map(|j| C::new((j as f64 * 0.37).sin(), (j as f64 * 1.3).cos()))
            .collect();
        let back = idft(&dft(&x).unwrap()).unwrap();
        let scale = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).norm() <= 1e-12 * scale);
        }
        let mut delta = vec![C::new(0.0, 0.0); 16];
        delta[0] = C::new(1.0, 0.0);
        assert!(dft(&delta)
            .unwrap()
            .iter()
            .all(|z| (z - 1.0).norm() < 1e-15));
        let e1: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        let e2: f64 = dft(&x).unwrap().iter().map(|z| z.norm_sqr()).sum::<f64>() / 256.0;
        assert!((e1 - e2).abs() <= 1e-12 * e1);
        assert!(dft(&x[..100]).is_err());
    }

    #[test]
    fn spectral_derivative_of_sines() {
        let (n, l) = (64usize, 40.0);
        let sp = Spectral::new(n, l, 2.5, &PdeCoefficients::zero()).unwrap();
        for m in 1..=n / 4 {
            let w = 2.0 * PI * m as f64 / l;
            let vals: Vec<f64> = (0..n)
                .map(|j| (w * j as f64 * l / n as f64).sin())
                .collect();
            let d: Vec<C> = sp
                .to_spectrum(&vals)
                .iter()
                .zip(&sp.ik)
                .map(|(a, b)| a * b)
                .collect();
            for (j, v) in sp.to_values(&d).iter().enumerate() {
                let x = j as f64 * l / n as f64;
                assert!((v - w * (w * x).cos()).abs() < 1e-10, "m = {m}");
            }
        }
    }

    #[test]
    fn constants_are_fixed_points() {
        let s = GridState::new(40.0, vec![0.3; 64], 0.0).unwrap();
        let cfg = SimConfig::new(PdeCoefficients::kk7(), 1e-4, 0.01);
        assert!(rhs_eval(&s, &cfg).unwrap().iter().all(|v| v.abs() < 1e-15));
        let r = integrate(&s, &cfg, None).unwrap();
        assert!(r.state.values.iter().all(|v| (v - 0.3).abs() < 1e-14));
        let d = diagnostics(&s, None).unwrap();
        assert!((d.mass - 0.3 * 40.0).abs() < 1e-12);
        let z = GridState::new(40.0, vec![0.0; 64], 0.0).unwrap();
        let r = integrate(&z, &cfg, None).unwrap();
        assert!(r.state.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn linear_core_moves_sines_exactly() {
        // u_t + u_7x = 0 sends sin(wx) to sin(w(x + w⁶t))
        let (n, l) = (32usize, 2.0 * PI);
        let vals: Vec<f64> = (0..n)
            .map(|j| (2.0 * j as f64 * l / n as f64).sin())
            .collect();
        let s = GridState::new(l, vals, 0.0).unwrap();
        assert!(
            rhs_eval(&s, &SimConfig::new(PdeCoefficients::zero(), 1e-3, 0.0))
                .unwrap()
                .iter()
                .all(|v| v.abs() < 1e-14)
        );
        for scheme in [Scheme::EtdRk4, Scheme::IfRk4] {
            let mut cfg = SimConfig::new(PdeCoefficients::zero(), 1e-3, 0.1);
            cfg.scheme = scheme;
            let r = integrate(&s, &cfg, None).unwrap();
            for (x, v) in r.state.grid().iter().zip(&r.state.values) {
                let want = (2.0 * (x + 64.0 * 0.1)).sin();
                assert!((v - want).abs() < 1e-11, "{scheme:?}");
            }
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(GridState::new(40.0, vec![0.0; 12], 0.0).is_err());
        assert!(GridState::new(40.0, vec![f64::NAN; 16], 0.0).is_err());
        let s = GridState::new(40.0, vec![0.0; 16], 0.0).unwrap();
        let mut cfg = SimConfig::new(PdeCoefficients::kk7(), 1e-4, 0.01);
        cfg.dealias = 2.0;
        assert!(integrate(&s, &cfg, None).is_err());
        let cfg = SimConfig::new(PdeCoefficients::kk7(), -1.0, 0.01);
        assert!(integrate(&s, &cfg, None).is_err());
    }
}
