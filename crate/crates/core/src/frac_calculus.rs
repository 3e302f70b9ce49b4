//! Riemann-Liouville integrals and Caputo derivatives on uniform time grids.
//!
//! These are the residual oracles for the propagator formulas: sample an exact
//! solution, differentiate it numerically, and measure how far it is from
//! satisfying its equation.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::dd::{gamma_ratio, int_pow, DoubleDouble};
use crate::error::{domain, Result};
use crate::gamma::rgamma;
use crate::mittag_leffler::{propagator_heat, propagator_schrodinger, propagator_wave_pair};

/// Uniform grid `t_j = j * t_end / steps`, `j = 0..=steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_end: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t_end: f64, steps: usize) -> Result<Self> {
        if !(t_end > 0.0 && t_end.is_finite()) {
            return domain(format!("t_end must be positive, got {t_end}"));
        }
        if steps < 2 {
            return domain(format!("need at least 2 steps, got {steps}"));
        }
        Ok(Self { t_end, steps })
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn dt(&self) -> f64 {
        self.t_end / self.steps as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        if j == self.steps {
            self.t_end
        } else {
            j as f64 * self.dt()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.steps).map(|j| self.node(j))
    }

    /// Same interval, twice as many steps.
    pub fn refined(&self) -> Self {
        Self {
            t_end: self.t_end,
            steps: 2 * self.steps,
        }
    }
}

/// Values that can be sampled on a grid: real or complex.
pub trait Sample:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(self) -> f64;
}

impl Sample for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Sample for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// One value per grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal<T> {
    grid: TimeGrid,
    values: Vec<T>,
}

impl<T: Sample> SampledSignal<T> {
    pub fn new(grid: TimeGrid, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.steps + 1 {
            return domain(format!(
                "{} values for a grid with {} nodes",
                values.len(),
                grid.steps + 1
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> T) -> Self {
        let values = grid.nodes().map(f).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Largest `|a_j - b_j|` over `j >= from`.
    pub fn max_deviation(&self, other: &[T], from: usize) -> f64 {
        self.values
            .iter()
            .zip(other)
            .skip(from)
            .map(|(&a, &b)| (a - b).magnitude())
            .fold(0.0, f64::max)
    }
}

/// Fractional integral `(1/Gamma(b)) int_0^t (t-s)^(b-1) f(s) ds` by product
/// integration against the piecewise-linear interpolant of `f`, so linear
/// signals are integrated exactly.
pub fn rl_integral<T: Sample>(f: &SampledSignal<T>, beta: f64) -> Result<SampledSignal<T>> {
    if !(beta > 0.0 && beta.is_finite()) {
        return domain(format!("integral order must be positive, got {beta}"));
    }
    let n_max = f.grid.steps;
    let b1 = beta + 1.0;
    let pw: Vec<f64> = (0..=n_max + 1).map(|k| (k as f64).powf(b1)).collect();
    let scale = f.grid.dt().powf(beta) * rgamma(beta + 2.0);
    let v = &f.values;
    let mut out = vec![T::default(); n_max + 1];
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        let nf = n as f64;
        let mut acc = v[0] * (pw[n - 1] - (nf - 1.0 - beta) * nf.powf(beta)) + v[n];
        for (j, &vj) in v.iter().enumerate().take(n).skip(1) {
            let m = n - j;
            acc = acc + vj * (pw[m + 1] - 2.0 * pw[m] + pw[m - 1]);
        }
        *slot = acc * scale;
    }
    Ok(SampledSignal {
        grid: f.grid,
        values: out,
    })
}

/// History weights `(k+1)^e - k^e`.
fn increments(e: f64, n: usize) -> Vec<f64> {
    let mut prev = 0.0;
    (0..n)
        .map(|k| {
            let next = ((k + 1) as f64).powf(e);
            let w = next - prev;
            prev = next;
            w
        })
        .collect()
}

/// Caputo derivative on the unit-spaced grid of a signal with `g_0 = 0`
/// (and `g'(0) = 0` when `beta > 1`). Index 0 of the result is left at zero.
fn unit_derivative<T: Sample>(g: &[T], beta: f64) -> Vec<T> {
    let n_max = g.len() - 1;
    let mut out = vec![T::default(); n_max + 1];
    if beta == 1.0 {
        for n in 1..=n_max {
            out[n] = g[n] - g[n - 1];
        }
        return out;
    }
    let d: Vec<T> = (1..=n_max).map(|k| g[k] - g[k - 1]).collect();
    if beta < 1.0 {
        // L1: piecewise-linear g inside the Caputo integral
        let b = increments(1.0 - beta, n_max);
        let c = rgamma(2.0 - beta);
        for n in 1..=n_max {
            let mut acc = T::default();
            for k in 0..n {
                acc = acc + d[n - 1 - k] * b[k];
            }
            out[n] = acc * c;
        }
    } else {
        // backward difference in t of the L1 approximation to I^(2-b) g'
        let b = increments(2.0 - beta, n_max);
        let c = rgamma(3.0 - beta);
        for n in 1..=n_max {
            let mut acc = d[n - 1] * b[0];
            for k in 1..n {
                acc = acc - d[k - 1] * (b[n - k - 1] - b[n - k]);
            }
            out[n] = acc * c;
        }
    }
    out
}

fn check_caputo_order(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta < 2.0) {
        return domain(format!("Caputo order must lie in (0, 2), got {beta}"));
    }
    Ok(())
}

/// Subtract the Taylor polynomial of degree `ceil(beta) - 1` at `t = 0`.
fn strip_taylor<T: Sample>(f: &SampledSignal<T>, beta: f64, slope: Option<T>) -> Result<Vec<T>> {
    let f0 = f.values[0];
    let slope = match (beta > 1.0, slope) {
        (false, _) => T::default(),
        (true, Some(s)) => s,
        (true, None) => {
            return domain(format!(
                "order {beta} > 1 needs the initial slope f'(0); it is never differentiated from samples"
            ))
        }
    };
    Ok(f.grid
        .nodes()
        .zip(&f.values)
        .map(|(t, &v)| v - f0 - slope * t)
        .collect())
}

/// Caputo derivative of order `0 < beta < 2`.
///
/// `0 < beta < 1` uses the L1 scheme; `beta = 1` is the backward difference.
/// For `1 < beta < 2` the signal minus `f(0) + f'(0) t` is differentiated, so
/// `initial_slope` must carry `f'(0)`. Node 0 is reported as zero.
pub fn caputo_derivative<T: Sample>(
    f: &SampledSignal<T>,
    beta: f64,
    initial_slope: Option<T>,
) -> Result<SampledSignal<T>> {
    caputo_derivative_corrected(f, beta, initial_slope, &[])
}

/// [`caputo_derivative`] with starting weights that make the scheme exact on
/// `t^s` for each `s` in `exponents`.
///
/// Exact solutions of fractional equations carry terms like `t^beta` which the
/// plain scheme resolves at a reduced order, even far from `t = 0`. Correcting
/// for their known exponents lifts the order back toward the smooth-signal one.
pub fn caputo_derivative_corrected<T: Sample>(
    f: &SampledSignal<T>,
    beta: f64,
    initial_slope: Option<T>,
    exponents: &[f64],
) -> Result<SampledSignal<T>> {
    check_caputo_order(beta)?;
    if f.grid.steps < 2 {
        return domain("Caputo derivative needs at least 3 nodes");
    }
    let floor = if beta > 1.0 { 1.0 } else { 0.0 };
    if exponents.iter().any(|&s| !(s > floor)) {
        return domain(format!(
            "correction exponents must exceed {floor} for order {beta}, got {exponents:?}"
        ));
    }
    if exponents.len() >= f.grid.steps {
        return domain("more correction exponents than grid steps");
    }
    let g = strip_taylor(f, beta, initial_slope)?;
    let mut d = unit_derivative(&g, beta);
    if !exponents.is_empty() {
        let w = StartingWeights::new(beta, exponents, f.grid.steps)?;
        for (n, dn) in d.iter_mut().enumerate().skip(1) {
            let row = w.row(n);
            for (j, &wj) in row.iter().enumerate() {
                *dn = *dn + g[j + 1] * wj;
            }
        }
    }
    let scale = f.grid.dt().powf(-beta);
    d[0] = T::default();
    Ok(SampledSignal {
        grid: f.grid,
        values: d.into_iter().map(|v| v * scale).collect(),
    })
}

/// Per-node weights on `g_1..g_m` fixing the scheme on `t^s`, unit spacing.
struct StartingWeights {
    m: usize,
    rows: Vec<f64>,
}

impl StartingWeights {
    fn new(beta: f64, exponents: &[f64], n_max: usize) -> Result<Self> {
        let m = exponents.len();
        // The defects are small differences of long sums; f64 would leave them
        // with an absolute error that the correction then amplifies.
        let bdd = DoubleDouble::new(beta);
        let history = dd_history_weights(bdd, n_max);
        let mut defect = vec![vec![0.0; n_max + 1]; m];
        for (i, &s) in exponents.iter().enumerate() {
            let sdd = DoubleDouble::new(s);
            let g: Vec<DoubleDouble> = (0..=n_max).map(|k| int_pow(k, sdd)).collect();
            let approx = dd_unit_derivative(&g, beta, &history);
            let c = gamma_ratio(sdd.add_f64(1.0), (sdd - bdd).add_f64(1.0));
            for n in 1..=n_max {
                defect[i][n] = (c * int_pow(n, sdd - bdd) - approx[n]).to_f64();
            }
        }
        let vandermonde: Vec<Vec<f64>> = exponents
            .iter()
            .map(|&s| (1..=m).map(|j| (j as f64).powf(s)).collect())
            .collect();
        let lu = Lu::factor(vandermonde)?;
        let mut rows = vec![0.0; (n_max + 1) * m];
        for n in 1..=n_max {
            let rhs: Vec<f64> = (0..m).map(|i| defect[i][n]).collect();
            rows[n * m..(n + 1) * m].copy_from_slice(&lu.solve(rhs));
        }
        Ok(Self { m, rows })
    }

    fn row(&self, n: usize) -> &[f64] {
        &self.rows[n * self.m..(n + 1) * self.m]
    }
}

/// Increments `(k+1)^e - k^e` with `e = 1 - b` (or `2 - b` above order one).
fn dd_history_weights(beta: DoubleDouble, n: usize) -> Vec<DoubleDouble> {
    let e = if beta.hi < 1.0 {
        (-beta).add_f64(1.0)
    } else {
        (-beta).add_f64(2.0)
    };
    (0..n).map(|k| int_pow(k + 1, e) - int_pow(k, e)).collect()
}

/// Double-double twin of [`unit_derivative`].
fn dd_unit_derivative(g: &[DoubleDouble], beta: f64, b: &[DoubleDouble]) -> Vec<DoubleDouble> {
    let n_max = g.len() - 1;
    let d: Vec<DoubleDouble> = (1..=n_max).map(|k| g[k] - g[k - 1]).collect();
    let mut out = vec![DoubleDouble::ZERO; n_max + 1];
    if beta == 1.0 {
        out[1..].copy_from_slice(&d);
        return out;
    }
    let bdd = DoubleDouble::new(beta);
    if beta < 1.0 {
        let c = DoubleDouble::ONE / gamma_ratio((-bdd).add_f64(2.0), DoubleDouble::ONE);
        for n in 1..=n_max {
            let mut acc = DoubleDouble::ZERO;
            for k in 0..n {
                acc = acc + d[n - 1 - k] * b[k];
            }
            out[n] = acc * c;
        }
    } else {
        let c = DoubleDouble::ONE / gamma_ratio((-bdd).add_f64(3.0), DoubleDouble::ONE);
        for n in 1..=n_max {
            let mut acc = d[n - 1] * b[0];
            for k in 1..n {
                acc = acc - d[k - 1] * (b[n - k - 1] - b[n - k]);
            }
            out[n] = acc * c;
        }
    }
    out
}

/// Dense LU with partial pivoting for the small correction systems.
struct Lu {
    a: Vec<Vec<f64>>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(mut a: Vec<Vec<f64>>) -> Result<Self> {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
                .unwrap_or(col);
            if a[piv][col] == 0.0 {
                return domain("singular correction system (repeated exponents?)");
            }
            a.swap(col, piv);
            perm.swap(col, piv);
            let (top, rest) = a.split_at_mut(col + 1);
            let pivot = &top[col];
            for row in rest {
                let f = row[col] / pivot[col];
                row[col] = f;
                for (x, p) in row[col + 1..].iter_mut().zip(&pivot[col + 1..]) {
                    *x -= f * p;
                }
            }
        }
        Ok(Self { a, perm })
    }

    fn solve(&self, b: Vec<f64>) -> Vec<f64> {
        let n = self.a.len();
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for r in 0..n {
            for c in 0..r {
                x[r] -= self.a[r][c] * x[c];
            }
        }
        for r in (0..n).rev() {
            for c in r + 1..n {
                x[r] -= self.a[r][c] * x[c];
            }
            x[r] /= self.a[r][r];
        }
        x
    }
}

/// Which fractional evolution equation a scalar mode obeys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquationKind {
    /// `D^b w + s w = 0`, `0 < b <= 1`.
    Heat,
    /// `D^b w + s w = 0`, `1 < b < 2`, with initial position and velocity.
    Wave,
    /// `i D^b w + s w = 0`, `0 < b < 1`.
    Schrodinger,
}

impl EquationKind {
    pub fn check_order(self, beta: f64) -> Result<()> {
        let ok = match self {
            EquationKind::Heat => beta > 0.0 && beta <= 1.0,
            EquationKind::Wave => beta > 1.0 && beta < 2.0,
            EquationKind::Schrodinger => beta > 0.0 && beta < 1.0,
        };
        if ok {
            Ok(())
        } else {
            domain(format!("order {beta} not admissible for {self:?}"))
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EquationKind::Heat => "heat",
            EquationKind::Wave => "wave",
            EquationKind::Schrodinger => "schrodinger",
        }
    }
}

impl std::str::FromStr for EquationKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "heat" => Ok(EquationKind::Heat),
            "wave" => Ok(EquationKind::Wave),
            "schrodinger" | "schroedinger" => Ok(EquationKind::Schrodinger),
            other => Err(crate::Error::Parse(format!(
                "unknown equation kind '{other}'"
            ))),
        }
    }
}

/// Starting-weight exponents for the exact solutions of `kind`.
///
/// Below order one these are the two leading singular powers `beta`, `2 beta`
/// of `E_b(-t^b s)` plus the linear power, which keeps the scheme exact on
/// lines. The wave kind only needs `beta`. Order one needs nothing.
pub fn singular_exponents(beta: f64, kind: EquationKind) -> Vec<f64> {
    let mut out = if beta == 1.0 {
        Vec::new()
    } else if beta > 1.0 || kind == EquationKind::Wave {
        vec![beta]
    } else {
        vec![beta, 2.0 * beta, 1.0]
    };
    out.retain(|&s| s < 2.0);
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    out
}

/// Residual of the exact scalar solution of `kind` with spectral value `s`:
/// the largest `|D^b u + s u|` (or `|D^b u - i s u|`) over the nodes in the
/// second half of the grid, where the scheme has its asymptotic order.
///
/// `u` is sampled from the Mittag-Leffler propagators with initial value `u0`
/// and, for the wave kind, initial velocity `u1`.
pub fn fode_residual(
    beta: f64,
    s: f64,
    u0: f64,
    u1: f64,
    grid: TimeGrid,
    kind: EquationKind,
) -> Result<f64> {
    kind.check_order(beta)?;
    if !(s >= 0.0 && s.is_finite()) {
        return domain(format!("spectral value must be nonnegative, got {s}"));
    }
    let exps = singular_exponents(beta, kind);
    match kind {
        EquationKind::Heat => {
            let u = sample_real(grid, |t| Ok(u0 * propagator_heat(beta, t, s)?))?;
            let d = caputo_derivative_corrected(&u, beta, None, &exps)?;
            Ok(max_residual(&d, &u, |dv, uv| dv + uv * s))
        }
        EquationKind::Wave => {
            let u = sample_real(grid, |t| {
                let (a, b) = propagator_wave_pair(beta, t, s)?;
                Ok(a * u0 + b * u1)
            })?;
            let d = caputo_derivative_corrected(&u, beta, Some(u1), &exps)?;
            Ok(max_residual(&d, &u, |dv, uv| dv + uv * s))
        }
        EquationKind::Schrodinger => {
            let mut vals = Vec::with_capacity(grid.steps() + 1);
            for t in grid.nodes() {
                vals.push(propagator_schrodinger(beta, t, s)? * u0);
            }
            let u = SampledSignal::new(grid, vals)?;
            let d = caputo_derivative_corrected(&u, beta, None, &exps)?;
            let is = Complex64::new(0.0, s);
            Ok(max_residual(&d, &u, |dv, uv| dv - is * uv))
        }
    }
}

/// First node of the residual window `t >= t_end / 2` (never before node 2).
pub fn residual_window_start(grid: TimeGrid) -> usize {
    grid.steps.div_ceil(2).max(2)
}

fn sample_real(grid: TimeGrid, f: impl Fn(f64) -> Result<f64>) -> Result<SampledSignal<f64>> {
    let vals = grid.nodes().map(f).collect::<Result<Vec<_>>>()?;
    SampledSignal::new(grid, vals)
}

fn max_residual<T: Sample>(
    d: &SampledSignal<T>,
    u: &SampledSignal<T>,
    op: impl Fn(T, T) -> T,
) -> f64 {
    let start = residual_window_start(d.grid);
    d.values
        .iter()
        .zip(&u.values)
        .skip(start)
        .map(|(&dv, &uv)| op(dv, uv).magnitude())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma_real;

    fn grid(n: usize) -> TimeGrid {
        TimeGrid::new(1.0, n).unwrap()
    }

    #[test]
    fn grid_rejects_degenerate_input() {
        assert!(TimeGrid::new(0.0, 10).is_err());
        assert!(TimeGrid::new(1.0, 1).is_err());
        assert_eq!(grid(4).node(4), 1.0);
    }

    #[test]
    fn rl_integral_of_one() {
        let g = grid(16);
        let one = SampledSignal::from_fn(g, |_| 1.0);
        let i1 = rl_integral(&one, 1.0).unwrap();
        for (t, v) in g.nodes().zip(i1.values()) {
            assert!((v - t).abs() < 1e-14);
        }
        let ih = rl_integral(&one, 0.5).unwrap();
        let c = rgamma(1.5);
        for (t, v) in g.nodes().zip(ih.values()) {
            assert!((v - t.sqrt() * c).abs() < 1e-14, "t = {t}");
        }
        assert!(rl_integral(&one, 0.0).is_err());
    }

    #[test]
    fn rl_integral_exact_on_linear() {
        let g = grid(10);
        let f = SampledSignal::from_fn(g, |t| 2.0 - 3.0 * t);
        let v = rl_integral(&f, 0.7).unwrap();
        for (t, x) in g.nodes().zip(v.values()) {
            let exact = 2.0 * t.powf(0.7) * rgamma(1.7) - 3.0 * t.powf(1.7) * rgamma(2.7);
            assert!((x - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn caputo_of_constant_and_line() {
        let g = grid(20);
        let c = SampledSignal::from_fn(g, |_| 3.0);
        for beta in [0.3, 1.0, 1.6] {
            let d = caputo_derivative(&c, beta, Some(0.0)).unwrap();
            assert!(d.values().iter().all(|v| v.abs() < 1e-13));
        }
        let line = SampledSignal::from_fn(g, |t| 1.0 + t);
        let d = caputo_derivative(&line, 1.5, Some(1.0)).unwrap();
        assert!(d.values().iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn order_above_one_requires_slope() {
        let g = grid(8);
        let f = SampledSignal::from_fn(g, |t| t * t);
        assert!(caputo_derivative(&f, 1.5, None).is_err());
        assert!(caputo_derivative(&f, 2.0, Some(0.0)).is_err());
    }

    #[test]
    fn corrections_make_power_exact() {
        let g = grid(32);
        let f = SampledSignal::from_fn(g, |t| t.powf(0.4) + t.powf(0.8));
        let d = caputo_derivative_corrected(&f, 0.4, None, &[0.4, 0.8]).unwrap();
        let c1 = gamma_real(1.4).unwrap();
        let c2 = gamma_real(1.8).unwrap() * rgamma(1.4);
        for (t, v) in g.nodes().zip(d.values()).skip(1) {
            assert!((v - (c1 + c2 * t.powf(0.4))).abs() < 1e-11, "t = {t}");
        }
    }

    #[test]
    fn singular_exponent_sets() {
        assert_eq!(singular_exponents(0.5, EquationKind::Heat), vec![0.5, 1.0]);
        assert_eq!(
            singular_exponents(0.3, EquationKind::Heat),
            vec![0.3, 0.6, 1.0]
        );
        assert_eq!(singular_exponents(1.5, EquationKind::Wave), vec![1.5]);
        assert!(singular_exponents(1.0, EquationKind::Heat).is_empty());
    }

    #[test]
    fn residual_vanishes_without_spectrum() {
        let g = grid(40);
        for (beta, kind) in [
            (0.5, EquationKind::Heat),
            (1.5, EquationKind::Wave),
            (0.5, EquationKind::Schrodinger),
        ] {
            let r = fode_residual(beta, 0.0, 1.0, 0.5, g, kind).unwrap();
            assert!(r < 1e-10, "{kind:?}: {r}");
        }
    }

    #[test]
    fn kind_parses() {
        assert_eq!("Wave".parse::<EquationKind>().unwrap(), EquationKind::Wave);
        assert!("diffusion".parse::<EquationKind>().is_err());
    }
}
