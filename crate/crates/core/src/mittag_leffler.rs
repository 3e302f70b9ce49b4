//! Two-parameter Mittag-Leffler function `E_{a,d}(z) = sum_k z^k / Gamma(a k + d)`
//! and the heat, wave and Schrodinger type propagators built from it.
//!
//! Evaluation is region based, keyed on `rho = |z|^(1/a)`:
//!
//! * `rho <= 25`: Taylor series accumulated in double-double arithmetic. The
//!   largest term is roughly `exp(rho)`, so f64 accumulation would lose
//!   `rho / ln 10` digits to cancellation on the negative axis.
//! * `rho >= 45`: algebraic expansion `-sum_k z^-k / Gamma(d - a k)` truncated
//!   near its smallest term, plus the residue terms `(1/a) Z^(1-d) e^Z` of the
//!   poles `Z^a = z` on the principal sheet. Inside the decaying sector these
//!   residues are exponentially small in `rho`, but for `a` close to 2 they
//!   decay so slowly that they carry the whole oscillation.
//! * in between, both branches are computed and the one with the smaller
//!   error estimate wins.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::dd::{rgamma_parts, ComplexDD, DoubleDouble};
use crate::error::{domain, Error, Result};
use crate::gamma::{ln_gamma, rgamma};

/// Complex argument of the Mittag-Leffler function.
pub type ComplexPoint = Complex64;

/// Upper end of the pure-series region, in units of `|z|^(1/alpha)`.
pub const SERIES_RHO: f64 = 25.0;
/// Lower end of the pure-asymptotic region, in units of `|z|^(1/alpha)`.
pub const ASYMPTOTIC_RHO: f64 = 45.0;

const SERIES_MAX_TERMS: usize = 50_000;
const ASYMPTOTIC_MAX_TERMS: usize = 5_000;
const DD_EPS: f64 = 4.93e-32;

/// The parameter pair `(alpha, delta)` of `E_{alpha, delta}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    pub alpha: f64,
    pub delta: f64,
}

impl MLParams {
    pub fn new(alpha: f64, delta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return domain(format!("alpha must be positive and finite, got {alpha}"));
        }
        if !delta.is_finite() {
            return domain(format!("delta must be finite, got {delta}"));
        }
        Ok(Self { alpha, delta })
    }

    /// Classical one-parameter function `E_alpha = E_{alpha, 1}`.
    pub fn single(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0)
    }
}

/// Closed sector `mu <= |arg z| <= pi` on which `|E(z)| <= C / (1 + |z|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorSpec {
    mu: f64,
}

impl SectorSpec {
    /// Requires `pi alpha / 2 < mu <= pi`.
    pub fn new(alpha: f64, mu: f64) -> Result<Self> {
        if !(mu > PI * alpha / 2.0 && mu <= PI) {
            return domain(format!(
                "sector angle {mu} outside (pi*alpha/2, pi] for alpha = {alpha}"
            ));
        }
        Ok(Self { mu })
    }

    /// Midpoint of `(pi alpha / 2, min(pi, pi alpha))`.
    pub fn midpoint(alpha: f64) -> Result<Self> {
        let lo = PI * alpha / 2.0;
        let hi = PI.min(PI * alpha);
        if !(lo < hi) {
            return domain(format!("no admissible sector for alpha = {alpha}"));
        }
        Self::new(alpha, 0.5 * (lo + hi))
    }

    /// Only the negative real axis.
    pub fn negative_axis(alpha: f64) -> Result<Self> {
        Self::new(alpha, PI)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn contains(&self, z: ComplexPoint) -> bool {
        z == Complex64::new(0.0, 0.0) || principal_arg(z).abs() >= self.mu - 1e-15
    }
}

/// Result of the series branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: ComplexPoint,
    /// Truncation tail plus accumulated rounding, absolute.
    pub error_bound: f64,
    pub terms: usize,
}

/// Result of the asymptotic branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticValue {
    pub value: ComplexPoint,
    /// Magnitude of the first omitted algebraic terms, absolute.
    pub error_estimate: f64,
    pub terms: usize,
}

/// `arg z` in `(-pi, pi]`; the negative real axis maps to `+pi` regardless of
/// the sign of a zero imaginary part.
fn principal_arg(z: Complex64) -> f64 {
    let t = z.im.atan2(z.re);
    if t <= -PI || (z.im == 0.0 && z.re < 0.0) {
        PI
    } else {
        t
    }
}

fn check_point(z: ComplexPoint) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return domain(format!("non-finite argument {z}"));
    }
    Ok(())
}

/// Parameter pairs kept in the per-thread coefficient cache before it is reset.
const CACHED_PAIRS: usize = 64;

/// Scaled coefficients keyed by the bit patterns of `(alpha, delta)`.
type CoefficientMap = HashMap<(u64, u64), Vec<(DoubleDouble, i32)>>;

thread_local! {
    static COEFFICIENTS: RefCell<CoefficientMap> =
        RefCell::new(HashMap::new());
}

/// Series coefficients `1/Gamma(a k + d) = m * 2^e` for one parameter pair,
/// computed once per thread and extended on demand.
struct CoefficientTable {
    key: (u64, u64),
    params: MLParams,
    local: Vec<(DoubleDouble, i32)>,
}

impl CoefficientTable {
    fn borrow(params: MLParams) -> Self {
        let key = (params.alpha.to_bits(), params.delta.to_bits());
        let local = COEFFICIENTS.with(|c| c.borrow_mut().remove(&key).unwrap_or_default());
        Self { key, params, local }
    }

    fn get(&mut self, k: usize) -> (DoubleDouble, i32) {
        while self.local.len() <= k {
            let j = self.local.len() as f64;
            let x = DoubleDouble::from_prod(self.params.alpha, j).add_f64(self.params.delta);
            let (pre, lg) = rgamma_parts(x);
            let e = (-lg.hi / LN_2).round();
            let ln2 = DoubleDouble {
                hi: LN_2,
                lo: 2.319_046_813_846_299_6e-17,
            };
            let m = pre * (-lg - ln2.mul_f64(e)).exp();
            self.local.push((m, e as i32));
        }
        self.local[k]
    }
}

impl Drop for CoefficientTable {
    fn drop(&mut self) {
        let local = std::mem::take(&mut self.local);
        let key = self.key;
        COEFFICIENTS.with(|c| {
            let mut map = c.borrow_mut();
            if map.len() >= CACHED_PAIRS {
                map.clear();
            }
            map.insert(key, local);
        });
    }
}

fn series_core(params: MLParams, z: ComplexPoint, tol: f64) -> (SeriesValue, bool) {
    let MLParams { alpha, delta } = params;
    if z.norm() == 0.0 {
        let v = SeriesValue {
            value: Complex64::new(rgamma(delta), 0.0),
            error_bound: 0.0,
            terms: 1,
        };
        return (v, true);
    }
    let rho = z.norm().powf(1.0 / alpha);
    let zdd = ComplexDD::from_c64(z);
    // z^k is carried as pow * 2^scale to stay clear of overflow
    let mut pow = ComplexDD::ONE;
    let mut scale: i32 = 0;
    let mut sum = ComplexDD::ZERO;
    let mut rounding = 0.0;
    let mut prev_mag = f64::INFINITY;
    let mut tail = f64::INFINITY;
    let mut converged = false;
    let mut k = 0usize;

    let mut table = CoefficientTable::borrow(params);
    while k < SERIES_MAX_TERMS {
        let (mant, exp2) = table.get(k);
        let x_hi = alpha * k as f64 + delta;
        let shift = exp2 + scale;
        let term = pow.scale(mant).ldexp(shift);
        sum = sum + term;
        let mag = term.norm_approx();
        rounding += mag * DD_EPS * (16.0 + (shift as f64 * LN_2).abs() + k as f64);

        if k >= 1 && x_hi > rho + 1.0 {
            if mag == 0.0 {
                // underflow past the peak of the terms
                if mant.hi != 0.0 {
                    tail = 0.0;
                    converged = true;
                    k += 1;
                    break;
                }
            } else if mag < prev_mag {
                let q = mag / prev_mag;
                tail = mag * q / (1.0 - q);
                let s = sum.norm_approx();
                if mag + tail <= tol * (s + 1.0) || mag + tail <= 1e-3 * rounding {
                    converged = true;
                    k += 1;
                    break;
                }
            }
        }
        if mag > 0.0 {
            prev_mag = mag;
        }

        pow = pow * zdd;
        let n = pow.norm_approx();
        if n > 2f64.powi(600) {
            pow = pow.ldexp(-600);
            scale += 600;
        } else if n > 0.0 && n < 2f64.powi(-600) {
            pow = pow.ldexp(600);
            scale -= 600;
        }
        k += 1;
    }

    let v = SeriesValue {
        value: sum.to_c64(),
        error_bound: rounding + if converged { tail } else { f64::INFINITY },
        terms: k,
    };
    (v, converged)
}

/// Partial sums of the defining Taylor series, accumulated in double-double.
///
/// Sums until the current term and a geometric bound on the tail are negligible
/// at double-double precision. Fails with [`Error::Accuracy`] when the rounding
/// accumulated through cancellation (or the term budget) prevents that.
pub fn ml_series(params: MLParams, z: ComplexPoint, tol: f64) -> Result<SeriesValue> {
    check_point(z)?;
    if !(tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    // sum to full working precision; `tol` only decides success
    let (v, converged) = series_core(params, z, tol.min(DD_EPS));
    let scale = v.value.norm() + 1.0;
    if !converged || !(v.error_bound <= tol * scale) || !v.value.re.is_finite() {
        return Err(Error::Accuracy {
            requested: tol,
            achieved: v.error_bound / scale,
        });
    }
    Ok(v)
}

/// Sum of `(1/a) Z^(1-d) exp(Z)` over the poles `Z = |z|^(1/a) e^{i (arg z + 2 pi m)/a}`
/// with `-a pi < arg z + 2 pi m <= a pi`.
fn residue_terms(params: MLParams, z: ComplexPoint) -> Complex64 {
    let MLParams { alpha, delta } = params;
    let theta = principal_arg(z);
    let ln_r = z.norm().ln() / alpha;
    let rho = ln_r.exp();
    let lim = alpha * PI;
    let m_lo = ((-lim - theta) / (2.0 * PI)).floor() as i64;
    let m_hi = ((lim - theta) / (2.0 * PI)).ceil() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in m_lo..=m_hi {
        let ang = theta + 2.0 * PI * m as f64;
        if !(ang > -lim && ang <= lim) {
            continue;
        }
        let phi = ang / alpha;
        let log_mag = (1.0 - delta) * ln_r + rho * phi.cos();
        let phase = (1.0 - delta) * phi + rho * phi.sin();
        acc += Complex64::from_polar(log_mag.exp(), phase) / alpha;
    }
    acc
}

fn algebraic_term(params: MLParams, inv_pow: Complex64, k: usize) -> Complex64 {
    -inv_pow * rgamma(params.delta - params.alpha * k as f64)
}

/// `ln` of the sin-free magnitude bound `|z|^-k Gamma(1 + a k - d) / pi` of term k.
fn ln_term_bound(params: MLParams, ln_modulus: f64, k: usize) -> Option<f64> {
    let y = 1.0 + params.alpha * k as f64 - params.delta;
    if y <= 0.0 {
        return None;
    }
    Some(-(k as f64) * ln_modulus + ln_gamma(y) - PI.ln())
}

/// Index of the smallest term of the algebraic expansion at `|z| = modulus`,
/// capped where further terms no longer matter at double precision.
pub fn optimal_asymptotic_terms(params: MLParams, modulus: f64) -> usize {
    let ln_mod = modulus.ln();
    let mut best: Option<(usize, f64)> = None;
    let mut first: Option<f64> = None;
    for k in 1..=ASYMPTOTIC_MAX_TERMS {
        let Some(b) = ln_term_bound(params, ln_mod, k) else {
            continue;
        };
        let f = *first.get_or_insert(b);
        match best {
            Some((_, prev)) if b > prev => break,
            _ => best = Some((k, b)),
        }
        if b < f - 40.0 * std::f64::consts::LN_10 || b < -700.0 {
            break;
        }
    }
    best.map(|(k, _)| k).unwrap_or(1)
}

fn asymptotic_unchecked(params: MLParams, z: ComplexPoint, terms: usize) -> AsymptoticValue {
    let inv = z.inv();
    let mut p = inv;
    let mut alg = Complex64::new(0.0, 0.0);
    for k in 1..=terms {
        alg += algebraic_term(params, p, k);
        p *= inv;
    }
    let next1 = algebraic_term(params, p, terms + 1).norm();
    let next2 = algebraic_term(params, p * inv, terms + 2).norm();
    AsymptoticValue {
        value: alg + residue_terms(params, z),
        error_estimate: next1.max(next2),
        terms,
    }
}

/// Large-argument expansion: `-sum_{k=1}^{terms} z^-k / Gamma(d - a k)` plus the
/// residue contributions described in the module docs.
///
/// `z` must lie in `sector`; the exponentially growing region is rejected.
pub fn ml_asymptotic(
    params: MLParams,
    z: ComplexPoint,
    terms: usize,
    sector: SectorSpec,
) -> Result<AsymptoticValue> {
    check_point(z)?;
    if z.norm() == 0.0 {
        return domain("asymptotic expansion undefined at z = 0");
    }
    if !sector.contains(z) {
        return domain(format!(
            "arg z = {} outside the sector |arg z| >= {}",
            principal_arg(z),
            sector.mu()
        ));
    }
    Ok(asymptotic_unchecked(params, z, terms.max(1)))
}

/// `E_{alpha, delta}(z)` for `0 < alpha <= 2`.
///
/// Beyond the series region `z` must satisfy `|arg z| >= pi alpha / 2`, where
/// every residue term decays.
pub fn ml(params: MLParams, z: ComplexPoint) -> Result<ComplexPoint> {
    check_point(z)?;
    if params.alpha > 2.0 {
        return domain(format!("alpha = {} > 2 not supported", params.alpha));
    }
    if z.norm() == 0.0 {
        return Ok(Complex64::new(rgamma(params.delta), 0.0));
    }
    let rho = z.norm().powf(1.0 / params.alpha);
    let growing = principal_arg(z).abs() < PI * params.alpha / 2.0;

    let value = if rho <= SERIES_RHO || (growing && rho < ASYMPTOTIC_RHO) {
        series_core(params, z, 1e-32).0.value
    } else if growing {
        return domain(format!(
            "|z|^(1/alpha) = {rho:.3e} with |arg z| < pi alpha/2: exponentially growing branch"
        ));
    } else {
        let terms = optimal_asymptotic_terms(params, z.norm());
        let asym = asymptotic_unchecked(params, z, terms);
        if rho >= ASYMPTOTIC_RHO {
            asym.value
        } else {
            let (ser, _) = series_core(params, z, 1e-32);
            if ser.error_bound < asym.error_estimate {
                ser.value
            } else {
                asym.value
            }
        }
    };
    if !(value.re.is_finite() && value.im.is_finite()) {
        return domain(format!(
            "E_{{{},{}}}({z}) overflows",
            params.alpha, params.delta
        ));
    }
    Ok(value)
}

fn check_time_and_spectrum(t: f64, s: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite() && s >= 0.0 && s.is_finite()) {
        return domain(format!(
            "need finite t >= 0 and s >= 0, got t = {t}, s = {s}"
        ));
    }
    Ok(())
}

/// Heat type propagator `E_beta(-t^beta s)`, `0 < beta <= 1`.
pub fn propagator_heat(beta: f64, t: f64, s: f64) -> Result<f64> {
    if !(beta > 0.0 && beta <= 1.0) {
        return domain(format!("heat propagator needs 0 < beta <= 1, got {beta}"));
    }
    check_time_and_spectrum(t, s)?;
    let z = Complex64::new(-t.powf(beta) * s, 0.0);
    Ok(ml(MLParams::single(beta)?, z)?.re)
}

/// Wave type propagator pair `(E_beta(-t^beta s), t E_{beta,2}(-t^beta s))`,
/// the multipliers of the initial position and velocity; `1 < beta < 2`.
pub fn propagator_wave_pair(beta: f64, t: f64, s: f64) -> Result<(f64, f64)> {
    if !(beta > 1.0 && beta < 2.0) {
        return domain(format!("wave propagator needs 1 < beta < 2, got {beta}"));
    }
    check_time_and_spectrum(t, s)?;
    let z = Complex64::new(-t.powf(beta) * s, 0.0);
    let e1 = ml(MLParams::new(beta, 1.0)?, z)?.re;
    let e2 = ml(MLParams::new(beta, 2.0)?, z)?.re;
    Ok((e1, t * e2))
}

/// Schrodinger type propagator `E_beta(i t^beta s)`, `0 < beta < 1`.
pub fn propagator_schrodinger(beta: f64, t: f64, s: f64) -> Result<ComplexPoint> {
    if !(beta > 0.0 && beta < 1.0) {
        return domain(format!(
            "Schrodinger propagator needs 0 < beta < 1, got {beta}"
        ));
    }
    check_time_and_spectrum(t, s)?;
    let z = Complex64::new(0.0, t.powf(beta) * s);
    ml(MLParams::single(beta)?, z)
}

/// Empirical `sup (1 + |z|) |E(z)|` over a log-radial by angular grid covering
/// `mu <= arg z <= pi`, `0 <= |z| <= radius` (the lower half follows by
/// conjugate symmetry for real parameters). Every local maximum along a ray is
/// refined by golden-section search, so slow oscillations are not undersampled.
pub fn envelope_constant(
    params: MLParams,
    sector: SectorSpec,
    radius: f64,
    samples: usize,
) -> Result<f64> {
    if !(radius > 0.0 && radius.is_finite()) {
        return domain(format!("radius must be positive, got {radius}"));
    }
    if samples < 1000 {
        return domain(format!("need at least 1000 samples, got {samples}"));
    }
    let angles: Vec<f64> = if sector.mu() >= PI {
        vec![PI]
    } else {
        let n = ((samples as f64).sqrt() / 4.0).round().clamp(2.0, 64.0) as usize;
        (0..n)
            .map(|i| sector.mu() + (PI - sector.mu()) * i as f64 / (n - 1) as f64)
            .collect()
    };
    let n_r = (samples / angles.len()).max(3);
    let r_min = 1e-3f64.min(radius);
    let ratio = (radius / r_min).ln();
    let radii: Vec<f64> = (0..n_r)
        .map(|i| r_min * (ratio * i as f64 / (n_r - 1) as f64).exp())
        .collect();
    let mut best: f64 = rgamma(params.delta).abs();
    for &th in &angles {
        let weighted = |r: f64| -> Result<f64> {
            Ok((1.0 + r) * ml(params, Complex64::from_polar(r, th))?.norm())
        };
        let vals = radii
            .iter()
            .map(|&r| weighted(r))
            .collect::<Result<Vec<_>>>()?;
        best = vals.iter().copied().fold(best, f64::max);
        for i in 1..n_r - 1 {
            if vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1] {
                best = best.max(golden_section_max(&weighted, radii[i - 1], radii[i + 1])?);
            }
        }
    }
    Ok(best)
}

/// Maximum of a unimodal `f` on `[a, b]`.
fn golden_section_max(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64) -> Result<f64> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (a, b);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..60 {
        if b - a <= 1e-12 * b {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    Ok(fc.max(fd))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exponential_and_shifted_exponential() {
        let e = ml_series(MLParams::new(1.0, 1.0).unwrap(), c(1.0, 0.0), 1e-12).unwrap();
        assert!((e.value.re - std::f64::consts::E).abs() < 1e-14);
        let e2 = ml_series(MLParams::new(1.0, 2.0).unwrap(), c(1.0, 0.0), 1e-12).unwrap();
        assert!((e2.value.re - (std::f64::consts::E - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn half_order_at_minus_one() {
        // e * erfc(1), 40-digit mpmath
        let v = ml_series(MLParams::single(0.5).unwrap(), c(-1.0, 0.0), 1e-12).unwrap();
        assert!((v.value.re - 0.427_583_576_155_807_004_4).abs() < 1e-15);
    }

    #[test]
    fn series_reports_unreachable_tolerance() {
        // a = 0.1 at |z| = 2 puts the largest term near exp(1000)
        let err = ml_series(MLParams::single(0.1).unwrap(), c(-2.0, 0.0), 1e-12);
        assert!(matches!(err, Err(Error::Accuracy { .. })), "{err:?}");
    }

    #[test]
    fn asymptotic_leading_term() {
        let p = MLParams::single(0.5).unwrap();
        let s = SectorSpec::midpoint(0.5).unwrap();
        let a = ml_asymptotic(p, c(-1e4, 0.0), 3, s).unwrap();
        let lead = 1e-4 / PI.sqrt();
        assert!((a.value.re - lead).abs() < 1e-11);
    }

    #[test]
    fn asymptotic_rejects_points_outside_sector() {
        let p = MLParams::single(0.5).unwrap();
        let s = SectorSpec::midpoint(0.5).unwrap();
        assert!(ml_asymptotic(p, c(1e4, 0.0), 3, s).is_err());
        assert!(ml(p, c(1e4, 0.0)).is_err());
    }

    #[test]
    fn sector_validation() {
        assert!(SectorSpec::new(1.0, PI / 2.0).is_err());
        assert!(SectorSpec::new(1.0, 0.6 * PI).is_ok());
        assert!(SectorSpec::midpoint(2.0).is_err());
        let m = SectorSpec::midpoint(1.0).unwrap();
        assert!((m.mu() - 0.75 * PI).abs() < 1e-15);
    }

    #[test]
    fn cosine_zero_and_exponential_switch() {
        let v = ml(MLParams::new(2.0, 1.0).unwrap(), c(-PI * PI / 4.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-10);
        let v = ml(MLParams::single(1.0).unwrap(), c(-30.0, 0.0)).unwrap();
        assert!((v.re - (-30f64).exp()).abs() < 1e-9 * (1.0 + (-30f64).exp()));
        // asymptotic branch is exact for the exponential
        let v = ml(MLParams::single(1.0).unwrap(), c(-60.0, 0.0)).unwrap();
        assert!(((v.re - (-60f64).exp()) / (-60f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn propagators_at_time_zero() {
        assert_eq!(propagator_heat(0.4, 0.0, 5.0).unwrap(), 1.0);
        assert_eq!(propagator_wave_pair(1.5, 0.0, 7.0).unwrap(), (1.0, 0.0));
        assert_eq!(propagator_schrodinger(0.5, 0.0, 3.0).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn propagator_ranges() {
        assert!(propagator_heat(1.2, 1.0, 1.0).is_err());
        assert!(propagator_wave_pair(1.0, 1.0, 1.0).is_err());
        assert!(propagator_schrodinger(1.0, 1.0, 1.0).is_err());
        assert!(propagator_heat(0.5, -1.0, 1.0).is_err());
    }

    #[test]
    fn heat_at_beta_one_is_exponential() {
        let v = propagator_heat(1.0, 2.0, 3.0).unwrap();
        assert!(((v - (-6f64).exp()) / (-6f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn envelope_of_exponential_is_one() {
        let p = MLParams::single(1.0).unwrap();
        let s = SectorSpec::negative_axis(1.0).unwrap();
        let c = envelope_constant(p, s, 100.0, 2000).unwrap();
        assert!((c - 1.0).abs() < 1e-12, "{c}");
    }
}
