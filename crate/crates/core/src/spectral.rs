//! Positive operators reduced to their spectral content.
//!
//! A [`SpectralProfile`] is either an explicit eigenvalue multiset or an
//! analytic counting function `N(s)`, the trace of the spectral projection
//! onto `(0, s)`. The catalog rows map the operators of the decay table to
//! their growth exponents.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// Spectrum of a positive operator, or its counting function.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralProfile {
    /// Finite eigenvalue multiset, sorted, all `>= 0`.
    Discrete { eigenvalues: Vec<f64> },
    /// `N(s) = coeff * s^lambda`.
    PowerLaw { lambda: f64, coeff: f64 },
    /// Vladimirov operator of order `mu` on the `rho`-adic numbers:
    /// `N(s)` is the Haar volume of the ball `|xi|^mu <= s`.
    Vladimirov { rho: u32, mu: f64 },
    /// Laplacian on the flat torus of period `2 pi`: eigenvalues `|k|^2` for
    /// integer vectors with every component in `[-cutoff, cutoff]`.
    TorusLattice { dim: u8, cutoff: u32 },
}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Largest integer `k >= 0` with `k^2 < x` (`None` if `x <= 0`).
fn floor_sqrt_strict(x: f64) -> Option<u64> {
    if x <= 0.0 {
        return None;
    }
    let mut k = x.sqrt().floor() as u64;
    while (k * k) as f64 >= x && k > 0 {
        k -= 1;
    }
    while (((k + 1) * (k + 1)) as f64) < x {
        k += 1;
    }
    Some(k)
}

/// Largest integer `k >= 0` with `k^2 <= x` (`None` if `x < 0`).
fn floor_sqrt(x: f64) -> Option<u64> {
    if x < 0.0 {
        return None;
    }
    let mut k = x.sqrt().floor() as u64;
    while (k * k) as f64 > x {
        k -= 1;
    }
    while (((k + 1) * (k + 1)) as f64) <= x {
        k += 1;
    }
    Some(k)
}

impl SpectralProfile {
    /// Sorts the eigenvalues; rejects negative or non-finite entries.
    pub fn discrete(mut eigenvalues: Vec<f64>) -> Result<Self> {
        if let Some(bad) = eigenvalues.iter().find(|v| !(**v >= 0.0 && v.is_finite())) {
            return domain(format!(
                "eigenvalue {bad} is not a finite nonnegative number"
            ));
        }
        eigenvalues.sort_by(f64::total_cmp);
        Ok(Self::Discrete { eigenvalues })
    }

    pub fn power_law(lambda: f64, coeff: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite() && coeff > 0.0 && coeff.is_finite()) {
            return domain(format!(
                "power law needs lambda, coeff > 0, got {lambda}, {coeff}"
            ));
        }
        Ok(Self::PowerLaw { lambda, coeff })
    }

    pub fn vladimirov(rho: u32, mu: f64) -> Result<Self> {
        if !is_prime(rho) {
            return domain(format!("rho = {rho} is not prime"));
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return domain(format!("Vladimirov order must be positive, got {mu}"));
        }
        Ok(Self::Vladimirov { rho, mu })
    }

    pub fn torus(dim: u8, cutoff: u32) -> Result<Self> {
        if !(dim == 1 || dim == 2) {
            return domain(format!("torus dimension must be 1 or 2, got {dim}"));
        }
        if cutoff == 0 {
            return domain("torus cutoff must be positive");
        }
        Ok(Self::TorusLattice { dim, cutoff })
    }

    /// `N(s)`: eigenvalues strictly inside `(0, s)` for the discrete variants,
    /// the analytic volume otherwise.
    pub fn count(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0) {
            return domain(format!("counting function needs s >= 0, got {s}"));
        }
        Ok(match self {
            Self::Discrete { eigenvalues } => {
                let lo = eigenvalues.partition_point(|&v| v <= 0.0);
                let hi = eigenvalues.partition_point(|&v| v < s);
                hi.saturating_sub(lo) as f64
            }
            Self::PowerLaw { lambda, coeff } => {
                if s == 0.0 {
                    0.0
                } else {
                    coeff * s.powf(*lambda)
                }
            }
            Self::Vladimirov { rho, mu } => vladimirov_volume(*rho, *mu, s),
            Self::TorusLattice { dim, cutoff } => lattice_count(*dim, *cutoff, s, false) as f64,
        })
    }

    /// Right limit `N(s+)`: the discrete variants also count eigenvalues equal
    /// to `s`. The other variants are right-continuous already.
    pub fn count_through(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0) {
            return domain(format!("counting function needs s >= 0, got {s}"));
        }
        Ok(match self {
            Self::Discrete { eigenvalues } => {
                let lo = eigenvalues.partition_point(|&v| v <= 0.0);
                let hi = eigenvalues.partition_point(|&v| v <= s);
                hi.saturating_sub(lo) as f64
            }
            Self::TorusLattice { dim, cutoff } => lattice_count(*dim, *cutoff, s, true) as f64,
            _ => self.count(s)?,
        })
    }

    /// Points in `[v_min, v_max]` where `N` jumps, increasing.
    pub fn jump_points(&self, v_min: f64, v_max: f64) -> Vec<f64> {
        match self {
            Self::Discrete { eigenvalues } => {
                let mut out: Vec<f64> = eigenvalues
                    .iter()
                    .copied()
                    .filter(|&v| v > 0.0 && v >= v_min && v <= v_max)
                    .collect();
                out.dedup();
                out
            }
            Self::PowerLaw { .. } => Vec::new(),
            Self::Vladimirov { rho, mu } => {
                let r = *rho as f64;
                let lo = (v_min.max(f64::MIN_POSITIVE).ln() / (mu * r.ln())).ceil() as i32;
                let hi = (v_max.ln() / (mu * r.ln())).floor() as i32;
                (lo - 1..=hi + 1)
                    .map(|j| r.powf(mu * j as f64))
                    .filter(|&v| v >= v_min && v <= v_max)
                    .collect()
            }
            Self::TorusLattice { dim, cutoff } => {
                let c = *cutoff as u64;
                let mut vals: Vec<u64> = match dim {
                    1 => (1..=c).map(|k| k * k).collect(),
                    _ => {
                        let mut v = Vec::new();
                        for a in 0..=c {
                            for b in a..=c {
                                if a + b > 0 {
                                    v.push(a * a + b * b);
                                }
                            }
                        }
                        v
                    }
                };
                vals.sort_unstable();
                vals.dedup();
                vals.into_iter()
                    .map(|v| v as f64)
                    .filter(|&v| v >= v_min && v <= v_max)
                    .collect()
            }
        }
    }

    /// One-line CSV form `variant,param,...` (eigenvalues separated by `;`).
    pub fn to_csv(&self) -> String {
        match self {
            Self::Discrete { eigenvalues } => {
                let vals: Vec<String> = eigenvalues.iter().map(|v| format!("{v:?}")).collect();
                format!("discrete,{}", vals.join(";"))
            }
            Self::PowerLaw { lambda, coeff } => format!("power_law,{lambda:?},{coeff:?}"),
            Self::Vladimirov { rho, mu } => format!("vladimirov,{rho},{mu:?}"),
            Self::TorusLattice { dim, cutoff } => format!("torus,{dim},{cutoff}"),
        }
    }

    /// Inverse of [`to_csv`](Self::to_csv).
    pub fn from_csv(line: &str) -> Result<Self> {
        let mut fields = line.trim().split(',').map(str::trim);
        let variant = fields.next().unwrap_or_default();
        let rest: Vec<&str> = fields.collect();
        let num = |i: usize| -> Result<f64> {
            rest.get(i)
                .ok_or_else(|| Error::Parse(format!("missing field {i} in '{line}'")))?
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("'{line}': {e}")))
        };
        let int = |i: usize| -> Result<u32> {
            rest.get(i)
                .ok_or_else(|| Error::Parse(format!("missing field {i} in '{line}'")))?
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("'{line}': {e}")))
        };
        let arity = |n: usize| -> Result<()> {
            if rest.len() == n {
                Ok(())
            } else {
                Err(Error::Parse(format!("'{line}': expected {n} parameters")))
            }
        };
        match variant {
            "discrete" => {
                arity(1)?;
                let vals = if rest[0].is_empty() {
                    Vec::new()
                } else {
                    rest[0]
                        .split(';')
                        .map(|v| v.trim().parse::<f64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|e| Error::Parse(format!("'{line}': {e}")))?
                };
                Self::discrete(vals)
            }
            "power_law" => {
                arity(2)?;
                Self::power_law(num(0)?, num(1)?)
            }
            "vladimirov" => {
                arity(2)?;
                Self::vladimirov(int(0)?, num(1)?)
            }
            "torus" => {
                arity(2)?;
                let dim = u8::try_from(int(0)?).map_err(|e| Error::Parse(e.to_string()))?;
                Self::torus(dim, int(1)?)
            }
            other => Err(Error::Parse(format!("unknown profile variant '{other}'"))),
        }
    }
}

/// `rho^floor(log_rho s^(1/mu))`: the Haar volume of the closed ball of radius
/// `s^(1/mu)`, whose radius is rounded down to a power of `rho`.
fn vladimirov_volume(rho: u32, mu: f64, s: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    if s.is_infinite() {
        return f64::INFINITY;
    }
    let r = rho as f64;
    let ln_s = s.ln();
    let mut j = (ln_s / (mu * r.ln())).floor();
    // the log quotient can land a hair below an exact power
    while r.powf(mu * (j + 1.0)) <= s {
        j += 1.0;
    }
    while r.powf(mu * j) > s {
        j -= 1.0;
    }
    r.powf(j)
}

/// Lattice points with `0 < |k|^2 < s` (or `<= s` when `closed`).
fn lattice_count(dim: u8, cutoff: u32, s: f64, closed: bool) -> u64 {
    let c = cutoff as u64;
    let row = |x: f64| -> Option<u64> {
        if closed {
            floor_sqrt(x)
        } else {
            floor_sqrt_strict(x)
        }
    };
    match dim {
        1 => row(s).map_or(0, |m| 2 * m.min(c)),
        _ => {
            let Some(k1_max) = row(s) else { return 0 };
            let k1_max = k1_max.min(c);
            let mut total = 0u64;
            for k1 in 0..=k1_max {
                let rem = s - (k1 * k1) as f64;
                let Some(m) = row(rem) else { continue };
                let line = 2 * m.min(c) + 1;
                total += if k1 == 0 { line } else { 2 * line };
            }
            // the origin is a zero mode
            total.saturating_sub(1)
        }
    }
}

/// Free-function form of [`SpectralProfile::count`].
pub fn counting_function(profile: &SpectralProfile, s: f64) -> Result<f64> {
    profile.count(s)
}

/// Least-squares slope of `ln N(s)` against `ln s` over `points` log-spaced
/// samples of `[s_min, s_max]`; samples with `N(s) = 0` are skipped.
pub fn exponent_fit(
    profile: &SpectralProfile,
    s_min: f64,
    s_max: f64,
    points: usize,
) -> Result<f64> {
    if !(s_min > 0.0 && s_min < s_max && s_max.is_finite()) {
        return domain(format!("need 0 < s_min < s_max, got [{s_min}, {s_max}]"));
    }
    if points < 10 {
        return domain(format!("need at least 10 points, got {points}"));
    }
    let ratio = (s_max / s_min).ln();
    let mut xs = Vec::with_capacity(points);
    let mut ys = Vec::with_capacity(points);
    for i in 0..points {
        let s = s_min * (ratio * i as f64 / (points - 1) as f64).exp();
        let n = profile.count(s)?;
        if n > 0.0 {
            xs.push(s.ln());
            ys.push(n.ln());
        }
    }
    if xs.len() < 2 {
        return Err(Error::OutOfRange(format!(
            "counting function vanishes on [{s_min}, {s_max}]"
        )));
    }
    Ok(least_squares_slope(&xs, &ys).0)
}

/// Slope and its standard error for `y ~ a + b x`.
pub(crate) fn least_squares_slope(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let stderr = if xs.len() > 2 {
        (rss / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    (slope, stderr)
}

/// Rows of the operator table: each operator's counting function grows like
/// `s^lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatalogRow {
    /// Laplacian on `R^n`: `n / 2`.
    Euclidean { n: u32 },
    /// Laplacian on a compact Lie group of dimension `q`: `q / 2`.
    Compact { q: u32 },
    /// Sub-Laplacian on the Heisenberg group `H^n`: `n + 1`.
    Heisenberg { n: u32 },
    /// Positive Rockland operator of homogeneous degree `nu` on a graded group
    /// of homogeneous dimension `q`: `q / nu`.
    Rockland { q: f64, nu: f64 },
    /// Sub-Laplacian on the Engel group: `3`.
    Engel,
    /// Sub-Laplacian on the Cartan group: `9 / 2`.
    Cartan,
    /// Positive subcoercive operator of order `m`, local dimension `q_star`:
    /// `q_star / m`.
    Subcoercive { q_star: f64, m: f64 },
    /// Vladimirov operator of order `mu` on the `rho`-adic numbers: `1 / mu`.
    Vladimirov { rho: u32, mu: f64 },
}

impl CatalogRow {
    /// The eight rows with the parameters used for the printed table.
    pub fn defaults() -> Vec<CatalogRow> {
        vec![
            CatalogRow::Euclidean { n: 1 },
            CatalogRow::Compact { q: 2 },
            CatalogRow::Heisenberg { n: 1 },
            CatalogRow::Rockland { q: 4.0, nu: 2.0 },
            CatalogRow::Engel,
            CatalogRow::Cartan,
            CatalogRow::Subcoercive {
                q_star: 3.0,
                m: 2.0,
            },
            CatalogRow::Vladimirov { rho: 2, mu: 1.0 },
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            CatalogRow::Euclidean { .. } => "euclidean",
            CatalogRow::Compact { .. } => "compact",
            CatalogRow::Heisenberg { .. } => "heisenberg",
            CatalogRow::Rockland { .. } => "rockland",
            CatalogRow::Engel => "engel",
            CatalogRow::Cartan => "cartan",
            CatalogRow::Subcoercive { .. } => "subcoercive",
            CatalogRow::Vladimirov { .. } => "vladimirov",
        }
    }

    /// Growth exponent `lambda` of `N(s)`.
    pub fn exponent(&self) -> f64 {
        match *self {
            CatalogRow::Euclidean { n } => n as f64 / 2.0,
            CatalogRow::Compact { q } => q as f64 / 2.0,
            CatalogRow::Heisenberg { n } => n as f64 + 1.0,
            CatalogRow::Rockland { q, nu } => q / nu,
            CatalogRow::Engel => 3.0,
            CatalogRow::Cartan => 4.5,
            CatalogRow::Subcoercive { q_star, m } => q_star / m,
            CatalogRow::Vladimirov { mu, .. } => 1.0 / mu,
        }
    }

    /// A computable profile whose counting function has the row's exponent,
    /// when one exists: the flat torus for the Laplacian rows in dimension
    /// 1 or 2, the exact step function for the Vladimirov row.
    pub fn lattice_profile(&self, cutoff: u32) -> Option<SpectralProfile> {
        match *self {
            CatalogRow::Euclidean { n } | CatalogRow::Compact { q: n } if (1..=2).contains(&n) => {
                SpectralProfile::torus(n as u8, cutoff).ok()
            }
            CatalogRow::Vladimirov { rho, mu } => SpectralProfile::vladimirov(rho, mu).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for CatalogRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogRow::Euclidean { n } => write!(f, "euclidean({n})"),
            CatalogRow::Compact { q } => write!(f, "compact({q})"),
            CatalogRow::Heisenberg { n } => write!(f, "heisenberg({n})"),
            CatalogRow::Rockland { q, nu } => write!(f, "rockland({q},{nu})"),
            CatalogRow::Engel => write!(f, "engel"),
            CatalogRow::Cartan => write!(f, "cartan"),
            CatalogRow::Subcoercive { q_star, m } => write!(f, "subcoercive({q_star},{m})"),
            CatalogRow::Vladimirov { rho, mu } => write!(f, "vladimirov({rho},{mu})"),
        }
    }
}

impl FromStr for CatalogRow {
    type Err = Error;

    /// Parses `name` or `name(a,b)`, e.g. `euclidean(3)`, `rockland(4,2)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let (name, args) = match s.split_once('(') {
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in '{s}'")))?;
                let args: Vec<&str> = inner.split(',').map(str::trim).collect();
                (name.trim(), args)
            }
            None => (s.as_str(), Vec::new()),
        };
        let want = |n: usize| -> Result<()> {
            if args.len() == n && args.iter().all(|a| !a.is_empty()) {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "'{name}' takes {n} argument(s), got '{s}'"
                )))
            }
        };
        let real = |i: usize| -> Result<f64> {
            let v: f64 = args[i]
                .parse()
                .map_err(|_| Error::Parse(format!("bad number '{}' in '{s}'", args[i])))?;
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Parse(format!("'{s}': parameters must be positive")))
            }
        };
        let count = |i: usize| -> Result<u32> {
            match args[i].parse::<u32>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(Error::Parse(format!("'{s}': expected a positive integer"))),
            }
        };
        let row = match name {
            "euclidean" => {
                want(1)?;
                CatalogRow::Euclidean { n: count(0)? }
            }
            "compact" => {
                want(1)?;
                CatalogRow::Compact { q: count(0)? }
            }
            "heisenberg" => {
                want(1)?;
                CatalogRow::Heisenberg { n: count(0)? }
            }
            "rockland" => {
                want(2)?;
                CatalogRow::Rockland {
                    q: real(0)?,
                    nu: real(1)?,
                }
            }
            "engel" => {
                want(0)?;
                CatalogRow::Engel
            }
            "cartan" => {
                want(0)?;
                CatalogRow::Cartan
            }
            "subcoercive" => {
                want(2)?;
                CatalogRow::Subcoercive {
                    q_star: real(0)?,
                    m: real(1)?,
                }
            }
            "vladimirov" => {
                want(2)?;
                let rho = count(0)?;
                if !is_prime(rho) {
                    return Err(Error::Parse(format!("'{s}': rho must be prime")));
                }
                CatalogRow::Vladimirov { rho, mu: real(1)? }
            }
            other => return Err(Error::Parse(format!("unknown operator '{other}'"))),
        };
        Ok(row)
    }
}

/// Power-law profile (coefficient 1) with the row's exponent; the Vladimirov
/// row keeps its exact step function.
pub fn catalog_profile(row: &CatalogRow) -> SpectralProfile {
    match *row {
        CatalogRow::Vladimirov { rho, mu } => SpectralProfile::Vladimirov { rho, mu },
        _ => SpectralProfile::PowerLaw {
            lambda: row.exponent(),
            coeff: 1.0,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_count_is_strict_and_skips_zero() {
        let p = SpectralProfile::discrete(vec![4.0, 0.0, 1.0, 1.0]).unwrap();
        assert_eq!(p.count(2.0).unwrap(), 2.0);
        assert_eq!(p.count(1.0).unwrap(), 0.0);
        assert_eq!(p.count_through(1.0).unwrap(), 2.0);
        assert_eq!(p.count(0.0).unwrap(), 0.0);
        assert!(p.count(-1.0).is_err());
        assert!(SpectralProfile::discrete(vec![-1.0]).is_err());
    }

    #[test]
    fn torus_counts() {
        let t1 = SpectralProfile::torus(1, 100).unwrap();
        assert_eq!(t1.count(10.0).unwrap(), 6.0);
        assert_eq!(t1.count(9.0).unwrap(), 4.0);
        assert_eq!(t1.count_through(9.0).unwrap(), 6.0);
        let t2 = SpectralProfile::torus(2, 100).unwrap();
        // |k|^2 in {1, 2, 4}: 4 + 4 + 4 points
        assert_eq!(t2.count(5.0).unwrap(), 12.0);
        assert_eq!(t2.count_through(5.0).unwrap(), 20.0);
        // the cutoff truncates the lattice
        let small = SpectralProfile::torus(2, 1).unwrap();
        assert_eq!(small.count(100.0).unwrap(), 8.0);
    }

    #[test]
    fn torus_brute_force_agreement() {
        let t2 = SpectralProfile::torus(2, 6).unwrap();
        for s in [0.5, 1.0, 2.0, 7.3, 25.0, 50.0, 73.0, 100.0] {
            let mut n = 0;
            for a in -6i64..=6 {
                for b in -6i64..=6 {
                    let v = (a * a + b * b) as f64;
                    if v > 0.0 && v < s {
                        n += 1;
                    }
                }
            }
            assert_eq!(t2.count(s).unwrap(), n as f64, "s = {s}");
        }
    }

    #[test]
    fn vladimirov_closed_ball_volume() {
        let v = SpectralProfile::vladimirov(2, 1.0).unwrap();
        assert_eq!(v.count(8.0).unwrap(), 8.0);
        assert_eq!(v.count(7.99).unwrap(), 4.0);
        assert_eq!(v.count(0.3).unwrap(), 0.25);
        let v3 = SpectralProfile::vladimirov(3, 2.0).unwrap();
        // radius sqrt(81) = 9 = 3^2
        assert_eq!(v3.count(81.0).unwrap(), 9.0);
        assert!(SpectralProfile::vladimirov(4, 1.0).is_err());
    }

    #[test]
    fn jump_points_cover_steps() {
        let v = SpectralProfile::vladimirov(2, 1.0).unwrap();
        assert_eq!(v.jump_points(1.0, 20.0), vec![1.0, 2.0, 4.0, 8.0, 16.0]);
        let t = SpectralProfile::torus(2, 2).unwrap();
        assert_eq!(t.jump_points(0.0, 10.0), vec![1.0, 2.0, 4.0, 5.0, 8.0]);
    }

    #[test]
    fn fits() {
        let p = SpectralProfile::power_law(2.5, 1.0).unwrap();
        assert!((exponent_fit(&p, 1.0, 1e3, 20).unwrap() - 2.5).abs() < 1e-12);
        let empty = SpectralProfile::discrete(vec![]).unwrap();
        assert!(exponent_fit(&empty, 1.0, 10.0, 10).is_err());
    }

    #[test]
    fn catalog_parsing_and_exponents() {
        let rows = [
            ("euclidean(2)", 1.0),
            ("engel", 3.0),
            ("cartan", 4.5),
            ("heisenberg(1)", 2.0),
            ("rockland(6, 3)", 2.0),
            ("subcoercive(5,2)", 2.5),
            ("vladimirov(2,0.5)", 2.0),
        ];
        for (text, lambda) in rows {
            let row: CatalogRow = text.parse().unwrap();
            assert_eq!(row.exponent(), lambda, "{text}");
            let back: CatalogRow = row.to_string().parse().unwrap();
            assert_eq!(back, row);
        }
        assert!("lie".parse::<CatalogRow>().is_err());
        assert!("engel(3)".parse::<CatalogRow>().is_err());
        assert!("vladimirov(6,1)".parse::<CatalogRow>().is_err());
    }

    #[test]
    fn csv_round_trip() {
        for p in [
            SpectralProfile::discrete(vec![0.0, 1.5, 3.0]).unwrap(),
            SpectralProfile::power_law(1.5, 2.0).unwrap(),
            SpectralProfile::vladimirov(5, 0.5).unwrap(),
            SpectralProfile::torus(2, 64).unwrap(),
        ] {
            assert_eq!(SpectralProfile::from_csv(&p.to_csv()).unwrap(), p);
        }
        assert!(SpectralProfile::from_csv("torus,3,4").is_err());
        assert!(SpectralProfile::from_csv("power_law,1").is_err());
    }
}
