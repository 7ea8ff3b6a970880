//! Floating-point layer: spectrum of the averaging operator and both sides of
//! the trace formula.
//!
//! The left side is `Z_T(t) = sum_j exp(lambda_j t)` over the eigenvalues of
//! the adjacency (averaging) operator. The right side is the contractible
//! integral over the Kesten-McKay-type density plus a sum over long geodesics
//! of `Lambda(gamma) q^(-l/2) I_l(2 sqrt(q) t)`, truncated with an explicit
//! tail bound. Corollary-style checks (geodesic counts recovered from
//! eigenvalues via Chebyshev polynomials, the polygon identity for `q = 1`,
//! and the even-test-sequence identity) live here as well.
//!
//! `t` is real throughout.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::census::{count_geodesic_paths, GeodesicClass};
use crate::graph::Graph;

const EIGEN_OFF_NORM: f64 = 1e-12;
const EIGEN_MAX_SWEEPS: usize = 100;
const QUADRATURE_REL_TOL: f64 = 1e-11;
const QUADRATURE_MAX_DOUBLINGS: usize = 22;
/// Rounding window for the spectral inversion of geodesic counts.
const INVERSION_WINDOW: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum SpectralError {
    /// Jacobi iteration did not reach the off-diagonal threshold.
    ConvergenceFailure,
    /// Simpson refinement did not stabilize within the doubling cap.
    QuadratureFailure,
    /// The inversion formula produced a value too far from an integer;
    /// eigenvalue accuracy is insufficient at this length.
    NotNearInteger { l: usize, value: f64 },
    /// A test sequence has support beyond the geodesic truncation.
    SupportExceedsTruncation { support: usize, l_trunc: usize },
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::ConvergenceFailure => {
                write!(f, "eigensolver failed to converge")
            }
            SpectralError::QuadratureFailure => {
                write!(f, "quadrature refinement cap reached")
            }
            SpectralError::NotNearInteger { l, value } => {
                write!(f, "inversion at l = {l} gave {value}, not near an integer")
            }
            SpectralError::SupportExceedsTruncation { support, l_trunc } => write!(
                f,
                "test sequence support {support} exceeds truncation {l_trunc}"
            ),
        }
    }
}

impl core::error::Error for SpectralError {}

/// Sorted eigenvalues of the averaging operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending; the largest is `q + 1`.
    pub eigenvalues: Vec<f64>,
    pub q: usize,
    pub vertex_count: usize,
}

/// One evaluation of the trace formula at a point `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceReport {
    pub t: f64,
    /// Spectral side: `sum_j exp(lambda_j t)`.
    pub lhs: f64,
    pub contractible_term: f64,
    pub geodesic_sum: f64,
    pub truncation_length: usize,
    /// Crude explicit majorant of the dropped geodesic tail.
    pub tail_bound: f64,
    pub residual: f64,
}

impl TraceReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.residual <= tolerance + self.tail_bound
    }
}

/// Finite-support even test sequence: `values[n] = g(n)`, `g(-n) = g(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TestSequence {
    values: Vec<f64>,
}

impl TestSequence {
    pub fn new(values: Vec<f64>) -> TestSequence {
        TestSequence { values }
    }

    /// The indicator of `|n| = l`.
    pub fn indicator(l: usize) -> TestSequence {
        let mut values = alloc::vec![0.0; l + 1];
        values[l] = 1.0;
        TestSequence { values }
    }

    pub fn get(&self, n: usize) -> f64 {
        self.values.get(n).copied().unwrap_or(0.0)
    }

    /// Largest index with a nonzero value, if any.
    pub fn support_max(&self) -> Option<usize> {
        self.values.iter().rposition(|&v| v != 0.0)
    }
}

/// Density table on a grid strictly inside `(-2 sqrt q, 2 sqrt q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityTable {
    pub grid: Vec<f64>,
    pub rho_con: Vec<f64>,
    /// Contractible density plus the Chebyshev geodesic terms up to the
    /// truncation; a truncation of a distributional limit, not a pointwise
    /// approximation of the true density.
    pub rho_total: Vec<f64>,
}

fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>, off_norm_tol: f64) -> Result<Vec<f64>, SpectralError> {
    let n = a.len();
    if n == 1 {
        return Ok(alloc::vec![a[0][0]]);
    }
    for _ in 0..EIGEN_MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if libm::sqrt(2.0 * off) < off_norm_tol {
            let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
            eigenvalues.sort_by(|x, y| x.partial_cmp(y).unwrap());
            return Ok(eigenvalues);
        }
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if libm::fabs(apq) < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = akp - s * (akq + tau * akp);
                    a[p][k] = a[k][p];
                    a[k][q] = akq + s * (akp - tau * akq);
                    a[q][k] = a[k][q];
                }
            }
        }
    }
    Err(SpectralError::ConvergenceFailure)
}

/// Eigenvalues of the averaging operator by cyclic Jacobi iteration.
pub fn spectrum(g: &Graph) -> Result<Spectrum, SpectralError> {
    spectrum_with_tolerance(g, EIGEN_OFF_NORM)
}

/// Same, but stopping the Jacobi sweeps at an explicit off-diagonal norm.
/// Loose tolerances propagate into the inversion formula and surface there as
/// `NotNearInteger`.
pub fn spectrum_with_tolerance(g: &Graph, off_norm_tol: f64) -> Result<Spectrum, SpectralError> {
    let n = g.vertex_count();
    let mut a = alloc::vec![alloc::vec![0.0; n]; n];
    for &(u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    Ok(Spectrum {
        eigenvalues: jacobi_eigenvalues(a, off_norm_tol)?,
        q: g.q(),
        vertex_count: n,
    })
}

/// `Z_T(t) = sum_j exp(lambda_j t)`, the spectral side of the trace formula.
pub fn z_t_spectral(sp: &Spectrum, t: f64) -> f64 {
    sp.eigenvalues.iter().map(|&l| libm::exp(l * t)).sum()
}

/// Modified Bessel function of the first kind `I_l(x)` by direct series
/// summation, for `x >= 0` at desk scale.
pub fn bessel_i(l: usize, x: f64) -> f64 {
    let half = x / 2.0;
    // (x/2)^l / l!, built up factor by factor to dodge overflow.
    let mut term = 1.0;
    for i in 1..=l {
        term *= half / i as f64;
    }
    if term == 0.0 {
        return if l == 0 { 1.0 } else { 0.0 };
    }
    let mut sum = term;
    let mut m = 0usize;
    loop {
        m += 1;
        term *= half * half / (m as f64 * (l + m) as f64);
        sum += term;
        if term <= sum.abs() * 1e-16 || m > 1000 {
            return sum;
        }
    }
}

/// Chebyshev polynomial of the first kind `T_l(x)` by the three-term
/// recurrence; valid for all real `x`.
pub fn chebyshev_t(l: usize, x: f64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = x;
    for _ in 1..l {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, intervals: usize) -> f64 {
    let h = (b - a) / intervals as f64;
    let mut acc = f(a) + f(b);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

fn refine_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<f64, SpectralError> {
    let mut intervals = 32;
    let mut prev = simpson(f, a, b, intervals);
    for _ in 0..QUADRATURE_MAX_DOUBLINGS {
        intervals *= 2;
        let cur = simpson(f, a, b, intervals);
        if libm::fabs(cur - prev) < QUADRATURE_REL_TOL * libm::fabs(cur).max(1.0) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(SpectralError::QuadratureFailure)
}

/// `integral of f(s) sqrt(4q - s^2) / ((q+1)^2 - s^2) ds` over the spectral
/// band, after the substitution `s = 2 sqrt(q) cos(theta)` which removes the
/// endpoint square-root singularity:
/// `4q * integral over [0, pi] of f(2 sqrt(q) cos t) sin^2 t / ((q-1)^2 + 4q sin^2 t) dt`.
fn band_integral<F: Fn(f64) -> f64>(q: usize, f: F) -> Result<f64, SpectralError> {
    let qf = q as f64;
    let two_sqrt_q = 2.0 * libm::sqrt(qf);
    let value = if q == 1 {
        // (q-1)^2 vanishes: the integrand collapses to f(2 cos t) / 4.
        refine_simpson(&|theta: f64| f(2.0 * libm::cos(theta)) / 4.0, 0.0, PI)?
    } else {
        let qm1sq = (qf - 1.0) * (qf - 1.0);
        refine_simpson(
            &|theta: f64| {
                let sin = libm::sin(theta);
                f(two_sqrt_q * libm::cos(theta)) * sin * sin / (qm1sq + 4.0 * qf * sin * sin)
            },
            0.0,
            PI,
        )?
    };
    Ok(4.0 * qf * value)
}

/// Contribution of contractible paths:
/// `|V| (q+1)/(2 pi) * integral of exp(s t) sqrt(4q - s^2) / ((q+1)^2 - s^2) ds`.
pub fn contractible_term(q: usize, vertex_count: usize, t: f64) -> Result<f64, SpectralError> {
    let integral = band_integral(q, |s| libm::exp(s * t))?;
    Ok(vertex_count as f64 * (q as f64 + 1.0) / (2.0 * PI) * integral)
}

/// Pointwise contractible (Kesten-McKay-type) density at `s` strictly inside
/// the band.
pub fn rho_contractible(q: usize, vertex_count: usize, s: f64) -> f64 {
    let qf = q as f64;
    vertex_count as f64 * (qf + 1.0) / (2.0 * PI) * libm::sqrt(4.0 * qf - s * s)
        / ((qf + 1.0) * (qf + 1.0) - s * s)
}

/// `integral of s^power rho_con(s) ds` over the band; power 0 recovers the
/// vertex count, power 2 recovers `|V| (q+1)`.
pub fn rho_moment(q: usize, vertex_count: usize, power: u32) -> Result<f64, SpectralError> {
    let integral = band_integral(q, |s| libm::pow(s, power as f64))?;
    Ok(vertex_count as f64 * (q as f64 + 1.0) / (2.0 * PI) * integral)
}

/// Contribution of one geodesic class:
/// `Lambda(gamma) q^(-|gamma|/2) I_{|gamma|}(2 sqrt(q) t)`.
pub fn geodesic_term(gc: &GeodesicClass, q: usize, t: f64) -> f64 {
    let qf = q as f64;
    gc.lambda() as f64 * libm::pow(qf, -(gc.length() as f64) / 2.0)
        * bessel_i(gc.length(), 2.0 * libm::sqrt(qf) * t)
}

/// Majorant for the dropped geodesic tail: bounds `gp_l` by `(q+1)^l` and
/// `I_l(2 sqrt(q) t)` by `(sqrt(q) t)^l / l! * exp(q t^2 / (l+1))`.
fn tail_bound(q: usize, t: f64, l_trunc: usize) -> f64 {
    let t = libm::fabs(t);
    if t == 0.0 {
        return 0.0;
    }
    let base = (q as f64 + 1.0) * t;
    // ((q+1) t)^(l_trunc + 1) / (l_trunc + 1)!
    let mut term = 1.0;
    for i in 1..=(l_trunc + 1) {
        term *= base / i as f64;
    }
    let mut sum = 0.0;
    let mut l = l_trunc + 1;
    loop {
        sum += term * libm::exp(q as f64 * t * t / (l as f64 + 1.0));
        l += 1;
        term *= base / l as f64;
        if term < 1e-300 || term * libm::exp(q as f64 * t * t) < sum.abs() * 1e-18 {
            return sum;
        }
    }
}

/// Evaluates both sides of the trace formula at `t`, truncating the geodesic
/// sum at `l_trunc`.
pub fn verify_trace_formula(
    g: &Graph,
    t: f64,
    l_trunc: usize,
) -> Result<TraceReport, SpectralError> {
    let sp = spectrum(g)?;
    let lhs = z_t_spectral(&sp, t);
    let con = contractible_term(g.q(), g.vertex_count(), t)?;
    let gp = count_geodesic_paths(g, l_trunc);
    let qf = g.q() as f64;
    let x = 2.0 * libm::sqrt(qf) * t;
    let mut geodesic_sum = 0.0;
    for (l, count) in gp.iter().enumerate().skip(3) {
        let gp_l = count.to_f64().unwrap_or(f64::INFINITY);
        if gp_l != 0.0 {
            geodesic_sum += gp_l * libm::pow(qf, -(l as f64) / 2.0) * bessel_i(l, x);
        }
    }
    let tail = tail_bound(g.q(), t, l_trunc);
    Ok(TraceReport {
        t,
        lhs,
        contractible_term: con,
        geodesic_sum,
        truncation_length: l_trunc,
        tail_bound: tail,
        residual: libm::fabs(lhs - con - geodesic_sum),
    })
}

/// Recovers the number of geodesic paths of length `l` from the spectrum:
/// `2 q^(l/2) sum_j T_l(lambda_j / (2 sqrt q)) + [l even] (q-1) |V|`,
/// rounded to the nearest integer within a strict window.
pub fn gp_from_spectrum(sp: &Spectrum, l: usize) -> Result<BigInt, SpectralError> {
    let qf = sp.q as f64;
    let two_sqrt_q = 2.0 * libm::sqrt(qf);
    let cheb_sum: f64 = sp
        .eigenvalues
        .iter()
        .map(|&lam| chebyshev_t(l, lam / two_sqrt_q))
        .sum();
    let even = if l % 2 == 0 {
        (qf - 1.0) * sp.vertex_count as f64
    } else {
        0.0
    };
    let value = 2.0 * libm::pow(qf, l as f64 / 2.0) * cheb_sum + even;
    let rounded = libm::round(value);
    if libm::fabs(value - rounded) >= INVERSION_WINDOW * libm::fabs(value).max(1.0) {
        return Err(SpectralError::NotNearInteger { l, value });
    }
    Ok(BigInt::from(rounded as i128))
}

/// Contractible plus truncated Chebyshev density on a cosine-spaced grid
/// strictly inside the band.
pub fn density_table(
    g: &Graph,
    l_trunc: usize,
    grid_size: usize,
) -> Result<DensityTable, SpectralError> {
    let q = g.q();
    let n = g.vertex_count();
    let qf = q as f64;
    let two_sqrt_q = 2.0 * libm::sqrt(qf);
    let gp = count_geodesic_paths(g, l_trunc);
    let gp_f: Vec<f64> = gp.iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    let mut grid = Vec::with_capacity(grid_size);
    let mut rho_con = Vec::with_capacity(grid_size);
    let mut rho_total = Vec::with_capacity(grid_size);
    for i in 0..grid_size {
        // Ascending in s: theta descending from pi to 0.
        let theta = PI * (grid_size - i) as f64 / (grid_size + 1) as f64;
        let s = two_sqrt_q * libm::cos(theta);
        let con = rho_contractible(q, n, s);
        let kernel = 1.0 / (PI * libm::sqrt(4.0 * qf - s * s));
        let mut geo = 0.0;
        for (l, &gp_l) in gp_f.iter().enumerate().skip(3) {
            if gp_l != 0.0 {
                geo += gp_l * libm::pow(qf, -(l as f64) / 2.0) * chebyshev_t(l, s / two_sqrt_q);
            }
        }
        grid.push(s);
        rho_con.push(con);
        rho_total.push(con + geo * kernel);
    }
    Ok(DensityTable {
        grid,
        rho_con,
        rho_total,
    })
}

/// Residual of the polygon identity for cycles (`q = 1`):
/// `sum_j exp(2 t cos(2 pi j / L)) = L sum_r I_{|r| L}(2 t)` with the `r = 0`
/// term counted once and `|r| <= r_trunc`.
pub fn verify_polygon_identity(l_polygon: usize, t: f64, r_trunc: usize) -> f64 {
    let lf = l_polygon as f64;
    let lhs: f64 = (1..=l_polygon)
        .map(|j| libm::exp(2.0 * t * libm::cos(2.0 * PI * j as f64 / lf)))
        .sum();
    let mut rhs = bessel_i(0, 2.0 * t);
    for r in 1..=r_trunc {
        rhs += 2.0 * bessel_i(r * l_polygon, 2.0 * t);
    }
    libm::fabs(lhs - lf * rhs)
}

/// The contour (identity) term of the even-test-sequence identity, reduced to
/// Laurent coefficients: `|V| sum_m q^(-m) (g(2m) - g(2m+2))`.
///
/// The reduction: on `|z| = 1` the kernel expands as
/// `q (1 - z^2) / (q - z^2) = sum_m q^(-m) (z^{2m} - z^{2m+2})`, and the
/// contour integral of `g_hat(z) z^k dz/z` extracts the coefficient of
/// `z^{-k}` in `g_hat`, which is `g(k)`. For `q = 1` the sum telescopes to
/// `g(0)`.
pub fn ahumada_identity_term(q: usize, vertex_count: usize, ts: &TestSequence) -> f64 {
    let m_max = match ts.support_max() {
        Some(s) => s / 2 + 1,
        None => return 0.0,
    };
    let qf = q as f64;
    let mut acc = 0.0;
    for m in 0..=m_max {
        acc += libm::pow(qf, -(m as f64)) * (ts.get(2 * m) - ts.get(2 * m + 2));
    }
    vertex_count as f64 * acc
}

/// Residual of the even-test-sequence trace identity: spectral side minus
/// identity (contour) term minus geodesic side.
pub fn verify_ahumada(
    g: &Graph,
    ts: &TestSequence,
    l_trunc: usize,
) -> Result<f64, SpectralError> {
    let support = ts.support_max().unwrap_or(0);
    if support > l_trunc {
        return Err(SpectralError::SupportExceedsTruncation { support, l_trunc });
    }
    let sp = spectrum(g)?;
    let qf = g.q() as f64;
    let two_sqrt_q = 2.0 * libm::sqrt(qf);
    let mut lhs = 0.0;
    for &lam in &sp.eigenvalues {
        let mut acc = ts.get(0);
        for n in 1..=support {
            let gn = ts.get(n);
            if gn != 0.0 {
                acc += 2.0 * gn * chebyshev_t(n, lam / two_sqrt_q);
            }
        }
        lhs += acc;
    }
    let identity = ahumada_identity_term(g.q(), g.vertex_count(), ts);
    let gp = count_geodesic_paths(g, support.max(3));
    let mut geodesic = 0.0;
    for (l, count) in gp.iter().enumerate().skip(3) {
        let gn = ts.get(l);
        if gn != 0.0 {
            geodesic += count.to_f64().unwrap_or(0.0) * libm::pow(qf, -(l as f64) / 2.0) * gn;
        }
    }
    Ok(libm::fabs(lhs - identity - geodesic))
}
