//! Numerical kernels: Perron pair by power iteration, a cyclic Jacobi
//! eigensolver for small dense symmetric matrices, and isolation of the
//! greatest real root of a low-degree polynomial.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph_model::{BzpSequence, FopSequence, ThresholdGraph};
use crate::walks::{build_b, build_phi};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_POWER_ITERATIONS: usize = 1_000_000;
const MAX_JACOBI_SWEEPS: usize = 100;
const BRACKET_WIDTH: f64 = 1e-12;
const CERTIFICATE_RADIUS: f64 = 1e-10;
const RESIDUAL_TOL: f64 = 1e-9;
const MAX_DOUBLINGS: usize = 2048;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), n, "matrix rows must be square");
                r.iter().copied()
            })
            .collect();
        Self { n, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self {
            n,
            data: vec![0.0; n * n],
        };
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn adjacency(g: &ThresholdGraph) -> Self {
        let a = g.adjacency_matrix();
        let rows: Vec<Vec<f64>> = a
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(f64::from).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

/// Perron eigenpair of the adjacency matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronPair {
    pub rho: f64,
    /// Unit-norm positive eigenvector in adjacency-matrix vertex order.
    pub vector: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

fn normalise(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
    norm
}

/// Power iteration on `A + I` from the all-ones vector.
///
/// Stops once successive Rayleigh quotients differ by at most `tol` and the
/// residual `||(A+I)w - theta w||_inf` is at most `tol * theta`.
pub fn perron_pair(g: &ThresholdGraph, tol: f64) -> Result<PerronPair> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let n = g.n();
    let mut shifted = DenseMatrix::adjacency(g);
    for i in 0..n {
        shifted.set(i, i, 1.0);
    }
    let mut w = vec![1.0 / (n as f64).sqrt(); n];
    let mut previous = f64::NAN;
    let mut residual = f64::INFINITY;
    let mut theta = 0.0;
    for iteration in 1..=MAX_POWER_ITERATIONS {
        let mut y = shifted.mul_vec(&w);
        theta = w.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
        residual = y
            .iter()
            .zip(&w)
            .fold(0.0, |acc, (yi, wi)| f64::max(acc, (yi - theta * wi).abs()));
        let converged = (theta - previous).abs() <= tol && residual <= tol * theta;
        normalise(&mut y);
        w = y;
        if converged {
            return Ok(PerronPair {
                rho: theta - 1.0,
                vector: w,
                iterations: iteration,
                residual,
            });
        }
        previous = theta;
    }
    Err(Error::NotConverged {
        iterations: MAX_POWER_ITERATIONS,
        estimate: theta - 1.0,
        residual,
    })
}

pub fn spectral_radius(g: &ThresholdGraph, tol: f64) -> Result<f64> {
    perron_pair(g, tol).map(|p| p.rho)
}

pub fn perron_vector(g: &ThresholdGraph, tol: f64) -> Result<Vec<f64>> {
    perron_pair(g, tol).map(|p| p.vector)
}

/// Eigenvalues sorted nonincreasing, with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    pub fn reconstruct(&self) -> DenseMatrix {
        let n = self.values.len();
        let mut out = DenseMatrix {
            n,
            data: vec![0.0; n * n],
        };
        for (lambda, x) in self.values.iter().zip(&self.vectors) {
            for i in 0..n {
                for j in 0..n {
                    out.data[i * n + j] += lambda * x[i] * x[j];
                }
            }
        }
        out
    }

    pub fn reconstruction_error(&self, m: &DenseMatrix) -> f64 {
        let r = self.reconstruct();
        r.data
            .iter()
            .zip(&m.data)
            .fold(0.0, |acc, (a, b)| f64::max(acc, (a - b).abs()))
    }

    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, x) in self.vectors.iter().enumerate() {
            for (j, y) in self.vectors.iter().enumerate() {
                let d: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((d - target).abs());
            }
        }
        worst
    }
}

/// Cyclic-sweep Jacobi rotations until the off-diagonal mass drops below
/// `tol` times the Frobenius norm.
pub fn symmetric_eigen(m: &DenseMatrix, tol: f64) -> Result<EigenDecomposition> {
    let n = m.order();
    let scale = m.max_abs().max(1.0);
    for i in 0..n {
        for j in 0..i {
            let delta = (m.get(i, j) - m.get(j, i)).abs();
            if delta > 1e-12 * scale {
                return Err(Error::NonSymmetric {
                    row: i,
                    col: j,
                    delta,
                });
            }
        }
    }
    let mut a = m.clone();
    let mut v = DenseMatrix::identity(n);
    let frobenius = a.data.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = tol.max(f64::EPSILON) * frobenius;

    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).powi(2))
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cos = 1.0 / (t * t + 1.0).sqrt();
                let sin = t * cos;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, cos * akp - sin * akq);
                    a.set(k, q, sin * akp + cos * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, cos * apk - sin * aqk);
                    a.set(q, k, sin * apk + cos * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, cos * vkp - sin * vkq);
                    v.set(k, q, sin * vkp + cos * vkq);
                }
            }
        }
    }

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|j| (a.get(j, j), (0..n).map(|i| v.get(i, j)).collect()))
        .collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let (values, vectors) = pairs.into_iter().unzip();
    Ok(EigenDecomposition { values, vectors })
}

/// `F_p = sum_i (w . x_i)^2 lambda_i^(p-1)` over the eigenpairs of `B`.
pub fn fp_spectral_b(b: &BzpSequence, p: usize) -> Result<f64> {
    if p == 0 {
        return Err(Error::Precondition(
            "the B-matrix form only holds for p >= 1".into(),
        ));
    }
    let bm = DenseMatrix::from_rows(&build_b(b)?.to_f64_rows());
    let eig = symmetric_eigen(&bm, 1e-15)?;
    let w: Vec<f64> = b.parts().iter().map(|&v| v as f64).collect();
    Ok(spectral_sum(&eig, &w, p - 1))
}

/// `F_p = sum_i (1 . x_i)^2 lambda_i^p` over the eigenpairs of `Phi`.
pub fn fp_spectral_phi(f: &FopSequence, p: usize) -> Result<f64> {
    let phi = DenseMatrix::from_rows(&build_phi(f).to_f64_rows());
    let eig = symmetric_eigen(&phi, 1e-15)?;
    let ones = vec![1.0; f.c()];
    Ok(spectral_sum(&eig, &ones, p))
}

fn spectral_sum(eig: &EigenDecomposition, w: &[f64], power: usize) -> f64 {
    eig.values
        .iter()
        .zip(&eig.vectors)
        .map(|(lambda, x)| {
            let proj: f64 = w.iter().zip(x).map(|(a, b)| a * b).sum();
            proj * proj * lambda.powi(power as i32)
        })
        .sum()
}

/// Real polynomial, coefficients in ascending order, positive leading
/// coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Precondition("coefficients must be finite".into()));
        }
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        match coeffs.last() {
            Some(&lead) if lead > 0.0 => Ok(Self { coeffs }),
            _ => Err(Error::Precondition(
                "leading coefficient must be positive".into(),
            )),
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `sum |a_i| |x|^i`, the natural yardstick for a residual at `x`.
    pub fn scale_at(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x.abs() + c.abs())
    }

    pub fn derivative(&self) -> Option<Self> {
        if self.degree() == 0 {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as f64)
            .collect();
        Some(Self { coeffs })
    }

    /// Every real root lies strictly inside `(-R, R)`.
    pub fn cauchy_bound(&self) -> f64 {
        let lead = *self.coeffs.last().expect("nonempty");
        1.0 + self.coeffs[..self.degree()]
            .iter()
            .fold(0.0, |acc, c| f64::max(acc, (c / lead).abs()))
    }

    /// Real roots at which the polynomial changes sign, ascending.
    pub fn sign_change_roots(&self) -> Vec<f64> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let r = self.cauchy_bound();
        let mut points = vec![-r];
        if let Some(d) = self.derivative() {
            points.extend(d.sign_change_roots());
        }
        points.push(r);
        let mut roots = Vec::new();
        for w in points.windows(2) {
            if let Some(x) = bisect(self, w[0], w[1], 0.0) {
                roots.push(x);
            }
        }
        roots
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 && !(first && i == 0) {
                continue;
            }
            let sign = if c < 0.0 { "-" } else { "+" };
            if first {
                if c < 0.0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (i, mag == 1.0) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Bisects a strict sign change on `[lo, hi]`; `None` when there is none.
/// `width = 0.0` runs to full floating-point resolution.
fn bisect(p: &Polynomial, mut lo: f64, mut hi: f64, width: f64) -> Option<f64> {
    let mut plo = p.eval(lo);
    let phi = p.eval(hi);
    if plo == 0.0 {
        return Some(lo);
    }
    if phi == 0.0 {
        return Some(hi);
    }
    if plo.signum() == phi.signum() {
        return None;
    }
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let pm = p.eval(mid);
        if pm == 0.0 {
            return Some(mid);
        }
        if pm.signum() == plo.signum() {
            lo = mid;
            plo = pm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Greatest real root together with its sign-change certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    /// `|P(value)|`
    pub residual: f64,
    /// `sum |a_i| |value|^i`
    pub scale: f64,
    /// `P(value - 1e-10)`
    pub below: f64,
    /// `P(value + 1e-10)`
    pub above: f64,
}

impl RealRoot {
    pub fn is_certified(&self) -> bool {
        self.below < 0.0 && self.above > 0.0 && self.residual <= RESIDUAL_TOL * self.scale
    }
}

/// Greatest real root of `p`.
///
/// The upper bracket end is found by doubling upward from `bracket_hint`
/// until it clears the Cauchy bound. The greatest root then sits in the
/// rightmost monotone piece (between consecutive critical points) that shows
/// a sign change, and is bisected to a `1e-12` bracket.
pub fn greatest_real_root(p: &Polynomial, bracket_hint: f64) -> Result<RealRoot> {
    let no_root = || Error::NoSignChange(p.to_string());
    if p.degree() == 0 {
        return Err(no_root());
    }
    let bound = p.cauchy_bound();
    let mut hi = if bracket_hint.is_finite() {
        bracket_hint.abs().max(1.0)
    } else {
        1.0
    };
    let mut doublings = 0;
    while hi < bound {
        hi *= 2.0;
        doublings += 1;
        if doublings > MAX_DOUBLINGS {
            return Err(no_root());
        }
    }
    let mut points = vec![-hi];
    if let Some(d) = p.derivative() {
        points.extend(d.sign_change_roots());
    }
    points.push(hi);

    for w in points.windows(2).rev() {
        let (lo, up) = (w[0], w[1]);
        // scanning from the right, the first crossing goes from negative to
        // positive; roots of even multiplicity are never reported
        if p.eval(lo) < 0.0 && p.eval(up) > 0.0 {
            let value = bisect(p, lo, up, BRACKET_WIDTH).expect("sign change");
            let root = RealRoot {
                value,
                residual: p.eval(value).abs(),
                scale: p.scale_at(value),
                below: p.eval(value - CERTIFICATE_RADIUS),
                above: p.eval(value + CERTIFICATE_RADIUS),
            };
            return if root.is_certified() {
                Ok(root)
            } else {
                Err(no_root())
            };
        }
    }
    Err(no_root())
}
