//! Spectral-radius bounds for connected threshold graphs and the per-graph
//! report that checks them against the true spectral radius.
//!
//! All bounds apply to connected threshold graphs with `c >= 3` type-1
//! vertices, at least one type-0 vertex, `n >= 4` and `n - 1 < m < C(n,2)`.
//! Values are reported on the `rho` scale; the two cubic bounds are the
//! greatest real root of their cubic minus one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_model::{binomial2, ThresholdGraph};
use crate::spectral::{greatest_real_root, spectral_radius, Polynomial, DEFAULT_TOL};

/// Absolute slack used for every bound comparison.
pub const BOUND_TOL: f64 = 1e-9;

struct Params {
    n: usize,
    c: usize,
    z: usize,
    f1: u64,
    sum_b: u64,
    /// `d_c, ..., d_n`
    tail_degrees: Vec<u64>,
}

fn params(g: &ThresholdGraph) -> Result<Params> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (n, m, c, z) = (g.n(), g.m(), g.c(), g.z());
    if n < 4 {
        return Err(Error::Precondition(format!("needs n >= 4, got {n}")));
    }
    if c < 3 {
        return Err(Error::Precondition(format!("needs c >= 3, got {c}")));
    }
    if z == 0 {
        return Err(Error::Precondition("complete graphs are excluded".into()));
    }
    if m < n || m >= binomial2(n) {
        return Err(Error::Precondition(format!(
            "needs n - 1 < m < C(n,2), got m = {m}"
        )));
    }
    let bzp = g.to_bzp()?;
    let degrees = g.degree_sequence()?;
    Ok(Params {
        n,
        c,
        z,
        f1: bzp.sum_of_squares() as u64,
        sum_b: bzp.sum() as u64,
        tail_degrees: degrees[c - 1..].iter().map(|&d| d as u64).collect(),
    })
}

/// `x^3 - (c+1)x^2 + cx - F_1`.
pub fn lower_cubic_polynomial(g: &ThresholdGraph) -> Result<Polynomial> {
    let p = params(g)?;
    let c = p.c as f64;
    Polynomial::new(vec![-(p.f1 as f64), c, -(c + 1.0), 1.0])
}

/// `x^3 - (c+1)x^2 + (c - S_b)x + (c S_b - F_1)` with `S_b = sum b_i`.
pub fn upper_cubic_polynomial(g: &ThresholdGraph) -> Result<Polynomial> {
    let p = params(g)?;
    let c = p.c as f64;
    let s = p.sum_b as f64;
    Polynomial::new(vec![c * s - p.f1 as f64, c - s, -(c + 1.0), 1.0])
}

pub fn lower_cubic(g: &ThresholdGraph) -> Result<f64> {
    let poly = lower_cubic_polynomial(g)?;
    Ok(greatest_real_root(&poly, g.c() as f64)?.value - 1.0)
}

/// `c - 1 + F_1 / n^2`.
pub fn lower_corollary(g: &ThresholdGraph) -> Result<f64> {
    let p = params(g)?;
    Ok(p.c as f64 - 1.0 + p.f1 as f64 / (p.n * p.n) as f64)
}

/// `(c - 2 + sqrt(c^2 + 4 F_1 / (c - 1))) / 2`.
pub fn lower_quadratic(g: &ThresholdGraph) -> Result<f64> {
    let p = params(g)?;
    let c = p.c as f64;
    Ok((c - 2.0 + (c * c + 4.0 * p.f1 as f64 / (c - 1.0)).sqrt()) / 2.0)
}

pub fn upper_cubic(g: &ThresholdGraph) -> Result<f64> {
    let poly = upper_cubic_polynomial(g)?;
    Ok(greatest_real_root(&poly, g.c() as f64)?.value - 1.0)
}

/// Both sides of
/// `rho((rho-c+2)(rho^2+rho-(z+1)) - S)(c-2) <= sum_{i=c}^n (d_i(rho^2-(z+1)) - rho(rho-c+2) + S)(d_i-1)`
/// with `S = sum_{i=c}^n d_i`.
pub fn inequality_sides(g: &ThresholdGraph, rho: f64) -> Result<(f64, f64)> {
    let p = params(g)?;
    Ok(sides(&p, rho))
}

fn sides(p: &Params, rho: f64) -> (f64, f64) {
    let c = p.c as f64;
    let z1 = (p.z + 1) as f64;
    let s: f64 = p.tail_degrees.iter().sum::<u64>() as f64;
    let lhs = rho * ((rho - c + 2.0) * (rho * rho + rho - z1) - s) * (c - 2.0);
    let rhs = p
        .tail_degrees
        .iter()
        .map(|&d| {
            let d = d as f64;
            (d * (rho * rho - z1) - rho * (rho - c + 2.0) + s) * (d - 1.0)
        })
        .sum();
    (lhs, rhs)
}

/// The quartic `h(x) = LHS(x) - RHS(x)` of [`inequality_sides`], expanded
/// with exact integer coefficients.
pub fn inequality_polynomial(g: &ThresholdGraph) -> Result<Polynomial> {
    let p = params(g)?;
    let a = p.c as i128 - 2;
    let count = p.z as i128 + 1;
    let s: i128 = p.tail_degrees.iter().map(|&d| d as i128).sum();
    let d1: i128 = p.tail_degrees.iter().map(|&d| d as i128 - 1).sum();
    let d2: i128 = p.tail_degrees.iter().map(|&d| (d as i128 - 1).pow(2)).sum();
    let dx: i128 = p
        .tail_degrees
        .iter()
        .map(|&d| (d as i128 - 1) * (s - count * d as i128))
        .sum();
    let coeffs = [
        -dx,
        a * (a * count - s) - a * d1,
        -a * (count + a) - d2,
        a * (1 - a),
        a,
    ];
    Polynomial::new(coeffs.iter().map(|&v| v as f64).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub holds: bool,
    /// `LHS - RHS`; nonpositive when the inequality holds.
    pub slack: f64,
}

pub fn inequality_theorem_check(g: &ThresholdGraph, rho: f64) -> Result<InequalityCheck> {
    let (lhs, rhs) = inequality_sides(g, rho)?;
    let slack = lhs - rhs;
    let scale = lhs.abs().max(rhs.abs()).max(1.0);
    Ok(InequalityCheck {
        holds: slack <= BOUND_TOL * scale,
        slack,
    })
}

/// Greatest real root of the quartic `h`. Bounds `rho` from above whenever
/// `h(rho) <= 0`; equals `rho` when `c = 3`. For `c >= 4` the opposite sign
/// `h(rho) >= 0` is what actually holds and the root typically falls below `rho`.
pub fn upper_from_inequality(g: &ThresholdGraph) -> Result<f64> {
    let poly = inequality_polynomial(g)?;
    Ok(greatest_real_root(&poly, g.c() as f64 - 1.0)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Gaps {
    pub lower_cubic: Option<f64>,
    pub lower_corollary: Option<f64>,
    pub lower_quadratic: Option<f64>,
    pub upper_cubic: Option<f64>,
    pub upper_inequality: Option<f64>,
}

/// True spectral radius next to every bound. Bounds are `None` when the
/// graph falls outside their preconditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub rho: f64,
    pub lower_cubic: Option<f64>,
    pub lower_corollary: Option<f64>,
    pub lower_quadratic: Option<f64>,
    pub upper_cubic: Option<f64>,
    /// Root of the quartic inequality; derived here rather than stated as a
    /// bound in its own right.
    pub upper_inequality: Option<f64>,
    pub sandwich_ok: Option<bool>,
    pub gaps: Gaps,
    /// Names of bounds that are derived consequences rather than theorems.
    pub derived: Vec<&'static str>,
}

impl BoundReport {
    fn not_applicable(rho: f64) -> Self {
        Self {
            rho,
            lower_cubic: None,
            lower_corollary: None,
            lower_quadratic: None,
            upper_cubic: None,
            upper_inequality: None,
            sandwich_ok: None,
            gaps: Gaps {
                lower_cubic: None,
                lower_corollary: None,
                lower_quadratic: None,
                upper_cubic: None,
                upper_inequality: None,
            },
            derived: vec!["upper_inequality"],
        }
    }

    pub fn is_applicable(&self) -> bool {
        self.sandwich_ok.is_some()
    }

    pub fn lowers(&self) -> [(&'static str, Option<f64>); 3] {
        [
            ("lower_corollary", self.lower_corollary),
            ("lower_cubic", self.lower_cubic),
            ("lower_quadratic", self.lower_quadratic),
        ]
    }

    pub fn uppers(&self) -> [(&'static str, Option<f64>); 2] {
        [
            ("upper_cubic", self.upper_cubic),
            ("upper_inequality", self.upper_inequality),
        ]
    }

    /// Name of the largest lower bound, if any applies.
    pub fn best_lower(&self) -> Option<&'static str> {
        self.lowers()
            .into_iter()
            .filter_map(|(name, v)| v.map(|v| (name, v)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(name, _)| name)
    }
}

fn full_report(g: &ThresholdGraph, rho: f64) -> Result<BoundReport> {
    let lc = lower_cubic(g)?;
    let lk = lower_corollary(g)?;
    let lq = lower_quadratic(g)?;
    let uc = upper_cubic(g)?;
    let ui = upper_from_inequality(g)?;
    let sandwich_ok = [lc, lk, lq].iter().all(|&l| l <= rho + BOUND_TOL)
        && [uc, ui].iter().all(|&u| rho <= u + BOUND_TOL);
    Ok(BoundReport {
        rho,
        lower_cubic: Some(lc),
        lower_corollary: Some(lk),
        lower_quadratic: Some(lq),
        upper_cubic: Some(uc),
        upper_inequality: Some(ui),
        sandwich_ok: Some(sandwich_ok),
        gaps: Gaps {
            lower_cubic: Some(rho - lc),
            lower_corollary: Some(rho - lk),
            lower_quadratic: Some(rho - lq),
            upper_cubic: Some(uc - rho),
            upper_inequality: Some(ui - rho),
        },
        derived: vec!["upper_inequality"],
    })
}

/// Strict report: fails when the bound preconditions do not hold.
pub fn bound_report(g: &ThresholdGraph) -> Result<BoundReport> {
    bound_report_with_tol(g, DEFAULT_TOL)
}

/// `bound_report` with an explicit power-iteration tolerance.
pub fn bound_report_with_tol(g: &ThresholdGraph, tol: f64) -> Result<BoundReport> {
    params(g)?;
    let rho = spectral_radius(g, tol)?;
    full_report(g, rho)
}

/// Report for sweeps: outside the bound preconditions only `rho` is filled
/// in. Still fails for disconnected graphs.
pub fn bound_report_lenient(g: &ThresholdGraph) -> Result<BoundReport> {
    let rho = spectral_radius(g, DEFAULT_TOL)?;
    match params(g) {
        Ok(_) => full_report(g, rho),
        Err(Error::Precondition(_)) => Ok(BoundReport::not_applicable(rho)),
        Err(e) => Err(e),
    }
}
