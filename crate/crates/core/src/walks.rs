//! Exact lazy-walk counts in connected threshold graphs.
//!
//! A lazy walk may stay at its current vertex or move to a neighbour. `LW_k`
//! counts lazy walks of length `k - 1` whose endpoints are both type-1
//! vertices (`LW_0 = 1` by convention). `F_p` counts lazy walks whose type
//! signature is `1 0..0 1 0..0 1 ... 1` with `p` zero blocks; the count does
//! not depend on the block widths.
//!
//! Everything here is exact (`BigUint`). The recurrence routes and the
//! matrix-power routes share no code beyond the graph encodings, so each one
//! can serve as an oracle for the other.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_model::{BzpSequence, FopSequence, ThresholdGraph};

/// `C(a, q)` with `C(a, q) = 0` for `a < 0` or `q > a`, and `C(a, 0) = 1`
/// for `a >= 0`.
pub fn binomial(a: i64, q: i64) -> BigUint {
    if a < 0 || q < 0 || q > a {
        return BigUint::zero();
    }
    let q = q.min(a - q) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..q {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Square matrix with small nonnegative integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<u64>,
}

impl IntMatrix {
    fn from_fn(n: usize, f: impl Fn(usize, usize) -> u64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as f64).collect())
            .collect()
    }

    pub fn mul_vec(&self, v: &[BigUint]) -> Vec<BigUint> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                v.iter()
                    .enumerate()
                    .filter(|(j, _)| self.get(i, *j) != 0)
                    .map(|(j, x)| x * self.get(i, j))
                    .sum()
            })
            .collect()
    }
}

fn dot(a: &[BigUint], b: &[BigUint]) -> BigUint {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Visits every tuple in `[0, z)^p` in lexicographic order.
fn for_each_index_tuple(z: usize, p: usize, mut visit: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; p];
    loop {
        visit(&idx);
        let mut pos = p;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < z {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn fp_by_enumeration(
    b: &BzpSequence,
    p: usize,
    link: impl Fn(&[usize], usize, usize) -> usize,
) -> BigUint {
    if p == 0 {
        return BigUint::from(b.c());
    }
    let parts = b.parts();
    if parts.is_empty() {
        return BigUint::zero();
    }
    let mut total = BigUint::zero();
    for_each_index_tuple(parts.len(), p, |idx| {
        let mut term = BigUint::from(parts[idx[0]]) * parts[idx[p - 1]];
        for w in idx.windows(2) {
            term *= link(parts, w[0], w[1]);
        }
        total += term;
    });
    total
}

/// `F_p` as the `z^p`-term sum of `b_{i1} min(b_{i1}, b_{i2}) ... b_{ip}`.
pub fn fp_min_formula(b: &BzpSequence, p: usize) -> BigUint {
    fp_by_enumeration(b, p, |parts, i, j| parts[i].min(parts[j]))
}

/// `F_p` as the sum of `b_{i1} b_{max(i1,i2)} ... b_{ip}`; agrees with
/// [`fp_min_formula`] because `b` is nonincreasing.
pub fn fp_max_index_formula(b: &BzpSequence, p: usize) -> BigUint {
    fp_by_enumeration(b, p, |parts, i, j| parts[i.max(j)])
}

/// `B_ij = b_max(i,j)`.
pub fn build_b(b: &BzpSequence) -> Result<IntMatrix> {
    if b.z() == 0 {
        return Err(Error::NoTypeZero);
    }
    let parts = b.parts();
    Ok(IntMatrix::from_fn(b.z(), |i, j| parts[i.max(j)] as u64))
}

/// `F_p = w^T B^{p-1} w` with `w = b`, valid for `p >= 1`.
pub fn fp_via_b(b: &BzpSequence, p: usize) -> Result<BigUint> {
    if p == 0 {
        return Err(Error::Precondition(
            "the B-matrix form only holds for p >= 1".into(),
        ));
    }
    let bm = build_b(b)?;
    let w: Vec<BigUint> = b.parts().iter().map(|&v| BigUint::from(v)).collect();
    let mut v = w.clone();
    for _ in 1..p {
        v = bm.mul_vec(&v);
    }
    Ok(dot(&w, &v))
}

/// `Phi_ij = f_min(i,j)`.
pub fn build_phi(f: &FopSequence) -> IntMatrix {
    let parts = f.parts();
    IntMatrix::from_fn(f.c(), |i, j| parts[i.min(j)] as u64)
}

/// `F_p = 1^T Phi^p 1`, valid for every `p >= 0`.
pub fn fp_via_phi(f: &FopSequence, p: usize) -> BigUint {
    fp_sequence_via_phi(f, p).pop().expect("p + 1 values")
}

/// `F_0, ..., F_pmax` via repeated multiplication by `Phi`.
pub fn fp_sequence_via_phi(f: &FopSequence, pmax: usize) -> Vec<BigUint> {
    let phi = build_phi(f);
    let mut v = vec![BigUint::one(); f.c()];
    let mut out = Vec::with_capacity(pmax + 1);
    out.push(v.iter().sum());
    for _ in 0..pmax {
        v = phi.mul_vec(&v);
        out.push(v.iter().sum());
    }
    out
}

/// Signature `1 0^{w1} 1 0^{w2} ... 1` for the given zero-block widths.
pub fn signature_with_widths(widths: &[usize]) -> Vec<bool> {
    let mut sig = vec![true];
    for &w in widths {
        sig.extend(std::iter::repeat_n(false, w));
        sig.push(true);
    }
    sig
}

/// Counts lazy walks `u_0 ... u_L` whose vertex types spell `sig`, by
/// dynamic programming over `(A + I)` restricted to the prescribed types.
///
/// `sig` must have the form `1 0..0 1 ... 1`: it starts and ends with 1 and
/// contains no two adjacent ones.
pub fn count_walks_with_signature(g: &ThresholdGraph, sig: &[bool]) -> Result<BigUint> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if sig.is_empty() {
        return Err(Error::InvalidSignature("empty".into()));
    }
    if !sig[0] || !sig[sig.len() - 1] {
        return Err(Error::InvalidSignature(
            "must start and end with a type-1 symbol".into(),
        ));
    }
    if sig.windows(2).any(|w| w[0] && w[1]) {
        return Err(Error::InvalidSignature(
            "zero blocks must be nonempty".into(),
        ));
    }
    let a = g.adjacency_matrix();
    let types = g.vertex_types();
    let n = g.n();
    let mut x: Vec<BigUint> = types
        .iter()
        .map(|&t| if t == sig[0] { BigUint::one() } else { BigUint::zero() })
        .collect();
    for &symbol in &sig[1..] {
        x = (0..n)
            .map(|v| {
                if types[v] != symbol {
                    return BigUint::zero();
                }
                (0..n)
                    .filter(|&u| u == v || a.get(u, v) == 1)
                    .map(|u| &x[u])
                    .sum()
            })
            .collect();
    }
    Ok(x.into_iter().sum())
}

fn lazy_step(a: &crate::graph_model::AdjacencyMatrix, x: &[BigUint]) -> Vec<BigUint> {
    let n = a.order();
    (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| u == v || a.get(u, v) == 1)
                .map(|u| &x[u])
                .sum()
        })
        .collect()
}

fn indicator(n: usize, members: &[usize]) -> Result<Vec<BigUint>> {
    if members.is_empty() {
        return Err(Error::InvalidVertexSet("is empty".into()));
    }
    let mut v = vec![BigUint::zero(); n];
    for &u in members {
        if u >= n {
            return Err(Error::InvalidVertexSet(format!(
                "contains {u}, but the graph has {n} vertices"
            )));
        }
        v[u] = BigUint::one();
    }
    Ok(v)
}

/// `Omega_k = 1_{U1}^T (A + I)^k 1_{U2}`. Vertices are indices into the
/// adjacency-matrix order of [`ThresholdGraph::vertex_order`].
pub fn count_lazy_walks(
    g: &ThresholdGraph,
    from: &[usize],
    to: &[usize],
    k: usize,
) -> Result<BigUint> {
    let a = g.adjacency_matrix();
    let start = indicator(g.n(), from)?;
    let end = indicator(g.n(), to)?;
    let mut x = end;
    for _ in 0..k {
        x = lazy_step(&a, &x);
    }
    Ok(dot(&start, &x))
}

/// `LW_0 ..= LW_kmax` straight from powers of `A + I`.
pub fn lw_bruteforce(g: &ThresholdGraph, kmax: usize) -> Result<Vec<BigUint>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let a = g.adjacency_matrix();
    let types = g.vertex_types();
    let ones: Vec<usize> = (0..g.n()).filter(|&i| types[i]).collect();
    let mut out = vec![BigUint::one()];
    let mut x = indicator(g.n(), &ones)?;
    for _ in 1..=kmax {
        out.push(ones.iter().map(|&u| &x[u]).sum());
        x = lazy_step(&a, &x);
    }
    Ok(out)
}

/// Shared kernel of all three walk recurrences:
/// `L_0 = 1`, `L_k = c L_{k-1} + sum_{r=0}^{k-3} L_r kernel[k-3-r]`.
fn convolution_recurrence(c: usize, kernel: &[BigUint], kmax: usize) -> Vec<BigUint> {
    let mut seq: Vec<BigUint> = Vec::with_capacity(kmax + 1);
    seq.push(BigUint::one());
    for k in 1..=kmax {
        let mut next = &seq[k - 1] * c;
        if k >= 3 {
            for r in 0..=k - 3 {
                next += &seq[r] * &kernel[k - 3 - r];
            }
        }
        seq.push(next);
    }
    seq
}

/// `kernel[j] = sum_{q >= 0, j - q >= q} C(j - q, q) term(q)`.
fn binomial_kernel(len: usize, term: impl Fn(usize) -> BigUint) -> Vec<BigUint> {
    (0..len)
        .map(|j| {
            (0..=j / 2)
                .map(|q| binomial((j - q) as i64, q as i64) * term(q))
                .sum()
        })
        .collect()
}

struct WalkInputs {
    c: usize,
    sum_b: usize,
    fop: FopSequence,
}

fn walk_inputs(g: &ThresholdGraph) -> Result<WalkInputs> {
    let bzp = g.bzp_allow_complete()?;
    Ok(WalkInputs {
        c: bzp.c(),
        sum_b: bzp.sum(),
        fop: g.to_fop()?,
    })
}

/// `LW'`: `LW'_k = c^k` for `k <= 2`, then `c LW'_{k-1} + F_1 sum_{r<=k-3} LW'_r`.
pub fn lw_prime(g: &ThresholdGraph, kmax: usize) -> Result<Vec<BigUint>> {
    let inputs = walk_inputs(g)?;
    let f1 = fp_via_phi(&inputs.fop, 1);
    let kernel = vec![f1; kmax.saturating_sub(2)];
    Ok(convolution_recurrence(inputs.c, &kernel, kmax))
}

/// `LW''`: the `LW` recurrence with every `F_{q+1}` replaced by
/// `F_1 (sum b_i)^q`.
pub fn lw_double_prime(g: &ThresholdGraph, kmax: usize) -> Result<Vec<BigUint>> {
    let inputs = walk_inputs(g)?;
    let f1 = fp_via_phi(&inputs.fop, 1);
    let s = BigUint::from(inputs.sum_b);
    let kernel = binomial_kernel(kmax.saturating_sub(2), |q| &f1 * s.pow(q as u32));
    Ok(convolution_recurrence(inputs.c, &kernel, kmax))
}

/// Exact `LW`, `LW'`, `LW''` for `k = 0..=kmax` and `F_p` for `p = 0..=pmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkTable {
    #[serde(serialize_with = "ser_big")]
    pub lw: Vec<BigUint>,
    #[serde(serialize_with = "ser_big")]
    pub lw_prime: Vec<BigUint>,
    #[serde(serialize_with = "ser_big")]
    pub lw_double_prime: Vec<BigUint>,
    #[serde(serialize_with = "ser_big")]
    pub fp: Vec<BigUint>,
}

fn ser_big<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl WalkTable {
    pub fn new(g: &ThresholdGraph, kmax: usize, pmax: usize) -> Result<Self> {
        let inputs = walk_inputs(g)?;
        // the LW kernel at j = kmax - 3 reads F_{q+1} for q <= j / 2
        let needed = kmax.saturating_sub(3) / 2 + 1;
        let mut fp = fp_sequence_via_phi(&inputs.fop, pmax.max(needed));
        let kernel = binomial_kernel(kmax.saturating_sub(2), |q| fp[q + 1].clone());
        let lw = convolution_recurrence(inputs.c, &kernel, kmax);
        fp.truncate(pmax + 1);
        Ok(Self {
            lw,
            lw_prime: lw_prime(g, kmax)?,
            lw_double_prime: lw_double_prime(g, kmax)?,
            fp,
        })
    }

    pub fn kmax(&self) -> usize {
        self.lw.len() - 1
    }
}

/// `LW_0 ..= LW_kmax` via the `F_p` recurrence, bundled with the auxiliary
/// sequences and `F_0 ..= F_kmax`.
pub fn lw_recurrence(g: &ThresholdGraph, kmax: usize) -> Result<WalkTable> {
    WalkTable::new(g, kmax, kmax)
}

/// Growth-rate estimates taken at the last index `K` of a sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthEstimate {
    /// `seq_K^(1/K)`
    pub root: f64,
    /// `seq_K / seq_{K-1}`
    pub ratio: f64,
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 significant bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Works in log space so arbitrarily long sequences do not overflow.
pub fn growth_estimate(seq: &[BigUint]) -> Result<GrowthEstimate> {
    if seq.len() < 3 {
        return Err(Error::InvalidSequence(format!(
            "need at least 3 values, got {}",
            seq.len()
        )));
    }
    if let Some(i) = seq.iter().position(|v| v.is_zero()) {
        return Err(Error::InvalidSequence(format!("entry {i} is not positive")));
    }
    let k = seq.len() - 1;
    let last = ln_big(&seq[k]);
    let prev = ln_big(&seq[k - 1]);
    Ok(GrowthEstimate {
        root: (last / k as f64).exp(),
        ratio: (last - prev).exp(),
    })
}
