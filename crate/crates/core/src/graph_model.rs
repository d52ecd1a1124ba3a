//! Threshold graphs and their four encodings.
//!
//! A threshold graph on `n` vertices is built by inserting vertices one at a
//! time; each new vertex is either joined to every earlier vertex (type 1) or
//! to none of them (type 0). The insertion record is the generating sequence.
//! The same graph is also described by a block composition `G{p1,...,pk}`,
//! by its backwards-zero-position (BZP) tuple and by its forward-one-position
//! (FOP) tuple. All constructors normalise to the canonical generating
//! sequence, whose first symbol is always 1.

use std::cmp::Reverse;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, ParseError, Result};

/// Largest order accepted by any constructor.
pub const MAX_ORDER: usize = 4096;

pub(crate) fn binomial2(c: usize) -> usize {
    c * c.saturating_sub(1) / 2
}

/// Canonical binary generating sequence `a_1 ... a_n` (`true` = type 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratingSequence {
    bits: Vec<bool>,
}

impl GeneratingSequence {
    /// Canonicalises `bits`: the first vertex has no predecessors, so its
    /// type never changes the graph and is stored as 1.
    pub fn new(mut bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptySequence);
        }
        if bits.len() > MAX_ORDER {
            return Err(Error::TooLarge {
                order: bits.len(),
                max: MAX_ORDER,
            });
        }
        bits[0] = true;
        Ok(Self { bits })
    }

    /// Parses a bitstring such as `10101`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(ParseError::new(0, "expected at least one of '0' or '1'").into());
        }
        let bits = text
            .bytes()
            .enumerate()
            .map(|(i, ch)| match ch {
                b'0' => Ok(false),
                b'1' => Ok(true),
                _ => Err(ParseError::new(i, "expected '0' or '1'")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// A threshold graph is connected exactly when its last vertex is type 1.
    pub fn is_connected(&self) -> bool {
        *self.bits.last().expect("nonempty by construction")
    }
}

impl fmt::Display for GeneratingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &bit in &self.bits {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Block composition `G{p1,...,pk}`, optionally followed by `+rK1`
/// isolated vertices.
///
/// With `k` odd the first block is ones, with `k` even it is zeros; either
/// way the blocks alternate and the last block is ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositionSpec {
    blocks: Vec<usize>,
    isolated: usize,
}

impl CompositionSpec {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        Self::with_isolated(blocks, 0)
    }

    pub fn with_isolated(blocks: Vec<usize>, isolated: usize) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::NonPositiveBlock { index: 0 });
        }
        if let Some(index) = blocks.iter().position(|&p| p == 0) {
            return Err(Error::NonPositiveBlock { index });
        }
        Ok(Self { blocks, isolated })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Number of trailing isolated vertices (`+rK1` suffix).
    pub fn isolated(&self) -> usize {
        self.isolated
    }

    pub fn order(&self) -> usize {
        self.blocks
            .iter()
            .fold(self.isolated, |acc, &p| acc.saturating_add(p))
    }

    /// Raw expansion of the blocks, before canonicalisation.
    pub fn expand(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(self.order());
        let odd = self.blocks.len() % 2 == 1;
        for (i, &p) in self.blocks.iter().enumerate() {
            let ones = (i % 2 == 0) == odd;
            bits.extend(std::iter::repeat_n(ones, p));
        }
        bits.extend(std::iter::repeat_n(false, self.isolated));
        bits
    }
}

impl fmt::Display for CompositionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("G{")?;
        for (i, p) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")?;
        if self.isolated > 0 {
            write!(f, "+{}K1", self.isolated)?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> std::result::Result<(), ParseError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::new(self.pos, format!("expected '{}'", ch as char)))
        }
    }

    fn number(&mut self) -> std::result::Result<usize, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected a decimal number"));
        }
        let digits = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits");
        digits
            .parse::<u32>()
            .map(|v| v as usize)
            .map_err(|_| ParseError::new(start, "number too large"))
    }

    fn positive(&mut self) -> std::result::Result<usize, ParseError> {
        let start = self.pos;
        match self.number()? {
            0 => Err(ParseError::new(start, "block must be positive")),
            v => Ok(v),
        }
    }

    fn finish(&self) -> std::result::Result<(), ParseError> {
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(ParseError::new(self.pos, "unexpected trailing input"))
        }
    }
}

/// Parses `G{p1,...,pk}` with an optional `+rK1` suffix.
pub fn parse_composition(text: &str) -> std::result::Result<CompositionSpec, ParseError> {
    let mut cur = Cursor::new(text);
    cur.expect(b'G')?;
    cur.expect(b'{')?;
    let mut blocks = vec![cur.positive()?];
    loop {
        match cur.peek() {
            Some(b',') => {
                cur.pos += 1;
                blocks.push(cur.positive()?);
            }
            Some(b'}') => {
                cur.pos += 1;
                break;
            }
            _ => return Err(ParseError::new(cur.pos, "expected ',' or '}'")),
        }
    }
    let mut isolated = 0;
    if cur.peek() == Some(b'+') {
        cur.pos += 1;
        isolated = cur.positive()?;
        cur.expect(b'K')?;
        cur.expect(b'1')?;
    }
    cur.finish()?;
    Ok(CompositionSpec { blocks, isolated })
}

/// Backwards zero positions: `b_i` counts the type-1 vertices inserted after
/// the `i`-th type-0 vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BzpSequence {
    c: usize,
    b: Vec<usize>,
}

impl BzpSequence {
    pub fn new(c: usize, b: Vec<usize>) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidBzp("c must be positive".into()));
        }
        if c.saturating_add(b.len()) > MAX_ORDER {
            return Err(Error::TooLarge {
                order: c.saturating_add(b.len()),
                max: MAX_ORDER,
            });
        }
        if let Some(i) = b.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidBzp(format!(
                "not nonincreasing at position {}",
                i + 2
            )));
        }
        if let Some(i) = b.iter().position(|&v| v == 0 || v >= c) {
            return Err(Error::InvalidBzp(format!(
                "b_{} = {} outside [1, {}]",
                i + 1,
                b[i],
                c - 1
            )));
        }
        Ok(Self { c, b })
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn z(&self) -> usize {
        self.b.len()
    }

    pub fn parts(&self) -> &[usize] {
        &self.b
    }

    pub fn sum(&self) -> usize {
        self.b.iter().sum()
    }

    /// `F_1 = sum b_i^2`.
    pub fn sum_of_squares(&self) -> usize {
        self.b.iter().map(|&v| v * v).sum()
    }

    pub fn size(&self) -> usize {
        binomial2(self.c) + self.sum()
    }

    pub fn to_fop(&self) -> FopSequence {
        let g = ThresholdGraph::from_bzp(self.c, &self.b).expect("validated BZP");
        FopSequence {
            f: g.fop_parts(),
            n: g.n,
        }
    }
}

/// Forward one positions: `f_i` counts the type-0 vertices inserted before
/// the `i`-th type-1 vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FopSequence {
    f: Vec<usize>,
    n: usize,
}

impl FopSequence {
    pub fn new(f: Vec<usize>, n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::TooLarge {
                order: n,
                max: MAX_ORDER,
            });
        }
        let (Some(&first), Some(&last)) = (f.first(), f.last()) else {
            return Err(Error::InvalidFop("empty sequence".into()));
        };
        if first != 0 {
            return Err(Error::InvalidFop(format!("f_1 = {first}, expected 0")));
        }
        if let Some(i) = f.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::InvalidFop(format!(
                "not nondecreasing at position {}",
                i + 2
            )));
        }
        if f.len() > n || last != n - f.len() {
            return Err(Error::InvalidFop(format!(
                "f_c = {last} does not match z = n - c for n = {n}, c = {}",
                f.len()
            )));
        }
        Ok(Self { f, n })
    }

    pub fn parts(&self) -> &[usize] {
        &self.f
    }

    pub fn c(&self) -> usize {
        self.f.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sum(&self) -> usize {
        self.f.iter().sum()
    }
}

/// A threshold graph stored by its canonical generating sequence, with the
/// order, size and type counts cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThresholdGraph {
    gen: GeneratingSequence,
    n: usize,
    m: usize,
    c: usize,
    z: usize,
}

impl ThresholdGraph {
    pub fn from_sequence(gen: GeneratingSequence) -> Self {
        let bits = gen.bits();
        let n = bits.len();
        let c = bits.iter().filter(|&&b| b).count();
        let m = bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .sum();
        Self {
            gen,
            n,
            m,
            c,
            z: n - c,
        }
    }

    pub fn from_generating_sequence(bits: &[bool]) -> Result<Self> {
        GeneratingSequence::new(bits.to_vec()).map(Self::from_sequence)
    }

    /// Shorthand for `from_generating_sequence` on a `0`/`1` string.
    pub fn parse_bits(text: &str) -> Result<Self> {
        GeneratingSequence::parse(text).map(Self::from_sequence)
    }

    pub fn from_composition(spec: &CompositionSpec) -> Result<Self> {
        let order = spec.order();
        if order > MAX_ORDER {
            return Err(Error::TooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        Self::from_generating_sequence(&spec.expand())
    }

    /// Starts from `K_c` and appends one type-0 vertex per part, the `i`-th
    /// joined to `b_i` clique vertices.
    pub fn from_bzp(c: usize, b: &[usize]) -> Result<Self> {
        let bzp = BzpSequence::new(c, b.to_vec())?;
        let mut bits = Vec::with_capacity(c + b.len());
        let mut ones_after = c;
        for &bi in bzp.parts() {
            bits.extend(std::iter::repeat_n(true, ones_after - bi));
            bits.push(false);
            ones_after = bi;
        }
        bits.extend(std::iter::repeat_n(true, ones_after));
        Self::from_generating_sequence(&bits)
    }

    pub fn from_fop(f: &[usize], n: usize) -> Result<Self> {
        let fop = FopSequence::new(f.to_vec(), n)?;
        let mut bits = Vec::with_capacity(n);
        let mut zeros_before = 0;
        for &fi in fop.parts() {
            bits.extend(std::iter::repeat_n(false, fi - zeros_before));
            bits.push(true);
            zeros_before = fi;
        }
        Self::from_generating_sequence(&bits)
    }

    pub fn generating(&self) -> &GeneratingSequence {
        &self.gen
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of type-1 vertices (the clique number when connected).
    pub fn c(&self) -> usize {
        self.c
    }

    /// Number of type-0 vertices.
    pub fn z(&self) -> usize {
        self.z
    }

    pub fn is_connected(&self) -> bool {
        self.gen.is_connected()
    }

    /// Type-1 counts after each type-0 vertex, in insertion order. Defined for
    /// every graph; trailing isolated vertices contribute zeros.
    pub fn bzp_parts(&self) -> Vec<usize> {
        let mut parts = Vec::with_capacity(self.z);
        let mut ones_after = self.c;
        for &bit in self.gen.bits() {
            if bit {
                ones_after -= 1;
            } else {
                parts.push(ones_after);
            }
        }
        parts
    }

    /// Type-0 counts before each type-1 vertex, in insertion order.
    pub fn fop_parts(&self) -> Vec<usize> {
        let mut parts = Vec::with_capacity(self.c);
        let mut zeros_before = 0;
        for &bit in self.gen.bits() {
            if bit {
                parts.push(zeros_before);
            } else {
                zeros_before += 1;
            }
        }
        parts
    }

    pub fn to_bzp(&self) -> Result<BzpSequence> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        if self.z == 0 {
            return Err(Error::NoTypeZero);
        }
        Ok(BzpSequence {
            c: self.c,
            b: self.bzp_parts(),
        })
    }

    /// BZP tuple for a connected graph, allowing the empty tuple of `K_c`.
    pub(crate) fn bzp_allow_complete(&self) -> Result<BzpSequence> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(BzpSequence {
            c: self.c,
            b: self.bzp_parts(),
        })
    }

    pub fn to_fop(&self) -> Result<FopSequence> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(FopSequence {
            f: self.fop_parts(),
            n: self.n,
        })
    }

    /// Shortest composition describing this graph. A lone leading type-1
    /// vertex followed by zeros is written as part of the zero block, so the
    /// star comes out as `G{n-1,1}`.
    pub fn to_composition(&self) -> CompositionSpec {
        let bits = self.gen.bits();
        let isolated = bits.iter().rev().take_while(|&&b| !b).count();
        let mut body = bits[..bits.len() - isolated].to_vec();
        if body.len() >= 2 && !body[1] {
            body[0] = false;
        }
        let mut blocks: Vec<usize> = Vec::new();
        let mut prev = None;
        for &bit in &body {
            if prev == Some(bit) {
                *blocks.last_mut().expect("run started") += 1;
            } else {
                blocks.push(1);
                prev = Some(bit);
            }
        }
        CompositionSpec { blocks, isolated }
    }

    fn vertex_degree(&self, pos: usize) -> usize {
        let bits = self.gen.bits();
        let ones_after = bits[pos + 1..].iter().filter(|&&b| b).count();
        if bits[pos] {
            pos + ones_after
        } else {
            ones_after
        }
    }

    /// Generating-sequence positions listed in matrix order: nonincreasing
    /// degree, type-1 vertices ahead of type-0 vertices of equal degree.
    pub fn vertex_order(&self) -> Vec<usize> {
        let bits = self.gen.bits();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&p| {
            let tiebreak = if bits[p] { self.n - p } else { self.n + p };
            (Reverse(self.vertex_degree(p)), !bits[p], tiebreak)
        });
        order
    }

    /// Vertex types (`true` = type 1) in matrix order.
    pub fn vertex_types(&self) -> Vec<bool> {
        let bits = self.gen.bits();
        self.vertex_order().into_iter().map(|p| bits[p]).collect()
    }

    /// Degrees in matrix order. Requires a connected graph.
    pub fn degree_sequence(&self) -> Result<Vec<usize>> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self
            .vertex_order()
            .into_iter()
            .map(|p| self.vertex_degree(p))
            .collect())
    }

    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let bits = self.gen.bits();
        let order = self.vertex_order();
        let n = self.n;
        let mut data = vec![0u8; n * n];
        for (i, &pi) in order.iter().enumerate() {
            for (j, &pj) in order.iter().enumerate() {
                if pi != pj && bits[pi.max(pj)] {
                    data[i * n + j] = 1;
                }
            }
        }
        AdjacencyMatrix { n, data }
    }

    pub fn summary(&self) -> GraphSummary {
        let connected = self.is_connected();
        GraphSummary {
            n: self.n,
            m: self.m,
            c: self.c,
            z: self.z,
            generating: self.gen.to_string(),
            composition: self.to_composition().to_string(),
            connected,
            bzp: connected.then(|| self.bzp_parts()),
            fop: connected.then(|| self.fop_parts()),
            degrees: self.degree_sequence().ok(),
        }
    }
}

impl fmt::Display for ThresholdGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_composition())
    }
}

/// JSON view of a graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub c: usize,
    pub z: usize,
    pub generating: String,
    pub composition: String,
    pub connected: bool,
    pub bzp: Option<Vec<usize>>,
    pub fop: Option<Vec<usize>>,
    pub degrees: Option<Vec<usize>>,
}

/// Dense 0/1 adjacency matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    data: Vec<u8>,
}

impl AdjacencyMatrix {
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let n = rows.len();
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), n, "adjacency rows must be square");
                r.iter().copied()
            })
            .collect();
        Self { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|&v| v as usize).sum())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == 0)
    }

    /// Checks that the upper-triangular ones form a staircase closed under
    /// decreasing either index. Closure under single steps is equivalent to
    /// closure under the full rectangle.
    pub fn is_stepwise(&self) -> bool {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j) == 0 {
                    continue;
                }
                if i > 0 && self.get(i - 1, j) == 0 {
                    return false;
                }
                if j > i + 1 && self.get(i, j - 1) == 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for (v, done) in seen.iter_mut().enumerate() {
                if self.get(u, v) == 1 && !*done {
                    *done = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn offset(e: Error, by: usize) -> Error {
    match e {
        Error::Parse(p) => Error::Parse(ParseError::new(p.position + by, p.message)),
        other => other,
    }
}

/// Parses one of `gen:<bits>`, `comp:G{p1,...,pk}` or `bzp:<c>:<b1>,...,<bz>`.
/// Parse positions are byte offsets into the whole spec.
pub fn parse_graph_spec(text: &str) -> Result<ThresholdGraph> {
    if let Some(rest) = text.strip_prefix("gen:") {
        return ThresholdGraph::parse_bits(rest).map_err(|e| offset(e, 4));
    }
    if let Some(rest) = text.strip_prefix("comp:") {
        let spec = parse_composition(rest).map_err(|e| offset(e.into(), 5))?;
        return ThresholdGraph::from_composition(&spec);
    }
    if let Some(rest) = text.strip_prefix("bzp:") {
        let mut cur = Cursor::new(rest);
        let c = cur.number().map_err(|e| offset(e.into(), 4))?;
        cur.expect(b':').map_err(|e| offset(e.into(), 4))?;
        let mut parts = Vec::new();
        if cur.peek().is_some() {
            loop {
                parts.push(cur.number().map_err(|e| offset(e.into(), 4))?);
                match cur.peek() {
                    Some(b',') => cur.pos += 1,
                    None => break,
                    Some(_) => {
                        return Err(ParseError::new(cur.pos + 4, "expected ',' or end of input").into())
                    }
                }
            }
        }
        return ThresholdGraph::from_bzp(c, &parts);
    }
    Err(ParseError::new(0, "expected one of 'gen:', 'comp:' or 'bzp:'").into())
}
