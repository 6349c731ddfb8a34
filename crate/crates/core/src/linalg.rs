//! Dense exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p/q`, or `p` for integers.
pub fn q_to_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // fall back on log-scale conversion for huge numerators/denominators
        let (n, d) = (x.numer(), x.denom());
        let ln = |b: &BigInt| {
            let bits = b.bits() as i64;
            let shift = (bits - 60).max(0);
            let top: BigInt = b.abs() >> (shift as usize);
            top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
        };
        let sign = if x.is_negative() { -1.0 } else { 1.0 };
        sign * (ln(n) - ln(d)).exp()
    })
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    let mut s = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(q_to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    /// Columns given as vectors.
    pub fn from_cols(cols: &[Vec<Q>], nrows: usize) -> Self {
        Self::from_fn(nrows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn diag(entries: &[Q]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn block_diag(blocks: &[QMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self[(r, c)] == self[(c, r)]))
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |s, i| s + &self[(i, i)])
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &QMatrix) -> QMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Entries in row-major order, the natural coordinates on matrix space.
    pub fn flatten(&self) -> Vec<Q> {
        self.data.clone()
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|r| self.row(r).iter().map(q_to_f64).collect()).collect()
    }

    pub fn vstack(blocks: &[QMatrix]) -> QMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        QMatrix { rows, cols, data }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(p) = (pr..m.rows).find(|&r| !m[(r, c)].is_zero()) else { continue };
            if p != pr {
                for k in 0..m.cols {
                    m.data.swap(p * m.cols + k, pr * m.cols + k);
                }
            }
            let inv = m[(pr, c)].recip();
            for k in c..m.cols {
                if !m[(pr, k)].is_zero() {
                    m[(pr, k)] *= &inv;
                }
            }
            let prow: Vec<(usize, Q)> =
                (c..m.cols).filter(|&k| !m[(pr, k)].is_zero()).map(|k| (k, m[(pr, k)].clone())).collect();
            for r in 0..m.rows {
                if r == pr || m[(r, c)].is_zero() {
                    continue;
                }
                let f = m[(r, c)].clone();
                for (k, v) in &prow {
                    let t = &f * v;
                    m[(r, *k)] -= t;
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : Mx = 0}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, free)].clone();
            }
            out.push(v);
        }
        out
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else { return Q::zero() };
            if p != c {
                for k in 0..n {
                    m.data.swap(p * n + k, c * n + k);
                }
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &piv;
                for k in c..n {
                    let t = &f * &m[(c, k)];
                    m[(r, k)] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                Q::one()
            } else {
                Q::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// Some solution of `Mx = b`, if one exists.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                b[r].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Characteristic polynomial `det(xI - M)` by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = Q::one();
        let mut mk = QMatrix::identity(n);
        for k in 1..=n {
            let am = self.mul(&mk);
            let c = -am.trace() / q(k as i64);
            coeffs[n - k] = c.clone();
            let mut next = am;
            for i in 0..n {
                next[(i, i)] += &c;
            }
            mk = next;
        }
        Poly::new(coeffs)
    }
}

/// Inertia `(p, q)` of a symmetric matrix by exact congruence reduction.
pub fn signature(m: &QMatrix) -> (usize, usize) {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let piv = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                // all diagonal entries vanish: add row/col j to row/col i for a nonzero a_ij
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[(i, j)].is_zero());
                let Some((i, j)) = pair else { break };
                for k in 0..n {
                    let t = a[(j, k)].clone();
                    a[(i, k)] += t;
                }
                for k in 0..n {
                    let t = a[(k, j)].clone();
                    a[(k, i)] += t;
                }
                i
            }
        };
        let d = a[(piv, piv)].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&x| x != piv);
        for &r in &active {
            if a[(r, piv)].is_zero() {
                continue;
            }
            let f = &a[(r, piv)] / &d;
            for &c in &active {
                let t = &f * &a[(piv, c)];
                a[(r, c)] -= t;
            }
        }
    }
    (pos, neg)
}

/// Row-reduced basis of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = QMatrix::from_rows(vectors.to_vec()).rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn rank_of(vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        QMatrix::from_rows(vectors.to_vec()).rank()
    }
}

/// Basis of the intersection of the spans of two lists of independent vectors.
pub fn intersect_spans(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    // solve sum x_i a_i - sum y_j b_j = 0
    let cols: Vec<Vec<Q>> = a.iter().cloned().chain(b.iter().map(|v| v.iter().map(|x| -x).collect())).collect();
    let m = QMatrix::from_cols(&cols, n);
    let ker = m.null_space();
    let vecs: Vec<Vec<Q>> = ker
        .iter()
        .map(|k| {
            let mut v = vec![Q::zero(); n];
            for (i, ai) in a.iter().enumerate() {
                if !k[i].is_zero() {
                    for (vt, x) in v.iter_mut().zip(ai) {
                        *vt += &k[i] * x;
                    }
                }
            }
            v
        })
        .collect();
    span_basis(&vecs)
}

/// Expresses vectors in a fixed basis of independent vectors.
#[derive(Clone, Debug)]
pub struct CoordSolver {
    basis: Vec<Vec<Q>>,
    pivot_rows: Vec<usize>,
    inv: QMatrix,
}

impl CoordSolver {
    pub fn new(basis: &[Vec<Q>]) -> Result<Self> {
        let k = basis.len();
        if k == 0 {
            return Ok(CoordSolver { basis: Vec::new(), pivot_rows: Vec::new(), inv: QMatrix::zeros(0, 0) });
        }
        let (_, pivots) = QMatrix::from_rows(basis.to_vec()).rref();
        if pivots.len() < k {
            return Err(Error::Internal("basis vectors are linearly dependent".into()));
        }
        let sub = QMatrix::from_fn(k, k, |r, c| basis[c][pivots[r]].clone());
        let inv = sub.inverse().ok_or_else(|| Error::Internal("singular pivot block".into()))?;
        Ok(CoordSolver { basis: basis.to_vec(), pivot_rows: pivots, inv })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        if self.basis.is_empty() {
            return if v.iter().all(Zero::is_zero) { Some(Vec::new()) } else { None };
        }
        let rhs: Vec<Q> = self.pivot_rows.iter().map(|&r| v[r].clone()).collect();
        let c = self.inv.mul_vec(&rhs);
        let back = self.combine(&c);
        if back.as_slice() == v {
            Some(c)
        } else {
            None
        }
    }

    pub fn combine(&self, c: &[Q]) -> Vec<Q> {
        let n = self.basis[0].len();
        let mut out = vec![Q::zero(); n];
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o += ci * x;
                }
            }
        }
        out
    }
}

/// Rational Gram–Schmidt with respect to the symmetric form `gram`.
pub fn orthogonalize(vectors: &[Vec<Q>], gram: &QMatrix) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = Vec::new();
    let mut norms: Vec<Q> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for (u, nu) in out.iter().zip(&norms) {
            let c = dot(&gram.mul_vec(u), v) / nu;
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= &c * ui;
            }
        }
        let nw = dot(&gram.mul_vec(&w), &w);
        assert!(!nw.is_zero(), "orthogonalize needs an anisotropic form");
        out.push(w);
        norms.push(nw);
    }
    out
}

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn one() -> Self {
        Poly::new(vec![Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => Poly::new(self.coeffs.iter().map(|c| c / lc).collect()),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Q::zero();
        Poly::new(
            (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z)).collect(),
        )
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.coeffs.last().unwrap().clone();
        if rem.len() < d.coeffs.len() {
            return (Poly::new(Vec::new()), self.clone());
        }
        let mut quo = vec![Q::zero(); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quo[i] = c;
        }
        (Poly::new(quo), Poly::new(rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's algorithm: monic `(s_k, k)` with `self = lc * prod s_k^k`, s_k squarefree and coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree() == 0 {
            return out;
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.divrem(&a0).0;
        let mut c = fp.divrem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), k));
            }
            b = b.divrem(&a).0;
            if b.degree() == 0 {
                break;
            }
            c = d.divrem(&a).0;
            d = c.sub(&b.derivative());
            k += 1;
        }
        out
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_matrix(&self, m: &QMatrix) -> QMatrix {
        let n = m.rows();
        let mut acc = QMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = QMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), q(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(3));
        assert!(QMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn null_space_dimension() {
        let m = QMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.null_space();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn signature_handles_zero_diagonal() {
        let m = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&m), (1, 1));
        let m = QMatrix::from_i64(&[&[1, 0, 0], &[0, -2, 0], &[0, 0, 0]]);
        assert_eq!(signature(&m), (1, 1));
        let m = QMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]);
        assert_eq!(signature(&m), (1, 1));
    }

    #[test]
    fn charpoly_and_yun() {
        // diag(1,1,2) has charpoly (x-1)^2 (x-2)
        let m = QMatrix::diag(&[q(1), q(1), q(2)]);
        let p = m.charpoly();
        assert_eq!(p.coeffs(), &[q(-2), q(5), q(-4), q(1)]);
        let sq = p.squarefree_decomposition();
        assert_eq!(sq.len(), 2);
        assert_eq!(sq[0].0.coeffs(), &[q(-2), q(1)]);
        assert_eq!(sq[0].1, 1);
        assert_eq!(sq[1].0.coeffs(), &[q(-1), q(1)]);
        assert_eq!(sq[1].1, 2);
        assert!(p.eval_matrix(&m).is_zero());
    }

    #[test]
    fn rational_parsing_roundtrip() {
        for s in ["3/4", "-7", "0", "-12/5"] {
            assert_eq!(q_to_string(&parse_q(s).unwrap()), s);
        }
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn coord_solver_rejects_outside_span() {
        let s = CoordSolver::new(&[vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]]).unwrap();
        assert_eq!(s.coords(&[q(1), q(2), q(1)]), Some(vec![q(1), q(1)]));
        assert_eq!(s.coords(&[q(1), q(0), q(0)]), None);
    }
}
