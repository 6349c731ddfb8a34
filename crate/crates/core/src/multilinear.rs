//! Exact exterior algebra on ℝⁿ.
//!
//! A basis form e^{i₁}∧…∧e^{i_k} is stored as a bitmask with bit `i-1` set for
//! each index `i`; the public API speaks 1-based index tuples.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{parse_q, q, q_to_f64, q_to_string, QMatrix, Q};

pub const MAX_DIM: usize = 16;

pub type LinearMap = QMatrix;

/// Sorts `idx` (1-based) into a mask, returning the permutation sign, or `None`
/// when an index repeats.
pub fn normalize_indices(idx: &[usize]) -> Option<(i8, u32)> {
    let mut v = idx.to_vec();
    let mut sign = 1i8;
    // insertion sort keeps track of transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    let mut mask = 0u32;
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    for &i in &v {
        mask |= 1 << (i - 1);
    }
    Some((sign, mask))
}

pub fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Sign of e^A ∧ e^B for disjoint masks.
#[inline]
pub fn wedge_sign(a: u32, b: u32) -> i8 {
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let bit = bb.trailing_zeros();
        inversions += (a >> (bit + 1)).count_ones();
        bb &= bb - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn sign_q(s: i8, c: &Q) -> Q {
    if s > 0 {
        c.clone()
    } else {
        -c.clone()
    }
}

/// Lexicographic enumeration of the k-subsets of {1..n}, with reverse lookup.
#[derive(Debug)]
pub struct FormBasis {
    pub n: usize,
    pub k: usize,
    masks: Vec<u32>,
    position: Vec<usize>,
}

static BASIS_CACHE: Lazy<Mutex<HashMap<(usize, usize), Arc<FormBasis>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

impl FormBasis {
    pub fn get(n: usize, k: usize) -> Arc<FormBasis> {
        assert!(n <= MAX_DIM && k <= n);
        let mut cache = BASIS_CACHE.lock().unwrap();
        cache.entry((n, k)).or_insert_with(|| Arc::new(FormBasis::build(n, k))).clone()
    }

    fn build(n: usize, k: usize) -> FormBasis {
        let mut masks = Vec::new();
        fn rec(start: usize, n: usize, left: usize, acc: u32, out: &mut Vec<u32>) {
            if left == 0 {
                out.push(acc);
                return;
            }
            for i in start..n {
                if n - i < left {
                    break;
                }
                rec(i + 1, n, left - 1, acc | 1 << i, out);
            }
        }
        rec(0, n, k, 0, &mut masks);
        let mut position = vec![usize::MAX; 1 << n];
        for (i, &m) in masks.iter().enumerate() {
            position[m as usize] = i;
        }
        FormBasis { n, k, masks, position }
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    pub fn mask(&self, i: usize) -> u32 {
        self.masks[i]
    }

    pub fn index_of(&self, mask: u32) -> usize {
        self.position[mask as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    coords: Vec<Q>,
}

impl Vector {
    pub fn new(coords: Vec<Q>) -> Self {
        Vector { coords }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Vector { coords: c.iter().map(|&x| q(x)).collect() }
    }

    /// The basis vector e_i (1-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut coords = vec![Q::zero(); n];
        coords[i - 1] = Q::one();
        Vector { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }
}

/// Alternating k-form on ℝⁿ with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<u32, Q>,
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM && degree <= dim, "form shape out of range");
        KForm { dim, degree, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, c: Q) -> Self {
        let mut f = KForm::zero(dim, 0);
        f.add_term(0, c);
        f
    }

    /// Builds from 1-based index tuples in any order, applying the permutation sign.
    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Q)>,
    {
        if dim == 0 || dim > MAX_DIM || degree > dim {
            return Err(Error::Dimension(format!("form of degree {degree} on R^{dim}")));
        }
        let mut f = KForm::zero(dim, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::Degree(format!("index tuple {idx:?} has length {} != {degree}", idx.len())));
            }
            if idx.iter().any(|&i| i == 0 || i > dim) {
                return Err(Error::Dimension(format!("index tuple {idx:?} out of range 1..={dim}")));
            }
            match normalize_indices(&idx) {
                Some((s, m)) => f.add_term(m, sign_q(s, &c)),
                None => return Err(Error::Degree(format!("repeated index in {idx:?}"))),
            }
        }
        Ok(f)
    }

    /// ω^{i₁…i_k}; panics on malformed indices, intended for literal constants.
    pub fn omega(dim: usize, idx: &[usize]) -> Self {
        KForm::from_terms(dim, idx.len(), [(idx.to_vec(), Q::one())]).expect("valid basis form")
    }

    /// Σ c·ω^{idx} from small integer coefficients; panics on malformed input.
    pub fn from_i64_terms(dim: usize, degree: usize, terms: &[(i64, &[usize])]) -> Self {
        KForm::from_terms(dim, degree, terms.iter().map(|(c, idx)| (idx.to_vec(), q(*c)))).expect("valid terms")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn mask_terms(&self) -> &BTreeMap<u32, Q> {
        &self.terms
    }

    /// Terms in lexicographic order of their index tuples.
    pub fn terms(&self) -> Vec<(Vec<usize>, Q)> {
        let mut v: Vec<(Vec<usize>, Q)> = self.terms.iter().map(|(m, c)| (mask_indices(*m), c.clone())).collect();
        v.sort();
        v
    }

    pub fn coeff(&self, idx: &[usize]) -> Q {
        match normalize_indices(idx) {
            Some((s, m)) => self.terms.get(&m).map_or(Q::zero(), |c| sign_q(s, c)),
            None => Q::zero(),
        }
    }

    /// Coefficient on ω^{1…n}.
    pub fn top_coeff(&self) -> Q {
        let full = (1u32 << self.dim) - 1;
        self.terms.get(&full).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, mask: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn check_same_shape(&self, other: &KForm) -> Result<()> {
        if self.dim != other.dim || self.degree != other.degree {
            return Err(Error::Dimension(format!(
                "forms of shape ({}, {}) and ({}, {})",
                self.dim, self.degree, other.dim, other.degree
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &KForm) -> Result<KForm> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> KForm {
        if s.is_zero() {
            return KForm::zero(self.dim, self.degree);
        }
        KForm { dim: self.dim, degree: self.degree, terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    /// Σ cᵢ·formᵢ for forms of one shape.
    pub fn linear_combination(coeffs: &[Q], forms: &[KForm]) -> Result<KForm> {
        let first = forms.first().ok_or_else(|| Error::Dimension("empty combination".into()))?;
        let mut out = KForm::zero(first.dim, first.degree);
        for (c, f) in coeffs.iter().zip(forms) {
            first.check_same_shape(f)?;
            if c.is_zero() {
                continue;
            }
            for (m, x) in &f.terms {
                out.add_term(*m, c * x);
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &KForm) -> Result<KForm> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("wedge of forms on R^{} and R^{}", self.dim, other.dim)));
        }
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Ok(KForm { dim: self.dim, degree: self.dim, terms: BTreeMap::new() }.with_degree(degree));
        }
        let mut out = KForm::zero(self.dim, degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = ca * cb;
                out.add_term(a | b, sign_q(wedge_sign(*a, *b), &c));
            }
        }
        Ok(out)
    }

    // zero form whose degree exceeds the dimension, kept only as an empty value
    fn with_degree(mut self, degree: usize) -> KForm {
        self.degree = degree;
        self
    }

    pub fn interior(&self, v: &Vector) -> Result<KForm> {
        if v.dim() != self.dim {
            return Err(Error::Dimension(format!("vector in R^{} against form on R^{}", v.dim(), self.dim)));
        }
        if self.degree == 0 {
            return Err(Error::Degree("interior product of a 0-form".into()));
        }
        let mut out = KForm::zero(self.dim, self.degree - 1);
        for (m, c) in &self.terms {
            let mut bits = *m;
            while bits != 0 {
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                let vi = &v.coords[b as usize];
                if vi.is_zero() {
                    continue;
                }
                let before = (m & ((1u32 << b) - 1)).count_ones();
                let s = if before % 2 == 0 { 1 } else { -1 };
                out.add_term(m & !(1 << b), sign_q(s, &(vi * c)));
            }
        }
        Ok(out)
    }

    /// Interior product with the basis vector e_i (1-based).
    pub fn interior_basis(&self, i: usize) -> Result<KForm> {
        self.interior(&Vector::basis(self.dim, i))
    }

    /// M* with M* e^i = Σ_j M_ij e^j, extended multiplicatively.
    pub fn pullback(&self, m: &LinearMap) -> Result<KForm> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Dimension(format!("{}x{} map on R^{}", m.rows(), m.cols(), self.dim)));
        }
        let images: Vec<KForm> = (0..self.dim)
            .map(|i| {
                let mut f = KForm::zero(self.dim, 1);
                for j in 0..self.dim {
                    f.add_term(1 << j, m[(i, j)].clone());
                }
                f
            })
            .collect();
        let mut out = KForm::zero(self.dim, self.degree);
        for (mask, c) in &self.terms {
            let mut acc = KForm::scalar(self.dim, c.clone());
            for i in mask_indices(*mask) {
                acc = acc.wedge(&images[i - 1])?;
                if acc.is_zero() {
                    break;
                }
            }
            for (mm, cc) in acc.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Infinitesimal action A·e^i = −Σ_j A_ij e^j, extended as a derivation.
    pub fn algebra_action(&self, a: &LinearMap) -> Result<KForm> {
        if a.rows() != self.dim || a.cols() != self.dim {
            return Err(Error::Dimension(format!("{}x{} matrix on R^{}", a.rows(), a.cols(), self.dim)));
        }
        let mut out = KForm::zero(self.dim, self.degree);
        for (mask, c) in &self.terms {
            let mut bits = *mask;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let rest = mask & !(1 << i);
                for j in 0..self.dim {
                    let aij = &a[(i, j)];
                    if aij.is_zero() || rest >> j & 1 == 1 {
                        continue;
                    }
                    // replacing index i by j in place: count the indices strictly between them
                    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
                    let between = (rest & ((1u32 << hi) - 1) & !((1u32 << (lo + 1)) - 1)).count_ones();
                    let s = if between % 2 == 0 { -1 } else { 1 };
                    out.add_term(rest | 1 << j, sign_q(s, &(aij * c)));
                }
            }
        }
        Ok(out)
    }

    /// Coefficients in the lexicographic basis of Λᵏ.
    pub fn to_dense(&self) -> Vec<Q> {
        let basis = FormBasis::get(self.dim, self.degree);
        let mut v = vec![Q::zero(); basis.len()];
        for (m, c) in &self.terms {
            v[basis.index_of(*m)] = c.clone();
        }
        v
    }

    pub fn from_dense(dim: usize, degree: usize, coeffs: &[Q]) -> Result<KForm> {
        let basis = FormBasis::get(dim, degree);
        if coeffs.len() != basis.len() {
            return Err(Error::Dimension(format!("{} coefficients for Λ^{degree}(R^{dim})", coeffs.len())));
        }
        let terms = basis
            .masks()
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Ok(KForm { dim, degree, terms })
    }

    pub fn to_real(&self) -> RealForm {
        RealForm { dim: self.dim, degree: self.degree, coeffs: self.to_dense().iter().map(q_to_f64).collect() }
    }
}

impl std::ops::Add for &KForm {
    type Output = KForm;
    fn add(self, rhs: &KForm) -> KForm {
        self.try_add(rhs).expect("shape mismatch in form sum")
    }
}

impl std::ops::Sub for &KForm {
    type Output = KForm;
    fn sub(self, rhs: &KForm) -> KForm {
        self.try_add(&-rhs).expect("shape mismatch in form difference")
    }
}

impl std::ops::Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        KForm { dim: self.dim, degree: self.degree, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .iter()
            .map(|(idx, c)| {
                let name: String = if idx.is_empty() {
                    "1".into()
                } else {
                    format!("e{}", idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(if self.dim > 9 { "," } else { "" }))
                };
                if c.is_one() {
                    name
                } else if *c == -Q::one() {
                    format!("-{name}")
                } else {
                    format!("{}*{name}", q_to_string(c))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm(dim={}, deg={}: {self})", self.dim, self.degree)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    idx: Vec<usize>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct KFormJson {
    dim: usize,
    degree: usize,
    terms: Vec<TermJson>,
}

impl Serialize for KForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KFormJson {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms().into_iter().map(|(idx, c)| TermJson { idx, c: q_to_string(&c) }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = KFormJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            terms.push((t.idx, parse_q(&t.c).map_err(D::Error::custom)?));
        }
        KForm::from_terms(raw.dim, raw.degree, terms).map_err(D::Error::custom)
    }
}

/// Form with floating-point coefficients in the lexicographic basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealForm {
    pub dim: usize,
    pub degree: usize,
    pub coeffs: Vec<f64>,
}

impl RealForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        RealForm { dim, degree, coeffs: vec![0.0; FormBasis::get(dim, degree).len()] }
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &RealForm) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn coeff(&self, idx: &[usize]) -> f64 {
        match normalize_indices(idx) {
            Some((s, m)) => f64::from(s) * self.coeffs[FormBasis::get(self.dim, self.degree).index_of(m)],
            None => 0.0,
        }
    }

    /// max |a - b| over coefficients.
    pub fn max_diff(&self, other: &RealForm) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}
