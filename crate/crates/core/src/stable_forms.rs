//! Orbit classification of 3-forms on ℝ⁷, the induced metric and Hodge star,
//! the 4-form metric, and the G₂-module splittings of Λ² and Λ³.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q_to_string, signature, QMatrix, Q};
use crate::multilinear::{mask_indices, normalize_indices, wedge_sign, FormBasis, KForm, RealForm};

const N: usize = 7;
const FULL: u32 = (1 << N) - 1;

pub fn phi() -> KForm {
    KForm::from_i64_terms(
        7,
        3,
        &[(1, &[1, 2, 3]), (1, &[1, 4, 5]), (1, &[1, 6, 7]), (1, &[2, 4, 6]), (-1, &[2, 5, 7]), (-1, &[3, 4, 7]), (-1, &[3, 5, 6])],
    )
}

pub fn phi_tilde() -> KForm {
    KForm::from_i64_terms(
        7,
        3,
        &[(1, &[1, 2, 3]), (-1, &[1, 4, 5]), (-1, &[1, 6, 7]), (-1, &[2, 4, 6]), (1, &[2, 5, 7]), (1, &[3, 4, 7]), (1, &[3, 5, 6])],
    )
}

/// ∗φ for the Euclidean metric and orientation ω^{1…7}.
pub fn star_phi() -> KForm {
    KForm::from_i64_terms(
        7,
        4,
        &[
            (1, &[4, 5, 6, 7]),
            (1, &[2, 3, 6, 7]),
            (1, &[2, 3, 4, 5]),
            (1, &[1, 3, 5, 7]),
            (-1, &[1, 3, 4, 6]),
            (-1, &[1, 2, 5, 6]),
            (-1, &[1, 2, 4, 7]),
        ],
    )
}

/// The same 4-form with −ω^{2356} in place of −ω^{1256}, as sometimes printed;
/// it is not ann(φ)-invariant and is kept only for comparison reports.
pub fn star_phi_misprint() -> KForm {
    KForm::from_i64_terms(
        7,
        4,
        &[
            (1, &[4, 5, 6, 7]),
            (1, &[2, 3, 6, 7]),
            (1, &[2, 3, 4, 5]),
            (1, &[1, 3, 5, 7]),
            (-1, &[1, 3, 4, 6]),
            (-1, &[2, 3, 5, 6]),
            (-1, &[1, 2, 4, 7]),
        ],
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceForms {
    pub phi: KForm,
    pub phitilde: KForm,
}

impl ReferenceForms {
    pub fn standard() -> Self {
        ReferenceForms { phi: phi(), phitilde: phi_tilde() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orbit3Class {
    Definite,
    Indefinite,
    Degenerate,
}

impl Orbit3Class {
    pub fn from_signature(sig: (usize, usize)) -> Self {
        match sig {
            (7, 0) | (0, 7) => Orbit3Class::Definite,
            (3, 4) | (4, 3) => Orbit3Class::Indefinite,
            _ => Orbit3Class::Degenerate,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Orbit3Class::Definite => "definite",
            Orbit3Class::Indefinite => "indefinite",
            Orbit3Class::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitchinData {
    pub b: QMatrix,
    pub det_b: Q,
    pub signature: (usize, usize),
}

impl HitchinData {
    pub fn class(&self) -> Orbit3Class {
        if self.det_b.is_zero() {
            Orbit3Class::Degenerate
        } else {
            Orbit3Class::from_signature(self.signature)
        }
    }
}

/// CLI-facing classification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub class: Orbit3Class,
    #[serde(rename = "detB")]
    pub det_b: String,
    pub signature: [usize; 2],
}

// One term of B_uv = Σ sign · t_I t_J t_K.
#[derive(Clone, Copy)]
struct BTerm {
    u: u8,
    v: u8,
    i: u8,
    j: u8,
    k: u8,
    sign: i8,
}

// For u ≤ v: every (I ∋ u, J ∋ v, K) with ι_u e^I ∧ ι_v e^J ∧ e^K = ±ω^{1…7}.
static B_TABLE: Lazy<Vec<BTerm>> = Lazy::new(|| {
    let basis = FormBasis::get(N, 3);
    let two = FormBasis::get(N, 2);
    let mut out = Vec::new();
    for u in 0..N {
        for v in u..N {
            for &a in two.masks() {
                if a >> u & 1 == 1 {
                    continue;
                }
                let im = a | 1 << u;
                // ι_{e_u} e^I = (−1)^{#indices before u} e^A
                let si = if (im & ((1 << u) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                for &b in two.masks() {
                    if b >> v & 1 == 1 || a & b != 0 {
                        continue;
                    }
                    let jm = b | 1 << v;
                    let sj = if (jm & ((1 << v) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                    let km = FULL & !(a | b);
                    let s = si * sj * wedge_sign(a, b) * wedge_sign(a | b, km);
                    out.push(BTerm {
                        u: u as u8,
                        v: v as u8,
                        i: basis.index_of(im) as u8,
                        j: basis.index_of(jm) as u8,
                        k: basis.index_of(km) as u8,
                        sign: s,
                    });
                }
            }
        }
    }
    out
});

/// B for integer coefficients in the lexicographic basis, or `None` on overflow.
pub fn hitchin_matrix_i128(t: &[i128]) -> Option<[[i128; N]; N]> {
    debug_assert_eq!(t.len(), 35);
    let mut b = [[0i128; N]; N];
    for term in B_TABLE.iter() {
        let (x, y, z) = (t[term.i as usize], t[term.j as usize], t[term.k as usize]);
        if x == 0 || y == 0 || z == 0 {
            continue;
        }
        let p = x.checked_mul(y)?.checked_mul(z)?;
        let e = &mut b[term.u as usize][term.v as usize];
        *e = if term.sign > 0 { e.checked_add(p)? } else { e.checked_sub(p)? };
    }
    for u in 0..N {
        for v in 0..u {
            b[u][v] = b[v][u];
        }
    }
    Some(b)
}

fn hitchin_matrix_bigint(t: &[BigInt]) -> QMatrix {
    let mut b = vec![vec![BigInt::zero(); N]; N];
    for term in B_TABLE.iter() {
        let (x, y, z) = (&t[term.i as usize], &t[term.j as usize], &t[term.k as usize]);
        if x.is_zero() || y.is_zero() || z.is_zero() {
            continue;
        }
        let p = x * y * z;
        if term.sign > 0 {
            b[term.u as usize][term.v as usize] += p;
        } else {
            b[term.u as usize][term.v as usize] -= p;
        }
    }
    QMatrix::from_fn(N, N, |r, c| Q::from_integer(if r <= c { b[r][c].clone() } else { b[c][r].clone() }))
}

fn check_seven_three(t: &KForm) -> Result<()> {
    if t.dim() != 7 {
        return Err(Error::Dimension(format!("expected a form on R^7, got R^{}", t.dim())));
    }
    if t.degree() != 3 {
        return Err(Error::Degree(format!("expected a 3-form, got degree {}", t.degree())));
    }
    Ok(())
}

/// Dense integer coefficients λ·t and the common denominator λ.
pub fn clear_denominators(coeffs: &[Q]) -> (Vec<BigInt>, BigInt) {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = coeffs.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    (ints, lcm)
}

/// Hitchin's symmetric form from dense coefficients of a 3-form on ℝ⁷.
pub fn hitchin_matrix_dense(coeffs: &[Q]) -> QMatrix {
    let (ints, lcm) = clear_denominators(coeffs);
    let small: Option<Vec<i128>> = ints.iter().map(|x| x.to_i128()).collect();
    let b = match small.as_deref().and_then(hitchin_matrix_i128) {
        Some(b) => QMatrix::from_fn(N, N, |r, c| Q::from_integer(BigInt::from(b[r][c]))),
        None => hitchin_matrix_bigint(&ints),
    };
    if lcm.is_one() {
        b
    } else {
        let l3 = Q::from_integer(&lcm * &lcm * &lcm);
        b.scale(&l3.recip())
    }
}

/// B(u,v) = coefficient of ι_u t ∧ ι_v t ∧ t on ω^{1…7}.
pub fn hitchin_matrix(t: &KForm) -> Result<QMatrix> {
    check_seven_three(t)?;
    Ok(hitchin_matrix_dense(&t.to_dense()))
}

/// Literal evaluation of the defining wedge products; slow, used as an oracle.
pub fn hitchin_matrix_by_wedges(t: &KForm) -> Result<QMatrix> {
    check_seven_three(t)?;
    let contractions: Vec<KForm> = (1..=7).map(|i| t.interior_basis(i)).collect::<Result<_>>()?;
    let mut b = QMatrix::zeros(7, 7);
    for u in 0..7 {
        let p = contractions[u].wedge(t)?;
        for v in 0..7 {
            b[(u, v)] = contractions[v].wedge(&p)?.top_coeff();
        }
    }
    Ok(b)
}

pub fn hitchin_bilinear(t: &KForm) -> Result<HitchinData> {
    let b = hitchin_matrix(t)?;
    Ok(hitchin_data(b))
}

fn hitchin_data(b: QMatrix) -> HitchinData {
    let det_b = b.det();
    let signature = signature(&b);
    HitchinData { b, det_b, signature }
}

pub fn classify3(t: &KForm) -> Result<Orbit3Class> {
    Ok(hitchin_bilinear(t)?.class())
}

/// Classification of integer coefficient vectors, the hot path of the scans.
pub fn classify_i128(t: &[i128]) -> Orbit3Class {
    let b = match hitchin_matrix_i128(t) {
        Some(b) => QMatrix::from_fn(N, N, |r, c| Q::from_integer(BigInt::from(b[r][c]))),
        None => hitchin_matrix_bigint(&t.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()),
    };
    classify_matrix(&b)
}

pub fn classify_dense(coeffs: &[Q]) -> Orbit3Class {
    classify_matrix(&hitchin_matrix_dense(coeffs))
}

fn classify_matrix(b: &QMatrix) -> Orbit3Class {
    // the signature sees a zero pivot as a missing sign, so p + q < 7 exactly when det B = 0
    Orbit3Class::from_signature(signature(b))
}

pub fn classify_report(t: &KForm) -> Result<ClassificationReport> {
    let h = hitchin_bilinear(t)?;
    Ok(ClassificationReport { class: h.class(), det_b: q_to_string(&h.det_b), signature: [h.signature.0, h.signature.1] })
}

/// Induced metric, volume and orientation of a stable 3-form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metric3 {
    pub metric: Vec<Vec<f64>>,
    /// sqrt|det metric|
    pub volume: f64,
    /// +1 when the metric volume form is a positive multiple of ω^{1…7}
    pub orientation: f64,
    pub class: Orbit3Class,
    pub signature: (usize, usize),
}

fn ln_abs(x: &Q) -> f64 {
    let ln_int = |b: &BigInt| {
        let bits = b.bits();
        let shift = bits.saturating_sub(60);
        let top: BigInt = b.abs() >> shift;
        top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    };
    ln_int(x.numer()) - ln_int(x.denom())
}

/// g = ε·B / (6^{2/9} |det B|^{1/9}), so that B = 6·g·vol.
pub fn metric_from_3form(t: &KForm) -> Result<Metric3> {
    let h = hitchin_bilinear(t)?;
    let class = h.class();
    let eps = match (class, h.signature) {
        (Orbit3Class::Degenerate, _) => return Err(Error::Degenerate),
        (Orbit3Class::Definite, (7, 0)) | (Orbit3Class::Indefinite, (3, 4)) => 1.0,
        _ => -1.0,
    };
    let ln_c = (2.0 * 6f64.ln() + ln_abs(&h.det_b)) / 9.0;
    let c = ln_c.exp();
    let metric: Vec<Vec<f64>> = h.b.to_f64().into_iter().map(|row| row.into_iter().map(|x| eps * x / c).collect()).collect();
    let volume = ((ln_abs(&h.det_b) - 7.0 * 6f64.ln()) / 9.0).exp();
    let signature = if eps > 0.0 { h.signature } else { (h.signature.1, h.signature.0) };
    Ok(Metric3 { metric, volume, orientation: eps, class, signature })
}

/// Determinant with partial pivoting, generic over exact and float scalars.
pub fn det_generic<T>(mut m: Vec<Vec<T>>) -> T
where
    T: Clone + Num + Signed + PartialOrd,
{
    let n = m.len();
    let mut det = T::one();
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| m[a][c].abs().partial_cmp(&m[b][c].abs()).unwrap()).unwrap();
        if m[p][c].is_zero() {
            return T::zero();
        }
        if p != c {
            m.swap(p, c);
            det = T::zero() - det;
        }
        let piv = m[c][c].clone();
        det = det * piv.clone();
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone() / piv.clone();
            for k in c..n {
                let t = f.clone() * m[c][k].clone();
                m[r][k] = m[r][k].clone() - t;
            }
        }
    }
    det
}

fn invert_generic<T>(m: &[Vec<T>]) -> Option<Vec<Vec<T>>>
where
    T: Clone + Num + Signed + PartialOrd,
{
    let n = m.len();
    let mut a: Vec<Vec<T>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().partial_cmp(&a[y][c].abs()).unwrap()).unwrap();
        if a[p][c].is_zero() {
            return None;
        }
        a.swap(p, c);
        let piv = a[c][c].clone();
        for k in 0..2 * n {
            a[c][k] = a[c][k].clone() / piv.clone();
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..2 * n {
                let t = f.clone() * a[c][k].clone();
                a[r][k] = a[r][k].clone() - t;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// ∗α = scale · Σ_I α^I sign(I, Iᶜ) e^{Iᶜ}, with α^I raised by Λᵏ(g⁻¹).
fn star_generic<T>(dim: usize, degree: usize, coeffs: &[T], ginv: &[Vec<T>], scale: &T) -> Vec<T>
where
    T: Clone + Num + Signed + PartialOrd,
{
    let src = FormBasis::get(dim, degree);
    let dst = FormBasis::get(dim, dim - degree);
    let full: u32 = (1 << dim) - 1;
    let mut out = vec![T::zero(); dst.len()];
    let support: Vec<usize> = (0..src.len()).filter(|&j| !coeffs[j].is_zero()).collect();
    for &im in src.masks() {
        let rows = mask_indices(im);
        let mut raised = T::zero();
        for &jj in &support {
            let cols = mask_indices(src.mask(jj));
            let minor: Vec<Vec<T>> =
                rows.iter().map(|&r| cols.iter().map(|&c| ginv[r - 1][c - 1].clone()).collect()).collect();
            raised = raised + det_generic(minor) * coeffs[jj].clone();
        }
        if raised.is_zero() {
            continue;
        }
        let comp = full & !im;
        let s = wedge_sign(im, comp);
        let v = scale.clone() * raised;
        let k = dst.index_of(comp);
        out[k] = if s > 0 { out[k].clone() + v } else { out[k].clone() - v };
    }
    out
}

/// Hodge star of a float form for the metric and orientation of `m`.
pub fn hodge_star_real(a: &RealForm, m: &Metric3) -> RealForm {
    let ginv = invert_generic(&m.metric).expect("nondegenerate metric");
    let coeffs = star_generic(a.dim, a.degree, &a.coeffs, &ginv, &(m.orientation * m.volume));
    RealForm { dim: a.dim, degree: a.dim - a.degree, coeffs }
}

/// Hodge star of `a` for the metric and orientation induced by the stable form `t`.
pub fn hodge_star(a: &KForm, t: &KForm) -> Result<RealForm> {
    let m = metric_from_3form(t)?;
    if a.dim() != 7 {
        return Err(Error::Dimension(format!("star of a form on R^{}", a.dim())));
    }
    Ok(hodge_star_real(&a.to_real(), &m))
}

/// Exact Hodge star for a rational metric whose signed volume factor is rational.
pub fn hodge_star_exact(a: &KForm, ginv: &QMatrix, signed_volume: &Q) -> KForm {
    let g: Vec<Vec<Q>> = ginv.to_rows();
    let coeffs = star_generic(a.dim(), a.degree(), &a.to_dense(), &g, signed_volume);
    KForm::from_dense(a.dim(), a.dim() - a.degree(), &coeffs).expect("shape")
}

/// Euclidean Hodge star with orientation ω^{1…n}.
pub fn star_euclidean(a: &KForm) -> KForm {
    let full: u32 = (1 << a.dim()) - 1;
    let terms = a.mask_terms().iter().map(|(m, c)| {
        let comp = full & !m;
        let s = wedge_sign(*m, comp);
        (mask_indices(comp), if s > 0 { c.clone() } else { -c.clone() })
    });
    KForm::from_terms(a.dim(), a.dim() - a.degree(), terms).expect("shape")
}

/// The bilinear form on covectors induced by a 4-form, valued in (Λ⁷)² trivialized by ω^{1…7}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric4Data {
    pub gdual: QMatrix,
}

impl Metric4Data {
    pub fn det(&self) -> Q {
        self.gdual.det()
    }

    pub fn is_stable(&self) -> bool {
        !self.det().is_zero()
    }
}

/// Λ⁴V* ≅ Λ³V ⊗ Λ⁷V*: e^J ↦ sign(Jᶜ, J) e_{Jᶜ}; coefficients of the 3-vector.
pub fn four_form_to_trivector(p: &KForm) -> Result<Vec<Q>> {
    if p.dim() != 7 || p.degree() != 4 {
        return Err(Error::Degree(format!("expected a 4-form on R^7, got ({}, {})", p.dim(), p.degree())));
    }
    let basis = FormBasis::get(7, 3);
    let mut out = vec![Q::zero(); basis.len()];
    for (m, c) in p.mask_terms() {
        let comp = FULL & !m;
        let s = wedge_sign(comp, *m);
        out[basis.index_of(comp)] = if s > 0 { c.clone() } else { -c.clone() };
    }
    Ok(out)
}

/// gdual(X*, Y*) = (X*⌟p̂) ∧ (Y*⌟p̂) ∧ p̂ for the dual 3-vector p̂ of p.
pub fn metric_from_4form(p: &KForm) -> Result<Metric4Data> {
    let tri = four_form_to_trivector(p)?;
    Ok(Metric4Data { gdual: hitchin_matrix_dense(&tri) })
}

/// Stabilizer algebra {A ∈ gl(n) : A·t = 0}.
pub fn annihilator(t: &KForm) -> Vec<QMatrix> {
    let n = t.dim();
    let cols: Vec<Vec<Q>> = (0..n * n)
        .map(|e| {
            let mut a = QMatrix::zeros(n, n);
            a[(e / n, e % n)] = Q::one();
            t.algebra_action(&a).expect("shape").to_dense()
        })
        .collect();
    let rows = cols[0].len();
    let m = QMatrix::from_cols(&cols, rows);
    m.null_space().into_iter().map(|v| QMatrix::from_fn(n, n, |r, c| v[r * n + c].clone())).collect()
}

/// Orthogonal projector onto the span of independent vectors, standard inner product.
pub fn orthogonal_projector(vectors: &[Vec<Q>], n: usize) -> QMatrix {
    if vectors.is_empty() {
        return QMatrix::zeros(n, n);
    }
    let u = QMatrix::from_cols(vectors, n);
    let gram = u.transpose().mul(&u);
    u.mul(&gram.inverse().expect("independent vectors")).mul(&u.transpose())
}

/// Exact projectors for Λ² = Λ²₁₄ ⊕ Λ²₇ and Λ³ = Λ³₁ ⊕ Λ³₇ ⊕ Λ³₂₇ relative to φ.
pub struct G2Decomposition {
    pub p2_14: QMatrix,
    pub p2_7: QMatrix,
    pub p3_1: QMatrix,
    pub p3_7: QMatrix,
    pub p3_27: QMatrix,
}

static DECOMPOSITION: Lazy<G2Decomposition> = Lazy::new(|| {
    let phi = phi();
    let sphi = star_phi();
    let l2_7: Vec<Vec<Q>> = (1..=7).map(|i| phi.interior_basis(i).unwrap().to_dense()).collect();
    let p2_7 = orthogonal_projector(&l2_7, 21);
    let p2_14 = QMatrix::identity(21).sub(&p2_7);
    let p3_1 = orthogonal_projector(&[phi.to_dense()], 35);
    let l3_7: Vec<Vec<Q>> = (1..=7).map(|i| sphi.interior_basis(i).unwrap().to_dense()).collect();
    let p3_7 = orthogonal_projector(&l3_7, 35);
    let p3_27 = QMatrix::identity(35).sub(&p3_1).sub(&p3_7);
    G2Decomposition { p2_14, p2_7, p3_1, p3_7, p3_27 }
});

pub fn g2_decomposition() -> &'static G2Decomposition {
    &DECOMPOSITION
}

fn project(p: &QMatrix, a: &KForm) -> KForm {
    KForm::from_dense(a.dim(), a.degree(), &p.mul_vec(&a.to_dense())).expect("shape")
}

fn check_shape(a: &KForm, degree: usize) -> Result<()> {
    if a.dim() != 7 || a.degree() != degree {
        return Err(Error::Degree(format!("expected a {degree}-form on R^7, got ({}, {})", a.dim(), a.degree())));
    }
    Ok(())
}

/// (part14, part7) of a 2-form.
pub fn decompose2(a: &KForm) -> Result<(KForm, KForm)> {
    check_shape(a, 2)?;
    let d = g2_decomposition();
    Ok((project(&d.p2_14, a), project(&d.p2_7, a)))
}

/// (part1, part7, part27) of a 3-form.
pub fn decompose3(a: &KForm) -> Result<(KForm, KForm, KForm)> {
    check_shape(a, 3)?;
    let d = g2_decomposition();
    Ok((project(&d.p3_1, a), project(&d.p3_7, a), project(&d.p3_27, a)))
}

/// i_φ(S) = Σ S_ij e^i ∧ ∗(e^j ∧ ∗φ) for a symmetric matrix S.
pub fn i_phi(s: &QMatrix) -> Result<KForm> {
    if s.rows() != 7 || !s.is_symmetric() {
        return Err(Error::Dimension("i_phi needs a symmetric 7x7 matrix".into()));
    }
    let sphi = star_phi();
    let mut out = KForm::zero(7, 3);
    for j in 1..=7 {
        let inner = star_euclidean(&KForm::omega(7, &[j]).wedge(&sphi)?);
        for i in 1..=7 {
            let c = &s[(i - 1, j - 1)];
            if !c.is_zero() {
                out = &out + &KForm::omega(7, &[i]).wedge(&inner)?.scale(c);
            }
        }
    }
    Ok(out)
}

/// A 2-form from a skew matrix: A ↦ Σ_{i<j} A_ij e^{ij}.
pub fn skew_to_two_form(a: &QMatrix) -> KForm {
    let n = a.rows();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            terms.push((vec![i + 1, j + 1], a[(i, j)].clone()));
        }
    }
    KForm::from_terms(n, 2, terms).expect("shape")
}

/// Recomputes the coefficient of an index tuple on a dense vector; small helper for reports.
pub fn dense_coeff(dim: usize, degree: usize, dense: &[Q], idx: &[usize]) -> Q {
    match normalize_indices(idx) {
        Some((s, m)) => {
            let c = &dense[FormBasis::get(dim, degree).index_of(m)];
            if s > 0 {
                c.clone()
            } else {
                -c.clone()
            }
        }
        None => Q::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn reference_forms_sum() {
        let r = ReferenceForms::standard();
        assert_eq!(&r.phi + &r.phitilde, KForm::omega(7, &[1, 2, 3]).scale(&q(2)));
    }

    #[test]
    fn hitchin_matrices_of_references() {
        assert_eq!(hitchin_matrix(&phi()).unwrap(), QMatrix::identity(7).scale(&q(6)));
        let d = QMatrix::diag(&[q(6), q(6), q(6), q(-6), q(-6), q(-6), q(-6)]);
        assert_eq!(hitchin_matrix(&phi_tilde()).unwrap(), d);
        assert!(hitchin_matrix(&KForm::omega(7, &[1, 2, 3])).unwrap().is_zero());
    }

    #[test]
    fn fast_table_matches_wedges() {
        let t = &phi() + &KForm::from_i64_terms(7, 3, &[(3, &[1, 2, 4]), (-2, &[3, 5, 7]), (5, &[2, 6, 7])]);
        assert_eq!(hitchin_matrix(&t).unwrap(), hitchin_matrix_by_wedges(&t).unwrap());
        let t = t.scale(&crate::linalg::qf(2, 3));
        assert_eq!(hitchin_matrix(&t).unwrap(), hitchin_matrix_by_wedges(&t).unwrap());
    }

    #[test]
    fn classification_of_references() {
        assert_eq!(classify3(&phi()).unwrap(), Orbit3Class::Definite);
        assert_eq!(classify3(&phi_tilde()).unwrap(), Orbit3Class::Indefinite);
        assert_eq!(classify3(&(&phi() + &phi_tilde())).unwrap(), Orbit3Class::Degenerate);
        assert_eq!(classify3(&-&phi()).unwrap(), Orbit3Class::Definite);
        assert_eq!(classify3(&-&phi_tilde()).unwrap(), Orbit3Class::Indefinite);
        assert!(classify3(&KForm::omega(7, &[1, 2])).is_err());
    }

    #[test]
    fn metric_of_phi_is_identity() {
        let m = metric_from_3form(&phi()).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((m.metric[i][j] - e).abs() < 1e-12);
            }
        }
        assert!((m.volume - 1.0).abs() < 1e-12);
        assert_eq!(m.orientation, 1.0);
    }

    #[test]
    fn metric_of_phitilde_has_positive_three_block() {
        let m = metric_from_3form(&phi_tilde()).unwrap();
        assert_eq!(m.signature, (3, 4));
        for i in 0..7 {
            let e = if i < 3 { 1.0 } else { -1.0 };
            assert!((m.metric[i][i] - e).abs() < 1e-12);
        }
    }

    #[test]
    fn star_of_phi_exact_and_float() {
        assert_eq!(star_euclidean(&phi()), star_phi());
        let s = hodge_star(&phi(), &phi()).unwrap();
        assert!(s.max_diff(&star_phi().to_real()) < 1e-12);
        let one = hodge_star(&KForm::scalar(7, q(1)), &phi()).unwrap();
        assert!((one.coeffs[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn star_phi_is_invariant_and_misprint_is_not() {
        for a in annihilator(&phi()) {
            assert!(star_phi().algebra_action(&a).unwrap().is_zero());
        }
        assert!(annihilator(&phi()).iter().any(|a| !star_phi_misprint().algebra_action(a).unwrap().is_zero()));
    }

    #[test]
    fn four_form_metric_basics() {
        assert!(metric_from_4form(&KForm::omega(7, &[4, 5, 6, 7])).unwrap().gdual.is_zero());
        assert_eq!(metric_from_4form(&star_phi()).unwrap().gdual, QMatrix::identity(7).scale(&q(6)));
    }

    #[test]
    fn decomposition_dimensions() {
        let d = g2_decomposition();
        assert_eq!(d.p2_14.rank(), 14);
        assert_eq!(d.p2_7.rank(), 7);
        assert_eq!(d.p3_1.rank(), 1);
        assert_eq!(d.p3_7.rank(), 7);
        assert_eq!(d.p3_27.rank(), 27);
        assert_eq!(decompose3(&phi()).unwrap(), (phi(), KForm::zero(7, 3), KForm::zero(7, 3)));
    }
}
