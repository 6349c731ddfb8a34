//! The invariant de Rham complex of G/H: Chevalley–Eilenberg differential on
//! invariant forms over V, closedness tests and the nearly-parallel equation.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{invariant_forms, IsotropyModule, MatrixLieAlgebra};
use crate::linalg::{q, q_to_f64, CoordSolver, QMatrix, Q};
use crate::multilinear::{FormBasis, KForm, RealForm};
use crate::stable_forms::{classify3, hodge_star, hodge_star_exact, metric_from_3form, Orbit3Class};

/// Relative tolerance for star-dependent residuals.
pub const STAR_TOL: f64 = 1e-9;

/// d e^m = −Σ_{i<j} c^m_{ij} e^{ij} on V*.
fn differential_of_coframe(bracket: &[Vec<Vec<Q>>]) -> Vec<KForm> {
    let n = bracket.len();
    (0..n)
        .map(|m| {
            let mut terms = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let c = &bracket[i][j][m];
                    if !c.is_zero() {
                        terms.push((vec![i + 1, j + 1], -c.clone()));
                    }
                }
            }
            KForm::from_terms(n, 2, terms).expect("valid indices")
        })
        .collect()
}

fn require_bracket(m: &IsotropyModule) -> Result<&[Vec<Vec<Q>>]> {
    m.bracket().ok_or_else(|| Error::Unsupported(format!("{}: module has no bracket on V", m.label)))
}

/// CE differential of an arbitrary form on V (no invariance check).
pub fn ce_differential_raw(m: &IsotropyModule, a: &KForm) -> Result<KForm> {
    let bracket = require_bracket(m)?;
    if a.dim() != m.dim() {
        return Err(Error::Dimension(format!("form on R^{} for a module of dim {}", a.dim(), m.dim())));
    }
    let de = differential_of_coframe(bracket);
    Ok(apply_d(&de, a))
}

fn apply_d(de: &[KForm], a: &KForm) -> KForm {
    let n = a.dim();
    let mut out = KForm::zero(n, (a.degree() + 1).min(n));
    if a.degree() >= n {
        return KForm::zero(n, n);
    }
    for (idx, c) in a.terms() {
        // d(e^{i1…ik}) = Σ_p (−1)^p e^{i1…i(p−1)} ∧ de^{ip} ∧ e^{i(p+1)…ik}
        for (p, &ip) in idx.iter().enumerate() {
            if de[ip - 1].is_zero() {
                continue;
            }
            let left = KForm::omega(n, &idx[..p]);
            let right = KForm::omega(n, &idx[p + 1..]);
            let piece = left.wedge(&de[ip - 1]).and_then(|x| x.wedge(&right)).expect("same dim");
            let s = if p % 2 == 0 { c.clone() } else { -c.clone() };
            out = &out + &piece.scale(&s);
        }
    }
    out
}

pub fn is_invariant(m: &IsotropyModule, a: &KForm) -> bool {
    m.action().iter().all(|x| a.algebra_action(x).map(|f| f.is_zero()).unwrap_or(false))
        && m.finite_generators().iter().all(|g| a.pullback(&g.matrix).map(|f| &f == a).unwrap_or(false))
}

/// CE differential of an invariant form; the input and output invariance are asserted exactly.
pub fn ce_differential(m: &IsotropyModule, a: &KForm) -> Result<KForm> {
    if !is_invariant(m, a) {
        return Err(Error::NotInvariant);
    }
    let d = ce_differential_raw(m, a)?;
    if !is_invariant(m, &d) {
        return Err(Error::Internal("differential of an invariant form is not invariant".into()));
    }
    Ok(d)
}

/// Matrix of d: Λᵏ → Λᵏ⁺¹ on all forms in the lexicographic bases.
pub fn ce_matrix(m: &IsotropyModule, k: usize) -> Result<QMatrix> {
    let bracket = require_bracket(m)?;
    let n = m.dim();
    let de = differential_of_coframe(bracket);
    let src = FormBasis::get(n, k);
    let dst = FormBasis::get(n, (k + 1).min(n));
    let rows = if k >= n { 0 } else { dst.len() };
    let cols: Vec<Vec<Q>> = (0..src.len())
        .into_par_iter()
        .map(|i| {
            let mut e = vec![Q::zero(); src.len()];
            e[i] = Q::one();
            let f = KForm::from_dense(n, k, &e).expect("shape");
            if k >= n {
                Vec::new()
            } else {
                apply_d(&de, &f).to_dense()
            }
        })
        .collect();
    Ok(QMatrix::from_cols(&cols, rows))
}

/// Ω(X,Y,Z) = ⟨X,[Y,Z]⟩ on V, using the module's inner product and projected bracket.
pub fn cartan_3form_on_v(m: &IsotropyModule) -> Result<KForm> {
    let bracket = require_bracket(m)?;
    let n = m.dim();
    let g = m.gram();
    let mut terms = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let v = crate::linalg::dot(&g.mul_vec(&bracket[b][c]), &unit(n, a));
                if !v.is_zero() {
                    terms.push((vec![a + 1, b + 1, c + 1], v));
                }
            }
        }
    }
    KForm::from_terms(n, 3, terms)
}

/// Cartan 3-form of a whole algebra; alternation is checked from ad-invariance.
pub fn cartan_3form(g: &MatrixLieAlgebra) -> Result<KForm> {
    if !g.form_is_invariant() {
        return Err(Error::Internal(format!("{}: trace form is not ad-invariant", g.name)));
    }
    cartan_3form_on_v(&trivial_module(g)?)
}

/// The h = 0 module V = g.
pub fn trivial_module(g: &MatrixLieAlgebra) -> Result<IsotropyModule> {
    let n = g.dim();
    let c: Vec<Vec<Vec<Q>>> = (0..n).map(|i| (0..n).map(|j| g.structure(i, j).to_vec()).collect()).collect();
    let mut m = IsotropyModule::from_structure_constants(&g.name, c)?;
    m.set_gram(g.gram())?;
    Ok(m)
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// Invariant forms of every degree and the differential between them.
#[derive(Clone, Debug)]
pub struct InvariantComplex {
    pub module: IsotropyModule,
    bases: Vec<Vec<KForm>>,
    diffs: Vec<QMatrix>,
}

impl InvariantComplex {
    pub fn new(m: &IsotropyModule) -> Result<Self> {
        let n = m.dim();
        let bracket = require_bracket(m)?;
        let de = differential_of_coframe(bracket);
        let bases: Vec<Vec<KForm>> = (0..=n).into_par_iter().map(|k| invariant_forms(m, k)).collect();
        let mut diffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let target = if k < n { &bases[k + 1] } else { &bases[k] };
            let rows = if k < n { target.len() } else { 0 };
            let dense: Vec<Vec<Q>> = target.iter().map(|f| f.to_dense()).collect();
            let solver = if dense.is_empty() { None } else { Some(CoordSolver::new(&dense)?) };
            let mut cols = Vec::with_capacity(bases[k].len());
            for b in &bases[k] {
                if k >= n {
                    cols.push(Vec::new());
                    continue;
                }
                let d = apply_d(&de, b);
                let c = match &solver {
                    Some(s) => s.coords(&d.to_dense()).ok_or_else(|| Error::Internal("d leaves the invariant forms".into()))?,
                    None if d.is_zero() => Vec::new(),
                    None => return Err(Error::Internal("d leaves the invariant forms".into())),
                };
                cols.push(c);
            }
            diffs.push(QMatrix::from_cols(&cols, rows));
        }
        Ok(InvariantComplex { module: m.clone(), bases, diffs })
    }

    pub fn basis(&self, k: usize) -> &[KForm] {
        &self.bases[k]
    }

    /// d_k in the invariant bases.
    pub fn differential(&self, k: usize) -> &QMatrix {
        &self.diffs[k]
    }

    pub fn squares_to_zero(&self) -> bool {
        (0..self.diffs.len().saturating_sub(1)).all(|k| {
            let (a, b) = (&self.diffs[k + 1], &self.diffs[k]);
            a.rows() == 0 || b.cols() == 0 || a.cols() == 0 || a.mul(b).is_zero()
        })
    }

    pub fn ranks(&self) -> ComplexRanks {
        let dims: Vec<usize> = self.bases.iter().map(|b| b.len()).collect();
        let ranks: Vec<usize> = self.diffs.iter().map(|d| if d.rows() == 0 || d.cols() == 0 { 0 } else { d.rank() }).collect();
        let kernels = dims.iter().zip(&ranks).map(|(d, r)| d - r).collect();
        ComplexRanks { dims, ranks, kernels }
    }
}

/// Per degree: dim Ωᵏ, rank dₖ and dim ker dₖ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexRanks {
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub kernels: Vec<usize>,
}

impl ComplexRanks {
    pub fn is_consistent(&self) -> bool {
        let n = self.dims.len();
        (0..n).all(|k| self.ranks[k] + self.kernels[k] == self.dims[k])
            && (0..n.saturating_sub(1)).all(|k| self.ranks[k] <= self.kernels[k + 1])
    }
}

pub fn complex_ranks(c: &InvariantComplex) -> ComplexRanks {
    c.ranks()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NearlyParallelResult {
    pub lambda: f64,
    pub residual: f64,
    pub is_nearly_parallel: bool,
    pub torsion_free: bool,
    pub class: Orbit3Class,
}

/// Least-squares λ in dt = λ∗t; nearly parallel iff the relative residual is below tolerance and dt ≠ 0.
pub fn nearly_parallel_check(m: &IsotropyModule, t: &KForm) -> Result<NearlyParallelResult> {
    let class = classify3(t)?;
    if class == Orbit3Class::Degenerate {
        return Err(Error::Degenerate);
    }
    let dt = ce_differential(m, t)?;
    let star = hodge_star(t, t)?;
    if dt.is_zero() {
        return Ok(NearlyParallelResult { lambda: 0.0, residual: 0.0, is_nearly_parallel: false, torsion_free: true, class });
    }
    let dtr = dt.to_real();
    let lambda = dtr.dot(&star) / star.dot(&star);
    let residual = dtr.coeffs.iter().zip(&star.coeffs).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
    let rel = residual / dtr.norm();
    Ok(NearlyParallelResult {
        lambda,
        residual: rel,
        is_nearly_parallel: rel <= STAR_TOL && lambda.abs() > STAR_TOL,
        torsion_free: false,
        class,
    })
}

fn apply_real(d: &QMatrix, a: &RealForm) -> Vec<f64> {
    let df = d.to_f64();
    df.iter().map(|row| row.iter().zip(&a.coeffs).map(|(x, y)| x * y).sum()).collect()
}

fn frobenius(d: &QMatrix) -> f64 {
    d.entries().iter().map(|x| q_to_f64(x).powi(2)).sum::<f64>().sqrt()
}

/// Relative size of d(∗t).
pub fn coclosed_residual(m: &IsotropyModule, t: &KForm) -> Result<f64> {
    if classify3(t)? == Orbit3Class::Degenerate {
        return Err(Error::Degenerate);
    }
    let star = hodge_star(t, t)?;
    let d4 = ce_matrix(m, 4)?;
    let d = apply_real(&d4, &star);
    let nd = d.iter().map(|x| x * x).sum::<f64>().sqrt();
    let scale = frobenius(&d4).max(1.0) * star.norm();
    Ok(if scale == 0.0 { 0.0 } else { nd / scale })
}

pub fn coclosed_check(m: &IsotropyModule, t: &KForm) -> Result<bool> {
    Ok(coclosed_residual(m, t)? <= STAR_TOL)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFormAnalysis {
    pub dim: usize,
    pub all_closed: bool,
}

pub fn invariant_2form_analysis(m: &IsotropyModule) -> Result<TwoFormAnalysis> {
    let forms = invariant_forms(m, 2);
    let mut all_closed = true;
    for f in &forms {
        all_closed &= ce_differential(m, f)?.is_zero();
    }
    Ok(TwoFormAnalysis { dim: forms.len(), all_closed })
}

/// dim of the space of invariant 3-forms whose dual 4-form is closed near t: the closed
/// invariant 4-forms, i.e. dim ker d on Ω⁴ (= dim dΩ³ + the 4th cohomology of the complex).
pub fn coclosed_stable_family_dim(m: &IsotropyModule, t: &KForm) -> Result<usize> {
    if !coclosed_check(m, t)? {
        return Err(Error::Internal("reference form is not coclosed".into()));
    }
    let c = InvariantComplex::new(m)?;
    Ok(c.ranks().kernels[4])
}

/// Rational approximation of a float, exact for small denominators.
pub fn rationalize(x: f64, max_den: i64) -> Q {
    // continued fraction with bounded denominator
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    Q::new(h1.into(), k1.max(1).into())
}

/// Exact ∗t when the induced metric and volume are rational (checked against the float star).
pub fn rational_star(t: &KForm) -> Result<Option<KForm>> {
    let m = metric_from_3form(t)?;
    let n = t.dim();
    let g = QMatrix::from_fn(n, n, |r, c| rationalize(m.metric[r][c], 1_000_000));
    let vol = rationalize(m.orientation * m.volume, 1_000_000);
    let ginv = match g.inverse() {
        Some(x) => x,
        None => return Ok(None),
    };
    let exact = hodge_star_exact(t, &ginv, &vol);
    let float = hodge_star(t, t)?;
    let ok = exact.to_real().max_diff(&float) <= 1e-12 * float.norm().max(1.0);
    // B = 6·g·vol must hold exactly for the rationalized metric
    let b = crate::stable_forms::hitchin_matrix(t)?;
    let ok = ok && b == g.scale(&(q(6) * vol.abs()) ).scale(&if m.orientation > 0.0 { Q::one() } else { -Q::one() });
    Ok(ok.then_some(exact))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RaySolution {
    /// integer coefficients of the ray in the invariant basis
    pub coeffs: Vec<String>,
    pub theta: f64,
    pub check: NearlyParallelResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RaySearch {
    pub grid: usize,
    pub definite_fraction: f64,
    pub rays: Vec<RaySolution>,
}

fn ray_form(basis: &[KForm], theta: f64) -> KForm {
    const SCALE: f64 = 1e12;
    let c = [q((theta.cos() * SCALE).round() as i64), q((theta.sin() * SCALE).round() as i64)];
    KForm::linear_combination(&c, basis).expect("shape")
}

/// Nearly-parallel rays in the definite part of a 2-dimensional invariant family.
///
/// Both dt and ∗t lie in the 2-dimensional space of invariant 4-forms; a ray is nearly
/// parallel exactly when they are proportional, detected as a zero of their normalized
/// cross product in an orthonormal basis of that space.
pub fn nearly_parallel_rays(m: &IsotropyModule, grid: usize) -> Result<RaySearch> {
    let basis = invariant_forms(m, 3);
    if basis.len() != 2 {
        return Err(Error::Unsupported(format!("ray search needs d3 = 2, got {}", basis.len())));
    }
    let fours = invariant_forms(m, 4);
    if fours.len() != 2 {
        return Err(Error::Unsupported(format!("ray search needs 2 invariant 4-forms, got {}", fours.len())));
    }
    let d3: Vec<KForm> = basis.iter().map(|b| ce_differential(m, b)).collect::<Result<_>>()?;
    // orthonormal frame (u, w) of the invariant 4-forms in coefficient space
    let u0: Vec<f64> = fours[0].to_dense().iter().map(q_to_f64).collect();
    let w0: Vec<f64> = fours[1].to_dense().iter().map(q_to_f64).collect();
    let dotf = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let nu = dotf(&u0, &u0).sqrt();
    let u: Vec<f64> = u0.iter().map(|x| x / nu).collect();
    let c = dotf(&w0, &u);
    let w1: Vec<f64> = w0.iter().zip(&u).map(|(x, y)| x - c * y).collect();
    let nw = dotf(&w1, &w1).sqrt();
    let w: Vec<f64> = w1.iter().map(|x| x / nw).collect();
    let s = |theta: f64| -> Option<f64> {
        let t = ray_form(&basis, theta);
        match classify3(&t) {
            Ok(Orbit3Class::Definite) => {
                let star = hodge_star(&t, &t).ok()?;
                let dt = KForm::linear_combination(&[q((theta.cos() * 1e12).round() as i64), q((theta.sin() * 1e12).round() as i64)], &d3)
                    .ok()?
                    .to_real();
                let (a1, a2) = (dotf(&dt.coeffs, &u), dotf(&dt.coeffs, &w));
                let (b1, b2) = (dotf(&star.coeffs, &u), dotf(&star.coeffs, &w));
                let scale = (a1.hypot(a2) * b1.hypot(b2)).max(f64::MIN_POSITIVE);
                Some((a1 * b2 - a2 * b1) / scale)
            }
            _ => None,
        }
    };
    let thetas: Vec<f64> = (0..grid).map(|i| std::f64::consts::PI * 2.0 * i as f64 / grid as f64).collect();
    let values: Vec<Option<f64>> = thetas.par_iter().map(|&th| s(th)).collect();
    let definite = values.iter().filter(|v| v.is_some()).count();
    let mut roots: Vec<f64> = Vec::new();
    for i in 0..grid {
        let j = (i + 1) % grid;
        let (a, b) = match (values[i], values[j]) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        if a == 0.0 || a.signum() != b.signum() {
            let (mut lo, mut hi) = (thetas[i], if j == 0 { 2.0 * std::f64::consts::PI } else { thetas[j] });
            let mut flo = a;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                match s(mid) {
                    Some(fm) if fm == 0.0 => {
                        lo = mid;
                        hi = mid;
                        break;
                    }
                    Some(fm) if fm.signum() == flo.signum() => {
                        lo = mid;
                        flo = fm;
                    }
                    Some(_) => hi = mid,
                    None => break,
                }
            }
            roots.push(0.5 * (lo + hi));
        }
    }
    // t and −t give the same structure up to orientation: keep one root per ray mod π
    let mut rays: Vec<RaySolution> = Vec::new();
    for th in roots {
        let rep = th.rem_euclid(std::f64::consts::PI);
        if rays.iter().any(|r| {
            let d = (r.theta - rep).abs();
            d < 1e-6 || (std::f64::consts::PI - d) < 1e-6
        }) {
            continue;
        }
        let t = ray_form(&basis, rep);
        let check = nearly_parallel_check(m, &t)?;
        if check.is_nearly_parallel {
            let coeffs = vec![(rep.cos() * 1e12).round().to_string(), (rep.sin() * 1e12).round().to_string()];
            rays.push(RaySolution { coeffs, theta: rep, check });
        }
    }
    Ok(RaySearch { grid, definite_fraction: definite as f64 / grid as f64, rays })
}

/// Classifies rational points of the circle in a 2-dim family and checks coclosedness of each stable one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoclosedSweep {
    pub samples: usize,
    pub stable: usize,
    pub coclosed: usize,
    pub max_residual: f64,
}

pub fn coclosed_sweep(m: &IsotropyModule, samples: usize) -> Result<CoclosedSweep> {
    let basis = invariant_forms(m, 3);
    let d4 = ce_matrix(m, 4)?;
    let scale = frobenius(&d4).max(1.0);
    let pts = circle_points(samples);
    let results: Vec<Option<f64>> = pts
        .par_iter()
        .map(|(a, b)| {
            let t = KForm::linear_combination(&[q(*a), q(*b)], &basis[..2]).expect("shape");
            match classify3(&t) {
                Ok(Orbit3Class::Degenerate) | Err(_) => None,
                Ok(_) => {
                    let star = hodge_star(&t, &t).ok()?;
                    let d = apply_real(&d4, &star);
                    Some(d.iter().map(|x| x * x).sum::<f64>().sqrt() / (scale * star.norm()))
                }
            }
        })
        .collect();
    let stable = results.iter().filter(|r| r.is_some()).count();
    let coclosed = results.iter().filter(|r| matches!(r, Some(x) if *x <= STAR_TOL)).count();
    let max_residual = results.iter().flatten().cloned().fold(0.0, f64::max);
    Ok(CoclosedSweep { samples: pts.len(), stable, coclosed, max_residual })
}

/// Integer points (2uD, u² − D²) on rays through the unit circle, u tan-spaced.
pub fn circle_points(n: usize) -> Vec<(i64, i64)> {
    const DEN: i64 = 1000;
    (0..n)
        .map(|i| {
            let theta = -std::f64::consts::PI + (i as f64 + 0.5) * 2.0 * std::f64::consts::PI / n as f64;
            let u = ((theta / 2.0).tan() * DEN as f64).round() as i64;
            (2 * u * DEN, u * u - DEN * DEN)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedScan {
    pub closed_dim: usize,
    pub samples: usize,
    pub definite: usize,
    pub indefinite: usize,
    pub degenerate: usize,
    pub note: String,
}

/// Classifies seeded integer combinations of a basis of closed invariant 3-forms.
pub fn closed_stable_scan(m: &IsotropyModule, samples: usize, seed: u64) -> Result<ClosedScan> {
    use rand::{Rng, SeedableRng};
    let d3 = ce_matrix(m, 3)?;
    let kernel = d3.null_space();
    let closed_dim = kernel.len();
    let ints: Vec<Vec<i128>> = kernel
        .iter()
        .map(|v| {
            let (ints, _) = crate::stable_forms::clear_denominators(v);
            ints.iter().map(|x| x.to_i128().expect("small")).collect()
        })
        .collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let combos: Vec<Vec<i64>> = (0..samples)
        .map(|i| {
            if i < closed_dim {
                (0..closed_dim).map(|j| i64::from(i == j)).collect()
            } else {
                (0..closed_dim).map(|_| rng.gen_range(-20..=20)).collect()
            }
        })
        .collect();
    let classes: Vec<Orbit3Class> = combos
        .par_iter()
        .map(|c| {
            let mut t = vec![0i128; 35];
            for (ci, b) in c.iter().zip(&ints) {
                for (ti, bi) in t.iter_mut().zip(b) {
                    *ti += i128::from(*ci) * bi;
                }
            }
            crate::stable_forms::classify_i128(&t)
        })
        .collect();
    let count = |k: Orbit3Class| classes.iter().filter(|c| **c == k).count();
    let (definite, indefinite) = (count(Orbit3Class::Definite), count(Orbit3Class::Indefinite));
    let note = if definite + indefinite == 0 {
        "no stable closed form found among the samples; this is evidence, not a proof".to_string()
    } else {
        "stable closed forms found".to_string()
    };
    Ok(ClosedScan { closed_dim, samples: combos.len(), definite, indefinite, degenerate: count(Orbit3Class::Degenerate), note })
}

/// Sign helper used by reports: exact sign of a rational as −1, 0, 1.
pub fn sign_of(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{abelian, su};

    #[test]
    fn torus_is_flat() {
        let m = trivial_module(&abelian(7).unwrap()).unwrap();
        let c = InvariantComplex::new(&m).unwrap();
        let r = c.ranks();
        assert_eq!(r.dims, vec![1, 7, 21, 35, 35, 21, 7, 1]);
        assert!(r.ranks.iter().all(|&x| x == 0));
        let phi = crate::stable_forms::phi();
        let np = nearly_parallel_check(&m, &phi).unwrap();
        assert!(np.torsion_free && !np.is_nearly_parallel);
        assert_eq!(coclosed_stable_family_dim(&m, &phi).unwrap(), 35);
    }

    #[test]
    fn su2_cartan_form() {
        let g = su(2).unwrap();
        let om = cartan_3form(&g).unwrap();
        assert_eq!(om.num_terms(), 1);
        let m = trivial_module(&g).unwrap();
        assert!(ce_differential(&m, &om).unwrap().is_zero());
        let c = InvariantComplex::new(&m).unwrap();
        assert!(c.squares_to_zero());
        assert_eq!(c.ranks().ranks, vec![0, 3, 0, 0]);
    }

    #[test]
    fn rationalize_small() {
        assert_eq!(rationalize(0.75, 100), crate::linalg::qf(3, 4));
        assert_eq!(rationalize(-2.0, 100), q(-2));
    }

    #[test]
    fn star_of_phi_is_rational() {
        let phi = crate::stable_forms::phi();
        assert_eq!(rational_star(&phi).unwrap().unwrap(), crate::stable_forms::star_phi());
    }
}
