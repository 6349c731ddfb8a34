//! Rigidity and low-rigidity analyses: rank chains of the invariant complex, nearly-parallel
//! rays, coclosed families, closed stable scans, and the ψ(a,b) 4-form family.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog::{build_entry, catalog, Claim};
use crate::error::{Error, Result};
use crate::homogeneous::{
    ce_differential, ce_matrix, closed_stable_scan, coclosed_stable_family_dim, coclosed_sweep, complex_ranks, invariant_2form_analysis,
    nearly_parallel_check, nearly_parallel_rays, rational_star, InvariantComplex,
};
use crate::liealg::{invariant_forms, jacobi_holds, IsotropyModule};
use crate::linalg::{q, q_to_string, qf, QMatrix, Q};
use crate::multilinear::KForm;
use crate::stable_forms::{classify3, metric_from_4form, phi, star_phi, star_phi_misprint};

/// Shared report shape: complex data when relevant, claims, and free-form details.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub analysis: String,
    #[serde(default)]
    pub dims: Vec<usize>,
    #[serde(default)]
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub kernels: Vec<usize>,
    pub claims: Vec<Claim>,
    pub details: Value,
}

impl AnalysisReport {
    pub fn pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.claims.iter().filter(|c| !c.pass).count()
    }
}

pub const ANALYSES: [&str; 5] = ["nearly-parallel", "coclosed-family", "rank-chain", "closed-scan", "example-429"];

fn structure(n: usize, brackets: &[(usize, usize, i64, usize)]) -> Vec<Vec<Vec<Q>>> {
    let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
    for &(i, j, s, k) in brackets {
        c[i][j][k] = q(s);
        c[j][i][k] = q(-s);
    }
    c
}

/// su(2) ⊕ ℝ⁴ with [e₁,e₂] = e₃ cyclic.
pub fn su2_r4_compact() -> Result<IsotropyModule> {
    IsotropyModule::from_structure_constants("su2+R4", structure(7, &[(0, 1, 1, 2), (1, 2, 1, 0), (2, 0, 1, 1)]))
}

/// su(2) ⊕ ℝ⁴ with the printed constants [e₁,e₂] = e₂, [e₁,e₃] = −e₃, [e₂,e₃] = e₁.
pub fn su2_r4_printed() -> Result<IsotropyModule> {
    IsotropyModule::from_structure_constants("su2+R4 (printed constants)", structure(7, &[(0, 1, 1, 1), (0, 2, -1, 2), (1, 2, 1, 0)]))
}

/// su(2) ⊕ su(2) ⊕ ℝ.
pub fn su2_su2_r() -> Result<IsotropyModule> {
    IsotropyModule::from_structure_constants(
        "su2+su2+R",
        structure(7, &[(0, 1, 1, 2), (1, 2, 1, 0), (2, 0, 1, 1), (3, 4, 1, 5), (4, 5, 1, 3), (5, 3, 1, 4)]),
    )
}

pub fn torus7() -> Result<IsotropyModule> {
    IsotropyModule::from_structure_constants("T7", vec![vec![vec![Q::zero(); 7]; 7]; 7])
}

/// φ± = ±ω¹²³ + ω¹⁴⁵ + ω¹⁶⁷ + ω²⁴⁶ − ω²⁵⁷ − ω³⁴⁷ − ω³⁵⁶.
pub fn phi_pm(sign: i64) -> KForm {
    KForm::from_i64_terms(
        7,
        3,
        &[(sign, &[1, 2, 3]), (1, &[1, 4, 5]), (1, &[1, 6, 7]), (1, &[2, 4, 6]), (-1, &[2, 5, 7]), (-1, &[3, 4, 7]), (-1, &[3, 5, 6])],
    )
}

/// An exact primitive ψ with dψ = target, if one exists.
pub fn exact_primitive(m: &IsotropyModule, target: &KForm) -> Result<Option<KForm>> {
    let k = target.degree();
    if k == 0 {
        return Ok(None);
    }
    let d = ce_matrix(m, k - 1)?;
    Ok(d.solve(&target.to_dense()).map(|c| KForm::from_dense(7, k - 1, &c).expect("shape")))
}

fn chain(r: &crate::homogeneous::ComplexRanks) -> [usize; 5] {
    [r.ranks[1], r.kernels[2], r.ranks[2], r.kernels[3], r.ranks[3]]
}

pub fn rank_chain() -> Result<AnalysisReport> {
    let compact = su2_r4_compact()?;
    let printed = su2_r4_printed()?;
    let cc = InvariantComplex::new(&compact)?;
    let cp = InvariantComplex::new(&printed)?;
    let rc = complex_ranks(&cc);
    let rp = complex_ranks(&cp);
    let mut claims = vec![
        Claim::eq("printed constants satisfy Jacobi", true, jacobi_holds(printed.bracket().expect("bracket"))),
        Claim::eq("d^2 = 0 (compact)", true, cc.squares_to_zero()),
        Claim::eq("d^2 = 0 (printed)", true, cp.squares_to_zero()),
        Claim::eq("dim d(Omega^1)", 3, rc.ranks[1]),
        Claim::eq("dim ker d on Omega^2", 5, rc.kernels[2]),
        Claim::eq("dim d(Omega^2)", 16, rc.ranks[2]),
        Claim::eq("dim ker d on Omega^3", 21, rc.kernels[3]),
        Claim::eq("dim d(Omega^3)", 14, rc.ranks[3]),
        Claim::eq("rank chain under printed constants equals compact", chain(&rc), chain(&rp)),
    ];
    let mut primitives = Vec::new();
    let mut family = Vec::new();
    for sign in [1i64, -1] {
        let t = phi_pm(sign);
        let label = if sign > 0 { "phi+" } else { "phi-" };
        let class = classify3(&t)?;
        let star = rational_star(&t)?.ok_or_else(|| Error::Internal(format!("{label}: metric is not rational")))?;
        let dstar = ce_differential(&compact, &star)?;
        claims.push(Claim::eq(&format!("d(*{label}) = 0 exactly"), true, dstar.is_zero()));
        // the sign of ∗ for an indefinite form depends on the metric sign convention
        let c = star.coeff(&[4, 5, 6, 7]);
        let rest = star.try_add(&KForm::omega(7, &[4, 5, 6, 7]).scale(&-c.clone()))?;
        let psi = exact_primitive(&compact, &rest)?;
        claims.push(Claim::new(
            &format!("*{label} = c omega4567 + exact, |c| = 1"),
            json!(format!("c = {}1 up to the indefinite sign convention", if sign > 0 { "+" } else { "-" })),
            json!(format!("c = {}, exact remainder: {}", q_to_string(&c), psi.is_some())),
            psi.is_some() && (c == q(1) || c == q(-1)),
        ));
        let fam = coclosed_stable_family_dim(&compact, &t)?;
        claims.push(Claim::eq(&format!("coclosed stable family dim ({label})"), 19, fam));
        family.push(json!({"form": label, "dim": fam}));
        primitives.push(json!({
            "form": label,
            "class": class,
            "closed": ce_differential(&compact, &t)?.is_zero(),
            "omega4567_coefficient": q_to_string(&c),
            "star": star,
            "primitive": psi,
        }));
    }
    Ok(AnalysisReport {
        analysis: "rank-chain".into(),
        dims: rc.dims.clone(),
        ranks: rc.ranks.clone(),
        kernels: rc.kernels.clone(),
        claims,
        details: json!({
            "chain": {"order": ["dim dOmega1", "dim ker d|Omega2", "dim dOmega2", "dim ker d|Omega3", "dim dOmega3"],
                      "expected": [3, 5, 16, 21, 14], "compact": chain(&rc), "printed": chain(&rp)},
            "printed_constants_ranks": rp.ranks,
            "coclosed_family": family,
            "forms": primitives,
        }),
    })
}

pub fn coclosed_family() -> Result<AnalysisReport> {
    let m = su2_r4_compact()?;
    let c = InvariantComplex::new(&m)?;
    let r = complex_ranks(&c);
    let mut claims = Vec::new();
    let mut rows = Vec::new();
    for sign in [1i64, -1] {
        let label = if sign > 0 { "su2+R4, phi+" } else { "su2+R4, phi-" };
        let fam = coclosed_stable_family_dim(&m, &phi_pm(sign))?;
        claims.push(Claim::eq(&format!("family dim ({label})"), 19, fam));
        rows.push(json!({"space": label, "dim": fam}));
    }
    claims.push(Claim::eq("family dim = dim d(Omega^3) + 5", 19, r.ranks[3] + 5));
    let t7 = torus7()?;
    let fam = coclosed_stable_family_dim(&t7, &phi())?;
    claims.push(Claim::eq("family dim (T7, phi)", 35, fam));
    rows.push(json!({"space": "T7, phi", "dim": fam}));
    Ok(AnalysisReport {
        analysis: "coclosed-family".into(),
        dims: r.dims.clone(),
        ranks: r.ranks.clone(),
        kernels: r.kernels.clone(),
        claims,
        details: json!({
            "families": rows,
            "definition": "dimension of closed invariant 4-forms; coclosed stable 3-forms are the open set of stable t with *t in that space",
            "b4_note": "the printed count adds 5 as a Betti number, which this computation does not check separately",
        }),
    })
}

pub fn closed_scan(samples: usize, seed: u64) -> Result<AnalysisReport> {
    let m = su2_r4_compact()?;
    let scan = closed_stable_scan(&m, samples, seed)?;
    let t7 = closed_stable_scan(&torus7()?, samples.min(2000), seed)?;
    let ss = closed_stable_scan(&su2_su2_r()?, samples, seed)?;
    let claims = vec![
        Claim::eq("closed invariant 3-forms on su2+R4", 21, scan.closed_dim),
        Claim::eq("no definite closed sample on su2+R4", 0, scan.definite),
        Claim::eq("no indefinite closed sample on su2+R4", 0, scan.indefinite),
        Claim::eq("at least 10^4 samples", true, scan.samples >= 10_000),
        Claim::eq("T7 has stable closed samples", true, t7.definite + t7.indefinite > 0),
    ];
    Ok(AnalysisReport {
        analysis: "closed-scan".into(),
        dims: vec![],
        ranks: vec![],
        kernels: vec![],
        claims,
        details: json!({"su2+R4": scan, "T7": t7, "su2+su2+R": ss}),
    })
}

fn module_of(id: &str) -> Result<IsotropyModule> {
    Ok(build_entry(id, None)?.module)
}

/// `only` restricts the run to one catalog id.
pub fn nearly_parallel(grid: usize, sweep: usize, only: Option<&str>) -> Result<AnalysisReport> {
    if let Some(id) = only {
        crate::catalog::find_entry(id)?;
    }
    let wanted = |id: &str| only.map_or(true, |o| o == id);
    let mut claims = Vec::new();
    let mut singles = Vec::new();
    for id in ["2d", "7"].into_iter().filter(|id| wanted(id)) {
        let m = module_of(id)?;
        let forms = invariant_forms(&m, 3);
        claims.push(Claim::eq(&format!("{id}: d3"), 1, forms.len()));
        let Some(t) = forms.first() else { continue };
        let r = nearly_parallel_check(&m, t)?;
        let two = invariant_2form_analysis(&m)?;
        claims.push(Claim::eq(&format!("{id}: nearly parallel"), true, r.is_nearly_parallel));
        claims.push(Claim::new(&format!("{id}: lambda != 0"), json!("nonzero"), json!(r.lambda), r.lambda.abs() > 1e-9));
        claims.push(Claim::new(&format!("{id}: residual <= 1e-9"), json!(1e-9), json!(r.residual), r.residual <= 1e-9));
        claims.push(Claim::eq(&format!("{id}: invariant 2-forms"), 0, two.dim));
        singles.push(json!({"case": id, "form": t, "result": r}));
    }
    let mut families = Vec::new();
    for id in catalog().entries.iter().filter(|e| e.expected.d3 == 2 && wanted(&e.id)).map(|e| e.id.as_str()) {
        let m = module_of(id)?;
        let d3 = invariant_forms(&m, 3).len();
        if d3 != 2 {
            claims.push(Claim::eq(&format!("{id}: d3"), 2, d3));
            continue;
        }
        let rays = nearly_parallel_rays(&m, grid)?;
        let sw = coclosed_sweep(&m, sweep)?;
        let two = invariant_2form_analysis(&m)?;
        claims.push(Claim::eq(&format!("{id}: nearly-parallel rays in the definite cone"), 1, rays.rays.len()));
        claims.push(Claim::eq(&format!("{id}: stable samples coclosed"), sw.stable, sw.coclosed));
        claims.push(Claim::eq(&format!("{id}: stable samples found"), true, sw.stable > 0));
        claims.push(Claim::eq(&format!("{id}: invariant 2-forms at most 1 and closed"), true, two.dim <= 1 && two.all_closed));
        let images: Vec<Vec<Q>> =
            invariant_forms(&m, 3).iter().map(|b| ce_differential(&m, b).map(|f| f.to_dense())).collect::<Result<_>>()?;
        claims.push(Claim::eq(&format!("{id}: dim d(Omega^3) on the family"), 1, crate::linalg::rank_of(&images)));
        families.push(json!({"case": id, "rays": rays, "coclosed_sweep": sw, "two_forms": two}));
    }
    if claims.is_empty() {
        return Err(Error::InvalidParams { case: only.unwrap_or_default().to_string(), reason: "no nearly-parallel analysis for this case".into() });
    }
    Ok(AnalysisReport {
        analysis: "nearly-parallel".into(),
        dims: vec![],
        ranks: vec![],
        kernels: vec![],
        claims,
        details: json!({"single_ray": singles, "two_parameter": families, "grid": grid, "sweep": sweep}),
    })
}

/// The printed metric of the ψ(a,b) family: a²(2a+3b)·I₃ ⊕ 3a³·I₄.
pub fn printed_psi_metric(a: &Q, b: &Q) -> QMatrix {
    let top = a * a * (q(2) * a + q(3) * b);
    let bottom = q(3) * a * a * a;
    QMatrix::diag(&[top.clone(), top.clone(), top, bottom.clone(), bottom.clone(), bottom.clone(), bottom])
}

/// ψ(a,b) under the resolved role assignment a·∗φ + b·ω⁴⁵⁶⁷.
pub fn psi_resolved(a: &Q, b: &Q) -> KForm {
    star_phi().scale(a).try_add(&KForm::omega(7, &[4, 5, 6, 7]).scale(b)).expect("shape")
}

/// ψ(a,b) as literally written, a·ω⁴⁵⁶⁷ + b·∗φ.
pub fn psi_literal(a: &Q, b: &Q) -> KForm {
    psi_resolved(b, a)
}

/// Twenty rational sample points with a ≠ 0.
pub fn example_points() -> Vec<(Q, Q)> {
    (0..20)
        .map(|i: i64| {
            let a = qf(if i % 2 == 0 { 1 + i % 5 } else { -(1 + i % 3) }, 1 + i % 4);
            let b = qf(i - 7, 3);
            (a, b)
        })
        .collect()
}

fn proportional(a: &QMatrix, b: &QMatrix) -> bool {
    let (ea, eb) = (a.entries(), b.entries());
    let Some(pos) = eb.iter().position(|x| !x.is_zero()) else { return a.is_zero() };
    let r = &ea[pos] / &eb[pos];
    !r.is_zero() && ea.iter().zip(eb).all(|(x, y)| *x == &r * y)
}

pub fn example_429() -> Result<AnalysisReport> {
    let pts = example_points();
    let mut rows = Vec::new();
    let (mut exact, mut prop, mut derived) = (0usize, 0usize, 0usize);
    for (a, b) in &pts {
        let g = metric_from_4form(&psi_resolved(a, b))?.gdual;
        let lit = metric_from_4form(&psi_literal(a, b))?.gdual;
        let printed = printed_psi_metric(a, b);
        let top = q(6) * a * a * (a + b);
        let bottom = q(6) * a * a * a;
        let ours = QMatrix::diag(&[top.clone(), top.clone(), top, bottom.clone(), bottom.clone(), bottom.clone(), bottom]);
        exact += usize::from(g == printed);
        prop += usize::from(proportional(&g, &printed));
        derived += usize::from(g == ours);
        rows.push(json!({
            "a": q_to_string(a), "b": q_to_string(b),
            "computed_diag": (0..7).map(|i| q_to_string(&g[(i, i)])).collect::<Vec<_>>(),
            "computed_diagonal_only": g == QMatrix::diag(&(0..7).map(|i| g[(i, i)].clone()).collect::<Vec<_>>()),
            "printed_diag": (0..7).map(|i| q_to_string(&printed[(i, i)])).collect::<Vec<_>>(),
            "literal_assignment_diag": (0..7).map(|i| q_to_string(&lit[(i, i)])).collect::<Vec<_>>(),
        }));
    }
    // stability locus on and off the printed lines and on the computed line a + b = 0
    let locus_pts: Vec<(Q, Q, &str)> = vec![
        (q(0), q(1), "a = 0"),
        (q(0), qf(-2, 3), "a = 0"),
        (q(3), q(-2), "2a + 3b = 0"),
        (qf(-3, 2), q(1), "2a + 3b = 0"),
        (q(1), q(-1), "a + b = 0"),
        (qf(2, 5), qf(-2, 5), "a + b = 0"),
        (q(1), q(1), "generic"),
        (q(2), qf(-1, 7), "generic"),
    ];
    let mut locus_ok = true;
    let mut locus_rows = Vec::new();
    for (a, b, line) in &locus_pts {
        let det = metric_from_4form(&psi_resolved(a, b))?.det();
        let printed_zero = (a * (q(2) * a + q(3) * b)).is_zero();
        locus_ok &= det.is_zero() == printed_zero;
        locus_rows.push(json!({"a": q_to_string(a), "b": q_to_string(b), "line": line, "det": q_to_string(&det), "printed_says_degenerate": printed_zero}));
    }
    let misprint_invariant = crate::stable_forms::annihilator(&phi()).iter().all(|x| star_phi_misprint().algebra_action(x).map(|f| f.is_zero()).unwrap_or(false));
    let n = pts.len();
    let claims = vec![
        Claim::eq("printed metric matches at all points", n, exact),
        Claim::eq("printed metric matches up to scale at all points", n, prop),
        Claim::eq("det(gdual) = 0 exactly on a(2a+3b) = 0", true, locus_ok),
        Claim::eq("computed metric is 6a^2(a+b) I3 + 6a^3 I4 at all points", n, derived),
    ];
    Ok(AnalysisReport {
        analysis: "example-429".into(),
        dims: vec![],
        ranks: vec![],
        kernels: vec![],
        claims,
        details: json!({
            "assignment": "psi(a,b) = a * (*phi) + b * omega4567 (resolved); the literal a * omega4567 + b * (*phi) is reported alongside",
            "psi1": KForm::omega(7, &[4, 5, 6, 7]),
            "psi2": star_phi(),
            "psi2_as_printed_is_invariant": misprint_invariant,
            "points": rows,
            "locus": locus_rows,
        }),
    })
}

/// Runs a named analysis with its default resolution.
pub fn run(name: &str, resolution: Option<usize>, seed: u64, case: Option<&str>) -> Result<AnalysisReport> {
    match name {
        "nearly-parallel" => nearly_parallel(resolution.unwrap_or(720), 200, case),
        "coclosed-family" => coclosed_family(),
        "rank-chain" => rank_chain(),
        "closed-scan" => closed_scan(resolution.unwrap_or(10_000), seed),
        "example-429" => example_429(),
        other => Err(Error::Parse(format!("unknown analysis {other}; expected one of {}", ANALYSES.join(", ")))),
    }
}
