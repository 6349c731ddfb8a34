//! The classification tables as data: each entry is a recipe interpreted into an
//! isotropy module, plus expected invariants and finite-generator checks.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::liealg::{
    build_algebra, complex_to_real, direct_sum, invariant_dims, invariant_forms, irreducible_dims, quaternion_matrix_to_real,
    reductive_complement, rotation_generator, scan_form_space, so, so3_harmonic, so_q, sp_slot_element, standard_so3_triple,
    FiniteGenerator, FormTypes, InvariantDims, IsotropyModule, MatrixLieAlgebra, ScanConfig, SubalgebraEmbedding,
};
use crate::linalg::{parse_q, q, qf, span_basis, CoordSolver, QMatrix, Q};
use crate::stable_forms::{annihilator, phi};

pub const CATALOG_JSON: &str = include_str!("../data/catalog.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Catalog {
    pub version: String,
    pub entries: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub case: String,
    pub group: String,
    pub subgroup: String,
    pub paper_row: String,
    pub tables: Vec<String>,
    #[serde(default)]
    pub auxiliary: bool,
    #[serde(default)]
    pub param_names: Vec<String>,
    #[serde(default)]
    pub params: Vec<i64>,
    pub recipe: Recipe,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn in_indefinite_table(&self) -> bool {
        self.tables.iter().any(|t| t == "indefinite")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Recipe {
    pub algebra: Vec<String>,
    pub subalgebra: Vec<ElementSpec>,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    /// dimension of an irreducible so(3)-module used directly as V
    #[serde(default)]
    pub irrep: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ElementSpec {
    /// sp(1) in a diagonal quaternion slot of sp(n)
    Sp1 { factor: usize, slot: usize },
    /// su(2) on complex coordinates i, j (1-based) of su(n) or u(n)
    Su2 { factor: usize, i: usize, j: usize },
    /// so(3) rotating the given real axes (1-based) of so(n)
    So3 { factor: usize, axes: [usize; 3] },
    /// so(3) acting irreducibly on harmonic polynomials, inside so(Q)
    So3Irrep { factor: usize },
    /// su(n) on the first n complex coordinates
    SuBlock { factor: usize, n: usize },
    /// the stabilizer algebra of φ inside so(7)
    G2 { factor: usize },
    /// g₂ ∩ gl(ℝ⁶) inside a g₂ factor
    Su3InG2 { factor: usize },
    /// componentwise sum of standard triples
    Diagonal { parts: Vec<ElementSpec> },
    /// a single element built from weighted terms
    Element { terms: Vec<Term> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub factor: usize,
    /// "diag" (i·diag(w) in u(n)/su(n)), "rot" (c·J in u(1)), "quat" (c·unit in an sp slot)
    pub kind: String,
    #[serde(default)]
    pub weights: Vec<String>,
    #[serde(default)]
    pub coef: Option<String>,
    #[serde(default)]
    pub slot: usize,
    #[serde(default)]
    pub unit: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    /// part of Γ for the entry's module, or checked on its own
    pub include: bool,
    pub expect: GeneratorExpectation,
    pub parts: Vec<GroupSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorExpectation {
    /// keeps a stable invariant form of the entry's type
    Admissible,
    /// no stable invariant form of the entry's type survives
    Rejected,
    /// involution with a 4-dimensional (−1)-eigenspace preserving a definite form
    D7,
    /// det of the V-action is negative
    OrientationReversing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupSpec {
    Real {
        factor: usize,
        #[serde(default)]
        rows: Vec<Vec<String>>,
        #[serde(default)]
        diag: Vec<String>,
    },
    Complex { factor: usize, re: Vec<Vec<String>>, im: Vec<Vec<String>> },
    QuaternionDiag { factor: usize, entries: Vec<[String; 4]> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub d1: usize,
    pub d2: usize,
    pub d3: usize,
    pub irreducible: Vec<usize>,
    pub has_definite: bool,
    pub has_indefinite: bool,
}

pub static CATALOG: Lazy<Catalog> = Lazy::new(|| serde_json::from_str(CATALOG_JSON).expect("embedded catalog parses"));

pub fn catalog() -> &'static Catalog {
    &CATALOG
}

/// SHA-256 of the embedded catalog file.
pub fn catalog_hash() -> String {
    let digest = Sha256::digest(CATALOG_JSON.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn case_ids() -> Vec<String> {
    let mut ids: Vec<String> = Vec::new();
    for e in &catalog().entries {
        if !ids.contains(&e.case) {
            ids.push(e.case.clone());
        }
    }
    ids
}

/// Finds an entry by id, or by case id (first listed instance).
pub fn find_entry(key: &str) -> Result<&'static CatalogEntry> {
    let entries = &catalog().entries;
    entries
        .iter()
        .find(|e| e.id == key)
        .or_else(|| entries.iter().find(|e| e.case == key))
        .ok_or_else(|| Error::UnknownCase(key.to_string()))
}

/// Checks the side conditions of a parametrized family.
pub fn check_params(case: &str, names: &[String], params: &[i64]) -> Result<()> {
    let invalid = |reason: &str| Err(Error::InvalidParams { case: case.to_string(), reason: reason.to_string() });
    if params.len() != names.len() {
        return invalid(&format!("expected {} parameters ({}), got {}", names.len(), names.join(","), params.len()));
    }
    match case {
        "3bii" => {
            let (k, l) = (params[0], params[1]);
            if k.gcd(&l) != 1 {
                return invalid("(k,l) = 1 violated");
            }
            if k == 0 {
                return invalid("k != 0 violated");
            }
        }
        "3biii" => {
            let (k, l) = (params[0], params[1]);
            if k.gcd(&l) != 1 {
                return invalid("(k,l) = 1 violated");
            }
            if k * l == 0 {
                return invalid("kl != 0 violated");
            }
        }
        "5ii" => {
            let (k, l, m) = (params[0], params[1], params[2]);
            if k + l + m != 0 {
                return invalid("k + l + m = 0 violated");
            }
            if k.gcd(&l) != 1 {
                return invalid("(k,l) = 1 violated");
            }
            if k == l && !(k == 1 && l == 1) {
                return invalid("k != l violated (only k = l = 1 is allowed)");
            }
        }
        _ => {}
    }
    Ok(())
}

/// Which default instance a parameter choice behaves like.
fn branch(case: &str, p: &[i64]) -> &'static str {
    match case {
        "5ii" if p[0] == p[1] || p[1] == p[2] || p[0] == p[2] => "singular",
        "4ii" => {
            let c = [-(p[1] + 1), p[1] - p[0], p[0]];
            if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
                "singular"
            } else {
                "regular"
            }
        }
        _ => "regular",
    }
}

/// Entry for a case with explicit parameters; expectations come from the listed instance on the same branch.
pub fn entry_with_params(key: &str, params: &[i64]) -> Result<CatalogEntry> {
    let base = find_entry(key)?;
    if base.param_names.is_empty() {
        if params.is_empty() {
            return Ok(base.clone());
        }
        return Err(Error::InvalidParams { case: base.case.clone(), reason: "case takes no parameters".into() });
    }
    check_params(&base.case, &base.param_names, params)?;
    let b = branch(&base.case, params);
    let template = catalog()
        .entries
        .iter()
        .filter(|e| e.case == base.case && e.recipe.generators.iter().all(|g| !g.include))
        .find(|e| e.id == key && branch(&e.case, &e.params) == b)
        .or_else(|| catalog().entries.iter().find(|e| e.case == base.case && branch(&e.case, &e.params) == b))
        .unwrap_or(base);
    let mut e = template.clone();
    if e.params != params {
        // finite generators are recorded for the listed instance only
        e.recipe.generators.clear();
        e.params = params.to_vec();
    }
    Ok(e)
}

/// Evaluates an integer linear expression such as "k+1", "-2k" or "m-1".
pub fn eval_weight(expr: &str, names: &[String], params: &[i64]) -> Result<i64> {
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty weight".into()));
    }
    let mut total = 0i64;
    let mut i = 0;
    let bytes = s.as_bytes();
    while i < bytes.len() {
        let mut sign = 1;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coef: Option<i64> = if i > start { Some(s[start..i].parse().map_err(|_| Error::Parse(expr.into()))?) } else { None };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let vstart = i;
        while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
            i += 1;
        }
        let var = &s[vstart..i];
        let value = if var.is_empty() {
            coef.ok_or_else(|| Error::Parse(format!("bad weight expression {expr}")))?
        } else {
            let pos = names.iter().position(|n| n == var).ok_or_else(|| Error::Parse(format!("unknown parameter {var} in {expr}")))?;
            coef.unwrap_or(1) * params[pos]
        };
        total += sign * value;
    }
    Ok(total)
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<QMatrix> {
    let data: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    if data.iter().any(|r| r.len() != data.len()) {
        return Err(Error::Parse("group matrix must be square".into()));
    }
    Ok(QMatrix::from_rows(data))
}

fn build_factor(name: &str) -> Result<MatrixLieAlgebra> {
    match name {
        "g2" => MatrixLieAlgebra::from_basis("g2", annihilator(&phi())),
        "so(H2)" => {
            let (_, gram) = so3_harmonic(2);
            so_q("so(H2)", &gram)
        }
        _ => build_algebra(name),
    }
}

/// g₂ = ann(φ) as a subalgebra of so(7).
pub fn compute_g2_algebra() -> Result<SubalgebraEmbedding> {
    let g = so(7)?;
    SubalgebraEmbedding::new(&g, &annihilator(&phi()), "g2")
}

/// g₂ ∩ gl(ℝ⁶): elements of g₂ with vanishing first row and column.
pub fn compute_su3_in_g2() -> Result<SubalgebraEmbedding> {
    let g2 = MatrixLieAlgebra::from_basis("g2", annihilator(&phi()))?;
    let elements = su3_in_g2_elements(&g2);
    SubalgebraEmbedding::new(&g2, &elements, "su3")
}

fn su3_in_g2_elements(g2: &MatrixLieAlgebra) -> Vec<QMatrix> {
    let b = g2.basis();
    // linear conditions: entries (0, j) and (j, 0) vanish
    let rows: Vec<Vec<Q>> = (0..7)
        .flat_map(|j| [(0usize, j), (j, 0usize)])
        .map(|(r, c)| b.iter().map(|m| m[(r, c)].clone()).collect())
        .collect();
    let kernel = QMatrix::from_rows(rows).null_space();
    kernel.iter().map(|c| g2.element(c)).collect()
}

fn sp_triple(n: usize, slot: usize) -> Vec<QMatrix> {
    (1..4)
        .map(|u| {
            let mut c = <[Q; 4]>::default();
            c[u] = qf(1, 2);
            sp_slot_element(n, slot, c)
        })
        .collect()
}

fn su2_triple(n: usize, i: usize, j: usize) -> Vec<QMatrix> {
    let e = |r: usize, c: usize| {
        let mut m = QMatrix::zeros(n, n);
        m[(r, c)] = qf(1, 2);
        m
    };
    let z = QMatrix::zeros(n, n);
    vec![
        complex_to_real(&z, &e(i, i).sub(&e(j, j))),
        complex_to_real(&e(i, j).sub(&e(j, i)), &z),
        complex_to_real(&z, &e(i, j).add(&e(j, i))),
    ]
}

struct Builder<'a> {
    g: &'a MatrixLieAlgebra,
    names: &'a [String],
    params: &'a [i64],
}

impl Builder<'_> {
    fn factor_size(&self, f: usize) -> Result<usize> {
        self.g.factors().get(f).map(|i| i.size).ok_or_else(|| Error::Parse(format!("factor {f} out of range")))
    }

    fn factor_name(&self, f: usize) -> &str {
        &self.g.factors()[f].name
    }

    fn elements(&self, spec: &ElementSpec) -> Result<Vec<QMatrix>> {
        let out = match spec {
            ElementSpec::Sp1 { factor, slot } => {
                let n = self.factor_size(*factor)? / 4;
                if *slot >= n {
                    return Err(Error::Parse("sp slot out of range".into()));
                }
                sp_triple(n, *slot).iter().map(|x| self.g.embed(*factor, x)).collect()
            }
            ElementSpec::Su2 { factor, i, j } => {
                let n = self.factor_size(*factor)? / 2;
                if *i == 0 || *j == 0 || *i > n || *j > n || i == j {
                    return Err(Error::Parse("su2 coordinates out of range".into()));
                }
                su2_triple(n, i - 1, j - 1).iter().map(|x| self.g.embed(*factor, x)).collect()
            }
            ElementSpec::So3 { factor, axes } => {
                let n = self.factor_size(*factor)?;
                let [a, b, c] = axes.map(|x| x.wrapping_sub(1));
                if [a, b, c].iter().any(|&x| x >= n) {
                    return Err(Error::Parse("so3 axes out of range".into()));
                }
                let rot = |p: usize, r: usize| {
                    let mut m = QMatrix::zeros(n, n);
                    m[(r, p)] = Q::one();
                    m[(p, r)] = -Q::one();
                    m
                };
                let t = standard_so3_triple(&[rot(b, c), rot(c, a), rot(a, b)])?;
                t.iter().map(|x| self.g.embed(*factor, x)).collect()
            }
            ElementSpec::So3Irrep { factor } => {
                let n = self.factor_size(*factor)?;
                let (action, _) = so3_harmonic((n - 1) / 2);
                action.iter().map(|x| self.g.embed(*factor, x)).collect()
            }
            ElementSpec::SuBlock { factor, n } => {
                let big = self.factor_size(*factor)? / 2;
                let small = crate::liealg::su(*n)?;
                small
                    .basis()
                    .iter()
                    .map(|m| {
                        let re = QMatrix::from_fn(big, big, |r, c| if r < *n && c < *n { m[(r, c)].clone() } else { Q::zero() });
                        let im = QMatrix::from_fn(big, big, |r, c| if r < *n && c < *n { m[(r + n, c)].clone() } else { Q::zero() });
                        self.g.embed(*factor, &complex_to_real(&re, &im))
                    })
                    .collect()
            }
            ElementSpec::G2 { factor } => annihilator(&phi()).iter().map(|x| self.g.embed(*factor, x)).collect(),
            ElementSpec::Su3InG2 { factor } => {
                if self.factor_name(*factor) != "g2" {
                    return Err(Error::Parse("su3_in_g2 needs a g2 factor".into()));
                }
                let g2 = build_factor("g2")?;
                su3_in_g2_elements(&g2).iter().map(|x| self.g.embed(*factor, x)).collect()
            }
            ElementSpec::Diagonal { parts } => {
                let triples: Vec<Vec<QMatrix>> = parts.iter().map(|p| self.elements(p)).collect::<Result<_>>()?;
                if triples.iter().any(|t| t.len() != 3) {
                    return Err(Error::Parse("diagonal parts must be triples".into()));
                }
                (0..3).map(|a| triples.iter().skip(1).fold(triples[0][a].clone(), |acc, t| acc.add(&t[a]))).collect()
            }
            ElementSpec::Element { terms } => {
                let mut x = QMatrix::zeros(self.g.size(), self.g.size());
                for t in terms {
                    x = x.add(&self.term(t)?);
                }
                vec![x]
            }
        };
        Ok(out)
    }

    fn weight(&self, s: &str) -> Result<Q> {
        Ok(q(eval_weight(s, self.names, self.params)?))
    }

    fn term(&self, t: &Term) -> Result<QMatrix> {
        let size = self.factor_size(t.factor)?;
        let local = match t.kind.as_str() {
            "diag" => {
                let n = size / 2;
                if t.weights.len() != n {
                    return Err(Error::Parse(format!("diag term needs {n} weights")));
                }
                let w: Vec<Q> = t.weights.iter().map(|s| self.weight(s)).collect::<Result<_>>()?;
                complex_to_real(&QMatrix::zeros(n, n), &QMatrix::diag(&w))
            }
            "rot" => {
                if size != 2 {
                    return Err(Error::Parse("rot term needs a u(1) factor".into()));
                }
                rotation_generator().scale(&self.weight(t.coef.as_deref().unwrap_or("1"))?)
            }
            "quat" => {
                let n = size / 4;
                if t.slot >= n || !(1..4).contains(&t.unit) {
                    return Err(Error::Parse("quat term out of range".into()));
                }
                let mut c = <[Q; 4]>::default();
                c[t.unit] = self.weight(t.coef.as_deref().unwrap_or("1"))?;
                sp_slot_element(n, t.slot, c)
            }
            other => return Err(Error::Parse(format!("unknown term kind {other}"))),
        };
        Ok(self.g.embed(t.factor, &local))
    }

    fn group_element(&self, parts: &[GroupSpec]) -> Result<QMatrix> {
        let mut out = QMatrix::identity(self.g.size());
        for p in parts {
            let (factor, local) = match p {
                GroupSpec::Real { factor, rows, diag } => {
                    let m = if !diag.is_empty() {
                        QMatrix::diag(&diag.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>()?)
                    } else {
                        parse_matrix(rows)?
                    };
                    (*factor, m)
                }
                GroupSpec::Complex { factor, re, im } => (*factor, complex_to_real(&parse_matrix(re)?, &parse_matrix(im)?)),
                GroupSpec::QuaternionDiag { factor, entries } => {
                    let n = entries.len();
                    let mut m = vec![vec![<[Q; 4]>::default(); n]; n];
                    for (i, e) in entries.iter().enumerate() {
                        for u in 0..4 {
                            m[i][i][u] = parse_q(&e[u])?;
                        }
                    }
                    (*factor, quaternion_matrix_to_real(&m))
                }
            };
            if local.rows() != self.factor_size(factor)? {
                return Err(Error::Parse("group element has the wrong size for its factor".into()));
            }
            out = out.mul(&self.g.embed_group(factor, &local));
        }
        Ok(out)
    }
}

/// A built catalog entry: its module (with included generators) and the standalone generators.
#[derive(Clone, Debug)]
pub struct BuiltEntry {
    pub entry: CatalogEntry,
    pub algebra: Option<MatrixLieAlgebra>,
    pub module: IsotropyModule,
    pub standalone: Vec<(GeneratorSpec, FiniteGenerator)>,
    /// ambient group elements by generator name
    pub group_elements: Vec<(String, QMatrix)>,
}

fn structure_of(mats: &[QMatrix]) -> Result<Vec<Vec<Vec<Q>>>> {
    let flat: Vec<Vec<Q>> = mats.iter().map(|m| m.flatten()).collect();
    let solver = CoordSolver::new(&flat)?;
    mats.iter()
        .map(|a| {
            mats.iter()
                .map(|b| solver.coords(&a.commutator(b).flatten()).ok_or_else(|| Error::Internal("not closed".into())))
                .collect()
        })
        .collect()
}

pub fn build_entry(key: &str, params: Option<&[i64]>) -> Result<BuiltEntry> {
    let entry = match params {
        Some(p) => entry_with_params(key, p)?,
        None => find_entry(key)?.clone(),
    };
    build_from_entry(entry)
}

pub fn build_from_entry(entry: CatalogEntry) -> Result<BuiltEntry> {
    check_params(&entry.case, &entry.param_names, &entry.params)?;
    if let Some(dim) = entry.recipe.irrep {
        let (action, gram) = so3_harmonic((dim - 1) / 2);
        let hs = structure_of(&action)?;
        let module = IsotropyModule::from_representation(&entry.id, action, hs, gram)?;
        return Ok(BuiltEntry { entry, algebra: None, module, standalone: Vec::new(), group_elements: Vec::new() });
    }
    let factors: Vec<MatrixLieAlgebra> = entry.recipe.algebra.iter().map(|n| build_factor(n)).collect::<Result<_>>()?;
    let g = if factors.len() == 1 { factors[0].clone() } else { direct_sum(&factors)? };
    let builder = Builder { g: &g, names: &entry.param_names, params: &entry.params };
    let mut elements = Vec::new();
    for spec in &entry.recipe.subalgebra {
        elements.extend(builder.elements(spec)?);
    }
    if span_basis(&elements.iter().map(|m| m.flatten()).collect::<Vec<_>>()).len() != elements.len() {
        return Err(Error::InvalidParams { case: entry.case.clone(), reason: "subalgebra generators are dependent".into() });
    }
    let h = SubalgebraEmbedding::new(&g, &elements, &entry.id)?;
    let mut module = reductive_complement(&g, &h)?;
    let mut included = Vec::new();
    let mut standalone = Vec::new();
    let mut group_elements = Vec::new();
    for gs in &entry.recipe.generators {
        let x = builder.group_element(&gs.parts)?;
        let fg = module.adjoint_generator(&gs.name, &x)?;
        group_elements.push((gs.name.clone(), x));
        if gs.include {
            included.push(fg);
        } else {
            standalone.push((gs.clone(), fg));
        }
    }
    module = module.with_generators(included)?;
    Ok(BuiltEntry { entry, algebra: Some(g), module, standalone, group_elements })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

impl Claim {
    pub fn new(name: &str, expected: Value, computed: Value, pass: bool) -> Self {
        Claim { name: name.to_string(), expected, computed, pass }
    }

    pub fn eq<T: Serialize + PartialEq>(name: &str, expected: T, computed: T) -> Self {
        let pass = expected == computed;
        Claim::new(name, json!(expected), json!(computed), pass)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub case: String,
    pub params: Vec<i64>,
    pub dims: InvariantDims,
    pub irreducible: Vec<usize>,
    pub form_types: FormTypes,
    pub claims: Vec<Claim>,
    pub pass: bool,
}

/// Outcome of one finite-generator check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorCheck {
    pub name: String,
    pub expect: GeneratorExpectation,
    pub det: String,
    pub involution: bool,
    pub minus_one_eigenspace: usize,
    pub preserves_form_space: bool,
    pub with_generator: FormTypes,
    pub d3_with_generator: usize,
    /// dim z_g(h) and the (−1)-eigenspace of Ad on it
    pub centralizer_dim: Option<usize>,
    pub centralizer_minus_one: Option<usize>,
    pub pass: bool,
}

/// Basis of the centralizer of h in g, in g-coordinates.
pub fn centralizer_basis(g: &MatrixLieAlgebra, h_basis: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = g.dim();
    let rows: Vec<Vec<Q>> = h_basis
        .iter()
        .flat_map(|hc| {
            let cols: Vec<Vec<Q>> = (0..n)
                .map(|j| {
                    let mut e = vec![Q::zero(); n];
                    e[j] = Q::one();
                    g.bracket_coords(hc, &e)
                })
                .collect();
            (0..n).map(move |r| cols.iter().map(|c| c[r].clone()).collect::<Vec<Q>>())
        })
        .collect();
    if rows.is_empty() {
        return (0..n).map(|j| (0..n).map(|i| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    }
    QMatrix::from_rows(rows).null_space()
}

/// Ad_x restricted to z_g(h): (dim z, dim of its (−1)-eigenspace).
pub fn centralizer_action(g: &MatrixLieAlgebra, h_basis: &[Vec<Q>], x: &QMatrix) -> Option<(usize, usize)> {
    let z = centralizer_basis(g, h_basis);
    let xinv = x.inverse()?;
    let solver = CoordSolver::new(&z).ok()?;
    let cols: Vec<Vec<Q>> = z
        .iter()
        .map(|v| g.coords(&x.mul(&g.element(v)).mul(&xinv)).and_then(|c| solver.coords(&c)))
        .collect::<Option<_>>()?;
    let m = QMatrix::from_cols(&cols, z.len());
    Some((z.len(), m.add(&QMatrix::identity(z.len())).null_space().len()))
}

/// F maps the span of `forms` into itself under pullback.
fn preserves_span(f: &QMatrix, forms: &[crate::multilinear::KForm]) -> bool {
    if forms.is_empty() {
        return true;
    }
    let dense: Vec<Vec<Q>> = forms.iter().map(|x| x.to_dense()).collect();
    let solver = match CoordSolver::new(&dense) {
        Ok(s) => s,
        Err(_) => return false,
    };
    forms.iter().all(|x| x.pullback(f).map(|p| solver.coords(&p.to_dense()).is_some()).unwrap_or(false))
}

pub fn check_generator(built: &BuiltEntry, spec: &GeneratorSpec, gen: &FiniteGenerator, cfg: &ScanConfig) -> Result<GeneratorCheck> {
    let base = built.module.without_generators();
    let base_forms = invariant_forms(&base, 3);
    let preserves = preserves_span(&gen.matrix, &base_forms);
    let with = built.module.clone().with_generators(vec![gen.clone()])?;
    let forms = invariant_forms(&with, 3);
    let types = scan_form_space(&forms, cfg);
    let n = gen.matrix.rows();
    let det = gen.matrix.det();
    let involution = gen.matrix.mul(&gen.matrix) == QMatrix::identity(n);
    let minus = gen.matrix.add(&QMatrix::identity(n)).null_space().len();
    let centralizer = match (&built.algebra, built.group_elements.iter().find(|(n, _)| n == &gen.name)) {
        (Some(g), Some((_, x))) => centralizer_action(g, built.module.h_basis(), x),
        _ => None,
    };
    let wants_indefinite = built.entry.in_indefinite_table();
    let keeps = if wants_indefinite { types.has_indefinite } else { types.has_definite };
    let pass = match spec.expect {
        GeneratorExpectation::Admissible => preserves && keeps && det.is_positive(),
        GeneratorExpectation::Rejected => !types.has_indefinite && !types.has_definite || (wants_indefinite && !types.has_indefinite),
        GeneratorExpectation::D7 => involution && minus == 4 && types.has_definite && preserves,
        GeneratorExpectation::OrientationReversing => det.is_negative(),
    };
    Ok(GeneratorCheck {
        name: gen.name.clone(),
        expect: spec.expect,
        det: crate::linalg::q_to_string(&det),
        involution,
        minus_one_eigenspace: minus,
        preserves_form_space: preserves,
        with_generator: types,
        d3_with_generator: forms.len(),
        centralizer_dim: centralizer.map(|c| c.0),
        centralizer_minus_one: centralizer.map(|c| c.1),
        pass,
    })
}

pub fn verify_entry(built: &BuiltEntry, cfg: &ScanConfig) -> Result<VerificationReport> {
    let m = &built.module;
    let e = &built.entry.expected;
    let dims = invariant_dims(m);
    let irreducible = irreducible_dims(m)?;
    let form_types = crate::liealg::invariant_form_types(m, cfg)?;
    let mut claims = vec![
        Claim::eq("dim V", 7, m.dim()),
        Claim::eq("ker rho = 0", 0, m.kernel_dim()),
        Claim::eq("representation property", true, m.is_representation()),
        Claim::eq("generators normalize", true, m.generators_normalize()),
        Claim::eq("(d1,d2,d3)", [e.d1, e.d2, e.d3], [dims.d1, dims.d2, dims.d3]),
    ];
    if form_types.has_definite {
        claims.push(Claim::eq("d3 = d1 + d2", dims.d3, dims.d1 + dims.d2));
    } else {
        claims.push(Claim::new("d3 = d1 + d2", json!("skipped: no definite form found"), json!(dims.d3), true));
    }
    let mut exp_irr = e.irreducible.clone();
    exp_irr.sort_unstable_by(|a, b| b.cmp(a));
    claims.push(Claim::eq("irreducible dims", exp_irr, irreducible.clone()));
    claims.push(Claim::eq("sum of irreducible dims", m.dim(), irreducible.iter().sum()));
    claims.push(Claim::eq("has definite form", e.has_definite, form_types.has_definite));
    let indefinite_claim = if e.has_indefinite {
        Claim::eq("has indefinite form", true, form_types.has_indefinite)
    } else {
        Claim::new(
            "has indefinite form",
            json!("not found at this resolution"),
            json!(if form_types.has_indefinite { "found" } else { "not found at this resolution" }),
            !form_types.has_indefinite,
        )
    };
    claims.push(indefinite_claim);
    if let Some(g) = &built.algebra {
        claims.push(Claim::eq("Jacobi and closure", true, g.jacobi_holds() && g.closure_holds()));
        claims.push(Claim::eq("trace form invariant", true, g.form_is_invariant()));
    }
    for (spec, gen) in &built.standalone {
        let c = check_generator(built, spec, gen, cfg)?;
        claims.push(Claim::new(&format!("generator {} ({:?})", c.name, c.expect), json!(spec.expect), json!(c), c.pass));
    }
    for gen in m.finite_generators() {
        if let Some(spec) = built.entry.recipe.generators.iter().find(|s| s.name == gen.name && s.include) {
            let c = check_generator(built, spec, gen, cfg)?;
            claims.push(Claim::new(&format!("generator {} ({:?})", c.name, c.expect), json!(spec.expect), json!(c), c.pass));
        }
    }
    let pass = claims.iter().all(|c| c.pass);
    Ok(VerificationReport {
        id: built.entry.id.clone(),
        case: built.entry.case.clone(),
        params: built.entry.params.clone(),
        dims,
        irreducible,
        form_types,
        claims,
        pass,
    })
}

/// Verifies every listed entry; order follows the catalog.
pub fn verify_all(cfg: &ScanConfig) -> Vec<Result<VerificationReport>> {
    catalog()
        .entries
        .par_iter()
        .map(|e| build_from_entry(e.clone()).and_then(|b| verify_entry(&b, cfg)))
        .collect()
}

/// Compact row for `catalog list`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntrySummary {
    pub id: String,
    pub case: String,
    pub group: String,
    pub subgroup: String,
    pub params: Vec<i64>,
    pub paper_row: String,
    pub expected: Expected,
}

pub fn list_entries() -> Vec<EntrySummary> {
    catalog()
        .entries
        .iter()
        .map(|e| EntrySummary {
            id: e.id.clone(),
            case: e.case.clone(),
            group: e.group.clone(),
            subgroup: e.subgroup.clone(),
            params: e.params.clone(),
            paper_row: e.paper_row.clone(),
            expected: e.expected.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_parse() {
        let names = vec!["k".to_string(), "m".to_string()];
        assert_eq!(eval_weight("k+1", &names, &[3, 5]).unwrap(), 4);
        assert_eq!(eval_weight("-2k", &names, &[3, 5]).unwrap(), -6);
        assert_eq!(eval_weight("m-1", &names, &[3, 5]).unwrap(), 4);
        assert_eq!(eval_weight("7", &names, &[3, 5]).unwrap(), 7);
        assert!(eval_weight("x", &names, &[3, 5]).is_err());
    }

    #[test]
    fn side_conditions() {
        assert!(entry_with_params("3bii", &[0, 1]).is_err());
        assert!(entry_with_params("3biii", &[2, 4]).is_err());
        assert!(entry_with_params("5ii", &[1, 2, 3]).is_err());
        assert!(entry_with_params("5ii", &[2, 2, -4]).is_err());
        assert!(entry_with_params("5ii", &[1, 1, -2]).is_ok());
        assert_eq!(entry_with_params("5ii", &[2, 1, -3]).unwrap().expected.d3, 5);
        assert_eq!(entry_with_params("5ii", &[1, 1, -2]).unwrap().expected.d3, 13);
        assert!(matches!(find_entry("9z"), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn hash_is_stable_hex() {
        let h = catalog_hash();
        assert_eq!(h.len(), 64);
        assert_eq!(h, catalog_hash());
    }
}
