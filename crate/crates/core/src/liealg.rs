//! Matrix Lie algebras over ℚ, reductive complements, isotropy modules and
//! their invariant tensors.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, orthogonalize, q, q_to_string, qf, signature, CoordSolver, QMatrix, Q};
use crate::multilinear::{FormBasis, KForm};
use crate::stable_forms::{classify_i128, clear_denominators, Orbit3Class};

/// One simple or abelian block of a block-diagonal product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorInfo {
    pub name: String,
    pub offset: usize,
    pub size: usize,
}

#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    pub name: String,
    size: usize,
    basis: Vec<QMatrix>,
    structure: Vec<Vec<Vec<Q>>>,
    solver: CoordSolver,
    factors: Vec<FactorInfo>,
}

impl MatrixLieAlgebra {
    /// Computes structure constants; fails if the span is not closed under brackets.
    pub fn from_basis(name: &str, basis: Vec<QMatrix>) -> Result<Self> {
        let size = basis.first().map_or(0, |b| b.rows());
        if basis.iter().any(|b| b.rows() != size || b.cols() != size) {
            return Err(Error::Dimension(format!("{name}: basis matrices of unequal size")));
        }
        let flat: Vec<Vec<Q>> = basis.iter().map(|b| b.flatten()).collect();
        let solver = CoordSolver::new(&flat)?;
        let n = basis.len();
        let structure: Vec<Vec<Vec<Q>>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        solver.coords(&basis[i].commutator(&basis[j]).flatten()).ok_or_else(|| {
                            Error::Internal(format!("{name}: bracket of basis elements {i}, {j} leaves the span"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let factors = vec![FactorInfo { name: name.to_string(), offset: 0, size }];
        Ok(MatrixLieAlgebra { name: name.to_string(), size, basis, structure, solver, factors })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Ambient matrix size.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basis(&self) -> &[QMatrix] {
        &self.basis
    }

    pub fn factors(&self) -> &[FactorInfo] {
        &self.factors
    }

    /// Coordinates of [b_i, b_j].
    pub fn structure(&self, i: usize, j: usize) -> &[Q] {
        &self.structure[i][j]
    }

    pub fn coords(&self, x: &QMatrix) -> Option<Vec<Q>> {
        if x.rows() != self.size {
            return None;
        }
        self.solver.coords(&x.flatten())
    }

    pub fn element(&self, c: &[Q]) -> QMatrix {
        let mut out = QMatrix::zeros(self.size, self.size);
        for (ci, b) in c.iter().zip(&self.basis) {
            if !ci.is_zero() {
                out = out.add(&b.scale(ci));
            }
        }
        out
    }

    pub fn bracket_coords(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        bracket_with(&self.structure, x, y)
    }

    /// ⟨X, Y⟩ = −tr(XY).
    pub fn inner(x: &QMatrix, y: &QMatrix) -> Q {
        -x.mul(y).trace()
    }

    pub fn gram(&self) -> QMatrix {
        let n = self.dim();
        QMatrix::from_fn(n, n, |i, j| Self::inner(&self.basis[i], &self.basis[j]))
    }

    /// ad(b_i) in the basis: column j holds the coordinates of [b_i, b_j].
    pub fn ad(&self, i: usize) -> QMatrix {
        let n = self.dim();
        QMatrix::from_fn(n, n, |r, c| self.structure[i][c][r].clone())
    }

    pub fn jacobi_holds(&self) -> bool {
        jacobi_holds(&self.structure)
    }

    /// Bracket closure checked afresh against the stored constants.
    pub fn closure_holds(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| self.element(&self.structure[i][j]) == self.basis[i].commutator(&self.basis[j]))
        })
    }

    /// ⟨[X,Y],Z⟩ + ⟨Y,[X,Z]⟩ = 0 for all basis triples.
    pub fn form_is_invariant(&self) -> bool {
        let g = self.gram();
        let n = self.dim();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let a = dot(&g.mul_vec(&self.structure[x][y]), &unit(n, z));
                    let b = dot(&g.mul_vec(&unit(n, y)), &self.structure[x][z]);
                    (a + b).is_zero()
                })
            })
        })
    }

    /// Places a factor-sized matrix in block `f`, zero elsewhere.
    pub fn embed(&self, f: usize, x: &QMatrix) -> QMatrix {
        let info = &self.factors[f];
        assert_eq!(x.rows(), info.size, "factor block size");
        let mut out = QMatrix::zeros(self.size, self.size);
        for r in 0..info.size {
            for c in 0..info.size {
                out[(info.offset + r, info.offset + c)] = x[(r, c)].clone();
            }
        }
        out
    }

    /// Places a group element in block `f`, identity elsewhere.
    pub fn embed_group(&self, f: usize, g: &QMatrix) -> QMatrix {
        let info = &self.factors[f];
        assert_eq!(g.rows(), info.size, "factor block size");
        let mut out = QMatrix::identity(self.size);
        for r in 0..info.size {
            for c in 0..info.size {
                out[(info.offset + r, info.offset + c)] = g[(r, c)].clone();
            }
        }
        out
    }

    pub fn dump(&self) -> StructureDump {
        let mut constants = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        constants.push(StructureConstant { i, j, k, c: q_to_string(c) });
                    }
                }
            }
        }
        StructureDump {
            name: self.name.clone(),
            size: self.size,
            basis: self.basis.iter().map(|b| b.to_rows().iter().map(|r| r.iter().map(q_to_string).collect()).collect()).collect(),
            constants,
        }
    }
}

/// Sparse structure-constant dump: c^k_{ij} for i < j.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureDump {
    pub name: String,
    pub size: usize,
    pub basis: Vec<Vec<Vec<String>>>,
    pub constants: Vec<StructureConstant>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

fn bracket_with(c: &[Vec<Vec<Q>>], x: &[Q], y: &[Q]) -> Vec<Q> {
    let n = x.len();
    let m = c.first().and_then(|r| r.first()).map_or(0, |v| v.len());
    let mut out = vec![Q::zero(); m];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let s = &x[i] * &y[j];
            for (o, cc) in out.iter_mut().zip(&c[i][j]) {
                if !cc.is_zero() {
                    *o += &s * cc;
                }
            }
        }
    }
    out
}

/// Jacobi identity on basis triples for structure constants c[i][j][k].
pub fn jacobi_holds(c: &[Vec<Vec<Q>>]) -> bool {
    let n = c.len();
    let e = |i| unit(n, i);
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            (j + 1..n).all(|k| {
                let a = bracket_with(c, &e(i), &c[j][k]);
                let b = bracket_with(c, &e(j), &c[k][i]);
                let d = bracket_with(c, &e(k), &c[i][j]);
                a.iter().zip(&b).zip(&d).all(|((x, y), z)| (x + y + z).is_zero())
            })
        })
    })
}

fn eij(n: usize, i: usize, j: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    m[(i, j)] = Q::one();
    m
}

/// Complex n×n matrix X + iY realized as [[X, −Y], [Y, X]].
pub fn complex_to_real(re: &QMatrix, im: &QMatrix) -> QMatrix {
    let n = re.rows();
    QMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let (br, bc) = (r / n, c / n);
        let (i, j) = (r % n, c % n);
        match (br, bc) {
            (0, 0) | (1, 1) => re[(i, j)].clone(),
            (0, 1) => -im[(i, j)].clone(),
            _ => im[(i, j)].clone(),
        }
    })
}

/// Quaternionic n×n matrix with entries a + bi + cj + dk, written as A + Bj with
/// A = a + bi and B = c + di, realized as the complex matrix [[A, B], [−B̄, Ā]]
/// and then as a real 4n×4n matrix.
pub fn quaternion_matrix_to_real(m: &[Vec<[Q; 4]>]) -> QMatrix {
    let n = m.len();
    let a_re = QMatrix::from_fn(n, n, |r, c| m[r][c][0].clone());
    let a_im = QMatrix::from_fn(n, n, |r, c| m[r][c][1].clone());
    let b_re = QMatrix::from_fn(n, n, |r, c| m[r][c][2].clone());
    let b_im = QMatrix::from_fn(n, n, |r, c| m[r][c][3].clone());
    let re = QMatrix::from_fn(2 * n, 2 * n, |r, c| match (r / n, c / n) {
        (0, 0) | (1, 1) => a_re[(r % n, c % n)].clone(),
        (0, 1) => b_re[(r % n, c % n)].clone(),
        _ => -b_re[(r % n, c % n)].clone(),
    });
    let im = QMatrix::from_fn(2 * n, 2 * n, |r, c| match (r / n, c / n) {
        (0, 0) => a_im[(r % n, c % n)].clone(),
        (1, 1) => -a_im[(r % n, c % n)].clone(),
        (0, 1) => b_im[(r % n, c % n)].clone(),
        _ => b_im[(r % n, c % n)].clone(),
    });
    complex_to_real(&re, &im)
}

/// Quaternion `u` (coordinates 1, i, j, k) placed in diagonal slot `slot` of an n×n quaternionic matrix.
pub fn sp_slot_element(n: usize, slot: usize, u: [Q; 4]) -> QMatrix {
    let mut m = vec![vec![<[Q; 4]>::default(); n]; n];
    m[slot][slot] = u;
    quaternion_matrix_to_real(&m)
}

pub fn so(n: usize) -> Result<MatrixLieAlgebra> {
    if !(2..=8).contains(&n) {
        return Err(Error::Unsupported(format!("so({n})")));
    }
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            basis.push(eij(n, i, j).sub(&eij(n, j, i)));
        }
    }
    MatrixLieAlgebra::from_basis(&format!("so({n})"), basis)
}

/// so(Q) = {X : XᵀQ + QX = 0} for a positive definite rational Gram matrix Q.
pub fn so_q(name: &str, gram: &QMatrix) -> Result<MatrixLieAlgebra> {
    let n = gram.rows();
    let qi = gram.inverse().ok_or_else(|| Error::Internal("singular Gram matrix".into()))?;
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            basis.push(qi.mul(&eij(n, i, j).sub(&eij(n, j, i))));
        }
    }
    MatrixLieAlgebra::from_basis(name, basis)
}

fn su_basis(n: usize, with_center: bool) -> Vec<QMatrix> {
    let z = QMatrix::zeros(n, n);
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            basis.push(complex_to_real(&eij(n, i, j).sub(&eij(n, j, i)), &z));
            basis.push(complex_to_real(&z, &eij(n, i, j).add(&eij(n, j, i))));
        }
    }
    for k in 0..n.saturating_sub(1) {
        basis.push(complex_to_real(&z, &eij(n, k, k).sub(&eij(n, k + 1, k + 1))));
    }
    if with_center {
        basis.push(complex_to_real(&z, &QMatrix::identity(n)));
    }
    basis
}

pub fn su(n: usize) -> Result<MatrixLieAlgebra> {
    if !(2..=4).contains(&n) {
        return Err(Error::Unsupported(format!("su({n})")));
    }
    MatrixLieAlgebra::from_basis(&format!("su({n})"), su_basis(n, false))
}

pub fn u(n: usize) -> Result<MatrixLieAlgebra> {
    if !(1..=4).contains(&n) {
        return Err(Error::Unsupported(format!("u({n})")));
    }
    MatrixLieAlgebra::from_basis(&format!("u({n})"), su_basis(n, true))
}

fn quat_unit(u: usize) -> [Q; 4] {
    let mut c = <[Q; 4]>::default();
    c[u] = Q::one();
    c
}

pub fn sp(n: usize) -> Result<MatrixLieAlgebra> {
    if !(1..=4).contains(&n) {
        return Err(Error::Unsupported(format!("sp({n})")));
    }
    let mut basis = Vec::new();
    for p in 0..n {
        for u in 1..4 {
            basis.push(sp_slot_element(n, p, quat_unit(u)));
        }
    }
    for p in 0..n {
        for r in p + 1..n {
            for u in 0..4 {
                let mut m = vec![vec![<[Q; 4]>::default(); n]; n];
                m[p][r] = quat_unit(u);
                // anti-Hermitian: entry (r, p) is minus the conjugate
                let mut c = quat_unit(u);
                if u == 0 {
                    c[0] = -Q::one();
                }
                m[r][p] = c;
                basis.push(quaternion_matrix_to_real(&m));
            }
        }
    }
    MatrixLieAlgebra::from_basis(&format!("sp({n})"), basis)
}

/// u(1) as the 2×2 rotation generator, so that −tr(J²) = 2 > 0.
pub fn u1() -> MatrixLieAlgebra {
    MatrixLieAlgebra::from_basis("u(1)", vec![rotation_generator()]).expect("u(1)")
}

pub fn rotation_generator() -> QMatrix {
    QMatrix::from_i64(&[&[0, -1], &[1, 0]])
}

pub fn abelian(k: usize) -> Result<MatrixLieAlgebra> {
    let factors: Vec<MatrixLieAlgebra> = (0..k).map(|_| u1()).collect();
    let mut a = direct_sum(&factors)?;
    a.name = format!("R^{k}");
    Ok(a)
}

/// Block-diagonal direct sum.
pub fn direct_sum(factors: &[MatrixLieAlgebra]) -> Result<MatrixLieAlgebra> {
    let size: usize = factors.iter().map(|f| f.size).sum();
    let mut basis = Vec::new();
    let mut infos = Vec::new();
    let mut offset = 0;
    for f in factors {
        for b in &f.basis {
            let mut m = QMatrix::zeros(size, size);
            for r in 0..f.size {
                for c in 0..f.size {
                    m[(offset + r, offset + c)] = b[(r, c)].clone();
                }
            }
            basis.push(m);
        }
        for fi in &f.factors {
            infos.push(FactorInfo { name: fi.name.clone(), offset: offset + fi.offset, size: fi.size });
        }
        offset += f.size;
    }
    let name = factors.iter().map(|f| f.name.clone()).collect::<Vec<_>>().join("+");
    // structure constants of a direct sum are block diagonal; recomputing keeps one code path
    let mut alg = MatrixLieAlgebra::from_basis(&name, basis)?;
    alg.factors = infos;
    Ok(alg)
}

pub fn build_algebra(name: &str) -> Result<MatrixLieAlgebra> {
    let parse = |prefix: &str| -> Option<usize> { name.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok() };
    if let Some(n) = parse("so(") {
        return so(n);
    }
    if let Some(n) = parse("su(") {
        return su(n);
    }
    if let Some(n) = parse("sp(") {
        return sp(n);
    }
    if let Some(n) = parse("u(") {
        return if n == 1 { Ok(u1()) } else { u(n) };
    }
    if let Some(k) = name.strip_prefix("u(1)^").and_then(|k| k.parse().ok()) {
        return abelian(k);
    }
    if name.contains('+') {
        let parts: Vec<MatrixLieAlgebra> = name.split('+').map(|p| build_algebra(p.trim())).collect::<Result<_>>()?;
        return direct_sum(&parts);
    }
    Err(Error::Unsupported(name.to_string()))
}

/// A subalgebra given by ambient elements.
#[derive(Clone, Debug)]
pub struct SubalgebraEmbedding {
    pub ambient: MatrixLieAlgebra,
    pub sub_basis: Vec<QMatrix>,
    pub label: String,
}

impl SubalgebraEmbedding {
    /// Row-reduces the given elements and checks bracket closure.
    pub fn new(ambient: &MatrixLieAlgebra, elements: &[QMatrix], label: &str) -> Result<Self> {
        let coords: Vec<Vec<Q>> = elements
            .iter()
            .map(|x| ambient.coords(x).ok_or_else(|| Error::Internal(format!("{label}: element outside the ambient algebra"))))
            .collect::<Result<_>>()?;
        let independent = crate::linalg::span_basis(&coords);
        let sub_basis: Vec<QMatrix> = if independent.len() == coords.len() {
            elements.to_vec()
        } else {
            independent.iter().map(|c| ambient.element(c)).collect()
        };
        let emb = SubalgebraEmbedding { ambient: ambient.clone(), sub_basis, label: label.to_string() };
        if !emb.is_closed() {
            return Err(Error::Internal(format!("{label}: subalgebra not closed under brackets")));
        }
        Ok(emb)
    }

    pub fn dim(&self) -> usize {
        self.sub_basis.len()
    }

    pub fn coords_in_ambient(&self) -> Vec<Vec<Q>> {
        self.sub_basis.iter().map(|x| self.ambient.coords(x).expect("in ambient")).collect()
    }

    pub fn is_closed(&self) -> bool {
        let coords = self.coords_in_ambient();
        if coords.is_empty() {
            return true;
        }
        let solver = match CoordSolver::new(&coords) {
            Ok(s) => s,
            Err(_) => return false,
        };
        coords.iter().all(|x| coords.iter().all(|y| solver.coords(&self.ambient.bracket_coords(x, y)).is_some()))
    }
}

/// A finite component-group element acting on V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGenerator {
    pub name: String,
    pub matrix: QMatrix,
}

/// The isotropy representation of h on a complement V, with V-projected brackets.
#[derive(Clone, Debug)]
pub struct IsotropyModule {
    pub label: String,
    dim_v: usize,
    h_action: Vec<QMatrix>,
    h_structure: Vec<Vec<Vec<Q>>>,
    finite_generators: Vec<FiniteGenerator>,
    bracket: Option<Vec<Vec<Vec<Q>>>>,
    gram: QMatrix,
    kernel_dim: usize,
    /// ambient data kept for Ad-type generators: V basis in g-coordinates
    v_basis: Vec<Vec<Q>>,
    h_basis: Vec<Vec<Q>>,
    ambient: Option<MatrixLieAlgebra>,
}

impl IsotropyModule {
    pub fn dim(&self) -> usize {
        self.dim_v
    }

    pub fn h_dim(&self) -> usize {
        self.h_action.len()
    }

    pub fn action(&self) -> &[QMatrix] {
        &self.h_action
    }

    pub fn h_structure(&self) -> &[Vec<Vec<Q>>] {
        &self.h_structure
    }

    pub fn finite_generators(&self) -> &[FiniteGenerator] {
        &self.finite_generators
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    /// Replaces the invariant inner product on V (must be symmetric and of full size).
    pub fn set_gram(&mut self, gram: QMatrix) -> Result<()> {
        if gram.rows() != self.dim_v || !gram.is_symmetric() {
            return Err(Error::Dimension("inner product must be a symmetric dim V matrix".into()));
        }
        self.gram = gram;
        Ok(())
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }

    pub fn is_effective(&self) -> bool {
        self.kernel_dim == 0
    }

    /// V-projected structure constants, if the module comes from a pair (g, h).
    pub fn bracket(&self) -> Option<&[Vec<Vec<Q>>]> {
        self.bracket.as_deref()
    }

    pub fn ambient(&self) -> Option<&MatrixLieAlgebra> {
        self.ambient.as_ref()
    }

    pub fn v_basis(&self) -> &[Vec<Q>] {
        &self.v_basis
    }

    pub fn h_basis(&self) -> &[Vec<Q>] {
        &self.h_basis
    }

    /// h = 0 module of a Lie algebra given only by structure constants.
    pub fn from_structure_constants(label: &str, c: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let n = c.len();
        if c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Dimension(format!("{label}: structure constants must be n×n×n")));
        }
        if !jacobi_holds(&c) {
            return Err(Error::Internal(format!("{label}: Jacobi identity fails")));
        }
        Ok(IsotropyModule {
            label: label.to_string(),
            dim_v: n,
            h_action: Vec::new(),
            h_structure: Vec::new(),
            finite_generators: Vec::new(),
            bracket: Some(c),
            gram: QMatrix::identity(n),
            kernel_dim: 0,
            v_basis: (0..n).map(|i| unit(n, i)).collect(),
            h_basis: Vec::new(),
            ambient: None,
        })
    }

    /// A bare representation of h on V (no bracket on V), e.g. an irreducible so(3)-module.
    pub fn from_representation(label: &str, action: Vec<QMatrix>, h_structure: Vec<Vec<Vec<Q>>>, gram: QMatrix) -> Result<Self> {
        let n = gram.rows();
        let kernel_dim = kernel_dimension(&action, n);
        Ok(IsotropyModule {
            label: label.to_string(),
            dim_v: n,
            h_action: action,
            h_structure,
            finite_generators: Vec::new(),
            bracket: None,
            gram,
            kernel_dim,
            v_basis: (0..n).map(|i| unit(n, i)).collect(),
            h_basis: Vec::new(),
            ambient: None,
        })
    }

    pub fn with_generators(mut self, gens: Vec<FiniteGenerator>) -> Result<Self> {
        for g in &gens {
            self.check_generator(g)?;
        }
        self.finite_generators.extend(gens);
        Ok(self)
    }

    pub fn without_generators(&self) -> IsotropyModule {
        let mut m = self.clone();
        m.finite_generators.clear();
        m
    }

    /// A generator must be invertible and normalize span ρ(h).
    pub fn check_generator(&self, g: &FiniteGenerator) -> Result<()> {
        let f = &g.matrix;
        if f.rows() != self.dim_v || f.cols() != self.dim_v {
            return Err(Error::Dimension(format!("generator {} has wrong size", g.name)));
        }
        let inv = f.inverse().ok_or_else(|| Error::Internal(format!("generator {} is singular", g.name)))?;
        if self.h_action.is_empty() {
            return Ok(());
        }
        let flat: Vec<Vec<Q>> = self.h_action.iter().map(|a| a.flatten()).collect();
        let basis = crate::linalg::span_basis(&flat);
        let solver = CoordSolver::new(&basis)?;
        for a in &self.h_action {
            if solver.coords(&f.mul(a).mul(&inv).flatten()).is_none() {
                return Err(Error::Internal(format!("generator {} does not normalize the isotropy action", g.name)));
            }
        }
        Ok(())
    }

    /// The V-action of Ad_g for a group element of the ambient matrix group.
    pub fn adjoint_generator(&self, name: &str, group_element: &QMatrix) -> Result<FiniteGenerator> {
        let g = self.ambient.as_ref().ok_or_else(|| Error::Internal("Ad generator needs an ambient algebra".into()))?;
        let ginv = group_element.inverse().ok_or_else(|| Error::Internal(format!("{name} is singular")))?;
        let gram = g.gram();
        let mut m = QMatrix::zeros(self.dim_v, self.dim_v);
        for (a, va) in self.v_basis.iter().enumerate() {
            let img = group_element.mul(&g.element(va)).mul(&ginv);
            let c = g.coords(&img).ok_or_else(|| Error::Internal(format!("Ad {name} leaves g")))?;
            let vc = self.v_coords(&c, &gram).ok_or_else(|| Error::Internal(format!("Ad {name} does not preserve V")))?;
            for (b, x) in vc.into_iter().enumerate() {
                m[(b, a)] = x;
            }
        }
        Ok(FiniteGenerator { name: name.to_string(), matrix: m })
    }

    // V-coordinates of a g-vector lying in V (V basis is G-orthogonal)
    fn v_coords(&self, c: &[Q], gram: &QMatrix) -> Option<Vec<Q>> {
        let gc = gram.mul_vec(c);
        if self.h_basis.iter().any(|h| !dot(&gc, h).is_zero()) {
            return None;
        }
        Some(self.v_basis.iter().map(|v| dot(&gc, v) / dot(&gram.mul_vec(v), v)).collect())
    }

    /// Σ cᵢ ρ(Xᵢ).
    pub fn action_of(&self, c: &[Q]) -> QMatrix {
        let mut out = QMatrix::zeros(self.dim_v, self.dim_v);
        for (ci, a) in c.iter().zip(&self.h_action) {
            if !ci.is_zero() {
                out = out.add(&a.scale(ci));
            }
        }
        out
    }

    /// ρ([X,Y]) = [ρ(X), ρ(Y)] on basis pairs.
    pub fn is_representation(&self) -> bool {
        let n = self.h_dim();
        (0..n).all(|i| {
            (0..n).all(|j| self.action_of(&self.h_structure[i][j]) == self.h_action[i].commutator(&self.h_action[j]))
        })
    }

    /// Every finite generator normalizes span ρ(h).
    pub fn generators_normalize(&self) -> bool {
        self.finite_generators.iter().all(|g| self.check_generator(g).is_ok())
    }
}

fn kernel_dimension(action: &[QMatrix], n: usize) -> usize {
    if action.is_empty() {
        return 0;
    }
    let cols: Vec<Vec<Q>> = action.iter().map(|a| a.flatten()).collect();
    QMatrix::from_cols(&cols, n * n).null_space().len()
}

/// g = h ⊕ V with V the orthogonal complement of h for −tr.
pub fn reductive_complement(g: &MatrixLieAlgebra, h: &SubalgebraEmbedding) -> Result<IsotropyModule> {
    let gram = g.gram();
    let (p, neg) = signature(&gram);
    if p != g.dim() || neg != 0 {
        return Err(Error::NonDefiniteForm);
    }
    let hc = h.coords_in_ambient();
    let n = g.dim();
    // V = {x : ⟨x, h_i⟩ = 0}
    let v_raw = if hc.is_empty() {
        (0..n).map(|i| unit(n, i)).collect()
    } else {
        let rows: Vec<Vec<Q>> = hc.iter().map(|h| gram.mul_vec(h)).collect();
        QMatrix::from_rows(rows).null_space()
    };
    let v_basis = orthogonalize(&v_raw, &gram);
    let dim_v = v_basis.len();
    let mut module = IsotropyModule {
        label: h.label.clone(),
        dim_v,
        h_action: Vec::new(),
        h_structure: Vec::new(),
        finite_generators: Vec::new(),
        bracket: None,
        gram: QMatrix::zeros(dim_v, dim_v),
        kernel_dim: 0,
        v_basis: v_basis.clone(),
        h_basis: hc.clone(),
        ambient: Some(g.clone()),
    };
    let vnorm: Vec<Q> = v_basis.iter().map(|v| dot(&gram.mul_vec(v), v)).collect();
    module.gram = QMatrix::diag(&vnorm);
    let project = |w: &[Q]| -> Vec<Q> {
        let gw = gram.mul_vec(w);
        v_basis.iter().zip(&vnorm).map(|(v, nv)| dot(&gw, v) / nv).collect()
    };
    let mut action = Vec::with_capacity(hc.len());
    for x in &hc {
        let mut m = QMatrix::zeros(dim_v, dim_v);
        for (a, va) in v_basis.iter().enumerate() {
            let w = g.bracket_coords(x, va);
            let c = module
                .v_coords(&w, &gram)
                .ok_or_else(|| Error::Internal(format!("{}: [h, V] is not contained in V", h.label)))?;
            for (b, val) in c.into_iter().enumerate() {
                m[(b, a)] = val;
            }
        }
        action.push(m);
    }
    let bracket: Vec<Vec<Vec<Q>>> = (0..dim_v)
        .into_par_iter()
        .map(|a| (0..dim_v).map(|b| project(&g.bracket_coords(&v_basis[a], &v_basis[b]))).collect())
        .collect();
    let h_solver = CoordSolver::new(&hc)?;
    let h_structure: Vec<Vec<Vec<Q>>> = hc
        .iter()
        .map(|x| {
            hc.iter()
                .map(|y| h_solver.coords(&g.bracket_coords(x, y)).ok_or_else(|| Error::Internal("h not closed".into())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    module.kernel_dim = kernel_dimension(&action, dim_v);
    module.h_action = action;
    module.h_structure = h_structure;
    module.bracket = Some(bracket);
    Ok(module)
}

/// Joint kernel of linear maps on ℚⁿ, refined one map at a time.
pub fn joint_kernel(maps: &[QMatrix], n: usize) -> Vec<Vec<Q>> {
    let mut basis: Vec<Vec<Q>> = (0..n).map(|i| unit(n, i)).collect();
    for m in maps {
        if basis.is_empty() {
            break;
        }
        let images: Vec<Vec<Q>> = basis.iter().map(|b| m.mul_vec(b)).collect();
        let restricted = QMatrix::from_cols(&images, m.rows());
        let ker = restricted.null_space();
        basis = ker
            .iter()
            .map(|k| {
                let mut v = vec![Q::zero(); n];
                for (kc, b) in k.iter().zip(&basis) {
                    if !kc.is_zero() {
                        for (vi, bi) in v.iter_mut().zip(b) {
                            *vi += kc * bi;
                        }
                    }
                }
                v
            })
            .collect();
        basis = crate::linalg::span_basis(&basis);
    }
    basis
}

/// Matrix of a ↦ A·a on Λᵏ(ℝⁿ) in the lexicographic basis.
pub fn form_action_matrix(a: &QMatrix, k: usize) -> QMatrix {
    let n = a.rows();
    let basis = FormBasis::get(n, k);
    let cols: Vec<Vec<Q>> = (0..basis.len())
        .map(|i| {
            let f = KForm::from_dense(n, k, &unit(basis.len(), i)).expect("shape");
            f.algebra_action(a).expect("shape").to_dense()
        })
        .collect();
    QMatrix::from_cols(&cols, basis.len())
}

/// Matrix of a ↦ F*a on Λᵏ(ℝⁿ).
pub fn form_pullback_matrix(f: &QMatrix, k: usize) -> QMatrix {
    let n = f.rows();
    let basis = FormBasis::get(n, k);
    let cols: Vec<Vec<Q>> = (0..basis.len())
        .map(|i| {
            let e = KForm::from_dense(n, k, &unit(basis.len(), i)).expect("shape");
            e.pullback(f).expect("shape").to_dense()
        })
        .collect();
    QMatrix::from_cols(&cols, basis.len())
}

/// Exact basis of h- and Γ-invariant k-forms on V.
pub fn invariant_forms(m: &IsotropyModule, k: usize) -> Vec<KForm> {
    let n = m.dim();
    if k > n {
        return Vec::new();
    }
    let len = FormBasis::get(n, k).len();
    let mut maps: Vec<QMatrix> = m.action().iter().map(|a| form_action_matrix(a, k)).collect();
    for g in m.finite_generators() {
        maps.push(form_pullback_matrix(&g.matrix, k).sub(&QMatrix::identity(len)));
    }
    joint_kernel(&maps, len).iter().map(|v| KForm::from_dense(n, k, v).expect("shape")).collect()
}

pub fn invariant_3forms(m: &IsotropyModule) -> Result<Vec<KForm>> {
    if m.dim() != 7 {
        return Err(Error::Dimension(format!("invariant 3-forms need dim V = 7, got {}", m.dim())));
    }
    Ok(invariant_forms(m, 3))
}

pub fn invariant_vectors(m: &IsotropyModule) -> Vec<Vec<Q>> {
    let n = m.dim();
    let mut maps: Vec<QMatrix> = m.action().to_vec();
    for g in m.finite_generators() {
        maps.push(g.matrix.sub(&QMatrix::identity(n)));
    }
    joint_kernel(&maps, n)
}

/// Invariant symmetric bilinear forms, as symmetric matrices.
pub fn invariant_symmetric_forms(m: &IsotropyModule) -> Vec<QMatrix> {
    let n = m.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let sym = |idx: usize| -> QMatrix {
        let (i, j) = pairs[idx];
        let mut s = QMatrix::zeros(n, n);
        s[(i, j)] = Q::one();
        s[(j, i)] = Q::one();
        s
    };
    let flat_len = n * n;
    let mut maps = Vec::new();
    for a in m.action() {
        let cols: Vec<Vec<Q>> = (0..pairs.len()).map(|p| {
            let s = sym(p);
            a.transpose().mul(&s).add(&s.mul(a)).flatten()
        }).collect();
        maps.push(QMatrix::from_cols(&cols, flat_len));
    }
    for g in m.finite_generators() {
        let f = &g.matrix;
        let cols: Vec<Vec<Q>> = (0..pairs.len()).map(|p| {
            let s = sym(p);
            f.transpose().mul(&s).mul(f).sub(&s).flatten()
        }).collect();
        maps.push(QMatrix::from_cols(&cols, flat_len));
    }
    joint_kernel(&maps, pairs.len())
        .iter()
        .map(|c| {
            let mut s = QMatrix::zeros(n, n);
            for (p, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    s = s.add(&sym(p).scale(x));
                }
            }
            s
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantDims {
    pub d1: usize,
    pub d2: usize,
    pub d3: usize,
}

pub fn invariant_dims(m: &IsotropyModule) -> InvariantDims {
    InvariantDims {
        d1: invariant_vectors(m).len(),
        d2: invariant_symmetric_forms(m).len(),
        d3: invariant_forms(m, 3).len(),
    }
}

/// Self-adjoint (for the module's inner product) elements of the commutant,
/// optionally also commuting with `extra`.
fn self_adjoint_commutant(m: &IsotropyModule, extra: Option<&QMatrix>) -> Vec<QMatrix> {
    let n = m.dim();
    let g = m.gram();
    let mut maps = Vec::new();
    let mut commuting: Vec<&QMatrix> = m.action().iter().collect();
    if let Some(e) = extra {
        commuting.push(e);
    }
    for a in commuting {
        let cols: Vec<Vec<Q>> = (0..n * n).map(|e| {
            let t = eij(n, e / n, e % n);
            t.commutator(a).flatten()
        }).collect();
        maps.push(QMatrix::from_cols(&cols, n * n));
    }
    // G T = Tᵀ G
    let cols: Vec<Vec<Q>> = (0..n * n).map(|e| {
        let t = eij(n, e / n, e % n);
        g.mul(&t).sub(&t.transpose().mul(g)).flatten()
    }).collect();
    maps.push(QMatrix::from_cols(&cols, n * n));
    joint_kernel(&maps, n * n).iter().map(|v| QMatrix::from_fn(n, n, |r, c| v[r * n + c].clone())).collect()
}

/// Real-irreducible dimensions of the h-action, largest first.
pub fn irreducible_dims(m: &IsotropyModule) -> Result<Vec<usize>> {
    let n = m.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let comm = self_adjoint_commutant(m, None);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6732);
    for _ in 0..16 {
        let mut t = QMatrix::zeros(n, n);
        for c in &comm {
            let r: i64 = rng.gen_range(-1000..=1000);
            t = t.add(&c.scale(&q(r)));
        }
        let chi = t.charpoly();
        let parts = chi.squarefree_decomposition();
        let distinct: usize = parts.iter().map(|(p, _)| p.degree()).sum();
        // each eigenspace of T is irreducible iff the self-adjoint commutant of (ρ, T) is just
        // the span of the eigenspace projections
        if self_adjoint_commutant(m, Some(&t)).len() == distinct {
            let mut dims: Vec<usize> = parts.iter().flat_map(|(p, k)| std::iter::repeat(*k).take(p.degree())).collect();
            dims.sort_unstable_by(|a, b| b.cmp(a));
            return Ok(dims);
        }
    }
    Err(Error::Internal(format!("{}: irreducible splitting did not certify", m.label)))
}

/// Scan configuration for [`invariant_form_types`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// grid points on the unit sphere of the invariant-form space
    pub grid: usize,
    /// additional seeded random rational combinations
    pub random: usize,
    pub seed: u64,
    /// stop once both classes have been seen
    pub short_circuit: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { grid: 10_000, random: 1_000, seed: 20_240_611, short_circuit: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTypes {
    pub has_definite: bool,
    pub has_indefinite: bool,
    pub samples: usize,
    pub definite_example: Option<Vec<String>>,
    pub indefinite_example: Option<Vec<String>>,
}

/// Integer combination vectors covering the unit sphere of ℚᵈ: inverse stereographic
/// images of a grid of tan-spaced rationals, then the basis vectors and random points.
pub fn sphere_samples(d: usize, cfg: &ScanConfig) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        out.push(e.clone());
        e[i] = -1;
        out.push(e);
    }
    if d >= 2 && d <= 3 {
        let per_axis = ((cfg.grid as f64).powf(1.0 / (d - 1) as f64)).ceil() as usize;
        const DEN: i64 = 1000;
        let ticks: Vec<i64> = (0..per_axis)
            .map(|i| {
                let theta = -std::f64::consts::PI + (i as f64 + 0.5) * 2.0 * std::f64::consts::PI / per_axis as f64;
                ((theta / 2.0).tan() * DEN as f64).round().clamp(-1e9, 1e9) as i64
            })
            .collect();
        let mut idx = vec![0usize; d - 1];
        'grid: loop {
            let u: Vec<i64> = idx.iter().map(|&i| ticks[i]).collect();
            let s: i64 = u.iter().map(|x| x * x).sum();
            // (2u·D, |u|² − D²) is a positive multiple of the stereographic point
            let mut v: Vec<i64> = u.iter().map(|x| 2 * x * DEN).collect();
            v.push(s - DEN * DEN);
            out.push(v);
            for k in 0..d - 1 {
                idx[k] += 1;
                if idx[k] < per_axis {
                    continue 'grid;
                }
                idx[k] = 0;
            }
            break;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let random = if d > 3 { cfg.grid + cfg.random } else { cfg.random };
    for i in 0..random {
        let v: Vec<i64> = if i % 2 == 0 {
            (0..d).map(|_| rng.gen_range(-20..=20)).collect()
        } else {
            // sparse combinations reach thin strata of large invariant spaces
            (0..d).map(|_| if rng.gen_bool(0.4) { rng.gen_range(-3..=3) } else { 0 }).collect()
        };
        if v.iter().any(|&x| x != 0) {
            out.push(v);
        }
    }
    out
}

/// Classifies each sample combination of the invariant 3-forms; negative answers mean
/// "not found at this resolution".
pub fn invariant_form_types(m: &IsotropyModule, cfg: &ScanConfig) -> Result<FormTypes> {
    let basis = invariant_3forms(m)?;
    Ok(scan_form_space(&basis, cfg))
}

pub fn scan_form_space(basis: &[KForm], cfg: &ScanConfig) -> FormTypes {
    let d = basis.len();
    let mut result = FormTypes { has_definite: false, has_indefinite: false, samples: 0, definite_example: None, indefinite_example: None };
    if d == 0 {
        return result;
    }
    let int_basis: Vec<Vec<i128>> = basis
        .iter()
        .map(|b| {
            let (ints, _) = clear_denominators(&b.to_dense());
            ints.iter().map(|x| i128::try_from(x).expect("small invariant basis")).collect()
        })
        .collect();
    let samples = sphere_samples(d, cfg);
    const CHUNK: usize = 512;
    for chunk in samples.chunks(CHUNK) {
        let classes: Vec<Orbit3Class> = chunk
            .par_iter()
            .map(|c| {
                let mut t = vec![0i128; 35];
                for (ci, b) in c.iter().zip(&int_basis) {
                    if *ci != 0 {
                        for (ti, bi) in t.iter_mut().zip(b) {
                            *ti += i128::from(*ci) * bi;
                        }
                    }
                }
                classify_i128(&t)
            })
            .collect();
        for (c, class) in chunk.iter().zip(classes) {
            let label = || c.iter().map(|x| x.to_string()).collect::<Vec<_>>();
            match class {
                Orbit3Class::Definite if !result.has_definite => {
                    result.has_definite = true;
                    result.definite_example = Some(label());
                }
                Orbit3Class::Indefinite if !result.has_indefinite => {
                    result.has_indefinite = true;
                    result.indefinite_example = Some(label());
                }
                _ => {}
            }
        }
        result.samples += chunk.len();
        if cfg.short_circuit && result.has_definite && result.has_indefinite {
            break;
        }
    }
    result
}

/// The combination of basis forms named by integer coefficients.
pub fn combine_forms(basis: &[KForm], coeffs: &[i64]) -> KForm {
    let c: Vec<Q> = coeffs.iter().map(|&x| q(x)).collect();
    KForm::linear_combination(&c, basis).expect("same shape")
}

// --- so(3) irreducible modules on harmonic polynomials ---

fn monomials(deg: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in (0..=deg).rev() {
        for b in (0..=deg - a).rev() {
            out.push([a, b, deg - a - b]);
        }
    }
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// so(3) acting on harmonic polynomials of degree j (dimension 2j+1): action matrices of
/// the rotation fields L₁, L₂, L₃ with [L₁, L₂] = L₃ cyclic, plus the Fischer Gram matrix
/// ⟨x^α, x^β⟩ = δ α!, which is invariant and rational.
pub fn so3_harmonic(j: usize) -> (Vec<QMatrix>, QMatrix) {
    let mons = monomials(j);
    let index = |m: &[usize; 3]| mons.iter().position(|x| x == m).unwrap();
    let lower = if j >= 2 { monomials(j - 2) } else { Vec::new() };
    // Laplacian P_j → P_{j-2}
    let lap_cols: Vec<Vec<Q>> = mons
        .iter()
        .map(|m| {
            let mut v = vec![Q::zero(); lower.len()];
            for axis in 0..3 {
                if m[axis] >= 2 {
                    let mut t = *m;
                    t[axis] -= 2;
                    let pos = lower.iter().position(|x| *x == t).unwrap();
                    v[pos] += q((m[axis] * (m[axis] - 1)) as i64);
                }
            }
            v
        })
        .collect();
    let harmonic: Vec<Vec<Q>> = if lower.is_empty() {
        (0..mons.len()).map(|i| unit(mons.len(), i)).collect()
    } else {
        QMatrix::from_cols(&lap_cols, lower.len()).null_space()
    };
    let solver = CoordSolver::new(&harmonic).expect("independent");
    // L_a = x_b ∂_c − x_c ∂_b for (a, b, c) cyclic; on monomials
    let field = |b: usize, c: usize, p: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); mons.len()];
        for (i, m) in mons.iter().enumerate() {
            if p[i].is_zero() {
                continue;
            }
            if m[c] > 0 {
                let mut t = *m;
                t[c] -= 1;
                t[b] += 1;
                out[index(&t)] += &p[i] * q(m[c] as i64);
            }
            if m[b] > 0 {
                let mut t = *m;
                t[b] -= 1;
                t[c] += 1;
                out[index(&t)] -= &p[i] * q(m[b] as i64);
            }
        }
        out
    };
    let dim = harmonic.len();
    let mut action = Vec::new();
    for (b, c) in [(2usize, 1usize), (0, 2), (1, 0)] {
        let mut mat = QMatrix::zeros(dim, dim);
        for (col, h) in harmonic.iter().enumerate() {
            let img = solver.coords(&field(b, c, h)).expect("harmonic polynomials are rotation invariant");
            for (r, x) in img.into_iter().enumerate() {
                mat[(r, col)] = x;
            }
        }
        action.push(mat);
    }
    let fischer: Vec<Q> = mons.iter().map(|m| q(factorial(m[0]) * factorial(m[1]) * factorial(m[2]))).collect();
    let gram = QMatrix::from_fn(dim, dim, |r, c| {
        harmonic[r].iter().zip(&harmonic[c]).zip(&fischer).fold(Q::zero(), |s, ((a, b), f)| s + a * b * f)
    });
    (action, gram)
}

/// Rescales so(3) generators to satisfy [X₁,X₂] = X₃ cyclically (up to a common sign).
pub fn standard_so3_triple(xs: &[QMatrix; 3]) -> Result<[QMatrix; 3]> {
    let c = xs[0].commutator(&xs[1]);
    // find λ with [X1, X2] = λ X3
    let lambda = ratio(&c, &xs[2]).ok_or_else(|| Error::Internal("not an so(3) triple".into()))?;
    // scale all by 1/λ: [X1/λ, X2/λ] = X3/λ
    let s = lambda.recip();
    let out = [xs[0].scale(&s), xs[1].scale(&s), xs[2].scale(&s)];
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        if out[a].commutator(&out[b]) != out[c] {
            return Err(Error::Internal("not an so(3) triple".into()));
        }
    }
    Ok(out)
}

fn ratio(a: &QMatrix, b: &QMatrix) -> Option<Q> {
    let (x, y) = a.entries().iter().zip(b.entries()).find(|(_, y)| !y.is_zero())?;
    let r = x / y;
    (b.scale(&r) == *a).then_some(r)
}

/// A positive multiple of the rotation generator in a factor, handy for torus recipes.
pub fn half(x: &QMatrix) -> QMatrix {
    x.scale(&qf(1, 2))
}

pub fn is_positive_definite(m: &QMatrix) -> bool {
    signature(m) == (m.rows(), 0) && m.rows() > 0 && !m.det().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_dimensions() {
        assert_eq!(so(5).unwrap().dim(), 10);
        assert_eq!(su(3).unwrap().dim(), 8);
        assert_eq!(sp(2).unwrap().dim(), 10);
        assert_eq!(u(3).unwrap().dim(), 9);
        assert_eq!(sp(1).unwrap().dim(), 3);
        assert!(build_algebra("so(9)").is_err());
        assert!(build_algebra("e8").is_err());
        assert_eq!(build_algebra("sp(2)+sp(1)").unwrap().dim(), 13);
    }

    #[test]
    fn jacobi_and_invariance() {
        for a in [so(4).unwrap(), su(3).unwrap(), sp(2).unwrap(), u(2).unwrap(), abelian(3).unwrap()] {
            assert!(a.jacobi_holds(), "{}", a.name);
            assert!(a.closure_holds(), "{}", a.name);
            assert!(a.form_is_invariant(), "{}", a.name);
            assert!(is_positive_definite(&a.gram()), "{}", a.name);
        }
    }

    #[test]
    fn whole_algebra_has_zero_complement() {
        let g = su(2).unwrap();
        let h = SubalgebraEmbedding::new(&g, g.basis(), "all").unwrap();
        let m = reductive_complement(&g, &h).unwrap();
        assert_eq!(m.dim(), 0);
    }

    #[test]
    fn harmonic_modules() {
        for j in 1..=3 {
            let (action, gram) = so3_harmonic(j);
            assert_eq!(gram.rows(), 2 * j + 1);
            for a in &action {
                assert!(a.transpose().mul(&gram).add(&gram.mul(a)).is_zero());
            }
            assert_eq!(action[0].commutator(&action[1]), action[2]);
        }
    }

    #[test]
    fn joint_kernel_of_nothing_is_everything() {
        assert_eq!(joint_kernel(&[], 4).len(), 4);
    }

    #[test]
    fn so7_over_g2() {
        let g = so(7).unwrap();
        let g2 = crate::stable_forms::annihilator(&crate::stable_forms::phi());
        let h = SubalgebraEmbedding::new(&g, &g2, "g2").unwrap();
        assert_eq!(h.dim(), 14);
        let m = reductive_complement(&g, &h).unwrap();
        assert_eq!(m.dim(), 7);
        assert!(m.is_representation());
        assert!(m.is_effective());
        assert_eq!(invariant_dims(&m), InvariantDims { d1: 0, d2: 1, d3: 1 });
        assert_eq!(irreducible_dims(&m).unwrap(), vec![7]);
        let types = invariant_form_types(&m, &ScanConfig::default()).unwrap();
        assert!(types.has_definite);
    }
}
