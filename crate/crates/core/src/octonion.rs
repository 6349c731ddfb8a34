//! Compact and split octonions by Cayley–Dickson doubling of ℍ, automorphism
//! tests, and the embedding χ: Sp(1)×Sp(1) → Aut of the split octonions.
//!
//! Basis order: 1, i, j, k, e, ie, je, ke, where an element is a + b·e with a, b ∈ ℍ.
//! Linear maps on the imaginary part use coordinates 1..7 of this basis.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix, Q};
use crate::multilinear::KForm;
use crate::stable_forms::{phi, phi_tilde};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OctonionKind {
    Compact,
    Split,
}

impl OctonionKind {
    fn gamma(self) -> i64 {
        match self {
            OctonionKind::Compact => -1,
            OctonionKind::Split => 1,
        }
    }
}

type Quat = [i64; 4];

fn quat_mul(a: &Quat, b: &Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn quat_conj(a: &Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

fn quat_add(a: &Quat, b: &Quat) -> Quat {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn quat_scale(s: i64, a: &Quat) -> Quat {
    [s * a[0], s * a[1], s * a[2], s * a[3]]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctonionAlgebra {
    pub kind: OctonionKind,
    /// e_a · e_b = sign · e_index
    pub table: [[(i8, u8); 8]; 8],
}

impl OctonionAlgebra {
    /// (a,b)(c,d) = (ac + γ·d̄b, da + bc̄).
    pub fn new(kind: OctonionKind) -> Self {
        let g = kind.gamma();
        let unit = |i: usize| -> ([i64; 4], [i64; 4]) {
            let mut a = [0; 4];
            let mut b = [0; 4];
            if i < 4 {
                a[i] = 1;
            } else {
                b[i - 4] = 1;
            }
            (a, b)
        };
        let mut table = [[(0i8, 0u8); 8]; 8];
        for (x, row) in table.iter_mut().enumerate() {
            for (y, entry) in row.iter_mut().enumerate() {
                let (a, b) = unit(x);
                let (c, d) = unit(y);
                let first = quat_add(&quat_mul(&a, &c), &quat_scale(g, &quat_mul(&quat_conj(&d), &b)));
                let second = quat_add(&quat_mul(&d, &a), &quat_mul(&b, &quat_conj(&c)));
                let coords: Vec<i64> = first.iter().chain(second.iter()).copied().collect();
                let idx = coords.iter().position(|&v| v != 0).expect("basis products are nonzero");
                debug_assert!(coords.iter().filter(|&&v| v != 0).count() == 1);
                *entry = (coords[idx] as i8, idx as u8);
            }
        }
        OctonionAlgebra { kind, table }
    }

    pub fn compact() -> Self {
        Self::new(OctonionKind::Compact)
    }

    pub fn split() -> Self {
        Self::new(OctonionKind::Split)
    }

    pub fn multiply(&self, x: &OctonionElem, y: &OctonionElem) -> OctonionElem {
        let mut out: [Q; 8] = Default::default();
        for a in 0..8 {
            if x.0[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if y.0[b].is_zero() {
                    continue;
                }
                let (s, c) = self.table[a][b];
                let p = &x.0[a] * &y.0[b];
                if s > 0 {
                    out[c as usize] += p;
                } else {
                    out[c as usize] -= p;
                }
            }
        }
        OctonionElem(out)
    }

    pub fn associator(&self, x: &OctonionElem, y: &OctonionElem, z: &OctonionElem) -> OctonionElem {
        let l = self.multiply(&self.multiply(x, y), z);
        let r = self.multiply(x, &self.multiply(y, z));
        l.sub(&r)
    }

    /// ⟨u, v⟩ = Re(u·v̄) on basis elements.
    pub fn norm_form_diag(&self) -> [i64; 8] {
        let mut d = [0; 8];
        for (a, di) in d.iter_mut().enumerate() {
            // e_a · conj(e_a) = e_a·e_a for a = 0, and −e_a·e_a otherwise
            let (s, c) = self.table[a][a];
            debug_assert_eq!(c, 0);
            *di = if a == 0 { i64::from(s) } else { -i64::from(s) };
        }
        d
    }

    /// T(x, y, z) = ⟨xy, z⟩ on the imaginary part, in octonion coordinates.
    pub fn three_form(&self) -> KForm {
        let norm = self.norm_form_diag();
        let mut terms = Vec::new();
        for a in 1..8 {
            for b in a + 1..8 {
                let (s, c) = self.table[a][b];
                let c = c as usize;
                if c > b {
                    terms.push((vec![a, b, c], q(i64::from(s) * norm[c])));
                }
            }
        }
        KForm::from_terms(7, 3, terms).expect("valid 3-form")
    }

    /// True iff 1 ⊕ M preserves all products of imaginary basis elements.
    pub fn is_automorphism(&self, m: &QMatrix) -> bool {
        if m.rows() != 7 || m.cols() != 7 {
            return false;
        }
        let image = |a: usize| -> OctonionElem {
            let mut v: [Q; 8] = Default::default();
            if a == 0 {
                v[0] = Q::one();
            } else {
                for r in 0..7 {
                    v[r + 1] = m[(r, a - 1)].clone();
                }
            }
            OctonionElem(v)
        };
        let images: Vec<OctonionElem> = (0..8).map(image).collect();
        for a in 1..8 {
            for b in 1..8 {
                let (s, c) = self.table[a][b];
                let lhs = images[c as usize].scale(&q(i64::from(s)));
                let rhs = self.multiply(&images[a], &images[b]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Derivations of the algebra, as 7×7 matrices on the imaginary part.
    pub fn derivations(&self) -> Vec<QMatrix> {
        // unknown (r, c) ↦ column r*7 + c: D(e_{c+1}) = Σ_r D_rc e_{r+1}
        let unknown = |r: usize, c: usize| r * 7 + c;
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for a in 1..8 {
            for b in 1..8 {
                let mut eqs = vec![vec![Q::zero(); 49]; 8];
                let (s, d) = self.table[a][b];
                if d != 0 {
                    for r in 0..7 {
                        eqs[r + 1][unknown(r, d as usize - 1)] += q(i64::from(s));
                    }
                }
                for r in 0..7 {
                    let (s1, o1) = self.table[r + 1][b];
                    eqs[o1 as usize][unknown(r, a - 1)] -= q(i64::from(s1));
                    let (s2, o2) = self.table[a][r + 1];
                    eqs[o2 as usize][unknown(r, b - 1)] -= q(i64::from(s2));
                }
                rows.extend(eqs);
            }
        }
        QMatrix::from_rows(rows)
            .null_space()
            .into_iter()
            .map(|v| QMatrix::from_fn(7, 7, |r, c| v[unknown(r, c)].clone()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OctonionElem(pub [Q; 8]);

impl OctonionElem {
    pub fn basis(i: usize) -> Self {
        let mut v: [Q; 8] = Default::default();
        v[i] = Q::one();
        OctonionElem(v)
    }

    pub fn from_i64(c: [i64; 8]) -> Self {
        OctonionElem(c.map(q))
    }

    pub fn sub(&self, o: &OctonionElem) -> OctonionElem {
        let mut v = self.0.clone();
        for (x, y) in v.iter_mut().zip(&o.0) {
            *x -= y;
        }
        OctonionElem(v)
    }

    pub fn scale(&self, s: &Q) -> OctonionElem {
        OctonionElem(self.0.clone().map(|x| x * s))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// Exact unit quaternion q₀ + q₁i + q₂j + q₃k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitQuaternion([Q; 4]);

fn qmul(a: &[Q; 4], b: &[Q; 4]) -> [Q; 4] {
    [
        &a[0] * &b[0] - &a[1] * &b[1] - &a[2] * &b[2] - &a[3] * &b[3],
        &a[0] * &b[1] + &a[1] * &b[0] + &a[2] * &b[3] - &a[3] * &b[2],
        &a[0] * &b[2] - &a[1] * &b[3] + &a[2] * &b[0] + &a[3] * &b[1],
        &a[0] * &b[3] + &a[1] * &b[2] - &a[2] * &b[1] + &a[3] * &b[0],
    ]
}

fn qconj(a: &[Q; 4]) -> [Q; 4] {
    [a[0].clone(), -a[1].clone(), -a[2].clone(), -a[3].clone()]
}

impl UnitQuaternion {
    pub fn new(c: [Q; 4]) -> Result<Self> {
        let n: Q = c.iter().map(|x| x * x).sum();
        if n.is_one() {
            Ok(UnitQuaternion(c))
        } else {
            Err(Error::NonUnit)
        }
    }

    pub fn one() -> Self {
        UnitQuaternion([q(1), q(0), q(0), q(0)])
    }

    /// p²/|p|² for a nonzero integer quadruple p; always an exact unit.
    pub fn from_integers(p: [i64; 4]) -> Result<Self> {
        let n: i64 = p.iter().map(|x| x * x).sum();
        if n == 0 {
            return Err(Error::NonUnit);
        }
        let pq = p.map(q);
        let sq = qmul(&pq, &pq);
        UnitQuaternion::new(sq.map(|x| x / q(n)))
    }

    pub fn coords(&self) -> &[Q; 4] {
        &self.0
    }

    pub fn mul(&self, o: &UnitQuaternion) -> UnitQuaternion {
        UnitQuaternion(qmul(&self.0, &o.0))
    }

    pub fn neg(&self) -> UnitQuaternion {
        UnitQuaternion(self.0.clone().map(|x| -x))
    }
}

/// χ(q₁,q₂)(a + be) = q₁aq̄₁ + (q₂bq̄₁)e on Im ℍ ⊕ ℍe, in octonion coordinates 1..7.
pub fn chi_embedding(q1: &UnitQuaternion, q2: &UnitQuaternion) -> QMatrix {
    let c1 = qconj(&q1.0);
    let mut m = QMatrix::zeros(7, 7);
    for col in 0..3 {
        let mut a: [Q; 4] = Default::default();
        a[col + 1] = Q::one();
        let img = qmul(&qmul(&q1.0, &a), &c1);
        for r in 0..3 {
            m[(r, col)] = img[r + 1].clone();
        }
    }
    for col in 0..4 {
        let mut b: [Q; 4] = Default::default();
        b[col] = Q::one();
        let img = qmul(&qmul(&q2.0, &b), &c1);
        for r in 0..4 {
            m[(3 + r, 3 + col)] = img[r].clone();
        }
    }
    m
}

/// Tangent map of χ at the identity, for imaginary quaternions u₁, u₂:
/// a + be ↦ [u₁, a] + (u₂b − bu₁)e.
pub fn chi_derivative(u1: [i64; 3], u2: [i64; 3]) -> QMatrix {
    let u1 = [q(0), q(u1[0]), q(u1[1]), q(u1[2])];
    let u2 = [q(0), q(u2[0]), q(u2[1]), q(u2[2])];
    let mut m = QMatrix::zeros(7, 7);
    for col in 0..3 {
        let mut a: [Q; 4] = Default::default();
        a[col + 1] = Q::one();
        let l = qmul(&u1, &a);
        let r = qmul(&a, &u1);
        for row in 0..3 {
            m[(row, col)] = &l[row + 1] - &r[row + 1];
        }
    }
    for col in 0..4 {
        let mut b: [Q; 4] = Default::default();
        b[col] = Q::one();
        let l = qmul(&u2, &b);
        let r = qmul(&b, &u1);
        for row in 0..4 {
            m[(3 + row, 3 + col)] = &l[row] - &r[row];
        }
    }
    m
}

/// A signed permutation e_i ↦ sign_i · e_{perm_i} from form coordinates to octonion coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPerm {
    /// 1-based targets
    pub perm: [usize; 7],
    pub signs: [i8; 7],
}

impl SignedPerm {
    pub fn matrix(&self) -> QMatrix {
        let mut a = QMatrix::zeros(7, 7);
        for i in 0..7 {
            a[(self.perm[i] - 1, i)] = q(i64::from(self.signs[i]));
        }
        a
    }
}

/// The frozen alignment: only e₇ changes sign.
pub fn alignment() -> SignedPerm {
    SignedPerm { perm: [1, 2, 3, 4, 5, 6, 7], signs: [1, 1, 1, 1, 1, 1, -1] }
}

/// Expresses a map given in octonion coordinates in the coordinates of φ and φ̃.
pub fn to_form_coords(m: &QMatrix) -> QMatrix {
    let a = alignment().matrix();
    a.inverse().expect("signed permutation").mul(m).mul(&a)
}

/// The literal reference form matched by each algebra.
pub fn target_form(kind: OctonionKind) -> KForm {
    match kind {
        OctonionKind::Compact => phi(),
        OctonionKind::Split => phi_tilde(),
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// All 3+4 block-preserving signed permutations A with A*T = target, in lexicographic order.
pub fn derive_alignments(kind: OctonionKind) -> Vec<SignedPerm> {
    let t = OctonionAlgebra::new(kind).three_form();
    let target = target_form(kind);
    let mut out = Vec::new();
    for p3 in permutations(&[1, 2, 3]) {
        for p4 in permutations(&[4, 5, 6, 7]) {
            let perm: Vec<usize> = p3.iter().chain(p4.iter()).copied().collect();
            for bits in 0u32..128 {
                let mut signs = [1i8; 7];
                for (i, s) in signs.iter_mut().enumerate() {
                    if bits >> (6 - i) & 1 == 1 {
                        *s = -1;
                    }
                }
                let sp = SignedPerm { perm: perm.clone().try_into().unwrap(), signs };
                if t.pullback(&sp.matrix()).expect("shape") == target {
                    out.push(sp);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_and_e_squared() {
        let s = OctonionAlgebra::split();
        let c = OctonionAlgebra::compact();
        let x = OctonionElem::from_i64([1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(s.multiply(&OctonionElem::basis(0), &x), x);
        assert_eq!(s.multiply(&x, &OctonionElem::basis(0)), x);
        let e = OctonionElem::basis(4);
        assert_eq!(s.multiply(&e, &e), OctonionElem::basis(0));
        assert_eq!(c.multiply(&e, &e), OctonionElem::basis(0).scale(&q(-1)));
    }

    #[test]
    fn alternative_but_not_associative() {
        for alg in [OctonionAlgebra::split(), OctonionAlgebra::compact()] {
            let mut nonassoc = false;
            for a in 0..8 {
                for b in 0..8 {
                    let (x, y) = (OctonionElem::basis(a), OctonionElem::basis(b));
                    assert!(alg.associator(&x, &x, &y).is_zero());
                    assert!(alg.associator(&y, &x, &x).is_zero());
                    for c in 0..8 {
                        nonassoc |= !alg.associator(&x, &y, &OctonionElem::basis(c)).is_zero();
                    }
                }
            }
            assert!(nonassoc);
            // i, j, e span both ℍ and ℍe
            let ijk = alg.associator(&OctonionElem::basis(1), &OctonionElem::basis(2), &OctonionElem::basis(4));
            assert!(!ijk.is_zero());
        }
    }

    #[test]
    fn reflection_is_not_an_automorphism() {
        let s = OctonionAlgebra::split();
        assert!(s.is_automorphism(&QMatrix::identity(7)));
        let d = QMatrix::diag(&[q(-1), q(1), q(1), q(1), q(1), q(1), q(1)]);
        assert!(!s.is_automorphism(&d));
    }

    #[test]
    fn chi_basics() {
        let one = UnitQuaternion::one();
        assert_eq!(chi_embedding(&one, &one), QMatrix::identity(7));
        assert_eq!(chi_embedding(&one.neg(), &one.neg()), QMatrix::identity(7));
        let qq = UnitQuaternion::from_integers([2, 1, 0, 0]).unwrap();
        assert_eq!(qq.coords(), &[crate::linalg::qf(3, 5), crate::linalg::qf(4, 5), q(0), q(0)]);
        let m = to_form_coords(&chi_embedding(&qq, &qq));
        assert_eq!(phi_tilde().pullback(&m).unwrap(), phi_tilde());
    }

    #[test]
    fn frozen_alignment_is_the_first_solution() {
        for kind in [OctonionKind::Split, OctonionKind::Compact] {
            let a = alignment();
            assert_eq!(OctonionAlgebra::new(kind).three_form().pullback(&a.matrix()).unwrap(), target_form(kind));
        }
    }

    #[test]
    fn derivation_algebra_has_dimension_14() {
        assert_eq!(OctonionAlgebra::compact().derivations().len(), 14);
        assert_eq!(OctonionAlgebra::split().derivations().len(), 14);
    }

    #[test]
    fn non_unit_rejected() {
        assert!(UnitQuaternion::new([q(1), q(1), q(0), q(0)]).is_err());
        assert!(UnitQuaternion::from_integers([0, 0, 0, 0]).is_err());
    }
}
