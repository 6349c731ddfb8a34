//! Independent recomputations of derived values, and pinned values for the catalog
//! and the analyses.

use g2homog::analysis::{coclosed_family, example_429, rank_chain, run};
use g2homog::catalog::{build_entry, build_from_entry, catalog};
use g2homog::homogeneous::{ce_differential, InvariantComplex};
use g2homog::liealg::{invariant_dims, invariant_forms, irreducible_dims, IsotropyModule, ScanConfig};
use g2homog::linalg::{q, QMatrix, Q};
use g2homog::multilinear::{FormBasis, KForm};
use g2homog::octonion::{to_form_coords, OctonionAlgebra};
use g2homog::stable_forms::{
    annihilator, classify3, classify_i128, decompose3, hitchin_matrix, hitchin_matrix_by_wedges, phi, phi_tilde, star_phi,
};
use g2homog::linalg::span_basis;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Antisymmetric coefficient t(a,b,c) on 0-based indices, with the basis position.
fn slot(a: usize, b: usize, c: usize) -> Option<(usize, i64)> {
    if a == b || b == c || a == c {
        return None;
    }
    let mut v = [a, b, c];
    let mut sign = 1;
    for i in 0..3 {
        for j in 0..2 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    let basis = FormBasis::get(7, 3);
    let mask = (1u32 << v[0]) | (1u32 << v[1]) | (1u32 << v[2]);
    Some((basis.index_of(mask), sign))
}

/// dim of 3-tensors t with Σ t(Ae_a, e_b, e_c) + … = 0 and t(F·, F·, F·) = t, by direct expansion.
fn brute_d3(m: &IsotropyModule) -> usize {
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let triples: Vec<[usize; 3]> = (0..7).flat_map(|a| (a + 1..7).flat_map(move |b| (b + 1..7).map(move |c| [a, b, c]))).collect();
    for a in m.action() {
        for &[x, y, z] in &triples {
            let mut row = vec![Q::zero(); 35];
            for k in 0..7 {
                for (pos, args) in [(0, [k, y, z]), (1, [x, k, z]), (2, [x, y, k])] {
                    let coef = &a[(k, [x, y, z][pos])];
                    if coef.is_zero() {
                        continue;
                    }
                    if let Some((i, s)) = slot(args[0], args[1], args[2]) {
                        row[i] += coef * q(s);
                    }
                }
            }
            rows.push(row);
        }
    }
    for g in m.finite_generators() {
        let f = &g.matrix;
        for &[x, y, z] in &triples {
            let mut row = vec![Q::zero(); 35];
            for i in 0..7 {
                for j in 0..7 {
                    for k in 0..7 {
                        let c = &f[(i, x)] * &f[(j, y)] * &f[(k, z)];
                        if c.is_zero() {
                            continue;
                        }
                        if let Some((p, s)) = slot(i, j, k) {
                            row[p] += c * q(s);
                        }
                    }
                }
            }
            let (p, _) = slot(x, y, z).unwrap();
            row[p] -= q(1);
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return 35;
    }
    35 - QMatrix::from_rows(rows).rank()
}

/// α(e_a1, …, e_ak) for a form given by its coefficients, 0-based arguments.
fn eval(a: &KForm, args: &[usize]) -> Q {
    let idx: Vec<usize> = args.iter().map(|i| i + 1).collect();
    a.coeff(&idx)
}

/// Koszul formula on invariant forms: dα(X0..Xk) = Σ_{i<j} (−1)^{i+j} α([Xi,Xj]_V, X0..X̂i..X̂j..Xk).
fn koszul(bracket: &[Vec<Vec<Q>>], a: &KForm, args: &[usize]) -> Q {
    let mut total = Q::zero();
    let k = args.len();
    for i in 0..k {
        for j in i + 1..k {
            let rest: Vec<usize> = (0..k).filter(|&p| p != i && p != j).map(|p| args[p]).collect();
            let sign = if (i + j) % 2 == 0 { q(1) } else { q(-1) };
            for (mm, c) in bracket[args[i]][args[j]].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut full = vec![mm];
                full.extend(&rest);
                total += &sign * c * eval(a, &full);
            }
        }
    }
    total
}

#[test]
fn hitchin_matrix_matches_the_wedge_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let c: Vec<i64> = (0..35).map(|_| if rng.gen_bool(0.3) { rng.gen_range(-3..=3) } else { 0 }).collect();
        let t = KForm::from_dense(7, 3, &c.iter().map(|&x| q(x)).collect::<Vec<_>>()).unwrap();
        assert_eq!(hitchin_matrix(&t).unwrap(), hitchin_matrix_by_wedges(&t).unwrap());
        let wide: Vec<i128> = c.iter().map(|&x| i128::from(x)).collect();
        assert_eq!(classify_i128(&wide), classify3(&t).unwrap());
    }
}

#[test]
fn reference_hitchin_matrices() {
    // B = 6 g vol with g the Euclidean metric for φ and the (3,4) metric for φ̃
    assert_eq!(hitchin_matrix(&phi()).unwrap(), QMatrix::identity(7).scale(&q(6)));
    let bt = hitchin_matrix(&phi_tilde()).unwrap();
    assert!(bt.is_symmetric());
    assert_eq!(bt.det().abs(), Q::from_integer(6i64.pow(7).into()));
}

#[test]
fn invariant_3forms_match_direct_tensor_equations() {
    for e in &catalog().entries {
        let b = build_from_entry(e.clone()).unwrap();
        assert_eq!(invariant_dims(&b.module).d3, brute_d3(&b.module), "{}", e.id);
    }
}

#[test]
fn ce_differential_matches_the_koszul_formula_on_invariant_forms() {
    for id in ["1", "2ai", "3aiii", "4i", "5ii", "2d", "7", "8-su4"] {
        let b = build_entry(id, None).unwrap();
        let bracket = b.module.bracket().unwrap().to_vec();
        for k in 1..=3 {
            for a in invariant_forms(&b.module, k) {
                let d = ce_differential(&b.module, &a).unwrap();
                for mask in FormBasis::get(7, k + 1).masks() {
                    let args: Vec<usize> = (0..7).filter(|i| mask & (1 << i) != 0).collect();
                    assert_eq!(eval(&d, &args), koszul(&bracket, &a, &args), "{id} degree {k}");
                }
            }
        }
        assert!(InvariantComplex::new(&b.module).unwrap().squares_to_zero(), "{id}");
    }
}

#[test]
fn split_octonion_derivations_are_the_stabilizer_of_phi_tilde() {
    let ders: Vec<Vec<Q>> = OctonionAlgebra::split().derivations().iter().map(|d| to_form_coords(d).flatten()).collect();
    let ann: Vec<Vec<Q>> = annihilator(&phi_tilde()).iter().map(|a| a.flatten()).collect();
    let mut both = ders.clone();
    both.extend(ann.iter().cloned());
    assert_eq!(span_basis(&ders).len(), 14);
    assert_eq!(span_basis(&both).len(), 14);
}

#[test]
fn decomposition_of_known_forms() {
    let (p1, p7, p27) = decompose3(&phi()).unwrap();
    assert_eq!(p1, phi());
    assert!(p7.is_zero() && p27.is_zero());
    let (s1, s7, s27) = decompose3(&star_phi().interior_basis(1).unwrap()).unwrap();
    assert!(s1.is_zero() && s27.is_zero());
    assert!(!s7.is_zero());
}

#[test]
fn catalog_dims_match_tables_except_3biii() {
    let cfg = ScanConfig::default();
    for e in &catalog().entries {
        let b = build_from_entry(e.clone()).unwrap();
        let d = invariant_dims(&b.module);
        let got = [d.d1, d.d2, d.d3];
        let mut irr = irreducible_dims(&b.module).unwrap();
        irr.sort_unstable();
        let mut want_irr = e.expected.irreducible.clone();
        want_irr.sort_unstable();
        assert_eq!(irr, want_irr, "{}", e.id);
        if e.case == "3biii" && e.params != [1, 3] {
            // charges 3k and 2l force |l| = 3|k| for stable forms
            assert_eq!(got, [1, 3, 2], "{}", e.id);
            let types = g2homog::liealg::invariant_form_types(&b.module, &cfg).unwrap();
            assert!(!types.has_definite && !types.has_indefinite);
        } else {
            assert_eq!(got, [e.expected.d1, e.expected.d2, e.expected.d3], "{}", e.id);
        }
    }
}

#[test]
fn rank_chain_values() {
    let r = rank_chain().unwrap();
    assert_eq!(r.ranks, vec![0, 3, 12, 18, 12, 3, 0, 0]);
    assert_eq!(r.kernels, vec![1, 4, 9, 17, 23, 18, 7, 1]);
    let printed = r.claims.iter().find(|c| c.name == "rank chain under printed constants equals compact").unwrap();
    assert!(printed.pass);
}

#[test]
fn coclosed_family_values() {
    let r = coclosed_family().unwrap();
    let fam = |n: &str| r.claims.iter().find(|c| c.name == n).unwrap().computed.clone();
    assert_eq!(fam("family dim (su2+R4, phi+)"), 23);
    assert_eq!(fam("family dim (su2+R4, phi-)"), 23);
    assert_eq!(fam("family dim (T7, phi)"), 35);
}

#[test]
fn psi_family_metric_values() {
    let r = example_429().unwrap();
    let c = r.claims.iter().find(|c| c.name == "computed metric is 6a^2(a+b) I3 + 6a^3 I4 at all points").unwrap();
    assert!(c.pass);
}

#[test]
fn closed_scan_finds_no_stable_closed_form_on_su2_r4() {
    let r = run("closed-scan", Some(2000), 20_240_611, None).unwrap();
    for n in ["no definite closed sample on su2+R4", "no indefinite closed sample on su2+R4", "T7 has stable closed samples"] {
        assert!(r.claims.iter().find(|c| c.name == n).unwrap().pass, "{n}");
    }
    let closed = r.claims.iter().find(|c| c.name == "closed invariant 3-forms on su2+R4").unwrap();
    assert_eq!(closed.computed, 17);
}
