//! Values computed here from closed formulas, independently of the library's
//! Weyl-group machinery, then compared with what the library produces.

use std::f64::consts::PI;

use verlinde_core::fusion::{self, FusionVector, INTEGRALITY_TOLERANCE};
use verlinde_core::phases;
use verlinde_core::rootdata::LieType;
use verlinde_core::verlinde::{ModuliSpec, Verlinde};
use verlinde_core::{Execution, RootDatum};

use crate::fixture;

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `S_{ab} = √(2/(k+2)) sin(π(a+1)(b+1)/(k+2))`.
fn su2_s(k: i64, a: i64, b: i64) -> f64 {
    let kk = (k + 2) as f64;
    (2.0 / kk).sqrt() * (PI * ((a + 1) * (b + 1)) as f64 / kk).sin()
}

#[test]
fn su2_verlinde_matches_sine_sums() {
    let f = fixture("A1");
    let triv = f.center.trivial_subgroup(&f.rd);
    for k in 1..=8 {
        let v = Verlinde::new(&f.rd, &f.group, &f.center, &triv, k, Execution::Sequential).unwrap();
        for genus in 0..=3u32 {
            let got = v.verlinde_sc_all(genus).unwrap();
            for m in 0..=k {
                let want: f64 = (0..=k)
                    .map(|j| su2_s(k, j, 0).powi(1 - 2 * genus as i32) * su2_s(k, j, m))
                    .sum();
                let idx = v.table().index_of(&[m]).unwrap();
                assert_eq!(got[idx].value, want.round() as i64, "k={k} g={genus} m={m}");
            }
        }
        // genus two, trivial label: binom(k+3, 3)
        assert_eq!(v.verlinde_sc(2, &[0]).unwrap().value, binomial(k + 3, 3));
    }
}

#[test]
fn so3_genus_one() {
    // Z = Z2 fixes only λ = k/2, where δ(c,c) = (−1)^{k/2}, so
    // Q = (k + 1 + (−1)^b + (−1)^a + (−1)^{a+b+k/2}) / 4 for φ = (a, b).
    let f = fixture("A1");
    let z = f.center.full_subgroup(&f.rd);
    for k in [2, 4, 6, 8, 10] {
        let v = Verlinde::new(&f.rd, &f.group, &f.center, &z, k, Execution::Sequential).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let phi = vec![z.character(&[a]).unwrap(), z.character(&[b]).unwrap()];
                let sign = |e: i64| if e % 2 == 0 { 1 } else { -1 };
                let want = (k + 1 + sign(b) + sign(a) + sign(a + b + k / 2)) / 4;
                let spec = ModuliSpec {
                    genus: 1,
                    phi,
                    mu: vec![0],
                };
                assert_eq!(v.verlinde_nsc(&spec).unwrap().value, want, "k={k} φ=({a},{b})");
            }
        }
    }
}

#[test]
fn pu3_level_three_values() {
    let f = fixture("A2");
    let z = f.center.full_subgroup(&f.rd);
    let v = Verlinde::new(&f.rd, &f.group, &f.center, &z, 3, Execution::Sequential).unwrap();
    let trivial = vec![z.trivial_character(); 2];
    let twisted = vec![z.character(&[1]).unwrap(), z.character(&[2]).unwrap()];
    let q = |phi: &Vec<_>| {
        v.verlinde_nsc(&ModuliSpec {
            genus: 1,
            phi: phi.clone(),
            mu: vec![0, 0],
        })
        .unwrap()
        .value
    };
    assert_eq!(q(&trivial), 2);
    assert_eq!(q(&twisted), 1);
    // Q_SU(3)(g=1, k=3) counts P_3
    assert_eq!(v.verlinde_sc(1, &[0, 0]).unwrap().value, 10);
}

#[test]
fn su2_fusion_is_truncated_clebsch_gordan() {
    let f = fixture("A1");
    for k in 1..=5 {
        let table = fusion::level_weights(&f.rd, k).unwrap();
        let s = fusion::s_matrix(&f.rd, &f.group, &table, Execution::Sequential);
        let n = table.len();
        for a in 0..=k {
            for b in 0..=k {
                let x = FusionVector::basis(n, table.index_of(&[a]).unwrap());
                let y = FusionVector::basis(n, table.index_of(&[b]).unwrap());
                let p = fusion::fusion_product(&s, &table, &x, &y, INTEGRALITY_TOLERANCE).unwrap();
                for c in 0..=k {
                    let allowed = (a - b).abs() <= c && c <= (a + b).min(2 * k - a - b) && (a + b + c) % 2 == 0;
                    let got = p.get(table.index_of(&[c]).unwrap());
                    assert_eq!(got, i64::from(allowed), "k={k} {a}x{b}->{c}");
                }
            }
        }
    }
}

#[test]
fn su3_level_one_fusion_is_z3() {
    let f = fixture("A2");
    let table = fusion::level_weights(&f.rd, 1).unwrap();
    let s = fusion::s_matrix(&f.rd, &f.group, &table, Execution::Sequential);
    let idx = |l: [i64; 2]| table.index_of(&l).unwrap();
    let e = |l| FusionVector::basis(3, idx(l));
    let prod = |a, b| fusion::fusion_product(&s, &table, &e(a), &e(b), 1e-9).unwrap();
    assert_eq!(prod([1, 0], [1, 0]), e([0, 1]));
    assert_eq!(prod([1, 0], [0, 1]), e([0, 0]));
    assert_eq!(prod([0, 1], [0, 1]), e([1, 0]));
}

#[test]
fn coxeter_numbers_and_orders() {
    let cases: [(&str, i64, i64, u64); 14] = [
        ("A1", 2, 2, 2),
        ("A4", 5, 5, 120),
        ("B2", 4, 3, 8),
        ("B4", 8, 7, 384),
        ("C3", 6, 4, 48),
        ("C5", 10, 6, 3840),
        ("D4", 6, 6, 192),
        ("D6", 10, 10, 23040),
        ("E6", 12, 12, 51840),
        ("E7", 18, 18, 2903040),
        ("E8", 30, 30, 696729600),
        ("F4", 12, 9, 1152),
        ("G2", 6, 4, 12),
        ("A6", 7, 7, 5040),
    ];
    for (t, h, hv, w) in cases {
        let rd = RootDatum::new(t.parse().unwrap());
        assert_eq!(rd.coxeter_number(), h, "{t}");
        assert_eq!(rd.dual_coxeter_number(), hv, "{t}");
        assert_eq!(t.parse::<LieType>().unwrap().weyl_order(), w, "{t}");
        assert_eq!(rd.num_positive_roots() as i64 * 2, h * rd.rank() as i64, "{t}");
    }
}

/// Solutions of `n₀ + Σ a_i n_i = k` in nonnegative integers.
fn count_levels(comarks: &[i64], k: i64) -> usize {
    match comarks.split_first() {
        None => 1,
        Some((a, rest)) => (0..=k / a).map(|n| count_levels(rest, k - n * a)).sum(),
    }
}

#[test]
fn level_weight_counts() {
    let comarks: [(&str, Vec<i64>); 6] = [
        ("A3", vec![1, 1, 1]),
        ("B3", vec![1, 2, 1]),
        ("C4", vec![1, 1, 1, 1]),
        ("D5", vec![1, 2, 2, 1, 1]),
        ("E6", vec![1, 2, 3, 2, 1, 2]),
        ("G2", vec![1, 2]),
    ];
    for (t, a) in comarks {
        let rd = RootDatum::new(t.parse().unwrap());
        let mut sorted = rd.comarks().to_vec();
        sorted.sort();
        let mut want = a.clone();
        want.sort();
        assert_eq!(sorted, want, "{t} comarks");
        for k in 0..=5 {
            let n = fusion::level_weights(&rd, k).unwrap().len();
            assert_eq!(n, count_levels(&a, k), "{t} k={k}");
        }
    }
    for l in 1..=5 {
        let rd = RootDatum::new(format!("A{l}").parse().unwrap());
        for k in 0..=6 {
            let n = fusion::level_weights(&rd, k).unwrap().len() as i64;
            assert_eq!(n, binomial(k + l as i64, l as i64));
        }
    }
}

#[test]
fn torus_orders_for_simply_laced_types() {
    // #T_K = K^l · #Z(G) when P∨ = P under the basic form
    for (t, z) in [("A1", 2), ("A2", 3), ("A4", 5), ("D4", 4), ("D5", 4), ("E6", 3)] {
        let rd = RootDatum::new(t.parse().unwrap());
        for big_k in 1..=7i64 {
            assert_eq!(
                fusion::torus_order(&rd, big_k),
                (big_k.pow(rd.rank() as u32) * z) as u64,
                "{t} K={big_k}"
            );
        }
    }
}

#[test]
fn denominator_product_matches_alternating_sum() {
    for t in ["A3", "B3", "C3", "D4", "G2", "F4"] {
        let f = fixture(t);
        for k in [1, 2] {
            let table = fusion::level_weights(&f.rd, k).unwrap();
            for i in 0..table.len() {
                let z = table.zeta(i);
                let a = fusion::weyl_denominator(&f.rd, &f.group, z);
                let b = fusion::weyl_denominator_sum(&f.rd, &f.group, z);
                assert!((a - b).norm() < 1e-9 * (1.0 + a.norm()), "{t} k={k} {i}");
            }
        }
    }
}

#[test]
fn su2_delta_and_s_matrix() {
    let f = fixture("A1");
    let z = f.center.full_subgroup(&f.rd);
    let c = z.elements()[1].clone();
    for k in [2, 4, 6] {
        // exponent k (1−s)⁻¹ϖ∨·ϖ∨ = k/4
        let d = phases::delta(&f.rd, &z, k, &c, &c).unwrap();
        let want = if k % 4 == 0 { 1.0 } else { -1.0 };
        assert!((d.value().re - want).abs() < 1e-12);
        let table = fusion::level_weights(&f.rd, k).unwrap();
        let s = fusion::s_matrix(&f.rd, &f.group, &table, Execution::Sequential);
        for a in 0..=k {
            for b in 0..=k {
                let (ia, ib) = (table.index_of(&[a]).unwrap(), table.index_of(&[b]).unwrap());
                // i^{N+} with N+ = 1 on the literal convention
                let want = su2_s(k, a, b);
                assert!((s.get(ia, ib).norm() - want.abs()).abs() < 1e-12);
            }
        }
    }
}
