//! Randomized invariants.

use proptest::prelude::*;
use verlinde_core::centerlat::{Center, CenterSubgroup};
use verlinde_core::fusion::{self, FusionVector, INTEGRALITY_TOLERANCE};
use verlinde_core::linalg::{self, Q};
use verlinde_core::phases;
use verlinde_core::verlinde::{self, Verlinde};
use verlinde_core::weyl::{self, WeylElement};
use verlinde_core::{Error, Execution, RootDatum};

use crate::fixture;

const TYPES: [&str; 9] = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "D5", "G2"];
const CENTERED: [&str; 7] = ["A1", "A2", "A3", "B2", "C3", "D4", "D5"];

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

fn subgroup(rd: &RootDatum, center: &Center, pick: usize) -> CenterSubgroup {
    let all = center.all_subgroups(rd);
    all[pick % all.len()].clone()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn weyl_words_preserve_the_root_system(
        t in prop::sample::select(&TYPES[..]),
        word in prop::collection::vec(0usize..8, 0..12),
    ) {
        let rd = RootDatum::new(t.parse().unwrap());
        let word: Vec<usize> = word.into_iter().map(|i| i % rd.rank()).collect();
        let w = WeylElement::from_word(&rd, &word);
        prop_assert!(w.permutes_roots(&rd));
        prop_assert_eq!(w.det_on_root_span(&rd), linalg::q(i64::from(w.sign())));
        for a in rd.simple_roots() {
            for b in rd.simple_roots() {
                prop_assert_eq!(linalg::dot(&w.apply(a), &w.apply(b)), linalg::dot(a, b));
            }
        }
        prop_assert!(w.compose(&w.inverse()).is_identity());
    }

    #[test]
    fn to_dominant_lands_in_the_chamber(
        t in prop::sample::select(&TYPES[..]),
        coords in prop::collection::vec(-6i64..6, 8),
    ) {
        let rd = RootDatum::new(t.parse().unwrap());
        let x = rd.weight_from_labels(&coords[..rd.rank()]);
        let (w, y) = weyl::to_dominant(&rd, &x, false);
        prop_assert_eq!(&w.apply(&x), &y);
        prop_assert!(rd.weight_labels(&y).iter().all(|n| *n >= Q::from(0)));
    }

    #[test]
    fn center_is_a_group(t in prop::sample::select(&CENTERED[..]), i in 0usize..4, j in 0usize..4, l in 0usize..4) {
        let rd = RootDatum::new(t.parse().unwrap());
        let c = Center::new(&rd);
        let n = c.order();
        let (a, b, d) = (&c.elements()[i % n], &c.elements()[j % n], &c.elements()[l % n]);
        prop_assert_eq!(c.mul(&c.mul(a, b), d), c.mul(a, &c.mul(b, d)));
        prop_assert_eq!(c.mul(a, b), c.mul(b, a));
        prop_assert!(c.mul(a, &c.inverse(a)).is_identity());
        prop_assert!(c.pow(a, c.element_order(a) as i64).is_identity());
    }

    #[test]
    fn delta_is_bimultiplicative_where_defined(
        t in prop::sample::select(&CENTERED[..]),
        pick in 0usize..5,
        mult in 1i64..4,
    ) {
        let f = fixture(t);
        let z = subgroup(&f.rd, &f.center, pick);
        let (k0, _) = z.levels(&f.rd);
        let k = k0 * mult;
        let table = phases::delta_table(&f.rd, &z, k).unwrap();
        let els = z.elements();
        let at = |x: &verlinde_core::centerlat::CenterElement| z.index_of(x).unwrap();
        for (ia, a) in els.iter().enumerate() {
            for (ib, b) in els.iter().enumerate() {
                for (ic, c) in els.iter().enumerate() {
                    let ab = at(&f.center.mul(a, b));
                    if let (Some(x), Some(y), Some(xy)) = (table[ia][ic], table[ib][ic], table[ab][ic]) {
                        prop_assert_eq!(x * y, xy);
                    }
                    if let (Some(x), Some(y)) = (table[ia][ib], table[ia][ic]) {
                        if let Some(xy) = table[ia][at(&f.center.mul(b, c))] {
                            prop_assert_eq!(x * y, xy);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn commutator_is_alternating_and_bimultiplicative(
        t in prop::sample::select(&CENTERED[..]),
        pick in 0usize..5,
        k in 1i64..9,
        m in prop::collection::vec(-2i64..3, 24),
    ) {
        let f = fixture(t);
        let z = subgroup(&f.rd, &f.center, pick);
        let basis = z.lambda_basis();
        let r = basis.len();
        let dim = f.rd.ambient_dim();
        let comb = |cs: &[i64]| linalg::combine(dim, basis.iter().zip(cs).map(|(b, c)| (linalg::q(*c), b.as_slice())));
        let u = (comb(&m[0..r]), comb(&m[r..2 * r]));
        let v = (comb(&m[2 * r..3 * r]), comb(&m[3 * r..4 * r]));
        let q = |a: &(Vec<Q>, Vec<Q>), b: &(Vec<Q>, Vec<Q>)| {
            phases::prequant_commutator(&f.rd, &z, k, (&a.0, &a.1), (&b.0, &b.1)).unwrap()
        };
        prop_assert!(q(&u, &u).is_one());
        let w = (linalg::add(&u.0, &v.0), linalg::add(&u.1, &v.1));
        prop_assert_eq!(q(&w, &u), q(&u, &u) * q(&v, &u));
        prop_assert_eq!(q(&u, &v) * q(&v, &u), phases::PhaseValue::one());
    }

    #[test]
    fn s_matrix_is_unitary(t in prop::sample::select(&TYPES[..]), k in 0i64..4) {
        let f = fixture(t);
        let table = fusion::level_weights(&f.rd, k).unwrap();
        let s = fusion::s_matrix(&f.rd, &f.group, &table, Execution::Parallel);
        prop_assert!(s.unitarity_residual() < 1e-9);
        prop_assert!(s.symmetry_residual() < 1e-9);
    }

    #[test]
    fn center_action_permutes_level_weights_and_preserves_s(
        t in prop::sample::select(&CENTERED[..]),
        i in 0usize..4,
        k in 1i64..5,
    ) {
        let f = fixture(t);
        let c = &f.center.elements()[i % f.center.order()];
        let table = fusion::level_weights(&f.rd, k).unwrap();
        let p = fusion::center_permutation(&f.rd, &f.center, c, &table).unwrap();
        let mut sorted = p.clone();
        sorted.sort();
        prop_assert_eq!(sorted, (0..table.len()).collect::<Vec<_>>());
        let s = fusion::s_matrix(&f.rd, &f.group, &table, Execution::Sequential);
        for (a, &pa) in p.iter().enumerate() {
            for b in 0..table.len() {
                prop_assert!((s.get(pa, b).norm() - s.get(a, b).norm()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn fusion_is_a_commutative_associative_ring(
        t in prop::sample::select(&["A1", "A2", "B2", "G2"][..]),
        k in 1i64..4,
        ia in 0usize..64, ib in 0usize..64, ic in 0usize..64,
    ) {
        let f = fixture(t);
        let table = fusion::level_weights(&f.rd, k).unwrap();
        let s = fusion::s_matrix(&f.rd, &f.group, &table, Execution::Sequential);
        let n = table.len();
        let e = |i: usize| FusionVector::basis(n, i % n);
        let mul = |x: &FusionVector, y: &FusionVector| {
            fusion::fusion_product(&s, &table, x, y, INTEGRALITY_TOLERANCE).unwrap()
        };
        let (a, b, c) = (e(ia), e(ib), e(ic));
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &e(0)), a.clone());
        prop_assert!(mul(&a, &b).coefficients().iter().all(|&x| x >= 0));
    }

    #[test]
    fn verlinde_counts_are_consistent(
        t in prop::sample::select(&["A1", "A2", "A3", "B2", "D4"][..]),
        pick in 0usize..5,
        mult in 1i64..3,
        genus in 0u32..3,
        phi_seed in prop::collection::vec(0i64..4, 8),
    ) {
        let f = fixture(t);
        let z = subgroup(&f.rd, &f.center, pick);
        let (k0, _) = z.levels(&f.rd);
        let k = k0 * mult;
        prop_assume!(k <= 6);
        let v = Verlinde::new(&f.rd, &f.group, &f.center, &z, k, Execution::Parallel).unwrap();
        let factors = z.invariant_factors();
        let phi: Vec<_> = (0..2 * genus as usize)
            .map(|i| z.character(&factors.iter().enumerate().map(|(j, d)| phi_seed[(i + j) % 8] % d).collect::<Vec<_>>()).unwrap())
            .collect();
        let par = v.verlinde_nsc_all(genus, &phi).unwrap();
        let seq = Verlinde::new(&f.rd, &f.group, &f.center, &z, k, Execution::Sequential)
            .unwrap()
            .verlinde_nsc_all(genus, &phi)
            .unwrap();
        prop_assert_eq!(&par, &seq);
        let sc = v.verlinde_sc_all(genus).unwrap();
        for (e, s) in par.iter().zip(&sc) {
            prop_assert!(e.value >= 0 && e.residual < INTEGRALITY_TOLERANCE);
            if z.is_trivial() {
                prop_assert_eq!(e.value, s.value);
            }
        }
        // summing over all twists recovers the Z-invariant part only
        if genus == 1 && z.order() <= 2 {
            let total: i64 = v
                .verlinde_nsc_table(1)
                .unwrap()
                .iter()
                .map(|(_, row)| row[0].value)
                .sum();
            prop_assert!(total <= sc[0].value);
        }
    }
}

#[test]
fn inadmissible_inputs_are_rejected() {
    let f = fixture("D4");
    let z = f.center.all_subgroups(&f.rd)[1].clone();
    assert!(matches!(
        phases::delta_checked(&f.rd, &f.center, &z, &fusion::level_weights(&f.rd, 1).unwrap(), &z.elements()[1], &z.elements()[1]),
        Err(Error::NoFixedPoint { .. }) | Err(Error::RepresentativeDependence) | Err(Error::LevelNotAdmissible { .. })
    ));
    assert!(verlinde::trivial_stabilizer_check(5, 2, 1).is_err());
}
