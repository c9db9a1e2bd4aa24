mod common;

use duality_core::koszul::{wpr_check, KoszulSystem};
use duality_core::linalg::{ExactRing, Invariants};
use duality_core::qis::{induces_injective_at, induces_surjective_at, induces_zero, is_homotopy, is_quasi_iso};
use duality_core::ring::{Integers, IntegersMod, Ring, RingSpec};
use duality_core::telescope::{dual_koszul, level_cohomology, nilpotency_exponent, TelescopeTower};
use num_bigint::BigInt;
use duality_core::matrix::Matrix;

fn z(n: i64) -> BigInt {
    BigInt::from(n)
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return z(1);
    }
    (0..m.len())
        .map(|c| {
            let minor: Vec<Vec<BigInt>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect()).collect();
            let t = &m[0][c] * det(&minor);
            if c % 2 == 0 { t } else { -t }
        })
        .sum()
}

#[test]
fn integer_telescope_levels() {
    let t = TelescopeTower::new(Integers, vec![z(2)], 6).unwrap();
    for j in 0..=6 {
        let level = t.level(j);
        // the differential is square with determinant 2^{j+1}, and δ_j generates the cokernel
        let d = level.d(0).to_dense(&Integers);
        assert_eq!(det(&d), z(1 << (j + 1)));
        assert_eq!(level.cohomology(0).describe(&Integers), "0");
        assert_eq!(level.cohomology(1).describe(&Integers), format!("Z/{}", 1 << (j + 1)));
        let k = dual_koszul(&Integers, &[z(2)], j as u32 + 1).unwrap();
        assert_eq!(level.cohomology_all(), k.cohomology_all());
    }
}

fn telescope_matches_dual_koszul<R: ExactRing>(ring: R, seq: Vec<R::Elem>, jmax: usize) {
    let t = TelescopeTower::new(ring.clone(), seq.clone(), jmax).unwrap();
    for (j, h) in level_cohomology(&t).into_iter().enumerate() {
        let k = dual_koszul(&ring, &seq, j as u32 + 1).unwrap();
        let lo = t.level(j).lo().min(k.lo());
        let hi = t.level(j).hi().max(k.hi());
        for i in lo..=hi {
            let left = h.iter().find(|(d, _)| *d == i).map(|(_, x)| x.clone()).unwrap_or_else(|| t.level(j).cohomology(i));
            assert_eq!(left, k.cohomology(i), "level {j}, degree {i}");
        }
    }
}

#[test]
fn telescope_matches_dual_koszul_across_rings() {
    telescope_matches_dual_koszul(Integers, vec![z(2)], 5);
    let RingSpec::PolyFp(p) = RingSpec::parse("F2[t]").unwrap() else { panic!() };
    let t = p.parse_elem("t").unwrap();
    telescope_matches_dual_koszul(p, vec![t], 5);
    telescope_matches_dual_koszul(IntegersMod::new(8).unwrap(), vec![2], 4);
    telescope_matches_dual_koszul(Integers, vec![z(2), z(3)], 3);
    let RingSpec::AlgebraFp(a) = RingSpec::parse("F2[x]/(x^3)").unwrap() else { panic!() };
    let x = a.parse_elem("x").unwrap();
    telescope_matches_dual_koszul(a, vec![x], 4);
    let RingSpec::AlgebraFp(a) = RingSpec::parse("F2[x,y]/(x^2,xy,y^2)").unwrap() else { panic!() };
    let (x, y) = (a.parse_elem("x").unwrap(), a.parse_elem("y").unwrap());
    telescope_matches_dual_koszul(a, vec![x, y], 2);
}

#[test]
fn unit_telescope_is_acyclic() {
    let t = TelescopeTower::new(Integers, vec![z(1)], 3).unwrap();
    for j in 0..=3 {
        assert!(t.level(j).is_acyclic());
        assert!(!is_quasi_iso(&t.augmentation(j)).qis);
    }
}

#[test]
fn augmentation_is_compatible_with_inclusions() {
    let t = TelescopeTower::new(Integers, vec![z(2), z(3)], 4).unwrap();
    for j in 0..4 {
        assert_eq!(t.augmentation(j + 1).compose(&t.inclusion(j, j + 1)).unwrap(), t.augmentation(j));
        assert_eq!(t.inclusion(j + 1, 4).compose(&t.inclusion(j, j + 1)).unwrap(), t.inclusion(j, 4));
    }
}

#[test]
fn pruefer_transitions_are_injective() {
    let t = TelescopeTower::new(Integers, vec![z(2)], 6).unwrap();
    for j in 0..6 {
        let i = t.inclusion(j, j + 1);
        assert!(induces_injective_at(&i, 1));
        assert!(!induces_surjective_at(&i, 1));
    }
}

#[test]
fn nilpotent_levels_stabilize_in_isomorphism_type_only() {
    // H^1(T_j) = A/(a^{j+1}) = A once a^{j+1} = 0, but ι acts on it by a
    let r = IntegersMod::new(8).unwrap();
    let t = TelescopeTower::new(r.clone(), vec![2], 6).unwrap();
    let e = nilpotency_exponent(&r, &[2], 64).unwrap();
    assert_eq!(e, 3);
    for j in (e as usize - 1)..6 {
        assert_eq!(t.level(j).cohomology(1).describe(&r), "Z/8");
        let i = t.inclusion(j, j + 1);
        assert!(!induces_injective_at(&i, 1));
        assert!(!is_quasi_iso(&i).qis);
    }
}

#[test]
fn section_splits_augmentation_and_inclusions_are_ind_isomorphic() {
    // with a^e = 0: ι_{j→k} ≃ ε_k u_j once k >= j + e, via h(δ_i) = -Σ_{l>i} a^{l-i-1} δ_l
    let r = IntegersMod::new(8).unwrap();
    let t = TelescopeTower::new(r.clone(), vec![2], 8).unwrap();
    assert!(t.section(1).is_err());
    for k in 2..=8 {
        assert!(t.augmentation(k).compose(&t.section(k).unwrap()).unwrap().is_identity());
    }
    for j in 0..=5 {
        let k = j + 3;
        let eu = t.section(k).unwrap().compose(&t.augmentation(j)).unwrap();
        let mut h1 = Matrix::zeros(k + 1, j + 1);
        let mut trip = Vec::new();
        for i in 0..=j {
            for l in i + 1..=k {
                trip.push((l, i, r.neg(&r.pow(&2, (l - i - 1) as u32))));
            }
        }
        h1 = h1.add(&r, &Matrix::from_triplets(&r, k + 1, j + 1, trip));
        let h = vec![Matrix::zeros(0, j + 1), h1];
        assert!(is_homotopy(&t.inclusion(j, k), &eu, &h));
    }
}

#[test]
fn dual_koszul_examples() {
    let k = dual_koszul(&Integers, &[z(2)], 3).unwrap();
    assert_eq!(k.cohomology(0).describe(&Integers), "0");
    assert_eq!(k.cohomology(1).describe(&Integers), "Z/8");
    assert!(dual_koszul(&Integers, &[z(1)], 1).unwrap().is_acyclic());
    assert!(dual_koszul::<Integers>(&Integers, &[], 1).is_err());
    let RingSpec::AlgebraFp(a) = RingSpec::parse("F2[x,y]/(x^2,xy,y^2)").unwrap() else { panic!() };
    let (x, y) = (a.parse_elem("x").unwrap(), a.parse_elem("y").unwrap());
    let k = dual_koszul(&a, &[x, y], 1).unwrap();
    assert_eq!(k.ranks(), &[1, 2, 1]);
    // H^0 = Ann(x) ∩ Ann(y) = (x, y), H^2 = A/(x, y); Euler characteristic 3 - 6 + 3 = 0
    assert_eq!(k.cohomology(0), Invariants::Dimension(2));
    assert_eq!(k.cohomology(2), Invariants::Dimension(1));
    assert_eq!(k.cohomology(1), Invariants::Dimension(3));
}

#[test]
fn koszul_system_examples() {
    let s = KoszulSystem::new(Integers, vec![z(2)], 3).unwrap();
    for j in 1..=3 {
        assert!(s.level(j).cohomology(-1).is_zero());
        assert_eq!(s.level(j).cohomology(0).describe(&Integers), format!("Z/{}", 1 << j));
    }
    assert_eq!(s.transition(2, 1).compose(&s.transition(3, 2)).unwrap(), s.transition(3, 1));
    // a = 0: H^{-1} = A at every level, transitions multiply by 0^{k-j} = 0
    let s = KoszulSystem::new(Integers, vec![z(0)], 2).unwrap();
    assert_eq!(s.level(1).cohomology(-1).describe(&Integers), "Z");
    assert!(!induces_zero(&s.transition(2, 1)));
    assert!(duality_core::qis::induces_zero_at(&s.transition(2, 1), -1));
    assert!(s.transition(1, 1).is_identity());
}

#[test]
fn wpr_examples() {
    let rep = wpr_check(&Integers, &[z(2), z(3)], 4, 2).unwrap();
    assert!(rep.certified());
    assert_eq!(rep.verdict, "certified-pro-zero-up-to(4,2)");
    let RingSpec::AlgebraFp(a) = RingSpec::parse("F2[x]/(x^3)").unwrap() else { panic!() };
    let x = a.parse_elem("x").unwrap();
    let rep = wpr_check(&a, &[x], 4, 3).unwrap();
    assert!(rep.certified());
    assert!(rep.witnesses.iter().all(|w| w.k - w.j <= 3));
    assert!(wpr_check(&Integers, &[z(1)], 3, 1).unwrap().certified());
    assert!(wpr_check(&Integers, &[z(2)], 2, 2).is_err());
}

#[test]
fn wpr_is_inconclusive_when_bound_is_too_small() {
    // H^{-1}(K(x^j)) = Ann(x^j) and the transition multiplies by x^{k-j}; with B = 1 nothing dies at j = 1
    let RingSpec::AlgebraFp(a) = RingSpec::parse("F2[x]/(x^3)").unwrap() else { panic!() };
    let x = a.parse_elem("x").unwrap();
    let rep = wpr_check(&a, &[x], 3, 1).unwrap();
    assert!(!rep.certified());
    assert_eq!(rep.verdict, "inconclusive");
    assert!(rep.failures.iter().any(|f| f.i == -1 && f.j == 1));
}
