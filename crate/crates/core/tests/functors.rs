mod common;

use std::sync::Arc;

use common::mat;
use duality_core::complex::{ComplexMap, FreeComplex};
use duality_core::functors::{
    ess_check, ess_iso, ess_zero, ess_zero_in_degrees, induced_image, llambda_tower, recheck, rgamma_tower,
    tower_report, EssKind, Tower, Variance,
};
use duality_core::module::{adic_tower, FpModule};
use duality_core::ops::{tensor, tensor_map};
use duality_core::qis::induces_surjective_at;
use duality_core::ring::{Integers, IntegersMod};
use duality_core::telescope::TelescopeTower;
use num_bigint::BigInt;

fn z(n: i64) -> BigInt {
    BigInt::from(n)
}

fn unit_z() -> Arc<FreeComplex<Integers>> {
    Arc::new(FreeComplex::unit(Integers))
}

#[test]
fn rgamma_of_the_ring() {
    let tel = TelescopeTower::new(Integers, vec![z(2)], 5).unwrap();
    let sigma = rgamma_tower(&unit_z(), &tel).unwrap();
    for (j, level) in sigma.source.levels.iter().enumerate() {
        assert_eq!(level.cohomology(0).describe(&Integers), "0");
        assert_eq!(level.cohomology(1).describe(&Integers), format!("Z/{}", 1 << (j + 1)));
    }
    for j in 0..5 {
        let lhs = sigma.maps[j + 1].compose(&sigma.source.transitions[j]).unwrap();
        assert_eq!(lhs, sigma.maps[j]);
    }
    let zero = Arc::new(FreeComplex::zero(Integers));
    let t = rgamma_tower(&zero, &tel).unwrap();
    assert!(t.source.levels.iter().all(|l| l.is_zero()));
}

#[test]
fn rgamma_of_torsion_ring_is_ess_iso() {
    let r = IntegersMod::new(8).unwrap();
    let tel = TelescopeTower::new(r.clone(), vec![2], 7).unwrap();
    let sigma = rgamma_tower(&Arc::new(FreeComplex::unit(r)), &tel).unwrap();
    let cert = ess_iso(&sigma, 4);
    assert_eq!(cert.kind, EssKind::EssIso);
    assert!(recheck(&sigma.cone_tower(), &cert));
    assert!(cert.witnesses.iter().all(|w| w.k - w.j <= 3));
}

#[test]
fn llambda_of_the_ring() {
    let tel = TelescopeTower::new(Integers, vec![z(2)], 5).unwrap();
    let tau = llambda_tower(&unit_z(), &tel).unwrap();
    let adic = adic_tower(&FpModule::free(Integers, 1), &[z(2)], 6);
    for (j, level) in tau.target.levels.iter().enumerate() {
        assert_eq!(level.cohomology(0).describe(&Integers), format!("Z/{}", 1 << (j + 1)));
        assert_eq!(&level.cohomology(0), adic[j].invariants());
    }
    for t in &tau.target.transitions {
        assert!(induces_surjective_at(t, 0));
    }
    for j in 0..5 {
        let lhs = tau.target.transitions[j].compose(&tau.maps[j + 1]).unwrap();
        assert_eq!(lhs, tau.maps[j]);
    }
    let zero = Arc::new(FreeComplex::zero(Integers));
    assert!(llambda_tower(&zero, &tel).unwrap().target.levels.iter().all(|l| l.is_zero()));
}

#[test]
fn tensor_square_tower_dies_at_twice_the_level() {
    // H^2(T_j ⊗ T_j) = Z/2^{j+1} and ι⊗ι acts by 4^{k-j}
    let jmax = 9;
    let tel = TelescopeTower::new(Integers, vec![z(2)], jmax).unwrap();
    let levels: Vec<_> = (0..=jmax).map(|j| Arc::new(tensor(tel.level(j), tel.level(j)).unwrap())).collect();
    let transitions = (0..jmax)
        .map(|j| {
            let i = tel.inclusion(j, j + 1);
            tensor_map(&i, &i).unwrap()
        })
        .collect();
    let tower = Tower::new(Variance::Ind, levels, transitions).unwrap();
    let cert = ess_zero_in_degrees(&tower, 5, &[2]);
    assert_eq!(cert.kind, EssKind::EssZero);
    for w in &cert.witnesses {
        // order-of-element oracle: least k >= j with 4^{k-j} = 0 in Z/2^{k+1}
        let oracle = (w.j..).find(|&k| 2 * (k - w.j) >= k + 1).unwrap();
        assert_eq!(w.k, oracle);
        assert!(w.k <= 2 * w.j + 1);
    }
    assert_eq!(cert.witnesses.len(), 5);
}

#[test]
fn identity_tower_is_stably_nonzero() {
    let x = Arc::new(FreeComplex::two_term(Integers, 0, mat(&Integers, &[&[2]])).unwrap());
    let tower = Tower::constant(x, Variance::Ind, 4);
    let cert = ess_check(&tower, 2);
    assert_eq!(cert.kind, EssKind::StablyNonzero);
    assert_eq!(cert.obstruction_degree, Some(1));
}

#[test]
fn zero_tower_is_ess_zero_immediately() {
    let x = Arc::new(FreeComplex::zero(Integers));
    let tower = Tower::constant(x, Variance::Pro, 4);
    let cert = ess_zero(&tower, 2);
    assert_eq!(cert.kind, EssKind::EssZero);
    assert!(cert.witnesses.iter().all(|w| w.k == w.j));
}

#[test]
fn colimit_of_h0_is_the_torsion_submodule() {
    let tel = TelescopeTower::new(Integers, vec![z(2)], 6).unwrap();
    for n in [12i64, 8, 3, 20] {
        let m = Arc::new(FreeComplex::two_term(Integers, -1, mat(&Integers, &[&[n]])).unwrap());
        let sigma = rgamma_tower(&m, &tel).unwrap();
        let image = induced_image(&sigma.source.composite(2, 6), 0);
        let (gamma, _) = FpModule::cyclic(Integers, &z(n)).torsion_submodule(&[z(2)]).unwrap();
        assert_eq!(image.invariants(), gamma.invariants(), "n = {n}");
    }
}

#[test]
fn tower_report_describes_transitions() {
    let tel = TelescopeTower::new(Integers, vec![z(2)], 3).unwrap();
    let tau = llambda_tower(&unit_z(), &tel).unwrap();
    let rep = tower_report(&tau.target);
    assert_eq!(rep.levels.len(), 4);
    assert_eq!(rep.levels[2].cohomology[&0], "Z/8");
    assert_eq!(rep.transitions[0].induced[&0], "surjective");
    let json = serde_json::to_string(&rep).unwrap();
    assert!(json.starts_with("{\"variance\":\"pro\""));
}

#[test]
fn tower_map_rejects_noncommuting_squares() {
    let tel = TelescopeTower::new(Integers, vec![z(2)], 2).unwrap();
    let sigma = rgamma_tower(&unit_z(), &tel).unwrap();
    let mut maps = sigma.maps.clone();
    maps[1] = ComplexMap::zero(maps[1].source().clone(), maps[1].target().clone());
    assert!(duality_core::functors::TowerMap::new(sigma.source.clone(), sigma.target.clone(), maps).is_err());
}
