#![allow(dead_code)]

use std::sync::Arc;

use duality_core::complex::{ComplexMap, FreeComplex};
use duality_core::linalg::ExactRing;
use duality_core::matrix::Matrix;
use duality_core::ring::Ring;
use rand::Rng;

pub fn mat<R: Ring>(r: &R, rows: &[&[i64]]) -> Matrix<R::Elem> {
    let dense: Vec<Vec<R::Elem>> = rows.iter().map(|row| row.iter().map(|&x| r.from_i64(x)).collect()).collect();
    let cols = rows.first().map_or(0, |row| row.len());
    Matrix::from_rows(r, rows.len(), cols, &dense).unwrap()
}

pub fn random_matrix<R: Ring>(r: &R, rng: &mut impl Rng, rows: usize, cols: usize, range: i64) -> Matrix<R::Elem> {
    let trip: Vec<_> = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, r.from_i64(rng.gen_range(-range..=range))))
        .collect();
    Matrix::from_triplets(r, rows, cols, trip)
}

/// Random complex with the given ranks starting at `lo`: each differential is
/// a random combination of generators of the left kernel of the previous one.
pub fn random_complex<R: ExactRing>(r: &R, rng: &mut impl Rng, lo: i32, ranks: &[usize], range: i64) -> FreeComplex<R> {
    let mut diffs: Vec<Matrix<R::Elem>> = Vec::new();
    for k in 0..ranks.len().saturating_sub(1) {
        let d = match diffs.last() {
            None => random_matrix(r, rng, ranks[k + 1], ranks[k], range),
            Some(prev) => {
                let left = r.kernel(&prev.transpose()).transpose();
                let c = random_matrix(r, rng, ranks[k + 1], left.rows(), range);
                c.mul(r, &left).unwrap()
            }
        };
        diffs.push(d);
    }
    FreeComplex::new(r.clone(), lo, ranks.to_vec(), diffs).unwrap()
}

/// Random chain map `x -> y`: `d h + h d` for a random degree -1 map `h`,
/// plus a random multiple of the identity when `x == y`.
pub fn random_null_homotopic<R: ExactRing>(
    r: &R,
    rng: &mut impl Rng,
    x: &Arc<FreeComplex<R>>,
    y: &Arc<FreeComplex<R>>,
    range: i64,
) -> ComplexMap<R> {
    let lo = x.lo().min(y.lo()) - 1;
    let hi = x.hi().max(y.hi()) + 1;
    let h: std::collections::BTreeMap<i32, Matrix<R::Elem>> =
        (lo..=hi).map(|i| (i, random_matrix(r, rng, y.rank(i - 1), x.rank(i), range))).collect();
    let comps = x
        .degrees()
        .map(|i| {
            let dh = y.d(i - 1).mul(r, &h[&i]).unwrap();
            let hd = h[&(i + 1)].mul(r, &x.d(i)).unwrap();
            dh.add(r, &hd)
        })
        .collect();
    ComplexMap::new(x.clone(), y.clone(), comps).unwrap()
}

/// Upper-triangular presentation with diagonal `2^e`, `e` in `1..=3`, and random
/// entries above the diagonal; the cokernel is 2-primary torsion.
pub fn random_two_torsion_relations<R: Ring>(r: &R, rng: &mut impl Rng, g: usize) -> Matrix<R::Elem> {
    let mut trip = Vec::new();
    for i in 0..g {
        trip.push((i, i, r.from_i64(1 << rng.gen_range(1..=3))));
        for j in i + 1..g {
            trip.push((i, j, r.from_i64(rng.gen_range(-3..=3))));
        }
    }
    Matrix::from_triplets(r, g, g, trip)
}

/// A random extension `0 -> coker R1 -> coker [[R1, C], [0, R3]] -> coker R3 -> 0`.
pub fn random_extension<R: ExactRing>(
    r: &R,
    rng: &mut impl Rng,
) -> (duality_core::module::ModuleMap<R>, duality_core::module::ModuleMap<R>) {
    use duality_core::module::{FpModule, ModuleMap};
    let g1 = rng.gen_range(1..=2);
    let g3 = rng.gen_range(1..=2);
    let r1 = random_two_torsion_relations(r, rng, g1);
    let r3 = random_two_torsion_relations(r, rng, g3);
    let c = random_matrix(r, rng, g1, g3, 3);
    let mut rel = Matrix::zeros(g1 + g3, g1 + g3);
    rel.add_block(r, 0, 0, &r1);
    rel.add_block(r, 0, g1, &c);
    rel.add_block(r, g1, g1, &r3);
    let (m1, m2, m3) = (FpModule::new(r.clone(), r1), FpModule::new(r.clone(), rel), FpModule::new(r.clone(), r3));
    let mut inc = Matrix::zeros(g1 + g3, g1);
    inc.add_block(r, 0, 0, &Matrix::identity(r, g1));
    let mut proj = Matrix::zeros(g3, g1 + g3);
    proj.add_block(r, 0, g1, &Matrix::identity(r, g3));
    (
        ModuleMap::new(m1, m2.clone(), inc).unwrap(),
        ModuleMap::new(m2, m3, proj).unwrap(),
    )
}
