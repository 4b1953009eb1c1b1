//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use tsv_core::symplectic::{build_pair, BlockIso, SymplecticPair};
use tsv_core::torus::{self, ComplexTorus};
use tsv_core::{BigInt, IntMatrix, Scalar, ScalarMatrix};

pub fn e_i() -> Arc<ComplexTorus> {
    Arc::new(ComplexTorus::new("Ei", IntMatrix::from_i64(2, 2, &[0, -1, 1, 0]).to_scalar()).unwrap())
}

pub fn e_2i() -> Arc<ComplexTorus> {
    Arc::new(ComplexTorus::elliptic("E2i", Scalar::from_int(0), Scalar::from_int(2)).unwrap())
}

pub fn e_sqrt2i() -> Arc<ComplexTorus> {
    Arc::new(ComplexTorus::elliptic("Esqrt2i", Scalar::from_int(0), Scalar::sqrt(2).unwrap()).unwrap())
}

/// `tau = (1 + sqrt 2) i`; `tau^2` is irrational, so `End = Z`.
pub fn e_generic() -> Arc<ComplexTorus> {
    let y = Scalar::from_int(1) + Scalar::sqrt(2).unwrap();
    Arc::new(ComplexTorus::elliptic("Egen", Scalar::from_int(0), y).unwrap())
}

pub fn square(a: &Arc<ComplexTorus>) -> Arc<ComplexTorus> {
    Arc::new(a.product(a, format!("{}x{}", a.name(), a.name())).unwrap())
}

pub fn pair(a: &Arc<ComplexTorus>) -> Arc<SymplecticPair> {
    Arc::new(build_pair(a.clone()))
}

/// All `n x m` integer matrices with entries in `[-b, b]` satisfying
/// `J_t T = T J_s`, by exhaustive enumeration.
pub fn commuting_solutions(js: &ScalarMatrix, jt: &ScalarMatrix, b: i64) -> Vec<IntMatrix> {
    let (rows, cols) = (jt.rows(), js.rows());
    let len = rows * cols;
    let width = (2 * b + 1) as usize;
    let total = width.pow(len as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut entries = vec![0i64; len];
        for e in entries.iter_mut() {
            *e = (code % width) as i64 - b;
            code /= width;
        }
        let t = IntMatrix::from_i64(rows, cols, &entries);
        let ts = t.to_scalar();
        if jt * &ts == &ts * js {
            out.push(t);
        }
    }
    out
}

/// Rank of the span of a set of integer matrices.
pub fn span_rank(ms: &[IntMatrix]) -> usize {
    if ms.is_empty() {
        return 0;
    }
    let n = ms[0].data().len();
    let cols: Vec<Vec<_>> = ms.iter().map(|m| m.to_rational().into_data()).collect();
    tsv_core::linalg::rank(&tsv_core::RatMatrix::from_columns(n, &cols).unwrap())
}

/// Rank of `Hom(A, B)` counted block by block when both structures are block
/// diagonal with `2 x 2` blocks.
pub fn blockwise_hom_rank(js: &ScalarMatrix, jt: &ScalarMatrix, b: i64) -> usize {
    let (ns, nt) = (js.rows() / 2, jt.rows() / 2);
    let mut total = 0;
    for k in 0..nt {
        for l in 0..ns {
            let jk = jt.block(2 * k, 2 * k, 2, 2);
            let jl = js.block(2 * l, 2 * l, 2, 2);
            total += span_rank(&commuting_solutions(&jl, &jk, b));
        }
    }
    total
}

fn random_combo(rng: &mut impl Rng, basis: &[torus::TorusHom], rows: usize, cols: usize) -> IntMatrix {
    if basis.is_empty() {
        return IntMatrix::zeros(rows, cols);
    }
    let c: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(-3..=3)).collect();
    torus::combine(basis, &c).unwrap().matrix().clone()
}

/// A block morphism `X_A -> X_A` with each block a random element of its Hom
/// lattice.
pub fn random_block_iso(rng: &mut impl Rng, p: &Arc<SymplecticPair>) -> BlockIso {
    let a = p.base().clone();
    let ah = p.dual().clone();
    let n = a.rank();
    let alpha = random_combo(rng, &torus::hom_lattice(&a, &a).unwrap(), n, n);
    let beta = random_combo(rng, &torus::hom_lattice(&ah, &a).unwrap(), n, n);
    let gamma = random_combo(rng, &torus::hom_lattice(&a, &ah).unwrap(), n, n);
    let delta = random_combo(rng, &torus::hom_lattice(&ah, &ah).unwrap(), n, n);
    BlockIso::new(p.clone(), p.clone(), alpha, beta, gamma, delta).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OraclePlace {
    Infinity,
    Prime(i64),
}

fn valuation(mut n: i64, p: i64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// `+1` iff `z^2 = a x^2 + b y^2` has a solution with some coordinate a
/// `p`-adic unit modulo `p^k`, `k = 2 (v_p(2) + max(v_p(a), v_p(b))) + 1`.
/// At infinity: the form `z^2 - a x^2 - b y^2` is indefinite.
pub fn hilbert_oracle(a: i64, b: i64, place: OraclePlace) -> i8 {
    match place {
        OraclePlace::Infinity => {
            let signs = [1, -a.signum(), -b.signum()];
            if signs.iter().all(|&s| s > 0) || signs.iter().all(|&s| s < 0) {
                -1
            } else {
                1
            }
        }
        OraclePlace::Prime(p) => {
            let k = 2 * (valuation(2, p) + valuation(a, p).max(valuation(b, p))) + 1;
            let m = p.pow(k);
            let mut any_square = vec![false; m as usize];
            let mut unit_square = vec![false; m as usize];
            for z in 0..m {
                let r = (z * z % m) as usize;
                any_square[r] = true;
                if z % p != 0 {
                    unit_square[r] = true;
                }
            }
            for x in 0..m {
                for y in 0..m {
                    let r = ((a * x * x + b * y * y) % m + m) % m;
                    let unit_xy = x % p != 0 || y % p != 0;
                    if (unit_xy && any_square[r as usize]) || unit_square[r as usize] {
                        return 1;
                    }
                }
            }
            -1
        }
    }
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
