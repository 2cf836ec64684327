//! Shared test oracles.
#![allow(dead_code)]

use ncribbon::{
    Composition, Factor, GammaOrdering, IndexOrdering, LaurentPoly, OperatorKind, StructuredOperator,
    VarFamily,
};
use rand::rngs::StdRng;
use rand::Rng;

pub type Dense = Vec<Vec<LaurentPoly>>;

fn kron(f: &Factor, m: &Dense, family: VarFamily) -> Dense {
    let (mr, mc) = (m.len(), m.first().map_or(0, Vec::len));
    let mut out = vec![vec![LaurentPoly::zero(family); f.cols() * mc]; f.rows() * mr];
    for a in 0..f.rows() {
        for b in 0..f.cols() {
            for i in 0..mr {
                for j in 0..mc {
                    out[a * mr + i][b * mc + j] = f.get(a, b).try_mul(&m[i][j]).unwrap();
                }
            }
        }
    }
    out
}

/// The full matrix of `op`: the first slot is the least significant digit,
/// so each later slot wraps the matrix built so far as `[f_ij M]`.
pub fn dense_matrix(op: &StructuredOperator) -> Dense {
    let family = op.family();
    let mut m: Dense = vec![vec![LaurentPoly::one(family)]];
    for i in op.slot_descents() {
        m = kron(op.factor(i), &m, family);
    }
    m
}

pub fn dense_apply(m: &Dense, v: &[LaurentPoly], family: VarFamily) -> Vec<LaurentPoly> {
    m.iter()
        .map(|row| {
            let mut acc = LaurentPoly::zero(family);
            for (a, x) in row.iter().zip(v) {
                acc.add_product_assign(a, x).unwrap();
            }
            acc
        })
        .collect()
}

pub fn transpose(m: &Dense) -> Dense {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn random_poly(rng: &mut StdRng) -> LaurentPoly {
    let mut p = LaurentPoly::zero(VarFamily::TwoParam);
    for _ in 0..rng.gen_range(0..4) {
        let term = LaurentPoly::qt(rng.gen_range(-2..4), rng.gen_range(-2..4)).scale(rng.gen_range(-5i64..=5));
        p.add_assign(&term).unwrap();
    }
    p
}

pub fn random_composition(n: usize, rng: &mut StdRng) -> Composition {
    Composition::from_descents(n, rng.gen_range(0..1u64 << (n - 1))).unwrap()
}

/// A random operator of degree `n`: either a named kind or random factors
/// of random shapes under a random level ordering.
pub fn random_operator(n: usize, rng: &mut StdRng) -> StructuredOperator {
    let family = VarFamily::TwoParam;
    let level = random_composition(n, rng);
    let kind = match rng.gen_range(0..9) {
        0 => OperatorKind::ModifiedMacdonaldFromRibbon { n },
        1 => OperatorKind::MacdonaldFromRibbon { n },
        2 => OperatorKind::NablaDiagonal { n },
        3 => OperatorKind::NablaRibbon { n },
        4 => OperatorKind::ModifiedMacdonaldFromGammaSchur { level },
        5 => OperatorKind::NablaGammaSchur { level },
        6 => OperatorKind::NablaModifiedHallLittlewood { level },
        7 => OperatorKind::NablaGammaSchurToRibbon { level },
        _ => {
            let factors = (1..n)
                .map(|_| {
                    let (r, c) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
                    Factor::new(r, c, (0..r * c).map(|_| random_poly(rng)).collect()).unwrap()
                })
                .collect();
            let ordering = IndexOrdering::PhiGamma(GammaOrdering::new(level));
            return StructuredOperator::new(n, family, ordering, factors).unwrap();
        }
    };
    StructuredOperator::build(kind, family).unwrap()
}

pub fn random_vector(len: usize, rng: &mut StdRng) -> Vec<LaurentPoly> {
    (0..len).map(|_| random_poly(rng)).collect()
}

/// Runs `pairs` random (operator, vector) comparisons per degree in `2..=6`
/// and returns the number of mismatches.
pub fn structured_vs_dense(pairs: usize, seed: u64) -> usize {
    use rand::SeedableRng;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = 0;
    for n in 2..=6 {
        for _ in 0..pairs {
            let op = random_operator(n, &mut rng);
            let m = dense_matrix(&op);
            let v = random_vector(op.input_dim(), &mut rng);
            if op.apply(&v).unwrap() != dense_apply(&m, &v, op.family()) {
                failures += 1;
            }
            let w = random_vector(op.output_dim(), &mut rng);
            if op.apply_transpose(&w).unwrap() != dense_apply(&transpose(&m), &w, op.family()) {
                failures += 1;
            }
        }
    }
    failures
}
