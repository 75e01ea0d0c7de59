//! The affine matrix representation: psi(g) is the (n+1)x(n+1) integer
//! matrix with the permutation matrix of phi(g) in the upper block and
//! pi(g) in the last column. Rank and basis extraction run over exact
//! rationals; no floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{residue_vectors, CosetTables, Germ, GroupElement, DEFAULT_GERM_GUARD};
use crate::perm::Permutation;
use crate::solution::SolutionTable;

/// A square integer matrix stored as rows. For images of group elements
/// the shape is affine: permutation block, pi(g) column, (0..0,1) row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMatrix {
    pub rows: Vec<Vec<i64>>,
}

impl AffineMatrix {
    pub fn zero(dim: usize) -> AffineMatrix {
        AffineMatrix { rows: vec![vec![0; dim]; dim] }
    }

    pub fn identity(dim: usize) -> AffineMatrix {
        let mut m = AffineMatrix::zero(dim);
        for i in 0..dim {
            m.rows[i][i] = 1;
        }
        m
    }

    /// psi written out from (phi, pi) data: column j of the upper block
    /// has its 1 in row phi(j).
    pub fn from_parts(phi: &Permutation, vec: &[i64]) -> AffineMatrix {
        let n = vec.len();
        let mut m = AffineMatrix::zero(n + 1);
        for j in 0..n {
            m.rows[phi.apply(j)][j] = 1;
        }
        for (i, &c) in vec.iter().enumerate() {
            m.rows[i][n] = c;
        }
        m.rows[n][n] = 1;
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn mul(&self, other: &AffineMatrix) -> AffineMatrix {
        let d = self.dim();
        assert_eq!(d, other.dim());
        let mut out = AffineMatrix::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.rows[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    out.rows[i][j] += a * other.rows[k][j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &AffineMatrix) -> AffineMatrix {
        let d = self.dim();
        assert_eq!(d, other.dim());
        AffineMatrix {
            rows: (0..d)
                .map(|i| (0..d).map(|j| self.rows[i][j] + other.rows[i][j]).collect())
                .collect(),
        }
    }

    pub fn scale(&self, k: i64) -> AffineMatrix {
        AffineMatrix {
            rows: self.rows.iter().map(|r| r.iter().map(|&x| k * x).collect()).collect(),
        }
    }

    /// Row-major flattening, the vector the rank computation works on.
    pub fn flatten(&self) -> Vec<i64> {
        self.rows.iter().flatten().copied().collect()
    }
}

/// psi(g): permutation block of phi(g), last column pi(g).
pub fn psi(germ: &Germ, g: &GroupElement) -> AffineMatrix {
    AffineMatrix::from_parts(germ.phi(g.vector()), g.vector())
}

/// The elementary matrix with a single 1 at (k, n+1), 0-based k.
pub fn e_matrix(n: usize, k: usize) -> Result<AffineMatrix> {
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k + 1, n });
    }
    let mut m = AffineMatrix::zero(n + 1);
    m.rows[k][n] = 1;
    Ok(m)
}

/// Writes g as g_N . s with s the simple at pi(g) mod m and
/// g_N = prod theta_i^{alpha_i}; returns (s, alphas) and checks the
/// matrix identity psi(g) = psi(s) + m sum alpha_i E_i entrywise.
pub fn decompose(germ: &Germ, g: &GroupElement) -> (GroupElement, Vec<i64>) {
    let m = germ.class() as i64;
    let residue: Vec<i64> = g.vector().iter().map(|&c| c.rem_euclid(m)).collect();
    let alphas: Vec<i64> =
        g.vector().iter().zip(&residue).map(|(&c, &r)| (c - r) / m).collect();
    let s = germ.element(residue);
    let mut reconstructed = psi(germ, &s);
    for (i, &alpha) in alphas.iter().enumerate() {
        reconstructed = reconstructed.add(&e_matrix(germ.n(), i).unwrap().scale(m * alpha));
    }
    assert_eq!(reconstructed, psi(germ, g), "decomposition reconstruction failed");
    (s, alphas)
}

/// One labeled member of the theorem's spanning set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpanningMatrix {
    pub label: String,
    /// pi-vector of the source element.
    pub vector: Vec<i64>,
    /// A positive word realizing the source element, 1-based.
    pub word: Vec<usize>,
    pub matrix: AffineMatrix,
}

/// The spanning set of Im(psi-hat): psi(theta_1..theta_n) followed by
/// psi(v) for v in T_K in canonical order.
pub fn spanning_set(germ: &Germ, cosets: &CosetTables) -> Vec<SpanningMatrix> {
    let m = germ.class() as i64;
    let frozen_words = germ.solution().frozen_words(germ.class());
    let mut out = Vec::with_capacity(germ.n() + cosets.t_k.len());
    for (i, word) in frozen_words.iter().enumerate() {
        let mut v = vec![0i64; germ.n()];
        v[i] = m;
        let theta = germ.element(v);
        out.push(SpanningMatrix {
            label: format!("theta_{}", i + 1),
            vector: theta.vector().to_vec(),
            word: word.iter().map(|&x| x + 1).collect(),
            matrix: psi(germ, &theta),
        });
    }
    for (q, v) in cosets.t_k.iter().enumerate() {
        out.push(SpanningMatrix {
            label: format!("v_{}", q + 1),
            vector: v.vector().to_vec(),
            word: germ.witness(v.vector()).iter().map(|&x| x + 1).collect(),
            matrix: psi(germ, v),
        });
    }
    out
}

/// Greedy exact-rational rank: scans the matrices in the given order,
/// keeping an input iff it enlarges the span of the row-major
/// flattenings. Deterministic for a fixed input order.
pub fn rank_and_basis(mats: &[AffineMatrix]) -> Result<(usize, Vec<usize>)> {
    let width = match mats.first() {
        Some(m) => m.dim() * m.dim(),
        None => return Ok((0, Vec::new())),
    };
    // (pivot column, reduced row) pairs, each row normalized to a 1 pivot
    let mut echelon: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut kept = Vec::new();
    for (idx, mat) in mats.iter().enumerate() {
        let flat = mat.flatten();
        if flat.len() != width {
            return Err(Error::ShapeMismatch { expected: width, got: flat.len() });
        }
        let mut row: Vec<BigRational> =
            flat.into_iter().map(|x| BigRational::from(BigInt::from(x))).collect();
        for (pivot, basis_row) in &echelon {
            let factor = row[*pivot].clone();
            if !factor.is_zero() {
                for (r, b) in row.iter_mut().zip(basis_row) {
                    *r -= &factor * b;
                }
            }
        }
        if let Some(pivot) = row.iter().position(|x| !x.is_zero()) {
            let lead = row[pivot].clone();
            for r in row.iter_mut() {
                *r /= &lead;
            }
            debug_assert!(row[pivot].is_one());
            echelon.push((pivot, row));
            kept.push(idx);
        }
    }
    Ok((echelon.len(), kept))
}

/// The full dimension report for a solution: the theorem's spanning set,
/// the extracted basis, the exact dimension, the n + |G| bound, and the
/// rank of the simples-only family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimensionReport {
    pub n: usize,
    pub class_m: usize,
    pub iyb_order: usize,
    pub spanning_labels: Vec<String>,
    pub basis_labels: Vec<String>,
    pub dimension: usize,
    pub bound: usize,
    pub simples_only_rank: usize,
    pub simples_span: bool,
    /// Stabilized rank from the ball oracle, when one was run.
    pub ball_rank: Option<usize>,
}

pub fn dimension_report(solution: &SolutionTable) -> Result<DimensionReport> {
    dimension_report_with_guard(solution, DEFAULT_GERM_GUARD)
}

pub fn dimension_report_with_guard(
    solution: &SolutionTable,
    guard: usize,
) -> Result<DimensionReport> {
    let germ = Germ::build(solution, guard)?;
    let cosets = germ.coset_tables();
    let spanning = spanning_set(&germ, &cosets);
    let mats: Vec<AffineMatrix> = spanning.iter().map(|s| s.matrix.clone()).collect();
    let (dimension, kept) = rank_and_basis(&mats)?;
    let bound = germ.n() + cosets.iyb_order;
    assert!(dimension <= bound, "dimension exceeds the n + |G| bound");

    let simples: Vec<AffineMatrix> = residue_vectors(germ.n(), germ.class())
        .map(|v| psi(&germ, &germ.element(v)))
        .collect();
    let (simples_only_rank, _) = rank_and_basis(&simples)?;
    assert!(simples_only_rank <= dimension);

    Ok(DimensionReport {
        n: germ.n(),
        class_m: germ.class(),
        iyb_order: cosets.iyb_order,
        spanning_labels: spanning.iter().map(|s| s.label.clone()).collect(),
        basis_labels: kept.iter().map(|&i| spanning[i].label.clone()).collect(),
        dimension,
        bound,
        simples_only_rank,
        simples_span: simples_only_rank == dimension,
        ball_rank: None,
    })
}
