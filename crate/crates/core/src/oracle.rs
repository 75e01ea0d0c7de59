//! Independent brute-force cross-checks. Everything here folds words
//! directly over the sigma tables of the solution and never consults the
//! germ's BFS table, so agreement with the `group` and `rep` modules is
//! evidence and not circularity.

use std::collections::HashMap;
use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rep::{rank_and_basis, AffineMatrix};
use crate::solution::SolutionTable;

/// Default cap on ball enumeration.
pub const DEFAULT_BALL_GUARD: usize = 1_000_000;

/// A group element as the oracle sees it: the pi-vector together with
/// the permutation accumulated along the word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallElement {
    pub vector: Vec<i64>,
    pub phi: Permutation,
}

/// Word-folding: append generator x (0-based) on the right.
fn append_generator(s: &SolutionTable, v: &mut [i64], p: &mut Permutation, x: usize) {
    v[p.apply(x)] += 1;
    *p = p.compose(s.sigma(x));
}

/// Append x^{-1} on the right: pi(x^{-1}) = -t_{D(x)}, phi = sigma_x^{-1}.
fn append_inverse(s: &SolutionTable, d: &Permutation, v: &mut [i64], p: &mut Permutation, x: usize) {
    v[p.apply(d.apply(x))] -= 1;
    *p = p.compose(&s.sigma(x).inverse());
}

/// All products of at most `radius` factors from the generators and
/// their inverses, deduplicated by vector, in first-found breadth-first
/// order.
pub fn ball(s: &SolutionTable, radius: usize, guard: usize) -> Result<Vec<BallElement>> {
    let n = s.n();
    let d = s.diagonal_map();
    let mut seen: HashMap<Vec<i64>, Permutation> = HashMap::new();
    let mut out = vec![BallElement { vector: vec![0; n], phi: Permutation::identity(n) }];
    seen.insert(vec![0; n], Permutation::identity(n));
    let mut frontier = out.clone();
    for _ in 0..radius {
        let mut next = Vec::new();
        for e in &frontier {
            for x in 0..n {
                for invert in [false, true] {
                    let mut v = e.vector.clone();
                    let mut p = e.phi.clone();
                    if invert {
                        append_inverse(s, &d, &mut v, &mut p, x);
                    } else {
                        append_generator(s, &mut v, &mut p, x);
                    }
                    match seen.get(&v) {
                        Some(q) => {
                            if *q != p {
                                return Err(Error::PiCollision { vec: v });
                            }
                        }
                        None => {
                            seen.insert(v.clone(), p.clone());
                            let el = BallElement { vector: v, phi: p };
                            next.push(el.clone());
                            out.push(el);
                            if out.len() > guard {
                                return Err(Error::BallGuardExceeded { radius, guard });
                            }
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct InjectivityReport {
    pub radius: usize,
    pub words_checked: usize,
    pub passed: bool,
    /// Two words (1-based) with equal pi-vectors but different phi.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// Enumerates every positive word of length <= radius and checks that
/// equal pi-vectors always come with equal permutations.
pub fn check_pi_injectivity(s: &SolutionTable, radius: usize) -> InjectivityReport {
    let n = s.n();
    let mut seen: HashMap<Vec<i64>, (Permutation, Vec<usize>)> = HashMap::new();
    let mut stack = vec![(vec![0i64; n], Permutation::identity(n), Vec::<usize>::new())];
    let mut words_checked = 0usize;
    while let Some((v, p, word)) = stack.pop() {
        words_checked += 1;
        match seen.get(&v) {
            Some((q, other)) => {
                if *q != p {
                    return InjectivityReport {
                        radius,
                        words_checked,
                        passed: false,
                        witness: Some((
                            word.iter().map(|&x| x + 1).collect(),
                            other.iter().map(|&x| x + 1).collect(),
                        )),
                    };
                }
            }
            None => {
                seen.insert(v.clone(), (p.clone(), word.clone()));
            }
        }
        if word.len() < radius {
            for x in 0..n {
                let mut nv = v.clone();
                let mut np = p.clone();
                append_generator(s, &mut nv, &mut np, x);
                let mut nw = word.clone();
                nw.push(x);
                stack.push((nv, np, nw));
            }
        }
    }
    InjectivityReport { radius, words_checked, passed: true, witness: None }
}

#[derive(Debug, Clone, Serialize)]
pub struct CountsReport {
    pub class_m: usize,
    pub germ_count: usize,
    pub germ_expected: usize,
    /// Count of positive 0/1-vector elements and its 2^n target;
    /// absent for class 1.
    pub div_delta_count: Option<usize>,
    pub div_delta_expected: Option<usize>,
    pub iyb_order: usize,
    pub coset_product: usize,
    pub passed: bool,
}

/// Recounts m^n, 2^n and |T|.|T_K| = m^n without the germ table: the
/// simples are recounted as distinct residues of positive-word vectors,
/// and the IYB order by a fresh closure over raw one-line arrays.
pub fn check_counts(s: &SolutionTable) -> Result<CountsReport> {
    let n = s.n();
    let m = s.class_of()?;
    let germ_expected = (m as u128).pow(n as u32) as usize;

    // positive elements up to word length n(m-1), deduplicated by vector
    let depth = n * (m - 1);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut frontier: Vec<(Vec<i64>, Permutation)> =
        vec![(vec![0i64; n], Permutation::identity(n))];
    seen.insert(vec![0i64; n]);
    let mut positives: Vec<Vec<i64>> = vec![vec![0i64; n]];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (v, p) in &frontier {
            for x in 0..n {
                let mut nv = v.clone();
                let mut np = p.clone();
                append_generator(s, &mut nv, &mut np, x);
                if seen.insert(nv.clone()) {
                    positives.push(nv.clone());
                    next.push((nv, np));
                }
            }
        }
        frontier = next;
    }
    let residues: HashSet<Vec<i64>> = positives
        .iter()
        .map(|v| v.iter().map(|&c| c.rem_euclid(m as i64)).collect())
        .collect();
    let germ_count = residues.len();

    let (div_delta_count, div_delta_expected) = if m >= 2 {
        let count = positives
            .iter()
            .filter(|v| v.iter().all(|&c| c == 0 || c == 1))
            .count();
        (Some(count), Some(1usize << n))
    } else {
        (None, None)
    };

    // raw closure of the sigma one-line arrays under composition
    let mut iyb: HashSet<Vec<usize>> = HashSet::new();
    let id: Vec<usize> = (0..n).collect();
    iyb.insert(id.clone());
    let mut work = vec![id];
    while let Some(p) = work.pop() {
        for x in 0..n {
            let q: Vec<usize> = (0..n).map(|i| p[s.sigma(x).apply(i)]).collect();
            if iyb.insert(q.clone()) {
                work.push(q);
            }
        }
    }
    let iyb_order = iyb.len();

    let germ = crate::group::Germ::build(s, crate::group::DEFAULT_GERM_GUARD)?;
    let tables = germ.coset_tables();
    let coset_product = tables.t.len() * tables.t_k.len();

    let passed = germ_count == germ_expected
        && div_delta_count == div_delta_expected
        && iyb_order == tables.iyb_order
        && coset_product == germ_expected;
    Ok(CountsReport {
        class_m: m,
        germ_count,
        germ_expected,
        div_delta_count,
        div_delta_expected,
        iyb_order,
        coset_product,
        passed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SpanReport {
    pub max_radius: usize,
    /// Rank of {psi(g) : g in ball(r)} for r = 0..max_radius.
    pub ranks: Vec<usize>,
    /// Final rank if the last two radii agree.
    pub stabilized_rank: Option<usize>,
}

/// Rank of the matrix images over growing balls; evidence that the span
/// has stabilized once two consecutive radii give the same rank.
pub fn check_span_stabilization(
    s: &SolutionTable,
    max_radius: usize,
    guard: usize,
) -> Result<SpanReport> {
    let mut ranks = Vec::with_capacity(max_radius + 1);
    for r in 0..=max_radius {
        let elements = ball(s, r, guard)?;
        let mats: Vec<AffineMatrix> = elements
            .iter()
            .map(|e| AffineMatrix::from_parts(&e.phi, &e.vector))
            .collect();
        let (rank, _) = rank_and_basis(&mats)?;
        ranks.push(rank);
    }
    let stabilized_rank = match ranks.as_slice() {
        [.., a, b] if a == b => Some(*b),
        _ => None,
    };
    Ok(SpanReport { max_radius, ranks, stabilized_rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{example15, p3, trivial};

    #[test]
    fn ball_radii() {
        let s = example15();
        let b0 = ball(&s, 0, DEFAULT_BALL_GUARD).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0[0].vector, vec![0, 0, 0, 0]);
        let b1 = ball(&s, 1, DEFAULT_BALL_GUARD).unwrap();
        assert_eq!(b1.len(), 9); // identity + 4 generators + 4 inverses
        let b2 = ball(&s, 2, DEFAULT_BALL_GUARD).unwrap();
        assert!(b2.len() >= b1.len());
    }

    #[test]
    fn ball_is_closed_under_inverse() {
        let s = p3();
        let b = ball(&s, 3, DEFAULT_BALL_GUARD).unwrap();
        let vectors: HashSet<Vec<i64>> = b.iter().map(|e| e.vector.clone()).collect();
        for e in &b {
            let inv: Vec<i64> =
                (0..s.n()).map(|i| -e.vector[e.phi.apply(i)]).collect();
            assert!(vectors.contains(&inv));
        }
    }

    #[test]
    fn ball_guard_fires() {
        let s = example15();
        assert!(matches!(
            ball(&s, 4, 10),
            Err(Error::BallGuardExceeded { radius: 4, guard: 10 })
        ));
    }

    #[test]
    fn positive_ball_counts_match_germ_prefixes() {
        // positive-only radius 2 elements of P3 coincide with germ
        // vectors of coordinate sum <= 2
        let s = p3();
        let germ = crate::group::Germ::build(&s, 1_000_000).unwrap();
        let mut expected: HashSet<Vec<i64>> = HashSet::new();
        for e in germ.entries() {
            if e.vector.iter().sum::<i64>() <= 2 {
                expected.insert(e.vector);
            }
        }
        let mut got: HashSet<Vec<i64>> = HashSet::new();
        let mut frontier = vec![(vec![0i64; 3], Permutation::identity(3))];
        got.insert(vec![0; 3]);
        for _ in 0..2 {
            let mut next = Vec::new();
            for (v, p) in &frontier {
                for x in 0..3 {
                    let mut nv = v.clone();
                    let mut np = p.clone();
                    append_generator(&s, &mut nv, &mut np, x);
                    if got.insert(nv.clone()) {
                        next.push((nv, np));
                    }
                }
            }
            frontier = next;
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn pi_injectivity_passes() {
        assert!(check_pi_injectivity(&example15(), 4).passed);
        assert!(check_pi_injectivity(&p3(), 6).passed);
        assert!(check_pi_injectivity(&trivial(2), 5).passed);
    }

    #[test]
    fn counts_reproduce_paper_orders() {
        let r = check_counts(&example15()).unwrap();
        assert!(r.passed);
        assert_eq!(r.germ_count, 16);
        assert_eq!(r.div_delta_count, Some(16));
        assert_eq!(r.iyb_order, 8);
        assert_eq!(r.coset_product, 16);

        let r = check_counts(&p3()).unwrap();
        assert!(r.passed);
        assert_eq!(r.germ_count, 27);
        assert_eq!(r.div_delta_count, Some(8));
        assert_eq!(r.iyb_order, 3);
        assert_eq!(r.coset_product, 27);

        let r = check_counts(&trivial(2)).unwrap();
        assert!(r.passed);
        assert_eq!(r.germ_count, 1);
        assert_eq!(r.div_delta_count, None);
        assert_eq!(r.iyb_order, 1);
    }

    #[test]
    fn span_ranks_stabilize_at_paper_dimensions() {
        let r = check_span_stabilization(&example15(), 6, DEFAULT_BALL_GUARD).unwrap();
        assert_eq!(r.stabilized_rank, Some(10));
        assert!(r.ranks.windows(2).all(|w| w[0] <= w[1]));

        let r = check_span_stabilization(&p3(), 6, DEFAULT_BALL_GUARD).unwrap();
        assert_eq!(r.stabilized_rank, Some(6));

        let r = check_span_stabilization(&trivial(3), 3, DEFAULT_BALL_GUARD).unwrap();
        assert_eq!(r.stabilized_rank, Some(4));
    }
}
