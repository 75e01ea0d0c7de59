//! Faithful computation in the structure group G(X,r) through the
//! bijective 1-cocycle pi: every element is named by its pi-vector in
//! Z^n, and phi is recovered by residue lookup in the germ, the table of
//! the m^n simple elements Div(Delta^{m-1}).

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::solution::SolutionTable;

/// Default cap on m^n before germ construction is attempted.
pub const DEFAULT_GERM_GUARD: usize = 1_000_000;

/// A group element, named by its pi-vector. Equality of elements is
/// equality of vectors; phi is never stored, always re-derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    vec: Vec<i64>,
}

impl GroupElement {
    pub fn vector(&self) -> &[i64] {
        &self.vec
    }
}

/// One row of the germ table.
#[derive(Debug, Clone, Serialize)]
pub struct GermEntry {
    /// Residue vector in {0..m-1}^n.
    pub vector: Vec<i64>,
    /// One-line form of phi for this simple, 1-based.
    pub phi: Vec<usize>,
    /// A shortest positive word realizing the simple, 1-based.
    pub witness: Vec<usize>,
}

/// The germ: all m^n simples, one per residue vector in {0..m-1}^n,
/// each carrying its permutation and a canonical shortest witness word.
#[derive(Debug, Clone)]
pub struct Germ {
    solution: SolutionTable,
    n: usize,
    m: usize,
    size: usize,
    table: Vec<Permutation>,
    witness: Vec<Vec<usize>>,
}

/// Canonical coset data: T_K are simples representing the cosets of
/// K = Ker(phi), one per element of the IYB group; T are the simples
/// with trivial phi, representing the N-cosets inside K.
#[derive(Debug, Clone)]
pub struct CosetTables {
    pub t_k: Vec<GroupElement>,
    pub t: Vec<GroupElement>,
    pub iyb_order: usize,
}

impl Germ {
    /// Breadth-first enumeration of all simples from the empty word.
    ///
    /// States are (vector, permutation) pairs; appending generator x on
    /// the right sends v to v + e_{p(x)} and p to p . sigma_x. Vectors
    /// are kept only while componentwise below m, which is sound because
    /// pi is componentwise nondecreasing along positive words.
    pub fn build(solution: &SolutionTable, guard: usize) -> Result<Germ> {
        let n = solution.n();
        let m = solution.class_of()?;
        let size = (m as u128).checked_pow(n as u32).filter(|&s| s <= guard as u128).ok_or(
            Error::GermGuardExceeded { m, n, guard },
        )? as usize;

        let mut table: Vec<Option<Permutation>> = vec![None; size];
        let mut witness: Vec<Vec<usize>> = vec![Vec::new(); size];
        let zero = vec![0i64; n];
        let zero_idx = 0;
        table[zero_idx] = Some(Permutation::identity(n));
        let mut queue = VecDeque::new();
        queue.push_back(zero);
        while let Some(v) = queue.pop_front() {
            let idx = index_of(&v, m);
            let p = table[idx].clone().expect("queued states are tabled");
            let word = witness[idx].clone();
            for x in 0..n {
                let coord = p.apply(x);
                if v[coord] + 1 > m as i64 - 1 {
                    continue;
                }
                let mut nv = v.clone();
                nv[coord] += 1;
                let nidx = index_of(&nv, m);
                let np = p.compose(solution.sigma(x));
                match &table[nidx] {
                    Some(existing) => {
                        if *existing != np {
                            return Err(Error::PiCollision { vec: nv });
                        }
                    }
                    None => {
                        table[nidx] = Some(np);
                        let mut nw = word.clone();
                        nw.push(x);
                        witness[nidx] = nw;
                        queue.push_back(nv);
                    }
                }
            }
        }
        let found = table.iter().filter(|t| t.is_some()).count();
        if found != size {
            return Err(Error::GermIncomplete { found, expected: size });
        }
        Ok(Germ {
            solution: solution.clone(),
            n,
            m,
            size,
            table: table.into_iter().map(|t| t.unwrap()).collect(),
            witness,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn solution(&self) -> &SolutionTable {
        &self.solution
    }

    /// phi of the element with pi-vector `v`, by residue lookup.
    pub fn phi(&self, v: &[i64]) -> &Permutation {
        let residue: Vec<i64> = v.iter().map(|&c| c.rem_euclid(self.m as i64)).collect();
        &self.table[index_of(&residue, self.m)]
    }

    pub fn element(&self, vec: Vec<i64>) -> GroupElement {
        assert_eq!(vec.len(), self.n);
        GroupElement { vec }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { vec: vec![0; self.n] }
    }

    /// The generator x_i as a group element (0-based index).
    pub fn generator(&self, x: usize) -> Result<GroupElement> {
        if x >= self.n {
            return Err(Error::IndexOutOfRange { index: x + 1, n: self.n });
        }
        let mut vec = vec![0i64; self.n];
        vec[x] = 1;
        Ok(GroupElement { vec })
    }

    /// Group product via the cocycle rule pi(gh) = pi(g) + g . pi(h).
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let pa = self.phi(&a.vec).clone();
        let pa_inv = pa.inverse();
        let vec: Vec<i64> =
            (0..self.n).map(|i| a.vec[i] + b.vec[pa_inv.apply(i)]).collect();
        let result = GroupElement { vec };
        // phi must be a homomorphism; a mismatch here means pi stopped
        // being injective, which validation rules out.
        let expected = pa.compose(self.phi(&b.vec));
        assert_eq!(
            *self.phi(&result.vec),
            expected,
            "pi collision at {:?}",
            result.vec
        );
        result
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let pa = self.phi(&a.vec);
        let vec: Vec<i64> = (0..self.n).map(|i| -a.vec[pa.apply(i)]).collect();
        GroupElement { vec }
    }

    /// Left-to-right fold of multiply over generators; 0-based word.
    pub fn from_word(&self, word: &[usize]) -> Result<GroupElement> {
        let mut acc = self.identity();
        for &x in word {
            acc = self.multiply(&acc, &self.generator(x)?);
        }
        Ok(acc)
    }

    /// Monoid membership: true iff `v` is the pi-vector of a positive
    /// element. Decided by search over positive-word states inside the
    /// box [0, v].
    pub fn is_positive(&self, v: &[i64]) -> bool {
        if v.iter().any(|&c| c < 0) {
            return false;
        }
        if v.iter().all(|&c| c == 0) {
            return true;
        }
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let zero = vec![0i64; self.n];
        seen.insert(zero.clone());
        let mut queue = VecDeque::new();
        queue.push_back(zero);
        while let Some(u) = queue.pop_front() {
            let p = self.phi(&u);
            for x in 0..self.n {
                let coord = p.apply(x);
                if u[coord] + 1 > v[coord] {
                    continue;
                }
                let mut nu = u.clone();
                nu[coord] += 1;
                if nu == v {
                    return true;
                }
                if seen.insert(nu.clone()) {
                    queue.push_back(nu);
                }
            }
        }
        false
    }

    /// Left divisibility s | t among positive elements: inverse(s) * t
    /// stays in the monoid.
    pub fn left_divides(&self, s: &GroupElement, t: &GroupElement) -> Result<bool> {
        for e in [s, t] {
            if !self.is_positive(&e.vec) {
                return Err(Error::NotPositive { vec: e.vec.clone() });
            }
        }
        let quotient = self.multiply(&self.inverse(s), t);
        Ok(self.is_positive(&quotient.vec))
    }

    /// The Garside element Delta (pi-vector all ones) together with its
    /// 2^n divisors (the 0/1-vector simples). Verifies that Delta is the
    /// left-lcm of the generators and that each divisor is the left-lcm
    /// of its one-letter left divisors, checking against all simples.
    pub fn delta_and_divisors(&self) -> Result<(GroupElement, Vec<GroupElement>)> {
        if self.m < 2 {
            return Err(Error::ClassTooSmall);
        }
        let delta = GroupElement { vec: vec![1; self.n] };
        let mut divisors = Vec::with_capacity(1 << self.n);
        for v in residue_vectors(self.n, self.m) {
            if v.iter().all(|&c| c == 0 || c == 1) {
                divisors.push(GroupElement { vec: v });
            }
        }
        debug_assert_eq!(divisors.len(), 1 << self.n);

        let generators: Vec<GroupElement> =
            (0..self.n).map(|x| self.generator(x)).collect::<Result<_>>()?;
        for g in &generators {
            assert!(self.left_divides(g, &delta)?, "a generator does not divide Delta");
        }
        // Minimality of Delta among simples: any simple divisible by
        // every generator is divisible by Delta.
        for v in residue_vectors(self.n, self.m) {
            let s = GroupElement { vec: v };
            let mut common = true;
            for g in &generators {
                if !self.left_divides(g, &s)? {
                    common = false;
                    break;
                }
            }
            if common {
                assert!(self.left_divides(&delta, &s)?, "Delta is not minimal");
            }
        }
        // Each divisor is the left-lcm of its one-letter left divisors.
        for s in &divisors {
            let letters: Vec<&GroupElement> = generators
                .iter()
                .filter(|g| self.left_divides(g, s).unwrap_or(false))
                .collect();
            let length: i64 = s.vec.iter().sum();
            assert_eq!(letters.len() as i64, length, "wrong number of one-letter divisors");
            for t in &divisors {
                if letters.iter().all(|g| self.left_divides(g, t).unwrap_or(false)) {
                    assert!(self.left_divides(s, t)?, "divisor is not the lcm of its letters");
                }
            }
        }
        Ok((delta, divisors))
    }

    /// Canonical coset representatives among the simples: one per
    /// element of the IYB group (T_K), and the trivial-phi simples (T).
    /// Canonical means minimal word length, ties broken by
    /// lexicographically smallest pi-vector.
    pub fn coset_tables(&self) -> CosetTables {
        let iyb = self.solution.iyb_closure();
        let iyb_order = iyb.len();

        // (length, vector) per IYB element, scanned in lex vector order,
        // so the first hit at the minimal length is the canonical rep.
        let mut best: Vec<Option<(i64, Vec<i64>)>> = vec![None; iyb_order];
        let mut t = Vec::new();
        for v in residue_vectors(self.n, self.m) {
            let idx = index_of(&v, self.m);
            let p = &self.table[idx];
            let len: i64 = v.iter().sum();
            let slot = iyb.iter().position(|q| q == p).expect("phi lands in the IYB group");
            match &best[slot] {
                Some((blen, _)) if *blen <= len => {}
                _ => best[slot] = Some((len, v.clone())),
            }
            if p.is_identity() {
                t.push(GroupElement { vec: v });
            }
        }
        let mut t_k: Vec<GroupElement> = best
            .into_iter()
            .map(|b| GroupElement { vec: b.expect("phi is onto the IYB group on simples").1 })
            .collect();
        t_k.sort_by_key(|e| (e.vec.iter().sum::<i64>(), e.vec.clone()));
        t.sort_by_key(|e| (e.vec.iter().sum::<i64>(), e.vec.clone()));

        assert_eq!(t_k.len() * t.len(), self.size, "|T_K| * |T| = m^n");
        // The unique simple w with Nw = N u v satisfies
        // pi(w) = pi(u) + pi(v) mod m, componentwise.
        for u in &t {
            for v in &t_k {
                let w = self.multiply(u, v);
                let m = self.m as i64;
                for i in 0..self.n {
                    let residue = (w.vec[i] - u.vec[i] - v.vec[i]).rem_euclid(m);
                    assert_eq!(residue, 0, "coset congruence fails at coordinate {i}");
                }
            }
        }
        CosetTables { t_k, t, iyb_order }
    }

    /// Witness word (0-based) of the simple at residue vector `v`.
    pub fn witness(&self, v: &[i64]) -> &[usize] {
        &self.witness[index_of(v, self.m)]
    }

    /// All germ rows, sorted lexicographically by residue vector.
    pub fn entries(&self) -> Vec<GermEntry> {
        residue_vectors(self.n, self.m)
            .map(|v| {
                let idx = index_of(&v, self.m);
                GermEntry {
                    phi: self.table[idx].one_line_1based(),
                    witness: self.witness[idx].iter().map(|&x| x + 1).collect(),
                    vector: v,
                }
            })
            .collect()
    }
}

/// Mixed-radix index of a residue vector, first coordinate most
/// significant, so index order equals lex order on vectors.
fn index_of(v: &[i64], m: usize) -> usize {
    v.iter().fold(0usize, |acc, &c| acc * m + c as usize)
}

/// All vectors in {0..m-1}^n in lexicographic order.
pub(crate) fn residue_vectors(n: usize, m: usize) -> impl Iterator<Item = Vec<i64>> {
    let total = (m as u128).pow(n as u32) as usize;
    (0..total).map(move |mut idx| {
        let mut v = vec![0i64; n];
        for i in (0..n).rev() {
            v[i] = (idx % m) as i64;
            idx /= m;
        }
        v
    })
}
