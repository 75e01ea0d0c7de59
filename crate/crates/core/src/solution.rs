//! Loading and validation of a finite non-degenerate involutive solution
//! (X, r), plus the invariants that live on the solution itself: the
//! diagonal map D, the class m, condition (C), frozen words and the
//! retraction tower.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// On-disk shape of a solution file. Exactly one of `sigma` /
/// `sigma_cycles` must be present; `gamma` is optional and cross-checked
/// against the involutive closed form when given.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionFile {
    n: usize,
    #[serde(default)]
    sigma: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    sigma_cycles: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default)]
    gamma: Option<Vec<Vec<usize>>>,
}

/// A validated solution (X, r) with X = {0..n-1}, r(x,y) = (sigma_x(y), gamma_y(x)).
///
/// Construction verifies non-degeneracy, involutivity, the braided
/// relation on all n^3 triples, consistency of gamma with sigma, and
/// that phi is well defined on the defining relations. Indices are
/// 0-based everywhere inside the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionTable {
    n: usize,
    sigma: Vec<Permutation>,
    gamma: Vec<Permutation>,
}

/// Level of the retraction tower, or the marker for solutions whose
/// retraction never reaches a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultipermutationLevel {
    Level(usize),
    Irretractable,
}

impl Serialize for MultipermutationLevel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MultipermutationLevel::Level(k) => s.serialize_u64(*k as u64),
            MultipermutationLevel::Irretractable => s.serialize_str("irretractable"),
        }
    }
}

impl<'de> Deserialize<'de> for MultipermutationLevel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Level(usize),
            Marker(String),
        }
        match Raw::deserialize(d)? {
            Raw::Level(k) => Ok(MultipermutationLevel::Level(k)),
            Raw::Marker(s) if s == "irretractable" => Ok(MultipermutationLevel::Irretractable),
            Raw::Marker(s) => Err(serde::de::Error::custom(format!("unexpected marker {s:?}"))),
        }
    }
}

/// Summary of the solution-level invariants, as printed by `info`.
/// Permutations and words use 1-based indices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionProfile {
    pub n: usize,
    pub class_m: usize,
    pub d_table: Vec<usize>,
    pub frozen_words: Vec<Vec<usize>>,
    pub satisfies_c: bool,
    pub square_free: bool,
    pub retraction_levels: Vec<usize>,
    pub multipermutation_level: MultipermutationLevel,
}

fn perm_from_row(kind: &'static str, row: usize, n: usize, data: &[usize]) -> Result<Permutation> {
    if data.len() != n {
        return Err(Error::NotBijective { kind, row: row + 1, n });
    }
    let zero_based: Vec<usize> = data.iter().map(|&v| v.wrapping_sub(1)).collect();
    Permutation::new(zero_based).ok_or(Error::NotBijective { kind, row: row + 1, n })
}

impl SolutionTable {
    /// Parses and validates a solution file.
    pub fn load(raw: &str) -> Result<SolutionTable> {
        let file: SolutionFile =
            serde_json::from_str(raw).map_err(|e| Error::Parse(e.to_string()))?;
        if file.n == 0 {
            return Err(Error::Parse("n must be positive".into()));
        }
        let sigma_rows: Vec<Vec<usize>> = match (&file.sigma, &file.sigma_cycles) {
            (Some(rows), None) => rows.clone(),
            (None, Some(cycles)) => {
                let mut rows = Vec::with_capacity(cycles.len());
                for c in cycles {
                    rows.push(Permutation::from_cycles(file.n, c)?.one_line_1based());
                }
                rows
            }
            _ => {
                return Err(Error::Parse(
                    "exactly one of \"sigma\" / \"sigma_cycles\" must be present".into(),
                ))
            }
        };
        if sigma_rows.len() != file.n {
            return Err(Error::Parse(format!(
                "expected {} sigma rows, got {}",
                file.n,
                sigma_rows.len()
            )));
        }
        let sigma: Vec<Permutation> = sigma_rows
            .iter()
            .enumerate()
            .map(|(i, row)| perm_from_row("sigma", i, file.n, row))
            .collect::<Result<_>>()?;
        let gamma = match &file.gamma {
            Some(rows) => {
                if rows.len() != file.n {
                    return Err(Error::Parse(format!(
                        "expected {} gamma rows, got {}",
                        file.n,
                        rows.len()
                    )));
                }
                Some(
                    rows.iter()
                        .enumerate()
                        .map(|(i, row)| perm_from_row("gamma", i, file.n, row))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            None => None,
        };
        SolutionTable::new(sigma, gamma)
    }

    /// Builds a table from validated sigma rows, deriving gamma via
    /// gamma_y(x) = sigma^{-1}_{sigma_x(y)}(x) when absent, then checks
    /// all the solution axioms.
    pub fn new(sigma: Vec<Permutation>, gamma: Option<Vec<Permutation>>) -> Result<SolutionTable> {
        let n = sigma.len();
        let sigma_inv: Vec<Permutation> = sigma.iter().map(Permutation::inverse).collect();
        let derived: Vec<Permutation> = (0..n)
            .map(|y| {
                let image = (0..n).map(|x| sigma_inv[sigma[x].apply(y)].apply(x)).collect();
                Permutation::new(image).ok_or(Error::NotBijective { kind: "gamma", row: y + 1, n })
            })
            .collect::<Result<_>>()?;
        if let Some(given) = &gamma {
            for y in 0..n {
                if given[y] != derived[y] {
                    let x = (0..n).find(|&x| given[y].apply(x) != derived[y].apply(x)).unwrap();
                    return Err(Error::GammaInconsistent { x: x + 1, y: y + 1 });
                }
            }
        }
        let table = SolutionTable { n, sigma, gamma: derived };
        table.check_involutive()?;
        table.check_braided()?;
        table.check_phi_well_defined()?;
        Ok(table)
    }

    fn check_involutive(&self) -> Result<()> {
        for x in 0..self.n {
            for y in 0..self.n {
                let (u, v) = self.r(x, y);
                let (rx, ry) = self.r(u, v);
                if (rx, ry) != (x, y) {
                    return Err(Error::NotInvolutive {
                        x: x + 1,
                        y: y + 1,
                        rx: rx + 1,
                        ry: ry + 1,
                    });
                }
            }
        }
        Ok(())
    }

    fn check_braided(&self) -> Result<()> {
        let r12 = |(a, b, c): (usize, usize, usize)| {
            let (u, v) = self.r(a, b);
            (u, v, c)
        };
        let r23 = |(a, b, c): (usize, usize, usize)| {
            let (u, v) = self.r(b, c);
            (a, u, v)
        };
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    let lhs = r12(r23(r12((x, y, z))));
                    let rhs = r23(r12(r23((x, y, z))));
                    if lhs != rhs {
                        return Err(Error::NotBraided { x: x + 1, y: y + 1, z: z + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    /// phi must send both sides of every defining relation xy =
    /// sigma_x(y) gamma_y(x) to the same permutation under
    /// phi(gh) = phi(g) . phi(h).
    fn check_phi_well_defined(&self) -> Result<()> {
        for x in 0..self.n {
            for y in 0..self.n {
                let (u, v) = self.r(x, y);
                let lhs = self.sigma[x].compose(&self.sigma[y]);
                let rhs = self.sigma[u].compose(&self.sigma[v]);
                if lhs != rhs {
                    return Err(Error::NotBraided { x: x + 1, y: y + 1, z: 0 });
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self, x: usize) -> &Permutation {
        &self.sigma[x]
    }

    pub fn gamma(&self, y: usize) -> &Permutation {
        &self.gamma[y]
    }

    fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma[x].apply(y), self.gamma[y].apply(x))
    }

    /// r(x, y) with bounds checking; 0-based indices.
    pub fn apply_r(&self, x: usize, y: usize) -> Result<(usize, usize)> {
        for &i in &[x, y] {
            if i >= self.n {
                return Err(Error::IndexOutOfRange { index: i + 1, n: self.n });
            }
        }
        Ok(self.r(x, y))
    }

    /// The diagonal map D(x) = sigma^{-1}_x(x).
    pub fn diagonal_map(&self) -> Permutation {
        let image = (0..self.n).map(|x| self.sigma[x].inverse().apply(x)).collect();
        Permutation::new(image).expect("D is a bijection for valid solutions")
    }

    /// The permutation group generated by the sigmas, closed under
    /// composition by brute force.
    pub fn iyb_closure(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity(self.n)];
        let mut frontier = elems.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for s in &self.sigma {
                    let q = p.compose(s);
                    if !elems.contains(&q) {
                        elems.push(q.clone());
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
        elems
    }

    /// Minimal m with sigma_x . sigma_{D(x)} ... sigma_{D^{m-1}(x)} = id
    /// for every x, searched up to the order of the IYB group.
    pub fn class_of(&self) -> Result<usize> {
        self.class_of_with_bound(self.iyb_closure().len())
    }

    pub fn class_of_with_bound(&self, bound: usize) -> Result<usize> {
        let d = self.diagonal_map();
        for m in 1..=bound {
            let ok = (0..self.n).all(|x| {
                let mut prod = Permutation::identity(self.n);
                let mut point = x;
                for _ in 0..m {
                    prod = prod.compose(&self.sigma[point]);
                    point = d.apply(point);
                }
                prod.is_identity()
            });
            if ok {
                return Ok(m);
            }
        }
        Err(Error::ClassSearchExceeded { bound })
    }

    /// Condition (C): sigma_x . sigma_{D(x)} = id for every x.
    pub fn satisfies_condition_c(&self) -> bool {
        let d = self.diagonal_map();
        (0..self.n).all(|x| self.sigma[x].compose(&self.sigma[d.apply(x)]).is_identity())
    }

    /// The n frozen words: word k is (k, D(k), ..., D^{m-1}(k)), 0-based.
    pub fn frozen_words(&self, class_m: usize) -> Vec<Vec<usize>> {
        let d = self.diagonal_map();
        (0..self.n)
            .map(|x| {
                let mut word = Vec::with_capacity(class_m);
                let mut point = x;
                for _ in 0..class_m {
                    word.push(point);
                    point = d.apply(point);
                }
                word
            })
            .collect()
    }

    pub fn is_square_free(&self) -> bool {
        (0..self.n).all(|x| self.r(x, x) == (x, x))
    }

    /// Quotient by x ~ y iff sigma_x = sigma_y. Classes are numbered by
    /// smallest member, ascending. Returns the quotient solution and the
    /// class map.
    pub fn retraction(&self) -> Result<(SolutionTable, Vec<usize>)> {
        let mut reps: Vec<usize> = Vec::new();
        let mut class_of = Vec::with_capacity(self.n);
        for x in 0..self.n {
            match reps.iter().position(|&r| self.sigma[r] == self.sigma[x]) {
                Some(c) => class_of.push(c),
                None => {
                    class_of.push(reps.len());
                    reps.push(x);
                }
            }
        }
        let k = reps.len();
        let sigma: Vec<Permutation> = reps
            .iter()
            .map(|&x| {
                let image = reps.iter().map(|&y| class_of[self.sigma[x].apply(y)]).collect();
                Permutation::new(image)
                    .ok_or(Error::NotBijective { kind: "sigma", row: class_of[x] + 1, n: k })
            })
            .collect::<Result<_>>()?;
        let quotient = SolutionTable::new(sigma, None)?;
        Ok((quotient, class_of))
    }

    /// Smallest k with |Ret^k(X,r)| = 1, or Irretractable when a step
    /// stops shrinking first. A 1-point solution has level 0.
    pub fn multipermutation_level(&self) -> Result<MultipermutationLevel> {
        let mut current = self.clone();
        let mut level = 0;
        loop {
            if current.n == 1 {
                return Ok(MultipermutationLevel::Level(level));
            }
            let (next, _) = current.retraction()?;
            if next.n == current.n {
                return Ok(MultipermutationLevel::Irretractable);
            }
            current = next;
            level += 1;
        }
    }

    /// Sizes along the retraction tower, starting from |X|, until the
    /// size reaches 1 or stops shrinking.
    pub fn retraction_levels(&self) -> Result<Vec<usize>> {
        let mut sizes = vec![self.n];
        let mut current = self.clone();
        loop {
            if current.n == 1 {
                return Ok(sizes);
            }
            let (next, _) = current.retraction()?;
            sizes.push(next.n);
            if next.n == current.n {
                return Ok(sizes);
            }
            current = next;
        }
    }

    pub fn profile(&self) -> Result<SolutionProfile> {
        let class_m = self.class_of()?;
        Ok(SolutionProfile {
            n: self.n,
            class_m,
            d_table: self.diagonal_map().one_line_1based(),
            frozen_words: self
                .frozen_words(class_m)
                .into_iter()
                .map(|w| w.into_iter().map(|i| i + 1).collect())
                .collect(),
            satisfies_c: self.satisfies_condition_c(),
            square_free: self.is_square_free(),
            retraction_levels: self.retraction_levels()?,
            multipermutation_level: self.multipermutation_level()?,
        })
    }
}
