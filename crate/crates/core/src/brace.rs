//! The left-brace structure on G(X,r). The additive group is free
//! abelian on the pi-vectors, so brace addition is vector addition with
//! phi re-derived by residue lookup; lambda_a(b) = a.b - a.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::group::{residue_vectors, Germ, GroupElement};

/// Default seed for sampled law checks.
pub const DEFAULT_SEED: u64 = 0xB1;

/// Brace operations over a germ.
pub struct BraceView<'a> {
    germ: &'a Germ,
}

/// How to pick the triples for `verify_brace_laws`.
#[derive(Debug, Clone, Copy)]
pub enum SamplePlan {
    /// All triples of simples.
    Exhaustive,
    /// Seeded random triples with coordinates in [-2m, 2m].
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct BraceLawReport {
    pub mode: String,
    pub seed: Option<u64>,
    pub triples_checked: usize,
    pub passed: bool,
    pub counterexample: Option<LawCounterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LawCounterexample {
    pub law: String,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

impl<'a> BraceView<'a> {
    pub fn new(germ: &'a Germ) -> BraceView<'a> {
        BraceView { germ }
    }

    /// a (+) b: vector addition.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let vec = a.vector().iter().zip(b.vector()).map(|(x, y)| x + y).collect();
        self.germ.element(vec)
    }

    /// a (-) b: vector subtraction, the additive inverse being negation.
    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let vec = a.vector().iter().zip(b.vector()).map(|(x, y)| x - y).collect();
        self.germ.element(vec)
    }

    /// lambda_a(b) = a.b - a.
    pub fn lambda(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.sub(&self.germ.multiply(a, b), a)
    }

    /// lambda_a^{-1}(b), the unique c with a.c = a (+) b.
    pub fn lambda_inv(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.germ.multiply(&self.germ.inverse(a), &self.add(a, b))
    }

    /// Socle membership: lambda_a = Id iff phi(a) = Id.
    pub fn socle_contains(&self, a: &GroupElement) -> bool {
        self.germ.phi(a.vector()).is_identity()
    }

    /// Checks the left-brace laws on the given triples: the distributive
    /// law a.(b+c) = a.b + a.c - a, lambda multiplicativity
    /// lambda_{a.b} = lambda_a lambda_b, and the exchange law
    /// a.lambda_a^{-1}(b) = b.lambda_b^{-1}(a).
    pub fn verify_laws(&self, plan: SamplePlan) -> BraceLawReport {
        let g = self.germ;
        let mut checked = 0usize;
        let mut failure: Option<LawCounterexample> = None;
        let mut check = |a: &GroupElement, b: &GroupElement, c: &GroupElement| -> bool {
            checked += 1;
            let law = self.failing_law(a, b, c);
            if let Some(law) = law {
                failure = Some(LawCounterexample {
                    law,
                    a: a.vector().to_vec(),
                    b: b.vector().to_vec(),
                    c: c.vector().to_vec(),
                });
                return false;
            }
            true
        };
        let (mode, seed) = match plan {
            SamplePlan::Exhaustive => {
                let simples: Vec<GroupElement> =
                    residue_vectors(g.n(), g.class()).map(|v| g.element(v)).collect();
                'outer: for a in &simples {
                    for b in &simples {
                        for c in &simples {
                            if !check(a, b, c) {
                                break 'outer;
                            }
                        }
                    }
                }
                ("exhaustive".to_string(), None)
            }
            SamplePlan::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let bound = 2 * g.class() as i64;
                let random_element = |rng: &mut ChaCha8Rng| {
                    let vec = (0..g.n()).map(|_| rng.gen_range(-bound..=bound)).collect();
                    g.element(vec)
                };
                for _ in 0..count {
                    let a = random_element(&mut rng);
                    let b = random_element(&mut rng);
                    let c = random_element(&mut rng);
                    if !check(&a, &b, &c) {
                        break;
                    }
                }
                ("sampled".to_string(), Some(seed))
            }
        };
        BraceLawReport {
            mode,
            seed,
            triples_checked: checked,
            passed: failure.is_none(),
            counterexample: failure,
        }
    }

    fn failing_law(&self, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> Option<String> {
        let g = self.germ;
        let lhs = g.multiply(a, &self.add(b, c));
        let rhs = self.sub(&self.add(&g.multiply(a, b), &g.multiply(a, c)), a);
        if lhs != rhs {
            return Some("a.(b+c) = a.b + a.c - a".to_string());
        }
        let lhs = self.lambda(&g.multiply(a, b), c);
        let rhs = self.lambda(a, &self.lambda(b, c));
        if lhs != rhs {
            return Some("lambda_{a.b} = lambda_a lambda_b".to_string());
        }
        let lhs = g.multiply(a, &self.lambda_inv(a, b));
        let rhs = g.multiply(b, &self.lambda_inv(b, a));
        if lhs != rhs {
            return Some("a.lambda_a^{-1}(b) = b.lambda_b^{-1}(a)".to_string());
        }
        None
    }
}
