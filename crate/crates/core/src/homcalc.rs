//! `dim Hom_A(I1, A/I2)^G` for torus-fixed ideals.
//!
//! An equivariant homomorphism sends each minimal generator `g` of `I1` to a
//! multiple `c_g · m(g)` of the unique monomial `m(g) ∈ Γ2` with the same
//! character. The pairwise lcm relations generate all syzygies of a monomial
//! ideal, so the scalars are constrained only through them: for generators
//! `g, h` with `L = lcm(g, h)`, compare `(L/g)·m(g)` and `(L/h)·m(h)` modulo
//! `I2`. Each constraint is either `c_g = c_h` or `c = 0`, which a union-find
//! with a zero flag handles exactly.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ggraph::GGraph;
use crate::group::AbelianGroup;
use crate::monomial::Monomial;

/// Generators of `I1` paired with their target monomials in `Γ2`.
#[derive(Debug, Clone)]
pub struct HomInstance<'a> {
    pub source: &'a GGraph,
    pub target: &'a GGraph,
    pub gens: Vec<Monomial>,
    pub targets: Vec<Monomial>,
}

pub fn hom_instance<'a>(
    group: &AbelianGroup,
    source: &'a GGraph,
    target: &'a GGraph,
) -> Result<HomInstance<'a>> {
    let gens = source.generators().to_vec();
    let targets = gens
        .iter()
        .map(|g| {
            let k = group.char_index(&g.exponent());
            let m = target.monomial_of_char(k);
            if group.char_index(&m.exponent()) != k {
                return Err(Error::Internal(format!(
                    "no monomial of character {k} in the target G-graph"
                )));
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    Ok(HomInstance {
        source,
        target,
        gens,
        targets,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Effect {
    /// Both images survive; they coincide, forcing equal scalars.
    Equal,
    /// Only the image of the given generator survives; its scalar is zero.
    Zero(usize),
    /// Both images vanish in `A/I2`.
    Vacuous,
}

#[derive(Debug, Clone, Serialize)]
pub struct Syzygy {
    pub pair: [usize; 2],
    pub lcm: Monomial,
    pub effect: Effect,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalarClass {
    pub members: Vec<usize>,
    pub zero: bool,
}

/// Full audit trail of one Hom computation.
#[derive(Debug, Clone, Serialize)]
pub struct HomTrace {
    pub generators: Vec<Monomial>,
    pub images: Vec<Monomial>,
    pub syzygies: Vec<Syzygy>,
    pub classes: Vec<ScalarClass>,
    pub dim: usize,
}

struct UnionFind {
    parent: Vec<usize>,
    zero: Vec<bool>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            zero: vec![false; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
            self.zero[ra] |= self.zero[rb];
        }
    }

    fn mark_zero(&mut self, a: usize) {
        let r = self.find(a);
        self.zero[r] = true;
    }
}

pub fn hom_trace(group: &AbelianGroup, source: &GGraph, target: &GGraph) -> Result<HomTrace> {
    let inst = hom_instance(group, source, target)?;
    let n = inst.gens.len();
    let mut uf = UnionFind::new(n);
    let mut syzygies = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let (g, h) = (inst.gens[i], inst.gens[j]);
            let lcm = g.lcm(&h);
            let ug = lcm.div(&g).expect("lcm divisible").mul(&inst.targets[i]);
            let uh = lcm.div(&h).expect("lcm divisible").mul(&inst.targets[j]);
            let live_g = !target.ideal().contains(&ug);
            let live_h = !target.ideal().contains(&uh);
            let effect = match (live_g, live_h) {
                (true, true) => {
                    if ug != uh {
                        return Err(Error::Internal(format!(
                            "surviving images {ug} and {uh} of one character differ"
                        )));
                    }
                    uf.union(i, j);
                    Effect::Equal
                }
                (true, false) => {
                    uf.mark_zero(i);
                    Effect::Zero(i)
                }
                (false, true) => {
                    uf.mark_zero(j);
                    Effect::Zero(j)
                }
                (false, false) => Effect::Vacuous,
            };
            syzygies.push(Syzygy {
                pair: [i, j],
                lcm,
                effect,
            });
        }
    }

    let mut classes: Vec<ScalarClass> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = uf.find(i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(ScalarClass {
                members: Vec::new(),
                zero: uf.zero[r],
            });
        }
        classes[slot[r]].members.push(i);
    }
    let dim = classes.iter().filter(|c| !c.zero).count();
    Ok(HomTrace {
        generators: inst.gens,
        images: inst.targets,
        syzygies,
        classes,
        dim,
    })
}

pub fn hom_dim(group: &AbelianGroup, source: &GGraph, target: &GGraph) -> Result<usize> {
    hom_trace(group, source, target).map(|t| t.dim)
}

/// `hom_dim` over all ordered pairs of fixed points.
pub fn hom_matrix(group: &AbelianGroup, points: &[GGraph]) -> Result<Vec<Vec<usize>>> {
    points
        .par_iter()
        .map(|p| points.iter().map(|q| hom_dim(group, p, q)).collect())
        .collect()
}

/// `2I + J`.
pub fn expected_hom_matrix(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 3 } else { 1 }).collect())
        .collect()
}
