//! Quiver data `(B1, B2, B3, i)` for points of the G-Hilbert scheme and the
//! homology of the associated Koszul complexes.
//!
//! A point is given in the affine chart of a fixed point by coordinates
//! `(λ, μ, ν)`; `A/I` keeps the basis `Γ` and multiplication by `x_α` is
//! computed by rewriting with the seven chart relations.

use num::rational::Rational64;
use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ggraph::{GGraph, Kind};
use crate::group::AbelianGroup;
#[cfg(test)]
use crate::linalg::q;
use crate::linalg::{binomial_power, krylov_dim, q_frac, QMatrix, Q};
use crate::monomial::Monomial;
use crate::toric::{chart_exponents, dual_basis, Ray};

/// A point in the chart of `base`. The origin is the fixed point itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartPoint {
    pub base: GGraph,
    pub coords: [Q; 3],
}

impl ChartPoint {
    pub fn new(base: &GGraph, coords: [Q; 3]) -> Self {
        ChartPoint {
            base: base.clone(),
            coords,
        }
    }

    pub fn fixed(base: &GGraph) -> Self {
        ChartPoint::new(base, [Q::zero(), Q::zero(), Q::zero()])
    }

    pub fn is_fixed(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `λμν ≠ 0`.
    pub fn is_generic(&self) -> bool {
        self.coords.iter().all(|c| !c.is_zero())
    }
}

/// `lhs → λ^c0 μ^c1 ν^c2 · rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Monomial,
    pub coeff: [u32; 3],
    pub rhs: Monomial,
}

fn rule(lhs: [u32; 3], coeff: [u32; 3], rhs: [u32; 3]) -> Rule {
    Rule {
        lhs: Monomial(lhs),
        coeff,
        rhs: Monomial(rhs),
    }
}

/// The seven chart relations of a fixed point, one per generator of the
/// seven-generator ideal.
pub fn rewrite_rules(gg: &GGraph) -> [Rule; 7] {
    let [a, b, c, d, e, f] = gg.params().0;
    match gg.kind() {
        Kind::A => [
            rule([a + d - 1, 0, 0], [1, 0, 0], [0, b - 1, f - 1]),
            rule([0, b + e - 1, 0], [0, 1, 0], [d - 1, 0, c - 1]),
            rule([0, 0, c + f - 1], [0, 0, 1], [a - 1, e - 1, 0]),
            rule([a, e, 0], [1, 1, 0], [0, 0, c + f - 2]),
            rule([0, b, f], [0, 1, 1], [a + d - 2, 0, 0]),
            rule([d, 0, c], [1, 0, 1], [0, b + e - 2, 0]),
            rule([1, 1, 1], [1, 1, 1], [0, 0, 0]),
        ],
        Kind::B => [
            rule([a + d, 0, 0], [1, 0, 1], [0, b - 1, f - 1]),
            rule([0, b + e, 0], [1, 1, 0], [d - 1, 0, c - 1]),
            rule([0, 0, c + f], [0, 1, 1], [a - 1, e - 1, 0]),
            rule([a, e, 0], [1, 0, 0], [0, 0, c + f - 1]),
            rule([0, b, f], [0, 1, 0], [a + d - 1, 0, 0]),
            rule([d, 0, c], [0, 0, 1], [0, b + e - 1, 0]),
            rule([1, 1, 1], [1, 1, 1], [0, 0, 0]),
        ],
    }
}

/// `(B1, B2, B3)` in the basis `Γ`; `i` is the coordinate vector of `1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleRep {
    pub basis: Vec<Monomial>,
    pub chars: Vec<usize>,
    pub by_char: Vec<usize>,
    pub b: [QMatrix; 3],
    pub i: Vec<Q>,
}

impl ModuleRep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn coefficient(coords: &[Q; 3], k: [u32; 3]) -> Q {
    coords.iter().zip(k).fold(Q::one(), |acc, (c, e)| {
        acc * num::pow(c.clone(), e as usize)
    })
}

fn potential(n0: &Ray, m: &Monomial) -> Rational64 {
    n0.iter()
        .zip(m.0)
        .map(|(w, e)| w * Rational64::from_integer(i64::from(e)))
        .sum()
}

/// Normal form of `start` modulo the chart relations: `None` when it
/// vanishes, otherwise the coefficient and the surviving monomial of `Γ`.
fn normal_form(
    rules: &[Rule],
    coords: &[Q; 3],
    n0: &Ray,
    start: Monomial,
) -> Result<Option<(Q, Monomial)>> {
    let bound = potential(n0, &start).floor().to_integer();
    let mut cur = start;
    let mut coef = Q::one();
    let mut steps = 0i64;
    while let Some(r) = rules.iter().find(|r| r.lhs.divides(&cur)) {
        steps += 1;
        if steps > bound {
            return Err(Error::Violation(format!(
                "rewriting {start} did not terminate within {bound} steps; chart misclassified"
            )));
        }
        coef *= coefficient(coords, r.coeff);
        if coef.is_zero() {
            return Ok(None);
        }
        cur = cur.div(&r.lhs).expect("rule applies").mul(&r.rhs);
    }
    Ok(Some((coef, cur)))
}

pub fn build_rep(group: &AbelianGroup, pt: &ChartPoint) -> Result<ModuleRep> {
    let gg = &pt.base;
    let exps = chart_exponents(gg);
    let rays = dual_basis(&exps)
        .ok_or_else(|| Error::Violation(format!("chart of {} is degenerate", gg.ideal())))?;
    let n0: Ray = [0, 1, 2].map(|i| rays.iter().map(|r| r[i]).sum());
    let rules = rewrite_rules(gg);
    for r in &rules {
        let lhs = r.lhs.exponent();
        let rhs = r.rhs.exponent();
        let consistent = (0..3).all(|i| {
            let v: i64 = (0..3).map(|k| i64::from(r.coeff[k]) * exps[k][i]).sum();
            lhs[i] - rhs[i] == v
        });
        if !consistent {
            return Err(Error::Violation(format!(
                "chart relation {} -> {} disagrees with the chart exponents",
                r.lhs, r.rhs
            )));
        }
    }

    let n = gg.len();
    let mut b = [
        QMatrix::zeros(n, n),
        QMatrix::zeros(n, n),
        QMatrix::zeros(n, n),
    ];
    for (alpha, mat) in b.iter_mut().enumerate() {
        for (j, m) in gg.gamma().iter().enumerate() {
            let Some((coef, target)) = normal_form(&rules, &pt.coords, &n0, m.times_var(alpha))?
            else {
                continue;
            };
            let t = gg.position(&target).ok_or_else(|| {
                Error::Internal(format!("normal form {target} is outside the G-graph"))
            })?;
            mat[(t, j)] = coef;
        }
    }
    let unit = gg
        .position(&Monomial::ONE)
        .ok_or_else(|| Error::Internal("1 is not in the G-graph".into()))?;
    let mut i = vec![Q::zero(); n];
    i[unit] = Q::one();
    let chars = gg.characters().to_vec();
    let by_char = (0..group.order()).map(|k| gg.position_of_char(k)).collect();
    Ok(ModuleRep {
        basis: gg.gamma().to_vec(),
        chars,
        by_char,
        b,
        i,
    })
}

pub fn commutators_vanish(rep: &ModuleRep) -> bool {
    [(0, 1), (1, 2), (0, 2)]
        .iter()
        .all(|&(s, t)| rep.b[s].mul(&rep.b[t]) == rep.b[t].mul(&rep.b[s]))
}

/// Dimension of the `B`-invariant subspace generated by `i`.
pub fn cyclic_span(rep: &ModuleRep) -> usize {
    let ops: Vec<&QMatrix> = rep.b.iter().collect();
    krylov_dim(&ops, &rep.i)
}

pub fn verify_adhm(rep: &ModuleRep) -> bool {
    commutators_vanish(rep) && cyclic_span(rep) == rep.dim()
}

/// Each `B_α` moves the `χ` line to the `χ·χ(x_α)` line.
pub fn is_equivariant(group: &AbelianGroup, rep: &ModuleRep) -> bool {
    (0..3).all(|alpha| {
        let shift = group.char_index(&Monomial::pure(alpha, 1).exponent());
        let m = &rep.b[alpha];
        (0..rep.dim()).all(|j| {
            let t = rep.by_char[group.char_product(rep.chars[j], shift)];
            (0..rep.dim()).all(|r| r == t || m[(r, j)].is_zero())
        })
    })
}

fn masks(p: usize) -> Vec<usize> {
    (0..8usize)
        .filter(|s| s.count_ones() as usize == p)
        .collect()
}

fn mask_monomial(s: usize) -> Monomial {
    Monomial([0, 1, 2].map(|i| ((s >> i) & 1) as u32))
}

/// Homology `(h3, h2, h1, h0)` of the 4-term Koszul complex whose term in
/// wedge degree `p` is `⊕_{|S|=p} V_S`, with `d(η)_{S∪α} = ± op(α, S) η_S`.
fn koszul_homology_with<F>(dims: [usize; 8], op: F) -> Result<[usize; 4]>
where
    F: Fn(usize, usize) -> Result<QMatrix> + Sync,
{
    let offsets = |p: usize| {
        let mut acc = 0;
        let mut out = [0usize; 8];
        for s in masks(p) {
            out[s] = acc;
            acc += dims[s];
        }
        (out, acc)
    };
    let sizes: Vec<usize> = (0..4).map(|p| offsets(p).1).collect();
    let ranks: Vec<usize> = (0..3)
        .into_par_iter()
        .map(|p| -> Result<usize> {
            let (col_off, cols) = offsets(p);
            let (row_off, rows) = offsets(p + 1);
            let mut d = QMatrix::zeros(rows, cols);
            for s in masks(p) {
                for alpha in (0..3).filter(|a| s & (1 << a) == 0) {
                    let t = s | (1 << alpha);
                    let negative = (s & ((1 << alpha) - 1)).count_ones() % 2 == 1;
                    let block = op(alpha, s)?;
                    for i in 0..dims[t] {
                        for j in 0..dims[s] {
                            let v = &block[(i, j)];
                            if !v.is_zero() {
                                d[(row_off[t] + i, col_off[s] + j)] =
                                    if negative { -v.clone() } else { v.clone() };
                            }
                        }
                    }
                }
            }
            Ok(d.rank())
        })
        .collect::<Result<_>>()?;
    Ok([
        sizes[0] - ranks[0],
        sizes[1] - ranks[0] - ranks[1],
        sizes[2] - ranks[1] - ranks[2],
        sizes[3] - ranks[2],
    ])
}

/// Homology of `R → Q⊗R → ∧²Q⊗R → R` with `d(η) = B∧η`.
pub fn cpxnil_homology(rep: &ModuleRep) -> [usize; 4] {
    koszul_homology_with([rep.dim(); 8], |alpha, _| Ok(rep.b[alpha].clone()))
        .expect("operator blocks are infallible")
}

/// Homology of the complex `Hom_G(A/I1, ∧^{3-k}Q ⊗ A/I2)` with
/// `d(η) = B²∧η − η∧B¹`.
pub fn koszul_homology(
    group: &AbelianGroup,
    rep1: &ModuleRep,
    rep2: &ModuleRep,
) -> Result<[usize; 4]> {
    let n = rep1.dim();
    if rep2.dim() != n || n != group.order() {
        return Err(Error::Input(format!(
            "module dimensions {} and {} do not match |G| = {}",
            n,
            rep2.dim(),
            group.order()
        )));
    }
    let mask_char: Vec<usize> = (0..8)
        .map(|s| group.char_index(&mask_monomial(s).exponent()))
        .collect();
    // position in Γ2 of the image of basis vector j of Γ1 in block S
    let target = |s: usize, j: usize| rep2.by_char[group.char_product(rep1.chars[j], mask_char[s])];
    koszul_homology_with([n; 8], |alpha, s| {
        let t_mask = s | (1 << alpha);
        let (b1, b2) = (&rep1.b[alpha], &rep2.b[alpha]);
        let mut block = QMatrix::zeros(n, n);
        for j_in in 0..n {
            let src = target(s, j_in);
            let mut d = QMatrix::zeros(n, n);
            for r in 0..n {
                if !b2[(r, src)].is_zero() {
                    d[(r, j_in)] += &b2[(r, src)];
                }
            }
            for c in 0..n {
                if !b1[(j_in, c)].is_zero() {
                    d[(src, c)] -= &b1[(j_in, c)];
                }
            }
            for c in 0..n {
                let keep = target(t_mask, c);
                for r in 0..n {
                    if r == keep {
                        block[(c, j_in)] = d[(r, c)].clone();
                    } else if !d[(r, c)].is_zero() {
                        return Err(Error::Violation(
                            "Koszul differential leaves the equivariant subspace".into(),
                        ));
                    }
                }
            }
        }
        Ok(block)
    })
}

pub fn expected_homology(equal: bool) -> [usize; 4] {
    if equal {
        [1, 3, 3, 1]
    } else {
        [0, 0, 0, 0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub pair: [usize; 2],
    pub h: [usize; 4],
    pub expected: [usize; 4],
    pub pass: bool,
}

/// Koszul homology of the requested ordered pairs of representations.
pub fn pair_reports(
    group: &AbelianGroup,
    reps: &[ModuleRep],
    pairs: &[[usize; 2]],
) -> Result<Vec<KoszulReport>> {
    pairs
        .par_iter()
        .map(|&[i, j]| {
            let h = koszul_homology(group, &reps[i], &reps[j])?;
            let expected = expected_homology(i == j);
            Ok(KoszulReport {
                pair: [i, j],
                h,
                expected,
                pass: h == expected,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportCheck {
    Pass,
    Fail,
    /// Some `B_α` is singular, so the point lies over the singular locus.
    Skipped,
}

/// At a point with every `B_α` invertible, `B_α^{r_α} = c_α·I` and the
/// characteristic polynomial of `B_α` is `(t^{r_α} − c_α)^{|G|/r_α}`, where
/// `r_α` is the order of `χ(x_α)`: the eigenvalues of each `B_α` form whole
/// orbits under the group.
pub fn orbit_support_check(group: &AbelianGroup, rep: &ModuleRep) -> SupportCheck {
    let n = rep.dim();
    for alpha in 0..3 {
        let r = group.char_order(&Monomial::pure(alpha, 1).exponent()) as usize;
        let Some(c) = rep.b[alpha].pow(r as u32).as_scalar() else {
            return SupportCheck::Fail;
        };
        if c.is_zero() {
            return SupportCheck::Skipped;
        }
        if !n.is_multiple_of(r) || rep.b[alpha].charpoly() != binomial_power(r, &c, n / r) {
            return SupportCheck::Fail;
        }
    }
    SupportCheck::Pass
}

/// A nonzero rational `±p/q` with `1 ≤ p ≤ 9`, `1 ≤ q ≤ 5`.
pub fn random_coordinate(rng: &mut impl Rng) -> Q {
    let p: i64 = rng.gen_range(1..=9);
    let d: i64 = rng.gen_range(1..=5);
    let v = q_frac(p, d);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// `count` reproducible generic points in the chart of `base`; `salt`
/// separates the streams of different fixed points.
pub fn sample_chart_points(base: &GGraph, count: usize, seed: u64, salt: u64) -> Vec<ChartPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    (0..count)
        .map(|_| {
            let coords = [0, 1, 2].map(|_| random_coordinate(&mut rng));
            ChartPoint::new(base, coords)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ggraph::enumerate_fixed_points;
    use crate::group::build_group;
    use num::Signed;
    use std::collections::HashMap;

    fn group(s: &str) -> AbelianGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    fn setup(s: &str) -> (AbelianGroup, Vec<GGraph>) {
        let g = group(s);
        let fp = enumerate_fixed_points(&g).unwrap();
        (g, fp)
    }

    /// `x_α m = f·m'` with `m'` the `Γ` monomial of the same character and
    /// `f = x_α m / m'` an invariant Laurent monomial; its exponents in
    /// `λ, μ, ν` come from pairing with the rays.
    fn closed_form(g: &AbelianGroup, pt: &ChartPoint) -> [QMatrix; 3] {
        let gg = &pt.base;
        let rays = dual_basis(&chart_exponents(gg)).unwrap();
        let n = gg.len();
        let mut out = [
            QMatrix::zeros(n, n),
            QMatrix::zeros(n, n),
            QMatrix::zeros(n, n),
        ];
        for (alpha, mat) in out.iter_mut().enumerate() {
            for (j, m) in gg.gamma().iter().enumerate() {
                let s = m.times_var(alpha);
                let k = g.char_index(&s.exponent());
                let t = gg.position_of_char(k);
                let target = gg.gamma()[t];
                let diff: Vec<i64> = (0..3)
                    .map(|i| s.exponent()[i] - target.exponent()[i])
                    .collect();
                let mut ks = [0u32; 3];
                for (slot, ray) in ks.iter_mut().zip(&rays) {
                    let v: Rational64 = (0..3)
                        .map(|i| ray[i] * Rational64::from_integer(diff[i]))
                        .sum();
                    assert!(v.is_integer() && !v.is_negative(), "irregular chart entry");
                    *slot = v.to_integer() as u32;
                }
                mat[(t, j)] = coefficient(&pt.coords, ks);
            }
        }
        out
    }

    #[test]
    fn fixed_point_reps_are_truncated_multiplication() {
        for s in ["2:1,1,0", "3:1,1,1", "7:1,2,4", "2:1,1,0;2:1,0,1"] {
            let (g, fp) = setup(s);
            for gg in &fp {
                let rep = build_rep(&g, &ChartPoint::fixed(gg)).unwrap();
                assert!(verify_adhm(&rep));
                assert!(is_equivariant(&g, &rep));
                let pos: HashMap<_, _> = gg
                    .gamma()
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (*m, i))
                    .collect();
                for alpha in 0..3 {
                    for (j, m) in gg.gamma().iter().enumerate() {
                        let img = m.times_var(alpha);
                        for r in 0..gg.len() {
                            let want = if pos.get(&img) == Some(&r) {
                                q(1)
                            } else {
                                q(0)
                            };
                            assert_eq!(rep.b[alpha][(r, j)], want);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rewriting_matches_closed_form() {
        for s in [
            "3:1,1,1",
            "5:1,2,2",
            "6:1,2,3",
            "7:1,2,4",
            "2:1,1,0;2:1,0,1",
        ] {
            let (g, fp) = setup(s);
            for (k, gg) in fp.iter().enumerate() {
                for pt in sample_chart_points(gg, 3, 11, k as u64) {
                    let rep = build_rep(&g, &pt).unwrap();
                    assert_eq!(rep.b, closed_form(&g, &pt), "{s} point {k}");
                }
            }
        }
    }

    #[test]
    fn random_chart_points_satisfy_adhm() {
        for s in ["2:1,1,0", "3:1,1,1", "5:1,2,2", "7:1,2,4"] {
            let (g, fp) = setup(s);
            for (k, gg) in fp.iter().enumerate() {
                for pt in sample_chart_points(gg, 5, 7, k as u64) {
                    let rep = build_rep(&g, &pt).unwrap();
                    assert!(verify_adhm(&rep), "{s} point {k}");
                    assert!(is_equivariant(&g, &rep));
                    assert_eq!(orbit_support_check(&g, &rep), SupportCheck::Pass);
                    assert_eq!(cpxnil_homology(&rep), [0, 0, 0, 0]);
                }
            }
        }
    }

    #[test]
    fn involution_two_by_two() {
        let (g, fp) = setup("2:1,1,0");
        let gg = fp
            .iter()
            .find(|p| p.gamma() == [Monomial::ONE, Monomial::new(1, 0, 0)])
            .unwrap();
        let pt = ChartPoint::new(gg, [q_frac(2, 3), q(-5), q_frac(1, 4)]);
        let rep = build_rep(&g, &pt).unwrap();
        let b1 = &rep.b[0];
        assert_eq!(b1[(0, 0)], q(0));
        assert_eq!(b1[(1, 1)], q(0));
        assert_eq!(b1[(1, 0)], q(1));
        assert!(!b1[(0, 1)].is_zero());
        // z is invariant, so B3 is a scalar
        assert!(rep.b[2].as_scalar().is_some_and(|c| !c.is_zero()));
        assert!(verify_adhm(&rep));
    }

    #[test]
    fn corrupted_rep_fails() {
        let (g, fp) = setup("3:1,1,1");
        let pt = sample_chart_points(&fp[0], 1, 3, 0).remove(0);
        let mut rep = build_rep(&g, &pt).unwrap();
        assert!(verify_adhm(&rep));
        let (r, c) = (0..3)
            .flat_map(|r| (0..3).map(move |c| (r, c)))
            .find(|&(r, c)| !rep.b[0][(r, c)].is_zero())
            .unwrap();
        rep.b[0][(r, c)] += q(1);
        assert!(!verify_adhm(&rep));

        let mut dead = build_rep(&g, &ChartPoint::fixed(&fp[0])).unwrap();
        dead.b = [
            QMatrix::zeros(3, 3),
            QMatrix::zeros(3, 3),
            QMatrix::zeros(3, 3),
        ];
        assert!(commutators_vanish(&dead));
        assert!(!verify_adhm(&dead));
    }

    #[test]
    fn fixed_point_pairs() {
        for s in ["2:1,1,0", "3:1,1,1", "7:1,2,4"] {
            let (g, fp) = setup(s);
            let reps: Vec<_> = fp
                .iter()
                .map(|p| build_rep(&g, &ChartPoint::fixed(p)).unwrap())
                .collect();
            let pairs: Vec<[usize; 2]> = (0..fp.len())
                .flat_map(|i| (0..fp.len()).map(move |j| [i, j]))
                .collect();
            for r in pair_reports(&g, &reps, &pairs).unwrap() {
                assert!(r.pass, "{s} {:?} gave {:?}", r.pair, r.h);
            }
            for rep in &reps {
                let h = cpxnil_homology(rep);
                assert!(h.iter().any(|&x| x > 0));
                assert_eq!(h[0] + h[2], h[1] + h[3]);
                assert_eq!(orbit_support_check(&g, rep), SupportCheck::Skipped);
            }
        }
    }

    #[test]
    fn same_chart_points() {
        let (g, fp) = setup("5:1,2,2");
        for (k, gg) in fp.iter().enumerate() {
            let pts = sample_chart_points(gg, 2, 5, k as u64);
            assert_ne!(pts[0].coords, pts[1].coords);
            let r0 = build_rep(&g, &pts[0]).unwrap();
            let r1 = build_rep(&g, &pts[1]).unwrap();
            assert_eq!(koszul_homology(&g, &r0, &r1).unwrap(), [0, 0, 0, 0]);
            assert_eq!(koszul_homology(&g, &r0, &r0).unwrap(), [1, 3, 3, 1]);
        }
    }

    #[test]
    fn runaway_rewriting_is_rejected() {
        let (_, fp) = setup("3:1,1,1");
        let gg = &fp[0];
        let rules = rewrite_rules(gg);
        assert!(rules.iter().all(|r| gg.ideal().contains(&r.lhs)));
        let coords = [q(1), q(1), q(1)];
        let zero: Ray = [Rational64::zero(); 3];
        let err = normal_form(&rules, &coords, &zero, Monomial::XYZ).unwrap_err();
        assert!(matches!(err, Error::Violation(_)));
    }
}
