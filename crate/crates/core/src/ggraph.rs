//! Torus-fixed points of the G-Hilbert scheme.
//!
//! A fixed point is a monomial ideal `I` whose complement `Γ` (the G-graph)
//! carries every character exactly once. Every such ideal is generated by
//! `x^α, y^β, z^γ, x^a y^e, y^b z^f, z^c x^d, xyz` where either
//! `(α, β, γ) = (a+d-1, b+e-1, c+f-1)` (type A) or `(a+d, b+e, c+f)` (type B).
//! The parameters are pinned down by character matching, not by minimality of
//! the mixed generators, so degenerate shapes still carry a full parameter
//! tuple.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{build_group, AbelianGroup, GroupSpec};
use crate::monomial::{Monomial, MonomialIdeal};

/// Default bound on `|G|` for the brute-force search.
pub const DEFAULT_ORACLE_CAP: usize = 16;

const AXES: [char; 3] = ['x', 'y', 'z'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    A,
    B,
}

impl Kind {
    /// `α - (a + d)`.
    fn offset(self) -> i64 {
        match self {
            Kind::A => -1,
            Kind::B => 0,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::A => "A",
            Kind::B => "B",
        })
    }
}

/// `(a, b, c, d, e, f)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Params(pub [u32; 6]);

impl Params {
    pub fn a(&self) -> u32 {
        self.0[0]
    }
    pub fn b(&self) -> u32 {
        self.0[1]
    }
    pub fn c(&self) -> u32 {
        self.0[2]
    }
    pub fn d(&self) -> u32 {
        self.0[3]
    }
    pub fn e(&self) -> u32 {
        self.0[4]
    }
    pub fn f(&self) -> u32 {
        self.0[5]
    }

    /// `(α, β, γ)` for the given kind.
    pub fn powers(&self, kind: Kind) -> [u32; 3] {
        let k = kind.offset();
        let [a, b, c, d, e, f] = self.0.map(i64::from);
        [a + d + k, b + e + k, c + f + k].map(|v| v as u32)
    }

    /// `ab + ac + ae + bc + bf + dc + de + df + ef`.
    pub fn quadratic(&self) -> i64 {
        let [a, b, c, d, e, f] = self.0.map(i64::from);
        a * b + a * c + a * e + b * c + b * f + d * c + d * e + d * f + e * f
    }

    pub fn linear(&self) -> i64 {
        self.0.iter().map(|&v| v as i64).sum()
    }
}

/// The seven-generator ideal of the given shape.
pub fn seven_generator_ideal(kind: Kind, p: &Params) -> MonomialIdeal {
    let [alpha, beta, gamma] = p.powers(kind);
    MonomialIdeal::new([
        Monomial::new(alpha, 0, 0),
        Monomial::new(0, beta, 0),
        Monomial::new(0, 0, gamma),
        Monomial::new(p.a(), p.e(), 0),
        Monomial::new(0, p.b(), p.f()),
        Monomial::new(p.d(), 0, p.c()),
        Monomial::XYZ,
    ])
}

/// A torus-fixed point: the ideal, its G-graph and its classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GGraph {
    gamma: Vec<Monomial>,
    ideal: MonomialIdeal,
    chars: Vec<usize>,
    by_char: Vec<usize>,
    kind: Kind,
    params: Params,
    powers: [u32; 3],
}

/// JSON form of a fixed point.
#[derive(Debug, Clone, Serialize)]
pub struct FixedPointRecord {
    pub kind: Kind,
    pub params: [u32; 6],
    pub generators: Vec<Monomial>,
    pub gamma: Vec<Monomial>,
    pub characters: Vec<usize>,
}

impl GGraph {
    /// The monomials of `Γ`, sorted.
    pub fn gamma(&self) -> &[Monomial] {
        &self.gamma
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn generators(&self) -> &[Monomial] {
        self.ideal.generators()
    }

    /// Character index of each monomial of `Γ`, parallel to [`GGraph::gamma`].
    pub fn characters(&self) -> &[usize] {
        &self.chars
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn params(&self) -> Params {
        self.params
    }

    /// `(α, β, γ)`.
    pub fn powers(&self) -> [u32; 3] {
        self.powers
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    /// Position of `m` in `Γ`, if present.
    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.gamma.binary_search(m).ok()
    }

    /// Position in `Γ` of the unique monomial carrying character `k`.
    pub fn position_of_char(&self, k: usize) -> usize {
        self.by_char[k]
    }

    /// The unique monomial of `Γ` carrying character `k`.
    pub fn monomial_of_char(&self, k: usize) -> Monomial {
        self.gamma[self.by_char[k]]
    }

    pub fn record(&self) -> FixedPointRecord {
        FixedPointRecord {
            kind: self.kind,
            params: self.params.0,
            generators: self.ideal.generators().to_vec(),
            gamma: self.gamma.clone(),
            characters: self.chars.clone(),
        }
    }
}

/// Monomials outside `I`, bounded by the pure-power generators.
pub fn complement(ideal: &MonomialIdeal) -> Result<Vec<Monomial>> {
    let mut bounds = [0u32; 3];
    for (axis, b) in bounds.iter_mut().enumerate() {
        *b = ideal
            .pure_power(axis)
            .ok_or(Error::InfiniteComplement(AXES[axis]))?;
    }
    let mut out = Vec::new();
    for l in 0..bounds[0] {
        for m in 0..bounds[1] {
            for n in 0..bounds[2] {
                let mono = Monomial::new(l, m, n);
                if !ideal.contains(&mono) {
                    out.push(mono);
                }
            }
        }
    }
    Ok(out)
}

/// Some(G-graph) when `A/I` is the regular representation.
pub fn is_ggraph(group: &AbelianGroup, ideal: &MonomialIdeal) -> Result<Option<GGraph>> {
    let gamma = complement(ideal)?;
    let n = group.order();
    if gamma.len() != n {
        return Ok(None);
    }
    let mut by_char = vec![usize::MAX; n];
    let mut chars = Vec::with_capacity(n);
    for (pos, m) in gamma.iter().enumerate() {
        let k = group.char_index(&m.exponent());
        if by_char[k] != usize::MAX {
            return Ok(None);
        }
        by_char[k] = pos;
        chars.push(k);
    }
    let (kind, params, powers) = classify(group, &gamma, &by_char, ideal)?;
    Ok(Some(GGraph {
        gamma,
        ideal: ideal.clone(),
        chars,
        by_char,
        kind,
        params,
        powers,
    }))
}

/// Reads `(a, …, f)` off the character conditions and decides the type.
///
/// `gamma` must carry each character once, with `by_char[k]` the position of
/// the monomial carrying character `k`.
pub fn classify(
    group: &AbelianGroup,
    gamma: &[Monomial],
    by_char: &[usize],
    ideal: &MonomialIdeal,
) -> Result<(Kind, Params, [u32; 3])> {
    let mut powers = [0u32; 3];
    for (axis, p) in powers.iter_mut().enumerate() {
        *p = ideal
            .pure_power(axis)
            .ok_or(Error::InfiniteComplement(AXES[axis]))?;
    }
    let partner = |axis: usize| -> Monomial {
        let k = group.char_index(&Monomial::pure(axis, powers[axis]).exponent());
        gamma[by_char[k]]
    };

    // Γ-partner of x^α is y^{b-1} z^{f-1}; rotate for y^β and z^γ.
    let px = partner(0);
    let py = partner(1);
    let pz = partner(2);
    if px.0[0] != 0 || py.0[1] != 0 || pz.0[2] != 0 {
        return Err(Error::Violation(format!(
            "partner of a pure power is not supported on the other two axes: {px}, {py}, {pz} for {ideal}"
        )));
    }
    let (b, f) = (px.0[1] + 1, px.0[2] + 1);
    let (c, d) = (py.0[2] + 1, py.0[0] + 1);
    let (a, e) = (pz.0[0] + 1, pz.0[1] + 1);
    let params = Params([a, b, c, d, e, f]);

    let offsets = [
        powers[0] as i64 - (a + d) as i64,
        powers[1] as i64 - (b + e) as i64,
        powers[2] as i64 - (c + f) as i64,
    ];
    let kind = match offsets {
        [-1, -1, -1] => Kind::A,
        [0, 0, 0] => Kind::B,
        _ => return Err(Error::Violation(format!(
            "axis relations disagree on the type of {ideal}: offsets {offsets:?} for params {:?}",
            params.0
        ))),
    };
    if seven_generator_ideal(kind, &params) != *ideal {
        return Err(Error::Violation(format!(
            "{ideal} differs from the type {kind} ideal {} with params {:?}",
            seven_generator_ideal(kind, &params),
            params.0
        )));
    }
    Ok((kind, params, powers))
}

/// Fixed points via the type A/B parameter search, canonically sorted.
pub fn enumerate_fixed_points(group: &AbelianGroup) -> Result<Vec<GGraph>> {
    let n = group.order() as u32;
    let ch = |l: u32, m: u32, k: u32| group.char_index(&[l as i64, m as i64, k as i64]);

    let seeds: Vec<(Kind, u32)> = [Kind::A, Kind::B]
        .into_iter()
        .flat_map(|k| (1..=n).map(move |a| (k, a)))
        .collect();

    let found: Vec<Vec<GGraph>> = seeds
        .par_iter()
        .map(|&(kind, a)| -> Result<Vec<GGraph>> {
            let off = kind.offset();
            let power = |u: u32, v: u32| (u as i64 + v as i64 + off) as u32;
            let mut out = Vec::new();
            for d in 1..=n {
                let alpha = power(a, d);
                if alpha > n {
                    break;
                }
                for b in 1..=n {
                    for f in 1..=n {
                        if ch(alpha, 0, 0) != ch(0, b - 1, f - 1) {
                            continue;
                        }
                        for e in 1..=n {
                            let beta = power(b, e);
                            if beta > n {
                                break;
                            }
                            for c in 1..=n {
                                let gamma = power(c, f);
                                if gamma > n {
                                    break;
                                }
                                if ch(0, beta, 0) != ch(d - 1, 0, c - 1)
                                    || ch(0, 0, gamma) != ch(a - 1, e - 1, 0)
                                {
                                    continue;
                                }
                                let ideal =
                                    seven_generator_ideal(kind, &Params([a, b, c, d, e, f]));
                                if let Some(gg) = is_ggraph(group, &ideal)? {
                                    out.push(gg);
                                }
                            }
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut unique: BTreeMap<Vec<Monomial>, GGraph> = BTreeMap::new();
    for gg in found.into_iter().flatten() {
        unique.entry(gg.generators().to_vec()).or_insert(gg);
    }
    Ok(canonical(unique.into_values()))
}

fn canonical(points: impl IntoIterator<Item = GGraph>) -> Vec<GGraph> {
    let mut v: Vec<GGraph> = points.into_iter().collect();
    v.sort_by(|p, q| p.gamma.cmp(&q.gamma));
    v
}

/// Minimal monomials outside a downward-closed set.
fn outer_corners(gamma: &BTreeSet<Monomial>) -> MonomialIdeal {
    let mut gens = Vec::new();
    for m in gamma {
        for axis in 0..3 {
            let c = m.times_var(axis);
            if gamma.contains(&c) {
                continue;
            }
            if (0..3).all(|ax| c.over_var(ax).is_none_or(|p| gamma.contains(&p))) {
                gens.push(c);
            }
        }
    }
    MonomialIdeal::new(gens)
}

/// Independent search over downward-closed monomial sets with distinct
/// characters. Used to cross-check [`enumerate_fixed_points`].
pub fn brute_force_fixed_points(group: &AbelianGroup, cap: usize) -> Result<Vec<GGraph>> {
    let n = group.order();
    if n > cap {
        return Err(Error::OracleCap { order: n, cap });
    }
    let char_of = |m: &Monomial| group.char_index(&m.exponent());

    let start: BTreeSet<Monomial> = BTreeSet::from([Monomial::ONE]);
    let mut seen: HashSet<Vec<Monomial>> = HashSet::new();
    let mut stack = vec![start];
    let mut complete: Vec<BTreeSet<Monomial>> = Vec::new();

    while let Some(gamma) = stack.pop() {
        if gamma.len() == n {
            complete.push(gamma);
            continue;
        }
        let used: HashSet<usize> = gamma.iter().map(char_of).collect();
        let mut candidates = BTreeSet::new();
        for m in &gamma {
            for axis in 0..3 {
                let c = m.times_var(axis);
                if c.0.iter().all(|&v| v > 0) || gamma.contains(&c) {
                    continue;
                }
                let closed = (0..3).all(|ax| c.over_var(ax).is_none_or(|p| gamma.contains(&p)));
                if closed && !used.contains(&char_of(&c)) {
                    candidates.insert(c);
                }
            }
        }
        for c in candidates {
            let mut next = gamma.clone();
            next.insert(c);
            if seen.insert(next.iter().copied().collect()) {
                stack.push(next);
            }
        }
    }

    let mut out = Vec::with_capacity(complete.len());
    for gamma in complete {
        let ideal = outer_corners(&gamma);
        let gg = is_ggraph(group, &ideal)?.ok_or_else(|| {
            Error::Internal(format!("staircase complement of {ideal} is not a G-graph"))
        })?;
        if gg.gamma.iter().ne(gamma.iter()) {
            return Err(Error::Internal(format!("complement mismatch for {ideal}")));
        }
        out.push(gg);
    }
    Ok(canonical(out))
}

/// The counting identity for the number of points in the generic fibre of a
/// chart: `|G| = 4 - 2Σ + Q` (type A) or `|G| = 1 - Σ + Q` (type B).
pub fn verify_count_identity(gg: &GGraph, order: usize) -> bool {
    count_formula(gg.kind, &gg.params) == order as i64
}

pub fn count_formula(kind: Kind, p: &Params) -> i64 {
    match kind {
        Kind::A => 4 - 2 * p.linear() + p.quadratic(),
        Kind::B => 1 - p.linear() + p.quadratic(),
    }
}

/// Fixed points for the plane group `1/r (1, r-1)`, realised inside SL(3)
/// with trivial weight on `z`. Every G-graph lies in the `xy`-plane.
pub fn fixed_points_2d(r: u32) -> Result<(AbelianGroup, Vec<GGraph>)> {
    if r < 2 {
        return Err(Error::Input(format!("plane group needs r >= 2, got {r}")));
    }
    let group = build_group(&GroupSpec::cyclic(r, [1, r - 1, 0])?)?;
    let points = brute_force_fixed_points(&group, usize::MAX)?;
    Ok((group, points))
}

/// Lookup from monomial to `Γ` position, for hot loops.
pub fn position_map(gg: &GGraph) -> HashMap<Monomial, usize> {
    gg.gamma.iter().enumerate().map(|(i, m)| (*m, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> AbelianGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    fn ideal(gens: &[[u32; 3]]) -> MonomialIdeal {
        MonomialIdeal::new(gens.iter().map(|&e| Monomial(e)))
    }

    #[test]
    fn complements() {
        let i = ideal(&[[2, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(
            complement(&i).unwrap(),
            vec![Monomial::ONE, Monomial::new(1, 0, 0)]
        );
        let i = ideal(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(complement(&i).unwrap(), vec![Monomial::ONE]);
        let i = ideal(&[
            [3, 0, 0],
            [0, 3, 0],
            [0, 0, 3],
            [1, 1, 0],
            [0, 1, 1],
            [1, 0, 1],
            [1, 1, 1],
        ]);
        assert_eq!(complement(&i).unwrap().len(), 7);
        let open = ideal(&[[2, 0, 0], [0, 1, 0]]);
        assert_eq!(complement(&open), Err(Error::InfiniteComplement('z')));
    }

    #[test]
    fn involution_graphs() {
        let g = group("2:1,1,0");
        let gg = is_ggraph(&g, &ideal(&[[2, 0, 0], [0, 1, 0], [0, 0, 1]]))
            .unwrap()
            .unwrap();
        assert_eq!(gg.gamma(), &[Monomial::ONE, Monomial::new(1, 0, 0)]);
        assert_eq!(gg.characters(), &[0, 1]);
        assert_eq!(gg.powers()[0], 2);
        assert_eq!(gg.kind(), Kind::A);
        assert_eq!(gg.params(), Params([1, 1, 1, 2, 1, 1]));
        assert!(verify_count_identity(&gg, 2));

        let gy = is_ggraph(&g, &ideal(&[[1, 0, 0], [0, 2, 0], [0, 0, 1]]))
            .unwrap()
            .unwrap();
        assert_eq!(gy.gamma(), &[Monomial::ONE, Monomial::new(0, 1, 0)]);

        // z carries the trivial character
        assert!(is_ggraph(&g, &ideal(&[[1, 0, 0], [0, 1, 0], [0, 0, 2]]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn all_ones_candidate_for_seven_is_rejected() {
        let g = group("7:1,2,4");
        let i = ideal(&[
            [3, 0, 0],
            [0, 3, 0],
            [0, 0, 3],
            [1, 1, 0],
            [0, 1, 1],
            [1, 0, 1],
            [1, 1, 1],
        ]);
        assert_eq!(complement(&i).unwrap().len(), 7);
        // x^2 and y share a character
        assert!(is_ggraph(&g, &i).unwrap().is_none());
        assert_eq!(count_formula(Kind::B, &Params([1; 6])), 4);
        assert_eq!(count_formula(Kind::A, &Params([1; 6])), 1);
    }

    #[test]
    fn small_group_counts() {
        for (spec, count) in [
            ("2:1,1,0", 2),
            ("3:1,1,1", 3),
            ("7:1,2,4", 7),
            ("2:1,1,0;2:1,0,1", 4),
        ] {
            let g = group(spec);
            let fp = enumerate_fixed_points(&g).unwrap();
            assert_eq!(fp.len(), count, "{spec}");
            let bf = brute_force_fixed_points(&g, DEFAULT_ORACLE_CAP).unwrap();
            assert_eq!(fp, bf, "{spec}");
            for p in &fp {
                assert!(verify_count_identity(p, g.order()), "{spec}: {}", p.ideal());
            }
        }
    }

    #[test]
    fn oracle_cap() {
        let g = group("7:1,2,4");
        assert_eq!(
            brute_force_fixed_points(&g, 6).unwrap_err(),
            Error::OracleCap { order: 7, cap: 6 }
        );
    }

    #[test]
    fn degenerate_parameters_are_read_from_characters() {
        // 1/3(1,1,1): Γ = {1, x, x^2} has no mixed generator of the form x^a y^e
        // with both exponents positive.
        let g = group("3:1,1,1");
        let i = ideal(&[[3, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let gg = is_ggraph(&g, &i).unwrap().unwrap();
        let p = gg.params();
        assert_eq!(seven_generator_ideal(gg.kind(), &p), i);
        assert!(verify_count_identity(&gg, 3));
    }

    #[test]
    fn plane_groups() {
        for r in 2..=6 {
            let (_, pts) = fixed_points_2d(r).unwrap();
            assert_eq!(pts.len(), r as usize);
            assert!(pts.iter().all(|p| p.gamma().iter().all(|m| m.0[2] == 0)));
        }
    }
}
