//! Shared suite data and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use ghilb::ggraph::GGraph;
use ghilb::linalg::{q, QMatrix};
use ghilb::{build_group, AbelianGroup, Monomial};

/// The three-dimensional suite groups.
pub const SUITE: [&str; 7] = [
    "2:1,1,0",
    "3:1,1,1",
    "5:1,2,2",
    "6:1,2,3",
    "7:1,2,4",
    "11:1,2,8",
    "2:1,1,0;2:1,0,1",
];

/// Plane groups `1/r (1, r-1)`, embedded with trivial weight on `z`.
pub const PLANE_ORDERS: std::ops::RangeInclusive<u32> = 2..=10;

pub fn group(spec: &str) -> AbelianGroup {
    build_group(&spec.parse().expect("suite spec parses")).expect("suite group builds")
}

pub fn plane_spec(r: u32) -> String {
    format!("{r}:1,{},0", r - 1)
}

/// Every suite group, the plane groups included.
pub fn all_suite_specs() -> Vec<String> {
    SUITE
        .iter()
        .map(|s| s.to_string())
        .chain(PLANE_ORDERS.map(plane_spec))
        .collect()
}

/// `dim Hom_A(I1, A/I2)^G` by solving the linearity equations directly.
///
/// An equivariant map sends each `m ∈ I1` to `c_m · m'(m)`, where `m'(m)` is
/// the monomial of `Γ2` with the character of `m`. For `m` and `x_α m` the
/// equation is `c_{x_α m} = c_m` when `x_α m'(m) ∉ I2` and `c_{x_α m} = 0`
/// otherwise. All generators and their pairwise lcms divide the lcm of the
/// generators, so the box below it carries every relation. The dimension is
/// the nullity of the dense system.
pub fn dense_hom_dim(group: &AbelianGroup, src: &GGraph, dst: &GGraph) -> usize {
    let gens = src.generators();
    let top: [u32; 3] = std::array::from_fn(|i| gens.iter().map(|g| g.0[i]).max().unwrap_or(0));
    let mut unknowns = Vec::new();
    for l in 0..=top[0] {
        for m in 0..=top[1] {
            for n in 0..=top[2] {
                let mono = Monomial::new(l, m, n);
                if src.ideal().contains(&mono) {
                    unknowns.push(mono);
                }
            }
        }
    }
    let index: HashMap<Monomial, usize> =
        unknowns.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let image = |m: &Monomial| dst.monomial_of_char(group.char_index(&m.exponent()));

    let mut rows = Vec::new();
    for (i, m) in unknowns.iter().enumerate() {
        for axis in 0..3 {
            let next = m.times_var(axis);
            let Some(&j) = index.get(&next) else { continue };
            let moved = image(m).times_var(axis);
            let mut row = vec![q(0); unknowns.len()];
            row[j] = q(1);
            if !dst.ideal().contains(&moved) {
                assert_eq!(moved, image(&next), "two Γ monomials share a character");
                row[i] = q(-1);
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return unknowns.len();
    }
    unknowns.len() - QMatrix::from_rows(rows).rank()
}

/// The affine Cartan matrix of type `A_{r-1}`, built entry by entry.
pub fn cartan_oracle(r: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; r]; r];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] += 2;
        row[(i + 1) % r] -= 1;
        row[(i + r - 1) % r] -= 1;
    }
    m
}

/// `(a, …, f)` and the type offset read off `Γ` without the library
/// classifier: the partner of `x^α` is `y^{b-1} z^{f-1}`, of `y^β` is
/// `z^{c-1} x^{d-1}`, of `z^γ` is `x^{a-1} y^{e-1}`.
pub fn read_params(group: &AbelianGroup, gg: &GGraph) -> Option<([u32; 6], [i64; 3])> {
    let mut powers = [0u32; 3];
    for (axis, p) in powers.iter_mut().enumerate() {
        *p = gg
            .generators()
            .iter()
            .find(|g| g.0[axis] > 0 && (0..3).all(|o| o == axis || g.0[o] == 0))?
            .0[axis];
    }
    let partner = |axis: usize| {
        let e = Monomial::pure(axis, powers[axis]).exponent();
        let k = group.char_index(&e);
        gg.gamma()
            .iter()
            .find(|m| group.char_index(&m.exponent()) == k)
            .copied()
    };
    let (px, py, pz) = (partner(0)?, partner(1)?, partner(2)?);
    if px.0[0] != 0 || py.0[1] != 0 || pz.0[2] != 0 {
        return None;
    }
    let (b, f) = (px.0[1] + 1, px.0[2] + 1);
    let (c, d) = (py.0[2] + 1, py.0[0] + 1);
    let (a, e) = (pz.0[0] + 1, pz.0[1] + 1);
    let off = [
        powers[0] as i64 - (a + d) as i64,
        powers[1] as i64 - (b + e) as i64,
        powers[2] as i64 - (c + f) as i64,
    ];
    Some(([a, b, c, d, e, f], off))
}
