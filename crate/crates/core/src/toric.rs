//! Toric description of the resolution.
//!
//! `M ⊂ Z^3` is the lattice of exponents of G-invariant Laurent monomials and
//! `N = Z^3 + Σ Z·g` its dual. Each fixed point has an affine chart with
//! coordinates `λ, μ, ν`, which are invariant Laurent monomials; their
//! exponents span the dual cone and the rays of the cone are the dual basis.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::integer::{gcd, ExtendedGcd};
use num::rational::Rational64;
use num::{Integer, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ggraph::{GGraph, Kind};
use crate::group::AbelianGroup;

pub type IntVec = [i64; 3];
pub type Ray = [Rational64; 3];

/// Row-style Hermite normal form. Returns the nonzero rows in echelon form,
/// with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hermite_rows(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        // gcd-combine everything below r into a single pivot
        for i in r + 1..rows.len() {
            if rows[i][col] == 0 {
                continue;
            }
            let (a, b) = (rows[r][col], rows[i][col]);
            let ExtendedGcd { gcd: g, x, y } = a.extended_gcd(&b);
            let (pa, pb) = (a / g, b / g);
            let top: Vec<i64> = rows[r]
                .iter()
                .zip(&rows[i])
                .map(|(u, v)| x * u + y * v)
                .collect();
            let low: Vec<i64> = rows[r]
                .iter()
                .zip(&rows[i])
                .map(|(u, v)| -pb * u + pa * v)
                .collect();
            rows[r] = top;
            rows[i] = low;
        }
        if rows[r][col] == 0 {
            continue;
        }
        if rows[r][col] < 0 {
            rows[r].iter_mut().for_each(|v| *v = -*v);
        }
        let p = rows[r][col];
        for i in 0..r {
            let q = Integer::div_floor(&rows[i][col], &p);
            if q != 0 {
                for j in 0..cols {
                    rows[i][j] -= q * rows[r][j];
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

pub fn det3(m: &[IntVec; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn det3_q(m: &[Ray; 3]) -> Rational64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Rows `n_i` with `⟨n_i, v_j⟩ = δ_ij`, i.e. the inverse transpose.
pub fn dual_basis(v: &[IntVec; 3]) -> Option<[Ray; 3]> {
    let d = det3(v);
    if d == 0 {
        return None;
    }
    let cof = |i: usize, j: usize| -> i64 {
        let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        let minor = v[r[0]][c[0]] * v[r[1]][c[1]] - v[r[0]][c[1]] * v[r[1]][c[0]];
        if (i + j).is_multiple_of(2) {
            minor
        } else {
            -minor
        }
    };
    // (V^{-1})^T = cofactor matrix / det
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| Rational64::new(cof(i, j), d))
    }))
}

pub fn pair(n: &Ray, m: &IntVec) -> Rational64 {
    n.iter()
        .zip(m)
        .fold(Rational64::zero(), |acc, (a, &b)| acc + a * b)
}

/// Bases of `N` and `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePair {
    pub n_basis: [Ray; 3],
    pub m_basis: [IntVec; 3],
}

impl LatticePair {
    /// `[Z^3 : M]`.
    pub fn m_index(&self) -> i64 {
        det3(&self.m_basis).abs()
    }

    /// `[N : Z^3]`.
    pub fn n_index(&self) -> Rational64 {
        det3_q(&self.n_basis).abs().recip()
    }

    /// Coordinates of `v` against the basis of `N` dual to the basis of `M`.
    pub fn n_coords(&self, v: &Ray) -> [Rational64; 3] {
        self.m_basis.map(|m| pair(v, &m))
    }

    pub fn contains_n(&self, v: &Ray) -> bool {
        self.n_coords(v).iter().all(|c| c.is_integer())
    }

    pub fn contains_m(&self, e: &IntVec) -> bool {
        self.n_basis.iter().all(|n| pair(n, e).is_integer())
    }

    pub fn is_primitive_in_n(&self, v: &Ray) -> bool {
        let c = self.n_coords(v);
        c.iter().all(|x| x.is_integer())
            && c.iter().fold(0i64, |acc, x| gcd(acc, x.to_integer())) == 1
    }

    /// Pairings between the two bases are integral.
    pub fn is_dual(&self) -> bool {
        self.n_basis
            .iter()
            .all(|n| self.m_basis.iter().all(|m| pair(n, m).is_integer()))
    }
}

/// Computes `M` as the kernel of the character map and `N` as its dual.
pub fn lattices(group: &AbelianGroup) -> Result<LatticePair> {
    let gens = &group.spec().generators;
    let k = gens.len();
    // rows (w_j(e_i) | e_i) and (r_j e_j | 0); the rows of the echelon form
    // that vanish on the first k columns span M
    let mut rows = Vec::with_capacity(3 + k);
    for i in 0..3 {
        let mut row: Vec<i64> = gens.iter().map(|g| g.weights[i] as i64).collect();
        row.extend((0..3).map(|j| (i == j) as i64));
        rows.push(row);
    }
    for (j, g) in gens.iter().enumerate() {
        let mut row = vec![0i64; k + 3];
        row[j] = g.order as i64;
        rows.push(row);
    }
    let hnf = hermite_rows(rows);
    let kernel: Vec<IntVec> = hnf
        .iter()
        .filter(|r| r[..k].iter().all(|&v| v == 0))
        .map(|r| [r[k], r[k + 1], r[k + 2]])
        .collect();
    let m_basis: [IntVec; 3] = kernel
        .try_into()
        .map_err(|_| Error::Internal("kernel lattice does not have rank 3".into()))?;
    let n_basis = dual_basis(&m_basis)
        .ok_or_else(|| Error::Internal("degenerate invariant lattice".into()))?;
    let pair = LatticePair { n_basis, m_basis };

    let order = group.order() as i64;
    if pair.m_index() != order || pair.n_index() != Rational64::from_integer(order) {
        return Err(Error::Internal(format!(
            "lattice indices {} and {} differ from |G| = {order}",
            pair.m_index(),
            pair.n_index()
        )));
    }
    Ok(pair)
}

/// The dual cone of one affine chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartCone {
    pub owner: usize,
    /// Exponents of `λ, μ, ν`.
    pub dual_gens: [IntVec; 3],
    pub rays: [Ray; 3],
}

/// Exponents of `λ, μ, ν` read from the chart relations of a fixed point.
pub fn chart_exponents(gg: &GGraph) -> [IntVec; 3] {
    let [a, b, c, d, e, f] = gg.params().0.map(i64::from);
    match gg.kind() {
        // x^{a+d-1} = λ y^{b-1} z^{f-1}, and rotations
        Kind::A => [
            [a + d - 1, 1 - b, 1 - f],
            [1 - d, b + e - 1, 1 - c],
            [1 - a, 1 - e, c + f - 1],
        ],
        // x^a y^e = λ z^{c+f-1}, y^b z^f = μ x^{a+d-1}, z^c x^d = ν y^{b+e-1}
        Kind::B => [[a, e, 1 - c - f], [1 - a - d, b, f], [d, 1 - b - e, c]],
    }
}

pub fn chart_cone(group: &AbelianGroup, gg: &GGraph, owner: usize) -> Result<ChartCone> {
    let dual_gens = chart_exponents(gg);
    for v in &dual_gens {
        if !group.is_invariant(v) {
            return Err(Error::Violation(format!(
                "chart exponent {v:?} of fixed point {owner} ({}) is not invariant",
                gg.ideal()
            )));
        }
    }
    let rays = dual_basis(&dual_gens).ok_or_else(|| {
        Error::Violation(format!(
            "chart exponents of fixed point {owner} are linearly dependent"
        ))
    })?;
    Ok(ChartCone {
        owner,
        dual_gens,
        rays,
    })
}

/// `|det(v_λ, v_μ, v_ν)| = [Z^3 : M]`, i.e. the exponents form a basis of `M`.
pub fn check_smooth(pair: &LatticePair, cone: &ChartCone) -> bool {
    det3(&cone.dual_gens).abs() == pair.m_index()
}

/// Whether a ray lies at height one with nonnegative coordinates and is a
/// primitive vector of `N`.
pub fn is_crepant_ray(pair: &LatticePair, ray: &Ray) -> bool {
    let sum: Rational64 = ray.iter().sum();
    ray.iter().all(|x| !x.is_negative())
        && sum == Rational64::from_integer(1)
        && pair.is_primitive_in_n(ray)
}

/// The rays of a smooth cone, checked to be primitive, nonnegative and at
/// height one.
pub fn dual_rays(pair: &LatticePair, cone: &ChartCone) -> Result<[Ray; 3]> {
    let rays = dual_basis(&cone.dual_gens)
        .ok_or_else(|| Error::Violation(format!("cone {} is degenerate", cone.owner)))?;
    for r in &rays {
        if !is_crepant_ray(pair, r) {
            return Err(Error::Violation(format!(
                "ray {} of cone {} fails the crepancy test",
                fmt_ray(r),
                cone.owner
            )));
        }
    }
    Ok(rays)
}

pub fn fmt_ray(r: &Ray) -> String {
    let parts: Vec<String> = r.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// `{e1, e2, e3} ∪ junior(G)`, sorted.
pub fn expected_rays(group: &AbelianGroup) -> BTreeSet<Ray> {
    let one = Rational64::from_integer(1);
    let zero = Rational64::zero();
    let mut s = BTreeSet::from([[one, zero, zero], [zero, one, zero], [zero, zero, one]]);
    for g in group.junior_elements() {
        s.insert(group.as_point(&g));
    }
    s
}

/// Both rays share a zero coordinate, i.e. lie on one side of the junior
/// triangle.
pub fn is_boundary_pair(p: &Ray, q: &Ray) -> bool {
    (0..3).any(|i| p[i].is_zero() && q[i].is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetIssue {
    pub rays: [String; 2],
    pub boundary: bool,
    pub cones: Vec<usize>,
}

/// Outcome of the fan consistency checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub cone_count: usize,
    pub expected_cones: usize,
    pub missing_rays: Vec<String>,
    pub extra_rays: Vec<String>,
    pub facet_issues: Vec<FacetIssue>,
}

impl FanReport {
    pub fn passed(&self) -> bool {
        self.cone_count == self.expected_cones
            && self.missing_rays.is_empty()
            && self.extra_rays.is_empty()
            && self.facet_issues.is_empty()
    }
}

impl fmt::Display for FanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} cones (expected {})",
            self.cone_count, self.expected_cones
        )?;
        if !self.missing_rays.is_empty() {
            write!(f, "; missing rays {}", self.missing_rays.join(" "))?;
        }
        if !self.extra_rays.is_empty() {
            write!(f, "; extra rays {}", self.extra_rays.join(" "))?;
        }
        for issue in &self.facet_issues {
            write!(
                f,
                "; facet {}-{} ({}) in cones {:?}",
                issue.rays[0],
                issue.rays[1],
                if issue.boundary {
                    "boundary"
                } else {
                    "internal"
                },
                issue.cones
            )?;
        }
        Ok(())
    }
}

/// The assembled fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    pub cones: Vec<ChartCone>,
    pub rays: Vec<Ray>,
    /// Ray indices of each cone, sorted.
    pub cone_rays: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FanRecord {
    pub rays: Vec<[String; 3]>,
    pub cones: Vec<[usize; 3]>,
    pub junior_elements: Vec<[String; 3]>,
}

impl Fan {
    pub fn record(&self, group: &AbelianGroup) -> FanRecord {
        let strs = |r: &Ray| r.map(|x| x.to_string());
        FanRecord {
            rays: self.rays.iter().map(strs).collect(),
            cones: self.cone_rays.clone(),
            junior_elements: group
                .junior_elements()
                .iter()
                .map(|g| strs(&group.as_point(g)))
                .collect(),
        }
    }
}

/// Runs the ray-set, cone-count and facet-pairing checks.
pub fn check_fan(group: &AbelianGroup, cones: &[ChartCone]) -> FanReport {
    let expected = expected_rays(group);
    let found: BTreeSet<Ray> = cones.iter().flat_map(|c| c.rays).collect();

    let mut facets: BTreeMap<(Ray, Ray), Vec<usize>> = BTreeMap::new();
    for cone in cones {
        let mut rs = cone.rays;
        rs.sort();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            facets.entry((rs[i], rs[j])).or_default().push(cone.owner);
        }
    }
    let facet_issues = facets
        .into_iter()
        .filter_map(|((p, q), owners)| {
            let boundary = is_boundary_pair(&p, &q);
            let want = if boundary { 1 } else { 2 };
            (owners.len() != want).then(|| FacetIssue {
                rays: [fmt_ray(&p), fmt_ray(&q)],
                boundary,
                cones: owners,
            })
        })
        .collect();

    FanReport {
        cone_count: cones.len(),
        expected_cones: group.order(),
        missing_rays: expected.difference(&found).map(fmt_ray).collect(),
        extra_rays: found.difference(&expected).map(fmt_ray).collect(),
        facet_issues,
    }
}

/// Assembles the fan, failing with the check report when any fan invariant
/// does not hold.
pub fn build_fan(group: &AbelianGroup, pair: &LatticePair, cones: Vec<ChartCone>) -> Result<Fan> {
    for cone in &cones {
        if !check_smooth(pair, cone) {
            return Err(Error::Violation(format!(
                "cone {} is not smooth",
                cone.owner
            )));
        }
    }
    let report = check_fan(group, &cones);
    if !report.passed() {
        return Err(Error::Violation(format!("fan check failed: {report}")));
    }
    let rays: Vec<Ray> = cones
        .iter()
        .flat_map(|c| c.rays)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let cone_rays = cones
        .iter()
        .map(|c| {
            let mut idx = c
                .rays
                .map(|r| rays.binary_search(&r).expect("ray collected above"));
            idx.sort();
            idx
        })
        .collect();
    Ok(Fan {
        cones,
        rays,
        cone_rays,
    })
}

/// Cones for every fixed point, in fixed-point order.
pub fn chart_cones(group: &AbelianGroup, points: &[GGraph]) -> Result<Vec<ChartCone>> {
    points
        .iter()
        .enumerate()
        .map(|(i, gg)| chart_cone(group, gg, i))
        .collect()
}
