//! The full per-group verification pipeline, as a serializable report.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::ggraph::{
    brute_force_fixed_points, classify, count_formula, enumerate_fixed_points, GGraph,
    DEFAULT_ORACLE_CAP,
};
use crate::group::AbelianGroup;
use crate::homcalc::{expected_hom_matrix, hom_matrix};
use crate::koszul::{
    build_rep, cpxnil_homology, is_equivariant, koszul_homology, orbit_support_check, pair_reports,
    sample_chart_points, verify_adhm, ChartPoint, KoszulReport, ModuleRep, SupportCheck,
};
use crate::mckay::{intersection_matrix, mckay_matrices, transpose};
use crate::toric::{build_fan, chart_cones, check_fan, check_smooth, dual_rays, lattices};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub oracle_cap: usize,
    pub samples: usize,
    pub seed: u64,
    pub max_pairs: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            oracle_cap: DEFAULT_ORACLE_CAP,
            samples: 5,
            seed: 0,
            max_pairs: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChartSample {
    pub fixed_point: usize,
    pub coords: [String; 3],
    pub adhm: bool,
    pub equivariant: bool,
    pub support: SupportCheck,
    pub cpxnil: [usize; 4],
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub order: usize,
    pub fixed_points: usize,
    pub checks: Vec<Check>,
    pub koszul: Vec<KoszulReport>,
    pub chart_samples: Vec<ChartSample>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Ordered pairs `(i, j)` of `n` points; at most `cap` of them, drawn
/// deterministically from `seed` and returned in lexicographic order.
pub fn select_pairs(n: usize, cap: Option<usize>, seed: u64) -> Vec<[usize; 2]> {
    let total = n * n;
    let idx: Vec<usize> = match cap {
        Some(c) if c < total => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v = sample(&mut rng, total, c).into_vec();
            v.sort_unstable();
            v
        }
        _ => (0..total).collect(),
    };
    idx.into_iter().map(|k| [k / n, k % n]).collect()
}

fn representation_check(group: &AbelianGroup) -> Check {
    let n = group.order();
    let a = mckay_matrices(group);
    let identity: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut problems = Vec::new();
    if a[0].entries != identity || a[3].entries != identity {
        problems.push("a0 or a3 is not the identity".to_string());
    }
    if a[2].entries != transpose(&a[1].entries) {
        problems.push("a2 differs from the transpose of a1".to_string());
    }
    for (i, m) in a.iter().enumerate() {
        let binom = [1, 3, 3, 1][i];
        let rows_ok = m.entries.iter().all(|r| r.iter().sum::<i64>() == binom);
        let cols_ok = transpose(&m.entries)
            .iter()
            .all(|r| r.iter().sum::<i64>() == binom);
        if !rows_ok || !cols_ok {
            problems.push(format!("a{i} has a row or column sum other than {binom}"));
        }
    }
    let x = intersection_matrix(group);
    let neg: Vec<Vec<i64>> = transpose(&x)
        .iter()
        .map(|r| r.iter().map(|v| -v).collect())
        .collect();
    if x != neg {
        problems.push("intersection matrix is not antisymmetric".to_string());
    }
    let pass = problems.is_empty();
    Check::new(
        "representation_identities",
        pass,
        if pass {
            "a0 = a3 = I, a2 = a1^T, sums 1,3,3,1, antisymmetric".into()
        } else {
            problems.join("; ")
        },
    )
}

fn enumeration_checks(
    group: &AbelianGroup,
    cfg: &VerifyConfig,
    points: &[GGraph],
    checks: &mut Vec<Check>,
) -> Result<()> {
    let n = group.order();
    checks.push(Check::new(
        "fixed_point_count",
        points.len() == n,
        format!("{} fixed points, |G| = {n}", points.len()),
    ));
    if n <= cfg.oracle_cap {
        let oracle = brute_force_fixed_points(group, cfg.oracle_cap)?;
        let same = oracle == points;
        checks.push(Check::new(
            "brute_force_oracle",
            same,
            if same {
                format!("oracle agrees on {} points", oracle.len())
            } else {
                format!(
                    "oracle found {} points, enumeration {}",
                    oracle.len(),
                    points.len()
                )
            },
        ));
    } else {
        checks.push(Check::new(
            "brute_force_oracle",
            true,
            format!("skipped: |G| = {n} exceeds oracle cap {}", cfg.oracle_cap),
        ));
    }

    let mut bad = Vec::new();
    for (i, gg) in points.iter().enumerate() {
        let by_char: Vec<usize> = (0..n).map(|k| gg.position_of_char(k)).collect();
        match classify(group, gg.gamma(), &by_char, gg.ideal()) {
            Ok((kind, params, _)) if kind == gg.kind() && params == gg.params() => {}
            Ok(_) => bad.push(format!("{i}: reclassification differs")),
            Err(e) => bad.push(format!("{i}: {e}")),
        }
        if count_formula(gg.kind(), &gg.params()) != n as i64 {
            bad.push(format!(
                "{i}: counting identity gives {}",
                count_formula(gg.kind(), &gg.params())
            ));
        }
    }
    checks.push(Check::new(
        "classification",
        bad.is_empty(),
        if bad.is_empty() {
            "every point is type A or B and satisfies its counting identity".into()
        } else {
            bad.join("; ")
        },
    ));
    Ok(())
}

fn fan_checks(group: &AbelianGroup, points: &[GGraph], checks: &mut Vec<Check>) -> Result<()> {
    let pair = lattices(group)?;
    let cones = chart_cones(group, points)?;
    let singular: Vec<usize> = cones
        .iter()
        .filter(|c| !check_smooth(&pair, c))
        .map(|c| c.owner)
        .collect();
    checks.push(Check::new(
        "smooth_cones",
        singular.is_empty(),
        if singular.is_empty() {
            format!("all {} cones have |det| = {}", cones.len(), group.order())
        } else {
            format!("singular cones {singular:?}")
        },
    ));
    let bad_rays: Vec<String> = cones
        .iter()
        .filter_map(|c| dual_rays(&pair, c).err().map(|e| e.to_string()))
        .collect();
    checks.push(Check::new(
        "crepant_rays",
        bad_rays.is_empty(),
        if bad_rays.is_empty() {
            "every ray is primitive, nonnegative and at height one".into()
        } else {
            bad_rays.join("; ")
        },
    ));
    let report = check_fan(group, &cones);
    let pass = report.passed() && build_fan(group, &pair, cones).is_ok();
    checks.push(Check::new("fan", pass, report.to_string()));
    Ok(())
}

fn chart_checks(
    group: &AbelianGroup,
    cfg: &VerifyConfig,
    points: &[GGraph],
    reps: &[ModuleRep],
    checks: &mut Vec<Check>,
) -> Result<Vec<ChartSample>> {
    let fixed_bad: Vec<usize> = reps
        .iter()
        .enumerate()
        .filter(|(_, r)| !verify_adhm(r) || !is_equivariant(group, r))
        .map(|(i, _)| i)
        .collect();
    checks.push(Check::new(
        "fixed_point_adhm",
        fixed_bad.is_empty(),
        if fixed_bad.is_empty() {
            "commuting, cyclic and equivariant at every fixed point".to_string()
        } else {
            format!("fails at fixed points {fixed_bad:?}")
        },
    ));

    let mut samples = Vec::new();
    let mut same_chart = Vec::new();
    for (k, gg) in points.iter().enumerate() {
        let pts = sample_chart_points(gg, cfg.samples, cfg.seed, k as u64);
        let mut sample_reps = Vec::with_capacity(pts.len());
        for pt in &pts {
            let rep = build_rep(group, pt)?;
            samples.push(ChartSample {
                fixed_point: k,
                coords: pt.coords.clone().map(|c| c.to_string()),
                adhm: verify_adhm(&rep),
                equivariant: is_equivariant(group, &rep),
                support: orbit_support_check(group, &rep),
                cpxnil: cpxnil_homology(&rep),
            });
            sample_reps.push(rep);
        }
        if let [r0, r1, ..] = sample_reps.as_slice() {
            same_chart.push((
                k,
                koszul_homology(group, r0, r1)?,
                koszul_homology(group, r0, r0)?,
            ));
        }
    }
    let bad: Vec<String> = samples
        .iter()
        .filter(|s| {
            !s.adhm || !s.equivariant || s.support != SupportCheck::Pass || s.cpxnil != [0; 4]
        })
        .map(|s| format!("point {} at ({})", s.fixed_point, s.coords.join(", ")))
        .collect();
    checks.push(Check::new(
        "chart_point_adhm",
        bad.is_empty(),
        if bad.is_empty() {
            format!(
                "{} chart points: commuting, cyclic, orbit-supported, cpxnil exact",
                samples.len()
            )
        } else {
            bad.join("; ")
        },
    ));
    let bad_same: Vec<String> = same_chart
        .iter()
        .filter(|(_, h01, h00)| *h01 != [0; 4] || *h00 != [1, 3, 3, 1])
        .map(|(k, h01, h00)| format!("chart {k}: distinct {h01:?}, equal {h00:?}"))
        .collect();
    checks.push(Check::new(
        "same_chart_koszul",
        bad_same.is_empty(),
        if bad_same.is_empty() {
            format!(
                "{} charts: distinct points exact, equal points (1,3,3,1)",
                same_chart.len()
            )
        } else {
            bad_same.join("; ")
        },
    ));
    Ok(samples)
}

/// Runs every check for `group`. Verification failures are reported in the
/// returned value; `Err` signals bad input or an internal fault.
pub fn verify(group: &AbelianGroup, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut checks = vec![representation_check(group)];

    let points = enumerate_fixed_points(group)?;
    enumeration_checks(group, cfg, &points, &mut checks)?;
    fan_checks(group, &points, &mut checks)?;

    let hom = hom_matrix(group, &points)?;
    let want = expected_hom_matrix(points.len());
    checks.push(Check::new(
        "hom_matrix",
        hom == want,
        if hom == want {
            "3 on the diagonal, 1 off the diagonal".to_string()
        } else {
            format!("hom matrix {hom:?}")
        },
    ));

    let reps: Vec<ModuleRep> = points
        .iter()
        .map(|p| build_rep(group, &ChartPoint::fixed(p)))
        .collect::<Result<_>>()?;
    let pairs = select_pairs(points.len(), cfg.max_pairs, cfg.seed);
    let koszul = pair_reports(group, &reps, &pairs)?;
    let failing: Vec<[usize; 2]> = koszul.iter().filter(|r| !r.pass).map(|r| r.pair).collect();
    let duality = koszul.iter().all(|r| {
        koszul
            .iter()
            .find(|s| s.pair == [r.pair[1], r.pair[0]])
            .is_none_or(|s| s.h[2] == r.h[1])
    });
    let euler = koszul.iter().all(|r| r.h[0] + r.h[2] == r.h[1] + r.h[3]);
    let consistent = koszul.iter().all(|r| {
        let [i, j] = r.pair;
        r.h[1] + usize::from(i != j) == hom[i][j]
    });
    let pass = failing.is_empty() && duality && euler && consistent;
    checks.push(Check::new(
        "koszul_homology",
        pass,
        if pass {
            format!("{} of {} pairs, all as expected", koszul.len(), points.len() * points.len())
        } else {
            format!(
                "failing pairs {failing:?}; duality {duality}; euler {euler}; hom agreement {consistent}"
            )
        },
    ));

    let chart_samples = chart_checks(group, cfg, &points, &reps, &mut checks)?;
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        group: group.spec().to_string(),
        order: group.order(),
        fixed_points: points.len(),
        checks,
        koszul,
        chart_samples,
        pass,
    })
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "group {} (order {})", self.group, self.order)?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: {}",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        write!(
            f,
            "{}",
            if self.pass {
                "all checks passed"
            } else {
                "verification failed"
            }
        )
    }
}
