//! Tensor-product decomposition matrices and the McKay quiver.
//!
//! `a^(i)_{kl}` counts the subsets `S ⊆ {x, y, z}` of size `i` whose wedge
//! character carries `ρ_l` to `ρ_k`. The quiver has `a^(1)_{kl}` arrows
//! `l → k`.

use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::AbelianGroup;

/// Square integer matrix stored as rows.
pub type IntMatrix = Vec<Vec<i64>>;

/// `a^(i)` for one wedge degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorMatrix {
    pub degree: usize,
    pub entries: IntMatrix,
}

fn subsets_of_size(i: usize) -> Vec<Vec<usize>> {
    match i {
        0 => vec![vec![]],
        1 => vec![vec![0], vec![1], vec![2]],
        2 => vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        3 => vec![vec![0, 1, 2]],
        _ => unreachable!("wedge degree out of range"),
    }
}

/// `(a^(0), a^(1), a^(2), a^(3))`.
pub fn mckay_matrices(group: &AbelianGroup) -> [TensorMatrix; 4] {
    let n = group.order();
    std::array::from_fn(|i| {
        let mut entries = vec![vec![0i64; n]; n];
        for (l, rep) in group.representatives().iter().enumerate() {
            for s in subsets_of_size(i) {
                let mut e = *rep;
                for &a in &s {
                    e[a] += 1;
                }
                entries[group.char_index(&e)][l] += 1;
            }
        }
        TensorMatrix { degree: i, entries }
    })
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..n).map(|i| m[i][j]).collect())
        .collect()
}

/// `a^(2) - a^(1)`, the matrix of the pairing `(S_k^∨, S_l)`.
pub fn intersection_matrix(group: &AbelianGroup) -> IntMatrix {
    let [_, a1, a2, _] = mckay_matrices(group);
    a2.entries
        .iter()
        .zip(&a1.entries)
        .map(|(r2, r1)| r2.iter().zip(r1).map(|(x, y)| x - y).collect())
        .collect()
}

fn exponent_label(e: &[i64; 3]) -> String {
    let mut s = String::new();
    for (v, name) in e.iter().zip(['x', 'y', 'z']) {
        match v {
            0 => {}
            1 => s.push(name),
            _ => {
                let _ = write!(s, "{name}^{v}");
            }
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// The McKay quiver as a DOT multigraph.
pub fn quiver_dot(group: &AbelianGroup) -> String {
    let [_, a1, _, _] = mckay_matrices(group);
    let mut out = String::from("digraph mckay {\n");
    for (k, rep) in group.representatives().iter().enumerate() {
        let _ = writeln!(out, "  {k} [label=\"{k}: {}\"];", exponent_label(rep));
    }
    for (k, row) in a1.entries.iter().enumerate() {
        for (l, &count) in row.iter().enumerate() {
            for _ in 0..count {
                let _ = writeln!(out, "  {l} -> {k};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// `2I - a` for the cyclic group `1/r (1, r-1)` acting on the plane.
pub fn cartan_2d(r: usize) -> Result<IntMatrix> {
    if r < 2 {
        return Err(Error::Input(format!("cartan_2d needs r >= 2, got {r}")));
    }
    let weights = [1, r - 1];
    let mut m = vec![vec![0i64; r]; r];
    for l in 0..r {
        m[l][l] += 2;
        for w in weights {
            m[(l + w) % r][l] -= 1;
        }
    }
    Ok(m)
}

/// The affine Cartan matrix of type `A_{r-1}` written out directly.
pub fn affine_cartan_a(r: usize) -> IntMatrix {
    let mut m = vec![vec![0i64; r]; r];
    for i in 0..r {
        m[i][i] = 2;
        m[i][(i + 1) % r] -= 1;
        m[i][(i + r - 1) % r] -= 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn group(s: &str) -> AbelianGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn fig1_quiver_shape() {
        let g = group("7:1,2,4");
        let [_, a1, _, _] = mckay_matrices(&g);
        for k in 0..7 {
            for l in 0..7 {
                let expected = [1, 2, 4].iter().filter(|&&s| (l + s) % 7 == k).count() as i64;
                assert_eq!(a1.entries[k][l], expected, "entry ({k},{l})");
            }
        }
        let dot = quiver_dot(&g);
        assert_eq!(dot.matches(" -> ").count(), 21);
        assert!(dot.starts_with("digraph mckay {"));
        assert_eq!(dot.matches("label=").count(), 7);
    }

    #[test]
    fn involution_matrices() {
        let g = group("2:1,1,0");
        let [a0, a1, _, a3] = mckay_matrices(&g);
        assert_eq!(a1.entries, vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(a0.entries, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(a3.entries, a0.entries);
        assert_eq!(intersection_matrix(&g), vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(quiver_dot(&g).matches(" -> ").count(), 6);
    }

    #[test]
    fn intersection_for_one_third() {
        let g = group("3:1,1,1");
        let m = intersection_matrix(&g);
        let expected = vec![vec![0, 3, -3], vec![-3, 0, 3], vec![3, -3, 0]];
        assert_eq!(m, expected);
    }

    #[test]
    fn cartan_small_cases() {
        assert_eq!(
            cartan_2d(3).unwrap(),
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]
        );
        assert_eq!(cartan_2d(2).unwrap(), vec![vec![2, -2], vec![-2, 2]]);
        assert!(cartan_2d(1).is_err());
        for r in 2..=10 {
            let c = cartan_2d(r).unwrap();
            assert!(c.iter().all(|row| row.iter().sum::<i64>() == 0));
            assert_eq!(c, affine_cartan_a(r));
        }
    }
}
