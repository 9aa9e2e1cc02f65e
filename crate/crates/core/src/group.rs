//! Finite abelian diagonal subgroups of SL(3) and their character groups.
//!
//! A group is given by diagonal generators `diag(ε^w1, ε^w2, ε^w3)` with
//! `ε = exp(2πi/r)`. Elements are stored as integer triples modulo the common
//! exponent `R`, so `(v1, v2, v3)` stands for the point `(v1/R, v2/R, v3/R)`
//! of `(Q/Z)^3`. The monomial `x^l y^m z^n` carries the character
//! `g ↦ l·g1 + m·g2 + n·g3 (mod R)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num::integer::lcm;
use num::rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Exponent triple of a Laurent monomial `x^l y^m z^n`.
pub type Exponent = [i64; 3];

/// One diagonal generator `1/r (w1, w2, w3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub order: u32,
    pub weights: [u32; 3],
}

impl Generator {
    pub fn new(order: u32, weights: [u32; 3]) -> Result<Self> {
        if order == 0 {
            return Err(Error::Input("generator order must be positive".into()));
        }
        if let Some(w) = weights.iter().find(|&&w| w >= order) {
            return Err(Error::Input(format!(
                "weight {w} out of range for order {order} (need 0 <= w < r)"
            )));
        }
        let sum: u32 = weights.iter().sum();
        if !sum.is_multiple_of(order) {
            return Err(Error::Input(format!(
                "generator {order}:{},{},{} is not in SL3: weight sum {sum} is not divisible by {order}",
                weights[0], weights[1], weights[2]
            )));
        }
        Ok(Generator { order, weights })
    }

    pub fn is_trivial(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }
}

/// Parsed group specification, e.g. `"7:1,2,4"` or `"2:1,1,0;2:1,0,1"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSpec {
    pub generators: Vec<Generator>,
}

impl GroupSpec {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Input("empty generator list".into()));
        }
        if generators.iter().all(Generator::is_trivial) {
            return Err(Error::Input("the trivial group is not supported".into()));
        }
        Ok(GroupSpec { generators })
    }

    /// The cyclic group `1/r (w1, w2, w3)`.
    pub fn cyclic(order: u32, weights: [u32; 3]) -> Result<Self> {
        GroupSpec::new(vec![Generator::new(order, weights)?])
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (r, ws) = part
                .split_once(':')
                .ok_or_else(|| Error::Input(format!("expected r:w1,w2,w3, got {part:?}")))?;
            let order: u32 = r
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("bad order {r:?}")))?;
            let weights: Vec<u32> = ws
                .split(',')
                .map(|w| {
                    w.trim()
                        .parse()
                        .map_err(|_| Error::Input(format!("bad weight {w:?}")))
                })
                .collect::<Result<_>>()?;
            let weights: [u32; 3] = weights
                .try_into()
                .map_err(|_| Error::Input(format!("expected three weights in {part:?}")))?;
            gens.push(Generator::new(order, weights)?);
        }
        GroupSpec::new(gens)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                format!(
                    "{}:{},{},{}",
                    g.order, g.weights[0], g.weights[1], g.weights[2]
                )
            })
            .collect();
        f.write_str(&parts.join(";"))
    }
}

/// A group element, as residues modulo the common exponent `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupElement(pub [u32; 3]);

/// A character, recorded by its values on the canonically ordered elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Character {
    pub fingerprint: Vec<u32>,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.fingerprint.iter().all(|&v| v == 0)
    }
}

/// A finite abelian subgroup of SL(3) together with its character group.
#[derive(Debug, Clone)]
pub struct AbelianGroup {
    spec: GroupSpec,
    exponent: u32,
    elements: Vec<GroupElement>,
    characters: Vec<Character>,
    representatives: Vec<Exponent>,
    radix: Vec<u64>,
    key_index: HashMap<u64, usize>,
}

/// Closes the generators under addition, sorts the elements and scans for
/// characters.
pub fn build_group(spec: &GroupSpec) -> Result<AbelianGroup> {
    let exponent = spec
        .generators
        .iter()
        .fold(1u32, |acc, g| lcm(acc, g.order));
    let big_r = exponent as u64;

    let steps: Vec<[u32; 3]> = spec
        .generators
        .iter()
        .map(|g| {
            let scale = exponent / g.order;
            [
                g.weights[0] * scale,
                g.weights[1] * scale,
                g.weights[2] * scale,
            ]
        })
        .collect();

    let mut seen: HashSet<[u32; 3]> = HashSet::new();
    let mut queue = VecDeque::from([[0u32; 3]]);
    seen.insert([0; 3]);
    while let Some(v) = queue.pop_front() {
        for s in &steps {
            let w = [
                ((v[0] as u64 + s[0] as u64) % big_r) as u32,
                ((v[1] as u64 + s[1] as u64) % big_r) as u32,
                ((v[2] as u64 + s[2] as u64) % big_r) as u32,
            ];
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    let mut elements: Vec<GroupElement> = seen.into_iter().map(GroupElement).collect();
    elements.sort();
    if elements.len() == 1 {
        return Err(Error::Input("the trivial group is not supported".into()));
    }

    let mut radix = Vec::with_capacity(spec.generators.len());
    let mut acc: u64 = 1;
    for g in &spec.generators {
        radix.push(acc);
        acc = acc
            .checked_mul(g.order as u64)
            .ok_or_else(|| Error::Input("generator orders too large".into()))?;
    }

    let mut group = AbelianGroup {
        spec: spec.clone(),
        exponent,
        elements,
        characters: Vec::new(),
        representatives: Vec::new(),
        radix,
        key_index: HashMap::new(),
    };
    group.scan_characters()?;
    Ok(group)
}

impl AbelianGroup {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// The common exponent `R` (lcm of the generator orders).
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Characters in canonical order; index 0 is the trivial character.
    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    /// A small exponent carrying each character, in character order.
    pub fn representatives(&self) -> &[Exponent] {
        &self.representatives
    }

    fn key(&self, e: &Exponent) -> u64 {
        self.spec
            .generators
            .iter()
            .zip(&self.radix)
            .map(|(g, &rad)| {
                let r = g.order as i64;
                let v = (e[0] * g.weights[0] as i64
                    + e[1] * g.weights[1] as i64
                    + e[2] * g.weights[2] as i64)
                    .rem_euclid(r);
                v as u64 * rad
            })
            .sum()
    }

    fn fingerprint(&self, e: &Exponent) -> Character {
        let r = self.exponent as i64;
        let fingerprint = self
            .elements
            .iter()
            .map(|g| {
                (e[0] * g.0[0] as i64 + e[1] * g.0[1] as i64 + e[2] * g.0[2] as i64).rem_euclid(r)
                    as u32
            })
            .collect();
        Character { fingerprint }
    }

    fn scan_characters(&mut self) -> Result<()> {
        let n = self.order();
        let r = self.exponent as i64;
        let mut found: Vec<(Character, Exponent)> = Vec::with_capacity(n);
        let mut keys: HashSet<u64> = HashSet::new();
        // exponents in [0, R)^3, by increasing total degree
        'scan: for d in 0..=3 * (r - 1) {
            for l in 0..=d.min(r - 1) {
                for m in 0..=(d - l).min(r - 1) {
                    let k = d - l - m;
                    if k >= r {
                        continue;
                    }
                    let e = [l, m, k];
                    if keys.insert(self.key(&e)) {
                        found.push((self.fingerprint(&e), e));
                        if found.len() == n {
                            break 'scan;
                        }
                    }
                }
            }
        }
        if found.len() != n {
            return Err(Error::Internal(format!(
                "found {} characters for a group of order {n}",
                found.len()
            )));
        }
        found.sort();
        self.key_index = found
            .iter()
            .enumerate()
            .map(|(i, (_, e))| (self.key(e), i))
            .collect();
        let (chars, reps) = found.into_iter().unzip();
        self.characters = chars;
        self.representatives = reps;
        Ok(())
    }

    /// Character of the Laurent monomial with exponent `e`.
    pub fn char_of_monomial(&self, e: &Exponent) -> Character {
        self.fingerprint(e)
    }

    /// Index (in canonical character order) of the character of `e`.
    pub fn char_index(&self, e: &Exponent) -> usize {
        self.key_index[&self.key(e)]
    }

    /// True when `x^e` is G-invariant, i.e. `e` lies in the lattice M.
    pub fn is_invariant(&self, e: &Exponent) -> bool {
        self.key(e) == 0
    }

    /// Index of ρ_k ⊗ ρ_l.
    pub fn char_product(&self, k: usize, l: usize) -> usize {
        let a = self.representatives[k];
        let b = self.representatives[l];
        self.char_index(&[a[0] + b[0], a[1] + b[1], a[2] + b[2]])
    }

    /// Order of the character of `e` in the character group.
    pub fn char_order(&self, e: &Exponent) -> u32 {
        (1..=self.exponent)
            .find(|&k| {
                let k = k as i64;
                self.is_invariant(&[k * e[0], k * e[1], k * e[2]])
            })
            .unwrap_or(self.exponent)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// `-g`.
    pub fn negate(&self, g: &GroupElement) -> GroupElement {
        let r = self.exponent;
        GroupElement(g.0.map(|v| (r - v) % r))
    }

    /// Elements of age one, in canonical order.
    pub fn junior_elements(&self) -> Vec<GroupElement> {
        self.elements
            .iter()
            .filter(|g| age(self, g) == Rational64::from_integer(1))
            .copied()
            .collect()
    }

    /// `g` as a point of `[0,1)^3`.
    pub fn as_point(&self, g: &GroupElement) -> [Rational64; 3] {
        let r = self.exponent as i64;
        g.0.map(|v| Rational64::new(v as i64, r))
    }
}

/// Convenience wrapper around [`AbelianGroup::char_of_monomial`].
pub fn char_of_monomial(group: &AbelianGroup, e: &Exponent) -> Character {
    group.char_of_monomial(e)
}

/// All characters in canonical order, trivial first.
pub fn list_characters(group: &AbelianGroup) -> &[Character] {
    group.characters()
}

/// `(g1 + g2 + g3) / R`.
pub fn age(group: &AbelianGroup, g: &GroupElement) -> Rational64 {
    let s: i64 = g.0.iter().map(|&v| v as i64).sum();
    Rational64::new(s, group.exponent() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> AbelianGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn cyclic_seven() {
        let g = group("7:1,2,4");
        assert_eq!(g.order(), 7);
        for k in 0..7u32 {
            let e = GroupElement([k % 7, (2 * k) % 7, (4 * k) % 7]);
            assert!(g.contains(&e));
        }
        assert_eq!(g.characters().len(), 7);
        assert!(g.characters()[0].is_trivial());
    }

    #[test]
    fn involution_and_klein_four() {
        assert_eq!(group("2:1,1,0").order(), 2);
        let k = group("2:1,1,0;2:1,0,1");
        assert_eq!(k.order(), 4);
        assert_eq!(
            k.elements(),
            &[
                GroupElement([0, 0, 0]),
                GroupElement([0, 1, 1]),
                GroupElement([1, 0, 1]),
                GroupElement([1, 1, 0])
            ]
        );
        // every character of the Klein group has order at most 2
        for rep in k.representatives() {
            assert!(k.char_order(rep) <= 2);
        }
        assert_eq!(k.characters().len(), 4);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!("4:1,1,1".parse::<GroupSpec>().is_err());
        assert!("3:0,0,0".parse::<GroupSpec>().is_err());
        assert!("".parse::<GroupSpec>().is_err());
        assert!("3:1,1".parse::<GroupSpec>().is_err());
        assert!("3:4,1,1".parse::<GroupSpec>().is_err());
        assert!("x:1,1,1".parse::<GroupSpec>().is_err());
        assert!("1:0,0,0".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn monomial_characters() {
        let g = group("7:1,2,4");
        assert!(g.char_of_monomial(&[1, 1, 1]).is_trivial());
        assert!(g.char_of_monomial(&[0, 0, 0]).is_trivial());
        assert_eq!(
            g.char_of_monomial(&[1, 0, 0]),
            g.char_of_monomial(&[0, 0, 2])
        );
        assert_eq!(g.char_index(&[1, 0, 0]), g.char_index(&[0, 0, 2]));
        assert!(g.is_invariant(&[-1, -1, -1]));
        assert!(!g.is_invariant(&[1, 0, 0]));
    }

    #[test]
    fn canonical_labels_follow_powers_of_x_for_cyclic_seven() {
        let g = group("7:1,2,4");
        for k in 0..7 {
            assert_eq!(g.char_index(&[k, 0, 0]), k as usize);
        }
    }

    #[test]
    fn ages() {
        let g = group("3:1,1,1");
        assert_eq!(
            age(&g, &GroupElement([0, 0, 0])),
            Rational64::from_integer(0)
        );
        assert_eq!(
            age(&g, &GroupElement([1, 1, 1])),
            Rational64::from_integer(1)
        );
        assert_eq!(
            age(&g, &GroupElement([2, 2, 2])),
            Rational64::from_integer(2)
        );
        assert_eq!(g.junior_elements(), vec![GroupElement([1, 1, 1])]);
        assert_eq!(group("7:1,2,4").junior_elements().len(), 3);
        assert_eq!(group("2:1,1,0").junior_elements().len(), 1);
    }

    #[test]
    fn spec_display_round_trips() {
        let s: GroupSpec = "2:1,1,0;2:1,0,1".parse().unwrap();
        assert_eq!(s.to_string(), "2:1,1,0;2:1,0,1");
    }
}
