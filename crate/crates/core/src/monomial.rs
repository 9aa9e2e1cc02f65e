//! Monomials in `C[x, y, z]` and monomial ideals.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::group::Exponent;

/// `x^l y^m z^n`, ordered lexicographically on `(l, m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);
    pub const XYZ: Monomial = Monomial([1, 1, 1]);

    pub fn new(l: u32, m: u32, n: u32) -> Self {
        Monomial([l, m, n])
    }

    /// `x_axis^k`.
    pub fn pure(axis: usize, k: u32) -> Self {
        let mut e = [0; 3];
        e[axis] = k;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self) -> Exponent {
        self.0.map(i64::from)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| {
            Monomial([
                self.0[0] - other.0[0],
                self.0[1] - other.0[1],
                self.0[2] - other.0[2],
            ])
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0].max(other.0[0]),
            self.0[1].max(other.0[1]),
            self.0[2].max(other.0[2]),
        ])
    }

    /// `x_axis · self`.
    pub fn times_var(&self, axis: usize) -> Monomial {
        let mut e = self.0;
        e[axis] += 1;
        Monomial(e)
    }

    /// `self / x_axis`, if the exponent on that axis is positive.
    pub fn over_var(&self, axis: usize) -> Option<Monomial> {
        (self.0[axis] > 0).then(|| {
            let mut e = self.0;
            e[axis] -= 1;
            Monomial(e)
        })
    }

    /// Axis index when the monomial is a pure power `x_i^k` with `k > 0`.
    pub fn pure_axis(&self) -> Option<usize> {
        let nonzero: Vec<usize> = (0..3).filter(|&i| self.0[i] > 0).collect();
        match nonzero.as_slice() {
            [i] => Some(*i),
            _ => None,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (v, name) in self.0.iter().zip(['x', 'y', 'z']) {
            match v {
                0 => continue,
                1 => write!(f, "{name}")?,
                _ => write!(f, "{name}^{v}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// A monomial ideal, kept as its sorted minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MonomialIdeal {
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Ideal generated by `gens`; redundant generators are dropped.
    pub fn new(gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut gens: Vec<Monomial> = gens.into_iter().collect();
        gens.sort();
        gens.dedup();
        let minimal = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
            .copied()
            .collect();
        MonomialIdeal {
            generators: minimal,
        }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Exponent of the pure-power generator on `axis`, if any.
    pub fn pure_power(&self, axis: usize) -> Option<u32> {
        self.generators
            .iter()
            .find(|g| g.pure_axis() == Some(axis))
            .map(|g| g.0[axis])
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}
