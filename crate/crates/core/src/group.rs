//! Finite abelian groups `Z/n_1 × … × Z/n_r` and their characters.
//!
//! Elements are numbered by their residue vectors in lexicographic order
//! (last factor fastest), so index 0 is always the identity. Characters
//! reuse the same numbering: the character with residue vector `c` is
//! `χ_c(g) = ∏_t ζ_{n_t}^{c_t g_t}`. The map `g ↦ χ_g` is the fixed
//! isomorphism `G → Ĝ` used throughout the crate, so "character `i`" and
//! "element `i`" share an index.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

impl AbelianGroup {
    /// Group from cyclic factor orders; factors equal to 1 are dropped.
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::Group("factor of order 0".into()));
        }
        Ok(AbelianGroup { factors: factors.into_iter().filter(|&n| n > 1).collect() })
    }

    pub fn cyclic(n: u32) -> Self {
        Self::new(vec![n]).expect("positive cyclic order")
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    /// Parse a descriptor such as `Z4`, `Z2xZ2`, `Z/3`, `Z1` or the empty string.
    pub fn parse(desc: &str) -> Result<Self> {
        let desc = desc.trim();
        if desc.is_empty() {
            return Ok(Self::trivial());
        }
        let mut factors = Vec::new();
        for part in desc.split(['x', 'X', '*']) {
            let p = part.trim();
            let digits = p
                .strip_prefix("Z/")
                .or_else(|| p.strip_prefix('Z'))
                .ok_or_else(|| Error::Group(format!("expected factor like Z4, got {p:?}")))?;
            let n: u32 = digits
                .trim()
                .parse()
                .map_err(|_| Error::Group(format!("bad factor order in {p:?}")))?;
            factors.push(n);
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).product()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u32 {
        self.factors.iter().fold(1, |a, &b| a.lcm(&b))
    }

    pub fn is_cyclic(&self) -> bool {
        self.exponent() as usize == self.order()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn residues(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.factors.len()];
        for (t, &n) in self.factors.iter().enumerate().rev() {
            out[t] = (idx % n as usize) as u32;
            idx /= n as usize;
        }
        out
    }

    pub fn index(&self, residues: &[u32]) -> usize {
        self.factors
            .iter()
            .zip(residues)
            .fold(0, |acc, (&n, &r)| acc * n as usize + (r % n) as usize)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.residues(a), self.residues(b));
        let r: Vec<u32> = ra.iter().zip(&rb).map(|(x, y)| x + y).collect();
        self.index(&r)
    }

    pub fn inv(&self, a: usize) -> usize {
        let r: Vec<u32> = self
            .residues(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        self.index(&r)
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let r: Vec<u32> = self
            .residues(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &n)| (x as i64 * e).rem_euclid(n as i64) as u32)
            .collect();
        self.index(&r)
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.residues(a)
            .iter()
            .zip(&self.factors)
            .fold(1, |acc, (&x, &n)| acc.lcm(&(n / x.gcd(&n))))
    }

    /// `χ_chi(g) = exp(2πi · e / exponent)`; returns `e` in `[0, exponent)`.
    pub fn character_exponent(&self, chi: usize, g: usize) -> u32 {
        let e = self.exponent() as u64;
        let (c, x) = (self.residues(chi), self.residues(g));
        let s: u64 = self
            .factors
            .iter()
            .enumerate()
            .map(|(t, &n)| c[t] as u64 * x[t] as u64 * (e / n as u64))
            .sum();
        (s % e) as u32
    }

    /// The character value `χ_chi(g)`.
    pub fn character(&self, chi: usize, g: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.exponent(), self.character_exponent(chi, g) as i64)
    }

    /// Human-readable element name: `e`, `g`, `g^2` for cyclic groups,
    /// `g1^a*g2^b` otherwise.
    pub fn element_name(&self, idx: usize) -> String {
        if idx == 0 {
            return "e".into();
        }
        let r = self.residues(idx);
        let parts: Vec<String> = r
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(t, &x)| {
                let base = if self.factors.len() == 1 { "g".to_string() } else { format!("g{}", t + 1) };
                if x == 1 {
                    base
                } else {
                    format!("{base}^{x}")
                }
            })
            .collect();
        parts.join("*")
    }

    /// Inverse of [`element_name`](Self::element_name); also accepts `1` and `ε` for the identity.
    pub fn parse_element(&self, name: &str) -> Result<usize> {
        let name = name.trim();
        if matches!(name, "e" | "1" | "ε" | "id") {
            return Ok(0);
        }
        (0..self.order())
            .find(|&i| self.element_name(i) == name)
            .ok_or_else(|| Error::Parse(format!("unknown element {name:?} of {self}")))
    }

    /// Indices of all elements, identity first.
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Indices of all characters, trivial character first.
    pub fn characters(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// `Σ_g χ(g)`, which is `|G|` for the trivial character and 0 otherwise.
    pub fn orthogonality_sum(&self, chi: usize) -> Cyclotomic {
        self.elements().fold(Cyclotomic::zero(), |acc, g| acc + self.character(chi, g))
    }

    /// The identification `G → Ĝ`: element `i` goes to character `i`. The
    /// `t`-th canonical generator maps to the character that is `ζ_{n_t}`
    /// on it and 1 on the other generators.
    pub fn dual_iso(&self, g: usize) -> usize {
        g
    }

    /// Elements that generate the whole group (only meaningful when cyclic).
    pub fn generators(&self) -> Vec<usize> {
        let n = self.order() as u32;
        self.elements().filter(|&a| self.element_order(a) == n).collect()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl TryFrom<String> for AbelianGroup {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Self::parse(&s)
    }
}

impl From<AbelianGroup> for String {
    fn from(g: AbelianGroup) -> String {
        g.to_string()
    }
}
