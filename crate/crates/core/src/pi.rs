//! The permutation `π` on the nonidentity elements of `G`.
//!
//! A valid `π` satisfies
//! 1. `π³ = id`,
//! 2. `π(x)⁻¹ = π⁻¹(x⁻¹)`,
//! 3. `π(st) = π(t)·π(π(s)⁻¹·π(t⁻¹))` whenever `s ≠ t⁻¹`.
//!
//! Such a `π` exists exactly when `G` is the multiplicative group of a
//! finite field; see [`crate::field`] for the dictionary. Internally `π` is
//! stored on all of `G` with `π(ε) = ε`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::AbelianGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PiRepr", into = "PiRepr")]
pub struct Pi {
    group: AbelianGroup,
    map: Vec<usize>,
    inv: Vec<usize>,
    omega: usize,
}

#[derive(Serialize, Deserialize)]
struct PiRepr {
    group: AbelianGroup,
    cycles: String,
}

impl TryFrom<PiRepr> for Pi {
    type Error = Error;
    fn try_from(r: PiRepr) -> Result<Self> {
        Pi::parse_cycles(&r.group, &r.cycles)
    }
}

impl From<Pi> for PiRepr {
    fn from(p: Pi) -> Self {
        PiRepr { cycles: p.cycle_notation(), group: p.group }
    }
}

/// Which defining property a candidate map breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PiViolation {
    NotBijection,
    MovesIdentity,
    NotOrderThree(usize),
    InverseRule(usize),
    ProductRule(usize, usize),
    OmegaNotConstant(usize, usize),
}

/// Check the three defining properties plus constancy of `s·π(s)·π⁻¹(s)`.
pub fn violations(group: &AbelianGroup, map: &[usize]) -> Vec<PiViolation> {
    let n = group.order();
    let mut out = Vec::new();
    if map.len() != n || map.iter().any(|&x| x >= n) {
        return vec![PiViolation::NotBijection];
    }
    let mut inv = vec![usize::MAX; n];
    for (x, &y) in map.iter().enumerate() {
        if inv[y] != usize::MAX {
            return vec![PiViolation::NotBijection];
        }
        inv[y] = x;
    }
    if map[0] != 0 {
        out.push(PiViolation::MovesIdentity);
    }
    for x in 1..n {
        if map[map[map[x]]] != x {
            out.push(PiViolation::NotOrderThree(x));
        }
        if group.inv(map[x]) != inv[group.inv(x)] {
            out.push(PiViolation::InverseRule(x));
        }
    }
    for s in 1..n {
        for t in 1..n {
            if s != group.inv(t) && !product_rule_holds(group, map, s, t) {
                out.push(PiViolation::ProductRule(s, t));
            }
        }
    }
    if out.is_empty() && n > 1 {
        let w = |s: usize| group.mul(group.mul(s, map[s]), inv[s]);
        let w1 = w(1);
        for s in 2..n {
            if w(s) != w1 {
                out.push(PiViolation::OmegaNotConstant(1, s));
            }
        }
    }
    out
}

fn product_rule_holds(group: &AbelianGroup, map: &[usize], s: usize, t: usize) -> bool {
    let u = group.mul(group.inv(map[s]), map[group.inv(t)]);
    map[group.mul(s, t)] == group.mul(map[t], map[u])
}

impl Pi {
    /// Validate a full map on `G` (with `map[0] = 0`).
    pub fn new(group: AbelianGroup, map: Vec<usize>) -> Result<Self> {
        let v = violations(&group, &map);
        if let Some(first) = v.first() {
            return Err(Error::Pi(format!("{first:?} ({} violations)", v.len())));
        }
        let mut inv = vec![0; map.len()];
        for (x, &y) in map.iter().enumerate() {
            inv[y] = x;
        }
        let omega = if map.len() > 1 { group.mul(group.mul(1, map[1]), inv[1]) } else { 0 };
        if group.mul(omega, omega) != 0 {
            return Err(Error::Pi("omega squared is not the identity".into()));
        }
        Ok(Pi { group, map, inv, omega })
    }

    pub fn identity(group: AbelianGroup) -> Result<Self> {
        let map = group.elements().collect();
        Self::new(group, map)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn apply_inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// The element `ω = s·π(s)·π⁻¹(s)`, the same for every nonidentity `s`.
    pub fn omega(&self) -> usize {
        self.omega
    }

    /// Disjoint-cycle notation over element names, e.g. `(g g^2 g^3)`; `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.map.len()];
        let mut out = String::new();
        for x in 1..self.map.len() {
            if seen[x] || self.map[x] == x {
                continue;
            }
            let cycle = [x, self.map[x], self.map[self.map[x]]];
            for &c in &cycle {
                seen[c] = true;
            }
            let names: Vec<String> = cycle.iter().map(|&c| self.group.element_name(c)).collect();
            out.push_str(&format!("({})", names.join(" ")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }

    /// Parse disjoint-cycle notation; omitted elements are fixed.
    pub fn parse_cycles(group: &AbelianGroup, s: &str) -> Result<Self> {
        let mut map: Vec<usize> = group.elements().collect();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in cycle notation {s:?}")))?;
            let end = body.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let elems = body[..end]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| group.parse_element(t))
                .collect::<Result<Vec<_>>>()?;
            for (i, &x) in elems.iter().enumerate() {
                map[x] = elems[(i + 1) % elems.len()];
            }
            rest = body[end + 1..].trim_start();
        }
        Self::new(group.clone(), map)
    }
}

impl fmt::Display for Pi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())
    }
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    group: &'a AbelianGroup,
    map: Vec<usize>,
    inv: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(group: &'a AbelianGroup) -> Self {
        let n = group.order();
        let mut map = vec![UNSET; n];
        let mut inv = vec![UNSET; n];
        map[0] = 0;
        inv[0] = 0;
        Search { group, map, inv }
    }

    /// Set the arrows of `cycle` and of its mirror cycle forced by the
    /// inverse rule. Returns the list of newly set sources, or `None` on conflict.
    fn assign(&mut self, cycle: &[usize]) -> Option<Vec<usize>> {
        let g = self.group;
        let len = cycle.len();
        let mut arrows: Vec<(usize, usize)> = (0..len).map(|i| (cycle[i], cycle[(i + 1) % len])).collect();
        // π(x) = y forces π(y⁻¹) = x⁻¹.
        let mirror: Vec<(usize, usize)> = arrows.iter().map(|&(x, y)| (g.inv(y), g.inv(x))).collect();
        arrows.extend(mirror);
        let mut set = Vec::new();
        for (x, y) in arrows {
            if self.map[x] == y {
                continue;
            }
            if self.map[x] != UNSET || self.inv[y] != UNSET {
                self.undo(&set);
                return None;
            }
            self.map[x] = y;
            self.inv[y] = x;
            set.push(x);
        }
        Some(set)
    }

    fn undo(&mut self, set: &[usize]) {
        for &x in set {
            self.inv[self.map[x]] = UNSET;
            self.map[x] = UNSET;
        }
    }

    fn consistent(&self) -> bool {
        let g = self.group;
        let n = g.order();
        let m = &self.map;
        for s in 1..n {
            if m[s] == UNSET {
                continue;
            }
            for t in 1..n {
                if s == g.inv(t) || m[t] == UNSET {
                    continue;
                }
                let ti = m[g.inv(t)];
                let st = m[g.mul(s, t)];
                if ti == UNSET || st == UNSET {
                    continue;
                }
                let u = m[g.mul(g.inv(m[s]), ti)];
                if u != UNSET && st != g.mul(m[t], u) {
                    return false;
                }
            }
        }
        true
    }

    fn options(&self, x: usize) -> Vec<Vec<usize>> {
        let n = self.group.order();
        let mut out = vec![vec![x]];
        for y in 1..n {
            for z in 1..n {
                if y != x && z != x && y != z && self.map[y] == UNSET && self.map[z] == UNSET {
                    out.push(vec![x, y, z]);
                }
            }
        }
        out
    }

    fn run(&mut self, out: &mut Vec<Vec<usize>>) {
        let Some(x) = (1..self.map.len()).find(|&x| self.map[x] == UNSET) else {
            if violations(self.group, &self.map).is_empty() {
                out.push(self.map.clone());
            }
            return;
        };
        for cycle in self.options(x) {
            if let Some(set) = self.assign(&cycle) {
                if self.consistent() {
                    self.run(out);
                }
                self.undo(&set);
            }
        }
    }
}

/// All valid `π` on `G`, sorted by their maps.
pub fn find_all_pi(group: &AbelianGroup) -> Vec<Pi> {
    let n = group.order();
    if n <= 1 {
        return vec![Pi::identity(group.clone()).expect("trivial π is valid")];
    }
    let top = Search::new(group).options(1);
    let mut maps: Vec<Vec<usize>> = top
        .par_iter()
        .flat_map_iter(|cycle| {
            let mut s = Search::new(group);
            let mut out = Vec::new();
            if s.assign(cycle).is_some() && s.consistent() {
                s.run(&mut out);
            }
            out
        })
        .collect();
    maps.sort();
    maps.dedup();
    maps.into_iter()
        .map(|m| Pi::new(group.clone(), m).expect("search returns valid maps"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> AbelianGroup {
        AbelianGroup::cyclic(n)
    }

    #[test]
    fn z2_has_only_identity() {
        let all = find_all_pi(&z(2));
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].cycle_notation(), "()");
        assert_eq!(all[0].omega(), 1);
    }

    #[test]
    fn z3_identity_has_trivial_omega() {
        let p = Pi::identity(z(3)).unwrap();
        assert_eq!(p.omega(), 0);
        assert!(find_all_pi(&z(3)).contains(&p));
    }

    #[test]
    fn z4_three_cycle_reading() {
        let g = z(4);
        let good = Pi::parse_cycles(&g, "(g g^2 g^3)").unwrap();
        assert_eq!(good.omega(), 2);
        assert!(find_all_pi(&g).contains(&good));
        // The reading "(g g^1 g^3)" repeats g and is not a permutation.
        assert!(Pi::parse_cycles(&g, "(g g g^3)").is_err());
        // The opposite 3-cycle comes from the other generator of F5^* and is valid too.
        let other = Pi::parse_cycles(&g, "(g g^3 g^2)").unwrap();
        assert_eq!(find_all_pi(&g), vec![good, other]);
    }

    #[test]
    fn z5_is_empty_by_brute_force() {
        // independent oracle: test every permutation of the 4 nonidentity elements
        let g = z(5);
        let mut count = 0;
        let elems = [1usize, 2, 3, 4];
        let mut perm = elems;
        permute(&mut perm, 0, &mut |p| {
            let mut map = vec![0];
            map.extend_from_slice(p);
            if violations(&g, &map).is_empty() {
                count += 1;
            }
        });
        assert_eq!(count, 0);
        assert!(find_all_pi(&g).is_empty());
    }

    fn permute(a: &mut [usize; 4], k: usize, f: &mut impl FnMut(&[usize])) {
        if k == a.len() {
            f(a);
            return;
        }
        for i in k..a.len() {
            a.swap(k, i);
            permute(a, k + 1, f);
            a.swap(k, i);
        }
    }

    #[test]
    fn cycle_notation_round_trip() {
        for p in find_all_pi(&z(7)) {
            assert_eq!(Pi::parse_cycles(p.group(), &p.cycle_notation()).unwrap(), p);
        }
    }

    #[test]
    fn serde_round_trip() {
        let p = Pi::parse_cycles(&z(4), "(g g^2 g^3)").unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"group":"Z4","cycles":"(g g^2 g^3)"}"#);
        assert_eq!(serde_json::from_str::<Pi>(&s).unwrap(), p);
    }
}
