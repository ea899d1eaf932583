//! Finite fields and their dictionary with `π`.
//!
//! Going from a field to `π`: on `F_q ∖ {0, 1}` put `π(x) = (1 − x)⁻¹` and
//! transport it to `Z/(q−1)` along `g^j ↔ γ^j` for a fixed primitive
//! element `γ`. Going back: given `π` with distinguished element `ω`,
//! define addition on `G ∪ {0}` by `a + b = π(ω b a⁻¹)⁻¹ a`, with
//! `a + b = 0` when `b = ωa`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::pi::Pi;

/// `(p, n)` with `q = p^n`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut n) = (q, 0);
    while r % p == 0 {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}

/// Conway polynomials (coefficients low degree first, monic) for small
/// non-prime fields.
fn conway(q: u32) -> Option<Vec<u32>> {
    Some(match q {
        4 => vec![1, 1, 1],
        8 => vec![1, 1, 0, 1],
        9 => vec![2, 2, 1],
        16 => vec![1, 1, 0, 0, 1],
        25 => vec![2, 4, 1],
        27 => vec![1, 2, 0, 1],
        32 => vec![1, 0, 1, 0, 0, 1],
        49 => vec![3, 6, 1],
        _ => return None,
    })
}

/// `F_q` with elements encoded as integers `Σ d_i p^i` (the coefficient
/// vector of a polynomial in the adjoined root).
#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<Vec<u32>>,
    mul: Vec<Vec<u32>>,
}

impl GaloisField {
    pub fn new(q: u32) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
        if n == 1 {
            return Ok(Self::with_modulus(p, n, vec![0, 1]));
        }
        if let Some(m) = conway(q) {
            return Ok(Self::with_modulus(p, n, m));
        }
        // Least primitive polynomial in the order of its encoded lower coefficients.
        for code in 1..q {
            let mut m: Vec<u32> = (0..n).map(|i| code / p.pow(i) % p).collect();
            m.push(1);
            if m[0] == 0 {
                continue;
            }
            let f = Self::with_modulus(p, n, m);
            if f.multiplicative_order(p) == q - 1 {
                return Ok(f);
            }
        }
        Err(Error::Field(format!("no primitive polynomial found for {q}")))
    }

    fn with_modulus(p: u32, n: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(n);
        let digits = |x: u32| -> Vec<u32> { (0..n).map(|i| x / p.pow(i) % p).collect() };
        let encode = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * p + x) };
        let add = (0..q)
            .map(|a| {
                let da = digits(a);
                (0..q)
                    .map(|b| {
                        let s: Vec<u32> = da.iter().zip(digits(b)).map(|(x, y)| (x + y) % p).collect();
                        encode(&s)
                    })
                    .collect()
            })
            .collect();
        let mul = (0..q)
            .map(|a| {
                let da = digits(a);
                (0..q)
                    .map(|b| {
                        let db = digits(b);
                        let mut prod = vec![0u32; 2 * n as usize];
                        for (i, x) in da.iter().enumerate() {
                            for (j, y) in db.iter().enumerate() {
                                prod[i + j] = (prod[i + j] + x * y) % p;
                            }
                        }
                        // reduce modulo the monic modulus of degree n
                        for d in (n as usize..prod.len()).rev() {
                            let c = prod[d];
                            if c != 0 {
                                for t in 0..=n as usize {
                                    let idx = d - n as usize + t;
                                    prod[idx] = (prod[idx] + (p - c) * modulus[t] % p) % p;
                                }
                            }
                        }
                        encode(&prod[..n as usize])
                    })
                    .collect()
            })
            .collect();
        GaloisField { p, q, modulus, add, mul }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Defining polynomial, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize][b as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize][b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse exists")
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    pub fn multiplicative_order(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    /// Smallest element (by encoding) generating the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        (1..self.q)
            .find(|&a| self.multiplicative_order(a) == self.q - 1)
            .expect("finite field has a primitive element")
    }

    /// `γ^j` for `j = 0..q-1`.
    pub fn powers(&self, gamma: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.q as usize - 1);
        let mut x = 1;
        for _ in 0..self.q - 1 {
            out.push(x);
            x = self.mul(x, gamma);
        }
        out
    }
}

/// The group `Z/(q−1)` and the `π` induced by `x ↦ (1 − x)⁻¹` on `F_q`.
pub fn pi_from_field(q: u32) -> Result<(AbelianGroup, Pi)> {
    let f = GaloisField::new(q)?;
    let group = AbelianGroup::cyclic(q - 1);
    let pw = f.powers(f.primitive_element());
    let log = |x: u32| pw.iter().position(|&y| y == x).expect("nonzero element is a power");
    let mut map = vec![0usize; (q - 1) as usize];
    for (j, slot) in map.iter_mut().enumerate().skip(1) {
        let one_minus = f.add(1, f.neg(pw[j]));
        *slot = log(f.inv(one_minus).expect("1 - x is nonzero for x != 1"));
    }
    let pi = Pi::new(group.clone(), map)?;
    Ok((group, pi))
}

/// A field on `G ∪ {0}`; index 0 is the zero element and `1 + g` stands for `g ∈ G`.
#[derive(Clone, Debug, Serialize)]
pub struct FieldTable {
    pub group: AbelianGroup,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl FieldTable {
    pub fn size(&self) -> usize {
        self.add.len()
    }

    /// Every field axiom, checked over all elements; the first failure is reported.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let n = self.size();
        let (a, m) = (&self.add, &self.mul);
        for x in 0..n {
            if a[0][x] != x || a[x][0] != x {
                return Err(format!("0 is not an additive identity at {x}"));
            }
            if m[1][x] != x || m[x][1] != x {
                return Err(format!("1 is not a multiplicative identity at {x}"));
            }
            if !(0..n).any(|y| a[x][y] == 0) {
                return Err(format!("{x} has no additive inverse"));
            }
            if x != 0 && !(0..n).any(|y| m[x][y] == 1) {
                return Err(format!("{x} has no multiplicative inverse"));
            }
            for y in 0..n {
                if a[x][y] != a[y][x] || m[x][y] != m[y][x] {
                    return Err(format!("not commutative at ({x},{y})"));
                }
                for z in 0..n {
                    if a[a[x][y]][z] != a[x][a[y][z]] {
                        return Err(format!("addition not associative at ({x},{y},{z})"));
                    }
                    if m[m[x][y]][z] != m[x][m[y][z]] {
                        return Err(format!("multiplication not associative at ({x},{y},{z})"));
                    }
                    if m[x][a[y][z]] != a[m[x][y]][m[x][z]] {
                        return Err(format!("not distributive at ({x},{y},{z})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Rebuild the field whose multiplicative group is `G` from a valid `π`.
pub fn field_from_pi(pi: &Pi) -> Result<FieldTable> {
    let g = pi.group();
    let n = g.order() + 1;
    let w = pi.omega();
    let mut add = vec![vec![0usize; n]; n];
    let mut mul = vec![vec![0usize; n]; n];
    for x in 0..n {
        add[0][x] = x;
        add[x][0] = x;
    }
    for a in g.elements() {
        for b in g.elements() {
            mul[a + 1][b + 1] = g.mul(a, b) + 1;
            let t = g.mul(g.mul(w, b), g.inv(a));
            add[a + 1][b + 1] = if t == 0 { 0 } else { g.mul(g.inv(pi.apply(t)), a) + 1 };
        }
    }
    let table = FieldTable { group: g.clone(), add, mul };
    table.check_axioms().map_err(Error::Field)?;
    Ok(table)
}

/// Is the table isomorphic to `F_q`? Tries every generator `g'` of `G`
/// and checks that `g'^j ↦ γ^j` respects addition.
pub fn is_isomorphic(table: &FieldTable, field: &GaloisField) -> bool {
    if table.size() != field.order() as usize {
        return false;
    }
    let g = &table.group;
    let pw = field.powers(field.primitive_element());
    if g.order() == 1 {
        return field.add(1, 1) == 0 && table.add[1][1] == 0;
    }
    g.generators().into_iter().any(|gen| {
        let mut phi = vec![0u32; table.size()];
        for (j, &y) in pw.iter().enumerate() {
            phi[g.pow(gen, j as i64) + 1] = y;
        }
        (0..table.size()).all(|x| (0..table.size()).all(|y| phi[table.add[x][y]] == field.add(phi[x], phi[y])))
    })
}

/// Fusion parameters read off the affine group `F_q ⋊ F_q^*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AffineFusion {
    pub group_order: usize,
    pub conjugacy_classes: usize,
    pub linear_irreps: usize,
    pub big_irrep_dim: usize,
    pub k: usize,
}

/// Count classes of the affine group and derive `(|G|, #linear, dim, k)`.
pub fn affine_group_fusion(q: u32) -> Result<AffineFusion> {
    if q < 3 {
        return Err(Error::Field(format!("affine group fusion needs q >= 3, got {q}")));
    }
    let f = GaloisField::new(q)?;
    let qn = q as usize;
    // (a, b) acts by x ↦ a x + b; index = (a - 1)·q + b.
    let idx = |a: u32, b: u32| (a as usize - 1) * qn + b as usize;
    let elems: Vec<(u32, u32)> = (1..q).flat_map(|a| (0..q).map(move |b| (a, b))).collect();
    // (a,b)∘(c,d): x ↦ a(cx + d) + b
    let compose = |(a, b): (u32, u32), (c, d): (u32, u32)| (f.mul(a, c), f.add(f.mul(a, d), b));
    let inverse = |(a, b): (u32, u32)| {
        let ai = f.inv(a).expect("unit");
        (ai, f.neg(f.mul(ai, b)))
    };
    let order = elems.len();

    let mut class_of = vec![usize::MAX; order];
    let mut classes = 0;
    for &x in &elems {
        if class_of[idx(x.0, x.1)] != usize::MAX {
            continue;
        }
        for &h in &elems {
            let c = compose(compose(h, x), inverse(h));
            class_of[idx(c.0, c.1)] = classes;
        }
        classes += 1;
    }

    let mut in_derived = vec![false; order];
    let mut derived = vec![(1u32, 0u32)];
    in_derived[idx(1, 0)] = true;
    for &x in &elems {
        for &y in &elems {
            let c = compose(compose(x, y), compose(inverse(x), inverse(y)));
            if !in_derived[idx(c.0, c.1)] {
                in_derived[idx(c.0, c.1)] = true;
                derived.push(c);
            }
        }
    }
    let mut i = 0;
    while i < derived.len() {
        for j in 0..derived.len() {
            let c = compose(derived[i], derived[j]);
            if !in_derived[idx(c.0, c.1)] {
                in_derived[idx(c.0, c.1)] = true;
                derived.push(c);
            }
        }
        i += 1;
    }

    let linear = order / derived.len();
    if classes != linear + 1 {
        return Err(Error::Field(format!("expected one nonlinear irrep, found {}", classes - linear)));
    }
    let rest = order - linear;
    let dim = (1..=rest).find(|d| d * d >= rest).unwrap_or(0);
    if dim * dim != rest {
        return Err(Error::Field(format!("{rest} is not a square dimension sum")));
    }
    // dim² = dim(m ⊗ m) = #linear + k·dim
    let k = (dim * dim - linear) / dim;
    Ok(AffineFusion { group_order: order, conjugacy_classes: classes, linear_irreps: linear, big_irrep_dim: dim, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi::find_all_pi;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn table_polynomials_are_primitive() {
        for q in [4, 8, 9, 16, 25, 27, 32, 49] {
            let f = GaloisField::new(q).unwrap();
            assert_eq!(f.multiplicative_order(f.characteristic()), q - 1, "q = {q}");
        }
        // fallback search
        let f = GaloisField::new(81).unwrap();
        assert_eq!(f.multiplicative_order(3), 80);
    }

    #[test]
    fn small_fields_from_pi() {
        let (g, pi) = pi_from_field(3).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(pi.cycle_notation(), "()");
        let (g, pi) = pi_from_field(4).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(pi.cycle_notation(), "()");
        let (_, pi) = pi_from_field(5).unwrap();
        assert_eq!(pi.cycle_notation(), "(g g^2 g^3)");
        assert!(pi_from_field(6).is_err());
    }

    #[test]
    fn omega_is_additive_negation() {
        for q in [3, 4, 5, 7, 8, 9] {
            let (_, pi) = pi_from_field(q).unwrap();
            let t = field_from_pi(&pi).unwrap();
            for a in 1..t.size() {
                assert_eq!(t.add[a][t.mul[pi.omega() + 1][a]], 0);
            }
        }
    }

    #[test]
    fn every_searched_pi_gives_a_field() {
        for n in [6u32, 7, 8] {
            for pi in find_all_pi(&AbelianGroup::cyclic(n)) {
                let t = field_from_pi(&pi).unwrap();
                assert!(is_isomorphic(&t, &GaloisField::new(n + 1).unwrap()));
            }
        }
    }

    #[test]
    fn affine_counts() {
        let a = affine_group_fusion(4).unwrap();
        assert_eq!((a.group_order, a.linear_irreps, a.big_irrep_dim, a.k), (12, 3, 3, 2));
        assert!(affine_group_fusion(6).is_err());
    }
}
