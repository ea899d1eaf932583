//! Hexagons composed directly from labelled trees.
//!
//! For objects `x, y, z` and a summand `w`, both sides map the basis of
//! `hom(w, (x⊗y)⊗z)` to the basis of `hom(w, y⊗(z⊗x))`:
//!
//! ```text
//! A:  (xy)z --F--> x(yz) --c(x, yz)--> (yz)x --F--> y(zx)
//! B:  (xy)z --c(x,y)⊗1--> (yx)z --F--> y(xz) --1⊗c(x,z)--> y(zx)
//! ```
//!
//! A tree `(e, v₁, v₂)` has internal edge `e`, lower vertex `v₁ : e → x⊗y`
//! and upper vertex `v₂ : w → e⊗z`. The braiding acts on a single vertex,
//! and associator entries come from the pentagon oracle.

use std::time::Instant;

use super::CommutingMaps;
use crate::associator::NearGroupData;
use crate::cyclotomic::Cyclotomic;
use crate::matrix::Matrix;
use crate::pentagon::oracle::Fusion;
use crate::pentagon::{Failure, FamilyReport, Label, VerificationReport};

type Tree = (Label, usize, usize);

/// `c(a,b)` on `hom(c, a⊗b) → hom(c, b⊗a)`, entry `[new, old]`.
fn braid(s: &CommutingMaps, a: Label, b: Label, c: Label, old: usize, new: usize) -> Cyclotomic {
    use Label::*;
    match (a, b, c) {
        (G(g), G(h), _) => s.sigma0[g][h].clone(),
        (G(g), M, _) => s.sigma1[g].clone(),
        (M, G(g), _) => s.sigma2[g].clone(),
        (M, M, G(g)) => s.sigma3[g].clone(),
        (M, M, M) => s.sigma4.get(new, old).clone(),
    }
}

pub(crate) fn left_basis(fu: &Fusion, x: Label, y: Label, z: Label, w: Label) -> Vec<Tree> {
    let mut out = Vec::new();
    for e in fu.simples() {
        for v1 in 0..fu.mult(x, y, e) {
            for v2 in 0..fu.mult(e, z, w) {
                out.push((e, v1, v2));
            }
        }
    }
    out
}

/// Both sides of the hexagon for braiding `x` past `y⊗z` on the summand `w`.
pub fn hexagon_sides(data: &NearGroupData, s: &CommutingMaps, word: [Label; 3], w: Label) -> (Matrix, Matrix) {
    let fu = Fusion { d: data };
    let [x, y, z] = word;
    let source = left_basis(&fu, x, y, z, w);
    let target = fu.right_basis(y, z, x, w);
    let pos = |t: &Tree| target.iter().position(|u| u == t).expect("target basis");
    let mut a_side = Matrix::zeros(target.len(), source.len());
    let mut b_side = Matrix::zeros(target.len(), source.len());
    let add = |m: &mut Matrix, row: usize, col: usize, v: &Cyclotomic| {
        let sum = m.get(row, col) + v;
        m.set(row, col, sum);
    };

    for (col, &(e, v1, v2)) in source.iter().enumerate() {
        for (f1, n1, n2) in fu.right_basis(x, y, z, w) {
            let a1 = fu.entry([x, y, z, w], (e, v1, v2), (f1, n1, n2));
            if a1.is_zero() {
                continue;
            }
            for n2b in 0..fu.mult(f1, x, w) {
                let a2 = &a1 * &braid(s, x, f1, w, n2, n2b);
                if a2.is_zero() {
                    continue;
                }
                for out in fu.right_basis(y, z, x, w) {
                    let a3 = fu.entry([y, z, x, w], (f1, n1, n2b), out);
                    if !a3.is_zero() {
                        add(&mut a_side, pos(&out), col, &(&a2 * &a3));
                    }
                }
            }
        }

        for v1b in 0..fu.mult(y, x, e) {
            let b1 = braid(s, x, y, e, v1, v1b);
            if b1.is_zero() {
                continue;
            }
            for (f, m1, m2) in fu.right_basis(y, x, z, w) {
                let b2 = &b1 * &fu.entry([y, x, z, w], (e, v1b, v2), (f, m1, m2));
                if b2.is_zero() {
                    continue;
                }
                for m1b in 0..fu.mult(z, x, f) {
                    let b3 = braid(s, x, z, f, m1, m1b);
                    if !b3.is_zero() {
                        add(&mut b_side, pos(&(f, m1b, m2)), col, &(&b2 * &b3));
                    }
                }
            }
        }
    }
    (a_side, b_side)
}

/// The family name of a word, e.g. `mma/b` for `(m, m, a)` on a group summand.
pub fn word_family(word: [Label; 3], w: Label) -> String {
    let letters = ['a', 'b', 'c'];
    let mut next = 0;
    let mut name: String = word
        .iter()
        .map(|l| match l {
            Label::M => 'm',
            Label::G(_) => {
                next += 1;
                letters[next - 1]
            }
        })
        .collect();
    name.push('/');
    match w {
        Label::M => name.push('m'),
        Label::G(_) if next == 3 => name.push_str("abc"),
        Label::G(_) if word == [Label::M; 3] => name.push('g'),
        Label::G(_) => name.push(letters[next]),
    }
    name
}

/// Run the hexagon for one word and summand.
pub fn hexagon_oracle(data: &NearGroupData, s: &CommutingMaps, word: [Label; 3], w: Label) -> FamilyReport {
    let (a, b) = hexagon_sides(data, s, word, w);
    let name = |l: Label| match l {
        Label::M => "m".to_string(),
        Label::G(g) => data.group().element_name(g),
    };
    let eq = format!("hexagon {},{},{}/{}", name(word[0]), name(word[1]), name(word[2]), name(w));
    let failures = a
        .diff_entries(&b)
        .into_iter()
        .map(|(i, j, l, r)| Failure {
            eq: eq.clone(),
            indices: [("row".to_string(), i), ("col".to_string(), j)].into_iter().collect(),
            lhs: l,
            rhs: r,
        })
        .collect();
    FamilyReport::new(eq, a.rows() * a.cols(), failures)
}

/// Every nonempty hexagon.
pub fn hexagon_oracle_report(data: &NearGroupData, s: &CommutingMaps) -> VerificationReport {
    let start = Instant::now();
    let fu = Fusion { d: data };
    let simples = fu.simples();
    let mut families = Vec::new();
    for &x in &simples {
        for &y in &simples {
            for &z in &simples {
                for &w in &simples {
                    let r = hexagon_oracle(data, s, [x, y, z], w);
                    if r.instances > 0 {
                        families.push(r);
                    }
                }
            }
        }
    }
    VerificationReport { families, elapsed_ms: start.elapsed().as_millis() }
}
