//! Pentagon equations built directly from labelled trees.
//!
//! A basis vector of `hom(d, (a⊗b)⊗c)` is a triple `(e, μ₁, μ₂)` with
//! `μ₁ : e → a⊗b` and `μ₂ : d → e⊗c`; on the other side `(f, ν₁, ν₂)` with
//! `ν₁ : f → b⊗c` and `ν₂ : d → a⊗f`. The associator `F(a,b,c;d)` sends a
//! left vector to `Σ F[right, left]·right`. Vertex spaces are 1-dimensional
//! except `hom(m, m⊗m)`, whose basis is indexed `0..k` (index `i` in the
//! tensors is stored as `i − 1`).
//!
//! Placement of the tensors:
//!
//! | `(a,b,c;d)` | left      | right     | entry              |
//! |-------------|-----------|-----------|--------------------|
//! | `(g,m,m;m)` | `(m,0,j)` | `(m,i,0)` | `γ₁(g)[i,j]`       |
//! | `(m,g,m;m)` | `(m,0,j)` | `(m,0,i)` | `γ₂(g)[i,j]`       |
//! | `(m,m,g;m)` | `(m,j,0)` | `(m,0,i)` | `γ₃(g)[i,j]`       |
//! | `(m,m,m;g)` | `(m,j,0)` | `(m,i,0)` | `λ(g)[i,j]`        |
//! | `(m,m,m;m)` | `(h,0,0)`, `(m,s,r)` | `(g,0,0)`, `(m,j,i)` | `μ` |
//!
//! Every other associator is `1`.

use std::time::Instant;

use super::{Failure, FamilyReport, Label};
use crate::associator::NearGroupData;
use crate::cyclotomic::Cyclotomic;
use crate::matrix::Matrix;

pub(crate) type Vertex = (Label, usize, usize);

pub(crate) struct Fusion<'a> {
    pub(crate) d: &'a NearGroupData,
}

impl Fusion<'_> {
    pub(crate) fn k(&self) -> usize {
        self.d.k()
    }

    pub(crate) fn mult(&self, a: Label, b: Label, c: Label) -> usize {
        use Label::*;
        match (a, b) {
            (G(x), G(y)) => (c == G(self.d.group().mul(x, y))) as usize,
            (G(_), M) | (M, G(_)) => (c == M) as usize,
            (M, M) => match c {
                G(_) => 1,
                M => self.k(),
            },
        }
    }

    pub(crate) fn simples(&self) -> Vec<Label> {
        let mut v: Vec<Label> = self.d.group().elements().map(Label::G).collect();
        v.push(Label::M);
        v
    }

    /// Basis of `hom(d, a⊗(b⊗c))`.
    pub(crate) fn right_basis(&self, a: Label, b: Label, c: Label, d: Label) -> Vec<Vertex> {
        let mut out = Vec::new();
        for f in self.simples() {
            for n1 in 0..self.mult(b, c, f) {
                for n2 in 0..self.mult(a, f, d) {
                    out.push((f, n1, n2));
                }
            }
        }
        out
    }

    fn mu_col(&self, (e, m1, m2): Vertex) -> usize {
        let (n, k) = (self.d.group().order(), self.k());
        match e {
            Label::G(h) => h,
            Label::M => n + m2 * k + m1,
        }
    }

    fn mu_row(&self, (f, n1, n2): Vertex) -> usize {
        let (n, k) = (self.d.group().order(), self.k());
        match f {
            Label::G(g) => g,
            Label::M => n + n2 * k + n1,
        }
    }

    /// `F(a,b,c;d)[right, left]` for legal basis vectors.
    pub(crate) fn entry(&self, abcd: [Label; 4], left: Vertex, right: Vertex) -> Cyclotomic {
        use Label::*;
        let d = self.d;
        let [a, b, c, dd] = abcd;
        match (a, b, c, dd) {
            (G(g), M, M, M) => d.gamma1[g].get(right.1, left.2).clone(),
            (M, G(g), M, M) => d.gamma2[g].get(right.2, left.2).clone(),
            (M, M, G(g), M) => d.gamma3[g].get(right.2, left.1).clone(),
            (M, M, M, G(g)) => d.lambda[g].get(right.1, left.1).clone(),
            (M, M, M, M) => {
                let mu = |row: usize, col: usize| {
                    let n = d.group().order();
                    match (row < n, col < n) {
                        (true, true) => d.m_block.get(row, col).clone(),
                        (true, false) => d.r_block.get(row, col - n).clone(),
                        (false, true) => d.c_block.get(row - n, col).clone(),
                        (false, false) => d.n_block.get(row - n, col - n).clone(),
                    }
                };
                mu(self.mu_row(right), self.mu_col(left))
            }
            _ => Cyclotomic::one(),
        }
    }
}

/// Both composites of the pentagon for `word` on `summand`, as matrices from
/// the basis of `hom(e, ((a⊗b)⊗c)⊗d)` to that of `hom(e, a⊗(b⊗(c⊗d)))`.
pub fn pentagon_sides(data: &NearGroupData, word: [Label; 4], summand: Label) -> (Matrix, Matrix) {
    let (p1, p2, _, _) = pentagon_sides_labelled(data, word, summand);
    (p1, p2)
}

/// A basis vector `(x, y, v₁, v₂, v₃)` of a fourfold tree: the two internal
/// edge labels and the three vertex indices.
pub type TreeBasis = (Label, Label, usize, usize, usize);

/// As [`pentagon_sides`], also returning the column basis (fully left
/// bracketed) and the row basis (fully right bracketed).
pub fn pentagon_sides_labelled(data: &NearGroupData, word: [Label; 4], summand: Label) -> (Matrix, Matrix, Vec<TreeBasis>, Vec<TreeBasis>) {
    let fu = Fusion { d: data };
    let [a, b, c, d] = word;
    let e = summand;
    let simples = fu.simples();

    // left: (p, q, α1: p→ab, α2: q→pc, α3: e→qd)
    let mut left = Vec::new();
    for &p in &simples {
        for &q in &simples {
            for a1 in 0..fu.mult(a, b, p) {
                for a2 in 0..fu.mult(p, c, q) {
                    for a3 in 0..fu.mult(q, d, e) {
                        left.push((p, q, a1, a2, a3));
                    }
                }
            }
        }
    }
    // final: (z, w, β1: z→cd, β2: w→bz, β3: e→aw)
    let mut fin = Vec::new();
    for &z in &simples {
        for &w in &simples {
            for b1 in 0..fu.mult(c, d, z) {
                for b2 in 0..fu.mult(b, z, w) {
                    for b3 in 0..fu.mult(a, w, e) {
                        fin.push((z, w, b1, b2, b3));
                    }
                }
            }
        }
    }
    let pos = |t: &(Label, Label, usize, usize, usize)| fin.iter().position(|x| x == t).expect("final basis");

    let mut p1 = Matrix::zeros(fin.len(), left.len());
    let mut p2 = Matrix::zeros(fin.len(), left.len());
    for (col, &(p, q, a1, a2, a3)) in left.iter().enumerate() {
        // two-step path: F(p,c,d;e) then F(a,b,z;e)
        for (z, n1, n2) in fu.right_basis(p, c, d, e) {
            let f1 = fu.entry([p, c, d, e], (q, a2, a3), (z, n1, n2));
            if f1.is_zero() {
                continue;
            }
            for (w, r1, r2) in fu.right_basis(a, b, z, e) {
                let f2 = fu.entry([a, b, z, e], (p, a1, n2), (w, r1, r2));
                if f2.is_zero() {
                    continue;
                }
                let row = pos(&(z, w, n1, r1, r2));
                let v = p1.get(row, col) + &(&f1 * &f2);
                p1.set(row, col, v);
            }
        }
        // three-step path: F(a,b,c;q), F(a,v,d;e), F(b,c,d;w)
        for (v, s1, s2) in fu.right_basis(a, b, c, q) {
            let f1 = fu.entry([a, b, c, q], (p, a1, a2), (v, s1, s2));
            if f1.is_zero() {
                continue;
            }
            for (w, t1, t2) in fu.right_basis(a, v, d, e) {
                let f2 = fu.entry([a, v, d, e], (q, s2, a3), (w, t1, t2));
                if f2.is_zero() {
                    continue;
                }
                let f12 = &f1 * &f2;
                for (z, b1, b2) in fu.right_basis(b, c, d, w) {
                    let f3 = fu.entry([b, c, d, w], (v, s1, t1), (z, b1, b2));
                    if f3.is_zero() {
                        continue;
                    }
                    let row = pos(&(z, w, b1, b2, t2));
                    let val = p2.get(row, col) + &(&f12 * &f3);
                    p2.set(row, col, val);
                }
            }
        }
    }
    debug_assert_eq!(left.len(), fin.len());
    (p1, p2, left, fin)
}

fn word_name(data: &NearGroupData, word: [Label; 4], summand: Label) -> String {
    let name = |l: Label| match l {
        Label::M => "m".to_string(),
        Label::G(g) => data.group().element_name(g),
    };
    let w: Vec<String> = word.iter().map(|&l| name(l)).collect();
    format!("{}/{}", w.join(","), name(summand))
}

/// Check the pentagon for one word and summand.
pub fn generic_pentagon_oracle(data: &NearGroupData, word: [Label; 4], summand: Label) -> FamilyReport {
    let (p1, p2) = pentagon_sides(data, word, summand);
    let eq = format!("pentagon {}", word_name(data, word, summand));
    let failures = p1
        .diff_entries(&p2)
        .into_iter()
        .map(|(i, j, l, r)| Failure {
            eq: eq.clone(),
            indices: [("row".to_string(), i), ("col".to_string(), j)].into_iter().collect(),
            lhs: l,
            rhs: r,
        })
        .collect();
    FamilyReport::new(eq, p1.rows() * p1.cols(), failures)
}

/// Every word of four simple objects, with every summand.
pub fn all_words(data: &NearGroupData) -> Vec<([Label; 4], Label)> {
    let fu = Fusion { d: data };
    let s = fu.simples();
    let mut out = Vec::new();
    for &a in &s {
        for &b in &s {
            for &c in &s {
                for &d in &s {
                    for &e in &s {
                        out.push(([a, b, c, d], e));
                    }
                }
            }
        }
    }
    out
}

/// Run the oracle on every word and summand.
pub fn oracle_report(data: &NearGroupData) -> super::VerificationReport {
    use rayon::prelude::*;
    let start = Instant::now();
    let families = all_words(data)
        .par_iter()
        .map(|&(w, e)| generic_pentagon_oracle(data, w, e))
        .filter(|r| r.instances > 0)
        .collect();
    super::VerificationReport { families, elapsed_ms: start.elapsed().as_millis() }
}
