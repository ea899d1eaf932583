//! Associator data for the fusion rule `(G, k)` with `|G| = k + 1`.
//!
//! The simple objects are `G ∪ {m}` and `hom(m, m⊗m)` has a basis indexed
//! by `1..=k`. Under the fixed identification of `G` with its dual, index
//! `i` names both the nontrivial character `χ_i` and the group element
//! `i`, so the index operations are:
//!
//! - `i * j`: the group law,
//! - `i⁻¹`: the group inverse,
//! - `i ∘ j = π(π⁻¹(i) * π⁻¹(j))`, with inverse `i^{∘-1} = π(i)⁻¹`.
//!
//! All `α` and `β` associators are identically 1. The rest of the data is
//! determined by the sign `δ` and three functions `ξ`, `c_ε`, `N`, the
//! *primitive* data.
//!
//! Pair indices `(i, j)` with `1 ≤ i, j ≤ k` are laid out lexicographically
//! at position `(i−1)·k + (j−1)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::matrix::Matrix;
use crate::pi::Pi;

/// Lookup tables for `*`, `∘`, inverses and `π` on indices `0..=k` (0 is `ε`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexAlgebra {
    k: usize,
    star: Vec<Vec<usize>>,
    circ: Vec<Vec<usize>>,
    inv: Vec<usize>,
    circ_inv: Vec<usize>,
    pi: Vec<usize>,
    pi_inv: Vec<usize>,
}

impl IndexAlgebra {
    pub fn new(pi: &Pi) -> Self {
        let g = pi.group();
        let n = g.order();
        let ix = |e: usize| g.dual_iso(e);
        let el = |i: usize| i;
        let p: Vec<usize> = (0..n).map(|i| ix(pi.apply(el(i)))).collect();
        let pinv: Vec<usize> = (0..n).map(|i| ix(pi.apply_inv(el(i)))).collect();
        let star: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| ix(g.mul(el(i), el(j)))).collect()).collect();
        let inv: Vec<usize> = (0..n).map(|i| ix(g.inv(el(i)))).collect();
        let circ = (0..n).map(|i| (0..n).map(|j| p[star[pinv[i]][pinv[j]]]).collect()).collect();
        let circ_inv = (0..n).map(|i| inv[p[i]]).collect();
        IndexAlgebra { k: n - 1, star, circ, inv, circ_inv, pi: p, pi_inv: pinv }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn star(&self, i: usize, j: usize) -> usize {
        self.star[i][j]
    }

    pub fn circ(&self, i: usize, j: usize) -> usize {
        self.circ[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn circ_inv(&self, i: usize) -> usize {
        self.circ_inv[i]
    }

    pub fn pi(&self, i: usize) -> usize {
        self.pi[i]
    }

    pub fn pi_inv(&self, i: usize) -> usize {
        self.pi_inv[i]
    }

    /// Position of the pair `(i, j)` in the `k²`-dimensional block.
    pub fn pair(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.k + (j - 1)
    }

    /// Inverse of [`pair`](Self::pair).
    pub fn unpair(&self, p: usize) -> (usize, usize) {
        (p / self.k + 1, p % self.k + 1)
    }

    /// The unique `j` with `i ∘ j = r`.
    pub fn circ_solve(&self, i: usize, r: usize) -> usize {
        self.circ[self.circ_inv[i]][r]
    }
}

/// The sign `δ` and the functions `ξ`, `c_ε`, `N` on nontrivial indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearGroupPrimitive {
    pub delta: i8,
    /// `xi[i-1] = ξ(i)`
    pub xi: Vec<Cyclotomic>,
    /// `c_eps[i-1] = c_ε(i)`
    pub c_eps: Vec<Cyclotomic>,
    /// `N(r, s)` for `r * s ≠ ε`
    pub n_func: BTreeMap<(usize, usize), Cyclotomic>,
}

impl NearGroupPrimitive {
    /// `δ = 1` and every value 1.
    pub fn ones(alg: &IndexAlgebra) -> Self {
        let k = alg.k();
        let mut n_func = BTreeMap::new();
        for r in 1..=k {
            for s in 1..=k {
                if alg.star(r, s) != 0 {
                    n_func.insert((r, s), Cyclotomic::one());
                }
            }
        }
        NearGroupPrimitive { delta: 1, xi: vec![Cyclotomic::one(); k], c_eps: vec![Cyclotomic::one(); k], n_func }
    }

    pub fn xi(&self, i: usize) -> &Cyclotomic {
        &self.xi[i - 1]
    }

    pub fn c(&self, i: usize) -> &Cyclotomic {
        &self.c_eps[i - 1]
    }

    pub fn n(&self, r: usize, s: usize) -> &Cyclotomic {
        &self.n_func[&(r, s)]
    }

    pub fn delta_value(&self) -> Cyclotomic {
        Cyclotomic::from_i64(self.delta as i64)
    }

    /// Check shapes, `δ = ±1`, and that every value is nonzero.
    pub fn validate(&self, alg: &IndexAlgebra) -> Result<()> {
        let k = alg.k();
        if self.delta != 1 && self.delta != -1 {
            return Err(Error::Data(format!("delta must be ±1, got {}", self.delta)));
        }
        if self.xi.len() != k || self.c_eps.len() != k {
            return Err(Error::Data(format!("xi and c_eps need {k} entries")));
        }
        for r in 1..=k {
            for s in 1..=k {
                let legal = alg.star(r, s) != 0;
                if legal != self.n_func.contains_key(&(r, s)) {
                    return Err(Error::Data(format!("n_func must be given exactly on r*s != e; check ({r},{s})")));
                }
            }
        }
        if self.xi.iter().chain(&self.c_eps).chain(self.n_func.values()).any(Cyclotomic::is_zero) {
            return Err(Error::Data("primitive values must be invertible".into()));
        }
        Ok(())
    }
}

/// Complete associator data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearGroupData {
    pub pi: Pi,
    pub alg: IndexAlgebra,
    pub primitive: NearGroupPrimitive,
    /// Indexed by group element.
    pub gamma1: Vec<Matrix>,
    pub gamma2: Vec<Matrix>,
    pub gamma3: Vec<Matrix>,
    pub lambda: Vec<Matrix>,
    /// `μ[g, h]`, rows and columns in `G`.
    pub m_block: Matrix,
    /// `μ[g; (r, s)]`; row `g` is `r_g`.
    pub r_block: Matrix,
    /// `μ[(i, j); g]`; column `g` is `c_g`.
    pub c_block: Matrix,
    /// `μ[(i, j); (r, s)]`.
    pub n_block: Matrix,
}

fn diag_from(k: usize, f: impl Fn(usize) -> Cyclotomic) -> Matrix {
    Matrix::diagonal(&(1..=k).map(f).collect::<Vec<_>>())
}

/// Build the data determined by a primitive set.
pub fn construct_from_primitive(pi: &Pi, prim: NearGroupPrimitive) -> Result<NearGroupData> {
    let alg = IndexAlgebra::new(pi);
    prim.validate(&alg)?;
    let g = pi.group();
    let n = g.order();
    let k = alg.k();
    let chi = |i: usize, x: usize| g.character(i, x);

    let gamma1: Vec<Matrix> = g.elements().map(|x| diag_from(k, |i| chi(i, x))).collect();
    let gamma2: Vec<Matrix> = g.elements().map(|x| diag_from(k, |i| chi(alg.inv(alg.pi(i)), x))).collect();
    let gamma3: Vec<Matrix> = g.elements().map(|x| diag_from(k, |i| chi(alg.pi_inv(i), x))).collect();
    let lambda_eps = Matrix::from_fn(k, k, |i, j| {
        if i + 1 == alg.pi(j + 1) {
            prim.xi(j + 1).clone()
        } else {
            Cyclotomic::zero()
        }
    });
    let lambda: Vec<Matrix> = gamma3.iter().map(|g3| g3.mul(&lambda_eps)).collect();

    let order = Cyclotomic::from_i64(n as i64);
    let m_block = Matrix::from_fn(n, n, |_, _| Cyclotomic::from_frac(prim.delta as i64, n as i64));

    let mut c_block = Matrix::zeros(k * k, n);
    for i in 1..=k {
        let j = alg.circ_inv(i);
        for x in g.elements() {
            c_block.set(alg.pair(i, j), x, &chi(i, g.inv(x)) * prim.c(i));
        }
    }

    let mut r_block = Matrix::zeros(n, k * k);
    for r in 1..=k {
        let p = alg.pi_inv(r);
        let r_eps = (&(&order * prim.xi(p)) * prim.c(p)).inv()?;
        for x in g.elements() {
            r_block.set(x, alg.pair(r, alg.inv(r)), &chi(p, g.inv(x)) * &r_eps);
        }
    }

    let mut n_block = Matrix::zeros(k * k, k * k);
    for (&(r, s), v) in &prim.n_func {
        let i = alg.star(r, s);
        let j = alg.circ_solve(i, r);
        n_block.set(alg.pair(i, j), alg.pair(r, s), v.clone());
    }

    Ok(NearGroupData {
        pi: pi.clone(),
        alg,
        primitive: prim,
        gamma1,
        gamma2,
        gamma3,
        lambda,
        m_block,
        r_block,
        c_block,
        n_block,
    })
}

/// The solution with `δ = 1` and all primitive values 1.
pub fn construct_standard(pi: &Pi) -> Result<NearGroupData> {
    let alg = IndexAlgebra::new(pi);
    construct_from_primitive(pi, NearGroupPrimitive::ones(&alg))
}

impl NearGroupData {
    pub fn group(&self) -> &AbelianGroup {
        self.pi.group()
    }

    pub fn k(&self) -> usize {
        self.alg.k()
    }

    /// `r_a` as a `1 × k²` matrix.
    pub fn r_row(&self, a: usize) -> Matrix {
        Matrix::from_fn(1, self.k() * self.k(), |_, j| self.r_block.get(a, j).clone())
    }

    /// `c_b` as a `k² × 1` matrix.
    pub fn c_col(&self, b: usize) -> Matrix {
        Matrix::from_fn(self.k() * self.k(), 1, |i, _| self.c_block.get(i, b).clone())
    }

    /// Full `μ` with rows and columns ordered as group elements, then pairs.
    pub fn assemble_mu(&self) -> Matrix {
        let n = self.group().order();
        let kk = self.k() * self.k();
        Matrix::from_fn(n + kk, n + kk, |i, j| match (i < n, j < n) {
            (true, true) => self.m_block.get(i, j).clone(),
            (true, false) => self.r_block.get(i, j - n).clone(),
            (false, true) => self.c_block.get(i - n, j).clone(),
            (false, false) => self.n_block.get(i - n, j - n).clone(),
        })
    }

    /// Replace the four `μ` blocks from an assembled matrix.
    pub fn with_mu(&self, mu: &Matrix) -> Result<Self> {
        let n = self.group().order();
        let kk = self.k() * self.k();
        if mu.rows() != n + kk || mu.cols() != n + kk {
            return Err(Error::Dimension(format!("mu must be {0}x{0}", n + kk)));
        }
        let mut out = self.clone();
        out.m_block = Matrix::from_fn(n, n, |i, j| mu.get(i, j).clone());
        out.r_block = Matrix::from_fn(n, kk, |i, j| mu.get(i, j + n).clone());
        out.c_block = Matrix::from_fn(kk, n, |i, j| mu.get(i + n, j).clone());
        out.n_block = Matrix::from_fn(kk, kk, |i, j| mu.get(i + n, j + n).clone());
        Ok(out)
    }

    /// Read the primitive values back out of the tensors.
    pub fn extract_primitive(&self) -> Result<NearGroupPrimitive> {
        let alg = &self.alg;
        let k = alg.k();
        let n = self.group().order();
        let lam = &self.lambda[0];
        let xi = (1..=k).map(|j| lam.get(alg.pi(j) - 1, j - 1).clone()).collect();
        let c_eps = (1..=k).map(|i| self.c_block.get(alg.pair(i, alg.circ_inv(i)), 0).clone()).collect();
        let mut n_func = BTreeMap::new();
        for r in 1..=k {
            for s in 1..=k {
                let i = alg.star(r, s);
                if i != 0 {
                    let j = alg.circ_solve(i, r);
                    n_func.insert((r, s), self.n_block.get(alg.pair(i, j), alg.pair(r, s)).clone());
                }
            }
        }
        let scaled = self.m_block.get(0, 0) * &Cyclotomic::from_i64(n as i64);
        let delta = if scaled.is_one() {
            1
        } else if (-&scaled).is_one() {
            -1
        } else {
            return Err(Error::Data(format!("|G|·mu[e,e] = {scaled} is not ±1")));
        };
        Ok(NearGroupPrimitive { delta, xi, c_eps, n_func })
    }
}

/// Current version of the JSON layout written by [`NearGroupData::to_json`].
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Matrices {
    gamma1: Vec<Matrix>,
    gamma2: Vec<Matrix>,
    gamma3: Vec<Matrix>,
    lambda: Vec<Matrix>,
    m: Matrix,
    r: Matrix,
    c: Matrix,
    n: Matrix,
}

#[derive(Serialize, Deserialize)]
struct DataRepr {
    schema_version: u32,
    group: AbelianGroup,
    k: usize,
    pi: String,
    delta: i8,
    xi: Vec<Cyclotomic>,
    c_eps: Vec<Cyclotomic>,
    /// keys are `"r,s"`
    n_func: BTreeMap<String, Cyclotomic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrices: Option<Matrices>,
}

impl NearGroupData {
    /// Serialize; `with_matrices` also stores every tensor explicitly.
    pub fn to_json(&self, with_matrices: bool) -> serde_json::Value {
        let p = &self.primitive;
        let repr = DataRepr {
            schema_version: SCHEMA_VERSION,
            group: self.group().clone(),
            k: self.k(),
            pi: self.pi.cycle_notation(),
            delta: p.delta,
            xi: p.xi.clone(),
            c_eps: p.c_eps.clone(),
            n_func: p.n_func.iter().map(|(&(r, s), v)| (format!("{r},{s}"), v.clone())).collect(),
            matrices: with_matrices.then(|| Matrices {
                gamma1: self.gamma1.clone(),
                gamma2: self.gamma2.clone(),
                gamma3: self.gamma3.clone(),
                lambda: self.lambda.clone(),
                m: self.m_block.clone(),
                r: self.r_block.clone(),
                c: self.c_block.clone(),
                n: self.n_block.clone(),
            }),
        };
        serde_json::to_value(repr).expect("data serializes")
    }

    /// Parse data written by [`to_json`](Self::to_json). Stored matrices,
    /// when present, are used as given so that altered data can be checked.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let repr: DataRepr = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if repr.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema_version {}", repr.schema_version)));
        }
        let pi = Pi::parse_cycles(&repr.group, &repr.pi)?;
        if repr.k + 1 != repr.group.order() {
            return Err(Error::Data(format!("k = {} but |G| = {}", repr.k, repr.group.order())));
        }
        let mut n_func = BTreeMap::new();
        for (key, v) in repr.n_func {
            let (r, s) = key
                .split_once(',')
                .and_then(|(r, s)| Some((r.trim().parse().ok()?, s.trim().parse().ok()?)))
                .ok_or_else(|| Error::Parse(format!("bad n_func key {key:?}")))?;
            n_func.insert((r, s), v);
        }
        let prim = NearGroupPrimitive { delta: repr.delta, xi: repr.xi, c_eps: repr.c_eps, n_func };
        let mut data = construct_from_primitive(&pi, prim)?;
        if let Some(m) = repr.matrices {
            let (n, k) = (repr.group.order(), repr.k);
            let square = |v: &[Matrix], name: &str| -> Result<()> {
                if v.len() != n || v.iter().any(|x| x.rows() != k || x.cols() != k) {
                    return Err(Error::Data(format!("{name} must hold {n} matrices of size {k}x{k}")));
                }
                Ok(())
            };
            square(&m.gamma1, "gamma1")?;
            square(&m.gamma2, "gamma2")?;
            square(&m.gamma3, "gamma3")?;
            square(&m.lambda, "lambda")?;
            let shape = |x: &Matrix, r: usize, c: usize, name: &str| -> Result<()> {
                if x.rows() != r || x.cols() != c {
                    return Err(Error::Data(format!("{name} must be {r}x{c}")));
                }
                Ok(())
            };
            shape(&m.m, n, n, "m")?;
            shape(&m.r, n, k * k, "r")?;
            shape(&m.c, k * k, n, "c")?;
            shape(&m.n, k * k, k * k, "n")?;
            data.gamma1 = m.gamma1;
            data.gamma2 = m.gamma2;
            data.gamma3 = m.gamma3;
            data.lambda = m.lambda;
            data.m_block = m.m;
            data.r_block = m.r;
            data.c_block = m.c;
            data.n_block = m.n;
        }
        Ok(data)
    }
}

pub mod fixtures;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::pi_from_field;
    use proptest::prelude::*;

    fn standard(q: u32) -> NearGroupData {
        let (_, pi) = pi_from_field(q).unwrap();
        construct_standard(&pi).unwrap()
    }

    #[test]
    fn index_algebra_small_cases() {
        let a2 = standard(3).alg;
        assert_eq!(a2.star(1, 1), 0);
        let a4 = standard(5).alg;
        assert_eq!(a4.star(2, 2), 0);
        assert_eq!(a4.pi(1), 2);
        let a3 = standard(4).alg;
        for i in 1..=2 {
            for j in 1..=2 {
                assert_eq!(a3.circ(i, j), a3.star(i, j));
            }
        }
    }

    #[test]
    fn z2_standard_mu_matches_formula() {
        let d = standard(3);
        let half = Cyclotomic::from_frac(1, 2);
        let mu = d.assemble_mu();
        let expect = [[half.clone(), half.clone(), half.clone()], [half.clone(), half.clone(), -&half], [
            Cyclotomic::one(),
            Cyclotomic::from_i64(-1),
            Cyclotomic::zero(),
        ]];
        for (i, row) in expect.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(mu.get(i, j), v, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn standard_mu_is_invertible() {
        for q in [3, 4, 5, 7] {
            let det = standard(q).assemble_mu().det().unwrap();
            assert!(!det.is_zero());
            // a rational times a root of unity: det · conj(det) is rational
            assert!((&det * &det.conj()).as_rational().is_some());
        }
    }

    #[test]
    fn standard_formulas_hold_entrywise() {
        // independent restatement of the closed-form entries
        for q in [4, 5, 7, 8] {
            let d = standard(q);
            let g = d.group().clone();
            let a = &d.alg;
            let n = g.order() as i64;
            for x in g.elements() {
                for p in 0..a.k() * a.k() {
                    let (i, j) = a.unpair(p);
                    let c = if a.circ(i, j) == 0 { g.character(i, g.inv(x)) } else { Cyclotomic::zero() };
                    assert_eq!(d.c_block.get(p, x), &c);
                    let (r, s) = (i, j);
                    let rv = if a.star(r, s) == 0 {
                        (&Cyclotomic::from_i64(n) * &g.character(a.pi_inv(r), x)).inv().unwrap()
                    } else {
                        Cyclotomic::zero()
                    };
                    assert_eq!(d.r_block.get(x, p), &rv);
                }
            }
            for p in 0..a.k() * a.k() {
                for c in 0..a.k() * a.k() {
                    let (i, j) = a.unpair(p);
                    let (r, s) = a.unpair(c);
                    let one = r == a.circ(i, j) && i == a.star(r, s);
                    assert_eq!(d.n_block.get(p, c).is_one(), one);
                }
            }
        }
    }

    #[test]
    fn json_round_trip_with_and_without_matrices() {
        let d = standard(5);
        for with in [false, true] {
            let v = d.to_json(with);
            let back = NearGroupData::from_json(&v).unwrap();
            assert_eq!(back, d);
            assert_eq!(back.to_json(with), v);
        }
        let mut v = d.to_json(false);
        v["schema_version"] = 7.into();
        assert!(NearGroupData::from_json(&v).is_err());
    }

    #[test]
    fn extract_primitive_inverts_construction() {
        let d = fixtures::z3k2(-1).unwrap();
        assert_eq!(d.extract_primitive().unwrap(), d.primitive);
    }

    proptest! {
        #[test]
        fn gammas_are_representations(q in prop::sample::select(vec![3u32, 4, 5, 7, 8, 9]), a in 0usize..100, b in 0usize..100) {
            let d = standard(q);
            let g = d.group().clone();
            let (a, b) = (a % g.order(), b % g.order());
            for gam in [&d.gamma1, &d.gamma2, &d.gamma3] {
                prop_assert_eq!(gam[a].mul(&gam[b]), gam[g.mul(a, b)].clone());
            }
            // λ(ε) carries γ3 to γ1 to γ2⁻¹ and back to γ3
            let l = &d.lambda[0];
            let li = l.inverse().unwrap();
            prop_assert_eq!(li.mul(&d.gamma3[a]).mul(l), d.gamma1[a].clone());
            prop_assert_eq!(li.mul(&d.gamma1[a]).mul(l), d.gamma2[a].inverse().unwrap());
            prop_assert_eq!(li.mul(&d.gamma2[a].inverse().unwrap()).mul(l), d.gamma3[a].clone());
        }

        #[test]
        fn sparsity_patterns(q in prop::sample::select(vec![3u32, 4, 5, 7, 8]), x in 0usize..100) {
            let d = standard(q);
            let a = &d.alg;
            let x = x % d.group().order();
            for p in 0..a.k() * a.k() {
                let (i, j) = a.unpair(p);
                prop_assert_eq!(!d.r_block.get(x, p).is_zero(), a.star(i, j) == 0);
                prop_assert_eq!(!d.c_block.get(p, x).is_zero(), a.circ(i, j) == 0);
            }
        }
    }
}
