//! Near-group categories over the trivial group.
//!
//! With `G = {ε}` the simple objects are `ε` and `m`, and `m ⊗ m = ε ⊕ k·m`.
//! Write `λ` for the `k × k` associator on `hom(ε, m⊗m⊗m)` and `μ` for the
//! `(1+k²) × (1+k²)` associator on `hom(m, m⊗m⊗m)`. Slot 0 of `μ` is the
//! `ε` channel; the pair `(i, j)` sits at slot `1 + (i−1)k + (j−1)`.
//!
//! Taking determinants of the pentagon for the words `mmmm/ε` and `mmmm/m`
//! gives two relations between `L = det λ` and `M = det μ`, involving the
//! sign of the tensor flip `X_k`:
//!
//! ```text
//! M² L^k = L^{2k} det X_k,        (L M^k)² = M^k (−1)^k (det X_k)^k.
//! ```
//!
//! Independently, comparing blocks of `μ` forces `L³ = 1`. When `det X_k = −1`
//! the two relations above force `L` to be a root of `−1`, which no cube root
//! of unity is.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::monomial::{Exponent, MonomialSystem};
use crate::pentagon::{Failure, FamilyReport, VerificationReport};

/// Zero-based position of `e_i ⊗ e_j` in a `k²`-dimensional tensor square,
/// with `i, j ∈ 0..k`.
fn slot(k: usize, i: usize, j: usize) -> usize {
    i * k + j
}

/// The permutation `e_i ⊗ e_j ↦ e_j ⊗ e_i` of `0..k²`.
pub fn flip_permutation(k: usize) -> Vec<usize> {
    let mut p = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            p[slot(k, i, j)] = slot(k, j, i);
        }
    }
    p
}

/// The `k² × k²` tensor-flip matrix `X_k`.
pub fn flip_matrix(k: usize) -> Matrix {
    let p = flip_permutation(k);
    Matrix::from_fn(k * k, k * k, |r, c| if p[c] == r { Cyclotomic::one() } else { Cyclotomic::zero() })
}

/// Sign of a permutation, from its cycle decomposition.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// `det X_k` from the count of transpositions: the flip swaps the
/// `k(k−1)/2` pairs `{(i,j), (j,i)}` with `i < j`.
pub fn flip_det_closed_form(k: usize) -> i64 {
    if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `det X_k` by exact elimination.
pub fn flip_det(k: usize) -> Result<Cyclotomic> {
    flip_matrix(k).det()
}

/// A relation `L^l · M^m = sign` with `sign = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub l: i64,
    pub m: i64,
    pub sign: i64,
}

impl Relation {
    /// `a·self + b·other` in the multiplicative sense.
    fn combine(self, a: i64, other: Relation, b: i64) -> Relation {
        let pow = |s: i64, e: i64| if s == -1 && e.rem_euclid(2) == 1 { -1 } else { 1 };
        Relation {
            l: a * self.l + b * other.l,
            m: a * self.m + b * other.m,
            sign: pow(self.sign, a) * pow(other.sign, b),
        }
    }

    fn sign_exponent(&self) -> Exponent {
        if self.sign == -1 {
            Exponent::new(1, 2)
        } else {
            Exponent::from_integer(0)
        }
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut lhs = Vec::new();
        if self.l != 0 {
            lhs.push(format!("L^{}", self.l));
        }
        if self.m != 0 {
            lhs.push(format!("M^{}", self.m));
        }
        if lhs.is_empty() {
            lhs.push("1".into());
        }
        write!(f, "{} = {}", lhs.join(" "), self.sign)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Obstructed,
    NotObstructed,
}

/// The chain of exponent identities behind a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub flip_det: i64,
    /// The `mmmm/ε` determinant relation, normalized to `M² L^{−k} = det X_k`.
    pub small: Relation,
    /// The `mmmm/m` determinant relation, normalized to `L² M^k = (−1)^k (det X_k)^k`.
    pub big: Relation,
    /// The combination of `small` and `big` in which `M` cancels.
    pub eliminated: Relation,
    pub cube: Relation,
    /// Whether the three relations have a common solution, found by
    /// solving them as a monomial system.
    pub lattice_consistent: bool,
}

impl Witness {
    pub fn summary(&self) -> String {
        let tail = if self.eliminated.sign == -1 {
            format!("incompatible with {}", self.cube)
        } else {
            format!("compatible with {}", self.cube)
        };
        format!("det X = {}; {}; {}; hence {}, {}", self.flip_det, self.small, self.big, self.eliminated, tail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialGroupVerdict {
    pub k: usize,
    pub verdict: Verdict,
    pub witness: Witness,
}

/// Decide whether the determinant relations and `L³ = 1` can hold together.
///
/// The verdict comes from eliminating `M` by hand. The witness also records
/// an independent lattice solve of the same relations.
pub fn trivial_group_verdict(k: usize) -> Result<TrivialGroupVerdict> {
    if k == 0 {
        return Err(Error::Data("k must be at least 1".into()));
    }
    let ki = k as i64;
    let d = flip_permutation(k);
    let d = permutation_sign(&d);
    let small = Relation { l: -ki, m: 2, sign: d };
    let neg_k = if k % 2 == 1 { -1 } else { 1 };
    let big = Relation { l: 2, m: ki, sign: neg_k * if k % 2 == 1 { d } else { 1 } };
    let eliminated = if k.is_multiple_of(2) {
        big.combine(1, small, -(ki / 2))
    } else {
        big.combine(2, small, -ki)
    };
    debug_assert_eq!(eliminated.m, 0);
    let cube = Relation { l: 3, m: 0, sign: 1 };

    let mut sys = MonomialSystem::new(2);
    for (label, r) in [("small", small), ("big", big), ("cube", cube)] {
        sys.push(label, vec![r.l, r.m], r.sign_exponent());
    }
    let lattice_consistent = sys.solve().is_some();

    let verdict = if eliminated.sign == -1 { Verdict::Obstructed } else { Verdict::NotObstructed };
    Ok(TrivialGroupVerdict {
        k,
        verdict,
        witness: Witness { flip_det: d, small, big, eliminated, cube, lattice_consistent },
    })
}

/// Associator data for a near-group category over the trivial group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrivialGroupCandidate {
    pub k: usize,
    pub lambda: Matrix,
    pub mu: Matrix,
}

impl TrivialGroupCandidate {
    pub fn new(k: usize, lambda: Matrix, mu: Matrix) -> Result<Self> {
        let n = 1 + k * k;
        if k == 0 || lambda.rows() != k || lambda.cols() != k {
            return Err(Error::Dimension(format!("lambda must be {k}×{k}")));
        }
        if mu.rows() != n || mu.cols() != n {
            return Err(Error::Dimension(format!("mu must be {n}×{n}")));
        }
        Ok(TrivialGroupCandidate { k, lambda, mu })
    }

    /// Slot of the pair `(i, j)`, `i, j ∈ 1..=k`.
    pub fn pair_slot(&self, i: usize, j: usize) -> usize {
        1 + slot(self.k, i - 1, j - 1)
    }

    pub fn mu_ee(&self) -> &Cyclotomic {
        self.mu.get(0, 0)
    }

    /// `μ_R[i,j] = μ[ε; (i,j)]`.
    pub fn mu_r(&self) -> Matrix {
        Matrix::from_fn(self.k, self.k, |i, j| self.mu.get(0, self.pair_slot(i + 1, j + 1)).clone())
    }

    /// `μ_C[i,j] = μ[(j,i); ε]`.
    pub fn mu_c(&self) -> Matrix {
        Matrix::from_fn(self.k, self.k, |i, j| self.mu.get(self.pair_slot(j + 1, i + 1), 0).clone())
    }
}

fn scalar_family(name: &str, lhs: Cyclotomic, rhs: Cyclotomic) -> FamilyReport {
    let failures = if lhs == rhs {
        Vec::new()
    } else {
        vec![Failure { eq: name.to_string(), indices: Default::default(), lhs, rhs }]
    };
    FamilyReport::new(name, 1, failures)
}

fn matrix_family(name: &str, lhs: &Matrix, rhs: &Matrix) -> FamilyReport {
    let failures = lhs
        .diff_entries(rhs)
        .into_iter()
        .map(|(i, j, l, r)| Failure {
            eq: name.to_string(),
            indices: [("i".to_string(), i + 1), ("j".to_string(), j + 1)].into_iter().collect(),
            lhs: l,
            rhs: r,
        })
        .collect();
    FamilyReport::new(name, lhs.rows() * lhs.cols(), failures)
}

/// Check the determinant relations and the two block identities
/// `μ_C μ_R = μ[ε,ε] λ²` and `μ_Cᵀ μ_R λ = μ[ε,ε]·ID`.
pub fn check_trivial_group_candidate(cand: &TrivialGroupCandidate) -> Result<VerificationReport> {
    if cand.mu_ee().is_zero() {
        return Err(Error::Data("μ[ε,ε] must be invertible".into()));
    }
    let start = std::time::Instant::now();
    let k = cand.k as i64;
    let l = cand.lambda.det()?;
    let m = cand.mu.det()?;
    let x = flip_det(cand.k)?;
    let sign_k = Cyclotomic::from_i64(-1).pow(k)?;

    let small = scalar_family("det:mmmm/e", &m.pow(2)? * &l.pow(k)?, &l.pow(2 * k)? * &x);
    let big = scalar_family("det:mmmm/m", (&l * &m.pow(k)?).pow(2)?, &(&m.pow(k)? * &sign_k) * &x.pow(k)?);

    let (mc, mr, lam) = (cand.mu_c(), cand.mu_r(), &cand.lambda);
    let ee = cand.mu_ee();
    let square = matrix_family("mu-c-mu-r", &mc.try_mul(&mr)?, &lam.try_mul(lam)?.scale(ee));
    let inverse = matrix_family(
        "mu-ct-mu-r-lambda",
        &mc.transpose().try_mul(&mr)?.try_mul(lam)?,
        &Matrix::identity(cand.k).scale(ee),
    );
    Ok(VerificationReport {
        families: vec![small, big, square, inverse],
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_i64(v)
    }

    #[test]
    fn flip_determinants_agree_three_ways() {
        for k in 1..=8 {
            let by_elimination = flip_det(k).unwrap();
            let by_cycles = permutation_sign(&flip_permutation(k));
            assert_eq!(by_elimination, c(by_cycles), "k = {k}");
            assert_eq!(by_cycles, flip_det_closed_form(k), "k = {k}");
            let expected = if k % 4 == 0 || k % 4 == 1 { 1 } else { -1 };
            assert_eq!(by_cycles, expected, "k = {k}");
        }
    }

    #[test]
    fn small_flip_examples() {
        assert_eq!(flip_det(1).unwrap(), c(1));
        assert_eq!(flip_det(2).unwrap(), c(-1));
        assert_eq!(flip_det(3).unwrap(), c(-1));
        assert_eq!(flip_det(5).unwrap(), c(1));
    }

    #[test]
    fn flip_has_k_choose_2_antisymmetric_eigenvectors() {
        for k in 1..=5 {
            let x = flip_matrix(k);
            let mut count = 0;
            for i in 0..k {
                for j in i + 1..k {
                    let mut v = vec![c(0); k * k];
                    v[slot(k, i, j)] = c(1);
                    v[slot(k, j, i)] = c(-1);
                    let col = Matrix::from_fn(k * k, 1, |r, _| v[r].clone());
                    if x.mul(&col) == col.scale(&c(-1)) {
                        count += 1;
                    }
                }
            }
            assert_eq!(count, k * (k - 1) / 2);
            let fixed = (0..k * k).filter(|&s| flip_permutation(k)[s] == s).count();
            assert_eq!(fixed, k);
        }
    }

    #[test]
    fn flip_is_an_involution() {
        for k in 1..=4 {
            let x = flip_matrix(k);
            assert_eq!(x.mul(&x), Matrix::identity(k * k));
        }
    }

    #[test]
    fn verdicts_follow_k_mod_4() {
        for k in 1..=20 {
            let v = trivial_group_verdict(k).unwrap();
            let expect = if k % 4 == 2 || k % 4 == 3 { Verdict::Obstructed } else { Verdict::NotObstructed };
            assert_eq!(v.verdict, expect, "k = {k}");
            assert_eq!(v.witness.lattice_consistent, expect == Verdict::NotObstructed, "k = {k}");
            assert_eq!(v.witness.eliminated.m, 0);
        }
    }

    #[test]
    fn eliminated_exponents_match_closed_forms() {
        for k in 1..=20usize {
            let e = trivial_group_verdict(k).unwrap().witness.eliminated;
            let ki = k as i64;
            if k % 2 == 0 {
                let r = ki / 2;
                assert_eq!(e.l, 2 * r * r + 2, "k = {k}");
            } else {
                assert_eq!(e.l, ki * ki + 4, "k = {k}");
            }
        }
    }

    #[test]
    fn verdict_examples() {
        let v2 = trivial_group_verdict(2).unwrap();
        assert_eq!(v2.verdict, Verdict::Obstructed);
        assert_eq!(v2.witness.eliminated, Relation { l: 4, m: 0, sign: -1 });
        let v3 = trivial_group_verdict(3).unwrap();
        assert_eq!(v3.verdict, Verdict::Obstructed);
        assert_eq!(v3.witness.eliminated, Relation { l: 13, m: 0, sign: -1 });
        assert_eq!(v3.witness.eliminated.to_string(), "L^13 = -1");
        assert_eq!(trivial_group_verdict(4).unwrap().verdict, Verdict::NotObstructed);
        assert!(trivial_group_verdict(0).is_err());
    }

    /// Brute force over small roots of unity: the relations have a solution
    /// with `L³ = 1` exactly when the verdict says so.
    #[test]
    fn verdict_matches_search_over_roots_of_unity() {
        let n = 24i64;
        for k in 1..=8usize {
            let v = trivial_group_verdict(k).unwrap();
            let w = &v.witness;
            let holds = |r: Relation, a: i64, b: i64| {
                let target = if r.sign == -1 { n / 2 } else { 0 };
                (r.l * a + r.m * b - target).rem_euclid(n) == 0
            };
            let found = (0..n).any(|a| (0..n).any(|b| holds(w.small, a, b) && holds(w.big, a, b) && holds(w.cube, a, b)));
            assert_eq!(found, v.verdict == Verdict::NotObstructed, "k = {k}");
        }
    }

    fn synthetic_k1() -> TrivialGroupCandidate {
        // x² = μ[ε,ε] with μ[ε,ε] = 4 and x = 2.
        let mu = Matrix::from_rows(vec![vec![c(4), c(2)], vec![c(2), c(3)]]).unwrap();
        TrivialGroupCandidate::new(1, Matrix::identity(1), mu).unwrap()
    }

    #[test]
    fn synthetic_candidate_passes_block_identities() {
        let cand = synthetic_k1();
        assert_eq!(cand.mu_r().get(0, 0).pow(2).unwrap(), *cand.mu_ee());
        let report = check_trivial_group_candidate(&cand).unwrap();
        assert!(report.family("mu-c-mu-r").unwrap().passed());
        assert!(report.family("mu-ct-mu-r-lambda").unwrap().passed());
    }

    #[test]
    fn degenerate_mu_ee_is_rejected() {
        let mu = Matrix::from_rows(vec![vec![c(0), c(1)], vec![c(1), c(0)]]).unwrap();
        let cand = TrivialGroupCandidate::new(1, Matrix::identity(1), mu).unwrap();
        assert!(matches!(check_trivial_group_candidate(&cand), Err(Error::Data(_))));
    }

    #[test]
    fn wrong_shapes_are_rejected() {
        assert!(TrivialGroupCandidate::new(2, Matrix::identity(2), Matrix::identity(4)).is_err());
        assert!(TrivialGroupCandidate::new(2, Matrix::identity(3), Matrix::identity(5)).is_err());
    }

    #[test]
    fn block_views_use_the_pair_layout() {
        let k = 2;
        let mu = Matrix::from_fn(5, 5, |r, col| c((10 * r + col) as i64));
        let cand = TrivialGroupCandidate::new(k, Matrix::identity(k), mu).unwrap();
        // μ_R[1,2] = μ[ε; (1,2)] sits at column 1 + 0·2 + 1 = 2.
        assert_eq!(*cand.mu_r().get(0, 1), c(2));
        // μ_C[1,2] = μ[(2,1); ε] sits at row 1 + 1·2 + 0 = 3.
        assert_eq!(*cand.mu_c().get(0, 1), c(30));
    }

    fn zeta3_candidate(mu_diag: Vec<Cyclotomic>) -> TrivialGroupCandidate {
        let k = 3;
        let mut lam = vec![c(1); k];
        lam[0] = Cyclotomic::root_of_unity(3, 1);
        TrivialGroupCandidate::new(k, Matrix::diagonal(&lam), Matrix::diagonal(&mu_diag)).unwrap()
    }

    #[test]
    fn det_lambda_zeta3_fails_a_determinant_relation() {
        // Try det μ across all 24th roots of unity; no choice satisfies both.
        for j in 0..24 {
            let mut d = vec![c(1); 10];
            d[1] = Cyclotomic::root_of_unity(24, j);
            let report = check_trivial_group_candidate(&zeta3_candidate(d)).unwrap();
            let small = report.family("det:mmmm/e").unwrap().passed();
            let big = report.family("det:mmmm/m").unwrap().passed();
            assert!(!(small && big), "det μ = ζ24^{j}");
        }
        // det μ = i satisfies the first relation, so the second must fail.
        let mut d = vec![c(1); 10];
        d[1] = Cyclotomic::root_of_unity(4, 1);
        let report = check_trivial_group_candidate(&zeta3_candidate(d)).unwrap();
        assert!(report.family("det:mmmm/e").unwrap().passed());
        assert!(!report.family("det:mmmm/m").unwrap().passed());
    }

    proptest! {
        #[test]
        fn candidate_determinant_checks_match_the_relations(a in 0i64..12, b in 0i64..12, k in 1usize..4) {
            // λ and μ diagonal with det λ = ζ12^a and det μ = ζ12^b.
            let mut lam = vec![c(1); k];
            lam[0] = Cyclotomic::root_of_unity(12, a);
            let n = 1 + k * k;
            let mut mu = vec![c(1); n];
            mu[n - 1] = Cyclotomic::root_of_unity(12, b);
            let cand = TrivialGroupCandidate::new(k, Matrix::diagonal(&lam), Matrix::diagonal(&mu)).unwrap();
            let report = check_trivial_group_candidate(&cand).unwrap();
            let w = trivial_group_verdict(k).unwrap().witness;
            let holds = |r: Relation| {
                let target = if r.sign == -1 { 6 } else { 0 };
                (r.l * a + r.m * b - target).rem_euclid(12) == 0
            };
            prop_assert_eq!(report.family("det:mmmm/e").unwrap().passed(), holds(w.small));
            prop_assert_eq!(report.family("det:mmmm/m").unwrap().passed(), holds(w.big));
        }
    }
}
