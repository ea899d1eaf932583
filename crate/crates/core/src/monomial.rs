//! Systems of monomial equations over roots of unity.
//!
//! An unknown `x_j = exp(2πi θ_j)` is tracked through its exponent
//! `θ_j ∈ Q/Z`. A monomial equation `∏ x_j^{e_j} = exp(2πi c)` becomes the
//! linear congruence `Σ e_j θ_j ≡ c (mod 1)`. The whole system `Eθ ≡ c` is
//! solved by diagonalizing `E` over the integers: `U E V = D` with `U`, `V`
//! unimodular. Writing `θ = Vφ` gives the decoupled congruences
//! `d_i φ_i ≡ (Uc)_i`, so the solution set is a finite union of `∏ d_i`
//! translates of a torus of dimension `n − rank E`.

use num_integer::Integer;
use num_rational::Ratio;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Exponent of a root of unity, normalized into `[0, 1)`.
pub type Exponent = Ratio<i64>;

/// Reduce a rational modulo 1 into `[0, 1)`.
pub fn frac(r: Ratio<i128>) -> Exponent {
    let (n, d) = (*r.numer(), *r.denom());
    let n = n.rem_euclid(d);
    let g = n.gcd(&d).max(1);
    Ratio::new_raw(
        i64::try_from(n / g).expect("exponent numerator overflow"),
        i64::try_from(d / g).expect("exponent denominator overflow"),
    )
}

fn widen(r: Exponent) -> Ratio<i128> {
    Ratio::new(*r.numer() as i128, *r.denom() as i128)
}

/// Result of integer diagonalization `U·A·V = diag(d_0, …, d_{r-1}, 0, …)`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    pub divisors: Vec<i128>,
}

impl Diagonalization {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

/// Diagonalize an `m × n` integer matrix by unimodular row and column operations.
pub fn diagonalize(a: &[Vec<i64>], n: usize) -> Diagonalization {
    let m = a.len();
    let mut a: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..m).map(|i| (0..m).map(|j| (i == j) as i128).collect()).collect();
    let mut v: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    let mut divisors = Vec::new();

    let swap_cols = |mat: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in mat.iter_mut() {
            row.swap(x, y);
        }
    };

    for t in 0..m.min(n) {
        let best = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let p = a[t][t];
            for i in t + 1..m {
                let q = Integer::div_floor(&a[i][t], &p);
                if q != 0 {
                    for j in 0..n {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..m {
                        u[i][j] -= q * u[t][j];
                    }
                }
            }
            for j in t + 1..n {
                let q = Integer::div_floor(&a[t][j], &p);
                if q != 0 {
                    for i in 0..m {
                        a[i][j] -= q * a[i][t];
                    }
                    for i in 0..n {
                        v[i][j] -= q * v[i][t];
                    }
                }
            }
            let row_rest = (t + 1..m).filter(|&i| a[i][t] != 0).min_by_key(|&i| a[i][t].abs());
            let col_rest = (t + 1..n).filter(|&j| a[t][j] != 0).min_by_key(|&j| a[t][j].abs());
            match (row_rest, col_rest) {
                (None, None) => break,
                (Some(i), _) => {
                    a.swap(t, i);
                    u.swap(t, i);
                }
                (None, Some(j)) => {
                    swap_cols(&mut a, t, j);
                    swap_cols(&mut v, t, j);
                }
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        divisors.push(a[t][t]);
    }
    Diagonalization { u, v, divisors }
}

/// Rank of an integer matrix.
pub fn integer_rank(a: &[Vec<i64>], n: usize) -> usize {
    diagonalize(a, n).rank()
}

/// A system `Σ_j e_{ij} θ_j ≡ c_i (mod 1)`.
#[derive(Clone, Debug, Default)]
pub struct MonomialSystem {
    vars: usize,
    rows: Vec<Vec<i64>>,
    rhs: Vec<Exponent>,
    labels: Vec<String>,
}

impl MonomialSystem {
    pub fn new(vars: usize) -> Self {
        MonomialSystem { vars, ..Default::default() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Add `∏ x_j^{exps_j} = exp(2πi·rhs)`.
    pub fn push(&mut self, label: impl Into<String>, exps: Vec<i64>, rhs: Exponent) {
        assert_eq!(exps.len(), self.vars, "exponent vector has wrong length");
        self.rows.push(exps);
        self.rhs.push(frac(widen(rhs)));
        self.labels.push(label.into());
    }

    /// Add `∏ x_j^{exps_j} = value`, where `value` must be a root of unity.
    pub fn push_value(&mut self, label: impl Into<String>, exps: Vec<i64>, value: &Cyclotomic) -> Result<()> {
        let label = label.into();
        let e = value
            .root_of_unity_exponent()
            .ok_or_else(|| Error::NotRootOfUnity(format!("{value} in {label}")))?;
        self.push(label, exps, e);
        Ok(())
    }

    /// Does the exponent vector satisfy every congruence?
    pub fn is_solution(&self, theta: &[Exponent]) -> bool {
        self.rows.iter().zip(&self.rhs).all(|(row, c)| {
            let s: Ratio<i128> = row.iter().zip(theta).map(|(&e, &t)| widen(t) * e as i128).sum();
            frac(s - widen(*c)) == Ratio::from_integer(0)
        })
    }

    /// Solve; `None` when the system is inconsistent.
    pub fn solve(&self) -> Option<SolutionSpace> {
        let diag = diagonalize(&self.rows, self.vars);
        let den = self.rhs.iter().fold(1i128, |acc, c| acc.lcm(&(*c.denom() as i128)));
        let scaled: Vec<i128> = self.rhs.iter().map(|c| *c.numer() as i128 * (den / *c.denom() as i128)).collect();
        let uc: Vec<Ratio<i128>> = diag
            .u
            .iter()
            .map(|row| {
                let s = row.iter().zip(&scaled).fold(0i128, |acc, (&x, &c)| (acc + x.rem_euclid(den) * c).rem_euclid(den));
                Ratio::new(s, den)
            })
            .collect();
        let r = diag.rank();
        if uc.iter().skip(r).any(|x| *x.numer() != 0) {
            return None;
        }
        Some(SolutionSpace { vars: self.vars, targets: uc[..r].to_vec(), diag })
    }
}

/// Solution set of a consistent [`MonomialSystem`].
#[derive(Clone, Debug)]
pub struct SolutionSpace {
    vars: usize,
    targets: Vec<Ratio<i128>>,
    diag: Diagonalization,
}

impl SolutionSpace {
    pub fn rank(&self) -> usize {
        self.diag.rank()
    }

    /// Dimension of each connected component.
    pub fn torus_dim(&self) -> usize {
        self.vars - self.rank()
    }

    pub fn divisors(&self) -> &[i128] {
        &self.diag.divisors
    }

    /// Number of connected components, `∏ d_i`.
    pub fn component_count(&self) -> u128 {
        self.diag.divisors.iter().map(|&d| d as u128).product()
    }

    fn point(&self, shifts: &[i128], free: &[Ratio<i128>]) -> Vec<Exponent> {
        let r = self.rank();
        let mut phi: Vec<Ratio<i128>> = Vec::with_capacity(self.vars);
        for i in 0..r {
            phi.push((self.targets[i] + shifts[i]) / self.diag.divisors[i]);
        }
        phi.extend_from_slice(free);
        (0..self.vars)
            .map(|j| {
                let s: Ratio<i128> = (0..self.vars).map(|i| phi[i] * self.diag.v[j][i]).sum();
                frac(s)
            })
            .collect()
    }

    /// One point in each component, with the free coordinates set to 0.
    pub fn component_representatives(&self) -> Vec<Vec<Exponent>> {
        let free = vec![Ratio::from_integer(0); self.torus_dim()];
        self.shift_tuples().iter().map(|s| self.point(s, &free)).collect()
    }

    fn shift_tuples(&self) -> Vec<Vec<i128>> {
        let mut out = vec![Vec::new()];
        for &d in &self.diag.divisors {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..d).map(move |s| {
                        let mut t = t.clone();
                        t.push(s);
                        t
                    })
                })
                .collect();
        }
        out
    }

    /// All solutions whose free coordinates are multiples of `1/order`.
    ///
    /// For a finite solution set (`torus_dim() == 0`) this is every solution.
    pub fn enumerate(&self, order: i64) -> Vec<Vec<Exponent>> {
        let f = self.torus_dim();
        let mut frees: Vec<Vec<Ratio<i128>>> = vec![Vec::new()];
        for _ in 0..f {
            frees = frees
                .into_iter()
                .flat_map(|t| {
                    (0..order as i128).map(move |s| {
                        let mut t = t.clone();
                        t.push(Ratio::new(s, order as i128));
                        t
                    })
                })
                .collect();
        }
        let shifts = self.shift_tuples();
        let mut out: Vec<Vec<Exponent>> = shifts
            .iter()
            .flat_map(|s| frees.iter().map(move |fr| self.point(s, fr)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Number of orbits of a gauge action on the solution set.
    ///
    /// Column `k` of `gauge` (an `n × p` integer matrix) is the weight of the
    /// `k`-th gauge parameter on each unknown. The action preserves the
    /// system when `E·B = 0`; orbits are then finite in number exactly when
    /// the gauge torus sweeps each component, i.e. `rank B = torus_dim`.
    pub fn gauge_orbit_count(&self, system: &MonomialSystem, gauge: &[Vec<i64>], params: usize) -> Result<u128> {
        for row in system.rows() {
            for k in 0..params {
                let s: i64 = row.iter().zip(gauge).map(|(&e, g)| e * g[k]).sum();
                if s != 0 {
                    return Err(Error::Data("gauge action does not preserve the system".into()));
                }
            }
        }
        let rank_b = integer_rank(gauge, params);
        if rank_b != self.torus_dim() {
            return Err(Error::Infinite(format!(
                "gauge rank {} but solution torus has dimension {}",
                rank_b,
                self.torus_dim()
            )));
        }
        Ok(self.component_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Exponent {
        Ratio::new(n, d)
    }

    #[test]
    fn single_power_has_n_solutions() {
        let mut s = MonomialSystem::new(1);
        s.push("x^3=1", vec![3], q(0, 1));
        let sol = s.solve().unwrap();
        assert_eq!(sol.component_count(), 3);
        assert_eq!(sol.enumerate(1), vec![vec![q(0, 1)], vec![q(1, 3)], vec![q(2, 3)]]);
    }

    #[test]
    fn inconsistent_system() {
        let mut s = MonomialSystem::new(1);
        s.push("a", vec![2], q(0, 1));
        s.push("b", vec![4], q(1, 2));
        assert!(s.solve().is_none());
    }

    #[test]
    fn free_directions_and_gauge() {
        // x·y = -1 ; one free direction, gauge (1, -1) sweeps it.
        let mut s = MonomialSystem::new(2);
        s.push("xy", vec![1, 1], q(1, 2));
        let sol = s.solve().unwrap();
        assert_eq!(sol.torus_dim(), 1);
        assert_eq!(sol.enumerate(4).len(), 4);
        for p in sol.enumerate(4) {
            assert!(s.is_solution(&p));
        }
        assert_eq!(sol.gauge_orbit_count(&s, &[vec![1], vec![-1]], 1).unwrap(), 1);
        assert!(sol.gauge_orbit_count(&s, &[vec![1], vec![1]], 1).is_err());
    }

    #[test]
    fn push_value_rejects_non_roots() {
        let mut s = MonomialSystem::new(1);
        assert!(s.push_value("x", vec![1], &Cyclotomic::from_i64(2)).is_err());
        s.push_value("x", vec![2], &Cyclotomic::root_of_unity(3, 1)).unwrap();
        assert_eq!(s.solve().unwrap().enumerate(1).len(), 2);
    }

    fn brute(rows: &[Vec<i64>], rhs: &[Exponent], n: usize, order: i64) -> Vec<Vec<Exponent>> {
        let mut pts = vec![Vec::new()];
        for _ in 0..n {
            pts = pts
                .into_iter()
                .flat_map(|p: Vec<Exponent>| {
                    (0..order).map(move |j| {
                        let mut p = p.clone();
                        p.push(Ratio::new(j, order));
                        p
                    })
                })
                .collect();
        }
        let mut s = MonomialSystem::new(n);
        for (r, c) in rows.iter().zip(rhs) {
            s.push("", r.clone(), *c);
        }
        pts.into_iter().filter(|p| s.is_solution(p)).collect()
    }

    proptest! {
        #[test]
        fn finite_solutions_match_brute_force(
            rows in prop::collection::vec(prop::collection::vec(-3i64..4, 2), 2..4),
            nums in prop::collection::vec(0i64..12, 4),
        ) {
            let rhs: Vec<Exponent> = nums.iter().take(rows.len()).map(|&n| q(n, 12)).collect();
            let mut s = MonomialSystem::new(2);
            for (r, c) in rows.iter().zip(&rhs) {
                s.push("", r.clone(), *c);
            }
            match s.solve() {
                None => prop_assert!(brute(&rows, &rhs, 2, 72).is_empty()),
                Some(sol) => {
                    let pts = sol.enumerate(72);
                    for p in &pts {
                        prop_assert!(s.is_solution(p));
                    }
                    if sol.torus_dim() == 0 {
                        prop_assert_eq!(pts.len() as u128, sol.component_count());
                        let mut b = brute(&rows, &rhs, 2, 72);
                        b.sort();
                        // brute force only sees points with denominator dividing 72
                        for p in &b {
                            prop_assert!(pts.contains(p));
                        }
                    }
                }
            }
        }
    }
}
