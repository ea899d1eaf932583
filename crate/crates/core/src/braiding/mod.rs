//! Braidings on the maximal-group near-group categories.
//!
//! A commutativity structure is recorded by its values on the reduced bases:
//!
//! | map        | value                                   |
//! |------------|-----------------------------------------|
//! | `g⊗h → h⊗g` | scalar `σ₀(g,h)`                       |
//! | `g⊗m → m⊗g` | scalar `σ₁(g)`                         |
//! | `m⊗g → g⊗m` | scalar `σ₂(g)`                         |
//! | `m⊗m → m⊗m` | `σ₃(g)` on the summand `g`, the `k × k` matrix `σ₄` on the `m` summands |
//!
//! [`CommutingMaps`] holds arbitrary values of this shape and is what the
//! hexagon checkers consume. Any braiding compatible with the associator
//! data has σ₀ ≡ 1, σ₁ = σ₂ = χ_ω, σ₃(g) = σ₃(ε)χ_ω(g), and
//! `σ₄[i,j] = ψ(j)·[i = π(j⁻¹)]`, so it is pinned down by the constants
//! of a [`BraidingData`].
//!
//! Hexagons are checked two ways. [`hexagon`] transcribes the unreduced
//! equations family by family; [`oracle`] composes the two sides of every
//! hexagon from labelled trees. Inverse hexagons are the forward hexagons
//! of the reversed braiding `c'(x,y) = c(y,x)⁻¹`.

pub mod constraints;
pub mod hexagon;
pub mod oracle;

use serde::{Deserialize, Serialize};

use crate::associator::{IndexAlgebra, NearGroupData};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::monomial::Exponent;
use crate::pentagon::VerificationReport;

pub use constraints::{hexagon_constraints, HexagonConstraint};
pub use hexagon::verify_hexagon_maps;
pub use oracle::hexagon_oracle_report;

/// Index of `χ_ω = χ_i χ_{π(i)} χ_{π⁻¹(i)}`, which does not depend on `i`.
pub fn omega_index(alg: &IndexAlgebra) -> usize {
    if alg.k() == 0 {
        return 0;
    }
    alg.star(alg.star(1, alg.pi(1)), alg.pi_inv(1))
}

/// Values of the commuting isomorphisms on the reduced bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingMaps {
    /// `sigma0[g][h] = σ₀(g,h)`
    pub sigma0: Vec<Vec<Cyclotomic>>,
    pub sigma1: Vec<Cyclotomic>,
    pub sigma2: Vec<Cyclotomic>,
    pub sigma3: Vec<Cyclotomic>,
    /// `sigma4[new, old]` on the basis of `hom(m, m⊗m)`.
    pub sigma4: Matrix,
}

impl CommutingMaps {
    /// The maps of the reversed braiding `c'(x,y) = c(y,x)⁻¹`.
    pub fn reversed(&self) -> Result<Self> {
        let inv = |v: &Cyclotomic| v.inv();
        let n = self.sigma1.len();
        let sigma0 = (0..n)
            .map(|g| (0..n).map(|h| inv(&self.sigma0[h][g])).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(CommutingMaps {
            sigma0,
            sigma1: self.sigma2.iter().map(inv).collect::<Result<_>>()?,
            sigma2: self.sigma1.iter().map(inv).collect::<Result<_>>()?,
            sigma3: self.sigma3.iter().map(inv).collect::<Result<_>>()?,
            sigma4: self.sigma4.inverse()?,
        })
    }

    /// `σ₀(g,h)σ₀(h,g) = 1`, `σ₁σ₂ = 1`, `σ₃² = 1` and `σ₄² = ID`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.sigma1.len();
        let one = Cyclotomic::one();
        let s0 = (0..n).all(|g| (0..n).all(|h| &self.sigma0[g][h] * &self.sigma0[h][g] == one));
        let s12 = self.sigma1.iter().zip(&self.sigma2).all(|(a, b)| a * b == one);
        let s3 = self.sigma3.iter().all(|s| s * s == one);
        let s4 = self.sigma4.mul(&self.sigma4) == Matrix::identity(self.sigma4.rows());
        s0 && s12 && s3 && s4
    }
}

/// The constants `σ₃(ε)` and `ψ(1..k)` of a braiding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidingData {
    pub sigma3_eps: Cyclotomic,
    /// `psi[j-1] = ψ(j)`
    pub psi: Vec<Cyclotomic>,
}

impl BraidingData {
    /// `σ₃(ε) = ψ(j) = 1`.
    pub fn trivial(k: usize) -> Self {
        BraidingData { sigma3_eps: Cyclotomic::one(), psi: vec![Cyclotomic::one(); k] }
    }

    pub fn from_exponents(theta: &[Exponent]) -> Self {
        BraidingData {
            sigma3_eps: Cyclotomic::exp_2pi_i(theta[0]),
            psi: theta[1..].iter().map(|&t| Cyclotomic::exp_2pi_i(t)).collect(),
        }
    }

    pub fn psi(&self, j: usize) -> &Cyclotomic {
        &self.psi[j - 1]
    }

    fn check_shape(&self, data: &NearGroupData) -> Result<()> {
        if self.psi.len() != data.k() {
            return Err(Error::Dimension(format!("expected {} values of psi, got {}", data.k(), self.psi.len())));
        }
        if self.sigma3_eps.is_zero() || self.psi.iter().any(Cyclotomic::is_zero) {
            return Err(Error::Data("braiding constants must be invertible".into()));
        }
        Ok(())
    }

    /// The commuting maps these constants determine.
    pub fn maps(&self, data: &NearGroupData) -> Result<CommutingMaps> {
        self.check_shape(data)?;
        let g = data.group();
        let alg = &data.alg;
        let w = omega_index(alg);
        let chi_w: Vec<Cyclotomic> = g.elements().map(|x| g.character(w, x)).collect();
        let n = g.order();
        let k = data.k();
        Ok(CommutingMaps {
            sigma0: vec![vec![Cyclotomic::one(); n]; n],
            sigma1: chi_w.clone(),
            sigma2: chi_w.clone(),
            sigma3: chi_w.iter().map(|c| &self.sigma3_eps * c).collect(),
            sigma4: Matrix::from_fn(k, k, |i, j| {
                if i + 1 == alg.pi(alg.inv(j + 1)) {
                    self.psi(j + 1).clone()
                } else {
                    Cyclotomic::zero()
                }
            }),
        })
    }

    /// Constants of the reversed braiding: `σ₃(ε)⁻¹` and `ψ'(j) = ψ(π(j⁻¹))⁻¹`.
    pub fn reversed(&self, data: &NearGroupData) -> Result<Self> {
        self.check_shape(data)?;
        let alg = &data.alg;
        Ok(BraidingData {
            sigma3_eps: self.sigma3_eps.inv()?,
            psi: (1..=data.k()).map(|j| self.psi(alg.pi(alg.inv(j))).inv()).collect::<Result<_>>()?,
        })
    }

    /// Largest multiplicative order among the constants, if all are roots of unity.
    pub fn root_order(&self) -> Option<i64> {
        std::iter::once(&self.sigma3_eps)
            .chain(&self.psi)
            .map(|v| v.root_of_unity_exponent().map(|e| *e.denom()))
            .try_fold(1i64, |acc, d| d.map(|d| acc.max(d)))
    }
}

/// Forward and inverse hexagons for the braiding, by the transcribed families.
///
/// Families of the inverse hexagons carry the prefix `inverse `.
pub fn verify_hexagons(data: &NearGroupData, braiding: &BraidingData) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let maps = braiding.maps(data)?;
    let mut report = verify_hexagon_maps(data, &maps);
    let inverse = verify_hexagon_maps(data, &maps.reversed()?);
    report.families.extend(inverse.families.into_iter().map(|mut f| {
        f.family = format!("inverse {}", f.family);
        for fail in &mut f.failures {
            fail.eq = format!("inverse {}", fail.eq);
        }
        f
    }));
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Forward and inverse hexagons by the tree-based oracle.
pub fn verify_hexagons_oracle(data: &NearGroupData, braiding: &BraidingData) -> Result<VerificationReport> {
    let maps = braiding.maps(data)?;
    let mut report = hexagon_oracle_report(data, &maps);
    let inverse = hexagon_oracle_report(data, &maps.reversed()?);
    report.families.extend(inverse.families.into_iter().map(|mut f| {
        f.family = format!("inverse {}", f.family);
        f
    }));
    Ok(report)
}

/// Does applying the braiding twice give the identity everywhere?
pub fn is_symmetric(data: &NearGroupData, braiding: &BraidingData) -> Result<bool> {
    Ok(braiding.maps(data)?.is_symmetric())
}

/// Outcome of [`search_braidings`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidingSearch {
    /// Solutions of the reduced hexagon constraints, before any check.
    pub candidates: Vec<BraidingData>,
    /// Candidates passing every forward and inverse hexagon.
    pub braidings: Vec<BraidingData>,
    /// Dimension of the solution torus of the reduced constraints.
    pub torus_dim: usize,
    /// Root-of-unity order actually covered by the search.
    pub order_bound: i64,
}

/// Solve the reduced hexagon constraints exactly and keep the solutions that
/// pass the full forward and inverse hexagon suite.
///
/// A finite solution set is returned in full, and `order_bound` grows to the
/// largest order that occurs. If the solutions form a positive-dimensional
/// torus, free coordinates range over the `root_order_bound`-th roots of
/// unity.
pub fn search_braidings(data: &NearGroupData, root_order_bound: i64) -> Result<BraidingSearch> {
    use rayon::prelude::*;
    let system = constraints::constraint_system(&hexagon_constraints(data)?)?;
    let Some(space) = system.solve() else {
        return Ok(BraidingSearch { candidates: vec![], braidings: vec![], torus_dim: 0, order_bound: root_order_bound });
    };
    let points = space.enumerate(root_order_bound.max(1));
    let candidates: Vec<BraidingData> = points.iter().map(|p| BraidingData::from_exponents(p)).collect();
    let order_bound = points
        .iter()
        .flatten()
        .map(|e| *e.denom())
        .fold(root_order_bound, i64::max);
    let keep: Vec<bool> = candidates
        .par_iter()
        .map(|b| verify_hexagons(data, b).map(|r| r.passed()))
        .collect::<Result<_>>()?;
    let braidings = candidates.iter().zip(keep).filter(|(_, k)| *k).map(|(b, _)| b.clone()).collect();
    Ok(BraidingSearch { candidates, braidings, torus_dim: space.torus_dim(), order_bound })
}

/// Every braiding, in a deterministic order.
pub fn enumerate_braidings(data: &NearGroupData, root_order_bound: i64) -> Result<Vec<BraidingData>> {
    Ok(search_braidings(data, root_order_bound)?.braidings)
}

/// A twist value on `m`; twists on group objects are all 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistData {
    pub theta_m: Cyclotomic,
}

/// Do `σ₃(ε)²θ_m² = 1` and `ψ(j)ψ(π(j⁻¹)) = θ_m` hold for every `j`?
pub fn twist_equations_hold(data: &NearGroupData, braiding: &BraidingData, theta_m: &Cyclotomic) -> bool {
    let alg = &data.alg;
    let s = &braiding.sigma3_eps;
    let first = &(s * s) * &(theta_m * theta_m) == Cyclotomic::one();
    first && (1..=data.k()).all(|j| &(braiding.psi(j) * braiding.psi(alg.pi(alg.inv(j)))) == theta_m)
}

/// All twists balancing the braiding; empty when it is not balanced.
///
/// The last twist equation fixes `θ_m` from `j = 1`, so there is at most
/// one solution.
pub fn twist_solutions(data: &NearGroupData, braiding: &BraidingData) -> Result<Vec<TwistData>> {
    braiding.check_shape(data)?;
    if data.k() == 0 {
        return Ok(vec![]);
    }
    let alg = &data.alg;
    let theta = braiding.psi(1) * braiding.psi(alg.pi(alg.inv(1)));
    Ok(if twist_equations_hold(data, braiding, &theta) { vec![TwistData { theta_m: theta }] } else { vec![] })
}
