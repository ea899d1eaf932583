//! The pentagon `mmmm/m` as functional equations in the primitive data
//! `(δ, ξ, c_ε, N)`.
//!
//! Family `mmmm/m:n-only` collects the entries where both composites stay
//! inside the `N` block. From k = 5 on these relations do not follow from the
//! other nine families.
//!
//! Each instance is a monomial identity `∏ lhs = ∏ rhs` in the unknowns. The
//! same list is evaluated directly on a primitive and is also turned into a
//! monomial system whose solutions up to gauge are the monoidal structures.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::associator::{IndexAlgebra, NearGroupPrimitive};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::monomial::{Exponent, MonomialSystem, SolutionSpace};

use super::{Failure, FamilyReport, VerificationReport};

pub const FUNCTIONAL_FAMILIES: [&str; 10] = ["mmmm/m:c-xi3", "mmmm/m:xi-c", "mmmm/m:c-sign", "mmmm/m:c-nn", "mmmm/m:xi-c-dual", "mmmm/m:xi-c-nn", "mmmm/m:c-n-xi", "mmmm/m:xi-n-c", "mmmm/m:c-xi-nn", "mmmm/m:n-only"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Delta,
    Xi(usize),
    C(usize),
    N(usize, usize),
}

/// One instance: `∏ vars^exp` over the left factors equals the same over the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveEquation {
    pub family: &'static str,
    pub indices: BTreeMap<String, usize>,
    pub lhs: Vec<(Var, i64)>,
    pub rhs: Vec<(Var, i64)>,
}

impl PrimitiveEquation {
    fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lhs.iter().chain(&self.rhs).map(|&(v, _)| v)
    }

    /// Net exponent of each unknown in `lhs / rhs`.
    pub fn exponents(&self) -> BTreeMap<Var, i64> {
        let mut out = BTreeMap::new();
        for &(v, e) in &self.lhs {
            *out.entry(v).or_insert(0) += e;
        }
        for &(v, e) in &self.rhs {
            *out.entry(v).or_insert(0) -= e;
        }
        out.retain(|_, e| *e != 0);
        out
    }
}

fn legal(alg: &IndexAlgebra, v: Var) -> bool {
    match v {
        Var::Delta => true,
        Var::Xi(i) | Var::C(i) => i != 0,
        Var::N(r, s) => r != 0 && s != 0 && alg.star(r, s) != 0,
    }
}

/// All legal instances: every argument is a nontrivial index and
/// every `N(r, s)` has `r * s ≠ ε`.
pub fn equations(alg: &IndexAlgebra) -> Vec<PrimitiveEquation> {
    use Var::*;
    let k = alg.k();
    let (inv, star, pi, pinv) = (|i| alg.inv(i), |i, j| alg.star(i, j), |i| alg.pi(i), |i| alg.pi_inv(i));
    let mut out = Vec::new();
    let mut push = |family: &'static str, ij: &[(&str, usize)], lhs: Vec<(Var, i64)>, rhs: Vec<(Var, i64)>| {
        let eq = PrimitiveEquation {
            family,
            indices: ij.iter().map(|&(n, v)| (n.to_string(), v)).collect(),
            lhs,
            rhs,
        };
        if eq.vars().all(|v| legal(alg, v)) {
            out.push(eq);
        }
    };
    for i in 1..=k {
        let at = [("i", i)];
        push("mmmm/m:c-xi3", &at, vec![(C(i), 1), (C(pinv(i)), -1)], vec![(Delta, 1), (Xi(inv(i)), 1), (Xi(pi(inv(i))), 1), (Xi(pinv(i)), 1)]);
        push("mmmm/m:xi-c", &at, vec![(Xi(i), 1), (C(i), 1)], vec![(Delta, 1), (Xi(pi(inv(i))), 1), (C(pi(inv(i))), 1)]);
        push("mmmm/m:c-sign", &at, vec![(C(i), 1)], vec![(Delta, 1), (C(inv(pi(i))), 1)]);
        push("mmmm/m:xi-c-dual", &at, vec![(Xi(i), 1), (C(i), 1)], vec![(Delta, 1), (Xi(pi(inv(i))), 1), (C(pi(inv(i))), 1)]);
    }
    for i in 1..=k {
        for j in 1..=k {
            let at = [("i", i), ("j", j)];
            push("mmmm/m:c-nn", &at, vec![(C(i), 1)], vec![(C(j), 1), (N(star(i, inv(j)), j), 1), (N(star(pi(j), inv(pi(i))), inv(pi(j))), 1)]);
            let p = star(pinv(i), pi(inv(j)));
            push("mmmm/m:xi-c-nn", &at, vec![(Xi(p), 1), (C(p), 1)], vec![(Xi(pinv(i)), 1), (C(pinv(i)), 1), (N(i, star(inv(i), j)), 1), (N(inv(i), j), 1)]);
            let ij = star(i, j);
            push("mmmm/m:c-n-xi", &at, vec![(C(i), 1), (N(i, j), 1)], vec![(Xi(j), 1), (C(ij), 1), (N(inv(pi(ij)), pi(j)), 1)]);
            push(
                "mmmm/m:xi-n-c",
                &at,
                vec![(Xi(pinv(i)), 1), (N(i, j), 1), (C(pinv(i)), 1)],
                vec![(Xi(pi(star(pinv(j), pi(i)))), 1), (Xi(pinv(ij)), 1), (N(j, inv(ij)), 1), (C(pinv(ij)), 1)],
            );
            push("mmmm/m:c-xi-nn", &at, vec![(C(inv(ij)), 1), (C(j), -1), (Xi(j), -1)], vec![(N(star(pinv(i), pi(j)), inv(pi(j))), 1), (N(pinv(i), pi(j)), 1)]);
        }
    }
    // Both pentagon paths routed entirely through the N block. `phi` is the
    // row pair that the N block assigns to column pair (r, s).
    let phi = |r: usize, s: usize| {
        let rs = star(r, s);
        (rs != 0).then(|| (rs, alg.circ_solve(rs, r)))
    };
    for a1 in 1..=k {
        for a2 in 1..=k {
            for a3 in 1..=k {
                let Some((t, b1)) = phi(a3, a2) else { continue };
                let Some((b3, b2)) = phi(t, a1) else { continue };
                let Some((g2, g1)) = phi(a2, a1) else { continue };
                let Some((e3, d1)) = phi(a3, g2) else { continue };
                let Some((e2, e1)) = phi(d1, g1) else { continue };
                if (e1, e2, e3) != (b1, b2, b3) {
                    continue;
                }
                push(
                    "mmmm/m:n-only",
                    &[("i", a1), ("j", a2), ("l", a3)],
                    vec![(N(a3, a2), 1), (N(t, a1), 1)],
                    vec![(N(a2, a1), 1), (N(a3, g2), 1), (N(d1, g1), 1)],
                );
            }
        }
    }
    out
}

fn value(prim: &NearGroupPrimitive, v: Var) -> Cyclotomic {
    match v {
        Var::Delta => prim.delta_value(),
        Var::Xi(i) => prim.xi(i).clone(),
        Var::C(i) => prim.c(i).clone(),
        Var::N(r, s) => prim.n(r, s).clone(),
    }
}

fn product(prim: &NearGroupPrimitive, side: &[(Var, i64)]) -> Cyclotomic {
    side.iter().fold(Cyclotomic::one(), |acc, &(v, e)| {
        &acc * &value(prim, v).pow(e).expect("primitive values are invertible")
    })
}

/// Evaluate every instance of every family.
pub fn verify_mmmm_m(prim: &NearGroupPrimitive, alg: &IndexAlgebra) -> VerificationReport {
    let start = Instant::now();
    let eqs = equations(alg);
    let families = FUNCTIONAL_FAMILIES
        .iter()
        .map(|fam| {
            let mine: Vec<&PrimitiveEquation> = eqs.iter().filter(|e| e.family == *fam).collect();
            let failures = mine
                .iter()
                .filter_map(|e| {
                    let (l, r) = (product(prim, &e.lhs), product(prim, &e.rhs));
                    (l != r).then(|| Failure { eq: fam.to_string(), indices: e.indices.clone(), lhs: l, rhs: r })
                })
                .collect();
            FamilyReport::new(*fam, mine.len(), failures)
        })
        .collect();
    VerificationReport { families, elapsed_ms: start.elapsed().as_millis() }
}

/// Ordering of the unknowns used for the monomial system and gauge weights.
#[derive(Clone, Debug)]
pub struct VarIndex {
    vars: Vec<Var>,
}

impl VarIndex {
    pub fn new(alg: &IndexAlgebra) -> Self {
        let k = alg.k();
        let mut vars = vec![Var::Delta];
        vars.extend((1..=k).map(Var::Xi));
        vars.extend((1..=k).map(Var::C));
        for r in 1..=k {
            for s in 1..=k {
                if alg.star(r, s) != 0 {
                    vars.push(Var::N(r, s));
                }
            }
        }
        VarIndex { vars }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn position(&self, v: Var) -> usize {
        self.vars.iter().position(|&x| x == v).expect("known variable")
    }

    pub fn row(&self, eq: &PrimitiveEquation) -> Vec<i64> {
        let mut row = vec![0; self.len()];
        for (v, e) in eq.exponents() {
            row[self.position(v)] += e;
        }
        row
    }

    /// Turn exponents `θ` into the primitive with values `exp(2πiθ)`.
    pub fn primitive(&self, theta: &[Exponent]) -> Result<NearGroupPrimitive> {
        let k = self.vars.iter().filter(|v| matches!(v, Var::Xi(_))).count();
        let mut prim = NearGroupPrimitive {
            delta: 1,
            xi: vec![Cyclotomic::one(); k],
            c_eps: vec![Cyclotomic::one(); k],
            n_func: BTreeMap::new(),
        };
        for (&v, &t) in self.vars.iter().zip(theta) {
            let val = Cyclotomic::exp_2pi_i(t);
            match v {
                Var::Delta => {
                    prim.delta = if val.is_one() {
                        1
                    } else if (-&val).is_one() {
                        -1
                    } else {
                        return Err(Error::Data(format!("delta exponent {t} is not 0 or 1/2")));
                    }
                }
                Var::Xi(i) => prim.xi[i - 1] = val,
                Var::C(i) => prim.c_eps[i - 1] = val,
                Var::N(r, s) => {
                    prim.n_func.insert((r, s), val);
                }
            }
        }
        Ok(prim)
    }
}

/// Gauge weights: rescaling the basis vector `i` of `hom(m, m⊗m)` by `u_i`
/// and every `hom(g, m⊗m)` by `t`. Columns are `u_1 … u_k, t`.
pub fn gauge_weight(alg: &IndexAlgebra, v: Var) -> Vec<i64> {
    let k = alg.k();
    let mut w = vec![0i64; k + 1];
    match v {
        Var::Delta => {}
        Var::Xi(j) => {
            w[j - 1] += 1;
            w[alg.pi(j) - 1] -= 1;
        }
        Var::C(i) => {
            w[k] += 1;
            w[i - 1] -= 1;
            w[alg.circ_inv(i) - 1] -= 1;
        }
        Var::N(r, s) => {
            let i = alg.star(r, s);
            let j = alg.circ_solve(i, r);
            w[r - 1] += 1;
            w[s - 1] += 1;
            w[i - 1] -= 1;
            w[j - 1] -= 1;
        }
    }
    w
}

/// Apply the gauge transformation with parameters `u_1 … u_k, t`.
pub fn gauge_transform(alg: &IndexAlgebra, prim: &NearGroupPrimitive, params: &[Cyclotomic]) -> Result<NearGroupPrimitive> {
    let scale = |v: Var, x: &Cyclotomic| -> Result<Cyclotomic> {
        let mut out = x.clone();
        for (p, &e) in params.iter().zip(&gauge_weight(alg, v)) {
            out = &out * &p.pow(e)?;
        }
        Ok(out)
    };
    let mut out = prim.clone();
    for i in 1..=alg.k() {
        out.xi[i - 1] = scale(Var::Xi(i), prim.xi(i))?;
        out.c_eps[i - 1] = scale(Var::C(i), prim.c(i))?;
    }
    for (&(r, s), x) in &prim.n_func {
        out.n_func.insert((r, s), scale(Var::N(r, s), x)?);
    }
    Ok(out)
}

/// Equations whose two sides carry different gauge weight.
pub fn non_covariant(alg: &IndexAlgebra) -> Vec<PrimitiveEquation> {
    equations(alg)
        .into_iter()
        .filter(|eq| {
            let mut total = vec![0i64; alg.k() + 1];
            for (v, e) in eq.exponents() {
                for (t, w) in total.iter_mut().zip(gauge_weight(alg, v)) {
                    *t += e * w;
                }
            }
            total.iter().any(|&x| x != 0)
        })
        .collect()
}

/// All equations as a monomial system, together with `δ² = 1`.
pub fn monoidal_system(alg: &IndexAlgebra) -> (VarIndex, MonomialSystem) {
    let idx = VarIndex::new(alg);
    let mut sys = MonomialSystem::new(idx.len());
    let mut delta = vec![0; idx.len()];
    delta[idx.position(Var::Delta)] = 2;
    sys.push("delta^2", delta, Exponent::from_integer(0));
    for eq in equations(alg) {
        let label = format!("({}) {:?}", eq.family, eq.indices);
        sys.push(label, idx.row(&eq), Exponent::from_integer(0));
    }
    (idx, sys)
}

/// Solution set of the functional equations and its gauge-orbit count.
#[derive(Clone, Debug)]
pub struct MonoidalCount {
    pub vars: VarIndex,
    pub system: MonomialSystem,
    pub solutions: SolutionSpace,
    pub orbits: u128,
    /// One primitive per connected component of the solution set.
    pub representatives: Vec<NearGroupPrimitive>,
}

pub fn count_monoidal_structures(alg: &IndexAlgebra) -> Result<MonoidalCount> {
    let (vars, system) = monoidal_system(alg);
    let solutions = system.solve().ok_or_else(|| Error::Data("functional equations are inconsistent".into()))?;
    let gauge: Vec<Vec<i64>> = vars.vars().iter().map(|&v| gauge_weight(alg, v)).collect();
    let orbits = solutions.gauge_orbit_count(&system, &gauge, alg.k() + 1)?;
    let representatives = solutions
        .component_representatives()
        .iter()
        .map(|theta| vars.primitive(theta))
        .collect::<Result<Vec<_>>>()?;
    Ok(MonoidalCount { vars, system, solutions, orbits, representatives })
}
