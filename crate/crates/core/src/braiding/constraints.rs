//! Reduced hexagon constraints on `σ₃(ε)` and `ψ(1..k)`.
//!
//! Substituting the structure of a braiding into the hexagons leaves only
//! monomial equations in the unknowns. Each [`HexagonConstraint`] reads
//! `σ₃(ε)^{e₀} ∏ ψ(j)^{e_j} = value`, with the primitive data `ξ, c_ε, N`
//! and the sign `δ` folded into `value`. Labels name the hexagon piece the
//! constraint comes from, followed by its free indices.
//!
//! Instances whose derivation would need `N(r, s)` with `r * s = ε` do not
//! arise from a nonzero matrix entry and are left out.

use super::{omega_index, BraidingData};
use crate::associator::NearGroupData;
use crate::cyclotomic::Cyclotomic;
use crate::error::Result;
use crate::monomial::MonomialSystem;

/// `∏ x_j^{exponents_j} = value` over `x = (σ₃(ε), ψ(1), …, ψ(k))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexagonConstraint {
    pub label: String,
    pub exponents: Vec<i64>,
    pub value: Cyclotomic,
}

impl HexagonConstraint {
    /// Evaluate on concrete constants.
    pub fn holds(&self, b: &BraidingData) -> Result<bool> {
        let mut lhs = b.sigma3_eps.pow(self.exponents[0])?;
        for (j, &e) in self.exponents.iter().enumerate().skip(1) {
            if e != 0 {
                lhs = &lhs * &b.psi(j).pow(e)?;
            }
        }
        Ok(lhs == self.value)
    }

    /// Human-readable form such as `σ3^-1 ψ1 ψ2 = 1`.
    pub fn display(&self) -> String {
        let mut terms = Vec::new();
        for (j, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = if j == 0 { "σ3".to_string() } else { format!("ψ{j}") };
            terms.push(if e == 1 { name } else { format!("{name}^{e}") });
        }
        format!("{} = {}", if terms.is_empty() { "1".into() } else { terms.join(" ") }, self.value)
    }
}

struct Builder {
    k: usize,
    out: Vec<HexagonConstraint>,
}

impl Builder {
    /// `vars` are `(slot, exponent)` with slot 0 for `σ₃(ε)` and `j` for `ψ(j)`.
    fn push(&mut self, label: String, vars: &[(usize, i64)], num: &[&Cyclotomic], den: &[&Cyclotomic]) -> Result<()> {
        let mut exponents = vec![0; self.k + 1];
        for &(v, e) in vars {
            exponents[v] += e;
        }
        let mut value = Cyclotomic::one();
        for x in num {
            value = &value * *x;
        }
        for x in den {
            value = value.div(x)?;
        }
        self.out.push(HexagonConstraint { label, exponents, value });
        Ok(())
    }
}

/// The reduced constraints for the data's primitive values.
pub fn hexagon_constraints(data: &NearGroupData) -> Result<Vec<HexagonConstraint>> {
    let prim = data.extract_primitive().unwrap_or_else(|_| data.primitive.clone());
    let alg = &data.alg;
    let k = alg.k();
    let (star, inv, pi, pinv) = (|a, b| alg.star(a, b), |a| alg.inv(a), |a| alg.pi(a), |a| alg.pi_inv(a));
    let xi = |i: usize| prim.xi(i);
    let c = |i: usize| prim.c(i);
    let n = |r: usize, s: usize| (star(r, s) != 0).then(|| prim.n(r, s));
    let w = omega_index(alg);
    let mut b = Builder { k, out: Vec::new() };

    for r in 1..=k {
        b.push(format!("mmm/g[r={r}]"), &[(r, 1), (inv(pi(r)), 1), (0, -1)], &[xi(r), xi(pi(r))], &[xi(pi(inv(r)))])?;
    }
    for r in 1..=k {
        let rp = star(r, pi(r));
        if rp == 0 {
            continue;
        }
        let Some(nv) = n(r, pi(r)) else { continue };
        b.push(format!("mmm/m:IV-diagonal[r={r}]"), &[(inv(r), 1), (pinv(rp), 1)], &[c(rp)], &[nv, xi(pinv(r)), c(pinv(r))])?;
    }
    for r in 1..=k {
        for s in 1..=k {
            if s == pi(r) || s == inv(r) {
                continue;
            }
            let rs = star(r, s);
            let second = star(pi(s), inv(pi(rs)));
            let (Some(n1), Some(n2), Some(n3)) = (n(r, pi(inv(s))), n(r, s), n(pi(inv(rs)), second)) else {
                continue;
            };
            b.push(
                format!("mmm/m:IV-offdiagonal[r={r},s={s}]"),
                &[(s, 1), (pinv(star(inv(s), pi(r))), 1), (rs, -1)],
                &[n2, n3],
                &[n1],
            )?;
        }
    }

    if w == 0 {
        let delta = prim.delta_value();
        b.push("mmm/m:I".into(), &[(0, 2)], &[&delta], &[])?;
        for r in 1..=k {
            let Some(nv) = n(pi(inv(r)), pinv(inv(r))) else { continue };
            b.push(format!("mmm/m:II[r={r}]"), &[(0, 1), (inv(pi(r)), 1), (r, -1)], &[nv], &[])?;
        }
    } else {
        b.push("mmm/m:I".into(), &[(0, 2), (w, -1)], &[], &[xi(w)])?;
        b.push("mmm/m:II[r=ω]".into(), &[(0, 1), (pinv(w), 1)], &[], &[])?;
        for r in (1..=k).filter(|&r| r != w) {
            let wr = star(w, inv(r));
            if let Some(nv) = n(pi(wr), pinv(wr)) {
                b.push(format!("mmm/m:II[r={r}]"), &[(0, 1), (inv(pi(r)), 1), (star(w, r), -1)], &[nv], &[])?;
            }
            if let Some(nv) = n(pi(r), pinv(r)) {
                let wr2 = star(w, r);
                b.push(
                    format!("mmm/m:III[r={r}]"),
                    &[(0, 1), (pinv(r), 1), (wr, -1)],
                    &[xi(r), c(r), nv],
                    &[xi(wr2), c(wr2)],
                )?;
            }
        }
    }
    Ok(b.out)
}

/// The constraints as a monomial system; every value must be a root of unity.
pub fn constraint_system(constraints: &[HexagonConstraint]) -> Result<MonomialSystem> {
    let vars = constraints.first().map_or(1, |c| c.exponents.len());
    let mut sys = MonomialSystem::new(vars);
    for c in constraints {
        sys.push_value(c.label.clone(), c.exponents.clone(), &c.value)?;
    }
    Ok(sys)
}
