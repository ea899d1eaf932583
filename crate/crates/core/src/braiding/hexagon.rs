//! The unreduced hexagon equations, one family per word and summand.
//!
//! A family `xyz/w` holds the hexagon for braiding `x` past `y⊗z`, on the
//! `w` summands. Letters `a, b, c` range over `G`. The `mmm/m` hexagon is
//! split by the labels of the internal edges of its source and target trees:
//!
//! | part | source edge | target edge |
//! |------|-------------|-------------|
//! | I    | `g`         | `h`         |
//! | II   | `g`         | `(i,j)`     |
//! | III  | `(r,s)`     | `g`         |
//! | IV   | `(r,s)`     | `(i,j)`     |
//!
//! The `μ` entries are read from the blocks of the associator data, so these
//! checks apply to any data, including data that fails the pentagon.

use std::collections::BTreeMap;
use std::time::Instant;

use super::CommutingMaps;
use crate::associator::NearGroupData;
use crate::cyclotomic::Cyclotomic;
use crate::matrix::Matrix;
use crate::pentagon::{Failure, FamilyReport, VerificationReport};

/// Family names in report order.
pub const HEXAGON_FAMILIES: [&str; 15] = [
    "abc/abc", "abm/m", "amb/m", "mab/m", "mma/b", "mam/b", "amm/b", "mma/m", "mam/m", "amm/m", "mmm/g", "mmm/m:I",
    "mmm/m:II", "mmm/m:III", "mmm/m:IV",
];

#[derive(Default)]
struct Tally {
    counts: BTreeMap<&'static str, usize>,
    failures: BTreeMap<&'static str, Vec<Failure>>,
}

impl Tally {
    fn check(&mut self, family: &'static str, idx: &[(&str, usize)], lhs: Cyclotomic, rhs: Cyclotomic) {
        *self.counts.entry(family).or_default() += 1;
        if lhs != rhs {
            self.failures.entry(family).or_default().push(Failure {
                eq: family.to_string(),
                indices: idx.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
                lhs,
                rhs,
            });
        }
    }

    fn check_matrix(&mut self, family: &'static str, idx: &[(&str, usize)], lhs: &Matrix, rhs: &Matrix) {
        for i in 0..lhs.rows() {
            for j in 0..lhs.cols() {
                let mut full = idx.to_vec();
                full.extend([("i", i + 1), ("j", j + 1)]);
                self.check(family, &full, lhs.get(i, j).clone(), rhs.get(i, j).clone());
            }
        }
    }

    fn finish(mut self, start: Instant) -> VerificationReport {
        let families = HEXAGON_FAMILIES
            .iter()
            .map(|&f| FamilyReport::new(f, self.counts.get(f).copied().unwrap_or(0), self.failures.remove(f).unwrap_or_default()))
            .collect();
        VerificationReport { families, elapsed_ms: start.elapsed().as_millis() }
    }
}

/// Check every unreduced hexagon for the given commuting maps.
pub fn verify_hexagon_maps(data: &NearGroupData, s: &CommutingMaps) -> VerificationReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let grp = data.group();
    let (n, k) = (grp.order(), data.k());
    let mul = |a: usize, b: usize| grp.mul(a, b);
    let inv = |a: usize| grp.inv(a);

    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                t.check(
                    "abc/abc",
                    &[("a", a), ("b", b), ("c", c)],
                    &s.sigma0[a][c] * &s.sigma0[a][b],
                    s.sigma0[a][mul(b, c)].clone(),
                );
            }
            let ab = [("a", a), ("b", b)];
            t.check("abm/m", &ab, &s.sigma1[a] * &s.sigma0[a][b], s.sigma1[a].clone());
            t.check("amb/m", &ab, &s.sigma0[a][b] * &s.sigma1[a], s.sigma1[a].clone());
            t.check("mab/m", &ab, &s.sigma2[b] * &s.sigma2[a], s.sigma2[mul(a, b)].clone());
            let ba = mul(b, inv(a));
            t.check("mma/b", &ab, &s.sigma2[a] * &s.sigma3[ba], s.sigma3[b].clone());
            t.check("mam/b", &ab, &s.sigma3[ba] * &s.sigma2[a], s.sigma3[b].clone());
            t.check("amm/b", &ab, &s.sigma1[a] * &s.sigma1[a], s.sigma0[a][ba].clone());
        }
    }

    let s4 = &s.sigma4;
    for a in 0..n {
        let (g1, g2, g3) = (&data.gamma1[a], &data.gamma2[a], &data.gamma3[a]);
        let idx = [("a", a)];
        t.check_matrix("mma/m", &idx, &g3.scale(&s.sigma2[a]).mul(s4), &g2.mul(s4).mul(g3));
        t.check_matrix("mam/m", &idx, &s4.mul(g1).scale(&s.sigma2[a]), &g1.mul(s4).mul(g2));
        t.check_matrix("amm/m", &idx, &g2.scale(&(&s.sigma1[a] * &s.sigma1[a])), &g3.mul(g1).scale(&s.sigma1[a]));
    }
    for g in 0..n {
        let lam = &data.lambda[g];
        t.check_matrix("mmm/g", &[("g", g)], &s4.mul(lam).mul(s4), &lam.mul(lam).scale(&s.sigma3[g]));
    }

    mmm_m(data, s, &mut t, n, k);
    t.finish(start)
}

fn mmm_m(data: &NearGroupData, s: &CommutingMaps, t: &mut Tally, n: usize, k: usize) {
    let alg = &data.alg;
    let p = |i: usize, j: usize| alg.pair(i, j);
    let mu_gg = |h: usize, g: usize| data.m_block.get(h, g);
    let mu_pg = |i: usize, j: usize, g: usize| data.c_block.get(p(i, j), g);
    let mu_gp = |h: usize, i: usize, j: usize| data.r_block.get(h, p(i, j));
    let mu_pp = |i: usize, j: usize, r: usize, s: usize| data.n_block.get(p(i, j), p(r, s));
    let s4 = |i: usize, j: usize| s.sigma4.get(i - 1, j - 1);
    let sum = |it: &mut dyn Iterator<Item = Cyclotomic>| it.fold(Cyclotomic::zero(), |acc, x| acc + x);
    let ks = || 1..=k;

    for g in 0..n {
        for h in 0..n {
            let lhs = &(&s.sigma3[g] * mu_gg(h, g)) * &s.sigma3[h];
            let via_g = sum(&mut (0..n).map(|a| &(mu_gg(a, g) * &s.sigma2[a]) * mu_gg(h, a)));
            let via_m = sum(&mut ks().flat_map(|i| {
                ks().flat_map(move |j| ks().map(move |q| &(mu_pg(i, j, g) * s4(q, i)) * mu_gp(h, q, j)))
            }));
            t.check("mmm/m:I", &[("g", g), ("h", h)], lhs, via_g + via_m);
        }
        for i in ks() {
            for j in ks() {
                let lhs = sum(&mut ks().map(|q| &(&s.sigma3[g] * mu_pg(i, q, g)) * s4(j, q)));
                let via_g = sum(&mut (0..n).map(|a| &(mu_gg(a, g) * &s.sigma2[a]) * mu_pg(i, j, a)));
                let via_m = sum(&mut ks().flat_map(|r| {
                    ks().flat_map(move |ss| ks().map(move |u| &(mu_pg(r, ss, g) * s4(u, r)) * mu_pp(i, j, u, ss)))
                }));
                t.check("mmm/m:II", &[("g", g), ("i", i), ("j", j)], lhs, via_g + via_m);
            }
        }
        for r in ks() {
            for ss in ks() {
                let lhs = sum(&mut ks().map(|u| &(s4(u, ss) * mu_gp(g, r, u)) * &s.sigma3[g]));
                let via_g = sum(&mut (0..n).map(|a| &(mu_gp(a, r, ss) * &s.sigma2[a]) * mu_gg(g, a)));
                let via_m = sum(&mut ks().flat_map(|pp| {
                    ks().flat_map(move |q| ks().map(move |j| &(mu_pp(pp, q, r, ss) * s4(j, pp)) * mu_gp(g, j, q)))
                }));
                t.check("mmm/m:III", &[("g", g), ("r", r), ("s", ss)], lhs, via_g + via_m);
            }
        }
    }
    for i in ks() {
        for j in ks() {
            for r in ks() {
                for ss in ks() {
                    let lhs = sum(&mut ks().flat_map(|u| ks().map(move |v| &(s4(u, ss) * mu_pp(i, v, r, u)) * s4(j, v))));
                    let via_g = sum(&mut (0..n).map(|a| &(mu_gp(a, r, ss) * &s.sigma2[a]) * mu_pg(i, j, a)));
                    let via_m = sum(&mut ks().flat_map(|pp| {
                        ks().flat_map(move |q| ks().map(move |u| &(mu_pp(pp, q, r, ss) * s4(u, pp)) * mu_pp(i, j, u, q)))
                    }));
                    t.check("mmm/m:IV", &[("i", i), ("j", j), ("r", r), ("s", ss)], lhs, via_g + via_m);
                }
            }
        }
    }
}
