//! Worked examples for `|G| = 2, 3, 4`, entered entry by entry from the
//! published tables rather than produced by the construction.
//!
//! Characters are labelled so that `χ_i(g) = exp(2πi·i/|G|)`; for `Z/4` this
//! is the labelling with `χ_2(g²) = 1` and `χ_1(g) = i`.

use super::{IndexAlgebra, NearGroupData};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::matrix::Matrix;
use crate::pi::Pi;

fn q(n: i64, d: i64) -> Cyclotomic {
    Cyclotomic::from_frac(n, d)
}

fn z() -> Cyclotomic {
    Cyclotomic::zero()
}

fn assemble(pi: Pi, gamma1: Vec<Matrix>, gamma2: Vec<Matrix>, gamma3: Vec<Matrix>, lambda: Vec<Matrix>, mu: Matrix) -> Result<NearGroupData> {
    let alg = IndexAlgebra::new(&pi);
    let n = pi.group().order();
    let kk = alg.k() * alg.k();
    let mut data = NearGroupData {
        primitive: super::NearGroupPrimitive::ones(&alg),
        pi,
        alg,
        gamma1,
        gamma2,
        gamma3,
        lambda,
        m_block: Matrix::zeros(n, n),
        r_block: Matrix::zeros(n, kk),
        c_block: Matrix::zeros(kk, n),
        n_block: Matrix::zeros(kk, kk),
    }
    .with_mu(&mu)?;
    data.primitive = data.extract_primitive()?;
    Ok(data)
}

/// `G = Z/2`, `k = 1`, for a cube root of unity `ξ`.
pub fn z2k1(xi: Cyclotomic) -> Result<NearGroupData> {
    if !xi.pow(3)?.is_one() {
        return Err(Error::Data(format!("xi = {xi} is not a cube root of unity")));
    }
    let g = AbelianGroup::cyclic(2);
    let chi = |a: usize| g.character(1, a);
    let gam: Vec<Matrix> = g.elements().map(|a| Matrix::diagonal(&[chi(a)])).collect();
    let lambda = g.elements().map(|a| Matrix::diagonal(&[&xi * &chi(a)])).collect();
    let r = (&q(2, 1) * &xi).inv()?;
    let mu = Matrix::from_rows(vec![
        vec![q(1, 2), q(1, 2), r.clone()],
        vec![q(1, 2), q(1, 2), -&r],
        vec![q(1, 1), q(-1, 1), z()],
    ])?;
    assemble(Pi::identity(g)?, gam.clone(), gam.clone(), gam, lambda, mu)
}

/// `G = Z/3`, `k = 2`, `π = id`, for `ξ = ±1`.
pub fn z3k2(xi: i64) -> Result<NearGroupData> {
    if xi != 1 && xi != -1 {
        return Err(Error::Data(format!("xi must be ±1, got {xi}")));
    }
    let g = AbelianGroup::cyclic(3);
    let x = Cyclotomic::from_i64(xi);
    let ch = |i: usize, a: usize| g.character(i, a);
    let (g1, g2) = (1, 2);
    let diag = |f: &dyn Fn(usize) -> Cyclotomic| Matrix::diagonal(&[f(1), f(2)]);
    let gamma1: Vec<Matrix> = g.elements().map(|a| diag(&|i| ch(i, a))).collect();
    let gamma2: Vec<Matrix> = g.elements().map(|a| gamma1[g.inv(a)].clone()).collect();
    let gamma3 = gamma1.clone();
    let lambda = g.elements().map(|a| diag(&|i| &x * &ch(i, a))).collect();
    let t = |v: Cyclotomic| &v * &q(1, 3);
    let xt = t(x.clone());
    let mu = Matrix::from_rows(vec![
        vec![xt.clone(), xt.clone(), xt.clone(), z(), xt.clone(), q(1, 3), z()],
        vec![xt.clone(), xt.clone(), xt.clone(), z(), t(&x * &ch(1, g2)), t(ch(2, g2)), z()],
        vec![xt.clone(), xt.clone(), xt.clone(), z(), t(&x * &ch(1, g1)), t(ch(2, g1)), z()],
        vec![z(), z(), z(), z(), z(), z(), x.clone()],
        vec![q(1, 1), ch(1, g2), ch(1, g1), z(), z(), z(), z()],
        vec![x.clone(), &x * &ch(2, g2), &x * &ch(2, g1), z(), z(), z(), z()],
        vec![z(), z(), z(), q(1, 1), z(), z(), z()],
    ])?;
    assemble(Pi::identity(g)?, gamma1, gamma2, gamma3, lambda, mu)
}

/// `G = Z/4`, `k = 3`, `π = (g g² g³)`: the unique solution.
pub fn z4k3() -> Result<NearGroupData> {
    let g = AbelianGroup::cyclic(4);
    let pi = Pi::parse_cycles(&g, "(g g^2 g^3)")?;
    let ch = |i: usize, a: usize| g.character(i, a);
    let one = || q(1, 1);
    let lambda_eps = Matrix::from_rows(vec![
        vec![z(), z(), one()],
        vec![one(), z(), z()],
        vec![z(), one(), z()],
    ])?;
    let li = lambda_eps.inverse()?;
    let gamma1: Vec<Matrix> = g.elements().map(|a| Matrix::diagonal(&[ch(1, a), ch(2, a), ch(3, a)])).collect();
    let gamma2: Vec<Matrix> = g.elements().map(|a| li.mul(&gamma1[g.inv(a)]).mul(&lambda_eps)).collect();
    let gamma3: Vec<Matrix> = g.elements().map(|a| li.mul(&gamma2[g.inv(a)]).mul(&lambda_eps)).collect();
    let lambda = g.elements().map(|a| lambda_eps.mul(&gamma1[a])).collect();

    let mut mu = Matrix::zeros(13, 13);
    for y in 0..4 {
        for x in 0..4 {
            mu.set(y, x, q(1, 4));
        }
    }
    // R block: rows y = g^t, columns (1,3), (2,2), (3,1)
    for y in 0..4 {
        let a = g.inv(y);
        mu.set(y, 4 + 2, &q(1, 4) * &ch(3, a));
        mu.set(y, 4 + 4, &q(1, 4) * &ch(1, a));
        mu.set(y, 4 + 6, &q(1, 4) * &ch(2, a));
    }
    // C block: rows (1,2), (2,1), (3,3)
    for x in 0..4 {
        let a = g.inv(x);
        mu.set(4 + 1, x, ch(1, a));
        mu.set(4 + 3, x, ch(2, a));
        mu.set(4 + 8, x, ch(3, a));
    }
    // N block, 1-based (row, column)
    for (r, c) in [(1, 8), (3, 6), (5, 9), (6, 1), (7, 4), (8, 2)] {
        mu.set(4 + r - 1, 4 + c - 1, one());
    }
    assemble(pi, gamma1, gamma2, gamma3, lambda, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::associator::construct_from_primitive;

    fn matches_construction(d: &NearGroupData) {
        let built = construct_from_primitive(&d.pi, d.primitive.clone()).unwrap();
        assert_eq!(&built, d);
    }

    #[test]
    fn z2_fixture_is_constructed() {
        for j in 0..3 {
            let d = z2k1(Cyclotomic::root_of_unity(3, j)).unwrap();
            assert_eq!(d.primitive.delta, 1);
            matches_construction(&d);
        }
        assert!(z2k1(Cyclotomic::from_i64(-1)).is_err());
    }

    #[test]
    fn z3_fixture_is_constructed() {
        for xi in [1, -1] {
            let d = z3k2(xi).unwrap();
            assert_eq!(d.primitive.delta as i64, xi);
            assert_eq!(d.primitive.c(2), &Cyclotomic::from_i64(xi));
            assert_eq!(d.primitive.n(2, 2), &Cyclotomic::from_i64(xi));
            assert!(d.primitive.n(1, 1).is_one());
            matches_construction(&d);
        }
    }

    #[test]
    fn z4_fixture_is_the_standard_solution() {
        let d = z4k3().unwrap();
        assert_eq!(d, crate::associator::construct_standard(&d.pi).unwrap());
        assert_eq!(d.n_block.to_rows().iter().flatten().filter(|v| v.is_one()).count(), 6);
    }
}
