//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclotomic`] is an element of `Q(ζ_N)` stored in the power basis
//! `1, ζ_N, …, ζ_N^{φ(N)-1}` with rational coefficients. Values from
//! different fields are combined by lifting both sides to `Q(ζ_lcm)`.
//! Results whose only nonzero coefficient is the constant term are
//! stored at order 1, so rationals stay cheap.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Element of the cyclotomic field `Q(ζ_order)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

type PolyCache = RwLock<HashMap<u32, Arc<Vec<i128>>>>;

fn cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (low degree first) of the cyclotomic polynomial `Φ_n`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i128>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cache().read().expect("poisoned cache").get(&n) {
        return p.clone();
    }
    // x^n - 1 = prod_{d | n} Φ_d, so divide out every proper divisor.
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = divide_monic(&num, &den);
        }
    }
    let p = Arc::new(num);
    cache().write().expect("poisoned cache").insert(n, p.clone());
    p
}

fn divide_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i128; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (t, &dc) in den.iter().enumerate() {
                rem[i + t] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient, equal to the degree of `Φ_n`.
pub fn euler_phi(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

/// Reduce a polynomial in `ζ_n` modulo `Φ_n`.
fn reduce(mut poly: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let phi_poly = cyclotomic_polynomial(n);
    let phi = phi_poly.len() - 1;
    if poly.len() > phi {
        for d in (phi..poly.len()).rev() {
            if poly[d].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[d], BigRational::zero());
            for t in 0..phi {
                if phi_poly[t] != 0 {
                    poly[d - phi + t] -= &c * BigRational::from_integer(BigInt::from(phi_poly[t]));
                }
            }
        }
    }
    poly.resize(phi, BigRational::zero());
    poly
}

impl Cyclotomic {
    fn from_parts(order: u32, coeffs: Vec<BigRational>) -> Self {
        let mut c = Cyclotomic { order, coeffs };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.order != 1 && self.coeffs.iter().skip(1).all(Zero::is_zero) {
            let c0 = self.coeffs.first().cloned().unwrap_or_else(BigRational::zero);
            self.order = 1;
            self.coeffs = vec![c0];
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![r] }
    }

    /// Build `Σ coeffs[j] ζ_order^j`; the coefficient list may be any length.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Parse("cyclotomic order must be positive".into()));
        }
        Ok(Self::from_parts(order, reduce(coeffs, order)))
    }

    /// `ζ_n^j` with `ζ_n = exp(2πi/n)`.
    pub fn root_of_unity(n: u32, j: i64) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        let e = j.rem_euclid(n as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::from_parts(n, reduce(poly, n))
    }

    /// `exp(2πi·r)` for a rational exponent `r`.
    pub fn exp_2pi_i(r: Ratio<i64>) -> Self {
        let r = r.reduced();
        let den = *r.denom();
        Self::root_of_unity(den.unsigned_abs() as u32, *r.numer() * den.signum())
    }

    /// Order `N` of the field `Q(ζ_N)` the value is stored in.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.order == 1).then(|| &self.coeffs[0])
    }

    /// Coefficients of this value written over `Q(ζ_n)`; `order` must divide `n`.
    pub fn lift_coeffs(&self, n: u32) -> Vec<BigRational> {
        assert!(n.is_multiple_of(self.order), "order {} does not divide {}", self.order, n);
        if n == self.order {
            return self.coeffs.clone();
        }
        let step = (n / self.order) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        reduce(poly, n)
    }

    /// Express both values over `Q(ζ_M)` with `M = lcm(2, order a, order b)`.
    /// The results keep that order even when the value is rational. The
    /// factor 2 accounts for `ζ_2 = −1`, which is stored as a rational.
    pub fn lift_to_common_order(a: &Self, b: &Self) -> (Self, Self) {
        let n = lcm(2, lcm(a.order, b.order));
        (
            Cyclotomic { order: n, coeffs: a.lift_coeffs(n) },
            Cyclotomic { order: n, coeffs: b.lift_coeffs(n) },
        )
    }

    fn zip_add(&self, other: &Self, sign: bool) -> Self {
        let n = lcm(self.order, other.order);
        let a = self.lift_coeffs(n);
        let b = other.lift_coeffs(n);
        let coeffs = a
            .into_iter()
            .zip(b)
            .map(|(x, y)| if sign { x + y } else { x - y })
            .collect();
        Self::from_parts(n, coeffs)
    }

    fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self::from_parts(self.order, self.coeffs.iter().map(|c| c * r).collect())
    }

    fn product(&self, other: &Self) -> Self {
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let n = lcm(self.order, other.order);
        let a = self.lift_coeffs(n);
        let b = other.lift_coeffs(n);
        let mut poly = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self::from_parts(n, reduce(poly, n))
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        // Solve (multiplication by self) · y = 1 in the power basis.
        let n = self.order;
        let phi = self.coeffs.len();
        let mut cols = Vec::with_capacity(phi);
        for j in 0..phi {
            cols.push(self.product(&Self::root_of_unity(n, j as i64)).lift_coeffs(n));
        }
        let mut aug: Vec<Vec<BigRational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..phi).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            aug.swap(col, piv);
            let p = aug[col][col].clone();
            for v in aug[col].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..phi {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=phi {
                        let t = &aug[col][c] * &f;
                        aug[r][c] -= t;
                    }
                }
            }
        }
        Ok(Self::from_parts(n, aug.into_iter().map(|row| row[phi].clone()).collect()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Complex conjugate, sending `ζ_N` to `ζ_N^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut poly = vec![BigRational::zero(); n.max(1)];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[(n - j) % n] += c.clone();
        }
        Self::from_parts(self.order, reduce(poly, self.order))
    }

    /// If the value is a root of unity `exp(2πi·r)`, return `r ∈ [0, 1)`.
    pub fn root_of_unity_exponent(&self) -> Option<Ratio<i64>> {
        // Roots of unity in Q(ζ_N) are exactly the lcm(2, N)-th roots.
        let m = lcm(2, self.order);
        (0..m as i64)
            .find(|&j| *self == Self::root_of_unity(m, j))
            .map(|j| Ratio::new(j, m as i64))
    }

    /// Floating-point approximation `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * j as f64 / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let n = lcm(self.order, other.order);
        self.lift_coeffs(n) == other.lift_coeffs(n)
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                $body(self, rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Cyclotomic, b: &Cyclotomic| a.zip_add(b, true));
forward_binop!(Sub, sub, |a: &Cyclotomic, b: &Cyclotomic| a.zip_add(b, false));
forward_binop!(Mul, mul, |a: &Cyclotomic, b: &Cyclotomic| a.product(b));

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (_, true) => write!(f, "z{}", self.order)?,
                (_, false) => write!(f, "{}*z{}", mag, self.order)?,
            }
            if j > 1 {
                write!(f, "^{}", j)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    order: u32,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CyclotomicRepr::deserialize(d)?;
        if repr.order == 0 {
            return Err(D::Error::custom("cyclotomic order must be positive"));
        }
        if repr.coeffs.len() != euler_phi(repr.order) {
            return Err(D::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                repr.order,
                euler_phi(repr.order),
                repr.coeffs.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(repr.coeffs.len());
        for [n, q] in &repr.coeffs {
            let n: BigInt = n.parse().map_err(|_| D::Error::custom(format!("bad numerator {n:?}")))?;
            let q: BigInt = q.parse().map_err(|_| D::Error::custom(format!("bad denominator {q:?}")))?;
            if !q.is_positive() {
                return Err(D::Error::custom("denominator must be positive"));
            }
            coeffs.push(BigRational::new(n, q));
        }
        Ok(Cyclotomic::from_parts(repr.order, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u32, j: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, j)
    }

    #[test]
    fn cyclotomic_polynomials_match_known_values() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(15), 8);
    }

    #[test]
    fn roots_of_unity_multiply_by_adding_exponents() {
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_i64(-1));
        assert_eq!(&z(3, 1) * &z(4, 1), z(12, 7));
        assert_eq!(z(6, 2), z(3, 1));
        assert_eq!(z(8, 4), Cyclotomic::from_i64(-1));
        assert_eq!(z(2, 1).order(), 1);
    }

    #[test]
    fn common_order_lifting() {
        let (a, b) = Cyclotomic::lift_to_common_order(&z(2, 1), &z(3, 1));
        assert_eq!((a.order(), b.order()), (6, 6));
        assert_eq!((a.clone(), b.clone()), (z(2, 1), z(3, 1)));
        let (a, _) = Cyclotomic::lift_to_common_order(&Cyclotomic::one(), &z(4, 1));
        assert_eq!(a.order(), 4);
        assert!(a == Cyclotomic::one());
    }

    #[test]
    fn cube_roots_sum_by_long_division() {
        // independent oracle: x + x^2 divided by x^2 + x + 1 leaves remainder -1
        let (num, den) = ([0i64, 1, 1], [1i64, 1, 1]);
        let q = num[2] / den[2];
        let rem: Vec<i64> = (0..2).map(|i| num[i] - q * den[i]).collect();
        assert_eq!(rem, vec![-1, 0]);
        assert_eq!(z(3, 1) + z(3, 2), Cyclotomic::from_i64(-1));
    }

    #[test]
    fn sum_of_all_roots_is_zero() {
        let s = (0..5).fold(Cyclotomic::zero(), |acc, j| acc + z(5, j));
        assert!(s.is_zero());
    }

    #[test]
    fn inverse_of_non_root() {
        let a = Cyclotomic::from_i64(2) + z(5, 1);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(Cyclotomic::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn root_of_unity_exponent_detection() {
        assert_eq!(z(3, 2).root_of_unity_exponent(), Some(Ratio::new(2, 3)));
        assert_eq!((-z(3, 1)).root_of_unity_exponent(), Some(Ratio::new(5, 6)));
        assert_eq!(Cyclotomic::from_i64(2).root_of_unity_exponent(), None);
        assert_eq!(Cyclotomic::exp_2pi_i(Ratio::new(-1, 4)), z(4, 3));
    }

    #[test]
    fn display_and_conjugate() {
        assert_eq!(format!("{}", Cyclotomic::from_frac(1, 3) * z(3, 1)), "1/3*z3");
        assert_eq!(z(5, 2).conj(), z(5, 3));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let v = Cyclotomic::from_frac(-7, 3) * z(12, 5) + Cyclotomic::from_frac(1, 2);
        let s = serde_json::to_string(&v).unwrap();
        let w: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(v, w);
        assert_eq!(s, serde_json::to_string(&w).unwrap());
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"order":4,"coeffs":[["1","1"]]}"#).is_err());
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"order":1,"coeffs":[["1","0"]]}"#).is_err());
    }

    fn arb_cyc() -> impl Strategy<Value = Cyclotomic> {
        (prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]), prop::collection::vec(-5i64..5, 1..6))
            .prop_map(|(n, cs)| {
                let coeffs = cs.into_iter().map(|c| BigRational::from_integer(c.into())).collect();
                Cyclotomic::from_coeffs(n, coeffs).unwrap()
            })
    }

    proptest! {
        #[test]
        fn field_laws(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn roots_of_unity_compose(n in 1u32..30, i in -40i64..40, j in -40i64..40) {
            prop_assert_eq!(&z(n, i) * &z(n, j), z(n, i + j));
            prop_assert_eq!(z(n, i).pow(j).unwrap(), z(n, i * j));
        }
    }
}
