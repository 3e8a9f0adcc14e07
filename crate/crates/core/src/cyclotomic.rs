//! Exact arithmetic in the ring of cyclotomic integers Z[zeta_m].
//!
//! A value is stored as the canonical residue of an integer polynomial in
//! zeta_m modulo the m-th cyclotomic polynomial Phi_m, i.e. as a coefficient
//! vector of length phi(m). Canonical form makes equality a plain coefficient
//! comparison, which is what correlation spectra need: `1 + zeta_3 + zeta_3^2`
//! and `0` are the same element and reduce to the same vector.
//!
//! Coefficients are `i64` with checked arithmetic that aborts loudly on
//! overflow. Every quantity computed by this crate is bounded by the square
//! of a sequence period (a few hundred at most), so 64 bits leave a huge
//! margin; the checks are there so that a misuse cannot silently wrap.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::euler_phi;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycError {
    #[error("cyclotomic order must be at least 2, got {0}")]
    OrderTooSmall(u32),
    #[error("coefficient vector has length {got}, expected phi({order}) = {expected}")]
    CoeffLength { order: u32, expected: usize, got: usize },
}

fn cadd(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("cyclotomic coefficient overflow")
}

fn cmul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("cyclotomic coefficient overflow")
}

/// Integer polynomial, coefficients ascending by degree. The zero polynomial
/// is the empty vector; otherwise the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// x^n - 1.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0i64; n + 1];
        coeffs[0] = -1;
        coeffs[n] = 1;
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = cadd(out[i + j], cmul(a, b));
            }
        }
        IntPoly::from_coeffs(out)
    }

    /// Exact division; panics if `divisor` does not divide `self` over Z.
    /// Divisors here are cyclotomic polynomials, hence monic.
    pub fn exact_div(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero(), "exact_div: division by zero polynomial");
        assert_eq!(
            *divisor.coeffs.last().unwrap(),
            1,
            "exact_div: divisor must be monic"
        );
        if self.is_zero() {
            return IntPoly::zero();
        }
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        assert!(rem.len() > d, "exact_div: divisor degree exceeds dividend");
        let mut quot = vec![0i64; rem.len() - d];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + d];
            quot[k] = lead;
            if lead != 0 {
                for (i, &c) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = cadd(rem[k + i], -cmul(lead, c));
                }
            }
        }
        assert!(
            rem.iter().all(|&c| c == 0),
            "exact_div: remainder is nonzero"
        );
        IntPoly::from_coeffs(quot)
    }
}

fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The m-th cyclotomic polynomial Phi_m, monic of degree phi(m).
///
/// Computed by exact division of x^m - 1 by the product of Phi_d over the
/// proper divisors d of m, and memoized per order. Phi_1 = x - 1 is exposed
/// because the recursion needs it.
pub fn cyclotomic_poly(m: u32) -> IntPoly {
    assert!(m >= 1, "cyclotomic_poly: order must be positive");
    if let Some(hit) = cyclotomic_cache().lock().unwrap().get(&m) {
        return hit.clone();
    }
    let result = if m == 1 {
        IntPoly::from_coeffs(vec![-1, 1])
    } else {
        let mut num = IntPoly::x_pow_minus_one(m as usize);
        for d in divisors(m) {
            if d != m {
                num = num.exact_div(&cyclotomic_poly(d));
            }
        }
        num
    };
    cyclotomic_cache()
        .lock()
        .unwrap()
        .insert(m, result.clone());
    result
}

/// An element of Z[zeta_m] in canonical form: the residue mod Phi_m, stored
/// as exactly phi(m) coefficients in ascending degree (zero-padded).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycInt {
    order: u32,
    coeffs: Vec<i64>,
}

impl CycInt {
    /// Reduce an arbitrary polynomial in zeta_m to the canonical residue.
    fn reduce(order: u32, mut poly: Vec<i64>) -> Vec<i64> {
        let phi = cyclotomic_poly(order);
        let d = phi.coeffs().len() - 1;
        while poly.len() > d {
            let lead = *poly.last().unwrap();
            let k = poly.len() - 1 - d;
            if lead != 0 {
                for (i, &c) in phi.coeffs().iter().enumerate() {
                    poly[k + i] = cadd(poly[k + i], -cmul(lead, c));
                }
            }
            debug_assert_eq!(*poly.last().unwrap(), 0);
            poly.pop();
        }
        poly.resize(d, 0);
        poly
    }

    fn check_order(order: u32) -> Result<(), CycError> {
        if order < 2 {
            Err(CycError::OrderTooSmall(order))
        } else {
            Ok(())
        }
    }

    pub fn zero(order: u32) -> Self {
        Self::from_integer(order, 0)
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, 1)
    }

    /// The rational integer `c` as an element of Z[zeta_m].
    pub fn from_integer(order: u32, c: i64) -> Self {
        Self::check_order(order).expect("invalid cyclotomic order");
        let mut coeffs = vec![0i64; euler_phi(order as u64) as usize];
        coeffs[0] = c;
        CycInt { order, coeffs }
    }

    /// zeta_m^e in canonical form; `e` is reduced mod m, so it may be negative.
    pub fn root_power(order: u32, e: i64) -> Self {
        Self::check_order(order).expect("invalid cyclotomic order");
        let e = e.rem_euclid(order as i64) as usize;
        let mut poly = vec![0i64; e + 1];
        poly[e] = 1;
        CycInt {
            order,
            coeffs: Self::reduce(order, poly),
        }
    }

    /// Canonicalize `sum_j counts[j] * zeta_m^j`. The slice may have any
    /// length; entries beyond index m-1 would be exponents taken literally,
    /// so callers pass at most m entries.
    pub fn from_root_counts(order: u32, counts: &[i64]) -> Self {
        Self::check_order(order).expect("invalid cyclotomic order");
        CycInt {
            order,
            coeffs: Self::reduce(order, counts.to_vec()),
        }
    }

    /// Accept an externally supplied coefficient vector. The length must be
    /// exactly phi(order); such a vector has degree < deg Phi_m, so it is
    /// canonical as-is.
    pub fn from_coeffs(order: u32, coeffs: Vec<i64>) -> Result<Self, CycError> {
        Self::check_order(order)?;
        let expected = euler_phi(order as u64) as usize;
        if coeffs.len() != expected {
            return Err(CycError::CoeffLength {
                order,
                expected,
                got: coeffs.len(),
            });
        }
        Ok(CycInt { order, coeffs })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The complex conjugate, i.e. the ring automorphism zeta -> zeta^{-1}.
    /// Each monomial c * zeta^j of the canonical representative is mapped to
    /// c * zeta^{(m-j) mod m}, then the result is canonicalized.
    pub fn conjugate(&self) -> Self {
        let m = self.order as usize;
        let mut poly = vec![0i64; m];
        for (j, &c) in self.coeffs.iter().enumerate() {
            let idx = (m - j) % m;
            poly[idx] = cadd(poly[idx], c);
        }
        CycInt {
            order: self.order,
            coeffs: Self::reduce(self.order, poly),
        }
    }

    /// `Some(c)` iff the value is the rational integer `c`, i.e. all
    /// higher-degree canonical coefficients vanish.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn assert_same_order(&self, other: &Self) {
        assert_eq!(
            self.order, other.order,
            "cyclotomic order mismatch: {} vs {}",
            self.order, other.order
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| cadd(a, b))
            .collect();
        CycInt {
            order: self.order,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| cadd(a, -b))
            .collect();
        CycInt {
            order: self.order,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        CycInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_order(other);
        let mut prod = vec![0i64; 2 * self.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = cadd(prod[i + j], cmul(a, b));
            }
        }
        CycInt {
            order: self.order,
            coeffs: Self::reduce(self.order, prod),
        }
    }

    /// Human-oriented zeta-polynomial rendering, e.g. `7 + 4*zeta - 4*zeta^3`.
    pub fn pretty(&self) -> String {
        let mut terms: Vec<String> = Vec::new();
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            let body = match j {
                0 => format!("{mag}"),
                1 if mag == 1 => "zeta".to_string(),
                1 => format!("{mag}*zeta"),
                _ if mag == 1 => format!("zeta^{j}"),
                _ => format!("{mag}*zeta^{j}"),
            };
            if terms.is_empty() {
                terms.push(if c < 0 { format!("-{body}") } else { body });
            } else {
                terms.push(format!("{} {}", if c < 0 { "-" } else { "+" }, body));
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" ")
        }
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CycInt", 2)?;
        s.serialize_field("m", &self.order)?;
        s.serialize_field("coeffs", &self.coeffs)?;
        s.end()
    }
}

impl std::ops::Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        CycInt::add(self, rhs)
    }
}

impl std::ops::Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        CycInt::sub(self, rhs)
    }
}

impl std::ops::Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        CycInt::mul(self, rhs)
    }
}

impl std::ops::Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1).coeffs(), &[-1, 1]);
        assert_eq!(cyclotomic_poly(2).coeffs(), &[1, 1]);
        assert_eq!(cyclotomic_poly(3).coeffs(), &[1, 1, 1]);
        assert_eq!(cyclotomic_poly(4).coeffs(), &[1, 0, 1]);
        assert_eq!(cyclotomic_poly(6).coeffs(), &[1, -1, 1]);
        assert_eq!(cyclotomic_poly(8).coeffs(), &[1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(12).coeffs(), &[1, 0, -1, 0, 1]);
    }

    #[test]
    fn cyclotomic_poly_degree_and_product() {
        for m in 1..=60u32 {
            let phi = cyclotomic_poly(m);
            assert_eq!(phi.degree(), Some(euler_phi(m as u64) as usize));
            assert_eq!(*phi.coeffs().last().unwrap(), 1, "Phi_{m} monic");
            // prod_{d | m} Phi_d = x^m - 1
            let mut prod = IntPoly::from_coeffs(vec![1]);
            for d in divisors(m) {
                prod = prod.mul(&cyclotomic_poly(d));
            }
            assert_eq!(prod, IntPoly::x_pow_minus_one(m as usize), "m = {m}");
        }
    }

    #[test]
    fn root_power_examples() {
        // zeta_4^2 = -1
        assert_eq!(CycInt::root_power(4, 2), CycInt::from_integer(4, -1));
        // zeta_3^3 = 1
        assert_eq!(CycInt::root_power(3, 3), CycInt::one(3));
        // zeta_3^2 = -1 - zeta_3
        assert_eq!(CycInt::root_power(3, 2).coeffs(), &[-1, -1]);
        // negative exponents reduce mod m
        assert_eq!(CycInt::root_power(5, -1), CycInt::root_power(5, 4));
    }

    #[test]
    fn add_mul_examples() {
        let z3 = |e| CycInt::root_power(3, e);
        assert_eq!(&z3(1) + &z3(2), CycInt::from_integer(3, -1));
        let z4 = |e| CycInt::root_power(4, e);
        assert_eq!(&z4(1) * &z4(3), CycInt::one(4));
        // 4*zeta_3 + 4*zeta_3^2 = -4
        let four = CycInt::from_integer(3, 4);
        let v = &(&four * &z3(1)) + &(&four * &z3(2));
        assert_eq!(v, CycInt::from_integer(3, -4));
    }

    #[test]
    fn root_sums_vanish() {
        for m in [2u32, 3, 5, 7, 11, 4, 6, 9] {
            let sum = (0..m as i64)
                .map(|e| CycInt::root_power(m, e))
                .fold(CycInt::zero(m), |acc, x| &acc + &x);
            assert!(sum.is_zero(), "sum of all m-th roots, m = {m}");
            assert_eq!(CycInt::root_power(m, m as i64), CycInt::one(m));
        }
    }

    #[test]
    fn conjugate_examples() {
        let z4 = CycInt::root_power(4, 1);
        assert_eq!(z4.conjugate(), CycInt::root_power(4, 3));
        assert_eq!(z4.conjugate(), z4.neg());
        let c = CycInt::from_integer(7, 42);
        assert_eq!(c.conjugate(), c);
    }

    #[test]
    fn as_integer_examples() {
        // 2 + 2*zeta_3 + 2*zeta_3^2 = 0
        let v = CycInt::from_root_counts(3, &[2, 2, 2]);
        assert_eq!(v.as_integer(), Some(0));
        // -4*zeta_8^3 + 4*zeta_8 + 7 is not rational
        let v = CycInt::from_coeffs(8, vec![7, 4, 0, -4]).unwrap();
        assert_eq!(v.as_integer(), None);
        assert_eq!(CycInt::from_integer(4, 13).as_integer(), Some(13));
    }

    #[test]
    fn counts_vector_is_canonicalized() {
        // 1 + zeta + zeta^2 and 0 are the same element of Z[zeta_3].
        let a = CycInt::from_root_counts(3, &[1, 1, 1]);
        assert_eq!(a, CycInt::zero(3));
    }

    #[test]
    fn root_times_conjugate_is_one() {
        for m in [2u32, 3, 4, 5, 6, 8, 12] {
            for e in 0..m as i64 {
                let z = CycInt::root_power(m, e);
                assert_eq!(&z * &z.conjugate(), CycInt::one(m));
            }
        }
    }

    #[test]
    fn from_coeffs_validates_length() {
        assert!(CycInt::from_coeffs(3, vec![1, 2]).is_ok());
        assert_eq!(
            CycInt::from_coeffs(3, vec![1, 2, 3]),
            Err(CycError::CoeffLength {
                order: 3,
                expected: 2,
                got: 3
            })
        );
    }

    #[test]
    fn serializes_with_order() {
        let v = CycInt::from_coeffs(8, vec![7, 4, 0, -4]).unwrap();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"m":8,"coeffs":[7,4,0,-4]}"#
        );
    }

    proptest! {
        #[test]
        fn ring_laws(m in prop::sample::select(vec![2u32, 3, 4, 5, 6, 8]),
                     seed in proptest::collection::vec(-50i64..=50, 30)) {
            let phi = euler_phi(m as u64) as usize;
            let take = |k: usize| CycInt::from_coeffs(m, seed[k * phi..(k + 1) * phi].to_vec()).unwrap();
            let (x, y, z) = (take(0), take(1), take(2));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn conjugation_is_an_involutive_automorphism(
            m in prop::sample::select(vec![3u32, 4, 5, 6, 8]),
            seed in proptest::collection::vec(-50i64..=50, 20),
        ) {
            let phi = euler_phi(m as u64) as usize;
            let take = |k: usize| CycInt::from_coeffs(m, seed[k * phi..(k + 1) * phi].to_vec()).unwrap();
            let (x, y) = (take(0), take(1));
            prop_assert_eq!(x.conjugate().conjugate(), x.clone());
            prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
            prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
        }

        #[test]
        fn products_stay_canonical(
            m in prop::sample::select(vec![3u32, 5, 8]),
            seed in proptest::collection::vec(-50i64..=50, 8),
        ) {
            let phi = euler_phi(m as u64) as usize;
            let take = |k: usize| CycInt::from_coeffs(m, seed[k * phi..(k + 1) * phi].to_vec()).unwrap();
            let p = &take(0) * &take(1);
            // re-reducing the canonical vector is the identity
            let again = CycInt::from_root_counts(m, p.coeffs());
            prop_assert_eq!(p, again);
        }
    }

    #[test]
    fn reduction_is_idempotent() {
        for m in [3u32, 4, 5, 6, 8, 12] {
            for e in 0..(2 * m as i64) {
                let a = CycInt::root_power(m, e);
                let again = CycInt::from_root_counts(
                    m,
                    &{
                        let mut v = a.coeffs().to_vec();
                        v.resize(m as usize, 0);
                        v
                    },
                );
                assert_eq!(a, again);
            }
        }
    }
}
