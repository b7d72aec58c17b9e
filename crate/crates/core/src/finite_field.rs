//! Exact arithmetic in `F_p`, `F_{p^2} = {a + b·ω}` and the extension fields
//! `F_{p^m}` that contain the `n`-th roots of unity.
//!
//! Elements of `F_p` are plain `u32` residues; the field descriptor carries
//! the modulus. Extension-field elements are dense residues (a [`Poly`] of
//! degree `< m`) rather than log tables.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::Poly;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn gcd_usize(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Multiplicative order of `p` modulo `n` (1 for `n = 1`).
pub fn multiplicative_order(p: u32, n: usize) -> Result<usize> {
    if gcd_usize(n, p as usize) != 1 {
        return Err(Error::NotCoprime { n, p });
    }
    if n == 1 {
        return Ok(1);
    }
    let base = p as usize % n;
    let mut acc = base;
    let mut m = 1;
    while acc != 1 {
        acc = acc * base % n;
        m += 1;
    }
    Ok(m)
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p > (1 << 31) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    pub fn is_square(self, a: u32) -> bool {
        a.is_multiple_of(self.p) || self.p == 2 || self.pow(a, (self.p as u64 - 1) / 2) == 1
    }
}

/// Deterministic monic irreducible quadratic fixing `ω`: `x^2 + x + 1` for
/// `p = 2`, otherwise `x^2 - a` with `a` the least quadratic non-residue.
pub fn make_quadratic_modulus(field: PrimeField) -> Poly {
    let p = field.p();
    if p == 2 {
        return Poly::new(field, vec![1, 1, 1]);
    }
    let a = (2..p).find(|&a| !field.is_square(a)).expect("odd prime has a non-residue");
    Poly::new(field, vec![field.neg(a), 0, 1])
}

/// `F_{p^2}` on the basis `{1, ω}` with `ω^2 = c0 + c1·ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    base: PrimeField,
    c0: u32,
    c1: u32,
}

/// `a + b·ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct QuadElement {
    pub a: u32,
    pub b: u32,
}

impl QuadElement {
    pub const ZERO: QuadElement = QuadElement { a: 0, b: 0 };

    pub fn new(a: u32, b: u32) -> Self {
        Self { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl QuadField {
    pub fn new(base: PrimeField) -> Self {
        let m = make_quadratic_modulus(base);
        // x^2 + m1 x + m0 = 0  =>  ω^2 = -m0 - m1 ω
        Self {
            base,
            c0: base.neg(m.coeff(0)),
            c1: base.neg(m.coeff(1)),
        }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    /// `(c0, c1)` with `ω^2 = c0 + c1·ω`.
    pub fn omega_square(&self) -> (u32, u32) {
        (self.c0, self.c1)
    }

    pub fn omega(&self) -> QuadElement {
        QuadElement::new(0, 1)
    }

    pub fn add(&self, x: QuadElement, y: QuadElement) -> QuadElement {
        QuadElement::new(self.base.add(x.a, y.a), self.base.add(x.b, y.b))
    }

    pub fn sub(&self, x: QuadElement, y: QuadElement) -> QuadElement {
        QuadElement::new(self.base.sub(x.a, y.a), self.base.sub(x.b, y.b))
    }

    pub fn mul(&self, x: QuadElement, y: QuadElement) -> QuadElement {
        let f = self.base;
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bd ω^2
        let bd = f.mul(x.b, y.b);
        let a = f.add(f.mul(x.a, y.a), f.mul(bd, self.c0));
        let b = f.add(f.add(f.mul(x.a, y.b), f.mul(x.b, y.a)), f.mul(bd, self.c1));
        QuadElement::new(a, b)
    }

    pub fn pow(&self, x: QuadElement, mut e: u64) -> QuadElement {
        let mut acc = QuadElement::new(1 % self.base.p(), 0);
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: QuadElement) -> Result<QuadElement> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let q = self.base.p() as u64;
        Ok(self.pow(x, q * q - 2))
    }
}

/// `F_{p^m} = F_p[x]/⟨modulus⟩`, elements stored as residues of degree `< m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionField {
    base: PrimeField,
    modulus: Poly,
}

impl fmt::Display for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {}", self.base.p(), self.degree(), self.modulus)
    }
}

impl ExtensionField {
    /// Builds the field, rejecting moduli that are not monic irreducible.
    pub fn new(modulus: Poly) -> Result<Self> {
        let base = modulus.field();
        let modulus = modulus.monic();
        if modulus.degree().unwrap_or(0) == 0 || !is_irreducible(&modulus) {
            return Err(Error::ReducibleModulus(base.p()));
        }
        Ok(Self { base, modulus })
    }

    /// The least monic irreducible of degree `m` (counting the lower
    /// coefficients as base-`p` digits, constant term least significant).
    pub fn with_degree(base: PrimeField, m: usize) -> Self {
        assert!(m >= 1);
        let p = base.p() as u64;
        let mut counter: u64 = 0;
        loop {
            let mut coeffs = vec![0u32; m + 1];
            coeffs[m] = 1;
            let mut c = counter;
            for slot in coeffs.iter_mut().take(m) {
                *slot = (c % p) as u32;
                c /= p;
            }
            counter += 1;
            if m > 1 && coeffs[0] == 0 {
                continue;
            }
            let cand = Poly::new(base, coeffs);
            if is_irreducible(&cand) {
                return Self { base, modulus: cand };
            }
        }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.base.p()).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.base)
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.base)
    }

    pub fn element(&self, p: &Poly) -> Poly {
        p.rem(&self.modulus)
    }

    /// Element whose coefficient digits are `index` written in base `p`.
    pub fn element_from_index(&self, mut index: u64) -> Poly {
        let p = self.base.p() as u64;
        let mut coeffs = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            coeffs.push((index % p) as u32);
            index /= p;
        }
        Poly::new(self.base, coeffs)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b).rem(&self.modulus)
    }

    pub fn inv(&self, a: &Poly) -> Result<Poly> {
        a.inverse_mod(&self.modulus).ok_or(Error::ZeroInverse)
    }

    pub fn pow(&self, a: &Poly, e: &BigUint) -> Poly {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn pow_u64(&self, a: &Poly, e: u64) -> Poly {
        self.pow(a, &BigUint::from(e))
    }
}

/// Ben-Or test: `f` of degree `m` is irreducible iff
/// `gcd(x^{p^i} - x, f) = 1` for all `1 ≤ i ≤ m/2`.
pub fn is_irreducible(f: &Poly) -> bool {
    let field = f.field();
    let m = match f.degree() {
        None | Some(0) => return false,
        Some(m) => m,
    };
    if m == 1 {
        return true;
    }
    let x = Poly::x(field);
    let p = BigUint::from(field.p());
    let mut xp = x.clone();
    for _ in 1..=m / 2 {
        xp = xp.pow_mod(&p, f);
        let g = xp.sub(&x).gcd(f);
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

/// An extension `F_{p^m}`, `m = ord_n(p)`, together with an element of
/// multiplicative order exactly `n`. The element is `β^{(p^m-1)/n}` for the
/// first candidate `β` (in [`ExtensionField::element_from_index`] order)
/// for which that power has order `n`.
pub fn find_primitive_root_of_unity(n: usize, p: u32) -> Result<(ExtensionField, Poly)> {
    let base = PrimeField::new(p)?;
    let m = multiplicative_order(p, n)?;
    let ext = ExtensionField::with_degree(base, m);
    if n == 1 {
        let one = ext.one();
        return Ok((ext, one));
    }
    let cofactor = (ext.order() - 1u32) / BigUint::from(n);
    let primes = prime_factors(n);
    let one = ext.one();
    let mut index = 1u64;
    loop {
        let beta = ext.element_from_index(index);
        index += 1;
        let gamma = ext.pow(&beta, &cofactor);
        if gamma == one {
            continue;
        }
        let primitive = primes
            .iter()
            .all(|&q| ext.pow_u64(&gamma, (n / q) as u64) != one);
        if primitive {
            return Ok((ext, gamma));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn has_root(poly: &Poly) -> bool {
        let field = poly.field();
        (0..field.p()).any(|a| poly.eval(a) == 0)
    }

    #[test]
    fn quadratic_moduli() {
        assert_eq!(make_quadratic_modulus(f(2)).coeffs(), &[1, 1, 1]);
        // x^2 - 2 = x^2 + 1 over F_3
        let m3 = make_quadratic_modulus(f(3));
        assert_eq!(m3.coeffs(), &[1, 0, 1]);
        assert!(!has_root(&m3));
        let m5 = make_quadratic_modulus(f(5));
        assert_eq!(m5.coeffs(), &[3, 0, 1]);
        assert!(!has_root(&m5));
        for p in [7, 11, 13, 17] {
            let m = make_quadratic_modulus(f(p));
            assert!(!has_root(&m), "p = {p}");
        }
    }

    #[test]
    fn f4_omega_squared() {
        let q = QuadField::new(f(2));
        let w = q.omega();
        assert_eq!(q.mul(w, w), QuadElement::new(1, 1));
    }

    #[test]
    fn prime_field_inverse() {
        assert_eq!(f(3).inv(2).unwrap(), 2);
        assert_eq!(f(7).inv(0), Err(Error::ZeroInverse));
        for p in [2, 3, 5, 7, 31] {
            let fp = f(p);
            for a in 1..p {
                assert_eq!(fp.mul(a, fp.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn quad_inverse() {
        for p in [2, 3, 5, 7] {
            let q = QuadField::new(f(p));
            for a in 0..p {
                for b in 0..p {
                    let x = QuadElement::new(a, b);
                    if x.is_zero() {
                        assert!(q.inv(x).is_err());
                        continue;
                    }
                    assert_eq!(q.mul(x, q.inv(x).unwrap()), QuadElement::new(1, 0));
                }
            }
        }
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 1)^2 over F_2
        let m = Poly::new(f(2), vec![1, 0, 1]);
        assert_eq!(ExtensionField::new(m), Err(Error::ReducibleModulus(2)));
    }

    #[test]
    fn degree_six_reduction() {
        let ext = ExtensionField::with_degree(f(2), 6);
        let x = Poly::x(f(2));
        let x5 = Poly::monomial(f(2), 5, 1);
        let prod = ext.mul(&x, &x5);
        // x^6 ≡ modulus - x^6, checked by long division
        let tail = ext.modulus().sub(&Poly::monomial(f(2), 6, 1));
        assert_eq!(prod, tail);
        let (q, r) = Poly::monomial(f(2), 6, 1).div_rem(ext.modulus());
        assert_eq!(q, Poly::one(f(2)));
        assert_eq!(r, prod);
    }

    #[test]
    fn extension_degrees() {
        assert_eq!(find_primitive_root_of_unity(7, 2).unwrap().0.degree(), 3);
        assert_eq!(find_primitive_root_of_unity(21, 2).unwrap().0.degree(), 6);
        let (ext, a) = find_primitive_root_of_unity(1, 2).unwrap();
        assert_eq!(ext.degree(), 1);
        assert_eq!(a, Poly::one(f(2)));
        assert_eq!(
            find_primitive_root_of_unity(6, 3).unwrap_err(),
            Error::NotCoprime { n: 6, p: 3 }
        );
    }

    #[test]
    fn roots_have_exact_order() {
        for p in [2u32, 3, 5] {
            for n in 1..=64usize {
                if n % p as usize == 0 {
                    continue;
                }
                let (ext, alpha) = find_primitive_root_of_unity(n, p).unwrap();
                assert_eq!(ext.pow_u64(&alpha, n as u64), ext.one(), "n={n} p={p}");
                for d in 1..n {
                    if n % d == 0 {
                        assert_ne!(ext.pow_u64(&alpha, d as u64), ext.one(), "n={n} p={p} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn extension_inverse_and_frobenius() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for (p, m) in [(2u32, 6usize), (3, 4), (5, 3)] {
            let ext = ExtensionField::with_degree(f(p), m);
            let pe = BigUint::from(p);
            for _ in 0..50 {
                let a = ext.element_from_index(rng.gen_range(1..ext.order().to_u64_digits()[0]));
                let b = ext.element_from_index(rng.gen_range(0..ext.order().to_u64_digits()[0]));
                assert_eq!(ext.mul(&a, &ext.inv(&a).unwrap()), ext.one());
                let lhs = ext.pow(&ext.add(&a, &b), &pe);
                let rhs = ext.add(&ext.pow(&a, &pe), &ext.pow(&b, &pe));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
