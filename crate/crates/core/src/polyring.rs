//! Polynomials over `F_p` and the cyclic quotient rings
//! `F_p[x]/⟨x^n - 1⟩` and `F_{p^2}[x]/⟨x^n - 1⟩`.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros;
//! the zero polynomial is the empty vector.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::finite_field::{PrimeField, QuadElement, QuadField};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u32>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly<F_{}>({})", self.field.p(), self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Reduces every coefficient mod `p` and trims trailing zeros.
    pub fn new(field: PrimeField, mut coeffs: Vec<u32>) -> Self {
        let p = field.p();
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn from_signed(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.reduce(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::new(field, vec![1])
    }

    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    pub fn constant(field: PrimeField, c: u32) -> Self {
        Self::new(field, vec![c])
    }

    pub fn monomial(field: PrimeField, degree: usize, c: u32) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self::new(field, coeffs)
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(field: PrimeField, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = field.neg(1);
        coeffs[n] = 1;
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn eval(&self, at: u32) -> u32 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, at), c))
    }

    fn check(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field, coeffs }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let p = self.field.p() as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Poly::new(self.field, acc.into_iter().map(|c| c as u32).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        self.check(divisor);
        let f = self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.leading()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, lead_inv);
            quot[i - dd] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = f.sub(rem[k], f.mul(q, d));
            }
        }
        (Poly::new(f, quot), Poly::new(f, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Exact quotient; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()).unwrap())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·other = g = gcd(self, other)` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        self.check(other);
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.leading()).unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Monic lcm; zero if either argument is zero.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let g = self.gcd(other);
        self.mul(other).exact_div(&g).unwrap().monic()
    }

    /// Inverse of `self` modulo `modulus`, if it exists.
    pub fn inverse_mod(&self, modulus: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(modulus).xgcd(modulus);
        g.is_one().then(|| s.rem(modulus))
    }

    pub fn pow_mod(&self, e: &BigUint, modulus: &Poly) -> Poly {
        let mut acc = Poly::one(self.field).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if e.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// `x^deg · f(1/x)`.
    pub fn reciprocal(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(self.field, c)
    }

    /// Dense coefficient vector of length `n` (truncating anything above).
    pub fn dense(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.coeff(i)).collect()
    }
}

/// Element of `F_p[x]/⟨x^n - 1⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    n: usize,
    poly: Poly,
}

/// Folds exponents mod `n`, i.e. reduces mod `x^n - 1`.
pub fn reduce_cyclic(poly: &Poly, n: usize) -> Poly {
    assert!(n >= 1);
    let f = poly.field();
    if poly.coeffs().len() <= n {
        return poly.clone();
    }
    let mut acc = vec![0u32; n];
    for (i, &c) in poly.coeffs().iter().enumerate() {
        acc[i % n] = f.add(acc[i % n], c);
    }
    Poly::new(f, acc)
}

/// `u(x^{-1})` as a residue mod `x^n - 1`.
pub fn substitute_x_inverse(poly: &Poly, n: usize) -> Poly {
    let f = poly.field();
    let reduced = reduce_cyclic(poly, n);
    let mut acc = vec![0u32; n];
    for (i, &c) in reduced.coeffs().iter().enumerate() {
        acc[(n - i) % n] = c;
    }
    Poly::new(f, acc)
}

/// Product mod `x^n - 1` (cyclic convolution).
pub fn cyclic_mul(a: &Poly, b: &Poly, n: usize) -> Poly {
    let f = a.field();
    if a.is_zero() || b.is_zero() {
        return Poly::zero(f);
    }
    let p = f.p() as u64;
    let mut acc = vec![0u64; n];
    for (i, &x) in a.coeffs().iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs().iter().enumerate() {
            let k = (i + j) % n;
            acc[k] = (acc[k] + x as u64 * y as u64) % p;
        }
    }
    Poly::new(f, acc.into_iter().map(|c| c as u32).collect())
}

impl RingElement {
    pub fn new(n: usize, poly: Poly) -> Self {
        Self { n, poly: reduce_cyclic(&poly, n) }
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        Self { n, poly: Poly::zero(field) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    fn same_n(&self, other: &RingElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { expected: self.n, found: other.n });
        }
        if self.poly.field() != other.poly.field() {
            return Err(Error::FieldMismatch {
                left: self.poly.field().p(),
                right: other.poly.field().p(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_n(other)?;
        Ok(RingElement { n: self.n, poly: cyclic_mul(&self.poly, &other.poly, self.n) })
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_n(other)?;
        Ok(RingElement { n: self.n, poly: self.poly.add(&other.poly) })
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.same_n(other)?;
        Ok(RingElement { n: self.n, poly: self.poly.sub(&other.poly) })
    }

    pub fn substitute_x_inverse(&self) -> RingElement {
        RingElement { n: self.n, poly: substitute_x_inverse(&self.poly, self.n) }
    }
}

/// Element `a(x) + ω·b(x)` of `F_{p^2}[x]/⟨x^n - 1⟩`, kept as its two
/// `F_p` coordinate residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRingElement {
    n: usize,
    a: Poly,
    b: Poly,
}

impl QuadRingElement {
    pub fn new(n: usize, a: Poly, b: Poly) -> Self {
        assert_eq!(a.field(), b.field());
        Self { n, a: reduce_cyclic(&a, n), b: reduce_cyclic(&b, n) }
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        Self { n, a: Poly::zero(field), b: Poly::zero(field) }
    }

    pub fn from_elements(field: PrimeField, coords: &[QuadElement]) -> Self {
        let a = Poly::new(field, coords.iter().map(|c| c.a).collect());
        let b = Poly::new(field, coords.iter().map(|c| c.b).collect());
        Self::new(coords.len(), a, b)
    }

    /// Codeword whose coordinates are the two halves of a length-`2n` vector.
    pub fn from_split_vector(field: PrimeField, n: usize, v: &[u32]) -> Self {
        assert_eq!(v.len(), 2 * n);
        Self::new(n, Poly::new(field, v[..n].to_vec()), Poly::new(field, v[n..].to_vec()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.a.field()
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn check_compatible(&self, other: &QuadRingElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch { expected: self.n, found: other.n });
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch { left: self.field().p(), right: other.field().p() });
        }
        Ok(())
    }

    pub fn add(&self, other: &QuadRingElement) -> QuadRingElement {
        QuadRingElement { n: self.n, a: self.a.add(&other.a), b: self.b.add(&other.b) }
    }

    pub fn sub(&self, other: &QuadRingElement) -> QuadRingElement {
        QuadRingElement { n: self.n, a: self.a.sub(&other.a), b: self.b.sub(&other.b) }
    }

    /// The `F_p[x]`-module action `u ↦ s(x)·u`.
    pub fn scale_by(&self, s: &Poly) -> QuadRingElement {
        QuadRingElement {
            n: self.n,
            a: cyclic_mul(&self.a, s, self.n),
            b: cyclic_mul(&self.b, s, self.n),
        }
    }

    pub fn shift(&self, k: usize) -> QuadRingElement {
        QuadRingElement::new(self.n, self.a.shift(k), self.b.shift(k))
    }

    /// Multiplication by the scalar `ω`.
    pub fn mul_omega(&self, quad: &QuadField) -> QuadRingElement {
        let (c0, c1) = quad.omega_square();
        // ω(a + ωb) = c0·b + ω(a + c1·b)
        QuadRingElement {
            n: self.n,
            a: self.b.scale(c0),
            b: self.a.add(&self.b.scale(c1)),
        }
    }

    /// Length-`2n` vector `(a_0 … a_{n-1} | b_0 … b_{n-1})`.
    pub fn split_vector(&self) -> Vec<u32> {
        let mut v = self.a.dense(self.n);
        v.extend(self.b.dense(self.n));
        v
    }

    pub fn elements(&self) -> Vec<QuadElement> {
        (0..self.n).map(|i| QuadElement::new(self.a.coeff(i), self.b.coeff(i))).collect()
    }

    /// Number of coordinates `i` with `(a_i, b_i) ≠ (0, 0)`.
    pub fn weight(&self) -> usize {
        (0..self.n).filter(|&i| self.a.coeff(i) != 0 || self.b.coeff(i) != 0).count()
    }
}
