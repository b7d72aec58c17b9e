//! `p`-cyclotomic cosets mod `n` and everything indexed by them: the
//! irreducible factors `f_i` of `x^n - 1` over `F_p`, the negation pairing
//! `Z_j = -Z_i`, and the CRT idempotents projecting onto each component
//! `N_i = ⟨(x^n - 1)/f_i⟩`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_field::{
    find_primitive_root_of_unity, gcd_usize, ExtensionField, PrimeField, QuadField,
};
use crate::polyring::{cyclic_mul, Poly, QuadRingElement};

/// Orbits of `{0, …, n-1}` under multiplication by `p`, each sorted, ordered
/// by least element.
pub fn cyclotomic_cosets(n: usize, p: u32) -> Result<Vec<Vec<usize>>> {
    if n == 0 || gcd_usize(n, p as usize) != 1 {
        return Err(Error::NotCoprime { n, p });
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for leader in 0..n {
        if seen[leader] {
            continue;
        }
        let mut coset = Vec::new();
        let mut a = leader;
        while !seen[a] {
            seen[a] = true;
            coset.push(a);
            a = a * (p as usize) % n;
        }
        coset.sort_unstable();
        out.push(coset);
    }
    Ok(out)
}

/// `(singletons, size-two cosets)` from the gcd formulas
/// `gcd(n, p-1)` and `(gcd(n, p^2-1) - gcd(n, p-1))/2`, checked against the
/// explicit orbit computation.
pub fn count_small_cosets(n: usize, p: u32) -> Result<(usize, usize)> {
    let cosets = cyclotomic_cosets(n, p)?;
    let d = gcd_usize(n, p as usize - 1);
    let p2 = (p as u64 * p as u64 - 1) as u128;
    let d2 = gcd_u128(n as u128, p2) as usize;
    let formula = (d, (d2 - d) / 2);
    let direct = (
        cosets.iter().filter(|c| c.len() == 1).count(),
        cosets.iter().filter(|c| c.len() == 2).count(),
    );
    if formula != direct {
        return Err(Error::OracleMismatch(format!(
            "small coset counts for n={n}, p={p}: formula {formula:?}, orbits {direct:?}"
        )));
    }
    Ok(formula)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[derive(Clone, Debug)]
pub struct CosetStructure {
    n: usize,
    field: PrimeField,
    quad: QuadField,
    ext: ExtensionField,
    alpha: Poly,
    cosets: Vec<Vec<usize>>,
    factors: Vec<Poly>,
    cofactors: Vec<Poly>,
    cofactor_inverses: Vec<Poly>,
    idempotents: Vec<Poly>,
    pairing: Vec<usize>,
    coset_of: Vec<usize>,
}

impl CosetStructure {
    pub fn build(n: usize, p: u32) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let cosets = cyclotomic_cosets(n, p)?;
        let (ext, alpha) = find_primitive_root_of_unity(n, p)?;
        let xn1 = Poly::x_n_minus_one(field, n);

        let mut coset_of = vec![0; n];
        for (i, c) in cosets.iter().enumerate() {
            for &a in c {
                coset_of[a] = i;
            }
        }

        let mut factors = Vec::with_capacity(cosets.len());
        for coset in &cosets {
            factors.push(root_product(&ext, &alpha, coset)?);
        }
        let product = factors.iter().fold(Poly::one(field), |acc, f| acc.mul(f));
        if product != xn1 {
            return Err(Error::OracleMismatch(format!(
                "factors of x^{n}-1 over F_{p} multiply to {product}"
            )));
        }

        let mut cofactors = Vec::with_capacity(cosets.len());
        let mut cofactor_inverses = Vec::with_capacity(cosets.len());
        let mut idempotents = Vec::with_capacity(cosets.len());
        for f in &factors {
            let cof = xn1.exact_div(f).expect("factor divides x^n - 1");
            let (g, _, t) = f.xgcd(&cof);
            debug_assert!(g.is_one());
            idempotents.push(cyclic_mul(&t, &cof, n));
            cofactor_inverses.push(cof.inverse_mod(f).expect("x^n - 1 is squarefree"));
            cofactors.push(cof);
        }

        let pairing = cosets.iter().map(|c| coset_of[(n - c[0]) % n]).collect();

        Ok(Self {
            n,
            field,
            quad: QuadField::new(field),
            ext,
            alpha,
            cosets,
            factors,
            cofactors,
            cofactor_inverses,
            idempotents,
            pairing,
            coset_of,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn quad(&self) -> &QuadField {
        &self.quad
    }

    /// Splitting field of `x^n - 1` and the primitive `n`-th root used to
    /// index the factors.
    pub fn root_field(&self) -> (&ExtensionField, &Poly) {
        (&self.ext, &self.alpha)
    }

    /// Number of cosets `s`.
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn coset(&self, i: usize) -> &[usize] {
        &self.cosets[i]
    }

    pub fn leader(&self, i: usize) -> usize {
        self.cosets[i][0]
    }

    pub fn coset_size(&self, i: usize) -> usize {
        self.cosets[i].len()
    }

    pub fn coset_index_of(&self, residue: usize) -> usize {
        self.coset_of[residue % self.n]
    }

    pub fn factor(&self, i: usize) -> &Poly {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    /// `(x^n - 1)/f_i`.
    pub fn cofactor(&self, i: usize) -> &Poly {
        &self.cofactors[i]
    }

    /// Inverse of `(x^n - 1)/f_i` modulo `f_i`.
    pub fn cofactor_inverse(&self, i: usize) -> &Poly {
        &self.cofactor_inverses[i]
    }

    pub fn idempotent(&self, i: usize) -> &Poly {
        &self.idempotents[i]
    }

    /// Index `j` with `Z_j = -Z_i`.
    pub fn pair_of(&self, i: usize) -> usize {
        self.pairing[i]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn is_self_paired(&self, i: usize) -> bool {
        self.pairing[i] == i
    }

    pub fn self_paired(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_self_paired(i)).collect()
    }

    /// Pairs `(i, j)`, `i < j`, with `Z_j = -Z_i ≠ Z_i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&i| self.pairing[i] > i)
            .map(|i| (i, self.pairing[i]))
            .collect()
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(Error::ComponentIndex { index: i, count: self.len() });
        }
        Ok(())
    }

    /// The `N_i`-component `e_i(x)·u(x)`.
    pub fn project_component(&self, u: &QuadRingElement, i: usize) -> Result<QuadRingElement> {
        self.check_index(i)?;
        if u.n() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: u.n() });
        }
        if u.field() != self.field {
            return Err(Error::FieldMismatch { left: self.p(), right: u.field().p() });
        }
        Ok(u.scale_by(&self.idempotents[i]))
    }

    pub fn dump(&self) -> CosetDump {
        CosetDump {
            n: self.n,
            p: self.p(),
            cosets: self.cosets.clone(),
            leaders: (0..self.len()).map(|i| self.leader(i)).collect(),
            factors: self.factors.iter().map(|f| f.coeffs().to_vec()).collect(),
            pairing: self.pairing.clone(),
            self_paired: self.self_paired(),
            idempotents: self.idempotents.iter().map(|e| e.coeffs().to_vec()).collect(),
        }
    }
}

/// JSON view of a [`CosetStructure`]; polynomial coefficients ascending.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CosetDump {
    pub n: usize,
    pub p: u32,
    pub cosets: Vec<Vec<usize>>,
    pub leaders: Vec<usize>,
    pub factors: Vec<Vec<u32>>,
    pub pairing: Vec<usize>,
    pub self_paired: Vec<usize>,
    pub idempotents: Vec<Vec<u32>>,
}

/// `∏_{a ∈ Z}(x - α^a)`, which must land in `F_p[x]`.
fn root_product(ext: &ExtensionField, alpha: &Poly, coset: &[usize]) -> Result<Poly> {
    let field = ext.base();
    let mut coeffs: Vec<Poly> = vec![ext.one()];
    for &a in coset {
        let root = ext.pow_u64(alpha, a as u64);
        let mut next = vec![ext.zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = ext.add(&next[k + 1], c);
            next[k] = ext.sub(&next[k], &ext.mul(&root, c));
        }
        coeffs = next;
    }
    let mut base = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        match c.degree() {
            None => base.push(0),
            Some(0) => base.push(c.coeff(0)),
            Some(_) => {
                return Err(Error::OracleMismatch(format!(
                    "coset {coset:?} factor has a coefficient outside F_{}",
                    field.p()
                )))
            }
        }
    }
    Ok(Poly::new(field, base))
}

impl ExtensionField {
    /// Evaluates an `F_p` polynomial at an extension element (Horner).
    pub fn eval(&self, poly: &Poly, at: &Poly) -> Poly {
        poly.coeffs().iter().rev().fold(self.zero(), |acc, &c| {
            self.add(&self.mul(&acc, at), &Poly::constant(self.base(), c))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    #[test]
    fn coset_examples() {
        assert_eq!(cyclotomic_cosets(7, 2).unwrap(), vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
        let mut sizes: Vec<usize> = cyclotomic_cosets(21, 2).unwrap().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3, 3, 6, 6]);
        let one = CosetStructure::build(1, 2).unwrap();
        assert_eq!(one.cosets(), &[vec![0]]);
        assert_eq!(one.factor(0).coeffs(), &[1, 1]);
        assert!(matches!(CosetStructure::build(6, 3), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn small_coset_examples() {
        for n in (1..60).step_by(2) {
            assert_eq!(count_small_cosets(n, 2).unwrap().0, 1);
        }
        for n in (2..60).step_by(2) {
            if n % 3 == 0 {
                continue;
            }
            assert_eq!(count_small_cosets(n, 3).unwrap().0, 2);
            let cosets = cyclotomic_cosets(n, 3).unwrap();
            let singles: Vec<usize> = cosets.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
            assert_eq!(singles, vec![0, n / 2]);
        }
        assert_eq!(count_small_cosets(7, 2).unwrap(), (1, 0));
    }

    #[test]
    fn factorization_for_all_small_lengths() {
        for p in [2u32, 3, 5] {
            for n in 1..=64usize {
                if n % p as usize == 0 {
                    continue;
                }
                let cs = CosetStructure::build(n, p).unwrap();
                let f = cs.field();
                let product = cs.factors().iter().fold(Poly::one(f), |a, b| a.mul(b));
                assert_eq!(product, Poly::x_n_minus_one(f, n));
                assert_eq!(cs.cosets().iter().map(Vec::len).sum::<usize>(), n);
                assert_eq!(cs.factors().iter().map(|f| f.degree().unwrap()).sum::<usize>(), n);
                for i in 0..cs.len() {
                    let j = cs.pair_of(i);
                    assert_eq!(cs.pair_of(j), i);
                    if cs.is_self_paired(i) && cs.coset_size(i) > 1 {
                        assert_eq!(cs.coset_size(i) % 2, 0, "n={n} p={p} coset {:?}", cs.coset(i));
                    }
                }
            }
        }
    }

    #[test]
    fn paired_factors_have_inverse_roots() {
        for (n, p) in [(7usize, 2u32), (15, 2), (21, 2), (8, 3), (10, 3), (13, 5)] {
            let cs = CosetStructure::build(n, p).unwrap();
            let (ext, alpha) = cs.root_field();
            for i in 0..cs.len() {
                let j = cs.pair_of(i);
                // reciprocal of f_i, normalized, equals f_j
                assert_eq!(cs.factor(i).reciprocal().monic(), *cs.factor(j));
                for &a in cs.coset(i) {
                    let inv_root = ext.pow_u64(alpha, ((n - a) % n) as u64);
                    assert!(ext.eval(cs.factor(j), &inv_root).is_zero());
                }
            }
        }
    }

    #[test]
    fn idempotents_are_orthogonal_and_complete() {
        for (n, p) in [(7usize, 2u32), (15, 2), (8, 3), (1, 2), (12, 5)] {
            let cs = CosetStructure::build(n, p).unwrap();
            let f = cs.field();
            let mut sum = Poly::zero(f);
            for i in 0..cs.len() {
                let e = cs.idempotent(i);
                assert!(e.sub(&Poly::one(f)).rem(cs.factor(i)).is_zero());
                assert!(e.rem(cs.cofactor(i)).is_zero());
                for k in 0..cs.len() {
                    let prod = cyclic_mul(e, cs.idempotent(k), n);
                    if k == i {
                        assert_eq!(&prod, e);
                    } else {
                        assert!(prod.is_zero());
                    }
                }
                sum = sum.add(e);
            }
            assert_eq!(sum, Poly::one(f));
        }
    }

    #[test]
    fn projection_examples() {
        let mut rng = StdRng::seed_from_u64(5);
        let cs = CosetStructure::build(15, 2).unwrap();
        let f = cs.field();
        for i in 0..cs.len() {
            let u = QuadRingElement::new(15, cs.cofactor(i).clone(), Poly::zero(f));
            for k in 0..cs.len() {
                let proj = cs.project_component(&u, k).unwrap();
                if k == i {
                    assert_eq!(proj, u);
                } else {
                    assert!(proj.is_zero());
                }
            }
        }
        assert!(matches!(
            cs.project_component(&QuadRingElement::zero(f, 15), 99),
            Err(Error::ComponentIndex { .. })
        ));
        // CRT oracle: the component is determined by the residues mod each f_k
        for _ in 0..50 {
            let a = Poly::new(f, (0..15).map(|_| rng.gen_range(0..2)).collect());
            let b = Poly::new(f, (0..15).map(|_| rng.gen_range(0..2)).collect());
            let u = QuadRingElement::new(15, a.clone(), b.clone());
            let mut total = QuadRingElement::zero(f, 15);
            for i in 0..cs.len() {
                let proj = cs.project_component(&u, i).unwrap();
                for k in 0..cs.len() {
                    let fk = cs.factor(k);
                    let want_a = if k == i { a.rem(fk) } else { Poly::zero(f) };
                    let want_b = if k == i { b.rem(fk) } else { Poly::zero(f) };
                    assert_eq!(proj.a().rem(fk), want_a);
                    assert_eq!(proj.b().rem(fk), want_b);
                }
                total = total.add(&proj);
            }
            assert_eq!(total, u);
        }
    }

    #[test]
    fn ring_product_agrees_with_evaluation_at_roots() {
        let mut rng = StdRng::seed_from_u64(9);
        for (n, p) in [(7usize, 2u32), (8, 3), (11, 5)] {
            let cs = CosetStructure::build(n, p).unwrap();
            let f = cs.field();
            let (ext, alpha) = cs.root_field();
            for _ in 0..20 {
                let u = Poly::new(f, (0..n).map(|_| rng.gen_range(0..p)).collect());
                let v = Poly::new(f, (0..n).map(|_| rng.gen_range(0..p)).collect());
                let uv = cyclic_mul(&u, &v, n);
                let u_inv = crate::polyring::substitute_x_inverse(&u, n);
                for k in 0..n {
                    let beta = ext.pow_u64(alpha, k as u64);
                    let beta_inv = ext.pow_u64(alpha, ((n - k) % n) as u64);
                    assert_eq!(ext.eval(&uv, &beta), ext.mul(&ext.eval(&u, &beta), &ext.eval(&v, &beta)));
                    assert_eq!(ext.eval(&u_inv, &beta), ext.eval(&u, &beta_inv));
                }
            }
        }
    }
}
