//! Symplectic duality for additive cyclic codes: the inner product, the
//! polynomial star product, component-wise duals, and the parameter
//! `e = dim C − dim(C ∩ C^⊥s)` with its bucket decomposition.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::additive_code::{AdditiveCyclicCode, ComponentForm};
use crate::cyclotomic::CosetStructure;
use crate::error::{Error, Result};
use crate::finite_field::{PrimeField, QuadElement};
use crate::linalg::{nullspace, rank, RowSpace};
use crate::polyring::{cyclic_mul, substitute_x_inverse, Poly, QuadRingElement};

/// `⟨a + ωb, a′ + ωb′⟩ₛ = a′·b − a·b′`.
pub fn symplectic_inner(field: PrimeField, u: &[QuadElement], v: &[QuadElement]) -> Result<u32> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { expected: u.len(), found: v.len() });
    }
    Ok(u.iter().zip(v).fold(0, |acc, (x, y)| {
        field.add(acc, field.sub(field.mul(y.a, x.b), field.mul(x.a, y.b)))
    }))
}

/// [`symplectic_inner`] on split vectors `(a | b)` of length `2n`.
pub fn symplectic_inner_split(field: PrimeField, u: &[u32], v: &[u32]) -> u32 {
    debug_assert_eq!(u.len(), v.len());
    let n = u.len() / 2;
    let (ua, ub) = u.split_at(n);
    let (va, vb) = v.split_at(n);
    let mut acc = 0;
    for i in 0..n {
        acc = field.add(acc, field.sub(field.mul(va[i], ub[i]), field.mul(ua[i], vb[i])));
    }
    acc
}

/// `g₁(x)g₂′(x⁻¹) − g₂(x)g₁′(x⁻¹) mod xⁿ − 1` for `c = g₁ + ωg₂`,
/// `c′ = g₁′ + ωg₂′`. Its coefficient of `xⁱ` is `c * (xⁱc′)`.
pub fn star_polynomial(c: &QuadRingElement, c2: &QuadRingElement) -> Result<Poly> {
    c.check_compatible(c2)?;
    let n = c.n();
    let left = cyclic_mul(c.a(), &substitute_x_inverse(c2.b(), n), n);
    let right = cyclic_mul(c.b(), &substitute_x_inverse(c2.a(), n), n);
    Ok(left.sub(&right))
}

/// `c * c′ = Σ (aᵢb′ᵢ − a′ᵢbᵢ) = −⟨c, c′⟩ₛ`.
pub fn star_product(c: &QuadRingElement, c2: &QuadRingElement) -> Result<u32> {
    c.check_compatible(c2)?;
    let f = c.field();
    let n = c.n();
    let mut acc = 0;
    for i in 0..n {
        acc = f.add(acc, f.sub(f.mul(c.a().coeff(i), c2.b().coeff(i)), f.mul(c2.a().coeff(i), c.b().coeff(i))));
    }
    debug_assert_eq!(acc, star_polynomial(c, c2)?.coeff(0));
    Ok(acc)
}

/// The symplectic dual, component by component: the dual's component at `i`
/// depends only on `C_j` with `Z_j = −Z_i`.
pub fn dual(code: &AdditiveCyclicCode) -> AdditiveCyclicCode {
    let cs = code.structure();
    let n = cs.n();
    let components = (0..cs.len())
        .map(|i| {
            let j = cs.pair_of(i);
            match code.component(j) {
                ComponentForm::Zero => ComponentForm::Full,
                ComponentForm::Full => ComponentForm::Zero,
                ComponentForm::Plain => ComponentForm::Plain,
                ComponentForm::Omega(s) => ComponentForm::Omega(dual_omega_parameter(cs, i, s)),
            }
        })
        .collect();
    let d = AdditiveCyclicCode::from_components(cs.clone(), components).expect("dual parameters are reduced");
    debug_assert_eq!(d.dimension() + code.dimension(), 2 * n);
    d
}

/// `t_i ≡ s_j(x⁻¹) (mod f_i)`, the dual partner of `Omega(s_j)` at coset `i`.
pub fn dual_omega_parameter(cs: &CosetStructure, i: usize, s_j: &Poly) -> Poly {
    substitute_x_inverse(s_j, cs.n()).rem(cs.factor(i))
}

/// Dual via the `F_p` nullspace of the generator matrix under the symplectic
/// pairing: `⟨(a|b), (a′|b′)⟩ₛ = (a′|b′)·(b | −a)`.
pub fn dual_by_nullspace(code: &AdditiveCyclicCode) -> Result<AdditiveCyclicCode> {
    let n = code.n();
    let f = code.field();
    let rows: Vec<Vec<u32>> = code
        .generator_matrix()
        .into_iter()
        .map(|r| {
            let (a, b) = r.split_at(n);
            b.iter().copied().chain(a.iter().map(|&x| f.neg(x))).collect()
        })
        .collect();
    let gens: Vec<QuadRingElement> = nullspace(f, 2 * n, &rows)
        .iter()
        .map(|v| QuadRingElement::from_split_vector(f, n, v))
        .collect();
    AdditiveCyclicCode::from_generators(code.structure().clone(), &gens)
}

/// The two congruences for `⟨g₁ + ωg₂, h⟩` with `h` a plain generator:
/// `g₂(x)h(x⁻¹) ≡ 0` and `g₁(x)g₂(x⁻¹) ≡ g₂(x)g₁(x⁻¹)` mod `xⁿ − 1`.
pub fn polynomial_criterion(g1: &Poly, g2: &Poly, h: &Poly, n: usize) -> bool {
    let cond1 = cyclic_mul(g2, &substitute_x_inverse(h, n), n).is_zero();
    let cond2 = cyclic_mul(g1, &substitute_x_inverse(g2, n), n) == cyclic_mul(g2, &substitute_x_inverse(g1, n), n);
    cond1 && cond2
}

/// Self-orthogonality of `⟨g + ωk, ωh⟩` from its canonical triple.
///
/// The swap `a + ωb ↦ b + ωa` negates the form and commutes with the shift,
/// so it sends the code to `⟨k + ωg, h⟩` with `h` plain, where
/// [`polynomial_criterion`] applies.
pub fn self_orthogonality_criterion(code: &AdditiveCyclicCode) -> bool {
    let (g, k, h) = code.canonical_generators();
    polynomial_criterion(&k, &g, &h, code.n())
}

/// A self-paired coset or a pair `{i, j}` with `Z_j = −Z_i`, `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    SelfPaired(usize),
    Pair(usize, usize),
}

impl Slot {
    pub fn first(&self) -> usize {
        match *self {
            Slot::SelfPaired(i) | Slot::Pair(i, _) => i,
        }
    }
}

/// Every slot, ordered by smallest coset index.
pub fn slots(cs: &CosetStructure) -> Vec<Slot> {
    (0..cs.len())
        .filter_map(|i| {
            let j = cs.pair_of(i);
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => Some(Slot::SelfPaired(i)),
                std::cmp::Ordering::Less => Some(Slot::Pair(i, j)),
                std::cmp::Ordering::Greater => None,
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bucket {
    Orthogonal,
    B1,
    B2,
    B3,
    B4,
    B5,
}

impl Bucket {
    /// Contribution to `e` for a slot whose cosets have size `m`.
    pub fn cost(self, m: usize) -> usize {
        match self {
            Bucket::Orthogonal => 0,
            Bucket::B2 => m,
            Bucket::B1 | Bucket::B3 | Bucket::B5 => 2 * m,
            Bucket::B4 => 4 * m,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Bucket::Orthogonal => "orthogonal",
            Bucket::B1 => "B1",
            Bucket::B2 => "B2",
            Bucket::B3 => "B3",
            Bucket::B4 => "B4",
            Bucket::B5 => "B5",
        }
    }
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Bucket {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

pub fn self_paired_bucket(cs: &CosetStructure, i: usize, form: &ComponentForm) -> Bucket {
    match form {
        ComponentForm::Zero | ComponentForm::Plain => Bucket::Orthogonal,
        ComponentForm::Full => Bucket::B1,
        ComponentForm::Omega(s) => {
            if dual_omega_parameter(cs, i, s) == *s {
                Bucket::Orthogonal
            } else {
                Bucket::B2
            }
        }
    }
}

pub fn pair_bucket(cs: &CosetStructure, j1: usize, j2: usize, c1: &ComponentForm, c2: &ComponentForm) -> Bucket {
    use ComponentForm::*;
    match (c1, c2) {
        (Zero, _) | (_, Zero) => Bucket::Orthogonal,
        (Full, Full) => Bucket::B4,
        (Full, _) | (_, Full) => Bucket::B3,
        (Plain, Plain) => Bucket::Orthogonal,
        (Omega(s1), Omega(s2)) => {
            let matched = dual_omega_parameter(cs, j2, s1) == *s2;
            debug_assert_eq!(matched, dual_omega_parameter(cs, j1, s2) == *s1);
            if matched {
                Bucket::Orthogonal
            } else {
                Bucket::B5
            }
        }
        _ => Bucket::B5,
    }
}

pub fn slot_bucket(cs: &CosetStructure, slot: Slot, components: &[ComponentForm]) -> Bucket {
    match slot {
        Slot::SelfPaired(i) => self_paired_bucket(cs, i, &components[i]),
        Slot::Pair(i, j) => pair_bucket(cs, i, j, &components[i], &components[j]),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BucketEntry {
    pub slot: Slot,
    pub cosets: Vec<usize>,
    pub bucket: Bucket,
    pub cost: usize,
}

/// Bucket of every slot plus `e` as the sum of their costs, without any
/// linear algebra.
pub fn bucket_assignment(code: &AdditiveCyclicCode) -> (Vec<BucketEntry>, usize) {
    let cs = code.structure();
    let mut e = 0;
    let entries: Vec<BucketEntry> = slots(cs)
        .into_iter()
        .map(|slot| {
            let bucket = slot_bucket(cs, slot, code.components());
            let cost = bucket.cost(cs.coset_size(slot.first()));
            e += cost;
            let cosets = match slot {
                Slot::SelfPaired(i) => vec![i],
                Slot::Pair(i, j) => vec![i, j],
            };
            BucketEntry { slot, cosets, bucket, cost }
        })
        .collect();
    (entries, e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub dim: usize,
    pub dim_intersection: usize,
    pub e: usize,
    pub is_self_orthogonal: bool,
    pub is_self_dual: bool,
    pub buckets: Vec<BucketEntry>,
    /// Whether exactly one slot is non-orthogonal and it is a full singleton
    /// coset or a size-two coset in `B2`.
    pub small_e_rule_predicts_two: bool,
    /// `(e == 2) == small_e_rule_predicts_two`. Fails for codes whose only
    /// defect is a pair of singleton cosets (possible when `p ≥ 5`).
    pub small_e_rule_consistent: bool,
}

/// Buckets and `e`, cross-checked against the rank oracle
/// `dim C − (rank G_C + rank G_D − rank [G_C; G_D])` with `D = C^⊥s`.
pub fn classify_orthogonality(code: &AdditiveCyclicCode) -> Result<OrthogonalityReport> {
    let (buckets, e) = bucket_assignment(code);
    let dim = code.dimension();
    let d = dual(code);
    let space_c = code.row_space();
    let space_d = d.row_space();
    let dim_intersection = space_c.intersection_dim(&space_d);
    if dim - dim_intersection != e {
        return Err(Error::OracleMismatch(format!(
            "bucket formula gives e = {e}, rank oracle gives {}",
            dim - dim_intersection
        )));
    }
    if e % 2 != 0 {
        return Err(Error::OracleMismatch(format!("odd e = {e}")));
    }
    let cs = code.structure();
    let defects: Vec<&BucketEntry> = buckets.iter().filter(|b| b.bucket != Bucket::Orthogonal).collect();
    let small_e_rule_predicts_two = match defects.as_slice() {
        [only] => {
            let m = cs.coset_size(only.slot.first());
            (only.bucket == Bucket::B1 && m == 1) || (only.bucket == Bucket::B2 && m == 2)
        }
        _ => false,
    };
    Ok(OrthogonalityReport {
        dim,
        dim_intersection,
        e,
        is_self_orthogonal: e == 0,
        is_self_dual: e == 0 && dim == code.n(),
        buckets,
        small_e_rule_predicts_two,
        small_e_rule_consistent: (e == 2) == small_e_rule_predicts_two,
    })
}

/// `e` as the rank of the Gram matrix `⟨rᵢ, rⱼ⟩ₛ` of a basis of `C`; the
/// radical of the form restricted to `C` is `C ∩ C^⊥s`.
pub fn e_by_gram_rank(code: &AdditiveCyclicCode) -> usize {
    let f = code.field();
    let rows = code.generator_matrix();
    let gram: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| rows.iter().map(|s| symplectic_inner_split(f, r, s)).collect())
        .collect();
    rank(f, rows.len(), &gram)
}

/// `dim(C ∩ C^⊥s)` with the dual taken as the symplectic nullspace.
pub fn intersection_dim_by_nullspace(code: &AdditiveCyclicCode) -> Result<usize> {
    let d = dual_by_nullspace(code)?;
    let c: RowSpace = code.row_space();
    Ok(c.intersection_dim(&d.row_space()))
}
