//! Additive cyclic codes as `F_p[x]`-submodules of `F_{p^2}[x]/⟨x^n - 1⟩`,
//! stored canonically as one [`ComponentForm`] per cyclotomic coset.
//!
//! Inside `N_i = ⟨(x^n-1)/f_i⟩` a submodule is zero, all of `N_i`, or
//! generated by exactly one element of
//! `{ ((x^n-1)/f_i)(ω + s) : deg s < deg f_i } ∪ { (x^n-1)/f_i }`.
//! Summing the chosen generators over all components gives the unique
//! triple `(g, k, h)` with `C = ⟨g + ωk, ωh⟩`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CosetStructure;
use crate::error::{Error, Result};
use crate::finite_field::PrimeField;
use crate::linalg::RowSpace;
use crate::polyring::{cyclic_mul, Poly, QuadRingElement};

/// The submodule `C_i ⊆ N_i`. Writing `F_i = (x^n-1)/f_i`:
/// `Plain` is `⟨F_i⟩`, `Omega(s)` is `⟨F_i·(ω + s)⟩` with `deg s < deg f_i`,
/// `Full` is `N_i` itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ComponentForm {
    Zero,
    Plain,
    Omega(Poly),
    Full,
}

impl ComponentForm {
    /// Number of nonzero canonical generators (0, 1 or 2).
    pub fn generator_count(&self) -> usize {
        match self {
            ComponentForm::Zero => 0,
            ComponentForm::Plain | ComponentForm::Omega(_) => 1,
            ComponentForm::Full => 2,
        }
    }

    pub fn is_one_generator(&self) -> bool {
        self.generator_count() == 1
    }

    pub fn label(&self) -> &'static str {
        match self {
            ComponentForm::Zero => "zero",
            ComponentForm::Plain => "plain",
            ComponentForm::Omega(_) => "omega",
            ComponentForm::Full => "full",
        }
    }
}

impl fmt::Display for ComponentForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentForm::Omega(s) => write!(f, "omega(s = {s})"),
            other => write!(f, "{}", other.label()),
        }
    }
}

/// Every `s` with `deg s < m`, ordered by the base-`p` integer whose digits
/// are the coefficients (constant term least significant).
pub fn polys_below_degree(field: PrimeField, m: usize) -> impl Iterator<Item = Poly> {
    let p = field.p() as u64;
    let count = p.checked_pow(m as u32).expect("p^m overflows u64");
    (0..count).map(move |mut idx| {
        let mut c = Vec::with_capacity(m);
        for _ in 0..m {
            c.push((idx % p) as u32);
            idx /= p;
        }
        Poly::new(field, c)
    })
}

/// Index of `s` in [`polys_below_degree`] order.
pub fn poly_index(s: &Poly) -> u64 {
    let p = s.field().p() as u64;
    s.coeffs().iter().rev().fold(0u64, |acc, &c| acc * p + c as u64)
}

/// `(a mod f_i, b mod f_i)` with `r = F_i·(a + ωb)`, for `r ∈ N_i`.
pub fn component_coordinates(cs: &CosetStructure, r: &QuadRingElement, i: usize) -> (Poly, Poly) {
    let f = cs.factor(i);
    let inv = cs.cofactor_inverse(i);
    (r.a().mul(inv).rem(f), r.b().mul(inv).rem(f))
}

/// Canonical one-generator form of `⟨r⟩_{F_p[x]}` for a nonzero `r ∈ N_i`.
pub fn canonicalize_in_component(
    cs: &CosetStructure,
    r: &QuadRingElement,
    i: usize,
) -> Result<ComponentForm> {
    let projected = cs.project_component(r, i)?;
    if &projected != r || r.is_zero() {
        return Err(Error::NotInComponent { index: i });
    }
    let (a, b) = component_coordinates(cs, r, i);
    if b.is_zero() {
        return Ok(ComponentForm::Plain);
    }
    let f = cs.factor(i);
    let b_inv = b.inverse_mod(f).expect("f_i is irreducible");
    Ok(ComponentForm::Omega(a.mul(&b_inv).rem(f)))
}

/// The canonical generators of a component, as ring elements.
pub fn form_generators(cs: &CosetStructure, i: usize, form: &ComponentForm) -> Vec<QuadRingElement> {
    let n = cs.n();
    let field = cs.field();
    let cof = cs.cofactor(i);
    let zero = Poly::zero(field);
    match form {
        ComponentForm::Zero => vec![],
        ComponentForm::Plain => vec![QuadRingElement::new(n, cof.clone(), zero)],
        ComponentForm::Omega(s) => vec![QuadRingElement::new(n, cyclic_mul(cof, s, n), cof.clone())],
        ComponentForm::Full => vec![
            QuadRingElement::new(n, cof.clone(), zero.clone()),
            QuadRingElement::new(n, zero, cof.clone()),
        ],
    }
}

#[derive(Clone, Debug)]
pub struct AdditiveCyclicCode {
    structure: Arc<CosetStructure>,
    components: Vec<ComponentForm>,
}

impl PartialEq for AdditiveCyclicCode {
    fn eq(&self, other: &Self) -> bool {
        self.structure.n() == other.structure.n()
            && self.structure.p() == other.structure.p()
            && self.components == other.components
    }
}

impl Eq for AdditiveCyclicCode {}

impl AdditiveCyclicCode {
    pub fn from_components(structure: Arc<CosetStructure>, components: Vec<ComponentForm>) -> Result<Self> {
        if components.len() != structure.len() {
            return Err(Error::LengthMismatch { expected: structure.len(), found: components.len() });
        }
        for (i, c) in components.iter().enumerate() {
            if let ComponentForm::Omega(s) = c {
                let m = structure.factor(i).degree().unwrap();
                if s.field() != structure.field() || s.degree().is_some_and(|d| d >= m) {
                    return Err(Error::InvalidDescriptor(format!(
                        "component {i}: s = {s} must have degree < {m}"
                    )));
                }
            }
        }
        Ok(Self { structure, components })
    }

    pub fn zero(structure: Arc<CosetStructure>) -> Self {
        let components = vec![ComponentForm::Zero; structure.len()];
        Self { structure, components }
    }

    pub fn full(structure: Arc<CosetStructure>) -> Self {
        let components = vec![ComponentForm::Full; structure.len()];
        Self { structure, components }
    }

    /// The smallest additive cyclic code containing `gens`.
    ///
    /// Each component is classified twice, by `F_p`-rank of the shifts of the
    /// projections and by the dimension of their span over the field
    /// `F_p[x]/⟨f_i⟩`; disagreement is reported as an error.
    pub fn from_generators(structure: Arc<CosetStructure>, gens: &[QuadRingElement]) -> Result<Self> {
        let cs = &*structure;
        for g in gens {
            if g.n() != cs.n() {
                return Err(Error::LengthMismatch { expected: cs.n(), found: g.n() });
            }
            if g.field() != cs.field() {
                return Err(Error::FieldMismatch { left: cs.p(), right: g.field().p() });
            }
        }
        let mut components = Vec::with_capacity(cs.len());
        for i in 0..cs.len() {
            let projections: Vec<QuadRingElement> = gens
                .iter()
                .map(|g| cs.project_component(g, i))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|r| !r.is_zero())
                .collect();
            components.push(classify_component(cs, i, &projections)?);
        }
        Ok(Self { structure, components })
    }

    /// Builds the code `⟨g + ωk, ωh⟩` named by a descriptor.
    pub fn from_descriptor(desc: &CodeDescriptor) -> Result<Self> {
        desc.validate()?;
        let structure = Arc::new(CosetStructure::build(desc.n, desc.p)?);
        Self::from_descriptor_in(structure, desc)
    }

    pub fn from_descriptor_in(structure: Arc<CosetStructure>, desc: &CodeDescriptor) -> Result<Self> {
        desc.validate()?;
        if desc.n != structure.n() || desc.p != structure.p() {
            return Err(Error::InvalidDescriptor(format!(
                "descriptor is for (n={}, p={}), structure for (n={}, p={})",
                desc.n,
                desc.p,
                structure.n(),
                structure.p()
            )));
        }
        let gens = desc.generators();
        Self::from_generators(structure, &gens)
    }

    pub fn structure(&self) -> &Arc<CosetStructure> {
        &self.structure
    }

    pub fn n(&self) -> usize {
        self.structure.n()
    }

    pub fn p(&self) -> u32 {
        self.structure.p()
    }

    pub fn field(&self) -> PrimeField {
        self.structure.field()
    }

    pub fn components(&self) -> &[ComponentForm] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &ComponentForm {
        &self.components[i]
    }

    /// `Σ deg f_i × (number of nonzero generators of C_i)`.
    pub fn dimension(&self) -> usize {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| self.structure.coset_size(i) * c.generator_count())
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| *c == ComponentForm::Zero)
    }

    /// The canonical `(g, k, h)` with `C = ⟨g + ωk, ωh⟩_{F_p[x]}`.
    pub fn canonical_generators(&self) -> (Poly, Poly, Poly) {
        let cs = &*self.structure;
        let n = cs.n();
        let field = cs.field();
        let (mut g, mut k, mut h) = (Poly::zero(field), Poly::zero(field), Poly::zero(field));
        for (i, form) in self.components.iter().enumerate() {
            let cof = cs.cofactor(i);
            match form {
                ComponentForm::Zero => {}
                ComponentForm::Plain => g = g.add(cof),
                ComponentForm::Omega(s) => {
                    g = g.add(&cyclic_mul(cof, s, n));
                    k = k.add(cof);
                }
                ComponentForm::Full => {
                    g = g.add(cof);
                    h = h.add(cof);
                }
            }
        }
        (g, k, h)
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        let (g, k, h) = self.canonical_generators();
        CodeDescriptor {
            p: self.p(),
            n: self.n(),
            g: g.into_coeffs(),
            k: k.into_coeffs(),
            h: h.into_coeffs(),
        }
    }

    /// Canonical generators of every component.
    pub fn generators(&self) -> Vec<QuadRingElement> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(i, f)| form_generators(&self.structure, i, f))
            .collect()
    }

    /// `F_p` generator matrix, `dim × 2n`, columns `(a_0…a_{n-1} | b_0…b_{n-1})`.
    /// Rows are `x^j·r` for each canonical generator `r` of `C_i` and
    /// `j < deg f_i`, which is a basis.
    pub fn generator_matrix(&self) -> Vec<Vec<u32>> {
        let mut rows = Vec::with_capacity(self.dimension());
        for (i, form) in self.components.iter().enumerate() {
            let m = self.structure.coset_size(i);
            for r in form_generators(&self.structure, i, form) {
                for j in 0..m {
                    rows.push(r.shift(j).split_vector());
                }
            }
        }
        rows
    }

    pub fn row_space(&self) -> RowSpace {
        let space = RowSpace::from_rows(self.field(), 2 * self.n(), self.generator_matrix());
        debug_assert_eq!(space.dim(), self.dimension());
        space
    }

    pub fn contains(&self, v: &QuadRingElement) -> bool {
        if v.n() != self.n() || v.field() != self.field() {
            return false;
        }
        self.row_space().contains(&v.split_vector())
    }

    pub fn contains_code(&self, other: &AdditiveCyclicCode) -> bool {
        self.row_space().contains_space(&other.row_space())
    }

    /// `F_{p^2}`-linearity: every component is zero or all of `N_i`.
    pub fn is_linear(&self) -> bool {
        let linear = self
            .components
            .iter()
            .all(|c| matches!(c, ComponentForm::Zero | ComponentForm::Full));
        debug_assert_eq!(linear, self.omega_closed());
        linear
    }

    /// Whether the row space is closed under multiplication by `ω`.
    pub fn omega_closed(&self) -> bool {
        let space = self.row_space();
        let quad = self.structure.quad();
        let n = self.n();
        let field = self.field();
        space.basis().iter().all(|row| {
            let u = QuadRingElement::from_split_vector(field, n, row);
            space.contains(&u.mul_omega(quad).split_vector())
        })
    }

    /// `C + D`, computed component-wise.
    pub fn sum(&self, other: &AdditiveCyclicCode) -> Result<AdditiveCyclicCode> {
        if self.n() != other.n() || self.p() != other.p() {
            return Err(Error::LengthMismatch { expected: self.n(), found: other.n() });
        }
        let mut gens = self.generators();
        gens.extend(other.generators());
        Self::from_generators(self.structure.clone(), &gens)
    }
}

fn classify_component(cs: &CosetStructure, i: usize, projections: &[QuadRingElement]) -> Result<ComponentForm> {
    let m = cs.coset_size(i);
    let n = cs.n();
    let field = cs.field();

    let shifted = projections
        .iter()
        .flat_map(|r| (0..m).map(move |j| r.shift(j).split_vector()));
    let rank = RowSpace::from_rows(field, 2 * n, shifted).dim();

    let f = cs.factor(i);
    let coords: Vec<(Poly, Poly)> = projections.iter().map(|r| component_coordinates(cs, r, i)).collect();
    let field_dim = match coords.first() {
        None => 0,
        Some((a0, b0)) => {
            let independent = coords[1..]
                .iter()
                .any(|(a, b)| !a0.mul(b).sub(&a.mul(b0)).rem(f).is_zero());
            if independent {
                2
            } else {
                1
            }
        }
    };
    if rank != field_dim * m {
        return Err(Error::OracleMismatch(format!(
            "component {i}: F_p-rank {rank} but dimension {field_dim} over F_p[x]/<f_i> (deg {m})"
        )));
    }
    match field_dim {
        0 => Ok(ComponentForm::Zero),
        1 => canonicalize_in_component(cs, &projections[0], i),
        _ => Ok(ComponentForm::Full),
    }
}

/// Every irreducible code: per coset, `⟨F_i⟩` and `⟨F_i(ω + s)⟩` for each
/// `s` with `deg s < deg f_i`, i.e. `p^{deg f_i} + 1` codes per coset.
pub fn enumerate_irreducible(n: usize, p: u32) -> Result<Vec<AdditiveCyclicCode>> {
    const LIMIT: u128 = 1_000_000;
    let structure = Arc::new(CosetStructure::build(n, p)?);
    let mut total: u128 = 0;
    for i in 0..structure.len() {
        let count = (p as u128)
            .checked_pow(structure.coset_size(i) as u32)
            .map(|c| c + 1)
            .unwrap_or(u128::MAX);
        total = total.saturating_add(count);
    }
    if total > LIMIT {
        return Err(Error::TooManyCodes { count: total, limit: LIMIT });
    }
    let mut out = Vec::with_capacity(total as usize);
    for i in 0..structure.len() {
        let m = structure.coset_size(i);
        let single = |form: ComponentForm| {
            let mut comps = vec![ComponentForm::Zero; structure.len()];
            comps[i] = form;
            AdditiveCyclicCode { structure: structure.clone(), components: comps }
        };
        out.push(single(ComponentForm::Plain));
        for s in polys_below_degree(structure.field(), m) {
            out.push(single(ComponentForm::Omega(s)));
        }
    }
    Ok(out)
}

/// JSON code descriptor `{p, n, g, k, h}` naming `⟨g + ωk, ωh⟩`;
/// coefficient lists ascending, entries in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDescriptor {
    pub p: u32,
    pub n: usize,
    #[serde(default)]
    pub g: Vec<u32>,
    #[serde(default)]
    pub k: Vec<u32>,
    #[serde(default)]
    pub h: Vec<u32>,
}

impl CodeDescriptor {
    pub fn validate(&self) -> Result<()> {
        PrimeField::new(self.p)?;
        if self.n == 0 {
            return Err(Error::InvalidDescriptor("n must be positive".into()));
        }
        for (name, coeffs) in [("g", &self.g), ("k", &self.k), ("h", &self.h)] {
            if coeffs.len() > self.n {
                return Err(Error::InvalidDescriptor(format!(
                    "field `{name}` has {} coefficients, more than n = {}",
                    coeffs.len(),
                    self.n
                )));
            }
            if let Some(pos) = coeffs.iter().position(|&c| c >= self.p) {
                return Err(Error::InvalidDescriptor(format!(
                    "field `{name}`[{pos}] = {} is not in [0, {})",
                    coeffs[pos], self.p
                )));
            }
        }
        Ok(())
    }

    pub fn polys(&self) -> (Poly, Poly, Poly) {
        let f = PrimeField::new(self.p).expect("validated");
        (
            Poly::new(f, self.g.clone()),
            Poly::new(f, self.k.clone()),
            Poly::new(f, self.h.clone()),
        )
    }

    /// `[g + ωk, ωh]`.
    pub fn generators(&self) -> Vec<QuadRingElement> {
        let (g, k, h) = self.polys();
        let zero = Poly::zero(g.field());
        vec![QuadRingElement::new(self.n, g, k), QuadRingElement::new(self.n, zero, h)]
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn structure(n: usize, p: u32) -> Arc<CosetStructure> {
        Arc::new(CosetStructure::build(n, p).unwrap())
    }

    fn single(cs: &Arc<CosetStructure>, i: usize, form: ComponentForm) -> AdditiveCyclicCode {
        let mut comps = vec![ComponentForm::Zero; cs.len()];
        comps[i] = form;
        AdditiveCyclicCode::from_components(cs.clone(), comps).unwrap()
    }

    #[test]
    fn full_component_from_both_generators() {
        let cs = structure(7, 2);
        let f = cs.field();
        for i in 0..cs.len() {
            let cof = cs.cofactor(i).clone();
            let gens = [
                QuadRingElement::new(7, cof.clone(), Poly::zero(f)),
                QuadRingElement::new(7, Poly::zero(f), cof),
            ];
            let code = AdditiveCyclicCode::from_generators(cs.clone(), &gens).unwrap();
            assert_eq!(code.component(i), &ComponentForm::Full);
            assert_eq!(code.dimension(), 2 * cs.coset_size(i));
            assert!(code.is_linear());
        }
    }

    #[test]
    fn zero_and_full_ring() {
        let cs = structure(7, 2);
        let f = cs.field();
        let zero = AdditiveCyclicCode::from_generators(cs.clone(), &[QuadRingElement::zero(f, 7)]).unwrap();
        assert_eq!(zero.dimension(), 0);
        assert!(zero.is_linear());
        assert_eq!(AdditiveCyclicCode::from_generators(cs.clone(), &[]).unwrap(), zero);
        let full = AdditiveCyclicCode::full(cs.clone());
        assert_eq!(full.dimension(), 14);
        assert_eq!(full.row_space().dim(), 14);
    }

    #[test]
    fn singleton_omega_plus_one() {
        // ((x^7-1)/(x-1))·(ω + 1) at the coset {0}
        let cs = structure(7, 2);
        let f = cs.field();
        let all_ones = Poly::new(f, vec![1; 7]);
        let gen = QuadRingElement::new(7, all_ones.clone(), all_ones.clone());
        let code = AdditiveCyclicCode::from_generators(cs.clone(), std::slice::from_ref(&gen)).unwrap();
        assert_eq!(code.component(0), &ComponentForm::Omega(Poly::one(f)));
        assert_eq!(code.dimension(), 1);
        // the two codewords {0, gen} are closed under the shift
        assert!(code.contains(&gen.shift(1)));
        assert!(!code.is_linear());
    }

    #[test]
    fn canonicalize_examples() {
        let cs = structure(7, 2);
        let f = cs.field();
        for i in 0..cs.len() {
            let cof = cs.cofactor(i).clone();
            let omega_r = QuadRingElement::new(7, Poly::zero(f), cof.clone());
            assert_eq!(
                canonicalize_in_component(&cs, &omega_r, i).unwrap(),
                ComponentForm::Omega(Poly::zero(f))
            );
            let r = QuadRingElement::new(7, cof.clone(), cof.shift(1));
            let form = canonicalize_in_component(&cs, &r, i).unwrap();
            assert_eq!(canonicalize_in_component(&cs, &r.shift(1), i).unwrap(), form);
            let a = single(&cs, i, form);
            let span = RowSpace::from_rows(f, 14, (0..7).map(|j| r.shift(j).split_vector()));
            assert_eq!(a.row_space(), span);
        }
        // wrong component
        let r = QuadRingElement::new(7, cs.cofactor(1).clone(), Poly::zero(f));
        assert_eq!(canonicalize_in_component(&cs, &r, 0), Err(Error::NotInComponent { index: 0 }));

        let cs7 = structure(6, 7);
        let f7 = cs7.field();
        let r = QuadRingElement::new(6, cs7.cofactor(2).scale(5), Poly::zero(f7));
        assert_eq!(canonicalize_in_component(&cs7, &r, 2).unwrap(), ComponentForm::Plain);
    }

    #[test]
    fn membership() {
        let cs = structure(7, 2);
        let code = single(&cs, 1, ComponentForm::Plain);
        for row in code.generator_matrix() {
            assert!(code.contains(&QuadRingElement::from_split_vector(cs.field(), 7, &row)));
        }
        assert!(code.contains(&QuadRingElement::zero(cs.field(), 7)));
        let outside = QuadRingElement::new(7, Poly::one(cs.field()), Poly::zero(cs.field()));
        assert!(!code.contains(&outside));
    }

    #[test]
    fn linearity() {
        let cs = structure(7, 2);
        let mut comps = vec![ComponentForm::Full, ComponentForm::Zero, ComponentForm::Full];
        assert!(AdditiveCyclicCode::from_components(cs.clone(), comps.clone()).unwrap().is_linear());
        comps[1] = ComponentForm::Omega(Poly::x(cs.field()));
        let c = AdditiveCyclicCode::from_components(cs.clone(), comps).unwrap();
        assert!(!c.is_linear());
        assert!(!c.omega_closed());
        // linear iff g = h and k = 0
        let full = AdditiveCyclicCode::full(cs.clone());
        let (g, k, h) = full.canonical_generators();
        assert_eq!(g, h);
        assert!(k.is_zero());
    }

    #[test]
    fn n_one_plain_code() {
        let desc = CodeDescriptor { p: 2, n: 1, g: vec![1], k: vec![], h: vec![] };
        let code = AdditiveCyclicCode::from_descriptor(&desc).unwrap();
        assert_eq!(code.dimension(), 1);
        assert_eq!(code.component(0), &ComponentForm::Plain);
        assert!(!code.is_linear());
        assert_eq!(code.descriptor(), desc);
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(enumerate_irreducible(7, 2).unwrap().len(), 21);
        assert_eq!(enumerate_irreducible(1, 2).unwrap().len(), 3);
        assert_eq!(enumerate_irreducible(2, 3).unwrap().len(), 8);
        assert!(matches!(enumerate_irreducible(47, 2), Err(Error::TooManyCodes { .. })));
    }

    #[test]
    fn canonical_uniqueness_from_random_codewords() {
        let mut rng = StdRng::seed_from_u64(21);
        for (n, p) in [(7usize, 2u32), (9, 2), (8, 3), (4, 5)] {
            let cs = structure(n, p);
            let f = cs.field();
            for _ in 0..20 {
                let comps: Vec<ComponentForm> = (0..cs.len())
                    .map(|i| random_form(&mut rng, f, cs.coset_size(i)))
                    .collect();
                let code = AdditiveCyclicCode::from_components(cs.clone(), comps).unwrap();
                let rows = code.generator_matrix();
                let mut gens = Vec::new();
                let mut span = RowSpace::empty(f, 2 * n);
                while span.dim() < code.dimension() {
                    let mut v = vec![0u32; 2 * n];
                    for row in &rows {
                        let c = rng.gen_range(0..p);
                        for (x, &r) in v.iter_mut().zip(row) {
                            *x = f.add(*x, f.mul(c, r));
                        }
                    }
                    span.insert(&v);
                    gens.push(QuadRingElement::from_split_vector(f, n, &v));
                }
                let rebuilt = AdditiveCyclicCode::from_generators(cs.clone(), &gens).unwrap();
                assert_eq!(rebuilt, code);
                assert_eq!(rebuilt.canonical_generators(), code.canonical_generators());
                let from_desc = AdditiveCyclicCode::from_descriptor_in(cs.clone(), &code.descriptor()).unwrap();
                assert_eq!(from_desc, code);
            }
        }
    }

    #[test]
    fn basis_and_irreducibility_properties() {
        let mut rng = StdRng::seed_from_u64(31);
        let cs = structure(15, 2);
        let f = cs.field();
        for i in 0..cs.len() {
            let m = cs.coset_size(i);
            for _ in 0..10 {
                // random nonzero r ∈ N_i
                let u = QuadRingElement::new(
                    15,
                    Poly::new(f, (0..15).map(|_| rng.gen_range(0..2)).collect()),
                    Poly::new(f, (0..15).map(|_| rng.gen_range(0..2)).collect()),
                );
                let r = cs.project_component(&u, i).unwrap();
                if r.is_zero() {
                    continue;
                }
                let shifts: Vec<Vec<u32>> = (0..m).map(|j| r.shift(j).split_vector()).collect();
                assert_eq!(crate::linalg::rank(f, 30, &shifts), m);
                let code = single(&cs, i, canonicalize_in_component(&cs, &r, i).unwrap());
                // any nonzero codeword generates the whole component
                let w = r.scale_by(&Poly::new(f, vec![1, 1, 0, 1]));
                if !w.is_zero() {
                    let again = AdditiveCyclicCode::from_generators(cs.clone(), &[w]).unwrap();
                    assert_eq!(again, code);
                }
            }
        }
    }

    #[test]
    fn shift_closure() {
        let mut rng = StdRng::seed_from_u64(41);
        let cs = structure(9, 2);
        let f = cs.field();
        for _ in 0..20 {
            let comps: Vec<ComponentForm> =
                (0..cs.len()).map(|i| random_form(&mut rng, f, cs.coset_size(i))).collect();
            let code = AdditiveCyclicCode::from_components(cs.clone(), comps).unwrap();
            let space = code.row_space();
            for row in space.basis() {
                let u = QuadRingElement::from_split_vector(f, 9, row).shift(1);
                assert!(space.contains(&u.split_vector()));
            }
            assert_eq!(space.dim(), code.dimension());
        }
    }

    #[test]
    fn descriptor_validation() {
        let bad = CodeDescriptor { p: 2, n: 3, g: vec![1, 2], k: vec![], h: vec![] };
        assert!(matches!(bad.validate(), Err(Error::InvalidDescriptor(_))));
        let long = CodeDescriptor { p: 2, n: 2, g: vec![1, 0, 1], k: vec![], h: vec![] };
        assert!(long.validate().is_err());
        assert!(CodeDescriptor::from_json(r#"{"p":2,"n":3,"g":[1],"x":[]}"#).is_err());
        let ok = CodeDescriptor::from_json(r#"{"p":2,"n":3,"g":[1,1]}"#).unwrap();
        assert!(ok.k.is_empty() && ok.h.is_empty());
    }

    pub(crate) fn random_form(rng: &mut StdRng, f: PrimeField, m: usize) -> ComponentForm {
        let choices = (f.p() as u64).pow(m as u32) + 3;
        match rng.gen_range(0..choices) {
            0 => ComponentForm::Zero,
            1 => ComponentForm::Plain,
            2 => ComponentForm::Full,
            _ => ComponentForm::Omega(Poly::new(f, (0..m).map(|_| rng.gen_range(0..f.p())).collect())),
        }
    }
}
