//! Quantum code parameters from additive cyclic codes: the stabilizer
//! construction, the nearly-self-orthogonal construction over `F_4`, and
//! the secondary constructions (lengthening, puncturing, subcodes).

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::additive_code::{AdditiveCyclicCode, CodeDescriptor};
use crate::distance::{
    cyclic_lower_bound, min_weight_at_least, min_weight_outside_at_least, within_budget, DistanceOptions, Method,
};
use crate::error::{Error, Result};
use crate::symplectic::{classify_orthogonality, dual};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Stabilizer,
    NearlySelfOrthogonal,
    Lengthen,
    Puncture,
    Subcode,
    Claimed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParamTriple {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: Construction,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub source: Option<CodeDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub parent: Option<ParamTriple>,
}

/// `[[n, k, d]]_p`. `d_low` is proven; `d_exact` is set only when the
/// distance was computed exactly; `d_claimed` comes from an external table
/// and is never used as a proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumParams {
    pub n: usize,
    pub k: usize,
    pub p: u32,
    pub d_low: usize,
    pub d_exact: Option<usize>,
    pub d_claimed: Option<usize>,
    pub distance_method: Method,
    pub pure: Option<bool>,
    pub r: Option<usize>,
    pub provenance: Provenance,
}

impl QuantumParams {
    /// A parameter set known only from a published table.
    pub fn claimed(n: usize, k: usize, d: usize, p: u32) -> Self {
        Self {
            n,
            k,
            p,
            d_low: 1,
            d_exact: None,
            d_claimed: Some(d),
            distance_method: Method::BoundOnly,
            pure: None,
            r: None,
            provenance: Provenance { construction: Construction::Claimed, source: None, parent: None },
        }
    }

    /// The strongest distance statement present: exact, else claimed, else
    /// the proven lower bound.
    pub fn stated_distance(&self) -> usize {
        self.d_exact.or(self.d_claimed).unwrap_or(self.d_low)
    }

    pub fn triple(&self) -> ParamTriple {
        ParamTriple { n: self.n, k: self.k, d: self.stated_distance() }
    }
}

/// `[[n, n − dim C, d]]` for a self-orthogonal `C`, with
/// `d = min wt(C^⊥s \ C)` when `k > 0` and `d = d(C)` when `k = 0`.
pub fn stabilizer_params(code: &AdditiveCyclicCode, opts: DistanceOptions) -> Result<QuantumParams> {
    Ok(stabilizer(code, opts, 0)?.expect("floor 0 is always reached"))
}

/// [`stabilizer_params`], or `None` when an exhaustive enumeration shows
/// `d < d_target`. Low-weight words end the enumeration early.
pub fn stabilizer_params_reaching(
    code: &AdditiveCyclicCode,
    d_target: usize,
    opts: DistanceOptions,
) -> Result<Option<QuantumParams>> {
    stabilizer(code, opts, d_target)
}

fn stabilizer(code: &AdditiveCyclicCode, opts: DistanceOptions, floor: usize) -> Result<Option<QuantumParams>> {
    let report = classify_orthogonality(code)?;
    if !report.is_self_orthogonal {
        return Err(Error::NotSelfOrthogonal { e: report.e });
    }
    let n = code.n();
    let p = code.p();
    let k = n - code.dimension();
    let d = dual(code);
    let (d_low, d_exact, pure, method) = if k == 0 {
        if within_budget(p, code.dimension(), opts.budget) {
            let Some(r) = min_weight_at_least(code, floor, opts)? else { return Ok(None) };
            let v = r.value.expect("k = 0 implies C ≠ 0");
            (v, Some(v), Some(true), Method::Exhaustive)
        } else {
            let b = cyclic_lower_bound(code, opts).value.unwrap_or(1).max(1);
            (b, None, Some(true), Method::BoundOnly)
        }
    } else if within_budget(p, d.dimension(), opts.budget) {
        let Some(r) = min_weight_outside_at_least(&d, code, floor, opts)? else { return Ok(None) };
        let v = r.value.expect("k > 0 implies C^⊥s ≠ C");
        // d(C^⊥s) ≤ v, so purity only asks whether some word lies below v
        let pure = min_weight_at_least(&d, v, opts)?.is_some();
        (v, Some(v), Some(pure), Method::Exhaustive)
    } else {
        let b = cyclic_lower_bound(&d, opts).value.unwrap_or(1).max(1);
        (b, None, None, Method::BoundOnly)
    };
    Ok(Some(QuantumParams {
        n,
        k,
        p,
        d_low,
        d_exact,
        d_claimed: None,
        distance_method: method,
        pure,
        r: None,
        provenance: Provenance {
            construction: Construction::Stabilizer,
            source: Some(code.descriptor()),
            parent: None,
        },
    }))
}

/// `[[n + r, dim C − n + r, d]]_2` with `r = (2n − dim C − dim(C ∩ C^⊥s))/2`
/// and `d ≥ min{d(C), d(C + C^⊥s) + 1}`. When `r = 0` the input contains its
/// dual and the stabilizer construction on `C^⊥s` is used instead.
pub fn nearly_self_orthogonal_params(code: &AdditiveCyclicCode, opts: DistanceOptions) -> Result<QuantumParams> {
    Ok(nearly_self_orthogonal(code, opts, 0)?.expect("floor 0 is always reached"))
}

/// [`nearly_self_orthogonal_params`], or `None` when exhaustive
/// enumeration shows `d_low < d_target`.
pub fn nearly_self_orthogonal_params_reaching(
    code: &AdditiveCyclicCode,
    d_target: usize,
    opts: DistanceOptions,
) -> Result<Option<QuantumParams>> {
    nearly_self_orthogonal(code, opts, d_target)
}

fn nearly_self_orthogonal(code: &AdditiveCyclicCode, opts: DistanceOptions, floor: usize) -> Result<Option<QuantumParams>> {
    if code.p() != 2 {
        return Err(Error::UnsupportedField(code.p()));
    }
    let n = code.n();
    let dim = code.dimension();
    let report = classify_orthogonality(code)?;
    let defect = 2 * n - dim - report.dim_intersection;
    if !defect.is_multiple_of(2) {
        return Err(Error::OracleMismatch(format!("2n − k − dim(C ∩ C^⊥s) = {defect} is odd")));
    }
    let r = defect / 2;
    let kq = dim as i64 - n as i64 + r as i64;
    if kq < 0 {
        return Err(Error::VacuousCode(kq));
    }
    let d_code = dual(code);
    if r == 0 {
        let Some(mut q) = stabilizer(&d_code, opts, floor)? else { return Ok(None) };
        debug_assert_eq!(q.k as i64, kq);
        q.r = Some(0);
        q.provenance = Provenance {
            construction: Construction::NearlySelfOrthogonal,
            source: Some(code.descriptor()),
            parent: None,
        };
        return Ok(Some(q));
    }
    let sum = code.sum(&d_code)?;
    let exhaustive = within_budget(2, dim, opts.budget) && within_budget(2, sum.dimension(), opts.budget);
    let (d_low, method) = if exhaustive {
        let Some(dc) = min_weight_at_least(code, floor, opts)? else { return Ok(None) };
        let Some(ds) = min_weight_at_least(&sum, floor.saturating_sub(1), opts)? else { return Ok(None) };
        let dc = dc.value.expect("k ≥ n − r > 0");
        let ds = ds.value.expect("C + C^⊥s ⊇ C ≠ 0");
        (dc.min(ds + 1), Method::Exhaustive)
    } else {
        let bc = cyclic_lower_bound(code, opts).value.unwrap_or(1);
        let bs = cyclic_lower_bound(&sum, opts).value.unwrap_or(1);
        (bc.min(bs + 1).max(1), Method::BoundOnly)
    };
    Ok(Some(QuantumParams {
        n: n + r,
        k: kq as usize,
        p: 2,
        d_low,
        d_exact: None,
        d_claimed: None,
        distance_method: method,
        pure: None,
        r: Some(r),
        provenance: Provenance {
            construction: Construction::NearlySelfOrthogonal,
            source: Some(code.descriptor()),
            parent: None,
        },
    }))
}

fn derive(q: &QuantumParams, construction: Construction, n: usize, k: usize, dd: i64, pure: Option<bool>) -> QuantumParams {
    let shift = |d: usize| (d as i64 + dd).max(1) as usize;
    QuantumParams {
        n,
        k,
        p: q.p,
        d_low: shift(q.d_exact.unwrap_or(q.d_low)),
        d_exact: None,
        d_claimed: q.d_claimed.map(shift),
        distance_method: Method::BoundOnly,
        pure,
        r: None,
        provenance: Provenance { construction, source: None, parent: Some(q.triple()) },
    }
}

/// One application of each applicable rule: `[[n+1, k, d]]` when `k > 0`,
/// `[[n−1, k+1, d−1]]` (pure) when the code is known pure and `n, d ≥ 2`,
/// `[[n, k−1, d]]` when `k > 1`. Distances are lower bounds (or claims)
/// carried over from `q`.
pub fn secondary_constructions(q: &QuantumParams) -> Vec<QuantumParams> {
    let mut out = Vec::new();
    if q.k > 0 {
        out.push(derive(q, Construction::Lengthen, q.n + 1, q.k, 0, None));
    }
    if q.pure == Some(true) && q.n >= 2 && q.stated_distance() >= 2 {
        out.push(derive(q, Construction::Puncture, q.n - 1, q.k + 1, -1, Some(true)));
    }
    if q.k > 1 {
        out.push(derive(q, Construction::Subcode, q.n, q.k - 1, 0, None));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureLimits {
    /// Children longer than `root.n + max_extra_length` are discarded.
    pub max_extra_length: usize,
    /// Children with fewer logical digits are discarded.
    pub min_k: usize,
}

/// Everything reachable from `root` by repeated secondary constructions
/// within `limits`, excluding `root`, each triple once, ordered by triple.
pub fn secondary_closure(root: &QuantumParams, limits: ClosureLimits) -> Vec<QuantumParams> {
    let mut seen: BTreeSet<ParamTriple> = BTreeSet::from([root.triple()]);
    let mut out = Vec::new();
    let mut queue = VecDeque::from([root.clone()]);
    while let Some(q) = queue.pop_front() {
        for child in secondary_constructions(&q) {
            if child.n > root.n + limits.max_extra_length || child.k < limits.min_k {
                continue;
            }
            if seen.insert(child.triple()) {
                out.push(child.clone());
                queue.push_back(child);
            }
        }
    }
    out.sort_by_key(|q| q.triple());
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreviousBest {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

/// Parses a CSV with header `n,k,d`.
pub fn parse_previous_best(text: &str) -> Result<Vec<PreviousBest>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    reader
        .deserialize()
        .map(|rec| {
            rec.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                Error::InvalidConfig(format!("previous-best CSV line {line}: {e}"))
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RecordComparison {
    pub previous_d: usize,
    pub stated_d: usize,
    pub improves: bool,
}

pub fn compare_to_previous(q: &QuantumParams, table: &[PreviousBest]) -> Option<RecordComparison> {
    table.iter().find(|b| b.n == q.n && b.k == q.k).map(|b| RecordComparison {
        previous_d: b.d,
        stated_d: q.stated_distance(),
        improves: q.stated_distance() > b.d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::additive_code::ComponentForm;
    use crate::cyclotomic::CosetStructure;
    use crate::distance::min_weight_exhaustive;
    use crate::linalg::RowSpace;
    use crate::polyring::Poly;
    use crate::symplectic::e_by_gram_rank;

    fn structure(n: usize, p: u32) -> Arc<CosetStructure> {
        Arc::new(CosetStructure::build(n, p).unwrap())
    }

    #[test]
    fn zero_code_gives_trivial_code() {
        for n in [3usize, 5, 7] {
            let q = stabilizer_params(&AdditiveCyclicCode::zero(structure(n, 2)), DistanceOptions::default()).unwrap();
            assert_eq!((q.n, q.k, q.d_low, q.d_exact), (n, n, 1, Some(1)));
        }
    }

    #[test]
    fn non_self_orthogonal_rejected() {
        let q = stabilizer_params(&AdditiveCyclicCode::full(structure(5, 2)), DistanceOptions::default());
        assert_eq!(q, Err(Error::NotSelfOrthogonal { e: 10 }));
    }

    #[test]
    fn self_orthogonal_n5_against_brute_force() {
        // every self-orthogonal code of length 5, against brute force over the dual
        let cs = structure(5, 2);
        let f = cs.field();
        let mut forms0 = vec![ComponentForm::Zero, ComponentForm::Plain, ComponentForm::Full];
        forms0.extend([0, 1].map(|c| ComponentForm::Omega(Poly::constant(f, c))));
        let mut forms1 = vec![ComponentForm::Zero, ComponentForm::Plain, ComponentForm::Full];
        forms1.extend(crate::additive_code::polys_below_degree(f, 4).map(ComponentForm::Omega));
        let mut checked = 0;
        for a in &forms0 {
            for b in &forms1 {
                let c = AdditiveCyclicCode::from_components(cs.clone(), vec![a.clone(), b.clone()]).unwrap();
                if e_by_gram_rank(&c) != 0 {
                    continue;
                }
                let q = stabilizer_params(&c, DistanceOptions::default()).unwrap();
                assert_eq!(q.k, 5 - c.dimension());
                let d = dual(&c);
                let rows = d.generator_matrix();
                let space = c.row_space();
                let mut best = usize::MAX;
                let mut best_dual = usize::MAX;
                for mask in 1u64..(1 << rows.len()) {
                    let mut v = vec![0u32; 10];
                    for (j, row) in rows.iter().enumerate() {
                        if mask >> j & 1 == 1 {
                            for (x, &y) in v.iter_mut().zip(row) {
                                *x ^= y;
                            }
                        }
                    }
                    let w = crate::distance::split_weight(&v);
                    best_dual = best_dual.min(w);
                    if q.k == 0 || !space.contains(&v) {
                        best = best.min(w);
                    }
                }
                if q.k == 0 {
                    best = min_weight_exhaustive(&c, DistanceOptions::default()).unwrap().value.unwrap();
                }
                assert_eq!(q.d_exact, Some(best));
                if q.k > 0 {
                    assert_eq!(q.pure, Some(best == best_dual));
                }
                checked += 1;
            }
        }
        assert!(checked > 1);
    }

    #[test]
    fn nso_with_r_zero_reduces_to_stabilizer() {
        let cs = structure(7, 2);
        // C^⊥s of a self-orthogonal code contains its dual
        for comps in [
            vec![ComponentForm::Plain, ComponentForm::Zero, ComponentForm::Zero],
            vec![ComponentForm::Plain, ComponentForm::Full, ComponentForm::Zero],
        ] {
            let so = AdditiveCyclicCode::from_components(cs.clone(), comps).unwrap();
            assert_eq!(e_by_gram_rank(&so), 0);
            let input = dual(&so);
            let via_nso = nearly_self_orthogonal_params(&input, DistanceOptions::default()).unwrap();
            let via_stab = stabilizer_params(&so, DistanceOptions::default()).unwrap();
            assert_eq!(via_nso.r, Some(0));
            assert_eq!((via_nso.n, via_nso.k, via_nso.d_exact), (via_stab.n, via_stab.k, via_stab.d_exact));
        }
    }

    #[test]
    fn nso_rejects_odd_characteristic() {
        let c3 = AdditiveCyclicCode::full(structure(4, 3));
        assert_eq!(
            nearly_self_orthogonal_params(&c3, DistanceOptions::default()),
            Err(Error::UnsupportedField(3))
        );
    }

    #[test]
    fn nso_logical_dimension_is_half_of_e() {
        let cs = structure(7, 2);
        let f = cs.field();
        for comps in [
            vec![ComponentForm::Plain, ComponentForm::Zero, ComponentForm::Zero],
            vec![ComponentForm::Full, ComponentForm::Omega(Poly::x(f)), ComponentForm::Plain],
            vec![ComponentForm::Full, ComponentForm::Full, ComponentForm::Zero],
        ] {
            let c = AdditiveCyclicCode::from_components(cs.clone(), comps).unwrap();
            let q = nearly_self_orthogonal_params(&c, DistanceOptions::default()).unwrap();
            assert_eq!(2 * q.k, classify_orthogonality(&c).unwrap().e);
        }
    }

    #[test]
    fn nso_defect_is_even() {
        let cs = structure(15, 2);
        let f = cs.field();
        for s in crate::additive_code::polys_below_degree(f, 4).take(8) {
            let mut comps = vec![ComponentForm::Full; cs.len()];
            comps[1] = ComponentForm::Omega(s);
            let c = AdditiveCyclicCode::from_components(cs.clone(), comps).unwrap();
            let inter = RowSpace::intersection_dim(&c.row_space(), &dual(&c).row_space());
            assert_eq!((2 * 15 - c.dimension() - inter) % 2, 0);
        }
    }

    #[test]
    fn secondary_rules() {
        let q = QuantumParams::claimed(52, 24, 8, 2);
        let triples: Vec<ParamTriple> = secondary_constructions(&q).iter().map(|c| c.triple()).collect();
        assert!(triples.contains(&ParamTriple { n: 53, k: 24, d: 8 }));
        assert!(triples.contains(&ParamTriple { n: 52, k: 23, d: 8 }));
        assert_eq!(triples.len(), 2);

        let mut pure = QuantumParams::claimed(5, 1, 3, 2);
        pure.pure = Some(true);
        let t: Vec<ParamTriple> = secondary_constructions(&pure).iter().map(|c| c.triple()).collect();
        assert!(t.contains(&ParamTriple { n: 4, k: 2, d: 2 }));
        assert!(!t.iter().any(|x| x.k == 0));

        let zero = QuantumParams::claimed(5, 0, 3, 2);
        assert!(secondary_constructions(&zero).is_empty());
    }

    #[test]
    fn closure_of_52_24_8() {
        let q = QuantumParams::claimed(52, 24, 8, 2);
        let got: Vec<ParamTriple> = secondary_closure(&q, ClosureLimits { max_extra_length: 1, min_k: 21 })
            .iter()
            .map(|c| c.triple())
            .collect();
        let want: Vec<ParamTriple> = [(52, 21), (52, 22), (52, 23), (53, 21), (53, 22), (53, 23), (53, 24)]
            .iter()
            .map(|&(n, k)| ParamTriple { n, k, d: 8 })
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn previous_best_csv() {
        let t = parse_previous_best("n,k,d\n22,2,6\n37, 17, 5\n").unwrap();
        assert_eq!(t[1], PreviousBest { n: 37, k: 17, d: 5 });
        let q = QuantumParams::claimed(22, 2, 7, 2);
        assert!(compare_to_previous(&q, &t).unwrap().improves);
        assert!(parse_previous_best("n,k,d\n1,x,3\n").is_err());
    }
}
