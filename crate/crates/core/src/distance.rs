//! Minimum distance by exhaustive Gray-code enumeration, and lower bounds
//! from the linear cyclic codes attached to a canonical triple.
//!
//! Combinations `c ∈ F_p^dim` of the generator rows are visited in the
//! modular Gray order `c_i = (t_i − t_{i+1}) mod p` of the base-`p` digits of
//! the counter `t`; going from `t − 1` to `t` adds exactly one row, the one
//! indexed by the number of trailing zero digits of `t`.

use std::sync::atomic::{AtomicBool, Ordering};

use serde::{Deserialize, Serialize};

use crate::additive_code::AdditiveCyclicCode;
use crate::cyclotomic::CosetStructure;
use crate::error::{Error, Result};
use crate::finite_field::{gcd_usize, PrimeField};
use crate::linalg::RowSpace;
use crate::polyring::Poly;

pub const DEFAULT_BUDGET: u32 = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceOptions {
    /// Largest admissible `log2` of the number of combinations.
    pub budget: u32,
    pub threads: usize,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, threads: default_threads() }
    }
}

impl DistanceOptions {
    pub fn with_budget(budget: u32) -> Self {
        Self { budget, ..Self::default() }
    }

    pub fn single_threaded(self) -> Self {
        Self { threads: 1, ..self }
    }
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    BoundOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Coefficients of the generator rows, in row order.
    pub combination: Vec<u32>,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    /// Exact minimum weight; `None` is infinity for exhaustive results and
    /// unknown for bound-only results.
    pub value: Option<usize>,
    pub method: Method,
    pub bound: Option<usize>,
    pub witness: Option<Witness>,
    pub visited: u64,
}

/// Whether `p^dim ≤ 2^budget`.
pub fn within_budget(p: u32, dim: usize, budget: u32) -> bool {
    match (p as u128).checked_pow(dim as u32) {
        Some(c) => budget >= 128 || c <= 1u128 << budget,
        None => false,
    }
}

fn check_budget(p: u32, dim: usize, budget: u32) -> Result<u64> {
    if !within_budget(p, dim, budget.min(63)) {
        return Err(Error::EnumerationBudget { dim, p, budget });
    }
    Ok((p as u64).pow(dim as u32))
}

/// Number of positions `i < n` with `(a_i, b_i) ≠ (0, 0)` in a split vector.
pub fn split_weight(v: &[u32]) -> usize {
    let n = v.len() / 2;
    (0..n).filter(|&i| v[i] != 0 || v[i + n] != 0).count()
}

/// Raw outcome over a list of split rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowsMinimum {
    pub weight: Option<usize>,
    pub combination: Option<Vec<u32>>,
    pub visited: u64,
}

/// Minimum weight over `Σ cᵢ rᵢ` with `(c₀,…,c_{m−1}) ≠ 0` where `m = lead`:
/// the first `lead` rows must not all have zero coefficient. Rows are split
/// vectors of length `2n`. Ties go to the combination with least
/// `Σ cᵢ pⁱ`.
pub fn min_weight_rows(
    field: PrimeField,
    n: usize,
    rows: &[Vec<u32>],
    lead: usize,
    opts: DistanceOptions,
) -> Result<RowsMinimum> {
    let total = check_budget(field.p(), rows.len(), opts.budget)?;
    assert!(lead <= rows.len());
    let job = Job { p: field.p(), n, rows, lead, total, cutoff: None };
    Ok(job.run(opts.threads.max(1)))
}

/// Whether some admissible combination (as in [`min_weight_rows`]) has
/// weight below `cutoff`. Stops at the first one found.
pub fn has_weight_below(
    field: PrimeField,
    n: usize,
    rows: &[Vec<u32>],
    lead: usize,
    cutoff: usize,
    opts: DistanceOptions,
) -> Result<bool> {
    let total = check_budget(field.p(), rows.len(), opts.budget)?;
    let job = Job { p: field.p(), n, rows, lead, total, cutoff: Some(cutoff) };
    Ok(job.run(opts.threads.max(1)).weight.is_some_and(|w| w < cutoff))
}

struct Job<'a> {
    p: u32,
    n: usize,
    rows: &'a [Vec<u32>],
    lead: usize,
    total: u64,
    cutoff: Option<usize>,
}

#[derive(Clone, Copy)]
struct Partial {
    best: Option<(usize, u64)>,
    visited: u64,
}

impl Partial {
    fn merge(self, other: Partial) -> Partial {
        let best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Partial { best, visited: self.visited + other.visited }
    }
}

impl Job<'_> {
    fn run(&self, threads: usize) -> RowsMinimum {
        let dim = self.rows.len();
        let partial = if self.lead == 0 || dim == 0 {
            Partial { best: None, visited: 0 }
        } else {
            let stop = AtomicBool::new(false);
            let chunks = (threads as u64).min(self.total).max(1);
            let step = self.total.div_ceil(chunks);
            let ranges: Vec<(u64, u64)> = (0..chunks)
                .map(|c| (c * step, ((c + 1) * step).min(self.total)))
                .filter(|(s, e)| s < e)
                .collect();
            if ranges.len() == 1 {
                self.range(ranges[0].0, ranges[0].1, &stop)
            } else {
                std::thread::scope(|scope| {
                    let handles: Vec<_> = ranges
                        .iter()
                        .map(|&(s, e)| {
                            let stop = &stop;
                            scope.spawn(move || self.range(s, e, stop))
                        })
                        .collect();
                    handles
                        .into_iter()
                        .map(|h| h.join().expect("enumeration worker panicked"))
                        .fold(Partial { best: None, visited: 0 }, Partial::merge)
                })
            }
        };
        RowsMinimum {
            weight: partial.best.map(|b| b.0),
            combination: partial.best.map(|(_, key)| self.digits(key)),
            visited: partial.visited,
        }
    }

    fn digits(&self, mut key: u64) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.rows.len())
            .map(|_| {
                let d = (key % p) as u32;
                key /= p;
                d
            })
            .collect()
    }

    /// Gray digits of counter `t`.
    fn gray(&self, t: u64) -> Vec<u32> {
        let p = self.p as u64;
        let dim = self.rows.len();
        let mut digits = Vec::with_capacity(dim + 1);
        let mut x = t;
        for _ in 0..=dim {
            digits.push((x % p) as u32);
            x /= p;
        }
        (0..dim)
            .map(|i| (digits[i] + self.p - digits[i + 1]) % self.p)
            .collect()
    }

    fn range(&self, start: u64, end: u64, stop: &AtomicBool) -> Partial {
        if self.p == 2 && self.n <= 64 * PACKED_WORDS {
            self.range_binary(start, end, stop)
        } else {
            self.range_general(start, end, stop)
        }
    }

    fn range_binary(&self, start: u64, end: u64, stop: &AtomicBool) -> Partial {
        let words = self.n.div_ceil(64).max(1);
        let packed: Vec<[u64; 2 * PACKED_WORDS]> = self.rows.iter().map(|r| pack_binary(r, self.n)).collect();
        let lead_mask: u64 = if self.lead >= 64 { u64::MAX } else { (1u64 << self.lead) - 1 };
        let mut key = start ^ (start >> 1);
        let mut state = [0u64; 2 * PACKED_WORDS];
        for (j, row) in packed.iter().enumerate() {
            if key >> j & 1 == 1 {
                xor_into(&mut state, row);
            }
        }
        let weight = |s: &[u64; 2 * PACKED_WORDS]| -> usize {
            (0..words).map(|w| (s[w] | s[PACKED_WORDS + w]).count_ones() as usize).sum()
        };
        let mut best: Option<(usize, u64)> = None;
        let mut visited = 0u64;
        let mut consider = |key: u64, state: &[u64; 2 * PACKED_WORDS], best: &mut Option<(usize, u64)>| {
            if key & lead_mask != 0 {
                visited += 1;
                let w = weight(state);
                if best.is_none_or(|b| (w, key) < b) {
                    *best = Some((w, key));
                }
            }
        };
        consider(key, &state, &mut best);
        for t in start + 1..end {
            let j = t.trailing_zeros() as usize;
            key ^= 1 << j;
            xor_into(&mut state, &packed[j]);
            consider(key, &state, &mut best);
            if self.cutoff.is_some() && t & 0xfff == 0 {
                if best.is_some_and(|b| b.0 < self.cutoff.unwrap()) {
                    stop.store(true, Ordering::Relaxed);
                }
                if stop.load(Ordering::Relaxed) {
                    break;
                }
            }
        }
        Partial { best, visited }
    }

    fn range_general(&self, start: u64, end: u64, stop: &AtomicBool) -> Partial {
        let p = self.p;
        let n = self.n;
        let supports: Vec<Vec<(usize, u32)>> = self
            .rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect())
            .collect();
        let mut g = self.gray(start);
        let powers: Vec<u64> = (0..self.rows.len()).map(|i| (p as u64).pow(i as u32)).collect();
        let mut key: u64 = g.iter().zip(&powers).map(|(&d, &w)| d as u64 * w).sum();
        let mut state = vec![0u32; 2 * n];
        for (j, &c) in g.iter().enumerate() {
            for &(pos, v) in &supports[j] {
                state[pos] = (state[pos] + c * v) % p;
            }
        }
        let mut nonzero_in_coord: Vec<u8> = (0..n).map(|i| (state[i] != 0) as u8 + (state[i + n] != 0) as u8).collect();
        let mut weight = nonzero_in_coord.iter().filter(|&&c| c > 0).count();
        let mut lead_nonzero = g[..self.lead].iter().filter(|&&d| d != 0).count();

        let mut best: Option<(usize, u64)> = None;
        let mut visited = 0u64;
        if lead_nonzero > 0 {
            visited += 1;
            best = Some((weight, key));
        }
        let pp = p as u64;
        for t in start + 1..end {
            let mut j = 0;
            let mut x = t;
            while x % pp == 0 {
                x /= pp;
                j += 1;
            }
            let old = g[j];
            g[j] = (old + 1) % p;
            if g[j] == 0 {
                key -= (pp - 1) * powers[j];
            } else {
                key += powers[j];
            }
            if j < self.lead {
                if old == 0 {
                    lead_nonzero += 1;
                } else if g[j] == 0 {
                    lead_nonzero -= 1;
                }
            }
            for &(pos, v) in &supports[j] {
                let before = state[pos];
                let after = (before + v) % p;
                state[pos] = after;
                let coord = if pos < n { pos } else { pos - n };
                if before == 0 {
                    nonzero_in_coord[coord] += 1;
                    if nonzero_in_coord[coord] == 1 {
                        weight += 1;
                    }
                } else if after == 0 {
                    nonzero_in_coord[coord] -= 1;
                    if nonzero_in_coord[coord] == 0 {
                        weight -= 1;
                    }
                }
            }
            if lead_nonzero > 0 {
                visited += 1;
                if best.is_none_or(|b| (weight, key) < b) {
                    best = Some((weight, key));
                }
            }
            if self.cutoff.is_some() && t & 0xfff == 0 {
                if best.is_some_and(|b| b.0 < self.cutoff.unwrap()) {
                    stop.store(true, Ordering::Relaxed);
                }
                if stop.load(Ordering::Relaxed) {
                    break;
                }
            }
        }
        Partial { best, visited }
    }
}

const PACKED_WORDS: usize = 4;

fn pack_binary(row: &[u32], n: usize) -> [u64; 2 * PACKED_WORDS] {
    let mut out = [0u64; 2 * PACKED_WORDS];
    for i in 0..n {
        if row[i] != 0 {
            out[i / 64] |= 1 << (i % 64);
        }
        if row[i + n] != 0 {
            out[PACKED_WORDS + i / 64] |= 1 << (i % 64);
        }
    }
    out
}

#[inline]
fn xor_into(state: &mut [u64; 2 * PACKED_WORDS], row: &[u64; 2 * PACKED_WORDS]) {
    for (s, r) in state.iter_mut().zip(row) {
        *s ^= r;
    }
}

fn combine(field: PrimeField, rows: &[Vec<u32>], combination: &[u32]) -> Vec<u32> {
    let len = rows.first().map_or(0, |r| r.len());
    let mut v = vec![0u32; len];
    for (row, &c) in rows.iter().zip(combination) {
        if c != 0 {
            for (x, &r) in v.iter_mut().zip(row) {
                *x = field.add(*x, field.mul(c, r));
            }
        }
    }
    v
}

fn result_from(field: PrimeField, n: usize, rows: &[Vec<u32>], raw: RowsMinimum) -> DistanceResult {
    let witness = raw.combination.map(|combination| {
        let v = combine(field, rows, &combination);
        debug_assert_eq!(Some(split_weight(&v)), raw.weight);
        Witness { combination, a: v[..n].to_vec(), b: v[n..].to_vec() }
    });
    DistanceResult { value: raw.weight, method: Method::Exhaustive, bound: None, witness, visited: raw.visited }
}

/// Exact minimum weight of a nonzero codeword; the zero code gives infinity.
pub fn min_weight_exhaustive(code: &AdditiveCyclicCode, opts: DistanceOptions) -> Result<DistanceResult> {
    let rows = code.generator_matrix();
    let raw = min_weight_rows(code.field(), code.n(), &rows, rows.len(), opts)?;
    Ok(result_from(code.field(), code.n(), &rows, raw))
}

/// Runs a cutoff enumeration; `None` when a word of weight below `floor`
/// turns up, otherwise the exact minimum.
fn rows_minimum_at_least(
    field: PrimeField,
    n: usize,
    rows: &[Vec<u32>],
    lead: usize,
    floor: usize,
    opts: DistanceOptions,
) -> Result<Option<DistanceResult>> {
    let total = check_budget(field.p(), rows.len(), opts.budget)?;
    assert!(lead <= rows.len());
    let job = Job { p: field.p(), n, rows, lead, total, cutoff: Some(floor) };
    let raw = job.run(opts.threads.max(1));
    if raw.weight.is_some_and(|w| w < floor) {
        return Ok(None);
    }
    Ok(Some(result_from(field, n, rows, raw)))
}

/// [`min_weight_exhaustive`], abandoned with `None` once a nonzero word of
/// weight below `floor` is seen.
pub fn min_weight_at_least(code: &AdditiveCyclicCode, floor: usize, opts: DistanceOptions) -> Result<Option<DistanceResult>> {
    let rows = code.generator_matrix();
    rows_minimum_at_least(code.field(), code.n(), &rows, rows.len(), floor, opts)
}

/// [`min_weight_outside`], abandoned with `None` once a word of
/// `big \ small` of weight below `floor` is seen.
pub fn min_weight_outside_at_least(
    big: &AdditiveCyclicCode,
    small: &AdditiveCyclicCode,
    floor: usize,
    opts: DistanceOptions,
) -> Result<Option<DistanceResult>> {
    let (rows, lead) = outside_rows(big, small)?;
    rows_minimum_at_least(big.field(), big.n(), &rows, lead, floor, opts)
}

/// Minimum weight over `big \ small`. The rows of `big` are ordered as a
/// completion of a basis of `small`, completion rows first, so the skipped
/// combinations are exactly the elements of `small`.
pub fn min_weight_outside(
    big: &AdditiveCyclicCode,
    small: &AdditiveCyclicCode,
    opts: DistanceOptions,
) -> Result<DistanceResult> {
    let (rows, lead) = outside_rows(big, small)?;
    let raw = min_weight_rows(big.field(), big.n(), &rows, lead, opts)?;
    Ok(result_from(big.field(), big.n(), &rows, raw))
}

/// Rows and `lead` for enumerating `big \ small` with [`min_weight_rows`].
pub fn outside_rows(big: &AdditiveCyclicCode, small: &AdditiveCyclicCode) -> Result<(Vec<Vec<u32>>, usize)> {
    if big.n() != small.n() || big.p() != small.p() {
        return Err(Error::NotNested);
    }
    let small_space = small.row_space();
    let big_space = big.row_space();
    if !big_space.contains_space(&small_space) {
        return Err(Error::NotNested);
    }
    let rows = completion_rows(&small_space, &big_space);
    let lead = rows.len() - small_space.dim();
    Ok((rows, lead))
}

/// Rows of `big`'s basis that extend a basis of `small`, followed by
/// `small`'s basis.
fn completion_rows(small: &RowSpace, big: &RowSpace) -> Vec<Vec<u32>> {
    let mut span = small.clone();
    let mut rows: Vec<Vec<u32>> = big.basis().iter().filter(|r| span.insert(r)).cloned().collect();
    rows.extend(small.basis().iter().cloned());
    rows
}

/// Exhaustive distance with the cyclic bound attached, or the bound alone.
pub fn distance(code: &AdditiveCyclicCode, opts: DistanceOptions, bound_only: bool) -> Result<DistanceResult> {
    let bound = cyclic_lower_bound(code, opts);
    if bound_only {
        return Ok(DistanceResult {
            value: None,
            method: Method::BoundOnly,
            bound: bound.value,
            witness: None,
            visited: 0,
        });
    }
    let mut result = min_weight_exhaustive(code, opts)?;
    result.bound = bound.value;
    Ok(result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundRule {
    /// `min{d(D₃), d(D₄), max{d(D₁), d(D₂)}}`.
    General,
    /// `h = 0`: `min{d(C₃), d(C₄), max{d(C₁), d(C₂)}}`.
    HZero,
    /// `k = 0`: `min{d(E₁), d(E₂)}`.
    KZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTerm {
    pub name: &'static str,
    /// Monic generator `gcd(q, xⁿ − 1)` of the linear cyclic code.
    pub generator: Vec<u32>,
    pub dim: usize,
    /// `None` for the zero code, which is dropped.
    pub d: Option<usize>,
    /// False when `d` is only the BCH bound because the code exceeds the
    /// enumeration budget.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicBound {
    /// `None` when every term is dropped (the zero code).
    pub value: Option<usize>,
    pub rule: BoundRule,
    pub terms: Vec<BoundTerm>,
    pub partial: bool,
}

/// Lower bound on `d(C)` from the linear cyclic codes over `F_p` attached to
/// the canonical triple `(g, k, h)`. Zero codes are dropped from the
/// formula; codes beyond the budget contribute their BCH bound.
pub fn cyclic_lower_bound(code: &AdditiveCyclicCode, opts: DistanceOptions) -> CyclicBound {
    let cs = code.structure();
    let n = code.n();
    let field = code.field();
    let (g, k, h) = code.canonical_generators();
    let xn1 = Poly::x_n_minus_one(field, n);
    let bar = |q: &Poly| q.gcd(&xn1);

    let term = |name: &'static str, q: Poly| linear_cyclic_term(cs, name, &q, opts);
    let (rule, terms) = if k.is_zero() {
        (BoundRule::KZero, vec![term("E1", g.clone()), term("E2", h.clone())])
    } else {
        let big_g = xn1.exact_div(&bar(&g)).expect("gcd divides");
        let k_bar = bar(&k);
        if h.is_zero() {
            let c4 = xn1.exact_div(&k_bar).expect("gcd divides").mul(&g);
            (
                BoundRule::HZero,
                vec![term("C1", g.clone()), term("C2", k.clone()), term("C3", big_g.mul(&k)), term("C4", c4)],
            )
        } else {
            let s = k_bar.lcm(&bar(&h));
            let d4 = g.mul(&s).exact_div(&k_bar).expect("k̄ divides S");
            (
                BoundRule::General,
                vec![
                    term("D1", g.clone()),
                    term("D2", k.gcd(&h)),
                    term("D3", big_g.mul(&k).gcd(&h)),
                    term("D4", d4),
                ],
            )
        }
    };
    let partial = terms.iter().any(|t| !t.exact);
    let d = |i: usize| terms[i].d;
    let value = match rule {
        BoundRule::KZero => [d(0), d(1)].into_iter().flatten().min(),
        _ => {
            let mx = [d(0), d(1)].into_iter().flatten().max();
            [d(2), d(3), mx].into_iter().flatten().min()
        }
    };
    CyclicBound { value, rule, terms, partial }
}

fn linear_cyclic_term(cs: &CosetStructure, name: &'static str, q: &Poly, opts: DistanceOptions) -> BoundTerm {
    let n = cs.n();
    let field = cs.field();
    let gen = q.gcd(&Poly::x_n_minus_one(field, n));
    let dim = n - gen.degree().expect("gcd with xⁿ − 1 is nonzero");
    let generator = gen.coeffs().to_vec();
    if dim == 0 {
        return BoundTerm { name, generator, dim, d: None, exact: true };
    }
    let (d, exact) = match linear_cyclic_distance(&gen, n, opts) {
        Ok(d) => (d, true),
        Err(_) => (bch_bound(cs, &gen), false),
    };
    BoundTerm { name, generator, dim, d: Some(d), exact }
}

/// Exact minimum distance of the linear cyclic code `⟨gen⟩ ⊆ F_p^n`, with
/// `gen` a proper monic divisor of `xⁿ − 1`.
pub fn linear_cyclic_distance(gen: &Poly, n: usize, opts: DistanceOptions) -> Result<usize> {
    let field = gen.field();
    let dim = n - gen.degree().expect("nonzero generator");
    let rows: Vec<Vec<u32>> = (0..dim)
        .map(|j| {
            let mut v = gen.shift(j).dense(n);
            v.resize(2 * n, 0);
            v
        })
        .collect();
    let raw = min_weight_rows(field, n, &rows, dim, opts)?;
    Ok(raw.weight.expect("nonzero code"))
}

/// BCH bound of `⟨gen⟩`: one more than the longest arithmetic progression
/// `b, b+c, …` of zeros with `gcd(c, n) = 1`.
pub fn bch_bound(cs: &CosetStructure, gen: &Poly) -> usize {
    let n = cs.n();
    let mut zero = vec![false; n];
    for i in 0..cs.len() {
        if cs.factor(i).divides(gen) {
            for &a in cs.coset(i) {
                zero[a] = true;
            }
        }
    }
    if zero.iter().all(|&z| z) {
        return n + 1;
    }
    let mut best = 0;
    for c in (1..n.max(2)).filter(|&c| gcd_usize(c, n) == 1) {
        for b in 0..n {
            let mut run = 0;
            while run < n && zero[(b + run * c) % n] {
                run += 1;
            }
            best = best.max(run);
        }
    }
    best + 1
}
