//! Independent oracles for the integration tests. Everything here works on
//! plain coordinate vectors built straight from `(g, k, h)` and never calls
//! the library's algebra.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use additive_cyclic::additive_code::{AdditiveCyclicCode, CodeDescriptor, ComponentForm};
use additive_cyclic::cyclotomic::CosetStructure;
use additive_cyclic::polyring::Poly;
use rand::{rngs::StdRng, Rng};

/// A vector of `F_{p²}ⁿ` as `[a₀..a_{n−1}, b₀..b_{n−1}]` for `Σ (aᵢ + bᵢω) xⁱ`.
pub type Vector = Vec<u32>;

fn inv(p: u32, a: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero residue")
}

/// Reduced row echelon form with zero rows removed.
pub fn rref(p: u32, mut rows: Vec<Vector>) -> Vec<Vector> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let s = inv(p, rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = *x * s % p;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

pub fn rank(p: u32, rows: &[Vector]) -> usize {
    rref(p, rows.to_vec()).len()
}

/// Basis of `{x : Σⱼ rowᵢ[j]·x[j] = 0 for all i}`.
pub fn nullspace(p: u32, rows: &[Vector], cols: usize) -> Vec<Vector> {
    let red = rref(p, rows.to_vec());
    let pivots: Vec<usize> = red.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (r, &pc) in red.iter().zip(&pivots) {
            v[pc] = (p - r[free]) % p;
        }
        out.push(v);
    }
    out
}

/// `⟨a + bω, a′ + b′ω⟩ₛ = a′·b − a·b′`.
pub fn symplectic(p: u32, u: &[u32], v: &[u32]) -> u32 {
    let n = u.len() / 2;
    (0..n).fold(0, |acc, i| (acc + v[i] * u[n + i] + (p - u[i]) * v[n + i] % p) % p)
}

/// Every `xʲ·(g + ωk)` and `xʲ·ωh`.
pub fn generator_rows(d: &CodeDescriptor) -> Vec<Vector> {
    let n = d.n;
    let at = |c: &[u32], i: usize| c.get(i).copied().unwrap_or(0);
    let mut rows = Vec::with_capacity(2 * n);
    for j in 0..n {
        let mut u = vec![0; 2 * n];
        let mut w = vec![0; 2 * n];
        for i in 0..n {
            let src = (i + n - j) % n;
            u[i] = at(&d.g, src);
            u[n + i] = at(&d.k, src);
            w[n + i] = at(&d.h, src);
        }
        rows.push(u);
        rows.push(w);
    }
    rows
}

pub fn basis(d: &CodeDescriptor) -> Vec<Vector> {
    rref(d.p, generator_rows(d))
}

/// Basis of the symplectic dual: `(a′, b′)` pairs with `(b, −a)` as a
/// linear functional.
pub fn dual_basis(p: u32, n: usize, rows: &[Vector]) -> Vec<Vector> {
    let functionals: Vec<Vector> = rows
        .iter()
        .map(|r| {
            let mut f = r[n..].to_vec();
            f.extend(r[..n].iter().map(|&a| (p - a) % p));
            f
        })
        .collect();
    if functionals.is_empty() {
        return (0..2 * n).map(|i| (0..2 * n).map(|j| (i == j) as u32).collect()).collect();
    }
    rref(p, nullspace(p, &functionals, 2 * n))
}

pub fn sum_basis(p: u32, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    rref(p, a.iter().chain(b).cloned().collect())
}

/// `dim C − dim(C ∩ C^⊥s)` by ranks.
pub fn e_by_ranks(p: u32, n: usize, rows: &[Vector]) -> usize {
    let c = rref(p, rows.to_vec());
    let d = dual_basis(p, n, &c);
    let inter = c.len() + d.len() - sum_basis(p, &c, &d).len();
    c.len() - inter
}

pub fn gram_rank(p: u32, rows: &[Vector]) -> usize {
    let c = rref(p, rows.to_vec());
    let gram: Vec<Vector> = c.iter().map(|u| c.iter().map(|v| symplectic(p, u, v)).collect()).collect();
    rank(p, &gram)
}

fn weight(v: &[u32]) -> usize {
    let n = v.len() / 2;
    (0..n).filter(|&i| v[i] != 0 || v[n + i] != 0).count()
}

/// Minimum weight of a nonzero combination of `rows` (assumed
/// independent); `None` for no rows. Binary rows go through a packed
/// Gray-code walk, other fields through a base-`p` odometer.
pub fn min_weight(p: u32, rows: &[Vector]) -> Option<usize> {
    if rows.is_empty() {
        return None;
    }
    let n = rows[0].len() / 2;
    if p == 2 && n <= 64 {
        let packed: Vec<u128> = rows
            .iter()
            .map(|r| r.iter().enumerate().fold(0u128, |acc, (i, &x)| acc | ((x as u128) << i)))
            .collect();
        let mask = (1u128 << n) - 1;
        let mut state = 0u128;
        let mut best = usize::MAX;
        for t in 1u64..(1u64 << rows.len()) {
            state ^= packed[t.trailing_zeros() as usize];
            let w = ((state | (state >> n)) & mask).count_ones() as usize;
            best = best.min(w);
        }
        return Some(best);
    }
    let mut digits = vec![0u32; rows.len()];
    let mut state = vec![0u32; 2 * n];
    let mut best = usize::MAX;
    loop {
        // incrementing the counter adds one copy of every row whose digit changes
        let mut j = 0;
        loop {
            if j == rows.len() {
                return Some(best);
            }
            for (s, &x) in state.iter_mut().zip(&rows[j]) {
                *s = (*s + x) % p;
            }
            digits[j] = (digits[j] + 1) % p;
            if digits[j] != 0 {
                break;
            }
            j += 1;
        }
        best = best.min(weight(&state));
    }
}

/// `μ(v)`: smallest shift-invariant subspace containing `v`, as an RREF key.
fn cyclic_span(p: u32, v: &[u32]) -> Vec<Vector> {
    let n = v.len() / 2;
    let rows: Vec<Vector> = (0..n)
        .map(|j| {
            let mut u = vec![0; 2 * n];
            for i in 0..n {
                u[(i + j) % n] = v[i];
                u[n + (i + j) % n] = v[n + i];
            }
            u
        })
        .collect();
    rref(p, rows)
}

fn contains(p: u32, big: &[Vector], small: &[Vector]) -> bool {
    small.iter().all(|v| rank(p, &[big.to_vec(), vec![v.clone()]].concat()) == big.len())
}

/// Minimal nonzero shift-invariant subspaces of `F_p^{2n}`, found by
/// spanning every nonzero vector.
pub fn irreducible_submodules(n: usize, p: u32) -> Vec<Vec<Vector>> {
    let total = (p as u64).pow(2 * n as u32);
    let mut spans: HashSet<Vec<Vector>> = HashSet::new();
    for idx in 1..total {
        let mut x = idx;
        let v: Vector = (0..2 * n)
            .map(|_| {
                let d = (x % p as u64) as u32;
                x /= p as u64;
                d
            })
            .collect();
        spans.insert(cyclic_span(p, &v));
    }
    let spans: Vec<Vec<Vector>> = spans.into_iter().collect();
    spans
        .iter()
        .filter(|s| !spans.iter().any(|t| t.len() < s.len() && contains(p, s, t)))
        .cloned()
        .collect()
}

/// Every shift-invariant subspace of `F_p^{2n}`, grown from `{0}` by
/// adjoining minimal ones. With `gcd(n, p) = 1` the module is semisimple,
/// so every submodule is a sum of minimal submodules.
pub fn all_submodules(n: usize, p: u32) -> BTreeSet<Vec<Vector>> {
    let gens = irreducible_submodules(n, p);
    let mut seen: BTreeSet<Vec<Vector>> = BTreeSet::new();
    let mut frontier = vec![Vec::new()];
    seen.insert(Vec::new());
    while let Some(code) = frontier.pop() {
        for g in &gens {
            let next = if code.is_empty() { g.clone() } else { sum_basis(p, &code, g) };
            if next.len() > code.len() && seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen
}

/// Random code: per coset Zero, Plain, Omega(random s) or Full.
pub fn random_code(rng: &mut StdRng, cs: &Arc<CosetStructure>) -> AdditiveCyclicCode {
    let comps = (0..cs.len())
        .map(|i| match rng.gen_range(0..10) {
            0..=2 => ComponentForm::Zero,
            3 | 4 => ComponentForm::Plain,
            5..=7 => ComponentForm::Omega(Poly::new(
                cs.field(),
                (0..cs.coset_size(i)).map(|_| rng.gen_range(0..cs.p())).collect(),
            )),
            _ => ComponentForm::Full,
        })
        .collect();
    AdditiveCyclicCode::from_components(cs.clone(), comps).expect("valid components")
}

/// Random code from a raw triple: each of `g, k, h` is a random multiple of
/// a random divisor of `xⁿ − 1`, so that all component shapes occur.
pub fn random_code_from_triple(rng: &mut StdRng, cs: &Arc<CosetStructure>) -> AdditiveCyclicCode {
    let n = cs.n();
    let p = cs.p();
    let poly = |rng: &mut StdRng| -> Vec<u32> {
        let mut acc = vec![1u32];
        for i in 0..cs.len() {
            if rng.gen_bool(0.5) {
                acc = mul(p, &acc, cs.factor(i).coeffs());
            }
        }
        let unit: Vec<u32> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..p)).collect();
        let full = mul(p, &acc, &unit);
        let mut out = vec![0; n];
        for (i, c) in full.iter().enumerate() {
            out[i % n] = (out[i % n] + c) % p;
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    };
    let desc = CodeDescriptor { p, n, g: poly(rng), k: poly(rng), h: poly(rng) };
    AdditiveCyclicCode::from_descriptor_in(cs.clone(), &desc).expect("valid triple")
}

fn mul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Direct cyclotomic cosets: orbits of `x ↦ p·x mod n`.
pub fn cosets(n: usize, p: u32) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            orbit.push(x);
            x = x * p as usize % n;
        }
        out.push(orbit);
    }
    out
}
