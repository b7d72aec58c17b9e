//! Dense linear algebra over `F_p`: reduced row echelon form, rank, row-space
//! membership, nullspaces. Used both by the code constructions and as the
//! independent rank oracles they are checked against.

use crate::finite_field::PrimeField;

/// A subspace of `F_p^cols` held as its reduced row echelon basis.
/// Two row spaces are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowSpace {
    field: PrimeField,
    cols: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn empty(field: PrimeField, cols: usize) -> Self {
        Self { field, cols, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<I, R>(field: PrimeField, cols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[u32]>,
    {
        let mut space = Self::empty(field, cols);
        for r in rows {
            space.insert(r.as_ref());
        }
        space.normalize();
        space
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            for (x, &r) in w.iter_mut().zip(row) {
                if r != 0 {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns true if the dimension grew. The basis is
    /// kept fully reduced.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field;
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]).unwrap();
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.basis.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&w) {
                if r != 0 {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(pos, pc);
        self.basis.insert(pos, w);
        true
    }

    fn normalize(&mut self) {
        // insert() keeps rows sorted by pivot and fully reduced already
        debug_assert!(self.pivots.windows(2).all(|w| w[0] < w[1]));
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        let mut s = self.clone();
        for r in &other.basis {
            s.insert(r);
        }
        s
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        other.basis.iter().all(|r| self.contains(r))
    }

    pub fn intersection_dim(&self, other: &RowSpace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// Basis of `{x : x·r = 0 for every basis row r}` (standard dot product).
    pub fn orthogonal_complement(&self) -> RowSpace {
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        let mut out = RowSpace::empty(f, self.cols);
        for &fc in &free {
            let mut v = vec![0u32; self.cols];
            v[fc] = 1;
            for (row, &pc) in self.basis.iter().zip(&self.pivots) {
                v[pc] = f.neg(row[fc]);
            }
            out.insert(&v);
        }
        out
    }
}

pub fn rank<R: AsRef<[u32]>>(field: PrimeField, cols: usize, rows: &[R]) -> usize {
    RowSpace::from_rows(field, cols, rows.iter().map(|r| r.as_ref())).dim()
}

/// Basis of the right nullspace `{x : M·x = 0}` of the matrix with these rows.
pub fn nullspace<R: AsRef<[u32]>>(field: PrimeField, cols: usize, rows: &[R]) -> Vec<Vec<u32>> {
    RowSpace::from_rows(field, cols, rows.iter().map(|r| r.as_ref()))
        .orthogonal_complement()
        .basis()
        .to_vec()
}
