//! Subspaces of `F_q^n` in reduced row echelon form.
//!
//! The RREF basis (pivots equal to one, pivot columns cleared) is unique, so
//! two subspaces are equal exactly when their row lists are equal. Everything
//! that compares or hashes subalgebras and ideals leans on this.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::algebra::field::{FiniteField, Scalar};

pub type Vector = Vec<Scalar>;

/// `dst += c * src`.
pub fn axpy(field: &FiniteField, dst: &mut [Scalar], c: Scalar, src: &[Scalar]) {
    if c == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = field.add(*d, field.mul(c, s));
        }
    }
}

pub fn scale(field: &FiniteField, v: &[Scalar], c: Scalar) -> Vector {
    v.iter().map(|&x| field.mul(c, x)).collect()
}

pub fn add(field: &FiniteField, a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn sub(field: &FiniteField, a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Enumerates all `q^n` vectors of `F_q^n` in lexicographic order of their
/// base-`q` index (first coordinate varies fastest).
pub fn all_vectors(q: u32, n: usize) -> impl Iterator<Item = Vector> {
    let total = (q as u64).pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; n];
        for x in v.iter_mut() {
            *x = (idx % q as u64) as Scalar;
            idx /= q as u64;
        }
        v
    })
}

#[derive(Clone, Debug)]
pub struct Subspace {
    field: FiniteField,
    n: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rows.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by dimension, then lexicographically by echelon rows.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

impl Subspace {
    pub fn zero(field: &FiniteField, n: usize) -> Self {
        Subspace {
            field: field.clone(),
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &FiniteField, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            field: field.clone(),
            n,
            rows,
            pivots: (0..n).collect(),
        }
    }

    pub fn span<I, V>(field: &FiniteField, n: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Scalar]>,
    {
        let mut s = Subspace::zero(field, n);
        for v in vectors {
            s.insert(v.as_ref());
        }
        s
    }

    /// Adds `v` to the span, keeping the basis reduced. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.n);
        let mut r = self.reduce(v);
        let Some(pivot) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = &self.field;
        let inv = f.inv(r[pivot]).expect("nonzero pivot");
        r = scale(f, &r, inv);
        for row in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                axpy(f, row, f.neg(c), &r);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.rows.insert(at, r);
        self.pivots.insert(at, pivot);
        true
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v + self`: zero at every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p];
            if c != 0 {
                axpy(&self.field, &mut r, self.field.neg(c), row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero(&self.reduce(v))
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Coordinates of `v` with respect to the echelon rows, if `v` lies in the
    /// subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// Linear combination of the echelon rows.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vector {
        let mut v = vec![0; self.n];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            axpy(&self.field, &mut v, c, row);
        }
        v
    }

    /// Non-pivot columns; the unit vectors there span a canonical complement.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coordinates of `v + self` in the quotient `F^n / self`, read off the
    /// free columns of the reduced vector.
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vector {
        let r = self.reduce(v);
        self.free_columns().into_iter().map(|c| r[c]).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // kernel of a -> reduce_other(sum a_i row_i)
        let images: Vec<Vector> = self.rows.iter().map(|r| other.reduce(r)).collect();
        let ker = kernel(&self.field, &images, self.n);
        Subspace::span(
            &self.field,
            self.n,
            ker.rows().iter().map(|c| self.combine(c)),
        )
    }

    /// Enumerates every vector in the subspace.
    pub fn elements(&self) -> impl Iterator<Item = Vector> + '_ {
        all_vectors(self.field.order(), self.dim()).map(move |c| self.combine(&c))
    }
}

/// Kernel of the linear map sending the `i`-th unit vector of `F^domain` to
/// `images[i]` (all images have the same length).
pub fn kernel(field: &FiniteField, images: &[Vector], codomain: usize) -> Subspace {
    let domain = images.len();
    // Row-reduce [images | I]; rows whose image part vanishes span the kernel.
    let mut rows: Vec<Vector> = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            debug_assert_eq!(img.len(), codomain);
            let mut r = img.clone();
            r.extend((0..domain).map(|j| if i == j { 1 } else { 0 }));
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..codomain {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = field.inv(rows[rank][col]).expect("nonzero");
        rows[rank] = scale(field, &rows[rank], inv);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = field.neg(row[col]);
                axpy(field, row, c, &pivot);
            }
        }
        rank += 1;
    }
    Subspace::span(
        field,
        domain,
        rows[rank..].iter().map(|r| r[codomain..].to_vec()),
    )
}

/// Enumerates every subspace of `F_q^n` by walking all RREF matrices.
/// The callback may stop the walk early by returning `false`.
pub fn for_each_subspace(field: &FiniteField, n: usize, mut visit: impl FnMut(Subspace) -> bool) {
    let q = field.order();
    for d in 0..=n {
        // choose pivot sets in lexicographic order
        let mut pivots: Vec<usize> = (0..d).collect();
        loop {
            // free positions: row i, column c > pivots[i], c not a pivot
            let mut free = Vec::new();
            for (i, &p) in pivots.iter().enumerate() {
                for c in p + 1..n {
                    if !pivots.contains(&c) {
                        free.push((i, c));
                    }
                }
            }
            for fill in all_vectors(q, free.len()) {
                let mut rows = vec![vec![0; n]; d];
                for (i, &p) in pivots.iter().enumerate() {
                    rows[i][p] = 1;
                }
                for (&(i, c), &x) in free.iter().zip(&fill) {
                    rows[i][c] = x;
                }
                let s = Subspace {
                    field: field.clone(),
                    n,
                    rows,
                    pivots: pivots.clone(),
                };
                if !visit(s) {
                    return;
                }
            }
            if !next_combination(&mut pivots, n) {
                break;
            }
        }
    }
}

fn next_combination(pivots: &mut [usize], n: usize) -> bool {
    let d = pivots.len();
    for i in (0..d).rev() {
        if pivots[i] < n - d + i {
            pivots[i] += 1;
            for j in i + 1..d {
                pivots[j] = pivots[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Number of subspaces of `F_q^n` (sum of Gaussian binomials).
pub fn subspace_count(q: u64, n: usize) -> u128 {
    let mut total: u128 = 0;
    for k in 0..=n {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..k {
            num *= (q as u128).pow((n - i) as u32) - 1;
            den *= (q as u128).pow((i + 1) as u32) - 1;
        }
        total += num / den;
    }
    total
}
