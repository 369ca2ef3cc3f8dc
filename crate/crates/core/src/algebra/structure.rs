//! Finite-dimensional commutative unital algebras given by structure constants.

use crate::algebra::field::{FiniteField, Scalar};
use crate::algebra::linalg::{self, axpy, Subspace, Vector};
use crate::error::{Error, Result};

/// An element of an algebra, as coordinates in the algebra's basis.
pub type Element = Vector;

/// A commutative unital `F_q`-algebra with basis `e_0..e_{n-1}` and
/// `e_i * e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: FiniteField,
    dim: usize,
    table: Vec<Scalar>,
    one: Vector,
}

impl Algebra {
    /// Builds an algebra from a row-major `dim^3` table, checking
    /// commutativity, associativity and the unit law on all basis triples.
    pub fn new(field: FiniteField, dim: usize, table: Vec<Scalar>, one: Vector) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        if table.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                got: table.len(),
            });
        }
        if one.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: one.len(),
            });
        }
        if table.iter().chain(&one).any(|&c| !field.contains(c)) {
            return Err(Error::InvalidField(format!(
                "scalar out of range 0..{}",
                field.order()
            )));
        }
        let alg = Algebra {
            field,
            dim,
            table,
            one,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Re-checks the ring laws exhaustively over basis triples.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.table[(i * n + j) * n + k] != self.table[(j * n + i) * n + k] {
                        return Err(Error::AlgebraLaw {
                            law: "commutativity",
                            indices: vec![i, j, k],
                        });
                    }
                }
            }
        }
        for i in 0..n {
            let ei = self.basis_vector(i);
            if self.mul(&self.one, &ei) != ei {
                return Err(Error::AlgebraLaw {
                    law: "unit",
                    indices: vec![i],
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let eij = self.basis_product(i, j);
                for k in 0..n {
                    let left = self.mul(&eij, &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &self.basis_product(j, k));
                    if left != right {
                        return Err(Error::AlgebraLaw {
                            law: "associativity",
                            indices: vec![i, j, k],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn from_parts_unchecked(
        field: FiniteField,
        dim: usize,
        table: Vec<Scalar>,
        one: Vector,
    ) -> Self {
        let alg = Algebra {
            field,
            dim,
            table,
            one,
        };
        debug_assert!(alg.validate().is_ok());
        alg
    }

    /// `F_q[Y] / (f)` with basis `1, y, .., y^{d-1}`; `f` lists coefficients
    /// lowest degree first and must be monic.
    pub fn poly_quotient(field: &FiniteField, f: &[Scalar]) -> Result<Self> {
        let f: Vec<Scalar> = {
            let mut v = f.to_vec();
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        if f.len() <= 1 {
            return Err(Error::DegreeZero);
        }
        if f.iter().any(|&c| !field.contains(c)) {
            return Err(Error::InvalidField("coefficient out of range".into()));
        }
        let d = f.len() - 1;
        if f[d] != 1 {
            return Err(Error::NotMonic);
        }
        // y^m for m < 2d - 1, reduced mod f
        let mut powers: Vec<Vector> = Vec::with_capacity(2 * d);
        let mut cur = vec![0; d];
        cur[0] = 1;
        for _ in 0..2 * d - 1 {
            powers.push(cur.clone());
            // multiply by y: shift, then fold y^d = -(f_0 + .. + f_{d-1} y^{d-1})
            let top = cur[d - 1];
            let mut next = vec![0; d];
            next[1..d].copy_from_slice(&cur[..d - 1]);
            for (k, n) in next.iter_mut().enumerate() {
                *n = field.sub(*n, field.mul(top, f[k]));
            }
            cur = next;
        }
        let mut table = vec![0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                table[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&powers[i + j]);
            }
        }
        let mut one = vec![0; d];
        one[0] = 1;
        Algebra::new(field.clone(), d, table, one)
    }

    /// The field itself as a one-dimensional algebra.
    pub fn base_field(field: &FiniteField) -> Self {
        Algebra::from_parts_unchecked(field.clone(), 1, vec![1], vec![1])
    }

    /// Direct product with block-diagonal structure constants.
    pub fn product(a: &Algebra, b: &Algebra) -> Result<Self> {
        if a.field != b.field {
            return Err(Error::FieldMismatch);
        }
        let (m, k) = (a.dim, b.dim);
        let n = m + k;
        let mut table = vec![0; n * n * n];
        for i in 0..m {
            for j in 0..m {
                for l in 0..m {
                    table[(i * n + j) * n + l] = a.table[(i * m + j) * m + l];
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    table[((m + i) * n + m + j) * n + m + l] = b.table[(i * k + j) * k + l];
                }
            }
        }
        let mut one = a.one.clone();
        one.extend_from_slice(&b.one);
        Ok(Algebra::from_parts_unchecked(
            a.field.clone(),
            n,
            table,
            one,
        ))
    }

    /// Product of a nonempty list of algebras.
    pub fn product_of(factors: &[Algebra]) -> Result<Self> {
        let (first, rest) = factors.split_first().ok_or(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        })?;
        rest.iter()
            .try_fold(first.clone(), |acc, f| Algebra::product(&acc, f))
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &Vector {
        &self.one
    }

    pub fn table(&self) -> &[Scalar] {
        &self.table
    }

    pub fn zero(&self) -> Vector {
        vec![0; self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let n = self.dim;
        self.table[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let n = self.dim;
        let f = &self.field;
        let mut out = vec![0; n];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = f.mul(ai, bj);
                axpy(
                    f,
                    &mut out,
                    c,
                    &self.table[(i * n + j) * n..(i * n + j + 1) * n],
                );
            }
        }
        out
    }

    pub fn pow(&self, a: &[Scalar], mut exp: u64) -> Vector {
        let mut result = self.one.clone();
        let mut base = a.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(&result, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        linalg::add(&self.field, a, b)
    }

    pub fn sub(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        linalg::sub(&self.field, a, b)
    }

    pub fn is_idempotent(&self, a: &[Scalar]) -> bool {
        self.mul(a, a) == a
    }

    /// `x -> x^{q^m}` with `q^m >= dim`. This map is `F_q`-linear.
    pub fn stable_frobenius(&self, a: &[Scalar]) -> Vector {
        let q = self.field.order() as u64;
        let mut x = a.to_vec();
        let mut reach = 1u64;
        loop {
            x = self.pow(&x, q);
            reach = reach.saturating_mul(q);
            if reach >= self.dim as u64 {
                return x;
            }
        }
    }

    /// Span of all pairwise products of the two subspaces.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut s = Subspace::zero(&self.field, self.dim);
        for x in a.rows() {
            for y in b.rows() {
                s.insert(&self.mul(x, y));
                if s.dim() == self.dim {
                    return s;
                }
            }
        }
        s
    }

    /// Whether `space * basis` lands in `space`.
    pub fn is_ideal(&self, space: &Subspace) -> bool {
        space
            .rows()
            .iter()
            .all(|x| (0..self.dim).all(|i| space.contains(&self.mul(x, &self.basis_vector(i)))))
    }

    /// Smallest subspace containing `seed`, the unit and `gens`, closed under
    /// multiplication. Span-and-multiply to a fixpoint.
    pub fn closure(&self, seed: &Subspace, gens: &[Vector]) -> Subspace {
        let mut s = seed.clone();
        s.insert(&self.one);
        for g in gens {
            s.insert(g);
        }
        loop {
            let rows = s.rows().to_vec();
            let mut grew = false;
            for (i, x) in rows.iter().enumerate() {
                for y in &rows[i..] {
                    grew |= s.insert(&self.mul(x, y));
                }
            }
            if !grew {
                return s;
            }
        }
    }

    /// Nilpotent elements: the kernel of the linear map `x -> x^{q^m}`.
    pub fn nilradical(&self) -> Subspace {
        let images: Vec<Vector> = (0..self.dim)
            .map(|i| self.stable_frobenius(&self.basis_vector(i)))
            .collect();
        linalg::kernel(&self.field, &images, self.dim)
    }

    /// `A / J` on the complement spanned by the free columns of `J`'s echelon
    /// basis.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if ideal.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: ideal.ambient_dim(),
            });
        }
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        if ideal.contains(&self.one) {
            return Err(Error::ImproperIdeal);
        }
        let free = ideal.free_columns();
        let m = free.len();
        let mut table = vec![0; m * m * m];
        for (a, &i) in free.iter().enumerate() {
            for (b, &j) in free.iter().enumerate() {
                let img = ideal.quotient_coords(&self.basis_product(i, j));
                table[(a * m + b) * m..(a * m + b + 1) * m].copy_from_slice(&img);
            }
        }
        let one = ideal.quotient_coords(&self.one);
        Ok(Quotient {
            algebra: Algebra::from_parts_unchecked(self.field.clone(), m, table, one),
            kernel: ideal.clone(),
            free,
            source_dim: self.dim,
        })
    }

    /// Primitive idempotents lifted from `A / Nil(A)`, with the local factors
    /// `e_i A` and the maximal ideals `Nil(A) + (1 - e_i) A`.
    pub fn local_decomposition(&self) -> LocalDecomposition {
        let nil = self.nilradical();
        let reduced = self.quotient(&nil).expect("nilradical is a proper ideal");
        let semisimple = &reduced.algebra;
        let mut idempotents = Vec::new();
        for e in semisimple.split_semisimple() {
            // lift, then x -> x^q converges to the idempotent above e
            let mut x = reduced.lift(&e);
            let q = self.field.order() as u64;
            while !self.is_idempotent(&x) {
                x = self.pow(&x, q);
            }
            idempotents.push(x);
        }
        let mut parts: Vec<(Subspace, Vector)> = idempotents
            .into_iter()
            .map(|e| {
                let complement = self.sub(&self.one, &e);
                let co = Subspace::span(
                    &self.field,
                    self.dim,
                    (0..self.dim).map(|i| self.mul(&complement, &self.basis_vector(i))),
                );
                (nil.sum(&co), e)
            })
            .collect();
        parts.sort();
        let (maximal_ideals, idempotents): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
        let factors = idempotents.iter().map(|e| self.corner(e)).collect();
        LocalDecomposition {
            idempotents,
            factors,
            maximal_ideals,
        }
    }

    /// Complete orthogonal primitive idempotents of a reduced algebra, found
    /// by splitting along a basis of the Frobenius-fixed subalgebra.
    fn split_semisimple(&self) -> Vec<Vector> {
        let q = self.field.order() as u64;
        let images: Vec<Vector> = (0..self.dim)
            .map(|i| {
                let e = self.basis_vector(i);
                self.sub(&self.pow(&e, q), &e)
            })
            .collect();
        let fixed = linalg::kernel(&self.field, &images, self.dim);
        let mut idempotents = vec![self.one.clone()];
        for b in fixed.rows() {
            let mut refined = Vec::new();
            for e in &idempotents {
                for c in self.field.elements() {
                    let shifted = self.sub(b, &linalg::scale(&self.field, &self.one, c));
                    let indicator = self.sub(&self.one, &self.pow(&shifted, q - 1));
                    let part = self.mul(e, &indicator);
                    if !linalg::is_zero(&part) {
                        refined.push(part);
                    }
                }
            }
            idempotents = refined;
        }
        idempotents
    }

    /// The algebra `e A` with unit `e`, for an idempotent `e`.
    pub fn corner(&self, e: &[Scalar]) -> Factor {
        let space = Subspace::span(
            &self.field,
            self.dim,
            (0..self.dim).map(|i| self.mul(e, &self.basis_vector(i))),
        );
        let algebra = self.restrict(&space, e);
        Factor {
            algebra,
            space,
            idempotent: e.to_vec(),
        }
    }

    /// Structure constants of a multiplicatively closed subspace on its
    /// echelon basis, with the given element as unit.
    pub(crate) fn restrict(&self, space: &Subspace, unit: &[Scalar]) -> Algebra {
        let m = space.dim();
        let rows = space.rows();
        let mut table = vec![0; m * m * m];
        for a in 0..m {
            for b in 0..m {
                let prod = self.mul(&rows[a], &rows[b]);
                let c = space.coords(&prod).expect("subspace closed under products");
                table[(a * m + b) * m..(a * m + b + 1) * m].copy_from_slice(&c);
            }
        }
        let one = space.coords(unit).expect("unit inside subspace");
        Algebra::from_parts_unchecked(self.field.clone(), m, table, one)
    }
}

/// A quotient algebra with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Algebra,
    pub kernel: Subspace,
    free: Vec<usize>,
    source_dim: usize,
}

impl Quotient {
    pub fn project(&self, v: &[Scalar]) -> Vector {
        self.kernel.quotient_coords(v)
    }

    /// Section of the projection: the representative supported on the free
    /// columns.
    pub fn lift(&self, c: &[Scalar]) -> Vector {
        let mut v = vec![0; self.source_dim];
        for (&col, &x) in self.free.iter().zip(c) {
            v[col] = x;
        }
        v
    }

    /// Image of a subspace of the source.
    pub fn project_space(&self, s: &Subspace) -> Subspace {
        Subspace::span(
            self.algebra.field(),
            self.algebra.dim(),
            s.rows().iter().map(|r| self.project(r)),
        )
    }

    /// Full preimage of a subspace of the quotient.
    pub fn preimage(&self, s: &Subspace) -> Subspace {
        self.kernel.sum(&Subspace::span(
            s.field(),
            self.source_dim,
            s.rows().iter().map(|r| self.lift(r)),
        ))
    }
}

/// One local factor `e A` of a decomposition.
#[derive(Clone, Debug)]
pub struct Factor {
    pub algebra: Algebra,
    /// `e A` as a subspace of the ambient algebra.
    pub space: Subspace,
    pub idempotent: Vector,
}

impl Factor {
    /// Coordinates of `e x` in the factor's basis.
    pub fn project(&self, ambient: &Algebra, x: &[Scalar]) -> Vector {
        self.space
            .coords(&ambient.mul(&self.idempotent, x))
            .expect("e x lies in e A")
    }
}

#[derive(Clone, Debug)]
pub struct LocalDecomposition {
    pub idempotents: Vec<Vector>,
    pub factors: Vec<Factor>,
    pub maximal_ideals: Vec<Subspace>,
}

impl LocalDecomposition {
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    /// `dim_Fq (A / M_i)` for each factor.
    pub fn residue_dims(&self) -> Vec<usize> {
        self.maximal_ideals
            .iter()
            .map(|m| m.ambient_dim() - m.dim())
            .collect()
    }
}
