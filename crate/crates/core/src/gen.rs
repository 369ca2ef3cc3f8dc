//! Seeded generation of finite extensions for test campaigns.
//!
//! Ambient algebras are built so that the algebra laws hold by construction:
//! monomial quotients of `F_q[Y1, Y2]`, quotients `F_q[x]/(g^m)` for an
//! irreducible `g`, products of those, and field extensions `F_q[x]/(g)`.
//! The base ring is the closure of a few random elements.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::field::Scalar;
use crate::algebra::{Algebra, Extension, FiniteField, Subalgebra};
use crate::canonical::is_subintegral;
use crate::error::{Error, Result};
use crate::lattice::brute_force_interval;

pub const MAX_GEN_DIM: usize = 8;
pub const REJECTION_BUDGET: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    /// Local `S`, `R ⊊ S` subintegral with `R/(R:S)` not a field.
    LocalSubintegral,
    ProductOfLocals,
    /// `R ⊆ F_{q^m}` with `m = max_dim`; the first instance has `R = F_q`.
    FieldTower,
    Mixed,
}

impl Shape {
    pub const ALL: [Shape; 4] = [
        Shape::LocalSubintegral,
        Shape::ProductOfLocals,
        Shape::FieldTower,
        Shape::Mixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Shape::LocalSubintegral => "local-subintegral",
            Shape::ProductOfLocals => "product-of-locals",
            Shape::FieldTower => "field-tower",
            Shape::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Shape::ALL
            .into_iter()
            .find(|sh| sh.name() == s)
            .ok_or_else(|| Error::Hypothesis(format!("unknown shape {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub seed: u64,
    pub q: u32,
    pub max_dim: usize,
    pub shape: Shape,
    pub count: usize,
}

impl GenSpec {
    pub fn validate(&self) -> Result<FiniteField> {
        let field = FiniteField::of_order(self.q)?;
        let min = if self.shape == Shape::LocalSubintegral {
            4
        } else {
            1
        };
        if self.max_dim < min || self.max_dim > MAX_GEN_DIM {
            return Err(Error::Hypothesis(format!(
                "max_dim {} outside {min}..={MAX_GEN_DIM} for {}",
                self.max_dim, self.shape
            )));
        }
        Ok(field)
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub extension: Extension,
    /// How the ambient algebra was built.
    pub description: String,
}

#[derive(Clone, Debug)]
pub struct GenStream {
    pub spec: GenSpec,
    pub instances: Vec<Generated>,
    pub attempts: u64,
}

impl GenStream {
    pub fn acceptance_ratio(&self) -> f64 {
        if self.attempts == 0 {
            1.0
        } else {
            self.instances.len() as f64 / self.attempts as f64
        }
    }
}

/// `count` extensions of the requested shape, deterministic in the seed.
pub fn random_extension(spec: GenSpec) -> Result<GenStream> {
    let field = spec.validate()?;
    let mut gen = Generator {
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        field,
        max_dim: spec.max_dim,
    };
    let mut instances = Vec::with_capacity(spec.count);
    let mut attempts = 0u64;
    while instances.len() < spec.count {
        if attempts == REJECTION_BUDGET {
            return Err(Error::Rejection {
                shape: spec.shape.name(),
                attempts,
                accepted: instances.len() as u64,
            });
        }
        attempts += 1;
        let candidate = match spec.shape {
            Shape::LocalSubintegral => gen.local_subintegral()?,
            Shape::ProductOfLocals => gen.product_of_locals(),
            Shape::FieldTower => gen.field_tower(instances.is_empty()),
            Shape::Mixed => Some(gen.mixed()),
        };
        instances.extend(candidate);
    }
    Ok(GenStream {
        spec,
        instances,
        attempts,
    })
}

struct Generator {
    rng: ChaCha8Rng,
    field: FiniteField,
    max_dim: usize,
}

impl Generator {
    fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n as u32) as usize
    }

    fn between(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    fn scalar(&mut self) -> Scalar {
        self.rng.gen_range(0..self.field.order())
    }

    fn monic(&mut self, deg: usize) -> Vec<Scalar> {
        let mut f: Vec<Scalar> = (0..deg).map(|_| self.scalar()).collect();
        f.push(1);
        f
    }

    fn irreducible(&mut self, deg: usize) -> Vec<Scalar> {
        loop {
            let g = self.monic(deg);
            if is_irreducible(&self.field, &g) {
                return g;
            }
        }
    }

    fn staircase(&mut self, size: usize) -> Vec<(u32, u32)> {
        let mut cells = BTreeSet::from([(0u32, 0u32)]);
        while cells.len() < size {
            let corners: Vec<(u32, u32)> = addable_corners(&cells);
            let pick = corners[self.below(corners.len())];
            cells.insert(pick);
        }
        cells.into_iter().collect()
    }

    fn local(&mut self, dim: usize) -> (Algebra, String) {
        if dim == 1 || self.rng.gen_bool(0.5) {
            let cells = self.staircase(dim);
            let desc = format!("monomial {cells:?}");
            (staircase_algebra(&self.field, &cells), desc)
        } else {
            let divisors: Vec<usize> = (1..=dim).filter(|k| dim.is_multiple_of(*k)).collect();
            let k = divisors[self.below(divisors.len())];
            let g = self.irreducible(k);
            let m = dim / k;
            let f = poly_pow(&self.field, &g, m);
            let alg = Algebra::poly_quotient(&self.field, &f).expect("monic of positive degree");
            (alg, format!("poly g^{m}, g = {g:?}"))
        }
    }

    fn base_ring(&mut self, s: &Arc<Algebra>, max_gens: usize) -> Subalgebra {
        let k = self.between(0, max_gens);
        let gens: Vec<Vec<Scalar>> = (0..k)
            .map(|_| (0..s.dim()).map(|_| self.scalar()).collect())
            .collect();
        Subalgebra::generated(s.clone(), None, &gens)
    }

    fn local_subintegral(&mut self) -> Result<Option<Generated>> {
        let dim = self.between(2, self.max_dim);
        let (alg, desc) = self.local(dim);
        let s = Arc::new(alg);
        let r = self.base_ring(&s, 2);
        let ext = Extension::over(s, r)?;
        if ext.is_trivial() || !is_subintegral(&ext)? {
            return Ok(None);
        }
        let m = &ext.base().spectrum().maximal_ideals[0];
        if ext.conductor().dim() == m.dim() {
            return Ok(None);
        }
        Ok(Some(Generated {
            extension: ext,
            description: format!("local {desc}"),
        }))
    }

    fn product_of_locals(&mut self) -> Option<Generated> {
        if self.max_dim < 2 {
            return None;
        }
        let parts = self.between(2, 3.min(self.max_dim));
        let total = self.between(parts, self.max_dim);
        let mut dims = vec![1; parts];
        for _ in parts..total {
            let i = self.below(parts);
            dims[i] += 1;
        }
        let (factors, descs): (Vec<Algebra>, Vec<String>) =
            dims.iter().map(|&d| self.local(d)).unzip();
        let s = Arc::new(Algebra::product_of(&factors).expect("same field"));
        let r = self.base_ring(&s, 2);
        let ext = Extension::over(s, r).expect("closure lies in S");
        (!ext.is_trivial()).then(|| Generated {
            extension: ext,
            description: format!("product [{}]", descs.join("; ")),
        })
    }

    fn field_tower(&mut self, first: bool) -> Option<Generated> {
        let m = self.max_dim;
        let g = self.irreducible(m);
        let s = Arc::new(Algebra::poly_quotient(&self.field, &g).expect("monic"));
        let r = if first {
            Subalgebra::prime(s.clone())
        } else {
            self.base_ring(&s, 1)
        };
        let ext = Extension::over(s, r).expect("closure lies in S");
        (m == 1 || !ext.is_trivial()).then(|| Generated {
            extension: ext,
            description: format!("field g = {g:?}"),
        })
    }

    fn mixed(&mut self) -> Generated {
        let (alg, desc) = match self.below(4) {
            0 => {
                let d = self.between(1, self.max_dim);
                self.local(d)
            }
            1 if self.max_dim >= 2 => {
                let a = self.between(1, self.max_dim - 1);
                let b = self.between(1, self.max_dim - a);
                let (x, dx) = self.local(a);
                let (y, dy) = self.local(b);
                (
                    Algebra::product(&x, &y).expect("same field"),
                    format!("product [{dx}; {dy}]"),
                )
            }
            2 => {
                let m = self.between(1, self.max_dim);
                let g = self.irreducible(m);
                (
                    Algebra::poly_quotient(&self.field, &g).expect("monic"),
                    format!("field g = {g:?}"),
                )
            }
            _ => {
                let d = self.between(1, self.max_dim);
                let f = self.monic(d);
                (
                    Algebra::poly_quotient(&self.field, &f).expect("monic"),
                    format!("poly f = {f:?}"),
                )
            }
        };
        let s = Arc::new(alg);
        let r = self.base_ring(&s, 2);
        Generated {
            extension: Extension::over(s, r).expect("closure lies in S"),
            description: desc,
        }
    }
}

fn addable_corners(cells: &BTreeSet<(u32, u32)>) -> Vec<(u32, u32)> {
    let mut out = BTreeSet::new();
    for &(a, b) in cells {
        for c in [(a + 1, b), (a, b + 1)] {
            let left = c.0 == 0 || cells.contains(&(c.0 - 1, c.1));
            let down = c.1 == 0 || cells.contains(&(c.0, c.1 - 1));
            if !cells.contains(&c) && left && down {
                out.insert(c);
            }
        }
    }
    out.into_iter().collect()
}

/// `F_q[Y1, Y2]` modulo the monomials outside a staircase: `cells` is a
/// down-closed set of exponent pairs containing `(0, 0)`, and becomes the
/// basis in the given order after moving `(0, 0)` to the front.
pub fn staircase_algebra(field: &FiniteField, cells: &[(u32, u32)]) -> Algebra {
    let mut cells = cells.to_vec();
    cells.sort_by_key(|&(a, b)| (a + b, a));
    let n = cells.len();
    let mut table = vec![0; n * n * n];
    for (i, &(a, b)) in cells.iter().enumerate() {
        for (j, &(c, d)) in cells.iter().enumerate() {
            if let Some(k) = cells.iter().position(|&x| x == (a + c, b + d)) {
                table[(i * n + j) * n + k] = 1;
            }
        }
    }
    let mut one = vec![0; n];
    one[0] = 1;
    Algebra::from_parts_unchecked(field.clone(), n, table, one)
}

/// All down-closed sets of `n` exponent pairs, one per partition of `n`.
pub fn staircases(n: usize) -> Vec<Vec<(u32, u32)>> {
    fn parts(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            acc.push(p);
            parts(n - p, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    parts(n, n, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|lambda| {
            lambda
                .iter()
                .enumerate()
                .flat_map(|(row, &len)| (0..len as u32).map(move |col| (col, row as u32)))
                .collect()
        })
        .collect()
}

pub fn poly_mul(field: &FiniteField, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

pub fn poly_pow(field: &FiniteField, g: &[Scalar], m: usize) -> Vec<Scalar> {
    (0..m).fold(vec![1], |acc, _| poly_mul(field, &acc, g))
}

/// Irreducibility over `F_q`, read off `F_q[x]/(g)` being a field.
pub fn is_irreducible(field: &FiniteField, g: &[Scalar]) -> bool {
    match Algebra::poly_quotient(field, g) {
        Ok(a) => a.nilradical().dim() == 0 && a.local_decomposition().len() == 1,
        Err(_) => false,
    }
}

/// Monic polynomials of degree `deg` over `F_q`, in counting order.
pub fn monic_polys(field: &FiniteField, deg: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let q = field.order() as u64;
    (0..q.pow(deg as u32)).map(move |mut code| {
        let mut f: Vec<Scalar> = (0..deg)
            .map(|_| {
                let c = (code % q) as Scalar;
                code /= q;
                c
            })
            .collect();
        f.push(1);
        f
    })
}

/// Local algebras of dimension `dim`: every monomial staircase, and
/// `F_q[x]/(g^m)` for irreducible `g` of degree at least 2.
pub fn local_algebras(field: &FiniteField, dim: usize) -> Vec<(Algebra, String)> {
    let mut out: Vec<(Algebra, String)> = staircases(dim)
        .into_iter()
        .map(|c| (staircase_algebra(field, &c), format!("monomial {c:?}")))
        .collect();
    for k in 2..=dim {
        if !dim.is_multiple_of(k) {
            continue;
        }
        for g in monic_polys(field, k).filter(|g| is_irreducible(field, g)) {
            let f = poly_pow(field, &g, dim / k);
            let alg = Algebra::poly_quotient(field, &f).expect("monic");
            out.push((alg, format!("poly g^{}, g = {g:?}", dim / k)));
        }
    }
    out
}

/// Every ambient algebra of the generator shapes up to dimension `max_dim`
/// (products as multisets of local factors), each paired with every one of
/// its subalgebras as base ring.
pub fn exhaustive_small(
    field: &FiniteField,
    max_dim: usize,
    subspace_budget: u64,
) -> Result<Vec<Generated>> {
    let mut ambients: Vec<(Algebra, String)> = Vec::new();
    let locals: Vec<(usize, Algebra, String)> = (1..=max_dim)
        .flat_map(|d| {
            local_algebras(field, d)
                .into_iter()
                .map(move |(a, s)| (d, a, s))
        })
        .collect();
    ambients.extend(locals.iter().map(|(_, a, s)| (a.clone(), s.clone())));
    // nondecreasing index sequences of length >= 2 with total dimension <= max_dim
    let mut stack: Vec<(Vec<usize>, usize)> =
        (0..locals.len()).map(|i| (vec![i], locals[i].0)).collect();
    while let Some((seq, total)) = stack.pop() {
        if seq.len() >= 2 {
            let factors: Vec<Algebra> = seq.iter().map(|&i| locals[i].1.clone()).collect();
            let desc: Vec<&str> = seq.iter().map(|&i| locals[i].2.as_str()).collect();
            ambients.push((
                Algebra::product_of(&factors)?,
                format!("product [{}]", desc.join("; ")),
            ));
        }
        let last = *seq.last().expect("nonempty");
        for (j, (d, _, _)) in locals.iter().enumerate().skip(last) {
            if total + d <= max_dim {
                let mut next = seq.clone();
                next.push(j);
                stack.push((next, total + d));
            }
        }
    }
    for d in 1..=max_dim {
        for f in monic_polys(field, d) {
            let alg = Algebra::poly_quotient(field, &f)?;
            ambients.push((alg, format!("poly f = {f:?}")));
        }
    }
    let mut out = Vec::new();
    for (alg, desc) in ambients {
        let s = Arc::new(alg);
        let all = brute_force_interval(&Extension::from_prime(s.clone()), subspace_budget)?;
        for r in all {
            out.push(Generated {
                extension: Extension::over(s.clone(), r)?,
                description: desc.clone(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_interval;

    fn spec(seed: u64, q: u32, max_dim: usize, shape: Shape, count: usize) -> GenSpec {
        GenSpec {
            seed,
            q,
            max_dim,
            shape,
            count,
        }
    }

    #[test]
    fn field_tower_starts_at_the_prime_field() {
        let s = random_extension(spec(1, 2, 6, Shape::FieldTower, 1)).unwrap();
        let ext = &s.instances[0].extension;
        assert_eq!((ext.base().dim(), ext.top().dim()), (1, 6));
        let lat = enumerate_interval(ext, 1000).unwrap();
        assert_eq!(lat.len(), 4);
    }

    #[test]
    fn local_subintegral_meets_its_predicate() {
        let s = random_extension(spec(7, 2, 4, Shape::LocalSubintegral, 10)).unwrap();
        assert_eq!(s.instances.len(), 10);
        for g in &s.instances {
            let ext = &g.extension;
            assert!(is_subintegral(ext).unwrap(), "{}", g.description);
            assert!(ext.top().is_local() && !ext.is_trivial());
            ext.ambient().validate().unwrap();
        }
        assert!(s.acceptance_ratio() > 0.0 && s.acceptance_ratio() <= 1.0);
    }

    #[test]
    fn streams_are_deterministic() {
        for shape in Shape::ALL {
            let a = random_extension(spec(7, 3, 4, shape, 5)).unwrap();
            let b = random_extension(spec(7, 3, 4, shape, 5)).unwrap();
            assert_eq!(a.attempts, b.attempts);
            for (x, y) in a.instances.iter().zip(&b.instances) {
                assert_eq!(x.extension.ambient().table(), y.extension.ambient().table());
                assert_eq!(x.extension.base().space(), y.extension.base().space());
                assert_eq!(x.description, y.description);
            }
        }
    }

    #[test]
    fn products_and_mixed_are_valid() {
        for shape in [Shape::ProductOfLocals, Shape::Mixed] {
            let s = random_extension(spec(3, 2, 5, shape, 20)).unwrap();
            for g in &s.instances {
                g.extension.ambient().validate().unwrap();
                assert!(g.extension.top().dim() <= 5);
            }
        }
    }

    #[test]
    fn staircases_are_partitions() {
        let counts: Vec<usize> = (1..=6).map(|n| staircases(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
        let f = FiniteField::prime(3).unwrap();
        for cells in staircases(5) {
            staircase_algebra(&f, &cells).validate().unwrap();
        }
    }

    #[test]
    fn irreducible_counts() {
        // number of monic irreducibles of degree d over F_2: 2, 1, 2, 3
        let f = FiniteField::prime(2).unwrap();
        let counts: Vec<usize> = (1..=4)
            .map(|d| monic_polys(&f, d).filter(|g| is_irreducible(&f, g)).count())
            .collect();
        assert_eq!(counts, vec![2, 1, 2, 3]);
        let f3 = FiniteField::prime(3).unwrap();
        assert_eq!(
            monic_polys(&f3, 2)
                .filter(|g| is_irreducible(&f3, g))
                .count(),
            3
        );
    }

    #[test]
    fn bad_specs_are_rejected() {
        assert!(random_extension(spec(0, 6, 3, Shape::Mixed, 1)).is_err());
        assert!(random_extension(spec(0, 2, 1, Shape::LocalSubintegral, 1)).is_err());
        assert!(random_extension(spec(0, 2, MAX_GEN_DIM + 1, Shape::Mixed, 1)).is_err());
        assert_eq!("field-tower".parse::<Shape>().unwrap(), Shape::FieldTower);
    }

    #[test]
    fn exhaustive_small_covers_every_shape() {
        let f = FiniteField::prime(2).unwrap();
        let all = exhaustive_small(&f, 3, 1 << 20).unwrap();
        assert!(all.iter().any(|g| g.description.starts_with("product")));
        assert!(all.iter().any(|g| g.extension.is_trivial()));
        // F_2 x F_2 x F_2 appears with all five of its subalgebras
        let cube = all
            .iter()
            .filter(|g| g.description.matches("monomial [(0, 0)]").count() == 3)
            .count();
        assert_eq!(cube, 5);
    }
}
