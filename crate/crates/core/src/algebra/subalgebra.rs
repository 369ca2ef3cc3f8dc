//! Subalgebras and ideals of a fixed ambient algebra.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::algebra::field::Scalar;
use crate::algebra::linalg::{Subspace, Vector};
use crate::algebra::structure::{Algebra, Element};
use crate::error::{Error, Result};

/// An ideal, stored as an echelon subspace of the ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal(pub Subspace);

impl Ideal {
    pub fn space(&self) -> &Subspace {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }
}

/// Spectral data of a subalgebra, all in ambient coordinates.
#[derive(Clone, Debug)]
pub struct RingSpectrum {
    pub idempotents: Vec<Vector>,
    pub maximal_ideals: Vec<Subspace>,
    pub nilradical: Subspace,
}

impl RingSpectrum {
    pub fn len(&self) -> usize {
        self.maximal_ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maximal_ideals.is_empty()
    }

    pub fn position(&self, m: &Subspace) -> Option<usize> {
        self.maximal_ideals.iter().position(|x| x == m)
    }
}

/// A unital subalgebra of `ambient`, canonically represented by the echelon
/// basis of its underlying subspace.
#[derive(Clone)]
pub struct Subalgebra {
    ambient: Arc<Algebra>,
    space: Subspace,
    spectrum: OnceLock<Arc<RingSpectrum>>,
}

impl PartialEq for Subalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
    }
}

impl Eq for Subalgebra {}

impl Hash for Subalgebra {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.space.hash(state);
    }
}

impl PartialOrd for Subalgebra {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subalgebra {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.space.cmp(&other.space)
    }
}

impl fmt::Debug for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subalgebra{:?}", self.space.rows())
    }
}

impl Subalgebra {
    /// Wraps a subspace after checking it holds the unit and is closed under
    /// multiplication.
    pub fn new(ambient: Arc<Algebra>, space: Subspace) -> Result<Self> {
        if space.ambient_dim() != ambient.dim() {
            return Err(Error::DimensionMismatch {
                expected: ambient.dim(),
                got: space.ambient_dim(),
            });
        }
        if !space.contains(ambient.one()) {
            return Err(Error::NotSubalgebra);
        }
        let rows = space.rows();
        for (i, x) in rows.iter().enumerate() {
            for y in &rows[i..] {
                if !space.contains(&ambient.mul(x, y)) {
                    return Err(Error::NotSubalgebra);
                }
            }
        }
        Ok(Self::from_closed(ambient, space))
    }

    pub(crate) fn from_closed(ambient: Arc<Algebra>, space: Subspace) -> Self {
        Subalgebra {
            ambient,
            space,
            spectrum: OnceLock::new(),
        }
    }

    pub fn whole(ambient: Arc<Algebra>) -> Self {
        let space = Subspace::full(ambient.field(), ambient.dim());
        Self::from_closed(ambient, space)
    }

    /// The image of `F_q`, spanned by the unit.
    pub fn prime(ambient: Arc<Algebra>) -> Self {
        let space = Subspace::span(ambient.field(), ambient.dim(), [ambient.one()]);
        Self::from_closed(ambient, space)
    }

    /// Smallest subalgebra containing `seed` (or just the unit) and `gens`.
    pub fn generated(ambient: Arc<Algebra>, seed: Option<&Subalgebra>, gens: &[Element]) -> Self {
        let start = match seed {
            Some(s) => s.space.clone(),
            None => Subspace::zero(ambient.field(), ambient.dim()),
        };
        let space = ambient.closure(&start, gens);
        Self::from_closed(ambient, space)
    }

    pub fn ambient(&self) -> &Arc<Algebra> {
        &self.ambient
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.space.contains(x)
    }

    pub fn is_subalgebra_of(&self, other: &Subalgebra) -> bool {
        other.space.contains_space(&self.space)
    }

    pub fn same_ambient(&self, other: &Subalgebra) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient
    }

    /// Intersection, again a subalgebra.
    pub fn meet(&self, other: &Subalgebra) -> Subalgebra {
        Self::from_closed(self.ambient.clone(), self.space.intersect(&other.space))
    }

    /// Compositum `T.U`, the subalgebra generated by both.
    pub fn join(&self, other: &Subalgebra) -> Subalgebra {
        let space = self.ambient.closure(&self.space.sum(&other.space), &[]);
        Self::from_closed(self.ambient.clone(), space)
    }

    /// `self + J` for an ideal `J` of a larger ring; a subalgebra whenever
    /// `self * J` lies in `J`.
    pub fn plus_ideal(&self, j: &Subspace) -> Subalgebra {
        Self::from_closed(self.ambient.clone(), self.space.sum(j))
    }

    /// This subalgebra as an algebra on its own echelon basis.
    pub fn to_algebra(&self) -> Algebra {
        self.ambient.restrict(&self.space, self.ambient.one())
    }

    /// Elements of `self` from coordinates on the echelon basis.
    pub fn embed(&self, coords: &[Scalar]) -> Vector {
        self.space.combine(coords)
    }

    /// A subspace of `self`, rewritten in coordinates on the echelon basis.
    pub fn coords_space(&self, s: &Subspace) -> Result<Subspace> {
        let rows = s
            .rows()
            .iter()
            .map(|r| self.space.coords(r).ok_or(Error::NotSubalgebra))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(self.ambient.field(), self.dim(), rows))
    }

    /// Whether `space` is an ideal of this ring.
    pub fn is_ideal(&self, space: &Subspace) -> bool {
        self.space.contains_space(space)
            && space.rows().iter().all(|x| {
                self.space
                    .rows()
                    .iter()
                    .all(|r| space.contains(&self.ambient.mul(x, r)))
            })
    }

    /// Smallest ideal of this ring containing `space` (which must lie in it).
    pub fn ideal_generated(&self, space: &Subspace) -> Subspace {
        self.ambient.product_space(&self.space, space)
    }

    /// Idempotents, maximal ideals and nilradical, computed once.
    pub fn spectrum(&self) -> Arc<RingSpectrum> {
        self.spectrum
            .get_or_init(|| {
                let own = self.to_algebra();
                let dec = own.local_decomposition();
                let lift = |s: &Subspace| {
                    Subspace::span(
                        self.ambient.field(),
                        self.ambient.dim(),
                        s.rows().iter().map(|r| self.embed(r)),
                    )
                };
                let mut pairs: Vec<(Subspace, Vector)> = dec
                    .maximal_ideals
                    .iter()
                    .zip(&dec.idempotents)
                    .map(|(m, e)| (lift(m), self.embed(e)))
                    .collect();
                pairs.sort();
                let (maximal_ideals, idempotents) = pairs.into_iter().unzip();
                Arc::new(RingSpectrum {
                    idempotents,
                    maximal_ideals,
                    nilradical: lift(&own.nilradical()),
                })
            })
            .clone()
    }

    pub fn is_local(&self) -> bool {
        self.spectrum().len() == 1
    }

    /// Powers of an ideal: `J^k`, with `J^0` the ring itself.
    pub fn ideal_power(&self, j: &Subspace, k: usize) -> Subspace {
        let mut acc = self.space.clone();
        for _ in 0..k {
            acc = self.ambient.product_space(&acc, j);
        }
        acc
    }

    /// `dim_Fq (self / M)`.
    pub fn residue_dim(&self, m: &Subspace) -> usize {
        self.dim() - m.dim()
    }

    /// Length of the `R`-module `outer / inner` (both `R`-stable subspaces of
    /// the ambient algebra), read off the radical filtration.
    pub fn module_length(&self, outer: &Subspace, inner: &Subspace) -> Result<usize> {
        if !outer.contains_space(inner) {
            return Err(Error::NotStable);
        }
        for s in [outer, inner] {
            let moved = self.ambient.product_space(&self.space, s);
            if !s.contains_space(&moved) {
                return Err(Error::NotStable);
            }
        }
        let spec = self.spectrum();
        let residue: Vec<usize> = spec
            .maximal_ideals
            .iter()
            .map(|m| self.residue_dim(m))
            .collect();
        let mut length = 0;
        let mut layer_top = outer.clone();
        while layer_top != *inner {
            let layer_bottom = self
                .ambient
                .product_space(&spec.nilradical, &layer_top)
                .sum(inner);
            for (e, &f) in spec.idempotents.iter().zip(&residue) {
                let part = |s: &Subspace| {
                    Subspace::span(
                        s.field(),
                        s.ambient_dim(),
                        s.rows().iter().map(|x| self.ambient.mul(e, x)),
                    )
                    .dim()
                };
                let d = part(&layer_top) - part(&layer_bottom);
                if d % f != 0 {
                    return Err(Error::invariant(
                        "module-length",
                        format!("layer of F_q-dimension {d} over residue degree {f}"),
                    ));
                }
                length += d / f;
            }
            layer_top = layer_bottom;
        }
        Ok(length)
    }
}

/// The conductor `(R : U) = { x in R : x U in R }`, an ideal of both rings.
pub fn conductor(r: &Subalgebra, u: &Subalgebra) -> Result<Ideal> {
    if !r.same_ambient(u) {
        return Err(Error::AmbientMismatch);
    }
    if !r.is_subalgebra_of(u) {
        return Err(Error::NotSubalgebra);
    }
    let amb = r.ambient();
    let images: Vec<Vector> = r
        .space()
        .rows()
        .iter()
        .map(|x| {
            u.space()
                .rows()
                .iter()
                .flat_map(|s| r.space().quotient_coords(&amb.mul(x, s)))
                .collect()
        })
        .collect();
    let width = images.first().map_or(0, Vec::len);
    let ker = crate::algebra::linalg::kernel(amb.field(), &images, width);
    Ok(Ideal(Subspace::span(
        amb.field(),
        amb.dim(),
        ker.rows().iter().map(|c| r.embed(c)),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FiniteField;
    use crate::algebra::linalg;

    fn t4() -> Arc<Algebra> {
        let f = FiniteField::prime(2).unwrap();
        Arc::new(Algebra::poly_quotient(&f, &[0, 0, 0, 0, 1]).unwrap())
    }

    fn span(a: &Arc<Algebra>, idx: &[usize]) -> Subspace {
        Subspace::span(a.field(), a.dim(), idx.iter().map(|&i| a.basis_vector(i)))
    }

    /// Largest subspace of R that is an ideal of both R and S, by scanning
    /// every subspace of R.
    fn brute_common_ideal(r: &Subalgebra, s: &Subalgebra) -> Subspace {
        let mut best = Subspace::zero(r.ambient().field(), r.ambient().dim());
        linalg::for_each_subspace(r.ambient().field(), r.dim(), |c| {
            let sp = Subspace::span(
                r.ambient().field(),
                r.ambient().dim(),
                c.rows().iter().map(|x| r.embed(x)),
            );
            if r.is_ideal(&sp) && s.is_ideal(&sp) && sp.dim() > best.dim() {
                best = sp;
            }
            true
        });
        best
    }

    #[test]
    fn conductor_examples() {
        let t = t4();
        let s = Subalgebra::whole(t.clone());
        let k = Subalgebra::prime(t.clone());
        assert_eq!(conductor(&k, &s).unwrap().dim(), 0);
        assert_eq!(conductor(&s, &s).unwrap().0, *s.space());
        let r = Subalgebra::new(t.clone(), span(&t, &[0, 2, 3])).unwrap();
        assert_eq!(conductor(&r, &s).unwrap().0, span(&t, &[2, 3]));
    }

    #[test]
    fn conductor_is_the_largest_common_ideal() {
        let t = t4();
        let s = Subalgebra::whole(t.clone());
        let f3 = FiniteField::prime(3).unwrap();
        let a3 = Arc::new(
            Algebra::product(
                &Algebra::poly_quotient(&f3, &[0, 0, 1]).unwrap(),
                &Algebra::poly_quotient(&f3, &[0, 0, 1]).unwrap(),
            )
            .unwrap(),
        );
        let cases = vec![
            (Subalgebra::prime(t.clone()), s.clone()),
            (
                Subalgebra::new(t.clone(), span(&t, &[0, 2, 3])).unwrap(),
                s.clone(),
            ),
            (
                Subalgebra::new(t.clone(), span(&t, &[0, 2])).unwrap(),
                s.clone(),
            ),
            (
                Subalgebra::generated(a3.clone(), None, &[vec![0, 1, 0, 1]]),
                Subalgebra::whole(a3.clone()),
            ),
            (
                Subalgebra::generated(a3.clone(), None, &[vec![1, 1, 0, 0]]),
                Subalgebra::whole(a3.clone()),
            ),
        ];
        for (r, s) in cases {
            let c = conductor(&r, &s).unwrap();
            assert!(r.is_ideal(c.space()) && s.is_ideal(c.space()));
            assert_eq!(c.0, brute_common_ideal(&r, &s), "{r:?}");
        }
    }

    #[test]
    fn subalgebra_validation() {
        let t = t4();
        assert_eq!(
            Subalgebra::new(t.clone(), span(&t, &[0, 1])).unwrap_err(),
            Error::NotSubalgebra
        );
        assert_eq!(
            Subalgebra::new(t.clone(), span(&t, &[2])).unwrap_err(),
            Error::NotSubalgebra
        );
    }

    #[test]
    fn module_lengths() {
        let t = t4();
        let s = Subalgebra::whole(t.clone());
        let k = Subalgebra::prime(t.clone());
        // L_K(T / K) = 3
        assert_eq!(k.module_length(s.space(), k.space()).unwrap(), 3);
        // L_T(T / M) = 1 for the local ring T
        let m = s.spectrum().maximal_ideals[0].clone();
        assert_eq!(s.module_length(s.space(), &m).unwrap(), 1);
        // zero module
        let zero = Subspace::zero(t.field(), 4);
        assert_eq!(k.module_length(&zero, &zero).unwrap(), 0);
        // T as a T-module has length 4
        assert_eq!(s.module_length(s.space(), &zero).unwrap(), 4);
        // not stable under T
        assert_eq!(
            s.module_length(k.space(), &zero).unwrap_err(),
            Error::NotStable
        );
    }

    #[test]
    fn module_length_counts_residue_degree() {
        let f2 = FiniteField::prime(2).unwrap();
        let f4 = Algebra::poly_quotient(&f2, &[1, 1, 1]).unwrap();
        let a = Arc::new(Algebra::product(&f4, &f4).unwrap());
        let s = Subalgebra::whole(a.clone());
        let zero = Subspace::zero(a.field(), 4);
        // F4 x F4 over itself: two simple modules
        assert_eq!(s.module_length(s.space(), &zero).unwrap(), 2);
        // over the diagonal-free prime subring F2 it is 4-dimensional
        let k = Subalgebra::prime(a.clone());
        assert_eq!(k.module_length(s.space(), &zero).unwrap(), 4);
    }

    #[test]
    fn spectrum_of_subalgebra() {
        let f2 = FiniteField::prime(2).unwrap();
        let k = Algebra::base_field(&f2);
        let f4 = Algebra::poly_quotient(&f2, &[1, 1, 1]).unwrap();
        let a = Arc::new(Algebra::product(&k, &f4).unwrap());
        // R = F2 x F2 inside F2 x F4
        let r = Subalgebra::generated(a.clone(), None, &[vec![1, 0, 0]]);
        assert_eq!(r.dim(), 2);
        let spec = r.spectrum();
        assert_eq!(spec.len(), 2);
        assert!(spec.idempotents.contains(&vec![1, 0, 0]));
        assert!(spec.idempotents.contains(&vec![0, 1, 0]));
        assert_eq!(spec.nilradical.dim(), 0);
    }
}
