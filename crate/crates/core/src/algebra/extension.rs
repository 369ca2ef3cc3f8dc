use std::sync::Arc;

use crate::algebra::linalg::Subspace;
use crate::algebra::structure::{Algebra, Quotient};
use crate::algebra::subalgebra::{conductor, Ideal, Subalgebra};
use crate::error::{Error, Result};

/// A ring extension `R ⊆ S` of subalgebras of one ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    base: Subalgebra,
    top: Subalgebra,
}

impl Extension {
    pub fn new(base: Subalgebra, top: Subalgebra) -> Result<Self> {
        if !base.same_ambient(&top) {
            return Err(Error::AmbientMismatch);
        }
        if !base.is_subalgebra_of(&top) {
            return Err(Error::NotSubalgebra);
        }
        Ok(Extension { base, top })
    }

    /// `R ⊆ A` with `A` the whole ambient algebra.
    pub fn over(ambient: Arc<Algebra>, base: Subalgebra) -> Result<Self> {
        Self::new(base, Subalgebra::whole(ambient))
    }

    /// `F_q ⊆ A`.
    pub fn from_prime(ambient: Arc<Algebra>) -> Self {
        Extension {
            base: Subalgebra::prime(ambient.clone()),
            top: Subalgebra::whole(ambient),
        }
    }

    pub fn base(&self) -> &Subalgebra {
        &self.base
    }

    pub fn top(&self) -> &Subalgebra {
        &self.top
    }

    pub fn ambient(&self) -> &Arc<Algebra> {
        self.base.ambient()
    }

    pub fn is_trivial(&self) -> bool {
        self.base == self.top
    }

    /// The sub-extension `T ⊆ U` for intermediate rings `T ⊆ U`.
    pub fn between(&self, t: &Subalgebra, u: &Subalgebra) -> Result<Extension> {
        Extension::new(t.clone(), u.clone())
    }

    pub fn conductor(&self) -> Ideal {
        conductor(&self.base, &self.top).expect("base lies in top")
    }

    /// `eR ⊆ eS` for the idempotent of `R` attached to the maximal ideal `m`,
    /// realized on the algebra `eS` with unit `e`.
    pub fn localize(&self, m: &Subspace) -> Result<Extension> {
        let spec = self.base.spectrum();
        let idx = spec.position(m).ok_or(Error::NotMaximal)?;
        self.localize_at(idx)
    }

    /// Localization at the `idx`-th maximal ideal of the base.
    pub fn localize_at(&self, idx: usize) -> Result<Extension> {
        self.localize_with_corner(idx).map(|(ext, _)| ext)
    }

    /// Localization at the `idx`-th maximal ideal, together with `eS` as a
    /// subspace of the ambient algebra; the localized algebra's basis is the
    /// echelon basis of that subspace.
    pub fn localize_with_corner(&self, idx: usize) -> Result<(Extension, Subspace)> {
        let spec = self.base.spectrum();
        let e = spec.idempotents.get(idx).ok_or(Error::NotMaximal)?;
        let amb = self.ambient();
        let corner = |s: &Subspace| {
            Subspace::span(
                amb.field(),
                amb.dim(),
                s.rows().iter().map(|x| amb.mul(e, x)),
            )
        };
        let top_space = corner(self.top.space());
        let base_space = corner(self.base.space());
        let local = Arc::new(amb.restrict(&top_space, e));
        let base = Subalgebra::from_closed(
            local.clone(),
            Subspace::span(
                local.field(),
                local.dim(),
                base_space
                    .rows()
                    .iter()
                    .map(|x| top_space.coords(x).expect("eR lies in eS")),
            ),
        );
        Ok((
            Extension {
                base,
                top: Subalgebra::whole(local),
            },
            top_space,
        ))
    }

    /// Maximal ideals `M` of `R` with `R_M != S_M`, as indices into the base
    /// spectrum.
    pub fn support_indices(&self) -> Vec<usize> {
        let spec = self.base.spectrum();
        let amb = self.ambient();
        spec.idempotents
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                let dim = |s: &Subspace| {
                    Subspace::span(
                        amb.field(),
                        amb.dim(),
                        s.rows().iter().map(|x| amb.mul(e, x)),
                    )
                    .dim()
                };
                dim(self.base.space()) != dim(self.top.space())
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// `R/(J ∩ R) ⊆ S/J` for an ideal `J` of `S`, realized on the algebra
    /// `S/J`. The quotient map takes ambient subspaces of `S` through
    /// [`Extension::project`].
    pub fn modulo(&self, j: &Subspace) -> Result<(Extension, Quotient)> {
        if !self.top.is_ideal(j) {
            return Err(Error::NotAnIdeal);
        }
        let own = self.top.to_algebra();
        let quotient = own.quotient(&self.top.coords_space(j)?)?;
        let base_space = quotient.project_space(&self.top.coords_space(self.base.space())?);
        let algebra = Arc::new(quotient.algebra.clone());
        let ext = Extension {
            base: Subalgebra::from_closed(algebra.clone(), base_space),
            top: Subalgebra::whole(algebra),
        };
        Ok((ext, quotient))
    }

    /// Image in `S/J` of a subspace of `S`, for `quotient` from [`Extension::modulo`].
    pub fn project(&self, quotient: &Quotient, s: &Subspace) -> Result<Subspace> {
        Ok(quotient.project_space(&self.top.coords_space(s)?))
    }

    /// `MSupp(S/R)`.
    pub fn support(&self) -> Vec<Subspace> {
        let spec = self.base.spectrum();
        self.support_indices()
            .into_iter()
            .map(|i| spec.maximal_ideals[i].clone())
            .collect()
    }

    /// For every maximal ideal `Q` of `S`: `(Q, Q ∩ R, [S/Q : R/(Q ∩ R)])`.
    pub fn residual_extensions(&self) -> Result<Vec<ResidualExtension>> {
        let top_spec = self.top.spectrum();
        let base_spec = self.base.spectrum();
        top_spec
            .maximal_ideals
            .iter()
            .enumerate()
            .map(|(qi, q)| {
                let p = q.intersect(self.base.space());
                let pi = base_spec.position(&p).ok_or_else(|| {
                    Error::invariant(
                        "lying-over",
                        "contraction of a maximal ideal is not maximal",
                    )
                })?;
                let top_deg = self.top.residue_dim(q);
                let base_deg = self.base.residue_dim(&p);
                if !top_deg.is_multiple_of(base_deg) {
                    return Err(Error::invariant(
                        "residue-degree",
                        format!("{top_deg} not divisible by {base_deg}"),
                    ));
                }
                let degree = top_deg / base_deg;
                Ok(ResidualExtension {
                    top_index: qi,
                    base_index: pi,
                    degree,
                    length: crate::algebra::field::big_omega(degree as u64) as usize,
                })
            })
            .collect()
    }
}

/// The residue field extension `R/P -> S/Q` at a maximal ideal `Q` of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualExtension {
    /// Index of `Q` in the spectrum of `S`.
    pub top_index: usize,
    /// Index of `P = Q ∩ R` in the spectrum of `R`.
    pub base_index: usize,
    pub degree: usize,
    /// Number of prime factors of the degree, the chain length of the subfield
    /// lattice.
    pub length: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FiniteField;

    fn f2() -> FiniteField {
        FiniteField::prime(2).unwrap()
    }

    /// F2 x F2 ⊆ F2 x F4
    fn split_ext() -> Extension {
        let k = Algebra::base_field(&f2());
        let f4 = Algebra::poly_quotient(&f2(), &[1, 1, 1]).unwrap();
        let a = Arc::new(Algebra::product(&k, &f4).unwrap());
        let r = Subalgebra::generated(a.clone(), None, &[vec![1, 0, 0]]);
        Extension::over(a, r).unwrap()
    }

    #[test]
    fn localization_projects_onto_factors() {
        let ext = split_ext();
        let spec = ext.base().spectrum();
        let mut dims: Vec<(usize, usize)> = (0..spec.len())
            .map(|i| {
                let loc = ext.localize_at(i).unwrap();
                (loc.base().dim(), loc.top().dim())
            })
            .collect();
        dims.sort();
        assert_eq!(dims, vec![(1, 1), (1, 2)]);
        // product of the localized pairs has the dimensions of (R, S)
        let (b, t) = dims.iter().fold((0, 0), |(b, t), (x, y)| (b + x, t + y));
        assert_eq!((b, t), (ext.base().dim(), ext.top().dim()));
    }

    #[test]
    fn support_is_the_nontrivial_factor() {
        let ext = split_ext();
        let supp = ext.support();
        assert_eq!(supp.len(), 1);
        // the F4 factor: its maximal ideal in R kills the second idempotent
        let m = &supp[0];
        assert!(m.contains(&[1, 0, 0]));
        let loc = ext.localize(m).unwrap();
        assert_eq!((loc.base().dim(), loc.top().dim()), (1, 2));
        assert!(ext.localize(&Subspace::zero(&f2(), 3)).is_err());
    }

    #[test]
    fn trivial_and_local_support() {
        let f = f2();
        let t = Arc::new(Algebra::poly_quotient(&f, &[0, 0, 0, 0, 1]).unwrap());
        let ext = Extension::from_prime(t.clone());
        assert_eq!(ext.support(), vec![Subspace::zero(&f, 4)]);
        let loc = ext.localize_at(0).unwrap();
        assert_eq!(loc.top().dim(), 4);
        let same = Extension::over(t.clone(), Subalgebra::whole(t)).unwrap();
        assert!(same.support().is_empty());
    }

    #[test]
    fn residual_degrees() {
        let f = f2();
        let f4 = Algebra::poly_quotient(&f, &[1, 1, 1]).unwrap();
        let f8 = Algebra::poly_quotient(&f, &[1, 1, 0, 1]).unwrap();
        let a = Arc::new(Algebra::product(&f4, &f8).unwrap());
        let ext = Extension::from_prime(a);
        let mut degs: Vec<usize> = ext
            .residual_extensions()
            .unwrap()
            .iter()
            .map(|r| r.degree)
            .collect();
        degs.sort();
        assert_eq!(degs, vec![2, 3]);
    }
}
