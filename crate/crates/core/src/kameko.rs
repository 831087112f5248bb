//! Kameko's squaring map `(QP_k)_{2n+k} → (QP_k)_n` and its section `ψ`.

use rayon::prelude::*;

use crate::f2linalg::{kernel_of_stack, BitVector, LinearMap, Subspace};
use crate::group_action::{basis_from_kernel, rho_minus_identity, GroupKind, InvariantSpace};
use crate::hit::HitSpace;
use crate::monomial::Monomial;
use crate::steenrod::Polynomial;
use crate::Error;

/// A source degree `2n + k` and target degree `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KamekoContext {
    pub k: usize,
    pub source: u32,
    pub target: u32,
}

impl KamekoContext {
    pub fn new(k: usize, source: u32) -> Result<Self, Error> {
        if source < k as u32 || !(source - k as u32).is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "source degree {source} is not of the form 2n + {k}"
            )));
        }
        Ok(KamekoContext {
            k,
            source,
            target: (source - k as u32) / 2,
        })
    }
}

/// `x_1 ... x_k y^2 ↦ y`; monomials with an even exponent go to zero.
pub fn kameko_down(m: &Monomial) -> Result<Option<Monomial>, Error> {
    if m.degree() % 2 != m.k() as u32 % 2 {
        return Err(Error::InvalidArgument(format!(
            "{m} has degree of the wrong parity for {} variables",
            m.k()
        )));
    }
    if m.exponents().iter().any(|a| a % 2 == 0) {
        return Ok(None);
    }
    let e: Vec<u32> = m.exponents().iter().map(|a| (a - 1) / 2).collect();
    Ok(Some(Monomial::new(&e)?))
}

pub fn kameko_down_poly(f: &Polynomial) -> Result<Polynomial, Error> {
    let mut terms = Vec::new();
    for m in f.terms() {
        if let Some(y) = kameko_down(m)? {
            terms.push(y);
        }
    }
    Ok(Polynomial::from_monomials(terms))
}

pub fn psi_monomial(y: &Monomial) -> Monomial {
    let mut out = y.square();
    for j in 1..=y.k() {
        out.set_exponent(j, out.exponent(j) + 1);
    }
    out
}

/// `y ↦ x_1 ... x_k y^2`.
pub fn psi_up(y: &Polynomial) -> Polynomial {
    // injective on monomials, so no cancellation
    Polynomial::from_monomials(y.terms().iter().map(psi_monomial))
}

/// The induced map on admissible bases.
pub struct KamekoMap<'a> {
    pub context: KamekoContext,
    pub source: &'a HitSpace,
    pub target: &'a HitSpace,
    matrix: LinearMap,
}

impl<'a> KamekoMap<'a> {
    pub fn new(source: &'a HitSpace, target: &'a HitSpace) -> Result<Self, Error> {
        let context = KamekoContext::new(source.k(), source.degree())?;
        if target.k() != source.k() || target.degree() != context.target {
            return Err(Error::InvalidArgument(format!(
                "target must be degree {} in {} variables",
                context.target, context.k
            )));
        }
        let cols: Result<Vec<BitVector>, Error> = source
            .admissible_monomials()
            .par_iter()
            .map(|m| match kameko_down(m)? {
                Some(y) => target.monomial_coords(&y),
                None => Ok(BitVector::zeros(target.dim())),
            })
            .collect();
        let matrix = LinearMap::from_columns(target.dim(), cols?)?;
        Ok(KamekoMap {
            context,
            source,
            target,
            matrix,
        })
    }

    pub fn matrix(&self) -> &LinearMap {
        &self.matrix
    }

    /// Image of a class given in source admissible coordinates.
    pub fn apply(&self, coords: &BitVector) -> Result<BitVector, Error> {
        Ok(self.matrix.apply(coords)?)
    }

    /// The kernel, in source admissible coordinates.
    pub fn kernel(&self) -> Result<Subspace, Error> {
        Ok(kernel_of_stack(std::slice::from_ref(&self.matrix), self.source.dim())?)
    }

    pub fn kernel_basis(&self) -> Result<Vec<Polynomial>, Error> {
        Ok(basis_from_kernel(&self.kernel()?, |v| self.source.from_coords(v)))
    }

    pub fn rank(&self) -> usize {
        self.matrix.image().rank()
    }

    /// Invariants of the kernel, that is the kernel intersected with the
    /// invariants of the source.
    pub fn kernel_invariants(&self, kind: GroupKind) -> Result<InvariantSpace, Error> {
        let mut maps = vec![self.matrix.clone()];
        for j in kind.generators(self.source.k()) {
            maps.push(rho_minus_identity(self.source, j)?);
        }
        let kernel = kernel_of_stack(&maps, self.source.dim())?;
        Ok(InvariantSpace {
            kind,
            degree: self.source.degree(),
            omega: None,
            basis: basis_from_kernel(&kernel, |v| self.source.from_coords(v)),
        })
    }
}
