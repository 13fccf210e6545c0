use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::shape::BlockShape;

/// An element of a multimatrix algebra, in matrix-unit coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<S> {
    shape: Arc<BlockShape>,
    coords: Vec<S>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn new(shape: Arc<BlockShape>, coords: Vec<S>) -> Result<Self> {
        if coords.len() != shape.dim() {
            return Err(Error::shape(format!(
                "{} coordinates for an algebra of dimension {}",
                coords.len(),
                shape.dim()
            )));
        }
        Ok(AlgebraElement { shape, coords })
    }

    pub fn unit(shape: Arc<BlockShape>) -> Self {
        let coords = shape.unit();
        AlgebraElement { shape, coords }
    }

    pub fn zero(shape: Arc<BlockShape>) -> Self {
        let coords = shape.zero();
        AlgebraElement { shape, coords }
    }

    pub fn basis(shape: Arc<BlockShape>, idx: usize) -> Self {
        let coords = shape.basis_vector(idx);
        AlgebraElement { shape, coords }
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::shape(format!(
                "shapes {:?} and {:?}",
                self.shape.dims(),
                other.shape.dims()
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(AlgebraElement {
            shape: self.shape.clone(),
            coords: self.shape.mul(&self.coords, &other.coords),
        })
    }

    pub fn star(&self) -> Self {
        AlgebraElement { shape: self.shape.clone(), coords: self.shape.star(&self.coords) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.clone() + b)
            .collect();
        Ok(AlgebraElement { shape: self.shape.clone(), coords })
    }

    pub fn scale(&self, s: &S) -> Self {
        AlgebraElement {
            shape: self.shape.clone(),
            coords: self.coords.iter().map(|a| a.clone() * s).collect(),
        }
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.star().approx_eq(self)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.shape == other.shape
            && self.coords.iter().zip(&other.coords).all(|(a, b)| a.approx_eq(b))
    }

    /// Evaluate a functional given as a coefficient vector.
    pub fn pair(&self, functional: &[S]) -> S {
        self.coords
            .iter()
            .zip(functional)
            .fold(S::zero(), |acc, (x, f)| acc + x.clone() * f)
    }
}

/// Apply a functional to a coordinate vector.
pub fn evaluate<S: Scalar>(functional: &[S], x: &[S]) -> S {
    functional
        .iter()
        .zip(x)
        .fold(S::zero(), |acc, (f, v)| if v.is_zero() { acc } else { acc + f.clone() * v })
}
