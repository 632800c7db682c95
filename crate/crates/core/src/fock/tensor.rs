use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::density::DensityMatrix;
use super::layout::ModeLayout;
use super::operator::LinearOperator;
use super::state::StateVector;
use crate::error::{Error, Result};

/// Tensor product over a list of factors, mode order following list order.
pub trait Tensor: Sized {
    fn tensor(factors: &[Self]) -> Result<Self>;
}

fn joint_layout<'a>(layouts: impl Iterator<Item = &'a ModeLayout>) -> Result<ModeLayout> {
    let dims: Vec<usize> = layouts.flat_map(|l| l.dims().iter().copied()).collect();
    ModeLayout::new(dims)
}

impl Tensor for StateVector {
    fn tensor(factors: &[Self]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or(Error::EmptyInput("tensor factors"))?;
        let layout = joint_layout(factors.iter().map(|f| f.layout()))?;
        let mut v: DVector<C64> = first.amplitudes().clone();
        for f in rest {
            v = v.kronecker(f.amplitudes());
        }
        StateVector::new(layout, v)
    }
}

impl Tensor for LinearOperator {
    fn tensor(factors: &[Self]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or(Error::EmptyInput("tensor factors"))?;
        let layout = joint_layout(factors.iter().map(|f| f.layout()))?;
        let mut m: DMatrix<C64> = first.matrix().clone();
        for f in rest {
            m = m.kronecker(f.matrix());
        }
        LinearOperator::new(layout, m)
    }
}

impl Tensor for DensityMatrix {
    fn tensor(factors: &[Self]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or(Error::EmptyInput("tensor factors"))?;
        let layout = joint_layout(factors.iter().map(|f| f.layout()))?;
        let mut m: DMatrix<C64> = first.matrix().clone();
        for f in rest {
            m = m.kronecker(f.matrix());
        }
        DensityMatrix::new(layout, m)
    }
}

pub fn tensor<T: Tensor>(factors: &[T]) -> Result<T> {
    T::tensor(factors)
}
