use crate::error::{Error, Result};

/// Per-mode cutoff dimensions of a composite truncated Fock space.
///
/// Each entry is `s + 1`, the number of retained levels `|0>..|s>` of one
/// mode. Basis states are flattened row-major over the multi-index
/// `(n_0, .., n_{f-1})` with mode 0 varying slowest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModeLayout {
    dims: Vec<usize>,
}

impl ModeLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidLayout("no modes".into()));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::InvalidLayout(format!("mode {pos} has dimension 0")));
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidLayout("total dimension overflows".into()))?;
        Ok(Self { dims })
    }

    /// Single mode with levels `0..=cutoff`.
    pub fn single(cutoff: usize) -> Self {
        Self {
            dims: vec![cutoff + 1],
        }
    }

    /// `modes` modes, each with levels `0..=cutoff`.
    pub fn uniform(modes: usize, cutoff: usize) -> Result<Self> {
        Self::new(vec![cutoff + 1; modes])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_modes(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Highest retained Fock level of `mode`.
    pub fn cutoff(&self, mode: usize) -> Result<usize> {
        self.check_mode(mode)?;
        Ok(self.dims[mode] - 1)
    }

    pub fn check_mode(&self, mode: usize) -> Result<()> {
        if mode < self.dims.len() {
            Ok(())
        } else {
            Err(Error::InvalidMode {
                mode,
                modes: self.dims.len(),
            })
        }
    }

    /// Row-major strides: the flat-index step of incrementing each mode.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    pub fn index_of(&self, multi: &[usize]) -> Result<usize> {
        if multi.len() != self.dims.len() {
            return Err(Error::DimensionMismatch {
                expected: self.dims.len(),
                got: multi.len(),
            });
        }
        let mut index = 0;
        for (k, (&n, &d)) in multi.iter().zip(&self.dims).enumerate() {
            if n >= d {
                return Err(Error::CutoffTooSmall(format!(
                    "level {n} exceeds cutoff {} of mode {k}",
                    d - 1
                )));
            }
            index = index * d + n;
        }
        Ok(index)
    }

    /// Inverse of [`ModeLayout::index_of`]. Panics if `index` is out of range.
    pub fn multi_index(&self, mut index: usize) -> Vec<usize> {
        assert!(index < self.total_dim(), "basis index {index} out of range");
        let mut multi = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            multi[k] = index % self.dims[k];
            index /= self.dims[k];
        }
        multi
    }

    /// Occupation of `mode` in the basis state with flat index `index`.
    pub fn level(&self, index: usize, mode: usize) -> usize {
        let stride: usize = self.dims[mode + 1..].iter().product();
        (index / stride) % self.dims[mode]
    }

    /// Total photon number of the basis state with flat index `index`.
    pub fn total_photons(&self, index: usize) -> usize {
        self.multi_index(index).iter().sum()
    }

    pub fn concat(&self, other: &ModeLayout) -> ModeLayout {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        ModeLayout { dims }
    }

    /// Layout of the listed modes, in the given order.
    pub fn sub_layout(&self, modes: &[usize]) -> Result<ModeLayout> {
        for &m in modes {
            self.check_mode(m)?;
        }
        ModeLayout::new(modes.iter().map(|&m| self.dims[m]).collect())
    }

    pub fn iter_multi(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.total_dim()).map(move |i| self.multi_index(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_degenerate_layouts() {
        assert!(ModeLayout::new(vec![]).is_err());
        assert!(ModeLayout::new(vec![3, 0]).is_err());
    }

    #[test]
    fn mode_zero_is_slowest() {
        let layout = ModeLayout::new(vec![2, 3]).unwrap();
        assert_eq!(layout.index_of(&[0, 1]).unwrap(), 1);
        assert_eq!(layout.index_of(&[1, 0]).unwrap(), 3);
        assert_eq!(layout.strides(), vec![3, 1]);
        assert_eq!(layout.level(5, 0), 1);
        assert_eq!(layout.level(5, 1), 2);
    }

    #[test]
    fn index_beyond_cutoff_is_rejected() {
        let layout = ModeLayout::uniform(2, 1).unwrap();
        assert!(matches!(
            layout.index_of(&[2, 0]),
            Err(Error::CutoffTooSmall(_))
        ));
    }

    proptest! {
        #[test]
        fn flat_and_multi_index_round_trip(dims in prop::collection::vec(1usize..5, 1..5), seed in 0usize..10_000) {
            let layout = ModeLayout::new(dims).unwrap();
            let index = seed % layout.total_dim();
            let multi = layout.multi_index(index);
            prop_assert_eq!(layout.index_of(&multi).unwrap(), index);
        }
    }
}
