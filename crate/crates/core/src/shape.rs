use crate::error::{CoreError, CoreResult};

/// Extents of a d-way tensor, `d >= 1`, every extent at least one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    extents: Vec<usize>,
}

impl Shape {
    pub fn new(extents: Vec<usize>) -> CoreResult<Self> {
        if extents.is_empty() {
            return Err(CoreError::InvalidShape("no extents given".into()));
        }
        if extents.iter().any(|&n| n == 0) {
            return Err(CoreError::InvalidShape(format!(
                "zero extent in {extents:?}"
            )));
        }
        let mut numel: usize = 1;
        for &n in &extents {
            numel = numel
                .checked_mul(n)
                .ok_or_else(|| CoreError::InvalidShape("element count overflow".into()))?;
        }
        Ok(Self { extents })
    }

    /// Number of modes (tensor order).
    pub fn order(&self) -> usize {
        self.extents.len()
    }

    pub fn extent(&self, mode: usize) -> usize {
        self.extents[mode]
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn numel(&self) -> usize {
        self.extents.iter().product()
    }

    /// Stride of `mode` under first-index-fastest linearization.
    pub fn stride(&self, mode: usize) -> usize {
        self.extents[..mode].iter().product()
    }

    /// Same shape with the extent of `mode` replaced.
    pub fn with_extent(&self, mode: usize, extent: usize) -> CoreResult<Self> {
        let mut extents = self.extents.clone();
        extents[mode] = extent;
        Self::new(extents)
    }

    pub fn check_mode(&self, mode: usize) -> CoreResult<()> {
        if mode >= self.order() {
            return Err(CoreError::ModeOutOfRange {
                mode,
                order: self.order(),
            });
        }
        Ok(())
    }

    /// Linear index of a multi-index, first index fastest.
    pub fn linear_index(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.order());
        let mut lin = 0;
        let mut stride = 1;
        for (i, &n) in index.iter().zip(&self.extents) {
            debug_assert!(*i < n);
            lin += i * stride;
            stride *= n;
        }
        lin
    }
}
