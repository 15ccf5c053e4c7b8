//! Benchmark grids for comparing the tableaux and h-polynomial formulas.
//!
//! The two grids mirror the regimes where the formulas trade places: a
//! growing entry sum on a fixed small shape, and a growing shape at a fixed
//! small entry sum.

use widthone::DimVector;

/// `n = (2, 2)`, `s` in `{10, 100, 1000}`.
pub fn s_sweep() -> Vec<(DimVector, usize)> {
    [10, 100, 1000]
        .into_iter()
        .map(|s| (DimVector::new(vec![2, 2]).expect("valid shape"), s))
        .collect()
}

/// `s = 2`, `n = (k, k, k, k)` for `k` in `{2, 4, 8}`.
pub fn n_sweep() -> Vec<(DimVector, usize)> {
    [2, 4, 8]
        .into_iter()
        .map(|k| (DimVector::new(vec![k; 4]).expect("valid shape"), 2))
        .collect()
}

/// Compact label such as `2x2x2` for a shape.
pub fn shape_label(n: &DimVector) -> String {
    n.dims()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("x")
}
