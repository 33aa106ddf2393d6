//! Primitive minimal classes.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::config::VectorConfiguration;
use crate::forms::perfection::subsets;
use crate::linalg::{rat_int, QMat};

/// A class is primitive when it is not obtained from a class of dimension
/// `n − 1` by adding an orthogonal minimal vector. For every basis `B ⊂ V`
/// the support of the code of `Zⁿ / span(B)` together with the supports of
/// the other minimal vectors on `B` must cover all coordinates.
pub fn is_primitive_class(v: &VectorConfiguration) -> Result<bool> {
    if !v.is_well_rounded() {
        return Err(Error::NotWellRounded);
    }
    let n = v.dim();
    if n == 1 {
        return Ok(true);
    }
    for idx in subsets(v.len(), n) {
        // columns are the basis vectors
        let b = QMat::from_i64_rows(&(0..n).map(|r| idx.iter().map(|&i| v.vectors()[i][r]).collect()).collect::<Vec<_>>());
        let Some(inv) = b.inverse() else {
            continue;
        };
        let mut covered = vec![false; n];
        for (i, c) in covered.iter_mut().enumerate() {
            // row i of B⁻¹ is the i-th coordinate functional
            if (0..n).any(|j| !inv.at(i, j).is_integer()) {
                *c = true;
            }
        }
        for (k, x) in v.vectors().iter().enumerate() {
            if idx.contains(&k) {
                continue;
            }
            let coords = inv.mul_vec(&x.iter().map(|&a| rat_int(a)).collect::<Vec<_>>());
            for (c, y) in covered.iter_mut().zip(coords) {
                if !y.is_zero() {
                    *c = true;
                }
            }
        }
        if covered.iter().any(|c| !c) {
            return Ok(false);
        }
    }
    Ok(true)
}
