use alloc::vec::Vec;

use super::GenMatrix;
use crate::algebra::GeneralTensor;
use crate::gf::{Fq, Mat};
use crate::space::{solve_membership, SpreadSet};
use crate::{Error, Result};

/// A tensor written as a sum of R pure tensors; summand j holds one factor
/// vector per slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureDecomposition {
    f: Fq,
    dims: Vec<usize>,
    summands: Vec<Vec<Vec<u8>>>,
}

impl PureDecomposition {
    pub fn new(f: Fq, dims: &[usize], summands: Vec<Vec<Vec<u8>>>) -> Result<PureDecomposition> {
        for s in &summands {
            let lens: Vec<usize> = s.iter().map(Vec::len).collect();
            if lens != dims {
                return Err(Error::DimensionMismatch { expected: dims.len(), got: s.len() });
            }
        }
        Ok(PureDecomposition { f, dims: dims.to_vec(), summands })
    }

    pub fn field(&self) -> Fq {
        self.f
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    /// Number of summands R.
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summands(&self) -> &[Vec<Vec<u8>>] {
        &self.summands
    }

    /// The tensor the decomposition sums to.
    pub fn to_tensor(&self) -> GeneralTensor {
        self.summands
            .iter()
            .fold(GeneralTensor::zero(self.f, &self.dims), |acc, s| acc.add(&GeneralTensor::pure(self.f, s)))
    }

    /// The generator matrices G_1..G_t: column j of G_i is the slot-i factor
    /// of summand j.
    pub fn codes(&self) -> Vec<GenMatrix> {
        (0..self.order())
            .map(|slot| {
                let rows: Vec<Vec<u8>> =
                    (0..self.dims[slot]).map(|r| self.summands.iter().map(|s| s[slot][r]).collect()).collect();
                GenMatrix::new(self.f, rows).expect("rectangular")
            })
            .collect()
    }
}

/// The decomposition of the multiplication tensor of `c` (standard basis
/// B_1..B_n) given by independent rank-one matrices A_j = u_j w_j^T whose
/// span contains `c`: summand j is (f_j, u_j, w_j) with f_j(e_i) the A_j
/// coordinate of B_i.
pub fn decomposition_from_rank_ones(c: &SpreadSet, a: &[Mat]) -> Result<PureDecomposition> {
    let f = c.field();
    let n = c.n();
    let mut factors = Vec::with_capacity(a.len());
    for m in a {
        factors.push(m.rank_one_factor()?);
    }
    let span = crate::space::MatSpace::from_mats(f, n, a);
    if span.dim() != a.len() {
        return Err(Error::DependentGenerators);
    }
    let basis = c.standard_basis();
    let mut coords = Vec::with_capacity(n);
    for b in &basis {
        coords.push(solve_membership(a, b).ok_or(Error::NotContained)?);
    }
    let summands = factors
        .iter()
        .enumerate()
        .map(|(j, (u, w))| {
            let fj: Vec<u8> = coords.iter().map(|c| c[j]).collect();
            alloc::vec![fj, u.entries(), w.entries()]
        })
        .collect();
    PureDecomposition::new(f, &[n, n, n], summands)
}
