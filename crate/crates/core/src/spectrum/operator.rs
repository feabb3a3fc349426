//! Dirichlet restrictions of the physical and combinatorial Laplacians.

use std::collections::HashMap;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::VertexId;
use crate::truncation::Truncation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LaplacianKind {
    /// `f(v) - (1/|v|) sum f(u)`, self-adjoint in the degree-weighted product.
    Combinatorial,
    /// `|v| f(v) - sum f(u)`, self-adjoint in the plain product.
    Physical,
}

impl std::str::FromStr for LaplacianKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "comb" | "combinatorial" => Ok(LaplacianKind::Combinatorial),
            "phys" | "physical" => Ok(LaplacianKind::Physical),
            other => Err(format!("unknown Laplacian kind {other:?}")),
        }
    }
}

const PARALLEL_ROWS: usize = 8192;

/// Laplacian compressed to an index set, with zero values outside it.
///
/// Neighbours outside the index set still count towards the degree; they only
/// lose their off-diagonal entry.
#[derive(Clone, Debug)]
pub struct LaplacianOperator {
    kind: LaplacianKind,
    index: Vec<VertexId>,
    degrees: Vec<u32>,
    /// Row `i` holds the positions of its neighbours inside the index set.
    offsets: Vec<usize>,
    columns: Vec<usize>,
}

impl LaplacianOperator {
    pub fn assemble(
        trunc: &Truncation,
        kind: LaplacianKind,
        index_set: &[VertexId],
    ) -> Result<Self> {
        let mut index = index_set.to_vec();
        index.sort_unstable();
        index.dedup();
        if let Some(&v) = index.iter().find(|&&v| !trunc.is_interior(v)) {
            return Err(Error::IndexSetTouchesBoundary(v));
        }
        let position: HashMap<VertexId, usize> =
            index.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let map = trunc.map();
        let mut offsets = Vec::with_capacity(index.len() + 1);
        let mut columns = Vec::new();
        let mut degrees = Vec::with_capacity(index.len());
        offsets.push(0);
        for &v in &index {
            degrees.push(map.degree(v) as u32);
            columns.extend(map.neighbors(v).iter().filter_map(|u| position.get(u)));
            offsets.push(columns.len());
        }
        Ok(LaplacianOperator {
            kind,
            index,
            degrees,
            offsets,
            columns,
        })
    }

    pub fn kind(&self) -> LaplacianKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Vertices of the index set in row order.
    pub fn index(&self) -> &[VertexId] {
        &self.index
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    fn row(&self, i: usize) -> &[usize] {
        &self.columns[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Weight of the inner product in which the operator is self-adjoint.
    pub fn weight(&self, i: usize) -> f64 {
        match self.kind {
            LaplacianKind::Combinatorial => self.degrees[i] as f64,
            LaplacianKind::Physical => 1.0,
        }
    }

    /// Matrix entry of the operator as defined (not symmetrized).
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let d = self.degrees[i] as f64;
        let (diag, off) = match self.kind {
            LaplacianKind::Combinatorial => (1.0, -1.0 / d),
            LaplacianKind::Physical => (d, -1.0),
        };
        if i == j {
            diag
        } else if self.row(i).contains(&j) {
            off
        } else {
            0.0
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.len(), self.len(), |i, j| self.entry(i, j))
    }

    fn apply_row(&self, i: usize, x: &[f64], symmetric: bool) -> f64 {
        let d = self.degrees[i] as f64;
        let sum: f64 = match (self.kind, symmetric) {
            (LaplacianKind::Combinatorial, true) => {
                self.row(i)
                    .iter()
                    .map(|&j| x[j] / (self.degrees[j] as f64).sqrt())
                    .sum::<f64>()
                    / d.sqrt()
            }
            (LaplacianKind::Combinatorial, false) => {
                self.row(i).iter().map(|&j| x[j]).sum::<f64>() / d
            }
            (LaplacianKind::Physical, _) => self.row(i).iter().map(|&j| x[j]).sum(),
        };
        let diag = match self.kind {
            LaplacianKind::Combinatorial => 1.0,
            LaplacianKind::Physical => d,
        };
        diag * x[i] - sum
    }

    fn apply_with(&self, x: &[f64], y: &mut [f64], symmetric: bool) {
        if self.len() >= PARALLEL_ROWS {
            y.par_iter_mut()
                .enumerate()
                .for_each(|(i, yi)| *yi = self.apply_row(i, x, symmetric));
        } else {
            for (i, yi) in y.iter_mut().enumerate() {
                *yi = self.apply_row(i, x, symmetric);
            }
        }
    }

    /// `y = L x` for the operator as defined.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.apply_with(x, y, false);
    }

    /// `y = S x` for the symmetric form `S = W^{1/2} L W^{-1/2}`, which has the
    /// same eigenvalues.
    pub fn apply_symmetric(&self, x: &[f64], y: &mut [f64]) {
        self.apply_with(x, y, true);
    }
}
