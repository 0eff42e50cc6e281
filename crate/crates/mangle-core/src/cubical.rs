//! Cubical subdivision of a simple polytope: one cube per pair of faces
//! `G` containing `H`, embedded in the unit cube `I^m` with one coordinate
//! per inequality.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::presentation::{analyze_presentation, enumerate_vertices, Presentation, Status};
use crate::{Error, Result};

/// A cube cell `C_{G >= H}`, recorded by the active sets of the two faces:
/// `outer_active` for `G` and `inner_active` for `H` (so
/// `outer_active` is a subset of `inner_active`).
///
/// Its image in `I^m` fixes the `outer_active` coordinates to 0, the
/// coordinates outside `inner_active` to 1, and lets the rest vary.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicalCell {
    pub outer_active: Vec<usize>,
    pub inner_active: Vec<usize>,
}

impl CubicalCell {
    pub fn dim(&self) -> usize {
        self.inner_active.len() - self.outer_active.len()
    }

    /// Coordinates in `I^m` fixed to one.
    pub fn fixed_one(&self, m: usize) -> Vec<usize> {
        (0..m)
            .filter(|i| !self.inner_active.contains(i))
            .collect()
    }
}

/// The full cubical subdivision of a generic bounded presentation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicalSubdivision {
    pub m: usize,
    pub n: usize,
    pub cells: Vec<CubicalCell>,
}

impl CubicalSubdivision {
    /// Top-dimensional cubes, one per vertex of the polytope.
    pub fn maximal_cells(&self) -> Vec<&CubicalCell> {
        self.cells
            .iter()
            .filter(|c| c.outer_active.is_empty() && c.dim() == self.n)
            .collect()
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<&CubicalCell> {
        self.cells.iter().filter(|c| c.dim() == d).collect()
    }

    /// Zero-cells whose carrying face has positive dimension; these are
    /// the barycenter images off the polytope boundary.
    pub fn interior_vertices(&self) -> Vec<&CubicalCell> {
        self.cells
            .iter()
            .filter(|c| c.dim() == 0 && c.inner_active.len() < self.n)
            .collect()
    }

    /// The image of a zero-cell in `I^m`: 0 on active coordinates, 1
    /// elsewhere.
    pub fn vertex_image(&self, cell: &CubicalCell) -> Vec<u8> {
        (0..self.m)
            .map(|i| u8::from(!cell.inner_active.contains(&i)))
            .collect()
    }
}

/// Builds the cubical subdivision. Requires a bounded, generic
/// presentation (so the polytope is simple and faces match index sets).
pub fn cubical_subdivision(p: &Presentation) -> Result<CubicalSubdivision> {
    let analysis = analyze_presentation(p);
    if analysis.status == Status::Empty {
        return Err(Error::EmptyPolyhedron);
    }
    if !analysis.bounded {
        return Err(Error::Unbounded);
    }
    if !analysis.generic {
        return Err(Error::NotGeneric);
    }
    let vd = enumerate_vertices(p);
    let mut nerve: BTreeSet<Vec<usize>> = BTreeSet::new();
    for v in &vd.vertices {
        let k = v.active.len();
        for mask in 0..(1u32 << k) {
            let subset: Vec<usize> = (0..k)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| v.active[i])
                .collect();
            nerve.insert(subset);
        }
    }
    let mut cells = Vec::new();
    for inner in &nerve {
        let k = inner.len();
        for mask in 0..(1u32 << k) {
            let outer: Vec<usize> = (0..k)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| inner[i])
                .collect();
            cells.push(CubicalCell {
                outer_active: outer,
                inner_active: inner.clone(),
            });
        }
    }
    cells.sort_by(|a, b| {
        (a.inner_active.clone(), a.outer_active.clone())
            .cmp(&(b.inner_active.clone(), b.outer_active.clone()))
    });
    Ok(CubicalSubdivision {
        m: p.m(),
        n: p.n(),
        cells,
    })
}
