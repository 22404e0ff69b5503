use serde::Serialize;

use super::{CellChoice, GccGraph, TriangulationSpec};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CellType {
    /// Diagonal disjoint from the diagonal of the cell below.
    A,
    /// Diagonal shares a vertex with the one below.
    B,
    /// Innermost layer.
    Undefined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LayerType {
    A,
    B,
    Mixed,
}

fn diagonal_of(g: &GccGraph, t: &TriangulationSpec, i: usize, j: usize) -> Result<(usize, usize)> {
    match t.cell(g.spec, i, j) {
        CellChoice::None => Err(Error::UntriangulatedCell(i, j)),
        c => Ok(g.diagonal(i, j, c).expect("triangulated")),
    }
}

/// Type of cell `(i, j)`; row `i = 0` is the innermost layer.
pub fn cell_type(g: &GccGraph, t: &TriangulationSpec, cell: (usize, usize)) -> Result<CellType> {
    let (i, j) = cell;
    if t.cells.len() != g.spec.cell_count() {
        return Err(Error::CellIndexMismatch { got: t.cells.len(), expected: g.spec.cell_count() });
    }
    if i == 0 {
        return Ok(CellType::Undefined);
    }
    let (a, b) = diagonal_of(g, t, i, j)?;
    let (c, d) = diagonal_of(g, t, i - 1, j)?;
    Ok(if a == c || a == d || b == c || b == d { CellType::B } else { CellType::A })
}

/// Type of layer `L_layer`, numbered from 1 at the centre; defined for
/// `layer >= 2`.
pub fn layer_type(g: &GccGraph, t: &TriangulationSpec, layer: usize) -> Result<LayerType> {
    if layer < 2 || layer > g.spec.n {
        return Err(Error::UnsupportedCombination(format!(
            "layer types are defined for layers 2..={}, got {layer}",
            g.spec.n
        )));
    }
    let mut seen = None;
    let mut mixed = false;
    for j in 0..g.spec.m {
        let ty = cell_type(g, t, (layer - 1, j))?;
        match seen {
            None => seen = Some(ty),
            Some(s) if s != ty => mixed = true,
            _ => {}
        }
    }
    Ok(match (mixed, seen) {
        (true, _) => LayerType::Mixed,
        (false, Some(CellType::A)) => LayerType::A,
        _ => LayerType::B,
    })
}

/// Types of layers `2..=n`.
pub fn layer_types(g: &GccGraph, t: &TriangulationSpec) -> Result<Vec<LayerType>> {
    (2..=g.spec.n).map(|i| layer_type(g, t, i)).collect()
}
