//! Grid-covered cylinder graphs: `n + 1` concentric circles of `m` vertices
//! joined along `m` radial lines, their (partial) triangulations, cell and
//! layer types, orientation O, and colouring-based orientations.

mod coloring;
mod orient;
mod types;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

pub use coloring::{chromatic_number, k_colorable, orient_by_coloring, COLORING_MAX_VERTICES};
pub use orient::orientation_o;
pub use types::{cell_type, layer_type, layer_types, CellType, LayerType};

/// Largest `m * n` for enumerating full triangulations.
pub const FULL_ENUMERATION_LIMIT: usize = 16;
/// Largest `m * n` for enumerating partial triangulations.
pub const PARTIAL_ENUMERATION_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GccSpec {
    /// Sectors (radial lines).
    pub m: usize,
    /// Layers; there are `n + 1` levels.
    pub n: usize,
}

impl GccSpec {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 3 || n < 1 {
            return Err(Error::DegenerateSpec { m, n });
        }
        if m * (n + 1) > crate::graph::MAX_VERTICES {
            return Err(Error::TooManyVertices { got: m * (n + 1), max: crate::graph::MAX_VERTICES });
        }
        Ok(GccSpec { m, n })
    }

    pub fn vertex_count(&self) -> usize {
        self.m * (self.n + 1)
    }

    pub fn cell_count(&self) -> usize {
        self.m * self.n
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeKind {
    /// On circle `level`.
    Horizontal { level: usize },
    /// On radial line `line`.
    Vertical { line: usize },
    Diagonal { cell: (usize, usize) },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CellChoice {
    /// `v(i, j) - v(i+1, j+1)`.
    Main,
    /// `v(i+1, j) - v(i, j+1)`.
    Anti,
    None,
}

impl CellChoice {
    fn symbol(self) -> char {
        match self {
            CellChoice::Main => 'M',
            CellChoice::Anti => 'A',
            CellChoice::None => 'N',
        }
    }

    fn digit(self) -> usize {
        self as usize
    }

    fn from_digit(d: usize) -> Self {
        [CellChoice::Main, CellChoice::Anti, CellChoice::None][d]
    }
}

/// One choice per cell, row-major: cell `(i, j)` at `i * m + j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TriangulationSpec {
    pub cells: Vec<CellChoice>,
}

impl TriangulationSpec {
    pub fn uniform(spec: GccSpec, choice: CellChoice) -> Self {
        TriangulationSpec { cells: vec![choice; spec.cell_count()] }
    }

    pub fn is_full(&self) -> bool {
        !self.cells.contains(&CellChoice::None)
    }

    pub fn cell(&self, spec: GccSpec, i: usize, j: usize) -> CellChoice {
        self.cells[i * spec.m + j]
    }

    /// Position in enumeration order.
    pub fn index(&self, partial: bool) -> u64 {
        let radix = if partial { 3 } else { 2 };
        self.cells.iter().fold(0u64, |acc, c| acc * radix + c.digit() as u64)
    }

    pub fn from_index(spec: GccSpec, partial: bool, mut index: u64) -> Self {
        let radix = if partial { 3 } else { 2 };
        let mut cells = vec![CellChoice::Main; spec.cell_count()];
        for c in cells.iter_mut().rev() {
            *c = CellChoice::from_digit((index % radix) as usize);
            index /= radix;
        }
        TriangulationSpec { cells }
    }

    /// Parses a spec string and checks its length against `spec`.
    pub fn parse_for(spec: GccSpec, s: &str) -> Result<Self> {
        let t: TriangulationSpec = s.parse()?;
        if t.cells.len() != spec.cell_count() {
            return Err(Error::CellIndexMismatch { got: t.cells.len(), expected: spec.cell_count() });
        }
        Ok(t)
    }
}

impl fmt::Display for TriangulationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            write!(f, "{}", c.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for TriangulationSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cells = s
            .trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'M' => Ok(CellChoice::Main),
                'A' => Ok(CellChoice::Anti),
                'N' => Ok(CellChoice::None),
                other => Err(Error::Parse(format!("cell choice must be M, A or N, got `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TriangulationSpec { cells })
    }
}

/// The untriangulated cylinder grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GccGraph {
    pub spec: GccSpec,
    graph: Graph,
}

fn vertex_name(x: usize, y: usize) -> String {
    if x < 10 && y < 10 {
        format!("v{x}{y}")
    } else {
        format!("v{x},{y}")
    }
}

pub fn build_gccg(spec: GccSpec) -> Result<GccGraph> {
    let spec = GccSpec::new(spec.m, spec.n)?;
    let (m, n) = (spec.m, spec.n);
    let ids: Vec<VertexId> = (0..spec.vertex_count() as VertexId).collect();
    let mut graph = Graph::with_ids(ids)?;
    for x in 0..=n {
        for y in 0..m {
            let v = x * m + y;
            graph.set_name(v, vertex_name(x, y));
            graph.add_edge(v, x * m + (y + 1) % m)?;
            if x < n {
                graph.add_edge(v, v + m)?;
            }
        }
    }
    Ok(GccGraph { spec, graph })
}

impl GccGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex(&self, level: usize, line: usize) -> usize {
        level * self.spec.m + line % self.spec.m
    }

    pub fn level_line(&self, v: usize) -> (usize, usize) {
        (v / self.spec.m, v % self.spec.m)
    }

    /// `v(i,j), v(i+1,j), v(i+1,j+1), v(i,j+1)`.
    pub fn cell_corners(&self, i: usize, j: usize) -> [usize; 4] {
        [self.vertex(i, j), self.vertex(i + 1, j), self.vertex(i + 1, j + 1), self.vertex(i, j + 1)]
    }

    pub fn diagonal(&self, i: usize, j: usize, choice: CellChoice) -> Option<(usize, usize)> {
        match choice {
            CellChoice::Main => Some((self.vertex(i, j), self.vertex(i + 1, j + 1))),
            CellChoice::Anti => Some((self.vertex(i + 1, j), self.vertex(i, j + 1))),
            CellChoice::None => None,
        }
    }

    /// Kind of the edge `u-v` in the triangulation `t`, if it is an edge.
    pub fn classify(&self, t: &TriangulationSpec, u: usize, v: usize) -> Option<EdgeKind> {
        let m = self.spec.m;
        let ((xu, yu), (xv, yv)) = (self.level_line(u), self.level_line(v));
        if xu == xv && ((yu + 1) % m == yv || (yv + 1) % m == yu) {
            return Some(EdgeKind::Horizontal { level: xu });
        }
        if yu == yv && xu.abs_diff(xv) == 1 {
            return Some(EdgeKind::Vertical { line: yu });
        }
        let i = xu.min(xv);
        if xu.abs_diff(xv) != 1 || i >= self.spec.n {
            return None;
        }
        for j in [yu, yv] {
            if let Some((a, b)) = self.diagonal(i, j, t.cell(self.spec, i, j)) {
                if (a, b) == (u, v) || (b, a) == (u, v) {
                    return Some(EdgeKind::Diagonal { cell: (i, j) });
                }
            }
        }
        None
    }

    pub fn apply_triangulation(&self, t: &TriangulationSpec) -> Result<Graph> {
        if t.cells.len() != self.spec.cell_count() {
            return Err(Error::CellIndexMismatch { got: t.cells.len(), expected: self.spec.cell_count() });
        }
        let mut g = self.graph.clone();
        for i in 0..self.spec.n {
            for j in 0..self.spec.m {
                if let Some((a, b)) = self.diagonal(i, j, t.cell(self.spec, i, j)) {
                    g.add_edge(a, b)?;
                }
            }
        }
        Ok(g)
    }
}

/// Restartable stream of triangulation specs in counter order (last cell
/// varies fastest; digits `M < A < N`).
#[derive(Clone, Debug)]
pub struct Triangulations {
    spec: GccSpec,
    partial: bool,
    next: u64,
    end: u64,
}

impl Triangulations {
    pub fn total(&self) -> u64 {
        total_specs(self.spec, self.partial)
    }

    /// Restricts to indices in `range` (clamped to the total).
    pub fn range(mut self, range: std::ops::Range<u64>) -> Self {
        let total = self.total();
        self.next = range.start.min(total);
        self.end = range.end.min(total).max(self.next);
        self
    }
}

impl Iterator for Triangulations {
    type Item = (u64, TriangulationSpec);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let i = self.next;
        self.next += 1;
        Some((i, TriangulationSpec::from_index(self.spec, self.partial, i)))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

fn total_specs(spec: GccSpec, partial: bool) -> u64 {
    let radix: u64 = if partial { 3 } else { 2 };
    radix.pow(spec.cell_count() as u32)
}

pub fn enumerate_triangulations(spec: GccSpec, partial: bool) -> Result<Triangulations> {
    let spec = GccSpec::new(spec.m, spec.n)?;
    let limit = if partial { PARTIAL_ENUMERATION_LIMIT } else { FULL_ENUMERATION_LIMIT };
    if spec.cell_count() > limit {
        return Err(Error::SearchSpaceTooLarge(format!(
            "{} cells exceeds the {} enumeration limit of {limit}",
            spec.cell_count(),
            if partial { "partial" } else { "full" }
        )));
    }
    let end = total_specs(spec, partial);
    Ok(Triangulations { spec, partial, next: 0, end })
}
