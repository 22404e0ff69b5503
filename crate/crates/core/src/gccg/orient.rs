use super::{layer_type, CellChoice, GccGraph, LayerType, TriangulationSpec};
use crate::error::{Error, Result};
use crate::graph::bits::bit;
use crate::graph::Digraph;

/// Line at the tail of the horizontal arcs between lines `j` and `j + 1`.
fn horizontal_tail(m: usize, j: usize) -> usize {
    if j + 2 < m {
        j
    } else {
        (j + 1) % m
    }
}

/// Orientation O of a full triangulation whose layers `2..=n` each have a
/// single cell type.
///
/// Circles: `0 -> m-1 -> m-2` and `y -> y+1` for `y <= m-3`. Diagonals leave
/// the endpoint on the tail line of their cell's horizontal arcs. Verticals
/// of layer 1 point outward; each later layer keeps the direction of the one
/// below when of type A and flips it when of type B.
pub fn orientation_o(g: &GccGraph, t: &TriangulationSpec) -> Result<Digraph> {
    let (m, n) = (g.spec.m, g.spec.n);
    if m < 4 {
        return Err(Error::SectorCountTooSmall(m));
    }
    let graph = g.apply_triangulation(t)?;
    if let Some(k) = t.cells.iter().position(|c| *c == CellChoice::None) {
        return Err(Error::UntriangulatedCell(k / m, k % m));
    }
    let mut outward = vec![true; n + 1];
    for layer in 2..=n {
        outward[layer] = match layer_type(g, t, layer)? {
            LayerType::A => outward[layer - 1],
            LayerType::B => !outward[layer - 1],
            LayerType::Mixed => return Err(Error::MixedLayerType(layer)),
        };
    }
    let mut out = vec![0u64; graph.n()];
    let mut arc = |a: usize, b: usize| out[a] |= bit(b);
    for x in 0..=n {
        for j in 0..m {
            let tail = horizontal_tail(m, j);
            let head = if tail == j { (j + 1) % m } else { j };
            arc(g.vertex(x, tail), g.vertex(x, head));
        }
    }
    for x in 0..n {
        for y in 0..m {
            let (lo, hi) = (g.vertex(x, y), g.vertex(x + 1, y));
            if outward[x + 1] {
                arc(lo, hi);
            } else {
                arc(hi, lo);
            }
        }
        for j in 0..m {
            let (a, b) = g.diagonal(x, j, t.cell(g.spec, x, j)).expect("full triangulation");
            let tail = horizontal_tail(m, j);
            if g.level_line(a).1 == tail {
                arc(a, b);
            } else {
                arc(b, a);
            }
        }
    }
    Ok(Digraph::from_rows_unchecked(graph, out))
}

#[cfg(test)]
mod tests {
    use super::super::{build_gccg, GccSpec};
    use super::*;
    use crate::graph::is_semi_transitive;

    #[test]
    fn horizontal_pattern_for_four_sectors() {
        let g = build_gccg(GccSpec { m: 4, n: 2 }).unwrap();
        let t = TriangulationSpec::uniform(g.spec, CellChoice::Main);
        let d = orientation_o(&g, &t).unwrap();
        for x in 0..=2 {
            let v = |y| g.vertex(x, y);
            assert!(d.has_arc(v(0), v(3)) && d.has_arc(v(3), v(2)) && d.has_arc(v(0), v(1)) && d.has_arc(v(1), v(2)));
        }
        for y in 0..4 {
            assert!(d.has_arc(g.vertex(0, y), g.vertex(1, y)) && d.has_arc(g.vertex(1, y), g.vertex(2, y)));
        }
        assert!(is_semi_transitive(&d).holds());
    }

    #[test]
    fn errors() {
        let g3 = build_gccg(GccSpec { m: 3, n: 2 }).unwrap();
        let t3 = TriangulationSpec::uniform(g3.spec, CellChoice::Main);
        assert_eq!(orientation_o(&g3, &t3).unwrap_err(), Error::SectorCountTooSmall(3));
        let g = build_gccg(GccSpec { m: 4, n: 3 }).unwrap();
        let mixed: TriangulationSpec = "MMMMMAAAMMMM".parse().unwrap();
        assert_eq!(orientation_o(&g, &mixed).unwrap_err(), Error::MixedLayerType(2));
    }
}
