//! Canonical labeling of connected decorated graphs with at least one leg.
//!
//! Half-edges are renumbered by a breadth-first walk that starts at the leg
//! with the smallest label. At each vertex the half-edges not yet placed are
//! sorted by an isomorphism-invariant key; only runs of equal keys are
//! ambiguous, and every ordering of those runs is tried. The canonical code is
//! the lexicographically smallest encoding over all walks. Because the set of
//! walks is carried along by any isomorphism, isomorphic graphs get equal
//! codes, and the code determines the graph.

use itertools::Itertools;

use super::halfedge::DecoratedGraph;
use super::GraphError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub code: Vec<u32>,
    /// `order[i]` is the original half-edge that becomes half-edge `i`.
    pub order: Vec<usize>,
    pub vertex_order: Vec<usize>,
}

impl Canonical {
    pub fn graph(&self, g: &DecoratedGraph) -> DecoratedGraph {
        g.permuted(&self.order, &self.vertex_order)
    }
}

pub fn canonical_code(g: &DecoratedGraph) -> Result<Vec<u32>, GraphError> {
    Ok(canonical_form(g)?.code)
}

pub fn canonical_form(g: &DecoratedGraph) -> Result<Canonical, GraphError> {
    let graph = &g.graph;
    let root = (0..graph.half_edge_count())
        .filter(|&h| graph.is_leg(h))
        .min_by_key(|&h| graph.leg_label(h))
        .ok_or(GraphError::NoLegs)?;
    let at = graph.incidence();
    let keys: Vec<Key> = (0..graph.half_edge_count())
        .map(|h| key(g, &at, h))
        .collect();
    let search = Search { g, at, keys };
    let mut discovered = vec![false; graph.vertex_count()];
    discovered[graph.vertex_of(root)] = true;
    let state = State {
        order: Vec::with_capacity(graph.half_edge_count()),
        vertex_order: Vec::with_capacity(graph.vertex_count()),
        queue: vec![(graph.vertex_of(root), root)],
        discovered,
    };
    let mut best: Option<Canonical> = None;
    search.run(state, &mut best);
    let best = best.expect("at least one walk");
    if best.vertex_order.len() != graph.vertex_count() {
        return Err(GraphError::Disconnected);
    }
    Ok(best)
}

/// Sort key of a half-edge among the other half-edges at its vertex.
type Key = (u32, u32, u32, u32, u32, u32, u32, [u32; 3]);

fn vertex_invariant(g: &DecoratedGraph, at: &[Vec<usize>], v: usize) -> [u32; 3] {
    [
        g.graph.genus(v) as u32,
        g.decoration.module[v] as u32,
        at[v].len() as u32,
    ]
}

fn key(g: &DecoratedGraph, at: &[Vec<usize>], h: usize) -> Key {
    let graph = &g.graph;
    let block = g.decoration.block[h] as u32;
    let mark = graph.mark(h).code();
    if let Some(label) = graph.leg_label(h) {
        return (0, label, block, mark, 0, 0, 0, [0; 3]);
    }
    let j = graph.partner(h);
    let self_loop = (graph.vertex_of(j) == graph.vertex_of(h)) as u32;
    (
        1,
        0,
        block,
        mark,
        self_loop,
        g.decoration.block[j] as u32,
        graph.mark(j).code(),
        vertex_invariant(g, at, graph.vertex_of(j)),
    )
}

struct Search<'a> {
    g: &'a DecoratedGraph,
    at: Vec<Vec<usize>>,
    keys: Vec<Key>,
}

#[derive(Clone)]
struct State {
    order: Vec<usize>,
    vertex_order: Vec<usize>,
    /// Vertices in discovery order with the half-edge they were entered by.
    queue: Vec<(usize, usize)>,
    discovered: Vec<bool>,
}

impl Search<'_> {
    fn run(&self, state: State, best: &mut Option<Canonical>) {
        let next = state.vertex_order.len();
        if next == state.queue.len() {
            let code = self.encode(&state);
            if best.as_ref().is_none_or(|b| code < b.code) {
                *best = Some(Canonical {
                    code,
                    order: state.order,
                    vertex_order: state.vertex_order,
                });
            }
            return;
        }
        let (v, entry) = state.queue[next];
        let mut rest: Vec<usize> = self.at[v].iter().copied().filter(|&h| h != entry).collect();
        rest.sort_by_key(|&h| self.keys[h]);
        let runs: Vec<Vec<usize>> = rest
            .iter()
            .copied()
            .chunk_by(|&h| self.keys[h])
            .into_iter()
            .map(|(_, run)| run.collect())
            .collect();
        let choices = runs
            .iter()
            .map(|run| {
                run.iter()
                    .copied()
                    .permutations(run.len())
                    .collect::<Vec<_>>()
            })
            .multi_cartesian_product();
        let mut any = false;
        for choice in choices {
            any = true;
            self.run(
                self.extend(&state, v, entry, choice.into_iter().flatten()),
                best,
            );
        }
        if !any {
            // only the entry half-edge at this vertex
            self.run(self.extend(&state, v, entry, std::iter::empty()), best);
        }
    }

    fn extend(
        &self,
        state: &State,
        v: usize,
        entry: usize,
        rest: impl Iterator<Item = usize>,
    ) -> State {
        let graph = &self.g.graph;
        let mut s = state.clone();
        s.vertex_order.push(v);
        let start = s.order.len();
        s.order.push(entry);
        s.order.extend(rest);
        for i in start..s.order.len() {
            let h = s.order[i];
            if graph.is_leg(h) {
                continue;
            }
            let j = graph.partner(h);
            let w = graph.vertex_of(j);
            if !s.discovered[w] {
                s.discovered[w] = true;
                s.queue.push((w, j));
            }
        }
        s
    }

    fn encode(&self, state: &State) -> Vec<u32> {
        let graph = &self.g.graph;
        let mut index = vec![u32::MAX; graph.half_edge_count()];
        for (i, &h) in state.order.iter().enumerate() {
            index[h] = i as u32;
        }
        let mut code = Vec::with_capacity(2 + 3 * state.vertex_order.len() + 4 * state.order.len());
        code.push(state.vertex_order.len() as u32);
        code.push(state.order.len() as u32);
        for &v in &state.vertex_order {
            code.extend_from_slice(&vertex_invariant(self.g, &self.at, v));
        }
        for &h in &state.order {
            code.push(self.g.decoration.block[h] as u32);
            code.push(graph.mark(h).code());
            code.push(graph.leg_label(h).map_or(0, |l| l + 1));
            code.push(index[graph.partner(h)]);
        }
        code
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::halfedge::{Decoration, HalfEdgeGraph};

    fn triangle_with_legs() -> DecoratedGraph {
        // vertices 0,1,2 in a cycle; vertex i has half-edges 3i, 3i+1 (cycle), 3i+2 (leg)
        let mut inv = vec![0; 9];
        for i in 0..3 {
            let j = (i + 1) % 3;
            inv[3 * i] = 3 * j + 1;
            inv[3 * j + 1] = 3 * i;
            inv[3 * i + 2] = 3 * i + 2;
        }
        let g = HalfEdgeGraph::new(
            (0..9).map(|h| h / 3).collect(),
            inv,
            vec![0; 3],
            (0..9)
                .map(|h| (h % 3 == 2).then_some(h as u32 / 3 + 1))
                .collect(),
        )
        .unwrap();
        DecoratedGraph::blank(g)
    }

    #[test]
    fn code_is_invariant_under_half_edge_renaming() {
        let g = triangle_with_legs();
        let base = canonical_code(&g).unwrap();
        let order = vec![8, 3, 1, 7, 0, 2, 6, 4, 5];
        let vorder = vec![2, 0, 1];
        let h = g.permuted(&order, &vorder);
        assert_eq!(canonical_code(&h).unwrap(), base);
        let canon = canonical_form(&g).unwrap();
        assert_eq!(canonical_code(&canon.graph(&g)).unwrap(), base);
    }

    #[test]
    fn leg_labels_matter() {
        let g = triangle_with_legs();
        // a transposition of two legs on a triangle is realised by a reflection
        let swapped = g.relabel_legs(|l| match l {
            1 => 2,
            2 => 1,
            x => x,
        });
        assert_eq!(
            canonical_code(&swapped).unwrap(),
            canonical_code(&g).unwrap()
        );
        // but not once the cycle carries an orientation
        let mut marked = g.clone();
        let marks = (0..9)
            .map(|h| match h % 3 {
                0 => crate::graph::Mark::Out,
                1 => crate::graph::Mark::In,
                _ => crate::graph::Mark::None,
            })
            .collect();
        let gr = &g.graph;
        marked.graph = HalfEdgeGraph::with_marks(
            (0..9).map(|h| gr.vertex_of(h)).collect(),
            (0..9).map(|h| gr.partner(h)).collect(),
            vec![0; 3],
            (0..9).map(|h| gr.leg_label(h)).collect(),
            marks,
        )
        .unwrap();
        let swapped = marked.relabel_legs(|l| match l {
            1 => 2,
            2 => 1,
            x => x,
        });
        assert_ne!(
            canonical_code(&swapped).unwrap(),
            canonical_code(&marked).unwrap()
        );
        // rotation of all three labels is a symmetry in both cases
        let rotated = marked.relabel_legs(|l| l % 3 + 1);
        assert_eq!(
            canonical_code(&rotated).unwrap(),
            canonical_code(&marked).unwrap()
        );
    }

    #[test]
    fn decorations_break_symmetry() {
        let g = triangle_with_legs();
        let mut block = vec![0u8; 9];
        block[0] = 1; // vertex 0: its outgoing cycle half-edge in block 1
        let d = DecoratedGraph::new(
            g.graph.clone(),
            Decoration {
                module: vec![0; 3],
                block,
            },
        )
        .unwrap();
        let swapped = d.relabel_legs(|l| match l {
            2 => 3,
            3 => 2,
            x => x,
        });
        assert_ne!(
            canonical_code(&swapped).unwrap(),
            canonical_code(&d).unwrap()
        );
    }

    #[test]
    fn errors() {
        let g = HalfEdgeGraph::new(vec![0, 0], vec![1, 0], vec![1], vec![None, None]).unwrap();
        assert_eq!(
            canonical_code(&DecoratedGraph::blank(g)).unwrap_err(),
            GraphError::NoLegs
        );
        let g =
            HalfEdgeGraph::new(vec![0, 1], vec![0, 1], vec![1, 1], vec![Some(1), Some(2)]).unwrap();
        assert_eq!(
            canonical_code(&DecoratedGraph::blank(g)).unwrap_err(),
            GraphError::Disconnected
        );
    }
}
