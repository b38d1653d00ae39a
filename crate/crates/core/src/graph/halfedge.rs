use serde::{Deserialize, Serialize};

use super::GraphError;

/// Orientation marker on a half-edge; only oriented necklaces use `Out`/`In`.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Mark {
    #[default]
    None,
    Out,
    In,
}

impl Mark {
    pub(crate) fn code(self) -> u32 {
        match self {
            Mark::None => 0,
            Mark::Out => 1,
            Mark::In => 2,
        }
    }
}

/// A graph in the half-edge formalism: a finite set with a partition (the
/// vertices) and an involution whose fixed points are the legs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfEdgeGraph {
    vertex_of: Vec<usize>,
    inv: Vec<usize>,
    genus: Vec<u8>,
    leg_label: Vec<Option<u32>>,
    mark: Vec<Mark>,
}

impl HalfEdgeGraph {
    pub fn new(
        vertex_of: Vec<usize>,
        inv: Vec<usize>,
        genus: Vec<u8>,
        leg_label: Vec<Option<u32>>,
    ) -> Result<Self, GraphError> {
        let m = vertex_of.len();
        Self::with_marks(vertex_of, inv, genus, leg_label, vec![Mark::None; m])
    }

    pub fn with_marks(
        vertex_of: Vec<usize>,
        inv: Vec<usize>,
        genus: Vec<u8>,
        leg_label: Vec<Option<u32>>,
        mark: Vec<Mark>,
    ) -> Result<Self, GraphError> {
        let m = vertex_of.len();
        let bad = |why: &str| Err(GraphError::InvalidGraph(why.to_string()));
        if inv.len() != m || leg_label.len() != m || mark.len() != m {
            return bad("per-half-edge arrays differ in length");
        }
        if inv.iter().enumerate().any(|(h, &j)| j >= m || inv[j] != h) {
            return bad("inv is not an involution");
        }
        let v = genus.len();
        let mut valence = vec![0usize; v];
        for &x in &vertex_of {
            if x >= v {
                return bad("half-edge attached to a missing vertex");
            }
            valence[x] += 1;
        }
        if valence.contains(&0) {
            return bad("empty vertex");
        }
        if genus.iter().any(|&g| g > 1) {
            return bad("genus labels must be 0 or 1");
        }
        let mut labels = Vec::new();
        for h in 0..m {
            match (inv[h] == h, leg_label[h]) {
                (true, Some(l)) => labels.push(l),
                (true, None) => return bad("unlabelled leg"),
                (false, Some(_)) => return bad("label on a non-leg half-edge"),
                (false, None) => {}
            }
        }
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return bad("repeated leg label");
        }
        Ok(HalfEdgeGraph {
            vertex_of,
            inv,
            genus,
            leg_label,
            mark,
        })
    }

    pub fn half_edge_count(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.genus.len()
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    pub fn partner(&self, h: usize) -> usize {
        self.inv[h]
    }

    pub fn genus(&self, v: usize) -> u8 {
        self.genus[v]
    }

    pub fn leg_label(&self, h: usize) -> Option<u32> {
        self.leg_label[h]
    }

    pub fn mark(&self, h: usize) -> Mark {
        self.mark[h]
    }

    pub fn is_leg(&self, h: usize) -> bool {
        self.inv[h] == h
    }

    /// Half-edges at each vertex, in increasing order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut at = vec![Vec::new(); self.vertex_count()];
        for (h, &v) in self.vertex_of.iter().enumerate() {
            at[v].push(h);
        }
        at
    }

    pub fn valence(&self, v: usize) -> usize {
        self.vertex_of.iter().filter(|&&x| x == v).count()
    }

    /// Edges as `(h, inv h)` with `h < inv h`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.half_edge_count())
            .filter(|&h| self.inv[h] > h)
            .map(|h| (h, self.inv[h]))
            .collect()
    }

    /// Leg labels, sorted.
    pub fn legs(&self) -> Vec<u32> {
        let mut l: Vec<u32> = self.leg_label.iter().flatten().copied().collect();
        l.sort_unstable();
        l
    }

    fn components_without(&self, skip: Option<usize>) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut count = self.vertex_count();
        for (i, (a, b)) in self.edges().into_iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            let (ra, rb) = (
                find(&mut parent, self.vertex_of[a]),
                find(&mut parent, self.vertex_of[b]),
            );
            if ra != rb {
                parent[ra] = rb;
                count -= 1;
            }
        }
        count
    }

    pub fn component_count(&self) -> usize {
        self.components_without(None)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// First Betti number `|E| - |V| + #components`.
    pub fn betti1(&self) -> usize {
        self.edges().len() + self.component_count() - self.vertex_count()
    }

    /// `Σ g_v + b1`, for a connected graph.
    pub fn total_genus(&self) -> usize {
        self.genus.iter().map(|&g| g as usize).sum::<usize>() + self.betti1()
    }

    /// `b1 = 1` and no single edge disconnects the graph.
    pub fn is_necklace(&self) -> Result<bool, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        if self.betti1() != 1 {
            return Ok(false);
        }
        let edges = self.edges().len();
        Ok((0..edges).all(|i| self.components_without(Some(i)) == 1))
    }

    /// Genus-0 vertices have valence at least 3, genus-1 vertices at least 1.
    pub fn is_stable(&self) -> bool {
        (0..self.vertex_count()).all(|v| {
            let need = if self.genus[v] == 0 { 3 } else { 1 };
            self.valence(v) >= need
        })
    }

    /// Renames leg labels through `f`, which must be injective on the labels in use.
    pub fn relabel_legs(&self, f: impl Fn(u32) -> u32) -> Self {
        let mut out = self.clone();
        for l in out.leg_label.iter_mut().flatten() {
            *l = f(*l);
        }
        out
    }

    /// Rebuilds the graph with half-edge `order[i]` renamed `i` and vertex
    /// `vertex_order[j]` renamed `j`.
    pub(crate) fn permuted(&self, order: &[usize], vertex_order: &[usize]) -> Self {
        let mut new_h = vec![0; order.len()];
        for (i, &h) in order.iter().enumerate() {
            new_h[h] = i;
        }
        let mut new_v = vec![0; vertex_order.len()];
        for (j, &v) in vertex_order.iter().enumerate() {
            new_v[v] = j;
        }
        HalfEdgeGraph {
            vertex_of: order.iter().map(|&h| new_v[self.vertex_of[h]]).collect(),
            inv: order.iter().map(|&h| new_h[self.inv[h]]).collect(),
            genus: vertex_order.iter().map(|&v| self.genus[v]).collect(),
            leg_label: order.iter().map(|&h| self.leg_label[h]).collect(),
            mark: order.iter().map(|&h| self.mark[h]).collect(),
        }
    }
}

/// A basis element of `⊗_v V((g_v, n_v))` for a permutation-module spec: per
/// vertex, which listed Young module it uses, and per half-edge the block of
/// the ordered set partition it falls into.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decoration {
    pub module: Vec<usize>,
    pub block: Vec<u8>,
}

impl Decoration {
    pub fn blank(graph: &HalfEdgeGraph) -> Self {
        Decoration {
            module: vec![0; graph.vertex_count()],
            block: vec![0; graph.half_edge_count()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecoratedGraph {
    pub graph: HalfEdgeGraph,
    pub decoration: Decoration,
}

impl DecoratedGraph {
    pub fn new(graph: HalfEdgeGraph, decoration: Decoration) -> Result<Self, GraphError> {
        if decoration.module.len() != graph.vertex_count()
            || decoration.block.len() != graph.half_edge_count()
        {
            return Err(GraphError::InvalidGraph(
                "decoration does not fit the graph".into(),
            ));
        }
        Ok(DecoratedGraph { graph, decoration })
    }

    pub fn blank(graph: HalfEdgeGraph) -> Self {
        let decoration = Decoration::blank(&graph);
        DecoratedGraph { graph, decoration }
    }

    pub fn relabel_legs(&self, f: impl Fn(u32) -> u32) -> Self {
        DecoratedGraph {
            graph: self.graph.relabel_legs(f),
            decoration: self.decoration.clone(),
        }
    }

    pub(crate) fn permuted(&self, order: &[usize], vertex_order: &[usize]) -> Self {
        DecoratedGraph {
            graph: self.graph.permuted(order, vertex_order),
            decoration: Decoration {
                module: vertex_order
                    .iter()
                    .map(|&v| self.decoration.module[v])
                    .collect(),
                block: order.iter().map(|&h| self.decoration.block[h]).collect(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One genus-0 vertex with a self-loop and `legs` legs labelled 1..
    pub(crate) fn loop_vertex(legs: u32) -> HalfEdgeGraph {
        let m = 2 + legs as usize;
        let mut inv: Vec<usize> = (0..m).collect();
        inv[0] = 1;
        inv[1] = 0;
        let labels = (0..m)
            .map(|h| if h < 2 { None } else { Some(h as u32 - 1) })
            .collect();
        HalfEdgeGraph::new(vec![0; m], inv, vec![0], labels).unwrap()
    }

    /// A cycle of `k` genus-0 vertices, each with one leg.
    fn cycle(k: usize) -> HalfEdgeGraph {
        // vertex i owns half-edges 3i (out), 3i+1 (in), 3i+2 (leg)
        let m = 3 * k;
        let mut inv = vec![0; m];
        for i in 0..k {
            let j = (i + 1) % k;
            inv[3 * i] = 3 * j + 1;
            inv[3 * j + 1] = 3 * i;
            inv[3 * i + 2] = 3 * i + 2;
        }
        let vertex_of = (0..m).map(|h| h / 3).collect();
        let labels = (0..m)
            .map(|h| (h % 3 == 2).then_some(h as u32 / 3 + 1))
            .collect();
        HalfEdgeGraph::new(vertex_of, inv, vec![0; k], labels).unwrap()
    }

    #[test]
    fn betti_numbers() {
        let lone = HalfEdgeGraph::new(
            vec![0; 3],
            vec![0, 1, 2],
            vec![0],
            vec![Some(1), Some(2), Some(3)],
        )
        .unwrap();
        assert_eq!(lone.betti1(), 0);
        assert_eq!(loop_vertex(1).betti1(), 1);
        // two vertices joined by two parallel edges
        let g = HalfEdgeGraph::new(
            vec![0, 0, 0, 1, 1, 1],
            vec![3, 4, 2, 0, 1, 5],
            vec![0, 0],
            vec![None, None, Some(1), None, None, Some(2)],
        )
        .unwrap();
        assert_eq!(g.betti1(), 1);
        assert!(g.is_necklace().unwrap());
    }

    #[test]
    fn necklace_detection() {
        assert!(cycle(3).is_necklace().unwrap());
        assert!(loop_vertex(1).is_necklace().unwrap());
        // a 2-cycle (vertices 0, 1) plus vertex 2 hanging off vertex 0
        let g = HalfEdgeGraph::new(
            vec![0, 0, 0, 1, 1, 1, 2, 2, 2],
            vec![3, 4, 6, 0, 1, 5, 2, 7, 8],
            vec![0, 0, 0],
            vec![
                None,
                None,
                None,
                None,
                None,
                Some(1),
                None,
                Some(2),
                Some(3),
            ],
        )
        .unwrap();
        assert_eq!(g.betti1(), 1);
        assert!(!g.is_necklace().unwrap());
        let two = HalfEdgeGraph::new(
            vec![0, 0, 0, 1, 1, 1],
            vec![0, 1, 2, 3, 4, 5],
            vec![0, 0],
            (1..=6).map(Some).collect(),
        )
        .unwrap();
        assert_eq!(two.is_necklace().unwrap_err(), GraphError::Disconnected);
    }

    #[test]
    fn validation() {
        assert!(HalfEdgeGraph::new(vec![0, 0], vec![1, 1], vec![0], vec![None, None]).is_err());
        assert!(HalfEdgeGraph::new(vec![0], vec![0], vec![0], vec![None]).is_err());
        assert!(
            HalfEdgeGraph::new(vec![0, 0], vec![0, 1], vec![0], vec![Some(1), Some(1)]).is_err()
        );
        assert!(HalfEdgeGraph::new(vec![0], vec![0], vec![0, 0], vec![Some(1)]).is_err());
        assert!(HalfEdgeGraph::new(vec![0], vec![0], vec![2], vec![Some(1)]).is_err());
        assert!(loop_vertex(1).is_stable());
        assert!(!loop_vertex(0).is_stable());
    }
}
