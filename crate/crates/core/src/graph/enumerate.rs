//! Enumeration of decorated stable graphs up to isomorphism.
//!
//! Two passes: first all undecorated shapes of the family are generated and
//! reduced to one representative per isomorphism class; then every
//! representative is decorated in all possible ways and the decorated graphs
//! are reduced again. Decorating one representative per shape reaches every
//! decorated class, and classes from different shapes never coincide.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::canon::canonical_form;
use super::halfedge::{DecoratedGraph, Decoration, HalfEdgeGraph, Mark};
use super::GraphError;
use crate::exec::{self, Strategy};
use crate::series::ModuleSpec;
use crate::sym::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// All stable graphs of total genus one.
    Genus1Stable,
    /// Cycles of genus-0 vertices with legs attached directly to the cycle.
    Necklace,
    /// Necklaces whose isomorphisms preserve a cyclic orientation.
    OrientedNecklace,
    /// Genus-0 trees with legs `0..=n`, leg 0 being the root.
    RootedTree,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Genus1Stable,
        Family::Necklace,
        Family::OrientedNecklace,
        Family::RootedTree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Genus1Stable => "genus1-stable",
            Family::Necklace => "necklace",
            Family::OrientedNecklace => "oriented-necklace",
            Family::RootedTree => "rooted-tree",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }

    fn labels(self, n: usize) -> Vec<u32> {
        let first = if self == Family::RootedTree { 0 } else { 1 };
        (first..=n as u32).collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_half_edges: usize,
    pub max_legs: usize,
    pub max_classes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_half_edges: 14,
            max_legs: 5,
            max_classes: 1_000_000,
        }
    }
}

impl Budget {
    /// Enough room for `family` with `n` legs over `spec`.
    pub fn sufficient_for(spec: &ModuleSpec, family: Family, n: usize) -> Budget {
        let max_val = spec
            .valences(0)
            .into_iter()
            .chain(if family == Family::Genus1Stable {
                spec.valences(1)
            } else {
                vec![]
            })
            .max()
            .unwrap_or(3);
        // at most n vertices (n + 1 for trees), each of valence at most max_val
        let vertices = n + 1;
        Budget {
            max_half_edges: vertices * max_val.max(3) + n + 2,
            max_legs: n,
            ..Budget::default()
        }
    }
}

/// One isomorphism class: its canonical code and the canonically labelled graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusClass {
    pub code: Vec<u32>,
    pub graph: DecoratedGraph,
}

/// Canonical representatives of all decorated graphs of a family with `n` legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClassSet {
    pub family: Family,
    pub n: usize,
    /// Sorted by code.
    pub classes: Vec<CensusClass>,
}

impl IsoClassSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains_code(&self, code: &[u32]) -> bool {
        self.classes
            .binary_search_by(|c| c.code.as_slice().cmp(code))
            .is_ok()
    }
}

pub fn enumerate_decorated(
    spec: &ModuleSpec,
    family: Family,
    n: usize,
    budget: &Budget,
) -> Result<IsoClassSet, GraphError> {
    enumerate_decorated_with(spec, family, n, budget, Strategy::default())
}

pub fn enumerate_decorated_with(
    spec: &ModuleSpec,
    family: Family,
    n: usize,
    budget: &Budget,
    strategy: Strategy,
) -> Result<IsoClassSet, GraphError> {
    spec.validate()
        .map_err(|e| GraphError::Spec(e.to_string()))?;
    if n == 0 {
        return Err(GraphError::InvalidLegCount(n));
    }
    if n > budget.max_legs {
        return Err(GraphError::BudgetExceeded(format!(
            "{n} legs exceeds the limit of {}",
            budget.max_legs
        )));
    }
    let shapes = match family {
        Family::Necklace | Family::OrientedNecklace => necklace_shapes(spec, family, n, budget)?,
        Family::Genus1Stable => general_shapes(spec, family, n, budget)?,
        Family::RootedTree => tree_shapes(spec, n, budget)?,
    };
    let per_shape = exec::map_slice(&shapes, strategy, |shape| decorate_all(spec, shape, budget));
    let mut merged: BTreeMap<Vec<u32>, DecoratedGraph> = BTreeMap::new();
    for found in per_shape {
        for (code, graph) in found? {
            merged.insert(code, graph);
            if merged.len() > budget.max_classes {
                return Err(GraphError::BudgetExceeded(format!(
                    "census exceeds {} classes",
                    budget.max_classes
                )));
            }
        }
    }
    Ok(IsoClassSet {
        family,
        n,
        classes: merged
            .into_iter()
            .map(|(code, graph)| CensusClass { code, graph })
            .collect(),
    })
}

fn check_half_edges(m: usize, budget: &Budget) -> Result<(), GraphError> {
    if m > budget.max_half_edges {
        return Err(GraphError::BudgetExceeded(format!(
            "{m} half-edges exceeds the limit of {}",
            budget.max_half_edges
        )));
    }
    Ok(())
}

fn insert_shape(
    shapes: &mut BTreeMap<Vec<u32>, DecoratedGraph>,
    graph: HalfEdgeGraph,
) -> Result<(), GraphError> {
    let blank = DecoratedGraph::blank(graph);
    let canon = canonical_form(&blank)?;
    shapes
        .entry(canon.code.clone())
        .or_insert_with(|| canon.graph(&blank));
    Ok(())
}

/// Cycles of `k` genus-0 vertices, vertex `i`'s outgoing half-edge glued to
/// vertex `i+1`'s incoming one, with legs distributed over the vertices.
fn necklace_shapes(
    spec: &ModuleSpec,
    family: Family,
    n: usize,
    budget: &Budget,
) -> Result<Vec<DecoratedGraph>, GraphError> {
    let valences = spec.valences(0);
    let allowed_legs: Vec<usize> = valences
        .iter()
        .filter(|&&v| v >= 3)
        .map(|v| v - 2)
        .collect();
    let labels = family.labels(n);
    let oriented = family == Family::OrientedNecklace;
    let mut shapes = BTreeMap::new();
    for k in 1..=n {
        for counts in compositions(n, k, &allowed_legs) {
            check_half_edges(n + 2 * k, budget)?;
            for assignment in label_assignments(&labels, &counts) {
                // rotate so that the smallest label sits on vertex 0
                if !assignment[0].contains(&labels[0]) {
                    continue;
                }
                let mut vertex_of = Vec::new();
                let mut leg_label = Vec::new();
                let mut mark = Vec::new();
                let mut inv = Vec::new();
                let mut out_of = vec![0; k];
                let mut in_of = vec![0; k];
                for (v, legs) in assignment.iter().enumerate() {
                    out_of[v] = vertex_of.len();
                    in_of[v] = vertex_of.len() + 1;
                    for m in [Mark::Out, Mark::In] {
                        vertex_of.push(v);
                        leg_label.push(None);
                        mark.push(if oriented { m } else { Mark::None });
                        inv.push(usize::MAX);
                    }
                    for &l in legs {
                        inv.push(vertex_of.len());
                        vertex_of.push(v);
                        leg_label.push(Some(l));
                        mark.push(Mark::None);
                    }
                }
                for v in 0..k {
                    let w = (v + 1) % k;
                    inv[out_of[v]] = in_of[w];
                    inv[in_of[w]] = out_of[v];
                }
                let graph = HalfEdgeGraph::with_marks(vertex_of, inv, vec![0; k], leg_label, mark)?;
                insert_shape(&mut shapes, graph)?;
            }
        }
    }
    Ok(shapes.into_values().collect())
}

/// Ordered sequences of `k` values from `allowed` summing to `n`.
fn compositions(n: usize, k: usize, allowed: &[usize]) -> Vec<Vec<usize>> {
    fn go(
        rem: usize,
        left: usize,
        allowed: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for &a in allowed {
            if a <= rem {
                cur.push(a);
                go(rem - a, left - 1, allowed, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, allowed, &mut Vec::new(), &mut out);
    out
}

/// All ways to split `labels` into consecutive groups of the given sizes (as sets).
fn label_assignments(labels: &[u32], counts: &[usize]) -> Vec<Vec<Vec<u32>>> {
    fn go(
        remaining: &[u32],
        counts: &[usize],
        cur: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        let Some((&c, rest)) = counts.split_first() else {
            if remaining.is_empty() {
                out.push(cur.clone());
            }
            return;
        };
        use itertools::Itertools;
        for chosen in remaining.iter().copied().combinations(c) {
            let left: Vec<u32> = remaining
                .iter()
                .copied()
                .filter(|l| !chosen.contains(l))
                .collect();
            cur.push(chosen);
            go(&left, rest, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(labels, counts, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct VertexType {
    genus: u8,
    valence: usize,
}

impl VertexType {
    /// Contribution to `2g - 2 + n` of the whole graph.
    fn weight(self) -> usize {
        2 * self.genus as usize + self.valence - 2
    }
}

/// Stable genus-one graphs or rooted genus-zero trees, by brute force over
/// vertex multisets, leg placements and perfect matchings of the remaining
/// half-edges.
fn general_shapes(
    spec: &ModuleSpec,
    family: Family,
    n: usize,
    budget: &Budget,
) -> Result<Vec<DecoratedGraph>, GraphError> {
    let labels = family.labels(n);
    let mut types: Vec<VertexType> = spec
        .valences(0)
        .into_iter()
        .map(|valence| VertexType { genus: 0, valence })
        .collect();
    let (target, genus_total) = match family {
        Family::Genus1Stable => {
            types.extend(
                spec.valences(1)
                    .into_iter()
                    .map(|valence| VertexType { genus: 1, valence }),
            );
            (n, 1)
        }
        // 2g - 2 + (n + 1) with g = 0
        _ => (n - 1, 0),
    };
    let mut shapes = BTreeMap::new();
    for multiset in vertex_multisets(&types, target) {
        if multiset.iter().filter(|t| t.genus == 1).count() > genus_total {
            continue;
        }
        let m: usize = multiset.iter().map(|t| t.valence).sum();
        if m < labels.len() || (m - labels.len()) % 2 == 1 {
            continue;
        }
        check_half_edges(m, budget)?;
        let vertex_genus: Vec<u8> = multiset.iter().map(|t| t.genus).collect();
        let capacity: Vec<usize> = multiset.iter().map(|t| t.valence).collect();
        for placement in leg_placements(&labels, &capacity) {
            // vertex v: its legs (ascending labels), then free half-edges
            let mut vertex_of = Vec::with_capacity(m);
            let mut leg_label = Vec::with_capacity(m);
            let mut free = Vec::new();
            for (v, legs) in placement.iter().enumerate() {
                for &l in legs {
                    vertex_of.push(v);
                    leg_label.push(Some(l));
                }
                for _ in legs.len()..capacity[v] {
                    free.push(vertex_of.len());
                    vertex_of.push(v);
                    leg_label.push(None);
                }
            }
            let mut inv: Vec<usize> = (0..m).collect();
            let mut result = Ok(());
            for_each_matching(&free, &mut inv, &mut |inv| {
                if result.is_err() {
                    return;
                }
                let graph = match HalfEdgeGraph::new(
                    vertex_of.clone(),
                    inv.to_vec(),
                    vertex_genus.clone(),
                    leg_label.clone(),
                ) {
                    Ok(g) => g,
                    Err(e) => {
                        result = Err(e);
                        return;
                    }
                };
                if graph.is_connected() && graph.total_genus() == genus_total {
                    result = insert_shape(&mut shapes, graph);
                }
            });
            result?;
        }
    }
    Ok(shapes.into_values().collect())
}

enum Tree {
    Leaf(u32),
    Node(Vec<Tree>),
}

/// Rooted trees built top-down: a subtree over a set of legs is either a
/// single leg or a vertex whose children split the set into at least two
/// blocks. Each tree arises exactly once.
fn tree_shapes(
    spec: &ModuleSpec,
    n: usize,
    budget: &Budget,
) -> Result<Vec<DecoratedGraph>, GraphError> {
    let children: Vec<usize> = spec.valences(0).into_iter().map(|v| v - 1).collect();
    let labels: Vec<u32> = (1..=n as u32).collect();
    let mut shapes = BTreeMap::new();
    for tree in subtrees(&labels, &children) {
        let Tree::Node(top) = tree else { continue };
        let mut b = TreeBuilder {
            vertex_of: Vec::new(),
            inv: Vec::new(),
            leg_label: Vec::new(),
            vertices: 1,
        };
        b.push(0, Some(0));
        b.node(0, &top);
        check_half_edges(b.vertex_of.len(), budget)?;
        let graph = HalfEdgeGraph::new(b.vertex_of, b.inv, vec![0; b.vertices], b.leg_label)?;
        insert_shape(&mut shapes, graph)?;
    }
    Ok(shapes.into_values().collect())
}

fn subtrees(labels: &[u32], children: &[usize]) -> Vec<Tree> {
    if let [l] = labels {
        return vec![Tree::Leaf(*l)];
    }
    let mut out = Vec::new();
    for blocks in set_partitions(labels) {
        if blocks.len() < 2 || !children.contains(&blocks.len()) {
            continue;
        }
        let options: Vec<Vec<Tree>> = blocks.iter().map(|b| subtrees(b, children)).collect();
        let mut pick = vec![0; options.len()];
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        loop {
            out.push(Tree::Node(
                pick.iter()
                    .zip(&options)
                    .map(|(&i, o)| clone_tree(&o[i]))
                    .collect(),
            ));
            let mut v = 0;
            while v < pick.len() {
                pick[v] += 1;
                if pick[v] < options[v].len() {
                    break;
                }
                pick[v] = 0;
                v += 1;
            }
            if v == pick.len() {
                break;
            }
        }
    }
    out
}

fn clone_tree(t: &Tree) -> Tree {
    match t {
        Tree::Leaf(l) => Tree::Leaf(*l),
        Tree::Node(c) => Tree::Node(c.iter().map(clone_tree).collect()),
    }
}

/// Set partitions of `items`, blocks in order of their smallest element.
fn set_partitions(items: &[u32]) -> Vec<Vec<Vec<u32>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for mut p in set_partitions(rest) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
        p.insert(0, vec![first]);
        out.push(p);
    }
    out
}

/// Half-edge arrays of a tree under construction; vertex 0 carries the root leg.
struct TreeBuilder {
    vertex_of: Vec<usize>,
    inv: Vec<usize>,
    leg_label: Vec<Option<u32>>,
    vertices: usize,
}

impl TreeBuilder {
    fn push(&mut self, v: usize, label: Option<u32>) -> usize {
        let h = self.vertex_of.len();
        self.vertex_of.push(v);
        self.inv.push(h);
        self.leg_label.push(label);
        h
    }

    fn node(&mut self, v: usize, children: &[Tree]) {
        for child in children {
            match child {
                Tree::Leaf(l) => {
                    self.push(v, Some(*l));
                }
                Tree::Node(grandchildren) => {
                    let w = self.vertices;
                    self.vertices += 1;
                    let down = self.push(v, None);
                    let up = self.push(w, None);
                    self.inv[down] = up;
                    self.inv[up] = down;
                    self.node(w, grandchildren);
                }
            }
        }
    }
}

/// Nondecreasing sequences of vertex types whose weights sum to `target`.
fn vertex_multisets(types: &[VertexType], target: usize) -> Vec<Vec<VertexType>> {
    fn go(
        types: &[VertexType],
        from: usize,
        rem: usize,
        cur: &mut Vec<VertexType>,
        out: &mut Vec<Vec<VertexType>>,
    ) {
        if rem == 0 {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        for i in from..types.len() {
            let w = types[i].weight();
            if w >= 1 && w <= rem {
                cur.push(types[i]);
                go(types, i, rem - w, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if target > 0 {
        go(types, 0, target, &mut Vec::new(), &mut out);
    }
    out
}

/// Every map from labels to vertices respecting the capacities.
fn leg_placements(labels: &[u32], capacity: &[usize]) -> Vec<Vec<Vec<u32>>> {
    fn go(
        labels: &[u32],
        capacity: &[usize],
        cur: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        let Some((&l, rest)) = labels.split_first() else {
            out.push(cur.clone());
            return;
        };
        for v in 0..capacity.len() {
            if cur[v].len() < capacity[v] {
                cur[v].push(l);
                go(rest, capacity, cur, out);
                cur[v].pop();
            }
        }
    }
    let mut out = Vec::new();
    go(
        labels,
        capacity,
        &mut vec![Vec::new(); capacity.len()],
        &mut out,
    );
    out
}

/// Calls `f` with `inv` set to every perfect matching of `free`.
fn for_each_matching(free: &[usize], inv: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    fn go(rest: &mut Vec<usize>, inv: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if rest.is_empty() {
            f(inv);
            return;
        }
        let a = rest.remove(0);
        for i in 0..rest.len() {
            let b = rest.remove(i);
            inv[a] = b;
            inv[b] = a;
            go(rest, inv, f);
            inv[a] = a;
            inv[b] = b;
            rest.insert(i, b);
        }
        rest.insert(0, a);
    }
    if free.len() % 2 == 1 {
        return;
    }
    go(&mut free.to_vec(), inv, f);
}

/// Every block assignment of `size` half-edges realising the ordered set
/// partitions with block sizes `lambda`.
pub(crate) fn block_assignments(lambda: &Partition) -> Vec<Vec<u8>> {
    fn go(remaining: &mut [usize], left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for b in 0..remaining.len() {
            if remaining[b] > 0 {
                remaining[b] -= 1;
                cur.push(b as u8);
                go(remaining, left - 1, cur, out);
                cur.pop();
                remaining[b] += 1;
            }
        }
    }
    let mut sizes: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    let mut out = Vec::new();
    go(&mut sizes, lambda.weight(), &mut Vec::new(), &mut out);
    out
}

fn decorate_all(
    spec: &ModuleSpec,
    shape: &DecoratedGraph,
    budget: &Budget,
) -> Result<Vec<(Vec<u32>, DecoratedGraph)>, GraphError> {
    let graph = &shape.graph;
    let at = graph.incidence();
    // per vertex: (module index, block of each incident half-edge)
    let options: Vec<Vec<(usize, Vec<u8>)>> = (0..graph.vertex_count())
        .map(|v| {
            spec.modules(graph.genus(v), at[v].len())
                .iter()
                .enumerate()
                .flat_map(|(i, lambda)| block_assignments(lambda).into_iter().map(move |b| (i, b)))
                .collect()
        })
        .collect();
    let mut found: BTreeMap<Vec<u32>, DecoratedGraph> = BTreeMap::new();
    if options.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    let mut pick = vec![0usize; options.len()];
    loop {
        let mut decoration = Decoration::blank(graph);
        for (v, &i) in pick.iter().enumerate() {
            let (module, blocks) = &options[v][i];
            decoration.module[v] = *module;
            for (&h, &b) in at[v].iter().zip(blocks) {
                decoration.block[h] = b;
            }
        }
        let decorated = DecoratedGraph::new(graph.clone(), decoration)?;
        let canon = canonical_form(&decorated)?;
        found
            .entry(canon.code.clone())
            .or_insert_with(|| canon.graph(&decorated));
        if found.len() > budget.max_classes {
            return Err(GraphError::BudgetExceeded(format!(
                "census exceeds {} classes",
                budget.max_classes
            )));
        }
        // odometer
        let mut v = 0;
        loop {
            if v == pick.len() {
                return Ok(found.into_iter().collect());
            }
            pick[v] += 1;
            if pick[v] < options[v].len() {
                break;
            }
            pick[v] = 0;
            v += 1;
        }
    }
}
