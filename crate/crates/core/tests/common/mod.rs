//! Strategies and property checks shared by the property tests and the acceptance run.

#![allow(dead_code)]

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};

use plethys::graph::{
    canonical_form, enumerate_decorated, Budget, DecoratedGraph, Decoration, Family, HalfEdgeGraph,
    IsoClassSet,
};
use plethys::group::{
    closure, ind_trivial_char, ind_trivial_char_wreath, wreath_cycle_map, GroupElement, Perm,
    SignedPerm,
};
use plethys::series::ModuleSpec;
use plethys::sym::{adams, int, partitions_of, plethysm, Partition, Rat, SymFunc};

pub const CASES: u32 = 100;

pub fn sym_func(truncation: usize, constant: bool) -> impl Strategy<Value = SymFunc> {
    let term = (1..=truncation, any::<usize>(), -3i64..=3);
    (prop::collection::vec(term, 0..4), -2i64..=2).prop_map(move |(terms, c0)| {
        let mut f = SymFunc::zero(truncation);
        for (d, idx, c) in terms {
            let parts = partitions_of(d);
            f.add_term(parts[idx % parts.len()].clone(), int(c));
        }
        if constant {
            f.add_term(Partition::empty(), int(c0));
        }
        f
    })
}

pub fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

pub fn signed_perm(n: usize) -> impl Strategy<Value = SignedPerm> {
    (prop::collection::vec(prop::bool::ANY, n), perm(n)).prop_map(|(flips, p)| {
        let signs: Vec<i8> = flips.iter().map(|&f| if f { -1 } else { 1 }).collect();
        SignedPerm::new(&signs, p).unwrap()
    })
}

pub fn triples() -> impl Strategy<Value = (SymFunc, SymFunc, SymFunc)> {
    (1..=6usize).prop_flat_map(|n| (sym_func(n, true), sym_func(n, false), sym_func(n, false)))
}

pub fn plethysm_is_associative(
    (f, g, h): (SymFunc, SymFunc, SymFunc),
) -> Result<(), TestCaseError> {
    let left = plethysm(&plethysm(&f, &g).unwrap(), &h).unwrap();
    let right = plethysm(&f, &plethysm(&g, &h).unwrap()).unwrap();
    prop_assert_eq!(left, right);
    Ok(())
}

pub fn adams_inputs() -> impl Strategy<Value = (SymFunc, u32, u32)> {
    (1..=6usize).prop_flat_map(|n| (sym_func(n, true), 1u32..=4, 1u32..=4))
}

pub fn adams_operations_compose((f, m, k): (SymFunc, u32, u32)) -> Result<(), TestCaseError> {
    prop_assert_eq!(adams(m, &adams(k, &f)), adams(m * k, &f));
    let g = adams(k, &f);
    prop_assert_eq!(adams(k, &(&f * &f)), &g * &g);
    Ok(())
}

pub fn signed_pairs() -> impl Strategy<Value = (SignedPerm, SignedPerm)> {
    (1..=6usize).prop_flat_map(|n| (signed_perm(n), signed_perm(n)))
}

pub fn cycle_map_is_class_function((x, y): (SignedPerm, SignedPerm)) -> Result<(), TestCaseError> {
    let n = x.degree();
    let conj = y.compose(&x).compose(&y.inverse());
    prop_assert_eq!(
        wreath_cycle_map(&conj, n).unwrap(),
        wreath_cycle_map(&x, n).unwrap()
    );
    Ok(())
}

pub fn generator_sets() -> impl Strategy<Value = (Vec<Perm>, Vec<SignedPerm>)> {
    (
        (1..=6usize).prop_flat_map(|n| prop::collection::vec(perm(n), 1..3)),
        (1..=4usize).prop_flat_map(|n| prop::collection::vec(signed_perm(n), 1..3)),
    )
}

pub fn burnside_counts_are_integers(
    (gens, signed): (Vec<Perm>, Vec<SignedPerm>),
) -> Result<(), TestCaseError> {
    let n = gens[0].degree();
    let group = closure(n, &gens, 1000).unwrap();
    let order = Rat::from_integer(group.order().into());
    let ch = ind_trivial_char(&group, n).unwrap();
    let mut total = Rat::zero();
    let mut orbits = Rat::zero();
    for (lambda, c) in ch.iter() {
        let count = c * &order;
        prop_assert!(count.is_integer() && count.is_positive());
        total += count;
        orbits += c * Rat::from_integer(lambda.multiplicity(1).into());
    }
    prop_assert_eq!(total, order);
    prop_assert!(orbits.is_integer());

    let n = signed[0].degree();
    let group = closure(n, &signed, 1000).unwrap();
    let order = Rat::from_integer(group.order().into());
    for (_, c) in ind_trivial_char_wreath(&group, n).unwrap().iter() {
        prop_assert!((c * &order).is_integer());
    }
    Ok(())
}

pub fn censuses() -> Vec<IsoClassSet> {
    let spec = ModuleSpec::standard();
    let budget = Budget::default();
    let mut out = Vec::new();
    for family in Family::ALL {
        for n in 1..=3 {
            out.push(enumerate_decorated(&spec, family, n, &budget).unwrap());
        }
    }
    out.retain(|c| !c.is_empty());
    out
}

/// The same graph with half-edges listed in `order` and vertices renamed by `rename`.
pub fn relabeled(g: &DecoratedGraph, order: &[usize], rename: &[usize]) -> DecoratedGraph {
    let gr = &g.graph;
    let mut position = vec![0; order.len()];
    for (i, &h) in order.iter().enumerate() {
        position[h] = i;
    }
    let mut genus = vec![0; gr.vertex_count()];
    let mut module = vec![0; gr.vertex_count()];
    for v in 0..gr.vertex_count() {
        genus[rename[v]] = gr.genus(v);
        module[rename[v]] = g.decoration.module[v];
    }
    let graph = HalfEdgeGraph::with_marks(
        order.iter().map(|&h| rename[gr.vertex_of(h)]).collect(),
        order.iter().map(|&h| position[gr.partner(h)]).collect(),
        genus,
        order.iter().map(|&h| gr.leg_label(h)).collect(),
        order.iter().map(|&h| gr.mark(h)).collect(),
    )
    .unwrap();
    let block = order.iter().map(|&h| g.decoration.block[h]).collect();
    DecoratedGraph::new(graph, Decoration { module, block }).unwrap()
}

/// A random census member together with a random renaming of its half-edges and vertices.
pub fn relabelings(
    classes: &[DecoratedGraph],
) -> impl Strategy<Value = (DecoratedGraph, DecoratedGraph)> {
    let classes = classes.to_vec();
    (0..classes.len()).prop_flat_map(move |i| {
        let g = classes[i].clone();
        let m = g.graph.half_edge_count();
        let v = g.graph.vertex_count();
        (
            Just(g),
            Just((0..m).collect::<Vec<usize>>()).prop_shuffle(),
            Just((0..v).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(|(g, order, rename)| {
                let h = relabeled(&g, &order, &rename);
                (g, h)
            })
    })
}

pub fn canonical_form_ignores_relabeling(
    (g, h): (DecoratedGraph, DecoratedGraph),
) -> Result<(), TestCaseError> {
    let a = canonical_form(&g).unwrap();
    let b = canonical_form(&h).unwrap();
    prop_assert_eq!(&a.code, &b.code);
    prop_assert_eq!(a.graph(&g), b.graph(&h));
    Ok(())
}

pub fn census_graphs() -> Vec<DecoratedGraph> {
    censuses()
        .into_iter()
        .flat_map(|c| c.classes.into_iter().map(|c| c.graph))
        .collect()
}

/// Runs every property for `CASES` cases; returns the names of failing ones.
pub fn run_all_properties() -> Vec<(&'static str, String)> {
    let mut failures = Vec::new();
    let mut record = |name: &'static str, result: Result<(), String>| {
        if let Err(e) = result {
            failures.push((name, e));
        }
    };
    let runner = || {
        TestRunner::new(ProptestConfig {
            failure_persistence: None,
            ..ProptestConfig::with_cases(CASES)
        })
    };
    record(
        "plethysm associativity",
        runner()
            .run(&triples(), plethysm_is_associative)
            .map_err(|e| e.to_string()),
    );
    record(
        "Adams multiplicativity",
        runner()
            .run(&adams_inputs(), adams_operations_compose)
            .map_err(|e| e.to_string()),
    );
    record(
        "cycle map conjugation invariance",
        runner()
            .run(&signed_pairs(), cycle_map_is_class_function)
            .map_err(|e| e.to_string()),
    );
    let graphs = census_graphs();
    record(
        "canonical relabeling invariance",
        runner()
            .run(&relabelings(&graphs), canonical_form_ignores_relabeling)
            .map_err(|e| e.to_string()),
    );
    record(
        "integer Burnside counts",
        runner()
            .run(&generator_sets(), burnside_counts_are_integers)
            .map_err(|e| e.to_string()),
    );
    failures
}
