//! Nested depth-first search for accepting lassos in implicitly given
//! graphs with letters on edges. Both searches use explicit stacks.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

/// A reachable accepting cycle as letters: `stem · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoPath<L> {
    pub stem: Vec<L>,
    pub cycle: Vec<L>,
}

/// Edges out of a product node `(a, b)`; product searches cannot fail.
pub(crate) type PairEdges<L> = Result<Vec<(L, (usize, usize))>, core::convert::Infallible>;

struct Frame<N, L> {
    node: N,
    edges: Vec<(L, N)>,
    next: usize,
    via: Option<L>,
}

/// Searches for an accepting node that is reachable from `initial` and lies
/// on a cycle.
pub fn find_accepting_cycle<N, L, E>(
    initial: impl IntoIterator<Item = N>,
    mut successors: impl FnMut(&N) -> Result<Vec<(L, N)>, E>,
    accepting: impl Fn(&N) -> bool,
) -> Result<Option<LassoPath<L>>, E>
where
    N: Ord + Clone,
    L: Clone,
{
    let mut cache: BTreeMap<N, Vec<(L, N)>> = BTreeMap::new();
    let mut edges_of = |n: &N| -> Result<Vec<(L, N)>, E> {
        if let Some(e) = cache.get(n) {
            return Ok(e.clone());
        }
        let e = successors(n)?;
        cache.insert(n.clone(), e.clone());
        Ok(e)
    };
    let mut blue: BTreeSet<N> = BTreeSet::new();
    let mut red: BTreeSet<N> = BTreeSet::new();
    for root in initial {
        if !blue.insert(root.clone()) {
            continue;
        }
        let mut stack = alloc::vec![Frame { edges: edges_of(&root)?, node: root, next: 0, via: None }];
        while let Some(top) = stack.last_mut() {
            if top.next < top.edges.len() {
                let (l, m) = top.edges[top.next].clone();
                top.next += 1;
                if blue.insert(m.clone()) {
                    let edges = edges_of(&m)?;
                    stack.push(Frame { node: m, edges, next: 0, via: Some(l) });
                }
                continue;
            }
            if accepting(&top.node) {
                let seed = top.node.clone();
                if let Some(cycle) = inner(&seed, &mut red, &mut edges_of)? {
                    let stem = stack.iter().filter_map(|f| f.via.clone()).collect();
                    return Ok(Some(LassoPath { stem, cycle }));
                }
            }
            stack.pop();
        }
    }
    Ok(None)
}

/// Searches for a path from `seed` back to itself through nodes not yet
/// explored by an earlier inner search.
fn inner<N, L, E>(
    seed: &N,
    red: &mut BTreeSet<N>,
    edges_of: &mut impl FnMut(&N) -> Result<Vec<(L, N)>, E>,
) -> Result<Option<Vec<L>>, E>
where
    N: Ord + Clone,
    L: Clone,
{
    let mut stack = alloc::vec![Frame { node: seed.clone(), edges: edges_of(seed)?, next: 0, via: None }];
    while let Some(top) = stack.last_mut() {
        if top.next == top.edges.len() {
            stack.pop();
            continue;
        }
        let (l, m) = top.edges[top.next].clone();
        top.next += 1;
        if m == *seed {
            let mut cycle: Vec<L> = stack.iter().filter_map(|f| f.via.clone()).collect();
            cycle.push(l);
            return Ok(Some(cycle));
        }
        if red.insert(m.clone()) {
            let edges = edges_of(&m)?;
            stack.push(Frame { node: m, edges, next: 0, via: Some(l) });
        }
    }
    Ok(None)
}
