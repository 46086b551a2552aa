//! Simplicial sets whose simplices are vertex chains.
//!
//! Nerves of posets and their relatives (standard simplices, barycentric
//! subdivisions, stratified subdivisions) all have the property that a
//! simplex is determined by its weakly increasing chain of vertices. This
//! module builds such complexes from a vertex set, an order predicate, and a
//! chain admissibility predicate, and converts between chains and
//! [`SimplexRef`]s.

use crate::sset::{SimplexRef, SimplicialSet};
use crate::word;
use std::collections::HashMap;

/// A simplicial set together with its chain presentation: nd simplex id
/// `<->` strictly increasing admissible vertex chain.
#[derive(Clone, Debug)]
pub struct ChainComplex<V> {
    pub complex: SimplicialSet,
    pub chains: Vec<Vec<V>>,
    lookup: HashMap<Vec<V>, usize>,
}

impl<V: Clone + Ord + std::hash::Hash> ChainComplex<V> {
    /// Build the complex of all strictly increasing chains (with respect to
    /// `leq`, entries pairwise distinct) over `vertices` that satisfy
    /// `admissible`. `admissible` must be closed under taking subchains of
    /// strictly increasing chains; it is consulted on every candidate.
    pub fn build(
        vertices: Vec<V>,
        leq: impl Fn(&V, &V) -> bool,
        admissible: impl Fn(&[V]) -> bool,
        dim_bound: Option<usize>,
    ) -> Self {
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        let mut chains: Vec<Vec<V>> = Vec::new();
        let mut frontier: Vec<Vec<V>> = vertices
            .iter()
            .filter(|v| admissible(std::slice::from_ref(*v)))
            .map(|v| vec![v.clone()])
            .collect();
        let max_len = dim_bound.map(|d| d + 1);
        while !frontier.is_empty() {
            chains.extend(frontier.iter().cloned());
            if let Some(m) = max_len {
                if frontier[0].len() >= m {
                    break;
                }
            }
            let mut next = Vec::new();
            for c in &frontier {
                let last = c.last().unwrap();
                for v in &vertices {
                    if v != last && leq(last, v) {
                        let mut c2 = c.clone();
                        c2.push(v.clone());
                        if admissible(&c2) {
                            next.push(c2);
                        }
                    }
                }
            }
            frontier = next;
        }
        chains.sort_by_key(|c| (c.len(), c.clone()));
        let lookup: HashMap<Vec<V>, usize> = chains
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let mut complex = SimplicialSet::empty();
        for c in &chains {
            let dim = c.len() - 1;
            let faces = if dim == 0 {
                Vec::new()
            } else {
                (0..=dim)
                    .map(|i| {
                        let mut f = c.clone();
                        f.remove(i);
                        SimplexRef::nd(lookup[&f])
                    })
                    .collect()
            };
            complex.push_simplex(dim, faces).unwrap();
        }
        ChainComplex {
            complex,
            chains,
            lookup,
        }
    }

    pub fn id_of(&self, chain: &[V]) -> Option<usize> {
        self.lookup.get(chain).copied()
    }

    /// Normal form of a weakly increasing vertex tuple as an element.
    pub fn ref_of_tuple(&self, tuple: &[V]) -> Option<SimplexRef> {
        let w = word::repeats_word(tuple);
        let mut dedup = tuple.to_vec();
        dedup.dedup();
        let nd = self.id_of(&dedup)?;
        Some(SimplexRef { nd, word: w })
    }

    /// The weakly increasing vertex tuple of an arbitrary element.
    pub fn tuple_of_ref(&self, r: &SimplexRef) -> Vec<V> {
        let chain = &self.chains[r.nd];
        let surj = word::as_surjection(&r.word, chain.len() - 1 + r.word.len());
        surj.iter().map(|&t| chain[t].clone()).collect()
    }
}

/// The standard n-simplex as a chain complex on vertices `0..=n`.
pub fn simplex_complex(n: usize) -> ChainComplex<usize> {
    ChainComplex::build((0..=n).collect(), |a, b| a <= b, |_| true, None)
}

/// Barycentric subdivision of the standard n-simplex: nerve of the poset of
/// non-empty subsets of `{0,...,n}`.
pub fn sd_simplex_complex(n: usize) -> ChainComplex<Vec<usize>> {
    let mut subsets = Vec::new();
    for mask in 1u32..(1 << (n + 1)) {
        let s: Vec<usize> = (0..=n).filter(|i| mask & (1 << i) != 0).collect();
        subsets.push(s);
    }
    ChainComplex::build(
        subsets,
        |a, b| a.iter().all(|x| b.contains(x)),
        |_| true,
        None,
    )
}
