//! A fixed corpus of small stratified complexes used by the property tests
//! and the acceptance suite: stratified simplices, boundaries, horns, a
//! stratified figure eight, and a stratified cylinder.

use crate::poset::{Flag, Poset};
use crate::sset::{SimplexRef, SimplicialSet};
use crate::stratified::{
    boundary, horn, standard_simplex, stratified_product, StratifiedSimplicialSet,
};
use std::sync::Arc;

pub struct CorpusEntry {
    pub name: &'static str,
    pub k: StratifiedSimplicialSet,
}

/// Two circles joined at a point: the wedge point in the closed stratum,
/// both loops exiting into the open stratum.
pub fn figure_eight(p: &Arc<Poset>) -> StratifiedSimplicialSet {
    let mut space = SimplicialSet::empty();
    let v = space.push_simplex(0, Vec::new()).unwrap();
    let a = space.push_simplex(0, Vec::new()).unwrap();
    let b = space.push_simplex(0, Vec::new()).unwrap();
    for &end in &[a, a, b, b] {
        space
            .push_simplex(1, vec![SimplexRef::nd(end), SimplexRef::nd(v)])
            .unwrap();
    }
    let flags = vec![
        Flag { entries: vec![0] },
        Flag { entries: vec![1] },
        Flag { entries: vec![1] },
        Flag { entries: vec![0, 1] },
        Flag { entries: vec![0, 1] },
        Flag { entries: vec![0, 1] },
        Flag { entries: vec![0, 1] },
    ];
    StratifiedSimplicialSet::new(space, p.clone(), flags).unwrap()
}

pub fn stratified_cylinder(p: &Arc<Poset>) -> StratifiedSimplicialSet {
    let d01 = standard_simplex(p, &Flag::new(p, vec![0, 1]).unwrap());
    stratified_product(&d01, &SimplicialSet::simplex(1)).strat
}

/// The corpus. Entries over the chain with two elements come first, then
/// the ones over the chain with three.
pub fn corpus() -> Vec<CorpusEntry> {
    let p2 = Arc::new(Poset::chain(2));
    let p3 = Arc::new(Poset::chain(3));
    let f = |p: &Arc<Poset>, e: Vec<usize>| Flag::new(p, e).unwrap();
    vec![
        CorpusEntry {
            name: "point-0",
            k: standard_simplex(&p2, &f(&p2, vec![0])),
        },
        CorpusEntry {
            name: "interval-01",
            k: standard_simplex(&p2, &f(&p2, vec![0, 1])),
        },
        CorpusEntry {
            name: "triangle-001",
            k: standard_simplex(&p2, &f(&p2, vec![0, 0, 1])),
        },
        CorpusEntry {
            name: "triangle-012",
            k: standard_simplex(&p3, &f(&p3, vec![0, 1, 2])),
        },
        CorpusEntry {
            name: "boundary-01",
            k: boundary(&p2, &f(&p2, vec![0, 1])).0,
        },
        CorpusEntry {
            name: "boundary-012",
            k: boundary(&p3, &f(&p3, vec![0, 1, 2])).0,
        },
        CorpusEntry {
            name: "horn-1-001",
            k: horn(&p2, &f(&p2, vec![0, 0, 1]), 1).unwrap().0,
        },
        CorpusEntry {
            name: "figure-eight",
            k: figure_eight(&p2),
        },
        CorpusEntry {
            name: "cylinder-01",
            k: stratified_cylinder(&p2),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid_and_big_enough() {
        let c = corpus();
        assert!(c.len() >= 8);
        for entry in &c {
            entry.k.validate().unwrap();
        }
    }

    #[test]
    fn figure_eight_homology() {
        let p = Arc::new(Poset::chain(2));
        let k = figure_eight(&p);
        let h = crate::homology::homology(&k.space, 1).unwrap();
        assert_eq!(h.betti, vec![1, 2]);
    }
}
