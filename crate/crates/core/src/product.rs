//! Binary products of simplicial sets.
//!
//! Non-degenerate simplices of `X × Y` are pairs of elements of equal degree
//! whose degeneracy words are disjoint (the shuffle description in normal
//! form); faces act componentwise followed by joint renormalization.

use crate::smap::SimplicialMap;
use crate::sset::{SimplexRef, SimplicialSet};
use crate::word;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct ProductSset {
    pub space: SimplicialSet,
    /// per nd simplex of the product: the component pair
    pub pairs: Vec<(SimplexRef, SimplexRef)>,
    index: HashMap<(SimplexRef, SimplexRef), usize>,
    pub proj_left: SimplicialMap,
    pub proj_right: SimplicialMap,
}

fn words_disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

/// Joint normal form of a componentwise pair: extract shared degeneracies.
fn normalize_pair(
    x: &SimplicialSet,
    y: &SimplicialSet,
    a: &SimplexRef,
    b: &SimplexRef,
    index: &HashMap<(SimplexRef, SimplexRef), usize>,
) -> SimplexRef {
    debug_assert_eq!(x.degree_of(a), y.degree_of(b));
    let mut a = a.clone();
    let mut b = b.clone();
    let mut extracted: Vec<usize> = Vec::new();
    loop {
        let common = a.word.iter().copied().find(|j| b.word.contains(j));
        match common {
            None => break,
            Some(j) => {
                a = x.face(&a, j);
                b = y.face(&b, j);
                extracted.push(j);
            }
        }
    }
    let nd = *index
        .get(&(a, b))
        .expect("pair normal form present in product");
    let mut w: word::Word = Vec::new();
    for &j in extracted.iter().rev() {
        word::push_degeneracy(&mut w, j);
    }
    SimplexRef { nd, word: w }
}

impl ProductSset {
    /// Normal form of a componentwise pair as an element of the product.
    pub fn ref_of_pair(
        &self,
        x: &SimplicialSet,
        y: &SimplicialSet,
        a: &SimplexRef,
        b: &SimplexRef,
    ) -> SimplexRef {
        normalize_pair(x, y, a, b, &self.index)
    }

    /// Component pair of an arbitrary element of the product.
    pub fn pair_of_ref(
        &self,
        x: &SimplicialSet,
        y: &SimplicialSet,
        r: &SimplexRef,
    ) -> (SimplexRef, SimplexRef) {
        let (a, b) = &self.pairs[r.nd];
        (x.apply_word(a, &r.word), y.apply_word(b, &r.word))
    }
}

pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> ProductSset {
    let mut space = SimplicialSet::empty();
    let mut pairs = Vec::new();
    let mut index: HashMap<(SimplexRef, SimplexRef), usize> = HashMap::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    if !(x.is_empty() || y.is_empty()) {
        let max = x.dim() + y.dim();
        for degree in 0..=max {
            let ex = x.elements(degree);
            let ey = y.elements(degree);
            for a in &ex {
                for b in &ey {
                    if !words_disjoint(&a.word, &b.word) {
                        continue;
                    }
                    let faces = if degree == 0 {
                        Vec::new()
                    } else {
                        (0..=degree)
                            .map(|i| {
                                normalize_pair(x, y, &x.face(a, i), &y.face(b, i), &index)
                            })
                            .collect()
                    };
                    let id = space.push_simplex(degree, faces).unwrap();
                    pairs.push((a.clone(), b.clone()));
                    index.insert((a.clone(), b.clone()), id);
                    left.push(a.clone());
                    right.push(b.clone());
                }
            }
        }
    }
    debug_assert!(space.validate().is_ok());
    ProductSset {
        space,
        pairs,
        index,
        proj_left: SimplicialMap::new(left),
        proj_right: SimplicialMap::new(right),
    }
}

/// The map `f × g` between two products.
pub fn product_map(
    p_src: &ProductSset,
    p_dst: &ProductSset,
    x_dst: &SimplicialSet,
    y_dst: &SimplicialSet,
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> SimplicialMap {
    let images = p_src
        .pairs
        .iter()
        .map(|(a, b)| {
            let fa = f.apply(x_dst, a);
            let gb = g.apply(y_dst, b);
            p_dst.ref_of_pair(x_dst, y_dst, &fa, &gb)
        })
        .collect();
    SimplicialMap::new(images)
}
