//! Colimits of finite diagrams of simplicial sets.
//!
//! The quotient is computed degreewise on Eilenberg-Zilber normal forms:
//! elements of each degree are merged by union-find along the diagram maps,
//! a class is non-degenerate exactly when none of its members carries a
//! degeneracy word, and normal forms of degenerate classes are peeled off
//! one degeneracy at a time.

use crate::smap::SimplicialMap;
use crate::sset::{SimplexRef, SimplicialSet, UnionFind};
use crate::{Error, Result};
use std::collections::HashMap;

/// A finite diagram: nodes and arrows between them.
#[derive(Clone, Debug, Default)]
pub struct Diagram {
    pub nodes: Vec<SimplicialSet>,
    pub arrows: Vec<(usize, usize, SimplicialMap)>,
}

impl Diagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, x: SimplicialSet) -> usize {
        self.nodes.push(x);
        self.nodes.len() - 1
    }

    pub fn add_arrow(&mut self, from: usize, to: usize, f: SimplicialMap) {
        debug_assert!(f.validate(&self.nodes[from], &self.nodes[to]).is_ok());
        self.arrows.push((from, to, f));
    }
}

/// Result of a colimit computation.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub space: SimplicialSet,
    /// Structure map from each node into the colimit.
    pub structure: Vec<SimplicialMap>,
}

pub fn colimit(diagram: &Diagram) -> Colimit {
    let nodes = &diagram.nodes;
    let max_dim = nodes
        .iter()
        .filter(|n| !n.is_empty())
        .map(|n| n.dim())
        .max()
        .unwrap_or(0);
    let mut space = SimplicialSet::empty();
    // normal form of every (node, element) pair seen so far
    let mut nf: HashMap<(usize, SimplexRef), SimplexRef> = HashMap::new();
    let mut structure: Vec<Vec<SimplexRef>> = nodes
        .iter()
        .map(|n| vec![SimplexRef::nd(usize::MAX); n.simplex_count()])
        .collect();

    for degree in 0..=max_dim {
        // collect all elements of this degree across nodes
        let mut pairs: Vec<(usize, SimplexRef)> = Vec::new();
        for (v, n) in nodes.iter().enumerate() {
            for r in n.elements(degree) {
                pairs.push((v, r));
            }
        }
        pairs.sort();
        let index: HashMap<(usize, SimplexRef), usize> = pairs
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut uf = UnionFind::new(pairs.len());
        for (from, to, f) in &diagram.arrows {
            for (i, p) in pairs.iter().enumerate() {
                if p.0 == *from {
                    let img = (*to, f.apply(&nodes[*to], &p.1));
                    uf.union(i, index[&img]);
                }
            }
        }
        // group pairs by class
        let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..pairs.len() {
            classes.entry(uf.find(i)).or_default().push(i);
        }
        let mut class_list: Vec<Vec<usize>> = classes.into_values().collect();
        class_list.sort_by_key(|members| members.iter().min().copied());
        for members in class_list {
            let degenerate_member = members
                .iter()
                .map(|&i| &pairs[i])
                .find(|(_, r)| !r.word.is_empty());
            let class_nf = match degenerate_member {
                None => {
                    // a fresh nd simplex of the colimit
                    let (v0, r0) = &pairs[members[0]];
                    let faces = if degree == 0 {
                        Vec::new()
                    } else {
                        (0..=degree)
                            .map(|i| {
                                let f = nodes[*v0].face(r0, i);
                                nf[&(*v0, f)].clone()
                            })
                            .collect()
                    };
                    let id = space.push_simplex(degree, faces).unwrap();
                    SimplexRef::nd(id)
                }
                Some((v, r)) => {
                    let j = r.word[0];
                    let inner = SimplexRef {
                        nd: r.nd,
                        word: r.word[1..].to_vec(),
                    };
                    let base = nf[&(*v, inner)].clone();
                    space.degenerate(&base, j)
                }
            };
            for &i in &members {
                let (v, r) = &pairs[i];
                if r.word.is_empty() {
                    structure[*v][r.nd] = class_nf.clone();
                }
                nf.insert((*v, r.clone()), class_nf.clone());
            }
        }
    }

    debug_assert!(space.validate().is_ok());
    let structure = structure.into_iter().map(SimplicialMap::new).collect();
    Colimit { space, structure }
}

/// The map out of a colimit induced by a cocone. Fails if the cocone does
/// not commute with the diagram arrows.
pub fn induced_map(
    diagram: &Diagram,
    colim: &Colimit,
    cocone: &[SimplicialMap],
    target: &SimplicialSet,
) -> Result<SimplicialMap> {
    for (from, to, f) in &diagram.arrows {
        let via = cocone[*to].compose(target, f);
        if via != cocone[*from] {
            return Err(Error::Malformed(format!(
                "cocone does not commute with arrow {from} -> {to}"
            )));
        }
    }
    let mut images = vec![SimplexRef::nd(usize::MAX); colim.space.simplex_count()];
    for (v, s) in colim.structure.iter().enumerate() {
        for (nd, img) in s.images.iter().enumerate() {
            if img.is_nd() {
                images[img.nd] = cocone[v].images[nd].clone();
            }
        }
    }
    let out = SimplicialMap::new(images);
    out.validate(&colim.space, target)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coproduct_of_points() {
        let mut d = Diagram::new();
        d.add_node(SimplicialSet::point());
        d.add_node(SimplicialSet::point());
        let c = colimit(&d);
        assert_eq!(c.space.in_dim(0).len(), 2);
    }

    #[test]
    fn circle_as_pushout() {
        // glue both endpoints of an interval to a single point:
        // pushout of pt <- (pt ⊔ pt) -> Δ¹
        let d1 = SimplicialSet::simplex(1);
        let pt = SimplicialSet::point();
        let (two, _) = pt.disjoint_union(&pt);
        let mut d = Diagram::new();
        let n_two = d.add_node(two);
        let n_pt = d.add_node(pt);
        let n_d1 = d.add_node(d1);
        d.add_arrow(
            n_two,
            n_pt,
            SimplicialMap::new(vec![SimplexRef::nd(0), SimplexRef::nd(0)]),
        );
        d.add_arrow(
            n_two,
            n_d1,
            SimplicialMap::new(vec![SimplexRef::nd(0), SimplexRef::nd(1)]),
        );
        let c = colimit(&d);
        assert_eq!(c.space.in_dim(0).len(), 1);
        assert_eq!(c.space.in_dim(1).len(), 1);
        c.space.validate().unwrap();
        let (_, n) = c.space.pi0();
        assert_eq!(n, 1);
    }

    #[test]
    fn coequalizer_with_degenerate_image() {
        // collapse an edge onto a degenerate edge of a point: the quotient
        // must renormalize cleanly.
        let d1 = SimplicialSet::simplex(1);
        let pt = SimplicialSet::point();
        let mut d = Diagram::new();
        let n_d1 = d.add_node(d1);
        let n_pt = d.add_node(pt);
        d.add_arrow(
            n_d1,
            n_pt,
            SimplicialMap::new(vec![
                SimplexRef::nd(0),
                SimplexRef::nd(0),
                SimplexRef { nd: 0, word: vec![0] },
            ]),
        );
        let c = colimit(&d);
        assert_eq!(c.space.simplex_count(), 1);
        c.space.validate().unwrap();
    }
}
