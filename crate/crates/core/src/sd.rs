//! Barycentric subdivision and the last vertex map.
//!
//! `sd` is computed on standard simplices as the nerve of the subset poset
//! and extended to arbitrary finite simplicial sets as a colimit over the
//! non-degenerate simplices glued along their faces.

use crate::chains::{sd_simplex_complex, ChainComplex};
use crate::colimit::{colimit, induced_map, Colimit, Diagram};
use crate::smap::SimplicialMap;
use crate::sset::{SimplexRef, SimplicialSet};
use crate::word;

/// Subdivision of a simplicial set, with enough structure to extend maps.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub space: SimplicialSet,
    /// For each nd simplex `x` of the original set, the structure map
    /// `sd(Δ^{dim x}) -> sd(X)`.
    pub from_copy: Vec<SimplicialMap>,
    /// For each vertex of `sd(X)`, one representative `(x, subset)`.
    pub vertex_rep: Vec<(usize, Vec<usize>)>,
    diagram: Diagram,
    colim: Colimit,
    copy_node: Vec<usize>,
}

/// `sd` of the monotone map `theta: [m] -> [n]` as a map of subdivided
/// simplices, acting on chains by taking images of subsets.
pub fn sd_of_monotone(
    src: &ChainComplex<Vec<usize>>,
    dst: &ChainComplex<Vec<usize>>,
    theta: &[usize],
) -> SimplicialMap {
    let images = src
        .chains
        .iter()
        .map(|chain| {
            let tuple: Vec<Vec<usize>> = chain
                .iter()
                .map(|s| {
                    let mut t: Vec<usize> = s.iter().map(|&i| theta[i]).collect();
                    t.sort_unstable();
                    t.dedup();
                    t
                })
                .collect();
            dst.ref_of_tuple(&tuple).expect("image chain exists")
        })
        .collect();
    SimplicialMap::new(images)
}

/// Cache of `sd(Δ^n)` chain complexes by dimension.
pub fn sd_copies(max_dim: usize) -> Vec<ChainComplex<Vec<usize>>> {
    (0..=max_dim).map(sd_simplex_complex).collect()
}

pub fn sd(x: &SimplicialSet) -> Subdivision {
    let copies = sd_copies(if x.is_empty() { 0 } else { x.dim() });
    let mut diagram = Diagram::new();
    let mut copy_node = Vec::with_capacity(x.simplex_count());
    for nd in 0..x.simplex_count() {
        copy_node.push(diagram.add_node(copies[x.dim_of(nd)].complex.clone()));
    }
    for nd in 0..x.simplex_count() {
        let m = x.dim_of(nd);
        if m == 0 {
            continue;
        }
        for i in 0..=m {
            let stored = x.face_of_nd(nd, i);
            // span node: sd(Δ^{m-1}) mapping into both copies
            let span = diagram.add_node(copies[m - 1].complex.clone());
            let coface: Vec<usize> = (0..m).map(|t| if t < i { t } else { t + 1 }).collect();
            diagram.add_arrow(
                span,
                copy_node[nd],
                sd_of_monotone(&copies[m - 1], &copies[m], &coface),
            );
            let surj = word::as_surjection(&stored.word, m - 1);
            diagram.add_arrow(
                span,
                copy_node[stored.nd],
                sd_of_monotone(&copies[m - 1], &copies[x.dim_of(stored.nd)], &surj),
            );
        }
    }
    let colim = colimit(&diagram);
    let from_copy: Vec<SimplicialMap> = copy_node
        .iter()
        .map(|&n| colim.structure[n].clone())
        .collect();
    let mut vertex_rep = vec![(usize::MAX, Vec::new()); colim.space.in_dim(0).len()];
    for nd in (0..x.simplex_count()).rev() {
        let complex = &copies[x.dim_of(nd)];
        for (chain_id, chain) in complex.chains.iter().enumerate() {
            if chain.len() == 1 {
                let img = &from_copy[nd].images[chain_id];
                debug_assert!(img.is_nd());
                vertex_rep[img.nd] = (nd, chain[0].clone());
            }
        }
    }
    Subdivision {
        space: colim.space.clone(),
        from_copy,
        vertex_rep,
        diagram,
        colim,
    copy_node,
    }
}

impl Subdivision {
    /// Map out of `sd(X)` induced by a cocone of maps `sd(Δ^{dim x}) -> T`,
    /// one per nd simplex of the original set.
    pub fn induced(
        &self,
        cocone_on_copies: Vec<SimplicialMap>,
        target: &SimplicialSet,
    ) -> crate::Result<SimplicialMap> {
        let mut cocone: Vec<SimplicialMap> = Vec::with_capacity(self.diagram.nodes.len());
        // span nodes get the composite along either leg; reuse the first
        let mut per_node: Vec<Option<SimplicialMap>> = vec![None; self.diagram.nodes.len()];
        for (x, &node) in self.copy_node.iter().enumerate() {
            per_node[node] = Some(cocone_on_copies[x].clone());
        }
        for (from, to, f) in &self.diagram.arrows {
            if per_node[*from].is_none() {
                let g = per_node[*to].as_ref().expect("copy nodes first").clone();
                per_node[*from] = Some(g.compose(target, f));
            }
        }
        for n in per_node {
            cocone.push(n.expect("all nodes covered"));
        }
        induced_map(&self.diagram, &self.colim, &cocone, target)
    }
}

/// The last vertex map `sd(X) -> X`: the vertex `S` of `sd(Δ^n)` goes to
/// `max S`, extended by naturality.
pub fn last_vertex(x: &SimplicialSet, sdx: &Subdivision) -> SimplicialMap {
    let copies = sd_copies(if x.is_empty() { 0 } else { x.dim() });
    let cocone = (0..x.simplex_count())
        .map(|nd| {
            let complex = &copies[x.dim_of(nd)];
            let images = complex
                .chains
                .iter()
                .map(|chain| {
                    let tuple: Vec<usize> =
                        chain.iter().map(|s| *s.last().unwrap()).collect();
                    x.act(&SimplexRef::nd(nd), &tuple)
                })
                .collect();
            SimplicialMap::new(images)
        })
        .collect();
    sdx.induced(cocone, x).expect("last vertex cocone commutes")
}

/// `sd(f)` for a simplicial map `f: X -> Y`.
pub fn sd_map(
    x: &SimplicialSet,
    y: &SimplicialSet,
    f: &SimplicialMap,
    sdx: &Subdivision,
    sdy: &Subdivision,
) -> SimplicialMap {
    let max_dim = if x.is_empty() { 0 } else { x.dim() };
    let copies = sd_copies(max_dim);
    let cocone = (0..x.simplex_count())
        .map(|nd| {
            let m = x.dim_of(nd);
            let img = &f.images[nd];
            let surj = word::as_surjection(&img.word, m);
            let step = sd_of_monotone(&copies[m], &copies[y.dim_of(img.nd)], &surj);
            sdy.from_copy[img.nd].compose(&sdy.space, &step)
        })
        .collect();
    sdx.induced(cocone, &sdy.space)
        .expect("sd of a simplicial map commutes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sd_point_is_point() {
        let pt = SimplicialSet::point();
        let s = sd(&pt);
        assert_eq!(s.space.simplex_count(), 1);
    }

    #[test]
    fn sd_interval() {
        let d1 = SimplicialSet::simplex(1);
        let s = sd(&d1);
        assert_eq!(s.space.in_dim(0).len(), 3);
        assert_eq!(s.space.in_dim(1).len(), 2);
    }

    #[test]
    fn sd_boundary_of_triangle_is_hexagon() {
        // oracle: glue sd(Δ¹) over the three edges of ∂Δ²: 6 vertices, 6 edges
        let d2 = SimplicialSet::simplex(2);
        let keep: std::collections::BTreeSet<usize> = (0..d2.simplex_count())
            .filter(|&i| d2.dim_of(i) < 2)
            .collect();
        let (bdry, _) = d2.subcomplex(&keep);
        let s = sd(&bdry);
        assert_eq!(s.space.in_dim(0).len(), 6);
        assert_eq!(s.space.in_dim(1).len(), 6);
        let (_, comps) = s.space.pi0();
        assert_eq!(comps, 1);
    }

    #[test]
    fn last_vertex_on_interval() {
        let d1 = SimplicialSet::simplex(1);
        let s = sd(&d1);
        let lv = last_vertex(&d1, &s);
        lv.validate(&s.space, &d1).unwrap();
        // vertices {0} -> 0, {1} -> 1, {01} -> 1
        for (v, (x, subset)) in s.vertex_rep.iter().enumerate() {
            let expected = d1.act(&SimplexRef::nd(*x), &[*subset.last().unwrap()]);
            assert_eq!(lv.images[s.space.in_dim(0)[v]], expected);
        }
    }

    #[test]
    fn last_vertex_natural_for_cofaces() {
        // naturality square for d^1: Δ¹ -> Δ²
        let d1 = SimplicialSet::simplex(1);
        let d2 = SimplicialSet::simplex(2);
        let sd1 = sd(&d1);
        let sd2 = sd(&d2);
        // the coface map as a simplicial map via chain complexes
        let c1 = crate::chains::simplex_complex(1);
        let c2 = crate::chains::simplex_complex(2);
        let f = SimplicialMap::new(
            c1.chains
                .iter()
                .map(|ch| {
                    let t: Vec<usize> = ch.iter().map(|&v| if v < 1 { v } else { v + 1 }).collect();
                    c2.ref_of_tuple(&t).unwrap()
                })
                .collect(),
        );
        f.validate(&d1, &d2).unwrap();
        let sdf = sd_map(&d1, &d2, &f, &sd1, &sd2);
        let lv1 = last_vertex(&d1, &sd1);
        let lv2 = last_vertex(&d2, &sd2);
        assert_eq!(f.compose(&d2, &lv1), lv2.compose(&d2, &sdf));
    }

    #[test]
    fn sd_preserves_disjoint_union() {
        let d1 = SimplicialSet::simplex(1);
        let pt = SimplicialSet::point();
        let (u, _) = d1.disjoint_union(&pt);
        let s = sd(&u);
        assert_eq!(s.space.in_dim(0).len(), 4);
        assert_eq!(s.space.in_dim(1).len(), 2);
    }
}
