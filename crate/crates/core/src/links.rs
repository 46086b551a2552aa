//! Simplicial links, truncated simplicial homotopy links, and the diagram
//! of homotopy links over all regular flags.
//!
//! The link at a regular flag is the fiber of the subdivided stratification
//! over the vertex named by the flag: concretely, the full subcomplex of
//! `sd(K)` on the vertices whose regularized flag equals the given flag.
//! Homotopy links are truncations of the stratified mapping space out of the
//! stratified simplex of the flag.

use crate::diagrams::Diagram;
use crate::enumerate::Budget;
use crate::poset::RegularFlag;
use crate::sd::{sd, Subdivision};
use crate::smap::SimplicialMap;
use crate::sset::{SimplexRef, SimplicialSet};
use crate::stratified::{
    enumerate_stratified_maps, standard_simplex, stratified_product, StratifiedMap,
    StratifiedProduct, StratifiedSimplicialSet,
};
use crate::word;
use crate::Result;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::Hash;

// ---------------------------------------------------------------------------
// element realization: build a simplicial set from levelwise element data

/// A simplicial set built from abstract elements with face and degeneracy
/// actions, truncated at a maximal level.
#[derive(Clone, Debug)]
pub struct Realization<E> {
    pub space: SimplicialSet,
    /// per nd simplex: (level, element)
    pub nd_elems: Vec<(usize, E)>,
    nf: HashMap<(usize, E), SimplexRef>,
}

impl<E: Clone + Eq + Hash> Realization<E> {
    /// Normal form of an element, if it was enumerated.
    pub fn nf(&self, level: usize, e: &E) -> Option<&SimplexRef> {
        self.nf.get(&(level, e.clone()))
    }
}

/// Build the truncation of a simplicial set whose `n`-elements are given by
/// `level_elements(n)` for `n <= max_level`. The element lists must be
/// closed under the supplied operators.
pub fn realize_elements<E: Clone + Eq + Hash + Ord>(
    max_level: usize,
    level_elements: impl Fn(usize) -> Vec<E>,
    face: impl Fn(usize, &E, usize) -> E,
    degeneracy: impl Fn(usize, &E, usize) -> E,
) -> Realization<E> {
    let mut space = SimplicialSet::empty();
    let mut nd_elems: Vec<(usize, E)> = Vec::new();
    let mut nf: HashMap<(usize, E), SimplexRef> = HashMap::new();
    for n in 0..=max_level {
        let mut elems = level_elements(n);
        elems.sort();
        elems.dedup();
        for e in elems {
            let mut found: Option<(usize, E)> = None;
            for j in 0..n {
                let f = face(n, &e, j);
                if degeneracy(n - 1, &f, j) == e {
                    found = Some((j, f));
                    break;
                }
            }
            let r = match found {
                Some((j, f)) => {
                    let base = nf[&(n - 1, f)].clone();
                    let mut w = base.word.clone();
                    word::push_degeneracy(&mut w, j);
                    SimplexRef { nd: base.nd, word: w }
                }
                None => {
                    let faces = if n == 0 {
                        Vec::new()
                    } else {
                        (0..=n).map(|i| nf[&(n - 1, face(n, &e, i))].clone()).collect()
                    };
                    let id = space.push_simplex(n, faces).unwrap();
                    nd_elems.push((n, e.clone()));
                    SimplexRef::nd(id)
                }
            };
            nf.insert((n, e), r);
        }
    }
    debug_assert!(space.validate().is_ok());
    Realization {
        space,
        nd_elems,
        nf,
    }
}

// ---------------------------------------------------------------------------
// simplicial links

/// The subdivision of a stratified set with per-vertex regularized flags;
/// links at every flag are full subcomplexes of it.
#[derive(Clone, Debug)]
pub struct LinkSystem {
    pub sd: Subdivision,
    pub vertex_flags: Vec<RegularFlag>,
}

pub fn link_system(k: &StratifiedSimplicialSet) -> LinkSystem {
    let sdk = sd(&k.space);
    let vertex_flags = sdk
        .vertex_rep
        .iter()
        .map(|(x, subset)| {
            let mut entries: Vec<usize> = subset
                .iter()
                .map(|&v| k.flags[*x].entries[v])
                .collect();
            entries.dedup();
            RegularFlag { entries }
        })
        .collect();
    // degreewise construction makes vertex ids 0..#vertices
    debug_assert!(sdk
        .space
        .in_dim(0)
        .iter()
        .enumerate()
        .all(|(i, &v)| i == v));
    LinkSystem {
        sd: sdk,
        vertex_flags,
    }
}

impl LinkSystem {
    /// The link at a regular flag, together with the renumbering from
    /// `sd(K)` nd ids into the link.
    pub fn link(&self, i: &RegularFlag) -> (SimplicialSet, Vec<Option<usize>>) {
        let keep: BTreeSet<usize> = (0..self.sd.space.simplex_count())
            .filter(|&z| {
                self.sd
                    .space
                    .vertices_of(&SimplexRef::nd(z))
                    .iter()
                    .all(|&v| &self.vertex_flags[v] == i)
            })
            .collect();
        self.sd.space.subcomplex(&keep)
    }
}

/// The link of `K` at the flag `I`.
pub fn link(k: &StratifiedSimplicialSet, i: &RegularFlag) -> SimplicialSet {
    link_system(k).link(i).0
}

/// The map of links induced by a stratified map, via `sd(f)`.
pub fn induced_link_map(
    f: &StratifiedMap,
    k: &StratifiedSimplicialSet,
    l: &StratifiedSimplicialSet,
    sys_k: &LinkSystem,
    sys_l: &LinkSystem,
    i: &RegularFlag,
) -> SimplicialMap {
    let sdf = crate::sd::sd_map(&k.space, &l.space, &f.map, &sys_k.sd, &sys_l.sd);
    let (link_k, renum_k) = sys_k.link(i);
    let (_link_l, renum_l) = sys_l.link(i);
    let mut images = vec![SimplexRef::nd(usize::MAX); link_k.simplex_count()];
    for (old, new) in renum_k.iter().enumerate() {
        if let Some(n) = new {
            let img = &sdf.images[old];
            images[*n] = SimplexRef {
                nd: renum_l[img.nd].expect("flag-preserving maps preserve links"),
                word: img.word.clone(),
            };
        }
    }
    SimplicialMap::new(images)
}

// ---------------------------------------------------------------------------
// homotopy links

/// A truncated mapping space `Map(Δ^I, K)` together with the data needed to
/// act on it: the prism products and the element normal forms.
#[derive(Clone, Debug)]
pub struct Holink {
    pub space: SimplicialSet,
    pub truncation: usize,
    pub flag: RegularFlag,
    pub realization: Realization<SimplicialMap>,
    pub prisms: Vec<StratifiedProduct>,
}

/// `Map(Δ^I, K)` truncated at `dim_bound`: n-simplices are stratified maps
/// `Δ^I × Δ^n -> K`.
pub fn holink(
    k: &StratifiedSimplicialSet,
    i: &RegularFlag,
    dim_bound: usize,
    budget: Budget,
) -> Result<Holink> {
    let delta_i = standard_simplex(&k.poset, &i.as_flag());
    let prisms: Vec<StratifiedProduct> = (0..=dim_bound + 1)
        .map(|n| stratified_product(&delta_i, &SimplicialSet::simplex(n)))
        .collect();
    // operator maps 1 × θ between prisms
    let second = |m: usize, n: usize, theta: &[usize]| -> SimplicialMap {
        let cm = crate::chains::simplex_complex(m);
        let cn = crate::chains::simplex_complex(n);
        let tm = SimplicialMap::new(
            cm.chains
                .iter()
                .map(|c| {
                    let t: Vec<usize> = c.iter().map(|&v| theta[v]).collect();
                    cn.ref_of_tuple(&t).unwrap()
                })
                .collect(),
        );
        crate::product::product_map(
            &prisms[m].product,
            &prisms[n].product,
            &delta_i.space,
            &cn.complex,
            &SimplicialMap::identity(&delta_i.space),
            &tm,
        )
    };
    let mut face_ops: Vec<Vec<SimplicialMap>> = Vec::new();
    let mut degen_ops: Vec<Vec<SimplicialMap>> = Vec::new();
    for n in 0..=dim_bound {
        let mut f = Vec::new();
        if n > 0 {
            for idx in 0..=n {
                let coface: Vec<usize> =
                    (0..n).map(|t| if t < idx { t } else { t + 1 }).collect();
                f.push(second(n - 1, n, &coface));
            }
        }
        face_ops.push(f);
        let mut g = Vec::new();
        for j in 0..=n {
            let cod: Vec<usize> = (0..=n + 1).map(|t| if t <= j { t } else { t - 1 }).collect();
            g.push(second(n + 1, n, &cod));
        }
        degen_ops.push(g);
    }
    let mut levels: Vec<Vec<SimplicialMap>> = Vec::new();
    for n in 0..=dim_bound {
        let maps = enumerate_stratified_maps(&prisms[n].strat, k, budget)?;
        levels.push(maps.into_iter().map(|m| m.map).collect());
    }
    let realization = realize_elements(
        dim_bound,
        |n| levels[n].clone(),
        |n, e, idx| e.compose(&k.space, &face_ops[n][idx]),
        |n, e, j| e.compose(&k.space, &degen_ops[n][j]),
    );
    Ok(Holink {
        space: realization.space.clone(),
        truncation: dim_bound,
        flag: i.clone(),
        realization,
        prisms,
    })
}

/// The map of homotopy links induced by postcomposition with `f: K -> L`.
pub fn induced_holink_map(
    f: &StratifiedMap,
    l: &StratifiedSimplicialSet,
    src: &Holink,
    dst: &Holink,
) -> SimplicialMap {
    let images = src
        .realization
        .nd_elems
        .iter()
        .map(|(level, e)| {
            let fe = f.map.compose(&l.space, e);
            dst.realization
                .nf(*level, &fe)
                .expect("postcomposition stays in the mapping space")
                .clone()
        })
        .collect();
    SimplicialMap::new(images)
}

/// The restriction `HoLink_{I'} -> HoLink_I` for `I ⊆ I'`, by precomposition
/// with the inclusion of stratified simplices.
pub fn holink_restriction(
    k: &StratifiedSimplicialSet,
    sup_holink: &Holink,
    sub_holink: &Holink,
) -> SimplicialMap {
    let sub = &sub_holink.flag;
    let sup = &sup_holink.flag;
    debug_assert!(sub.subflag_of(sup));
    let delta_sub = standard_simplex(&k.poset, &sub.as_flag());
    let delta_sup = standard_simplex(&k.poset, &sup.as_flag());
    let vertex_map: Vec<usize> = sub
        .entries
        .iter()
        .map(|e| sup.entries.iter().position(|x| x == e).unwrap())
        .collect();
    let ca = crate::chains::simplex_complex(sub.len() - 1);
    let cb = crate::chains::simplex_complex(sup.len() - 1);
    let incl = SimplicialMap::new(
        ca.chains
            .iter()
            .map(|c| {
                let t: Vec<usize> = c.iter().map(|&v| vertex_map[v]).collect();
                cb.ref_of_tuple(&t).unwrap()
            })
            .collect(),
    );
    let images = sup_holink
        .realization
        .nd_elems
        .iter()
        .map(|(level, e)| {
            let op = crate::product::product_map(
                &sub_holink.prisms[*level].product,
                &sup_holink.prisms[*level].product,
                &delta_sup.space,
                &SimplicialSet::simplex(*level),
                &incl,
                &SimplicialMap::identity(&SimplicialSet::simplex(*level)),
            );
            let restricted = e.compose(&k.space, &op);
            sub_holink
                .realization
                .nf(*level, &restricted)
                .expect("restriction stays in the mapping space")
                .clone()
        })
        .collect();
    let _ = delta_sub;
    SimplicialMap::new(images)
}

/// The diagram of homotopy links `I ↦ HoLink_I(K)`, truncated at
/// `dim_bound`, with restriction maps by precomposition.
pub fn diagram_d(
    k: &StratifiedSimplicialSet,
    dim_bound: usize,
    budget: Budget,
) -> Result<(Diagram, Vec<Holink>)> {
    let flags = k.poset.regular_flags();
    let holinks = crate::exec::par_map(flags.clone(), |i| holink(k, &i, dim_bound, budget));
    let holinks: Vec<Holink> = holinks.into_iter().collect::<Result<_>>()?;
    let values: Vec<SimplicialSet> = holinks.iter().map(|h| h.space.clone()).collect();
    let mut restrictions = BTreeMap::new();
    for (a, b) in Diagram::inclusion_pairs(&flags) {
        restrictions.insert((a, b), holink_restriction(k, &holinks[b], &holinks[a]));
    }
    let d = Diagram {
        poset: k.poset.clone(),
        flags,
        values,
        restrictions,
    };
    debug_assert!(d.validate().is_ok());
    Ok((d, holinks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{Flag, Poset};
    use crate::stratified::boundary;
    use std::sync::Arc;

    fn p2() -> Arc<Poset> {
        Arc::new(Poset::chain(2))
    }

    fn p3() -> Arc<Poset> {
        Arc::new(Poset::chain(3))
    }

    #[test]
    fn link_of_stratified_interval() {
        let p = p2();
        let j = Flag::new(&p, vec![0, 1]).unwrap();
        let d = standard_simplex(&p, &j);
        let i = RegularFlag::new(&p, vec![0, 1]).unwrap();
        let l = link(&d, &i);
        assert_eq!(l.simplex_count(), 1);
        assert_eq!(l.dim(), 0);
    }

    #[test]
    fn link_of_boundary_at_top_flag_is_empty() {
        let p = p3();
        let j = Flag::new(&p, vec![0, 1, 2]).unwrap();
        let (b, _, _) = boundary(&p, &j);
        let i = RegularFlag::new(&p, vec![0, 1, 2]).unwrap();
        assert!(link(&b, &i).is_empty());
    }

    #[test]
    fn link_of_point() {
        let p = p2();
        let j = Flag::new(&p, vec![0]).unwrap();
        let d = standard_simplex(&p, &j);
        let i = RegularFlag::new(&p, vec![0]).unwrap();
        let l = link(&d, &i);
        assert_eq!(l.simplex_count(), 1);
    }

    #[test]
    fn holink_examples() {
        let p = p3();
        let j = Flag::new(&p, vec![0, 1, 2]).unwrap();
        let top = RegularFlag::new(&p, vec![0, 1, 2]).unwrap();
        let full = standard_simplex(&p, &j);
        let (b, _, _) = boundary(&p, &j);
        let h_b = holink(&b, &top, 0, Budget::default()).unwrap();
        assert!(h_b.space.is_empty());
        let h_f = holink(&full, &top, 0, Budget::default()).unwrap();
        assert!(!h_f.space.is_empty());
        let (_, n) = h_f.space.pi0();
        assert_eq!(n, 1);
        // vertices of HoLink_{[0]}(Δ^{[0<1]}): only vertex 0 is in stratum 0
        let p = p2();
        let j = Flag::new(&p, vec![0, 1]).unwrap();
        let d = standard_simplex(&p, &j);
        let i0 = RegularFlag::new(&p, vec![0]).unwrap();
        let h = holink(&d, &i0, 0, Budget::default()).unwrap();
        assert_eq!(h.space.in_dim(0).len(), 1);
    }

    #[test]
    fn induced_link_map_functorial() {
        let p = p3();
        let j = Flag::new(&p, vec![0, 1, 2]).unwrap();
        let (b, incl, full) = boundary(&p, &j);
        let sys_b = link_system(&b);
        let sys_f = link_system(&full);
        let i = RegularFlag::new(&p, vec![0, 1]).unwrap();
        let m = induced_link_map(&incl, &b, &full, &sys_b, &sys_f, &i);
        let (lb, _) = sys_b.link(&i);
        let (lf, _) = sys_f.link(&i);
        m.validate(&lb, &lf).unwrap();
        assert!(m.is_mono());
        // identity induces identity
        let idm = induced_link_map(
            &crate::stratified::StratifiedMap::identity(&b),
            &b,
            &b,
            &sys_b,
            &sys_b,
            &i,
        );
        assert_eq!(idm, SimplicialMap::identity(&lb));
    }

    #[test]
    fn diagram_d_of_interval() {
        let p = p2();
        let j = Flag::new(&p, vec![0, 1]).unwrap();
        let d = standard_simplex(&p, &j);
        let (diag, _) = diagram_d(&d, 1, Budget::default()).unwrap();
        diag.validate().unwrap();
        for v in &diag.values {
            let (_, n) = v.pi0();
            assert_eq!(n, 1);
        }
    }

    #[test]
    fn diagram_d_of_empty() {
        let p = p2();
        let empty = StratifiedSimplicialSet::empty(p);
        let (diag, _) = diagram_d(&empty, 1, Budget::default()).unwrap();
        assert!(diag.values.iter().all(|v| v.is_empty()));
    }
}
