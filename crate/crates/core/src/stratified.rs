//! Simplicial sets stratified over a poset: a flag attached to every nd
//! simplex, compatible with the face operators. Stratified simplices, horns,
//! admissibility, strata, products, map enumeration, and stratified homotopy.

use crate::chains::simplex_complex;
use crate::colimit::{colimit, Diagram};
use crate::enumerate::{enumerate_maps_filtered, Budget};
use crate::poset::{Flag, Poset};
use crate::product::{product, ProductSset};
use crate::smap::SimplicialMap;
use crate::sset::{SimplexRef, SimplicialSet};
use crate::sset::UnionFind;
use crate::{Error, Result};
use std::collections::BTreeSet;
use std::sync::Arc;

/// A simplicial set with a flag per nd simplex (the finite shadow of a
/// structure map to the nerve of the poset).
#[derive(Clone, Debug, PartialEq)]
pub struct StratifiedSimplicialSet {
    pub space: SimplicialSet,
    pub poset: Arc<Poset>,
    pub flags: Vec<Flag>,
}

impl StratifiedSimplicialSet {
    pub fn new(space: SimplicialSet, poset: Arc<Poset>, flags: Vec<Flag>) -> Result<Self> {
        let k = StratifiedSimplicialSet::new_unchecked(space, poset, flags);
        k.validate()?;
        Ok(k)
    }

    pub fn new_unchecked(space: SimplicialSet, poset: Arc<Poset>, flags: Vec<Flag>) -> Self {
        StratifiedSimplicialSet { space, poset, flags }
    }

    pub fn empty(poset: Arc<Poset>) -> Self {
        StratifiedSimplicialSet {
            space: SimplicialSet::empty(),
            poset,
            flags: Vec::new(),
        }
    }

    /// Flag of an arbitrary element: repeats spread through the word.
    pub fn flag_of(&self, r: &SimplexRef) -> Flag {
        let mut entries = self.flags[r.nd].entries.clone();
        for &j in r.word.iter().rev() {
            entries.insert(j, entries[j]);
        }
        Flag { entries }
    }

    /// Check flag compatibility with every face operator.
    pub fn validate(&self) -> Result<()> {
        self.space.validate()?;
        if self.flags.len() != self.space.simplex_count() {
            return Err(Error::Malformed("flag count mismatch".into()));
        }
        for nd in 0..self.space.simplex_count() {
            let dim = self.space.dim_of(nd);
            let flag = &self.flags[nd];
            if flag.len() != dim + 1 {
                return Err(Error::Malformed(format!(
                    "flag length mismatch on simplex {nd}"
                )));
            }
            if flag.entries.iter().any(|&e| e >= self.poset.len()) {
                return Err(Error::Malformed("flag entry outside poset".into()));
            }
            for w in flag.entries.windows(2) {
                if !self.poset.leq(w[0], w[1]) {
                    return Err(Error::Malformed("flag not weakly increasing".into()));
                }
            }
            for i in 0..=dim {
                if dim == 0 {
                    break;
                }
                let expect = flag.delete(i);
                let got = self.flag_of(self.space.face_of_nd(nd, i));
                if expect != got {
                    return Err(Error::Malformed(format!(
                        "flag incompatible with d_{i} on simplex {nd}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Per-simplex hash labels for flag-aware isomorphism search.
    pub fn flag_labels(&self) -> Vec<u64> {
        self.flags
            .iter()
            .map(|f| {
                f.entries
                    .iter()
                    .fold(11u64, |a, &e| a.wrapping_mul(257).wrapping_add(e as u64 + 1))
            })
            .collect()
    }

    /// Subcomplex on a face-closed set of nd simplices, with inclusion.
    pub fn subcomplex(&self, keep: &BTreeSet<usize>) -> (StratifiedSimplicialSet, StratifiedMap) {
        let (sub, renum) = self.space.subcomplex(keep);
        let flags = {
            let mut f = vec![Flag { entries: Vec::new() }; sub.simplex_count()];
            for (old, new) in renum.iter().enumerate() {
                if let Some(n) = new {
                    f[*n] = self.flags[old].clone();
                }
            }
            f
        };
        let sub = StratifiedSimplicialSet::new_unchecked(sub, self.poset.clone(), flags);
        let incl = StratifiedMap {
            map: SimplicialMap::from_renumbering(&renum, sub.space.simplex_count()),
        };
        (sub, incl)
    }
}

/// A flag-preserving simplicial map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratifiedMap {
    pub map: SimplicialMap,
}

impl StratifiedMap {
    pub fn identity(k: &StratifiedSimplicialSet) -> Self {
        StratifiedMap {
            map: SimplicialMap::identity(&k.space),
        }
    }

    pub fn new(
        source: &StratifiedSimplicialSet,
        target: &StratifiedSimplicialSet,
        map: SimplicialMap,
    ) -> Result<Self> {
        map.validate(&source.space, &target.space)?;
        if source.poset != target.poset {
            return Err(Error::Malformed("posets differ".into()));
        }
        for nd in 0..source.space.simplex_count() {
            if target.flag_of(&map.images[nd]) != source.flags[nd] {
                return Err(Error::Malformed(format!(
                    "map does not preserve the flag of simplex {nd}"
                )));
            }
        }
        Ok(StratifiedMap { map })
    }

    pub fn compose(&self, target_of_self: &StratifiedSimplicialSet, inner: &StratifiedMap) -> StratifiedMap {
        StratifiedMap {
            map: self.map.compose(&target_of_self.space, &inner.map),
        }
    }

    pub fn apply(&self, target: &StratifiedSimplicialSet, r: &SimplexRef) -> SimplexRef {
        self.map.apply(&target.space, r)
    }
}

/// The stratified simplex of a flag: `Δ^J` with vertex `k` in stratum `J_k`.
pub fn standard_simplex(poset: &Arc<Poset>, j: &Flag) -> StratifiedSimplicialSet {
    let n = j.dim();
    let cc = simplex_complex(n);
    let flags = cc
        .chains
        .iter()
        .map(|c| Flag {
            entries: c.iter().map(|&v| j.entries[v]).collect(),
        })
        .collect();
    StratifiedSimplicialSet::new_unchecked(cc.complex, poset.clone(), flags)
}

/// The boundary of a stratified simplex with its inclusion. Empty for a
/// vertex (flag of length 1).
pub fn boundary(poset: &Arc<Poset>, j: &Flag) -> (StratifiedSimplicialSet, StratifiedMap, StratifiedSimplicialSet) {
    let full = standard_simplex(poset, j);
    let top = full.space.in_dim(j.dim());
    let keep: BTreeSet<usize> = (0..full.space.simplex_count())
        .filter(|i| !top.contains(i))
        .collect();
    let (b, incl) = full.subcomplex(&keep);
    (b, incl, full)
}

/// The stratified horn `Λ_k^J`: all proper faces except the k-th, with its
/// inclusion into `Δ^J`.
pub fn horn(
    poset: &Arc<Poset>,
    j: &Flag,
    k: usize,
) -> Result<(StratifiedSimplicialSet, StratifiedMap, StratifiedSimplicialSet)> {
    let n = j.dim();
    if j.len() < 2 {
        return Err(Error::Malformed("horn of a vertex".into()));
    }
    if k > n {
        return Err(Error::Malformed(format!("horn index {k} out of range")));
    }
    let full = standard_simplex(poset, j);
    let cc = simplex_complex(n);
    let full_chain: Vec<usize> = (0..=n).collect();
    let missing_face: Vec<usize> = (0..=n).filter(|&v| v != k).collect();
    let keep: BTreeSet<usize> = cc
        .chains
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != full_chain && **c != missing_face)
        .map(|(i, _)| i)
        .collect();
    let (h, incl) = full.subcomplex(&keep);
    Ok((h, incl, full))
}

/// Admissibility of the horn `Λ_k^J`: an adjacent entry of the flag repeats
/// at position k.
pub fn is_admissible(j: &Flag, k: usize) -> bool {
    let e = &j.entries;
    let n = e.len() - 1;
    debug_assert!(k <= n);
    (k + 1 <= n && e[k] == e[k + 1]) || (k >= 1 && e[k] == e[k - 1])
}

/// Equivalent characterization by degeneracy: `Δ^J` is a degeneracy of some
/// `Δ^{J'}` at position k or k-1.
pub fn is_admissible_by_degeneracy(j: &Flag, k: usize) -> bool {
    let mut ok = false;
    if j.len() >= 2 {
        if k + 1 < j.len() {
            let cand = j.delete(k + 1);
            ok |= &cand.repeat(k) == j;
        }
        if k >= 1 {
            let cand = j.delete(k);
            ok |= &cand.repeat(k - 1) == j;
        }
    }
    ok
}

/// The stratum over a poset element: the subcomplex of nd simplices whose
/// flag is constant at `p`.
pub fn stratum(k: &StratifiedSimplicialSet, p: usize) -> SimplicialSet {
    let keep: BTreeSet<usize> = (0..k.space.simplex_count())
        .filter(|&i| k.flags[i].entries.iter().all(|&e| e == p))
        .collect();
    k.space.subcomplex(&keep).0
}

/// A stratified set together with the product structure it came from.
#[derive(Clone, Debug)]
pub struct StratifiedProduct {
    pub strat: StratifiedSimplicialSet,
    pub product: ProductSset,
}

/// `K × S` stratified through the first projection.
pub fn stratified_product(k: &StratifiedSimplicialSet, s: &SimplicialSet) -> StratifiedProduct {
    let p = product(&k.space, s);
    let flags = p
        .pairs
        .iter()
        .map(|(a, _)| k.flag_of(a))
        .collect();
    let strat = StratifiedSimplicialSet::new_unchecked(p.space.clone(), k.poset.clone(), flags);
    debug_assert!(strat.validate().is_ok());
    StratifiedProduct { strat, product: p }
}

/// All flag-preserving simplicial maps `K -> L`.
pub fn enumerate_stratified_maps(
    k: &StratifiedSimplicialSet,
    l: &StratifiedSimplicialSet,
    budget: Budget,
) -> Result<Vec<StratifiedMap>> {
    debug_assert_eq!(k.poset, l.poset);
    let maps = enumerate_maps_filtered(&k.space, &l.space, budget, |nd, cand| {
        l.flag_of(cand) == k.flags[nd]
    })?;
    Ok(maps.into_iter().map(|map| StratifiedMap { map }).collect())
}

/// The cylinder `K × Δ¹` with its two end inclusions.
pub fn cylinder(
    k: &StratifiedSimplicialSet,
) -> (StratifiedSimplicialSet, StratifiedMap, StratifiedMap) {
    let d1 = SimplicialSet::simplex(1);
    let sp = stratified_product(k, &d1);
    let end = |vertex: usize| -> StratifiedMap {
        let images = (0..k.space.simplex_count())
            .map(|nd| {
                let dim = k.space.dim_of(nd);
                let mut v = SimplexRef::nd(vertex);
                for _ in 0..dim {
                    v = d1.degenerate(&v, 0);
                }
                sp.product
                    .ref_of_pair(&k.space, &d1, &SimplexRef::nd(nd), &v)
            })
            .collect();
        StratifiedMap {
            map: SimplicialMap::new(images),
        }
    };
    // vertex ids in Δ¹: chains sorted by (len, lex): 0 -> {0}, 1 -> {1}
    let e0 = end(0);
    let e1 = end(1);
    debug_assert!(e0.map.validate(&k.space, &sp.strat.space).is_ok());
    debug_assert!(e1.map.validate(&k.space, &sp.strat.space).is_ok());
    (sp.strat, e0, e1)
}

/// The partition of `[K, L]_P`: stratified maps up to chains of elementary
/// stratified homotopies (taken in both directions before transitive
/// closure). A single elementary homotopy need not connect two maps that
/// end up in the same class, so this quotient can be strictly coarser than
/// the one-step relation. Returns the maps and the class index of each.
pub fn homotopy_classes(
    k: &StratifiedSimplicialSet,
    l: &StratifiedSimplicialSet,
    budget: Budget,
) -> Result<(Vec<StratifiedMap>, Vec<usize>)> {
    let maps = enumerate_stratified_maps(k, l, budget)?;
    let (cyl, e0, e1) = cylinder(k);
    let homotopies = enumerate_stratified_maps(&cyl, l, budget)?;
    let mut uf = UnionFind::new(maps.len());
    let index_of = |m: &StratifiedMap| maps.binary_search(m).expect("restriction is a map");
    for h in &homotopies {
        let f = h.compose(l, &e0);
        let g = h.compose(l, &e1);
        uf.union(index_of(&f), index_of(&g));
    }
    let mut reps = std::collections::BTreeMap::new();
    let classes = (0..maps.len())
        .map(|i| {
            let r = uf.find(i);
            let next = reps.len();
            *reps.entry(r).or_insert(next)
        })
        .collect();
    Ok((maps, classes))
}

/// Decide whether `f: K -> L` is a stratified homotopy equivalence by
/// exhaustive search for a homotopy inverse.
pub fn is_stratified_homotopy_equivalence(
    f: &StratifiedMap,
    k: &StratifiedSimplicialSet,
    l: &StratifiedSimplicialSet,
    budget: Budget,
) -> Result<bool> {
    let (kk_maps, kk_classes) = homotopy_classes(k, k, budget)?;
    let (ll_maps, ll_classes) = homotopy_classes(l, l, budget)?;
    let id_k = kk_classes[kk_maps
        .binary_search(&StratifiedMap::identity(k))
        .expect("identity enumerated")];
    let id_l = ll_classes[ll_maps
        .binary_search(&StratifiedMap::identity(l))
        .expect("identity enumerated")];
    let candidates = enumerate_stratified_maps(l, k, budget)?;
    for g in &candidates {
        let gf = g.compose(k, f);
        let fg = f.compose(l, g);
        let c_gf = kk_classes[kk_maps.binary_search(&gf).unwrap()];
        let c_fg = ll_classes[ll_maps.binary_search(&fg).unwrap()];
        if c_gf == id_k && c_fg == id_l {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Colimit of a diagram of stratified sets along stratified maps.
pub struct StratifiedColimit {
    pub strat: StratifiedSimplicialSet,
    pub structure: Vec<StratifiedMap>,
}

pub fn stratified_colimit(
    nodes: &[StratifiedSimplicialSet],
    arrows: &[(usize, usize, SimplicialMap)],
) -> StratifiedColimit {
    let poset = nodes
        .first()
        .map(|n| n.poset.clone())
        .expect("non-empty diagram");
    let mut d = Diagram::new();
    for n in nodes {
        d.add_node(n.space.clone());
    }
    for (from, to, f) in arrows {
        d.add_arrow(*from, *to, f.clone());
    }
    let c = colimit(&d);
    let mut flags: Vec<Option<Flag>> = vec![None; c.space.simplex_count()];
    for (v, s) in c.structure.iter().enumerate() {
        for (nd, img) in s.images.iter().enumerate() {
            if img.is_nd() {
                let f = nodes[v].flags[nd].clone();
                match &flags[img.nd] {
                    None => flags[img.nd] = Some(f),
                    Some(existing) => debug_assert_eq!(existing, &f, "inconsistent flags"),
                }
            }
        }
    }
    let flags: Vec<Flag> = flags.into_iter().map(|f| f.expect("flag assigned")).collect();
    let strat = StratifiedSimplicialSet::new_unchecked(c.space, poset, flags);
    debug_assert!(strat.validate().is_ok());
    let structure = c
        .structure
        .into_iter()
        .map(|map| StratifiedMap { map })
        .collect();
    StratifiedColimit { strat, structure }
}

/// Flag-respecting isomorphism test.
pub fn stratified_isomorphic(
    a: &StratifiedSimplicialSet,
    b: &StratifiedSimplicialSet,
) -> bool {
    a.poset == b.poset
        && crate::iso::isomorphism_with_labels(&a.space, &b.space, &a.flag_labels(), &b.flag_labels())
            .is_some()
}
