//! P-labelled simplicial sets, verticalization, the labelled subdivision,
//! and the bridge to cofibrant diagrams.
//!
//! A labelled set carries a regular flag on every nd simplex, shrinking
//! along cofaces. Verticalization spreads each simplex into a column over
//! its label inside `S × N(P)`; the functor `U` reads the same data as a
//! diagram indexed by regular flags.

use crate::diagrams::{is_cofibrant, Diagram};
use crate::poset::{Flag, Poset, RegularFlag};
use crate::product::{product, ProductSset};
use crate::smap::SimplicialMap;
use crate::sset::{SimplexRef, SimplicialSet};
use crate::stratified::{StratifiedSimplicialSet};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// A simplicial set with a regular flag on each nd simplex, monotone under
/// faces.
#[derive(Clone, Debug, PartialEq)]
pub struct LabelledSimplicialSet {
    pub space: SimplicialSet,
    pub poset: Arc<Poset>,
    pub labels: Vec<RegularFlag>,
}

impl LabelledSimplicialSet {
    pub fn new(
        space: SimplicialSet,
        poset: Arc<Poset>,
        labels: Vec<RegularFlag>,
    ) -> Result<Self> {
        let s = LabelledSimplicialSet {
            space,
            poset,
            labels,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        self.space.validate()?;
        if self.labels.len() != self.space.simplex_count() {
            return Err(Error::Malformed("label count mismatch".into()));
        }
        for nd in 0..self.space.simplex_count() {
            let dim = self.space.dim_of(nd);
            for i in 0..=dim {
                if dim == 0 {
                    break;
                }
                let face = self.space.face_of_nd(nd, i);
                if !self.labels[nd].subflag_of(&self.labels[face.nd]) {
                    return Err(Error::Malformed(format!(
                        "label grows along d_{i} of simplex {nd}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn label_labels(&self) -> Vec<u64> {
        self.labels
            .iter()
            .map(|f| {
                f.entries
                    .iter()
                    .fold(13u64, |a, &e| a.wrapping_mul(263).wrapping_add(e as u64 + 1))
            })
            .collect()
    }
}

/// Label-respecting isomorphism test.
pub fn labelled_isomorphic(a: &LabelledSimplicialSet, b: &LabelledSimplicialSet) -> bool {
    a.poset == b.poset
        && crate::iso::isomorphism_with_labels(
            &a.space,
            &b.space,
            &a.label_labels(),
            &b.label_labels(),
        )
        .is_some()
}

/// A verticalized object: the stratified union of columns together with its
/// recorded embedding into `S × N(P)`.
#[derive(Clone, Debug)]
pub struct Verticalization {
    pub strat: StratifiedSimplicialSet,
    pub base: SimplicialSet,
    /// product `S × N(P)` carrier
    pub product: ProductSset,
    pub nerve: StratifiedSimplicialSet,
    /// nd ids of the product that belong to the verticalization
    pub member: Vec<usize>,
    /// projection of the verticalization onto the base
    pub to_base: SimplicialMap,
    /// inclusion into the product carrier
    pub embedding: SimplicialMap,
}

/// `V(S, λ) = ∪_σ Im(σ) × Δ^{λ(σ)} ⊆ S × N(P)`.
pub fn verticalize(s: &LabelledSimplicialSet) -> Verticalization {
    let depth = s.poset.longest_chain_len().saturating_sub(1);
    let nerve = s.poset.nerve(depth);
    let p = product(&s.space, &nerve.space);
    let keep: BTreeSet<usize> = (0..p.space.simplex_count())
        .filter(|&z| {
            let (a, b) = &p.pairs[z];
            let flag_b = nerve.flag_of(b);
            let set_b: BTreeSet<usize> = flag_b.entries.iter().copied().collect();
            // some cell of S whose closure contains a and whose label
            // contains the flag of b
            (0..s.space.simplex_count()).any(|sigma| {
                s.space.face_closure(sigma).contains(&a.nd)
                    && set_b
                        .iter()
                        .all(|e| s.labels[sigma].entries.contains(e))
            })
        })
        .collect();
    let (sub, renum) = p.space.subcomplex(&keep);
    let member: Vec<usize> = {
        let mut m = vec![usize::MAX; sub.simplex_count()];
        for (old, new) in renum.iter().enumerate() {
            if let Some(n) = new {
                m[*n] = old;
            }
        }
        m
    };
    let flags: Vec<Flag> = member
        .iter()
        .map(|&z| nerve.flag_of(&p.pairs[z].1))
        .collect();
    let strat = StratifiedSimplicialSet::new_unchecked(sub, s.poset.clone(), flags);
    debug_assert!(strat.validate().is_ok());
    let to_base = SimplicialMap::new(member.iter().map(|&z| p.pairs[z].0.clone()).collect());
    let embedding = SimplicialMap::new(member.iter().map(|&z| SimplexRef::nd(z)).collect());
    Verticalization {
        strat,
        base: s.space.clone(),
        product: p,
        nerve,
        member,
        to_base,
        embedding,
    }
}

/// The labelled subdivision of a stratified set: `sd(K)` with each simplex
/// labelled by the regularized flag of its first vertex.
pub fn label_subdivision(
    k: &StratifiedSimplicialSet,
) -> (LabelledSimplicialSet, crate::sd::Subdivision) {
    let sdk = crate::sd::sd(&k.space);
    let vertex_flag = |v: usize| -> RegularFlag {
        let (x, subset) = &sdk.vertex_rep[v];
        let mut entries: Vec<usize> = subset.iter().map(|&i| k.flags[*x].entries[i]).collect();
        entries.dedup();
        RegularFlag { entries }
    };
    let labels = (0..sdk.space.simplex_count())
        .map(|nd| {
            let first = sdk.space.act(&SimplexRef::nd(nd), &[0]);
            debug_assert!(first.is_nd());
            vertex_flag(first.nd)
        })
        .collect();
    let labelled = LabelledSimplicialSet {
        space: sdk.space.clone(),
        poset: k.poset.clone(),
        labels,
    };
    debug_assert!(labelled.validate().is_ok());
    (labelled, sdk)
}

/// The diagram of a labelled set: at `I`, the subcomplex of simplices whose
/// label contains `I`; restrictions are inclusions.
pub fn functor_u(s: &LabelledSimplicialSet) -> Diagram {
    let flags = s.poset.regular_flags();
    let mut values = Vec::new();
    let mut renums: Vec<Vec<Option<usize>>> = Vec::new();
    for i in &flags {
        let keep: BTreeSet<usize> = (0..s.space.simplex_count())
            .filter(|&nd| i.subflag_of(&s.labels[nd]))
            .collect();
        let (sub, renum) = s.space.subcomplex(&keep);
        values.push(sub);
        renums.push(renum);
    }
    let mut restrictions = BTreeMap::new();
    for (a, b) in Diagram::inclusion_pairs(&flags) {
        // value(b) ⊆ value(a) inside S
        let mut images = vec![SimplexRef::nd(usize::MAX); values[b].simplex_count()];
        for (old, new) in renums[b].iter().enumerate() {
            if let Some(n) = new {
                images[*n] = SimplexRef::nd(renums[a][old].expect("bigger flag, smaller value"));
            }
        }
        restrictions.insert((a, b), SimplicialMap::new(images));
    }
    let d = Diagram {
        poset: s.poset.clone(),
        flags,
        values,
        restrictions,
    };
    debug_assert!(d.validate().is_ok());
    d
}

/// Reconstruct a labelled set from a cofibrant diagram: the union of all
/// values, labelled by the largest flag a simplex comes from.
pub fn diagram_to_labelled(f: &Diagram) -> Result<LabelledSimplicialSet> {
    let (ok, cert) = is_cofibrant(f);
    if !ok {
        return Err(Error::NotCofibrant(format!("{cert:?}")));
    }
    if f.values.iter().all(|v| v.is_empty()) {
        return Ok(LabelledSimplicialSet {
            space: SimplicialSet::empty(),
            poset: f.poset.clone(),
            labels: Vec::new(),
        });
    }
    let mut d = crate::colimit::Diagram::new();
    for v in &f.values {
        d.add_node(v.clone());
    }
    for (&(a, b), m) in &f.restrictions {
        d.add_arrow(b, a, m.clone());
    }
    let c = crate::colimit::colimit(&d);
    let mut candidates: Vec<Vec<&RegularFlag>> = vec![Vec::new(); c.space.simplex_count()];
    for (fi, s) in c.structure.iter().enumerate() {
        for img in &s.images {
            if img.is_nd() {
                candidates[img.nd].push(&f.flags[fi]);
            }
        }
    }
    // the label is the unique candidate containing all others
    let labels: Vec<RegularFlag> = candidates
        .into_iter()
        .map(|cands| {
            let max = cands
                .iter()
                .find(|m| cands.iter().all(|c| c.subflag_of(m)))
                .ok_or_else(|| Error::NotCofibrant("no maximal source flag".into()))?;
            Ok((*max).clone())
        })
        .collect::<Result<_>>()?;
    LabelledSimplicialSet::new(c.space, f.poset.clone(), labels)
}

/// Decide whether a stratified map between verticalizations descends to the
/// bases, and return the base map when it does.
pub fn is_vertical_map(
    f: &crate::stratified::StratifiedMap,
    src: &Verticalization,
    dst: &Verticalization,
) -> Option<SimplicialMap> {
    // candidate base images, derived from column representatives
    let mut base_images: Vec<Option<SimplexRef>> = vec![None; src.base.simplex_count()];
    for z in 0..src.strat.space.simplex_count() {
        let (a, _) = &src.product.pairs[src.member[z]];
        if !a.is_nd() {
            continue;
        }
        let img = &f.map.images[z];
        let (a2, _) = dst
            .product
            .pair_of_ref(&dst.base, &dst.nerve.space, &dst.embedding.images[img.nd].clone());
        let a2 = dst.base.apply_word(&a2, &img.word);
        match &base_images[a.nd] {
            None => base_images[a.nd] = Some(a2),
            Some(existing) if *existing == a2 => {}
            Some(_) => return None,
        }
    }
    let images: Option<Vec<SimplexRef>> = base_images.into_iter().collect();
    let base_map = SimplicialMap::new(images?);
    if base_map.validate(&src.base, &dst.base).is_err() {
        return None;
    }
    // the square must commute on every simplex of the verticalization
    for z in 0..src.strat.space.simplex_count() {
        let (a, b) = src
            .product
            .pair_of_ref(&src.base, &src.nerve.space, &SimplexRef::nd(src.member[z]));
        let img = &f.map.images[z];
        let emb = dst.embedding.apply(&dst.product.space, img);
        let (a2, b2) = dst
            .product
            .pair_of_ref(&dst.base, &dst.nerve.space, &emb);
        if a2 != base_map.apply(&dst.base, &a) || b2 != b {
            return None;
        }
    }
    Some(base_map)
}

/// The straightening retraction used to replace a stratum preserving map out
/// of `S × Δ^I` by a vertical one: on vertices of `S × Δ^I × Δ¹`,
/// `(x, p, 0) ↦ (x, p)` and `(x, p, 1) ↦ (x, max I)`.
pub fn straighten_vertices(
    i_len: usize,
    vertex: (usize, usize, usize),
) -> (usize, usize) {
    let (x, p, e) = vertex;
    if e == 0 {
        (x, p)
    } else {
        (x, i_len - 1)
    }
}
