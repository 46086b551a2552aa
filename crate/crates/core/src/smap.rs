//! Maps of simplicial sets, stored by images of non-degenerate simplices.

use crate::sset::{SimplexRef, SimplicialSet};
use crate::{Error, Result};

/// A simplicial map, determined by the image of every nd simplex of the
/// source. Degenerate simplices map by extending with the same word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialMap {
    pub images: Vec<SimplexRef>,
}

impl SimplicialMap {
    pub fn identity(x: &SimplicialSet) -> Self {
        SimplicialMap {
            images: (0..x.simplex_count()).map(SimplexRef::nd).collect(),
        }
    }

    pub fn new(images: Vec<SimplexRef>) -> Self {
        SimplicialMap { images }
    }

    /// Image of an arbitrary element.
    pub fn apply(&self, target: &SimplicialSet, r: &SimplexRef) -> SimplexRef {
        target.apply_word(&self.images[r.nd], &r.word)
    }

    /// Check that the assignment commutes with all face operators (which
    /// suffices: degeneracies are handled by the normal form).
    pub fn validate(&self, source: &SimplicialSet, target: &SimplicialSet) -> Result<()> {
        if self.images.len() != source.simplex_count() {
            return Err(Error::Malformed("map image count mismatch".into()));
        }
        for nd in 0..source.simplex_count() {
            let dim = source.dim_of(nd);
            if target.degree_of(&self.images[nd]) != dim {
                return Err(Error::Malformed(format!(
                    "image of simplex {nd} has wrong degree"
                )));
            }
            for i in 0..=dim {
                if dim == 0 {
                    continue;
                }
                let lhs = target.face(&self.images[nd], i);
                let rhs = self.apply(target, source.face_of_nd(nd, i));
                if lhs != rhs {
                    return Err(Error::Malformed(format!(
                        "map does not commute with d_{i} on simplex {nd}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, target_of_self: &SimplicialSet, inner: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            images: inner
                .images
                .iter()
                .map(|r| self.apply(target_of_self, r))
                .collect(),
        }
    }

    /// A map is a monomorphism iff it sends nd simplices to nd simplices,
    /// injectively.
    pub fn is_mono(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for r in &self.images {
            if !r.is_nd() || !seen.insert(r.nd) {
                return false;
            }
        }
        true
    }

    /// Build a map out of a subcomplex inclusion renumbering.
    pub fn from_renumbering(renum: &[Option<usize>], sub_count: usize) -> SimplicialMap {
        let mut images = vec![SimplexRef::nd(usize::MAX); sub_count];
        for (old, new) in renum.iter().enumerate() {
            if let Some(n) = new {
                images[*n] = SimplexRef::nd(old);
            }
        }
        SimplicialMap { images }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_compose() {
        let d2 = SimplicialSet::simplex(2);
        let id = SimplicialMap::identity(&d2);
        id.validate(&d2, &d2).unwrap();
        assert_eq!(id.compose(&d2, &id), id);
    }

    #[test]
    fn collapse_edge_to_point() {
        let d1 = SimplicialSet::simplex(1);
        let pt = SimplicialSet::point();
        let v = SimplexRef::nd(0);
        let images = vec![
            v.clone(),
            v.clone(),
            SimplexRef { nd: 0, word: vec![0] },
        ];
        // the edge is nd id 2 (chains sorted by length)
        let f = SimplicialMap::new(images);
        f.validate(&d1, &pt).unwrap();
        assert!(!f.is_mono());
    }
}
