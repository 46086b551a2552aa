//! Finite simplicial sets presented by non-degenerate simplices.
//!
//! A [`SimplicialSet`] stores one entry per non-degenerate simplex: its
//! dimension and, for each face index, a [`SimplexRef`] naming the
//! non-degenerate part of that face together with the Eilenberg-Zilber
//! degeneracy word. All operator algebra happens on refs via the word
//! utilities, so every element has a unique normal form.

use crate::word::{self, Word};
use crate::{Error, Result};
use std::collections::BTreeSet;

/// A face or degeneracy operator, for normalizing raw words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    Face(usize),
    Degeneracy(usize),
}

/// A (possibly degenerate) simplex in normal form: a non-degenerate simplex
/// id plus a strictly decreasing degeneracy word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub nd: usize,
    pub word: Word,
}

impl SimplexRef {
    pub fn nd(id: usize) -> Self {
        SimplexRef { nd: id, word: Vec::new() }
    }

    pub fn is_nd(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct NdSimplex {
    dim: usize,
    faces: Vec<SimplexRef>,
}

/// A finite simplicial set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialSet {
    simplices: Vec<NdSimplex>,
}

impl SimplicialSet {
    pub fn empty() -> Self {
        SimplicialSet { simplices: Vec::new() }
    }

    /// A single point.
    pub fn point() -> Self {
        let mut s = SimplicialSet::empty();
        s.push_simplex(0, Vec::new()).unwrap();
        s
    }

    /// The standard n-simplex: non-degenerate simplices are the non-empty
    /// subsets of `{0, ..., n}`, face `i` deletes the `i`-th smallest vertex.
    pub fn simplex(n: usize) -> Self {
        crate::chains::simplex_complex(n).complex
    }

    /// Append a non-degenerate simplex; faces must already exist.
    pub fn push_simplex(&mut self, dim: usize, faces: Vec<SimplexRef>) -> Result<usize> {
        if dim == 0 {
            if !faces.is_empty() {
                return Err(Error::Malformed("vertex with faces".into()));
            }
        } else if faces.len() != dim + 1 {
            return Err(Error::Malformed(format!(
                "{}-simplex with {} faces",
                dim,
                faces.len()
            )));
        }
        for f in &faces {
            let deg = self.degree_of(f);
            if f.nd >= self.simplices.len() || deg != dim - 1 {
                return Err(Error::Malformed("face of wrong dimension".into()));
            }
        }
        self.simplices.push(NdSimplex { dim, faces });
        Ok(self.simplices.len() - 1)
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn dim_of(&self, nd: usize) -> usize {
        self.simplices[nd].dim
    }

    /// Total degree of an element.
    pub fn degree_of(&self, r: &SimplexRef) -> usize {
        self.simplices[r.nd].dim + r.word.len()
    }

    /// Dimension of the simplicial set (max over nd simplices; 0 if empty).
    pub fn dim(&self) -> usize {
        self.simplices.iter().map(|s| s.dim).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Ids of non-degenerate simplices of dimension `d`.
    pub fn in_dim(&self, d: usize) -> Vec<usize> {
        (0..self.simplices.len())
            .filter(|&i| self.simplices[i].dim == d)
            .collect()
    }

    /// Stored face of a non-degenerate simplex.
    pub fn face_of_nd(&self, nd: usize, i: usize) -> &SimplexRef {
        &self.simplices[nd].faces[i]
    }

    /// `d_i` applied to an arbitrary element.
    pub fn face(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        debug_assert!(i <= self.degree_of(r));
        let (prefix, residual) = word::face_through(&r.word, i);
        match residual {
            None => SimplexRef { nd: r.nd, word: prefix },
            Some(i) => {
                let stored = &self.simplices[r.nd].faces[i];
                SimplexRef {
                    nd: stored.nd,
                    word: word::compose(&prefix, &stored.word),
                }
            }
        }
    }

    /// `s_j` applied to an arbitrary element.
    pub fn degenerate(&self, r: &SimplexRef, j: usize) -> SimplexRef {
        debug_assert!(j <= self.degree_of(r));
        let mut word = r.word.clone();
        word::push_degeneracy(&mut word, j);
        SimplexRef { nd: r.nd, word }
    }

    /// `s_w` applied to an element, `w` a normalized word.
    pub fn apply_word(&self, r: &SimplexRef, w: &[usize]) -> SimplexRef {
        SimplexRef {
            nd: r.nd,
            word: word::compose(w, &r.word),
        }
    }

    /// Reduce an arbitrary word of operators applied to a non-degenerate
    /// simplex to its unique normal form. Operators apply left to right.
    pub fn normalize(&self, nd: usize, ops: &[Operator]) -> Result<SimplexRef> {
        let mut r = SimplexRef::nd(nd);
        for op in ops {
            let deg = self.degree_of(&r);
            match *op {
                Operator::Face(i) => {
                    if deg == 0 || i > deg {
                        return Err(Error::Malformed(format!(
                            "face index {i} out of range in degree {deg}"
                        )));
                    }
                    r = self.face(&r, i);
                }
                Operator::Degeneracy(j) => {
                    if j > deg {
                        return Err(Error::Malformed(format!(
                            "degeneracy index {j} out of range in degree {deg}"
                        )));
                    }
                    r = self.degenerate(&r, j);
                }
            }
        }
        Ok(r)
    }

    /// Act by an arbitrary monotone map `theta: [k] -> [degree_of(r)]`,
    /// giving the element `r ∘ theta` of degree `k`.
    pub fn act(&self, r: &SimplexRef, theta: &[usize]) -> SimplexRef {
        let n = self.degree_of(r);
        debug_assert!(theta.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(theta.iter().all(|&t| t <= n));
        // collapse through r's own word first
        let surj = word::as_surjection(&r.word, n);
        let composite: Vec<usize> = theta.iter().map(|&t| surj[t]).collect();
        self.act_on_nd(r.nd, &composite)
    }

    fn act_on_nd(&self, nd: usize, theta: &[usize]) -> SimplexRef {
        let m = self.simplices[nd].dim;
        // restrict to the image: delete missing vertices, largest first
        let image: BTreeSet<usize> = theta.iter().copied().collect();
        let mut r = SimplexRef::nd(nd);
        for i in (0..=m).rev() {
            if !image.contains(&i) {
                r = self.face(&r, i);
            }
        }
        // then degenerate at the repeat positions
        let w = word::repeats_word(theta);
        self.apply_word(&r, &w)
    }

    /// The vertices of an element, in order, as refs to nd 0-simplices.
    pub fn vertices_of(&self, r: &SimplexRef) -> Vec<usize> {
        let n = self.degree_of(r);
        (0..=n)
            .map(|t| {
                let v = self.act(r, &[t]);
                debug_assert!(v.word.is_empty());
                v.nd
            })
            .collect()
    }

    /// All nd simplices reachable from `nd` by iterated faces, including
    /// `nd` itself. Sorted.
    pub fn face_closure(&self, nd: usize) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![nd];
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                for f in &self.simplices[x].faces {
                    stack.push(f.nd);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// All elements (refs) of total degree `n`, in deterministic order.
    pub fn elements(&self, n: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for nd in 0..self.simplices.len() {
            let m = self.simplices[nd].dim;
            if m > n {
                continue;
            }
            for w in word::words_of_length(m, n - m) {
                out.push(SimplexRef { nd, word: w });
            }
        }
        out
    }

    /// Check the simplicial identities `d_i d_j = d_{j-1} d_i` (i < j) on all
    /// stored face data.
    pub fn validate(&self) -> Result<()> {
        for nd in 0..self.simplices.len() {
            let s = &self.simplices[nd];
            for f in &s.faces {
                if self.degree_of(f) + 1 != s.dim {
                    return Err(Error::Malformed(format!(
                        "face of simplex {nd} has wrong degree"
                    )));
                }
            }
            let r = SimplexRef::nd(nd);
            for j in 0..=s.dim {
                for i in 0..j {
                    if s.dim < 2 {
                        continue;
                    }
                    let a = self.face(&self.face(&r, j), i);
                    let b = self.face(&self.face(&r, i), j - 1);
                    if a != b {
                        return Err(Error::Malformed(format!(
                            "simplicial identity fails on simplex {nd} (i={i}, j={j})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Euler characteristic from nd-simplex counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim % 2 == 0 { 1i64 } else { -1i64 })
            .sum()
    }

    /// Extract the subcomplex on a face-closed set of nd simplices.
    /// Returns the subcomplex together with old-id -> new-id mapping and the
    /// inclusion map into `self`.
    pub fn subcomplex(&self, keep: &BTreeSet<usize>) -> (SimplicialSet, Vec<Option<usize>>) {
        for &k in keep {
            for f in &self.simplices[k].faces {
                assert!(keep.contains(&f.nd), "subcomplex set not face-closed");
            }
        }
        let mut renum = vec![None; self.simplices.len()];
        let mut sub = SimplicialSet::empty();
        // keep dimension order so faces exist before cofaces
        let mut order: Vec<usize> = keep.iter().copied().collect();
        order.sort_by_key(|&i| (self.simplices[i].dim, i));
        for old in order {
            let faces = self.simplices[old]
                .faces
                .iter()
                .map(|f| SimplexRef {
                    nd: renum[f.nd].unwrap(),
                    word: f.word.clone(),
                })
                .collect();
            let id = sub.push_simplex(self.simplices[old].dim, faces).unwrap();
            renum[old] = Some(id);
        }
        (sub, renum)
    }

    /// Disjoint union; returns the two coproduct injections as nd-id offsets.
    pub fn disjoint_union(&self, other: &SimplicialSet) -> (SimplicialSet, usize) {
        let mut out = self.clone();
        let offset = out.simplices.len();
        for s in &other.simplices {
            out.simplices.push(NdSimplex {
                dim: s.dim,
                faces: s
                    .faces
                    .iter()
                    .map(|f| SimplexRef {
                        nd: f.nd + offset,
                        word: f.word.clone(),
                    })
                    .collect(),
            });
        }
        (out, offset)
    }

    /// Connected components on nd simplices (via shared vertices):
    /// returns per-vertex component index and the component count. Only
    /// vertices and edges are inspected, which suffices for pi_0.
    pub fn pi0(&self) -> (Vec<usize>, usize) {
        let verts = self.in_dim(0);
        let index_of: std::collections::HashMap<usize, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(verts.len());
        for e in self.in_dim(1) {
            let a = self.face_of_nd(e, 0).nd;
            let b = self.face_of_nd(e, 1).nd;
            uf.union(index_of[&a], index_of[&b]);
        }
        let mut reps = std::collections::BTreeMap::new();
        let mut comp = vec![0usize; verts.len()];
        for i in 0..verts.len() {
            let r = uf.find(i);
            let next = reps.len();
            let c = *reps.entry(r).or_insert(next);
            comp[i] = c;
        }
        (comp, reps.len())
    }

    /// Component index of a vertex nd-id, consistent with [`Self::pi0`].
    pub fn pi0_of_vertex(&self, comp: &[usize], v: usize) -> usize {
        let verts = self.in_dim(0);
        let pos = verts.iter().position(|&x| x == v).unwrap();
        comp[pos]
    }
}

/// Simple union-find used for pi_0 and colimit quotients.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller root for determinism
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplex_counts() {
        let d2 = SimplicialSet::simplex(2);
        assert_eq!(d2.in_dim(0).len(), 3);
        assert_eq!(d2.in_dim(1).len(), 3);
        assert_eq!(d2.in_dim(2).len(), 1);
        d2.validate().unwrap();
        let d3 = SimplicialSet::simplex(3);
        assert_eq!(d3.simplex_count(), 15);
        d3.validate().unwrap();
    }

    #[test]
    fn normalize_examples() {
        // s_0 then d_0 on a vertex is the vertex again
        let pt = SimplicialSet::point();
        let v = SimplexRef::nd(0);
        let s0v = pt.degenerate(&v, 0);
        assert_eq!(pt.face(&s0v, 0), v);
        // s_1 s_0 on an edge normalizes to the strictly decreasing word (1,0)
        let d1 = SimplicialSet::simplex(1);
        let e = d1.in_dim(1)[0];
        let r = SimplexRef::nd(e);
        let r = d1.degenerate(&r, 0);
        let r = d1.degenerate(&r, 1);
        assert!(r.word.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(r.word.len(), 2);
        // d_1 of s_0(edge [01]) via the identity d_1 s_0 = id
        let s0e = d1.degenerate(&SimplexRef::nd(e), 0);
        assert_eq!(d1.face(&s0e, 1), SimplexRef::nd(e));
        // d_0 of s_0(edge) = s_... : d_0 s_0 = id as well
        assert_eq!(d1.face(&s0e, 0), SimplexRef::nd(e));
        // d_2 of s_0(edge): d_2 s_0 = s_0 d_1 -> s_0(vertex 0)
        let v0 = d1.face_of_nd(e, 1).nd;
        assert_eq!(
            d1.face(&s0e, 2),
            SimplexRef { nd: v0, word: vec![0] }
        );
    }

    #[test]
    fn normalize_raw_words() {
        use Operator::{Degeneracy, Face};
        let d1 = SimplicialSet::simplex(1);
        let e = d1.in_dim(1)[0];
        // s_0 then d_0 cancels
        assert_eq!(
            d1.normalize(e, &[Degeneracy(0), Face(0)]).unwrap(),
            SimplexRef::nd(e)
        );
        // idempotence: normalizing a normal form changes nothing
        let r = d1.normalize(e, &[Degeneracy(1), Degeneracy(0)]).unwrap();
        assert_eq!(d1.normalize(r.nd, &[]).unwrap(), SimplexRef::nd(r.nd));
        assert!(r.word.windows(2).all(|w| w[0] > w[1]));
        // out-of-range operator index is an error
        assert!(d1.normalize(e, &[Face(5)]).is_err());
        let v = d1.face_of_nd(e, 1).nd;
        assert!(d1.normalize(v, &[Face(0)]).is_err());
    }

    #[test]
    fn vertices_and_act() {
        let d2 = SimplicialSet::simplex(2);
        let t = d2.in_dim(2)[0];
        let vs = d2.vertices_of(&SimplexRef::nd(t));
        assert_eq!(vs.len(), 3);
        // act by (0,0,1,2): a degenerate 3-simplex
        let r = d2.act(&SimplexRef::nd(t), &[0, 0, 1, 2]);
        assert_eq!(r.nd, t);
        assert_eq!(r.word, vec![0]);
        // idempotence of normalization: acting by identity is identity
        let id = d2.act(&SimplexRef::nd(t), &[0, 1, 2]);
        assert_eq!(id, SimplexRef::nd(t));
    }

    #[test]
    fn elements_counts() {
        let d1 = SimplicialSet::simplex(1);
        // degree 1: the edge plus two degenerate vertices
        assert_eq!(d1.elements(1).len(), 3);
        // degree 2: 2 degeneracies of the edge + 1 each over the vertices
        assert_eq!(d1.elements(2).len(), 4);
    }
}
