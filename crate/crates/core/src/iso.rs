//! Isomorphism testing for finite simplicial sets.
//!
//! Candidates are pruned by an invariant refinement on the nd-face structure
//! (dimension, face multiset fingerprints, coface counts) and completed by
//! backtracking.

use crate::smap::SimplicialMap;
use crate::sset::{SimplexRef, SimplicialSet};
use std::collections::HashMap;

/// Stable fingerprints for nd simplices, refined iteratively.
fn fingerprints(x: &SimplicialSet, seed: &[u64]) -> Vec<u64> {
    let mut fp: Vec<u64> = (0..x.simplex_count())
        .map(|i| {
            let mut h = x.dim_of(i) as u64;
            h = h.wrapping_mul(1000003).wrapping_add(seed[i]);
            h
        })
        .collect();
    for _ in 0..x.simplex_count().min(8) {
        let mut next = vec![0u64; fp.len()];
        let mut coface: Vec<Vec<u64>> = vec![Vec::new(); fp.len()];
        for i in 0..x.simplex_count() {
            let dim = x.dim_of(i);
            let mut h = fp[i].wrapping_mul(31).wrapping_add(dim as u64);
            if dim > 0 {
                for k in 0..=dim {
                    let f = x.face_of_nd(i, k);
                    let wf: u64 = f.word.iter().fold(7u64, |a, &j| {
                        a.wrapping_mul(131).wrapping_add(j as u64 + 1)
                    });
                    h = h
                        .wrapping_mul(1000000007)
                        .wrapping_add(fp[f.nd].wrapping_mul(wf));
                    coface[f.nd].push(fp[i].wrapping_add(k as u64));
                }
            }
            next[i] = h;
        }
        for i in 0..fp.len() {
            coface[i].sort_unstable();
            for c in &coface[i] {
                next[i] = next[i].wrapping_mul(99991).wrapping_add(*c);
            }
        }
        fp = next;
    }
    fp
}

/// Search for an isomorphism compatible with the given per-simplex class
/// labels (two simplices may correspond only if their labels agree).
pub fn isomorphism_with_labels(
    x: &SimplicialSet,
    y: &SimplicialSet,
    label_x: &[u64],
    label_y: &[u64],
) -> Option<SimplicialMap> {
    if x.simplex_count() != y.simplex_count() {
        return None;
    }
    for d in 0..=x.dim().max(y.dim()) {
        if x.in_dim(d).len() != y.in_dim(d).len() {
            return None;
        }
    }
    let fx = fingerprints(x, label_x);
    let fy = fingerprints(y, label_y);
    let mut count_x: HashMap<u64, usize> = HashMap::new();
    let mut count_y: HashMap<u64, usize> = HashMap::new();
    for &v in &fx {
        *count_x.entry(v).or_default() += 1;
    }
    for &v in &fy {
        *count_y.entry(v).or_default() += 1;
    }
    if count_x != count_y {
        return None;
    }
    // backtracking in dimension order
    let mut order: Vec<usize> = (0..x.simplex_count()).collect();
    order.sort_by_key(|&i| (x.dim_of(i), i));
    let mut img: Vec<Option<usize>> = vec![None; x.simplex_count()];
    let mut used = vec![false; y.simplex_count()];

    fn ok(
        x: &SimplicialSet,
        y: &SimplicialSet,
        img: &[Option<usize>],
        a: usize,
        b: usize,
    ) -> bool {
        let dim = x.dim_of(a);
        if y.dim_of(b) != dim {
            return false;
        }
        if dim == 0 {
            return true;
        }
        for i in 0..=dim {
            let fa = x.face_of_nd(a, i);
            let fb = y.face_of_nd(b, i);
            if fa.word != fb.word {
                return false;
            }
            match img[fa.nd] {
                Some(t) if t == fb.nd => {}
                _ => return false,
            }
        }
        true
    }

    fn rec(
        x: &SimplicialSet,
        y: &SimplicialSet,
        order: &[usize],
        fx: &[u64],
        fy: &[u64],
        img: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        pos: usize,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let a = order[pos];
        for b in 0..y.simplex_count() {
            if used[b] || fy[b] != fx[a] || !ok(x, y, img, a, b) {
                continue;
            }
            img[a] = Some(b);
            used[b] = true;
            if rec(x, y, order, fx, fy, img, used, pos + 1) {
                return true;
            }
            img[a] = None;
            used[b] = false;
        }
        false
    }

    if rec(x, y, &order, &fx, &fy, &mut img, &mut used, 0) {
        Some(SimplicialMap::new(
            img.into_iter().map(|o| SimplexRef::nd(o.unwrap())).collect(),
        ))
    } else {
        None
    }
}

pub fn isomorphism(x: &SimplicialSet, y: &SimplicialSet) -> Option<SimplicialMap> {
    let zx = vec![0u64; x.simplex_count()];
    let zy = vec![0u64; y.simplex_count()];
    isomorphism_with_labels(x, y, &zx, &zy)
}

pub fn are_isomorphic(x: &SimplicialSet, y: &SimplicialSet) -> bool {
    isomorphism(x, y).is_some()
}
