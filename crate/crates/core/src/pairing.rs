//! Pairings certifying strong anodyne extensions.
//!
//! A pairing partitions the nd simplices of an ambient object outside a
//! subobject into type I / type II with a bijection T. It is proper when
//! every type II simplex is a codimension-one face of its partner in exactly
//! one way, admissible when the corresponding horn is admissible, and
//! regular when the ancestral relation is well founded (acyclic, on finite
//! data). The builders reconstruct the matchings for `K -> Ex_P^naiv(K)` and
//! `Ĵ -> Ex_P(K)` from the `j`/`r` map family and validate them wholesale;
//! simplices whose partner would exceed the truncation are reported as
//! deferred rather than paired.

use crate::enumerate::Budget;
use crate::poset::Flag;
use crate::sset::SimplexRef;
use crate::stratified::{is_admissible, StratifiedMap, StratifiedSimplicialSet};
use crate::subdivision::{
    ex_p_naiv, ex_p_once, iota, j_map, moss_j_map, moss_r_map, r_map, sd_p_naiv_simplex,
    sd_p_simplex, Ex, ExElem,
};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// A pairing on a monomorphism `sub -> ambient` of stratified sets.
#[derive(Clone, Debug)]
pub struct Pairing {
    pub sub: StratifiedSimplicialSet,
    pub ambient: StratifiedSimplicialSet,
    pub inclusion: StratifiedMap,
    /// nd ids in the ambient object
    pub type_i: Vec<usize>,
    pub type_ii: Vec<usize>,
    /// partner map, type II -> type I
    pub partner: BTreeMap<usize, usize>,
    /// nd ids whose partner would exceed a truncation
    pub deferred: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PairingChecks {
    pub proper: bool,
    pub admissible: bool,
    pub regular: bool,
    pub deferred: usize,
}

impl PairingChecks {
    pub fn all(&self) -> bool {
        self.proper && self.admissible && self.regular
    }
}

/// Verify the partition shape and decide the three conditions.
pub fn check_pairing(p: &Pairing) -> Result<PairingChecks> {
    let image: BTreeSet<usize> = p.inclusion.map.images.iter().map(|r| r.nd).collect();
    if !p.inclusion.map.is_mono() {
        return Err(Error::Malformed("pairing subobject is not mono".into()));
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &x in p
        .type_i
        .iter()
        .chain(p.type_ii.iter())
        .chain(p.deferred.iter())
    {
        if image.contains(&x) || !seen.insert(x) {
            return Err(Error::Malformed("pairing is not a partition".into()));
        }
    }
    for nd in 0..p.ambient.space.simplex_count() {
        if !image.contains(&nd) && !seen.contains(&nd) {
            return Err(Error::Malformed(format!(
                "simplex {nd} not covered by the pairing"
            )));
        }
    }
    if p.partner.len() != p.type_ii.len() || p.type_i.len() != p.type_ii.len() {
        return Err(Error::Malformed("partner map is not a bijection".into()));
    }
    {
        let mut targets: BTreeSet<usize> = BTreeSet::new();
        for (s, t) in &p.partner {
            if !p.type_ii.contains(s) || !p.type_i.contains(t) || !targets.insert(*t) {
                return Err(Error::Malformed("partner map is not a bijection".into()));
            }
        }
    }

    let mut proper = true;
    let mut admissible = true;
    for (&sigma, &tau) in &p.partner {
        let dim_tau = p.ambient.space.dim_of(tau);
        if p.ambient.space.dim_of(sigma) + 1 != dim_tau {
            proper = false;
            continue;
        }
        let hits: Vec<usize> = (0..=dim_tau)
            .filter(|&i| p.ambient.space.face_of_nd(tau, i) == &SimplexRef::nd(sigma))
            .collect();
        if hits.len() != 1 {
            proper = false;
            continue;
        }
        if !is_admissible(&p.ambient.flags[tau], hits[0]) {
            admissible = false;
        }
    }

    // ancestral relation: sigma < tau when sigma is a face of T(tau)
    let ii: Vec<usize> = p.type_ii.clone();
    let index: BTreeMap<usize, usize> = ii.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); ii.len()];
    for (pos, &tau) in ii.iter().enumerate() {
        let faces = p.ambient.space.face_closure(p.partner[&tau]);
        for f in faces {
            if f != tau {
                if let Some(&fp) = index.get(&f) {
                    succ[fp].push(pos);
                }
            }
        }
    }
    let regular = is_acyclic(&succ);
    Ok(PairingChecks {
        proper,
        admissible,
        regular,
        deferred: p.deferred.len(),
    })
}

fn is_acyclic(succ: &[Vec<usize>]) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        New,
        Open,
        Done,
    }
    let mut state = vec![State::New; succ.len()];
    for start in 0..succ.len() {
        if state[start] != State::New {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        state[start] = State::Open;
        while let Some(frame) = stack.last_mut() {
            let (v, i) = (frame.0, frame.1);
            if i < succ[v].len() {
                frame.1 += 1;
                let w = succ[v][i];
                match state[w] {
                    State::Open => return false,
                    State::New => {
                        state[w] = State::Open;
                        stack.push((w, 0));
                    }
                    State::Done => {}
                }
            } else {
                state[v] = State::Done;
                stack.pop();
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// matchings on Ex_P^naiv and Ex_P

fn build_matching(
    ex: &Ex,
    base: &BTreeSet<usize>,
    up: impl Fn(usize, &ExElem) -> Result<ExElem>,
    sub: StratifiedSimplicialSet,
    inclusion: StratifiedMap,
) -> Result<Pairing> {
    let count = ex.strat.space.simplex_count();
    let mut claimed: Vec<bool> = vec![false; count];
    for &b in base {
        claimed[b] = true;
    }
    let mut type_i = Vec::new();
    let mut type_ii = Vec::new();
    let mut partner = BTreeMap::new();
    let mut deferred = Vec::new();
    for nd in 0..count {
        if claimed[nd] {
            continue;
        }
        let (level, elem) = &ex.realization.nd_elems[nd];
        debug_assert_eq!(ex.strat.space.dim_of(nd), *level);
        if *level == ex.truncation {
            deferred.push(nd);
            claimed[nd] = true;
            continue;
        }
        let tau_elem = up(*level, elem)?;
        let tau_ref = ex
            .realization
            .nf(level + 1, &tau_elem)
            .ok_or_else(|| Error::Malformed("partner element not enumerated".into()))?;
        if !tau_ref.is_nd() {
            return Err(Error::Malformed("partner element is degenerate".into()));
        }
        let tau = tau_ref.nd;
        if claimed[tau] || base.contains(&tau) {
            return Err(Error::Malformed("partner already claimed".into()));
        }
        claimed[nd] = true;
        claimed[tau] = true;
        type_ii.push(nd);
        type_i.push(tau);
        partner.insert(nd, tau);
    }
    Ok(Pairing {
        sub,
        ambient: ex.strat.clone(),
        inclusion,
        type_i,
        type_ii,
        partner,
        deferred,
    })
}

/// The matching on `K -> Ex_P^naiv(K)`: a type II simplex pairs with its
/// precomposition by the original `r_n^k`, one step below the least
/// invariance level of the original `j_n^k` family.
pub fn build_pairing_ex_naiv(
    k: &StratifiedSimplicialSet,
    dim_bound: usize,
    budget: Budget,
) -> Result<(Pairing, Ex)> {
    let ex = ex_p_naiv(k, 1, dim_bound, budget)?;
    let iota_map = iota(k, &ex)?;
    let base: BTreeSet<usize> = iota_map.map.images.iter().map(|r| r.nd).collect();
    let mut naiv_cx: BTreeMap<Flag, crate::subdivision::SdPNaivSimplex> = BTreeMap::new();
    for f in k.poset.flags_up_to(dim_bound + 2) {
        naiv_cx.insert(f.clone(), sd_p_naiv_simplex(&k.poset, &f));
    }
    let up = |level: usize, (flag, f): &ExElem| -> Result<ExElem> {
        let cx = &naiv_cx[flag];
        let min_inv = (0..=level)
            .find(|&kk| {
                let jm = moss_j_map(cx, kk);
                f.compose(&k.space, &jm) == *f
            })
            .ok_or_else(|| Error::Malformed("no invariance level".into()))?;
        if min_inv == 0 {
            return Err(Error::Malformed(
                "fully invariant simplex outside the base".into(),
            ));
        }
        let kk = min_inv;
        let flag_up = flag.repeat(kk);
        let r = moss_r_map(&naiv_cx[&flag_up], cx, kk);
        Ok((flag_up, f.compose(&k.space, &r)))
    };
    let (sub, incl) = ex.strat.subcomplex(&base);
    let pairing = build_matching(&ex, &base, up, sub, incl)?;
    Ok((pairing, ex))
}

/// The subcomplex `Ĵ ⊆ Ex_P(K)` of simplices invariant under the top `j`.
pub fn j_hat(
    k: &StratifiedSimplicialSet,
    ex: &Ex,
) -> (StratifiedSimplicialSet, StratifiedMap, BTreeSet<usize>) {
    let mut sdp_cx: BTreeMap<Flag, crate::subdivision::SdPSimplex> = BTreeMap::new();
    let mut keep: BTreeSet<usize> = BTreeSet::new();
    for (nd, (level, (flag, f))) in ex.realization.nd_elems.iter().enumerate() {
        let cx = sdp_cx
            .entry(flag.clone())
            .or_insert_with(|| sd_p_simplex(&k.poset, flag));
        let jm = j_map(cx, *level);
        if f.compose(&k.space, &jm) == *f {
            keep.insert(nd);
        }
    }
    let (sub, incl) = ex.strat.subcomplex(&keep);
    (sub, incl, keep)
}

/// The matching on `Ĵ -> Ex_P(K)`: a type II simplex pairs with its
/// precomposition by `r^k`, one step above the greatest invariance level.
pub fn build_pairing_ex(
    k: &StratifiedSimplicialSet,
    dim_bound: usize,
    budget: Budget,
) -> Result<(Pairing, Ex)> {
    let ex = ex_p_once(k, dim_bound, false, budget)?;
    let (sub, incl, keep) = j_hat(k, &ex);
    let mut sdp_cx: BTreeMap<Flag, crate::subdivision::SdPSimplex> = BTreeMap::new();
    for f in k.poset.flags_up_to(dim_bound + 2) {
        sdp_cx.insert(f.clone(), sd_p_simplex(&k.poset, &f));
    }
    let up = |level: usize, (flag, f): &ExElem| -> Result<ExElem> {
        let cx = &sdp_cx[flag];
        let max_inv = (0..=level)
            .rev()
            .find(|&kk| {
                let jm = j_map(cx, kk);
                f.compose(&k.space, &jm) == *f
            })
            .ok_or_else(|| Error::Malformed("no invariance level".into()))?;
        if max_inv == level {
            return Err(Error::Malformed(
                "fully invariant simplex outside the base".into(),
            ));
        }
        let kk = max_inv;
        let flag_up = flag.repeat(kk);
        let r = r_map(&sdp_cx[&flag_up], cx, kk);
        Ok((flag_up, f.compose(&k.space, &r)))
    };
    let pairing = build_matching(&ex, &keep, up, sub, incl)?;
    Ok((pairing, ex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;
    use crate::stratified::{horn, standard_simplex};
    use std::sync::Arc;

    fn p2() -> Arc<Poset> {
        Arc::new(Poset::chain(2))
    }

    fn horn_pairing(k: usize) -> Pairing {
        let p = p2();
        let j = Flag::new(&p, vec![0, 0, 1]).unwrap();
        let (h, incl, full) = horn(&p, &j, k).unwrap();
        let image: BTreeSet<usize> = incl.map.images.iter().map(|r| r.nd).collect();
        let complement: Vec<usize> = (0..full.space.simplex_count())
            .filter(|nd| !image.contains(nd))
            .collect();
        let (low, high) = if full.space.dim_of(complement[0]) < full.space.dim_of(complement[1]) {
            (complement[0], complement[1])
        } else {
            (complement[1], complement[0])
        };
        Pairing {
            sub: h,
            ambient: full.clone(),
            inclusion: incl,
            type_i: vec![high],
            type_ii: vec![low],
            partner: [(low, high)].into_iter().collect(),
            deferred: Vec::new(),
        }
    }

    #[test]
    fn admissible_horn_pairing_passes() {
        let checks = check_pairing(&horn_pairing(1)).unwrap();
        assert!(checks.proper && checks.admissible && checks.regular);
    }

    #[test]
    fn non_admissible_face_fails_admissibility_only() {
        let checks = check_pairing(&horn_pairing(2)).unwrap();
        assert!(checks.proper);
        assert!(checks.regular);
        assert!(!checks.admissible);
    }

    #[test]
    fn two_cycle_breaks_regularity() {
        // pillow: two vertices, two parallel edges, two triangles with both
        // edges as faces; pairing each edge to the triangle containing the
        // other creates a 2-cycle in the ancestral relation
        let p = p2();
        let mut space = crate::sset::SimplicialSet::empty();
        let u = space.push_simplex(0, Vec::new()).unwrap();
        let v = space.push_simplex(0, Vec::new()).unwrap();
        let a = space
            .push_simplex(1, vec![SimplexRef::nd(v), SimplexRef::nd(u)])
            .unwrap();
        let b = space
            .push_simplex(1, vec![SimplexRef::nd(v), SimplexRef::nd(u)])
            .unwrap();
        let s0u = SimplexRef { nd: u, word: vec![0] };
        let t1 = space
            .push_simplex(2, vec![SimplexRef::nd(b), SimplexRef::nd(a), s0u.clone()])
            .unwrap();
        let t2 = space
            .push_simplex(2, vec![SimplexRef::nd(a), SimplexRef::nd(b), s0u])
            .unwrap();
        let flags = vec![
            Flag { entries: vec![0] },
            Flag { entries: vec![0] },
            Flag { entries: vec![0, 0] },
            Flag { entries: vec![0, 0] },
            Flag { entries: vec![0, 0, 0] },
            Flag { entries: vec![0, 0, 0] },
        ];
        let ambient = StratifiedSimplicialSet::new(space, p, flags).unwrap();
        let keep: BTreeSet<usize> = [u, v].into_iter().collect();
        let (sub, incl) = ambient.subcomplex(&keep);
        let pairing = Pairing {
            sub,
            ambient,
            inclusion: incl,
            type_i: vec![t1, t2],
            type_ii: vec![a, b],
            partner: [(a, t1), (b, t2)].into_iter().collect(),
            deferred: Vec::new(),
        };
        let checks = check_pairing(&pairing).unwrap();
        assert!(checks.proper);
        assert!(checks.admissible);
        assert!(!checks.regular);
    }

    #[test]
    fn pairing_on_ex_naiv_of_stratified_point() {
        let p = p2();
        let j = Flag::new(&p, vec![0]).unwrap();
        let k = standard_simplex(&p, &j);
        let (pairing, _ex) = build_pairing_ex_naiv(&k, 2, Budget::default()).unwrap();
        let checks = check_pairing(&pairing).unwrap();
        assert!(checks.all(), "{checks:?}");
    }

    #[test]
    fn pairing_on_ex_naiv_of_interval() {
        let p = p2();
        let j = Flag::new(&p, vec![0, 1]).unwrap();
        let k = standard_simplex(&p, &j);
        let (pairing, _ex) = build_pairing_ex_naiv(&k, 2, Budget::default()).unwrap();
        let checks = check_pairing(&pairing).unwrap();
        assert!(checks.all(), "{checks:?}");
    }

    #[test]
    fn pairing_on_ex_of_interval() {
        let p = p2();
        let j = Flag::new(&p, vec![0, 1]).unwrap();
        let k = standard_simplex(&p, &j);
        let (pairing, ex) = build_pairing_ex(&k, 2, Budget::default()).unwrap();
        let checks = check_pairing(&pairing).unwrap();
        assert!(checks.all(), "{checks:?}");
        // Ĵ lies inside the image of Ex_P^naiv(K) under t-precomposition
        let naive = ex_p_naiv(&k, 1, 2, Budget::default()).unwrap();
        let incl = crate::subdivision::ex_naiv_into_ex(&k, &naive, &ex).unwrap();
        let naive_image: BTreeSet<usize> = incl.map.images.iter().map(|r| r.nd).collect();
        let (_, _, keep) = j_hat(&k, &ex);
        for nd in keep {
            assert!(naive_image.contains(&nd));
        }
    }
}
