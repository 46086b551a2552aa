//! Presheaves of simplicial sets on the poset of regular flags.
//!
//! A diagram assigns a finite simplicial set to every regular flag and a
//! restriction map to every proper flag inclusion. The module provides the
//! cofibrancy test (monomorphisms plus the intersection dichotomy), the
//! generator diagrams `S^I`, the left adjoint `C_P` glued out of stratified
//! prisms `Δ^I × Δ^n`, and levelwise comparison of diagram maps.

use crate::chains::simplex_complex;
use crate::homology::homology;
use crate::poset::{Poset, RegularFlag};
use crate::smap::SimplicialMap;
use crate::sset::SimplicialSet;
use crate::stratified::{
    standard_simplex, stratified_colimit, stratified_product, StratifiedProduct,
    StratifiedSimplicialSet,
};
use crate::word;
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// An object of the category of diagrams: values on every regular flag,
/// restriction maps on every proper inclusion of flags.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub poset: Arc<Poset>,
    pub flags: Vec<RegularFlag>,
    pub values: Vec<SimplicialSet>,
    /// key (a, b) with flag a a proper subflag of flag b: map values[b] -> values[a]
    pub restrictions: BTreeMap<(usize, usize), SimplicialMap>,
}

impl Diagram {
    pub fn flag_index(&self, f: &RegularFlag) -> Option<usize> {
        self.flags.iter().position(|g| g == f)
    }

    pub fn value(&self, f: &RegularFlag) -> &SimplicialSet {
        &self.values[self.flag_index(f).expect("flag of the poset")]
    }

    pub fn restriction(&self, sub: &RegularFlag, sup: &RegularFlag) -> &SimplicialMap {
        let a = self.flag_index(sub).unwrap();
        let b = self.flag_index(sup).unwrap();
        &self.restrictions[&(a, b)]
    }

    /// Proper inclusion pairs `(sub, sup)` in deterministic order.
    pub fn inclusion_pairs(flags: &[RegularFlag]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, fa) in flags.iter().enumerate() {
            for (b, fb) in flags.iter().enumerate() {
                if a != b && fa.subflag_of(fb) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Check restriction maps exist, typecheck, and compose functorially.
    pub fn validate(&self) -> Result<()> {
        let pairs = Diagram::inclusion_pairs(&self.flags);
        for &(a, b) in &pairs {
            let m = self
                .restrictions
                .get(&(a, b))
                .ok_or_else(|| Error::Malformed(format!("missing restriction {a}<={b}")))?;
            m.validate(&self.values[b], &self.values[a])?;
        }
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                if b == c {
                    let direct = self
                        .restrictions
                        .get(&(a, d))
                        .ok_or_else(|| Error::Malformed("missing composite restriction".into()))?;
                    let via = self.restrictions[&(a, b)]
                        .compose(&self.values[a], &self.restrictions[&(c, d)]);
                    if *direct != via {
                        return Err(Error::Malformed(format!(
                            "restrictions do not compose: {a} <= {b} <= {d}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Witness for a cofibrancy failure.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum CofibrancyFailure {
    NotMono { sub: Vec<String>, sup: Vec<String> },
    Intersection { flag1: Vec<String>, flag2: Vec<String> },
}

/// Cofibrancy of a diagram: every restriction is a monomorphism, and images
/// of two flags over a common subflag intersect in the value of their union
/// when the union is a flag, and not at all otherwise.
pub fn is_cofibrant(f: &Diagram) -> (bool, Option<CofibrancyFailure>) {
    let label = |idx: usize| -> Vec<String> {
        f.flags[idx]
            .entries
            .iter()
            .map(|&e| f.poset.label(e).to_string())
            .collect()
    };
    for (&(a, b), m) in &f.restrictions {
        if !m.is_mono() {
            return (
                false,
                Some(CofibrancyFailure::NotMono {
                    sub: label(a),
                    sup: label(b),
                }),
            );
        }
    }
    for (i1, f1) in f.flags.iter().enumerate() {
        for (i2, f2) in f.flags.iter().enumerate() {
            if i2 <= i1 {
                continue;
            }
            let inter: Vec<usize> = f1
                .entries
                .iter()
                .copied()
                .filter(|e| f2.entries.contains(e))
                .collect();
            if inter.is_empty() {
                continue;
            }
            let i0 = f
                .flag_index(&RegularFlag { entries: inter })
                .expect("intersection of chains is a chain");
            let im = |src: usize| -> BTreeSet<usize> {
                if src == i0 {
                    (0..f.values[i0].simplex_count()).collect()
                } else {
                    f.restrictions[&(i0, src)]
                        .images
                        .iter()
                        .map(|r| r.nd)
                        .collect()
                }
            };
            let meet: BTreeSet<usize> = im(i1).intersection(&im(i2)).copied().collect();
            let mut union: Vec<usize> = f1.entries.clone();
            for &e in &f2.entries {
                if !union.contains(&e) {
                    union.push(e);
                }
            }
            let comparable = union
                .iter()
                .all(|&a| union.iter().all(|&b| f.poset.leq(a, b) || f.poset.leq(b, a)));
            let expected: BTreeSet<usize> = if comparable {
                union.sort_by(|&a, &b| {
                    if a == b {
                        std::cmp::Ordering::Equal
                    } else if f.poset.leq(a, b) {
                        std::cmp::Ordering::Less
                    } else {
                        std::cmp::Ordering::Greater
                    }
                });
                let i3 = f
                    .flag_index(&RegularFlag { entries: union })
                    .expect("union chain is a regular flag");
                im(i3)
            } else {
                BTreeSet::new()
            };
            if meet != expected {
                return (
                    false,
                    Some(CofibrancyFailure::Intersection {
                        flag1: label(i1),
                        flag2: label(i2),
                    }),
                );
            }
        }
    }
    (true, None)
}

/// The generator diagram `S^I`: value `S` at subflags of `I`, empty
/// elsewhere, with identity and empty restrictions.
pub fn generator(poset: &Arc<Poset>, s: &SimplicialSet, i: &RegularFlag) -> Diagram {
    let flags = poset.regular_flags();
    let values: Vec<SimplicialSet> = flags
        .iter()
        .map(|f| {
            if f.subflag_of(i) {
                s.clone()
            } else {
                SimplicialSet::empty()
            }
        })
        .collect();
    let mut restrictions = BTreeMap::new();
    for (a, b) in Diagram::inclusion_pairs(&flags) {
        let m = if flags[b].subflag_of(i) {
            SimplicialMap::identity(s)
        } else {
            SimplicialMap::new(Vec::new())
        };
        restrictions.insert((a, b), m);
    }
    Diagram {
        poset: poset.clone(),
        flags,
        values,
        restrictions,
    }
}

/// The inclusion of standard simplices `Δ^{|sub|} -> Δ^{|sup|}` induced by a
/// subflag, as a map of carriers.
fn subflag_inclusion(sub: &RegularFlag, sup: &RegularFlag) -> SimplicialMap {
    let vertex_map: Vec<usize> = sub
        .entries
        .iter()
        .map(|e| sup.entries.iter().position(|x| x == e).unwrap())
        .collect();
    let ca = simplex_complex(sub.len() - 1);
    let cb = simplex_complex(sup.len() - 1);
    SimplicialMap::new(
        ca.chains
            .iter()
            .map(|c| {
                let t: Vec<usize> = c.iter().map(|&v| vertex_map[v]).collect();
                cb.ref_of_tuple(&t).unwrap()
            })
            .collect(),
    )
}

/// `1 × θ` between prisms over the same flag.
fn prism_second_map(
    src: &StratifiedProduct,
    dst: &StratifiedProduct,
    delta_i: &SimplicialSet,
    m: usize,
    n: usize,
    theta: &[usize],
) -> SimplicialMap {
    let cm = simplex_complex(m);
    let cn = simplex_complex(n);
    let theta_map = SimplicialMap::new(
        cm.chains
            .iter()
            .map(|c| {
                let t: Vec<usize> = c.iter().map(|&v| theta[v]).collect();
                cn.ref_of_tuple(&t).unwrap()
            })
            .collect(),
    );
    crate::product::product_map(
        &src.product,
        &dst.product,
        delta_i,
        &cn.complex,
        &SimplicialMap::identity(delta_i),
        &theta_map,
    )
}

/// The left adjoint `C_P`: glue one stratified prism `Δ^I × Δ^n` per nd
/// simplex of each value, along faces and covering restrictions.
pub fn c_p(f: &Diagram) -> StratifiedSimplicialSet {
    let mut nodes: Vec<StratifiedSimplicialSet> = Vec::new();
    let mut arrows: Vec<(usize, usize, SimplicialMap)> = Vec::new();
    let simplices: Vec<StratifiedSimplicialSet> = f
        .flags
        .iter()
        .map(|fl| standard_simplex(&f.poset, &fl.as_flag()))
        .collect();
    let mut prisms: BTreeMap<(usize, usize), StratifiedProduct> = BTreeMap::new();
    let mut want: Vec<(usize, usize)> = Vec::new();
    for fi in 0..f.flags.len() {
        for x in 0..f.values[fi].simplex_count() {
            let n = f.values[fi].dim_of(x);
            want.push((fi, n));
            if n > 0 {
                want.push((fi, n - 1));
            }
        }
    }
    for (a, b) in Diagram::inclusion_pairs(&f.flags) {
        if f.flags[b].len() != f.flags[a].len() + 1 {
            continue;
        }
        for xb in 0..f.values[b].simplex_count() {
            want.push((a, f.values[b].dim_of(xb)));
        }
    }
    for (fi, n) in want {
        prisms
            .entry((fi, n))
            .or_insert_with(|| stratified_product(&simplices[fi], &SimplicialSet::simplex(n)));
    }
    let mut copy_node: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for fi in 0..f.flags.len() {
        for x in 0..f.values[fi].simplex_count() {
            let n = f.values[fi].dim_of(x);
            let node = nodes.len();
            nodes.push(prisms[&(fi, n)].strat.clone());
            copy_node.insert((fi, x), node);
        }
    }
    if nodes.is_empty() {
        return StratifiedSimplicialSet::empty(f.poset.clone());
    }
    // Δ-direction gluing inside each value
    for fi in 0..f.flags.len() {
        for x in 0..f.values[fi].simplex_count() {
            let n = f.values[fi].dim_of(x);
            if n == 0 {
                continue;
            }
            for i in 0..=n {
                let stored = f.values[fi].face_of_nd(x, i).clone();
                let m = n - 1;
                let span = nodes.len();
                nodes.push(prisms[&(fi, m)].strat.clone());
                let coface: Vec<usize> = (0..n).map(|t| if t < i { t } else { t + 1 }).collect();
                arrows.push((
                    span,
                    copy_node[&(fi, x)],
                    prism_second_map(
                        &prisms[&(fi, m)],
                        &prisms[&(fi, n)],
                        &simplices[fi].space,
                        m,
                        n,
                        &coface,
                    ),
                ));
                let surj = word::as_surjection(&stored.word, m);
                let ydim = f.values[fi].dim_of(stored.nd);
                arrows.push((
                    span,
                    copy_node[&(fi, stored.nd)],
                    prism_second_map(
                        &prisms[&(fi, m)],
                        &prisms[&(fi, ydim)],
                        &simplices[fi].space,
                        m,
                        ydim,
                        &surj,
                    ),
                ));
            }
        }
    }
    // restriction gluing along covering inclusions of flags
    for (a, b) in Diagram::inclusion_pairs(&f.flags) {
        if f.flags[b].len() != f.flags[a].len() + 1 {
            continue;
        }
        let res = &f.restrictions[&(a, b)];
        let incl = subflag_inclusion(&f.flags[a], &f.flags[b]);
        for xb in 0..f.values[b].simplex_count() {
            let n = f.values[b].dim_of(xb);
            let img = &res.images[xb];
            let span = nodes.len();
            nodes.push(prisms[&(a, n)].strat.clone());
            let cn = simplex_complex(n);
            let leg_b = crate::product::product_map(
                &prisms[&(a, n)].product,
                &prisms[&(b, n)].product,
                &simplices[b].space,
                &cn.complex,
                &incl,
                &SimplicialMap::identity(&cn.complex),
            );
            arrows.push((span, copy_node[&(b, xb)], leg_b));
            let surj = word::as_surjection(&img.word, n);
            let ydim = f.values[a].dim_of(img.nd);
            arrows.push((
                span,
                copy_node[&(a, img.nd)],
                prism_second_map(
                    &prisms[&(a, n)],
                    &prisms[&(a, ydim)],
                    &simplices[a].space,
                    n,
                    ydim,
                    &surj,
                ),
            ));
        }
    }
    stratified_colimit(&nodes, &arrows).strat
}

/// A map of diagrams: one simplicial map per flag, natural in restrictions.
#[derive(Clone, Debug)]
pub struct DiagramMap {
    pub maps: Vec<SimplicialMap>,
}

impl DiagramMap {
    pub fn validate(&self, src: &Diagram, dst: &Diagram) -> Result<()> {
        if src.flags != dst.flags {
            return Err(Error::Malformed("diagram index mismatch".into()));
        }
        for (i, m) in self.maps.iter().enumerate() {
            m.validate(&src.values[i], &dst.values[i])?;
        }
        for (&(a, b), res_src) in &src.restrictions {
            let lhs = self.maps[a].compose(&dst.values[a], res_src);
            let rhs = dst.restrictions[&(a, b)].compose(&dst.values[a], &self.maps[b]);
            if lhs != rhs {
                return Err(Error::Malformed(format!(
                    "diagram map not natural on {a} <= {b}"
                )));
            }
        }
        Ok(())
    }
}

/// Verdict for one flag in a levelwise comparison.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LevelVerdict {
    pub flag: Vec<String>,
    pub pi0_ok: bool,
    pub homology_ok: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct LevelwiseReport {
    pub levels: Vec<LevelVerdict>,
    pub all_pass: bool,
}

impl LevelwiseReport {
    pub fn first_failure(&self) -> Option<&LevelVerdict> {
        self.levels.iter().find(|l| !(l.pi0_ok && l.homology_ok))
    }
}

/// Compare a diagram map levelwise: pi_0 must be induced bijectively and
/// homology groups must agree up to `max_deg`.
pub fn levelwise_compare(
    f: &DiagramMap,
    src: &Diagram,
    dst: &Diagram,
    max_deg: usize,
) -> Result<LevelwiseReport> {
    let idx: Vec<usize> = (0..src.flags.len()).collect();
    let levels = crate::exec::par_map(idx, |i| {
        let x = &src.values[i];
        let y = &dst.values[i];
        let pi0_ok = pi0_induced_bijection(x, y, &f.maps[i]);
        let hx = homology(x, max_deg)?;
        let hy = homology(y, max_deg)?;
        Ok(LevelVerdict {
            flag: src.flags[i]
                .entries
                .iter()
                .map(|&e| src.poset.label(e).to_string())
                .collect(),
            pi0_ok,
            homology_ok: hx == hy,
        })
    });
    let levels: Vec<LevelVerdict> = levels.into_iter().collect::<Result<_>>()?;
    let all_pass = levels.iter().all(|l| l.pi0_ok && l.homology_ok);
    Ok(LevelwiseReport { levels, all_pass })
}

/// Does `f` induce a bijection on connected components?
pub fn pi0_induced_bijection(x: &SimplicialSet, y: &SimplicialSet, f: &SimplicialMap) -> bool {
    let (cx, nx) = x.pi0();
    let (cy, ny) = y.pi0();
    if nx != ny {
        return false;
    }
    let mut assigned: Vec<Option<usize>> = vec![None; nx];
    let mut hit = vec![false; ny];
    for (pos, &v) in x.in_dim(0).iter().enumerate() {
        let img = &f.images[v];
        debug_assert!(img.is_nd());
        let cimg = y.pi0_of_vertex(&cy, img.nd);
        match assigned[cx[pos]] {
            None => {
                assigned[cx[pos]] = Some(cimg);
                if hit[cimg] {
                    return false;
                }
                hit[cimg] = true;
            }
            Some(c) if c == cimg => {}
            Some(_) => return false,
        }
    }
    assigned.iter().all(|a| a.is_some())
}

/// Identity diagram map.
pub fn identity_map(d: &Diagram) -> DiagramMap {
    DiagramMap {
        maps: d.values.iter().map(SimplicialMap::identity).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Flag;
    use crate::sset::SimplexRef;
    use crate::stratified::stratified_isomorphic;

    fn p2() -> Arc<Poset> {
        Arc::new(Poset::chain(2))
    }

    #[test]
    fn generator_shape_and_cofibrancy() {
        let p = p2();
        let i0 = RegularFlag::new(&p, vec![0]).unwrap();
        let g = generator(&p, &SimplicialSet::point(), &i0);
        g.validate().unwrap();
        assert_eq!(g.value(&i0).simplex_count(), 1);
        let i1 = RegularFlag::new(&p, vec![1]).unwrap();
        let i01 = RegularFlag::new(&p, vec![0, 1]).unwrap();
        assert!(g.value(&i1).is_empty());
        assert!(g.value(&i01).is_empty());
        assert!(is_cofibrant(&g).0);

        let d1 = SimplicialSet::simplex(1);
        let keep: BTreeSet<usize> = (0..2).collect();
        let (bd1, _) = d1.subcomplex(&keep);
        let g = generator(&p, &bd1, &i01);
        g.validate().unwrap();
        assert_eq!(g.value(&i0).in_dim(0).len(), 2);
        assert!(is_cofibrant(&g).0);
    }

    #[test]
    fn non_mono_restriction_is_not_cofibrant() {
        let p = p2();
        let flags = p.regular_flags();
        let pt = SimplicialSet::point();
        let (two, _) = pt.disjoint_union(&pt);
        let values = vec![pt.clone(), pt.clone(), two.clone()];
        let mut restrictions = BTreeMap::new();
        for (a, b) in Diagram::inclusion_pairs(&flags) {
            let m = SimplicialMap::new(vec![SimplexRef::nd(0); values[b].simplex_count()]);
            restrictions.insert((a, b), m);
        }
        let f = Diagram {
            poset: p,
            flags,
            values,
            restrictions,
        };
        f.validate().unwrap();
        let (ok, cert) = is_cofibrant(&f);
        assert!(!ok);
        assert!(matches!(cert, Some(CofibrancyFailure::NotMono { .. })));
    }

    #[test]
    fn c_p_of_representable_is_stratified_simplex() {
        let p = p2();
        let i01 = RegularFlag::new(&p, vec![0, 1]).unwrap();
        let g = generator(&p, &SimplicialSet::point(), &i01);
        let c = c_p(&g);
        let expected = standard_simplex(&p, &Flag::new(&p, vec![0, 1]).unwrap());
        assert!(stratified_isomorphic(&c, &expected));
    }

    #[test]
    fn c_p_of_empty_diagram_is_empty() {
        let p = p2();
        let flags = p.regular_flags();
        let values = vec![SimplicialSet::empty(); flags.len()];
        let mut restrictions = BTreeMap::new();
        for (a, b) in Diagram::inclusion_pairs(&flags) {
            restrictions.insert((a, b), SimplicialMap::new(Vec::new()));
        }
        let f = Diagram {
            poset: p,
            flags,
            values,
            restrictions,
        };
        assert!(c_p(&f).space.is_empty());
    }

    #[test]
    fn c_p_preserves_disjoint_union_of_generators() {
        // C_P(S^I ⊔ shape at two incomparable vertices) = two stratified points
        let p = p2();
        let i0 = RegularFlag::new(&p, vec![0]).unwrap();
        let g = generator(&p, &SimplicialSet::point(), &i0);
        let c = c_p(&g);
        assert_eq!(c.space.simplex_count(), 1);
        assert_eq!(c.flags[0].entries, vec![0]);
    }

    #[test]
    fn levelwise_identity_passes() {
        let p = p2();
        let i0 = RegularFlag::new(&p, vec![0]).unwrap();
        let g = generator(&p, &SimplicialSet::simplex(1), &i0);
        let id = identity_map(&g);
        id.validate(&g, &g).unwrap();
        let rep = levelwise_compare(&id, &g, &g, 2).unwrap();
        assert!(rep.all_pass);
    }
}
