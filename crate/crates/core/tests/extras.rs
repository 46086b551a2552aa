//! Cross-module properties: the straightening homotopy for vertical
//! replacement, the adjunction triangle for the subdivision, congruence of
//! homotopy classes, and counting identities between mapping spaces and
//! homotopy links.

use std::collections::BTreeMap;
use std::sync::Arc;
use strat_core::links::{holink, link_system};
use strat_core::poset::{Flag, Poset, RegularFlag};
use strat_core::sset::{SimplexRef, SimplicialSet};
use strat_core::stratified::{
    enumerate_stratified_maps, homotopy_classes, standard_simplex, stratified_isomorphic,
    StratifiedMap, StratifiedSimplicialSet,
};
use strat_core::vertical::{is_vertical_map, verticalize, LabelledSimplicialSet, Verticalization};
use strat_core::{Budget, SimplicialMap};

fn p2() -> Arc<Poset> {
    Arc::new(Poset::chain(2))
}

/// Map between vertex-determined complexes given by a vertex function.
fn map_by_vertices(
    src: &SimplicialSet,
    dst: &SimplicialSet,
    f: impl Fn(usize) -> usize,
) -> Option<SimplicialMap> {
    // index nd simplices of dst by their vertex tuples
    let mut by_vertices: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for nd in 0..dst.simplex_count() {
        by_vertices.insert(dst.vertices_of(&SimplexRef::nd(nd)), nd);
    }
    let mut images = Vec::with_capacity(src.simplex_count());
    for nd in 0..src.simplex_count() {
        let tuple: Vec<usize> = src
            .vertices_of(&SimplexRef::nd(nd))
            .into_iter()
            .map(&f)
            .collect();
        let mut dedup = tuple.clone();
        dedup.dedup();
        let target = *by_vertices.get(&dedup)?;
        images.push(SimplexRef {
            nd: target,
            word: strat_core::word::repeats_word(&tuple),
        });
    }
    let m = SimplicialMap::new(images);
    m.validate(src, dst).ok()?;
    Some(m)
}

/// Vertices of a verticalization as (base-vertex id, stratum).
fn vertex_data(v: &Verticalization) -> Vec<(usize, usize)> {
    v.strat
        .space
        .in_dim(0)
        .iter()
        .map(|&z| {
            let (a, b) = &v.product.pairs[v.member[z]];
            (a.nd, v.nerve.flags[b.nd].entries[0])
        })
        .collect()
}

/// A stratum preserving self-map of `Δ¹ × Δ^{[0<1]}` that does not descend
/// to the base, straightened to a vertical one by the prism retraction.
#[test]
fn vertical_replacement_by_straightening() {
    let p = p2();
    let lab = RegularFlag::new(&p, vec![0, 1]).unwrap();
    let s = LabelledSimplicialSet::new(SimplicialSet::simplex(1), p.clone(), vec![lab; 3]).unwrap();
    let v = verticalize(&s);
    let verts = vertex_data(&v);
    let vertex_id = |base: usize, stratum: usize| -> usize {
        v.strat.space.in_dim(0)[verts
            .iter()
            .position(|&(b, q)| (b, q) == (base, stratum))
            .unwrap()]
    };
    let base_vertices = v.base.in_dim(0);
    // shear: collapse the stratum-0 row to the first column
    let shear_rule = |base: usize, stratum: usize| -> (usize, usize) {
        if stratum == 0 {
            (base_vertices[0], 0)
        } else {
            (base, 1)
        }
    };
    let shear = map_by_vertices(&v.strat.space, &v.strat.space, |w| {
        let pos = v.strat.space.in_dim(0).iter().position(|&x| x == w).unwrap();
        let (b, q) = verts[pos];
        let (b2, q2) = shear_rule(b, q);
        vertex_id(b2, q2)
    })
    .expect("shear extends");
    let shear = StratifiedMap::new(&v.strat, &v.strat, shear).expect("shear preserves strata");
    assert!(is_vertical_map(&shear, &v, &v).is_none());

    // straightening: H((x,p), e) = (shear-base(x, e ? max : p), p)
    let (cyl, e0, e1) = strat_core::stratified::cylinder(&v.strat);
    let sp = strat_core::stratified::stratified_product(&v.strat, &SimplicialSet::simplex(1));
    let d1 = SimplicialSet::simplex(1);
    let h = map_by_vertices(&cyl.space, &v.strat.space, |w| {
        let (xr, er) = sp.product.pair_of_ref(&v.strat.space, &d1, &SimplexRef::nd(w));
        let pos = v.strat.space.in_dim(0).iter().position(|&x| x == xr.nd).unwrap();
        let (b, q) = verts[pos];
        let eps = er.nd; // vertex of Δ¹
        let (b2, _) = shear_rule(b, if eps == 1 { 1 } else { q });
        vertex_id(b2, q)
    })
    .expect("straightening extends");
    let h = StratifiedMap::new(&cyl, &v.strat, h).expect("straightening preserves strata");
    // H starts at the shear and ends at a vertical map
    assert_eq!(h.compose(&v.strat, &e0).map, shear.map);
    let end = h.compose(&v.strat, &e1);
    let base_map = is_vertical_map(&end, &v, &v).expect("end of the homotopy is vertical");
    base_map.validate(&v.base, &v.base).unwrap();
}

/// The adjunction triangle: the counit after the subdivided unit is the
/// last vertex map.
#[test]
fn counit_triangle() {
    let p = p2();
    for entries in [vec![0], vec![0, 1]] {
        let k = standard_simplex(&p, &Flag::new(&p, entries).unwrap());
        let dim_bound = k.space.dim().max(1);
        let ex = strat_core::subdivision::ex_p(&k, 1, dim_bound, Budget::default()).unwrap();
        let unit = strat_core::subdivision::iota(&k, &ex).unwrap();
        let sdp_k = strat_core::subdivision::sd_p(&k);
        let sdp_ex = strat_core::subdivision::sd_p(&ex.strat);
        let sd_unit = strat_core::subdivision::sd_p_map(&k, &ex.strat, &unit, &sdp_k, &sdp_ex);
        // counit: on the copy over an nd simplex (J, f) of Ex, the map f
        let cocone: Vec<SimplicialMap> = ex
            .realization
            .nd_elems
            .iter()
            .map(|(_, (_, f))| f.clone())
            .collect();
        let counit = sdp_ex.induced(cocone, &k.space).expect("counit cocone commutes");
        let lv = strat_core::subdivision::lv_p(&k, &sdp_k);
        assert_eq!(counit.compose(&k.space, &sd_unit.map), lv.map);
    }
}

/// Composition descends to homotopy classes on a small instance.
#[test]
fn homotopy_classes_are_a_congruence() {
    let p = p2();
    let k = standard_simplex(&p, &Flag::new(&p, vec![0]).unwrap());
    let l = standard_simplex(&p, &Flag::new(&p, vec![0, 0]).unwrap());
    let m = standard_simplex(&p, &Flag::new(&p, vec![0, 0, 0]).unwrap());
    let budget = Budget::default();
    let (kl_maps, kl_classes) = homotopy_classes(&k, &l, budget).unwrap();
    let (_km_maps, km_classes_of) = {
        let (maps, classes) = homotopy_classes(&k, &m, budget).unwrap();
        (maps.clone(), move |f: &StratifiedMap| {
            classes[maps.binary_search(f).unwrap()]
        })
    };
    let lm_maps = enumerate_stratified_maps(&l, &m, budget).unwrap();
    for g in &lm_maps {
        for (i, f1) in kl_maps.iter().enumerate() {
            for (j, f2) in kl_maps.iter().enumerate() {
                if kl_classes[i] == kl_classes[j] {
                    let a = g.compose(&k, f1);
                    let b = g.compose(&k, f2);
                    assert_eq!(km_classes_of(&a), km_classes_of(&b));
                }
            }
        }
    }
}

/// Stratified maps out of the realization of the representable diagram at a
/// flag are the vertices of the homotopy link at that flag.
#[test]
fn representable_adjunction_counts() {
    let p = p2();
    let budget = Budget::default();
    for entries in [vec![0, 1], vec![0, 0, 1]] {
        let k = standard_simplex(&p, &Flag::new(&p, entries).unwrap());
        for i in p.regular_flags() {
            let g = strat_core::diagrams::generator(&p, &SimplicialSet::point(), &i);
            let c = strat_core::diagrams::c_p(&g);
            let maps = enumerate_stratified_maps(&c, &k, budget).unwrap();
            let h = holink(&k, &i, 0, budget).unwrap();
            assert_eq!(maps.len(), h.space.in_dim(0).len(), "flag {:?}", i.entries);
        }
    }
}

/// A homotopy link is empty exactly when there is no stratified map from
/// the stratified simplex of the flag.
#[test]
fn holink_emptiness_is_vertex_level() {
    let budget = Budget::default();
    for e in strat_core::corpus::corpus() {
        for i in e.k.poset.regular_flags() {
            let delta_i = standard_simplex(&e.k.poset, &i.as_flag());
            let maps = enumerate_stratified_maps(&delta_i, &e.k, budget).unwrap();
            let h = holink(&e.k, &i, 0, budget).unwrap();
            assert_eq!(maps.is_empty(), h.space.is_empty());
        }
    }
}

/// Links commute with disjoint unions.
#[test]
fn link_of_disjoint_union() {
    let p = p2();
    let k = standard_simplex(&p, &Flag::new(&p, vec![0, 1]).unwrap());
    let l = standard_simplex(&p, &Flag::new(&p, vec![0, 0]).unwrap());
    let (space, offset) = k.space.disjoint_union(&l.space);
    let mut flags = k.flags.clone();
    flags.extend(l.flags.iter().cloned());
    let _ = offset;
    let union = StratifiedSimplicialSet::new(space, p.clone(), flags).unwrap();
    for i in p.regular_flags() {
        let a = strat_core::links::link(&k, &i);
        let b = strat_core::links::link(&l, &i);
        let u = strat_core::links::link(&union, &i);
        let (expected, _) = a.disjoint_union(&b);
        assert!(strat_core::iso::are_isomorphic(&u, &expected));
    }
}

/// Two-of-three at probe level on an admissible horn with a homotopy
/// inverse. No strict retraction exists (the inclusion has no stratified
/// section), so the inverse is found through homotopy classes.
#[test]
fn probe_two_of_three_spot_check() {
    let p = p2();
    let budget = Budget::default();
    let j = Flag::new(&p, vec![0, 0, 1]).unwrap();
    let (h, incl, full) = strat_core::stratified::horn(&p, &j, 1).unwrap();
    // no strict section: r ∘ incl = id has no solution
    let candidates = enumerate_stratified_maps(&full, &h, budget).unwrap();
    assert!(candidates
        .iter()
        .all(|r| r.compose(&h, &incl).map != SimplicialMap::identity(&h.space)));
    // but a homotopy inverse exists
    let (hh_maps, hh_classes) = homotopy_classes(&h, &h, budget).unwrap();
    let id_class = hh_classes[hh_maps
        .binary_search(&StratifiedMap::identity(&h))
        .unwrap()];
    let g = candidates
        .into_iter()
        .find(|g| {
            let gi = g.compose(&h, &incl);
            hh_classes[hh_maps.binary_search(&gi).unwrap()] == id_class
        })
        .expect("homotopy inverse exists");
    use strat_core::weq::{probe, ProbeMode, Verdict};
    let a = probe(&incl, &h, &full, 2, ProbeMode::Link, budget).unwrap();
    let b = probe(&g, &full, &h, 2, ProbeMode::Link, budget).unwrap();
    let composite = g.compose(&h, &incl);
    let c = probe(&composite, &h, &h, 2, ProbeMode::Link, budget).unwrap();
    assert!(a.verdict == Verdict::PassesAllProbes);
    assert!(b.verdict == Verdict::PassesAllProbes);
    assert!(c.verdict == Verdict::PassesAllProbes);
}

/// The naive right adjoint embeds in the full one over the whole corpus of
/// flags for a small object, level by level.
#[test]
fn ex_naiv_embeds_in_ex() {
    let p = p2();
    let k = standard_simplex(&p, &Flag::new(&p, vec![0, 1]).unwrap());
    let budget = Budget::default();
    let ex = strat_core::subdivision::ex_p(&k, 1, 2, budget).unwrap();
    let naive = strat_core::subdivision::ex_p_naiv(&k, 1, 2, budget).unwrap();
    let incl = strat_core::subdivision::ex_naiv_into_ex(&k, &naive, &ex).unwrap();
    assert!(incl.map.is_mono());
}

/// Stratum decomposition: constant-flag simplices are partitioned by their
/// stratum over the whole corpus.
#[test]
fn strata_partition_constant_simplices() {
    for e in strat_core::corpus::corpus() {
        let constant: Vec<usize> = (0..e.k.space.simplex_count())
            .filter(|&nd| {
                e.k.flags[nd]
                    .entries
                    .iter()
                    .all(|&q| q == e.k.flags[nd].entries[0])
            })
            .collect();
        let mut covered = 0;
        for q in 0..e.k.poset.len() {
            covered += strat_core::stratified::stratum(&e.k, q).simplex_count();
        }
        assert_eq!(covered, constant.len());
    }
}

/// The stratified subdivision embeds in `sd(Δ^n) × N(P)` with second
/// projection as stratification: flags of chains are exactly recorded.
#[test]
fn sd_p_flags_are_second_components() {
    let p = p2();
    let j = Flag::new(&p, vec![0, 0, 1]).unwrap();
    let s = strat_core::subdivision::sd_p_simplex(&p, &j);
    for (nd, chain) in s.cc.chains.iter().enumerate() {
        let strata: Vec<usize> = chain.iter().map(|(_, q)| *q).collect();
        assert_eq!(s.strat.flags[nd].entries, strata);
    }
}

/// Verticalizations agree with the left adjoint on labelled data from the
/// corpus (the commuting square of the bridge, object level).
#[test]
fn bridge_square_on_a_hand_labelled_object() {
    let p = p2();
    // edge whose closure exits into both strata
    let labels = vec![
        RegularFlag::new(&p, vec![0, 1]).unwrap(),
        RegularFlag::new(&p, vec![1]).unwrap(),
        RegularFlag::new(&p, vec![1]).unwrap(),
    ];
    let space = SimplicialSet::simplex(1);
    let s = LabelledSimplicialSet::new(space, p.clone(), labels).unwrap();
    let u = strat_core::vertical::functor_u(&s);
    assert!(strat_core::diagrams::is_cofibrant(&u).0);
    let c = strat_core::diagrams::c_p(&u);
    let v = verticalize(&s);
    assert!(stratified_isomorphic(&c, &v.strat));
    let s2 = strat_core::vertical::diagram_to_labelled(&u).unwrap();
    assert!(strat_core::vertical::labelled_isomorphic(&s, &s2));
}

/// Links of the last vertex map target: a quick agreement between the two
/// probe backends on the corpus at the comparison degrees.
#[test]
fn link_and_holink_probe_verdicts_agree_on_lv() {
    use strat_core::weq::{probe, ProbeMode, Verdict};
    let budget = Budget::default();
    for e in strat_core::corpus::corpus().into_iter().take(3) {
        let sdp = strat_core::subdivision::sd_p(&e.k);
        let lv = strat_core::subdivision::lv_p(&e.k, &sdp);
        let a = probe(&lv, &sdp.strat, &e.k, 1, ProbeMode::Link, budget).unwrap();
        let b = probe(&lv, &sdp.strat, &e.k, 1, ProbeMode::Holink, budget).unwrap();
        assert_eq!(a.verdict, Verdict::PassesAllProbes, "{}", e.name);
        assert_eq!(b.verdict, Verdict::PassesAllProbes, "{}", e.name);
    }
    // past desk scale the enumeration fails explicitly rather than wrongly
    let big = &strat_core::corpus::corpus()[3];
    let sdp = strat_core::subdivision::sd_p(&big.k);
    let lv = strat_core::subdivision::lv_p(&big.k, &sdp);
    let err = probe(&lv, &sdp.strat, &big.k, 1, ProbeMode::Holink, Budget(100_000));
    assert!(matches!(err, Err(strat_core::Error::BudgetExceeded { .. })));
}

/// A levelwise comparison fails at a length-one flag when one stratum has a
/// circle where the other has a point.
#[test]
fn stratum_level_homology_mismatch_is_detected() {
    let p = p2();
    let flags = p.regular_flags();
    // circle with one vertex and one edge
    let mut circle = SimplicialSet::empty();
    let v = circle.push_simplex(0, Vec::new()).unwrap();
    circle
        .push_simplex(1, vec![SimplexRef::nd(v), SimplexRef::nd(v)])
        .unwrap();
    let pt = SimplicialSet::point();
    let build = |at_zero: &SimplicialSet| -> strat_core::diagrams::Diagram {
        let values: Vec<SimplicialSet> = flags
            .iter()
            .map(|f| {
                if f.entries == vec![0] {
                    at_zero.clone()
                } else {
                    SimplicialSet::empty()
                }
            })
            .collect();
        let mut restrictions = BTreeMap::new();
        for (a, b) in strat_core::diagrams::Diagram::inclusion_pairs(&flags) {
            restrictions.insert((a, b), SimplicialMap::new(Vec::new()));
        }
        strat_core::diagrams::Diagram {
            poset: p.clone(),
            flags: flags.clone(),
            values,
            restrictions,
        }
    };
    let src = build(&circle);
    let dst = build(&pt);
    let collapse = SimplicialMap::new(vec![
        SimplexRef::nd(0),
        SimplexRef {
            nd: 0,
            word: vec![0],
        },
    ]);
    let maps: Vec<SimplicialMap> = flags
        .iter()
        .map(|f| {
            if f.entries == vec![0] {
                collapse.clone()
            } else {
                SimplicialMap::new(Vec::new())
            }
        })
        .collect();
    let dm = strat_core::diagrams::DiagramMap { maps };
    dm.validate(&src, &dst).unwrap();
    let rep = strat_core::diagrams::levelwise_compare(&dm, &src, &dst, 1).unwrap();
    assert!(!rep.all_pass);
    let fail = rep.first_failure().unwrap();
    assert_eq!(fail.flag, vec!["0".to_string()]);
    assert!(fail.pi0_ok && !fail.homology_ok);
}

/// The diagram of homotopy links of the last vertex map passes the
/// levelwise probe on a small object.
#[test]
fn diagram_probe_of_last_vertex_passes() {
    let p = p2();
    let budget = Budget::default();
    let k = standard_simplex(&p, &Flag::new(&p, vec![0, 1]).unwrap());
    let sdp = strat_core::subdivision::sd_p(&k);
    let lv = strat_core::subdivision::lv_p(&k, &sdp);
    let (d_src, h_src) = strat_core::links::diagram_d(&sdp.strat, 1, budget).unwrap();
    let (d_dst, h_dst) = strat_core::links::diagram_d(&k, 1, budget).unwrap();
    let maps: Vec<SimplicialMap> = (0..d_src.flags.len())
        .map(|i| strat_core::links::induced_holink_map(&lv, &k, &h_src[i], &h_dst[i]))
        .collect();
    let dm = strat_core::diagrams::DiagramMap { maps };
    dm.validate(&d_src, &d_dst).unwrap();
    let (rep, verdict) = strat_core::weq::probe_diagram(&dm, &d_src, &d_dst, 0).unwrap();
    assert!(rep.all_pass);
    assert_eq!(verdict, strat_core::weq::Verdict::PassesAllProbes);
}

/// Induced link maps are functorial on a composite of two inclusions.
#[test]
fn induced_link_maps_compose() {
    let p = p2();
    let j = Flag::new(&p, vec![0, 0, 1]).unwrap();
    let (h, incl_h, full) = strat_core::stratified::horn(&p, &j, 1).unwrap();
    // the boundary sits between the horn and the simplex
    let (b, incl_b, _) = strat_core::stratified::boundary(&p, &j);
    // factor the horn inclusion through the boundary
    let horn_to_boundary = {
        let maps = enumerate_stratified_maps(&h, &b, Budget::default()).unwrap();
        maps.into_iter()
            .find(|m| incl_b.compose(&full, m).map == incl_h.map)
            .expect("horn factors through the boundary")
    };
    let sys_h = link_system(&h);
    let sys_b = link_system(&b);
    let sys_f = link_system(&full);
    for i in p.regular_flags() {
        let m1 = strat_core::links::induced_link_map(&horn_to_boundary, &h, &b, &sys_h, &sys_b, &i);
        let m2 = strat_core::links::induced_link_map(&incl_b, &b, &full, &sys_b, &sys_f, &i);
        let direct = strat_core::links::induced_link_map(&incl_h, &h, &full, &sys_h, &sys_f, &i);
        let (_, _) = (sys_f.link(&i), ());
        let (lf, _) = sys_f.link(&i);
        let _ = lf;
        let composed = m2.compose(&sys_f.link(&i).0, &m1);
        assert_eq!(composed, direct, "flag {:?}", i.entries);
    }
}
