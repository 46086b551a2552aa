//! The acceptance suite: one runner per criterion, each deciding pass/fail
//! at its pinned tolerance (all criteria here are exact).

use crate::corpus::corpus;
use crate::diagrams::{c_p, is_cofibrant};
use crate::enumerate::Budget;
use crate::homology::homology;
use crate::links::{holink, link_system};
use crate::pairing::{build_pairing_ex, build_pairing_ex_naiv, check_pairing};
use crate::poset::{Flag, Poset};
use crate::stratified::{
    boundary, horn, is_admissible, is_stratified_homotopy_equivalence, standard_simplex,
    stratified_isomorphic,
};
use crate::subdivision::{
    sd_p, sd_p_naiv_simplex, sd_p_simplex, t_section_witness, t_simplex, verify_identities,
};
use crate::vertical::{diagram_to_labelled, functor_u, label_subdivision, labelled_isomorphic, verticalize};
use crate::weq::{probe, probe_last_vertex, ProbeMode, Verdict};
use std::sync::Arc;
use std::time::Instant;

#[derive(Clone, Debug, serde::Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub details: String,
    pub millis: u128,
}

fn run<F: FnOnce() -> (bool, String)>(id: usize, name: &'static str, f: F) -> CriterionResult {
    let start = Instant::now();
    let (pass, details) = f();
    CriterionResult {
        id,
        name,
        pass,
        details,
        millis: start.elapsed().as_millis(),
    }
}

fn p2() -> Arc<Poset> {
    Arc::new(Poset::chain(2))
}

fn p3() -> Arc<Poset> {
    Arc::new(Poset::chain(3))
}

/// 1. The identity suite over the chain with three elements, flags of
/// length at most 4, all in-range indices, zero failures.
pub fn criterion_identity_suite() -> CriterionResult {
    run(1, "identity suite (1')-(10') over {0<1<2}, len <= 4", || {
        let rep = verify_identities(&p3(), 4);
        let failures: Vec<_> = rep.instances.iter().filter(|i| !i.pass).collect();
        (
            rep.all_pass,
            format!(
                "{} instances, {} failures",
                rep.instances.len(),
                failures.len()
            ),
        )
    })
}

/// 2. `t_J` is degreewise surjective up to dimension 3 for all flags of
/// length at most 4 over the chain with three elements.
pub fn criterion_t_surjective() -> CriterionResult {
    run(2, "t_J degreewise surjective (dim <= 3, len <= 4, {0<1<2})", || {
        let p = p3();
        let flags = p.flags_up_to(4);
        let results = crate::exec::par_map(flags, |j| {
            let sdp = sd_p_simplex(&p, &j);
            let naiv = sd_p_naiv_simplex(&p, &j);
            let t = t_simplex(&sdp, &naiv);
            for nd in 0..naiv.cc.complex.simplex_count() {
                if naiv.cc.complex.dim_of(nd) > 3 {
                    continue;
                }
                match t_section_witness(&sdp, &naiv, nd) {
                    Some(w) if t.images[w] == crate::sset::SimplexRef::nd(nd) => {}
                    _ => return Some(j.entries.clone()),
                }
            }
            None
        });
        let failures: Vec<_> = results.into_iter().flatten().collect();
        (failures.is_empty(), format!("failures: {failures:?}"))
    })
}

/// 3. The boundary of the fully regular 2-simplex: empty top homotopy link
/// versus non-empty, agreement at all proper subflags.
pub fn criterion_example_boundary() -> CriterionResult {
    run(3, "boundary vs simplex at the top flag and below", || {
        let p = p3();
        let j = Flag::new(&p, vec![0, 1, 2]).unwrap();
        let top = j.as_regular().unwrap();
        let full = standard_simplex(&p, &j);
        let (b, incl, _) = boundary(&p, &j);
        let budget = Budget::default();
        let hb = match holink(&b, &top, 0, budget) {
            Ok(h) => h,
            Err(e) => return (false, e.to_string()),
        };
        let hf = match holink(&full, &top, 0, budget) {
            Ok(h) => h,
            Err(e) => return (false, e.to_string()),
        };
        if !hb.space.is_empty() || hf.space.is_empty() {
            return (false, "top holink emptiness mismatch".into());
        }
        // all proper subflags: links agree in pi0, H0, H1
        let sys_b = link_system(&b);
        let sys_f = link_system(&full);
        for i in top.subflags() {
            if i == top {
                continue;
            }
            let m = crate::links::induced_link_map(&incl, &b, &full, &sys_b, &sys_f, &i);
            let (lb, _) = sys_b.link(&i);
            let (lf, _) = sys_f.link(&i);
            let pi0_ok = crate::diagrams::pi0_induced_bijection(&lb, &lf, &m);
            let hb = homology(&lb, 1).unwrap();
            let hf = homology(&lf, 1).unwrap();
            if !pi0_ok || hb != hf {
                return (false, format!("disagreement at {:?}", i.entries));
            }
        }
        (true, "top flag distinguishes, all proper subflags agree".into())
    })
}

/// 4. Links and truncated homotopy links agree in pi_0, H_0, H_1 over the
/// whole corpus at every flag.
pub fn criterion_link_holink_agreement() -> CriterionResult {
    run(4, "link vs holink (pi0, H0, H1) over the corpus", || {
        let budget = Budget::default();
        let entries = corpus();
        let tasks: Vec<(usize, crate::poset::RegularFlag)> = entries
            .iter()
            .enumerate()
            .flat_map(|(idx, e)| {
                e.k.poset
                    .regular_flags()
                    .into_iter()
                    .map(move |i| (idx, i))
            })
            .collect();
        let failures: Vec<String> = crate::exec::par_map(tasks, |(idx, i)| {
            let k = &entries[idx].k;
            let sys = link_system(k);
            let (l, _) = sys.link(&i);
            let h = match holink(k, &i, 2, budget) {
                Ok(h) => h,
                Err(e) => return Some(format!("{}: {e}", entries[idx].name)),
            };
            let (_, pi0_l) = l.pi0();
            let (_, pi0_h) = h.space.pi0();
            let hl = homology(&l, 1).unwrap();
            let hh = homology(&h.space, 1).unwrap();
            if pi0_l != pi0_h || hl != hh {
                return Some(format!(
                    "{} at {:?}: link pi0={pi0_l} H={:?} vs holink pi0={pi0_h} H={:?}",
                    entries[idx].name, i.entries, hl, hh
                ));
            }
            None
        })
        .into_iter()
        .flatten()
        .collect();
        (failures.is_empty(), format!("failures: {failures:?}"))
    })
}

/// 5. The verticalization of the labelled subdivision is the stratified
/// subdivision, for every corpus object.
pub fn criterion_verticalization() -> CriterionResult {
    run(5, "verticalize(label_subdivision(K)) = sd_P(K) on the corpus", || {
        let entries = corpus();
        let failures: Vec<&str> = crate::exec::par_map(entries, |e| {
            let (s, _) = label_subdivision(&e.k);
            let v = verticalize(&s);
            let sdp = sd_p(&e.k);
            if stratified_isomorphic(&v.strat, &sdp.strat) {
                None
            } else {
                Some(e.name)
            }
        })
        .into_iter()
        .flatten()
        .collect();
        (failures.is_empty(), format!("failures: {failures:?}"))
    })
}

/// 6. Labelled objects produce cofibrant diagrams, `C_P` recovers the
/// verticalization, and the diagram round-trips to the labelled object.
pub fn criterion_cofibrancy_bridge() -> CriterionResult {
    run(6, "U cofibrant, C_P(U(S)) = V(S), diagram round-trip", || {
        let entries = corpus();
        let failures: Vec<String> = crate::exec::par_map(entries, |e| {
            let (s, _) = label_subdivision(&e.k);
            let u = functor_u(&s);
            let (cof, cert) = is_cofibrant(&u);
            if !cof {
                return Some(format!("{}: not cofibrant: {cert:?}", e.name));
            }
            let v = verticalize(&s);
            let c = c_p(&u);
            if !stratified_isomorphic(&c, &v.strat) {
                return Some(format!("{}: C_P(U(S)) differs from V(S)", e.name));
            }
            match diagram_to_labelled(&u) {
                Ok(s2) if labelled_isomorphic(&s, &s2) => None,
                Ok(_) => Some(format!("{}: round-trip not isomorphic", e.name)),
                Err(err) => Some(format!("{}: {err}", e.name)),
            }
        })
        .into_iter()
        .flatten()
        .collect();
        (failures.is_empty(), format!("failures: {failures:?}"))
    })
}

/// 7. The pairings on both right adjoints are proper, admissible, and
/// regular for the three designated objects at dimension bound 2.
pub fn criterion_pairings() -> CriterionResult {
    run(7, "pairings on Ex_P^naiv and Ex_P (dim bound 2)", || {
        let p = p2();
        let budget = Budget::default();
        let targets = vec![
            ("point-0", vec![0]),
            ("interval-01", vec![0, 1]),
            ("triangle-001", vec![0, 0, 1]),
        ];
        let failures: Vec<String> = crate::exec::par_map(targets, |(name, entries)| {
            let k = standard_simplex(&p, &Flag::new(&p, entries).unwrap());
            let naive = build_pairing_ex_naiv(&k, 2, budget)
                .and_then(|(pairing, _)| check_pairing(&pairing));
            let full = build_pairing_ex(&k, 2, budget)
                .and_then(|(pairing, _)| check_pairing(&pairing));
            match (naive, full) {
                (Ok(a), Ok(b)) if a.all() && b.all() => None,
                (a, b) => Some(format!("{name}: naive {a:?}, ex {b:?}")),
            }
        })
        .into_iter()
        .flatten()
        .collect();
        (failures.is_empty(), format!("failures: {failures:?}"))
    })
}

/// 8. Probes: last vertex maps pass everywhere; admissible horn inclusions
/// of length at most 3 pass and are stratified homotopy equivalences; the
/// boundary inclusion of the regular 2-simplex is refuted at the top flag.
pub fn criterion_probes() -> CriterionResult {
    run(8, "probes: l.v_P, admissible horns, boundary refutation", || {
        let budget = Budget::default();
        let entries = corpus();
        let lv_failures: Vec<&str> = crate::exec::par_map(entries, |e| {
            match probe_last_vertex(&e.k, 2, ProbeMode::Link, budget) {
                Ok(rep) if rep.verdict == Verdict::PassesAllProbes => None,
                _ => Some(e.name),
            }
        })
        .into_iter()
        .flatten()
        .collect();
        if !lv_failures.is_empty() {
            return (false, format!("last vertex failures: {lv_failures:?}"));
        }
        let p = p3();
        let mut horn_tasks = Vec::new();
        for j in p.flags_up_to(3) {
            if j.len() < 2 {
                continue;
            }
            for k in 0..j.len() {
                if is_admissible(&j, k) {
                    horn_tasks.push((j.clone(), k));
                }
            }
        }
        let horn_failures: Vec<String> = crate::exec::par_map(horn_tasks, |(j, k)| {
            let (h, incl, full) = horn(&p, &j, k).unwrap();
            let rep = match probe(&incl, &h, &full, 2, ProbeMode::Link, budget) {
                Ok(r) => r,
                Err(e) => return Some(format!("{:?}/{k}: {e}", j.entries)),
            };
            if rep.verdict != Verdict::PassesAllProbes {
                return Some(format!("{:?}/{k}: probe refuted", j.entries));
            }
            match is_stratified_homotopy_equivalence(&incl, &h, &full, budget) {
                Ok(true) => None,
                _ => Some(format!("{:?}/{k}: not certified an equivalence", j.entries)),
            }
        })
        .into_iter()
        .flatten()
        .collect();
        if !horn_failures.is_empty() {
            return (false, format!("horn failures: {horn_failures:?}"));
        }
        let j = Flag::new(&p, vec![0, 1, 2]).unwrap();
        let (b, incl, full) = boundary(&p, &j);
        match probe(&incl, &b, &full, 2, ProbeMode::Link, budget) {
            Ok(rep)
                if rep.verdict == Verdict::Refuted
                    && rep.certificate
                        == Some(vec!["0".into(), "1".into(), "2".into()]) =>
            {
                (true, "all probes as expected".into())
            }
            Ok(rep) => (false, format!("boundary inclusion: {:?}", rep.verdict)),
            Err(e) => (false, e.to_string()),
        }
    })
}

/// 9. For every admissible horn of length at most 4 and every regular flag,
/// the induced map of links is an isomorphism or both links are homologically
/// trivial.
pub fn criterion_link_horns() -> CriterionResult {
    run(9, "links of admissible horns (len <= 4, {0<1<2})", || {
        let p = p3();
        let mut tasks = Vec::new();
        for j in p.flags_up_to(4) {
            if j.len() < 2 {
                continue;
            }
            for k in 0..j.len() {
                if is_admissible(&j, k) {
                    tasks.push((j.clone(), k));
                }
            }
        }
        let failures: Vec<String> = crate::exec::par_map(tasks, |(j, k)| {
            let (h, incl, full) = horn(&p, &j, k).unwrap();
            let sys_h = link_system(&h);
            let sys_f = link_system(&full);
            for i in p.regular_flags() {
                let m = crate::links::induced_link_map(&incl, &h, &full, &sys_h, &sys_f, &i);
                let (lh, _) = sys_h.link(&i);
                let (lf, _) = sys_f.link(&i);
                let iso = m.is_mono() && lh.simplex_count() == lf.simplex_count();
                if iso {
                    continue;
                }
                let d = lf.dim().max(1);
                let a = homology(&lh, d).unwrap();
                let b = homology(&lf, d).unwrap();
                if !(a.is_point_like() && b.is_point_like()) {
                    return Some(format!("{:?}/{k} at {:?}", j.entries, i.entries));
                }
            }
            None
        })
        .into_iter()
        .flatten()
        .collect();
        (failures.is_empty(), format!("failures: {failures:?}"))
    })
}

/// 10. Core engine: simplex and sphere homology, subdivision invariance,
/// product counts, simplicial identities.
pub fn criterion_core_engine() -> CriterionResult {
    run(10, "core engine: homology, sd invariance, products", || {
        use crate::sset::SimplicialSet;
        for n in 0..=3usize {
            let d = SimplicialSet::simplex(n);
            let h = homology(&d, 3).unwrap();
            if !h.is_point_like() {
                return (false, format!("homology of the {n}-simplex"));
            }
            if n >= 1 {
                let keep: std::collections::BTreeSet<usize> =
                    (0..d.simplex_count()).filter(|&i| d.dim_of(i) < n).collect();
                let (b, _) = d.subcomplex(&keep);
                let h = homology(&b, n).unwrap();
                let mut expected = vec![0usize; n + 1];
                expected[0] = 1;
                if n >= 2 {
                    expected[n - 1] = if n - 1 == 0 { 2 } else { 1 };
                }
                if n == 1 {
                    expected[0] = 2;
                }
                if h.betti != expected {
                    return (false, format!("homology of the boundary of Δ^{n}: {:?}", h.betti));
                }
            }
        }
        // sd invariance on the corpus carriers
        for e in corpus() {
            let x = &e.k.space;
            let sdx = crate::sd::sd(x);
            let d = x.dim().max(1);
            if homology(x, d).unwrap() != homology(&sdx.space, d).unwrap() {
                return (false, format!("sd-invariance fails on {}", e.name));
            }
            if x.validate().is_err() {
                return (false, format!("identities fail on {}", e.name));
            }
        }
        // product counts for the square
        let d1 = SimplicialSet::simplex(1);
        let sq = crate::product::product(&d1, &d1);
        if sq.space.in_dim(0).len() != 4
            || sq.space.in_dim(1).len() != 5
            || sq.space.in_dim(2).len() != 2
        {
            return (false, "square counts".into());
        }
        (true, "all core checks hold".into())
    })
}

/// Run the whole suite.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_identity_suite(),
        criterion_t_surjective(),
        criterion_example_boundary(),
        criterion_link_holink_agreement(),
        criterion_verticalization(),
        criterion_cofibrancy_bridge(),
        criterion_pairings(),
        criterion_probes(),
        criterion_link_horns(),
        criterion_core_engine(),
    ]
}
