//! Weak-equivalence probe: per-flag comparison of links or truncated
//! homotopy links.
//!
//! A refutation (some flag where pi_0 or homology disagrees) is exact; a map
//! that passes all probes is NOT thereby certified a weak equivalence, since
//! pi_0 and homology are necessary conditions only. The verdict vocabulary
//! reflects this.

use crate::diagrams::{levelwise_compare, pi0_induced_bijection, Diagram, DiagramMap, LevelwiseReport};
use crate::enumerate::Budget;
use crate::homology::homology;
use crate::links::{holink, induced_holink_map, induced_link_map, link_system};
use crate::stratified::{StratifiedMap, StratifiedSimplicialSet};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ProbeMode {
    Link,
    Holink,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    PassesAllProbes,
    Refuted,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct FlagProbe {
    pub flag: Vec<String>,
    pub pi0_ok: bool,
    pub homology_ok: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ProbeReport {
    /// probes are necessary conditions; passing is not a certificate
    pub mode: ProbeMode,
    pub max_deg: usize,
    pub levels: Vec<FlagProbe>,
    pub verdict: Verdict,
    pub certificate: Option<Vec<String>>,
}

/// Probe a stratified map on every regular flag of the poset.
pub fn probe(
    f: &StratifiedMap,
    k: &StratifiedSimplicialSet,
    l: &StratifiedSimplicialSet,
    max_deg: usize,
    mode: ProbeMode,
    budget: Budget,
) -> Result<ProbeReport> {
    let flags = k.poset.regular_flags();
    let levels: Vec<FlagProbe> = match mode {
        ProbeMode::Link => {
            let sys_k = link_system(k);
            let sys_l = link_system(l);
            let out = crate::exec::par_map(flags, |i| {
                let m = induced_link_map(f, k, l, &sys_k, &sys_l, &i);
                let (lk, _) = sys_k.link(&i);
                let (ll, _) = sys_l.link(&i);
                let pi0_ok = pi0_induced_bijection(&lk, &ll, &m);
                let hk = homology(&lk, max_deg)?;
                let hl = homology(&ll, max_deg)?;
                Ok(FlagProbe {
                    flag: i.entries.iter().map(|&e| k.poset.label(e).to_string()).collect(),
                    pi0_ok,
                    homology_ok: hk == hl,
                })
            });
            out.into_iter().collect::<Result<_>>()?
        }
        ProbeMode::Holink => {
            // truncate one above the comparison degree so homology there is
            // still trustworthy
            let d = max_deg + 1;
            let out = crate::exec::par_map(flags, |i| {
                let hk = holink(k, &i, d, budget)?;
                let hl = holink(l, &i, d, budget)?;
                let m = induced_holink_map(f, l, &hk, &hl);
                let pi0_ok = pi0_induced_bijection(&hk.space, &hl.space, &m);
                let a = homology(&hk.space, max_deg)?;
                let b = homology(&hl.space, max_deg)?;
                Ok(FlagProbe {
                    flag: i.entries.iter().map(|&e| k.poset.label(e).to_string()).collect(),
                    pi0_ok,
                    homology_ok: a == b,
                })
            });
            out.into_iter().collect::<Result<_>>()?
        }
    };
    let certificate: Vec<Vec<String>> = levels
        .iter()
        .filter(|l| !(l.pi0_ok && l.homology_ok))
        .map(|l| l.flag.clone())
        .collect();
    let verdict = if certificate.is_empty() {
        Verdict::PassesAllProbes
    } else {
        Verdict::Refuted
    };
    Ok(ProbeReport {
        mode,
        max_deg,
        levels,
        verdict,
        certificate: certificate.into_iter().next(),
    })
}

/// Probe a map of diagrams levelwise.
pub fn probe_diagram(
    f: &DiagramMap,
    src: &Diagram,
    dst: &Diagram,
    max_deg: usize,
) -> Result<(LevelwiseReport, Verdict)> {
    let rep = levelwise_compare(f, src, dst, max_deg)?;
    let verdict = if rep.all_pass {
        Verdict::PassesAllProbes
    } else {
        Verdict::Refuted
    };
    Ok((rep, verdict))
}

/// Convenience: probe the last vertex map of a stratified set.
pub fn probe_last_vertex(
    k: &StratifiedSimplicialSet,
    max_deg: usize,
    mode: ProbeMode,
    budget: Budget,
) -> Result<ProbeReport> {
    let sdp = crate::subdivision::sd_p(k);
    let lv = crate::subdivision::lv_p(k, &sdp);
    probe(&lv, &sdp.strat, k, max_deg, mode, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{Flag, Poset, RegularFlag as RF};
    use crate::stratified::{boundary, horn, standard_simplex};
    use std::sync::Arc;

    fn p3() -> Arc<Poset> {
        Arc::new(Poset::chain(3))
    }

    #[test]
    fn boundary_inclusion_is_refuted_at_top_flag() {
        let p = p3();
        let j = Flag::new(&p, vec![0, 1, 2]).unwrap();
        let (b, incl, full) = boundary(&p, &j);
        let rep = probe(&incl, &b, &full, 2, ProbeMode::Link, Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Refuted);
        assert_eq!(rep.certificate, Some(vec!["0".into(), "1".into(), "2".into()]));
        // refuted maps are not stratified homotopy equivalences
        assert!(!crate::stratified::is_stratified_homotopy_equivalence(
            &incl,
            &b,
            &full,
            Budget::default()
        )
        .unwrap());
    }

    #[test]
    fn admissible_horn_inclusion_passes() {
        let p = Arc::new(Poset::chain(2));
        let j = Flag::new(&p, vec![0, 0, 1]).unwrap();
        let (h, incl, full) = horn(&p, &j, 1).unwrap();
        let rep = probe(&incl, &h, &full, 2, ProbeMode::Link, Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::PassesAllProbes);
    }

    #[test]
    fn last_vertex_passes_probes() {
        let p = Arc::new(Poset::chain(2));
        for entries in [vec![0, 1], vec![0, 0, 1]] {
            let k = standard_simplex(&p, &Flag::new(&p, entries).unwrap());
            let rep = probe_last_vertex(&k, 2, ProbeMode::Link, Budget::default()).unwrap();
            assert_eq!(rep.verdict, Verdict::PassesAllProbes);
        }
    }

    #[test]
    fn diagram_probe_of_boundary_inclusion() {
        let p = p3();
        let j = Flag::new(&p, vec![0, 1, 2]).unwrap();
        let (b, incl, full) = boundary(&p, &j);
        let (db, hb) = crate::links::diagram_d(&b, 1, Budget::default()).unwrap();
        let (df, hf) = crate::links::diagram_d(&full, 1, Budget::default()).unwrap();
        let maps: Vec<_> = db
            .flags
            .iter()
            .enumerate()
            .map(|(i, _)| crate::links::induced_holink_map(&incl, &full, &hb[i], &hf[i]))
            .collect();
        let dm = DiagramMap { maps };
        dm.validate(&db, &df).unwrap();
        let (rep, verdict) = probe_diagram(&dm, &db, &df, 0).unwrap();
        assert_eq!(verdict, Verdict::Refuted);
        let top = RF::new(&p, vec![0, 1, 2]).unwrap();
        let fail = rep.first_failure().unwrap();
        assert_eq!(
            fail.flag,
            top.entries
                .iter()
                .map(|&e| p.label(e).to_string())
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn holink_mode_agrees_on_boundary_inclusion() {
        let p = p3();
        let j = Flag::new(&p, vec![0, 1, 2]).unwrap();
        let (b, incl, full) = boundary(&p, &j);
        let rep = probe(&incl, &b, &full, 0, ProbeMode::Holink, Budget::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Refuted);
    }
}
