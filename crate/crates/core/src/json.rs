//! JSON interchange formats.
//!
//! Posets list their elements and a generating relation; simplicial sets
//! list nd simplices with faces as `(id, degeneracy word)` pairs in the
//! order `d_0..d_n`; stratified and labelled variants add a `flag` or
//! `label` of element names per simplex. Emission is deterministic: ids are
//! `s0..sN` in internal order and maps are sorted.

use crate::poset::{Flag, Poset, RegularFlag};
use crate::smap::SimplicialMap;
use crate::sset::{SimplexRef, SimplicialSet};
use crate::stratified::{StratifiedMap, StratifiedSimplicialSet};
use crate::vertical::LabelledSimplicialSet;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplexJson {
    pub id: String,
    pub dim: usize,
    pub faces: Vec<(String, Vec<usize>)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SsetJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetJson>,
    pub simplices: Vec<SimplexJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapJson {
    pub poset: PosetJson,
    pub source: SsetJson,
    pub target: SsetJson,
    /// source id -> (target id, degeneracy word)
    pub images: BTreeMap<String, (String, Vec<usize>)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramJson {
    pub poset: PosetJson,
    /// key: flag as comma-joined element names in brackets, e.g. "[0,1]"
    pub values: BTreeMap<String, SsetJson>,
    /// key: "sub<=sup", value: nd-id map `values[sup] -> values[sub]`
    pub restrictions: BTreeMap<String, BTreeMap<String, (String, Vec<usize>)>>,
}

pub fn poset_to_json(p: &Poset) -> PosetJson {
    let mut leq = Vec::new();
    for a in 0..p.len() {
        for b in 0..p.len() {
            if a != b && p.leq(a, b) {
                leq.push((p.label(a).to_string(), p.label(b).to_string()));
            }
        }
    }
    PosetJson {
        elements: (0..p.len()).map(|i| p.label(i).to_string()).collect(),
        leq,
    }
}

pub fn poset_from_json(j: &PosetJson) -> Result<Poset> {
    let index = |name: &str| -> Result<usize> {
        j.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::Malformed(format!("unknown poset element {name}")))
    };
    let gen: Vec<(usize, usize)> = j
        .leq
        .iter()
        .map(|(a, b)| Ok((index(a)?, index(b)?)))
        .collect::<Result<_>>()?;
    Poset::new(j.elements.clone(), &gen)
}

fn id_of(i: usize) -> String {
    format!("s{i}")
}

fn simplices_to_json(
    x: &SimplicialSet,
    flags: Option<&[Flag]>,
    labels: Option<&[RegularFlag]>,
    poset: Option<&Poset>,
) -> Vec<SimplexJson> {
    (0..x.simplex_count())
        .map(|nd| {
            let dim = x.dim_of(nd);
            let faces = if dim == 0 {
                Vec::new()
            } else {
                (0..=dim)
                    .map(|i| {
                        let f = x.face_of_nd(nd, i);
                        (id_of(f.nd), f.word.clone())
                    })
                    .collect()
            };
            let name = |e: usize| poset.unwrap().label(e).to_string();
            SimplexJson {
                id: id_of(nd),
                dim,
                faces,
                flag: flags.map(|f| f[nd].entries.iter().map(|&e| name(e)).collect()),
                label: labels.map(|l| l[nd].entries.iter().map(|&e| name(e)).collect()),
            }
        })
        .collect()
}

pub fn sset_to_json(x: &SimplicialSet) -> SsetJson {
    SsetJson {
        poset: None,
        simplices: simplices_to_json(x, None, None, None),
    }
}

pub fn stratified_to_json(k: &StratifiedSimplicialSet) -> SsetJson {
    SsetJson {
        poset: Some(poset_to_json(&k.poset)),
        simplices: simplices_to_json(&k.space, Some(&k.flags), None, Some(&k.poset)),
    }
}

pub fn labelled_to_json(s: &LabelledSimplicialSet) -> SsetJson {
    SsetJson {
        poset: Some(poset_to_json(&s.poset)),
        simplices: simplices_to_json(&s.space, None, Some(&s.labels), Some(&s.poset)),
    }
}

/// Parse the carrier; returns the space and the id table in file order.
fn space_from_json(j: &SsetJson) -> Result<(SimplicialSet, BTreeMap<String, usize>)> {
    // sort by dimension, stable in file order, so faces precede cofaces
    let mut order: Vec<usize> = (0..j.simplices.len()).collect();
    order.sort_by_key(|&i| j.simplices[i].dim);
    let mut ids: BTreeMap<String, usize> = BTreeMap::new();
    let mut x = SimplicialSet::empty();
    for &i in &order {
        let s = &j.simplices[i];
        if ids.contains_key(&s.id) {
            return Err(Error::Malformed(format!("duplicate simplex id {}", s.id)));
        }
        let faces = s
            .faces
            .iter()
            .map(|(fid, w)| {
                let nd = *ids
                    .get(fid)
                    .ok_or_else(|| Error::Malformed(format!("unknown face id {fid}")))?;
                Ok(SimplexRef {
                    nd,
                    word: w.clone(),
                })
            })
            .collect::<Result<_>>()?;
        let nd = x.push_simplex(s.dim, faces)?;
        ids.insert(s.id.clone(), nd);
    }
    x.validate()?;
    Ok((x, ids))
}

pub fn sset_from_json(j: &SsetJson) -> Result<SimplicialSet> {
    Ok(space_from_json(j)?.0)
}

pub fn stratified_from_json(j: &SsetJson) -> Result<StratifiedSimplicialSet> {
    let pj = j
        .poset
        .as_ref()
        .ok_or_else(|| Error::Malformed("stratified set without poset".into()))?;
    let poset = Arc::new(poset_from_json(pj)?);
    stratified_from_json_with(j, &poset)
}

pub fn stratified_from_json_with(
    j: &SsetJson,
    poset: &Arc<Poset>,
) -> Result<StratifiedSimplicialSet> {
    let (space, ids) = space_from_json(j)?;
    let mut flags = vec![Flag { entries: Vec::new() }; space.simplex_count()];
    for s in &j.simplices {
        let flag = s
            .flag
            .as_ref()
            .ok_or_else(|| Error::Malformed(format!("simplex {} missing flag", s.id)))?;
        let entries = flag
            .iter()
            .map(|name| {
                poset
                    .index_of(name)
                    .ok_or_else(|| Error::Malformed(format!("unknown stratum {name}")))
            })
            .collect::<Result<_>>()?;
        flags[ids[&s.id]] = Flag { entries };
    }
    StratifiedSimplicialSet::new(space, poset.clone(), flags)
}

pub fn labelled_from_json(j: &SsetJson) -> Result<LabelledSimplicialSet> {
    let pj = j
        .poset
        .as_ref()
        .ok_or_else(|| Error::Malformed("labelled set without poset".into()))?;
    let poset = Arc::new(poset_from_json(pj)?);
    let (space, ids) = space_from_json(j)?;
    let mut labels = vec![RegularFlag { entries: Vec::new() }; space.simplex_count()];
    for s in &j.simplices {
        let label = s
            .label
            .as_ref()
            .ok_or_else(|| Error::Malformed(format!("simplex {} missing label", s.id)))?;
        let entries: Vec<usize> = label
            .iter()
            .map(|name| {
                poset
                    .index_of(name)
                    .ok_or_else(|| Error::Malformed(format!("unknown stratum {name}")))
            })
            .collect::<Result<_>>()?;
        labels[ids[&s.id]] = RegularFlag::new(&poset, entries)?;
    }
    LabelledSimplicialSet::new(space, poset, labels)
}

pub fn stratified_map_to_json(
    f: &StratifiedMap,
    src: &StratifiedSimplicialSet,
    dst: &StratifiedSimplicialSet,
) -> MapJson {
    MapJson {
        poset: poset_to_json(&src.poset),
        source: stratified_to_json(src),
        target: stratified_to_json(dst),
        images: f
            .map
            .images
            .iter()
            .enumerate()
            .map(|(nd, r)| (id_of(nd), (id_of(r.nd), r.word.clone())))
            .collect(),
    }
}

pub fn stratified_map_from_json(
    j: &MapJson,
) -> Result<(StratifiedSimplicialSet, StratifiedSimplicialSet, StratifiedMap)> {
    let poset = Arc::new(poset_from_json(&j.poset)?);
    let src = stratified_from_json_with(&j.source, &poset)?;
    let dst = stratified_from_json_with(&j.target, &poset)?;
    let (_, src_ids) = space_from_json(&j.source)?;
    let (_, dst_ids) = space_from_json(&j.target)?;
    let mut images = vec![SimplexRef::nd(usize::MAX); src.space.simplex_count()];
    for (sid, (tid, word)) in &j.images {
        let s = *src_ids
            .get(sid)
            .ok_or_else(|| Error::Malformed(format!("unknown source id {sid}")))?;
        let t = *dst_ids
            .get(tid)
            .ok_or_else(|| Error::Malformed(format!("unknown target id {tid}")))?;
        images[s] = SimplexRef {
            nd: t,
            word: word.clone(),
        };
    }
    if images.iter().any(|r| r.nd == usize::MAX) {
        return Err(Error::Malformed("map misses some simplices".into()));
    }
    let f = StratifiedMap::new(&src, &dst, SimplicialMap::new(images))?;
    Ok((src, dst, f))
}

pub fn flag_key(poset: &Poset, f: &RegularFlag) -> String {
    let names: Vec<String> = f.entries.iter().map(|&e| poset.label(e).to_string()).collect();
    format!("[{}]", names.join(","))
}

pub fn flag_from_key(poset: &Poset, key: &str) -> Result<RegularFlag> {
    let inner = key
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Malformed(format!("bad flag key {key}")))?;
    let entries = inner
        .split(',')
        .map(|name| {
            poset
                .index_of(name.trim())
                .ok_or_else(|| Error::Malformed(format!("unknown stratum {name}")))
        })
        .collect::<Result<_>>()?;
    RegularFlag::new(poset, entries)
}

pub fn diagram_to_json(d: &crate::diagrams::Diagram) -> DiagramJson {
    let values = d
        .flags
        .iter()
        .zip(d.values.iter())
        .map(|(f, v)| (flag_key(&d.poset, f), sset_to_json(v)))
        .collect();
    let restrictions = d
        .restrictions
        .iter()
        .map(|(&(a, b), m)| {
            let key = format!(
                "{}<={}",
                flag_key(&d.poset, &d.flags[a]),
                flag_key(&d.poset, &d.flags[b])
            );
            let images = m
                .images
                .iter()
                .enumerate()
                .map(|(nd, r)| (id_of(nd), (id_of(r.nd), r.word.clone())))
                .collect();
            (key, images)
        })
        .collect();
    DiagramJson {
        poset: poset_to_json(&d.poset),
        values,
        restrictions,
    }
}

pub fn diagram_from_json(j: &DiagramJson) -> Result<crate::diagrams::Diagram> {
    let poset = Arc::new(poset_from_json(&j.poset)?);
    let flags = poset.regular_flags();
    let mut values = Vec::new();
    let mut id_tables = Vec::new();
    for f in &flags {
        let key = flag_key(&poset, f);
        match j.values.get(&key) {
            Some(sj) => {
                let (space, ids) = space_from_json(sj)?;
                values.push(space);
                id_tables.push(ids);
            }
            None => {
                values.push(SimplicialSet::empty());
                id_tables.push(BTreeMap::new());
            }
        }
    }
    let mut restrictions = BTreeMap::new();
    for (a, b) in crate::diagrams::Diagram::inclusion_pairs(&flags) {
        let key = format!(
            "{}<={}",
            flag_key(&poset, &flags[a]),
            flag_key(&poset, &flags[b])
        );
        let m = match j.restrictions.get(&key) {
            Some(images) => {
                let mut v = vec![SimplexRef::nd(usize::MAX); values[b].simplex_count()];
                for (sid, (tid, word)) in images {
                    let s = *id_tables[b]
                        .get(sid)
                        .ok_or_else(|| Error::Malformed(format!("unknown id {sid}")))?;
                    let t = *id_tables[a]
                        .get(tid)
                        .ok_or_else(|| Error::Malformed(format!("unknown id {tid}")))?;
                    v[s] = SimplexRef {
                        nd: t,
                        word: word.clone(),
                    };
                }
                if v.iter().any(|r| r.nd == usize::MAX) {
                    return Err(Error::Malformed(format!("restriction {key} incomplete")));
                }
                SimplicialMap::new(v)
            }
            None if values[b].is_empty() => SimplicialMap::new(Vec::new()),
            None => return Err(Error::Malformed(format!("missing restriction {key}"))),
        };
        restrictions.insert((a, b), m);
    }
    let d = crate::diagrams::Diagram {
        poset,
        flags,
        values,
        restrictions,
    };
    d.validate()?;
    Ok(d)
}
