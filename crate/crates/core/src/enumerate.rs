//! Exhaustive enumeration of simplicial maps by backtracking.
//!
//! Non-degenerate simplices of the source are processed in increasing
//! dimension; a candidate image is kept only if it is compatible with the
//! images already chosen for all faces. The search counts node expansions
//! against a budget and fails explicitly when it is exceeded.

use crate::smap::SimplicialMap;
use crate::sset::{SimplexRef, SimplicialSet};
use crate::{Error, Result};

/// Node-expansion ceiling for the backtracking searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(10_000_000)
    }
}

/// All simplicial maps `X -> Y`, in deterministic order. The optional
/// `constraint` restricts the candidate images of each nd simplex.
pub fn enumerate_maps_filtered(
    x: &SimplicialSet,
    y: &SimplicialSet,
    budget: Budget,
    constraint: impl Fn(usize, &SimplexRef) -> bool,
) -> Result<Vec<SimplicialMap>> {
    let mut order: Vec<usize> = (0..x.simplex_count()).collect();
    order.sort_by_key(|&i| (x.dim_of(i), i));
    // candidate pools per dimension
    let max_dim = if x.is_empty() { 0 } else { x.dim() };
    let pools: Vec<Vec<SimplexRef>> = (0..=max_dim).map(|d| y.elements(d)).collect();

    let mut out = Vec::new();
    let mut assigned: Vec<Option<SimplexRef>> = vec![None; x.simplex_count()];
    let mut expansions: u64 = 0;

    fn compatible(
        x: &SimplicialSet,
        y: &SimplicialSet,
        assigned: &[Option<SimplexRef>],
        nd: usize,
        cand: &SimplexRef,
    ) -> bool {
        let dim = x.dim_of(nd);
        for i in 0..=dim {
            if dim == 0 {
                break;
            }
            let stored = x.face_of_nd(nd, i);
            let img_face = match &assigned[stored.nd] {
                Some(r) => y.apply_word(r, &stored.word),
                None => return true, // faces always assigned first
            };
            if y.face(cand, i) != img_face {
                return false;
            }
        }
        true
    }

    fn rec(
        x: &SimplicialSet,
        y: &SimplicialSet,
        order: &[usize],
        pools: &[Vec<SimplexRef>],
        constraint: &impl Fn(usize, &SimplexRef) -> bool,
        assigned: &mut Vec<Option<SimplexRef>>,
        pos: usize,
        out: &mut Vec<SimplicialMap>,
        expansions: &mut u64,
        budget: Budget,
    ) -> Result<()> {
        if pos == order.len() {
            out.push(SimplicialMap::new(
                assigned.iter().map(|r| r.clone().unwrap()).collect(),
            ));
            return Ok(());
        }
        let nd = order[pos];
        for cand in &pools[x.dim_of(nd)] {
            *expansions += 1;
            if *expansions > budget.0 {
                return Err(Error::BudgetExceeded {
                    limit: budget.0,
                    context: "map enumeration".into(),
                });
            }
            if !constraint(nd, cand) {
                continue;
            }
            if !compatible(x, y, assigned, nd, cand) {
                continue;
            }
            assigned[nd] = Some(cand.clone());
            rec(
                x, y, order, pools, constraint, assigned, pos + 1, out, expansions, budget,
            )?;
            assigned[nd] = None;
        }
        Ok(())
    }

    if x.is_empty() {
        return Ok(vec![SimplicialMap::new(Vec::new())]);
    }
    if y.is_empty() {
        return Ok(Vec::new());
    }
    rec(
        x,
        y,
        &order,
        &pools,
        &constraint,
        &mut assigned,
        0,
        &mut out,
        &mut expansions,
        budget,
    )?;
    // maps must come out in a deterministic order independent of the search;
    // the dimension-ordered DFS already guarantees it, but sort for safety
    out.sort();
    Ok(out)
}

/// All simplicial maps `X -> Y`.
pub fn enumerate_maps(
    x: &SimplicialSet,
    y: &SimplicialSet,
    budget: Budget,
) -> Result<Vec<SimplicialMap>> {
    enumerate_maps_filtered(x, y, budget, |_, _| true)
}
