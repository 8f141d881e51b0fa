//! Brute-force verdicts for the partial, constrained and simultaneous
//! problems, straight from the drawing enumeration.

use std::collections::BTreeMap;

use super::{brute_force_embeddings_guarded, for_each_drawing, OracleError};
use crate::embedding::{canonical_form, RotationSystem};
use crate::levelgraph::{LevelGraph, VertexId};
use crate::solvers::{extends, ClgInstance, PegInstance, SefeInstance};

#[derive(Clone, Debug)]
pub enum Instance {
    Partial(PegInstance),
    Constrained(ClgInstance),
    Simultaneous(SefeInstance),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// An embedding of `G` extending the subgraph rotations.
    Embedding(RotationSystem),
    /// Left-to-right order of the vertices of `G` on every level.
    Orders(Vec<Vec<VertexId>>),
    /// Embeddings of `G₁` and `G₂` that agree on `G`.
    Pair(RotationSystem, RotationSystem),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Sat(Witness),
    Unsat,
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat(_))
    }
}

fn guard_check(g: &LevelGraph, guard: usize) -> Result<(), OracleError> {
    if g.n() > guard {
        return Err(OracleError::Guard { n: g.n(), guard });
    }
    Ok(())
}

/// Decides an instance by exhaustive search over level drawings.
pub fn brute_force_verdict(inst: &Instance, guard: usize) -> Result<Verdict, OracleError> {
    match inst {
        Instance::Partial(p) => {
            guard_check(&p.graph, guard)?;
            let mut found = None;
            for_each_drawing(&p.graph, |_, rot| {
                if extends(p, &rot) {
                    found = Some(rot);
                    return false;
                }
                true
            });
            Ok(found.map_or(Verdict::Unsat, |r| Verdict::Sat(Witness::Embedding(r))))
        }
        Instance::Constrained(c) => {
            let g = &c.graph;
            guard_check(g, guard)?;
            let mut found = None;
            for_each_drawing(g, |pos, _| {
                if c.constraints.iter().all(|&(u, v)| pos[u] < pos[v]) {
                    let mut rows: Vec<Vec<VertexId>> = vec![Vec::new(); g.max_level() as usize];
                    for v in 0..g.n() {
                        rows[g.level(v) as usize - 1].push(v);
                    }
                    for r in &mut rows {
                        r.sort_by_key(|&v| pos[v]);
                    }
                    found = Some(rows);
                    return false;
                }
                true
            });
            Ok(found.map_or(Verdict::Unsat, |r| Verdict::Sat(Witness::Orders(r))))
        }
        Instance::Simultaneous(s) => {
            let g1 = s.graph.with_extra_edges(&s.exclusive1).map_err(|e| OracleError::Invalid(e.to_string()))?;
            let g2 = s.graph.with_extra_edges(&s.exclusive2).map_err(|e| OracleError::Invalid(e.to_string()))?;
            let keyed = |gi: &LevelGraph| -> Result<BTreeMap<String, RotationSystem>, OracleError> {
                let set = brute_force_embeddings_guarded(gi, guard)?;
                let keep: Vec<bool> = (0..gi.m()).map(|e| e < s.graph.m()).collect();
                let mut out = BTreeMap::new();
                for r in set.embeddings.into_values() {
                    out.entry(canonical_form(&s.graph, &r.restrict(&keep))).or_insert(r);
                }
                Ok(out)
            };
            let a = keyed(&g1)?;
            let b = keyed(&g2)?;
            Ok(a.iter()
                .find_map(|(k, r1)| b.get(k).map(|r2| Verdict::Sat(Witness::Pair(r1.clone(), r2.clone()))))
                .unwrap_or(Verdict::Unsat))
        }
    }
}
