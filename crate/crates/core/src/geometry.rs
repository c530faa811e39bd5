//! Connected components and the rack metric.
//!
//! The metric on a component is the graph metric of the graph with edges
//! `z → ψ_w^{±1}(z)` for all `w`. Distances between different components are
//! undefined and reported as errors.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{quotient_metric, PermGroup};
use crate::perm::Permutation;
use crate::rack::{canonical_quandle_quotient, coset_rack, CosetRackSpec, FiniteRack, UnionFind};
use crate::ratlinalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDecomposition {
    pub component_of: Vec<usize>,
    /// Smallest element of each component; components are ordered by it.
    pub representatives: Vec<usize>,
    pub count: usize,
}

impl ComponentDecomposition {
    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.component_of.len())
            .filter(|&x| self.component_of[x] == c)
            .collect()
    }
}

pub fn components(rack: &FiniteRack) -> ComponentDecomposition {
    let n = rack.size();
    let mut uf = UnionFind::new(n);
    for w in 0..n {
        for z in 0..n {
            uf.union(z, rack.op(w, z));
        }
    }
    let mut id_of_root = vec![usize::MAX; n];
    let mut component_of = vec![0; n];
    let mut representatives = Vec::new();
    for (x, c) in component_of.iter_mut().enumerate() {
        let r = uf.find(x);
        if id_of_root[r] == usize::MAX {
            id_of_root[r] = representatives.len();
            representatives.push(x);
        }
        *c = id_of_root[r];
    }
    let count = representatives.len();
    ComponentDecomposition {
        component_of,
        representatives,
        count,
    }
}

fn neighbours(rack: &FiniteRack) -> Vec<Vec<usize>> {
    let n = rack.size();
    (0..n)
        .map(|z| {
            let mut out: Vec<usize> = (0..n)
                .flat_map(|w| [rack.op(w, z), rack.op_inv(w, z)])
                .filter(|&v| v != z)
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect()
}

fn bfs(adj: &[Vec<usize>], source: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(z) = queue.pop_front() {
        for &v in &adj[z] {
            if dist[v] == u32::MAX {
                dist[v] = dist[z] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn rack_distance(rack: &FiniteRack, x: usize, y: usize) -> Result<u32> {
    let d = bfs(&neighbours(rack), x)[y];
    if d == u32::MAX {
        return Err(Error::DifferentComponents(x.to_string(), y.to_string()));
    }
    Ok(d)
}

/// Distance matrix of one component, indexed by position in `members`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceTable {
    pub representative: usize,
    pub members: Vec<usize>,
    pub distances: Vec<Vec<u32>>,
}

impl DistanceTable {
    pub fn diameter(&self) -> u32 {
        self.distances
            .iter()
            .flat_map(|r| r.iter().copied())
            .max()
            .unwrap_or(0)
    }
}

/// All-pairs rack metric, one table per component.
#[derive(Clone, Debug)]
pub struct RackMetric {
    pub components: ComponentDecomposition,
    pub tables: Vec<DistanceTable>,
    // position of each element inside its component's member list
    local: Vec<usize>,
}

impl RackMetric {
    pub fn new(rack: &FiniteRack) -> Self {
        Self::new_with(rack, Exec::default())
    }

    /// One BFS per source element, fanned out under `exec`.
    pub fn new_with(rack: &FiniteRack, exec: Exec) -> Self {
        let comps = components(rack);
        let adj = neighbours(rack);
        let rows = exec.map_range(rack.size(), |x| bfs(&adj, x));
        let mut local = vec![0; rack.size()];
        let tables = (0..comps.count)
            .map(|c| {
                let members = comps.members(c);
                for (i, &m) in members.iter().enumerate() {
                    local[m] = i;
                }
                let distances = members
                    .iter()
                    .map(|&a| members.iter().map(|&b| rows[a][b]).collect())
                    .collect();
                DistanceTable {
                    representative: comps.representatives[c],
                    members,
                    distances,
                }
            })
            .collect();
        RackMetric {
            components: comps,
            tables,
            local,
        }
    }

    pub fn distance(&self, x: usize, y: usize) -> Result<u32> {
        let (cx, cy) = (
            self.components.component_of[x],
            self.components.component_of[y],
        );
        if cx != cy {
            return Err(Error::DifferentComponents(x.to_string(), y.to_string()));
        }
        Ok(self.tables[cx].distances[self.local[x]][self.local[y]])
    }

    pub fn diameters(&self) -> Vec<u32> {
        self.tables.iter().map(DistanceTable::diameter).collect()
    }
}

pub fn component_diameter(rack: &FiniteRack, component: usize) -> Result<u32> {
    let m = RackMetric::new(rack);
    m.tables
        .get(component)
        .map(DistanceTable::diameter)
        .ok_or_else(|| Error::InvalidArgument(format!("no component {component}")))
}

pub fn all_diameters(rack: &FiniteRack) -> Vec<u32> {
    RackMetric::new(rack).diameters()
}

/// Whether the automorphism `alpha` preserves the rack metric on every pair of
/// elements sharing a component.
pub fn check_isometry(rack: &FiniteRack, alpha: &Permutation) -> Result<bool> {
    rack.check_automorphism(alpha)?;
    Ok(check_isometry_in(&RackMetric::new(rack), alpha))
}

pub(crate) fn check_isometry_in(metric: &RackMetric, alpha: &Permutation) -> bool {
    metric.tables.iter().all(|t| {
        t.members.iter().enumerate().all(|(i, &x)| {
            t.members.iter().enumerate().all(|(j, &y)| {
                metric.distance(alpha.apply(x), alpha.apply(y)) == Ok(t.distances[i][j])
            })
        })
    })
}

/// Checks every element of an enumerated group of automorphisms.
pub fn check_isometries(rack: &FiniteRack, group: &PermGroup, exec: Exec) -> Result<bool> {
    let metric = RackMetric::new_with(rack, exec);
    for g in group.elements() {
        rack.check_automorphism(g)?;
    }
    Ok(exec.all_range(group.order(), |g| {
        check_isometry_in(&metric, group.element(g))
    }))
}

/// Rack metric versus quotient word metric on each coset space of a coset rack.
#[derive(Clone, Debug, Serialize)]
pub struct MetricComparison {
    pub equal: bool,
    /// Per rep: rack distances between cosets, in coset order.
    pub rack_metric: Vec<Vec<Vec<u32>>>,
    pub quotient_metric: Vec<Vec<Vec<u32>>>,
}

pub fn check_metric_quotient_equality(spec: &CosetRackSpec) -> Result<MetricComparison> {
    let cr = coset_rack(spec)?;
    let metric = RackMetric::new(&cr.rack);
    let set: Vec<usize> = spec.reps.iter().map(|r| r.s).collect();
    let mut equal = true;
    let mut rack_side = Vec::new();
    let mut quotient_side = Vec::new();
    for (i, rep) in spec.reps.iter().enumerate() {
        let q = quotient_metric(&spec.group, &set, &rep.subgroup)?;
        let elems: Vec<usize> = (0..cr.labels.len())
            .filter(|&e| cr.labels[e].0 == i)
            .collect();
        let rows: Vec<Vec<u32>> = elems
            .iter()
            .map(|&a| {
                elems
                    .iter()
                    .map(|&b| metric.distance(a, b).unwrap_or(u32::MAX))
                    .collect()
            })
            .collect();
        equal &= rows == q.distances;
        rack_side.push(rows);
        quotient_side.push(q.distances);
    }
    Ok(MetricComparison {
        equal,
        rack_metric: rack_side,
        quotient_metric: quotient_side,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LipschitzReport {
    pub holds: bool,
    /// Largest `d_rack(x, y) − d_quotient([x], [y])` over same-component pairs.
    pub max_slack: u32,
}

/// Checks `d([x], [y]) ≤ d(x, y)` for the canonical quandle quotient.
pub fn check_extension_lipschitz(rack: &FiniteRack) -> Result<LipschitzReport> {
    let quotient = canonical_quandle_quotient(rack)?;
    let upstairs = RackMetric::new(rack);
    let downstairs = RackMetric::new(&quotient.quandle);
    let p = &quotient.projection;
    let mut holds = true;
    let mut max_slack = 0;
    for t in &upstairs.tables {
        for (i, &x) in t.members.iter().enumerate() {
            for (j, &y) in t.members.iter().enumerate() {
                let below = downstairs.distance(p[x], p[y]).map_err(|_| {
                    Error::Internal("quotient map does not preserve components".into())
                })?;
                let above = t.distances[i][j];
                if below > above {
                    holds = false;
                } else {
                    max_slack = max_slack.max(above - below);
                }
            }
        }
    }
    Ok(LipschitzReport { holds, max_slack })
}

/// `max |f(x) − f(ψ_y(x))|` for `f(x) = d(basepoint of x's component, x)`.
pub fn delta_f_defect(rack: &FiniteRack, basepoints: &[usize]) -> Result<Rational> {
    let metric = RackMetric::new(rack);
    let comps = &metric.components;
    if basepoints.len() != comps.count {
        return Err(Error::InvalidArgument(format!(
            "expected {} basepoints, got {}",
            comps.count,
            basepoints.len()
        )));
    }
    let mut base_of = vec![usize::MAX; comps.count];
    for &b in basepoints {
        let c = *comps
            .component_of
            .get(b)
            .ok_or_else(|| Error::InvalidArgument(format!("basepoint {b} out of range")))?;
        if base_of[c] != usize::MAX {
            return Err(Error::InvalidArgument(format!(
                "two basepoints in the component of {b}"
            )));
        }
        base_of[c] = b;
    }
    let f: Vec<i64> = (0..rack.size())
        .map(|x| {
            metric
                .distance(base_of[comps.component_of[x]], x)
                .map(i64::from)
        })
        .collect::<Result<_>>()?;
    let n = rack.size();
    let worst = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| (f[x] - f[rack.op(y, x)]).abs())
        .max()
        .unwrap_or(0);
    Ok(Rational::from_integer(worst.into()))
}
