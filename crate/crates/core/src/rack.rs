//! Finite racks and quandles given by operation tables.
//!
//! Elements are `0..n`; `table[x][y]` is `x ▷ y`, so row `x` read as a
//! permutation is `ψ_x`.

use crate::error::{Error, Result};
use crate::geometry::components;
use crate::group::{inner_group_capped, left_cosets, PermGroup, Subgroup, DEFAULT_GROUP_CAP};
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteRack {
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    is_quandle: bool,
}

impl FiniteRack {
    /// Checks axioms A0 (rows are bijections) and A1 (left self-distributivity)
    /// and records whether A2 (idempotency) holds.
    pub fn validate(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedGrid("empty table".into()));
        }
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedGrid(format!(
                    "row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(y) = row.iter().position(|&v| v >= n) {
                return Err(Error::MalformedGrid(format!(
                    "entry ({x}, {y}) = {} is out of range",
                    row[y]
                )));
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for row in &rows {
            table.extend(row.iter().map(|&v| v as u32));
        }
        Self::from_flat(n, table)
    }

    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedGrid("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = op(x, y);
                if v >= n {
                    return Err(Error::MalformedGrid(format!(
                        "entry ({x}, {y}) = {v} is out of range"
                    )));
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(n, table)
    }

    fn from_flat(n: usize, table: Vec<u32>) -> Result<Self> {
        let mut inverse = vec![0u32; n * n];
        for x in 0..n {
            let mut seen = vec![false; n];
            for y in 0..n {
                let v = table[x * n + y] as usize;
                if seen[v] {
                    return Err(Error::NotABijection(x));
                }
                seen[v] = true;
                inverse[x * n + v] = y as u32;
            }
        }
        let op = |a: usize, b: usize| table[a * n + b] as usize;
        for x in 0..n {
            for y in 0..n {
                let xy = op(x, y);
                for z in 0..n {
                    if op(x, op(y, z)) != op(xy, op(x, z)) {
                        return Err(Error::SelfDistributivityFails(x, y, z));
                    }
                }
            }
        }
        let is_quandle = (0..n).all(|x| op(x, x) == x);
        Ok(FiniteRack {
            n,
            table,
            inverse,
            is_quandle,
        })
    }

    /// `x ▷ y = y`.
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1, "a rack needs at least one element");
        Self::from_fn(n, |_, y| y).expect("trivial rack")
    }

    /// `x ▷ y = 2x − y mod n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "a rack needs at least one element");
        Self::from_fn(n, |x, y| (2 * x + n - y) % n).expect("dihedral quandle")
    }

    /// `x ▷ y = y + 1 mod n`; a rack but not a quandle once `n ≥ 2`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "a rack needs at least one element");
        Self::from_fn(n, |_, y| (y + 1) % n).expect("cyclic rack")
    }

    /// Componentwise operation on pairs; `(a, b)` is element `a * |r2| + b`.
    pub fn product(r1: &FiniteRack, r2: &FiniteRack) -> Self {
        let m = r2.n;
        Self::from_fn(r1.n * m, |x, y| {
            r1.op(x / m, y / m) * m + r2.op(x % m, y % m)
        })
        .expect("product of racks is a rack")
    }

    /// The conjugation quandle of a group: `g ▷ h = g h g⁻¹` on all elements.
    pub fn conjugation(group: &PermGroup) -> Self {
        Self::from_fn(group.order(), |g, h| group.conj(g, h)).expect("conjugation quandle")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_quandle(&self) -> bool {
        self.is_quandle
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y] as usize
    }

    /// `ψ_x⁻¹(y)`.
    #[inline]
    pub fn op_inv(&self, x: usize, y: usize) -> usize {
        self.inverse[x * self.n + y] as usize
    }

    pub fn psi(&self, x: usize) -> Permutation {
        Permutation::from_images_unchecked(self.table[x * self.n..(x + 1) * self.n].to_vec())
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|y| self.op(x, y)).collect())
            .collect()
    }

    /// Whether `alpha` is an automorphism: `α(x ▷ y) = α(x) ▷ α(y)`.
    pub fn is_automorphism(&self, alpha: &Permutation) -> bool {
        alpha.degree() == self.n
            && (0..self.n).all(|x| {
                (0..self.n)
                    .all(|y| alpha.apply(self.op(x, y)) == self.op(alpha.apply(x), alpha.apply(y)))
            })
    }

    pub(crate) fn check_automorphism(&self, alpha: &Permutation) -> Result<()> {
        if self.is_automorphism(alpha) {
            Ok(())
        } else {
            Err(Error::NotAnAutomorphism(alpha.to_string()))
        }
    }

    /// Whether `map` is an isomorphism from `self` onto `other`.
    pub fn is_isomorphism(&self, other: &FiniteRack, map: &[usize]) -> bool {
        if self.n != other.n || map.len() != self.n {
            return false;
        }
        let mut hit = vec![false; self.n];
        for &m in map {
            if m >= self.n || hit[m] {
                return false;
            }
            hit[m] = true;
        }
        (0..self.n).all(|x| (0..self.n).all(|y| map[self.op(x, y)] == other.op(map[x], map[y])))
    }
}

pub const ISO_SEARCH_LIMIT: usize = 12;

/// Backtracking isomorphism search, limited to racks of at most
/// [`ISO_SEARCH_LIMIT`] elements.
pub fn find_isomorphism(a: &FiniteRack, b: &FiniteRack) -> Result<Option<Vec<usize>>> {
    if a.n > ISO_SEARCH_LIMIT || b.n > ISO_SEARCH_LIMIT {
        return Err(Error::IsoSearchTooLarge {
            limit: ISO_SEARCH_LIMIT,
        });
    }
    if a.n != b.n || a.is_quandle != b.is_quandle {
        return Ok(None);
    }
    // fixed-point counts of ψ_x are preserved by isomorphisms
    let fixed = |r: &FiniteRack, x: usize| (0..r.n).filter(|&y| r.op(x, y) == y).count();
    let fa: Vec<usize> = (0..a.n).map(|x| fixed(a, x)).collect();
    let fb: Vec<usize> = (0..b.n).map(|x| fixed(b, x)).collect();

    fn extend(
        a: &FiniteRack,
        b: &FiniteRack,
        fa: &[usize],
        fb: &[usize],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let x = map.len();
        if x == a.n {
            return true;
        }
        for cand in 0..b.n {
            if used[cand] || fa[x] != fb[cand] {
                continue;
            }
            map.push(cand);
            let consistent = (0..=x).all(|u| {
                [(u, x), (x, u)].iter().all(|&(p, q)| {
                    let r = a.op(p, q);
                    r > x || map[r] == b.op(map[p], map[q])
                })
            });
            if consistent {
                used[cand] = true;
                if extend(a, b, fa, fb, map, used) {
                    return true;
                }
                used[cand] = false;
            }
            map.pop();
        }
        false
    }

    let mut map = Vec::with_capacity(a.n);
    let mut used = vec![false; a.n];
    if extend(a, b, &fa, &fb, &mut map, &mut used) && a.is_isomorphism(b, &map) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// Input to the coset-rack construction: a group, and for each chosen element
/// `s` a subgroup `H_s` of its centralizer.
#[derive(Clone, Debug)]
pub struct CosetRackSpec {
    pub group: PermGroup,
    pub reps: Vec<CosetRep>,
    pub is_quandle: bool,
}

#[derive(Clone, Debug)]
pub struct CosetRep {
    /// Element index of `s` in the group.
    pub s: usize,
    pub subgroup: Subgroup,
}

impl CosetRackSpec {
    /// `reps` pairs each `s` with generators of `H_s` (all as element indices).
    pub fn new(group: PermGroup, reps: Vec<(usize, Vec<usize>)>) -> Result<Self> {
        let reps = reps
            .into_iter()
            .map(|(s, gens)| CosetRep {
                s,
                subgroup: group.subgroup(&gens),
            })
            .collect();
        Self::from_subgroups(group, reps)
    }

    pub fn from_subgroups(group: PermGroup, reps: Vec<CosetRep>) -> Result<Self> {
        for rep in &reps {
            check_centralizing(&group, rep)?;
        }
        let is_quandle = reps.iter().all(|r| r.subgroup.contains(r.s));
        Ok(CosetRackSpec {
            group,
            reps,
            is_quandle,
        })
    }
}

fn check_centralizing(group: &PermGroup, rep: &CosetRep) -> Result<()> {
    let s = group.element(rep.s);
    for &h in rep.subgroup.elements() {
        let h = group.element(h);
        if h.compose(s) != s.compose(h) {
            return Err(Error::NotCentralizing {
                s: s.to_string(),
                h: h.to_string(),
            });
        }
    }
    Ok(())
}

/// A coset rack together with the labels of its elements.
#[derive(Clone, Debug)]
pub struct CosetRack {
    pub rack: FiniteRack,
    /// `(rep position, coset index)` per element.
    pub labels: Vec<(usize, usize)>,
    /// Per rep: left cosets of `H_s`, each sorted by element index.
    pub cosets: Vec<Vec<Vec<usize>>>,
}

/// `xH_s ▷ yH_t = x s x⁻¹ y H_t` on the disjoint union of the `G/H_s`.
pub fn coset_rack(spec: &CosetRackSpec) -> Result<CosetRack> {
    let g = &spec.group;
    let mut labels = Vec::new();
    let mut offsets = Vec::new();
    let mut all_cosets = Vec::new();
    let mut coset_maps = Vec::new();
    for (i, rep) in spec.reps.iter().enumerate() {
        check_centralizing(g, rep)?;
        let (cosets, coset_of) = left_cosets(g, &rep.subgroup);
        offsets.push(labels.len());
        labels.extend((0..cosets.len()).map(|c| (i, c)));
        all_cosets.push(cosets);
        coset_maps.push(coset_of);
    }
    let n = labels.len();
    // conjugator x s x⁻¹ for each element, from the smallest coset representative
    let movers: Vec<usize> = labels
        .iter()
        .map(|&(i, c)| g.conj(all_cosets[i][c][0], spec.reps[i].s))
        .collect();
    let rack = FiniteRack::from_fn(n, |a, b| {
        let (j, d) = labels[b];
        let y = all_cosets[j][d][0];
        offsets[j] + coset_maps[j][g.mul(movers[a], y)]
    })?;
    if rack.is_quandle() != spec.is_quandle {
        return Err(Error::Internal(
            "coset rack idempotency disagrees with s ∈ H_s".into(),
        ));
    }
    Ok(CosetRack {
        rack,
        labels,
        cosets: all_cosets,
    })
}

/// The maximal quandle quotient `x ≈ ψ_x^m(x)`.
#[derive(Clone, Debug)]
pub struct QuandleQuotient {
    pub quandle: FiniteRack,
    /// Class index of each element; classes are ordered by smallest member.
    pub projection: Vec<usize>,
}

pub fn canonical_quandle_quotient(rack: &FiniteRack) -> Result<QuandleQuotient> {
    let n = rack.n;
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        let mut y = rack.op(x, x);
        while y != x {
            uf.union(x, y);
            y = rack.op(x, y);
        }
    }
    let mut class_of_root = vec![usize::MAX; n];
    let mut projection = vec![0; n];
    let mut reps = Vec::new();
    for (x, p) in projection.iter_mut().enumerate() {
        let r = uf.find(x);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = reps.len();
            reps.push(x);
        }
        *p = class_of_root[r];
    }
    let m = reps.len();
    let mut table = vec![usize::MAX; m * m];
    for x in 0..n {
        for y in 0..n {
            let cell = &mut table[projection[x] * m + projection[y]];
            let v = projection[rack.op(x, y)];
            if *cell == usize::MAX {
                *cell = v;
            } else if *cell != v {
                return Err(Error::Internal(format!(
                    "quandle quotient is not well defined at ({x}, {y})"
                )));
            }
        }
    }
    let quandle = FiniteRack::from_fn(m, |a, b| table[a * m + b])
        .map_err(|e| Error::Internal(format!("quandle quotient is not a rack: {e}")))?;
    if !quandle.is_quandle() {
        return Err(Error::Internal("quandle quotient is not idempotent".into()));
    }
    Ok(QuandleQuotient {
        quandle,
        projection,
    })
}

/// A rack rebuilt as a coset rack over its inner automorphism group, with the
/// explicit isomorphism `g·Stab(x_s) ↦ g(x_s)` already verified.
#[derive(Clone, Debug)]
pub struct JoyceRepresentation {
    pub spec: CosetRackSpec,
    pub coset_rack: CosetRack,
    /// Component representatives `x_s`, in the same order as `spec.reps`.
    pub basepoints: Vec<usize>,
    /// Image in the original rack of each coset-rack element.
    pub map: Vec<usize>,
}

pub fn joyce_representation(rack: &FiniteRack) -> Result<JoyceRepresentation> {
    joyce_representation_capped(rack, DEFAULT_GROUP_CAP)
}

pub fn joyce_representation_capped(rack: &FiniteRack, cap: usize) -> Result<JoyceRepresentation> {
    let group = inner_group_capped(rack, cap)?;
    let comps = components(rack);
    let basepoints = comps.representatives.clone();
    let mut reps = Vec::new();
    for &x in &basepoints {
        let s = group.generator_index(x);
        let stab = group.stabilizer(x);
        if !stab.is_subset_of(&group.centralizer(s)) {
            return Err(Error::Internal(format!(
                "stabilizer of {x} does not centralize ψ_{x}"
            )));
        }
        reps.push(CosetRep { s, subgroup: stab });
    }
    let spec = CosetRackSpec::from_subgroups(group, reps)?;
    let cr = coset_rack(&spec)?;
    let map: Vec<usize> = cr
        .labels
        .iter()
        .map(|&(i, c)| spec.group.element(cr.cosets[i][c][0]).apply(basepoints[i]))
        .collect();
    if !cr.rack.is_isomorphism(rack, &map) {
        return Err(Error::Internal(
            "coset map is not a rack isomorphism".into(),
        ));
    }
    Ok(JoyceRepresentation {
        spec,
        coset_rack: cr,
        basepoints,
        map,
    })
}

/// Abelianized enveloping group `G_X^{ab} ≅ Z^{|π0|}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopingAbelianization {
    pub rank: usize,
    /// Basis index of each component, indexed by component id.
    pub component_to_basis: Vec<usize>,
}

/// Abelianizing `x ▷ y = x y x⁻¹` identifies `y` with `x ▷ y`, so generators
/// collapse exactly along components and the rank is `|π0|`.
pub fn enveloping_abelianization(rack: &FiniteRack) -> EnvelopingAbelianization {
    let comps = components(rack);
    EnvelopingAbelianization {
        rank: comps.count,
        component_to_basis: (0..comps.count).collect(),
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Keeps the smaller root so that roots are minimal elements.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{PermGroup, DEFAULT_GROUP_CAP};

    #[test]
    fn validates_dihedral_three() {
        let r = FiniteRack::validate(vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap();
        assert!(r.is_quandle());
        assert_eq!(r, FiniteRack::dihedral(3));
    }

    #[test]
    fn validate_errors() {
        assert_eq!(
            FiniteRack::validate(vec![vec![0, 0], vec![1, 1]]).unwrap_err(),
            Error::NotABijection(0)
        );
        assert!(matches!(
            FiniteRack::validate(vec![vec![0, 1], vec![0]]),
            Err(Error::MalformedGrid(_))
        ));
        assert!(matches!(
            FiniteRack::validate(vec![vec![0, 2], vec![0, 1]]),
            Err(Error::MalformedGrid(_))
        ));
        // rows are bijections but the operation is not self-distributive
        let bad = vec![vec![1, 2, 0], vec![0, 1, 2], vec![0, 1, 2]];
        assert!(matches!(
            FiniteRack::validate(bad),
            Err(Error::SelfDistributivityFails(..))
        ));
    }

    #[test]
    fn standard_tables() {
        assert_eq!(FiniteRack::trivial(1).rows(), vec![vec![0]]);
        assert_eq!(FiniteRack::trivial(2).rows(), vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(FiniteRack::dihedral(1).rows(), vec![vec![0]]);
        let c2 = FiniteRack::cyclic(2);
        assert_eq!(c2.rows(), vec![vec![1, 0], vec![1, 0]]);
        assert!(!c2.is_quandle());
        assert!(FiniteRack::cyclic(1).is_quandle());
    }

    #[test]
    fn products() {
        let p = FiniteRack::product(&FiniteRack::cyclic(2), &FiniteRack::dihedral(3));
        assert_eq!(p.size(), 6);
        assert!(!p.is_quandle());
        assert_eq!(
            FiniteRack::product(&FiniteRack::trivial(2), &FiniteRack::trivial(2)),
            FiniteRack::trivial(4)
        );
        let d = FiniteRack::dihedral(5);
        assert_eq!(FiniteRack::product(&FiniteRack::trivial(1), &d), d);
    }

    #[test]
    fn coset_rack_of_s3_transposition_is_dihedral_three() {
        let g = PermGroup::generate(
            3,
            vec![
                Permutation::from_cycles(3, "(0 1)").unwrap(),
                Permutation::from_cycles(3, "(0 1 2)").unwrap(),
            ],
            DEFAULT_GROUP_CAP,
        )
        .unwrap();
        let t = g.generator_index(0);
        let z = g.centralizer(t);
        let spec = CosetRackSpec::from_subgroups(g, vec![CosetRep { s: t, subgroup: z }]).unwrap();
        assert!(spec.is_quandle);
        let cr = coset_rack(&spec).unwrap();
        assert_eq!(cr.rack.size(), 3);
        assert!(find_isomorphism(&cr.rack, &FiniteRack::dihedral(3))
            .unwrap()
            .is_some());
    }

    #[test]
    fn coset_rack_rejects_non_centralizing_subgroup() {
        let g = PermGroup::generate(
            3,
            vec![
                Permutation::from_cycles(3, "(0 1)").unwrap(),
                Permutation::from_cycles(3, "(0 1 2)").unwrap(),
            ],
            DEFAULT_GROUP_CAP,
        )
        .unwrap();
        let t = g.generator_index(0);
        let c = g.generator_index(1);
        assert!(matches!(
            CosetRackSpec::new(g, vec![(t, vec![c])]),
            Err(Error::NotCentralizing { .. })
        ));
    }

    #[test]
    fn coset_rack_of_cyclic_four_is_cyclic_rack() {
        let g = PermGroup::generate(
            4,
            vec![Permutation::from_cycles(4, "(0 1 2 3)").unwrap()],
            DEFAULT_GROUP_CAP,
        )
        .unwrap();
        let c = g.generator_index(0);
        let spec = CosetRackSpec::new(g, vec![(c, vec![])]).unwrap();
        assert!(!spec.is_quandle);
        let cr = coset_rack(&spec).unwrap();
        assert_eq!(cr.rack.size(), 4);
        assert!(!cr.rack.is_quandle());
        assert!(find_isomorphism(&cr.rack, &FiniteRack::cyclic(4))
            .unwrap()
            .is_some());
    }

    #[test]
    fn trivial_group_coset_rack_is_a_point() {
        let g = PermGroup::generate(1, vec![], DEFAULT_GROUP_CAP).unwrap();
        let spec = CosetRackSpec::new(g, vec![(0, vec![])]).unwrap();
        let cr = coset_rack(&spec).unwrap();
        assert_eq!(cr.rack.rows(), vec![vec![0]]);
        assert!(cr.rack.is_quandle());
    }

    #[test]
    fn quotients() {
        let q = canonical_quandle_quotient(&FiniteRack::cyclic(4)).unwrap();
        assert_eq!(q.quandle.size(), 1);
        let d = FiniteRack::dihedral(5);
        let q = canonical_quandle_quotient(&d).unwrap();
        assert_eq!(q.quandle, d);
        assert_eq!(q.projection, (0..5).collect::<Vec<_>>());
        let p = FiniteRack::product(&FiniteRack::cyclic(2), &FiniteRack::dihedral(3));
        let q = canonical_quandle_quotient(&p).unwrap();
        assert_eq!(q.quandle.size(), 3);
        assert!(find_isomorphism(&q.quandle, &FiniteRack::dihedral(3))
            .unwrap()
            .is_some());
    }

    #[test]
    fn joyce_examples() {
        let j = joyce_representation(&FiniteRack::dihedral(3)).unwrap();
        assert_eq!(j.spec.group.order(), 6);
        assert_eq!(j.coset_rack.cosets.len(), 1);
        assert_eq!(j.coset_rack.cosets[0].len(), 3);

        let j = joyce_representation(&FiniteRack::trivial(2)).unwrap();
        assert_eq!(j.spec.group.order(), 1);
        assert_eq!(j.coset_rack.cosets.len(), 2);

        let j = joyce_representation(&FiniteRack::cyclic(4)).unwrap();
        assert_eq!(j.spec.group.order(), 4);
        assert_eq!(j.spec.reps[0].subgroup.order(), 1);
        assert_eq!(j.coset_rack.cosets[0].len(), 4);
    }

    #[test]
    fn abelianization_rank() {
        assert_eq!(enveloping_abelianization(&FiniteRack::dihedral(3)).rank, 1);
        assert_eq!(enveloping_abelianization(&FiniteRack::trivial(3)).rank, 3);
        assert_eq!(enveloping_abelianization(&FiniteRack::dihedral(4)).rank, 2);
    }

    #[test]
    fn iso_search_limit() {
        let big = FiniteRack::trivial(13);
        assert!(matches!(
            find_isomorphism(&big, &big),
            Err(Error::IsoSearchTooLarge { .. })
        ));
        assert!(
            find_isomorphism(&FiniteRack::dihedral(4), &FiniteRack::trivial(4))
                .unwrap()
                .is_none()
        );
    }
}
