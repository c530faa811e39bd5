//! Fully enumerated permutation groups.
//!
//! A [`PermGroup`] is materialized by breadth-first closure from the identity,
//! multiplying on the right by generators only. Every element therefore comes
//! with a shortest *positive* word in the generators; inverses never appear
//! because every element of a finite group has finite order.

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::perm::Permutation;
use crate::rack::FiniteRack;
use crate::ratlinalg::Rational;

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    labels: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    // BFS tree: element i = element parent[i].0 ∘ generator parent[i].1
    parent: Vec<(u32, u32)>,
}

/// A subgroup stored as sorted element indices of its ambient [`PermGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }
}

impl PermGroup {
    /// Enumerates the group generated by `generators`, labeled `0..m`.
    pub fn generate(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        let labels = (0..generators.len()).collect();
        Self::generate_labeled(degree, generators, labels, cap)
    }

    pub fn generate_labeled(
        degree: usize,
        generators: Vec<Permutation>,
        labels: Vec<usize>,
        cap: usize,
    ) -> Result<Self> {
        assert_eq!(generators.len(), labels.len());
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DimensionMismatch(format!(
                "generator {g} has degree {} but the group acts on {degree} points",
                g.degree()
            )));
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut parent = vec![(0u32, u32::MAX)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (k, s) in generators.iter().enumerate() {
                let h = elements[i].compose(s);
                if index.contains_key(&h) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
                parent.push((i as u32, k as u32));
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            labels,
            elements,
            index,
            parent,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    /// Index of the identity; always 0.
    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of the `k`-th generator.
    pub fn generator_index(&self, k: usize) -> usize {
        self.index[&self.generators[k]]
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Index of `a ∘ b ∘ a⁻¹`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].conjugate(&self.elements[b])]
    }

    /// Shortest positive word (generator positions) whose product is element `i`.
    pub fn witness(&self, i: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = i;
        while cur != 0 {
            let (p, k) = self.parent[cur];
            word.push(k as usize);
            cur = p as usize;
        }
        word.reverse();
        word
    }

    /// Witness word expressed in generator labels.
    pub fn witness_labels(&self, i: usize) -> Vec<usize> {
        self.witness(i)
            .into_iter()
            .map(|k| self.labels[k])
            .collect()
    }

    /// Evaluates a word of generator positions as `s_1 ∘ s_2 ∘ … ∘ s_m`.
    pub fn evaluate(&self, word: &[usize]) -> Permutation {
        word.iter()
            .fold(Permutation::identity(self.degree), |acc, &k| {
                acc.compose(&self.generators[k])
            })
    }

    /// Subgroup generated by the given elements.
    pub fn subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut seen: HashSet<usize> = HashSet::from([0]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &s in gens {
                let h = self.mul(i, s);
                if seen.insert(h) {
                    queue.push_back(h);
                }
            }
        }
        let mut elements: Vec<usize> = seen.into_iter().collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order()).collect(),
        }
    }

    pub fn stabilizer(&self, point: usize) -> Subgroup {
        Subgroup {
            elements: (0..self.order())
                .filter(|&i| self.elements[i].apply(point) == point)
                .collect(),
        }
    }

    pub fn centralizer(&self, g: usize) -> Subgroup {
        let p = &self.elements[g];
        Subgroup {
            elements: (0..self.order())
                .filter(|&i| {
                    let q = &self.elements[i];
                    q.compose(p) == p.compose(q)
                })
                .collect(),
        }
    }

    /// True iff `g S g⁻¹ = S` for every `g`. Checking the generators suffices
    /// since a finite set mapped into itself by a bijection is mapped onto itself.
    pub fn conjugation_closed(&self, set: &[usize]) -> bool {
        let members: HashSet<usize> = set.iter().copied().collect();
        (0..self.generators.len()).all(|k| {
            let g = self.generator_index(k);
            members.iter().all(|&s| members.contains(&self.conj(g, s)))
        })
    }

    /// Smallest conjugation-closed set containing `set`, sorted.
    pub fn conjugation_closure(&self, set: &[usize]) -> Vec<usize> {
        let gens: Vec<usize> = (0..self.generators.len())
            .map(|k| self.generator_index(k))
            .collect();
        let mut seen: HashSet<usize> = set.iter().copied().collect();
        let mut queue: VecDeque<usize> = seen.iter().copied().collect();
        while let Some(s) = queue.pop_front() {
            for &g in &gens {
                let c = self.conj(g, s);
                if seen.insert(c) {
                    queue.push_back(c);
                }
            }
        }
        let mut out: Vec<usize> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Mean of `f` with respect to the normalized counting measure.
    pub fn uniform_mean<F>(&self, f: F) -> Rational
    where
        F: Fn(usize) -> Rational,
    {
        let total = (0..self.order()).fold(Rational::zero(), |acc, g| acc + f(g));
        total / Rational::from_integer(self.order().into())
    }
}

/// The inner automorphism group, generated by the rows `ψ_x` labeled by `x`.
pub fn inner_group(rack: &FiniteRack) -> Result<PermGroup> {
    inner_group_capped(rack, DEFAULT_GROUP_CAP)
}

pub fn inner_group_capped(rack: &FiniteRack, cap: usize) -> Result<PermGroup> {
    let n = rack.size();
    let gens = (0..n).map(|x| rack.psi(x)).collect();
    PermGroup::generate_labeled(n, gens, (0..n).collect(), cap)
}

/// Which generating set a word norm is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormKind {
    /// The conjugation closure of the given set; yields a conjugation-invariant norm.
    #[default]
    ConjugationClosed,
    /// The given set exactly as supplied.
    Raw,
}

#[derive(Clone, Debug)]
pub struct NormTable {
    generating_set: Vec<usize>,
    norm: Vec<u32>,
    diameter: u32,
}

impl NormTable {
    pub fn generating_set(&self) -> &[usize] {
        &self.generating_set
    }

    pub fn norm(&self, g: usize) -> u32 {
        self.norm[g]
    }

    pub fn norms(&self) -> &[u32] {
        &self.norm
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }
}

pub fn word_norm(group: &PermGroup, set: &[usize], kind: NormKind) -> Result<NormTable> {
    word_norm_with(group, set, kind, Exec::default())
}

/// Word norm by level-synchronous BFS over the Cayley graph of `S ∪ S⁻¹`.
/// Each frontier is expanded under `exec`; the merge is sequential and in
/// frontier order, so the table does not depend on the execution mode.
pub fn word_norm_with(
    group: &PermGroup,
    set: &[usize],
    kind: NormKind,
    exec: Exec,
) -> Result<NormTable> {
    let generating_set = match kind {
        NormKind::ConjugationClosed => group.conjugation_closure(set),
        NormKind::Raw => {
            let mut s = set.to_vec();
            s.sort_unstable();
            s.dedup();
            s
        }
    };
    let mut steps: Vec<usize> = generating_set
        .iter()
        .flat_map(|&s| [s, group.inv(s)])
        .collect();
    steps.sort_unstable();
    steps.dedup();

    let mut norm = vec![u32::MAX; group.order()];
    norm[0] = 0;
    let mut frontier = vec![0usize];
    let mut level = 0u32;
    while !frontier.is_empty() {
        level += 1;
        let expanded: Vec<Vec<usize>> = exec.map_slice(&frontier, |&g| {
            steps.iter().map(|&s| group.mul(g, s)).collect()
        });
        let mut next = Vec::new();
        for h in expanded.into_iter().flatten() {
            if norm[h] == u32::MAX {
                norm[h] = level;
                next.push(h);
            }
        }
        frontier = next;
    }
    if norm.contains(&u32::MAX) {
        return Err(Error::NotGenerating);
    }
    let diameter = norm.iter().copied().max().unwrap_or(0);
    Ok(NormTable {
        generating_set,
        norm,
        diameter,
    })
}

/// Left cosets `gH` with the conjugation-invariant quotient word metric.
#[derive(Clone, Debug)]
pub struct QuotientMetric {
    /// Cosets sorted by smallest element index; coset 0 is `H` itself.
    pub cosets: Vec<Vec<usize>>,
    pub coset_of: Vec<usize>,
    pub distances: Vec<Vec<u32>>,
}

impl QuotientMetric {
    pub fn diameter(&self) -> u32 {
        self.distances
            .iter()
            .flat_map(|row| row.iter().copied())
            .max()
            .unwrap_or(0)
    }
}

/// Partition of the group into left cosets of `h`, ordered by smallest element.
pub fn left_cosets(group: &PermGroup, h: &Subgroup) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut cosets = Vec::new();
    for g in 0..group.order() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = h.elements().iter().map(|&x| group.mul(g, x)).collect();
        members.sort_unstable();
        for &m in &members {
            coset_of[m] = cosets.len();
        }
        cosets.push(members);
    }
    (cosets, coset_of)
}

/// `d(xH, yH) = min_h ‖x⁻¹ y h‖` for the norm of the conjugation closure of `set`.
pub fn quotient_metric(group: &PermGroup, set: &[usize], h: &Subgroup) -> Result<QuotientMetric> {
    let norms = word_norm(group, set, NormKind::ConjugationClosed).map_err(|e| match e {
        Error::NotGenerating => Error::NotNormallyGenerating,
        other => other,
    })?;
    let (cosets, coset_of) = left_cosets(group, h);
    // distance from H to each coset
    let to_base: Vec<u32> = cosets
        .iter()
        .map(|c| c.iter().map(|&g| norms.norm(g)).min().unwrap_or(0))
        .collect();
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let distances = reps
        .iter()
        .map(|&x| {
            let xi = group.inv(x);
            reps.iter()
                .map(|&y| to_base[coset_of[group.mul(xi, y)]])
                .collect()
        })
        .collect();
    Ok(QuotientMetric {
        cosets,
        coset_of,
        distances,
    })
}
