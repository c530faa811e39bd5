//! Rack and quandle cochain complexes with exact rational coefficients.
//!
//! A degree-`k` cochain is a function `X^k → Q`, stored as a dense vector over
//! tuples ranked row-major with `x₁` most significant. The differential is
//!
//! ```text
//! δf(x₁,…,x_{k+1}) = Σ_{i=1}^{k} (−1)^{i−1} [ f(x₁,…,x̂ᵢ,…,x_{k+1})
//!                    − f(x₁,…,x_{i−1}, xᵢ▷x_{i+1},…,xᵢ▷x_{k+1}) ]
//! ```
//!
//! and `δ⁰ = 0`. The quandle complex consists of cochains vanishing whenever
//! two adjacent entries are equal; its matrices use the non-degenerate tuples
//! as basis.
//!
//! For a finite rack every cochain is bounded, so everything computed here is
//! also the bounded cohomology.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::components;
use crate::group::{inner_group_capped, PermGroup, DEFAULT_GROUP_CAP};
use crate::perm::Permutation;
use crate::rack::{FiniteRack, UnionFind};
use crate::ratlinalg::{rank_with, Rational, RationalMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Rack,
    Quandle,
}

impl std::str::FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rack" => Ok(Theory::Rack),
            "quandle" => Ok(Theory::Quandle),
            other => Err(Error::InvalidArgument(format!("unknown theory {other:?}"))),
        }
    }
}

impl std::fmt::Display for Theory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Theory::Rack => "rack",
            Theory::Quandle => "quandle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexSpec {
    pub theory: Theory,
    pub max_degree: usize,
}

impl ComplexSpec {
    pub fn new(theory: Theory, max_degree: usize) -> Result<Self> {
        if max_degree == 0 {
            return Err(Error::InvalidArgument(
                "max_degree must be at least 1".into(),
            ));
        }
        Ok(ComplexSpec { theory, max_degree })
    }
}

/// Default bound on `n^{k+1}`, the number of target tuples of `δ^k`. It
/// admits `k ≤ 3` for `n ≤ 6` and `k ≤ 4` for `n ≤ 4`.
pub const DEFAULT_COCHAIN_CAP: usize = 1296;

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub cochain_cap: usize,
    pub group_cap: usize,
    pub exec: Exec,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cochain_cap: DEFAULT_COCHAIN_CAP,
            group_cap: DEFAULT_GROUP_CAP,
            exec: Exec::default(),
        }
    }
}

pub fn rank_tuple(n: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn unrank_tuple(n: usize, k: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in t.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    t
}

fn is_degenerate(tuple: &[usize]) -> bool {
    tuple.windows(2).any(|w| w[0] == w[1])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    n: usize,
    degree: usize,
    values: Vec<Rational>,
}

impl Cochain {
    pub fn zero(n: usize, degree: usize) -> Self {
        Cochain {
            n,
            degree,
            values: vec![Rational::zero(); n.pow(degree as u32)],
        }
    }

    pub fn from_values(n: usize, degree: usize, values: Vec<Rational>) -> Result<Self> {
        if values.len() != n.pow(degree as u32) {
            return Err(Error::DimensionMismatch(format!(
                "degree-{degree} cochain on {n} elements needs {} values, got {}",
                n.pow(degree as u32),
                values.len()
            )));
        }
        Ok(Cochain { n, degree, values })
    }

    pub fn from_fn(n: usize, degree: usize, mut f: impl FnMut(&[usize]) -> Rational) -> Self {
        let values = (0..n.pow(degree as u32))
            .map(|i| f(&unrank_tuple(n, degree, i)))
            .collect();
        Cochain { n, degree, values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, tuple: &[usize]) -> &Rational {
        debug_assert_eq!(tuple.len(), self.degree);
        &self.values[rank_tuple(self.n, tuple)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Whether the cochain satisfies the quandle vanishing condition.
    pub fn is_quandle_cochain(&self) -> bool {
        (0..self.values.len()).all(|i| {
            self.values[i].is_zero() || !is_degenerate(&unrank_tuple(self.n, self.degree, i))
        })
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.n, self.degree), (other.n, other.degree));
        Cochain {
            n: self.n,
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.n, self.degree), (other.n, other.degree));
        Cochain {
            n: self.n,
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `f_z(x₁,…,x_{k−1}) = f(z, x₁,…,x_{k−1})`.
    pub fn slice(&self, z: usize) -> Cochain {
        assert!(self.degree >= 1, "cannot slice a degree-0 cochain");
        let len = self.n.pow(self.degree as u32 - 1);
        Cochain {
            n: self.n,
            degree: self.degree - 1,
            values: self.values[z * len..(z + 1) * len].to_vec(),
        }
    }

    /// Coboundary evaluated straight from the defining formula.
    pub fn delta(&self, rack: &FiniteRack) -> Cochain {
        assert_eq!(rack.size(), self.n, "cochain and rack sizes differ");
        let k = self.degree;
        let mut face = vec![0; k];
        Cochain::from_fn(self.n, k + 1, |x| {
            let mut acc = Rational::zero();
            for i in 0..k {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                face[..i].copy_from_slice(&x[..i]);
                face[i..].copy_from_slice(&x[i + 1..]);
                let a = self.values[rank_tuple(self.n, &face)].clone();
                for j in i..k {
                    face[j] = rack.op(x[i], x[j + 1]);
                }
                let b = &self.values[rank_tuple(self.n, &face)];
                let term = a - b;
                if sign > 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
    }

    fn act_unchecked(&self, alpha: &Permutation) -> Cochain {
        Cochain::from_fn(self.n, self.degree, |x| {
            let moved: Vec<usize> = x.iter().map(|&v| alpha.apply(v)).collect();
            self.get(&moved).clone()
        })
    }
}

/// Right action `(f·α)(x₁,…,x_k) = f(α(x₁),…,α(x_k))`.
pub fn act(rack: &FiniteRack, f: &Cochain, alpha: &Permutation) -> Result<Cochain> {
    rack.check_automorphism(alpha)?;
    Ok(f.act_unchecked(alpha))
}

/// Basis tuples of `C^k` for a theory, as ranks into `X^k`.
#[derive(Clone, Debug)]
struct Basis {
    n: usize,
    degree: usize,
    tuples: Vec<usize>,
    position: Vec<usize>,
}

type SparseRows = Vec<Vec<(usize, i64)>>;

impl Basis {
    fn new(n: usize, degree: usize, theory: Theory) -> Self {
        let total = n.pow(degree as u32);
        let mut position = vec![usize::MAX; total];
        let mut tuples = Vec::new();
        for (t, pos) in position.iter_mut().enumerate() {
            if theory == Theory::Rack || !is_degenerate(&unrank_tuple(n, degree, t)) {
                *pos = tuples.len();
                tuples.push(t);
            }
        }
        Basis {
            n,
            degree,
            tuples,
            position,
        }
    }

    fn dim(&self) -> usize {
        self.tuples.len()
    }

    fn tuple(&self, i: usize) -> Vec<usize> {
        unrank_tuple(self.n, self.degree, self.tuples[i])
    }
}

/// Cohomology computations for one rack and one theory.
#[derive(Clone, Debug)]
pub struct Cohomology<'a> {
    rack: &'a FiniteRack,
    theory: Theory,
    limits: Limits,
}

impl<'a> Cohomology<'a> {
    pub fn new(rack: &'a FiniteRack, theory: Theory) -> Result<Self> {
        Self::with_limits(rack, theory, Limits::default())
    }

    pub fn with_limits(rack: &'a FiniteRack, theory: Theory, limits: Limits) -> Result<Self> {
        if theory == Theory::Quandle {
            if let Some(x) = (0..rack.size()).find(|&x| rack.op(x, x) != x) {
                return Err(Error::NotAQuandle(x));
            }
        }
        Ok(Cohomology {
            rack,
            theory,
            limits,
        })
    }

    pub fn rack(&self) -> &FiniteRack {
        self.rack
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        let cells = self
            .rack
            .size()
            .checked_pow(k as u32 + 1)
            .unwrap_or(usize::MAX);
        if cells > self.limits.cochain_cap {
            return Err(Error::DegreeTooLarge {
                degree: k,
                cells,
                cap: self.limits.cochain_cap,
            });
        }
        Ok(())
    }

    fn basis(&self, k: usize) -> Basis {
        Basis::new(self.rack.size(), k, self.theory)
    }

    pub fn cochain_dim(&self, k: usize) -> usize {
        self.basis(k).dim()
    }

    /// Row of `δ^k` at a target tuple, over the source basis. Faces that are
    /// degenerate in the quandle theory drop out since basis cochains vanish there.
    fn differential_row(&self, source: &Basis, x: &[usize]) -> Vec<(usize, i64)> {
        let k = x.len() - 1;
        let n = self.rack.size();
        let mut face = vec![0; k];
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for i in 0..k {
            let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
            face[..i].copy_from_slice(&x[..i]);
            face[i..].copy_from_slice(&x[i + 1..]);
            let col = source.position[rank_tuple(n, &face)];
            if col != usize::MAX {
                *acc.entry(col).or_default() += sign;
            }
            for j in i..k {
                face[j] = self.rack.op(x[i], x[j + 1]);
            }
            let col = source.position[rank_tuple(n, &face)];
            if col != usize::MAX {
                *acc.entry(col).or_default() -= sign;
            }
        }
        let mut row: Vec<(usize, i64)> = acc.into_iter().filter(|e| e.1 != 0).collect();
        row.sort_unstable();
        row
    }

    fn differential_rows(&self, k: usize) -> Result<(Basis, Basis, SparseRows)> {
        self.check_degree(k)?;
        let source = self.basis(k);
        let target = self.basis(k + 1);
        if self.theory == Theory::Quandle {
            // closure of the quandle subcomplex: δ of a basis cochain vanishes
            // on every degenerate target tuple
            let n = self.rack.size();
            let total = n.pow(k as u32 + 1);
            let degenerate: Vec<usize> = (0..total)
                .filter(|&t| target.position[t] == usize::MAX)
                .collect();
            let closed = self.limits.exec.all_range(degenerate.len(), |i| {
                self.differential_row(&source, &unrank_tuple(n, k + 1, degenerate[i]))
                    .is_empty()
            });
            if !closed {
                return Err(Error::Internal(
                    "quandle cochains are not closed under the differential".into(),
                ));
            }
        }
        let rows = self.limits.exec.map_range(target.dim(), |t| {
            self.differential_row(&source, &target.tuple(t))
        });
        Ok((source, target, rows))
    }

    /// Matrix of `δ^k : C^k → C^{k+1}` acting on column vectors: one row per
    /// target basis tuple, one column per source basis tuple.
    pub fn differential_matrix(&self, k: usize) -> Result<RationalMatrix> {
        if k == 0 {
            return Ok(RationalMatrix::zeros(self.cochain_dim(1), 1));
        }
        let (source, target, rows) = self.differential_rows(k)?;
        Ok(RationalMatrix::from_integer_sparse_rows(
            target.dim(),
            source.dim(),
            rows,
        ))
    }

    pub fn differential_rank(&self, k: usize) -> Result<usize> {
        if k == 0 {
            return Ok(0);
        }
        Ok(rank_with(&self.differential_matrix(k)?, self.limits.exec))
    }

    /// `dim ker δ^k − rank δ^{k−1}`.
    pub fn betti(&self, k: usize) -> Result<usize> {
        let upper = self.differential_rank(k)?;
        let lower = self.differential_rank(k - 1)?;
        Ok(self.cochain_dim(k) - upper - lower)
    }

    /// Coordinates of a cochain in the basis of this theory.
    pub fn coordinates(&self, f: &Cochain) -> Result<Vec<Rational>> {
        let basis = self.basis(f.degree);
        if self.theory == Theory::Quandle && !f.is_quandle_cochain() {
            return Err(Error::InvalidArgument(
                "cochain does not vanish on degenerate tuples".into(),
            ));
        }
        Ok(basis.tuples.iter().map(|&t| f.values[t].clone()).collect())
    }

    pub fn inner_group(&self) -> Result<PermGroup> {
        inner_group_capped(self.rack, self.limits.group_cap)
    }

    /// Inner-group orbits on the basis tuples of degree `k`, ordered by
    /// smallest member; members are basis positions.
    fn orbits(&self, k: usize) -> Vec<Vec<usize>> {
        let basis = self.basis(k);
        let n = self.rack.size();
        let mut uf = UnionFind::new(basis.dim());
        for i in 0..basis.dim() {
            let t = basis.tuple(i);
            for w in 0..n {
                let moved: Vec<usize> = t.iter().map(|&v| self.rack.op(w, v)).collect();
                uf.union(i, basis.position[rank_tuple(n, &moved)]);
            }
        }
        let mut index_of_root: HashMap<usize, usize> = HashMap::new();
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for i in 0..basis.dim() {
            let r = uf.find(i);
            let id = *index_of_root.entry(r).or_insert_with(|| {
                orbits.push(Vec::new());
                orbits.len() - 1
            });
            orbits[id].push(i);
        }
        orbits
    }

    /// `δ^k` restricted to invariant cochains, in the basis of orbit indicators.
    fn invariant_differential(&self, k: usize) -> Result<RationalMatrix> {
        let src_orbits = self.orbits(k);
        if k == 0 {
            return Ok(RationalMatrix::zeros(
                self.orbits(1).len(),
                src_orbits.len(),
            ));
        }
        self.check_degree(k)?;
        let source = self.basis(k);
        let target = self.basis(k + 1);
        let tgt_orbits = self.orbits(k + 1);
        let mut orbit_of = vec![0; source.dim()];
        for (o, members) in src_orbits.iter().enumerate() {
            for &m in members {
                orbit_of[m] = o;
            }
        }
        let rows = self.limits.exec.map_slice(&tgt_orbits, |members| {
            let row = self.differential_row(&source, &target.tuple(members[0]));
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for (c, v) in row {
                *acc.entry(orbit_of[c]).or_default() += v;
            }
            acc.into_iter().filter(|e| e.1 != 0).collect()
        });
        Ok(RationalMatrix::from_integer_sparse_rows(
            tgt_orbits.len(),
            src_orbits.len(),
            rows,
        ))
    }

    /// `δ^k ∘ Q` with `Q e_t = |O_t| e_t − 1_{O_t} = |O_t| (1 − P) e_t`; its
    /// column space is `δ^k((1 − P) C^k)`.
    fn complement_differential(&self, k: usize) -> Result<RationalMatrix> {
        if k == 0 {
            return Ok(RationalMatrix::zeros(self.cochain_dim(1), 1));
        }
        let (source, target, rows) = self.differential_rows(k)?;
        let orbits = self.orbits(k);
        let mut orbit_of = vec![0; source.dim()];
        for (o, members) in orbits.iter().enumerate() {
            for &m in members {
                orbit_of[m] = o;
            }
        }
        let rows = self.limits.exec.map_slice(&rows, |row| {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(s, v) in row {
                let orbit = &orbits[orbit_of[s]];
                *acc.entry(s).or_default() += v * orbit.len() as i64;
                for &t in orbit {
                    *acc.entry(t).or_default() -= v;
                }
            }
            acc.into_iter().filter(|e| e.1 != 0).collect()
        });
        Ok(RationalMatrix::from_integer_sparse_rows(
            target.dim(),
            source.dim(),
            rows,
        ))
    }

    pub fn invariant_betti(&self, k: usize) -> Result<usize> {
        self.inner_group()?;
        let dim = self.orbits(k).len();
        let upper = rank_with(&self.invariant_differential(k)?, self.limits.exec);
        let lower = rank_with(&self.invariant_differential(k - 1)?, self.limits.exec);
        Ok(dim - upper - lower)
    }

    pub fn complement_betti(&self, k: usize) -> Result<usize> {
        self.inner_group()?;
        let dim = self.cochain_dim(k) - self.orbits(k).len();
        let upper = rank_with(&self.complement_differential(k)?, self.limits.exec);
        let lower = rank_with(&self.complement_differential(k - 1)?, self.limits.exec);
        Ok(dim - upper - lower)
    }

    /// `P(f)(x) = (1/|G|) Σ_g f(g(x₁),…,g(x_k))` over the inner group.
    pub fn averaging_projection(&self, f: &Cochain) -> Result<Cochain> {
        let group = self.inner_group()?;
        Ok(average_over(&group, f, self.limits.exec))
    }

    /// Pullback of `h : π0^k → Q` (indexed like cochains on `|π0|` points).
    pub fn pi0_pullback(&self, h: &Cochain) -> Result<Cochain> {
        let comps = components(self.rack);
        if h.n != comps.count {
            return Err(Error::DimensionMismatch(format!(
                "function on {} components for a rack with {}",
                h.n, comps.count
            )));
        }
        if self.theory == Theory::Quandle {
            if let Some(i) = (0..h.values.len())
                .find(|&i| !h.values[i].is_zero() && is_degenerate(&unrank_tuple(h.n, h.degree, i)))
            {
                return Err(Error::DegenerateValueNonzero(unrank_tuple(
                    h.n, h.degree, i,
                )));
            }
        }
        Ok(Cochain::from_fn(self.rack.size(), h.degree, |x| {
            let c: Vec<usize> = x.iter().map(|&v| comps.component_of[v]).collect();
            h.get(&c).clone()
        }))
    }

    /// Betti numbers for degrees `1..=max_degree`, compared with the number of
    /// component tuples (`|π0|^k`, or those with no adjacent repeats for quandles).
    pub fn verify_amenable_theorem(&self, name: &str, max_degree: usize) -> Result<BettiReport> {
        ComplexSpec::new(self.theory, max_degree)?;
        self.inner_group()?;
        let c = components(self.rack).count;
        let mut ranks = vec![0];
        let mut inv_ranks = vec![0];
        let mut comp_ranks = vec![0];
        for k in 1..=max_degree {
            ranks.push(self.differential_rank(k)?);
            inv_ranks.push(rank_with(
                &self.invariant_differential(k)?,
                self.limits.exec,
            ));
            comp_ranks.push(rank_with(
                &self.complement_differential(k)?,
                self.limits.exec,
            ));
        }
        let mut betti = Vec::new();
        let mut invariant_betti = Vec::new();
        let mut complement_betti = Vec::new();
        let mut expected = Vec::new();
        for k in 1..=max_degree {
            let dim = self.cochain_dim(k);
            let orbits = self.orbits(k).len();
            betti.push(dim - ranks[k] - ranks[k - 1]);
            invariant_betti.push(orbits - inv_ranks[k] - inv_ranks[k - 1]);
            complement_betti.push(dim - orbits - comp_ranks[k] - comp_ranks[k - 1]);
            expected.push(expected_betti(c, k, self.theory));
        }
        let matches = betti == expected;
        Ok(BettiReport {
            rack: name.to_string(),
            theory: self.theory,
            betti,
            expected,
            invariant_betti,
            complement_betti,
            matches,
        })
    }
}

/// `|π0|^k` for racks; `|π0|·(|π0| − 1)^{k−1}` for quandles.
pub fn expected_betti(components: usize, k: usize, theory: Theory) -> usize {
    match theory {
        Theory::Rack => components.pow(k as u32),
        Theory::Quandle => components * components.saturating_sub(1).pow(k as u32 - 1),
    }
}

fn average_over(group: &PermGroup, f: &Cochain, exec: Exec) -> Cochain {
    let values = exec.map_range(f.values.len(), |i| {
        let x = unrank_tuple(f.n, f.degree, i);
        group.uniform_mean(|g| {
            let p = group.element(g);
            let moved: Vec<usize> = x.iter().map(|&v| p.apply(v)).collect();
            f.get(&moved).clone()
        })
    });
    Cochain {
        n: f.n,
        degree: f.degree,
        values,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub rack: String,
    pub theory: Theory,
    pub betti: Vec<usize>,
    pub expected: Vec<usize>,
    pub invariant_betti: Vec<usize>,
    pub complement_betti: Vec<usize>,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn differential_matrix(rack: &FiniteRack, k: usize, theory: Theory) -> Result<RationalMatrix> {
    Cohomology::new(rack, theory)?.differential_matrix(k)
}

pub fn betti(rack: &FiniteRack, k: usize, theory: Theory) -> Result<usize> {
    Cohomology::new(rack, theory)?.betti(k)
}

pub fn invariant_subcomplex_betti(rack: &FiniteRack, k: usize, theory: Theory) -> Result<usize> {
    Cohomology::new(rack, theory)?.invariant_betti(k)
}

pub fn complement_betti(rack: &FiniteRack, k: usize, theory: Theory) -> Result<usize> {
    Cohomology::new(rack, theory)?.complement_betti(k)
}

pub fn averaging_projection(rack: &FiniteRack, f: &Cochain) -> Result<Cochain> {
    Cohomology::new(rack, Theory::Rack)?.averaging_projection(f)
}

pub fn pi0_pullback(rack: &FiniteRack, h: &Cochain, theory: Theory) -> Result<Cochain> {
    Cohomology::new(rack, theory)?.pi0_pullback(h)
}

pub fn verify_amenable_theorem(
    rack: &FiniteRack,
    name: &str,
    max_degree: usize,
    theory: Theory,
) -> Result<BettiReport> {
    Cohomology::new(rack, theory)?.verify_amenable_theorem(name, max_degree)
}

/// For a cocycle `f` and a positive word `x₁…x_m` naming `g = ψ_{x₁}∘…∘ψ_{x_m}`,
/// returns `α = Σ_j (f·ψ_{x₁}…ψ_{x_{j−1}})_{x_j}`, which satisfies
/// `f − f·g = δα`. The identity is checked before returning.
pub fn primitive_for_translation(
    rack: &FiniteRack,
    f: &Cochain,
    word: &[usize],
) -> Result<Cochain> {
    if f.degree == 0 {
        return Err(Error::InvalidArgument(
            "degree-0 cochains have no primitive".into(),
        ));
    }
    if let Some(&x) = word.iter().find(|&&x| x >= rack.size()) {
        return Err(Error::InvalidArgument(format!(
            "word letter {x} out of range"
        )));
    }
    if !f.delta(rack).is_zero() {
        return Err(Error::NotACocycle);
    }
    let mut alpha = Cochain::zero(f.n, f.degree - 1);
    let mut translated = f.clone();
    let mut g = Permutation::identity(rack.size());
    for &x in word {
        alpha = alpha.add(&translated.slice(x));
        let psi = rack.psi(x);
        translated = translated.act_unchecked(&psi);
        g = g.compose(&psi);
    }
    if f.sub(&f.act_unchecked(&g)) != alpha.delta(rack) {
        return Err(Error::Internal(
            "telescoping primitive does not bound f − f·g".into(),
        ));
    }
    Ok(alpha)
}

/// Same as [`primitive_for_translation`] for a group element, converted to a
/// positive word through the group's witness.
pub fn primitive_for_element(
    rack: &FiniteRack,
    group: &PermGroup,
    f: &Cochain,
    g: usize,
) -> Result<Cochain> {
    primitive_for_translation(rack, f, &group.witness_labels(g))
}

/// Indicator cochain of a single tuple.
pub fn indicator(n: usize, tuple: &[usize]) -> Cochain {
    let mut c = Cochain::zero(n, tuple.len());
    c.values[rank_tuple(n, tuple)] = Rational::one();
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn tuple_ranking_is_row_major() {
        assert_eq!(rank_tuple(3, &[1, 2]), 5);
        assert_eq!(unrank_tuple(3, 2, 5), vec![1, 2]);
        assert_eq!(unrank_tuple(4, 0, 0), Vec::<usize>::new());
    }

    #[test]
    fn trivial_rack_differential_vanishes() {
        for k in 1..=3 {
            assert!(
                differential_matrix(&FiniteRack::trivial(3), k, Theory::Rack)
                    .unwrap()
                    .is_zero()
            );
        }
    }

    #[test]
    fn dihedral_three_degree_one() {
        let m = differential_matrix(&FiniteRack::dihedral(3), 1, Theory::Rack).unwrap();
        assert_eq!((m.rows(), m.cols()), (9, 3));
        assert_eq!(crate::ratlinalg::rank(&m), 2);
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti(&FiniteRack::dihedral(3), 2, Theory::Rack).unwrap(), 1);
        assert_eq!(betti(&FiniteRack::trivial(2), 2, Theory::Rack).unwrap(), 4);
        assert_eq!(
            betti(&FiniteRack::dihedral(3), 2, Theory::Quandle).unwrap(),
            0
        );
    }

    #[test]
    fn quandle_theory_needs_a_quandle() {
        assert_eq!(
            betti(&FiniteRack::cyclic(3), 1, Theory::Quandle).unwrap_err(),
            Error::NotAQuandle(0)
        );
    }

    #[test]
    fn degree_cap() {
        let err = betti(&FiniteRack::dihedral(7), 3, Theory::Rack).unwrap_err();
        assert!(matches!(err, Error::DegreeTooLarge { degree: 3, .. }));
        assert!(betti(&FiniteRack::dihedral(4), 4, Theory::Rack).is_ok());
        assert!(betti(&FiniteRack::dihedral(5), 4, Theory::Rack).is_err());
    }

    #[test]
    fn action_examples() {
        let d3 = FiniteRack::dihedral(3);
        let f = indicator(3, &[0, 1]);
        assert_eq!(act(&d3, &f, &Permutation::identity(3)).unwrap(), f);
        // ψ_0 = (1 2) sends (0, 2) to (0, 1)
        assert_eq!(act(&d3, &f, &d3.psi(0)).unwrap(), indicator(3, &[0, 2]));
        let bad = Permutation::from_cycles(4, "(0 1)").unwrap();
        assert!(act(&FiniteRack::dihedral(4), &indicator(4, &[0]), &bad).is_err());
    }

    #[test]
    fn projection_of_point_indicator() {
        let p = averaging_projection(&FiniteRack::dihedral(3), &indicator(3, &[0])).unwrap();
        assert!(p.values().iter().all(|v| *v == q(1, 3)));
        let f = indicator(2, &[1, 0]);
        assert_eq!(
            averaging_projection(&FiniteRack::trivial(2), &f).unwrap(),
            f
        );
    }

    #[test]
    fn invariant_and_complement_examples() {
        let d3 = FiniteRack::dihedral(3);
        assert_eq!(invariant_subcomplex_betti(&d3, 1, Theory::Rack).unwrap(), 1);
        for k in 1..=3 {
            assert_eq!(complement_betti(&d3, k, Theory::Rack).unwrap(), 0);
            assert_eq!(
                invariant_subcomplex_betti(&FiniteRack::trivial(2), k, Theory::Rack).unwrap(),
                1 << k
            );
        }
    }

    #[test]
    fn constant_cocycle_primitive() {
        let d3 = FiniteRack::dihedral(3);
        let f = Cochain::from_fn(3, 1, |_| q(5, 1));
        let alpha = primitive_for_translation(&d3, &f, &[0, 1, 2]).unwrap();
        assert_eq!(alpha.degree(), 0);
        assert!(alpha.delta(&d3).is_zero());
        assert_eq!(
            primitive_for_translation(&d3, &indicator(3, &[0]), &[1]).unwrap_err(),
            Error::NotACocycle
        );
    }

    #[test]
    fn pullback_examples() {
        let d4 = FiniteRack::dihedral(4);
        let h = indicator(2, &[0, 1]);
        let f = pi0_pullback(&d4, &h, Theory::Rack).unwrap();
        assert_eq!(f.values().iter().filter(|v| !v.is_zero()).count(), 4);
        assert!(f.delta(&d4).is_zero());
        assert!(matches!(
            pi0_pullback(&d4, &indicator(2, &[1, 1]), Theory::Quandle),
            Err(Error::DegenerateValueNonzero(_))
        ));
        let one = Cochain::from_fn(2, 3, |_| q(1, 1));
        assert!(pi0_pullback(&d4, &one, Theory::Rack)
            .unwrap()
            .delta(&d4)
            .is_zero());
    }

    #[test]
    fn report_examples() {
        let r = verify_amenable_theorem(&FiniteRack::dihedral(3), "dihedral(3)", 3, Theory::Rack)
            .unwrap();
        assert_eq!(r.betti, vec![1, 1, 1]);
        assert!(r.matches);
        let r =
            verify_amenable_theorem(&FiniteRack::dihedral(4), "dihedral(4)", 3, Theory::Quandle)
                .unwrap();
        assert_eq!(r.betti, vec![2, 2, 2]);
        let r =
            verify_amenable_theorem(&FiniteRack::cyclic(4), "cyclic(4)", 3, Theory::Rack).unwrap();
        assert_eq!(r.betti, vec![1, 1, 1]);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"match\":true"));
    }
}
