//! Library results checked against small independent implementations:
//! Betti numbers via a mod-p rank of a directly built coboundary matrix,
//! distances via naive BFS, inner groups via naive closure.

mod common;

use std::collections::{BTreeSet, VecDeque};

use rackcoh::cohomology::{betti, Theory};
use rackcoh::geometry::{components, RackMetric};
use rackcoh::group::inner_group;
use rackcoh::FiniteRack;

use common::{max_degree, suite};

const P: i64 = 1_000_000_007;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut m: Vec<Vec<i64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c].rem_euclid(P) != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = pow_mod(m[rank][c].rem_euclid(P), P - 2);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            let factor = row[c].rem_euclid(P) * inv % P;
            if r != rank && factor != 0 {
                for (a, b) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *a = (*a - factor * b).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn tuples(n: usize, k: usize, quandle: bool) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .filter(|t| !quandle || t.windows(2).all(|w| w[0] != w[1]))
            .collect();
    }
    out
}

/// Matrix of the coboundary from degree `k` to `k + 1`.
fn coboundary(r: &FiniteRack, k: usize, quandle: bool) -> Vec<Vec<i64>> {
    let n = r.size();
    let src = tuples(n, k, quandle);
    let tgt = tuples(n, k + 1, quandle);
    let col = |t: &[usize]| src.iter().position(|s| s == t);
    tgt.iter()
        .map(|x| {
            let mut row = vec![0i64; src.len()];
            for i in 0..k {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let mut skip = x.clone();
                skip.remove(i);
                let mut moved: Vec<usize> = x[..i].to_vec();
                moved.extend(x[i + 1..].iter().map(|&y| r.op(x[i], y)));
                if let Some(c) = col(&skip) {
                    row[c] += sign;
                }
                if let Some(c) = col(&moved) {
                    row[c] -= sign;
                }
            }
            row
        })
        .collect()
}

fn oracle_betti(r: &FiniteRack, k: usize, quandle: bool) -> usize {
    let dim = tuples(r.size(), k, quandle).len();
    let upper = rank_mod_p(coboundary(r, k, quandle));
    let lower = if k == 1 {
        0
    } else {
        rank_mod_p(coboundary(r, k - 1, quandle))
    };
    dim - upper - lower
}

#[test]
fn betti_numbers_match_mod_p_oracle() {
    for named in suite() {
        let r = &named.rack;
        for k in 1..=max_degree(r).min(3) {
            assert_eq!(
                betti(r, k, Theory::Rack).unwrap(),
                oracle_betti(r, k, false),
                "{} k={k}",
                named.name
            );
            if r.is_quandle() {
                assert_eq!(
                    betti(r, k, Theory::Quandle).unwrap(),
                    oracle_betti(r, k, true),
                    "{} quandle k={k}",
                    named.name
                );
            }
        }
    }
}

#[test]
fn dihedral3_degree1_rank_oracle() {
    assert_eq!(
        rank_mod_p(coboundary(&FiniteRack::dihedral(3), 1, false)),
        2
    );
    assert_eq!(rank_mod_p(coboundary(&FiniteRack::dihedral(3), 1, true)), 2);
}

fn bfs(r: &FiniteRack, x: usize) -> Vec<Option<u32>> {
    let n = r.size();
    let mut d = vec![None; n];
    d[x] = Some(0);
    let mut q = VecDeque::from([x]);
    while let Some(z) = q.pop_front() {
        for w in 0..n {
            for next in [r.op(w, z), (0..n).find(|&v| r.op(w, v) == z).unwrap()] {
                if d[next].is_none() {
                    d[next] = Some(d[z].unwrap() + 1);
                    q.push_back(next);
                }
            }
        }
    }
    d
}

#[test]
fn metric_matches_naive_bfs() {
    for named in suite() {
        let r = &named.rack;
        let metric = RackMetric::new(r);
        let comps = components(r);
        for x in 0..r.size() {
            let d = bfs(r, x);
            for (y, dy) in d.iter().enumerate() {
                assert_eq!(dy.is_some(), comps.component_of[x] == comps.component_of[y]);
                assert_eq!(metric.distance(x, y).ok(), *dy, "{} d({x},{y})", named.name);
            }
        }
    }
}

fn naive_closure(r: &FiniteRack) -> BTreeSet<Vec<usize>> {
    let n = r.size();
    let gens: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| r.op(x, y)).collect())
        .collect();
    let mut set = BTreeSet::from([(0..n).collect::<Vec<_>>()]);
    loop {
        let mut added = false;
        for a in set.clone() {
            for g in &gens {
                let c: Vec<usize> = (0..n).map(|i| a[g[i]]).collect();
                added |= set.insert(c);
            }
        }
        if !added {
            return set;
        }
    }
}

#[test]
fn inner_group_matches_naive_closure() {
    for named in suite() {
        let g = inner_group(&named.rack).unwrap();
        let naive = naive_closure(&named.rack);
        let ours: BTreeSet<Vec<usize>> = g.elements().iter().map(|p| p.images()).collect();
        assert_eq!(ours, naive, "{}", named.name);
    }
}
