#![allow(dead_code)]

use rackcoh::group::DEFAULT_GROUP_CAP;
use rackcoh::perm::Permutation;
use rackcoh::rack::{coset_rack, CosetRackSpec};
use rackcoh::{FiniteRack, PermGroup};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rackcoh::Rational;

pub fn s3() -> PermGroup {
    let gens = vec![
        Permutation::from_cycles(3, "(0 1)").unwrap(),
        Permutation::from_cycles(3, "(0 1 2)").unwrap(),
    ];
    PermGroup::generate(3, gens, DEFAULT_GROUP_CAP).unwrap()
}

/// `(S3, (0 1), Z((0 1)))`.
pub fn s3_transposition_spec() -> CosetRackSpec {
    let g = s3();
    let s = g.generator_index(0);
    let z = g.centralizer(s);
    CosetRackSpec::from_subgroups(g, vec![rackcoh::rack::CosetRep { s, subgroup: z }]).unwrap()
}

pub struct Named {
    pub name: String,
    pub rack: FiniteRack,
}

/// The acceptance suite of small racks.
pub fn suite() -> Vec<Named> {
    let mut out = Vec::new();
    let mut push = |name: String, rack: FiniteRack| out.push(Named { name, rack });
    for n in [2, 3] {
        push(format!("trivial({n})"), FiniteRack::trivial(n));
    }
    for n in 3..=6 {
        push(format!("dihedral({n})"), FiniteRack::dihedral(n));
    }
    for n in 2..=6 {
        push(format!("cyclic({n})"), FiniteRack::cyclic(n));
    }
    push("conj(S3)".into(), FiniteRack::conjugation(&s3()));
    push(
        "coset(S3,(0 1),Z)".into(),
        coset_rack(&s3_transposition_spec()).unwrap().rack,
    );
    push(
        "cyclic(2)xdihedral(3)".into(),
        FiniteRack::product(&FiniteRack::cyclic(2), &FiniteRack::dihedral(3)),
    );
    out
}

/// Degrees `1..=3`, or `1..=4` when `n ≤ 4`.
pub fn max_degree(rack: &FiniteRack) -> usize {
    if rack.size() <= 4 {
        4
    } else {
        3
    }
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(
        rng.gen_range(-6i64..=6).into(),
        rng.gen_range(1i64..=4).into(),
    )
}
